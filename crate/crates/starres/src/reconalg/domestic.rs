use serde::{Deserialize, Serialize};

use crate::lgroup::Parameters;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Group {
    T,
    O,
    I,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomesticInfo {
    pub triple: [i64; 3],
    pub m: i64,
    pub group: Group,
    pub h: i64,
    /// `h(m-2)+1`, both the group index and the Veronese exponent.
    pub index: i64,
}

impl DomesticInfo {
    /// `"O_13"` and the like.
    pub fn label(&self) -> String {
        format!("{:?}_{}", self.group, self.index)
    }

    pub fn summary(&self) -> DomesticSummary {
        DomesticSummary { group: self.label(), h: self.h, pi_index: self.index }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomesticSummary {
    pub group: String,
    pub h: i64,
    pub pi_index: i64,
}

pub fn domestic_classify(params: &Parameters, m: i64) -> Result<DomesticInfo> {
    let (group, h) = match params.weights() {
        [2, 3, 3] => (Group::T, 6),
        [2, 3, 4] => (Group::O, 12),
        [2, 3, 5] => (Group::I, 30),
        w => return Err(Error::Precondition(format!("{w:?} is not (2,3,3), (2,3,4) or (2,3,5)"))),
    };
    if m < 3 {
        return Err(Error::Precondition(format!("need m >= 3, got {m}")));
    }
    let index = h * (m - 2) + 1;
    let lhs = params.omega().scale(index);
    let rhs = params.s_a(m - 3).neg();
    if lhs != rhs {
        return Err(Error::Internal(format!("{index}*omega = {lhs}, expected {rhs}")));
    }
    let w = params.weights();
    Ok(DomesticInfo { triple: [w[0], w[1], w[2]], m, group, h, index })
}
