//! Reconstruction-algebra quivers by two routes, the degree-zero canonical
//! algebra, the 0-Wahl presentation and the domestic table.

mod canonical;
mod domestic;
mod quiver;
mod wahl;

pub use canonical::{canonical_relations, degree_zero_canonical, CanonicalAlgebraDesc};
pub use domestic::{domestic_classify, DomesticInfo, DomesticSummary, Group};
pub use quiver::{quiver_combinatorial, quiver_from_intersection, quiver_to_dot, QuiverData};
pub use wahl::{
    wahl_generators, wahl_relations, wahl_special_ideals, wahl_verify, ArrowColor, DimensionCheck,
    LabelledArrow, MinorCheck, Relation, RelationKind, SpecialIdeal, WahlGenerator, WahlPresentation,
    WahlQuiver, WahlReport, Word,
};
