//! Command-line front end. [`run`] returns the exit status and the text to
//! print so it can be driven from tests.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::hj::{hj_expand, i_series};
use crate::lgroup::{LCoords, LElement, Parameters, Point};
use crate::reconalg::{
    degree_zero_canonical, domestic_classify, quiver_combinatorial, quiver_from_intersection, quiver_to_dot,
    wahl_generators, wahl_relations, wahl_special_ideals, wahl_verify,
};
use crate::resolution::{resolution_report, specials, speciality_oracle, to_dot, DEFAULT_L_MAX};
use crate::sweep::{run_sweep, SweepConfig};
use crate::{hj, Error};

pub const SEED_ENV: &str = "STARRES_SEED";

#[derive(Parser, Debug)]
#[command(name = "starres", version, about = "Resolution graphs, special modules and quivers for Veronese subrings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// HJ expansion, i-series and I(r, a)
    Iseries {
        r: i64,
        a: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Dual graph of the resolution
    Graph {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Special CM modules; with --lmax also runs the speciality oracle
    Specials {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        lmax: Option<i64>,
        #[command(flatten)]
        out: Output,
    },
    /// Reconstruction-algebra quiver
    Quiver {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// 0-Wahl presentation and its verification
    Wahl {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 12)]
        max_degree: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Domestic classification of S^{s_{m-3}}
    Domestic {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        m: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Oracle cross-checks over seeded random inputs
    Sweep {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_L_MAX)]
        lmax: i64,
        #[arg(long, default_value_t = 40)]
        max_r: i64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct Input {
    /// Weights, e.g. 3,5,5
    #[arg(long, value_delimiter = ',')]
    pub p: Option<Vec<i64>>,
    /// Points u:w, e.g. 1:0,0:1,1/2:1; missing points use the defaults
    #[arg(long)]
    pub lambda: Option<String>,
    /// Arm coefficients of x
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Option<Vec<i64>>,
    /// Coefficient of c in x
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<i64>,
    /// JSON file or inline JSON {"p":..,"lambda":..,"x":{"xi":..,"c":..}}
    #[arg(long)]
    pub input: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Parse(String),
    Domain(Error),
    Report { code: &'static str, message: String, body: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

#[derive(Deserialize)]
struct InputFile {
    #[serde(flatten)]
    params: Parameters,
    x: Option<LCoords>,
}

fn parse_points(text: &str, n: usize) -> Result<Vec<Point>, Failure> {
    let mut points: Vec<Point> = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| Point::parse(s.trim()).map_err(|e| Failure::Parse(e.to_string())))
        .collect::<Result<_, _>>()?;
    if points.len() > n {
        return Err(Failure::Parse(format!("{} points for {n} weights", points.len())));
    }
    for i in points.len()..n {
        points.push(Point::default_for(i));
    }
    Ok(points)
}

impl Input {
    fn params(&self) -> Result<(Parameters, Option<LCoords>), Failure> {
        if let Some(src) = &self.input {
            let text = if src.trim_start().starts_with('{') {
                src.clone()
            } else {
                std::fs::read_to_string(PathBuf::from(src))
                    .map_err(|e| Failure::Parse(format!("cannot read {src}: {e}")))?
            };
            let file: InputFile = serde_json::from_str(&text).map_err(|e| Failure::Parse(e.to_string()))?;
            let x = match (&self.x, file.x) {
                (Some(xi), _) => Some(LCoords { xi: xi.clone(), c: self.c.unwrap_or(0) }),
                (None, x) => x,
            };
            return Ok((file.params, x));
        }
        let weights = self.p.clone().ok_or_else(|| Failure::Parse("--p or --input is required".into()))?;
        let points = match &self.lambda {
            Some(text) => parse_points(text, weights.len())?,
            None => (0..weights.len()).map(Point::default_for).collect(),
        };
        let params = Parameters::new(weights, points)?;
        let x = match (&self.x, self.c) {
            (None, None) => None,
            (xi, c) => Some(LCoords {
                xi: xi.clone().unwrap_or_else(|| vec![0; params.n()]),
                c: c.unwrap_or(0),
            }),
        };
        Ok((params, x))
    }

    fn params_and_x(&self) -> Result<(Parameters, LElement), Failure> {
        let (params, x) = self.params()?;
        let x = x.ok_or_else(|| Failure::Parse("--x/--c or an input x is required".into()))?;
        let x = x.into_element(&params)?;
        Ok((params, x))
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn unsupported(format: Format, command: &str) -> Failure {
    Failure::Domain(Error::Precondition(format!("{format:?} output is not available for {command}")))
}

fn execute(command: &Command, env_seed: Option<u64>) -> Result<String, Failure> {
    match command {
        Command::Iseries { r, a, out } => {
            let e = hj_expand(*r, *a)?;
            let series = i_series(*r, *a)?;
            let set: Vec<i64> = series.as_set().into_iter().collect();
            match out.format {
                Format::Json => Ok(to_json(&json!({
                    "r": r, "a": a, "expansion": e.alphas, "series": series.terms, "set": set,
                }))),
                Format::Text => Ok(format!(
                    "{r}/{a} = {:?}\nseries {:?}\nI({r},{a}) = {:?}\n",
                    e.alphas, series.terms, set
                )),
                Format::Dot => Err(unsupported(out.format, "iseries")),
            }
        }
        Command::Graph { input, out } => {
            let (params, x) = input.params_and_x()?;
            let report = resolution_report(&params, &x)?;
            match out.format {
                Format::Json => Ok(to_json(&report)),
                Format::Dot => Ok(to_dot(&report.graph, report.specials.as_deref())),
                Format::Text => {
                    let mut s = String::new();
                    for v in &report.graph.vertices {
                        s.push_str(&format!("{} {}\n", v.name, v.label));
                    }
                    s.push_str(&format!("minimal {}\n", report.minimal));
                    Ok(s)
                }
            }
        }
        Command::Specials { input, lmax, out } => {
            let (params, x) = input.params_and_x()?;
            let modules = specials(&params, &x)?;
            let mut oracle = Vec::new();
            if let Some(l_max) = lmax {
                for j in x.support() {
                    let pj = params.weights()[j];
                    let expected = hj::i_set(pj, pj - x.xi()[j])?;
                    for u in 0..=pj {
                        let v = speciality_oracle(&params, &x, &params.x(j).scale(u), *l_max)?;
                        oracle.push(json!({
                            "j": j + 1, "u": u, "special": v.special, "witness": v.witness,
                            "classified": expected.contains(&u),
                        }));
                    }
                }
            }
            match out.format {
                Format::Json if lmax.is_some() => Ok(to_json(&json!({"specials": modules, "oracle": oracle}))),
                Format::Json => Ok(to_json(&modules)),
                Format::Text => Ok(modules
                    .iter()
                    .map(|m| match m.vertex {
                        Some(v) => format!("{} {v}\n", m.name),
                        None => format!("{}\n", m.name),
                    })
                    .collect()),
                Format::Dot => Err(unsupported(out.format, "specials")),
            }
        }
        Command::Quiver { input, out } => {
            let (params, x) = input.params_and_x()?;
            let report = resolution_report(&params, &x)?;
            let modules = report
                .specials
                .ok_or_else(|| Error::NotMinimal(format!("{x} lies in [0, c]")))?;
            let q = if x.support().len() >= 2 {
                quiver_combinatorial(&params, &x)?
            } else {
                quiver_from_intersection(&report.graph, &modules)?
            };
            let d0 = degree_zero_canonical(&params, &x)?;
            match out.format {
                Format::Json => Ok(to_json(&json!({
                    "vertices": q.names,
                    "labels": q.vertices,
                    "arrows": q.arrows,
                    "relations": q.relations,
                    "degenerate": q.degenerate,
                    "degree_zero": {"q": d0.q, "mu": d0.mu, "relations": d0.relations},
                }))),
                Format::Dot => Ok(quiver_to_dot(&q, &report.graph)),
                Format::Text => {
                    let mut s = format!("vertices {}\n", q.names.join(" | "));
                    for (name, row) in q.names.iter().zip(&q.arrows) {
                        s.push_str(&format!("arrows from {name}: {row:?}\n"));
                    }
                    for (name, row) in q.names.iter().zip(&q.relations) {
                        s.push_str(&format!("relations from {name}: {row:?}\n"));
                    }
                    Ok(s)
                }
            }
        }
        Command::Wahl { input, max_degree, out } => {
            let (params, _) = input.params()?;
            let presentation = wahl_generators(&params)?;
            let report = wahl_verify(&params, *max_degree)?;
            if let Some(failure) = report.first_failure() {
                return Err(Failure::Report {
                    code: "wahl_verification_failed",
                    message: failure,
                    body: to_json(&report),
                });
            }
            let ideals = wahl_special_ideals(&params)?;
            let quiver = wahl_relations(&params)?;
            match out.format {
                Format::Json => Ok(to_json(&json!({
                    "presentation": presentation,
                    "verification": report,
                    "special_ideals": ideals,
                    "quiver": quiver,
                }))),
                Format::Text => {
                    let mut s = String::new();
                    for g in &presentation.generators {
                        s.push_str(&format!("{} = {} (degree {})\n", g.name, g.formula, g.degree));
                    }
                    for row in &presentation.matrix {
                        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                        s.push_str(&format!("[ {} ]\n", cells.join(" , ")));
                    }
                    for i in &ideals {
                        s.push_str(&format!("{} = {}\n", i.name, i.ideal));
                    }
                    for r in &quiver.relations {
                        s.push_str(&format!("{}\n", r.text));
                    }
                    Ok(s)
                }
                Format::Dot => {
                    let mut s = String::from("digraph wahl {\n");
                    for (i, name) in quiver.names.iter().enumerate() {
                        s.push_str(&format!("  v{i} [label=\"{name}\"];\n"));
                    }
                    for a in &quiver.arrows {
                        let color = match a.color {
                            crate::reconalg::ArrowColor::Black => "black",
                            crate::reconalg::ArrowColor::Red => "red",
                        };
                        s.push_str(&format!(
                            "  v{} -> v{} [label=\"{}\", color={color}];\n",
                            a.source, a.target, a.label
                        ));
                    }
                    s.push_str("}\n");
                    Ok(s)
                }
            }
        }
        Command::Domestic { input, m, out } => {
            let (params, _) = input.params()?;
            let info = domestic_classify(&params, *m)?;
            match out.format {
                Format::Json => Ok(to_json(&info.summary())),
                Format::Text => Ok(format!("{} h={} index={}\n", info.label(), info.h, info.index)),
                Format::Dot => Err(unsupported(out.format, "domestic")),
            }
        }
        Command::Sweep { seed, lmax, max_r, samples, out } => {
            if *max_r < 2 || *samples == 0 || *lmax < 1 {
                return Err(Failure::Parse("sweep bounds must be positive (max-r >= 2)".into()));
            }
            let config = SweepConfig { seed: env_seed.unwrap_or(*seed), max_r: *max_r, samples: *samples, l_max: *lmax };
            let report = run_sweep(&config)?;
            let body = match out.format {
                Format::Json => to_json(&report),
                Format::Text => report
                    .checks
                    .iter()
                    .map(|c| match &c.counterexample {
                        None => format!("ok   {} ({} cases)\n", c.name, c.cases),
                        Some(e) => format!("FAIL {}: {e}\n", c.name),
                    })
                    .collect(),
                Format::Dot => return Err(unsupported(out.format, "sweep")),
            };
            match report.first_counterexample() {
                Some((name, example)) => Err(Failure::Report {
                    code: "oracle_disagreement",
                    message: format!("{name}: {example}"),
                    body,
                }),
                None => Ok(body),
            }
        }
    }
}

fn error_json(code: &str, message: &str) -> String {
    to_json(&json!({"code": code, "message": message}))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: error_json("parse_error", text.trim()), stderr: text }
            };
        }
    };
    let env_seed = match std::env::var(SEED_ENV) {
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(seed) => Some(seed),
            Err(_) => {
                let msg = format!("{SEED_ENV}={v:?} is not an unsigned integer");
                return Outcome { code: 2, stdout: error_json("parse_error", &msg), stderr: String::new() };
            }
        },
        Err(_) => None,
    };
    match execute(&cli.command, env_seed) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(Failure::Parse(msg)) => Outcome { code: 2, stdout: error_json("parse_error", &msg), stderr: String::new() },
        Err(Failure::Domain(e)) => {
            Outcome { code: 1, stdout: error_json(e.code(), &e.to_string()), stderr: String::new() }
        }
        Err(Failure::Report { code, message, body }) => {
            Outcome { code: 1, stdout: error_json(code, &message), stderr: body }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("starres").chain(args.iter().copied()))
    }

    #[test]
    fn iseries_json() {
        let o = run_args(&["iseries", "17", "10"]);
        assert_eq!(o.code, 0);
        assert_eq!(
            o.stdout,
            "{\"a\":10,\"expansion\":[2,4,2,2],\"r\":17,\"series\":[17,10,3,2,1,0],\"set\":[0,1,2,3,10,17]}\n"
        );
    }

    #[test]
    fn graph_dot() {
        let o = run_args(&["graph", "--p", "3,5,5", "--x", "2,2,3", "--c", "0", "--format", "dot"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("center [label=\"-3\""));
    }

    #[test]
    fn domestic_summary() {
        let o = run_args(&["domestic", "--p", "2,3,4", "--m", "3"]);
        assert_eq!(o.stdout, "{\"group\":\"O_13\",\"h\":12,\"pi_index\":13}\n");
    }

    #[test]
    fn error_codes() {
        let o = run_args(&["graph", "--p", "3,5,5", "--x", "0,0,0", "--c", "0"]);
        assert_eq!(o.code, 1);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["code"], "precondition");
        assert_eq!(run_args(&["graph", "--p", "3,x"]).code, 2);
        assert_eq!(run_args(&["graph", "--p", "3,5", "--lambda", "1:zz", "--x", "1,1"]).code, 2);
        assert_eq!(run_args(&["frobnicate"]).code, 2);
        assert_eq!(run_args(&["graph", "--p", "3,5", "--lambda", "1:0,2:0", "--x", "1,1"]).code, 1);
    }

    #[test]
    fn inline_input() {
        let o = run_args(&["specials", "--input", r#"{"p":[3,5,5],"x":{"xi":[2,2,3],"c":0}}"#, "--format", "text"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout.lines().count(), 7);
    }
}
