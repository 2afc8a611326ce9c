use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::constructions::ConstructionKind;
use crate::gf2::ceil_log2;
use crate::lattice::enumerate_patterns;

use super::AnyCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    AtMost,
    Equal,
}

/// One numeric claim about the code's redundancy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub description: String,
    pub value: i64,
    pub relation: Relation,
    pub limit: i64,
    pub holds: bool,
}

impl BoundCheck {
    fn new(description: impl Into<String>, value: i64, relation: Relation, limit: i64) -> BoundCheck {
        let holds = match relation {
            Relation::AtMost => value <= limit,
            Relation::Equal => value == limit,
        };
        BoundCheck { description: description.into(), value, relation, limit, holds }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedundancyReport {
    pub code: String,
    pub cells: usize,
    pub r: usize,
    pub ceil_log_n: u32,
    /// r - ⌈log N⌉.
    pub excess: i64,
    /// r - m for the field-based constructions.
    pub construction_excess: Option<i64>,
    /// Closed-form r with the nominal parameters, when it differs.
    pub nominal_r: Option<usize>,
    /// Correctable patterns plus the no-error event.
    pub class_size: Option<usize>,
    /// ⌈log(class size)⌉.
    pub event_lower_bound: Option<u32>,
    /// Counting bound in closed form: (formula, value).
    pub closed_form_lower_bound: Option<(String, u32)>,
    pub checks: Vec<BoundCheck>,
    pub notes: Vec<String>,
}

impl RedundancyReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Redundancy accounting; `count_class` enumerates the correctable class.
pub fn redundancy_report(code: &AnyCode, count_class: bool) -> RedundancyReport {
    let dims = code.dims();
    let n = dims.volume();
    let d = dims.rank() as u64;
    let r = code.redundancy();
    let log_n = ceil_log2(n as u64);
    let class_size = count_class.then(|| enumerate_patterns(dims, &code.shape()).len() + 1);
    let mut rep = RedundancyReport {
        code: code.name(),
        cells: n,
        r,
        ceil_log_n: log_n,
        excess: r as i64 - log_n as i64,
        construction_excess: None,
        nominal_r: None,
        class_size,
        event_lower_bound: class_size.map(|b| ceil_log2(b as u64)),
        closed_form_lower_bound: None,
        checks: Vec::new(),
        notes: Vec::new(),
    };
    match code {
        AnyCode::Parity(p) => {
            let m = p.field().degree() as i64;
            let ex = r as i64 - m;
            rep.construction_excess = Some(ex);
            let lb = |factor: u64, formula: &str| (formula.to_string(), ceil_log2(factor * n as u64));
            match p.kind() {
                ConstructionKind::A => {
                    let (f, v) = lb(d + 2, "ceil(log((D+2)N))");
                    rep.checks.push(BoundCheck::new(
                        "r - ceil(log((D+2)N)) <= 2",
                        r as i64 - v as i64,
                        Relation::AtMost,
                        2,
                    ));
                    rep.closed_form_lower_bound = Some((f, v));
                }
                ConstructionKind::B => {
                    let (f, v) = lb(3 * d + 2, "ceil(log((3D+2)N))");
                    rep.closed_form_lower_bound = Some((f, v));
                    rep.checks.push(BoundCheck::new(
                        "r - m = 2 ceil(log(D+1)) + 2",
                        ex,
                        Relation::Equal,
                        2 * ceil_log2(d + 1) as i64 + 2,
                    ));
                    rep.checks.push(BoundCheck::new(
                        "r - m <= 2 ceil(log(3D+2))",
                        ex,
                        Relation::AtMost,
                        2 * ceil_log2(3 * d + 2) as i64,
                    ));
                }
                ConstructionKind::C => {
                    let (f, v) = lb((d * d + d + 2) / 2, "ceil(log(N(D^2+D+2)/2))");
                    rep.closed_form_lower_bound = Some((f, v));
                    rep.checks.push(BoundCheck::new(
                        "r - ceil(log(N(D^2+D+2)/2)) <= 2",
                        r as i64 - v as i64,
                        Relation::AtMost,
                        2,
                    ));
                    if p.nominal_redundancy() != r {
                        rep.nominal_r = Some(p.nominal_redundancy());
                        rep.notes.push(format!(
                            "BCH field enlarged: realized r = {r}, nominal r = {} with 2*ceil(log D) BCH rows",
                            p.nominal_redundancy()
                        ));
                    }
                }
                ConstructionKind::D => {
                    let arm = p.arm().unwrap_or(1) as u64;
                    let t = p.bch_t().unwrap_or(0) as i64;
                    let stated = 4 * ceil_log2(d * arm) as i64 + 5;
                    rep.checks.push(BoundCheck::new(
                        "r - m = 4t + 1",
                        ex,
                        Relation::Equal,
                        4 * t + 1,
                    ));
                    rep.checks.push(BoundCheck::new(
                        "r - m = 4 ceil(log D + log R) + 5",
                        ex,
                        Relation::Equal,
                        stated,
                    ));
                    if ex != stated {
                        rep.notes.push(format!(
                            "discrepancy: construction excess 4t+1 = {ex}, stated excess 4 ceil(log D + log R) + 5 = {stated}"
                        ));
                    }
                }
                ConstructionKind::E => {
                    let t = p.bch_t().unwrap_or(0) as i64;
                    rep.checks.push(BoundCheck::new("r - m = 4t + 2", ex, Relation::Equal, 4 * t + 2));
                }
            }
        }
        AnyCode::Coloring(c) => {
            let parts: Vec<String> = c.component_redundancies().iter().map(|x| x.to_string()).collect();
            rep.notes.push(format!("component redundancies {}", parts.join(" + ")));
            let d = d as i64;
            let base = log_n as i64 + 2 * d * d;
            if c.is_cross() {
                rep.checks.push(BoundCheck::new(
                    "r <= ceil(log n^D) + 2D^2 + 2D ceil(log D)",
                    r as i64,
                    Relation::AtMost,
                    base + 2 * d * ceil_log2(d as u64) as i64,
                ));
            } else {
                rep.checks.push(BoundCheck::new(
                    "r <= ceil(log n^D) + 2D^2 + D ceil(log(D+1)) + D",
                    r as i64,
                    Relation::AtMost,
                    base + d * ceil_log2(d as u64 + 1) as i64 + d,
                ));
            }
            for spec in c.components() {
                let f = &spec.code;
                rep.checks.push(BoundCheck::new(
                    format!("component {} r <= ceil(log n_full) + 2b - 1", spec.coloring + 1),
                    f.redundancy() as i64,
                    Relation::AtMost,
                    f.redundancy_bound() as i64,
                ));
            }
        }
    }
    rep
}
