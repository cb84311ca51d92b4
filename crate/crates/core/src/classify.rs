//! Three-way walk classification with numeric corroboration.
//!
//! The label is decided by integers: degrees first, then the exact
//! walk-regularity procedure. The entropy profile is attached as evidence and
//! checked against the label; a contradiction is reported as
//! [`Error::Diagnostic`].

use std::fmt;

use serde::Serialize;

use crate::entropy::{Analyzer, EntropyProfile};
use crate::error::{Error, Result};
use crate::exact::{is_walk_regular_exact, Witness};
use crate::graph::{is_connected, is_regular, Graph};
use crate::grid::BetaGrid;

/// "Equals ln n" threshold on the entropy deficit, in nats.
pub const MAX_ENTROPY_TOLERANCE: f64 = 1e-9;
/// Largest deficit accepted at the ends of the grid for regular graphs.
pub const END_DEFICIT_TOLERANCE: f64 = 1e-3;
/// Smallest `beta -> inf` deficit accepted for non-regular graphs.
pub const NON_REGULAR_LIMIT_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WalkClass {
    WalkRegular,
    RegularNotWalkRegular,
    NonRegular,
}

impl fmt::Display for WalkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WalkClass::WalkRegular => "WalkRegular",
            WalkClass::RegularNotWalkRegular => "RegularNotWalkRegular",
            WalkClass::NonRegular => "NonRegular",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub class: WalkClass,
    /// First non-constant `diag(A^k)`; `k = 2` (degrees) for non-regular graphs.
    pub witness: Option<Witness>,
    pub connected: bool,
    pub deficit_at_one: f64,
    pub profile: EntropyProfile,
    /// Checks skipped or caveats attached to the numeric evidence.
    pub notes: Vec<String>,
}

fn corroborate(
    class: WalkClass,
    profile: &EntropyProfile,
    connected: bool,
    notes: &mut Vec<String>,
) -> Result<()> {
    let fail = |msg: String| Err(Error::Diagnostic(format!("{class}: {msg}")));
    match class {
        WalkClass::WalkRegular => {
            let worst = profile.max_deficit();
            if worst > MAX_ENTROPY_TOLERANCE {
                return fail(format!(
                    "grid deficit {worst:e} exceeds {MAX_ENTROPY_TOLERANCE:e}"
                ));
            }
        }
        WalkClass::RegularNotWalkRegular => {
            if let Some(pt) = profile.points.iter().find(|p| p.deficit <= 0.0) {
                return fail(format!("zero deficit at beta = {}", pt.beta));
            }
            let first = &profile.points[0];
            if first.deficit >= END_DEFICIT_TOLERANCE {
                return fail(format!(
                    "deficit {:e} at beta = {} does not approach 0",
                    first.deficit, first.beta
                ));
            }
            let last = profile.points.last().expect("grid is non-empty");
            if connected {
                if last.deficit >= END_DEFICIT_TOLERANCE {
                    return fail(format!(
                        "deficit {:e} at beta = {} does not approach 0",
                        last.deficit, last.beta
                    ));
                }
            } else {
                notes.push(format!(
                    "disconnected: large-beta deficit {:e} not required to vanish (beta -> inf limit deficit {:e})",
                    last.deficit, profile.limit_infinity.deficit
                ));
            }
        }
        WalkClass::NonRegular => {
            let d = profile.limit_infinity.deficit;
            if d < NON_REGULAR_LIMIT_FLOOR {
                return fail(format!(
                    "beta -> inf deficit {d:e} below {NON_REGULAR_LIMIT_FLOOR:e}"
                ));
            }
        }
    }
    Ok(())
}

/// Classifies `g` over the default grid.
pub fn classify(g: &Graph) -> Result<Classification> {
    classify_with_grid(g, &BetaGrid::default_grid())
}

pub fn classify_with_grid(g: &Graph, grid: &BetaGrid) -> Result<Classification> {
    let connected = is_connected(g);
    let (class, witness) = if !is_regular(g) {
        let d = g.degrees();
        let j = d.iter().position(|&x| x != d[0]).expect("degrees differ");
        (
            WalkClass::NonRegular,
            Some(Witness {
                k: 2,
                vertices: (0, j),
            }),
        )
    } else {
        let decision = is_walk_regular_exact(g);
        if decision.walk_regular {
            (WalkClass::WalkRegular, None)
        } else {
            (WalkClass::RegularNotWalkRegular, decision.witness)
        }
    };
    let analyzer = Analyzer::new(g)?;
    let profile = analyzer.profile(grid, true)?;
    let deficit_at_one = analyzer.point(1.0)?.deficit;
    let mut notes = Vec::new();
    if profile.limit_infinity.outside_connected_scope {
        notes.push(format!(
            "largest eigenvalue has multiplicity {}; beta -> inf limit uses the top-eigenspace projector",
            profile.limit_infinity.multiplicity
        ));
    }
    corroborate(class, &profile, connected, &mut notes)?;
    Ok(Classification {
        class,
        witness,
        connected,
        deficit_at_one,
        profile,
        notes,
    })
}

/// Both sides of "walk-regular iff the entropy at beta = 1 equals ln n".
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub exact_walk_regular: bool,
    pub deficit_at_one: f64,
    pub entropy_maximal: bool,
    pub agree: bool,
    /// The equivalence is only claimed for connected graphs.
    pub connected: bool,
}

/// Checks the biconditional at tolerance [`MAX_ENTROPY_TOLERANCE`].
/// Disagreement is returned as [`Error::Diagnostic`].
pub fn walk_regularity_equivalence_check(g: &Graph) -> Result<EquivalenceReport> {
    let exact = is_walk_regular_exact(g).walk_regular;
    let deficit = Analyzer::new(g)?.point(1.0)?.deficit;
    let maximal = deficit <= MAX_ENTROPY_TOLERANCE;
    let report = EquivalenceReport {
        exact_walk_regular: exact,
        deficit_at_one: deficit,
        entropy_maximal: maximal,
        agree: exact == maximal,
        connected: is_connected(g),
    };
    if !report.agree {
        return Err(Error::Diagnostic(format!(
            "exact walk-regularity {exact} but deficit at beta = 1 is {deficit:e}"
        )));
    }
    Ok(report)
}
