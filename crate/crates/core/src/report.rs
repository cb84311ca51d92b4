//! CSV and JSON renderings of an [`EntropyProfile`].
//!
//! CSV columns are fixed: `beta, entropy, deficit, ln_Z, sigma_d2,
//! hadamard_slack, bg_slack`. Numbers use 17 significant digits in scientific
//! notation. The first row is the `beta = 0` limit, the last the `beta = inf`
//! limit, whose columns other than entropy and deficit are left empty.

use crate::entropy::EntropyProfile;
use crate::error::{Error, Result};

pub const CSV_COLUMNS: [&str; 7] = [
    "beta",
    "entropy",
    "deficit",
    "ln_Z",
    "sigma_d2",
    "hadamard_slack",
    "bg_slack",
];

/// 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

/// Six significant digits, for human-readable output.
pub fn fmt_short(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return fmt_f64(x);
    }
    let magnitude = x.abs().log10().floor();
    if (-4.0..6.0).contains(&magnitude) {
        let decimals = (5.0 - magnitude).max(0.0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

pub fn profile_csv(profile: &EntropyProfile) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Internal(e.to_string());
    w.write_record(CSV_COLUMNS).map_err(io)?;
    let ln_n = profile.limit_zero;
    w.write_record([
        "0".to_string(),
        fmt_f64(ln_n),
        fmt_f64(0.0),
        fmt_f64(ln_n),
        fmt_f64(0.0),
        fmt_f64(0.0),
        fmt_f64(0.0),
    ])
    .map_err(io)?;
    for p in &profile.points {
        w.write_record([
            fmt_f64(p.beta),
            fmt_f64(p.entropy),
            fmt_f64(p.deficit),
            fmt_f64(p.ln_z),
            fmt_f64(p.diag_variance),
            fmt_f64(p.hadamard_slack),
            fmt_f64(p.bg_slack),
        ])
        .map_err(io)?;
    }
    let lim = &profile.limit_infinity;
    w.write_record([
        "inf".to_string(),
        fmt_f64(lim.entropy),
        fmt_f64(lim.deficit),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
    ])
    .map_err(io)?;
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

pub fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::Analyzer;
    use crate::graph::Graph;
    use crate::grid::BetaGrid;

    #[test]
    fn number_format() {
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_f64(std::f64::consts::LN_2), "6.9314718055994529e-1");
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_short(std::f64::consts::LN_2), "0.693147");
        assert_eq!(fmt_short(1234.5678), "1234.57");
        assert_eq!(fmt_short(1.5e-9), "1.50000e-9");
        assert_eq!(fmt_short(0.0), "0");
    }

    #[test]
    fn csv_layout() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let grid = BetaGrid::from_values(vec![0.5, 1.0]).unwrap();
        let prof = Analyzer::new(&g).unwrap().profile(&grid, false).unwrap();
        let csv = profile_csv(&prof).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(
            lines[0],
            "beta,entropy,deficit,ln_Z,sigma_d2,hadamard_slack,bg_slack"
        );
        assert!(lines[1].starts_with("0,1.0986122886681098e0,"));
        assert!(lines[2].starts_with("5.0000000000000000e-1,"));
        assert!(lines[4].starts_with("inf,") && lines[4].ends_with(",,,,"));
    }
}
