//! Fixed float formatting shared by every report.
//!
//! All printed floats carry 12 significant digits; magnitudes below 1e-4
//! switch to lowercase scientific notation. Identical inputs therefore
//! always render to identical bytes.

pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let a = x.abs();
    if a < 1e-4 {
        format!("{x:.11e}")
    } else {
        let mag = a.log10().floor() as i32;
        let decimals = (11 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    }
}

/// Renders `Some` via [`fmt_float`] and `None` as the given placeholder.
pub fn fmt_opt(x: Option<f64>, none: &str) -> String {
    match x {
        Some(v) => fmt_float(v),
        None => none.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_float(1.0), "1.00000000000");
        assert_eq!(fmt_float(0.7), "0.700000000000");
        assert_eq!(fmt_float(0.625), "0.625000000000");
        assert_eq!(fmt_float(-0.25), "-0.250000000000");
        assert_eq!(fmt_float(100.0), "100.000000000");
    }

    #[test]
    fn small_magnitudes_go_scientific() {
        assert_eq!(fmt_float(0.0), "0");
        assert_eq!(fmt_float(1.5e-5), "1.50000000000e-5");
        assert_eq!(fmt_float(-3.0e-16), "-3.00000000000e-16");
    }
}
