//! Number formatting shared by every emitted file.

/// Positional decimal notation with 17 significant digits. Zero prints as
/// `0`; non-finite values print as `NaN`, `inf` or `-inf`.
pub fn sig17(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let exponent = v.abs().log10().floor() as i64;
    let decimals = (16 - exponent).max(0) as usize;
    format!("{v:.decimals$}")
}

/// [`sig17`] for optional cells; `None` is an empty field.
pub fn cell(v: Option<f64>) -> String {
    v.map(sig17).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(sig17(std::f64::consts::PI), "3.1415926535897931");
        assert_eq!(sig17(2.0), "2.0000000000000000");
        assert_eq!(sig17(1.0 / 6.0), "0.16666666666666666");
        assert_eq!(sig17(-1250.5), "-1250.5000000000000");
        assert_eq!(sig17(1e-12), "0.0000000000010000000000000000");
        assert_eq!(sig17(0.0), "0");
        assert_eq!(cell(None), "");
    }

    #[test]
    fn round_trips_through_parse() {
        for v in [0.1, 1.0 / 3.0, 5.0 / 12.0, 123456.789, 2.5e-9, 0.78125] {
            assert_eq!(sig17(v).parse::<f64>().unwrap(), v);
        }
    }
}
