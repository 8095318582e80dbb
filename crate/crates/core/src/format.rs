//! printf-style `%.Ne` rendering, so emitted tables match C/Python output byte for byte.

/// Formats `x` like C's `%.{prec}e`: mantissa, `e`, sign, and at least two exponent digits.
pub fn c_exp(x: f64, prec: usize) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".to_string() } else { "-inf".to_string() };
    }
    let s = format!("{x:.prec$e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

#[cfg(test)]
mod tests {
    use super::c_exp;

    #[test]
    fn matches_printf() {
        assert_eq!(c_exp(1.4622902, 12), "1.462290200000e+00");
        assert_eq!(c_exp(-0.046382, 12), "-4.638200000000e-02");
        assert_eq!(c_exp(0.0, 9), "0.000000000e+00");
        assert_eq!(c_exp(1e-300, 3), "1.000e-300");
        assert_eq!(c_exp(123456.0, 2), "1.23e+05");
        assert_eq!(c_exp(f64::NAN, 12), "nan");
        assert_eq!(c_exp(f64::NEG_INFINITY, 12), "-inf");
    }
}
