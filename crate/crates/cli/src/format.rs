//! Deterministic numeric formatting for result files.

/// Format with six significant digits in the style of C's `%.6g`: fixed
/// notation for exponents in [-4, 5], scientific otherwise, trailing zeros
/// stripped.
pub fn g6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.5e}"); // mantissa.ddddd e exp
    let (mantissa, exp) = sci.split_once('e').expect("e-notation");
    let exp: i32 = exp.parse().expect("exponent");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            fixed
        }
    } else {
        let m = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{m}e{}{:02}", if exp < 0 { "-" } else { "+" }, exp.abs())
    }
}

/// A `serde_json` number carrying the `%.6g`-rounded value, so JSON output
/// matches the precision of the CSV output.
pub fn g6_number(x: f64) -> serde_json::Number {
    let rounded: f64 = g6(x).parse().expect("g6 output parses back");
    serde_json::Number::from_f64(rounded).expect("finite")
}
