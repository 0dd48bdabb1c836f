//! Deterministic decimal formatting shared by the text, CSV and JSON writers.

/// Formats `x` with `sig` significant digits, like C's `%.{sig}g`.
///
/// Fixed notation is used for decimal exponents in `[-5, sig)`, scientific
/// otherwise. Trailing zeros are trimmed. Negative zero prints as `0`.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    // Round first so the exponent reflects the printed mantissa (e.g. 9.99..→10).
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= sig as i32 {
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
