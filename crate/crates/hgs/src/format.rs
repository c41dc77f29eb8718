//! Number formatting shared by the CSV and JSON writers.

/// Significant digits used for every float written to CSV.
pub const SIG_DIGITS: usize = 12;

/// `%.12g`-style formatting: fixed notation for moderate exponents,
/// scientific otherwise, trailing zeros trimmed.
pub fn fmt_g(x: f64) -> String {
    fmt_sig(x, SIG_DIGITS)
}

pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    // exponent after rounding to `digits` significant digits
    let sci = format!("{:.*e}", digits - 1, x);
    let (mant, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}{:02}", trim(mant), if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, x)).to_string()
    }
}

/// `x` rounded to [`SIG_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x.is_finite() {
        fmt_g(x).parse().unwrap_or(x)
    } else {
        x
    }
}

/// Round every float in a JSON tree to [`SIG_DIGITS`] significant digits.
/// Integers are left alone.
pub fn round_json(v: serde_json::Value) -> serde_json::Value {
    use serde_json::Value;
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap_or(f64::NAN));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        assert_eq!(fmt_g(0.0), "0");
        assert_eq!(fmt_g(1.0), "1");
        assert_eq!(fmt_g(-2.015625), "-2.015625");
        assert_eq!(fmt_g(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g(123456.789), "123456.789");
        assert_eq!(fmt_g(1e-7), "1e-07");
        assert_eq!(fmt_g(6.02214076e23), "6.02214076e+23");
        assert_eq!(fmt_g(999999999999.9), "1e+12");
        assert_eq!(fmt_g(0.00012345), "0.00012345");
        assert_eq!(fmt_g(f64::NAN), "nan");
    }

    #[test]
    fn json_rounding() {
        let v = serde_json::json!({"a": 0.1 + 0.2, "b": [1.0 / 3.0, 7], "c": "x"});
        let r = round_json(v);
        assert_eq!(r["a"], serde_json::json!(0.3));
        assert_eq!(r["b"][0].as_f64().unwrap(), 0.333333333333);
        assert_eq!(r["b"][1], serde_json::json!(7));
        assert_eq!(r["c"], "x");
    }
}
