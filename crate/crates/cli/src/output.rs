//! Number formatting and output routing. Floats are printed with 9
//! significant digits everywhere.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::Value;

pub const SIG_DIGITS: usize = 9;

/// Rounds to 9 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

/// `%.9g`-style rendering: fixed notation for moderate exponents, trailing
/// zeros removed.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let x = round_sig(x);
    let exp = x.abs().log10().floor() as i32;
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{:.*e}", SIG_DIGITS - 1, x);
        let (mantissa, exponent) = s.split_once('e').expect("scientific");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exponent}")
    }
}

/// Rounds every float in a JSON tree; non-finite values become null.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            serde_json::Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect())
        }
        other => other,
    }
}

pub fn json_text(v: Value) -> String {
    serde_json::to_string_pretty(&round_json(v)).expect("json serializes") + "\n"
}

/// Writes to `path`, or stdout when absent.
pub fn emit(text: &str, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt_num(0.7799442711232811), "0.779944271");
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_num(112205.0), "112205");
        assert_eq!(fmt_num(0.30000000000000004), "0.3");
        assert_eq!(fmt_num(3.8574996959278356e-22), "3.8574997e-22");
        assert_eq!(fmt_num(1234567891234.0), "1.23456789e12");
        assert_eq!(fmt_num(-0.0625), "-0.0625");
        assert_eq!(round_sig(0.051139424878), 0.0511394249);
    }
}
