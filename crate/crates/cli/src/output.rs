//! JSON emission with floats at 17 significant digits, so every number
//! round-trips losslessly and reruns of one config are byte-identical.

use std::io;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, Serializer};

struct SigDigits;

impl Formatter for SigDigits {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            CompactFormatter.write_f64(writer, value)
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, SigDigits);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serializer emits utf-8"))
}

/// One `key = value` line per entry, floats again at 17 significant digits.
pub fn plain_line(key: &str, value: f64) -> String {
    format!("{key} = {value:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_roundtrip_exactly() {
        for v in [1.25, 0.1, std::f64::consts::PI, 1.0 / 3.0, 1e-300] {
            let json = to_json(&v).unwrap();
            let back: f64 = json.parse().unwrap();
            assert_eq!(back, v, "{json}");
        }
    }

    #[test]
    fn scientific_notation_is_valid_json() {
        let json = to_json(&vec![0.5, 2.0]).unwrap();
        let back: Vec<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![0.5, 2.0]);
    }
}
