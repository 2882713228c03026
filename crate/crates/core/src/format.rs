//! Round-trip number formatting for CSV and JSON output.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// JSON formatter that writes every float with [`fmt_f64`].
#[derive(Clone, Copy, Debug, Default)]
pub struct RoundTripFormatter;

impl Formatter for RoundTripFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        writer.write_all(fmt_f64(value as f64).as_bytes())
    }
}

/// Serializes to compact JSON. Non-finite floats become `null`.
pub fn to_json<S: Serialize>(value: &S) -> serde_json::Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, RoundTripFormatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serde_json writes UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, std::f64::consts::PI, 1e300] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn json_floats() {
        let s = to_json(&(0.1f64, f64::NAN, 3i32)).unwrap();
        assert_eq!(s, "[1.0000000000000001e-1,null,3]");
        let back: (f64, Option<f64>, i32) = serde_json::from_str(&s).unwrap();
        assert_eq!(back, (0.1, None, 3));
    }
}
