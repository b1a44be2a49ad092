//! Float printing shared by every serialized artifact.

/// Significant digits used for all printed floats.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds `x` to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

/// Shortest decimal representation of `x` after rounding to 12 significant
/// digits (`2.114`, not `2.11400000000`).
pub fn format_float(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        // collapses -0
        return "0".to_string();
    }
    format!("{r}")
}

/// serde helper writing a float rounded with [`round_sig`].
pub fn serialize_f64<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x))
}

pub fn serialize_f64_vec<S: serde::Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&round_sig(*x))?;
    }
    seq.end()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_to_twelve_digits() {
        assert_eq!(format_float(2.114), "2.114");
        assert_eq!(format_float(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(123_456_789.123_456_78), "123456789.123");
        assert_eq!(round_sig(4.0), 4.0);
    }
}
