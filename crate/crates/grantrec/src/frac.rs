//! Exact rational values for supports, confidences and scores.
//!
//! All ratios in this crate are kept as reduced `u64` fractions so that
//! equality checks against independently computed values need no tolerance.

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Exact non-negative rational.
pub type Frac = Ratio<u64>;

/// Shorthand constructor; reduces the fraction.
pub fn frac(numer: u64, denom: u64) -> Frac {
    Frac::new(numer, denom)
}

/// Parses `"p/q"`, an integer `"p"`, or a decimal literal like `"0.8"`
/// into an exact fraction. Decimals convert exactly (`0.8` -> `4/5`).
pub fn parse_frac(s: &str) -> Result<Frac> {
    let s = s.trim();
    let bad = || Error::Config(format!("cannot parse '{s}' as a fraction"));
    if let Some((n, d)) = s.split_once('/') {
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        let d: u64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(Error::Config(format!("zero denominator in '{s}'")));
        }
        return Ok(Frac::new(n, d));
    }
    if let Some((int, dec)) = s.split_once('.') {
        if dec.is_empty() || dec.len() > 18 || !dec.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let scale = 10u64.pow(dec.len() as u32);
        let dec: u64 = dec.parse().map_err(|_| bad())?;
        let numer = int
            .checked_mul(scale)
            .and_then(|v| v.checked_add(dec))
            .ok_or_else(bad)?;
        return Ok(Frac::new(numer, scale));
    }
    let n: u64 = s.parse().map_err(|_| bad())?;
    Ok(Frac::from_integer(n))
}

/// Canonical `"p/q"` rendering with an explicit denominator (`1` -> `"1/1"`).
pub fn frac_to_string(f: &Frac) -> String {
    format!("{}/{}", f.numer(), f.denom())
}

/// Decimal rendering with four places, rounded half up (`31/300` -> `"0.1033"`).
pub fn frac_decimal4(f: &Frac) -> String {
    let n = u128::from(*f.numer());
    let d = u128::from(*f.denom());
    let scaled = n * 10_000;
    let mut q = scaled / d;
    if (scaled % d) * 2 >= d {
        q += 1;
    }
    format!("{}.{:04}", q / 10_000, q % 10_000)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ratio_integer_and_decimal_forms() {
        assert_eq!(parse_frac("3/5").unwrap(), frac(3, 5));
        assert_eq!(parse_frac("1").unwrap(), frac(1, 1));
        assert_eq!(parse_frac("0.8").unwrap(), frac(4, 5));
        assert_eq!(parse_frac("1.01").unwrap(), frac(101, 100));
        assert_eq!(parse_frac(" 6/8 ").unwrap(), frac(3, 4));
    }

    #[test]
    fn rejects_malformed_fractions() {
        for s in ["", "a/b", "1/0", "-1/2", "0.", "1.2.3", "."] {
            assert!(parse_frac(s).is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn canonical_string_keeps_denominator() {
        assert_eq!(frac_to_string(&frac(6, 10)), "3/5");
        assert_eq!(frac_to_string(&frac(5, 5)), "1/1");
        assert_eq!(frac_to_string(&frac(0, 7)), "0/1");
    }

    #[test]
    fn decimal_rendering_rounds_half_up() {
        assert_eq!(frac_decimal4(&frac(3, 4)), "0.7500");
        assert_eq!(frac_decimal4(&frac(1, 1)), "1.0000");
        assert_eq!(frac_decimal4(&frac(1, 3)), "0.3333");
        assert_eq!(frac_decimal4(&frac(2, 3)), "0.6667");
        assert_eq!(frac_decimal4(&frac(1, 16_000)), "0.0001");
        assert_eq!(frac_decimal4(&frac(31, 300)), "0.1033");
    }
}
