//! Exact rational scalars.
//!
//! Everything in this crate is computed over the rationals: the structure
//! constants that show up are rational, so exact arithmetic removes any need
//! for tolerances.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(num: i64, den: i64) -> Rat {
    assert!(den != 0);
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses an exact rational written as `p` or `p/q`. Floats are rejected.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".to_string());
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(format!("floats are not accepted, got `{s}`"));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num_str
        .trim()
        .parse()
        .map_err(|_| format!("invalid integer `{num_str}`"))?;
    let den: BigInt = den_str
        .trim()
        .parse()
        .map_err(|_| format!("invalid integer `{den_str}`"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rat::new(num, den))
}

/// Renders a rational as `p` or `p/q`, always in lowest terms.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders `c * label` the way a human would write a signed term.
pub fn format_coeff_term(c: &Rat, label: &str, first: bool) -> String {
    let (sign, abs) = if c.is_negative() {
        ("-", -c.clone())
    } else {
        ("+", c.clone())
    };
    let mag = if abs.is_one() {
        label.to_string()
    } else {
        format!("{}*{}", format_rat(&abs), label)
    };
    match (first, sign) {
        (true, "-") => format!("-{mag}"),
        (true, _) => mag,
        (false, s) => format!(" {s} {mag}"),
    }
}
