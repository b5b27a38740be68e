use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational number. Always reduced, denominator positive.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(q: &Rat) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        // huge operands: scale both down before converting
        _ => {
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
            let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Parses `3`, `-3/4` or a finite decimal such as `0.75` or `-1.5e-1`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let joined = format!("{whole}{frac}");
    let mut value = Rat::from_integer(joined.parse::<BigInt>().ok()?);
    let scale = exp - frac.len() as i32;
    let ten = Rat::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Some(if neg { -value } else { value })
}

pub fn is_integer(q: &Rat) -> bool {
    q.denom().is_one()
}

pub fn to_i64(q: &Rat) -> Option<i64> {
    if is_integer(q) {
        q.numer().to_i64()
    } else {
        None
    }
}

/// gcd of numerators over lcm of denominators; zero only for an all-zero input.
pub fn rat_gcd<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Rat {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for v in values {
        num = num.gcd(v.numer());
        den = den.lcm(v.denom());
    }
    Rat::new(num.abs(), den)
}

/// Serialized as `{"num": "...", "den": "..."}` so no precision is lost.
#[derive(Serialize, Deserialize)]
struct RatRepr {
    num: String,
    den: String,
}

pub fn serialize_rat<S: Serializer>(q: &Rat, s: S) -> Result<S::Ok, S::Error> {
    RatRepr { num: q.numer().to_string(), den: q.denom().to_string() }.serialize(s)
}

pub fn deserialize_rat<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
    let repr = RatRepr::deserialize(d)?;
    let num: BigInt = repr.num.parse().map_err(serde::de::Error::custom)?;
    let den: BigInt = repr.den.parse().map_err(serde::de::Error::custom)?;
    if den.is_zero() {
        return Err(serde::de::Error::custom("zero denominator"));
    }
    Ok(Rat::new(num, den))
}

/// Compact text form: `3`, `-2/5`.
pub fn fmt_rat(q: &Rat) -> String {
    if is_integer(q) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3/4"), Some(rat(3, 4)));
        assert_eq!(parse_rat("-6/8"), Some(rat(-3, 4)));
        assert_eq!(parse_rat("0.75"), Some(rat(3, 4)));
        assert_eq!(parse_rat("-1.25"), Some(rat(-5, 4)));
        assert_eq!(parse_rat("2"), Some(int(2)));
        assert_eq!(parse_rat("5e-1"), Some(rat(1, 2)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("abc"), None);
        assert_eq!(parse_rat("."), None);
    }

    #[test]
    fn gcd_of_rationals() {
        assert_eq!(rat_gcd(&[rat(2, 3), rat(4, 9)]), rat(2, 9));
        assert_eq!(rat_gcd(&[rat(-8, 1)]), int(8));
    }

    #[test]
    fn huge_to_f64() {
        let big = Rat::new(BigInt::from(3) << 2000, BigInt::from(2) << 2000);
        assert!((rat_to_f64(&big) - 1.5).abs() < 1e-12);
    }
}
