//! Exact rationals with a machine-word fast path.
//!
//! Almost every coefficient that shows up in a bar complex is a small integer, so values are
//! kept as reduced `i64` fractions and only promoted to arbitrary precision when an operation
//! would overflow. Results that fit back into `i64` are demoted again, which keeps the
//! representation canonical: two equal rationals always have the same variant.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub enum Q {
  /// Reduced fraction, denominator strictly positive.
  Small(i64, i64),
  Big(Box<BigRational>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational literal `{0}`")]
pub struct ParseQError(pub String);

fn gcd_i128(a: i128, b: i128) -> i128 {
  let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
  while b != 0 {
    let t = a % b;
    a = b;
    b = t;
  }
  a as i128
}

impl Q {
  pub fn zero() -> Self { Q::Small(0, 1) }

  pub fn one() -> Self { Q::Small(1, 1) }

  pub fn from_int(n: i64) -> Self { Q::Small(n, 1) }

  pub fn new(num: i64, den: i64) -> Self {
    assert!(den != 0, "zero denominator");
    Self::from_i128(num as i128, den as i128)
  }

  fn from_i128(num: i128, den: i128) -> Self {
    let g = gcd_i128(num, den);
    let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
    if d < 0 {
      n = -n;
      d = -d;
    }
    if n == 0 {
      return Q::zero();
    }
    match (i64::try_from(n), i64::try_from(d)) {
      (Ok(n), Ok(d)) => Q::Small(n, d),
      _ => Q::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
    }
  }

  fn from_big(r: BigRational) -> Self {
    // BigRational arithmetic keeps results reduced with positive denominator.
    if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
      return Q::Small(n, d);
    }
    Q::Big(Box::new(r))
  }

  pub fn to_big(&self) -> BigRational {
    match self {
      Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
      Q::Big(b) => (**b).clone(),
    }
  }

  pub fn is_zero(&self) -> bool { matches!(self, Q::Small(0, _)) }

  pub fn is_one(&self) -> bool { matches!(self, Q::Small(1, 1)) }

  pub fn is_integer(&self) -> bool {
    match self {
      Q::Small(_, d) => *d == 1,
      Q::Big(b) => b.is_integer(),
    }
  }

  pub fn signum(&self) -> i32 {
    match self {
      Q::Small(n, _) => n.signum() as i32,
      Q::Big(b) =>
        if b.is_positive() {
          1
        } else {
          -1
        },
    }
  }

  pub fn add(&self, other: &Q) -> Q {
    match (self, other) {
      (Q::Small(a, b), Q::Small(c, d)) => {
        let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
        if b == d {
          Self::from_i128(a + c, b)
        } else {
          Self::from_i128(a * d + c * b, b * d)
        }
      },
      _ => Self::from_big(self.to_big() + other.to_big()),
    }
  }

  pub fn sub(&self, other: &Q) -> Q { self.add(&other.neg()) }

  pub fn neg(&self) -> Q {
    match self {
      Q::Small(n, d) =>
        if *n == i64::MIN {
          Self::from_i128(-(*n as i128), *d as i128)
        } else {
          Q::Small(-n, *d)
        },
      Q::Big(b) => Self::from_big(-(**b).clone()),
    }
  }

  pub fn mul(&self, other: &Q) -> Q {
    match (self, other) {
      (Q::Small(a, b), Q::Small(c, d)) => {
        if *a == 0 || *c == 0 {
          return Q::zero();
        }
        // cross-reduce first so the i128 products stay small
        let g1 = gcd_i128(*a as i128, *d as i128);
        let g2 = gcd_i128(*c as i128, *b as i128);
        let n = (*a as i128 / g1) * (*c as i128 / g2);
        let m = (*b as i128 / g2) * (*d as i128 / g1);
        Self::from_i128(n, m)
      },
      _ => Self::from_big(self.to_big() * other.to_big()),
    }
  }

  pub fn recip(&self) -> Q {
    match self {
      Q::Small(0, _) => panic!("division by zero"),
      Q::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
      Q::Big(b) => Self::from_big(b.recip()),
    }
  }

  pub fn div(&self, other: &Q) -> Q { self.mul(&other.recip()) }

  pub fn pow(&self, e: u32) -> Q { (0..e).fold(Q::one(), |acc, _| acc.mul(self)) }

  /// Numerator and denominator as big integers.
  pub fn parts(&self) -> (BigInt, BigInt) {
    match self {
      Q::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
      Q::Big(b) => (b.numer().clone(), b.denom().clone()),
    }
  }
}

impl Default for Q {
  fn default() -> Self { Q::zero() }
}

impl PartialEq for Q {
  fn eq(&self, other: &Self) -> bool {
    match (self, other) {
      (Q::Small(a, b), Q::Small(c, d)) => a == c && b == d,
      (Q::Big(x), Q::Big(y)) => x == y,
      _ => false,
    }
  }
}

impl Eq for Q {}

impl Hash for Q {
  fn hash<H: Hasher>(&self, state: &mut H) {
    match self {
      Q::Small(n, d) => {
        0u8.hash(state);
        n.hash(state);
        d.hash(state);
      },
      Q::Big(b) => {
        1u8.hash(state);
        b.hash(state);
      },
    }
  }
}

impl PartialOrd for Q {
  fn partial_cmp(&self, other: &Self) -> Option<Ordering> { Some(self.cmp(other)) }
}

impl Ord for Q {
  fn cmp(&self, other: &Self) -> Ordering {
    match (self, other) {
      (Q::Small(a, b), Q::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
      _ => self.to_big().cmp(&other.to_big()),
    }
  }
}

impl From<i64> for Q {
  fn from(n: i64) -> Self { Q::from_int(n) }
}

impl From<BigRational> for Q {
  fn from(r: BigRational) -> Self { Q::from_big(r) }
}

impl fmt::Display for Q {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self {
      Q::Small(n, 1) => write!(f, "{n}"),
      Q::Small(n, d) => write!(f, "{n}/{d}"),
      Q::Big(b) =>
        if b.denom().is_one() {
          write!(f, "{}", b.numer())
        } else {
          write!(f, "{}/{}", b.numer(), b.denom())
        },
    }
  }
}

impl FromStr for Q {
  type Err = ParseQError;

  /// Accepts `p`, `-p`, `p/q` with arbitrary-size integers.
  fn from_str(s: &str) -> Result<Self, Self::Err> {
    let bad = || ParseQError(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
      Some((n, d)) => (n.trim(), d.trim()),
      None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
      return Err(bad());
    }
    let g = n.gcd(&d);
    let (mut n, mut d) = if g.is_zero() { (n, d) } else { (&n / &g, &d / &g) };
    if d.is_negative() {
      n = -n;
      d = -d;
    }
    Ok(Q::from_big(BigRational::new_raw(n, d)))
  }
}

impl serde::Serialize for Q {
  fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&self.to_string())
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn small_arithmetic() {
    let a = Q::new(1, 2);
    let b = Q::new(1, 3);
    assert_eq!(a.add(&b), Q::new(5, 6));
    assert_eq!(a.sub(&b), Q::new(1, 6));
    assert_eq!(a.mul(&b), Q::new(1, 6));
    assert_eq!(a.div(&b), Q::new(3, 2));
    assert_eq!(Q::new(2, -4), Q::new(-1, 2));
    assert!(a.sub(&a).is_zero());
  }

  #[test]
  fn promotes_and_demotes() {
    let big = Q::from_int(i64::MAX);
    let sq = big.mul(&big);
    assert!(matches!(sq, Q::Big(_)));
    let back = sq.div(&big);
    assert_eq!(back, big);
    assert!(matches!(back, Q::Small(..)));
    assert_eq!(Q::from_int(i64::MIN).neg().add(&Q::from_int(i64::MIN)), Q::zero());
  }

  #[test]
  fn parses_literals() {
    assert_eq!("3/6".parse::<Q>().unwrap(), Q::new(1, 2));
    assert_eq!("-4".parse::<Q>().unwrap(), Q::from_int(-4));
    assert_eq!(" 1/-2 ".parse::<Q>().unwrap(), Q::new(-1, 2));
    assert!("1/0".parse::<Q>().is_err());
    assert!("x".parse::<Q>().is_err());
    let huge: Q = "123456789012345678901234567890/3".parse().unwrap();
    assert_eq!(huge.to_string(), "41152263004115226300411522630");
  }

  #[test]
  fn ordering_matches_value() {
    assert!(Q::new(1, 3) < Q::new(1, 2));
    assert!(Q::new(-1, 2) < Q::zero());
  }
}
