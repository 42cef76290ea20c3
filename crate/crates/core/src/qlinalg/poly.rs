//! Univariate polynomials over ℚ in the variable `t`.

use std::fmt;

use super::rational::Q;

/// Dense coefficient vector, lowest degree first, never with a trailing zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
  coeffs: Vec<Q>,
}

impl Poly {
  pub fn zero() -> Self { Poly { coeffs: Vec::new() } }

  pub fn one() -> Self { Poly::constant(Q::one()) }

  pub fn constant(c: Q) -> Self { Poly::new(vec![c]) }

  /// `t`
  pub fn t() -> Self { Poly::monomial(Q::one(), 1) }

  pub fn monomial(c: Q, degree: usize) -> Self {
    let mut coeffs = vec![Q::zero(); degree + 1];
    coeffs[degree] = c;
    Poly::new(coeffs)
  }

  pub fn new(mut coeffs: Vec<Q>) -> Self {
    while coeffs.last().is_some_and(Q::is_zero) {
      coeffs.pop();
    }
    Poly { coeffs }
  }

  /// Builds from integer coefficients, lowest degree first.
  pub fn from_ints(cs: &[i64]) -> Self { Poly::new(cs.iter().map(|&c| Q::from_int(c)).collect()) }

  pub fn coeffs(&self) -> &[Q] { &self.coeffs }

  pub fn is_zero(&self) -> bool { self.coeffs.is_empty() }

  /// `None` for the zero polynomial.
  pub fn degree(&self) -> Option<usize> { self.coeffs.len().checked_sub(1) }

  pub fn lead(&self) -> Option<&Q> { self.coeffs.last() }

  pub fn is_constant(&self) -> bool { self.coeffs.len() <= 1 }

  pub fn is_monic(&self) -> bool { self.lead().is_some_and(Q::is_one) }

  pub fn add(&self, other: &Poly) -> Poly {
    let n = self.coeffs.len().max(other.coeffs.len());
    let z = Q::zero();
    Poly::new(
      (0..n)
        .map(|i| self.coeffs.get(i).unwrap_or(&z).add(other.coeffs.get(i).unwrap_or(&z)))
        .collect(),
    )
  }

  pub fn neg(&self) -> Poly { Poly { coeffs: self.coeffs.iter().map(Q::neg).collect() } }

  pub fn sub(&self, other: &Poly) -> Poly { self.add(&other.neg()) }

  pub fn scale(&self, c: &Q) -> Poly { Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect()) }

  pub fn mul(&self, other: &Poly) -> Poly {
    if self.is_zero() || other.is_zero() {
      return Poly::zero();
    }
    let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
    for (i, a) in self.coeffs.iter().enumerate() {
      if a.is_zero() {
        continue;
      }
      for (j, b) in other.coeffs.iter().enumerate() {
        out[i + j] = out[i + j].add(&a.mul(b));
      }
    }
    Poly::new(out)
  }

  /// Euclidean division; panics on a zero divisor.
  pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
    let dd = divisor.degree().expect("division by the zero polynomial");
    let lead_inv = divisor.coeffs[dd].recip();
    let mut rem = self.coeffs.clone();
    if rem.len() <= dd {
      return (Poly::zero(), self.clone());
    }
    let mut quot = vec![Q::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
      let c = rem[k + dd].mul(&lead_inv);
      if c.is_zero() {
        continue;
      }
      for (j, dc) in divisor.coeffs.iter().enumerate() {
        rem[k + j] = rem[k + j].sub(&c.mul(dc));
      }
      quot[k] = c;
    }
    rem.truncate(dd);
    (Poly::new(quot), Poly::new(rem))
  }

  pub fn rem(&self, divisor: &Poly) -> Poly { self.div_rem(divisor).1 }

  /// Scales to leading coefficient 1; zero stays zero.
  pub fn monic(&self) -> Poly {
    match self.lead() {
      None => Poly::zero(),
      Some(l) => self.scale(&l.recip()),
    }
  }

  /// Monic greatest common divisor (`gcd(0, 0) = 0`).
  pub fn gcd(&self, other: &Poly) -> Poly {
    let (mut a, mut b) = (self.clone(), other.clone());
    while !b.is_zero() {
      let r = a.rem(&b);
      a = b;
      b = r;
    }
    a.monic()
  }

  pub fn eval(&self, x: &Q) -> Q {
    self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc.mul(x).add(c))
  }

  /// True iff the polynomial is `c·tᵏ` for a nonzero constant `c` and some `k ≥ 0`.
  pub fn is_unit_times_t_power(&self) -> bool {
    match self.degree() {
      None => false,
      Some(d) => self.coeffs[..d].iter().all(Q::is_zero),
    }
  }
}

impl fmt::Display for Poly {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if self.is_zero() {
      return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in self.coeffs.iter().enumerate().rev() {
      if c.is_zero() {
        continue;
      }
      let neg = c.signum() < 0;
      let abs = if neg { c.neg() } else { c.clone() };
      if first {
        if neg {
          write!(f, "-")?;
        }
      } else {
        write!(f, " {} ", if neg { '-' } else { '+' })?;
      }
      first = false;
      let show_coeff = !abs.is_one() || i == 0;
      match i {
        0 => write!(f, "{abs}")?,
        1 if show_coeff => write!(f, "{abs}*t")?,
        1 => write!(f, "t")?,
        _ if show_coeff => write!(f, "{abs}*t^{i}")?,
        _ => write!(f, "t^{i}")?,
      }
    }
    Ok(())
  }
}
