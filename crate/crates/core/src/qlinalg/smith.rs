use super::poly::Poly;
use super::sparse::SparseMatrix;

/// Nonzero invariant factors `d₁ | d₂ | … | d_r` of a matrix over ℚ[t], each monic.
///
/// `r` is the rank over ℚ(t). Zero diagonal entries of the Smith form are not listed.
pub fn smith_normal_form_poly(m: &SparseMatrix<Poly>) -> Vec<Poly> {
  let mut a = m.to_dense();
  let rows = m.rows();
  let cols = m.cols();
  let mut factors = Vec::new();
  for k in 0..rows.min(cols) {
    loop {
      let Some((pi, pj)) = min_degree_entry(&a, k) else {
        return factors;
      };
      a.swap(k, pi);
      for row in a.iter_mut() {
        row.swap(k, pj);
      }
      let pivot = a[k][k].clone();
      let mut clean = true;
      for i in k + 1..rows {
        if a[i][k].is_zero() {
          continue;
        }
        let (q, r) = a[i][k].div_rem(&pivot);
        for j in k..cols {
          let sub = q.mul(&a[k][j]);
          a[i][j] = a[i][j].sub(&sub);
        }
        clean &= r.is_zero();
      }
      for j in k + 1..cols {
        if a[k][j].is_zero() {
          continue;
        }
        let (q, r) = a[k][j].div_rem(&pivot);
        for row in a.iter_mut().skip(k) {
          let sub = q.mul(&row[k]);
          row[j] = row[j].sub(&sub);
        }
        clean &= r.is_zero();
      }
      if !clean {
        continue;
      }
      // The pivot must divide the remaining block; otherwise fold an offending row in.
      let offending = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !a[i][j].rem(&pivot).is_zero()));
      match offending {
        Some(i) =>
          for j in k..cols {
            let v = a[k][j].add(&a[i][j]);
            a[k][j] = v;
          },
        None => break,
      }
    }
    factors.push(a[k][k].monic());
  }
  factors
}

fn min_degree_entry(a: &[Vec<Poly>], k: usize) -> Option<(usize, usize)> {
  let mut best: Option<(usize, usize, usize)> = None;
  for (i, row) in a.iter().enumerate().skip(k) {
    for (j, v) in row.iter().enumerate().skip(k) {
      if let Some(d) = v.degree() {
        if best.is_none_or(|b| d < b.2) {
          best = Some((i, j, d));
        }
      }
    }
  }
  best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
  use super::*;

  fn pm(rows: &[&[&[i64]]]) -> SparseMatrix<Poly> {
    SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|c| Poly::from_ints(c)).collect()).collect::<Vec<_>>())
  }

  #[test]
  fn single_entry() {
    assert_eq!(smith_normal_form_poly(&pm(&[&[&[0, 1]]])), vec![Poly::t()]);
  }

  #[test]
  fn already_diagonal() {
    let m = pm(&[&[&[0, 1], &[]], &[&[], &[0, 0, 1]]]);
    assert_eq!(smith_normal_form_poly(&m), vec![Poly::t(), Poly::from_ints(&[0, 0, 1])]);
  }

  #[test]
  fn coprime_diagonal_merges() {
    // diag(t - 1, t) ~ diag(1, t(t - 1))
    let m = pm(&[&[&[-1, 1], &[]], &[&[], &[0, 1]]]);
    assert_eq!(smith_normal_form_poly(&m), vec![Poly::one(), Poly::from_ints(&[0, -1, 1])]);
  }

  #[test]
  fn singular_and_rectangular() {
    let m = pm(&[&[&[0, 1], &[0, 2]], &[&[0, 2], &[0, 4]], &[&[], &[]]]);
    assert_eq!(smith_normal_form_poly(&m), vec![Poly::t()]);
    assert!(smith_normal_form_poly(&SparseMatrix::zero(2, 3)).is_empty());
  }
}
