use std::collections::HashMap;
use std::fmt::Debug;

use super::poly::Poly;
use super::rational::Q;
use super::LinalgError;

/// Commutative ring operations needed by [`SparseMatrix`].
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
  fn zero() -> Self;
  fn one() -> Self;
  fn is_zero(&self) -> bool;
  fn add(&self, other: &Self) -> Self;
  fn mul(&self, other: &Self) -> Self;
  fn neg(&self) -> Self;
  fn sub(&self, other: &Self) -> Self { self.add(&other.neg()) }
}

impl Ring for Q {
  fn zero() -> Self { Q::zero() }

  fn one() -> Self { Q::one() }

  fn is_zero(&self) -> bool { Q::is_zero(self) }

  fn add(&self, other: &Self) -> Self { Q::add(self, other) }

  fn mul(&self, other: &Self) -> Self { Q::mul(self, other) }

  fn neg(&self) -> Self { Q::neg(self) }
}

impl Ring for Poly {
  fn zero() -> Self { Poly::zero() }

  fn one() -> Self { Poly::one() }

  fn is_zero(&self) -> bool { Poly::is_zero(self) }

  fn add(&self, other: &Self) -> Self { Poly::add(self, other) }

  fn mul(&self, other: &Self) -> Self { Poly::mul(self, other) }

  fn neg(&self) -> Self { Poly::neg(self) }
}

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<T> = Vec<(usize, T)>;

/// `a + c·b` for sorted sparse vectors.
pub fn axpy<T: Ring>(a: &[(usize, T)], c: &T, b: &[(usize, T)]) -> SparseVec<T> {
  let mut out = Vec::with_capacity(a.len() + b.len());
  let (mut i, mut j) = (0, 0);
  while i < a.len() || j < b.len() {
    let ai = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
    let bj = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
    if ai < bj {
      out.push(a[i].clone());
      i += 1;
    } else if bj < ai {
      let v = c.mul(&b[j].1);
      if !v.is_zero() {
        out.push((bj, v));
      }
      j += 1;
    } else {
      let v = a[i].1.add(&c.mul(&b[j].1));
      if !v.is_zero() {
        out.push((ai, v));
      }
      i += 1;
      j += 1;
    }
  }
  out
}

/// Collects unsorted `(index, value)` pairs into a sparse vector, summing duplicates.
pub fn collect_sparse<T: Ring>(mut entries: Vec<(usize, T)>) -> SparseVec<T> {
  entries.sort_by_key(|e| e.0);
  let mut out: SparseVec<T> = Vec::with_capacity(entries.len());
  for (i, v) in entries {
    match out.last_mut() {
      Some((j, acc)) if *j == i => *acc = acc.add(&v),
      _ => out.push((i, v)),
    }
  }
  out.retain(|e| !e.1.is_zero());
  out
}

/// Column-major sparse matrix. Column `j` is the image of the `j`-th source basis vector, so a
/// matrix with `rows = dim target` and `cols = dim source` represents a linear map.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
  rows:    usize,
  cols:    usize,
  columns: Vec<SparseVec<T>>,
}

impl<T: Ring> SparseMatrix<T> {
  pub fn zero(rows: usize, cols: usize) -> Self {
    SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
  }

  pub fn identity(n: usize) -> Self {
    SparseMatrix { rows: n, cols: n, columns: (0..n).map(|i| vec![(i, T::one())]).collect() }
  }

  /// Builds from columns given as (possibly unsorted, possibly duplicated) entry lists.
  pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, T)>>) -> Self {
    let cols = columns.len();
    let columns: Vec<SparseVec<T>> = columns.into_iter().map(collect_sparse).collect();
    debug_assert!(columns.iter().flatten().all(|(r, _)| *r < rows));
    SparseMatrix { rows, cols, columns }
  }

  pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
    let mut columns: Vec<Vec<(usize, T)>> = vec![Vec::new(); cols];
    for (r, c, v) in entries {
      assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
      columns[c].push((r, v));
    }
    Self::from_columns(rows, columns)
  }

  /// Row-major dense input.
  pub fn from_dense(rows: &[Vec<T>]) -> Self {
    let nrows = rows.len();
    let ncols = rows.first().map(Vec::len).unwrap_or(0);
    let mut columns = vec![Vec::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
      assert_eq!(row.len(), ncols, "ragged dense matrix");
      for (c, v) in row.iter().enumerate() {
        if !v.is_zero() {
          columns[c].push((r, v.clone()));
        }
      }
    }
    SparseMatrix { rows: nrows, cols: ncols, columns }
  }

  pub fn rows(&self) -> usize { self.rows }

  pub fn cols(&self) -> usize { self.cols }

  pub fn column(&self, j: usize) -> &[(usize, T)] { &self.columns[j] }

  pub fn columns(&self) -> &[SparseVec<T>] { &self.columns }

  pub fn nnz(&self) -> usize { self.columns.iter().map(Vec::len).sum() }

  pub fn is_zero(&self) -> bool { self.columns.iter().all(Vec::is_empty) }

  pub fn get(&self, r: usize, c: usize) -> T {
    match self.columns[c].binary_search_by_key(&r, |e| e.0) {
      Ok(k) => self.columns[c][k].1.clone(),
      Err(_) => T::zero(),
    }
  }

  pub fn to_dense(&self) -> Vec<Vec<T>> {
    let mut out = vec![vec![T::zero(); self.cols]; self.rows];
    for (c, col) in self.columns.iter().enumerate() {
      for (r, v) in col {
        out[*r][c] = v.clone();
      }
    }
    out
  }

  pub fn transpose(&self) -> Self {
    let mut columns: Vec<SparseVec<T>> = vec![Vec::new(); self.rows];
    for (c, col) in self.columns.iter().enumerate() {
      for (r, v) in col {
        columns[*r].push((c, v.clone()));
      }
    }
    SparseMatrix { rows: self.cols, cols: self.rows, columns }
  }

  /// Matrix product `self · rhs` (apply `rhs` first).
  pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
    if self.cols != rhs.rows {
      return Err(LinalgError::ShapeMismatch {
        op:    "mul",
        left:  (self.rows, self.cols),
        right: (rhs.rows, rhs.cols),
      });
    }
    let columns = rhs
      .columns
      .iter()
      .map(|col| {
        let mut acc: Vec<(usize, T)> = Vec::new();
        for (k, v) in col {
          for (r, a) in &self.columns[*k] {
            acc.push((*r, a.mul(v)));
          }
        }
        collect_sparse(acc)
      })
      .collect();
    Ok(SparseMatrix { rows: self.rows, cols: rhs.cols, columns })
  }

  pub fn add(&self, rhs: &Self) -> Result<Self, LinalgError> {
    if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
      return Err(LinalgError::ShapeMismatch {
        op:    "add",
        left:  (self.rows, self.cols),
        right: (rhs.rows, rhs.cols),
      });
    }
    let one = T::one();
    let columns = self.columns.iter().zip(&rhs.columns).map(|(a, b)| axpy(a, &one, b)).collect();
    Ok(SparseMatrix { rows: self.rows, cols: self.cols, columns })
  }

  pub fn scale(&self, c: &T) -> Self {
    let columns = self
      .columns
      .iter()
      .map(|col| col.iter().map(|(r, v)| (*r, v.mul(c))).filter(|e| !e.1.is_zero()).collect())
      .collect();
    SparseMatrix { rows: self.rows, cols: self.cols, columns }
  }

  pub fn neg(&self) -> Self { self.scale(&T::one().neg()) }

  /// Restriction to a subset of source and target basis vectors (both given as sorted index
  /// lists); entries outside `row_set` are dropped.
  pub fn submatrix(&self, row_set: &[usize], col_set: &[usize]) -> Self {
    let mut row_pos = HashMap::with_capacity(row_set.len());
    for (k, r) in row_set.iter().enumerate() {
      row_pos.insert(*r, k);
    }
    let columns = col_set
      .iter()
      .map(|&c| {
        self.columns[c].iter().filter_map(|(r, v)| row_pos.get(r).map(|&k| (k, v.clone()))).collect()
      })
      .collect();
    SparseMatrix { rows: row_set.len(), cols: col_set.len(), columns }
  }
}

/// Assembles a block matrix. `blocks[i][j]` maps source block `j` into target block `i`;
/// `None` is a zero block. Block shapes are taken from `row_dims` / `col_dims`.
pub fn block_matrix<T: Ring>(
  row_dims: &[usize],
  col_dims: &[usize],
  blocks: &[Vec<Option<&SparseMatrix<T>>>],
) -> Result<SparseMatrix<T>, LinalgError> {
  let row_off: Vec<usize> = offsets(row_dims);
  let col_off: Vec<usize> = offsets(col_dims);
  let rows = row_dims.iter().sum();
  let cols = col_dims.iter().sum();
  let mut columns: Vec<SparseVec<T>> = vec![Vec::new(); cols];
  for (bi, brow) in blocks.iter().enumerate() {
    for (bj, blk) in brow.iter().enumerate() {
      let Some(m) = blk else { continue };
      if (m.rows, m.cols) != (row_dims[bi], col_dims[bj]) {
        return Err(LinalgError::ShapeMismatch {
          op:    "block",
          left:  (row_dims[bi], col_dims[bj]),
          right: (m.rows, m.cols),
        });
      }
      for (c, col) in m.columns.iter().enumerate() {
        columns[col_off[bj] + c].extend(col.iter().map(|(r, v)| (row_off[bi] + r, v.clone())));
      }
    }
  }
  // Blocks were appended in increasing block-row order, so each column is already sorted.
  Ok(SparseMatrix { rows, cols, columns })
}

fn offsets(dims: &[usize]) -> Vec<usize> {
  let mut acc = 0;
  dims
    .iter()
    .map(|d| {
      let o = acc;
      acc += d;
      o
    })
    .collect()
}

impl SparseMatrix<Q> {
  /// Rank over ℚ by sparse Gaussian elimination with exact arithmetic.
  ///
  /// Vectors are reduced one at a time against a pivot table keyed by leading index. The
  /// orientation with fewer vectors is used (rank is transpose invariant) and vectors are fed
  /// sparsest first to limit fill-in.
  pub fn rank(&self) -> usize {
    if self.cols > self.rows {
      return self.transpose().rank();
    }
    let mut vecs: Vec<&SparseVec<Q>> = self.columns.iter().filter(|c| !c.is_empty()).collect();
    vecs.sort_by_key(|v| v.len());
    let mut pivots: HashMap<usize, SparseVec<Q>> = HashMap::new();
    for v in vecs {
      let mut v: SparseVec<Q> = v.clone();
      while let Some((lead, c)) = v.first().cloned() {
        match pivots.get(&lead) {
          Some(p) => v = axpy(&v, &c.neg(), p),
          None => {
            let inv = c.recip();
            let normalized = v.iter().map(|(i, x)| (*i, x.mul(&inv))).collect();
            pivots.insert(lead, normalized);
            break;
          },
        }
      }
    }
    pivots.len()
  }
}

/// `dim ker(d_out) − rank(d_in)` for `X --d_in--> Y --d_out--> Z`.
pub fn homology_dim(d_in: &SparseMatrix<Q>, d_out: &SparseMatrix<Q>) -> Result<usize, LinalgError> {
  if d_in.rows() != d_out.cols() {
    return Err(LinalgError::ShapeMismatch {
      op:    "homology",
      left:  (d_out.rows(), d_out.cols()),
      right: (d_in.rows(), d_in.cols()),
    });
  }
  if !d_out.mul(d_in)?.is_zero() {
    return Err(LinalgError::CompositionNonzero);
  }
  Ok(d_out.cols() - d_out.rank() - d_in.rank())
}

/// Rank of the map induced on homology by `f`.
///
/// `cycle_test: X → X'` cuts out the cycles of the source, `f: X → Y` is the chain-level map,
/// and `boundaries: W → Y` spans the boundaries of the target. The result is
/// `dim (f(ker cycle_test) + im boundaries) − dim im boundaries`, computed through ranks only:
/// `rank [[cycle_test, 0], [f, boundaries]] − rank cycle_test − rank boundaries`.
pub fn induced_homology_rank(
  cycle_test: &SparseMatrix<Q>,
  f: &SparseMatrix<Q>,
  boundaries: &SparseMatrix<Q>,
) -> Result<usize, LinalgError> {
  let stacked = block_matrix(
    &[cycle_test.rows(), f.rows()],
    &[f.cols(), boundaries.cols()],
    &[vec![Some(cycle_test), None], vec![Some(f), Some(boundaries)]],
  )?;
  Ok(stacked.rank() - cycle_test.rank() - boundaries.rank())
}

#[cfg(test)]
mod tests {
  use super::*;

  fn qm(rows: &[&[i64]]) -> SparseMatrix<Q> {
    SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| Q::from_int(x)).collect()).collect::<Vec<_>>())
  }

  #[test]
  fn rank_examples() {
    assert_eq!(SparseMatrix::<Q>::identity(2).rank(), 2);
    assert_eq!(SparseMatrix::<Q>::zero(3, 5).rank(), 0);
    assert_eq!(qm(&[&[1, 2], &[2, 4]]).rank(), 1);
    assert_eq!(qm(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).rank(), 2);
  }

  #[test]
  fn homology_examples() {
    // zero differentials into Q^2
    let d_in = SparseMatrix::<Q>::zero(2, 0);
    let d_out = SparseMatrix::<Q>::zero(0, 2);
    assert_eq!(homology_dim(&d_in, &d_out).unwrap(), 2);
    // Q -> Q^2 -> Q exact
    let d_in = qm(&[&[1], &[0]]);
    let d_out = qm(&[&[0, 1]]);
    assert_eq!(homology_dim(&d_in, &d_out).unwrap(), 0);
    // multiplication by zero on Q^3
    let z = SparseMatrix::<Q>::zero(3, 3);
    assert_eq!(homology_dim(&z, &z).unwrap(), 3);
  }

  #[test]
  fn homology_rejects_non_complex() {
    let d = SparseMatrix::<Q>::identity(2);
    assert_eq!(homology_dim(&d, &d), Err(LinalgError::CompositionNonzero));
  }

  #[test]
  fn block_and_submatrix() {
    let a = qm(&[&[1, 2]]);
    let b = qm(&[&[3]]);
    let m = block_matrix(&[1, 1], &[2, 1], &[vec![Some(&a), None], vec![None, Some(&b)]]).unwrap();
    assert_eq!(m.to_dense(), qm(&[&[1, 2, 0], &[0, 0, 3]]).to_dense());
    let s = m.submatrix(&[1], &[1, 2]);
    assert_eq!(s.to_dense(), qm(&[&[0, 3]]).to_dense());
  }

  #[test]
  fn induced_rank_of_identity_and_zero() {
    // complex 0 -> Q -> 0 with the identity map: rank 1
    let cyc = SparseMatrix::<Q>::zero(0, 1);
    let bnd = SparseMatrix::<Q>::zero(1, 0);
    assert_eq!(induced_homology_rank(&cyc, &SparseMatrix::identity(1), &bnd).unwrap(), 1);
    assert_eq!(induced_homology_rank(&cyc, &SparseMatrix::zero(1, 1), &bnd).unwrap(), 0);
    // target class is a boundary: rank 0
    let bnd = SparseMatrix::<Q>::identity(1);
    assert_eq!(induced_homology_rank(&cyc, &SparseMatrix::identity(1), &bnd).unwrap(), 0);
  }
}
