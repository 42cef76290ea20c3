use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::mixed::{MixedComplexMap, MixedPiece, Weight};
use crate::qlinalg::{SparseMatrix, Q};

use super::split::direct_sum;
use super::tot::{tot_d, tot_fs, z2_d, z2_f};
use super::{periodic, stacked_rank, truncated_top, HPReport, HomologyError};

/// Ranks of the map induced on periodic cyclic homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HpMapReport {
  pub name:      String,
  pub source:    HPReport,
  pub target:    HPReport,
  pub rank_even: usize,
  pub rank_odd:  usize,
  pub is_iso:    bool,
}

/// Group of source and target weights linked by nonzero blocks of the map.
struct Group {
  source: Vec<Weight>,
  target: Vec<Weight>,
}

fn groups(f: &MixedComplexMap) -> Vec<Group> {
  // union-find over tagged weights: (false, w) source, (true, w) target
  let nodes: Vec<(bool, Weight)> = f
    .source
    .pieces
    .keys()
    .map(|w| (false, w.clone()))
    .chain(f.target.pieces.keys().map(|w| (true, w.clone())))
    .collect();
  let pos: HashMap<&(bool, Weight), usize> = nodes.iter().enumerate().map(|(i, n)| (n, i)).collect();
  let mut parent: Vec<usize> = (0..nodes.len()).collect();
  fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
      x = p[x];
    }
    x
  }
  for (ws, wt) in f.blocks.keys() {
    let (a, b) = (pos[&(false, ws.clone())], pos[&(true, wt.clone())]);
    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
    parent[ra.max(rb)] = ra.min(rb);
  }
  let mut by_root: BTreeMap<usize, Group> = BTreeMap::new();
  for (i, (is_target, w)) in nodes.iter().enumerate() {
    let r = find(&mut parent, i);
    let g = by_root.entry(r).or_insert(Group { source: Vec::new(), target: Vec::new() });
    if *is_target {
      g.target.push(w.clone());
    } else {
      g.source.push(w.clone());
    }
  }
  by_root.into_values().filter(|g| !g.source.is_empty() && !g.target.is_empty()).collect()
}

/// Degreewise matrix of the map on the direct sums of a group's pieces.
fn group_map(f: &MixedComplexMap, g: &Group, n: i64) -> SparseMatrix<Q> {
  let rows: usize = g.target.iter().map(|w| f.target.pieces[w].dim(n)).sum();
  let mut columns = Vec::new();
  for ws in &g.source {
    let cols = f.source.pieces[ws].dim(n);
    let mut block_cols: Vec<Vec<(usize, Q)>> = vec![Vec::new(); cols];
    let mut roff = 0;
    for wt in &g.target {
      if let Some(m) = f.blocks.get(&(ws.clone(), wt.clone())).and_then(|b| b.get(&n)) {
        for (j, col) in m.columns().iter().enumerate() {
          block_cols[j].extend(col.iter().map(|(r, v)| (roff + r, v.clone())));
        }
      }
      roff += f.target.pieces[wt].dim(n);
    }
    columns.extend(block_cols);
  }
  SparseMatrix::from_columns(rows, columns)
}

/// Ranks of the map induced on HP by `f`, with `columns` bicomplex columns on both sides.
///
/// Both ends must be stabilized. Bounded groups are handled on the two-periodic complex;
/// truncated ones through `F∘S: HC_m → HC_{m−2}`, whose image is the image of `HP` under `F`.
pub fn hp_of_map(f: &MixedComplexMap, columns: usize) -> Result<HpMapReport, HomologyError> {
  let source = periodic(&f.source, columns)?;
  let target = periodic(&f.target, columns)?;
  for (which, r) in [("source", &source), ("target", &target)] {
    if !r.stabilized {
      return Err(HomologyError::NotStabilized(format!("{which} of {}", f.name)));
    }
  }
  let mut ranks = [0usize; 2];
  for g in groups(f) {
    let sp: Vec<&MixedPiece> = g.source.iter().map(|w| &f.source.pieces[w]).collect();
    let tp: Vec<&MixedPiece> = g.target.iter().map(|w| &f.target.pieces[w]).collect();
    let kinds: BTreeSet<bool> = sp.iter().chain(&tp).map(|p| p.bounded()).collect();
    if kinds.len() > 1 {
      let names: Vec<String> = g.source.iter().chain(&g.target).map(Weight::to_string).collect();
      return Err(HomologyError::MixedBoundedness(names.join(", ")));
    }
    let s = direct_sum(&sp);
    let t = direct_sum(&tp);
    let fmap = |n: i64| group_map(f, &g, n);
    for parity in 0..2i64 {
      let r = if s.bounded() {
        let fm = z2_f(&s, &t, &fmap, parity);
        stacked_rank(&z2_d(&s, parity), &fm, &z2_d(&t, 1 - parity))
          - z2_d(&s, parity).rank()
          - z2_d(&t, 1 - parity).rank()
      } else {
        let m = truncated_top(&s, parity, columns).min(truncated_top(&t, parity, columns));
        let d_s = tot_d(&s, m, columns);
        let d_t = tot_d(&t, m - 1, columns);
        let fs = tot_fs(&s, &t, &fmap, m, columns);
        stacked_rank(&d_s, &fs, &d_t) - d_s.rank() - d_t.rank()
      };
      ranks[parity as usize] += r;
    }
  }
  let is_iso = ranks[0] == source.even_dim
    && ranks[0] == target.even_dim
    && ranks[1] == source.odd_dim
    && ranks[1] == target.odd_dim;
  Ok(HpMapReport { name: f.name.clone(), source, target, rank_even: ranks[0], rank_odd: ranks[1], is_iso })
}
