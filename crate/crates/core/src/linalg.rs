//! Canonical exact linear algebra over ℚ(ζ_n).
//!
//! Subspaces of the function space on a finite point set are stored as
//! reduced row-echelon bases with leading coefficient 1 — a canonical
//! representative of the row space, so two spanning sets of the same space
//! yield identical bases.  Pivots are chosen on the first nonzero column
//! scanning left to right, ties broken by row order.
//!
//! Also provides kernels of constraint matrices, containment / equality
//! classification of subspace pairs, and a streaming-column rank accumulator
//! with early termination for the restriction-surjectivity sweeps.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::cyclo::{common_field, CycField, CycNumber};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    /// Subspace comparison requires both bases to live on the same ordered
    /// point list.
    AmbientMismatch,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::AmbientMismatch => write!(f, "subspaces live on different point lists"),
        }
    }
}

/// An ordered point list: strictly increasing canonical keys.  The position
/// of a key in the list is its coordinate index in every function vector and
/// basis row over the ambient.
#[derive(Debug, PartialEq, Eq)]
pub struct PointList {
    keys: Vec<u64>,
}

impl PointList {
    pub fn new(keys: Vec<u64>) -> Arc<PointList> {
        debug_assert!(keys.windows(2).all(|w| w[0] < w[1]), "point keys must be strictly increasing");
        Arc::new(PointList { keys })
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    pub fn key(&self, pos: usize) -> u64 {
        self.keys[pos]
    }

    pub fn position(&self, key: u64) -> Option<usize> {
        self.keys.binary_search(&key).ok()
    }

    pub fn same_points(a: &Arc<PointList>, b: &Arc<PointList>) -> bool {
        Arc::ptr_eq(a, b) || a.keys == b.keys
    }
}

/// Outcome of comparing two subspaces of the same ambient space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceRelation {
    Equal,
    FirstInSecond,
    SecondInFirst,
    Incomparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubspaceComparison {
    pub relation: SubspaceRelation,
    pub dim_first: usize,
    pub dim_second: usize,
    pub dim_intersection: usize,
}

/// A subspace in canonical reduced row-echelon form.  `rank == rows.len()`
/// always holds: echelonization discards zero rows.
pub struct SubspaceBasis {
    points: Arc<PointList>,
    ring: Arc<CycField>,
    rows: Vec<Vec<CycNumber>>,
}

/// target -= factor * source, skipping zero source entries.
fn row_axpy(target: &mut [CycNumber], factor: &CycNumber, source: &[CycNumber]) {
    for (t, s) in target.iter_mut().zip(source) {
        if s.is_zero() {
            continue;
        }
        *t = &*t - &(factor * s);
    }
}

/// In-place reduced row echelon form; returns the pivot column of each
/// surviving row.  Zero rows are removed.
fn rref(rows: &mut Vec<Vec<CycNumber>>) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut next_row = 0usize;
    for col in 0..ncols {
        if next_row == nrows {
            break;
        }
        let Some(pivot_row) = (next_row..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, pivot_row);
        let inv = rows[next_row][col].inv().expect("pivot is nonzero");
        if !rows[next_row][col].is_one() {
            for entry in rows[next_row].iter_mut().skip(col) {
                if !entry.is_zero() {
                    *entry = &*entry * &inv;
                }
            }
        }
        let (head, tail) = rows.split_at_mut(next_row);
        let (pivot, below) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(below.iter_mut()) {
            if other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            row_axpy(other, &factor, pivot);
        }
        pivots.push(col);
        next_row += 1;
    }
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    debug_assert_eq!(rows.len(), pivots.len());
    pivots
}

impl SubspaceBasis {
    /// Canonical basis of the row space of the given rows.
    pub fn echelonize(
        points: Arc<PointList>,
        ring: Arc<CycField>,
        mut rows: Vec<Vec<CycNumber>>,
    ) -> SubspaceBasis {
        debug_assert!(rows.iter().all(|r| r.len() == points.len()));
        rref(&mut rows);
        SubspaceBasis { points, ring, rows }
    }

    /// Canonical basis of {f : M f = 0} for a constraint matrix M given by
    /// rows over the ambient.  dim = |ambient| − rank M.
    pub fn kernel(
        points: Arc<PointList>,
        ring: Arc<CycField>,
        constraints: Vec<Vec<CycNumber>>,
    ) -> SubspaceBasis {
        let n = points.len();
        let mut m = constraints;
        let pivot_cols = rref(&mut m);
        let mut is_pivot = alloc::vec![false; n];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut rows = Vec::with_capacity(n - pivot_cols.len());
        for free in 0..n {
            if is_pivot[free] {
                continue;
            }
            let mut v = alloc::vec![ring.zero(); n];
            v[free] = ring.one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                if !m[r][free].is_zero() {
                    v[pc] = -&m[r][free];
                }
            }
            rows.push(v);
        }
        // The free-column vectors are independent by construction; a final
        // echelon pass brings them to the canonical representative.
        Self::echelonize(points, ring, rows)
    }

    /// Full function space on the points.
    pub fn full(points: Arc<PointList>, ring: Arc<CycField>) -> SubspaceBasis {
        let n = points.len();
        let rows = (0..n)
            .map(|i| {
                let mut v = alloc::vec![ring.zero(); n];
                v[i] = ring.one();
                v
            })
            .collect();
        SubspaceBasis { points, ring, rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<CycNumber>] {
        &self.rows
    }

    pub fn points(&self) -> &Arc<PointList> {
        &self.points
    }

    pub fn ring(&self) -> &Arc<CycField> {
        &self.ring
    }

    /// Membership test: reduce v by the echelon rows and check the remainder
    /// vanishes.
    pub fn contains_vector(&self, v: &[CycNumber]) -> bool {
        debug_assert_eq!(v.len(), self.points.len());
        let mut rem: Vec<CycNumber> = v.to_vec();
        for row in &self.rows {
            let lead = row.iter().position(|c| !c.is_zero()).unwrap();
            if rem[lead].is_zero() {
                continue;
            }
            let factor = rem[lead].clone();
            row_axpy(&mut rem, &factor, row);
        }
        rem.iter().all(|c| c.is_zero())
    }

    fn rows_in_ring(&self, ring: &Arc<CycField>) -> Vec<Vec<CycNumber>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|c| c.embed(ring).expect("ring lift")).collect())
            .collect()
    }

    /// Containment / equality classification with exact dimensions;
    /// dim(A ∩ B) = dim A + dim B − rank[A; B].
    pub fn compare(&self, other: &SubspaceBasis) -> Result<SubspaceComparison, LinalgError> {
        if !PointList::same_points(&self.points, &other.points) {
            return Err(LinalgError::AmbientMismatch);
        }
        let ring = common_field(&self.ring, &other.ring).expect("conductor lcm within bound");
        let mut stacked = self.rows_in_ring(&ring);
        stacked.extend(other.rows_in_ring(&ring));
        let rank_union = rref(&mut stacked).len();
        let dim_first = self.dim();
        let dim_second = other.dim();
        let dim_intersection = dim_first + dim_second - rank_union;
        let relation = match (rank_union == dim_second, rank_union == dim_first) {
            (true, true) => SubspaceRelation::Equal,
            (true, false) => SubspaceRelation::FirstInSecond,
            (false, true) => SubspaceRelation::SecondInFirst,
            (false, false) => SubspaceRelation::Incomparable,
        };
        Ok(SubspaceComparison { relation, dim_first, dim_second, dim_intersection })
    }
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SubspaceBasis(dim={}, ambient={}, ring={:?})",
            self.dim(),
            self.points.len(),
            self.ring
        )
    }
}

/// Streaming-column exact rank with early termination: columns are reduced
/// against the stored pivot columns in arrival order; the achieved rank is
/// order-independent even though the stored pivots are not.
pub struct StreamingRank {
    nrows: usize,
    target: usize,
    /// (pivot row, column normalized to 1 at the pivot row).
    pivots: Vec<(usize, Vec<CycNumber>)>,
}

impl StreamingRank {
    pub fn new(nrows: usize) -> StreamingRank {
        StreamingRank { nrows, target: nrows, pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// True once the rank has reached the row count; callers stop streaming.
    pub fn saturated(&self) -> bool {
        self.pivots.len() == self.target
    }

    /// Reduce and possibly absorb one column; returns the rank afterwards.
    pub fn push_column(&mut self, mut col: Vec<CycNumber>) -> usize {
        debug_assert_eq!(col.len(), self.nrows);
        if self.saturated() {
            return self.rank();
        }
        for (prow, pcol) in &self.pivots {
            if col[*prow].is_zero() {
                continue;
            }
            let factor = col[*prow].clone();
            row_axpy(&mut col, &factor, pcol);
        }
        if let Some(lead) = col.iter().position(|c| !c.is_zero()) {
            let inv = col[lead].inv().expect("nonzero leading entry");
            for c in col.iter_mut() {
                if !c.is_zero() {
                    *c = &*c * &inv;
                }
            }
            self.pivots.push((lead, col));
        }
        self.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycField;
    use alloc::vec;

    fn rat_rows(points: &Arc<PointList>, data: &[&[i64]]) -> (Arc<CycField>, Vec<Vec<CycNumber>>) {
        let ring = CycField::rationals();
        let rows = data
            .iter()
            .map(|r| {
                assert_eq!(r.len(), points.len());
                r.iter().map(|&x| ring.from_int(x)).collect()
            })
            .collect();
        (ring, rows)
    }

    #[test]
    fn dependent_rows_collapse() {
        let pts = PointList::new(vec![0, 1]);
        let (ring, rows) = rat_rows(&pts, &[&[1, 1], &[2, 2]]);
        let b = SubspaceBasis::echelonize(pts, ring, rows);
        assert_eq!(b.dim(), 1);
        assert!(b.rows()[0][0].is_one());
        assert!(b.rows()[0][1].is_one());
    }

    #[test]
    fn identity_is_fixed() {
        let pts = PointList::new(vec![0, 1, 2]);
        let (ring, rows) = rat_rows(&pts, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let b = SubspaceBasis::echelonize(pts, ring, rows);
        assert_eq!(b.dim(), 3);
        for (i, row) in b.rows().iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                assert_eq!(c.is_one(), i == j);
                assert_eq!(c.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn cyclotomic_dependence_detected() {
        // Rows [zeta_3, 1] and [1, zeta_3^2] span a single line because
        // zeta_3 * zeta_3^2 = 1.
        let f3 = CycField::new(3).unwrap();
        let pts = PointList::new(vec![0, 1]);
        let rows = vec![
            vec![f3.root_of_unity(1), f3.one()],
            vec![f3.one(), f3.root_of_unity(2)],
        ];
        let b = SubspaceBasis::echelonize(pts, f3, rows);
        assert_eq!(b.dim(), 1);
    }

    #[test]
    fn kernel_of_sum_constraint() {
        let pts = PointList::new(vec![0, 1, 2]);
        let (ring, rows) = rat_rows(&pts, &[&[1, 1, 1]]);
        let k = SubspaceBasis::kernel(pts.clone(), ring.clone(), rows);
        assert_eq!(k.dim(), 2);
        // Every kernel row satisfies the constraint.
        for row in k.rows() {
            let sum = row.iter().fold(ring.zero(), |acc, c| &acc + c);
            assert!(sum.is_zero());
        }
        // Kernel of the empty constraint set is the full space.
        let full = SubspaceBasis::kernel(pts.clone(), ring.clone(), Vec::new());
        assert_eq!(full.dim(), 3);
        let explicit_full = SubspaceBasis::full(pts, ring);
        assert_eq!(
            full.compare(&explicit_full).unwrap().relation,
            SubspaceRelation::Equal
        );
    }

    #[test]
    fn comparison_classifications() {
        let pts = PointList::new(vec![0, 1]);
        let ring = CycField::rationals();
        let line_a = SubspaceBasis::echelonize(
            pts.clone(),
            ring.clone(),
            vec![vec![ring.one(), ring.one()]],
        );
        let line_a2 = SubspaceBasis::echelonize(
            pts.clone(),
            ring.clone(),
            vec![vec![ring.from_int(3), ring.from_int(3)]],
        );
        assert_eq!(line_a.compare(&line_a2).unwrap().relation, SubspaceRelation::Equal);

        let e0 = SubspaceBasis::echelonize(
            pts.clone(),
            ring.clone(),
            vec![vec![ring.one(), ring.zero()]],
        );
        let e1 = SubspaceBasis::echelonize(
            pts.clone(),
            ring.clone(),
            vec![vec![ring.zero(), ring.one()]],
        );
        let full = SubspaceBasis::full(pts.clone(), ring.clone());
        let cmp = e0.compare(&full).unwrap();
        assert_eq!(cmp.relation, SubspaceRelation::FirstInSecond);
        assert_eq!((cmp.dim_first, cmp.dim_second), (1, 2));
        let cmp = e0.compare(&e1).unwrap();
        assert_eq!(cmp.relation, SubspaceRelation::Incomparable);
        assert_eq!(cmp.dim_intersection, 0);

        let other_pts = PointList::new(vec![0, 5]);
        let other = SubspaceBasis::full(other_pts, ring);
        assert_eq!(e0.compare(&other).unwrap_err(), LinalgError::AmbientMismatch);
    }

    #[test]
    fn streaming_rank_matches_batch_rank() {
        let ring = CycField::rationals();
        let cols: Vec<Vec<i64>> = vec![
            vec![1, 0, 1],
            vec![2, 0, 2], // dependent
            vec![0, 1, 1],
            vec![1, 1, 2], // dependent on the first and third
            vec![0, 0, 1],
        ];
        let mut sr = StreamingRank::new(3);
        let mut ranks = Vec::new();
        for c in &cols {
            let col = c.iter().map(|&x| ring.from_int(x)).collect();
            ranks.push(sr.push_column(col));
        }
        assert_eq!(ranks, vec![1, 1, 2, 2, 3]);
        assert!(sr.saturated());
        // Saturated accumulator ignores further columns.
        assert_eq!(sr.push_column(vec![ring.one(), ring.one(), ring.one()]), 3);
    }
}
