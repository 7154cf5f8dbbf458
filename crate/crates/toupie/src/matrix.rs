//! Dense exact-rational matrices with the elimination routines the rest of
//! the crate relies on: RREF, rank, kernel and image bases, and exact solves.
//!
//! Sizes here are desk-scale (cochain spaces of small quivers), so a dense
//! `Vec<Vec<Rat>>` representation is the right trade-off.

use num_traits::{One, Zero};

use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rat>>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![vec![Rat::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i][i] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged rows");
        }
        RationalMatrix {
            rows: nrows,
            cols: ncols,
            data: rows,
        }
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Rat>]) -> Self {
        let ncols = cols.len();
        let nrows = cols.first().map_or(0, Vec::len);
        let mut m = Self::zero(nrows, ncols);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows, "ragged columns");
            for (i, v) in c.iter().enumerate() {
                m.data[i][j] = v.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.data[i][j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Rat::is_zero))
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut acc = Rat::zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul_mat(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RationalMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.rows, other.rows);
        let mut data = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = self.data[i].clone();
            row.extend(other.data[i].iter().cloned());
            data.push(row);
        }
        RationalMatrix::from_rows(data)
    }

    /// In-place reduced row echelon form. Returns the pivot columns in order.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.data[r][col].is_zero()) else {
                continue;
            };
            self.data.swap(row, p);
            let inv = {
                let pv = self.data[row][col].clone();
                pv.recip()
            };
            for v in self.data[row].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            for r in 0..self.rows {
                if r != row && !self.data[r][col].is_zero() {
                    let factor = self.data[r][col].clone();
                    for c in 0..self.cols {
                        let sub = &self.data[row][c] * &factor;
                        self.data[r][c] -= sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// RREF of a copy, with the pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place();
        (m, piv)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space (as column vectors of length `ncols`).
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row_idx, &c) in pivots.iter().enumerate() {
                v[c] = Some(row_idx);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Rat::zero(); self.cols];
            vec[free] = Rat::one();
            for (row_idx, &pc) in pivots.iter().enumerate() {
                vec[pc] = -r.data[row_idx][free].clone();
            }
            basis.push(vec);
        }
        basis
    }

    /// Columns of `self` forming a basis of the column space.
    pub fn image_basis(&self) -> Vec<Vec<Rat>> {
        let mut transposed_rows: Vec<Vec<Rat>> = Vec::with_capacity(self.cols);
        for j in 0..self.cols {
            transposed_rows.push(self.col(j));
        }
        let (_, pivots) = RationalMatrix::from_rows(
            (0..self.rows).map(|i| self.data[i].clone()).collect(),
        )
        .rref();
        pivots.into_iter().map(|c| self.col(c)).collect()
    }

    /// Solves `self * x = b`; `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let rhs = RationalMatrix::from_cols(&[b.to_vec()]);
        let aug = self.hstack(&rhs);
        let (r, pivots) = aug.rref();
        // A pivot in the last column means no solution.
        if pivots.iter().any(|&c| c == self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row_idx, &pc) in pivots.iter().enumerate() {
            x[pc] = r.data[row_idx][self.cols].clone();
        }
        Some(x)
    }

    /// Whether `b` lies in the column space of `self`.
    pub fn contains_in_image(&self, b: &[Rat]) -> bool {
        self.solve(b).is_some()
    }
}

/// Rank of the span of a list of vectors.
pub fn span_rank(vectors: &[Vec<Rat>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RationalMatrix::from_rows(vectors.to_vec()).rank()
}

/// Whether two lists of vectors span the same subspace.
pub fn same_span(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> bool {
    let ra = span_rank(a);
    let rb = span_rank(b);
    if ra != rb {
        return false;
    }
    let mut all: Vec<Vec<Rat>> = a.to_vec();
    all.extend(b.iter().cloned());
    span_rank(&all) == ra
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_already_reduced() {
        let (r, piv) = m(&[&[1, -1]]).rref();
        assert_eq!(r, m(&[&[1, -1]]));
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn rref_two_rows() {
        let (r, piv) = m(&[&[2, -2, 0], &[0, 1, -1]]).rref();
        assert_eq!(r, m(&[&[1, 0, -1], &[0, 1, -1]]));
        assert_eq!(piv.len(), 2);
    }

    #[test]
    fn rref_dependent_rows_drop_to_zero() {
        let (r, piv) = m(&[&[1, -1], &[2, -2]]).rref();
        assert_eq!(piv.len(), 1);
        assert!(r.row(1).iter().all(Rat::is_zero));
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(&[&[1, 0, -1], &[0, 1, -1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[0, 1], &[1, 0]]);
        let b = vec![rat(3), rat(2), rat(1)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let bad = vec![rat(1), rat(1), rat(1)];
        assert!(a.solve(&bad).is_none());
    }

    #[test]
    fn image_basis_spans_columns() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let img = a.image_basis();
        assert_eq!(img.len(), a.rank());
        let cols: Vec<Vec<Rat>> = (0..a.ncols()).map(|j| a.col(j)).collect();
        assert!(same_span(&img, &cols));
    }
}
