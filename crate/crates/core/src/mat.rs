//! Dense matrices over a [`FieldSpec`], row-major.
//!
//! The reduction routine accepts an explicit column-processing order; the
//! minimum-distance machinery uses that to steer pivots toward columns that
//! previous information sets have not yet consumed.

use crate::field::{Fe, FieldSpec};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Fe>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Fe>>) -> Mat {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        let n = rows.len();
        Mat { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Fe] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[Fe]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c));
            }
        }
        t
    }

    pub fn mul(&self, f: &FieldSpec, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Mat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let t = f.mul(&a, &other.at(k, c));
                    let s = f.add(&out.at(r, c), &t);
                    out.set(r, c, s);
                }
            }
        }
        out
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            out.row_mut(r)[self.cols..].copy_from_slice(other.row(r));
        }
        out
    }

    /// Keep only the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zero(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.at(r, c));
            }
        }
        out
    }

    pub fn map_entries(&self, mut f: impl FnMut(Fe) -> Fe) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Coefficients `t` with `t * self = row`, when `row` lies in the row
    /// span and the rows of `self` are independent. Works by reducing the
    /// augmented row [row | 0] against the RREF of [self | I], whose right
    /// block tracks the row operations.
    pub fn express(&self, f: &FieldSpec, row: &[Fe]) -> Option<Vec<Fe>> {
        debug_assert_eq!(row.len(), self.cols);
        let aug = self.hstack(&Mat::identity(self.rows));
        let r = aug.rref(f);
        let mut padded = row.to_vec();
        padded.resize(self.cols + self.rows, Fe::ZERO);
        let red = r.reduce(f, &padded);
        if red[..self.cols].iter().any(|v| !v.is_zero()) {
            return None;
        }
        Some(red[self.cols..].iter().map(|v| f.neg(v)).collect())
    }

    /// Reduced row echelon form processing columns in their natural order.
    pub fn rref(&self, f: &FieldSpec) -> Rref {
        let order: Vec<usize> = (0..self.cols).collect();
        self.rref_in_order(f, &order)
    }

    /// Reduced row echelon form processing columns in the given order. The
    /// returned pivot list is parallel to the pivot rows (row i of the
    /// reduced matrix has leading 1 in column `pivots[i]`); rows beyond
    /// `pivots.len()` are zero.
    pub fn rref_in_order(&self, f: &FieldSpec, order: &[usize]) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for &col in order {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    let a = m.at(pivot_row, c);
                    let b = m.at(src, c);
                    m.set(pivot_row, c, b);
                    m.set(src, c, a);
                }
            }
            let inv = f.inv(&m.at(pivot_row, col));
            if inv != Fe::ONE {
                for c in 0..m.cols {
                    let v = f.mul(&m.at(pivot_row, c), &inv);
                    m.set(pivot_row, c, v);
                }
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.at(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in 0..m.cols {
                    let t = f.mul(&factor, &m.at(pivot_row, c));
                    let v = f.sub(&m.at(r, c), &t);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref { mat: m, pivots }
    }

    pub fn rank(&self, f: &FieldSpec) -> usize {
        self.rref(f).rank()
    }

    /// Basis of the right kernel { v : self * v^T = 0 }, one vector per row.
    pub fn nullspace(&self, f: &FieldSpec) -> Mat {
        let r = self.rref(f);
        let rank = r.rank();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &p) in r.pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| pivot_set[c].is_none()).collect();
        let mut out = Mat::zero(free.len(), self.cols);
        for (vi, &fc) in free.iter().enumerate() {
            out.set(vi, fc, Fe::ONE);
            for i in 0..rank {
                let coef = r.mat.at(i, fc);
                if !coef.is_zero() {
                    out.set(vi, r.pivots[i], f.neg(&coef));
                }
            }
        }
        out
    }

    /// Rows with all-zero entries removed.
    pub fn drop_zero_rows(&self) -> Mat {
        let rows: Vec<Vec<Fe>> = self
            .rows_iter()
            .filter(|r| r.iter().any(|v| !v.is_zero()))
            .map(|r| r.to_vec())
            .collect();
        Mat::from_rows(self.cols, rows)
    }
}

/// A matrix in reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub mat: Mat,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `row` against the echelon rows; returns the residue.
    pub fn reduce(&self, f: &FieldSpec, row: &[Fe]) -> Vec<Fe> {
        let mut v = row.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = v[p];
            if c.is_zero() {
                continue;
            }
            for j in 0..v.len() {
                let t = f.mul(&c, &self.mat.at(i, j));
                v[j] = f.sub(&v[j], &t);
            }
        }
        v
    }

    pub fn contains_row(&self, f: &FieldSpec, row: &[Fe]) -> bool {
        self.reduce(f, row).iter().all(|v| v.is_zero())
    }

    /// Do the rows of `other` all lie in this row space?
    pub fn contains_rows(&self, f: &FieldSpec, other: &Mat) -> bool {
        other.rows_iter().all(|r| self.contains_row(f, r))
    }

    /// Coordinates of `row` in terms of the echelon basis, if it lies in the
    /// row space. With a reduced form, the coefficient of basis row i is just
    /// the entry of `row` at pivot column i.
    pub fn coordinates(&self, f: &FieldSpec, row: &[Fe]) -> Option<Vec<Fe>> {
        if !self.contains_row(f, row) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| row[p]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    fn mat(f: &FieldSpec, cols: usize, rows: &[&[u32]]) -> Mat {
        let _ = f;
        Mat::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&v| Fe(v)).collect()).collect(),
        )
    }

    #[test]
    fn express_recovers_combination_coefficients() {
        let f = gf(5);
        let basis = mat(&f, 4, &[&[1, 2, 0, 3], &[0, 1, 1, 4]]);
        // target = 2*row0 + 3*row1.
        let target: Vec<Fe> = (0..4)
            .map(|c| {
                f.add(
                    &f.mul(&Fe(2), &basis.at(0, c)),
                    &f.mul(&Fe(3), &basis.at(1, c)),
                )
            })
            .collect();
        let t = basis.express(&f, &target).unwrap();
        assert_eq!(t, vec![Fe(2), Fe(3)]);
        // A vector outside the span has no expression.
        assert!(basis.express(&f, &[Fe(1), Fe(0), Fe(0), Fe(0)]).is_none());
    }

    #[test]
    fn rref_gf5() {
        let f = gf(5);
        let m = mat(&f, 3, &[&[2, 4, 1], &[1, 2, 4]]);
        let r = m.rref(&f);
        assert_eq!(r.pivots, vec![0, 2]);
        assert_eq!(r.mat.row(0), &[Fe(1), Fe(2), Fe(0)]);
        assert_eq!(r.mat.row(1), &[Fe(0), Fe(0), Fe(1)]);
        // Dependent rows collapse: [2,4,1] = 2 * [1,2,3].
        let dep = mat(&f, 3, &[&[2, 4, 1], &[1, 2, 3]]);
        assert_eq!(dep.rank(&f), 1);
    }

    #[test]
    fn rref_respects_column_order() {
        let f = gf(3);
        let m = mat(&f, 3, &[&[1, 1, 1], &[0, 1, 2]]);
        let natural = m.rref(&f);
        assert_eq!(natural.pivots, vec![0, 1]);
        let r = m.rref_in_order(&f, &[2, 1, 0]);
        assert_eq!(r.pivots, vec![2, 1]);
        // Pivot columns are standard basis vectors.
        assert_eq!(r.mat.at(0, 2), Fe(1));
        assert_eq!(r.mat.at(1, 2), Fe(0));
        assert_eq!(r.mat.at(0, 1), Fe(0));
        assert_eq!(r.mat.at(1, 1), Fe(1));
    }

    #[test]
    fn rank_and_nullspace() {
        let f = gf(3);
        let m = mat(&f, 4, &[&[1, 0, 2, 1], &[0, 1, 1, 2], &[1, 1, 0, 0]]);
        assert_eq!(m.rank(&f), 2); // row3 = row1 + row2
        let ns = m.nullspace(&f);
        assert_eq!(ns.rows, 2);
        // Every kernel row is annihilated by every matrix row.
        for kr in ns.rows_iter() {
            for mr in m.rows_iter() {
                let dot = kr
                    .iter()
                    .zip(mr)
                    .fold(Fe::ZERO, |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
                assert_eq!(dot, Fe::ZERO);
            }
        }
    }

    #[test]
    fn span_membership() {
        let f = gf(4);
        let w = f.xi;
        let m = Mat::from_rows(
            3,
            vec![vec![Fe(1), w, Fe(0)], vec![Fe(0), Fe(1), w]],
        );
        let r = m.rref(&f);
        // w * row0 + row1.
        let mut cand = vec![Fe::ZERO; 3];
        for j in 0..3 {
            cand[j] = f.add(&f.mul(&w, &m.at(0, j)), &m.at(1, j));
        }
        assert!(r.contains_row(&f, &cand));
        let coords = r.coordinates(&f, &cand).unwrap();
        // Verify the coordinates rebuild the row from the echelon basis.
        let mut rebuilt = vec![Fe::ZERO; 3];
        for (i, c) in coords.iter().enumerate() {
            for j in 0..3 {
                let t = f.mul(c, &r.mat.at(i, j));
                rebuilt[j] = f.add(&rebuilt[j], &t);
            }
        }
        assert_eq!(rebuilt, cand);
        assert!(!r.contains_row(&f, &[Fe(1), Fe(0), Fe(0)]));
    }

    #[test]
    fn stacking_and_selection() {
        let f = gf(3);
        let a = mat(&f, 2, &[&[1, 2]]);
        let b = mat(&f, 2, &[&[0, 1]]);
        let v = a.vstack(&b);
        assert_eq!((v.rows, v.cols), (2, 2));
        let h = a.hstack(&b);
        assert_eq!((h.rows, h.cols), (1, 4));
        assert_eq!(h.row(0), &[Fe(1), Fe(2), Fe(0), Fe(1)]);
        let s = v.select_columns(&[1]);
        assert_eq!(s.row(0), &[Fe(2)]);
        assert_eq!(s.row(1), &[Fe(1)]);
    }
}
