use std::fmt;

use super::scalar::{axpy, Scalar};
use super::LinAlgError;

/// Dense row-major matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds from explicit rows; all rows must share `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Mat {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Mat { rows: r, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        Mat::from_rows(cols, rows.iter().map(|r| r.iter().map(|&v| Scalar::from(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Scalar] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[Scalar]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    t.set(c, r, v.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    axpy(&mut out.data[idx], a, b);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Scalar::zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                axpy(o, a, self.get(k, j));
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    axpy(&mut acc, a, b);
                }
                acc
            })
            .collect()
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_rows(self.cols, idx.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_rows(
            idx.len(),
            (0..self.rows).map(|r| idx.iter().map(|&c| self.get(r, c).clone()).collect()).collect(),
        )
    }

    /// Stacks `o` below `self`.
    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Mat { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows);
        let rows = (0..self.rows)
            .map(|r| {
                let mut v = self.row(r).to_vec();
                v.extend_from_slice(o.row(r));
                v
            })
            .collect();
        Mat::from_rows(self.cols + o.cols, rows)
    }

    /// In-place reduction; returns pivot columns. Leftmost pivot column first,
    /// topmost nonzero row chosen as pivot row.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(sel) = (prow..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            if sel != prow {
                for j in 0..self.cols {
                    self.data.swap(sel * self.cols + j, prow * self.cols + j);
                }
            }
            let inv = self.get(prow, c).inv();
            let mut support = Vec::new();
            for j in c..self.cols {
                let idx = prow * self.cols + j;
                if !self.data[idx].is_zero() {
                    self.data[idx] = &self.data[idx] * &inv;
                    support.push(j);
                }
            }
            let pivot_row: Vec<(usize, Scalar)> = support.iter().map(|&j| (j, self.get(prow, j).clone())).collect();
            for r in 0..self.rows {
                if r == prow {
                    continue;
                }
                let f = self.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                let base = r * self.cols;
                for (j, v) in &pivot_row {
                    let cur = &self.data[base + j];
                    self.data[base + j] = cur - &(&f * v);
                }
            }
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    /// Reduced row echelon form together with its pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Nonzero rows of the rref: a canonical basis of the row space.
    pub fn row_space(&self) -> Mat {
        let (r, p) = self.rref();
        r.select_rows(&(0..p.len()).collect::<Vec<_>>())
    }

    /// Basis of `{v : self * v = 0}`, one vector per row, built from the
    /// free columns of the rref.
    pub fn kernel_basis(&self) -> Mat {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Mat::zeros(0, self.cols);
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for (k, &p) in pivots.iter().enumerate() {
                let e = r.get(k, f);
                if !e.is_zero() {
                    v[p] = -e;
                }
            }
            out.push_row(&v);
        }
        out
    }

    /// Basis of `{v : v * self = 0}` (rows).
    pub fn left_kernel(&self) -> Mat {
        self.transpose().kernel_basis()
    }

    /// Some `x` with `self * x = b`; free variables are set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(k, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Mat::zeros(0, 0));
        }
        let (r, p) = self.hstack(&Mat::identity(n)).rref();
        if p.len() < n || p[n - 1] != n - 1 {
            return None;
        }
        Some(r.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(sel) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return Scalar::zero();
            };
            if sel != c {
                for j in 0..n {
                    m.data.swap(sel * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv();
            for r in c + 1..n {
                let f = m.get(r, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(r, j) - &(&f * m.get(c, j));
                    m.set(r, j, v);
                }
            }
        }
        det
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reads coordinates with respect to a fixed family of independent rows.
///
/// Built from rows `[target; auxiliary]`; for a vector in the span of all
/// rows, returns the coefficients of the `target` rows.
#[derive(Clone, Debug)]
pub struct Projector {
    pivots: Vec<usize>,
    inv: Mat,
    width: usize,
}

impl Projector {
    pub fn new(target: &Mat, aux: &Mat) -> Projector {
        let all = target.vstack(aux);
        let (_, pivots) = all.rref();
        assert_eq!(pivots.len(), all.rows(), "projector rows must be independent");
        let sub = all.select_cols(&pivots);
        let inv = sub.inverse().expect("pivot block is invertible");
        let width = target.rows();
        if all.rows() == 0 {
            return Projector { pivots, inv: Mat::zeros(0, 0), width };
        }
        let inv = inv.select_cols(&(0..width).collect::<Vec<_>>());
        Projector { pivots, inv, width }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.width];
        for (t, &p) in self.pivots.iter().enumerate() {
            let a = &v[p];
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                axpy(o, a, self.inv.get(t, j));
            }
        }
        out
    }
}

/// Indices of unit vectors completing the row space of `m` to the whole space,
/// taken from the non-pivot columns of its rref.
pub fn complement_units(m: &Mat) -> Vec<usize> {
    let (_, p) = m.rref();
    let mut is_p = vec![false; m.cols()];
    for c in p {
        is_p[c] = true;
    }
    (0..m.cols()).filter(|&c| !is_p[c]).collect()
}

/// Incrementally grown echelon basis: each stored row is reduced against
/// the earlier ones and scaled to have a unit pivot.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new(cols: usize) -> Echelon {
        Echelon { cols, rows: Vec::new() }
    }

    pub fn from_mat(m: &Mat) -> Echelon {
        let mut e = Echelon::new(m.cols());
        for r in 0..m.rows() {
            e.insert(m.row(r).to_vec());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Unit-vector indices completing the stored rows to a basis.
    pub fn complement(&self) -> Vec<usize> {
        let mut is_p = vec![false; self.cols];
        for (p, _) in &self.rows {
            is_p[*p] = true;
        }
        (0..self.cols).filter(|&c| !is_p[c]).collect()
    }

    /// Reduces `v` against the stored rows in place.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (p, row) in &self.rows {
            let f = v[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn to_mat(&self) -> Mat {
        Mat::from_rows(self.cols, self.rows.iter().map(|(_, r)| r.clone()).collect())
    }
}

/// Greedy canonical complement: the rows of `candidates` (in order) that are
/// independent modulo the row space of `base`.
pub fn extend_basis(base: &Mat, candidates: &Mat) -> Vec<usize> {
    let mut ech = Echelon::from_mat(base);
    (0..candidates.rows()).filter(|&i| ech.insert(candidates.row(i).to_vec())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Scalar::from(v)
    }

    #[test]
    fn rref_examples() {
        let (r, p) = Mat::identity(2).rref();
        assert_eq!(r, Mat::identity(2));
        assert_eq!(p, vec![0, 1]);

        let (r, p) = Mat::zeros(3, 3).rref();
        assert!(r.is_zero());
        assert!(p.is_empty());

        // hand reduction: R2 <- R2 - 2 R1
        let (r, p) = Mat::from_i64(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r, Mat::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Mat::identity(3).kernel_basis().rows(), 0);
        assert_eq!(Mat::zeros(1, 3).kernel_basis().rows(), 3);
        let m = Mat::from_i64(&[&[1, 1, 0]]);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 2);
        for r in 0..k.rows() {
            assert!(m.apply(k.row(r)).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(3), q(-1)];
        assert_eq!(Mat::identity(2).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Mat::zeros(2, 2).solve(&b).unwrap(), None);
        assert_eq!(Mat::from_i64(&[&[1, 1]]).solve(&[q(2)]).unwrap(), Some(vec![q(2), q(0)]));
        assert!(matches!(Mat::identity(2).solve(&[q(1)]), Err(LinAlgError::DimensionMismatch { .. })));
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Mat::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.mul(&m.inverse().unwrap()), Mat::identity(2));
        assert_eq!(m.determinant(), q(1));
        assert!(Mat::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn projector_reads_target_coordinates() {
        let target = Mat::from_i64(&[&[1, 1, 0]]);
        let aux = Mat::from_i64(&[&[0, 1, 1]]);
        let p = Projector::new(&target, &aux);
        // 3*(1,1,0) + 2*(0,1,1)
        assert_eq!(p.coords(&[q(3), q(5), q(2)]), vec![q(3)]);
    }

    #[test]
    fn extend_basis_is_greedy() {
        let base = Mat::from_i64(&[&[1, 0, 0]]);
        let cand = Mat::from_i64(&[&[2, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(extend_basis(&base, &cand), vec![1, 3]);
    }
}
