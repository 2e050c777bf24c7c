//! Finite-dimensional algebras given by structure constants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::SparseVec;
use crate::exactla::{axpy, Field, Mat, Scalar};

#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra {
    field: Field,
    dim: usize,
    consts: Vec<SparseVec>,
    unit: Vec<Scalar>,
    block_dims: Option<Vec<Vec<usize>>>,
}

/// Structure report of a finite-dimensional algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimpleReport {
    pub dimension: usize,
    pub radical_dim: usize,
    pub semisimple: bool,
    pub center_dim: usize,
    /// Dimensions of the two-sided blocks cut out by primitive central
    /// idempotents, sorted; `None` when the center does not split.
    pub blocks: Option<Vec<usize>>,
    pub note: Option<String>,
}

impl FiniteDimAlgebra {
    /// `consts[i * dim + j]` is the product of basis elements `i` and `j`.
    pub fn new(field: Field, dim: usize, consts: Vec<SparseVec>, unit: Vec<Scalar>) -> FiniteDimAlgebra {
        assert_eq!(consts.len(), dim * dim);
        assert_eq!(unit.len(), dim);
        FiniteDimAlgebra { field, dim, consts, unit, block_dims: None }
    }

    pub fn with_block_dims(mut self, b: Vec<Vec<usize>>) -> FiniteDimAlgebra {
        self.block_dims = Some(b);
        self
    }

    pub fn from_dense(field: Field, table: &[Vec<Vec<i64>>], unit: &[i64]) -> FiniteDimAlgebra {
        let dim = unit.len();
        let mut consts = Vec::with_capacity(dim * dim);
        for row in table {
            for v in row {
                consts.push(
                    v.iter().enumerate().filter(|(_, c)| **c != 0).map(|(k, c)| (k, field.from_i64(*c))).collect(),
                );
            }
        }
        FiniteDimAlgebra::new(field, dim, consts, unit.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn block_dims(&self) -> Option<&Vec<Vec<usize>>> {
        self.block_dims.as_ref()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.consts[i * self.dim + j]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &self.consts[i * self.dim + j] {
                    axpy(&mut out[*k], &xy, c);
                }
            }
        }
        out
    }

    fn unit_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&self.unit_vec(i), &self.unit_vec(j));
                for k in 0..n {
                    let ek = self.unit_vec(k);
                    let jk = self.mul(&self.unit_vec(j), &ek);
                    if self.mul(&ij, &ek) != self.mul(&self.unit_vec(i), &jk) {
                        return false;
                    }
                }
            }
        }
        (0..n).all(|i| {
            let e = self.unit_vec(i);
            self.mul(&self.unit, &e) == e && self.mul(&e, &self.unit) == e
        })
    }

    /// Matrix of `x ↦ a·x`; row `j` holds the coordinates of `a·b_j`.
    fn left_mult(&self, a: &[Scalar]) -> Mat {
        let rows = (0..self.dim).map(|j| self.mul(a, &self.unit_vec(j))).collect();
        Mat::from_rows(self.dim, rows)
    }

    fn trace(&self, a: &[Scalar]) -> Scalar {
        let m = self.left_mult(a);
        let mut t = Scalar::zero();
        for i in 0..self.dim {
            t += m.get(i, i);
        }
        t
    }

    /// Kernel of the trace form `(a, b) ↦ tr(L_{ab})`; this is the Jacobson
    /// radical in characteristic zero.
    pub fn radical_basis(&self) -> Mat {
        let n = self.dim;
        let mut form = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let p = self.mul(&self.unit_vec(i), &self.unit_vec(j));
                form.set(i, j, self.trace(&p));
            }
        }
        form.kernel_basis()
    }

    pub fn center_basis(&self) -> Mat {
        let n = self.dim;
        // unknown z = Σ z_i b_i; equations (z b_j - b_j z)_k = 0
        let mut eqs = Mat::zeros(0, n);
        for j in 0..n {
            let ej = self.unit_vec(j);
            let mut block = Mat::zeros(n, n);
            for i in 0..n {
                let ei = self.unit_vec(i);
                let d: Vec<Scalar> = self.mul(&ei, &ej).iter().zip(self.mul(&ej, &ei)).map(|(a, b)| a - &b).collect();
                for (k, v) in d.into_iter().enumerate() {
                    block.set(k, i, v);
                }
            }
            eqs = eqs.vstack(&block);
        }
        eqs.kernel_basis()
    }

    /// Minimal polynomial of `w` inside the corner algebra with unit `e`,
    /// returned monic, lowest coefficient first.
    fn minimal_polynomial(&self, w: &[Scalar], e: &[Scalar]) -> Vec<Scalar> {
        let mut powers = vec![e.to_vec()];
        loop {
            let next = self.mul(powers.last().expect("nonempty"), w);
            let k = powers.len();
            let m = Mat::from_rows(k, (0..self.dim).map(|r| powers.iter().map(|p| p[r].clone()).collect()).collect());
            if let Ok(Some(c)) = m.solve(&next) {
                let mut poly: Vec<Scalar> = c.into_iter().map(|v| -v).collect();
                poly.push(Scalar::one());
                return poly;
            }
            powers.push(next);
        }
    }

    fn eval_poly(&self, p: &[Scalar], w: &[Scalar], e: &[Scalar]) -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(); self.dim];
        for c in p.iter().rev() {
            acc = self.mul(&acc, w);
            for (a, u) in acc.iter_mut().zip(e) {
                axpy(a, c, u);
            }
        }
        acc
    }

    fn span_dim(&self, vs: &[Vec<Scalar>]) -> usize {
        if vs.is_empty() {
            return 0;
        }
        Mat::from_rows(self.dim, vs.to_vec()).rank()
    }

    /// Splits the unit into primitive central idempotents where the center
    /// splits over the base field.
    fn central_idempotents(&self, center: &Mat) -> Option<Vec<Vec<Scalar>>> {
        let zs: Vec<Vec<Scalar>> = center.row_vecs();
        let mut candidates = zs.clone();
        for i in 0..zs.len() {
            for j in i + 1..zs.len() {
                for t in [1i64, 2, 3] {
                    let s = Scalar::from(t);
                    candidates.push(zs[i].iter().zip(&zs[j]).map(|(a, b)| a + &(&s * b)).collect());
                }
            }
        }
        let mut done = Vec::new();
        let mut todo = vec![self.unit.clone()];
        while let Some(e) = todo.pop() {
            let ze: Vec<Vec<Scalar>> = zs.iter().map(|z| self.mul(z, &e)).collect();
            if self.span_dim(&ze) <= 1 {
                done.push(e);
                continue;
            }
            let mut split = None;
            for z in &candidates {
                let w = self.mul(z, &e);
                let m = self.minimal_polynomial(&w, &e);
                if m.len() <= 2 {
                    continue;
                }
                if let Some(lambda) = rational_roots(&m, self.field).into_iter().next() {
                    // m = (t - λ) q ; idempotent q(w) / q(λ)
                    let q = divide_linear(&m, &lambda);
                    let ql = horner(&q, &lambda);
                    let qe = self.eval_poly(&q, &w, &e);
                    let inv = ql.inv();
                    let e1: Vec<Scalar> = qe.iter().map(|v| v * &inv).collect();
                    let e2: Vec<Scalar> = e.iter().zip(&e1).map(|(a, b)| a - b).collect();
                    split = Some((e1, e2));
                    break;
                }
            }
            match split {
                Some((a, b)) => {
                    todo.push(a);
                    todo.push(b);
                }
                None => return None,
            }
        }
        Some(done)
    }

    pub fn semisimple_type(&self) -> SemisimpleReport {
        let radical_dim = self.radical_basis().rows();
        let center = self.center_basis();
        let semisimple = radical_dim == 0;
        let mut note = None;
        if let Field::Prime(p) = self.field {
            note = Some(format!("trace-form radical computed over F_{p}; only reliable in characteristic 0"));
        }
        let blocks = if semisimple {
            match self.central_idempotents(&center) {
                Some(es) => {
                    let mut dims: Vec<usize> = es
                        .iter()
                        .map(|e| {
                            let v: Vec<Vec<Scalar>> = (0..self.dim).map(|i| self.mul(&self.unit_vec(i), e)).collect();
                            self.span_dim(&v)
                        })
                        .collect();
                    dims.sort_unstable();
                    Some(dims)
                }
                None => {
                    note = Some(format!("blocks unresolved over {}", self.field));
                    None
                }
            }
        } else {
            None
        };
        SemisimpleReport { dimension: self.dim, radical_dim, semisimple, center_dim: center.rows(), blocks, note }
    }
}

fn horner(p: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Quotient of `p` by `(t - λ)` for a root `λ`.
fn divide_linear(p: &[Scalar], lambda: &Scalar) -> Vec<Scalar> {
    let n = p.len() - 1;
    let mut q = vec![Scalar::zero(); n];
    let mut carry = Scalar::zero();
    for k in (0..n).rev() {
        carry = &p[k + 1] + &(&carry * lambda);
        q[k] = carry.clone();
    }
    q
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let Some(n) = n.abs().to_u64() else {
        return vec![];
    };
    if n > 1_000_000_000_000 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out
}

/// Roots of `p` in the base field: rational-root test over Q, exhaustive
/// search over small prime fields.
fn rational_roots(p: &[Scalar], field: Field) -> Vec<Scalar> {
    let mut roots = Vec::new();
    match field {
        Field::Prime(q) => {
            if q <= 100_000 {
                for v in 0..q as i64 {
                    let x = Scalar::residue(v, q);
                    if horner(p, &x).is_zero() {
                        roots.push(x);
                    }
                }
            }
        }
        Field::Rational => {
            // clear denominators
            let mut l = BigInt::from(1);
            for c in p {
                if let Some((_, d)) = c.to_big_ratio() {
                    l = l.lcm(&d);
                }
            }
            let ints: Vec<BigInt> = p
                .iter()
                .map(|c| {
                    let (n, d) = c.to_big_ratio().expect("rational");
                    n * (&l / d)
                })
                .collect();
            let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
            if low > 0 {
                roots.push(Scalar::zero());
            }
            let a0 = &ints[low];
            let an = ints.last().expect("nonempty");
            for num in divisors(a0) {
                for den in divisors(an) {
                    for s in [1i64, -1] {
                        let x = Scalar::from_big(&num * BigInt::from(s), den.clone());
                        if !roots.contains(&x) && horner(p, &x).is_zero() {
                            roots.push(x);
                        }
                    }
                }
            }
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix_algebra() -> FiniteDimAlgebra {
        // E_ij E_kl = δ_jk E_il, basis index 2i + j
        let mut table = vec![vec![vec![0i64; 4]; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    table[2 * i + j][2 * j + l][2 * i + l] = 1;
                }
            }
        }
        FiniteDimAlgebra::from_dense(Field::Rational, &table, &[1, 0, 0, 1])
    }

    #[test]
    fn matrix_algebra_is_simple() {
        let a = matrix_algebra();
        assert!(a.is_associative());
        let r = a.semisimple_type();
        assert!(r.semisimple);
        assert_eq!(r.center_dim, 1);
        assert_eq!(r.blocks, Some(vec![4]));
    }

    #[test]
    fn dual_numbers_have_radical() {
        let table = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]];
        let a = FiniteDimAlgebra::from_dense(Field::Rational, &table, &[1, 0]);
        let r = a.semisimple_type();
        assert_eq!(r.radical_dim, 1);
        assert!(!r.semisimple);
    }

    #[test]
    fn product_splits() {
        // k × k with basis e1, e2
        let table = vec![vec![vec![1, 0], vec![0, 0]], vec![vec![0, 0], vec![0, 1]]];
        let a = FiniteDimAlgebra::from_dense(Field::Rational, &table, &[1, 1]);
        assert_eq!(a.semisimple_type().blocks, Some(vec![1, 1]));
    }

    #[test]
    fn unsplit_center_is_reported() {
        // Q(i) as a 2-dimensional Q-algebra
        let table = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![-1, 0]]];
        let a = FiniteDimAlgebra::from_dense(Field::Rational, &table, &[1, 0]);
        let r = a.semisimple_type();
        assert!(r.semisimple);
        assert_eq!(r.blocks, None);
        assert!(r.note.unwrap().contains("unresolved"));
    }
}
