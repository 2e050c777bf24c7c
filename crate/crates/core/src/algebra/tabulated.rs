//! Graded algebras stored as degreewise bases and multiplication tables.

use std::collections::HashMap;

use super::{AlgebraError, FiniteDimAlgebra, HilbertSeries, SparseVec};
use crate::exactla::{axpy, Field, Mat, Scalar};
use crate::freealg::{GeneratorSet, Letter, NcPoly};

/// A homogeneous element given by coordinates in the degree-`degree` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub degree: u32,
    pub coords: Vec<Scalar>,
}

/// Link back to a generator presentation.
#[derive(Clone, Debug)]
pub(crate) struct GeneratorLink {
    pub gens: GeneratorSet,
    /// Coordinates of each generator in the basis of its degree.
    pub letters: Vec<Vec<Scalar>>,
    /// For each basis element, a factorisation `b = prefix · letter`
    /// valid for this algebra's product (absent after twisting).
    pub factor: Option<Vec<Vec<(usize, Letter)>>>,
}

#[derive(Clone, Debug)]
pub struct TabulatedAlgebra {
    field: Field,
    truncation: u32,
    labels: Vec<Vec<String>>,
    /// `mult[d][e][i * dim(e) + j]` = product of basis elements `i ∈ A_d`, `j ∈ A_e`.
    mult: Vec<Vec<Vec<SparseVec>>>,
    unit: Vec<Scalar>,
    idempotents: Vec<Vec<Scalar>>,
    tags: Vec<Vec<(usize, usize)>>,
    blocks: Option<Vec<Vec<(usize, usize)>>>,
    gen_degree: u32,
    link: Option<GeneratorLink>,
}

pub(crate) struct RawTable {
    pub field: Field,
    pub truncation: u32,
    pub labels: Vec<Vec<String>>,
    pub mult: Vec<Vec<Vec<SparseVec>>>,
    pub unit: Vec<Scalar>,
    pub idempotents: Option<Vec<Vec<Scalar>>>,
    pub blocks: Option<Vec<Vec<(usize, usize)>>>,
    pub gen_degree: Option<u32>,
    pub link: Option<GeneratorLink>,
}

fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

fn sparse_to_dense(s: &SparseVec, n: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    for (k, c) in s {
        v[*k] = c.clone();
    }
    v
}

pub(crate) fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

impl TabulatedAlgebra {
    pub(crate) fn from_raw(raw: RawTable) -> TabulatedAlgebra {
        let idempotents = raw.idempotents.unwrap_or_else(|| vec![raw.unit.clone()]);
        let mut a = TabulatedAlgebra {
            field: raw.field,
            truncation: raw.truncation,
            labels: raw.labels,
            mult: raw.mult,
            unit: raw.unit,
            idempotents,
            tags: Vec::new(),
            blocks: raw.blocks,
            gen_degree: 0,
            link: raw.link,
        };
        a.tags = a.compute_tags();
        a.gen_degree = raw.gen_degree.unwrap_or_else(|| a.compute_gen_degree());
        a
    }

    fn compute_tags(&self) -> Vec<Vec<(usize, usize)>> {
        let n0 = self.dim(0);
        (0..=self.truncation)
            .map(|d| {
                (0..self.dim(d))
                    .map(|i| {
                        let b = unit_vec(self.dim(d), i);
                        let left = self
                            .idempotents
                            .iter()
                            .position(|e| self.mul(0, e, d, &b) == b)
                            .expect("basis compatible with idempotents");
                        let right = self
                            .idempotents
                            .iter()
                            .position(|e| self.mul(d, &b, 0, e) == b)
                            .expect("basis compatible with idempotents");
                        debug_assert!(n0 > 0);
                        (left, right)
                    })
                    .collect()
            })
            .collect()
    }

    /// Largest degree `n ≤ D` where `A_n` is not spanned by products of
    /// lower positive-degree pieces.
    fn compute_gen_degree(&self) -> u32 {
        let mut g = 0;
        for n in 1..=self.truncation {
            let dn = self.dim(n);
            if dn == 0 {
                continue;
            }
            let mut rows = Mat::zeros(0, dn);
            for e in 1..n {
                for i in 0..self.dim(e) {
                    for j in 0..self.dim(n - e) {
                        rows.push_row(&sparse_to_dense(self.basis_mult(e, i, n - e, j), dn));
                    }
                }
                if rows.rows() >= dn && rows.rank() == dn {
                    break;
                }
            }
            if rows.rank() < dn {
                g = n;
            }
        }
        g
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn dim(&self, d: u32) -> usize {
        self.labels.get(d as usize).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, d: u32) -> &[String] {
        &self.labels[d as usize]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Vec<Scalar>] {
        &self.idempotents
    }

    /// `(left, right)` idempotent indices with `e_left · b = b = b · e_right`.
    pub fn tag(&self, d: u32, i: usize) -> (usize, usize) {
        self.tags[d as usize][i]
    }

    pub fn blocks(&self, d: u32) -> Option<&[(usize, usize)]> {
        self.blocks.as_ref().map(|b| &b[d as usize][..])
    }

    /// Degree bound for algebra generators found inside the truncation.
    pub fn generation_degree(&self) -> u32 {
        self.gen_degree
    }

    pub fn generators(&self) -> Option<&GeneratorSet> {
        self.link.as_ref().map(|l| &l.gens)
    }

    pub fn basis_mult(&self, d: u32, i: usize, e: u32, j: usize) -> &SparseVec {
        &self.mult[d as usize][e as usize][i * self.dim(e) + j]
    }

    /// Product of dense coordinate vectors of degrees `d` and `e`.
    pub fn mul(&self, d: u32, a: &[Scalar], e: u32, b: &[Scalar]) -> Vec<Scalar> {
        assert!(d + e <= self.truncation, "product beyond truncation");
        let mut out = vec![Scalar::zero(); self.dim(d + e)];
        let de = self.dim(e);
        let table = &self.mult[d as usize][e as usize];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &table[i * de + j] {
                    axpy(&mut out[*k], &xy, c);
                }
            }
        }
        out
    }

    pub fn mul_elements(&self, a: &Element, b: &Element) -> Element {
        Element { degree: a.degree + b.degree, coords: self.mul(a.degree, &a.coords, b.degree, &b.coords) }
    }

    pub fn basis_element(&self, d: u32, i: usize) -> Element {
        Element { degree: d, coords: unit_vec(self.dim(d), i) }
    }

    pub fn hilbert(&self) -> HilbertSeries {
        HilbertSeries::new(0, self.dims().into_iter().map(|d| d as i64).collect())
    }

    /// Evaluates a homogeneous polynomial in the generators.
    pub fn eval_poly(&self, p: &NcPoly) -> Result<Element, AlgebraError> {
        let link = self.link.as_ref().ok_or(AlgebraError::NoPresentation)?;
        let Some(deg) = p.homogeneous_degree() else {
            if p.is_zero() {
                return Ok(Element { degree: 0, coords: vec![Scalar::zero(); self.dim(0)] });
            }
            return Err(AlgebraError::Inhomogeneous);
        };
        if deg > self.truncation {
            return Err(AlgebraError::TruncationExceeded { requested: deg, available: self.truncation });
        }
        let mut acc = vec![Scalar::zero(); self.dim(deg)];
        for (w, c) in p.terms() {
            let mut v = self.unit.clone();
            let mut dv = 0;
            for &l in w.letters() {
                let dl = link.gens.degree(l);
                v = self.mul(dv, &v, dl, &link.letters[l as usize]);
                dv += dl;
            }
            for (a, b) in acc.iter_mut().zip(&v) {
                axpy(a, c, b);
            }
        }
        Ok(Element { degree: deg, coords: acc })
    }

    /// Degreewise matrices (rows = images of basis elements) of the algebra
    /// map sending each generator to the given image.
    pub fn induced_map(&self, images: &[Element]) -> Result<Vec<Mat>, AlgebraError> {
        let link = self.link.as_ref().ok_or(AlgebraError::NoPresentation)?;
        let factor = link.factor.as_ref().ok_or(AlgebraError::NoPresentation)?;
        let mut mats: Vec<Mat> = Vec::new();
        for d in 0..=self.truncation {
            let n = self.dim(d);
            let mut m = Mat::zeros(0, n);
            for i in 0..n {
                let row = if d == 0 {
                    unit_vec(n, i)
                } else {
                    let (pre, l) = factor[d as usize][i];
                    let dl = link.gens.degree(l);
                    let img = &images[l as usize];
                    if img.degree != dl {
                        return Err(AlgebraError::NotDegreePreserving);
                    }
                    let dp = d - dl;
                    self.mul(dp, mats[dp as usize].row(pre), dl, &img.coords)
                };
                m.push_row(&row);
            }
            mats.push(m);
        }
        Ok(mats)
    }

    /// True iff `f·b = b·f` for every basis element `b` of degree `≤ D - deg f`.
    pub fn is_central(&self, f: &Element) -> bool {
        if f.degree > self.truncation {
            return false;
        }
        (0..=self.truncation - f.degree).all(|d| {
            (0..self.dim(d)).all(|i| {
                let b = unit_vec(self.dim(d), i);
                self.mul(f.degree, &f.coords, d, &b) == self.mul(d, &b, f.degree, &f.coords)
            })
        })
    }

    /// Matrix of right multiplication by `f` from degree `d`.
    pub fn right_mult_matrix(&self, f: &Element, d: u32) -> Mat {
        let n = self.dim(d + f.degree);
        let rows = (0..self.dim(d)).map(|i| self.mul(d, &unit_vec(self.dim(d), i), f.degree, &f.coords)).collect();
        Mat::from_rows(n, rows)
    }

    /// Injectivity of multiplication by a central `f` in every degree
    /// `d ≤ D - deg f`.
    pub fn is_regular_central(&self, f: &Element) -> Result<bool, AlgebraError> {
        if !self.is_central(f) {
            return Err(AlgebraError::NotCentral);
        }
        Ok(self.is_regular_upto(f, self.truncation))
    }

    fn is_regular_upto(&self, f: &Element, top: u32) -> bool {
        if f.degree > top {
            return true;
        }
        (0..=top - f.degree).all(|d| self.right_mult_matrix(f, d).rank() == self.dim(d))
    }

    /// Basis of `{z ∈ A_2 : z g = g z for all g ∈ A_1}`, keeping only
    /// elements confirmed central up to the truncation.
    pub fn find_central_degree2(&self) -> Vec<Element> {
        let n2 = self.dim(2);
        if self.truncation < 3 {
            return Vec::new();
        }
        let mut eqs = Mat::zeros(0, n2);
        for g in 0..self.dim(1) {
            let gv = unit_vec(self.dim(1), g);
            let n3 = self.dim(3);
            let mut block = Mat::zeros(n3, n2);
            for i in 0..n2 {
                let z = unit_vec(n2, i);
                let a = self.mul(2, &z, 1, &gv);
                let b = self.mul(1, &gv, 2, &z);
                for k in 0..n3 {
                    block.set(k, i, &a[k] - &b[k]);
                }
            }
            eqs = eqs.vstack(&block);
        }
        let ker = eqs.kernel_basis();
        ker.row_vecs().into_iter().map(|coords| Element { degree: 2, coords }).filter(|z| self.is_central(z)).collect()
    }

    /// Picks a central degree-2 element regular up to the truncation:
    /// basis elements first, then pairwise sums.
    pub fn regular_central_degree2(&self) -> Option<Element> {
        let zs = self.find_central_degree2();
        let mut cands = zs.clone();
        for i in 0..zs.len() {
            for j in i + 1..zs.len() {
                cands.push(Element {
                    degree: 2,
                    coords: zs[i].coords.iter().zip(&zs[j].coords).map(|(a, b)| a + b).collect(),
                });
            }
        }
        cands.into_iter().find(|z| self.is_regular_upto(z, self.truncation))
    }

    /// Degree-zero part as a finite-dimensional algebra.
    pub fn degree_zero(&self) -> FiniteDimAlgebra {
        let n = self.dim(0);
        let consts = (0..n * n).map(|k| self.mult[0][0][k].clone()).collect();
        let mut f = FiniteDimAlgebra::new(self.field, n, consts, self.unit.clone());
        if let Some(b) = &self.blocks {
            let r = self.idempotents.len();
            let mut dims = vec![vec![0; r]; r];
            for &(p, q) in &b[0] {
                dims[p][q] += 1;
            }
            f = f.with_block_dims(dims);
        }
        f
    }

    /// Exhaustive associativity and unit check on basis triples of total
    /// degree at most `bound`.
    pub fn check_associativity(&self, bound: u32) -> bool {
        let bound = bound.min(self.truncation);
        for d in 0..=bound {
            for i in 0..self.dim(d) {
                let a = unit_vec(self.dim(d), i);
                if self.mul(0, &self.unit, d, &a) != a || self.mul(d, &a, 0, &self.unit) != a {
                    return false;
                }
                for e in 0..=bound - d {
                    for j in 0..self.dim(e) {
                        let b = unit_vec(self.dim(e), j);
                        let ab = self.mul(d, &a, e, &b);
                        for f in 0..=bound - d - e {
                            for k in 0..self.dim(f) {
                                let c = unit_vec(self.dim(f), k);
                                let left = self.mul(d + e, &ab, f, &c);
                                let bc = self.mul(e, &b, f, &c);
                                if left != self.mul(d, &a, e + f, &bc) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    pub fn veronese(&self, r: u32) -> TabulatedAlgebra {
        assert!(r >= 1);
        let top = self.truncation / r;
        let labels = (0..=top).map(|i| self.labels[(r * i) as usize].clone()).collect();
        let mult = (0..=top)
            .map(|i| (0..=top - i).map(|j| self.mult[(r * i) as usize][(r * j) as usize].clone()).collect())
            .collect();
        let blocks = self.blocks.as_ref().map(|b| (0..=top).map(|i| b[(r * i) as usize].clone()).collect());
        TabulatedAlgebra::from_raw(RawTable {
            field: self.field,
            truncation: top,
            labels,
            mult,
            unit: self.unit.clone(),
            idempotents: Some(self.idempotents.clone()),
            blocks,
            gen_degree: if r == 1 { Some(self.gen_degree) } else { None },
            link: if r == 1 { self.link.clone() } else { None },
        })
    }

    /// Degree `i` is the `r × r` array whose `(p, q)` block is
    /// `A_{ri+q-p}`; `(ab)_{pq} = Σ_k a_{kq} b_{pk}`.
    pub fn quasi_veronese(&self, r: u32) -> TabulatedAlgebra {
        assert!(r >= 1);
        let top = ((self.truncation + 1) / r).saturating_sub(1);
        let ri = r as i64;
        let src = |i: u32, p: u32, q: u32| -> Option<u32> {
            let d = ri * i as i64 + q as i64 - p as i64;
            (d >= 0).then_some(d as u32)
        };
        // basis of degree i: (p, q, k) entries
        let mut entries: Vec<Vec<(u32, u32, usize)>> = Vec::new();
        let mut index: Vec<HashMap<(u32, u32, usize), usize>> = Vec::new();
        let mut labels = Vec::new();
        let mut blocks = Vec::new();
        for i in 0..=top {
            let mut es = Vec::new();
            let mut ls = Vec::new();
            let mut bs = Vec::new();
            for p in 0..r {
                for q in 0..r {
                    if let Some(d) = src(i, p, q) {
                        for k in 0..self.dim(d) {
                            es.push((p, q, k));
                            ls.push(format!("[{p},{q}]{}", self.labels[d as usize][k]));
                            bs.push((p as usize, q as usize));
                        }
                    }
                }
            }
            index.push(es.iter().enumerate().map(|(n, e)| (*e, n)).collect());
            entries.push(es);
            labels.push(ls);
            blocks.push(bs);
        }
        let mut mult = Vec::new();
        for i in 0..=top {
            let mut row = Vec::new();
            for j in 0..=top - i {
                let mut table = Vec::with_capacity(entries[i as usize].len() * entries[j as usize].len());
                for &(ka, qa, ia) in &entries[i as usize] {
                    for &(pb, kb, ib) in &entries[j as usize] {
                        if ka != kb {
                            table.push(Vec::new());
                            continue;
                        }
                        let da = src(i, ka, qa).expect("present");
                        let db = src(j, pb, kb).expect("present");
                        let prod = self.basis_mult(da, ia, db, ib);
                        let out =
                            prod.iter().map(|(t, c)| (index[(i + j) as usize][&(pb, qa, *t)], c.clone())).collect();
                        table.push(out);
                    }
                }
                row.push(table);
            }
            mult.push(row);
        }
        let n0 = entries[0].len();
        let mut unit = vec![Scalar::zero(); n0];
        let mut idempotents = Vec::new();
        for p in 0..r {
            let mut e = vec![Scalar::zero(); n0];
            for (k, c) in self.unit.iter().enumerate() {
                let pos = index[0][&(p, p, k)];
                e[pos] = c.clone();
                unit[pos] = c.clone();
            }
            idempotents.push(e);
        }
        if self.idempotents.len() > 1 {
            // refine by the idempotents of A_0 inside each diagonal block
            idempotents = (0..r)
                .flat_map(|p| self.idempotents.iter().map(move |f| (p, f)).collect::<Vec<_>>())
                .map(|(p, f)| {
                    let mut e = vec![Scalar::zero(); n0];
                    for (k, c) in f.iter().enumerate() {
                        e[index[0][&(p, p, k)]] = c.clone();
                    }
                    e
                })
                .collect();
        }
        TabulatedAlgebra::from_raw(RawTable {
            field: self.field,
            truncation: top,
            labels,
            mult,
            unit,
            idempotents: Some(idempotents),
            blocks: if self.idempotents.len() > 1 { None } else { Some(blocks) },
            gen_degree: None,
            link: None,
        })
    }

    /// Upper-triangular degree-zero part of the `l`-th quasi-Veronese algebra.
    pub fn beilinson(&self, l: u32) -> FiniteDimAlgebra {
        self.quasi_veronese(l).degree_zero()
    }

    pub fn opposite(&self) -> TabulatedAlgebra {
        let top = self.truncation;
        let mult = (0..=top)
            .map(|d| {
                (0..=top - d)
                    .map(|e| {
                        let (nd, ne) = (self.dim(d), self.dim(e));
                        let mut t = Vec::with_capacity(nd * ne);
                        for i in 0..nd {
                            for j in 0..ne {
                                t.push(self.basis_mult(e, j, d, i).clone());
                            }
                        }
                        t
                    })
                    .collect()
            })
            .collect();
        let blocks = self.blocks.as_ref().map(|b| b.iter().map(|v| v.iter().map(|&(p, q)| (q, p)).collect()).collect());
        let link = self.link.as_ref().map(|l| GeneratorLink {
            gens: l.gens.clone(),
            letters: l.letters.clone(),
            factor: None,
        });
        TabulatedAlgebra::from_raw(RawTable {
            field: self.field,
            truncation: top,
            labels: self.labels.clone(),
            mult,
            unit: self.unit.clone(),
            idempotents: Some(self.idempotents.clone()),
            blocks,
            gen_degree: Some(self.gen_degree),
            link,
        })
    }

    /// Same graded pieces with `x * y = x · σ^{deg x}(y)`.
    pub fn twist(&self, sigma: &GradedAutomorphism) -> Result<TabulatedAlgebra, AlgebraError> {
        if !sigma.is_automorphism_of(self) {
            return Err(AlgebraError::NotAutomorphism);
        }
        let top = self.truncation;
        // powers[e][k] = σ_e^k
        let mut powers: Vec<Vec<Mat>> = Vec::new();
        for e in 0..=top {
            let n = self.dim(e);
            let mut ps = vec![Mat::identity(n)];
            for _ in 1..=top {
                let next = ps.last().expect("nonempty").mul(&sigma.mats[e as usize]);
                ps.push(next);
            }
            powers.push(ps);
        }
        let mult = (0..=top)
            .map(|d| {
                (0..=top - d)
                    .map(|e| {
                        let (nd, ne) = (self.dim(d), self.dim(e));
                        let p = &powers[e as usize][d as usize];
                        let mut t = Vec::with_capacity(nd * ne);
                        for i in 0..nd {
                            let x = unit_vec(nd, i);
                            for j in 0..ne {
                                t.push(dense_to_sparse(&self.mul(d, &x, e, p.row(j))));
                            }
                        }
                        t
                    })
                    .collect()
            })
            .collect();
        let link = self.link.as_ref().map(|l| GeneratorLink {
            gens: l.gens.clone(),
            letters: l.letters.clone(),
            factor: None,
        });
        Ok(TabulatedAlgebra::from_raw(RawTable {
            field: self.field,
            truncation: top,
            labels: self.labels.clone(),
            mult,
            unit: self.unit.clone(),
            idempotents: Some(self.idempotents.clone()),
            blocks: self.blocks.clone(),
            gen_degree: Some(self.gen_degree),
            link,
        }))
    }

    /// Degree-zero part of the localisation at a regular central `z` of
    /// degree 2, read off once multiplication by `z` stabilises.
    pub fn c_of_a(&self, z: &Element) -> Result<CofA, AlgebraError> {
        if z.degree != 2 {
            return Err(AlgebraError::Inhomogeneous);
        }
        if !self.is_central(z) {
            return Err(AlgebraError::NotCentral);
        }
        let bijective = |i: u32| -> bool {
            let m = self.right_mult_matrix(z, 2 * i);
            m.rows() == m.cols() && m.rank() == m.rows()
        };
        let top = self.truncation;
        let mut level = None;
        let mut i = 0;
        while 2 * i + 4 <= top {
            if bijective(i) && bijective(i + 1) {
                level = Some(i);
                break;
            }
            i += 1;
        }
        let Some(i0) = level else {
            return Err(AlgebraError::NoStabilization { truncation: top });
        };
        if 4 * i0 > top || (i0..2 * i0).any(|k| !bijective(k)) {
            return Err(AlgebraError::NoStabilization { truncation: top });
        }
        let n = self.dim(2 * i0);
        // z^{i0} as the unit
        let mut zp = self.unit.clone();
        for k in 0..i0 {
            zp = self.mul(2 * k, &zp, 2, &z.coords);
        }
        // dividing by z^{i0}: solve c·z^{i0} = p in degree 4 i0
        let mut div = Mat::identity(n);
        for k in i0..2 * i0 {
            div = div.mul(&self.right_mult_matrix(z, 2 * k));
        }
        let inv = div.inverse().expect("bijective");
        let mut consts = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let p = self.mul(2 * i0, &unit_vec(n, a), 2 * i0, &unit_vec(n, b));
                consts.push(dense_to_sparse(&inv.left_apply(&p)));
            }
        }
        let algebra = FiniteDimAlgebra::new(self.field, n, consts, zp);
        Ok(CofA { algebra, level: i0 })
    }
}

/// Result of the localisation construction.
#[derive(Clone, Debug)]
pub struct CofA {
    pub algebra: FiniteDimAlgebra,
    pub level: u32,
}

/// A degree-preserving algebra map given by degreewise matrices (row `j`
/// of `mats[d]` holds the image of basis element `j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAutomorphism {
    mats: Vec<Mat>,
}

impl GradedAutomorphism {
    pub fn identity(a: &TabulatedAlgebra) -> GradedAutomorphism {
        GradedAutomorphism { mats: (0..=a.truncation()).map(|d| Mat::identity(a.dim(d))).collect() }
    }

    pub fn from_matrices(mats: Vec<Mat>) -> GradedAutomorphism {
        GradedAutomorphism { mats }
    }

    /// Extends generator images multiplicatively.
    pub fn from_images(a: &TabulatedAlgebra, images: &[NcPoly]) -> Result<GradedAutomorphism, AlgebraError> {
        let imgs = images.iter().map(|p| a.eval_poly(p)).collect::<Result<Vec<_>, _>>()?;
        let gens = a.generators().ok_or(AlgebraError::NoPresentation)?;
        if imgs.len() != gens.len() {
            return Err(AlgebraError::NotDegreePreserving);
        }
        let imgs: Vec<Element> = imgs
            .into_iter()
            .enumerate()
            .map(|(g, e)| {
                let dg = gens.degree(g as Letter);
                if e.coords.iter().all(Scalar::is_zero) {
                    Element { degree: dg, coords: vec![Scalar::zero(); a.dim(dg)] }
                } else {
                    e
                }
            })
            .collect();
        Ok(GradedAutomorphism { mats: a.induced_map(&imgs)? })
    }

    pub fn matrix(&self, d: u32) -> &Mat {
        &self.mats[d as usize]
    }

    pub fn truncation(&self) -> u32 {
        self.mats.len() as u32 - 1
    }

    pub fn apply(&self, d: u32, v: &[Scalar]) -> Vec<Scalar> {
        self.mats[d as usize].left_apply(v)
    }

    pub fn is_identity(&self) -> bool {
        self.mats.iter().all(|m| *m == Mat::identity(m.rows()))
    }

    pub fn is_invertible(&self) -> bool {
        self.mats.iter().all(|m| m.rows() == 0 || m.inverse().is_some())
    }

    pub fn inverse(&self) -> Option<GradedAutomorphism> {
        let mats = self
            .mats
            .iter()
            .map(|m| if m.rows() == 0 { Some(m.clone()) } else { m.inverse() })
            .collect::<Option<Vec<_>>>()?;
        Some(GradedAutomorphism { mats })
    }

    /// Invertible in every degree and multiplicative on products with
    /// elements of generator degrees, which suffices since those generate.
    pub fn is_automorphism_of(&self, a: &TabulatedAlgebra) -> bool {
        if self.mats.len() != a.truncation() as usize + 1 || !self.is_invertible() {
            return false;
        }
        let top = a.truncation();
        for e in 1..=a.generation_degree().min(top) {
            for d in 0..=top - e {
                for i in 0..a.dim(d) {
                    for j in 0..a.dim(e) {
                        let prod = a.basis_mult(d, i, e, j);
                        let mut lhs = vec![Scalar::zero(); a.dim(d + e)];
                        let m = &self.mats[(d + e) as usize];
                        for (k, c) in prod {
                            for (o, v) in lhs.iter_mut().zip(m.row(*k)) {
                                axpy(o, c, v);
                            }
                        }
                        let rhs = a.mul(d, self.mats[d as usize].row(i), e, self.mats[e as usize].row(j));
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}
