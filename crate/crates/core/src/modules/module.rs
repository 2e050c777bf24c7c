use std::sync::{Arc, OnceLock};

use super::free::{FreeLayout, Summand};
use super::resolve::Cover;
use super::ModuleError;
use crate::algebra::{GradedAutomorphism, HilbertSeries, TabulatedAlgebra};
use crate::exactla::{Echelon, Mat, Projector, Scalar};

#[derive(Clone, Debug)]
pub(crate) struct Piece {
    /// Rows in ambient coordinates; a basis of `U_d` modulo `W_d`.
    pub lifts: Mat,
    /// Rows spanning `W_d`.
    pub sub: Mat,
    proj: Projector,
}

impl Piece {
    pub fn new(lifts: Mat, sub: Mat) -> Piece {
        let proj = Projector::new(&lifts, &sub);
        Piece { lifts, sub, proj }
    }
}

/// Finite presentation `F1 → F0`: relation `j` is `Σ_i e_i · matrix[i][j]`,
/// so rows index the target basis and entry `(i, j)` lies in
/// `e_{p_i} A_{s1_j - s0_i}` (an empty coordinate vector means zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub f0: Vec<Summand>,
    pub f1: Vec<Summand>,
    pub matrix: Vec<Vec<Vec<Scalar>>>,
}

#[derive(Clone, Debug)]
pub struct GradedModule {
    alg: Arc<TabulatedAlgebra>,
    ambient: FreeLayout,
    pieces: Vec<Piece>,
    pub(crate) cover: OnceLock<Cover>,
}

pub(crate) fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

fn block_diag(a: &Mat, b: &Mat) -> Mat {
    let cols = a.cols() + b.cols();
    let mut rows = Vec::with_capacity(a.rows() + b.rows());
    for r in 0..a.rows() {
        let mut v = a.row(r).to_vec();
        v.resize(cols, Scalar::zero());
        rows.push(v);
    }
    for r in 0..b.rows() {
        let mut v = vec![Scalar::zero(); a.cols()];
        v.extend_from_slice(b.row(r));
        rows.push(v);
    }
    Mat::from_rows(cols, rows)
}

impl GradedModule {
    pub(crate) fn from_pieces(alg: Arc<TabulatedAlgebra>, ambient: FreeLayout, pieces: Vec<Piece>) -> GradedModule {
        debug_assert_eq!(pieces.len() as i32, ambient.hi() - ambient.lo() + 1);
        GradedModule { alg, ambient, pieces, cover: OnceLock::new() }
    }

    /// `⊕ e_p A(-s)` on the window `[lo, hi]`.
    pub fn free(
        alg: &Arc<TabulatedAlgebra>,
        summands: Vec<Summand>,
        lo: i32,
        hi: i32,
    ) -> Result<GradedModule, ModuleError> {
        check_summands(alg, &summands)?;
        let ambient = FreeLayout::new(alg, summands, lo, hi)?;
        let pieces = (lo..=hi)
            .map(|d| {
                let n = ambient.dim(d);
                Piece::new(Mat::identity(n), Mat::zeros(0, n))
            })
            .collect();
        Ok(GradedModule::from_pieces(alg.clone(), ambient, pieces))
    }

    /// The algebra as a right module over itself, `⊕_p e_p A`, on `[0, hi]`.
    pub fn regular(alg: &Arc<TabulatedAlgebra>, hi: i32) -> Result<GradedModule, ModuleError> {
        let summands = (0..alg.idempotents().len()).map(|p| Summand { shift: 0, idem: p }).collect();
        GradedModule::free(alg, summands, 0, hi)
    }

    /// `A / A_{≥1}`, concentrated in degree 0.
    pub fn trivial(alg: &Arc<TabulatedAlgebra>, hi: i32) -> Result<GradedModule, ModuleError> {
        let summands = (0..alg.idempotents().len()).map(|p| Summand { shift: 0, idem: p }).collect();
        let ambient = FreeLayout::new(alg, summands, 0, hi)?;
        let pieces = (0..=hi)
            .map(|d| {
                let n = ambient.dim(d);
                if d == 0 {
                    Piece::new(Mat::identity(n), Mat::zeros(0, n))
                } else {
                    Piece::new(Mat::zeros(0, n), Mat::identity(n))
                }
            })
            .collect();
        Ok(GradedModule::from_pieces(alg.clone(), ambient, pieces))
    }

    /// Quotient of the projective module on `summands` by the submodule
    /// generated by `rels` (degree, ambient coordinates).
    pub fn from_relations(
        alg: &Arc<TabulatedAlgebra>,
        summands: Vec<Summand>,
        rels: &[(i32, Vec<Scalar>)],
        lo: i32,
        hi: i32,
    ) -> Result<GradedModule, ModuleError> {
        check_summands(alg, &summands)?;
        let ambient = FreeLayout::new(alg, summands, lo, hi)?;
        let mut pieces = Vec::new();
        for d in lo..=hi {
            let n = ambient.dim(d);
            let mut w = Echelon::new(n);
            for (deg, rho) in rels {
                if *deg > d || *deg < lo {
                    continue;
                }
                let e = (d - deg) as u32;
                for b in 0..alg.dim(e) {
                    w.insert(ambient.mul(alg, *deg, rho, e, &unit_vec(alg.dim(e), b)));
                }
            }
            let comp = w.complement();
            let lifts = Mat::identity(n).select_rows(&comp);
            pieces.push(Piece::new(lifts, w.to_mat()));
        }
        Ok(GradedModule::from_pieces(alg.clone(), ambient, pieces))
    }

    /// Cokernel of a presentation, on the window `[min s0, top]`.
    pub fn from_presentation(
        alg: &Arc<TabulatedAlgebra>,
        p: &Presentation,
        top: i32,
    ) -> Result<GradedModule, ModuleError> {
        if p.matrix.len() != p.f0.len() || p.matrix.iter().any(|r| r.len() != p.f1.len()) {
            return Err(ModuleError::ShapeMismatch(format!("matrix must be {} x {}", p.f0.len(), p.f1.len())));
        }
        let lo = p.f0.iter().map(|s| s.shift).min().unwrap_or(0);
        let ambient = FreeLayout::new(alg, p.f0.clone(), lo, top.max(lo))?;
        let mut rels = Vec::new();
        for (j, s1) in p.f1.iter().enumerate() {
            if s1.shift > top {
                continue;
            }
            let mut rho = vec![Scalar::zero(); ambient.dim(s1.shift)];
            for (i, s0) in p.f0.iter().enumerate() {
                let entry = &p.matrix[i][j];
                if entry.iter().all(Scalar::is_zero) {
                    continue;
                }
                let e = s1.shift - s0.shift;
                if e < 0 || e > alg.truncation() as i32 || entry.len() != alg.dim(e as u32) {
                    return Err(ModuleError::BadEntry { row: i, col: j });
                }
                let idx = ambient.indices(s1.shift, i);
                let outside = entry.iter().enumerate().any(|(k, c)| !c.is_zero() && idx.binary_search(&k).is_err());
                if outside {
                    return Err(ModuleError::BadEntry { row: i, col: j });
                }
                let v = ambient.embed(s1.shift, i, entry);
                for (x, y) in rho.iter_mut().zip(v) {
                    *x += &y;
                }
            }
            rels.push((s1.shift, rho));
        }
        GradedModule::from_relations(alg, p.f0.clone(), &rels, lo, top.max(lo))
    }

    pub fn algebra(&self) -> &Arc<TabulatedAlgebra> {
        &self.alg
    }

    pub fn ambient(&self) -> &FreeLayout {
        &self.ambient
    }

    pub fn lo(&self) -> i32 {
        self.ambient.lo()
    }

    pub fn hi(&self) -> i32 {
        self.ambient.hi()
    }

    pub fn in_window(&self, d: i32) -> bool {
        d >= self.lo() && d <= self.hi()
    }

    pub(crate) fn piece(&self, d: i32) -> &Piece {
        &self.pieces[(d - self.lo()) as usize]
    }

    pub fn dim(&self, d: i32) -> usize {
        if self.in_window(d) {
            self.piece(d).lifts.rows()
        } else {
            0
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        (self.lo()..=self.hi()).map(|d| self.dim(d)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|p| p.lifts.rows() == 0)
    }

    pub fn hilbert(&self) -> HilbertSeries {
        HilbertSeries::new(self.lo(), self.dims().into_iter().map(|x| x as i64).collect())
    }

    /// Ambient representative of a degree-`d` element.
    pub fn lift(&self, d: i32, v: &[Scalar]) -> Vec<Scalar> {
        self.piece(d).lifts.left_apply(v)
    }

    /// Module coordinates of an ambient vector lying in `U_d`.
    pub fn coords(&self, d: i32, u: &[Scalar]) -> Vec<Scalar> {
        self.piece(d).proj.coords(u)
    }

    /// `v · a` for `v ∈ M_d`, `a ∈ A_e`; requires `d + e` inside the window.
    pub fn act(&self, d: i32, v: &[Scalar], e: u32, a: &[Scalar]) -> Vec<Scalar> {
        let t = d + e as i32;
        assert!(self.in_window(t), "action leaves the window");
        if self.dim(d) == 0 || self.dim(t) == 0 {
            return vec![Scalar::zero(); self.dim(t)];
        }
        let u = self.lift(d, v);
        let w = self.ambient.mul(&self.alg, d, &u, e, a);
        self.coords(t, &w)
    }

    /// `M(n)`, with `M(n)_d = M_{d+n}`.
    pub fn shift(&self, n: i32) -> GradedModule {
        GradedModule::from_pieces(self.alg.clone(), self.ambient.shifted(&self.alg, n), self.pieces.clone())
    }

    pub fn direct_sum(&self, other: &GradedModule) -> Result<GradedModule, ModuleError> {
        if !Arc::ptr_eq(&self.alg, &other.alg) {
            return Err(ModuleError::AlgebraMismatch);
        }
        if self.lo() != other.lo() || self.hi() != other.hi() {
            return Err(ModuleError::ShapeMismatch("direct sum needs equal windows".into()));
        }
        let mut summands = self.ambient.summands().to_vec();
        summands.extend_from_slice(other.ambient.summands());
        let ambient = FreeLayout::new(&self.alg, summands, self.lo(), self.hi())?;
        let pieces = self
            .pieces
            .iter()
            .zip(&other.pieces)
            .map(|(a, b)| Piece::new(block_diag(&a.lifts, &b.lifts), block_diag(&a.sub, &b.sub)))
            .collect();
        Ok(GradedModule::from_pieces(self.alg.clone(), ambient, pieces))
    }

    /// `M^k`.
    pub fn power(&self, k: usize) -> Result<GradedModule, ModuleError> {
        if k == 0 {
            return GradedModule::free(&self.alg, Vec::new(), self.lo(), self.hi());
        }
        let mut out = self.clone();
        for _ in 1..k {
            out = out.direct_sum(self)?;
        }
        Ok(out)
    }

    /// Same module on a sub-window, or extended downwards where the ambient
    /// module vanishes.
    pub fn restrict(&self, lo: i32, hi: i32) -> Result<GradedModule, ModuleError> {
        if hi > self.hi() || lo > hi {
            return Err(ModuleError::DegreeOutsideWindow(hi));
        }
        let ambient = self.ambient.rewindow(&self.alg, lo, hi)?;
        let mut pieces = Vec::new();
        for d in lo..=hi {
            if d < self.lo() {
                if ambient.dim(d) != 0 {
                    return Err(ModuleError::DegreeOutsideWindow(d));
                }
                pieces.push(Piece::new(Mat::zeros(0, 0), Mat::zeros(0, 0)));
            } else {
                pieces.push(self.piece(d).clone());
            }
        }
        Ok(GradedModule::from_pieces(self.alg.clone(), ambient, pieces))
    }

    /// `M_ν` with `m * a = m · ν(a)`, realised as `ν⁻¹(U) / ν⁻¹(W)`.
    pub fn twist_by_auto(&self, nu: &GradedAutomorphism) -> Result<GradedModule, ModuleError> {
        if self.alg.idempotents().len() != 1
            || nu.truncation() < self.alg.truncation()
            || !nu.is_automorphism_of(&self.alg)
        {
            return Err(ModuleError::NotAutomorphism);
        }
        if nu.is_identity() {
            return Ok(self.clone());
        }
        let inv = nu.inverse().ok_or(ModuleError::NotAutomorphism)?;
        let alg = &self.alg;
        let amb = &self.ambient;
        let transform = |d: i32, m: &Mat| -> Mat {
            let rows = m
                .row_vecs()
                .into_iter()
                .map(|row| {
                    let mut out = vec![Scalar::zero(); amb.dim(d)];
                    for j in 0..amb.summands().len() {
                        if let Some((e, comp)) = amb.component(alg, d, &row, j) {
                            let img = inv.apply(e, &comp);
                            let placed = amb.embed(d, j, &img);
                            for (x, y) in out.iter_mut().zip(placed) {
                                *x += &y;
                            }
                        }
                    }
                    out
                })
                .collect();
            Mat::from_rows(amb.dim(d), rows)
        };
        let pieces = (self.lo()..=self.hi())
            .map(|d| {
                let p = self.piece(d);
                Piece::new(transform(d, &p.lifts), transform(d, &p.sub))
            })
            .collect();
        Ok(GradedModule::from_pieces(self.alg.clone(), self.ambient.clone(), pieces))
    }

    pub fn identity_map(&self) -> ModuleMap {
        ModuleMap::new(self.lo(), (self.lo()..=self.hi()).map(|d| Mat::identity(self.dim(d))).collect())
    }

    /// Checks `(m·a)·b = m·(ab)` on basis elements with `a, b` of degree at
    /// most `bound`, and that the unit acts trivially.
    pub fn check_action(&self, bound: u32) -> bool {
        let alg = &self.alg;
        for d in self.lo()..=self.hi() {
            let nd = self.dim(d);
            for i in 0..nd {
                let m = unit_vec(nd, i);
                if self.act(d, &m, 0, alg.unit()) != m {
                    return false;
                }
                for e in 0..=bound {
                    if d + e as i32 > self.hi() {
                        break;
                    }
                    for a in 0..alg.dim(e) {
                        let ma = self.act(d, &m, e, &unit_vec(alg.dim(e), a));
                        for f in 0..=bound {
                            if d + (e + f) as i32 > self.hi() {
                                break;
                            }
                            for b in 0..alg.dim(f) {
                                let bv = unit_vec(alg.dim(f), b);
                                let left = self.act(d + e as i32, &ma, f, &bv);
                                let ab = alg.mul(e, &unit_vec(alg.dim(e), a), f, &bv);
                                if left != self.act(d, &m, e + f, &ab) {
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
}

fn check_summands(alg: &TabulatedAlgebra, summands: &[Summand]) -> Result<(), ModuleError> {
    let n = alg.idempotents().len();
    if let Some(s) = summands.iter().find(|s| s.idem >= n) {
        return Err(ModuleError::ShapeMismatch(format!("idempotent {} out of range", s.idem)));
    }
    Ok(())
}

/// Degree-preserving map given by matrices `φ_d` (row `i` = image of basis
/// element `i` of the source in degree `d`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    lo: i32,
    mats: Vec<Mat>,
}

impl ModuleMap {
    pub fn new(lo: i32, mats: Vec<Mat>) -> ModuleMap {
        ModuleMap { lo, mats }
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.mats.len() as i32 - 1
    }

    pub fn matrix(&self, d: i32) -> Option<&Mat> {
        if d < self.lo || d > self.hi() {
            None
        } else {
            Some(&self.mats[(d - self.lo) as usize])
        }
    }

    pub fn apply(&self, d: i32, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix(d).expect("degree inside map window").left_apply(v)
    }

    /// `then ∘ self` on the common window.
    pub fn compose(&self, then: &ModuleMap) -> ModuleMap {
        let lo = self.lo.max(then.lo);
        let hi = self.hi().min(then.hi());
        let mats = (lo..=hi).map(|d| self.matrix(d).unwrap().mul(then.matrix(d).unwrap())).collect();
        ModuleMap::new(lo, mats)
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let lo = self.lo.max(other.lo);
        let hi = self.hi().min(other.hi());
        let mats = (lo..=hi)
            .map(|d| {
                let (a, b) = (self.matrix(d).unwrap(), other.matrix(d).unwrap());
                let rows = (0..a.rows()).map(|r| a.row(r).iter().zip(b.row(r)).map(|(x, y)| x + y).collect()).collect();
                Mat::from_rows(a.cols(), rows)
            })
            .collect();
        ModuleMap::new(lo, mats)
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(Mat::is_zero)
    }

    pub fn is_bijective(&self) -> bool {
        self.mats.iter().all(|m| m.rows() == m.cols() && m.rank() == m.rows())
    }

    /// `φ(m·a) = φ(m)·a` for all basis `m` and `a` of degree at most `bound`.
    pub fn commutes(&self, src: &GradedModule, tgt: &GradedModule, bound: u32) -> bool {
        let alg = src.algebra();
        for d in self.lo..=self.hi() {
            for i in 0..src.dim(d) {
                let m = unit_vec(src.dim(d), i);
                let fm = self.apply(d, &m);
                for e in 0..=bound {
                    let t = d + e as i32;
                    if t > self.hi() {
                        break;
                    }
                    for a in 0..alg.dim(e) {
                        let av = unit_vec(alg.dim(e), a);
                        if self.apply(t, &src.act(d, &m, e, &av)) != tgt.act(d, &fm, e, &av) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn kernel(&self, src: &GradedModule) -> Result<GradedModule, ModuleError> {
        if self.lo != src.lo() || self.hi() != src.hi() {
            return Err(ModuleError::ShapeMismatch("map window differs from source window".into()));
        }
        let pieces = (src.lo()..=src.hi())
            .map(|d| {
                let p = src.piece(d);
                let k = self.matrix(d).unwrap().left_kernel();
                Piece::new(k.mul(&p.lifts), p.sub.clone())
            })
            .collect();
        Ok(GradedModule::from_pieces(src.algebra().clone(), src.ambient().clone(), pieces))
    }

    pub fn cokernel(&self, tgt: &GradedModule) -> Result<GradedModule, ModuleError> {
        if self.lo != tgt.lo() || self.hi() != tgt.hi() {
            return Err(ModuleError::ShapeMismatch("map window differs from target window".into()));
        }
        let pieces = (tgt.lo()..=tgt.hi())
            .map(|d| {
                let p = tgt.piece(d);
                let im = Echelon::from_mat(self.matrix(d).unwrap());
                let lifts = p.lifts.select_rows(&im.complement());
                let sub = p.sub.vstack(&im.to_mat().mul(&p.lifts));
                Piece::new(lifts, sub)
            })
            .collect();
        Ok(GradedModule::from_pieces(tgt.algebra().clone(), tgt.ambient().clone(), pieces))
    }
}
