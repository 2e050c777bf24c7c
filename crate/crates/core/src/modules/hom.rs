//! Graded Hom and Ext through the Hom complex of a resolution.

use super::module::{unit_vec, GradedModule, ModuleMap};
use super::resolve::Resolution;
use super::ModuleError;
use crate::algebra::HilbertSeries;
use crate::exactla::{Echelon, Mat, Projector, Scalar};

/// Dimensions per internal degree, with a flag for rows whose value does
/// not depend on anything outside the windows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTable {
    pub q: usize,
    pub lo: i32,
    pub dims: Vec<usize>,
    pub certified: Vec<bool>,
}

impl DegreeTable {
    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn get(&self, n: i32) -> Option<(usize, bool)> {
        if n < self.lo || n > self.hi() {
            return None;
        }
        let i = (n - self.lo) as usize;
        Some((self.dims[i], self.certified[i]))
    }

    /// Value at `n`, only if certified.
    pub fn certified_dim(&self, n: i32) -> Option<usize> {
        self.get(n).and_then(|(d, c)| c.then_some(d))
    }

    /// Largest `k` such that every row in `[lo, k]` is certified.
    pub fn certified_up_to(&self) -> Option<i32> {
        let mut last = None;
        for (i, c) in self.certified.iter().enumerate() {
            if !c {
                break;
            }
            last = Some(self.lo + i as i32);
        }
        last
    }

    /// Series built from the certified prefix.
    pub fn series(&self) -> HilbertSeries {
        let n = self.certified.iter().take_while(|c| **c).count();
        HilbertSeries::new(self.lo, self.dims[..n].iter().map(|&x| x as i64).collect())
    }

    pub fn is_zero_where_certified(&self) -> bool {
        self.dims.iter().zip(&self.certified).all(|(d, c)| !c || *d == 0)
    }
}

/// One summand of `Hom(P_q, N)_n = ⊕_i N_{g_i + n} e_{p_i}`.
struct Block {
    deg: i32,
    /// `None`: all of `N_deg`; otherwise a basis of `N_deg e_p`.
    basis: Option<(Mat, Projector)>,
    dim: usize,
    /// Whether `deg` is at most the top of `N`'s window.
    visible: bool,
}

struct Cochains<'a> {
    res: &'a Resolution,
    n: &'a GradedModule,
}

impl<'a> Cochains<'a> {
    fn space(&self, q: usize, deg: i32) -> Vec<Block> {
        let Some(step) = self.res.step(q) else {
            return Vec::new();
        };
        let multi = self.n.algebra().idempotents().len() > 1;
        step.gens
            .iter()
            .map(|g| {
                let t = g.shift + deg;
                let visible = t <= self.n.hi();
                if !self.n.in_window(t) || self.n.dim(t) == 0 {
                    return Block { deg: t, basis: None, dim: 0, visible };
                }
                if !multi {
                    return Block { deg: t, basis: None, dim: self.n.dim(t), visible };
                }
                let b = Echelon::from_mat(&self.n.idempotent_part(t, g.idem)).to_mat();
                let proj = Projector::new(&b, &Mat::zeros(0, b.cols()));
                Block { deg: t, dim: b.rows(), basis: Some((b, proj)), visible }
            })
            .collect()
    }

    fn block_vector(&self, b: &Block, k: usize) -> Vec<Scalar> {
        match &b.basis {
            None => unit_vec(b.dim, k),
            Some((m, _)) => m.row(k).to_vec(),
        }
    }

    /// `D_q : Hom(P_{q-1}, N) → Hom(P_q, N)` in degree `deg`, rows = source basis.
    fn differential(&self, q: usize, deg: i32) -> Mat {
        let src = self.space(q - 1, deg);
        let tgt = self.space(q, deg);
        let ncols: usize = tgt.iter().map(|b| b.dim).sum();
        let nrows: usize = src.iter().map(|b| b.dim).sum();
        let mut out = Mat::zeros(nrows, ncols);
        let Some(step) = self.res.step(q) else {
            return out;
        };
        let prev = &self.res.steps[q - 1];
        let alg = self.n.algebra();
        let mut col_off = 0;
        for (j, tb) in tgt.iter().enumerate() {
            if tb.dim > 0 {
                let gdeg = step.gens[j].shift;
                let mut row_off = 0;
                for (i, sb) in src.iter().enumerate() {
                    if sb.dim > 0 {
                        if let Some((e, a)) = prev.layout.component(alg, gdeg, &step.images[j], i) {
                            if a.iter().any(|c| !c.is_zero()) {
                                for k in 0..sb.dim {
                                    let v = self.block_vector(sb, k);
                                    let w = self.n.act(sb.deg, &v, e, &a);
                                    let w = match &tb.basis {
                                        None => w,
                                        Some((_, p)) => p.coords(&w),
                                    };
                                    for (c, x) in w.into_iter().enumerate() {
                                        out.set(row_off + k, col_off + c, x);
                                    }
                                }
                            }
                        }
                    }
                    row_off += sb.dim;
                }
            }
            col_off += tb.dim;
        }
        out
    }

    fn rank_d(&self, q: usize, deg: i32) -> usize {
        if q == 0 || self.res.step(q).is_none() {
            return 0;
        }
        self.differential(q, deg).rank()
    }

    fn visible_and_trusted(&self, q: usize, deg: i32) -> bool {
        match self.res.step(q) {
            None => self.res.terminated,
            Some(s) => s.trusted && self.space(q, deg).iter().all(|b| b.visible),
        }
    }

    fn certified(&self, q: usize, deg: i32) -> bool {
        let lower = q == 0 || self.visible_and_trusted(q - 1, deg);
        lower && self.visible_and_trusted(q, deg) && self.visible_and_trusted(q + 1, deg)
    }

    fn ext_dim(&self, q: usize, deg: i32) -> usize {
        let c: usize = self.space(q, deg).iter().map(|b| b.dim).sum();
        c - self.rank_d(q + 1, deg) - self.rank_d(q, deg)
    }
}

impl Resolution {
    /// `dim Ext^q(M, N)_n` for `n ∈ [lo, hi]` (`q = 0` gives graded Hom).
    pub fn ext_table(&self, n: &GradedModule, q: usize, lo: i32, hi: i32) -> DegreeTable {
        let c = Cochains { res: self, n };
        let mut dims = Vec::new();
        let mut certified = Vec::new();
        for deg in lo..=hi {
            dims.push(c.ext_dim(q, deg));
            certified.push(c.certified(q, deg));
        }
        DegreeTable { q, lo, dims, certified }
    }

    /// Degrees outside which every `Hom(P_k, N)` with `k ∈ {q-1, q, q+1}` vanishes.
    pub fn relevant_degrees(&self, n: &GradedModule, q: usize) -> (i32, i32) {
        let ks = [q.saturating_sub(1), q, q + 1];
        let degs: Vec<i32> =
            ks.iter().filter_map(|&k| self.step(k)).flat_map(|s| s.gens.iter().map(|g| g.shift)).collect();
        let gmin = degs.iter().copied().min().unwrap_or(0);
        let gmax = degs.iter().copied().max().unwrap_or(0);
        (n.lo() - gmax, n.hi() - gmin)
    }
}

fn same_algebra(m: &GradedModule, n: &GradedModule) -> Result<(), ModuleError> {
    if std::sync::Arc::ptr_eq(m.algebra(), n.algebra()) {
        Ok(())
    } else {
        Err(ModuleError::AlgebraMismatch)
    }
}

/// `dim Hom(M, N(n))_0` for `n ∈ [lo, hi]`.
pub fn hom_graded(m: &GradedModule, n: &GradedModule, lo: i32, hi: i32) -> Result<DegreeTable, ModuleError> {
    same_algebra(m, n)?;
    Ok(m.resolve(1).ext_table(n, 0, lo, hi))
}

/// `dim Ext^q(M, N)_n` for `n ∈ [lo, hi]`.
pub fn ext_graded(m: &GradedModule, n: &GradedModule, q: usize, lo: i32, hi: i32) -> Result<DegreeTable, ModuleError> {
    same_algebra(m, n)?;
    Ok(m.resolve(q + 1).ext_table(n, q, lo, hi))
}

/// Basis of `Hom(M, N)_n`, each map given by the images of the minimal
/// generators of `M` (image `i` lies in `N_{g_i + n}`).
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub degree: i32,
    pub maps: Vec<Vec<Vec<Scalar>>>,
    pub certified: bool,
}

pub fn hom_basis(m: &GradedModule, n: &GradedModule, deg: i32) -> Result<HomBasis, ModuleError> {
    same_algebra(m, n)?;
    let res = m.resolve(1);
    let c = Cochains { res: &res, n };
    let space = c.space(0, deg);
    let d1 =
        if res.step(1).is_some() { c.differential(1, deg) } else { Mat::zeros(space.iter().map(|b| b.dim).sum(), 0) };
    let ker = d1.left_kernel();
    let maps = ker
        .row_vecs()
        .into_iter()
        .map(|v| {
            let mut off = 0;
            space
                .iter()
                .map(|b| {
                    let part = &v[off..off + b.dim];
                    off += b.dim;
                    match &b.basis {
                        None => {
                            if b.dim == 0 {
                                vec![Scalar::zero(); n.dim(b.deg)]
                            } else {
                                part.to_vec()
                            }
                        }
                        Some((basis, _)) => basis.left_apply(part),
                    }
                })
                .collect()
        })
        .collect();
    Ok(HomBasis { degree: deg, maps, certified: c.certified(0, deg) })
}

/// Degreewise matrix of the map `M → N(n)` with the given generator images,
/// in source degree `d`.
pub(crate) fn map_matrix(m: &GradedModule, n: &GradedModule, shift: i32, images: &[Vec<Scalar>], d: i32) -> Mat {
    let alg = m.algebra();
    let t = d + shift;
    let nt = n.dim(t);
    let cover = m.cover();
    let layout = &cover.layout;
    let mut rows = Vec::with_capacity(layout.dim(d));
    for (j, g) in cover.gens.iter().enumerate() {
        let e = d - g.degree;
        for &k in layout.indices(d, j) {
            let a = unit_vec(alg.dim(e as u32), k);
            let src = g.degree + shift;
            if n.dim(src) == 0 || nt == 0 {
                rows.push(vec![Scalar::zero(); nt]);
            } else {
                rows.push(n.act(src, &images[j], e as u32, &a));
            }
        }
    }
    let img = Mat::from_rows(nt, rows);
    cover.sections[(d - m.lo()) as usize].mul(&img)
}

impl GradedModule {
    /// The map `M → N(n)` with the given generator images, on the degrees
    /// where both sides are inside their windows.
    pub fn map_from_images(&self, n: &GradedModule, shift: i32, images: &[Vec<Scalar>]) -> ModuleMap {
        let lo = self.lo().max(n.lo() - shift);
        let hi = self.hi().min(n.hi() - shift);
        ModuleMap::new(lo, (lo..=hi).map(|d| map_matrix(self, n, shift, images, d)).collect())
    }
}

/// Outcome of the maximal Cohen–Macaulay test `Ext^i(M, A) = 0`, `1 ≤ i ≤ h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McmVerdict {
    pub mcm: bool,
    /// Nonzero certified rows `(i, degree, dim)`.
    pub witnesses: Vec<(usize, i32, usize)>,
    /// Every relevant row was certified.
    pub fully_certified: bool,
}

pub fn mcm_check(m: &GradedModule, a: &GradedModule, h: usize) -> Result<McmVerdict, ModuleError> {
    same_algebra(m, a)?;
    let res = m.resolve(h + 1);
    let mut witnesses = Vec::new();
    let mut fully = true;
    for q in 1..=h {
        let (lo, hi) = res.relevant_degrees(a, q);
        let t = res.ext_table(a, q, lo, hi);
        for (k, (&d, &c)) in t.dims.iter().zip(&t.certified).enumerate() {
            if !c {
                fully = false;
            } else if d != 0 {
                witnesses.push((q, lo + k as i32, d));
            }
        }
    }
    Ok(McmVerdict { mcm: witnesses.is_empty(), witnesses, fully_certified: fully })
}
