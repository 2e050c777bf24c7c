//! Minimal generators, projective covers, syzygies and resolutions.

use super::free::{FreeLayout, Summand};
use super::module::{unit_vec, GradedModule, Piece};
use crate::exactla::{Echelon, Mat, Scalar};

/// A generator of degree `degree` lying in `M_degree · e_idem`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub degree: i32,
    pub idem: usize,
    pub coords: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub(crate) struct Cover {
    pub gens: Vec<Generator>,
    pub layout: FreeLayout,
    /// `maps[d]`: rows = basis of the cover in degree `d`, columns = `M_d`.
    pub maps: Vec<Mat>,
    /// `sections[d]`: a right inverse of `maps[d]`.
    pub sections: Vec<Mat>,
    /// Basis of `(M·J)_d` where `J = rad(A_0) ⊕ A_{≥1}`.
    pub radical: Vec<Mat>,
}

impl GradedModule {
    /// Basis of `(M·J)_d` for every degree of the window.
    fn radical_parts(&self) -> Vec<Echelon> {
        let alg = self.algebra().clone();
        let rad = alg.degree_zero().radical_basis();
        let gdeg = alg.generation_degree();
        let mut out = Vec::new();
        for d in self.lo()..=self.hi() {
            let nd = self.dim(d);
            let mut mj = Echelon::new(nd);
            if nd > 0 {
                'fill: {
                    for i in 0..nd {
                        for r in 0..rad.rows() {
                            mj.insert(self.act(d, &unit_vec(nd, i), 0, rad.row(r)));
                        }
                    }
                    for e in 1..=gdeg {
                        let src = d - e as i32;
                        if src < self.lo() {
                            break;
                        }
                        for i in 0..self.dim(src) {
                            for b in 0..alg.dim(e) {
                                if mj.rank() == nd {
                                    break 'fill;
                                }
                                mj.insert(self.act(src, &unit_vec(self.dim(src), i), e, &unit_vec(alg.dim(e), b)));
                            }
                        }
                    }
                }
            }
            out.push(mj);
        }
        out
    }

    /// Vectors spanning `M_d · e_p`.
    pub(crate) fn idempotent_part(&self, d: i32, p: usize) -> Mat {
        let nd = self.dim(d);
        let ids = self.algebra().idempotents();
        if ids.len() == 1 {
            return Mat::identity(nd);
        }
        Mat::from_rows(nd, (0..nd).map(|i| self.act(d, &unit_vec(nd, i), 0, &ids[p])).collect())
    }

    fn minimal_generators(&self, radical: &[Echelon]) -> Vec<Generator> {
        let nidem = self.algebra().idempotents().len();
        let mut gens = Vec::new();
        for d in self.lo()..=self.hi() {
            let mj = &radical[(d - self.lo()) as usize];
            if mj.rank() == self.dim(d) {
                continue;
            }
            for p in 0..nidem {
                let cand = self.idempotent_part(d, p);
                let mut base = if nidem == 1 {
                    mj.clone()
                } else {
                    let ep = &self.algebra().idempotents()[p];
                    let rows = mj.to_mat();
                    let mut e = Echelon::new(self.dim(d));
                    for r in 0..rows.rows() {
                        e.insert(self.act(d, rows.row(r), 0, ep));
                    }
                    e
                };
                for i in 0..cand.rows() {
                    if base.insert(cand.row(i).to_vec()) {
                        gens.push(Generator { degree: d, idem: p, coords: cand.row(i).to_vec() });
                    }
                }
            }
        }
        gens
    }

    pub(crate) fn build_cover(&self, gens: Vec<Generator>, radical: Vec<Mat>) -> Cover {
        let alg = self.algebra().clone();
        let summands: Vec<Summand> = gens.iter().map(|g| Summand { shift: g.degree, idem: g.idem }).collect();
        let layout =
            FreeLayout::new(&alg, summands, self.lo(), self.hi()).expect("generators lie above the ambient shifts");
        let mut maps = Vec::new();
        let mut sections = Vec::new();
        for d in self.lo()..=self.hi() {
            let nd = self.dim(d);
            let mut rows = Vec::with_capacity(layout.dim(d));
            for (j, g) in gens.iter().enumerate() {
                let e = d - g.degree;
                for &k in layout.indices(d, j) {
                    rows.push(self.act(g.degree, &g.coords, e as u32, &unit_vec(alg.dim(e as u32), k)));
                }
            }
            let c = Mat::from_rows(nd, rows);
            let mut ech = Echelon::new(nd);
            let idx: Vec<usize> = (0..c.rows()).filter(|&r| ech.insert(c.row(r).to_vec())).collect();
            assert_eq!(idx.len(), nd, "generators do not span degree {d}");
            let inv = c.select_rows(&idx).inverse().expect("independent rows");
            let mut s = Mat::zeros(nd, c.rows());
            for r in 0..nd {
                for (t, &k) in idx.iter().enumerate() {
                    s.set(r, k, inv.get(r, t).clone());
                }
            }
            maps.push(c);
            sections.push(s);
        }
        Cover { gens, layout, maps, sections, radical }
    }

    pub(crate) fn cover(&self) -> &Cover {
        self.cover.get_or_init(|| {
            let radical = self.radical_parts();
            let gens = self.minimal_generators(&radical);
            self.build_cover(gens, radical.iter().map(Echelon::to_mat).collect())
        })
    }

    /// Minimal generators modulo the graded radical, in degree order.
    pub fn generators(&self) -> &[Generator] {
        &self.cover().gens
    }

    /// `(degree, idempotent)` of each minimal generator.
    pub fn generator_degrees(&self) -> Vec<(i32, usize)> {
        self.generators().iter().map(|g| (g.degree, g.idem)).collect()
    }

    /// Preimage in the cover of a degree-`d` element.
    pub fn cover_preimage(&self, d: i32, v: &[Scalar]) -> Vec<Scalar> {
        self.cover().sections[(d - self.lo()) as usize].left_apply(v)
    }

    /// The projective cover as a module.
    pub fn cover_module(&self) -> GradedModule {
        let c = self.cover();
        GradedModule::free(self.algebra(), c.layout.summands().to_vec(), self.lo(), self.hi()).expect("valid layout")
    }

    /// Kernel of the minimal cover.
    pub fn syzygy(&self) -> GradedModule {
        kernel_of_cover(self, self.cover())
    }

    /// Whether generators reach the top degree of the window, in which case
    /// more may lie beyond it.
    pub fn generators_at_top(&self) -> bool {
        self.generators().iter().any(|g| g.degree == self.hi())
    }
}

fn kernel_of_cover(m: &GradedModule, cover: &Cover) -> GradedModule {
    let pieces = (m.lo()..=m.hi())
        .map(|d| {
            let c = &cover.maps[(d - m.lo()) as usize];
            Piece::new(c.left_kernel(), Mat::zeros(0, c.rows()))
        })
        .collect();
    GradedModule::from_pieces(m.algebra().clone(), cover.layout.clone(), pieces)
}

/// One term `P_q` of a resolution.
#[derive(Clone, Debug)]
pub struct ResolutionStep {
    pub gens: Vec<Summand>,
    pub layout: FreeLayout,
    /// Image of each generator: in the module for `q = 0`, otherwise in
    /// `P_{q-1}` at the generator's degree.
    pub images: Vec<Vec<Scalar>>,
    /// False when the syzygy had generators at the top of the window.
    pub trusted: bool,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub lo: i32,
    pub hi: i32,
    pub steps: Vec<ResolutionStep>,
    /// A syzygy vanished inside the window.
    pub terminated: bool,
    /// Dimensions of the last computed syzygy `Ω^{h+1}` (zero if terminated).
    pub tail: Vec<usize>,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.steps.len()
    }

    /// Generator degrees of each term.
    pub fn betti(&self) -> Vec<Vec<i32>> {
        self.steps.iter().map(|s| s.gens.iter().map(|g| g.shift).collect()).collect()
    }

    pub fn step(&self, q: usize) -> Option<&ResolutionStep> {
        self.steps.get(q)
    }

    /// `Σ_q (-1)^q dim P_q,d` for each degree of the window.
    pub fn euler_characteristic(&self) -> Vec<i64> {
        (self.lo..=self.hi)
            .map(|d| {
                self.steps
                    .iter()
                    .enumerate()
                    .map(|(q, s)| if q % 2 == 0 { 1 } else { -1 } * s.layout.dim(d) as i64)
                    .sum()
            })
            .collect()
    }
}

impl GradedModule {
    /// Minimal resolution up to homological degree `h`.
    pub fn resolve(&self, h: usize) -> Resolution {
        self.resolve_padded(h, None)
    }

    /// Resolution in which step `pad` (if given) carries a superfluous copy of
    /// its first generator, making it non-minimal.
    pub fn resolve_padded(&self, h: usize, pad: Option<usize>) -> Resolution {
        let mut steps = Vec::new();
        let mut cur = self.clone();
        let mut terminated = false;
        let mut tail = vec![0; (self.hi() - self.lo() + 1) as usize];
        for q in 0..=h {
            let minimal = cur.cover();
            let cover = match pad {
                Some(p) if p == q && !minimal.gens.is_empty() => {
                    let mut gens = minimal.gens.clone();
                    gens.push(gens[0].clone());
                    gens.sort_by_key(|g| (g.degree, g.idem));
                    cur.build_cover(gens, minimal.radical.clone())
                }
                _ => minimal.clone(),
            };
            let images = cover
                .gens
                .iter()
                .map(|g| if q == 0 { g.coords.clone() } else { cur.lift(g.degree, &g.coords) })
                .collect();
            let trusted = !cover.gens.iter().any(|g| g.degree == cur.hi());
            let empty = cover.gens.is_empty();
            steps.push(ResolutionStep {
                gens: cover.layout.summands().to_vec(),
                layout: cover.layout.clone(),
                images,
                trusted,
            });
            if empty {
                terminated = true;
                break;
            }
            let next = kernel_of_cover(&cur, &cover);
            if q == h {
                tail = next.dims();
            }
            cur = next;
        }
        if terminated {
            tail = vec![0; tail.len()];
        }
        Resolution { lo: self.lo(), hi: self.hi(), steps, terminated, tail }
    }
}
