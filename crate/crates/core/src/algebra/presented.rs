use std::collections::HashMap;
use std::sync::OnceLock;

use super::tabulated::{dense_to_sparse, GeneratorLink, RawTable};
use super::{AlgebraError, GradedAutomorphism, SparseVec, TabulatedAlgebra};
use crate::exactla::{Field, Mat, Scalar};
use crate::freealg::{GeneratorSet, Letter, NcPoly, Word};
use crate::gbasis::{buchberger_truncated, GroebnerBasis, Ideal};

/// Generators and homogeneous relations, with a Gröbner basis computed on
/// first use up to the truncation degree.
#[derive(Debug)]
pub struct PresentedAlgebra {
    gens: GeneratorSet,
    relations: Vec<NcPoly>,
    field: Field,
    truncation: u32,
    gb: OnceLock<GroebnerBasis>,
}

impl Clone for PresentedAlgebra {
    fn clone(&self) -> Self {
        PresentedAlgebra {
            gens: self.gens.clone(),
            relations: self.relations.clone(),
            field: self.field,
            truncation: self.truncation,
            gb: self.gb.clone(),
        }
    }
}

/// Outcome of checking generator images against the relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismCheck {
    pub relations_preserved: bool,
    pub invertible: bool,
    pub checked_up_to: u32,
}

impl AutomorphismCheck {
    pub fn holds(&self) -> bool {
        self.relations_preserved && self.invertible
    }
}

impl PresentedAlgebra {
    pub fn new(
        gens: GeneratorSet,
        relations: Vec<NcPoly>,
        truncation: u32,
        field: Field,
    ) -> Result<Self, AlgebraError> {
        let relations: Vec<NcPoly> = relations.iter().map(|r| r.coerce(field)).filter(|r| !r.is_zero()).collect();
        Ideal::new(gens.clone(), relations.clone())?;
        Ok(PresentedAlgebra { gens, relations, field, truncation, gb: OnceLock::new() })
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn with_truncation(&self, d: u32) -> PresentedAlgebra {
        PresentedAlgebra::new(self.gens.clone(), self.relations.clone(), d, self.field).expect("already validated")
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(self.gens.clone(), self.relations.clone()).expect("validated")
    }

    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| buchberger_truncated(&self.ideal(), self.truncation))
    }

    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly, AlgebraError> {
        Ok(self.gb().normal_form(&p.coerce(self.field))?)
    }

    pub fn parse(&self, s: &str) -> Result<NcPoly, AlgebraError> {
        Ok(crate::freealg::parse_poly(s, &self.gens)?.coerce(self.field))
    }

    /// Adds a homogeneous element to the relations.
    pub fn quotient_by_central(&self, f: &NcPoly) -> Result<PresentedAlgebra, AlgebraError> {
        if !f.is_zero() && f.homogeneous_degree().is_none() {
            return Err(AlgebraError::Inhomogeneous);
        }
        let mut rels = self.relations.clone();
        rels.push(f.clone());
        PresentedAlgebra::new(self.gens.clone(), rels, self.truncation, self.field)
    }

    /// Normal-word basis and multiplication tables up to degree `d_max`.
    pub fn tabulate(&self, d_max: u32) -> Result<TabulatedAlgebra, AlgebraError> {
        if d_max > self.truncation {
            return Err(AlgebraError::TruncationExceeded { requested: d_max, available: self.truncation });
        }
        let gb = self.gb();
        let words = gb.normal_words_upto(d_max);
        let index: Vec<HashMap<&Word, usize>> =
            words.iter().map(|ws| ws.iter().enumerate().map(|(i, w)| (w, i)).collect()).collect();
        let coords = |p: &NcPoly, d: u32| -> SparseVec {
            let mut v: SparseVec = p.terms().map(|(w, c)| (index[d as usize][w], c.clone())).collect();
            v.sort_by_key(|t| t.0);
            v
        };
        let ng = self.gens.len() as Letter;
        // left[x][e][j] = NF(x · w_j) for w_j ∈ A_e
        let mut left: Vec<Vec<Vec<SparseVec>>> = Vec::new();
        for x in 0..ng {
            let dx = self.gens.degree(x);
            let xw = self.gens.letter(x);
            let mut per = Vec::new();
            for e in 0..=d_max {
                if e + dx > d_max {
                    per.push(Vec::new());
                    continue;
                }
                per.push(
                    words[e as usize]
                        .iter()
                        .map(|w| coords(&gb.normal_form(&NcPoly::word(xw.concat(w))).expect("in range"), e + dx))
                        .collect(),
                );
            }
            left.push(per);
        }
        let dim = |d: u32| words[d as usize].len();
        let mut mult: Vec<Vec<Vec<SparseVec>>> = Vec::new();
        let mut factor: Vec<Vec<(usize, Letter)>> = vec![Vec::new()];
        for d in 0..=d_max {
            let mut row = Vec::new();
            if d > 0 {
                factor.push(
                    words[d as usize]
                        .iter()
                        .map(|u| {
                            let l = *u.letters().last().expect("positive degree");
                            let pre = self.gens.word(u.letters()[..u.len() - 1].to_vec());
                            (index[pre.degree() as usize][&pre], l)
                        })
                        .collect(),
                );
            }
            for e in 0..=d_max - d {
                let mut table = Vec::with_capacity(dim(d) * dim(e));
                for i in 0..dim(d) {
                    for j in 0..dim(e) {
                        if d == 0 {
                            table.push(vec![(j, Scalar::one())]);
                            continue;
                        }
                        // u = u'·x, so u·v = u'·NF(x·v)
                        let (pre, x) = factor[d as usize][i];
                        let dx = self.gens.degree(x);
                        let dp = d - dx;
                        let mut acc: Vec<Scalar> = vec![Scalar::zero(); dim(d + e)];
                        for (w, c) in &left[x as usize][e as usize][j] {
                            let sub: &Vec<Vec<SparseVec>> = &mult[dp as usize];
                            for (k, a) in &sub[(e + dx) as usize][pre * dim(e + dx) + w] {
                                acc[*k] += &(c * a);
                            }
                        }
                        table.push(dense_to_sparse(&acc));
                    }
                }
                row.push(table);
            }
            mult.push(row);
        }
        let labels = words.iter().map(|ws| ws.iter().map(|w| w.render(&self.gens)).collect()).collect();
        let letters = (0..ng)
            .map(|x| {
                let dx = self.gens.degree(x);
                let mut v = vec![Scalar::zero(); if dx <= d_max { dim(dx) } else { 0 }];
                if dx <= d_max {
                    let nf = gb.normal_form(&NcPoly::word(self.gens.letter(x))).expect("in range");
                    for (k, c) in coords(&nf, dx) {
                        v[k] = c;
                    }
                }
                v
            })
            .collect();
        Ok(TabulatedAlgebra::from_raw(RawTable {
            field: self.field,
            truncation: d_max,
            labels,
            mult,
            unit: vec![Scalar::one()],
            idempotents: None,
            blocks: None,
            gen_degree: Some(self.gens.max_degree().min(d_max)),
            link: Some(GeneratorLink { gens: self.gens.clone(), letters, factor: Some(factor) }),
        }))
    }

    /// Checks that generator images send every relation into the ideal and
    /// induce invertible maps in each degree up to the truncation.
    pub fn check_automorphism(&self, images: &[NcPoly]) -> Result<AutomorphismCheck, AlgebraError> {
        if images.len() != self.gens.len() {
            return Err(AlgebraError::NotDegreePreserving);
        }
        for (g, p) in images.iter().enumerate() {
            if !p.is_zero() && p.homogeneous_degree() != Some(self.gens.degree(g as Letter)) {
                return Err(AlgebraError::NotDegreePreserving);
            }
        }
        let images: Vec<NcPoly> = images.iter().map(|p| p.coerce(self.field)).collect();
        let mut relations_preserved = true;
        for r in &self.relations {
            if r.homogeneous_degree().unwrap_or(0) > self.truncation {
                continue;
            }
            if !self.normal_form(&r.substitute(&images))?.is_zero() {
                relations_preserved = false;
            }
        }
        let invertible = if relations_preserved {
            let t = self.tabulate(self.truncation)?;
            GradedAutomorphism::from_images(&t, &images)?.is_invertible()
        } else {
            // degree-one images alone decide invertibility on generators
            let t = self.tabulate(self.gens.max_degree().min(self.truncation))?;
            let imgs = images.iter().map(|p| t.eval_poly(p)).collect::<Result<Vec<_>, _>>()?;
            let m = Mat::from_rows(
                t.dim(1),
                imgs.iter()
                    .enumerate()
                    .filter(|(g, _)| self.gens.degree(*g as Letter) == 1)
                    .map(|(_, e)| if e.degree == 1 { e.coords.clone() } else { vec![Scalar::zero(); t.dim(1)] })
                    .collect(),
            );
            m.rows() == m.cols() && m.rank() == m.rows()
        };
        Ok(AutomorphismCheck { relations_preserved, invertible, checked_up_to: self.truncation })
    }

    /// Quadratic dual: dual generators with relations the annihilator of the
    /// relation space under `⟨ξη, vw⟩ = ξ(v) η(w)`.
    pub fn koszul_dual(&self) -> Result<PresentedAlgebra, AlgebraError> {
        if self.gens.degrees().iter().any(|&d| d != 1)
            || self.relations.iter().any(|r| r.homogeneous_degree() != Some(2))
        {
            return Err(AlgebraError::NotQuadratic);
        }
        let n = self.gens.len();
        let mut rel = Mat::zeros(0, n * n);
        for r in &self.relations {
            let mut row = vec![Scalar::zero(); n * n];
            for (w, c) in r.terms() {
                let l = w.letters();
                row[l[0] as usize * n + l[1] as usize] = c.clone();
            }
            rel.push_row(&row);
        }
        let perp = rel.kernel_basis();
        debug_assert_eq!(rel.rank() + perp.rows(), n * n);
        let names = dual_names(self.gens.names());
        let dual = GeneratorSet::new(names, vec![1; n])?;
        let rels = perp
            .row_vecs()
            .into_iter()
            .map(|row| {
                NcPoly::from_terms(
                    row.into_iter()
                        .enumerate()
                        .map(|(k, c)| (dual.word(vec![(k / n) as Letter, (k % n) as Letter]), c)),
                )
            })
            .collect();
        PresentedAlgebra::new(dual, rels, self.truncation, self.field)
    }
}

fn dual_names(names: &[String]) -> Vec<String> {
    let mut prefix = "d".to_string();
    loop {
        let out: Vec<String> = names.iter().map(|n| format!("{prefix}{n}")).collect();
        if out.iter().all(|o| !names.contains(o)) {
            return out;
        }
        prefix.push('d');
    }
}
