//! Degree-truncated reduced two-sided Gröbner bases of homogeneous ideals.
//!
//! Completion runs degree by degree. At degree `d` the new ideal generators
//! and all overlap obstructions whose overlap word has degree `d` are reduced
//! against the basis found so far and then row-reduced together; the nonzero
//! rows become the new, already inter-reduced, basis elements.

use std::collections::{BTreeMap, HashMap};

use crate::exactla::{Mat, Scalar};
use crate::freealg::{GeneratorSet, Letter, NcPoly, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GbError {
    #[error("degree {degree} exceeds truncation {truncation}")]
    DegreeExceedsTruncation { degree: u32, truncation: u32 },
    #[error("ideal generator {0} is not homogeneous of positive degree")]
    NotHomogeneous(usize),
}

/// A two-sided ideal given by homogeneous generators.
#[derive(Clone, Debug)]
pub struct Ideal {
    gens: GeneratorSet,
    elements: Vec<NcPoly>,
}

impl Ideal {
    pub fn new(gens: GeneratorSet, elements: Vec<NcPoly>) -> Result<Ideal, GbError> {
        let mut kept = Vec::new();
        for (i, e) in elements.into_iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            match e.homogeneous_degree() {
                Some(d) if d >= 1 => kept.push(e),
                _ => return Err(GbError::NotHomogeneous(i)),
            }
        }
        Ok(Ideal { gens, elements: kept })
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn elements(&self) -> &[NcPoly] {
        &self.elements
    }

    pub fn max_degree(&self) -> u32 {
        self.elements.iter().filter_map(NcPoly::homogeneous_degree).max().unwrap_or(0)
    }
}

/// Reduced monic Gröbner basis, complete for all degrees up to `truncation`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    gens: GeneratorSet,
    elements: Vec<NcPoly>,
    truncation: u32,
    leads: HashMap<Vec<Letter>, usize>,
    lead_lens: Vec<usize>,
}

impl GroebnerBasis {
    fn empty(gens: GeneratorSet, truncation: u32) -> GroebnerBasis {
        GroebnerBasis { gens, elements: Vec::new(), truncation, leads: HashMap::new(), lead_lens: Vec::new() }
    }

    fn push(&mut self, p: NcPoly) {
        let lead = p.lead().expect("nonzero basis element").0.letters().to_vec();
        if !self.lead_lens.contains(&lead.len()) {
            self.lead_lens.push(lead.len());
            self.lead_lens.sort_unstable();
        }
        self.leads.insert(lead, self.elements.len());
        self.elements.push(p);
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn elements(&self) -> &[NcPoly] {
        &self.elements
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn lead_words(&self) -> impl Iterator<Item = &Word> {
        self.elements.iter().map(|e| e.lead().expect("nonzero").0)
    }

    /// Leftmost occurrence of a lead word in `w`: (start, element index).
    fn find_lead(&self, w: &[Letter]) -> Option<(usize, usize)> {
        for i in 0..w.len() {
            for &l in &self.lead_lens {
                if i + l > w.len() {
                    break;
                }
                if let Some(&e) = self.leads.get(&w[i..i + l]) {
                    return Some((i, e));
                }
            }
        }
        None
    }

    /// True when `w` ends with a lead word.
    fn has_lead_suffix(&self, w: &[Letter]) -> bool {
        self.lead_lens.iter().any(|&l| l <= w.len() && self.leads.contains_key(&w[w.len() - l..]))
    }

    fn check_degree(&self, d: u32) -> Result<(), GbError> {
        if d > self.truncation {
            Err(GbError::DegreeExceedsTruncation { degree: d, truncation: self.truncation })
        } else {
            Ok(())
        }
    }

    /// Normal form: repeatedly rewrites the largest remaining term at its
    /// leftmost lead-word occurrence.
    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly, GbError> {
        if let Some((w, _)) = p.lead() {
            self.check_degree(w.degree())?;
        }
        Ok(self.reduce(p.clone()))
    }

    fn reduce(&self, mut work: NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        while let Some((w, c)) = work.pop_lead() {
            match self.find_lead(w.letters()) {
                None => out.add_term(w, &c),
                Some((start, e)) => {
                    let g = &self.elements[e];
                    let glead = g.lead().expect("nonzero").0;
                    let (left, right) = w.split_around(&self.gens, start, glead.len());
                    let neg = -&c;
                    for (t, a) in g.terms().rev().skip(1) {
                        work.add_term(left.concat(t).concat(&right), &(a * &neg));
                    }
                }
            }
        }
        out
    }

    /// Words of degree `d` containing no lead word, in increasing order.
    pub fn normal_words(&self, d: u32) -> Result<Vec<Word>, GbError> {
        self.check_degree(d)?;
        Ok(self.normal_words_upto(d).pop().unwrap_or_default())
    }

    /// Normal words for every degree `0..=d`.
    pub fn normal_words_upto(&self, d: u32) -> Vec<Vec<Word>> {
        let mut by_deg: Vec<Vec<Vec<Letter>>> = vec![vec![vec![]]];
        for e in 1..=d {
            let mut out = Vec::new();
            for g in 0..self.gens.len() as Letter {
                let dg = self.gens.degree(g);
                if dg > e {
                    continue;
                }
                for w in &by_deg[(e - dg) as usize] {
                    let mut v = w.clone();
                    v.push(g);
                    if !self.has_lead_suffix(&v) {
                        out.push(v);
                    }
                }
            }
            by_deg.push(out);
        }
        by_deg
            .into_iter()
            .map(|ws| {
                let mut ws: Vec<Word> = ws.into_iter().map(|l| self.gens.word(l)).collect();
                ws.sort();
                ws
            })
            .collect()
    }
}

/// Overlap obstructions between basis elements `i` and `j` whose overlap word
/// has degree exactly `d`: `g_i · r - l · g_j` where `lead_i · r = l · lead_j`.
fn obstructions(gb: &GroebnerBasis, i: usize, j: usize, d: u32, out: &mut Vec<NcPoly>) {
    let gi = &gb.elements[i];
    let gj = &gb.elements[j];
    let a = gi.lead().expect("nonzero").0.letters();
    let b = gj.lead().expect("nonzero").0.letters();
    let gens = &gb.gens;
    for k in 1..a.len().min(b.len()) {
        if a[a.len() - k..] != b[..k] {
            continue;
        }
        let r = gens.word(b[k..].to_vec());
        let l = gens.word(a[..a.len() - k].to_vec());
        if gi.lead().expect("nonzero").0.degree() + r.degree() != d {
            continue;
        }
        let mut s = NcPoly::zero();
        gi.add_sandwich(&mut s, &Scalar::one(), &Word::empty(), &r);
        gj.add_sandwich(&mut s, &-Scalar::one(), &l, &Word::empty());
        out.push(s);
    }
}

/// Completes the ideal to a reduced Gröbner basis valid up to degree `d_max`.
pub fn buchberger_truncated(ideal: &Ideal, d_max: u32) -> GroebnerBasis {
    let mut gb = GroebnerBasis::empty(ideal.gens.clone(), d_max);
    let mut by_deg: BTreeMap<u32, Vec<&NcPoly>> = BTreeMap::new();
    for e in &ideal.elements {
        by_deg.entry(e.homogeneous_degree().expect("homogeneous")).or_default().push(e);
    }
    for d in 1..=d_max {
        let mut cand: Vec<NcPoly> = by_deg.get(&d).into_iter().flatten().map(|p| (*p).clone()).collect();
        let n = gb.elements.len();
        for i in 0..n {
            for j in 0..n {
                obstructions(&gb, i, j, d, &mut cand);
            }
        }
        let reduced: Vec<NcPoly> = cand.into_iter().map(|p| gb.reduce(p)).filter(|p| !p.is_zero()).collect();
        if reduced.is_empty() {
            continue;
        }
        for p in echelon(&reduced) {
            gb.push(p);
        }
    }
    gb
}

/// Fully reduced echelon basis of the span of homogeneous polynomials with
/// columns in decreasing monomial order; rows come back monic.
fn echelon(polys: &[NcPoly]) -> Vec<NcPoly> {
    let mut cols: Vec<Word> = polys.iter().flat_map(|p| p.terms().map(|(w, _)| w.clone())).collect();
    cols.sort_by(|a, b| b.cmp(a));
    cols.dedup();
    let index: HashMap<&Word, usize> = cols.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut m = Mat::zeros(polys.len(), cols.len());
    for (r, p) in polys.iter().enumerate() {
        for (w, c) in p.terms() {
            m.set(r, index[w], c.clone());
        }
    }
    let (red, piv) = m.rref();
    (0..piv.len())
        .map(|r| NcPoly::from_terms(red.row(r).iter().enumerate().map(|(c, v)| (cols[c].clone(), v.clone()))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse_poly;

    fn ideal(names: &[&str], rels: &[&str]) -> Ideal {
        let g = GeneratorSet::standard(names);
        let ps = rels.iter().map(|r| parse_poly(r, &g).unwrap()).collect();
        Ideal::new(g, ps).unwrap()
    }

    const COMM: [&str; 6] = ["x*y - y*x", "x*z - z*x", "x*w - w*x", "y*z - z*y", "y*w - w*y", "z*w - w*z"];

    #[test]
    fn commutative_basis_is_stable() {
        let i = ideal(&["x", "y", "z", "w"], &COMM);
        let gb = buchberger_truncated(&i, 8);
        assert_eq!(gb.elements().len(), 6);
        let g = gb.gens().clone();
        let yx = parse_poly("y*x", &g).unwrap();
        assert_eq!(gb.normal_form(&yx).unwrap(), parse_poly("x*y", &g).unwrap());
        assert_eq!(gb.normal_words(3).unwrap().len(), 20);
        assert_eq!(gb.normal_words(0).unwrap(), vec![Word::empty()]);
    }

    #[test]
    fn quadric_counts() {
        let mut rels = COMM.to_vec();
        rels.push("x*w - y*z");
        let gb = buchberger_truncated(&ideal(&["x", "y", "z", "w"], &rels), 8);
        let counts: Vec<usize> = gb.normal_words_upto(4).iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 4, 9, 16, 25]);
    }

    #[test]
    fn cubic_counts() {
        let gb = buchberger_truncated(&ideal(&["x", "y"], &["x^2*y - y*x^2", "x*y^2 - y^2*x"]), 8);
        let counts: Vec<usize> = gb.normal_words_upto(5).iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 2, 4, 6, 9, 12]);
    }

    #[test]
    fn truncation_is_enforced() {
        let i = ideal(&["x", "y"], &["x*y - y*x"]);
        let gb = buchberger_truncated(&i, 3);
        let p = parse_poly("x^4", gb.gens()).unwrap();
        assert!(matches!(gb.normal_form(&p), Err(GbError::DegreeExceedsTruncation { .. })));
        assert!(gb.normal_words(4).is_err());
    }

    #[test]
    fn inhomogeneous_rejected() {
        let g = GeneratorSet::standard(&["x"]);
        let p = parse_poly("x^2 - x", &g).unwrap();
        assert!(matches!(Ideal::new(g, vec![p]), Err(GbError::NotHomogeneous(0))));
    }
}
