#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use qhelix::algebra::PresentedAlgebra;
use qhelix::exactla::{Field, Scalar};
use qhelix::freealg::{parse_poly, GeneratorSet, NcPoly, Word};

pub const COMMUTATORS: [&str; 6] = ["x*y - y*x", "x*z - z*x", "x*w - w*x", "y*z - z*y", "y*w - w*y", "z*w - w*z"];

pub const SIGMA_RELATIONS: [&str; 6] = ["x*y + y*w", "x*z + z*w", "x^2 - w^2", "y*z - z*y", "y*x + w*y", "z*x + w*z"];

pub fn presented(names: &[&str], degrees: &[u32], rels: &[&str], d: u32) -> PresentedAlgebra {
    let g = GeneratorSet::new(names.iter().map(|s| s.to_string()).collect(), degrees.to_vec()).unwrap();
    let ps = rels.iter().map(|r| parse_poly(r, &g).unwrap()).collect();
    PresentedAlgebra::new(g, ps, d, Field::Rational).unwrap()
}

pub fn s_comm(d: u32) -> PresentedAlgebra {
    presented(&["x", "y", "z", "w"], &[1, 1, 1, 1], &COMMUTATORS, d)
}

pub fn quadric(d: u32) -> PresentedAlgebra {
    let mut r = COMMUTATORS.to_vec();
    r.push("x*w - y*z");
    presented(&["x", "y", "z", "w"], &[1, 1, 1, 1], &r, d)
}

pub fn s_sigma(d: u32) -> PresentedAlgebra {
    presented(&["x", "y", "z", "w"], &[1, 1, 1, 1], &SIGMA_RELATIONS, d)
}

pub fn quadric_sigma(d: u32) -> PresentedAlgebra {
    let mut r = SIGMA_RELATIONS.to_vec();
    r.push("x^2 + y*z");
    presented(&["x", "y", "z", "w"], &[1, 1, 1, 1], &r, d)
}

pub fn cubic(d: u32) -> PresentedAlgebra {
    presented(&["x", "y"], &[1, 1], &["x^2*y - y*x^2", "x*y^2 - y^2*x"], d)
}

pub fn poly_deg3(d: u32) -> PresentedAlgebra {
    presented(&["x"], &[3], &[], d)
}

/// Dimension of each graded piece of T(V)/I computed as
/// `#words - rank(span{u r v})`, by sparse elimination over all words.
pub fn brute_force_dims(a: &PresentedAlgebra, top: u32) -> Vec<usize> {
    let g = a.gens();
    let words: Vec<Vec<Word>> = (0..=top).map(|d| g.monomials_of_degree(d)).collect();
    (0..=top)
        .map(|d| {
            let index: HashMap<&Word, usize> = words[d as usize].iter().enumerate().map(|(i, w)| (w, i)).collect();
            let mut pivots: HashMap<usize, BTreeMap<usize, Scalar>> = HashMap::new();
            for r in a.relations() {
                let e = r.homogeneous_degree().unwrap();
                if e > d {
                    continue;
                }
                for a_deg in 0..=d - e {
                    for u in &words[a_deg as usize] {
                        for v in &words[(d - e - a_deg) as usize] {
                            let mut row = BTreeMap::new();
                            for (w, c) in r.terms() {
                                row.insert(index[&u.concat(w).concat(v)], c.clone());
                            }
                            insert_row(&mut pivots, row);
                        }
                    }
                }
            }
            words[d as usize].len() - pivots.len()
        })
        .collect()
}

fn insert_row(pivots: &mut HashMap<usize, BTreeMap<usize, Scalar>>, mut row: BTreeMap<usize, Scalar>) {
    loop {
        let Some((&lead, c)) = row.iter().next_back() else {
            return;
        };
        let c = c.clone();
        match pivots.get(&lead) {
            None => {
                let inv = c.inv();
                for v in row.values_mut() {
                    *v = &*v * &inv;
                }
                pivots.insert(lead, row);
                return;
            }
            Some(p) => {
                for (k, v) in p {
                    let cur = row.get(k).cloned().unwrap_or_else(Scalar::zero);
                    let nv = &cur - &(&c * v);
                    if nv.is_zero() {
                        row.remove(k);
                    } else {
                        row.insert(*k, nv);
                    }
                }
            }
        }
    }
}

pub fn poly(a: &PresentedAlgebra, s: &str) -> NcPoly {
    a.parse(s).unwrap()
}

pub const M_MATRIX: [[&str; 2]; 2] = [["x", "y"], ["z", "w"]];
pub const N_MATRIX: [[&str; 2]; 2] = [["w", "-y"], ["-z", "x"]];

pub fn matrix(a: &PresentedAlgebra, m: [[&str; 2]; 2]) -> Vec<Vec<NcPoly>> {
    m.iter().map(|r| r.iter().map(|e| poly(a, e)).collect()).collect()
}

pub fn factorization(
    s: &PresentedAlgebra,
    f: &str,
    p: [[&str; 2]; 2],
    q: [[&str; 2]; 2],
) -> qhelix::modules::MatrixFactorization {
    qhelix::modules::MatrixFactorization { p: matrix(s, p), q: matrix(s, q), f: poly(s, f) }
}

/// `(A, X, Y)` for the commutative quadric `xw - yz`.
pub fn commutative_pipeline(
    d: u32,
) -> (std::sync::Arc<qhelix::algebra::TabulatedAlgebra>, qhelix::modules::GradedModule, qhelix::modules::GradedModule) {
    let s = s_comm(d);
    qhelix::modules::mf_to_modules(&s, &factorization(&s, "x*w - y*z", M_MATRIX, N_MATRIX), d).unwrap()
}

/// `(A^σ, X, Y)` with `X = coker M̄`, `Y = coker N̄` over the twisted quadric.
pub fn sigma_pipeline(
    d: u32,
) -> (std::sync::Arc<qhelix::algebra::TabulatedAlgebra>, qhelix::modules::GradedModule, qhelix::modules::GradedModule) {
    let s = s_sigma(d);
    let (a, x, _) = qhelix::modules::mf_to_modules(&s, &factorization(&s, "x^2 + y*z", M_MATRIX, M_MATRIX), d).unwrap();
    let y = cokernel_module(&a, &s, N_MATRIX, d as i32);
    (a, x, y)
}

pub fn cokernel_module(
    a: &std::sync::Arc<qhelix::algebra::TabulatedAlgebra>,
    s: &PresentedAlgebra,
    m: [[&str; 2]; 2],
    top: i32,
) -> qhelix::modules::GradedModule {
    use qhelix::modules::{GradedModule, Presentation, Summand};
    let matrix = matrix(s, m).iter().map(|r| r.iter().map(|e| a.eval_poly(e).unwrap().coords).collect()).collect();
    let p =
        Presentation { f0: vec![Summand { shift: 0, idem: 0 }; 2], f1: vec![Summand { shift: 1, idem: 0 }; 2], matrix };
    GradedModule::from_presentation(a, &p, top).unwrap()
}
