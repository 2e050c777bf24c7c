//! Matrix factorizations `PQ = QP = f·E` and their cokernel modules.

use std::sync::Arc;

use super::free::Summand;
use super::module::{GradedModule, Presentation};
use super::ModuleError;
use crate::algebra::{PresentedAlgebra, TabulatedAlgebra};
use crate::freealg::NcPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFactorization {
    pub p: Vec<Vec<NcPoly>>,
    pub q: Vec<Vec<NcPoly>>,
    pub f: NcPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfCheck {
    pub pq_ok: bool,
    pub qp_ok: bool,
    /// Nonzero normal forms as `(product, row, col, rendered)`.
    pub residues: Vec<(String, usize, usize, String)>,
}

impl MfCheck {
    pub fn holds(&self) -> bool {
        self.pq_ok && self.qp_ok
    }
}

fn check_shape(mf: &MatrixFactorization) -> Result<usize, ModuleError> {
    let n = mf.p.len();
    let square = |m: &Vec<Vec<NcPoly>>| m.len() == n && m.iter().all(|r| r.len() == n);
    if n == 0 || !square(&mf.p) || !square(&mf.q) {
        return Err(ModuleError::ShapeMismatch("P and Q must be square of equal size".into()));
    }
    if mf.f.homogeneous_degree() != Some(2) {
        return Err(ModuleError::InvalidFactorization("f must be homogeneous of degree 2".into()));
    }
    for m in [&mf.p, &mf.q] {
        if m.iter().flatten().any(|e| !e.is_zero() && e.homogeneous_degree() != Some(1)) {
            return Err(ModuleError::InvalidFactorization("entries must be homogeneous of degree 1".into()));
        }
    }
    Ok(n)
}

fn product_residues(
    s: &PresentedAlgebra,
    a: &[Vec<NcPoly>],
    b: &[Vec<NcPoly>],
    f: &NcPoly,
    label: &str,
) -> Result<Vec<(String, usize, usize, String)>, ModuleError> {
    let n = a.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut e = NcPoly::zero();
            for k in 0..n {
                e = e.add(&a[i][k].mul(&b[k][j]));
            }
            if i == j {
                e = e.sub(f);
            }
            let nf = s.normal_form(&e)?;
            if !nf.is_zero() {
                out.push((label.to_string(), i, j, nf.render(s.gens())));
            }
        }
    }
    Ok(out)
}

/// Normal forms of `PQ - fE` and `QP - fE` over the ambient algebra.
pub fn verify_mf(s: &PresentedAlgebra, mf: &MatrixFactorization) -> Result<MfCheck, ModuleError> {
    check_shape(mf)?;
    let pq = product_residues(s, &mf.p, &mf.q, &mf.f, "PQ")?;
    let qp = product_residues(s, &mf.q, &mf.p, &mf.f, "QP")?;
    let (pq_ok, qp_ok) = (pq.is_empty(), qp.is_empty());
    let mut residues = pq;
    residues.extend(qp);
    Ok(MfCheck { pq_ok, qp_ok, residues })
}

fn cokernel_of(a: &Arc<TabulatedAlgebra>, m: &[Vec<NcPoly>], top: i32) -> Result<GradedModule, ModuleError> {
    let n = m.len();
    let matrix = m
        .iter()
        .map(|row| {
            row.iter().map(|e| a.eval_poly(e).map(|x| if x.degree == 1 { x.coords } else { Vec::new() })).collect()
        })
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    let p =
        Presentation { f0: vec![Summand { shift: 0, idem: 0 }; n], f1: vec![Summand { shift: 1, idem: 0 }; n], matrix };
    GradedModule::from_presentation(a, &p, top)
}

/// `A = S/(f)` tabulated to `top`, with `X = coker(P̄)` and `Y = coker(Q̄)`
/// on `A^n`, both on the window `[0, top]`.
pub fn mf_to_modules(
    s: &PresentedAlgebra,
    mf: &MatrixFactorization,
    top: u32,
) -> Result<(Arc<TabulatedAlgebra>, GradedModule, GradedModule), ModuleError> {
    let check = verify_mf(s, mf)?;
    if !check.holds() {
        return Err(ModuleError::InvalidFactorization(format!("{} nonzero residues", check.residues.len())));
    }
    let st = s.tabulate(s.truncation().min(4))?;
    if !st.is_central(&st.eval_poly(&mf.f)?) {
        return Err(ModuleError::InvalidFactorization("f is not central".into()));
    }
    let quotient = s.quotient_by_central(&mf.f)?;
    let quotient = if quotient.truncation() < top { quotient.with_truncation(top) } else { quotient };
    let a = Arc::new(quotient.tabulate(top)?);
    let x = cokernel_of(&a, &mf.p, top as i32)?;
    let y = cokernel_of(&a, &mf.q, top as i32)?;
    Ok((a, x, y))
}
