//! Exact isomorphism test through the generic element of `Hom(M, N)_0`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::hom::hom_basis;
use super::module::GradedModule;
use super::ModuleError;
use crate::exactla::{Echelon, Field, Mat, Projector, Scalar};

/// Polynomial in the Hom-space parameters, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct MPoly {
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    fn constant(c: Scalar, n: usize) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; n], c);
        }
        MPoly { terms }
    }

    fn linear(coeffs: &[Scalar]) -> MPoly {
        let n = coeffs.len();
        let mut terms = BTreeMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                terms.insert(e, c.clone());
            }
        }
        MPoly { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_scaled(&mut self, o: &MPoly, s: &Scalar) {
        for (e, c) in &o.terms {
            let v = self.terms.remove(e).unwrap_or_else(Scalar::zero) + c * s;
            if !v.is_zero() {
                self.terms.insert(e.clone(), v);
            }
        }
    }

    fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let v = out.terms.remove(&e).unwrap_or_else(Scalar::zero) + c1 * c2;
                if !v.is_zero() {
                    out.terms.insert(e, v);
                }
            }
        }
        out
    }

    fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn eval(&self, x: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t = &t * xi;
                }
            }
            acc += &t;
        }
        acc
    }
}

/// Laplace expansion along the first row, memoised on the column subset.
fn determinant(m: &[Vec<MPoly>], nvars: usize, field: Field) -> MPoly {
    fn rec(
        m: &[Vec<MPoly>],
        row: usize,
        cols: u64,
        memo: &mut BTreeMap<u64, MPoly>,
        nvars: usize,
        field: Field,
    ) -> MPoly {
        if row == m.len() {
            return MPoly::constant(field.from_i64(1), nvars);
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = MPoly::default();
        let mut sign = 1;
        for c in 0..m.len() {
            if cols & (1 << c) != 0 {
                continue;
            }
            if !m[row][c].is_zero() {
                let minor = rec(m, row + 1, cols | (1 << c), memo, nvars, field);
                acc.add_scaled(&m[row][c].mul(&minor), &field.from_i64(sign));
            }
            sign = -sign;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    rec(m, 0, 0, &mut BTreeMap::new(), nvars, field)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub reason: String,
    /// Coefficients of an isomorphism on the basis of `Hom(M, N)_0`.
    pub witness: Option<Vec<Scalar>>,
    pub hom_dim: usize,
    /// Generators of both modules lie strictly below the compared window top.
    pub certified: bool,
}

impl IsoVerdict {
    fn no(reason: String, certified: bool) -> IsoVerdict {
        IsoVerdict { isomorphic: false, reason, witness: None, hom_dim: 0, certified }
    }
}

/// Decides whether `M ≅ N` on the common window: compares Hilbert functions
/// and generator degrees, then asks whether the generic degree-0 map induces
/// an invertible map on generator spaces.
pub fn is_isomorphic(m: &GradedModule, n: &GradedModule) -> Result<IsoVerdict, ModuleError> {
    if !Arc::ptr_eq(m.algebra(), n.algebra()) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let top = m.hi().min(n.hi());
    let bottom = m.lo().min(n.lo());
    if top < m.lo().max(n.lo()) {
        return Err(ModuleError::WindowTooShort);
    }
    let certified = !m.generators().iter().chain(n.generators()).any(|g| g.degree >= top);
    for d in bottom..=top {
        if m.dim(d) != n.dim(d) {
            return Ok(IsoVerdict::no(format!("dimensions differ in degree {d}"), true));
        }
    }
    let gm: Vec<(i32, usize)> = m.generator_degrees().into_iter().filter(|g| g.0 <= top).collect();
    let gn: Vec<(i32, usize)> = n.generator_degrees().into_iter().filter(|g| g.0 <= top).collect();
    if gm != gn {
        return Ok(IsoVerdict::no("generator degrees differ".into(), certified));
    }
    let hb = hom_basis(m, n, 0)?;
    let k = hb.maps.len();
    let certified = certified && hb.certified;
    if k == 0 {
        if gm.is_empty() {
            return Ok(IsoVerdict {
                isomorphic: true,
                reason: "both zero".into(),
                witness: Some(Vec::new()),
                hom_dim: 0,
                certified,
            });
        }
        return Ok(IsoVerdict::no("no nonzero degree-0 maps".into(), certified));
    }
    let mut blocks: Vec<(i32, usize)> = gm.clone();
    blocks.dedup();
    let field = m.algebra().field();
    let mut product = MPoly::constant(field.from_i64(1), k);
    let ncover = n.cover();
    for &(d, p) in &blocks {
        let mj: Vec<usize> =
            m.generators().iter().enumerate().filter(|(_, g)| (g.degree, g.idem) == (d, p)).map(|(i, _)| i).collect();
        let nk: Vec<usize> =
            n.generators().iter().enumerate().filter(|(_, g)| (g.degree, g.idem) == (d, p)).map(|(i, _)| i).collect();
        let nd = n.dim(d);
        let target = Mat::from_rows(nd, nk.iter().map(|&i| n.generators()[i].coords.clone()).collect());
        let rad = &ncover.radical[(d - n.lo()) as usize];
        let aux = if m.algebra().idempotents().len() == 1 {
            rad.clone()
        } else {
            let ep = &m.algebra().idempotents()[p];
            let mut e = Echelon::new(nd);
            for r in 0..rad.rows() {
                e.insert(n.act(d, rad.row(r), 0, ep));
            }
            e.to_mat()
        };
        let proj = Projector::new(&target, &aux);
        // entry (j, l) = Σ_t c_t · coords_t[j][l]
        let coords: Vec<Vec<Vec<Scalar>>> =
            hb.maps.iter().map(|f| mj.iter().map(|&j| proj.coords(&f[j])).collect()).collect();
        let size = mj.len();
        let mat: Vec<Vec<MPoly>> = (0..size)
            .map(|j| {
                (0..size).map(|l| MPoly::linear(&(0..k).map(|t| coords[t][j][l].clone()).collect::<Vec<_>>())).collect()
            })
            .collect();
        product = product.mul(&determinant(&mat, k, field));
        if product.is_zero() {
            return Ok(IsoVerdict {
                isomorphic: false,
                reason: format!("every degree-0 map is singular on generators of degree {d}"),
                witness: None,
                hom_dim: k,
                certified,
            });
        }
    }
    let witness = find_nonzero(&product, k, field);
    match witness {
        Some(w) => Ok(IsoVerdict {
            isomorphic: true,
            reason: "invertible degree-0 map found".into(),
            witness: Some(w),
            hom_dim: k,
            certified,
        }),
        None => Ok(IsoVerdict {
            isomorphic: false,
            reason: "determinant polynomial vanishes on every point of the prime field".into(),
            witness: None,
            hom_dim: k,
            certified: false,
        }),
    }
}

/// A point where `p` does not vanish, searched over a grid large enough to
/// contain one whenever the field has more than `deg p` elements.
fn find_nonzero(p: &MPoly, k: usize, field: Field) -> Option<Vec<Scalar>> {
    let deg = p.degree() as i64;
    let side = match field {
        Field::Rational => deg + 1,
        Field::Prime(q) => (deg + 1).min(q as i64),
    };
    let total = (side as u64).checked_pow(k as u32)?;
    for idx in 0..total {
        let mut x = Vec::with_capacity(k);
        let mut r = idx;
        for _ in 0..k {
            x.push(field.from_i64((r % side as u64) as i64));
            r /= side as u64;
        }
        if !p.eval(&x).is_zero() {
            return Some(x);
        }
    }
    None
}
