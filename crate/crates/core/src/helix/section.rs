//! Endomorphism algebras and graded section algebras `⊕_i Hom(E, E(i))`.

use std::collections::HashMap;
use std::sync::Arc;

use super::HelixError;
use crate::algebra::{dense_to_sparse, FiniteDimAlgebra, RawTable, TabulatedAlgebra};
use crate::exactla::{Mat, Projector, Scalar};
use crate::modules::{hom_basis, map_matrix, GradedModule};

/// Generator images of a map, flattened into one vector.
fn flatten(images: &[Vec<Scalar>]) -> Vec<Scalar> {
    images.iter().flatten().cloned().collect()
}

/// Coordinates of maps in a fixed basis of `Hom(M, N)_n`.
struct HomCoords {
    basis: Vec<Vec<Vec<Scalar>>>,
    proj: Projector,
}

impl HomCoords {
    fn new(basis: Vec<Vec<Vec<Scalar>>>, width: usize) -> HomCoords {
        let rows: Vec<Vec<Scalar>> = basis.iter().map(|m| flatten(m)).collect();
        let target = Mat::from_rows(width, rows);
        let proj = Projector::new(&target, &Mat::zeros(0, width));
        HomCoords { basis, proj }
    }

    fn coords(&self, images: &[Vec<Scalar>]) -> Vec<Scalar> {
        self.proj.coords(&flatten(images))
    }
}

fn image_width(m: &GradedModule, n: &GradedModule, deg: i32) -> usize {
    m.generators().iter().map(|g| n.dim(g.degree + deg)).sum()
}

/// Generator images of `α ∘ β` for `β: src → mid(j)` and `α: mid → tgt(i)`,
/// with the degreewise matrices of `α` taken from `alpha_mat`.
fn compose(
    src: &GradedModule,
    mid: &GradedModule,
    tgt: &GradedModule,
    beta: &[Vec<Scalar>],
    j: i32,
    i: i32,
    mut alpha_mat: impl FnMut(i32) -> Mat,
) -> Result<Vec<Vec<Scalar>>, HelixError> {
    let mut out = Vec::new();
    for (g, v) in src.generators().iter().zip(beta) {
        let d = g.degree + j;
        let t = d + i;
        if t > tgt.hi() || d > mid.hi() {
            return Err(HelixError::WindowTooShort(format!("composite needs degree {t}")));
        }
        if mid.dim(d) == 0 || tgt.dim(t) == 0 || v.iter().all(Scalar::is_zero) {
            out.push(vec![Scalar::zero(); tgt.dim(t)]);
        } else {
            out.push(alpha_mat(d).left_apply(v));
        }
    }
    Ok(out)
}

/// `End(M)_0` with product `φ·ψ = φ ∘ ψ`.
pub fn endomorphism_algebra(m: &GradedModule) -> Result<FiniteDimAlgebra, HelixError> {
    let hb = hom_basis(m, m, 0)?;
    if !hb.certified {
        return Err(HelixError::WindowTooShort("End(M)_0 is not certified".into()));
    }
    let n = hb.maps.len();
    let hc = HomCoords::new(hb.maps, image_width(m, m, 0));
    let mut consts = Vec::with_capacity(n * n);
    for a in 0..n {
        let alpha = &hc.basis[a];
        for b in 0..n {
            let prod = compose(m, m, m, &hc.basis[b], 0, 0, |d| map_matrix(m, m, 0, alpha, d))?;
            consts.push(dense_to_sparse(&hc.coords(&prod)));
        }
    }
    let id: Vec<Vec<Scalar>> = m.generators().iter().map(|g| g.coords.clone()).collect();
    let unit = hc.coords(&id);
    Ok(FiniteDimAlgebra::new(m.algebra().field(), n, consts, unit))
}

/// Tabulated section algebra of `E = ⊕ parts` up to degree `top`.
#[derive(Clone, Debug)]
pub struct SectionAlgebra {
    pub algebra: Arc<TabulatedAlgebra>,
    /// `dim Hom(part_p, part_q)_0` at `[p][q]`.
    pub degree_zero_blocks: Vec<Vec<usize>>,
}

impl SectionAlgebra {
    pub fn dims(&self) -> Vec<usize> {
        self.algebra.dims()
    }
}

/// `B = ⊕_{i ≤ top} Hom(E, E(i))` for `E = ⊕ parts`, whose `(p, q)` block in
/// degree `i` is `Hom(part_p, part_q)_i`, with product `α·β = s^j(α) ∘ β`
/// for `β` of degree `j`.
pub fn section_algebra(parts: &[GradedModule], top: u32) -> Result<SectionAlgebra, HelixError> {
    let r = parts.len();
    if r == 0 {
        return Err(HelixError::WindowTooShort("no parts".into()));
    }
    for p in &parts[1..] {
        if !Arc::ptr_eq(p.algebra(), parts[0].algebra()) {
            return Err(crate::modules::ModuleError::AlgebraMismatch.into());
        }
    }
    let field = parts[0].algebra().field();
    // hom[i][(p, q)]
    let mut hom: Vec<HashMap<(usize, usize), HomCoords>> = Vec::new();
    let mut entries: Vec<Vec<(usize, usize, usize)>> = Vec::new();
    let mut offsets: Vec<HashMap<(usize, usize), usize>> = Vec::new();
    for i in 0..=top as i32 {
        let mut h = HashMap::new();
        let mut es = Vec::new();
        let mut off = HashMap::new();
        for p in 0..r {
            for q in 0..r {
                let hb = hom_basis(&parts[p], &parts[q], i)?;
                if !hb.certified {
                    return Err(HelixError::WindowTooShort(format!("Hom({p}, {q}) in degree {i} is not certified")));
                }
                off.insert((p, q), es.len());
                es.extend((0..hb.maps.len()).map(|k| (p, q, k)));
                h.insert((p, q), HomCoords::new(hb.maps, image_width(&parts[p], &parts[q], i)));
            }
        }
        hom.push(h);
        entries.push(es);
        offsets.push(off);
    }
    let mut alpha_cache: HashMap<(usize, usize, i32), Mat> = HashMap::new();
    let mut mult = Vec::new();
    for i in 0..=top as usize {
        let mut row = Vec::new();
        for j in 0..=top as usize - i {
            let mut table = Vec::with_capacity(entries[i].len() * entries[j].len());
            for (ai, &(b1, c, ka)) in entries[i].iter().enumerate() {
                for &(a0, b2, kb) in &entries[j] {
                    if b1 != b2 {
                        table.push(Vec::new());
                        continue;
                    }
                    let alpha = &hom[i][&(b1, c)].basis[ka];
                    let beta = &hom[j][&(a0, b1)].basis[kb];
                    let prod = compose(&parts[a0], &parts[b1], &parts[c], beta, j as i32, i as i32, |d| {
                        alpha_cache
                            .entry((i, ai, d))
                            .or_insert_with(|| map_matrix(&parts[b1], &parts[c], i as i32, alpha, d))
                            .clone()
                    })?;
                    let coords = hom[i + j][&(a0, c)].coords(&prod);
                    let off = offsets[i + j][&(a0, c)];
                    table.push(
                        coords
                            .iter()
                            .enumerate()
                            .filter(|(_, x)| !x.is_zero())
                            .map(|(t, x)| (off + t, x.clone()))
                            .collect(),
                    );
                }
            }
            row.push(table);
        }
        mult.push(row);
    }
    let n0 = entries[0].len();
    let mut unit = vec![Scalar::zero(); n0];
    let mut idempotents = Vec::new();
    for (p, part) in parts.iter().enumerate() {
        let id: Vec<Vec<Scalar>> = part.generators().iter().map(|g| g.coords.clone()).collect();
        let c = hom[0][&(p, p)].coords(&id);
        let off = offsets[0][&(p, p)];
        let mut e = vec![Scalar::zero(); n0];
        for (t, x) in c.into_iter().enumerate() {
            unit[off + t] = x.clone();
            e[off + t] = x;
        }
        idempotents.push(e);
    }
    let labels = entries.iter().map(|es| es.iter().map(|&(p, q, k)| format!("[{p},{q}]h{k}")).collect()).collect();
    let blocks: Vec<Vec<(usize, usize)>> =
        entries.iter().map(|es| es.iter().map(|&(p, q, _)| (p, q)).collect()).collect();
    let mut degree_zero_blocks = vec![vec![0; r]; r];
    for &(p, q) in &blocks[0] {
        degree_zero_blocks[p][q] += 1;
    }
    let algebra = TabulatedAlgebra::from_raw(RawTable {
        field,
        truncation: top,
        labels,
        mult,
        unit,
        idempotents: Some(idempotents),
        blocks: Some(blocks),
        gen_degree: None,
        link: None,
    });
    Ok(SectionAlgebra { algebra: Arc::new(algebra), degree_zero_blocks })
}
