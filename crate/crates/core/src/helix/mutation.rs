//! Left and right mutations of modules through (co)evaluation maps.

use super::{HelixError, ObjectHandle, TailsContext};
use crate::exactla::Mat;
use crate::modules::{hom_basis, GradedModule, ModuleMap};

fn require_concentrated(ctx: &TailsContext, e: &ObjectHandle, f: &ObjectHandle) -> Result<(), HelixError> {
    for q in 1..=2 {
        if ctx.tails_ext(e, f, q, 0)?.dim != 0 {
            return Err(HelixError::NotConcentrated { q });
        }
    }
    Ok(())
}

/// `E` and `F` on the window `[min lo, min hi]`.
fn common_window(e: &ObjectHandle, f: &ObjectHandle) -> Result<(GradedModule, GradedModule), HelixError> {
    let (em, fm) = (e.module()?, f.module()?);
    let lo = em.lo().min(fm.lo());
    let hi = em.hi().min(fm.hi());
    Ok((em.restrict(lo, hi)?, fm.restrict(lo, hi)?))
}

/// The degree-0 maps `E → F` of a basis of `Hom(E, F)_0`.
fn hom_maps(em: &GradedModule, fm: &GradedModule) -> Result<Vec<ModuleMap>, HelixError> {
    let hb = hom_basis(em, fm, 0)?;
    Ok(hb.maps.iter().map(|imgs| em.map_from_images(fm, 0, imgs)).collect())
}

/// `L_E F`: the kernel of the evaluation `Hom(E, F)_0 ⊗ E → F`.
pub fn left_mutation(ctx: &TailsContext, e: &ObjectHandle, f: &ObjectHandle) -> Result<GradedModule, HelixError> {
    require_concentrated(ctx, e, f)?;
    let (em, fm) = common_window(e, f)?;
    let maps = hom_maps(&em, &fm)?;
    if maps.is_empty() {
        return Err(HelixError::NotSurjective);
    }
    let ek = em.power(maps.len())?;
    let (lo, hi) = (em.lo(), em.hi());
    let mats: Vec<Mat> = (lo..=hi)
        .map(|d| {
            maps.iter()
                .map(|m| m.matrix(d).expect("map covers the window").clone())
                .reduce(|a, b| a.vstack(&b))
                .expect("nonempty")
        })
        .collect();
    // surjectivity is only needed in the quotient category, so high degrees suffice
    if mats[(hi - lo) as usize].rank() != fm.dim(hi) {
        return Err(HelixError::NotSurjective);
    }
    Ok(ModuleMap::new(lo, mats).kernel(&ek)?)
}

/// `R_F E`: the cokernel of the coevaluation `E → D Hom(E, F)_0 ⊗ F`.
pub fn right_mutation(ctx: &TailsContext, f: &ObjectHandle, e: &ObjectHandle) -> Result<GradedModule, HelixError> {
    require_concentrated(ctx, e, f)?;
    let (em, fm) = common_window(e, f)?;
    let maps = hom_maps(&em, &fm)?;
    if maps.is_empty() {
        return Err(HelixError::NotInjective);
    }
    let fk = fm.power(maps.len())?;
    let (lo, hi) = (em.lo(), em.hi());
    let mats: Vec<Mat> = (lo..=hi)
        .map(|d| {
            maps.iter()
                .map(|m| m.matrix(d).expect("map covers the window").clone())
                .reduce(|a, b| a.hstack(&b))
                .expect("nonempty")
        })
        .collect();
    if mats[(hi - lo) as usize].rank() != em.dim(hi) {
        return Err(HelixError::NotInjective);
    }
    Ok(ModuleMap::new(lo, mats).cokernel(&fk)?)
}
