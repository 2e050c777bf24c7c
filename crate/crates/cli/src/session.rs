//! Algebras and modules built from a manifest, on demand.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use qhelix::algebra::{GradedAutomorphism, PresentedAlgebra, TabulatedAlgebra};
use qhelix::exactla::Field;
use qhelix::freealg::NcPoly;
use qhelix::helix::{Base, ObjectHandle, TailsContext};
use qhelix::modules::{mf_to_modules, GradedModule, MatrixFactorization, Presentation, Summand};

use crate::manifest::{parse_field, Loaded, NuSpec};
use crate::CliError;

/// Command-line overrides of the manifest bounds.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub truncation: Option<u32>,
    pub hbound: Option<usize>,
    pub window: Option<(i32, i32)>,
    pub field: Option<Field>,
}

pub struct Session {
    pub loaded: Loaded,
    pub truncation: u32,
    pub field: Field,
    pub hbound: usize,
    pub window: Option<(i32, i32)>,
    ambient: PresentedAlgebra,
    working: OnceLock<Result<Arc<TabulatedAlgebra>, CliError>>,
    mf_modules: OnceLock<Option<(GradedModule, GradedModule)>>,
    context: OnceLock<Result<TailsContext, CliError>>,
    bases: std::sync::Mutex<BTreeMap<String, Arc<Base>>>,
}

/// `NAME`, `NAME(n)`, `syz(EXPR)` or `syz(EXPR)(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjectExpr {
    Named(String, i32),
    Syzygy(Box<ObjectExpr>, i32),
}

fn split_shift(s: &str) -> Result<(&str, i32), CliError> {
    let s = s.trim();
    if s.ends_with(')') {
        if let Some(open) = matching_open(s) {
            let inner = &s[open + 1..s.len() - 1];
            if let Ok(n) = inner.trim().parse::<i32>() {
                if open > 0 {
                    return Ok((&s[..open], n));
                }
            }
        }
    }
    Ok((s, 0))
}

fn matching_open(s: &str) -> Option<usize> {
    let mut depth = 0;
    for (i, c) in s.char_indices().rev() {
        match c {
            ')' => depth += 1,
            '(' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

pub fn parse_object(s: &str) -> Result<ObjectExpr, CliError> {
    let (body, shift) = split_shift(s)?;
    if let Some(inner) = body.strip_prefix("syz(").and_then(|r| r.strip_suffix(')')) {
        return Ok(ObjectExpr::Syzygy(Box::new(parse_object(inner)?), shift));
    }
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(CliError::Usage(format!("bad object expression {s:?}")));
    }
    Ok(ObjectExpr::Named(body.to_string(), shift))
}

impl Session {
    pub fn new(loaded: Loaded, opts: &Options) -> Result<Session, CliError> {
        let m = &loaded.manifest;
        let field = match (opts.field, &m.algebra.field) {
            (Some(f), _) => f,
            (None, Some(s)) => parse_field(s)?,
            (None, None) => Field::Rational,
        };
        let truncation = opts.truncation.unwrap_or(m.algebra.truncation);
        let quadric = m.pipeline.quadric.as_ref();
        let hbound = opts.hbound.or(quadric.and_then(|q| q.hbound)).unwrap_or(4);
        let gens = m.generator_set()?;
        let rels = m
            .algebra
            .relations
            .iter()
            .map(|r| qhelix::freealg::parse_poly(r, &gens))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Parse(e.to_string()))?;
        let ambient = PresentedAlgebra::new(gens, rels, truncation, field).map_err(CliError::from_algebra)?;
        Ok(Session {
            loaded,
            truncation,
            field,
            hbound,
            window: opts.window,
            ambient,
            working: OnceLock::new(),
            mf_modules: OnceLock::new(),
            context: OnceLock::new(),
            bases: std::sync::Mutex::new(BTreeMap::new()),
        })
    }

    pub fn manifest(&self) -> &crate::manifest::Manifest {
        &self.loaded.manifest
    }

    pub fn ambient(&self) -> &PresentedAlgebra {
        &self.ambient
    }

    pub fn poly(&self, s: &str) -> Result<NcPoly, CliError> {
        self.ambient.parse(s).map_err(CliError::from_algebra)
    }

    pub fn central_element(&self) -> Result<Option<NcPoly>, CliError> {
        self.manifest().central.as_ref().map(|c| self.poly(&c.element)).transpose()
    }

    /// The working algebra as a presentation, when it has one.
    pub fn presented(&self) -> Result<PresentedAlgebra, CliError> {
        if self.manifest().derived.is_some() {
            return Err(CliError::Usage("the working algebra of this manifest has no presentation".into()));
        }
        match &self.manifest().central {
            Some(c) if c.quotient => {
                let f = self.poly(&c.element)?;
                self.ambient.quotient_by_central(&f).map_err(CliError::from_algebra)
            }
            _ => Ok(self.ambient.clone()),
        }
    }

    fn factorization(&self) -> Result<Option<MatrixFactorization>, CliError> {
        let Some(mf) = &self.manifest().matrix_factorization else {
            return Ok(None);
        };
        let mat = |m: &Vec<Vec<String>>| -> Result<Vec<Vec<NcPoly>>, CliError> {
            m.iter().map(|r| r.iter().map(|e| self.poly(e)).collect()).collect()
        };
        let f = match &mf.f {
            Some(f) => self.poly(f)?,
            None => self.central_element()?.expect("validated"),
        };
        Ok(Some(MatrixFactorization { p: mat(&mf.p)?, q: mat(&mf.q)?, f }))
    }

    pub fn matrix_factorization(&self) -> Result<MatrixFactorization, CliError> {
        self.factorization()?.ok_or_else(|| CliError::Usage("manifest has no [matrix_factorization]".into()))
    }

    fn build_working(&self) -> Result<Arc<TabulatedAlgebra>, CliError> {
        if let Some(mf) = self.factorization()? {
            let (a, x, y) = mf_to_modules(&self.ambient, &mf, self.truncation).map_err(CliError::from_module)?;
            let _ = self.mf_modules.set(Some((x, y)));
            return Ok(a);
        }
        let _ = self.mf_modules.set(None);
        if let Some(d) = &self.manifest().derived {
            let base = self.ambient.tabulate(self.truncation).map_err(CliError::from_algebra)?;
            return Ok(Arc::new(match d.quasi_veronese {
                Some(r) if r >= 1 => base.quasi_veronese(r),
                Some(_) => return Err(CliError::Parse("quasi_veronese must be positive".into())),
                None => base,
            }));
        }
        let p = self.presented()?;
        Ok(Arc::new(p.tabulate(self.truncation).map_err(CliError::from_algebra)?))
    }

    /// The working algebra: `S/(f)` for quotient manifests, the derived
    /// algebra if requested, otherwise the algebra itself.
    pub fn working(&self) -> Result<Arc<TabulatedAlgebra>, CliError> {
        self.working.get_or_init(|| self.build_working()).clone()
    }

    pub fn top(&self) -> Result<i32, CliError> {
        Ok(self.working()?.truncation() as i32)
    }

    fn module_from_section(&self, name: &str) -> Result<Option<GradedModule>, CliError> {
        let Some(sec) = self.manifest().module.get(name) else {
            return Ok(None);
        };
        let a = self.working()?;
        let rows = sec.matrix.len();
        let cols = sec.matrix.first().map_or(0, Vec::len);
        if sec.matrix.iter().any(|r| r.len() != cols) {
            return Err(CliError::Parse(format!("module {name}: ragged matrix")));
        }
        let f0 = sec.generator_shifts.clone().unwrap_or_else(|| vec![0; rows]);
        let f1 = sec.relation_shifts.clone().unwrap_or_else(|| vec![1; cols]);
        if f0.len() != rows || f1.len() != cols {
            return Err(CliError::Parse(format!("module {name}: shift lists do not match the matrix")));
        }
        let matrix = sec
            .matrix
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| {
                        let p = self.poly(e)?;
                        if p.is_zero() {
                            return Ok(Vec::new());
                        }
                        a.eval_poly(&p).map(|x| x.coords).map_err(CliError::from_algebra)
                    })
                    .collect::<Result<Vec<_>, CliError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let p = Presentation {
            f0: f0.into_iter().map(|shift| Summand { shift, idem: 0 }).collect(),
            f1: f1.into_iter().map(|shift| Summand { shift, idem: 0 }).collect(),
            matrix,
        };
        let top = self.top()?;
        Ok(Some(GradedModule::from_presentation(&a, &p, top).map_err(CliError::from_module)?))
    }

    /// A named module: `A`, `k`, a `[module.NAME]` section, or `X`/`Y`
    /// from the matrix factorization.
    pub fn module(&self, name: &str) -> Result<GradedModule, CliError> {
        let a = self.working()?;
        let top = self.top()?;
        match name {
            "A" => return GradedModule::regular(&a, top).map_err(CliError::from_module),
            "k" => return GradedModule::trivial(&a, top).map_err(CliError::from_module),
            _ => {}
        }
        if let Some(m) = self.module_from_section(name)? {
            return Ok(m);
        }
        if let Some(Some((x, y))) = self.mf_modules.get() {
            match name {
                "X" => return Ok(x.clone()),
                "Y" => return Ok(y.clone()),
                _ => {}
            }
        }
        Err(CliError::Usage(format!("unknown module {name:?}")))
    }

    pub fn object(&self, e: &ObjectExpr) -> Result<GradedModule, CliError> {
        match e {
            ObjectExpr::Named(n, s) => Ok(self.module(n)?.shift(*s)),
            ObjectExpr::Syzygy(inner, s) => Ok(self.object(inner)?.syzygy().shift(*s)),
        }
    }

    pub fn nu(&self) -> Result<Option<GradedAutomorphism>, CliError> {
        let a = self.working()?;
        let spec = self.manifest().pipeline.quadric.as_ref().and_then(|q| q.nu.clone());
        Ok(match spec {
            None => None,
            Some(NuSpec::Named(_)) => Some(GradedAutomorphism::identity(&a)),
            Some(NuSpec::Images(im)) => {
                let images = im.iter().map(|s| self.poly(s)).collect::<Result<Vec<_>, _>>()?;
                Some(GradedAutomorphism::from_images(&a, &images).map_err(CliError::from_algebra)?)
            }
        })
    }

    pub fn context(&self) -> Result<&TailsContext, CliError> {
        self.context
            .get_or_init(|| {
                let a = self.working()?;
                TailsContext::new(a, self.nu()?, 2).map_err(CliError::from_helix)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn base(&self, name: &str) -> Result<Arc<Base>, CliError> {
        if let Some(b) = self.bases.lock().expect("lock").get(name) {
            return Ok(b.clone());
        }
        let ctx = self.context()?;
        let b = if name == "A" { ctx.regular.clone() } else { ctx.base(name, self.module(name)?) };
        self.bases.lock().expect("lock").insert(name.to_string(), b.clone());
        Ok(b)
    }

    /// A tails object `NAME(n)`.
    pub fn handle(&self, s: &str) -> Result<ObjectHandle, CliError> {
        match parse_object(s)? {
            ObjectExpr::Named(n, shift) => Ok(ObjectHandle::new(&self.base(&n)?, shift)),
            ObjectExpr::Syzygy(..) => Err(CliError::Usage("tails objects must be named modules with a shift".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn object_expressions() {
        assert_eq!(parse_object("X").unwrap(), ObjectExpr::Named("X".into(), 0));
        assert_eq!(parse_object("A(-1)").unwrap(), ObjectExpr::Named("A".into(), -1));
        assert_eq!(
            parse_object("syz(X)(1)").unwrap(),
            ObjectExpr::Syzygy(Box::new(ObjectExpr::Named("X".into(), 0)), 1)
        );
        assert_eq!(
            parse_object("syz(syz(Y(2)))").unwrap(),
            ObjectExpr::Syzygy(Box::new(ObjectExpr::Syzygy(Box::new(ObjectExpr::Named("Y".into(), 2)), 0)), 0)
        );
        assert!(parse_object("X+Y").is_err());
        assert!(parse_object("").is_err());
    }
}
