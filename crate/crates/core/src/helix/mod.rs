//! Window-certified checks in the quotient category `tails A` of a quantum
//! quadric: tails-Ext through module data, exceptional sequences, helices,
//! mutations, the standard/non-standard test, section algebras and
//! regularity evidence.

mod exceptional;
mod mutation;
mod regularity;
mod section;
mod standard;

pub use exceptional::{check_geometric_helix, check_relative_exceptional, ExceptionalReport, HelixReport, Re1Form};
pub use mutation::{left_mutation, right_mutation};
pub use regularity::{regularity_evidence, RegularityEvidence, Side, SideEvidence};
pub use section::{endomorphism_algebra, section_algebra, SectionAlgebra};
pub use standard::{classify_standard, Standardness, StandardnessVerdict};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{AlgebraError, GradedAutomorphism, TabulatedAlgebra};
use crate::modules::{mcm_check, DegreeTable, GradedModule, ModuleError, Resolution};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum HelixError {
    #[error("the Nakayama automorphism is required for Ext^2 and (H2)")]
    MissingNu,
    #[error("{0} is not maximal Cohen-Macaulay in the window")]
    NotMcm(String),
    #[error("Ext^{q} between the pair does not vanish, so Hom is not concentrated in degree 0")]
    NotConcentrated { q: usize },
    #[error("evaluation map is not surjective")]
    NotSurjective,
    #[error("coevaluation map is not injective")]
    NotInjective,
    #[error("the two modules are isomorphic")]
    IsomorphicInputs,
    #[error("window too small: {0}")]
    WindowTooShort(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A named module together with its cached resolution.
#[derive(Debug)]
pub struct Base {
    pub name: String,
    pub module: GradedModule,
    resolution: OnceLock<Resolution>,
}

/// Depth of the cached resolutions: enough for Ext up to degree 3.
const RESOLUTION_DEPTH: usize = 4;

impl Base {
    pub fn new(name: &str, module: GradedModule) -> Arc<Base> {
        Arc::new(Base { name: name.to_string(), module, resolution: OnceLock::new() })
    }

    pub fn resolution(&self) -> &Resolution {
        self.resolution.get_or_init(|| self.module.resolve(RESOLUTION_DEPTH))
    }
}

/// The object `π(⊕ parts)(shift)`; a single part in the usual case.
#[derive(Clone, Debug)]
pub struct ObjectHandle {
    pub parts: Vec<Arc<Base>>,
    pub shift: i32,
}

impl ObjectHandle {
    pub fn new(base: &Arc<Base>, shift: i32) -> ObjectHandle {
        ObjectHandle { parts: vec![base.clone()], shift }
    }

    pub fn sum(parts: &[Arc<Base>], shift: i32) -> ObjectHandle {
        ObjectHandle { parts: parts.to_vec(), shift }
    }

    pub fn shifted(&self, n: i32) -> ObjectHandle {
        ObjectHandle { parts: self.parts.clone(), shift: self.shift + n }
    }

    /// The underlying module `(⊕ parts)(shift)`.
    pub fn module(&self) -> Result<GradedModule, ModuleError> {
        let mut m = self.parts[0].module.clone();
        for p in &self.parts[1..] {
            m = m.direct_sum(&p.module)?;
        }
        Ok(m.shift(self.shift))
    }
}

impl fmt::Display for ObjectHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.parts.iter().map(|p| p.name.as_str()).collect();
        let body = if names.len() == 1 { names[0].to_string() } else { format!("({})", names.join("+")) };
        if self.shift == 0 {
            write!(f, "{body}")
        } else {
            write!(f, "{body}({})", self.shift)
        }
    }
}

/// A dimension with its certification flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtValue {
    pub dim: usize,
    pub certified: bool,
}

impl ExtValue {
    fn add(self, o: ExtValue) -> ExtValue {
        ExtValue { dim: self.dim + o.dim, certified: self.certified && o.certified }
    }
}

/// Shared data of a quadric pipeline: the algebra, its regular module, the
/// Nakayama automorphism `ν` and the shift in `ω = A_ν(-shift)`, plus
/// caches of Ext tables between bases.
#[derive(Debug)]
pub struct TailsContext {
    pub alg: Arc<TabulatedAlgebra>,
    pub regular: Arc<Base>,
    pub nu: Option<GradedAutomorphism>,
    pub omega_shift: i32,
    tables: Mutex<HashMap<(String, String, usize), DegreeTable>>,
    twisted: Mutex<HashMap<(String, bool), Arc<Base>>>,
    pub(super) isos: Mutex<HashMap<(String, String, i32), (bool, bool)>>,
    pub(super) re1: Mutex<HashMap<String, (Option<Re1Form>, bool)>>,
    mcm: Mutex<HashMap<String, bool>>,
}

impl TailsContext {
    pub fn new(
        alg: Arc<TabulatedAlgebra>,
        nu: Option<GradedAutomorphism>,
        omega_shift: i32,
    ) -> Result<TailsContext, HelixError> {
        let top = alg.truncation() as i32;
        let regular = Base::new("A", GradedModule::regular(&alg, top)?);
        Ok(TailsContext {
            alg,
            regular,
            nu,
            omega_shift,
            tables: Mutex::new(HashMap::new()),
            twisted: Mutex::new(HashMap::new()),
            isos: Mutex::new(HashMap::new()),
            re1: Mutex::new(HashMap::new()),
            mcm: Mutex::new(HashMap::new()),
        })
    }

    pub fn base(&self, name: &str, module: GradedModule) -> Arc<Base> {
        Base::new(name, module)
    }

    /// Degree range of the cached tables.
    fn range(&self) -> (i32, i32) {
        let d = self.alg.truncation() as i32;
        (-d - self.omega_shift, d + self.omega_shift)
    }

    fn table(&self, m: &Base, n: &Base, q: usize) -> DegreeTable {
        let key = (m.name.clone(), n.name.clone(), q);
        if let Some(t) = self.tables.lock().expect("cache lock").get(&key) {
            return t.clone();
        }
        let (lo, hi) = self.range();
        let t = m.resolution().ext_table(&n.module, q, lo, hi);
        self.tables.lock().expect("cache lock").insert(key, t.clone());
        t
    }

    /// `M_ν`, or `M_{ν^{-1}}` when `inverse` is set.
    pub(super) fn twisted(&self, m: &Arc<Base>, inverse: bool) -> Result<Arc<Base>, HelixError> {
        let nu = self.nu.as_ref().ok_or(HelixError::MissingNu)?;
        if nu.is_identity() {
            return Ok(m.clone());
        }
        let key = (m.name.clone(), inverse);
        if let Some(b) = self.twisted.lock().expect("cache lock").get(&key) {
            return Ok(b.clone());
        }
        let (auto, suffix) = if inverse {
            (nu.inverse().ok_or(crate::modules::ModuleError::NotAutomorphism)?, "_nuinv")
        } else {
            (nu.clone(), "_nu")
        };
        let b = Base::new(&format!("{}{suffix}", m.name), m.module.twist_by_auto(&auto)?);
        self.twisted.lock().expect("cache lock").insert(key, b.clone());
        Ok(b)
    }

    /// Whether `Ext^i(M, A)` vanishes in certified rows for `1 ≤ i ≤ 3`.
    pub fn is_mcm(&self, m: &Base) -> Result<bool, HelixError> {
        if let Some(v) = self.mcm.lock().expect("cache lock").get(&m.name) {
            return Ok(*v);
        }
        let v = mcm_check(&m.module, &self.regular.module, 3)?.mcm;
        self.mcm.lock().expect("cache lock").insert(m.name.clone(), v);
        Ok(v)
    }

    fn require_mcm(&self, h: &ObjectHandle) -> Result<(), HelixError> {
        for p in &h.parts {
            if !self.is_mcm(p)? {
                return Err(HelixError::NotMcm(p.name.clone()));
            }
        }
        Ok(())
    }

    fn lookup(t: &DegreeTable, k: i32) -> ExtValue {
        match t.get(k) {
            Some((dim, certified)) => ExtValue { dim, certified },
            None => ExtValue { dim: 0, certified: false },
        }
    }

    fn part_ext(&self, m: &Arc<Base>, n: &Arc<Base>, q: usize, k: i32) -> Result<ExtValue, HelixError> {
        Ok(match q {
            0 | 1 => Self::lookup(&self.table(m, n, q), k),
            2 => {
                let mt = self.twisted(m, false)?;
                Self::lookup(&self.table(n, &mt, 0), -k - self.omega_shift)
            }
            _ => ExtValue { dim: 0, certified: true },
        })
    }

    /// `dim Ext^q(ℳ, 𝒩)_n` in `tails A`: Hom and Ext¹ of the modules for
    /// `q ≤ 1`, the dual `Hom(N, M_ν(-shift))_{-n}` for `q = 2`, zero above.
    pub fn tails_ext(&self, mh: &ObjectHandle, nh: &ObjectHandle, q: usize, n: i32) -> Result<ExtValue, HelixError> {
        self.require_mcm(mh)?;
        self.require_mcm(nh)?;
        let k = n + nh.shift - mh.shift;
        let mut acc = ExtValue { dim: 0, certified: true };
        for m in &mh.parts {
            for p in &nh.parts {
                acc = acc.add(self.part_ext(m, p, q, k)?);
            }
        }
        Ok(acc)
    }
}
