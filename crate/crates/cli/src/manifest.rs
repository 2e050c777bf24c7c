//! TOML manifests describing one algebraic setup.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use qhelix::exactla::Field;
use qhelix::freealg::{parse_poly, GeneratorSet};

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub name: Option<String>,
    pub algebra: AlgebraSection,
    pub central: Option<CentralSection>,
    pub automorphism: Option<AutomorphismSection>,
    #[serde(default)]
    pub module: BTreeMap<String, ModuleSection>,
    pub matrix_factorization: Option<MfSection>,
    #[serde(default)]
    pub pipeline: PipelineSection,
    pub derived: Option<DerivedSection>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSection {
    pub generators: Vec<String>,
    pub degrees: Option<Vec<u32>>,
    pub relations: Vec<String>,
    pub truncation: u32,
    pub field: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentralSection {
    pub element: String,
    #[serde(default)]
    pub quotient: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismSection {
    pub images: Vec<String>,
}

/// Cokernel of a matrix over the working algebra; row `i` belongs to the
/// `i`-th generator, column `j` is the `j`-th relation.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSection {
    pub matrix: Vec<Vec<String>>,
    pub generator_shifts: Option<Vec<i32>>,
    pub relation_shifts: Option<Vec<i32>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MfSection {
    pub p: Vec<Vec<String>>,
    pub q: Vec<Vec<String>>,
    pub f: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineSection {
    pub quadric: Option<QuadricSection>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadricSection {
    /// `"identity"` or a list of generator images.
    pub nu: Option<NuSpec>,
    pub window: Option<[i32; 2]>,
    pub blocked_window: Option<[i32; 2]>,
    pub sequence: Option<Vec<String>>,
    pub hbound: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum NuSpec {
    Named(String),
    Images(Vec<String>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivedSection {
    pub quasi_veronese: Option<u32>,
}

const BUNDLED: [(&str, &str); 5] = [
    ("quadric_commutative", include_str!("../manifests/quadric_commutative.toml")),
    ("quadric_sigma", include_str!("../manifests/quadric_sigma.toml")),
    ("cubic_as3", include_str!("../manifests/cubic_as3.toml")),
    ("poly_x_deg3", include_str!("../manifests/poly_x_deg3.toml")),
    ("qvas_counterexample", include_str!("../manifests/qvas_counterexample.toml")),
];

pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

pub fn bundled_text(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// A parsed manifest with its source text and digest.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub name: String,
    pub manifest: Manifest,
    pub digest: String,
}

pub fn parse_field(s: &str) -> Result<Field, CliError> {
    if s == "q" || s == "Q" {
        return Ok(Field::Rational);
    }
    let p = s
        .strip_prefix("p:")
        .and_then(|p| p.parse::<u32>().ok())
        .ok_or_else(|| CliError::Usage(format!("field must be q or p:<prime>, got {s:?}")))?;
    let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
    if !prime {
        return Err(CliError::Usage(format!("{p} is not prime")));
    }
    Ok(Field::Prime(p))
}

impl Manifest {
    pub fn generator_set(&self) -> Result<GeneratorSet, CliError> {
        let a = &self.algebra;
        let degrees = a.degrees.clone().unwrap_or_else(|| vec![1; a.generators.len()]);
        GeneratorSet::new(a.generators.clone(), degrees).map_err(|e| CliError::Parse(e.to_string()))
    }

    /// Every polynomial string must parse over the declared generators.
    fn validate(&self) -> Result<(), CliError> {
        let g = self.generator_set()?;
        let check = |s: &str, what: &str| {
            parse_poly(s, &g).map(|_| ()).map_err(|e| CliError::Parse(format!("{what}: {s:?}: {e}")))
        };
        for r in &self.algebra.relations {
            check(r, "relation")?;
        }
        if let Some(f) = &self.algebra.field {
            parse_field(f)?;
        }
        if let Some(c) = &self.central {
            check(&c.element, "central element")?;
        }
        if let Some(a) = &self.automorphism {
            if a.images.len() != g.len() {
                return Err(CliError::Parse("automorphism needs one image per generator".into()));
            }
            for s in &a.images {
                check(s, "automorphism image")?;
            }
        }
        for (name, m) in &self.module {
            if ["A", "k"].contains(&name.as_str()) {
                return Err(CliError::Parse(format!("module name {name} is reserved")));
            }
            for s in m.matrix.iter().flatten() {
                check(s, &format!("module {name}"))?;
            }
        }
        if let Some(mf) = &self.matrix_factorization {
            for s in mf.p.iter().chain(&mf.q).flatten() {
                check(s, "matrix factorization")?;
            }
            if let Some(f) = &mf.f {
                check(f, "matrix factorization f")?;
            } else if self.central.is_none() {
                return Err(CliError::Parse("matrix factorization needs f or a [central] element".into()));
            }
        }
        if let Some(NuSpec::Images(im)) = self.pipeline.quadric.as_ref().and_then(|q| q.nu.as_ref()) {
            for s in im {
                check(s, "nu image")?;
            }
        }
        if let Some(NuSpec::Named(n)) = self.pipeline.quadric.as_ref().and_then(|q| q.nu.as_ref()) {
            if n != "identity" {
                return Err(CliError::Parse(format!("unknown nu {n:?}")));
            }
        }
        Ok(())
    }
}

pub fn parse_manifest(text: &str) -> Result<Manifest, CliError> {
    let m: Manifest = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    m.validate()?;
    Ok(m)
}

/// Loads a bundled manifest by name, or a manifest file by path.
pub fn load(spec: &str) -> Result<Loaded, CliError> {
    let (text, default_name) = match bundled_text(spec) {
        Some(t) => (t.to_string(), spec.to_string()),
        None => {
            let path = Path::new(spec);
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read manifest {spec}: {e}")))?;
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("manifest").to_string();
            (text, stem)
        }
    };
    let manifest = parse_manifest(&text)?;
    let digest: String = Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
    let name = manifest.name.clone().unwrap_or(default_name);
    Ok(Loaded { name, manifest, digest })
}
