//! Truncated evidence for AS-regularity over the degree-zero part.

use std::sync::Arc;

use super::HelixError;
use crate::algebra::TabulatedAlgebra;
use crate::modules::{DegreeTable, GradedModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::Right => "right",
            Side::Left => "left",
        }
    }
}

/// Resolution of `B_0` over `B` (or `B^op`) and the Ext groups into `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideEvidence {
    pub side: Side,
    pub betti: Vec<Vec<i32>>,
    pub terminated: bool,
    pub ext: Vec<DegreeTable>,
    /// `(d, ℓ)` read off the Ext pattern.
    pub candidate: Option<(usize, i32)>,
    pub failure: Option<String>,
    /// The failure only concerns uncertified rows.
    pub inconclusive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityEvidence {
    pub right: SideEvidence,
    pub left: SideEvidence,
    pub max_homological_degree: usize,
    pub truncation: u32,
}

impl RegularityEvidence {
    /// `(d, ℓ)` when both sides agree.
    pub fn candidate(&self) -> Option<(usize, i32)> {
        match (self.right.candidate, self.left.candidate) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn failure(&self) -> Option<String> {
        for s in [&self.right, &self.left] {
            if let Some(f) = &s.failure {
                return Some(format!("{} side: {f}", s.side.label()));
            }
        }
        if self.candidate().is_none() {
            return Some("left and right sides disagree".into());
        }
        None
    }

    pub fn inconclusive(&self) -> bool {
        self.right.inconclusive || self.left.inconclusive
    }
}

fn side_evidence(b: &Arc<TabulatedAlgebra>, side: Side, h: usize) -> Result<SideEvidence, HelixError> {
    let top = b.truncation() as i32;
    let b0 = GradedModule::trivial(b, top)?;
    let reg = GradedModule::regular(b, top)?;
    let res = b0.resolve(h);
    let betti = res.betti();
    let mut ev = SideEvidence {
        side,
        betti,
        terminated: res.terminated,
        ext: Vec::new(),
        candidate: None,
        failure: None,
        inconclusive: false,
    };
    if !res.terminated {
        ev.failure = Some(format!("the resolution of B_0 does not terminate by homological degree {h}"));
        ev.inconclusive = true;
        return Ok(ev);
    }
    let d = res.steps.iter().rposition(|s| !s.gens.is_empty()).unwrap_or(0);
    for q in 0..=d {
        let (lo, hi) = res.relevant_degrees(&reg, q);
        ev.ext.push(res.ext_table(&reg, q, lo, hi));
    }
    for t in &ev.ext[..d] {
        if let Some(k) = t.dims.iter().zip(&t.certified).position(|(&x, &c)| c && x != 0) {
            ev.failure = Some(format!("Ext^{} is nonzero in degree {}", t.q, t.lo + k as i32));
            return Ok(ev);
        }
    }
    let top_table = &ev.ext[d];
    let support: Vec<i32> = (0..top_table.dims.len())
        .filter(|&k| top_table.certified[k] && top_table.dims[k] != 0)
        .map(|k| top_table.lo + k as i32)
        .collect();
    let dim_b0 = b.dim(0);
    match support.as_slice() {
        [] => {
            ev.failure = Some(format!("Ext^{d} vanishes on every certified row"));
            ev.inconclusive = !top_table.certified.iter().all(|c| *c);
        }
        [n] => {
            let got = top_table.get(*n).map_or(0, |x| x.0);
            if got != dim_b0 {
                ev.failure = Some(format!("Ext^{d} has dimension {got} in degree {n}, expected {dim_b0}"));
            } else {
                ev.candidate = Some((d, -n));
            }
        }
        many => {
            let degs: Vec<String> = many.iter().map(ToString::to_string).collect();
            ev.failure = Some(format!("Ext^{d} is spread over degrees {}", degs.join(", ")));
        }
    }
    Ok(ev)
}

/// Resolves `B_0` over `B` and `B^op` up to homological degree `h` and
/// reads `(d, ℓ)` from the degrees in which `Ext^q(B_0, B)` lives.
pub fn regularity_evidence(b: &Arc<TabulatedAlgebra>, h: usize) -> Result<RegularityEvidence, HelixError> {
    let right = side_evidence(b, Side::Right, h)?;
    let op = Arc::new(b.opposite());
    let left = side_evidence(&op, Side::Left, h)?;
    Ok(RegularityEvidence { right, left, max_homological_degree: h, truncation: b.truncation() })
}
