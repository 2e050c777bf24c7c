//! Relative exceptional sequences and geometric helices on finite windows.

use std::sync::Arc;

use super::section::endomorphism_algebra;
use super::{Base, HelixError, ObjectHandle, TailsContext};
use crate::modules::is_isomorphic;

/// The sufficient condition used for (RE1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Re1Form {
    /// `End(E)` is semisimple.
    SemisimpleEnd,
    /// `E` is a sum of parts with `End = k` forming an exceptional sequence
    /// in the given order, so `End(E)` is triangular with diagonal `k`.
    TriangularEnd,
}

impl Re1Form {
    pub fn describe(self) -> &'static str {
        match self {
            Re1Form::SemisimpleEnd => "End is semisimple",
            Re1Form::TriangularEnd => "End is triangular over an exceptional decomposition",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalReport {
    pub objects: Vec<String>,
    /// Form under which (RE1) held for each object, `None` if it failed.
    pub re1: Vec<Option<Re1Form>>,
    pub re2_failures: Vec<String>,
    pub re3_failures: Vec<String>,
    /// Every table row consulted was certified.
    pub certified: bool,
}

impl ExceptionalReport {
    pub fn re1_holds(&self) -> bool {
        self.re1.iter().all(Option::is_some)
    }

    pub fn holds(&self) -> bool {
        self.re1_holds() && self.re2_failures.is_empty() && self.re3_failures.is_empty()
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .re1
            .iter()
            .zip(&self.objects)
            .filter(|(f, _)| f.is_none())
            .map(|(_, o)| format!("RE1: End({o}) is not semisimple or triangular"))
            .collect();
        out.extend(self.re2_failures.iter().map(|f| format!("RE2: {f}")));
        out.extend(self.re3_failures.iter().map(|f| format!("RE3: {f}")));
        out
    }
}

struct Tally<'a> {
    ctx: &'a TailsContext,
    certified: bool,
}

impl Tally<'_> {
    /// Dimension of a certified row; uncertified rows count as zero and
    /// clear the certification flag.
    fn ext(&mut self, e: &ObjectHandle, f: &ObjectHandle, q: usize) -> Result<usize, HelixError> {
        let v = self.ctx.tails_ext(e, f, q, 0)?;
        self.certified &= v.certified;
        Ok(if v.certified { v.dim } else { 0 })
    }
}

fn re1_single(b: &Arc<Base>) -> Result<(bool, usize), HelixError> {
    let end = endomorphism_algebra(&b.module)?;
    Ok((end.semisimple_type().semisimple, end.dim()))
}

fn re1(ctx: &TailsContext, h: &ObjectHandle) -> Result<(Option<Re1Form>, bool), HelixError> {
    let key = h.parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join("+");
    if let Some(v) = ctx.re1.lock().expect("cache lock").get(&key) {
        return Ok(*v);
    }
    let out = if h.parts.len() == 1 {
        let (ss, _) = re1_single(&h.parts[0])?;
        (ss.then_some(Re1Form::SemisimpleEnd), true)
    } else {
        let parts: Vec<ObjectHandle> = h.parts.iter().map(|p| ObjectHandle::new(p, 0)).collect();
        let mut ok = true;
        for p in &h.parts {
            let (ss, dim) = re1_single(p)?;
            ok &= ss && dim == 1;
        }
        let sub = check_parts(ctx, &parts)?;
        let ok = ok && sub.re2_failures.is_empty() && sub.re3_failures.is_empty();
        (ok.then_some(Re1Form::TriangularEnd), sub.certified)
    };
    ctx.re1.lock().expect("cache lock").insert(key, out);
    Ok(out)
}

/// (RE2) and (RE3) for a sequence, without (RE1).
fn check_parts(ctx: &TailsContext, seq: &[ObjectHandle]) -> Result<ExceptionalReport, HelixError> {
    let mut t = Tally { ctx, certified: true };
    let mut re2_failures = Vec::new();
    let mut re3_failures = Vec::new();
    for (i, e) in seq.iter().enumerate() {
        for q in 1..=2 {
            let d = t.ext(e, e, q)?;
            if d != 0 {
                re2_failures.push(format!("Ext^{q}({e}, {e}) has dimension {d}"));
            }
        }
        for f in &seq[..i] {
            for q in 0..=2 {
                let d = t.ext(e, f, q)?;
                if d != 0 {
                    re3_failures.push(format!("Ext^{q}({e}, {f}) has dimension {d}"));
                }
            }
        }
    }
    Ok(ExceptionalReport {
        objects: seq.iter().map(ToString::to_string).collect(),
        re1: Vec::new(),
        re2_failures,
        re3_failures,
        certified: t.certified,
    })
}

/// Checks (RE1)–(RE3) for `seq` in `tails A`, Ext taken in degree 0.
pub fn check_relative_exceptional(ctx: &TailsContext, seq: &[ObjectHandle]) -> Result<ExceptionalReport, HelixError> {
    let mut report = check_parts(ctx, seq)?;
    for h in seq {
        let (form, certified) = re1(ctx, h)?;
        report.re1.push(form);
        report.certified &= certified;
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HelixReport {
    pub window: (i32, i32),
    pub period: usize,
    /// Forms used for (RE1), without repetition.
    pub re1_forms: Vec<Re1Form>,
    pub h1_failures: Vec<String>,
    pub h2_failures: Vec<String>,
    pub geometric_failures: Vec<String>,
    pub certified: bool,
}

impl HelixReport {
    pub fn h1(&self) -> bool {
        self.h1_failures.is_empty()
    }

    pub fn h2(&self) -> bool {
        self.h2_failures.is_empty()
    }

    pub fn geometric(&self) -> bool {
        self.geometric_failures.is_empty()
    }

    pub fn holds(&self) -> bool {
        self.h1() && self.h2() && self.geometric()
    }
}

/// Whether `E_{i+ℓ} ≅ (E_i)_{ν^{-1}}(shift)`, part by part.
fn serre_shift_matches(
    ctx: &TailsContext,
    later: &ObjectHandle,
    earlier: &ObjectHandle,
) -> Result<(bool, bool), HelixError> {
    if later.parts.len() != earlier.parts.len() {
        return Ok((false, true));
    }
    let delta = earlier.shift + ctx.omega_shift - later.shift;
    let mut all = true;
    let mut certified = true;
    for (a, b) in later.parts.iter().zip(&earlier.parts) {
        let key = (a.name.clone(), b.name.clone(), delta);
        let cached = ctx.isos.lock().expect("cache lock").get(&key).copied();
        let (iso, cert) = match cached {
            Some(v) => v,
            None => {
                let tb = ctx.twisted(b, true)?;
                let v = is_isomorphic(&a.module, &tb.module.shift(delta))?;
                let v = (v.isomorphic, v.certified);
                ctx.isos.lock().expect("cache lock").insert(key, v);
                v
            }
        };
        all &= iso;
        certified &= cert;
    }
    Ok((all, certified))
}

/// Checks (H1), (H2) and geometricity of `i ↦ rule(i)` on the index window.
pub fn check_geometric_helix(
    ctx: &TailsContext,
    rule: &dyn Fn(i32) -> ObjectHandle,
    period: usize,
    window: (i32, i32),
) -> Result<HelixReport, HelixError> {
    let (lo, hi) = window;
    let l = period as i32;
    if period == 0 || hi - lo + 1 < l {
        return Err(HelixError::WindowTooShort(format!("window [{lo}, {hi}] is shorter than the period")));
    }
    let objects: Vec<ObjectHandle> = (lo..=hi).map(rule).collect();
    let mut report = HelixReport {
        window,
        period,
        re1_forms: Vec::new(),
        h1_failures: Vec::new(),
        h2_failures: Vec::new(),
        geometric_failures: Vec::new(),
        certified: true,
    };
    for start in 0..=(hi - lo + 1 - l) as usize {
        let seq = &objects[start..start + period];
        let r = check_relative_exceptional(ctx, seq)?;
        report.certified &= r.certified;
        for f in r.re1.iter().flatten() {
            if !report.re1_forms.contains(f) {
                report.re1_forms.push(*f);
            }
        }
        let i = lo + start as i32;
        report.h1_failures.extend(r.failures().into_iter().map(|f| format!("window at {i}: {f}")));
    }
    for i in lo..=hi - l {
        let k = (i - lo) as usize;
        let (ok, cert) = serre_shift_matches(ctx, &objects[k + period], &objects[k])?;
        report.certified &= cert;
        if !ok {
            report.h2_failures.push(format!(
                "E_{} = {} is not the Serre twist of E_{i} = {}",
                i + l,
                objects[k + period],
                objects[k]
            ));
        }
    }
    let mut t = Tally { ctx, certified: true };
    for (a, e) in objects.iter().enumerate() {
        for f in &objects[a..] {
            for q in 1..=2 {
                let d = t.ext(e, f, q)?;
                if d != 0 {
                    report.geometric_failures.push(format!("Ext^{q}({e}, {f}) has dimension {d}"));
                }
            }
        }
    }
    report.certified &= t.certified;
    Ok(report)
}
