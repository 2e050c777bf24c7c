//! The `run` subcommands. Each turns a session and its `key=value`
//! arguments into a JSON result and a verdict.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use qhelix::algebra::{GradedAutomorphism, HilbertSeries, SemisimpleReport, TabulatedAlgebra};
use qhelix::helix::{
    check_geometric_helix, check_relative_exceptional, classify_standard, left_mutation, regularity_evidence,
    right_mutation, section_algebra, HelixReport, ObjectHandle, RegularityEvidence, SectionAlgebra, SideEvidence,
    Standardness,
};
use qhelix::modules::{ext_graded, hom_graded, is_isomorphic, mcm_check, verify_mf, DegreeTable, GradedModule};

use crate::session::{parse_object, Session};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Computed,
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Computed => "computed",
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Computed | Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 3,
        }
    }

    fn check(holds: bool) -> Verdict {
        if holds {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub verdict: Verdict,
    pub result: Value,
    pub certified_up_to: Option<i32>,
}

impl Outcome {
    fn new(verdict: Verdict, result: Value) -> Outcome {
        Outcome { verdict, result, certified_up_to: None }
    }

    pub fn error(verdict: Verdict, message: String) -> Outcome {
        Outcome::new(verdict, json!({ "error": message }))
    }
}

type Args = BTreeMap<String, String>;
type Runner = fn(&Session, &Args) -> Result<Outcome, CliError>;

pub struct CommandSpec {
    pub name: &'static str,
    pub keys: &'static [&'static str],
    pub summary: &'static str,
    pub run: Runner,
}

impl CommandSpec {
    pub fn check_keys(&self, args: &Args) -> Result<(), CliError> {
        for k in args.keys() {
            if !self.keys.contains(&k.as_str()) {
                return Err(CliError::Usage(format!("{} does not take {k}=", self.name)));
            }
        }
        Ok(())
    }
}

pub const COMMANDS: &[CommandSpec] = &[
    CommandSpec {
        name: "hilbert",
        keys: &["module"],
        summary: "Hilbert series of the algebra or of a module",
        run: hilbert,
    },
    CommandSpec { name: "gb", keys: &[], summary: "truncated Gröbner basis of the working presentation", run: gb },
    CommandSpec { name: "veronese", keys: &["r"], summary: "r-th Veronese subalgebra", run: veronese },
    CommandSpec { name: "qveronese", keys: &["r"], summary: "r-th quasi-Veronese algebra", run: qveronese },
    CommandSpec { name: "beilinson", keys: &["l"], summary: "l-th Beilinson algebra", run: beilinson },
    CommandSpec { name: "twist", keys: &[], summary: "checks [automorphism] and tabulates the twist", run: twist },
    CommandSpec { name: "koszul", keys: &[], summary: "quadratic dual and the numerical Koszul identity", run: koszul },
    CommandSpec { name: "central", keys: &[], summary: "centrality and regularity of [central] element", run: central },
    CommandSpec { name: "cofa", keys: &[], summary: "degree-zero part of the localised quadratic dual", run: cofa },
    CommandSpec { name: "mf-verify", keys: &[], summary: "checks PQ = QP = fE", run: mf_verify },
    CommandSpec { name: "resolve", keys: &["module", "h"], summary: "minimal projective resolution", run: resolve },
    CommandSpec { name: "hom", keys: &["m", "n"], summary: "graded Hom table on the window", run: hom },
    CommandSpec { name: "ext", keys: &["m", "n", "q"], summary: "graded Ext^q table on the window", run: ext },
    CommandSpec { name: "mcm", keys: &["module"], summary: "maximal Cohen-Macaulay test", run: mcm },
    CommandSpec { name: "iso", keys: &["m", "n"], summary: "graded isomorphism test", run: iso },
    CommandSpec { name: "mutate-left", keys: &["e", "f", "compare"], summary: "left mutation L_E F", run: mutate_left },
    CommandSpec {
        name: "mutate-right",
        keys: &["f", "e", "compare"],
        summary: "right mutation R_E F",
        run: mutate_right,
    },
    CommandSpec {
        name: "exceptional",
        keys: &["seq"],
        summary: "relative exceptional sequence check",
        run: exceptional,
    },
    CommandSpec { name: "helix", keys: &[], summary: "period-4 helix and its blocked period-2 form", run: helix },
    CommandSpec { name: "classify-standard", keys: &[], summary: "standard or non-standard (X, Y)", run: classify },
    CommandSpec {
        name: "section-algebra",
        keys: &["parts", "top"],
        summary: "algebra of sections of a sum",
        run: section,
    },
    CommandSpec {
        name: "regularity",
        keys: &["parts", "top", "h"],
        summary: "AS-regularity evidence",
        run: regularity,
    },
];

pub fn lookup(name: &str) -> Result<&'static CommandSpec, CliError> {
    COMMANDS.iter().find(|c| c.name == name).ok_or_else(|| CliError::Usage(format!("unknown command {name:?}")))
}

fn int<T: std::str::FromStr>(args: &Args, key: &str, default: Option<T>) -> Result<T, CliError> {
    match args.get(key) {
        Some(v) => v.parse().map_err(|_| CliError::Usage(format!("{key}= expects an integer, got {v:?}"))),
        None => default.ok_or_else(|| CliError::Usage(format!("missing {key}="))),
    }
}

fn required<'a>(args: &'a Args, key: &str) -> Result<&'a str, CliError> {
    args.get(key).map(String::as_str).ok_or_else(|| CliError::Usage(format!("missing {key}=")))
}

fn list(s: &str) -> Vec<String> {
    s.split(',').map(|p| p.trim().to_string()).filter(|p| !p.is_empty()).collect()
}

fn series_json(h: &HilbertSeries) -> Value {
    json!({
        "offset": h.offset,
        "series": h.dims,
        "closed_form": h.closed_form_string(),
        "bound": h.offset + h.dims.len() as i32 - 1,
    })
}

fn dims_json(a: &TabulatedAlgebra) -> Value {
    series_json(&a.hilbert())
}

fn semisimple_json(r: &SemisimpleReport) -> Value {
    json!({
        "dimension": r.dimension,
        "radical_dimension": r.radical_dim,
        "semisimple": r.semisimple,
        "center_dimension": r.center_dim,
        "blocks": r.blocks,
        "note": r.note,
    })
}

fn table_json(t: &DegreeTable) -> Value {
    let nonzero: BTreeMap<String, usize> = t
        .dims
        .iter()
        .zip(&t.certified)
        .enumerate()
        .filter(|(_, (d, c))| **c && **d != 0)
        .map(|(k, (d, _))| ((t.lo + k as i32).to_string(), *d))
        .collect();
    json!({
        "q": t.q,
        "degrees": (t.lo..=t.hi()).collect::<Vec<_>>(),
        "dims": t.dims,
        "certified": t.certified,
        "table": nonzero,
        "bound": t.hi(),
        "certified_up_to": t.certified_up_to(),
        "series": series_json(&t.series()),
    })
}

fn hom_window(s: &Session) -> (i32, i32) {
    s.window.unwrap_or((-5, 5))
}

fn hilbert(s: &Session, args: &Args) -> Result<Outcome, CliError> {
    let (label, h) = match args.get("module") {
        None => ("A".to_string(), s.working()?.hilbert()),
        Some(e) => (e.clone(), s.object(&parse_object(e)?)?.hilbert()),
    };
    let mut result = series_json(&h);
    result["object"] = json!(label);
    let mut o = Outcome::new(Verdict::Computed, result);
    o.certified_up_to = Some(h.offset + h.dims.len() as i32 - 1);
    Ok(o)
}

fn gb(s: &Session, _: &Args) -> Result<Outcome, CliError> {
    let p = s.presented()?;
    let g = p.gb();
    let elements: Vec<String> = g.elements().iter().map(|e| e.render(p.gens())).collect();
    let leads: Vec<String> = g.lead_words().map(|w| w.render(p.gens())).collect();
    let counts: Vec<usize> = g.normal_words_upto(s.truncation).iter().map(Vec::len).collect();
    Ok(Outcome::new(
        Verdict::Computed,
        json!({
            "elements": elements,
            "lead_words": leads,
            "normal_word_counts": counts,
            "truncation": g.truncation(),
        }),
    ))
}

fn veronese(s: &Session, args: &Args) -> Result<Outcome, CliError> {
    let r: u32 = int(args, "r", None)?;
    if r == 0 {
        return Err(CliError::Usage("r must be positive".into()));
    }
    let v = s.working()?.veronese(r);
    Ok(Outcome::new(Verdict::Computed, json!({ "r": r, "hilbert": dims_json(&v) })))
}

fn qveronese(s: &Session, args: &Args) -> Result<Outcome, CliError> {
    let r: u32 = int(args, "r", None)?;
    if r == 0 {
        return Err(CliError::Usage("r must be positive".into()));
    }
    let q = s.working()?.quasi_veronese(r);
    let ok = q.check_associativity(q.truncation().min(4));
    Ok(Outcome::new(
        Verdict::Computed,
        json!({
            "r": r,
            "hilbert": dims_json(&q),
            "degree_zero": semisimple_json(&q.degree_zero().semisimple_type()),
            "associative_to_degree": if ok { Some(q.truncation().min(4)) } else { None },
        }),
    ))
}

fn beilinson(s: &Session, args: &Args) -> Result<Outcome, CliError> {
    let l: u32 = int(args, "l", None)?;
    let b = s.working()?.beilinson(l);
    Ok(Outcome::new(
        Verdict::Computed,
        json!({ "l": l, "structure": semisimple_json(&b.semisimple_type()), "associative": b.is_associative() }),
    ))
}

fn twist(s: &Session, _: &Args) -> Result<Outcome, CliError> {
    let auto =
        s.manifest().automorphism.as_ref().ok_or_else(|| CliError::Usage("manifest has no [automorphism]".into()))?;
    let images = auto.images.iter().map(|i| s.poly(i)).collect::<Result<Vec<_>, _>>()?;
    let check = s.ambient().check_automorphism(&images).map_err(CliError::from_algebra)?;
    let mut result = json!({
        "images": auto.images,
        "relations_preserved": check.relations_preserved,
        "invertible": check.invertible,
        "checked_up_to": check.checked_up_to,
    });
    if check.holds() {
        let t = s.ambient().tabulate(s.truncation).map_err(CliError::from_algebra)?;
        let sigma = GradedAutomorphism::from_images(&t, &images).map_err(CliError::from_algebra)?;
        let tw = t.twist(&sigma).map_err(CliError::from_algebra)?;
        result["twisted"] = dims_json(&tw);
        result["twisted_associative"] = json!(tw.check_associativity(tw.truncation().min(4)));
    }
    Ok(Outcome::new(Verdict::check(check.holds()), result))
}

fn koszul(s: &Session, _: &Args) -> Result<Outcome, CliError> {
    let p = s.presented()?;
    let dual = p.koszul_dual().map_err(CliError::from_algebra)?;
    let d = s.truncation;
    let h = s.working()?.dims();
    let hd = dual.tabulate(d).map_err(CliError::from_algebra)?.dims();
    let mut failures = Vec::new();
    for n in 1..=d as usize {
        let sum: i64 = (0..=n).map(|i| if i % 2 == 0 { 1 } else { -1 } * (hd[i] * h[n - i]) as i64).sum();
        if sum != 0 {
            failures.push(json!({ "degree": n, "value": sum }));
        }
    }
    let relations: Vec<String> = dual.relations().iter().map(|r| r.render(dual.gens())).collect();
    Ok(Outcome::new(
        Verdict::check(failures.is_empty()),
        json!({
            "dims": h,
            "dual_dims": hd,
            "dual_relations": relations,
            "identity_failures": failures,
            "checked_to_degree": d,
        }),
    ))
}

fn central(s: &Session, _: &Args) -> Result<Outcome, CliError> {
    let Some(f) = s.central_element()? else {
        let t = s.working()?;
        let found = t.find_central_degree2().len();
        return Ok(Outcome::new(Verdict::Computed, json!({ "central_degree_two_dimension": found })));
    };
    let t = s.ambient().tabulate(s.truncation).map_err(CliError::from_algebra)?;
    let e = t.eval_poly(&f).map_err(CliError::from_algebra)?;
    let is_central = t.is_central(&e);
    let regular = is_central && t.is_regular_central(&e).map_err(CliError::from_algebra)?;
    Ok(Outcome::new(
        Verdict::check(is_central && regular),
        json!({
            "element": f.render(s.ambient().gens()),
            "central": is_central,
            "regular": regular,
            "checked_to_degree": s.truncation,
        }),
    ))
}

fn cofa(s: &Session, _: &Args) -> Result<Outcome, CliError> {
    let p = s.presented()?;
    let dual = p.koszul_dual().map_err(CliError::from_algebra)?;
    let t = dual.tabulate(s.truncation).map_err(CliError::from_algebra)?;
    let z = t
        .regular_central_degree2()
        .ok_or_else(|| CliError::Fail("the quadratic dual has no regular central element of degree 2".into()))?;
    let c = t.c_of_a(&z).map_err(CliError::from_algebra)?;
    Ok(Outcome::new(
        Verdict::Computed,
        json!({
            "structure": semisimple_json(&c.algebra.semisimple_type()),
            "associative": c.algebra.is_associative(),
            "stabilised_at_degree": c.level,
        }),
    ))
}

fn mf_verify(s: &Session, _: &Args) -> Result<Outcome, CliError> {
    let mf = s.matrix_factorization()?;
    let check = verify_mf(s.ambient(), &mf).map_err(CliError::from_module)?;
    let residues: Vec<Value> = check
        .residues
        .iter()
        .map(|(l, i, j, r)| json!({ "product": l, "row": i, "column": j, "residue": r }))
        .collect();
    Ok(Outcome::new(
        Verdict::check(check.holds()),
        json!({
            "f": mf.f.render(s.ambient().gens()),
            "pq": check.pq_ok,
            "qp": check.qp_ok,
            "residues": residues,
        }),
    ))
}

fn module_arg(s: &Session, args: &Args, key: &str) -> Result<GradedModule, CliError> {
    s.object(&parse_object(required(args, key)?)?)
}

fn resolve(s: &Session, args: &Args) -> Result<Outcome, CliError> {
    let m = module_arg(s, args, "module")?;
    let h: usize = int(args, "h", Some(s.hbound))?;
    let r = m.resolve(h);
    let euler = r.euler_characteristic();
    let hilbert: Vec<i64> = (r.lo..=r.hi).map(|d| m.dim(d) as i64).collect();
    Ok(Outcome::new(
        Verdict::Computed,
        json!({
            "betti": r.betti(),
            "terminated": r.terminated,
            "window": [r.lo, r.hi],
            "euler_characteristic": euler,
            "module_dims": hilbert,
        }),
    ))
}

fn table_outcome(t: DegreeTable, m: &str, n: &str) -> Outcome {
    // no certified row at all reads as "certified below the window"
    let certified = t.certified_up_to().unwrap_or(t.lo - 1);
    let mut result = table_json(&t);
    result["m"] = json!(m);
    result["n"] = json!(n);
    let mut o = Outcome::new(Verdict::Computed, result);
    o.certified_up_to = Some(certified);
    o
}

fn hom(s: &Session, args: &Args) -> Result<Outcome, CliError> {
    let (m, n) = (module_arg(s, args, "m")?, module_arg(s, args, "n")?);
    let (lo, hi) = hom_window(s);
    let t = hom_graded(&m, &n, lo, hi).map_err(CliError::from_module)?;
    Ok(table_outcome(t, &args["m"], &args["n"]))
}

fn ext(s: &Session, args: &Args) -> Result<Outcome, CliError> {
    let (m, n) = (module_arg(s, args, "m")?, module_arg(s, args, "n")?);
    let q: usize = int(args, "q", None)?;
    let (lo, hi) = hom_window(s);
    let t = ext_graded(&m, &n, q, lo, hi).map_err(CliError::from_module)?;
    Ok(table_outcome(t, &args["m"], &args["n"]))
}

fn mcm(s: &Session, args: &Args) -> Result<Outcome, CliError> {
    let m = module_arg(s, args, "module")?;
    let a = s.module("A")?;
    let v = mcm_check(&m, &a, 3).map_err(CliError::from_module)?;
    let witnesses: Vec<Value> = v.witnesses.iter().map(|(i, d, n)| json!({ "i": i, "degree": d, "dim": n })).collect();
    // rows past the truncation are reported through fully_certified only
    Ok(Outcome::new(
        Verdict::check(v.mcm),
        json!({ "mcm": v.mcm, "witnesses": witnesses, "fully_certified": v.fully_certified, "checked_ext": [1, 3] }),
    ))
}

fn iso_json(v: &qhelix::modules::IsoVerdict) -> Value {
    json!({ "isomorphic": v.isomorphic, "reason": v.reason, "hom_dimension": v.hom_dim, "certified": v.certified })
}

fn iso_verdict(v: &qhelix::modules::IsoVerdict) -> Verdict {
    if v.certified {
        Verdict::check(v.isomorphic)
    } else {
        Verdict::Inconclusive
    }
}

fn iso(s: &Session, args: &Args) -> Result<Outcome, CliError> {
    let (m, n) = (module_arg(s, args, "m")?, module_arg(s, args, "n")?);
    let v = is_isomorphic(&m, &n).map_err(CliError::from_module)?;
    Ok(Outcome::new(iso_verdict(&v), iso_json(&v)))
}

fn mutation(s: &Session, args: &Args, left: bool) -> Result<Outcome, CliError> {
    let e = s.handle(required(args, "e")?)?;
    let f = s.handle(required(args, "f")?)?;
    let ctx = s.context()?;
    let m =
        if left { left_mutation(ctx, &e, &f) } else { right_mutation(ctx, &f, &e) }.map_err(CliError::from_helix)?;
    let mut result = json!({ "e": e.to_string(), "f": f.to_string(), "hilbert": series_json(&m.hilbert()) });
    let mut verdict = Verdict::Computed;
    if let Some(c) = args.get("compare") {
        let target = s.object(&parse_object(c)?)?;
        let v = is_isomorphic(&m, &target).map_err(CliError::from_module)?;
        result["compare"] = json!(c);
        result["isomorphism"] = iso_json(&v);
        verdict = iso_verdict(&v);
    }
    Ok(Outcome::new(verdict, result))
}

fn mutate_left(s: &Session, args: &Args) -> Result<Outcome, CliError> {
    mutation(s, args, true)
}

fn mutate_right(s: &Session, args: &Args) -> Result<Outcome, CliError> {
    mutation(s, args, false)
}

fn exceptional(s: &Session, args: &Args) -> Result<Outcome, CliError> {
    let seq = match args.get("seq") {
        Some(v) => list(v),
        None => s
            .manifest()
            .pipeline
            .quadric
            .as_ref()
            .and_then(|q| q.sequence.clone())
            .ok_or_else(|| CliError::Usage("missing seq= and the manifest has no sequence".into()))?,
    };
    let handles = seq.iter().map(|o| s.handle(o)).collect::<Result<Vec<_>, _>>()?;
    let r = check_relative_exceptional(s.context()?, &handles).map_err(CliError::from_helix)?;
    let verdict = match (r.holds(), r.certified) {
        (false, _) => Verdict::Fail,
        (true, true) => Verdict::Pass,
        (true, false) => Verdict::Inconclusive,
    };
    let re1: Vec<Option<&str>> = r.re1.iter().map(|f| f.map(|f| f.describe())).collect();
    Ok(Outcome::new(
        verdict,
        json!({
            "objects": r.objects,
            "re1": re1,
            "failures": r.failures(),
            "certified": r.certified,
        }),
    ))
}

fn helix_json(r: &HelixReport) -> Value {
    let forms: Vec<&str> = r.re1_forms.iter().map(|f| f.describe()).collect();
    json!({
        "window": [r.window.0, r.window.1],
        "period": r.period,
        "re1_forms": forms,
        "h1": r.h1(),
        "h2": r.h2(),
        "geometric": r.geometric(),
        "failures": r.h1_failures.iter().chain(&r.h2_failures).chain(&r.geometric_failures).collect::<Vec<_>>(),
        "certified": r.certified,
    })
}

fn helix_verdict(r: &HelixReport) -> Verdict {
    match (r.holds(), r.certified) {
        (false, _) => Verdict::Fail,
        (true, true) => Verdict::Pass,
        (true, false) => Verdict::Inconclusive,
    }
}

fn helix(s: &Session, _: &Args) -> Result<Outcome, CliError> {
    let q = s.manifest().pipeline.quadric.clone();
    let window = s.window.or(q.as_ref().and_then(|q| q.window).map(|[a, b]| (a, b))).unwrap_or((-4, 8));
    let ctx = s.context()?;
    let (a, x) = (s.base("A")?, s.base("X")?);
    let (ra, rx) = (a.clone(), x.clone());
    let rule = move |i: i32| {
        let k = i.div_euclid(2);
        if i.rem_euclid(2) == 0 {
            ObjectHandle::new(&ra, k)
        } else {
            ObjectHandle::new(&rx, k)
        }
    };
    let single = check_geometric_helix(ctx, &rule, 4, window).map_err(CliError::from_helix)?;
    let mut verdicts = vec![helix_verdict(&single)];
    let mut result = json!({ "rule": "A(i), X(i) alternating", "period_four": helix_json(&single) });
    if let Some([lo, hi]) = q.and_then(|q| q.blocked_window) {
        let parts = [a, x];
        let blocked_rule = move |i: i32| ObjectHandle::sum(&parts, i);
        let blocked = check_geometric_helix(ctx, &blocked_rule, 2, (lo, hi)).map_err(CliError::from_helix)?;
        verdicts.push(helix_verdict(&blocked));
        result["blocked_period_two"] = helix_json(&blocked);
    }
    let verdict = if verdicts.contains(&Verdict::Fail) {
        Verdict::Fail
    } else if verdicts.contains(&Verdict::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    Ok(Outcome::new(verdict, result))
}

fn classify(s: &Session, _: &Args) -> Result<Outcome, CliError> {
    let (x, y) = (s.module("X")?, s.module("Y")?);
    let v = classify_standard(&x, &y).map_err(CliError::from_helix)?;
    let verdict = match (v.classification, v.certified) {
        (Standardness::Inconclusive, _) | (_, false) => Verdict::Inconclusive,
        _ => Verdict::Computed,
    };
    Ok(Outcome::new(
        verdict,
        json!({
            "classification": v.classification.label(),
            "syz_x_1_is_y": v.omega_x_is_y,
            "syz_x_1_is_x": v.omega_x_is_x,
            "syz_y_1_is_x": v.omega_y_is_x,
            "syz_y_1_is_y": v.omega_y_is_y,
            "certified": v.certified,
        }),
    ))
}

fn build_section(s: &Session, args: &Args, default_top: u32) -> Result<(Vec<String>, u32, SectionAlgebra), CliError> {
    let parts = list(required(args, "parts")?);
    let top: u32 = int(args, "top", Some(default_top))?;
    let modules = parts.iter().map(|p| s.object(&parse_object(p)?)).collect::<Result<Vec<_>, _>>()?;
    let b = section_algebra(&modules, top).map_err(CliError::from_helix)?;
    Ok((parts, top, b))
}

fn section_json(parts: &[String], top: u32, b: &SectionAlgebra) -> Value {
    json!({
        "parts": parts,
        "top": top,
        "dims": b.dims(),
        "degree_zero_blocks": b.degree_zero_blocks,
        "degree_zero": semisimple_json(&b.algebra.degree_zero().semisimple_type()),
    })
}

fn section(s: &Session, args: &Args) -> Result<Outcome, CliError> {
    let (parts, top, b) = build_section(s, args, 3)?;
    let mut result = section_json(&parts, top, &b);
    result["associative"] = json!(b.algebra.check_associativity(top));
    Ok(Outcome::new(Verdict::Computed, result))
}

fn side_json(e: &SideEvidence) -> Value {
    let ext: Vec<Value> = e.ext.iter().map(table_json).collect();
    json!({
        "betti": e.betti,
        "terminated": e.terminated,
        "ext": ext,
        "candidate": e.candidate.map(|(d, l)| json!({ "d": d, "l": l })),
        "failure": e.failure,
    })
}

fn regularity_outcome(r: &RegularityEvidence, mut result: Value) -> Outcome {
    result["right"] = side_json(&r.right);
    result["left"] = side_json(&r.left);
    result["max_homological_degree"] = json!(r.max_homological_degree);
    result["candidate"] = json!(r.candidate().map(|(d, l)| json!({ "d": d, "l": l })));
    result["failure"] = json!(r.failure());
    result["check"] =
        json!("degree pattern of Ext^q(B0, B) on both sides; the B0-bimodule structure of Ext^d is not compared");
    let verdict = if r.candidate().is_some() && r.failure().is_none() {
        Verdict::Pass
    } else if r.inconclusive() {
        Verdict::Inconclusive
    } else {
        Verdict::Fail
    };
    Outcome::new(verdict, result)
}

fn regularity(s: &Session, args: &Args) -> Result<Outcome, CliError> {
    let h: usize = int(args, "h", Some(s.hbound + 1))?;
    let (b, result): (Arc<TabulatedAlgebra>, Value) = if args.contains_key("parts") {
        let (parts, top, sec) = build_section(s, args, 4)?;
        let result = json!({ "algebra": section_json(&parts, top, &sec) });
        (sec.algebra, result)
    } else {
        if args.contains_key("top") {
            return Err(CliError::Usage("top= needs parts=".into()));
        }
        let a = s.working()?;
        let result = json!({ "algebra": { "hilbert": dims_json(&a) } });
        (a, result)
    };
    let r = regularity_evidence(&b, h).map_err(CliError::from_helix)?;
    Ok(regularity_outcome(&r, result))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_command_is_unique() {
        let mut names: Vec<&str> = COMMANDS.iter().map(|c| c.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), COMMANDS.len());
        assert!(lookup("helix").is_ok());
        assert!(lookup("nope").is_err());
    }

    #[test]
    fn unknown_keys() {
        let spec = lookup("ext").unwrap();
        let mut args = Args::new();
        args.insert("q".into(), "1".into());
        assert!(spec.check_keys(&args).is_ok());
        args.insert("bogus".into(), "1".into());
        assert!(spec.check_keys(&args).is_err());
    }

    #[test]
    fn degree_tables_list_nonzero_certified_rows() {
        let t = DegreeTable { q: 1, lo: -2, dims: vec![0, 1, 0, 3], certified: vec![true, true, true, false] };
        let v = table_json(&t);
        assert_eq!(v["table"], json!({ "-1": 1 }));
        assert_eq!(v["certified_up_to"], json!(0));
    }
}
