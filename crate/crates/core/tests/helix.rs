mod common;

use std::sync::Arc;

use common::*;
use qhelix::algebra::GradedAutomorphism;
use qhelix::helix::{
    check_geometric_helix, check_relative_exceptional, classify_standard, left_mutation, regularity_evidence,
    right_mutation, section_algebra, Base, HelixError, ObjectHandle, Re1Form, Standardness, TailsContext,
};
use qhelix::modules::is_isomorphic;

struct Quadric {
    ctx: TailsContext,
    a: Arc<Base>,
    x: Arc<Base>,
    y: Arc<Base>,
}

fn quadric_context(d: u32) -> Quadric {
    let (alg, x, y) = commutative_pipeline(d);
    let nu = GradedAutomorphism::identity(&alg);
    let ctx = TailsContext::new(alg, Some(nu), 2).unwrap();
    let a = ctx.regular.clone();
    let x = ctx.base("X", x);
    let y = ctx.base("Y", y);
    Quadric { ctx, a, x, y }
}

#[test]
fn tails_ext_values() {
    let q = quadric_context(7);
    let a = ObjectHandle::new(&q.a, 0);
    let x = ObjectHandle::new(&q.x, 0);
    let ext = |m: &ObjectHandle, n: &ObjectHandle, k: usize| q.ctx.tails_ext(m, n, k, 0).unwrap();
    assert_eq!(ext(&a, &a.shifted(-2), 2).dim, 1);
    assert!(ext(&a, &a.shifted(-2), 2).certified);
    assert_eq!(ext(&a, &a, 2).dim, 0);
    assert_eq!(ext(&a, &x, 0).dim, 2);
    assert_eq!(ext(&x, &a.shifted(1), 0).dim, 2);
    assert_eq!(ext(&x, &x, 0).dim, 1);
    assert_eq!(ext(&x, &x.shifted(-2), 2).dim, 1);
    assert_eq!(ext(&x, &a, 3).dim, 0);
}

#[test]
fn serre_duality_symmetry() {
    let q = quadric_context(7);
    let objs = [&q.a, &q.x, &q.y];
    for m in objs {
        for n in objs {
            for shift in -2..=2 {
                let (mh, nh) = (ObjectHandle::new(m, 0), ObjectHandle::new(n, shift));
                for deg in -2..=2 {
                    let two = q.ctx.tails_ext(&mh, &nh, 2, deg).unwrap();
                    let dual = q.ctx.tails_ext(&nh, &mh.shifted(-2), 0, -deg).unwrap();
                    assert_eq!(two, dual, "{mh} {nh} {deg}");
                }
            }
        }
    }
}

#[test]
fn missing_nakayama_automorphism() {
    let (alg, x, _) = commutative_pipeline(5);
    let ctx = TailsContext::new(alg, None, 2).unwrap();
    let x = ObjectHandle::new(&ctx.base("X", x), 0);
    assert!(ctx.tails_ext(&x, &x, 0, 0).is_ok());
    assert_eq!(ctx.tails_ext(&x, &x, 2, 0), Err(HelixError::MissingNu));
}

#[test]
fn non_mcm_bases_are_rejected() {
    let (alg, _, _) = commutative_pipeline(6);
    let ctx = TailsContext::new(alg.clone(), Some(GradedAutomorphism::identity(&alg)), 2).unwrap();
    let k = ObjectHandle::new(&ctx.base("k", qhelix::modules::GradedModule::trivial(&alg, 6).unwrap()), 0);
    let a = ObjectHandle::new(&ctx.regular, 0);
    assert_eq!(ctx.tails_ext(&k, &a, 0, 0), Err(HelixError::NotMcm("k".into())));
}

#[test]
fn exceptional_sequences() {
    let q = quadric_context(7);
    let (a, x) = (|i| ObjectHandle::new(&q.a, i), |i| ObjectHandle::new(&q.x, i));
    let seq = [a(-1), x(-1), a(0), x(0)];
    let r = check_relative_exceptional(&q.ctx, &seq).unwrap();
    assert!(r.holds(), "{:?}", r.failures());
    assert!(r.certified);
    assert_eq!(r.re1, vec![Some(Re1Form::SemisimpleEnd); 4]);

    let r = check_relative_exceptional(&q.ctx, &[a(0), a(0)]).unwrap();
    assert!(!r.holds());
    assert!(r.re3_failures[0].starts_with("Ext^0"));

    // Hom(X, A(1)) ≠ 0 blocks the order (A(1), X) but not (X, A(1))
    assert!(!check_relative_exceptional(&q.ctx, &[a(1), x(0)]).unwrap().holds());
    assert!(check_relative_exceptional(&q.ctx, &[x(0), a(1)]).unwrap().holds());

    // Ext^1(X, Y(-1)) ≠ 0
    let y = ObjectHandle::new(&q.y, -1);
    let r = check_relative_exceptional(&q.ctx, &[y, x(0)]).unwrap();
    assert!(r.re3_failures.iter().any(|f| f.starts_with("Ext^1")));
}

#[test]
fn period_four_helix() {
    let q = quadric_context(8);
    let (a, x) = (q.a.clone(), q.x.clone());
    let rule = move |i: i32| {
        let k = i.div_euclid(2);
        if i.rem_euclid(2) == 0 {
            ObjectHandle::new(&a, k)
        } else {
            ObjectHandle::new(&x, k)
        }
    };
    let r = check_geometric_helix(&q.ctx, &rule, 4, (-4, 8)).unwrap();
    assert!(r.holds(), "{:?} {:?} {:?}", r.h1_failures, r.h2_failures, r.geometric_failures);
    assert!(r.certified);
    assert_eq!(r.re1_forms, vec![Re1Form::SemisimpleEnd]);

    let parts = [q.a.clone(), q.x.clone()];
    let blocked = move |i: i32| ObjectHandle::sum(&parts, i);
    // blocks j ∈ [-2, 4] carry the same shifts as the indices [-4, 8] above
    let r = check_geometric_helix(&q.ctx, &blocked, 2, (-2, 4)).unwrap();
    assert!(r.holds(), "{:?} {:?} {:?}", r.h1_failures, r.h2_failures, r.geometric_failures);
    assert!(r.certified);
    assert_eq!(r.re1_forms, vec![Re1Form::TriangularEnd]);
    let wide = check_geometric_helix(&q.ctx, &blocked, 2, (-4, 8)).unwrap();
    assert!(wide.holds() && !wide.certified);
}

#[test]
fn helix_failures() {
    let q = quadric_context(7);
    let a = q.a.clone();
    let constant = move |_: i32| ObjectHandle::new(&a, 0);
    let r = check_geometric_helix(&q.ctx, &constant, 1, (-2, 2)).unwrap();
    assert!(r.h1() && r.geometric());
    assert!(!r.h2());

    // period 2 on single objects: windows {A(i), X(i)} are exceptional but
    // A(i+1) is not the Serre twist of A(i)
    let (a, x) = (q.a.clone(), q.x.clone());
    let rule = move |i: i32| {
        let k = i.div_euclid(2);
        if i.rem_euclid(2) == 0 {
            ObjectHandle::new(&a, k)
        } else {
            ObjectHandle::new(&x, k)
        }
    };
    let r = check_geometric_helix(&q.ctx, &rule, 2, (0, 3)).unwrap();
    assert!(!r.h2());
    assert!(check_geometric_helix(&q.ctx, &rule, 5, (0, 3)).is_err());
}

#[test]
fn mutations() {
    let q = quadric_context(7);
    for i in [0, 1] {
        let l = left_mutation(&q.ctx, &ObjectHandle::new(&q.a, i), &ObjectHandle::new(&q.y, i)).unwrap();
        let xm = q.x.module.shift(i - 1);
        let v = is_isomorphic(&l, &xm).unwrap();
        assert!(v.isomorphic && v.certified, "{}", v.reason);

        let lb = q.ctx.base(&format!("L{i}"), l);
        let back = right_mutation(&q.ctx, &ObjectHandle::new(&q.a, i), &ObjectHandle::new(&lb, 0)).unwrap();
        let v = is_isomorphic(&back, &q.y.module.shift(i)).unwrap();
        assert!(v.isomorphic, "{}", v.reason);
    }
    // Ext^1(X, Y(-1)) ≠ 0 so the pair is not admissible
    let e = left_mutation(&q.ctx, &ObjectHandle::new(&q.x, 0), &ObjectHandle::new(&q.y, -1));
    assert_eq!(e.unwrap_err(), HelixError::NotConcentrated { q: 1 });
}

#[test]
fn standardness() {
    let (_, x, y) = commutative_pipeline(6);
    let v = classify_standard(&x, &y).unwrap();
    assert_eq!(v.classification, Standardness::Standard);
    assert!(v.omega_x_is_y && v.omega_y_is_x && v.certified);
    let (_, xs, ys) = sigma_pipeline(6);
    let v = classify_standard(&xs, &ys).unwrap();
    assert_eq!(v.classification, Standardness::NonStandard);
    assert!(v.omega_x_is_x && v.omega_y_is_y && !v.omega_x_is_y);
    assert_eq!(classify_standard(&x, &x).unwrap_err(), HelixError::IsomorphicInputs);
}

#[test]
fn section_algebra_of_a_and_x() {
    let (alg, x, _) = commutative_pipeline(8);
    let a = qhelix::modules::GradedModule::regular(&alg, 8).unwrap();
    let b = section_algebra(&[a, x], 3).unwrap();
    assert_eq!(b.degree_zero_blocks, vec![vec![1, 2], vec![0, 1]]);
    assert_eq!(b.dims(), vec![4, 16, 36, 64]);
    assert!(b.algebra.check_associativity(3));
    let b0 = b.algebra.degree_zero().semisimple_type();
    assert!(!b0.semisimple);
    assert_eq!(b0.radical_dim, 2);
}

#[test]
fn regularity_of_section_algebra() {
    let (alg, x, _) = commutative_pipeline(8);
    let a = qhelix::modules::GradedModule::regular(&alg, 8).unwrap();
    let b = section_algebra(&[a, x], 4).unwrap();
    let r = regularity_evidence(&b.algebra, 5).unwrap();
    assert_eq!(r.failure(), None);
    assert_eq!(r.candidate(), Some((3, 2)));
}

#[test]
fn regularity_of_standard_examples() {
    let s = Arc::new(s_comm(6).tabulate(6).unwrap());
    let r = regularity_evidence(&s, 6).unwrap();
    assert_eq!(r.candidate(), Some((4, 4)));
    assert_eq!(r.right.betti[1], vec![1, 1, 1, 1]);

    let c = Arc::new(cubic(6).tabulate(6).unwrap());
    assert_eq!(regularity_evidence(&c, 5).unwrap().candidate(), Some((3, 4)));
}

#[test]
fn quasi_veronese_counterexample() {
    let p = poly_deg3(12).tabulate(12).unwrap();
    let q = Arc::new(p.quasi_veronese(2));
    assert_eq!(&q.dims()[..6], &[2, 1, 1, 2, 1, 1]);
    let r = regularity_evidence(&q, 4).unwrap();
    assert_eq!(r.candidate(), None);
    let f = r.failure().unwrap();
    assert!(f.contains("spread"), "{f}");
}
