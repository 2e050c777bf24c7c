mod common;

use common::*;
use qhelix::algebra::{GradedAutomorphism, TabulatedAlgebra};
use qhelix::exactla::{Field, Scalar};
use qhelix::freealg::{parse_poly, GeneratorSet, NcPoly};

fn dims(t: &TabulatedAlgebra) -> Vec<usize> {
    t.dims()
}

fn sigma_images(a: &qhelix::algebra::PresentedAlgebra) -> Vec<NcPoly> {
    ["w", "-y", "-z", "x"].iter().map(|s| poly(a, s)).collect()
}

#[test]
fn tabulation_dimensions() {
    assert_eq!(dims(&poly_deg3(6).tabulate(6).unwrap()), vec![1, 0, 0, 1, 0, 0, 1]);
    assert_eq!(dims(&s_comm(4).tabulate(4).unwrap()), vec![1, 4, 10, 20, 35]);
    assert_eq!(dims(&s_sigma(4).tabulate(4).unwrap()), vec![1, 4, 10, 20, 35]);
}

#[test]
fn hilbert_series_closed_forms() {
    let h = quadric(8).tabulate(8).unwrap().hilbert();
    assert_eq!(h.dims, (0..9).map(|i| (i + 1) * (i + 1)).collect::<Vec<i64>>());
    assert_eq!(h.closed_form_string().unwrap(), "(1+t)/(1-t)^3");
    let h = cubic(8).tabulate(8).unwrap().hilbert();
    assert_eq!(h.closed_form_string().unwrap(), "1/((1-t)^2(1-t^2))");
    let k = common::presented(&[], &[], &[], 4).tabulate(4).unwrap();
    assert_eq!(k.dims(), vec![1, 0, 0, 0, 0]);
}

#[test]
fn central_and_regular_elements() {
    let s = s_comm(6);
    let t = s.tabulate(6).unwrap();
    let f = t.eval_poly(&poly(&s, "x*w - y*z")).unwrap();
    assert!(t.is_central(&f));
    assert!(t.is_regular_central(&f).unwrap());
    let x = t.eval_poly(&poly(&s, "x")).unwrap();
    assert!(t.is_central(&x));

    let ss = s_sigma(6);
    let ts = ss.tabulate(6).unwrap();
    let fs = ts.eval_poly(&poly(&ss, "x^2 + y*z")).unwrap();
    assert!(ts.is_central(&fs));
    assert!(ts.is_regular_central(&fs).unwrap());
    let nonc = ts.eval_poly(&poly(&ss, "x*y")).unwrap();
    assert!(!ts.is_central(&nonc));

    let dual = common::presented(&["x"], &[1], &["x^2"], 4);
    let td = dual.tabulate(4).unwrap();
    let xd = td.eval_poly(&poly(&dual, "x")).unwrap();
    assert!(!td.is_regular_central(&xd).unwrap());
}

#[test]
fn quotients_by_central_elements() {
    let s = s_comm(6);
    let a = s.quotient_by_central(&poly(&s, "x*w - y*z")).unwrap();
    assert_eq!(&dims(&a.tabulate(3).unwrap()), &[1, 4, 9, 16]);
    let ss = s_sigma(6);
    let asg = ss.quotient_by_central(&poly(&ss, "x^2 + y*z")).unwrap();
    assert_eq!(&dims(&asg.tabulate(3).unwrap()), &[1, 4, 9, 16]);
    let same = s.quotient_by_central(&NcPoly::zero()).unwrap();
    assert_eq!(dims(&same.tabulate(3).unwrap()), vec![1, 4, 10, 20]);
}

#[test]
fn veronese_subalgebras() {
    let a = quadric(8).tabulate(4).unwrap();
    assert_eq!(a.veronese(1).dims(), a.dims());
    assert_eq!(a.veronese(2).dims(), vec![1, 9, 25]);
    let kx = common::presented(&["x"], &[1], &[], 6).tabulate(6).unwrap();
    assert_eq!(kx.veronese(2).dims(), vec![1, 1, 1, 1]);
    assert!(a.veronese(2).check_associativity(2));
}

#[test]
fn quasi_veronese_shapes() {
    let kx3 = poly_deg3(12).tabulate(12).unwrap();
    let qv = kx3.quasi_veronese(2);
    assert_eq!(&qv.dims()[..6], &[2, 1, 1, 2, 1, 1]);
    assert!(qv.check_associativity(5));
    let c = cubic(8).tabulate(8).unwrap();
    assert_eq!(c.quasi_veronese(1).dims(), c.dims());
    let c2 = c.quasi_veronese(2);
    let b0 = c2.degree_zero();
    assert_eq!(b0.dim(), 4);
    assert_eq!(b0.block_dims().unwrap(), &vec![vec![1, 2], vec![0, 1]]);
    assert!(c2.check_associativity(3));
    // dim A^[r]_i = Σ_{p,q} dim A_{ri+q-p}
    for i in 0..c2.truncation() {
        let mut expect = 0;
        for p in 0..2i64 {
            for q in 0..2i64 {
                let d = 2 * i as i64 + q - p;
                if d >= 0 {
                    expect += c.dim(d as u32);
                }
            }
        }
        assert_eq!(c2.dim(i), expect);
    }
}

#[test]
fn beilinson_algebras() {
    let kx = common::presented(&["x"], &[1], &[], 6).tabulate(6).unwrap();
    assert_eq!(kx.beilinson(2).dim(), 3);
    let c = cubic(8).tabulate(8).unwrap();
    assert_eq!(c.beilinson(4).dim(), 4 + 3 * 2 + 2 * 4 + 6);
    assert_eq!(c.beilinson(1).dim(), 1);
    assert!(c.beilinson(4).is_associative());
}

#[test]
fn automorphism_checks() {
    let s = s_comm(5);
    let id: Vec<NcPoly> = ["x", "y", "z", "w"].iter().map(|v| poly(&s, v)).collect();
    assert!(s.check_automorphism(&id).unwrap().holds());
    assert!(s.check_automorphism(&sigma_images(&s)).unwrap().holds());
    let f = poly(&s, "x*w - y*z");
    let sf = f.substitute(&sigma_images(&s));
    assert!(s.normal_form(&sf.sub(&f)).unwrap().is_zero());

    let kxy = common::presented(&["x", "y"], &[1, 1], &["x*y - y*x"], 4);
    let good = vec![poly(&kxy, "x + y"), poly(&kxy, "y")];
    assert!(kxy.check_automorphism(&good).unwrap().holds());
    let bad = vec![NcPoly::zero(), poly(&kxy, "y")];
    assert!(!kxy.check_automorphism(&bad).unwrap().holds());
}

#[test]
fn twisting_the_commutative_ambient() {
    let s = s_comm(5);
    let t = s.tabulate(5).unwrap();
    let sigma = GradedAutomorphism::from_images(&t, &sigma_images(&s)).unwrap();
    let tw = t.twist(&sigma).unwrap();
    assert_eq!(tw.hilbert(), t.hilbert());
    for r in SIGMA_RELATIONS {
        let e = tw.eval_poly(&poly(&s, r)).unwrap();
        assert!(e.coords.iter().all(Scalar::is_zero), "{r} does not vanish");
    }
    let id = GradedAutomorphism::identity(&t);
    let same = t.twist(&id).unwrap();
    assert_eq!(same.basis_mult(2, 3, 1, 2), t.basis_mult(2, 3, 1, 2));
    // twisting back by the inverse
    let back = tw.twist(&sigma.inverse().unwrap()).unwrap();
    for d in 0..=5 {
        for e in 0..=5 - d {
            for i in 0..t.dim(d) {
                for j in 0..t.dim(e) {
                    assert_eq!(back.basis_mult(d, i, e, j), t.basis_mult(d, i, e, j));
                }
            }
        }
    }
    assert!(tw.check_associativity(4));
}

#[test]
fn koszul_duals() {
    let s = s_comm(6);
    let sd = s.koszul_dual().unwrap();
    assert_eq!(dims(&sd.tabulate(6).unwrap()), vec![1, 4, 6, 4, 1, 0, 0]);
    let a = quadric(6);
    let ad = a.koszul_dual().unwrap();
    assert_eq!(dims(&ad.tabulate(6).unwrap()), vec![1, 4, 7, 8, 8, 8, 8]);
    let kx = common::presented(&["x"], &[1], &[], 4);
    assert_eq!(dims(&kx.koszul_dual().unwrap().tabulate(3).unwrap()), vec![1, 1, 0, 0]);
    assert!(cubic(4).koszul_dual().is_err());
}

fn koszul_identity(a: &qhelix::algebra::PresentedAlgebra, top: u32) {
    let h = a.tabulate(top).unwrap().dims();
    let hd = a.koszul_dual().unwrap().tabulate(top).unwrap().dims();
    for d in 1..=top as usize {
        let s: i64 = (0..=d).map(|i| if i % 2 == 0 { 1 } else { -1 } * (hd[i] * h[d - i]) as i64).sum();
        assert_eq!(s, 0, "degree {d}");
    }
}

#[test]
fn koszul_numerical_identity() {
    for a in [s_comm(8), quadric(8), s_sigma(8), quadric_sigma(8)] {
        koszul_identity(&a, 8);
    }
}

fn element_to_poly(t: &TabulatedAlgebra, g: &GeneratorSet, z: &qhelix::algebra::Element) -> NcPoly {
    let mut p = NcPoly::zero();
    for (i, c) in z.coords.iter().enumerate() {
        if !c.is_zero() {
            p = p.add(&parse_poly(&t.labels(z.degree)[i], g).unwrap().scale(c));
        }
    }
    p
}

#[test]
fn central_degree_two_elements_of_duals() {
    let s = s_comm(4).tabulate(4).unwrap();
    assert_eq!(s.find_central_degree2().len(), 10);

    let ad = quadric(8).koszul_dual().unwrap();
    let t = ad.tabulate(8).unwrap();
    let z = t.regular_central_degree2().expect("regular central element");
    let zp = element_to_poly(&t, ad.gens(), &z);
    let quot = ad.quotient_by_central(&zp).unwrap();
    assert_eq!(dims(&quot.tabulate(6).unwrap()), vec![1, 4, 6, 4, 1, 0, 0]);

    let sd = s_comm(6).koszul_dual().unwrap().tabulate(6).unwrap();
    assert!(!sd.find_central_degree2().is_empty());
    assert!(sd.regular_central_degree2().is_none());
}

#[test]
fn localisation_degree_zero_parts() {
    for a in [quadric(8), quadric_sigma(8)] {
        let t = a.koszul_dual().unwrap().tabulate(8).unwrap();
        let z = t.regular_central_degree2().unwrap();
        let c = t.c_of_a(&z).unwrap();
        assert_eq!(c.algebra.dim(), 8);
        assert!(c.algebra.is_associative());
        let r = c.algebra.semisimple_type();
        assert!(r.semisimple);
        assert_eq!(r.center_dim, 2);
        assert_eq!(r.blocks, Some(vec![4, 4]));
    }
    let sd = s_comm(8).koszul_dual().unwrap().tabulate(8).unwrap();
    let z = sd.find_central_degree2().into_iter().next().unwrap();
    assert!(sd.c_of_a(&z).is_err());
}

#[test]
fn opposite_algebras() {
    let s = s_comm(4).tabulate(4).unwrap();
    let so = s.opposite();
    assert_eq!(so.basis_mult(1, 0, 2, 3), s.basis_mult(1, 0, 2, 3));
    let ss = s_sigma(4).tabulate(4).unwrap();
    let oo = ss.opposite().opposite();
    assert_eq!(oo.basis_mult(2, 5, 1, 1), ss.basis_mult(2, 5, 1, 1));
    assert_eq!(ss.opposite().hilbert(), ss.hilbert());
}

#[test]
fn prime_field_tabulation() {
    let g = GeneratorSet::standard(&["x", "y", "z", "w"]);
    let mut rels: Vec<NcPoly> = COMMUTATORS.iter().map(|r| parse_poly(r, &g).unwrap()).collect();
    rels.push(parse_poly("x*w - y*z", &g).unwrap());
    let a = qhelix::algebra::PresentedAlgebra::new(g, rels, 6, Field::Prime(101)).unwrap();
    assert_eq!(a.tabulate(6).unwrap().dims(), vec![1, 4, 9, 16, 25, 36, 49]);
}
