use std::collections::BTreeMap;

use super::*;

fn u(p: u32) -> Sl2Algebra {
    Sl2Algebra::new(p, 1).unwrap()
}

#[test]
fn simple_dimensions() {
    let a = u(3);
    assert_eq!(a.simple_module(2).unwrap().dim(), 3);
    assert_eq!(a.simple_module(0).unwrap().dim(), 1);
    let b = Sl2Algebra::new(3, 2).unwrap();
    assert_eq!(b.simple_module(8).unwrap().dim(), 9);
    assert_eq!(b.simple_module(5).unwrap().dim(), 6);
    for lambda in 0..9 {
        let s = b.simple_module(lambda).unwrap();
        assert!(s.is_absolutely_simple(), "L_2({lambda})");
    }
}

#[test]
fn verma_structure() {
    let a = u(3);
    let alg = a.algebra();
    let z0 = a.verma_module(0).unwrap();
    assert_eq!(z0.dim(), 3);
    assert_eq!(alg.top(&z0).unwrap(), BTreeMap::from([(0, 1)]));
    assert_eq!(alg.socle(&z0).unwrap(), BTreeMap::from([(1, 1)]));
    assert_eq!(a.composition_weights(&z0).unwrap(), BTreeMap::from([(0, 1), (1, 1)]));
    let z2 = a.verma_module(2).unwrap();
    assert!(alg.is_projective(&z2).unwrap());
    assert!(alg.is_isomorphic(&z2, &a.simple_module(2).unwrap()).unwrap().is_isomorphic());
}

#[test]
fn principal_indecomposables() {
    let a = u(3);
    let alg = a.algebra();
    let p0 = a.principal_indecomposable(0).unwrap();
    assert_eq!(p0.dim(), 6);
    assert_eq!(alg.top(&p0).unwrap(), BTreeMap::from([(0, 1)]));
    assert_eq!(alg.socle(&p0).unwrap(), BTreeMap::from([(0, 1)]));
    assert_eq!(a.principal_indecomposable(2).unwrap().dim(), 3);
    let b = Sl2Algebra::new(3, 2).unwrap();
    assert_eq!(b.principal_indecomposable(6).unwrap().dim(), 18);
    let via_regular = a.pim_from_regular(0).unwrap();
    assert!(alg.is_isomorphic(&p0, &via_regular).unwrap().is_isomorphic());
}

#[test]
fn graded_pims_have_simple_top() {
    for p in [3u32, 5] {
        let a = u(p);
        for mu in [0i64, 1, (p - 1) as i64, -3, 7] {
            let pm = a.graded_principal_indecomposable(mu).unwrap();
            assert_eq!(a.algebra().top(&pm).unwrap(), BTreeMap::from([(mu, 1)]), "p={p} mu={mu}");
        }
    }
}

#[test]
fn heart_small() {
    let a = u(3);
    let h = a.heart(0).unwrap();
    assert_eq!(h.dim(), 4);
    assert_eq!(a.composition_weights(&h).unwrap(), BTreeMap::from([(1, 2)]));
}

#[test]
fn regular_module_relations() {
    for p in [3u32, 5] {
        let reg = u(p).regular_module().unwrap();
        assert_eq!(reg.dim(), (p * p * p) as usize);
    }
}

#[test]
fn twist_behaviour() {
    let a = u(3);
    let l1 = a.simple_module(1).unwrap();
    assert_eq!(a.frobenius_twist(&l1, 0).unwrap().action(), l1.action());
    let t = a.frobenius_twist(&l1, 1).unwrap();
    assert_eq!(t.dim(), 2);
    assert!(t.action().iter().all(|m| m.is_zero()));
}

#[test]
fn kostant_checker_rejects_bad_action() {
    let b = Sl2Algebra::new(3, 2).unwrap();
    let z = b.graded_verma(4).unwrap();
    let mut action = z.action().to_vec();
    action[2].set(0, 3, 2);
    assert!(crate::algrep::Module::new(b.presentation().clone(), action, z.grading().map(|g| g.to_vec())).is_err());
}

