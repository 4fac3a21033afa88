use super::*;
use crate::clifford::all_labels;
use crate::fock::{FockBasisState, FockVector, Partition};
use crate::lattice::Coset;
use crate::vertex::{FockWindow, ModeOperator};
use crate::Mutation;

fn z3() -> CharacterSpec {
    CharacterSpec::cyclic(3)
}

fn key(i: usize, j: usize, m: i64, a: &[i64]) -> GlKey {
    GlKey::new(i, j, m, a.to_vec())
}

fn mono(i: usize, j: usize, m: i64, a: &[i64]) -> GlElement {
    GlElement::monomial(key(i, j, m, a), Scalar::one())
}

#[test]
fn character_validation() {
    assert!(CharacterSpec::new(vec![3], vec![Scalar::zeta(3, 1)]).is_ok());
    assert!(CharacterSpec::new(vec![6], vec![Scalar::zeta(3, 1)]).is_ok());
    assert!(CharacterSpec::new(vec![2], vec![Scalar::zeta(3, 1)]).is_err());
    assert!(CharacterSpec::new(vec![0], vec![Scalar::param("s")]).is_ok());
    assert!(CharacterSpec::new(vec![3], vec![]).is_err());
    assert_eq!(z3().order(), Some(3));
    assert_eq!(CharacterSpec::trivial().order(), Some(1));
    assert_eq!(
        CharacterSpec::new(vec![0], vec![Scalar::param("s")])
            .unwrap()
            .order(),
        None
    );
    assert_eq!(
        CharacterSpec::new(vec![2, 3], vec![Scalar::int(-1), Scalar::zeta(3, 1)])
            .unwrap()
            .order(),
        Some(6)
    );
    assert_eq!(z3().elements(1).len(), 3);
    assert_eq!(
        CharacterSpec::new(vec![0, 2], vec![Scalar::param("s"), Scalar::int(-1)])
            .unwrap()
            .elements(1)
            .len(),
        6
    );
}

#[test]
fn ring_examples() {
    let alg = UnitaryAlgebra::new(2, z3());
    let z = Scalar::zeta(3, 1);
    assert_eq!(alg.ring_mul((1, &[1]), (1, &[2])), (z.clone(), 2, vec![0]));
    assert_eq!(
        alg.ring_mul((0, &[0]), (5, &[2])),
        (Scalar::one(), 5, vec![2])
    );
    // bar(t e^1) = (−ζ)^{−1} t e^{−1}
    assert_eq!(alg.bar((1, &[1])), ((-&z).pow(-1), 1, vec![2]));
    // bar is an anti-involution on monomials
    for m in -2..=2 {
        for a in 0..3 {
            for n in -2..=2 {
                for b in 0..3 {
                    let (c, p, g) = alg.ring_mul((m, &[a]), (n, &[b]));
                    let (c1, p1, g1) = alg.bar((p, &g));
                    let (cb, _, gb) = alg.bar((n, &[b]));
                    let (ca, _, ga) = alg.bar((m, &[a]));
                    let (c2, p2, g2) = alg.ring_mul((n, &gb), (m, &ga));
                    assert_eq!((&c * &c1, p1, g1), (&(&cb * &ca) * &c2, p2, g2));
                    let (d, q, h) = alg.bar((p1, &alg.bar((p, &g)).2));
                    assert_eq!((&c1 * &d, q, h), (Scalar::one(), p, g.clone()));
                }
            }
        }
    }
}

#[test]
fn bracket_examples() {
    let alg = UnitaryAlgebra::new(3, CharacterSpec::trivial());
    let br = alg.bracket(&mono(0, 0, 1, &[]), &mono(0, 0, -1, &[]));
    assert_eq!(br, GlElement::central_element(Scalar::one()));
    assert_eq!(
        alg.bracket(&mono(0, 1, 0, &[]), &mono(1, 2, 0, &[])),
        mono(0, 2, 0, &[])
    );
    let u = alg.make_e(0, 1, 2, &[]).add(&mono(2, 2, -1, &[]));
    assert!(alg.bracket(&u, &u).is_zero());
}

#[test]
fn make_e_examples() {
    let alg = UnitaryAlgebra::new(2, z3());
    let e = alg.make_e(0, 1, 0, &[0]);
    assert_eq!(e, mono(0, 1, 0, &[0]).sub(&mono(1, 0, 0, &[0])));
    assert!(alg.is_unitary(&e));
    assert!(!alg.is_unitary(&mono(0, 1, 0, &[0])));
    assert!(alg.is_unitary(&GlElement::central_element(Scalar::int(5))));
    let z = Scalar::zeta(3, 1);
    let lhs = alg.make_e(1, 0, 1, &[2]);
    let rhs = alg.make_e(0, 1, 1, &[1]).scale(&-&(-&z).pow(1));
    assert_eq!(alg.make_e(0, 1, 1, &[1]), lhs.scale(&-&(-&z).pow(-1)));
    assert_eq!(lhs, rhs);

    // With α of order 2 and σ(α) = −1, e_11(m, α) vanishes for every m.
    let alg2 = UnitaryAlgebra::new(2, CharacterSpec::cyclic(2));
    for m in -3..=3 {
        assert!(alg2.make_e(0, 0, m, &[1]).is_zero(), "m={}", m);
    }
    assert!(!alg2.make_e(0, 0, 1, &[0]).is_zero());
    assert!(matches!(
        alg.e_expansion(&mono(0, 1, 1, &[0])),
        Err(crate::Error::NotUnitary)
    ));
    // t is skew under the bar, so E_11 t is already unitary
    assert!(alg.is_unitary(&mono(0, 0, 1, &[0])));
}

#[test]
fn tau_examples() {
    let alg = UnitaryAlgebra::new(2, z3());
    let a = [1];
    assert_eq!(
        alg.tau(&alg.make_e(0, 1, 1, &a), None).unwrap(),
        alg.make_e(0, 1, -1, &a)
    );
    assert_eq!(
        alg.tau(&alg.make_e(0, 1, 0, &a), None).unwrap(),
        alg.make_e(0, 1, 0, &a).scale(&Scalar::int(-1))
    );
    let ic = GlElement::central_element(Scalar::i());
    assert_eq!(
        alg.tau(&ic, None).unwrap(),
        GlElement::central_element(-&Scalar::i())
    );
    assert_eq!(
        alg.tau(&alg.make_e(0, 1, 0, &a), Some(Mutation::DropTauSign))
            .unwrap(),
        alg.make_e(0, 1, 0, &a)
    );
}

#[test]
fn structure_checks() {
    for chi in [CharacterSpec::trivial(), z3(), CharacterSpec::cyclic(4)] {
        let r = verify_structure(3, &chi, 300, 7, None).unwrap();
        assert!(r.passed(), "{}", r);
    }
    let r = verify_structure(
        2,
        &CharacterSpec::new(vec![0], vec![Scalar::param("s")]).unwrap(),
        200,
        7,
        None,
    )
    .unwrap();
    assert!(r.passed(), "{}", r);
    let r = verify_structure(2, &z3(), 200, 7, Some(Mutation::DropTauSign)).unwrap();
    assert!(!r.passed());
}

#[test]
fn generating_bracket_matches_direct_bracket() {
    for chi in [CharacterSpec::trivial(), z3(), CharacterSpec::cyclic(4)] {
        let r = verify_prop31(2, &chi, 2, 1);
        assert!(r.passed(), "{}", r);
    }
    let r = verify_prop31(
        3,
        &CharacterSpec::new(vec![0], vec![Scalar::param("s")]).unwrap(),
        1,
        1,
    );
    assert!(r.passed(), "{}", r);
}

#[test]
fn rho_examples() {
    let alg = UnitaryAlgebra::new(2, z3());
    let fw = FockWindow::new(2, 3, 2, crate::lattice::Cocycle::standard());
    let mut rep = Representation::new(alg.clone(), fw.clone(), None);
    let half = Scalar::frac(1, 2);
    let rc = rep.rho(&GlElement::central_element(Scalar::one())).unwrap();
    assert!(rc
        .first_difference(&ModeOperator::scalar(&fw, 3, half.clone()), 3)
        .is_none());

    let z = Scalar::zeta(3, 1);
    let vac = FockBasisState::vacuum();
    let one = Scalar::one();
    let col = rep
        .rho(&alg.make_e(0, 0, 0, &[1]))
        .unwrap()
        .column(&vac)
        .unwrap();
    let want = &(&one + &z) / &(&Scalar::int(2) * &(&one - &z));
    assert_eq!(col, FockVector::term(vac.clone(), want));

    let col = rep
        .rho(&alg.make_e(0, 1, -1, &[0]))
        .unwrap()
        .column(&vac)
        .unwrap();
    let mut want = FockVector::term(
        FockBasisState::new(Coset(0b11), Partition::from_parts(&[(0, 1)])),
        one.clone(),
    );
    want.add_term(
        FockBasisState::new(Coset(0b11), Partition::from_parts(&[(1, 1)])),
        -&one,
    );
    assert_eq!(col, want);

    assert!(matches!(
        rep.rho(&mono(0, 1, 0, &[0])),
        Err(crate::Error::NotUnitary)
    ));
    assert!(matches!(
        rep.rho(&alg.make_e(0, 1, 3, &[0])),
        Err(crate::Error::ModeOutOfWindow { .. })
    ));
}

#[test]
fn rho_is_a_homomorphism_small() {
    for chi in [CharacterSpec::trivial(), z3()] {
        let r = verify_rho_hom(&RhoConfig::new(2, chi, 3, 1)).unwrap();
        assert!(r.passed(), "{}", r);
    }
    let r = verify_rho_hom(&RhoConfig::new(3, CharacterSpec::cyclic(4), 3, 1)).unwrap();
    assert!(r.passed(), "{}", r);
}

#[test]
fn rho_detects_mutations() {
    let mut cfg = RhoConfig::new(2, z3(), 3, 1);
    cfg.mutation = Some(Mutation::DropZeroModeDelta);
    let r = verify_rho_hom(&cfg).unwrap();
    assert!(!r.passed());
    assert!(r.first_failure.is_some());
    cfg.mutation = Some(Mutation::CocycleFlip);
    assert!(!verify_rho_hom(&cfg).unwrap().passed());
}

#[test]
fn lemma41_examples() {
    let chi = z3();
    assert!(lambda_membership(3, &[0], &chi, None));
    assert!(!lambda_membership(1, &[0], &chi, None));
    assert!(!lambda_membership(3, &[1], &chi, None));
    let zinf = CharacterSpec::new(vec![0], vec![Scalar::param("s")]).unwrap();
    assert!(lambda_membership(0, &[0], &zinf, None));
    assert!(!lambda_membership(0, &[1], &zinf, None));
    assert!(!lambda_membership(4, &[0], &zinf, None));
    let (derived, center) = derived_center_split(&chi, 3, 1);
    assert_eq!(center, vec![(-3, vec![0]), (0, vec![0]), (3, vec![0])]);
    assert_eq!(derived.len(), 7 * 3 - 3);
    for chi in [
        CharacterSpec::trivial(),
        CharacterSpec::cyclic(2),
        z3(),
        CharacterSpec::cyclic(4),
        zinf.clone(),
    ] {
        let r = verify_lemma41(&chi, 6, None);
        assert!(r.passed(), "{}", r);
    }
    assert!(!verify_lemma41(&z3(), 6, Some(Mutation::DropModeCondition)).passed());
}

#[test]
fn eu_membership() {
    for chi in [CharacterSpec::trivial(), z3(), CharacterSpec::cyclic(2)] {
        let r = verify_eu_membership(2, &chi, 2);
        assert!(r.passed(), "{}", r);
    }
    let r = verify_eu_membership(3, &CharacterSpec::trivial(), 2);
    assert!(r.passed(), "{}", r);
}

#[test]
fn invariant_subspace() {
    for gamma in all_labels(2) {
        let r = eu_invariance_check(&EuConfig::new(2, z3(), gamma.clone(), 4, 2)).unwrap();
        assert!(r.passed(), "{}", r);
        assert!(
            r.notes.iter().any(|n| n.contains("dimension 18")),
            "{:?}",
            r.notes
        );
    }
    let gamma = all_labels(3)[0].clone();
    let r = eu_invariance_check(&EuConfig::new(3, CharacterSpec::trivial(), gamma, 3, 2)).unwrap();
    assert!(r.passed(), "{}", r);
    assert!(eu_invariance_check(&EuConfig::new(
        2,
        CharacterSpec::cyclic(4),
        all_labels(2)[0].clone(),
        3,
        1
    ))
    .is_err());
}
