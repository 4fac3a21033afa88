use super::*;
use crate::fock::{enumerate_basis, group_act, heis_act};
use crate::lattice::cocycle;

fn a() -> Scalar {
    Scalar::param("a")
}

fn b() -> Scalar {
    Scalar::param("b")
}

fn p(parts: &[(usize, u32)]) -> Partition {
    Partition::from_parts(parts)
}

fn state(c: u16, parts: &[(usize, u32)]) -> FockBasisState {
    FockBasisState::new(Coset(c), p(parts))
}

fn e(nu: usize, i: usize) -> LatticeVector {
    LatticeVector::basis(nu, i)
}

#[test]
fn expand_e_examples() {
    let c = expand_E(Sign::Minus, &e(2, 0), &Scalar::one(), 1, 4).unwrap();
    assert_eq!(c.terms, vec![(p(&[(0, 1)]), Scalar::int(2))]);
    let c = expand_E(Sign::Minus, &-&e(2, 1), &a(), 1, 4).unwrap();
    assert_eq!(c.terms, vec![(p(&[(1, 1)]), -&(&Scalar::int(2) * &a()))]);
    for sign in [Sign::Plus, Sign::Minus] {
        assert!(expand_E(sign, &e(3, 2), &a(), 0, 4).unwrap().is_identity());
    }
    // z^2 in E_-(ε_1, z) is (2ε_1(-1))^2/2
    let c = expand_E(Sign::Minus, &e(1, 0), &Scalar::one(), 2, 4).unwrap();
    assert_eq!(c.terms, vec![(p(&[(0, 1), (0, 1)]), Scalar::int(2))]);
    // z^{-1} in E_+(ε_1, z) is 2ε_1(1)
    let c = expand_E(Sign::Plus, &e(1, 0), &Scalar::one(), -1, 4).unwrap();
    assert_eq!(c.terms, vec![(p(&[(0, 1)]), Scalar::int(-2))]);
    assert_eq!(
        expand_E(Sign::Plus, &e(1, 0), &Scalar::zero(), -1, 4).unwrap_err(),
        Error::ZeroScale
    );
}

#[test]
fn mode_matrix_examples() {
    let w = FockWindow::new(2, 4, 2, Cocycle::standard());
    let vac = FockBasisState::vacuum();
    let x = mode_matrix(&w, &VertexSpec::new(0, 0, Scalar::one()), -1, 4).unwrap();
    let want = FockVector::term(state(0, &[(0, 1)]), Scalar::int(4));
    assert_eq!(x.column(&vac).unwrap(), want);

    let x = mode_matrix(&w, &VertexSpec::new(0, 1, a()), 0, 4).unwrap();
    assert_eq!(x.column(&vac).unwrap(), FockVector::basis(state(0b11, &[])));

    let x = mode_matrix(&w, &VertexSpec::new(0, 1, a()), -1, 4).unwrap();
    let mut want = FockVector::term(state(0b11, &[(0, 1)]), Scalar::int(2));
    want.add_term(state(0b11, &[(1, 1)]), -&(&Scalar::int(2) * &a()));
    assert_eq!(x.column(&vac).unwrap(), want);

    let x = mode_matrix(&w, &VertexSpec::new(1, 1, Scalar::int(-1)), 1, 4).unwrap();
    assert!(x.is_zero());
    assert_eq!(
        mode_matrix(&w, &VertexSpec::new(0, 1, Scalar::zero()), 0, 4).unwrap_err(),
        Error::ZeroScale
    );
    assert!(matches!(
        mode_matrix(&w, &VertexSpec::new(0, 1, a()), 3, 4),
        Err(Error::ModeOutOfWindow { .. })
    ));
}

#[test]
fn degree_homogeneity() {
    let w = FockWindow::new(2, 4, 2, Cocycle::standard());
    for spec in [
        VertexSpec::new(0, 1, a()),
        VertexSpec::new(1, 1, a()),
        VertexSpec::new(0, 0, Scalar::one()),
    ] {
        for n in -2..=2 {
            let x = mode_matrix(&w, &spec, n, 4).unwrap();
            for ((row, col), _) in x.entries() {
                assert_eq!(
                    row.partition.degree() as i64,
                    col.partition.degree() as i64 - n
                );
            }
        }
    }
}

/// `x_ij(a,n)` applied directly as the product of the four exponential factors.
fn literal_mode(nu: usize, spec: &VertexSpec, n: i64, v: &FockVector, depth: u32) -> FockVector {
    let one = Scalar::one();
    let (ei, ej) = (e(nu, spec.i), -&e(nu, spec.j));
    let d = depth as i64;
    let mut out = FockVector::zero();
    for k3 in -d..=0 {
        for k4 in -d..=0 {
            for k1 in 0..=2 * d {
                let k2 = -n - k1 - k3 - k4;
                if !(0..=2 * d).contains(&k2) {
                    continue;
                }
                let mut x = expand_E(Sign::Plus, &ej, &spec.a, k4, 2 * depth)
                    .unwrap()
                    .apply(v);
                x = expand_E(Sign::Plus, &ei, &one, k3, 2 * depth)
                    .unwrap()
                    .apply(&x);
                x = expand_E(Sign::Minus, &ej, &spec.a, k2, 2 * depth)
                    .unwrap()
                    .apply(&x);
                x = expand_E(Sign::Minus, &ei, &one, k1, 2 * depth)
                    .unwrap()
                    .apply(&x);
                out = out.add(&x);
            }
        }
    }
    if spec.i != spec.j {
        let sign = Scalar::int(cocycle(&e(nu, spec.i), &e(nu, spec.j)));
        group_act(
            &(&e(nu, spec.i) - &e(nu, spec.j)),
            &out,
            &Cocycle::standard(),
        )
        .scale(&sign)
    } else {
        if n == 0 {
            out = out.sub(v);
        }
        out.scale(&(&(&one + &spec.a) / &(&one - &spec.a)))
    }
}

#[test]
fn mode_matrix_matches_literal_product() {
    let nu = 2;
    let depth = 3;
    let w = FockWindow::new(nu, depth, 2, Cocycle::standard());
    let specs = [
        VertexSpec::new(0, 1, a()),
        VertexSpec::new(1, 0, Scalar::zeta(3, 1)),
        VertexSpec::new(0, 0, a()),
        VertexSpec::new(1, 1, Scalar::i()),
    ];
    for spec in &specs {
        for n in -2..=2 {
            let x = mode_matrix(&w, spec, n, depth).unwrap();
            for s in enumerate_basis(nu, depth).states() {
                let v = FockVector::basis(s.clone());
                assert_eq!(
                    x.column(s).unwrap(),
                    literal_mode(nu, spec, n, &v, depth),
                    "{} n={} at {}",
                    spec,
                    n,
                    s
                );
            }
        }
    }
}

#[test]
fn commutator_examples() {
    let w = FockWindow::new(2, 5, 2, Cocycle::standard());
    let u = mode_matrix(&w, &VertexSpec::new(0, 0, Scalar::one()), 1, 5).unwrap();
    let v = mode_matrix(&w, &VertexSpec::new(0, 0, Scalar::one()), -1, 5).unwrap();
    let c = commutator_matrix(&u, &v, 4).unwrap();
    assert!(c
        .first_difference(&ModeOperator::scalar(&w, 4, Scalar::int(8)), 4)
        .is_none());
    assert!(commutator_matrix(&u, &u, 4).unwrap().is_zero());

    let w4 = FockWindow::new(4, 3, 1, Cocycle::standard());
    let u = mode_matrix(&w4, &VertexSpec::new(0, 1, a()), 0, 3).unwrap();
    let v = mode_matrix(&w4, &VertexSpec::new(2, 3, b()), 0, 3).unwrap();
    assert!(commutator_matrix(&u, &v, 3).unwrap().is_zero());
}

#[test]
fn headroom_is_enforced() {
    let w = FockWindow::new(2, 4, 2, Cocycle::standard());
    let u = mode_matrix(&w, &VertexSpec::new(0, 1, a()), -2, 4).unwrap();
    let v = mode_matrix(&w, &VertexSpec::new(1, 0, a()), -2, 4).unwrap();
    assert!(u.compose(&v, 2).is_ok());
    assert!(matches!(
        u.compose(&v, 3),
        Err(Error::InsufficientHeadroom { .. })
    ));
    assert!(matches!(
        u.compose(&v, 5),
        Err(Error::InsufficientHeadroom { .. })
    ));
}

#[test]
fn rhs_examples() {
    let w = FockWindow::new(3, 4, 4, Cocycle::standard());
    let mut cache = ModeCache::new(w.clone());
    let one = Scalar::one();
    let r = thm215_rhs_matrix(
        &mut cache,
        (0, 0, &one, 1),
        (0, 0, &one, -1),
        3,
        Thm215Mutation::None,
    )
    .unwrap();
    assert!(r
        .first_difference(&ModeOperator::scalar(&w, 3, Scalar::int(8)), 3)
        .is_none());

    let (x, y) = (a(), b());
    let r = thm215_rhs_matrix(
        &mut cache,
        (0, 1, &x, 0),
        (1, 2, &y, 0),
        3,
        Thm215Mutation::None,
    )
    .unwrap();
    let want = cache
        .mode(&VertexSpec::new(0, 2, &x * &y), 0, 4)
        .unwrap()
        .scale(&Scalar::int(2));
    assert!(r.first_difference(&want, 3).is_none());
    assert!(!r.is_zero());

    let w4 = FockWindow::new(4, 3, 2, Cocycle::standard());
    let mut cache4 = ModeCache::new(w4);
    for (m, n) in [(0, 0), (1, -1), (1, 0)] {
        let r = thm215_rhs_matrix(
            &mut cache4,
            (0, 1, &x, m),
            (2, 3, &y, n),
            3,
            Thm215Mutation::None,
        )
        .unwrap();
        assert!(r.is_zero());
    }
}

#[test]
fn thm215_small_cases() {
    let cfg = Thm215Config::new(2, Scalar::one(), Scalar::one(), 3, 1);
    let r = verify_thm215(&cfg).unwrap();
    assert!(r.passed(), "{}", r);
    assert_eq!(r.checks, 16 * 9);

    let cfg = Thm215Config::new(2, a(), b(), 3, 1);
    let r = verify_thm215(&cfg).unwrap();
    assert!(r.passed(), "{}", r);

    let cfg = Thm215Config::new(2, Scalar::zeta(3, 1), Scalar::zeta(3, 2), 3, 1);
    assert!(verify_thm215(&cfg).unwrap().passed());
}

#[test]
fn thm215_detects_mutations() {
    let mut cfg = Thm215Config::new(2, Scalar::one(), Scalar::one(), 3, 1);
    cfg.cocycle = Cocycle::with_flip(0, 1);
    let r = verify_thm215(&cfg).unwrap();
    assert!(!r.passed());
    assert!(r.first_failure.is_some());

    let mut cfg = Thm215Config::new(2, Scalar::one(), Scalar::one(), 3, 1);
    cfg.mutation = Thm215Mutation::DeltaCoefficient;
    assert!(!verify_thm215(&cfg).unwrap().passed());
}

#[test]
fn symmetry_and_limit() {
    assert!(verify_symmetry_25(2, &a(), 3, 2).unwrap().passed());
    assert!(verify_symmetry_25(3, &Scalar::i(), 3, 2).unwrap().passed());
    assert!(verify_symmetry_25(2, &Scalar::one(), 3, 2)
        .unwrap()
        .passed());
    let r = verify_limit_24(2, 3, 2).unwrap();
    assert!(r.passed(), "{}", r);
}

/// Truncated power series of `((1-x)/(1+x))^p`.
fn ratio_series(p: i64, len: usize) -> Vec<Scalar> {
    let mul = |u: &[Scalar], v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (i, x) in u.iter().enumerate() {
            for (j, y) in v.iter().enumerate() {
                if i + j < len {
                    out[i + j] = &out[i + j] + &(x * y);
                }
            }
        }
        out
    };
    // (1-x)/(1+x) = 1 - 2x + 2x^2 - ...; its inverse swaps the sign of x
    let base = |s: i64| -> Vec<Scalar> {
        (0..len)
            .map(|k| {
                if k == 0 {
                    Scalar::one()
                } else {
                    Scalar::int(2 * s.pow(k as u32))
                }
            })
            .collect()
    };
    let f = if p >= 0 { base(-1) } else { base(1) };
    let mut out: Vec<Scalar> = (0..len)
        .map(|k| {
            if k == 0 {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
        .collect();
    for _ in 0..p.abs() {
        out = mul(&out, &f);
    }
    out
}

#[test]
fn e_plus_e_minus_exchange() {
    let nu = 2;
    let one = Scalar::one();
    let cases = [
        (e(nu, 0), e(nu, 0)),
        (&e(nu, 0) + &e(nu, 1), &e(nu, 1) - &e(nu, 0)),
        (e(nu, 0), -&e(nu, 0)),
    ];
    for (alpha, beta) in cases {
        let pairing = alpha.dot(&beta);
        let series = ratio_series(pairing, 8);
        for s in enumerate_basis(nu, 3).states() {
            let v = FockVector::basis(s.clone());
            for k in -3i64..=0 {
                for l in 0i64..=3 {
                    let ep = expand_E(Sign::Plus, &alpha, &one, k, 8).unwrap();
                    let em = expand_E(Sign::Minus, &beta, &one, l, 8).unwrap();
                    let lhs = ep.apply(&em.apply(&v));
                    let mut rhs = FockVector::zero();
                    for (r, c) in series.iter().enumerate() {
                        let (kk, ll) = (k + r as i64, l - r as i64);
                        if kk > 0 || ll < 0 {
                            break;
                        }
                        let ep = expand_E(Sign::Plus, &alpha, &one, kk, 8).unwrap();
                        let em = expand_E(Sign::Minus, &beta, &one, ll, 8).unwrap();
                        rhs = rhs.add(&em.apply(&ep.apply(&v)).scale(c));
                    }
                    assert_eq!(
                        lhs, rhs,
                        "alpha={} beta={} k={} l={} at {}",
                        alpha, beta, k, l, s
                    );
                }
            }
        }
    }
}

#[test]
fn heisenberg_commutes_through_exponentials() {
    let nu = 2;
    let beta = &e(nu, 0) - &(&e(nu, 1) + &e(nu, 1));
    let scale = a();
    for c in 0..nu {
        let pairing = e(nu, c).dot(&beta);
        for m in [-3i64, -1, 1, 3] {
            for (sign, ks) in [(Sign::Minus, 0i64..=4), (Sign::Plus, -4i64..=0)] {
                for k in ks {
                    for s in enumerate_basis(nu, 3).states() {
                        let v = FockVector::basis(s.clone());
                        let comp = expand_E(sign, &beta, &scale, k, 8).unwrap();
                        let lhs =
                            heis_act(c, m, &comp.apply(&v)).sub(&comp.apply(&heis_act(c, m, &v)));
                        let relevant = match sign {
                            Sign::Minus => m > 0,
                            Sign::Plus => m < 0,
                        };
                        let rhs = if relevant {
                            let shifted = expand_E(sign, &beta, &scale, k - m, 8).unwrap();
                            // the generating function is in w/z, so each step carries scale^{m}
                            shifted
                                .apply(&v)
                                .scale(&(&Scalar::int(pairing) * &scale.pow(m)))
                        } else {
                            FockVector::zero()
                        };
                        assert_eq!(lhs, rhs, "c={} m={} k={} at {}", c, m, k, s);
                    }
                }
            }
        }
    }
}

#[test]
fn vertex_operators_twist_group_elements() {
    let nu = 3;
    let w = FockWindow::new(nu, 3, 2, Cocycle::standard());
    let alphas = [
        e(nu, 0),
        &e(nu, 1) + &e(nu, 2),
        &e(nu, 0) - &(&e(nu, 2) + &e(nu, 2)),
    ];
    for spec in [
        VertexSpec::new(0, 1, a()),
        VertexSpec::new(2, 0, Scalar::zeta(3, 1)),
    ] {
        let root = &e(nu, spec.i) - &e(nu, spec.j);
        for n in -2..=2 {
            let x = mode_matrix(&w, &spec, n, 3).unwrap();
            for alpha in &alphas {
                let g = ModeOperator::group(&w, 5, alpha);
                let lhs = x.compose(&g, 3).unwrap().sub(&g.compose(&x, 3).unwrap());
                let factor = if root.dot(alpha) % 2 == 0 { 0 } else { -2 };
                let rhs = g.compose(&x, 3).unwrap().scale(&Scalar::int(factor));
                assert!(
                    lhs.first_difference(&rhs, 3).is_none(),
                    "{} n={} alpha={}",
                    spec,
                    n,
                    alpha
                );
            }
        }
    }
}
