//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout. The
//! process exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use twistvo::clifford::{
    all_labels, all_signs, burnside_with, decompose, lattice_mul, lemma34_apply, verify_lemma34,
    w_vector, WCoordinates,
};
use twistvo::hermitian::{gram_positivity, verify_adjoint_basic, verify_prop42, Prop42Config};
use twistvo::lattice::{Cocycle, LatticeVector};
use twistvo::series::{
    delta_identity_windows, verify_delta_identity, verify_rational_identity, verify_remark_2_14,
    DeltaIdentity, RationalIdentity, SeriesMutation,
};
use twistvo::unitary::{
    eu_invariance_check, lambda_membership, verify_lemma41, verify_rho_hom, verify_structure,
    CharacterSpec, EuConfig, GlElement, RhoConfig, UnitaryAlgebra,
};
use twistvo::vertex::{
    mode_matrix, verify_limit_24, verify_thm215, FockWindow, ModeOperator, Thm215Config,
    Thm215Mutation, VertexSpec,
};
use twistvo::{CheckReport, Mutation, Scalar};

/// Collects sub-results of one criterion.
#[derive(Default)]
struct Outcome {
    checks: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn report(&mut self, r: &CheckReport) {
        self.checks += r.checks;
        if !r.passed() {
            self.failures.push(r.to_string());
        }
    }

    fn result(&mut self, r: twistvo::Result<CheckReport>, what: &str) {
        match r {
            Ok(r) => self.report(&r),
            Err(e) => self.expect(false, || format!("{}: {}", what, e)),
        }
    }

    /// A mutated run must fail and name where.
    fn must_fail(&mut self, r: twistvo::Result<CheckReport>, what: &str) {
        match r {
            Ok(r) => self.expect(!r.passed() && r.first_failure.is_some(), || {
                format!("{} was not detected", what)
            }),
            Err(e) => self.expect(false, || format!("{}: {}", what, e)),
        }
    }
}

fn z3() -> CharacterSpec {
    CharacterSpec::cyclic(3)
}

fn criterion_1(o: &mut Outcome) {
    for id in [
        RationalIdentity::LemmaFirst,
        RationalIdentity::LemmaSecond,
        RationalIdentity::CorollaryFirst,
        RationalIdentity::CorollarySecond,
    ] {
        for n in 1..=4 {
            o.expect(verify_rational_identity(id, n), || {
                format!("{:?} n={}", id, n)
            });
        }
    }
    for id in [DeltaIdentity::DoublePole, DeltaIdentity::SimplePoles] {
        for n in 1..=4usize {
            o.expect(verify_delta_identity(id, n, 2 * n as i64 + 4), || {
                format!("{:?} n={}", id, n)
            });
        }
    }
}

fn criterion_2(o: &mut Outcome) {
    let regimes = [
        ("a=b=1", Scalar::one(), Scalar::one()),
        ("a=z3 b=z3^2", Scalar::zeta(3, 1), Scalar::zeta(3, 2)),
        ("a=b=z4", Scalar::zeta(4, 1), Scalar::zeta(4, 1)),
        ("formal", Scalar::param("a"), Scalar::param("b")),
    ];
    for nu in [2, 3] {
        for (name, a, b) in &regimes {
            let r = verify_thm215(&Thm215Config::new(nu, a.clone(), b.clone(), 5, 2));
            o.result(r, &format!("nu={} {}", nu, name));
        }
    }
}

fn criterion_3(o: &mut Outcome) {
    for nu in [2, 3] {
        for chi in [CharacterSpec::trivial(), z3()] {
            let r = verify_rho_hom(&RhoConfig::new(nu, chi.clone(), 5, 2));
            o.result(r, &format!("nu={} G={}", nu, chi));
        }
    }
}

fn criterion_4(o: &mut Outcome) {
    for chi in [CharacterSpec::trivial(), z3(), CharacterSpec::cyclic(4)] {
        for nu in [2, 3] {
            o.result(
                verify_structure(nu, &chi, 1000, 2024, None),
                &format!("nu={} G={}", nu, chi),
            );
        }
    }
    // τ by hand: conjugate-linear, an involution, and an anti-automorphism.
    let alg = UnitaryAlgebra::new(2, z3());
    let gens: Vec<GlElement> = (-2..=2)
        .flat_map(|m| (0..3).map(move |a| (m, a)))
        .flat_map(|(m, a)| {
            [
                alg.make_e(0, 1, m, &[a]),
                alg.make_e(0, 0, m, &[a]),
                alg.make_e(1, 1, m, &[a]),
            ]
        })
        .filter(|x| !x.is_zero())
        .collect();
    let c = &Scalar::int(2) + &Scalar::zeta(3, 1);
    for x in &gens {
        let tx = alg.tau(x, None).unwrap();
        o.expect(alg.tau(&tx, None).unwrap() == *x, || {
            format!("tau^2 on {}", x)
        });
        let lhs = alg.tau(&x.scale(&c), None).unwrap();
        o.expect(lhs == tx.scale(&c.conj()), || format!("tau(c x) on {}", x));
        for y in &gens {
            let ty = alg.tau(y, None).unwrap();
            let lhs = alg.tau(&alg.bracket(x, y), None).unwrap();
            o.expect(lhs == alg.bracket(&tx, &ty).scale(&Scalar::int(-1)), || {
                format!("tau[x,y] for {} and {}", x, y)
            });
        }
    }
}

fn criterion_5(o: &mut Outcome) {
    for nu in 2..=6usize {
        let comps = decompose(nu);
        let want_count = 2usize.pow(nu as u32 / 2 + 1);
        let d = nu / 2;
        let want_dim = if nu % 2 == 0 {
            2usize.pow(d as u32 - 1)
        } else {
            2usize.pow(d as u32)
        };
        o.expect(comps.len() == want_count, || {
            format!("nu={}: {} components", nu, comps.len())
        });
        o.expect(comps.iter().all(|(_, b)| b.len() == want_dim), || {
            format!("nu={}: component dimensions", nu)
        });
        o.expect(
            comps.iter().map(|(_, b)| b.len()).sum::<usize>() == 1 << nu,
            || format!("nu={}: total", nu),
        );
        let wc = WCoordinates::new(nu);
        for gamma in all_labels(nu) {
            o.report(&burnside_with(&gamma, nu, &wc));
        }
        o.report(&verify_lemma34(nu));
        // the closed form against left multiplication by e^{ε_j}
        let eps = Cocycle::standard();
        for rho in all_signs(nu) {
            for j in 1..=nu {
                let direct = lattice_mul(&LatticeVector::basis(nu, j - 1), &w_vector(&rho), &eps);
                let (c, r) = lemma34_apply(j, &rho);
                o.expect(direct == w_vector(&r).scale(&c), || {
                    format!("nu={} j={} rho={:?}", nu, j, rho)
                });
            }
        }
    }
}

fn criterion_6(o: &mut Outcome) {
    o.result(verify_limit_24(2, 4, 2), "limit nu=2");
    o.expect(verify_remark_2_14(6), || "delta limit K=6".into());
    // x_ii(1, n) is 4ε_i(n): odd modes only.
    let fw = FockWindow::new(2, 4, 2, Cocycle::standard());
    for i in 0..2 {
        for n in -2..=2i64 {
            let x = mode_matrix(&fw, &VertexSpec::new(i, i, Scalar::one()), n, 4).unwrap();
            let want = if n % 2 != 0 {
                ModeOperator::heisenberg(&fw, 4, i, n)
                    .unwrap()
                    .scale(&Scalar::int(4))
            } else {
                ModeOperator::zero(&fw, 4, n)
            };
            o.expect(x.first_difference(&want, 4).is_none(), || {
                format!("x_{}{}(1,{}) != 4 e_{}({})", i + 1, i + 1, n, i + 1, n)
            });
        }
    }
}

fn criterion_7(o: &mut Outcome) {
    for nu in [2, 3] {
        o.report(&gram_positivity(nu, 5));
        o.report(&verify_adjoint_basic(nu, 5, &Cocycle::standard()));
        o.result(
            verify_prop42(&Prop42Config::new(nu, z3(), 5, 2)),
            &format!("tau-unitarity nu={}", nu),
        );
    }
}

/// `dim V_ν(γ) · Σ_{d ≤ D} dim S(H_0^−)_d`, with `H_0^−` of dimension `ν − 1`
/// in odd modes divisible by `N` and `ν` in the other odd modes.
fn expected_eu_dimension(nu: usize, n: u64, depth: usize) -> usize {
    let mut series = vec![0usize; depth + 1];
    series[0] = 1;
    for k in (1..=depth).step_by(2) {
        let mult = if (k as u64).is_multiple_of(n) {
            nu - 1
        } else {
            nu
        };
        for _ in 0..mult {
            for d in k..=depth {
                series[d] += series[d - k];
            }
        }
    }
    let comp_dim = 1usize << (nu.div_ceil(2) - 1);
    comp_dim * series.iter().sum::<usize>()
}

fn criterion_8(o: &mut Outcome) {
    let want = expected_eu_dimension(2, 3, 4);
    for gamma in all_labels(2) {
        match eu_invariance_check(&EuConfig::new(2, z3(), gamma.clone(), 4, 2)) {
            Ok(r) => {
                o.report(&r);
                let note = format!("subspace dimension {} up to degree 4", want);
                o.expect(r.notes.contains(&note), || {
                    format!("gamma={:?}: {:?}, expected {}", gamma.0, r.notes, want)
                });
            }
            Err(e) => o.expect(false, || format!("gamma={:?}: {}", gamma.0, e)),
        }
    }
}

fn criterion_9(o: &mut Outcome) {
    let chars = [
        CharacterSpec::trivial(),
        CharacterSpec::cyclic(2),
        z3(),
        CharacterSpec::cyclic(4),
    ];
    for chi in chars {
        o.report(&verify_lemma41(&chi, 6, None));
        // brute force: t^m e^α commutes with t^{±1} and e^{g}
        let alg = UnitaryAlgebra::new(1, chi.clone());
        let commutes = |m: i64, a: &[i64], n: i64, b: &[i64]| {
            let (c1, _, _) = alg.ring_mul((m, a), (n, b));
            let (c2, _, _) = alg.ring_mul((n, b), (m, a));
            c1 == c2
        };
        let gens: Vec<(i64, Vec<i64>)> = std::iter::once((1, chi.zero()))
            .chain(std::iter::once((-1, chi.zero())))
            .chain(chi.elements(1).into_iter().map(|g| (0, g)))
            .collect();
        for m in -6..=6 {
            for a in chi.elements(1) {
                let central = gens.iter().all(|(n, b)| commutes(m, &a, *n, b));
                o.expect(central == lambda_membership(m, &a, &chi, None), || {
                    format!("G={} m={} a={:?}", chi, m, a)
                });
            }
        }
    }
}

fn criterion_10(o: &mut Outcome) {
    // delta: the Dδ coefficient doubled
    let (l, r) = delta_identity_windows(
        DeltaIdentity::DoublePole,
        2,
        8,
        SeriesMutation::DoubleDDelta,
    );
    o.expect(l.first_difference(&r).is_some(), || {
        "delta: doubled coefficient not detected".into()
    });

    let mut t = Thm215Config::new(2, Scalar::zeta(3, 1), Scalar::zeta(3, 2), 3, 1);
    t.mutation = Thm215Mutation::DeltaCoefficient;
    o.must_fail(verify_thm215(&t), "commutator formula: delta coefficient");
    let mut t = Thm215Config::new(2, Scalar::one(), Scalar::one(), 3, 1);
    t.cocycle = Cocycle::with_flip(0, 1);
    o.must_fail(verify_thm215(&t), "commutator formula: cocycle flip");

    for m in [Mutation::DropZeroModeDelta, Mutation::CocycleFlip] {
        let mut rc = RhoConfig::new(2, z3(), 3, 1);
        rc.mutation = Some(m);
        o.must_fail(verify_rho_hom(&rc), &format!("rho: {}", m.name()));
    }
    o.must_fail(
        verify_structure(2, &z3(), 200, 7, Some(Mutation::DropTauSign)),
        "structure: tau sign",
    );

    let iso = twistvo::clifford::iso_check_with(3, &Cocycle::with_flip(0, 1));
    o.must_fail(Ok(iso), "clifford: cocycle flip");

    let mut p = Prop42Config::new(2, z3(), 3, 1);
    p.mutation = Some(Mutation::DropTauSign);
    o.must_fail(verify_prop42(&p), "hermitian: tau sign");

    o.must_fail(
        Ok(verify_lemma41(&z3(), 6, Some(Mutation::DropModeCondition))),
        "lemma: mode condition",
    );

    let mut e = EuConfig::new(2, z3(), all_labels(2)[0].clone(), 3, 1);
    e.mutation = Some(Mutation::CocycleFlip);
    o.must_fail(eu_invariance_check(&e), "invariant subspace: cocycle flip");
}

type Criterion = (&'static str, fn(&mut Outcome));

fn main() {
    let criteria: [Criterion; 10] = [
        ("delta calculus identities", criterion_1),
        (
            "commutator formula, nu in {2,3}, four scalar regimes",
            criterion_2,
        ),
        ("representation map is a homomorphism", criterion_3),
        ("bracket, tau and unitary closure", criterion_4),
        ("Clifford decomposition, nu = 2..6", criterion_5),
        ("limits at a = 1", criterion_6),
        ("Hermitian form and tau-unitarity", criterion_7),
        ("invariant subspace for G = Z/3", criterion_8),
        ("center of the skew ring", criterion_9),
        ("mutation sensitivity", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = Outcome::default();
        let run = catch_unwind(AssertUnwindSafe(|| f(&mut o)));
        let secs = start.elapsed().as_secs_f64();
        let ok = run.is_ok() && o.failures.is_empty();
        println!(
            "{} {:>2} {} ({} checks, {:.1}s)",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            name,
            o.checks,
            secs
        );
        if run.is_err() {
            println!("     panicked");
        }
        for f in o.failures.iter().take(3) {
            println!("     {}", f);
        }
        if !ok {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
