//! Runs the requested suites and collects their reports.

use std::time::Instant;

use twistvo::clifford::{
    all_labels, burnside_with, decompose, eigen_check_33, iso_check_with, verify_lemma34,
    w_basis_determinant, WCoordinates,
};
use twistvo::hermitian::{gram_positivity, verify_adjoint_basic, verify_prop42, Prop42Config};
use twistvo::series::{
    delta_identity_windows, rational_identity_sides, verify_remark_2_14, DeltaIdentity,
    RationalIdentity, SeriesMutation,
};
use twistvo::unitary::{
    eu_invariance_check, verify_eu_membership, verify_lemma41, verify_prop31, verify_rho_hom,
    verify_structure, EuConfig, RhoConfig,
};
use twistvo::vertex::{
    verify_limit_24, verify_symmetry_25, verify_thm215, Thm215Config, Thm215Mutation,
};
use twistvo::{CheckReport, Mismatch, Mutation, Scalar};

use crate::config::{Regime, RunConfig, Suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub status: Status,
    pub parts: Vec<CheckReport>,
    /// Why the suite was skipped or could not run.
    pub reason: Option<String>,
    pub wall_clock_ms: u128,
}

impl SuiteOutcome {
    pub fn checks(&self) -> usize {
        self.parts.iter().map(|p| p.checks).sum()
    }

    pub fn failures(&self) -> usize {
        self.parts.iter().map(|p| p.failures).sum()
    }

    pub fn first_failure(&self) -> Option<(&str, &Mismatch)> {
        self.parts
            .iter()
            .find_map(|p| p.first_failure.as_ref().map(|m| (p.name.as_str(), m)))
    }
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub suites: Vec<SuiteOutcome>,
}

impl RunOutcome {
    /// Skipped suites do not count against the run.
    pub fn passed(&self) -> bool {
        self.suites
            .iter()
            .all(|s| matches!(s.status, Status::Pass | Status::Skipped))
    }
}

enum Ran {
    Parts(Vec<CheckReport>),
    Skipped(String),
}

pub fn run(cfg: &RunConfig) -> RunOutcome {
    let suites = cfg
        .suites
        .iter()
        .map(|&suite| {
            let start = Instant::now();
            let result = run_suite(suite, cfg);
            let wall_clock_ms = start.elapsed().as_millis();
            let (status, parts, reason) = match result {
                Ok(Ran::Parts(parts)) => {
                    let status = if parts.iter().all(CheckReport::passed) {
                        Status::Pass
                    } else {
                        Status::Fail
                    };
                    (status, parts, None)
                }
                Ok(Ran::Skipped(why)) => (Status::Skipped, Vec::new(), Some(why)),
                Err(e) => (Status::Error, Vec::new(), Some(e.to_string())),
            };
            SuiteOutcome {
                suite,
                status,
                parts,
                reason,
                wall_clock_ms,
            }
        })
        .collect();
    RunOutcome { suites }
}

fn run_suite(suite: Suite, cfg: &RunConfig) -> twistvo::Result<Ran> {
    match suite {
        Suite::Delta => Ok(Ran::Parts(delta_suite(cfg))),
        Suite::Thm215 => thm215_suite(cfg).map(Ran::Parts),
        Suite::Rho => rho_suite(cfg).map(Ran::Parts),
        Suite::Clifford => Ok(Ran::Parts(clifford_suite(cfg))),
        Suite::Hermitian => hermitian_suite(cfg),
        Suite::Lemma41 => Ok(Ran::Parts(vec![verify_lemma41(
            &cfg.chi,
            6.max(cfg.window as i64),
            cfg.mutation,
        )])),
        Suite::Thm44 => thm44_suite(cfg),
    }
}

fn bool_check(report: &mut CheckReport, ok: bool, context: String) {
    report.record(ok, || Mismatch {
        context,
        location: "both sides".into(),
        lhs: "left side".into(),
        rhs: "differs".into(),
    });
}

fn delta_suite(cfg: &RunConfig) -> Vec<CheckReport> {
    let mutation = if cfg.mutation == Some(Mutation::DeltaCoefficient) {
        SeriesMutation::DoubleDDelta
    } else {
        SeriesMutation::None
    };
    let mut rational = CheckReport::new("partial fractions");
    for id in [
        RationalIdentity::LemmaFirst,
        RationalIdentity::LemmaSecond,
        RationalIdentity::CorollaryFirst,
        RationalIdentity::CorollarySecond,
    ] {
        for n in 1..=4 {
            let (l, r) = rational_identity_sides(id, n, mutation);
            rational.record(l == r, || Mismatch {
                context: format!("{:?} n={}", id, n),
                location: "rational function".into(),
                lhs: l.to_string(),
                rhs: r.to_string(),
            });
        }
    }
    let mut deltas = CheckReport::new("delta expansions");
    for id in [DeltaIdentity::SimplePoles, DeltaIdentity::DoublePole] {
        for n in 1..=4usize {
            let k = 2 * n as i64 + 4;
            let (l, r) = delta_identity_windows(id, n, k, mutation);
            let at = l.first_difference(&r);
            deltas.record(at.is_none(), || {
                let e = at.unwrap();
                Mismatch {
                    context: format!("{:?} n={}", id, n),
                    location: format!("exponent {}", e),
                    lhs: l.get(e).to_string(),
                    rhs: r.get(e).to_string(),
                }
            });
        }
    }
    let mut remark = CheckReport::new("delta limit at 1");
    bool_check(&mut remark, verify_remark_2_14(6), "window [-6, 6]".into());
    vec![rational, deltas, remark]
}

fn regime_scalars(regime: Regime, cfg: &RunConfig) -> (Scalar, Scalar) {
    match regime {
        Regime::Unit => (Scalar::one(), Scalar::one()),
        Regime::Zeta3 => (Scalar::zeta(3, 1), Scalar::zeta(3, 2)),
        Regime::Zeta4 => (Scalar::zeta(4, 1), Scalar::zeta(4, 1)),
        Regime::Formal => (Scalar::param(&cfg.params[0]), Scalar::param(&cfg.params[1])),
    }
}

fn thm215_suite(cfg: &RunConfig) -> twistvo::Result<Vec<CheckReport>> {
    let mut parts = Vec::new();
    for &regime in &cfg.regimes {
        let (a, b) = regime_scalars(regime, cfg);
        let mut t = Thm215Config::new(cfg.nu, a, b, cfg.depth, cfg.window);
        t.cocycle = Mutation::cocycle(cfg.mutation);
        if cfg.mutation == Some(Mutation::DeltaCoefficient) {
            t.mutation = Thm215Mutation::DeltaCoefficient;
        }
        let mut r = verify_thm215(&t)?;
        r.name = format!("{} [{}]", r.name, regime.name());
        parts.push(r);
    }
    parts.push(verify_symmetry_25(
        cfg.nu,
        &Scalar::zeta(3, 1),
        cfg.depth,
        cfg.window,
    )?);
    parts.push(verify_limit_24(cfg.nu, cfg.depth, cfg.window)?);
    Ok(parts)
}

fn rho_suite(cfg: &RunConfig) -> twistvo::Result<Vec<CheckReport>> {
    let mut rc = RhoConfig::new(cfg.nu, cfg.chi.clone(), cfg.depth, cfg.window);
    rc.mutation = cfg.mutation;
    Ok(vec![
        verify_rho_hom(&rc)?,
        verify_prop31(cfg.nu, &cfg.chi, cfg.window.max(1) as i64, 1),
        verify_structure(cfg.nu, &cfg.chi, cfg.triples, cfg.seed, cfg.mutation)?,
        verify_eu_membership(cfg.nu, &cfg.chi, cfg.window.clamp(1, 2) as i64),
    ])
}

fn clifford_suite(cfg: &RunConfig) -> Vec<CheckReport> {
    let nu = cfg.nu;
    let eps = Mutation::cocycle(cfg.mutation);
    let mut parts = vec![iso_check_with(nu, &eps), verify_lemma34(nu)];

    let mut shape = CheckReport::new(format!("decomposition nu={}", nu));
    let comps = decompose(nu);
    let count = 1usize << (nu / 2 + 1);
    let dim = 1usize << (nu.div_ceil(2) - 1);
    shape.record(comps.len() == count, || Mismatch {
        context: "components".into(),
        location: "count".into(),
        lhs: comps.len().to_string(),
        rhs: count.to_string(),
    });
    for (label, basis) in &comps {
        shape.record(basis.len() == dim, || Mismatch {
            context: format!("component {}", label),
            location: "dimension".into(),
            lhs: basis.len().to_string(),
            rhs: dim.to_string(),
        });
    }
    let det = w_basis_determinant(nu);
    shape.record(!det.is_zero(), || Mismatch {
        context: "w-basis".into(),
        location: "determinant".into(),
        lhs: det.to_string(),
        rhs: "nonzero".into(),
    });
    shape.note(format!("{} components of dimension {}", comps.len(), dim));
    parts.push(shape);

    let wc = WCoordinates::new(nu);
    let mut irr = CheckReport::new(format!("irreducibility nu={}", nu));
    let mut eigen = CheckReport::new(format!("adjacent pair action nu={}", nu));
    for gamma in all_labels(nu) {
        let mut b = burnside_with(&gamma, nu, &wc);
        b.notes.clear();
        irr.absorb(b);
        eigen.absorb(eigen_check_33(nu, &gamma));
    }
    parts.push(irr);
    parts.push(eigen);
    parts
}

fn hermitian_suite(cfg: &RunConfig) -> twistvo::Result<Ran> {
    let mut parts = vec![
        gram_positivity(cfg.nu, cfg.depth),
        verify_adjoint_basic(cfg.nu, cfg.depth, &Mutation::cocycle(cfg.mutation)),
    ];
    if cfg.chi.on_unit_circle() {
        let mut p = Prop42Config::new(cfg.nu, cfg.chi.clone(), cfg.depth, cfg.window);
        p.mutation = cfg.mutation;
        parts.push(verify_prop42(&p)?);
    } else {
        let mut skipped = CheckReport::new("unitarity under tau");
        skipped.note("skipped: character values are not roots of unity");
        parts.push(skipped);
    }
    Ok(Ran::Parts(parts))
}

fn thm44_suite(cfg: &RunConfig) -> twistvo::Result<Ran> {
    match cfg.chi.order() {
        Some(n) if n % 2 == 1 => {}
        Some(n) => return Ok(Ran::Skipped(format!("character order {} is even", n))),
        None => return Ok(Ran::Skipped("character order is infinite".into())),
    }
    let mut parts = Vec::new();
    for gamma in all_labels(cfg.nu) {
        let mut e = EuConfig::new(cfg.nu, cfg.chi.clone(), gamma, cfg.depth, cfg.window);
        e.mutation = cfg.mutation;
        parts.push(eu_invariance_check(&e)?);
    }
    Ok(Ran::Parts(parts))
}
