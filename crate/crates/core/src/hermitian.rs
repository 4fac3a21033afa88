//! The Hermitian form on `M = C[Γ̄] ⊗ S(H⁻)` and unitarity of the
//! representation with respect to `τ`.
//!
//! Cosets are orthonormal, and on `S(H⁻)` the form pairs `ε_i(−m)` with
//! `ε_j(−m)` to `(m/2)δ_ij`, extended by permanents. Monomials are therefore
//! orthogonal and the Gram matrix is diagonal with entries [`Partition::norm`].

use std::collections::HashMap;

use crate::fock::{enumerate_basis, group_act, heis_act, FockBasisState, FockVector};
use crate::lattice::{Cocycle, LatticeVector};
use crate::report::{CheckReport, Mismatch};
use crate::scalars::Scalar;
use crate::unitary::{CharacterSpec, Representation, UnitaryAlgebra};
use crate::vertex::{FockWindow, ModeCache, VertexSpec};
use crate::{Error, Mutation, Result};

#[cfg(doc)]
use crate::fock::Partition;

/// Which argument of the form is conjugate-linear.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ConjugateSlot {
    First,
    #[default]
    Second,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct HermitianForm {
    pub slot: ConjugateSlot,
}

impl HermitianForm {
    pub fn new(slot: ConjugateSlot) -> HermitianForm {
        HermitianForm { slot }
    }

    pub fn eval(&self, u: &FockVector, v: &FockVector) -> Scalar {
        let (small, large, swapped) = if u.len() <= v.len() {
            (u, v, false)
        } else {
            (v, u, true)
        };
        let mut acc = Scalar::zero();
        for (s, x) in small.terms() {
            let y = large.coefficient(s);
            if y.is_zero() {
                continue;
            }
            let (a, b) = if swapped {
                (y, x.clone())
            } else {
                (x.clone(), y)
            };
            let pair = match self.slot {
                ConjugateSlot::Second => &a * &b.conj(),
                ConjugateSlot::First => &a.conj() * &b,
            };
            acc = &acc + &(&pair * &Scalar::rational(s.partition.norm()));
        }
        acc
    }
}

/// `⟨u|v⟩`, conjugate-linear in `v`.
pub fn form_eval(u: &FockVector, v: &FockVector) -> Scalar {
    HermitianForm::default().eval(u, v)
}

fn basis_states(nu: usize, depth: u32) -> Vec<FockBasisState> {
    enumerate_basis(nu, depth).states().to_vec()
}

fn scalar_mismatch(context: String, location: String, lhs: &Scalar, rhs: &Scalar) -> Mismatch {
    Mismatch {
        context,
        location,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

/// Compares `⟨A w|v⟩` with `⟨w|B v⟩` on all basis pairs, given the images of
/// every basis state. Pairs where both sides vanish by support are skipped.
fn compare_adjoint(
    report: &mut CheckReport,
    context: &str,
    states: &[FockBasisState],
    a_images: &HashMap<FockBasisState, FockVector>,
    b_images: &HashMap<FockBasisState, FockVector>,
) {
    for w in states {
        let aw = &a_images[w];
        let targets: std::collections::BTreeSet<&FockBasisState> =
            aw.terms().map(|(s, _)| s).collect();
        for v in states {
            let bv = &b_images[v];
            let relevant = targets.contains(v) || bv.coefficient(w) != Scalar::zero();
            if !relevant {
                continue;
            }
            let lhs = form_eval(aw, &FockVector::basis(v.clone()));
            let rhs = form_eval(&FockVector::basis(w.clone()), bv);
            report.record(lhs == rhs, || {
                scalar_mismatch(context.to_string(), format!("w={} v={}", w, v), &lhs, &rhs)
            });
        }
    }
}

/// `⟨ε_i(m)w|v⟩ = ⟨w|ε_i(−m)v⟩` and `⟨e^{ε̄_i}w|v⟩ = ⟨w|e^{ε̄_i}v⟩` on the
/// truncated basis, for all colors and odd `|m| ≤ depth`.
pub fn verify_adjoint_basic(nu: usize, depth: u32, eps: &Cocycle) -> CheckReport {
    let states = basis_states(nu, depth);
    let mut report = CheckReport::new(format!("basic adjoints nu={} depth={}", nu, depth));
    let images = |f: &dyn Fn(&FockVector) -> FockVector| -> HashMap<FockBasisState, FockVector> {
        states
            .iter()
            .map(|s| (s.clone(), f(&FockVector::basis(s.clone()))))
            .collect()
    };
    for i in 0..nu {
        let mut m = 1;
        while m <= depth as i64 {
            for n in [m, -m] {
                let a = images(&|v| heis_act(i, n, v));
                let b = images(&|v| heis_act(i, -n, v));
                compare_adjoint(&mut report, &format!("e{}({})", i + 1, n), &states, &a, &b);
            }
            m += 2;
        }
        let g = LatticeVector::basis(nu, i);
        let a = images(&|v| group_act(&g, v, eps));
        compare_adjoint(&mut report, &format!("e^e{}", i + 1), &states, &a, &a);
    }
    report
}

/// The Gram matrix of the truncated basis is diagonal, positive and
/// conjugate-symmetric.
pub fn gram_positivity(nu: usize, depth: u32) -> CheckReport {
    let states = basis_states(nu, depth);
    let mut report = CheckReport::new(format!("Gram matrix nu={} depth={}", nu, depth));
    let vecs: Vec<FockVector> = states
        .iter()
        .map(|s| FockVector::basis(s.clone()))
        .collect();
    for (a, u) in states.iter().zip(&vecs) {
        for (b, v) in states.iter().zip(&vecs) {
            let g = form_eval(u, v);
            if a == b {
                let positive = g
                    .as_cyclo()
                    .and_then(|c| c.as_rational())
                    .map(|q| !q.is_negative() && !q.is_zero())
                    .unwrap_or(false);
                report.record(positive, || {
                    scalar_mismatch("diagonal".into(), format!("{}", a), &g, &Scalar::zero())
                });
            } else {
                report.record(g.is_zero(), || {
                    scalar_mismatch(
                        "off-diagonal".into(),
                        format!("{} {}", a, b),
                        &g,
                        &Scalar::zero(),
                    )
                });
            }
            let h = form_eval(v, u).conj();
            report.record(g == h, || {
                scalar_mismatch("conjugate symmetry".into(), format!("{} {}", a, b), &g, &h)
            });
        }
    }
    report
}

/// Settings for the `τ`-unitarity check.
#[derive(Clone, Debug)]
pub struct Prop42Config {
    pub nu: usize,
    pub chi: CharacterSpec,
    pub depth: u32,
    pub window: u32,
    pub mutation: Option<Mutation>,
}

impl Prop42Config {
    pub fn new(nu: usize, chi: CharacterSpec, depth: u32, window: u32) -> Prop42Config {
        Prop42Config {
            nu,
            chi,
            depth,
            window,
            mutation: None,
        }
    }
}

/// `⟨x_ij(a,n)w|v⟩ = (−1)^{n+1}⟨w|x_ij(a,−n)v⟩` for `a ∈ σ(G)`, and
/// `⟨rho(u)w|v⟩ = ⟨w|rho(τ(u))v⟩` for all generators `u = e_ij(m,α)`,
/// `|m| ≤ window`, on basis states of degree at most `depth − window`.
pub fn verify_prop42(cfg: &Prop42Config) -> Result<CheckReport> {
    if !cfg.chi.on_unit_circle() {
        return Err(Error::Invalid(
            "character values must be roots of unity".into(),
        ));
    }
    let nu = cfg.nu;
    let dom = cfg.depth.saturating_sub(cfg.window);
    let w = cfg.window as i64;
    let eps = Mutation::cocycle(cfg.mutation);
    let fw = FockWindow::new(nu, cfg.depth, cfg.window, eps);
    let alg = UnitaryAlgebra::new(nu, cfg.chi.clone());
    let mut rep = Representation::new(alg.clone(), fw.clone(), cfg.mutation);
    let mut cache = ModeCache::new(fw);
    let states = basis_states(nu, dom);
    let mut report = CheckReport::new(format!("unitarity under tau G={}", cfg.chi));
    let elems = cfg.chi.elements(1);

    let mut values: Vec<Scalar> = elems.iter().map(|a| cfg.chi.sigma(a)).collect();
    values.dedup();
    for i in 0..nu {
        for j in 0..nu {
            for a in &values {
                let spec = VertexSpec::new(i, j, a.clone());
                for n in -w..=w {
                    let x = cache.mode(&spec, n, dom)?;
                    let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
                    let y = cache.mode(&spec, -n, dom)?.scale(&Scalar::int(sign));
                    let ai = states
                        .iter()
                        .map(|s| Ok((s.clone(), x.column(s)?)))
                        .collect::<Result<_>>()?;
                    let bi = states
                        .iter()
                        .map(|s| Ok((s.clone(), y.column(s)?)))
                        .collect::<Result<_>>()?;
                    compare_adjoint(
                        &mut report,
                        &format!("x{}{}({},{})", i + 1, j + 1, a, n),
                        &states,
                        &ai,
                        &bi,
                    );
                }
            }
        }
    }

    for i in 0..nu {
        for j in 0..nu {
            for m in -w..=w {
                for a in &elems {
                    let u = alg.make_e(i, j, m, a);
                    if u.is_zero() {
                        continue;
                    }
                    let ru = rep.rho(&u)?;
                    let rt = rep.rho(&alg.tau(&u, cfg.mutation)?)?;
                    let ai = states
                        .iter()
                        .map(|s| Ok((s.clone(), ru.column(s)?)))
                        .collect::<Result<_>>()?;
                    let bi = states
                        .iter()
                        .map(|s| Ok((s.clone(), rt.column(s)?)))
                        .collect::<Result<_>>()?;
                    compare_adjoint(
                        &mut report,
                        &format!("e{}{}({},{:?})", i + 1, j + 1, m, a),
                        &states,
                        &ai,
                        &bi,
                    );
                }
            }
        }
    }
    Ok(report)
}
