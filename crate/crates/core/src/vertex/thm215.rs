//! The commutator formula for `[X_ij(a,z), X_kl(b,w)]` and two smaller
//! identities of the vertex operators.

use std::sync::Arc;

use super::{commutator_matrix, FockWindow, ModeCache, ModeOperator, VertexSpec};
use crate::lattice::Cocycle;
use crate::report::{CheckReport, Mismatch};
use crate::scalars::{Cyclo, Param, Scalar};
use crate::series::{mode_extract, DeltaAtom};
use crate::Result;

/// Deliberate corruptions used to confirm that the check can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Thm215Mutation {
    #[default]
    None,
    /// Uses 2 instead of 4 in front of both `Dδ` terms.
    DeltaCoefficient,
}

#[derive(Clone, Debug)]
pub struct Thm215Config {
    pub nu: usize,
    pub a: Scalar,
    pub b: Scalar,
    pub depth: u32,
    pub window: u32,
    pub cocycle: Cocycle,
    pub mutation: Thm215Mutation,
}

impl Thm215Config {
    pub fn new(nu: usize, a: Scalar, b: Scalar, depth: u32, window: u32) -> Thm215Config {
        Thm215Config {
            nu,
            a,
            b,
            depth,
            window,
            cocycle: Cocycle::standard(),
            mutation: Thm215Mutation::None,
        }
    }
}

/// One summand `coef · X_op(λz) · atom(w/z)`, or `coef · atom(w/z)` when `op` is `None`.
struct Term {
    coef: Scalar,
    op: Option<VertexSpec>,
    lambda: Scalar,
    atom: DeltaAtom,
}

fn kron(x: usize, y: usize) -> bool {
    x == y
}

fn rhs_terms(
    i: usize,
    j: usize,
    a: &Scalar,
    k: usize,
    l: usize,
    b: &Scalar,
    mutation: Thm215Mutation,
) -> Vec<Term> {
    let one = Scalar::one();
    let two = Scalar::int(2);
    let ab = a * b;
    let a_over_b = a / b;
    let binv = b.inv().expect("nonzero b");
    let ainv = a.inv().expect("nonzero a");
    let frac = |x: &Scalar| &(&one + x) / &(&one - x);
    let d_coef = match mutation {
        Thm215Mutation::None => Scalar::int(4),
        Thm215Mutation::DeltaCoefficient => Scalar::int(2),
    };
    let mut t = Vec::new();
    // δ(w/az)
    let atom1 = DeltaAtom::delta(ainv.clone());
    if kron(j, k) {
        t.push(Term {
            coef: two.clone(),
            op: Some(VertexSpec::new(i, l, ab.clone())),
            lambda: one.clone(),
            atom: atom1.clone(),
        });
        if kron(i, l) && ab != one {
            t.push(Term {
                coef: &two * &frac(&ab),
                op: None,
                lambda: one.clone(),
                atom: atom1.clone(),
            });
        }
    }
    // δ(bw/z)
    let atom2 = DeltaAtom::delta(b.clone());
    if kron(i, l) {
        t.push(Term {
            coef: -&two,
            op: Some(VertexSpec::new(k, j, ab.clone())),
            lambda: binv.clone(),
            atom: atom2.clone(),
        });
        if kron(j, k) && ab != one {
            t.push(Term {
                coef: -&(&two * &frac(&ab)),
                op: None,
                lambda: binv.clone(),
                atom: atom2,
            });
        }
    }
    // δ(−w/z)
    let atom3 = DeltaAtom::delta(-&one);
    if kron(i, k) {
        t.push(Term {
            coef: two.clone(),
            op: Some(VertexSpec::new(l, j, a_over_b.clone())),
            lambda: b.clone(),
            atom: atom3.clone(),
        });
        if kron(j, l) && a_over_b != one {
            t.push(Term {
                coef: &two * &frac(&a_over_b),
                op: None,
                lambda: b.clone(),
                atom: atom3.clone(),
            });
        }
    }
    // δ(−bw/az)
    let atom4 = DeltaAtom::delta(-&(b * &ainv));
    if kron(j, l) {
        t.push(Term {
            coef: -&two,
            op: Some(VertexSpec::new(i, k, a_over_b.clone())),
            lambda: one.clone(),
            atom: atom4.clone(),
        });
        if kron(i, k) && a_over_b != one {
            t.push(Term {
                coef: -&(&two * &frac(&a_over_b)),
                op: None,
                lambda: one.clone(),
                atom: atom4,
            });
        }
    }
    if kron(i, l) && kron(j, k) && ab == one {
        t.push(Term {
            coef: d_coef.clone(),
            op: None,
            lambda: one.clone(),
            atom: DeltaAtom::d_delta(ainv),
        });
    }
    if kron(i, k) && kron(j, l) && a == b {
        t.push(Term {
            coef: -&d_coef,
            op: None,
            lambda: one.clone(),
            atom: DeltaAtom::d_delta(-&one),
        });
    }
    t
}

/// The coefficient of `z^{-m} w^{-n}` in the right side of the commutator
/// formula, on columns of degree at most `depth`.
#[allow(clippy::too_many_arguments)]
pub fn thm215_rhs_matrix(
    cache: &mut ModeCache,
    (i, j, a, m): (usize, usize, &Scalar, i64),
    (k, l, b, n): (usize, usize, &Scalar, i64),
    depth: u32,
    mutation: Thm215Mutation,
) -> Result<ModeOperator> {
    let window = cache.window().clone();
    let full = window.depth();
    let mut ops = Vec::new();
    for term in rhs_terms(i, j, a, k, l, b, mutation) {
        let (p, c) = mode_extract(&term.atom, &term.lambda, m, n);
        let c = &term.coef * &c;
        if c.is_zero() {
            continue;
        }
        match &term.op {
            Some(spec) => ops.push((c, cache.mode(spec, p, full)?)),
            None if p == 0 => ops.push((c, ModeOperator::identity(&window, full))),
            None => {}
        }
    }
    if ops.is_empty() {
        return Ok(ModeOperator::zero(&window, depth, m + n));
    }
    let refs: Vec<(Scalar, &ModeOperator)> = ops.iter().map(|(c, u)| (c.clone(), u)).collect();
    Ok(ModeOperator::lin_comb(&refs).restrict(depth))
}

fn mismatch(context: String, d: super::EntryDifference) -> Mismatch {
    Mismatch {
        context,
        location: format!("row {} column {}", d.row, d.column),
        lhs: d.lhs.to_string(),
        rhs: d.rhs.to_string(),
    }
}

/// Compares both sides of the commutator formula for every index tuple and
/// all modes `|m|, |n| ≤ window`, on columns of degree at most `depth − window`.
pub fn verify_thm215(cfg: &Thm215Config) -> Result<CheckReport> {
    let w = cfg.window as i64;
    let fw: Arc<FockWindow> = FockWindow::new(cfg.nu, cfg.depth, 2 * cfg.window, cfg.cocycle);
    let mut cache = ModeCache::new(fw);
    let dom = cfg.depth.saturating_sub(cfg.window);
    let mut report = CheckReport::new(format!("commutator formula a={} b={}", cfg.a, cfg.b));
    let nu = cfg.nu;
    for i in 0..nu {
        for j in 0..nu {
            for k in 0..nu {
                for l in 0..nu {
                    for m in -w..=w {
                        let u = cache.mode(&VertexSpec::new(i, j, cfg.a.clone()), m, cfg.depth)?;
                        for n in -w..=w {
                            let v =
                                cache.mode(&VertexSpec::new(k, l, cfg.b.clone()), n, cfg.depth)?;
                            let lhs = commutator_matrix(&u, &v, dom)?;
                            let rhs = thm215_rhs_matrix(
                                &mut cache,
                                (i, j, &cfg.a, m),
                                (k, l, &cfg.b, n),
                                dom,
                                cfg.mutation,
                            )?;
                            let diff = lhs.first_difference(&rhs, dom);
                            report.record(diff.is_none(), || {
                                let ctx = format!(
                                    "i={} j={} k={} l={} m={} n={}",
                                    i + 1,
                                    j + 1,
                                    k + 1,
                                    l + 1,
                                    m,
                                    n
                                );
                                mismatch(ctx, diff.clone().unwrap())
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `x_ji(a⁻¹, n) = −(−1)^n a^n x_ij(a, n)` for all colors and `|n| ≤ window`.
pub fn verify_symmetry_25(nu: usize, a: &Scalar, depth: u32, window: u32) -> Result<CheckReport> {
    let fw = FockWindow::new(nu, depth, window, Cocycle::standard());
    let mut cache = ModeCache::new(fw);
    let ainv = a.inv().ok_or(crate::Error::ZeroScale)?;
    let w = window as i64;
    let mut report = CheckReport::new(format!("swap symmetry a={}", a));
    for i in 0..nu {
        for j in 0..nu {
            for n in -w..=w {
                let lhs = cache.mode(&VertexSpec::new(j, i, ainv.clone()), n, depth)?;
                let sign = if n % 2 == 0 { -1 } else { 1 };
                let rhs = cache
                    .mode(&VertexSpec::new(i, j, a.clone()), n, depth)?
                    .scale(&(&Scalar::int(sign) * &a.pow(n)));
                let diff = lhs.first_difference(&rhs, depth);
                report.record(diff.is_none(), || {
                    mismatch(
                        format!("i={} j={} n={}", i + 1, j + 1, n),
                        diff.clone().unwrap(),
                    )
                });
            }
        }
    }
    Ok(report)
}

/// Every entry of `x_ii(a, n)` is regular at `a = 1` and the limit is the
/// matching entry of `x_ii(1, n)`.
pub fn verify_limit_24(nu: usize, depth: u32, window: u32) -> Result<CheckReport> {
    let fw = FockWindow::new(nu, depth, window, Cocycle::standard());
    let mut cache = ModeCache::new(fw);
    let a = Scalar::param("a");
    let pa = Param::new("a");
    let w = window as i64;
    let mut report = CheckReport::new("limit a -> 1");
    for i in 0..nu {
        for n in -w..=w {
            let generic = cache
                .mode(&VertexSpec::new(i, i, a.clone()), n, depth)?
                .entries();
            let at_one = cache
                .mode(&VertexSpec::new(i, i, Scalar::one()), n, depth)?
                .entries();
            let keys: std::collections::BTreeSet<_> = generic.keys().chain(at_one.keys()).collect();
            for key in keys {
                let g = generic.get(key).cloned().unwrap_or_else(Scalar::zero);
                let want = at_one.get(key).cloned().unwrap_or_else(Scalar::zero);
                let got = g.limit_at(pa, &Cyclo::one());
                let ok = matches!(&got, Ok(x) if *x == want);
                report.record(ok, || Mismatch {
                    context: format!("i={} n={}", i + 1, n),
                    location: format!("row {} column {}", key.0, key.1),
                    lhs: match &got {
                        Ok(x) => x.to_string(),
                        Err(e) => e.to_string(),
                    },
                    rhs: want.to_string(),
                });
            }
        }
    }
    Ok(report)
}
