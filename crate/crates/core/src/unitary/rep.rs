//! The representation of `û_ν(R_σ)` on the Fock space and the algebraic
//! checks that sit next to it.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CharacterSpec, GlElement, GlKey, GroupElem, UnitaryAlgebra};
use crate::report::{CheckReport, Mismatch};
use crate::scalars::Scalar;
use crate::series::{mode_extract, DeltaAtom};
use crate::vertex::{
    commutator_matrix, EntryDifference, FockWindow, ModeCache, ModeOperator, VertexSpec,
};
use crate::{Error, Mutation, Result};

/// `e_ij(m, α) ↦ ½[x_ij(α̃, m) + δ_ij δ_{m,0} (1 − δ_{α̃,1}) (1+α̃)/(1−α̃)]`, `c ↦ ½`.
pub struct Representation {
    alg: UnitaryAlgebra,
    cache: ModeCache,
    mutation: Option<Mutation>,
    images: HashMap<GlKey, ModeOperator>,
}

impl Representation {
    pub fn new(
        alg: UnitaryAlgebra,
        window: Arc<FockWindow>,
        mutation: Option<Mutation>,
    ) -> Representation {
        Representation {
            alg,
            cache: ModeCache::new(window),
            mutation,
            images: HashMap::new(),
        }
    }

    pub fn algebra(&self) -> &UnitaryAlgebra {
        &self.alg
    }

    pub fn fock_window(&self) -> &Arc<FockWindow> {
        self.cache.window()
    }

    /// The image of `e_ij(m, α)` for `key = (i, j, m, α)`.
    pub fn rho_e(&mut self, key: &GlKey) -> Result<ModeOperator> {
        if let Some(op) = self.images.get(key) {
            return Ok(op.clone());
        }
        let fw = self.cache.window().clone();
        let depth = fw.depth();
        let a = self.alg.character().sigma(&key.alpha);
        let x = self
            .cache
            .mode(&VertexSpec::new(key.i, key.j, a.clone()), key.m, depth)?;
        let half = Scalar::frac(1, 2);
        let mut op = x.scale(&half);
        if key.i == key.j
            && key.m == 0
            && !a.is_one()
            && self.mutation != Some(Mutation::DropZeroModeDelta)
        {
            let one = Scalar::one();
            let c = &(&(&one + &a) / &(&one - &a)) * &half;
            op = op.add(&ModeOperator::scalar(&fw, depth, c));
        }
        self.images.insert(key.clone(), op.clone());
        Ok(op)
    }

    /// `rho(X)` for a unitary `X` whose matrix part has a single mode `m`.
    pub fn rho(&mut self, x: &GlElement) -> Result<ModeOperator> {
        let fw = self.cache.window().clone();
        let depth = fw.depth();
        let expansion = self.alg.e_expansion(x)?;
        if let Some(first) = expansion.first() {
            if expansion.iter().any(|(k, _)| k.m != first.0.m) {
                return Err(Error::Invalid(
                    "rho is applied to mode-homogeneous elements only".into(),
                ));
            }
        }
        let mut ops = Vec::with_capacity(expansion.len() + 1);
        for (k, c) in &expansion {
            ops.push((c.clone(), self.rho_e(k)?));
        }
        let shift = expansion.first().map_or(0, |(k, _)| k.m);
        ops.push((
            x.central() * &Scalar::frac(1, 2),
            ModeOperator::identity(&fw, depth),
        ));
        let refs: Vec<(Scalar, &ModeOperator)> = ops.iter().map(|(c, u)| (c.clone(), u)).collect();
        let out = ModeOperator::lin_comb(&refs);
        Ok(if out.is_zero() {
            ModeOperator::zero(&fw, depth, shift)
        } else {
            out
        })
    }
}

/// Settings for the homomorphism check.
#[derive(Clone, Debug)]
pub struct RhoConfig {
    pub nu: usize,
    pub chi: CharacterSpec,
    pub depth: u32,
    pub window: u32,
    /// `Z` factors of `G` range over `-span..=span`.
    pub span: i64,
    pub mutation: Option<Mutation>,
}

impl RhoConfig {
    pub fn new(nu: usize, chi: CharacterSpec, depth: u32, window: u32) -> RhoConfig {
        RhoConfig {
            nu,
            chi,
            depth,
            window,
            span: 1,
            mutation: None,
        }
    }
}

fn entry_mismatch(context: String, d: EntryDifference) -> Mismatch {
    Mismatch {
        context,
        location: format!("row {} column {}", d.row, d.column),
        lhs: d.lhs.to_string(),
        rhs: d.rhs.to_string(),
    }
}

fn key_label(k: &GlKey) -> String {
    format!("e{}{}({},{:?})", k.i + 1, k.j + 1, k.m, k.alpha)
}

/// All generator keys `(i, j, m, α)` with `|m| ≤ window`.
fn generator_keys(nu: usize, chi: &CharacterSpec, window: i64, span: i64) -> Vec<GlKey> {
    let elems = chi.elements(span);
    let mut out = Vec::new();
    for i in 0..nu {
        for j in 0..nu {
            for m in -window..=window {
                for a in &elems {
                    out.push(GlKey::new(i, j, m, a.clone()));
                }
            }
        }
    }
    out
}

/// Checks `rho([u, v]) = [rho(u), rho(v)]` for all generator pairs, the
/// spanning relation `e_ji(m,−α) = −(−α̃)^m e_ij(m,α)` on images, and the
/// value of `c`.
pub fn verify_rho_hom(cfg: &RhoConfig) -> Result<CheckReport> {
    let alg = UnitaryAlgebra::new(cfg.nu, cfg.chi.clone());
    let fw = FockWindow::new(
        cfg.nu,
        cfg.depth,
        2 * cfg.window,
        Mutation::cocycle(cfg.mutation),
    );
    let mut rep = Representation::new(alg.clone(), fw, cfg.mutation);
    let dom = cfg.depth.saturating_sub(cfg.window);
    let w = cfg.window as i64;
    let keys = generator_keys(cfg.nu, &cfg.chi, w, cfg.span);
    let mut report = CheckReport::new(format!("representation map G={}", cfg.chi));

    for k in &keys {
        let lhs = rep.rho_e(&GlKey::new(k.j, k.i, k.m, cfg.chi.neg(&k.alpha)))?;
        let s = -&(-&cfg.chi.sigma(&k.alpha)).pow(k.m);
        let rhs = rep.rho_e(k)?.scale(&s);
        let diff = lhs.first_difference(&rhs, cfg.depth);
        report.record(diff.is_none(), || {
            entry_mismatch(
                format!("spanning relation at {}", key_label(k)),
                diff.clone().unwrap(),
            )
        });
    }

    let gens: Vec<(GlKey, GlElement)> = keys
        .iter()
        .map(|k| (k.clone(), alg.make_e(k.i, k.j, k.m, &k.alpha)))
        .collect();
    for (ku, u) in &gens {
        let ru = rep.rho(u)?;
        for (kv, v) in &gens {
            let rv = rep.rho(v)?;
            let lhs = commutator_matrix(&ru, &rv, dom)?;
            let rhs = rep.rho(&alg.bracket(u, v))?.restrict(dom);
            let diff = lhs.first_difference(&rhs, dom);
            report.record(diff.is_none(), || {
                entry_mismatch(
                    format!("[{}, {}]", key_label(ku), key_label(kv)),
                    diff.clone().unwrap(),
                )
            });
        }
    }

    if cfg.nu >= 2 && cfg.window >= 1 {
        let zero = cfg.chi.zero();
        let u = alg.make_e(0, 1, 1, &zero);
        let v = alg.make_e(1, 0, -1, &zero);
        let br = alg.bracket(&u, &v);
        let c = br.central().clone();
        let half = Scalar::frac(1, 2);
        let image = rep.rho(&GlElement::central_element(c.clone()))?;
        let want = ModeOperator::scalar(rep.fock_window(), cfg.depth, &c * &half);
        let diff = image.first_difference(&want, cfg.depth);
        report.record(diff.is_none(), || {
            entry_mismatch(
                "central term of [e12(1,0), e21(-1,0)]".into(),
                diff.clone().unwrap(),
            )
        });
        report.note(format!(
            "[e12(1,0), e21(-1,0)] has central coefficient {} and acts by {}",
            c,
            &c * &half
        ));
    }
    Ok(report)
}

/// One summand `coef · e_{pq}(γ, λz) · atom(w/z)`, or `coef · c · atom(w/z)`.
struct GenTerm {
    coef: Scalar,
    op: Option<(usize, usize, GroupElem)>,
    lambda: Scalar,
    atom: DeltaAtom,
}

fn prop31_terms(
    chi: &CharacterSpec,
    (i, j, alpha): (usize, usize, &[i64]),
    (k, l, beta): (usize, usize, &[i64]),
) -> Vec<GenTerm> {
    let one = Scalar::one();
    let at = chi.sigma(alpha);
    let bt = chi.sigma(beta);
    let ainv = at.inv().expect("character values are units");
    let binv = bt.inv().expect("character values are units");
    let sum = chi.add(alpha, beta);
    let diff = chi.add(alpha, &chi.neg(beta));
    let mut t = Vec::new();
    if j == k {
        t.push(GenTerm {
            coef: one.clone(),
            op: Some((i, l, sum.clone())),
            lambda: one.clone(),
            atom: DeltaAtom::delta(ainv.clone()),
        });
    }
    if i == l {
        t.push(GenTerm {
            coef: -&one,
            op: Some((k, j, sum)),
            lambda: binv,
            atom: DeltaAtom::delta(bt.clone()),
        });
    }
    if i == k {
        t.push(GenTerm {
            coef: one.clone(),
            op: Some((l, j, diff.clone())),
            lambda: bt.clone(),
            atom: DeltaAtom::delta(-&one),
        });
    }
    if j == l {
        t.push(GenTerm {
            coef: -&one,
            op: Some((i, k, diff)),
            lambda: one.clone(),
            atom: DeltaAtom::delta(-&(&bt * &ainv)),
        });
    }
    if i == l && j == k && (&at * &bt).is_one() {
        t.push(GenTerm {
            coef: Scalar::int(2),
            op: None,
            lambda: one.clone(),
            atom: DeltaAtom::d_delta(ainv),
        });
    }
    if i == k && j == l && at == bt {
        t.push(GenTerm {
            coef: Scalar::int(-2),
            op: None,
            lambda: one.clone(),
            atom: DeltaAtom::d_delta(-&one),
        });
    }
    t
}

/// The coefficient of `z^{−m} w^{−n}` in the generating-series form of the
/// bracket, written back as an element of `û_ν`.
pub fn prop31_coefficient(
    alg: &UnitaryAlgebra,
    (i, j, m, alpha): (usize, usize, i64, &[i64]),
    (k, l, n, beta): (usize, usize, i64, &[i64]),
) -> GlElement {
    let mut out = GlElement::zero();
    for term in prop31_terms(alg.character(), (i, j, alpha), (k, l, beta)) {
        let (p, c) = mode_extract(&term.atom, &term.lambda, m, n);
        let c = &term.coef * &c;
        match term.op {
            Some((a, b, g)) => out = out.add(&alg.make_e(a, b, p, &g).scale(&c)),
            None if p == 0 => out.add_central(c),
            None => {}
        }
    }
    out
}

/// Compares the mode-level generating identity with the direct bracket of
/// `e_ij(m,α)` and `e_kl(n,β)` for all colors, `|m|, |n| ≤ window` and `α, β`.
pub fn verify_prop31(nu: usize, chi: &CharacterSpec, window: i64, span: i64) -> CheckReport {
    let alg = UnitaryAlgebra::new(nu, chi.clone());
    let keys = generator_keys(nu, chi, window, span);
    let mut report = CheckReport::new(format!("generating bracket G={}", chi));
    for u in &keys {
        for v in &keys {
            let direct = alg.bracket(
                &alg.make_e(u.i, u.j, u.m, &u.alpha),
                &alg.make_e(v.i, v.j, v.m, &v.alpha),
            );
            let series =
                prop31_coefficient(&alg, (u.i, u.j, u.m, &u.alpha), (v.i, v.j, v.m, &v.alpha));
            report.record(direct == series, || Mismatch {
                context: format!("[{}, {}]", key_label(u), key_label(v)),
                location: "bracket".into(),
                lhs: direct.to_string(),
                rhs: series.to_string(),
            });
        }
    }
    report
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> Scalar {
    let re = Scalar::int(rng.gen_range(-3..=3));
    let im = &Scalar::int(rng.gen_range(-3..=3)) * &Scalar::zeta(4, 1);
    let c = &re + &im;
    if c.is_zero() {
        Scalar::one()
    } else {
        c
    }
}

fn random_key(rng: &mut ChaCha8Rng, nu: usize, elems: &[GroupElem], window: i64) -> GlKey {
    GlKey::new(
        rng.gen_range(0..nu),
        rng.gen_range(0..nu),
        rng.gen_range(-window..=window),
        elems[rng.gen_range(0..elems.len())].clone(),
    )
}

fn element_mismatch(context: String, lhs: &GlElement, rhs: &GlElement) -> Mismatch {
    Mismatch {
        context,
        location: "element".into(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

/// Seeded structure checks of the bracket and of `τ`.
///
/// * Jacobi identity and skew-symmetry on `triples` random monomial triples.
/// * `e_ji(m,−α) = −(−α̃)^m e_ij(m,α)` and unitarity of each `e_ij(m,α)`.
/// * Closure of unitary elements under the bracket.
/// * `τ² = id` and `τ[u,v] = −[τu, τv]` (only when `σ(G)` lies on the unit circle).
pub fn verify_structure(
    nu: usize,
    chi: &CharacterSpec,
    triples: usize,
    seed: u64,
    mutation: Option<Mutation>,
) -> Result<CheckReport> {
    let alg = UnitaryAlgebra::new(nu, chi.clone());
    let elems = chi.elements(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new(format!("bracket structure G={}", chi));
    let w = 3;

    for _ in 0..triples {
        let [x, y, z] = [(); 3].map(|_| {
            let k = random_key(&mut rng, nu, &elems, w);
            GlElement::monomial(k, random_coefficient(&mut rng))
        });
        let jac = alg
            .bracket(&x, &alg.bracket(&y, &z))
            .add(&alg.bracket(&y, &alg.bracket(&z, &x)))
            .add(&alg.bracket(&z, &alg.bracket(&x, &y)));
        report.record(jac.is_zero(), || {
            element_mismatch(
                format!("Jacobi on {}, {}, {}", x, y, z),
                &jac,
                &GlElement::zero(),
            )
        });
        let xy = alg.bracket(&x, &y);
        let yx = alg.bracket(&y, &x).scale(&Scalar::int(-1));
        report.record(xy == yx, || {
            element_mismatch(format!("skew-symmetry on {}, {}", x, y), &xy, &yx)
        });
    }

    for i in 0..nu {
        for j in 0..nu {
            for m in -w..=w {
                for a in &elems {
                    let e = alg.make_e(i, j, m, a);
                    report.record(alg.is_unitary(&e), || {
                        element_mismatch(
                            format!("unitarity of e{}{}({},{:?})", i + 1, j + 1, m, a),
                            &e,
                            &alg.star(&e),
                        )
                    });
                    let lhs = alg.make_e(j, i, m, &chi.neg(a));
                    let rhs = e.scale(&-&(-&chi.sigma(a)).pow(m));
                    report.record(lhs == rhs, || {
                        element_mismatch(
                            format!("spanning relation at e{}{}({},{:?})", i + 1, j + 1, m, a),
                            &lhs,
                            &rhs,
                        )
                    });
                }
            }
        }
    }

    let random_unitary = |rng: &mut ChaCha8Rng| {
        let mut x = GlElement::central_element(random_coefficient(rng));
        for _ in 0..2 {
            let k = random_key(rng, nu, &elems, w);
            x = x.add(
                &alg.make_e(k.i, k.j, k.m, &k.alpha)
                    .scale(&random_coefficient(rng)),
            );
        }
        x
    };
    let check_tau = chi.on_unit_circle();
    for _ in 0..triples / 4 {
        let u = random_unitary(&mut rng);
        let v = random_unitary(&mut rng);
        let br = alg.bracket(&u, &v);
        report.record(alg.is_unitary(&br), || {
            element_mismatch(format!("closure on {}, {}", u, v), &br, &alg.star(&br))
        });
        if check_tau {
            let tu = alg.tau(&u, mutation)?;
            let tv = alg.tau(&v, mutation)?;
            let ttu = alg.tau(&tu, mutation)?;
            report.record(ttu == u, || {
                element_mismatch(format!("tau squared on {}", u), &ttu, &u)
            });
            let lhs = alg.tau(&br, mutation)?;
            let rhs = alg.bracket(&tu, &tv).scale(&Scalar::int(-1));
            report.record(lhs == rhs, || {
                element_mismatch(format!("tau on [{}, {}]", u, v), &lhs, &rhs)
            });
        }
    }
    if !check_tau {
        report.note("tau checks skipped: character values are not all roots of unity");
    }
    Ok(report)
}
