//! The derived/center split of `R_σ`, membership facts for `êu_ν`, and the
//! invariant subspace `V_ν(γ) ⊗ S(H_0^−)` for odd `|σ|`.

use std::collections::{BTreeMap, HashMap};

use super::{CharacterSpec, GlElement, GlKey, GroupElem, Representation, UnitaryAlgebra};
use crate::clifford::{decompose, w_vector, GammaLabel};
use crate::fock::{enumerate_basis, heis_act, FockBasisState, FockVector, Partition};
use crate::linalg::Echelon;
use crate::report::{CheckReport, Mismatch};
use crate::scalars::Scalar;
use crate::vertex::FockWindow;
use crate::{Error, Mutation, Result};

/// `(m, α) ∈ Λ_σ`, i.e. `m ∈ |σ|Z` and `σ(α) = 1`, with `|σ|Z = 0` when `|σ| = ∞`.
pub fn lambda_membership(
    m: i64,
    alpha: &[i64],
    chi: &CharacterSpec,
    mutation: Option<Mutation>,
) -> bool {
    if !chi.sigma(alpha).is_one() {
        return false;
    }
    if mutation == Some(Mutation::DropModeCondition) {
        return true;
    }
    match chi.order() {
        Some(n) => m % n as i64 == 0,
        None => m == 0,
    }
}

/// `t^m e^α` as `(m, α)`.
pub type Monomial = (i64, GroupElem);

/// Splits the monomials `t^m e^α`, `|m| ≤ window`, into a basis of the derived
/// algebra and a basis of the center.
pub fn derived_center_split(
    chi: &CharacterSpec,
    window: i64,
    span: i64,
) -> (Vec<Monomial>, Vec<Monomial>) {
    let mut derived = Vec::new();
    let mut center = Vec::new();
    for m in -window..=window {
        for a in chi.elements(span) {
            if lambda_membership(m, &a, chi, None) {
                center.push((m, a));
            } else {
                derived.push((m, a));
            }
        }
    }
    (derived, center)
}

/// `uv − vu` for monomials, as `(coefficient, m, α)`.
fn ring_commutator(
    alg: &UnitaryAlgebra,
    u: (i64, &[i64]),
    v: (i64, &[i64]),
) -> (Scalar, i64, GroupElem) {
    let (c1, m, a) = alg.ring_mul(u, v);
    let (c2, _, _) = alg.ring_mul(v, u);
    (&c1 - &c2, m, a)
}

/// Brute-force centrality: `t^m e^α` commutes with `t` and with every `e^{g}`
/// for the generators `g` of `G`.
fn is_central(alg: &UnitaryAlgebra, m: i64, alpha: &[i64]) -> bool {
    let chi = alg.character();
    let t_commutes = ring_commutator(alg, (m, alpha), (1, &chi.zero()))
        .0
        .is_zero();
    t_commutes
        && (0..chi.orders().len()).all(|g| {
            let mut gen = chi.zero();
            gen[g] = 1;
            ring_commutator(alg, (m, alpha), (0, &gen)).0.is_zero()
        })
}

/// An explicit commutator equal to a nonzero multiple of `t^m e^α`, if one of
/// the two standard shapes applies.
fn derived_witness(alg: &UnitaryAlgebra, m: i64, alpha: &[i64]) -> Option<Scalar> {
    let chi = alg.character();
    let (c, _, _) = ring_commutator(alg, (m - 1, alpha), (1, &chi.zero()));
    if !c.is_zero() {
        return Some(c);
    }
    for g in 0..chi.orders().len() {
        let mut gen = chi.zero();
        gen[g] = 1;
        let rest = chi.add(alpha, &chi.neg(&gen));
        let (c, _, _) = ring_commutator(alg, (0, &gen), (m, &rest));
        if !c.is_zero() {
            return Some(c);
        }
    }
    None
}

/// Checks the derived/center split on `|m| ≤ window`: membership in `Λ_σ`
/// agrees with brute-force centrality, every other monomial is an explicit
/// commutator, and no commutator of two monomials has a component on `Λ_σ`.
pub fn verify_lemma41(chi: &CharacterSpec, window: i64, mutation: Option<Mutation>) -> CheckReport {
    let alg = UnitaryAlgebra::new(1, chi.clone());
    let span = 2;
    let elems = chi.elements(span);
    let mut report = CheckReport::new(format!("derived and center split G={}", chi));
    for m in -window..=window {
        for a in &elems {
            let member = lambda_membership(m, a, chi, mutation);
            let central = is_central(&alg, m, a);
            report.record(member == central, || Mismatch {
                context: format!("t^{} e^{:?}", m, a),
                location: "membership".into(),
                lhs: member.to_string(),
                rhs: central.to_string(),
            });
            if !member {
                let w = derived_witness(&alg, m, a);
                report.record(w.is_some(), || Mismatch {
                    context: format!("t^{} e^{:?}", m, a),
                    location: "derived witness".into(),
                    lhs: "none".into(),
                    rhs: "nonzero commutator".into(),
                });
            }
        }
    }
    let half = window / 2;
    for m in -half..=half {
        for n in -half..=half {
            for a in &elems {
                for b in &elems {
                    let (c, p, g) = ring_commutator(&alg, (m, a), (n, b));
                    if lambda_membership(p, &g, chi, mutation) {
                        report.record(c.is_zero(), || Mismatch {
                            context: format!("[t^{} e^{:?}, t^{} e^{:?}]", m, a, n, b),
                            location: format!("component on t^{} e^{:?}", p, g),
                            lhs: c.to_string(),
                            rhs: "0".into(),
                        });
                    }
                }
            }
        }
    }
    report
}

/// Coordinates of the matrix parts of a family of elements.
struct KeyIndex(BTreeMap<GlKey, usize>);

impl KeyIndex {
    fn build<'a>(xs: impl IntoIterator<Item = &'a GlElement>) -> KeyIndex {
        let mut map = BTreeMap::new();
        for x in xs {
            for (k, _) in x.terms() {
                let n = map.len();
                map.entry(k.clone()).or_insert(n);
            }
        }
        KeyIndex(map)
    }

    fn vector(&self, x: &GlElement) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); self.0.len()];
        for (k, c) in x.terms() {
            v[*self.0.get(k)?] = c.clone();
        }
        Some(v)
    }
}

/// The matrix parts of brackets of `{e_ij(m,α) : i ≠ j}` up to nesting depth 3,
/// kept inside the mode window, reduced to a spanning set.
fn eu_closure(alg: &UnitaryAlgebra, window: i64, span: i64) -> Vec<GlElement> {
    let nu = alg.nu();
    let chi = alg.character();
    let mut gens = Vec::new();
    for i in 0..nu {
        for j in 0..nu {
            if i == j {
                continue;
            }
            for m in -window..=window {
                for a in chi.elements(span) {
                    gens.push(alg.make_e(i, j, m, &a));
                }
            }
        }
    }
    let in_window = |x: &GlElement| x.terms().all(|(k, _)| k.m.abs() <= window);
    let mut layers = vec![gens.clone()];
    let mut all: Vec<GlElement> = gens.clone();
    for _ in 1..3 {
        let prev = layers.last().unwrap();
        let mut next = Vec::new();
        for g in &gens {
            for x in prev {
                let y = alg.bracket(g, x).noncentral();
                if !y.is_zero() && in_window(&y) {
                    next.push(y);
                }
            }
        }
        let index = KeyIndex::build(all.iter().chain(&next));
        let mut ech = Echelon::new(index.0.len());
        for x in &all {
            ech.insert(&index.vector(x).unwrap());
        }
        let fresh: Vec<GlElement> = next
            .into_iter()
            .filter(|x| ech.insert(&index.vector(x).unwrap()))
            .collect();
        all.extend(fresh.iter().cloned());
        layers.push(fresh);
    }
    all
}

/// Checks that `e_ii(m,α) − e_jj(m,α)` and `e_ii(n,β)` with `(n,β) ∉ Λ_σ`
/// lie in the bracket closure of the off-diagonal generators (matrix parts,
/// `|m| ≤ window`), and that `Σ_i e_ii(n,β)` with `(n,β) ∈ Λ_σ` does not.
pub fn verify_eu_membership(nu: usize, chi: &CharacterSpec, window: i64) -> CheckReport {
    let alg = UnitaryAlgebra::new(nu, chi.clone());
    let span = 1;
    let closure = eu_closure(&alg, window, span);
    let mut report = CheckReport::new(format!("elementary subalgebra membership G={}", chi));
    let mut targets: Vec<(String, GlElement, bool)> = Vec::new();
    for m in -window..=window {
        for a in chi.elements(span) {
            let member = lambda_membership(m, &a, chi, None);
            for i in 0..nu {
                let eii = alg.make_e(i, i, m, &a);
                if i + 1 < nu {
                    let d = eii.sub(&alg.make_e(i + 1, i + 1, m, &a));
                    targets.push((
                        format!(
                            "e{0}{0}({1},{2:?}) - e{3}{3}({1},{2:?})",
                            i + 1,
                            m,
                            a,
                            i + 2
                        ),
                        d,
                        true,
                    ));
                }
                if !member {
                    targets.push((format!("e{0}{0}({1},{2:?})", i + 1, m, a), eii, true));
                }
            }
            if member {
                let trace = (0..nu).fold(GlElement::zero(), |acc, i| {
                    acc.add(&alg.make_e(i, i, m, &a))
                });
                if !trace.is_zero() {
                    targets.push((format!("trace at ({},{:?})", m, a), trace, false));
                }
            }
        }
    }
    let index = KeyIndex::build(closure.iter().chain(targets.iter().map(|t| &t.1)));
    let mut ech = Echelon::new(index.0.len());
    for x in &closure {
        ech.insert(&index.vector(x).unwrap());
    }
    for (label, x, expected) in &targets {
        let inside = ech.contains(&index.vector(x).unwrap());
        report.record(inside == *expected, || Mismatch {
            context: label.clone(),
            location: "bracket closure".into(),
            lhs: inside.to_string(),
            rhs: expected.to_string(),
        });
    }
    report.note(format!("closure spans {} dimensions", ech.rank()));
    report
}

/// Settings for the invariant-subspace check.
#[derive(Clone, Debug)]
pub struct EuConfig {
    pub nu: usize,
    pub chi: CharacterSpec,
    pub gamma: GammaLabel,
    pub depth: u32,
    pub window: u32,
    pub mutation: Option<Mutation>,
}

impl EuConfig {
    pub fn new(
        nu: usize,
        chi: CharacterSpec,
        gamma: GammaLabel,
        depth: u32,
        window: u32,
    ) -> EuConfig {
        EuConfig {
            nu,
            chi,
            gamma,
            depth,
            window,
            mutation: None,
        }
    }
}

struct StateIndex {
    map: HashMap<FockBasisState, usize>,
    width: usize,
}

impl StateIndex {
    fn new(nu: usize, depth: u32) -> StateIndex {
        let basis = enumerate_basis(nu, depth);
        let map: HashMap<FockBasisState, usize> = basis
            .states()
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, s)| (s, k))
            .collect();
        StateIndex {
            width: map.len(),
            map,
        }
    }

    fn vector(&self, v: &FockVector) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.width];
        for (s, c) in v.terms() {
            out[self.map[s]] = c.clone();
        }
        out
    }
}

/// Creation modes `k` (odd, positive) and the linear forms spanning the part
/// of `H_0^−` at `ε(−k)`: every `ε_i(−k)` when `k ∉ NZ`, only differences otherwise.
fn h0_forms(nu: usize, k: u32, n: Option<u64>) -> Vec<Vec<(usize, Scalar)>> {
    let in_nz = match n {
        Some(n) => (k as u64).is_multiple_of(n),
        None => false,
    };
    if in_nz {
        (0..nu - 1)
            .map(|i| vec![(i, Scalar::one()), (i + 1, Scalar::int(-1))])
            .collect()
    } else {
        (0..nu).map(|i| vec![(i, Scalar::one())]).collect()
    }
}

/// A spanning set of `S(H_0^−)` in degree `d` applied to `v`, as
/// monomials in the forms with non-increasing mode.
fn h0_monomials(
    nu: usize,
    v: &FockVector,
    d: u32,
    max_mode: u32,
    n: Option<u64>,
) -> Vec<FockVector> {
    if d == 0 {
        return vec![v.clone()];
    }
    let mut out = Vec::new();
    let mut k = max_mode.min(d);
    if k.is_multiple_of(2) {
        k -= 1;
    }
    while k >= 1 {
        for form in h0_forms(nu, k, n) {
            let mut w = FockVector::zero();
            for (c, x) in &form {
                w = w.add(&heis_act(*c, -(k as i64), v).scale(x));
            }
            out.extend(h0_monomials(nu, &w, d - k, k, n));
        }
        if k < 2 {
            break;
        }
        k -= 2;
    }
    out
}

/// Homogeneous spanning vectors of `V_ν(γ) ⊗ S(H_0^−)` in degrees `≤ depth`.
fn v0_spanning_set(
    nu: usize,
    gamma: &GammaLabel,
    depth: u32,
    n: Option<u64>,
) -> Result<Vec<(u32, FockVector)>> {
    let comps = decompose(nu);
    let signs = comps
        .into_iter()
        .find(|(g, _)| g == gamma)
        .map(|(_, s)| s)
        .ok_or_else(|| {
            Error::Invalid(format!(
                "no component with label {:?} for rank {}",
                gamma.0, nu
            ))
        })?;
    let mut out = Vec::new();
    for rho in &signs {
        let w = w_vector(rho);
        let mut base = FockVector::zero();
        for (c, x) in w.terms() {
            base.add_term(FockBasisState::new(*c, Partition::empty()), x.clone());
        }
        for d in 0..=depth {
            for v in h0_monomials(nu, &base, d, d, n) {
                out.push((d, v));
            }
        }
    }
    Ok(out)
}

fn degree_of(v: &FockVector) -> u32 {
    v.max_degree().unwrap_or(0)
}

/// Invariance and cyclicity of the truncated `V_ν(γ) ⊗ S(H_0^−)` under the
/// off-diagonal generators, plus a generator outside `êu` that leaves it.
pub fn eu_invariance_check(cfg: &EuConfig) -> Result<CheckReport> {
    let n = cfg.chi.order();
    if let Some(n) = n {
        if n % 2 == 0 {
            return Err(Error::Invalid(format!("|sigma| = {} is even", n)));
        }
    } else {
        return Err(Error::Invalid("|sigma| is infinite".into()));
    }
    let nu = cfg.nu;
    let depth = cfg.depth;
    let w = cfg.window as i64;
    let mode_window = cfg.window.max(n.unwrap() as u32);
    let alg = UnitaryAlgebra::new(nu, cfg.chi.clone());
    let fw = FockWindow::new(nu, depth, mode_window, Mutation::cocycle(cfg.mutation));
    let mut rep = Representation::new(alg.clone(), fw, cfg.mutation);
    let index = StateIndex::new(nu, depth);
    let mut report = CheckReport::new(format!(
        "invariant subspace gamma={:?} G={}",
        cfg.gamma.0, cfg.chi
    ));

    let spanning = v0_spanning_set(nu, &cfg.gamma, depth, n)?;
    let mut v0 = Echelon::new(index.width);
    let mut basis: Vec<(u32, FockVector)> = Vec::new();
    for (d, v) in spanning {
        if v0.insert(&index.vector(&v)) {
            basis.push((d, v));
        }
    }
    report.note(format!(
        "subspace dimension {} up to degree {}",
        v0.rank(),
        depth
    ));

    let mut gens = Vec::new();
    for i in 0..nu {
        for j in 0..nu {
            if i == j {
                continue;
            }
            for m in -w..=w {
                for a in cfg.chi.elements(1) {
                    let k = GlKey::new(i, j, m, a.clone());
                    gens.push((k, rep.rho(&alg.make_e(i, j, m, &a))?));
                }
            }
        }
    }

    for (k, op) in &gens {
        for (d, v) in &basis {
            if *d as i64 - k.m > depth as i64 {
                continue;
            }
            let image = op.apply(v)?;
            let inside = v0.contains(&index.vector(&image));
            report.record(inside, || Mismatch {
                context: format!(
                    "e{}{}({},{:?}) on a degree {} vector",
                    k.i + 1,
                    k.j + 1,
                    k.m,
                    k.alpha,
                    d
                ),
                location: "invariance".into(),
                lhs: image.to_string(),
                rhs: "inside the subspace".into(),
            });
        }
    }

    let start = basis
        .first()
        .map(|(_, v)| v.clone())
        .unwrap_or_else(FockVector::zero);
    let mut orbit = Echelon::new(index.width);
    orbit.insert(&index.vector(&start));
    let mut queue = vec![start.clone()];
    while let Some(v) = queue.pop() {
        let d = degree_of(&v) as i64;
        for (k, op) in &gens {
            if d - k.m > depth as i64 {
                continue;
            }
            let image = op.apply(&v)?;
            if !image.is_zero() && orbit.insert(&index.vector(&image)) {
                queue.push(image);
            }
        }
    }
    let (got, want) = (orbit.rank(), v0.rank());
    report.record(got == want, || Mismatch {
        context: "orbit of a degree 0 vector".into(),
        location: "cyclicity".into(),
        lhs: format!("spanned dimension {}", got),
        rhs: format!("subspace dimension {}", want),
    });

    let n = n.unwrap() as i64;
    if n > 1 && (n as u32) <= depth {
        let outside = rep.rho(&alg.make_e(0, 0, -n, &cfg.chi.zero()))?;
        let image = outside.apply(&start)?;
        let leaves = !v0.contains(&index.vector(&image));
        report.record(leaves, || Mismatch {
            context: format!("e11({},0) on a degree 0 vector", -n),
            location: "non-invariance witness".into(),
            lhs: image.to_string(),
            rhs: "outside the subspace".into(),
        });
    }
    Ok(report)
}
