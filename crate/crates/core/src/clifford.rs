//! `C[Γ/2Γ]` as a Clifford algebra, the basis `w(ρ)` and its simple
//! components under the even subalgebra `C[Q̄]`.

use std::collections::BTreeMap;
use std::fmt;

use crate::lattice::{group_mul, Cocycle, Coset, GroupAlgebraElement, LatticeVector};
use crate::linalg::{determinant, inverse, rank};
use crate::report::{CheckReport, Mismatch};
use crate::scalars::Scalar;

/// `Σ c_S ψ_S` where `ψ_S = ψ_{s_1}⋯ψ_{s_k}` for `s_1 < ⋯ < s_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElement {
    nu: usize,
    terms: BTreeMap<u16, Scalar>,
}

impl CliffordElement {
    pub fn zero(nu: usize) -> CliffordElement {
        CliffordElement {
            nu,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(nu: usize, c: Scalar) -> CliffordElement {
        CliffordElement::term(nu, 0, c)
    }

    /// `ψ_j` for a 0-based index.
    pub fn generator(nu: usize, j: usize) -> CliffordElement {
        CliffordElement::term(nu, 1 << j, Scalar::one())
    }

    pub fn term(nu: usize, subset: u16, c: Scalar) -> CliffordElement {
        let mut out = CliffordElement::zero(nu);
        out.add_term(subset, c);
        out
    }

    pub fn add_term(&mut self, subset: u16, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(subset).or_insert_with(Scalar::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&subset);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u16, &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &CliffordElement) -> CliffordElement {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(*s, c.clone());
        }
        out
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (s, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", c)?;
            for j in 0..self.nu {
                if s >> j & 1 == 1 {
                    write!(f, "psi{}", j + 1)?;
                }
            }
        }
        Ok(())
    }
}

/// Sign of `ψ_S ψ_T` relative to `ψ_{S△T}`.
fn merge_sign(s: u16, t: u16) -> i64 {
    let mut swaps = 0;
    for j in 0..16 {
        if t >> j & 1 == 1 {
            swaps += (s >> (j + 1)).count_ones();
        }
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn clifford_mul(u: &CliffordElement, v: &CliffordElement) -> CliffordElement {
    assert_eq!(u.nu, v.nu);
    let mut out = CliffordElement::zero(u.nu);
    for (s, x) in &u.terms {
        for (t, y) in &v.terms {
            let c = x * y;
            out.add_term(s ^ t, if merge_sign(*s, *t) == 1 { c } else { -c });
        }
    }
    out
}

/// The sign `κ(γ)` with `e^{ε̄_{j_1}}⋯e^{ε̄_{j_k}} = κ(γ) e^γ` for `j_1 < ⋯ < j_k`.
fn ordered_product_sign(nu: usize, c: Coset, eps: &Cocycle) -> i64 {
    let mut acc = GroupAlgebraElement::one(nu);
    for j in 0..nu {
        if c.bit(j) {
            acc = group_mul(&acc, &GroupAlgebraElement::generator(nu, j), eps);
        }
    }
    if acc.coefficient(c) == Scalar::one() {
        1
    } else {
        -1
    }
}

/// The image of `x ∈ C[Γ/2Γ]` under `e^{ε̄_j} ↦ ψ_j`.
pub fn to_clifford(x: &GroupAlgebraElement, eps: &Cocycle) -> CliffordElement {
    let nu = x.rank();
    let mut out = CliffordElement::zero(nu);
    for (c, v) in x.terms() {
        let k = ordered_product_sign(nu, *c, eps);
        out.add_term(c.0, if k == 1 { v.clone() } else { -v });
    }
    out
}

/// Checks that `e^{ε̄_j} ↦ ψ_j` is an algebra isomorphism `C[Γ/2Γ] → Cl(ν)`.
pub fn iso_check(nu: usize) -> CheckReport {
    iso_check_with(nu, &Cocycle::standard())
}

/// [`iso_check`] with the group algebra built from `eps`.
pub fn iso_check_with(nu: usize, eps: &Cocycle) -> CheckReport {
    let eps = *eps;
    let mut report = CheckReport::new(format!("Clifford isomorphism nu={}", nu));
    for j in 0..nu {
        for k in 0..nu {
            let (a, b) = (
                GroupAlgebraElement::generator(nu, j),
                GroupAlgebraElement::generator(nu, k),
            );
            let anti = group_mul(&a, &b, &eps).add(&group_mul(&b, &a, &eps));
            let want = if j == k {
                GroupAlgebraElement::one(nu).scale(&Scalar::int(2))
            } else {
                GroupAlgebraElement::zero(nu)
            };
            report.record(anti == want, || Mismatch {
                context: format!("anticommutator j={} k={}", j + 1, k + 1),
                location: "group algebra".into(),
                lhs: anti.to_string(),
                rhs: want.to_string(),
            });
        }
    }
    // basis to signed basis, so bijective; now multiplicativity on all basis pairs
    for a in Coset::all(nu) {
        for b in Coset::all(nu) {
            let (x, y) = (
                GroupAlgebraElement::basis(nu, a),
                GroupAlgebraElement::basis(nu, b),
            );
            let lhs = to_clifford(&group_mul(&x, &y, &eps), &eps);
            let rhs = clifford_mul(&to_clifford(&x, &eps), &to_clifford(&y, &eps));
            report.record(lhs == rhs, || Mismatch {
                context: format!("product e^{} e^{}", a, b),
                location: "Clifford image".into(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }
    report
}

/// A sign vector `(ρ_1, …, ρ_ν)`, stored as `±1`.
pub type Signs = Vec<i8>;

/// All sign vectors of length `ν`; bit `k` of the index set means `ρ_{k+1} = −1`.
pub fn all_signs(nu: usize) -> Vec<Signs> {
    (0..1u32 << nu)
        .map(|m| {
            (0..nu)
                .map(|k| if m >> k & 1 == 1 { -1 } else { 1 })
                .collect()
        })
        .collect()
}

/// `w(ρ) = Π_j w_j(ρ_j)` expanded in the basis `e^γ`.
pub fn w_vector(rho: &[i8]) -> GroupAlgebraElement {
    let nu = rho.len();
    let eps = Cocycle::standard();
    let mut acc = GroupAlgebraElement::one(nu);
    for (j, &r) in rho.iter().enumerate() {
        // an even 0-based j is an odd 1-based index
        let c = if j % 2 == 0 {
            &Scalar::i() * &Scalar::int(r as i64)
        } else {
            Scalar::int(r as i64)
        };
        let mut f = GroupAlgebraElement::one(nu);
        f.add_term(Coset(1 << j), c);
        acc = group_mul(&acc, &f, &eps);
    }
    acc
}

/// Rows are `w(ρ)` for `ρ` in [`all_signs`] order, columns the cosets in increasing order.
pub fn w_basis_matrix(nu: usize) -> Vec<Vec<Scalar>> {
    all_signs(nu)
        .iter()
        .map(|rho| {
            let w = w_vector(rho);
            Coset::all(nu).map(|c| w.coefficient(c)).collect()
        })
        .collect()
}

pub fn w_basis_determinant(nu: usize) -> Scalar {
    determinant(&w_basis_matrix(nu))
}

/// The closed form for `e^{ε̄_j} w(ρ)`, with `j` 1-based.
pub fn lemma34_apply(j: usize, rho: &[i8]) -> (Scalar, Signs) {
    assert!(j >= 1 && j <= rho.len());
    let mut out = rho.to_vec();
    let rj = Scalar::int(rho[j - 1] as i64);
    if j % 2 == 1 {
        for r in out.iter_mut().take(j) {
            *r = -*r;
        }
        (&Scalar::i() * &rj, out)
    } else {
        for r in out.iter_mut().take(j - 1) {
            *r = -*r;
        }
        (rj, out)
    }
}

/// Applies `e^α` (any lattice vector) by left multiplication.
pub fn lattice_mul(
    alpha: &LatticeVector,
    x: &GroupAlgebraElement,
    eps: &Cocycle,
) -> GroupAlgebraElement {
    let nu = x.rank();
    let shift = crate::lattice::coset_reduce(alpha);
    let mut out = GroupAlgebraElement::zero(nu);
    for (c, v) in x.terms() {
        let s = eps.eval(alpha, &c.representative(nu));
        out.add_term(*c + shift, if s == 1 { v.clone() } else { -v });
    }
    out
}

/// Compares the closed form with direct multiplication for every `j` and `ρ`.
pub fn verify_lemma34(nu: usize) -> CheckReport {
    let eps = Cocycle::standard();
    let mut report = CheckReport::new(format!("generator action on w-basis nu={}", nu));
    for rho in all_signs(nu) {
        let w = w_vector(&rho);
        for j in 1..=nu {
            let direct = group_mul(&GroupAlgebraElement::generator(nu, j - 1), &w, &eps);
            let (c, r2) = lemma34_apply(j, &rho);
            let closed = w_vector(&r2).scale(&c);
            report.record(direct == closed, || Mismatch {
                context: format!("j={} rho={:?}", j, rho),
                location: "group algebra".into(),
                lhs: direct.to_string(),
                rhs: closed.to_string(),
            });
        }
    }
    report
}

/// The label `γ` of the component containing `w(ρ)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaLabel(pub Vec<i8>);

impl fmt::Display for GammaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self
            .0
            .iter()
            .map(|&g| if g > 0 { "+" } else { "-" })
            .collect();
        write!(f, "({})", s.join(""))
    }
}

pub fn component_label(rho: &[i8]) -> GammaLabel {
    let nu = rho.len();
    let d = nu / 2;
    let mut g = vec![rho[0]];
    if nu % 2 == 1 {
        for j in 1..=d {
            g.push(rho[2 * j - 1] * rho[2 * j]);
        }
    } else {
        for j in 1..d {
            g.push(rho[2 * j - 1] * rho[2 * j]);
        }
        if d >= 1 {
            g.push(rho[2 * d - 1]);
        }
    }
    GammaLabel(g)
}

/// All labels for rank `ν`: `2^{[ν/2]+1}` of them.
pub fn all_labels(nu: usize) -> Vec<GammaLabel> {
    let len = nu / 2 + 1;
    let mut out: Vec<GammaLabel> = all_signs(len).into_iter().map(GammaLabel).collect();
    out.sort();
    out
}

/// The components `V_ν(γ)` as lists of sign vectors spanning them.
pub fn decompose(nu: usize) -> Vec<(GammaLabel, Vec<Signs>)> {
    let mut map: BTreeMap<GammaLabel, Vec<Signs>> = BTreeMap::new();
    for rho in all_signs(nu) {
        map.entry(component_label(&rho)).or_default().push(rho);
    }
    map.into_iter().collect()
}

/// Coordinates of group algebra elements in the `w`-basis.
pub struct WCoordinates {
    nu: usize,
    inv: Vec<Vec<Scalar>>,
    index: BTreeMap<Signs, usize>,
}

impl WCoordinates {
    pub fn new(nu: usize) -> WCoordinates {
        let inv = inverse(&w_basis_matrix(nu)).expect("the w(ρ) form a basis");
        let index = all_signs(nu)
            .into_iter()
            .enumerate()
            .map(|(k, r)| (r, k))
            .collect();
        WCoordinates { nu, inv, index }
    }

    /// Returns `c` with `x = Σ c_ρ w(ρ)`, indexed like [`all_signs`].
    pub fn coords(&self, x: &GroupAlgebraElement) -> Vec<Scalar> {
        // x = Σ_ρ c_ρ row_ρ, so c = x_row · inv
        let n = 1usize << self.nu;
        let xs: Vec<Scalar> = Coset::all(self.nu).map(|c| x.coefficient(c)).collect();
        (0..n)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (k, v) in xs.iter().enumerate() {
                    if !v.is_zero() {
                        acc = &acc + &(v * &self.inv[k][r]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn index_of(&self, rho: &[i8]) -> usize {
        self.index[rho]
    }
}

/// The even elements `e^β`, `β` of even weight, as lattice vectors.
fn even_monomials(nu: usize) -> Vec<LatticeVector> {
    Coset::all(nu)
        .filter(|c| c.weight() % 2 == 0)
        .map(|c| c.representative(nu))
        .collect()
}

/// Matrix of `e^β` on the component spanned by `basis`, or `None` if it leaves the component.
fn action_matrix(
    beta: &LatticeVector,
    basis: &[Signs],
    wc: &WCoordinates,
) -> Option<Vec<Vec<Scalar>>> {
    let eps = Cocycle::standard();
    let mut cols = Vec::new();
    for rho in basis {
        let img = lattice_mul(beta, &w_vector(rho), &eps);
        let c = wc.coords(&img);
        let inside: Vec<usize> = basis.iter().map(|r| wc.index_of(r)).collect();
        if c.iter()
            .enumerate()
            .any(|(k, x)| !x.is_zero() && !inside.contains(&k))
        {
            return None;
        }
        cols.push(inside.iter().map(|&k| c[k].clone()).collect::<Vec<_>>());
    }
    Some(cols)
}

/// Irreducibility of `V_ν(γ)` under `C[Q̄]`: the action spans `End(V_ν(γ))`.
pub fn burnside_check(gamma: &GammaLabel, nu: usize) -> CheckReport {
    let wc = WCoordinates::new(nu);
    burnside_with(gamma, nu, &wc)
}

pub fn burnside_with(gamma: &GammaLabel, nu: usize, wc: &WCoordinates) -> CheckReport {
    let mut report = CheckReport::new(format!("irreducibility nu={} gamma={}", nu, gamma));
    let basis: Vec<Signs> = all_signs(nu)
        .into_iter()
        .filter(|r| component_label(r) == *gamma)
        .collect();
    let dim = basis.len();
    let mut rows = Vec::new();
    for beta in even_monomials(nu) {
        let m = action_matrix(&beta, &basis, wc);
        report.record(m.is_some(), || Mismatch {
            context: format!("e^({}) on component {}", beta, gamma),
            location: "image".into(),
            lhs: "leaves the component".into(),
            rhs: "stays inside".into(),
        });
        if let Some(m) = m {
            rows.push(m.into_iter().flatten().collect::<Vec<_>>());
        }
    }
    let r = rank(&rows);
    report.record(r == dim * dim, || Mismatch {
        context: format!("component {}", gamma),
        location: "span of the action".into(),
        lhs: r.to_string(),
        rhs: (dim * dim).to_string(),
    });
    report.note(format!("{} dim={} span={}", gamma, dim, r));
    report
}

/// The two action formulas on the `w`-basis for pairs of adjacent generators.
pub fn eigen_check_33(nu: usize, gamma: &GammaLabel) -> CheckReport {
    let eps = Cocycle::standard();
    let mut report = CheckReport::new(format!("adjacent pair action nu={} gamma={}", nu, gamma));
    for rho in all_signs(nu)
        .into_iter()
        .filter(|r| component_label(r) == *gamma)
    {
        let w = w_vector(&rho);
        for j in 1..=nu / 2 {
            let (p, q) = (2 * j - 2, 2 * j - 1);
            let alpha = &LatticeVector::basis(nu, p) - &LatticeVector::basis(nu, q);
            let lhs = lattice_mul(&alpha, &w, &eps);
            let c = &(&Scalar::i() * &Scalar::int(-1)) * &Scalar::int((rho[p] * rho[q]) as i64);
            let rhs = w.scale(&c);
            report.record(lhs == rhs, || Mismatch {
                context: format!("rho={:?} pair ({},{})", rho, p + 1, q + 1),
                location: "w-basis".into(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
            if 2 * j < nu {
                let (p, q) = (2 * j - 1, 2 * j);
                let alpha = &LatticeVector::basis(nu, p) - &LatticeVector::basis(nu, q);
                let lhs = lattice_mul(&alpha, &w, &eps);
                let mut flipped = rho.clone();
                flipped[p] = -flipped[p];
                flipped[q] = -flipped[q];
                let c = &(&Scalar::i() * &Scalar::int(-1)) * &Scalar::int((rho[p] * rho[q]) as i64);
                let rhs = w_vector(&flipped).scale(&c);
                report.record(lhs == rhs && component_label(&flipped) == *gamma, || {
                    Mismatch {
                        context: format!("rho={:?} pair ({},{})", rho, p + 1, q + 1),
                        location: "w-basis".into(),
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    }
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psi(nu: usize, j: usize) -> CliffordElement {
        CliffordElement::generator(nu, j)
    }

    #[test]
    fn clifford_examples() {
        assert_eq!(
            clifford_mul(&psi(3, 0), &psi(3, 0)),
            CliffordElement::scalar(3, Scalar::one())
        );
        let a = clifford_mul(&psi(3, 0), &psi(3, 1));
        let b = clifford_mul(&psi(3, 1), &psi(3, 0));
        assert_eq!(a.add(&b), CliffordElement::zero(3));
        let p12 = clifford_mul(&psi(3, 0), &psi(3, 1));
        let p23 = clifford_mul(&psi(3, 1), &psi(3, 2));
        assert_eq!(
            clifford_mul(&p12, &p23),
            clifford_mul(&psi(3, 0), &psi(3, 2))
        );
    }

    #[test]
    fn clifford_associative() {
        let nu = 4;
        for s in 0..16u16 {
            for t in 0..16u16 {
                for u in 0..16u16 {
                    let (x, y, z) = (
                        CliffordElement::term(nu, s, Scalar::one()),
                        CliffordElement::term(nu, t, Scalar::one()),
                        CliffordElement::term(nu, u, Scalar::one()),
                    );
                    assert_eq!(
                        clifford_mul(&clifford_mul(&x, &y), &z),
                        clifford_mul(&x, &clifford_mul(&y, &z))
                    );
                }
            }
        }
    }

    #[test]
    fn group_algebra_matches_clifford() {
        for nu in 1..=5 {
            assert!(iso_check(nu).passed(), "{}", iso_check(nu));
        }
        let eps = Cocycle::standard();
        let (e1, e2) = (
            GroupAlgebraElement::generator(2, 0),
            GroupAlgebraElement::generator(2, 1),
        );
        assert!(group_mul(&e1, &e2, &eps)
            .add(&group_mul(&e2, &e1, &eps))
            .is_zero());
        assert_eq!(group_mul(&e1, &e1, &eps), GroupAlgebraElement::one(2));
    }

    #[test]
    fn w_vectors() {
        let w = w_vector(&[1]);
        assert_eq!(w.coefficient(Coset(0)), Scalar::one());
        assert_eq!(w.coefficient(Coset(1)), Scalar::i());
        assert_eq!(w_vector(&[-1]).coefficient(Coset(1)), -Scalar::i());
        assert_eq!(w_basis_determinant(1), &Scalar::int(-2) * &Scalar::i());
        let w = w_vector(&[1, 1]);
        assert_eq!(w.terms().count(), 4);
        assert_eq!(w.coefficient(Coset(0b11)), Scalar::i());
        for nu in 1..=6 {
            assert!(!w_basis_determinant(nu).is_zero());
        }
    }

    #[test]
    fn lemma34_examples() {
        let (c, r) = lemma34_apply(1, &[1, 1, -1]);
        assert_eq!((c, r), (Scalar::i(), vec![-1, 1, -1]));
        let (c, r) = lemma34_apply(2, &[1, 1, 1]);
        assert_eq!((c, r), (Scalar::one(), vec![-1, 1, 1]));
        // applying e^{ε̄_1} twice is the identity
        let (c1, r1) = lemma34_apply(1, &[1, -1]);
        let (c2, r2) = lemma34_apply(1, &r1);
        assert_eq!(&c1 * &c2, Scalar::one());
        assert_eq!(r2, vec![1, -1]);
        for nu in 1..=6 {
            let r = verify_lemma34(nu);
            assert!(r.passed(), "{}", r);
        }
    }

    #[test]
    fn components() {
        for (nu, count, dim) in [
            (1, 2, 1),
            (2, 4, 1),
            (3, 4, 2),
            (4, 8, 2),
            (5, 8, 4),
            (6, 16, 4),
        ] {
            let comps = decompose(nu);
            assert_eq!(comps.len(), count, "nu={}", nu);
            assert_eq!(all_labels(nu).len(), count);
            assert!(comps.iter().all(|(_, b)| b.len() == dim));
            assert_eq!(comps.iter().map(|(_, b)| b.len()).sum::<usize>(), 1 << nu);
        }
    }

    #[test]
    fn irreducible_components() {
        for nu in 1..=5 {
            let wc = WCoordinates::new(nu);
            for g in all_labels(nu) {
                let r = burnside_with(&g, nu, &wc);
                assert!(r.passed(), "{}", r);
                let e = eigen_check_33(nu, &g);
                assert!(e.passed(), "{}", e);
            }
        }
    }
}
