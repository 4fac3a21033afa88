//! The Fock space `M = C[Γ/2Γ] ⊗ S(H⁻)`, truncated by degree.
//!
//! `S(H⁻)` is a polynomial ring in the creation operators `ε_i(-m)`, `m > 0`
//! odd. A monomial is a [`Partition`]: a multiset of `(color, m)` pairs. Its
//! degree is `Σ m`, so annihilators lower the degree and truncation keeps
//! everything of degree at most `D`. Colors are 0-based throughout the API;
//! printed output uses 1-based names `e1, e2, …`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::lattice::{Cocycle, Coset, LatticeVector};
use crate::scalars::{Scalar, Q};

/// A monomial `∏ ε_c(-m)` in `S(H⁻)`, stored as sorted `(color, m)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<(u8, u8)>);

impl Partition {
    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// Builds a monomial from `(color, m)` factors in any order.
    pub fn from_parts(parts: &[(usize, u32)]) -> Partition {
        let mut v: Vec<(u8, u8)> = parts
            .iter()
            .map(|&(c, m)| {
                assert!(m % 2 == 1, "creation modes are odd, got {}", m);
                (c as u8, m as u8)
            })
            .collect();
        v.sort_unstable();
        Partition(v)
    }

    pub fn parts(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(c, m)| (c as usize, m as u32))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, m)| m as u32).sum()
    }

    /// Multiplicity of `ε_c(-m)`.
    pub fn count(&self, c: usize, m: u32) -> u32 {
        self.0.iter().filter(|&&p| p == (c as u8, m as u8)).count() as u32
    }

    pub fn with(&self, c: usize, m: u32) -> Partition {
        let key = (c as u8, m as u8);
        let pos = self.0.partition_point(|&p| p < key);
        let mut v = self.0.clone();
        v.insert(pos, key);
        Partition(v)
    }

    /// Product of two monomials.
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                v.push(self.0[i]);
                i += 1;
            } else {
                v.push(other.0[j]);
                j += 1;
            }
        }
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&other.0[j..]);
        Partition(v)
    }

    /// Removes one factor `ε_c(-m)`, if present.
    pub fn without(&self, c: usize, m: u32) -> Option<Partition> {
        let key = (c as u8, m as u8);
        let pos = self.0.iter().position(|&p| p == key)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Partition(v))
    }

    /// Distinct factors with multiplicities.
    pub fn grouped(&self) -> Vec<((usize, u32), u32)> {
        let mut out: Vec<((usize, u32), u32)> = Vec::new();
        for (c, m) in self.parts() {
            match out.last_mut() {
                Some((k, e)) if *k == (c, m) => *e += 1,
                _ => out.push(((c, m), 1)),
            }
        }
        out
    }

    /// `Π k_f! (m_f/2)^{k_f}`: the norm of this monomial under the Fock form.
    pub fn norm(&self) -> Q {
        let mut acc = Q::one();
        for ((_, m), k) in self.grouped() {
            for t in 1..=k {
                acc = &acc * &Q::int(t as i64);
            }
            acc = &acc * &Q::frac(m as i64, 2).pow(k);
        }
        acc
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for ((c, m), k) in self.grouped() {
            write!(f, "e{}(-{})", c + 1, m)?;
            if k > 1 {
                write!(f, "^{}", k)?;
            }
        }
        Ok(())
    }
}

/// A basis vector `e^γ ⊗ p` of `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockBasisState {
    pub coset: Coset,
    pub partition: Partition,
}

impl FockBasisState {
    pub fn new(coset: Coset, partition: Partition) -> FockBasisState {
        FockBasisState { coset, partition }
    }

    pub fn vacuum() -> FockBasisState {
        FockBasisState::new(Coset::ZERO, Partition::empty())
    }
}

impl fmt::Display for FockBasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^{{{}}}*{}", self.coset, self.partition)
    }
}

/// Degree of a basis state.
pub fn degree(s: &FockBasisState) -> u32 {
    s.partition.degree()
}

/// A finite combination of basis states.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FockVector {
    terms: BTreeMap<FockBasisState, Scalar>,
}

impl FockVector {
    pub fn zero() -> FockVector {
        FockVector::default()
    }

    pub fn basis(s: FockBasisState) -> FockVector {
        FockVector::term(s, Scalar::one())
    }

    pub fn term(s: FockBasisState, c: Scalar) -> FockVector {
        let mut v = FockVector::zero();
        v.add_term(s, c);
        v
    }

    pub fn vacuum() -> FockVector {
        FockVector::basis(FockBasisState::vacuum())
    }

    pub fn add_term(&mut self, s: FockBasisState, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&s) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&s);
                }
            }
            None => {
                self.terms.insert(s, c);
            }
        }
    }

    pub fn coefficient(&self, s: &FockBasisState) -> Scalar {
        self.terms.get(s).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockBasisState, &Scalar)> {
        self.terms.iter()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> FockVector {
        let mut out = FockVector::zero();
        for (s, v) in &self.terms {
            out.add_term(s.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (s, v) in &other.terms {
            out.add_term(s.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (s, v) in &other.terms {
            out.add_term(s.clone(), -v);
        }
        out
    }

    /// Keeps only states of degree at most `d`.
    pub fn truncate(&self, d: u32) -> FockVector {
        FockVector {
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| degree(s) <= d)
                .map(|(s, v)| (s.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(degree).max()
    }
}

impl FromIterator<(FockBasisState, Scalar)> for FockVector {
    fn from_iter<I: IntoIterator<Item = (FockBasisState, Scalar)>>(iter: I) -> FockVector {
        let mut v = FockVector::zero();
        for (s, c) in iter {
            v.add_term(s, c);
        }
        v
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (s, v)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}){}", v, s)?;
        }
        Ok(())
    }
}

/// `ε_c(n)` for odd `n`: creation for `n < 0`, `(n/2)∂` for `n > 0`.
pub fn heis_act(c: usize, n: i64, v: &FockVector) -> FockVector {
    assert!(n % 2 != 0, "Heisenberg modes are odd, got {}", n);
    let m = n.unsigned_abs() as u32;
    let mut out = FockVector::zero();
    for (s, x) in v.terms() {
        if n < 0 {
            out.add_term(
                FockBasisState::new(s.coset, s.partition.with(c, m)),
                x.clone(),
            );
        } else {
            let k = s.partition.count(c, m);
            if k > 0 {
                let p = s.partition.without(c, m).unwrap();
                out.add_term(
                    FockBasisState::new(s.coset, p),
                    x * &Scalar::frac(n * k as i64, 2),
                );
            }
        }
    }
    out
}

/// `e^α` acting by `e^β ⊗ p ↦ ε(α, β) e^{α+β} ⊗ p`.
pub fn group_act(alpha: &LatticeVector, v: &FockVector, eps: &Cocycle) -> FockVector {
    let nu = alpha.rank();
    let shift = crate::lattice::coset_reduce(alpha);
    let mut out = FockVector::zero();
    for (s, x) in v.terms() {
        let sign = eps.eval(alpha, &s.coset.representative(nu));
        let c = if sign == 1 { x.clone() } else { -x };
        out.add_term(FockBasisState::new(s.coset + shift, s.partition.clone()), c);
    }
    out
}

/// All `ν`-colored partitions into odd parts of total exactly `d`, in lexicographic order.
pub fn partitions_of_degree(nu: usize, d: u32) -> Vec<Partition> {
    let gens: Vec<(u8, u8)> = (0..nu as u8)
        .flat_map(|c| (1..=d as u8).step_by(2).map(move |m| (c, m)))
        .collect();
    let mut out = Vec::new();
    fn rec(
        gens: &[(u8, u8)],
        start: usize,
        left: u32,
        cur: &mut Vec<(u8, u8)>,
        out: &mut Vec<Partition>,
    ) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for g in start..gens.len() {
            let m = gens[g].1 as u32;
            if m <= left {
                cur.push(gens[g]);
                rec(gens, g, left - m, cur, out);
                cur.pop();
            }
        }
    }
    rec(&gens, 0, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Interned partitions of degree at most `max_degree`, degree-major.
#[derive(Debug)]
pub struct PartitionSpace {
    nu: usize,
    max_degree: u32,
    parts: Vec<Partition>,
    index: HashMap<Partition, u32>,
    degree_end: Vec<usize>,
}

impl PartitionSpace {
    pub fn new(nu: usize, max_degree: u32) -> PartitionSpace {
        let mut parts = Vec::new();
        let mut degree_end = Vec::new();
        for d in 0..=max_degree {
            parts.extend(partitions_of_degree(nu, d));
            degree_end.push(parts.len());
        }
        let index = parts
            .iter()
            .enumerate()
            .map(|(k, p)| (p.clone(), k as u32))
            .collect();
        PartitionSpace {
            nu,
            max_degree,
            parts,
            index,
            degree_end,
        }
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn get(&self, k: u32) -> &Partition {
        &self.parts[k as usize]
    }

    pub fn index_of(&self, p: &Partition) -> Option<u32> {
        self.index.get(p).copied()
    }

    /// Number of partitions of degree at most `d`.
    pub fn count_up_to(&self, d: u32) -> usize {
        self.degree_end[d.min(self.max_degree) as usize]
    }

    pub fn degree_of(&self, k: u32) -> u32 {
        self.parts[k as usize].degree()
    }
}

/// Deterministic enumeration of all basis states of degree at most `D`.
#[derive(Debug, Clone)]
pub struct TruncatedBasis {
    nu: usize,
    depth: u32,
    states: Vec<FockBasisState>,
}

impl TruncatedBasis {
    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn states(&self) -> &[FockBasisState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Degree-major, then by partition, then by coset.
pub fn enumerate_basis(nu: usize, depth: u32) -> TruncatedBasis {
    let mut states = Vec::new();
    for d in 0..=depth {
        for p in partitions_of_degree(nu, d) {
            for c in Coset::all(nu) {
                states.push(FockBasisState::new(c, p.clone()));
            }
        }
    }
    TruncatedBasis { nu, depth, states }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::cocycle;

    fn p(parts: &[(usize, u32)]) -> Partition {
        Partition::from_parts(parts)
    }

    fn st(c: u16, parts: &[(usize, u32)]) -> FockVector {
        FockVector::basis(FockBasisState::new(Coset(c), p(parts)))
    }

    #[test]
    fn heis_examples() {
        let v = st(0, &[(0, 1)]);
        assert_eq!(
            heis_act(0, 1, &v),
            FockVector::vacuum().scale(&Scalar::frac(1, 2))
        );
        assert!(heis_act(0, 3, &v).is_zero());
        let sq = st(0, &[(0, 1), (0, 1)]);
        assert_eq!(heis_act(0, 1, &sq), v);
    }

    #[test]
    fn group_examples() {
        let eps = Cocycle::standard();
        let r = LatticeVector::root(2, 0, 1);
        assert_eq!(group_act(&r, &FockVector::vacuum(), &eps), st(0b11, &[]));
        let e2 = LatticeVector::basis(2, 1);
        assert_eq!(
            group_act(&e2, &st(0b01, &[]), &eps),
            st(0b11, &[]).scale(&Scalar::int(-1))
        );
        let v = st(0b10, &[(1, 3)]);
        assert_eq!(group_act(&LatticeVector::zero(2), &v, &eps), v);
    }

    #[test]
    fn basis_counts() {
        assert_eq!(enumerate_basis(1, 3).len(), 10);
        assert_eq!(enumerate_basis(1, 0).len(), 2);
        assert_eq!(enumerate_basis(2, 1).len(), 12);
        let b = enumerate_basis(2, 4);
        let degs: Vec<u32> = b.states().iter().map(degree).collect();
        assert!(degs.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(
            degree(&FockBasisState::new(Coset(3), Partition::empty())),
            0
        );
        assert_eq!(p(&[(0, 3), (1, 1)]).degree(), 4);
        assert_eq!(p(&[(0, 1), (0, 1), (0, 1)]).degree(), 3);
        assert_eq!(p(&[(0, 3), (1, 1)]).to_string(), "e1(-3)e2(-1)");
    }

    #[test]
    fn partition_space_matches_enumeration() {
        let sp = PartitionSpace::new(3, 6);
        let b = enumerate_basis(3, 6);
        assert_eq!(sp.len() * 8, b.len());
        for k in 0..sp.len() as u32 {
            assert_eq!(sp.index_of(sp.get(k)), Some(k));
        }
        assert_eq!(sp.count_up_to(0), 1);
        assert_eq!(sp.count_up_to(1), 4);
    }

    #[test]
    fn heisenberg_relation_on_basis() {
        let basis = enumerate_basis(2, 5);
        for s in basis.states() {
            let v = FockVector::basis(s.clone());
            for i in 0..2 {
                for j in 0..2 {
                    for m in [-3i64, -1, 1, 3] {
                        for n in [-3i64, -1, 1, 3] {
                            let lhs = heis_act(i, m, &heis_act(j, n, &v)).sub(&heis_act(
                                j,
                                n,
                                &heis_act(i, m, &v),
                            ));
                            let c = if i == j && m + n == 0 {
                                Scalar::frac(m, 2)
                            } else {
                                Scalar::zero()
                            };
                            assert_eq!(
                                lhs,
                                v.scale(&c),
                                "i={} j={} m={} n={} at {}",
                                i,
                                j,
                                m,
                                n,
                                s
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn annihilation_lowers_degree() {
        let v = st(0, &[(0, 3), (0, 1), (1, 1)]);
        for (s, _) in heis_act(0, 3, &v).terms() {
            assert_eq!(degree(s), 2);
        }
        for (s, _) in heis_act(1, -5, &v).terms() {
            assert_eq!(degree(s), 10);
        }
    }

    #[test]
    fn group_action_composes_with_cocycle() {
        let eps = Cocycle::standard();
        let nu = 3;
        let vs: Vec<LatticeVector> = vec![
            LatticeVector::basis(nu, 0),
            LatticeVector::root(nu, 1, 2),
            LatticeVector::from_coords(vec![1, 1, -1]),
        ];
        for c in Coset::all(nu) {
            let v = FockVector::basis(FockBasisState::new(c, p(&[(2, 1)])));
            for a in &vs {
                for b in &vs {
                    let lhs = group_act(a, &group_act(b, &v, &eps), &eps);
                    let rhs = group_act(&(a + b), &v, &eps).scale(&Scalar::int(cocycle(a, b)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn norms() {
        assert_eq!(Partition::empty().norm(), Q::one());
        assert_eq!(p(&[(0, 3)]).norm(), Q::frac(3, 2));
        assert_eq!(p(&[(0, 1), (0, 1), (0, 1)]).norm(), Q::frac(3, 4));
    }
}
