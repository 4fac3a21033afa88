//! The lattice `Γ = ⊕ Zε_i`, the 2-cocycle `ε`, the quotient `Γ/2Γ` and the
//! twisted group algebra `C[Γ/2Γ]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::scalars::Scalar;

/// Largest supported rank.
pub const MAX_RANK: usize = 8;

/// An element `Σ m_i ε_i` of `Γ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn zero(nu: usize) -> LatticeVector {
        LatticeVector(vec![0; nu])
    }

    /// `ε_i` for a 0-based color `i`.
    pub fn basis(nu: usize, i: usize) -> LatticeVector {
        let mut v = vec![0; nu];
        v[i] = 1;
        LatticeVector(v)
    }

    /// `ε_i - ε_j`.
    pub fn root(nu: usize, i: usize, j: usize) -> LatticeVector {
        &LatticeVector::basis(nu, i) - &LatticeVector::basis(nu, j)
    }

    pub fn from_coords(coords: Vec<i64>) -> LatticeVector {
        assert!(
            coords.len() <= MAX_RANK,
            "rank {} exceeds {}",
            coords.len(),
            MAX_RANK
        );
        LatticeVector(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    /// The form `(α, β) = Σ α_i β_i`.
    pub fn dot(&self, other: &LatticeVector) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, o: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), o.rank());
        LatticeVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, o: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), o.rank());
        LatticeVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{}e{}", sign, i + 1)?;
            } else {
                write!(f, "{}{}e{}", sign, mag, i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A class in `Γ/2Γ`, stored as a bit mask (bit `i` is the parity of the `ε_{i+1}` coordinate).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coset(pub u16);

impl Coset {
    pub const ZERO: Coset = Coset(0);

    pub fn bit(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    /// The representative with coordinates in `{0, 1}`.
    pub fn representative(&self, nu: usize) -> LatticeVector {
        LatticeVector((0..nu).map(|i| i64::from(self.bit(i))).collect())
    }

    pub fn all(nu: usize) -> impl Iterator<Item = Coset> {
        (0..1u16 << nu).map(Coset)
    }

    pub fn weight(&self) -> u32 {
        self.0.count_ones()
    }
}

// Cosets of 2Γ form (Z/2)^ν, where addition is XOR.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Coset {
    type Output = Coset;
    fn add(self, o: Coset) -> Coset {
        Coset(self.0 ^ o.0)
    }
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "0");
        }
        let mut first = true;
        for i in 0..16 {
            if self.bit(i) {
                if !first {
                    write!(f, "+")?;
                }
                write!(f, "e{}", i + 1)?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Componentwise reduction mod 2.
pub fn coset_reduce(alpha: &LatticeVector) -> Coset {
    let mut bits = 0u16;
    for (i, &c) in alpha.coords().iter().enumerate() {
        if c.rem_euclid(2) == 1 {
            bits |= 1 << i;
        }
    }
    Coset(bits)
}

/// The bimultiplicative cocycle with `ε(ε_i, ε_j) = 1` iff `i ≤ j`.
///
/// `flipped` negates the single generator value `ε(ε_p, ε_q)`; it exists to
/// check that verifiers notice a wrong cocycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Cocycle {
    flipped: Option<(usize, usize)>,
}

impl Cocycle {
    pub fn standard() -> Cocycle {
        Cocycle { flipped: None }
    }

    pub fn with_flip(p: usize, q: usize) -> Cocycle {
        Cocycle {
            flipped: Some((p, q)),
        }
    }

    pub fn is_standard(&self) -> bool {
        self.flipped.is_none()
    }

    /// `ε(ε_i, ε_j)` for 0-based colors.
    pub fn generator(&self, i: usize, j: usize) -> i64 {
        let base = if i <= j { 1 } else { -1 };
        if self.flipped == Some((i, j)) {
            -base
        } else {
            base
        }
    }

    /// `ε(α, β) = ∏ ε(ε_i, ε_j)^{α_i β_j}`.
    pub fn eval(&self, alpha: &LatticeVector, beta: &LatticeVector) -> i64 {
        assert_eq!(alpha.rank(), beta.rank());
        let mut odd = 0i64;
        for (i, &a) in alpha.coords().iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in beta.coords().iter().enumerate() {
                if self.generator(i, j) == -1 {
                    odd += a * b;
                }
            }
        }
        if odd.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// `ε` evaluated on the `{0,1}` representatives of two cosets.
    pub fn eval_cosets(&self, nu: usize, a: Coset, b: Coset) -> i64 {
        self.eval(&a.representative(nu), &b.representative(nu))
    }
}

/// `ε(α, β)` for the standard cocycle.
pub fn cocycle(alpha: &LatticeVector, beta: &LatticeVector) -> i64 {
    Cocycle::standard().eval(alpha, beta)
}

/// An element `Σ c_γ e^γ` of the twisted group algebra `C[Γ/2Γ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    nu: usize,
    terms: BTreeMap<Coset, Scalar>,
}

impl GroupAlgebraElement {
    pub fn zero(nu: usize) -> GroupAlgebraElement {
        GroupAlgebraElement {
            nu,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nu: usize) -> GroupAlgebraElement {
        GroupAlgebraElement::basis(nu, Coset::ZERO)
    }

    pub fn basis(nu: usize, c: Coset) -> GroupAlgebraElement {
        GroupAlgebraElement::term(nu, c, Scalar::one())
    }

    /// `e^{ε̄_i}` for a 0-based color.
    pub fn generator(nu: usize, i: usize) -> GroupAlgebraElement {
        GroupAlgebraElement::basis(nu, Coset(1 << i))
    }

    pub fn term(nu: usize, c: Coset, s: Scalar) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero(nu);
        out.add_term(c, s);
        out
    }

    pub fn rank(&self) -> usize {
        self.nu
    }

    pub fn add_term(&mut self, c: Coset, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&c) {
            Some(v) => {
                *v = &*v + &s;
                if v.is_zero() {
                    self.terms.remove(&c);
                }
            }
            None => {
                self.terms.insert(c, s);
            }
        }
    }

    pub fn coefficient(&self, c: Coset) -> Scalar {
        self.terms.get(&c).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Coset, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Scalar) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero(self.nu);
        for (c, v) in &self.terms {
            out.add_term(*c, v * s);
        }
        out
    }

    pub fn add(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = self.clone();
        for (c, v) in &other.terms {
            out.add_term(*c, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        self.add(&other.scale(&Scalar::int(-1)))
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, v)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})e^{{{}}}", v, c)?;
        }
        Ok(())
    }
}

/// The twisted product `e^α e^β = ε(α, β) e^{α+β}`, extended bilinearly.
pub fn group_mul(
    u: &GroupAlgebraElement,
    v: &GroupAlgebraElement,
    eps: &Cocycle,
) -> GroupAlgebraElement {
    assert_eq!(u.nu, v.nu);
    let nu = u.nu;
    let mut out = GroupAlgebraElement::zero(nu);
    for (a, x) in &u.terms {
        for (b, y) in &v.terms {
            let s = eps.eval_cosets(nu, *a, *b);
            let c = x * y;
            out.add_term(*a + *b, if s == 1 { c } else { -c });
        }
    }
    out
}
