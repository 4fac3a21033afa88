//! One-variable formal distributions: one-sided geometric expansions, the
//! atoms `δ(Ax) = Σ A^k x^k` and `(Dδ)(Ax) = Σ k A^k x^k`, and the
//! partial-fraction identities that turn differences of expansions into
//! combinations of atoms.
//!
//! Doubly infinite series are never multiplied. A one-sided product is
//! expanded by finite convolution; an atom combination is evaluated pointwise.

use std::collections::BTreeMap;

use crate::scalars::{Param, Scalar};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `1/(1 - Ax) = Σ_{k≥0} A^k x^k`.
    Positive,
    /// `A^{-1}x^{-1}/(1 - A^{-1}x^{-1}) = Σ_{k≥1} A^{-k} x^{-k}`.
    Negative,
}

/// `(1/(1-Ax))^e` or `(A^{-1}x^{-1}/(1-A^{-1}x^{-1}))^e`.
#[derive(Clone, Debug)]
pub struct OneSidedFactor {
    pub pole: Scalar,
    pub direction: Direction,
    pub exponent: u32,
}

impl OneSidedFactor {
    pub fn positive(pole: Scalar, exponent: u32) -> OneSidedFactor {
        OneSidedFactor {
            pole,
            direction: Direction::Positive,
            exponent,
        }
    }

    pub fn negative(pole: Scalar, exponent: u32) -> OneSidedFactor {
        OneSidedFactor {
            pole,
            direction: Direction::Negative,
            exponent,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaKind {
    Delta,
    DDelta,
}

/// `δ(Ax)` or `(Dδ)(Ax)`.
#[derive(Clone, Debug)]
pub struct DeltaAtom {
    pub kind: DeltaKind,
    pub scale: Scalar,
}

impl DeltaAtom {
    pub fn delta(scale: Scalar) -> DeltaAtom {
        DeltaAtom {
            kind: DeltaKind::Delta,
            scale,
        }
    }

    pub fn d_delta(scale: Scalar) -> DeltaAtom {
        DeltaAtom {
            kind: DeltaKind::DDelta,
            scale,
        }
    }

    /// Coefficient of `x^k`.
    pub fn coefficient(&self, k: i64) -> Scalar {
        let base = self.scale.pow(k);
        match self.kind {
            DeltaKind::Delta => base,
            DeltaKind::DDelta => &Scalar::int(k) * &base,
        }
    }
}

/// Coefficients of a distribution on the exponent range `[lower, upper]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientWindow {
    lower: i64,
    upper: i64,
    coefficients: Vec<Scalar>,
}

impl CoefficientWindow {
    pub fn zero(lower: i64, upper: i64) -> CoefficientWindow {
        assert!(lower <= upper);
        CoefficientWindow {
            lower,
            upper,
            coefficients: vec![Scalar::zero(); (upper - lower + 1) as usize],
        }
    }

    pub fn lower(&self) -> i64 {
        self.lower
    }

    pub fn upper(&self) -> i64 {
        self.upper
    }

    pub fn get(&self, k: i64) -> &Scalar {
        assert!(
            self.lower <= k && k <= self.upper,
            "exponent {} outside window",
            k
        );
        &self.coefficients[(k - self.lower) as usize]
    }

    fn slot(&mut self, k: i64) -> &mut Scalar {
        &mut self.coefficients[(k - self.lower) as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        (self.lower..=self.upper).zip(self.coefficients.iter())
    }

    pub fn restrict(&self, lower: i64, upper: i64) -> CoefficientWindow {
        assert!(self.lower <= lower && upper <= self.upper);
        CoefficientWindow {
            lower,
            upper,
            coefficients: (lower..=upper).map(|k| self.get(k).clone()).collect(),
        }
    }

    pub fn sub(&self, other: &CoefficientWindow) -> CoefficientWindow {
        assert_eq!((self.lower, self.upper), (other.lower, other.upper));
        CoefficientWindow {
            lower: self.lower,
            upper: self.upper,
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> CoefficientWindow {
        CoefficientWindow {
            lower: self.lower,
            upper: self.upper,
            coefficients: self.coefficients.iter().map(|a| a * c).collect(),
        }
    }

    /// First exponent where two windows differ.
    pub fn first_difference(&self, other: &CoefficientWindow) -> Option<i64> {
        assert_eq!((self.lower, self.upper), (other.lower, other.upper));
        self.iter()
            .zip(other.iter())
            .find(|((_, a), (_, b))| a != b)
            .map(|((k, _), _)| k)
    }
}

/// Coefficients of the product of one-sided factors on `[lo, hi]`.
pub fn expand_product(factors: &[OneSidedFactor], lo: i64, hi: i64) -> Result<CoefficientWindow> {
    let mut out = CoefficientWindow::zero(lo, hi);
    let dir = match factors.first() {
        None => {
            if lo <= 0 && 0 <= hi {
                *out.slot(0) = Scalar::one();
            }
            return Ok(out);
        }
        Some(f) => f.direction,
    };
    if factors.iter().any(|f| f.direction != dir) {
        return Err(Error::MixedDirections);
    }
    // Work in t = x (positive) or t = x^{-1} (negative); series in t are one-sided.
    let top = match dir {
        Direction::Positive => hi,
        Direction::Negative => -lo,
    };
    if top < 0 {
        return Ok(out);
    }
    let len = top as usize + 1;
    let mut acc = vec![Scalar::zero(); len];
    acc[0] = Scalar::one();
    for f in factors {
        if f.pole.is_zero() {
            return Err(Error::Invalid("pole parameter must be nonzero".into()));
        }
        let base = match dir {
            Direction::Positive => f.pole.clone(),
            Direction::Negative => f.pole.inv().unwrap(),
        };
        let powers: Vec<Scalar> = {
            let mut v = Vec::with_capacity(len);
            let mut p = Scalar::one();
            for _ in 0..len {
                v.push(p.clone());
                p = &p * &base;
            }
            v
        };
        let start = usize::from(dir == Direction::Negative);
        for _ in 0..f.exponent {
            let mut next = vec![Scalar::zero(); len];
            for (i, a) in acc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for k in start..len - i {
                    next[i + k] = &next[i + k] + &(a * &powers[k]);
                }
            }
            acc = next;
        }
    }
    for (t, c) in acc.into_iter().enumerate() {
        let k = match dir {
            Direction::Positive => t as i64,
            Direction::Negative => -(t as i64),
        };
        if lo <= k && k <= hi {
            *out.slot(k) = c;
        }
    }
    Ok(out)
}

/// Pointwise sum of `c · atom` over the window.
pub fn delta_window(atoms: &[(Scalar, DeltaAtom)], lo: i64, hi: i64) -> CoefficientWindow {
    let mut out = CoefficientWindow::zero(lo, hi);
    for k in lo..=hi {
        let mut acc = Scalar::zero();
        for (c, a) in atoms {
            acc = &acc + &(c * &a.coefficient(k));
        }
        *out.slot(k) = acc;
    }
    out
}

/// Coefficient of `z^{-m} w^{-n}` in `F(λz)·atom(w/z)`, where `F(z) = Σ_p F_p z^{-p}`.
///
/// Returns `(p, c)` with the coefficient equal to `c·F_p`. A constant `F`
/// only has `p = 0`, so it contributes iff `m + n = 0`.
pub fn mode_extract(atom: &DeltaAtom, lambda: &Scalar, m: i64, n: i64) -> (i64, Scalar) {
    let p = m + n;
    (p, &lambda.pow(-p) * &atom.coefficient(-n))
}

/// The two partial-fraction identities of the lemma and the two of its corollary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RationalIdentity {
    LemmaFirst,
    LemmaSecond,
    CorollaryFirst,
    CorollarySecond,
}

/// Seeded corruptions used to check that the verifiers can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SeriesMutation {
    #[default]
    None,
    /// Drops the `+1` (or `-1`) inside the bracket of the corollary identities.
    DropUnitInBracket,
    /// Scales the coefficient of the `Dδ` atom by 2.
    DoubleDDelta,
}

struct Poles {
    a: Vec<Scalar>,
    b: Scalar,
    x: Scalar,
}

fn poles(n: usize) -> Poles {
    Poles {
        a: (0..=n).map(|i| Scalar::param(&format!("A{}", i))).collect(),
        b: Scalar::param("B"),
        x: Scalar::param("x"),
    }
}

fn frac(p: &Scalar, q: &Scalar) -> Scalar {
    p / q
}

/// Both sides of a rational identity as exact rational functions.
pub fn rational_identity_sides(
    id: RationalIdentity,
    n: usize,
    mutation: SeriesMutation,
) -> (Scalar, Scalar) {
    assert!(n >= 1);
    let Poles { a, b, x } = poles(n);
    let one = Scalar::one();
    let sq = |s: &Scalar| s * s;
    let idx = 1..=n;
    // A_i/(A_i - A_0) and its relatives
    let ai_a0 = |i: usize| frac(&a[i], &(&a[i] - &a[0]));
    let a0_ai_a0 = |i: usize| frac(&a[0], &(&a[i] - &a[0]));
    let prod_other = |i: usize, num_i: bool| {
        let mut acc = one.clone();
        for j in 1..=n {
            if j != i {
                let num = if num_i { &a[i] } else { &a[j] };
                acc = &acc * &frac(num, &(&a[i] - &a[j]));
            }
        }
        acc
    };
    let p0 = |num_zero: bool| {
        let mut acc = one.clone();
        for i in 1..=n {
            let num = if num_zero { &a[0] } else { &a[i] };
            acc = &acc * &frac(num, &(&a[0] - &a[i]));
        }
        acc
    };
    let bump = if mutation == SeriesMutation::DropUnitInBracket {
        Scalar::zero()
    } else {
        one.clone()
    };
    match id {
        RationalIdentity::LemmaFirst => {
            let t0 = frac(&b, &(&b - &a[0]));
            let mut lhs = sq(&t0);
            for j in idx.clone() {
                lhs = &lhs * &frac(&b, &(&b - &a[j]));
            }
            let mut rhs = Scalar::zero();
            let mut sum_l = Scalar::zero();
            for i in idx {
                rhs = &rhs + &(&(&sq(&ai_a0(i)) * &prod_other(i, true)) * &frac(&b, &(&b - &a[i])));
                sum_l = &sum_l + &ai_a0(i);
            }
            rhs = &rhs + &(&p0(true) * &(&sq(&t0) + &(&sum_l * &t0)));
            (lhs, rhs)
        }
        RationalIdentity::LemmaSecond => {
            let t0 = frac(&a[0], &(&b - &a[0]));
            let mut lhs = sq(&t0);
            for j in idx.clone() {
                lhs = &lhs * &frac(&a[j], &(&b - &a[j]));
            }
            let mut rhs = Scalar::zero();
            let mut sum_l = Scalar::zero();
            for i in idx {
                rhs = &rhs
                    + &(&(&sq(&a0_ai_a0(i)) * &prod_other(i, false)) * &frac(&a[i], &(&b - &a[i])));
                sum_l = &sum_l + &a0_ai_a0(i);
            }
            rhs = &rhs + &(&p0(false) * &(&sq(&t0) + &(&sum_l * &t0)));
            (lhs, rhs)
        }
        RationalIdentity::CorollaryFirst => {
            let g = |i: usize| frac(&one, &(&one - &(&a[i] * &x)));
            let mut lhs = sq(&g(0));
            for j in idx.clone() {
                lhs = &lhs * &g(j);
            }
            let mut rhs = Scalar::zero();
            let mut sum_l = Scalar::zero();
            for i in idx {
                rhs = &rhs + &(&(&sq(&ai_a0(i)) * &prod_other(i, true)) * &g(i));
                sum_l = &sum_l + &ai_a0(i);
            }
            let a0x = &a[0] * &x;
            let bracket = &(&a0x * &sq(&g(0))) + &(&(&bump + &sum_l) * &g(0));
            rhs = &rhs + &(&p0(true) * &bracket);
            (lhs, rhs)
        }
        RationalIdentity::CorollarySecond => {
            let h = |i: usize| {
                let ax = &a[i] * &x;
                frac(&ax, &(&one - &ax))
            };
            let mut lhs = sq(&h(0));
            for j in idx.clone() {
                lhs = &lhs * &h(j);
            }
            let mut rhs = Scalar::zero();
            let mut sum_l = Scalar::zero();
            for i in idx {
                rhs = &rhs + &(&(&sq(&a0_ai_a0(i)) * &prod_other(i, false)) * &h(i));
                sum_l = &sum_l + &a0_ai_a0(i);
            }
            let a0x = &a[0] * &x;
            let g0 = frac(&one, &(&one - &a0x));
            let bracket = &(&a0x * &sq(&g0)) + &(&(&sum_l - &bump) * &h(0));
            rhs = &rhs + &(&p0(false) * &bracket);
            (lhs, rhs)
        }
    }
}

/// True iff the identity holds exactly with `A_0, …, A_n, B, x` formal.
pub fn verify_rational_identity(id: RationalIdentity, n: usize) -> bool {
    let (l, r) = rational_identity_sides(id, n, SeriesMutation::None);
    l == r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaIdentity {
    /// Double pole at `A_0` plus simple poles at `A_1..A_n`.
    DoublePole,
    /// Simple poles at `A_1..A_n`.
    SimplePoles,
}

/// Both sides of a delta identity on `[-k, k]`.
pub fn delta_identity_windows(
    id: DeltaIdentity,
    n: usize,
    k: i64,
    mutation: SeriesMutation,
) -> (CoefficientWindow, CoefficientWindow) {
    assert!(n >= 1 && k >= 1);
    let a: Vec<Scalar> = (0..=n).map(|i| Scalar::param(&format!("A{}", i))).collect();
    let sign = if n.is_multiple_of(2) {
        Scalar::one()
    } else {
        Scalar::int(-1)
    };
    let first = if id == DeltaIdentity::DoublePole {
        0
    } else {
        1
    };
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (i, ai) in a.iter().enumerate().skip(first) {
        let e = if i == 0 { 2 } else { 1 };
        pos.push(OneSidedFactor::positive(ai.clone(), e));
        neg.push(OneSidedFactor::negative(ai.clone(), e));
    }
    let lhs = expand_product(&pos, -k, k)
        .unwrap()
        .sub(&expand_product(&neg, -k, k).unwrap().scale(&sign));

    let mut atoms = Vec::new();
    match id {
        DeltaIdentity::SimplePoles => {
            for i in 1..=n {
                let mut c = Scalar::one();
                for j in 1..=n {
                    if j != i {
                        c = &c * &(&a[i] / &(&a[i] - &a[j]));
                    }
                }
                atoms.push((c, DeltaAtom::delta(a[i].clone())));
            }
        }
        DeltaIdentity::DoublePole => {
            let mut sum_l = Scalar::zero();
            for i in 1..=n {
                let r = &a[i] / &(&a[i] - &a[0]);
                let mut c = &r * &r;
                for j in 1..=n {
                    if j != i {
                        c = &c * &(&a[i] / &(&a[i] - &a[j]));
                    }
                }
                atoms.push((c, DeltaAtom::delta(a[i].clone())));
                sum_l = &sum_l + &r;
            }
            let mut p0 = Scalar::one();
            for i in 1..=n {
                p0 = &p0 * &(&a[0] / &(&a[0] - &a[i]));
            }
            let dd = if mutation == SeriesMutation::DoubleDDelta {
                &p0 * &Scalar::int(2)
            } else {
                p0.clone()
            };
            let bump = if mutation == SeriesMutation::DropUnitInBracket {
                Scalar::zero()
            } else {
                Scalar::one()
            };
            atoms.push((dd, DeltaAtom::d_delta(a[0].clone())));
            atoms.push((&p0 * &(&bump + &sum_l), DeltaAtom::delta(a[0].clone())));
        }
    }
    (lhs, delta_window(&atoms, -k, k))
}

/// True iff both sides agree on every exponent in `[-k, k]`.
pub fn verify_delta_identity(id: DeltaIdentity, n: usize, k: i64) -> bool {
    let (l, r) = delta_identity_windows(id, n, k, SeriesMutation::None);
    l == r
}

/// A finite Laurent polynomial `Σ y_{ij} w^i z^j`.
#[derive(Clone, Debug, Default)]
pub struct Bivariate {
    terms: BTreeMap<(i64, i64), Scalar>,
}

impl Bivariate {
    pub fn new() -> Bivariate {
        Bivariate::default()
    }

    /// Adds `c · w^i z^j`.
    pub fn with(mut self, i: i64, j: i64, c: Scalar) -> Bivariate {
        let e = self.terms.entry((i, j)).or_insert_with(Scalar::zero);
        *e = &*e + &c;
        self
    }

    /// Coefficient of `w^p z^q` in `Y(w,z)·atom(a w/z)`.
    fn times_atom(&self, atom: &DeltaAtom, p: i64, q: i64) -> Scalar {
        let mut acc = Scalar::zero();
        for (&(i, j), y) in &self.terms {
            let k = p - i;
            if j - q == k {
                acc = &acc + &(y * &atom.coefficient(k));
            }
        }
        acc
    }

    /// Coefficient of `w^p z^q` in `Y(w, aw)·atom(a w/z)`.
    fn collapsed_times_atom(&self, a: &Scalar, atom: &DeltaAtom, p: i64, q: i64) -> Scalar {
        let mut acc = Scalar::zero();
        for (&(i, j), y) in &self.terms {
            let k = p - i - j;
            if q == -k {
                acc = &acc + &(&(y * &a.pow(j)) * &atom.coefficient(k));
            }
        }
        acc
    }

    /// `D_z Y = z ∂_z Y`.
    fn dz(&self) -> Bivariate {
        let mut out = Bivariate::new();
        for (&(i, j), y) in &self.terms {
            if j != 0 {
                out = out.with(i, j, y * &Scalar::int(j));
            }
        }
        out
    }
}

/// Checks `Yδ(aw/z) = Y(w,aw)δ(aw/z)` and
/// `Y(Dδ)(aw/z) = Y(w,aw)(Dδ)(aw/z) + (D_zY)δ(aw/z)` on `[-k,k]²`.
pub fn verify_substitution_rules(y: &Bivariate, a: &Scalar, k: i64) -> bool {
    let d = DeltaAtom::delta(a.clone());
    let dd = DeltaAtom::d_delta(a.clone());
    let yz = y.dz();
    for p in -k..=k {
        for q in -k..=k {
            if y.times_atom(&d, p, q) != y.collapsed_times_atom(a, &d, p, q) {
                return false;
            }
            let lhs = y.times_atom(&dd, p, q);
            let rhs = &y.collapsed_times_atom(a, &dd, p, q) + &yz.times_atom(&d, p, q);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// `(δ(z) - a²δ(az))/(1-a) → (Dδ)(z) + 2δ(z)` as `a → 1`, on `[-k, k]`.
pub fn verify_remark_2_14(k: i64) -> bool {
    let a = Scalar::param("a");
    let pa = Param::new("a");
    let inv = (&Scalar::one() - &a).inv().unwrap();
    let lhs = delta_window(
        &[
            (inv.clone(), DeltaAtom::delta(Scalar::one())),
            (-(&(&a * &a) * &inv), DeltaAtom::delta(a.clone())),
        ],
        -k,
        k,
    );
    let rhs = delta_window(
        &[
            (Scalar::one(), DeltaAtom::d_delta(Scalar::one())),
            (Scalar::int(2), DeltaAtom::delta(Scalar::one())),
        ],
        -k,
        k,
    );
    let one = crate::scalars::Cyclo::one();
    let ok = lhs
        .iter()
        .zip(rhs.iter())
        .all(|((_, l), (_, r))| matches!(l.limit_at(pa, &one), Ok(v) if v == *r));
    ok
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(name: &str) -> Scalar {
        Scalar::param(name)
    }

    #[test]
    fn geometric_examples() {
        let a = p("A");
        let w = expand_product(&[OneSidedFactor::positive(a.clone(), 1)], 0, 3).unwrap();
        for k in 0..=3 {
            assert_eq!(*w.get(k), a.pow(k));
        }
        let w = expand_product(&[OneSidedFactor::positive(a.clone(), 2)], 0, 2).unwrap();
        assert_eq!(*w.get(0), Scalar::one());
        assert_eq!(*w.get(1), &Scalar::int(2) * &a);
        assert_eq!(*w.get(2), &Scalar::int(3) * &a.pow(2));
        let w = expand_product(&[OneSidedFactor::negative(a.clone(), 1)], -2, 0).unwrap();
        assert_eq!(*w.get(-1), a.pow(-1));
        assert_eq!(*w.get(-2), a.pow(-2));
        assert!(w.get(0).is_zero());
    }

    #[test]
    fn mixed_directions_rejected() {
        let a = p("A");
        let fs = [
            OneSidedFactor::positive(a.clone(), 1),
            OneSidedFactor::negative(a, 1),
        ];
        assert_eq!(expand_product(&fs, -2, 2), Err(Error::MixedDirections));
    }

    #[test]
    fn delta_examples() {
        let a = p("A");
        let w = delta_window(&[(Scalar::one(), DeltaAtom::delta(a.clone()))], -1, 1);
        assert_eq!(*w.get(-1), a.pow(-1));
        assert_eq!(*w.get(0), Scalar::one());
        assert_eq!(*w.get(1), a);
        let w = delta_window(&[(Scalar::one(), DeltaAtom::d_delta(a.clone()))], -1, 1);
        assert_eq!(*w.get(-1), -a.pow(-1));
        assert!(w.get(0).is_zero());
        assert_eq!(*w.get(1), a);
        let c = p("c");
        for k in [-3i64, 0, 2] {
            let w = delta_window(
                &[
                    (c.clone(), DeltaAtom::delta(a.clone())),
                    (Scalar::one(), DeltaAtom::d_delta(a.clone())),
                ],
                k,
                k,
            );
            assert_eq!(*w.get(k), &(&c + &Scalar::int(k)) * &a.pow(k));
        }
    }

    #[test]
    fn delta_ratio_property() {
        let a = p("A");
        let w = delta_window(&[(Scalar::int(3), DeltaAtom::delta(a.clone()))], -4, 4);
        for k in -4..4 {
            assert_eq!(*w.get(k + 1), w.get(k) * &a);
        }
    }

    #[test]
    fn restriction_commutes_with_expansion() {
        let fs = [
            OneSidedFactor::positive(p("A1"), 2),
            OneSidedFactor::positive(p("A2"), 1),
        ];
        let big = expand_product(&fs, -3, 6).unwrap();
        let small = expand_product(&fs, 1, 4).unwrap();
        assert_eq!(big.restrict(1, 4), small);
    }

    #[test]
    fn rational_identities_small_n() {
        assert!(verify_rational_identity(RationalIdentity::LemmaFirst, 1));
        assert!(verify_rational_identity(RationalIdentity::LemmaSecond, 1));
        assert!(verify_rational_identity(
            RationalIdentity::CorollaryFirst,
            2
        ));
        assert!(verify_rational_identity(
            RationalIdentity::CorollarySecond,
            2
        ));
    }

    #[test]
    fn corollary_mutation_detected() {
        for id in [
            RationalIdentity::CorollaryFirst,
            RationalIdentity::CorollarySecond,
        ] {
            let (l, r) = rational_identity_sides(id, 2, SeriesMutation::DropUnitInBracket);
            assert_ne!(l, r);
        }
    }

    #[test]
    fn delta_identities_small_n() {
        assert!(verify_delta_identity(DeltaIdentity::SimplePoles, 1, 5));
        assert!(verify_delta_identity(DeltaIdentity::DoublePole, 1, 4));
        assert!(verify_delta_identity(DeltaIdentity::SimplePoles, 3, 6));
    }

    #[test]
    fn simple_pole_n1_is_the_delta_split() {
        let (l, r) = delta_identity_windows(DeltaIdentity::SimplePoles, 1, 5, SeriesMutation::None);
        let a1 = p("A1");
        for k in -5..=5 {
            assert_eq!(*l.get(k), a1.pow(k));
            assert_eq!(*r.get(k), a1.pow(k));
        }
    }

    #[test]
    fn delta_mutations_detected() {
        for m in [
            SeriesMutation::DoubleDDelta,
            SeriesMutation::DropUnitInBracket,
        ] {
            let (l, r) = delta_identity_windows(DeltaIdentity::DoublePole, 2, 4, m);
            assert!(l.first_difference(&r).is_some());
        }
    }

    #[test]
    fn substitution_examples() {
        let zw = Bivariate::new().with(1, 1, Scalar::one());
        assert!(verify_substitution_rules(&zw, &Scalar::one(), 3));
        let one = Bivariate::new().with(0, 0, Scalar::one());
        assert!(verify_substitution_rules(&one, &p("a"), 3));
        let z2 = Bivariate::new().with(0, 2, Scalar::one());
        assert!(verify_substitution_rules(&z2, &p("a"), 3));
        let mixed = Bivariate::new()
            .with(-1, 2, Scalar::frac(1, 3))
            .with(2, -1, p("b"));
        assert!(verify_substitution_rules(&mixed, &Scalar::zeta(3, 1), 4));
    }

    #[test]
    fn remark_limits() {
        assert!(verify_remark_2_14(6));
        let a = p("a");
        let pa = Param::new("a");
        let one = crate::scalars::Cyclo::one();
        let coef = |k: i64| &(&Scalar::one() - &a.pow(k + 2)) / &(&Scalar::one() - &a);
        assert_eq!(coef(0).limit_at(pa, &one).unwrap(), Scalar::int(2));
        assert_eq!(coef(3).limit_at(pa, &one).unwrap(), Scalar::int(5));
        assert_eq!(coef(-2).limit_at(pa, &one).unwrap(), Scalar::zero());
    }

    #[test]
    fn extraction_rule() {
        // F(λz)δ(μw/z) with F = Σ F_p z^{-p}: coefficient of z^{-m}w^{-n} is λ^{-(m+n)} μ^{-n} F_{m+n}
        let lam = p("l");
        let mu = p("u");
        let (pp, c) = mode_extract(&DeltaAtom::delta(mu.clone()), &lam, 2, -3);
        assert_eq!(pp, -1);
        assert_eq!(c, &lam * &mu.pow(3));
        let (_, c) = mode_extract(&DeltaAtom::d_delta(mu.clone()), &Scalar::one(), 1, -1);
        assert_eq!(c, mu);
    }
}
