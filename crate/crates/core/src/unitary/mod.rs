//! The skew Laurent ring `R_σ = R[t^{±1}, σ]`, the centrally extended bracket
//! on `gl_ν(R_σ) ⊕ Cc`, and the unitary subalgebra.

mod eu;
mod rep;
#[cfg(test)]
mod tests;

pub use eu::{
    derived_center_split, eu_invariance_check, lambda_membership, verify_eu_membership,
    verify_lemma41, EuConfig,
};
pub use rep::{verify_prop31, verify_rho_hom, verify_structure, Representation, RhoConfig};

use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::Scalar;
use crate::{Error, Mutation, Result};

/// An element of `G`, one exponent per cyclic factor.
pub type GroupElem = Vec<i64>;

/// A finitely generated abelian group `G = Π Z/n_g` (with `n_g = 0` for `Z`)
/// and a character `σ` given by its values on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSpec {
    orders: Vec<u32>,
    values: Vec<Scalar>,
}

impl CharacterSpec {
    pub fn new(orders: Vec<u32>, values: Vec<Scalar>) -> Result<CharacterSpec> {
        if orders.len() != values.len() {
            return Err(Error::Invalid(format!(
                "{} group factors but {} character values",
                orders.len(),
                values.len()
            )));
        }
        for (n, v) in orders.iter().zip(&values) {
            if v.is_zero() {
                return Err(Error::Invalid("character value 0".into()));
            }
            if *n > 0 && !v.pow(*n as i64).is_one() {
                return Err(Error::Invalid(format!(
                    "character value {} is not an {}-th root of unity",
                    v, n
                )));
            }
        }
        Ok(CharacterSpec { orders, values })
    }

    /// `G = {1}`.
    pub fn trivial() -> CharacterSpec {
        CharacterSpec {
            orders: Vec::new(),
            values: Vec::new(),
        }
    }

    /// `G = Z/n` with `σ(1) = ζ_n`.
    pub fn cyclic(n: u32) -> CharacterSpec {
        let v = if n == 1 {
            Scalar::one()
        } else {
            Scalar::zeta(n, 1)
        };
        CharacterSpec {
            orders: vec![n],
            values: vec![v],
        }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn zero(&self) -> GroupElem {
        vec![0; self.orders.len()]
    }

    pub fn reduce(&self, a: &[i64]) -> GroupElem {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &n)| if n == 0 { x } else { x.rem_euclid(n as i64) })
            .collect()
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> GroupElem {
        self.reduce(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: &[i64]) -> GroupElem {
        self.reduce(&a.iter().map(|x| -x).collect::<Vec<_>>())
    }

    /// `σ(α)`, written `α̃`.
    pub fn sigma(&self, a: &[i64]) -> Scalar {
        let mut acc = Scalar::one();
        for (x, v) in a.iter().zip(&self.values) {
            if *x != 0 {
                acc = &acc * &v.pow(*x);
            }
        }
        acc
    }

    /// `|σ|`, the order of `σ(G)`; `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for v in &self.values {
            let k = v.as_cyclo()?.root_order(1 << 12)? as u64;
            acc = num_integer::lcm(acc, k);
        }
        Some(acc)
    }

    /// `true` when every value is a root of unity, so that conjugation inverts it.
    pub fn on_unit_circle(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.as_cyclo().and_then(|c| c.root_order(1 << 12)).is_some())
    }

    /// All of `G` for finite factors; `Z` factors range over `-span..=span`.
    pub fn elements(&self, span: i64) -> Vec<GroupElem> {
        let mut out = vec![Vec::new()];
        for &n in &self.orders {
            let range: Vec<i64> = if n == 0 {
                (-span..=span).collect()
            } else {
                (0..n as i64).collect()
            };
            out = out
                .into_iter()
                .flat_map(|e| range.iter().map(move |&x| [e.clone(), vec![x]].concat()))
                .collect();
        }
        out
    }
}

impl fmt::Display for CharacterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self
            .orders
            .iter()
            .zip(&self.values)
            .map(|(n, v)| {
                if *n == 0 {
                    format!("Z:{}", v)
                } else {
                    format!("Z/{}:{}", n, v)
                }
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The matrix unit `E_ij t^m e^α`, colors 0-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GlKey {
    pub i: usize,
    pub j: usize,
    pub m: i64,
    pub alpha: GroupElem,
}

impl GlKey {
    pub fn new(i: usize, j: usize, m: i64, alpha: GroupElem) -> GlKey {
        GlKey { i, j, m, alpha }
    }
}

impl fmt::Display for GlKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "E{}{} t^{} e^{:?}",
            self.i + 1,
            self.j + 1,
            self.m,
            self.alpha
        )
    }
}

/// `Σ c E_ij t^m e^α + c_0 c` in `gl_ν(R_σ) ⊕ Cc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlElement {
    terms: BTreeMap<GlKey, Scalar>,
    central: Scalar,
}

impl Default for GlElement {
    fn default() -> Self {
        GlElement::zero()
    }
}

impl GlElement {
    pub fn zero() -> GlElement {
        GlElement {
            terms: BTreeMap::new(),
            central: Scalar::zero(),
        }
    }

    pub fn monomial(key: GlKey, c: Scalar) -> GlElement {
        let mut out = GlElement::zero();
        out.add_term(key, c);
        out
    }

    /// `c_0 · c`.
    pub fn central_element(c0: Scalar) -> GlElement {
        GlElement {
            terms: BTreeMap::new(),
            central: c0,
        }
    }

    pub fn add_term(&mut self, key: GlKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add_central(&mut self, c: Scalar) {
        self.central = &self.central + &c;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GlKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &GlKey) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn central(&self) -> &Scalar {
        &self.central
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> GlElement {
        let mut out = GlElement::zero();
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x * c);
        }
        out.central = &self.central * c;
        out
    }

    pub fn add(&self, other: &GlElement) -> GlElement {
        let mut out = self.clone();
        for (k, x) in &other.terms {
            out.add_term(k.clone(), x.clone());
        }
        out.central = &self.central + &other.central;
        out
    }

    pub fn sub(&self, other: &GlElement) -> GlElement {
        self.add(&other.scale(&Scalar::int(-1)))
    }

    /// The element without its central part.
    pub fn noncentral(&self) -> GlElement {
        GlElement {
            terms: self.terms.clone(),
            central: Scalar::zero(),
        }
    }
}

impl fmt::Display for GlElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("({}){}", c, k))
            .collect();
        if !self.central.is_zero() {
            parts.push(format!("({})c", self.central));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `gl_ν(R_σ) ⊕ Cc` for a fixed rank and character.
#[derive(Clone, Debug)]
pub struct UnitaryAlgebra {
    nu: usize,
    chi: CharacterSpec,
}

impl UnitaryAlgebra {
    pub fn new(nu: usize, chi: CharacterSpec) -> UnitaryAlgebra {
        UnitaryAlgebra { nu, chi }
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn character(&self) -> &CharacterSpec {
        &self.chi
    }

    /// `(t^m e^α)(t^n e^β) = α̃^n t^{m+n} e^{α+β}`.
    pub fn ring_mul(
        &self,
        (m, alpha): (i64, &[i64]),
        (n, beta): (i64, &[i64]),
    ) -> (Scalar, i64, GroupElem) {
        (
            self.chi.sigma(alpha).pow(n),
            m + n,
            self.chi.add(alpha, beta),
        )
    }

    /// `bar(t^m e^α) = (−α̃)^{−m} t^m e^{−α}`.
    pub fn bar(&self, (m, alpha): (i64, &[i64])) -> (Scalar, i64, GroupElem) {
        ((-&self.chi.sigma(alpha)).pow(-m), m, self.chi.neg(alpha))
    }

    pub fn bracket(&self, u: &GlElement, v: &GlElement) -> GlElement {
        let mut out = GlElement::zero();
        for (x, cx) in &u.terms {
            for (y, cy) in &v.terms {
                let c = cx * cy;
                let at = self.chi.sigma(&x.alpha);
                let bt = self.chi.sigma(&y.alpha);
                let sum = self.chi.add(&x.alpha, &y.alpha);
                if x.j == y.i {
                    out.add_term(
                        GlKey::new(x.i, y.j, x.m + y.m, sum.clone()),
                        &c * &at.pow(y.m),
                    );
                }
                if x.i == y.j {
                    out.add_term(GlKey::new(y.i, x.j, x.m + y.m, sum), -&(&c * &bt.pow(x.m)));
                }
                if x.i == y.j && x.j == y.i && x.m + y.m == 0 && (&at * &bt).is_one() {
                    out.add_central(&(&c * &Scalar::int(x.m)) * &at.pow(y.m));
                }
            }
        }
        out
    }

    /// `X* = bar(X)^t` on the matrix part; the central part is kept.
    pub fn star(&self, x: &GlElement) -> GlElement {
        let mut out = GlElement::central_element(x.central.clone());
        for (k, c) in &x.terms {
            let (s, m, a) = self.bar((k.m, &k.alpha));
            out.add_term(GlKey::new(k.j, k.i, m, a), c * &s);
        }
        out
    }

    /// `X* = −X` on the matrix part.
    pub fn is_unitary(&self, x: &GlElement) -> bool {
        self.star(&x.noncentral()) == x.noncentral().scale(&Scalar::int(-1))
    }

    /// `e_ij(m, α) = E_ij t^m e^α − E_ji bar(t^m e^α)`.
    pub fn make_e(&self, i: usize, j: usize, m: i64, alpha: &[i64]) -> GlElement {
        let alpha = self.chi.reduce(alpha);
        let mut out = GlElement::monomial(GlKey::new(i, j, m, alpha.clone()), Scalar::one());
        let (s, m2, a2) = self.bar((m, &alpha));
        out.add_term(GlKey::new(j, i, m2, a2), -s);
        out
    }

    /// Writes a unitary `X` as `½ Σ c_k e_k + c_0 c`, where `X = Σ c_k E_k + c_0 c`.
    pub fn e_expansion(&self, x: &GlElement) -> Result<Vec<(GlKey, Scalar)>> {
        if !self.is_unitary(x) {
            return Err(Error::NotUnitary);
        }
        let half = Scalar::frac(1, 2);
        Ok(x.terms
            .iter()
            .map(|(k, c)| (k.clone(), c * &half))
            .collect())
    }

    /// The conjugate-linear `τ(e_ij(m,α)) = (−1)^{m+1} e_ij(−m,α)`, `τ(c) = c`.
    pub fn tau(&self, x: &GlElement, mutation: Option<Mutation>) -> Result<GlElement> {
        let mut out = GlElement::central_element(x.central.conj());
        for (k, c) in self.e_expansion(x)? {
            let sign = if mutation == Some(Mutation::DropTauSign) || (k.m + 1) % 2 == 0 {
                1
            } else {
                -1
            };
            let e = self.make_e(k.i, k.j, -k.m, &k.alpha);
            out = out.add(&e.scale(&(&c.conj() * &Scalar::int(sign))));
        }
        Ok(out)
    }
}
