//! Exact coefficient arithmetic.
//!
//! Two towers share one [`Scalar`] type: cyclotomic numbers `Q(ζ_n)` and
//! rational functions in declared formal parameters with cyclotomic
//! coefficients. Nothing here uses floating point.

mod cyclo;
mod poly;
mod rational;
mod scalar;

pub use cyclo::{cyclotomic_poly, normalize_order, totient, ArithOp, Cyclo};
pub use poly::{Mono, Param, Poly, MAX_PARAMS};
pub use rational::Q;
pub use scalar::{scalar_cmp, Ratfun, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("ambient orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("denominator vanishes at the binding: {0}")]
    PoleAtBinding(String),
    #[error("uncancellable pole: {0}")]
    GenuinePole(String),
    #[error("parameter `{0}` is not bound")]
    UnboundParameter(String),
    #[error("no conjugation rule for parameter `{0}`")]
    NoConjugationRule(String),
}

/// How complex conjugation acts on a formal parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjRule {
    /// `a ↦ a^{-1}`: the parameter lies on the unit circle.
    Reciprocal,
    /// `a ↦ a`: the parameter is real.
    SelfConjugate,
}

/// Session-level description of the active coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldConfig {
    order: u32,
    params: Vec<(String, ConjRule)>,
}

impl FieldConfig {
    /// Field `Q(ζ_n)` with `n = lcm(4, orders...)` and no parameters.
    pub fn new(orders: &[u32]) -> FieldConfig {
        let order = orders
            .iter()
            .fold(4u32, |acc, &o| num_integer::lcm(acc, o.max(1)));
        FieldConfig {
            order,
            params: Vec::new(),
        }
    }

    pub fn with_param(mut self, name: &str, rule: ConjRule) -> FieldConfig {
        Param::new(name);
        self.params.retain(|(n, _)| n != name);
        self.params.push((name.to_string(), rule));
        self
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn param(&self, name: &str) -> Option<Scalar> {
        self.params
            .iter()
            .any(|(n, _)| n == name)
            .then(|| Scalar::param(name))
    }

    pub fn param_names(&self) -> impl Iterator<Item = &str> {
        self.params.iter().map(|(n, _)| n.as_str())
    }

    pub fn rule(&self, name: &str) -> Option<ConjRule> {
        self.params.iter().find(|(n, _)| n == name).map(|(_, r)| *r)
    }

    /// `ζ_n^k` embedded in the ambient field.
    pub fn root(&self, n: u32, k: i64) -> Scalar {
        assert!(
            self.order.is_multiple_of(n),
            "ζ_{} is not in Q(ζ_{})",
            n,
            self.order
        );
        Scalar::Num(Cyclo::zeta(n, k).embed(self.order))
    }
}

pub fn cyclo_arith(op: ArithOp, u: &Cyclo, v: &Cyclo) -> Result<Cyclo, ScalarError> {
    Cyclo::checked_arith(op, u, v)
}

pub fn conjugate(u: &Scalar, cfg: &FieldConfig) -> Result<Scalar, ScalarError> {
    u.conjugate(cfg)
}

pub fn evaluate(u: &Scalar, bindings: &[(Param, Cyclo)]) -> Result<Cyclo, ScalarError> {
    u.evaluate(bindings)
}

pub fn limit_at(u: &Scalar, p: Param, value: &Cyclo) -> Result<Scalar, ScalarError> {
    u.limit_at(p, value)
}
