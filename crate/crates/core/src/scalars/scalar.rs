use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use super::cyclo::{forward_owned, Cyclo};
use super::poly::{cyclo_cmp, Mono, Param, Poly};
use super::rational::Q;
use super::{ConjRule, FieldConfig, ScalarError};

/// Denominator factor: a polynomial with nonnegative exponents, no monomial
/// factor, and lex-smallest coefficient 1.
type Atom = Arc<Poly>;

/// A rational function `num / ∏ atom^e` in formal parameters.
///
/// The numerator may carry negative exponents. After every operation the
/// numerator is reduced against each denominator atom, so with irreducible
/// atoms the representation is canonical.
#[derive(Clone, Debug)]
pub struct Ratfun {
    num: Poly,
    den: Vec<(Atom, u32)>,
}

/// An exact scalar: a cyclotomic number or a rational function in formal parameters.
#[derive(Clone, Debug)]
pub enum Scalar {
    Num(Cyclo),
    Fun(Arc<Ratfun>),
}

/// Writes `p = coef · mono · atom` with `atom` normalized.
fn split_unit(p: &Poly) -> (Cyclo, Mono, Poly) {
    let mono = p.min_mono();
    let shifted = p.shift(&mono.inv());
    let coef = shifted.trail().unwrap().1.clone();
    let atom = shifted.scale(&coef.inv().unwrap());
    (coef, mono, atom)
}

/// Irreducible when linear in some parameter whose two coefficients share no factor.
fn certified_irreducible(p: &Poly) -> bool {
    p.params().into_iter().any(|v| {
        if p.degree_in(v) != 1 {
            return false;
        }
        let cs = p.coefficients_in(v);
        cs.values().any(|c| c.as_constant().is_some())
    })
}

fn root_candidates(p: &Poly) -> Vec<Cyclo> {
    let mut orders = vec![4u32, 3];
    for (_, c) in p.terms() {
        if let Some(o) = c.order() {
            orders.push(o);
        }
    }
    let mut out = vec![
        Cyclo::one(),
        Cyclo::int(-1),
        Cyclo::int(2),
        Cyclo::int(-2),
        Cyclo::frac(1, 2),
        Cyclo::frac(-1, 2),
    ];
    for o in orders {
        for k in 0..o {
            out.push(Cyclo::zeta(o, k as i64));
        }
    }
    out
}

/// Splits a normalized atom into factors. Linear factors are certified; a
/// univariate remainder is searched for roots among small rationals and roots
/// of unity. Anything left is kept whole.
fn factor_atom(atom: Poly) -> Vec<(Poly, u32)> {
    if atom.as_constant().is_some() {
        return vec![];
    }
    if certified_irreducible(&atom) {
        return vec![(atom, 1)];
    }
    let params = atom.params();
    let mut out: Vec<(Poly, u32)> = Vec::new();
    let mut rest = atom;
    if params.len() == 1 {
        let v = params[0];
        for r in root_candidates(&rest) {
            let lin = &Poly::var(v) - &Poly::constant(r);
            let (_, _, lin) = split_unit(&lin);
            let mut e = 0;
            while rest.degree_in(v) > 0 {
                match rest.div_exact(&lin) {
                    Some(q) => {
                        rest = q;
                        e += 1;
                    }
                    None => break,
                }
            }
            if e > 0 {
                out.push((lin, e));
            }
        }
    }
    if rest.as_constant().is_none() {
        let (_, _, rest) = split_unit(&rest);
        out.push((rest, 1));
    }
    out
}

fn den_merge(
    a: &[(Atom, u32)],
    b: &[(Atom, u32)],
    combine: impl Fn(u32, u32) -> u32,
) -> Vec<(Atom, u32)> {
    let mut out: Vec<(Atom, u32)> = a.to_vec();
    for (atom, e) in b {
        match out.iter_mut().find(|(x, _)| **x == **atom) {
            Some(slot) => slot.1 = combine(slot.1, *e),
            None => out.push((atom.clone(), combine(0, *e))),
        }
    }
    out.retain(|(_, e)| *e > 0);
    out.sort_by(|x, y| x.0.total_cmp(&y.0));
    out
}

fn den_product(den: &[(Atom, u32)]) -> Poly {
    let mut acc = Poly::one();
    for (a, e) in den {
        acc = &acc * &a.pow(*e);
    }
    acc
}

/// `den_big / den_small` as a polynomial; `den_small` must divide `den_big`.
fn den_cofactor(big: &[(Atom, u32)], small: &[(Atom, u32)]) -> Poly {
    let mut acc = Poly::one();
    for (a, e) in big {
        let s = small
            .iter()
            .find(|(x, _)| **x == **a)
            .map_or(0, |(_, f)| *f);
        if *e > s {
            acc = &acc * &a.pow(e - s);
        }
    }
    acc
}

/// Divides `num` by denominator atoms as far as possible.
fn cancel(mut num: Poly, den: &mut Vec<(Atom, u32)>) -> Poly {
    if num.is_zero() {
        den.clear();
        return num;
    }
    for (atom, e) in den.iter_mut() {
        while *e > 0 {
            match num.div_exact_laurent(atom) {
                Some(q) => {
                    num = q;
                    *e -= 1;
                }
                None => break,
            }
        }
    }
    den.retain(|(_, e)| *e > 0);
    num
}

impl Ratfun {
    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.den.iter().map(|(a, e)| (&**a, *e))
    }

    pub fn denominator(&self) -> Poly {
        den_product(&self.den)
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Num(Cyclo::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Num(Cyclo::one())
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::Num(Cyclo::int(n))
    }

    pub fn frac(n: i64, d: i64) -> Scalar {
        Scalar::Num(Cyclo::frac(n, d))
    }

    pub fn rational(q: Q) -> Scalar {
        Scalar::Num(Cyclo::rational(q))
    }

    pub fn zeta(n: u32, k: i64) -> Scalar {
        Scalar::Num(Cyclo::zeta(n, k))
    }

    pub fn i() -> Scalar {
        Scalar::Num(Cyclo::i())
    }

    pub fn param(name: &str) -> Scalar {
        Scalar::from_poly(Poly::var(Param::new(name)))
    }

    pub fn from_poly(p: Poly) -> Scalar {
        match p.as_constant() {
            Some(c) => Scalar::Num(c),
            None => Scalar::Fun(Arc::new(Ratfun {
                num: p,
                den: vec![],
            })),
        }
    }

    fn from_parts(num: Poly, den: Vec<(Atom, u32)>) -> Scalar {
        if den.is_empty() {
            return Scalar::from_poly(num);
        }
        Scalar::Fun(Arc::new(Ratfun { num, den }))
    }

    /// Builds `num / den` from a numerator and a denominator that have
    /// already been reduced against each other (used by cancellation paths).
    fn build(num: Poly, mut den: Vec<(Atom, u32)>) -> Scalar {
        let num = cancel(num, &mut den);
        Scalar::from_parts(num, den)
    }

    fn parts(&self) -> (Poly, Vec<(Atom, u32)>) {
        match self {
            Scalar::Num(c) => (Poly::constant(c.clone()), vec![]),
            Scalar::Fun(r) => (r.num.clone(), r.den.clone()),
        }
    }

    pub fn as_cyclo(&self) -> Option<&Cyclo> {
        match self {
            Scalar::Num(c) => Some(c),
            Scalar::Fun(_) => None,
        }
    }

    pub fn as_ratfun(&self) -> Option<&Ratfun> {
        match self {
            Scalar::Num(_) => None,
            Scalar::Fun(r) => Some(r),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Num(c) => c.is_zero(),
            Scalar::Fun(r) => r.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Num(c) if c.is_one())
    }

    pub fn params(&self) -> Vec<Param> {
        match self {
            Scalar::Num(_) => vec![],
            Scalar::Fun(r) => {
                let mut ps = r.num.params();
                for (a, _) in &r.den {
                    ps.extend(a.params());
                }
                ps.sort();
                ps.dedup();
                ps
            }
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Num(c) => c.inv().map(Scalar::Num),
            Scalar::Fun(r) => {
                if r.num.is_zero() {
                    return None;
                }
                let (coef, mono, atom) = split_unit(&r.num);
                let new_num = den_product(&r.den)
                    .shift(&mono.inv())
                    .scale(&coef.inv().unwrap());
                let mut den: Vec<(Atom, u32)> = Vec::new();
                for (f, e) in factor_atom(atom) {
                    den = den_merge(&den, &[(Arc::new(f), e)], |x, y| x + y);
                }
                // the factors of `atom` multiply back to it; any unit drift is
                // absorbed by comparing with the product
                let prod = den_product(&den);
                let (c2, m2, _) = split_unit(&prod);
                let new_num = new_num.shift(&m2.inv()).scale(&c2.inv().unwrap());
                Some(Scalar::build(new_num, den))
            }
        }
    }

    pub fn pow(&self, e: i64) -> Scalar {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Complex conjugation with every parameter treated as unimodular.
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Num(c) => Scalar::Num(c.conj()),
            Scalar::Fun(_) => {
                let recip = self.params();
                self.conj_with(&recip)
            }
        }
    }

    /// Complex conjugation under the rules of `cfg`.
    pub fn conjugate(&self, cfg: &FieldConfig) -> Result<Scalar, ScalarError> {
        let mut recip = Vec::new();
        for p in self.params() {
            match cfg.rule(&p.name()) {
                Some(ConjRule::Reciprocal) => recip.push(p),
                Some(ConjRule::SelfConjugate) => {}
                None => return Err(ScalarError::NoConjugationRule(p.name())),
            }
        }
        Ok(self.conj_with(&recip))
    }

    fn conj_with(&self, recip: &[Param]) -> Scalar {
        match self {
            Scalar::Num(c) => Scalar::Num(c.conj()),
            Scalar::Fun(r) => {
                let mut acc = Scalar::from_poly(r.num.conj_with(recip));
                for (a, e) in &r.den {
                    let d = Scalar::from_poly(a.conj_with(recip)).pow(*e as i64);
                    acc = &acc / &d;
                }
                acc
            }
        }
    }

    /// Exact value at the given parameter bindings.
    pub fn evaluate(&self, bindings: &[(Param, Cyclo)]) -> Result<Cyclo, ScalarError> {
        match self {
            Scalar::Num(c) => Ok(c.clone()),
            Scalar::Fun(r) => {
                for p in self.params() {
                    if !bindings.iter().any(|(q, _)| *q == p) {
                        return Err(ScalarError::UnboundParameter(p.name()));
                    }
                }
                let pole = || ScalarError::PoleAtBinding(self.to_string());
                let num = r
                    .num
                    .substitute(bindings)
                    .ok_or_else(pole)?
                    .as_constant()
                    .unwrap();
                let mut den = Cyclo::one();
                for (a, e) in &r.den {
                    let v = a.substitute(bindings).unwrap().as_constant().unwrap();
                    den = &den * &v.pow(*e as i64);
                }
                if den.is_zero() {
                    return Err(pole());
                }
                Ok(&num / &den)
            }
        }
    }

    /// Substitutes one parameter after cancelling every factor that vanishes there.
    pub fn limit_at(&self, p: Param, value: &Cyclo) -> Result<Scalar, ScalarError> {
        let r = match self {
            Scalar::Num(_) => return Ok(self.clone()),
            Scalar::Fun(r) => r,
        };
        if value.is_zero() {
            return Err(ScalarError::GenuinePole(self.to_string()));
        }
        let lin = &Poly::var(p) - &Poly::constant(value.clone());
        let strip = |poly: &Poly| -> (Poly, u32) {
            let mut cur = poly.clone();
            let mut k = 0;
            while cur.mentions(p) {
                match cur.div_exact_laurent(&lin) {
                    Some(q) => {
                        cur = q;
                        k += 1;
                    }
                    None => break,
                }
            }
            (cur, k)
        };
        let (num, kn) = strip(&r.num);
        let mut kd = 0;
        let mut dens = Vec::new();
        for (a, e) in &r.den {
            let (rest, k) = strip(a);
            kd += k * e;
            dens.push((rest, *e));
        }
        if kd > kn {
            return Err(ScalarError::GenuinePole(self.to_string()));
        }
        let bind = [(p, value.clone())];
        let sub = |poly: &Poly| {
            poly.substitute(&bind)
                .ok_or_else(|| ScalarError::GenuinePole(self.to_string()))
        };
        let mut acc = Scalar::from_poly(sub(&num)?);
        if kn > kd {
            return Ok(Scalar::zero());
        }
        for (d, e) in dens {
            let dv = Scalar::from_poly(sub(&d)?);
            if dv.is_zero() {
                return Err(ScalarError::GenuinePole(self.to_string()));
            }
            acc = &acc / &dv.pow(e as i64);
        }
        Ok(acc)
    }

    fn add_impl(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Num(a), Scalar::Num(b)) => Scalar::Num(a + b),
            _ => {
                let (n1, d1) = self.parts();
                let (n2, d2) = rhs.parts();
                if d1.is_empty() && d2.is_empty() {
                    return Scalar::from_poly(&n1 + &n2);
                }
                let same = d1.len() == d2.len()
                    && d1
                        .iter()
                        .zip(d2.iter())
                        .all(|(x, y)| x.1 == y.1 && *x.0 == *y.0);
                if same {
                    return Scalar::build(&n1 + &n2, d1);
                }
                let l = den_merge(&d1, &d2, u32::max);
                let c1 = den_cofactor(&l, &d1);
                let c2 = den_cofactor(&l, &d2);
                Scalar::build(&(&n1 * &c1) + &(&n2 * &c2), l)
            }
        }
    }

    fn mul_impl(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Num(a), Scalar::Num(b)) => Scalar::Num(a * b),
            (Scalar::Num(a), Scalar::Fun(r)) | (Scalar::Fun(r), Scalar::Num(a)) => {
                if a.is_zero() {
                    return Scalar::zero();
                }
                Scalar::Fun(Arc::new(Ratfun {
                    num: r.num.scale(a),
                    den: r.den.clone(),
                }))
            }
            (Scalar::Fun(x), Scalar::Fun(y)) => {
                if x.den.is_empty() && y.den.is_empty() {
                    return Scalar::from_poly(&x.num * &y.num);
                }
                let mut dy = y.den.clone();
                let nx = cancel(x.num.clone(), &mut dy);
                let mut dx = x.den.clone();
                let ny = cancel(y.num.clone(), &mut dx);
                Scalar::from_parts(&nx * &ny, den_merge(&dx, &dy, |a, b| a + b))
            }
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Num(a), Scalar::Num(b)) => a == b,
            (Scalar::Fun(a), Scalar::Fun(b)) => {
                let same_den = a.den.len() == b.den.len()
                    && a.den
                        .iter()
                        .zip(b.den.iter())
                        .all(|(x, y)| x.1 == y.1 && *x.0 == *y.0);
                if same_den {
                    a.num == b.num
                } else {
                    (self - other).is_zero()
                }
            }
            _ => (self - other).is_zero(),
        }
    }
}

impl Eq for Scalar {}

/// A fixed total order used for deterministic output only.
pub fn scalar_cmp(a: &Scalar, b: &Scalar) -> Ordering {
    match (a, b) {
        (Scalar::Num(x), Scalar::Num(y)) => cyclo_cmp(x, y),
        (Scalar::Num(_), Scalar::Fun(_)) => Ordering::Less,
        (Scalar::Fun(_), Scalar::Num(_)) => Ordering::Greater,
        (Scalar::Fun(x), Scalar::Fun(y)) => x
            .num
            .total_cmp(&y.num)
            .then_with(|| x.den.len().cmp(&y.den.len())),
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.add_impl(rhs)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.add_impl(&-rhs)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.mul_impl(rhs)
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.mul_impl(&rhs.inv().expect("scalar division by zero"))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Num(c) => Scalar::Num(-c),
            Scalar::Fun(r) => Scalar::Fun(Arc::new(Ratfun {
                num: -&r.num,
                den: r.den.clone(),
            })),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

forward_owned!(Scalar, Add::add, Sub::sub, Mul::mul, Div::div);

impl From<Cyclo> for Scalar {
    fn from(c: Cyclo) -> Scalar {
        Scalar::Num(c)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Num(c) => write!(f, "{}", c),
            Scalar::Fun(r) => {
                if r.den.is_empty() {
                    return write!(f, "{}", r.num);
                }
                if r.num.len() > 1 {
                    write!(f, "({})/", r.num)?;
                } else {
                    write!(f, "{}/", r.num)?;
                }
                let single = r.den.len() == 1 && r.den[0].1 == 1;
                if !single {
                    write!(f, "(")?;
                }
                for (k, (a, e)) in r.den.iter().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    if a.len() > 1 {
                        write!(f, "({})", a)?;
                    } else {
                        write!(f, "{}", a)?;
                    }
                    if *e > 1 {
                        write!(f, "^{}", e)?;
                    }
                }
                if !single {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}
