//! Sparse multivariate Laurent polynomials over cyclotomic coefficients.
//!
//! Parameters are interned process-wide by name; a monomial is a fixed-size
//! exponent vector indexed by parameter id. The term order is pure lex with
//! parameter 0 most significant.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use super::cyclo::{forward_owned, Cyclo};
use super::rational::Q;

/// Maximum number of distinct formal parameters in one process.
pub const MAX_PARAMS: usize = 24;

fn registry() -> &'static RwLock<Vec<String>> {
    static REG: OnceLock<RwLock<Vec<String>>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(Vec::new()))
}

/// A formal parameter, interned by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Param(u16);

impl Param {
    pub fn new(name: &str) -> Param {
        if let Some(p) = Param::lookup(name) {
            return p;
        }
        let mut reg = registry().write().unwrap();
        if let Some(i) = reg.iter().position(|n| n == name) {
            return Param(i as u16);
        }
        assert!(
            reg.len() < MAX_PARAMS,
            "too many formal parameters (limit {})",
            MAX_PARAMS
        );
        reg.push(name.to_string());
        Param((reg.len() - 1) as u16)
    }

    pub fn lookup(name: &str) -> Option<Param> {
        registry()
            .read()
            .unwrap()
            .iter()
            .position(|n| n == name)
            .map(|i| Param(i as u16))
    }

    pub fn name(&self) -> String {
        registry().read().unwrap()[self.0 as usize].clone()
    }

    pub fn index(&self) -> usize {
        self.0 as usize
    }
}

/// Exponent vector; negative entries are allowed (Laurent monomials).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono([i16; MAX_PARAMS]);

impl Mono {
    pub const ONE: Mono = Mono([0; MAX_PARAMS]);

    pub fn var(p: Param, e: i32) -> Mono {
        let mut m = Mono::ONE;
        m.0[p.index()] = e as i16;
        m
    }

    pub fn exp(&self, p: Param) -> i32 {
        self.0[p.index()] as i32
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut m = *self;
        for (a, b) in m.0.iter_mut().zip(o.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        m
    }

    pub fn div(&self, o: &Mono) -> Mono {
        let mut m = *self;
        for (a, b) in m.0.iter_mut().zip(o.0.iter()) {
            *a = a.checked_sub(*b).expect("exponent overflow");
        }
        m
    }

    pub fn inv(&self) -> Mono {
        Mono::ONE.div(self)
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn min(&self, o: &Mono) -> Mono {
        let mut m = *self;
        for (a, b) in m.0.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        m
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn params(&self) -> impl Iterator<Item = (Param, i32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (Param(i as u16), e as i32))
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().map(|&e| e as i32).sum()
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, e) in self.params() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", p.name())?;
            } else {
                write!(f, "{}^{}", p.name(), e)?;
            }
        }
        Ok(())
    }
}

/// A Laurent polynomial: finitely many nonzero terms.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Mono, Cyclo>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: Cyclo) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Mono::ONE, c);
        }
        p
    }

    pub fn one() -> Poly {
        Poly::constant(Cyclo::one())
    }

    pub fn var(p: Param) -> Poly {
        Poly::term(Mono::var(p, 1), Cyclo::one())
    }

    pub fn term(m: Mono, c: Cyclo) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Cyclo)> {
        self.terms.iter()
    }

    /// The constant value, when the polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<Cyclo> {
        match self.terms.len() {
            0 => Some(Cyclo::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Leading term under lex order.
    pub fn lead(&self) -> Option<(&Mono, &Cyclo)> {
        self.terms.iter().next_back()
    }

    /// Trailing (lex-smallest) term.
    pub fn trail(&self) -> Option<(&Mono, &Cyclo)> {
        self.terms.iter().next()
    }

    fn add_term(&mut self, m: Mono, c: Cyclo) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Cyclo) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn shift(&self, by: &Mono) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.mul(by), v.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    pub fn min_mono(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = *it.next().unwrap_or(&Mono::ONE);
        it.fold(first, |acc, m| Mono::min(&acc, m))
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Mono::is_nonnegative)
    }

    pub fn mentions(&self, p: Param) -> bool {
        self.terms.keys().any(|m| m.exp(p) != 0)
    }

    pub fn params(&self) -> Vec<Param> {
        let mut seen = [false; MAX_PARAMS];
        for m in self.terms.keys() {
            for (p, _) in m.params() {
                seen[p.index()] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| Param(i as u16))
            .collect()
    }

    pub fn degree_in(&self, p: Param) -> i32 {
        self.terms.keys().map(|m| m.exp(p)).max().unwrap_or(0)
    }

    /// Exact quotient `self / d` for polynomials with nonnegative exponents;
    /// `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.lead().expect("division by the zero polynomial");
        let dc_inv = dc.inv().unwrap();
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        while let Some((rm, rc)) = rem.lead() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = rm.div(dm);
            let qc = rc * &dc_inv;
            for (m, c) in d.terms.iter() {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quo.add_term(qm, qc);
        }
        Some(quo)
    }

    /// Exact division in the Laurent ring by a divisor that has no monomial factor.
    pub fn div_exact_laurent(&self, d: &Poly) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let shift = self.min_mono();
        let q = self.shift(&shift.inv()).div_exact(d)?;
        Some(q.shift(&shift))
    }

    /// Substitute values for some parameters; a negative power of zero is `None`.
    pub fn substitute(&self, bindings: &[(Param, Cyclo)]) -> Option<Poly> {
        let mut out = Poly::zero();
        for (m, c) in self.terms.iter() {
            let mut mono = *m;
            let mut coef = c.clone();
            for (p, v) in bindings {
                let e = m.exp(*p);
                if e != 0 {
                    if e < 0 && v.is_zero() {
                        return None;
                    }
                    coef = &coef * &v.pow(e as i64);
                    mono.0[p.index()] = 0;
                }
            }
            out.add_term(mono, coef);
        }
        Some(out)
    }

    /// Replace each parameter in `recip` by its reciprocal and conjugate every coefficient.
    pub fn conj_with(&self, recip: &[Param]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in self.terms.iter() {
            let mut mono = *m;
            for p in recip {
                mono.0[p.index()] = -mono.0[p.index()];
            }
            out.add_term(mono, c.conj());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// View as a polynomial in `p` with coefficients free of `p`.
    pub fn coefficients_in(&self, p: Param) -> BTreeMap<i32, Poly> {
        let mut out: BTreeMap<i32, Poly> = BTreeMap::new();
        for (m, c) in self.terms.iter() {
            let e = m.exp(p);
            let mut rest = *m;
            rest.0[p.index()] = 0;
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    pub fn total_cmp(&self, other: &Poly) -> Ordering {
        let mut a = self.terms.iter();
        let mut b = other.terms.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    let o = ma.cmp(mb).then_with(|| cyclo_cmp(ca, cb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    }
}

/// An arbitrary but fixed total order on cyclotomic values.
pub fn cyclo_cmp(a: &Cyclo, b: &Cyclo) -> Ordering {
    match (a.as_rational(), b.as_rational()) {
        (Some(x), Some(y)) => x.cmp(y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => {
            let (oa, ob) = (a.order().unwrap(), b.order().unwrap());
            oa.cmp(&ob)
                .then_with(|| a.coords_in(oa).cmp(&b.coords_in(ob)))
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in small.terms.iter() {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in rhs.terms.iter() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

forward_owned!(Poly, Add::add, Sub::sub, Mul::mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn write_coef_mono(f: &mut fmt::Formatter<'_>, c: &Cyclo, m: &Mono, first: bool) -> fmt::Result {
    match c.as_rational() {
        Some(q) => {
            let neg = q.is_negative();
            let mag = q.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            if m.is_one() {
                write!(f, "{}", mag)
            } else if mag == Q::one() {
                write!(f, "{}", m)
            } else {
                write!(f, "{}*{}", mag, m)
            }
        }
        None => {
            if !first {
                write!(f, "+")?;
            }
            if m.is_one() {
                write!(f, "({})", c)
            } else {
                write!(f, "({})*{}", c, m)
            }
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            write_coef_mono(f, c, m, k == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Poly {
        Poly::var(Param::new("a"))
    }

    #[test]
    fn exact_division() {
        let one = Poly::one();
        let num = &one - &a().pow(5);
        let den = &one - &a();
        let q = num.div_exact(&den).unwrap();
        assert_eq!(
            q,
            &(&(&one + &a()) + &a().pow(2)) + &(&a().pow(3) + &a().pow(4))
        );
        assert!(den.div_exact(&num).is_none());
        assert!((&one + &a()).div_exact(&den).is_none());
    }

    #[test]
    fn laurent_division_and_substitution() {
        let one = Poly::one();
        let ainv = Poly::term(Mono::var(Param::new("a"), -1), Cyclo::one());
        // (1 - a^-2) / (1 - a) = -a^-2 (1 + a)
        let num = &one - &ainv.pow(2);
        let q = num.div_exact_laurent(&(&one - &a())).unwrap();
        assert_eq!(q, -(&ainv.pow(2) + &ainv));
        let v = q.substitute(&[(Param::new("a"), Cyclo::int(2))]).unwrap();
        assert_eq!(v.as_constant().unwrap(), Cyclo::frac(-3, 4));
        assert!(ainv
            .substitute(&[(Param::new("a"), Cyclo::zero())])
            .is_none());
    }

    #[test]
    fn display_ascending() {
        let p = &Poly::one() + &a();
        assert_eq!(p.to_string(), "1+a");
        assert_eq!((&Poly::one() - &a()).to_string(), "1-a");
    }
}
