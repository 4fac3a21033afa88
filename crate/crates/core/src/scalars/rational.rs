//! Arbitrary precision rationals with an inline fast path.
//!
//! Values that fit in `i64/i64` stay unboxed; any overflow promotes to a
//! `BigRational`. Results are demoted again whenever they fit, so equality is
//! structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub enum Q {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Q {
    pub fn zero() -> Q {
        Q::Small(Ratio::from_integer(0))
    }

    pub fn one() -> Q {
        Q::Small(Ratio::from_integer(1))
    }

    pub fn int(n: i64) -> Q {
        Q::Small(Ratio::from_integer(n))
    }

    /// `num/den`, reduced. Panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Q {
        assert!(den != 0, "zero denominator");
        Q::Small(Ratio::new(num, den))
    }

    pub fn from_big(r: BigRational) -> Q {
        let (n, d) = (r.numer(), r.denom());
        match (n.to_i64(), d.to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Q::Small(Ratio::new_raw(n, d)),
            _ => Q::Big(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Q::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Q::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Q::Small(r) => r.is_zero(),
            Q::Big(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Q::Small(r) => r.is_one(),
            Q::Big(r) => r.is_one(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Q::Small(r) => r.is_negative(),
            Q::Big(r) => r.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(r) => r.is_integer(),
            Q::Big(r) => r.is_integer(),
        }
    }

    pub fn inv(&self) -> Option<Q> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Q::Small(r) if *r.numer() != i64::MIN => Q::Small(r.recip()),
            _ => Q::from_big(self.to_big().recip()),
        })
    }

    pub fn abs(&self) -> Q {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, e: u32) -> Q {
        let mut acc = Q::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn numer_big(&self) -> BigInt {
        match self {
            Q::Small(r) => BigInt::from(*r.numer()),
            Q::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom_big(&self) -> BigInt {
        match self {
            Q::Small(r) => BigInt::from(*r.denom()),
            Q::Big(r) => r.denom().clone(),
        }
    }

    /// Least common multiple of two denominators, used when clearing fractions.
    pub fn denom_lcm(&self, other: &Q) -> BigInt {
        self.denom_big().lcm(&other.denom_big())
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::int(n)
    }
}

impl From<BigInt> for Q {
    fn from(n: BigInt) -> Q {
        Q::from_big(BigRational::from_integer(n))
    }
}

impl PartialEq for Q {
    fn eq(&self, other: &Q) -> bool {
        match (self, other) {
            (Q::Small(a), Q::Small(b)) => a == b,
            _ => self.to_big() == other.to_big(),
        }
    }
}

impl Eq for Q {}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> Ordering {
        match (self, other) {
            (Q::Small(a), Q::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(r) => write!(f, "{}", r),
            Q::Big(r) => write!(f, "{}", r),
        }
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self {
            Q::Small(r) if *r.numer() != i64::MIN => Q::Small(-r),
            _ => Q::from_big(-self.to_big()),
        }
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        -&self
    }
}

macro_rules! q_binop {
    ($trait:ident, $method:ident, $checked:ident, $cm:ident) => {
        impl $trait<&Q> for &Q {
            type Output = Q;
            fn $method(self, rhs: &Q) -> Q {
                if let (Q::Small(a), Q::Small(b)) = (self, rhs) {
                    if let Some(r) = <Ratio<i64> as num_traits::$checked>::$cm(a, b) {
                        return Q::Small(r);
                    }
                }
                Q::from_big(self.to_big().$method(rhs.to_big()))
            }
        }
        impl $trait<Q> for Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Q> for Q {
            type Output = Q;
            fn $method(self, rhs: &Q) -> Q {
                (&self).$method(rhs)
            }
        }
    };
}

q_binop!(Add, add, CheckedAdd, checked_add);
q_binop!(Sub, sub, CheckedSub, checked_sub);
q_binop!(Mul, mul, CheckedMul, checked_mul);

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div<&Q> for &Q {
    type Output = Q;
    fn div(self, rhs: &Q) -> Q {
        self * &rhs.inv().expect("rational division by zero")
    }
}

impl Div<Q> for Q {
    type Output = Q;
    fn div(self, rhs: Q) -> Q {
        &self / &rhs
    }
}
