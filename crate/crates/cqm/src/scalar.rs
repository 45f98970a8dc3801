//! Exact scalar coefficients: arbitrary-precision rationals and the
//! quadratic extension Q(sqrt 2) needed for motions with 45-degree poses.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact coefficient field for the whole pipeline.
///
/// Everything downstream (polynomials, matrices, pencils) is generic over
/// this trait so that scenes with sqrt(2) coefficients run through the same
/// code path as plain rational scenes.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_rat(r: &Rat) -> Self;

    /// Exact sign: -1, 0 or +1.
    fn signum(&self) -> i8;

    fn to_f64(&self) -> f64;

    /// Exact rational value when the element lies in Q.
    fn as_rat(&self) -> Option<Rat>;

    fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn signum(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            // Fall back through a scaled division for extreme magnitudes.
            let n = self.numer().to_f64().unwrap_or(f64::MAX);
            let d = self.denom().to_f64().unwrap_or(f64::MAX);
            n / d
        })
    }

    fn as_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
}

/// Element of Q(sqrt 2): `a + b*sqrt(2)` with exact rational parts.
#[derive(Clone, PartialEq, Debug)]
pub struct Ext {
    pub a: Rat,
    pub b: Rat,
}

impl Ext {
    pub fn new(a: Rat, b: Rat) -> Self {
        Ext { a, b }
    }

    pub fn from_parts(a: &Rat, b: &Rat) -> Self {
        Ext {
            a: a.clone(),
            b: b.clone(),
        }
    }

    /// Conjugate `a - b*sqrt(2)`.
    pub fn conj(&self) -> Self {
        Ext {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm `a^2 - 2 b^2`.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from_integer(BigInt::from(2)) * &self.b * &self.b
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*r2", self.b)
        } else if self.b.is_positive() {
            write!(f, "{}+{}*r2", self.a, self.b)
        } else {
            write!(f, "{}{}*r2", self.a, self.b)
        }
    }
}

impl Add for Ext {
    type Output = Ext;
    fn add(self, o: Ext) -> Ext {
        Ext {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
}

impl Sub for Ext {
    type Output = Ext;
    fn sub(self, o: Ext) -> Ext {
        Ext {
            a: self.a - o.a,
            b: self.b - o.b,
        }
    }
}

impl Mul for Ext {
    type Output = Ext;
    fn mul(self, o: Ext) -> Ext {
        let two = Rat::from_integer(BigInt::from(2));
        Ext {
            a: &self.a * &o.a + two * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Div for Ext {
    type Output = Ext;
    fn div(self, o: Ext) -> Ext {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in Q(sqrt2)");
        let c = o.conj();
        let p = self * c;
        Ext {
            a: p.a / n.clone(),
            b: p.b / n,
        }
    }
}

impl Neg for Ext {
    type Output = Ext;
    fn neg(self) -> Ext {
        Ext {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Zero for Ext {
    fn zero() -> Self {
        Ext {
            a: Rat::zero(),
            b: Rat::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Ext {
    fn one() -> Self {
        Ext {
            a: Rat::one(),
            b: Rat::zero(),
        }
    }
}

impl Scalar for Ext {
    fn from_rat(r: &Rat) -> Self {
        Ext {
            a: r.clone(),
            b: Rat::zero(),
        }
    }

    fn signum(&self) -> i8 {
        let sa = Scalar::signum(&self.a);
        let sb = Scalar::signum(&self.b);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // Signs differ: compare |a| with |b|*sqrt(2) via squares.
        // a^2 > 2 b^2  <=>  the `a` part dominates.
        match Scalar::signum(&self.norm()) {
            1 => sa,
            -1 => sb,
            // norm = 0 with nonzero parts is impossible (sqrt2 irrational)
            _ => 0,
        }
    }

    fn to_f64(&self) -> f64 {
        Scalar::to_f64(&self.a) + Scalar::to_f64(&self.b) * std::f64::consts::SQRT_2
    }

    fn as_rat(&self) -> Option<Rat> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_sign_mixed_parts() {
        // 3 - 2*sqrt2 ≈ 0.17 > 0
        let x = Ext::new(rat_int(3), rat_int(-2));
        assert_eq!(x.signum(), 1);
        let y = Ext::new(rat_int(2), rat_int(-2));
        assert_eq!(y.signum(), -1);
        // -1 + (5/7) sqrt2 ≈ 0.01 > 0
        let z = Ext::new(rat_int(-1), rat(5, 7));
        assert_eq!(z.signum(), 1);
        assert!(z.to_f64() > 0.0);
    }

    #[test]
    fn ext_field_ops() {
        let x = Ext::new(rat_int(1), rat_int(1));
        let y = x.clone() * x.clone(); // (1+r2)^2 = 3 + 2 r2
        assert_eq!(y, Ext::new(rat_int(3), rat_int(2)));
        let q = y / x.clone();
        assert_eq!(q, x);
    }
}
