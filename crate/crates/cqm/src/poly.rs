//! Univariate polynomials with exact coefficients.
//!
//! Coefficients live in an exact field (`Rat` or `Ext`), stored in ascending
//! power order with the leading coefficient nonzero. A light variable tag
//! records whether the polynomial is in time `t`, pencil parameter `lambda`
//! or line parameter `u`; it only affects printing and debug assertions.

use crate::scalar::{Rat, Scalar};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Semantic label for the indeterminate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    T,
    Lambda,
    U,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T => write!(f, "t"),
            Var::Lambda => write!(f, "λ"),
            Var::U => write!(f, "u"),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly<T: Scalar> {
    /// coeffs[i] multiplies var^i; empty means the zero polynomial.
    pub coeffs: Vec<T>,
    pub var: Var,
}

pub type RatPoly = UniPoly<Rat>;

impl<T: Scalar> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>, var: Var) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs, var }
    }

    pub fn zero(var: Var) -> Self {
        UniPoly { coeffs: vec![], var }
    }

    pub fn constant(c: T, var: Var) -> Self {
        Self::new(vec![c], var)
    }

    pub fn one(var: Var) -> Self {
        Self::constant(T::one(), var)
    }

    /// The monomial `c * var^k`.
    pub fn monomial(c: T, k: usize, var: Var) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs, var)
    }

    pub fn from_rats(cs: &[Rat], var: Var) -> Self {
        Self::new(cs.iter().map(T::from_rat).collect(), var)
    }

    pub fn from_ints(cs: &[i64], var: Var) -> Self {
        Self::new(
            cs.iter()
                .map(|&n| T::from_rat(&Rat::from_integer(n.into())))
                .collect(),
            var,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rat) -> T {
        self.eval(&T::from_rat(x))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64();
        }
        acc
    }

    pub fn sign_at_rat(&self, x: &Rat) -> i8 {
        self.eval_rat(x).signum()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(self.var);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let k = T::from_rat(&Rat::from_integer((i as i64).into()));
            out.push(c.clone() * k);
        }
        Self::new(out, self.var)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(
            self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            self.var,
        )
    }

    /// Leading coefficient made 1 (zero polynomial unchanged).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Self::new(
            self.coeffs.iter().map(|a| a.clone() / l.clone()).collect(),
            self.var,
        )
    }

    pub fn with_var(&self, var: Var) -> Self {
        UniPoly {
            coeffs: self.coeffs.clone(),
            var,
        }
    }

    /// Euclidean division; panics only if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.coeffs.clone();
        let dd = d.degree() as usize;
        if self.degree() < d.degree() {
            return (Self::zero(self.var), self.clone());
        }
        let mut q = vec![T::zero(); r.len() - dd];
        let dl = d.lead();
        let mut k = r.len();
        while k > dd {
            k -= 1;
            if r[k].is_zero() {
                continue;
            }
            let c = r[k].clone() / dl.clone();
            let shift = k - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[shift + i] = r[shift + i].clone() - c.clone() * dc.clone();
            }
            q[shift] = c;
        }
        (Self::new(q, self.var), Self::new(r, self.var))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd via the Euclidean algorithm (coefficients form a field).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free part `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> Self {
        if self.degree() <= 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() <= 0 {
            self.monic()
        } else {
            self.div_exact(&g).monic()
        }
    }

    /// Yun square-free decomposition: returns `(f_i, i)` with
    /// `p = lc * prod f_i^i`, the `f_i` monic, square-free and pairwise
    /// coprime (entries with `f_i = 1` omitted).
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree() <= 0 {
            return out;
        }
        let p = self.monic();
        let dp = p.derivative();
        let a0 = p.gcd(&dp);
        if a0.degree() == 0 {
            out.push((p, 1));
            return out;
        }
        let mut b = p.div_exact(&a0);
        let mut c = dp.div_exact(&a0);
        let mut i = 1u32;
        loop {
            let d = c.sub_poly(&b.derivative());
            if b.degree() == 0 {
                break;
            }
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a);
            c = d.div_exact(&a);
            i += 1;
        }
        out
    }

    fn sub_poly(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }

    /// Composition p(q(x)).
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero(q.var);
        for c in self.coeffs.iter().rev() {
            acc = acc * q.clone() + Self::constant(c.clone(), q.var);
        }
        acc
    }

    /// p(x + a): Taylor shift.
    pub fn shift(&self, a: &T) -> Self {
        // Horner on (x + a)
        let lin = Self::new(vec![a.clone(), T::one()], self.var);
        self.compose(&lin)
    }

    /// p(c * x).
    pub fn scale_var(&self, c: &T) -> Self {
        let mut pow = T::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * pow.clone());
            pow = pow * c.clone();
        }
        Self::new(out, self.var)
    }

    /// x^n * p(1/x) with n = deg p.
    pub fn reverse(&self) -> Self {
        let mut out = self.coeffs.clone();
        out.reverse();
        Self::new(out, self.var)
    }

    /// Number of sign variations in the coefficient sequence.
    pub fn sign_variations(&self) -> usize {
        let mut v = 0;
        let mut last = 0i8;
        for c in &self.coeffs {
            let s = c.signum();
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// Resultant of two polynomials in this variable (scalar result),
    /// via the subresultant-free Euclidean formula over a field.
    pub fn resultant_scalar(&self, other: &Self) -> T {
        let mut a = self.clone();
        let mut b = other.clone();
        if a.is_zero() || b.is_zero() {
            return T::zero();
        }
        let mut res = T::one();
        loop {
            if b.degree() == 0 {
                // res *= lc(b)^deg(a)
                let mut p = T::one();
                for _ in 0..a.degree() {
                    p = p * b.lead();
                }
                return res * p;
            }
            let r = a.div_rem(&b).1;
            if r.is_zero() {
                return T::zero();
            }
            // res(a,b) = (-1)^(da*db) * lc(b)^(da - dr) * res(b, r)
            let da = a.degree();
            let db = b.degree();
            let dr = r.degree();
            if (da * db) % 2 == 1 {
                res = -res;
            }
            let mut p = T::one();
            for _ in 0..(da - dr) {
                p = p * b.lead();
            }
            res = res * p;
            a = b;
            b = r;
        }
    }
}

impl<T: Scalar> Add for UniPoly<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
            let b = o.coeffs.get(i).cloned().unwrap_or_else(T::zero);
            out.push(a + b);
        }
        Self::new(out, self.var)
    }
}

impl<T: Scalar> Sub for UniPoly<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Scalar> Neg for UniPoly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect(), self.var)
    }
}

impl<T: Scalar> Mul for UniPoly<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.var);
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out, self.var)
    }
}

impl<T: Scalar> fmt::Display for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", c)?;
            } else if i == 1 {
                write!(f, "({})*{}", c, self.var)?;
            } else {
                write!(f, "({})*{}^{}", c, self.var, i)?;
            }
        }
        Ok(())
    }
}

/// Polynomial in a main variable whose coefficients are polynomials in `t`.
/// Used for f(λ;t), g(u;t) and friends.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly2<T: Scalar> {
    /// coeffs[i] multiplies main^i; each entry is a polynomial in t.
    pub coeffs: Vec<UniPoly<T>>,
    pub main: Var,
}

impl<T: Scalar> Poly2<T> {
    pub fn new(mut coeffs: Vec<UniPoly<T>>, main: Var) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly2 { coeffs, main }
    }

    pub fn zero(main: Var) -> Self {
        Poly2 {
            coeffs: vec![],
            main,
        }
    }

    pub fn constant(c: UniPoly<T>, main: Var) -> Self {
        Self::new(vec![c], main)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, k: usize) -> UniPoly<T> {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| UniPoly::zero(Var::T))
    }

    pub fn lead(&self) -> UniPoly<T> {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| UniPoly::zero(Var::T))
    }

    /// Partial derivative in the main variable.
    pub fn derivative_main(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(self.main);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let k = T::from_rat(&Rat::from_integer((i as i64).into()));
            out.push(c.scale(&k));
        }
        Self::new(out, self.main)
    }

    /// Specialize t to a rational value, producing a polynomial in `main`.
    pub fn eval_t(&self, t: &Rat) -> UniPoly<T> {
        UniPoly::new(
            self.coeffs.iter().map(|c| c.eval_rat(t)).collect(),
            self.main,
        )
    }

    pub fn eval_t_f64(&self, t: f64) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.eval_f64(t)).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + o.coeff(i));
        }
        Self::new(out, self.main)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - o.coeff(i));
        }
        Self::new(out, self.main)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.main);
        }
        let mut out = vec![UniPoly::zero(Var::T); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out, self.main)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect(), self.main)
    }
}

/// Resultant of `p` and `q` with respect to their main variable; the result
/// is a polynomial in `t`. Computed as the Sylvester determinant by
/// fraction-free Bareiss elimination over the coefficient ring.
pub fn resultant<T: Scalar>(p: &Poly2<T>, q: &Poly2<T>) -> Result<UniPoly<T>, DegenerateInput> {
    if p.is_zero() && q.is_zero() {
        return Err(DegenerateInput);
    }
    if p.is_zero() || q.is_zero() {
        return Ok(UniPoly::zero(Var::T));
    }
    let m = p.degree() as usize;
    let n = q.degree() as usize;
    if m == 0 && n == 0 {
        return Ok(UniPoly::one(Var::T));
    }
    // Sylvester matrix: n rows of p's coefficients, m rows of q's.
    let size = m + n;
    let mut s = vec![vec![UniPoly::<T>::zero(Var::T); size]; size];
    for r in 0..n {
        for k in 0..=m {
            s[r][r + k] = p.coeff(m - k);
        }
    }
    for r in 0..m {
        for k in 0..=n {
            s[n + r][r + k] = q.coeff(n - k);
        }
    }
    Ok(bareiss_det(s))
}

/// Marker error for identically-zero inputs where a resultant or
/// discriminant is meaningless.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegenerateInput;

impl fmt::Display for DegenerateInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degenerate input: polynomial identically zero")
    }
}

impl std::error::Error for DegenerateInput {}

/// Fraction-free determinant of a square matrix of polynomials.
pub fn bareiss_det<T: Scalar>(mut m: Vec<Vec<UniPoly<T>>>) -> UniPoly<T> {
    let n = m.len();
    if n == 0 {
        return UniPoly::one(Var::T);
    }
    let mut sign = 1i8;
    let mut prev = UniPoly::<T>::one(Var::T);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // pivot search
            let mut found = None;
            for r in k + 1..n {
                if !m[r][k].is_zero() {
                    found = Some(r);
                    break;
                }
            }
            match found {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return UniPoly::zero(Var::T),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num =
                    m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num.div_exact(&prev);
            }
            m[i][k] = UniPoly::zero(Var::T);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Discriminant of `p` in its main variable, as resultant(p, p') / lc(p).
///
/// The division by the leading coefficient is exact. Instants where the
/// leading coefficient itself vanishes (degree drop) are *not* roots of this
/// normalized discriminant; callers that need them (candidate searches) use
/// `resultant(p, p')` directly, which keeps the lc factor.
pub fn discriminant<T: Scalar>(p: &Poly2<T>) -> Result<UniPoly<T>, DegenerateInput> {
    if p.is_zero() {
        return Err(DegenerateInput);
    }
    if p.degree() < 1 {
        return Err(DegenerateInput);
    }
    let r = resultant(p, &p.derivative_main())?;
    let d = p.degree();
    // sign (-1)^(d(d-1)/2)
    let s = (d * (d - 1) / 2) % 2;
    let q = divide_by_lead(&r, &p.lead());
    Ok(if s == 1 { -q } else { q })
}

fn divide_by_lead<T: Scalar>(r: &UniPoly<T>, lc: &UniPoly<T>) -> UniPoly<T> {
    if r.is_zero() {
        return r.clone();
    }
    if lc.degree() == 0 {
        let c = lc.coeff(0);
        return UniPoly::new(
            r.coeffs.iter().map(|a| a.clone() / c.clone()).collect(),
            r.var,
        );
    }
    r.div_exact(lc)
}

/// Discriminant of a scalar-coefficient polynomial.
pub fn discriminant_scalar<T: Scalar>(p: &UniPoly<T>) -> Result<T, DegenerateInput> {
    if p.degree() < 1 {
        return Err(DegenerateInput);
    }
    let r = p.resultant_scalar(&p.derivative());
    let d = p.degree();
    let s = (d * (d - 1) / 2) % 2;
    let q = r / p.lead();
    Ok(if s == 1 { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn p(cs: &[i64]) -> RatPoly {
        RatPoly::from_ints(cs, Var::T)
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = p(&[2, 0, -3, 1, 5]);
        let b = p(&[1, 4, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q * b + r, a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = p(&[-1, 1]); // t - 1
        let a = f.clone() * p(&[3, 1]);
        let b = f.clone() * p(&[7, 0, 2]);
        assert_eq!(a.gcd(&b), f.monic());
    }

    #[test]
    fn squarefree_decomposition_shape() {
        // (t-1)^2 (t+2)^3
        let f = p(&[-1, 1]);
        let g = p(&[2, 1]);
        let h = f.clone() * f.clone() * g.clone() * g.clone() * g.clone();
        let d = h.squarefree_decomposition();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0], (f.monic(), 2));
        assert_eq!(d[1], (g.monic(), 3));
    }

    #[test]
    fn quadratic_discriminant_is_b2_minus_4ac() {
        // a u^2 + b u + c with (a,b,c)=(3,5,-7): disc = 25 + 84 = 109
        let q = UniPoly::<Rat>::from_ints(&[-7, 5, 3], Var::U);
        let d = discriminant_scalar(&q).unwrap();
        assert_eq!(d, rat_int(109));
    }

    #[test]
    fn resultant_detects_common_root() {
        // p = λ - c, q = λ - c
        let c = rat(3, 2);
        let pc = Poly2::new(
            vec![
                UniPoly::constant(-c.clone(), Var::T),
                UniPoly::one(Var::T),
            ],
            Var::Lambda,
        );
        let r = resultant(&pc, &pc.clone()).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn resultant_rejects_double_zero() {
        let z = Poly2::<Rat>::zero(Var::Lambda);
        assert!(resultant(&z, &z).is_err());
    }
}
