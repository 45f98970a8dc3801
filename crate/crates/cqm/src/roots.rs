//! Real-root isolation and exact sign evaluation at algebraic numbers.
//!
//! Isolation uses Descartes' rule of signs with interval bisection on the
//! square-free factors, so every interval is certified to hold exactly one
//! root of its defining factor. Rational roots are pulled out exactly first.

use crate::poly::UniPoly;
use crate::scalar::{Rat, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Default refinement width for time roots.
pub fn eps_time() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(1_000_000_000i64))
}

/// Default refinement width for pencil-parameter roots.
pub fn eps_lambda() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(10_000_000_000i64))
}

/// Isolating interval for one real root.
///
/// Invariants: `lo <= hi`; the defining (square-free) polynomial has exactly
/// one root in `[lo, hi]`, of the recorded multiplicity in the original
/// polynomial; intervals returned together are pairwise disjoint. When the
/// root is rational, `exact` is set and `lo == hi == root`.
#[derive(Clone, Debug)]
pub struct RootInterval<T: Scalar> {
    pub lo: Rat,
    pub hi: Rat,
    pub multiplicity: u32,
    pub exact: Option<Rat>,
    /// Square-free polynomial this interval isolates a root of.
    pub defining: UniPoly<T>,
}

impl<T: Scalar> RootInterval<T> {
    pub fn exact_rat(r: Rat, multiplicity: u32, defining: UniPoly<T>) -> Self {
        RootInterval {
            lo: r.clone(),
            hi: r.clone(),
            multiplicity,
            exact: Some(r),
            defining,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn to_f64(&self) -> f64 {
        match &self.exact {
            Some(r) => Scalar::to_f64(r),
            None => Scalar::to_f64(&self.mid()),
        }
    }

    /// Bisect until the width drops below `eps`.
    pub fn refine(&mut self, eps: &Rat) {
        if self.exact.is_some() {
            return;
        }
        let two = Rat::from_integer(2.into());
        while self.width() >= *eps {
            let m = (&self.lo + &self.hi) / two.clone();
            let sm = self.defining.sign_at_rat(&m);
            if sm == 0 {
                self.exact = Some(m.clone());
                self.lo = m.clone();
                self.hi = m;
                return;
            }
            let slo = self.defining.sign_at_rat(&self.lo);
            if slo != 0 && sm != slo {
                self.hi = m;
            } else {
                self.lo = m;
            }
        }
    }

    /// True if the two intervals certainly enclose the same real number.
    /// Refines both; falls back to a gcd test when they keep overlapping.
    pub fn same_root(&mut self, other: &mut RootInterval<T>) -> bool {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return a == b;
        }
        for _ in 0..4 {
            if self.hi < other.lo || other.hi < self.lo {
                return false;
            }
            let w = self.width().min(other.width());
            if w.is_zero() {
                break;
            }
            let eps = w / Rat::from_integer(16.into());
            self.refine(&eps);
            other.refine(&eps);
        }
        if self.hi < other.lo || other.hi < self.lo {
            return false;
        }
        // Overlapping after refinement: equal iff the defining polynomials
        // share the root, i.e. gcd has a root in the overlap.
        let g = self.defining.gcd(&other.defining);
        if g.degree() < 1 {
            // No common factor: keep refining until separated.
            loop {
                let eps = self.width().min(other.width()) / Rat::from_integer(4.into());
                if eps.is_zero() {
                    return self.exact == other.exact && self.exact.is_some();
                }
                self.refine(&eps);
                other.refine(&eps);
                if self.hi < other.lo || other.hi < self.lo {
                    return false;
                }
            }
        }
        let lo = if self.lo > other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi < other.hi { &self.hi } else { &other.hi };
        count_roots_in(&g, lo, hi) > 0
    }
}

impl<T: Scalar> fmt::Display for RootInterval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(r) => write!(f, "{} (exact)", r),
            None => write!(f, "[{}, {}]", self.lo, self.hi),
        }
    }
}

/// Isolate all real roots of `p` in the closed range `[lo, hi]`.
///
/// Panics if `p` is identically zero.
pub fn isolate_real_roots<T: Scalar>(p: &UniPoly<T>, lo: &Rat, hi: &Rat) -> Vec<RootInterval<T>> {
    assert!(!p.is_zero(), "cannot isolate roots of the zero polynomial");
    let mut out: Vec<RootInterval<T>> = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        for iv in isolate_squarefree(&factor, lo, hi) {
            out.push(RootInterval {
                multiplicity: mult,
                ..iv
            });
        }
    }
    // Disjointness across coprime factors: refine overlapping pairs apart.
    separate(&mut out);
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Real roots of multiplicity >= 2, from the square-free decomposition.
pub fn multiple_roots<T: Scalar>(p: &UniPoly<T>, lo: &Rat, hi: &Rat) -> Vec<RootInterval<T>> {
    isolate_real_roots(p, lo, hi)
        .into_iter()
        .filter(|r| r.multiplicity >= 2)
        .collect()
}

fn separate<T: Scalar>(roots: &mut [RootInterval<T>]) {
    let n = roots.len();
    loop {
        let mut any = false;
        for i in 0..n {
            for j in i + 1..n {
                let disjoint = roots[i].hi < roots[j].lo || roots[j].hi < roots[i].lo;
                if !disjoint {
                    let wi = roots[i].width();
                    let wj = roots[j].width();
                    let w = if wi > wj { wi } else { wj };
                    if w.is_zero() {
                        // Two exact equal roots can only come from the same
                        // factor; the decomposition makes that impossible.
                        continue;
                    }
                    let eps = w / Rat::from_integer(4.into());
                    roots[i].refine(&eps);
                    roots[j].refine(&eps);
                    any = true;
                }
            }
        }
        if !any {
            return;
        }
    }
}

/// Isolation for a square-free polynomial on a closed interval.
fn isolate_squarefree<T: Scalar>(p: &UniPoly<T>, lo: &Rat, hi: &Rat) -> Vec<RootInterval<T>> {
    let mut out = Vec::new();
    if p.degree() < 1 || lo > hi {
        return out;
    }
    let mut q = p.clone();
    // Endpoint roots (closed interval semantics).
    for end in [lo, hi] {
        if q.sign_at_rat(end) == 0 {
            out.push(RootInterval::exact_rat(end.clone(), 1, p.clone()));
            let lin = UniPoly::new(vec![-T::from_rat(end), T::one()], p.var);
            q = q.div_exact(&lin);
        }
    }
    if lo == hi {
        return out;
    }
    // Rational roots of the interior, removed exactly.
    for r in rational_roots(&q) {
        if r > *lo && r < *hi {
            out.push(RootInterval::exact_rat(r.clone(), 1, p.clone()));
        }
        let lin = UniPoly::new(vec![-T::from_rat(&r), T::one()], p.var);
        q = q.div_exact(&lin);
    }
    descartes_isolate(&q, p, lo, hi, &mut out);
    out
}

/// Descartes bisection on the open interval (lo, hi); q has no rational
/// roots there and no roots at the endpoints.
fn descartes_isolate<T: Scalar>(
    q: &UniPoly<T>,
    defining: &UniPoly<T>,
    lo: &Rat,
    hi: &Rat,
    out: &mut Vec<RootInterval<T>>,
) {
    if q.degree() < 1 {
        return;
    }
    let v = sign_variations_on(q, lo, hi);
    if v == 0 {
        return;
    }
    if v == 1 {
        out.push(RootInterval {
            lo: lo.clone(),
            hi: hi.clone(),
            multiplicity: 1,
            exact: None,
            defining: defining.clone(),
        });
        return;
    }
    let mid = (lo + hi) / Rat::from_integer(2.into());
    if q.sign_at_rat(&mid) == 0 {
        // A rational root the divisor search missed; split it off exactly.
        out.push(RootInterval::exact_rat(mid.clone(), 1, defining.clone()));
        let lin = UniPoly::new(vec![-T::from_rat(&mid), T::one()], q.var);
        let q2 = q.div_exact(&lin);
        descartes_isolate(&q2, defining, lo, &mid, out);
        descartes_isolate(&q2, defining, &mid, hi, out);
        return;
    }
    descartes_isolate(q, defining, lo, &mid, out);
    descartes_isolate(q, defining, &mid, hi, out);
}

/// Descartes sign-variation bound for the number of roots in (lo, hi):
/// variations of (1+x)^n q((lo + hi x)/(1 + x)).
fn sign_variations_on<T: Scalar>(q: &UniPoly<T>, lo: &Rat, hi: &Rat) -> usize {
    // q(x) -> q(x + lo) -> scale by (hi - lo) -> reverse -> shift by 1
    let shifted = q.shift(&T::from_rat(lo));
    let scaled = shifted.scale_var(&T::from_rat(&(hi - lo)));
    let rev = scaled.reverse();
    let m = rev.shift(&T::one());
    m.sign_variations()
}

/// Number of real roots of a square-free polynomial in the closed interval,
/// by bisection with Descartes counts (used on gcds during sign queries).
pub fn count_roots_in<T: Scalar>(g: &UniPoly<T>, lo: &Rat, hi: &Rat) -> usize {
    if g.degree() < 1 {
        return 0;
    }
    let mut n = 0;
    if g.sign_at_rat(lo) == 0 {
        n += 1;
    }
    if hi > lo && g.sign_at_rat(hi) == 0 {
        n += 1;
    }
    let g2 = g.squarefree_part();
    n + count_open(&g2, lo, hi)
}

pub(crate) fn count_open<T: Scalar>(g: &UniPoly<T>, lo: &Rat, hi: &Rat) -> usize {
    if lo >= hi {
        return 0;
    }
    let v = sign_variations_on(g, lo, hi);
    if v <= 1 {
        return v;
    }
    let mid = (lo + hi) / Rat::from_integer(2.into());
    let at_mid = if g.sign_at_rat(&mid) == 0 { 1 } else { 0 };
    at_mid + count_open(g, lo, &mid) + count_open(g, &mid, hi)
}

/// Rational roots of a polynomial over Q, by the rational-root theorem on
/// the integer-cleared form. Only meaningful for `Rat`-like coefficients;
/// extension coefficients return no candidates (their rational roots are
/// still found by the bisection hitting dyadic points, or left isolated).
fn rational_roots<T: Scalar>(p: &UniPoly<T>) -> Vec<Rat> {
    let mut rats: Vec<Rat> = Vec::new();
    for c in &p.coeffs {
        match c.as_rat() {
            Some(r) => rats.push(r),
            None => return vec![],
        }
    }
    if rats.len() < 2 {
        return vec![];
    }
    // Clear denominators.
    let mut den = BigInt::one();
    for r in &rats {
        den = den.lcm(r.denom());
    }
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * Rat::from_integer(den.clone())).to_integer()).collect();
    // Strip trailing zero coefficients (roots at 0).
    let mut k = 0;
    while k < ints.len() && ints[k].is_zero() {
        k += 1;
    }
    let mut out = Vec::new();
    if k > 0 {
        out.push(Rat::zero());
    }
    if k >= ints.len() - 1 {
        return out;
    }
    let a0 = ints[k].clone();
    let an = ints.last().unwrap().clone();
    for p_div in small_divisors(&a0) {
        for q_div in small_divisors(&an) {
            for sgn in [1i64, -1] {
                let cand = Rat::new(p_div.clone() * BigInt::from(sgn), q_div.clone());
                if p.sign_at_rat(&cand) == 0 && !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
    }
    out
}

/// Divisors of |n|, capped: trial division up to 10^6 plus the cofactors.
/// Missing a rational root is harmless (it stays as an isolated interval).
fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut divs = vec![BigInt::one()];
    let mut d = BigInt::from(2);
    let cap = BigInt::from(1_000_000);
    while &d * &d <= n && d <= cap {
        while (&n % &d).is_zero() {
            n = &n / &d;
            let cur: Vec<BigInt> = divs.iter().map(|x| x * &d).collect();
            for c in cur {
                if !divs.contains(&c) {
                    divs.push(c);
                }
            }
        }
        d += 1;
    }
    if !n.is_one() {
        let cur: Vec<BigInt> = divs.iter().map(|x| x * &n).collect();
        for c in cur {
            if !divs.contains(&c) {
                divs.push(c);
            }
        }
    }
    divs
}

/// Error raised when a sign cannot be decided exactly.
#[derive(Debug, Clone, thiserror::Error)]
#[error("undecidable sign of polynomial at algebraic root")]
pub struct UndecidableSign;

/// Exact sign of `p` at the algebraic number described by `root`.
///
/// Zero detection goes through gcd(p, defining); otherwise the interval is
/// refined until `p` has constant sign across it.
pub fn sign_at<T: Scalar>(p: &UniPoly<T>, root: &RootInterval<T>) -> Result<i8, UndecidableSign> {
    if let Some(r) = &root.exact {
        return Ok(p.sign_at_rat(r));
    }
    if p.is_zero() {
        return Ok(0);
    }
    if p.is_constant() {
        return Ok(p.coeff(0).signum());
    }
    let g = p.gcd(&root.defining);
    if g.degree() >= 1 && count_roots_in(&g, &root.lo, &root.hi) > 0 {
        return Ok(0);
    }
    // p(root) != 0: refine until the interval is sign-definite for p.
    let mut iv = root.clone();
    for _ in 0..4096 {
        let slo = p.sign_at_rat(&iv.lo);
        let shi = p.sign_at_rat(&iv.hi);
        if slo == shi && slo != 0 && count_roots_in(&p.squarefree_part(), &iv.lo, &iv.hi) == 0 {
            return Ok(slo);
        }
        if let Some(r) = &iv.exact {
            return Ok(p.sign_at_rat(r));
        }
        let eps = iv.width() / Rat::from_integer(4.into());
        if eps.is_zero() {
            break;
        }
        iv.refine(&eps);
    }
    Err(UndecidableSign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RatPoly;
    use crate::scalar::{rat, rat_int};

    fn zero_one() -> (Rat, Rat) {
        (Rat::zero(), Rat::one())
    }

    #[test]
    fn constructed_rational_roots_are_exact() {
        // (t - 1/2)(t - 5/8)(t - 7/8)
        let f = RatPoly::new(vec![rat(-1, 2), rat_int(1)], Var::T)
            * RatPoly::new(vec![rat(-5, 8), rat_int(1)], Var::T)
            * RatPoly::new(vec![rat(-7, 8), rat_int(1)], Var::T);
        let (lo, hi) = zero_one();
        let roots = isolate_real_roots(&f, &lo, &hi);
        assert_eq!(roots.len(), 3);
        let vals: Vec<Rat> = roots.iter().map(|r| r.exact.clone().unwrap()).collect();
        assert_eq!(vals, vec![rat(1, 2), rat(5, 8), rat(7, 8)]);
    }

    #[test]
    fn no_real_roots() {
        let f = RatPoly::from_ints(&[1, 0, 1], Var::T); // t^2 + 1
        let (lo, hi) = zero_one();
        assert!(isolate_real_roots(&f, &lo, &hi).is_empty());
    }

    #[test]
    fn multiplicities_from_decomposition() {
        // λ (λ-1)^2 -> multiple root at 1 with multiplicity 2
        let f = RatPoly::from_ints(&[0, 1], Var::Lambda)
            * RatPoly::from_ints(&[-1, 1], Var::Lambda)
            * RatPoly::from_ints(&[-1, 1], Var::Lambda);
        let lo = rat_int(-10);
        let hi = rat_int(10);
        let m = multiple_roots(&f, &lo, &hi);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].exact, Some(rat_int(1)));
        assert_eq!(m[0].multiplicity, 2);
        // -λ(λ-1)^3
        let f3 = -(RatPoly::from_ints(&[0, 1], Var::Lambda)
            * RatPoly::from_ints(&[-1, 1], Var::Lambda)
            * RatPoly::from_ints(&[-1, 1], Var::Lambda)
            * RatPoly::from_ints(&[-1, 1], Var::Lambda));
        let m3 = multiple_roots(&f3, &lo, &hi);
        assert_eq!(m3.len(), 1);
        assert_eq!(m3[0].multiplicity, 3);
    }

    #[test]
    fn paper_quartic_has_no_multiple_root() {
        // -(16λ-1)(256λ^2+112λ+1)
        let f = -(RatPoly::from_ints(&[-1, 16], Var::Lambda)
            * RatPoly::from_ints(&[1, 112, 256], Var::Lambda));
        let lo = rat_int(-100);
        let hi = rat_int(100);
        assert!(multiple_roots(&f, &lo, &hi).is_empty());
    }

    #[test]
    fn sign_at_algebraic_root() {
        // root of q = t^2 - 2 in [1,2]; p = t - 1 should be positive there
        let q = RatPoly::from_ints(&[-2, 0, 1], Var::T);
        let roots = isolate_real_roots(&q, &rat_int(1), &rat_int(2));
        assert_eq!(roots.len(), 1);
        let r = &roots[0];
        let p = RatPoly::from_ints(&[-1, 1], Var::T);
        assert_eq!(sign_at(&p, r).unwrap(), 1);
        // p = q -> zero
        assert_eq!(sign_at(&q, r).unwrap(), 0);
        // p = 2t^2 - 4 (proportional) -> zero
        let p2 = RatPoly::from_ints(&[-4, 0, 2], Var::T);
        assert_eq!(sign_at(&p2, r).unwrap(), 0);
        // p = t - 3/2 -> sqrt2 < 3/2 is false, sqrt2 ≈ 1.414 < 1.5 -> negative
        let p3 = RatPoly::new(vec![rat(-3, 2), rat_int(1)], Var::T);
        assert_eq!(sign_at(&p3, r).unwrap(), -1);
    }

    #[test]
    fn sign_at_exact_root() {
        let q = RatPoly::from_ints(&[-1, 2], Var::T); // 2t - 1
        let roots = isolate_real_roots(&q, &Rat::zero(), &Rat::one());
        let r = &roots[0];
        assert_eq!(r.exact, Some(rat(1, 2)));
        let p = RatPoly::from_ints(&[-1, 1], Var::T); // t - 1
        assert_eq!(sign_at(&p, r).unwrap(), -1);
    }
}
