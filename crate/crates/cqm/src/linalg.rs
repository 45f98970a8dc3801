//! Dense small-matrix algebra over exact scalars and over polynomial rings.
//!
//! Matrices are square, tiny (2..=5) and stored row-major. The same routines
//! serve plain scalar matrices and matrices of polynomials in `t` (moving
//! quadrics) or in a root variable (evaluation at algebraic numbers).

use crate::poly::{UniPoly, Var};
use crate::roots::{sign_at, RootInterval, UndecidableSign};
use crate::scalar::{Rat, Scalar};
use num_traits::Zero;
use std::ops::{Add, Mul, Neg, Sub};

/// Ring of matrix entries: exact scalars or polynomials over them.
pub trait RingElem:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn one_elem() -> Self;
    /// Exact division, panicking if not divisible (used by Bareiss).
    fn exact_div(&self, d: &Self) -> Self;
}

impl<T: Scalar> RingElem for T {
    fn one_elem() -> Self {
        T::one()
    }
    fn exact_div(&self, d: &Self) -> Self {
        self.clone() / d.clone()
    }
}

impl<T: Scalar> Zero for UniPoly<T> {
    fn zero() -> Self {
        UniPoly::zero(Var::T)
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
}

impl<T: Scalar> RingElem for UniPoly<T> {
    fn one_elem() -> Self {
        UniPoly::one(Var::T)
    }
    fn exact_div(&self, d: &Self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.div_exact(d)
    }
}

/// Square matrix of ring elements.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<E: RingElem> {
    pub n: usize,
    pub e: Vec<E>,
}

pub type MatS<T> = Mat<T>;
pub type MatP<T> = Mat<UniPoly<T>>;

impl<E: RingElem> Mat<E> {
    pub fn zero(n: usize) -> Self {
        Mat {
            n,
            e: vec![E::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m[(i, i)] = E::one_elem();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n));
        Mat {
            n,
            e: rows.into_iter().flatten().collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn matmul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut m = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = E::zero();
                for k in 0..self.n {
                    acc = acc + self[(i, k)].clone() * o[(k, j)].clone();
                }
                m[(i, j)] = acc;
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut acc = E::zero();
                for k in 0..self.n {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    pub fn add_mat(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut m = Self::zero(self.n);
        for i in 0..self.n * self.n {
            m.e[i] = self.e[i].clone() + o.e[i].clone();
        }
        m
    }

    pub fn sub_mat(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut m = Self::zero(self.n);
        for i in 0..self.n * self.n {
            m.e[i] = self.e[i].clone() - o.e[i].clone();
        }
        m
    }

    pub fn scale_by(&self, c: &E) -> Self {
        let mut m = Self::zero(self.n);
        for i in 0..self.n * self.n {
            m.e[i] = self.e[i].clone() * c.clone();
        }
        m
    }

    pub fn neg_mat(&self) -> Self {
        let mut m = Self::zero(self.n);
        for i in 0..self.n * self.n {
            m.e[i] = -self.e[i].clone();
        }
        m
    }

    pub fn is_zero_mat(&self) -> bool {
        self.e.iter().all(|x| x.is_zero())
    }

    pub fn minor(&self, row: usize, col: usize) -> Self {
        let n = self.n;
        let mut m = Self::zero(n - 1);
        let mut r = 0;
        for i in 0..n {
            if i == row {
                continue;
            }
            let mut c = 0;
            for j in 0..n {
                if j == col {
                    continue;
                }
                m[(r, c)] = self[(i, j)].clone();
                c += 1;
            }
            r += 1;
        }
        m
    }

    /// Determinant by cofactor expansion (n <= 5 in practice).
    pub fn det(&self) -> E {
        match self.n {
            0 => E::one_elem(),
            1 => self[(0, 0)].clone(),
            2 => {
                self[(0, 0)].clone() * self[(1, 1)].clone()
                    - self[(0, 1)].clone() * self[(1, 0)].clone()
            }
            _ => {
                let mut acc = E::zero();
                for j in 0..self.n {
                    if self[(0, j)].is_zero() {
                        continue;
                    }
                    let c = self[(0, j)].clone() * self.minor(0, j).det();
                    acc = if j % 2 == 0 { acc + c } else { acc - c };
                }
                acc
            }
        }
    }

    /// Adjugate: `M * adj(M) = det(M) * I`.
    pub fn adjugate(&self) -> Self {
        let n = self.n;
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(j, i).det();
                m[(i, j)] = if (i + j) % 2 == 0 { c } else { -c };
            }
        }
        m
    }

    /// Symmetric congruence `F^T * self * F`.
    pub fn congruence(&self, f: &Self) -> Self {
        f.transpose().matmul(self).matmul(f)
    }

    /// Characteristic polynomial det(x I - M) with coefficients in E,
    /// returned low-to-high. Uses Faddeev-LeVerrier-free expansion via
    /// Bareiss on the polynomial matrix is avoided; a direct cofactor
    /// expansion over E[x] keeps things simple at these sizes.
    pub fn char_poly_elems(&self) -> Vec<E> {
        // Represent entries of xI - M as degree<=1 polynomials over E,
        // stored as (const, lin) pairs, and expand the determinant.
        let n = self.n;
        let rows: Vec<Vec<(E, E)>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = -self[(i, j)].clone();
                        let l = if i == j { E::one_elem() } else { E::zero() };
                        (c, l)
                    })
                    .collect()
            })
            .collect();
        fn det_rec<E: RingElem>(rows: &[Vec<(E, E)>], cols: &[usize]) -> Vec<E> {
            if cols.len() == 1 {
                let (c, l) = rows[rows.len() - cols.len()][cols[0]].clone();
                return vec![c, l];
            }
            let r = rows.len() - cols.len();
            let mut acc: Vec<E> = vec![];
            for (k, &j) in cols.iter().enumerate() {
                let (c, l) = rows[r][j].clone();
                if c.is_zero() && l.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != k)
                    .map(|(_, &x)| x)
                    .collect();
                let sub = det_rec(rows, &rest);
                // term = (c + l x) * sub, sign (-1)^k
                let mut term = vec![E::zero(); sub.len() + 1];
                for (d, s) in sub.iter().enumerate() {
                    term[d] = term[d].clone() + c.clone() * s.clone();
                    term[d + 1] = term[d + 1].clone() + l.clone() * s.clone();
                }
                if k % 2 == 1 {
                    for x in &mut term {
                        *x = -x.clone();
                    }
                }
                if acc.len() < term.len() {
                    acc.resize(term.len(), E::zero());
                }
                for (d, x) in term.into_iter().enumerate() {
                    acc[d] = acc[d].clone() + x;
                }
            }
            if acc.is_empty() {
                acc.push(E::zero());
            }
            acc
        }
        let cols: Vec<usize> = (0..n).collect();
        det_rec(&rows, &cols)
    }
}

impl<E: RingElem> std::ops::Index<(usize, usize)> for Mat<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.e[i * self.n + j]
    }
}

impl<E: RingElem> std::ops::IndexMut<(usize, usize)> for Mat<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.e[i * self.n + j]
    }
}

/// Inertia (n_plus, n_minus, n_zero) of a symmetric scalar matrix, computed
/// exactly from sign variations of its characteristic polynomial (all roots
/// of a real symmetric matrix are real, so Descartes' rule is exact).
pub fn inertia<T: Scalar>(m: &Mat<T>) -> (usize, usize, usize) {
    let cs = m.char_poly_elems();
    inertia_from_char(&cs)
}

pub fn inertia_from_char<T: Scalar>(cs: &[T]) -> (usize, usize, usize) {
    let mut c = cs.to_vec();
    let mut n_zero = 0;
    while c.first().map_or(false, |x| x.is_zero()) {
        c.remove(0);
        n_zero += 1;
    }
    let signs: Vec<i8> = c.iter().map(|x| x.signum()).collect();
    let var = |s: &[i8]| {
        let mut v = 0;
        let mut last = 0i8;
        for &x in s {
            if x != 0 {
                if last != 0 && x != last {
                    v += 1;
                }
                last = x;
            }
        }
        v
    };
    let n_pos = var(&signs);
    let alt: Vec<i8> = signs
        .iter()
        .enumerate()
        .map(|(i, &s)| if i % 2 == 1 { -s } else { s })
        .collect();
    let n_neg = var(&alt);
    (n_pos, n_neg, n_zero)
}

/// Exact rank of a scalar matrix (not necessarily symmetric).
pub fn rank<T: Scalar>(m: &Mat<T>) -> usize {
    let mut a = m.clone();
    let n = a.n;
    let mut r = 0;
    let mut col = 0;
    while r < n && col < n {
        let piv = (r..n).find(|&i| !a[(i, col)].is_zero());
        match piv {
            None => {
                col += 1;
                continue;
            }
            Some(p) => {
                for j in 0..n {
                    let tmp = a[(p, j)].clone();
                    a[(p, j)] = a[(r, j)].clone();
                    a[(r, j)] = tmp;
                }
                let d = a[(r, col)].clone();
                for i in r + 1..n {
                    let f = a[(i, col)].clone() / d.clone();
                    for j in col..n {
                        a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                    }
                }
                r += 1;
                col += 1;
            }
        }
    }
    r
}

/// Basis of the right kernel of a scalar matrix.
pub fn null_space<T: Scalar>(m: &Mat<T>) -> Vec<Vec<T>> {
    let n = m.n;
    let mut a = m.clone();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == n {
            break;
        }
        let piv = (r..n).find(|&i| !a[(i, col)].is_zero());
        let Some(p) = piv else { continue };
        for j in 0..n {
            let tmp = a[(p, j)].clone();
            a[(p, j)] = a[(r, j)].clone();
            a[(r, j)] = tmp;
        }
        let d = a[(r, col)].clone();
        for j in 0..n {
            a[(r, j)] = a[(r, j)].clone() / d.clone();
        }
        for i in 0..n {
            if i != r && !a[(i, col)].is_zero() {
                let f = a[(i, col)].clone();
                for j in 0..n {
                    a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                }
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![T::zero(); n];
        v[free] = T::one();
        for &(pr, pc) in &pivots {
            v[pc] = -a[(pr, free)].clone();
        }
        basis.push(v);
    }
    basis
}

/// Rank of a matrix whose entries are polynomials in one algebraic number.
/// Entries are reduced modulo the root's defining polynomial; zero tests go
/// through exact sign evaluation.
pub fn rank_at_root<T: Scalar>(
    m: &MatP<T>,
    root: &RootInterval<T>,
) -> Result<usize, UndecidableSign> {
    let n = m.n;
    let red = |p: &UniPoly<T>| -> UniPoly<T> {
        if root.defining.degree() >= 1 {
            p.div_rem(&root.defining).1
        } else {
            p.clone()
        }
    };
    let mut a: Vec<Vec<UniPoly<T>>> = (0..n)
        .map(|i| (0..n).map(|j| red(&m[(i, j)])).collect())
        .collect();
    let is_zero = |p: &UniPoly<T>| -> Result<bool, UndecidableSign> {
        if p.is_zero() {
            return Ok(true);
        }
        Ok(sign_at(p, root)? == 0)
    };
    let mut r = 0;
    for col in 0..n {
        if r == n {
            break;
        }
        let mut piv = None;
        for i in r..n {
            if !is_zero(&a[i][col])? {
                piv = Some(i);
                break;
            }
        }
        let Some(p) = piv else { continue };
        a.swap(r, p);
        // Fraction-free row elimination: row_i = row_i * a[r][col] - row_r * a[i][col]
        for i in r + 1..n {
            let f = a[i][col].clone();
            if f.is_zero() {
                continue;
            }
            let d = a[r][col].clone();
            for j in 0..n {
                let v = a[i][j].clone() * d.clone() - a[r][j].clone() * f.clone();
                a[i][j] = red(&v);
            }
        }
        r += 1;
    }
    Ok(r)
}

/// Kernel basis of a polynomial matrix at an algebraic root (entries are
/// polynomials in the root variable, reduced mod the defining polynomial).
pub fn null_space_at_root<T: Scalar>(
    m: &MatP<T>,
    root: &RootInterval<T>,
) -> Result<Vec<Vec<UniPoly<T>>>, UndecidableSign> {
    let n = m.n;
    let red = |p: &UniPoly<T>| -> UniPoly<T> {
        if root.defining.degree() >= 1 {
            p.div_rem(&root.defining).1
        } else {
            p.clone()
        }
    };
    let mut a: Vec<Vec<UniPoly<T>>> = (0..n)
        .map(|i| (0..n).map(|j| red(&m[(i, j)])).collect())
        .collect();
    let is_zero = |p: &UniPoly<T>| -> Result<bool, UndecidableSign> {
        if p.is_zero() {
            return Ok(true);
        }
        Ok(sign_at(p, root)? == 0)
    };
    // Fraction-free reduced echelon: track pivot rows/cols, then back-solve
    // kernel vectors with polynomial entries scaled by pivot products.
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == n {
            break;
        }
        let mut piv = None;
        for i in r..n {
            if !is_zero(&a[i][col])? {
                piv = Some(i);
                break;
            }
        }
        let Some(p) = piv else { continue };
        a.swap(r, p);
        for i in 0..n {
            if i == r {
                continue;
            }
            let f = a[i][col].clone();
            if is_zero(&f)? {
                continue;
            }
            let d = a[r][col].clone();
            for j in 0..n {
                let v = a[i][j].clone() * d.clone() - a[r][j].clone() * f.clone();
                a[i][j] = red(&v);
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        // v[free] = prod of pivots, v[pc] = -a[pr][free] * (others' pivots)
        let mut v: Vec<UniPoly<T>> = vec![UniPoly::zero(Var::T); n];
        let mut prod = UniPoly::one(Var::T);
        for &(pr, pc) in &pivots {
            prod = red(&(prod * a[pr][pc].clone()));
            let _ = pc;
        }
        v[free] = prod;
        for &(pr, pc) in &pivots {
            let mut others = UniPoly::one(Var::T);
            for &(qr, qc) in &pivots {
                if qr != pr {
                    others = red(&(others * a[qr][qc].clone()));
                }
            }
            v[pc] = red(&(-(a[pr][free].clone()) * others));
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Jordan block sizes of the pencil eigenvalue `lam0` for matrices (A, B)
/// with det A != 0, via ranks of powers of N = (lam0 A - B) adj(A).
pub fn jordan_blocks_nonsingular<T: Scalar>(a: &Mat<T>, b: &Mat<T>, lam0: &T) -> Vec<u32> {
    let n = a.n;
    let m0 = a.scale_by(lam0).sub_mat(b);
    let nmat = m0.matmul(&a.adjugate());
    let mut ranks = vec![n];
    let mut p = Mat::identity(n);
    for _ in 0..n {
        p = p.matmul(&nmat);
        ranks.push(rank(&p));
    }
    blocks_from_ranks(&ranks)
}

pub fn blocks_from_ranks(ranks: &[usize]) -> Vec<u32> {
    let n = ranks.len() - 1;
    // ge[k] = number of blocks of size >= k+1
    let ge: Vec<usize> = (1..=n).map(|k| ranks[k - 1] - ranks[k]).collect();
    let mut sizes = Vec::new();
    for k in 1..=n {
        let cnt = ge[k - 1] - if k < n { ge[k] } else { 0 };
        for _ in 0..cnt {
            sizes.push(k as u32);
        }
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Inertia of a symmetric matrix whose entries are polynomials in one
/// algebraic number: characteristic polynomial coefficients are polynomials
/// in the root variable, whose signs are evaluated exactly.
pub fn inertia_at_root<T: Scalar>(
    m: &MatP<T>,
    root: &RootInterval<T>,
) -> Result<(usize, usize, usize), UndecidableSign> {
    let cs = m.char_poly_elems();
    let red: Vec<UniPoly<T>> = cs
        .iter()
        .map(|p| {
            if root.defining.degree() >= 1 {
                p.div_rem(&root.defining).1
            } else {
                p.clone()
            }
        })
        .collect();
    let mut signs = Vec::with_capacity(red.len());
    for p in &red {
        signs.push(sign_at(p, root)?);
    }
    let mut n_zero = 0;
    let mut s = signs.as_slice();
    while s.first() == Some(&0) {
        s = &s[1..];
        n_zero += 1;
    }
    let var = |xs: &[i8]| {
        let mut v = 0;
        let mut last = 0i8;
        for &x in xs {
            if x != 0 {
                if last != 0 && x != last {
                    v += 1;
                }
                last = x;
            }
        }
        v
    };
    let n_pos = var(s);
    let alt: Vec<i8> = s
        .iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 1 { -x } else { x })
        .collect();
    let n_neg = var(&alt);
    Ok((n_pos, n_neg, n_zero))
}

/// Convert a rational matrix to a polynomial matrix (constant entries).
pub fn to_poly_mat<T: Scalar>(m: &Mat<T>, var: Var) -> MatP<T> {
    let mut out = MatP::<T>::zero(m.n);
    for i in 0..m.n {
        for j in 0..m.n {
            out[(i, j)] = UniPoly::constant(m[(i, j)].clone(), var);
        }
    }
    out
}

/// Evaluate a polynomial matrix at a rational time.
pub fn eval_poly_mat<T: Scalar>(m: &MatP<T>, t: &Rat) -> Mat<T> {
    let mut out = Mat::<T>::zero(m.n);
    for i in 0..m.n {
        for j in 0..m.n {
            out[(i, j)] = m[(i, j)].eval_rat(t);
        }
    }
    out
}

/// Evaluate a polynomial matrix to f64 at a time value.
pub fn eval_poly_mat_f64<T: Scalar>(m: &MatP<T>, t: f64) -> Vec<Vec<f64>> {
    (0..m.n)
        .map(|i| (0..m.n).map(|j| m[(i, j)].eval_f64(t)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    fn m4(rows: [[i64; 4]; 4]) -> Mat<Rat> {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn det_and_adjugate_identity() {
        let m = m4([[2, 1, 0, 3], [0, 1, 4, 0], [5, 0, 1, 1], [0, 2, 0, 1]]);
        let d = m.det();
        let adj = m.adjugate();
        let prod = m.matmul(&adj);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { d.clone() } else { Rat::zero() };
                assert_eq!(prod[(i, j)], want);
            }
        }
    }

    #[test]
    fn adjugate_of_diag() {
        let m = m4([[2, 0, 0, 0], [0, 3, 0, 0], [0, 0, 5, 0], [0, 0, 0, 7]]);
        let adj = m.adjugate();
        assert_eq!(adj[(0, 0)], rat_int(105));
        assert_eq!(adj[(1, 1)], rat_int(70));
        assert_eq!(adj[(2, 2)], rat_int(42));
        assert_eq!(adj[(3, 3)], rat_int(30));
    }

    #[test]
    fn inertia_of_indefinite_diag() {
        let m = m4([[1, 0, 0, 0], [0, -2, 0, 0], [0, 0, 0, 0], [0, 0, 0, 3]]);
        assert_eq!(inertia(&m), (2, 1, 1));
    }

    #[test]
    fn rank_and_nullspace() {
        let m = m4([[1, 2, 0, 0], [2, 4, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]]);
        assert_eq!(rank(&m), 2);
        let ns = null_space(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let mv = m.mul_vec(v);
            assert!(mv.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn jordan_blocks_match_constructions() {
        // cylinders x^2+z^2=1 and y^2+z^2=1 at lam0=1: blocks {1,1}
        let a = m4([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]);
        let b = m4([[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]);
        // A is singular: use A' = 2A - B which is nonsingular for this pair
        let ap = a.scale_by(&rat_int(2)).sub_mat(&b);
        assert!(!ap.det().is_zero());
        // eigenvalue transform: lam0=1 maps to mu0 with mu0*A' - B ~ lam0*A - B
        // mu0 = lam0 / (c - lam0) with c = 2 -> mu0 = 1
        let blocks = jordan_blocks_nonsingular(&ap, &b, &rat_int(1));
        assert_eq!(blocks, vec![1, 1]);
    }

    #[test]
    fn rank_at_rational_root_matches_plain_rank() {
        use crate::poly::RatPoly;
        // matrix entries linear in x, evaluated at x = 1/2
        let mut mp = MatP::<Rat>::zero(3);
        for i in 0..3 {
            for j in 0..3 {
                mp[(i, j)] = RatPoly::from_ints(&[(i + j) as i64, 1], Var::T);
            }
        }
        let root = RootInterval::exact_rat(
            crate::scalar::rat(1, 2),
            1,
            RatPoly::from_ints(&[-1, 2], Var::T),
        );
        let r = rank_at_root(&mp, &root).unwrap();
        let me = eval_poly_mat(&mp, &crate::scalar::rat(1, 2));
        assert_eq!(r, rank(&me));
    }
}
