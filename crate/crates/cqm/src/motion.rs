//! Rational motions and time-dependent geometric primitives.
//!
//! A motion is a 4x4 matrix of polynomials in `t` whose last row is
//! `(0,0,0,s(t))` with `s` nonvanishing on the domain and whose determinant
//! has no root on the domain. Transformed primitives are kept polynomial:
//! quadrics and planes move by the adjugate-based covariant transform, which
//! equals the inverse-transpose transform up to a nonzero scalar square and
//! therefore has the same zero set.

use crate::linalg::{Mat, MatP};
use crate::poly::{UniPoly, Var};
use crate::roots::isolate_real_roots;
use crate::scalar::{Rat, Scalar};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MotionError {
    #[error("motion matrix last row must be (0,0,0,s(t)) with s nonzero")]
    BadLastRow,
    #[error("motion determinant vanishes inside the time domain")]
    SingularOnDomain,
}

/// 4x4 polynomial motion matrix on a closed rational time domain.
#[derive(Clone, Debug)]
pub struct MotionMatrix<T: Scalar> {
    pub entries: MatP<T>,
    pub domain: (Rat, Rat),
}

impl<T: Scalar> MotionMatrix<T> {
    pub fn identity(domain: (Rat, Rat)) -> Self {
        let mut m = MatP::<T>::zero(4);
        for i in 0..4 {
            m[(i, i)] = UniPoly::one(Var::T);
        }
        MotionMatrix { entries: m, domain }
    }

    pub fn new(entries: MatP<T>, domain: (Rat, Rat)) -> Result<Self, MotionError> {
        assert_eq!(entries.n, 4);
        let m = MotionMatrix { entries, domain };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), MotionError> {
        for j in 0..3 {
            if !self.entries[(3, j)].is_zero() {
                return Err(MotionError::BadLastRow);
            }
        }
        let s = &self.entries[(3, 3)];
        if s.is_zero() {
            return Err(MotionError::BadLastRow);
        }
        let det = self.entries.det();
        if det.is_zero() {
            return Err(MotionError::SingularOnDomain);
        }
        if !isolate_real_roots(&det, &self.domain.0, &self.domain.1).is_empty() {
            return Err(MotionError::SingularOnDomain);
        }
        Ok(())
    }

    pub fn det(&self) -> UniPoly<T> {
        self.entries.det()
    }

    /// Adjugate of the matrix, proportional to the inverse.
    pub fn adjugate(&self) -> MatP<T> {
        self.entries.adjugate()
    }

    /// Exact matrix value at a rational instant.
    pub fn at(&self, t: &Rat) -> Mat<T> {
        crate::linalg::eval_poly_mat(&self.entries, t)
    }

    pub fn at_f64(&self, t: f64) -> [[f64; 4]; 4] {
        let v = crate::linalg::eval_poly_mat_f64(&self.entries, t);
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = v[i][j];
            }
        }
        out
    }

    /// Compose two motions: (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &Self) -> Self {
        MotionMatrix {
            entries: self.entries.matmul(&other.entries),
            domain: self.domain.clone(),
        }
    }
}

/// Moving quadric: symmetric 4x4 matrix of polynomials in t.
pub type MovingQuadric<T> = MatP<T>;
/// Moving plane: homogeneous 4-vector of polynomials (n_x, n_y, n_z, c),
/// representing n.x + c w = 0.
pub type MovingPlane<T> = [UniPoly<T>; 4];
/// Moving point in homogeneous coordinates.
pub type MovingPoint<T> = [UniPoly<T>; 4];

/// Moving line: homogeneous base point (w = s(t)) plus direction (w = 0).
#[derive(Clone, Debug)]
pub struct MovingLine<T: Scalar> {
    pub base: MovingPoint<T>,
    pub dir: MovingPoint<T>,
}

/// Moving conic: carrier quadric together with its container plane. The
/// conic is the carrier's intersection with the container; solvers rely on
/// incidence only, not on any axis-orthogonality of the carrier.
#[derive(Clone, Debug)]
pub struct MovingConic<T: Scalar> {
    pub carrier: MovingQuadric<T>,
    pub container: MovingPlane<T>,
}

/// adj(M)^T * Q0 * adj(M): the moved quadric, projectively equal to
/// M^-T Q0 M^-1 (off by det(M)^2, immaterial for the zero set).
pub fn transform_quadric<T: Scalar>(q0: &Mat<T>, m: &MotionMatrix<T>) -> MovingQuadric<T> {
    let adj = m.adjugate();
    let q0p = crate::linalg::to_poly_mat(q0, Var::T);
    adj.transpose().matmul(&q0p).matmul(&adj)
}

/// adj(M)^T * N0: the moved plane, covariant with `transform_quadric`.
pub fn transform_plane<T: Scalar>(n0: &[T; 4], m: &MotionMatrix<T>) -> MovingPlane<T> {
    let adj = m.adjugate();
    let adj_t = adj.transpose();
    let v: Vec<UniPoly<T>> = (0..4)
        .map(|i| {
            let mut acc = UniPoly::zero(Var::T);
            for k in 0..4 {
                acc = acc + adj_t[(i, k)].scale(&n0[k]);
            }
            acc
        })
        .collect();
    [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]
}

/// Direct image M(t) * p0 of a homogeneous point.
pub fn transform_point<T: Scalar>(p0: &[T; 4], m: &MotionMatrix<T>) -> MovingPoint<T> {
    let v: Vec<UniPoly<T>> = (0..4)
        .map(|i| {
            let mut acc = UniPoly::zero(Var::T);
            for k in 0..4 {
                acc = acc + m.entries[(i, k)].scale(&p0[k]);
            }
            acc
        })
        .collect();
    [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]
}

/// Image of a line given by rest-frame base point and direction.
pub fn transform_line<T: Scalar>(p0: &[T; 4], q0: &[T; 4], m: &MotionMatrix<T>) -> MovingLine<T> {
    MovingLine {
        base: transform_point(p0, m),
        dir: transform_point(q0, m),
    }
}

/// Image of a conic: carrier and container transform consistently.
pub fn transform_conic<T: Scalar>(
    carrier0: &Mat<T>,
    container0: &[T; 4],
    m: &MotionMatrix<T>,
) -> MovingConic<T> {
    MovingConic {
        carrier: transform_quadric(carrier0, m),
        container: transform_plane(container0, m),
    }
}

/// Pull a moving quadric back into a (possibly moving) frame: F^T Q F.
pub fn pullback_quadric<T: Scalar>(q: &MovingQuadric<T>, frame: &MatP<T>) -> MovingQuadric<T> {
    frame.transpose().matmul(q).matmul(frame)
}

/// Pull a moving plane back into a frame: F^T N.
pub fn pullback_plane<T: Scalar>(n: &MovingPlane<T>, frame: &MatP<T>) -> MovingPlane<T> {
    let ft = frame.transpose();
    let v: Vec<UniPoly<T>> = (0..4)
        .map(|i| {
            let mut acc = UniPoly::zero(Var::T);
            for k in 0..4 {
                acc = acc + ft[(i, k)].clone() * n[k].clone();
            }
            acc
        })
        .collect();
    [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]
}

/// Evaluate a moving plane at a rational instant.
pub fn plane_at<T: Scalar>(n: &MovingPlane<T>, t: &Rat) -> [T; 4] {
    [
        n[0].eval_rat(t),
        n[1].eval_rat(t),
        n[2].eval_rat(t),
        n[3].eval_rat(t),
    ]
}

pub fn point_at_f64<T: Scalar>(p: &MovingPoint<T>, t: f64) -> [f64; 4] {
    [
        p[0].eval_f64(t),
        p[1].eval_f64(t),
        p[2].eval_f64(t),
        p[3].eval_f64(t),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eval_poly_mat;
    use crate::poly::RatPoly;
    use crate::scalar::{rat, rat_int};

    fn domain01() -> (Rat, Rat) {
        (Rat::zero(), num_traits::One::one())
    }

    /// Example-1 style translation: x by -60t+30, y by +20.
    fn translation_motion() -> MotionMatrix<Rat> {
        let mut e = MatP::<Rat>::zero(4);
        for i in 0..4 {
            e[(i, i)] = RatPoly::from_ints(&[1], Var::T);
        }
        e[(0, 3)] = RatPoly::from_ints(&[30, -60], Var::T);
        e[(1, 3)] = RatPoly::from_ints(&[20], Var::T);
        MotionMatrix::new(e, domain01()).unwrap()
    }

    fn cylinder_rest() -> Mat<Rat> {
        let mut q = Mat::<Rat>::zero(4);
        q[(0, 0)] = rat(1, 25);
        q[(1, 1)] = rat(1, 100);
        q[(3, 3)] = rat_int(-1);
        q
    }

    #[test]
    fn identity_motion_is_noop() {
        let m = MotionMatrix::<Rat>::identity(domain01());
        let q = cylinder_rest();
        let mq = transform_quadric(&q, &m);
        assert_eq!(eval_poly_mat(&mq, &rat(1, 3)), q);
    }

    #[test]
    fn moved_point_stays_on_moved_quadric() {
        // (5,0,0) lies on the rest cylinder; its image under the motion
        // must satisfy the transformed equation identically in t.
        let m = translation_motion();
        let q = cylinder_rest();
        let mq = transform_quadric(&q, &m);
        let p = transform_point(&[rat_int(5), Rat::zero(), Rat::zero(), rat_int(1)], &m);
        // p(t) = (-60t+35, 20, 0, 1)
        assert_eq!(p[0], RatPoly::from_ints(&[35, -60], Var::T));
        let mut val = RatPoly::zero(Var::T);
        for i in 0..4 {
            for j in 0..4 {
                val = val + p[i].clone() * mq[(i, j)].clone() * p[j].clone();
            }
        }
        assert!(val.is_zero());
    }

    #[test]
    fn uniform_scaling_maps_sphere() {
        // diag(2,2,2,1) sends the unit sphere to radius 2: check (2,0,0).
        let mut e = MatP::<Rat>::zero(4);
        e[(0, 0)] = RatPoly::from_ints(&[2], Var::T);
        e[(1, 1)] = RatPoly::from_ints(&[2], Var::T);
        e[(2, 2)] = RatPoly::from_ints(&[2], Var::T);
        e[(3, 3)] = RatPoly::from_ints(&[1], Var::T);
        let m = MotionMatrix::new(e, domain01()).unwrap();
        let mut sphere = Mat::<Rat>::zero(4);
        for i in 0..3 {
            sphere[(i, i)] = rat_int(1);
        }
        sphere[(3, 3)] = rat_int(-1);
        let mq = transform_quadric(&sphere, &m);
        let q0 = eval_poly_mat(&mq, &Rat::zero());
        let p = [rat_int(2), rat_int(0), rat_int(0), rat_int(1)];
        let mut val = Rat::zero();
        for i in 0..4 {
            for j in 0..4 {
                val = val + p[i].clone() * q0[(i, j)].clone() * p[j].clone();
            }
        }
        assert!(val.is_zero());
    }

    #[test]
    fn plane_incidence_preserved() {
        let m = translation_motion();
        // plane z = 5 (z - 5 = 0 -> N = (0,0,1,-5)); invariant under x/y translation
        let n = transform_plane(&[Rat::zero(), Rat::zero(), rat_int(1), rat_int(-5)], &m);
        // point (0,0,5) moves with m and must stay incident
        let p = transform_point(&[Rat::zero(), Rat::zero(), rat_int(5), rat_int(1)], &m);
        let mut val = RatPoly::zero(Var::T);
        for i in 0..4 {
            val = val + n[i].clone() * p[i].clone();
        }
        assert!(val.is_zero());
    }

    #[test]
    fn singular_motion_rejected() {
        // scale goes through zero at t = 0.3
        let mut e = MatP::<Rat>::zero(4);
        for i in 0..3 {
            e[(i, i)] = RatPoly::from_ints(&[1], Var::T);
        }
        e[(3, 3)] = RatPoly::new(vec![rat(-3, 10), rat_int(1)], Var::T);
        assert!(matches!(
            MotionMatrix::new(e, domain01()),
            Err(MotionError::SingularOnDomain)
        ));
    }
}
