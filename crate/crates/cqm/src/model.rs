//! CQM data model: CSG trees, boundary elements, subproblem enumeration and
//! point membership.
//!
//! Boundary elements are declared explicitly in the scene; the CSG tree is
//! used only to validate candidate contact points (a point is a valid
//! contact iff it lies on the boundary of both solids at the contact time).

use crate::linalg::Mat;
use crate::motion::MotionMatrix;
use crate::scalar::{Rat, Scalar};
use thiserror::Error;

/// Half-space primitive: the solid side is where the form is <= 0.
#[derive(Clone, Debug)]
pub enum LeafGeom<T: Scalar> {
    /// X^T Q X <= 0.
    Quadric(Mat<T>),
    /// N . X <= 0 (homogeneous 4-vector, n.x + c w).
    Plane([T; 4]),
}

#[derive(Clone, Debug)]
pub enum CsgNode<T: Scalar> {
    Leaf(LeafGeom<T>),
    Union(Box<CsgNode<T>>, Box<CsgNode<T>>),
    Intersection(Box<CsgNode<T>>, Box<CsgNode<T>>),
    Difference(Box<CsgNode<T>>, Box<CsgNode<T>>),
}

/// Rest-frame geometry of a boundary element; the extension to the full
/// surface/curve is implicit (a face extends to its whole quadric or plane,
/// an edge to its whole conic or line, a vertex to itself).
#[derive(Clone, Debug)]
pub enum ElementGeom<T: Scalar> {
    QuadricFace(Mat<T>),
    PlaneFace([T; 4]),
    ConicEdge { carrier: Mat<T>, container: [T; 4] },
    LineEdge { point: [T; 4], dir: [T; 4] },
    Vertex([T; 4]),
}

impl<T: Scalar> ElementGeom<T> {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ElementGeom::QuadricFace(_) => "quadric face",
            ElementGeom::PlaneFace(_) => "plane face",
            ElementGeom::ConicEdge { .. } => "conic edge",
            ElementGeom::LineEdge { .. } => "line edge",
            ElementGeom::Vertex(_) => "vertex",
        }
    }

    pub fn is_face(&self) -> bool {
        matches!(
            self,
            ElementGeom::QuadricFace(_) | ElementGeom::PlaneFace(_)
        )
    }

    pub fn is_edge(&self) -> bool {
        matches!(
            self,
            ElementGeom::ConicEdge { .. } | ElementGeom::LineEdge { .. }
        )
    }
}

#[derive(Clone, Debug)]
pub struct BoundaryElement<T: Scalar> {
    pub id: String,
    pub geom: ElementGeom<T>,
}

#[derive(Clone, Debug)]
pub struct Cqm<T: Scalar> {
    pub id: String,
    pub csg: Option<CsgNode<T>>,
    pub elements: Vec<BoundaryElement<T>>,
    pub motion: MotionMatrix<T>,
}

/// The eleven solver cases, by element-pair type.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CcdCase {
    QuadricQuadric = 1,
    QuadricPlane = 2,
    QuadricConic = 3,
    PlaneConic = 4,
    QuadricLine = 5,
    SurfaceVertex = 6,
    ConicConic3d = 7,
    ConicConic2d = 8,
    ConicLine3d = 9,
    ConicLine2d = 10,
    LineLine = 11,
}

impl CcdCase {
    pub fn roman(self) -> &'static str {
        match self {
            CcdCase::QuadricQuadric => "I",
            CcdCase::QuadricPlane => "II",
            CcdCase::QuadricConic => "III",
            CcdCase::PlaneConic => "IV",
            CcdCase::QuadricLine => "V",
            CcdCase::SurfaceVertex => "VI",
            CcdCase::ConicConic3d => "VII",
            CcdCase::ConicConic2d => "VIII",
            CcdCase::ConicLine3d => "IX",
            CcdCase::ConicLine2d => "X",
            CcdCase::LineLine => "XI",
        }
    }
}

/// Contact type of a subproblem: face-face, face-edge, face-vertex or
/// edge-edge.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ContactType {
    FF,
    FE,
    FV,
    EE,
}

impl std::fmt::Display for ContactType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ContactType::FF => "(F,F)",
            ContactType::FE => "(F,E)",
            ContactType::FV => "(F,V)",
            ContactType::EE => "(E,E)",
        };
        write!(f, "{}", s)
    }
}

/// One CCD subproblem: a pair of extended boundary elements with its case
/// routing. `a_index`/`b_index` point into the owning CQMs' element lists;
/// `swapped` records that the roles were flipped so that the first slot of
/// the case solver holds the structurally-first primitive (e.g. the quadric
/// of a quadric-conic pair even when the conic belongs to object A).
#[derive(Clone, Debug)]
pub struct Subproblem {
    pub case: CcdCase,
    pub contact_type: ContactType,
    pub a_index: usize,
    pub b_index: usize,
    pub swapped: bool,
    pub label: String,
}

/// All CCD subproblems of the four basic contact types for a pair of CQMs.
///
/// Exemptions: plane-plane and plane-line pairs are skipped (a plane face is
/// delimited by boundary curves, so such contacts surface through curve or
/// vertex pairs); quadric-plane pairs are also skipped when the quadric is a
/// projective cone (rank-3 matrix: cones and cylinders), whose tangential
/// contact with a plane is along a whole ruling line and is therefore always
/// witnessed by an edge or vertex pair. Rank-4 quadrics (ellipsoids and
/// friends) keep their plane pairings.
pub fn enumerate_subproblems<T: Scalar>(qa: &Cqm<T>, qb: &Cqm<T>) -> Vec<Subproblem> {
    let mut out = Vec::new();
    for (ia, ea) in qa.elements.iter().enumerate() {
        for (ib, eb) in qb.elements.iter().enumerate() {
            let label = format!("({},{})", ea.id, eb.id);
            let pair = route_pair(&ea.geom, &eb.geom);
            if let Some((case, ctype, swapped)) = pair {
                out.push(Subproblem {
                    case,
                    contact_type: ctype,
                    a_index: ia,
                    b_index: ib,
                    swapped,
                    label,
                });
            }
        }
    }
    out
}

fn route_pair<T: Scalar>(
    a: &ElementGeom<T>,
    b: &ElementGeom<T>,
) -> Option<(CcdCase, ContactType, bool)> {
    use ElementGeom::*;
    match (a, b) {
        (QuadricFace(_), QuadricFace(_)) => Some((CcdCase::QuadricQuadric, ContactType::FF, false)),
        (QuadricFace(q), PlaneFace(_)) => {
            if is_projective_cone(q) {
                None
            } else {
                Some((CcdCase::QuadricPlane, ContactType::FF, false))
            }
        }
        (PlaneFace(_), QuadricFace(q)) => {
            if is_projective_cone(q) {
                None
            } else {
                Some((CcdCase::QuadricPlane, ContactType::FF, true))
            }
        }
        (PlaneFace(_), PlaneFace(_)) => None,
        (QuadricFace(_), ConicEdge { .. }) => Some((CcdCase::QuadricConic, ContactType::FE, false)),
        (ConicEdge { .. }, QuadricFace(_)) => Some((CcdCase::QuadricConic, ContactType::FE, true)),
        (PlaneFace(_), ConicEdge { .. }) => Some((CcdCase::PlaneConic, ContactType::FE, false)),
        (ConicEdge { .. }, PlaneFace(_)) => Some((CcdCase::PlaneConic, ContactType::FE, true)),
        (QuadricFace(_), LineEdge { .. }) => Some((CcdCase::QuadricLine, ContactType::FE, false)),
        (LineEdge { .. }, QuadricFace(_)) => Some((CcdCase::QuadricLine, ContactType::FE, true)),
        (PlaneFace(_), LineEdge { .. }) | (LineEdge { .. }, PlaneFace(_)) => None,
        (QuadricFace(_), Vertex(_)) | (PlaneFace(_), Vertex(_)) => {
            Some((CcdCase::SurfaceVertex, ContactType::FV, false))
        }
        (Vertex(_), QuadricFace(_)) | (Vertex(_), PlaneFace(_)) => {
            Some((CcdCase::SurfaceVertex, ContactType::FV, true))
        }
        (ConicEdge { .. }, ConicEdge { .. }) => {
            Some((CcdCase::ConicConic3d, ContactType::EE, false))
        }
        (ConicEdge { .. }, LineEdge { .. }) => Some((CcdCase::ConicLine3d, ContactType::EE, false)),
        (LineEdge { .. }, ConicEdge { .. }) => Some((CcdCase::ConicLine3d, ContactType::EE, true)),
        (LineEdge { .. }, LineEdge { .. }) => Some((CcdCase::LineLine, ContactType::EE, false)),
        // Vertices never pair with edges or vertices: those contact types
        // are subsumed by face-vertex pairs.
        (Vertex(_), _) | (_, Vertex(_)) => None,
    }
}

/// Rank-3 quadrics are projective cones (affine cones and cylinders).
pub fn is_projective_cone<T: Scalar>(q: &Mat<T>) -> bool {
    crate::linalg::rank(q) <= 3
}

// ---------------------------------------------------------------------------
// Point membership
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Membership {
    Interior,
    Boundary,
    Exterior,
}

#[derive(Debug, Error)]
pub enum MembershipError {
    #[error("point at infinity cannot be classified")]
    AtInfinity,
    #[error("CQM has no CSG tree; membership undefined")]
    NoCsg,
}

/// Evaluate interior/boundary predicates of a CSG node at a rest-frame
/// homogeneous point, exactly.
fn eval_csg<T: Scalar>(node: &CsgNode<T>, p: &[T; 4]) -> (bool, bool) {
    match node {
        CsgNode::Leaf(g) => {
            let v = match g {
                LeafGeom::Quadric(q) => {
                    let mut s = T::zero();
                    for i in 0..4 {
                        for j in 0..4 {
                            s = s + p[i].clone() * q[(i, j)].clone() * p[j].clone();
                        }
                    }
                    s
                }
                LeafGeom::Plane(n) => {
                    let mut s = T::zero();
                    for i in 0..4 {
                        s = s + n[i].clone() * p[i].clone();
                    }
                    s
                }
            };
            match v.signum() {
                -1 => (true, false),
                0 => (false, true),
                _ => (false, false),
            }
        }
        CsgNode::Union(u, v) => {
            let (iu, bu) = eval_csg(u, p);
            let (iv, bv) = eval_csg(v, p);
            let int = iu || iv;
            let bnd = ((bu && bv) || (bu && !iv) || (!iu && bv)) && !int;
            (int, bnd)
        }
        CsgNode::Intersection(u, v) => {
            let (iu, bu) = eval_csg(u, p);
            let (iv, bv) = eval_csg(v, p);
            let int = iu && iv;
            let bnd = (bu && bv) || (iu && bv) || (bu && iv);
            (int, bnd)
        }
        CsgNode::Difference(u, v) => {
            let (iu, bu) = eval_csg(u, p);
            let (iv, bv) = eval_csg(v, p);
            let int = iu && !(iv || bv);
            let bnd = (bu && bv) || (bu && !iv) || (iu && bv);
            (int, bnd)
        }
    }
}

/// f64 variant with a relative boundary band.
fn eval_csg_f64<T: Scalar>(node: &CsgNode<T>, p: &[f64; 4], tol: f64) -> (bool, bool) {
    match node {
        CsgNode::Leaf(g) => {
            let (v, scale) = match g {
                LeafGeom::Quadric(q) => {
                    let mut s = 0.0;
                    let mut sc = 0.0f64;
                    for i in 0..4 {
                        for j in 0..4 {
                            let c = q[(i, j)].to_f64();
                            s += p[i] * c * p[j];
                            sc = sc.max(c.abs());
                        }
                    }
                    let pn = p.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                    (s, sc * pn * pn)
                }
                LeafGeom::Plane(n) => {
                    let mut s = 0.0;
                    let mut sc = 0.0f64;
                    for i in 0..4 {
                        let c = n[i].to_f64();
                        s += c * p[i];
                        sc = sc.max(c.abs());
                    }
                    let pn = p.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                    (s, sc * pn)
                }
            };
            let band = tol * scale.max(1e-300);
            if v < -band {
                (true, false)
            } else if v <= band {
                (false, true)
            } else {
                (false, false)
            }
        }
        CsgNode::Union(u, v) => {
            let (iu, bu) = eval_csg_f64(u, p, tol);
            let (iv, bv) = eval_csg_f64(v, p, tol);
            let int = iu || iv;
            (
                int,
                ((bu && bv) || (bu && !iv) || (!iu && bv)) && !int,
            )
        }
        CsgNode::Intersection(u, v) => {
            let (iu, bu) = eval_csg_f64(u, p, tol);
            let (iv, bv) = eval_csg_f64(v, p, tol);
            (iu && iv, (bu && bv) || (iu && bv) || (bu && iv))
        }
        CsgNode::Difference(u, v) => {
            let (iu, bu) = eval_csg_f64(u, p, tol);
            let (iv, bv) = eval_csg_f64(v, p, tol);
            (iu && !(iv || bv), (bu && bv) || (bu && !iv) || (iu && bv))
        }
    }
}

impl<T: Scalar> Cqm<T> {
    /// Membership of a world-space homogeneous point at a rational instant,
    /// fully exact: the point is pulled back to the rest frame through the
    /// adjugate of the motion (projective, no division).
    pub fn membership_exact(
        &self,
        p_world: &[T; 4],
        t: &Rat,
    ) -> Result<Membership, MembershipError> {
        let csg = self.csg.as_ref().ok_or(MembershipError::NoCsg)?;
        if p_world[3].is_zero() {
            return Err(MembershipError::AtInfinity);
        }
        let m = self.motion.at(t);
        let adj = m.adjugate();
        let mut p_rest = [T::zero(), T::zero(), T::zero(), T::zero()];
        for i in 0..4 {
            let mut s = T::zero();
            for j in 0..4 {
                s = s + adj[(i, j)].clone() * p_world[j].clone();
            }
            p_rest[i] = s;
        }
        if p_rest[3].is_zero() {
            return Err(MembershipError::AtInfinity);
        }
        // Dehomogenize so half-space signs are well defined.
        let w = p_rest[3].clone();
        for x in &mut p_rest {
            *x = x.clone() / w.clone();
        }
        let (i, b) = eval_csg(csg, &p_rest);
        Ok(if b {
            Membership::Boundary
        } else if i {
            Membership::Interior
        } else {
            Membership::Exterior
        })
    }

    /// Numeric membership with a relative boundary tolerance.
    pub fn membership_f64(
        &self,
        p_world: &[f64; 4],
        t: f64,
        tol: f64,
    ) -> Result<Membership, MembershipError> {
        let csg = self.csg.as_ref().ok_or(MembershipError::NoCsg)?;
        if p_world[3].abs() < 1e-300 {
            return Err(MembershipError::AtInfinity);
        }
        let m = self.motion.at_f64(t);
        let inv = invert4(&m).ok_or(MembershipError::AtInfinity)?;
        let mut p_rest = [0.0; 4];
        for i in 0..4 {
            for j in 0..4 {
                p_rest[i] += inv[i][j] * p_world[j];
            }
        }
        if p_rest[3].abs() < 1e-300 {
            return Err(MembershipError::AtInfinity);
        }
        for i in 0..3 {
            p_rest[i] /= p_rest[3];
        }
        p_rest[3] = 1.0;
        let (i, b) = eval_csg_f64(csg, &p_rest, tol);
        Ok(if b {
            Membership::Boundary
        } else if i {
            Membership::Interior
        } else {
            Membership::Exterior
        })
    }

    /// Rest-frame membership (used by the sampling oracle: trimming is
    /// motion-invariant, so element samples are filtered once at rest).
    pub fn membership_rest_f64(&self, p_rest: &[f64; 4], tol: f64) -> Option<Membership> {
        let csg = self.csg.as_ref()?;
        let mut p = *p_rest;
        if p[3].abs() < 1e-300 {
            return None;
        }
        for i in 0..3 {
            p[i] /= p[3];
        }
        p[3] = 1.0;
        let (i, b) = eval_csg_f64(csg, &p, tol);
        Some(if b {
            Membership::Boundary
        } else if i {
            Membership::Interior
        } else {
            Membership::Exterior
        })
    }

    /// World-frame geometry of an element at a rational instant.
    pub fn element_world_at(&self, idx: usize, t: &Rat) -> ElementGeom<T> {
        let m = self.motion.at(t);
        transform_element_by(&self.elements[idx].geom, &m)
    }
}

/// Apply a constant matrix to an element's geometry (congruence transforms
/// for forms, direct images for points).
pub fn transform_element_by<T: Scalar>(g: &ElementGeom<T>, m: &Mat<T>) -> ElementGeom<T> {
    let adj = m.adjugate();
    let adj_t = adj.transpose();
    let tf_quadric = |q: &Mat<T>| adj_t.matmul(q).matmul(&adj);
    let tf_plane = |n: &[T; 4]| {
        let mut out = [T::zero(), T::zero(), T::zero(), T::zero()];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut s = T::zero();
            for k in 0..4 {
                s = s + adj_t[(i, k)].clone() * n[k].clone();
            }
            *slot = s;
        }
        out
    };
    let tf_point = |p: &[T; 4]| {
        let mut out = [T::zero(), T::zero(), T::zero(), T::zero()];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut s = T::zero();
            for k in 0..4 {
                s = s + m[(i, k)].clone() * p[k].clone();
            }
            *slot = s;
        }
        out
    };
    match g {
        ElementGeom::QuadricFace(q) => ElementGeom::QuadricFace(tf_quadric(q)),
        ElementGeom::PlaneFace(n) => ElementGeom::PlaneFace(tf_plane(n)),
        ElementGeom::ConicEdge { carrier, container } => ElementGeom::ConicEdge {
            carrier: tf_quadric(carrier),
            container: tf_plane(container),
        },
        ElementGeom::LineEdge { point, dir } => ElementGeom::LineEdge {
            point: tf_point(point),
            dir: tf_point(dir),
        },
        ElementGeom::Vertex(p) => ElementGeom::Vertex(tf_point(p)),
    }
}

pub(crate) fn invert4(m: &[[f64; 4]; 4]) -> Option<[[f64; 4]; 4]> {
    // Gauss-Jordan with partial pivoting.
    let mut a = *m;
    let mut inv = [[0.0; 4]; 4];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for col in 0..4 {
        let mut piv = col;
        for r in col + 1..4 {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        inv.swap(col, piv);
        let d = a[col][col];
        for j in 0..4 {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..4 {
            if r != col {
                let f = a[r][col];
                for j in 0..4 {
                    a[r][j] -= f * a[col][j];
                    inv[r][j] -= f * inv[col][j];
                }
            }
        }
    }
    Some(inv)
}

/// Contact validation: the point must be on the boundary of both CQMs at
/// the contact instant. The external-contact criterion is covered by
/// first-occurrence semantics for initially separate solids.
pub fn validate_contact_exact<T: Scalar>(
    qa: &Cqm<T>,
    qb: &Cqm<T>,
    t: &Rat,
    p: &[T; 4],
) -> Result<bool, MembershipError> {
    Ok(qa.membership_exact(p, t)? == Membership::Boundary
        && qb.membership_exact(p, t)? == Membership::Boundary)
}

pub fn validate_contact_f64<T: Scalar>(
    qa: &Cqm<T>,
    qb: &Cqm<T>,
    t: f64,
    p: &[f64; 4],
    tol: f64,
) -> Result<bool, MembershipError> {
    Ok(qa.membership_f64(p, t, tol)? == Membership::Boundary
        && qb.membership_f64(p, t, tol)? == Membership::Boundary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};
    use num_traits::One;

    fn unit_ball() -> CsgNode<Rat> {
        let mut q = Mat::<Rat>::zero(4);
        for i in 0..3 {
            q[(i, i)] = rat_int(1);
        }
        q[(3, 3)] = rat_int(-1);
        CsgNode::Leaf(LeafGeom::Quadric(q))
    }

    fn halfspace_z_leq(c: i64) -> CsgNode<Rat> {
        // z <= c  ->  z - c <= 0
        CsgNode::Leaf(LeafGeom::Plane([
            Rat::zero(),
            Rat::zero(),
            rat_int(1),
            rat_int(-c),
        ]))
    }

    fn point(x: i64, y: i64, z: i64) -> [Rat; 4] {
        [rat_int(x), rat_int(y), rat_int(z), Rat::one()]
    }

    fn static_cqm(csg: CsgNode<Rat>) -> Cqm<Rat> {
        Cqm {
            id: "t".into(),
            csg: Some(csg),
            elements: vec![],
            motion: MotionMatrix::identity((Rat::zero(), Rat::one())),
        }
    }

    #[test]
    fn ball_membership_partition() {
        let c = static_cqm(unit_ball());
        let t = Rat::zero();
        assert_eq!(
            c.membership_exact(&point(0, 0, 0), &t).unwrap(),
            Membership::Interior
        );
        assert_eq!(
            c.membership_exact(&point(1, 0, 0), &t).unwrap(),
            Membership::Boundary
        );
        assert_eq!(
            c.membership_exact(&point(2, 0, 0), &t).unwrap(),
            Membership::Exterior
        );
    }

    #[test]
    fn difference_boundary_rule() {
        // u \ v with p on boundary(u) while interior to v -> exterior
        let u = unit_ball();
        let v = halfspace_z_leq(2); // the whole ball is interior to v
        let c = static_cqm(CsgNode::Difference(Box::new(u), Box::new(v)));
        let t = Rat::zero();
        assert_eq!(
            c.membership_exact(&point(1, 0, 0), &t).unwrap(),
            Membership::Exterior
        );
    }

    #[test]
    fn union_mirror_symmetry() {
        let c1 = static_cqm(CsgNode::Union(
            Box::new(unit_ball()),
            Box::new(halfspace_z_leq(-2)),
        ));
        let c2 = static_cqm(CsgNode::Union(
            Box::new(halfspace_z_leq(-2)),
            Box::new(unit_ball()),
        ));
        let t = Rat::zero();
        for p in [
            point(0, 0, 0),
            point(1, 0, 0),
            point(0, 0, -2),
            point(0, 0, -3),
            point(5, 5, 5),
        ] {
            assert_eq!(
                c1.membership_exact(&p, &t).unwrap(),
                c2.membership_exact(&p, &t).unwrap()
            );
        }
    }

    #[test]
    fn capped_cylinder_boundary() {
        // cylinder x^2/25 + y^2/100 <= 1 intersect -5 <= z <= 5
        let mut q = Mat::<Rat>::zero(4);
        q[(0, 0)] = rat(1, 25);
        q[(1, 1)] = rat(1, 100);
        q[(3, 3)] = rat_int(-1);
        let cyl = CsgNode::Leaf(LeafGeom::Quadric(q));
        let zup = halfspace_z_leq(5);
        // z >= -5: -z - 5 <= 0
        let zdn = CsgNode::Leaf(LeafGeom::Plane([
            Rat::zero(),
            Rat::zero(),
            rat_int(-1),
            rat_int(-5),
        ]));
        let solid = CsgNode::Intersection(
            Box::new(cyl),
            Box::new(CsgNode::Intersection(Box::new(zup), Box::new(zdn))),
        );
        let c = static_cqm(solid);
        let t = Rat::zero();
        assert_eq!(
            c.membership_exact(&point(5, 0, 0), &t).unwrap(),
            Membership::Boundary
        );
        assert_eq!(
            c.membership_exact(&point(0, 0, 5), &t).unwrap(),
            Membership::Boundary
        );
        // rim point, on the cylinder and on the cap
        assert_eq!(
            c.membership_exact(&point(5, 0, 5), &t).unwrap(),
            Membership::Boundary
        );
        assert_eq!(
            c.membership_exact(&point(0, 0, 0), &t).unwrap(),
            Membership::Interior
        );
        assert_eq!(
            c.membership_exact(&point(0, 0, 6), &t).unwrap(),
            Membership::Exterior
        );
    }

    #[test]
    fn vertex_pairs_only_with_faces() {
        let dummy_motion = MotionMatrix::identity((Rat::zero(), Rat::one()));
        let mk = |geoms: Vec<ElementGeom<Rat>>| Cqm {
            id: "x".into(),
            csg: None,
            elements: geoms
                .into_iter()
                .enumerate()
                .map(|(i, geom)| BoundaryElement {
                    id: format!("e{}", i),
                    geom,
                })
                .collect(),
            motion: dummy_motion.clone(),
        };
        let mut sphere = Mat::<Rat>::zero(4);
        for i in 0..3 {
            sphere[(i, i)] = rat_int(1);
        }
        sphere[(3, 3)] = rat_int(-1);
        let qa = mk(vec![
            ElementGeom::Vertex(point(0, 0, 0)),
            ElementGeom::LineEdge {
                point: point(0, 0, 0),
                dir: [rat_int(1), Rat::zero(), Rat::zero(), Rat::zero()],
            },
        ]);
        let qb = mk(vec![
            ElementGeom::QuadricFace(sphere),
            ElementGeom::Vertex(point(1, 1, 1)),
        ]);
        let subs = enumerate_subproblems(&qa, &qb);
        // vertex-face, line-quadric; vertex-vertex and line-vertex skipped
        assert_eq!(subs.len(), 2);
        assert!(subs
            .iter()
            .any(|s| s.case == CcdCase::SurfaceVertex && s.swapped));
        assert!(subs.iter().any(|s| s.case == CcdCase::QuadricLine));
    }
}
