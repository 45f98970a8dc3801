//! Static two-quadric pencil analysis.
//!
//! The pencil of quadrics `λA - B` is classified through the real-root
//! structure of its characteristic polynomial together with inertia data
//! (the signature sequence) and Jordan block sizes per root (the Segre
//! characteristic). Contact configurations are recognized by matching the
//! signature sequence against the twelve tabulated contact rows; contact
//! points and curves are then extracted from pencil kernels.
//!
//! Sequence encoding: the inertia data lives naturally on the double cover
//! of the projective pencil line (sign choice x parameter circle, branch
//! flipping when passing through λ = ∞). A printed sequence is a window of
//! that cycle covering each distinct root once, closing with one extra
//! interval token. The canonical window starts just before a root of
//! maximal multiplicity and minimizes the interval-token vector, breaking
//! ties by the lexicographically largest annotation vector; this choice
//! reproduces all tabulated rows.

use crate::linalg::{
    inertia, inertia_at_root, jordan_blocks_nonsingular, null_space, null_space_at_root, rank,
    rank_at_root, to_poly_mat, Mat, MatP,
};
use crate::poly::{UniPoly, Var};
use crate::roots::{isolate_real_roots, RootInterval, UndecidableSign};
use crate::scalar::{Rat, Scalar};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PencilError {
    #[error("degenerate pencil: det(λA - B) vanishes identically")]
    Degenerate,
    #[error(transparent)]
    Undecidable(#[from] UndecidableSign),
}

/// det(λA - B) as a polynomial in λ.
pub fn char_poly<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> UniPoly<T> {
    assert_eq!(a.n, b.n);
    let n = a.n;
    // Entries are degree-1 polynomials in λ; reuse the generic polynomial
    // determinant over UniPoly entries.
    let mut m = MatP::<T>::zero(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = UniPoly::new(vec![-b[(i, j)].clone(), a[(i, j)].clone()], Var::Lambda);
        }
    }
    m.det().with_var(Var::Lambda)
}

/// True if the matrices are projectively equal (same quadric).
pub fn proportional<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> bool {
    let n = a.n;
    let mut ratio: Option<(T, T)> = None; // b_ij / a_ij as a pair (num, den)
    for i in 0..n {
        for j in 0..n {
            let x = a[(i, j)].clone();
            let y = b[(i, j)].clone();
            match (&x.is_zero(), &y.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return false,
                _ => match &ratio {
                    None => ratio = Some((y, x)),
                    Some((num, den)) => {
                        if y * den.clone() != x * num.clone() {
                            return false;
                        }
                    }
                },
            }
        }
    }
    ratio.is_some()
}

/// A real root of the pencil: a finite algebraic number or the root at
/// infinity (present when deg f < size, with multiplicity the deficiency).
#[derive(Clone, Debug)]
pub enum PencilRoot<T: Scalar> {
    Finite(RootInterval<T>),
    Infinity { multiplicity: u32 },
}

impl<T: Scalar> PencilRoot<T> {
    pub fn multiplicity(&self) -> u32 {
        match self {
            PencilRoot::Finite(r) => r.multiplicity,
            PencilRoot::Infinity { multiplicity } => *multiplicity,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            PencilRoot::Finite(r) => match &r.exact {
                Some(x) => format!("λ0 = {}", x),
                None => format!("λ0 in [{}, {}]", r.lo, r.hi),
            },
            PencilRoot::Infinity { .. } => "λ0 = ∞".to_string(),
        }
    }

    pub fn to_f64(&self) -> Option<f64> {
        match self {
            PencilRoot::Finite(r) => Some(r.to_f64()),
            PencilRoot::Infinity { .. } => None,
        }
    }
}

/// One token of a signature sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SeqToken {
    /// n_plus of the pencil matrix on an open λ-interval.
    Interval(u8),
    /// Root annotation: inertia at the root, parenthesized to multiplicity.
    Root { np: u8, nn: u8, mult: u8 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignatureSequence {
    pub tokens: Vec<SeqToken>,
}

impl std::fmt::Display for SignatureSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match t {
                SeqToken::Interval(np) => write!(f, "{}", np)?,
                SeqToken::Root { np, nn, mult } => {
                    for _ in 0..*mult {
                        write!(f, "(")?;
                    }
                    write!(f, "{},{}", np, nn)?;
                    for _ in 0..*mult {
                        write!(f, ")")?;
                    }
                }
            }
        }
        write!(f, ")")
    }
}

/// One group of the Segre symbol: Jordan block sizes of a single root.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SegreGroup {
    pub blocks: Vec<u32>,
    pub at_infinity: bool,
    /// False for a complex-pair group (block sizes then approximate the
    /// multiplicity only; complex roots never match the contact table).
    pub real: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SegreSymbol {
    pub groups: Vec<SegreGroup>,
    /// Number of distinct real roots (the root at infinity included).
    pub r: u32,
}

impl std::fmt::Display for SegreSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for g in &self.groups {
            let body: String = g.blocks.iter().map(|b| b.to_string()).collect();
            if g.blocks.len() >= 2 {
                write!(f, "({})", body)?;
            } else {
                write!(f, "{}", body)?;
            }
            if !g.real {
                write!(f, "~")?;
            }
        }
        write!(f, "]_{}", self.r)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ContactKind {
    NoContact,
    PointContact,
    CurveContact,
    SurfaceContact,
}

/// Contact set attached to one multiple root (Lemma-style extraction).
#[derive(Clone, Debug)]
pub enum ContactSet<T: Scalar> {
    /// Isolated real tangency/singular points, homogeneous coordinates.
    Points(Vec<[T; 4]>),
    /// Same, but coordinates only known numerically (algebraic root).
    PointsApprox(Vec<[f64; 4]>),
    /// Tangency along a whole real line.
    Line { p: [T; 4], q: [T; 4] },
    /// Tangency along a real conic in the given kernel plane; one
    /// representative point is provided (exact when available).
    Conic {
        plane: [[T; 4]; 3],
        representative: Option<[f64; 4]>,
        representative_exact: Option<[T; 4]>,
    },
    /// Imaginary contact set; to be discarded by callers.
    Imaginary,
}

#[derive(Clone, Debug)]
pub struct ContactPiece<T: Scalar> {
    pub root: PencilRoot<T>,
    pub rank: usize,
    pub set: ContactSet<T>,
}

#[derive(Clone, Debug)]
pub struct ContactClassification<T: Scalar> {
    pub kind: ContactKind,
    pub table2_case: Option<u32>,
    pub sequence: Option<SignatureSequence>,
    pub pieces: Vec<ContactPiece<T>>,
}

/// The twelve tabulated contact rows: case number, Segre symbol and
/// canonical signature sequence.
pub const TABLE2_ROWS: [(u32, &str, &str); 12] = [
    (6, "[211]_3", "(1,((1,2)),1,(1,2),2,(2,1),3)"),
    (7, "[211]_3", "(1,((0,3)),1,(1,2),2,(2,1),3)"),
    (15, "[(11)11]_3", "(1,((0,2)),1,(1,2),2,(2,1),3)"),
    (19, "[(111)1]_2", "(1,(((0,1))),2,(2,1),3)"),
    (22, "[(21)1]_2", "(1,(((0,2))),2,(2,1),3)"),
    (24, "[2(11)]_2", "(1,((1,2)),1,((1,1)),3)"),
    (25, "[2(11)]_2", "(1,((0,3)),1,((1,1)),3)"),
    (30, "[(11)(11)]_2", "(1,((0,2)),1,((1,1)),3)"),
    (32, "[(211)]_1", "(2,((((1,0)))),2)"),
    (33, "[(211)]_1", "(1,((((1,0)))),3)"),
    (34, "[(22)]_1", "(2,((((2,0)))),2)"),
    (35, "[(22)]_1", "(2,((((1,1)))),2)"),
];

// ---------------------------------------------------------------------------
// Signature sequence
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
enum CycleItem {
    Interval { np: u8 },
    Root { np: u8, nn: u8, mult: u8 },
}

impl CycleItem {
    fn complement(&self, n: u8) -> CycleItem {
        match self {
            CycleItem::Interval { np } => CycleItem::Interval { np: n - np },
            CycleItem::Root { np, nn, mult } => CycleItem::Root {
                np: *nn,
                nn: *np,
                mult: *mult,
            },
        }
    }
    fn is_root(&self) -> bool {
        matches!(self, CycleItem::Root { .. })
    }
}

/// Real roots of the pencil, finite ones first in increasing order, then
/// the infinity root when the characteristic polynomial drops degree.
pub fn pencil_real_roots<T: Scalar>(
    a: &Mat<T>,
    b: &Mat<T>,
) -> Result<(UniPoly<T>, Vec<PencilRoot<T>>), PencilError> {
    let f = char_poly(a, b);
    if f.is_zero() {
        return Err(PencilError::Degenerate);
    }
    let bound = cauchy_bound(&f);
    let lo = -bound.clone();
    let finite = isolate_real_roots(&f, &lo, &bound);
    let mut roots: Vec<PencilRoot<T>> = finite.into_iter().map(PencilRoot::Finite).collect();
    let deficiency = a.n as i64 - f.degree();
    if deficiency > 0 {
        roots.push(PencilRoot::Infinity {
            multiplicity: deficiency as u32,
        });
    }
    Ok((f, roots))
}

/// Rational bound enclosing all real roots: 1 + max |c_i / c_n|.
fn cauchy_bound<T: Scalar>(f: &UniPoly<T>) -> Rat {
    let lead = f.lead().to_f64().abs();
    let mut m: f64 = 0.0;
    for c in &f.coeffs {
        m = m.max(c.to_f64().abs());
    }
    let est = 2.0 + if lead > 0.0 { m / lead } else { m };
    // Round the f64 estimate up to an integer bound and verify it exactly
    // by sign-variation count outside; widen if the estimate was off.
    let mut bound = Rat::from_integer((est.ceil().max(2.0) as i64).into());
    for _ in 0..64 {
        let neg = -bound.clone();
        if crate::roots::count_roots_in(&f.squarefree_part(), &neg, &bound)
            == count_all_real_roots(f)
        {
            return bound;
        }
        bound = bound * Rat::from_integer(4.into());
    }
    bound
}

fn count_all_real_roots<T: Scalar>(f: &UniPoly<T>) -> usize {
    // Distinct real roots of f over all of R: widen until stable.
    let sf = f.squarefree_part();
    let mut b = Rat::from_integer(16.into());
    let mut last = 0;
    for _ in 0..64 {
        let neg = -b.clone();
        let c = crate::roots::count_open(&sf, &neg, &b)
            + usize::from(sf.sign_at_rat(&neg) == 0)
            + usize::from(sf.sign_at_rat(&b) == 0);
        if c == last && c > 0 {
            return c;
        }
        // Degree bound reached: cannot exceed deg(sf) roots.
        if c == sf.degree() as usize {
            return c;
        }
        last = c;
        b = b * Rat::from_integer(4.into());
    }
    last
}

/// Signature sequence of a nondegenerate pencil, canonicalized.
pub fn signature_sequence<T: Scalar>(
    a: &Mat<T>,
    b: &Mat<T>,
) -> Result<SignatureSequence, PencilError> {
    let n = a.n as u8;
    let (f, roots) = pencil_real_roots(a, b)?;
    let finite: Vec<&RootInterval<T>> = roots
        .iter()
        .filter_map(|r| match r {
            PencilRoot::Finite(ri) => Some(ri),
            _ => None,
        })
        .collect();
    let inf_mult = roots
        .iter()
        .find_map(|r| match r {
            PencilRoot::Infinity { multiplicity } => Some(*multiplicity),
            _ => None,
        })
        .unwrap_or(0);
    let _ = f;

    // Interval sample points strictly between consecutive isolated roots.
    let mut samples: Vec<Rat> = Vec::new();
    if finite.is_empty() {
        samples.push(Rat::zero());
    } else {
        samples.push(&finite[0].lo - Rat::one());
        for w in finite.windows(2) {
            let m = (&w[0].hi + &w[1].lo) / Rat::from_integer(2.into());
            samples.push(m);
        }
        samples.push(&finite[finite.len() - 1].hi + Rat::one());
    }
    let ivals: Vec<u8> = samples
        .iter()
        .map(|s| {
            let m = a.scale_by(&T::from_rat(s)).sub_mat(b);
            inertia(&m).0 as u8
        })
        .collect();

    // Root annotations.
    let mut anns: Vec<(u8, u8, u8)> = Vec::new();
    for ri in &finite {
        let (np, nn) = root_inertia(a, b, ri)?;
        anns.push((np, nn, ri.multiplicity as u8));
    }

    // Build the positive branch of the double cover.
    let mut pos: Vec<CycleItem> = Vec::new();
    for (i, ann) in anns.iter().enumerate() {
        pos.push(CycleItem::Interval { np: ivals[i] });
        pos.push(CycleItem::Root {
            np: ann.0,
            nn: ann.1,
            mult: ann.2,
        });
    }
    pos.push(CycleItem::Interval {
        np: *ivals.last().unwrap(),
    });
    if inf_mult > 0 {
        let (np, nn, _) = inertia(a);
        pos.push(CycleItem::Root {
            np: np as u8,
            nn: nn as u8,
            mult: inf_mult as u8,
        });
    }
    let neg: Vec<CycleItem> = pos.iter().map(|it| it.complement(n)).collect();
    let cycle: Vec<CycleItem> = if inf_mult > 0 {
        pos.into_iter().chain(neg).collect()
    } else if finite.is_empty() {
        // No roots at all: the sequence is a single interval token.
        let np = ivals[0].min(n - ivals[0]);
        return Ok(SignatureSequence {
            tokens: vec![SeqToken::Interval(np)],
        });
    } else {
        let mut c: Vec<CycleItem> = pos.into_iter().chain(neg.into_iter().skip(1)).collect();
        c.pop();
        c
    };

    let m_roots = finite.len() + usize::from(inf_mult > 0);
    let max_mult = cycle
        .iter()
        .filter_map(|it| match it {
            CycleItem::Root { mult, .. } => Some(*mult),
            _ => None,
        })
        .max()
        .unwrap_or(0);

    let len = cycle.len();
    let mut best: Option<(Vec<u8>, Vec<(u8, u8, u8)>, Vec<SeqToken>)> = None;
    for start in 0..len {
        if cycle[start].is_root() {
            continue;
        }
        for dir in [1i64, -1] {
            let mut tokens: Vec<SeqToken> = Vec::with_capacity(2 * m_roots + 1);
            let mut ivs: Vec<u8> = Vec::new();
            let mut ans: Vec<(u8, u8, u8)> = Vec::new();
            let mut idx = start as i64;
            let mut seen = 0;
            while seen < m_roots {
                let it = &cycle[idx.rem_euclid(len as i64) as usize];
                match it {
                    CycleItem::Interval { np } => {
                        tokens.push(SeqToken::Interval(*np));
                        ivs.push(*np);
                    }
                    CycleItem::Root { np, nn, mult } => {
                        tokens.push(SeqToken::Root {
                            np: *np,
                            nn: *nn,
                            mult: *mult,
                        });
                        ans.push((*mult, *np, *nn));
                        seen += 1;
                    }
                }
                idx += dir;
            }
            // Closing interval token.
            let it = &cycle[idx.rem_euclid(len as i64) as usize];
            if let CycleItem::Interval { np } = it {
                tokens.push(SeqToken::Interval(*np));
                ivs.push(*np);
            } else {
                continue;
            }
            // First annotation must carry the maximal multiplicity.
            if ans.first().map(|a| a.0) != Some(max_mult) {
                continue;
            }
            let better = match &best {
                None => true,
                Some((bi, ba, _)) => match ivs.cmp(bi) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => false,
                    std::cmp::Ordering::Equal => ans > *ba,
                },
            };
            if better {
                best = Some((ivs, ans, tokens));
            }
        }
    }
    let (_, _, tokens) = best.expect("pencil with roots always admits a window");
    Ok(SignatureSequence { tokens })
}

fn root_inertia<T: Scalar>(
    a: &Mat<T>,
    b: &Mat<T>,
    root: &RootInterval<T>,
) -> Result<(u8, u8), UndecidableSign> {
    if let Some(x) = &root.exact {
        let m = a.scale_by(&T::from_rat(x)).sub_mat(b);
        let (np, nn, _) = inertia(&m);
        return Ok((np as u8, nn as u8));
    }
    // Entries of λ0 A - B as polynomials in the root variable.
    let n = a.n;
    let mut mp = MatP::<T>::zero(n);
    for i in 0..n {
        for j in 0..n {
            mp[(i, j)] = UniPoly::new(vec![-b[(i, j)].clone(), a[(i, j)].clone()], root.defining.var);
        }
    }
    let (np, nn, _) = inertia_at_root(&mp, root)?;
    Ok((np as u8, nn as u8))
}

// ---------------------------------------------------------------------------
// Segre characteristic
// ---------------------------------------------------------------------------

/// Jordan structure of one pencil root: multiplicities and block sizes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JordanStructure {
    pub alg_mult: u32,
    pub geom_mult: u32,
    pub block_sizes: Vec<u32>,
}

/// Jordan block sizes of the pencil (A, B) at the given root, valid for
/// singular A and for the infinity root: the pencil basis is swapped to a
/// nonsingular member first.
pub fn pencil_jordan_blocks<T: Scalar>(
    a: &Mat<T>,
    b: &Mat<T>,
    root: &PencilRoot<T>,
) -> Result<JordanStructure, PencilError> {
    let n = a.n;
    // Nonsingular member c*A - B, trying small integers.
    let mut member: Option<Mat<T>> = None;
    for c in [0i64, 1, -1, 2, -2, 3, -3] {
        let m = a
            .scale_by(&T::from_rat(&Rat::from_integer(c.into())))
            .sub_mat(b);
        if !m.det().is_zero() {
            member = Some(m);
            break;
        }
    }
    let app = member.ok_or(PencilError::Degenerate)?;
    let adj = app.adjugate();
    let ranks: Vec<usize> = match root {
        PencilRoot::Infinity { .. } => {
            let nmat = a.matmul(&adj);
            let mut ranks = vec![n];
            let mut p = Mat::identity(n);
            for _ in 0..n {
                p = p.matmul(&nmat);
                ranks.push(rank(&p));
            }
            ranks
        }
        PencilRoot::Finite(ri) => match &ri.exact {
            Some(x) => {
                let m0 = a.scale_by(&T::from_rat(x)).sub_mat(b);
                let nmat = m0.matmul(&adj);
                let mut ranks = vec![n];
                let mut p = Mat::identity(n);
                for _ in 0..n {
                    p = p.matmul(&nmat);
                    ranks.push(rank(&p));
                }
                ranks
            }
            None => {
                // N entries are polynomials in the root variable.
                let var = ri.defining.var;
                let mut m0 = MatP::<T>::zero(n);
                for i in 0..n {
                    for j in 0..n {
                        m0[(i, j)] =
                            UniPoly::new(vec![-b[(i, j)].clone(), a[(i, j)].clone()], var);
                    }
                }
                let adj_p = to_poly_mat(&adj, var);
                let nmat = m0.matmul(&adj_p);
                let mut ranks = vec![n];
                let mut p = MatP::<T>::zero(n);
                for i in 0..n {
                    p[(i, i)] = UniPoly::one(var);
                }
                for _ in 0..n {
                    p = p.matmul(&nmat);
                    ranks.push(rank_at_root(&p, ri)?);
                }
                ranks
            }
        },
    };
    let blocks = crate::linalg::blocks_from_ranks(&ranks);
    Ok(JordanStructure {
        alg_mult: blocks.iter().sum(),
        geom_mult: blocks.len() as u32,
        block_sizes: blocks,
    })
}

/// Jordan structure of λ0 for a pencil with nonsingular A (direct form).
pub fn jordan_structure<T: Scalar>(a: &Mat<T>, b: &Mat<T>, lam0: &T) -> JordanStructure {
    assert!(!a.det().is_zero(), "jordan_structure requires det(A) != 0");
    let blocks = jordan_blocks_nonsingular(a, b, lam0);
    JordanStructure {
        alg_mult: blocks.iter().sum(),
        geom_mult: blocks.len() as u32,
        block_sizes: blocks,
    }
}

pub fn segre_characteristic<T: Scalar>(
    a: &Mat<T>,
    b: &Mat<T>,
) -> Result<SegreSymbol, PencilError> {
    let (f, roots) = pencil_real_roots(a, b)?;
    let mut groups: Vec<(u32, bool, Rat, SegreGroup)> = Vec::new();
    let mut real_mult_total = 0i64;
    for r in &roots {
        let js = pencil_jordan_blocks(a, b, r)?;
        let (inf, key) = match r {
            PencilRoot::Finite(ri) => {
                real_mult_total += ri.multiplicity as i64;
                (false, ri.mid())
            }
            PencilRoot::Infinity { multiplicity } => {
                real_mult_total += *multiplicity as i64;
                let _ = multiplicity;
                (true, Rat::zero())
            }
        };
        groups.push((
            r.multiplicity(),
            inf,
            key,
            SegreGroup {
                blocks: js.block_sizes,
                at_infinity: inf,
                real: true,
            },
        ));
    }
    // Complex roots: account for the remaining multiplicity as conjugate
    // pairs; the decomposition gives their multiplicities.
    let missing = a.n as i64 - real_mult_total;
    if missing > 0 {
        let mut left = missing;
        for (factor, mult) in f.squarefree_decomposition() {
            let b2 = cauchy_bound(&factor);
            let lo = -b2.clone();
            let real_count = crate::roots::count_roots_in(&factor, &lo, &b2) as i64;
            let complex = factor.degree() - real_count;
            let pairs = complex / 2;
            for _ in 0..pairs {
                if left <= 0 {
                    break;
                }
                for _ in 0..2 {
                    groups.push((
                        mult,
                        false,
                        Rat::zero(),
                        SegreGroup {
                            blocks: vec![mult],
                            at_infinity: false,
                            real: false,
                        },
                    ));
                }
                left -= 2 * mult as i64;
            }
        }
    }
    // Order: multiplicity descending, finite before infinity, value asc.
    groups.sort_by(|x, y| {
        y.0.cmp(&x.0)
            .then(x.1.cmp(&y.1))
            .then(x.2.cmp(&y.2))
            .then(y.3.real.cmp(&x.3.real))
    });
    let r_count = roots.len() as u32;
    Ok(SegreSymbol {
        groups: groups.into_iter().map(|g| g.3).collect(),
        r: r_count,
    })
}

// ---------------------------------------------------------------------------
// Contact classification and extraction
// ---------------------------------------------------------------------------

pub fn classify_contact<T: Scalar>(
    a: &Mat<T>,
    b: &Mat<T>,
) -> Result<ContactClassification<T>, PencilError> {
    if proportional(a, b) {
        return Ok(ContactClassification {
            kind: ContactKind::SurfaceContact,
            table2_case: None,
            sequence: None,
            pieces: vec![],
        });
    }
    let seq = signature_sequence(a, b)?;
    let seq_str = seq.to_string();
    let row = TABLE2_ROWS.iter().find(|(_, _, s)| *s == seq_str);
    let Some((case, _, _)) = row else {
        return Ok(ContactClassification {
            kind: ContactKind::NoContact,
            table2_case: None,
            sequence: Some(seq),
            pieces: vec![],
        });
    };
    let (_, roots) = pencil_real_roots(a, b)?;
    let mut pieces = Vec::new();
    let mut any_real_point = false;
    let mut any_real_curve = false;
    for r in roots {
        if r.multiplicity() < 2 {
            continue;
        }
        let piece = extract_contacts(a, b, &r)?;
        match &piece.set {
            ContactSet::Points(ps) if !ps.is_empty() => any_real_point = true,
            ContactSet::PointsApprox(ps) if !ps.is_empty() => any_real_point = true,
            ContactSet::Line { .. } => any_real_curve = true,
            ContactSet::Conic { .. } => any_real_curve = true,
            _ => {}
        }
        pieces.push(piece);
    }
    let kind = if any_real_curve {
        ContactKind::CurveContact
    } else if any_real_point {
        ContactKind::PointContact
    } else {
        ContactKind::NoContact
    };
    Ok(ContactClassification {
        kind,
        table2_case: if kind == ContactKind::NoContact {
            None
        } else {
            Some(*case)
        },
        sequence: Some(seq),
        pieces,
    })
}

/// Contact set of one multiple root per the kernel-rank trichotomy:
/// rank 3 -> one singular point; rank 2 -> up to two points or a tangency
/// line on the kernel line; rank 1 -> a conic in the kernel plane.
pub fn extract_contacts<T: Scalar>(
    a: &Mat<T>,
    b: &Mat<T>,
    root: &PencilRoot<T>,
) -> Result<ContactPiece<T>, PencilError> {
    assert!(
        root.multiplicity() >= 2,
        "contact extraction requires a multiple root"
    );
    // Restriction matrix: for a finite root the contact points satisfy
    // X^T A X = 0 on the kernel; for the infinity root (matrix A itself)
    // the restriction goes onto B.
    match root {
        PencilRoot::Infinity { .. } => {
            let kernel = null_space(a);
            let rk = a.n - kernel.len();
            Ok(ContactPiece {
                root: root.clone(),
                rank: rk,
                set: kernel_contact_set(&kernel, b),
            })
        }
        PencilRoot::Finite(ri) => match &ri.exact {
            Some(x) => {
                let m0 = a.scale_by(&T::from_rat(x)).sub_mat(b);
                let kernel = null_space(&m0);
                let rk = a.n - kernel.len();
                Ok(ContactPiece {
                    root: root.clone(),
                    rank: rk,
                    set: kernel_contact_set(&kernel, a),
                })
            }
            None => {
                let n = a.n;
                let var = ri.defining.var;
                let mut m0 = MatP::<T>::zero(n);
                for i in 0..n {
                    for j in 0..n {
                        m0[(i, j)] =
                            UniPoly::new(vec![-b[(i, j)].clone(), a[(i, j)].clone()], var);
                    }
                }
                let kernel = null_space_at_root(&m0, ri)?;
                let rk = n - kernel.len();
                // Numeric kernel vectors at a refined root value.
                let mut rif = ri.clone();
                rif.refine(&crate::roots::eps_lambda());
                let x = rif.to_f64();
                let kf: Vec<[f64; 4]> = kernel
                    .iter()
                    .map(|v| {
                        let mut w = [0.0; 4];
                        for (i, p) in v.iter().enumerate() {
                            w[i] = p.eval_f64(x);
                        }
                        w
                    })
                    .collect();
                let set = kernel_contact_set_f64(&kf, a, x);
                Ok(ContactPiece {
                    root: root.clone(),
                    rank: rk,
                    set,
                })
            }
        },
    }
}

/// Exact kernel analysis: intersect the kernel span with the quadric `q`.
fn kernel_contact_set<T: Scalar>(kernel: &[Vec<T>], q: &Mat<T>) -> ContactSet<T> {
    match kernel.len() {
        0 => ContactSet::Imaginary,
        1 => {
            let v = normalize_vec(&kernel[0]);
            ContactSet::Points(vec![v])
        }
        2 => {
            // Restriction q(u,v) on the kernel line u X0 + v X1.
            let x0 = &kernel[0];
            let x1 = &kernel[1];
            let a2 = quad_form(q, x0, x0);
            let a1 = quad_form(q, x0, x1);
            let a0 = quad_form(q, x1, x1);
            if a2.is_zero() && a1.is_zero() && a0.is_zero() {
                return ContactSet::Line {
                    p: normalize_vec(x0),
                    q: normalize_vec(x1),
                };
            }
            // roots of a2 u^2 + 2 a1 u v + a0 v^2
            let disc = a1.clone() * a1.clone() - a2.clone() * a0.clone();
            match disc.signum() {
                -1 => ContactSet::Imaginary,
                0 => {
                    let (u, v) = if !a2.is_zero() {
                        (-a1.clone(), a2.clone())
                    } else {
                        (a0.clone(), -a1.clone())
                    };
                    let p = combine(x0, &u, x1, &v);
                    ContactSet::Points(vec![normalize_vec(&p)])
                }
                _ => {
                    // Two real points; exact only if disc is a perfect square.
                    match rat_sqrt(&disc) {
                        Some(s) => {
                            let mut pts = Vec::new();
                            for sgn in [T::one(), -T::one()] {
                                let (u, v) = if !a2.is_zero() {
                                    (-a1.clone() + sgn * s.clone(), a2.clone())
                                } else if !a0.is_zero() {
                                    (a0.clone(), -a1.clone() + sgn * s.clone())
                                } else {
                                    // a2 = a0 = 0, a1 != 0: roots u=0 and v=0
                                    continue;
                                };
                                pts.push(normalize_vec(&combine(x0, &u, x1, &v)));
                            }
                            if pts.is_empty() {
                                pts.push(normalize_vec(x0));
                                pts.push(normalize_vec(x1));
                            }
                            ContactSet::Points(pts)
                        }
                        None => {
                            let sd = disc.to_f64().sqrt();
                            let mut pts = Vec::new();
                            for sgn in [1.0, -1.0] {
                                let (u, v) = if !a2.is_zero() {
                                    (-a1.to_f64() + sgn * sd, a2.to_f64())
                                } else {
                                    (a0.to_f64(), -a1.to_f64() + sgn * sd)
                                };
                                let mut w = [0.0; 4];
                                for i in 0..4 {
                                    w[i] = x0[i].to_f64() * u + x1[i].to_f64() * v;
                                }
                                pts.push(w);
                            }
                            ContactSet::PointsApprox(pts)
                        }
                    }
                }
            }
        }
        _ => {
            // Kernel plane: restrict q to a 3x3 conic.
            let basis = &kernel[0..3];
            let mut r = Mat::<T>::zero(3);
            for i in 0..3 {
                for j in 0..3 {
                    r[(i, j)] = quad_form(q, &basis[i], &basis[j]);
                }
            }
            let (np, nn, _) = inertia(&r);
            if np == 3 || nn == 3 {
                return ContactSet::Imaginary;
            }
            if r.is_zero_mat() {
                // entire plane on the quadric: degenerate; represent by basis
                let plane = [
                    normalize_vec(&basis[0].to_vec()),
                    normalize_vec(&basis[1].to_vec()),
                    normalize_vec(&basis[2].to_vec()),
                ];
                return ContactSet::Conic {
                    plane,
                    representative: None,
                    representative_exact: Some(normalize_vec(&basis[0].to_vec())),
                };
            }
            let plane = [
                normalize_vec(&basis[0].to_vec()),
                normalize_vec(&basis[1].to_vec()),
                normalize_vec(&basis[2].to_vec()),
            ];
            let (rep_exact, rep_f64) = conic_real_point(&r);
            let representative_exact = rep_exact.map(|c| {
                let p = combine3(&basis[0], &c[0], &basis[1], &c[1], &basis[2], &c[2]);
                normalize_vec(&p)
            });
            let representative = rep_f64.map(|c| {
                let mut w = [0.0; 4];
                for i in 0..4 {
                    w[i] = basis[0][i].to_f64() * c[0]
                        + basis[1][i].to_f64() * c[1]
                        + basis[2][i].to_f64() * c[2];
                }
                w
            });
            ContactSet::Conic {
                plane,
                representative,
                representative_exact,
            }
        }
    }
}

/// Numeric kernel analysis for algebraic roots.
fn kernel_contact_set_f64<T: Scalar>(kernel: &[[f64; 4]], q: &Mat<T>, _lam: f64) -> ContactSet<T> {
    let qf: Vec<Vec<f64>> = (0..q.n)
        .map(|i| (0..q.n).map(|j| q[(i, j)].to_f64()).collect())
        .collect();
    let form = |x: &[f64; 4], y: &[f64; 4]| -> f64 {
        let mut s = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                s += x[i] * qf[i][j] * y[j];
            }
        }
        s
    };
    match kernel.len() {
        0 => ContactSet::Imaginary,
        1 => ContactSet::PointsApprox(vec![kernel[0]]),
        2 => {
            let a2 = form(&kernel[0], &kernel[0]);
            let a1 = form(&kernel[0], &kernel[1]);
            let a0 = form(&kernel[1], &kernel[1]);
            let scale = a2.abs().max(a1.abs()).max(a0.abs());
            if scale < 1e-13 {
                return ContactSet::PointsApprox(vec![kernel[0], kernel[1]]);
            }
            let disc = a1 * a1 - a2 * a0;
            if disc < -1e-10 * scale * scale {
                return ContactSet::Imaginary;
            }
            let sd = disc.max(0.0).sqrt();
            let mut pts = Vec::new();
            for sgn in [1.0, -1.0] {
                let (u, v) = if a2.abs() > 1e-14 {
                    (-a1 + sgn * sd, a2)
                } else {
                    (a0, -a1 + sgn * sd)
                };
                let mut w = [0.0; 4];
                for i in 0..4 {
                    w[i] = kernel[0][i] * u + kernel[1][i] * v;
                }
                pts.push(w);
            }
            ContactSet::PointsApprox(pts)
        }
        _ => {
            // Rank-1 kernel at an algebraic root: rare; return a numeric
            // representative by scanning the restricted conic.
            let mut r = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    r[i][j] = form(&kernel[i], &kernel[j]);
                }
            }
            for a in scan_values() {
                let c2 = r[0][0];
                let c1 = 2.0 * (r[0][1] * a + r[0][2]);
                let c0 = r[1][1] * a * a + 2.0 * r[1][2] * a + r[2][2];
                let disc = c1 * c1 - 4.0 * c2 * c0;
                if disc >= 0.0 && c2.abs() > 1e-14 {
                    let u = (-c1 + disc.sqrt()) / (2.0 * c2);
                    let mut w = [0.0; 4];
                    for i in 0..4 {
                        w[i] = kernel[0][i] * u + kernel[1][i] * a + kernel[2][i];
                    }
                    return ContactSet::PointsApprox(vec![w]);
                }
            }
            ContactSet::Imaginary
        }
    }
}

fn scan_values() -> impl Iterator<Item = f64> {
    (0..200).map(|k| {
        let v = (k / 2) as f64 * 0.25;
        if k % 2 == 0 {
            v
        } else {
            -v
        }
    })
}

/// Deterministic real point on a 3x3 conic; exact when a rational point is
/// hit, otherwise numeric. The conic must have real points (not definite).
fn conic_real_point<T: Scalar>(r: &Mat<T>) -> (Option<[T; 3]>, Option<[f64; 3]>) {
    // Degenerate conics: kernel vectors lie on the zero set.
    if rank(r) < 3 {
        let ns = null_space(r);
        if let Some(v) = ns.first() {
            return (Some([v[0].clone(), v[1].clone(), v[2].clone()]), {
                Some([v[0].to_f64(), v[1].to_f64(), v[2].to_f64()])
            });
        }
    }
    // Scan lines (u, a, 1): quadratic in u; prefer exact rational roots.
    let cands: Vec<Rat> = (0..40)
        .map(|k| {
            let v = Rat::new(((k / 2) as i64).into(), 2.into());
            if k % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    for orient in 0..3 {
        for a in &cands {
            let av = T::from_rat(a);
            // coordinates: orient chooses which slot carries the parameter u
            let fixed: [T; 3] = match orient {
                0 => [T::zero(), av.clone(), T::one()],
                1 => [av.clone(), T::zero(), T::one()],
                _ => [av.clone(), T::one(), T::zero()],
            };
            let dir: [T; 3] = match orient {
                0 => [T::one(), T::zero(), T::zero()],
                1 => [T::zero(), T::one(), T::zero()],
                _ => [T::zero(), T::zero(), T::one()],
            };
            let c2 = form3(r, &dir, &dir);
            let c1 = form3(r, &dir, &fixed);
            let c0 = form3(r, &fixed, &fixed);
            if c2.is_zero() {
                if !c1.is_zero() {
                    // linear: u = -c0 / (2 c1)
                    let u = -c0.clone() / (c1.clone() + c1.clone());
                    let p = [
                        dir[0].clone() * u.clone() + fixed[0].clone(),
                        dir[1].clone() * u.clone() + fixed[1].clone(),
                        dir[2].clone() * u + fixed[2].clone(),
                    ];
                    return (Some(p.clone()), Some([p[0].to_f64(), p[1].to_f64(), p[2].to_f64()]));
                }
                continue;
            }
            let disc = c1.clone() * c1.clone() - c2.clone() * c0.clone();
            match disc.signum() {
                -1 => continue,
                _ => {
                    if let Some(s) = rat_sqrt(&disc) {
                        let u = (-c1.clone() + s) / c2.clone();
                        let p = [
                            dir[0].clone() * u.clone() + fixed[0].clone(),
                            dir[1].clone() * u.clone() + fixed[1].clone(),
                            dir[2].clone() * u + fixed[2].clone(),
                        ];
                        return (
                            Some(p.clone()),
                            Some([p[0].to_f64(), p[1].to_f64(), p[2].to_f64()]),
                        );
                    }
                    let u = (-c1.to_f64() + disc.to_f64().sqrt()) / c2.to_f64();
                    let p = [
                        dir[0].to_f64() * u + fixed[0].to_f64(),
                        dir[1].to_f64() * u + fixed[1].to_f64(),
                        dir[2].to_f64() * u + fixed[2].to_f64(),
                    ];
                    return (None, Some(p));
                }
            }
        }
    }
    (None, None)
}

fn form3<T: Scalar>(r: &Mat<T>, x: &[T; 3], y: &[T; 3]) -> T {
    let mut s = T::zero();
    for i in 0..3 {
        for j in 0..3 {
            s = s + x[i].clone() * r[(i, j)].clone() * y[j].clone();
        }
    }
    s
}

fn quad_form<T: Scalar>(q: &Mat<T>, x: &[T], y: &[T]) -> T {
    let mut s = T::zero();
    for i in 0..q.n {
        for j in 0..q.n {
            s = s + x[i].clone() * q[(i, j)].clone() * y[j].clone();
        }
    }
    s
}

fn combine<T: Scalar>(x0: &[T], u: &T, x1: &[T], v: &T) -> Vec<T> {
    x0.iter()
        .zip(x1)
        .map(|(a, b)| a.clone() * u.clone() + b.clone() * v.clone())
        .collect()
}

fn combine3<T: Scalar>(x0: &[T], c0: &T, x1: &[T], c1: &T, x2: &[T], c2: &T) -> Vec<T> {
    (0..x0.len())
        .map(|i| {
            x0[i].clone() * c0.clone() + x1[i].clone() * c1.clone() + x2[i].clone() * c2.clone()
        })
        .collect()
}

/// Scale a homogeneous vector so its first nonzero entry (in a fixed scan
/// order preferring the w slot) is one.
fn normalize_vec<T: Scalar>(v: &[T]) -> [T; 4] {
    let mut out = [T::zero(), T::zero(), T::zero(), T::zero()];
    for (i, x) in v.iter().enumerate().take(4) {
        out[i] = x.clone();
    }
    let pivot = if !out[3].is_zero() {
        out[3].clone()
    } else {
        match out.iter().find(|x| !x.is_zero()) {
            Some(p) => p.clone(),
            None => return out,
        }
    };
    for x in &mut out {
        *x = x.clone() / pivot.clone();
    }
    out
}

/// Exact square root of a nonnegative scalar when it exists in the field.
fn rat_sqrt<T: Scalar>(x: &T) -> Option<T> {
    let r = x.as_rat()?;
    if r < Rat::zero() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    let cand = Rat::new(n, d);
    if &cand * &cand == r {
        Some(T::from_rat(&cand))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// 1D and 2D conic pencils
// ---------------------------------------------------------------------------

/// The eleven root-pattern rows for a pair of 1D conics (2x2 forms).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Table3Row {
    DistinctPositive = 1,
    DistinctNegative = 2,
    ZeroPositive = 3,
    ZeroNegative = 4,
    MixedSigns = 5,
    PositiveDouble = 6,
    NegativeDouble = 7,
    DoubleZero = 8,
    ComplexPair = 9,
    LinearZeroRoot = 10,
    IdenticallyZero = 11,
}

impl Table3Row {
    pub fn id(self) -> u32 {
        self as u32
    }
    /// Touching configurations per the double-root / identically-zero rule.
    pub fn touching(self) -> bool {
        matches!(
            self,
            Table3Row::PositiveDouble
                | Table3Row::NegativeDouble
                | Table3Row::DoubleZero
                | Table3Row::IdenticallyZero
        )
    }
}

/// Classify two 1D conics by the roots of det(λ Â - B̂).
pub fn classify_1d<T: Scalar>(ah: &Mat<T>, bh: &Mat<T>) -> Table3Row {
    assert_eq!(ah.n, 2);
    assert_eq!(bh.n, 2);
    let det_a = ah.det();
    let det_b = bh.det();
    let two = T::from_rat(&Rat::from_integer(2.into()));
    let mix = ah[(0, 0)].clone() * bh[(1, 1)].clone() + ah[(1, 1)].clone() * bh[(0, 0)].clone()
        - two * ah[(0, 1)].clone() * bh[(0, 1)].clone();
    // f(λ) = det_a λ^2 - mix λ + det_b
    if det_a.is_zero() && mix.is_zero() && det_b.is_zero() {
        return Table3Row::IdenticallyZero;
    }
    if det_a.is_zero() {
        // degree <= 1; the tabulated linear row carries a zero root
        return Table3Row::LinearZeroRoot;
    }
    let four = T::from_rat(&Rat::from_integer(4.into()));
    let disc = mix.clone() * mix.clone() - four * det_a.clone() * det_b.clone();
    match disc.signum() {
        -1 => Table3Row::ComplexPair,
        0 => {
            // double root mix / (2 det_a)
            let s = mix.signum() * det_a.signum();
            match s {
                1 => Table3Row::PositiveDouble,
                -1 => Table3Row::NegativeDouble,
                _ => Table3Row::DoubleZero,
            }
        }
        _ => {
            let prod_sign = det_b.signum() * det_a.signum();
            let sum_sign = mix.signum() * det_a.signum();
            match prod_sign {
                0 => {
                    // one root zero, other = mix/det_a
                    match sum_sign {
                        1 => Table3Row::ZeroPositive,
                        -1 => Table3Row::ZeroNegative,
                        _ => Table3Row::DoubleZero,
                    }
                }
                -1 => Table3Row::MixedSigns,
                _ => {
                    if sum_sign > 0 {
                        Table3Row::DistinctPositive
                    } else {
                        Table3Row::DistinctNegative
                    }
                }
            }
        }
    }
}

/// Result of a static 2D conic-conic tangency check.
#[derive(Clone, Debug)]
pub enum TwoDContact<T: Scalar> {
    Identical,
    Touching {
        lambda0: Option<f64>,
        point: [f64; 3],
        point_exact: Option<[T; 3]>,
    },
    NotTouching,
    /// det(λA - B) vanished identically without proportional matrices.
    DegenerateSpecial,
}

/// Tangency of two static conics in one plane: a multiple real root of the
/// cubic characteristic polynomial with a real contact point.
pub fn classify_2d<T: Scalar>(a3: &Mat<T>, b3: &Mat<T>) -> TwoDContact<T> {
    assert_eq!(a3.n, 3);
    assert_eq!(b3.n, 3);
    if proportional(a3, b3) {
        return TwoDContact::Identical;
    }
    let f = char_poly(a3, b3);
    if f.is_zero() {
        return TwoDContact::DegenerateSpecial;
    }
    let bound = cauchy_bound(&f);
    let lo = -bound.clone();
    let mut roots: Vec<PencilRoot<T>> = isolate_real_roots(&f, &lo, &bound)
        .into_iter()
        .map(PencilRoot::Finite)
        .collect();
    let deficiency = 3 - f.degree();
    if deficiency >= 2 {
        roots.push(PencilRoot::Infinity {
            multiplicity: deficiency as u32,
        });
    }
    for r in &roots {
        if r.multiplicity() < 2 {
            continue;
        }
        if let Some(hit) = contact_point_2d(a3, b3, r) {
            return hit;
        }
    }
    TwoDContact::NotTouching
}

fn contact_point_2d<T: Scalar>(
    a3: &Mat<T>,
    b3: &Mat<T>,
    root: &PencilRoot<T>,
) -> Option<TwoDContact<T>> {
    // Kernel of λ0 A - B (or of A for the infinity root); restriction of
    // the other matrix decides realness when the kernel is a line.
    let (kernel_exact, lam): (Option<(Mat<T>, T)>, Option<f64>) = match root {
        PencilRoot::Infinity { .. } => (Some((a3.clone(), T::zero())), None),
        PencilRoot::Finite(ri) => match &ri.exact {
            Some(x) => {
                let m0 = a3.scale_by(&T::from_rat(x)).sub_mat(b3);
                (Some((m0, T::from_rat(x))), Some(Scalar::to_f64(x)))
            }
            None => (None, Some(ri.to_f64())),
        },
    };
    match kernel_exact {
        Some((m0, _)) => {
            let ns = null_space(&m0);
            match ns.len() {
                0 => None,
                1 => {
                    let v = &ns[0];
                    let p = [v[0].to_f64(), v[1].to_f64(), v[2].to_f64()];
                    Some(TwoDContact::Touching {
                        lambda0: root.to_f64(),
                        point: p,
                        point_exact: Some([v[0].clone(), v[1].clone(), v[2].clone()]),
                    })
                }
                _ => {
                    // Kernel line: restrict the other matrix; real roots of
                    // the binary form are the contact points.
                    let other = match root {
                        PencilRoot::Infinity { .. } => b3,
                        _ => a3,
                    };
                    let x0 = &ns[0];
                    let x1 = &ns[1];
                    let a2 = quad_form(other, x0, x0);
                    let a1 = quad_form(other, x0, x1);
                    let a0 = quad_form(other, x1, x1);
                    if a2.is_zero() && a1.is_zero() && a0.is_zero() {
                        let p = [x0[0].to_f64(), x0[1].to_f64(), x0[2].to_f64()];
                        return Some(TwoDContact::Touching {
                            lambda0: root.to_f64(),
                            point: p,
                            point_exact: Some([x0[0].clone(), x0[1].clone(), x0[2].clone()]),
                        });
                    }
                    let disc = a1.clone() * a1.clone() - a2.clone() * a0.clone();
                    if disc.signum() < 0 {
                        return None;
                    }
                    let (u, v) = if !a2.is_zero() {
                        (
                            -a1.to_f64() + disc.to_f64().max(0.0).sqrt(),
                            a2.to_f64(),
                        )
                    } else if !a1.is_zero() {
                        (0.0, 1.0)
                    } else {
                        (1.0, 0.0)
                    };
                    let p = [
                        x0[0].to_f64() * u + x1[0].to_f64() * v,
                        x0[1].to_f64() * u + x1[1].to_f64() * v,
                        x0[2].to_f64() * u + x1[2].to_f64() * v,
                    ];
                    let exact = match rat_sqrt(&disc) {
                        Some(s) => {
                            let (ue, ve) = if !a2.is_zero() {
                                (-a1.clone() + s, a2.clone())
                            } else {
                                (T::zero(), T::one())
                            };
                            Some([
                                x0[0].clone() * ue.clone() + x1[0].clone() * ve.clone(),
                                x0[1].clone() * ue.clone() + x1[1].clone() * ve.clone(),
                                x0[2].clone() * ue + x1[2].clone() * ve,
                            ])
                        }
                        None => None,
                    };
                    Some(TwoDContact::Touching {
                        lambda0: root.to_f64(),
                        point: p,
                        point_exact: exact,
                    })
                }
            }
        }
        None => {
            // Algebraic root: numeric kernel via adjugate columns.
            let l = lam.unwrap();
            let mut m = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] = l * a3[(i, j)].to_f64() - b3[(i, j)].to_f64();
                }
            }
            let adj = adj3_f64(&m);
            // best column of the adjugate = kernel direction for rank 2
            let mut best = 0;
            let mut bestn = -1.0;
            for c in 0..3 {
                let nrm = adj[0][c] * adj[0][c] + adj[1][c] * adj[1][c] + adj[2][c] * adj[2][c];
                if nrm > bestn {
                    bestn = nrm;
                    best = c;
                }
            }
            if bestn <= 1e-18 {
                return None;
            }
            let p = [adj[0][best], adj[1][best], adj[2][best]];
            Some(TwoDContact::Touching {
                lambda0: Some(l),
                point: p,
                point_exact: None,
            })
        }
    }
}

fn adj3_f64(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let c = |i1: usize, i2: usize, j1: usize, j2: usize| -> f64 {
        m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]
    };
    [
        [c(1, 2, 1, 2), -c(0, 2, 1, 2), c(0, 1, 1, 2)],
        [-c(1, 2, 0, 2), c(0, 2, 0, 2), -c(0, 1, 0, 2)],
        [c(1, 2, 0, 1), -c(0, 2, 0, 1), c(0, 1, 0, 1)],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn diag4(d: [i64; 4]) -> Mat<Rat> {
        let mut m = Mat::<Rat>::zero(4);
        for i in 0..4 {
            m[(i, i)] = rat_int(d[i]);
        }
        m
    }

    #[test]
    fn char_poly_of_crossing_cylinders() {
        // x^2+z^2=1 and y^2+z^2=1: f = λ(λ-1)^2 up to sign
        let a = diag4([1, 0, 1, -1]);
        let b = diag4([0, 1, 1, -1]);
        let f = char_poly(&a, &b);
        let want = UniPoly::<Rat>::from_ints(&[0, 1, -2, 1], Var::Lambda);
        assert!(f == want || f == -want);
    }

    #[test]
    fn char_poly_sphere_cylinder() {
        // sphere vs cylinder x^2+y^2=1: f = -λ(λ-1)^3
        let a = diag4([1, 1, 1, -1]);
        let b = diag4([1, 1, 0, -1]);
        let f = char_poly(&a, &b);
        let want = -(UniPoly::<Rat>::from_ints(&[0, 1], Var::Lambda)
            * UniPoly::from_ints(&[-1, 1], Var::Lambda)
            * UniPoly::from_ints(&[-1, 1], Var::Lambda)
            * UniPoly::from_ints(&[-1, 1], Var::Lambda));
        assert!(f == want || f == -want.clone());
    }

    #[test]
    fn identical_quadrics_char_poly() {
        let a = diag4([1, 2, 3, -1]);
        let f = char_poly(&a, &a);
        // det(A) (λ-1)^4
        let lin = UniPoly::<Rat>::from_ints(&[-1, 1], Var::Lambda);
        let want = (lin.clone() * lin.clone() * lin.clone() * lin).scale(&a.det());
        assert_eq!(f, want);
    }

    #[test]
    fn crossing_cylinders_sequence_and_no_contact() {
        let a = diag4([1, 0, 1, -1]);
        let b = diag4([0, 1, 1, -1]);
        let s = signature_sequence(&a, &b).unwrap();
        assert_eq!(s.to_string(), "(2,((1,1)),2,(1,2),1,(1,2),2)");
        let seg = segre_characteristic(&a, &b).unwrap();
        assert_eq!(seg.to_string(), "[(11)11]_3");
        let c = classify_contact(&a, &b).unwrap();
        assert_eq!(c.kind, ContactKind::NoContact);
    }

    #[test]
    fn sphere_cylinder_contact_circle() {
        let a = diag4([1, 1, 1, -1]);
        let b = diag4([1, 1, 0, -1]);
        let c = classify_contact(&a, &b).unwrap();
        assert_eq!(c.kind, ContactKind::CurveContact);
        // triple root λ0 = 1, rank 1, kernel = plane z = 0
        let piece = c
            .pieces
            .iter()
            .find(|p| matches!(p.set, ContactSet::Conic { .. }))
            .unwrap();
        assert_eq!(piece.rank, 1);
        match &piece.set {
            ContactSet::Conic {
                representative_exact,
                ..
            } => {
                let p = representative_exact.as_ref().expect("rational point");
                // on both quadrics
                let pv: Vec<Rat> = p.to_vec();
                assert!(quad_form(&a, &pv, &pv).is_zero());
                assert!(quad_form(&b, &pv, &pv).is_zero());
                // in the plane z = 0
                assert!(p[2].is_zero());
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn proportional_is_surface_contact() {
        let a = diag4([1, 1, 1, -1]);
        let b = a.scale_by(&rat_int(2));
        let c = classify_contact(&a, &b).unwrap();
        assert_eq!(c.kind, ContactKind::SurfaceContact);
    }

    #[test]
    fn distinct_diag_pencil_is_generic() {
        let a = diag4([1, 1, 1, 1]);
        let b = diag4([1, 2, 3, 4]);
        let seg = segre_characteristic(&a, &b).unwrap();
        assert_eq!(seg.to_string(), "[1111]_4");
        let js = jordan_structure(&a, &b, &rat_int(2));
        assert_eq!(js.block_sizes, vec![1]);
    }

    #[test]
    fn table3_touching_intervals() {
        // endpoints {-1,1} and {1,3}: share endpoint 1 -> negative double
        let mut ah = Mat::<Rat>::zero(2);
        ah[(0, 0)] = rat_int(1);
        ah[(1, 1)] = rat_int(-1);
        let mut bh = Mat::<Rat>::zero(2);
        bh[(0, 0)] = rat_int(1);
        bh[(0, 1)] = rat_int(-2);
        bh[(1, 0)] = rat_int(-2);
        bh[(1, 1)] = rat_int(3);
        let row = classify_1d(&ah, &bh);
        assert_eq!(row, Table3Row::NegativeDouble);
        assert!(row.touching());
    }

    #[test]
    fn table3_disjoint_same_sign() {
        // u^2-1 and u^2-9: separated nested intervals, no touch
        let mut ah = Mat::<Rat>::zero(2);
        ah[(0, 0)] = rat_int(1);
        ah[(1, 1)] = rat_int(-1);
        let mut bh = Mat::<Rat>::zero(2);
        bh[(0, 0)] = rat_int(1);
        bh[(1, 1)] = rat_int(-9);
        let row = classify_1d(&ah, &bh);
        assert!(matches!(
            row,
            Table3Row::DistinctPositive | Table3Row::DistinctNegative
        ));
        assert!(!row.touching());
    }

    #[test]
    fn table3_identical_real_conics() {
        // Â = B̂ nondegenerate: f = det(Â)(λ-1)^2, a positive double root;
        // still a touching row.
        let mut ah = Mat::<Rat>::zero(2);
        ah[(0, 0)] = rat_int(1);
        ah[(1, 1)] = rat_int(-1);
        let row = classify_1d(&ah, &ah.clone());
        assert_eq!(row, Table3Row::PositiveDouble);
        assert!(row.touching());
    }

    #[test]
    fn classify_2d_tangent_circles() {
        // unit circle and circle centered (2,0) radius 1 touch at (1,0)
        let mut a = Mat::<Rat>::zero(3);
        a[(0, 0)] = rat_int(1);
        a[(1, 1)] = rat_int(1);
        a[(2, 2)] = rat_int(-1);
        let mut b = Mat::<Rat>::zero(3);
        b[(0, 0)] = rat_int(1);
        b[(1, 1)] = rat_int(1);
        b[(0, 2)] = rat_int(-2);
        b[(2, 0)] = rat_int(-2);
        b[(2, 2)] = rat_int(3);
        match classify_2d(&a, &b) {
            TwoDContact::Touching { point_exact, .. } => {
                let p = point_exact.expect("rational contact");
                // homogeneous (1,0,1)
                let w = p[2].clone();
                assert_eq!(p[0].clone() / w.clone(), rat_int(1));
                assert!(p[1].is_zero());
            }
            other => panic!("expected touching, got {:?}", other),
        }
    }

    #[test]
    fn classify_2d_equal_circles() {
        let mut a = Mat::<Rat>::zero(3);
        a[(0, 0)] = rat_int(1);
        a[(1, 1)] = rat_int(1);
        a[(2, 2)] = rat_int(-1);
        assert!(matches!(
            classify_2d(&a, &a.clone()),
            TwoDContact::Identical
        ));
    }

    #[test]
    fn classify_2d_paper_cross_section() {
        // -(16λ-1)(256λ²+112λ+1) has no multiple root: cross-section
        // ellipses at the degenerate instant do not touch.
        let mut a = Mat::<Rat>::zero(3);
        a[(0, 0)] = rat(1, 25);
        a[(1, 1)] = rat(1, 100);
        a[(2, 2)] = rat_int(-1);
        let mut b = Mat::<Rat>::zero(3);
        b[(0, 0)] = rat(1, 25);
        b[(1, 1)] = rat(1, 100);
        b[(1, 2)] = rat(3, 10);
        b[(2, 1)] = rat(3, 10);
        b[(2, 2)] = rat_int(8);
        assert!(matches!(classify_2d(&a, &b), TwoDContact::NotTouching));
    }

    #[test]
    fn reciprocal_roots_under_swap() {
        let a = diag4([1, 1, 1, -1]);
        let b = diag4([1, 2, 3, 4]);
        let fab = char_poly(&a, &b);
        let fba = char_poly(&b, &a);
        // nonzero roots are reciprocal: λ^4 f_ab(1/λ) ∝ f_ba(λ)
        let rev = fab.reverse();
        let lhs = rev.scale(&fba.lead());
        let rhs = fba.scale(&rev.lead());
        assert_eq!(lhs, rhs);
    }
}
