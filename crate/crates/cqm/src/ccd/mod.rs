//! The CCD subproblem solvers and the first-contact driver.
//!
//! Each subproblem produces an ordered stream of candidate time instants
//! from roots of exact polynomials (resultants, discriminants, incidence
//! conditions). Candidates are analyzed in increasing time; the first one
//! that yields a validated contact point settles the subproblem. The driver
//! takes the earliest validated contact over all subproblems.

pub mod cases;
pub mod numeric;

use crate::model::{Cqm, Membership, Subproblem};
use crate::roots::{RootInterval, UndecidableSign};
use crate::scalar::{Rat, Scalar};
use num_traits::Zero;
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CcdError {
    #[error("CQMs intersect at the start of the time domain (separation precondition)")]
    OverlapAtStart,
    #[error("undecidable sign while solving subproblem {0}")]
    Undecidable(String),
    #[error("unsupported degenerate configuration in subproblem {0}: {1}")]
    UnsupportedDegenerate(String, String),
    #[error("subproblem {0}: {1}")]
    Internal(String, String),
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub domain: (Rat, Rat),
    /// Refinement width for reported time roots.
    pub time_eps: Rat,
    /// Relative boundary band for numeric membership tests.
    pub boundary_tol: f64,
    /// Relative threshold for numeric rank decisions.
    pub rank_tol: f64,
    pub prune: bool,
    /// Surface samples per element for the start-separation probe.
    pub precheck_samples: usize,
    pub skip_precheck: bool,
}

impl SolverConfig {
    pub fn new(domain: (Rat, Rat)) -> Self {
        SolverConfig {
            domain,
            time_eps: crate::roots::eps_time(),
            boundary_tol: 1e-7,
            rank_tol: 1e-8,
            prune: true,
            precheck_samples: 512,
            skip_precheck: false,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EventKind {
    Point,
    Curve,
    Surface,
}

impl std::fmt::Display for EventKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EventKind::Point => write!(f, "point"),
            EventKind::Curve => write!(f, "curve"),
            EventKind::Surface => write!(f, "surface"),
        }
    }
}

/// A validated (or candidate) contact.
#[derive(Clone, Debug)]
pub struct ContactEvent<T: Scalar> {
    pub t: RootInterval<T>,
    pub t_f64: f64,
    /// Dehomogenized contact point (w = 1).
    pub point: [f64; 4],
    pub point_exact: Option<[T; 4]>,
    pub kind: EventKind,
    /// Set when the contact condition holds on the whole domain rather than
    /// at an isolated instant.
    pub persistent: bool,
}

#[derive(Clone, Debug)]
pub struct CandidateRecord {
    pub t_f64: f64,
    pub t_display: String,
    pub status: String,
    pub accepted: bool,
    pub lambda0: Option<f64>,
    pub point: Option<[f64; 3]>,
}

#[derive(Clone, Debug, Default)]
pub struct SubproblemLog {
    pub label: String,
    pub case: String,
    pub contact_type: String,
    pub candidates: Vec<CandidateRecord>,
    pub notes: Vec<String>,
}

impl SubproblemLog {
    pub fn rejected(&mut self, t: &TimeStamp, why: impl Into<String>) {
        self.candidates.push(CandidateRecord {
            t_f64: t.f64,
            t_display: t.display.clone(),
            status: why.into(),
            accepted: false,
            lambda0: t.lambda0,
            point: t.point,
        });
    }

    pub fn accepted(&mut self, t: &TimeStamp) {
        self.candidates.push(CandidateRecord {
            t_f64: t.f64,
            t_display: t.display.clone(),
            status: "accepted".into(),
            accepted: true,
            lambda0: t.lambda0,
            point: t.point,
        });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

/// Display bundle for one candidate row in the log.
#[derive(Clone, Debug)]
pub struct TimeStamp {
    pub f64: f64,
    pub display: String,
    pub lambda0: Option<f64>,
    pub point: Option<[f64; 3]>,
}

impl TimeStamp {
    pub fn of<T: Scalar>(t: &RootInterval<T>) -> Self {
        TimeStamp {
            f64: t.to_f64(),
            display: match &t.exact {
                Some(x) => format!("{}", x),
                None => format!("[{}, {}]", x_disp(&t.lo), x_disp(&t.hi)),
            },
            lambda0: None,
            point: None,
        }
    }
    pub fn with_lambda(mut self, l: Option<f64>) -> Self {
        self.lambda0 = l;
        self
    }
    pub fn with_point(mut self, p: Option<[f64; 3]>) -> Self {
        self.point = p;
        self
    }
}

fn x_disp(r: &Rat) -> String {
    format!("{:.12}", crate::scalar::Scalar::to_f64(r))
}

/// Order two algebraic instants, refining until separated (or proven equal
/// through a shared defining factor).
pub fn cmp_times<T: Scalar>(a: &mut RootInterval<T>, b: &mut RootInterval<T>) -> Ordering {
    if a.same_root(b) {
        return Ordering::Equal;
    }
    for _ in 0..256 {
        if a.hi < b.lo {
            return Ordering::Less;
        }
        if b.hi < a.lo {
            return Ordering::Greater;
        }
        let w = {
            let wa = a.width();
            let wb = b.width();
            if wa > wb {
                wa
            } else {
                wb
            }
        };
        if w.is_zero() {
            break;
        }
        let eps = w / Rat::from_integer(4.into());
        a.refine(&eps);
        b.refine(&eps);
    }
    a.to_f64()
        .partial_cmp(&b.to_f64())
        .unwrap_or(Ordering::Equal)
}

/// Merge candidate instants from several polynomial sources into one
/// ascending, deduplicated stream tagged with source markers.
pub fn merge_candidates<T: Scalar>(
    mut lists: Vec<(Vec<RootInterval<T>>, u8)>,
) -> Vec<(RootInterval<T>, u8)> {
    let mut all: Vec<(RootInterval<T>, u8)> = Vec::new();
    for (list, tag) in lists.drain(..) {
        for r in list {
            all.push((r, tag));
        }
    }
    // Deduplicate: equal roots keep the union of tags (bitwise or).
    let mut out: Vec<(RootInterval<T>, u8)> = Vec::new();
    'next: for (mut r, tag) in all {
        for (q, qtag) in out.iter_mut() {
            if q.same_root(&mut r) {
                *qtag |= tag;
                continue 'next;
            }
        }
        out.push((r, tag));
    }
    out.sort_by(|x, y| {
        let mut a = x.0.clone();
        let mut b = y.0.clone();
        cmp_times(&mut a, &mut b)
    });
    out
}

/// Outcome of one full run.
#[derive(Clone, Debug)]
pub enum Outcome<T: Scalar> {
    CollisionFree,
    FirstContact {
        /// All co-minimal events, ordered by subproblem index.
        events: Vec<(usize, ContactEvent<T>)>,
    },
}

#[derive(Clone, Debug)]
pub struct RunResult<T: Scalar> {
    pub outcome: Outcome<T>,
    pub subproblems: Vec<Subproblem>,
    pub logs: Vec<SubproblemLog>,
}

/// Solve all subproblems and return the first validated contact.
pub fn run_ccd<T: Scalar>(
    qa: &Cqm<T>,
    qb: &Cqm<T>,
    cfg: &SolverConfig,
) -> Result<RunResult<T>, CcdError> {
    if !cfg.skip_precheck {
        check_start_separation(qa, qb, cfg)?;
    }
    let subs = crate::model::enumerate_subproblems(qa, qb);
    let mut logs: Vec<SubproblemLog> = Vec::with_capacity(subs.len());
    let mut best: Option<(usize, ContactEvent<T>)> = None;
    let mut events: Vec<(usize, ContactEvent<T>)> = Vec::new();

    for (idx, sub) in subs.iter().enumerate() {
        let mut log = SubproblemLog {
            label: sub.label.clone(),
            case: sub.case.roman().to_string(),
            contact_type: sub.contact_type.to_string(),
            ..Default::default()
        };
        let bound = if cfg.prune {
            best.as_ref().map(|(_, e)| e.t.hi.clone())
        } else {
            None
        };
        let ev = cases::solve_subproblem(qa, qb, sub, cfg, bound.as_ref(), &mut log)?;
        if let Some(e) = ev {
            let replace = match &mut best {
                None => true,
                Some((_, b)) => {
                    let mut et = e.t.clone();
                    cmp_times(&mut et, &mut b.t) == Ordering::Less
                }
            };
            if replace {
                best = Some((idx, e.clone()));
            }
            events.push((idx, e));
        }
        logs.push(log);
    }

    let outcome = match best {
        None => Outcome::CollisionFree,
        Some((_, b)) => {
            let mut bt = b.t.clone();
            let mut minimal: Vec<(usize, ContactEvent<T>)> = Vec::new();
            for (idx, e) in events {
                let mut et = e.t.clone();
                if cmp_times(&mut et, &mut bt) == Ordering::Equal {
                    minimal.push((idx, e));
                }
            }
            minimal.sort_by_key(|(i, _)| *i);
            Outcome::FirstContact { events: minimal }
        }
    };
    Ok(RunResult {
        outcome,
        subproblems: subs,
        logs,
    })
}

/// Start-separation guard: boundary samples of each CQM probed against the
/// other at t0. This is a sampling heuristic, not part of the contact
/// algebra; scenes that defeat it still fail loudly later.
fn check_start_separation<T: Scalar>(
    qa: &Cqm<T>,
    qb: &Cqm<T>,
    cfg: &SolverConfig,
) -> Result<(), CcdError> {
    let t0 = crate::scalar::Scalar::to_f64(&cfg.domain.0);
    let pa = crate::oracle::boundary_samples(qa, cfg.precheck_samples, cfg.boundary_tol);
    let pb = crate::oracle::boundary_samples(qb, cfg.precheck_samples, cfg.boundary_tol);
    let ma = qa.motion.at_f64(t0);
    let mb = qb.motion.at_f64(t0);
    let probe = |pts: &[[f64; 4]], m: &[[f64; 4]; 4], other: &Cqm<T>| -> bool {
        for p in pts {
            let mut w = [0.0; 4];
            for i in 0..4 {
                for j in 0..4 {
                    w[i] += m[i][j] * p[j];
                }
            }
            if let Ok(Membership::Interior) = other.membership_f64(&w, t0, cfg.boundary_tol) {
                return true;
            }
        }
        false
    };
    if probe(&pa, &ma, qb) || probe(&pb, &mb, qa) {
        return Err(CcdError::OverlapAtStart);
    }
    Ok(())
}

impl From<UndecidableSign> for CcdError {
    fn from(_: UndecidableSign) -> Self {
        CcdError::Undecidable(String::new())
    }
}
