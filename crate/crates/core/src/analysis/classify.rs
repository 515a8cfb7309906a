//! Long-run outcome of a single initial condition under map `M`.
//!
//! An orbit is followed until one of the following happens:
//!
//! * it enters the closed immediate basin of the fixed segment, where its
//!   limit is known exactly from the chartist-only closed form;
//! * it leaves the divergence radius or stops being finite;
//! * the iteration budget runs out, in which case the tail of the orbit is
//!   searched for a cycle. Genuine cycles do not exist for generic
//!   parameters, so a hit is reported as an anomaly rather than as an
//!   attractor type. Bounded orbits without recurrence are weird
//!   quasiperiodic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::analysis::basin::in_immediate_basin;
use crate::error::{Error, Result};
use crate::map::{apply_branch, branch_of, c_limit, State};
use crate::params::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ClassLabel {
    /// Converges to the origin (the fundamental value). Carries the limit.
    FundamentalFp(f64),
    /// Converges to `(u, u)` with `0 < |u| <= h`.
    NonfundamentalFp(f64),
    /// Bounded, non-recurrent: weird quasiperiodic attractor.
    Wqa,
    Divergent,
    /// Budget too small to decide.
    Undecided,
    /// A cycle of the given period was found in the tail. Should not happen
    /// for generic parameters and indicates a problem.
    PeriodicAnomaly(usize),
}

/// Field-less discriminant of [`ClassLabel`], used for counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LabelKind {
    FundamentalFp,
    NonfundamentalFp,
    Wqa,
    Divergent,
    Undecided,
    PeriodicAnomaly,
}

impl LabelKind {
    pub const ALL: [LabelKind; 6] = [
        LabelKind::FundamentalFp,
        LabelKind::NonfundamentalFp,
        LabelKind::Wqa,
        LabelKind::Divergent,
        LabelKind::Undecided,
        LabelKind::PeriodicAnomaly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LabelKind::FundamentalFp => "FundamentalFP",
            LabelKind::NonfundamentalFp => "NonfundamentalFP",
            LabelKind::Wqa => "WQA",
            LabelKind::Divergent => "Divergent",
            LabelKind::Undecided => "Undecided",
            LabelKind::PeriodicAnomaly => "PeriodicAnomaly",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl ClassLabel {
    pub fn kind(&self) -> LabelKind {
        match self {
            ClassLabel::FundamentalFp(_) => LabelKind::FundamentalFp,
            ClassLabel::NonfundamentalFp(_) => LabelKind::NonfundamentalFp,
            ClassLabel::Wqa => LabelKind::Wqa,
            ClassLabel::Divergent => LabelKind::Divergent,
            ClassLabel::Undecided => LabelKind::Undecided,
            ClassLabel::PeriodicAnomaly(_) => LabelKind::PeriodicAnomaly,
        }
    }

    /// Limit coordinate `u` for the fixed-point variants.
    pub fn limit(&self) -> Option<f64> {
        match *self {
            ClassLabel::FundamentalFp(u) | ClassLabel::NonfundamentalFp(u) => Some(u),
            _ => None,
        }
    }

    pub fn is_fixed_point(&self) -> bool {
        self.limit().is_some()
    }

    pub fn name(&self) -> &'static str {
        self.kind().name()
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::NonfundamentalFp(u) => write!(f, "NonfundamentalFP({u})"),
            ClassLabel::PeriodicAnomaly(k) => write!(f, "PeriodicAnomaly({k})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Budgets and tolerances of the classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierConfig {
    /// Iteration budget.
    pub t_max: usize,
    /// Divergence radius (Chebyshev norm). `None` means `1e6 * max(h, 1)`.
    pub r_div: Option<f64>,
    /// Limits with `|u|` below this are the fundamental value; also the
    /// convergence tolerance of the pure-simulation mode.
    pub eps_fix: f64,
    /// Number of final states scanned for recurrence.
    pub w_tail: usize,
    /// Largest period scanned.
    pub p_max: usize,
    /// Recurrence tolerance (Chebyshev norm).
    pub eps_rec: f64,
    /// Iterations discarded before attractor samples are kept.
    pub transient: usize,
    /// Stop as soon as the orbit enters the immediate basin. When off, the
    /// orbit is simulated until it settles within `eps_fix` of the diagonal.
    pub analytic_exit: bool,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        Self {
            t_max: 100_000,
            r_div: None,
            eps_fix: 1e-10,
            w_tail: 4096,
            p_max: 64,
            eps_rec: 1e-9,
            transient: 2000,
            analytic_exit: true,
        }
    }
}

impl ClassifierConfig {
    pub fn divergence_radius(&self, h: f64) -> f64 {
        self.r_div.unwrap_or(1e6 * h.max(1.0))
    }

    /// Same tolerances with the pure-simulation fallback.
    pub fn simulation_only(&self) -> Self {
        Self { analytic_exit: false, ..self.clone() }
    }

    pub fn validate(&self, h: f64) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.t_max == 0 || self.w_tail == 0 || self.p_max == 0 {
            return bad("t_max, w_tail and p_max must be positive");
        }
        if !(self.eps_fix > 0.0 && self.eps_rec > 0.0) {
            return bad("eps_fix and eps_rec must be positive");
        }
        if self.p_max >= self.w_tail {
            return bad("p_max must be smaller than w_tail");
        }
        let r = self.divergence_radius(h);
        if !(r.is_finite() && r > 10.0 * h) {
            return bad("r_div must be finite and much larger than h");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Diagnostics {
    /// Steps taken before the decision.
    pub iterations: usize,
    /// Visits to the L, M and R partitions.
    pub branch_visits: [u64; 3],
    /// State at which the decision was taken.
    pub exit_state: State,
    /// Post-transient tail of the orbit, kept for bounded undecided outcomes.
    pub attractor: Vec<State>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub label: ClassLabel,
    pub diagnostics: Diagnostics,
}

fn fixed_label(u: f64, cfg: &ClassifierConfig) -> ClassLabel {
    if u.abs() <= cfg.eps_fix {
        ClassLabel::FundamentalFp(u)
    } else {
        ClassLabel::NonfundamentalFp(u)
    }
}

/// Limit value if the orbit is already decided to converge onto the fixed segment.
#[inline]
fn settled(s: State, p: &ModelParams, cfg: &ClassifierConfig) -> Option<f64> {
    if s.x == s.y && s.x.abs() <= p.h {
        return Some(s.x);
    }
    if p.b >= 1.0 {
        return None;
    }
    if cfg.analytic_exit {
        if in_immediate_basin(s, p) {
            return c_limit(s, p.b).ok();
        }
    } else if (s.x - s.y).abs() <= cfg.eps_fix && s.x.abs() <= p.h {
        return Some(s.x);
    }
    None
}

/// Smallest period `q <= p_max` such that the whole window repeats after `q`
/// steps within `eps`.
pub fn find_recurrence(window: &[State], p_max: usize, eps: f64) -> Option<usize> {
    (1..=p_max.min(window.len().saturating_sub(1))).find(|&q| {
        window.iter().zip(&window[q..]).all(|(a, b)| a.dist_inf(b) <= eps)
    })
}

pub fn classify_trajectory(s0: State, p: &ModelParams, cfg: &ClassifierConfig) -> Classification {
    let radius = cfg.divergence_radius(p.h);
    let tail_start = (cfg.t_max + 1).saturating_sub(cfg.w_tail).max(cfg.transient);
    let mut diag = Diagnostics::default();
    let mut tail = Vec::new();
    let mut s = s0;

    let label = 'orbit: {
        for t in 0..=cfg.t_max {
            diag.iterations = t;
            diag.exit_state = s;
            if !s.is_finite() || s.max_abs() > radius {
                break 'orbit ClassLabel::Divergent;
            }
            if let Some(u) = settled(s, p, cfg) {
                break 'orbit fixed_label(u, cfg);
            }
            if t >= tail_start {
                tail.push(s);
            }
            if t == cfg.t_max {
                break;
            }
            let br = branch_of(s, p);
            diag.branch_visits[br.index()] += 1;
            s = apply_branch(br, s, p);
        }
        if tail.len() < 2 * cfg.p_max {
            ClassLabel::Undecided
        } else if let Some(q) = find_recurrence(&tail, cfg.p_max, cfg.eps_rec) {
            ClassLabel::PeriodicAnomaly(q)
        } else {
            ClassLabel::Wqa
        }
    };
    diag.attractor = tail;
    if !matches!(label, ClassLabel::Wqa | ClassLabel::PeriodicAnomaly(_) | ClassLabel::Undecided) {
        diag.attractor.clear();
    }
    Classification { label, diagnostics: diag }
}
