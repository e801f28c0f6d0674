//! Derivative-free minimization with the COBYLA linear-approximation
//! trust-region method, wrapped behind a deterministic, history-recording
//! interface.
//!
//! The backend counts function evaluations, which is also what the
//! `max_iters` cap limits (matching the common COBYLA convention where the
//! iteration budget is an evaluation budget). `history[i]` is the cost at
//! evaluation `i`, so both the per-evaluation trace and the running best are
//! recoverable.

use std::cell::RefCell;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};

/// Settings for a single minimization run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Initial trust-region radius (initial change of the variables), radians.
    pub rhobeg: f64,
    /// Evaluation budget.
    pub max_iters: usize,
    /// Optional stop tolerance on the cost value; disabled by default so runs
    /// use the whole budget.
    pub ftol: Option<f64>,
    /// Seed consumed by [`initial_point`]; the solver itself is deterministic.
    pub seed: u64,
}

impl OptimizerConfig {
    /// Defaults scaled to the register size: rhobeg 0.5, budget `625 * N`.
    pub fn for_qubits(n_qubits: usize) -> OptimizerConfig {
        OptimizerConfig { rhobeg: 0.5, max_iters: 625 * n_qubits.max(1), ftol: None, seed: 0 }
    }
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig { rhobeg: 0.5, max_iters: 1000, ftol: None, seed: 0 }
    }
}

/// Outcome of a minimization run.
#[derive(Debug, Clone)]
pub struct MinimizeResult {
    pub x_best: Vec<f64>,
    pub f_best: f64,
    /// Cost at every evaluation, in order.
    pub history: Vec<f64>,
    pub evaluations: usize,
}

/// Uniform initial parameters on `[0, 2 pi)` from a seeded generator.
pub fn initial_point(dim: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    (0..dim).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect()
}

struct Tracker {
    history: Vec<f64>,
    best_f: f64,
    best_x: Vec<f64>,
    abort: Option<String>,
}

/// Minimize `cost` starting from `x0`.
///
/// Deterministic for a fixed `(cost, x0, cfg)`. The evaluation count can
/// exceed `max_iters` by at most the simplex set-up overhead of `dim + 1`
/// evaluations. A non-finite cost value aborts the run with a diagnostic.
pub fn minimize<F>(cost: F, x0: &[f64], cfg: &OptimizerConfig) -> Result<MinimizeResult>
where
    F: Fn(&[f64]) -> f64,
{
    if cfg.rhobeg <= 0.0 {
        return Err(Error::Parameter(format!("rhobeg must be positive, got {}", cfg.rhobeg)));
    }
    if cfg.max_iters == 0 {
        return Err(Error::Parameter("max_iters must be at least 1".into()));
    }
    if x0.is_empty() || x0.iter().any(|v| !v.is_finite()) {
        return Err(Error::Parameter("initial point must be finite and non-empty".into()));
    }

    let tracker = RefCell::new(Tracker {
        history: Vec::new(),
        best_f: f64::INFINITY,
        best_x: x0.to_vec(),
        abort: None,
    });

    const ABORT_SENTINEL: f64 = 1e100;
    let wrapped = |x: &[f64], _: &mut ()| -> f64 {
        let mut t = tracker.borrow_mut();
        if t.abort.is_some() {
            return ABORT_SENTINEL;
        }
        // near its roundoff limit the solver probes non-finite trial points;
        // deflect those without charging them to the user's cost function
        if x.iter().any(|v| !v.is_finite()) {
            return ABORT_SENTINEL;
        }
        let v = cost(x);
        if !v.is_finite() {
            let at = t.history.len();
            t.abort = Some(format!("cost returned {v} at evaluation {at}"));
            t.history.push(v);
            return ABORT_SENTINEL;
        }
        t.history.push(v);
        if v < t.best_f {
            t.best_f = v;
            t.best_x = x.to_vec();
        }
        v
    };

    // The backend requires finite box bounds; angle parameters never move
    // anywhere near this box, so it acts as unbounded.
    let span = 1e3;
    let bounds: Vec<(f64, f64)> = x0.iter().map(|&v| (v - span, v + span)).collect();
    let cons: Vec<&dyn cobyla::Func<()>> = Vec::new();
    let stop = cfg.ftol.map(|ftol| cobyla::StopTols {
        ftol_abs: ftol,
        ..cobyla::StopTols::default()
    });

    let outcome = cobyla::minimize(
        wrapped,
        x0,
        &bounds,
        &cons,
        (),
        cfg.max_iters,
        cobyla::RhoBeg::All(cfg.rhobeg),
        stop,
    );

    let t = tracker.into_inner();
    if let Some(msg) = t.abort {
        return Err(Error::Optimization(msg));
    }
    match outcome {
        Ok(_) => {}
        // reached the numerical floor; the tracked best point is still valid
        Err((cobyla::FailStatus::RoundoffLimited, _, _)) => {}
        Err((status, _, _)) => {
            return Err(Error::Optimization(format!("solver failed with status {status:?}")));
        }
    }
    let evaluations = t.history.len();
    Ok(MinimizeResult { x_best: t.best_x, f_best: t.best_f, history: t.history, evaluations })
}
