//! Solvers for the regularization problem
//! `argmin_f S_p(f) + (mu/2) ||f - y||^2`,
//! whose stationarity condition is `L_p f + mu (f - y) = 0`.
//!
//! Two interchangeable strategies implement [`Solver`]: a closed-form
//! linear solve for p = 2 and a fixed-point iteration for any p >= 1.
//! Strategies are registered by name in [`registry`] and selected at
//! runtime; `auto` dispatches on p.

mod closed_form;
mod fixed_point;
pub mod registry;

pub use closed_form::ClosedFormSolver;
pub use fixed_point::FixedPointSolver;
pub use registry::{create_solver, solver_names, AutoSolver, Solver};

use crate::error::{Error, Result};
use crate::functions::VertexFunction;
use crate::hypergraph::Hypergraph;
use crate::operators::DEFAULT_EPSILON;

/// Parameters shared by all solver strategies.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Smoothness exponent, >= 1.
    pub p: f64,
    /// Fidelity weight, > 0.
    pub mu: f64,
    /// Local-variation floor, > 0.
    pub epsilon: f64,
    /// Stop when successive iterates differ by less than this in max-norm.
    pub tol: f64,
    pub max_iter: usize,
}

impl SolverConfig {
    pub fn new(p: f64) -> Self {
        Self {
            p,
            mu: 1.0,
            epsilon: DEFAULT_EPSILON,
            tol: 1e-6,
            max_iter: 1000,
        }
    }

    pub fn with_mu(mut self, mu: f64) -> Self {
        self.mu = mu;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p >= 1.0) {
            return Err(Error::InvalidP(self.p));
        }
        for (name, value) in [
            ("mu", self.mu),
            ("epsilon", self.epsilon),
            ("tol", self.tol),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be >= 1".into()));
        }
        Ok(())
    }
}

/// Outcome of one solve.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub f: VertexFunction,
    /// Outer iterations (fixed point) or linear-solver iterations (p = 2).
    pub iterations: usize,
    /// Max-norm of the stationarity residual `L_p f + mu (f - y)`.
    pub residual: f64,
    pub converged: bool,
}

/// Closed-form solution for p = 2: solve `(L + mu I) f = mu y`.
pub fn solve_p2(g: &Hypergraph, y: &VertexFunction, mu: f64) -> Result<SolveResult> {
    let cfg = SolverConfig::new(2.0).with_mu(mu);
    cfg.validate()?;
    closed_form::solve(g, y, &cfg)
}

/// Fixed-point iteration specialized to p = 1 (the curvature operator).
pub fn solve_p1(g: &Hypergraph, y: &VertexFunction, cfg: &SolverConfig) -> Result<SolveResult> {
    if cfg.p != 1.0 {
        return Err(Error::InvalidP(cfg.p));
    }
    solve_p(g, y, cfg)
}

/// Fixed-point iteration for any p >= 1.
pub fn solve_p(g: &Hypergraph, y: &VertexFunction, cfg: &SolverConfig) -> Result<SolveResult> {
    cfg.validate()?;
    fixed_point::solve(g, y, cfg, &mut |_, _| {})
}

/// Like [`solve_p`], invoking `observer(t, iterate)` for the initial
/// iterate (t = 0) and after every update. Intended for tests that watch
/// per-iteration invariants.
pub fn solve_p_observed(
    g: &Hypergraph,
    y: &VertexFunction,
    cfg: &SolverConfig,
    observer: &mut dyn FnMut(usize, &[f64]),
) -> Result<SolveResult> {
    cfg.validate()?;
    fixed_point::solve(g, y, cfg, observer)
}
