//! Small dense second-order cone programming.
//!
//! Solves `min fᵀx` subject to cone constraints `‖Aᵢx + bᵢ‖ ≤ cᵢᵀx + dᵢ`
//! and box bounds `lb ≤ x ≤ ub`, by a primal log-barrier interior-point
//! method with Newton steps. A phase-I slack minimization produces a
//! strictly feasible start and certifies infeasibility when its optimum
//! stays above tolerance. Cones with `A = 0` degenerate to linear
//! inequalities and are handled without barrier singularity.
//!
//! The problems this crate generates are tiny (two variables for the
//! safety filter, a few dozen for the condensed MPC), so everything is
//! dense and deterministic.

use nalgebra::{DMatrix, DVector};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SocpError {
    #[error("inconsistent problem dimensions: {0}")]
    Dimensions(String),
    #[error("box bounds inverted at index {0}")]
    InvertedBounds(usize),
    #[error("quadratic cost factorization failed")]
    Factorization,
    #[error("malformed problem dump: {0}")]
    Parse(String),
}

/// One second-order cone constraint `‖Ax + b‖₂ ≤ cᵀx + d`.
#[derive(Debug, Clone)]
pub struct SocCone {
    pub a: DMatrix<f64>,
    pub b: DVector<f64>,
    pub c: DVector<f64>,
    pub d: f64,
}

impl SocCone {
    /// Slack of the constraint at `x`; nonnegative iff satisfied.
    pub fn margin(&self, x: &DVector<f64>) -> f64 {
        self.c.dot(x) + self.d - (&self.a * x + &self.b).norm()
    }

    fn is_linear(&self) -> bool {
        self.a.iter().all(|&v| v == 0.0)
    }
}

/// `min fᵀx` over cones and a box. Box entries may be ±∞.
#[derive(Debug, Clone)]
pub struct SocpProblem {
    pub f: DVector<f64>,
    pub cones: Vec<SocCone>,
    pub lower: DVector<f64>,
    pub upper: DVector<f64>,
}

impl SocpProblem {
    pub fn num_vars(&self) -> usize {
        self.f.len()
    }

    pub fn validate(&self) -> Result<(), SocpError> {
        let m = self.num_vars();
        if self.lower.len() != m || self.upper.len() != m {
            return Err(SocpError::Dimensions(format!(
                "box has {}/{} entries for {} variables",
                self.lower.len(),
                self.upper.len(),
                m
            )));
        }
        for (i, (&lo, &hi)) in self.lower.iter().zip(self.upper.iter()).enumerate() {
            if lo > hi {
                return Err(SocpError::InvertedBounds(i));
            }
        }
        for (i, cone) in self.cones.iter().enumerate() {
            if cone.c.len() != m || cone.a.ncols() != m || cone.a.nrows() != cone.b.len() {
                return Err(SocpError::Dimensions(format!(
                    "cone {i}: A is {}x{}, b has {}, c has {}",
                    cone.a.nrows(),
                    cone.a.ncols(),
                    cone.b.len(),
                    cone.c.len()
                )));
            }
        }
        Ok(())
    }

    /// Plain-text dump of the problem data, for archiving instances that
    /// the oracle test harness should replay.
    pub fn dump(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let m = self.num_vars();
        writeln!(s, "socp vars={} cones={}", m, self.cones.len()).unwrap();
        writeln!(s, "f {}", join(self.f.iter())).unwrap();
        for cone in &self.cones {
            writeln!(s, "cone rows={}", cone.a.nrows()).unwrap();
            for r in 0..cone.a.nrows() {
                writeln!(s, "a {}", join(cone.a.row(r).iter())).unwrap();
            }
            writeln!(s, "b {}", join(cone.b.iter())).unwrap();
            writeln!(s, "c {}", join(cone.c.iter())).unwrap();
            writeln!(s, "d {}", cone.d).unwrap();
        }
        writeln!(s, "lower {}", join(self.lower.iter())).unwrap();
        writeln!(s, "upper {}", join(self.upper.iter())).unwrap();
        s
    }

    /// Parse the format written by [`SocpProblem::dump`].
    pub fn parse_dump(text: &str) -> Result<Self, SocpError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| SocpError::Parse("empty".into()))?;
        let m: usize = field(header, "vars=")?;
        let ncones: usize = field(header, "cones=")?;
        let f = parse_vec(lines.next(), "f", m)?;
        let mut cones = Vec::with_capacity(ncones);
        for _ in 0..ncones {
            let head = lines.next().ok_or_else(|| SocpError::Parse("missing cone".into()))?;
            let rows: usize = field(head, "rows=")?;
            let mut a = DMatrix::zeros(rows, m);
            for r in 0..rows {
                let row = parse_vec(lines.next(), "a", m)?;
                a.row_mut(r).copy_from(&row.transpose());
            }
            let b = parse_vec(lines.next(), "b", rows)?;
            let c = parse_vec(lines.next(), "c", m)?;
            let dline = lines.next().ok_or_else(|| SocpError::Parse("missing d".into()))?;
            let d: f64 = dline
                .trim_start_matches("d ")
                .trim()
                .parse()
                .map_err(|_| SocpError::Parse(format!("bad d line: {dline}")))?;
            cones.push(SocCone { a, b, c, d });
        }
        let lower = parse_vec(lines.next(), "lower", m)?;
        let upper = parse_vec(lines.next(), "upper", m)?;
        let p = SocpProblem { f, cones, lower, upper };
        p.validate()?;
        Ok(p)
    }
}

fn join<'a>(it: impl Iterator<Item = &'a f64>) -> String {
    it.map(|v| format!("{v:?}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn field<T: std::str::FromStr>(line: &str, key: &str) -> Result<T, SocpError> {
    line.split_whitespace()
        .find_map(|tok| tok.strip_prefix(key))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| SocpError::Parse(format!("missing {key} in {line}")))
}

fn parse_vec(line: Option<&str>, tag: &str, n: usize) -> Result<DVector<f64>, SocpError> {
    let line = line.ok_or_else(|| SocpError::Parse(format!("missing {tag} line")))?;
    let rest = line
        .strip_prefix(tag)
        .ok_or_else(|| SocpError::Parse(format!("expected {tag} line, got {line}")))?;
    let vals: Result<Vec<f64>, _> = rest.split_whitespace().map(|t| t.parse()).collect();
    let vals = vals.map_err(|_| SocpError::Parse(format!("bad floats in {line}")))?;
    if vals.len() != n {
        return Err(SocpError::Parse(format!(
            "{tag} has {} entries, expected {n}",
            vals.len()
        )));
    }
    Ok(DVector::from_vec(vals))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SocpStatus {
    Optimal,
    Infeasible,
    MaxIter,
}

#[derive(Debug, Clone)]
pub struct SocpSolution {
    pub x: DVector<f64>,
    pub objective: f64,
    pub status: SocpStatus,
    /// Total Newton iterations across barrier stages.
    pub iterations: usize,
    pub solve_time: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Barrier duality-gap target.
    pub gap_tol: f64,
    /// Phase-I residual above which the problem is declared infeasible.
    pub feas_tol: f64,
    /// Cap on total Newton iterations per barrier stage.
    pub max_newton: usize,
    /// Barrier parameter growth factor.
    pub mu: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            gap_tol: 1e-10,
            feas_tol: 1e-7,
            max_newton: 600,
            mu: 20.0,
        }
    }
}

/// Linear inequality `gᵀx ≤ h`.
#[derive(Debug, Clone)]
struct LinRow {
    g: DVector<f64>,
    h: f64,
}

/// Barrier-ready form: nondegenerate cones plus linear rows (degenerate
/// cones and finite box bounds folded in).
struct Working {
    cones: Vec<SocCone>,
    lin: Vec<LinRow>,
}

impl Working {
    fn nu(&self) -> f64 {
        (2 * self.cones.len() + self.lin.len()) as f64
    }

    fn strictly_feasible(&self, x: &DVector<f64>, margin: f64) -> bool {
        self.cones.iter().all(|c| c.margin(x) > margin)
            && self.lin.iter().all(|r| r.h - r.g.dot(x) > margin)
    }

    fn worst_violation(&self, x: &DVector<f64>) -> f64 {
        let cone_v = self
            .cones
            .iter()
            .map(|c| -c.margin(x))
            .fold(f64::NEG_INFINITY, f64::max);
        let lin_v = self
            .lin
            .iter()
            .map(|r| r.g.dot(x) - r.h)
            .fold(f64::NEG_INFINITY, f64::max);
        cone_v.max(lin_v).max(0.0)
    }

    /// Barrier value, gradient and Hessian at a strictly feasible `x`.
    fn barrier(&self, x: &DVector<f64>) -> Option<(f64, DVector<f64>, DMatrix<f64>)> {
        let m = x.len();
        let mut val = 0.0;
        let mut grad = DVector::zeros(m);
        let mut hess = DMatrix::zeros(m, m);
        for cone in &self.cones {
            let u = &cone.a * x + &cone.b;
            let s = cone.c.dot(x) + cone.d;
            let q = s * s - u.dot(&u);
            if s <= 0.0 || q <= 0.0 {
                return None;
            }
            val -= q.ln();
            // ∇q = 2s·c − 2Aᵀu, ∇²q = 2ccᵀ − 2AᵀA
            let dq = 2.0 * s * &cone.c - 2.0 * cone.a.transpose() * &u;
            grad -= &dq / q;
            let ata = cone.a.transpose() * &cone.a;
            hess += &dq * dq.transpose() / (q * q);
            hess -= (2.0 * &cone.c * cone.c.transpose() - 2.0 * ata) / q;
        }
        for row in &self.lin {
            let r = row.h - row.g.dot(x);
            if r <= 0.0 {
                return None;
            }
            val -= r.ln();
            grad += &row.g / r;
            hess += &row.g * row.g.transpose() / (r * r);
        }
        Some((val, grad, hess))
    }
}

struct NewtonOutcome {
    x: DVector<f64>,
    iterations: usize,
    converged: bool,
}

/// Damped Newton minimization of `t·fᵀx + φ(x)` from a strictly feasible start.
fn newton(
    work: &Working,
    t: f64,
    f: &DVector<f64>,
    mut x: DVector<f64>,
    max_iter: usize,
) -> NewtonOutcome {
    let m = x.len();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        let (val, bgrad, bhess) = match work.barrier(&x) {
            Some(v) => v,
            None => break,
        };
        let grad = t * f + &bgrad;
        let mut ridge = 0.0;
        let step = loop {
            let mut h = bhess.clone();
            if ridge > 0.0 {
                for i in 0..m {
                    h[(i, i)] += ridge;
                }
            }
            match nalgebra::Cholesky::new(h) {
                Some(ch) => break ch.solve(&(-&grad)),
                None => {
                    ridge = if ridge == 0.0 { 1e-12 } else { ridge * 100.0 };
                    if ridge > 1e4 {
                        return NewtonOutcome { x, iterations, converged: false };
                    }
                }
            }
        };
        iterations += 1;
        let decrement = -grad.dot(&step);
        if decrement <= 0.0 {
            converged = true;
            break;
        }
        if decrement * 0.5 < 1e-12 {
            converged = true;
            break;
        }
        // Backtrack into the domain, then Armijo on the centering objective.
        let mut alpha = 1.0;
        let psi0 = t * f.dot(&x) + val;
        let mut accepted = false;
        for _ in 0..80 {
            let cand = &x + alpha * &step;
            if work.strictly_feasible(&cand, 0.0) {
                if let Some((bval, _, _)) = work.barrier(&cand) {
                    let psi = t * f.dot(&cand) + bval;
                    if psi <= psi0 - 0.25 * alpha * decrement {
                        x = cand;
                        accepted = true;
                        break;
                    }
                }
            }
            alpha *= 0.5;
        }
        if !accepted {
            // Step underflow: treat the current point as centered.
            converged = true;
            break;
        }
    }
    NewtonOutcome { x, iterations, converged }
}

struct BarrierOutcome {
    x: DVector<f64>,
    iterations: usize,
    converged: bool,
}

/// Barrier path following; `early_stop` lets phase-I bail out once the
/// slack objective is decisively negative.
fn barrier_solve(
    work: &Working,
    f: &DVector<f64>,
    x0: DVector<f64>,
    opts: &SolveOptions,
    gap_tol: f64,
    early_stop: Option<&dyn Fn(&DVector<f64>) -> bool>,
) -> BarrierOutcome {
    let nu = work.nu().max(1.0);
    let mut t = 1.0;
    let mut x = x0;
    let mut total = 0;
    let mut converged = true;
    loop {
        let out = newton(work, t, f, x, opts.max_newton.saturating_sub(total).max(1));
        x = out.x;
        total += out.iterations;
        converged = out.converged;
        if let Some(stop) = early_stop {
            if stop(&x) {
                break;
            }
        }
        if nu / t <= gap_tol {
            break;
        }
        if total >= opts.max_newton {
            converged = false;
            break;
        }
        t *= opts.mu;
    }
    BarrierOutcome { x, iterations: total, converged }
}

/// Solve the cone program. Returns an optimal point, a certified
/// `Infeasible` status, or `MaxIter` when Newton stalls; never silently
/// labels a stalled solve optimal.
pub fn solve(problem: &SocpProblem, opts: &SolveOptions) -> Result<SocpSolution, SocpError> {
    let start = Instant::now();
    problem.validate()?;
    let m = problem.num_vars();

    // Split degenerate cones into linear rows; fold in finite box bounds.
    let mut cones = Vec::new();
    let mut lin = Vec::new();
    for cone in &problem.cones {
        if cone.is_linear() {
            let bnorm = cone.b.norm();
            if cone.c.iter().all(|&v| v == 0.0) {
                // Constant row: a data check, not a constraint on x.
                if bnorm > cone.d + 1e-9 {
                    return Ok(SocpSolution {
                        x: DVector::zeros(m),
                        objective: f64::INFINITY,
                        status: SocpStatus::Infeasible,
                        iterations: 0,
                        solve_time: start.elapsed().as_secs_f64(),
                    });
                }
                continue;
            }
            // ‖b‖ ≤ cᵀx + d  ⇔  −cᵀx ≤ d − ‖b‖
            lin.push(LinRow { g: -cone.c.clone(), h: cone.d - bnorm });
        } else {
            cones.push(cone.clone());
        }
    }
    for i in 0..m {
        if problem.upper[i].is_finite() {
            let mut g = DVector::zeros(m);
            g[i] = 1.0;
            lin.push(LinRow { g, h: problem.upper[i] });
        }
        if problem.lower[i].is_finite() {
            let mut g = DVector::zeros(m);
            g[i] = -1.0;
            lin.push(LinRow { g, h: -problem.lower[i] });
        }
    }
    let work = Working { cones, lin };

    // Start from the analytic center of the box.
    let mut x0 = DVector::zeros(m);
    for i in 0..m {
        let (lo, hi) = (problem.lower[i], problem.upper[i]);
        x0[i] = match (lo.is_finite(), hi.is_finite()) {
            (true, true) => 0.5 * (lo + hi),
            (true, false) => lo + 1.0,
            (false, true) => hi - 1.0,
            (false, false) => 0.0,
        };
    }

    let mut iterations = 0;
    let feasible_start = if work.strictly_feasible(&x0, 1e-8) {
        Some(x0.clone())
    } else {
        // Phase-I: minimize a shared slack s added to every constraint.
        let mut p1_cones = Vec::with_capacity(work.cones.len());
        for cone in &work.cones {
            let mut a = DMatrix::zeros(cone.a.nrows(), m + 1);
            a.view_mut((0, 0), (cone.a.nrows(), m)).copy_from(&cone.a);
            let mut c = DVector::zeros(m + 1);
            c.rows_mut(0, m).copy_from(&cone.c);
            c[m] = 1.0;
            p1_cones.push(SocCone { a, b: cone.b.clone(), c, d: cone.d });
        }
        let mut p1_lin = Vec::with_capacity(work.lin.len() + 1);
        for row in &work.lin {
            let mut g = DVector::zeros(m + 1);
            g.rows_mut(0, m).copy_from(&row.g);
            g[m] = -1.0;
            p1_lin.push(LinRow { g, h: row.h });
        }
        let s0 = work.worst_violation(&x0) + 1.0;
        let mut cap = DVector::zeros(m + 1);
        cap[m] = 1.0;
        p1_lin.push(LinRow { g: cap, h: s0 + 1.0 });
        let p1 = Working { cones: p1_cones, lin: p1_lin };

        let mut y0 = DVector::zeros(m + 1);
        y0.rows_mut(0, m).copy_from(&x0);
        y0[m] = s0;
        debug_assert!(p1.strictly_feasible(&y0, 0.0));

        let mut f1 = DVector::zeros(m + 1);
        f1[m] = 1.0;
        let out = barrier_solve(
            &p1,
            &f1,
            y0,
            opts,
            1e-9,
            Some(&|y: &DVector<f64>| y[y.len() - 1] < -1e-6),
        );
        iterations += out.iterations;
        let x_cand = DVector::from(out.x.rows(0, m));
        let s_star = out.x[m];
        if work.strictly_feasible(&x_cand, 0.0) {
            Some(x_cand)
        } else if s_star > opts.feas_tol || out.converged {
            // Phase-I bottomed out without finding interior: infeasible.
            return Ok(SocpSolution {
                x: x_cand,
                objective: f64::INFINITY,
                status: SocpStatus::Infeasible,
                iterations,
                solve_time: start.elapsed().as_secs_f64(),
            });
        } else {
            None
        }
    };

    let x_start = match feasible_start {
        Some(x) => x,
        None => {
            return Ok(SocpSolution {
                x: DVector::zeros(m),
                objective: f64::NAN,
                status: SocpStatus::MaxIter,
                iterations,
                solve_time: start.elapsed().as_secs_f64(),
            })
        }
    };

    let out = barrier_solve(&work, &problem.f, x_start, opts, opts.gap_tol, None);
    iterations += out.iterations;
    let status = if out.converged { SocpStatus::Optimal } else { SocpStatus::MaxIter };
    let objective = problem.f.dot(&out.x);
    let solution = SocpSolution {
        x: out.x,
        objective,
        status,
        iterations,
        solve_time: start.elapsed().as_secs_f64(),
    };
    #[cfg(debug_assertions)]
    if solution.status == SocpStatus::Optimal {
        for cone in &problem.cones {
            debug_assert!(
                cone.margin(&solution.x) >= -1e-7,
                "returned optimum violates a cone by {}",
                -cone.margin(&solution.x)
            );
        }
        for i in 0..m {
            debug_assert!(solution.x[i] >= problem.lower[i] - 1e-9);
            debug_assert!(solution.x[i] <= problem.upper[i] + 1e-9);
        }
    }
    Ok(solution)
}

/// Reformulate `min xᵀHx + gᵀx` with half-spaces `hᵀx ≤ b` and a box as a
/// cone program over `[x; t]`: an epigraph variable bounds the quadratic
/// through `‖[2Lᵀx; 1−t]‖ ≤ 1+t` with `LLᵀ = H`, and the half-spaces
/// become degenerate cones.
pub fn qp_as_socp(
    h: &DMatrix<f64>,
    g: &DVector<f64>,
    halfspaces: &[(DVector<f64>, f64)],
    lower: &DVector<f64>,
    upper: &DVector<f64>,
) -> Result<SocpProblem, SocpError> {
    let m = g.len();
    if h.nrows() != m || h.ncols() != m || lower.len() != m || upper.len() != m {
        return Err(SocpError::Dimensions("qp data".into()));
    }
    // Factor H = LLᵀ, escalating jitter for semidefinite cost.
    let scale = h.diagonal().amax().max(1.0);
    let mut jitter = 0.0;
    let l = loop {
        let mut hj = h.clone();
        if jitter > 0.0 {
            for i in 0..m {
                hj[(i, i)] += jitter * scale;
            }
        }
        match nalgebra::Cholesky::new(hj) {
            Some(ch) => break ch.l(),
            None => {
                jitter = if jitter == 0.0 { 1e-12 } else { jitter * 10.0 };
                if jitter > 1e-6 {
                    return Err(SocpError::Factorization);
                }
            }
        }
    };

    let nv = m + 1;
    let mut a = DMatrix::zeros(m + 1, nv);
    a.view_mut((0, 0), (m, m)).copy_from(&(2.0 * l.transpose()));
    a[(m, m)] = -1.0;
    let mut b = DVector::zeros(m + 1);
    b[m] = 1.0;
    let mut c = DVector::zeros(nv);
    c[m] = 1.0;
    let mut cones = vec![SocCone { a, b, c, d: 1.0 }];

    for (normal, bound) in halfspaces {
        if normal.len() != m {
            return Err(SocpError::Dimensions("halfspace".into()));
        }
        let mut cc = DVector::zeros(nv);
        cc.rows_mut(0, m).copy_from(&(-normal));
        cones.push(SocCone {
            a: DMatrix::zeros(1, nv),
            b: DVector::zeros(1),
            c: cc,
            d: *bound,
        });
    }

    let mut f = DVector::zeros(nv);
    f.rows_mut(0, m).copy_from(g);
    f[m] = 1.0;
    let mut lo = DVector::from_element(nv, f64::NEG_INFINITY);
    lo.rows_mut(0, m).copy_from(lower);
    lo[m] = 0.0;
    let mut hi = DVector::from_element(nv, f64::INFINITY);
    hi.rows_mut(0, m).copy_from(upper);
    Ok(SocpProblem { f, cones, lower: lo, upper: hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn vec(v: &[f64]) -> DVector<f64> {
        DVector::from_row_slice(v)
    }

    fn solve_default(p: &SocpProblem) -> SocpSolution {
        solve(p, &SolveOptions::default()).unwrap()
    }

    #[test]
    fn min_x_in_unit_ball() {
        // min x s.t. |x| ≤ 1
        let p = SocpProblem {
            f: vec(&[1.0]),
            cones: vec![SocCone {
                a: DMatrix::from_row_slice(1, 1, &[1.0]),
                b: vec(&[0.0]),
                c: vec(&[0.0]),
                d: 1.0,
            }],
            lower: vec(&[f64::NEG_INFINITY]),
            upper: vec(&[f64::INFINITY]),
        };
        let sol = solve_default(&p);
        assert_eq!(sol.status, SocpStatus::Optimal);
        assert_relative_eq!(sol.x[0], -1.0, epsilon = 1e-6);
        assert_relative_eq!(sol.objective, -1.0, epsilon = 1e-6);
    }

    #[test]
    fn cone_with_constant_norm_row() {
        // min x s.t. ‖[x; 0]‖ ≤ 2, box [−3, 3] → x = −2
        let p = SocpProblem {
            f: vec(&[1.0]),
            cones: vec![SocCone {
                a: DMatrix::from_row_slice(2, 1, &[1.0, 0.0]),
                b: vec(&[0.0, 0.0]),
                c: vec(&[0.0]),
                d: 2.0,
            }],
            lower: vec(&[-3.0]),
            upper: vec(&[3.0]),
        };
        let sol = solve_default(&p);
        assert_eq!(sol.status, SocpStatus::Optimal);
        assert_relative_eq!(sol.x[0], -2.0, epsilon = 1e-6);
    }

    #[test]
    fn negative_radius_is_infeasible() {
        // ‖[x]‖ ≤ −1 can never hold.
        let p = SocpProblem {
            f: vec(&[1.0]),
            cones: vec![SocCone {
                a: DMatrix::from_row_slice(1, 1, &[1.0]),
                b: vec(&[0.0]),
                c: vec(&[0.0]),
                d: -1.0,
            }],
            lower: vec(&[-10.0]),
            upper: vec(&[10.0]),
        };
        let sol = solve_default(&p);
        assert_eq!(sol.status, SocpStatus::Infeasible);
    }

    #[test]
    fn constant_degenerate_row_infeasible() {
        // A = 0, c = 0, ‖b‖ > d: pure data check.
        let p = SocpProblem {
            f: vec(&[1.0]),
            cones: vec![SocCone {
                a: DMatrix::zeros(1, 1),
                b: vec(&[2.0]),
                c: vec(&[0.0]),
                d: 1.0,
            }],
            lower: vec(&[-1.0]),
            upper: vec(&[1.0]),
        };
        assert_eq!(solve_default(&p).status, SocpStatus::Infeasible);
    }

    #[test]
    fn qp_scalar_stationary_point() {
        // min 2x² − 4x → x = 1
        let h = DMatrix::from_row_slice(1, 1, &[2.0]);
        let g = vec(&[-4.0]);
        let p = qp_as_socp(
            &h,
            &g,
            &[],
            &vec(&[f64::NEG_INFINITY]),
            &vec(&[f64::INFINITY]),
        )
        .unwrap();
        let sol = solve_default(&p);
        assert_eq!(sol.status, SocpStatus::Optimal);
        assert_relative_eq!(sol.x[0], 1.0, epsilon = 1e-6);
    }

    #[test]
    fn qp_identity_box_center() {
        let h = DMatrix::identity(2, 2);
        let g = vec(&[0.0, 0.0]);
        let p = qp_as_socp(&h, &g, &[], &vec(&[-1.0, -1.0]), &vec(&[1.0, 1.0])).unwrap();
        let sol = solve_default(&p);
        assert_eq!(sol.status, SocpStatus::Optimal);
        assert!(sol.x[0].abs() < 1e-6 && sol.x[1].abs() < 1e-6);
    }

    #[test]
    fn qp_matches_linear_solve_unconstrained() {
        // Stationary point of xᵀHx + gᵀx solves 2Hx = −g.
        let mut rng = 1234567u64;
        let mut next = move || {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((rng >> 33) as f64 / (1u64 << 31) as f64) - 1.0
        };
        for _ in 0..20 {
            let m = 3;
            let raw = DMatrix::from_fn(m, m, |_, _| next());
            let h = &raw * raw.transpose() + DMatrix::identity(m, m);
            let g = DVector::from_fn(m, |_, _| 2.0 * next());
            let free = DVector::from_element(m, f64::INFINITY);
            let p = qp_as_socp(&h, &g, &[], &(-&free), &free).unwrap();
            let sol = solve_default(&p);
            assert_eq!(sol.status, SocpStatus::Optimal);
            let expect = nalgebra::Cholesky::new(2.0 * &h).unwrap().solve(&(-&g));
            for i in 0..m {
                assert_relative_eq!(sol.x[i], expect[i], epsilon = 1e-6, max_relative = 1e-5);
            }
        }
    }

    #[test]
    fn qp_halfspace_binds() {
        // min x² + y² s.t. x + y ≥ 1 (as −x −y ≤ −1) → (0.5, 0.5)
        let h = DMatrix::identity(2, 2);
        let g = vec(&[0.0, 0.0]);
        let hs = vec![(vec(&[-1.0, -1.0]), -1.0)];
        let free = DVector::from_element(2, f64::INFINITY);
        let p = qp_as_socp(&h, &g, &hs, &(-&free), &free).unwrap();
        let sol = solve_default(&p);
        assert_eq!(sol.status, SocpStatus::Optimal);
        assert_relative_eq!(sol.x[0], 0.5, epsilon = 1e-5);
        assert_relative_eq!(sol.x[1], 0.5, epsilon = 1e-5);
    }

    #[test]
    fn objective_scaling_keeps_argmin() {
        let p = SocpProblem {
            f: vec(&[1.0, 0.3]),
            cones: vec![SocCone {
                a: DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]),
                b: vec(&[0.1, -0.2]),
                c: vec(&[0.0, 0.0]),
                d: 1.5,
            }],
            lower: vec(&[-2.0, -2.0]),
            upper: vec(&[2.0, 2.0]),
        };
        let sol1 = solve_default(&p);
        let mut scaled = p.clone();
        scaled.f *= 37.5;
        let sol2 = solve_default(&scaled);
        assert_eq!(sol1.status, SocpStatus::Optimal);
        assert_eq!(sol2.status, SocpStatus::Optimal);
        assert!((&sol1.x - &sol2.x).amax() < 1e-7);
    }

    #[test]
    fn determinism() {
        let p = SocpProblem {
            f: vec(&[0.7, 1.0]),
            cones: vec![SocCone {
                a: DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, -1.0]),
                b: vec(&[0.0, 1.0]),
                c: vec(&[0.0, 1.0]),
                d: 1.0,
            }],
            lower: vec(&[-0.5, 0.0]),
            upper: vec(&[0.5, f64::INFINITY]),
        };
        let a = solve_default(&p);
        let b = solve_default(&p);
        assert_eq!(a.x, b.x);
        assert_eq!(a.iterations, b.iterations);
    }

    #[test]
    fn dump_round_trip() {
        let p = SocpProblem {
            f: vec(&[0.25, -1.5]),
            cones: vec![SocCone {
                a: DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 0.25]),
                b: vec(&[0.125, -0.5]),
                c: vec(&[0.0, 1.0]),
                d: 3.5,
            }],
            lower: vec(&[-1.0, f64::NEG_INFINITY]),
            upper: vec(&[1.0, f64::INFINITY]),
        };
        let text = p.dump();
        let q = SocpProblem::parse_dump(&text).unwrap();
        assert_eq!(p.f, q.f);
        assert_eq!(p.cones[0].a, q.cones[0].a);
        assert_eq!(p.cones[0].d, q.cones[0].d);
        assert_eq!(p.lower, q.lower);
        assert_eq!(p.upper, q.upper);
    }
}
