//! The subgradient projector and its cutting-halfspace view.
//!
//! For a convex `f` with selection `s(x) in df(x)` and nonempty level set
//! `C = {f <= 0}`, the subgradient projector is
//!
//! ```text
//! Gx = x - f(x)/||s(x)||^2 * s(x)   if f(x) > 0,
//! Gx = x                            otherwise,
//! ```
//!
//! which equals the metric projection onto the halfspace
//! `H = {y : <s(x), y - x> + f(x) <= 0}`.
//!
//! The positivity test `f(x) > 0` is an exact comparison with zero: the
//! branch itself is exact, and analytic catalog values are exact at the
//! branch point.

use crate::error::{Error, Result};
use crate::function::FunctionHandle;
use crate::vector::Vector;
use serde::Serialize;

/// `{y : <normal, y> <= offset}` with a nonzero normal.
#[derive(Debug, Clone, Serialize)]
pub struct Halfspace {
    pub normal: Vector,
    pub offset: f64,
}

impl Halfspace {
    pub fn new(normal: Vector, offset: f64) -> Result<Self> {
        if normal.norm() == 0.0 {
            return Err(Error::ZeroNormal);
        }
        Ok(Halfspace { normal, offset })
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        self.normal.dot(x) <= self.offset + tol
    }
}

/// One application of `G`: the point, the data that produced the step and
/// the halfspace it projects onto.
#[derive(Debug, Clone, Serialize)]
pub struct ProjectorEvaluation {
    pub x: Vector,
    pub fx: f64,
    pub sx: Vector,
    pub gx: Vector,
    /// Equals `sx`; kept separate so the bundle spells out the cut.
    pub halfspace_normal: Vector,
    /// `<s(x), x> - f(x)`, so the cut reads `<s(x), y> <= offset`.
    pub halfspace_offset: f64,
}

/// Applies the subgradient projector once.
///
/// Errors with [`Error::InfeasibilityCertificate`] when `f(x) > 0` and
/// `s(x) = 0`: then `min f = f(x) > 0` and `C` is empty, so the standing
/// assumption is violated and silence would corrupt iterations.
pub fn evaluate_projector(f: &FunctionHandle, x: &Vector) -> Result<ProjectorEvaluation> {
    f.check_dim(x)?;
    if !x.is_finite() {
        return Err(Error::NotFinite(f64::NAN));
    }
    let fx = f.value(x);
    let sx = f.subgrad(x);
    let gx = if fx > 0.0 {
        let ss = sx.norm_sq();
        if ss == 0.0 {
            return Err(Error::InfeasibilityCertificate { fx });
        }
        x.axpy(-fx / ss, &sx)
    } else {
        x.clone()
    };
    let halfspace_offset = sx.dot(x) - fx;
    Ok(ProjectorEvaluation {
        x: x.clone(),
        fx,
        sx: sx.clone(),
        gx,
        halfspace_normal: sx,
        halfspace_offset,
    })
}

/// Shorthand for the projected point alone.
pub fn apply_g(f: &FunctionHandle, x: &Vector) -> Result<Vector> {
    Ok(evaluate_projector(f, x)?.gx)
}

/// The cutting halfspace `H = {y : <s(x), y - x> + f(x) <= 0}`.
///
/// Contains `C` and satisfies `Gx = P_H x`. Requires `f(x) > 0`; at points
/// of `C` the selection may vanish and `H` degenerates to the whole space.
pub fn cutting_halfspace(f: &FunctionHandle, x: &Vector) -> Result<Halfspace> {
    f.check_dim(x)?;
    let fx = f.value(x);
    let sx = f.subgrad(x);
    if sx.norm_sq() == 0.0 {
        if fx > 0.0 {
            return Err(Error::InfeasibilityCertificate { fx });
        }
        return Err(Error::ZeroNormal);
    }
    let offset = sx.dot(x) - fx;
    Halfspace::new(sx, offset)
}

/// Metric projection onto a halfspace:
/// `x - (<normal, x> - offset)^+ / ||normal||^2 * normal`. Idempotent.
pub fn project_halfspace(h: &Halfspace, x: &Vector) -> Vector {
    let excess = h.normal.dot(x) - h.offset;
    if excess <= 0.0 {
        return x.clone();
    }
    x.axpy(-excess / h.normal.norm_sq(), &h.normal)
}

/// Central-difference gradient estimate, coordinatewise
/// `(f(x + h e_i) - f(x - h e_i)) / (2h)`.
pub fn fd_subgradient(f: &FunctionHandle, x: &Vector, h: f64) -> Result<Vector> {
    f.check_dim(x)?;
    if h <= 0.0 {
        return Err(Error::NonpositiveScalar(h));
    }
    let n = x.dim();
    let mut grad = vec![0.0; n];
    let mut xp = x.coords().to_vec();
    let mut xm = x.coords().to_vec();
    for i in 0..n {
        xp[i] = x[i] + h;
        xm[i] = x[i] - h;
        let fp = f.value(&Vector::from_raw(xp.clone()));
        let fm = f.value(&Vector::from_raw(xm.clone()));
        grad[i] = (fp - fm) / (2.0 * h);
        xp[i] = x[i];
        xm[i] = x[i];
    }
    Ok(Vector::from_raw(grad))
}

/// Default central-difference step `eps^(1/3) * max(1, ||x||_inf)`.
pub fn fd_default_step(x: &Vector) -> f64 {
    f64::EPSILON.cbrt() * x.inf_norm().max(1.0)
}
