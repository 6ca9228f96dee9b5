//! The convex-function abstraction every operator in this crate acts on.

use crate::error::{Error, Result};
use crate::vector::Vector;
use std::sync::Arc;

pub type ScalarFn = Arc<dyn Fn(&Vector) -> f64 + Send + Sync>;
pub type VectorFn = Arc<dyn Fn(&Vector) -> Vector + Send + Sync>;
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// An immutable convex function `f: R^n -> R` together with a fixed
/// single-valued subgradient selection `s(x) in df(x)`.
///
/// Optional extras carried by a handle:
/// - a closed-form projector oracle (`analytic_g`) used only for
///   cross-checking, never by [`crate::projector::evaluate_projector`];
/// - a projector onto the level set `C = {f <= 0}` when one is known;
/// - a second derivative (one-dimensional handles only);
/// - a lower bound hint `inf f`.
///
/// Convexity and the subgradient inequality are the caller's contract; the
/// test suites verify them on samples.
#[derive(Clone)]
pub struct FunctionHandle {
    name: String,
    dim: usize,
    value: ScalarFn,
    subgrad: VectorFn,
    analytic_g: Option<VectorFn>,
    project_c: Option<VectorFn>,
    second_deriv: Option<RealFn>,
    min_value_hint: Option<f64>,
}

impl std::fmt::Debug for FunctionHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FunctionHandle")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("analytic_g", &self.analytic_g.is_some())
            .field("project_c", &self.project_c.is_some())
            .field("second_deriv", &self.second_deriv.is_some())
            .field("min_value_hint", &self.min_value_hint)
            .finish()
    }
}

impl FunctionHandle {
    pub fn builder(name: impl Into<String>, dim: usize) -> Builder {
        Builder {
            name: name.into(),
            dim,
            value: None,
            subgrad: None,
            analytic_g: None,
            project_c: None,
            second_deriv: None,
            min_value_hint: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, x: &Vector) -> f64 {
        debug_assert_eq!(x.dim(), self.dim);
        (self.value)(x)
    }

    pub fn subgrad(&self, x: &Vector) -> Vector {
        debug_assert_eq!(x.dim(), self.dim);
        (self.subgrad)(x)
    }

    pub fn analytic_g(&self, x: &Vector) -> Option<Vector> {
        self.analytic_g.as_ref().map(|g| g(x))
    }

    pub fn has_analytic_g(&self) -> bool {
        self.analytic_g.is_some()
    }

    pub fn project_c(&self, x: &Vector) -> Option<Vector> {
        self.project_c.as_ref().map(|p| p(x))
    }

    pub fn has_project_c(&self) -> bool {
        self.project_c.is_some()
    }

    pub fn second_deriv(&self, t: f64) -> Option<f64> {
        self.second_deriv.as_ref().map(|d| d(t))
    }

    pub fn has_second_deriv(&self) -> bool {
        self.second_deriv.is_some()
    }

    pub fn min_value_hint(&self) -> Option<f64> {
        self.min_value_hint
    }

    /// Value at a scalar argument; the handle must be one-dimensional.
    pub fn value1(&self, t: f64) -> f64 {
        debug_assert_eq!(self.dim, 1);
        (self.value)(&Vector::of(&[t]))
    }

    /// Subgradient at a scalar argument; the handle must be one-dimensional.
    pub fn subgrad1(&self, t: f64) -> f64 {
        debug_assert_eq!(self.dim, 1);
        (self.subgrad)(&Vector::of(&[t]))[0]
    }

    pub(crate) fn check_dim(&self, x: &Vector) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        Ok(())
    }
}

pub struct Builder {
    name: String,
    dim: usize,
    value: Option<ScalarFn>,
    subgrad: Option<VectorFn>,
    analytic_g: Option<VectorFn>,
    project_c: Option<VectorFn>,
    second_deriv: Option<RealFn>,
    min_value_hint: Option<f64>,
}

impl Builder {
    pub fn value(mut self, f: impl Fn(&Vector) -> f64 + Send + Sync + 'static) -> Self {
        self.value = Some(Arc::new(f));
        self
    }

    pub fn subgrad(mut self, s: impl Fn(&Vector) -> Vector + Send + Sync + 'static) -> Self {
        self.subgrad = Some(Arc::new(s));
        self
    }

    pub fn analytic_g(mut self, g: impl Fn(&Vector) -> Vector + Send + Sync + 'static) -> Self {
        self.analytic_g = Some(Arc::new(g));
        self
    }

    pub fn analytic_g_arc(mut self, g: Option<VectorFn>) -> Self {
        self.analytic_g = g;
        self
    }

    pub fn project_c(mut self, p: impl Fn(&Vector) -> Vector + Send + Sync + 'static) -> Self {
        self.project_c = Some(Arc::new(p));
        self
    }

    pub fn project_c_arc(mut self, p: Option<VectorFn>) -> Self {
        self.project_c = p;
        self
    }

    pub fn second_deriv(mut self, d: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.second_deriv = Some(Arc::new(d));
        self
    }

    pub fn second_deriv_arc(mut self, d: Option<RealFn>) -> Self {
        self.second_deriv = d;
        self
    }

    pub fn min_value_hint(mut self, m: f64) -> Self {
        self.min_value_hint = Some(m);
        self
    }

    pub fn min_value_hint_opt(mut self, m: Option<f64>) -> Self {
        self.min_value_hint = m;
        self
    }

    pub fn build(self) -> Result<FunctionHandle> {
        if self.dim == 0 {
            return Err(Error::BadParameter("handle dimension must be >= 1".into()));
        }
        let value = self.value.ok_or_else(|| {
            Error::BadParameter(format!("handle '{}' has no value function", self.name))
        })?;
        let subgrad = self.subgrad.ok_or_else(|| {
            Error::BadParameter(format!("handle '{}' has no subgradient selection", self.name))
        })?;
        Ok(FunctionHandle {
            name: self.name,
            dim: self.dim,
            value,
            subgrad,
            analytic_g: self.analytic_g,
            project_c: self.project_c,
            second_deriv: self.second_deriv,
            min_value_hint: self.min_value_hint,
        })
    }
}
