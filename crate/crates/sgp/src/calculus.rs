//! Calculus rules for subgradient projectors.
//!
//! Each combinator builds a new [`FunctionHandle`] whose projector is a
//! known transform of the input's projector:
//!
//! | rule | function            | projector identity                      |
//! |------|---------------------|-----------------------------------------|
//! | i    | `a f`               | `G_g = G_f`                             |
//! | ii   | `f(a x)`            | `G_g = a^-1 G_f(a x)`                   |
//! | iii  | `f^a`, `f >= 0`     | `G_g = (1 - 1/a) Id + (1/a) G_f`        |
//! | iv   | `f(A x)`, A unitary | `G_g = A^T G_f A`                       |
//! | v    | `f(x - z)`          | `G_g = z + G_f(. - z)`                  |
//! | vi   | `max_i f_i`         | selection over the active set           |
//! | vii  | `f^+`               | `G_g = G_f`                             |
//! | viii | Moreau envelope     | step along `x - prox_f(x)`              |
//!
//! The returned handles carry transformed oracles (`analytic_g`,
//! `project_c`, second derivatives, lower-bound hints) whenever the input
//! had them, so the identities can be cross-checked through two
//! independent routes.

use crate::error::{Error, Result};
use crate::function::{FunctionHandle, VectorFn};
use crate::vector::Vector;
use nalgebra::DMatrix;
use std::sync::Arc;

/// Relative tie tolerance for the active set of a max:
/// `1e-12 * max(1, |g(x)|)`. Exact ties are measure-zero; a relative
/// tolerance keeps the lowest-active-index rule stable.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// An orthogonal matrix `A` with `A^T A = A A^T = Id` (checked to 1e-12 at
/// construction).
#[derive(Debug, Clone)]
pub struct UnitaryMap {
    a: DMatrix<f64>,
}

impl UnitaryMap {
    pub fn new(a: DMatrix<f64>) -> Result<Self> {
        if a.nrows() != a.ncols() || a.nrows() == 0 {
            return Err(Error::BadParameter("unitary map must be square".into()));
        }
        let id = DMatrix::identity(a.nrows(), a.ncols());
        let dev_left = (a.transpose() * &a - &id).abs().max();
        let dev_right = (&a * a.transpose() - &id).abs().max();
        let max_dev = dev_left.max(dev_right);
        if max_dev > 1e-12 {
            return Err(Error::NotUnitary { max_dev });
        }
        Ok(UnitaryMap { a })
    }

    pub fn identity(n: usize) -> Self {
        UnitaryMap {
            a: DMatrix::identity(n, n),
        }
    }

    /// Plane rotation of R^2 by `angle` radians.
    pub fn rotation2(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        UnitaryMap {
            a: DMatrix::from_row_slice(2, 2, &[c, -s, s, c]),
        }
    }

    /// Coordinate permutation sending slot `i` to `perm[i]`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::BadParameter("invalid permutation".into()));
            }
            seen[p] = true;
        }
        let mut a = DMatrix::zeros(n, n);
        for (i, &p) in perm.iter().enumerate() {
            a[(p, i)] = 1.0;
        }
        Ok(UnitaryMap { a })
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        let v = &self.a * nalgebra::DVector::from_column_slice(x.coords());
        Vector::from_raw(v.as_slice().to_vec())
    }

    pub fn apply_transpose(&self, x: &Vector) -> Vector {
        let v = self.a.transpose() * nalgebra::DVector::from_column_slice(x.coords());
        Vector::from_raw(v.as_slice().to_vec())
    }
}

/// How to pick a single subgradient for `max_i f_i` on its active set.
#[derive(Debug, Clone)]
pub enum MaxSelectionPolicy {
    /// Deterministic: the active `f_i` of lowest index.
    LowestActiveIndex,
    /// Convex weights over the full list, renormalized over the active set.
    SuppliedWeights(Vec<f64>),
}

/// Rule i: `g = a f` leaves both `C` and the projector unchanged.
pub fn scale(f: &FunctionHandle, alpha: f64) -> Result<FunctionHandle> {
    if !(alpha > 0.0) {
        return Err(Error::NonpositiveScalar(alpha));
    }
    let f1 = f.clone();
    let f2 = f.clone();
    FunctionHandle::builder(format!("{}*{}", alpha, f.name()), f.dim())
        .value(move |x| alpha * f1.value(x))
        .subgrad(move |x| f2.subgrad(x).scale(alpha))
        .analytic_g_arc(transformed_g(f, |_, gx| gx))
        .project_c_arc(pass_project_c(f))
        .second_deriv_arc(map_second_deriv(f, move |f, t| {
            alpha * f.second_deriv(t).unwrap()
        }))
        .min_value_hint_opt(f.min_value_hint().map(|m| alpha * m))
        .build()
}

/// Rule ii: `g = f(a x)` shrinks `C` by `1/a` and conjugates the projector
/// with the dilation.
pub fn prescale(f: &FunctionHandle, alpha: f64) -> Result<FunctionHandle> {
    if !(alpha > 0.0) {
        return Err(Error::NonpositiveScalar(alpha));
    }
    let f1 = f.clone();
    let f2 = f.clone();
    let fp = f.clone();
    FunctionHandle::builder(format!("{}∘{}Id", f.name(), alpha), f.dim())
        .value(move |x| f1.value(&x.scale(alpha)))
        .subgrad(move |x| f2.subgrad(&x.scale(alpha)).scale(alpha))
        .analytic_g_arc(transformed_g(f, move |x: &Vector, _| x.scale(alpha)).map(
            |_: VectorFn| -> VectorFn {
                let f = fp.clone();
                Arc::new(move |x: &Vector| {
                    g_of(&f, &x.scale(alpha)).scale(1.0 / alpha)
                })
            },
        ))
        .project_c_arc(f.has_project_c().then(|| -> VectorFn {
            let f = f.clone();
            Arc::new(move |x: &Vector| f.project_c(&x.scale(alpha)).unwrap().scale(1.0 / alpha))
        }))
        .second_deriv_arc(map_second_deriv(f, move |f, t| {
            alpha * alpha * f.second_deriv(alpha * t).unwrap()
        }))
        .min_value_hint_opt(f.min_value_hint())
        .build()
}

/// Rule iii: `g = f^a` for nonnegative `f` and `a >= 1` relaxes the
/// projector toward the identity: `G_g = (1 - 1/a) Id + (1/a) G_f`.
///
/// Nonnegativity of `f` is the caller's assertion; `a >= 1` keeps `g`
/// convex without further checks.
pub fn power(f: &FunctionHandle, alpha: f64) -> Result<FunctionHandle> {
    if !(alpha >= 1.0) || !alpha.is_finite() {
        return Err(Error::InvalidExponent(alpha));
    }
    let f1 = f.clone();
    let f2 = f.clone();
    let fd = f.clone();
    FunctionHandle::builder(format!("{}^{}", f.name(), alpha), f.dim())
        .value(move |x| f1.value(x).max(0.0).powf(alpha))
        .subgrad(move |x| {
            let fx = f2.value(x).max(0.0);
            f2.subgrad(x).scale(alpha * fx.powf(alpha - 1.0))
        })
        .analytic_g_arc(transformed_g(f, move |x, gx| {
            x.scale(1.0 - 1.0 / alpha).add(&gx.scale(1.0 / alpha))
        }))
        .project_c_arc(pass_project_c(f))
        .second_deriv_arc(f.has_second_deriv().then(|| -> crate::function::RealFn {
            Arc::new(move |t: f64| {
                let v = fd.value1(t).max(0.0);
                let d1 = fd.subgrad1(t);
                let d2 = fd.second_deriv(t).unwrap();
                alpha * (alpha - 1.0) * v.powf(alpha - 2.0) * d1 * d1
                    + alpha * v.powf(alpha - 1.0) * d2
            })
        }))
        .min_value_hint_opt(
            f.min_value_hint()
                .map(|m| if m >= 0.0 { m.powf(alpha) } else { 0.0 }),
        )
        .build()
}

/// Rule iv: `g = f ∘ A` for unitary `A` conjugates everything with `A`.
pub fn unitary_compose(f: &FunctionHandle, a: &UnitaryMap) -> Result<FunctionHandle> {
    if a.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: a.dim(),
        });
    }
    let f1 = f.clone();
    let a1 = a.clone();
    let f2 = f.clone();
    let a2 = a.clone();
    let ag = a.clone();
    let ap = a.clone();
    FunctionHandle::builder(format!("{}∘A", f.name()), f.dim())
        .value(move |x| f1.value(&a1.apply(x)))
        .subgrad(move |x| a2.apply_transpose(&f2.subgrad(&a2.apply(x))))
        .analytic_g_arc(f.has_analytic_g().then(|| -> VectorFn {
            let f = f.clone();
            Arc::new(move |x: &Vector| ag.apply_transpose(&g_of(&f, &ag.apply(x))))
        }))
        .project_c_arc(f.has_project_c().then(|| -> VectorFn {
            let f = f.clone();
            Arc::new(move |x: &Vector| ap.apply_transpose(&f.project_c(&ap.apply(x)).unwrap()))
        }))
        .min_value_hint_opt(f.min_value_hint())
        .build()
}

/// Rule v: `g = f(. - z)` shifts `C` and the projector by `z`.
pub fn translate(f: &FunctionHandle, z: &Vector) -> Result<FunctionHandle> {
    if z.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: z.dim(),
        });
    }
    let f1 = f.clone();
    let z1 = z.clone();
    let f2 = f.clone();
    let z2 = z.clone();
    let zg = z.clone();
    let zp = z.clone();
    let zd = z.clone();
    FunctionHandle::builder(format!("{}(.-z)", f.name()), f.dim())
        .value(move |x| f1.value(&x.sub(&z1)))
        .subgrad(move |x| f2.subgrad(&x.sub(&z2)))
        .analytic_g_arc(f.has_analytic_g().then(|| -> VectorFn {
            let f = f.clone();
            Arc::new(move |x: &Vector| zg.add(&g_of(&f, &x.sub(&zg))))
        }))
        .project_c_arc(f.has_project_c().then(|| -> VectorFn {
            let f = f.clone();
            Arc::new(move |x: &Vector| zp.add(&f.project_c(&x.sub(&zp)).unwrap()))
        }))
        .second_deriv_arc(map_second_deriv(f, move |f, t| {
            f.second_deriv(t - zd[0]).unwrap()
        }))
        .min_value_hint_opt(f.min_value_hint())
        .build()
}

/// Lowest-index active set of `values` against their maximum `gx`,
/// with the relative tie tolerance [`TIE_TOLERANCE`].
pub fn active_set(values: &[f64], gx: f64) -> Vec<usize> {
    let tie = TIE_TOLERANCE * gx.abs().max(1.0);
    values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v >= gx - tie)
        .map(|(i, _)| i)
        .collect()
}

/// Rule vi: `g = max_i f_i` with a deterministic subgradient selection over
/// the active set `I(x) = {i : f_i(x) = g(x)}`.
pub fn max_of(fs: &[FunctionHandle], policy: MaxSelectionPolicy) -> Result<FunctionHandle> {
    if fs.is_empty() {
        return Err(Error::EmptyList);
    }
    let dim = fs[0].dim();
    for f in fs {
        if f.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: f.dim(),
            });
        }
    }
    if let MaxSelectionPolicy::SuppliedWeights(w) = &policy {
        if w.len() != fs.len() {
            return Err(Error::BadWeights(format!(
                "{} weights for {} functions",
                w.len(),
                fs.len()
            )));
        }
        if w.iter().any(|&wi| wi < 0.0) || (w.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(Error::BadWeights(
                "weights must be nonnegative and sum to 1".into(),
            ));
        }
    }
    let names: Vec<_> = fs.iter().map(|f| f.name().to_string()).collect();
    let fs1: Vec<_> = fs.to_vec();
    let fs2: Vec<_> = fs.to_vec();
    let hint = fs
        .iter()
        .filter_map(|f| f.min_value_hint())
        .fold(None, |acc: Option<f64>, m| Some(acc.map_or(m, |a| a.max(m))));
    FunctionHandle::builder(format!("max({})", names.join(", ")), dim)
        .value(move |x| {
            fs1.iter()
                .map(|f| f.value(x))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .subgrad(move |x| {
            let values: Vec<f64> = fs2.iter().map(|f| f.value(x)).collect();
            let gx = values.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
            let active = active_set(&values, gx);
            match &policy {
                MaxSelectionPolicy::LowestActiveIndex => fs2[active[0]].subgrad(x),
                MaxSelectionPolicy::SuppliedWeights(w) => {
                    let total: f64 = active.iter().map(|&i| w[i]).sum();
                    let mut s = Vector::zeros(dim);
                    if total <= 0.0 {
                        // all active weights vanish; fall back to the lowest
                        return fs2[active[0]].subgrad(x);
                    }
                    for &i in &active {
                        s = s.axpy(w[i] / total, &fs2[i].subgrad(x));
                    }
                    s
                }
            }
        })
        .min_value_hint_opt(hint)
        .build()
}

/// Rule vii: `g = f^+ = max(f, 0)` keeps the projector of `f`.
pub fn positive_part(f: &FunctionHandle) -> Result<FunctionHandle> {
    let f1 = f.clone();
    let f2 = f.clone();
    FunctionHandle::builder(format!("{}⁺", f.name()), f.dim())
        .value(move |x| f1.value(x).max(0.0))
        .subgrad(move |x| {
            if f2.value(x) > 0.0 {
                f2.subgrad(x)
            } else {
                Vector::zeros(f2.dim())
            }
        })
        .analytic_g_arc(transformed_g(f, |_, gx| gx))
        .project_c_arc(pass_project_c(f))
        .second_deriv_arc(map_second_deriv(f, |f, t| {
            if f.value1(t) > 0.0 {
                f.second_deriv(t).unwrap()
            } else {
                0.0
            }
        }))
        .min_value_hint(f.min_value_hint().unwrap_or(0.0).max(0.0))
        .build()
}

/// Rule viii: the Moreau envelope `g = f □ (1/2)||.||^2` of an `f` with
/// `min f = 0` (caller-asserted; no automatic recentering, a silent shift
/// would change `C`).
///
/// `prox` must be the proximity operator `(Id + df)^-1`. When it is not
/// supplied, a one-dimensional differentiable `f` falls back to
/// [`numeric_prox`]; otherwise the call fails with `ProxNotSupplied`.
pub fn moreau_envelope(f: &FunctionHandle, prox: Option<VectorFn>) -> Result<FunctionHandle> {
    let prox: VectorFn = match prox {
        Some(p) => p,
        None if f.dim() == 1 => {
            let f = f.clone();
            Arc::new(move |x: &Vector| {
                let y = numeric_prox(&f, x[0]).expect("resolvent solve failed");
                Vector::of(&[y])
            })
        }
        None => return Err(Error::ProxNotSupplied),
    };
    let f1 = f.clone();
    let p1 = prox.clone();
    let p2 = prox.clone();
    let pg = prox.clone();
    let fg = f.clone();
    let fd = f.clone();
    let pd = prox.clone();
    FunctionHandle::builder(format!("env({})", f.name()), f.dim())
        .value(move |x| {
            let p = p1(x);
            f1.value(&p) + 0.5 * x.sub(&p).norm_sq()
        })
        .subgrad(move |x| x.sub(&p2(x)))
        .analytic_g(move |x: &Vector| {
            // the displayed projector branches on the sign of f, not g
            if fg.value(x) > 0.0 {
                let p = pg(x);
                let step = x.sub(&p);
                let gx = fg.value(&p) + 0.5 * step.norm_sq();
                x.axpy(-gx / step.norm_sq(), &step)
            } else {
                x.clone()
            }
        })
        .project_c_arc(pass_project_c(f))
        .second_deriv_arc(f.has_second_deriv().then(|| -> crate::function::RealFn {
            Arc::new(move |t: f64| {
                let p = pd(&Vector::of(&[t]))[0];
                let d2 = fd.second_deriv(p).unwrap();
                d2 / (1.0 + d2)
            })
        }))
        .min_value_hint(0.0)
        .build()
}

/// Solves `y + f'(y) = x` for a differentiable convex `f` on the line by
/// safeguarded bisection, to residual `|y + f'(y) - x| <= 1e-12`.
///
/// The initial bracket `[x - 1 - |f'(x)|, x + 1 + |f'(x)|]` always
/// straddles the root for monotone `f'`; the doubling loop is a guard for
/// inexact input.
pub fn numeric_prox(f: &FunctionHandle, x: f64) -> Result<f64> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: f.dim(),
        });
    }
    let phi = |y: f64| y + f.subgrad1(y) - x;
    let slope = f.subgrad1(x).abs();
    let mut lo = x - 1.0 - slope;
    let mut hi = x + 1.0 + slope;
    let mut expansions = 0;
    while phi(lo) > 0.0 || phi(hi) < 0.0 {
        let w = hi - lo;
        lo -= w / 2.0;
        hi += w / 2.0;
        expansions += 1;
        if expansions > 60 {
            return Err(Error::NoBracket { x });
        }
    }
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        let v = phi(mid);
        if v.abs() <= 1e-12 {
            return Ok(mid);
        }
        if v > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        mid = 0.5 * (lo + hi);
        if hi - lo < f64::EPSILON * mid.abs().max(1.0) {
            break;
        }
    }
    if phi(mid).abs() <= 1e-12 {
        Ok(mid)
    } else {
        Err(Error::QuadratureFailure(format!(
            "resolvent residual {} at x = {x}",
            phi(mid).abs()
        )))
    }
}

/// `G_f` through the handle's analytic oracle (panics if absent; callers
/// gate on `has_analytic_g`).
fn g_of(f: &FunctionHandle, x: &Vector) -> Vector {
    f.analytic_g(x).expect("handle has no analytic projector")
}

/// Wraps `transform(x, G_f x)` as the new analytic oracle when `f` has one.
fn transformed_g(
    f: &FunctionHandle,
    transform: impl Fn(&Vector, Vector) -> Vector + Send + Sync + 'static,
) -> Option<VectorFn> {
    if !f.has_analytic_g() {
        return None;
    }
    let f = f.clone();
    Some(Arc::new(move |x: &Vector| transform(x, g_of(&f, x))))
}

fn pass_project_c(f: &FunctionHandle) -> Option<VectorFn> {
    if !f.has_project_c() {
        return None;
    }
    let f = f.clone();
    Some(Arc::new(move |x: &Vector| f.project_c(x).unwrap()))
}

fn map_second_deriv(
    f: &FunctionHandle,
    map: impl Fn(&FunctionHandle, f64) -> f64 + Send + Sync + 'static,
) -> Option<crate::function::RealFn> {
    if !f.has_second_deriv() {
        return None;
    }
    let f = f.clone();
    Some(Arc::new(move |t: f64| map(&f, t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projector::apply_g;

    fn sq_norm(n: usize) -> FunctionHandle {
        FunctionHandle::builder("sq_norm", n)
            .value(|x| x.norm_sq())
            .subgrad(|x| x.scale(2.0))
            .analytic_g(|x| x.scale(0.5))
            .project_c(|x| Vector::zeros(x.dim()))
            .build()
            .unwrap()
    }

    #[test]
    fn scale_keeps_projector() {
        let f = sq_norm(2);
        let g = scale(&f, 7.0).unwrap();
        let x = Vector::of(&[2.0, 0.0]);
        let gx = apply_g(&g, &x).unwrap();
        assert!(gx.dist(&Vector::of(&[1.0, 0.0])) < 1e-14);
        assert!(scale(&f, 0.0).is_err());
        assert!(scale(&f, -1.0).is_err());

        // scaling the infeasibility example does not move its projector
        let t2p1 = FunctionHandle::builder("t^2+1", 1)
            .value(|x| x[0] * x[0] + 1.0)
            .subgrad(|x| Vector::of(&[2.0 * x[0]]))
            .build()
            .unwrap();
        let g3 = scale(&t2p1, 3.0).unwrap();
        let gx = apply_g(&g3, &Vector::of(&[0.5])).unwrap();
        assert!((gx[0] - (-0.75)).abs() < 1e-14);
    }

    #[test]
    fn prescale_dilates() {
        let f = sq_norm(2);
        let g = prescale(&f, 2.0).unwrap();
        let gx = apply_g(&g, &Vector::of(&[1.0, 0.0])).unwrap();
        assert!(gx.dist(&Vector::of(&[0.5, 0.0])) < 1e-14);
        // oracle agrees
        let og = g.analytic_g(&Vector::of(&[1.0, 0.0])).unwrap();
        assert!(og.dist(&Vector::of(&[0.5, 0.0])) < 1e-14);
    }

    #[test]
    fn power_averages_toward_identity() {
        // ||x|| has C = {0} and G = 0 off C; squaring must give (1/2) Id
        let norm = FunctionHandle::builder("norm", 2)
            .value(|x| x.norm())
            .subgrad(|x| {
                let n = x.norm();
                if n == 0.0 {
                    Vector::zeros(2)
                } else {
                    x.scale(1.0 / n)
                }
            })
            .build()
            .unwrap();
        let g = power(&norm, 2.0).unwrap();
        let gx = apply_g(&g, &Vector::of(&[2.0, 0.0])).unwrap();
        assert!(gx.dist(&Vector::of(&[1.0, 0.0])) < 1e-12);
        assert!(power(&norm, 0.5).is_err());
    }

    #[test]
    fn unitary_rotation_commutes_with_radial_projector() {
        let f = sq_norm(2);
        let a = UnitaryMap::rotation2(std::f64::consts::FRAC_PI_2);
        let g = unitary_compose(&f, &a).unwrap();
        let x = Vector::of(&[1.2, -0.7]);
        let gx = apply_g(&g, &x).unwrap();
        assert!(gx.dist(&x.scale(0.5)) < 1e-14);
    }

    #[test]
    fn permutation_swaps_coordinates() {
        let f = FunctionHandle::builder("|x1|", 2)
            .value(|x| x[0].abs())
            .subgrad(|x| Vector::of(&[crate::sgn(x[0]), 0.0]))
            .build()
            .unwrap();
        let a = UnitaryMap::permutation(&[1, 0]).unwrap();
        let g = unitary_compose(&f, &a).unwrap();
        // g(x) = |x2|, so the projector zeroes the second coordinate
        let gx = apply_g(&g, &Vector::of(&[3.0, 2.0])).unwrap();
        assert!(gx.dist(&Vector::of(&[3.0, 0.0])) < 1e-14);
    }

    #[test]
    fn non_unitary_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 2.0]);
        assert!(matches!(UnitaryMap::new(m), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn translate_shifts_fixed_points() {
        let f = sq_norm(2);
        let z = Vector::of(&[1.0, 0.0]);
        let g = translate(&f, &z).unwrap();
        let gx = apply_g(&g, &Vector::of(&[3.0, 0.0])).unwrap();
        assert!(gx.dist(&Vector::of(&[2.0, 0.0])) < 1e-14);
        // z itself is the translated fixed point
        let fixed = apply_g(&g, &z).unwrap();
        assert_eq!(fixed, z);
    }

    #[test]
    fn positive_part_keeps_projector() {
        let f = FunctionHandle::builder("t^2-1", 1)
            .value(|x| x[0] * x[0] - 1.0)
            .subgrad(|x| Vector::of(&[2.0 * x[0]]))
            .build()
            .unwrap();
        let g = positive_part(&f).unwrap();
        let gx = apply_g(&g, &Vector::of(&[3.0])).unwrap();
        assert!((gx[0] - 5.0 / 3.0).abs() < 1e-14);
        // fixed inside C
        let inside = apply_g(&g, &Vector::of(&[0.2])).unwrap();
        assert_eq!(inside[0], 0.2);
    }

    #[test]
    fn max_policies() {
        let f1 = FunctionHandle::builder("x1", 2)
            .value(|x| x[0])
            .subgrad(|_| Vector::of(&[1.0, 0.0]))
            .build()
            .unwrap();
        let f2 = FunctionHandle::builder("x2", 2)
            .value(|x| x[1])
            .subgrad(|_| Vector::of(&[0.0, 1.0]))
            .build()
            .unwrap();
        let tied = Vector::of(&[1.0, 1.0]);
        let low = max_of(&[f1.clone(), f2.clone()], MaxSelectionPolicy::LowestActiveIndex).unwrap();
        assert_eq!(low.subgrad(&tied).coords(), &[1.0, 0.0]);
        let mixed = max_of(
            &[f1.clone(), f2.clone()],
            MaxSelectionPolicy::SuppliedWeights(vec![0.5, 0.5]),
        )
        .unwrap();
        assert_eq!(mixed.subgrad(&tied).coords(), &[0.5, 0.5]);
        // away from ties both policies pick the unique active subgradient
        let off = Vector::of(&[2.0, 1.0]);
        assert_eq!(mixed.subgrad(&off).coords(), &[1.0, 0.0]);
        assert!(max_of(&[], MaxSelectionPolicy::LowestActiveIndex).is_err());
        assert!(matches!(
            max_of(
                &[f1, f2],
                MaxSelectionPolicy::SuppliedWeights(vec![0.9, 0.9])
            ),
            Err(Error::BadWeights(_))
        ));
    }

    #[test]
    fn numeric_prox_examples() {
        // f = t^2/2 has resolvent y = x/2
        let half_sq = FunctionHandle::builder("t^2/2", 1)
            .value(|x| 0.5 * x[0] * x[0])
            .subgrad(|x| Vector::of(&[x[0]]))
            .build()
            .unwrap();
        assert!((numeric_prox(&half_sq, 2.0).unwrap() - 1.0).abs() < 1e-12);

        // f = t^4: root of y + 4y^3 = x; check the defining residual
        let quart = FunctionHandle::builder("t^4", 1)
            .value(|x| x[0].powi(4))
            .subgrad(|x| Vector::of(&[4.0 * x[0].powi(3)]))
            .build()
            .unwrap();
        let y = numeric_prox(&quart, 2.0).unwrap();
        assert!((y + 4.0 * y.powi(3) - 2.0).abs() <= 1e-12);

        // even f minimized at 0 fixes the origin
        assert_eq!(numeric_prox(&quart, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn moreau_envelope_of_abs_is_huber() {
        let abs = FunctionHandle::builder("|t|", 1)
            .value(|x| x[0].abs())
            .subgrad(|x| Vector::of(&[crate::sgn(x[0])]))
            .build()
            .unwrap();
        // soft-thresholding is the prox of |.|
        let env = moreau_envelope(
            &abs,
            Some(Arc::new(|x: &Vector| {
                Vector::of(&[crate::sgn(x[0]) * (x[0].abs() - 1.0).max(0.0)])
            })),
        )
        .unwrap();
        // f(3) > 0: G(3) = 3 - (3 - 1/2)/(3-2)^2 * (3-2) = 1/2
        let gx = apply_g(&env, &Vector::of(&[3.0])).unwrap();
        assert!((gx[0] - 0.5).abs() < 1e-12);
        // inside C = {0}
        let g0 = apply_g(&env, &Vector::of(&[0.0])).unwrap();
        assert_eq!(g0[0], 0.0);
        // multi-d without prox is an error
        let norm2 = FunctionHandle::builder("norm", 2)
            .value(|x| x.norm())
            .subgrad(|x| {
                let n = x.norm();
                if n == 0.0 {
                    Vector::zeros(2)
                } else {
                    x.scale(1.0 / n)
                }
            })
            .build()
            .unwrap();
        assert!(matches!(
            moreau_envelope(&norm2, None),
            Err(Error::ProxNotSupplied)
        ));
    }
}
