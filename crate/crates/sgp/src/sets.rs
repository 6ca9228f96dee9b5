//! Closed convex sets with exact metric projectors.
//!
//! Golden tests against closed-form projectors need `P_C` exact, so every
//! kind here implements its projection directly rather than numerically.

use crate::error::{Error, Result};
use crate::vector::Vector;

/// Finite description of a closed convex subset of R^n.
///
/// Box bounds may be infinite, which also makes rays and slabs
/// representable (used as recession-cone polars in the analysis module).
#[derive(Debug, Clone)]
pub enum ConvexSetSpec {
    Ball { center: Vector, radius: f64 },
    /// `{x : <normal, x> <= offset}`
    Halfspace { normal: Vector, offset: f64 },
    /// `{x : <normal, x> = offset}`
    Hyperplane { normal: Vector, offset: f64 },
    /// `{x : lo <= x <= hi}` componentwise; entries may be infinite.
    Box { lo: Vec<f64>, hi: Vec<f64> },
    /// `point + span(basis)` with orthonormal basis.
    AffineSubspace { basis: Vec<Vector>, point: Vector },
    Singleton { point: Vector },
    NonnegOrthant { dim: usize },
}

impl ConvexSetSpec {
    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::BadParameter(format!(
                "ball radius must be positive, got {radius}"
            )));
        }
        Ok(ConvexSetSpec::Ball { center, radius })
    }

    pub fn halfspace(normal: Vector, offset: f64) -> Result<Self> {
        if normal.norm() == 0.0 {
            return Err(Error::ZeroNormal);
        }
        Ok(ConvexSetSpec::Halfspace { normal, offset })
    }

    pub fn hyperplane(normal: Vector, offset: f64) -> Result<Self> {
        if normal.norm() == 0.0 {
            return Err(Error::ZeroNormal);
        }
        Ok(ConvexSetSpec::Hyperplane { normal, offset })
    }

    pub fn boxed(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.is_empty() || lo.len() != hi.len() {
            return Err(Error::BadParameter("box bounds must match".into()));
        }
        if lo.iter().zip(&hi).any(|(l, h)| l.is_nan() || h.is_nan() || l > h) {
            return Err(Error::BadParameter("box needs lo <= hi".into()));
        }
        Ok(ConvexSetSpec::Box { lo, hi })
    }

    /// Orthonormalizes the basis by Gram-Schmidt; near-dependent vectors are
    /// rejected.
    pub fn affine_subspace(basis: Vec<Vector>, point: Vector) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::BadParameter("affine subspace needs a basis".into()));
        }
        let dim = point.dim();
        let mut ortho: Vec<Vector> = Vec::with_capacity(basis.len());
        for b in basis {
            if b.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: b.dim(),
                });
            }
            let mut v = b;
            for u in &ortho {
                v = v.axpy(-u.dot(&v), u);
            }
            let n = v.norm();
            if n < 1e-12 {
                return Err(Error::BadParameter(
                    "affine subspace basis is linearly dependent".into(),
                ));
            }
            ortho.push(v.scale(1.0 / n));
        }
        Ok(ConvexSetSpec::AffineSubspace {
            basis: ortho,
            point,
        })
    }

    pub fn singleton(point: Vector) -> Self {
        ConvexSetSpec::Singleton { point }
    }

    pub fn nonneg_orthant(dim: usize) -> Self {
        ConvexSetSpec::NonnegOrthant { dim }
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexSetSpec::Ball { center, .. } => center.dim(),
            ConvexSetSpec::Halfspace { normal, .. } => normal.dim(),
            ConvexSetSpec::Hyperplane { normal, .. } => normal.dim(),
            ConvexSetSpec::Box { lo, .. } => lo.len(),
            ConvexSetSpec::AffineSubspace { point, .. } => point.dim(),
            ConvexSetSpec::Singleton { point } => point.dim(),
            ConvexSetSpec::NonnegOrthant { dim } => *dim,
        }
    }

    /// Exact metric projection onto the set.
    pub fn project(&self, x: &Vector) -> Vector {
        match self {
            ConvexSetSpec::Ball { center, radius } => {
                let d = x.sub(center);
                let n = d.norm();
                if n <= *radius {
                    x.clone()
                } else {
                    center.axpy(radius / n, &d)
                }
            }
            ConvexSetSpec::Halfspace { normal, offset } => {
                let excess = normal.dot(x) - offset;
                if excess <= 0.0 {
                    x.clone()
                } else {
                    x.axpy(-excess / normal.norm_sq(), normal)
                }
            }
            ConvexSetSpec::Hyperplane { normal, offset } => {
                let excess = normal.dot(x) - offset;
                x.axpy(-excess / normal.norm_sq(), normal)
            }
            ConvexSetSpec::Box { lo, hi } => Vector::from_raw(
                x.coords()
                    .iter()
                    .zip(lo.iter().zip(hi))
                    .map(|(&c, (&l, &h))| c.max(l).min(h))
                    .collect(),
            ),
            ConvexSetSpec::AffineSubspace { basis, point } => {
                let d = x.sub(point);
                let mut p = point.clone();
                for u in basis {
                    p = p.axpy(u.dot(&d), u);
                }
                p
            }
            ConvexSetSpec::Singleton { point } => point.clone(),
            ConvexSetSpec::NonnegOrthant { .. } => {
                Vector::from_raw(x.coords().iter().map(|&c| c.max(0.0)).collect())
            }
        }
    }

    /// `||x - P(x)||`; kept as the norm of the projection residual so the
    /// distance and its gradient `(x - Px)/d` stay mutually consistent.
    pub fn distance(&self, x: &Vector) -> f64 {
        x.dist(&self.project(x))
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        self.distance(x) <= tol
    }

    /// Whether the set is a cone with apex at the origin.
    pub fn is_cone(&self) -> bool {
        match self {
            ConvexSetSpec::NonnegOrthant { .. } => true,
            ConvexSetSpec::Halfspace { offset, .. } => *offset == 0.0,
            ConvexSetSpec::Hyperplane { offset, .. } => *offset == 0.0,
            ConvexSetSpec::Singleton { point } => point.norm() == 0.0,
            ConvexSetSpec::Box { lo, hi } => lo
                .iter()
                .zip(hi)
                .all(|(&l, &h)| (l == 0.0 || l == f64::NEG_INFINITY) && (h == 0.0 || h == f64::INFINITY)),
            _ => false,
        }
    }

    /// Short display used by the catalog listing.
    pub fn describe(&self) -> String {
        match self {
            ConvexSetSpec::Ball { center, radius } => format!("ball(c={center}, r={radius})"),
            ConvexSetSpec::Halfspace { normal, offset } => {
                format!("halfspace(<{normal}, x> <= {offset})")
            }
            ConvexSetSpec::Hyperplane { normal, offset } => {
                format!("hyperplane(<{normal}, x> = {offset})")
            }
            ConvexSetSpec::Box { lo, hi } => format!("box({lo:?}..{hi:?})"),
            ConvexSetSpec::AffineSubspace { basis, point } => {
                format!("affine(dim {}, through {point})", basis.len())
            }
            ConvexSetSpec::Singleton { point } => format!("singleton({point})"),
            ConvexSetSpec::NonnegOrthant { dim } => format!("orthant(R^{dim}_+)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_projection() {
        let b = ConvexSetSpec::ball(Vector::of(&[0.0, 0.0]), 1.0).unwrap();
        assert_eq!(b.project(&Vector::of(&[3.0, 0.0])).coords(), &[1.0, 0.0]);
        assert_eq!(b.project(&Vector::of(&[0.2, 0.1])).coords(), &[0.2, 0.1]);
        assert_eq!(b.distance(&Vector::of(&[3.0, 0.0])), 2.0);
        assert!(ConvexSetSpec::ball(Vector::of(&[0.0]), 0.0).is_err());
    }

    #[test]
    fn hyperplane_and_halfspace() {
        let hp = ConvexSetSpec::hyperplane(Vector::of(&[0.0, 1.0]), 0.0).unwrap();
        assert_eq!(hp.project(&Vector::of(&[2.0, 1.0])).coords(), &[2.0, 0.0]);
        let hs = ConvexSetSpec::halfspace(Vector::of(&[1.0, 0.0]), 1.0).unwrap();
        assert_eq!(hs.project(&Vector::of(&[3.0, 2.0])).coords(), &[1.0, 2.0]);
        assert_eq!(hs.project(&Vector::of(&[-3.0, 2.0])).coords(), &[-3.0, 2.0]);
    }

    #[test]
    fn box_with_infinite_bounds_is_a_ray() {
        let ray = ConvexSetSpec::boxed(vec![0.0, 0.0], vec![f64::INFINITY, 0.0]).unwrap();
        assert_eq!(ray.project(&Vector::of(&[2.0, 3.0])).coords(), &[2.0, 0.0]);
        assert_eq!(ray.project(&Vector::of(&[-2.0, 3.0])).coords(), &[0.0, 0.0]);
        assert!(ray.is_cone());
        assert!(ConvexSetSpec::boxed(vec![1.0], vec![0.0]).is_err());
    }

    #[test]
    fn affine_subspace_orthonormalizes() {
        let s = ConvexSetSpec::affine_subspace(
            vec![Vector::of(&[2.0, 0.0, 0.0]), Vector::of(&[1.0, 1.0, 0.0])],
            Vector::of(&[0.0, 0.0, 1.0]),
        )
        .unwrap();
        let p = s.project(&Vector::of(&[3.0, 4.0, 7.0]));
        assert_eq!(p.coords(), &[3.0, 4.0, 1.0]);
        assert!(ConvexSetSpec::affine_subspace(
            vec![Vector::of(&[1.0, 0.0]), Vector::of(&[2.0, 0.0])],
            Vector::of(&[0.0, 0.0]),
        )
        .is_err());
    }

    #[test]
    fn orthant_and_cones() {
        let k = ConvexSetSpec::nonneg_orthant(2);
        assert_eq!(k.project(&Vector::of(&[2.0, -3.0])).coords(), &[2.0, 0.0]);
        assert!(k.is_cone());
        assert!(ConvexSetSpec::halfspace(Vector::of(&[1.0]), 0.0)
            .unwrap()
            .is_cone());
        assert!(!ConvexSetSpec::halfspace(Vector::of(&[1.0]), 1.0)
            .unwrap()
            .is_cone());
    }
}
