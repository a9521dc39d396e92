//! Numeric geometry of CP^N for N = 1, 2, 3.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Tolerance for deciding that two projective points coincide.
pub const POINT_TOL: f64 = 1e-8;
/// Tolerance for equation residuals and metric identities.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Tolerance for projector identities.
pub const PROJECTOR_TOL: f64 = 1e-12;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `e^{i theta}`.
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

/// `e^{i pi (2k+1)/n}`, the k-th root of `-1`.
pub fn root_of_minus_one(k: i64, n: u32) -> C64 {
    cis(PI * (2 * k + 1) as f64 / n as f64)
}

/// `e^{2 pi i k / n}`.
pub fn root_of_unity(k: i64, n: u32) -> C64 {
    cis(TAU * k as f64 / n as f64)
}

/// A point of CP^N given by homogeneous coordinates.
///
/// The stored vector is a representative, not a normal form; equality of
/// points is projective and should be tested with [`fs_distance`].
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectivePoint {
    coords: Vec<C64>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<C64>) -> Result<Self> {
        if coords.iter().all(|z| z.norm_sqr() == 0.0) {
            return Err(Error::ZeroVector);
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn from_re(coords: &[f64]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| c(x, 0.0)).collect())
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    /// `N + 1`.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Representative of unit norm (phase untouched).
    pub fn normalized(&self) -> Vec<C64> {
        let r = self.norm();
        self.coords.iter().map(|z| z / r).collect()
    }

    /// `sum z_i^n` on the unit-norm representative.
    pub fn fermat_residual(&self, n: u32) -> C64 {
        self.normalized().iter().map(|z| z.powu(n)).sum()
    }

    /// Drop the last coordinate (the covering map `F_n -> CP^2`).
    pub fn truncate_last(&self) -> Result<ProjectivePoint> {
        ProjectivePoint::new(self.coords[..self.coords.len() - 1].to_vec())
    }
}

fn hermitian(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Unit representative whose largest coordinate (lowest index on ties
/// within `1e-12`) is real and positive.
pub fn canonical_rep(p: &ProjectivePoint) -> Result<ProjectivePoint> {
    let r = p.norm();
    if r == 0.0 {
        return Err(Error::ZeroVector);
    }
    let max = p.coords.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let lead = p
        .coords
        .iter()
        .position(|z| z.norm() >= max - 1e-12)
        .expect("nonzero vector");
    let phase = p.coords[lead].conj() / p.coords[lead].norm();
    let coords = p.coords.iter().map(|z| z * phase / r).collect();
    Ok(ProjectivePoint { coords })
}

/// Fubini-Study distance `arccos |<u, v>|` in `[0, pi/2]`.
pub fn fs_distance(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch(p.len(), q.len()));
    }
    let u = p.normalized();
    let v = q.normalized();
    let h = hermitian(&u, &v);
    let cos = h.norm();
    // |v - <u,v> u| is the sine; atan2 keeps precision near both ends.
    let sin = v
        .iter()
        .zip(&u)
        .map(|(b, a)| (b - h * a).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(sin.atan2(cos))
}

/// Point at arc-length fraction `t` of the minimizing geodesic from `p` to `q`.
///
/// The returned representative depends continuously on `t` and equals the
/// unit representative of `p` at `t = 0`.
pub fn geodesic_point(p: &ProjectivePoint, q: &ProjectivePoint, t: f64) -> Result<ProjectivePoint> {
    let d = fs_distance(p, q)?;
    if d < 1e-14 {
        return Err(Error::DegeneratePair);
    }
    if (PI / 2.0 - d).abs() < 1e-12 {
        return Err(Error::AntipodalPair);
    }
    Ok(ProjectivePoint {
        coords: geodesic_raw(&p.normalized(), &q.normalized(), d, t),
    })
}

/// Like [`geodesic_point`], but returns `p` itself for coinciding endpoints.
/// Used by cone constructions whose apex lies on the base.
pub fn geodesic_or_point(
    p: &ProjectivePoint,
    q: &ProjectivePoint,
    t: f64,
) -> Result<ProjectivePoint> {
    match geodesic_point(p, q, t) {
        Err(Error::DegeneratePair) => Ok(ProjectivePoint {
            coords: p.normalized(),
        }),
        r => r,
    }
}

fn geodesic_raw(u: &[C64], v: &[C64], d: f64, t: f64) -> Vec<C64> {
    let h = hermitian(u, v);
    let align = h.conj() / h.norm();
    let cos = h.norm();
    let sin = d.sin();
    // w: unit vector orthogonal to u in the complex span, so that
    // v * align = cos d * u + sin d * w.
    let w: Vec<C64> = v
        .iter()
        .zip(u)
        .map(|(b, a)| (b * align - a * cos) / sin)
        .collect();
    let (ct, st) = ((t * d).cos(), (t * d).sin());
    u.iter().zip(&w).map(|(a, b)| a * ct + b * st).collect()
}

/// Argument in `[0, 2 pi)`; `0` for `w = 0`.
pub fn arg0(w: C64) -> f64 {
    if w.re == 0.0 && w.im == 0.0 {
        return 0.0;
    }
    let a = w.im.atan2(w.re);
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

/// `|w|^{1/n} e^{i (arg0(w) + 2 pi j) / n}`.
pub fn nth_root_branch(w: C64, j: i64, n: u32) -> C64 {
    if w.norm_sqr() == 0.0 {
        return c(0.0, 0.0);
    }
    let nf = n as f64;
    C64::from_polar(w.norm().powf(1.0 / nf), (arg0(w) + TAU * j as f64) / nf)
}

/// Hermitian projector `z z* / <z, z>` flattened as the diagonal followed by
/// `(re, im)` of the strict upper triangle in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedVector {
    pub entries: Vec<f64>,
}

impl EmbeddedVector {
    /// Side length `N + 1` of the projector.
    pub fn size(&self) -> usize {
        (self.entries.len() as f64).sqrt().round() as usize
    }

    /// Reconstruct the full Hermitian matrix.
    pub fn to_matrix(&self) -> Vec<Vec<C64>> {
        let m = self.size();
        let mut out = vec![vec![c(0.0, 0.0); m]; m];
        for (i, row) in out.iter_mut().enumerate() {
            row[i] = c(self.entries[i], 0.0);
        }
        let mut k = m;
        #[allow(clippy::needless_range_loop)]
        for i in 0..m {
            for j in i + 1..m {
                let z = c(self.entries[k], self.entries[k + 1]);
                out[i][j] = z;
                out[j][i] = z.conj();
                k += 2;
            }
        }
        out
    }
}

pub fn embed_hermitian(p: &ProjectivePoint) -> Result<EmbeddedVector> {
    let r2: f64 = p.coords.iter().map(|z| z.norm_sqr()).sum();
    if r2 == 0.0 {
        return Err(Error::ZeroVector);
    }
    let z = &p.coords;
    let m = z.len();
    let mut entries = Vec::with_capacity(m * m);
    entries.extend(z.iter().map(|a| a.norm_sqr() / r2));
    for i in 0..m {
        for j in i + 1..m {
            let e = z[i] * z[j].conj() / r2;
            entries.push(e.re);
            entries.push(e.im);
        }
    }
    Ok(EmbeddedVector { entries })
}

/// Squared Frobenius distance between the projectors of two points.
pub fn projector_distance_sq(a: &EmbeddedVector, b: &EmbeddedVector) -> f64 {
    let (ma, mb) = (a.to_matrix(), b.to_matrix());
    ma.iter()
        .zip(&mb)
        .flat_map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| (x - y).norm_sqr()))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[(f64, f64)]) -> ProjectivePoint {
        ProjectivePoint::new(v.iter().map(|&(a, b)| c(a, b)).collect()).unwrap()
    }

    #[test]
    fn canonical_rep_examples() {
        let p = canonical_rep(&pt(&[(0.0, 0.0), (0.0, 5.0)])).unwrap();
        assert!((p.coords()[1] - c(1.0, 0.0)).norm() < 1e-15);
        let q = canonical_rep(&pt(&[(1.0, 0.0), (1.0, 0.0)])).unwrap();
        let s = 0.5f64.sqrt();
        assert!((q.coords()[0] - c(s, 0.0)).norm() < 1e-15);
        assert!((q.coords()[1] - c(s, 0.0)).norm() < 1e-15);
        assert_eq!(
            canonical_rep(&ProjectivePoint {
                coords: vec![c(0.0, 0.0); 2]
            }),
            Err(Error::ZeroVector)
        );
        assert_eq!(
            ProjectivePoint::new(vec![c(0.0, 0.0)]),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn distance_examples() {
        let a = ProjectivePoint::from_re(&[1.0, 0.0, 0.0]).unwrap();
        let b = ProjectivePoint::from_re(&[0.0, 1.0, 0.0]).unwrap();
        assert!((fs_distance(&a, &b).unwrap() - PI / 2.0).abs() < 1e-15);
        assert_eq!(fs_distance(&a, &a).unwrap(), 0.0);
        let p = ProjectivePoint::from_re(&[1.0, 0.0]).unwrap();
        let q = ProjectivePoint::from_re(&[1.0, 1.0]).unwrap();
        // direct formula arccos(1/sqrt 2)
        let direct = (1.0 / 2f64.sqrt()).acos();
        assert!((fs_distance(&p, &q).unwrap() - direct).abs() < 1e-15);
        assert!((direct - PI / 4.0).abs() < 1e-15);
        assert_eq!(fs_distance(&a, &p), Err(Error::DimensionMismatch(3, 2)));
    }

    #[test]
    fn geodesic_examples() {
        let p = ProjectivePoint::from_re(&[1.0, 0.0]).unwrap();
        let q = ProjectivePoint::from_re(&[1.0, 1.0]).unwrap();
        let m = geodesic_point(&p, &q, 0.5).unwrap();
        let expect = ProjectivePoint::from_re(&[(PI / 8.0).cos(), (PI / 8.0).sin()]).unwrap();
        assert!(fs_distance(&m, &expect).unwrap() < 1e-12);
        assert!(fs_distance(&geodesic_point(&p, &q, 0.0).unwrap(), &p).unwrap() < 1e-12);
        assert!(fs_distance(&geodesic_point(&p, &q, 1.0).unwrap(), &q).unwrap() < 1e-12);
        let r = ProjectivePoint::from_re(&[0.0, 1.0]).unwrap();
        assert_eq!(geodesic_point(&p, &r, 0.5), Err(Error::AntipodalPair));
        assert_eq!(geodesic_point(&p, &p, 0.5), Err(Error::DegeneratePair));
    }

    #[test]
    fn root_branch_examples() {
        assert!((nth_root_branch(c(1.0, 0.0), 0, 4) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((nth_root_branch(c(-1.0, 0.0), 0, 2) - c(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(nth_root_branch(c(0.0, 0.0), 3, 5), c(0.0, 0.0));
        let w = c(0.3, -1.7);
        assert!((nth_root_branch(w, 2, 3) - nth_root_branch(w, 5, 3)).norm() < 1e-14);
        assert_eq!(arg0(c(1.0, -0.0)), 0.0);
    }

    #[test]
    fn embedding_of_basis_point() {
        let e = embed_hermitian(&ProjectivePoint::from_re(&[1.0, 0.0, 0.0, 0.0]).unwrap()).unwrap();
        assert_eq!(e.entries.len(), 16);
        assert_eq!(e.entries[0], 1.0);
        assert!(e.entries[1..].iter().all(|&x| x == 0.0));
    }
}
