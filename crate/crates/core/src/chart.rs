//! Parametrized cells.

use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::label::CellLabel;
use crate::projective::{fs_distance, ProjectivePoint};

type MapFn = dyn Fn(&[f64]) -> Result<ProjectivePoint> + Send + Sync;

/// Branch data and parameter ranges recorded alongside a chart.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ChartMeta {
    /// Root-of-unity index `j` of the `n`-th root used on the chart.
    pub branch: Option<i64>,
    /// Extra sheet shift relative to the reference branch of the cell.
    pub branch_shift: Option<i64>,
    /// Sheet of a lifted chart on the Fermat surface.
    pub sheet: Option<i64>,
    /// Named parameter intervals, e.g. `("alpha", lo, hi)`.
    pub ranges: Vec<(String, f64, f64)>,
}

/// A continuous map from the unit cube `[0,1]^dim` into CP^N realizing the
/// interior of a cell. Collapsed sides are allowed (triangles and pyramids
/// are parametrized by squares and cubes).
#[derive(Clone)]
pub struct Chart {
    pub label: CellLabel,
    pub dim: usize,
    /// Domain points mapping to the vertices of the cell.
    pub corners: Vec<(Vec<f64>, CellLabel)>,
    pub meta: ChartMeta,
    map: Arc<MapFn>,
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Chart")
            .field("label", &self.label)
            .field("dim", &self.dim)
            .field("corners", &self.corners)
            .field("meta", &self.meta)
            .finish_non_exhaustive()
    }
}

impl Chart {
    pub fn new<F>(label: CellLabel, dim: usize, map: F) -> Chart
    where
        F: Fn(&[f64]) -> Result<ProjectivePoint> + Send + Sync + 'static,
    {
        Chart {
            label,
            dim,
            corners: Vec::new(),
            meta: ChartMeta::default(),
            map: Arc::new(map),
        }
    }

    pub fn with_corner(mut self, at: Vec<f64>, vertex: CellLabel) -> Chart {
        self.corners.push((at, vertex));
        self
    }

    pub fn with_meta(mut self, meta: ChartMeta) -> Chart {
        self.meta = meta;
        self
    }

    /// Evaluate at a domain point; coordinates are clamped to `[0, 1]`.
    pub fn eval(&self, x: &[f64]) -> Result<ProjectivePoint> {
        debug_assert_eq!(x.len(), self.dim);
        let y: Vec<f64> = x.iter().map(|v| v.clamp(0.0, 1.0)).collect();
        (self.map)(&y)
    }

    /// Precompose with a reparametrization of the domain.
    pub fn pullback<G>(&self, label: CellLabel, dim: usize, g: G) -> Chart
    where
        G: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        let inner = self.map.clone();
        Chart {
            label,
            dim,
            corners: Vec::new(),
            meta: self.meta.clone(),
            map: Arc::new(move |x: &[f64]| inner(&g(x))),
        }
    }

    /// Compose with a map on points, relabeling the chart. Corners are kept.
    pub fn post_compose<G>(&self, label: CellLabel, g: G) -> Chart
    where
        G: Fn(ProjectivePoint) -> Result<ProjectivePoint> + Send + Sync + 'static,
    {
        let inner = self.map.clone();
        Chart {
            label,
            dim: self.dim,
            corners: self.corners.clone(),
            meta: self.meta.clone(),
            map: Arc::new(move |x: &[f64]| g(inner(x)?)),
        }
    }

    /// Largest distance between a chart corner and the given vertex point.
    pub fn corner_error<F>(&self, mut vertex_point: F) -> Result<f64>
    where
        F: FnMut(&CellLabel) -> Result<ProjectivePoint>,
    {
        let mut worst: f64 = 0.0;
        for (at, v) in &self.corners {
            let d = fs_distance(&self.eval(at)?, &vertex_point(v)?)?;
            worst = worst.max(d);
        }
        Ok(worst)
    }
}

/// Sample a path chart at `k >= 2` evenly spaced parameters.
pub fn sample_path(chart: &Chart, k: usize) -> Result<Vec<ProjectivePoint>> {
    let k = k.max(2);
    (0..k)
        .map(|i| chart.eval(&[i as f64 / (k - 1) as f64]))
        .collect()
}

/// Reparametrize a path by Fubini-Study arclength: returns a function from
/// `[0,1]` to the original parameter, built from `samples` segments.
pub fn arclength_inverse(
    chart: &Chart,
    samples: usize,
) -> Result<impl Fn(f64) -> f64 + Send + Sync + Clone> {
    let pts = sample_path(chart, samples + 1)?;
    let mut cum = vec![0.0];
    for w in pts.windows(2) {
        let last = *cum.last().expect("nonempty");
        cum.push(last + fs_distance(&w[0], &w[1])?);
    }
    let total = *cum.last().expect("nonempty");
    let params: Vec<f64> = (0..=samples).map(|i| i as f64 / samples as f64).collect();
    Ok(move |s: f64| {
        if total == 0.0 {
            return s;
        }
        let target = s.clamp(0.0, 1.0) * total;
        let i = cum.partition_point(|&c| c < target).clamp(1, cum.len() - 1);
        let span = cum[i] - cum[i - 1];
        let f = if span > 0.0 {
            (target - cum[i - 1]) / span
        } else {
            0.0
        };
        params[i - 1] + f * (params[i] - params[i - 1])
    })
}
