//! Closed-form expectations and the combined validator for every space.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::{
    euler_characteristic, orient_chain, validate_incidence, CellComplex, IncidenceRule, SpaceTag,
};
use crate::cp2::verify_cp2_structure;
use crate::error::Error;
use crate::label::CellKind;
use crate::realize::{cell_chart, vertex_point};
use crate::report::ValidationReport;
use crate::surface::{surface_counts, surface_euler, verify_surface_structure};

pub fn expected_counts(space: SpaceTag, n: u32) -> Vec<usize> {
    let n = n as usize;
    match space {
        SpaceTag::Cp1 => vec![n + 2, 3 * n, 2 * n],
        SpaceTag::Curve => vec![3 * n, 3 * n * n, 2 * n * n],
        SpaceTag::Cp2 => vec![
            3 * n + 3,
            3 * n * n + 9 * n,
            9 * n * n + 6 * n,
            12 * n * n,
            6 * n * n,
        ],
        SpaceTag::Surface => surface_counts(n as u32),
    }
}

pub fn expected_euler(space: SpaceTag, n: u32) -> i64 {
    let m = n as i64;
    match space {
        SpaceTag::Cp1 => 2,
        SpaceTag::Curve => 3 * m - m * m,
        SpaceTag::Cp2 => 3,
        SpaceTag::Surface => surface_euler(n),
    }
}

/// Residual of the defining equation, when the space has one.
fn on_variety(space: SpaceTag, p: &crate::ProjectivePoint, n: u32) -> Option<f64> {
    match space {
        SpaceTag::Curve | SpaceTag::Surface => Some(p.fermat_residual(n).norm()),
        _ => None,
    }
}

/// Every validator that applies to the complex's space.
pub fn verify_complex(complex: &CellComplex) -> ValidationReport {
    let n = complex.n();
    let space = complex.space();
    let mut r = ValidationReport::new();
    r.assert(
        "cell counts",
        complex.counts() == expected_counts(space, n),
        format!(
            "{:?}, expected {:?}",
            complex.counts(),
            expected_counts(space, n)
        ),
    );
    let chi = euler_characteristic(complex);
    r.assert(
        "euler characteristic",
        chi == expected_euler(space, n),
        format!("{chi}, expected {}", expected_euler(space, n)),
    );
    match orient_chain(complex) {
        Ok(ch) => r.assert(
            "boundary of boundary",
            ch.is_chain_complex(),
            "D_d D_{d+1} = 0",
        ),
        Err(e) => r.push("boundary of boundary", vec![e.to_string()], "orientation"),
    }
    let top = complex.top_dim();
    if top >= 1 {
        r.extend(validate_incidence(
            complex,
            &[IncidenceRule::new(
                format!("{}-cells in two {top}-cells", top - 1),
                top - 1,
                2,
            )],
        ));
    }
    match space {
        SpaceTag::Curve => r.extend(validate_incidence(
            complex,
            &[IncidenceRule::new("triangle sides", 1, 2).faces_of_kind(CellKind::CurveEdge)],
        )),
        SpaceTag::Cp2 => r.extend(verify_cp2_structure(complex, n)),
        SpaceTag::Surface => r.extend(verify_surface_structure(complex, n)),
        SpaceTag::Cp1 => {}
    }
    let mut off = Vec::new();
    for l in complex.labels(0) {
        match vertex_point(l, n) {
            Ok(p) => {
                if let Some(res) = on_variety(space, &p, n) {
                    if res > 1e-12 {
                        off.push(format!("{l}: residual {res:e}"));
                    }
                }
            }
            Err(e) => off.push(format!("{l}: {e}")),
        }
    }
    r.push("vertex coordinates", off, "");
    r
}

/// Evaluate `samples` random charts at random points: finite, on the
/// variety within `1e-9`, and corners within `1e-8` of their vertices.
/// At n = 1 two failures are counted and skipped rather than reported:
/// degenerate geodesics in the B-pyramid charts, and lifted B-pyramid
/// charts whose interior meets the branch line.
pub fn spot_check_charts(complex: &CellComplex, seed: u64, samples: usize) -> ValidationReport {
    let n = complex.n();
    let space = complex.space();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims: Vec<usize> = (1..=complex.top_dim().min(3))
        .filter(|&d| complex.count(d) > 0)
        .collect();
    let mut bad = Vec::new();
    let mut skipped = 0;
    let mut worst_corner: f64 = 0.0;
    for _ in 0..samples {
        let d = dims[rng.gen_range(0..dims.len())];
        let i = rng.gen_range(0..complex.count(d));
        let label = &complex.cell(d, i).label;
        let chart = match cell_chart(label, n) {
            Ok(c) => c,
            Err(Error::AntipodalPair | Error::DegeneratePair) if n == 1 => {
                skipped += 1;
                continue;
            }
            Err(e) => {
                bad.push(format!("{label}: {e}"));
                continue;
            }
        };
        let x: Vec<f64> = (0..d).map(|_| rng.gen::<f64>()).collect();
        match chart.eval(&x) {
            Ok(p) => {
                if p.coords()
                    .iter()
                    .any(|z| !z.re.is_finite() || !z.im.is_finite())
                {
                    bad.push(format!("{label} at {x:?}: not finite"));
                } else if let Some(res) = on_variety(space, &p, n) {
                    if res > 1e-9 {
                        bad.push(format!("{label} at {x:?}: residual {res:e}"));
                    }
                }
            }
            Err(Error::AntipodalPair | Error::DegeneratePair | Error::PathHitsBranchLocus(_))
                if n == 1 =>
            {
                skipped += 1
            }
            Err(e) => bad.push(format!("{label} at {x:?}: {e}")),
        }
        match chart.corner_error(|v| vertex_point(v, n)) {
            Ok(err) => {
                worst_corner = worst_corner.max(err);
                if err > 1e-8 {
                    bad.push(format!("{label}: corner error {err:e}"));
                }
            }
            Err(Error::AntipodalPair | Error::DegeneratePair) if n == 1 => {}
            Err(e) => bad.push(format!("{label}: {e}")),
        }
    }
    let mut r = ValidationReport::new();
    r.push(
        "chart spot checks",
        bad,
        format!("{samples} samples, seed {seed}, {skipped} skipped, worst corner error {worst_corner:.1e}"),
    );
    r
}
