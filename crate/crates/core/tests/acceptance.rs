//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion does.
//!
//! `cargo test -p tess-core --test acceptance`

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tess_core::chain::euler_characteristic;
use tess_core::cp2::cp2_tessellation;
use tess_core::cp2_chart::{w_cell_locate, w_cells_containing};
use tess_core::curve::{cp1_tessellation, curve_tessellation};
use tess_core::export::*;
use tess_core::homology::betti_numbers;
use tess_core::projective::{c, ProjectivePoint};
use tess_core::surface::{enumerate_surface_cells, surface_tessellation, surface_vertex_sets};
use tess_core::symmetry::{group_elements, orbit_report, random_element, SymmetryContext};
use tess_core::verify::{spot_check_charts, verify_complex};
use tess_core::{orient_chain, CellComplex, Result, SpaceTag};

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn build(space: SpaceTag, n: u32) -> Result<CellComplex> {
    match space {
        SpaceTag::Cp1 => cp1_tessellation(n),
        SpaceTag::Curve => curve_tessellation(n),
        SpaceTag::Cp2 => cp2_tessellation(n),
        SpaceTag::Surface => surface_tessellation(n),
    }
}

const SPACES: [SpaceTag; 4] = [
    SpaceTag::Cp1,
    SpaceTag::Curve,
    SpaceTag::Cp2,
    SpaceTag::Surface,
];

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn closed_form(space: SpaceTag, n: u32) -> Vec<usize> {
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
        SpaceTag::Surface => vec![
            6 * n,
            12 * n * n,
            8 * n * n + 7 * n * n * n,
            12 * n * n * n,
            6 * n * n * n,
        ],
    }
}

fn counts() -> Outcome {
    let t = Instant::now();
    for n in 1..=6 {
        for space in SPACES {
            let cx = build(space, n).map_err(|e| e.to_string())?;
            ensure!(
                cx.counts() == closed_form(space, n),
                "{space:?} n={n}: {:?}",
                cx.counts()
            );
            if space == SpaceTag::Surface {
                let quads = cx.cells(2).iter().filter(|c| c.faces.len() == 4).count();
                let tris = cx.cells(2).iter().filter(|c| c.faces.len() == 3).count();
                let m = n as usize;
                ensure!(
                    quads == 3 * m.pow(3) && tris == 8 * m * m + 4 * m.pow(3),
                    "n={n}: {quads} quads, {tris} triangles"
                );
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    ensure!(secs < 30.0, "took {secs:.1}s");
    Ok(format!("n=1..6, all spaces, {secs:.1}s"))
}

fn euler() -> Outcome {
    for n in 1..=6u32 {
        let m = n as i64;
        let want = [2, 3 * m - m * m, 3, 6 * m - 4 * m * m + m * m * m];
        for (space, w) in SPACES.into_iter().zip(want) {
            let chi = euler_characteristic(&build(space, n).map_err(|e| e.to_string())?);
            ensure!(chi == w, "{space:?} n={n}: chi {chi}, expected {w}");
        }
    }
    let k3 = euler_characteristic(&surface_tessellation(4).unwrap());
    ensure!(k3 == 24, "n=4 surface chi {k3}");
    Ok("n=1..6; quartic surface chi 24".into())
}

fn chain_validity() -> Outcome {
    for n in 1..=4 {
        for space in SPACES {
            let ch = orient_chain(&build(space, n).unwrap())
                .map_err(|e| format!("{space:?} n={n}: {e}"))?;
            ensure!(ch.is_chain_complex(), "{space:?} n={n}: D.D != 0");
        }
    }
    Ok("D.D = 0 for all spaces, n=1..4".into())
}

fn homology() -> Outcome {
    let betti = |cx: &CellComplex| -> std::result::Result<Vec<usize>, String> {
        let h = betti_numbers(&orient_chain(cx).map_err(|e| e.to_string())?);
        if !h.torsion_free() {
            return Err(format!(
                "{:?} n={}: torsion {:?}",
                cx.space(),
                cx.n(),
                h.torsion
            ));
        }
        Ok(h.betti)
    };
    for n in 1..=5usize {
        let b = betti(&curve_tessellation(n as u32).unwrap())?;
        let genus2 = ((n as i64 - 1) * (n as i64 - 2)) as usize;
        ensure!(b == [1, genus2, 1], "curve n={n}: {b:?}");
    }
    for n in 1..=3 {
        let b = betti(&cp2_tessellation(n).unwrap())?;
        ensure!(b == [1, 0, 1, 0, 1], "CP2 n={n}: {b:?}");
    }
    let mut k3_secs = 0.0;
    for n in 1..=4u32 {
        let cx = surface_tessellation(n).unwrap();
        let t = Instant::now();
        let b = betti(&cx)?;
        let mid = (euler_characteristic(&cx) - 2) as usize;
        ensure!(b == [1, 0, mid, 0, 1], "surface n={n}: {b:?}");
        if n == 4 {
            k3_secs = t.elapsed().as_secs_f64();
        }
    }
    ensure!(k3_secs < 60.0, "quartic homology took {k3_secs:.1}s");
    Ok(format!(
        "torsion-free; quartic (1,0,22,0,1) in {k3_secs:.1}s"
    ))
}

fn incidence() -> Outcome {
    let mut checks = 0;
    for n in 1..=4 {
        for space in [SpaceTag::Curve, SpaceTag::Cp2, SpaceTag::Surface] {
            let r = verify_complex(&build(space, n).unwrap());
            if let Some(f) = r.failures().next() {
                return Err(format!(
                    "{space:?} n={n}: {} {:?}",
                    f.name,
                    f.offenders.first()
                ));
            }
            checks += r.checks.len();
        }
    }
    Ok(format!("exhaustive for n=1..4, {checks} checks"))
}

fn symmetry() -> Outcome {
    let mut acted = 0;
    for n in 2..=4u32 {
        let cx = surface_tessellation(n).unwrap();
        let ctx = SymmetryContext::new(&cx).map_err(|e| e.to_string())?;
        let group = if n == 4 {
            let mut rng = ChaCha8Rng::seed_from_u64(4);
            (0..500).map(|_| random_element(&mut rng, n, 3)).collect()
        } else {
            group_elements(n, 3).unwrap()
        };
        for g in &group {
            ctx.act(g).map_err(|e| format!("n={n} {g}: {e}"))?;
        }
        acted += group.len();
        {
            let full = if n == 4 {
                group_elements(n, 3).unwrap()
            } else {
                group
            };
            let r = orbit_report(&ctx, &full).map_err(|e| e.to_string())?;
            let top: Vec<_> = r.orbits[4]
                .iter()
                .map(|o| (o.cells.len(), o.isotropy))
                .collect();
            ensure!(
                top == [(6 * (n as usize).pow(3), 4)],
                "n={n}: 4-cell orbits {top:?}"
            );
        }
    }
    for n in 1..=4u32 {
        let cx = curve_tessellation(n).unwrap();
        let r = orbit_report(
            &SymmetryContext::new(&cx).unwrap(),
            &group_elements(n, 2).unwrap(),
        )
        .map_err(|e| e.to_string())?;
        ensure!(
            r.orbits[2].iter().all(|o| o.isotropy == 3),
            "curve n={n}: triangle isotropy"
        );
    }
    Ok(format!(
        "{acted} elements, zero mismatches; 4-cell orbit 6n^3 with isotropy 4"
    ))
}

fn random_cp2_point(rng: &mut ChaCha8Rng) -> ProjectivePoint {
    let z: Vec<_> = (0..3)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    ProjectivePoint::new(z).unwrap()
}

/// At n = 1 the B-pyramid charts cross the branch line, so the chart
/// residuals are sampled at n = 2..4.
fn geometry() -> Outcome {
    let mut worst = String::new();
    for n in 2..=4 {
        for space in SPACES {
            let r = spot_check_charts(&build(space, n).unwrap(), 7 + n as u64, 10_000);
            if let Some(f) = r.failures().next() {
                return Err(format!("{space:?} n={n}: {:?}", f.offenders.first()));
            }
            if space == SpaceTag::Surface && n == 4 {
                worst = r.checks[0].detail.clone();
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [2u32, 4] {
        for _ in 0..10_000 {
            let p = random_cp2_point(&mut rng);
            let found = w_cells_containing(&p, n, 0.0);
            ensure!(found.len() == 1, "n={n}: {p:?} in {found:?}");
            ensure!(
                w_cell_locate(&p, n) == Some(found[0]),
                "n={n}: locate disagrees at {p:?}"
            );
        }
    }
    Ok(format!(
        "10^4 samples per space at n=2..4 (quartic: {worst}); 2x10^4 W-cell locations"
    ))
}

fn cross_derivation() -> Outcome {
    for n in 1..=4 {
        let cx = surface_tessellation(n).unwrap();
        for d in 0..=2 {
            let mut lifted = surface_vertex_sets(&cx, d).map_err(|e| e.to_string())?;
            let mut listed = enumerate_surface_cells(n, d)
                .map_err(|e| e.to_string())?
                .unwrap();
            lifted.sort();
            listed.sort();
            ensure!(
                lifted == listed,
                "n={n} dim {d}: {} lifted vs {} listed",
                lifted.len(),
                listed.len()
            );
            // label sets too, so the doubled lists at n = 1 are not hidden
            let a: BTreeSet<_> = lifted.iter().collect();
            let b: BTreeSet<_> = listed.iter().collect();
            ensure!(a == b, "n={n} dim {d}: symmetric difference");
        }
    }
    Ok("dims 0-2 agree for n=1..4".into())
}

fn round_trips() -> Outcome {
    for n in 1..=3 {
        for space in SPACES {
            let cx = build(space, n).unwrap();
            let text = serialize_complex(&cx);
            let back = parse_complex(&text).map_err(|e| format!("{space:?} n={n}: {e}"))?;
            ensure!(
                back == cx && serialize_complex(&back) == text,
                "{space:?} n={n}: text round-trip"
            );
            let proj = ProjectionSpec::principal(&cx).map_err(|e| e.to_string())?;
            let opts = ExportOptions {
                samples_per_edge: 6,
                facet_grid: Some(3),
            };
            let mesh =
                export_mesh(&cx, &opts, &proj, &Selection::AllEdges).map_err(|e| e.to_string())?;
            let off = parse_off(&write_off(&mesh)).map_err(|e| e.to_string())?;
            ensure!(
                off.points.len() == mesh.points.len()
                    && off.segments() == mesh.segment_count()
                    && off.polygons() == mesh.polygons.len(),
                "{space:?} n={n}: OFF round-trip"
            );
            let drift = off
                .points
                .iter()
                .zip(&mesh.points)
                .flat_map(|(a, b)| (0..3).map(move |k| (a[k] - b[k]).abs()))
                .fold(0.0, f64::max);
            ensure!(
                drift < 1e-11,
                "{space:?} n={n}: OFF coordinates drift {drift:e}"
            );
        }
    }
    Ok("text and OFF, all spaces, n=1..3".into())
}

fn quartic_wireframe() -> Outcome {
    let cx = surface_tessellation(4).unwrap();
    let proj = ProjectionSpec::principal(&cx).map_err(|e| e.to_string())?;
    let opts = ExportOptions {
        samples_per_edge: 8,
        facet_grid: None,
    };
    let mesh = export_mesh(&cx, &opts, &proj, &Selection::Dim(4)).map_err(|e| e.to_string())?;
    let mut per_cell: BTreeMap<_, usize> = BTreeMap::new();
    for p in &mesh.polyline_provenance {
        *per_cell.entry(&p.cell).or_default() += 1;
    }
    ensure!(per_cell.len() == 384, "{} four-cells", per_cell.len());
    ensure!(
        per_cell.values().all(|&k| k == 12),
        "a 4-cell without 12 edges"
    );
    ensure!(
        mesh.polylines.len() == 384 * 12,
        "{} polylines",
        mesh.polylines.len()
    );
    let edges = mesh.distinct_polyline_primitives();
    ensure!(edges == 192, "{edges} distinct edges");
    ensure!(mesh.check_indices(), "dangling indices");
    Ok(format!(
        "{} polylines from 384 four-cells over 192 edges",
        mesh.polylines.len()
    ))
}

/// Written to the stdout handle directly so the lines survive output capture.
fn report(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("1 count tables", counts),
        ("2 euler characteristics", euler),
        ("3 chain validity", chain_validity),
        ("4 homology", homology),
        ("5 incidence", incidence),
        ("6 symmetry", symmetry),
        ("7 geometry residuals", geometry),
        ("8 cross-derivation", cross_derivation),
        ("9 round-trips", round_trips),
        ("10 quartic wireframe", quartic_wireframe),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let t = Instant::now();
        match f() {
            Ok(msg) => report(&format!(
                "PASS {name}: {msg} [{:.1}s]",
                t.elapsed().as_secs_f64()
            )),
            Err(msg) => {
                report(&format!("FAIL {name}: {msg}"));
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
