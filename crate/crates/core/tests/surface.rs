use tess_core::chain::{euler_characteristic, orient_chain};
use tess_core::homology::betti_numbers;
use tess_core::label::{md, CellKind, Cp2Label, Family, SurfaceLabel};
use tess_core::surface::*;
use tess_core::CellLabel;

fn expected_counts(n: usize) -> Vec<usize> {
    vec![
        6 * n,
        12 * n * n,
        8 * n * n + 7 * n * n * n,
        12 * n * n * n,
        6 * n * n * n,
    ]
}

#[test]
fn counts_and_euler_characteristic() {
    for n in 1..=6u32 {
        let c = surface_tessellation(n).unwrap();
        let ni = n as i64;
        assert_eq!(c.counts(), expected_counts(n as usize), "n={n}");
        assert_eq!(
            euler_characteristic(&c),
            6 * ni - 4 * ni * ni + ni * ni * ni
        );
    }
    assert_eq!(
        surface_tessellation(2).unwrap().counts(),
        vec![12, 48, 88, 96, 48]
    );
    assert_eq!(euler_characteristic(&surface_tessellation(4).unwrap()), 24);
}

#[test]
fn two_cells_at_degree_four() {
    let c = surface_tessellation(4).unwrap();
    let quads = c.labels(2).filter(|l| l.kind() == CellKind::Quad).count();
    assert_eq!((quads, c.count(2) - quads), (192, 384));
}

#[test]
fn homology() {
    for n in 1..=4u32 {
        let ch = orient_chain(&surface_tessellation(n).unwrap()).unwrap();
        assert!(ch.is_chain_complex());
        let h = betti_numbers(&ch);
        let ni = n as usize;
        let b2 = 6 * ni + ni * ni * ni - 4 * ni * ni - 2;
        assert_eq!(h.betti, vec![1, 0, b2, 0, 1], "n={n}");
        assert!(h.torsion_free());
    }
}

#[test]
fn degree_four_middle_betti_number() {
    let ch = orient_chain(&surface_tessellation(4).unwrap()).unwrap();
    assert_eq!(betti_numbers(&ch).betti, vec![1, 0, 22, 0, 1]);
}

#[test]
fn structure_report_passes() {
    for n in 1..=5u32 {
        let c = surface_tessellation(n).unwrap();
        let r = verify_surface_structure(&c, n);
        assert!(r.passed(), "n={n}\n{r}");
    }
}

#[test]
fn e_edge_sheet_change_is_minus_k() {
    for n in 1..=6u32 {
        for m in 0..3u8 {
            for k in 0..n {
                assert_eq!(
                    e_edge_transition(m, k, n).unwrap(),
                    md(-(k as i64), n) as i64,
                    "n={n} m={m} k={k}"
                );
            }
        }
    }
}

#[test]
fn branch_faces_have_no_offset() {
    let n = 3;
    let b = Cp2Label::Curve(tess_core::label::CurveLabel::triangle(
        0,
        1,
        tess_core::label::Side::Same,
        n,
    ));
    let cp2 = tess_core::cp2::cp2_tessellation(n).unwrap();
    let (d, i) = cp2
        .cells(3)
        .iter()
        .enumerate()
        .find_map(|(i, c)| {
            let faces: Vec<_> = c
                .faces
                .iter()
                .map(|&f| cp2.cell(2, f).label.clone())
                .collect();
            faces.contains(&CellLabel::Cp2(b)).then_some((3, i))
        })
        .unwrap();
    let CellLabel::Cp2(pyr) = cp2.cell(d, i).label else {
        panic!()
    };
    assert_eq!(lift_branch_transition(&pyr, &b, n).unwrap(), 0);
    assert!(lift_branch_transition(&b, &pyr, n).is_err());
}

#[test]
fn lifted_e_edges_change_sheet_by_k() {
    for n in 1..=5u32 {
        let c = surface_tessellation(n).unwrap();
        for (i, cell) in c.cells(1).iter().enumerate() {
            let l = cell.label.as_surface().unwrap();
            let Cp2Label::EEdge { line, k } = l.base else {
                continue;
            };
            let (p, q) = Family::corners_on_line(line);
            let sheet_of = |f: Family| {
                c.vertices_of(1, i)
                    .into_iter()
                    .map(|v| *c.cell(0, v).label.as_surface().unwrap())
                    .find(|v| v.base == Cp2Label::Corner(f))
                    .unwrap()
                    .sheet
                    .unwrap() as i64
            };
            assert_eq!(md(sheet_of(p) - sheet_of(q), n), k, "{l}");
        }
    }
}

#[test]
fn congruence_lists_by_hand() {
    // n = 2, rectangles with opposite sides on z0 = 0 and z1 = 0
    let n = 2;
    let rects = enumerate_surface_cells(n, 2).unwrap().unwrap();
    let p = |a, b, k| PVertex::new(a, b, k, n);
    let mut want = vec![p(0, 2, 1), p(0, 3, 1), p(1, 3, 0), p(1, 2, 0)];
    want.sort();
    assert!(rects.contains(&want));
    let mut not = vec![p(0, 2, 1), p(0, 3, 1), p(1, 3, 0), p(1, 2, 1)];
    not.sort();
    assert!(!rects.contains(&not));
    // planar triangles on z0 = 0: i - j + k = 0 or -1
    let mut t = vec![p(0, 1, 0), p(0, 2, 1), p(0, 3, 0)];
    t.sort();
    assert!(rects.contains(&t));
    let p3 = |a, b, k| PVertex::new(a, b, k, 3);
    let tris = enumerate_surface_cells(3, 2).unwrap().unwrap();
    let mut t = vec![p3(0, 1, 1), p3(0, 2, 0), p3(0, 3, 0)];
    t.sort();
    assert!(!tris.contains(&t));
    let mut t = vec![p3(0, 1, 2), p3(0, 2, 0), p3(0, 3, 0)];
    t.sort();
    assert!(tris.contains(&t));
    assert_eq!(enumerate_surface_cells(n, 1).unwrap().unwrap().len(), 48);
    assert_eq!(enumerate_surface_cells(n, 3).unwrap(), None);
}

#[test]
fn vertex_points_lie_on_the_surface() {
    for n in 1..=5u32 {
        let c = surface_tessellation(n).unwrap();
        for l in c.labels(0) {
            let p = surface_vertex_point(l.as_surface().unwrap(), n).unwrap();
            assert!(p.fermat_residual(n).norm() < 1e-12, "{l}");
        }
    }
}

#[test]
fn invalid_degree() {
    assert!(matches!(
        surface_tessellation(0),
        Err(tess_core::Error::InvalidDegree(0))
    ));
}

mod charts {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use tess_core::cp2_chart::cp2_cell_chart;
    use tess_core::projective::{fs_distance, root_of_unity};
    use tess_core::ProjectivePoint;

    fn lifted_labels(n: u32, d: usize) -> Vec<SurfaceLabel> {
        surface_tessellation(n)
            .unwrap()
            .labels(d)
            .map(|l| *l.as_surface().unwrap())
            .collect()
    }

    fn vertex(l: &CellLabel, n: u32) -> tess_core::Result<ProjectivePoint> {
        surface_vertex_point(l.as_surface().unwrap(), n)
    }

    #[test]
    fn corners_hit_vertices() {
        for n in 2..=4u32 {
            for d in 0..=3 {
                for l in lifted_labels(n, d) {
                    let ch = surface_cell_chart(&l, n).unwrap();
                    let err = ch.corner_error(|v| vertex(v, n)).unwrap();
                    assert!(err < 1e-8, "{l}: {err}");
                }
            }
        }
    }

    #[test]
    fn residual_and_projection() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=4u32 {
            for d in 1..=3 {
                for l in lifted_labels(n, d)
                    .into_iter()
                    .step_by(if n > 2 { 5 } else { 1 })
                {
                    let Ok(ch) = surface_cell_chart(&l, n) else {
                        assert!(n == 1, "{l}");
                        continue;
                    };
                    let base = cp2_cell_chart(&l.base, n).unwrap();
                    for _ in 0..8 {
                        let x: Vec<f64> = (0..d).map(|_| rng.gen::<f64>()).collect();
                        let Ok(p) = ch.eval(&x) else { continue };
                        assert!(p.fermat_residual(n).norm() < 1e-9, "{l} at {x:?}");
                        let q = p.truncate_last().unwrap();
                        let b = base.eval(&x).unwrap();
                        assert!(fs_distance(&q, &b).unwrap() < 1e-12, "{l}");
                    }
                }
            }
        }
    }

    #[test]
    fn deck_transformation_shifts_the_sheet() {
        let n = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 1..=3 {
            for l in lifted_labels(n, d)
                .into_iter()
                .filter(|l| l.sheet == Some(0))
                .step_by(2)
            {
                let ch0 = surface_cell_chart(&l, n).unwrap();
                let next = SurfaceLabel {
                    sheet: Some(1),
                    ..l
                };
                let ch1 = surface_cell_chart(&next, n).unwrap();
                for _ in 0..5 {
                    let x: Vec<f64> = (0..d).map(|_| rng.gen::<f64>()).collect();
                    let p = ch0.eval(&x).unwrap();
                    let mut z = p.coords().to_vec();
                    z[3] *= root_of_unity(1, n);
                    let moved = ProjectivePoint::new(z).unwrap();
                    assert!(
                        fs_distance(&moved, &ch1.eval(&x).unwrap()).unwrap() < 1e-9,
                        "{l}"
                    );
                }
            }
        }
    }

    #[test]
    fn branch_cells_sit_in_the_hyperplane() {
        let n = 3;
        for d in 0..=2 {
            for l in lifted_labels(n, d)
                .into_iter()
                .filter(|l| l.sheet.is_none())
            {
                let ch = surface_cell_chart(&l, n).unwrap();
                let x = vec![0.37; d];
                assert_eq!(ch.eval(&x).unwrap().coords()[3].norm(), 0.0);
            }
        }
    }

    #[test]
    fn four_cells_have_no_chart() {
        let l = lifted_labels(2, 4)[0];
        assert!(matches!(
            surface_cell_chart(&l, 2),
            Err(tess_core::Error::ChartUnavailable(_))
        ));
    }
}
