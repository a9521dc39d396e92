use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tess_core::cp2::cp2_tessellation;
use tess_core::curve::{cp1_tessellation, curve_tessellation};
use tess_core::label::{CurveLabel, Side};
use tess_core::projective::{fs_distance, ProjectivePoint};
use tess_core::surface::surface_tessellation;
use tess_core::symmetry::*;
use tess_core::{CellComplex, CellLabel, Error};

fn orbit_shape(r: &OrbitReport, d: usize) -> Vec<(usize, usize)> {
    r.orbits[d]
        .iter()
        .map(|o| (o.cells.len(), o.isotropy))
        .collect()
}

#[test]
fn group_orders() {
    assert_eq!(group_elements(2, 3).unwrap().len(), 192);
    assert_eq!(group_elements(3, 2).unwrap().len(), 54);
    for n in 1..=4u32 {
        for amb in 1..=3usize {
            let g = group_elements(n, amb).unwrap();
            let fact: usize = (1..=amb + 1).product();
            assert_eq!(g.len(), fact * (n as usize).pow(amb as u32));
            let distinct: BTreeSet<_> = g.iter().collect();
            assert_eq!(distinct.len(), g.len());
        }
    }
    assert!(matches!(group_elements(0, 3), Err(Error::InvalidDegree(0))));
}

#[test]
fn group_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 5;
    let id = GroupElement::identity(4, n);
    assert!(group_elements(n, 3).unwrap().contains(&id));
    for _ in 0..100 {
        let g = random_element(&mut rng, n, 3);
        let h = random_element(&mut rng, n, 3);
        let k = random_element(&mut rng, n, 3);
        assert_eq!(g.compose(&g.inverse()), id);
        assert_eq!(g.inverse().compose(&g), id);
        assert_eq!(g.compose(&h).compose(&k), g.compose(&h.compose(&k)));
    }
}

fn random_surface_point(rng: &mut ChaCha8Rng, n: u32) -> ProjectivePoint {
    use rand::Rng;
    use tess_core::projective::{c, nth_root_branch};
    let z: Vec<_> = (0..3)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let w: tess_core::C64 = -z.iter().map(|x| x.powu(n)).sum::<tess_core::C64>();
    let mut z = z;
    z.push(nth_root_branch(w, rng.gen_range(0..n as i64), n));
    ProjectivePoint::new(z).unwrap()
}

#[test]
fn point_action_is_an_isometry_of_the_surface() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 4;
    for _ in 0..200 {
        let g = random_element(&mut rng, n, 3);
        let p = random_surface_point(&mut rng, n);
        let q = random_surface_point(&mut rng, n);
        let gp = act_on_point(&g, &p, n).unwrap();
        let gq = act_on_point(&g, &q, n).unwrap();
        assert!(gp.fermat_residual(n).norm() < 1e-12);
        let d0 = fs_distance(&p, &q).unwrap();
        assert!((fs_distance(&gp, &gq).unwrap() - d0).abs() < 1e-12);
        let h = random_element(&mut rng, n, 3);
        let a = act_on_point(&g.compose(&h), &p, n).unwrap();
        let b = act_on_point(&g, &act_on_point(&h, &p, n).unwrap(), n).unwrap();
        assert!(fs_distance(&a, &b).unwrap() < 1e-12);
    }
    let id = GroupElement::identity(4, n);
    let p = random_surface_point(&mut rng, n);
    assert_eq!(act_on_point(&id, &p, n).unwrap(), p);
    let short = ProjectivePoint::from_re(&[1.0, 0.0, 0.0]).unwrap();
    assert!(matches!(
        act_on_point(&id, &short, n),
        Err(Error::DimensionMismatch(4, 3))
    ));
}

#[test]
fn identity_acts_trivially() {
    let c = surface_tessellation(2).unwrap();
    let p = act_on_complex(&GroupElement::identity(4, 2), &c).unwrap();
    for (d, m) in p.maps.iter().enumerate() {
        assert_eq!(*m, (0..c.count(d)).collect::<Vec<_>>());
    }
}

#[test]
fn swapping_z1_and_z2_on_curve_triangles() {
    for n in 2..=5u32 {
        let c = curve_tessellation(n).unwrap();
        let g = GroupElement::new(vec![0, 2, 1], vec![0, 0, 0], n).unwrap();
        let perm = act_on_complex(&g, &c).unwrap();
        let map: std::collections::HashMap<_, _> = perm.label_map(&c).into_iter().collect();
        for j in 0..n as i64 {
            for k in 0..n as i64 {
                let from = CellLabel::Curve(CurveLabel::triangle(j - k - 1, -j - 1, Side::Next, n));
                let to = CellLabel::Curve(CurveLabel::triangle(k - j, -k - 1, Side::Same, n));
                assert_eq!(map[&from], &to, "n={n} j={j} k={k}");
            }
        }
    }
}

fn check_invariant(c: &CellComplex, group: &[GroupElement]) {
    let ctx = SymmetryContext::new(c).unwrap();
    for g in group {
        if let Err(e) = ctx.act(g) {
            panic!("{:?} n={}: {g}: {e}", c.space(), c.n());
        }
    }
}

#[test]
fn every_space_is_invariant() {
    for n in 1..=3u32 {
        check_invariant(
            &cp1_tessellation(n).unwrap(),
            &group_elements(n, 1).unwrap(),
        );
        check_invariant(
            &curve_tessellation(n).unwrap(),
            &group_elements(n, 2).unwrap(),
        );
        check_invariant(
            &cp2_tessellation(n).unwrap(),
            &group_elements(n, 2).unwrap(),
        );
        check_invariant(
            &surface_tessellation(n).unwrap(),
            &group_elements(n, 3).unwrap(),
        );
    }
}

#[test]
fn face_relations_are_preserved() {
    let c = surface_tessellation(2).unwrap();
    let ctx = SymmetryContext::new(&c).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let p = ctx.act(&random_element(&mut rng, 2, 3)).unwrap();
        for d in 1..=4 {
            for (i, cell) in c.cells(d).iter().enumerate() {
                let mut img: Vec<usize> = cell.faces.iter().map(|&f| p.image(d - 1, f)).collect();
                img.sort();
                assert_eq!(img, c.cell(d, p.image(d, i)).faces);
            }
        }
    }
}

#[test]
fn action_is_functorial() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in [1u32, 3] {
        let c = surface_tessellation(n).unwrap();
        let ctx = SymmetryContext::new(&c).unwrap();
        for _ in 0..25 {
            let g = random_element(&mut rng, n, 3);
            let h = random_element(&mut rng, n, 3);
            let gh = ctx.act(&g.compose(&h)).unwrap();
            assert_eq!(gh, ctx.act(&g).unwrap().compose(&ctx.act(&h).unwrap()));
        }
    }
}

#[test]
fn curve_triangles_form_one_orbit_with_isotropy_three() {
    for n in 1..=4u32 {
        let c = curve_tessellation(n).unwrap();
        let ctx = SymmetryContext::new(&c).unwrap();
        let r = orbit_report(&ctx, &group_elements(n, 2).unwrap()).unwrap();
        assert_eq!(orbit_shape(&r, 2), vec![(2 * (n * n) as usize, 3)], "n={n}");
    }
}

#[test]
fn surface_orbits() {
    for n in 1..=3u32 {
        let c = surface_tessellation(n).unwrap();
        let ctx = SymmetryContext::new(&c).unwrap();
        let g = group_elements(n, 3).unwrap();
        let r = orbit_report(&ctx, &g).unwrap();
        assert_eq!(
            orbit_shape(&r, 4),
            vec![(6 * (n as usize).pow(3), 4)],
            "n={n}"
        );
        assert_eq!(r.orbits[0].len(), 1, "vertices, n={n}");
        for d in 0..=4 {
            let total: usize = r.orbits[d].iter().map(|o| o.cells.len()).sum();
            assert_eq!(total, c.count(d));
            assert!(r.orbits[d]
                .iter()
                .all(|o| g.len().is_multiple_of(o.cells.len())));
        }
    }
    let c = surface_tessellation(2).unwrap();
    let r = orbit_report(
        &SymmetryContext::new(&c).unwrap(),
        &group_elements(2, 3).unwrap(),
    )
    .unwrap();
    assert_eq!(orbit_shape(&r, 0), vec![(12, 16)]);
    assert_eq!(orbit_shape(&r, 4), vec![(48, 4)]);
}

#[test]
fn deck_transformation_shifts_sheets() {
    for n in 1..=4u32 {
        let c = surface_tessellation(n).unwrap();
        let g = GroupElement::new(vec![0, 1, 2, 3], vec![0, 0, 0, 1], n).unwrap();
        let perm = act_on_complex(&g, &c).unwrap();
        for (from, to) in perm.label_map(&c) {
            let (f, t) = (from.as_surface().unwrap(), to.as_surface().unwrap());
            assert_eq!(f.base, t.base);
            match f.sheet {
                None => assert_eq!(t.sheet, None),
                Some(s) => assert_eq!(t.sheet, Some((s + 1) % n), "{from}"),
            }
        }
    }
}

#[test]
fn deck_quotient_is_the_cp2_complex() {
    for n in 2..=3u32 {
        let c = surface_tessellation(n).unwrap();
        let deck: Vec<GroupElement> = (0..n as i64)
            .map(|k| GroupElement::new(vec![0, 1, 2, 3], vec![0, 0, 0, k], n).unwrap())
            .collect();
        let r = orbit_report(&SymmetryContext::new(&c).unwrap(), &deck).unwrap();
        let cp2 = cp2_tessellation(n).unwrap();
        for d in 0..=4 {
            let mut bases = Vec::new();
            for o in &r.orbits[d] {
                let first = c.cell(d, o.cells[0]).label.as_surface().unwrap();
                let expect = if first.sheet.is_some() {
                    (n as usize, 1)
                } else {
                    (1, n as usize)
                };
                assert_eq!((o.cells.len(), o.isotropy), expect);
                bases.push(CellLabel::Cp2(first.base));
            }
            bases.sort();
            assert_eq!(bases, cp2.labels(d).cloned().collect::<Vec<_>>());
        }
    }
}

#[test]
fn mismatched_group_is_rejected() {
    let c = curve_tessellation(2).unwrap();
    let g = GroupElement::identity(4, 2);
    assert!(matches!(
        act_on_complex(&g, &c),
        Err(Error::DimensionMismatch(3, 4))
    ));
}

proptest::proptest! {
    #![proptest_config(proptest::test_runner::Config::with_cases(32))]

    #[test]
    fn random_elements_preserve_the_surface(n in 1u32..5, seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_element(&mut rng, n, 3);
        let c = surface_tessellation(n).unwrap();
        let p = act_on_complex(&g, &c).unwrap();
        for d in 0..=4 {
            let mut img: Vec<usize> = (0..c.count(d)).map(|i| p.image(d, i)).collect();
            img.sort();
            proptest::prop_assert_eq!(img, (0..c.count(d)).collect::<Vec<_>>());
        }
        let inv = act_on_complex(&g.inverse(), &c).unwrap();
        proptest::prop_assert!(p.compose(&inv).maps.iter().all(|m| m.iter().enumerate().all(|(i, &j)| i == j)));
    }
}
