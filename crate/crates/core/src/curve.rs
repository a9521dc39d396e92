//! The CP^1 tessellation and its lift to the Fermat curve `S_n`.
//!
//! CP^1 carries the poles `p0 = [0,1]`, `p1 = [1,0]` and the roots
//! `p_k = [1, w_k]` of `z^n = -1`, where `w_k = e^{i pi (2k+1)/n}`. Its
//! triangles are the lunes between the meridians `e_k` (phase `2 pi k/n`)
//! and the root meridians. The curve `z_0^n + z_1^n + z_2^n = 0` covers
//! CP^1 through `[z_0, z_1]`, branched over the roots.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use crate::chain::{build_complex, CellComplex, CellTable, SpaceTag};
use crate::chart::{Chart, ChartMeta};
use crate::error::{Error, Result};
use crate::label::{md, CellLabel, Cp1Label, CurveLabel, Family, Idx, Side};
use crate::projective::{
    c, cis, nth_root_branch, root_of_minus_one, root_of_unity, ProjectivePoint, C64,
};

fn check_degree(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidDegree(0))
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// CP^1

pub fn cp1_tessellation(n: u32) -> Result<CellComplex> {
    check_degree(n)?;
    let l = CellLabel::Cp1;
    let mut table: CellTable = vec![Vec::new(); 3];
    table[0].push((l(Cp1Label::Pole(0)), vec![]));
    table[0].push((l(Cp1Label::Pole(1)), vec![]));
    for k in 0..n {
        table[0].push((l(Cp1Label::Root(k)), vec![]));
        table[1].push((
            l(Cp1Label::EEdge(k)),
            vec![l(Cp1Label::Pole(0)), l(Cp1Label::Pole(1))],
        ));
        for pole in 0..2 {
            table[1].push((
                l(Cp1Label::PoleRoot { pole, k }),
                vec![l(Cp1Label::Pole(pole)), l(Cp1Label::Root(k))],
            ));
        }
        for side in [Side::Same, Side::Next] {
            table[2].push((
                l(Cp1Label::Triangle { k, side }),
                vec![
                    l(Cp1Label::EEdge(md(k as i64 + side.offset(), n))),
                    l(Cp1Label::PoleRoot { pole: 0, k }),
                    l(Cp1Label::PoleRoot { pole: 1, k }),
                ],
            ));
        }
    }
    build_complex(n, SpaceTag::Cp1, table)
}

pub fn cp1_vertex_point(label: &Cp1Label, n: u32) -> Result<ProjectivePoint> {
    let coords = match *label {
        Cp1Label::Pole(0) => vec![c(0.0, 0.0), c(1.0, 0.0)],
        Cp1Label::Pole(_) => vec![c(1.0, 0.0), c(0.0, 0.0)],
        Cp1Label::Root(k) => vec![c(1.0, 0.0), root_of_minus_one(k as i64, n)],
        _ => return Err(Error::UnknownLabel(label.to_string())),
    };
    ProjectivePoint::new(coords)
}

/// Lune coordinates on the unit square: `x` runs from `p1` (`x = 0`) to
/// `p0` (`x = 1`) with the root at `x = 1/2`; `y = 1` is the root meridian
/// and `y = 0` the bounding e-meridian. Returns `(delta, psi)` where the
/// polar angle is `pi/4 - delta` and `psi` is the phase offset from the root
/// meridian, so both vanish exactly at the root.
fn lune_coords(x: &[f64], side: Side, n: u32) -> (f64, f64) {
    let delta = (0.5 - x[0]) * FRAC_PI_2;
    let span = PI / n as f64;
    let psi = match side {
        Side::Same => -(1.0 - x[1]) * span,
        Side::Next => (1.0 - x[1]) * span,
    };
    (delta, psi)
}

pub fn cp1_chart(label: &Cp1Label, n: u32) -> Result<Chart> {
    check_degree(n)?;
    let cl = CellLabel::Cp1(*label);
    let v = |l: Cp1Label| CellLabel::Cp1(l);
    let chart = match *label {
        Cp1Label::EEdge(k) => {
            let ph = root_of_unity(k as i64, n);
            Chart::new(cl, 1, move |x| {
                let t = x[0] * FRAC_PI_2;
                ProjectivePoint::new(vec![c(t.cos(), 0.0), ph * t.sin()])
            })
            .with_corner(vec![0.0], v(Cp1Label::Pole(1)))
            .with_corner(vec![1.0], v(Cp1Label::Pole(0)))
        }
        Cp1Label::PoleRoot { pole, k } => {
            let w = root_of_minus_one(k as i64, n);
            Chart::new(cl, 1, move |x| {
                let u = x[0] * FRAC_PI_4;
                let coords = if pole == 0 {
                    vec![c(u.sin(), 0.0), w * u.cos()]
                } else {
                    vec![c(u.cos(), 0.0), w * u.sin()]
                };
                ProjectivePoint::new(coords)
            })
            .with_corner(vec![0.0], v(Cp1Label::Pole(pole)))
            .with_corner(vec![1.0], v(Cp1Label::Root(k)))
        }
        Cp1Label::Triangle { k, side } => {
            let mid = PI * (2 * k + 1) as f64 / n as f64;
            Chart::new(cl, 2, move |x| {
                let (delta, psi) = lune_coords(x, side, n);
                let th = FRAC_PI_4 - delta;
                ProjectivePoint::new(vec![c(th.cos(), 0.0), cis(mid + psi) * th.sin()])
            })
            .with_corner(vec![0.0, 0.0], v(Cp1Label::Pole(1)))
            .with_corner(vec![1.0, 0.0], v(Cp1Label::Pole(0)))
            .with_corner(vec![0.5, 1.0], v(Cp1Label::Root(k)))
        }
        _ => return Err(Error::ChartUnavailable(label.to_string())),
    };
    Ok(chart)
}

// ---------------------------------------------------------------------------
// The curve

fn curve_edge(family: Family, a: i64, b: i64, n: u32) -> CurveLabel {
    CurveLabel::Edge {
        family,
        a: md(a, n),
        b: md(b, n),
    }
}

/// Faces of a curve cell, in the order edges `01, 12, 20` for triangles and
/// `(pX, pY)` for edges.
pub fn curve_faces(label: &CurveLabel, n: u32) -> Vec<CurveLabel> {
    match *label {
        CurveLabel::Vertex { .. } => Vec::new(),
        CurveLabel::Edge { family, a, b } => vec![
            CurveLabel::Vertex {
                family: family.x(),
                k: a,
            },
            CurveLabel::Vertex {
                family: family.y(),
                k: b,
            },
        ],
        CurveLabel::Triangle {
            idx: [a, b, cc], ..
        } => vec![
            curve_edge(Family::F01, a as i64, b as i64, n),
            curve_edge(Family::F12, b as i64, cc as i64, n),
            curve_edge(Family::F20, cc as i64, a as i64, n),
        ],
    }
}

/// All curve cells of one dimension in canonical order.
pub fn curve_cells(dim: usize, n: u32) -> Vec<CurveLabel> {
    let n64 = n as i64;
    let mut out = Vec::new();
    match dim {
        0 => {
            for family in 0..3 {
                for k in 0..n {
                    out.push(CurveLabel::Vertex { family, k });
                }
            }
        }
        1 => {
            for family in Family::ALL {
                for a in 0..n64 {
                    for b in 0..n64 {
                        out.push(curve_edge(family, a, b, n));
                    }
                }
            }
        }
        2 => {
            for a in 0..n64 {
                for b in 0..n64 {
                    for side in [Side::Same, Side::Next] {
                        out.push(CurveLabel::triangle(a, b, side, n));
                    }
                }
            }
        }
        _ => {}
    }
    out.sort();
    out
}

pub fn curve_tessellation(n: u32) -> Result<CellComplex> {
    check_degree(n)?;
    let table: CellTable = (0..3)
        .map(|d| {
            curve_cells(d, n)
                .into_iter()
                .map(|l| {
                    let faces = curve_faces(&l, n)
                        .into_iter()
                        .map(CellLabel::Curve)
                        .collect();
                    (CellLabel::Curve(l), faces)
                })
                .collect()
        })
        .collect();
    build_complex(n, SpaceTag::Curve, table)
}

/// `p0_k = [0, 1, w_k]`, `p1_k = [w_k, 0, 1]`, `p2_k = [1, w_k, 0]`.
pub fn curve_vertex_point(label: &CurveLabel, n: u32) -> Result<ProjectivePoint> {
    let CurveLabel::Vertex { family, k } = *label else {
        return Err(Error::UnknownLabel(label.to_string()));
    };
    let w = root_of_minus_one(k as i64, n);
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    let coords = match family {
        0 => vec![z, o, w],
        1 => vec![w, z, o],
        _ => vec![o, w, z],
    };
    ProjectivePoint::new(coords)
}

/// `cos^n th - sin^n th` at `th = pi/4 - delta`, accurate near `delta = 0`.
pub(crate) fn pow_gap(delta: f64, n: u32) -> f64 {
    let th = FRAC_PI_4 - delta;
    let (s, co) = th.sin_cos();
    let mut sum = 0.0;
    for i in 0..n {
        sum += co.powi((n - 1 - i) as i32) * s.powi(i as i32);
    }
    SQRT_2 * delta.sin() * sum
}

/// `-(cos^n th + sin^n th e^{i n phi})` where `phi` is `psi` past a root
/// meridian, i.e. `e^{i n phi} = -e^{i n psi}`. Vanishes exactly at
/// `delta = psi = 0`.
pub(crate) fn lune_radicand(delta: f64, psi: f64, n: u32) -> C64 {
    let th = FRAC_PI_4 - delta;
    let nf = n as f64;
    let sn = th.sin().powi(n as i32);
    let bump = cis(nf * psi / 2.0) * c(0.0, 2.0 * (nf * psi / 2.0).sin());
    -pow_gap(delta, n) + bump * sn
}

/// Continuous argument of the lune radicand: `[pi, 2pi]` on `Same` lunes
/// and `[0, pi]` on `Next` lunes.
pub(crate) fn lune_root(w: C64, j: i64, side: Side, n: u32) -> C64 {
    if w.norm_sqr() == 0.0 {
        return c(0.0, 0.0);
    }
    let mut a = crate::projective::arg0(w);
    match side {
        Side::Same if a < FRAC_PI_2 => a += 2.0 * PI,
        Side::Next if a > 1.5 * PI => a -= 2.0 * PI,
        _ => {}
    }
    let nf = n as f64;
    C64::from_polar(w.norm().powf(1.0 / nf), (a + 2.0 * PI * j as f64) / nf)
}

/// Chart of a curve edge `pX_a -- pY_b`, with `0` mapping to `pX_a`.
///
/// The meta records the root index `j` of the adjacent `Same` triangle and
/// the sheet shift of the edge relative to it (1 on the edges from `p0`
/// down to the branch points).
pub fn curve_edge_chart(label: &CurveLabel, n: u32) -> Result<Chart> {
    check_degree(n)?;
    let CurveLabel::Edge { family, a, b } = *label else {
        return Err(Error::UnknownLabel(label.to_string()));
    };
    let (a, b) = (a as i64, b as i64);
    let cl = CellLabel::Curve(*label);
    let (chart, j, shift) = match family {
        Family::F01 => {
            // p0_a -- p1_b over e_m with m = -a-b-1; z2 = w_j (cos^n + sin^n)^{1/n}
            let m = -a - b - 1;
            let j = -b - 1;
            let ph = root_of_unity(m, n);
            let wj = root_of_minus_one(j, n);
            let ch = Chart::new(cl, 1, move |x| {
                let t = (1.0 - x[0]) * FRAC_PI_2;
                let (s, co) = t.sin_cos();
                let r = (co.powi(n as i32) + s.powi(n as i32)).powf(1.0 / n as f64);
                ProjectivePoint::new(vec![c(co, 0.0), ph * s, wj * r])
            });
            (ch, j, 0)
        }
        Family::F12 => {
            // p1_b -- p2_c over the path p1 -> p_c; radicand sin^n - cos^n <= 0
            let (bb, cc) = (a, b);
            let wc = root_of_minus_one(cc, n);
            let ph = root_of_unity(-(bb + 1), n);
            let ch = Chart::new(cl, 1, move |x| {
                let delta = (1.0 - x[0]) * FRAC_PI_4;
                let u = FRAC_PI_4 - delta;
                let z2 = ph * nth_root_branch(c(-pow_gap(delta, n), 0.0), 0, n);
                ProjectivePoint::new(vec![c(u.cos(), 0.0), wc * u.sin(), z2])
            });
            (ch, -bb - 1, 0)
        }
        Family::F20 => {
            // p2_c -- p0_a over the path p_c -> p0; radicand cos^n - sin^n >= 0
            let (cc, aa) = (a, b);
            let wc = root_of_minus_one(cc, n);
            let ph = root_of_unity(aa + cc + 1, n);
            let ch = Chart::new(cl, 1, move |x| {
                let delta = x[0] * FRAC_PI_4;
                let u = FRAC_PI_4 - delta;
                let z2 = ph * nth_root_branch(c(pow_gap(delta, n), 0.0), 0, n);
                ProjectivePoint::new(vec![c(u.sin(), 0.0), wc * u.cos(), z2])
            });
            // the Same triangle over this edge has j = -b-1 = a+c
            (ch, aa + cc, 1)
        }
    };
    let faces = curve_faces(label, n);
    Ok(chart
        .with_corner(vec![0.0], CellLabel::Curve(faces[0]))
        .with_corner(vec![1.0], CellLabel::Curve(faces[1]))
        .with_meta(ChartMeta {
            branch: Some(md(j, n) as i64),
            branch_shift: Some(shift),
            ..ChartMeta::default()
        }))
}

/// Chart of `b_{a,b,c}`: the lune over `f_c` lifted with `z_2` continued
/// from `p1_b`. Corners as in the CP^1 triangle charts.
pub fn curve_triangle_chart(label: &CurveLabel, n: u32) -> Result<Chart> {
    check_degree(n)?;
    let CurveLabel::Triangle {
        idx: [a, b, cc],
        side,
    } = *label
    else {
        return Err(Error::UnknownLabel(label.to_string()));
    };
    let j = -(b as i64) - 1;
    let mid = PI * (2 * cc as i64 + 1) as f64 / n as f64;
    let chart = Chart::new(CellLabel::Curve(*label), 2, move |x| {
        let (delta, psi) = lune_coords(x, side, n);
        let th = FRAC_PI_4 - delta;
        let z2 = lune_root(lune_radicand(delta, psi, n), j, side, n);
        ProjectivePoint::new(vec![c(th.cos(), 0.0), cis(mid + psi) * th.sin(), z2])
    });
    let v = |f: u8, k: Idx| CellLabel::Curve(CurveLabel::Vertex { family: f, k });
    Ok(chart
        .with_corner(vec![0.0, 0.0], v(1, b))
        .with_corner(vec![1.0, 0.0], v(0, a))
        .with_corner(vec![0.5, 1.0], v(2, cc))
        .with_meta(ChartMeta {
            branch: Some(md(j, n) as i64),
            branch_shift: Some(0),
            ..ChartMeta::default()
        }))
}

pub fn curve_chart(label: &CurveLabel, n: u32) -> Result<Chart> {
    match label {
        CurveLabel::Vertex { .. } => {
            let p = curve_vertex_point(label, n)?;
            Ok(Chart::new(CellLabel::Curve(*label), 0, move |_| {
                Ok(p.clone())
            }))
        }
        CurveLabel::Edge { .. } => curve_edge_chart(label, n),
        CurveLabel::Triangle { .. } => curve_triangle_chart(label, n),
    }
}

/// Project a curve point to CP^1 by dropping `z_2`.
pub fn curve_to_cp1(p: &ProjectivePoint) -> Result<ProjectivePoint> {
    p.truncate_last()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::fs_distance;

    #[test]
    fn radicand_vanishes_exactly_at_the_root() {
        assert_eq!(lune_radicand(0.0, 0.0, 5), c(0.0, 0.0));
        let w = lune_radicand(0.3, -0.2, 3);
        let th = FRAC_PI_4 - 0.3;
        let phi = PI / 3.0 - 0.2;
        let direct = -(c(th.cos().powi(3), 0.0) + cis(3.0 * phi) * th.sin().powi(3));
        assert!((w - direct).norm() < 1e-14);
    }

    #[test]
    fn cp1_small_cases() {
        let c1 = cp1_tessellation(1).unwrap();
        assert_eq!(c1.counts(), vec![3, 3, 2]);
        let t = c1.cells(2);
        assert_eq!(t[0].faces, t[1].faces);
        assert_eq!(cp1_tessellation(3).unwrap().counts(), vec![5, 9, 6]);
        assert_eq!(cp1_tessellation(0), Err(Error::InvalidDegree(0)));
    }

    #[test]
    fn triangle_chart_restricts_to_edge_charts() {
        for n in 1..=6 {
            for tri in curve_cells(2, n) {
                let tc = curve_triangle_chart(&tri, n).unwrap();
                let CurveLabel::Triangle { side, .. } = tri else {
                    unreachable!()
                };
                let edges = curve_faces(&tri, n);
                for i in 0..=20 {
                    let s = i as f64 / 20.0;
                    // 01 edge: y = 0, x from p0 (1) to p1 (0)
                    let e01 = curve_edge_chart(&edges[0], n).unwrap().eval(&[s]).unwrap();
                    let t01 = tc.eval(&[1.0 - s, 0.0]).unwrap();
                    assert!(fs_distance(&e01, &t01).unwrap() < 1e-9, "{tri} 01 {side:?}");
                    // 12 edge: y = 1, x from 0 to 1/2
                    let e12 = curve_edge_chart(&edges[1], n).unwrap().eval(&[s]).unwrap();
                    let t12 = tc.eval(&[s / 2.0, 1.0]).unwrap();
                    assert!(fs_distance(&e12, &t12).unwrap() < 1e-9, "{tri} 12");
                    // 20 edge: y = 1, x from 1/2 to 1
                    let e20 = curve_edge_chart(&edges[2], n).unwrap().eval(&[s]).unwrap();
                    let t20 = tc.eval(&[0.5 + s / 2.0, 1.0]).unwrap();
                    assert!(fs_distance(&e20, &t20).unwrap() < 1e-9, "{tri} 20");
                }
            }
        }
    }

    #[test]
    fn edges_from_p0_carry_a_sheet_shift() {
        let ch = curve_edge_chart(&curve_edge(Family::F20, 1, 2, 4), 4).unwrap();
        assert_eq!(ch.meta.branch_shift, Some(1));
        let ch = curve_edge_chart(&curve_edge(Family::F01, 1, 2, 4), 4).unwrap();
        assert_eq!(ch.meta.branch_shift, Some(0));
    }
}
