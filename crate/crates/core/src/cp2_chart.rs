//! Vertex positions and parametrizations of CP^2 cells, W-cell charts and
//! point location.
//!
//! Cells of the `12` and `20` families are images of `01` cells under the
//! cyclic shift `(z_0, z_1, z_2) -> (z_2, z_0, z_1)`; quadrilaterals and
//! pyramids are built for `01` and pushed forward.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::chart::{Chart, ChartMeta};
use crate::cp2::rotate;
use crate::curve::{
    cp1_chart, curve_chart, curve_edge_chart, curve_triangle_chart, curve_vertex_point,
};
use crate::error::{Error, Result};
use crate::label::{md, ASup, BSup, CellLabel, Cp1Label, Cp2Label, CurveLabel, Family, Idx, Side};
use crate::projective::{
    c, cis, geodesic_or_point, geodesic_point, root_of_unity, ProjectivePoint,
};

/// `p01 = [0,0,1]`, `p12 = [1,0,0]`, `p20 = [0,1,0]`.
pub fn corner_point(f: Family) -> ProjectivePoint {
    let mut v = [0.0; 3];
    v[f.z() as usize] = 1.0;
    ProjectivePoint::from_re(&v).expect("nonzero")
}

pub fn cp2_vertex_point(label: &Cp2Label, n: u32) -> Result<ProjectivePoint> {
    match label {
        Cp2Label::Corner(f) => Ok(corner_point(*f)),
        Cp2Label::Curve(v @ CurveLabel::Vertex { .. }) => curve_vertex_point(v, n),
        _ => Err(Error::UnknownLabel(label.to_string())),
    }
}

/// Place a CP^1 point on `L_m` as `(z_{m+1}, z_{m+2})`.
pub fn embed_on_line(m: u8, p: &ProjectivePoint) -> Result<ProjectivePoint> {
    let w = p.coords();
    let mut z = vec![c(0.0, 0.0); 3];
    z[(m as usize + 1) % 3] = w[0];
    z[(m as usize + 2) % 3] = w[1];
    ProjectivePoint::new(z)
}

/// `(z_0, z_1, z_2) -> (z_2, z_0, z_1)`.
pub fn shift(p: &ProjectivePoint) -> Result<ProjectivePoint> {
    let z = p.coords();
    ProjectivePoint::new(vec![z[2], z[0], z[1]])
}

fn cp1_to_cp2(m: u8, l: &Cp1Label) -> Cp2Label {
    let (p1, p0) = Family::corners_on_line(m);
    match *l {
        Cp1Label::Pole(0) => Cp2Label::Corner(p0),
        Cp1Label::Pole(_) => Cp2Label::Corner(p1),
        Cp1Label::Root(k) => Cp2Label::Curve(CurveLabel::Vertex { family: m, k }),
        Cp1Label::EEdge(k) => Cp2Label::EEdge { line: m, k },
        Cp1Label::PoleRoot { pole, k } => Cp2Label::CornerRoot {
            corner: if pole == 0 { p0 } else { p1 },
            line: m,
            k,
        },
        Cp1Label::Triangle { k, side } => Cp2Label::FTri { line: m, k, side },
    }
}

fn line_chart(label: &Cp2Label, m: u8, l: Cp1Label, n: u32) -> Result<Chart> {
    let base = cp1_chart(&l, n)?;
    let mut ch = base.post_compose(CellLabel::Cp2(*label), move |p| embed_on_line(m, &p));
    for (_, v) in ch.corners.iter_mut() {
        if let CellLabel::Cp1(cl) = v {
            *v = CellLabel::Cp2(cp1_to_cp2(m, cl));
        }
    }
    Ok(ch)
}

fn relabel_curve(mut ch: Chart, label: &Cp2Label) -> Chart {
    ch.label = CellLabel::Cp2(*label);
    for (_, v) in ch.corners.iter_mut() {
        if let CellLabel::Curve(cl) = v {
            *v = CellLabel::Cp2(Cp2Label::Curve(*cl));
        }
    }
    ch
}

fn v2(l: Cp2Label) -> CellLabel {
    CellLabel::Cp2(l)
}

/// Number of cyclic shifts taking the `01` family to `f`.
fn shifts_from_01(f: Family) -> usize {
    match f {
        Family::F01 => 0,
        Family::F12 => 1,
        Family::F20 => 2,
    }
}

/// Push a chart of a `01` cell forward by `times` cyclic shifts.
fn pushed(ch: Chart, target: &Cp2Label, times: usize) -> Chart {
    if times == 0 {
        return ch;
    }
    let mut out = ch.post_compose(v2(*target), move |p| {
        let mut q = p;
        for _ in 0..times {
            q = shift(&q)?;
        }
        Ok(q)
    });
    for (_, v) in out.corners.iter_mut() {
        if let CellLabel::Cp2(l) = v {
            for _ in 0..times {
                *l = rotate(l);
            }
        }
    }
    out
}

/// The curve edge `p0_j -- p1_k` and the e-edge below it, matched by their
/// common projection to `L_2`: both evaluated at parameter `x` from the
/// `p0_j` / `p20` end.
struct QuadSides {
    curve: Chart,
    e: Chart,
}

impl QuadSides {
    fn new(j: Idx, k: Idx, n: u32) -> Result<QuadSides> {
        let c_idx = md(-(j as i64) - k as i64 - 1, n);
        Ok(QuadSides {
            curve: curve_edge_chart(
                &CurveLabel::Edge {
                    family: Family::F01,
                    a: j,
                    b: k,
                },
                n,
            )?,
            e: cp1_chart(&Cp1Label::EEdge(c_idx), n)?,
        })
    }

    fn at(&self, x: f64) -> Result<(ProjectivePoint, ProjectivePoint)> {
        let top = self.curve.eval(&[x])?;
        let bottom = embed_on_line(2, &self.e.eval(&[1.0 - x])?)?;
        Ok((top, bottom))
    }
}

fn quad01(label: &Cp2Label, j: Idx, k: Idx, n: u32) -> Result<Chart> {
    let sides = QuadSides::new(j, k, n)?;
    let ch = Chart::new(v2(*label), 2, move |x| {
        let (top, bottom) = sides.at(x[0])?;
        geodesic_point(&top, &bottom, x[1])
    });
    let cv = |f: u8, k: Idx| v2(Cp2Label::Curve(CurveLabel::Vertex { family: f, k }));
    Ok(ch
        .with_corner(vec![0.0, 0.0], cv(0, j))
        .with_corner(vec![1.0, 0.0], cv(1, k))
        .with_corner(vec![0.0, 1.0], v2(Cp2Label::Corner(Family::F20)))
        .with_corner(vec![1.0, 1.0], v2(Cp2Label::Corner(Family::F12))))
}

/// `A01`: geodesics from each point of the curve triangle straight down to
/// its projection on the f-triangle of `L_2`; `x, y` are the lune
/// coordinates shared by both triangles and `w` runs from `b` to `f`.
fn a_pyr01(label: &Cp2Label, j: Idx, k: Idx, sup: ASup, n: u32) -> Result<Chart> {
    let (side, off) = match sup {
        ASup::One => (Side::Same, 1),
        ASup::Two => (Side::Next, 2),
    };
    let cc = md(-(j as i64) - k as i64 - off, n);
    let b = curve_triangle_chart(
        &CurveLabel::Triangle {
            idx: [j, k, cc],
            side,
        },
        n,
    )?;
    let f = cp1_chart(&Cp1Label::Triangle { k: cc, side }, n)?;
    let meta = b.meta.clone();
    let ch = Chart::new(v2(*label), 3, move |x| {
        let top = b.eval(&x[..2])?;
        let bottom = embed_on_line(2, &f.eval(&x[..2])?)?;
        geodesic_or_point(&top, &bottom, x[2])
    });
    let cv = |fam: u8, k: Idx| v2(Cp2Label::Curve(CurveLabel::Vertex { family: fam, k }));
    Ok(ch
        .with_corner(vec![0.0, 0.0, 0.0], cv(1, k))
        .with_corner(vec![1.0, 0.0, 0.0], cv(0, j))
        .with_corner(vec![0.5, 1.0, 0.0], cv(2, cc))
        .with_corner(vec![0.0, 0.0, 1.0], v2(Cp2Label::Corner(Family::F12)))
        .with_corner(vec![1.0, 0.0, 1.0], v2(Cp2Label::Corner(Family::F20)))
        .with_meta(meta))
}

/// `B01`: geodesics joining the cone from `p01` over the curve edge
/// (`y = 0`) to the matching path of the g-triangle (`y = 1`); `x` runs
/// along the quadrilateral and `t` up to the apex `p01`.
fn b_pyr01(label: &Cp2Label, j: Idx, k: Idx, sup: BSup, n: u32) -> Result<Chart> {
    let sides = QuadSides::new(j, k, n)?;
    let g_y = match sup {
        BSup::S01 => k as i64 + 1,
        BSup::S10 => k as i64,
    };
    let apex_phase = root_of_unity(-g_y, n);
    let apex = corner_point(Family::F01);
    let ch = Chart::new(v2(*label), 3, move |x| {
        let (top, bottom) = sides.at(x[0])?;
        let t = x[2];
        let h = geodesic_or_point(&top, &apex, t)?;
        let e = bottom.normalized();
        let (ct, st) = ((t * FRAC_PI_2).cos(), (t * FRAC_PI_2).sin());
        let g = ProjectivePoint::new(vec![e[0] * ct, e[1] * ct, apex_phase * st])?;
        geodesic_or_point(&h, &g, x[1])
    });
    let cv = |fam: u8, k: Idx| v2(Cp2Label::Curve(CurveLabel::Vertex { family: fam, k }));
    Ok(ch
        .with_corner(vec![0.0, 0.0, 0.0], cv(0, j))
        .with_corner(vec![1.0, 0.0, 0.0], cv(1, k))
        .with_corner(vec![0.0, 1.0, 0.0], v2(Cp2Label::Corner(Family::F20)))
        .with_corner(vec![1.0, 1.0, 0.0], v2(Cp2Label::Corner(Family::F12)))
        .with_corner(vec![0.0, 0.0, 1.0], v2(Cp2Label::Corner(Family::F01))))
}

/// Parametrization of a CP^2 cell of dimension at most 3.
///
/// 4-cells have no direct chart; they are reached through
/// [`w_cell_chart`].
pub fn cp2_cell_chart(label: &Cp2Label, n: u32) -> Result<Chart> {
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    use Cp2Label::*;
    match *label {
        Corner(f) => {
            let p = corner_point(f);
            Ok(Chart::new(v2(*label), 0, move |_| Ok(p.clone())).with_corner(vec![], v2(*label)))
        }
        Curve(cl) => Ok(relabel_curve(curve_chart(&cl, n)?, label)),
        EEdge { line, k } => line_chart(label, line, Cp1Label::EEdge(k), n),
        CornerRoot { corner, line, k } => {
            let pole = if Family::corners_on_line(line).0 == corner {
                1
            } else {
                0
            };
            line_chart(label, line, Cp1Label::PoleRoot { pole, k }, n)
        }
        FTri { line, k, side } => line_chart(label, line, Cp1Label::Triangle { k, side }, n),
        HTri { family, j, k } => {
            let base = curve_edge_chart(&CurveLabel::Edge { family, a: j, b: k }, n)?;
            let apex = corner_point(family);
            let corners: Vec<_> = base
                .corners
                .iter()
                .map(|(at, v)| (vec![at[0], 0.0], v.clone()))
                .collect();
            let mut ch = Chart::new(v2(*label), 2, move |x| {
                let p = base.eval(&x[..1])?;
                geodesic_point(&p, &apex, x[1])
            });
            for (at, v) in corners {
                let CellLabel::Curve(cl) = v else {
                    unreachable!()
                };
                ch = ch.with_corner(at, v2(Curve(cl)));
            }
            Ok(ch.with_corner(vec![0.0, 1.0], v2(Corner(family))))
        }
        GTri { idx } => {
            let p1 = root_of_unity(idx[2] as i64, n);
            let p2 = root_of_unity(-(idx[1] as i64), n);
            Ok(Chart::new(v2(*label), 2, move |x| {
                let (s, t) = (x[0] * FRAC_PI_2, x[1] * FRAC_PI_2);
                ProjectivePoint::new(vec![
                    c(s.cos(), 0.0),
                    p1 * (s.sin() * t.cos()),
                    p2 * (s.sin() * t.sin()),
                ])
            })
            .with_corner(vec![0.0, 0.0], v2(Corner(Family::F12)))
            .with_corner(vec![1.0, 0.0], v2(Corner(Family::F20)))
            .with_corner(vec![1.0, 1.0], v2(Corner(Family::F01))))
        }
        Quad { family, j, k } => {
            let base = Quad {
                family: Family::F01,
                j,
                k,
            };
            Ok(pushed(
                quad01(&base, j, k, n)?,
                label,
                shifts_from_01(family),
            ))
        }
        APyr { family, j, k, sup } => {
            let base = APyr {
                family: Family::F01,
                j,
                k,
                sup,
            };
            Ok(pushed(
                a_pyr01(&base, j, k, sup, n)?,
                label,
                shifts_from_01(family),
            ))
        }
        BPyr { family, j, k, sup } => {
            let base = BPyr {
                family: Family::F01,
                j,
                k,
                sup,
            };
            Ok(pushed(
                b_pyr01(&base, j, k, sup, n)?,
                label,
                shifts_from_01(family),
            ))
        }
        FourCell { .. } => Err(Error::ChartUnavailable(label.to_string())),
    }
}

// ---------------------------------------------------------------------------
// W-cells

/// `arg(-cos^n r - sin^n r e^{i n a})` for `a = 2 pi j / n + gamma`, taken
/// continuously in `[0, 2 pi]` over `gamma in [-pi/n, pi/n]`.
pub fn w_angle(r: f64, gamma: f64, n: u32) -> f64 {
    let nf = n as f64;
    let (s, co) = r.sin_cos();
    let (sn, cn) = (s.powi(n as i32), co.powi(n as i32));
    let re = cn + sn * (nf * gamma).cos();
    let im = (sn * (nf * gamma).sin()).abs();
    let im = if gamma < 0.0 { -im } else { im };
    PI + im.atan2(re)
}

/// `[cos s e^{i beta}, cos r sin s, sin r sin s e^{i alpha}]`.
pub fn w_point(r: f64, s: f64, alpha: f64, beta: f64) -> Result<ProjectivePoint> {
    ProjectivePoint::new(vec![
        cis(beta) * s.cos(),
        c(r.cos() * s.sin(), 0.0),
        cis(alpha) * (r.sin() * s.sin()),
    ])
}

/// Chart of the W-cell `W_{j,k,-j-k}` on `[0,1]^4`: coordinates are
/// `r`, `s`, `alpha` in its window around `2 pi j / n`, and `beta` in its
/// window of width `2 pi / n` starting at `(a + 2 pi (j+k-1)) / n`.
pub fn w_cell_chart(j: Idx, k: Idx, n: u32) -> Result<Chart> {
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let nf = n as f64;
    let (jf, kf) = (j as f64, k as f64);
    let lo = (2.0 * jf - 1.0) * PI / nf;
    let hi = (2.0 * jf + 1.0) * PI / nf;
    let label = CellLabel::named(format!("W({j},{k},{})", md(-(j as i64) - k as i64, n)));
    Ok(Chart::new(label, 4, move |x| {
        let r = x[0] * FRAC_PI_2;
        let s = x[1] * FRAC_PI_2;
        let gamma = (2.0 * x[2] - 1.0) * PI / nf;
        let alpha = 2.0 * PI * jf / nf + gamma;
        let a = w_angle(r, gamma, n);
        let beta = (a + TAU * (jf + kf - 1.0) + TAU * x[3]) / nf;
        w_point(r, s, alpha, beta)
    })
    .with_meta(ChartMeta {
        ranges: vec![
            ("r".into(), 0.0, FRAC_PI_2),
            ("s".into(), 0.0, FRAC_PI_2),
            ("alpha".into(), lo, hi),
        ],
        ..ChartMeta::default()
    }))
}

/// `(r, s, alpha, beta)` of a point with `z_1 != 0`, `z_2 != 0`.
pub fn w_coordinates(p: &ProjectivePoint) -> Option<(f64, f64, f64, f64)> {
    let z = p.normalized();
    if z.len() != 3 || z[1].norm() < 1e-300 || z[2].norm() < 1e-300 {
        return None;
    }
    let s = z[0].norm().clamp(0.0, 1.0).acos();
    let r = z[2].norm().atan2(z[1].norm());
    let alpha = (z[2] / z[1]).arg();
    let beta = (z[0] / z[1]).arg();
    Some((r, s, alpha, beta))
}

fn wrap_pm_pi(x: f64) -> f64 {
    let y = x.rem_euclid(TAU);
    if y > PI {
        y - TAU
    } else {
        y
    }
}

/// The W-cell containing a point, in closed form. `None` on the measure-zero
/// set where `alpha` or `beta` is undefined.
pub fn w_cell_locate(p: &ProjectivePoint, n: u32) -> Option<(Idx, Idx)> {
    let (r, _, alpha, beta) = w_coordinates(p)?;
    let nf = n as f64;
    let jr = (nf * alpha / TAU).round();
    let gamma = wrap_pm_pi(alpha - TAU * jr / nf);
    let a = w_angle(r, gamma, n);
    let jk = ((nf * beta - a) / TAU).ceil();
    let j = md(jr as i64, n);
    Some((j, md(jk as i64 - j as i64, n)))
}

/// All W-cells whose closed parameter windows contain the point, by direct
/// search with tolerance `tol` (in radians).
pub fn w_cells_containing(p: &ProjectivePoint, n: u32, tol: f64) -> Vec<(Idx, Idx)> {
    let Some((r, _, alpha, beta)) = w_coordinates(p) else {
        return Vec::new();
    };
    let nf = n as f64;
    let mut out = Vec::new();
    for j in 0..n {
        let gamma = wrap_pm_pi(alpha - TAU * j as f64 / nf);
        if gamma.abs() > PI / nf + tol {
            continue;
        }
        let a = w_angle(r, gamma.clamp(-PI / nf, PI / nf), n);
        for k in 0..n {
            let start = a + TAU * (j as f64 + k as f64 - 1.0);
            let off = (nf * beta - start).rem_euclid(TAU * nf);
            if off <= TAU + tol * nf || off >= TAU * nf - tol * nf {
                out.push((j, k));
            }
        }
    }
    out
}
