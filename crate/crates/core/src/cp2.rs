//! The CP^2 tessellation: corners, lines `L_m`, quadrilaterals, the two
//! pyramid groups and the 4-cells, plus the W-cell bookkeeping.
//!
//! Every family is written for a generic ordered pair `XY` of coordinates;
//! the cyclic shift `z -> (z_2, z_0, z_1)` maps the `01` family to `12` and
//! `12` to `20` with unchanged indices (see [`rotate`]).

use crate::chain::{build_complex, euler_characteristic, CellComplex, CellTable, SpaceTag};
use crate::curve::{curve_cells, curve_faces};
use crate::error::{Error, Result};
use crate::label::{md, ASup, BSup, CellKind, CellLabel, Cp2Label, CurveLabel, Family, Idx, Side};
use crate::report::ValidationReport;

fn check_degree(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidDegree(0))
    } else {
        Ok(())
    }
}

fn curve_edge(family: Family, a: i64, b: i64, n: u32) -> Cp2Label {
    Cp2Label::Curve(CurveLabel::Edge {
        family,
        a: md(a, n),
        b: md(b, n),
    })
}

fn e_edge(line: u8, k: i64, n: u32) -> Cp2Label {
    Cp2Label::EEdge { line, k: md(k, n) }
}

fn corner_root(corner: Family, line: u8, k: i64, n: u32) -> Cp2Label {
    Cp2Label::CornerRoot {
        corner,
        line,
        k: md(k, n),
    }
}

fn f_tri(line: u8, k: i64, side: Side, n: u32) -> Cp2Label {
    Cp2Label::FTri {
        line,
        k: md(k, n),
        side,
    }
}

fn h_tri(family: Family, j: i64, k: i64, n: u32) -> Cp2Label {
    Cp2Label::HTri {
        family,
        j: md(j, n),
        k: md(k, n),
    }
}

fn quad(family: Family, j: i64, k: i64, n: u32) -> Cp2Label {
    Cp2Label::Quad {
        family,
        j: md(j, n),
        k: md(k, n),
    }
}

/// `g` with the e-edge indices given per line.
fn g_tri(on_line: [(u8, i64); 3], n: u32) -> Cp2Label {
    let mut idx = [0; 3];
    for (m, k) in on_line {
        idx[m as usize] = md(k, n);
    }
    Cp2Label::GTri { idx }
}

/// `b` with the curve-vertex indices given per coordinate family.
fn b_tri(at: [(u8, i64); 3], side: Side, n: u32) -> Cp2Label {
    let mut idx = [0; 3];
    for (f, k) in at {
        idx[f as usize] = md(k, n);
    }
    Cp2Label::Curve(CurveLabel::Triangle { idx, side })
}

pub fn a_pyr(family: Family, j: i64, k: i64, sup: ASup, n: u32) -> Cp2Label {
    Cp2Label::APyr {
        family,
        j: md(j, n),
        k: md(k, n),
        sup,
    }
}

pub fn b_pyr(family: Family, j: i64, k: i64, sup: BSup, n: u32) -> Cp2Label {
    Cp2Label::BPyr {
        family,
        j: md(j, n),
        k: md(k, n),
        sup,
    }
}

pub fn four_cell(family: Family, j: i64, k: i64, sup: ASup, n: u32) -> Cp2Label {
    Cp2Label::FourCell {
        family,
        j: md(j, n),
        k: md(k, n),
        sup,
    }
}

/// Third index of the curve triangle over the quadrilateral `XY_{jk}`.
fn third(j: i64, k: i64, sup: ASup) -> i64 {
    match sup {
        ASup::One => -j - k - 1,
        ASup::Two => -j - k - 2,
    }
}

/// The four pyramids of a 4-cell, in row order `{A, A', B, B'}`.
pub fn four_cell_pyramids(family: Family, j: i64, k: i64, sup: ASup, n: u32) -> [Cp2Label; 4] {
    let c = third(j, k, sup);
    let next = family.succ();
    let (b0, b1) = match sup {
        ASup::One => (BSup::S01, BSup::S10),
        ASup::Two => (BSup::S10, BSup::S01),
    };
    [
        a_pyr(family, j, k, sup, n),
        a_pyr(next, k, c, sup, n),
        b_pyr(family, j, k, b0, n),
        b_pyr(next, k, c, b1, n),
    ]
}

/// Face list of a CP^2 cell.
pub fn cp2_faces(label: &Cp2Label, n: u32) -> Vec<Cp2Label> {
    use Cp2Label::*;
    match *label {
        Corner(_) => Vec::new(),
        Curve(c) => curve_faces(&c, n).into_iter().map(Curve).collect(),
        EEdge { line, .. } => {
            let (p, q) = Family::corners_on_line(line);
            vec![Corner(p), Corner(q)]
        }
        CornerRoot { corner, line, k } => {
            vec![
                Corner(corner),
                Curve(CurveLabel::Vertex { family: line, k }),
            ]
        }
        FTri { line, k, side } => {
            let (p, q) = Family::corners_on_line(line);
            let k = k as i64;
            vec![
                e_edge(line, k + side.offset(), n),
                corner_root(p, line, k, n),
                corner_root(q, line, k, n),
            ]
        }
        HTri { family, j, k } => {
            let (j, k) = (j as i64, k as i64);
            vec![
                curve_edge(family, j, k, n),
                corner_root(family, family.x(), j, n),
                corner_root(family, family.y(), k, n),
            ]
        }
        GTri { idx } => (0..3)
            .map(|m| e_edge(m, idx[m as usize] as i64, n))
            .collect(),
        Quad { family, j, k } => {
            let (j, k) = (j as i64, k as i64);
            let (x, y, z) = (family.x(), family.y(), family.z());
            vec![
                curve_edge(family, j, k, n),
                e_edge(z, -j - k - 1, n),
                corner_root(family.succ().succ(), x, j, n),
                corner_root(family.succ(), y, k, n),
            ]
        }
        APyr { family, j, k, sup } => {
            let (j, k) = (j as i64, k as i64);
            let c = third(j, k, sup);
            let side = match sup {
                ASup::One => Side::Same,
                ASup::Two => Side::Next,
            };
            let (x, y, z) = (family.x(), family.y(), family.z());
            vec![
                quad(family, j, k, n),
                b_tri([(x, j), (y, k), (z, c)], side, n),
                h_tri(family.succ(), k, c, n),
                h_tri(family.succ().succ(), c, j, n),
                f_tri(z, c, side, n),
            ]
        }
        BPyr { family, j, k, sup } => {
            let (j, k) = (j as i64, k as i64);
            let (x, y, z) = (family.x(), family.y(), family.z());
            let (gx, gy, fx, fy) = match sup {
                BSup::S01 => (j, k + 1, Side::Same, Side::Next),
                BSup::S10 => (j + 1, k, Side::Next, Side::Same),
            };
            vec![
                quad(family, j, k, n),
                g_tri([(x, gx), (y, gy), (z, -j - k - 1)], n),
                f_tri(x, j, fx, n),
                f_tri(y, k, fy, n),
                h_tri(family, j, k, n),
            ]
        }
        FourCell { family, j, k, sup } => {
            four_cell_pyramids(family, j as i64, k as i64, sup, n).to_vec()
        }
    }
}

/// The cyclic coordinate shift `(z_0, z_1, z_2) -> (z_2, z_0, z_1)` on labels.
pub fn rotate(label: &Cp2Label) -> Cp2Label {
    use Cp2Label::*;
    let r3 = |m: u8| (m + 1) % 3;
    match *label {
        Corner(f) => Corner(f.succ()),
        Curve(CurveLabel::Vertex { family, k }) => Curve(CurveLabel::Vertex {
            family: r3(family),
            k,
        }),
        Curve(CurveLabel::Edge { family, a, b }) => Curve(CurveLabel::Edge {
            family: family.succ(),
            a,
            b,
        }),
        Curve(CurveLabel::Triangle {
            idx: [a, b, c],
            side,
        }) => Curve(CurveLabel::Triangle {
            idx: [c, a, b],
            side,
        }),
        EEdge { line, k } => EEdge { line: r3(line), k },
        CornerRoot { corner, line, k } => CornerRoot {
            corner: corner.succ(),
            line: r3(line),
            k,
        },
        FTri { line, k, side } => FTri {
            line: r3(line),
            k,
            side,
        },
        HTri { family, j, k } => HTri {
            family: family.succ(),
            j,
            k,
        },
        GTri { idx: [a, b, c] } => GTri { idx: [c, a, b] },
        Quad { family, j, k } => Quad {
            family: family.succ(),
            j,
            k,
        },
        APyr { family, j, k, sup } => APyr {
            family: family.succ(),
            j,
            k,
            sup,
        },
        BPyr { family, j, k, sup } => BPyr {
            family: family.succ(),
            j,
            k,
            sup,
        },
        FourCell { family, j, k, sup } => FourCell {
            family: family.succ(),
            j,
            k,
            sup,
        },
    }
}

/// All CP^2 cells of one dimension, sorted.
pub fn cp2_cells(dim: usize, n: u32) -> Vec<Cp2Label> {
    use Cp2Label::*;
    let mut out: Vec<Cp2Label> = curve_cells(dim, n).into_iter().map(Curve).collect();
    let ni = n as i64;
    let pairs = || (0..ni).flat_map(move |j| (0..ni).map(move |k| (j, k)));
    match dim {
        0 => out.extend(Family::ALL.map(Corner)),
        1 => {
            for line in 0..3 {
                let (p, q) = Family::corners_on_line(line);
                for k in 0..ni {
                    out.push(e_edge(line, k, n));
                    out.push(corner_root(p, line, k, n));
                    out.push(corner_root(q, line, k, n));
                }
            }
        }
        2 => {
            for line in 0..3 {
                for k in 0..ni {
                    out.push(f_tri(line, k, Side::Same, n));
                    out.push(f_tri(line, k, Side::Next, n));
                }
            }
            for f in Family::ALL {
                out.extend(pairs().map(|(j, k)| h_tri(f, j, k, n)));
                out.extend(pairs().map(|(j, k)| quad(f, j, k, n)));
            }
            out.extend(pairs().map(|(a, b)| g_tri([(0, a), (1, b), (2, -a - b)], n)));
        }
        3 => {
            for f in Family::ALL {
                for (j, k) in pairs() {
                    out.push(a_pyr(f, j, k, ASup::One, n));
                    out.push(a_pyr(f, j, k, ASup::Two, n));
                    out.push(b_pyr(f, j, k, BSup::S01, n));
                    out.push(b_pyr(f, j, k, BSup::S10, n));
                }
            }
        }
        4 => {
            for f in Family::ALL {
                for (j, k) in pairs() {
                    out.push(four_cell(f, j, k, ASup::One, n));
                    out.push(four_cell(f, j, k, ASup::Two, n));
                }
            }
        }
        _ => {}
    }
    out.sort();
    out
}

pub fn cp2_table(n: u32) -> CellTable {
    (0..=4)
        .map(|d| {
            cp2_cells(d, n)
                .into_iter()
                .map(|l| {
                    let faces = cp2_faces(&l, n).into_iter().map(CellLabel::Cp2).collect();
                    (CellLabel::Cp2(l), faces)
                })
                .collect()
        })
        .collect()
}

pub fn cp2_tessellation(n: u32) -> Result<CellComplex> {
    check_degree(n)?;
    build_complex(n, SpaceTag::Cp2, cp2_table(n))
}

// ---------------------------------------------------------------------------
// W-cells

/// The twelve pyramids bounding `W_{j,k,-j-k}`.
pub fn sweep_boundary(j: i64, k: i64, n: u32) -> Vec<Cp2Label> {
    use ASup::*;
    use Family::*;
    let c = -j - k;
    let mut out = Vec::new();
    for sup in [One, Two] {
        out.push(a_pyr(F12, k - 1, c, sup, n));
        out.push(a_pyr(F12, k, c - 1, sup, n));
        out.push(a_pyr(F20, c - 1, j, sup, n));
        out.push(a_pyr(F20, c, j - 1, sup, n));
        out.push(a_pyr(F01, j - 1, k, sup, n));
        out.push(a_pyr(F01, j, k - 1, sup, n));
    }
    out.sort();
    out
}

/// The six pyramids inside `W_{j,k,-j-k}`.
pub fn sweep_inside(j: i64, k: i64, n: u32) -> Vec<Cp2Label> {
    use BSup::*;
    use Family::*;
    let c = -j - k;
    let mut out = vec![
        b_pyr(F12, k - 1, c, S10, n),
        b_pyr(F12, k, c - 1, S01, n),
        b_pyr(F20, c - 1, j, S10, n),
        b_pyr(F20, c, j - 1, S01, n),
        b_pyr(F01, j - 1, k, S10, n),
        b_pyr(F01, j, k - 1, S01, n),
    ];
    out.sort();
    out
}

/// The six 4-cells dividing `W_{j,k,-j-k}`, as pyramid rows.
pub fn w_divide(j: i64, k: i64, n: u32) -> Vec<[Cp2Label; 4]> {
    use ASup::*;
    use BSup::*;
    use Family::*;
    let c = -j - k;
    vec![
        [
            a_pyr(F01, j, k - 1, One, n),
            a_pyr(F12, k - 1, c, One, n),
            b_pyr(F01, j, k - 1, S01, n),
            b_pyr(F12, k - 1, c, S10, n),
        ],
        [
            a_pyr(F12, k - 1, c, Two, n),
            a_pyr(F20, c, j - 1, Two, n),
            b_pyr(F12, k - 1, c, S10, n),
            b_pyr(F20, c, j - 1, S01, n),
        ],
        [
            a_pyr(F20, c, j - 1, One, n),
            a_pyr(F01, j - 1, k, One, n),
            b_pyr(F20, c, j - 1, S01, n),
            b_pyr(F01, j - 1, k, S10, n),
        ],
        [
            a_pyr(F01, j - 1, k, Two, n),
            a_pyr(F12, k, c - 1, Two, n),
            b_pyr(F01, j - 1, k, S10, n),
            b_pyr(F12, k, c - 1, S01, n),
        ],
        [
            a_pyr(F12, k, c - 1, One, n),
            a_pyr(F20, c - 1, j, One, n),
            b_pyr(F12, k, c - 1, S01, n),
            b_pyr(F20, c - 1, j, S10, n),
        ],
        [
            a_pyr(F20, c - 1, j, Two, n),
            a_pyr(F01, j, k - 1, Two, n),
            b_pyr(F20, c - 1, j, S10, n),
            b_pyr(F01, j, k - 1, S01, n),
        ],
    ]
}

fn lookup(complex: &CellComplex, l: &Cp2Label) -> Option<(usize, usize)> {
    complex.find(&CellLabel::Cp2(*l))
}

fn label_list(complex: &CellComplex, d: usize, idx: &[usize]) -> Vec<String> {
    idx.iter()
        .map(|&i| complex.cell(d, i).label.to_string())
        .collect()
}

/// Check that the faces of `(d, i)` form a closed pseudomanifold of the
/// expected shape: every ridge in exactly two facets, Euler characteristic
/// `chi`, and the given number of cells per dimension.
pub(crate) fn boundary_shape(
    complex: &CellComplex,
    d: usize,
    i: usize,
    counts: &[usize],
    chi: i64,
) -> Option<String> {
    let closure = complex.boundary_closure(d, i);
    let got: Vec<usize> = closure.iter().map(Vec::len).collect();
    let x: i64 = crate::chain::alternating_sum(&got);
    let label = &complex.cell(d, i).label;
    if got != counts {
        return Some(format!("{label}: boundary counts {got:?}"));
    }
    if x != chi {
        return Some(format!("{label}: boundary euler characteristic {x}"));
    }
    let facets = &closure[d - 1];
    for &r in &closure[d - 2] {
        let m = facets
            .iter()
            .filter(|&&f| complex.cell(d - 1, f).faces.contains(&r))
            .count();
        if m != 2 {
            return Some(format!(
                "{label}: ridge {} in {m} facets",
                complex.cell(d - 2, r).label
            ));
        }
    }
    None
}

/// Structural checks of the CP^2 tessellation against the W-cell sweep.
pub fn verify_cp2_structure(complex: &CellComplex, n: u32) -> ValidationReport {
    let mut report = ValidationReport::new();
    let ni = n as i64;
    let mut bnd_bad = Vec::new();
    let mut inside_bad = Vec::new();
    let mut divide_bad = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for j in 0..ni {
        for k in 0..ni {
            let rows = w_divide(j, k, n);
            // multiplicity of each pyramid among the six 4-cells
            let mut mult: std::collections::BTreeMap<usize, usize> = Default::default();
            for row in &rows {
                let Some(fc) = row_to_four_cell(complex, row, n) else {
                    divide_bad.push(format!(
                        "W({j},{k}): no 4-cell with pyramids {}",
                        row.map(|l| l.to_string()).join(" ")
                    ));
                    continue;
                };
                seen.push(fc);
                for &p in &complex.cell(4, fc).faces {
                    *mult.entry(p).or_default() += 1;
                }
            }
            // Boundary pyramids occur once, interior ones twice. At n = 1 the
            // boundary list names each pyramid twice (the cell meets itself).
            let occurrences: Vec<usize> = mult
                .iter()
                .flat_map(|(&p, &m)| std::iter::repeat_n(p, m))
                .collect();
            let ids = |ls: Vec<Cp2Label>| -> Option<Vec<usize>> {
                ls.iter().map(|l| lookup(complex, l).map(|x| x.1)).collect()
            };
            let (Some(bnd), Some(inside)) =
                (ids(sweep_boundary(j, k, n)), ids(sweep_inside(j, k, n)))
            else {
                bnd_bad.push(format!(
                    "W({j},{k}): listed pyramid missing from the complex"
                ));
                continue;
            };
            let mut want: Vec<usize> = bnd.iter().chain(&inside).chain(&inside).copied().collect();
            want.sort_unstable();
            if want != occurrences {
                bnd_bad.push(format!(
                    "W({j},{k}): pyramid occurrences {:?}",
                    label_list(complex, 3, &occurrences)
                ));
            }
            let once: Vec<usize> = mult.iter().filter(|e| *e.1 == 1).map(|e| *e.0).collect();
            let mut bset = bnd.clone();
            bset.sort_unstable();
            bset.dedup();
            if n > 1 && bset != once {
                inside_bad.push(format!(
                    "W({j},{k}): boundary {:?}",
                    label_list(complex, 3, &once)
                ));
            }
        }
    }
    seen.sort_unstable();
    let all: Vec<usize> = (0..complex.count(4)).collect();
    if seen != all {
        divide_bad.push(format!(
            "W-cells cover {} of {} 4-cells (with repeats)",
            seen.len(),
            all.len()
        ));
    }
    report.push(
        "W-cell pyramids",
        bnd_bad,
        "rows cover the twelve boundary A-pyramids once and the six B-pyramids twice",
    );
    report.push(
        "W-cell boundary",
        inside_bad,
        "pyramids met once are exactly the boundary list",
    );
    report.push(
        "W-cell division",
        divide_bad,
        "six 4-cells per W-cell, each 4-cell once",
    );

    let mut four_bad = Vec::new();
    for i in 0..complex.count(4) {
        if let Some(msg) = boundary_shape(complex, 4, i, &[6, 12, 10, 4], 0) {
            four_bad.push(msg);
        }
    }
    report.push(
        "4-cell boundaries",
        four_bad,
        "6 vertices, 12 edges, 10 2-cells, 4 pyramids, closed, chi 0",
    );
    let mut three_bad = Vec::new();
    for i in 0..complex.count(3) {
        if let Some(msg) = boundary_shape(complex, 3, i, &[5, 8, 5], 2) {
            three_bad.push(msg);
        }
    }
    report.push(
        "3-cell boundaries",
        three_bad,
        "pyramids: 5 vertices, 8 edges, 5 faces, chi 2",
    );
    report.assert(
        "euler characteristic",
        euler_characteristic(complex) == 3,
        format!("chi = {}", euler_characteristic(complex)),
    );
    report.extend(crate::chain::validate_incidence(
        complex,
        &cp2_incidence_rules(n),
    ));
    report
}

fn row_to_four_cell(complex: &CellComplex, row: &[Cp2Label; 4], n: u32) -> Option<usize> {
    let mut want: Vec<usize> = row
        .iter()
        .map(|l| lookup(complex, l).map(|x| x.1))
        .collect::<Option<_>>()?;
    want.sort_unstable();
    let Cp2Label::APyr { family, j, k, sup } = row[0] else {
        return None;
    };
    let (_, i) = lookup(complex, &four_cell(family, j as i64, k as i64, sup, n))?;
    (complex.cell(4, i).faces == want).then_some(i)
}

pub fn cp2_incidence_rules(n: u32) -> Vec<crate::chain::IncidenceRule> {
    use crate::chain::IncidenceRule as R;
    use CellKind::*;
    let n = n as usize;
    vec![
        R::new("quad in two A-pyramids", 2, 2)
            .faces_of_kind(Quad)
            .cofaces_of_kind(APyramid),
        R::new("quad in two B-pyramids", 2, 2)
            .faces_of_kind(Quad)
            .cofaces_of_kind(BPyramid),
        R::new("b-triangle in three A-pyramids", 2, 3)
            .faces_of_kind(BTriangle)
            .cofaces_of_kind(APyramid),
        R::new("h-triangle in four A-pyramids", 2, 4)
            .faces_of_kind(HTriangle)
            .cofaces_of_kind(APyramid),
        R::new("h-triangle in two B-pyramids", 2, 2)
            .faces_of_kind(HTriangle)
            .cofaces_of_kind(BPyramid),
        R::new("g-triangle in six B-pyramids", 2, 6).faces_of_kind(GTriangle),
        R::new("f-triangle in n A-pyramids", 2, n)
            .faces_of_kind(FTriangle)
            .cofaces_of_kind(APyramid),
        R::new("f-triangle in 2n B-pyramids", 2, 2 * n)
            .faces_of_kind(FTriangle)
            .cofaces_of_kind(BPyramid),
        R::new("3-cell in two 4-cells", 3, 2),
    ]
}

/// The W-cell index `(j, k)` whose row contains a given 4-cell.
pub fn w_cell_of(label: &Cp2Label, n: u32) -> Option<(Idx, Idx)> {
    let Cp2Label::FourCell { family, j, k, sup } = *label else {
        return None;
    };
    let ni = n as i64;
    for wj in 0..ni {
        for wk in 0..ni {
            let rows = w_divide(wj, wk, n);
            let hit = rows.iter().any(|r| {
                matches!(r[0], Cp2Label::APyr { family: f, j: a, k: b, sup: s } if f == family && a == j && b == k && s == sup)
            });
            if hit {
                return Some((wj as Idx, wk as Idx));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn faces_commute_with_rotation() {
        for n in 1..=4 {
            for d in 0..=4 {
                for l in cp2_cells(d, n) {
                    let mut a: Vec<Cp2Label> = cp2_faces(&l, n).iter().map(rotate).collect();
                    let mut b = cp2_faces(&rotate(&l), n);
                    a.sort();
                    b.sort();
                    assert_eq!(a, b, "{l}");
                }
            }
        }
    }

    #[test]
    fn a_pyramid_matches_displayed_face_set() {
        let n = 5;
        let (j, k) = (1, 3);
        let c = md(-j - k - 1, n);
        let got = cp2_faces(&a_pyr(Family::F01, j, k, ASup::One, n), n);
        let want: Vec<Cp2Label> = [
            "q(01,1,3)".to_string(),
            format!("b(1,3,{c},same)"),
            format!("h(12,3,{c})"),
            format!("h(20,{c},1)"),
            format!("f(2,{c},same)"),
        ]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn w_divide_rows_are_four_cells() {
        let n = 3;
        for j in 0..3 {
            for k in 0..3 {
                for row in w_divide(j, k, n) {
                    let Cp2Label::APyr {
                        family,
                        j: a,
                        k: b,
                        sup,
                    } = row[0]
                    else {
                        panic!()
                    };
                    assert_eq!(four_cell_pyramids(family, a as i64, b as i64, sup, n), row);
                }
            }
        }
    }
}
