//! The Fermat surface `F_n: z0^n + z1^n + z2^n + z3^n = 0` in CP^3 as an
//! n-fold cover of CP^2 branched over the curve `z3 = 0`, and the lifted
//! tessellation.
//!
//! Sheets. A lift of a cell off the branch curve is named by the sheet of
//! its least corner (`p01 < p12 < p20`), where the sheet of a corner lift
//! `[.., e^{i(pi + 2 s pi)/n}]` is `s`. Cells on the branch curve have one
//! lift and carry `sheet: None`.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fmt;

use crate::chain::{build_complex, euler_characteristic, CellComplex, CellTable, SpaceTag};
use crate::chart::Chart;
use crate::cp2::{boundary_shape, cp2_tessellation};
use crate::cp2_chart::{cp2_cell_chart, cp2_vertex_point};
use crate::error::{Error, Result};
use crate::label::{md, CellKind, CellLabel, Cp2Label, CurveLabel, Family, Idx, SurfaceLabel};
use crate::projective::{c, nth_root_branch, ProjectivePoint, C64};
use crate::report::ValidationReport;

// ---------------------------------------------------------------------------
// Vertices in the `pAB_k` vocabulary

/// `pAB_k`: the vertex with `z_A = z_B = 0`, whose two remaining
/// coordinates are `1` and `e^{i(pi + 2k pi)/n}` in that order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PVertex {
    pub zeros: (u8, u8),
    pub k: Idx,
}

impl fmt::Display for PVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}{}_{}", self.zeros.0, self.zeros.1, self.k)
    }
}

impl PVertex {
    pub fn new(a: u8, b: u8, k: i64, n: u32) -> PVertex {
        PVertex {
            zeros: (a.min(b), a.max(b)),
            k: md(k, n),
        }
    }

    /// The two nonzero coordinates, ascending.
    pub fn support(&self) -> (u8, u8) {
        let mut it = (0..4).filter(|i| *i != self.zeros.0 && *i != self.zeros.1);
        (it.next().expect("two"), it.next().expect("two"))
    }

    pub fn point(&self, n: u32) -> ProjectivePoint {
        let (a, b) = self.support();
        let mut z = vec![c(0.0, 0.0); 4];
        z[a as usize] = c(1.0, 0.0);
        z[b as usize] = crate::projective::root_of_minus_one(self.k as i64, n);
        ProjectivePoint::new(z).expect("nonzero")
    }

    /// Image under the coordinate permutation `i -> perm[i]`.
    pub fn permuted(&self, perm: [u8; 4], n: u32) -> PVertex {
        let (a, b) = self.support();
        let flip = perm[a as usize] > perm[b as usize];
        let k = if flip {
            -(self.k as i64) - 1
        } else {
            self.k as i64
        };
        PVertex::new(
            perm[self.zeros.0 as usize],
            perm[self.zeros.1 as usize],
            k,
            n,
        )
    }
}

/// `pAB_k` name of a vertex of the lifted complex.
pub fn vertex_name(label: &SurfaceLabel, n: u32) -> Result<PVertex> {
    let s = label.sheet.unwrap_or(0) as i64;
    Ok(match label.base {
        Cp2Label::Corner(Family::F01) => PVertex::new(0, 1, s, n),
        Cp2Label::Corner(Family::F12) => PVertex::new(1, 2, s, n),
        Cp2Label::Corner(Family::F20) => PVertex::new(0, 2, s, n),
        Cp2Label::Curve(CurveLabel::Vertex { family, k }) => match family {
            0 => PVertex::new(0, 3, k as i64, n),
            1 => PVertex::new(1, 3, -(k as i64) - 1, n),
            _ => PVertex::new(2, 3, k as i64, n),
        },
        _ => return Err(Error::UnknownLabel(label.to_string())),
    })
}

pub fn surface_vertex_point(label: &SurfaceLabel, n: u32) -> Result<ProjectivePoint> {
    Ok(vertex_name(label, n)?.point(n))
}

// ---------------------------------------------------------------------------
// Fiber continuation

fn fermat_sum(z: &[C64], n: u32) -> C64 {
    z.iter().take(3).map(|w| w.powu(n)).sum()
}

/// The sheet `s` with `z3 = nth_root_branch(-(z0^n+z1^n+z2^n), s)` for the
/// given representative.
pub fn fiber_sheet(base: &[C64], z3: C64, n: u32) -> Idx {
    let w = -fermat_sum(base, n);
    (0..n)
        .min_by(|&a, &b| {
            let da = (nth_root_branch(w, a as i64, n) - z3).norm();
            let db = (nth_root_branch(w, b as i64, n) - z3).norm();
            da.total_cmp(&db)
        })
        .unwrap_or(0)
}

fn hermitian(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Continue `z3` along `t -> path(t)`, `t in [0, 1]`, starting from the
/// value `z3` over the representative `path(0)`. Returns `z3` over the
/// representative `path(1)`.
///
/// Steps are halved until the tracked root moves less than `pi/(4n)` in
/// phase. Interior points within `1e-6` of the branch curve are an error.
pub fn continue_fiber<F>(path: F, z3: C64, n: u32) -> Result<C64>
where
    F: Fn(f64) -> Result<ProjectivePoint>,
{
    let max_turn = PI / (4.0 * n as f64);
    let start = path(0.0)?;
    let mut rep: Vec<C64> = start.coords().to_vec();
    let mut scale = C64::new(1.0, 0.0); // rep = scale * path(t)
    let mut z = z3;
    let mut t = 0.0f64;
    let mut h = 1.0f64 / 32.0;
    while t < 1.0 {
        let t1 = (t + h).min(1.0);
        let raw = path(t1)?;
        let raw = raw.coords();
        let ip = hermitian(raw, &rep);
        if ip.norm() == 0.0 {
            return Err(Error::PathHitsBranchLocus(vec![t1]));
        }
        let phase = ip / ip.norm();
        let next: Vec<C64> = raw.iter().map(|w| w * phase).collect();
        let norm = next.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
        let w = -fermat_sum(&next, n);
        let radius = w.norm().powf(1.0 / n as f64);
        if t1 < 1.0 && radius < 1e-6 * norm {
            return Err(Error::PathHitsBranchLocus(
                raw.iter().flat_map(|w| [w.re, w.im]).collect(),
            ));
        }
        if t1 >= 1.0 && w.norm() < 1e-9 * norm.powi(n as i32) {
            // endpoint on the branch curve, where the root amplifies rounding
            return Ok(c(0.0, 0.0));
        }
        let cand = (0..n)
            .map(|s| nth_root_branch(w, s as i64, n))
            .min_by(|a, b| (a - z).norm().total_cmp(&(b - z).norm()))
            .unwrap_or(z);
        let turn = if z.norm() > 1e-12 * norm && cand.norm() > 1e-12 * norm {
            (cand / z).arg().abs()
        } else {
            0.0
        };
        if turn > max_turn && h > 1e-10 {
            h /= 2.0;
            continue;
        }
        if turn > max_turn {
            return Err(Error::PathHitsBranchLocus(vec![t1]));
        }
        rep = next;
        scale = phase;
        z = cand;
        t = t1;
        h = (h * 2.0).min(1.0 / 16.0);
    }
    // z is over scale * path(1)
    Ok(z / scale)
}

/// `z3` over `rep` for the lift of a corner on sheet `s`.
fn z3_at_corner(corner: Family, s: Idx, rep: &[C64], n: u32) -> C64 {
    let m = corner.z() as usize;
    crate::projective::root_of_minus_one(s as i64, n) * rep[m]
}

/// Sheet change from the first to the second corner of `e_m,k`, by
/// continuing `z3` along the edge chart.
pub fn e_edge_transition(line: u8, k: Idx, n: u32) -> Result<i64> {
    let chart = cp2_cell_chart(&Cp2Label::EEdge { line, k }, n)?;
    let (first, second) = Family::corners_on_line(line);
    let rep0 = chart.eval(&[0.0])?;
    let z0 = z3_at_corner(first, 0, rep0.coords(), n);
    let z1 = continue_fiber(|t| chart.eval(&[t]), z0, n)?;
    let rep1 = chart.eval(&[1.0])?;
    let canon = cp2_vertex_point(&Cp2Label::Corner(second), n)?;
    let m = second.z() as usize;
    let ratio = canon.coords()[m] / rep1.coords()[m];
    Ok(fiber_sheet(canon.coords(), z1 * ratio, n) as i64)
}

/// Sheet offsets between corners, from continuation along the e-edges.
pub struct SheetAtlas {
    n: u32,
    /// `shift[m][k]`: sheet change along `e_m,k` from its first corner.
    shift: Vec<Vec<i64>>,
}

impl SheetAtlas {
    pub fn new(n: u32) -> Result<SheetAtlas> {
        let shift = (0..3u8)
            .map(|m| {
                (0..n)
                    .map(|k| e_edge_transition(m, k, n))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SheetAtlas { n, shift })
    }

    pub fn edge_shift(&self, line: u8, k: Idx) -> i64 {
        self.shift[line as usize][k as usize]
    }

    /// Sheet offset of every corner of a cell relative to its least corner,
    /// propagated along the e-edges of its closure.
    pub fn corner_offsets(
        &self,
        complex: &CellComplex,
        d: usize,
        i: usize,
    ) -> Result<BTreeMap<Family, i64>> {
        let closure = complex.closure(d, i);
        let mut corners = Vec::new();
        for &v in &closure[0] {
            if let CellLabel::Cp2(Cp2Label::Corner(f)) = complex.cell(0, v).label {
                corners.push(f);
            }
        }
        corners.sort();
        let mut out = BTreeMap::new();
        let Some(&first) = corners.first() else {
            return Ok(out);
        };
        out.insert(first, 0);
        let edges: Vec<(Family, Family, i64)> = closure
            .get(1)
            .map(|es| {
                es.iter()
                    .filter_map(|&e| match complex.cell(1, e).label {
                        CellLabel::Cp2(Cp2Label::EEdge { line, k }) => {
                            let (p, q) = Family::corners_on_line(line);
                            Some((p, q, self.edge_shift(line, k)))
                        }
                        _ => None,
                    })
                    .collect()
            })
            .unwrap_or_default();
        let mut changed = true;
        while changed {
            changed = false;
            for &(p, q, s) in &edges {
                for (a, b, s) in [(p, q, s), (q, p, -s)] {
                    let Some(&sa) = out.get(&a) else { continue };
                    let want = md(sa + s, self.n) as i64;
                    match out.get(&b) {
                        None => {
                            out.insert(b, want);
                            changed = true;
                        }
                        Some(&sb) if sb != want => {
                            return Err(Error::LiftInconsistent(
                                complex.cell(d, i).label.to_string(),
                                "e-edge sheet shifts disagree".into(),
                            ));
                        }
                        _ => {}
                    }
                }
            }
        }
        if out.len() != corners.len() {
            return Err(Error::LiftInconsistent(
                complex.cell(d, i).label.to_string(),
                "corners not joined by e-edges".into(),
            ));
        }
        Ok(out)
    }
}

fn least_corner(complex: &CellComplex, d: usize, i: usize) -> Option<Family> {
    complex.closure(d, i)[0]
        .iter()
        .filter_map(|&v| match complex.cell(0, v).label {
            CellLabel::Cp2(Cp2Label::Corner(f)) => Some(f),
            _ => None,
        })
        .min()
}

/// Sheet offset `delta`: the lift of `base` on sheet `s` has the lift of
/// `face` on sheet `s + delta`. Zero for faces on the branch curve.
pub fn lift_branch_transition(base: &Cp2Label, face: &Cp2Label, n: u32) -> Result<Idx> {
    let cp2 = cp2_tessellation(n)?;
    let (d, i) = cp2
        .find(&CellLabel::Cp2(*base))
        .ok_or_else(|| Error::UnknownLabel(base.to_string()))?;
    let (fd, fi) = cp2
        .find(&CellLabel::Cp2(*face))
        .ok_or_else(|| Error::UnknownLabel(face.to_string()))?;
    if fd + 1 != d || !cp2.cell(d, i).faces.contains(&fi) {
        return Err(Error::dangling(
            &CellLabel::Cp2(*base),
            &CellLabel::Cp2(*face),
        ));
    }
    if face.on_branch_locus() {
        return Ok(0);
    }
    let atlas = SheetAtlas::new(n)?;
    let offsets = atlas.corner_offsets(&cp2, d, i)?;
    let fc = least_corner(&cp2, fd, fi)
        .ok_or_else(|| Error::LiftInconsistent(face.to_string(), "no corner".into()))?;
    Ok(md(offsets[&fc], n))
}

// ---------------------------------------------------------------------------
// The lifted complex

fn lifted(base: Cp2Label, sheet: Option<i64>, n: u32) -> CellLabel {
    CellLabel::Surface(SurfaceLabel {
        base,
        sheet: sheet.map(|s| md(s, n)),
    })
}

pub fn surface_table(n: u32) -> Result<CellTable> {
    let cp2 = cp2_tessellation(n)?;
    let atlas = SheetAtlas::new(n)?;
    let mut table: CellTable = vec![Vec::new(); cp2.top_dim() + 1];
    for (d, level) in table.iter_mut().enumerate() {
        for (i, cell) in cp2.cells(d).iter().enumerate() {
            let CellLabel::Cp2(base) = cell.label else {
                unreachable!()
            };
            if base.on_branch_locus() {
                let faces = cell
                    .faces
                    .iter()
                    .map(|&f| {
                        let CellLabel::Cp2(fl) = cp2.cell(d - 1, f).label else {
                            unreachable!()
                        };
                        lifted(fl, None, n)
                    })
                    .collect();
                level.push((lifted(base, None, n), faces));
                continue;
            }
            let offsets = atlas.corner_offsets(&cp2, d, i)?;
            for s in 0..n as i64 {
                let mut faces = Vec::with_capacity(cell.faces.len());
                for &f in &cell.faces {
                    let CellLabel::Cp2(fl) = cp2.cell(d - 1, f).label else {
                        unreachable!()
                    };
                    if fl.on_branch_locus() {
                        faces.push(lifted(fl, None, n));
                    } else {
                        let fc = least_corner(&cp2, d - 1, f).ok_or_else(|| {
                            Error::LiftInconsistent(fl.to_string(), "no corner".into())
                        })?;
                        faces.push(lifted(fl, Some(s + offsets[&fc]), n));
                    }
                }
                level.push((lifted(base, Some(s), n), faces));
            }
        }
    }
    Ok(table)
}

pub fn surface_tessellation(n: u32) -> Result<CellComplex> {
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    build_complex(n, SpaceTag::Surface, surface_table(n)?)
}

/// Counts `(6n, 12n^2, 8n^2 + 7n^3, 12n^3, 6n^3)`.
pub fn surface_counts(n: u32) -> Vec<usize> {
    let n = n as usize;
    vec![
        6 * n,
        12 * n * n,
        8 * n * n + 7 * n * n * n,
        12 * n * n * n,
        6 * n * n * n,
    ]
}

/// `6n - 4n^2 + n^3`.
pub fn surface_euler(n: u32) -> i64 {
    let n = n as i64;
    6 * n - 4 * n * n + n * n * n
}

// ---------------------------------------------------------------------------
// Cell lists from the congruence rules

fn transposition(a: u8, b: u8) -> [u8; 4] {
    let mut p = [0, 1, 2, 3];
    p.swap(a as usize, b as usize);
    p
}

fn sorted(mut v: Vec<PVertex>) -> Vec<PVertex> {
    v.sort();
    v
}

/// Vertex sets of the cells of one dimension, built from the explicit
/// rules for vertices, edges and 2-cells; `None` for dimensions 3 and 4,
/// which have no closed-form list.
pub fn enumerate_surface_cells(n: u32, dim: usize) -> Result<Option<Vec<Vec<PVertex>>>> {
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let ni = n as i64;
    let p = |a, b, k| PVertex::new(a, b, k, n);
    let mut out: Vec<Vec<PVertex>> = Vec::new();
    match dim {
        0 => {
            for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
                out.extend((0..ni).map(|k| vec![p(a, b, k)]));
            }
        }
        1 => {
            // every pair of vertex types sharing a zero coordinate, all indices
            for plane in 0..4u8 {
                let others: Vec<u8> = (0..4).filter(|x| *x != plane).collect();
                for (x, y) in [(0, 1), (0, 2), (1, 2)] {
                    for i in 0..ni {
                        for j in 0..ni {
                            out.push(sorted(vec![p(plane, others[x], i), p(plane, others[y], j)]));
                        }
                    }
                }
            }
        }
        2 => {
            let mut planar = Vec::new();
            for i in 0..ni {
                for j in 0..ni {
                    for k in 0..ni {
                        // at n = 1 both congruences hold: two triangles
                        for target in [0, -1] {
                            if md(i - j + k - target, n) == 0 {
                                planar.push(vec![p(0, 1, i), p(0, 2, j), p(0, 3, k)]);
                            }
                        }
                    }
                }
            }
            for plane in 0..4u8 {
                let perm = transposition(0, plane);
                out.extend(
                    planar
                        .iter()
                        .map(|t| sorted(t.iter().map(|v| v.permuted(perm, n)).collect())),
                );
            }
            // three sides on three different planes: every index triple
            for skip in 0..4u8 {
                let pl: Vec<u8> = (0..4).filter(|x| *x != skip).collect();
                for i in 0..ni {
                    for j in 0..ni {
                        for k in 0..ni {
                            out.push(sorted(vec![
                                p(pl[0], pl[1], i),
                                p(pl[0], pl[2], j),
                                p(pl[1], pl[2], k),
                            ]));
                        }
                    }
                }
            }
            let mut rect = Vec::new();
            for i in 0..ni {
                for j in 0..ni {
                    for k in 0..ni {
                        let l = i - j + k;
                        rect.push(vec![p(0, 2, i), p(0, 3, j), p(1, 3, k), p(1, 2, l)]);
                    }
                }
            }
            for m in 1..4u8 {
                let perm = transposition(1, m);
                out.extend(
                    rect.iter()
                        .map(|r| sorted(r.iter().map(|v| v.permuted(perm, n)).collect())),
                );
            }
        }
        3 | 4 => return Ok(None),
        _ => return Err(Error::DimensionMismatch(4, dim)),
    }
    out.sort();
    Ok(Some(out))
}

/// Vertex sets of the lifted cells of one dimension, in the `pAB_k` names.
pub fn surface_vertex_sets(complex: &CellComplex, d: usize) -> Result<Vec<Vec<PVertex>>> {
    let n = complex.n();
    let mut out = Vec::with_capacity(complex.count(d));
    for i in 0..complex.count(d) {
        let mut vs = Vec::new();
        for v in complex.vertices_of(d, i) {
            let CellLabel::Surface(l) = &complex.cell(0, v).label else {
                return Err(Error::UnknownLabel(complex.cell(0, v).label.to_string()));
            };
            vs.push(vertex_name(l, n)?);
        }
        vs.sort();
        out.push(vs);
    }
    out.sort();
    Ok(out)
}

/// Coordinate plane `z_c = 0` containing an edge, from its endpoints.
fn edge_plane(a: &PVertex, b: &PVertex) -> Option<u8> {
    let za = [a.zeros.0, a.zeros.1];
    let zb = [b.zeros.0, b.zeros.1];
    let common: Vec<u8> = za.iter().copied().filter(|x| zb.contains(x)).collect();
    (common.len() == 1).then(|| common[0])
}

fn surface_kind(l: &CellLabel) -> CellKind {
    l.kind()
}

/// Structural checks of the lifted tessellation.
pub fn verify_surface_structure(complex: &CellComplex, n: u32) -> ValidationReport {
    let mut report = ValidationReport::new();
    report.assert(
        "cell counts",
        complex.counts() == surface_counts(n),
        format!("{:?}", complex.counts()),
    );
    report.assert(
        "euler characteristic",
        euler_characteristic(complex) == surface_euler(n),
        format!("chi = {}", euler_characteristic(complex)),
    );
    // (a) congruence lists
    for d in 0..=2 {
        let name = ["vertex list", "edge list", "2-cell list"][d];
        match (
            enumerate_surface_cells(n, d),
            surface_vertex_sets(complex, d),
        ) {
            (Ok(Some(want)), Ok(got)) => {
                let (missing, extra) = multiset_difference(&want, &got);
                let mut bad: Vec<String> = missing
                    .into_iter()
                    .map(|s| format!("missing {s}"))
                    .collect();
                bad.extend(extra.into_iter().map(|s| format!("unexpected {s}")));
                if want.len() != got.len() {
                    bad.push(format!("{} listed, {} lifted", want.len(), got.len()));
                }
                report.push(name, bad, "lift matches the congruence rules");
            }
            (Err(e), _) | (_, Err(e)) => report.push(
                name,
                vec![e.to_string()],
                "lift matches the congruence rules",
            ),
            _ => {}
        }
    }
    // (b) rectangles in four pyramids, two of each kind
    let cof = complex.cofaces(2);
    let mut rect_bad = Vec::new();
    let mut quads = 0;
    for (i, cell) in complex.cells(2).iter().enumerate() {
        if surface_kind(&cell.label) != CellKind::Quad {
            continue;
        }
        quads += 1;
        let kinds: Vec<CellKind> = cof[i]
            .iter()
            .map(|&p| surface_kind(&complex.cell(3, p).label))
            .collect();
        let a = kinds.iter().filter(|k| **k == CellKind::APyramid).count();
        let b = kinds.iter().filter(|k| **k == CellKind::BPyramid).count();
        if a != 2 || b != 2 || kinds.len() != 4 {
            rect_bad.push(format!("{} in {} pyramids", cell.label, kinds.len()));
        }
    }
    report.push(
        "rectangle in four pyramids",
        rect_bad,
        format!("{quads} rectangles"),
    );
    let tri = complex.count(2) - quads;
    report.assert(
        "quadrilateral/triangle split",
        quads == 3 * (n as usize).pow(3)
            && tri == 8 * (n as usize).pow(2) + 4 * (n as usize).pow(3),
        format!("{quads} rectangles, {tri} triangles"),
    );
    // (c) pyramids in two 4-cells
    let cof3 = complex.cofaces(3);
    let bad: Vec<String> = cof3
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() != 2)
        .map(|(i, c)| format!("{} in {} 4-cells", complex.cell(3, i).label, c.len()))
        .collect();
    report.push("pyramid in two 4-cells", bad, "");
    // pyramids: one rectangle and four triangles
    let mut pyr_bad = Vec::new();
    for (i, cell) in complex.cells(3).iter().enumerate() {
        let q = cell
            .faces
            .iter()
            .filter(|&&f| surface_kind(&complex.cell(2, f).label) == CellKind::Quad)
            .count();
        if q != 1 || cell.faces.len() != 5 {
            pyr_bad.push(format!(
                "{}: {} faces, {q} rectangles",
                cell.label,
                cell.faces.len()
            ));
        } else if let Some(m) = boundary_shape(complex, 3, i, &[5, 8, 5], 2) {
            pyr_bad.push(m);
        }
    }
    report.push(
        "pyramid shape",
        pyr_bad,
        "one rectangle, four triangles, boundary a 2-sphere",
    );
    // (d) 4-cell boundaries
    let mut four_bad = Vec::new();
    for i in 0..complex.count(4) {
        if complex.cell(4, i).faces.len() != 4 {
            four_bad.push(format!(
                "{}: {} faces",
                complex.cell(4, i).label,
                complex.cell(4, i).faces.len()
            ));
        } else if let Some(m) = boundary_shape(complex, 4, i, &[6, 12, 10, 4], 0) {
            four_bad.push(m);
        }
    }
    report.push(
        "4-cell boundaries",
        four_bad,
        "6 vertices, 12 edges, 10 2-cells, 4 pyramids, closed, chi 0",
    );
    // (e) cross triangles
    let mut cross_bad = Vec::new();
    let mut cross = 0;
    if let Ok(sets) = surface_vertex_sets(complex, 2) {
        for vs in sets.iter().filter(|v| v.len() == 3) {
            let planes: BTreeSet<Option<u8>> = [(0, 1), (0, 2), (1, 2)]
                .iter()
                .map(|&(a, b)| edge_plane(&vs[a], &vs[b]))
                .collect();
            if planes.contains(&None) {
                cross_bad.push(format!(
                    "{} has a side off the coordinate planes",
                    fmt_set(vs)
                ));
            } else if planes.len() == 3 {
                cross += 1;
            } else if planes.len() != 1 {
                cross_bad.push(format!(
                    "{} has sides on {} planes",
                    fmt_set(vs),
                    planes.len()
                ));
            }
        }
    }
    report.push(
        "cross triangles",
        cross_bad,
        format!("{cross} triangles with sides on three planes, the rest planar"),
    );
    report.assert(
        "cross triangle count",
        cross == 4 * (n as usize).pow(3),
        format!("{cross}"),
    );
    report
}

/// Elements of sorted `a` not matched in sorted `b`, and vice versa.
fn multiset_difference(a: &[Vec<PVertex>], b: &[Vec<PVertex>]) -> (Vec<String>, Vec<String>) {
    let (mut i, mut j) = (0, 0);
    let (mut only_a, mut only_b) = (Vec::new(), Vec::new());
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                only_a.push(fmt_set(x));
                i += 1;
            }
            (Some(x), None) => {
                only_a.push(fmt_set(x));
                i += 1;
            }
            (_, Some(y)) => {
                only_b.push(fmt_set(y));
                j += 1;
            }
            (None, None) => break,
        }
    }
    only_a.truncate(5);
    only_b.truncate(5);
    (only_a, only_b)
}

fn fmt_set(v: &[PVertex]) -> String {
    let parts: Vec<String> = v.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

// ---------------------------------------------------------------------------
// Lifted charts

/// Chart of a lifted cell: the base chart with `z3` appended, continued
/// from the cell's least corner on its sheet. Cells on the branch curve get
/// `z3 = 0`.
pub fn surface_cell_chart(label: &SurfaceLabel, n: u32) -> Result<Chart> {
    let base = cp2_cell_chart(&label.base, n)?;
    let out_label = CellLabel::Surface(*label);
    let lift_corner = |v: &CellLabel, sheet: Option<Idx>| -> CellLabel {
        match v {
            CellLabel::Cp2(b) if b.on_branch_locus() => CellLabel::Surface(SurfaceLabel {
                base: *b,
                sheet: None,
            }),
            CellLabel::Cp2(b) => CellLabel::Surface(SurfaceLabel { base: *b, sheet }),
            other => other.clone(),
        }
    };
    let Some(sheet) = label.sheet else {
        let mut ch = base.post_compose(out_label, |p| {
            let mut z = p.coords().to_vec();
            z.push(c(0.0, 0.0));
            ProjectivePoint::new(z)
        });
        for (_, v) in ch.corners.iter_mut() {
            *v = lift_corner(v, None);
        }
        return Ok(ch);
    };
    let (origin, first) = base
        .corners
        .iter()
        .filter_map(|(at, v)| match v {
            CellLabel::Cp2(Cp2Label::Corner(f)) => Some((at.clone(), *f)),
            _ => None,
        })
        .min_by_key(|(_, f)| *f)
        .ok_or_else(|| Error::ChartUnavailable(label.to_string()))?;
    // sheets of the other corners relative to the first
    let offsets: BTreeMap<Family, i64> = if base
        .corners
        .iter()
        .filter(|(_, v)| matches!(v, CellLabel::Cp2(Cp2Label::Corner(_))))
        .count()
        > 1
    {
        let cp2 = cp2_tessellation(n)?;
        let (d, i) = cp2
            .find(&CellLabel::Cp2(label.base))
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        SheetAtlas::new(n)?.corner_offsets(&cp2, d, i)?
    } else {
        BTreeMap::from([(first, 0)])
    };
    let inner = base.clone();
    let start = inner.eval(&origin)?;
    let z_start = z3_at_corner(first, sheet, start.coords(), n);
    let mut ch = base.post_compose(out_label, Ok);
    let o2 = origin.clone();
    let ch_map = move |x: &[f64]| -> Result<ProjectivePoint> {
        let seg = |t: f64| -> Result<ProjectivePoint> {
            let y: Vec<f64> = o2.iter().zip(x).map(|(a, b)| a + t * (b - a)).collect();
            inner.eval(&y)
        };
        let end = seg(1.0)?;
        let z3 = continue_fiber(seg, z_start, n)?;
        let mut z = end.coords().to_vec();
        z.push(z3);
        ProjectivePoint::new(z)
    };
    let corners: Vec<(Vec<f64>, CellLabel)> = ch
        .corners
        .iter()
        .map(|(at, v)| {
            let s = match v {
                CellLabel::Cp2(Cp2Label::Corner(f)) => {
                    offsets.get(f).map(|o| md(sheet as i64 + o, n))
                }
                _ => Some(sheet),
            };
            (at.clone(), lift_corner(v, s))
        })
        .collect();
    let meta = ch.meta.clone();
    ch = Chart::new(ch.label.clone(), ch.dim, ch_map).with_meta(crate::chart::ChartMeta {
        sheet: Some(sheet as i64),
        ..meta
    });
    for (at, v) in corners {
        ch = ch.with_corner(at, v);
    }
    Ok(ch)
}
