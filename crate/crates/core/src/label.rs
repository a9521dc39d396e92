//! Symbolic cell labels for every tessellation level.
//!
//! Labels carry all indices reduced modulo `n`. Their derived `Ord` is the
//! canonical ordering used to assign cell ids: cells of one dimension are
//! sorted by label, so the variant order below is part of the on-disk format.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Index modulo the degree `n`.
pub type Idx = u32;

/// Reduce a signed integer modulo `n` into `0..n`.
#[inline]
pub fn md(x: i64, n: u32) -> Idx {
    x.rem_euclid(n as i64) as Idx
}

/// Which of the two triangles `f_k^k` / `f_{k+1}^k` over a root `p_k`.
///
/// `Same` uses the edge `e_k`, `Next` uses `e_{k+1}`. For lifted curve
/// triangles `Same` is the index class summing to `-1` and `Next` the class
/// summing to `-2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Same,
    Next,
}

impl Side {
    /// Offset of the e-edge index relative to the root index.
    pub fn offset(self) -> i64 {
        match self {
            Side::Same => 0,
            Side::Next => 1,
        }
    }
}

/// An ordered pair `XY` of coordinate families, cyclically `01`, `12`, `20`.
///
/// Used both for curve edges `pX_a -- pY_b` and for the corner vertex `pXY`
/// of the CP^2 tessellation, which lies on the lines `L_X` and `L_Y` and has
/// only the coordinate `Z` nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    F01,
    F12,
    F20,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::F01, Family::F12, Family::F20];

    pub fn x(self) -> u8 {
        match self {
            Family::F01 => 0,
            Family::F12 => 1,
            Family::F20 => 2,
        }
    }

    pub fn y(self) -> u8 {
        (self.x() + 1) % 3
    }

    pub fn z(self) -> u8 {
        (self.x() + 2) % 3
    }

    /// The family whose `x` is the given coordinate.
    pub fn starting_at(x: u8) -> Family {
        match x % 3 {
            0 => Family::F01,
            1 => Family::F12,
            _ => Family::F20,
        }
    }

    /// Cyclic successor `01 -> 12 -> 20 -> 01`.
    pub fn succ(self) -> Family {
        Family::starting_at(self.x() + 1)
    }

    /// Corner vertex whose only nonzero coordinate is `c`.
    pub fn corner_with_nonzero(c: u8) -> Family {
        Family::starting_at(c + 1)
    }

    /// The two corners lying on the line `L_m`, ordered as the CP^1 poles
    /// `(p1, p0)`: first the one with coordinate `m+1` nonzero, then `m+2`.
    pub fn corners_on_line(m: u8) -> (Family, Family) {
        (
            Family::corner_with_nonzero((m + 1) % 3),
            Family::corner_with_nonzero((m + 2) % 3),
        )
    }

    pub fn lies_on_line(self, m: u8) -> bool {
        self.x() == m || self.y() == m
    }

    fn as_str(self) -> &'static str {
        match self {
            Family::F01 => "01",
            Family::F12 => "12",
            Family::F20 => "20",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Superscript of the first pyramid group and of 4-cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ASup {
    One,
    Two,
}

/// Superscript of the second pyramid group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BSup {
    S01,
    S10,
}

/// Cells of the CP^1 tessellation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cp1Label {
    /// `p0 = [0,1]` (pole 0) or `p1 = [1,0]` (pole 1).
    Pole(u8),
    Root(Idx),
    EEdge(Idx),
    PoleRoot {
        pole: u8,
        k: Idx,
    },
    Triangle {
        k: Idx,
        side: Side,
    },
}

impl Cp1Label {
    pub fn dim(&self) -> usize {
        match self {
            Cp1Label::Pole(_) | Cp1Label::Root(_) => 0,
            Cp1Label::EEdge(_) | Cp1Label::PoleRoot { .. } => 1,
            Cp1Label::Triangle { .. } => 2,
        }
    }
}

/// Cells of the triangulated Fermat curve `S_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveLabel {
    /// `p0_k`, `p1_k` or `p2_k`.
    Vertex { family: u8, k: Idx },
    /// Edge `pX_a -- pY_b`.
    Edge { family: Family, a: Idx, b: Idx },
    /// `b_{a,b,c}` with vertices `p0_a, p1_b, p2_c`.
    Triangle { idx: [Idx; 3], side: Side },
}

impl CurveLabel {
    pub fn dim(&self) -> usize {
        match self {
            CurveLabel::Vertex { .. } => 0,
            CurveLabel::Edge { .. } => 1,
            CurveLabel::Triangle { .. } => 2,
        }
    }

    /// Triangle `b_{a,b,c}` with `c` fixed by the side class.
    pub fn triangle(a: i64, b: i64, side: Side, n: u32) -> CurveLabel {
        let c = -a - b - 1 - side.offset();
        CurveLabel::Triangle {
            idx: [md(a, n), md(b, n), md(c, n)],
            side,
        }
    }
}

/// Cells of the CP^2 tessellation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cp2Label {
    /// `p01`, `p12`, `p20`.
    Corner(Family),
    /// Vertices, edges and `b` triangles lying on `S_n`.
    Curve(CurveLabel),
    /// `em_k` on the line `L_m`, joining its two corners.
    EEdge { line: u8, k: Idx },
    /// Geodesic from a corner to the root `pm_k` on a line `L_m` through it.
    CornerRoot { corner: Family, line: u8, k: Idx },
    /// `fm_k^k` (`Same`) or `fm_{k+1}^k` (`Next`).
    FTri { line: u8, k: Idx, side: Side },
    /// `hXY_{jk}`: cone from the corner `pXY` over the curve edge `pX_j -- pY_k`.
    HTri { family: Family, j: Idx, k: Idx },
    /// `g_{a,b,c}` with edges `e0_a, e1_b, e2_c`, `a+b+c = 0`.
    GTri { idx: [Idx; 3] },
    /// `qXY_{jk}`, the quadrilateral on the curve edge `pX_j -- pY_k`.
    Quad { family: Family, j: Idx, k: Idx },
    APyr {
        family: Family,
        j: Idx,
        k: Idx,
        sup: ASup,
    },
    BPyr {
        family: Family,
        j: Idx,
        k: Idx,
        sup: BSup,
    },
    /// 4-cell keyed by the first A-pyramid of its row `{A, A', B, B'}`.
    FourCell {
        family: Family,
        j: Idx,
        k: Idx,
        sup: ASup,
    },
}

impl Cp2Label {
    pub fn dim(&self) -> usize {
        match self {
            Cp2Label::Corner(_) => 0,
            Cp2Label::Curve(c) => c.dim(),
            Cp2Label::EEdge { .. } | Cp2Label::CornerRoot { .. } => 1,
            Cp2Label::FTri { .. }
            | Cp2Label::HTri { .. }
            | Cp2Label::GTri { .. }
            | Cp2Label::Quad { .. } => 2,
            Cp2Label::APyr { .. } | Cp2Label::BPyr { .. } => 3,
            Cp2Label::FourCell { .. } => 4,
        }
    }

    /// Cells contained in the branch curve `S_n`.
    pub fn on_branch_locus(&self) -> bool {
        matches!(self, Cp2Label::Curve(_))
    }

    /// Short kind tag used by incidence rules and reports.
    pub fn kind(&self) -> CellKind {
        match self {
            Cp2Label::Corner(_) => CellKind::Corner,
            Cp2Label::Curve(CurveLabel::Vertex { .. }) => CellKind::CurveVertex,
            Cp2Label::Curve(CurveLabel::Edge { .. }) => CellKind::CurveEdge,
            Cp2Label::Curve(CurveLabel::Triangle { .. }) => CellKind::BTriangle,
            Cp2Label::EEdge { .. } => CellKind::EEdge,
            Cp2Label::CornerRoot { .. } => CellKind::CornerRootEdge,
            Cp2Label::FTri { .. } => CellKind::FTriangle,
            Cp2Label::HTri { .. } => CellKind::HTriangle,
            Cp2Label::GTri { .. } => CellKind::GTriangle,
            Cp2Label::Quad { .. } => CellKind::Quad,
            Cp2Label::APyr { .. } => CellKind::APyramid,
            Cp2Label::BPyr { .. } => CellKind::BPyramid,
            Cp2Label::FourCell { .. } => CellKind::FourCell,
        }
    }
}

/// A cell of the Fermat surface: a CP^2 cell together with its sheet.
///
/// Cells on the branch curve have a single lift and carry `sheet: None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceLabel {
    pub base: Cp2Label,
    pub sheet: Option<Idx>,
}

/// Coarse classification of cells, independent of indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellKind {
    Pole,
    Root,
    Corner,
    CurveVertex,
    CurveEdge,
    BTriangle,
    EEdge,
    PoleRootEdge,
    CornerRootEdge,
    Cp1Triangle,
    FTriangle,
    HTriangle,
    GTriangle,
    Quad,
    APyramid,
    BPyramid,
    FourCell,
    Named,
}

/// Identity of a cell in any of the supported complexes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellLabel {
    Cp1(Cp1Label),
    Curve(CurveLabel),
    Cp2(Cp2Label),
    Surface(SurfaceLabel),
    /// Free-form label for hand-built complexes.
    Named(String),
}

impl CellLabel {
    pub fn named(s: impl Into<String>) -> CellLabel {
        CellLabel::Named(s.into())
    }

    pub fn kind(&self) -> CellKind {
        match self {
            CellLabel::Cp1(l) => match l {
                Cp1Label::Pole(_) => CellKind::Pole,
                Cp1Label::Root(_) => CellKind::Root,
                Cp1Label::EEdge(_) => CellKind::EEdge,
                Cp1Label::PoleRoot { .. } => CellKind::PoleRootEdge,
                Cp1Label::Triangle { .. } => CellKind::Cp1Triangle,
            },
            CellLabel::Curve(c) => Cp2Label::Curve(*c).kind(),
            CellLabel::Cp2(c) => c.kind(),
            CellLabel::Surface(s) => s.base.kind(),
            CellLabel::Named(_) => CellKind::Named,
        }
    }

    pub fn as_cp2(&self) -> Option<&Cp2Label> {
        match self {
            CellLabel::Cp2(l) => Some(l),
            _ => None,
        }
    }

    pub fn as_surface(&self) -> Option<&SurfaceLabel> {
        match self {
            CellLabel::Surface(l) => Some(l),
            _ => None,
        }
    }
}

fn side_str(s: Side) -> &'static str {
    match s {
        Side::Same => "same",
        Side::Next => "next",
    }
}

impl fmt::Display for Cp1Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Cp1Label::Pole(p) => write!(f, "pole({p})"),
            Cp1Label::Root(k) => write!(f, "root({k})"),
            Cp1Label::EEdge(k) => write!(f, "e({k})"),
            Cp1Label::PoleRoot { pole, k } => write!(f, "pr({pole},{k})"),
            Cp1Label::Triangle { k, side } => write!(f, "f({k},{})", side_str(side)),
        }
    }
}

impl fmt::Display for CurveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CurveLabel::Vertex { family, k } => write!(f, "v({family},{k})"),
            CurveLabel::Edge { family, a, b } => write!(f, "c({family},{a},{b})"),
            CurveLabel::Triangle { idx, side } => {
                write!(f, "b({},{},{},{})", idx[0], idx[1], idx[2], side_str(side))
            }
        }
    }
}

impl fmt::Display for Cp2Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Cp2Label::Corner(c) => write!(f, "corner({c})"),
            Cp2Label::Curve(c) => c.fmt(f),
            Cp2Label::EEdge { line, k } => write!(f, "e({line},{k})"),
            Cp2Label::CornerRoot { corner, line, k } => write!(f, "cr({corner},{line},{k})"),
            Cp2Label::FTri { line, k, side } => write!(f, "f({line},{k},{})", side_str(side)),
            Cp2Label::HTri { family, j, k } => write!(f, "h({family},{j},{k})"),
            Cp2Label::GTri { idx } => write!(f, "g({},{},{})", idx[0], idx[1], idx[2]),
            Cp2Label::Quad { family, j, k } => write!(f, "q({family},{j},{k})"),
            Cp2Label::APyr { family, j, k, sup } => {
                let s = if sup == ASup::One { 1 } else { 2 };
                write!(f, "A({family},{j},{k},{s})")
            }
            Cp2Label::BPyr { family, j, k, sup } => {
                let s = if sup == BSup::S01 { "01" } else { "10" };
                write!(f, "B({family},{j},{k},{s})")
            }
            Cp2Label::FourCell { family, j, k, sup } => {
                let s = if sup == ASup::One { 1 } else { 2 };
                write!(f, "W4({family},{j},{k},{s})")
            }
        }
    }
}

impl fmt::Display for SurfaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sheet {
            Some(s) => write!(f, "{}@{}", self.base, s),
            None => write!(f, "{}@*", self.base),
        }
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellLabel::Cp1(l) => l.fmt(f),
            CellLabel::Curve(l) => l.fmt(f),
            CellLabel::Cp2(l) => l.fmt(f),
            CellLabel::Surface(l) => l.fmt(f),
            CellLabel::Named(s) => write!(f, "~{s}"),
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing

struct Call<'a> {
    name: &'a str,
    args: Vec<&'a str>,
}

fn split_call(s: &str) -> Result<Call<'_>> {
    let bad = || Error::BadLabel(s.to_string());
    let open = s.find('(').ok_or_else(bad)?;
    if !s.ends_with(')') {
        return Err(bad());
    }
    let name = &s[..open];
    let inner = &s[open + 1..s.len() - 1];
    let args = if inner.is_empty() {
        Vec::new()
    } else {
        inner.split(',').collect()
    };
    Ok(Call { name, args })
}

impl Call<'_> {
    fn expect(&self, count: usize, whole: &str) -> Result<()> {
        if self.args.len() == count {
            Ok(())
        } else {
            Err(Error::BadLabel(whole.to_string()))
        }
    }
}

fn num(s: &str, whole: &str) -> Result<u32> {
    s.parse::<u32>()
        .map_err(|_| Error::BadLabel(whole.to_string()))
}

fn small(s: &str, max: u8, whole: &str) -> Result<u8> {
    let v = num(s, whole)?;
    if v > max as u32 {
        return Err(Error::BadLabel(whole.to_string()));
    }
    Ok(v as u8)
}

fn family(s: &str, whole: &str) -> Result<Family> {
    match s {
        "01" => Ok(Family::F01),
        "12" => Ok(Family::F12),
        "20" => Ok(Family::F20),
        _ => Err(Error::BadLabel(whole.to_string())),
    }
}

fn side(s: &str, whole: &str) -> Result<Side> {
    match s {
        "same" => Ok(Side::Same),
        "next" => Ok(Side::Next),
        _ => Err(Error::BadLabel(whole.to_string())),
    }
}

impl FromStr for Cp1Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let c = split_call(s)?;
        let l = match c.name {
            "pole" => {
                c.expect(1, s)?;
                Cp1Label::Pole(small(c.args[0], 1, s)?)
            }
            "root" => {
                c.expect(1, s)?;
                Cp1Label::Root(num(c.args[0], s)?)
            }
            "e" => {
                c.expect(1, s)?;
                Cp1Label::EEdge(num(c.args[0], s)?)
            }
            "pr" => {
                c.expect(2, s)?;
                Cp1Label::PoleRoot {
                    pole: small(c.args[0], 1, s)?,
                    k: num(c.args[1], s)?,
                }
            }
            "f" => {
                c.expect(2, s)?;
                Cp1Label::Triangle {
                    k: num(c.args[0], s)?,
                    side: side(c.args[1], s)?,
                }
            }
            _ => return Err(Error::BadLabel(s.to_string())),
        };
        Ok(l)
    }
}

fn parse_curve_call(c: &Call<'_>, s: &str) -> Result<Option<CurveLabel>> {
    let l = match c.name {
        "v" => {
            c.expect(2, s)?;
            CurveLabel::Vertex {
                family: small(c.args[0], 2, s)?,
                k: num(c.args[1], s)?,
            }
        }
        "c" => {
            c.expect(3, s)?;
            CurveLabel::Edge {
                family: family(c.args[0], s)?,
                a: num(c.args[1], s)?,
                b: num(c.args[2], s)?,
            }
        }
        "b" => {
            c.expect(4, s)?;
            CurveLabel::Triangle {
                idx: [num(c.args[0], s)?, num(c.args[1], s)?, num(c.args[2], s)?],
                side: side(c.args[3], s)?,
            }
        }
        _ => return Ok(None),
    };
    Ok(Some(l))
}

impl FromStr for CurveLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let c = split_call(s)?;
        parse_curve_call(&c, s)?.ok_or_else(|| Error::BadLabel(s.to_string()))
    }
}

impl FromStr for Cp2Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let c = split_call(s)?;
        if let Some(curve) = parse_curve_call(&c, s)? {
            return Ok(Cp2Label::Curve(curve));
        }
        let asup = |v: &str| match v {
            "1" => Ok(ASup::One),
            "2" => Ok(ASup::Two),
            _ => Err(Error::BadLabel(s.to_string())),
        };
        let l = match c.name {
            "corner" => {
                c.expect(1, s)?;
                Cp2Label::Corner(family(c.args[0], s)?)
            }
            "e" => {
                c.expect(2, s)?;
                Cp2Label::EEdge {
                    line: small(c.args[0], 2, s)?,
                    k: num(c.args[1], s)?,
                }
            }
            "cr" => {
                c.expect(3, s)?;
                Cp2Label::CornerRoot {
                    corner: family(c.args[0], s)?,
                    line: small(c.args[1], 2, s)?,
                    k: num(c.args[2], s)?,
                }
            }
            "f" => {
                c.expect(3, s)?;
                Cp2Label::FTri {
                    line: small(c.args[0], 2, s)?,
                    k: num(c.args[1], s)?,
                    side: side(c.args[2], s)?,
                }
            }
            "h" | "q" => {
                c.expect(3, s)?;
                let (fam, j, k) = (
                    family(c.args[0], s)?,
                    num(c.args[1], s)?,
                    num(c.args[2], s)?,
                );
                if c.name == "h" {
                    Cp2Label::HTri { family: fam, j, k }
                } else {
                    Cp2Label::Quad { family: fam, j, k }
                }
            }
            "g" => {
                c.expect(3, s)?;
                Cp2Label::GTri {
                    idx: [num(c.args[0], s)?, num(c.args[1], s)?, num(c.args[2], s)?],
                }
            }
            "A" | "W4" => {
                c.expect(4, s)?;
                let (fam, j, k) = (
                    family(c.args[0], s)?,
                    num(c.args[1], s)?,
                    num(c.args[2], s)?,
                );
                let sup = asup(c.args[3])?;
                if c.name == "A" {
                    Cp2Label::APyr {
                        family: fam,
                        j,
                        k,
                        sup,
                    }
                } else {
                    Cp2Label::FourCell {
                        family: fam,
                        j,
                        k,
                        sup,
                    }
                }
            }
            "B" => {
                c.expect(4, s)?;
                let sup = match c.args[3] {
                    "01" => BSup::S01,
                    "10" => BSup::S10,
                    _ => return Err(Error::BadLabel(s.to_string())),
                };
                Cp2Label::BPyr {
                    family: family(c.args[0], s)?,
                    j: num(c.args[1], s)?,
                    k: num(c.args[2], s)?,
                    sup,
                }
            }
            _ => return Err(Error::BadLabel(s.to_string())),
        };
        Ok(l)
    }
}

impl FromStr for SurfaceLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (base, sheet) = s
            .rsplit_once('@')
            .ok_or_else(|| Error::BadLabel(s.to_string()))?;
        let base: Cp2Label = base.parse()?;
        let sheet = if sheet == "*" {
            None
        } else {
            Some(num(sheet, s)?)
        };
        Ok(SurfaceLabel { base, sheet })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_geometry() {
        assert_eq!(Family::F01.z(), 2);
        assert_eq!(Family::corner_with_nonzero(2), Family::F01);
        assert_eq!(Family::corner_with_nonzero(0), Family::F12);
        assert_eq!(Family::corner_with_nonzero(1), Family::F20);
        assert_eq!(Family::corners_on_line(0), (Family::F20, Family::F01));
        for m in 0..3 {
            let (a, b) = Family::corners_on_line(m);
            assert!(a.lies_on_line(m) && b.lies_on_line(m));
        }
        assert_eq!(Family::F20.succ(), Family::F01);
    }

    #[test]
    fn label_strings_round_trip() {
        let labels = [
            Cp2Label::Corner(Family::F12),
            Cp2Label::Curve(CurveLabel::triangle(1, 2, Side::Next, 5)),
            Cp2Label::Curve(CurveLabel::Edge {
                family: Family::F20,
                a: 3,
                b: 0,
            }),
            Cp2Label::CornerRoot {
                corner: Family::F01,
                line: 1,
                k: 4,
            },
            Cp2Label::FTri {
                line: 2,
                k: 1,
                side: Side::Same,
            },
            Cp2Label::GTri { idx: [1, 2, 2] },
            Cp2Label::BPyr {
                family: Family::F12,
                j: 0,
                k: 3,
                sup: BSup::S10,
            },
            Cp2Label::FourCell {
                family: Family::F20,
                j: 1,
                k: 1,
                sup: ASup::Two,
            },
        ];
        for l in labels {
            let s = l.to_string();
            assert_eq!(s.parse::<Cp2Label>().unwrap(), l, "{s}");
            let sl = SurfaceLabel {
                base: l,
                sheet: Some(2),
            };
            assert_eq!(sl.to_string().parse::<SurfaceLabel>().unwrap(), sl);
        }
        let c = Cp1Label::PoleRoot { pole: 1, k: 2 };
        assert_eq!(c.to_string().parse::<Cp1Label>().unwrap(), c);
    }

    #[test]
    fn malformed_labels_rejected() {
        for s in [
            "",
            "q(01,1)",
            "e(3,1)",
            "corner(02)",
            "A(01,0,0,3)",
            "g(1,2",
        ] {
            assert!(s.parse::<Cp2Label>().is_err(), "{s}");
        }
    }

    #[test]
    fn curve_triangle_index_rule() {
        let n = 4;
        let CurveLabel::Triangle { idx, .. } = CurveLabel::triangle(1, 1, Side::Same, n) else {
            unreachable!()
        };
        assert_eq!((idx.iter().sum::<u32>() + 1) % n, 0);
        let CurveLabel::Triangle { idx, .. } = CurveLabel::triangle(1, 1, Side::Next, n) else {
            unreachable!()
        };
        assert_eq!((idx.iter().sum::<u32>() + 2) % n, 0);
    }
}
