//! Graded cell complexes, boundary orientation and incidence checks.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::label::{CellKind, CellLabel};
use crate::report::ValidationReport;
use crate::sparse::SparseMatrix;

/// Which space a complex tessellates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceTag {
    Cp1,
    Curve,
    Cp2,
    Surface,
}

impl SpaceTag {
    pub fn top_dim(self) -> usize {
        match self {
            SpaceTag::Cp1 | SpaceTag::Curve => 2,
            SpaceTag::Cp2 | SpaceTag::Surface => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SpaceTag::Cp1 => "CP1",
            SpaceTag::Curve => "CURVE",
            SpaceTag::Cp2 => "CP2",
            SpaceTag::Surface => "SURFACE",
        }
    }

    pub fn parse(s: &str) -> Option<SpaceTag> {
        match s.to_ascii_uppercase().as_str() {
            "CP1" => Some(SpaceTag::Cp1),
            "CURVE" => Some(SpaceTag::Curve),
            "CP2" => Some(SpaceTag::Cp2),
            "SURFACE" => Some(SpaceTag::Surface),
            _ => None,
        }
    }
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub label: CellLabel,
    /// Indices into the cells of the next lower dimension, ascending.
    pub faces: Vec<usize>,
}

/// One dimension of an input cell table: `(label, face labels)` pairs.
pub type CellTable = Vec<Vec<(CellLabel, Vec<CellLabel>)>>;

/// A finite cell complex given by its face lattice.
///
/// Cells are identified by label, never by vertex set: distinct cells may
/// share all their vertices or even all their faces. Within a dimension cells
/// are sorted by label; the global id of cell `i` in dimension `d` is
/// `offset(d) + i`.
#[derive(Clone, Debug)]
pub struct CellComplex {
    n: u32,
    space: SpaceTag,
    cells: Vec<Vec<Cell>>,
    offsets: Vec<usize>,
    index: HashMap<CellLabel, (usize, usize)>,
}

impl PartialEq for CellComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.space == other.space && self.cells == other.cells
    }
}

/// Validate a cell table and assign deterministic ids.
pub fn build_complex(n: u32, space: SpaceTag, table: CellTable) -> Result<CellComplex> {
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let mut table = table;
    while table.last().is_some_and(|d| d.is_empty()) {
        table.pop();
    }
    if let Some(d) = table.iter().position(|cells| cells.is_empty()) {
        return Err(Error::EmptyDimension(d));
    }

    let mut index: HashMap<CellLabel, (usize, usize)> = HashMap::new();
    let mut cells: Vec<Vec<Cell>> = Vec::with_capacity(table.len());
    for (d, mut rows) in table.into_iter().enumerate() {
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        for w in rows.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateLabel(w[0].0.to_string()));
            }
        }
        let mut level = Vec::with_capacity(rows.len());
        for (i, (label, face_labels)) in rows.into_iter().enumerate() {
            if index.contains_key(&label) {
                return Err(Error::DuplicateLabel(label.to_string()));
            }
            let mut faces = Vec::with_capacity(face_labels.len());
            for fl in &face_labels {
                match index.get(fl) {
                    Some(&(fd, fi)) if d > 0 && fd == d - 1 => faces.push(fi),
                    _ => return Err(Error::dangling(&label, fl)),
                }
            }
            faces.sort_unstable();
            if let Some(w) = faces.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::RepeatedFace {
                    cell: label.to_string(),
                    face: cells[d - 1][w[0]].label.to_string(),
                });
            }
            index.insert(label.clone(), (d, i));
            level.push(Cell { label, faces });
        }
        cells.push(level);
    }
    let mut offsets = Vec::with_capacity(cells.len());
    let mut acc = 0;
    for level in &cells {
        offsets.push(acc);
        acc += level.len();
    }
    Ok(CellComplex {
        n,
        space,
        cells,
        offsets,
        index,
    })
}

impl CellComplex {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn space(&self) -> SpaceTag {
        self.space
    }

    /// Highest dimension holding cells (0 for a point).
    pub fn top_dim(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    pub fn count(&self, d: usize) -> usize {
        self.cells.get(d).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn cells(&self, d: usize) -> &[Cell] {
        self.cells.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn cell(&self, d: usize, i: usize) -> &Cell {
        &self.cells[d][i]
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn id(&self, d: usize, i: usize) -> usize {
        self.offsets[d] + i
    }

    /// Inverse of [`CellComplex::id`].
    pub fn locate(&self, id: usize) -> Option<(usize, usize)> {
        let d = self.offsets.iter().rposition(|&o| o <= id)?;
        let i = id - self.offsets[d];
        (i < self.count(d)).then_some((d, i))
    }

    pub fn find(&self, label: &CellLabel) -> Option<(usize, usize)> {
        self.index.get(label).copied()
    }

    /// For every `d`-cell, the `(d+1)`-cells having it as a face.
    pub fn cofaces(&self, d: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count(d)];
        for (j, c) in self.cells(d + 1).iter().enumerate() {
            for &f in &c.faces {
                out[f].push(j);
            }
        }
        out
    }

    /// All cells in the closure of `(d, i)`, per dimension, ascending.
    pub fn closure(&self, d: usize, i: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); d + 1];
        out[d].push(i);
        for dd in (1..=d).rev() {
            let mut below: Vec<usize> = out[dd]
                .iter()
                .flat_map(|&c| self.cells[dd][c].faces.iter().copied())
                .collect();
            below.sort_unstable();
            below.dedup();
            out[dd - 1] = below;
        }
        out
    }

    /// Closure of the boundary of `(d, i)`: the closure minus the cell itself.
    pub fn boundary_closure(&self, d: usize, i: usize) -> Vec<Vec<usize>> {
        let mut c = self.closure(d, i);
        c.pop();
        c
    }

    /// Vertex indices of a cell.
    pub fn vertices_of(&self, d: usize, i: usize) -> Vec<usize> {
        self.closure(d, i).swap_remove(0)
    }

    pub fn labels(&self, d: usize) -> impl Iterator<Item = &CellLabel> {
        self.cells(d).iter().map(|c| &c.label)
    }

    /// Rebuild the input table, e.g. to mutate and rebuild.
    pub fn to_table(&self) -> CellTable {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, level)| {
                level
                    .iter()
                    .map(|c| {
                        let faces = c
                            .faces
                            .iter()
                            .map(|&f| self.cells[d - 1][f].label.clone())
                            .collect();
                        (c.label.clone(), faces)
                    })
                    .collect()
            })
            .collect()
    }

    /// The complex with one cell and everything containing it removed.
    pub fn without(&self, label: &CellLabel) -> Result<CellComplex> {
        let (d0, i0) = self
            .find(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        let mut dead: Vec<Vec<bool>> = self.cells.iter().map(|l| vec![false; l.len()]).collect();
        dead[d0][i0] = true;
        for d in d0 + 1..self.cells.len() {
            for (j, c) in self.cells[d].iter().enumerate() {
                if c.faces.iter().any(|&f| dead[d - 1][f]) {
                    dead[d][j] = true;
                }
            }
        }
        let table = self
            .to_table()
            .into_iter()
            .enumerate()
            .map(|(d, rows)| {
                rows.into_iter()
                    .enumerate()
                    .filter(|(j, _)| !dead[d][*j])
                    .map(|(_, r)| r)
                    .collect()
            })
            .collect();
        build_complex(self.n, self.space, table)
    }
}

/// Alternating sum of cell counts.
pub fn euler_characteristic(complex: &CellComplex) -> i64 {
    alternating_sum(&complex.counts())
}

pub fn alternating_sum(counts: &[usize]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// Signed boundary matrices `D_d` (rows: `(d-1)`-cells, columns: `d`-cells).
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    /// `boundaries[d]` is `D_d`; `boundaries[0]` is the zero map out of
    /// the vertices and has no rows.
    pub boundaries: Vec<SparseMatrix>,
    pub orientation: OrientationChoice,
}

/// Record of the gauge fixing used by [`orient_chain`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationChoice {
    /// Per dimension and cell, the faces pinned to `+1` (one per
    /// constraint component, the canonically least face of each).
    pub pinned: Vec<Vec<Vec<usize>>>,
}

impl ChainComplex {
    pub fn top_dim(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn counts(&self) -> Vec<usize> {
        self.boundaries.iter().map(|m| m.ncols()).collect()
    }

    /// `D_d` for `d >= 1`.
    pub fn boundary(&self, d: usize) -> &SparseMatrix {
        &self.boundaries[d]
    }

    /// Is `D_d * D_{d+1}` the zero matrix?
    pub fn composition_vanishes(&self, d: usize) -> bool {
        if d == 0 || d + 1 >= self.boundaries.len() {
            return true;
        }
        self.boundaries[d].mul(&self.boundaries[d + 1]).is_zero()
    }

    pub fn is_chain_complex(&self) -> bool {
        (1..self.boundaries.len()).all(|d| self.composition_vanishes(d))
    }

    /// Reverse the orientation of one cell.
    pub fn flip_cell(&mut self, d: usize, i: usize) {
        if d >= 1 {
            self.boundaries[d].negate_col(i);
        }
        if d + 1 < self.boundaries.len() {
            self.boundaries[d + 1].negate_row(i);
        }
    }
}

/// Assign incidence signs so that every boundary is a cycle.
///
/// Edges run from the lower to the higher vertex (canonical label order).
/// For higher cells the signs are propagated across shared codimension-two
/// faces; every connected set of constraints is pinned by `+1` on its
/// canonically least face.
pub fn orient_chain(complex: &CellComplex) -> Result<ChainComplex> {
    let top = complex.top_dim();
    let mut boundaries = vec![SparseMatrix::zeros(0, complex.count(0))];
    let mut pinned = vec![vec![Vec::new(); complex.count(0)]];
    if complex.count(0) == 0 {
        return Ok(ChainComplex {
            boundaries,
            orientation: OrientationChoice { pinned },
        });
    }
    for d in 1..=top {
        let nrows = complex.count(d - 1);
        let mut cols: Vec<Vec<(usize, i64)>> = Vec::with_capacity(complex.count(d));
        let mut pins = Vec::with_capacity(complex.count(d));
        for cell in complex.cells(d) {
            if d == 1 {
                if cell.faces.len() != 2 {
                    return Err(Error::NoConsistentOrientation(cell.label.to_string()));
                }
                cols.push(vec![(cell.faces[0], -1), (cell.faces[1], 1)]);
                pins.push(vec![cell.faces[0]]);
                continue;
            }
            let lower = &boundaries[d - 1];
            let (signs, pin) = solve_cycle_signs(&cell.faces, lower)
                .ok_or_else(|| Error::NoConsistentOrientation(cell.label.to_string()))?;
            cols.push(cell.faces.iter().copied().zip(signs).collect());
            pins.push(pin);
        }
        boundaries.push(SparseMatrix::from_cols(nrows, cols));
        pinned.push(pins);
    }
    Ok(ChainComplex {
        boundaries,
        orientation: OrientationChoice { pinned },
    })
}

/// Signs `s_i` with `sum_i s_i * lower[:, faces[i]] = 0`.
fn solve_cycle_signs(faces: &[usize], lower: &SparseMatrix) -> Option<(Vec<i64>, Vec<usize>)> {
    let k = faces.len();
    // ridge -> [(face position, coefficient)]
    let mut ridges: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
    for (pos, &f) in faces.iter().enumerate() {
        for &(r, v) in lower.col(f) {
            ridges.entry(r).or_default().push((pos, v));
        }
    }
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); k];
    for inc in ridges.values() {
        if inc.len() == 2 {
            let ((a, ca), (b, cb)) = (inc[0], inc[1]);
            // s_a*ca + s_b*cb = 0  =>  s_b = -s_a*ca/cb; all entries are +-1.
            let rel = -ca * cb;
            adj[a].push((b, rel));
            adj[b].push((a, rel));
        }
    }
    let mut signs = vec![0i64; k];
    let mut pin = Vec::new();
    for start in 0..k {
        if signs[start] != 0 {
            continue;
        }
        pin.push(faces[start]);
        signs[start] = 1;
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for &(b, rel) in &adj[a] {
                let want = signs[a] * rel;
                if signs[b] == 0 {
                    signs[b] = want;
                    stack.push(b);
                } else if signs[b] != want {
                    return None;
                }
            }
        }
    }
    for inc in ridges.values() {
        let s: i64 = inc.iter().map(|&(p, v)| signs[p] * v).sum();
        if s != 0 {
            return None;
        }
    }
    Some((signs, pin))
}

/// "Every `face_dim`-cell of `face_kind` lies in exactly `expected`
/// `(face_dim+1)`-cells of `coface_kind`."
#[derive(Clone, Debug)]
pub struct IncidenceRule {
    pub name: String,
    pub face_dim: usize,
    pub face_kind: Option<CellKind>,
    pub coface_kind: Option<CellKind>,
    pub expected: usize,
}

impl IncidenceRule {
    pub fn new(name: impl Into<String>, face_dim: usize, expected: usize) -> Self {
        IncidenceRule {
            name: name.into(),
            face_dim,
            face_kind: None,
            coface_kind: None,
            expected,
        }
    }

    pub fn faces_of_kind(mut self, kind: CellKind) -> Self {
        self.face_kind = Some(kind);
        self
    }

    pub fn cofaces_of_kind(mut self, kind: CellKind) -> Self {
        self.coface_kind = Some(kind);
        self
    }
}

pub fn validate_incidence(complex: &CellComplex, rules: &[IncidenceRule]) -> ValidationReport {
    let mut report = ValidationReport::new();
    for rule in rules {
        let cof = complex.cofaces(rule.face_dim);
        let upper = complex.cells(rule.face_dim + 1);
        let mut offenders = Vec::new();
        let mut checked = 0usize;
        for (i, cell) in complex.cells(rule.face_dim).iter().enumerate() {
            if rule.face_kind.is_some_and(|k| cell.label.kind() != k) {
                continue;
            }
            checked += 1;
            let containing: Vec<&CellLabel> = cof[i]
                .iter()
                .map(|&j| &upper[j].label)
                .filter(|l| rule.coface_kind.is_none_or(|k| l.kind() == k))
                .collect();
            if containing.len() != rule.expected {
                let list: Vec<String> = containing.iter().map(|l| l.to_string()).collect();
                offenders.push(format!(
                    "{} in {} cells [{}]",
                    cell.label,
                    containing.len(),
                    list.join(" ")
                ));
            }
        }
        report.push(
            rule.name.clone(),
            offenders,
            format!(
                "{checked} cells checked, expected multiplicity {}",
                rule.expected
            ),
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> CellLabel {
        CellLabel::named(s)
    }

    pub(crate) fn triangle_table() -> CellTable {
        vec![
            vec![(l("a"), vec![]), (l("b"), vec![]), (l("c"), vec![])],
            vec![
                (l("ab"), vec![l("a"), l("b")]),
                (l("bc"), vec![l("b"), l("c")]),
                (l("ca"), vec![l("c"), l("a")]),
            ],
            vec![(l("abc"), vec![l("ab"), l("bc"), l("ca")])],
        ]
    }

    #[test]
    fn single_vertex() {
        let c = build_complex(1, SpaceTag::Cp1, vec![vec![(l("v"), vec![])]]).unwrap();
        assert_eq!(c.counts(), vec![1]);
        assert_eq!(euler_characteristic(&c), 1);
        let ch = orient_chain(&c).unwrap();
        assert_eq!(ch.counts(), vec![1]);
    }

    #[test]
    fn dangling_face_is_reported() {
        let mut t = triangle_table();
        t[2][0].1[1] = l("bd");
        assert!(matches!(
            build_complex(1, SpaceTag::Cp1, t),
            Err(Error::DanglingFace { .. })
        ));
    }

    #[test]
    fn duplicate_and_empty_dimension() {
        let mut t = triangle_table();
        t[0].push((l("a"), vec![]));
        assert!(matches!(
            build_complex(1, SpaceTag::Cp1, t),
            Err(Error::DuplicateLabel(_))
        ));
        let mut t = triangle_table();
        t[1].clear();
        assert!(matches!(
            build_complex(1, SpaceTag::Cp1, t),
            Err(Error::EmptyDimension(1))
        ));
    }

    #[test]
    fn face_of_wrong_dimension_is_dangling() {
        let mut t = triangle_table();
        t[2][0].1[0] = l("a");
        assert!(matches!(
            build_complex(1, SpaceTag::Cp1, t),
            Err(Error::DanglingFace { .. })
        ));
    }

    #[test]
    fn standard_simplex_orients() {
        let c = build_complex(1, SpaceTag::Cp1, triangle_table()).unwrap();
        let ch = orient_chain(&c).unwrap();
        assert_eq!(ch.boundary(1).shape(), (3, 3));
        assert_eq!(ch.boundary(2).shape(), (3, 1));
        assert!(ch.is_chain_complex());
        // pinned face gets +1
        let col = ch.boundary(2).col(0);
        assert_eq!(col.iter().find(|e| e.0 == 0).unwrap().1, 1);
    }

    #[test]
    fn ids_are_deterministic_and_locatable() {
        let a = build_complex(1, SpaceTag::Cp1, triangle_table()).unwrap();
        let mut t = triangle_table();
        t[1].reverse();
        t[0].rotate_left(1);
        let b = build_complex(1, SpaceTag::Cp1, t).unwrap();
        assert_eq!(a, b);
        for d in 0..=2 {
            for i in 0..a.count(d) {
                assert_eq!(a.locate(a.id(d, i)), Some((d, i)));
            }
        }
    }

    #[test]
    fn removing_a_cell_removes_its_cofaces() {
        let c = build_complex(1, SpaceTag::Cp1, triangle_table()).unwrap();
        let c2 = c.without(&l("bc")).unwrap();
        assert_eq!(c2.counts(), vec![3, 2]);
    }

    #[test]
    fn incidence_rule_reports_offenders() {
        let c = build_complex(1, SpaceTag::Cp1, triangle_table()).unwrap();
        let r = validate_incidence(&c, &[IncidenceRule::new("edges in two triangles", 1, 2)]);
        assert!(!r.passed());
        assert_eq!(r.checks[0].offenders.len(), 3);
        let r = validate_incidence(&c, &[IncidenceRule::new("edges in one triangle", 1, 1)]);
        assert!(r.passed());
    }
}
