//! Text serialization of complexes and OFF export of sampled cells.
//!
//! Complex format:
//!
//! ```text
//! tess SURFACE n=2 version=1
//! cell 0 dim=0 label=corner(01)@0 faces=
//! cell 12 dim=1 label=c(01,0,0)@* faces=6,8
//! ```
//!
//! Mesh format is OFF. Edge polylines are written as runs of 2-vertex
//! faces; sampled 2-cell facets as quadrilaterals (possibly degenerate at
//! collapsed chart sides).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use crate::chain::{build_complex, CellComplex, CellTable, SpaceTag};
use crate::error::{Error, Result};
use crate::label::{CellLabel, Cp1Label, Cp2Label, CurveLabel, SurfaceLabel};
use crate::projective::embed_hermitian;
use crate::realize::{cell_chart, vertex_point};

pub const FORMAT_VERSION: u32 = 1;

pub fn serialize_complex(complex: &CellComplex) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "tess {} n={} version={FORMAT_VERSION}",
        complex.space().as_str(),
        complex.n()
    );
    for d in 0..=complex.top_dim() {
        for (i, cell) in complex.cells(d).iter().enumerate() {
            let faces: Vec<String> = cell
                .faces
                .iter()
                .map(|&f| complex.id(d - 1, f).to_string())
                .collect();
            let _ = writeln!(
                out,
                "cell {} dim={d} label={} faces={}",
                complex.id(d, i),
                cell.label,
                faces.join(",")
            );
        }
    }
    out
}

pub fn parse_label(space: SpaceTag, s: &str) -> Result<CellLabel> {
    if let Some(name) = s.strip_prefix('~') {
        return Ok(CellLabel::Named(name.to_string()));
    }
    Ok(match space {
        SpaceTag::Cp1 => CellLabel::Cp1(s.parse::<Cp1Label>()?),
        SpaceTag::Curve => CellLabel::Curve(s.parse::<CurveLabel>()?),
        SpaceTag::Cp2 => CellLabel::Cp2(s.parse::<Cp2Label>()?),
        SpaceTag::Surface => CellLabel::Surface(s.parse::<SurfaceLabel>()?),
    })
}

fn field<'a>(tok: Option<&'a str>, key: &str, line: usize) -> Result<&'a str> {
    tok.and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected {key}=..."),
        })
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str, line: usize) -> Result<T> {
    s.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {what} {s:?}"),
    })
}

pub fn parse_complex(text: &str) -> Result<CellComplex> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "tess" {
        return Err(Error::Parse {
            line: 1,
            msg: "expected header `tess <space> n=<n> version=<v>`".into(),
        });
    }
    let space = SpaceTag::parse(toks[1]).ok_or_else(|| Error::Parse {
        line: 1,
        msg: format!("unknown space {:?}", toks[1]),
    })?;
    let n: u32 = parse_num(field(Some(toks[2]), "n", 1)?, "degree", 1)?;
    let version = field(Some(toks[3]), "version", 1)?;
    if version != FORMAT_VERSION.to_string() {
        return Err(Error::VersionMismatch(version.to_string()));
    }
    if n == 0 {
        return Err(Error::Parse {
            line: 1,
            msg: "degree must be positive".into(),
        });
    }

    // id -> (dim, label)
    let mut cells: Vec<(usize, CellLabel)> = Vec::new();
    let mut table: CellTable = Vec::new();
    for (ln, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split(' ');
        if it.next() != Some("cell") {
            return Err(Error::Parse {
                line: ln,
                msg: "expected `cell`".into(),
            });
        }
        let id: usize = parse_num(it.next().unwrap_or(""), "id", ln)?;
        if id != cells.len() {
            return Err(Error::Parse {
                line: ln,
                msg: format!("expected id {}, found {id}", cells.len()),
            });
        }
        let dim: usize = parse_num(field(it.next(), "dim", ln)?, "dimension", ln)?;
        let label =
            parse_label(space, field(it.next(), "label", ln)?).map_err(|e| Error::Parse {
                line: ln,
                msg: e.to_string(),
            })?;
        let faces_str = field(it.next(), "faces", ln)?;
        if it.next().is_some() {
            return Err(Error::Parse {
                line: ln,
                msg: "trailing fields".into(),
            });
        }
        if dim > space.top_dim() || dim + 1 < table.len() || dim > table.len() {
            return Err(Error::Parse {
                line: ln,
                msg: format!("dimension {dim} out of order"),
            });
        }
        let mut faces = Vec::new();
        if !faces_str.is_empty() {
            for f in faces_str.split(',') {
                let f: usize = parse_num(f, "face id", ln)?;
                match cells.get(f) {
                    Some((fd, fl)) if dim > 0 && *fd == dim - 1 => faces.push(fl.clone()),
                    _ => {
                        return Err(Error::Parse {
                            line: ln,
                            msg: format!(
                                "face {f} is not an earlier cell of dimension {}",
                                dim.saturating_sub(1)
                            ),
                        })
                    }
                }
            }
        }
        if dim == table.len() {
            table.push(Vec::new());
        }
        table[dim].push((label.clone(), faces));
        cells.push((dim, label));
    }
    if table.len() != space.top_dim() + 1 {
        let line = text.lines().count();
        return Err(Error::Parse {
            line,
            msg: format!("input ends after dimension {}", table.len() as i64 - 1),
        });
    }
    let complex = build_complex(n, space, table).map_err(|e| Error::Parse {
        line: 0,
        msg: e.to_string(),
    })?;
    // ids must follow the canonical order
    for (id, (d, l)) in cells.iter().enumerate() {
        if complex.find(l).map(|(fd, fi)| complex.id(fd, fi)) != Some(id)
            || complex.locate(id).map(|x| x.0) != Some(*d)
        {
            return Err(Error::Parse {
                line: id + 2,
                msg: format!("cell {l} is out of canonical order"),
            });
        }
    }
    Ok(complex)
}

pub fn write_complex(complex: &CellComplex, path: &Path) -> Result<()> {
    std::fs::write(path, serialize_complex(complex))?;
    Ok(())
}

pub fn read_complex(path: &Path) -> Result<CellComplex> {
    parse_complex(&std::fs::read_to_string(path)?)
}

// ---------------------------------------------------------------------------
// Projection

#[derive(Clone, Debug, PartialEq)]
pub enum ProjectionSource {
    Principal,
    File(String),
}

/// Affine map from the Hermitian embedding to R^3: `x -> M (x - center)`,
/// with the three rows of `M` orthonormal.
#[derive(Clone, Debug)]
pub struct ProjectionSpec {
    pub matrix: [Vec<f64>; 3],
    pub center: Vec<f64>,
    pub source: ProjectionSource,
}

fn orthonormalize(rows: &mut [Vec<f64>; 3]) -> Result<()> {
    for i in 0..3 {
        for j in 0..i {
            let dot: f64 = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
            let prev = rows[j].clone();
            for (a, b) in rows[i].iter_mut().zip(&prev) {
                *a -= dot * b;
            }
        }
        let norm = rows[i].iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm < 1e-9 {
            return Err(Error::BadProjection(format!(
                "row {} is dependent on the others",
                i + 1
            )));
        }
        for a in rows[i].iter_mut() {
            *a /= norm;
        }
    }
    Ok(())
}

impl ProjectionSpec {
    /// Rows given explicitly; orthonormalized in order.
    pub fn from_rows(rows: Vec<Vec<f64>>, source: ProjectionSource) -> Result<ProjectionSpec> {
        if rows.len() != 3 {
            return Err(Error::BadProjection(format!(
                "expected 3 rows, found {}",
                rows.len()
            )));
        }
        let width = rows[0].len();
        if width == 0 || rows.iter().any(|r| r.len() != width) {
            return Err(Error::BadProjection("rows have different lengths".into()));
        }
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::BadProjection("non-finite entry".into()));
        }
        let mut m = [rows[0].clone(), rows[1].clone(), rows[2].clone()];
        orthonormalize(&mut m)?;
        Ok(ProjectionSpec {
            matrix: m,
            center: vec![0.0; width],
            source,
        })
    }

    /// Three lines of whitespace-separated numbers; `#` starts a comment.
    pub fn parse(text: &str, source: ProjectionSource) -> Result<ProjectionSpec> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|_| Error::BadProjection(format!("bad number {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        ProjectionSpec::from_rows(rows, source)
    }

    pub fn from_file(path: &Path) -> Result<ProjectionSpec> {
        let text = std::fs::read_to_string(path)?;
        ProjectionSpec::parse(&text, ProjectionSource::File(path.display().to_string()))
    }

    /// First three principal axes of the embedded vertices, centered at
    /// their mean. Each axis is signed so its largest entry is positive.
    pub fn principal(complex: &CellComplex) -> Result<ProjectionSpec> {
        let n = complex.n();
        let pts = complex
            .labels(0)
            .map(|l| Ok(embed_hermitian(&vertex_point(l, n)?)?.entries))
            .collect::<Result<Vec<_>>>()?;
        let dim = pts[0].len();
        let mut center = vec![0.0; dim];
        for p in &pts {
            for (c, x) in center.iter_mut().zip(p) {
                *c += x / pts.len() as f64;
            }
        }
        let mut cov = DMatrix::<f64>::zeros(dim, dim);
        for p in &pts {
            let v = DMatrix::from_iterator(dim, 1, p.iter().zip(&center).map(|(x, c)| x - c));
            cov += &v * v.transpose();
        }
        let eig = SymmetricEigen::new(cov);
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[b]
                .total_cmp(&eig.eigenvalues[a])
                .then(a.cmp(&b))
        });
        let mut rows: Vec<Vec<f64>> = order[..3.min(dim)]
            .iter()
            .map(|&k| {
                let col: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
                let big = col
                    .iter()
                    .copied()
                    .max_by(|a, b| a.abs().total_cmp(&b.abs()))
                    .unwrap_or(1.0);
                col.into_iter()
                    .map(|x| if big < 0.0 { -x } else { x })
                    .collect()
            })
            .collect();
        while rows.len() < 3 {
            rows.push(vec![0.0; dim]);
        }
        let mut m = [rows[0].clone(), rows[1].clone(), rows[2].clone()];
        orthonormalize(&mut m)?;
        Ok(ProjectionSpec {
            matrix: m,
            center,
            source: ProjectionSource::Principal,
        })
    }

    pub fn width(&self) -> usize {
        self.center.len()
    }

    pub fn apply(&self, x: &[f64]) -> Result<[f64; 3]> {
        if x.len() != self.width() {
            return Err(Error::BadProjection(format!(
                "projection expects {} coordinates, embedding has {}",
                self.width(),
                x.len()
            )));
        }
        let mut out = [0.0; 3];
        for (o, row) in out.iter_mut().zip(&self.matrix) {
            *o = row
                .iter()
                .zip(x)
                .zip(&self.center)
                .map(|((r, a), c)| r * (a - c))
                .sum();
        }
        Ok(out)
    }

    /// Largest deviation of `M M^T` from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = self.matrix[i]
                    .iter()
                    .zip(&self.matrix[j])
                    .map(|(a, b)| a * b)
                    .sum();
                worst = worst.max((dot - if i == j { 1.0 } else { 0.0 }).abs());
            }
        }
        worst
    }
}

// ---------------------------------------------------------------------------
// Meshes

/// Which cells to draw.
#[derive(Clone, Debug, PartialEq)]
pub enum Selection {
    /// Every edge once, and every 2-cell once when facets are sampled.
    AllEdges,
    /// The edges of every cell of one dimension, once per cell.
    Dim(usize),
    /// The edges of the listed cells, once per cell.
    Cells(Vec<CellLabel>),
}

/// Where a primitive came from: the selected cell and the sampled face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub cell: CellLabel,
    pub primitive: CellLabel,
}

#[derive(Clone, Debug, Default)]
pub struct MeshBundle {
    pub points: Vec<[f64; 3]>,
    pub polylines: Vec<Vec<usize>>,
    pub polygons: Vec<Vec<usize>>,
    pub polyline_provenance: Vec<Provenance>,
    pub polygon_provenance: Vec<Provenance>,
}

impl MeshBundle {
    pub fn segment_count(&self) -> usize {
        self.polylines
            .iter()
            .map(|p| p.len().saturating_sub(1))
            .sum()
    }

    pub fn face_count(&self) -> usize {
        self.segment_count() + self.polygons.len()
    }

    pub fn distinct_polyline_primitives(&self) -> usize {
        let set: std::collections::BTreeSet<&CellLabel> = self
            .polyline_provenance
            .iter()
            .map(|p| &p.primitive)
            .collect();
        set.len()
    }

    pub fn check_indices(&self) -> bool {
        let n = self.points.len();
        self.polylines
            .iter()
            .chain(&self.polygons)
            .flatten()
            .all(|&i| i < n)
            && self.polyline_provenance.len() == self.polylines.len()
            && self.polygon_provenance.len() == self.polygons.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExportOptions {
    pub samples_per_edge: usize,
    /// Also sample 2-cells on a `k x k` grid.
    pub facet_grid: Option<usize>,
}

fn sample_edge(
    label: &CellLabel,
    n: u32,
    k: usize,
    proj: &ProjectionSpec,
) -> Result<Vec<[f64; 3]>> {
    let ch = cell_chart(label, n)?;
    (0..k)
        .map(|i| proj.apply(&embed_hermitian(&ch.eval(&[i as f64 / (k - 1) as f64])?)?.entries))
        .collect()
}

fn sample_facet(
    label: &CellLabel,
    n: u32,
    k: usize,
    proj: &ProjectionSpec,
) -> Result<Vec<[f64; 3]>> {
    let ch = cell_chart(label, n)?;
    let mut out = Vec::with_capacity((k + 1) * (k + 1));
    for i in 0..=k {
        for j in 0..=k {
            let x = [i as f64 / k as f64, j as f64 / k as f64];
            out.push(proj.apply(&embed_hermitian(&ch.eval(&x)?)?.entries)?);
        }
    }
    Ok(out)
}

pub fn export_mesh(
    complex: &CellComplex,
    options: &ExportOptions,
    projection: &ProjectionSpec,
    selection: &Selection,
) -> Result<MeshBundle> {
    if options.samples_per_edge < 2 {
        return Err(Error::BadProjection(
            "at least 2 samples per edge are needed".into(),
        ));
    }
    let n = complex.n();
    // (selected cell, its edges, its 2-cells)
    let groups: Vec<(CellLabel, Vec<usize>, Vec<usize>)> = match selection {
        Selection::AllEdges => {
            let mut g: Vec<_> = (0..complex.count(1))
                .map(|e| (complex.cell(1, e).label.clone(), vec![e], Vec::new()))
                .collect();
            if options.facet_grid.is_some() && complex.top_dim() >= 2 {
                g.extend(
                    (0..complex.count(2))
                        .map(|f| (complex.cell(2, f).label.clone(), Vec::new(), vec![f])),
                );
            }
            g
        }
        Selection::Dim(d) => {
            if *d > complex.top_dim() {
                return Err(Error::DimensionMismatch(complex.top_dim(), *d));
            }
            (0..complex.count(*d))
                .map(|i| closure_group(complex, *d, i))
                .collect()
        }
        Selection::Cells(labels) => labels
            .iter()
            .map(|l| {
                let (d, i) = complex
                    .find(l)
                    .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
                Ok(closure_group(complex, d, i))
            })
            .collect::<Result<_>>()?,
    };
    let mut edges: Vec<usize> = groups.iter().flat_map(|g| g.1.iter().copied()).collect();
    edges.sort_unstable();
    edges.dedup();
    let mut facets: Vec<usize> = Vec::new();
    if options.facet_grid.is_some() {
        facets = groups.iter().flat_map(|g| g.2.iter().copied()).collect();
        facets.sort_unstable();
        facets.dedup();
    }
    let k = options.samples_per_edge;
    let edge_pts: Vec<Vec<[f64; 3]>> = edges
        .par_iter()
        .map(|&e| sample_edge(&complex.cell(1, e).label, n, k, projection))
        .collect::<Result<_>>()?;
    let grid = options.facet_grid.unwrap_or(1).max(1);
    let facet_pts: Vec<Vec<[f64; 3]>> = facets
        .par_iter()
        .map(|&f| sample_facet(&complex.cell(2, f).label, n, grid, projection))
        .collect::<Result<_>>()?;

    let mut mesh = MeshBundle::default();
    let mut edge_index: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&e, pts) in edges.iter().zip(edge_pts) {
        let start = mesh.points.len();
        mesh.points.extend(pts);
        edge_index.insert(e, (start..start + k).collect());
    }
    let mut facet_quads: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for (&f, pts) in facets.iter().zip(facet_pts) {
        let start = mesh.points.len();
        mesh.points.extend(pts);
        let at = |i: usize, j: usize| start + i * (grid + 1) + j;
        let mut quads = Vec::new();
        for i in 0..grid {
            for j in 0..grid {
                quads.push(vec![at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)]);
            }
        }
        facet_quads.insert(f, quads);
    }
    for (cell, es, fs) in &groups {
        for e in es {
            mesh.polylines.push(edge_index[e].clone());
            mesh.polyline_provenance.push(Provenance {
                cell: cell.clone(),
                primitive: complex.cell(1, *e).label.clone(),
            });
        }
        for f in fs {
            if let Some(quads) = facet_quads.get(f) {
                for q in quads {
                    mesh.polygons.push(q.clone());
                    mesh.polygon_provenance.push(Provenance {
                        cell: cell.clone(),
                        primitive: complex.cell(2, *f).label.clone(),
                    });
                }
            }
        }
    }
    Ok(mesh)
}

fn closure_group(complex: &CellComplex, d: usize, i: usize) -> (CellLabel, Vec<usize>, Vec<usize>) {
    let cl = complex.closure(d, i);
    let edges = cl.get(1).cloned().unwrap_or_default();
    let faces = cl.get(2).cloned().unwrap_or_default();
    (complex.cell(d, i).label.clone(), edges, faces)
}

pub fn write_off(mesh: &MeshBundle) -> String {
    let mut out = String::new();
    out.push_str("OFF\n");
    out.push_str("# 2-vertex faces are wireframe segments\n");
    let _ = writeln!(out, "{} {} 0", mesh.points.len(), mesh.face_count());
    for p in &mesh.points {
        let _ = writeln!(out, "{:.12} {:.12} {:.12}", p[0], p[1], p[2]);
    }
    for line in &mesh.polylines {
        for w in line.windows(2) {
            let _ = writeln!(out, "2 {} {}", w[0], w[1]);
        }
    }
    for poly in &mesh.polygons {
        let idx: Vec<String> = poly.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "{} {}", poly.len(), idx.join(" "));
    }
    out
}

/// Vertices and faces of an OFF file.
#[derive(Clone, Debug, PartialEq)]
pub struct OffMesh {
    pub points: Vec<[f64; 3]>,
    pub faces: Vec<Vec<usize>>,
}

impl OffMesh {
    pub fn segments(&self) -> usize {
        self.faces.iter().filter(|f| f.len() == 2).count()
    }

    pub fn polygons(&self) -> usize {
        self.faces.iter().filter(|f| f.len() > 2).count()
    }
}

pub fn parse_off(text: &str) -> Result<OffMesh> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let bad = |line: usize, msg: &str| Error::Parse {
        line,
        msg: msg.to_string(),
    };
    match lines.next() {
        Some((_, "OFF")) => {}
        Some((l, _)) => return Err(bad(l, "expected OFF")),
        None => return Err(bad(1, "empty input")),
    }
    let (hl, header) = lines.next().ok_or_else(|| bad(2, "missing counts"))?;
    let counts: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad(hl, "bad count")))
        .collect::<Result<_>>()?;
    if counts.len() != 3 {
        return Err(bad(hl, "expected `V F E`"));
    }
    let mut points = Vec::with_capacity(counts[0]);
    for _ in 0..counts[0] {
        let (l, s) = lines.next().ok_or_else(|| bad(hl, "missing vertices"))?;
        let v: Vec<f64> = s
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(l, "bad coordinate")))
            .collect::<Result<_>>()?;
        if v.len() != 3 {
            return Err(bad(l, "expected 3 coordinates"));
        }
        points.push([v[0], v[1], v[2]]);
    }
    let mut faces = Vec::with_capacity(counts[1]);
    for _ in 0..counts[1] {
        let (l, s) = lines.next().ok_or_else(|| bad(hl, "missing faces"))?;
        let v: Vec<usize> = s
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(l, "bad index")))
            .collect::<Result<_>>()?;
        if v.is_empty() || v[0] != v.len() - 1 || v[1..].iter().any(|&i| i >= points.len()) {
            return Err(bad(l, "malformed face"));
        }
        faces.push(v[1..].to_vec());
    }
    if let Some((l, _)) = lines.next() {
        return Err(bad(l, "trailing data"));
    }
    Ok(OffMesh { points, faces })
}
