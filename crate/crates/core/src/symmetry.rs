//! The groups generated by coordinate permutations and phase
//! multiplications, their action on points and on generated complexes, and
//! orbit decompositions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::Rng;
use rayon::prelude::*;

use crate::chain::CellComplex;
use crate::error::{Error, Result};
use crate::label::{md, CellLabel, Idx};
use crate::projective::{fs_distance, root_of_unity, ProjectivePoint};
use crate::realize::{ambient_dim, cell_chart, vertex_point};

/// `z -> w` with `w_{perm[i]} = e^{2 pi i phases[perm[i]] / n} z_i`.
/// Phases are taken modulo the overall phase, so `phases[0] == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub perm: Vec<u8>,
    pub phases: Vec<Idx>,
    pub n: u32,
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "perm={:?} phases={:?}", self.perm, self.phases)
    }
}

impl GroupElement {
    pub fn new(perm: Vec<u8>, phases: Vec<i64>, n: u32) -> Result<GroupElement> {
        let k = perm.len();
        let mut seen = vec![false; k];
        for &p in &perm {
            if p as usize >= k || seen[p as usize] {
                return Err(Error::BadLabel(format!("not a permutation: {perm:?}")));
            }
            seen[p as usize] = true;
        }
        if phases.len() != k {
            return Err(Error::DimensionMismatch(k, phases.len()));
        }
        let p0 = phases[0];
        Ok(GroupElement {
            perm,
            phases: phases.iter().map(|p| md(p - p0, n)).collect(),
            n,
        })
    }

    pub fn identity(coords: usize, n: u32) -> GroupElement {
        GroupElement {
            perm: (0..coords as u8).collect(),
            phases: vec![0; coords],
            n,
        }
    }

    pub fn coords(&self) -> usize {
        self.perm.len()
    }

    fn inverse_perm(&self) -> Vec<u8> {
        let mut inv = vec![0u8; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p as usize] = i as u8;
        }
        inv
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let inv = self.inverse_perm();
        let perm = other.perm.iter().map(|&p| self.perm[p as usize]).collect();
        let phases = (0..self.coords())
            .map(|m| self.phases[m] as i64 + other.phases[inv[m] as usize] as i64)
            .collect();
        GroupElement::new(perm, phases, self.n).expect("composition of permutations")
    }

    pub fn inverse(&self) -> GroupElement {
        let perm = self.inverse_perm();
        let phases = (0..self.coords())
            .map(|i| -(self.phases[self.perm[i] as usize] as i64))
            .collect();
        GroupElement::new(perm, phases, self.n).expect("inverse of a permutation")
    }
}

fn permutations(k: usize) -> Vec<Vec<u8>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, (k - 1) as u8);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// All `(N+1)! n^N` elements acting on `CP^N`.
pub fn group_elements(n: u32, ambient: usize) -> Result<Vec<GroupElement>> {
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let k = ambient + 1;
    let mut out = Vec::new();
    for perm in permutations(k) {
        let total = (n as usize).pow(ambient as u32);
        for code in 0..total {
            let mut c = code;
            let mut phases = vec![0i64; k];
            for p in phases.iter_mut().skip(1) {
                *p = (c % n as usize) as i64;
                c /= n as usize;
            }
            out.push(GroupElement::new(perm.clone(), phases, n)?);
        }
    }
    Ok(out)
}

pub fn random_element<R: Rng>(rng: &mut R, n: u32, ambient: usize) -> GroupElement {
    let k = ambient + 1;
    let mut perm: Vec<u8> = (0..k as u8).collect();
    for i in (1..k).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let phases = (0..k)
        .map(|i| {
            if i == 0 {
                0
            } else {
                rng.gen_range(0..n as i64)
            }
        })
        .collect();
    GroupElement::new(perm, phases, n).expect("valid")
}

pub fn act_on_point(g: &GroupElement, p: &ProjectivePoint, n: u32) -> Result<ProjectivePoint> {
    if p.len() != g.coords() {
        return Err(Error::DimensionMismatch(g.coords(), p.len()));
    }
    let z = p.coords();
    let mut w = z.to_vec();
    for (i, &t) in g.perm.iter().enumerate() {
        w[t as usize] = root_of_unity(g.phases[t as usize] as i64, n) * z[i];
    }
    ProjectivePoint::new(w)
}

/// Image of every cell, as indices within its dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPermutation {
    pub maps: Vec<Vec<usize>>,
}

impl CellPermutation {
    pub fn image(&self, d: usize, i: usize) -> usize {
        self.maps[d][i]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CellPermutation) -> CellPermutation {
        CellPermutation {
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(s, o)| o.iter().map(|&i| s[i]).collect())
                .collect(),
        }
    }

    pub fn label_map<'a>(&self, complex: &'a CellComplex) -> Vec<(&'a CellLabel, &'a CellLabel)> {
        let mut out = Vec::new();
        for (d, m) in self.maps.iter().enumerate() {
            for (i, &j) in m.iter().enumerate() {
                out.push((&complex.cell(d, i).label, &complex.cell(d, j).label));
            }
        }
        out
    }
}

const VERTEX_TOL: f64 = 1e-8;
const EDGE_SAMPLES: usize = 96;

/// Per-complex data reused across group elements.
pub struct SymmetryContext<'a> {
    complex: &'a CellComplex,
    vertices: Vec<ProjectivePoint>,
    endpoints: Vec<(usize, usize)>,
    midpoints: Vec<ProjectivePoint>,
    samples: Vec<Vec<ProjectivePoint>>,
    /// Largest gap between consecutive samples of each edge.
    spacing: Vec<f64>,
    edges_by_ends: HashMap<(usize, usize), Vec<usize>>,
    by_faces: Vec<HashMap<Vec<usize>, Vec<usize>>>,
    /// Chart center and grid samples of cells sharing their face set with
    /// another cell, keyed by `(dim, index)`.
    interiors: HashMap<(usize, usize), (ProjectivePoint, Vec<ProjectivePoint>)>,
}

impl<'a> SymmetryContext<'a> {
    pub fn new(complex: &'a CellComplex) -> Result<SymmetryContext<'a>> {
        let n = complex.n();
        let vertices = complex
            .labels(0)
            .map(|l| vertex_point(l, n))
            .collect::<Result<Vec<_>>>()?;
        let mut endpoints = Vec::new();
        let mut edges_by_ends: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for i in 0..complex.count(1) {
            let v = complex.vertices_of(1, i);
            let ends = (v[0], *v.last().expect("edge has a vertex"));
            endpoints.push(ends);
            edges_by_ends.entry(ends).or_default().push(i);
        }
        let edge_geometry: Vec<(ProjectivePoint, Vec<ProjectivePoint>, f64)> = complex
            .labels(1)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|l| {
                let ch = cell_chart(l, n)?;
                let pts = (0..=EDGE_SAMPLES)
                    .map(|i| ch.eval(&[i as f64 / EDGE_SAMPLES as f64]))
                    .collect::<Result<Vec<_>>>()?;
                let mut gap: f64 = 0.0;
                for w in pts.windows(2) {
                    gap = gap.max(fs_distance(&w[0], &w[1])?);
                }
                Ok((ch.eval(&[0.5])?, pts, gap))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut midpoints = Vec::new();
        let mut samples = Vec::new();
        let mut spacing = Vec::new();
        for (m, s, g) in edge_geometry {
            midpoints.push(m);
            samples.push(s);
            spacing.push(g);
        }
        let mut by_faces = vec![HashMap::new()];
        by_faces.push(HashMap::new());
        for d in 2..=complex.top_dim() {
            let mut map: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            for (i, c) in complex.cells(d).iter().enumerate() {
                map.entry(c.faces.clone()).or_default().push(i);
            }
            by_faces.push(map);
        }
        let shared: Vec<(usize, usize)> = by_faces
            .iter()
            .enumerate()
            .flat_map(|(d, m)| {
                m.values()
                    .filter(|v| v.len() > 1)
                    .flat_map(move |v| v.iter().map(move |&i| (d, i)))
            })
            .collect();
        let interiors = shared
            .par_iter()
            .map(|&(d, i)| {
                let ch = cell_chart(&complex.cell(d, i).label, n)?;
                let center = ch.eval(&vec![0.5; d])?;
                let grid = grid_points(d, GRID);
                let pts = grid
                    .iter()
                    .map(|x| ch.eval(x))
                    .collect::<Result<Vec<_>>>()?;
                Ok(((d, i), (center, pts)))
            })
            .collect::<Result<HashMap<_, _>>>()?;
        Ok(SymmetryContext {
            complex,
            vertices,
            endpoints,
            midpoints,
            samples,
            spacing,
            edges_by_ends,
            by_faces,
            interiors,
        })
    }

    pub fn complex(&self) -> &CellComplex {
        self.complex
    }

    fn unmatched(&self, d: usize, i: usize) -> Error {
        Error::NotInvariant(self.complex.cell(d, i).label.to_string())
    }

    fn ambiguous(&self, d: usize, i: usize) -> Error {
        Error::AmbiguousMatch(self.complex.cell(d, i).label.to_string())
    }

    fn distance_to_edge(&self, p: &ProjectivePoint, e: usize) -> Result<f64> {
        let mut best = f64::INFINITY;
        for q in &self.samples[e] {
            best = best.min(fs_distance(p, q)?);
        }
        Ok(best)
    }

    /// Among cells with the same faces, the one nearest the image of the
    /// chart center of cell `i`.
    fn by_interior(&self, g: &GroupElement, d: usize, i: usize, cands: &[usize]) -> Result<usize> {
        let (center, _) = self
            .interiors
            .get(&(d, i))
            .ok_or_else(|| self.ambiguous(d, i))?;
        let q = act_on_point(g, center, self.complex.n())?;
        let mut dist = Vec::with_capacity(cands.len());
        for &j in cands {
            let (_, pts) = self
                .interiors
                .get(&(d, j))
                .ok_or_else(|| self.ambiguous(d, i))?;
            let mut best = f64::INFINITY;
            for p in pts {
                best = best.min(fs_distance(&q, p)?);
            }
            dist.push((best, j));
        }
        dist.sort_by(|a, b| a.0.total_cmp(&b.0));
        if dist.len() > 1 && dist[1].0 < 2.0 * dist[0].0 + 1e-6 {
            return Err(self.ambiguous(d, i));
        }
        Ok(dist[0].1)
    }

    /// The cell permutation induced by `g`, matched bottom-up.
    pub fn act(&self, g: &GroupElement) -> Result<CellPermutation> {
        let c = self.complex;
        let n = c.n();
        if g.coords() != ambient_dim(c.space()) + 1 {
            return Err(Error::DimensionMismatch(
                ambient_dim(c.space()) + 1,
                g.coords(),
            ));
        }
        let mut maps = Vec::with_capacity(c.top_dim() + 1);
        let mut vmap = Vec::with_capacity(self.vertices.len());
        for (i, p) in self.vertices.iter().enumerate() {
            let q = act_on_point(g, p, n)?;
            let mut hits = Vec::new();
            for (j, v) in self.vertices.iter().enumerate() {
                if fs_distance(&q, v)? < VERTEX_TOL {
                    hits.push(j);
                }
            }
            match hits.len() {
                0 => return Err(self.unmatched(0, i)),
                1 => vmap.push(hits[0]),
                _ => return Err(self.ambiguous(0, i)),
            }
        }
        maps.push(vmap);
        if c.top_dim() >= 1 {
            let mut emap = Vec::with_capacity(self.endpoints.len());
            for (i, &(a, b)) in self.endpoints.iter().enumerate() {
                let (a, b) = (maps[0][a], maps[0][b]);
                let key = (a.min(b), a.max(b));
                let cands = self
                    .edges_by_ends
                    .get(&key)
                    .ok_or_else(|| self.unmatched(1, i))?;
                let mid = act_on_point(g, &self.midpoints[i], n)?;
                let mut on = Vec::new();
                for &e in cands {
                    if self.distance_to_edge(&mid, e)? <= 2.0 * self.spacing[e] + 1e-9 {
                        on.push(e);
                    }
                }
                match on.len() {
                    0 => return Err(self.unmatched(1, i)),
                    1 => emap.push(on[0]),
                    _ => return Err(self.ambiguous(1, i)),
                }
            }
            maps.push(emap);
        }
        for d in 2..=c.top_dim() {
            let mut m = Vec::with_capacity(c.count(d));
            for (i, cell) in c.cells(d).iter().enumerate() {
                let mut faces: Vec<usize> = cell.faces.iter().map(|&f| maps[d - 1][f]).collect();
                faces.sort_unstable();
                match self.by_faces[d].get(&faces).map(|v| v.as_slice()) {
                    None => return Err(self.unmatched(d, i)),
                    Some([j]) => m.push(*j),
                    Some(cands) => m.push(self.by_interior(g, d, i, cands)?),
                }
            }
            maps.push(m);
        }
        for (d, m) in maps.iter().enumerate() {
            let distinct: BTreeSet<usize> = m.iter().copied().collect();
            if distinct.len() != m.len() {
                let dup = (0..m.len())
                    .find(|&i| m.iter().filter(|&&x| x == m[i]).count() > 1)
                    .unwrap_or(0);
                return Err(self.ambiguous(d, dup));
            }
        }
        Ok(CellPermutation { maps })
    }
}

const GRID: usize = 24;

fn grid_points(d: usize, k: usize) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|x| {
                (0..=k).map(move |i| {
                    let mut y = x.clone();
                    y.push(i as f64 / k as f64);
                    y
                })
            })
            .collect();
    }
    out
}

pub fn act_on_complex(g: &GroupElement, complex: &CellComplex) -> Result<CellPermutation> {
    SymmetryContext::new(complex)?.act(g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Indices within the dimension, ascending.
    pub cells: Vec<usize>,
    pub isotropy: usize,
}

#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub group_order: usize,
    /// Orbits per dimension, ordered by least member.
    pub orbits: Vec<Vec<Orbit>>,
}

impl OrbitReport {
    pub fn orbit_labels<'a>(&self, complex: &'a CellComplex, d: usize) -> Vec<Vec<&'a CellLabel>> {
        self.orbits[d]
            .iter()
            .map(|o| o.cells.iter().map(|&i| &complex.cell(d, i).label).collect())
            .collect()
    }
}

/// Union-find over cells, merged across group elements.
fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn merge(mut a: Vec<Vec<usize>>, b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    for (pa, pb) in a.iter_mut().zip(b) {
        for (i, &j) in pb.iter().enumerate() {
            let (x, y) = (find(pa, i), find(pa, j));
            if x != y {
                pa[x.max(y)] = x.min(y);
            }
        }
    }
    a
}

/// Orbits of `group` on every dimension of the complex. The group must be
/// closed under composition for the isotropy orders to be meaningful.
pub fn orbit_report(ctx: &SymmetryContext<'_>, group: &[GroupElement]) -> Result<OrbitReport> {
    let c = ctx.complex();
    let dims = c.top_dim() + 1;
    let identity: Vec<Vec<usize>> = (0..dims).map(|d| (0..c.count(d)).collect()).collect();
    let perms: Vec<CellPermutation> = group
        .par_iter()
        .map(|g| ctx.act(g))
        .collect::<Result<_>>()?;
    // union of cycles: merging image links is order-independent
    let links: Vec<Vec<usize>> = perms
        .par_iter()
        .fold(|| identity.clone(), |acc, p| merge(acc, &p.maps))
        .reduce(|| identity.clone(), |a, b| merge(a, &b));
    let mut orbits = Vec::with_capacity(dims);
    for (d, link) in links.iter().enumerate() {
        let mut parent = link.clone();
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..c.count(d) {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut level = Vec::new();
        for (_, cells) in groups {
            let first = cells[0];
            let stab = perms.iter().filter(|p| p.maps[d][first] == first).count();
            if stab * cells.len() != group.len() {
                return Err(Error::NotInvariant(format!(
                    "orbit of {} has size {} and isotropy {} in a group of order {}",
                    c.cell(d, first).label,
                    cells.len(),
                    stab,
                    group.len()
                )));
            }
            level.push(Orbit {
                cells,
                isotropy: stab,
            });
        }
        orbits.push(level);
    }
    Ok(OrbitReport {
        group_order: group.len(),
        orbits,
    })
}
