//! Independent verification path: Delzant polytopes, circle subgroups, and
//! the matching of toric fixed-point data against classification records.
//!
//! A fixture is either a lattice polytope with a distinguished circle
//! subgroup (the toric case) or a precomputed fixed-point report (the
//! complexity-one and complexity-two examples, whose fixed-point data is
//! known but which carry no polytope). Both feed the same matcher.

use crate::classifier::TFDRecord;
use crate::error::{Error, Result};
use crate::lattice::Int;
use crate::localization::{betti2, chern_number, ComponentShape, CriticalProfile};

/// An integer lattice point.
pub type Point = Vec<Int>;

/// The integer vector generating a circle subgroup of the torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleSubgroup {
    pub xi: Vec<Int>,
}

impl CircleSubgroup {
    pub fn new(xi: Vec<Int>) -> Result<Self> {
        if xi.iter().all(|&c| c == 0) {
            return Err(Error::NotDelzant("xi must be nonzero".into()));
        }
        let mut g = 0;
        for &c in &xi {
            g = gcd(g, c.abs());
        }
        if g != 1 {
            return Err(Error::NotDelzant(format!("xi is not primitive (gcd {g})")));
        }
        Ok(CircleSubgroup { xi })
    }

    pub fn pair(&self, p: &[Int]) -> Int {
        self.xi.iter().zip(p).map(|(a, b)| a * b).sum()
    }
}

/// One edge of the polytope: endpoints, primitive direction, lattice length.
#[derive(Debug, Clone)]
pub struct Edge {
    pub ends: (usize, usize),
    pub direction: Vec<Int>,
    pub length: Int,
}

/// A facet as a supporting hyperplane `<normal, v> = offset` (with
/// `<normal, p> <= offset` on the polytope) plus its vertex set.
#[derive(Debug, Clone)]
pub struct Facet {
    pub normal: Vec<Int>,
    pub offset: Int,
    pub vertices: Vec<usize>,
}

/// A full-dimensional Delzant lattice polytope in dimension 2 or 3, stored
/// by its vertex list; edges and facets are derived and the smoothness
/// condition is enforced at construction.
#[derive(Debug, Clone)]
pub struct DelzantPolytope {
    pub dim: usize,
    pub vertices: Vec<Point>,
    pub facets: Vec<Facet>,
    pub edges: Vec<Edge>,
}

impl DelzantPolytope {
    pub fn from_vertices(dim: usize, vertices: Vec<Point>) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::NotDelzant(format!("dimension {dim} not supported")));
        }
        if vertices.len() < dim + 1 {
            return Err(Error::NotDelzant("too few vertices".into()));
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::NotDelzant("vertex with wrong dimension".into()));
            }
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[i + 1..].contains(v) {
                return Err(Error::NotDelzant(format!("duplicate vertex {v:?}")));
            }
        }
        let facets = enumerate_facets(dim, &vertices)?;
        let edges = enumerate_edges(dim, &vertices, &facets)?;
        let p = DelzantPolytope {
            dim,
            vertices,
            facets,
            edges,
        };
        p.check_delzant()?;
        Ok(p)
    }

    /// Edges incident to a vertex, with the primitive direction pointing
    /// away from it.
    pub fn edges_at(&self, v: usize) -> Vec<(usize, Vec<Int>, &Edge)> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.ends.0 == v {
                out.push((e.ends.1, e.direction.clone(), e));
            } else if e.ends.1 == v {
                out.push((e.ends.0, e.direction.iter().map(|&c| -c).collect(), e));
            }
        }
        out
    }

    fn check_delzant(&self) -> Result<()> {
        for v in 0..self.vertices.len() {
            let at = self.edges_at(v);
            if at.len() != self.dim {
                return Err(Error::NotDelzant(format!(
                    "vertex {:?} has {} edges, expected {}",
                    self.vertices[v],
                    at.len(),
                    self.dim
                )));
            }
            let dirs: Vec<&Vec<Int>> = at.iter().map(|(_, d, _)| d).collect();
            let det = match self.dim {
                2 => dirs[0][0] * dirs[1][1] - dirs[0][1] * dirs[1][0],
                3 => det3(dirs[0], dirs[1], dirs[2]),
                _ => unreachable!(),
            };
            if det.abs() != 1 {
                return Err(Error::NotDelzant(format!(
                    "edge directions at vertex {:?} have determinant {det}",
                    self.vertices[v]
                )));
            }
        }
        for e in &self.edges {
            if e.length < 1 {
                return Err(Error::NotDelzant("edge of nonpositive length".into()));
            }
        }
        Ok(())
    }
}

fn det3(a: &[Int], b: &[Int], c: &[Int]) -> Int {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn gcd(a: Int, b: Int) -> Int {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn primitive(v: &[Int]) -> (Vec<Int>, Int) {
    let mut g = 0;
    for &c in v {
        g = gcd(g, c.abs());
    }
    if g == 0 {
        return (v.to_vec(), 0);
    }
    (v.iter().map(|&c| c / g).collect(), g)
}

fn enumerate_facets(dim: usize, vertices: &[Point]) -> Result<Vec<Facet>> {
    let n = vertices.len();
    let mut seen: Vec<(Vec<Int>, Int)> = Vec::new();
    let mut push_candidate = |normal: Vec<Int>, offset: Int| {
        if !seen.contains(&(normal.clone(), offset)) {
            seen.push((normal, offset));
        }
    };
    match dim {
        2 => {
            for i in 0..n {
                for j in i + 1..n {
                    let d: Vec<Int> = vertices[j]
                        .iter()
                        .zip(&vertices[i])
                        .map(|(a, b)| a - b)
                        .collect();
                    let normal = vec![d[1], -d[0]];
                    let (normal, g) = primitive(&normal);
                    if g == 0 {
                        continue;
                    }
                    try_supporting(vertices, normal, &mut push_candidate);
                }
            }
        }
        3 => {
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        let u: Vec<Int> = vertices[j]
                            .iter()
                            .zip(&vertices[i])
                            .map(|(a, b)| a - b)
                            .collect();
                        let w: Vec<Int> = vertices[k]
                            .iter()
                            .zip(&vertices[i])
                            .map(|(a, b)| a - b)
                            .collect();
                        let normal = vec![
                            u[1] * w[2] - u[2] * w[1],
                            u[2] * w[0] - u[0] * w[2],
                            u[0] * w[1] - u[1] * w[0],
                        ];
                        let (normal, g) = primitive(&normal);
                        if g == 0 {
                            continue;
                        }
                        try_supporting(vertices, normal, &mut push_candidate);
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    let mut facets = Vec::new();
    for (normal, offset) in seen {
        let members: Vec<usize> = (0..n)
            .filter(|&v| dot(&normal, &vertices[v]) == offset)
            .collect();
        if members.len() >= dim {
            facets.push(Facet {
                normal,
                offset,
                vertices: members,
            });
        }
    }
    if facets.is_empty() {
        return Err(Error::NotDelzant(
            "no supporting facets found (degenerate input)".into(),
        ));
    }
    Ok(facets)
}

fn try_supporting(vertices: &[Point], normal: Vec<Int>, push: &mut impl FnMut(Vec<Int>, Int)) {
    let values: Vec<Int> = vertices.iter().map(|v| dot(&normal, v)).collect();
    let max = *values.iter().max().expect("nonempty");
    let min = *values.iter().min().expect("nonempty");
    if values.iter().all(|&x| x <= max) && values.iter().filter(|&&x| x == max).count() >= 1 {
        // <normal, p> <= max supports the polytope from this side.
        push(normal.clone(), max);
    }
    let neg: Vec<Int> = normal.iter().map(|&c| -c).collect();
    push(neg, -min);
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn enumerate_edges(dim: usize, vertices: &[Point], facets: &[Facet]) -> Result<Vec<Edge>> {
    let n = vertices.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let shared = facets
                .iter()
                .filter(|f| f.vertices.contains(&i) && f.vertices.contains(&j))
                .count();
            if shared >= dim - 1 {
                let d: Vec<Int> = vertices[j]
                    .iter()
                    .zip(&vertices[i])
                    .map(|(a, b)| a - b)
                    .collect();
                let (direction, length) = primitive(&d);
                if length == 0 {
                    continue;
                }
                // Reject pairs that only look adjacent because a third
                // vertex lies between them on the same line.
                let between = (0..n).any(|k| {
                    k != i && k != j && {
                        let dk: Vec<Int> = vertices[k]
                            .iter()
                            .zip(&vertices[i])
                            .map(|(a, b)| a - b)
                            .collect();
                        let (dir_k, len_k) = primitive(&dk);
                        dir_k == direction && len_k > 0 && len_k < length
                    }
                });
                if !between {
                    edges.push(Edge {
                        ends: (i, j),
                        direction,
                        length,
                    });
                }
            }
        }
    }
    Ok(edges)
}

/// A maximal face on which the circle subgroup acts trivially.
#[derive(Debug, Clone)]
pub struct FixedFace {
    pub vertices: Vec<usize>,
    /// Raw (unshifted) moment value `<xi, face>`.
    pub raw_level: Int,
}

/// Maximal faces on which `<xi, .>` is constant: connected components of
/// the subgraph of zero-weight edges.
pub fn fixed_faces(p: &DelzantPolytope, s: &CircleSubgroup) -> Vec<FixedFace> {
    let n = p.vertices.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for e in &p.edges {
        if s.pair(&e.direction) == 0 {
            let (a, b) = (find(&mut parent, e.ends.0), find(&mut parent, e.ends.1));
            parent[a] = b;
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        let root = find(&mut parent, v);
        groups.entry(root).or_default().push(v);
    }
    let mut out: Vec<FixedFace> = groups
        .into_values()
        .map(|vs| FixedFace {
            raw_level: s.pair(&p.vertices[vs[0]]),
            vertices: vs,
        })
        .collect();
    out.sort_by_key(|f| f.raw_level);
    out
}

/// Semifreeness test: every weight `<xi, primitive edge direction>` at
/// every vertex lies in {-1, 0, 1}.
pub fn is_semifree(p: &DelzantPolytope, s: &CircleSubgroup) -> bool {
    (0..p.vertices.len()).all(|v| {
        p.edges_at(v).iter().all(|(_, dir, _)| {
            let w = s.pair(dir);
            (-1..=1).contains(&w)
        })
    })
}

/// One fixed component as reported by the toric (or precomputed) pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportComponent {
    pub level: Int,
    pub shape: ComponentShape,
    /// Lattice length of the moment edge (symplectic area), for spheres.
    pub area: Option<Int>,
    /// Isotropy weights at a representative vertex (toric case only).
    pub weights: Option<Vec<Int>>,
    /// For level-0 spheres: number of one-skeleton edges from the
    /// component down to each level `-1` point, sorted. This equals the
    /// pairing of the component's dual class with each exceptional class
    /// born at the `-1` wall, and is the tiebreaker for records that agree
    /// on every coarser invariant.
    pub point_pairings: Option<Vec<Int>>,
}

/// Fixed-point data extracted from a fixture.
#[derive(Debug, Clone)]
pub struct ToricFixedReport {
    pub balanced_shift: Int,
    pub semifree: bool,
    pub components: Vec<ReportComponent>,
    pub b_min: Int,
    pub b_max: Int,
}

impl ToricFixedReport {
    pub fn m(&self) -> usize {
        self.components.iter().filter(|c| c.level == -1).count()
    }

    pub fn z0_areas(&self) -> Vec<Int> {
        let mut v: Vec<Int> = self
            .components
            .iter()
            .filter(|c| c.level == 0)
            .filter_map(|c| c.area)
            .collect();
        v.sort_unstable();
        v
    }

    pub fn profile(&self) -> CriticalProfile {
        CriticalProfile::new(
            self.m(),
            self.components.iter().filter(|c| c.level == 0).count(),
        )
    }
}

/// Compute the balanced shift and the full fixed-point report of a
/// semifree toric fixture.
pub fn balanced_values(p: &DelzantPolytope, s: &CircleSubgroup) -> Result<ToricFixedReport> {
    if !is_semifree(p, s) {
        return Err(Error::NotBalanced(
            "the circle action is not semifree".into(),
        ));
    }
    let faces = fixed_faces(p, s);
    let mut shift: Option<Int> = None;
    let mut comps: Vec<(FixedFace, ComponentShape, Option<Int>, Vec<Int>)> = Vec::new();
    for f in &faces {
        let (shape, area) = match f.vertices.len() {
            1 => (ComponentShape::Point, None),
            2 => {
                let e = p
                    .edges
                    .iter()
                    .find(|e| {
                        (e.ends.0 == f.vertices[0] && e.ends.1 == f.vertices[1])
                            || (e.ends.0 == f.vertices[1] && e.ends.1 == f.vertices[0])
                    })
                    .ok_or_else(|| {
                        Error::NotBalanced("two-vertex fixed face is not an edge".into())
                    })?;
                (ComponentShape::Sphere, Some(e.length))
            }
            _ => {
                return Err(Error::NotBalanced(format!(
                    "fixed face with {} vertices: four-dimensional fixed sets are out of scope",
                    f.vertices.len()
                )))
            }
        };
        // Weight sum at a representative vertex; all vertices of the
        // component must agree.
        let mut sums = Vec::new();
        let mut weights_repr = Vec::new();
        for &v in &f.vertices {
            let mut ws: Vec<Int> = p
                .edges_at(v)
                .iter()
                .map(|(_, dir, _)| s.pair(dir))
                .collect();
            ws.sort_unstable();
            sums.push(ws.iter().sum::<Int>());
            if weights_repr.is_empty() {
                weights_repr = ws;
            }
        }
        if sums.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::NotBalanced(
                "weight sums differ along one fixed component".into(),
            ));
        }
        let wanted_shift = -sums[0] - f.raw_level;
        match shift {
            None => shift = Some(wanted_shift),
            Some(sv) if sv == wanted_shift => {}
            Some(sv) => {
                return Err(Error::NotBalanced(format!(
                    "no consistent shift: component at raw level {} wants {wanted_shift}, others want {sv}",
                    f.raw_level
                )))
            }
        }
        comps.push((f.clone(), shape, area, weights_repr));
    }
    let shift = shift.ok_or_else(|| Error::NotBalanced("no fixed components".into()))?;

    // Assemble components with shifted levels, then the point pairings of
    // the level-zero spheres.
    let level_of = |f: &FixedFace| f.raw_level + shift;
    let minus_one_points: Vec<usize> = comps
        .iter()
        .filter(|(f, shape, ..)| level_of(f) == -1 && *shape == ComponentShape::Point)
        .map(|(f, ..)| f.vertices[0])
        .collect();
    let mut components = Vec::new();
    for (f, shape, area, weights) in &comps {
        let level = level_of(f);
        let point_pairings = if level == 0 && *shape == ComponentShape::Sphere {
            let mut counts: Vec<Int> = minus_one_points
                .iter()
                .map(|&pt| {
                    f.vertices
                        .iter()
                        .map(|&v| {
                            p.edges
                                .iter()
                                .filter(|e| {
                                    (e.ends.0 == v && e.ends.1 == pt)
                                        || (e.ends.0 == pt && e.ends.1 == v)
                                })
                                .count() as Int
                        })
                        .sum()
                })
                .collect();
            counts.sort_unstable();
            Some(counts)
        } else {
            None
        };
        components.push(ReportComponent {
            level,
            shape: *shape,
            area: *area,
            weights: Some(weights.clone()),
            point_pairings,
        });
    }
    components.sort_by_key(|c| (c.level, c.area));
    finish_report(shift, true, components)
}

/// Validate extremal structure and derive `b_min`, `b_max` from the
/// extremal areas (`area = 2 + b`).
fn finish_report(
    shift: Int,
    semifree: bool,
    components: Vec<ReportComponent>,
) -> Result<ToricFixedReport> {
    let min_sphere = components
        .iter()
        .find(|c| c.level == -2 && c.shape == ComponentShape::Sphere)
        .ok_or_else(|| Error::NotBalanced("no fixed sphere at level -2".into()))?;
    let max_sphere = components
        .iter()
        .find(|c| c.level == 2 && c.shape == ComponentShape::Sphere)
        .ok_or_else(|| Error::NotBalanced("no fixed sphere at level +2".into()))?;
    for c in &components {
        if !(-2..=2).contains(&c.level) {
            return Err(Error::NotBalanced(format!(
                "fixed component at balanced level {} is outside [-2, 2]",
                c.level
            )));
        }
        if c.level.abs() == 1 && c.shape != ComponentShape::Point {
            return Err(Error::NotBalanced(
                "non-point component at level +-1".into(),
            ));
        }
    }
    let n_down = components.iter().filter(|c| c.level == -1).count();
    let n_up = components.iter().filter(|c| c.level == 1).count();
    if n_down != n_up {
        return Err(Error::NotBalanced(format!(
            "|Z_-1| = {n_down} but |Z_1| = {n_up}; Poincare duality is violated"
        )));
    }
    let b_min = min_sphere.area.unwrap_or(0) - 2;
    let b_max = max_sphere.area.unwrap_or(0) - 2;
    Ok(ToricFixedReport {
        balanced_shift: shift,
        semifree,
        components,
        b_min,
        b_max,
    })
}

/// Match a report against the classification: the unique record agreeing on
/// (interior pattern, m, level-0 area multiset, b_min, b_max, b2, c1^3),
/// refined by the level-0 point pairings when several records tie.
pub fn match_tfd(report: &ToricFixedReport, records: &[TFDRecord]) -> Result<String> {
    let profile = report.profile();
    let areas = report.z0_areas();
    let b2 = betti2(&profile);
    let c13 = chern_number(&profile, report.b_min, report.b_max);
    let candidates: Vec<&TFDRecord> = records
        .iter()
        .filter(|r| {
            r.profile == profile
                && r.z0_areas() == areas
                && r.b_min == report.b_min
                && r.b_max == report.b_max
                && r.b2 == b2
                && r.c1_cubed == c13
        })
        .collect();
    match candidates.as_slice() {
        [] => Err(Error::AmbiguousMatch(format!(
            "no record matches profile {profile:?}, areas {areas:?}, b = ({}, {}), c1^3 = {c13}",
            report.b_min, report.b_max
        ))),
        [unique] => Ok(unique.case_id.clone()),
        several => {
            let mut report_pairings: Vec<(Int, Vec<Int>)> = Vec::new();
            for c in report.components.iter().filter(|c| c.level == 0) {
                match (&c.point_pairings, c.area) {
                    (Some(p), Some(a)) => report_pairings.push((a, p.clone())),
                    _ => {
                        return Err(Error::AmbiguousMatch(format!(
                            "{} records tie and the report carries no point pairings",
                            several.len()
                        )))
                    }
                }
            }
            report_pairings.sort();
            let refined: Vec<&&TFDRecord> = several
                .iter()
                .filter(|r| {
                    r.z0_point_pairings()
                        .map(|p| p == report_pairings)
                        .unwrap_or(false)
                })
                .collect();
            match refined.as_slice() {
                [unique] => Ok(unique.case_id.clone()),
                [] => Err(Error::AmbiguousMatch(
                    "point pairings eliminate every tied record".into(),
                )),
                _ => Err(Error::AmbiguousMatch(
                    "records remain tied after the point-pairing refinement".into(),
                )),
            }
        }
    }
}

/// A parsed fixture file.
#[derive(Debug, Clone)]
pub enum FixtureData {
    Polytope {
        polytope: DelzantPolytope,
        xi: CircleSubgroup,
    },
    Report {
        components: Vec<ReportComponent>,
    },
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub data: FixtureData,
    pub expect: Option<String>,
}

/// Parse the fixture format: either
///
/// ```text
/// dim 3
/// 0 0 0
/// 4 0 0
/// ...
/// xi: 1 1 0
/// expect: I-1
/// ```
///
/// or a precomputed report
///
/// ```text
/// report
/// -2 sphere 2
/// -1 point
/// 0 sphere 4
/// 1 point
/// 2 sphere 2
/// expect: II-1.1
/// ```
pub fn parse_fixture(text: &str) -> Result<Fixture> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    if lines.is_empty() {
        return Err(Error::FixtureParse("empty fixture".into()));
    }
    let mut expect = None;
    if lines[0] == "report" {
        let mut components = Vec::new();
        for line in &lines[1..] {
            if let Some(rest) = line.strip_prefix("expect:") {
                expect = Some(rest.trim().to_string());
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() < 2 {
                return Err(Error::FixtureParse(format!("bad report line: {line}")));
            }
            let level: Int = fields[0]
                .parse()
                .map_err(|_| Error::FixtureParse(format!("bad level in: {line}")))?;
            match fields[1] {
                "point" => components.push(ReportComponent {
                    level,
                    shape: ComponentShape::Point,
                    area: None,
                    weights: None,
                    point_pairings: None,
                }),
                "sphere" => {
                    let area: Int = fields
                        .get(2)
                        .ok_or_else(|| Error::FixtureParse(format!("sphere without area: {line}")))?
                        .parse()
                        .map_err(|_| Error::FixtureParse(format!("bad area in: {line}")))?;
                    components.push(ReportComponent {
                        level,
                        shape: ComponentShape::Sphere,
                        area: Some(area),
                        weights: None,
                        point_pairings: None,
                    });
                }
                other => {
                    return Err(Error::FixtureParse(format!("unknown shape: {other}")));
                }
            }
        }
        return Ok(Fixture {
            data: FixtureData::Report { components },
            expect,
        });
    }

    let dim: usize = lines[0]
        .strip_prefix("dim")
        .map(str::trim)
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| Error::FixtureParse("first line must be `dim <d>`".into()))?;
    let mut vertices = Vec::new();
    let mut xi = None;
    for line in &lines[1..] {
        if let Some(rest) = line.strip_prefix("xi:") {
            let coords: Vec<Int> = rest
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::FixtureParse(format!("bad xi: {line}")))
                })
                .collect::<Result<_>>()?;
            xi = Some(coords);
        } else if let Some(rest) = line.strip_prefix("expect:") {
            expect = Some(rest.trim().to_string());
        } else {
            let coords: Vec<Int> = line
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::FixtureParse(format!("bad vertex: {line}")))
                })
                .collect::<Result<_>>()?;
            if coords.len() != dim {
                return Err(Error::FixtureParse(format!(
                    "vertex {line} has {} coordinates, expected {dim}",
                    coords.len()
                )));
            }
            vertices.push(coords);
        }
    }
    let xi = xi.ok_or_else(|| Error::FixtureParse("missing xi line".into()))?;
    if xi.len() != dim {
        return Err(Error::FixtureParse("xi has wrong dimension".into()));
    }
    let polytope = DelzantPolytope::from_vertices(dim, vertices)?;
    let xi = CircleSubgroup::new(xi)?;
    Ok(Fixture {
        data: FixtureData::Polytope { polytope, xi },
        expect,
    })
}

/// Outcome of verifying one fixture against the classification.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub report: ToricFixedReport,
    pub matched: String,
    pub expected: Option<String>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.expected
            .as_deref()
            .map(|e| e == self.matched)
            .unwrap_or(true)
    }
}

/// Run a fixture end to end: build the report (from the polytope or
/// directly), match it, compare with the expectation.
pub fn verify_fixture(fixture: &Fixture, records: &[TFDRecord]) -> Result<VerifyOutcome> {
    let report = match &fixture.data {
        FixtureData::Polytope { polytope, xi } => balanced_values(polytope, xi)?,
        FixtureData::Report { components } => {
            let mut components = components.clone();
            components.sort_by_key(|c| (c.level, c.area));
            finish_report(0, true, components)?
        }
    };
    let matched = match_tfd(&report, records)?;
    Ok(VerifyOutcome {
        report,
        matched,
        expected: fixture.expect.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3_scaled() -> DelzantPolytope {
        DelzantPolytope::from_vertices(
            3,
            vec![vec![0, 0, 0], vec![4, 0, 0], vec![0, 4, 0], vec![0, 0, 4]],
        )
        .unwrap()
    }

    fn cube2() -> DelzantPolytope {
        let mut vs = Vec::new();
        for x in [0, 2] {
            for y in [0, 2] {
                for z in [0, 2] {
                    vs.push(vec![x, y, z]);
                }
            }
        }
        DelzantPolytope::from_vertices(3, vs).unwrap()
    }

    #[test]
    fn simplex_structure() {
        let p = p3_scaled();
        assert_eq!(p.facets.len(), 4);
        assert_eq!(p.edges.len(), 6);
    }

    #[test]
    fn cube_structure() {
        let p = cube2();
        assert_eq!(p.facets.len(), 6);
        assert_eq!(p.edges.len(), 12);
    }

    #[test]
    fn non_delzant_rejected() {
        // A triangle with a non-smooth corner.
        let r = DelzantPolytope::from_vertices(2, vec![vec![0, 0], vec![2, 0], vec![0, 4]]);
        assert!(matches!(r, Err(Error::NotDelzant(_))));
    }

    #[test]
    fn fixed_faces_on_p3() {
        let p = p3_scaled();
        let s = CircleSubgroup::new(vec![1, 1, 0]).unwrap();
        let faces = fixed_faces(&p, &s);
        // Two fixed edges: the z-axis edge at raw level 0 and the
        // (4,0,0)-(0,4,0) edge at raw level 4.
        assert_eq!(faces.len(), 2);
        assert_eq!(faces[0].vertices.len(), 2);
        assert_eq!(faces[1].vertices.len(), 2);
        assert_eq!(faces[0].raw_level, 0);
        assert_eq!(faces[1].raw_level, 4);
    }

    #[test]
    fn generic_xi_fixes_vertices_only() {
        let p = p3_scaled();
        let s = CircleSubgroup::new(vec![1, 2, 5]).unwrap();
        let faces = fixed_faces(&p, &s);
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.vertices.len() == 1));
    }

    #[test]
    fn cube_has_four_fixed_edges() {
        let p = cube2();
        let s = CircleSubgroup::new(vec![1, 0, 1]).unwrap();
        let faces = fixed_faces(&p, &s);
        assert_eq!(faces.iter().filter(|f| f.vertices.len() == 2).count(), 4);
    }

    #[test]
    fn semifree_tests() {
        let p = p3_scaled();
        assert!(is_semifree(
            &p,
            &CircleSubgroup::new(vec![1, 1, 0]).unwrap()
        ));
        assert!(!is_semifree(
            &p,
            &CircleSubgroup::new(vec![2, 1, 0]).unwrap()
        ));
        assert!(is_semifree(
            &cube2(),
            &CircleSubgroup::new(vec![1, 0, 1]).unwrap()
        ));
    }

    #[test]
    fn balanced_report_on_p3() {
        let p = p3_scaled();
        let s = CircleSubgroup::new(vec![1, 1, 0]).unwrap();
        let report = balanced_values(&p, &s).unwrap();
        assert_eq!(report.balanced_shift, -2);
        assert_eq!((report.b_min, report.b_max), (2, 2));
        assert_eq!(report.m(), 0);
    }

    #[test]
    fn balanced_report_on_cube() {
        let report =
            balanced_values(&cube2(), &CircleSubgroup::new(vec![1, 0, 1]).unwrap()).unwrap();
        assert_eq!(report.balanced_shift, -2);
        assert_eq!((report.b_min, report.b_max), (0, 0));
        assert_eq!(report.z0_areas(), vec![2, 2]);
    }

    #[test]
    fn nonprimitive_xi_rejected() {
        assert!(CircleSubgroup::new(vec![2, 0, 2]).is_err());
        assert!(CircleSubgroup::new(vec![0, 0, 0]).is_err());
    }

    #[test]
    fn fixture_roundtrip() {
        let text = "# simplex\ndim 3\n0 0 0\n4 0 0\n0 4 0\n0 0 4\nxi: 1 1 0\nexpect: I-1\n";
        let f = parse_fixture(text).unwrap();
        assert_eq!(f.expect.as_deref(), Some("I-1"));
        match &f.data {
            FixtureData::Polytope { polytope, .. } => assert_eq!(polytope.vertices.len(), 4),
            _ => panic!("expected polytope fixture"),
        }

        let text = "report\n-2 sphere 2\n0 sphere 4\n2 sphere 2\nexpect: II-1.1\n";
        let f = parse_fixture(text).unwrap();
        match &f.data {
            FixtureData::Report { components } => assert_eq!(components.len(), 3),
            _ => panic!("expected report fixture"),
        }
    }

    #[test]
    fn side_one_cube_is_not_balanced_compatible() {
        // The unit cube is Delzant and the (1,0,1)-action semifree, but no
        // shift makes the fixed levels balanced (the form is not monotone).
        let mut vs = Vec::new();
        for x in [0, 1] {
            for y in [0, 1] {
                for z in [0, 1] {
                    vs.push(vec![x, y, z]);
                }
            }
        }
        let p = DelzantPolytope::from_vertices(3, vs).unwrap();
        let s = CircleSubgroup::new(vec![1, 0, 1]).unwrap();
        assert!(is_semifree(&p, &s));
        assert!(matches!(
            balanced_values(&p, &s),
            Err(Error::NotBalanced(_))
        ));
    }

    #[test]
    fn match_without_pairings_is_ambiguous_on_tied_rows() {
        // A report with the IV-1-1.1 / IV-1-1.2 invariants but no
        // point-pairing data cannot be matched.
        let records = crate::classifier::classify_all().unwrap().records;
        let mk_sphere = |level: Int, area: Int| ReportComponent {
            level,
            shape: ComponentShape::Sphere,
            area: Some(area),
            weights: None,
            point_pairings: None,
        };
        let mk_point = |level: Int| ReportComponent {
            level,
            shape: ComponentShape::Point,
            area: None,
            weights: None,
            point_pairings: None,
        };
        let report = ToricFixedReport {
            balanced_shift: 0,
            semifree: true,
            components: vec![
                mk_sphere(-2, 1),
                mk_point(-1),
                mk_point(-1),
                mk_sphere(0, 1),
                mk_sphere(0, 1),
                mk_point(1),
                mk_point(1),
                mk_sphere(2, 1),
            ],
            b_min: -1,
            b_max: -1,
        };
        assert!(matches!(
            match_tfd(&report, &records),
            Err(Error::AmbiguousMatch(_))
        ));
    }

    #[test]
    fn malformed_fixtures_rejected() {
        assert!(parse_fixture("").is_err());
        assert!(parse_fixture("dim 3\n0 0\nxi: 1 1 0\n").is_err());
        assert!(parse_fixture("dim 3\n0 0 0\n4 0 0\n0 4 0\n0 0 4\n").is_err());
        assert!(parse_fixture("report\n-2 blob 2\n").is_err());
    }
}
