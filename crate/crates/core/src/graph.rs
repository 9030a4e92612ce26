//! Signed rotation systems.
//!
//! A ribbon graph is stored as a cyclic order of half-edges around every
//! vertex together with a twist bit per edge. Faces are traced in a flag
//! model with four flags per edge: flag `4*edge + 2*end + side`, where side 1
//! faces the next half-edge of the rotation and side 0 the previous one.
//! Two involutions act on flags:
//!
//! * the corner involution pairs `(h, 1)` with `(next(h), 0)`;
//! * the edge involution pairs `(h, s)` with `(opposite(h), 1 - s)` for an
//!   untwisted edge and with `(opposite(h), s)` for a twisted one.
//!
//! Boundary components are the orbits of the group they generate, plus one
//! boundary for every vertex without half-edges.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub type EdgeId = usize;
pub type VertexId = usize;

/// One end of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub edge: EdgeId,
    pub end: u8,
}

impl HalfEdge {
    pub fn new(edge: EdgeId, end: u8) -> Self {
        debug_assert!(end < 2);
        HalfEdge { edge, end }
    }

    #[inline]
    pub fn index(self) -> usize {
        2 * self.edge + self.end as usize
    }

    #[inline]
    pub fn from_index(index: usize) -> Self {
        HalfEdge {
            edge: index / 2,
            end: (index % 2) as u8,
        }
    }

    #[inline]
    pub fn opposite(self) -> Self {
        HalfEdge {
            edge: self.edge,
            end: 1 - self.end,
        }
    }
}

impl fmt::Display for HalfEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.edge, self.end)
    }
}

/// A side of a half-edge; `4*edge + 2*end + side`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag(pub usize);

impl Flag {
    #[inline]
    pub fn new(half_edge: HalfEdge, side: u8) -> Self {
        Flag(2 * half_edge.index() + side as usize)
    }

    #[inline]
    pub fn half_edge(self) -> HalfEdge {
        HalfEdge::from_index(self.0 / 2)
    }

    #[inline]
    pub fn side(self) -> u8 {
        (self.0 % 2) as u8
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub twisted: bool,
}

/// One boundary component. Isolated vertices give an empty walk and record
/// the vertex instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceWalk {
    pub flags: Vec<Flag>,
    pub isolated_vertex: Option<VertexId>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }
}

/// A ribbon graph as a signed rotation system. Immutable once built; every
/// rotation is stored starting at its smallest half-edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    vertex_names: Vec<String>,
    rotations: Vec<Vec<HalfEdge>>,
    edges: Vec<Edge>,
    // per half-edge index: (vertex, position in rotation)
    location: Vec<(VertexId, usize)>,
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '\'' | '-' | '+'))
}

fn normalize_rotation(mut rotation: Vec<HalfEdge>) -> Vec<HalfEdge> {
    if let Some((start, _)) = rotation.iter().enumerate().min_by_key(|(_, h)| **h) {
        rotation.rotate_left(start);
    }
    rotation
}

impl RibbonGraph {
    /// Builds a graph from named vertices with their rotations and the edge list.
    pub fn new(vertices: Vec<(String, Vec<HalfEdge>)>, edges: Vec<Edge>) -> Result<Self> {
        let mut names = HashSet::new();
        for (name, _) in &vertices {
            if !valid_name(name) {
                return Err(Error::Malformed(format!("invalid vertex name `{name}`")));
            }
            if !names.insert(name.as_str()) {
                return Err(Error::Malformed(format!("duplicate vertex name `{name}`")));
            }
        }
        let mut edge_names = HashSet::new();
        for edge in &edges {
            if !valid_name(&edge.name) {
                return Err(Error::Malformed(format!("invalid edge name `{}`", edge.name)));
            }
            if !edge_names.insert(edge.name.as_str()) {
                return Err(Error::Malformed(format!("duplicate edge name `{}`", edge.name)));
            }
        }

        let mut location = vec![(usize::MAX, 0); 2 * edges.len()];
        let mut vertex_names = Vec::with_capacity(vertices.len());
        let mut rotations = Vec::with_capacity(vertices.len());
        for (v, (name, rotation)) in vertices.into_iter().enumerate() {
            let rotation = normalize_rotation(rotation);
            for (pos, h) in rotation.iter().enumerate() {
                if h.edge >= edges.len() || h.end > 1 {
                    return Err(Error::Malformed(format!(
                        "half-edge {h} at vertex `{name}` names no edge"
                    )));
                }
                if location[h.index()].0 != usize::MAX {
                    return Err(Error::Malformed(format!(
                        "half-edge {}.{} appears twice",
                        edges[h.edge].name, h.end
                    )));
                }
                location[h.index()] = (v, pos);
            }
            vertex_names.push(name);
            rotations.push(rotation);
        }
        if let Some(missing) = location.iter().position(|l| l.0 == usize::MAX) {
            let h = HalfEdge::from_index(missing);
            return Err(Error::Malformed(format!(
                "half-edge {}.{} is in no rotation",
                edges[h.edge].name, h.end
            )));
        }
        Ok(RibbonGraph {
            vertex_names,
            rotations,
            edges,
            location,
        })
    }

    /// Builds a graph with default names `v0, v1, ...` and `e0, e1, ...`.
    pub fn from_rotations(rotations: Vec<Vec<HalfEdge>>, twists: Vec<bool>) -> Result<Self> {
        let vertices = rotations
            .into_iter()
            .enumerate()
            .map(|(i, r)| (format!("v{i}"), r))
            .collect();
        let edges = twists
            .into_iter()
            .enumerate()
            .map(|(i, twisted)| Edge {
                name: format!("e{i}"),
                twisted,
            })
            .collect();
        Self::new(vertices, edges)
    }

    /// Disassembles the graph into the parts accepted by [`RibbonGraph::new`].
    pub fn into_parts(self) -> (Vec<(String, Vec<HalfEdge>)>, Vec<Edge>) {
        (
            self.vertex_names.into_iter().zip(self.rotations).collect(),
            self.edges,
        )
    }

    pub fn parts(&self) -> (Vec<(String, Vec<HalfEdge>)>, Vec<Edge>) {
        self.clone().into_parts()
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn rotation(&self, v: VertexId) -> &[HalfEdge] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<HalfEdge>] {
        &self.rotations
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn is_twisted(&self, e: EdgeId) -> bool {
        self.edges[e].twisted
    }

    pub fn twists(&self) -> Vec<bool> {
        self.edges.iter().map(|e| e.twisted).collect()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e].name
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|n| n == name)
    }

    /// Resolves an edge given by name or by numeric id.
    pub fn resolve_edge(&self, key: &str) -> Result<EdgeId> {
        self.edge_by_name(key)
            .or_else(|| key.parse::<usize>().ok().filter(|&e| e < self.edge_count()))
            .ok_or_else(|| Error::UnknownEdge(key.to_string()))
    }

    pub fn resolve_vertex(&self, key: &str) -> Result<VertexId> {
        self.vertex_by_name(key)
            .or_else(|| key.parse::<usize>().ok().filter(|&v| v < self.vertex_count()))
            .ok_or_else(|| Error::UnknownVertex(key.to_string()))
    }

    pub(crate) fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e < self.edge_count() {
            Ok(())
        } else {
            Err(Error::UnknownEdge(e.to_string()))
        }
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    #[inline]
    pub fn vertex_of(&self, h: HalfEdge) -> VertexId {
        self.location[h.index()].0
    }

    /// The half-edge following `h` in its vertex rotation.
    #[inline]
    pub fn next(&self, h: HalfEdge) -> HalfEdge {
        let (v, pos) = self.location[h.index()];
        let rot = &self.rotations[v];
        rot[(pos + 1) % rot.len()]
    }

    #[inline]
    pub fn prev(&self, h: HalfEdge) -> HalfEdge {
        let (v, pos) = self.location[h.index()];
        let rot = &self.rotations[v];
        rot[(pos + rot.len() - 1) % rot.len()]
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (
            self.vertex_of(HalfEdge::new(e, 0)),
            self.vertex_of(HalfEdge::new(e, 1)),
        )
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (u, v) = self.endpoints(e);
        u == v
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotations[v].len()
    }

    /// Connected components of the underlying abstract graph.
    pub fn components(&self) -> usize {
        let labels = self.component_labels();
        labels.iter().collect::<HashSet<_>>().len()
    }

    /// Component label per vertex (the smallest vertex id of its component).
    pub fn component_labels(&self) -> Vec<VertexId> {
        let mut parent: Vec<usize> = (0..self.vertex_count()).collect();
        fn find(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for e in 0..self.edge_count() {
            let (u, v) = self.endpoints(e);
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        (0..self.vertex_count())
            .map(|v| find(&mut parent, v))
            .collect()
    }

    /// Cycle rank `e - v + c`.
    pub fn cycle_rank(&self) -> usize {
        self.edge_count() + self.components() - self.vertex_count()
    }

    /// True when deleting `e` disconnects its component.
    pub fn is_bridge(&self, e: EdgeId) -> bool {
        let (u, v) = self.endpoints(e);
        if u == v {
            return false;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([u]);
        seen[u] = true;
        while let Some(x) = queue.pop_front() {
            for h in &self.rotations[x] {
                if h.edge == e {
                    continue;
                }
                let y = self.vertex_of(h.opposite());
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        !seen[v]
    }

    /// The corner involution, indexed by flag.
    pub(crate) fn corner_table(&self) -> Vec<u32> {
        let mut corner = vec![0u32; 4 * self.edge_count()];
        for rot in &self.rotations {
            for (i, &h) in rot.iter().enumerate() {
                let n = rot[(i + 1) % rot.len()];
                let a = Flag::new(h, 1).0;
                let b = Flag::new(n, 0).0;
                corner[a] = b as u32;
                corner[b] = a as u32;
            }
        }
        corner
    }

    pub fn isolated_vertices(&self) -> usize {
        self.rotations.iter().filter(|r| r.is_empty()).count()
    }

    /// All boundary components, each walk starting at the smallest flag not
    /// yet traversed. Walks of isolated vertices come last.
    pub fn trace_faces(&self) -> Vec<FaceWalk> {
        let corner = self.corner_table();
        let nflags = corner.len();
        let mut seen = vec![false; nflags];
        let mut walks = Vec::new();
        for start in 0..nflags {
            if seen[start] {
                continue;
            }
            let mut flags = Vec::new();
            let mut x = start;
            loop {
                seen[x] = true;
                flags.push(Flag(x));
                let y = edge_involution(x, self.edges[x / 4].twisted);
                seen[y] = true;
                flags.push(Flag(y));
                x = corner[y] as usize;
                if x == start {
                    break;
                }
            }
            walks.push(FaceWalk {
                flags,
                isolated_vertex: None,
            });
        }
        for (v, rot) in self.rotations.iter().enumerate() {
            if rot.is_empty() {
                walks.push(FaceWalk {
                    flags: Vec::new(),
                    isolated_vertex: Some(v),
                });
            }
        }
        walks
    }

    pub fn face_count(&self) -> usize {
        let corner = self.corner_table();
        let twists = self.twists();
        count_orbits(&corner, |e| twists[e], &mut vec![false; corner.len()]) + self.isolated_vertices()
    }

    /// Euler genus `2c + e - v - f`.
    pub fn euler_genus(&self) -> usize {
        2 * self.components() + self.edge_count() - self.vertex_count() - self.face_count()
    }

    /// Vertex parities that untwist every edge, if such a choice exists.
    pub fn orientation_witness(&self) -> Option<Vec<bool>> {
        let mut parity: Vec<Option<bool>> = vec![None; self.vertex_count()];
        for root in 0..self.vertex_count() {
            if parity[root].is_some() {
                continue;
            }
            parity[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                let px = parity[x].unwrap();
                for &h in &self.rotations[x] {
                    let y = self.vertex_of(h.opposite());
                    let want = px ^ self.edges[h.edge].twisted;
                    match parity[y] {
                        None => {
                            parity[y] = Some(want);
                            queue.push_back(y);
                        }
                        Some(p) if p != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(parity.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_orientable(&self) -> bool {
        self.orientation_witness().is_some()
    }

    /// Reverses the rotation at `v` and toggles the twist of every non-loop
    /// edge at `v`. The embedded surface is unchanged.
    pub fn vertex_flip(&self, v: VertexId) -> Result<RibbonGraph> {
        self.check_vertex(v)?;
        let mut g = self.clone();
        for h in &self.rotations[v] {
            if !self.is_loop(h.edge) {
                g.edges[h.edge].twisted ^= true;
            }
        }
        let mut rot = self.rotations[v].clone();
        rot.reverse();
        let rot = normalize_rotation(rot);
        for (pos, h) in rot.iter().enumerate() {
            g.location[h.index()] = (v, pos);
        }
        g.rotations[v] = rot;
        Ok(g)
    }

    /// True when `other` is the same embedded graph up to vertex flips,
    /// renaming of vertices and exchange of the two ends of an edge. Edge ids
    /// must correspond.
    pub fn same_embedding(&self, other: &RibbonGraph) -> bool {
        if self.edge_count() != other.edge_count()
            || self.vertex_count() != other.vertex_count()
            || self.isolated_vertices() != other.isolated_vertices()
        {
            return false;
        }
        let (c1, s1, e1) = self.gem();
        let (c2, s2, e2) = other.gem();
        let n = c1.len();
        let mut map: Vec<Option<usize>> = vec![None; n];
        let mut taken = vec![false; n];
        for start in 0..n {
            if map[start].is_some() {
                continue;
            }
            // the image of `start` must be one of the four flags of its edge
            let base = start / 4 * 4;
            let mut found = None;
            for cand in base..base + 4 {
                let mut trial: HashMap<usize, usize> = HashMap::new();
                let mut used: HashSet<usize> = HashSet::new();
                let mut stack = vec![(start, cand)];
                let mut ok = true;
                while let Some((a, b)) = stack.pop() {
                    if a / 4 != b / 4 {
                        ok = false;
                        break;
                    }
                    match trial.get(&a) {
                        Some(&x) if x != b => {
                            ok = false;
                            break;
                        }
                        Some(_) => continue,
                        None => {}
                    }
                    if taken[b] || !used.insert(b) {
                        ok = false;
                        break;
                    }
                    trial.insert(a, b);
                    stack.push((c1[a], c2[b]));
                    stack.push((s1[a], s2[b]));
                    stack.push((e1[a], e2[b]));
                }
                if ok {
                    found = Some(trial);
                    break;
                }
            }
            match found {
                Some(trial) => {
                    for (a, b) in trial {
                        map[a] = Some(b);
                        taken[b] = true;
                    }
                }
                None => return false,
            }
        }
        true
    }

    /// The three flag involutions: corner, side swap, edge.
    pub(crate) fn gem(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let corner: Vec<usize> = self.corner_table().into_iter().map(|x| x as usize).collect();
        let n = corner.len();
        let side = (0..n).map(|f| f ^ 1).collect();
        let edge = (0..n)
            .map(|f| edge_involution(f, self.edges[f / 4].twisted))
            .collect();
        (corner, side, edge)
    }

    /// Twist bits as a mask. Only meaningful for at most 64 edges.
    pub(crate) fn twist_mask(&self) -> u64 {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.twisted)
            .fold(0u64, |m, (i, _)| m | (1u64 << i))
    }

    /// A name not used by any edge, derived from `base`.
    pub(crate) fn fresh_edge_name(&self, base: &str) -> String {
        fresh_name(base, |n| self.edge_by_name(n).is_some())
    }

    pub(crate) fn fresh_vertex_name(&self, base: &str) -> String {
        fresh_name(base, |n| self.vertex_by_name(n).is_some())
    }
}

pub(crate) fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    (1..)
        .map(|k| format!("{base}_{k}"))
        .find(|n| !taken(n))
        .unwrap()
}

#[inline]
pub(crate) fn edge_involution(flag: usize, twisted: bool) -> usize {
    if twisted {
        flag ^ 2
    } else {
        flag ^ 3
    }
}

/// Number of orbits of the corner and edge involutions on the flags of the
/// given corner table. `seen` must hold one entry per flag.
pub(crate) fn count_orbits(corner: &[u32], twisted: impl Fn(usize) -> bool, seen: &mut [bool]) -> usize {
    seen.iter_mut().for_each(|s| *s = false);
    let mut count = 0;
    for start in 0..corner.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        loop {
            seen[x] = true;
            let y = edge_involution(x, twisted(x / 4));
            seen[y] = true;
            x = corner[y] as usize;
            if x == start {
                break;
            }
        }
    }
    count
}

impl fmt::Display for RibbonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::render_rg(self))
    }
}
