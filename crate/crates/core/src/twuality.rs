//! Partial duals, partial Petrials and their composites.
//!
//! Partial duality works on the flag model of [`crate::graph`]: every edge
//! owns four flags, acted on by a side involution `S` (the two sides of one
//! half-edge) and an edge involution `E`. Vertices are the orbits of
//! `<C, S>` and faces the orbits of `<C, E>`, with `C` the corner involution.
//! Dualizing an edge exchanges `S` and `E` on its flags; twisting it replaces
//! `E` by `E S`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{edge_involution, Edge, EdgeId, HalfEdge, RibbonGraph};

/// A subset of the edges of a graph with at most 64 edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeSubset {
    mask: u64,
    edges: usize,
}

pub const MAX_SUBSET_EDGES: usize = 64;

fn full_mask(edges: usize) -> u64 {
    if edges == 64 {
        u64::MAX
    } else {
        (1u64 << edges) - 1
    }
}

impl EdgeSubset {
    pub fn empty(edges: usize) -> Result<Self> {
        Self::from_mask(edges, 0)
    }

    pub fn full(edges: usize) -> Result<Self> {
        Self::check_size(edges)?;
        Ok(EdgeSubset {
            mask: full_mask(edges),
            edges,
        })
    }

    pub fn from_mask(edges: usize, mask: u64) -> Result<Self> {
        Self::check_size(edges)?;
        if mask & !full_mask(edges) != 0 {
            return Err(Error::SubsetOutOfRange {
                edge: 63 - mask.leading_zeros() as usize,
                edges,
            });
        }
        Ok(EdgeSubset { mask, edges })
    }

    pub fn from_edges(edges: usize, members: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        Self::check_size(edges)?;
        let mut mask = 0;
        for e in members {
            if e >= edges {
                return Err(Error::SubsetOutOfRange { edge: e, edges });
            }
            mask |= 1 << e;
        }
        Ok(EdgeSubset { mask, edges })
    }

    fn check_size(edges: usize) -> Result<()> {
        if edges > MAX_SUBSET_EDGES {
            Err(Error::CapExceeded {
                bits: edges,
                cap: MAX_SUBSET_EDGES,
            })
        } else {
            Ok(())
        }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn complement(&self) -> Self {
        EdgeSubset {
            mask: !self.mask & full_mask(self.edges),
            edges: self.edges,
        }
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        e < self.edges && (self.mask >> e) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges).filter(move |&e| self.contains(e))
    }

    fn check_graph(&self, g: &RibbonGraph) -> Result<()> {
        if self.edges != g.edge_count() {
            let edge = self.iter().last().unwrap_or(self.edges);
            return Err(Error::SubsetOutOfRange {
                edge,
                edges: g.edge_count(),
            });
        }
        Ok(())
    }
}

/// A single-edge operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Twuality {
    Dual,
    Petrial,
}

/// One of the five words `×`, `*`, `×*`, `*×`, `*×*`. Letters act on an edge
/// from left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwualityWord {
    Petrial,
    Dual,
    PetrialDual,
    DualPetrial,
    DualPetrialDual,
}

impl TwualityWord {
    pub const ALL: [TwualityWord; 5] = [
        TwualityWord::Petrial,
        TwualityWord::Dual,
        TwualityWord::PetrialDual,
        TwualityWord::DualPetrial,
        TwualityWord::DualPetrialDual,
    ];

    pub fn letters(self) -> &'static [Twuality] {
        use Twuality::*;
        match self {
            TwualityWord::Petrial => &[Petrial],
            TwualityWord::Dual => &[Dual],
            TwualityWord::PetrialDual => &[Petrial, Dual],
            TwualityWord::DualPetrial => &[Dual, Petrial],
            TwualityWord::DualPetrialDual => &[Dual, Petrial, Dual],
        }
    }
}

impl FromStr for TwualityWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters: Vec<Twuality> = s
            .chars()
            .map(|c| match c {
                '*' => Ok(Twuality::Dual),
                'x' | 'X' | '×' => Ok(Twuality::Petrial),
                _ => Err(Error::InvalidWord(s.to_string())),
            })
            .collect::<Result<_>>()?;
        TwualityWord::ALL
            .into_iter()
            .find(|w| w.letters() == letters.as_slice())
            .ok_or_else(|| Error::InvalidWord(s.to_string()))
    }
}

impl fmt::Display for TwualityWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            f.write_str(match l {
                Twuality::Dual => "*",
                Twuality::Petrial => "x",
            })?;
        }
        Ok(())
    }
}

/// Flag-level description of a ribbon graph: corner, side and edge
/// involutions plus the number of isolated vertices.
#[derive(Clone, Debug)]
pub(crate) struct Gem {
    corner: Vec<usize>,
    side: Vec<usize>,
    edge: Vec<usize>,
    isolated: usize,
}

impl Gem {
    pub(crate) fn new(g: &RibbonGraph) -> Self {
        let (corner, side, edge) = g.gem();
        Gem {
            corner,
            side,
            edge,
            isolated: g.isolated_vertices(),
        }
    }

    pub(crate) fn apply(&mut self, e: EdgeId, op: Twuality) {
        let flags = 4 * e..4 * e + 4;
        match op {
            Twuality::Dual => {
                for f in flags {
                    std::mem::swap(&mut self.side[f], &mut self.edge[f]);
                }
            }
            Twuality::Petrial => {
                let new: Vec<usize> = flags.clone().map(|f| self.edge[self.side[f]]).collect();
                for (f, x) in flags.zip(new) {
                    self.edge[f] = x;
                }
            }
        }
    }

    fn orbits(&self, first: &[usize]) -> usize {
        let mut seen = vec![false; self.corner.len()];
        let mut count = 0;
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            loop {
                seen[x] = true;
                let y = first[x];
                seen[y] = true;
                x = self.corner[y];
                if x == start {
                    break;
                }
            }
        }
        count
    }

    pub(crate) fn vertex_count(&self) -> usize {
        self.orbits(&self.side) + self.isolated
    }

    pub(crate) fn face_count(&self) -> usize {
        self.orbits(&self.edge) + self.isolated
    }

    /// Reads the signed rotation system back. Vertices whose flags are those
    /// of a vertex of `base` keep its name.
    pub(crate) fn to_graph(&self, base: &RibbonGraph) -> Result<RibbonGraph> {
        let n = self.corner.len();
        let mut half = vec![HalfEdge::new(0, 0); n];
        for f in 0..n {
            let first = f / 4 * 4;
            let end = if f == first || self.side[f] == first { 0 } else { 1 };
            half[f] = HalfEdge::new(f / 4, end);
        }
        // side label per flag, fixed by the vertex traversal
        let mut label = vec![u8::MAX; n];
        let mut vertices: Vec<(Vec<usize>, Vec<HalfEdge>)> = Vec::new();
        for start in 0..n {
            if label[start] != u8::MAX {
                continue;
            }
            let mut rot = Vec::new();
            let mut members = Vec::new();
            let mut x = start;
            loop {
                let y = self.side[x];
                label[x] = 0;
                label[y] = 1;
                members.extend([x, y]);
                rot.push(half[x]);
                x = self.corner[y];
                if x == start {
                    break;
                }
            }
            members.sort_unstable();
            vertices.push((members, rot));
        }

        let mut edges: Vec<Edge> = base.edges().to_vec();
        for (e, edge) in edges.iter_mut().enumerate() {
            let a = (4 * e..4 * e + 4)
                .find(|&f| half[f].end == 0 && label[f] == 0)
                .unwrap();
            edge.twisted = label[self.edge[a]] == 0;
        }

        let originals: Vec<Vec<usize>> = (0..base.vertex_count())
            .map(|v| {
                let mut fl: Vec<usize> = base
                    .rotation(v)
                    .iter()
                    .flat_map(|h| [2 * h.index(), 2 * h.index() + 1])
                    .collect();
                fl.sort_unstable();
                fl
            })
            .collect();
        let mut named = Vec::new();
        let mut used: Vec<String> = Vec::new();
        for (members, rot) in &vertices {
            let keep = originals.iter().position(|o| !o.is_empty() && o == members);
            named.push((keep.map(|v| base.vertex_name(v).to_string()), rot.clone()));
            if let Some(v) = keep {
                used.push(base.vertex_name(v).to_string());
            }
        }
        for v in 0..base.vertex_count() {
            if base.degree(v) == 0 {
                named.push((Some(base.vertex_name(v).to_string()), Vec::new()));
                used.push(base.vertex_name(v).to_string());
            }
        }
        let mut k = 0;
        let vertices = named
            .into_iter()
            .map(|(name, rot)| {
                let name = name.unwrap_or_else(|| loop {
                    let cand = format!("f{k}");
                    k += 1;
                    if !used.contains(&cand) {
                        break cand;
                    }
                });
                (name, rot)
            })
            .collect();
        RibbonGraph::new(vertices, edges)
    }
}

/// `G^{×|A}`: toggles the twist of every edge of `A`.
pub fn partial_petrial(g: &RibbonGraph, a: &EdgeSubset) -> Result<RibbonGraph> {
    a.check_graph(g)?;
    let (vertices, mut edges) = g.parts();
    for e in a.iter() {
        edges[e].twisted ^= true;
    }
    RibbonGraph::new(vertices, edges)
}

/// Restricted rotations and face counting of spanning ribbon subgraphs
/// `(V, A)`; reuses its buffers across calls.
pub(crate) struct SubgraphFaces<'g> {
    g: &'g RibbonGraph,
    corner: Vec<u32>,
    seen: Vec<bool>,
    twists: Vec<bool>,
    buf: Vec<HalfEdge>,
}

impl<'g> SubgraphFaces<'g> {
    pub(crate) fn new(g: &'g RibbonGraph) -> Self {
        SubgraphFaces {
            g,
            corner: vec![0; 4 * g.edge_count()],
            seen: vec![false; 4 * g.edge_count()],
            twists: g.twists(),
            buf: Vec::new(),
        }
    }

    pub(crate) fn count(&mut self, mask: u64) -> usize {
        let mut isolated = 0;
        for rot in self.g.rotations() {
            self.buf.clear();
            self.buf.extend(rot.iter().filter(|h| (mask >> h.edge) & 1 == 1));
            if self.buf.is_empty() {
                isolated += 1;
                continue;
            }
            let k = self.buf.len();
            for i in 0..k {
                let a = 2 * self.buf[i].index() + 1;
                let b = 2 * self.buf[(i + 1) % k].index();
                self.corner[a] = b as u32;
                self.corner[b] = a as u32;
            }
        }
        let mut orbits = 0;
        for e in 0..self.g.edge_count() {
            if (mask >> e) & 1 == 0 {
                continue;
            }
            for start in 4 * e..4 * e + 4 {
                self.seen[start] = false;
            }
        }
        for e in 0..self.g.edge_count() {
            if (mask >> e) & 1 == 0 {
                continue;
            }
            for start in 4 * e..4 * e + 4 {
                if self.seen[start] {
                    continue;
                }
                orbits += 1;
                let mut x = start;
                loop {
                    self.seen[x] = true;
                    let y = edge_involution(x, self.twists[x / 4]);
                    self.seen[y] = true;
                    x = self.corner[y] as usize;
                    if x == start {
                        break;
                    }
                }
            }
        }
        orbits + isolated
    }
}

/// Faces of the spanning ribbon subgraph `(V(G), A)`.
pub fn spanning_subgraph_faces(g: &RibbonGraph, a: &EdgeSubset) -> Result<usize> {
    a.check_graph(g)?;
    Ok(SubgraphFaces::new(g).count(a.mask()))
}

/// `eu(G^{*|A}) = 2c(G) + e(G) - f(A) - f(A^c)`, without building the dual.
pub fn partial_dual_euler_genus(g: &RibbonGraph, a: &EdgeSubset) -> Result<usize> {
    a.check_graph(g)?;
    let mut faces = SubgraphFaces::new(g);
    let fa = faces.count(a.mask());
    let fc = faces.count(a.complement().mask());
    Ok(2 * g.components() + g.edge_count() - fa - fc)
}

/// The partial dual `G^{*|A}`.
pub fn partial_dual(g: &RibbonGraph, a: &EdgeSubset) -> Result<RibbonGraph> {
    apply_twuality(g, TwualityWord::Dual, a)
}

/// Applies the word to every edge of `A`, in ascending edge order.
pub fn apply_twuality(g: &RibbonGraph, word: TwualityWord, a: &EdgeSubset) -> Result<RibbonGraph> {
    a.check_graph(g)?;
    if a.is_empty() {
        return Ok(g.clone());
    }
    if word == TwualityWord::Petrial {
        return partial_petrial(g, a);
    }
    let mut gem = Gem::new(g);
    for e in a.iter() {
        for &op in word.letters() {
            gem.apply(e, op);
        }
    }
    gem.to_graph(g)
}

/// Whether `G^{×|A}` is orientable.
pub fn is_orientable_petrial(g: &RibbonGraph, a: &EdgeSubset) -> Result<bool> {
    Ok(partial_petrial(g, a)?.is_orientable())
}
