//! Edits used by the recursions: parallel edges, subdivision, deletion,
//! contraction and one-vertex joins.

use crate::error::{Error, Result};
use crate::graph::{fresh_name, Edge, EdgeId, HalfEdge, RibbonGraph, VertexId};

fn rotation_from(rot: &[HalfEdge], start: HalfEdge) -> Vec<HalfEdge> {
    let pos = rot.iter().position(|&h| h == start).expect("half-edge in rotation");
    let mut out = rot.to_vec();
    out.rotate_left(pos);
    out
}

impl RibbonGraph {
    /// Adds an edge parallel to the proper edge `e` so that the two bound a
    /// disk. The new edge is untwisted when `e` is; for a twisted `e` the new
    /// edge is twisted as well, which is the only way the 2-cycle bounds a
    /// disk.
    pub fn add_parallel_edge(&self, e: EdgeId) -> Result<RibbonGraph> {
        self.check_edge(e)?;
        if self.is_loop(e) {
            return Err(Error::LoopEdge(self.edge_name(e).to_string()));
        }
        let twisted = self.is_twisted(e);
        let (mut vertices, mut edges) = self.parts();
        let new = edges.len();
        edges.push(Edge {
            name: self.fresh_edge_name(&format!("{}p", self.edge_name(e))),
            twisted,
        });
        let (h0, h1) = (HalfEdge::new(e, 0), HalfEdge::new(e, 1));
        let (u, v) = self.endpoints(e);

        let rot = &mut vertices[u].1;
        let pos = rot.iter().position(|&h| h == h0).unwrap();
        rot.insert(pos + 1, HalfEdge::new(new, 0));

        let rot = &mut vertices[v].1;
        let pos = rot.iter().position(|&h| h == h1).unwrap();
        let at = if twisted { pos + 1 } else { pos };
        rot.insert(at, HalfEdge::new(new, 1));

        RibbonGraph::new(vertices, edges)
    }

    /// Adds `n` parallel copies of `e`, each nested next to `e`.
    pub fn add_parallel_edges(&self, e: EdgeId, n: usize) -> Result<RibbonGraph> {
        let mut g = self.clone();
        for _ in 0..n {
            g = g.add_parallel_edge(e)?;
        }
        if n == 0 {
            g.check_edge(e)?;
            if g.is_loop(e) {
                return Err(Error::LoopEdge(g.edge_name(e).to_string()));
            }
        }
        Ok(g)
    }

    /// Replaces `e = uv` by a path `u w v`. The first edge keeps the id, name
    /// and twist of `e`; the second is new and untwisted.
    pub fn subdivide(&self, e: EdgeId) -> Result<RibbonGraph> {
        self.check_edge(e)?;
        let (mut vertices, mut edges) = self.parts();
        let new = edges.len();
        edges.push(Edge {
            name: self.fresh_edge_name(&format!("{}s", self.edge_name(e))),
            twisted: false,
        });
        let h1 = HalfEdge::new(e, 1);
        let v = self.vertex_of(h1);
        let rot = &mut vertices[v].1;
        let pos = rot.iter().position(|&h| h == h1).unwrap();
        rot[pos] = HalfEdge::new(new, 1);
        vertices.push((
            self.fresh_vertex_name(&format!("w{}", self.vertex_count())),
            vec![h1, HalfEdge::new(new, 0)],
        ));
        RibbonGraph::new(vertices, edges)
    }

    /// Removes `e`; all vertices are kept and later edge ids shift down by one.
    pub fn delete_edge(&self, e: EdgeId) -> Result<RibbonGraph> {
        self.check_edge(e)?;
        let (vertices, mut edges) = self.parts();
        edges.remove(e);
        let vertices = vertices
            .into_iter()
            .map(|(name, rot)| {
                let rot = rot
                    .into_iter()
                    .filter(|h| h.edge != e)
                    .map(|h| HalfEdge::new(if h.edge > e { h.edge - 1 } else { h.edge }, h.end))
                    .collect();
                (name, rot)
            })
            .collect();
        RibbonGraph::new(vertices, edges)
    }

    /// Contracts the proper edge `e`. A twisted `e` is first untwisted by a
    /// flip of its second endpoint. The merged vertex takes the place and name
    /// of the first endpoint.
    pub fn contract(&self, e: EdgeId) -> Result<RibbonGraph> {
        self.check_edge(e)?;
        if self.is_loop(e) {
            return Err(Error::LoopEdge(self.edge_name(e).to_string()));
        }
        let (u, v) = self.endpoints(e);
        let g = if self.is_twisted(e) {
            self.vertex_flip(v)?
        } else {
            self.clone()
        };
        let ru = rotation_from(g.rotation(u), HalfEdge::new(e, 0));
        let rv = rotation_from(g.rotation(v), HalfEdge::new(e, 1));
        let merged: Vec<HalfEdge> = ru[1..].iter().chain(&rv[1..]).copied().collect();

        let (mut vertices, mut edges) = g.into_parts();
        vertices[u].1 = merged;
        vertices.remove(v);
        edges.remove(e);
        let vertices = vertices
            .into_iter()
            .map(|(name, rot)| {
                let rot = rot
                    .into_iter()
                    .map(|h| HalfEdge::new(if h.edge > e { h.edge - 1 } else { h.edge }, h.end))
                    .collect();
                (name, rot)
            })
            .collect();
        RibbonGraph::new(vertices, edges)
    }

    /// One-vertex join: the rotation of `v2` in `other`, read from gap `p2`,
    /// is spliced into the rotation of `v1` at gap `p1`. Gap `p` of a rotation
    /// of degree `d` sits before entry `p`; valid gaps are `0..max(d, 1)`.
    /// Edges of `other` follow those of `self`; clashing names get a suffix.
    pub fn join(&self, v1: VertexId, p1: usize, other: &RibbonGraph, v2: VertexId, p2: usize) -> Result<RibbonGraph> {
        self.check_vertex(v1)?;
        other.check_vertex(v2)?;
        for (g, v, p) in [(self, v1, p1), (other, v2, p2)] {
            let d = g.degree(v);
            if p >= d.max(1) {
                return Err(Error::GapOutOfRange {
                    vertex: g.vertex_name(v).to_string(),
                    gap: p,
                    degree: d,
                });
            }
        }
        let offset = self.edge_count();
        let (mut vertices, mut edges) = self.parts();
        let shift = |h: &HalfEdge| HalfEdge::new(h.edge + offset, h.end);

        let mut inner: Vec<HalfEdge> = other.rotation(v2).iter().map(shift).collect();
        let shift_by = p2.min(inner.len());
        inner.rotate_left(shift_by);
        let outer = &mut vertices[v1].1;
        let at = p1.min(outer.len());
        outer.splice(at..at, inner);

        for edge in other.edges() {
            let name = fresh_name(&edge.name, |n| edges.iter().any(|x| x.name == n));
            edges.push(Edge {
                name,
                twisted: edge.twisted,
            });
        }
        for (w, rot) in other.rotations().iter().enumerate() {
            if w == v2 {
                continue;
            }
            let name = fresh_name(other.vertex_name(w), |n| vertices.iter().any(|x| x.0 == n));
            vertices.push((name, rot.iter().map(shift).collect()));
        }
        RibbonGraph::new(vertices, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn parallel_edge_on_k2_gives_planar_dipoles() {
        let mut g = catalog::k2();
        for n in 1..6 {
            g = g.add_parallel_edge(0).unwrap();
            assert_eq!(g.edge_count(), n + 1);
            assert_eq!(g.face_count(), n + 1);
            assert_eq!(g.euler_genus(), 0);
        }
        assert!(g.same_embedding(&catalog::dipole(6)));
    }

    #[test]
    fn parallel_edge_rejects_loops() {
        let g = catalog::cycle(1);
        assert!(matches!(g.add_parallel_edge(0), Err(Error::LoopEdge(_))));
        assert!(matches!(g.add_parallel_edge(3), Err(Error::UnknownEdge(_))));
    }

    #[test]
    fn parallel_then_delete_is_identity() {
        for seed in 0..100 {
            let g = crate::graph::tests::random_graph(seed, 10);
            for e in 0..g.edge_count() {
                if g.is_loop(e) {
                    continue;
                }
                let h = g.add_parallel_edge(e).unwrap();
                assert_eq!(h.face_count(), g.face_count() + 1);
                assert_eq!(h.delete_edge(g.edge_count()).unwrap(), g);
            }
        }
    }

    #[test]
    fn subdivision() {
        let p3 = catalog::k2().subdivide(0).unwrap();
        assert_eq!((p3.vertex_count(), p3.edge_count()), (3, 2));
        assert_eq!(p3.face_count(), 1);
        assert_eq!(p3.euler_genus(), 0);
        let c3 = catalog::cycle(2).subdivide(0).unwrap();
        assert_eq!(c3.face_count(), 2);
        assert!(c3.same_embedding(&catalog::cycle(3)));
        let loop_sub = catalog::twisted_loop().subdivide(0).unwrap();
        assert_eq!(loop_sub.vertex_count(), 2);
        assert_eq!(loop_sub.euler_genus(), 1);
    }

    #[test]
    fn deletion() {
        let two = catalog::k2().delete_edge(0).unwrap();
        assert_eq!((two.vertex_count(), two.components()), (2, 2));
        let d2 = catalog::dipole(2);
        assert_eq!(d2.face_count(), 2);
        let k2 = d2.delete_edge(1).unwrap();
        assert_eq!(k2.face_count(), 1);
        let bare = catalog::twisted_loop().delete_edge(0).unwrap();
        assert_eq!(catalog::twisted_loop().euler_genus(), 1);
        assert_eq!(bare.euler_genus(), 0);
        assert_eq!(bare.vertex_count(), 1);
    }

    #[test]
    fn contraction() {
        let v = catalog::k2().contract(0).unwrap();
        assert_eq!((v.vertex_count(), v.edge_count(), v.face_count()), (1, 0, 1));
        let c3 = catalog::cycle(3);
        let c2 = c3.contract(0).unwrap();
        assert_eq!(c3.face_count(), 2);
        assert_eq!(c2.face_count(), 2);
        assert!(c2.same_embedding(&catalog::cycle(2)) || c2.euler_genus() == 0);
        assert!(matches!(catalog::twisted_loop().contract(0), Err(Error::LoopEdge(_))));
    }

    #[test]
    fn edits_preserve_invariants_on_random_graphs() {
        for seed in 0..200 {
            let g = crate::graph::tests::random_graph(1000 + seed, 12);
            for e in 0..g.edge_count() {
                let s = g.subdivide(e).unwrap();
                assert_eq!(s.face_count(), g.face_count());
                assert_eq!(s.euler_genus(), g.euler_genus());
                assert_eq!(s.components(), g.components());
                if !g.is_loop(e) {
                    let c = g.contract(e).unwrap();
                    assert_eq!(c.face_count(), g.face_count(), "seed {seed} edge {e}");
                    assert_eq!(c.components(), g.components());
                    assert_eq!(c.euler_genus(), g.euler_genus());
                }
            }
        }
    }

    #[test]
    fn joins() {
        let k2 = catalog::k2();
        let p3 = k2.join(1, 0, &k2, 0, 0).unwrap();
        assert_eq!((p3.vertex_count(), p3.edge_count(), p3.components()), (3, 2, 1));
        assert_eq!(p3.face_count(), 1);
        assert_eq!(p3.euler_genus(), 0);
        assert_eq!(p3.edge_name(1), "a_1");
        let err = k2.join(1, 1, &k2, 0, 0);
        assert!(matches!(err, Err(Error::GapOutOfRange { .. })));
        let single = catalog::single_vertex();
        let same = catalog::cycle(3).join(0, 1, &single, 0, 0).unwrap();
        assert_eq!(same, catalog::cycle(3));
    }
}
