//! Named ribbon graphs: small families built in code and hand-transcribed
//! graphs shipped as `.rg` data files.

use crate::error::{Error, Result};
use crate::format::parse_rg;
use crate::graph::{Edge, HalfEdge, RibbonGraph};

const SERIES_PARALLEL_G: &str = include_str!("../data/series_parallel_g.rg");
const SERIES_PARALLEL_H: &str = include_str!("../data/series_parallel_h.rg");
const SERIES_PARALLEL_G1: &str = include_str!("../data/series_parallel_g1.rg");
const SERIES_PARALLEL_G2: &str = include_str!("../data/series_parallel_g2.rg");
const TWISTED_BOWTIE: &str = include_str!("../data/twisted_bowtie.rg");
const DIAMOND: &str = include_str!("../data/diamond.rg");

/// Catalog keys, whether each takes a size, and a one-line description.
pub const CATALOG: &[(&str, bool, &str)] = &[
    ("vertex", false, "a single isolated vertex"),
    ("K2", false, "one edge between two vertices"),
    ("K3", false, "planar triangle"),
    ("cycle", true, "planar cycle C_n, n >= 1"),
    ("dipole", true, "planar dipole D_n, n >= 1"),
    ("twisted-loop", false, "one vertex with one twisted loop"),
    ("series-parallel-g", false, "nine-edge planar series-parallel graph"),
    ("series-parallel-h", false, "series-parallel-g before its last subdivision"),
    ("series-parallel-g1", false, "series-parallel-h without edge e1"),
    ("series-parallel-g2", false, "series-parallel-g1 contracted at e2, minus e3"),
    ("twisted-bowtie", false, "two triangles at a vertex plus a twisted cross edge"),
    ("twisted-bowtie-contracted", false, "twisted-bowtie contracted at e1"),
    ("twisted-bowtie-family", true, "twisted-bowtie plus n edges parallel to e1"),
    ("diamond", false, "planar diamond on edges e1..e4, e"),
    ("diamond-family", true, "diamond plus n edges parallel to e"),
    ("c4-family", true, "planar 4-cycle plus n edges parallel to e"),
    ("dipole-join-digon", true, "planar dipole D_n joined with the planar 2-cycle"),
];

fn h(e: usize, end: u8) -> HalfEdge {
    HalfEdge::new(e, end)
}

fn build(vertices: Vec<(String, Vec<HalfEdge>)>, edges: Vec<Edge>) -> RibbonGraph {
    RibbonGraph::new(vertices, edges).expect("catalog graphs are well formed")
}

pub fn single_vertex() -> RibbonGraph {
    build(vec![("v".into(), vec![])], vec![])
}

/// `u --a-- v`.
pub fn k2() -> RibbonGraph {
    build(
        vec![("u".into(), vec![h(0, 0)]), ("v".into(), vec![h(0, 1)])],
        vec![Edge { name: "a".into(), twisted: false }],
    )
}

/// Planar cycle on vertices `v0..` with edge `e_i` from `v_i` to `v_{i+1}`.
pub fn cycle(n: usize) -> RibbonGraph {
    assert!(n >= 1);
    let vertices = (0..n)
        .map(|i| (format!("v{i}"), vec![h(i, 0), h((i + n - 1) % n, 1)]))
        .collect();
    let edges = (0..n)
        .map(|i| Edge { name: format!("e{i}"), twisted: false })
        .collect();
    build(vertices, edges)
}

/// Planar dipole: `u` sees `a0 .. a{n-1}` and `v` the reverse order.
pub fn dipole(n: usize) -> RibbonGraph {
    assert!(n >= 1);
    let u = (0..n).map(|i| h(i, 0)).collect();
    let v = (0..n).rev().map(|i| h(i, 1)).collect();
    let edges = (0..n)
        .map(|i| Edge { name: format!("a{i}"), twisted: false })
        .collect();
    build(vec![("u".into(), u), ("v".into(), v)], edges)
}

pub fn twisted_loop() -> RibbonGraph {
    build(
        vec![("v".into(), vec![h(0, 0), h(0, 1)])],
        vec![Edge { name: "a".into(), twisted: true }],
    )
}

fn data(text: &str) -> RibbonGraph {
    parse_rg(text).expect("catalog data files parse")
}

fn edge(g: &RibbonGraph, name: &str) -> usize {
    g.edge_by_name(name).expect("catalog edge exists")
}

/// Planar 4-cycle with its first edge renamed `e`.
fn c4_with_e() -> RibbonGraph {
    let (vertices, mut edges) = cycle(4).into_parts();
    edges[0].name = "e".into();
    build(vertices, edges)
}

pub fn catalog_keys() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|(k, _, _)| *k)
}

/// Whether the key takes a size parameter; `None` for unknown keys.
pub fn takes_size(name: &str) -> Option<bool> {
    CATALOG
        .iter()
        .find(|(k, _, _)| k.eq_ignore_ascii_case(name))
        .map(|(_, sized, _)| *sized)
}

/// Builds a catalog graph. Size parameters are required exactly for the
/// keys that take one; `cycle` and `dipole` need `n >= 1`.
pub fn build_catalog(name: &str, n: Option<usize>) -> Result<RibbonGraph> {
    let key = CATALOG
        .iter()
        .find(|(k, _, _)| k.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownCatalog(name.to_string()))?;
    let (key, sized, _) = *key;
    let n = match (sized, n) {
        (true, None) => return Err(Error::MissingSize(key.to_string())),
        (false, Some(n)) => {
            return Err(Error::InvalidSize {
                name: key.to_string(),
                n,
            })
        }
        (_, n) => n.unwrap_or(0),
    };
    let positive = |n: usize| {
        if n == 0 {
            Err(Error::InvalidSize {
                name: key.to_string(),
                n,
            })
        } else {
            Ok(n)
        }
    };
    Ok(match key {
        "vertex" => single_vertex(),
        "K2" => k2(),
        "K3" => cycle(3),
        "cycle" => cycle(positive(n)?),
        "dipole" => dipole(positive(n)?),
        "twisted-loop" => twisted_loop(),
        "series-parallel-g" => data(SERIES_PARALLEL_G),
        "series-parallel-h" => data(SERIES_PARALLEL_H),
        "series-parallel-g1" => data(SERIES_PARALLEL_G1),
        "series-parallel-g2" => data(SERIES_PARALLEL_G2),
        "twisted-bowtie" => data(TWISTED_BOWTIE),
        "twisted-bowtie-contracted" => {
            let g = data(TWISTED_BOWTIE);
            g.contract(edge(&g, "e1"))?
        }
        "twisted-bowtie-family" => {
            let g = data(TWISTED_BOWTIE);
            g.add_parallel_edges(edge(&g, "e1"), n)?
        }
        "diamond" => data(DIAMOND),
        "diamond-family" => {
            let g = data(DIAMOND);
            g.add_parallel_edges(edge(&g, "e"), n)?
        }
        "c4-family" => {
            let g = c4_with_e();
            g.add_parallel_edges(0, n)?
        }
        "dipole-join-digon" => dipole(positive(n)?).join(0, 0, &cycle(2), 0, 0)?,
        _ => unreachable!("every catalog key is handled"),
    })
}
