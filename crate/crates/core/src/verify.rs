//! Randomized checks of the recursions against brute-force enumeration.

use std::fmt;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::{
    count_orientable_petrials, partial_petrial_polynomial, partial_star_polynomial,
    restricted_orientable_petrial_polynomial, restricted_orientable_petrial_polynomial_naive,
};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, HalfEdge, RibbonGraph};
use crate::poly::GenusPolynomial;
use crate::recursions::{
    join_product_rhs, petrial_parallel_rhs, petrial_subdivision_restricted_rhs, petrial_subdivision_rhs,
    star_multi_parallel_rhs, star_parallel_rhs, star_subdivision_rhs, JoinFlavor,
};
use crate::twuality::{partial_dual, partial_dual_euler_genus, partial_petrial, EdgeSubset};

/// Identity names accepted by [`verify_identity`], with a short description.
pub const IDENTITIES: &[(&str, &str)] = &[
    ("eq1", "partial-dual polynomial of a subdivision"),
    ("eq2", "partial-Petrial polynomial after adding a parallel edge (flagged only)"),
    ("eq3", "partial-Petrial polynomial doubles under subdivision"),
    ("eq4", "partial-dual Euler genus from spanning-subgraph face counts"),
    ("eq5", "partial-dual polynomial after adding one parallel edge"),
    ("eq7", "partial-dual polynomial after adding n parallel edges"),
    ("join", "partial-Petrial polynomials multiply over one-vertex joins"),
    ("lemma41", "restricted polynomial is invariant under partial Petrials"),
    ("lemma42", "2^(v-c) orientable partial Petrials; coset walk equals filter"),
    ("remark21", "subdivision equals a parallel edge in the dual"),
    ("remark42", "restricted polynomial doubles under subdivision"),
];

/// Random signed rotation system: `e` uniform in `[1, max_edges]`, `v`
/// uniform in `[1, e + 1]`, edge ends at uniform vertices, rotations
/// shuffled uniformly and fair-coin twists.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, max_edges: usize) -> RibbonGraph {
    let e = rng.gen_range(1..=max_edges.max(1));
    random_graph_with_edges(rng, e)
}

/// As [`random_graph`] with exactly `e >= 1` edges.
pub fn random_graph_with_edges<R: Rng + ?Sized>(rng: &mut R, e: usize) -> RibbonGraph {
    let v = rng.gen_range(1..=e + 1);
    let mut rotations: Vec<Vec<HalfEdge>> = vec![Vec::new(); v];
    for edge in 0..e {
        for end in 0..2 {
            rotations[rng.gen_range(0..v)].push(HalfEdge::new(edge, end));
        }
    }
    for rot in &mut rotations {
        rot.shuffle(rng);
    }
    let twists = (0..e).map(|_| rng.gen_bool(0.5)).collect();
    RibbonGraph::from_rotations(rotations, twists).expect("random rotation systems are well formed")
}

/// Outcome of one comparison. `flagged` marks a mismatch of an identity
/// whose hypothesis is not checked, which is reported but not a failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: String,
    pub seed: u64,
    pub trial: usize,
    pub detail: String,
    pub graph: RibbonGraph,
    pub lhs: GenusPolynomial,
    pub rhs: GenusPolynomial,
    pub pass: bool,
    pub flagged: bool,
}

impl VerificationReport {
    fn new(
        identity: &str,
        seed: u64,
        trial: usize,
        detail: String,
        graph: &RibbonGraph,
        lhs: GenusPolynomial,
        rhs: GenusPolynomial,
    ) -> Self {
        let pass = lhs == rhs;
        VerificationReport {
            identity: identity.to_string(),
            seed,
            trial,
            detail,
            graph: graph.clone(),
            lhs,
            rhs,
            pass,
            flagged: false,
        }
    }

    pub fn is_hard_failure(&self) -> bool {
        !self.pass && !self.flagged
    }

    /// One machine-readable line: tab-separated fields.
    pub fn record(&self) -> String {
        let status = match (self.pass, self.flagged) {
            (true, _) => "pass",
            (false, true) => "flag",
            (false, false) => "FAIL",
        };
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.identity,
            self.seed,
            self.trial,
            status,
            self.detail,
            self.lhs,
            self.rhs
        )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.pass, self.flagged) {
            (true, _) => "pass",
            (false, true) => "flagged",
            (false, false) => "FAIL",
        };
        write!(
            f,
            "{} trial {} (seed {}): {} [{}]\n  lhs: {}\n  rhs: {}",
            self.identity, self.trial, self.seed, status, self.detail, self.lhs, self.rhs
        )
    }
}

pub(crate) fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn proper_edges(g: &RibbonGraph) -> Vec<EdgeId> {
    (0..g.edge_count()).filter(|&e| !g.is_loop(e)).collect()
}

/// Draws graphs until one has a proper edge, then picks such an edge.
fn graph_with_proper_edge(rng: &mut ChaCha8Rng, max_edges: usize) -> (RibbonGraph, EdgeId) {
    loop {
        let g = random_graph(rng, max_edges);
        if let Some(&e) = proper_edges(&g).choose(rng) {
            return (g, e);
        }
    }
}

fn random_subset(rng: &mut ChaCha8Rng, edges: usize) -> EdgeSubset {
    let mask = rng.gen::<u64>() & ((1u64 << edges) - 1);
    EdgeSubset::from_mask(edges, mask).expect("mask within range")
}

fn edge_label(g: &RibbonGraph, e: EdgeId) -> String {
    format!("edge {}", g.edge_name(e))
}

/// Runs `trials` randomized checks of the named identity on graphs with at
/// most `max_edges` edges. Trial `t` draws from stream `t` of a generator
/// seeded with `seed`, so reports are reproducible one by one.
pub fn verify_identity(name: &str, trials: usize, seed: u64, max_edges: usize) -> Result<Vec<VerificationReport>> {
    if !IDENTITIES.iter().any(|(n, _)| *n == name) {
        return Err(Error::UnknownIdentity(name.to_string()));
    }
    let max_edges = max_edges.max(1);
    let mut reports = Vec::new();
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let rng = &mut rng;
        let report = |detail: String, g: &RibbonGraph, lhs, rhs| {
            VerificationReport::new(name, seed, trial, detail, g, lhs, rhs)
        };
        match name {
            "eq1" => {
                let g = random_graph(rng, max_edges);
                let e = rng.gen_range(0..g.edge_count());
                let lhs = partial_star_polynomial(&g.subdivide(e)?)?;
                reports.push(report(edge_label(&g, e), &g, lhs, star_subdivision_rhs(&g, e)?));
            }
            "eq2" => {
                let (g, e) = graph_with_proper_edge(rng, max_edges);
                let lhs = partial_petrial_polynomial(&g.add_parallel_edge(e)?)?;
                let kind = if g.is_bridge(e) { "bridge" } else { "non-bridge" };
                let detail = format!("{} ({kind})", edge_label(&g, e));
                let mut r = report(detail, &g, lhs, petrial_parallel_rhs(&g, e)?);
                r.flagged = !r.pass;
                reports.push(r);
            }
            "eq3" => {
                let g = random_graph(rng, max_edges);
                let e = rng.gen_range(0..g.edge_count());
                let lhs = partial_petrial_polynomial(&g.subdivide(e)?)?;
                reports.push(report(edge_label(&g, e), &g, lhs, petrial_subdivision_rhs(&g)?));
            }
            "eq4" => {
                let g = random_graph(rng, max_edges);
                reports.push(eq4_report(name, seed, trial, &g)?);
            }
            "eq5" => {
                let (g, e) = graph_with_proper_edge(rng, max_edges);
                let lhs = partial_star_polynomial(&g.add_parallel_edge(e)?)?;
                reports.push(report(edge_label(&g, e), &g, lhs, star_parallel_rhs(&g, e)?));
            }
            "eq7" => {
                let (g, e) = graph_with_proper_edge(rng, max_edges);
                let n = rng.gen_range(0..=3u32);
                let lhs = partial_star_polynomial(&g.add_parallel_edges(e, n as usize)?)?;
                let detail = format!("{}, n = {n}", edge_label(&g, e));
                reports.push(report(detail, &g, lhs, star_multi_parallel_rhs(&g, e, n)?));
            }
            "join" => {
                let g1 = random_graph(rng, (max_edges / 2).max(1));
                let g2 = random_graph(rng, (max_edges - g1.edge_count()).max(1));
                let v1 = rng.gen_range(0..g1.vertex_count());
                let v2 = rng.gen_range(0..g2.vertex_count());
                let p1 = rng.gen_range(0..g1.degree(v1).max(1));
                let p2 = rng.gen_range(0..g2.degree(v2).max(1));
                let joined = g1.join(v1, p1, &g2, v2, p2)?;
                let detail = format!("vertices {v1}@{p1} and {v2}@{p2}");
                reports.push(report(
                    format!("{detail}, all subsets"),
                    &joined,
                    partial_petrial_polynomial(&joined)?,
                    join_product_rhs(&g1, &g2, JoinFlavor::Petrial)?,
                ));
                reports.push(report(
                    format!("{detail}, orientable subsets"),
                    &joined,
                    restricted_orientable_petrial_polynomial(&joined)?,
                    join_product_rhs(&g1, &g2, JoinFlavor::PetrialRestricted)?,
                ));
            }
            "lemma41" => {
                let g = random_graph(rng, max_edges);
                let a = random_subset(rng, g.edge_count());
                let lhs = restricted_orientable_petrial_polynomial(&g)?;
                let rhs = restricted_orientable_petrial_polynomial(&partial_petrial(&g, &a)?)?;
                reports.push(report(format!("subset mask {:#x}", a.mask()), &g, lhs, rhs));
            }
            "lemma42" => {
                let g = random_graph(rng, max_edges);
                let free = (g.vertex_count() - g.components()) as u32;
                let count = count_orientable_petrials(&g)?;
                reports.push(report(
                    "orientable count vs 2^(v-c)".into(),
                    &g,
                    GenusPolynomial::constant(count),
                    GenusPolynomial::constant(BigInt::from(2).pow(free)),
                ));
                reports.push(report(
                    "coset walk vs filter".into(),
                    &g,
                    restricted_orientable_petrial_polynomial(&g)?,
                    restricted_orientable_petrial_polynomial_naive(&g)?,
                ));
            }
            "remark21" => {
                // the dual edge must be proper to take a parallel copy
                let (g, e, dual) = loop {
                    let g = random_graph(rng, max_edges);
                    let dual = partial_dual(&g, &EdgeSubset::full(g.edge_count())?)?;
                    if let Some(&e) = proper_edges(&dual).choose(rng) {
                        break (g, e, dual);
                    }
                };
                let lhs = partial_star_polynomial(&g.subdivide(e)?)?;
                let rhs = partial_star_polynomial(&dual.add_parallel_edge(e)?)?;
                reports.push(report(edge_label(&g, e), &g, lhs, rhs));
            }
            "remark42" => {
                let g = random_graph(rng, max_edges);
                let e = rng.gen_range(0..g.edge_count());
                let lhs = restricted_orientable_petrial_polynomial(&g.subdivide(e)?)?;
                reports.push(report(edge_label(&g, e), &g, lhs, petrial_subdivision_restricted_rhs(&g)?));
            }
            _ => unreachable!("identity names are checked above"),
        }
    }
    Ok(reports)
}

/// Compares, subset by subset, the Euler genus of the constructed partial
/// dual with the spanning-subgraph formula. The two sides are the genus
/// polynomials; any single mismatch also fails the report.
pub fn eq4_report(identity: &str, seed: u64, trial: usize, g: &RibbonGraph) -> Result<VerificationReport> {
    let e = g.edge_count();
    if e > 16 {
        return Err(Error::CapExceeded { bits: e, cap: 16 });
    }
    let mut lhs = GenusPolynomial::zero();
    let mut rhs = GenusPolynomial::zero();
    let mut mismatches = 0usize;
    for mask in 0..1u64 << e {
        let a = EdgeSubset::from_mask(e, mask)?;
        let built = partial_dual(g, &a)?.euler_genus();
        let formula = partial_dual_euler_genus(g, &a)?;
        mismatches += usize::from(built != formula);
        lhs.add_term(built, 1.into());
        rhs.add_term(formula, 1.into());
    }
    let mut r = VerificationReport::new(
        identity,
        seed,
        trial,
        format!("{} subsets, {mismatches} mismatches", 1u64 << e),
        g,
        lhs,
        rhs,
    );
    r.pass &= mismatches == 0;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_is_reproducible() {
        let a = random_graph(&mut trial_rng(9, 3), 10);
        let b = random_graph(&mut trial_rng(9, 3), 10);
        assert_eq!(a, b);
        assert_ne!(random_graph(&mut trial_rng(9, 4), 10), a);
        for t in 0..100 {
            let g = random_graph(&mut trial_rng(1, t), 10);
            assert!((1..=10).contains(&g.edge_count()));
            assert!((1..=g.edge_count() + 1).contains(&g.vertex_count()));
        }
    }

    #[test]
    fn unknown_identity() {
        assert_eq!(verify_identity("eq9", 1, 0, 5), Err(Error::UnknownIdentity("eq9".into())));
    }

    #[test]
    fn hard_identities_hold_on_a_few_trials() {
        for (name, _) in IDENTITIES {
            let reports = verify_identity(name, 12, 3, 7).unwrap();
            assert!(reports.len() >= 12);
            assert!(reports.iter().all(|r| !r.is_hard_failure()), "{name}: {:?}", reports.iter().find(|r| !r.pass));
        }
    }

    #[test]
    fn reports_are_deterministic() {
        assert_eq!(verify_identity("eq5", 5, 11, 8).unwrap(), verify_identity("eq5", 5, 11, 8).unwrap());
    }
}
