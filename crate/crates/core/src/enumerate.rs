//! Subset enumerations behind the partial-duality polynomials.
//!
//! Work is split into chunks by fixing the high bits of the enumerated mask;
//! each chunk fills a dense table of counts indexed by Euler genus and the
//! tables are summed. Integer addition makes the result independent of the
//! number of workers and of the visiting order.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{count_orbits, edge_involution, RibbonGraph};
use crate::poly::GenusPolynomial;
use crate::twuality::{Gem, SubgraphFaces, TwualityWord, MAX_SUBSET_EDGES};

pub const DEFAULT_MAX_BITS: usize = 28;

/// Largest cap accepted by an override; counts are kept in `u64`.
pub const HARD_MAX_BITS: usize = 62;

/// Below this many enumerated bits everything runs on the calling thread.
const PARALLEL_THRESHOLD: usize = 14;
const CHUNK_BITS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Largest number of enumerated bits (subsets `2^bits`).
    pub max_bits: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            threads: None,
            max_bits: DEFAULT_MAX_BITS,
        }
    }
}

impl EnumOptions {
    pub fn with_threads(threads: usize) -> Self {
        EnumOptions {
            threads: Some(threads),
            ..Self::default()
        }
    }

    fn check(&self, bits: usize) -> Result<()> {
        let cap = self.max_bits.min(HARD_MAX_BITS);
        if bits > cap {
            return Err(Error::CapExceeded { bits, cap });
        }
        Ok(())
    }
}

fn check_edges(g: &RibbonGraph) -> Result<()> {
    if g.edge_count() > MAX_SUBSET_EDGES {
        return Err(Error::CapExceeded {
            bits: g.edge_count(),
            cap: MAX_SUBSET_EDGES,
        });
    }
    Ok(())
}

/// Runs `work(chunk, low_bits, counts)` over all `2^(bits - low_bits)`
/// chunks and sums the count tables.
fn chunked<F>(opts: &EnumOptions, bits: usize, len: usize, work: F) -> Vec<u64>
where
    F: Fn(u64, usize, &mut [u64]) + Sync,
{
    if bits < PARALLEL_THRESHOLD {
        let mut counts = vec![0u64; len];
        work(0, bits, &mut counts);
        return counts;
    }
    let high = CHUNK_BITS.min(bits);
    let low = bits - high;
    let run = || {
        (0..1u64 << high)
            .into_par_iter()
            .fold(
                || vec![0u64; len],
                |mut acc, chunk| {
                    work(chunk, low, &mut acc);
                    acc
                },
            )
            .reduce(
                || vec![0u64; len],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    };
    match opts.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    }
}

fn table_len(g: &RibbonGraph) -> usize {
    2 * g.vertex_count() + g.edge_count() + 1
}

/// Face tracing that follows single twist toggles, retracing only the
/// boundary components through the toggled edge.
struct IncrementalFaces {
    corner: Vec<u32>,
    twisted: Vec<bool>,
    face: Vec<u64>,
    next_id: u64,
    orbits: usize,
}

impl IncrementalFaces {
    fn new(corner: Vec<u32>, twisted: Vec<bool>) -> Self {
        let n = corner.len();
        let mut s = IncrementalFaces {
            corner,
            twisted,
            face: vec![u64::MAX; n],
            next_id: 0,
            orbits: 0,
        };
        for f in 0..n {
            if s.face[f] == u64::MAX {
                s.stamp(f);
            }
        }
        s
    }

    fn stamp(&mut self, start: usize) {
        let id = self.next_id;
        self.next_id += 1;
        self.orbits += 1;
        let mut x = start;
        loop {
            self.face[x] = id;
            let y = edge_involution(x, self.twisted[x / 4]);
            self.face[y] = id;
            x = self.corner[y] as usize;
            if x == start {
                break;
            }
        }
    }

    fn toggle(&mut self, e: usize) {
        let stale: Vec<u64> = {
            let mut ids: Vec<u64> = self.face[4 * e..4 * e + 4].to_vec();
            ids.sort_unstable();
            ids.dedup();
            ids
        };
        self.orbits -= stale.len();
        self.twisted[e] ^= true;
        for f in 4 * e..4 * e + 4 {
            if stale.contains(&self.face[f]) {
                self.stamp(f);
            }
        }
    }
}

/// `∂Eu*_G`: the sum of `z^{eu(G^{*|A})}` over all edge subsets, with the
/// genus from `2c + e - f(A) - f(A^c)`. `A` and its complement give the same
/// genus, so only subsets without the last edge are visited.
pub fn partial_star_polynomial(g: &RibbonGraph) -> Result<GenusPolynomial> {
    partial_star_polynomial_with(g, &EnumOptions::default())
}

pub fn partial_star_polynomial_with(g: &RibbonGraph, opts: &EnumOptions) -> Result<GenusPolynomial> {
    check_edges(g)?;
    let e = g.edge_count();
    if e == 0 {
        return Ok(GenusPolynomial::monomial(1, g.euler_genus()));
    }
    let bits = e - 1;
    opts.check(bits)?;
    let base = 2 * g.components() + e;
    let full = if e == 64 { u64::MAX } else { (1u64 << e) - 1 };
    let counts = chunked(opts, bits, table_len(g), |chunk, low, counts| {
        let mut faces = SubgraphFaces::new(g);
        for i in 0..1u64 << low {
            let mask = (chunk << low) | i;
            let eu = base - faces.count(mask) - faces.count(full & !mask);
            counts[eu] += 2;
        }
    });
    Ok(GenusPolynomial::from_counts(&counts))
}

/// `∂Eu×_G`: the sum of `z^{eu(G^{×|A})}` over all edge subsets, visited in
/// Gray-code order so that consecutive subsets differ by one twist.
pub fn partial_petrial_polynomial(g: &RibbonGraph) -> Result<GenusPolynomial> {
    partial_petrial_polynomial_with(g, &EnumOptions::default())
}

pub fn partial_petrial_polynomial_with(g: &RibbonGraph, opts: &EnumOptions) -> Result<GenusPolynomial> {
    check_edges(g)?;
    let e = g.edge_count();
    opts.check(e)?;
    let base = 2 * g.components() + e - g.vertex_count();
    let isolated = g.isolated_vertices();
    let corner = g.corner_table();
    let twists = g.twists();
    let counts = chunked(opts, e, table_len(g), |chunk, low, counts| {
        let mut start = twists.clone();
        for (bit, t) in start.iter_mut().enumerate().skip(low) {
            *t ^= (chunk >> (bit - low)) & 1 == 1;
        }
        let mut faces = IncrementalFaces::new(corner.clone(), start);
        counts[base - faces.orbits - isolated] += 1;
        for i in 1..1u64 << low {
            faces.toggle(i.trailing_zeros() as usize);
            counts[base - faces.orbits - isolated] += 1;
        }
    });
    Ok(GenusPolynomial::from_counts(&counts))
}

/// Edge masks of the vertex cuts `δ(v)` for all vertices except the
/// smallest of each component; they form a basis of the cut space.
fn cut_basis(g: &RibbonGraph) -> Vec<u64> {
    let labels = g.component_labels();
    (0..g.vertex_count())
        .filter(|&v| labels[v] != v)
        .map(|v| {
            g.rotation(v)
                .iter()
                .filter(|h| !g.is_loop(h.edge))
                .fold(0u64, |m, h| m ^ (1u64 << h.edge))
        })
        .collect()
}

/// Masks of the fundamental cycles of a spanning forest. A twist vector is
/// orientable iff it meets each of them evenly.
fn fundamental_cycles(g: &RibbonGraph) -> Vec<u64> {
    let n = g.vertex_count();
    let mut path: Vec<Option<u64>> = vec![None; n];
    let mut tree = 0u64;
    for root in 0..n {
        if path[root].is_some() {
            continue;
        }
        path[root] = Some(0);
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for h in g.rotation(x) {
                let y = g.vertex_of(h.opposite());
                if path[y].is_none() {
                    path[y] = Some(path[x].unwrap() ^ (1u64 << h.edge));
                    tree |= 1u64 << h.edge;
                    stack.push(y);
                }
            }
        }
    }
    (0..g.edge_count())
        .filter(|e| (tree >> e) & 1 == 0)
        .map(|e| {
            let (u, v) = g.endpoints(e);
            (1u64 << e) ^ path[u].unwrap() ^ path[v].unwrap()
        })
        .collect()
}

fn meets_evenly(twists: u64, cycles: &[u64]) -> bool {
    cycles.iter().all(|c| (twists & c).count_ones().is_multiple_of(2))
}

/// `∂Eu×_G|_O`: the sum over subsets `A` with `G^{×|A}` orientable. These
/// are the `A` whose resulting twist vector lies in the cut space, so the
/// enumeration walks the `2^{v-c}` cut-space vectors directly.
pub fn restricted_orientable_petrial_polynomial(g: &RibbonGraph) -> Result<GenusPolynomial> {
    restricted_orientable_petrial_polynomial_with(g, &EnumOptions::default())
}

pub fn restricted_orientable_petrial_polynomial_with(
    g: &RibbonGraph,
    opts: &EnumOptions,
) -> Result<GenusPolynomial> {
    check_edges(g)?;
    let basis = cut_basis(g);
    let bits = basis.len();
    opts.check(bits)?;
    let base = 2 * g.components() + g.edge_count() - g.vertex_count();
    let isolated = g.isolated_vertices();
    let corner = g.corner_table();
    let counts = chunked(opts, bits, table_len(g), |chunk, low, counts| {
        let start = basis
            .iter()
            .enumerate()
            .skip(low)
            .filter(|(j, _)| (chunk >> (j - low)) & 1 == 1)
            .fold(0u64, |m, (_, b)| m ^ b);
        let twisted = (0..g.edge_count()).map(|e| (start >> e) & 1 == 1).collect();
        let mut faces = IncrementalFaces::new(corner.clone(), twisted);
        counts[base - faces.orbits - isolated] += 1;
        for i in 1..1u64 << low {
            let cut = basis[i.trailing_zeros() as usize];
            for e in 0..g.edge_count() {
                if (cut >> e) & 1 == 1 {
                    faces.toggle(e);
                }
            }
            counts[base - faces.orbits - isolated] += 1;
        }
    });
    Ok(GenusPolynomial::from_counts(&counts))
}

/// Calls `visit(A, f)` for every subset `A` with `G^{×|A}` orientable, where
/// `f` is the face count of that Petrial. Runs on the calling thread.
pub(crate) fn for_each_orientable_petrial(
    g: &RibbonGraph,
    opts: &EnumOptions,
    mut visit: impl FnMut(u64, usize),
) -> Result<()> {
    check_edges(g)?;
    let basis = cut_basis(g);
    opts.check(basis.len())?;
    let sigma = g.twist_mask();
    let isolated = g.isolated_vertices();
    let mut twists = 0u64;
    let mut faces = IncrementalFaces::new(g.corner_table(), vec![false; g.edge_count()]);
    visit(sigma, faces.orbits + isolated);
    for i in 1..1u64 << basis.len() {
        let cut = basis[i.trailing_zeros() as usize];
        twists ^= cut;
        for e in 0..g.edge_count() {
            if (cut >> e) & 1 == 1 {
                faces.toggle(e);
            }
        }
        visit(sigma ^ twists, faces.orbits + isolated);
    }
    Ok(())
}

/// The restricted polynomial by filtering all `2^e` subsets and tracing
/// each orientable Petrial from scratch.
pub fn restricted_orientable_petrial_polynomial_naive(g: &RibbonGraph) -> Result<GenusPolynomial> {
    restricted_orientable_petrial_polynomial_naive_with(g, &EnumOptions::default())
}

pub fn restricted_orientable_petrial_polynomial_naive_with(
    g: &RibbonGraph,
    opts: &EnumOptions,
) -> Result<GenusPolynomial> {
    check_edges(g)?;
    let e = g.edge_count();
    opts.check(e)?;
    let cycles = fundamental_cycles(g);
    let sigma = g.twist_mask();
    let base = 2 * g.components() + e - g.vertex_count();
    let isolated = g.isolated_vertices();
    let corner = g.corner_table();
    let counts = chunked(opts, e, table_len(g), |chunk, low, counts| {
        let mut seen = vec![false; corner.len()];
        for i in 0..1u64 << low {
            let twists = sigma ^ ((chunk << low) | i);
            if meets_evenly(twists, &cycles) {
                let f = count_orbits(&corner, |x| (twists >> x) & 1 == 1, &mut seen);
                counts[base - f - isolated] += 1;
            }
        }
    });
    Ok(GenusPolynomial::from_counts(&counts))
}

/// Number of subsets `A` with `G^{×|A}` orientable, by filtering all `2^e`
/// subsets.
pub fn count_orientable_petrials(g: &RibbonGraph) -> Result<BigInt> {
    count_orientable_petrials_with(g, &EnumOptions::default())
}

pub fn count_orientable_petrials_with(g: &RibbonGraph, opts: &EnumOptions) -> Result<BigInt> {
    check_edges(g)?;
    let e = g.edge_count();
    opts.check(e)?;
    let cycles = fundamental_cycles(g);
    let sigma = g.twist_mask();
    let counts = chunked(opts, e, 1, |chunk, low, counts| {
        for i in 0..1u64 << low {
            if meets_evenly(sigma ^ ((chunk << low) | i), &cycles) {
                counts[0] += 1;
            }
        }
    });
    Ok(BigInt::from(counts[0]))
}

/// `Σ_A z^{eu(G^{w|A})}` for any twuality word, building each partial
/// twual on the flag model.
pub fn enumerate_euler_spectrum(g: &RibbonGraph, word: TwualityWord) -> Result<GenusPolynomial> {
    enumerate_euler_spectrum_with(g, word, &EnumOptions::default())
}

pub fn enumerate_euler_spectrum_with(
    g: &RibbonGraph,
    word: TwualityWord,
    opts: &EnumOptions,
) -> Result<GenusPolynomial> {
    check_edges(g)?;
    let e = g.edge_count();
    opts.check(e)?;
    let base = 2 * g.components() + e;
    let gem = Gem::new(g);
    let counts = chunked(opts, e, table_len(g) + e, |chunk, low, counts| {
        let mut scratch = gem.clone();
        for i in 0..1u64 << low {
            let mask = (chunk << low) | i;
            scratch.clone_from(&gem);
            for edge in (0..e).filter(|x| (mask >> x) & 1 == 1) {
                for &op in word.letters() {
                    scratch.apply(edge, op);
                }
            }
            counts[base - scratch.vertex_count() - scratch.face_count()] += 1;
        }
    });
    Ok(GenusPolynomial::from_counts(&counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::tests::random_graph;
    use crate::twuality::{partial_petrial, EdgeSubset};

    fn p(s: &str) -> GenusPolynomial {
        s.parse().unwrap()
    }

    /// Brute force straight from the definition: build each Petrial.
    fn petrial_oracle(g: &RibbonGraph, restricted: bool) -> GenusPolynomial {
        let e = g.edge_count();
        let mut out = GenusPolynomial::zero();
        for mask in 0..1u64 << e {
            let h = partial_petrial(g, &EdgeSubset::from_mask(e, mask).unwrap()).unwrap();
            if !restricted || h.is_orientable() {
                out.add_term(h.euler_genus(), 1.into());
            }
        }
        out
    }

    #[test]
    fn star_small_values() {
        assert_eq!(partial_star_polynomial(&catalog::k2()).unwrap(), p("2"));
        assert_eq!(partial_star_polynomial(&catalog::cycle(3)).unwrap(), p("6z^2+2"));
        assert_eq!(partial_star_polynomial(&catalog::single_vertex()).unwrap(), p("1"));
        assert_eq!(partial_star_polynomial(&catalog::dipole(2)).unwrap(), p("2z^2+2"));
    }

    #[test]
    fn petrial_small_values() {
        assert_eq!(partial_petrial_polynomial(&catalog::single_vertex()).unwrap(), p("1"));
        assert_eq!(partial_petrial_polynomial(&catalog::cycle(1)).unwrap(), p("1+z"));
        assert_eq!(partial_petrial_polynomial(&catalog::twisted_loop()).unwrap(), p("1+z"));
        assert_eq!(partial_petrial_polynomial(&catalog::dipole(2)).unwrap(), p("2+2z"));
    }

    #[test]
    fn restricted_small_values() {
        assert_eq!(restricted_orientable_petrial_polynomial(&catalog::dipole(5)).unwrap(), p("1+z^4"));
        assert_eq!(restricted_orientable_petrial_polynomial(&catalog::dipole(4)).unwrap(), p("1+z^2"));
        assert_eq!(restricted_orientable_petrial_polynomial(&catalog::cycle(5)).unwrap(), p("16"));
        assert_eq!(restricted_orientable_petrial_polynomial(&catalog::twisted_loop()).unwrap(), p("1"));
    }

    #[test]
    fn enumerations_match_oracles_on_random_graphs() {
        for seed in 0..150 {
            let g = random_graph(5000 + seed, 9);
            let e = g.edge_count() as u32;
            let star = partial_star_polynomial(&g).unwrap();
            let petrial = partial_petrial_polynomial(&g).unwrap();
            let restricted = restricted_orientable_petrial_polynomial(&g).unwrap();
            assert_eq!(petrial, petrial_oracle(&g, false), "seed {seed}");
            assert_eq!(restricted, petrial_oracle(&g, true), "seed {seed}");
            assert_eq!(restricted, restricted_orientable_petrial_polynomial_naive(&g).unwrap());
            assert_eq!(star, enumerate_euler_spectrum(&g, TwualityWord::Dual).unwrap(), "seed {seed}");
            assert_eq!(petrial, enumerate_euler_spectrum(&g, TwualityWord::Petrial).unwrap());
            assert_eq!(star.coefficient_sum(), BigInt::from(2).pow(e));
            assert_eq!(petrial.coefficient_sum(), BigInt::from(2).pow(e));
            assert!(star.terms().all(|(_, c)| c % 2 == BigInt::from(0)));
            assert!(petrial.coefficient(g.euler_genus()) > BigInt::from(0));
            let free = g.vertex_count() - g.components();
            assert_eq!(count_orientable_petrials(&g).unwrap(), BigInt::from(2).pow(free as u32));
            assert_eq!(restricted.coefficient_sum(), BigInt::from(2).pow(free as u32));
        }
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let g = (0..)
            .map(|s| random_graph(s, 18))
            .find(|g| g.edge_count() >= 16)
            .unwrap();
        let one = EnumOptions::with_threads(1);
        let four = EnumOptions::with_threads(4);
        assert_eq!(
            partial_star_polynomial_with(&g, &one).unwrap(),
            partial_star_polynomial_with(&g, &four).unwrap()
        );
        assert_eq!(
            partial_petrial_polynomial_with(&g, &one).unwrap(),
            partial_petrial_polynomial_with(&g, &four).unwrap()
        );
        assert_eq!(
            restricted_orientable_petrial_polynomial_naive_with(&g, &one).unwrap(),
            restricted_orientable_petrial_polynomial_naive_with(&g, &four).unwrap()
        );
        assert_eq!(
            enumerate_euler_spectrum_with(&g, TwualityWord::DualPetrial, &one).unwrap(),
            enumerate_euler_spectrum_with(&g, TwualityWord::DualPetrial, &four).unwrap()
        );
    }

    #[test]
    fn chunked_paths_match_sequential() {
        // 15 edges crosses the parallel threshold for every enumeration
        let g = catalog::dipole(3).join(0, 0, &catalog::cycle(12), 0, 0).unwrap();
        assert_eq!(g.edge_count(), 15);
        let small = EnumOptions::default();
        let star = partial_star_polynomial_with(&g, &small).unwrap();
        let factor = partial_star_polynomial(&catalog::dipole(3)).unwrap();
        assert_eq!(star.coefficient_sum(), BigInt::from(1u64 << 15));
        assert!(factor.coefficient_sum() > BigInt::from(0));
        let petrial = partial_petrial_polynomial_with(&g, &small).unwrap();
        let product = &partial_petrial_polynomial(&catalog::dipole(3)).unwrap()
            * &partial_petrial_polynomial(&catalog::cycle(12)).unwrap();
        assert_eq!(petrial, product);
        assert_eq!(
            count_orientable_petrials(&g).unwrap(),
            BigInt::from(2).pow((g.vertex_count() - 1) as u32)
        );
    }

    #[test]
    fn cap_is_enforced() {
        let g = catalog::dipole(10);
        let tight = EnumOptions {
            threads: None,
            max_bits: 8,
        };
        assert_eq!(
            partial_petrial_polynomial_with(&g, &tight),
            Err(Error::CapExceeded { bits: 10, cap: 8 })
        );
        assert!(partial_star_polynomial_with(&g, &tight).is_err());
        // the coset walk only needs v - c = 1 bit
        assert!(restricted_orientable_petrial_polynomial_with(&g, &tight).is_ok());
    }
}
