//! Closed-form right-hand sides of the edit recursions, face statistics of
//! orientable Petrials split by one edge, and the parallel-edge thresholds
//! for even interpolation.

use crate::enumerate::{
    for_each_orientable_petrial, partial_petrial_polynomial, partial_star_polynomial,
    restricted_orientable_petrial_polynomial, EnumOptions,
};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, RibbonGraph};
use crate::poly::GenusPolynomial;

fn require_proper(g: &RibbonGraph, e: EdgeId) -> Result<()> {
    g.check_edge(e)?;
    if g.is_loop(e) {
        return Err(Error::LoopEdge(g.edge_name(e).to_string()));
    }
    Ok(())
}

fn z2(c: i64) -> GenusPolynomial {
    GenusPolynomial::monomial(c, 2)
}

/// Predicted `∂Eu*` of the subdivision of `G` at `e`: twice `∂Eu*_G` for a
/// bridge, else `∂Eu*_G + 2z^2 ∂Eu*_{G-e}`.
pub fn star_subdivision_rhs(g: &RibbonGraph, e: EdgeId) -> Result<GenusPolynomial> {
    g.check_edge(e)?;
    let p = partial_star_polynomial(g)?;
    if g.is_bridge(e) {
        return Ok(p.scale_monomial(2, 0));
    }
    Ok(&p + &(&z2(2) * &partial_star_polynomial(&g.delete_edge(e)?)?))
}

/// `(1 + 2z) ∂Eu×_{G/e} + z^2 ∂Eu×_{G-e}`, the predicted `∂Eu×` after adding
/// an edge parallel to `e`. Only claimed under a hypothesis on `e` that is
/// not decided here.
pub fn petrial_parallel_rhs(g: &RibbonGraph, e: EdgeId) -> Result<GenusPolynomial> {
    require_proper(g, e)?;
    let contracted = partial_petrial_polynomial(&g.contract(e)?)?;
    let deleted = partial_petrial_polynomial(&g.delete_edge(e)?)?;
    let one_two_z = GenusPolynomial::from_terms([(1, 0), (2, 1)]);
    Ok(&(&one_two_z * &contracted) + &deleted.scale_monomial(1, 2))
}

/// `2 ∂Eu×_G`, the predicted `∂Eu×` of any subdivision of `G`.
pub fn petrial_subdivision_rhs(g: &RibbonGraph) -> Result<GenusPolynomial> {
    Ok(partial_petrial_polynomial(g)?.scale_monomial(2, 0))
}

/// `2 ∂Eu×_G|_O`, the restricted form of [`petrial_subdivision_rhs`].
pub fn petrial_subdivision_restricted_rhs(g: &RibbonGraph) -> Result<GenusPolynomial> {
    Ok(restricted_orientable_petrial_polynomial(g)?.scale_monomial(2, 0))
}

/// `∂Eu*_G + 2z^2 ∂Eu*_{G/e}`, the predicted `∂Eu*` after adding one edge
/// parallel to the proper edge `e`.
pub fn star_parallel_rhs(g: &RibbonGraph, e: EdgeId) -> Result<GenusPolynomial> {
    star_multi_parallel_rhs(g, e, 1)
}

/// `∂Eu*_G + (2^{n+1} - 2) z^2 ∂Eu*_{G/e}` for `n` parallel copies of `e`.
pub fn star_multi_parallel_rhs(g: &RibbonGraph, e: EdgeId, n: u32) -> Result<GenusPolynomial> {
    require_proper(g, e)?;
    let p = partial_star_polynomial(g)?;
    if n == 0 {
        return Ok(p);
    }
    let factor = num_bigint::BigInt::from(2).pow(n + 1) - 2;
    let contracted = partial_star_polynomial(&g.contract(e)?)?;
    Ok(&p + &contracted.scale_monomial(factor, 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JoinFlavor {
    Petrial,
    PetrialRestricted,
}

/// Product of the two factors' polynomials of the given flavor.
pub fn join_product_rhs(g1: &RibbonGraph, g2: &RibbonGraph, flavor: JoinFlavor) -> Result<GenusPolynomial> {
    let poly = |g: &RibbonGraph| match flavor {
        JoinFlavor::Petrial => partial_petrial_polynomial(g),
        JoinFlavor::PetrialRestricted => restricted_orientable_petrial_polynomial(g),
    };
    Ok(&poly(g1)? * &poly(g2)?)
}

/// Extremes over orientable Petrials `G^{×|A}`: the most faces with `e` in
/// `A` and the fewest with `e` outside `A`, with the matching Euler genera.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceStats {
    pub f0_max: usize,
    pub f1_min: usize,
    pub eu0_min: usize,
    pub eu1_max: usize,
}

pub fn face_stats(g: &RibbonGraph, e: EdgeId) -> Result<FaceStats> {
    face_stats_with(g, e, &EnumOptions::default())
}

pub fn face_stats_with(g: &RibbonGraph, e: EdgeId, opts: &EnumOptions) -> Result<FaceStats> {
    g.check_edge(e)?;
    let mut f0_max: Option<usize> = None;
    let mut f1_min: Option<usize> = None;
    for_each_orientable_petrial(g, opts, |a, f| {
        if (a >> e) & 1 == 1 {
            f0_max = Some(f0_max.map_or(f, |m| m.max(f)));
        } else {
            f1_min = Some(f1_min.map_or(f, |m| m.min(f)));
        }
    })?;
    let name = g.edge_name(e);
    let f0_max = f0_max.ok_or_else(|| {
        Error::Degenerate(format!("no orientable partial Petrial twists edge {name}"))
    })?;
    let f1_min = f1_min.ok_or_else(|| {
        Error::Degenerate(format!("every orientable partial Petrial twists edge {name}"))
    })?;
    let base = 2 * g.components() + g.edge_count() - g.vertex_count();
    Ok(FaceStats {
        f0_max,
        f1_min,
        eu0_min: base - f0_max,
        eu1_max: base - f1_min,
    })
}

/// Which rule produced a threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundCase {
    /// Single-term restricted polynomial, `f0_max` rises by one with `e1`.
    SingleTermRise,
    /// Single-term restricted polynomial, `f0_max` drops by one with `e1`.
    SingleTermDrop,
    /// Restricted polynomial with more than one term.
    MultiTerm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmBound {
    pub threshold: usize,
    pub case: BoundCase,
    pub restricted: GenusPolynomial,
    pub stats: FaceStats,
    /// Statistics of `G + e1` for the same edge `e`.
    pub stats_plus_one: FaceStats,
}

/// The threshold `n*` such that adding `n >= n*` edges parallel to `e`
/// leaves a restricted polynomial that is not even-interpolating.
pub fn tm_bound(g: &RibbonGraph, e: EdgeId) -> Result<TmBound> {
    require_proper(g, e)?;
    let restricted = restricted_orientable_petrial_polynomial(g)?;
    let stats = face_stats(g, e)?;
    let stats_plus_one = face_stats(&g.add_parallel_edge(e)?, e)?;
    let (threshold, case) = if restricted.term_count() == 1 {
        if stats_plus_one.f0_max == stats.f0_max + 1 {
            (4, BoundCase::SingleTermRise)
        } else if stats_plus_one.f0_max + 1 == stats.f0_max {
            (3, BoundCase::SingleTermDrop)
        } else {
            return Err(Error::Inconsistent(format!(
                "single-term restricted polynomial but f0_max goes from {} to {} after one parallel edge",
                stats.f0_max, stats_plus_one.f0_max
            )));
        }
    } else {
        let f1 = stats.f1_min as i64;
        let a = stats_plus_one.f0_max as i64 - f1 + 4;
        let b = stats.f0_max as i64 - f1 + 4;
        (a.min(b).max(0) as usize, BoundCase::MultiTerm)
    };
    Ok(TmBound {
        threshold,
        case,
        restricted,
        stats,
        stats_plus_one,
    })
}

/// Smallest `n <= n_max` for which `G` plus `n` edges parallel to `e` has a
/// restricted polynomial that is not even-interpolating.
pub fn min_n_not_even_interpolating(g: &RibbonGraph, e: EdgeId, n_max: usize) -> Result<Option<usize>> {
    min_n_not_even_interpolating_with(g, e, n_max, &EnumOptions::default())
}

pub fn min_n_not_even_interpolating_with(
    g: &RibbonGraph,
    e: EdgeId,
    n_max: usize,
    opts: &EnumOptions,
) -> Result<Option<usize>> {
    require_proper(g, e)?;
    let bits = g.edge_count() + n_max;
    if bits > opts.max_bits {
        return Err(Error::CapExceeded {
            bits,
            cap: opts.max_bits,
        });
    }
    let mut h = g.clone();
    for n in 0..=n_max {
        if n > 0 {
            h = h.add_parallel_edge(e)?;
        }
        let p = crate::enumerate::restricted_orientable_petrial_polynomial_with(&h, opts)?;
        if !p.is_even_interpolating()? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, build_catalog};

    fn p(s: &str) -> GenusPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn star_recursions_on_small_graphs() {
        let k2 = catalog::k2();
        assert_eq!(star_subdivision_rhs(&k2, 0).unwrap(), p("4"));
        assert_eq!(partial_star_polynomial(&k2.subdivide(0).unwrap()).unwrap(), p("4"));
        let c2 = catalog::cycle(2);
        assert_eq!(star_subdivision_rhs(&c2, 0).unwrap(), p("6z^2+2"));
        assert_eq!(star_parallel_rhs(&k2, 0).unwrap(), p("2z^2+2"));
        assert_eq!(partial_star_polynomial(&catalog::dipole(2)).unwrap(), p("2z^2+2"));
        assert_eq!(star_multi_parallel_rhs(&k2, 0, 0).unwrap(), p("2"));
        assert_eq!(star_multi_parallel_rhs(&k2, 0, 1).unwrap(), star_parallel_rhs(&k2, 0).unwrap());
        assert!(matches!(star_parallel_rhs(&catalog::cycle(1), 0), Err(Error::LoopEdge(_))));
    }

    #[test]
    fn petrial_parallel_rhs_on_k2_disagrees_with_the_digon() {
        let rhs = petrial_parallel_rhs(&catalog::k2(), 0).unwrap();
        assert_eq!(rhs, p("1+2z+z^2"));
        assert_eq!(partial_petrial_polynomial(&catalog::dipole(2)).unwrap(), p("2+2z"));
    }

    #[test]
    fn joins_multiply() {
        let d3 = catalog::dipole(3);
        let c2 = catalog::cycle(2);
        let joined = d3.join(0, 1, &c2, 1, 1).unwrap();
        assert_eq!(
            partial_petrial_polynomial(&joined).unwrap(),
            join_product_rhs(&d3, &c2, JoinFlavor::Petrial).unwrap()
        );
        let h = build_catalog("dipole-join-digon", Some(5)).unwrap();
        let rhs = join_product_rhs(&catalog::dipole(5), &c2, JoinFlavor::PetrialRestricted).unwrap();
        assert_eq!(rhs, p("2+2z^4"));
        assert_eq!(restricted_orientable_petrial_polynomial(&h).unwrap(), rhs);
        let v = catalog::single_vertex();
        assert_eq!(
            join_product_rhs(&d3, &v, JoinFlavor::Petrial).unwrap(),
            partial_petrial_polynomial(&d3).unwrap()
        );
    }

    #[test]
    fn diamond_statistics() {
        let g = build_catalog("diamond", None).unwrap();
        let e = g.edge_by_name("e").unwrap();
        let s = face_stats(&g, e).unwrap();
        assert_eq!((s.f0_max, s.f1_min), (3, 1));
        assert_eq!(s.eu0_min, 2 + 5 - 4 - 3);
        assert_eq!(s.eu1_max, 2 + 5 - 4 - 1);
        let b = tm_bound(&g, e).unwrap();
        assert_eq!(b.stats_plus_one.f0_max, 2);
        assert_eq!((b.threshold, b.case), (5, BoundCase::MultiTerm));
        let n = min_n_not_even_interpolating(&g, e, 5).unwrap().unwrap();
        assert!(n <= 5);
    }

    #[test]
    fn cycle_statistics() {
        for m in 2..8 {
            let g = catalog::cycle(m);
            let b = tm_bound(&g, 0).unwrap();
            assert_eq!(b.stats.f0_max, 2);
            assert_eq!(b.stats_plus_one.f0_max, 1);
            assert_eq!((b.threshold, b.case), (3, BoundCase::SingleTermDrop));
            let n = min_n_not_even_interpolating(&g, 0, 3).unwrap().unwrap();
            assert!(n <= 3);
        }
    }

    #[test]
    fn dipole_search() {
        assert_eq!(min_n_not_even_interpolating(&catalog::dipole(2), 0, 6).unwrap(), Some(3));
        assert_eq!(min_n_not_even_interpolating(&catalog::dipole(2), 0, 2).unwrap(), None);
        let tight = EnumOptions {
            threads: None,
            max_bits: 4,
        };
        assert!(matches!(
            min_n_not_even_interpolating_with(&catalog::dipole(2), 0, 3, &tight),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn degenerate_split() {
        let g = catalog::twisted_loop();
        assert!(matches!(face_stats(&g, 0), Err(Error::Degenerate(_))));
    }
}
