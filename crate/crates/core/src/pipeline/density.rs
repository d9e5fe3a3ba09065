//! Pair densities and epsilon-regularity checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bitset::Bitset;
use crate::constructions::rng_from_seed;
use crate::error::{Error, Result};
use crate::graph::{Colour, Colouring};

/// Ordered pairs `(a, b)`, `a ∈ A`, `b ∈ B`, joined in colour `c`.
pub(crate) fn edges_between(col: &Colouring, c: Colour, a: &[usize], b: &Bitset) -> usize {
    a.iter().map(|&u| col.neighbours(c, u).intersection_count(b)).sum()
}

/// `e_c(A, B) / (|A| |B|)`, counting ordered pairs. For `A = B` each internal
/// edge is counted in both orientations and the diagonal contributes nothing.
pub fn pair_density(col: &Colouring, c: Colour, a: &[usize], b: &[usize]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Domain("density of an empty vertex set".into()));
    }
    let bset = Bitset::from_iter_len(col.n(), b.iter().copied());
    Ok(edges_between(col, c, a, &bset) as f64 / (a.len() * b.len()) as f64)
}

/// Density over ordered pairs of distinct vertices, so that `d(U, U)` of a
/// monochromatic set is exactly 1. `None` when there are no such pairs.
pub(crate) fn distinct_pair_density(col: &Colouring, c: Colour, a: &[usize], b: &Bitset) -> Option<f64> {
    let overlap = a.iter().filter(|&&u| b.contains(u)).count();
    let pairs = a.len() * b.count() - overlap;
    (pairs > 0).then(|| edges_between(col, c, a, b) as f64 / pairs as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegularityMode {
    /// Every admissible sub-pair; both sides must have at most 14 vertices.
    Exhaustive,
    /// Uniformly random sub-pairs; can only ever find violations.
    Sampled { trials: usize, seed: u64 },
}

pub const EXHAUSTIVE_CAP: usize = 14;

/// Sub-pair `(U', V')` whose density strays more than epsilon from `d(A, B)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub sub_a: Vec<usize>,
    pub sub_b: Vec<usize>,
    pub sub_density: f64,
    pub density: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RegularityVerdict {
    /// Proven by exhaustive scan.
    Regular,
    Irregular(Violation),
    /// Sampled mode found nothing in this many trials; not a proof.
    NoViolationFound { trials: usize },
}

impl RegularityVerdict {
    pub fn passed(&self) -> bool {
        !matches!(self, RegularityVerdict::Irregular(_))
    }
}

/// Smallest admissible subset size, `ceil(eps * size)`, at least 1.
pub(crate) fn min_part(eps: f64, size: usize) -> usize {
    ((eps * size as f64 - 1e-9).ceil().max(1.0) as usize).min(size)
}

const SLACK: f64 = 1e-12;

pub fn eps_regular_check(
    col: &Colouring,
    c: Colour,
    a: &[usize],
    b: &[usize],
    eps: f64,
    mode: RegularityMode,
) -> Result<RegularityVerdict> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Param(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    let density = pair_density(col, c, a, b)?;
    match mode {
        RegularityMode::Exhaustive => exhaustive(col, c, a, b, eps, density),
        RegularityMode::Sampled { trials, seed } => Ok(sampled(col, c, a, b, eps, density, trials, seed)),
    }
}

/// For each `U'` the extreme densities over `|V'| = s` come from the `s`
/// highest and `s` lowest `U'`-degrees in `B`, so scanning subsets of `A`
/// and sizes of `V'` is exact.
fn exhaustive(
    col: &Colouring,
    c: Colour,
    a: &[usize],
    b: &[usize],
    eps: f64,
    density: f64,
) -> Result<RegularityVerdict> {
    if a.len() > EXHAUSTIVE_CAP || b.len() > EXHAUSTIVE_CAP {
        return Err(Error::Capacity {
            what: "exhaustive regularity side",
            needed: a.len().max(b.len()) as u128,
            cap: EXHAUSTIVE_CAP as u128,
        });
    }
    let (amin, bmin) = (min_part(eps, a.len()), min_part(eps, b.len()));
    let mut degs: Vec<(usize, usize)> = Vec::with_capacity(b.len());
    for mask in 1u32..(1 << a.len()) {
        let size_a = mask.count_ones() as usize;
        if size_a < amin {
            continue;
        }
        let sub_a: Vec<usize> = (0..a.len()).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).collect();
        let sub_set = Bitset::from_iter_len(col.n(), sub_a.iter().copied());
        degs.clear();
        degs.extend(
            b.iter()
                .map(|&v| (col.neighbours(c, v).intersection_count(&sub_set), v)),
        );
        // descending degree, ties by vertex
        degs.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        let mut prefix = vec![0usize; b.len() + 1];
        for (i, d) in degs.iter().enumerate() {
            prefix[i + 1] = prefix[i] + d.0;
        }
        let total = prefix[b.len()];
        for s in bmin..=b.len() {
            let denom = (size_a * s) as f64;
            let hi = prefix[s] as f64 / denom;
            let lo = (total - prefix[b.len() - s]) as f64 / denom;
            let pick = if (hi - density).abs() > eps + SLACK {
                Some((hi, &degs[..s]))
            } else if (density - lo).abs() > eps + SLACK {
                Some((lo, &degs[b.len() - s..]))
            } else {
                None
            };
            if let Some((sub_density, chosen)) = pick {
                let mut sub_b: Vec<usize> = chosen.iter().map(|d| d.1).collect();
                sub_b.sort_unstable();
                return Ok(RegularityVerdict::Irregular(Violation {
                    sub_a,
                    sub_b,
                    sub_density,
                    density,
                }));
            }
        }
    }
    Ok(RegularityVerdict::Regular)
}

#[allow(clippy::too_many_arguments)]
fn sampled(
    col: &Colouring,
    c: Colour,
    a: &[usize],
    b: &[usize],
    eps: f64,
    density: f64,
    trials: usize,
    seed: u64,
) -> RegularityVerdict {
    let mut rng = rng_from_seed(seed);
    let (amin, bmin) = (min_part(eps, a.len()), min_part(eps, b.len()));
    let mut pool_a = a.to_vec();
    let mut pool_b = b.to_vec();
    for _ in 0..trials {
        let sa = rng.gen_range(amin..=a.len());
        let sb = rng.gen_range(bmin..=b.len());
        let (sub_a, _) = pool_a.partial_shuffle(&mut rng, sa);
        let (sub_b, _) = pool_b.partial_shuffle(&mut rng, sb);
        let bset = Bitset::from_iter_len(col.n(), sub_b.iter().copied());
        let d = edges_between(col, c, sub_a, &bset) as f64 / (sa * sb) as f64;
        if (d - density).abs() > eps + SLACK {
            let mut sub_a = sub_a.to_vec();
            let mut sub_b = sub_b.to_vec();
            sub_a.sort_unstable();
            sub_b.sort_unstable();
            return RegularityVerdict::Irregular(Violation {
                sub_a,
                sub_b,
                sub_density: d,
                density,
            });
        }
    }
    RegularityVerdict::NoViolationFound { trials }
}
