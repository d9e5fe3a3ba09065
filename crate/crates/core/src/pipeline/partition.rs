//! Equitable partitions with chosen regular-looking subsets.
//!
//! Nothing here certifies regularity; the partition is a seeded balanced
//! split improved by local search on a sampled irregularity proxy, and each
//! `W_i` is the most regular-looking of a few random halves of `V_i`.

use rand::seq::SliceRandom;
use rand::Rng;

use super::density::{distinct_pair_density, edges_between, min_part};
use crate::bitset::Bitset;
use crate::constructions::rng_from_seed;
use crate::error::{Error, Result};
use crate::graph::{Colouring, RED};

/// Probe sets used by the partition proxy.
const PROXY_PROBES: usize = 8;
/// Random candidate subsets per class.
pub const SUBSET_TRIALS: usize = 16;
/// Sampled sub-pairs per subset score.
const SCORE_PROBES: usize = 24;

#[derive(Clone, Debug, PartialEq)]
pub struct EquitablePartition {
    pub classes: Vec<Vec<usize>>,
    pub subsets: Vec<Vec<usize>>,
    pub eta: f64,
    pub proxy_initial: f64,
    pub proxy_final: f64,
}

impl EquitablePartition {
    pub fn m(&self) -> usize {
        self.classes.len()
    }

    pub fn check_invariants(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for class in &self.classes {
            for &v in class {
                if v >= n || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        let sizes = self.classes.iter().map(Vec::len);
        let (lo, hi) = (sizes.clone().min().unwrap_or(0), sizes.max().unwrap_or(0));
        seen.into_iter().all(|s| s)
            && hi - lo <= 1
            && self
                .subsets
                .iter()
                .zip(&self.classes)
                .all(|(w, v)| !w.is_empty() && w.iter().all(|x| v.contains(x)))
    }
}

struct Proxy {
    probes: Vec<Bitset>,
}

impl Proxy {
    fn pair(&self, col: &Colouring, a: &[usize], b: &[usize], n: usize) -> f64 {
        let bset = Bitset::from_iter_len(n, b.iter().copied());
        let base = edges_between(col, RED, a, &bset) as f64 / (a.len() * b.len()) as f64;
        let mut worst: f64 = 0.0;
        for p in &self.probes {
            let sub_a: Vec<usize> = a.iter().copied().filter(|&v| p.contains(v)).collect();
            let sub_b = bset.intersection(p);
            let sb = sub_b.count();
            if sub_a.is_empty() || sb == 0 {
                continue;
            }
            let d = edges_between(col, RED, &sub_a, &sub_b) as f64 / (sub_a.len() * sb) as f64;
            worst = worst.max((d - base).abs());
        }
        worst
    }

    fn score(&self, col: &Colouring, classes: &[Vec<usize>]) -> f64 {
        let n = col.n();
        let mut total = 0.0;
        for i in 0..classes.len() {
            for j in i + 1..classes.len() {
                total += self.pair(col, &classes[i], &classes[j], n);
            }
        }
        total
    }
}

fn derive_seed(seed: u64, tag: u64) -> u64 {
    seed ^ tag.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Seeded equitable split into `m` classes, `steps` rounds of swap local
/// search on the proxy (a swap is kept only if it strictly lowers it), then
/// one subset per class.
pub fn make_partition(col: &Colouring, m: usize, seed: u64, steps: usize, eta: f64) -> Result<EquitablePartition> {
    let n = col.n();
    if m == 0 || m > n {
        return Err(Error::Param(format!("part count {m} must satisfy 1 <= m <= N = {n}")));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::Param(format!("eta must lie in (0, 1), got {eta}")));
    }
    let mut rng = rng_from_seed(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let (base, extra) = (n / m, n % m);
    let mut classes = Vec::with_capacity(m);
    let mut at = 0;
    for i in 0..m {
        let size = base + usize::from(i < extra);
        let mut class = perm[at..at + size].to_vec();
        class.sort_unstable();
        classes.push(class);
        at += size;
    }

    let proxy = Proxy {
        probes: (0..PROXY_PROBES)
            .map(|_| Bitset::from_iter_len(n, (0..n).filter(|_| rng.gen::<bool>())))
            .collect(),
    };
    let proxy_initial = if m > 1 { proxy.score(col, &classes) } else { 0.0 };
    let mut current = proxy_initial;
    if m > 1 && base > 0 {
        for _ in 0..steps {
            let a = rng.gen_range(0..m);
            let mut b = rng.gen_range(0..m - 1);
            if b >= a {
                b += 1;
            }
            let ia = rng.gen_range(0..classes[a].len());
            let ib = rng.gen_range(0..classes[b].len());
            let (x, y) = (classes[a][ia], classes[b][ib]);
            classes[a][ia] = y;
            classes[b][ib] = x;
            let score = proxy.score(col, &classes);
            if score < current {
                current = score;
            } else {
                classes[a][ia] = x;
                classes[b][ib] = y;
            }
        }
        for class in &mut classes {
            class.sort_unstable();
        }
    }

    let subsets = classes
        .iter()
        .enumerate()
        .map(|(i, class)| {
            pick_regular_subset(col, class, eta, SUBSET_TRIALS, derive_seed(seed, i as u64)).subset
        })
        .collect();
    Ok(EquitablePartition {
        classes,
        subsets,
        eta,
        proxy_initial,
        proxy_final: current,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubsetChoice {
    pub subset: Vec<usize>,
    pub score: f64,
    /// Scores of every candidate, in candidate order (random halves, then
    /// the class itself).
    pub candidate_scores: Vec<f64>,
}

/// Largest deviation between `d(U', V')` and `d(W, W)` over sampled sub-pairs
/// of `W` of relative size at least `eta`, both measured over distinct
/// ordered pairs. Lower is more regular. The same `seed` gives the same
/// probe sizes for every `W` of a given size.
pub fn regularity_score(col: &Colouring, w: &[usize], eta: f64, seed: u64) -> f64 {
    let n = col.n();
    let wset = Bitset::from_iter_len(n, w.iter().copied());
    let Some(base) = distinct_pair_density(col, RED, w, &wset) else {
        return 0.0;
    };
    let mut rng = rng_from_seed(seed);
    let lo = min_part(eta, w.len()).max(2).min(w.len());
    let mut pool_a = w.to_vec();
    let mut pool_b = w.to_vec();
    let mut worst: f64 = 0.0;
    for _ in 0..SCORE_PROBES {
        let sa = rng.gen_range(lo..=w.len());
        let sb = rng.gen_range(lo..=w.len());
        let (sub_a, _) = pool_a.partial_shuffle(&mut rng, sa);
        let (sub_b, _) = pool_b.partial_shuffle(&mut rng, sb);
        let bset = Bitset::from_iter_len(n, sub_b.iter().copied());
        if let Some(d) = distinct_pair_density(col, RED, sub_a, &bset) {
            worst = worst.max((d - base).abs());
        }
    }
    worst
}

/// Picks `W ⊆ V` among `trials` random subsets of size
/// `max(ceil(|V|/2), 2)` and `V` itself, minimising [`regularity_score`];
/// the lowest candidate index wins ties. Classes of at most two vertices
/// (or whose half is the whole class) return `V`.
pub fn pick_regular_subset(col: &Colouring, class: &[usize], eta: f64, trials: usize, seed: u64) -> SubsetChoice {
    let size = class.len().div_ceil(2).max(2);
    if class.len() <= 2 || size >= class.len() {
        let score = regularity_score(col, class, eta, derive_seed(seed, u64::MAX));
        return SubsetChoice {
            subset: class.to_vec(),
            score,
            candidate_scores: vec![score],
        };
    }
    let mut rng = rng_from_seed(seed);
    let mut pool = class.to_vec();
    let mut candidates: Vec<Vec<usize>> = (0..trials)
        .map(|_| {
            let (pick, _) = pool.partial_shuffle(&mut rng, size);
            let mut pick = pick.to_vec();
            pick.sort_unstable();
            pick
        })
        .collect();
    candidates.push(class.to_vec());

    let score_seed = derive_seed(seed, u64::MAX);
    let candidate_scores: Vec<f64> = candidates
        .iter()
        .map(|w| regularity_score(col, w, eta, score_seed))
        .collect();
    let mut best = 0;
    for (i, &s) in candidate_scores.iter().enumerate() {
        if s < candidate_scores[best] {
            best = i;
        }
    }
    SubsetChoice {
        subset: candidates.swap_remove(best),
        score: candidate_scores[best],
        candidate_scores,
    }
}
