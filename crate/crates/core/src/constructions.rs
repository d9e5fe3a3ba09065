//! Lower-bound colourings: uniform random colourings, the multicolour
//! blow-up of a clique-free base colouring, and the `s`-uniform hypergraph
//! blow-up. Each generator has a matching exact verifier.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::books::{find_mono_book, SpineSearch};
use crate::combinatorics::Combinations;
use crate::error::{Error, Result};
use crate::graph::{BookCertificate, Colour, Colouring, HyperColouring, BLUE, RED};

/// Seeded generator used everywhere a colouring or sample is drawn.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each edge red or blue with probability 1/2, edges drawn in lexicographic
/// order from a ChaCha8 stream seeded with `seed`.
pub fn random_colouring(n: usize, seed: u64) -> Colouring {
    let mut rng = rng_from_seed(seed);
    Colouring::from_fn(n, 2, |_, _| if rng.gen::<bool>() { BLUE } else { RED })
        .expect("two colours")
}

/// A base colouring on `t` vertices blown up into `t` blocks of `n`
/// vertices; vertex `v` lies in block `v / n`.
#[derive(Clone, Debug)]
pub struct BlowupSpec {
    pub base: Colouring,
    pub n: usize,
}

impl BlowupSpec {
    pub fn new(base: Colouring, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Param("block size must be >= 1".into()));
        }
        Ok(BlowupSpec { base, n })
    }

    pub fn vertex_count(&self) -> usize {
        self.base.n() * self.n
    }

    pub fn part_of(&self, v: usize) -> usize {
        v / self.n
    }

    /// Edges between blocks `i != j` take the base colour of `ij`; edges
    /// inside a block take the extra colour `q`.
    pub fn build(&self) -> Colouring {
        let q = self.base.q();
        Colouring::from_fn(self.vertex_count(), q + 1, |u, v| {
            let (a, b) = (self.part_of(u), self.part_of(v));
            if a == b {
                q as Colour
            } else {
                self.base.colour(a, b).expect("distinct blocks")
            }
        })
        .expect("q + 1 colours")
    }
}

pub fn multicolour_blowup(base: &Colouring, n: usize) -> Result<Colouring> {
    Ok(BlowupSpec::new(base.clone(), n)?.build())
}

/// Accepts (`Ok`) iff no colour contains a `B_n^(k)`; otherwise returns the
/// first offending certificate (colour, then lexicographic spine).
pub fn verify_no_book_multicolour(
    col: &Colouring,
    k: usize,
    n: usize,
) -> std::result::Result<(), BookCertificate> {
    match find_mono_book(col, k, n) {
        None => Ok(()),
        Some(cert) => Err(cert),
    }
}

/// The `s`-uniform blow-up of a two-coloured base on `r - 1` vertices into
/// blocks of `n`: an edge meeting `s` distinct blocks takes the base colour
/// of those blocks, an edge inside one block is red, anything else is blue.
pub fn hypergraph_blowup(base: &HyperColouring, n: usize, k: usize, s: usize) -> Result<HyperColouring> {
    if base.s() != s {
        return Err(Error::Param(format!(
            "base is {}-uniform, requested s = {s}",
            base.s()
        )));
    }
    if k == 0 || !k.is_multiple_of(s) {
        return Err(Error::Param(format!("k = {k} must be a positive multiple of s = {s}")));
    }
    if n == 0 {
        return Err(Error::Param("block size must be >= 1".into()));
    }
    let mut parts = vec![0usize; s];
    HyperColouring::from_fn(base.n() * n, s, |e| {
        for (p, &v) in parts.iter_mut().zip(e) {
            *p = v / n;
        }
        // e is ascending, so parts is non-decreasing
        if parts.windows(2).all(|w| w[0] < w[1]) {
            base.colour(&parts)
        } else if parts[0] == parts[s - 1] {
            RED
        } else {
            BLUE
        }
    })
}

/// Whether some `size`-set has all of its `s`-subsets in one colour.
pub fn hyper_has_mono_clique(h: &HyperColouring, size: usize) -> bool {
    let s = h.s();
    if size < s {
        return size <= h.n();
    }
    Combinations::new(h.n(), size).any(|set| {
        let mut colours = Combinations::new(size, s).map(|idx| {
            let e: Vec<usize> = idx.iter().map(|&i| set[i]).collect();
            h.colour(&e)
        });
        let first = colours.next().expect("size >= s");
        colours.all(|c| c == first)
    })
}

/// Random search for a two-colouring of the complete `s`-uniform
/// hypergraph on `vertices` vertices with no monochromatic `K_clique^(s)`.
pub fn find_hyper_base(
    vertices: usize,
    s: usize,
    clique: usize,
    seed: u64,
    tries: usize,
) -> Result<Option<HyperColouring>> {
    let mut rng = rng_from_seed(seed);
    for _ in 0..tries {
        let h = HyperColouring::from_fn(vertices, s, |_| rng.gen_range(0..2))?;
        if !hyper_has_mono_clique(&h, clique) {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// Largest hypergraph book: over all monochromatic `K_k^(s)` spines, the most
/// vertices `v` such that every edge of `spine + v` through `v` has the
/// spine's colour. Ties go to the smaller colour, then the lexicographically
/// smaller spine.
///
/// With `k = s - 1` the spine spans no edge and counts as monochromatic in
/// both colours.
pub fn hyper_max_book(h: &HyperColouring, k: usize) -> Result<SpineSearch> {
    let s = h.s();
    if k + 1 < s {
        return Err(Error::Param(format!("spine size {k} must be at least s - 1 = {}", s - 1)));
    }
    let mut best: Option<BookCertificate> = None;
    for c in [RED, BLUE] {
        let mut spine = Vec::with_capacity(k);
        hyper_spines(h, c, k, 0, &mut spine, &mut |spine| {
            let pages = hyper_pages(h, c, spine);
            if best.as_ref().is_none_or(|b| pages.len() > b.pages.len()) {
                best = Some(BookCertificate {
                    colour: c,
                    spine: spine.to_vec(),
                    pages,
                });
            }
        });
    }
    Ok(best.map_or(SpineSearch::NoSpine, SpineSearch::Book))
}

/// `(s-1)`-subsets of `set` extended by `v`, sorted, all have colour `c`.
fn joins_in_colour(h: &HyperColouring, c: Colour, set: &[usize], v: usize) -> bool {
    let s = h.s();
    let mut e = Vec::with_capacity(s);
    Combinations::new(set.len(), s - 1).all(|idx| {
        e.clear();
        e.extend(idx.iter().map(|&i| set[i]));
        e.push(v);
        e.sort_unstable();
        h.colour(&e) == c
    })
}

fn hyper_spines<F: FnMut(&[usize])>(
    h: &HyperColouring,
    c: Colour,
    k: usize,
    from: usize,
    spine: &mut Vec<usize>,
    f: &mut F,
) {
    if spine.len() == k {
        f(spine);
        return;
    }
    let need = k - spine.len();
    for v in from..h.n() {
        if h.n() - v < need {
            break;
        }
        if spine.len() + 1 >= h.s() && !joins_in_colour(h, c, spine, v) {
            continue;
        }
        spine.push(v);
        hyper_spines(h, c, k, v + 1, spine, f);
        spine.pop();
    }
}

fn hyper_pages(h: &HyperColouring, c: Colour, spine: &[usize]) -> Vec<usize> {
    (0..h.n())
        .filter(|v| !spine.contains(v))
        .filter(|&v| joins_in_colour(h, c, spine, v))
        .collect()
}
