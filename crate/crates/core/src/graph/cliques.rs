//! Monochromatic clique enumeration and page counting.

use super::colouring::{Colour, Colouring};
use crate::bitset::Bitset;
use std::ops::ControlFlow;

/// Lexicographic stream of the `k`-sets that are cliques in colour `c`.
///
/// Single-consumer; open one stream per thread.
pub struct MonoCliques<'a> {
    col: &'a Colouring,
    c: Colour,
    k: usize,
    frames: Vec<Bitset>,
    chosen: Vec<usize>,
}

impl Iterator for MonoCliques<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        loop {
            let frame = self.frames.last_mut()?;
            let Some(v) = frame.iter().next() else {
                self.frames.pop();
                self.chosen.pop();
                continue;
            };
            frame.remove(v);
            if self.chosen.len() + 1 == self.k {
                let mut out = self.chosen.clone();
                out.push(v);
                return Some(out);
            }
            let next = frame.intersection(self.col.neighbours(self.c, v));
            let need = self.k - self.chosen.len() - 1;
            if next.count() >= need {
                self.chosen.push(v);
                self.frames.push(next);
            }
        }
    }
}

/// Enumerates colour-`c` cliques of size `k` in lexicographic order.
/// `k > n` (or `k == 0`) gives an empty stream.
pub fn mono_cliques(col: &Colouring, c: Colour, k: usize) -> MonoCliques<'_> {
    let frames = if k == 0 || k > col.n() {
        Vec::new()
    } else {
        vec![Bitset::full(col.n())]
    };
    MonoCliques {
        col,
        c,
        k,
        frames,
        chosen: Vec::new(),
    }
}

/// Vertices outside `spine` joined in colour `c` to every spine vertex.
pub fn common_pages(col: &Colouring, c: Colour, spine: &[usize]) -> Bitset {
    let mut out = Bitset::full(col.n());
    for &u in spine {
        out.intersect_with(col.neighbours(c, u));
    }
    // diagonals are clear, so spine vertices are already gone unless the
    // spine is empty or contains a non-edge; strip them explicitly anyway
    for &u in spine {
        out.remove(u);
    }
    out
}

/// Exact number of monochromatic `K_k` per colour.
///
/// For `k == 1` every vertex is a clique in every colour.
pub fn count_mono_cliques(col: &Colouring, k: usize) -> Vec<u64> {
    (0..col.q() as Colour)
        .map(|c| count_in_colour(col, c, k))
        .collect()
}

fn count_in_colour(col: &Colouring, c: Colour, k: usize) -> u64 {
    if k == 0 || k > col.n() {
        return 0;
    }
    let full = Bitset::full(col.n());
    count_rec(col, c, &full, k)
}

fn count_rec(col: &Colouring, c: Colour, cand: &Bitset, left: usize) -> u64 {
    if left == 1 {
        return cand.count() as u64;
    }
    let mut total = 0;
    for v in cand.iter() {
        let mut next = cand.intersection(col.neighbours(c, v));
        next.clear_through(v);
        if next.count() + 1 >= left {
            total += count_rec(col, c, &next, left - 1);
        }
    }
    total
}

/// Visits every colour-`c` `k`-clique whose smallest vertex is `root`,
/// in lexicographic order, passing the clique and its common colour-`c`
/// neighbourhood (the page set).
pub fn for_each_rooted_clique<F>(col: &Colouring, c: Colour, k: usize, root: usize, f: &mut F)
where
    F: FnMut(&[usize], &Bitset),
{
    let _ = try_for_each_rooted_clique(col, c, k, root, 0, &mut |s, p| {
        f(s, p);
        ControlFlow::Continue(())
    });
}

/// Like [`for_each_rooted_clique`], but only visits cliques with at least
/// `min_pages` pages (whole subtrees are skipped once the running common
/// neighbourhood is too small) and stops when `f` breaks.
pub fn try_for_each_rooted_clique<F>(
    col: &Colouring,
    c: Colour,
    k: usize,
    root: usize,
    min_pages: usize,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize], &Bitset) -> ControlFlow<()>,
{
    if k == 0 || k > col.n() || root >= col.n() {
        return ControlFlow::Continue(());
    }
    let nb = col.neighbours(c, root);
    if k > 1 && nb.count() < min_pages + k - 1 {
        return ControlFlow::Continue(());
    }
    let mut cand = nb.clone();
    cand.clear_through(root);
    let mut spine = Vec::with_capacity(k);
    spine.push(root);
    rooted_rec(col, c, k, min_pages, &mut spine, &cand, nb, f)
}

#[allow(clippy::too_many_arguments)]
fn rooted_rec<F>(
    col: &Colouring,
    c: Colour,
    k: usize,
    min_pages: usize,
    spine: &mut Vec<usize>,
    cand: &Bitset,
    common: &Bitset,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize], &Bitset) -> ControlFlow<()>,
{
    if spine.len() == k {
        if common.count() >= min_pages {
            return f(spine, common);
        }
        return ControlFlow::Continue(());
    }
    let need = k - spine.len();
    if cand.count() < need {
        return ControlFlow::Continue(());
    }
    for v in cand.iter() {
        let nb = col.neighbours(c, v);
        let mut next_cand = cand.intersection(nb);
        next_cand.clear_through(v);
        if next_cand.count() + 1 < need {
            continue;
        }
        let next_common = common.intersection(nb);
        // the remaining need - 1 spine vertices also sit in next_common
        if next_common.count() < min_pages + need - 1 {
            continue;
        }
        spine.push(v);
        let flow = rooted_rec(col, c, k, min_pages, spine, &next_cand, &next_common, f);
        spine.pop();
        flow?;
    }
    ControlFlow::Continue(())
}
