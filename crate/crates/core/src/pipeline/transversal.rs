//! Best spine among the transversal monochromatic cliques of a family of
//! vertex parts, by exhaustive enumeration.

use rayon::prelude::*;

use crate::bitset::Bitset;
use crate::books::SpineSearch;
use crate::error::{Error, Result};
use crate::graph::{BookCertificate, Colour, Colouring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    /// Pages are restricted to the union of the page parts.
    pub best: SpineSearch,
    /// Distinct transversal spines.
    pub spines: u64,
    /// Total pages (within the page parts) over those spines.
    pub page_sum: u64,
}

impl Transversal {
    pub fn average(&self) -> Option<f64> {
        (self.spines > 0).then(|| self.page_sum as f64 / self.spines as f64)
    }
}

/// Whether the sorted set `s` has a system of distinct representatives
/// with `s[π(i)] ∈ parts[i]`.
pub(crate) fn is_transversal(s: &[usize], parts: &[Bitset]) -> bool {
    fn assign(i: usize, s: &[usize], parts: &[Bitset], used: &mut [bool]) -> bool {
        if i == parts.len() {
            return true;
        }
        for (x, &v) in s.iter().enumerate() {
            if !used[x] && parts[i].contains(v) {
                used[x] = true;
                if assign(i + 1, s, parts, used) {
                    return true;
                }
                used[x] = false;
            }
        }
        false
    }
    s.len() == parts.len() && assign(0, s, parts, &mut vec![false; s.len()])
}

struct Scan<'a> {
    col: &'a Colouring,
    c: Colour,
    parts: Vec<Bitset>,
    pages: Bitset,
}

#[derive(Default)]
struct Tally {
    best: Option<(usize, Vec<usize>)>,
    spines: u64,
    page_sum: u64,
}

impl Scan<'_> {
    fn extend(&self, clique: &mut Vec<usize>, cand: &Bitset, tally: &mut Tally) {
        if clique.len() == self.parts.len() {
            if !is_transversal(clique, &self.parts) {
                return;
            }
            let mut common = self.pages.clone();
            for &v in clique.iter() {
                common.intersect_with(self.col.neighbours(self.c, v));
            }
            let pages = common.count();
            tally.spines += 1;
            tally.page_sum += pages as u64;
            if tally.best.as_ref().is_none_or(|b| pages > b.0) {
                tally.best = Some((pages, clique.clone()));
            }
            return;
        }
        for v in cand.iter() {
            let mut next = cand.clone();
            next.clear_through(v);
            next.intersect_with(self.col.neighbours(self.c, v));
            clique.push(v);
            self.extend(clique, &next, tally);
            clique.pop();
        }
    }
}

/// Enumerates every colour-`c` clique with one vertex in each spine part
/// (parts may repeat or overlap; each vertex set counts once) and keeps the
/// one with the most pages inside the union of the page parts. Ties go to
/// the lexicographically smallest spine.
pub fn transversal_best_spine(
    col: &Colouring,
    c: Colour,
    spine_parts: &[Vec<usize>],
    page_parts: &[Vec<usize>],
) -> Result<Transversal> {
    if spine_parts.is_empty() {
        return Err(Error::Param("at least one spine part is needed".into()));
    }
    if c as usize >= col.q() {
        return Err(Error::Param(format!("no colour {c}")));
    }
    let n = col.n();
    let parts: Vec<Bitset> = spine_parts
        .iter()
        .map(|p| Bitset::from_iter_len(n, p.iter().copied()))
        .collect();
    let mut union = Bitset::new(n);
    for p in &parts {
        union.union_with(p);
    }
    let mut pages = Bitset::new(n);
    for p in page_parts {
        for &v in p {
            pages.insert(v);
        }
    }
    let scan = Scan { col, c, parts, pages };
    let roots = union.to_vec();
    let tallies: Vec<Tally> = roots
        .par_iter()
        .map(|&r| {
            let mut cand = union.clone();
            cand.clear_through(r);
            cand.intersect_with(col.neighbours(c, r));
            let mut tally = Tally::default();
            scan.extend(&mut vec![r], &cand, &mut tally);
            tally
        })
        .collect();

    let mut total = Tally::default();
    for t in tallies {
        total.spines += t.spines;
        total.page_sum += t.page_sum;
        if let Some(b) = t.best {
            if total.best.as_ref().is_none_or(|cur| b.0 > cur.0) {
                total.best = Some(b);
            }
        }
    }
    let best = match total.best {
        None => SpineSearch::NoSpine,
        Some((_, spine)) => {
            let mut common = scan.pages.clone();
            for &v in &spine {
                common.intersect_with(col.neighbours(c, v));
            }
            SpineSearch::Book(BookCertificate {
                colour: c,
                spine,
                pages: common.to_vec(),
            })
        }
    };
    Ok(Transversal {
        best,
        spines: total.spines,
        page_sum: total.page_sum,
    })
}
