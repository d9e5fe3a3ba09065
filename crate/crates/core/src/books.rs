//! Maximum monochromatic books, certificate checking and page profiles.
//!
//! A spine is a monochromatic `K_k`; its pages are the vertices joined to
//! every spine vertex in the spine's colour. All searches scan colours in
//! ascending order and spines lexicographically, so the reported witness is
//! the first one attaining the maximum.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{
    for_each_rooted_clique, try_for_each_rooted_clique, BookCertificate, Colour, Colouring,
};

/// Outcome of a maximum-book search. "No spine at all" is kept apart from a
/// spine with zero pages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpineSearch {
    Book(BookCertificate),
    NoSpine,
}

impl SpineSearch {
    pub fn pages(&self) -> Option<usize> {
        match self {
            SpineSearch::Book(c) => Some(c.page_count()),
            SpineSearch::NoSpine => None,
        }
    }

    pub fn certificate(&self) -> Option<&BookCertificate> {
        match self {
            SpineSearch::Book(c) => Some(c),
            SpineSearch::NoSpine => None,
        }
    }

    pub fn into_certificate(self) -> Option<BookCertificate> {
        match self {
            SpineSearch::Book(c) => Some(c),
            SpineSearch::NoSpine => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Best {
    pages: usize,
    colour: Colour,
    spine: Vec<usize>,
}

impl Best {
    /// More pages wins; ties go to the smaller colour, then the
    /// lexicographically smaller spine.
    fn better(self, other: Self) -> Self {
        use std::cmp::Ordering::*;
        match self.pages.cmp(&other.pages) {
            Greater => self,
            Less => other,
            Equal => {
                if (other.colour, &other.spine) < (self.colour, &self.spine) {
                    other
                } else {
                    self
                }
            }
        }
    }
}

fn best_in_colour(col: &Colouring, c: Colour, k: usize) -> Option<Best> {
    (0..col.n())
        .into_par_iter()
        .filter_map(|root| {
            let mut best: Option<Best> = None;
            for_each_rooted_clique(col, c, k, root, &mut |spine, pages| {
                let p = pages.count();
                // lexicographic visiting order: strict > keeps the first
                if best.as_ref().is_none_or(|b| p > b.pages) {
                    best = Some(Best {
                        pages: p,
                        colour: c,
                        spine: spine.to_vec(),
                    });
                }
            });
            best
        })
        .reduce_with(Best::better)
}

/// The monochromatic `K_k` with the most pages over all colours.
pub fn max_book(col: &Colouring, k: usize) -> Result<SpineSearch> {
    if k == 0 || k >= col.n() {
        return Err(Error::Param(format!(
            "spine size {k} must satisfy 1 <= k < N = {}",
            col.n()
        )));
    }
    let best = (0..col.q() as Colour)
        .filter_map(|c| best_in_colour(col, c, k))
        .reduce(Best::better);
    Ok(match best {
        None => SpineSearch::NoSpine,
        Some(b) => {
            let pages = crate::graph::common_pages(col, b.colour, &b.spine).to_vec();
            debug_assert_eq!(pages.len(), b.pages);
            SpineSearch::Book(BookCertificate {
                colour: b.colour,
                spine: b.spine,
                pages,
            })
        }
    })
}

/// First certificate (colour, then lexicographic spine) with at least `n`
/// pages, if any.
pub fn find_mono_book(col: &Colouring, k: usize, n: usize) -> Option<BookCertificate> {
    if k == 0 || k + n > col.n() {
        return None;
    }
    for c in 0..col.q() as Colour {
        for root in 0..col.n() {
            let mut found = None;
            let flow = try_for_each_rooted_clique(col, c, k, root, n, &mut |spine, pages| {
                found = Some(BookCertificate {
                    colour: c,
                    spine: spine.to_vec(),
                    pages: pages.to_vec(),
                });
                ControlFlow::Break(())
            });
            if flow.is_break() {
                return found;
            }
        }
    }
    None
}

/// Whether some monochromatic `K_k` has at least `n` pages.
pub fn has_mono_book(col: &Colouring, k: usize, n: usize) -> bool {
    find_mono_book(col, k, n).is_some()
}

/// Why a certificate was rejected. Vertices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    Range { vertex: usize },
    NoSuchColour { colour: Colour },
    EmptySpine,
    RepeatedVertex { vertex: usize },
    SpineNotClique { u: usize, v: usize, colour: Option<Colour> },
    PageInSpine { vertex: usize },
    PageNotJoined { page: usize, spine_vertex: usize, colour: Option<Colour> },
    TooFewPages { have: usize, need: usize },
}

impl Rejection {
    pub fn reason(&self) -> &'static str {
        match self {
            Rejection::Range { .. } => "range",
            Rejection::NoSuchColour { .. } => "colour",
            Rejection::EmptySpine => "empty-spine",
            Rejection::RepeatedVertex { .. } => "repeated-vertex",
            Rejection::SpineNotClique { .. } => "spine-not-clique",
            Rejection::PageInSpine { .. } => "page-in-spine",
            Rejection::PageNotJoined { .. } => "page-not-joined",
            Rejection::TooFewPages { .. } => "too-few-pages",
        }
    }
}

fn show(c: &Option<Colour>) -> String {
    c.map_or_else(|| "-".into(), |c| c.to_string())
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // 1-based labels, as in the files
        match self {
            Rejection::Range { vertex } => write!(f, "range: vertex {} out of range", vertex + 1),
            Rejection::NoSuchColour { colour } => write!(f, "colour: no colour {colour}"),
            Rejection::EmptySpine => write!(f, "empty-spine: spine has no vertices"),
            Rejection::RepeatedVertex { vertex } => {
                write!(f, "repeated-vertex: vertex {} listed twice", vertex + 1)
            }
            Rejection::SpineNotClique { u, v, colour } => write!(
                f,
                "spine-not-clique: spine pair ({}, {}) has colour {}",
                u + 1,
                v + 1,
                show(colour)
            ),
            Rejection::PageInSpine { vertex } => {
                write!(f, "page-in-spine: vertex {} is both page and spine", vertex + 1)
            }
            Rejection::PageNotJoined { page, spine_vertex, colour } => write!(
                f,
                "page-not-joined: (page {}, spine vertex {}) has colour {}",
                page + 1,
                spine_vertex + 1,
                show(colour)
            ),
            Rejection::TooFewPages { have, need } => {
                write!(f, "too-few-pages: {have} pages, need {need}")
            }
        }
    }
}

/// Checks every condition of a book certificate, reporting the first failure
/// in this order: ranges, colour, spine shape, spine clique, page/spine
/// overlap, page adjacency, page count.
pub fn verify_certificate(
    col: &Colouring,
    cert: &BookCertificate,
    n: usize,
) -> std::result::Result<(), Rejection> {
    let all = cert.spine.iter().chain(&cert.pages);
    if let Some(&v) = all.clone().find(|&&v| v >= col.n()) {
        return Err(Rejection::Range { vertex: v });
    }
    if cert.colour as usize >= col.q() {
        return Err(Rejection::NoSuchColour { colour: cert.colour });
    }
    if cert.spine.is_empty() {
        return Err(Rejection::EmptySpine);
    }
    let c = cert.colour;
    for list in [&cert.spine, &cert.pages] {
        let mut seen = crate::bitset::Bitset::new(col.n());
        for &v in list.iter() {
            if seen.contains(v) {
                return Err(Rejection::RepeatedVertex { vertex: v });
            }
            seen.insert(v);
        }
    }
    for (i, &u) in cert.spine.iter().enumerate() {
        for &v in &cert.spine[i + 1..] {
            let got = col.colour(u, v);
            if got != Some(c) {
                return Err(Rejection::SpineNotClique { u, v, colour: got });
            }
        }
    }
    if let Some(&p) = cert.pages.iter().find(|p| cert.spine.contains(p)) {
        return Err(Rejection::PageInSpine { vertex: p });
    }
    for &p in &cert.pages {
        for &s in &cert.spine {
            let got = col.colour(p, s);
            if got != Some(c) {
                return Err(Rejection::PageNotJoined {
                    page: p,
                    spine_vertex: s,
                    colour: got,
                });
            }
        }
    }
    if cert.pages.len() < n {
        return Err(Rejection::TooFewPages {
            have: cert.pages.len(),
            need: n,
        });
    }
    Ok(())
}

/// Histogram, per colour, of page counts over all monochromatic `K_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BookProfile {
    pub k: usize,
    /// `histograms[c][p]` = number of colour-`c` spines with exactly `p` pages.
    pub histograms: Vec<BTreeMap<usize, u64>>,
    pub best: SpineSearch,
}

impl BookProfile {
    pub fn spine_count(&self, c: Colour) -> u64 {
        self.histograms[c as usize].values().sum()
    }

    pub fn page_sum(&self, c: Colour) -> u64 {
        self.histograms[c as usize]
            .iter()
            .map(|(&p, &cnt)| p as u64 * cnt)
            .sum()
    }

    /// `# colour c` section headers, each followed by `pages<TAB>count` rows.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (c, h) in self.histograms.iter().enumerate() {
            out.push_str(&format!("# colour {c}\npages\tcount\n"));
            for (p, cnt) in h {
                out.push_str(&format!("{p}\t{cnt}\n"));
            }
        }
        out
    }
}

pub fn local_profile(col: &Colouring, k: usize) -> Result<BookProfile> {
    if k == 0 || k >= col.n() {
        return Err(Error::Param(format!(
            "spine size {k} must satisfy 1 <= k < N = {}",
            col.n()
        )));
    }
    let mut histograms = Vec::with_capacity(col.q());
    let mut best: Option<Best> = None;
    for c in 0..col.q() as Colour {
        let mut h = BTreeMap::new();
        for root in 0..col.n() {
            for_each_rooted_clique(col, c, k, root, &mut |spine, pages| {
                let p = pages.count();
                *h.entry(p).or_insert(0) += 1;
                if best.as_ref().is_none_or(|b| p > b.pages) {
                    best = Some(Best {
                        pages: p,
                        colour: c,
                        spine: spine.to_vec(),
                    });
                }
            });
        }
        histograms.push(h);
    }
    let best = match best {
        None => SpineSearch::NoSpine,
        Some(b) => SpineSearch::Book(BookCertificate {
            pages: crate::graph::common_pages(col, b.colour, &b.spine).to_vec(),
            colour: b.colour,
            spine: b.spine,
        }),
    };
    Ok(BookProfile { k, histograms, best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{BLUE, RED};

    fn cert(colour: Colour, spine: &[usize], pages: &[usize]) -> BookCertificate {
        BookCertificate {
            colour,
            spine: spine.to_vec(),
            pages: pages.to_vec(),
        }
    }

    #[test]
    fn all_red_k7_spine_pair() {
        let col = Colouring::monochromatic(7, 2, RED).unwrap();
        let got = max_book(&col, 2).unwrap();
        assert_eq!(got, SpineSearch::Book(cert(RED, &[0, 1], &[2, 3, 4, 5, 6])));
    }

    #[test]
    fn pentagon_has_zero_page_edges() {
        let p = Colouring::pentagon();
        let got = max_book(&p, 2).unwrap();
        assert_eq!(got, SpineSearch::Book(cert(RED, &[0, 1], &[])));
        assert!(!has_mono_book(&p, 2, 1));
    }

    #[test]
    fn no_spine_is_distinct() {
        let p = Colouring::pentagon();
        assert_eq!(max_book(&p, 3).unwrap(), SpineSearch::NoSpine);
        assert!(max_book(&p, 5).is_err());
        assert!(max_book(&p, 0).is_err());
    }

    #[test]
    fn blue_wins_only_on_strictly_more_pages() {
        // red star at 0 plus blue elsewhere: blue K_2 spines have more pages
        let col = Colouring::from_fn(6, 2, |u, _| if u == 0 { RED } else { BLUE }).unwrap();
        let got = max_book(&col, 2).unwrap().into_certificate().unwrap();
        assert_eq!(got, cert(BLUE, &[1, 2], &[3, 4, 5]));
    }

    #[test]
    fn has_book_all_red() {
        let col = Colouring::monochromatic(6, 2, RED).unwrap();
        assert!(has_mono_book(&col, 2, 4));
        assert!(!has_mono_book(&col, 2, 5));
    }

    #[test]
    fn verify_accepts_and_names_bad_pairs() {
        let col = Colouring::monochromatic(5, 2, RED).unwrap();
        let good = cert(RED, &[0, 1], &[2, 3, 4]);
        assert_eq!(verify_certificate(&col, &good, 3), Ok(()));

        let p = Colouring::pentagon();
        // pentagon: 0-1 red, 2 is red to 1 but blue to 0
        let bad = cert(RED, &[0, 1], &[2]);
        assert_eq!(
            verify_certificate(&p, &bad, 1),
            Err(Rejection::PageNotJoined {
                page: 2,
                spine_vertex: 0,
                colour: Some(BLUE)
            })
        );
        assert_eq!(
            verify_certificate(&col, &cert(RED, &[0, 9], &[]), 0),
            Err(Rejection::Range { vertex: 9 })
        );
        assert_eq!(
            verify_certificate(&col, &good, 4),
            Err(Rejection::TooFewPages { have: 3, need: 4 })
        );
        assert_eq!(
            verify_certificate(&col, &cert(RED, &[0, 1], &[1, 2]), 0),
            Err(Rejection::PageInSpine { vertex: 1 })
        );
        assert_eq!(
            verify_certificate(&p, &cert(RED, &[0, 2], &[]), 0),
            Err(Rejection::SpineNotClique {
                u: 0,
                v: 2,
                colour: Some(BLUE)
            })
        );
    }

    #[test]
    fn profile_examples() {
        let col = Colouring::monochromatic(5, 2, RED).unwrap();
        let prof = local_profile(&col, 2).unwrap();
        assert_eq!(prof.histograms[0], BTreeMap::from([(3, 10)]));
        assert!(prof.histograms[1].is_empty());

        let prof = local_profile(&Colouring::pentagon(), 1).unwrap();
        for c in 0..2 {
            assert_eq!(prof.histograms[c], BTreeMap::from([(2, 5)]));
        }
        assert_eq!(
            prof.to_tsv(),
            "# colour 0\npages\tcount\n2\t5\n# colour 1\npages\tcount\n2\t5\n"
        );
    }
}
