use crate::bitset::Bitset;
use crate::error::{Error, Result};

pub type Colour = u8;

pub const RED: Colour = 0;
pub const BLUE: Colour = 1;

/// An edge colouring of the complete graph `K_n` with `q` colours.
///
/// Stored as one symmetric adjacency bitset per colour and vertex, so
/// `adj[c][v]` is the colour-`c` neighbourhood of `v`. Exactly one colour
/// holds each unordered pair; diagonals are clear.
#[derive(Clone, PartialEq, Eq)]
pub struct Colouring {
    n: usize,
    q: usize,
    adj: Vec<Vec<Bitset>>,
}

impl Colouring {
    /// Builds a colouring from a function on pairs `u < v`.
    pub fn from_fn<F>(n: usize, q: usize, mut colour: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Colour,
    {
        if q < 2 {
            return Err(Error::Param(format!("colour count must be >= 2, got {q}")));
        }
        let mut adj = vec![vec![Bitset::new(n); n]; q];
        for u in 0..n {
            for v in u + 1..n {
                let c = colour(u, v) as usize;
                if c >= q {
                    return Err(Error::Param(format!(
                        "edge ({u}, {v}) has colour {c} but only {q} colours"
                    )));
                }
                adj[c][u].insert(v);
                adj[c][v].insert(u);
            }
        }
        Ok(Colouring { n, q, adj })
    }

    /// Every edge in colour `c`.
    pub fn monochromatic(n: usize, q: usize, c: Colour) -> Result<Self> {
        Colouring::from_fn(n, q, |_, _| c)
    }

    /// The two-colouring of `K_5` whose red graph is the 5-cycle
    /// `0-1-2-3-4-0`; the blue graph is the complementary pentagram.
    pub fn pentagon() -> Self {
        Colouring::from_fn(5, 2, |u, v| if (v - u) % 5 == 1 || (v - u) % 5 == 4 { RED } else { BLUE })
            .expect("pentagon colouring is valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    /// Colour of the edge `uv`, `None` on the diagonal.
    #[inline]
    pub fn colour(&self, u: usize, v: usize) -> Option<Colour> {
        if u == v {
            return None;
        }
        (0..self.q).find(|&c| self.adj[c][u].contains(v)).map(|c| c as Colour)
    }

    #[inline]
    pub fn neighbours(&self, c: Colour, v: usize) -> &Bitset {
        &self.adj[c as usize][v]
    }

    pub fn degree(&self, c: Colour, v: usize) -> usize {
        self.adj[c as usize][v].count()
    }

    pub fn edge_count(&self, c: Colour) -> usize {
        self.adj[c as usize].iter().map(Bitset::count).sum::<usize>() / 2
    }

    /// Restriction to the vertices of `keep`, relabelled in ascending order.
    pub fn induced(&self, keep: &[usize]) -> Colouring {
        Colouring::from_fn(keep.len(), self.q, |i, j| {
            self.colour(keep[i], keep[j]).expect("distinct vertices")
        })
        .expect("restriction of a valid colouring")
    }

    /// Swaps colours `a` and `b`.
    pub fn swap_colours(&self, a: Colour, b: Colour) -> Colouring {
        let mut adj = self.adj.clone();
        adj.swap(a as usize, b as usize);
        Colouring {
            n: self.n,
            q: self.q,
            adj,
        }
    }

    /// Checks the partition and symmetry invariants. Only used by tests and
    /// debug assertions; constructors cannot produce an invalid value.
    pub fn check_invariants(&self) -> bool {
        for u in 0..self.n {
            for c in 0..self.q {
                if self.adj[c][u].contains(u) {
                    return false;
                }
            }
            for v in 0..self.n {
                if u == v {
                    continue;
                }
                let holders = (0..self.q).filter(|&c| self.adj[c][u].contains(v)).count();
                if holders != 1 {
                    return false;
                }
                for c in 0..self.q {
                    if self.adj[c][u].contains(v) != self.adj[c][v].contains(u) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl std::fmt::Debug for Colouring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Colouring(n={}, q={})", self.n, self.q)
    }
}
