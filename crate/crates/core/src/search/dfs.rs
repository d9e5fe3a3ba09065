//! Branch-and-prune search for book-free two-colourings of `K_N`.
//!
//! Edges are coloured in lexicographic order. After each assignment the
//! search looks for a monochromatic `B_n^(k)` through the new edge among
//! decided edges and backtracks if one exists, so every complete leaf is
//! book-free. Vertex 0's edges are restricted to a non-increasing colour
//! pattern (blue before red), which is complete because vertices `1..N`
//! can be permuted freely.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::books::has_mono_book;
use crate::error::{Error, Result};
use crate::graph::{Colour, Colouring, BLUE, RED};

/// Largest `N` the `u64` adjacency masks support.
pub const MAX_SEARCH_N: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Budget {
    pub nodes: Option<u64>,
    pub seconds: Option<f64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Force vertex 0's colour pattern to be non-increasing.
    pub symmetry: bool,
    /// Number of leading edges enumerated up front; each resulting prefix is
    /// searched as an independent work item. 0 searches sequentially.
    pub split_depth: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            symmetry: true,
            split_depth: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum WitnessOutcome {
    /// A verified book-free colouring.
    Found(Colouring),
    /// The search space was exhausted: no book-free colouring exists.
    NoneExists,
    /// The budget ran out first. Proves nothing.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessSearch {
    pub outcome: WitnessOutcome,
    pub nodes: u64,
    pub elapsed: Duration,
}

struct Shared {
    nodes: AtomicU64,
    node_cap: u64,
    deadline: Option<Instant>,
    stop: AtomicBool,
}

impl Shared {
    /// Counts a node; false once the budget is spent.
    #[inline]
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.node_cap {
            self.stop.store(true, Ordering::Relaxed);
        }
        if n.is_multiple_of(4096) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.stop.load(Ordering::Relaxed)
    }
}

#[derive(Clone)]
struct State {
    k: usize,
    pages: usize,
    adj: [Vec<u64>; 2],
}

impl State {
    fn new(n_vertices: usize, k: usize, pages: usize) -> Self {
        State {
            k,
            pages,
            adj: [vec![0; n_vertices], vec![0; n_vertices]],
        }
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize, c: Colour) {
        let a = &mut self.adj[c as usize];
        a[u] |= 1 << v;
        a[v] |= 1 << u;
    }

    #[inline]
    fn unset(&mut self, u: usize, v: usize, c: Colour) {
        let a = &mut self.adj[c as usize];
        a[u] &= !(1 << v);
        a[v] &= !(1 << u);
    }

    /// Whether a colour-`c` book through the freshly coloured edge `uv`
    /// exists. Such a book has `u` or `v` in its spine and the other in the
    /// spine or among the pages, so the rest of the spine lies in the common
    /// neighbourhood of `u` and `v`.
    fn book_through(&self, u: usize, v: usize, c: Colour) -> bool {
        let adj = &self.adj[c as usize];
        let both = adj[u] & adj[v];
        let (k, n) = (self.k, self.pages);
        if k >= 2 && extend(adj, k - 2, both, both, n) {
            return true;
        }
        extend(adj, k - 1, both, adj[u], n) || extend(adj, k - 1, both, adj[v], n)
    }
}

/// Can `need` more vertices from `cand` complete a clique whose common
/// neighbourhood (currently `common`) keeps at least `n` pages?
fn extend(adj: &[u64], need: usize, cand: u64, common: u64, n: usize) -> bool {
    if need == 0 {
        return common.count_ones() as usize >= n;
    }
    if (cand.count_ones() as usize) < need {
        return false;
    }
    let mut rest = cand;
    while rest != 0 {
        let w = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let next_common = common & adj[w];
        if (next_common.count_ones() as usize) < n + need - 1 {
            continue;
        }
        if extend(adj, need - 1, rest & adj[w], next_common, n) {
            return true;
        }
    }
    false
}

struct Problem {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
    symmetry: bool,
}

impl Problem {
    /// Colours allowed for edge `idx` given the colours already chosen.
    fn choices(&self, idx: usize, colours: &[Colour]) -> &'static [Colour] {
        let (u, v) = self.edges[idx];
        if self.symmetry && u == 0 && v >= 2 && colours[idx - 1] == RED {
            &[RED]
        } else {
            &[RED, BLUE]
        }
    }
}

enum Dfs {
    Found,
    Exhausted,
    Stopped,
}

fn dfs(
    prob: &Problem,
    state: &mut State,
    colours: &mut Vec<Colour>,
    shared: &Shared,
) -> Dfs {
    let idx = colours.len();
    if idx == prob.edges.len() {
        return Dfs::Found;
    }
    let (u, v) = prob.edges[idx];
    for &c in prob.choices(idx, colours) {
        if !shared.tick() {
            return Dfs::Stopped;
        }
        state.set(u, v, c);
        if !state.book_through(u, v, c) {
            colours.push(c);
            match dfs(prob, state, colours, shared) {
                Dfs::Exhausted => {}
                other => return other,
            }
            colours.pop();
        }
        state.unset(u, v, c);
    }
    Dfs::Exhausted
}

/// All book-free colourings of the first `depth` edges.
fn prefixes(prob: &Problem, state: &mut State, colours: &mut Vec<Colour>, depth: usize, out: &mut Vec<Vec<Colour>>) {
    if colours.len() == depth {
        out.push(colours.clone());
        return;
    }
    let idx = colours.len();
    let (u, v) = prob.edges[idx];
    for &c in prob.choices(idx, colours) {
        state.set(u, v, c);
        if !state.book_through(u, v, c) {
            colours.push(c);
            prefixes(prob, state, colours, depth, out);
            colours.pop();
        }
        state.unset(u, v, c);
    }
}

fn to_colouring(n_vertices: usize, edges: &[(usize, usize)], colours: &[Colour]) -> Colouring {
    let mut table = vec![vec![RED; n_vertices]; n_vertices];
    for (&(u, v), &c) in edges.iter().zip(colours) {
        table[u][v] = c;
    }
    Colouring::from_fn(n_vertices, 2, |u, v| table[u][v]).expect("two colours")
}

/// Searches for a two-colouring of `K_N` without a monochromatic `B_n^(k)`.
///
/// A returned witness has been re-checked with [`has_mono_book`].
pub fn find_witness(
    k: usize,
    n: usize,
    n_vertices: usize,
    budget: Budget,
    opts: SearchOptions,
) -> Result<WitnessSearch> {
    if k == 0 || n == 0 {
        return Err(Error::Param("k and n must be >= 1".into()));
    }
    if n_vertices < k + 1 {
        return Err(Error::Param(format!("N = {n_vertices} must be >= k + 1 = {}", k + 1)));
    }
    if n_vertices > MAX_SEARCH_N {
        return Err(Error::Param(format!("N = {n_vertices} exceeds {MAX_SEARCH_N}")));
    }
    let start = Instant::now();
    let shared = Shared {
        nodes: AtomicU64::new(0),
        node_cap: budget.nodes.unwrap_or(u64::MAX),
        deadline: budget.seconds.map(|s| start + Duration::from_secs_f64(s.max(0.0))),
        stop: AtomicBool::new(false),
    };
    let edges: Vec<(usize, usize)> = (0..n_vertices)
        .flat_map(|u| (u + 1..n_vertices).map(move |v| (u, v)))
        .collect();
    let prob = Problem {
        n_vertices,
        edges,
        symmetry: opts.symmetry,
    };

    let depth = opts.split_depth.min(prob.edges.len());
    let mut roots = Vec::new();
    prefixes(&prob, &mut State::new(n_vertices, k, n), &mut Vec::new(), depth, &mut roots);

    let found = roots.par_iter().find_map_first(|prefix| {
        let mut state = State::new(n_vertices, k, n);
        for (&(u, v), &c) in prob.edges.iter().zip(prefix) {
            state.set(u, v, c);
        }
        let mut colours = prefix.clone();
        match dfs(&prob, &mut state, &mut colours, &shared) {
            Dfs::Found => Some(colours),
            _ => None,
        }
    });

    let outcome = match found {
        Some(colours) => {
            let col = to_colouring(prob.n_vertices, &prob.edges, &colours);
            assert!(
                !has_mono_book(&col, k, n),
                "search returned a colouring containing B_{n}^({k})"
            );
            WitnessOutcome::Found(col)
        }
        None if shared.stop.load(Ordering::Relaxed) => WitnessOutcome::Inconclusive,
        None => WitnessOutcome::NoneExists,
    };
    Ok(WitnessSearch {
        outcome,
        nodes: shared.nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Exact,
    Bounded,
}

/// Bracket on `r(B_n^(k))` established by search.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactResult {
    pub k: usize,
    pub n: usize,
    pub status: Status,
    /// Largest `N` with a verified book-free witness.
    pub lower: usize,
    /// Smallest `N` shown to force a book by exhausted search.
    pub upper: Option<usize>,
    pub witness: Colouring,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl ExactResult {
    /// The Ramsey number, when known exactly.
    pub fn value(&self) -> Option<usize> {
        match self.status {
            Status::Exact => self.upper,
            Status::Bounded => None,
        }
    }

    pub fn to_tsv(&self) -> String {
        let status = match self.status {
            Status::Exact => "exact",
            Status::Bounded => "bounded",
        };
        let upper = self.upper.map_or_else(|| "-".to_string(), |u| u.to_string());
        format!(
            "k\tn\tstatus\tlower\tupper\tnodes\n{}\t{}\t{}\t{}\t{}\t{}\n",
            self.k, self.n, status, self.lower, upper, self.nodes
        )
    }
}

/// Walks `N` upward from the trivial range until the search proves that
/// every colouring of `K_N` contains `B_n^(k)`, or the budget runs out.
pub fn ramsey_book(k: usize, n: usize, budget: Budget, opts: SearchOptions) -> Result<ExactResult> {
    if k == 0 || n == 0 {
        return Err(Error::Param("k and n must be >= 1".into()));
    }
    let start = Instant::now();
    // fewer than k + n vertices cannot hold the book at all
    let mut lower = k + n - 1;
    let mut witness = Colouring::monochromatic(lower, 2, RED)?;
    debug_assert!(!has_mono_book(&witness, k, n));
    let mut nodes = 0u64;

    for size in k + n..=MAX_SEARCH_N {
        let remaining = Budget {
            nodes: budget.nodes.map(|b| b.saturating_sub(nodes)),
            seconds: budget
                .seconds
                .map(|s| s - start.elapsed().as_secs_f64()),
        };
        if remaining.nodes == Some(0) || remaining.seconds.is_some_and(|s| s <= 0.0) {
            break;
        }
        let step = find_witness(k, n, size, remaining, opts)?;
        nodes += step.nodes;
        match step.outcome {
            WitnessOutcome::Found(col) => {
                lower = size;
                witness = col;
            }
            WitnessOutcome::NoneExists => {
                return Ok(ExactResult {
                    k,
                    n,
                    status: Status::Exact,
                    lower,
                    upper: Some(size),
                    witness,
                    nodes,
                    elapsed: start.elapsed(),
                });
            }
            WitnessOutcome::Inconclusive => break,
        }
    }
    Ok(ExactResult {
        k,
        n,
        status: Status::Bounded,
        lower,
        upper: None,
        witness,
        nodes,
        elapsed: start.elapsed(),
    })
}
