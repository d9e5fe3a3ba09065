//! DIMACS CNF export of "some two-colouring of `K_N` has no monochromatic
//! `B_n^(k)`".
//!
//! Variables:
//! * `x_e` per edge, lexicographic, true = blue;
//! * `m(S, c)` per `k`-set and colour, forced true when `S` is a colour-`c`
//!   clique (omitted for `k = 1`, where every vertex is a spine);
//! * `y(S, c, v)` per page candidate, forced true when `m(S, c)` holds and
//!   `v` is joined to `S` in colour `c`;
//! * sequential-counter registers bounding each family `y(S, c, ·)` by `n - 1`.
//!
//! Indicators are only implied, never required, so the formula is
//! satisfiable exactly when a book-free colouring exists.

use crate::combinatorics::{binomial, Combinations};
use crate::error::{Error, Result};
use crate::graph::{Colour, Colouring, BLUE, RED};

/// Default clause cap for [`sat_export`].
pub const DEFAULT_CLAUSE_CAP: u128 = 5_000_000;

fn seq_counter_size(m: u128, bound: u128) -> (u128, u128) {
    if bound == 0 {
        (0, m)
    } else if m <= bound {
        (0, 0)
    } else {
        ((m - 1) * bound, bound + (m - 2) * (2 * bound + 1) + 1)
    }
}

/// `(variables, clauses)` the export of `(k, n, N)` would produce.
pub fn sat_size(k: usize, n: usize, n_vertices: usize) -> (u128, u128) {
    let (k128, nv) = (k as u128, n_vertices as u128);
    let edges = binomial(n_vertices as u64, 2);
    let sets = binomial(n_vertices as u64, k as u64);
    let families = 2 * sets;
    let per_family = nv.saturating_sub(k128);
    let mono = if k >= 2 { families } else { 0 };
    let y = families * per_family;
    let (sv, sc) = seq_counter_size(per_family, (n as u128).saturating_sub(1));
    (edges + mono + y + families * sv, mono + y + families * sc)
}

struct Cnf {
    vars: u32,
    clauses: Vec<Vec<i32>>,
}

impl Cnf {
    fn fresh(&mut self) -> i32 {
        self.vars += 1;
        self.vars as i32
    }

    /// Sinz's sequential counter for `Σ lits <= bound`.
    fn at_most(&mut self, lits: &[i32], bound: usize) {
        let m = lits.len();
        if bound == 0 {
            for &x in lits {
                self.clauses.push(vec![-x]);
            }
            return;
        }
        if m <= bound {
            return;
        }
        let regs: Vec<Vec<i32>> = (0..m - 1)
            .map(|_| (0..bound).map(|_| self.fresh()).collect())
            .collect();
        self.clauses.push(vec![-lits[0], regs[0][0]]);
        for &r in &regs[0][1..] {
            self.clauses.push(vec![-r]);
        }
        for i in 1..m - 1 {
            self.clauses.push(vec![-lits[i], regs[i][0]]);
            self.clauses.push(vec![-regs[i - 1][0], regs[i][0]]);
            for j in 1..bound {
                self.clauses.push(vec![-lits[i], -regs[i - 1][j - 1], regs[i][j]]);
                self.clauses.push(vec![-regs[i - 1][j], regs[i][j]]);
            }
            self.clauses.push(vec![-lits[i], -regs[i - 1][bound - 1]]);
        }
        self.clauses.push(vec![-lits[m - 1], -regs[m - 2][bound - 1]]);
    }
}

/// Variable of edge `(u, v)`, `u < v`, for `N` vertices: 1-based rank in
/// lexicographic edge order.
pub fn edge_var(u: usize, v: usize, n_vertices: usize) -> i32 {
    debug_assert!(u < v && v < n_vertices);
    (u * (2 * n_vertices - u - 1) / 2 + (v - u)) as i32
}

pub fn sat_export(k: usize, n: usize, n_vertices: usize, cap: u128) -> Result<String> {
    if k == 0 || n == 0 {
        return Err(Error::Param("k and n must be >= 1".into()));
    }
    if n_vertices < 2 {
        return Err(Error::Param("N must be >= 2".into()));
    }
    let (est_vars, est_clauses) = sat_size(k, n, n_vertices);
    if est_clauses > cap {
        return Err(Error::Capacity {
            what: "CNF clauses",
            needed: est_clauses,
            cap,
        });
    }

    let nv = n_vertices;
    let edge_count = nv * (nv - 1) / 2;
    let mut cnf = Cnf {
        vars: edge_count as u32,
        clauses: Vec::new(),
    };
    // literal meaning "edge uv has colour c"
    let lit = |u: usize, v: usize, c: Colour| {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let x = edge_var(a, b, nv);
        if c == BLUE {
            x
        } else {
            -x
        }
    };

    for spine in Combinations::new(nv, k) {
        for c in [RED, BLUE] {
            let mono = if k >= 2 {
                let m = cnf.fresh();
                let mut clause: Vec<i32> = Combinations::new(k, 2)
                    .map(|p| -lit(spine[p[0]], spine[p[1]], c))
                    .collect();
                clause.push(m);
                cnf.clauses.push(clause);
                Some(m)
            } else {
                None
            };
            let mut pages = Vec::with_capacity(nv - k);
            for v in (0..nv).filter(|v| !spine.contains(v)) {
                let y = cnf.fresh();
                let mut clause: Vec<i32> = spine.iter().map(|&s| -lit(v, s, c)).collect();
                if let Some(m) = mono {
                    clause.push(-m);
                }
                clause.push(y);
                cnf.clauses.push(clause);
                pages.push(y);
            }
            cnf.at_most(&pages, n - 1);
        }
    }
    debug_assert_eq!(cnf.vars as u128, est_vars);
    debug_assert_eq!(cnf.clauses.len() as u128, est_clauses);

    let mut out = String::new();
    out.push_str(&format!("c bookram sat-export k={k} n={n} N={nv}\n"));
    out.push_str("c satisfiable iff some 2-colouring of K_N has no monochromatic B_n^(k)\n");
    out.push_str("c cardinality encoding: sequential-counter (Sinz 2005)\n");
    out.push_str("c edge variables: true = blue (colour 1), false = red (colour 0)\n");
    for u in 0..nv {
        for v in u + 1..nv {
            out.push_str(&format!("c edge {} {} -> var {}\n", u + 1, v + 1, edge_var(u, v, nv)));
        }
    }
    out.push_str(&format!("p cnf {} {}\n", cnf.vars, cnf.clauses.len()));
    for clause in &cnf.clauses {
        for l in clause {
            out.push_str(&l.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    Ok(out)
}

/// Reads the edge colouring out of a model given as the set of true
/// variables (or any literal list; negative literals are ignored).
pub fn decode_model(model: &[i32], n_vertices: usize) -> Colouring {
    let edge_count = n_vertices * n_vertices.saturating_sub(1) / 2;
    let mut blue = vec![false; edge_count + 1];
    for &l in model {
        if l > 0 && (l as usize) <= edge_count {
            blue[l as usize] = true;
        }
    }
    Colouring::from_fn(n_vertices, 2, |u, v| {
        if blue[edge_var(u, v, n_vertices) as usize] {
            BLUE
        } else {
            RED
        }
    })
    .expect("two colours")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_vars_are_lexicographic() {
        let mut expect = 1;
        for u in 0..6 {
            for v in u + 1..6 {
                assert_eq!(edge_var(u, v, 6), expect);
                expect += 1;
            }
        }
    }

    #[test]
    fn single_edge_is_contradictory() {
        let cnf = sat_export(1, 1, 2, DEFAULT_CLAUSE_CAP).unwrap();
        assert!(cnf.contains("c edge 1 2 -> var 1\n"));
        assert!(cnf.contains("p cnf 5 8\n"), "{cnf}");
    }

    #[test]
    fn size_estimate_matches_output() {
        for (k, n, nv) in [(1, 1, 2), (1, 3, 6), (2, 1, 5), (2, 2, 7), (3, 2, 8)] {
            let cnf = sat_export(k, n, nv, DEFAULT_CLAUSE_CAP).unwrap();
            let (v, c) = sat_size(k, n, nv);
            assert!(cnf.contains(&format!("p cnf {v} {c}\n")));
        }
    }

    #[test]
    fn cap_refuses_with_estimate() {
        match sat_export(3, 4, 30, 1000) {
            Err(Error::Capacity { needed, cap, .. }) => {
                assert_eq!(cap, 1000);
                assert_eq!(needed, sat_size(3, 4, 30).1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn decode_reads_blue_edges() {
        let col = decode_model(&[1, -2, 3], 3);
        assert_eq!(col.colour(0, 1), Some(BLUE));
        assert_eq!(col.colour(0, 2), Some(RED));
        assert_eq!(col.colour(1, 2), Some(BLUE));
    }
}
