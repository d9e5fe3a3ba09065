//! Independent oracles for the integration tests. Nothing here touches the
//! library's bitsets or enumeration code; colourings are read into plain
//! matrices through `Colouring::colour`.

#![allow(dead_code)]

use bookram::graph::Colouring;

pub type Matrix = Vec<Vec<u8>>;

/// Diagonal entries are `u8::MAX`.
pub fn matrix(col: &Colouring) -> Matrix {
    (0..col.n())
        .map(|u| (0..col.n()).map(|v| col.colour(u, v).unwrap_or(u8::MAX)).collect())
        .collect()
}

pub fn is_clique(m: &Matrix, c: u8, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &u)| set[i + 1..].iter().all(|&v| m[u][v] == c))
}

pub fn pages(m: &Matrix, c: u8, spine: &[usize]) -> Vec<usize> {
    (0..m.len())
        .filter(|v| !spine.contains(v) && spine.iter().all(|&s| m[*v][s] == c))
        .collect()
}

/// All `k`-subsets of `0..n` in lexicographic order, by bitmask (n <= 30).
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

pub fn clique_count(m: &Matrix, c: u8, k: usize) -> u64 {
    subsets(m.len(), k).iter().filter(|s| is_clique(m, c, s)).count() as u64
}

/// Largest page count over all monochromatic `k`-spines of every colour.
pub fn max_pages(m: &Matrix, q: usize, k: usize) -> Option<usize> {
    let mut best = None;
    for s in subsets(m.len(), k) {
        for c in 0..q as u8 {
            if is_clique(m, c, &s) {
                let p = pages(m, c, &s).len();
                best = Some(best.map_or(p, |b: usize| b.max(p)));
            }
        }
    }
    best
}

/// Plain DPLL with unit propagation over DIMACS text. Returns a model as a
/// list of literals, or `None` when unsatisfiable.
pub fn solve_dimacs(text: &str) -> Option<Vec<i32>> {
    let mut vars = 0usize;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf") {
            vars = rest.split_whitespace().next().unwrap().parse().unwrap();
            continue;
        }
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().unwrap();
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); vars + 1];
    for (i, cl) in clauses.iter().enumerate() {
        for &l in cl {
            occurs[l.unsigned_abs() as usize].push(i);
        }
    }
    let mut solver = Dpll {
        clauses,
        occurs,
        value: vec![0; vars + 1],
        trail: Vec::new(),
    };
    if solver.search() {
        Some((1..=vars as i32).map(|v| if solver.value[v as usize] > 0 { v } else { -v }).collect())
    } else {
        None
    }
}

struct Dpll {
    clauses: Vec<Vec<i32>>,
    occurs: Vec<Vec<usize>>,
    /// +1 true, -1 false, 0 unset
    value: Vec<i8>,
    trail: Vec<usize>,
}

impl Dpll {
    fn lit_value(&self, l: i32) -> i8 {
        let v = self.value[l.unsigned_abs() as usize];
        if l > 0 {
            v
        } else {
            -v
        }
    }

    fn assign(&mut self, l: i32) {
        self.value[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 };
        self.trail.push(l.unsigned_abs() as usize);
    }

    /// Propagates from trail position `from`; false on conflict.
    fn propagate(&mut self, mut from: usize) -> bool {
        // clauses with no assignment yet are checked once up front
        if from == 0 {
            for i in 0..self.clauses.len() {
                if !self.check(i) {
                    return false;
                }
            }
        }
        while from < self.trail.len() {
            let var = self.trail[from];
            from += 1;
            for idx in 0..self.occurs[var].len() {
                let ci = self.occurs[var][idx];
                if !self.check(ci) {
                    return false;
                }
            }
        }
        true
    }

    fn check(&mut self, ci: usize) -> bool {
        let mut unset = None;
        let mut unset_count = 0;
        for &l in &self.clauses[ci] {
            match self.lit_value(l) {
                1 => return true,
                0 => {
                    unset_count += 1;
                    unset = Some(l);
                }
                _ => {}
            }
        }
        match unset_count {
            0 => false,
            1 => {
                self.assign(unset.unwrap());
                true
            }
            _ => true,
        }
    }

    fn undo(&mut self, to: usize) {
        while self.trail.len() > to {
            let v = self.trail.pop().unwrap();
            self.value[v] = 0;
        }
    }

    fn search(&mut self) -> bool {
        if !self.propagate(0) {
            return false;
        }
        self.branch()
    }

    fn branch(&mut self) -> bool {
        let Some(var) = (1..self.value.len()).find(|&v| self.value[v] == 0) else {
            return true;
        };
        for lit in [-(var as i32), var as i32] {
            let mark = self.trail.len();
            self.assign(lit);
            if self.propagate(mark) && self.branch() {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}
