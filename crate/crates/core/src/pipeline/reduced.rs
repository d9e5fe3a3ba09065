//! Reduced graph on the partition classes.
//!
//! Vertex `i` is coloured by the majority colour inside `W_i`; the colour
//! held by most vertices (red on ties) is the primary colour `P` and the
//! other is `Q`. A gated edge is `P` when its `P`-density is at least
//! `1 - delta`, otherwise `Q`. With an all-red majority this is the usual
//! red/blue rule.

use super::density::{distinct_pair_density, eps_regular_check, pair_density, RegularityMode};
use super::partition::EquitablePartition;
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::graph::{Colour, Colouring, BLUE, RED};

pub const GATE_TRIALS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityKind {
    /// `d(V_i, V_j)`
    VV,
    /// `d(W_i, V_j)`
    WV,
    /// `d(W_i, W_j)`
    WW,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedGraph {
    pub partition: EquitablePartition,
    pub eta: f64,
    pub delta: f64,
    /// Red density inside each `W_i`, over distinct ordered pairs.
    pub inner_red: Vec<f64>,
    pub vertex_colours: Vec<Colour>,
    pub primary: Colour,
    /// `densities[c][kind][i][j]`, ordered-pair convention, both colours.
    densities: [[Vec<Vec<f64>>; 3]; 2],
    /// `regular[i][j]`: the `i`-side conditions for the pair `(i, j)` passed.
    pub regular: Vec<Vec<bool>>,
    pub edges: Vec<Vec<Option<Colour>>>,
    pub deleted: Vec<bool>,
}

pub fn other(c: Colour) -> Colour {
    1 - c
}

/// Edge colour given its primary-colour density.
pub fn edge_colour_rule(primary: Colour, primary_density: f64, delta: f64) -> Colour {
    if primary_density >= 1.0 - delta {
        primary
    } else {
        other(primary)
    }
}

fn kind_index(kind: DensityKind) -> usize {
    match kind {
        DensityKind::VV => 0,
        DensityKind::WV => 1,
        DensityKind::WW => 2,
    }
}

impl ReducedGraph {
    pub fn m(&self) -> usize {
        self.partition.m()
    }

    pub fn density(&self, c: Colour, kind: DensityKind, i: usize, j: usize) -> f64 {
        self.densities[c as usize][kind_index(kind)][i][j]
    }

    pub fn survivors(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.m()).filter(|&i| !self.deleted[i])
    }

    /// Uncoloured edges from `i` to surviving vertices.
    pub fn uncoloured_degree(&self, i: usize) -> usize {
        self.survivors()
            .filter(|&j| j != i && self.edges[i][j].is_none())
            .count()
    }

    pub fn degree(&self, i: usize, c: Colour) -> usize {
        self.survivors().filter(|&j| self.edges[i][j] == Some(c)).count()
    }

    pub fn deletion_threshold(&self) -> f64 {
        self.eta.sqrt() * self.m() as f64
    }

    /// Same stored densities and gates, edges recoloured with a new delta.
    pub fn recolour(&self, delta: f64) -> ReducedGraph {
        let mut out = self.clone();
        out.delta = delta;
        for i in 0..self.m() {
            for j in 0..self.m() {
                if self.edges[i][j].is_some() {
                    let d = self.density(self.primary, DensityKind::VV, i, j);
                    out.edges[i][j] = Some(edge_colour_rule(self.primary, d, delta));
                }
            }
        }
        out
    }

    /// Checks the stored-state invariants, naming the first failure.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let p = self.primary;
        for i in 0..self.m() {
            for j in 0..self.m() {
                if self.edges[i][j] != self.edges[j][i] {
                    return Err(format!("edge {i}-{j} not symmetric"));
                }
                let dp = self.density(p, DensityKind::VV, i, j);
                match self.edges[i][j] {
                    Some(c) if c == p && dp < 1.0 - self.delta => {
                        return Err(format!("primary edge {i}-{j} has density {dp}"))
                    }
                    Some(c) if c != p && 1.0 - dp < self.delta => {
                        return Err(format!("other-colour edge {i}-{j} has density {}", 1.0 - dp))
                    }
                    Some(_) if i == j => return Err(format!("loop at {i}")),
                    _ => {}
                }
            }
        }
        let cap = self.deletion_threshold();
        if let Some(i) = self.survivors().find(|&i| self.uncoloured_degree(i) as f64 > cap) {
            return Err(format!("survivor {i} has {} uncoloured edges", self.uncoloured_degree(i)));
        }
        Ok(())
    }
}

fn gate_seed(seed: u64, i: usize, j: usize, which: u64) -> u64 {
    let tag = ((i as u64) << 40) ^ ((j as u64) << 16) ^ which;
    seed ^ tag.wrapping_add(1).wrapping_mul(0xD6E8_FEB8_6659_FD93)
}

pub fn build_reduced(
    col: &Colouring,
    partition: &EquitablePartition,
    eta: f64,
    delta: f64,
    seed: u64,
) -> Result<ReducedGraph> {
    if col.q() != 2 {
        return Err(Error::Param("the pipeline needs a two-colouring".into()));
    }
    if !(eta > 0.0 && eta < 1.0) || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Param(format!("eta and delta must lie in (0, 1), got {eta}, {delta}")));
    }
    if !partition.check_invariants(col.n()) {
        return Err(Error::Param("partition does not match the colouring".into()));
    }
    let m = partition.m();
    let (vs, ws) = (&partition.classes, &partition.subsets);

    let inner_red: Vec<f64> = ws
        .iter()
        .map(|w| {
            let set = Bitset::from_iter_len(col.n(), w.iter().copied());
            distinct_pair_density(col, RED, w, &set).unwrap_or(1.0)
        })
        .collect();
    let vertex_colours: Vec<Colour> = inner_red.iter().map(|&d| if d >= 0.5 { RED } else { BLUE }).collect();
    let reds = vertex_colours.iter().filter(|&&c| c == RED).count();
    let primary = if 2 * reds >= m { RED } else { BLUE };

    let mut densities: [[Vec<Vec<f64>>; 3]; 2] = Default::default();
    for c in [RED, BLUE] {
        for (kind, (left, right)) in [(vs, vs), (ws, vs), (ws, ws)].into_iter().enumerate() {
            let mut table = vec![vec![0.0; m]; m];
            for i in 0..m {
                for j in 0..m {
                    table[i][j] = pair_density(col, c, &left[i], &right[j])?;
                }
            }
            densities[c as usize][kind] = table;
        }
    }

    let mut regular = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let red = &densities[RED as usize];
            let agree = (red[1][i][j] - red[0][i][j]).abs() <= eta
                && (red[2][i][j] - red[0][i][j]).abs() <= eta;
            let mut ok = agree;
            for (which, (a, b)) in [(&vs[i], &vs[j]), (&ws[i], &vs[j]), (&ws[i], &ws[j])].into_iter().enumerate() {
                if !ok {
                    break;
                }
                let mode = RegularityMode::Sampled {
                    trials: GATE_TRIALS,
                    seed: gate_seed(seed, i, j, which as u64),
                };
                ok = eps_regular_check(col, RED, a, b, eta, mode)?.passed();
            }
            regular[i][j] = ok;
        }
    }

    let mut edges = vec![vec![None; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i != j && regular[i][j] && regular[j][i] {
                let d = densities[primary as usize][0][i][j];
                edges[i][j] = Some(edge_colour_rule(primary, d, delta));
            }
        }
    }

    let mut reduced = ReducedGraph {
        partition: partition.clone(),
        eta,
        delta,
        inner_red,
        vertex_colours,
        primary,
        densities,
        regular,
        edges,
        deleted: vec![false; m],
    };
    let cap = reduced.deletion_threshold();
    loop {
        let worst = reduced
            .survivors()
            .map(|i| (reduced.uncoloured_degree(i), i))
            .filter(|&(d, _)| d as f64 > cap)
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        match worst {
            Some((_, i)) => reduced.deleted[i] = true,
            None => break,
        }
    }
    Ok(reduced)
}
