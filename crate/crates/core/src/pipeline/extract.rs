//! Case analysis on the reduced graph, turned into concrete spine
//! prescriptions and realised exactly.
//!
//! Below, `P` is the reduced graph's primary colour and `Q` the other one.
//! Case A: a `P` vertex `a` with `P`-degree at least `2^-k m` prescribes a
//! `P` spine inside `W_a` with pages in its `P`-neighbour classes. Case B
//! looks for `k` disjoint cliques of `t` `P` vertices, each monochromatic,
//! pairwise joined in `Q`, and derives spines from whichever subcase the
//! clique colours and the `e_i` table select.

use std::fmt::Write as _;

use rayon::prelude::*;

use super::reduced::{other, DensityKind, ReducedGraph};
use super::transversal::{transversal_best_spine, Transversal};
use crate::books::{verify_certificate, SpineSearch};
use crate::combinatorics::Combinations;
use crate::error::{Error, Result};
use crate::graph::{common_pages, BookCertificate, Colour, Colouring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtractOptions {
    /// Largest clique size tried in the blow-up search.
    pub t_max: usize,
    /// Search nodes allowed per value of `t`.
    pub blowup_nodes: u64,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            t_max: 3,
            blowup_nodes: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseTag {
    /// Case A at reduced vertex `a`.
    Degree { a: usize },
    /// `Q` clique vertex `a` whose `P`-densities sum to at least `m/2`.
    Escape { a: usize },
    /// `k` vertices of one `Q` clique as a `Q` spine.
    CliqueSpine { parts: Vec<usize> },
    /// One vertex from each `P` clique as a `Q` spine.
    Product { parts: Vec<usize> },
    /// A multiset from the `P` clique `r` as a `P` spine.
    Power { r: usize, parts: Vec<usize> },
}

impl CaseTag {
    pub fn name(&self) -> &'static str {
        match self {
            CaseTag::Degree { .. } => "A-degree",
            CaseTag::Escape { .. } => "B-escape",
            CaseTag::CliqueSpine { .. } => "B-clique-spine",
            CaseTag::Product { .. } => "B-product",
            CaseTag::Power { .. } => "B-power",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Prescription {
    pub case: CaseTag,
    pub colour: Colour,
    /// Reduced vertices whose `W` sets hold the spine, one per spine vertex.
    pub spine_parts: Vec<usize>,
    /// Reduced vertices whose `V` classes hold the pages.
    pub page_parts: Vec<usize>,
    /// The density sum that motivated the choice.
    pub score: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub prescription: Prescription,
    pub transversal: Transversal,
    /// Best spine with its full page set, if it verified.
    pub certificate: Option<BookCertificate>,
    pub rejection: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blowup {
    pub t: usize,
    pub parts: Vec<Vec<usize>>,
    pub colours: Vec<Colour>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extraction {
    pub result: SpineSearch,
    pub winner: Option<usize>,
    pub candidates: Vec<Candidate>,
    pub blowup: Option<Blowup>,
    pub trace: String,
}

struct BlowupSearch<'a> {
    reduced: &'a ReducedGraph,
    pool: Vec<usize>,
    k: usize,
    t: usize,
    q: Colour,
    p: Colour,
    nodes: u64,
    budget: u64,
}

impl BlowupSearch<'_> {
    fn run(&mut self, parts: &mut Vec<Vec<usize>>, colours: &mut Vec<Colour>, used: &mut [bool]) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        if parts.len() == self.k && parts.last().is_none_or(|p| p.len() == self.t) {
            return Some(true);
        }
        let opening = parts.last().is_none_or(|p| p.len() == self.t);
        if opening {
            // parts open in increasing order of first vertex
            let after = parts.last().map(|p| p[0]);
            for idx in 0..self.pool.len() {
                let x = self.pool[idx];
                if used[x] || after.is_some_and(|a| x <= a) || !self.joins_previous(x, parts, parts.len()) {
                    continue;
                }
                used[x] = true;
                parts.push(vec![x]);
                colours.push(self.p);
                let r = self.run(parts, colours, used);
                if r != Some(false) {
                    return r;
                }
                parts.pop();
                colours.pop();
                used[x] = false;
            }
            return Some(false);
        }
        let cur = parts.len() - 1;
        let last = *parts[cur].last().unwrap();
        for idx in 0..self.pool.len() {
            let x = self.pool[idx];
            if used[x] || x <= last || !self.joins_previous(x, parts, cur) {
                continue;
            }
            let edge = self.reduced.edges[x][parts[cur][0]];
            let Some(c) = edge else { continue };
            let fixed = (parts[cur].len() >= 2).then_some(colours[cur]);
            if fixed.is_some_and(|f| f != c) || parts[cur].iter().any(|&y| self.reduced.edges[x][y] != Some(c)) {
                continue;
            }
            used[x] = true;
            parts[cur].push(x);
            let prev = colours[cur];
            colours[cur] = c;
            let r = self.run(parts, colours, used);
            if r != Some(false) {
                return r;
            }
            colours[cur] = prev;
            parts[cur].pop();
            used[x] = false;
        }
        Some(false)
    }

    fn joins_previous(&self, x: usize, parts: &[Vec<usize>], upto: usize) -> bool {
        parts[..upto]
            .iter()
            .flatten()
            .all(|&z| self.reduced.edges[x][z] == Some(self.q))
    }
}

/// Largest `t <= t_max` with a blow-up, plus a note per abandoned `t`.
fn find_blowup(reduced: &ReducedGraph, k: usize, opts: &ExtractOptions) -> (Option<Blowup>, Vec<String>) {
    let p = reduced.primary;
    let pool: Vec<usize> = reduced.survivors().filter(|&i| reduced.vertex_colours[i] == p).collect();
    let mut notes = Vec::new();
    for t in (1..=opts.t_max).rev() {
        if k * t > pool.len() {
            notes.push(format!("blowup_t\t{t}\ttoo_few_vertices"));
            continue;
        }
        let mut search = BlowupSearch {
            reduced,
            pool: pool.clone(),
            k,
            t,
            q: other(p),
            p,
            nodes: 0,
            budget: opts.blowup_nodes,
        };
        let (mut parts, mut colours) = (Vec::new(), Vec::new());
        let mut used = vec![false; reduced.m()];
        match search.run(&mut parts, &mut colours, &mut used) {
            Some(true) => return (Some(Blowup { t, parts, colours }), notes),
            Some(false) => notes.push(format!("blowup_t\t{t}\tinfeasible")),
            None => notes.push(format!("blowup_t\t{t}\tbudget_exhausted")),
        }
    }
    (None, notes)
}

/// Surviving `j` that pass the gate from every spine part.
fn page_parts(reduced: &ReducedGraph, spine: &[usize]) -> Vec<usize> {
    reduced
        .survivors()
        .filter(|&j| spine.iter().all(|&a| reduced.regular[a][j]))
        .collect()
}

fn product_score(reduced: &ReducedGraph, c: Colour, spine: &[usize], pages: &[usize]) -> f64 {
    pages
        .iter()
        .map(|&j| spine.iter().map(|&a| reduced.density(c, DensityKind::WV, a, j)).product::<f64>())
        .sum()
}

/// Best spine-part tuple among `options` by product score; first wins ties.
fn best_tuple(
    reduced: &ReducedGraph,
    c: Colour,
    options: impl Iterator<Item = Vec<usize>>,
) -> Option<(Vec<usize>, Vec<usize>, f64)> {
    let mut best: Option<(Vec<usize>, Vec<usize>, f64)> = None;
    for spine in options {
        let pages = page_parts(reduced, &spine);
        let score = product_score(reduced, c, &spine, &pages);
        if best.as_ref().is_none_or(|b| score > b.2) {
            best = Some((spine, pages, score));
        }
    }
    best
}

fn multisets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..items.len() {
            cur.push(items[i]);
            go(items, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

fn cartesian(parts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    parts.iter().fold(vec![Vec::new()], |acc, part| {
        acc.iter()
            .flat_map(|pre| {
                part.iter().map(move |&x| {
                    let mut v = pre.clone();
                    v.push(x);
                    v
                })
            })
            .collect()
    })
}

fn list(v: &[usize]) -> String {
    if v.is_empty() {
        return "-".into();
    }
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn labels(v: &[usize]) -> String {
    if v.is_empty() {
        return "-".into();
    }
    v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")
}

pub fn extract_book(col: &Colouring, reduced: &ReducedGraph, k: usize, opts: &ExtractOptions) -> Result<Extraction> {
    if k == 0 || k >= col.n() {
        return Err(Error::Param(format!("spine size {k} must satisfy 1 <= k < N = {}", col.n())));
    }
    if reduced.partition.classes.iter().map(Vec::len).sum::<usize>() != col.n() {
        return Err(Error::Param("reduced graph was built for another colouring".into()));
    }
    let m = reduced.m();
    let (p, q) = (reduced.primary, other(reduced.primary));
    let root_eta = reduced.eta.sqrt();
    let ell = m as f64 / 2f64.powi(k as i32);
    let m_prime = (1.0 - root_eta) * m as f64;
    let s = ((0.5 - root_eta) * m as f64).ceil().max(0.0) as usize;

    let mut tr = String::new();
    let _ = writeln!(tr, "# pipeline trace");
    let _ = writeln!(
        tr,
        "params\tN\t{}\tk\t{k}\tm\t{m}\teta\t{}\tdelta\t{}\tt_max\t{}",
        col.n(),
        reduced.eta,
        reduced.delta,
        opts.t_max
    );
    let _ = writeln!(
        tr,
        "proxy\tinitial\t{:.6}\tfinal\t{:.6}",
        reduced.partition.proxy_initial, reduced.partition.proxy_final
    );
    for i in 0..m {
        let _ = writeln!(
            tr,
            "class\t{i}\tV\t{}\tW\t{}",
            labels(&reduced.partition.classes[i]),
            labels(&reduced.partition.subsets[i])
        );
    }
    for i in 0..m {
        let _ = writeln!(
            tr,
            "vertex\t{i}\tcolour\t{}\tinner_red\t{:.6}\tdeleted\t{}",
            reduced.vertex_colours[i],
            reduced.inner_red[i],
            u8::from(reduced.deleted[i])
        );
    }
    let _ = writeln!(tr, "primary\t{p}");
    for (name, kind) in [("V_V", DensityKind::VV), ("W_V", DensityKind::WV), ("W_W", DensityKind::WW)] {
        let _ = writeln!(tr, "density_red\t{name}");
        let header: Vec<String> = (0..m).map(|j| j.to_string()).collect();
        let _ = writeln!(tr, "\t{}", header.join("\t"));
        for i in 0..m {
            let row: Vec<String> = (0..m).map(|j| format!("{:.6}", reduced.density(0, kind, i, j))).collect();
            let _ = writeln!(tr, "{i}\t{}", row.join("\t"));
        }
    }
    let _ = writeln!(tr, "edges");
    for i in 0..m {
        let row: String = (0..m)
            .map(|j| match reduced.edges[i][j] {
                _ if i == j => '-',
                Some(0) => 'R',
                Some(_) => 'B',
                None => '.',
            })
            .collect();
        let _ = writeln!(tr, "{i}\t{row}");
    }
    let _ = writeln!(
        tr,
        "quantities\tell\t{ell:.6}\tm_prime\t{m_prime:.6}\ts\t{s}\tdeletion_threshold\t{:.6}",
        reduced.deletion_threshold()
    );

    let mut prescriptions = Vec::new();

    for a in reduced.survivors().filter(|&a| reduced.vertex_colours[a] == p) {
        let deg = reduced.degree(a, p);
        if deg as f64 >= ell {
            let pages: Vec<usize> = reduced.survivors().filter(|&j| reduced.edges[a][j] == Some(p)).collect();
            let _ = writeln!(tr, "case_a\tvertex\t{a}\tdegree\t{deg}");
            let score = product_score(reduced, p, &[a], &pages);
            prescriptions.push(Prescription {
                case: CaseTag::Degree { a },
                colour: p,
                spine_parts: vec![a; k],
                page_parts: pages,
                score,
            });
        }
    }

    let (blowup, notes) = find_blowup(reduced, k, opts);
    for note in notes {
        let _ = writeln!(tr, "{note}");
    }
    match &blowup {
        None => {
            let _ = writeln!(tr, "blowup\tnone");
        }
        Some(b) => {
            let parts: Vec<String> = b.parts.iter().map(|c| list(c)).collect();
            let colours: Vec<String> = b.colours.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(tr, "blowup\tt\t{}\tparts\t{}\tcolours\t{}", b.t, parts.join(";"), colours.join(","));
            if b.colours.contains(&q) {
                for (ci, clique) in b.parts.iter().enumerate().filter(|(ci, _)| b.colours[*ci] == q) {
                    for &a in clique {
                        let pages: Vec<usize> = page_parts(reduced, &[a]);
                        let sum: f64 = pages.iter().map(|&j| reduced.density(p, DensityKind::WV, a, j)).sum();
                        let _ = writeln!(tr, "escape_sum\tclique\t{ci}\tvertex\t{a}\tsum\t{sum:.6}");
                        if sum >= m as f64 / 2.0 {
                            prescriptions.push(Prescription {
                                case: CaseTag::Escape { a },
                                colour: p,
                                spine_parts: vec![a; k],
                                page_parts: pages,
                                score: sum,
                            });
                        }
                    }
                    if clique.len() >= k {
                        let options = Combinations::new(clique.len(), k).map(|ix| ix.iter().map(|&i| clique[i]).collect());
                        if let Some((spine, pages, score)) = best_tuple(reduced, q, options) {
                            prescriptions.push(Prescription {
                                case: CaseTag::CliqueSpine { parts: spine.clone() },
                                colour: q,
                                spine_parts: spine,
                                page_parts: pages,
                                score,
                            });
                        }
                    }
                }
            } else {
                let survivors: Vec<usize> = reduced.survivors().collect();
                let e: Vec<Vec<f64>> = b
                    .parts
                    .iter()
                    .map(|clique| {
                        survivors
                            .iter()
                            .map(|&j| clique.iter().map(|&c| reduced.density(q, DensityKind::WV, c, j)).sum())
                            .collect()
                    })
                    .collect();
                for (i, row) in e.iter().enumerate() {
                    let cells: Vec<String> = survivors.iter().zip(row).map(|(j, x)| format!("{j}:{x:.6}")).collect();
                    let _ = writeln!(tr, "e_table\t{i}\t{}", cells.join("\t"));
                }
                let t = b.t as f64;
                let threshold = (t / 2.0).powi(k as i32) * m_prime;
                let s2: f64 = (0..survivors.len()).map(|v| e.iter().map(|row| row[v]).product::<f64>()).sum();
                let s1: Vec<f64> = e
                    .iter()
                    .map(|row| row.iter().map(|x| (t - x).powi(k as i32)).sum())
                    .collect();
                let s1_text: Vec<String> = s1.iter().map(|x| format!("{x:.6}")).collect();
                let _ = writeln!(
                    tr,
                    "dichotomy\tthreshold\t{threshold:.6}\tproduct_sum\t{s2:.6}\tpower_sums\t{}",
                    s1_text.join(",")
                );
                if s2 >= threshold {
                    if let Some((spine, pages, score)) = best_tuple(reduced, q, cartesian(&b.parts).into_iter()) {
                        prescriptions.push(Prescription {
                            case: CaseTag::Product { parts: spine.clone() },
                            colour: q,
                            spine_parts: spine,
                            page_parts: pages,
                            score,
                        });
                    }
                }
                for (r, &sum) in s1.iter().enumerate() {
                    if sum >= threshold {
                        let options = multisets(&b.parts[r], k).into_iter();
                        if let Some((spine, pages, score)) = best_tuple(reduced, p, options) {
                            prescriptions.push(Prescription {
                                case: CaseTag::Power { r, parts: spine.clone() },
                                colour: p,
                                spine_parts: spine,
                                page_parts: pages,
                                score,
                            });
                        }
                    }
                }
            }
        }
    }

    let w = &reduced.partition.subsets;
    let v = &reduced.partition.classes;
    let candidates: Vec<Candidate> = prescriptions
        .into_par_iter()
        .map(|pr| -> Result<Candidate> {
            let spine_sets: Vec<Vec<usize>> = pr.spine_parts.iter().map(|&a| w[a].clone()).collect();
            let page_sets: Vec<Vec<usize>> = pr.page_parts.iter().map(|&j| v[j].clone()).collect();
            let transversal = transversal_best_spine(col, pr.colour, &spine_sets, &page_sets)?;
            let (certificate, rejection) = match transversal.best.certificate() {
                None => (None, None),
                Some(found) => {
                    let cert = BookCertificate {
                        colour: found.colour,
                        spine: found.spine.clone(),
                        pages: common_pages(col, found.colour, &found.spine).to_vec(),
                    };
                    match verify_certificate(col, &cert, 0) {
                        Ok(()) => (Some(cert), None),
                        Err(why) => (None, Some(why.to_string())),
                    }
                }
            };
            Ok(Candidate {
                prescription: pr,
                transversal,
                certificate,
                rejection,
            })
        })
        .collect::<Result<_>>()?;

    let mut winner: Option<usize> = None;
    for (i, cand) in candidates.iter().enumerate() {
        let pages = cand.certificate.as_ref().map(|c| c.page_count());
        let best = winner.and_then(|w| candidates[w].certificate.as_ref()).map(|c| c.page_count());
        if pages.is_some() && (best.is_none() || pages > best) {
            winner = Some(i);
        }
    }

    for (i, cand) in candidates.iter().enumerate() {
        let pr = &cand.prescription;
        let avg = cand.transversal.average().map_or("-".into(), |a| format!("{a:.6}"));
        let in_parts = cand.transversal.best.pages().map_or("-".into(), |x| x.to_string());
        let verdict = match (&cand.certificate, &cand.rejection) {
            (Some(c), _) => format!("verified\t{}", c.page_count()),
            (None, Some(why)) => format!("rejected\t{why}"),
            (None, None) => "no_spine\t-".into(),
        };
        let _ = writeln!(
            tr,
            "candidate\t{i}\t{}\tcolour\t{}\tspine_parts\t{}\tpage_parts\t{}\tscore\t{:.6}\tspines\t{}\taverage\t{avg}\tpages_in_parts\t{in_parts}\t{verdict}",
            pr.case.name(),
            pr.colour,
            list(&pr.spine_parts),
            list(&pr.page_parts),
            pr.score,
            cand.transversal.spines
        );
    }
    let result = match winner {
        Some(i) => {
            let cert = candidates[i].certificate.clone().expect("winner has a certificate");
            let _ = writeln!(
                tr,
                "winner\t{i}\t{}\tpages\t{}",
                candidates[i].prescription.case.name(),
                cert.page_count()
            );
            tr.push_str(&cert.to_text());
            SpineSearch::Book(cert)
        }
        None => {
            let _ = writeln!(tr, "winner\tnone");
            SpineSearch::NoSpine
        }
    };
    Ok(Extraction {
        result,
        winner,
        candidates,
        blowup,
        trace: tr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{BLUE, RED};
    use crate::pipeline::{build_reduced, make_partition};

    #[test]
    fn all_red_fires_everywhere() {
        let col = Colouring::monochromatic(48, 2, RED).unwrap();
        let part = make_partition(&col, 4, 2, 0, 0.2).unwrap();
        let r = build_reduced(&col, &part, 0.2, 0.1, 2).unwrap();
        let x = extract_book(&col, &r, 2, &ExtractOptions::default()).unwrap();
        let fired = x.candidates.iter().filter(|c| matches!(c.prescription.case, CaseTag::Degree { .. })).count();
        assert_eq!(fired, 4);
        assert_eq!(x.result.pages(), Some(46));
    }

    #[test]
    fn two_part_rule_chase() {
        let col = Colouring::from_fn(20, 2, |u, v| if (u < 10) == (v < 10) { RED } else { BLUE }).unwrap();
        let part = EquitablePartitionFixture::halves(&col);
        let r = build_reduced(&col, &part, 0.2, 0.1, 0).unwrap();
        assert_eq!(r.vertex_colours, vec![RED, RED]);
        assert_eq!(r.edges[0][1], Some(BLUE));
        let x = extract_book(&col, &r, 1, &ExtractOptions::default()).unwrap();
        let blue = x
            .candidates
            .iter()
            .find(|c| matches!(c.prescription.case, CaseTag::CliqueSpine { .. }))
            .expect("blue clique candidate");
        let cert = blue.certificate.as_ref().unwrap();
        assert_eq!(cert.colour, BLUE);
        let side = cert.spine[0] < 10;
        assert!(cert.pages.iter().all(|&v| (v < 10) != side));
        assert_eq!(cert.page_count(), 10);
    }

    struct EquitablePartitionFixture;

    impl EquitablePartitionFixture {
        fn halves(col: &Colouring) -> crate::pipeline::EquitablePartition {
            let mut p = make_partition(col, 2, 0, 0, 0.2).unwrap();
            p.classes = vec![(0..10).collect(), (10..20).collect()];
            p.subsets = vec![(0..5).collect(), (10..15).collect()];
            p
        }
    }

    #[test]
    fn helpers() {
        assert_eq!(multisets(&[3, 5], 2), vec![vec![3, 3], vec![3, 5], vec![5, 5]]);
        assert_eq!(cartesian(&[vec![1, 2], vec![3]]), vec![vec![1, 3], vec![2, 3]]);
    }
}
