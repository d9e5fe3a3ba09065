//! Dense two-colourings of complete `s`-uniform hypergraphs.

use super::colouring::Colour;
use super::knc::{content_lines, parse_header};
use crate::combinatorics::{binomial, Combinations};
use crate::error::{Error, Result};

/// Largest number of materialised edges.
pub const MAX_HYPER_EDGES: u128 = 1 << 22;

#[derive(Clone, PartialEq, Eq)]
pub struct HyperColouring {
    n: usize,
    s: usize,
    /// `binom[v][i] = C(v, i)` for colex ranking.
    binom: Vec<Vec<usize>>,
    colours: Vec<Colour>,
}

impl HyperColouring {
    pub fn from_fn<F>(n: usize, s: usize, mut colour: F) -> Result<Self>
    where
        F: FnMut(&[usize]) -> Colour,
    {
        if s < 3 {
            return Err(Error::Param(format!("uniformity must be >= 3, got {s}")));
        }
        let edges = binomial(n as u64, s as u64);
        if edges > MAX_HYPER_EDGES {
            return Err(Error::Capacity {
                what: "hypergraph edges",
                needed: edges,
                cap: MAX_HYPER_EDGES,
            });
        }
        let binom = (0..=n)
            .map(|v| (0..=s).map(|i| binomial(v as u64, i as u64) as usize).collect())
            .collect();
        let mut h = HyperColouring {
            n,
            s,
            binom,
            colours: vec![0; edges as usize],
        };
        for e in Combinations::new(n, s) {
            let c = colour(&e);
            if c > 1 {
                return Err(Error::Param(format!("hyperedge colour {c} is not 0 or 1")));
            }
            let r = h.rank(&e);
            h.colours[r] = c;
        }
        Ok(h)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    #[inline]
    fn rank(&self, sorted: &[usize]) -> usize {
        sorted
            .iter()
            .enumerate()
            .map(|(i, &v)| self.binom[v][i + 1])
            .sum()
    }

    /// Colour of an ascending `s`-set.
    #[inline]
    pub fn colour(&self, sorted: &[usize]) -> Colour {
        debug_assert_eq!(sorted.len(), self.s);
        debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]));
        self.colours[self.rank(sorted)]
    }

    /// Colour of an `s`-set in any order.
    pub fn colour_of(&self, set: &[usize]) -> Colour {
        let mut v = set.to_vec();
        v.sort_unstable();
        self.colour(&v)
    }

    pub fn edge_count(&self) -> usize {
        self.colours.len()
    }
}

impl std::fmt::Debug for HyperColouring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HyperColouring(n={}, s={})", self.n, self.s)
    }
}

/// `KNSC 1 <N> <s>` followed by one `v1 .. vs c` line per `s`-set in
/// lexicographic order, labels 1-based.
pub fn emit_hyper(h: &HyperColouring) -> String {
    let mut out = format!("KNSC 1 {} {}\n", h.n, h.s);
    for e in Combinations::new(h.n, h.s) {
        for v in &e {
            out.push_str(&(v + 1).to_string());
            out.push(' ');
        }
        out.push((b'0' + h.colour(&e)) as char);
        out.push('\n');
    }
    out
}

pub fn parse_hyper(text: &str) -> Result<HyperColouring> {
    let mut lines = content_lines(text);
    let (hno, nums) = parse_header(&mut lines, "KNSC")?;
    let [n, s] = nums[..] else {
        return Err(Error::parse(hno, "header must be `KNSC 1 <N> <s>`"));
    };
    if n < 1 {
        return Err(Error::parse(hno, "vertex count must be at least 1"));
    }
    if s < 3 {
        return Err(Error::parse(hno, "uniformity must be at least 3"));
    }
    if binomial(n as u64, s as u64) > MAX_HYPER_EDGES {
        return Err(Error::parse(hno, "hypergraph exceeds the edge cap"));
    }
    let mut colours = Vec::new();
    let mut last_no = hno;
    for expect in Combinations::new(n, s) {
        let (no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(last_no + 1, "missing hyperedge line"))?;
        last_no = no;
        let fields: Vec<&str> = line.split(' ').collect();
        if fields.len() != s + 1 {
            return Err(Error::parse(no, format!("expected {} fields", s + 1)));
        }
        for (f, &v) in fields.iter().zip(&expect) {
            if f.parse::<usize>().ok() != Some(v + 1) {
                return Err(Error::parse(
                    no,
                    "hyperedges must be listed in lexicographic order",
                ));
            }
        }
        let c = match fields[s] {
            "0" => 0,
            "1" => 1,
            other => return Err(Error::parse(no, format!("bad colour `{other}`"))),
        };
        colours.push(c);
    }
    if let Some((no, _)) = lines.next() {
        return Err(Error::parse(no, "unexpected trailing data"));
    }
    let mut it = colours.into_iter();
    HyperColouring::from_fn(n, s, |_| it.next().expect("one colour per edge"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_is_a_bijection() {
        let h = HyperColouring::from_fn(7, 3, |_| 0).unwrap();
        let mut seen = vec![false; h.edge_count()];
        for e in Combinations::new(7, 3) {
            let r = h.rank(&e);
            assert!(!seen[r]);
            seen[r] = true;
        }
        assert!(seen.into_iter().all(|x| x));
    }

    #[test]
    fn round_trip_and_order() {
        let h = HyperColouring::from_fn(5, 3, |e| ((e[0] + e[2]) % 2) as u8).unwrap();
        let text = emit_hyper(&h);
        assert!(text.starts_with("KNSC 1 5 3\n1 2 3 0\n1 2 4 1\n"));
        assert_eq!(parse_hyper(&text).unwrap(), h);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(HyperColouring::from_fn(5, 2, |_| 0).is_err());
        assert!(matches!(
            HyperColouring::from_fn(200, 5, |_| 0),
            Err(Error::Capacity { .. })
        ));
        assert!(parse_hyper("KNSC 1 3 3\n1 2 3 2\n").is_err());
        assert!(parse_hyper("KNSC 1 4 3\n1 2 4 0\n1 2 3 0\n1 3 4 0\n2 3 4 0\n").is_err());
    }
}
