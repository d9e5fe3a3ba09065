//! The KNC text format for edge colourings of `K_N`.
//!
//! ```text
//! KNC 1 <N> <q>
//! <N-1 digits: colours of (1,2) (1,3) ... (1,N)>
//! <N-2 digits: colours of (2,3) ... (2,N)>
//! ...
//! ```
//!
//! Lines beginning with `#` are comments. Vertex labels are 1-based in the
//! file and 0-based in memory.

use super::colouring::Colouring;
use crate::error::{Error, Result};

/// Iterates `(line_number, line)` over non-comment lines.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    body.split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.starts_with('#'))
}

pub(crate) fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    magic: &str,
) -> Result<(usize, Vec<usize>)> {
    let (no, line) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing header"))?;
    let mut fields = line.split_whitespace();
    if fields.next() != Some(magic) {
        return Err(Error::parse(no, format!("expected `{magic}` header")));
    }
    if fields.next() != Some("1") {
        return Err(Error::parse(no, "unsupported format version"));
    }
    let nums = fields
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| Error::parse(no, format!("bad header field `{f}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((no, nums))
}

pub fn parse_colouring(text: &str) -> Result<Colouring> {
    let mut lines = content_lines(text);
    let (hno, nums) = parse_header(&mut lines, "KNC")?;
    let [n, q] = nums[..] else {
        return Err(Error::parse(hno, "header must be `KNC 1 <N> <q>`"));
    };
    if n < 1 {
        return Err(Error::parse(hno, "vertex count must be at least 1"));
    }
    if !(2..=10).contains(&q) {
        return Err(Error::parse(hno, format!("colour count {q} outside 2..=10")));
    }

    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(n.saturating_sub(1));
    let mut last_no = hno;
    for i in 1..n {
        let (no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(last_no + 1, format!("missing row {i}")))?;
        last_no = no;
        if line.len() != n - i {
            return Err(Error::parse(
                no,
                format!("row {i} has {} digits, expected {}", line.len(), n - i),
            ));
        }
        let row = line
            .bytes()
            .map(|b| match b {
                b'0'..=b'9' if ((b - b'0') as usize) < q => Ok(b - b'0'),
                _ => Err(Error::parse(
                    no,
                    format!("`{}` is not a colour in 0..{q}", b as char),
                )),
            })
            .collect::<Result<Vec<u8>>>()?;
        rows.push(row);
    }
    if let Some((no, _)) = lines.next() {
        return Err(Error::parse(no, "unexpected trailing data"));
    }

    Colouring::from_fn(n, q, |u, v| rows[u][v - u - 1])
}

/// Canonical KNC text: no comments, single spaces, LF endings.
pub fn emit_colouring(col: &Colouring) -> String {
    let n = col.n();
    let mut out = String::with_capacity(n * n / 2 + 32);
    out.push_str(&format!("KNC 1 {} {}\n", n, col.q()));
    for u in 0..n.saturating_sub(1) {
        for v in u + 1..n {
            let c = col.colour(u, v).expect("off-diagonal");
            out.push((b'0' + c) as char);
        }
        out.push('\n');
    }
    out
}
