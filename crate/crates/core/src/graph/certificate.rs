use super::colouring::Colour;
use super::knc::content_lines;
use crate::error::{Error, Result};

/// A claimed monochromatic book: a colour-`colour` clique `spine` and the
/// `pages` joined to all of it in that colour. Both lists are ascending and
/// 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BookCertificate {
    pub colour: Colour,
    pub spine: Vec<usize>,
    pub pages: Vec<usize>,
}

impl BookCertificate {
    pub fn k(&self) -> usize {
        self.spine.len()
    }

    pub fn page_count(&self) -> usize {
        self.pages.len()
    }

    /// `BOOK <colour> <k> <pages>`, then the spine and page lines (1-based).
    pub fn to_text(&self) -> String {
        let join = |vs: &[usize]| {
            vs.iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!(
            "BOOK {} {} {}\n{}\n{}\n",
            self.colour,
            self.spine.len(),
            self.pages.len(),
            join(&self.spine),
            join(&self.pages)
        )
    }

    /// Parses the certificate format. Structural problems (counts, ordering,
    /// label 0) are parse errors; whether the book is real is left to
    /// `books::verify_certificate`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hno, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header"))?;
        let fields: Vec<&str> = header.split(' ').collect();
        if fields.len() != 4 || fields[0] != "BOOK" {
            return Err(Error::parse(hno, "header must be `BOOK <colour> <k> <pages>`"));
        }
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(hno, format!("bad header field `{s}`")))
        };
        let colour = num(fields[1])?;
        let k = num(fields[2])?;
        let p = num(fields[3])?;
        if colour > Colour::MAX as usize {
            return Err(Error::parse(hno, "colour out of range"));
        }
        if k == 0 {
            return Err(Error::parse(hno, "spine must be nonempty"));
        }

        let mut read_list = |what: &str, want: usize| -> Result<Vec<usize>> {
            let (no, line) = match lines.next() {
                Some(x) => x,
                // an empty trailing page line may be swallowed with the final LF
                None if want == 0 => return Ok(Vec::new()),
                None => return Err(Error::parse(hno + 1, format!("missing {what} line"))),
            };
            let vs = line
                .split(' ')
                .filter(|s| !s.is_empty())
                .map(|s| match s.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(Error::parse(no, format!("bad vertex `{s}`"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if vs.len() != want {
                return Err(Error::parse(
                    no,
                    format!("{what} line has {} vertices, header says {want}", vs.len()),
                ));
            }
            if vs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::parse(no, format!("{what} vertices must be ascending")));
            }
            Ok(vs)
        };
        let spine = read_list("spine", k)?;
        let pages = read_list("page", p)?;
        Ok(BookCertificate {
            colour: colour as Colour,
            spine,
            pages,
        })
    }
}
