//! The presentation text format.
//!
//! ```text
//! # comment
//! rank 2
//! abAB
//! aab
//! ```
//!
//! Ranks up to 26 spell generators `a..z` and their inverses `A..Z`; larger
//! ranks write each relator as comma-separated signed generator indices such
//! as `1,-2,1`. Several presentations in one stream are separated by `---`
//! lines.

use std::fmt::{self, Write as _};

use smallcancel_core::{Alphabet, Letter, Presentation, Word};

/// Largest rank written with letters.
pub const MAX_LETTER_RANK: u32 = 26;

pub const SEPARATOR: &str = "---";

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based line number in the input.
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

pub fn render(p: &Presentation) -> String {
    let mut out = format!("rank {}\n", p.rank());
    for w in p.relators() {
        out.push_str(&render_word(w, p.rank()));
        out.push('\n');
    }
    out
}

/// `---`-separated concatenation of [`render`].
pub fn render_many<'a>(ps: impl IntoIterator<Item = &'a Presentation>) -> String {
    let mut out = String::new();
    for (i, p) in ps.into_iter().enumerate() {
        if i > 0 {
            out.push_str(SEPARATOR);
            out.push('\n');
        }
        out.push_str(&render(p));
    }
    out
}

pub fn render_word(w: &Word, rank: u32) -> String {
    let mut out = String::with_capacity(w.len());
    if rank <= MAX_LETTER_RANK {
        out.extend(w.letters().iter().map(|&l| letter_char(l)));
    } else {
        for (i, l) in w.letters().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{}", l.signed()).unwrap();
        }
    }
    out
}

fn letter_char(l: Letter) -> char {
    let c = (b'a' + (l.index() - 1) as u8) as char;
    if l.is_inverse() {
        c.to_ascii_uppercase()
    } else {
        c
    }
}

/// Parses exactly one presentation.
pub fn parse(text: &str) -> Result<Presentation, ParseError> {
    let mut ps = parse_many(text)?;
    match ps.len() {
        1 => Ok(ps.pop().unwrap()),
        n => Err(err(1, format!("expected one presentation, found {n}"))),
    }
}

/// Parses a `---`-separated stream. An empty or comment-only input yields
/// no presentations.
pub fn parse_many(text: &str) -> Result<Vec<Presentation>, ParseError> {
    let mut out = Vec::new();
    let mut current: Option<Builder> = None;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        if s == SEPARATOR {
            match current.take() {
                Some(b) => out.push(b.finish()?),
                None => return Err(err(line, "separator before any presentation")),
            }
            continue;
        }
        match current.as_mut() {
            None => current = Some(Builder::header(s, line)?),
            Some(b) => b.relator(s, line)?,
        }
    }
    if let Some(b) = current {
        out.push(b.finish()?);
    } else if !out.is_empty() {
        return Err(err(last, "trailing separator"));
    }
    Ok(out)
}

struct Builder {
    alphabet: Alphabet,
    header_line: usize,
    relators: Vec<Word>,
}

impl Builder {
    fn header(s: &str, line: usize) -> Result<Builder, ParseError> {
        let rank = s
            .strip_prefix("rank")
            .filter(|rest| rest.starts_with(char::is_whitespace))
            .ok_or_else(|| err(line, format!("expected \"rank <r>\", got {s:?}")))?
            .trim();
        let rank: u32 = rank.parse().map_err(|_| err(line, format!("invalid rank {rank:?}")))?;
        let alphabet = Alphabet::new(rank).map_err(|e| err(line, e.to_string()))?;
        Ok(Builder { alphabet, header_line: line, relators: Vec::new() })
    }

    fn relator(&mut self, s: &str, line: usize) -> Result<(), ParseError> {
        let letters = if self.alphabet.rank() <= MAX_LETTER_RANK {
            s.chars().filter(|c| !c.is_whitespace()).map(|c| self.letter(c, line)).collect::<Result<Vec<_>, _>>()?
        } else {
            s.split(',').map(|t| self.code(t.trim(), line)).collect::<Result<Vec<_>, _>>()?
        };
        let w = Word::reduce(letters);
        if w.is_empty() {
            return Err(err(line, format!("relator {s:?} reduces to the empty word")));
        }
        if !w.is_cyclically_reduced() {
            return Err(err(
                line,
                format!("relator {s:?} is not cyclically reduced (reduced form {})", render_word(&w, self.alphabet.rank())),
            ));
        }
        self.relators.push(w);
        Ok(())
    }

    fn letter(&self, c: char, line: usize) -> Result<Letter, ParseError> {
        if !c.is_ascii_alphabetic() {
            return Err(err(line, format!("unexpected character {c:?}")));
        }
        let index = (c.to_ascii_lowercase() as u8 - b'a' + 1) as u32;
        self.checked(Letter::new(index, c.is_ascii_uppercase()), line, || c.to_string())
    }

    fn code(&self, t: &str, line: usize) -> Result<Letter, ParseError> {
        let letter = t
            .parse::<i32>()
            .ok()
            .and_then(Letter::from_signed)
            .ok_or_else(|| err(line, format!("expected a nonzero integer, got {t:?}")))?;
        self.checked(letter, line, || t.to_string())
    }

    fn checked(&self, l: Letter, line: usize, shown: impl Fn() -> String) -> Result<Letter, ParseError> {
        if self.alphabet.contains(l) {
            Ok(l)
        } else {
            Err(err(line, format!("generator {} is outside rank {}", shown(), self.alphabet.rank())))
        }
    }

    fn finish(self) -> Result<Presentation, ParseError> {
        Presentation::new(self.alphabet, self.relators).map_err(|e| err(self.header_line, e.to_string()))
    }
}

/// Display adapter writing a presentation in the text format.
pub struct Text<'a>(pub &'a Presentation);

impl fmt::Display for Text<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.0))
    }
}
