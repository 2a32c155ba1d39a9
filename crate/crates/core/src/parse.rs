//! Text grammars: generator words with commutator brackets, and event lists.
//!
//! ```text
//! word := term*
//! term := atom ("^" ["-"] digits)*
//! atom := gen | "1" | "[" word "," word "]" | "(" word ")"
//! gen  := "x" i j | "x" i "_" j | "m" i
//! ```
//!
//! `xij` with single digits, `xi_j` otherwise; `i < j` is enforced.
//! Whitespace is ignored between tokens. An empty word or `1` is the identity.

use std::fmt;

use thiserror::Error;

use crate::freeword::{Generator, GroupWord};
use crate::stringlink::{CrossingEvent, EventList, LinkError, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("at {pos}: x{i}{j} needs i < j")]
    IndexOrder { pos: usize, i: usize, j: usize },
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error(transparent)]
    Link(#[from] LinkError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordExpr {
    Gen(Generator),
    Power(Box<WordExpr>, i64),
    Commutator(Box<WordExpr>, Box<WordExpr>),
    Product(Vec<WordExpr>),
}

impl WordExpr {
    pub fn eval(&self) -> GroupWord {
        match self {
            WordExpr::Gen(g) => GroupWord::generator(*g),
            WordExpr::Power(e, n) => e.eval().pow(*n),
            WordExpr::Commutator(a, b) => GroupWord::commutator(&a.eval(), &b.eval()),
            WordExpr::Product(terms) => terms.iter().fold(GroupWord::identity(), |w, t| w.mul(&t.eval())),
        }
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordExpr::Gen(g) => write!(f, "{g}"),
            WordExpr::Power(e, n) => match **e {
                WordExpr::Product(_) => write!(f, "({e})^{n}"),
                _ => write!(f, "{e}^{n}"),
            },
            WordExpr::Commutator(a, b) => write!(f, "[{a},{b}]"),
            WordExpr::Product(terms) => {
                let parts: Vec<String> = terms.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits")
    }

    fn number(&mut self, what: &str) -> Result<usize, ParseError> {
        let d = self.digits();
        if d.is_empty() {
            return self.err(format!("expected {what}"));
        }
        d.parse().or_else(|_| self.err(format!("{what} too large")))
    }

    fn word(&mut self) -> Result<WordExpr, ParseError> {
        let mut terms = Vec::new();
        while let Some(c) = self.peek() {
            if c == b',' || c == b']' || c == b')' {
                break;
            }
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 { terms.pop().expect("one term") } else { WordExpr::Product(terms) })
    }

    fn term(&mut self) -> Result<WordExpr, ParseError> {
        let mut t = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let neg = self.s.get(self.pos) == Some(&b'-');
            if neg {
                self.pos += 1;
            }
            let n = self.number("exponent")? as i64;
            t = WordExpr::Power(Box::new(t), if neg { -n } else { n });
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<WordExpr, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(b',')?;
                let b = self.word()?;
                self.expect(b']')?;
                Ok(WordExpr::Commutator(Box::new(a), Box::new(b)))
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(WordExpr::Product(Vec::new()))
            }
            Some(b'm') => {
                self.pos += 1;
                let i = self.number("meridian index")?;
                let g = Generator::meridian(i).map_err(|e| ParseError::Syntax { pos: start, msg: e.to_string() })?;
                Ok(WordExpr::Gen(g))
            }
            Some(b'x') => {
                self.pos += 1;
                let (i, j) = {
                    let first = self.digits().to_string();
                    if self.s.get(self.pos) == Some(&b'_') {
                        self.pos += 1;
                        let second = self.number("second index")?;
                        let i = first.parse::<usize>().or_else(|_| self.err("expected first index"))?;
                        (i, second)
                    } else if first.len() == 2 {
                        let b = first.as_bytes();
                        ((b[0] - b'0') as usize, (b[1] - b'0') as usize)
                    } else {
                        return Err(ParseError::Syntax { pos: start, msg: format!("write x{first} as xi_j (two single digits or an underscore)") });
                    }
                };
                if i == 0 || i >= j {
                    return Err(ParseError::IndexOrder { pos: start, i, j });
                }
                Ok(WordExpr::Gen(Generator::pair(i, j).expect("checked")))
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_word(text: &str) -> Result<WordExpr, ParseError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let w = p.word()?;
    if p.peek().is_some() {
        return p.err("unbalanced bracket or stray separator");
    }
    Ok(w)
}

/// Events, one per line as `under over sign` with sign `+` or `-`; an
/// optional first line `strands k` fixes the strand count (otherwise the
/// largest strand mentioned). `#` starts a comment.
pub fn parse_events(text: &str) -> Result<EventList, ParseError> {
    let mut strands = None;
    let mut events = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        let err = |msg: String| ParseError::Line { line: n + 1, msg };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            ["strands", k] => {
                if strands.is_some() || !events.is_empty() {
                    return Err(err("`strands` must be the first line".into()));
                }
                strands = Some(k.parse::<usize>().map_err(|_| err(format!("bad strand count `{k}`")))?);
            }
            [u, o, s] => {
                let u = u.parse::<usize>().map_err(|_| err(format!("bad strand `{u}`")))?;
                let o = o.parse::<usize>().map_err(|_| err(format!("bad strand `{o}`")))?;
                let sign = match *s {
                    "+" | "+1" | "1" => Sign::Plus,
                    "-" | "-1" => Sign::Minus,
                    _ => return Err(err(format!("bad sign `{s}`"))),
                };
                events.push(CrossingEvent::new(u, o, sign));
            }
            _ => return Err(err(format!("expected `under over sign`, got `{line}`"))),
        }
    }
    let k = strands.unwrap_or_else(|| events.iter().map(|e| e.under.max(e.over)).max().unwrap_or(0));
    Ok(EventList::new(k, events)?)
}
