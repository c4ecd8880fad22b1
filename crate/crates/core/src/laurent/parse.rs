//! Text grammar for univariate Laurent polynomials with integer coefficients.
//!
//! ```text
//! poly  := term (("+" | "-") term)*
//! term  := coeff? ("t" ("^" int)?)?
//! coeff := digits
//! int   := "-"? digits
//! ```
//!
//! Whitespace is ignored everywhere. A term must contain a coefficient, a `t`,
//! or both.

use num_bigint::BigInt;

use crate::ParseError;

/// One parsed term: exponent and signed integer coefficient.
pub type IntTerm = (i64, BigInt);

struct Cursor {
    chars: Vec<(usize, char)>,
    idx: usize,
    end: usize,
}

impl Cursor {
    fn new(s: &str) -> Self {
        Cursor {
            chars: s
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            idx: 0,
            end: s.len(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.idx).map_or(self.end, |&(i, _)| i)
    }

    fn bump(&mut self) {
        self.idx += 1;
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        (!s.is_empty()).then_some(s)
    }

    fn term(&mut self) -> Result<IntTerm, ParseError> {
        let coeff = self.digits();
        let mut exp = 0i64;
        let has_t = self.peek() == Some('t');
        if has_t {
            self.bump();
            exp = 1;
            if self.peek() == Some('^') {
                self.bump();
                let neg = self.peek() == Some('-');
                if neg {
                    self.bump();
                }
                let Some(ds) = self.digits() else {
                    return self.err("expected exponent digits after '^'");
                };
                let start = self.pos();
                exp = match ds.parse::<i64>() {
                    Ok(e) if neg => -e,
                    Ok(e) => e,
                    Err(_) => {
                        return Err(ParseError {
                            pos: start,
                            msg: "exponent out of range".into(),
                        })
                    }
                };
            }
        }
        if coeff.is_none() && !has_t {
            return self.err("expected a coefficient or 't'");
        }
        let c = match coeff {
            Some(ds) => ds.parse::<BigInt>().expect("ascii digits"),
            None => BigInt::from(1),
        };
        Ok((exp, c))
    }
}

/// Parses polynomial text into integer terms, in source order, with
/// subtraction folded into the coefficient sign.
pub fn parse_terms(s: &str) -> Result<Vec<IntTerm>, ParseError> {
    let mut cur = Cursor::new(s);
    if cur.peek().is_none() {
        return cur.err("empty polynomial");
    }
    let mut terms = vec![cur.term()?];
    while let Some(op) = cur.peek() {
        let sign = match op {
            '+' => 1,
            '-' => -1,
            other => return cur.err(format!("unexpected character {other:?}")),
        };
        cur.bump();
        let (e, c) = cur.term()?;
        terms.push((e, c * sign));
    }
    Ok(terms)
}
