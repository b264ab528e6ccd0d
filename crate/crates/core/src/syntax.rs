//! Text syntax for words and polynomials.
//!
//! ```text
//! word  := "1" | atom+
//! atom  := IDENT | "[" word "]"
//! poly  := signed_term (("+" | "-") term)*
//! term  := [rational "*"?] word
//! ```
//!
//! `−` (U+2212) is accepted as a minus sign. A rational on its own is a
//! multiple of `1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::linear::{LinComb, Rational};
use crate::terms::{Alphabet, Letter, Word};

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Ident(String),
    Int(BigInt),
    Slash,
    Star,
    Plus,
    Minus,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, Error> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '[' | ']' | '/' | '*' | '+' | '-' | '−' => {
                it.next();
                out.push((
                    pos,
                    match c {
                        '[' => Tok::Open,
                        ']' => Tok::Close,
                        '/' => Tok::Slash,
                        '*' => Tok::Star,
                        '+' => Tok::Plus,
                        _ => Tok::Minus,
                    },
                ));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    s.push(d);
                    it.next();
                }
                out.push((pos, Tok::Int(s.parse().expect("digits"))));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    s.push(d);
                    it.next();
                }
                out.push((pos, Tok::Ident(s)));
            }
            other => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn new(text: &str, alphabet: &'a Alphabet) -> Result<Self, Error> {
        Ok(Parser {
            toks: tokenize(text)?,
            i: 0,
            end: text.len(),
            alphabet,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.i + k).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, Error> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn is_one(&self, k: usize) -> bool {
        matches!(self.peek_at(k), Some(Tok::Int(n)) if n.is_one())
    }

    fn word(&mut self) -> Result<Word, Error> {
        if self.is_one(0) {
            self.i += 1;
            if matches!(self.peek(), Some(Tok::Ident(_) | Tok::Open | Tok::Int(_))) {
                return self.err("`1` cannot be part of a nonempty word");
            }
            return Ok(Word::one());
        }
        let mut letters = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Ident(name)) => {
                    let g = self
                        .alphabet
                        .index(name)
                        .ok_or_else(|| Error::UnknownGenerator {
                            name: name.clone(),
                            pos: self.pos(),
                        })?;
                    letters.push(Letter::Gen(g));
                    self.i += 1;
                }
                Some(Tok::Open) => {
                    self.i += 1;
                    let inner = self.word()?;
                    if self.peek() != Some(&Tok::Close) {
                        return self.err("expected `]`");
                    }
                    self.i += 1;
                    letters.push(Letter::Br(inner));
                }
                Some(Tok::Int(n)) if n.is_one() && !letters.is_empty() => {
                    return self.err("`1` cannot be part of a nonempty word");
                }
                _ => break,
            }
        }
        if letters.is_empty() {
            return self.err("expected a word");
        }
        Ok(Word::new(letters))
    }

    fn finish(&self) -> Result<(), Error> {
        if self.i < self.toks.len() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }

    fn rational(&mut self) -> Result<Rational, Error> {
        let num = match self.peek() {
            Some(Tok::Int(n)) => n.clone(),
            _ => return self.err("expected an integer"),
        };
        self.i += 1;
        if self.peek() == Some(&Tok::Slash) {
            self.i += 1;
            let den = match self.peek() {
                Some(Tok::Int(d)) if !d.is_zero() => d.clone(),
                _ => return self.err("expected a nonzero denominator"),
            };
            self.i += 1;
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn term(&mut self) -> Result<(Rational, Word), Error> {
        let starts_coefficient = match (self.peek(), self.peek_at(1)) {
            (Some(Tok::Int(n)), next) => {
                // a lone `1` followed by a separator is the word 1
                !(n.is_one()
                    && !matches!(
                        next,
                        Some(Tok::Slash | Tok::Star | Tok::Ident(_) | Tok::Open)
                    ))
            }
            _ => false,
        };
        if !starts_coefficient {
            return Ok((Rational::one(), self.word()?));
        }
        let c = self.rational()?;
        if self.peek() == Some(&Tok::Star) {
            self.i += 1;
            return Ok((c, self.word()?));
        }
        match self.peek() {
            Some(Tok::Ident(_) | Tok::Open) => Ok((c, self.word()?)),
            Some(Tok::Int(n)) if n.is_one() => Ok((c, self.word()?)),
            _ => Ok((c, Word::one())),
        }
    }

    fn poly(&mut self) -> Result<Vec<(Rational, Word)>, Error> {
        let mut out = Vec::new();
        let mut sign = Rational::one();
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -sign;
                self.i += 1;
            }
            Some(Tok::Plus) => self.i += 1,
            _ => {}
        }
        loop {
            let (c, w) = self.term()?;
            out.push((sign * c, w));
            match self.peek() {
                Some(Tok::Plus) => sign = Rational::one(),
                Some(Tok::Minus) => sign = -Rational::one(),
                None => break,
                _ => return self.err("expected `+` or `-`"),
            }
            self.i += 1;
        }
        Ok(out)
    }
}

pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, Error> {
    let mut p = Parser::new(text, alphabet)?;
    let w = p.word()?;
    p.finish()?;
    Ok(w)
}

pub fn parse_poly(text: &str, alphabet: &Alphabet) -> Result<LinComb, Error> {
    Ok(LinComb::from_terms(parse_poly_terms(text, alphabet)?))
}

/// Polynomial terms in the order written, before merging.
pub fn parse_poly_terms(text: &str, alphabet: &Alphabet) -> Result<Vec<(Rational, Word)>, Error> {
    let mut p = Parser::new(text, alphabet)?;
    let terms = p.poly()?;
    p.finish()?;
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Alphabet {
        Alphabet::new(["x", "y", "x1", "x2"]).unwrap()
    }

    #[test]
    fn parse_examples() {
        let a = a();
        assert_eq!(parse_word("1", &a).unwrap(), Word::one());
        let x1 = a.index("x1").unwrap();
        let x2 = a.index("x2").unwrap();
        assert_eq!(
            parse_word("[x1] [x2]", &a).unwrap(),
            Word::new(vec![Letter::Br(Word::gen(x1)), Letter::Br(Word::gen(x2))])
        );
        assert_eq!(
            parse_word("[[x1] x2]", &a).unwrap(),
            Word::new(vec![Letter::Br(Word::new(vec![
                Letter::Br(Word::gen(x1)),
                Letter::Gen(x2)
            ]))])
        );
        assert_eq!(parse_word("[1]", &a).unwrap(), Word::one().bracket());
    }

    #[test]
    fn print_examples() {
        let a = a();
        assert_eq!(a.print(&Word::one()), "1");
        assert_eq!(a.print(&Word::one().bracket_pow(2)), "[[1]]");
        let w = parse_word("x   [y]\tx", &a).unwrap();
        assert_eq!(a.print(&w), "x [y] x");
    }

    #[test]
    fn parse_errors() {
        let a = a();
        assert!(matches!(
            parse_word("x 1", &a),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(parse_word("1 x", &a), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_word("[x] q", &a),
            Err(Error::UnknownGenerator { pos: 4, .. })
        ));
        assert!(matches!(
            parse_word("[x", &a),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(parse_word("[]", &a), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("", &a), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("x ]", &a), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_word("x $", &a),
            Err(Error::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn poly_parsing() {
        let a = a();
        let f = parse_poly("[x] + 2*[y]", &a).unwrap();
        assert_eq!(f.len(), 2);
        let g = parse_poly("−1/2 [x] - 3 + 1", &a).unwrap();
        assert_eq!(
            g.coefficient(&Word::one()),
            Rational::from_integer((-2).into())
        );
        assert_eq!(
            g.coefficient(&parse_word("[x]", &a).unwrap()),
            Rational::new((-1).into(), 2.into())
        );
        assert!(parse_poly("x - x", &a).unwrap().is_zero());
        assert!(parse_poly("0", &a).unwrap().is_zero());
        assert_eq!(parse_poly("1", &a).unwrap(), LinComb::monomial(Word::one()));
        assert_eq!(
            parse_poly("2 * 1", &a).unwrap(),
            parse_poly("2", &a).unwrap()
        );
        assert!(parse_poly("x +", &a).is_err());
        assert!(parse_poly("1/0 x", &a).is_err());
    }
}
