//! Words in the generators, as written in presentations: `a*b`, `a^-1*b`,
//! `(a*c)^2`, `-1`.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    One,
    Gen(char),
    /// The central element `-1`, times the inner word.
    Neg(Box<Word>),
    Prod(Vec<Word>),
    Pow(Box<Word>, i64),
}

/// Whatever a word can be evaluated in.
pub trait WordTarget {
    type Elem: Clone;
    fn generator(&self, name: char) -> Option<Self::Elem>;
    fn one(&self) -> Self::Elem;
    /// `None` when the group does not contain -1.
    fn minus_one(&self) -> Option<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

impl Word {
    pub fn parse(s: &str) -> Result<Word> {
        let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { toks, pos: 0 };
        let w = p.word()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(w)
    }

    pub fn eval<T: WordTarget>(&self, t: &T) -> Result<T::Elem> {
        Ok(match self {
            Word::One => t.one(),
            Word::Gen(c) => t
                .generator(*c)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown generator {c}")))?,
            Word::Neg(w) => {
                let m = t
                    .minus_one()
                    .ok_or_else(|| Error::InvalidParameter("-1 is not in this group".into()))?;
                t.mul(&m, &w.eval(t)?)
            }
            Word::Prod(ws) => {
                let mut acc = t.one();
                for w in ws {
                    acc = t.mul(&acc, &w.eval(t)?);
                }
                acc
            }
            Word::Pow(w, e) => {
                let x = w.eval(t)?;
                let base = if *e < 0 { t.inv(&x) } else { x };
                let mut acc = t.one();
                for _ in 0..e.unsigned_abs() {
                    acc = t.mul(&acc, &base);
                }
                acc
            }
        })
    }
}

struct Parser {
    toks: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: &str) -> Error {
        let s: String = self.toks.iter().collect();
        Error::InvalidParameter(format!("bad word {s:?} at {}: {msg}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Word> {
        let mut fs = vec![self.factor()?];
        while self.peek() == Some('*') {
            self.pos += 1;
            fs.push(self.factor()?);
        }
        Ok(if fs.len() == 1 { fs.pop().unwrap() } else { Word::Prod(fs) })
    }

    fn factor(&mut self) -> Result<Word> {
        let a = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok(Word::Pow(Box::new(a), e));
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(Word::Neg(Box::new(self.factor()?)))
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::One)
            }
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected )"));
                }
                self.pos += 1;
                Ok(w)
            }
            Some(c) if c.is_ascii_lowercase() => {
                self.pos += 1;
                Ok(Word::Gen(c))
            }
            _ => Err(self.err("expected generator, 1, -, or (")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.toks[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("expected exponent"))
    }
}
