//! Parser for unexpanded shuffle expressions such as `−(1⧢2−21)⧢4+1⧢42`.
//!
//! Grammar, loosest first:
//!
//! ```text
//! sum     := ['+'|'-'] shuffle (('+'|'-') shuffle)*
//! shuffle := concat ('⧢' concat)*
//! concat  := atom+
//! atom    := digit | 'e' | '∅' | '(' sum ')'
//! ```
//!
//! Juxtaposition concatenates and binds tighter than `⧢`. Each digit is one
//! letter; `0` alone denotes the zero element. `−` and `-` are both minus,
//! and `x`, `*` may stand in for `⧢`.

use crate::algebra::Element;
use crate::error::{Error, Result};

pub fn parse_expression(src: &str) -> Result<Element> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    if chars == ['0'] {
        return Ok(Element::zero());
    }
    let mut p = Parser { chars, pos: 0 };
    let out = p.sum()?;
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(out)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, msg: &str) -> Error {
        let s: String = self.chars.iter().collect();
        Error::Parse(format!("{msg} at position {} in `{s}`", self.pos))
    }

    fn sign(&mut self) -> Option<i64> {
        match self.peek()? {
            '+' => {
                self.pos += 1;
                Some(1)
            }
            '-' | '−' => {
                self.pos += 1;
                Some(-1)
            }
            _ => None,
        }
    }

    fn sum(&mut self) -> Result<Element> {
        let first = self.sign().unwrap_or(1);
        let mut out = self.shuffle()?.scale(first)?;
        while let Some(s) = self.sign() {
            out.add_assign(&self.shuffle()?.scale(s)?)?;
        }
        Ok(out)
    }

    fn shuffle(&mut self) -> Result<Element> {
        let mut out = self.concat()?;
        while matches!(self.peek(), Some('⧢' | 'x' | '*')) {
            self.pos += 1;
            out = out.shuffle(&self.concat()?)?;
        }
        Ok(out)
    }

    fn concat(&mut self) -> Result<Element> {
        let mut out = self
            .atom()?
            .ok_or_else(|| self.error("expected a letter or `(`"))?;
        while let Some(next) = self.atom()? {
            out = out.concat(&next)?;
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Option<Element>> {
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        let out = match c {
            '1'..='9' => Element::from_word(crate::words::Word::new(&[c as u8 - b'0'])?),
            'e' | '∅' => Element::one(),
            '(' => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                inner
            }
            _ => return Ok(None),
        };
        self.pos += 1;
        Ok(Some(out))
    }
}
