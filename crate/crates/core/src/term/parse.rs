use super::{require_fragment, ExtLetter, ExtWord, FragmentClass, Term};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Bang,
    Plus,
    Semi,
    Star,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(x) => format!("identifier `{x}`"),
            Tok::Zero => "`0`".into(),
            Tok::One => "`1`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Star => "`*`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self, Tok::Ident(_) | Tok::Zero | Tok::One | Tok::Bang | Tok::LParen)
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        i += 1;
        let tok = match c {
            c if c.is_whitespace() => continue,
            '0' => Tok::Zero,
            '1' => Tok::One,
            '!' => Tok::Bang,
            '+' => Tok::Plus,
            ';' => Tok::Semi,
            '*' => Tok::Star,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_alphabetic() => {
                let mut name = String::from(c);
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                    name.push(chars[i].1);
                    i += 1;
                }
                Tok::Ident(name)
            }
            other => {
                return Err(Error::Syntax {
                    position: pos,
                    expected: vec!["a term".into()],
                    found: format!("character `{other}`"),
                })
            }
        };
        out.push((pos, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        let (position, tok) = &self.toks[self.at];
        Err(Error::Syntax {
            position: *position,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.describe(),
        })
    }

    fn sum(&mut self) -> Result<Term> {
        let mut t = self.cat()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            t = Term::plus(t, self.cat()?);
        }
        Ok(t)
    }

    fn cat(&mut self) -> Result<Term> {
        let mut t = self.unary()?;
        loop {
            if *self.peek() == Tok::Semi {
                self.bump();
            } else if !self.peek().starts_atom() {
                return Ok(t);
            }
            t = Term::seq(t, self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            t = Term::star(t);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Zero => {
                self.bump();
                Ok(Term::Zero)
            }
            Tok::One => {
                self.bump();
                Ok(Term::One)
            }
            Tok::Bang => {
                self.bump();
                Ok(self.atom()?.negate())
            }
            Tok::Ident(x) => {
                self.bump();
                Ok(Term::Var(x))
            }
            Tok::LParen => {
                self.bump();
                let t = self.sum()?;
                if *self.peek() != Tok::RParen {
                    return self.fail(&["`)`", "`+`", "`;`", "`*`"]);
                }
                self.bump();
                Ok(t)
            }
            _ => self.fail(&["`0`", "`1`", "`!`", "identifier", "`(`"]),
        }
    }
}

/// Parses `text` and checks that it stays within `allowed`.
///
/// `xy` without a space is a single identifier; write `x y` or `x ; y` for
/// composition.
pub fn parse_term(text: &str, allowed: FragmentClass) -> Result<Term> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let t = p.sum()?;
    if *p.peek() != Tok::End {
        return p.fail(&["`+`", "`;`", "`*`", "a term", "end of input"]);
    }
    require_fragment(&t, allowed)?;
    Ok(t)
}

/// Parses whitespace-separated tokens `x`, `!x`, `!1`; blank input is the
/// empty word.
pub fn parse_ext_word(text: &str) -> Result<ExtWord> {
    let mut letters = Vec::new();
    let mut offset = 0;
    for tok in text.split_whitespace() {
        let position = text[offset..].find(tok).map_or(offset, |p| p + offset);
        offset = position + tok.len();
        let (neg, name) = match tok.strip_prefix('!') {
            Some(rest) => (true, rest),
            None => (false, tok),
        };
        let letter = if neg && name == "1" {
            ExtLetter::NotOne
        } else if is_ident(name) {
            if neg {
                ExtLetter::Neg(name.to_string())
            } else {
                ExtLetter::Pos(name.to_string())
            }
        } else {
            return Err(Error::Syntax {
                position,
                expected: vec!["`x`, `!x` or `!1`".into()],
                found: format!("`{tok}`"),
            });
        };
        letters.push(letter);
    }
    Ok(ExtWord(letters))
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
