//! Reader for the textual term format:
//!
//! ```text
//! S   Z   P[n,i]   C[g; h1, h2, ...]   R[g; h]   BMU[p; b]   MU[p]   name
//! DEF name = term
//! ```
//!
//! Whitespace is insignificant and `#` starts a comment running to the end of
//! the line, so a definition may span several lines.

use super::term::Term;
use super::PrfError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    Open,
    Close,
    Semi,
    Comma,
    Eq,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, PrfError> {
    let mut lx = Lexer { src, toks: Vec::new() };
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'[' => {
                lx.toks.push((i, Tok::Open));
                i += 1;
            }
            b']' => {
                lx.toks.push((i, Tok::Close));
                i += 1;
            }
            b';' => {
                lx.toks.push((i, Tok::Semi));
                i += 1;
            }
            b',' => {
                lx.toks.push((i, Tok::Comma));
                i += 1;
            }
            b'=' => {
                lx.toks.push((i, Tok::Eq));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = lx.src[start..i]
                    .parse()
                    .map_err(|_| parse_err(src, start, "number out of range"))?;
                lx.toks.push((start, Tok::Num(n)));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                lx.toks.push((start, Tok::Ident(lx.src[start..i].to_string())));
            }
            _ => return Err(parse_err(src, i, &format!("unexpected character {:?}", c as char))),
        }
    }
    Ok(lx.toks)
}

fn parse_err(src: &str, pos: usize, msg: &str) -> PrfError {
    let before = &src[..pos.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |k| k + 1) + 1;
    PrfError::Parse {
        line,
        col,
        msg: msg.to_string(),
    }
}

const KEYWORDS: [&str; 8] = ["S", "Z", "P", "C", "R", "BMU", "MU", "DEF"];

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.src.len(), |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn err(&self, msg: &str) -> PrfError {
        parse_err(self.src, self.pos(), msg)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), PrfError> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {what}")))
        }
    }

    fn number(&mut self) -> Result<usize, PrfError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.at += 1;
                Ok(n)
            }
            _ => Err(self.err("expected a number")),
        }
    }

    fn term(&mut self) -> Result<Term, PrfError> {
        let name = match self.peek() {
            Some(Tok::Ident(name)) => name.clone(),
            _ => return Err(self.err("expected a term")),
        };
        self.at += 1;
        match name.as_str() {
            "S" => Ok(Term::succ()),
            "Z" => Ok(Term::zero()),
            "P" => {
                self.expect(Tok::Open, "'['")?;
                let n = self.number()?;
                self.expect(Tok::Comma, "','")?;
                let i = self.number()?;
                self.expect(Tok::Close, "']'")?;
                Ok(Term::proj(n, i))
            }
            "C" => {
                self.expect(Tok::Open, "'['")?;
                let g = self.term()?;
                self.expect(Tok::Semi, "';'")?;
                let mut hs = vec![self.term()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.at += 1;
                    hs.push(self.term()?);
                }
                self.expect(Tok::Close, "']'")?;
                Ok(Term::comp(g, hs))
            }
            "R" | "BMU" => {
                self.expect(Tok::Open, "'['")?;
                let a = self.term()?;
                self.expect(Tok::Semi, "';'")?;
                let b = self.term()?;
                self.expect(Tok::Close, "']'")?;
                Ok(if name == "R" {
                    Term::rec(a, b)
                } else {
                    Term::bounded_mu(a, b)
                })
            }
            "MU" => {
                self.expect(Tok::Open, "'['")?;
                let p = self.term()?;
                self.expect(Tok::Close, "']'")?;
                Ok(Term::mu(p))
            }
            "DEF" => {
                self.at -= 1;
                Err(self.err("unexpected DEF inside a term"))
            }
            _ => Ok(Term::reference(name)),
        }
    }

    fn done(&self) -> bool {
        self.at >= self.toks.len()
    }
}

/// Parses a single term. Arities are not checked here.
pub fn parse_term(src: &str) -> Result<Term, PrfError> {
    let toks = lex(src)?;
    let mut p = Parser { src, toks, at: 0 };
    let t = p.term()?;
    if !p.done() {
        return Err(p.err("trailing input after term"));
    }
    Ok(t)
}

/// Parses a sequence of `DEF name = term` statements.
pub fn parse_defs(src: &str) -> Result<Vec<(String, Term)>, PrfError> {
    let toks = lex(src)?;
    let mut p = Parser { src, toks, at: 0 };
    let mut out = Vec::new();
    while !p.done() {
        match p.peek() {
            Some(Tok::Ident(kw)) if kw == "DEF" => p.at += 1,
            _ => return Err(p.err("expected DEF")),
        }
        let name = match p.peek() {
            Some(Tok::Ident(name)) if !KEYWORDS.contains(&name.as_str()) => name.clone(),
            _ => return Err(p.err("expected a definition name")),
        };
        p.at += 1;
        p.expect(Tok::Eq, "'='")?;
        out.push((name, p.term()?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_form() {
        let t = parse_term("C[ R[P[1,1]; C[S; P[3,3]]] ; P[2,1], P[2,2] ]").unwrap();
        assert_eq!(t.to_string(), "C[R[P[1,1]; C[S; P[3,3]]]; P[2,1], P[2,2]]");
        let t = parse_term("BMU[MU[P[3,3]]; Z]").unwrap();
        assert_eq!(t.to_string(), "BMU[MU[P[3,3]]; Z]");
        assert_eq!(parse_term("add").unwrap(), Term::reference("add"));
    }

    #[test]
    fn reports_position() {
        let err = parse_term("C[S;\n  P[1,1]").unwrap_err();
        assert!(matches!(err, PrfError::Parse { line: 2, .. }), "{err}");
        assert!(matches!(parse_term("S S"), Err(PrfError::Parse { .. })));
        assert!(matches!(parse_term("P[1]"), Err(PrfError::Parse { .. })));
        assert!(matches!(parse_term("C[S]"), Err(PrfError::Parse { .. })));
    }

    #[test]
    fn parses_defs_with_comments() {
        let defs = parse_defs("# header\nDEF one = C[S; Z] # tail\nDEF two =\n  C[S; one]\n").unwrap();
        assert_eq!(defs.len(), 2);
        assert_eq!(defs[1].0, "two");
        assert!(parse_defs("DEF S = Z").is_err());
        assert!(parse_defs("one = Z").is_err());
    }
}
