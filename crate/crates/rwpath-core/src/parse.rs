//! Parser for the path-term grammar.
//!
//! Grammar (whitespace is allowed between tokens, canonical output has none):
//!
//! ```text
//! term  ::= "rho" ("@" ident)?
//!         | "sigma" "(" term ")"          | "tau"  "(" term "," term ")"
//!         | "xi1" "(" term ")"            | "xi2"  "(" term ")"
//!         | "xiand" "(" term "," term ")"
//!         | "xi" "(" term ("," term)? ")"
//!         | "mu1" "(" term ")"            | "mu2" "(" term ")"
//!         | "mu" "(" term ("," term ("," term)?)? ")"
//!         | "nu" "(" term ")"
//!         | "subl" "(" term "," term ")"  | "subr" "(" term "," term ")"
//!         | "muf" "(" fun "," term ")"
//!         | ident                                      (an atomic path)
//! fun   ::= "(" fun ")" ("." fun)? | "id" | ident ("." fun)?
//! ident ::= [a-z][a-z0-9_]*
//! ```
//!
//! Constructor words are reserved and cannot name atoms. Arity picks the
//! constructor where one written name covers several formers: `xi` with one
//! or two arguments, `mu` with one, two or three.

use crate::term::{FunLabel, PathTerm, TermError};

const RESERVED: &[&str] = &[
    "rho", "sigma", "tau", "xi1", "xi2", "xiand", "xi", "mu1", "mu2", "mu", "nu", "subl", "subr",
    "muf",
];

pub fn parse_term(input: &str) -> Result<PathTerm, TermError> {
    parse_with_mode(input, false)
}

/// Parse a rule schema: bare identifiers become metavariables, `C[..]`
/// becomes a context application, and μ_f labels become label variables.
pub fn parse_schema(input: &str) -> Result<PathTerm, TermError> {
    parse_with_mode(input, true)
}

fn parse_with_mode(input: &str, schema: bool) -> Result<PathTerm, TermError> {
    let mut p = Parser::new(input, schema);
    let t = p.term()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("trailing input after term"));
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    schema: bool,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, schema: bool) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            schema,
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn line_col(&self) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &b in &self.src[..self.pos.min(self.src.len())] {
            if b == b'\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error(&self, msg: &str) -> TermError {
        let (line, col) = self.line_col();
        TermError::Parse {
            line,
            col,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(b) = self.peek() {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), TermError> {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", b as char)))
        }
    }

    fn ident(&mut self) -> Result<String, TermError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(b) if b.is_ascii_lowercase() => self.pos += 1,
            _ => return Err(self.error("expected an identifier")),
        }
        while let Some(b) = self.peek() {
            if b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .expect("identifier bytes are ascii")
            .to_string())
    }

    fn args(&mut self, min: usize, max: usize) -> Result<Vec<PathTerm>, TermError> {
        self.expect(b'(')?;
        let mut out = vec![self.term()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    out.push(self.term()?);
                }
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error("expected ',' or ')'")),
            }
        }
        if out.len() < min || out.len() > max {
            return Err(self.error(&format!(
                "wrong argument count: got {}, expected {}..{}",
                out.len(),
                min,
                max
            )));
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<PathTerm, TermError> {
        self.skip_ws();
        if self.schema && self.peek() == Some(b'C') {
            self.pos += 1;
            self.expect(b'[')?;
            let body = self.term()?;
            self.expect(b']')?;
            return Ok(PathTerm::ctx(0, body));
        }
        let word = self.ident()?;
        match word.as_str() {
            "rho" => {
                if self.peek() == Some(b'@') {
                    self.pos += 1;
                    let x = self.ident()?;
                    Ok(PathTerm::rho_at(&x))
                } else {
                    Ok(PathTerm::rho())
                }
            }
            "sigma" => {
                let mut a = self.args(1, 1)?;
                Ok(PathTerm::sigma(a.remove(0)))
            }
            "tau" => {
                let mut a = self.args(2, 2)?;
                Ok(PathTerm::tau(a.remove(0), a.remove(0)))
            }
            "xi1" => {
                let mut a = self.args(1, 1)?;
                Ok(PathTerm::xi1(a.remove(0)))
            }
            "xi2" => {
                let mut a = self.args(1, 1)?;
                Ok(PathTerm::xi2(a.remove(0)))
            }
            "xiand" => {
                let mut a = self.args(2, 2)?;
                Ok(PathTerm::xiand(a.remove(0), a.remove(0)))
            }
            "xi" => {
                let mut a = self.args(1, 2)?;
                if a.len() == 1 {
                    Ok(PathTerm::xi(a.remove(0)))
                } else {
                    Ok(PathTerm::xipair(a.remove(0), a.remove(0)))
                }
            }
            "mu1" => {
                let mut a = self.args(1, 1)?;
                Ok(PathTerm::mu1(a.remove(0)))
            }
            "mu2" => {
                let mut a = self.args(1, 1)?;
                Ok(PathTerm::mu2(a.remove(0)))
            }
            "mu" => {
                let mut a = self.args(1, 3)?;
                match a.len() {
                    1 => Ok(PathTerm::mu(a.remove(0))),
                    2 => Ok(PathTerm::mub(a.remove(0), a.remove(0))),
                    _ => Ok(PathTerm::mut3(a.remove(0), a.remove(0), a.remove(0))),
                }
            }
            "nu" => {
                let mut a = self.args(1, 1)?;
                Ok(PathTerm::nu(a.remove(0)))
            }
            "subl" => {
                let mut a = self.args(2, 2)?;
                Ok(PathTerm::subl(a.remove(0), a.remove(0)))
            }
            "subr" => {
                let mut a = self.args(2, 2)?;
                Ok(PathTerm::subr(a.remove(0), a.remove(0)))
            }
            "muf" => {
                self.expect(b'(')?;
                let l = self.fun_label()?;
                self.expect(b',')?;
                let t = self.term()?;
                self.expect(b')')?;
                Ok(PathTerm::muf(l, t))
            }
            name => {
                debug_assert!(!RESERVED.contains(&name));
                if self.schema {
                    Ok(PathTerm::var(name))
                } else {
                    Ok(PathTerm::atom(name))
                }
            }
        }
    }

    fn fun_label(&mut self) -> Result<FunLabel, TermError> {
        self.skip_ws();
        let head = if self.peek() == Some(b'(') {
            self.pos += 1;
            let inner = self.fun_label()?;
            self.expect(b')')?;
            inner
        } else {
            let name = self.ident()?;
            if name == "id" {
                FunLabel::Identity
            } else {
                FunLabel::Plain(name)
            }
        };
        self.skip_ws();
        if self.peek() == Some(b'.') {
            self.pos += 1;
            let rest = self.fun_label()?;
            Ok(FunLabel::compose(head, rest))
        } else {
            Ok(head)
        }
    }
}
