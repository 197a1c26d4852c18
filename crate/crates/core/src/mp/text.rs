//! Parser for the line-oriented program text produced by `Display`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use thiserror::Error;

use super::expr::{Expr, Feature, Side};
use super::program::{Layer, MPProgram};
use crate::extraction::BagMode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseProgramError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token<'a> {
    Open,
    Close,
    LBracket,
    RBracket,
    Arrow,
    Atom(&'a str),
}

fn tokenize(s: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' => i += 1,
            b'(' => {
                out.push(Token::Open);
                i += 1;
            }
            b')' => {
                out.push(Token::Close);
                i += 1;
            }
            b'[' => {
                out.push(Token::LBracket);
                i += 1;
            }
            b']' => {
                out.push(Token::RBracket);
                i += 1;
            }
            _ => {
                let start = i;
                while i < bytes.len() && !b" \t()[]".contains(&bytes[i]) {
                    i += 1;
                }
                let atom = &s[start..i];
                out.push(if atom == "->" { Token::Arrow } else { Token::Atom(atom) });
            }
        }
    }
    out
}

struct Cursor<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn next(&mut self) -> Result<Token<'a>, String> {
        let t = self.tokens.get(self.pos).cloned().ok_or("unexpected end of line")?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: Token<'_>) -> Result<(), String> {
        let got = self.next()?;
        if got == want {
            Ok(())
        } else {
            Err(format!("expected {want:?}, found {got:?}"))
        }
    }

    fn atom(&mut self) -> Result<&'a str, String> {
        match self.next()? {
            Token::Atom(a) => Ok(a),
            t => Err(format!("expected atom, found {t:?}")),
        }
    }

    fn index(&mut self) -> Result<usize, String> {
        let a = self.atom()?;
        a.parse().map_err(|_| format!("bad component index `{a}`"))
    }

    fn list(&mut self) -> Result<Vec<Expr>, String> {
        self.expect(Token::LBracket)?;
        let mut out = Vec::new();
        loop {
            if self.tokens.get(self.pos) == Some(&Token::RBracket) {
                self.pos += 1;
                return Ok(out);
            }
            out.push(self.expr()?);
        }
    }

    fn feature(&mut self) -> Result<Feature, String> {
        Ok(match self.atom()? {
            "root" => Feature::Root,
            "branch" => Feature::Branch,
            "root-adj" => Feature::RootAdj,
            "branch-adj" => Feature::BranchAdj,
            "spd" => Feature::Spd,
            "spd-branch" => Feature::SpdBranch,
            "attr" => Feature::Attr(self.index()?),
            other => return Err(format!("unknown feature `{other}`")),
        })
    }

    fn expr(&mut self) -> Result<Expr, String> {
        match self.next()? {
            Token::Atom("edge-attr") => Ok(Expr::EdgeAttr),
            Token::Atom(a) => a
                .parse()
                .map(Expr::Const)
                .map_err(|_| format!("bad literal `{a}`")),
            Token::Open => {
                let head = self.atom()?;
                let e = match head {
                    "own" => Expr::Own(self.index()?),
                    "nbr" => Expr::Nbr(self.index()?),
                    "msg" => Expr::Msg(self.index()?),
                    "pool" => Expr::Pool(self.index()?),
                    "self" => Expr::Feat(Side::Own, self.feature()?),
                    "other" => Expr::Feat(Side::Nbr, self.feature()?),
                    "+" | "-" | "*" => {
                        let a = Box::new(self.expr()?);
                        let b = Box::new(self.expr()?);
                        match head {
                            "+" => Expr::Add(a, b),
                            "-" => Expr::Sub(a, b),
                            _ => Expr::Mul(a, b),
                        }
                    }
                    "nz" => Expr::NonZero(Box::new(self.expr()?)),
                    "pos" => Expr::Positive(Box::new(self.expr()?)),
                    other => return Err(format!("unknown operator `{other}`")),
                };
                self.expect(Token::Close)?;
                Ok(e)
            }
            t => Err(format!("unexpected {t:?}")),
        }
    }

    fn done(&self) -> Result<(), String> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            Err("trailing tokens".to_string())
        }
    }
}

impl FromStr for Expr {
    type Err = ParseProgramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor {
            tokens: tokenize(s),
            pos: 0,
        };
        cur.expr()
            .and_then(|e| cur.done().map(|_| e))
            .map_err(|message| ParseProgramError { line: 1, message })
    }
}

impl FromStr for MPProgram {
    type Err = ParseProgramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut program: Option<MPProgram> = None;
        for (n, raw) in s.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| ParseProgramError { line: n + 1, message };
            let mut cur = Cursor {
                tokens: tokenize(line),
                pos: 0,
            };
            match cur.atom().map_err(err)? {
                "program" => {
                    let name = cur.atom().map_err(err)?;
                    let mode = match cur.atom().map_err(err)? {
                        "node" => BagMode::Node,
                        "pair" => BagMode::Pair,
                        other => return Err(err(format!("unknown mode `{other}`"))),
                    };
                    program = Some(MPProgram::new(name, mode));
                }
                "init" => {
                    let p = program.as_mut().ok_or_else(|| err("missing header".into()))?;
                    p.init = cur.list().map_err(err)?;
                }
                "layer" => {
                    let p = program.as_mut().ok_or_else(|| err("missing header".into()))?;
                    let message = cur.list().map_err(err)?;
                    cur.expect(Token::Arrow).map_err(err)?;
                    let update = cur.list().map_err(err)?;
                    p.layers.push(Layer::new(message, update));
                }
                other => return Err(err(format!("unknown directive `{other}`"))),
            }
            cur.done().map_err(err)?;
        }
        program.ok_or(ParseProgramError {
            line: 0,
            message: "empty program".to_string(),
        })
    }
}
