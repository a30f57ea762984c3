//! Text formats: universe files and multisegment expressions.
//!
//! ```text
//! # comments run to the end of the line
//! tower rho {
//!     degree 2;
//!     tau self;
//!     dual -> rho_d;
//!     chi -> rho_chi;
//! }
//! ```
//!
//! Multisegments are written `Delta(rho,-1/2,1/2) + Delta(triv,0,0)`; the empty
//! multisegment is `1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::multisegment::Multisegment;
use crate::rational::{parse_q, Q};
use crate::segment::Segment;
use crate::universe::{Partner, TowerDecl, Universe, UniverseBuilder};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Arrow,
    Punct(char),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            advance(1, &mut i);
        } else if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                advance(1, &mut i);
            }
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            advance(2, &mut i);
            out.push(Spanned {
                tok: Tok::Arrow,
                line: l0,
                col: c0,
            });
        } else if c.is_ascii_digit() || c == '-' || c == '+' && is_num_start(&chars, i) {
            let start = i;
            if c == '-' || c == '+' {
                advance(1, &mut i);
            }
            let digits = |i: &mut usize, col: &mut usize| {
                let s = *i;
                while *i < chars.len() && chars[*i].is_ascii_digit() {
                    *i += 1;
                    *col += 1;
                }
                *i > s
            };
            if !digits(&mut i, &mut col) {
                return Err(syntax(l0, c0, "expected a number"));
            }
            if chars.get(i) == Some(&'/') {
                i += 1;
                col += 1;
                if !digits(&mut i, &mut col) {
                    return Err(syntax(line, col, "expected a denominator"));
                }
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Spanned {
                tok: Tok::Num(text),
                line: l0,
                col: c0,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                advance(1, &mut i);
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Spanned {
                tok: Tok::Ident(text),
                line: l0,
                col: c0,
            });
        } else if "{};(),+".contains(c) {
            advance(1, &mut i);
            out.push(Spanned {
                tok: Tok::Punct(c),
                line: l0,
                col: c0,
            });
        } else {
            return Err(syntax(l0, c0, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

// a leading `+` is a sign only where a number is expected, i.e. right after `(` or `,`
fn is_num_start(chars: &[char], i: usize) -> bool {
    let prev = chars[..i].iter().rev().find(|c| !c.is_whitespace());
    matches!(prev, Some('(') | Some(',')) && chars.get(i + 1).is_some_and(|c| c.is_ascii_digit())
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        let toks = lex(src)?;
        let lines: Vec<&str> = src.split('\n').collect();
        let end = (
            lines.len(),
            lines.last().map_or(0, |l| l.chars().count()) + 1,
        );
        Ok(Parser { toks, pos: 0, end })
    }

    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.col))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (l, c) = self.here();
        syntax(l, c, msg)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn punct(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Spanned {
                tok: Tok::Punct(p), ..
            }) if *p == c => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected `{c}`"))),
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        self.punct(c).is_ok()
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Spanned {
                tok: Tok::Ident(s), ..
            }) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn number(&mut self, what: &str) -> Result<(String, usize, usize)> {
        match self.peek() {
            Some(Spanned {
                tok: Tok::Num(s),
                line,
                col,
            }) => {
                let r = (s.clone(), *line, *col);
                self.pos += 1;
                Ok(r)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn rational(&mut self) -> Result<Q> {
        let (s, l, c) = self.number("a rational number")?;
        parse_q(&s).ok_or_else(|| syntax(l, c, format!("invalid rational `{s}`")))
    }

    fn partner(&mut self) -> Result<Partner> {
        if let Some(Spanned {
            tok: Tok::Ident(s), ..
        }) = self.peek()
        {
            if s == "self" {
                self.pos += 1;
                return Ok(Partner::SelfRef);
            }
        }
        match self.peek() {
            Some(Spanned {
                tok: Tok::Arrow, ..
            }) => {
                self.pos += 1;
                Ok(Partner::Named(self.ident("a tower name")?))
            }
            _ => Err(self.err("expected `self` or `-> NAME`")),
        }
    }

    fn tower(&mut self) -> Result<TowerDecl> {
        match self.next() {
            Some(Spanned {
                tok: Tok::Ident(k), ..
            }) if k == "tower" => {}
            _ => {
                self.pos -= 1;
                return Err(self.err("expected `tower`"));
            }
        }
        let id = self.ident("a tower name")?;
        if id == "self" || id == "tower" {
            self.pos -= 1;
            return Err(self.err(format!("`{id}` is reserved")));
        }
        self.punct('{')?;
        let mut decl = TowerDecl {
            id,
            degree: None,
            tau: Partner::SelfRef,
            dual: Partner::SelfRef,
            chi: None,
            gamma: None,
        };
        let mut seen: Vec<String> = Vec::new();
        while !self.eat_punct('}') {
            let (l, c) = self.here();
            let field = self.ident("a field name or `}`")?;
            if seen.contains(&field) {
                return Err(syntax(l, c, format!("field `{field}` given twice")));
            }
            match field.as_str() {
                "degree" => {
                    let (s, l, c) = self.number("an integer degree")?;
                    let d = s.parse::<i64>().map_err(|_| {
                        syntax(l, c, format!("degree must be an integer, got `{s}`"))
                    })?;
                    decl.degree = Some(d);
                }
                "tau" => decl.tau = self.partner()?,
                "dual" => decl.dual = self.partner()?,
                "chi" => decl.chi = Some(self.partner()?),
                "gamma" => {
                    let (s, l, c) = self.number("0 or 1")?;
                    decl.gamma = Some(match s.as_str() {
                        "0" => 0,
                        "1" => 1,
                        _ => return Err(syntax(l, c, format!("gamma must be 0 or 1, got `{s}`"))),
                    });
                }
                other => return Err(syntax(l, c, format!("unknown field `{other}`"))),
            }
            seen.push(field);
            self.punct(';')?;
        }
        Ok(decl)
    }
}

/// Parses the declarations of a universe file without resolving them.
pub fn parse_declarations(src: &str) -> Result<Vec<TowerDecl>> {
    let mut p = Parser::new(src)?;
    let mut out = Vec::new();
    while !p.at_end() {
        out.push(p.tower()?);
    }
    Ok(out)
}

pub fn parse_universe(src: &str) -> Result<Universe> {
    let mut b = UniverseBuilder::new();
    for d in parse_declarations(src)? {
        b.declare(d)?;
    }
    b.build()
}

/// Canonical text of a universe, with every partner written out.
pub fn print_universe(u: &Universe) -> String {
    let mut s = String::new();
    for d in u.declarations() {
        let partner = |p: &Partner| match p {
            Partner::SelfRef => "self".to_string(),
            Partner::Named(n) => format!("-> {n}"),
        };
        s.push_str(&format!("tower {} {{\n", d.id));
        s.push_str(&format!("    degree {};\n", d.degree.unwrap_or(1)));
        s.push_str(&format!("    tau {};\n", partner(&d.tau)));
        s.push_str(&format!("    dual {};\n", partner(&d.dual)));
        if let Some(c) = &d.chi {
            s.push_str(&format!("    chi {};\n", partner(c)));
        }
        if let Some(g) = d.gamma {
            s.push_str(&format!("    gamma {g};\n"));
        }
        s.push_str("}\n");
    }
    s
}

pub fn parse_segment_list(src: &str, u: &Universe) -> Result<Vec<Segment>> {
    let mut p = Parser::new(src)?;
    if p.at_end() {
        return Ok(Vec::new());
    }
    if let Some(Spanned {
        tok: Tok::Num(s), ..
    }) = p.peek()
    {
        if s == "1" {
            p.pos += 1;
            if !p.at_end() {
                return Err(p.err("unexpected input after `1`"));
            }
            return Ok(Vec::new());
        }
    }
    let mut segs = Vec::new();
    loop {
        match p.ident("`Delta`")?.as_str() {
            "Delta" => {}
            other => {
                p.pos -= 1;
                return Err(p.err(format!("expected `Delta`, got `{other}`")));
            }
        }
        p.punct('(')?;
        let name = p.ident("a tower name")?;
        let tower = u.lookup(&name)?;
        p.punct(',')?;
        let a = p.rational()?;
        p.punct(',')?;
        let b = p.rational()?;
        p.punct(')')?;
        segs.push(Segment::new(tower, a, b)?);
        if p.at_end() {
            break;
        }
        p.punct('+')?;
    }
    Ok(segs)
}

pub fn parse_multisegment(src: &str, u: &Universe) -> Result<Multisegment> {
    Ok(Multisegment::new(parse_segment_list(src, u)?))
}

pub struct MultisegmentDisplay<'a> {
    pub ms: &'a Multisegment,
    pub u: &'a Universe,
}

impl fmt::Display for MultisegmentDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ms.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.ms.segments().iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", s.display(self.u))?;
        }
        Ok(())
    }
}

pub fn print_segments(u: &Universe, segs: &[Segment]) -> String {
    if segs.is_empty() {
        return "1".into();
    }
    segs.iter()
        .map(|s| s.display(u).to_string())
        .collect::<Vec<_>>()
        .join(" + ")
}
