//! Constructor expressions.
//!
//! ```text
//! expr   := term { "+" term }
//! term   := factor { ("*" | "&" | "x" | "u") factor }
//! factor := atom | func "(" args ")" | "(" expr ")"
//! func   := bary | susp | comp | refine | join | sabidussi | shannon | cartesian | union
//! atom   := C<n> | K<n> | P<n> | Path<n> | OCT | ICO | CELL600 | file:<path>
//! ```
//!
//! `+` is the join, `*` the Sabidussi product, `&` the Shannon product, `x`
//! the Cartesian product and `u` the disjoint union. `P<n>` is `n` isolated
//! points. Binary operators are left associative; `x` and `u` must be
//! separated from their operands by whitespace.

use std::fmt;

use crate::builders;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest generator size an expression may request.
pub const MAX_GENERATOR: usize = 100_000;
pub const MAX_COMPLETE: usize = 2_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Cycle(usize),
    Complete(usize),
    Points(usize),
    Path(usize),
    Octahedron,
    Icosahedron,
    Cell600,
    File(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Join,
    Sabidussi,
    Shannon,
    Cartesian,
    Union,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Join => "+",
            BinOp::Sabidussi => "*",
            BinOp::Shannon => "&",
            BinOp::Cartesian => "x",
            BinOp::Union => "u",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Atom(Atom),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Bary(Box<Expr>),
    Susp(Box<Expr>),
    Comp(Box<Expr>),
    Refine(Box<Expr>, usize, usize),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Cycle(n) => write!(f, "C{n}"),
            Atom::Complete(n) => write!(f, "K{n}"),
            Atom::Points(n) => write!(f, "P{n}"),
            Atom::Path(n) => write!(f, "Path{n}"),
            Atom::Octahedron => write!(f, "OCT"),
            Atom::Icosahedron => write!(f, "ICO"),
            Atom::Cell600 => write!(f, "CELL600"),
            Atom::File(p) => write!(f, "file:{p}"),
        }
    }
}

/// Binary nodes are always parenthesized, so printing and reparsing gives
/// back the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
            Expr::Bary(e) => write!(f, "bary({e})"),
            Expr::Susp(e) => write!(f, "susp({e})"),
            Expr::Comp(e) => write!(f, "comp({e})"),
            Expr::Refine(e, u, v) => write!(f, "refine({e}, {u}, {v})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(usize),
    File(String),
    Sym(char),
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if "+*&(),".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = text[start..i].parse().map_err(|_| err(start, "integer out of range"))?;
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            if word == "file" && bytes.get(i) == Some(&b':') {
                i += 1;
                let p = i;
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() && !b"(),".contains(&bytes[i]) {
                    i += 1;
                }
                if p == i {
                    return Err(err(p, "empty file path"));
                }
                out.push((start, Tok::File(text[p..i].to_string())));
            } else {
                out.push((start, Tok::Ident(word.to_string())));
            }
        } else {
            return Err(err(i, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, c: char) -> Result<()> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Sym(s)) if s == c => Ok(()),
            Some(t) => Err(err(pos, format!("expected '{c}', found {t:?}"))),
            None => Err(err(pos, format!("expected '{c}', found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut left = self.term()?;
        while self.peek() == Some(&Tok::Sym('+')) {
            self.bump();
            let right = self.term()?;
            left = Expr::Binary(BinOp::Join, Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn term_op(&self) -> Option<BinOp> {
        match self.peek()? {
            Tok::Sym('*') => Some(BinOp::Sabidussi),
            Tok::Sym('&') => Some(BinOp::Shannon),
            Tok::Ident(w) if w == "x" => Some(BinOp::Cartesian),
            Tok::Ident(w) if w == "u" => Some(BinOp::Union),
            _ => None,
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut left = self.factor()?;
        while let Some(op) = self.term_op() {
            self.bump();
            let right = self.factor()?;
            left = Expr::Binary(op, Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn int(&mut self) -> Result<usize> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(n),
            _ => Err(err(pos, "expected a vertex number")),
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Sym('(')) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::File(p)) => Ok(Expr::Atom(Atom::File(p))),
            Some(Tok::Ident(w)) => {
                if self.peek() == Some(&Tok::Sym('(')) {
                    self.bump();
                    self.call(&w, pos)
                } else {
                    atom(&w).map(Expr::Atom).ok_or_else(|| err(pos, format!("unknown generator {w:?}")))
                }
            }
            Some(t) => Err(err(pos, format!("expected a graph, found {t:?}"))),
            None => Err(err(pos, "expected a graph, found end of input")),
        }
    }

    fn call(&mut self, name: &str, pos: usize) -> Result<Expr> {
        let unary = |e: Expr| -> Option<Expr> {
            match name {
                "bary" => Some(Expr::Bary(Box::new(e))),
                "susp" => Some(Expr::Susp(Box::new(e))),
                "comp" => Some(Expr::Comp(Box::new(e))),
                _ => None,
            }
        };
        let binary = match name {
            "join" => Some(BinOp::Join),
            "sabidussi" => Some(BinOp::Sabidussi),
            "shannon" => Some(BinOp::Shannon),
            "cartesian" => Some(BinOp::Cartesian),
            "union" => Some(BinOp::Union),
            _ => None,
        };
        let first = self.expr()?;
        let out = if name == "refine" {
            self.expect(',')?;
            let u = self.int()?;
            self.expect(',')?;
            let v = self.int()?;
            Expr::Refine(Box::new(first), u, v)
        } else if let Some(op) = binary {
            self.expect(',')?;
            let second = self.expr()?;
            Expr::Binary(op, Box::new(first), Box::new(second))
        } else if let Some(e) = unary(first) {
            e
        } else {
            return Err(err(pos, format!("unknown function {name:?}")));
        };
        if self.peek() == Some(&Tok::Sym(',')) {
            return Err(err(self.pos(), format!("too many arguments to {name}")));
        }
        self.expect(')')?;
        Ok(out)
    }
}

fn atom(word: &str) -> Option<Atom> {
    let sized = |prefix: &str| -> Option<usize> {
        let rest = word.strip_prefix(prefix)?;
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        rest.parse().ok()
    };
    match word {
        "OCT" => Some(Atom::Octahedron),
        "ICO" => Some(Atom::Icosahedron),
        "CELL600" => Some(Atom::Cell600),
        _ => sized("Path")
            .map(Atom::Path)
            .or_else(|| sized("C").map(Atom::Cycle))
            .or_else(|| sized("K").map(Atom::Complete))
            .or_else(|| sized("P").map(Atom::Points)),
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, at: 0, end: text.len() };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(err(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

fn checked_size(n: usize) -> Result<usize> {
    if n > MAX_GENERATOR {
        return Err(Error::TooLarge(format!("generator of size {n} exceeds {MAX_GENERATOR}")));
    }
    Ok(n)
}

impl Atom {
    pub fn build(&self) -> Result<Graph> {
        Ok(match self {
            Atom::Cycle(n) if *n < 3 => return Err(Error::domain(format!("C{n} needs at least 3 vertices"))),
            Atom::Cycle(n) => builders::cycle(checked_size(*n)?),
            Atom::Complete(n) if *n > MAX_COMPLETE => {
                return Err(Error::TooLarge(format!("K{n} exceeds K{MAX_COMPLETE}")))
            }
            Atom::Complete(n) => builders::complete(*n),
            Atom::Points(n) => builders::points(checked_size(*n)?),
            Atom::Path(n) => builders::path(checked_size(*n)?),
            Atom::Octahedron => builders::octahedron(),
            Atom::Icosahedron => builders::icosahedron(),
            Atom::Cell600 => builders::cell600(),
            Atom::File(p) => crate::io::read_graph(p)?,
        })
    }
}

impl Expr {
    pub fn eval(&self) -> Result<Graph> {
        Ok(match self {
            Expr::Atom(a) => a.build()?,
            Expr::Binary(op, l, r) => {
                let (a, b) = (l.eval()?, r.eval()?);
                match op {
                    BinOp::Join => builders::join(&a, &b),
                    BinOp::Sabidussi => builders::sabidussi(&a, &b),
                    BinOp::Shannon => builders::shannon(&a, &b),
                    BinOp::Cartesian => builders::cartesian(&a, &b)?.graph,
                    BinOp::Union => builders::disjoint_union(&a, &b),
                }
            }
            Expr::Bary(e) => builders::barycentric(&e.eval()?)?.graph,
            Expr::Susp(e) => builders::suspension(&e.eval()?),
            Expr::Comp(e) => e.eval()?.complement(),
            Expr::Refine(e, u, v) => builders::edge_refine(&e.eval()?, *u, *v)?,
        })
    }
}

/// Parses and evaluates an expression.
pub fn build(text: &str) -> Result<Graph> {
    parse_expr(text)?.eval()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{cycle, icosahedron, join, octahedron, sabidussi, shannon};
    use crate::iso::{are_isomorphic, canonical_certificate};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let g = build("C5 + C5").unwrap();
        assert_eq!((g.order(), g.size()), (10, 35));
        assert_eq!(build("bary(ICO)").unwrap().order(), 62);
        assert!(are_isomorphic(&build("susp(C4)").unwrap(), &octahedron()).unwrap().is_some());
        assert_eq!(build("shannon(C5, C5)").unwrap(), shannon(&cycle(5), &cycle(5)));
        assert_eq!(build("C5 * C5").unwrap(), sabidussi(&cycle(5), &cycle(5)));
        assert_eq!(build("P2 + C5 + C4").unwrap().order(), 11);
        assert_eq!(build("refine(C5 + C5, 0, 1)").unwrap().order(), 11);
        assert_eq!(build("ICO x K2").unwrap().order(), (12 + 30 + 20) * 3);
        assert_eq!(build("C4 u Path3").unwrap().size(), 6);
        assert_eq!(build("comp(C5)").unwrap().size(), 5);
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse_expr("C4 + C5 * K2 & P2").unwrap();
        assert_eq!(e.to_string(), "(C4 + ((C5 * K2) & P2))");
        assert_eq!(parse_expr("K1 + K2 + K3").unwrap().to_string(), "((K1 + K2) + K3)");
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |t: &str| match parse_expr(t) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{t}: {other:?}"),
        };
        assert_eq!(pos("C5 + Q7"), 5);
        assert_eq!(pos("C5 +"), 4);
        assert_eq!(pos("bary(C5"), 7);
        assert_eq!(pos("C5 $"), 3);
        assert_eq!(pos("C5xC4"), 0);
        assert_eq!(pos("susp(C4, C5)"), 7);
        assert_eq!(pos("frob(C4)"), 0);
        assert!(matches!(build("C2"), Err(Error::Domain(_))));
        assert!(matches!(build("refine(C5, 0, 2)"), Err(Error::NotAnEdge(0, 2))));
        assert!(matches!(build("file:/nonexistent/graph.json"), Err(Error::Io(_))));
    }

    #[test]
    fn join_homomorphism() {
        let parts = ["C4", "C5", "K2", "P2", "OCT", "susp(C5)"];
        for a in parts {
            for b in parts {
                let whole = build(&format!("{a} + {b}")).unwrap();
                let split = join(&build(a).unwrap(), &build(b).unwrap());
                assert_eq!(canonical_certificate(&whole).unwrap(), canonical_certificate(&split).unwrap());
            }
        }
        assert_eq!(build("ICO").unwrap(), icosahedron());
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (3usize..9).prop_map(|n| Expr::Atom(Atom::Cycle(n))),
            (0usize..6).prop_map(|n| Expr::Atom(Atom::Complete(n))),
            (0usize..6).prop_map(|n| Expr::Atom(Atom::Points(n))),
            (1usize..6).prop_map(|n| Expr::Atom(Atom::Path(n))),
            Just(Expr::Atom(Atom::Octahedron)),
            Just(Expr::Atom(Atom::Icosahedron)),
            Just(Expr::Atom(Atom::Cell600)),
            "[a-z/._]{1,8}".prop_map(|p| Expr::Atom(Atom::File(p))),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            let op = prop_oneof![
                Just(BinOp::Join),
                Just(BinOp::Sabidussi),
                Just(BinOp::Shannon),
                Just(BinOp::Cartesian),
                Just(BinOp::Union)
            ];
            prop_oneof![
                (op, inner.clone(), inner.clone()).prop_map(|(o, l, r)| Expr::Binary(o, Box::new(l), Box::new(r))),
                inner.clone().prop_map(|e| Expr::Bary(Box::new(e))),
                inner.clone().prop_map(|e| Expr::Susp(Box::new(e))),
                inner.clone().prop_map(|e| Expr::Comp(Box::new(e))),
                (inner, 0usize..20, 0usize..20).prop_map(|(e, u, v)| Expr::Refine(Box::new(e), u, v)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(e in arb_expr()) {
            let printed = e.to_string();
            prop_assert_eq!(parse_expr(&printed).unwrap(), e);
        }
    }
}
