//! Text form:
//!
//! ```text
//! expr  := sum
//! sum   := term ("+" term)*
//! term  := INT "(" NAME ")"
//!        | "eta_{" INT "," INT "}(" sum ")"
//!        | "rho_{" INT "->" INT "}(" sum ")"
//!        | "(" sum ")"
//! ```
//!
//! A sum of two or more terms is a union. A parenthesized single term is a
//! union with one child, which keeps printing and parsing inverse to each
//! other. Whitespace is ignored.

use std::collections::HashSet;

use super::KExpr;
use crate::error::{Error, Result};

pub fn parse_expr(text: &str) -> Result<KExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    let mut seen = HashSet::new();
    for name in e.vertex_names() {
        if !seen.insert(name) {
            return Err(Error::Expression(format!("vertex `{name}` occurs more than once")));
        }
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn label(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a label"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match text.parse::<usize>() {
            Ok(0) => Err(Error::Syntax { pos: start, msg: "labels start at 1".into() }),
            Ok(l) => Ok(l),
            Err(_) => Err(Error::Syntax { pos: start, msg: "label out of range".into() }),
        }
    }

    fn name(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a vertex name"));
        }
        Ok(String::from_utf8(self.src[start..self.pos].to_vec()).expect("ascii"))
    }

    fn sum(&mut self) -> Result<KExpr> {
        let mut terms = self.terms()?;
        Ok(if terms.len() == 1 { terms.pop().expect("one term") } else { KExpr::Union(terms) })
    }

    fn terms(&mut self) -> Result<Vec<KExpr>> {
        let mut terms = vec![self.term()?];
        while self.eat("+") {
            terms.push(self.term()?);
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<KExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let terms = self.terms()?;
                self.expect(")")?;
                Ok(KExpr::Union(terms))
            }
            Some(b'e') => {
                self.expect("eta_{")?;
                let a = self.label()?;
                self.expect(",")?;
                let at = self.pos;
                let b = self.label()?;
                if a == b {
                    return Err(Error::Syntax { pos: at, msg: format!("eta needs two distinct labels, got {a},{b}") });
                }
                self.expect("}")?;
                let child = self.argument()?;
                Ok(KExpr::insert(a, b, child))
            }
            Some(b'r') => {
                self.expect("rho_{")?;
                let from = self.label()?;
                self.expect("->")?;
                let to = self.label()?;
                self.expect("}")?;
                let child = self.argument()?;
                Ok(KExpr::relabel(from, to, child))
            }
            Some(c) if c.is_ascii_digit() => {
                let label = self.label()?;
                self.expect("(")?;
                let vertex = self.name()?;
                self.expect(")")?;
                Ok(KExpr::Leaf { label, vertex })
            }
            Some(_) => Err(self.error("expected a term")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn argument(&mut self) -> Result<KExpr> {
        self.expect("(")?;
        let e = self.sum()?;
        self.expect(")")?;
        Ok(e)
    }
}

/// Canonical text form; `parse_expr(print_expr(e)) == e`.
pub fn print_expr(e: &KExpr) -> String {
    let mut out = String::new();
    write_expr(e, true, &mut out);
    out
}

/// `in_sum` is true where a bare `a+b` would be read back as this node:
/// at the top level and directly inside an operator's parentheses.
fn write_expr(e: &KExpr, in_sum: bool, out: &mut String) {
    match e {
        KExpr::Leaf { label, vertex } => out.push_str(&format!("{label}({vertex})")),
        KExpr::Union(cs) if cs.len() == 1 => {
            out.push('(');
            write_expr(&cs[0], false, out);
            out.push(')');
        }
        KExpr::Union(cs) => {
            if !in_sum {
                out.push('(');
            }
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push('+');
                }
                write_expr(c, false, out);
            }
            if !in_sum {
                out.push(')');
            }
        }
        KExpr::Relabel { from, to, child } => {
            out.push_str(&format!("rho_{{{from}->{to}}}("));
            write_expr(child, true, out);
            out.push(')');
        }
        KExpr::Insert { a, b, child } => {
            out.push_str(&format!("eta_{{{a},{b}}}("));
            write_expr(child, true, out);
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kexpr::fixtures::P4_EXPR;
    use proptest::prelude::*;

    #[test]
    fn parses_path_expression() {
        let e = parse_expr(P4_EXPR).unwrap();
        assert_eq!(print_expr(&e), P4_EXPR);
        match &e {
            KExpr::Insert { a: 2, b: 3, child } => assert!(matches!(**child, KExpr::Union(ref cs) if cs.len() == 2)),
            other => panic!("unexpected root {other:?}"),
        }
    }

    #[test]
    fn leaf_and_whitespace() {
        assert_eq!(parse_expr(" 1 ( v ) ").unwrap(), KExpr::leaf(1, "v"));
        assert_eq!(
            parse_expr("eta_{1,2}( 1(u) + 2(v) )").unwrap(),
            KExpr::insert(1, 2, KExpr::Union(vec![KExpr::leaf(1, "u"), KExpr::leaf(2, "v")]))
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_expr("eta_{1,1}(1(a)+1(b))"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("0(a)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("1(a)+2(a)"), Err(Error::Expression(_))));
        match parse_expr("1(a)+") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("1(a))").is_err());
        assert!(parse_expr("rho_{1-2}(1(a))").is_err());
        assert!(parse_expr("").is_err());
    }

    #[test]
    fn nested_unions_keep_shape() {
        for text in ["(1(a)+1(b))+1(c)", "((1(a)))", "(1(a)+2(b))", "rho_{1->2}((1(a)+1(b))+1(c))"] {
            let e = parse_expr(text).unwrap();
            assert_eq!(parse_expr(&print_expr(&e)).unwrap(), e, "{text}");
        }
        let flat = parse_expr("1(a)+1(b)+1(c)").unwrap();
        let nested = parse_expr("(1(a)+1(b))+1(c)").unwrap();
        assert_ne!(flat, nested);
    }

    fn arb_expr() -> impl Strategy<Value = KExpr> {
        let leaf = (1usize..5).prop_map(|l| KExpr::leaf(l, "x"));
        leaf.prop_recursive(5, 32, 4, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 1..4).prop_map(KExpr::Union),
                (1usize..5, 1usize..5, inner.clone()).prop_map(|(a, b, c)| KExpr::relabel(a, b, c)),
                (1usize..5, 1usize..5, inner)
                    .prop_filter_map("distinct", |(a, b, c)| (a != b).then(|| KExpr::insert(a, b, c))),
            ]
        })
    }

    fn rename(e: &mut KExpr, next: &mut usize) {
        match e {
            KExpr::Leaf { vertex, .. } => {
                *vertex = format!("v{next}");
                *next += 1;
            }
            KExpr::Union(cs) => cs.iter_mut().for_each(|c| rename(c, next)),
            KExpr::Relabel { child, .. } | KExpr::Insert { child, .. } => rename(child, next),
        }
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(mut e in arb_expr()) {
            rename(&mut e, &mut 0);
            prop_assert_eq!(parse_expr(&print_expr(&e)).unwrap(), e);
        }
    }
}
