//! Concrete syntax.
//!
//! ```text
//! term  ::= lam (';' term)?            e ; f  is  (\_. f) e
//! lam   ::= ('\' | 'λ') ident+ '.' term | app
//! app   ::= atom+ lam?                 left-associative
//! atom  ::= ident | '(' term ')' | op
//! op    ::= name ('[' index (',' index)* ']')? ('(' term (',' term)* ')')?
//! ```
//!
//! Operation names are `raise[e]`, `union`, `choice`, `read[l]`,
//! `write[l,b]` and `print[c]`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::term::Term;
use crate::error::{Error, Result};
use crate::monads::Op;

const OP_NAMES: [&str; 6] = ["raise", "union", "choice", "read", "write", "print"];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Lambda,
    Dot,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Semi,
    Ident(String),
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '\\' | 'λ' => Tok::Lambda,
            '.' => Tok::Dot,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            c if is_ident_char(c) && c != '\'' => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if !is_ident_char(c) {
                        break;
                    }
                    name.push(c);
                    chars.next();
                }
                out.push((pos, Tok::Ident(name)));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        chars.next();
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    defs: &'a BTreeMap<String, Term>,
    bound: Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                self.at += 1;
                Ok(name)
            }
            _ => self.err("expected an identifier"),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let first = self.lam()?;
        if self.peek() == Some(&Tok::Semi) {
            self.at += 1;
            let rest = self.term()?;
            return Ok(Term::seq(first, rest));
        }
        Ok(first)
    }

    fn lam(&mut self) -> Result<Term> {
        if self.peek() != Some(&Tok::Lambda) {
            return self.app();
        }
        self.at += 1;
        let mut binders = vec![self.binder()?];
        while matches!(self.peek(), Some(Tok::Ident(_))) {
            binders.push(self.binder()?);
        }
        self.expect(Tok::Dot, "`.` after binders")?;
        let depth = self.bound.len();
        self.bound.extend(binders.iter().cloned());
        let body = self.term();
        self.bound.truncate(depth);
        let mut body = body?;
        for x in binders.into_iter().rev() {
            body = Term::Abs(x, Arc::new(body));
        }
        Ok(body)
    }

    fn binder(&mut self) -> Result<String> {
        let name = self.ident()?;
        if OP_NAMES.contains(&name.as_str()) || name.starts_with(|c: char| c.is_ascii_digit()) {
            return self.err(format!("`{name}` cannot be bound"));
        }
        Ok(name)
    }

    fn app(&mut self) -> Result<Term> {
        let mut head = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Ident(_) | Tok::LParen) => {
                    let arg = self.atom()?;
                    head = Term::app(head, arg);
                }
                Some(Tok::Lambda) => {
                    let arg = self.lam()?;
                    return Ok(Term::app(head, arg));
                }
                _ => return Ok(head),
            }
        }
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.at += 1;
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(Tok::Ident(_)) => {
                let start = self.pos();
                let name = self.ident()?;
                if OP_NAMES.contains(&name.as_str()) {
                    return self.operation(&name, start);
                }
                if self.peek() == Some(&Tok::LBrack) {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: format!("unknown operation `{name}`"),
                    });
                }
                if name.starts_with(|c: char| c.is_ascii_digit()) {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: format!("`{name}` is not a variable"),
                    });
                }
                if !self.bound.contains(&name) {
                    if let Some(def) = self.defs.get(&name) {
                        return Ok(def.clone());
                    }
                }
                Ok(Term::Var(name))
            }
            _ => self.err("expected a term"),
        }
    }

    fn operation(&mut self, name: &str, start: usize) -> Result<Term> {
        let mut index = Vec::new();
        if self.peek() == Some(&Tok::LBrack) {
            self.at += 1;
            index.push(self.ident()?);
            while self.peek() == Some(&Tok::Comma) {
                self.at += 1;
                index.push(self.ident()?);
            }
            self.expect(Tok::RBrack, "`]`")?;
        }
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::LParen) {
            self.at += 1;
            if self.peek() != Some(&Tok::RParen) {
                args.push(self.term()?);
                while self.peek() == Some(&Tok::Comma) {
                    self.at += 1;
                    args.push(self.term()?);
                }
            }
            self.expect(Tok::RParen, "`)` closing the operation")?;
        }
        let bad = |msg: String| Error::Syntax { pos: start, msg };
        let op = match (name, index.as_slice()) {
            ("raise", [e]) => Op::Raise(e.clone()),
            ("union", []) => Op::Union,
            ("choice", []) => Op::Choice,
            ("read", [l]) => Op::Read(l.clone()),
            ("write", [l, b]) => match b.as_str() {
                "0" => Op::Write(l.clone(), false),
                "1" => Op::Write(l.clone(), true),
                _ => return Err(bad(format!("write bit must be 0 or 1, found `{b}`"))),
            },
            ("print", [c]) => {
                let mut cs = c.chars();
                match (cs.next(), cs.next()) {
                    (Some(ch), None) => Op::Print(ch),
                    _ => return Err(bad(format!("print expects one character, found `{c}`"))),
                }
            }
            _ => return Err(bad(format!("bad index {index:?} for `{name}`"))),
        };
        Term::op(op, args)
    }
}

pub(crate) fn parse_with(src: &str, defs: &BTreeMap<String, Term>) -> Result<Term> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
        end: src.len(),
        defs,
        bound: Vec::new(),
    };
    let t = p.term()?;
    if p.at != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(t)
}

/// Parses a term with no named abbreviations.
pub fn parse(src: &str) -> Result<Term> {
    parse_with(src, &BTreeMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse("\\x. x").unwrap(), Term::abs("x", Term::var("x")));
        assert_eq!(
            parse("choice(v, w)").unwrap(),
            Term::Op(Op::Choice, vec![Term::var("v"), Term::var("w")])
        );
        assert_eq!(
            parse("print[a](\\x.x)").unwrap(),
            Term::Op(Op::Print('a'), vec![Term::abs("x", Term::var("x"))])
        );
    }

    #[test]
    fn application_is_left_associative() {
        let t = parse("f x y").unwrap();
        assert_eq!(
            t,
            Term::app(Term::app(Term::var("f"), Term::var("x")), Term::var("y"))
        );
        assert_eq!(
            parse("f \\x. x y").unwrap(),
            Term::app(
                Term::var("f"),
                Term::abs("x", Term::app(Term::var("x"), Term::var("y")))
            )
        );
    }

    #[test]
    fn sequencing_sugar() {
        assert_eq!(
            parse("print[a](v); w").unwrap(),
            Term::seq(
                Term::Op(Op::Print('a'), vec![Term::var("v")]),
                Term::var("w")
            )
        );
        // right-nested
        assert_eq!(
            parse("a; b; c").unwrap(),
            Term::seq(Term::var("a"), Term::seq(Term::var("b"), Term::var("c")))
        );
    }

    #[test]
    fn indexed_operations() {
        assert_eq!(
            parse("write[l,1](read[l](v, w))").unwrap(),
            Term::Op(
                Op::Write("l".into(), true),
                vec![Term::Op(
                    Op::Read("l".into()),
                    vec![Term::var("v"), Term::var("w")]
                )]
            )
        );
        assert_eq!(
            parse("raise[e]").unwrap(),
            Term::Op(Op::Raise("e".into()), vec![])
        );
        assert_eq!(
            parse("raise[e]()").unwrap(),
            Term::Op(Op::Raise("e".into()), vec![])
        );
        assert_eq!(parse("λx. x").unwrap(), parse("\\x. x").unwrap());
        assert_eq!(parse("\\x y. x").unwrap(), parse("\\x. \\y. x").unwrap());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("\\x x") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("(x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x )"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("foo[a](x)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x # y"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("write[l,2](v)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("print[ab](v)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("\\union. x"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn arity_is_checked() {
        assert!(matches!(
            parse("choice(v)"),
            Err(Error::ArityMismatch {
                expected: 2,
                got: 1,
                ..
            })
        ));
        assert!(matches!(
            parse("print[a]"),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn printing_round_trips() {
        for src in [
            "(\\x. x x) (\\x. x x)",
            "\\f. (\\x. f (\\v. x x v)) (\\x. f (\\v. x x v))",
            "choice(v, choice(v, w))",
            "write[l,0](read[l](a, b))",
            "(\\_. w) (print[a](v))",
            "raise[e]",
        ] {
            let t = parse(src).unwrap();
            assert_eq!(parse(&t.to_string()).unwrap(), t, "{src}");
        }
    }
}
