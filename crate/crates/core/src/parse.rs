//! Parsers for terms, equations and first-order formulas.
//!
//! Term connectives, tightest first: `~`/`¬`, `&`/`∧`, `|`/`∨`, `->`/`→`
//! (right associative). Constants are `bot`/`⊥`/`0` and `top`/`⊤`/`1`.
//! Formulas add `=` between terms, `not`, `and`, `or`, `implies`/`=>`
//! (again tightest first) and the quantifiers `forall x, y. φ` and
//! `exists x. φ` (also `∀`, `∃`), whose scope extends as far right as
//! possible. Error positions count characters from zero.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::term::{Equation, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Bot,
    Top,
    Not,
    And,
    Or,
    Imp,
    Eq,
    LParen,
    RParen,
    Comma,
    Dot,
    Forall,
    Exists,
    KwNot,
    KwAnd,
    KwOr,
    KwImplies,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::End => "end of input".into(),
            other => format!("{other:?}").to_lowercase(),
        }
    }
}

const KEYWORDS: &[(&str, Tok)] = &[
    ("bot", Tok::Bot),
    ("top", Tok::Top),
    ("forall", Tok::Forall),
    ("exists", Tok::Exists),
    ("not", Tok::KwNot),
    ("and", Tok::KwAnd),
    ("or", Tok::KwOr),
    ("implies", Tok::KwImplies),
];

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let two = |s: &str| chars[i..].iter().take(2).copied().eq(s.chars());
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' | '¬' | '!' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '→' => Tok::Imp,
            '⇒' => Tok::KwImplies,
            '⊥' | '0' => Tok::Bot,
            '⊤' | '1' => Tok::Top,
            '∀' => Tok::Forall,
            '∃' => Tok::Exists,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '-' if two("->") => {
                i += 1;
                Tok::Imp
            }
            '=' if two("=>") => {
                i += 1;
                Tok::KwImplies
            }
            '=' => Tok::Eq,
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                i = j - 1;
                KEYWORDS
                    .iter()
                    .find(|(k, _)| *k == word)
                    .map(|(_, t)| t.clone())
                    .unwrap_or(Tok::Ident(word))
            }
            other => {
                return Err(Error::Syntax {
                    position: start,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &str) -> Error {
        Error::Syntax {
            position: self.toks[self.pos].0,
            message: format!("expected {expected}, found {}", self.peek().describe()),
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn finish(&self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn term(&mut self) -> Result<Term> {
        let lhs = self.join()?;
        if self.eat(&Tok::Imp) {
            let rhs = self.term()?;
            return Ok(Term::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn join(&mut self) -> Result<Term> {
        let mut t = self.meet()?;
        while self.eat(&Tok::Or) {
            t = Term::join(t, self.meet()?);
        }
        Ok(t)
    }

    fn meet(&mut self) -> Result<Term> {
        let mut t = self.unary()?;
        while self.eat(&Tok::And) {
            t = Term::meet(t, self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term> {
        if self.eat(&Tok::Not) {
            return Ok(Term::neg(self.unary()?));
        }
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Term::var(&name))
            }
            Tok::Bot => {
                self.bump();
                Ok(Term::Bot)
            }
            Tok::Top => {
                self.bump();
                Ok(Term::Top)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => Err(self.error("a term")),
        }
    }

    fn equation(&mut self) -> Result<Equation> {
        let lhs = self.term()?;
        self.expect(&Tok::Eq, "`=`")?;
        let rhs = self.term()?;
        Ok(Equation::new(lhs, rhs))
    }

    fn formula(&mut self) -> Result<Formula> {
        if matches!(self.peek(), Tok::Forall | Tok::Exists) {
            return self.quantified();
        }
        let lhs = self.disjunction()?;
        if self.eat(&Tok::KwImplies) {
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn quantified(&mut self) -> Result<Formula> {
        let universal = self.bump() == Tok::Forall;
        let mut vars = Vec::new();
        loop {
            match self.bump() {
                Tok::Ident(v) => vars.push(v),
                _ => {
                    self.pos -= 1;
                    return Err(self.error("a variable"));
                }
            }
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(&Tok::Dot, "`.`")?;
        let mut body = self.formula()?;
        for v in vars.iter().rev() {
            body = if universal {
                Formula::forall(v, body)
            } else {
                Formula::exists(v, body)
            };
        }
        Ok(body)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while self.eat(&Tok::KwOr) {
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.negation()?;
        while self.eat(&Tok::KwAnd) {
            f = Formula::and(f, self.negation()?);
        }
        Ok(f)
    }

    fn negation(&mut self) -> Result<Formula> {
        if self.eat(&Tok::KwNot) {
            return Ok(Formula::not(self.negation()?));
        }
        if matches!(self.peek(), Tok::Forall | Tok::Exists) {
            return self.quantified();
        }
        if *self.peek() == Tok::LParen {
            // either a parenthesised formula or a term starting with `(`
            let save = self.pos;
            if let Ok(eq) = self.equation() {
                return Ok(Formula::Eq(eq.lhs, eq.rhs));
            }
            self.pos = save;
            self.bump();
            let f = self.formula()?;
            self.expect(&Tok::RParen, "`)`")?;
            return Ok(f);
        }
        let eq = self.equation()?;
        Ok(Formula::Eq(eq.lhs, eq.rhs))
    }
}

pub fn parse_term(src: &str) -> Result<Term> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses `lhs = rhs`; a bare term `t` is read as `t = top`.
pub fn parse_equation(src: &str) -> Result<Equation> {
    let mut p = Parser::new(src)?;
    let lhs = p.term()?;
    let eq = if p.eat(&Tok::Eq) {
        Equation::new(lhs, p.term()?)
    } else {
        Equation::is_top(lhs)
    };
    p.finish()?;
    Ok(eq)
}

pub fn parse_formula(src: &str) -> Result<Formula> {
    let mut p = Parser::new(src)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

impl core::str::FromStr for Term {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_term(s)
    }
}

impl core::str::FromStr for Equation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_equation(s)
    }
}

impl core::str::FromStr for Formula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_formula(s)
    }
}

/// Parses a comma-free list of variable names, e.g. `"x y z"`.
pub fn parse_vars(src: &str) -> Vec<Arc<str>> {
    src.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| Arc::from(s.to_string().as_str()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Term {
        Term::var(name)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse_term("x | ~x").unwrap(), Term::join(v("x"), Term::imp(v("x"), Term::Bot)));
        assert_eq!(parse_term("a -> b -> c").unwrap(), Term::imp(v("a"), Term::imp(v("b"), v("c"))));
        let elim = parse_term("(~x -> y) -> (x -> y) -> y").unwrap();
        assert_eq!(
            elim,
            Term::imp(
                Term::imp(Term::neg(v("x")), v("y")),
                Term::imp(Term::imp(v("x"), v("y")), v("y"))
            )
        );
    }

    #[test]
    fn precedence_and_unicode() {
        let a = parse_term("~a & b | c -> d").unwrap();
        let b = parse_term("((¬a ∧ b) ∨ c) → d").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_term("⊥ -> ⊤").unwrap(), parse_term("bot -> top").unwrap());
        assert_eq!(parse_term("a | b | c").unwrap(), Term::join(Term::join(v("a"), v("b")), v("c")));
        assert_eq!(parse_term("~~p").unwrap(), Term::neg(Term::neg(v("p"))));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_term("x & ") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        match parse_term("x # y") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        match parse_term("(x | y") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_term("x y").is_err());
        assert!(parse_term("").is_err());
    }

    #[test]
    fn equations() {
        let eq = parse_equation("x -> y = ~x | y").unwrap();
        assert_eq!(eq.lhs, parse_term("x -> y").unwrap());
        assert_eq!(eq.rhs, parse_term("~x | y").unwrap());
        assert_eq!(parse_equation("p | ~p").unwrap().rhs, Term::Top);
        assert!(parse_equation("x = y = z").is_err());
    }

    #[test]
    fn formulas() {
        let f = parse_formula("forall y, z. x = y | z implies x = y or x = z").unwrap();
        assert_eq!(f.to_string(), "forall y, z. x = y | z implies x = y or x = z");
        assert_eq!(f.free_vars(), alloc::vec![Arc::from("x")]);
        let g = parse_formula("∀y. y ∨ (y → x) = ⊤").unwrap();
        assert_eq!(g, parse_formula("forall y. y | (y -> x) = top").unwrap());
        // parenthesised formula vs parenthesised term
        let h = parse_formula("(x = y) and (x | y) = top").unwrap();
        assert!(matches!(h, Formula::And(..)));
        let k = parse_formula("not exists y. (y = x and not y = top)").unwrap();
        assert!(matches!(k, Formula::Not(_)));
        assert_eq!(parse_formula(&k.to_string()).unwrap(), k);
        assert!(parse_formula("forall . x = x").is_err());
    }

    #[test]
    fn var_lists() {
        assert_eq!(parse_vars("x, y z").len(), 3);
    }
}
