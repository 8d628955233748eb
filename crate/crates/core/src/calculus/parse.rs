//! Text syntax for types and sequents.
//!
//! ```text
//! type    := product ('/' product)*        left-associative
//! product := atom ('*' product)?            right-associative, binds tighter
//! atom    := identifier | '(' type ')'
//! sequent := type (',' type)* '->' type
//! ```

use super::{LType, Sequent};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at column {position}: {message}")]
pub struct ParseError {
    /// Zero-based byte offset into the input.
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn ty(&mut self) -> Result<LType, ParseError> {
        let mut acc = self.product()?;
        while self.eat("/") {
            let rhs = self.product()?;
            acc = LType::div(acc, rhs);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<LType, ParseError> {
        let left = self.atom()?;
        if self.eat("*") {
            let right = self.product()?;
            Ok(LType::prod(left, right))
        } else {
            Ok(left)
        }
    }

    fn atom(&mut self) -> Result<LType, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.ty()?;
                if !self.eat(")") {
                    return self.error("expected ')'");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
                let start = self.pos;
                let len = self.text[start..]
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                    .unwrap_or(self.text.len() - start);
                self.pos += len;
                Ok(LType::prim(&self.text[start..start + len]))
            }
            Some(c) => self.error(format!("unexpected character {c:?}")),
            None => self.error("unexpected end of input"),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected trailing character {c:?}")),
        }
    }
}

/// Parses a type such as `(p*g1)/g2/q`.
pub fn parse_type(text: &str) -> Result<LType, ParseError> {
    let mut parser = Parser::new(text);
    let t = parser.ty()?;
    parser.finish()?;
    Ok(t)
}

/// Parses a sequent such as `p/q, q -> p`.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut parser = Parser::new(text);
    let mut antecedent = vec![parser.ty()?];
    while parser.eat(",") {
        antecedent.push(parser.ty()?);
    }
    if !parser.eat("->") {
        return parser.error("expected '->'");
    }
    let succedent = parser.ty()?;
    parser.finish()?;
    // nonempty by construction
    Ok(Sequent::new(antecedent, succedent).expect("antecedent has at least one type"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(name: &str) -> LType {
        LType::prim(name)
    }

    #[test]
    fn primitives_and_associativity() {
        assert_eq!(parse_type("p").unwrap(), p("p"));
        assert_eq!(
            parse_type("f/g1/q").unwrap(),
            LType::div(LType::div(p("f"), p("g1")), p("q"))
        );
        assert_eq!(
            parse_type("(p*g1)/g2/q").unwrap(),
            LType::div(LType::div(LType::prod(p("p"), p("g1")), p("g2")), p("q"))
        );
        // product binds tighter than division
        assert_eq!(parse_type("p*g1/g2").unwrap(), parse_type("(p*g1)/g2").unwrap());
        assert_eq!(
            parse_type("a*b*c").unwrap(),
            LType::prod(p("a"), LType::prod(p("b"), p("c")))
        );
        assert_eq!(parse_type("  ( p / ( q ) ) ").unwrap(), LType::div(p("p"), p("q")));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_type("p/").unwrap_err();
        assert_eq!(err.position, 2);
        let err = parse_type("(p/q").unwrap_err();
        assert_eq!(err.position, 4);
        assert!(parse_type("p q").is_err());
        assert!(parse_type("").is_err());
        assert_eq!(parse_type("p/$").unwrap_err().position, 2);
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("q, p/q -> p").unwrap();
        let t = parse_sequent("p/q,q->p").unwrap();
        assert_eq!(s, t);
        assert_eq!(s.antecedent().len(), 2);
        assert!(parse_sequent("-> p").is_err());
        assert!(parse_sequent("p, -> p").is_err());
        assert!(parse_sequent("p p").is_err());
    }
}
