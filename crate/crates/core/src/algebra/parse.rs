//! Parser for the expression grammar shared by model files and the CLI.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := '-' factor | power
//! power   := atom ('^' nonneg-int)?
//! atom    := '(' expr ')' | ident | rational-literal
//! rational-literal := int | int '/' positive-int   (folds into '/' above)
//! ident   := letters, digits, underscore; not starting with a digit
//! ```
//!
//! Whitespace is insignificant. Errors carry the byte position.

use super::rational::Rat;
use super::ratfun::RatFun;
use super::vars::VarSet;
use super::AlgebraError;
use std::collections::HashMap;

pub struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    vars: &'a VarSet,
    aliases: Option<&'a HashMap<String, String>>,
}

/// Parse `src` as a rational function over `vars`.
pub fn parse_expr(src: &str, vars: &VarSet) -> Result<RatFun, AlgebraError> {
    Parser::new(src, vars, None).run()
}

/// Parse with an alias table (classical names like `p`, `alpha` mapping to
/// jet coordinates).
pub fn parse_expr_aliased(
    src: &str,
    vars: &VarSet,
    aliases: &HashMap<String, String>,
) -> Result<RatFun, AlgebraError> {
    Parser::new(src, vars, Some(aliases)).run()
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, vars: &'a VarSet, aliases: Option<&'a HashMap<String, String>>) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            vars,
            aliases,
        }
    }

    fn run(mut self) -> Result<RatFun, AlgebraError> {
        let e = self.expr()?;
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(e)
    }

    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse {
            position: self.pos,
            message: msg.to_string(),
            source_text: self.src.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFun, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFun, AlgebraError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    if rhs.is_zero() {
                        return Err(self.error("division by zero"));
                    }
                    acc = (&acc / &rhs).expect("nonzero divisor");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFun, AlgebraError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let f = self.factor()?;
            return Ok(-&f);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFun, AlgebraError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == start {
                return Err(self.error("expected nonnegative integer exponent"));
            }
            let e: u32 = self.src[start..self.pos]
                .parse()
                .map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFun, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: Rat = self.src[start..self.pos]
                    .parse()
                    .map_err(|_| self.error("integer literal out of range"))?;
                Ok(RatFun::constant(self.vars, n))
            }
            Some(c) if c == b'_' || c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos] == b'_' || self.bytes[self.pos].is_ascii_alphanumeric())
                {
                    self.pos += 1;
                }
                let raw = &self.src[start..self.pos];
                let name = self
                    .aliases
                    .and_then(|a| a.get(raw))
                    .map(String::as_str)
                    .unwrap_or(raw);
                if !self.vars.contains(name) {
                    self.pos = start;
                    return Err(self.error(&format!("unknown variable `{raw}`")));
                }
                Ok(RatFun::var(self.vars, name).expect("checked"))
            }
            _ => Err(self.error("expected expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_and_precedence() {
        let vs = VarSet::new(["x", "y"]);
        let e = parse_expr("1/2*x^2 + -y", &vs).unwrap();
        let x = RatFun::var(&vs, "x").unwrap();
        let y = RatFun::var(&vs, "y").unwrap();
        let expect = &(&x.pow(2) * &RatFun::constant(&vs, Rat::new(1, 2))) - &y;
        assert_eq!(e, expect);
    }

    #[test]
    fn parenthesized_division() {
        let vs = VarSet::new(["lam"]);
        let e = parse_expr("lam^2/(lam + 1)", &vs).unwrap();
        assert_eq!(e.den().to_string(), "lam + 1");
    }

    #[test]
    fn error_position() {
        let vs = VarSet::new(["x"]);
        let err = parse_expr("x + z", &vs).unwrap_err();
        match err {
            AlgebraError::Parse { position, .. } => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn aliases_resolve() {
        let vs = VarSet::new(["u_10", "u_01"]);
        let mut aliases = HashMap::new();
        aliases.insert("p".to_string(), "u_10".to_string());
        let e = parse_expr_aliased("p^2", &vs, &aliases).unwrap();
        assert_eq!(e, RatFun::var(&vs, "u_10").unwrap().pow(2));
    }

    #[test]
    fn display_reparses() {
        let vs = VarSet::new(["x", "y"]);
        let e = parse_expr("(x^2 - y)/(x*y + 2) - 5/3", &vs).unwrap();
        let round = parse_expr(&e.to_string(), &vs).unwrap();
        assert_eq!(e, round);
    }
}
