//! Expression evaluator for `star-eval`.
//!
//! The grammar is deliberately tiny — it exists to make identities in the
//! sequence carrier executable from the command line, not to be a
//! calculator. Atoms are basis elements `i(n)`, sparse `{3:1,6:-2}` or dense
//! `[0,0,3]` literals, the unary maps `e(…)`, `inv(…)`, `f(…)`, `g(…)`, and
//! parenthesized subexpressions. The binary operators `⋆` (ASCII alias `*`)
//! and `+` apply left to right with no precedence between them.

use std::fmt;

use gengroup::FinSeq;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub reason: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reason)
    }
}

impl std::error::Error for ExprError {}

fn err<T>(reason: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError {
        reason: reason.into(),
    })
}

/// Parses and evaluates one expression; the whole input must be consumed.
pub fn eval_str(input: &str) -> Result<FinSeq, ExprError> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return err(format!(
            "unexpected input at position {}: {:?}",
            p.pos,
            p.rest()
        ));
    }
    Ok(value)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn rest(&self) -> String {
        self.chars[self.pos..].iter().collect()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => err(format!(
                "expected {c:?} at position {}, found {found:?}",
                self.pos
            )),
            None => err(format!("expected {c:?}, found end of input")),
        }
    }

    fn expr(&mut self) -> Result<FinSeq, ExprError> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some('⋆') | Some('*') => {
                    self.pos += 1;
                    let rhs = self.atom()?;
                    acc = acc.star(&rhs);
                }
                Some('+') => {
                    self.pos += 1;
                    let rhs = self.atom()?;
                    acc = acc.add(&rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn atom(&mut self) -> Result<FinSeq, ExprError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some('{') => self.literal('{', '}'),
            Some('[') => self.literal('[', ']'),
            Some(c) if c.is_alphabetic() => self.call(),
            Some(c) => err(format!("unexpected {c:?} at position {}", self.pos)),
            None => err("unexpected end of input"),
        }
    }

    /// A `{…}` or `[…]` literal, handed to the sequence parser verbatim.
    fn literal(&mut self, open: char, close: char) -> Result<FinSeq, ExprError> {
        let start = self.pos;
        debug_assert_eq!(self.chars[start], open);
        let end = match self.chars[start..].iter().position(|&c| c == close) {
            Some(offset) => start + offset,
            None => return err(format!("unclosed {open:?} at position {start}")),
        };
        let text: String = self.chars[start..=end].iter().collect();
        self.pos = end + 1;
        text.parse::<FinSeq>()
            .map_err(|e| ExprError {
                reason: format!("bad sequence literal {text:?}: {e}"),
            })
    }

    fn call(&mut self) -> Result<FinSeq, ExprError> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_alphabetic() {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        self.expect('(')?;
        let value = match name.as_str() {
            "i" => {
                let n = self.uint()?;
                match FinSeq::basis(n) {
                    Ok(seq) => seq,
                    Err(e) => return err(format!("i({n}): {e}")),
                }
            }
            "e" => self.expr()?.star_identity(),
            "inv" => self.expr()?.star_inverse(),
            "f" => self.expr()?.map_f(),
            "g" => self.expr()?.map_g(),
            other => return err(format!("unknown function {other:?} at position {start}")),
        };
        self.expect(')')?;
        Ok(value)
    }

    fn uint(&mut self) -> Result<u64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return err(format!("expected an index at position {start}"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<u64>()
            .map_err(|_| ExprError {
                reason: format!("index {text:?} out of range"),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(s: &str) -> String {
        eval_str(s).unwrap().to_string()
    }

    #[test]
    fn star_of_basis_elements() {
        assert_eq!(eval("i(1) ⋆ i(1)"), "{1:1}");
        assert_eq!(eval("i(1) * i(1)"), "{1:1}"); // ASCII alias
        assert_eq!(eval("i(3) ⋆ i(3)"), "{3:2}");
    }

    #[test]
    fn unary_maps() {
        assert_eq!(eval("e(i(3))"), "{}");
        assert_eq!(eval("e(i(2))"), "{2:1}");
        assert_eq!(eval("inv(i(3))"), "{3:-1}");
        assert_eq!(eval("inv(i(2))"), "{2:1}");
        assert_eq!(eval("g(f([1,2,3,4,5,6]))"), "{1:3,2:6}");
    }

    #[test]
    fn literals_and_parens() {
        assert_eq!(eval("{1:5,2:7,3:3} ⋆ {1:9,2:4,3:1}"), "{1:5,2:4,3:4}");
        assert_eq!(eval("[0,0,3] + {3:-3}"), "{}");
        assert_eq!(eval("(i(1) + i(1)) ⋆ i(2)"), "{1:2,2:1}");
    }

    #[test]
    fn operators_apply_left_to_right() {
        // ⋆ then +, no precedence: (i1 ⋆ i2) + i3.
        assert_eq!(eval("i(1) ⋆ i(2) + i(3)"), "{1:1,2:1,3:1}");
        // + then ⋆: (i3 + i3) ⋆ i3 takes the sum at position 3: 2+1.
        assert_eq!(eval("i(3) + i(3) ⋆ i(3)"), "{3:3}");
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(eval_str("i(0)").is_err());
        assert!(eval_str("i(1) ⋆").is_err());
        assert!(eval_str("h(i(1))").is_err());
        assert!(eval_str("i(1)) ").is_err());
        assert!(eval_str("{1:1").is_err());
        assert!(eval_str("").is_err());
        assert!(eval_str("i(1) i(2)").is_err());
    }
}
