//! Numeric literals with `pi`, `sqrt(...)`, products and quotients, e.g.
//! `sqrt(pi)/2` or `sqrt(2*pi)`.

use std::f64::consts::PI;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("cannot parse `{input}`: {reason}")]
pub struct LiteralError {
    input: String,
    reason: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<f64, String> {
        let mut v = self.product()?;
        loop {
            if self.eat(b'+') {
                v += self.product()?;
            } else if self.eat(b'-') {
                v -= self.product()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn product(&mut self) -> Result<f64, String> {
        let mut v = self.unary()?;
        loop {
            if self.eat(b'*') {
                v *= self.unary()?;
            } else if self.eat(b'/') {
                v /= self.unary()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<f64, String> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<f64, String> {
        self.skip_ws();
        if self.eat(b'(') {
            let v = self.sum()?;
            return self.close(v);
        }
        let rest = &self.src[self.pos..];
        if rest.starts_with("sqrt") {
            self.pos += 4;
            if !self.eat(b'(') {
                return Err(format!("expected `(` after sqrt at {}", self.pos));
            }
            let v = self.sum()?;
            return self.close(v.sqrt());
        }
        if rest.starts_with("pi") {
            self.pos += 2;
            return Ok(PI);
        }
        self.number()
    }

    fn close(&mut self, v: f64) -> Result<f64, String> {
        if self.eat(b')') {
            Ok(v)
        } else {
            Err(format!("expected `)` at {}", self.pos))
        }
    }

    fn number(&mut self) -> Result<f64, String> {
        let bytes = self.src.as_bytes();
        let start = self.pos;
        let mut end = start;
        while end < bytes.len() {
            let c = bytes[end];
            let exp_sign =
                (c == b'+' || c == b'-') && end > start && matches!(bytes[end - 1], b'e' | b'E');
            if c.is_ascii_digit() || c == b'.' || c == b'e' || c == b'E' || exp_sign {
                end += 1;
            } else {
                break;
            }
        }
        let text = &self.src[start..end];
        if text.is_empty() {
            return Err(format!("expected a number at {start}"));
        }
        self.pos = end;
        text.parse().map_err(|_| format!("bad number `{text}`"))
    }
}

pub fn parse_literal(input: &str) -> Result<f64, LiteralError> {
    let err = |reason: String| LiteralError {
        input: input.to_string(),
        reason,
    };
    let lowered = input.trim().to_ascii_lowercase();
    match lowered.as_str() {
        "inf" | "+inf" | "infinity" => return Ok(f64::INFINITY),
        "-inf" | "-infinity" => return Ok(f64::NEG_INFINITY),
        _ => {}
    }
    let mut p = Parser {
        src: &lowered,
        pos: 0,
    };
    let v = p.sum().map_err(err)?;
    p.skip_ws();
    if p.pos != lowered.len() {
        return Err(err(format!("unexpected input at {}", p.pos)));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_numbers() {
        assert_eq!(parse_literal("24").unwrap(), 24.0);
        assert_eq!(parse_literal("-3.5e-2").unwrap(), -0.035);
        assert_eq!(parse_literal("1E3").unwrap(), 1000.0);
    }

    #[test]
    fn special_values() {
        assert_eq!(parse_literal("pi").unwrap(), PI);
        assert_eq!(parse_literal("sqrt(pi)/2").unwrap(), PI.sqrt() / 2.0);
        assert_eq!(parse_literal("sqrt(2*pi)").unwrap(), (2.0 * PI).sqrt());
        assert_eq!(parse_literal(" -sqrt( pi ) ").unwrap(), -PI.sqrt());
        assert_eq!(parse_literal("(1+2)*3").unwrap(), 9.0);
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "pie", "sqrt 2", "2*", "(1", "1..2", "x"] {
            assert!(parse_literal(s).is_err(), "{s}");
        }
    }
}
