//! Restricted Fourier grammar for torus symbols.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := decimal | ('cos'|'sin') '(' [integer ['*']] ('x'|'y') ')'
//! ```
//!
//! Whitespace is ignored. Frequencies are capped so that spectral derivatives stay exact
//! on the grids used by the torus studies.

use std::fmt;
use std::str::FromStr;

use landau_torus::{FourierSeries, Mode, Trig};

pub const DEFAULT_FREQUENCY_CAP: u32 = 8;

/// A parsed symbol in canonical Fourier form.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolExpr(pub FourierSeries);

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at position {position}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl SymbolExpr {
    pub fn series(&self) -> &FourierSeries {
        &self.0
    }
}

impl fmt::Display for SymbolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        for (i, (mode, &c)) in self.0.terms().enumerate() {
            let sign = if c < 0.0 { "-" } else { "+" };
            match (i, sign) {
                (0, "+") => {}
                (0, _) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            let c = c.abs();
            if *mode == Mode::constant() {
                write!(f, "{c}")?;
            } else if c == 1.0 {
                write!(f, "{mode}")?;
            } else {
                write!(f, "{c}*{mode}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for SymbolExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_symbol(s)
    }
}

pub fn parse_symbol(text: &str) -> Result<SymbolExpr, ParseError> {
    parse_symbol_with_cap(text, DEFAULT_FREQUENCY_CAP)
}

pub fn parse_symbol_with_cap(text: &str, cap: u32) -> Result<SymbolExpr, ParseError> {
    Parser { src: text, pos: 0, cap }.expr().map(SymbolExpr)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    cap: u32,
}

impl Parser<'_> {
    fn fail<T>(&self, position: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            return Ok(());
        }
        let found = self.peek().map_or("end of input".to_string(), |f| format!("'{f}'"));
        self.fail(self.pos, format!("expected '{c}', found {found}"))
    }

    fn expr(&mut self) -> Result<FourierSeries, ParseError> {
        if self.peek().is_none() {
            return self.fail(self.pos, "empty expression");
        }
        let mut acc = FourierSeries::zero();
        let mut sign = if self.eat('-') {
            -1.0
        } else {
            self.eat('+');
            1.0
        };
        loop {
            acc = &acc + &self.term()?.scale(sign);
            if self.eat('+') {
                sign = 1.0;
            } else if self.eat('-') {
                sign = -1.0;
            } else if let Some(c) = self.peek() {
                return self.fail(self.pos, format!("unexpected '{c}'"));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FourierSeries, ParseError> {
        let start = self.peek().map(|_| self.pos).unwrap_or(self.pos);
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        if acc.max_frequency() > self.cap {
            return self.fail(
                start,
                format!(
                    "product reaches frequency {} above the cap {}",
                    acc.max_frequency(),
                    self.cap
                ),
            );
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FourierSeries, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                let v = self.decimal()?;
                if !v.is_finite() {
                    return self.fail(start, "coefficient is not finite");
                }
                Ok(FourierSeries::constant(v))
            }
            Some(c) if c.is_ascii_alphabetic() => self.function(),
            Some(c) => self.fail(self.pos, format!("unexpected '{c}'")),
            None => self.fail(self.pos, "unexpected end of input"),
        }
    }

    fn scan(&mut self, accept: impl Fn(char) -> bool) -> (usize, &str) {
        let start = self.pos;
        while let Some(c) = self.peek_raw() {
            if !accept(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        (start, &self.src[start..self.pos])
    }

    fn decimal(&mut self) -> Result<f64, ParseError> {
        let (start, mut end) = {
            let (s, t) = self.scan(|c| c.is_ascii_digit() || c == '.');
            (s, s + t.len())
        };
        // optional exponent
        let rest = &self.src[end..];
        if rest.starts_with(['e', 'E']) {
            let tail = &rest[1..];
            let tail = tail.strip_prefix(['+', '-']).unwrap_or(tail);
            let digits = tail.chars().take_while(|c| c.is_ascii_digit()).count();
            if digits > 0 {
                end = self.src.len() - tail.len() + digits;
                self.pos = end;
            }
        }
        let text = &self.src[start..end];
        text.parse::<f64>()
            .or_else(|_| self.fail(start, format!("malformed number '{text}'")))
    }

    fn function(&mut self) -> Result<FourierSeries, ParseError> {
        let (start, name) = self.scan(|c| c.is_ascii_alphanumeric() || c == '_');
        let trig = match name {
            "cos" => Trig::Cos,
            "sin" => Trig::Sin,
            other => {
                let other = other.to_string();
                return self.fail(start, format!("unknown function '{other}' (expected cos or sin)"));
            }
        };
        self.expect('(')?;
        let mut freq = 1u32;
        if let Some(c) = self.peek() {
            if c.is_ascii_digit() || c == '.' {
                let (fstart, text) = self.scan(|c| c.is_ascii_digit() || c == '.');
                let text = text.to_string();
                freq = match text.parse::<u32>() {
                    Ok(v) => v,
                    Err(_) if text.contains('.') => {
                        return self.fail(fstart, format!("frequency '{text}' is not an integer"));
                    }
                    Err(_) => return self.fail(fstart, format!("frequency '{text}' is too large")),
                };
                if freq > self.cap {
                    return self.fail(fstart, format!("frequency {freq} exceeds the cap {}", self.cap));
                }
                self.eat('*');
            }
        }
        let vpos = self.peek().map(|_| self.pos).unwrap_or(self.pos);
        let mode = match self.peek() {
            Some('x') => Mode::new(trig, freq, Trig::Cos, 0),
            Some('y') => Mode::new(Trig::Cos, 0, trig, freq),
            Some(c) => return self.fail(vpos, format!("expected variable x or y, found '{c}'")),
            None => return self.fail(vpos, "expected variable x or y"),
        };
        self.pos += 1;
        self.expect(')')?;
        Ok(FourierSeries::mode(mode, 1.0))
    }
}
