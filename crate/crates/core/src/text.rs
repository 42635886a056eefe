//! Text input for polynomials and maps.
//!
//! ```text
//! poly     := ('+'|'-')? term (('+'|'-') term)*
//! term     := factor ('*'? factor)*
//! factor   := base ('^' nat)?
//! base     := rational | 'i' | 'x' | 'y' | '(' poly ')'
//! rational := int ('/' int)?
//! ```
//!
//! Whitespace is ignored, adjacency means multiplication and `^` binds
//! tighter than `*`. The imaginary unit is only accepted in Gaussian mode.
//! Canonical rendering lives in the `Display` impls of [`Polynomial`] and
//! [`PolyMap`]; everything they print parses back to the same value.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::coeff::{Coeff, FieldMode};
use crate::error::ParseError;
use crate::map::PolyMap;
use crate::poly::Polynomial;

pub fn parse_poly(src: &str, mode: FieldMode) -> Result<Polynomial, ParseError> {
    parse_poly_at(src, 0, mode)
}

/// Parses `"P; Q"`.
pub fn parse_map(src: &str, mode: FieldMode) -> Result<PolyMap, ParseError> {
    let parts: Vec<&str> = src.split(';').collect();
    if parts.len() != 2 {
        let col = src.char_indices().filter(|&(_, c)| c == ';').nth(1).map_or(src.chars().count(), |(i, _)| {
            src[..i].chars().count()
        });
        return Err(ParseError::at(col, "expected exactly one ';' separating the two components"));
    }
    let offset = parts[0].chars().count() + 1;
    let p = parse_poly_at(parts[0], 0, mode)?;
    let q = parse_poly_at(parts[1], offset, mode)?;
    Ok(PolyMap { p, q })
}

fn parse_poly_at(src: &str, offset: usize, mode: FieldMode) -> Result<Polynomial, ParseError> {
    let toks: Vec<(usize, char)> = src
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| (i + offset, c))
        .collect();
    let end = offset + src.chars().count();
    let mut p = Parser { toks, pos: 0, end, mode };
    if p.peek().is_none() {
        return Err(ParseError::at(end, "empty input"));
    }
    let out = p.poly()?;
    if let Some((col, c)) = p.peek_full() {
        return Err(ParseError::at(col, format!("unexpected '{c}'")));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, char)>,
    pos: usize,
    end: usize,
    mode: FieldMode,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn peek_full(&self) -> Option<(usize, char)> {
        self.toks.get(self.pos).copied()
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let negate = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.bump();
            let t = self.term()?;
            acc = if op == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(c) if starts_base(c) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.bump();
            let col = self.col();
            let digits = self.digits().ok_or_else(|| ParseError::at(col, "expected exponent"))?;
            let e: u32 = digits.parse().map_err(|_| ParseError::at(col, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        let col = self.col();
        match self.peek() {
            Some('x') => {
                self.bump();
                Ok(Polynomial::x(self.mode))
            }
            Some('y') => {
                self.bump();
                Ok(Polynomial::y(self.mode))
            }
            Some('i') => {
                if self.mode != FieldMode::Gaussian {
                    return Err(ParseError::at(col, "imaginary unit 'i' requires the Gaussian field (--field qi)"));
                }
                self.bump();
                Ok(Polynomial::constant(Coeff::i(), self.mode))
            }
            Some('(') => {
                self.bump();
                let inner = self.poly()?;
                if self.peek() != Some(')') {
                    return Err(ParseError::at(self.col(), "expected ')'"));
                }
                self.bump();
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().expect("digit present").parse().expect("digits");
                let mut r = BigRational::from_integer(num);
                if self.peek() == Some('/') {
                    self.bump();
                    let dcol = self.col();
                    let den: BigInt = self
                        .digits()
                        .ok_or_else(|| ParseError::at(dcol, "expected denominator"))?
                        .parse()
                        .expect("digits");
                    if den.is_zero() {
                        return Err(ParseError::at(dcol, "division by zero"));
                    }
                    r /= BigRational::from_integer(den);
                }
                Ok(Polynomial::constant(Coeff::real(r), self.mode))
            }
            Some(c) => Err(ParseError::at(col, format!("unexpected '{c}'"))),
            None => Err(ParseError::at(col, "unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        (!s.is_empty()).then_some(s)
    }
}

fn starts_base(c: char) -> bool {
    c.is_ascii_digit() || matches!(c, 'x' | 'y' | 'i' | '(')
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldMode = FieldMode::Rational;
    const QI: FieldMode = FieldMode::Gaussian;

    #[test]
    fn simple_inputs() {
        let p = parse_poly("x + y^2", Q).unwrap();
        assert_eq!(p, &Polynomial::x(Q) + &Polynomial::y(Q).pow(2));
        let p = parse_poly("y^2 - 3/2*x", Q).unwrap();
        assert_eq!(p.coeff(1, 0), Coeff::from_ratio(-3, 2));
    }

    #[test]
    fn binomial_expansion() {
        // (x + y^2)^3 - x^3 = 3x^2y^2 + 3xy^4 + y^6
        let p = parse_poly("(x+y^2)^3 - x^3", Q).unwrap();
        let expected = Polynomial::from_int_terms(&[(3, 2, 2), (3, 1, 4), (1, 0, 6)], Q);
        assert_eq!(p, expected);
    }

    #[test]
    fn implicit_multiplication_and_precedence() {
        assert_eq!(parse_poly("2xy^2", Q).unwrap(), parse_poly("2*x*(y^2)", Q).unwrap());
        assert_eq!(parse_poly("(x+1)(x-1)", Q).unwrap(), parse_poly("x^2-1", Q).unwrap());
        assert_eq!(parse_poly(" - x ", Q).unwrap(), -Polynomial::x(Q));
    }

    #[test]
    fn gaussian_unit() {
        let p = parse_poly("(1/2 - 3*i)*x + i", QI).unwrap();
        assert_eq!(p.to_string(), "(1/2 - 3*i)*x + i");
        let e = parse_poly("i*x", Q).unwrap_err();
        assert_eq!(e.column, 1);
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_poly("x + * y", Q).unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse_poly("x/0", Q).unwrap_err();
        assert_eq!(e.column, 2);
        let e = parse_poly("3/0", Q).unwrap_err();
        assert_eq!(e.column, 3);
        assert!(e.message.contains("division by zero"));
        let e = parse_poly("(x + y", Q).unwrap_err();
        assert_eq!(e.column, 7);
        let e = parse_poly("", Q).unwrap_err();
        assert_eq!(e.column, 1);
    }

    #[test]
    fn maps() {
        let m = parse_map("x+y^2; y", Q).unwrap();
        assert_eq!(m.to_string(), "y^2 + x; y");
        let e = parse_map("x; y + ?", Q).unwrap_err();
        assert_eq!(e.column, 8);
        assert!(parse_map("x", Q).is_err());
        assert!(parse_map("x; y; x", Q).is_err());
    }
}
