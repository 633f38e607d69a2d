//! Parsers for polynomial expressions and datum files.
//!
//! Two expression dialects share one grammar core:
//!
//! * [`parse_expr`] reads elements of `C[x, 1/x, y]`: integer exponents,
//!   negative ones allowed on `x` only.
//! * [`parse_puiseux`] reads Puiseux polynomials in `x` alone: rational
//!   exponents, parenthesized when fractional.
//!
//! The grammar (EBNF, whitespace free between any two tokens):
//!
//! ```text
//! expr     = [ sign ] term { sign term } ;
//! term     = factor { "*" factor } ;
//! factor   = number | variable [ "^" exponent ] ;
//! variable = "x" | "y" ;                      (* "y" only in parse_expr *)
//! exponent = [ sign ] digits
//!          | "(" [ sign ] digits [ "/" digits ] ")" ;
//! number   = digits [ "/" digits ] ;
//! sign     = "+" | "-" ;
//! ```
//!
//! Multiplication is always explicit (`2*x^-1*y`), and fractional exponents
//! must be parenthesized (`x^(5/2)`), so `x^1/2` is rejected rather than
//! silently read as `(x^1)/2`.  Errors carry the byte offset they occurred
//! at.
//!
//! [`parse_datum`] reads the three-field datum format used by the CLI and
//! accepted on disk:
//!
//! ```text
//! phi = x^(5/2) + x^(-1); r = -14/5; scale = auto
//! ```
//!
//! `scale` is a positive integer or `auto` (the smallest scale making every
//! value an integer).  Printing a datum and parsing it back is exact.

use std::error::Error;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bilaurent::BiLaurent;
use crate::puiseux::PuiseuxPoly;
use crate::rat::Rat;
use crate::semidegree::{auto_scale_value, SemidegreeSpec};
use crate::xipoly::XiPoly;

/// A syntax or well-formedness error, located by byte offset in the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.pos, self.message)
    }
}

impl Error for ParseError {}

fn err_at<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        message: message.into(),
    })
}

fn with_offset(mut e: ParseError, offset: usize) -> ParseError {
    e.pos += offset;
    e
}

/// Parses a Laurent polynomial in `x`, `y` (integer exponents, `y`-exponents
/// non-negative).
pub fn parse_expr(text: &str) -> Result<BiLaurent, ParseError> {
    let terms = Parser::new(text, Mode::Laurent).expression()?;
    Ok(BiLaurent::from_terms(terms.into_iter().map(|t| {
        // Mode::Laurent already rejected fractional and negative-y exponents.
        (t.x_exp.to_integer(), t.y_exp.to_integer(), t.coeff)
    })))
}

/// Parses a Puiseux polynomial in `x` (rational exponents, no `y`).
pub fn parse_puiseux(text: &str) -> Result<PuiseuxPoly, ParseError> {
    let terms = Parser::new(text, Mode::Puiseux).expression()?;
    Ok(PuiseuxPoly::from_terms(
        terms
            .into_iter()
            .map(|t| (t.x_exp, XiPoly::constant(t.coeff))),
    ))
}

/// Parses the `phi = ...; r = ...; scale = ...` datum format.
///
/// `scale = auto` resolves to the smallest positive integer clearing every
/// denominator of the exponents of `phi` and of `r`.  The result is purely
/// syntactic: call [`SemidegreeSpec::validate`] to check the datum itself.
pub fn parse_datum(text: &str) -> Result<SemidegreeSpec, ParseError> {
    let fields = split_assignments(text)?;
    let [(phi_off, phi_text), (r_off, r_text), (scale_off, scale_text)] = fields;

    let phi = parse_puiseux(phi_text).map_err(|e| with_offset(e, phi_off))?;

    let mut cur = Cursor::new(r_text);
    cur.skip_ws();
    let r = cur
        .rational_literal(true)
        .map_err(|e| with_offset(e, r_off))?;
    cur.skip_ws();
    if !cur.at_end() {
        return err_at(r_off + cur.pos, "unexpected input after rational");
    }

    let scale = if scale_text.trim() == "auto" {
        auto_scale_value(&phi, &r)
    } else {
        let mut cur = Cursor::new(scale_text);
        cur.skip_ws();
        let n = match cur.signed_integer() {
            Ok(n) => n,
            Err(e) => {
                return err_at(scale_off + e.pos, "scale must be a positive integer or `auto`")
            }
        };
        cur.skip_ws();
        if !cur.at_end() {
            return err_at(
                scale_off + cur.pos,
                "scale must be a positive integer or `auto`",
            );
        }
        n
    };

    Ok(SemidegreeSpec { phi, r, scale })
}

/// Splits `text` into the three expected `key = value` fields, returning
/// each value with its byte offset.
fn split_assignments(text: &str) -> Result<[(usize, &str); 3], ParseError> {
    const KEYS: [&str; 3] = ["phi", "r", "scale"];
    let mut out: Vec<(usize, &str)> = Vec::new();
    let mut offset = 0usize;
    for (i, part) in text.split(';').enumerate() {
        let part_off = offset;
        offset += part.len() + 1; // account for the separator
        if i >= 3 {
            if part.trim().is_empty() {
                continue; // tolerate one trailing `;`
            }
            return err_at(part_off, "datum has exactly three fields: phi, r, scale");
        }
        let Some(eq) = part.find('=') else {
            return err_at(part_off, format!("expected `{} = ...`", KEYS[i]));
        };
        let key = part[..eq].trim();
        if key != KEYS[i] {
            let key_off = part_off + (part.len() - part.trim_start().len());
            return err_at(key_off, format!("expected field `{}`, found `{key}`", KEYS[i]));
        }
        out.push((part_off + eq + 1, &part[eq + 1..]));
    }
    match <[(usize, &str); 3]>::try_from(out) {
        Ok(fields) => Ok(fields),
        Err(_) => err_at(text.len(), "datum has exactly three fields: phi, r, scale"),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Laurent,
    Puiseux,
}

/// One parsed additive term: `coeff * x^x_exp * y^y_exp`.
struct Term {
    coeff: Rat,
    x_exp: Rat,
    y_exp: Rat,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// A nonempty run of decimal digits.
    fn digits(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return err_at(start, "expected digits");
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit run parses"))
    }

    /// An integer with optional leading sign.
    fn signed_integer(&mut self) -> Result<BigInt, ParseError> {
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let n = self.digits()?;
        Ok(if negative { -n } else { n })
    }

    /// `digits [/ digits]`, optionally signed.  The denominator must be a
    /// plain (unsigned, nonzero) digit run.
    fn rational_literal(&mut self, allow_sign: bool) -> Result<Rat, ParseError> {
        let num = if allow_sign {
            self.signed_integer()?
        } else {
            self.digits()?
        };
        if self.eat(b'/') {
            let den_pos = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return err_at(den_pos, "zero denominator");
            }
            Ok(Rat::new(num, den))
        } else {
            Ok(Rat::from_integer(num))
        }
    }
}

struct Parser<'a> {
    cur: Cursor<'a>,
    mode: Mode,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, mode: Mode) -> Self {
        Parser {
            cur: Cursor::new(text),
            mode,
        }
    }

    fn expression(&mut self) -> Result<Vec<Term>, ParseError> {
        self.cur.skip_ws();
        if self.cur.at_end() {
            return err_at(self.cur.pos, "empty expression");
        }
        let mut terms = Vec::new();
        let mut negative = if self.cur.eat(b'-') {
            true
        } else {
            self.cur.eat(b'+');
            false
        };
        loop {
            let mut term = self.term()?;
            if negative {
                term.coeff = -term.coeff;
            }
            terms.push(term);
            self.cur.skip_ws();
            if self.cur.eat(b'+') {
                negative = false;
            } else if self.cur.eat(b'-') {
                negative = true;
            } else {
                break;
            }
        }
        if !self.cur.at_end() {
            let found = self.cur.peek().map(char::from).unwrap_or(' ');
            return err_at(self.cur.pos, format!("unexpected character `{found}`"));
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut term = Term {
            coeff: Rat::one(),
            x_exp: Rat::zero(),
            y_exp: Rat::zero(),
        };
        loop {
            self.factor(&mut term)?;
            self.cur.skip_ws();
            if !self.cur.eat(b'*') {
                return Ok(term);
            }
        }
    }

    fn factor(&mut self, term: &mut Term) -> Result<(), ParseError> {
        self.cur.skip_ws();
        match self.cur.peek() {
            Some(b) if b.is_ascii_digit() => {
                let q = self.cur.rational_literal(false)?;
                term.coeff *= q;
                Ok(())
            }
            Some(v @ (b'x' | b'y')) => {
                let var_pos = self.cur.pos;
                self.cur.pos += 1;
                if v == b'y' && self.mode == Mode::Puiseux {
                    return err_at(var_pos, "only `x` may appear in a Puiseux expression");
                }
                let (exp, exp_pos) = self.power()?;
                if self.mode == Mode::Laurent && !exp.denom().is_one() {
                    return err_at(exp_pos, format!("fractional exponent on `{}`", char::from(v)));
                }
                if v == b'y' {
                    if exp.is_negative() {
                        return err_at(exp_pos, "negative exponent on `y`");
                    }
                    term.y_exp += exp;
                } else {
                    term.x_exp += exp;
                }
                Ok(())
            }
            Some(b) => err_at(
                self.cur.pos,
                format!("expected a number or variable, found `{}`", char::from(b)),
            ),
            None => err_at(self.cur.pos, "expected a number or variable"),
        }
    }

    /// Optional `^ exponent` after a variable; defaults to 1.
    fn power(&mut self) -> Result<(Rat, usize), ParseError> {
        let before = self.cur.pos;
        self.cur.skip_ws();
        if !self.cur.eat(b'^') {
            self.cur.pos = before;
            return Ok((Rat::one(), before));
        }
        self.cur.skip_ws();
        let exp_pos = self.cur.pos;
        if self.cur.eat(b'(') {
            self.cur.skip_ws();
            let q = self.cur.rational_literal(true)?;
            self.cur.skip_ws();
            if !self.cur.eat(b')') {
                return err_at(self.cur.pos, "expected `)` to close exponent");
            }
            Ok((q, exp_pos))
        } else {
            let n = self.cur.signed_integer()?;
            if self.cur.peek() == Some(b'/') {
                return err_at(
                    self.cur.pos,
                    "fractional exponents must be parenthesized, e.g. x^(1/2)",
                );
            }
            Ok((Rat::from_integer(n), exp_pos))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn laurent_round_trip() {
        let f = parse_expr("y^2 - x^5 - 2*x^-1*y").unwrap();
        let expect = BiLaurent::from_terms([
            (BigInt::from(0), BigInt::from(2), int(1)),
            (BigInt::from(5), BigInt::from(0), int(-1)),
            (BigInt::from(-1), BigInt::from(1), int(-2)),
        ]);
        assert_eq!(f, expect);
        assert_eq!(parse_expr(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn coefficients_and_repeats() {
        assert_eq!(
            parse_expr("1/2*x*x*y^0").unwrap(),
            BiLaurent::monomial(2, 0, rat(1, 2))
        );
        assert_eq!(parse_expr("x + x").unwrap(), BiLaurent::monomial(1, 0, int(2)));
        assert_eq!(parse_expr("0").unwrap(), BiLaurent::zero());
        assert_eq!(parse_expr("- x + x").unwrap(), BiLaurent::zero());
    }

    #[test]
    fn laurent_rejects_fractional_and_negative_y() {
        let e = parse_expr("x^(1/2)").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(e.message.contains("fractional exponent"), "{e}");
        let e = parse_expr("y^-1").unwrap_err();
        assert!(e.message.contains("negative exponent on `y`"), "{e}");
        let e = parse_expr("x^1/2").unwrap_err();
        assert!(e.message.contains("parenthesized"), "{e}");
    }

    #[test]
    fn puiseux_accepts_rational_exponents() {
        let phi = parse_puiseux("x^(5/2) + x^(-1)").unwrap();
        let expect = &PuiseuxPoly::x_power(rat(5, 2)) + &PuiseuxPoly::x_power(int(-1));
        assert_eq!(phi, expect);
        assert_eq!(parse_puiseux(&phi.to_string()).unwrap(), phi);
        assert!(parse_puiseux("y").is_err());
        assert!(parse_puiseux("x^(1/0)").is_err());
    }

    #[test]
    fn trailing_garbage_is_located() {
        let e = parse_expr("x + ").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_expr("x ^").unwrap_err();
        assert!(e.pos >= 2, "{e}");
        let e = parse_expr("x Σ").unwrap_err();
        assert_eq!(e.pos, 2);
    }

    #[test]
    fn datum_round_trip_and_auto_scale() {
        let spec = parse_datum("phi = x^(5/2) + x^(-1); r = -14/5; scale = auto").unwrap();
        assert_eq!(spec.scale, BigInt::from(10));
        assert_eq!(spec.r, rat(-14, 5));
        let printed = spec.to_string();
        assert_eq!(parse_datum(&printed).unwrap(), spec);
        assert_eq!(parse_datum(&printed).unwrap().to_string(), printed);
    }

    #[test]
    fn datum_field_errors() {
        assert!(parse_datum("phi = 0; r = 1").is_err());
        let e = parse_datum("phi = 0; rho = 1; scale = 1").unwrap_err();
        assert!(e.message.contains("expected field `r`"), "{e}");
        let e = parse_datum("phi = 0; r = 1; scale = fast").unwrap_err();
        assert!(e.message.contains("auto"), "{e}");
        // offsets point into the original text
        let text = "phi = x^; r = 1; scale = 2";
        let e = parse_datum(text).unwrap_err();
        assert_eq!(e.pos, 8);
    }

    #[test]
    fn datum_tolerates_whitespace_and_trailing_semicolon() {
        let spec = parse_datum("phi = 0;\n  r = -2 ;\n  scale = 2 ;\n").unwrap();
        assert!(spec.phi.is_zero());
        assert_eq!(spec.r, int(-2));
        assert_eq!(spec.scale, BigInt::from(2));
    }
}
