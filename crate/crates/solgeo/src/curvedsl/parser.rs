//! Lexer and recursive-descent parser for the curve expression language.
//!
//! Errors carry the byte offset of the offending token together with what
//! the parser expected there; end of input reports the offset one past the
//! last byte.

use std::fmt;

use super::Expr;

/// Syntax error at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at byte {}: expected {}, found {}",
            self.offset, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    /// Literal value plus its integer reading when the source was all digits.
    Num(f64, Option<i64>),
    Var,
    Func(Func),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Func {
    Sin,
    Cos,
    Exp,
    Log,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v, Some(_)) => format!("integer {v}"),
            Tok::Num(v, None) => format!("number {v}"),
            Tok::Var => "'u'".to_string(),
            Tok::Func(f) => format!("function '{}'", f.name()),
            Tok::Plus => "'+'".to_string(),
            Tok::Minus => "'-'".to_string(),
            Tok::Star => "'*'".to_string(),
            Tok::Slash => "'/'".to_string(),
            Tok::Caret => "'^'".to_string(),
            Tok::LParen => "'('".to_string(),
            Tok::RParen => "')'".to_string(),
        }
    }
}

impl Func {
    fn name(&self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
        }
    }

    fn build(&self, arg: Expr) -> Expr {
        match self {
            Func::Sin => Expr::Sin(Box::new(arg)),
            Func::Cos => Expr::Cos(Box::new(arg)),
            Func::Exp => Expr::Exp(Box::new(arg)),
            Func::Log => Expr::Log(Box::new(arg)),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let mut pure_digits = i > start;
                if i < bytes.len() && bytes[i] == b'.' {
                    pure_digits = false;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        pure_digits = false;
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &input[start..i];
                let value: f64 = text.parse().map_err(|_| ParseError {
                    offset: start,
                    expected: "a numeric literal".to_string(),
                    found: format!("'{text}'"),
                })?;
                let int = if pure_digits { text.parse::<i64>().ok() } else { None };
                toks.push((start, Tok::Num(value, int)));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &input[start..i];
                let tok = match word {
                    "u" => Tok::Var,
                    "sin" => Tok::Func(Func::Sin),
                    "cos" => Tok::Func(Func::Cos),
                    "exp" => Tok::Func(Func::Exp),
                    "log" => Tok::Func(Func::Log),
                    _ => {
                        return Err(ParseError {
                            offset: start,
                            expected: "'u' or one of sin, cos, exp, log".to_string(),
                            found: format!("identifier '{word}'"),
                        })
                    }
                };
                toks.push((start, tok));
            }
            _ => {
                return Err(ParseError {
                    offset: i,
                    expected: "an operand or operator".to_string(),
                    found: format!("character '{c}'"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<&(usize, Tok)> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some((off, tok)) => ParseError {
                offset: *off,
                expected: expected.to_string(),
                found: tok.describe(),
            },
            None => ParseError {
                offset: self.end,
                expected: expected.to_string(),
                found: "end of input".to_string(),
            },
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some((_, tok)) = self.peek() {
            let op = match tok {
                Tok::Plus => Expr::Add as fn(_, _) -> _,
                Tok::Minus => Expr::Sub as fn(_, _) -> _,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = op(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some((_, tok)) = self.peek() {
            let op = match tok {
                Tok::Star => Expr::Mul as fn(_, _) -> _,
                Tok::Slash => Expr::Div as fn(_, _) -> _,
                _ => break,
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = op(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Some((_, Tok::Minus))) {
            self.bump();
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some((_, Tok::Caret))) {
            self.bump();
            let n = self.integer_exponent()?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn integer_exponent(&mut self) -> Result<i32, ParseError> {
        let neg = if matches!(self.peek(), Some((_, Tok::Minus))) {
            self.bump();
            true
        } else {
            false
        };
        match self.peek() {
            Some((off, Tok::Num(_, Some(n)))) => {
                let off = *off;
                let n = *n;
                self.bump();
                let signed = if neg { -n } else { n };
                i32::try_from(signed).map_err(|_| ParseError {
                    offset: off,
                    expected: "an integer exponent within i32 range".to_string(),
                    found: format!("integer {signed}"),
                })
            }
            _ => Err(self.error_here("an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some((_, Tok::Num(v, _))) => {
                self.bump();
                Ok(Expr::Num(v))
            }
            Some((_, Tok::Var)) => {
                self.bump();
                Ok(Expr::Var)
            }
            Some((_, Tok::Func(f))) => {
                self.bump();
                if !matches!(self.peek(), Some((_, Tok::LParen))) {
                    return Err(self.error_here("'(' after function name"));
                }
                self.bump();
                let arg = self.expr()?;
                if !matches!(self.peek(), Some((_, Tok::RParen))) {
                    return Err(self.error_here("')'"));
                }
                self.bump();
                Ok(f.build(arg))
            }
            Some((_, Tok::LParen)) => {
                self.bump();
                let inner = self.expr()?;
                if !matches!(self.peek(), Some((_, Tok::RParen))) {
                    return Err(self.error_here("')'"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error_here("an operand")),
        }
    }
}

/// Parse an expression over the variable `u`.
pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: input.len(),
    };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.error_here("end of input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_binds_power_tightest() {
        // -u^2 is -(u^2), and -2*3 multiplies the negated literal.
        assert_eq!(
            parse("-u^2").unwrap(),
            Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::Var), 2)))
        );
        assert_eq!(
            parse("-2*u").unwrap(),
            Expr::Mul(
                Box::new(Expr::Neg(Box::new(Expr::Num(2.0)))),
                Box::new(Expr::Var)
            )
        );
    }

    #[test]
    fn subtraction_associates_left() {
        let e = parse("1-2-3").unwrap();
        assert_eq!(
            e,
            Expr::Sub(
                Box::new(Expr::Sub(
                    Box::new(Expr::Num(1.0)),
                    Box::new(Expr::Num(2.0))
                )),
                Box::new(Expr::Num(3.0))
            )
        );
        assert_eq!(e.eval(0.0), Ok(-4.0));
    }

    #[test]
    fn division_associates_left() {
        assert_eq!(parse("8/4/2").unwrap().eval(0.0), Ok(1.0));
    }

    #[test]
    fn parses_negative_exponent() {
        let e = parse("u^-2").unwrap();
        assert_eq!(e, Expr::Pow(Box::new(Expr::Var), -2));
        assert_eq!(e.eval(2.0), Ok(0.25));
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(parse(" 1 + 2 * u ").unwrap(), parse("1+2*u").unwrap());
    }

    #[test]
    fn scientific_literals_lex() {
        assert_eq!(parse("1.5e2").unwrap().eval(0.0), Ok(150.0));
        assert_eq!(parse("2E-1").unwrap().eval(0.0), Ok(0.2));
    }

    #[test]
    fn error_offset_at_end_of_input() {
        let err = parse("1/(").unwrap_err();
        assert_eq!(err.offset, 3);
        assert_eq!(err.found, "end of input");
    }

    #[test]
    fn error_offset_mid_stream() {
        let err = parse("2*^3").unwrap_err();
        assert_eq!(err.offset, 2);
        let err = parse("1 2").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(err.expected.contains("end of input"));
    }

    #[test]
    fn rejects_fractional_exponent() {
        let err = parse("u^1.5").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(err.expected.contains("integer exponent"));
    }

    #[test]
    fn rejects_unknown_identifier() {
        let err = parse("foo(u)").unwrap_err();
        assert_eq!(err.offset, 0);
        assert!(err.found.contains("foo"));
    }

    #[test]
    fn rejects_stray_character() {
        let err = parse("1@2").unwrap_err();
        assert_eq!(err.offset, 1);
    }

    #[test]
    fn prefixes_of_a_valid_expression_report_positions_in_range() {
        let text = "sin(u^2)+(1.5*u-2)/(u^2+1)";
        assert!(parse(text).is_ok());
        for cut in 0..text.len() {
            let prefix = &text[..cut];
            if let Err(e) = parse(prefix) {
                assert!(e.offset <= prefix.len(), "offset {} beyond prefix {prefix:?}", e.offset);
            }
        }
    }
}
