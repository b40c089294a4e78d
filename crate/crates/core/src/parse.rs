//! Recursive-descent parsers for the text forms used on the command line.
//!
//! Every error carries the byte span of the offending input.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::onh::{Letter, OnhWord};
use crate::scalars::{qbinom, qfact, qint, CoveringScalar};
use crate::skewpoly::SkewPoly;
use crate::udot::{CanonicalElement, Kind};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let t = self.rest();
        self.pos += t.len() - t.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>, start: usize) -> Result<T> {
        let end = if start < self.src.len() {
            start + self.src[start..].chars().next().map_or(1, |c| c.len_utf8())
        } else {
            start
        };
        Err(Error::parse(msg, start, end.max(self.pos)))
    }

    fn unexpected<T>(&mut self, what: &str) -> Result<T> {
        self.skip_ws();
        let p = self.pos;
        match self.rest().chars().next() {
            Some(c) => Err(Error::parse(
                format!("expected {what}, found {c:?}"),
                p,
                p + c.len_utf8(),
            )),
            None => Err(Error::parse(
                format!("expected {what}, found end of input"),
                p,
                p,
            )),
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.unexpected(&format!("{tok:?}"))
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }

    /// Unsigned decimal digits, no leading whitespace skipped.
    fn digits(&mut self) -> Option<(usize, &'a str)> {
        let start = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((start, &self.src[start..start + len]))
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        match self.digits() {
            Some((start, d)) => d
                .parse()
                .or_else(|_| self.err("integer out of range", start)),
            None => self.unexpected("an integer"),
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat("-");
        let v = self.uint()? as i128;
        let v = if neg { -v } else { v };
        i64::try_from(v).or_else(|_| self.err("integer out of range", start))
    }

    fn starts_with(&mut self, tok: &str) -> bool {
        self.skip_ws();
        self.rest().starts_with(tok)
    }
}

// ---------------------------------------------------------------- scalars

impl Parser<'_> {
    fn scalar_expr(&mut self) -> Result<CoveringScalar> {
        let mut acc = if self.eat("-") {
            -self.scalar_term()?
        } else {
            self.eat("+");
            self.scalar_term()?
        };
        loop {
            if self.eat("+") {
                acc += &self.scalar_term()?;
            } else if self.eat("-") {
                acc -= &self.scalar_term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_scalar_atom(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == 'q' || c == 'p' || c == '(' || c == '[')
    }

    fn scalar_term(&mut self) -> Result<CoveringScalar> {
        let mut acc = self.scalar_power()?;
        loop {
            if self.eat("*") || self.starts_scalar_atom() {
                acc = &acc * &self.scalar_power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn scalar_power(&mut self) -> Result<CoveringScalar> {
        self.skip_ws();
        let start = self.pos;
        let base = self.scalar_atom()?;
        if !self.eat("^") {
            return Ok(base);
        }
        let paren = self.eat("(");
        let k = self.int()?;
        if paren {
            self.expect(")")?;
        }
        if k >= 0 {
            return Ok(base.pow(k as u32));
        }
        CoveringScalar::one()
            .div_exact(&base.pow(k.unsigned_abs() as u32))
            .or_else(|_| self.err("negative power of a non-unit", start))
    }

    fn scalar_atom(&mut self) -> Result<CoveringScalar> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("pi") {
            return Ok(CoveringScalar::pi());
        }
        if self.eat("q") {
            return Ok(CoveringScalar::q());
        }
        if self.eat("(") {
            let v = self.scalar_expr()?;
            self.expect(")")?;
            return Ok(v);
        }
        if self.eat("[") {
            // [n], [n]!, [n; a]
            let n = self.int()?;
            if self.eat(";") {
                let a = self.uint()?;
                self.expect("]")?;
                return qbinom(n, a as u32).or_else(|e| self.err(e.to_string(), start));
            }
            self.expect("]")?;
            if self.eat("!") {
                if n < 0 {
                    return self.err("factorial of a negative integer", start);
                }
                return Ok(qfact(n as u32));
            }
            return Ok(qint(n));
        }
        if let Some((_, d)) = self.digits() {
            let v: BigInt = d.parse().expect("digits");
            return Ok(CoveringScalar::from_int(v));
        }
        self.unexpected("a number, q, pi, [n] or '('")
    }
}

/// Parse a scalar such as `q^-1 + pi*q`, `(1 - pi q^2)^2` or `[3]! * [5; 2]`.
pub fn parse_scalar(s: &str) -> Result<CoveringScalar> {
    let mut p = Parser::new(s);
    let v = p.scalar_expr()?;
    p.finish()?;
    Ok(v)
}

// ---------------------------------------------------------- skew polynomials

impl Parser<'_> {
    fn skew_expr(&mut self, n: usize) -> Result<SkewPoly> {
        let mut acc = if self.eat("-") {
            self.skew_term(n)?.scale(-1)
        } else {
            self.eat("+");
            self.skew_term(n)?
        };
        loop {
            if self.eat("+") {
                acc = acc.add(&self.skew_term(n)?)?;
            } else if self.eat("-") {
                acc = acc.sub(&self.skew_term(n)?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn skew_term(&mut self, n: usize) -> Result<SkewPoly> {
        let mut acc = self.skew_factor(n)?;
        while self.eat("*") {
            acc = acc.mul(&self.skew_factor(n)?)?;
        }
        Ok(acc)
    }

    fn skew_factor(&mut self, n: usize) -> Result<SkewPoly> {
        self.skip_ws();
        let start = self.pos;
        let base = if self.eat("x") {
            let i = self.uint()? as usize;
            if i == 0 || i > n {
                return self.err(format!("variable x{i} out of range for n = {n}"), start);
            }
            SkewPoly::var(n, i)
        } else if self.eat("(") {
            let v = self.skew_expr(n)?;
            self.expect(")")?;
            v
        } else if let Some((_, d)) = self.digits() {
            let c: i64 = d
                .parse()
                .or_else(|_| self.err("integer out of range", start))?;
            SkewPoly::one(n).scale(c)
        } else {
            return self.unexpected("x<k>, an integer or '('");
        };
        if !self.eat("^") {
            return Ok(base);
        }
        let k = self.uint()?;
        let mut out = SkewPoly::one(n);
        for _ in 0..k {
            out = out.mul(&base)?;
        }
        Ok(out)
    }
}

/// Largest `k` with `x<k>` (or `d<k>` plus one) occurring in `s`.
pub fn infer_rank(s: &str) -> usize {
    let b = s.as_bytes();
    let mut n = 1;
    for (i, &c) in b.iter().enumerate() {
        if c == b'x' || c == b'd' {
            let d: String = s[i + 1..]
                .chars()
                .take_while(|c| c.is_ascii_digit())
                .collect();
            if let Ok(k) = d.parse::<usize>() {
                n = n.max(if c == b'd' { k + 1 } else { k });
            }
        }
    }
    n
}

/// Parse a skew polynomial in `x1..xn`, e.g. `2*x1*x1*x2 - x2*x3` or `x1^2*x2`.
pub fn parse_skewpoly(s: &str, n: usize) -> Result<SkewPoly> {
    let mut p = Parser::new(s);
    let v = p.skew_expr(n)?;
    p.finish()?;
    Ok(v)
}

// ------------------------------------------------------------- ONH words

impl Parser<'_> {
    fn starts_letter(&mut self) -> bool {
        self.skip_ws();
        let mut it = self.rest().chars();
        matches!((it.next(), it.next()), (Some('x' | 'd'), Some(c)) if c.is_ascii_digit())
    }

    fn onh_word(&mut self, n: usize) -> Result<OnhWord> {
        let mut letters = Vec::new();
        self.skip_ws();
        let start = self.pos;
        if self.starts_with("1") && !self.starts_letter() {
            self.expect("1")?;
            self.eat("*");
        }
        while self.starts_letter() {
            self.skip_ws();
            let lstart = self.pos;
            let d = self.eat("d");
            if !d {
                self.expect("x")?;
            }
            let i = self.uint()? as usize;
            let reps = if self.eat("^") { self.uint()? } else { 1 };
            let l = if d { Letter::D(i) } else { Letter::X(i) };
            let ok = if d {
                (1..n).contains(&i)
            } else {
                (1..=n).contains(&i)
            };
            if !ok {
                return self.err(format!("{l} out of range in ONH_{n}"), lstart);
            }
            letters.extend(std::iter::repeat_n(l, reps as usize));
            self.eat("*");
        }
        if letters.is_empty() && self.pos == start {
            return self.unexpected("a word such as `x1 d2` or `1`");
        }
        OnhWord::new(n, letters)
    }

    fn onh_combination(&mut self, n: usize) -> Result<Vec<(i64, OnhWord)>> {
        let mut out = Vec::new();
        let mut sign = if self.eat("-") {
            -1
        } else {
            self.eat("+");
            1
        };
        loop {
            let mut c = sign;
            if matches!(self.peek(), Some(ch) if ch.is_ascii_digit()) {
                let save = self.pos;
                let k = self.uint()? as i64;
                if self.eat("*") || self.starts_letter() {
                    c *= k;
                } else {
                    self.pos = save;
                }
            }
            let w = self.onh_word(n)?;
            out.push((c, w));
            if self.eat("+") {
                sign = 1;
            } else if self.eat("-") {
                sign = -1;
            } else {
                return Ok(out);
            }
        }
    }
}

/// Parse a word such as `x1 d2 x1^2`; `1` is the empty word.
pub fn parse_onh_word(s: &str, n: usize) -> Result<OnhWord> {
    let mut p = Parser::new(s);
    let w = p.onh_word(n)?;
    p.finish()?;
    Ok(w)
}

/// Parse an integer combination of words such as `x2 d1 - 2*d1 x1 + 1`.
pub fn parse_onh_combination(s: &str, n: usize) -> Result<Vec<(i64, OnhWord)>> {
    let mut p = Parser::new(s);
    let v = p.onh_combination(n)?;
    p.finish()?;
    Ok(v)
}

// ------------------------------------------------------- canonical elements

impl Parser<'_> {
    fn starts_symbol(&mut self) -> bool {
        self.skip_ws();
        let r = self.rest();
        r.starts_with("E(") || r.starts_with("F(") || {
            let t = r.strip_prefix('1').map(str::trim_start);
            matches!(t, Some(t) if t.starts_with('@'))
        }
    }

    fn symbol(&mut self) -> Result<CanonicalElement> {
        self.skip_ws();
        let start = self.pos;
        let mut parts: Vec<(char, u32)> = Vec::new();
        if !self.eat("1") {
            while let Some(c) = self.peek().filter(|&c| c == 'E' || c == 'F') {
                self.pos += 1;
                self.expect("(")?;
                let k = self.uint()? as u32;
                self.expect(")")?;
                parts.push((c, k));
            }
        }
        self.expect("@")?;
        self.expect("lam")?;
        self.expect("=")?;
        let lam = self.int()?;
        let (kind, a, b) = match parts.as_slice() {
            [] => (Kind::FE, 0, 0),
            [('E', a)] => (Kind::EF, *a, 0),
            [('F', b)] => (Kind::FE, 0, *b),
            [('E', a), ('F', b)] => (Kind::EF, *a, *b),
            [('F', b), ('E', a)] => (Kind::FE, *a, *b),
            _ => return self.err("expected E(a)F(b), F(b)E(a), E(a), F(b) or 1", start),
        };
        Ok(CanonicalElement::monomial(kind, a, b, lam))
    }

    fn udot_term(&mut self) -> Result<CanonicalElement> {
        let mut coeff = CoveringScalar::one();
        while !self.starts_symbol() {
            if self.eat("-") {
                coeff = -coeff;
                continue;
            }
            coeff = &coeff * &self.scalar_power()?;
            if !self.eat("*") && !self.starts_symbol() && !self.starts_scalar_atom() {
                return self.unexpected("'*' before a symbol");
            }
        }
        Ok(self.symbol()?.scale(&coeff))
    }

    fn udot_expr(&mut self) -> Result<CanonicalElement> {
        self.skip_ws();
        let mut start = self.pos;
        let mut acc = if self.eat("-") {
            self.udot_term()?.scale(&-CoveringScalar::one())
        } else {
            self.eat("+");
            self.udot_term()?
        };
        loop {
            let neg = if self.eat("+") {
                false
            } else if self.eat("-") {
                true
            } else {
                return Ok(acc);
            };
            let t = self.udot_term()?;
            let t = if neg {
                t.scale(&-CoveringScalar::one())
            } else {
                t
            };
            acc = match acc.add(&t) {
                Ok(v) => v,
                Err(_) => return self.err("all terms must share source and target weights", start),
            };
            start = self.pos;
        }
    }
}

/// Parse `E(a)F(b)@lam=n`, `F(b)E(a)@lam=n`, `1@lam=n`, or a combination
/// such as `(q^-1 + pi*q)*1@lam=2 + pi*F(1)E(1)@lam=2`.
///
/// Monomials written in the non-canonical order are rewritten canonically.
pub fn parse_canonical(s: &str) -> Result<CanonicalElement> {
    let mut p = Parser::new(s);
    let v = p.udot_expr()?;
    p.finish()?;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::onh::normal_form;

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("q^-1 + pi*q").unwrap(), qint(2));
        assert_eq!(parse_scalar("[2]").unwrap(), qint(2));
        assert_eq!(
            parse_scalar("pi q^2").unwrap(),
            CoveringScalar::monomial(1, 2, 1)
        );
        assert_eq!(parse_scalar("-(q - q)").unwrap(), CoveringScalar::zero());
        assert_eq!(parse_scalar("[4;2]").unwrap(), qbinom(4, 2).unwrap());
        assert_eq!(parse_scalar("[3]!").unwrap(), qfact(3));
        assert_eq!(
            parse_scalar("2*q^(-3)").unwrap(),
            CoveringScalar::monomial(2, -3, 0)
        );
        for s in ["q^-1 + pi*q", "-3*pi*q^-2 + 2 - q^5", "0"] {
            let v = parse_scalar(s).unwrap();
            assert_eq!(v.to_string(), s);
        }
    }

    #[test]
    fn scalar_errors() {
        let e = parse_scalar("q + * 2").unwrap_err();
        match e {
            Error::Parse { span, .. } => assert_eq!(span, (4, 5)),
            _ => panic!("{e:?}"),
        }
        assert!(parse_scalar("(1 + q").is_err());
        assert!(parse_scalar("(1 + q)^-1").is_err());
        assert!(parse_scalar("").is_err());
    }

    #[test]
    fn skew() {
        let f = parse_skewpoly("2*x1*x1*x2 - x2*x3", 3).unwrap();
        assert_eq!(f.to_string(), "2*x1^2*x2 - x2*x3");
        let g = parse_skewpoly("x2*x1", 2).unwrap();
        assert_eq!(g.to_string(), "-x1*x2");
        assert_eq!(
            parse_skewpoly("x1^2*x2", 2).unwrap(),
            parse_skewpoly("x1*x1*x2", 2).unwrap()
        );
        assert!(parse_skewpoly("x4", 3).is_err());
        assert_eq!(infer_rank("x1*x3 - x2"), 3);
        assert_eq!(infer_rank("d2 x1"), 3);
    }

    #[test]
    fn onh() {
        let w = parse_onh_word("x2 d1", 2).unwrap();
        assert_eq!(normal_form(&w).to_string(), "1 - d1 x1");
        assert_eq!(
            parse_onh_word("x1^2", 2).unwrap().letters,
            vec![Letter::X(1); 2]
        );
        assert!(parse_onh_word("d2", 2).is_err());
        let c = parse_onh_combination("x2 d1 - 2*d1 x1 + 1", 2).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c[1].0, -2);
        assert!(c[2].1.letters.is_empty());
    }

    #[test]
    fn canonical() {
        let x = parse_canonical("E(1)F(2)@lam=-3").unwrap();
        assert_eq!(x.to_string(), "E(1)F(2)@lam=-3");
        let r = parse_canonical("E(1)F(2)@lam=3").unwrap();
        assert_eq!(r.to_string(), "(pi*q^-1 + q)*F(1)@lam=3 + F(2)E(1)@lam=3");
        let y = parse_canonical("F(1)E(0)@lam=5").unwrap();
        assert_eq!(y.to_string(), "F(1)@lam=5");
        let s = "(q^-1 + pi*q)*1@lam=2 + pi*F(1)E(1)@lam=2";
        assert_eq!(parse_canonical(s).unwrap().to_string(), s);
        let z = parse_canonical("-pi*q^2*E(1)@lam=0 - 2*E(1)@lam=0").unwrap();
        assert_eq!(z.to_string(), "(-2 - pi*q^2)*E(1)@lam=0");
        assert!(parse_canonical("E(1)@lam=0 + F(1)@lam=0").is_err());
        assert!(parse_canonical("E(1)@lam").is_err());
    }
}
