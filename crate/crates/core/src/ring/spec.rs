//! Ring descriptions and their text grammar.
//!
//! ```text
//! spec := "Zmod(" int ")" | "GF(" int ")" | "GR(" int "," int "," int ")"
//!       | "Mat(" int "," spec ")" | "UT(" int "," spec ")"
//!       | "Nil(" spec "," int ")" | "Prod(" spec { "," spec } ")"
//! ```
//!
//! Whitespace is ignored everywhere.

use std::fmt;
use std::str::FromStr;

use crate::error::SpecError;
use crate::ntheory::{is_prime, prime_power};

/// Parse tree of a finite unital ring built from the constructor grammar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// Integers modulo `n`.
    Zmod(u64),
    /// Finite field with `q` elements.
    Gf(u64),
    /// Galois ring of characteristic `p^m` with residue field of size `p^e`.
    Gr { p: u64, m: u32, e: u32 },
    /// Full `d x d` matrices.
    Mat(usize, Box<RingSpec>),
    /// Upper triangular `d x d` matrices.
    Ut(usize, Box<RingSpec>),
    /// Truncated polynomials `R[x]/(x^k)`.
    Nil(Box<RingSpec>, usize),
    /// Direct product.
    Prod(Vec<RingSpec>),
}

impl RingSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let compact: Vec<(usize, u8)> = text
            .bytes()
            .enumerate()
            .filter(|(_, b)| !b.is_ascii_whitespace())
            .collect();
        let mut parser = Parser {
            toks: &compact,
            pos: 0,
            len: text.len(),
        };
        let spec = parser.spec()?;
        if parser.pos != compact.len() {
            return Err(parser.error("trailing input"));
        }
        spec.validate()?;
        Ok(spec)
    }

    /// Checks every numeric constraint of the grammar.
    pub fn validate(&self) -> Result<(), SpecError> {
        let bad = |msg: String| Err(SpecError::Semantic(msg));
        match self {
            RingSpec::Zmod(n) => {
                if *n < 2 {
                    return bad(format!("Zmod({n}): modulus must be at least 2"));
                }
            }
            RingSpec::Gf(q) => {
                if prime_power(*q).is_none() {
                    return bad(format!("GF({q}): {q} is not a prime power"));
                }
            }
            RingSpec::Gr { p, m, e } => {
                if !is_prime(*p) {
                    return bad(format!("GR({p},{m},{e}): {p} is not prime"));
                }
                if *m < 1 || *e < 1 {
                    return bad(format!("GR({p},{m},{e}): m and e must be positive"));
                }
                if p.checked_pow(*m).is_none_or(|pm| pm > u32::MAX as u64) {
                    return bad(format!("GR({p},{m},{e}): p^m is too large"));
                }
            }
            RingSpec::Mat(d, inner) | RingSpec::Ut(d, inner) => {
                if *d < 1 {
                    return bad(format!("{self}: dimension must be positive"));
                }
                inner.validate()?;
            }
            RingSpec::Nil(inner, k) => {
                if *k < 2 {
                    return bad(format!("{self}: truncation order must be at least 2"));
                }
                inner.validate()?;
            }
            RingSpec::Prod(factors) => {
                if factors.len() < 2 {
                    return bad("Prod needs at least two factors".into());
                }
                for f in factors {
                    f.validate()?;
                }
            }
        }
        Ok(())
    }

    pub fn zmod(n: u64) -> Self {
        RingSpec::Zmod(n)
    }

    pub fn gf(q: u64) -> Self {
        RingSpec::Gf(q)
    }

    pub fn mat(d: usize, inner: RingSpec) -> Self {
        RingSpec::Mat(d, Box::new(inner))
    }

    pub fn ut(d: usize, inner: RingSpec) -> Self {
        RingSpec::Ut(d, Box::new(inner))
    }

    pub fn nil(inner: RingSpec, k: usize) -> Self {
        RingSpec::Nil(Box::new(inner), k)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(n) => write!(f, "Zmod({n})"),
            RingSpec::Gf(q) => write!(f, "GF({q})"),
            RingSpec::Gr { p, m, e } => write!(f, "GR({p},{m},{e})"),
            RingSpec::Mat(d, inner) => write!(f, "Mat({d},{inner})"),
            RingSpec::Ut(d, inner) => write!(f, "UT({d},{inner})"),
            RingSpec::Nil(inner, k) => write!(f, "Nil({inner},{k})"),
            RingSpec::Prod(factors) => {
                write!(f, "Prod(")?;
                for (i, x) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for RingSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RingSpec::parse(s)
    }
}

struct Parser<'a> {
    toks: &'a [(usize, u8)],
    pos: usize,
    len: usize,
}

impl Parser<'_> {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |t| t.0)
    }

    fn error(&self, msg: &str) -> SpecError {
        SpecError::Syntax {
            pos: self.offset(),
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn expect(&mut self, c: u8) -> Result<(), SpecError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(u8::is_ascii_alphabetic) {
            s.push(c as char);
            self.pos += 1;
        }
        s
    }

    fn int(&mut self) -> Result<u64, SpecError> {
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(c) = self.peek().filter(u8::is_ascii_digit) {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as u64))
                .ok_or_else(|| self.error("integer too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        Ok(v)
    }

    fn small(&mut self) -> Result<u32, SpecError> {
        let v = self.int()?;
        u32::try_from(v).map_err(|_| self.error("integer too large"))
    }

    fn spec(&mut self) -> Result<RingSpec, SpecError> {
        let at = self.pos;
        let name = self.ident();
        self.expect(b'(')?;
        let spec = match name.as_str() {
            "Zmod" => RingSpec::Zmod(self.int()?),
            "GF" => RingSpec::Gf(self.int()?),
            "GR" => {
                let p = self.int()?;
                self.expect(b',')?;
                let m = self.small()?;
                self.expect(b',')?;
                let e = self.small()?;
                RingSpec::Gr { p, m, e }
            }
            "Mat" | "UT" => {
                let d = self.small()? as usize;
                self.expect(b',')?;
                let inner = Box::new(self.spec()?);
                if name == "Mat" {
                    RingSpec::Mat(d, inner)
                } else {
                    RingSpec::Ut(d, inner)
                }
            }
            "Nil" => {
                let inner = Box::new(self.spec()?);
                self.expect(b',')?;
                RingSpec::Nil(inner, self.small()? as usize)
            }
            "Prod" => {
                let mut factors = vec![self.spec()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    factors.push(self.spec()?);
                }
                RingSpec::Prod(factors)
            }
            _ => {
                self.pos = at;
                return Err(self.error("unknown constructor"));
            }
        };
        self.expect(b')')?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar_productions() {
        assert_eq!(RingSpec::parse("Zmod(4)").unwrap(), RingSpec::Zmod(4));
        assert_eq!(
            RingSpec::parse("Mat(2,GF(2))").unwrap(),
            RingSpec::mat(2, RingSpec::Gf(2))
        );
        assert_eq!(
            RingSpec::parse(" Prod( GF(4) , Zmod(9) ) ").unwrap(),
            RingSpec::Prod(vec![RingSpec::Gf(4), RingSpec::Zmod(9)])
        );
        assert_eq!(
            RingSpec::parse("Nil(GR(3,2,1),2)").unwrap(),
            RingSpec::nil(RingSpec::Gr { p: 3, m: 2, e: 1 }, 2)
        );
    }

    #[test]
    fn rejects_semantic_violations() {
        assert!(matches!(
            RingSpec::parse("GF(6)"),
            Err(SpecError::Semantic(msg)) if msg.contains("not a prime power")
        ));
        assert!(matches!(RingSpec::parse("Nil(GF(2),1)"), Err(SpecError::Semantic(_))));
        assert!(matches!(RingSpec::parse("Zmod(1)"), Err(SpecError::Semantic(_))));
        assert!(matches!(RingSpec::parse("GR(4,2,1)"), Err(SpecError::Semantic(_))));
        assert!(matches!(RingSpec::parse("Prod(GF(2))"), Err(SpecError::Semantic(_))));
        assert!(matches!(RingSpec::parse("Mat(0,GF(2))"), Err(SpecError::Semantic(_))));
    }

    #[test]
    fn reports_syntax_position() {
        match RingSpec::parse("Mat(2;GF(2))") {
            Err(SpecError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(RingSpec::parse("Foo(2)"), Err(SpecError::Syntax { pos: 0, .. })));
        assert!(matches!(RingSpec::parse("GF(2))"), Err(SpecError::Syntax { .. })));
        assert!(matches!(RingSpec::parse("GF()"), Err(SpecError::Syntax { .. })));
    }

    #[test]
    fn display_round_trips() {
        for s in ["Zmod(6)", "UT(2,GF(2))", "Prod(GF(4),Zmod(9),Nil(GF(3),3))", "GR(2,2,2)"] {
            assert_eq!(RingSpec::parse(s).unwrap().to_string(), s);
        }
    }
}
