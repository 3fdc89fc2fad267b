//! The space-expression language: `S(k)`, `T(m)`, `RP(m)`, `CP(m)`,
//! `load(path)`, and `*` for products. Whitespace-insensitive,
//! case-sensitive names, left-associative products.

use std::fmt;

use tcn_core::algebra::{self, AlgebraError, SpaceDescriptor};
use tcn_core::scalar::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceExpr {
    Sphere(u32),
    Torus(u32),
    RealProjective(u32),
    ComplexProjective(u32),
    Load(String),
    Product(Box<SpaceExpr>, Box<SpaceExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    /// 1-based column of the offending input.
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at column {}", self.message, self.column)
    }
}

impl std::error::Error for ParseError {}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>, column: usize) -> ParseError {
        ParseError { message: message.into(), column: column + 1 }
    }

    fn skip_whitespace(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, wanted: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == wanted => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected {wanted:?}, found {c:?}"), self.pos)),
            None => Err(self.error(format!("expected {wanted:?}, found end of input"), self.pos)),
        }
    }

    fn parse_integer(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a positive integer", start));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let value: u32 = text
            .parse()
            .map_err(|_| self.error(format!("integer {text} is out of range"), start))?;
        if value == 0 {
            return Err(self.error("argument must be positive", start));
        }
        Ok(value)
    }

    fn parse_term(&mut self) -> Result<SpaceExpr, ParseError> {
        self.skip_whitespace();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a space name", start));
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        self.skip_whitespace();

        if name == "load" {
            self.expect('(')?;
            let path_start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos] != ')' {
                self.pos += 1;
            }
            if self.pos == self.chars.len() {
                return Err(self.error("unterminated load(...) path", path_start));
            }
            let path: String = self.chars[path_start..self.pos].iter().collect::<String>();
            let path = path.trim().to_string();
            if path.is_empty() {
                return Err(self.error("load(...) needs a file path", path_start));
            }
            self.expect(')')?;
            return Ok(SpaceExpr::Load(path));
        }

        let make = match name.as_str() {
            "S" => SpaceExpr::Sphere as fn(u32) -> SpaceExpr,
            "T" => SpaceExpr::Torus,
            "RP" => SpaceExpr::RealProjective,
            "CP" => SpaceExpr::ComplexProjective,
            _ => {
                return Err(self.error(format!("unknown space name {name:?}"), start));
            }
        };
        self.expect('(')?;
        self.skip_whitespace();
        let value = self.parse_integer()?;
        self.skip_whitespace();
        self.expect(')')?;
        Ok(make(value))
    }

    fn parse_expr(&mut self) -> Result<SpaceExpr, ParseError> {
        let mut expr = self.parse_term()?;
        loop {
            self.skip_whitespace();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    expr = SpaceExpr::Product(Box::new(expr), Box::new(rhs));
                }
                _ => break,
            }
        }
        Ok(expr)
    }
}

impl SpaceExpr {
    pub fn parse(text: &str) -> Result<SpaceExpr, ParseError> {
        let mut parser = Parser { chars: text.chars().collect(), pos: 0 };
        let expr = parser.parse_expr()?;
        parser.skip_whitespace();
        if let Some(c) = parser.peek() {
            return Err(parser.error(format!("unexpected {c:?} after expression"), parser.pos));
        }
        Ok(expr)
    }

    /// Builds the space; builder spaces use `field`, loaded files bring
    /// their own.
    pub fn build(&self, field: FieldSpec) -> Result<SpaceDescriptor, AlgebraError> {
        match self {
            SpaceExpr::Sphere(k) => algebra::sphere(*k, field),
            SpaceExpr::Torus(m) => algebra::torus(*m, field),
            SpaceExpr::RealProjective(m) => algebra::real_projective(*m),
            SpaceExpr::ComplexProjective(m) => algebra::complex_projective(*m, field),
            SpaceExpr::Load(path) => SpaceDescriptor::from_json_file(path),
            SpaceExpr::Product(a, b) => {
                let left = a.build(field)?;
                let right = b.build(field)?;
                algebra::product(&left, &right)
            }
        }
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Sphere(k) => write!(f, "S({k})"),
            SpaceExpr::Torus(m) => write!(f, "T({m})"),
            SpaceExpr::RealProjective(m) => write!(f, "RP({m})"),
            SpaceExpr::ComplexProjective(m) => write!(f, "CP({m})"),
            SpaceExpr::Load(path) => write!(f, "load({path})"),
            SpaceExpr::Product(a, b) => write!(f, "{a} * {b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_builders() {
        assert_eq!(SpaceExpr::parse("S(2)").unwrap(), SpaceExpr::Sphere(2));
        assert_eq!(
            SpaceExpr::parse("S(1)*S(1)").unwrap(),
            SpaceExpr::Product(Box::new(SpaceExpr::Sphere(1)), Box::new(SpaceExpr::Sphere(1)))
        );
        assert_eq!(
            SpaceExpr::parse("  RP( 3 ) * load( spaces/k.json ) ").unwrap(),
            SpaceExpr::Product(
                Box::new(SpaceExpr::RealProjective(3)),
                Box::new(SpaceExpr::Load("spaces/k.json".into()))
            )
        );
    }

    #[test]
    fn products_associate_left() {
        let parsed = SpaceExpr::parse("S(1)*T(2)*CP(1)").unwrap();
        assert_eq!(
            parsed,
            SpaceExpr::Product(
                Box::new(SpaceExpr::Product(
                    Box::new(SpaceExpr::Sphere(1)),
                    Box::new(SpaceExpr::Torus(2))
                )),
                Box::new(SpaceExpr::ComplexProjective(1))
            )
        );
    }

    #[test]
    fn reports_positions() {
        let err = SpaceExpr::parse("Q(3)").unwrap_err();
        assert!(err.message.contains("unknown space name"));
        assert_eq!(err.column, 1);

        let err = SpaceExpr::parse("S(0)").unwrap_err();
        assert!(err.message.contains("positive"));
        assert_eq!(err.column, 3);

        let err = SpaceExpr::parse("S(2) extra").unwrap_err();
        assert_eq!(err.column, 6);

        assert!(SpaceExpr::parse("s(2)").is_err(), "names are case-sensitive");
        assert!(SpaceExpr::parse("S(2").is_err());
        assert!(SpaceExpr::parse("").is_err());
    }

    #[test]
    fn builds_product_isomorphic_to_torus() {
        let field = FieldSpec::rationals();
        let circle_squared = SpaceExpr::parse("S(1)*S(1)").unwrap().build(field).unwrap();
        let torus = SpaceExpr::parse("T(2)").unwrap().build(field).unwrap();
        assert_eq!(circle_squared.algebra.dim(), torus.algebra.dim());
        let mut degrees_a: Vec<u32> = (0..4).map(|i| circle_squared.algebra.degree(i)).collect();
        let mut degrees_b: Vec<u32> = (0..4).map(|i| torus.algebra.degree(i)).collect();
        degrees_a.sort();
        degrees_b.sort();
        assert_eq!(degrees_a, degrees_b);
    }

    fn arb_expr() -> impl Strategy<Value = SpaceExpr> {
        // the grammar only produces left-nested products, so well-formed
        // expressions are folds over leaves
        let leaf = prop_oneof![
            (1u32..9).prop_map(SpaceExpr::Sphere),
            (1u32..9).prop_map(SpaceExpr::Torus),
            (1u32..9).prop_map(SpaceExpr::RealProjective),
            (1u32..9).prop_map(SpaceExpr::ComplexProjective),
            "[a-z][a-z0-9_./-]{0,15}".prop_map(SpaceExpr::Load),
        ];
        proptest::collection::vec(leaf, 1..5).prop_map(|leaves| {
            leaves
                .into_iter()
                .reduce(|a, b| SpaceExpr::Product(Box::new(a), Box::new(b)))
                .expect("at least one leaf")
        })
    }

    proptest! {
        #[test]
        fn display_round_trips(expr in arb_expr()) {
            let printed = expr.to_string();
            let reparsed = SpaceExpr::parse(&printed).unwrap();
            prop_assert_eq!(expr, reparsed);
        }
    }
}
