//! The group-expression language.
//!
//! ```text
//! expr := "C(" INT ")" | "E(" INT "," INT ")" | "A(" INT ")" | "S(" INT ")"
//!       | "pow(" expr "," INT ")" | "prod(" expr ("," expr)+ ")"
//!       | "wr(" expr "," expr ")" | "derived(" expr ")"
//!       | "base(" expr ")" | "b0(" expr ")"
//!       | "gens(" INT ";" CYCLES ("," CYCLES)* ")"
//! ```
//!
//! Whitespace is ignored between tokens. `base` and `b0` only accept a `wr`
//! argument.

use std::fmt;

use super::{
    alternating, cyclic, direct_power, direct_product, elementary_abelian, is_regular,
    regular_representation, symmetric, wreath, wreath_base_parts,
};
use crate::config::Guards;
use crate::error::{GwError, Result};
use crate::perm::{PermGroup, Permutation};
use crate::primes::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Cyclic(u64),
    ElemAbelian {
        p: u64,
        k: u64,
    },
    Alternating(u64),
    Symmetric(u64),
    Power(Box<GroupExpr>, u64),
    Product(Vec<GroupExpr>),
    Wreath(Box<GroupExpr>, Box<GroupExpr>),
    Derived(Box<GroupExpr>),
    Base(Box<GroupExpr>),
    BZero(Box<GroupExpr>),
    /// Degree and generators, each generator a list of disjoint cycles.
    Literal {
        degree: u64,
        generators: Vec<Vec<Vec<u32>>>,
    },
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "C({n})"),
            GroupExpr::ElemAbelian { p, k } => write!(f, "E({p},{k})"),
            GroupExpr::Alternating(n) => write!(f, "A({n})"),
            GroupExpr::Symmetric(n) => write!(f, "S({n})"),
            GroupExpr::Power(e, k) => write!(f, "pow({e}, {k})"),
            GroupExpr::Product(es) => {
                f.write_str("prod(")?;
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(")")
            }
            GroupExpr::Wreath(a, s) => write!(f, "wr({a}, {s})"),
            GroupExpr::Derived(e) => write!(f, "derived({e})"),
            GroupExpr::Base(e) => write!(f, "base({e})"),
            GroupExpr::BZero(e) => write!(f, "b0({e})"),
            GroupExpr::Literal { degree, generators } => {
                write!(f, "gens({degree}; ")?;
                for (i, g) in generators.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    if g.is_empty() {
                        f.write_str("()")?;
                    }
                    for c in g {
                        let pts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                        write!(f, "({})", pts.join(" "))?;
                    }
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    LParen,
    RParen,
    Comma,
    Semi,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

const EXPR_START: &[&str] = &[
    "C", "E", "A", "S", "pow", "prod", "wr", "derived", "base", "b0", "gens",
];

fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut advance = |c: char| {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        };
        if c.is_whitespace() {
            advance(c);
            chars.next();
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                advance(d);
                chars.next();
            }
            Tok::Int(s.parse().map_err(|_| GwError::Parse {
                line: l,
                column: col,
                message: format!("integer {s} out of range"),
                expected: vec!["integer".into()],
            })?)
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_alphanumeric() && d != '_' {
                    break;
                }
                s.push(d);
                advance(d);
                chars.next();
            }
            Tok::Ident(s)
        } else {
            advance(c);
            chars.next();
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                other => {
                    return Err(GwError::Parse {
                        line: l,
                        column: col,
                        message: format!("unexpected character {other:?}"),
                        expected: EXPR_START.iter().map(|s| s.to_string()).collect(),
                    })
                }
            }
        };
        out.push(Spanned {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn error_here(&self, message: impl Into<String>, expected: &[&str]) -> GwError {
        let t = self.peek();
        GwError::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, want: Tok, name: &str) -> Result<()> {
        if self.peek().tok == want {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error_here(format!("found {}", self.peek().tok.describe()), &[name]))
        }
    }

    fn int(&mut self, what: &str) -> Result<u64> {
        match self.peek().tok {
            Tok::Int(n) if n > 0 => {
                self.pos += 1;
                Ok(n)
            }
            Tok::Int(_) => {
                Err(self.error_here(format!("{what} must be positive"), &["positive integer"]))
            }
            ref t => Err(self.error_here(format!("found {}", t.describe()), &["integer"])),
        }
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let start = self.peek().clone();
        let name = match &start.tok {
            Tok::Ident(s) if EXPR_START.contains(&s.as_str()) => s.clone(),
            t => return Err(self.error_here(format!("found {}", t.describe()), EXPR_START)),
        };
        self.pos += 1;
        self.expect(Tok::LParen, "(")?;
        let e = match name.as_str() {
            "C" => GroupExpr::Cyclic(self.int("n")?),
            "A" => GroupExpr::Alternating(self.int("n")?),
            "S" => GroupExpr::Symmetric(self.int("n")?),
            "E" => {
                let at = self.peek().clone();
                let p = self.int("p")?;
                if !is_prime(p) {
                    return Err(GwError::Parse {
                        line: at.line,
                        column: at.column,
                        message: format!("E(p,k) requires a prime p, got {p}"),
                        expected: vec!["prime".into()],
                    });
                }
                self.expect(Tok::Comma, ",")?;
                GroupExpr::ElemAbelian {
                    p,
                    k: self.int("k")?,
                }
            }
            "pow" => {
                let e = self.expr()?;
                self.expect(Tok::Comma, ",")?;
                GroupExpr::Power(Box::new(e), self.int("exponent")?)
            }
            "prod" => {
                let mut es = vec![self.expr()?];
                while self.peek().tok == Tok::Comma {
                    self.pos += 1;
                    es.push(self.expr()?);
                }
                if es.len() < 2 {
                    return Err(self.error_here("prod requires at least two factors", &[","]));
                }
                GroupExpr::Product(es)
            }
            "wr" => {
                let a = self.expr()?;
                self.expect(Tok::Comma, ",")?;
                let s = self.expr()?;
                GroupExpr::Wreath(Box::new(a), Box::new(s))
            }
            "derived" => GroupExpr::Derived(Box::new(self.expr()?)),
            "base" | "b0" => {
                let arg_at = self.peek().clone();
                let arg = self.expr()?;
                if !matches!(arg, GroupExpr::Wreath(..)) {
                    return Err(GwError::Parse {
                        line: arg_at.line,
                        column: arg_at.column,
                        message: format!("{name} requires a wreath argument, got {arg}"),
                        expected: vec!["wr".into()],
                    });
                }
                if name == "base" {
                    GroupExpr::Base(Box::new(arg))
                } else {
                    GroupExpr::BZero(Box::new(arg))
                }
            }
            "gens" => self.literal()?,
            _ => unreachable!(),
        };
        self.expect(Tok::RParen, ")")?;
        Ok(e)
    }

    fn literal(&mut self) -> Result<GroupExpr> {
        let degree = self.int("degree")?;
        self.expect(Tok::Semi, ";")?;
        let mut generators = Vec::new();
        loop {
            let at = self.peek().clone();
            let mut cycles = Vec::new();
            if self.peek().tok != Tok::LParen {
                return Err(
                    self.error_here(format!("found {}", self.peek().tok.describe()), &["("])
                );
            }
            while self.peek().tok == Tok::LParen {
                self.pos += 1;
                let mut cyc = Vec::new();
                while let Tok::Int(x) = self.peek().tok {
                    let x = u32::try_from(x)
                        .map_err(|_| self.error_here("point out of range", &["point"]))?;
                    cyc.push(x);
                    self.pos += 1;
                }
                self.expect(Tok::RParen, ")")?;
                if cyc.len() > 1 {
                    cycles.push(cyc);
                }
            }
            Permutation::from_cycles(degree as usize, &cycles).map_err(|e| GwError::Parse {
                line: at.line,
                column: at.column,
                message: e.to_string(),
                expected: vec!["cycles".into()],
            })?;
            generators.push(cycles);
            if self.peek().tok == Tok::Comma {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(GroupExpr::Literal { degree, generators })
    }
}

/// Parses the expression language into a [`GroupExpr`].
pub fn parse_group_expr(text: &str) -> Result<GroupExpr> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.error_here(
            format!("trailing {}", p.peek().tok.describe()),
            &["end of input"],
        ));
    }
    Ok(e)
}

impl std::str::FromStr for GroupExpr {
    type Err = GwError;

    fn from_str(s: &str) -> Result<Self> {
        parse_group_expr(s)
    }
}

fn regular(group: PermGroup, guards: &Guards) -> Result<PermGroup> {
    if is_regular(&group) {
        Ok(group)
    } else {
        regular_representation(&group, guards)
    }
}

/// Evaluates an expression. Wreath arguments that are not already regular
/// are replaced by their regular representations.
pub fn eval_expr(e: &GroupExpr, guards: &Guards) -> Result<PermGroup> {
    let g = match e {
        GroupExpr::Cyclic(n) => cyclic(*n, guards)?,
        GroupExpr::ElemAbelian { p, k } => elementary_abelian(*p, *k, guards)?,
        GroupExpr::Alternating(n) => alternating(*n, guards)?,
        GroupExpr::Symmetric(n) => symmetric(*n, guards)?,
        GroupExpr::Power(inner, k) => direct_power(&eval_expr(inner, guards)?, *k, guards)?,
        GroupExpr::Product(es) => {
            let factors = es
                .iter()
                .map(|e| eval_expr(e, guards))
                .collect::<Result<Vec<_>>>()?;
            direct_product(&factors, guards)?
        }
        GroupExpr::Wreath(a, s) => {
            let a = regular(eval_expr(a, guards)?, guards)?;
            let s = regular(eval_expr(s, guards)?, guards)?;
            wreath(&a, &s, guards)?
        }
        GroupExpr::Derived(inner) => eval_expr(inner, guards)?.derived_subgroup(),
        GroupExpr::Base(inner) | GroupExpr::BZero(inner) => {
            if !matches!(**inner, GroupExpr::Wreath(..)) {
                return Err(GwError::NotAWreath(format!("{e} wraps a non-wreath node")));
            }
            let (b, b0) = wreath_base_parts(&eval_expr(inner, guards)?)?;
            if matches!(e, GroupExpr::Base(_)) {
                b
            } else {
                b0
            }
        }
        GroupExpr::Literal { degree, generators } => {
            let d = *degree as usize;
            if d > guards.degree {
                return Err(GwError::GuardExceeded {
                    guard: "guard-degree",
                    required: d.to_string(),
                    limit: guards.degree.to_string(),
                });
            }
            let gens = generators
                .iter()
                .map(|c| Permutation::from_cycles(d, c))
                .collect::<Result<Vec<_>>>()?;
            PermGroup::new(d, gens)?
        }
    };
    if g.order() > &guards.order {
        return Err(GwError::GuardExceeded {
            guard: "guard-order",
            required: g.order().to_string(),
            limit: guards.order.to_string(),
        });
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn parses_nested_expression() {
        let e = parse_group_expr("derived(wr(E(2,1), A(5)))").unwrap();
        assert_eq!(
            e,
            GroupExpr::Derived(Box::new(GroupExpr::Wreath(
                Box::new(GroupExpr::ElemAbelian { p: 2, k: 1 }),
                Box::new(GroupExpr::Alternating(5)),
            )))
        );
        assert_eq!(
            parse_group_expr(" pow( A(5) ,2 ) ").unwrap(),
            GroupExpr::Power(Box::new(GroupExpr::Alternating(5)), 2)
        );
    }

    #[test]
    fn b0_needs_wreath() {
        let err = parse_group_expr("b0(C(4))").unwrap_err();
        assert!(
            err.to_string().contains("b0 requires a wreath argument"),
            "{err}"
        );
    }

    #[test]
    fn errors_carry_position_and_expected_set() {
        match parse_group_expr("prod(C(2),\n  X(3))").unwrap_err() {
            GwError::Parse {
                line,
                column,
                expected,
                ..
            } => {
                assert_eq!((line, column), (2, 3));
                assert!(expected.contains(&"wr".to_string()));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_group_expr("E(4,1)")
            .unwrap_err()
            .to_string()
            .contains("prime"));
        assert!(parse_group_expr("prod(C(2))").is_err());
        assert!(parse_group_expr("C(0)").is_err());
        assert!(parse_group_expr("C(2) C(3)").is_err());
    }

    #[test]
    fn literal_generators() {
        let e = parse_group_expr("gens(4; (0 1 2 3), (0 2))").unwrap();
        assert_eq!(e.to_string(), "gens(4; (0 1 2 3), (0 2))");
        let g = eval_expr(&e, &Guards::default()).unwrap();
        assert_eq!(g.order(), &BigUint::from(8u32));
        assert!(parse_group_expr("gens(3; (0 1)(1 2))").is_err());
        let id = parse_group_expr("gens(2; ())").unwrap();
        assert_eq!(id.to_string(), "gens(2; ())");
    }

    #[test]
    fn evaluates_simple_expressions() {
        let g = Guards::default();
        let c6 = eval_expr(&parse_group_expr("C(6)").unwrap(), &g).unwrap();
        assert_eq!(c6.order(), &BigUint::from(6u32));
        let p = eval_expr(&parse_group_expr("pow(A(5), 2)").unwrap(), &g).unwrap();
        assert_eq!(p.order(), &BigUint::from(3600u32));
        let w = eval_expr(&parse_group_expr("wr(C(2), S(3))").unwrap(), &g).unwrap();
        assert_eq!(w.degree(), 12);
        assert_eq!(w.order(), &BigUint::from(64u32 * 6));
    }
}
