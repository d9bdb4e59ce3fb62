use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::engine::Heading;

/// Boolean expression over named variables. `And`, `Or` and `Xor` hold two
/// or more operands; [`binarize`] reduces them to exactly two and removes
/// `Xor`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(String),
    Not(Box<Expr>),
    And(Vec<Expr>),
    Or(Vec<Expr>),
    Xor(Vec<Expr>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based character position.
    pub column: usize,
    pub message: String,
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    pub fn and(a: Expr, b: Expr) -> Expr {
        Expr::And(vec![a, b])
    }

    pub fn or(a: Expr, b: Expr) -> Expr {
        Expr::Or(vec![a, b])
    }

    pub fn xor(a: Expr, b: Expr) -> Expr {
        Expr::Xor(vec![a, b])
    }

    pub fn parse(text: &str) -> Result<Expr, ParseError> {
        Parser::new(text).parse()
    }

    /// Distinct variable names, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out.into_iter().collect()
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Not(e) => e.collect_vars(out),
            Expr::And(es) | Expr::Or(es) | Expr::Xor(es) => {
                es.iter().for_each(|e| e.collect_vars(out))
            }
        }
    }

    /// Direct recursive evaluation. `None` names the first variable `value`
    /// does not know.
    pub fn eval(&self, value: &dyn Fn(&str) -> Option<bool>) -> Result<bool, String> {
        Ok(match self {
            Expr::Var(v) => value(v).ok_or_else(|| v.clone())?,
            Expr::Not(e) => !e.eval(value)?,
            Expr::And(es) => {
                let mut acc = true;
                for e in es {
                    acc &= e.eval(value)?;
                }
                acc
            }
            Expr::Or(es) => {
                let mut acc = false;
                for e in es {
                    acc |= e.eval(value)?;
                }
                acc
            }
            Expr::Xor(es) => {
                let mut acc = false;
                for e in es {
                    acc ^= e.eval(value)?;
                }
                acc
            }
        })
    }

    /// Variable occurrences, counting repeats.
    pub fn instances(&self) -> usize {
        match self {
            Expr::Var(_) => 1,
            Expr::Not(e) => e.instances(),
            Expr::And(es) | Expr::Or(es) | Expr::Xor(es) => es.iter().map(Expr::instances).sum(),
        }
    }

    /// Number of NOT, AND and OR nodes, with n-ary nodes counted as their
    /// binary chains. XOR is not counted.
    pub fn operator_counts(&self) -> (usize, usize, usize) {
        match self {
            Expr::Var(_) => (0, 0, 0),
            Expr::Not(e) => {
                let (n, a, o) = e.operator_counts();
                (n + 1, a, o)
            }
            Expr::And(es) | Expr::Or(es) | Expr::Xor(es) => {
                let (mut n, mut a, mut o) = (0, 0, 0);
                for e in es {
                    let c = e.operator_counts();
                    n += c.0;
                    a += c.1;
                    o += c.2;
                }
                match self {
                    Expr::And(_) => a += es.len() - 1,
                    Expr::Or(_) => o += es.len() - 1,
                    _ => {}
                }
                (n, a, o)
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Var(_) => 0,
            Expr::Not(e) => 1 + e.depth(),
            Expr::And(es) | Expr::Or(es) | Expr::Xor(es) => {
                1 + es.iter().map(Expr::depth).max().unwrap_or(0)
            }
        }
    }

    /// Whether only binary `And`/`Or` and `Not` remain.
    pub fn is_binary(&self) -> bool {
        match self {
            Expr::Var(_) => true,
            Expr::Not(e) => e.is_binary(),
            Expr::And(es) | Expr::Or(es) => es.len() == 2 && es.iter().all(Expr::is_binary),
            Expr::Xor(_) => false,
        }
    }
}

/// Left-associates chains and rewrites `x ^ y` as `(x | y) & !(x & y)`.
pub fn binarize(e: &Expr) -> Expr {
    fn chain(es: &[Expr], join: fn(Expr, Expr) -> Expr) -> Expr {
        let mut it = es.iter().map(binarize);
        let first = it.next().expect("operators have operands");
        it.fold(first, join)
    }
    match e {
        Expr::Var(_) => e.clone(),
        Expr::Not(x) => Expr::not(binarize(x)),
        Expr::And(es) => chain(es, Expr::and),
        Expr::Or(es) => chain(es, Expr::or),
        Expr::Xor(es) => chain(es, |x, y| {
            Expr::and(Expr::or(x.clone(), y.clone()), Expr::not(Expr::and(x, y)))
        }),
    }
}

/// `x ^ y` as `(x & !y) | (!x & y)`; the alternative with one more gun.
pub fn xor_disjunctive(x: Expr, y: Expr) -> Expr {
    Expr::or(
        Expr::and(x.clone(), Expr::not(y.clone())),
        Expr::and(Expr::not(x), y),
    )
}

/// A binarized expression with the heading each subexpression's output
/// stream travels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Oriented {
    pub heading: Heading,
    pub node: OrientedNode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrientedNode {
    Var(String),
    Not(Box<Oriented>),
    And(Box<Oriented>, Box<Oriented>),
    Or(Box<Oriented>, Box<Oriented>),
}

impl Oriented {
    /// The same tree seen in a mirror: every heading flipped.
    pub fn mirrored(&self) -> Oriented {
        let m = |o: &Oriented| Box::new(o.mirrored());
        Oriented {
            heading: self.heading.mirrored(),
            node: match &self.node {
                OrientedNode::Var(v) => OrientedNode::Var(v.clone()),
                OrientedNode::Not(c) => OrientedNode::Not(m(c)),
                OrientedNode::And(a, b) => OrientedNode::And(m(a), m(b)),
                OrientedNode::Or(a, b) => OrientedNode::Or(m(a), m(b)),
            },
        }
    }
}

/// Assigns headings so that the root leaves along `desired`. A NOT sends
/// its output perpendicular to its input, so its operand gets the mirrored
/// heading; AND and OR pass theirs down unchanged.
pub fn orient(e: &Expr, desired: Heading) -> Oriented {
    let node = match e {
        Expr::Var(v) => OrientedNode::Var(v.clone()),
        Expr::Not(x) => OrientedNode::Not(Box::new(orient(x, desired.mirrored()))),
        Expr::And(es) | Expr::Or(es) => {
            let [a, b] = &es[..] else {
                panic!("orient needs a binarized expression")
            };
            let (a, b) = (Box::new(orient(a, desired)), Box::new(orient(b, desired)));
            if matches!(e, Expr::And(_)) {
                OrientedNode::And(a, b)
            } else {
                OrientedNode::Or(a, b)
            }
        }
        Expr::Xor(_) => panic!("orient needs a binarized expression"),
    };
    Oriented {
        heading: desired,
        node,
    }
}

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Or(_) => 1,
        Expr::Xor(_) => 2,
        Expr::And(_) => 3,
        Expr::Not(_) | Expr::Var(_) => 4,
    }
}

/// Infix with `! & ^ |` (tightest first) and only the parentheses needed
/// to keep the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (es, op) = match self {
            Expr::Var(v) => return f.write_str(v),
            Expr::Not(e) => {
                return if precedence(e) < 4 {
                    write!(f, "!({e})")
                } else {
                    write!(f, "!{e}")
                };
            }
            Expr::And(es) => (es, " & "),
            Expr::Or(es) => (es, " | "),
            Expr::Xor(es) => (es, " ^ "),
        };
        for (i, e) in es.iter().enumerate() {
            if i > 0 {
                f.write_str(op)?;
            }
            // Same-operator children are parenthesised too, or a nested
            // chain would read back flattened.
            if precedence(e) <= precedence(self) {
                write!(f, "({e})")?;
            } else {
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Expr::parse(s)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Parser {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Expr, ParseError> {
        let e = self.binary(0)?;
        match self.peek() {
            None => Ok(e),
            Some(')') => Err(self.error("unmatched `)`")),
            Some(c) => Err(self.error(format!("expected an operator, found `{c}`"))),
        }
    }

    /// Levels: 0 is `|`, 1 is `^`, 2 is `&`.
    fn binary(&mut self, level: usize) -> Result<Expr, ParseError> {
        const OPS: [char; 3] = ['|', '^', '&'];
        if level == OPS.len() {
            return self.unary();
        }
        let mut operands = vec![self.binary(level + 1)?];
        while self.peek() == Some(OPS[level]) {
            self.pos += 1;
            operands.push(self.binary(level + 1)?);
        }
        Ok(if operands.len() == 1 {
            operands.pop().unwrap()
        } else {
            match OPS[level] {
                '|' => Expr::Or(operands),
                '^' => Expr::Xor(operands),
                _ => Expr::And(operands),
            }
        })
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some('!') => {
                self.pos += 1;
                Ok(Expr::not(self.unary()?))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.binary(0)?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_alphanumeric() || *c == '_')
                {
                    self.pos += 1;
                }
                Ok(Expr::Var(self.chars[start..self.pos].iter().collect()))
            }
            Some(c) => Err(self.error(format!("expected a variable, `!` or `(`, found `{c}`"))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}
