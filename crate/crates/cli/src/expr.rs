//! Surface syntax for field elements.
//!
//! A small expression language with exact literals (integers, fractions,
//! decimals), the symbols `w` (the infinite element) and `e` (the positive
//! infinitesimal, with Unicode `ω`/`ε` accepted as aliases), arithmetic,
//! integer powers, `abs(...)`, and a single comparison. Precedence, tightest
//! first: `^`, unary minus, `*` `/`, `+` `-`, comparisons.

use std::cmp::Ordering;

use cutpoint::field::{FieldElement, FieldHandle, FieldOps};
use cutpoint::{Error, Rational};

/// Parsed expression tree. Exponents are integer literals by construction.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Lit(Rational),
    Omega,
    Epsilon,
    Neg(Box<Expr>),
    Abs(Box<Expr>),
    Pow(Box<Expr>, i64),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Cmp(CmpOp, Box<Expr>, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Omega,
    Epsilon,
    Abs,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Cmp(CmpOp),
}

/// A token with its 1-based character position in the source text.
#[derive(Clone, Debug)]
struct Lexed {
    tok: Tok,
    pos: usize,
}

fn syntax(pos: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position: pos,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Lexed>, Error> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let pos = i + 1;
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    i += 1;
                    let frac_start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == frac_start {
                        return Err(syntax(pos, "malformed number"));
                    }
                }
                let lit: String = chars[start..i].iter().collect();
                let q = Rational::parse(&lit)
                    .map_err(|_| syntax(pos, format!("malformed number {lit:?}")))?;
                out.push(Lexed { tok: Tok::Num(q), pos });
            }
            'a'..='z' | 'A'..='Z' | 'ω' | 'ε' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphabetic() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let tok = match word.as_str() {
                    "w" | "ω" => Tok::Omega,
                    "e" | "ε" => Tok::Epsilon,
                    "abs" => Tok::Abs,
                    _ => return Err(syntax(pos, format!("unknown symbol {word:?}"))),
                };
                out.push(Lexed { tok, pos });
            }
            '(' => {
                out.push(Lexed { tok: Tok::LParen, pos });
                i += 1;
            }
            ')' => {
                out.push(Lexed { tok: Tok::RParen, pos });
                i += 1;
            }
            '+' => {
                out.push(Lexed { tok: Tok::Plus, pos });
                i += 1;
            }
            '-' | '−' => {
                out.push(Lexed { tok: Tok::Minus, pos });
                i += 1;
            }
            '*' | '×' => {
                out.push(Lexed { tok: Tok::Star, pos });
                i += 1;
            }
            '/' | '÷' => {
                out.push(Lexed { tok: Tok::Slash, pos });
                i += 1;
            }
            '^' => {
                out.push(Lexed { tok: Tok::Caret, pos });
                i += 1;
            }
            '≤' => {
                out.push(Lexed { tok: Tok::Cmp(CmpOp::Le), pos });
                i += 1;
            }
            '≥' => {
                out.push(Lexed { tok: Tok::Cmp(CmpOp::Ge), pos });
                i += 1;
            }
            '<' => {
                i += 1;
                if i < chars.len() && chars[i] == '=' {
                    i += 1;
                    out.push(Lexed { tok: Tok::Cmp(CmpOp::Le), pos });
                } else {
                    out.push(Lexed { tok: Tok::Cmp(CmpOp::Lt), pos });
                }
            }
            '>' => {
                i += 1;
                if i < chars.len() && chars[i] == '=' {
                    i += 1;
                    out.push(Lexed { tok: Tok::Cmp(CmpOp::Ge), pos });
                } else {
                    out.push(Lexed { tok: Tok::Cmp(CmpOp::Gt), pos });
                }
            }
            '=' => {
                i += 1;
                if i < chars.len() && chars[i] == '=' {
                    i += 1;
                }
                out.push(Lexed { tok: Tok::Cmp(CmpOp::Eq), pos });
            }
            other => return Err(syntax(pos, format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|l| &l.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|l| l.pos).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|l| l.tok.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<(), Error> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == *want => Ok(()),
            _ => Err(syntax(pos, format!("expected {what}"))),
        }
    }

    // expr := add (cmpop add)?   — comparisons do not chain
    fn expr(&mut self) -> Result<Expr, Error> {
        let lhs = self.additive()?;
        if let Some(Tok::Cmp(op)) = self.peek() {
            let op = *op;
            self.bump();
            let rhs = self.additive()?;
            if let Some(Tok::Cmp(_)) = self.peek() {
                return Err(syntax(self.pos(), "comparisons do not chain"));
            }
            return Ok(Expr::Cmp(op, Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn additive(&mut self) -> Result<Expr, Error> {
        let mut acc = self.multiplicative()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => return Ok(acc),
            };
            self.bump();
            let rhs = self.multiplicative()?;
            acc = Expr::Bin(op, Box::new(acc), Box::new(rhs));
        }
    }

    fn multiplicative(&mut self) -> Result<Expr, Error> {
        let mut acc = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinOp::Mul,
                Some(Tok::Slash) => BinOp::Div,
                _ => return Ok(acc),
            };
            self.bump();
            let rhs = self.unary()?;
            acc = Expr::Bin(op, Box::new(acc), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, Error> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    // power binds tighter than unary minus: -2^2 is -(2^2)
    fn power(&mut self) -> Result<Expr, Error> {
        let mut base = self.atom()?;
        while let Some(Tok::Caret) = self.peek() {
            self.bump();
            let n = self.integer_exponent()?;
            base = Expr::Pow(Box::new(base), n);
        }
        Ok(base)
    }

    fn integer_exponent(&mut self) -> Result<i64, Error> {
        let pos = self.pos();
        let negative = if let Some(Tok::Minus) = self.peek() {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Some(Tok::Num(q)) if q.is_integer() => {
                let digits = q.to_string();
                let n: i64 = digits
                    .parse()
                    .map_err(|_| syntax(pos, "exponent out of range"))?;
                Ok(if negative { -n } else { n })
            }
            _ => Err(syntax(pos, "expected an integer exponent after '^'")),
        }
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(q)) => Ok(Expr::Lit(q)),
            Some(Tok::Omega) => Ok(Expr::Omega),
            Some(Tok::Epsilon) => Ok(Expr::Epsilon),
            Some(Tok::Abs) => {
                self.expect(&Tok::LParen, "'(' after abs")?;
                let inner = self.expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(Expr::Abs(Box::new(inner)))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(_) | None => Err(syntax(pos, "expected a value")),
        }
    }
}

/// Parses the expression language; errors carry the 1-based character
/// position of the offending token.
pub fn parse(text: &str) -> Result<Expr, Error> {
    let toks = lex(text)?;
    let end = text.chars().count() + 1;
    let mut p = Parser { toks, at: 0, end };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Cmp(..) => 0,
        Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
        Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
        Expr::Neg(_) => 3,
        // a negative literal prints with a leading minus, so give it the
        // same binding strength as an explicit negation
        Expr::Lit(q) if q.signum() < 0 => 3,
        Expr::Pow(..) => 4,
        Expr::Lit(_) | Expr::Omega | Expr::Epsilon | Expr::Abs(_) => 5,
    }
}

fn wrap(e: &Expr, min: u8, out: &mut String) {
    if prec(e) < min {
        out.push('(');
        render(e, out);
        out.push(')');
    } else {
        render(e, out);
    }
}

fn render(e: &Expr, out: &mut String) {
    match e {
        Expr::Lit(q) => out.push_str(&q.to_string()),
        Expr::Omega => out.push('w'),
        Expr::Epsilon => out.push('e'),
        Expr::Neg(x) => {
            out.push('-');
            wrap(x, 3, out);
        }
        Expr::Abs(x) => {
            out.push_str("abs(");
            render(x, out);
            out.push(')');
        }
        Expr::Pow(base, n) => {
            wrap(base, 5, out);
            out.push('^');
            out.push_str(&n.to_string());
        }
        Expr::Bin(op, a, b) => {
            let (sym, lvl) = match op {
                BinOp::Add => ('+', 1),
                BinOp::Sub => ('-', 1),
                BinOp::Mul => ('*', 2),
                BinOp::Div => ('/', 2),
            };
            wrap(a, lvl, out);
            out.push(sym);
            // right operand binds one level tighter so subtraction and
            // division stay left-associative on reparse
            wrap(b, lvl + 1, out);
        }
        Expr::Cmp(op, a, b) => {
            let sym = match op {
                CmpOp::Lt => " < ",
                CmpOp::Le => " <= ",
                CmpOp::Eq => " = ",
                CmpOp::Ge => " >= ",
                CmpOp::Gt => " > ",
            };
            wrap(a, 1, out);
            out.push_str(sym);
            wrap(b, 1, out);
        }
    }
}

/// Prints an expression so that reparsing the output is stable:
/// `parse(print(parse(t)))` equals `parse(t)` for every accepted `t`.
pub fn print(e: &Expr) -> String {
    let mut out = String::new();
    render(e, &mut out);
    out
}

/// Result of evaluating an expression: a field element, or a truth value
/// when the expression is a comparison.
#[derive(Clone, Debug)]
pub enum Value {
    Elem(FieldElement),
    Bool(bool),
}

fn as_elem(v: Value) -> Result<FieldElement, Error> {
    match v {
        Value::Elem(x) => Ok(x),
        Value::Bool(_) => Err(syntax(0, "a truth value cannot be used as an operand")),
    }
}

/// Evaluates an expression in the field of the handle, exactly.
pub fn eval(e: &Expr, h: &FieldHandle) -> Result<Value, Error> {
    match e {
        Expr::Lit(q) => Ok(Value::Elem(h.from_rational(q))),
        Expr::Omega => Ok(Value::Elem(h.omega()?)),
        Expr::Epsilon => Ok(Value::Elem(h.epsilon()?)),
        Expr::Neg(x) => {
            let x = as_elem(eval(x, h)?)?;
            Ok(Value::Elem(h.neg(&x)?))
        }
        Expr::Abs(x) => {
            let x = as_elem(eval(x, h)?)?;
            Ok(Value::Elem(h.abs(&x)?))
        }
        Expr::Pow(base, n) => {
            let base = as_elem(eval(base, h)?)?;
            Ok(Value::Elem(h.pow(&base, *n)?))
        }
        Expr::Bin(op, a, b) => {
            let a = as_elem(eval(a, h)?)?;
            let b = as_elem(eval(b, h)?)?;
            let out = match op {
                BinOp::Add => h.add(&a, &b)?,
                BinOp::Sub => h.sub(&a, &b)?,
                BinOp::Mul => h.mul(&a, &b)?,
                BinOp::Div => h.div(&a, &b)?,
            };
            Ok(Value::Elem(out))
        }
        Expr::Cmp(op, a, b) => {
            let a = as_elem(eval(a, h)?)?;
            let b = as_elem(eval(b, h)?)?;
            // equality first: the difference of two coincident lazy series
            // has no nonzero coefficient for an order scan to find
            let equal = h.eq(&a, &b)?;
            let ord = if equal {
                Ordering::Equal
            } else {
                h.cmp(&a, &b)?
            };
            let verdict = match op {
                CmpOp::Lt => ord == Ordering::Less,
                CmpOp::Le => ord != Ordering::Greater,
                CmpOp::Eq => equal,
                CmpOp::Ge => ord != Ordering::Less,
                CmpOp::Gt => ord == Ordering::Greater,
            };
            Ok(Value::Bool(verdict))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lit(n: i64) -> Expr {
        Expr::Lit(Rational::from_int(n))
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse("1/(1-e)").unwrap(),
            Expr::Bin(
                BinOp::Div,
                Box::new(lit(1)),
                Box::new(Expr::Bin(
                    BinOp::Sub,
                    Box::new(lit(1)),
                    Box::new(Expr::Epsilon)
                ))
            )
        );
        assert!(matches!(
            parse("(w+1)/(w-1) > 1").unwrap(),
            Expr::Cmp(CmpOp::Gt, _, _)
        ));
        assert_eq!(parse("0.125").unwrap(), Expr::Lit(Rational::ratio(1, 8)));
        assert_eq!(parse("ω").unwrap(), parse("w").unwrap());
        assert_eq!(parse("ε").unwrap(), parse("e").unwrap());
        assert_eq!(parse("3 ≤ 4").unwrap(), parse("3 <= 4").unwrap());
    }

    #[test]
    fn precedence_examples() {
        // ^ over unary minus: -2^2 = -(2^2)
        let h = FieldHandle::rationals();
        let v = eval(&parse("-2^2").unwrap(), &h).unwrap();
        match v {
            Value::Elem(x) => assert_eq!(h.format(&x), "-4"),
            _ => panic!("expected an element"),
        }
        let v = eval(&parse("2^-3").unwrap(), &h).unwrap();
        match v {
            Value::Elem(x) => assert_eq!(h.format(&x), "1/8"),
            _ => panic!("expected an element"),
        }
        // * over +: 1+2*3 = 7
        let v = eval(&parse("1+2*3").unwrap(), &h).unwrap();
        match v {
            Value::Elem(x) => assert_eq!(h.format(&x), "7"),
            _ => panic!("expected an element"),
        }
        // left associativity: 8-3-2 = 3, 12/3/2 = 2
        for (text, want) in [("8-3-2", "3"), ("12/3/2", "2")] {
            match eval(&parse(text).unwrap(), &h).unwrap() {
                Value::Elem(x) => assert_eq!(h.format(&x), want),
                _ => panic!("expected an element"),
            }
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("1 + $") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 5),
            other => panic!("expected a syntax error, got {other:?}"),
        }
        match parse("1 < 2 < 3") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 7),
            other => panic!("expected a syntax error, got {other:?}"),
        }
        assert!(parse("2^e").is_err());
        assert!(parse("(1+2").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn eval_examples() {
        let rf = FieldHandle::ratfun();
        match eval(&parse("(w+1)/(w-1) > 1").unwrap(), &rf).unwrap() {
            Value::Bool(b) => assert!(b),
            _ => panic!("expected a truth value"),
        }
        let l = FieldHandle::laurent().with_order(4);
        match eval(&parse("1/(1-e)").unwrap(), &l).unwrap() {
            Value::Elem(x) => assert_eq!(l.format(&x), "1 + e + e^2 + e^3 + O(e^4)"),
            _ => panic!("expected an element"),
        }
        let q = FieldHandle::rationals();
        match eval(&parse("w").unwrap(), &q) {
            Err(Error::SymbolNotInField('w', "q")) => {}
            other => panic!("expected SymbolNotInField, got {other:?}"),
        }
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (any::<i32>(), 1..200i64).prop_map(|(p, q)| Expr::Lit(Rational::ratio(p as i64, q))),
            Just(Expr::Omega),
            Just(Expr::Epsilon),
        ];
        leaf.prop_recursive(4, 32, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(|x| Expr::Neg(Box::new(x))),
                inner.clone().prop_map(|x| Expr::Abs(Box::new(x))),
                (inner.clone(), -6..7i64).prop_map(|(x, n)| Expr::Pow(Box::new(x), n)),
                (
                    prop_oneof![
                        Just(BinOp::Add),
                        Just(BinOp::Sub),
                        Just(BinOp::Mul),
                        Just(BinOp::Div)
                    ],
                    inner.clone(),
                    inner
                )
                    .prop_map(|(op, a, b)| Expr::Bin(op, Box::new(a), Box::new(b))),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        // parse ∘ print ∘ parse = parse: printing any accepted parse and
        // reparsing it is a fixed point
        #[test]
        fn print_then_parse_is_stable(e in arb_expr()) {
            let text = print(&e);
            let p1 = parse(&text).expect("printer output must parse");
            let p2 = parse(&print(&p1)).expect("round-trip output must parse");
            prop_assert_eq!(p1, p2);
        }
    }
}
