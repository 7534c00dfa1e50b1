//! Min-max expressions over named variables.
//!
//! ```text
//! expr   := term (('v' | '∨') term)*
//! term   := factor (('^' | '∧') factor)*
//! factor := name | '(' expr ')' | 'min(' expr (',' expr)* ')' | 'max(' expr (',' expr)* ')'
//! ```
//!
//! Names match `[A-Za-z_][A-Za-z0-9_]*`; the bare name `v` is the join operator.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{canonicalize, minimal_sets, CanonicalAntichain, LatticePolynomial, VarSet, MAX_VARS};
use crate::perm::Permutation;

/// Cap on the number of meet terms produced while distributing to DNF.
pub const MAX_DNF_TERMS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinMaxExpr {
    /// 0-based index into the declared variable list.
    Var(usize),
    Meet(Vec<MinMaxExpr>),
    Join(Vec<MinMaxExpr>),
}

impl MinMaxExpr {
    /// Evaluates with each variable set to 0 or 1 (bit `i` of `assignment` for variable `i`).
    pub fn eval_bool(&self, assignment: u64) -> bool {
        match self {
            MinMaxExpr::Var(i) => assignment >> i & 1 == 1,
            MinMaxExpr::Meet(children) => children.iter().all(|c| c.eval_bool(assignment)),
            MinMaxExpr::Join(children) => children.iter().any(|c| c.eval_bool(assignment)),
        }
    }

    /// Evaluates with the variables ordered by `<_a` (variable `i` is element `i + 1`).
    pub fn eval_perm(&self, a: &Permutation) -> usize {
        let pick = |children: &[MinMaxExpr], max: bool| {
            let values = children.iter().map(|c| c.eval_perm(a));
            if max {
                values.max_by_key(|&j| a.position(j)).unwrap()
            } else {
                values.min_by_key(|&j| a.position(j)).unwrap()
            }
        };
        match self {
            MinMaxExpr::Var(i) => i + 1,
            MinMaxExpr::Meet(children) => pick(children, false),
            MinMaxExpr::Join(children) => pick(children, true),
        }
    }

    fn max_var(&self) -> usize {
        match self {
            MinMaxExpr::Var(i) => *i,
            MinMaxExpr::Meet(c) | MinMaxExpr::Join(c) => c.iter().map(Self::max_var).max().unwrap_or(0),
        }
    }

    fn render(&self, vars: &[String], out: &mut String) {
        match self {
            MinMaxExpr::Var(i) => out.push_str(&vars[*i]),
            MinMaxExpr::Meet(c) | MinMaxExpr::Join(c) => {
                out.push_str(if matches!(self, MinMaxExpr::Meet(_)) { "min(" } else { "max(" });
                for (k, child) in c.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    child.render(vars, out);
                }
                out.push(')');
            }
        }
    }

    /// Renders the tree itself (no normalization) in `min`/`max` form.
    pub fn display<'a>(&'a self, vars: &'a [String]) -> impl fmt::Display + 'a {
        struct Shown<'a>(&'a MinMaxExpr, &'a [String]);
        impl fmt::Display for Shown<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let mut s = String::new();
                self.0.render(self.1, &mut s);
                f.write_str(&s)
            }
        }
        Shown(self, vars)
    }
}

/// Checks that every declared name is an identifier and not the reserved `v`.
pub fn validate_vars(vars: &[String]) -> Result<()> {
    if vars.is_empty() {
        return Err(Error::syntax(1, 1, "no variables declared"));
    }
    if vars.len() > MAX_VARS {
        return Err(Error::TooLarge(format!("{} variables (max {MAX_VARS})", vars.len())));
    }
    for (i, name) in vars.iter().enumerate() {
        let mut chars = name.chars();
        let ident = chars
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ident || name == "v" {
            return Err(Error::syntax(1, 1, format!("invalid variable name `{name}`")));
        }
        if vars[..i].contains(name) {
            return Err(Error::syntax(1, 1, format!("variable `{name}` declared twice")));
        }
    }
    Ok(())
}

/// Default variable names `g1..gn`.
pub fn default_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("g{i}")).collect()
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Name(String),
    Meet,
    Join,
    Open,
    Close,
    Comma,
    End,
}

struct Lexer {
    tokens: Vec<(usize, Token)>,
}

impl Lexer {
    fn new(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut tokens = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            match c {
                _ if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                '^' | '∧' => tokens.push((col, Token::Meet)),
                '∨' => tokens.push((col, Token::Join)),
                '(' => tokens.push((col, Token::Open)),
                ')' => tokens.push((col, Token::Close)),
                ',' => tokens.push((col, Token::Comma)),
                _ if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    let name: String = chars[start..i].iter().collect();
                    let tok = if name == "v" { Token::Join } else { Token::Name(name) };
                    tokens.push((col, tok));
                    continue;
                }
                _ => return Err(Error::syntax(1, col, format!("unexpected character `{c}`"))),
            }
            i += 1;
        }
        tokens.push((chars.len() + 1, Token::End));
        Ok(Lexer { tokens })
    }
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn peek_at(&self, k: usize) -> &Token {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)].1
    }

    fn column(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn error(&self, what: &str) -> Error {
        let found = match self.peek() {
            Token::Name(n) => format!("`{n}`"),
            Token::Meet => "`^`".into(),
            Token::Join => "`v`".into(),
            Token::Open => "`(`".into(),
            Token::Close => "`)`".into(),
            Token::Comma => "`,`".into(),
            Token::End => "end of input".into(),
        };
        Error::syntax(1, self.column(), format!("expected {what}, found {found}"))
    }

    fn expect(&mut self, tok: Token, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn expr(&mut self) -> Result<MinMaxExpr> {
        let mut terms = vec![self.term()?];
        while *self.peek() == Token::Join {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(collapse(terms, MinMaxExpr::Join))
    }

    fn term(&mut self) -> Result<MinMaxExpr> {
        let mut factors = vec![self.factor()?];
        while *self.peek() == Token::Meet {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(collapse(factors, MinMaxExpr::Meet))
    }

    fn factor(&mut self) -> Result<MinMaxExpr> {
        match self.peek().clone() {
            Token::Open => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Token::Close, "`)`")?;
                Ok(inner)
            }
            Token::Name(name)
                if (name == "min" || name == "max") && *self.peek_at(1) == Token::Open =>
            {
                self.pos += 2;
                let mut args = vec![self.expr()?];
                while *self.peek() == Token::Comma {
                    self.pos += 1;
                    args.push(self.expr()?);
                }
                self.expect(Token::Close, "`,` or `)`")?;
                let build = if name == "min" { MinMaxExpr::Meet } else { MinMaxExpr::Join };
                Ok(collapse(args, build))
            }
            Token::Name(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(MinMaxExpr::Var(i))
                }
                None => Err(Error::UnknownVariable(name)),
            },
            _ => Err(self.error("a variable, `(`, `min(` or `max(`")),
        }
    }
}

fn collapse(mut items: Vec<MinMaxExpr>, build: fn(Vec<MinMaxExpr>) -> MinMaxExpr) -> MinMaxExpr {
    if items.len() == 1 {
        items.pop().unwrap()
    } else {
        build(items)
    }
}

pub fn parse(text: &str, vars: &[String]) -> Result<MinMaxExpr> {
    validate_vars(vars)?;
    if text.trim().is_empty() {
        return Err(Error::syntax(1, 1, "empty expression"));
    }
    let lexer = Lexer::new(text)?;
    let mut parser = Parser {
        tokens: lexer.tokens,
        pos: 0,
        vars,
    };
    let e = parser.expr()?;
    if *parser.peek() != Token::End {
        return Err(parser.error("an operator or end of input"));
    }
    Ok(e)
}

fn dnf(e: &MinMaxExpr) -> Result<Vec<VarSet>> {
    match e {
        MinMaxExpr::Var(i) => Ok(vec![VarSet::singleton(i + 1)]),
        MinMaxExpr::Join(children) => {
            let mut terms = Vec::new();
            for c in children {
                terms.extend(dnf(c)?);
                if terms.len() > MAX_DNF_TERMS {
                    return Err(too_many());
                }
            }
            Ok(minimal_sets(terms))
        }
        MinMaxExpr::Meet(children) => {
            let mut acc = vec![VarSet::EMPTY];
            for c in children {
                let rhs = dnf(c)?;
                if acc.len().saturating_mul(rhs.len()) > MAX_DNF_TERMS {
                    return Err(too_many());
                }
                let product = acc
                    .iter()
                    .flat_map(|a| rhs.iter().map(move |b| a.union(*b)))
                    .collect();
                acc = minimal_sets(product);
            }
            Ok(acc)
        }
    }
}

fn too_many() -> Error {
    Error::TooLarge(format!("DNF expansion exceeds {MAX_DNF_TERMS} terms"))
}

/// Distributes meets over joins and returns the canonical antichain over
/// `{1..vars.len()}` (variable `i` in `vars` is index `i + 1`).
pub fn to_antichain(e: &MinMaxExpr, vars: &[String]) -> Result<CanonicalAntichain> {
    let n = vars.len().max(e.max_var() + 1);
    let family = dnf(e)?;
    Ok(canonicalize(&LatticePolynomial::new(n, family)?))
}

/// Emits `max(min(...),...)`, collapsing singleton sets and singleton families.
pub fn print_expr(a: &CanonicalAntichain, vars: &[String]) -> String {
    let term = |set: VarSet| {
        let names: Vec<&str> = set.iter().map(|j| vars[j - 1].as_str()).collect();
        if names.len() == 1 {
            names[0].to_string()
        } else {
            format!("min({})", names.join(","))
        }
    };
    let terms: Vec<String> = a.sets().iter().map(|&s| term(s)).collect();
    if terms.len() == 1 {
        terms.into_iter().next().unwrap()
    } else {
        format!("max({})", terms.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::truth_table_01;
    use MinMaxExpr::*;

    fn g(n: usize) -> Vec<String> {
        default_vars(n)
    }

    fn chain(n: usize, sets: &[&[usize]]) -> CanonicalAntichain {
        canonicalize(&LatticePolynomial::from_sets(n, sets).unwrap())
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse("g1 ^ (g2 v g3)", &g(3)).unwrap(),
            Meet(vec![Var(0), Join(vec![Var(1), Var(2)])])
        );
        assert_eq!(
            parse("max(min(g1,g2),min(g1,g3))", &g(3)).unwrap(),
            Join(vec![Meet(vec![Var(0), Var(1)]), Meet(vec![Var(0), Var(2)])])
        );
        assert_eq!(parse("g1", &g(3)).unwrap(), Var(0));
        assert_eq!(
            parse("g1 ∧ g2 ∨ g3", &g(3)).unwrap(),
            Join(vec![Meet(vec![Var(0), Var(1)]), Var(2)])
        );
        assert_eq!(parse("((g2))", &g(3)).unwrap(), Var(1));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse("g1 ^ g4", &g(3)), Err(Error::UnknownVariable("g4".into())));
        assert_eq!(
            parse("g1 ^", &g(3)),
            Err(Error::syntax(1, 5, "expected a variable, `(`, `min(` or `max(`, found end of input"))
        );
        assert_eq!(
            parse("(g1 v g2", &g(3)),
            Err(Error::syntax(1, 9, "expected `)`, found end of input"))
        );
        assert_eq!(
            parse("g1 g2", &g(3)),
            Err(Error::syntax(1, 4, "expected an operator or end of input, found `g2`"))
        );
        assert_eq!(parse("g1 + g2", &g(3)).unwrap_err().kind(), "syntax");
        assert_eq!(parse("  ", &g(3)).unwrap_err().kind(), "syntax");
        assert_eq!(parse("min()", &g(3)).unwrap_err().kind(), "syntax");
        let bad = vec!["v".to_string()];
        assert_eq!(parse("v", &bad).unwrap_err().kind(), "syntax");
    }

    #[test]
    fn to_antichain_examples() {
        let e = parse("g1 ^ (g2 v g3)", &g(3)).unwrap();
        assert_eq!(to_antichain(&e, &g(3)).unwrap(), chain(3, &[&[1, 2], &[1, 3]]));
        let e = parse("g1 v g2 v g3 v g4", &g(4)).unwrap();
        assert_eq!(
            to_antichain(&e, &g(4)).unwrap(),
            chain(4, &[&[1], &[2], &[3], &[4]])
        );
        let e = parse("min(min(g1,g2),g3)", &g(3)).unwrap();
        assert_eq!(to_antichain(&e, &g(3)).unwrap(), chain(3, &[&[1, 2, 3]]));
    }

    #[test]
    fn dnf_matches_tree_truth_table() {
        let e = parse("max(g1 ^ (g2 v g3), min(g3, g4 v g1))", &g(4)).unwrap();
        let tt = truth_table_01(to_antichain(&e, &g(4)).unwrap().as_polynomial()).unwrap();
        for (a, &bit) in tt.iter().enumerate() {
            assert_eq!(e.eval_bool(a as u64), bit);
        }
    }

    #[test]
    fn dnf_guard() {
        // 7 disjoint 9-way joins expand to 9^7 > 10^6 meet terms
        let vars: Vec<String> = (0..63).map(|i| format!("x{i}")).collect();
        let factors: Vec<String> = (0..7)
            .map(|i| {
                let names: Vec<String> = (0..9).map(|j| format!("x{}", 9 * i + j)).collect();
                format!("({})", names.join(" v "))
            })
            .collect();
        let e = parse(&factors.join(" ^ "), &vars).unwrap();
        assert_eq!(to_antichain(&e, &vars).unwrap_err().kind(), "too-large");
    }

    #[test]
    fn print_examples() {
        assert_eq!(
            print_expr(&chain(3, &[&[1, 2], &[1, 3]]), &g(3)),
            "max(min(g1,g2),min(g1,g3))"
        );
        assert_eq!(print_expr(&chain(3, &[&[2]]), &g(3)), "g2");
        assert_eq!(print_expr(&chain(3, &[&[1, 2, 3]]), &g(3)), "min(g1,g2,g3)");
        assert_eq!(print_expr(&chain(2, &[&[1], &[2]]), &g(2)), "max(g1,g2)");
    }

    #[test]
    fn tree_display() {
        let e = parse("g1 ^ (g2 v g3)", &g(3)).unwrap();
        assert_eq!(e.display(&g(3)).to_string(), "min(g1,max(g2,g3))");
    }
}
