use std::collections::BTreeSet;
use std::fmt;

use super::SyntaxError;

/// A propositional formula over atoms, the constants `0`/`1` and the
/// connectives `&`, `|`, `->`, `~`.
///
/// Derived notation (`A^o`, `A^n`, `A^(n)`, `A <-> B`) never appears as a
/// node: it is expanded when the formula is built, so structural equality is
/// the only formula equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Bot,
    Top,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Neg(Box<Formula>),
}

/// The derived forms that desugar into core connectives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derived {
    /// `A^o = ~(A & ~A)`
    Circ,
    /// `A^n`, the n-fold iteration of `^o`.
    Pow(usize),
    /// `A^(n) = A^1 & A^2 & ... & A^n`, nested to the left.
    CPow(usize),
    /// `A <-> B = (A -> B) & (B -> A)`
    Equiv(Formula),
}

/// Builds a derived form over `base`.
pub fn derived_form(kind: Derived, base: Formula) -> Result<Formula, SyntaxError> {
    match kind {
        Derived::Circ => Ok(base.circ()),
        Derived::Pow(n) => {
            check_exponent(n)?;
            Ok(base.circ_iter(n))
        }
        Derived::CPow(n) => {
            check_exponent(n)?;
            Ok(base.cpow(n))
        }
        Derived::Equiv(other) => Ok(Formula::equiv(base, other)),
    }
}

pub(crate) fn check_exponent(n: usize) -> Result<(), SyntaxError> {
    if n == 0 {
        Err(SyntaxError::Parameter(
            "consistency exponent must be at least 1".into(),
        ))
    } else {
        Ok(())
    }
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Formula {
        Formula::Neg(Box::new(a))
    }

    pub fn equiv(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    /// `~(self & ~self)`
    pub fn circ(&self) -> Formula {
        Formula::neg(Formula::and(self.clone(), Formula::neg(self.clone())))
    }

    /// `k`-fold `^o`; `k = 0` is the formula itself.
    pub fn circ_iter(&self, k: usize) -> Formula {
        let mut f = self.clone();
        for _ in 0..k {
            f = f.circ();
        }
        f
    }

    /// `self^1 & ... & self^n`; panics on `n = 0` (use [`derived_form`] for
    /// checked construction).
    pub fn cpow(&self, n: usize) -> Formula {
        assert!(n >= 1, "cpow exponent must be at least 1");
        let mut acc = self.circ();
        let mut level = acc.clone();
        for _ in 2..=n {
            level = level.circ();
            acc = Formula::and(acc, level.clone());
        }
        acc
    }

    pub fn is_imp(&self) -> bool {
        matches!(self, Formula::Imp(..))
    }

    /// Splits `a -> b` into its antecedent and consequent.
    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Imp(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_and(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Atom names in sorted order.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.as_str());
            }
            Formula::Bot | Formula::Top => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::Neg(a) => a.collect_atoms(out),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bot | Formula::Top => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::Neg(a) => 1 + a.depth(),
        }
    }

    /// Replaces atoms by formulas, simultaneously. Atoms without an entry
    /// are left alone.
    pub fn replace_atoms(&self, map: &dyn Fn(&str) -> Option<Formula>) -> Formula {
        match self {
            Formula::Atom(name) => map(name).unwrap_or_else(|| self.clone()),
            Formula::Bot | Formula::Top => self.clone(),
            Formula::And(a, b) => Formula::and(a.replace_atoms(map), b.replace_atoms(map)),
            Formula::Or(a, b) => Formula::or(a.replace_atoms(map), b.replace_atoms(map)),
            Formula::Imp(a, b) => Formula::imp(a.replace_atoms(map), b.replace_atoms(map)),
            Formula::Neg(a) => Formula::neg(a.replace_atoms(map)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Imp(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Neg(_) => 4,
            Formula::Atom(_) | Formula::Bot | Formula::Top => 5,
        }
    }
}

/// Renders with the fewest parentheses that parse back to the same tree.
pub fn render(f: &Formula) -> String {
    f.to_string()
}

fn write_operand(f: &mut fmt::Formatter<'_>, sub: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({sub})")
    } else {
        write!(f, "{sub}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = self.precedence();
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Bot => f.write_str("0"),
            Formula::Top => f.write_str("1"),
            Formula::Neg(a) => {
                f.write_str("~")?;
                write_operand(f, a, a.precedence() < prec)
            }
            // `->` is right-associative, `&` and `|` left-associative.
            Formula::Imp(a, b) => {
                write_operand(f, a, a.precedence() <= prec)?;
                f.write_str(" -> ")?;
                write_operand(f, b, b.precedence() < prec)
            }
            Formula::Or(a, b) | Formula::And(a, b) => {
                let op = if matches!(self, Formula::Or(..)) { " | " } else { " & " };
                write_operand(f, a, a.precedence() < prec)?;
                f.write_str(op)?;
                write_operand(f, b, b.precedence() <= prec)
            }
        }
    }
}

/// Like [`render`], but folds `~(X & ~X)` chains back into `X^o`, `X^k` and
/// `X^(k)`. The output parses to the same tree.
pub fn render_sugared(f: &Formula) -> String {
    Sugared(f).to_string()
}

struct Sugared<'a>(&'a Formula);

enum Shape<'a> {
    Pow(&'a Formula, usize),
    CPow(&'a Formula, usize),
    Plain,
}

fn circ_base(f: &Formula) -> Option<&Formula> {
    let Formula::Neg(inner) = f else { return None };
    let (x, rest) = inner.as_and()?;
    match rest {
        Formula::Neg(y) if **y == *x => Some(x),
        _ => None,
    }
}

/// Every `(base, k)` with `f = base^k`, by increasing `k`.
fn pow_splits(f: &Formula) -> Vec<(&Formula, usize)> {
    let mut out = Vec::new();
    let mut cur = f;
    while let Some(base) = circ_base(cur) {
        out.push((base, out.len() + 1));
        cur = base;
    }
    out
}

fn shape(f: &Formula) -> Shape<'_> {
    if let Some((left, right)) = f.as_and() {
        for (base, k) in pow_splits(right) {
            if k >= 2 && *left == base.cpow(k - 1) {
                return Shape::CPow(base, k);
            }
        }
        return Shape::Plain;
    }
    match pow_splits(f).pop() {
        Some((base, k)) => Shape::Pow(base, k),
        None => Shape::Plain,
    }
}

fn sugared_precedence(f: &Formula) -> u8 {
    match shape(f) {
        Shape::Plain => f.precedence(),
        _ => 5,
    }
}

impl Sugared<'_> {
    fn operand(&self, f: &mut fmt::Formatter<'_>, sub: &Formula, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({})", Sugared(sub))
        } else {
            write!(f, "{}", Sugared(sub))
        }
    }
}

impl fmt::Display for Sugared<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let node = self.0;
        match shape(node) {
            Shape::Pow(base, k) | Shape::CPow(base, k) => {
                self.operand(f, base, sugared_precedence(base) < 5)?;
                return match shape(node) {
                    Shape::CPow(..) => write!(f, "^({k})"),
                    _ if k == 1 => f.write_str("^o"),
                    _ => write!(f, "^{k}"),
                };
            }
            Shape::Plain => {}
        }
        let prec = node.precedence();
        match node {
            Formula::Atom(_) | Formula::Bot | Formula::Top => write!(f, "{node}"),
            Formula::Neg(a) => {
                f.write_str("~")?;
                self.operand(f, a, sugared_precedence(a) < prec)
            }
            Formula::Imp(a, b) => {
                self.operand(f, a, sugared_precedence(a) <= prec)?;
                f.write_str(" -> ")?;
                self.operand(f, b, sugared_precedence(b) < prec)
            }
            Formula::Or(a, b) | Formula::And(a, b) => {
                let op = if matches!(node, Formula::Or(..)) { " | " } else { " & " };
                self.operand(f, a, sugared_precedence(a) < prec)?;
                f.write_str(op)?;
                self.operand(f, b, sugared_precedence(b) <= prec)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }

    #[test]
    fn circ_matches_well_behaved_form() {
        assert_eq!(
            p().circ(),
            Formula::neg(Formula::and(p(), Formula::neg(p())))
        );
    }

    #[test]
    fn pow_iterates_circ() {
        let two = derived_form(Derived::Pow(2), p()).unwrap();
        assert_eq!(two, p().circ().circ());
    }

    #[test]
    fn cpow_is_left_nested() {
        let three = derived_form(Derived::CPow(3), p()).unwrap();
        let expected = Formula::and(
            Formula::and(p().circ_iter(1), p().circ_iter(2)),
            p().circ_iter(3),
        );
        assert_eq!(three, expected);
        assert_eq!(derived_form(Derived::CPow(1), p()).unwrap(), p().circ());
    }

    #[test]
    fn zero_exponent_is_rejected() {
        assert!(matches!(
            derived_form(Derived::Pow(0), p()),
            Err(SyntaxError::Parameter(_))
        ));
        assert!(matches!(
            derived_form(Derived::CPow(0), p()),
            Err(SyntaxError::Parameter(_))
        ));
    }

    #[test]
    fn equiv_is_two_implications() {
        let q = Formula::atom("q");
        assert_eq!(
            derived_form(Derived::Equiv(q.clone()), p()).unwrap(),
            Formula::and(Formula::imp(p(), q.clone()), Formula::imp(q, p()))
        );
    }

    #[test]
    fn render_examples() {
        let q = Formula::atom("q");
        let r = Formula::atom("r");
        assert_eq!(
            render(&Formula::imp(p(), Formula::imp(q.clone(), p()))),
            "p -> q -> p"
        );
        assert_eq!(render(&p().circ()), "~(p & ~p)");
        assert_eq!(
            render(&Formula::or(Formula::and(p(), q.clone()), r.clone())),
            "p & q | r"
        );
        assert_eq!(
            render(&Formula::imp(Formula::imp(p(), q.clone()), r.clone())),
            "(p -> q) -> r"
        );
        assert_eq!(
            render(&Formula::or(p(), Formula::or(q, r))),
            "p | (q | r)"
        );
        assert_eq!(render(&Formula::neg(Formula::neg(Formula::Bot))), "~~0");
    }

    #[test]
    fn sugared_rendering() {
        let q = Formula::atom("q");
        assert_eq!(render_sugared(&p().circ()), "p^o");
        assert_eq!(render_sugared(&p().circ_iter(3)), "p^3");
        assert_eq!(render_sugared(&p().cpow(3)), "p^(3)");
        assert_eq!(render_sugared(&p().cpow(1)), "p^o");
        let pq = Formula::imp(p(), q.clone());
        assert_eq!(render_sugared(&pq.circ_iter(2)), "(p -> q)^2");
        assert_eq!(render_sugared(&Formula::neg(p().circ())), "~p^o");
        assert_eq!(
            render_sugared(&Formula::imp(Formula::and(p().cpow(2), q.cpow(2)), pq.circ_iter(2))),
            "p^(2) & q^(2) -> (p -> q)^2"
        );
    }
}
