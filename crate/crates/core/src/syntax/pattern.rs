use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::formula::{check_exponent, Formula};
use super::SyntaxError;

/// A schematic formula: leaves may be metavariables, and `^n` / `^(n)`
/// suffixes may still refer to the open parameter `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    Var(String),
    Atom(String),
    Bot,
    Top,
    And(Box<Pattern>, Box<Pattern>),
    Or(Box<Pattern>, Box<Pattern>),
    Imp(Box<Pattern>, Box<Pattern>),
    Neg(Box<Pattern>),
    /// `P^n` with `n` still open.
    PowN(Box<Pattern>),
    /// `P^(n)` with `n` still open.
    CPowN(Box<Pattern>),
}

/// Metavariable names are a single uppercase ASCII letter.
pub fn is_metavar_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!((chars.next(), chars.next()), (Some(c), None) if c.is_ascii_uppercase())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("metavariable {0} has no binding")]
    UnboundMetaVar(String),
    #[error("pattern still mentions the parameter n")]
    OpenParameter,
}

/// Simultaneous replacement of metavariables by formulas.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution(BTreeMap<String, Formula>);

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: impl Into<String>, f: Formula) -> Self {
        self.0.insert(var.into(), f);
        self
    }

    pub fn insert(&mut self, var: impl Into<String>, f: Formula) -> Option<Formula> {
        self.0.insert(var.into(), f)
    }

    pub fn get(&self, var: &str) -> Option<&Formula> {
        self.0.get(var)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Formula)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn domain(&self) -> BTreeSet<&str> {
        self.0.keys().map(String::as_str).collect()
    }

    /// Applies `outer` to every bound formula, treating metavariable-named
    /// atoms inside the bindings as the variables being replaced.
    pub fn compose_atoms(&self, outer: &dyn Fn(&str) -> Option<Formula>) -> Substitution {
        Substitution(
            self.0
                .iter()
                .map(|(k, v)| (k.clone(), v.replace_atoms(outer)))
                .collect(),
        )
    }
}

impl FromIterator<(String, Formula)> for Substitution {
    fn from_iter<T: IntoIterator<Item = (String, Formula)>>(iter: T) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}:={v}")?;
        }
        f.write_str("}")
    }
}

impl Pattern {
    pub fn var(name: impl Into<String>) -> Pattern {
        Pattern::Var(name.into())
    }

    pub fn and(a: Pattern, b: Pattern) -> Pattern {
        Pattern::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Pattern, b: Pattern) -> Pattern {
        Pattern::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Pattern, b: Pattern) -> Pattern {
        Pattern::Imp(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Pattern) -> Pattern {
        Pattern::Neg(Box::new(a))
    }

    fn circ(&self) -> Pattern {
        Pattern::neg(Pattern::and(self.clone(), Pattern::neg(self.clone())))
    }

    fn circ_iter(&self, k: usize) -> Pattern {
        (0..k).fold(self.clone(), |acc, _| acc.circ())
    }

    fn cpow(&self, n: usize) -> Pattern {
        let mut level = self.circ();
        let mut acc = level.clone();
        for _ in 2..=n {
            level = level.circ();
            acc = Pattern::and(acc, level.clone());
        }
        acc
    }

    /// Reads a concrete formula as a schema: atoms named by a single
    /// uppercase letter become metavariables.
    pub fn schematize(f: &Formula) -> Pattern {
        match f {
            Formula::Atom(name) if is_metavar_name(name) => Pattern::Var(name.clone()),
            Formula::Atom(name) => Pattern::Atom(name.clone()),
            Formula::Bot => Pattern::Bot,
            Formula::Top => Pattern::Top,
            Formula::And(a, b) => Pattern::and(Self::schematize(a), Self::schematize(b)),
            Formula::Or(a, b) => Pattern::or(Self::schematize(a), Self::schematize(b)),
            Formula::Imp(a, b) => Pattern::imp(Self::schematize(a), Self::schematize(b)),
            Formula::Neg(a) => Pattern::neg(Self::schematize(a)),
        }
    }

    pub fn has_param(&self) -> bool {
        match self {
            Pattern::PowN(_) | Pattern::CPowN(_) => true,
            Pattern::Var(_) | Pattern::Atom(_) | Pattern::Bot | Pattern::Top => false,
            Pattern::And(a, b) | Pattern::Or(a, b) | Pattern::Imp(a, b) => {
                a.has_param() || b.has_param()
            }
            Pattern::Neg(a) => a.has_param(),
        }
    }

    pub fn metavars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Pattern::Var(v) => {
                out.insert(v.as_str());
            }
            Pattern::Atom(_) | Pattern::Bot | Pattern::Top => {}
            Pattern::And(a, b) | Pattern::Or(a, b) | Pattern::Imp(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Pattern::Neg(a) | Pattern::PowN(a) | Pattern::CPowN(a) => a.collect_vars(out),
        }
    }

    /// Fixes the parameter, expanding `^n` and `^(n)` into core connectives.
    pub fn fix_param(&self, n: usize) -> Result<Pattern, SyntaxError> {
        check_exponent(n)?;
        Ok(self.expand(n))
    }

    fn expand(&self, n: usize) -> Pattern {
        match self {
            Pattern::Var(_) | Pattern::Atom(_) | Pattern::Bot | Pattern::Top => self.clone(),
            Pattern::And(a, b) => Pattern::and(a.expand(n), b.expand(n)),
            Pattern::Or(a, b) => Pattern::or(a.expand(n), b.expand(n)),
            Pattern::Imp(a, b) => Pattern::imp(a.expand(n), b.expand(n)),
            Pattern::Neg(a) => Pattern::neg(a.expand(n)),
            Pattern::PowN(a) => a.expand(n).circ_iter(n),
            Pattern::CPowN(a) => a.expand(n).cpow(n),
        }
    }

    /// Lossless conversion when there are no metavariables and no open
    /// parameter.
    pub fn to_formula(&self) -> Option<Formula> {
        self.apply(&Substitution::new()).ok()
    }

    /// Reads each metavariable as the atom of the same name, so that
    /// validity of the result is validity of the schema.
    pub fn to_schematic_formula(&self) -> Result<Formula, SubstError> {
        let s = self
            .metavars()
            .into_iter()
            .fold(Substitution::new(), |s, v| s.with(v, Formula::atom(v)));
        self.apply(&s)
    }

    /// Replaces every metavariable; all of them must be bound.
    pub fn apply(&self, s: &Substitution) -> Result<Formula, SubstError> {
        Ok(match self {
            Pattern::Var(v) => s
                .get(v)
                .cloned()
                .ok_or_else(|| SubstError::UnboundMetaVar(v.clone()))?,
            Pattern::Atom(a) => Formula::Atom(a.clone()),
            Pattern::Bot => Formula::Bot,
            Pattern::Top => Formula::Top,
            Pattern::And(a, b) => Formula::and(a.apply(s)?, b.apply(s)?),
            Pattern::Or(a, b) => Formula::or(a.apply(s)?, b.apply(s)?),
            Pattern::Imp(a, b) => Formula::imp(a.apply(s)?, b.apply(s)?),
            Pattern::Neg(a) => Formula::neg(a.apply(s)?),
            Pattern::PowN(_) | Pattern::CPowN(_) => return Err(SubstError::OpenParameter),
        })
    }

    /// Replaces the bound metavariables and keeps the others.
    pub fn apply_partial(&self, s: &Substitution) -> Pattern {
        match self {
            Pattern::Var(v) => s
                .get(v)
                .map(|f| Pattern::from(f.clone()))
                .unwrap_or_else(|| self.clone()),
            Pattern::Atom(_) | Pattern::Bot | Pattern::Top => self.clone(),
            Pattern::And(a, b) => Pattern::and(a.apply_partial(s), b.apply_partial(s)),
            Pattern::Or(a, b) => Pattern::or(a.apply_partial(s), b.apply_partial(s)),
            Pattern::Imp(a, b) => Pattern::imp(a.apply_partial(s), b.apply_partial(s)),
            Pattern::Neg(a) => Pattern::neg(a.apply_partial(s)),
            Pattern::PowN(a) => Pattern::PowN(Box::new(a.apply_partial(s))),
            Pattern::CPowN(a) => Pattern::CPowN(Box::new(a.apply_partial(s))),
        }
    }

    /// Finds the unique substitution turning this pattern into `target`.
    /// The pattern must not mention the open parameter.
    pub fn match_formula(&self, target: &Formula) -> Option<Substitution> {
        let mut s = Substitution::new();
        self.match_into(target, &mut s).then_some(s)
    }

    /// Matching that extends an existing partial substitution.
    pub fn match_with(&self, target: &Formula, seed: &Substitution) -> Option<Substitution> {
        let mut s = seed.clone();
        self.match_into(target, &mut s).then_some(s)
    }

    fn match_into(&self, target: &Formula, s: &mut Substitution) -> bool {
        match (self, target) {
            (Pattern::Var(v), _) => match s.get(v) {
                Some(bound) => bound == target,
                None => {
                    s.insert(v.clone(), target.clone());
                    true
                }
            },
            (Pattern::Atom(a), Formula::Atom(b)) => a == b,
            (Pattern::Bot, Formula::Bot) | (Pattern::Top, Formula::Top) => true,
            (Pattern::And(pa, pb), Formula::And(fa, fb))
            | (Pattern::Or(pa, pb), Formula::Or(fa, fb))
            | (Pattern::Imp(pa, pb), Formula::Imp(fa, fb)) => {
                pa.match_into(fa, s) && pb.match_into(fb, s)
            }
            (Pattern::Neg(pa), Formula::Neg(fa)) => pa.match_into(fa, s),
            _ => false,
        }
    }
}

impl From<Formula> for Pattern {
    /// Every atom stays an atom; see [`Pattern::schematize`] for the
    /// uppercase-letter convention.
    fn from(f: Formula) -> Pattern {
        match f {
            Formula::Atom(a) => Pattern::Atom(a),
            Formula::Bot => Pattern::Bot,
            Formula::Top => Pattern::Top,
            Formula::And(a, b) => Pattern::and((*a).into(), (*b).into()),
            Formula::Or(a, b) => Pattern::or((*a).into(), (*b).into()),
            Formula::Imp(a, b) => Pattern::imp((*a).into(), (*b).into()),
            Formula::Neg(a) => Pattern::neg((*a).into()),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Metavariables print as their letter, so a closed pattern renders
        // exactly like the formula it denotes.
        fn prec(p: &Pattern) -> u8 {
            match p {
                Pattern::Imp(..) => 1,
                Pattern::Or(..) => 2,
                Pattern::And(..) => 3,
                Pattern::Neg(_) => 4,
                _ => 5,
            }
        }
        fn operand(f: &mut fmt::Formatter<'_>, p: &Pattern, parens: bool) -> fmt::Result {
            if parens {
                write!(f, "({p})")
            } else {
                write!(f, "{p}")
            }
        }
        let me = prec(self);
        match self {
            Pattern::Var(v) | Pattern::Atom(v) => f.write_str(v),
            Pattern::Bot => f.write_str("0"),
            Pattern::Top => f.write_str("1"),
            Pattern::Neg(a) => {
                f.write_str("~")?;
                operand(f, a, prec(a) < me)
            }
            Pattern::PowN(a) => {
                operand(f, a, prec(a) < 5)?;
                f.write_str("^n")
            }
            Pattern::CPowN(a) => {
                operand(f, a, prec(a) < 5)?;
                f.write_str("^(n)")
            }
            Pattern::Imp(a, b) => {
                operand(f, a, prec(a) <= me)?;
                f.write_str(" -> ")?;
                operand(f, b, prec(b) < me)
            }
            Pattern::And(a, b) | Pattern::Or(a, b) => {
                let op = if matches!(self, Pattern::Or(..)) { " | " } else { " & " };
                operand(f, a, prec(a) < me)?;
                f.write_str(op)?;
                operand(f, b, prec(b) <= me)
            }
        }
    }
}

/// Applies `s` to `pattern` (which must have its parameter fixed).
pub fn apply_subst(pattern: &Pattern, s: &Substitution) -> Result<Formula, SubstError> {
    pattern.apply(s)
}

/// Structural matching; `None` when no substitution exists.
pub fn match_pattern(pattern: &Pattern, target: &Formula) -> Option<Substitution> {
    pattern.match_formula(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, parse_pattern};

    fn pat(s: &str) -> Pattern {
        parse_pattern(s).unwrap()
    }

    #[test]
    fn apply_replaces_simultaneously() {
        let s = Substitution::new()
            .with("A", parse("p").unwrap())
            .with("B", parse("q | r").unwrap());
        assert_eq!(
            apply_subst(&pat("A -> B -> A"), &s).unwrap(),
            parse("p -> (q | r) -> p").unwrap()
        );
        // B's image mentions A, which must not be rewritten again.
        let swap = Substitution::new()
            .with("A", parse("B").unwrap())
            .with("B", parse("A").unwrap());
        assert_eq!(
            apply_subst(&pat("A -> B"), &swap).unwrap(),
            parse("B -> A").unwrap()
        );
    }

    #[test]
    fn apply_reports_unbound() {
        let s = Substitution::new().with("A", parse("p").unwrap());
        assert_eq!(
            apply_subst(&pat("A -> B -> A"), &s),
            Err(SubstError::UnboundMetaVar("B".into()))
        );
    }

    #[test]
    fn apply_nests() {
        let s = Substitution::new().with("A", parse("~p").unwrap());
        assert_eq!(apply_subst(&pat("~A"), &s).unwrap(), parse("~~p").unwrap());
    }

    #[test]
    fn match_contraposition_schema() {
        let s = match_pattern(
            &pat("(A -> B) -> ~B -> ~A"),
            &parse("(p -> q) -> ~q -> ~p").unwrap(),
        )
        .unwrap();
        assert_eq!(s.get("A"), Some(&parse("p").unwrap()));
        assert_eq!(s.get("B"), Some(&parse("q").unwrap()));
    }

    #[test]
    fn match_requires_consistent_bindings() {
        assert_eq!(
            match_pattern(&pat("A -> B -> A"), &parse("p -> q -> r").unwrap()),
            None
        );
    }

    #[test]
    fn match_excluded_middle_on_compound() {
        let s = match_pattern(&pat("A | ~A"), &parse("p & q | ~(p & q)").unwrap()).unwrap();
        assert_eq!(s.get("A"), Some(&parse("p & q").unwrap()));
    }

    #[test]
    fn parameter_expansion() {
        let p = pat("B^(n) -> B");
        assert!(p.has_param());
        let fixed = p.fix_param(2).unwrap();
        assert!(!fixed.has_param());
        let s = Substitution::new().with("B", parse("q").unwrap());
        assert_eq!(
            fixed.apply(&s).unwrap(),
            parse("q^(2) -> q").unwrap()
        );
        assert_eq!(p.apply(&s), Err(SubstError::OpenParameter));
        assert!(p.fix_param(0).is_err());
    }

    #[test]
    fn closed_pattern_converts_losslessly() {
        let f = parse("p & ~q -> 0").unwrap();
        assert_eq!(Pattern::from(f.clone()).to_formula(), Some(f));
        assert_eq!(pat("A -> p").to_formula(), None);
    }
}
