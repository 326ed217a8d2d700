//! Proof terms with hypotheses, compiled to primitive Hilbert lines.
//!
//! `Lam(h, body)` is discharged with the textbook deduction-theorem
//! construction, which needs only axioms (1) and (2). The output is an
//! ordinary [`ProofScript`]; nothing here is trusted.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use crate::syntax::{render_sugared, Formula, Pattern, Substitution};

use super::{fixed_pattern, CalculusError, Justification, Line, ProofScript, SystemDef};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Axiom {
        name: String,
        subst: Substitution,
        n: Option<usize>,
    },
    Thm {
        name: String,
        subst: Substitution,
    },
    Hyp(Formula),
    /// Modus Ponens: `Mp(minor, major)` with `major` proving `minor -> x`.
    Mp(Box<Term>, Box<Term>),
    /// Discharges the hypothesis, proving `h -> body`.
    Lam(Formula, Box<Term>),
}

fn subst_of(bindings: &[(&str, Formula)]) -> Substitution {
    bindings
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

impl Term {
    pub fn ax(name: &str, bindings: &[(&str, Formula)]) -> Term {
        Term::Axiom {
            name: name.to_string(),
            subst: subst_of(bindings),
            n: None,
        }
    }

    pub fn thm(name: &str, bindings: &[(&str, Formula)]) -> Term {
        Term::Thm {
            name: name.to_string(),
            subst: subst_of(bindings),
        }
    }

    pub fn hyp(f: &Formula) -> Term {
        Term::Hyp(f.clone())
    }

    pub fn mp(minor: Term, major: Term) -> Term {
        Term::Mp(Box::new(minor), Box::new(major))
    }

    pub fn lam(h: &Formula, body: Term) -> Term {
        Term::Lam(h.clone(), Box::new(body))
    }

    /// `self` as the minor premise of `major`.
    pub fn then(self, major: Term) -> Term {
        Term::mp(self, major)
    }
}

#[derive(Debug)]
enum Kind {
    Axiom(String, Substitution, Option<usize>),
    Thm(String, Substitution),
    Hyp,
    Mp(Rc<Node>, Rc<Node>),
}

/// A term with its conclusion and open hypotheses resolved.
#[derive(Debug)]
struct Node {
    concl: Formula,
    open: BTreeSet<Formula>,
    kind: Kind,
}

/// Compiles proof terms for one system. Cited theorems are resolved
/// against `statements`, which need not be proved yet: the kernel decides.
#[derive(Clone, Debug)]
pub struct Builder {
    system: SystemDef,
    statements: HashMap<String, Pattern>,
}

fn build_err(msg: impl Into<String>) -> CalculusError {
    CalculusError::Build(msg.into())
}

impl Builder {
    pub fn new(system: SystemDef) -> Self {
        Builder {
            system,
            statements: HashMap::new(),
        }
    }

    /// Makes `name` citable with the given schematic statement.
    pub fn declare(&mut self, name: &str, statement: &Formula) -> &mut Self {
        self.statements
            .insert(name.to_string(), Pattern::schematize(statement));
        self
    }

    pub fn system(&self) -> &SystemDef {
        &self.system
    }

    /// The formula a term proves, ignoring its hypotheses.
    pub fn conclusion(&self, t: &Term) -> Result<Formula, CalculusError> {
        Ok(self.annotate(t)?.concl.clone())
    }

    fn axiom_node(&self, name: &str, subst: &Substitution, n: Option<usize>) -> Result<Node, CalculusError> {
        let concl = fixed_pattern(&self.system, name, n)?.apply(subst)?;
        Ok(Node {
            concl,
            open: BTreeSet::new(),
            kind: Kind::Axiom(name.to_string(), subst.clone(), n),
        })
    }

    fn ax_node(&self, name: &str, bindings: &[(&str, Formula)]) -> Result<Rc<Node>, CalculusError> {
        Ok(Rc::new(self.axiom_node(name, &subst_of(bindings), None)?))
    }

    fn mp_node(&self, minor: Rc<Node>, major: Rc<Node>) -> Result<Rc<Node>, CalculusError> {
        let concl = match major.concl.as_imp() {
            Some((a, b)) if *a == minor.concl => b.clone(),
            _ => {
                return Err(build_err(format!(
                    "cannot apply {} to {}",
                    render_sugared(&major.concl),
                    render_sugared(&minor.concl)
                )))
            }
        };
        let open = minor.open.union(&major.open).cloned().collect();
        Ok(Rc::new(Node {
            concl,
            open,
            kind: Kind::Mp(minor, major),
        }))
    }

    fn annotate(&self, t: &Term) -> Result<Rc<Node>, CalculusError> {
        match t {
            Term::Axiom { name, subst, n } => Ok(Rc::new(self.axiom_node(name, subst, *n)?)),
            Term::Thm { name, subst } => {
                let stmt = self
                    .statements
                    .get(name)
                    .ok_or_else(|| build_err(format!("no statement declared for {name}")))?;
                Ok(Rc::new(Node {
                    concl: stmt.apply(subst)?,
                    open: BTreeSet::new(),
                    kind: Kind::Thm(name.clone(), subst.clone()),
                }))
            }
            Term::Hyp(h) => Ok(Rc::new(Node {
                concl: h.clone(),
                open: BTreeSet::from([h.clone()]),
                kind: Kind::Hyp,
            })),
            Term::Mp(minor, major) => self.mp_node(self.annotate(minor)?, self.annotate(major)?),
            Term::Lam(h, body) => {
                let body = self.annotate(body)?;
                self.discharge(h, &body)
            }
        }
    }

    /// `h -> h` from (1), (1), (2).
    fn identity(&self, h: &Formula) -> Result<Rc<Node>, CalculusError> {
        let hh = Formula::imp(h.clone(), h.clone());
        let a1 = self.ax_node("1", &[("A", h.clone()), ("B", hh.clone())])?;
        let a2 = self.ax_node("1", &[("A", h.clone()), ("B", h.clone())])?;
        let a3 = self.ax_node("2", &[("A", h.clone()), ("B", hh), ("C", h.clone())])?;
        let step = self.mp_node(a2, a3)?;
        self.mp_node(a1, step)
    }

    fn discharge(&self, h: &Formula, node: &Rc<Node>) -> Result<Rc<Node>, CalculusError> {
        if !node.open.contains(h) {
            let weaken = self.ax_node("1", &[("A", node.concl.clone()), ("B", h.clone())])?;
            return self.mp_node(node.clone(), weaken);
        }
        match &node.kind {
            Kind::Hyp => self.identity(h),
            Kind::Mp(minor, major) => {
                let d_minor = self.discharge(h, minor)?;
                let d_major = self.discharge(h, major)?;
                let dist = self.ax_node(
                    "2",
                    &[
                        ("A", h.clone()),
                        ("B", minor.concl.clone()),
                        ("C", node.concl.clone()),
                    ],
                )?;
                let step = self.mp_node(d_minor, dist)?;
                self.mp_node(d_major, step)
            }
            Kind::Axiom(..) | Kind::Thm(..) => unreachable!("closed leaves have no open hypotheses"),
        }
    }

    /// Compiles `term` into a script proving `goal`.
    pub fn compile(&self, name: &str, goal: &Formula, term: &Term) -> Result<ProofScript, CalculusError> {
        let root = self.annotate(term)?;
        if let Some(h) = root.open.first() {
            return Err(build_err(format!("{name}: hypothesis {} is never discharged", render_sugared(h))));
        }
        if root.concl != *goal {
            return Err(build_err(format!(
                "{name}: term proves {}, expected {}",
                render_sugared(&root.concl),
                render_sugared(goal)
            )));
        }
        let mut script = ProofScript::new(name, self.system.clone(), goal.clone());
        let mut index: HashMap<Formula, usize> = HashMap::new();
        emit(&root, &mut script.lines, &mut index);
        // The goal may have been emitted early by deduplication; make it last.
        if script.lines.last().map(|l| &l.formula) != Some(goal) {
            let at = index[goal];
            let line = script.lines[at - 1].clone();
            script.lines.push(Line {
                index: script.lines.len() + 1,
                ..line
            });
        }
        Ok(script)
    }
}

fn emit(node: &Node, lines: &mut Vec<Line>, index: &mut HashMap<Formula, usize>) -> usize {
    if let Some(&i) = index.get(&node.concl) {
        return i;
    }
    let just = match &node.kind {
        Kind::Axiom(name, subst, n) => Justification::Axiom {
            name: name.clone(),
            subst: subst.clone(),
            n: *n,
        },
        Kind::Thm(name, subst) => Justification::Thm {
            name: name.clone(),
            subst: subst.clone(),
        },
        Kind::Mp(minor, major) => {
            let i = emit(minor, lines, index);
            let j = emit(major, lines, index);
            Justification::Mp(i, j)
        }
        Kind::Hyp => unreachable!("open hypotheses are rejected before emission"),
    };
    let idx = lines.len() + 1;
    lines.push(Line {
        index: idx,
        formula: node.concl.clone(),
        just,
    });
    index.insert(node.concl.clone(), idx);
    idx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{check_proof, Registry};
    use crate::syntax::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn ipc() -> Builder {
        Builder::new(SystemDef::builtin("IPCplus", None).unwrap())
    }

    #[test]
    fn identity_by_lambda() {
        let a = f("A");
        let s = ipc().compile("ID", &f("A -> A"), &Term::lam(&a, Term::hyp(&a))).unwrap();
        assert_eq!(s.lines.len(), 5);
        assert!(check_proof(&s, &Registry::new()).accepted());
    }

    #[test]
    fn syllogism_by_lambdas() {
        let (a, b, c) = (f("A"), f("B"), f("C"));
        let ab = Formula::imp(a.clone(), b.clone());
        let bc = Formula::imp(b.clone(), c.clone());
        let term = Term::lam(
            &ab,
            Term::lam(
                &bc,
                Term::lam(&a, Term::hyp(&a).then(Term::hyp(&ab)).then(Term::hyp(&bc))),
            ),
        );
        let goal = f("(A -> B) -> (B -> C) -> A -> C");
        let s = ipc().compile("T2", &goal, &term).unwrap();
        assert!(check_proof(&s, &Registry::new()).accepted());
    }

    #[test]
    fn rejects_open_hypothesis_and_bad_mp() {
        let a = f("A");
        assert!(ipc().compile("X", &a, &Term::hyp(&a)).is_err());
        let bad = Term::mp(Term::hyp(&a), Term::hyp(&a));
        assert!(matches!(ipc().conclusion(&bad), Err(CalculusError::Build(_))));
    }

    #[test]
    fn unknown_statement() {
        assert!(ipc().conclusion(&Term::thm("NOPE", &[])).is_err());
    }
}
