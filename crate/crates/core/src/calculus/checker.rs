use std::collections::BTreeMap;
use std::fmt;

use crate::syntax::{render_sugared, Formula, Pattern, Substitution};

use super::{fixed_pattern, schema, CalculusError, Justification, ProofScript, SystemDef};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FailureKind {
    /// The line is not an instance of the cited schema or theorem.
    SchemaMismatch,
    BadMp,
    UnknownTheorem,
    /// The cited axiom or theorem lies outside the script's system.
    SystemViolation,
    /// Line numbering is not strictly increasing, or a reference points
    /// at a missing or later line.
    BadIndex,
    /// The last line is not the stated theorem.
    GoalMismatch,
    /// A corpus holds two theorems with one name in one system.
    DuplicateName,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub line: usize,
    pub kind: FailureKind,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}: {}", self.line, self.kind, self.detail)
    }
}

/// Outcome of checking one script. Every line is examined; nothing stops
/// at the first failure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    pub failures: Vec<Failure>,
}

impl Verdict {
    pub fn accepted(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }

    fn fail(&mut self, line: usize, kind: FailureKind, detail: impl Into<String>) {
        self.failures.push(Failure {
            line,
            kind,
            detail: detail.into(),
        });
    }
}

/// A checked theorem, stored schematically.
#[derive(Clone, Debug)]
pub struct Theorem {
    pub name: String,
    pub system: SystemDef,
    pub statement: Pattern,
    pub script: ProofScript,
}

/// Theorems keyed by name and system.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    by_name: BTreeMap<String, Vec<Theorem>>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.by_name.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_name.is_empty()
    }

    pub fn theorems(&self) -> impl Iterator<Item = &Theorem> {
        self.by_name.values().flatten()
    }

    /// The theorem `name` registered for `system` or one of its subsystems.
    pub fn lookup(&self, name: &str, system: &SystemDef) -> Result<&Theorem, FailureKind> {
        let candidates = self.by_name.get(name).ok_or(FailureKind::UnknownTheorem)?;
        candidates
            .iter()
            .find(|t| t.system.is_subsystem_of(system))
            .ok_or(FailureKind::SystemViolation)
    }

    /// Checks `script` and stores its goal under its own name.
    pub fn register(&mut self, script: ProofScript) -> Result<(), CalculusError> {
        let verdict = check_proof(&script, self);
        if !verdict.accepted() {
            return Err(CalculusError::RejectedProof {
                name: script.name.clone(),
                reason: verdict.failures[0].to_string(),
            });
        }
        self.insert_verified(script)
    }

    /// Stores a script the caller has already checked against `self`.
    pub(crate) fn insert_verified(&mut self, script: ProofScript) -> Result<(), CalculusError> {
        let entries = self.by_name.entry(script.name.clone()).or_default();
        if entries.iter().any(|t| t.system == script.system) {
            return Err(CalculusError::DuplicateName(script.name.clone()));
        }
        entries.push(Theorem {
            name: script.name.clone(),
            system: script.system.clone(),
            statement: Pattern::schematize(&script.goal),
            script,
        });
        Ok(())
    }
}

/// Functional form of [`Registry::register`]; the script is stored under
/// `name`.
pub fn register_theorem(
    name: &str,
    script: &ProofScript,
    mut registry: Registry,
) -> Result<Registry, CalculusError> {
    let mut script = script.clone();
    script.name = name.to_string();
    registry.register(script)?;
    Ok(registry)
}

/// Checks that `target` is an instance of `pattern` under `subst`. A
/// substitution that leaves metavariables unbound is completed by matching.
fn check_instance(pattern: &Pattern, subst: &Substitution, target: &Formula) -> Result<(), String> {
    let vars = pattern.metavars();
    if let Some(extra) = subst.domain().into_iter().find(|v| !vars.contains(v)) {
        return Err(format!("binds {extra}, which does not occur in {pattern}"));
    }
    if vars.len() == subst.len() {
        let inst = pattern.apply(subst).map_err(|e| e.to_string())?;
        if inst == *target {
            Ok(())
        } else {
            Err(format!(
                "instance is {}, line states {}",
                render_sugared(&inst),
                render_sugared(target)
            ))
        }
    } else if pattern.match_with(target, subst).is_some() {
        Ok(())
    } else {
        Err(format!("{} is not an instance of {pattern}", render_sugared(target)))
    }
}

/// Verifies every line of `script` against `registry`.
pub fn check_proof(script: &ProofScript, registry: &Registry) -> Verdict {
    let mut verdict = Verdict::default();
    let mut seen: BTreeMap<usize, &Formula> = BTreeMap::new();
    let mut last_index = 0;
    for line in &script.lines {
        let idx = line.index;
        if idx == 0 || idx <= last_index {
            verdict.fail(idx, FailureKind::BadIndex, format!("index {idx} does not increase"));
        }
        last_index = last_index.max(idx);
        match &line.just {
            Justification::Axiom { name, subst, n } => {
                if schema(name).is_none() {
                    verdict.fail(idx, FailureKind::SchemaMismatch, format!("no schema named {name}"));
                } else {
                    match fixed_pattern(&script.system, name, *n) {
                        Ok(pattern) => {
                            if let Err(d) = check_instance(&pattern, subst, &line.formula) {
                                verdict.fail(idx, FailureKind::SchemaMismatch, format!("axiom {name}: {d}"));
                            }
                        }
                        Err(CalculusError::UnknownAxiom { name, system }) => verdict.fail(
                            idx,
                            FailureKind::SystemViolation,
                            format!("axiom {name} is not part of {system}"),
                        ),
                        Err(e) => verdict.fail(idx, FailureKind::SchemaMismatch, e.to_string()),
                    }
                }
            }
            Justification::Mp(i, j) => match (seen.get(i), seen.get(j)) {
                (Some(minor), Some(major)) => {
                    let ok = matches!(major.as_imp(), Some((a, b)) if a == *minor && *b == line.formula);
                    if !ok {
                        verdict.fail(
                            idx,
                            FailureKind::BadMp,
                            format!("line {j} is not `line {i} -> line {idx}`"),
                        );
                    }
                }
                _ => {
                    let missing = if seen.contains_key(i) { j } else { i };
                    verdict.fail(
                        idx,
                        FailureKind::BadIndex,
                        format!("mp cites line {missing}, which is not an earlier line"),
                    );
                }
            },
            Justification::Thm { name, subst } => match registry.lookup(name, &script.system) {
                Ok(thm) => {
                    if let Err(d) = check_instance(&thm.statement, subst, &line.formula) {
                        verdict.fail(idx, FailureKind::SchemaMismatch, format!("theorem {name}: {d}"));
                    }
                }
                Err(FailureKind::UnknownTheorem) => verdict.fail(
                    idx,
                    FailureKind::UnknownTheorem,
                    format!("no theorem named {name} is registered"),
                ),
                Err(kind) => verdict.fail(
                    idx,
                    kind,
                    format!("theorem {name} is only registered outside {}", script.system.label()),
                ),
            },
        }
        seen.insert(idx, &line.formula);
    }
    match script.lines.last() {
        Some(last) if last.formula == script.goal => {}
        Some(last) => verdict.fail(
            last.index,
            FailureKind::GoalMismatch,
            format!(
                "last line states {}, theorem is {}",
                render_sugared(&last.formula),
                render_sugared(&script.goal)
            ),
        ),
        None => verdict.fail(0, FailureKind::GoalMismatch, "script has no lines"),
    }
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{parse_script, Line};
    use crate::syntax::parse;

    fn sys(name: &str) -> SystemDef {
        SystemDef::builtin(name, Some(1)).unwrap()
    }

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn identity_script() -> ProofScript {
        parse_script(
            "system IPCplus
theorem ID: A -> A
1. A -> (A -> A) -> A | axiom 1 {A:=A, B:=A -> A}
2. A -> A -> A | axiom 1 {A:=A, B:=A}
3. (A -> A -> A) -> (A -> (A -> A) -> A) -> A -> A | axiom 2 {A:=A, B:=A -> A, C:=A}
4. (A -> (A -> A) -> A) -> A -> A | mp 2 3
5. A -> A | mp 1 4
",
        )
        .unwrap()
    }

    #[test]
    fn accepts_identity() {
        let v = check_proof(&identity_script(), &Registry::new());
        assert!(v.accepted(), "{:?}", v.failures);
    }

    #[test]
    fn bad_mp_is_located() {
        let mut s = identity_script();
        s.lines[4].just = Justification::Mp(4, 1);
        let v = check_proof(&s, &Registry::new());
        assert_eq!(v.failures.len(), 1);
        assert_eq!((v.failures[0].line, v.failures[0].kind), (5, FailureKind::BadMp));
    }

    #[test]
    fn keeps_going_after_failures() {
        let mut s = identity_script();
        s.lines[0].formula = f("A -> A");
        s.lines[3].just = Justification::Mp(2, 9);
        let v = check_proof(&s, &Registry::new());
        let kinds: Vec<_> = v.failures.iter().map(|x| (x.line, x.kind)).collect();
        assert_eq!(
            kinds,
            vec![
                (1, FailureKind::SchemaMismatch),
                (4, FailureKind::BadIndex),
                (5, FailureKind::BadMp)
            ]
        );
    }

    #[test]
    fn axiom_outside_system() {
        let s = ProofScript {
            name: "X".into(),
            system: sys("mZn"),
            goal: f("~1 -> 0"),
            lines: vec![Line {
                index: 1,
                formula: f("~1 -> 0"),
                just: Justification::Axiom {
                    name: "10b.2".into(),
                    subst: Substitution::new(),
                    n: None,
                },
            }],
        };
        let v = check_proof(&s, &Registry::new());
        assert_eq!(v.failures[0].kind, FailureKind::SystemViolation);
        assert!(check_proof(&s.with_system(sys("Zn")), &Registry::new()).accepted());
    }

    #[test]
    fn partial_substitution_is_completed_by_matching() {
        let mut s = identity_script();
        if let Justification::Axiom { subst, .. } = &mut s.lines[2].just {
            *subst = Substitution::new().with("C", f("A"));
        }
        assert!(check_proof(&s, &Registry::new()).accepted());
    }

    #[test]
    fn registry_rules() {
        let mut reg = Registry::new();
        reg.register(identity_script()).unwrap();
        assert!(matches!(
            reg.register(identity_script()),
            Err(CalculusError::DuplicateName(_))
        ));
        let mut bad = identity_script();
        bad.name = "BAD".into();
        bad.lines.pop();
        assert!(matches!(reg.register(bad), Err(CalculusError::RejectedProof { .. })));
        // Citable from a supersystem, with a substitution.
        let user = ProofScript {
            name: "USE".into(),
            system: sys("mZn"),
            goal: f("~p -> ~p"),
            lines: vec![Line {
                index: 1,
                formula: f("~p -> ~p"),
                just: Justification::Thm {
                    name: "ID".into(),
                    subst: Substitution::new().with("A", f("~p")),
                },
            }],
        };
        assert!(check_proof(&user, &reg).accepted());
        let v = check_proof(&user, &Registry::new());
        assert_eq!(v.failures[0].kind, FailureKind::UnknownTheorem);
    }

    #[test]
    fn theorem_from_larger_system_is_a_violation() {
        let mut reg = Registry::new();
        reg.register(identity_script().with_system(sys("mZn"))).unwrap();
        let mut user = identity_script();
        user.name = "USE".into();
        user.lines = vec![Line {
            index: 1,
            formula: f("A -> A"),
            just: Justification::Thm {
                name: "ID".into(),
                subst: Substitution::new(),
            },
        }];
        let v = check_proof(&user, &reg);
        assert_eq!(v.failures[0].kind, FailureKind::SystemViolation);
    }

    #[test]
    fn functional_registration() {
        let reg = register_theorem("I", &identity_script(), Registry::new()).unwrap();
        assert!(reg.lookup("I", &sys("IPCplus")).is_ok());
        assert_eq!(reg.len(), 1);
    }
}
