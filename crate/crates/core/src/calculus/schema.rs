use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::syntax::{parse_pattern, Formula, Pattern, Substitution};

use super::CalculusError;

/// A named axiom schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomSchema {
    pub name: &'static str,
    pub pattern: Pattern,
    /// True iff the pattern mentions the consistency parameter `n`.
    pub parametric: bool,
}

const CATALOG_SRC: &[(&str, &str)] = &[
    ("1", "A -> B -> A"),
    ("2", "(A -> B) -> (A -> B -> C) -> A -> C"),
    ("3", "A -> B -> A & B"),
    ("4", "A & B -> A"),
    ("5", "A & B -> B"),
    ("6", "A -> A | B"),
    ("7", "B -> A | B"),
    ("8", "(A -> C) -> (B -> C) -> A | B -> C"),
    ("9", "A | ~A"),
    ("10", "~~A -> A"),
    ("11", "B^(n) -> (A -> B) -> (A -> ~B) -> ~A"),
    ("12", "A^(n) & B^(n) -> (A & B)^(n) & (A | B)^(n) & (A -> B)^(n)"),
    ("10c", "(A -> B) -> (A -> ~B) -> ~A"),
    ("11c", "A -> ~A -> B"),
    ("12c.1", "0 -> A"),
    ("12c.2", "A -> 1"),
    ("9b", "(A -> B) -> ~B -> ~A"),
    ("10b.1", "1 -> ~0"),
    ("10b.2", "~1 -> 0"),
    ("11b.1", "A -> 1"),
    ("11b.2", "0 -> A"),
    ("12b", "~A & ~B -> ~(A | B)"),
    ("13b", "~(A & B) -> ~A | ~B"),
];

/// Every known schema, in catalog order.
pub fn catalog() -> &'static [AxiomSchema] {
    static CATALOG: OnceLock<Vec<AxiomSchema>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        CATALOG_SRC
            .iter()
            .map(|&(name, src)| {
                let pattern = parse_pattern(src).expect("catalog schema parses");
                AxiomSchema {
                    name,
                    parametric: pattern.has_param(),
                    pattern,
                }
            })
            .collect()
    })
}

pub fn schema(name: &str) -> Option<&'static AxiomSchema> {
    catalog().iter().find(|s| s.name == name)
}

fn catalog_position(name: &str) -> usize {
    catalog()
        .iter()
        .position(|s| s.name == name)
        .unwrap_or(usize::MAX)
}

/// A Hilbert system: a set of schemas plus, for parametric systems, the
/// value of `n` at which `(11)` and `(12)` are instantiated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SystemDef {
    name: String,
    n: Option<usize>,
    schemas: Vec<&'static str>,
}

const IPC_PLUS: &[&str] = &["1", "2", "3", "4", "5", "6", "7", "8"];

/// Names accepted by [`SystemDef::builtin`].
pub const BUILTIN_SYSTEMS: &[&str] = &[
    "IPCplus", "CPL", "INT", "Cn", "Zn", "CZn", "mZn", "mCZn", "ZnMinus", "mZnCore",
];

impl SystemDef {
    /// Looks up a builtin system. Parametric systems take `n` (default 1);
    /// non-parametric systems ignore it.
    pub fn builtin(name: &str, n: Option<usize>) -> Result<SystemDef, CalculusError> {
        let with = |extra: &[&'static str]| {
            let mut v: Vec<&'static str> = IPC_PLUS.to_vec();
            v.extend_from_slice(extra);
            v
        };
        let zn = || with(&["11", "12", "9b", "10b.1", "10b.2", "11b.1", "11b.2", "12b"]);
        let without = |mut v: Vec<&'static str>, drop: &str| {
            v.retain(|s| *s != drop);
            v
        };
        let (parametric, schemas) = match name {
            "IPCplus" => (false, with(&[])),
            "CPL" => (false, with(&["9", "10c", "11c", "12c.1", "12c.2"])),
            "INT" => (false, with(&["10c", "11c", "12c.1", "12c.2"])),
            "Cn" => (true, with(&["9", "10", "11", "12"])),
            "Zn" => (true, zn()),
            "CZn" => {
                let mut v = zn();
                v.push("13b");
                (true, v)
            }
            "mZn" => (true, without(zn(), "10b.2")),
            "mCZn" => {
                let mut v = without(zn(), "10b.2");
                v.push("13b");
                (true, v)
            }
            "ZnMinus" => (true, without(without(zn(), "10b.2"), "12b")),
            "mZnCore" => (false, with(&["9b", "12b"])),
            _ => return Err(CalculusError::UnknownSystem(name.to_string())),
        };
        let n = if parametric {
            let n = n.unwrap_or(1);
            if n == 0 {
                return Err(CalculusError::Parameter(format!(
                    "system {name} needs n >= 1"
                )));
            }
            Some(n)
        } else {
            None
        };
        Ok(SystemDef::new(name, n, schemas))
    }

    /// A custom system over catalog schemas. Unknown schema names are
    /// rejected.
    pub fn custom(
        name: impl Into<String>,
        n: Option<usize>,
        schemas: &[&str],
    ) -> Result<SystemDef, CalculusError> {
        let name = name.into();
        let mut resolved = Vec::new();
        for s in schemas {
            let known = schema(s).ok_or_else(|| CalculusError::UnknownAxiom {
                name: s.to_string(),
                system: name.clone(),
            })?;
            if known.parametric && n.is_none() {
                return Err(CalculusError::Parameter(format!(
                    "schema {s} needs a value for n"
                )));
            }
            resolved.push(known.name);
        }
        Ok(SystemDef::new(name, n, resolved))
    }

    fn new(name: impl Into<String>, n: Option<usize>, mut schemas: Vec<&'static str>) -> Self {
        schemas.sort_by_key(|s| catalog_position(s));
        schemas.dedup();
        SystemDef {
            name: name.into(),
            n,
            schemas,
        }
    }

    /// Same schemas minus `drop`, under a new name.
    pub fn without(&self, name: impl Into<String>, drop: &[&str]) -> SystemDef {
        let schemas = self
            .schemas
            .iter()
            .copied()
            .filter(|s| !drop.contains(s))
            .collect();
        SystemDef::new(name, self.n, schemas)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> Option<usize> {
        self.n
    }

    pub fn schemas(&self) -> &[&'static str] {
        &self.schemas
    }

    pub fn contains(&self, schema_name: &str) -> bool {
        self.schemas.contains(&schema_name)
    }

    fn members(&self) -> BTreeSet<(&'static str, Option<usize>)> {
        self.schemas
            .iter()
            .map(|s| {
                let parametric = schema(s).is_some_and(|x| x.parametric);
                (*s, if parametric { self.n } else { None })
            })
            .collect()
    }

    /// Every axiom of `self` (with its parameter value) is an axiom of
    /// `other`.
    pub fn is_subsystem_of(&self, other: &SystemDef) -> bool {
        self.members().is_subset(&other.members())
    }

    /// Label used in reports, e.g. `mZn(n=2)`.
    pub fn label(&self) -> String {
        match self.n {
            Some(n) => format!("{}(n={n})", self.name),
            None => self.name.clone(),
        }
    }
}

impl fmt::Display for SystemDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Resolves a schema of `system`, checking membership and the parameter.
fn resolve(
    system: &SystemDef,
    name: &str,
    n: Option<usize>,
) -> Result<(&'static AxiomSchema, Option<usize>), CalculusError> {
    let unknown = || CalculusError::UnknownAxiom {
        name: name.to_string(),
        system: system.label(),
    };
    let schema = schema(name).ok_or_else(unknown)?;
    if !system.contains(name) {
        return Err(unknown());
    }
    if !schema.parametric {
        if n.is_some() {
            return Err(CalculusError::Parameter(format!(
                "schema {name} takes no parameter"
            )));
        }
        return Ok((schema, None));
    }
    match (n, system.n) {
        (Some(0), _) => Err(CalculusError::Parameter("n must be at least 1".into())),
        (Some(given), Some(sys)) if given != sys => Err(CalculusError::UnknownAxiom {
            name: format!("{name}(n={given})"),
            system: system.label(),
        }),
        (given, sys) => Ok((schema, given.or(sys))),
    }
}

/// The schema's pattern with its parameter fixed (if any).
pub fn fixed_pattern(
    system: &SystemDef,
    name: &str,
    n: Option<usize>,
) -> Result<Pattern, CalculusError> {
    let (schema, n) = resolve(system, name, n)?;
    match n {
        Some(n) => schema
            .pattern
            .fix_param(n)
            .map_err(|e| CalculusError::Parameter(e.to_string())),
        None => Ok(schema.pattern.clone()),
    }
}

/// Instantiates a schema of `system` under `s`. Every metavariable must be
/// bound; see [`instantiate_axiom_partial`] for the schematic variant.
pub fn instantiate_axiom(
    system: &SystemDef,
    name: &str,
    s: &Substitution,
    n: Option<usize>,
) -> Result<Formula, CalculusError> {
    let pattern = fixed_pattern(system, name, n)?;
    pattern.apply(s).map_err(CalculusError::Subst)
}

/// Like [`instantiate_axiom`], leaving unbound metavariables in place.
pub fn instantiate_axiom_partial(
    system: &SystemDef,
    name: &str,
    s: &Substitution,
    n: Option<usize>,
) -> Result<Pattern, CalculusError> {
    Ok(fixed_pattern(system, name, n)?.apply_partial(s))
}

/// The axioms of `system` at parameter `n`, in catalog order.
pub fn list_axioms(system: &SystemDef, n: usize) -> Vec<(&'static str, Pattern)> {
    system
        .schemas()
        .iter()
        .map(|&name| {
            let schema = schema(name).expect("system schemas come from the catalog");
            let pattern = if schema.parametric {
                schema.pattern.fix_param(n.max(1)).expect("n >= 1")
            } else {
                schema.pattern.clone()
            };
            (name, pattern)
        })
        .collect()
}

/// The axioms of `system` at `n` as formulas whose atoms stand for the
/// metavariables.
pub fn axiom_formulas(system: &SystemDef, n: usize) -> Vec<(&'static str, Formula)> {
    list_axioms(system, n)
        .into_iter()
        .map(|(name, p)| (name, p.to_schematic_formula().expect("parameter is fixed")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn sys(name: &str) -> SystemDef {
        SystemDef::builtin(name, Some(1)).unwrap()
    }

    #[test]
    fn contraposition_instance() {
        let s = Substitution::new()
            .with("A", parse("p").unwrap())
            .with("B", parse("q").unwrap());
        assert_eq!(
            instantiate_axiom(&sys("mZn"), "9b", &s, None).unwrap(),
            parse("(p -> q) -> ~q -> ~p").unwrap()
        );
    }

    #[test]
    fn mzn_lacks_neg_top_axiom() {
        let err = instantiate_axiom(&sys("mZn"), "10b.2", &Substitution::new(), None);
        assert!(matches!(err, Err(CalculusError::UnknownAxiom { .. })));
        assert!(instantiate_axiom(&sys("Zn"), "10b.2", &Substitution::new(), None).is_ok());
    }

    #[test]
    fn reductio_relativization_instance() {
        let s = Substitution::new()
            .with("A", parse("p").unwrap())
            .with("B", parse("q").unwrap());
        let got = instantiate_axiom(&sys("Cn"), "11", &s, Some(1)).unwrap();
        assert_eq!(got, parse("q^1 -> (p -> q) -> (p -> ~q) -> ~p").unwrap());
    }

    #[test]
    fn parameter_must_match_system() {
        let s = Substitution::new()
            .with("A", parse("p").unwrap())
            .with("B", parse("q").unwrap());
        assert!(instantiate_axiom(&sys("Cn"), "11", &s, Some(2)).is_err());
        assert!(matches!(
            instantiate_axiom(&sys("Cn"), "9", &s, Some(2)),
            Err(CalculusError::Parameter(_))
        ));
    }

    #[test]
    fn list_axioms_mzn() {
        let names: Vec<_> = list_axioms(&sys("mZn"), 1).into_iter().map(|(n, _)| n).collect();
        assert_eq!(
            names,
            vec!["1", "2", "3", "4", "5", "6", "7", "8", "11", "12", "9b", "10b.1", "11b.1", "11b.2", "12b"]
        );
    }

    #[test]
    fn list_axioms_mczn_and_znminus() {
        let base: Vec<_> = list_axioms(&sys("mZn"), 1).into_iter().map(|(n, _)| n).collect();
        let mut with13: Vec<_> = base.clone();
        with13.push("13b");
        let mczn: Vec<_> = list_axioms(&sys("mCZn"), 1).into_iter().map(|(n, _)| n).collect();
        assert_eq!(mczn, with13);
        let minus: Vec<_> = list_axioms(&sys("ZnMinus"), 1).into_iter().map(|(n, _)| n).collect();
        let expected: Vec<_> = base.into_iter().filter(|n| *n != "12b").collect();
        assert_eq!(minus, expected);
    }

    #[test]
    fn builtin_table() {
        let names = |s: &str| sys(s).schemas().to_vec();
        assert_eq!(names("IPCplus").len(), 8);
        assert_eq!(names("CPL"), vec!["1", "2", "3", "4", "5", "6", "7", "8", "9", "10c", "11c", "12c.1", "12c.2"]);
        assert!(!sys("INT").contains("9"));
        assert_eq!(names("Cn"), vec!["1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12"]);
        assert_eq!(names("Zn").len(), 16);
        assert!(sys("CZn").contains("13b"));
        assert_eq!(names("mZnCore"), vec!["1", "2", "3", "4", "5", "6", "7", "8", "9b", "12b"]);
    }

    #[test]
    fn subsystem_respects_parameter() {
        let m1 = SystemDef::builtin("mZn", Some(1)).unwrap();
        let m2 = SystemDef::builtin("mZn", Some(2)).unwrap();
        assert!(sys("IPCplus").is_subsystem_of(&m2));
        assert!(sys("mZnCore").is_subsystem_of(&m1));
        assert!(m1.is_subsystem_of(&sys("mCZn")));
        assert!(!m1.is_subsystem_of(&m2));
        assert!(!sys("mZn").is_subsystem_of(&sys("mZnCore")));
    }

    #[test]
    fn catalog_marks_parametric_schemas() {
        let parametric: Vec<_> = catalog().iter().filter(|s| s.parametric).map(|s| s.name).collect();
        assert_eq!(parametric, vec!["11", "12"]);
    }

    #[test]
    fn unknown_system() {
        assert!(matches!(
            SystemDef::builtin("K4", None),
            Err(CalculusError::UnknownSystem(_))
        ));
    }
}
