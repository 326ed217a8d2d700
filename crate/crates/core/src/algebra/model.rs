use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::syntax::Formula;

use super::{build_algebra_named, AlgebraError, HeytingAlgebra};

/// A Heyting algebra together with a unary negation table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegationModel {
    algebra: Arc<HeytingAlgebra>,
    neg: Vec<u8>,
}

impl NegationModel {
    pub fn new(algebra: Arc<HeytingAlgebra>, neg: Vec<usize>) -> Result<Self, AlgebraError> {
        let k = algebra.size();
        if neg.len() != k || neg.iter().any(|&x| x >= k) {
            return Err(AlgebraError::InvalidSpec(format!(
                "negation table must map each of the {k} elements to an element"
            )));
        }
        Ok(NegationModel {
            algebra,
            neg: neg.into_iter().map(|x| x as u8).collect(),
        })
    }

    pub(crate) fn from_raw(algebra: Arc<HeytingAlgebra>, neg: Vec<u8>) -> Self {
        debug_assert_eq!(neg.len(), algebra.size());
        NegationModel { algebra, neg }
    }

    pub fn algebra(&self) -> &HeytingAlgebra {
        &self.algebra
    }

    pub fn shared_algebra(&self) -> &Arc<HeytingAlgebra> {
        &self.algebra
    }

    pub fn size(&self) -> usize {
        self.algebra.size()
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x] as usize
    }

    pub fn neg_table(&self) -> Vec<usize> {
        self.neg.iter().map(|&x| x as usize).collect()
    }

    pub fn name(&self, x: usize) -> &str {
        self.algebra.lattice().name(x)
    }

    /// `~0=1, ~m=m, ...` in element order.
    pub fn describe_neg(&self) -> String {
        (0..self.size())
            .map(|x| format!("~{}={}", self.name(x), self.name(self.neg(x))))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Assignment of atoms to lattice elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation(pub BTreeMap<String, usize>);

impl Valuation {
    pub fn get(&self, atom: &str) -> Option<usize> {
        self.0.get(atom).copied()
    }

    /// `A=1,B=0` with element names taken from `m`.
    pub fn render(&self, m: &NegationModel) -> String {
        self.0
            .iter()
            .map(|(a, &x)| format!("{a}={}", m.name(x)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl FromIterator<(String, usize)> for Valuation {
    fn from_iter<T: IntoIterator<Item = (String, usize)>>(iter: T) -> Self {
        Valuation(iter.into_iter().collect())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(a, x)| format!("{a}={x}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Evaluates `f` under `v`.
pub fn eval(f: &Formula, m: &NegationModel, v: &Valuation) -> Result<usize, AlgebraError> {
    let l = m.algebra().lattice();
    Ok(match f {
        Formula::Atom(a) => v.get(a).ok_or_else(|| AlgebraError::UnboundAtom(a.clone()))?,
        Formula::Bot => l.bot(),
        Formula::Top => l.top(),
        Formula::And(a, b) => l.meet(eval(a, m, v)?, eval(b, m, v)?),
        Formula::Or(a, b) => l.join(eval(a, m, v)?, eval(b, m, v)?),
        Formula::Imp(a, b) => m.algebra().imp(eval(a, m, v)?, eval(b, m, v)?),
        Formula::Neg(a) => m.neg(eval(a, m, v)?),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Instr {
    Atom(u8),
    Bot,
    Top,
    Neg,
    And,
    Or,
    Imp,
}

/// A formula flattened to postfix code over a fixed atom order, for the
/// inner loops of validity checking and model search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    atoms: Vec<String>,
    code: Vec<Instr>,
    uses_neg: bool,
}

impl Program {
    /// Compiles over the atoms of `f` in name order.
    pub fn new(f: &Formula) -> Program {
        let atoms: Vec<String> = f.atoms().into_iter().map(str::to_string).collect();
        Program::with_atoms(f, atoms)
    }

    /// Compiles over a given atom order, which must cover `f`.
    pub fn with_atoms(f: &Formula, atoms: Vec<String>) -> Program {
        let mut code = Vec::new();
        compile(f, &atoms, &mut code);
        let uses_neg = code.contains(&Instr::Neg);
        Program { atoms, code, uses_neg }
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn uses_negation(&self) -> bool {
        self.uses_neg
    }

    /// Value under `vals[i]` for atom `i`.
    #[inline]
    pub fn run(&self, m: &NegationModel, vals: &[u8]) -> u8 {
        run_tables(&self.code, m.algebra(), &m.neg, vals)
    }

    /// Lexicographically first valuation (by element index, atoms in name
    /// order) not sent to top, if any.
    pub fn first_falsifier(&self, m: &NegationModel) -> Option<Vec<u8>> {
        let top = m.algebra().lattice().top() as u8;
        let mut found = None;
        for_each_valuation(self.atoms.len(), m.size(), |vals| {
            if self.run(m, vals) != top {
                found = Some(vals.to_vec());
                false
            } else {
                true
            }
        });
        found
    }

    pub fn is_valid(&self, m: &NegationModel) -> bool {
        self.first_falsifier(m).is_none()
    }

    pub(crate) fn valuation(&self, vals: &[u8]) -> Valuation {
        self.atoms
            .iter()
            .cloned()
            .zip(vals.iter().map(|&x| x as usize))
            .collect()
    }
}

fn compile(f: &Formula, atoms: &[String], out: &mut Vec<Instr>) {
    match f {
        Formula::Atom(a) => {
            let i = atoms.iter().position(|x| x == a).expect("atom order covers the formula");
            out.push(Instr::Atom(i as u8));
        }
        Formula::Bot => out.push(Instr::Bot),
        Formula::Top => out.push(Instr::Top),
        Formula::Neg(a) => {
            compile(a, atoms, out);
            out.push(Instr::Neg);
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            compile(a, atoms, out);
            compile(b, atoms, out);
            out.push(match f {
                Formula::And(..) => Instr::And,
                Formula::Or(..) => Instr::Or,
                _ => Instr::Imp,
            });
        }
    }
}

#[inline]
fn run_tables(code: &[Instr], alg: &HeytingAlgebra, neg: &[u8], vals: &[u8]) -> u8 {
    let k = alg.size();
    let l = alg.lattice();
    let (meet, join, imp) = (l.meet_table(), l.join_table(), alg.imp_table());
    let mut stack: Vec<u8> = Vec::with_capacity(16);
    for ins in code {
        match *ins {
            Instr::Atom(i) => stack.push(vals[i as usize]),
            Instr::Bot => stack.push(l.bot() as u8),
            Instr::Top => stack.push(l.top() as u8),
            Instr::Neg => {
                let x = stack.pop().expect("operand");
                stack.push(neg[x as usize]);
            }
            Instr::And | Instr::Or | Instr::Imp => {
                let b = stack.pop().expect("operand") as usize;
                let a = stack.pop().expect("operand") as usize;
                let table = match *ins {
                    Instr::And => meet,
                    Instr::Or => join,
                    _ => imp,
                };
                stack.push(table[a * k + b]);
            }
        }
    }
    stack.pop().expect("result")
}

/// Calls `visit` on every tuple in `0..k` of length `arity`, in
/// lexicographic order, until it returns false.
pub(crate) fn for_each_valuation(arity: usize, k: usize, mut visit: impl FnMut(&[u8]) -> bool) {
    let mut vals = vec![0u8; arity];
    loop {
        if !visit(&vals) {
            return;
        }
        let mut i = arity;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            vals[i] += 1;
            if (vals[i] as usize) < k {
                break;
            }
            vals[i] = 0;
        }
    }
}

/// Result of a validity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validity {
    pub falsifier: Option<Valuation>,
}

impl Validity {
    pub fn valid(&self) -> bool {
        self.falsifier.is_none()
    }
}

/// Checks `f` under every valuation into `m`.
pub fn is_valid(f: &Formula, m: &NegationModel) -> Validity {
    let prog = Program::new(f);
    Validity {
        falsifier: prog.first_falsifier(m).map(|v| prog.valuation(&v)),
    }
}

/// Result of an entailment check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entailment {
    pub witness: Option<Valuation>,
}

impl Entailment {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Every valuation sending all premises to top sends `conclusion` to top.
pub fn entails(premises: &[Formula], conclusion: &Formula, m: &NegationModel) -> Entailment {
    let atoms: Vec<String> = premises
        .iter()
        .chain(std::iter::once(conclusion))
        .flat_map(|f| f.atoms())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(str::to_string)
        .collect();
    let progs: Vec<Program> = premises
        .iter()
        .map(|p| Program::with_atoms(p, atoms.clone()))
        .collect();
    let concl = Program::with_atoms(conclusion, atoms.clone());
    let top = m.algebra().lattice().top() as u8;
    let mut witness = None;
    for_each_valuation(atoms.len(), m.size(), |vals| {
        if progs.iter().all(|p| p.run(m, vals) == top) && concl.run(m, vals) != top {
            witness = Some(concl.valuation(vals));
            false
        } else {
            true
        }
    });
    Entailment { witness }
}

/// Names of the compiled-in models.
pub const BUILTIN_MODELS: &[&str] = &["B2_TRIV", "B2_CLASSICAL", "CHAIN3", "CHAIN3_M"];

fn two_chain() -> Arc<HeytingAlgebra> {
    Arc::new(build_algebra_named(&["0", "1"], &[("0", "1")]).expect("2-chain"))
}

fn three_chain() -> Arc<HeytingAlgebra> {
    Arc::new(build_algebra_named(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).expect("3-chain"))
}

/// Compiled-in models:
///
/// * `B2_TRIV`: two elements, negation constantly 1 (the paraconsistency
///   witness).
/// * `B2_CLASSICAL`: two elements, classical negation.
/// * `CHAIN3`: `0 < m < 1` with `~0=1, ~m=1, ~1=m`.
/// * `CHAIN3_M`: `0 < m < 1` with `~0=1, ~m=m, ~1=m`; validates every
///   mZn(1) axiom except (12) itself.
pub fn builtin_model(name: &str) -> Result<NegationModel, AlgebraError> {
    let (alg, neg) = match name {
        "B2_TRIV" => (two_chain(), vec![1, 1]),
        "B2_CLASSICAL" => (two_chain(), vec![1, 0]),
        "CHAIN3" => (three_chain(), vec![2, 2, 1]),
        "CHAIN3_M" => (three_chain(), vec![2, 1, 1]),
        _ => return Err(AlgebraError::UnknownBuiltin(name.to_string())),
    };
    NegationModel::new(alg, neg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn val(pairs: &[(&str, usize)]) -> Valuation {
        pairs.iter().map(|(a, x)| (a.to_string(), *x)).collect()
    }

    #[test]
    fn eval_examples() {
        let m = builtin_model("B2_TRIV").unwrap();
        let v = val(&[("p", 1), ("q", 0)]);
        assert_eq!(eval(&f("(p & ~p) -> q"), &m, &v).unwrap(), 0);
        assert_eq!(eval(&f("(p & ~p) -> ~q"), &m, &v).unwrap(), 1);
        assert!(matches!(
            eval(&f("r"), &m, &v),
            Err(AlgebraError::UnboundAtom(_))
        ));
    }

    #[test]
    fn validity_examples() {
        let m = builtin_model("B2_TRIV").unwrap();
        let v = is_valid(&f("(A & ~A) -> B"), &m);
        assert_eq!(v.falsifier, Some(val(&[("A", 1), ("B", 0)])));
        assert!(is_valid(&f("~1 -> 0"), &m).falsifier.is_some());
        assert!(is_valid(&f("(A & ~A) -> ~B"), &m).valid());
        for name in BUILTIN_MODELS {
            assert!(is_valid(&f("p -> p"), &builtin_model(name).unwrap()).valid());
        }
    }

    #[test]
    fn entailment_examples() {
        let m = builtin_model("B2_TRIV").unwrap();
        let e = entails(&[f("A"), f("~A")], &f("B"), &m);
        assert_eq!(e.witness, Some(val(&[("A", 1), ("B", 0)])));
        assert_eq!(e.witness.unwrap().render(&m), "A=1,B=0");
        assert!(entails(&[f("A"), f("A -> B")], &f("B"), &m).holds());
        for g in ["A | ~A", "~~A -> A", "A -> A"] {
            assert_eq!(entails(&[], &f(g), &m).holds(), is_valid(&f(g), &m).valid());
        }
    }

    #[test]
    fn compiled_agrees_with_tree_evaluation() {
        let m = builtin_model("CHAIN3").unwrap();
        let g = f("~(p -> q) | (q & ~~p) -> ~p");
        let prog = Program::new(&g);
        for_each_valuation(2, 3, |vals| {
            let v = prog.valuation(vals);
            assert_eq!(prog.run(&m, vals) as usize, eval(&g, &m, &v).unwrap());
            true
        });
    }

    #[test]
    fn valuation_order_is_lexicographic() {
        let mut seen = Vec::new();
        for_each_valuation(2, 2, |v| {
            seen.push(v.to_vec());
            true
        });
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let mut count = 0;
        for_each_valuation(0, 3, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 1);
    }
}
