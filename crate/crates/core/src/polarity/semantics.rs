use std::collections::BTreeMap;

use crate::algebra::{classify_negation, is_valid, upset_algebra_of, NegationClass, NegationModel, Valuation};
use crate::calculus::{axiom_formulas, SystemDef};
use crate::syntax::Formula;

use super::{PolarityError, PolarityFrame};

/// The up-sets of a frame as a Heyting algebra with `lambda` as negation.
/// Element `i` of the model is the up-set `sets[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpSetAlgebra {
    pub sets: Vec<u64>,
    pub model: NegationModel,
}

impl UpSetAlgebra {
    pub fn index_of(&self, u: u64) -> Option<usize> {
        self.sets.iter().position(|&s| s == u)
    }
}

/// Builds the induced model. Elements are named like `{}`, `{b}`, `{a,b}`.
pub fn upset_algebra(frame: &PolarityFrame) -> Result<UpSetAlgebra, PolarityError> {
    let (sets, alg) = upset_algebra_of(frame.size(), frame.leq_matrix(), |u| frame.set_name(u))?;
    let neg = sets
        .iter()
        .map(|&u| {
            let l = frame.lambda(u);
            sets.iter().position(|&s| s == l).ok_or_else(|| {
                PolarityError::ClosureFailure(format!(
                    "lambda {} = {} is not up-closed",
                    frame.set_name(u),
                    frame.set_name(l)
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let model = NegationModel::new(std::sync::Arc::new(alg), neg)?;
    let class = classify_negation(&model).class;
    if class < NegationClass::Split {
        return Err(PolarityError::ClosureFailure(format!(
            "induced negation is only {class} on {frame}"
        )));
    }
    Ok(UpSetAlgebra { sets, model })
}

/// Kripke satisfaction computed world by world: intuitionistic clauses for
/// the positive connectives and `lambda` for negation. Returns the set of
/// worlds satisfying `f`.
pub fn kripke_set(
    frame: &PolarityFrame,
    valuation: &BTreeMap<String, u64>,
    f: &Formula,
) -> Result<u64, PolarityError> {
    let k = frame.size();
    let set = |f: &Formula| kripke_set(frame, valuation, f);
    Ok(match f {
        Formula::Atom(a) => {
            let u = *valuation
                .get(a)
                .ok_or_else(|| PolarityError::NonHereditaryValuation(format!("{a} has no value")))?;
            if u & !frame.all() != 0 || !frame.is_upset(u) {
                return Err(PolarityError::NonHereditaryValuation(format!(
                    "{a} = {} is not up-closed",
                    frame.set_name(u)
                )));
            }
            u
        }
        Formula::Bot => 0,
        Formula::Top => frame.all(),
        Formula::And(a, b) => set(a)? & set(b)?,
        Formula::Or(a, b) => set(a)? | set(b)?,
        Formula::Imp(a, b) => {
            let (sa, sb) = (set(a)?, set(b)?);
            (0..k)
                .filter(|&w| {
                    (0..k)
                        .filter(|&v| frame.leq(w, v))
                        .all(|v| sa & (1 << v) == 0 || sb & (1 << v) != 0)
                })
                .fold(0, |acc, w| acc | 1 << w)
        }
        Formula::Neg(a) => frame.lambda(set(a)?),
    })
}

/// Whether `world` satisfies `f`.
pub fn kripke_eval(
    frame: &PolarityFrame,
    valuation: &BTreeMap<String, u64>,
    world: usize,
    f: &Formula,
) -> Result<bool, PolarityError> {
    Ok(kripke_set(frame, valuation, f)? & (1 << world) != 0)
}

/// Validity of one axiom (or requirement) on a frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomStatus {
    pub name: String,
    pub falsifier: Option<Valuation>,
    /// Rendered falsifier with up-set names.
    pub detail: Option<String>,
}

impl AxiomStatus {
    pub fn holds(&self) -> bool {
        self.detail.is_none()
    }
}

/// Per-axiom validity of `system` at `n` in the induced algebra. Systems
/// with axiom 13b also require a selfadjoint frame.
pub fn verify_frame_axioms(
    frame: &PolarityFrame,
    system: &SystemDef,
    n: usize,
) -> Result<Vec<AxiomStatus>, PolarityError> {
    let ua = upset_algebra(frame)?;
    let mut out: Vec<AxiomStatus> = axiom_formulas(system, n)
        .into_iter()
        .map(|(name, f)| {
            let falsifier = is_valid(&f, &ua.model).falsifier;
            let detail = falsifier.as_ref().map(|v| v.render(&ua.model));
            AxiomStatus {
                name: name.to_string(),
                falsifier,
                detail,
            }
        })
        .collect();
    if system.contains("13b") {
        out.push(AxiomStatus {
            name: "selfadjoint".to_string(),
            falsifier: None,
            detail: (!frame.is_selfadjoint()).then(|| "lambda differs from rho".to_string()),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::eval;
    use crate::polarity::{build_frame_named, builtin_frame, enumerate_frames};
    use crate::syntax::parse;

    #[test]
    fn chain_with_empty_r_is_intuitionistic() {
        let f = build_frame_named(&["a", "b"], &[("a", "b")], &[]).unwrap();
        let ua = upset_algebra(&f).unwrap();
        assert_eq!(ua.sets, vec![0b00, 0b10, 0b11]);
        let names: Vec<&str> = ua.model.algebra().lattice().names().iter().map(String::as_str).collect();
        assert_eq!(names, vec!["{}", "{b}", "{a,b}"]);
        assert_eq!(ua.model.neg_table(), vec![2, 0, 0]);
    }

    #[test]
    fn full_relation_is_constant_top() {
        let f = builtin_frame("FRAME_FULL_R").unwrap();
        let ua = upset_algebra(&f).unwrap();
        let top = ua.model.algebra().lattice().top();
        assert!(ua.model.neg_table().iter().all(|&x| x == top));
        let v: BTreeMap<String, u64> = [("p".to_string(), 0b01)].into();
        assert!(kripke_eval(&f, &v, 1, &parse("~p").unwrap()).unwrap());
        let status = verify_frame_axioms(&f, &SystemDef::builtin("Zn", Some(1)).unwrap(), 1).unwrap();
        let failing: Vec<&str> = status.iter().filter(|s| !s.holds()).map(|s| s.name.as_str()).collect();
        assert!(failing.contains(&"10b.2"), "{failing:?}");
    }

    #[test]
    fn symmetric_discrete_frame_is_selfadjoint_split() {
        let f = build_frame_named(&["a", "b"], &[], &[("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]).unwrap();
        assert!(f.is_selfadjoint());
        let ua = upset_algebra(&f).unwrap();
        assert!(classify_negation(&ua.model).class >= NegationClass::Split);
    }

    #[test]
    fn non_upset_valuation_is_rejected() {
        let f = build_frame_named(&["a", "b"], &[("a", "b")], &[]).unwrap();
        let v: BTreeMap<String, u64> = [("p".to_string(), 0b01)].into();
        assert!(matches!(
            kripke_eval(&f, &v, 0, &parse("p").unwrap()),
            Err(PolarityError::NonHereditaryValuation(_))
        ));
    }

    #[test]
    fn kripke_agrees_with_algebra_and_is_monotone() {
        let formulas: Vec<Formula> = ["p -> q", "~p | ~~q", "~(p & q) -> ~p | ~q", "(p -> ~q) -> ~(p & q)", "~1 -> 0"]
            .iter()
            .map(|s| parse(s).unwrap())
            .collect();
        for f in enumerate_frames(2).unwrap() {
            let ua = upset_algebra(&f).unwrap();
            for (i, &u) in ua.sets.iter().enumerate() {
                for (j, &w) in ua.sets.iter().enumerate() {
                    let kv: BTreeMap<String, u64> = [("p".to_string(), u), ("q".to_string(), w)].into();
                    let av: Valuation = [("p".to_string(), i), ("q".to_string(), j)].into_iter().collect();
                    for g in &formulas {
                        let s = kripke_set(&f, &kv, g).unwrap();
                        assert!(f.is_upset(s));
                        assert_eq!(Some(eval(g, &ua.model, &av).unwrap()), ua.index_of(s));
                    }
                }
            }
        }
    }
}
