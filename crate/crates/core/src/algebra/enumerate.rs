use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::syntax::Formula;

use super::classify::negation_class;
use super::{
    for_each_valuation, from_order, upsets, AlgebraError, HeytingAlgebra, NegationClass, NegationModel,
    Program, Valuation,
};

/// Default largest lattice whose negation tables are enumerated.
pub const DEFAULT_MAX_LATTICE: usize = 6;
/// Largest lattice accepted at all (`8^8` tables per lattice).
pub const HARD_MAX_LATTICE: usize = 8;

/// Limits for enumeration and search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_lattice: usize,
    /// Only negations of at least this class are produced.
    pub filter: NegationClass,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_lattice: DEFAULT_MAX_LATTICE,
            filter: NegationClass::None,
        }
    }
}

impl Bounds {
    pub fn with_max_lattice(max_lattice: usize) -> Self {
        Bounds {
            max_lattice,
            ..Bounds::default()
        }
    }

    fn check(&self) -> Result<(), AlgebraError> {
        if self.max_lattice > HARD_MAX_LATTICE {
            return Err(AlgebraError::BoundExceeded(format!(
                "lattice size {} is above the limit {HARD_MAX_LATTICE}",
                self.max_lattice
            )));
        }
        Ok(())
    }
}

/// A poset on `p` points as a row-major order matrix.
type Poset = (usize, Vec<bool>);

fn poset_code(p: usize, leq: &[bool], perm: &[usize]) -> u64 {
    let mut code = 0u64;
    for i in 0..p {
        for j in 0..p {
            code = code << 1 | leq[perm[i] * p + perm[j]] as u64;
        }
    }
    code
}

fn permutations(p: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..p).collect(), &mut Vec::new(), &mut out);
    out
}

fn canonical(p: usize, leq: &[bool], perms: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|perm| poset_code(p, leq, perm))
        .max()
        .unwrap_or(0)
}

/// Posets (up to isomorphism) with at most `max_upsets` up-sets, grown by
/// adding a new maximal point above a down-set of the previous points.
fn posets(max_upsets: usize) -> Vec<Poset> {
    let mut all: Vec<Poset> = vec![(0, Vec::new())];
    let mut layer: Vec<Poset> = vec![(0, Vec::new())];
    while !layer.is_empty() {
        let p = layer[0].0 + 1;
        if p >= 64 {
            break;
        }
        let perms = permutations(p);
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for (q, leq) in &layer {
            let q = *q;
            // Down-sets of the old poset are complements of its up-sets.
            let full = (1u64 << q) - 1;
            for up in upsets(q, leq) {
                let below = full & !up;
                let mut grown = vec![false; p * p];
                for i in 0..q {
                    for j in 0..q {
                        grown[i * p + j] = leq[i * q + j];
                    }
                    grown[i * p + q] = below & (1 << i) != 0;
                }
                grown[q * p + q] = true;
                if upsets(p, &grown).len() > max_upsets {
                    continue;
                }
                if seen.insert(canonical(p, &grown, &perms)) {
                    next.push((p, grown));
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

fn element_name(i: usize, k: usize) -> String {
    match i {
        0 => "0".to_string(),
        _ if i + 1 == k => "1".to_string(),
        _ => ((b'a' + (i - 1) as u8) as char).to_string(),
    }
}

/// Every finite distributive lattice with at most `max_size` elements, up to
/// isomorphism, as up-set lattices of posets. Ordered by size, then by a
/// canonical code of the underlying poset. Elements are named `0`, `a`, `b`,
/// ..., `1` in the size-then-lexicographic up-set order.
pub fn distributive_lattices(max_size: usize) -> Vec<Arc<HeytingAlgebra>> {
    static CACHE: OnceLock<Vec<(usize, u64, Arc<HeytingAlgebra>)>> = OnceLock::new();
    if max_size > HARD_MAX_LATTICE {
        return build_lattices(max_size).into_iter().map(|(_, _, a)| a).collect();
    }
    CACHE
        .get_or_init(|| build_lattices(HARD_MAX_LATTICE))
        .iter()
        .filter(|(k, _, _)| *k <= max_size)
        .map(|(_, _, a)| a.clone())
        .collect()
}

fn build_lattices(max_size: usize) -> Vec<(usize, u64, Arc<HeytingAlgebra>)> {
    let mut out: Vec<(usize, u64, Arc<HeytingAlgebra>)> = posets(max_size)
        .into_iter()
        .map(|(p, leq)| {
            let sets = upsets(p, &leq);
            let k = sets.len();
            let mut order = vec![false; k * k];
            for (i, &u) in sets.iter().enumerate() {
                for (j, &v) in sets.iter().enumerate() {
                    order[i * k + j] = u & !v == 0;
                }
            }
            let names = (0..k).map(|i| element_name(i, k)).collect();
            let alg = from_order(names, order).expect("up-set lattices are Heyting algebras");
            let code = canonical(p, &leq, &permutations(p));
            (k, code, Arc::new(alg))
        })
        .collect();
    out.sort_by_key(|(k, code, _)| (*k, *code));
    out
}

/// Every negation table on `alg`, in lexicographic order (`~0` most
/// significant), that reaches the class filter.
fn tables_on(alg: &Arc<HeytingAlgebra>, filter: NegationClass, mut visit: impl FnMut(NegationModel) -> bool) {
    let k = alg.size();
    for_each_valuation(k, k, |neg| {
        let m = NegationModel::from_raw(alg.clone(), neg.to_vec());
        if filter == NegationClass::None || negation_class(&m) >= filter {
            visit(m)
        } else {
            true
        }
    });
}

/// All models on lattices of at most `bounds.max_lattice` elements whose
/// negation reaches `bounds.filter`, lattice by lattice.
pub fn enumerate_models(bounds: Bounds) -> Result<Vec<NegationModel>, AlgebraError> {
    bounds.check()?;
    let lattices = distributive_lattices(bounds.max_lattice);
    let per: Vec<Vec<NegationModel>> = lattices
        .par_iter()
        .map(|alg| {
            let mut v = Vec::new();
            tables_on(alg, bounds.filter, |m| {
                v.push(m);
                true
            });
            v
        })
        .collect();
    Ok(per.into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub model: NegationModel,
    pub valuation: Valuation,
}

/// Outcome of a countermodel search with its coverage. Counts stop at the
/// hit when one is found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub found: Option<Countermodel>,
    pub lattices: usize,
    pub negations: usize,
    /// Models in which every axiom is valid.
    pub axiom_models: usize,
}

struct LatticeScan {
    negations: usize,
    axiom_models: usize,
    hit: Option<Countermodel>,
}

/// Searches for the first model (in enumeration order) validating every
/// axiom and falsifying `target`.
pub fn countermodel_search(
    axioms: &[Formula],
    target: &Formula,
    bounds: Bounds,
) -> Result<SearchReport, AlgebraError> {
    bounds.check()?;
    let mut progs: Vec<Program> = axioms.iter().map(Program::new).collect();
    // Cheap checks first.
    progs.sort_by_key(|p| (p.uses_negation(), p.atoms().len()));
    let (plain, with_neg): (Vec<Program>, Vec<Program>) = progs.into_iter().partition(|p| !p.uses_negation());
    let target = Program::new(target);
    let lattices = distributive_lattices(bounds.max_lattice);
    // Index of the earliest lattice known to hold a hit; later lattices
    // cannot change the answer and stop early.
    let first_hit = AtomicUsize::new(usize::MAX);

    let scans: Vec<LatticeScan> = lattices
        .par_iter()
        .enumerate()
        .map(|(idx, alg)| {
            let k = alg.size();
            let total = k.pow(k as u32);
            // Negation-free axioms do not depend on the table.
            let probe = NegationModel::from_raw(alg.clone(), vec![alg.lattice().top() as u8; k]);
            if !plain.iter().all(|p| p.is_valid(&probe)) {
                return LatticeScan {
                    negations: total,
                    axiom_models: 0,
                    hit: None,
                };
            }
            let mut scan = LatticeScan {
                negations: 0,
                axiom_models: 0,
                hit: None,
            };
            tables_on(alg, bounds.filter, |m| {
                if first_hit.load(Ordering::Relaxed) < idx {
                    return false;
                }
                scan.negations += 1;
                if !with_neg.iter().all(|p| p.is_valid(&m)) {
                    return true;
                }
                scan.axiom_models += 1;
                match target.first_falsifier(&m) {
                    Some(vals) => {
                        scan.hit = Some(Countermodel {
                            valuation: target.valuation(&vals),
                            model: m,
                        });
                        first_hit.fetch_min(idx, Ordering::Relaxed);
                        false
                    }
                    None => true,
                }
            });
            scan
        })
        .collect();

    let mut report = SearchReport {
        found: None,
        lattices: 0,
        negations: 0,
        axiom_models: 0,
    };
    for scan in scans {
        report.lattices += 1;
        report.negations += scan.negations;
        report.axiom_models += scan.axiom_models;
        if scan.hit.is_some() {
            report.found = scan.hit;
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{axiom_formulas, SystemDef};
    use crate::syntax::parse;

    #[test]
    fn distributive_lattice_counts() {
        let lats = distributive_lattices(8);
        let counts: Vec<usize> = (1..=8)
            .map(|k| lats.iter().filter(|a| a.size() == k).count())
            .collect();
        // Known sequence of finite distributive lattices by size.
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 5, 8, 15]);
    }

    #[test]
    fn small_lattices_are_chains() {
        let lats = distributive_lattices(2);
        assert_eq!(lats.len(), 2);
        assert!(lats.iter().all(|a| a.is_chain()));
    }

    #[test]
    fn general_negations_on_two_chain() {
        let models = enumerate_models(Bounds {
            max_lattice: 2,
            filter: NegationClass::General,
        })
        .unwrap();
        let tables: Vec<Vec<usize>> = models
            .iter()
            .filter(|m| m.size() == 2)
            .map(|m| m.neg_table())
            .collect();
        assert_eq!(tables, vec![vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn de_morgan_on_three_chain() {
        let models = enumerate_models(Bounds {
            max_lattice: 3,
            filter: NegationClass::DeMorgan,
        })
        .unwrap();
        let tables: Vec<Vec<usize>> = models
            .iter()
            .filter(|m| m.size() == 3)
            .map(|m| m.neg_table())
            .collect();
        assert_eq!(tables, vec![vec![2, 1, 0]]);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            enumerate_models(Bounds::with_max_lattice(9)),
            Err(AlgebraError::BoundExceeded(_))
        ));
    }

    fn axioms(system: &str) -> Vec<Formula> {
        let sys = SystemDef::builtin(system, Some(1)).unwrap();
        axiom_formulas(&sys, 1).into_iter().map(|(_, f)| f).collect()
    }

    #[test]
    fn paraconsistency_witness_is_found() {
        let r = countermodel_search(&axioms("mZn"), &parse("(A & ~A) -> B").unwrap(), Bounds::with_max_lattice(3))
            .unwrap();
        let hit = r.found.unwrap();
        assert_eq!(hit.model.size(), 2);
        assert_eq!(hit.model.neg_table(), vec![1, 1]);
        assert_eq!(hit.valuation.to_string(), "A=1,B=0");
    }

    #[test]
    fn axiom_target_has_no_countermodel() {
        let r = countermodel_search(&axioms("CPL"), &parse("A | ~A").unwrap(), Bounds::with_max_lattice(4)).unwrap();
        assert!(r.found.is_none());
        assert_eq!(r.lattices, distributive_lattices(4).len());
        assert!(r.axiom_models > 0);
    }
}
