//! The shipped theorem corpus.
//!
//! Proofs are written as terms over hypotheses and compiled to primitive
//! lines; NEFQ is kept in its hand-written form. Parametric families (CLUB,
//! DIAMOND, RED11, RED12, PROP) are generated per `n` and connective.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::syntax::Formula;

use super::{
    check_proof, parse_script, render_script, Builder, CalculusError, Failure, FailureKind,
    ProofScript, Registry, SystemDef, Term,
};

/// Binary connective of the parametric families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Imp,
    And,
    Or,
}

impl Op {
    pub const ALL: [Op; 3] = [Op::Imp, Op::And, Op::Or];

    pub fn apply(self, a: Formula, b: Formula) -> Formula {
        match self {
            Op::Imp => Formula::imp(a, b),
            Op::And => Formula::and(a, b),
            Op::Or => Formula::or(a, b),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Op::Imp => "IMP",
            Op::And => "AND",
            Op::Or => "OR",
        }
    }
}

/// Values of `n` covered by the shipped corpus.
pub const CORPUS_NS: [usize; 3] = [1, 2, 3];

fn a() -> Formula {
    Formula::atom("A")
}
fn b() -> Formula {
    Formula::atom("B")
}
fn c() -> Formula {
    Formula::atom("C")
}
fn imp(x: Formula, y: Formula) -> Formula {
    Formula::imp(x, y)
}
fn and(x: Formula, y: Formula) -> Formula {
    Formula::and(x, y)
}
fn or(x: Formula, y: Formula) -> Formula {
    Formula::or(x, y)
}
fn neg(x: Formula) -> Formula {
    Formula::neg(x)
}
/// `x^k`, with `x^0 = x`.
fn pw(x: &Formula, k: usize) -> Formula {
    x.circ_iter(k)
}
/// `x & ~x`
fn clash(x: &Formula) -> Formula {
    and(x.clone(), neg(x.clone()))
}

/// Statements of every corpus theorem, plus the lemma SPLIT_IMP that the
/// DIAMOND(1, ->) elaboration needs but nothing proves.
pub mod statements {
    use super::*;

    pub fn t0() -> Formula {
        imp(and(imp(a(), b()), imp(a(), c())), imp(a(), and(b(), c())))
    }
    pub fn t1() -> Formula {
        imp(imp(a(), imp(b(), c())), imp(b(), imp(a(), c())))
    }
    pub fn t2() -> Formula {
        imp(imp(a(), b()), imp(imp(b(), c()), imp(a(), c())))
    }
    pub fn t3() -> Formula {
        Formula::equiv(imp(a(), imp(b(), c())), imp(and(a(), b()), c()))
    }
    pub fn nefq() -> Formula {
        imp(clash(&a()), neg(b()))
    }
    pub fn heart() -> Formula {
        imp(
            neg(neg(and(a(), b()))),
            and(neg(neg(a())), neg(neg(b()))),
        )
    }
    /// `(A*B) & ~(A*B) -> (A & ~A) | (B & ~B)`
    pub fn split(op: Op) -> Formula {
        imp(clash(&op.apply(a(), b())), or(clash(&a()), clash(&b())))
    }
    /// `A^o & A^2 -> B^o`
    pub fn cons2() -> Formula {
        imp(and(a().circ(), pw(&a(), 2)), b().circ())
    }
    pub fn club(n: usize, op: Op) -> Formula {
        imp(
            neg(pw(&op.apply(a(), b()), n)),
            or(neg(pw(&a(), n)), neg(pw(&b(), n))),
        )
    }
    pub fn diamond(n: usize, op: Op) -> Formula {
        imp(and(a().cpow(n), b().cpow(n)), pw(&op.apply(a(), b()), n))
    }
    /// Axiom (11) at `n`.
    pub fn red11(n: usize) -> Formula {
        imp(
            b().cpow(n),
            imp(imp(a(), b()), imp(imp(a(), neg(b())), neg(a()))),
        )
    }
    /// Axiom (12) at `n`.
    pub fn red12(n: usize) -> Formula {
        let cp = |op: Op| op.apply(a(), b()).cpow(n);
        imp(
            and(a().cpow(n), b().cpow(n)),
            and(and(cp(Op::And), cp(Op::Or)), cp(Op::Imp)),
        )
    }
    pub fn prop(n: usize) -> Formula {
        imp(a().cpow(n), neg(a()).cpow(n))
    }
    pub fn neg0() -> Formula {
        Formula::equiv(neg(Formula::Bot), Formula::Top)
    }
    pub fn negor() -> Formula {
        Formula::equiv(neg(or(a(), b())), and(neg(a()), neg(b())))
    }
}

pub fn club_name(n: usize, op: Op) -> String {
    format!("CLUB_{n}_{}", op.tag())
}
pub fn diamond_name(n: usize, op: Op) -> String {
    format!("DIAMOND_{n}_{}", op.tag())
}
pub fn split_name(op: Op) -> String {
    format!("SPLIT_{}", op.tag())
}

fn declare_all(b: &mut Builder) {
    use statements as s;
    b.declare("T0", &s::t0())
        .declare("T1", &s::t1())
        .declare("T2", &s::t2())
        .declare("T3", &s::t3())
        .declare("NEFQ", &s::nefq())
        .declare("HEART", &s::heart())
        .declare("CONS2", &s::cons2());
    for op in Op::ALL {
        b.declare(&split_name(op), &s::split(op));
    }
    for n in CORPUS_NS {
        for op in Op::ALL {
            b.declare(&club_name(n, op), &s::club(n, op));
            b.declare(&diamond_name(n, op), &s::diamond(n, op));
        }
    }
}

/// A term together with the formula it proves.
#[derive(Clone, Debug)]
struct Pf {
    t: Term,
    f: Formula,
}

/// Proof-term combinators over one system.
struct Kit {
    b: Builder,
}

impl Kit {
    fn new(system: SystemDef) -> Kit {
        let mut b = Builder::new(system);
        declare_all(&mut b);
        Kit { b }
    }

    fn ax(&self, name: &str, bindings: &[(&str, Formula)]) -> Pf {
        let t = Term::ax(name, bindings);
        let f = self.b.conclusion(&t).unwrap_or_else(|e| panic!("axiom {name}: {e}"));
        Pf { t, f }
    }

    fn thm(&self, name: &str, bindings: &[(&str, Formula)]) -> Pf {
        let t = Term::thm(name, bindings);
        let f = self.b.conclusion(&t).unwrap_or_else(|e| panic!("theorem {name}: {e}"));
        Pf { t, f }
    }

    fn hyp(&self, f: &Formula) -> Pf {
        Pf {
            t: Term::hyp(f),
            f: f.clone(),
        }
    }

    /// Modus Ponens: `major` proves `minor -> x`.
    fn mp(&self, minor: &Pf, major: &Pf) -> Pf {
        let f = match major.f.as_imp() {
            Some((x, y)) if *x == minor.f => y.clone(),
            _ => panic!("cannot apply {} to {}", major.f, minor.f),
        };
        Pf {
            t: Term::mp(minor.t.clone(), major.t.clone()),
            f,
        }
    }

    fn app(&self, fun: &Pf, arg: &Pf) -> Pf {
        self.mp(arg, fun)
    }

    fn lam(&self, h: &Formula, body: Pf) -> Pf {
        Pf {
            t: Term::lam(h, body.t),
            f: imp(h.clone(), body.f),
        }
    }

    fn pair(&self, x: &Pf, y: &Pf) -> Pf {
        let ax3 = self.ax("3", &[("A", x.f.clone()), ("B", y.f.clone())]);
        self.mp(y, &self.mp(x, &ax3))
    }

    fn split_and(&self, p: &Pf) -> (Formula, Formula) {
        let (x, y) = p.f.as_and().unwrap_or_else(|| panic!("{} is not a conjunction", p.f));
        (x.clone(), y.clone())
    }

    fn fst(&self, p: &Pf) -> Pf {
        let (x, y) = self.split_and(p);
        self.mp(p, &self.ax("4", &[("A", x), ("B", y)]))
    }

    fn snd(&self, p: &Pf) -> Pf {
        let (x, y) = self.split_and(p);
        self.mp(p, &self.ax("5", &[("A", x), ("B", y)]))
    }

    fn inl(&self, p: &Pf, other: Formula) -> Pf {
        self.mp(p, &self.ax("6", &[("A", p.f.clone()), ("B", other)]))
    }

    fn inr(&self, other: Formula, p: &Pf) -> Pf {
        self.mp(p, &self.ax("7", &[("A", other), ("B", p.f.clone())]))
    }

    /// Case split on a disjunction with two implications to a common goal.
    fn cases(&self, d: &Pf, left: &Pf, right: &Pf) -> Pf {
        let (x, z) = left.f.as_imp().expect("left case is an implication");
        let (y, _) = right.f.as_imp().expect("right case is an implication");
        let ax8 = self.ax("8", &[("A", x.clone()), ("B", y.clone()), ("C", z.clone())]);
        self.mp(d, &self.mp(right, &self.mp(left, &ax8)))
    }

    /// `x -> y` to `~y -> ~x` by (9b).
    fn contra(&self, p: &Pf) -> Pf {
        let (x, y) = p.f.as_imp().expect("contraposition needs an implication");
        let ax = self.ax("9b", &[("A", x.clone()), ("B", y.clone())]);
        self.mp(p, &ax)
    }

    /// Chains `x -> y` and `y -> z` through (T2).
    fn syl(&self, p: &Pf, q: &Pf) -> Pf {
        let (x, y) = p.f.as_imp().expect("implication");
        let (_, z) = q.f.as_imp().expect("implication");
        let t2 = self.thm("T2", &[("A", x.clone()), ("B", y.clone()), ("C", z.clone())]);
        self.mp(q, &self.mp(p, &t2))
    }

    /// From a proof of `x^(n)` extracts `x^k`, `1 <= k <= n`.
    fn proj_pow(&self, p: &Pf, n: usize, k: usize) -> Pf {
        assert!((1..=n).contains(&k));
        if n == 1 {
            return p.clone();
        }
        if k == n {
            self.snd(p)
        } else {
            self.proj_pow(&self.fst(p), n - 1, k)
        }
    }

    /// From a proof of `x^(n)` extracts `x^(m)`, `1 <= m <= n`.
    fn proj_cpow(&self, p: &Pf, n: usize, m: usize) -> Pf {
        let mut cur = p.clone();
        for _ in m..n {
            cur = self.fst(&cur);
        }
        cur
    }

    fn finish(&self, name: &str, goal: &Formula, p: &Pf) -> ProofScript {
        assert_eq!(p.f, *goal, "{name}: proof term does not prove the goal");
        self.b
            .compile(name, goal, &p.t)
            .unwrap_or_else(|e| panic!("{name}: {e}"))
    }
}

fn builtin(name: &str, n: Option<usize>) -> SystemDef {
    SystemDef::builtin(name, n).expect("builtin system")
}

fn ipc_kit() -> Kit {
    Kit::new(builtin("IPCplus", None))
}

fn core_kit() -> Kit {
    Kit::new(builtin("mZnCore", None))
}

fn t0() -> ProofScript {
    let k = ipc_kit();
    let h = and(imp(a(), b()), imp(a(), c()));
    let (ph, pa) = (k.hyp(&h), k.hyp(&a()));
    let body = k.pair(&k.app(&k.fst(&ph), &pa), &k.app(&k.snd(&ph), &pa));
    k.finish("T0", &statements::t0(), &k.lam(&h, k.lam(&a(), body)))
}

fn t1() -> ProofScript {
    let k = ipc_kit();
    let fh = imp(a(), imp(b(), c()));
    let body = k.app(&k.app(&k.hyp(&fh), &k.hyp(&a())), &k.hyp(&b()));
    let p = k.lam(&fh, k.lam(&b(), k.lam(&a(), body)));
    k.finish("T1", &statements::t1(), &p)
}

fn t2() -> ProofScript {
    let k = ipc_kit();
    let (ab, bc) = (imp(a(), b()), imp(b(), c()));
    let body = k.app(&k.hyp(&bc), &k.app(&k.hyp(&ab), &k.hyp(&a())));
    let p = k.lam(&ab, k.lam(&bc, k.lam(&a(), body)));
    k.finish("T2", &statements::t2(), &p)
}

fn t3() -> ProofScript {
    let k = ipc_kit();
    let curried = imp(a(), imp(b(), c()));
    let uncurried = imp(and(a(), b()), c());
    let ab = and(a(), b());
    let pab = k.hyp(&ab);
    let fwd = k.lam(
        &curried,
        k.lam(&ab, k.app(&k.app(&k.hyp(&curried), &k.fst(&pab)), &k.snd(&pab))),
    );
    let pair = k.pair(&k.hyp(&a()), &k.hyp(&b()));
    let bwd = k.lam(
        &uncurried,
        k.lam(&a(), k.lam(&b(), k.app(&k.hyp(&uncurried), &pair))),
    );
    k.finish("T3", &statements::t3(), &k.pair(&fwd, &bwd))
}

/// NEFQ in the layout of its textbook derivation: (1), (9b), then (T2)
/// and (T3) with the Modus Ponens steps spelled out.
const NEFQ_SCRIPT: &str = "\
system mZnCore
theorem NEFQ: A & ~A -> ~B

1. A -> B -> A | axiom 1 {A:=A, B:=B}
2. (B -> A) -> ~A -> ~B | axiom 9b {A:=B, B:=A}
3. (A -> B -> A) -> ((B -> A) -> ~A -> ~B) -> A -> ~A -> ~B | thm T2 {A:=A, B:=B -> A, C:=~A -> ~B}
4. ((B -> A) -> ~A -> ~B) -> A -> ~A -> ~B | mp 1 3
5. A -> ~A -> ~B | mp 2 4
6. ((A -> ~A -> ~B) -> A & ~A -> ~B) & ((A & ~A -> ~B) -> A -> ~A -> ~B) | thm T3 {A:=A, B:=~A, C:=~B}
7. ((A -> ~A -> ~B) -> A & ~A -> ~B) & ((A & ~A -> ~B) -> A -> ~A -> ~B) -> (A -> ~A -> ~B) -> A & ~A -> ~B | axiom 4 {A:=(A -> ~A -> ~B) -> A & ~A -> ~B, B:=(A & ~A -> ~B) -> A -> ~A -> ~B}
8. (A -> ~A -> ~B) -> A & ~A -> ~B | mp 6 7
9. A & ~A -> ~B | mp 5 8
";

fn nefq() -> ProofScript {
    parse_script(NEFQ_SCRIPT).expect("NEFQ script parses")
}

fn heart() -> ProofScript {
    let k = core_kit();
    let h = neg(neg(and(a(), b())));
    let left = k.contra(&k.contra(&k.ax("4", &[("A", a()), ("B", b())])));
    let right = k.contra(&k.contra(&k.ax("5", &[("A", a()), ("B", b())])));
    let ph = k.hyp(&h);
    let p = k.lam(&h, k.pair(&k.app(&left, &ph), &k.app(&right, &ph)));
    k.finish("HEART", &statements::heart(), &p)
}

fn split_and() -> ProofScript {
    let k = core_kit();
    let ab = and(a(), b());
    let h = clash(&ab);
    let ph = k.hyp(&h);
    let pa = k.fst(&k.fst(&ph));
    let not_a = k.app(&k.thm("NEFQ", &[("A", ab), ("B", a())]), &ph);
    let p = k.lam(&h, k.inl(&k.pair(&pa, &not_a), clash(&b())));
    k.finish(&split_name(Op::And), &statements::split(Op::And), &p)
}

fn split_or() -> ProofScript {
    let k = core_kit();
    let d = or(a(), b());
    let h = clash(&d);
    let ph = k.hyp(&h);
    let nd = k.snd(&ph);
    let not_a = k.app(&k.contra(&k.ax("6", &[("A", a()), ("B", b())])), &nd);
    let not_b = k.app(&k.contra(&k.ax("7", &[("A", a()), ("B", b())])), &nd);
    let left = k.lam(&a(), k.inl(&k.pair(&k.hyp(&a()), &not_a), clash(&b())));
    let right = k.lam(&b(), k.inr(clash(&a()), &k.pair(&k.hyp(&b()), &not_b)));
    let p = k.lam(&h, k.cases(&k.fst(&ph), &left, &right));
    k.finish(&split_name(Op::Or), &statements::split(Op::Or), &p)
}

fn cons2() -> ProofScript {
    let k = core_kit();
    let ao = a().circ();
    let h = and(ao.clone(), pw(&a(), 2));
    let ph = k.hyp(&h);
    let bb = clash(&b());
    let to_clash = k.lam(
        &bb,
        k.pair(
            &k.fst(&ph),
            &k.app(&k.thm("NEFQ", &[("A", b()), ("B", ao)]), &k.hyp(&bb)),
        ),
    );
    let p = k.lam(&h, k.app(&k.contra(&to_clash), &k.snd(&ph)));
    k.finish("CONS2", &statements::cons2(), &p)
}

fn club(n: usize, op: Op) -> ProofScript {
    let k = core_kit();
    let y = pw(&op.apply(a(), b()), n - 1);
    let (an, bn) = (pw(&a(), n), pw(&b(), n));
    let h1 = k.thm("HEART", &[("A", y.clone()), ("B", neg(y.clone()))]);
    let h2 = k.thm("NEFQ", &[("A", neg(neg(y))), ("B", an.clone())]);
    let h3 = k.ax("6", &[("A", neg(an)), ("B", neg(bn))]);
    let p = k.syl(&k.syl(&h1, &h2), &h3);
    k.finish(&club_name(n, op), &statements::club(n, op), &p)
}

fn diamond(n: usize, op: Op) -> ProofScript {
    let k = core_kit();
    let h = and(a().cpow(n), b().cpow(n));
    let (pa, pb) = (pw(&a(), n - 1), pw(&b(), n - 1));
    let y = pw(&op.apply(a(), b()), n - 1);
    let yy = clash(&y);
    let ph = k.hyp(&h);
    // Under h: (Y & ~Y) -> (P & ~P) | (Q & ~Q).
    let key = if n == 1 {
        k.thm(&split_name(op), &[("A", a()), ("B", b())])
    } else {
        let p_top = k.proj_pow(&k.fst(&ph), n, n - 1);
        let not_p = k.app(&k.thm("NEFQ", &[("A", y.clone()), ("B", pa.clone())]), &k.hyp(&yy));
        k.lam(&yy, k.inl(&k.pair(&p_top, &not_p), clash(&pb)))
    };
    let orax = k.ax("12b", &[("A", clash(&pa)), ("B", clash(&pb))]);
    let to_circ = k.contra(&key);
    let both = k.pair(&k.proj_pow(&k.fst(&ph), n, n), &k.proj_pow(&k.snd(&ph), n, n));
    let p = k.lam(&h, k.app(&to_circ, &k.app(&orax, &both)));
    k.finish(&diamond_name(n, op), &statements::diamond(n, op), &p)
}

fn red11(n: usize) -> ProofScript {
    let k = core_kit();
    let bn = b().cpow(n);
    let (ab, anb) = (imp(a(), b()), imp(a(), neg(b())));
    let pa = k.hyp(&a());
    let to_clash = k.lam(
        &a(),
        k.pair(&k.app(&k.hyp(&ab), &pa), &k.app(&k.hyp(&anb), &pa)),
    );
    let bo = k.proj_pow(&k.hyp(&bn), n, 1);
    let body = k.app(&k.contra(&to_clash), &bo);
    let p = k.lam(&bn, k.lam(&ab, k.lam(&anb, body)));
    k.finish(&format!("RED11_{n}"), &statements::red11(n), &p)
}

fn red12(n: usize) -> ProofScript {
    let k = core_kit();
    let h = and(a().cpow(n), b().cpow(n));
    let ph = k.hyp(&h);
    let level = |op: Op, m: usize| -> Pf {
        if op == Op::Imp && m == 1 && n >= 2 {
            let base = k.pair(&k.proj_pow(&k.fst(&ph), n, 1), &k.proj_pow(&k.fst(&ph), n, 2));
            return k.app(&k.thm("CONS2", &[("A", a()), ("B", imp(a(), b()))]), &base);
        }
        let hm = k.pair(&k.proj_cpow(&k.fst(&ph), n, m), &k.proj_cpow(&k.snd(&ph), n, m));
        k.app(&k.thm(&diamond_name(m, op), &[("A", a()), ("B", b())]), &hm)
    };
    let family = |op: Op| -> Pf {
        let mut acc = level(op, 1);
        for m in 2..=n {
            acc = k.pair(&acc, &level(op, m));
        }
        acc
    };
    let body = k.pair(&k.pair(&family(Op::And), &family(Op::Or)), &family(Op::Imp));
    k.finish(&format!("RED12_{n}"), &statements::red12(n), &k.lam(&h, body))
}

fn prop(n: usize) -> ProofScript {
    let k = Kit::new(builtin("mZn", Some(n)));
    let h = a().cpow(n);
    let ph = k.hyp(&h);
    let na = neg(a());
    let circ_of = |x: &Formula| -> Pf {
        if n >= 2 {
            let base = k.pair(&k.proj_pow(&ph, n, 1), &k.proj_pow(&ph, n, 2));
            k.app(&k.thm("CONS2", &[("A", a()), ("B", x.clone())]), &base)
        } else {
            every_circ(&k, x)
        }
    };
    let mut acc = circ_of(&na);
    for m in 2..=n {
        acc = k.pair(&acc, &circ_of(&pw(&na, m - 1)));
    }
    k.finish(&format!("PROP_{n}"), &statements::prop(n), &k.lam(&h, acc))
}

/// In mZn(1), `x^o` for any `x`: (12) at `A = B = 0` yields `(0 -> 0)^o`,
/// and NEFQ plus (9b) transfer it.
fn every_circ(k: &Kit, x: &Formula) -> Pf {
    let bot = Formula::Bot;
    let t = imp(bot.clone(), bot.clone());
    let pt = k.ax("11b.2", &[("A", bot.clone())]);
    let top = k.app(&k.ax("11b.1", &[("A", t.clone())]), &pt);
    let not_bot = k.app(&k.ax("10b.1", &[]), &top);
    let drop = k.ax("4", &[("A", bot.clone()), ("B", neg(bot.clone()))]);
    let bot_circ = k.app(&k.contra(&drop), &not_bot);
    let ax12 = k.ax("12", &[("A", bot.clone()), ("B", bot)]);
    let t_circ = k.snd(&k.app(&ax12, &k.pair(&bot_circ, &bot_circ)));
    let xx = clash(x);
    let to_clash = k.lam(
        &xx,
        k.pair(&pt, &k.app(&k.thm("NEFQ", &[("A", x.clone()), ("B", t)]), &k.hyp(&xx))),
    );
    k.app(&k.contra(&to_clash), &t_circ)
}

fn neg0() -> ProofScript {
    let k = Kit::new(builtin("mZn", Some(1)));
    let nb = neg(Formula::Bot);
    let p = k.pair(&k.ax("11b.1", &[("A", nb)]), &k.ax("10b.1", &[]));
    k.finish("NEG0", &statements::neg0(), &p)
}

fn negor() -> ProofScript {
    let k = Kit::new(builtin("mZn", Some(1)));
    let d = or(a(), b());
    let both = k.pair(
        &k.contra(&k.ax("6", &[("A", a()), ("B", b())])),
        &k.contra(&k.ax("7", &[("A", a()), ("B", b())])),
    );
    let t0 = k.thm("T0", &[("A", neg(d)), ("B", neg(a())), ("C", neg(b()))]);
    let fwd = k.app(&t0, &both);
    let bwd = k.ax("12b", &[("A", a()), ("B", b())]);
    k.finish("NEGOR", &statements::negor(), &k.pair(&fwd, &bwd))
}

/// Every shipped script, dependencies first.
pub fn scripts() -> Vec<ProofScript> {
    let mut out = vec![t0(), t1(), t2(), t3(), nefq(), heart(), split_and(), split_or(), cons2()];
    for n in CORPUS_NS {
        for op in Op::ALL {
            out.push(club(n, op));
        }
    }
    for n in CORPUS_NS {
        for op in Op::ALL {
            out.push(diamond(n, op));
        }
    }
    out.extend(CORPUS_NS.iter().map(|&n| red11(n)));
    out.extend(CORPUS_NS.iter().map(|&n| red12(n)));
    out.extend(CORPUS_NS.iter().map(|&n| prop(n)));
    out.push(neg0());
    out.push(negor());
    out
}

/// File name of a script inside a corpus directory.
pub fn file_name(script: &ProofScript) -> String {
    format!("{}.prf", script.name.to_lowercase())
}

fn io_err(path: &Path, e: impl ToString) -> CalculusError {
    CalculusError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

/// Writes every script as `<name>.prf` into `dir`.
pub fn write_dir(dir: &Path, scripts: &[ProofScript]) -> Result<(), CalculusError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    for s in scripts {
        let path = dir.join(file_name(s));
        fs::write(&path, render_script(s)).map_err(|e| io_err(&path, e))?;
    }
    Ok(())
}

/// Reads every `*.prf` file of `dir`, in file-name order.
pub fn load_dir(dir: &Path) -> Result<Vec<ProofScript>, CalculusError> {
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(|e| io_err(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "prf"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p).map_err(|e| io_err(p, e))?;
            parse_script(&text).map_err(|e| io_err(p, e))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusRecord {
    pub name: String,
    pub system: String,
    pub n: Option<usize>,
    pub lines: usize,
    /// `None` when accepted.
    pub failure: Option<Failure>,
}

impl CorpusRecord {
    pub fn accepted(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusReport {
    pub records: Vec<CorpusRecord>,
}

impl CorpusReport {
    pub fn all_accepted(&self) -> bool {
        self.records.iter().all(CorpusRecord::accepted)
    }

    pub fn rejected(&self) -> impl Iterator<Item = &CorpusRecord> {
        self.records.iter().filter(|r| !r.accepted())
    }

    pub fn get(&self, name: &str) -> Option<&CorpusRecord> {
        self.records.iter().find(|r| r.name == name)
    }
}

/// Checks `scripts` in dependency order, registering each accepted one.
///
/// Scripts whose citations are all available are checked concurrently;
/// records come back in input order.
pub fn verify_corpus(scripts: &[ProofScript], registry: &mut Registry) -> CorpusReport {
    let names: BTreeSet<&str> = scripts.iter().map(|s| s.name.as_str()).collect();
    let mut pending: Vec<usize> = (0..scripts.len()).collect();
    let mut done: BTreeSet<&str> = BTreeSet::new();
    let mut records: BTreeMap<usize, CorpusRecord> = BTreeMap::new();
    while !pending.is_empty() {
        let (mut ready, blocked): (Vec<usize>, Vec<usize>) = pending.iter().partition(|&&i| {
            scripts[i]
                .cited_theorems()
                .iter()
                .all(|d| *d == scripts[i].name || !names.contains(d) || done.contains(d))
        });
        if ready.is_empty() {
            // A citation cycle: check the rest as they are.
            ready = blocked.clone();
        }
        let reg: &Registry = registry;
        let verdicts: Vec<_> = ready
            .par_iter()
            .map(|&i| (i, check_proof(&scripts[i], reg)))
            .collect();
        for (i, verdict) in verdicts {
            let s = &scripts[i];
            let mut failure = verdict.failures.first().cloned();
            if failure.is_none() {
                if let Err(e) = registry.insert_verified(s.clone()) {
                    failure = Some(Failure {
                        line: 0,
                        kind: FailureKind::DuplicateName,
                        detail: e.to_string(),
                    });
                }
            }
            records.insert(
                i,
                CorpusRecord {
                    name: s.name.clone(),
                    system: s.system.name().to_string(),
                    n: s.system.n(),
                    lines: s.lines.len(),
                    failure,
                },
            );
            done.insert(&s.name);
        }
        pending.retain(|i| !records.contains_key(i));
    }
    CorpusReport {
        records: records.into_values().collect(),
    }
}

/// Verifies the generated corpus into a fresh registry.
pub fn verify_builtin() -> (CorpusReport, Registry) {
    let mut reg = Registry::new();
    let report = verify_corpus(&scripts(), &mut reg);
    (report, reg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{splice_all, splice_line, Justification};

    #[test]
    fn corpus_status() {
        let (report, _) = verify_builtin();
        let rejected: Vec<_> = report.rejected().map(|r| r.name.as_str()).collect();
        assert_eq!(rejected, vec!["DIAMOND_1_IMP", "RED12_1"]);
        let d = report.get("DIAMOND_1_IMP").unwrap().failure.clone().unwrap();
        assert_eq!(d.kind, FailureKind::UnknownTheorem);
        assert!(d.detail.contains("SPLIT_IMP"));
        assert_eq!(report.records.len(), 38);
    }

    #[test]
    fn nefq_matches_statement() {
        assert_eq!(nefq().goal, statements::nefq());
    }

    #[test]
    fn club_cites_heart_and_nefq() {
        let script = club(2, Op::And);
        let mut cited = script.cited_theorems();
        cited.sort();
        assert_eq!(cited, vec!["HEART", "NEFQ", "T2"]);
    }

    #[test]
    fn red11_uses_only_contraposition() {
        let (_, reg) = verify_builtin();
        let mut sys = SystemDef::custom("IPCplus+9b", None, &["1", "2", "3", "4", "5", "6", "7", "8", "9b"]).unwrap();
        for n in CORPUS_NS {
            let s = red11(n).with_system(sys.clone());
            assert!(check_proof(&s, &reg).accepted());
        }
        sys = sys.without("IPCplus", &["9b"]);
        assert!(!check_proof(&red11(1).with_system(sys), &reg).accepted());
    }

    #[test]
    fn red11_citing_top_axiom_is_a_violation() {
        let (_, reg) = verify_builtin();
        let mut s = red11(1);
        s.lines[0].just = Justification::Axiom {
            name: "11b.1".into(),
            subst: crate::syntax::Substitution::new(),
            n: None,
        };
        let v = check_proof(&s, &reg);
        assert_eq!(v.failures.len(), 1);
        assert_eq!((v.failures[0].line, v.failures[0].kind), (1, FailureKind::SystemViolation));
    }

    #[test]
    fn splice_preserves_acceptance() {
        let (_, reg) = verify_builtin();
        for s in [club(2, Op::Or), nefq(), negor()] {
            let first_thm = s
                .lines
                .iter()
                .find(|l| matches!(l.just, Justification::Thm { .. }))
                .unwrap()
                .index;
            let one = splice_line(&s, first_thm, &reg).unwrap();
            assert!(check_proof(&one, &reg).accepted(), "{}", s.name);
            let flat = splice_all(&s, &reg).unwrap();
            assert!(flat.cited_theorems().is_empty());
            assert_eq!(flat.lines.last().unwrap().formula, s.goal);
            assert!(check_proof(&flat, &Registry::new()).accepted(), "{}", s.name);
        }
    }

    #[test]
    fn monotone_under_larger_systems() {
        let (_, reg) = verify_builtin();
        let bigger = builtin("mCZn", Some(2));
        for s in [heart(), club(1, Op::Imp), diamond(2, Op::Imp), red12(2), prop(2)] {
            assert!(check_proof(&s, &reg).accepted());
            assert!(check_proof(&s.with_system(bigger.clone()), &reg).accepted(), "{}", s.name);
        }
    }

    #[test]
    fn deterministic() {
        let (r1, reg) = verify_builtin();
        let (r2, _) = verify_builtin();
        assert_eq!(r1, r2);
        let s = diamond(3, Op::Or);
        assert_eq!(check_proof(&s, &reg), check_proof(&s, &reg));
        assert_eq!(scripts(), scripts());
    }

    #[test]
    fn files_round_trip() {
        for s in scripts() {
            assert_eq!(parse_script(&render_script(&s)).unwrap(), s, "{}", s.name);
        }
    }
}
