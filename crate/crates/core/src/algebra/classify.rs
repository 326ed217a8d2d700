use std::fmt;

use super::{AlgebraError, NegationModel};

/// The cumulative negation hierarchy; each level implies the previous.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NegationClass {
    None,
    General,
    Split,
    Constructive,
    DeMorgan,
}

impl NegationClass {
    pub const ALL: [NegationClass; 5] = [
        NegationClass::None,
        NegationClass::General,
        NegationClass::Split,
        NegationClass::Constructive,
        NegationClass::DeMorgan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NegationClass::None => "None",
            NegationClass::General => "General",
            NegationClass::Split => "Split",
            NegationClass::Constructive => "Constructive",
            NegationClass::DeMorgan => "DeMorgan",
        }
    }

    pub fn from_name(s: &str) -> Option<NegationClass> {
        NegationClass::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
    }

    /// Level of the hierarchy whose properties a class is expected to
    /// satisfy (0 for `None`).
    pub fn level(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for NegationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One law of the negation hierarchy evaluated on a model. `level` is the
/// class from which on the law is expected to hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Property {
    pub level: NegationClass,
    pub name: &'static str,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub class: NegationClass,
    /// `join {x | ~x >= y}` for each `y`; a right adjoint only when the
    /// Galois law holds.
    pub adjoint: Vec<usize>,
    pub properties: Vec<Property>,
}

impl Classification {
    /// Laws that the class promises but the model breaks.
    pub fn violations(&self) -> Vec<&Property> {
        self.properties
            .iter()
            .filter(|p| p.level <= self.class && !p.holds)
            .collect()
    }

    pub fn property(&self, name: &str) -> Option<&Property> {
        self.properties.iter().find(|p| p.name == name)
    }
}

struct Ctx<'a> {
    m: &'a NegationModel,
    adj: Vec<usize>,
}

impl Ctx<'_> {
    fn k(&self) -> usize {
        self.m.size()
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        self.m.algebra().lattice().leq(a, b)
    }
    fn meet(&self, a: usize, b: usize) -> usize {
        self.m.algebra().lattice().meet(a, b)
    }
    fn join(&self, a: usize, b: usize) -> usize {
        self.m.algebra().lattice().join(a, b)
    }
    fn n(&self, a: usize) -> usize {
        self.m.neg(a)
    }
    fn name(&self, a: usize) -> &str {
        self.m.name(a)
    }

    fn unary(&self, law: impl Fn(usize) -> bool) -> Option<String> {
        (0..self.k())
            .find(|&x| !law(x))
            .map(|x| format!("x={}", self.name(x)))
    }

    fn binary(&self, law: impl Fn(usize, usize) -> bool) -> Option<String> {
        (0..self.k())
            .flat_map(|x| (0..self.k()).map(move |y| (x, y)))
            .find(|&(x, y)| !law(x, y))
            .map(|(x, y)| format!("x={}, y={}", self.name(x), self.name(y)))
    }
}

fn prop(level: NegationClass, name: &'static str, witness: Option<String>) -> Property {
    Property {
        level,
        name,
        holds: witness.is_none(),
        witness,
    }
}

/// `join {x | y <= ~x}` for every `y`.
fn adjoint_table(m: &NegationModel) -> Vec<usize> {
    let l = m.algebra().lattice();
    (0..m.size())
        .map(|y| l.join_all((0..m.size()).filter(|&x| l.leq(y, m.neg(x)))))
        .collect()
}

/// Classifies `m` and evaluates every hierarchy law on it.
pub fn classify_negation(m: &NegationModel) -> Classification {
    use NegationClass::{Constructive, DeMorgan, General, Split};
    let c = Ctx {
        m,
        adj: adjoint_table(m),
    };
    let top = m.algebra().lattice().top();
    let bot = m.algebra().lattice().bot();

    let antitone = c.binary(|x, y| !c.leq(x, y) || c.leq(c.n(y), c.n(x)));
    let top_in_image = if (0..c.k()).any(|x| c.n(x) == top) {
        None
    } else {
        Some("1 is not a negation value".to_string())
    };
    let split = c.binary(|x, y| c.n(c.join(x, y)) == c.meet(c.n(x), c.n(y)));
    let neg_bot = if c.n(bot) == top {
        None
    } else {
        Some(format!("~0={}", c.name(c.n(bot))))
    };
    let constructive = c.binary(|x, y| c.n(c.meet(x, y)) == c.join(c.n(x), c.n(y)));
    let involutive = c.unary(|x| c.n(c.n(x)) == x);

    let class = negation_class(m);
    debug_assert_eq!(
        class >= General,
        antitone.is_none() && top_in_image.is_none()
    );

    let adj = &c.adj;
    let properties = vec![
        prop(General, "antitone", antitone),
        prop(General, "top in image", top_in_image),
        prop(
            General,
            "~(x|y) <= ~x & ~y",
            c.binary(|x, y| c.leq(c.n(c.join(x, y)), c.meet(c.n(x), c.n(y)))),
        ),
        prop(
            General,
            "~(x&y) >= ~x | ~y",
            c.binary(|x, y| c.leq(c.join(c.n(x), c.n(y)), c.n(c.meet(x, y)))),
        ),
        prop(General, "~0 = 1", neg_bot),
        prop(Split, "~(x|y) = ~x & ~y", split),
        prop(
            Split,
            "y <= ~x iff x <= ~'y",
            c.binary(|x, y| c.leq(y, c.n(x)) == c.leq(x, adj[y])),
        ),
        prop(Split, "x <= ~'~x", c.unary(|x| c.leq(x, adj[c.n(x)]))),
        prop(Split, "x <= ~~'x", c.unary(|x| c.leq(x, c.n(adj[x])))),
        prop(Constructive, "~(x&y) = ~x | ~y", constructive),
        prop(Constructive, "~' = ~", c.unary(|x| adj[x] == c.n(x))),
        prop(Constructive, "x <= ~~x", c.unary(|x| c.leq(x, c.n(c.n(x))))),
        prop(
            Constructive,
            "~(~x | ~y) >= x & y",
            c.binary(|x, y| c.leq(c.meet(x, y), c.n(c.join(c.n(x), c.n(y))))),
        ),
        prop(
            Constructive,
            "~(~x & ~y) >= x | y",
            c.binary(|x, y| c.leq(c.join(x, y), c.n(c.meet(c.n(x), c.n(y))))),
        ),
        prop(DeMorgan, "~~x = x", involutive),
        prop(
            DeMorgan,
            "~(~x | ~y) = x & y",
            c.binary(|x, y| c.n(c.join(c.n(x), c.n(y))) == c.meet(x, y)),
        ),
        prop(
            DeMorgan,
            "~(~x & ~y) = x | y",
            c.binary(|x, y| c.n(c.meet(c.n(x), c.n(y))) == c.join(x, y)),
        ),
        prop(
            DeMorgan,
            "x <= y iff ~y <= ~x",
            c.binary(|x, y| c.leq(x, y) == c.leq(c.n(y), c.n(x))),
        ),
    ];
    Classification {
        class,
        adjoint: c.adj,
        properties,
    }
}

/// The class alone, with early exits; used in enumeration loops.
pub fn negation_class(m: &NegationModel) -> NegationClass {
    use NegationClass::*;
    let l = m.algebra().lattice();
    let k = m.size();
    let n = |x: usize| m.neg(x);
    let pairs = || (0..k).flat_map(move |x| (0..k).map(move |y| (x, y)));
    if !(0..k).any(|x| n(x) == l.top()) || !pairs().all(|(x, y)| !l.leq(x, y) || l.leq(n(y), n(x))) {
        return None;
    }
    if n(l.bot()) != l.top() || !pairs().all(|(x, y)| n(l.join(x, y)) == l.meet(n(x), n(y))) {
        return General;
    }
    if !pairs().all(|(x, y)| n(l.meet(x, y)) == l.join(n(x), n(y))) {
        return Split;
    }
    if !(0..k).all(|x| n(n(x)) == x) {
        return Constructive;
    }
    DeMorgan
}

/// The right adjoint `~'y = join {x | y <= ~x}` of a split negation, checked
/// against the Galois law `y <= ~x iff x <= ~'y` and the unit laws. Absent
/// below `Split`.
pub fn right_adjoint(m: &NegationModel) -> Result<Option<Vec<usize>>, AlgebraError> {
    let cl = classify_negation(m);
    if cl.class < NegationClass::Split {
        return Ok(None);
    }
    for name in ["y <= ~x iff x <= ~'y", "x <= ~'~x", "x <= ~~'x"] {
        let p = cl.property(name).expect("law is reported");
        if !p.holds {
            return Err(AlgebraError::AdjointLawFailure(format!(
                "{name} at {}",
                p.witness.as_deref().unwrap_or("?")
            )));
        }
    }
    Ok(Some(cl.adjoint))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::algebra::{build_algebra_named, builtin_model};

    #[test]
    fn builtin_classes() {
        let class = |n: &str| classify_negation(&builtin_model(n).unwrap()).class;
        assert_eq!(class("B2_CLASSICAL"), NegationClass::DeMorgan);
        assert_eq!(class("B2_TRIV"), NegationClass::Constructive);
        assert_eq!(class("CHAIN3"), NegationClass::Constructive);
        assert_eq!(class("CHAIN3_M"), NegationClass::Constructive);
    }

    fn square(neg: Vec<usize>) -> NegationModel {
        let alg = build_algebra_named(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]).unwrap();
        NegationModel::new(Arc::new(alg), neg).unwrap()
    }

    #[test]
    fn general_but_not_split() {
        // ~a = ~b = 1 but ~(a|b) = ~1 = 0.
        let cl = classify_negation(&square(vec![3, 3, 3, 0]));
        assert_eq!(cl.class, NegationClass::General);
        assert!(!cl.property("~(x|y) = ~x & ~y").unwrap().holds);
        assert!(cl.violations().is_empty());
        assert_eq!(right_adjoint(&square(vec![3, 3, 3, 0])).unwrap(), None);
    }

    #[test]
    fn chain3_is_constructive() {
        let cl = classify_negation(&builtin_model("CHAIN3").unwrap());
        assert!(cl.violations().is_empty());
        assert_eq!(cl.adjoint, vec![2, 2, 1]);
    }

    #[test]
    fn adjoints() {
        let classical = builtin_model("B2_CLASSICAL").unwrap();
        assert_eq!(right_adjoint(&classical).unwrap(), Some(vec![1, 0]));
        let triv = builtin_model("B2_TRIV").unwrap();
        assert_eq!(right_adjoint(&triv).unwrap(), Some(vec![1, 1]));
    }

    #[test]
    fn constructive_chain_breaks_double_negation_law() {
        // Definition-level constructive, yet 1 is not below ~~1 = m.
        let cl = classify_negation(&builtin_model("CHAIN3_M").unwrap());
        assert_eq!(cl.class, NegationClass::Constructive);
        let names: Vec<&str> = cl.violations().iter().map(|p| p.name).collect();
        assert!(names.contains(&"x <= ~~x"));
        assert!(names.contains(&"~' = ~"));
    }

    #[test]
    fn class_names_round_trip() {
        for c in NegationClass::ALL {
            assert_eq!(NegationClass::from_name(c.name()), Some(c));
        }
        assert!(NegationClass::None < NegationClass::DeMorgan);
    }
}
