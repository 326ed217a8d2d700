use super::AlgebraError;

/// A finite bounded lattice given by its order and operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<u8>,
    join: Vec<u8>,
    bot: usize,
    top: usize,
}

/// A finite distributive lattice with its relative pseudocomplement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeytingAlgebra {
    lattice: FiniteLattice,
    imp: Vec<u8>,
}

/// Largest carrier the tables support.
pub const MAX_ELEMENTS: usize = 64;

impl FiniteLattice {
    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size() + b] as usize
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size() + b] as usize
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Join of an arbitrary family (bottom for the empty one).
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    pub(crate) fn meet_table(&self) -> &[u8] {
        &self.meet
    }

    pub(crate) fn join_table(&self) -> &[u8] {
        &self.join
    }
}

impl HeytingAlgebra {
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    #[inline]
    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.size() + b] as usize
    }

    pub(crate) fn imp_table(&self) -> &[u8] {
        &self.imp
    }

    /// True when the elements form a chain.
    pub fn is_chain(&self) -> bool {
        let l = &self.lattice;
        (0..l.size()).all(|a| (0..l.size()).all(|b| l.leq(a, b) || l.leq(b, a)))
    }
}

fn glb_or_lub(
    k: usize,
    leq: &[bool],
    a: usize,
    b: usize,
    lower: bool,
) -> Option<usize> {
    let le = |x: usize, y: usize| leq[x * k + y];
    let bounds: Vec<usize> = (0..k)
        .filter(|&x| if lower { le(x, a) && le(x, b) } else { le(a, x) && le(b, x) })
        .collect();
    bounds.iter().copied().find(|&g| {
        bounds
            .iter()
            .all(|&x| if lower { le(x, g) } else { le(g, x) })
    })
}

/// Builds the Heyting algebra on `names` ordered by the reflexive-transitive
/// closure of `order` (pairs `(a, b)` meaning `a <= b`).
pub fn build_algebra(names: &[String], order: &[(usize, usize)]) -> Result<HeytingAlgebra, AlgebraError> {
    let k = names.len();
    if k == 0 {
        return Err(AlgebraError::NotALattice("the carrier is empty".into()));
    }
    if k > MAX_ELEMENTS {
        return Err(AlgebraError::InvalidSpec(format!(
            "at most {MAX_ELEMENTS} elements are supported"
        )));
    }
    let mut leq = vec![false; k * k];
    for i in 0..k {
        leq[i * k + i] = true;
    }
    for &(a, b) in order {
        if a >= k || b >= k {
            return Err(AlgebraError::InvalidSpec(format!("order pair ({a}, {b}) out of range")));
        }
        leq[a * k + b] = true;
    }
    // Warshall closure.
    for m in 0..k {
        for i in 0..k {
            if leq[i * k + m] {
                for j in 0..k {
                    if leq[m * k + j] {
                        leq[i * k + j] = true;
                    }
                }
            }
        }
    }
    for a in 0..k {
        for b in a + 1..k {
            if leq[a * k + b] && leq[b * k + a] {
                return Err(AlgebraError::NotAPoset(format!(
                    "{} and {} are below each other",
                    names[a], names[b]
                )));
            }
        }
    }
    from_order(names.to_vec(), leq)
}

/// Builds from a complete (already closed, antisymmetric) order matrix.
pub(crate) fn from_order(names: Vec<String>, leq: Vec<bool>) -> Result<HeytingAlgebra, AlgebraError> {
    let k = names.len();
    let mut meet = vec![0u8; k * k];
    let mut join = vec![0u8; k * k];
    for a in 0..k {
        for b in 0..k {
            let missing = |what: &str| {
                AlgebraError::NotALattice(format!("{} and {} have no {what}", names[a], names[b]))
            };
            meet[a * k + b] = glb_or_lub(k, &leq, a, b, true).ok_or_else(|| missing("meet"))? as u8;
            join[a * k + b] = glb_or_lub(k, &leq, a, b, false).ok_or_else(|| missing("join"))? as u8;
        }
    }
    let bot = (0..k).find(|&x| (0..k).all(|y| leq[x * k + y])).expect("finite lattice has a bottom");
    let top = (0..k).find(|&x| (0..k).all(|y| leq[y * k + x])).expect("finite lattice has a top");
    let lattice = FiniteLattice {
        names,
        leq,
        meet,
        join,
        bot,
        top,
    };
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let lhs = lattice.meet(a, lattice.join(b, c));
                let rhs = lattice.join(lattice.meet(a, b), lattice.meet(a, c));
                if lhs != rhs {
                    return Err(AlgebraError::NotDistributive(format!(
                        "{0} & ({1} | {2}) differs from ({0} & {1}) | ({0} & {2})",
                        lattice.name(a),
                        lattice.name(b),
                        lattice.name(c)
                    )));
                }
            }
        }
    }
    let mut imp = vec![0u8; k * k];
    for a in 0..k {
        for b in 0..k {
            let x = lattice.join_all((0..k).filter(|&x| lattice.leq(lattice.meet(x, a), b)));
            imp[a * k + b] = x as u8;
        }
    }
    let alg = HeytingAlgebra { lattice, imp };
    for x in 0..k {
        for a in 0..k {
            for b in 0..k {
                let l = &alg.lattice;
                if l.leq(l.meet(x, a), b) != l.leq(x, alg.imp(a, b)) {
                    return Err(AlgebraError::ResiduationFailure(format!(
                        "x={}, a={}, b={}",
                        l.name(x),
                        l.name(a),
                        l.name(b)
                    )));
                }
            }
        }
    }
    Ok(alg)
}

/// Names given as strings, order given by name pairs.
pub fn build_algebra_named(names: &[&str], order: &[(&str, &str)]) -> Result<HeytingAlgebra, AlgebraError> {
    let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let idx = |n: &str| {
        owned
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| AlgebraError::InvalidSpec(format!("unknown element {n}")))
    };
    let pairs = order
        .iter()
        .map(|(a, b)| Ok((idx(a)?, idx(b)?)))
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    build_algebra(&owned, &pairs)
}

/// Up-sets of a finite poset on `p` points, as bitmasks, ordered by size
/// and then lexicographically by their sorted member lists.
pub fn upsets(p: usize, leq: &[bool]) -> Vec<u64> {
    assert!(p < 64);
    let mut out: Vec<u64> = (0u64..(1u64 << p))
        .filter(|&u| {
            (0..p).all(|i| u & (1 << i) == 0 || (0..p).all(|j| !leq[i * p + j] || u & (1 << j) != 0))
        })
        .collect();
    out.sort_by_key(|&u| (u.count_ones(), members(u)));
    out
}

pub(crate) fn members(u: u64) -> Vec<u32> {
    (0..64).filter(|&i| u & (1u64 << i) != 0).collect()
}

/// The lattice of up-sets of a poset, ordered by inclusion.
pub fn upset_algebra_of(
    p: usize,
    leq: &[bool],
    name: impl Fn(u64) -> String,
) -> Result<(Vec<u64>, HeytingAlgebra), AlgebraError> {
    let sets = upsets(p, leq);
    if sets.len() > MAX_ELEMENTS {
        return Err(AlgebraError::InvalidSpec(format!(
            "{} up-sets exceed the {MAX_ELEMENTS}-element limit",
            sets.len()
        )));
    }
    let k = sets.len();
    let mut order = vec![false; k * k];
    for (i, &u) in sets.iter().enumerate() {
        for (j, &v) in sets.iter().enumerate() {
            order[i * k + j] = u & !v == 0;
        }
    }
    let names = sets.iter().map(|&u| name(u)).collect();
    Ok((sets.clone(), from_order(names, order)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(k: usize) -> HeytingAlgebra {
        let names: Vec<String> = (0..k).map(|i| i.to_string()).collect();
        let order: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
        build_algebra(&names, &order).unwrap()
    }

    #[test]
    fn two_chain_is_boolean() {
        let b = chain(2);
        assert_eq!(b.imp(1, 0), 0);
        assert_eq!((b.imp(0, 0), b.imp(0, 1), b.imp(1, 1)), (1, 1, 1));
    }

    #[test]
    fn three_chain_implication() {
        let c = build_algebra_named(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap();
        let (m, one) = (1, 2);
        assert_eq!(c.imp(one, m), m);
        assert_eq!(c.imp(m, 0), 0);
        assert_eq!(c.imp(m, m), one);
        assert!(c.is_chain());
    }

    #[test]
    fn n_poset_is_not_a_lattice() {
        let err = build_algebra_named(&["a", "b", "c", "d"], &[("a", "c"), ("b", "c"), ("b", "d")]);
        assert!(matches!(err, Err(AlgebraError::NotALattice(_))));
    }

    #[test]
    fn diamond_m3_is_not_distributive() {
        let err = build_algebra_named(
            &["0", "x", "y", "z", "1"],
            &[("0", "x"), ("0", "y"), ("0", "z"), ("x", "1"), ("y", "1"), ("z", "1")],
        );
        assert!(matches!(err, Err(AlgebraError::NotDistributive(_))));
    }

    #[test]
    fn cycle_is_not_a_poset() {
        let err = build_algebra_named(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(matches!(err, Err(AlgebraError::NotAPoset(_))));
    }

    #[test]
    fn upsets_of_two_chain_point_order() {
        // a <= b: up-sets {}, {b}, {a,b}.
        let leq = [true, true, false, true];
        assert_eq!(upsets(2, &leq), vec![0b00, 0b10, 0b11]);
        let (_, alg) = upset_algebra_of(2, &leq, |u| format!("{u:b}")).unwrap();
        assert!(alg.is_chain());
    }

    #[test]
    fn residuation_everywhere() {
        let c = chain(4);
        let l = c.lattice();
        for x in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    assert_eq!(l.leq(l.meet(x, a), b), l.leq(x, c.imp(a, b)));
                }
            }
        }
    }
}
