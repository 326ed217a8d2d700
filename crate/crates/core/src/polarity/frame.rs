use std::collections::BTreeSet;
use std::fmt;

use super::PolarityError;

/// Largest frame the bitmask representation supports.
pub const MAX_WORLDS: usize = 16;

/// A finite poset of worlds with a hereditary incompatibility relation.
/// Subsets of worlds are bitmasks, world `i` being bit `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolarityFrame {
    worlds: Vec<String>,
    leq: Vec<bool>,
    r: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lambda,
    Rho,
}

impl PolarityFrame {
    pub fn size(&self) -> usize {
        self.worlds.len()
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world(&self, i: usize) -> &str {
        &self.worlds[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == name)
    }

    pub fn leq(&self, u: usize, w: usize) -> bool {
        self.leq[u * self.size() + w]
    }

    pub(crate) fn leq_matrix(&self) -> &[bool] {
        &self.leq
    }

    pub fn related(&self, u: usize, w: usize) -> bool {
        self.r[u * self.size() + w]
    }

    /// Bitmask of all worlds.
    pub fn all(&self) -> u64 {
        (1u64 << self.size()) - 1
    }

    /// Order pairs `u < w`, row by row.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs(|u, w| u != w && self.leq(u, w))
    }

    pub fn r_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs(|u, w| self.related(u, w))
    }

    fn pairs(&self, keep: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
        let k = self.size();
        (0..k)
            .flat_map(|u| (0..k).map(move |w| (u, w)))
            .filter(|&(u, w)| keep(u, w))
            .collect()
    }

    pub fn is_upset(&self, u: u64) -> bool {
        let k = self.size();
        (0..k).all(|i| u & (1 << i) == 0 || (0..k).all(|j| !self.leq(i, j) || u & (1 << j) != 0))
    }

    /// `lambda U = {w | (u,w) in R for all u in U}`,
    /// `rho V = {w | (w,v) in R for all v in V}`.
    pub fn polar(&self, u: u64, side: Side) -> u64 {
        let k = self.size();
        (0..k)
            .filter(|&w| {
                (0..k)
                    .filter(|&x| u & (1 << x) != 0)
                    .all(|x| match side {
                        Side::Lambda => self.related(x, w),
                        Side::Rho => self.related(w, x),
                    })
            })
            .fold(0, |acc, w| acc | 1 << w)
    }

    pub fn lambda(&self, u: u64) -> u64 {
        self.polar(u, Side::Lambda)
    }

    pub fn rho(&self, u: u64) -> u64 {
        self.polar(u, Side::Rho)
    }

    /// `{a,b}` in world order.
    pub fn set_name(&self, u: u64) -> String {
        let names: Vec<&str> = (0..self.size())
            .filter(|&i| u & (1 << i) != 0)
            .map(|i| self.world(i))
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// Up-sets in size-then-lexicographic order.
    pub fn upsets(&self) -> Vec<u64> {
        crate::algebra::upsets(self.size(), &self.leq)
    }

    /// True iff `lambda U = rho U` for every up-set `U`.
    pub fn is_selfadjoint(&self) -> bool {
        self.upsets().into_iter().all(|u| self.lambda(u) == self.rho(u))
    }
}

impl fmt::Display for PolarityFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |pairs: Vec<(usize, usize)>| {
            let v: Vec<String> = pairs
                .iter()
                .map(|&(u, w)| format!("({},{})", self.world(u), self.world(w)))
                .collect();
            if v.is_empty() {
                "none".to_string()
            } else {
                v.join(" ")
            }
        };
        write!(
            f,
            "W={{{}}}; <: {}; R: {}",
            self.worlds.join(","),
            show(self.order_pairs()),
            show(self.r_pairs())
        )
    }
}

fn close_order(k: usize, order: &[(usize, usize)]) -> Vec<bool> {
    let mut leq = vec![false; k * k];
    for i in 0..k {
        leq[i * k + i] = true;
    }
    for &(a, b) in order {
        leq[a * k + b] = true;
    }
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
    leq
}

/// Builds a frame; `order` is closed reflexively and transitively, `r` must
/// already be hereditary.
pub fn build_frame(
    worlds: &[String],
    order: &[(usize, usize)],
    r: &[(usize, usize)],
) -> Result<PolarityFrame, PolarityError> {
    let k = worlds.len();
    if k == 0 || k > MAX_WORLDS {
        return Err(PolarityError::InvalidSpec(format!(
            "a frame needs between 1 and {MAX_WORLDS} worlds"
        )));
    }
    if let Some(&(a, b)) = order.iter().chain(r).find(|&&(a, b)| a >= k || b >= k) {
        return Err(PolarityError::InvalidSpec(format!("pair ({a}, {b}) out of range")));
    }
    let leq = close_order(k, order);
    for a in 0..k {
        for b in a + 1..k {
            if leq[a * k + b] && leq[b * k + a] {
                return Err(PolarityError::NotAPoset(format!(
                    "{} and {} are below each other",
                    worlds[a], worlds[b]
                )));
            }
        }
    }
    let mut rel = vec![false; k * k];
    for &(u, w) in r {
        rel[u * k + w] = true;
    }
    for &(u, w) in r {
        for u2 in (0..k).filter(|&x| leq[u * k + x]) {
            for w2 in (0..k).filter(|&x| leq[w * k + x]) {
                if !rel[u2 * k + w2] {
                    return Err(PolarityError::NotHereditary(format!(
                        "({},{}) in R and ({},{}) <= ({},{}) but ({},{}) not in R",
                        worlds[u], worlds[w], worlds[u], worlds[w], worlds[u2], worlds[w2], worlds[u2], worlds[w2]
                    )));
                }
            }
        }
    }
    Ok(PolarityFrame {
        worlds: worlds.to_vec(),
        leq,
        r: rel,
    })
}

/// Worlds and pairs given by name.
pub fn build_frame_named(
    worlds: &[&str],
    order: &[(&str, &str)],
    r: &[(&str, &str)],
) -> Result<PolarityFrame, PolarityError> {
    let owned: Vec<String> = worlds.iter().map(|s| s.to_string()).collect();
    let idx = |n: &str| {
        owned
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| PolarityError::InvalidSpec(format!("unknown world {n}")))
    };
    let pairs = |ps: &[(&str, &str)]| {
        ps.iter()
            .map(|(a, b)| Ok((idx(a)?, idx(b)?)))
            .collect::<Result<Vec<_>, PolarityError>>()
    };
    build_frame(&owned, &pairs(order)?, &pairs(r)?)
}

/// One law checked over a family of sets; `witness` names the first
/// counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCheck {
    pub law: &'static str,
    pub witness: Option<String>,
}

impl LawCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Galois connection, antitonicity, additivity and `lambda {} = W`, over all
/// subsets of `W` (or only up-sets with `hereditary_only`).
pub fn check_galois(frame: &PolarityFrame, hereditary_only: bool) -> Vec<LawCheck> {
    let sets: Vec<u64> = if hereditary_only {
        frame.upsets()
    } else {
        (0..=frame.all()).collect()
    };
    let sub = |a: u64, b: u64| a & !b == 0;
    let name = |u: u64| frame.set_name(u);
    let pair_law = |law: &'static str, ok: &dyn Fn(u64, u64) -> bool| LawCheck {
        law,
        witness: sets
            .iter()
            .flat_map(|&u| sets.iter().map(move |&v| (u, v)))
            .find(|&(u, v)| !ok(u, v))
            .map(|(u, v)| format!("U={}, V={}", name(u), name(v))),
    };
    vec![
        pair_law("V <= lambda U iff U <= rho V", &|u, v| {
            sub(v, frame.lambda(u)) == sub(u, frame.rho(v))
        }),
        pair_law("lambda antitone", &|u, v| {
            !sub(u, v) || sub(frame.lambda(v), frame.lambda(u))
        }),
        pair_law("rho antitone", &|u, v| !sub(u, v) || sub(frame.rho(v), frame.rho(u))),
        pair_law("lambda(U|V) = lambda U & lambda V", &|u, v| {
            frame.lambda(u | v) == frame.lambda(u) & frame.lambda(v)
        }),
        LawCheck {
            law: "lambda {} = W",
            witness: (frame.lambda(0) != frame.all()).then(|| name(frame.lambda(0))),
        },
        LawCheck {
            law: "lambda preserves up-sets",
            witness: frame
                .upsets()
                .into_iter()
                .find(|&u| !frame.is_upset(frame.lambda(u)))
                .map(name),
        },
    ]
}

fn labelled_posets(k: usize) -> Vec<Vec<bool>> {
    let off: Vec<(usize, usize)> = (0..k)
        .flat_map(|a| (0..k).map(move |b| (a, b)))
        .filter(|(a, b)| a != b)
        .collect();
    let mut out = Vec::new();
    for bits in 0u64..(1 << off.len()) {
        let mut leq = vec![false; k * k];
        for i in 0..k {
            leq[i * k + i] = true;
        }
        for (i, &(a, b)) in off.iter().enumerate() {
            if bits & (1 << i) != 0 {
                leq[a * k + b] = true;
            }
        }
        let antisym = off.iter().all(|&(a, b)| !(leq[a * k + b] && leq[b * k + a]));
        let trans = (0..k).all(|a| {
            (0..k).all(|b| (0..k).all(|c| !(leq[a * k + b] && leq[b * k + c]) || leq[a * k + c]))
        });
        if antisym && trans {
            out.push(leq);
        }
    }
    out
}

fn hereditary_closure(k: usize, leq: &[bool], r: u64) -> u64 {
    let mut out = r;
    for u in 0..k {
        for w in 0..k {
            if r & (1 << (u * k + w)) != 0 {
                for u2 in (0..k).filter(|&x| leq[u * k + x]) {
                    for w2 in (0..k).filter(|&x| leq[w * k + x]) {
                        out |= 1 << (u2 * k + w2);
                    }
                }
            }
        }
    }
    out
}

/// Largest frame size [`enumerate_frames`] accepts.
pub const MAX_ENUM_WORLDS: usize = 4;

/// Every frame on worlds `a, b, ...` with 1 to `max_worlds` worlds: all
/// labelled partial orders and all hereditary relations, obtained by closing
/// each candidate relation under heredity and removing duplicates.
pub fn enumerate_frames(max_worlds: usize) -> Result<Vec<PolarityFrame>, PolarityError> {
    if max_worlds > MAX_ENUM_WORLDS {
        return Err(PolarityError::InvalidSpec(format!(
            "frame enumeration is limited to {MAX_ENUM_WORLDS} worlds"
        )));
    }
    let mut out = Vec::new();
    for k in 1..=max_worlds {
        let worlds: Vec<String> = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        for leq in labelled_posets(k) {
            let rs: BTreeSet<u64> = (0u64..(1 << (k * k)))
                .map(|r| hereditary_closure(k, &leq, r))
                .collect();
            for r in rs {
                let rel = (0..k * k).map(|i| r & (1 << i) != 0).collect();
                out.push(PolarityFrame {
                    worlds: worlds.clone(),
                    leq: leq.clone(),
                    r: rel,
                });
            }
        }
    }
    Ok(out)
}

/// Names of the compiled-in frames.
pub const BUILTIN_FRAMES: &[&str] = &["FRAME_FULL_R"];

/// `FRAME_FULL_R`: two incomparable worlds with `R = W x W`; its negation is
/// constantly `W`.
pub fn builtin_frame(name: &str) -> Result<PolarityFrame, PolarityError> {
    match name {
        "FRAME_FULL_R" => build_frame_named(
            &["a", "b"],
            &[],
            &[("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")],
        ),
        _ => Err(PolarityError::UnknownBuiltin(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heredity_is_checked() {
        assert!(build_frame_named(&["a"], &[], &[]).is_ok());
        let err = build_frame_named(&["a", "b"], &[("a", "b")], &[("a", "a")]);
        assert!(matches!(err, Err(PolarityError::NotHereditary(_))));
        assert!(build_frame_named(&["a", "b"], &[("a", "b")], &[("a", "b"), ("b", "b")]).is_ok());
        let cyc = build_frame_named(&["a", "b"], &[("a", "b"), ("b", "a")], &[]);
        assert!(matches!(cyc, Err(PolarityError::NotAPoset(_))));
    }

    #[test]
    fn polar_examples() {
        let f = build_frame_named(&["a", "b"], &[], &[("a", "b")]).unwrap();
        let (a, b) = (0b01, 0b10);
        assert_eq!(f.lambda(0), f.all());
        assert_eq!(f.lambda(a), b);
        assert_eq!(f.lambda(a | b), 0);
        assert_eq!(f.rho(a), 0);
        assert!(!f.is_selfadjoint());
        let full = builtin_frame("FRAME_FULL_R").unwrap();
        assert!((0..=full.all()).all(|u| full.lambda(u) == full.all()));
        assert!(full.is_selfadjoint());
    }

    #[test]
    fn single_world_galois() {
        let f = build_frame_named(&["a"], &[], &[]).unwrap();
        assert_eq!(f.lambda(1), 0);
        assert_eq!(f.rho(1), 0);
        assert!(check_galois(&f, false).iter().all(LawCheck::holds));
        assert!(f.is_selfadjoint());
    }

    #[test]
    fn galois_laws_on_small_frames() {
        for f in enumerate_frames(3).unwrap() {
            for c in check_galois(&f, false) {
                assert!(c.holds(), "{f}: {} at {:?}", c.law, c.witness);
            }
        }
    }

    #[test]
    fn frame_counts() {
        let counts: Vec<usize> = (1..=3)
            .map(|k| enumerate_frames(k).unwrap().len())
            .collect();
        assert_eq!(counts[0], 2);
        assert!(counts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn enumeration_is_limited() {
        assert!(enumerate_frames(5).is_err());
    }
}
