//! Tietze simplification of presentations.
//!
//! The loop only uses three moves: drop an empty relator, kill a generator named
//! by a one-symbol relator, and identify two generators linked by a two-symbol
//! relator. Every step is recorded so the result can be reproduced by [`replay`].

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{Gamma, Presentation, Relator, Symbol, TaggedRelator};
use crate::word::{free_reduce, Sign};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// A one-symbol relator sets the generator to the identity.
    Eliminate { generator: Gamma },
    /// `eliminated` is replaced by `target` (or its inverse) everywhere.
    Identify { eliminated: Gamma, target: Gamma, inverted: bool },
    /// Removes the empty relator at `index`.
    DropTrivialRelator { index: usize },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Eliminate { generator } => write!(f, "eliminate({generator})"),
            Move::Identify { eliminated, target, inverted } => {
                let exp = if *inverted { "^-1" } else { "" };
                write!(f, "identify({eliminated}, {target}{exp})")
            }
            Move::DropTrivialRelator { index } => write!(f, "drop_trivial_relator({index})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplifiedPresentation {
    pub d: usize,
    pub generators: BTreeSet<Gamma>,
    /// Canonical relators, sorted by length and then lexicographically, without duplicates.
    pub relators: Vec<Relator>,
    pub log: Vec<Move>,
}

impl SimplifiedPresentation {
    pub fn to_presentation(&self) -> Presentation {
        Presentation {
            d: self.d,
            generators: self.generators.clone(),
            relators: self
                .relators
                .iter()
                .map(|r| TaggedRelator { symbols: r.clone(), provenance: None })
                .collect(),
        }
    }

    /// Generators and relators only; the log is ignored.
    pub fn same_group_data(&self, other: &SimplifiedPresentation) -> bool {
        self.generators == other.generators && self.relators == other.relators
    }
}

fn cancels(a: &Symbol, b: &Symbol) -> bool {
    a.is_inverse_of(b)
}

/// Free reduction followed by cyclic reduction.
pub fn cyclically_reduce(r: &Relator) -> Relator {
    let mut s = free_reduce(r.0.iter().copied(), cancels);
    let mut lo = 0;
    let mut hi = s.len();
    while hi - lo >= 2 && s[lo].is_inverse_of(&s[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    s.truncate(hi);
    s.drain(..lo);
    Relator(s)
}

fn inverse(r: &[Symbol]) -> Vec<Symbol> {
    r.iter().rev().map(|s| s.inverse()).collect()
}

fn lex_key(r: &[Symbol]) -> Vec<(Gamma, bool)> {
    r.iter().map(Symbol::key).collect()
}

/// The smallest rotation of the relator or of its inverse; positive symbols sort first.
pub fn canonical_relator(r: &Relator) -> Relator {
    let r = cyclically_reduce(r);
    let n = r.len();
    if n == 0 {
        return r;
    }
    let inv = inverse(&r.0);
    let mut best: Option<Vec<Symbol>> = None;
    for base in [&r.0, &inv] {
        for k in 0..n {
            let rot: Vec<Symbol> = base[k..].iter().chain(&base[..k]).copied().collect();
            if best.as_ref().map_or(true, |b| lex_key(&rot) < lex_key(b)) {
                best = Some(rot);
            }
        }
    }
    Relator(best.expect("nonempty relator has a rotation"))
}

/// Canonical relators sorted by `(length, lexicographic)` and deduplicated; empty ones vanish.
pub fn canonical_relators<'a>(rels: impl IntoIterator<Item = &'a Relator>) -> Vec<Relator> {
    let mut out: Vec<Relator> = rels
        .into_iter()
        .map(canonical_relator)
        .filter(|r| !r.is_empty())
        .collect();
    out.sort_by(|a, b| (a.len(), lex_key(&a.0)).cmp(&(b.len(), lex_key(&b.0))));
    out.dedup();
    out
}

struct State {
    generators: BTreeSet<Gamma>,
    relators: Vec<Relator>,
}

impl State {
    fn new(p: &Presentation) -> Self {
        let mut st = State {
            generators: p.generators.clone(),
            relators: p.relator_words().cloned().collect(),
        };
        st.normalize();
        st
    }

    fn normalize(&mut self) {
        for r in &mut self.relators {
            *r = cyclically_reduce(r);
        }
    }

    fn substitute(&mut self, f: impl Fn(Symbol) -> Option<Symbol>) {
        for r in &mut self.relators {
            r.0 = r.0.iter().filter_map(|&s| f(s)).collect();
        }
        self.normalize();
    }

    fn next_move(&self) -> Option<Move> {
        if let Some(index) = self.relators.iter().position(Relator::is_empty) {
            return Some(Move::DropTrivialRelator { index });
        }
        let single = self
            .relators
            .iter()
            .filter(|r| r.len() == 1)
            .map(|r| r.0[0].gen)
            .min();
        if let Some(generator) = single {
            return Some(Move::Eliminate { generator });
        }
        self.relators
            .iter()
            .filter(|r| r.len() == 2 && r.0[0].gen != r.0[1].gen)
            .map(|r| {
                let (a, b) = (r.0[0], r.0[1]);
                let (eliminated, target) = if a.gen > b.gen { (a.gen, b.gen) } else { (b.gen, a.gen) };
                (eliminated, target, a.sign == b.sign)
            })
            .min()
            .map(|(eliminated, target, inverted)| Move::Identify { eliminated, target, inverted })
    }

    fn apply(&mut self, m: &Move) -> Result<()> {
        match *m {
            Move::DropTrivialRelator { index } => {
                match self.relators.get(index) {
                    Some(r) if r.is_empty() => {}
                    _ => return Err(Error::InvalidMove(format!("no empty relator at index {index}"))),
                }
                self.relators.remove(index);
            }
            Move::Eliminate { generator } => {
                if !self.generators.remove(&generator) {
                    return Err(Error::InvalidMove(format!("{generator} is not a generator")));
                }
                self.substitute(|s| (s.gen != generator).then_some(s));
            }
            Move::Identify { eliminated, target, inverted } => {
                if eliminated == target || !self.generators.contains(&target) || !self.generators.remove(&eliminated) {
                    return Err(Error::InvalidMove(format!("cannot identify {eliminated} with {target}")));
                }
                self.substitute(|s| {
                    if s.gen != eliminated {
                        return Some(s);
                    }
                    let sign = if inverted { s.sign.flip() } else { s.sign };
                    Some(target.symbol(sign))
                });
            }
        }
        Ok(())
    }

    fn finish(self, d: usize, log: Vec<Move>) -> SimplifiedPresentation {
        SimplifiedPresentation {
            d,
            generators: self.generators,
            relators: canonical_relators(&self.relators),
            log,
        }
    }
}

/// Runs the move loop to its fixpoint. Deterministic: at each step an empty relator is
/// dropped first, then the smallest generator with a one-symbol relator is killed, then the
/// smallest generator that a two-symbol relator ties to a smaller one is identified.
/// Square relators `g g` are kept.
pub fn simplify(p: &Presentation) -> SimplifiedPresentation {
    let mut st = State::new(p);
    let mut log = Vec::new();
    while let Some(m) = st.next_move() {
        st.apply(&m).expect("moves chosen from the current state apply");
        log.push(m);
    }
    st.finish(p.d, log)
}

/// Applies `log` to `p` and canonicalizes, reproducing [`simplify`] when given its log.
pub fn replay(p: &Presentation, log: &[Move]) -> Result<SimplifiedPresentation> {
    let mut st = State::new(p);
    for m in log {
        st.apply(m)?;
    }
    Ok(st.finish(p.d, log.to_vec()))
}

/// The free rank when no relator survives; `None` makes no claim either way.
pub fn certify_free(s: &SimplifiedPresentation) -> Option<usize> {
    s.relators.is_empty().then_some(s.generators.len())
}

/// A relator `g^2` over one generator, in canonical form.
pub fn square(g: Gamma) -> Relator {
    Relator(vec![g.symbol(Sign::Plus), g.symbol(Sign::Plus)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::presentation;
    use crate::presets::{extorsion, omega_ge2, omega_ge3, single_three_only};

    fn sym(i: usize, j: usize, e: i32) -> Symbol {
        Symbol::try_from((i, j, e)).unwrap()
    }

    #[test]
    fn cyclic_reduction() {
        let r = Relator(vec![sym(1, 1, 1), sym(2, 0, 1), sym(2, 0, -1), sym(3, 1, 1), sym(1, 1, -1)]);
        assert_eq!(cyclically_reduce(&r), Relator(vec![sym(3, 1, 1)]));
        let r = Relator(vec![sym(1, 1, 1), sym(1, 1, -1)]);
        assert!(cyclically_reduce(&r).is_empty());
    }

    #[test]
    fn canonical_rotation() {
        let r = Relator(vec![sym(2, 0, -1), sym(1, 1, -1)]);
        assert_eq!(canonical_relator(&r), Relator(vec![sym(1, 1, 1), sym(2, 0, 1)]));
        let r = Relator(vec![sym(1, 1, -1), sym(1, 1, -1)]);
        assert_eq!(canonical_relator(&r), square(Gamma::new(1, 1)));
    }

    #[test]
    fn extorsion_leaves_square() {
        let s = simplify(&presentation(&extorsion()).unwrap());
        assert_eq!(s.generators, BTreeSet::from([Gamma::new(1, 1), Gamma::new(2, 2)]));
        assert_eq!(s.relators, vec![square(Gamma::new(1, 1))]);
        assert_eq!(certify_free(&s), None);
    }

    #[test]
    fn free_and_trivial_cases() {
        let s = simplify(&presentation(&omega_ge2(6)).unwrap());
        assert_eq!(certify_free(&s), Some(6));
        assert!(s.log.is_empty());
        let s = simplify(&presentation(&omega_ge3(6)).unwrap());
        assert!(s.generators.is_empty() && s.relators.is_empty());
        let s = simplify(&presentation(&single_three_only(6)).unwrap());
        assert_eq!(certify_free(&s), Some(1));
    }

    #[test]
    fn replay_reproduces() {
        let p = presentation(&extorsion()).unwrap();
        let s = simplify(&p);
        assert_eq!(replay(&p, &s.log).unwrap(), s);
        let again = simplify(&s.to_presentation());
        assert!(again.log.is_empty());
        assert!(again.same_group_data(&s));
    }

    #[test]
    fn replay_rejects_bad_moves() {
        let p = presentation(&extorsion()).unwrap();
        let bad = [Move::Eliminate { generator: Gamma::new(9, 9) }];
        assert!(matches!(replay(&p, &bad), Err(Error::InvalidMove(_))));
        let bad = [Move::DropTrivialRelator { index: 0 }];
        assert!(matches!(replay(&p, &bad), Err(Error::InvalidMove(_))));
    }

    #[test]
    fn move_display() {
        let m = Move::Identify { eliminated: Gamma::new(3, 1), target: Gamma::new(1, 1), inverted: true };
        assert_eq!(m.to_string(), "identify(gamma(3,1), gamma(1,1)^-1)");
    }
}
