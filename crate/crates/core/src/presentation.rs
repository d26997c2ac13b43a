//! Presentations of the fundamental group of the complement of a closed pattern set.
//!
//! Generators are the loops `gamma(i,j)` with `i >= 1`; every codimension-2
//! pattern outside the forbidden set contributes one relator, read off from
//! the small loop around its cell. Symbols `gamma(0,j)` are trivial and are
//! dropped when a relator is built, unless the verbatim form is requested.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::composition::{closure, enumerate_omega, Composition, ReducedNormFilter, ThetaPoset};
use crate::error::{Error, Result};
use crate::word::{gamma, wall_index_valid, Sign, Word};

/// The generator `gamma(i,j)`. Ordered by level `i + j`, then by `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Gamma {
    pub i: usize,
    pub j: usize,
}

impl Gamma {
    pub fn new(i: usize, j: usize) -> Self {
        Gamma { i, j }
    }

    pub fn level(&self) -> usize {
        self.i + self.j
    }

    /// `gamma(0,j)` is the identity.
    pub fn is_dummy(&self) -> bool {
        self.i == 0
    }

    pub fn symbol(self, sign: Sign) -> Symbol {
        Symbol { gen: self, sign }
    }
}

impl Ord for Gamma {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.level(), self.i).cmp(&(other.level(), other.i))
    }
}

impl PartialOrd for Gamma {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<(usize, usize)> for Gamma {
    fn from((i, j): (usize, usize)) -> Self {
        Gamma { i, j }
    }
}

impl From<Gamma> for (usize, usize) {
    fn from(g: Gamma) -> Self {
        (g.i, g.j)
    }
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gamma({},{})", self.i, self.j)
    }
}

/// A generator raised to `+1` or `-1`. Serialized as `[i, j, exponent]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(usize, usize, i32)", into = "(usize, usize, i32)")]
pub struct Symbol {
    pub gen: Gamma,
    pub sign: Sign,
}

impl Symbol {
    pub fn inverse(self) -> Symbol {
        Symbol { gen: self.gen, sign: self.sign.flip() }
    }

    pub fn is_inverse_of(&self, other: &Symbol) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }

    pub fn exponent(&self) -> i32 {
        match self.sign {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// Sort key: generator order first, positive before negative.
    pub(crate) fn key(&self) -> (Gamma, bool) {
        (self.gen, self.sign == Sign::Minus)
    }
}

impl TryFrom<(usize, usize, i32)> for Symbol {
    type Error = Error;

    fn try_from((i, j, e): (usize, usize, i32)) -> Result<Self> {
        let sign = match e {
            1 => Sign::Plus,
            -1 => Sign::Minus,
            _ => return Err(Error::Parse(format!("relator exponents must be +1 or -1, got {e}"))),
        };
        Ok(Symbol { gen: Gamma { i, j }, sign })
    }
}

impl From<Symbol> for (usize, usize, i32) {
    fn from(s: Symbol) -> Self {
        (s.gen.i, s.gen.j, s.exponent())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "{}", self.gen),
            Sign::Minus => write!(f, "{}^-1", self.gen),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Relator(pub Vec<Symbol>);

impl Relator {
    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn elide_dummies(self) -> Relator {
        Relator(self.0.into_iter().filter(|s| !s.gen.is_dummy()).collect())
    }

    /// Substitutes every symbol by its generator word and freely reduces.
    pub fn expand(&self, d: usize) -> Result<Word> {
        self.0.iter().try_fold(Word::empty(), |acc, s| {
            let g = gamma(s.gen.i, s.gen.j, d)?;
            Ok(match s.sign {
                Sign::Plus => acc.concat(&g),
                Sign::Minus => acc.concat(&g.inverse()),
            })
        })
    }
}

impl fmt::Display for Relator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Which codimension-2 pattern produced a relator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Type3(Composition),
    Type22(Composition),
}

impl Provenance {
    pub fn pattern(&self) -> &Composition {
        match self {
            Provenance::Type3(c) | Provenance::Type22(c) => c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedRelator {
    pub symbols: Relator,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub d: usize,
    pub generators: BTreeSet<Gamma>,
    pub relators: Vec<TaggedRelator>,
}

impl Presentation {
    pub fn relator_words(&self) -> impl Iterator<Item = &Relator> {
        self.relators.iter().map(|r| &r.symbols)
    }

    /// Every relator symbol must name a declared generator.
    pub fn check(&self) -> Result<()> {
        for r in self.relator_words() {
            if let Some(s) = r.0.iter().find(|s| !self.generators.contains(&s.gen)) {
                return Err(Error::Parse(format!("relator uses undeclared generator {}", s.gen)));
            }
        }
        Ok(())
    }

    /// `<gamma(i,j) ...> | <relator; relator; ...>`
    pub fn to_text(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        let rels: Vec<String> = self.relator_words().map(|r| r.to_string()).collect();
        format!("<{}> | <{}>", gens.join(" "), rels.join("; "))
    }
}

/// All `(i, j)` with `i >= 1`, `i + j <= d - 2` and `i + j = d (mod 2)`.
pub fn generators(d: usize) -> BTreeSet<Gamma> {
    if d < 2 {
        return BTreeSet::new();
    }
    (0..=d - 2)
        .flat_map(|level| (1..=level).map(move |i| Gamma::new(i, level - i)))
        .filter(|g| wall_index_valid(g.i, g.j, d))
        .collect()
}

fn plus(i: usize, j: usize) -> Symbol {
    Gamma::new(i, j).symbol(Sign::Plus)
}

fn minus(i: usize, j: usize) -> Symbol {
    Gamma::new(i, j).symbol(Sign::Minus)
}

/// `gamma(i,j+1) gamma(i+1,j)^-1` for `(1^i, 3, 1^j)`, with `gamma(0,*)` kept.
pub fn relation_type3_verbatim(omega: &Composition) -> Result<Relator> {
    let (i, j) = omega
        .as_single_three()
        .ok_or_else(|| Error::PatternShape(omega.clone(), "one part 3, all others 1"))?;
    Ok(Relator(vec![plus(i, j + 1), minus(i + 1, j)]))
}

/// `gamma(i+j,l) gamma(i+j+2,l) gamma(i,j+l+2)^-1 gamma(i,j+l)^-1` for
/// `(1^i, 2, 1^j, 2, 1^l)`, with `gamma(0,*)` kept.
pub fn relation_type22_verbatim(omega: &Composition) -> Result<Relator> {
    let (i, j, l) = omega
        .as_double_two()
        .ok_or_else(|| Error::PatternShape(omega.clone(), "two parts 2, all others 1"))?;
    Ok(Relator(vec![
        plus(i + j, l),
        plus(i + j + 2, l),
        minus(i, j + l + 2),
        minus(i, j + l),
    ]))
}

pub fn relation_type3(omega: &Composition) -> Result<Relator> {
    relation_type3_verbatim(omega).map(Relator::elide_dummies)
}

pub fn relation_type22(omega: &Composition) -> Result<Relator> {
    relation_type22_verbatim(omega).map(Relator::elide_dummies)
}

/// Whether relators keep the trivial `gamma(0,*)` symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dummies {
    Elide,
    Keep,
}

fn relator_for(omega: &Composition, dummies: Dummies) -> Result<TaggedRelator> {
    let (symbols, provenance) = if omega.as_single_three().is_some() {
        (relation_type3_verbatim(omega)?, Provenance::Type3(omega.clone()))
    } else {
        (relation_type22_verbatim(omega)?, Provenance::Type22(omega.clone()))
    };
    let symbols = match dummies {
        Dummies::Elide => symbols.elide_dummies(),
        Dummies::Keep => symbols,
    };
    Ok(TaggedRelator { symbols, provenance: Some(provenance) })
}

/// The forbidden set must be closed and avoid every cell of codimension <= 1.
fn require_presentable(theta: &ThetaPoset) -> Result<()> {
    if theta.d() < 2 {
        return Err(Error::DegreeTooSmall(theta.d()));
    }
    theta.require_closed()?;
    if let Some(low) = theta.members().iter().find(|c| c.reduced_norm() <= 1) {
        return Err(Error::CodimensionTooLow(low.clone()));
    }
    Ok(())
}

pub fn presentation(theta: &ThetaPoset) -> Result<Presentation> {
    presentation_with(theta, Dummies::Elide)
}

/// Same as [`presentation`]; with [`Dummies::Keep`] the relators are printed exactly
/// as the four- and two-symbol formulas, mentioning undeclared `gamma(0,*)`.
pub fn presentation_with(theta: &ThetaPoset, dummies: Dummies) -> Result<Presentation> {
    require_presentable(theta)?;
    let (_, outside) = theta.split_eq2()?;
    let relators = outside
        .iter()
        .map(|omega| relator_for(omega, dummies))
        .collect::<Result<Vec<_>>>()?;
    Ok(Presentation { d: theta.d(), generators: generators(theta.d()), relators })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompactifiedPi1 {
    Trivial,
    InfiniteCyclic,
}

/// Fundamental group of the one-point compactification of the forbidden locus:
/// a circle exactly when the set is `{(d)}`, simply connected otherwise.
pub fn pi1_compactified(theta: &ThetaPoset) -> Result<CompactifiedPi1> {
    theta.require_closed()?;
    let point = Composition::new(vec![theta.d()])?;
    if theta.len() == 1 && theta.contains(&point) {
        Ok(CompactifiedPi1::InfiniteCyclic)
    } else {
        Ok(CompactifiedPi1::Trivial)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FreenessCase {
    /// Every `(1^i, 2, 1^j, 2, 1^l)` with `j > 0` is forbidden.
    #[serde(rename = "case_i")]
    CaseI,
    /// The forbidden codimension-2 patterns are exactly the single-3 patterns.
    #[serde(rename = "case_ii")]
    CaseII,
    /// No codimension-2 pattern is forbidden; the group is trivial.
    ShortcutGe3,
    Unclassified,
}

/// Checks the freeness criteria literally on the codimension-2 slice.
pub fn classify_freeness(theta: &ThetaPoset) -> Result<FreenessCase> {
    require_presentable(theta)?;
    let (inside, _) = theta.split_eq2()?;
    if inside.is_empty() {
        return Ok(FreenessCase::ShortcutGe3);
    }
    let eq2 = enumerate_omega(theta.d(), ReducedNormFilter::Eq(2));
    let case_ii = eq2
        .iter()
        .all(|c| inside.contains(c) == c.as_single_three().is_some());
    if case_ii {
        return Ok(FreenessCase::CaseII);
    }
    let case_i = eq2
        .iter()
        .filter(|c| matches!(c.as_double_two(), Some((_, j, _)) if j > 0))
        .all(|c| inside.contains(c));
    if case_i {
        return Ok(FreenessCase::CaseI);
    }
    Ok(FreenessCase::Unclassified)
}

/// The smallest closed set in `Omega<d_target]` containing the members of `theta`.
pub fn stabilize(theta: &ThetaPoset, d_target: usize) -> Result<ThetaPoset> {
    if d_target < theta.d() || d_target % 2 != theta.d() % 2 {
        return Err(Error::DegreeMismatch { from: theta.d(), to: d_target });
    }
    closure(theta.members(), d_target)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeProductSplit {
    /// Degree whose codimension-2 patterns are all forbidden.
    pub d_prime: usize,
    /// Generators of level `<= d' - 4` and relators of patterns with norm `< d'`;
    /// this is the presentation in degree `d' - 2`.
    pub low: Presentation,
    /// Generators of level `>= d' - 2` and relators of patterns with norm `> d'`.
    pub high: Presentation,
}

/// Degrees `4 <= d' < d` of the parity of `d` at which every codimension-2 pattern is forbidden.
pub fn split_degrees(theta: &ThetaPoset) -> Result<Vec<usize>> {
    require_presentable(theta)?;
    let (inside, _) = theta.split_eq2()?;
    let d = theta.d();
    let eq2 = enumerate_omega(d, ReducedNormFilter::Eq(2));
    Ok((4..d)
        .filter(|dp| dp % 2 == d % 2)
        .filter(|&dp| eq2.iter().filter(|c| c.norm() == dp).all(|c| inside.contains(c)))
        .collect())
}

/// Splits the presentation as a free product at the largest admissible `d'`.
pub fn free_product_split(theta: &ThetaPoset) -> Result<Option<FreeProductSplit>> {
    let Some(&d_prime) = split_degrees(theta)?.last() else {
        return Ok(None);
    };
    let full = presentation(theta)?;
    let (low_gens, high_gens): (BTreeSet<Gamma>, BTreeSet<Gamma>) =
        full.generators.iter().partition(|g| g.level() + 2 < d_prime);
    let (low_rels, high_rels): (Vec<TaggedRelator>, Vec<TaggedRelator>) = full
        .relators
        .into_iter()
        .partition(|r| r.provenance.as_ref().map_or(0, |p| p.pattern().norm()) < d_prime);
    Ok(Some(FreeProductSplit {
        d_prime,
        low: Presentation { d: d_prime - 2, generators: low_gens, relators: low_rels },
        high: Presentation { d: theta.d(), generators: high_gens, relators: high_rels },
    }))
}

/// Presentation for degree `d + 1` polynomials whose derivative avoids the patterns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalPresentation {
    pub polynomial_degree: usize,
    pub presentation: Presentation,
}

/// Taking the derivative is a trivial fibration with fibre a line, so the
/// presentation is the same as for the derivative's space.
pub fn critical_presentation(theta: &ThetaPoset) -> Result<CriticalPresentation> {
    Ok(CriticalPresentation {
        polynomial_degree: theta.d() + 1,
        presentation: presentation(theta)?,
    })
}
