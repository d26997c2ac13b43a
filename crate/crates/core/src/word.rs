//! Words over the signed wall alphabet.
//!
//! The letter `w(i,j)` names the wall `(1^i, 2, 1^j)`. Its `+` orientation
//! crosses from the cell with `i + j` simple real roots to the cell with
//! `i + j + 2`; `-` crosses back. Words are plain letter sequences; the degree
//! only enters when a word is validated, so one word can be checked against
//! several degrees.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::composition::Composition;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub i: usize,
    pub j: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(i: usize, j: usize, sign: Sign) -> Self {
        Letter { i, j, sign }
    }

    pub fn plus(i: usize, j: usize) -> Self {
        Letter::new(i, j, Sign::Plus)
    }

    pub fn minus(i: usize, j: usize) -> Self {
        Letter::new(i, j, Sign::Minus)
    }

    /// Number of ones in the wall pattern, i.e. the simple real roots on its lower side.
    pub fn ones(&self) -> usize {
        self.i + self.j
    }

    pub fn inverse(self) -> Letter {
        Letter { sign: self.sign.flip(), ..self }
    }

    pub fn is_inverse_of(&self, other: &Letter) -> bool {
        self.i == other.i && self.j == other.j && self.sign != other.sign
    }

    pub fn wall(&self) -> Composition {
        Composition::wall(self.i, self.j)
    }

    pub fn validate(&self, d: usize) -> Result<()> {
        if wall_index_valid(self.i, self.j, d) {
            Ok(())
        } else {
            Err(Error::InvalidLetter { i: self.i, j: self.j, d })
        }
    }

    /// Cell (number of simple real roots) the letter starts from.
    pub fn source(&self) -> usize {
        match self.sign {
            Sign::Plus => self.ones(),
            Sign::Minus => self.ones() + 2,
        }
    }

    pub fn target(&self) -> usize {
        match self.sign {
            Sign::Plus => self.ones() + 2,
            Sign::Minus => self.ones(),
        }
    }
}

/// `i + j <= d - 2` and `i + j = d (mod 2)`.
pub fn wall_index_valid(i: usize, j: usize, d: usize) -> bool {
    d >= 2 && i + j <= d - 2 && (i + j) % 2 == d % 2
}

/// Number of simple real roots of the base cell: 0 for even degree, 1 for odd.
pub fn base_cell(d: usize) -> usize {
    d % 2
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w({},{}){}", self.i, self.j, self.sign.symbol())
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a letter like w(1,2)+, got {s:?}"));
        let body = s.strip_prefix("w(").ok_or_else(bad)?;
        let (inner, sign) = body.split_once(')').ok_or_else(bad)?;
        let sign = match sign {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            _ => return Err(bad()),
        };
        let (i, j) = inner.split_once(',').ok_or_else(bad)?;
        let i = i.trim().parse().map_err(|_| bad())?;
        let j = j.trim().parse().map_err(|_| bad())?;
        Ok(Letter { i, j, sign })
    }
}

/// Cancels adjacent inverse pairs with a stack until none remain.
pub(crate) fn free_reduce<T: Copy>(
    letters: impl IntoIterator<Item = T>,
    cancels: impl Fn(&T, &T) -> bool,
) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for x in letters {
        match out.last() {
            Some(top) if cancels(top, &x) => {
                out.pop();
            }
            _ => out.push(x),
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, d: usize) -> Result<()> {
        self.0.iter().try_for_each(|l| l.validate(d))
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| !p[0].is_inverse_of(&p[1]))
    }

    pub fn reduce(&self) -> Word {
        Word(free_reduce(self.0.iter().copied(), Letter::is_inverse_of))
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Concatenates and freely reduces.
    pub fn concat(&self, other: &Word) -> Word {
        Word(free_reduce(
            self.0.iter().chain(other.0.iter()).copied(),
            Letter::is_inverse_of,
        ))
    }

    /// Replays the letters as a walk on the top cells starting from `start`.
    /// Returns the final cell, or `None` if some letter does not leave the current cell.
    pub fn walk_from(&self, start: usize) -> Option<usize> {
        self.0.iter().try_fold(start, |cell, l| (l.source() == cell).then(|| l.target()))
    }

    /// Admissibility: empty, or a closed walk from the base cell obeying the start/end
    /// letter conditions and the consecutive-letter rule.
    pub fn is_admissible(&self, d: usize) -> Result<bool> {
        self.validate(d)?;
        let (Some(first), Some(last)) = (self.0.first(), self.0.last()) else {
            return Ok(true);
        };
        let base = base_cell(d);
        if first.sign != Sign::Plus || first.ones() != base {
            return Ok(false);
        }
        if last.sign != Sign::Minus || last.ones() != base {
            return Ok(false);
        }
        Ok(self.0.windows(2).all(|p| consecutive_ok(&p[0], &p[1])))
    }
}

/// Equal numbers of ones need opposite signs; a step up by two needs `(+, +)`,
/// a step down by two needs `(-, -)`.
fn consecutive_ok(a: &Letter, b: &Letter) -> bool {
    let (x, y) = (a.ones(), b.ones());
    if x == y {
        a.sign != b.sign
    } else if y == x + 2 {
        a.sign == Sign::Plus && b.sign == Sign::Plus
    } else if x == y + 2 {
        a.sign == Sign::Minus && b.sign == Sign::Minus
    } else {
        false
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace().map(str::parse).collect::<Result<Vec<_>>>().map(Word)
    }
}

/// The canonical generator loop through the wall `w(i,j)`.
///
/// Climbs through the walls `w(0,p)` from the base cell, crosses `w(i,j)`
/// upwards, then descends through `w(0,q)` back to the base cell.
pub fn gamma(i: usize, j: usize, d: usize) -> Result<Word> {
    if !wall_index_valid(i, j, d) {
        return Err(Error::InvalidLetter { i, j, d });
    }
    let base = base_cell(d);
    let level = i + j;
    let mut letters: Vec<Letter> = (base..level).step_by(2).map(|p| Letter::plus(0, p)).collect();
    letters.push(Letter::plus(i, j));
    letters.extend((base..=level).rev().step_by(2).map(|q| Letter::minus(0, q)));
    Ok(Word(letters))
}
