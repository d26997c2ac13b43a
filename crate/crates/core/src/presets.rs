//! Named forbidden-pattern sets.

use crate::composition::{closure, enumerate_omega, Composition, ReducedNormFilter, ThetaPoset};
use crate::error::{Error, Result};

pub const PRESET_NAMES: [&str; 4] = ["omega-ge2", "omega-ge3", "single-3-only", "extorsion"];

fn all_with(d: usize, filter: ReducedNormFilter) -> ThetaPoset {
    ThetaPoset::new(d, enumerate_omega(d, filter)).expect("enumerated compositions lie in Omega")
}

/// Every pattern of codimension at least 2.
pub fn omega_ge2(d: usize) -> ThetaPoset {
    all_with(d, ReducedNormFilter::AtLeast(2))
}

/// Every pattern of codimension at least 3.
pub fn omega_ge3(d: usize) -> ThetaPoset {
    all_with(d, ReducedNormFilter::AtLeast(3))
}

/// Closure of the patterns `(1^i, 3, 1^j)`; its codimension-2 slice is exactly those patterns.
pub fn single_three_only(d: usize) -> ThetaPoset {
    let seeds: Vec<Composition> = enumerate_omega(d, ReducedNormFilter::Eq(2))
        .into_iter()
        .filter(|c| c.as_single_three().is_some())
        .collect();
    closure(&seeds, d).expect("seeds lie in Omega")
}

/// The eight degree-6 seeds whose complement presentation has 2-torsion.
pub fn extorsion_seeds() -> Vec<Composition> {
    [
        &[3, 1][..],
        &[1, 3],
        &[1, 3, 1, 1],
        &[1, 1, 3, 1],
        &[2, 2, 1, 1],
        &[1, 2, 2, 1],
        &[1, 1, 2, 2],
        &[2, 1, 1, 2],
    ]
    .iter()
    .map(|p| Composition::new(p.to_vec()).expect("positive parts"))
    .collect()
}

/// Closure of [`extorsion_seeds`] in degree 6.
pub fn extorsion() -> ThetaPoset {
    closure(&extorsion_seeds(), 6).expect("seeds lie in Omega<6]")
}

/// Looks up a preset by name. `extorsion` is built in degree 6 and then stabilized to `d`.
pub fn preset(name: &str, d: usize) -> Result<ThetaPoset> {
    match name {
        "omega-ge2" => Ok(omega_ge2(d)),
        "omega-ge3" => Ok(omega_ge3(d)),
        "single-3-only" => Ok(single_three_only(d)),
        "extorsion" => {
            if d < 6 || d % 2 != 0 {
                return Err(Error::DegreeMismatch { from: 6, to: d });
            }
            closure(&extorsion_seeds(), d)
        }
        other => Err(Error::Parse(format!(
            "unknown preset {other:?}; expected one of {}",
            PRESET_NAMES.join(", ")
        ))),
    }
}
