//! Graph families and the exact cycle spectra they demand.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::CycleSpectrum;

/// The three classified families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Exactly `r` cycles of every length `3..=v`.
    Pancyclic,
    /// Bipartite, even order, exactly `r` cycles of every even length `4..=v`.
    Bipancyclic,
    /// Bipartite, odd order, minimum degree 2, exactly `r` cycles of every
    /// even length `4..=v-1`.
    OddlyBipancyclic,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Pancyclic, Family::Bipancyclic, Family::OddlyBipancyclic];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Pancyclic => "pancyclic",
            Family::Bipancyclic => "bipancyclic",
            Family::OddlyBipancyclic => "oddly-bipancyclic",
        }
    }

    /// Whether graphs of this family carry an off-cycle hub vertex.
    pub fn has_hub(self) -> bool {
        self == Family::OddlyBipancyclic
    }

    /// True when odd cycle lengths are forbidden.
    pub fn is_bipartite(self) -> bool {
        self != Family::Pancyclic
    }

    /// Smallest order for which the family's spectrum is non-empty.
    pub fn min_order(self) -> usize {
        match self {
            Family::Pancyclic => 3,
            Family::Bipancyclic => 4,
            Family::OddlyBipancyclic => 5,
        }
    }

    /// Checks the order parity the family requires.
    pub fn order_parity_ok(self, order: usize) -> bool {
        match self {
            Family::Pancyclic => true,
            Family::Bipancyclic => order.is_multiple_of(2),
            Family::OddlyBipancyclic => order % 2 == 1,
        }
    }

    /// Length of the longest required cycle, which is the boundary cycle of
    /// every schema instantiation.
    pub fn boundary_length(self, order: usize) -> usize {
        match self {
            Family::OddlyBipancyclic => order - 1,
            _ => order,
        }
    }

    /// Cycle lengths that must each occur exactly `r` times at `order`.
    pub fn required_lengths(self, order: usize) -> impl Iterator<Item = usize> {
        let (lo, step) = match self {
            Family::Pancyclic => (3, 1),
            _ => (4, 2),
        };
        let hi = self.boundary_length(order);
        (lo..=hi).step_by(step)
    }

    /// Whether `len` is a length the family ever asks for (ignoring order).
    pub fn allows_length(self, len: usize) -> bool {
        match self {
            Family::Pancyclic => len >= 3,
            _ => len >= 4 && len.is_multiple_of(2),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = TargetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pancyclic" | "pan" | "upc" => Ok(Family::Pancyclic),
            "bipancyclic" | "bip" | "ubpc" => Ok(Family::Bipancyclic),
            "oddly-bipancyclic" | "oddly" | "obp" => Ok(Family::OddlyBipancyclic),
            _ => Err(TargetError::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TargetError {
    #[error("multiplicity r must be at least 1")]
    ZeroMultiplicity,
    #[error("{family} graphs cannot have order {order} (wrong parity)")]
    OrderParity { family: Family, order: usize },
    #[error("{family} graphs need order at least {min}, got {order}")]
    OrderTooSmall { family: Family, order: usize, min: usize },
    #[error("unknown family `{0}` (expected pancyclic, bipancyclic or oddly-bipancyclic)")]
    UnknownFamily(String),
}

/// The exact spectrum a `(family, r)` graph of the given order must have.
pub fn target_spectrum(family: Family, r: u32, order: usize) -> Result<CycleSpectrum, TargetError> {
    if r == 0 {
        return Err(TargetError::ZeroMultiplicity);
    }
    if !family.order_parity_ok(order) {
        return Err(TargetError::OrderParity { family, order });
    }
    if order < family.min_order() {
        return Err(TargetError::OrderTooSmall { family, order, min: family.min_order() });
    }
    Ok(CycleSpectrum::from_counts(family.required_lengths(order).map(|len| (len, u64::from(r)))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pancyclic_spectrum_covers_every_length() {
        let s = target_spectrum(Family::Pancyclic, 1, 5).unwrap();
        assert_eq!(s.to_vec(), vec![(3, 1), (4, 1), (5, 1)]);
    }

    #[test]
    fn oddly_spectrum_stops_below_order() {
        let s = target_spectrum(Family::OddlyBipancyclic, 3, 5).unwrap();
        assert_eq!(s.to_vec(), vec![(4, 3)]);
    }

    #[test]
    fn bipancyclic_spectrum_even_lengths() {
        let s = target_spectrum(Family::Bipancyclic, 2, 14).unwrap();
        assert_eq!(s.to_vec(), vec![(4, 2), (6, 2), (8, 2), (10, 2), (12, 2), (14, 2)]);
    }

    #[test]
    fn parity_mismatch_is_an_error() {
        assert_eq!(
            target_spectrum(Family::Bipancyclic, 1, 7),
            Err(TargetError::OrderParity { family: Family::Bipancyclic, order: 7 })
        );
        assert!(target_spectrum(Family::OddlyBipancyclic, 1, 8).is_err());
        assert_eq!(target_spectrum(Family::Pancyclic, 0, 5), Err(TargetError::ZeroMultiplicity));
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.as_str().parse::<Family>().unwrap(), f);
        }
    }
}
