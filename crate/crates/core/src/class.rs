use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Worst-case runtime complexity class of a program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComplexityClass {
    #[serde(rename = "1")]
    O1,
    #[serde(rename = "logn")]
    OLogN,
    #[serde(rename = "n")]
    ON,
    #[serde(rename = "nlogn")]
    ONLogN,
    #[serde(rename = "n_square")]
    ONSquare,
}

impl ComplexityClass {
    pub const ALL: [ComplexityClass; 5] = [
        ComplexityClass::O1,
        ComplexityClass::OLogN,
        ComplexityClass::ON,
        ComplexityClass::ONLogN,
        ComplexityClass::ONSquare,
    ];

    /// Position in [`ComplexityClass::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Self> {
        Self::ALL.get(index).copied()
    }

    /// Serialized name: `1`, `logn`, `n`, `nlogn`, `n_square`.
    pub fn as_str(self) -> &'static str {
        match self {
            ComplexityClass::O1 => "1",
            ComplexityClass::OLogN => "logn",
            ComplexityClass::ON => "n",
            ComplexityClass::ONLogN => "nlogn",
            ComplexityClass::ONSquare => "n_square",
        }
    }

    /// Big-O notation, for display.
    pub fn big_o(self) -> &'static str {
        match self {
            ComplexityClass::O1 => "O(1)",
            ComplexityClass::OLogN => "O(logn)",
            ComplexityClass::ON => "O(n)",
            ComplexityClass::ONLogN => "O(nlogn)",
            ComplexityClass::ONSquare => "O(n^2)",
        }
    }
}

impl fmt::Display for ComplexityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown complexity label `{0}` (expected 1, logn, n, nlogn or n_square)")]
pub struct UnknownLabel(pub String);

impl FromStr for ComplexityClass {
    type Err = UnknownLabel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| UnknownLabel(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serialized_names_round_trip() {
        for c in ComplexityClass::ALL {
            assert_eq!(c.as_str().parse::<ComplexityClass>().unwrap(), c);
            assert_eq!(
                serde_json::to_string(&c).unwrap(),
                format!("\"{}\"", c.as_str())
            );
        }
        assert!("n_cube".parse::<ComplexityClass>().is_err());
    }
}
