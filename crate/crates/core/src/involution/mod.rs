//! Sign-reversing involutions: ψ on the C family and θ on labeled pairs.

mod psi;
mod theta;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use psi::{psi, psi_landmarks, psi_orbits, CItem, OrbitTable, CState, PsiCase, PsiOp, PsiOutcome, PsiStep};
pub use theta::{
    bad_sequences, theta, theta_orbits, weighted_pairs, Label, LabeledPart, LabeledPartition, SequenceReport,
    SequenceVerdict, ThetaCase, ThetaOutcome, WeightedPair,
};

/// An integer extended by `-∞` and `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extended {
    NegInf,
    Finite(i64),
    PosInf,
}

impl Extended {
    pub fn finite(self) -> Option<i64> {
        match self {
            Extended::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl From<Option<u32>> for Extended {
    /// `None` maps to `-∞`, the convention for absent landmarks.
    fn from(v: Option<u32>) -> Self {
        v.map_or(Extended::NegInf, |x| Extended::Finite(i64::from(x)))
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> Ordering {
        fn rank(e: &Extended) -> (i8, i64) {
            match e {
                Extended::NegInf => (0, 0),
                Extended::Finite(v) => (1, *v),
                Extended::PosInf => (2, 0),
            }
        }
        rank(self).cmp(&rank(other))
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => f.write_str("-inf"),
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::PosInf => f.write_str("+inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => s.serialize_i64(*v),
            other => s.collect_str(other),
        }
    }
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(i64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(v) => Ok(Extended::Finite(v)),
            Raw::S(s) if s == "-inf" => Ok(Extended::NegInf),
            Raw::S(s) if s == "+inf" => Ok(Extended::PosInf),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad extended integer {s:?}"))),
        }
    }
}
