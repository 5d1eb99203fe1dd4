//! Finite distance sets `D ⊂ (0, ∞)` inside ℚ(√m).
//!
//! A [`DistanceSet`] keeps its elements sorted and deduplicated, and carries
//! the lattice `ℤ[D]` in canonical form: a basis embedded back into ℚ(√m)
//! together with integer coordinates for every element. A set is
//! commensurable exactly when that lattice has rank 1, in which case the set
//! also records the scaling `α` that turns it into coprime positive integers.

mod parse;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{hnf_big, ExactError, LatticeVector, QuadExt, Radicand, Rational};

pub use parse::{parse_expression, parse_list};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("distance #{index} equals {value}, but distances must be strictly positive")]
    NonPositive { index: usize, value: String },
    #[error("distance set is empty")]
    Empty,
    #[error("theorem family needs t >= 2, got {0}")]
    FamilyTooSmall(usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceSet {
    radicand: Radicand,
    elements: Vec<QuadExt>,
    basis: Vec<QuadExt>,
    lattice_coords: Vec<LatticeVector>,
    alpha: Option<QuadExt>,
    integer_form: Option<Vec<u64>>,
}

impl DistanceSet {
    pub fn parse(text: &str, radicand: Radicand) -> Result<Self, DistError> {
        parse_distance_set(text, radicand)
    }

    pub fn radicand(&self) -> Radicand {
        self.radicand
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> &[QuadExt] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_commensurable(&self) -> bool {
        self.rank() == 1
    }

    /// Basis of `ℤ[D]`, embedded in ℚ(√m). Every basis element is positive.
    pub fn basis(&self) -> &[QuadExt] {
        &self.basis
    }

    /// Coordinates of each element in [`Self::basis`]. In rank 1 the
    /// coefficient is stored in `a` and `b` is zero.
    pub fn lattice_coords(&self) -> &[LatticeVector] {
        &self.lattice_coords
    }

    /// Scaling with `α·D ⊂ ℤ` and `gcd(α·D) = 1`; present only in rank 1.
    pub fn alpha(&self) -> Option<&QuadExt> {
        self.alpha.as_ref()
    }

    /// `α·D` as coprime positive integers; present only in rank 1.
    pub fn integer_form(&self) -> Option<&[u64]> {
        self.integer_form.as_deref()
    }

    pub fn min(&self) -> &QuadExt {
        &self.elements[0]
    }

    pub fn max(&self) -> &QuadExt {
        self.elements.last().expect("nonempty")
    }

    /// Real value of the lattice point `(a, b)`.
    pub fn embed(&self, v: LatticeVector) -> QuadExt {
        let mut acc = self.basis[0].scale(&Rational::from_integer(v.a.into()));
        if let Some(second) = self.basis.get(1) {
            acc = &acc + &second.scale(&Rational::from_integer(v.b.into()));
        }
        acc
    }

    /// Multiplies every element by a positive rational.
    pub fn scaled(&self, factor: &Rational) -> Result<Self, DistError> {
        analyze_distance_set(self.elements.iter().map(|e| e.scale(factor)).collect())
    }
}

/// Canonical text, e.g. `1, s, 2, 1+s, 2s`. Parses back to an equal set.
impl fmt::Display for DistanceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

pub fn parse_distance_set(text: &str, radicand: Radicand) -> Result<DistanceSet, DistError> {
    let values = parse_list(text, radicand)?;
    for (index, v) in values.iter().enumerate() {
        if !v.is_positive() {
            return Err(DistError::NonPositive { index, value: v.to_string() });
        }
    }
    analyze_distance_set(values)
}

/// Sorts, deduplicates and computes the lattice data of a set of positive
/// distances.
pub fn analyze_distance_set(mut elements: Vec<QuadExt>) -> Result<DistanceSet, DistError> {
    if elements.is_empty() {
        return Err(DistError::Empty);
    }
    if let Some((index, v)) = elements.iter().enumerate().find(|(_, v)| !v.is_positive()) {
        return Err(DistError::NonPositive { index, value: v.to_string() });
    }
    let radicand = elements
        .iter()
        .find(|e| !e.is_rational())
        .map_or(elements[0].radicand(), |e| e.radicand());
    elements.sort();
    elements.dedup();

    // Clear denominators: every element becomes (A + B√m) / scale.
    let scale = elements.iter().fold(BigInt::one(), |acc, e| {
        acc.lcm(e.rat_part().denom()).lcm(e.quad_part().denom())
    });
    let scale_r = Rational::from_integer(scale.clone());
    let vectors: Vec<(BigInt, BigInt)> = elements
        .iter()
        .map(|e| {
            let p = e.rat_part() * &scale_r;
            let q = e.quad_part() * &scale_r;
            (p.to_integer(), q.to_integer())
        })
        .collect();
    let hnf = hnf_big(&vectors)?;

    let to_quad = |(a, b): &(BigInt, BigInt)| {
        QuadExt::new(
            Rational::new(a.clone(), scale.clone()),
            Rational::new(b.clone(), scale.clone()),
            radicand,
        )
    };
    let mut basis: Vec<QuadExt> = hnf.basis.iter().map(to_quad).collect();
    let mut coords = hnf.coords;
    if basis.len() == 1 && !basis[0].is_positive() {
        basis[0] = -&basis[0];
        for c in &mut coords {
            c.0 = -&c.0;
        }
    }
    let lattice_coords = coords
        .iter()
        .map(|(a, b)| {
            Ok(LatticeVector::new(
                a.to_i64().ok_or(ExactError::Overflow)?,
                b.to_i64().ok_or(ExactError::Overflow)?,
            ))
        })
        .collect::<Result<Vec<_>, ExactError>>()?;

    let (alpha, integer_form) = if basis.len() == 1 {
        let alpha = basis[0].recip()?;
        let ints = coords
            .iter()
            .map(|(a, _)| {
                debug_assert!(a.is_positive());
                a.to_u64().ok_or(ExactError::Overflow)
            })
            .collect::<Result<Vec<_>, _>>()?;
        (Some(alpha), Some(ints))
    } else {
        (None, None)
    };

    Ok(DistanceSet { radicand, elements, basis, lattice_coords, alpha, integer_form })
}

/// `{a + b√2 : a, b ≥ 0, 1 <= a + b <= t − 1}`, which has `(t−1)(t+2)/2`
/// elements.
pub fn generate_theorem_family(t: usize) -> Result<DistanceSet, DistError> {
    if t < 2 {
        return Err(DistError::FamilyTooSmall(t));
    }
    let n = t as i64 - 1;
    let elements = (0..=n)
        .flat_map(|a| (0..=n - a).map(move |b| (a, b)))
        .filter(|&(a, b)| a + b >= 1)
        .map(|(a, b)| QuadExt::from_ints(a, b, Radicand::TWO))
        .collect();
    analyze_distance_set(elements)
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("QuadExt", 2)?;
        st.serialize_field("exact", &self.to_string())?;
        st.serialize_field("radicand", &self.radicand().get())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            exact: String,
            radicand: u64,
        }
        let raw = Raw::deserialize(deserializer)?;
        let m = Radicand::new(raw.radicand).map_err(de::Error::custom)?;
        parse_expression(&raw.exact, m).map_err(de::Error::custom)
    }
}
