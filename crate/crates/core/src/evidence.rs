//! Frames of discernment, propositions, mass functions and the pignistic
//! transform.

use std::fmt;

use crate::error::{Error, Result};
use crate::interval::{similarity, DistanceVariant, Interval};
use crate::scalar::{sum, Scalar};

const MAX_FRAME: usize = 64;

/// Ordered, distinct singleton state names. Label order is the indexing
/// contract for propositions and probability vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    labels: Vec<String>,
}

impl Frame {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > MAX_FRAME {
            return Err(Error::FrameTooLarge(labels.len()));
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// The whole frame as a proposition (total ignorance).
    pub fn universe(&self) -> Proposition {
        let bits = if self.len() == MAX_FRAME {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        };
        Proposition(bits)
    }

    pub fn singleton(&self, index: usize) -> Result<Proposition> {
        if index >= self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: index + 1,
            });
        }
        Ok(Proposition(1 << index))
    }

    /// Builds a proposition from member labels.
    pub fn proposition<S: AsRef<str>>(&self, members: &[S]) -> Result<Proposition> {
        let mut bits = 0u64;
        for member in members {
            bits |= 1 << self.index_of(member.as_ref())?;
        }
        Proposition::from_bits(bits)
    }

    /// Parses comma-joined member labels, e.g. `L,M`.
    pub fn parse_proposition(&self, text: &str) -> Result<Proposition> {
        let members: Vec<&str> = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        self.proposition(&members)
    }

    pub fn contains(&self, prop: Proposition) -> bool {
        prop.is_subset_of(self.universe())
    }

    /// Member labels of `prop`, in frame order.
    pub fn members(&self, prop: Proposition) -> Vec<&str> {
        prop.indices().map(|i| self.label(i)).collect()
    }

    /// `{L,M}` style rendering.
    pub fn display(&self, prop: Proposition) -> String {
        format!("{{{}}}", self.members(prop).join(","))
    }
}

/// A non-empty subset of a frame, stored as a bitmask over label indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Proposition(u64);

impl Proposition {
    pub fn from_bits(bits: u64) -> Result<Self> {
        if bits == 0 {
            return Err(Error::EmptyProposition);
        }
        Ok(Self(bits))
    }

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &i in indices {
            if i >= MAX_FRAME {
                return Err(Error::FrameTooLarge(i + 1));
            }
            bits |= 1 << i;
        }
        Self::from_bits(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn cardinality(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_FRAME && self.0 & (1 << index) != 0
    }

    pub fn is_subset_of(self, other: Proposition) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }
}

/// A basic probability assignment over a fixed list of distinct propositions.
/// Propositions not listed carry zero mass and the empty set never appears.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction<T> {
    propositions: Vec<Proposition>,
    masses: Vec<T>,
}

impl<T: Scalar> MassFunction<T> {
    /// Validates non-negativity, distinct propositions and a total of one
    /// within [`Scalar::normalization_tolerance`].
    pub fn new(propositions: Vec<Proposition>, masses: Vec<T>) -> Result<Self> {
        if propositions.len() != masses.len() {
            return Err(Error::DimensionMismatch {
                expected: propositions.len(),
                got: masses.len(),
            });
        }
        if propositions.is_empty() {
            return Err(Error::InvalidMass("no propositions".into()));
        }
        for (i, p) in propositions.iter().enumerate() {
            if propositions[..i].contains(p) {
                return Err(Error::InvalidMass(format!(
                    "proposition with bits {:#b} listed twice",
                    p.bits()
                )));
            }
        }
        if let Some(m) = masses.iter().find(|m| **m < T::zero()) {
            return Err(Error::InvalidMass(format!("negative mass {m}")));
        }
        let total = sum(masses.iter().cloned());
        if !total.approx_eq(&T::one(), &T::normalization_tolerance()) {
            return Err(Error::InvalidMass(format!("masses sum to {total}, not 1")));
        }
        Ok(Self {
            propositions,
            masses,
        })
    }

    /// All mass on the whole frame.
    pub fn vacuous(frame: &Frame) -> Self {
        Self {
            propositions: vec![frame.universe()],
            masses: vec![T::one()],
        }
    }

    pub fn propositions(&self) -> &[Proposition] {
        &self.propositions
    }

    pub fn masses(&self) -> &[T] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn mass(&self, prop: Proposition) -> T {
        self.propositions
            .iter()
            .position(|&p| p == prop)
            .map_or_else(T::zero, |i| self.masses[i].clone())
    }

    /// Masses re-indexed onto `order`; propositions outside this function get zero.
    pub fn masses_over(&self, order: &[Proposition]) -> Vec<T> {
        order.iter().map(|&p| self.mass(p)).collect()
    }

    /// Propositions with strictly positive mass.
    pub fn focal_elements(&self) -> impl Iterator<Item = (Proposition, &T)> {
        self.propositions
            .iter()
            .copied()
            .zip(self.masses.iter())
            .filter(|(_, m)| **m > T::zero())
    }

    pub(crate) fn from_parts_unchecked(propositions: Vec<Proposition>, masses: Vec<T>) -> Self {
        Self {
            propositions,
            masses,
        }
    }
}

/// A proposition and the interval observations are scored against.
#[derive(Debug, Clone, PartialEq)]
pub struct Anchor<T> {
    pub proposition: Proposition,
    pub interval: Interval<T>,
}

/// The propositions that may receive mass, each bound to an anchor interval.
/// Anchor order fixes row and column order of every downstream matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AnchoredStateSpace<T> {
    frame: Frame,
    anchors: Vec<Anchor<T>>,
    variant: DistanceVariant,
}

impl<T: Scalar> AnchoredStateSpace<T> {
    pub fn new(frame: Frame, anchors: Vec<Anchor<T>>, variant: DistanceVariant) -> Result<Self> {
        if anchors.is_empty() {
            return Err(Error::NoAnchors);
        }
        for (i, anchor) in anchors.iter().enumerate() {
            if !frame.contains(anchor.proposition) {
                return Err(Error::UnknownLabel(format!(
                    "proposition bits {:#b} outside frame",
                    anchor.proposition.bits()
                )));
            }
            if anchors[..i]
                .iter()
                .any(|a| a.proposition == anchor.proposition)
            {
                return Err(Error::DuplicateProposition(
                    frame.display(anchor.proposition),
                ));
            }
        }
        Ok(Self {
            frame,
            anchors,
            variant,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn anchors(&self) -> &[Anchor<T>] {
        &self.anchors
    }

    pub fn variant(&self) -> DistanceVariant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.anchors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.anchors.is_empty()
    }

    pub fn propositions(&self) -> Vec<Proposition> {
        self.anchors.iter().map(|a| a.proposition).collect()
    }

    pub fn with_variant(mut self, variant: DistanceVariant) -> Self {
        self.variant = variant;
        self
    }

    pub fn generate_bpa(&self, obs: &Interval<T>) -> MassFunction<T> {
        generate_bpa(obs, self)
    }
}

/// Probability over the singletons of a frame, in frame order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector<T> {
    frame: Frame,
    probabilities: Vec<T>,
}

impl<T: Scalar> ProbabilityVector<T> {
    pub fn new(frame: Frame, probabilities: Vec<T>) -> Result<Self> {
        if probabilities.len() != frame.len() {
            return Err(Error::DimensionMismatch {
                expected: frame.len(),
                got: probabilities.len(),
            });
        }
        if let Some(p) = probabilities.iter().find(|p| **p < T::zero()) {
            return Err(Error::InvalidProbability(format!("negative entry {p}")));
        }
        let total = sum(probabilities.iter().cloned());
        if !total.approx_eq(&T::one(), &T::normalization_tolerance()) {
            return Err(Error::InvalidProbability(format!(
                "entries sum to {total}, not 1"
            )));
        }
        Ok(Self {
            frame,
            probabilities,
        })
    }

    /// All probability on the state at `index`.
    pub fn point_mass(frame: Frame, index: usize) -> Result<Self> {
        let mut probabilities = vec![T::zero(); frame.len()];
        *probabilities
            .get_mut(index)
            .ok_or(Error::DimensionMismatch {
                expected: frame.len(),
                got: index + 1,
            })? = T::one();
        Ok(Self {
            frame,
            probabilities,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn probabilities(&self) -> &[T] {
        &self.probabilities
    }

    pub fn get(&self, label: &str) -> Result<T> {
        Ok(self.probabilities[self.frame.index_of(label)?].clone())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &T)> {
        self.frame
            .labels()
            .iter()
            .map(String::as_str)
            .zip(self.probabilities.iter())
    }

    pub(crate) fn from_parts_unchecked(frame: Frame, probabilities: Vec<T>) -> Self {
        Self {
            frame,
            probabilities,
        }
    }
}

impl<T: Scalar> fmt::Display for ProbabilityVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(l, p)| format!("{l}: {p}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Scores `obs` against every anchor and normalizes the similarities into a
/// mass function over the anchored propositions.
pub fn generate_bpa<T: Scalar>(
    obs: &Interval<T>,
    space: &AnchoredStateSpace<T>,
) -> MassFunction<T> {
    let similarities: Vec<T> = space
        .anchors
        .iter()
        .map(|a| similarity(obs, &a.interval, space.variant))
        .collect();
    // Similarities are in (0, 1], so the total is strictly positive.
    let total = sum(similarities.iter().cloned());
    let masses = similarities
        .into_iter()
        .map(|s| s / total.clone())
        .collect();
    MassFunction::from_parts_unchecked(space.propositions(), masses)
}

/// Pignistic transform: each proposition's mass is split evenly among its members.
pub fn betp<T: Scalar>(m: &MassFunction<T>, frame: &Frame) -> Result<ProbabilityVector<T>> {
    let mut probabilities = vec![T::zero(); frame.len()];
    for (&prop, mass) in m.propositions.iter().zip(&m.masses) {
        if !frame.contains(prop) {
            return Err(Error::IndexMismatch);
        }
        let share = mass.clone() / T::from_int(prop.cardinality() as i64);
        for i in prop.indices() {
            probabilities[i] = probabilities[i].clone() + share.clone();
        }
    }
    Ok(ProbabilityVector::from_parts_unchecked(
        frame.clone(),
        probabilities,
    ))
}

/// Most probable state; ties go to the earliest label in frame order.
pub fn argmax_state<T: Scalar>(p: &ProbabilityVector<T>) -> (&str, T) {
    let mut best = 0;
    for (i, value) in p.probabilities.iter().enumerate().skip(1) {
        if *value > p.probabilities[best] {
            best = i;
        }
    }
    (p.frame.label(best), p.probabilities[best].clone())
}
