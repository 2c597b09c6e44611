//! Classical discrete-time Markov chain over crisp bins.
//!
//! Each value is assigned to exactly one bin, transitions between adjacent
//! periods are counted and normalized into a maximum-likelihood transition
//! matrix. A value on a bin edge belongs wholly to one side, so a one-unit
//! change near an edge can swing the prediction arbitrarily far.

use crate::error::{Error, Result};
use crate::evidence::{Frame, ProbabilityVector};
use crate::matrix::{identity, is_row_stochastic, mat_mul, uniform_row, vec_mat, Rows};
use crate::scalar::Scalar;

/// Consecutive bins with labels. Bin 0 is `[e0, e1]`, bin `i > 0` is `(e_i, e_{i+1}]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinSpec<T> {
    edges: Vec<T>,
    frame: Frame,
}

impl<T: Scalar> BinSpec<T> {
    pub fn new(edges: Vec<T>, frame: Frame) -> Result<Self> {
        if edges.len() != frame.len() + 1 {
            return Err(Error::InvalidBins(format!(
                "{} edges cannot bound {} bins",
                edges.len(),
                frame.len()
            )));
        }
        if edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidBins(
                "edges must be strictly increasing".into(),
            ));
        }
        Ok(Self { edges, frame })
    }

    pub fn edges(&self) -> &[T] {
        &self.edges
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn len(&self) -> usize {
        self.frame.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frame.is_empty()
    }

    pub fn classify(&self, value: &T) -> Result<usize> {
        classify(value, self)
    }
}

pub fn classify<T: Scalar>(value: &T, bins: &BinSpec<T>) -> Result<usize> {
    let edges = &bins.edges;
    if *value < edges[0] || *value > edges[edges.len() - 1] {
        return Err(Error::OutOfRange(value.to_real()));
    }
    Ok(edges[1..]
        .iter()
        .position(|upper| value <= upper)
        .expect("value bounded by last edge"))
}

/// Transition counts `N_ij` between adjacent periods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMatrix {
    counts: Vec<Vec<u64>>,
}

impl CountMatrix {
    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn get(&self, from: usize, to: usize) -> u64 {
        self.counts[from][to]
    }

    pub fn size(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }
}

pub fn count_transitions(states: &[usize], k: usize) -> Result<CountMatrix> {
    if states.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: states.len(),
        });
    }
    if let Some(&bad) = states.iter().find(|&&s| s >= k) {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: bad + 1,
        });
    }
    let mut counts = vec![vec![0u64; k]; k];
    for pair in states.windows(2) {
        counts[pair[0]][pair[1]] += 1;
    }
    Ok(CountMatrix { counts })
}

/// Square row-stochastic matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrix<T> {
    rows: Rows<T>,
    fallback_rows: Vec<usize>,
}

impl<T: Scalar> StochasticMatrix<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        if !is_row_stochastic(&rows) {
            return Err(Error::InvalidProbability(
                "matrix is not square and row-stochastic".into(),
            ));
        }
        Ok(Self {
            rows,
            fallback_rows: Vec::new(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: identity(n),
            fallback_rows: Vec::new(),
        }
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn get(&self, from: usize, to: usize) -> &T {
        &self.rows[from][to]
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Rows that had no observed transitions and were set to uniform.
    pub fn fallback_rows(&self) -> &[usize] {
        &self.fallback_rows
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::DimensionMismatch {
                expected: self.size(),
                got: other.size(),
            });
        }
        Ok(Self {
            rows: mat_mul(&self.rows, &other.rows),
            fallback_rows: Vec::new(),
        })
    }

    /// `k`-step transition matrix, `P^k`.
    pub fn power(&self, k: u32) -> Self {
        let mut result = Self::identity(self.size());
        for _ in 0..k {
            result.rows = mat_mul(&result.rows, &self.rows);
        }
        result
    }
}

/// `P_ij = N_ij / Σ_j N_ij`; rows without transitions become uniform.
pub fn transition_matrix<T: Scalar>(c: &CountMatrix) -> StochasticMatrix<T> {
    let n = c.size();
    let mut fallback_rows = Vec::new();
    let rows = c
        .counts
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let total: u64 = row.iter().sum();
            if total == 0 {
                fallback_rows.push(i);
                return uniform_row(n);
            }
            let denom = T::from_int(total as i64);
            row.iter()
                .map(|&x| T::from_int(x as i64) / denom.clone())
                .collect()
        })
        .collect();
    StochasticMatrix {
        rows,
        fallback_rows,
    }
}

/// `current · P^steps`.
pub fn predict<T: Scalar>(
    current: &ProbabilityVector<T>,
    p: &StochasticMatrix<T>,
    steps: u32,
) -> Result<ProbabilityVector<T>> {
    if steps == 0 {
        return Err(Error::ZeroSteps);
    }
    if current.probabilities().len() != p.size() {
        return Err(Error::DimensionMismatch {
            expected: p.size(),
            got: current.probabilities().len(),
        });
    }
    let mut v = current.probabilities().to_vec();
    for _ in 0..steps {
        v = vec_mat(&v, &p.rows);
    }
    Ok(ProbabilityVector::from_parts_unchecked(
        current.frame().clone(),
        v,
    ))
}

/// A fitted baseline: classified states, counts, matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DtmcModel<T> {
    pub states: Vec<usize>,
    pub counts: CountMatrix,
    pub matrix: StochasticMatrix<T>,
    frame: Frame,
}

impl<T: Scalar> DtmcModel<T> {
    pub fn fit(values: &[T], bins: &BinSpec<T>) -> Result<Self> {
        let states = values
            .iter()
            .map(|v| classify(v, bins))
            .collect::<Result<Vec<_>>>()?;
        let counts = count_transitions(&states, bins.len())?;
        let matrix = transition_matrix(&counts);
        Ok(Self {
            states,
            counts,
            matrix,
            frame: bins.frame().clone(),
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn last_state(&self) -> usize {
        *self.states.last().expect("fit requires two values")
    }

    /// Distribution `steps` periods after the last observed one.
    pub fn forecast(&self, steps: u32) -> Result<ProbabilityVector<T>> {
        let start = ProbabilityVector::point_mass(self.frame.clone(), self.last_state())?;
        predict(&start, &self.matrix, steps)
    }
}
