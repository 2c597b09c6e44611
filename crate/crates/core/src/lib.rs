//! Belief Markov chain forecasting.
//!
//! Observations (crisp numbers or closed intervals) are scored against a set
//! of anchored propositions to produce Dempster-Shafer mass functions. A
//! transition belief matrix is estimated from consecutive mass functions and
//! used to push the final period one or more steps ahead. The pignistic
//! transform turns the predicted mass function into a probability over the
//! singleton states.
//!
//! A classical discrete-time Markov chain over crisp bins is provided as a
//! baseline in [`classical_dtmc`].
//!
//! All numeric code is generic over [`Scalar`], so the same pipeline runs on
//! `f64`, `f32` or exact [`Rational`] numbers.

pub mod belief_markov;
pub mod classical_dtmc;
pub mod corpus;
mod error;
pub mod evidence;
pub mod interval;
mod matrix;
mod scalar;

pub use belief_markov::{
    bpa_series, forecast, forecast_with_steps, predict_next, predict_steps, sweep_grid, sweep_last,
    sweep_last_with_steps, transition_belief_matrix, transition_belief_matrix_unreduced, BpaSeries,
    ForecastResult, SweepPoint, TransitionBeliefMatrix,
};
pub use classical_dtmc::{
    classify, count_transitions, predict, transition_matrix, BinSpec, CountMatrix, DtmcModel,
    StochasticMatrix,
};
pub use error::{Error, Result};
pub use evidence::{
    argmax_state, betp, generate_bpa, Anchor, AnchoredStateSpace, Frame, MassFunction,
    ProbabilityVector, Proposition,
};
pub use interval::{distance_sq, midpoint, similarity, width, DistanceVariant, Interval};
pub use scalar::{Rational, Scalar};

pub type Interval64 = Interval<f64>;
pub type Interval32 = Interval<f32>;
pub type IntervalQ = Interval<Rational>;

pub type MassFunction64 = MassFunction<f64>;
pub type MassFunctionQ = MassFunction<Rational>;

pub type AnchoredStateSpace64 = AnchoredStateSpace<f64>;
pub type AnchoredStateSpaceQ = AnchoredStateSpace<Rational>;

pub type ProbabilityVector64 = ProbabilityVector<f64>;
pub type TransitionBeliefMatrix64 = TransitionBeliefMatrix<f64>;
pub type ForecastResult64 = ForecastResult<f64>;

pub type BinSpec64 = BinSpec<f64>;
pub type StochasticMatrix64 = StochasticMatrix<f64>;
pub type StochasticMatrixQ = StochasticMatrix<Rational>;
