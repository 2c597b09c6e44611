//! Transition belief matrix estimation and belief-level prediction.
//!
//! Given per-period mass functions `m_1..m_n` over the same anchored
//! propositions, the belief flowing from proposition `i` to `j` is
//!
//! ```text
//! P_ij = Σ_t m_t(i)·m_{t+1}(j) / Σ_k Σ_t m_t(i)·m_{t+1}(k),   t = 1..n-1
//! ```
//!
//! Because every `m_{t+1}` sums to one the denominator reduces to
//! `Σ_t m_t(i)`, which is what [`transition_belief_matrix`] computes. The
//! unreduced form is available as [`transition_belief_matrix_unreduced`].
//! The next period's mass function is `m_n · P`, and the forecast state is
//! the pignistic argmax of that.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::evidence::{
    argmax_state, betp, generate_bpa, AnchoredStateSpace, MassFunction, ProbabilityVector,
    Proposition,
};
use crate::interval::Interval;
use crate::matrix::{identity, uniform_row, vec_mat, Rows};
use crate::scalar::{sum, Scalar};

/// Per-period masses over a fixed proposition order, at least two periods.
#[derive(Debug, Clone, PartialEq)]
pub struct BpaSeries<T> {
    propositions: Vec<Proposition>,
    rows: Rows<T>,
}

impl<T: Scalar> BpaSeries<T> {
    /// Re-indexes externally supplied mass functions onto `propositions`.
    /// Mass placed on any other proposition is an error.
    pub fn from_mass_functions(
        propositions: Vec<Proposition>,
        entries: &[MassFunction<T>],
    ) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::InsufficientData {
                needed: 2,
                got: entries.len(),
            });
        }
        let rows = entries
            .iter()
            .map(|m| {
                if m.focal_elements().any(|(p, _)| !propositions.contains(&p)) {
                    return Err(Error::IndexMismatch);
                }
                Ok(m.masses_over(&propositions))
            })
            .collect::<Result<_>>()?;
        Ok(Self { propositions, rows })
    }

    pub fn propositions(&self) -> &[Proposition] {
        &self.propositions
    }

    /// One row per period, masses in proposition order.
    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Mass function of period `t` (zero-based).
    pub fn entry(&self, t: usize) -> MassFunction<T> {
        MassFunction::from_parts_unchecked(self.propositions.clone(), self.rows[t].clone())
    }

    pub fn last(&self) -> MassFunction<T> {
        self.entry(self.len() - 1)
    }
}

pub fn bpa_series<T: Scalar>(
    series: &[Interval<T>],
    space: &AnchoredStateSpace<T>,
) -> Result<BpaSeries<T>> {
    if series.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: series.len(),
        });
    }
    let rows = series
        .iter()
        .map(|obs| generate_bpa(obs, space).masses().to_vec())
        .collect();
    Ok(BpaSeries {
        propositions: space.propositions(),
        rows,
    })
}

/// Row-stochastic matrix of belief transfer between anchored propositions.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionBeliefMatrix<T> {
    propositions: Vec<Proposition>,
    rows: Rows<T>,
    fallback_rows: Vec<usize>,
}

impl<T: Scalar> TransitionBeliefMatrix<T> {
    pub fn propositions(&self) -> &[Proposition] {
        &self.propositions
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

    /// Source propositions that never carried mass before the last period.
    /// Their rows were set to uniform; callers should surface a warning.
    pub fn fallback_rows(&self) -> &[usize] {
        &self.fallback_rows
    }

    pub fn identity(propositions: Vec<Proposition>) -> Self {
        let rows = identity(propositions.len());
        Self {
            propositions,
            rows,
            fallback_rows: Vec::new(),
        }
    }

    /// `P^k`.
    pub fn power(&self, k: u32) -> Self {
        let mut rows = identity(self.size());
        for _ in 0..k {
            rows = rows.iter().map(|r| vec_mat(r, &self.rows)).collect();
        }
        Self {
            propositions: self.propositions.clone(),
            rows,
            fallback_rows: Vec::new(),
        }
    }
}

fn estimate<T: Scalar>(
    b: &BpaSeries<T>,
    denominator: impl Fn(usize, &Rows<T>) -> T,
) -> TransitionBeliefMatrix<T> {
    let k = b.propositions.len();
    let pairs = || b.rows.windows(2);
    let mut fallback_rows = Vec::new();
    let rows = (0..k)
        .map(|i| {
            let numerators: Vec<T> = (0..k)
                .map(|j| sum(pairs().map(|w| w[0][i].clone() * w[1][j].clone())))
                .collect();
            let denom = denominator(i, &b.rows);
            if denom.is_zero() {
                fallback_rows.push(i);
                return uniform_row(k);
            }
            numerators.into_iter().map(|x| x / denom.clone()).collect()
        })
        .collect();
    TransitionBeliefMatrix {
        propositions: b.propositions.clone(),
        rows,
        fallback_rows,
    }
}

/// `P_ij = Σ_t m_t(i)·m_{t+1}(j) / Σ_t m_t(i)` over `t = 1..n-1`.
pub fn transition_belief_matrix<T: Scalar>(b: &BpaSeries<T>) -> TransitionBeliefMatrix<T> {
    estimate(b, |i, rows| {
        sum(rows[..rows.len() - 1].iter().map(|r| r[i].clone()))
    })
}

/// Same estimate with the full `Σ_k Σ_t m_t(i)·m_{t+1}(k)` denominator.
pub fn transition_belief_matrix_unreduced<T: Scalar>(
    b: &BpaSeries<T>,
) -> TransitionBeliefMatrix<T> {
    estimate(b, |i, rows| {
        sum(rows.windows(2).flat_map(|w| {
            let from = w[0][i].clone();
            w[1].iter().map(move |to| from.clone() * to.clone())
        }))
    })
}

/// `m' = last · P`.
pub fn predict_next<T: Scalar>(
    last: &MassFunction<T>,
    p: &TransitionBeliefMatrix<T>,
) -> Result<MassFunction<T>> {
    predict_steps(last, p, 1)
}

/// `m' = last · P^steps`.
pub fn predict_steps<T: Scalar>(
    last: &MassFunction<T>,
    p: &TransitionBeliefMatrix<T>,
    steps: u32,
) -> Result<MassFunction<T>> {
    if steps == 0 {
        return Err(Error::ZeroSteps);
    }
    if last.propositions() != p.propositions() {
        return Err(Error::IndexMismatch);
    }
    let mut masses = last.masses().to_vec();
    for _ in 0..steps {
        masses = vec_mat(&masses, &p.rows);
    }
    Ok(MassFunction::from_parts_unchecked(
        p.propositions.clone(),
        masses,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForecastResult<T> {
    pub bpas: BpaSeries<T>,
    pub matrix: TransitionBeliefMatrix<T>,
    pub next_bpa: MassFunction<T>,
    pub next_probs: ProbabilityVector<T>,
    pub predicted: String,
    /// Pignistic probability of `predicted`.
    pub confidence: T,
}

pub fn forecast<T: Scalar>(
    series: &[Interval<T>],
    space: &AnchoredStateSpace<T>,
) -> Result<ForecastResult<T>> {
    forecast_with_steps(series, space, 1)
}

/// Masses, matrix, `steps`-ahead prediction, pignistic transform, argmax.
pub fn forecast_with_steps<T: Scalar>(
    series: &[Interval<T>],
    space: &AnchoredStateSpace<T>,
    steps: u32,
) -> Result<ForecastResult<T>> {
    let bpas = bpa_series(series, space)?;
    let matrix = transition_belief_matrix(&bpas);
    let next_bpa = predict_steps(&bpas.last(), &matrix, steps)?;
    let next_probs = betp(&next_bpa, space.frame())?;
    let (label, confidence) = argmax_state(&next_probs);
    let predicted = label.to_string();
    Ok(ForecastResult {
        bpas,
        matrix,
        next_bpa,
        next_probs,
        predicted,
        confidence,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint<T> {
    pub value: T,
    pub result: ForecastResult<T>,
}

/// Grid `lo, lo+step, ...` up to `hi` inclusive.
pub fn sweep_grid<T: Scalar>(lo: &T, hi: &T, step: &T) -> Result<Vec<T>> {
    if *step <= T::zero() {
        return Err(Error::InvalidGrid(format!("step {step} must be positive")));
    }
    if lo > hi {
        return Err(Error::InvalidGrid(format!(
            "lower end {lo} exceeds upper end {hi}"
        )));
    }
    let span = ((hi.clone() - lo.clone()) / step.clone()).to_real();
    let points = (span + 1e-9).floor() as usize + 1;
    Ok((0..points)
        .map(|i| lo.clone() + step.clone() * T::from_int(i as i64))
        .collect())
}

pub fn sweep_last<T: Scalar>(
    series: &[Interval<T>],
    space: &AnchoredStateSpace<T>,
    lo: T,
    hi: T,
    step: T,
) -> Result<Vec<SweepPoint<T>>> {
    sweep_last_with_steps(series, space, lo, hi, step, 1)
}

/// Replaces the final observation with each crisp grid value and refits the
/// whole pipeline. Output is ordered by grid value.
pub fn sweep_last_with_steps<T: Scalar>(
    series: &[Interval<T>],
    space: &AnchoredStateSpace<T>,
    lo: T,
    hi: T,
    step: T,
    steps: u32,
) -> Result<Vec<SweepPoint<T>>> {
    if series.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: series.len(),
        });
    }
    let grid = sweep_grid(&lo, &hi, &step)?;
    grid.into_par_iter()
        .map(|value| {
            let mut modified = series.to_vec();
            *modified.last_mut().expect("non-empty series") = Interval::point(value.clone());
            let result = forecast_with_steps(&modified, space, steps)?;
            Ok(SweepPoint { value, result })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, reported};
    use crate::evidence::Frame;
    use crate::matrix::is_row_stochastic;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    fn within(actual: &[f64], expected: &[f64], tol: f64) -> bool {
        actual.len() == expected.len()
            && actual
                .iter()
                .zip(expected)
                .all(|(a, e)| (a - e).abs() <= tol)
    }

    #[test]
    fn mass_table_matches_reference() {
        let b = bpa_series(
            &corpus::interval_demand_series::<f64>(),
            &corpus::inventory_space(),
        )
        .unwrap();
        assert_eq!(b.len(), 20);
        for (t, expected) in reported::MASS_TABLE.iter().enumerate() {
            assert!(within(&b.rows()[t], expected, 2e-4), "period {}", t + 1);
        }
        assert!(within(&b.rows()[5], &reported::PERIOD6_MASSES, 2e-4));
    }

    #[test]
    fn identical_observations_give_identical_masses() {
        let space = corpus::inventory_space::<f64>();
        let b = bpa_series(&[Interval::point(170.0), Interval::point(170.0)], &space).unwrap();
        assert_eq!(b.rows()[0], b.rows()[1]);
    }

    #[test]
    fn short_series_is_rejected() {
        let space = corpus::inventory_space::<f64>();
        let err = Error::InsufficientData { needed: 2, got: 1 };
        assert_eq!(
            bpa_series(&[Interval::point(1.0)], &space),
            Err(err.clone())
        );
        assert_eq!(forecast(&[Interval::point(1.0)], &space), Err(err.clone()));
        assert_eq!(
            sweep_last(&[Interval::point(1.0)], &space, 0.0, 1.0, 1.0),
            Err(err)
        );
    }

    #[test]
    fn matrix_matches_reference() {
        let b = bpa_series(
            &corpus::interval_demand_series::<f64>(),
            &corpus::inventory_space(),
        )
        .unwrap();
        let p = transition_belief_matrix(&b);
        for (row, expected) in p
            .rows()
            .iter()
            .zip(reported::TRANSITION_BELIEF_MATRIX.iter())
        {
            assert!(within(row, expected, 5e-4), "{row:?}");
        }
        assert!((p.get(0, 1) - 0.4208).abs() < 5e-4);
        assert!(p.fallback_rows().is_empty());
    }

    #[test]
    fn two_period_rows_equal_successor() {
        let space = corpus::inventory_space::<Rational>();
        let series = [
            Interval::point(Rational::from_int(160)),
            Interval::point(Rational::from_int(190)),
        ];
        let b = bpa_series(&series, &space).unwrap();
        let p = transition_belief_matrix(&b);
        for row in p.rows() {
            assert_eq!(row, &b.rows()[1]);
        }
    }

    #[test]
    fn prediction_from_last_period_mass() {
        let frame = corpus::lmh_frame();
        let props: Vec<Proposition> = corpus::INVENTORY_ANCHORS
            .iter()
            .map(|(m, _, _)| frame.parse_proposition(m).unwrap())
            .collect();
        let rows: Vec<Vec<f64>> = reported::TRANSITION_BELIEF_MATRIX
            .iter()
            .map(|r| r.to_vec())
            .collect();
        let p = TransitionBeliefMatrix {
            propositions: props.clone(),
            rows,
            fallback_rows: vec![],
        };
        let last = MassFunction::new(props, reported::MASS_TABLE[19].to_vec()).unwrap();
        let next = predict_next(&last, &p).unwrap();
        assert!(
            within(next.masses(), &reported::NEXT_MASSES, 5e-4),
            "{:?}",
            next.masses()
        );
    }

    #[test]
    fn identity_and_uniform_predictions() {
        let space = corpus::inventory_space::<Rational>();
        let props = space.propositions();
        let b = bpa_series(&corpus::interval_demand_series::<Rational>(), &space).unwrap();
        let last = b.last();
        let id = TransitionBeliefMatrix::identity(props.clone());
        assert_eq!(predict_next(&last, &id).unwrap(), last);

        let p = transition_belief_matrix(&b);
        let fifth = Rational::new(1.into(), 5.into());
        let uniform = MassFunction::new(props.clone(), vec![fifth.clone(); 5]).unwrap();
        let next = predict_next(&uniform, &p).unwrap();
        for j in 0..5 {
            let column_mean = sum(p.rows().iter().map(|r| r[j].clone())) * fifth.clone();
            assert_eq!(next.masses()[j], column_mean);
        }
    }

    #[test]
    fn prediction_index_mismatch() {
        let space = corpus::inventory_space::<f64>();
        let p = TransitionBeliefMatrix::<f64>::identity(space.propositions());
        let reordered: Vec<Proposition> = space.propositions().into_iter().rev().collect();
        let last = MassFunction::new(reordered, vec![0.2; 5]).unwrap();
        assert_eq!(predict_next(&last, &p), Err(Error::IndexMismatch));
        assert_eq!(predict_steps(&last, &p, 0), Err(Error::ZeroSteps));
    }

    #[test]
    fn multi_step_matches_matrix_power() {
        let b = bpa_series(
            &corpus::interval_demand_series::<f64>(),
            &corpus::inventory_space(),
        )
        .unwrap();
        let p = transition_belief_matrix(&b);
        let three = predict_steps(&b.last(), &p, 3).unwrap();
        let via_power = predict_next(&b.last(), &p.power(3)).unwrap();
        assert!(within(three.masses(), via_power.masses(), 1e-12));
    }

    #[test]
    fn corpus_forecast() {
        let space = corpus::inventory_space::<f64>();
        let r = forecast(&corpus::interval_demand_series(), &space).unwrap();
        assert_eq!(r.predicted, "H");
        assert!((r.confidence - 0.4643).abs() < 5e-4);
        assert!(within(r.next_bpa.masses(), &reported::NEXT_MASSES, 5e-4));
        assert!(within(
            r.next_probs.probabilities(),
            &reported::NEXT_BETP,
            5e-4
        ));
        assert_eq!(r.next_probs, betp(&r.next_bpa, space.frame()).unwrap());
    }

    #[test]
    fn forecast_with_crisp_193() {
        let mut series = corpus::interval_demand_series::<f64>();
        *series.last_mut().unwrap() = Interval::point(193.0);
        let r = forecast(&series, &corpus::inventory_space()).unwrap();
        assert_eq!(r.predicted, "M");
    }

    #[test]
    fn two_identical_crisp_periods() {
        let space = corpus::inventory_space::<f64>();
        let series = [Interval::point(180.0), Interval::point(180.0)];
        let r = forecast(&series, &space).unwrap();
        let direct = betp(&generate_bpa(&series[1], &space), space.frame()).unwrap();
        assert_eq!(r.predicted, argmax_state(&direct).0);
    }

    #[test]
    fn sweep_switches_state_between_195_and_196() {
        let points = sweep_last(
            &corpus::interval_demand_series::<f64>(),
            &corpus::inventory_space(),
            193.0,
            202.0,
            1.0,
        )
        .unwrap();
        assert_eq!(points.len(), 10);
        for p in &points {
            let expected = if p.value <= 195.0 { "M" } else { "H" };
            assert_eq!(p.result.predicted, expected, "at {}", p.value);
        }
        // Points 194..=202 agree with the four-decimal reference figures.
        for (p, &(v, _, prob)) in points.iter().zip(reported::SWEEP.iter()).skip(1) {
            assert_eq!(p.value, v as f64);
            assert!((p.result.confidence - prob).abs() < 1e-3, "at {v}");
        }
        let main = forecast(
            &corpus::interval_demand_series::<f64>(),
            &corpus::inventory_space(),
        )
        .unwrap();
        assert_eq!(points[7].result, main);
    }

    /// Brute-force: every state probability on a fine grid moves by < 0.05
    /// between neighbours.
    #[test]
    fn sweep_is_smooth() {
        let points = sweep_last(
            &corpus::interval_demand_series::<f64>(),
            &corpus::inventory_space(),
            190.0,
            210.0,
            0.5,
        )
        .unwrap();
        for w in points.windows(2) {
            let (a, b) = (
                w[0].result.next_probs.probabilities(),
                w[1].result.next_probs.probabilities(),
            );
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).abs() < 0.05);
            }
        }
    }

    #[test]
    fn sweep_grid_edges() {
        assert_eq!(sweep_grid(&1.0, &1.0, &1.0).unwrap(), vec![1.0]);
        assert_eq!(sweep_grid(&0.0, &1.0, &0.1).unwrap().len(), 11);
        assert!(matches!(
            sweep_grid(&2.0, &1.0, &1.0),
            Err(Error::InvalidGrid(_))
        ));
        assert!(matches!(
            sweep_grid(&0.0, &1.0, &0.0),
            Err(Error::InvalidGrid(_))
        ));
        let q = |n| Rational::from_int(n);
        assert_eq!(sweep_grid(&q(0), &q(3), &q(2)).unwrap(), vec![q(0), q(2)]);
    }

    #[test]
    fn external_series_zero_row_fallback() {
        let frame = Frame::new(["A", "B", "C"]).unwrap();
        let props: Vec<Proposition> = (0..3).map(|i| frame.singleton(i).unwrap()).collect();
        let m = |v: [f64; 3]| MassFunction::new(props.clone(), v.to_vec()).unwrap();
        let entries = [m([1.0, 0.0, 0.0]), m([0.5, 0.5, 0.0]), m([0.0, 0.0, 1.0])];
        let b = BpaSeries::from_mass_functions(props.clone(), &entries).unwrap();
        let p = transition_belief_matrix(&b);
        assert_eq!(p.fallback_rows(), &[2]);
        assert_eq!(p.rows()[2], vec![1.0 / 3.0; 3]);
        assert!(is_row_stochastic(p.rows()));
        assert_eq!(transition_belief_matrix_unreduced(&b).fallback_rows(), &[2]);
    }

    #[test]
    fn external_series_validation() {
        let frame = Frame::new(["A", "B"]).unwrap();
        let a = frame.singleton(0).unwrap();
        let b = frame.singleton(1).unwrap();
        let m = MassFunction::new(vec![a, b], vec![0.5, 0.5]).unwrap();
        assert!(BpaSeries::from_mass_functions(vec![a, b], std::slice::from_ref(&m)).is_err());
        assert_eq!(
            BpaSeries::from_mass_functions(vec![a], &[m.clone(), m]),
            Err(Error::IndexMismatch)
        );
    }

    #[test]
    fn deterministic_bitwise() {
        let a = forecast(
            &corpus::interval_demand_series::<f64>(),
            &corpus::inventory_space(),
        )
        .unwrap();
        let b = forecast(
            &corpus::interval_demand_series::<f64>(),
            &corpus::inventory_space(),
        )
        .unwrap();
        assert_eq!(a, b);
    }

    fn arb_series() -> impl Strategy<Value = BpaSeries<f64>> {
        (2usize..6, 2usize..15).prop_flat_map(|(k, n)| {
            proptest::collection::vec(proptest::collection::vec(0.001..1.0f64, k), n).prop_map(
                move |raw| {
                    let props: Vec<Proposition> = (0..k)
                        .map(|i| Proposition::from_indices(&[i]).unwrap())
                        .collect();
                    let rows = raw
                        .into_iter()
                        .map(|w| {
                            let s: f64 = w.iter().sum();
                            w.into_iter().map(|x| x / s).collect()
                        })
                        .collect();
                    BpaSeries {
                        propositions: props,
                        rows,
                    }
                },
            )
        })
    }

    proptest! {
        #[test]
        fn reduced_and_unreduced_agree(b in arb_series()) {
            let reduced = transition_belief_matrix(&b);
            let full = transition_belief_matrix_unreduced(&b);
            for (x, y) in reduced.rows().iter().flatten().zip(full.rows().iter().flatten()) {
                prop_assert!((x - y).abs() < 1e-12);
            }
            prop_assert!(is_row_stochastic(reduced.rows()));
        }

        #[test]
        fn rows_lie_in_successor_envelope(b in arb_series()) {
            let p = transition_belief_matrix(&b);
            let successors = &b.rows()[1..];
            for row in p.rows() {
                for (j, x) in row.iter().enumerate() {
                    let lo = successors.iter().map(|r| r[j]).fold(f64::INFINITY, f64::min);
                    let hi = successors.iter().map(|r| r[j]).fold(f64::NEG_INFINITY, f64::max);
                    prop_assert!(*x >= lo - 1e-12 && *x <= hi + 1e-12);
                }
            }
        }

        #[test]
        fn prediction_conserves_mass(b in arb_series(), steps in 1u32..4) {
            let p = transition_belief_matrix(&b);
            let next = predict_steps(&b.last(), &p, steps).unwrap();
            let total: f64 = next.masses().iter().sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
            prop_assert!(next.masses().iter().all(|&x| x >= 0.0));
        }
    }
}
