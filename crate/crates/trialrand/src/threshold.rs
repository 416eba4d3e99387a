//! Threshold sampling without replacement.
//!
//! The generator keeps a survivor list `S` of the patient numbers not
//! yet assigned, initially `{1..N}` in increasing order. Each step
//! partitions `[0, 1)` into `‖S‖` equal bins with thresholds
//! `T_k = k/‖S‖`; a uniform draw landing in bin `k` selects the k-th
//! survivor, which moves from `S` to the tail of the assignment list
//! `L`. After `N` steps `L` is a uniformly distributed permutation of
//! `{1..N}`: every step draws uniformly among the survivors, which is
//! exactly sampling without replacement with the conditional
//! probabilities updated to `1/‖S‖`.

use crate::rng::{SeedPolicy, UniformSource};
use crate::{Error, Result};

/// Validated trial parameters: `N` patients split into `g` groups.
///
/// `g` must divide `N` exactly so every group ends up with `N/g`
/// patients; `N = g` (singleton groups) is allowed, `N = 0` is not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialConfig {
    patients: usize,
    groups: usize,
    seed_policy: SeedPolicy,
}

impl TrialConfig {
    pub fn new(patients: usize, groups: usize, seed_policy: SeedPolicy) -> Result<Self> {
        if patients == 0 {
            return Err(Error::ZeroPatients);
        }
        if groups == 0 {
            return Err(Error::ZeroGroups);
        }
        if patients % groups != 0 {
            return Err(Error::NonDivisible { patients, groups });
        }
        Ok(TrialConfig {
            patients,
            groups,
            seed_policy,
        })
    }

    pub fn patients(&self) -> usize {
        self.patients
    }

    pub fn groups(&self) -> usize {
        self.groups
    }

    /// Patients per group, `N/g`.
    pub fn group_size(&self) -> usize {
        self.patients / self.groups
    }

    pub fn seed_policy(&self) -> SeedPolicy {
        self.seed_policy
    }
}

/// The thresholds `T_0 = 0, T_1 = 1/n, ..., T_n = 1` for `n` survivors.
///
/// `T_0` is carried explicitly so the half-open bins
/// `[T_{k-1}, T_k)` for `k = 1..=n` cover `[0, 1)` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdSet {
    values: Vec<f64>,
}

impl ThresholdSet {
    /// Number of bins (survivors), `n`.
    pub fn survivor_count(&self) -> usize {
        self.values.len() - 1
    }

    /// All `n + 1` thresholds including `T_0 = 0` and `T_n = 1`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The bin upper bounds `T_1..=T_n`.
    pub fn upper_bounds(&self) -> &[f64] {
        &self.values[1..]
    }

    /// Selects the bin by scanning for the first `T_k` strictly above
    /// `u`. This is the literal selection rule; [`select_index`] is the
    /// closed form used by the generator, and the two are compared
    /// against each other in the test suites.
    pub fn select_by_scan(&self, u: f64) -> usize {
        debug_assert!((0.0..1.0).contains(&u));
        let n = self.survivor_count();
        for k in 1..=n {
            if u < self.values[k] {
                return k;
            }
        }
        // Unreachable for u < 1 since T_n = 1; keep the scan total anyway.
        n
    }
}

/// Thresholds for the given survivor count: `T_k = k / survivor_count`.
pub fn compute_thresholds(survivor_count: usize) -> Result<ThresholdSet> {
    if survivor_count == 0 {
        return Err(Error::ZeroSurvivors);
    }
    let n = survivor_count as f64;
    let values = (0..=survivor_count).map(|k| k as f64 / n).collect();
    Ok(ThresholdSet { values })
}

/// Selects the unique bin `k` in `1..=survivor_count` with
/// `(k-1)/n <= u < k/n`, via the closed form `floor(u*n) + 1`.
///
/// The clamp guards the measure-zero case where `u * n` rounds up to
/// `n` even though `u < 1`.
///
/// # Panics
///
/// Panics if `u` is outside `[0, 1)` or `survivor_count` is zero; both
/// are contract violations of the callers, not runtime conditions.
pub fn select_index(u: f64, survivor_count: usize) -> usize {
    assert!((0.0..1.0).contains(&u), "uniform draw {u} outside [0, 1)");
    assert!(survivor_count >= 1, "survivor count must be at least 1");
    let k = (u * survivor_count as f64) as usize + 1;
    k.min(survivor_count)
}

/// The patient numbers not yet assigned, in strictly increasing order.
///
/// Increasing order is what makes "the k-th survivor" unambiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurvivorList {
    numbers: Vec<usize>,
}

impl SurvivorList {
    /// The full list `{1, 2, ..., n}`.
    pub fn full(n: usize) -> Self {
        SurvivorList {
            numbers: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.numbers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numbers.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.numbers
    }

    /// Removes and returns the k-th survivor (1-based). Order is
    /// preserved, so the list stays strictly increasing.
    ///
    /// # Panics
    ///
    /// Panics if `k` is not in `1..=len`.
    pub fn remove_kth(&mut self, k: usize) -> usize {
        assert!(
            k >= 1 && k <= self.numbers.len(),
            "survivor index {k} out of 1..={}",
            self.numbers.len()
        );
        self.numbers.remove(k - 1)
    }
}

/// A completed assignment list: a permutation of `{1..N}` whose
/// position order later determines group membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentList {
    numbers: Vec<usize>,
}

impl AssignmentList {
    pub fn as_slice(&self) -> &[usize] {
        &self.numbers
    }

    pub fn len(&self) -> usize {
        self.numbers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numbers.is_empty()
    }

    /// Patient at 1-based position `i`.
    pub fn position(&self, i: usize) -> usize {
        self.numbers[i - 1]
    }

    /// True iff the list is exactly a permutation of `1..=n`.
    pub fn is_permutation_of(&self, n: usize) -> bool {
        if self.numbers.len() != n {
            return false;
        }
        let mut sorted = self.numbers.clone();
        sorted.sort_unstable();
        sorted.iter().copied().eq(1..=n)
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.numbers
    }
}

impl From<AssignmentList> for Vec<usize> {
    fn from(list: AssignmentList) -> Vec<usize> {
        list.numbers
    }
}

/// In-progress generation: the partial list and the survivors, with the
/// step counter implied by their lengths.
///
/// Invariant: partial and survivors are disjoint and their union is
/// `{1..N}`, so `step() + survivors().len() == N` at all times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorState {
    total: usize,
    survivors: SurvivorList,
    partial: Vec<usize>,
}

impl GeneratorState {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroPatients);
        }
        Ok(GeneratorState {
            total: n,
            survivors: SurvivorList::full(n),
            partial: Vec::with_capacity(n),
        })
    }

    /// Completed draws, `I` in `0..=N`.
    pub fn step(&self) -> usize {
        self.partial.len()
    }

    pub fn survivors(&self) -> &SurvivorList {
        &self.survivors
    }

    pub fn partial(&self) -> &[usize] {
        &self.partial
    }

    pub fn is_complete(&self) -> bool {
        self.survivors.is_empty()
    }

    /// One step: select a survivor from the uniform draw `u`, append it
    /// to the partial list, shrink the survivor list. Returns the
    /// selected patient number.
    pub fn draw_next(&mut self, u: f64) -> Result<usize> {
        if self.survivors.is_empty() {
            return Err(Error::EmptySurvivors);
        }
        let k = select_index(u, self.survivors.len());
        let patient = self.survivors.remove_kth(k);
        self.partial.push(patient);
        Ok(patient)
    }

    /// The completed list; errors if survivors remain.
    pub fn into_list(self) -> Result<AssignmentList> {
        if !self.is_complete() {
            return Err(Error::IncompleteList {
                len: self.partial.len(),
                expected: self.total,
            });
        }
        Ok(AssignmentList {
            numbers: self.partial,
        })
    }
}

/// Draws a full random permutation of `1..=n`, consuming exactly `n`
/// uniforms from the source.
pub fn generate_permutation(n: usize, source: &mut dyn UniformSource) -> Result<AssignmentList> {
    let mut state = GeneratorState::new(n)?;
    while !state.is_complete() {
        let u = source.next_uniform()?;
        state.draw_next(u)?;
    }
    state.into_list()
}

/// Generates the assignment list for a whole trial configuration.
pub fn generate_assignment_list(
    config: &TrialConfig,
    source: &mut dyn UniformSource,
) -> Result<AssignmentList> {
    generate_permutation(config.patients(), source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{make_source, ReplaySource};

    #[test]
    fn config_requires_divisibility() {
        assert!(TrialConfig::new(12, 2, SeedPolicy::Explicit(1)).is_ok());
        assert!(TrialConfig::new(12, 12, SeedPolicy::Explicit(1)).is_ok());
        assert!(matches!(
            TrialConfig::new(10, 3, SeedPolicy::Explicit(1)),
            Err(Error::NonDivisible {
                patients: 10,
                groups: 3
            })
        ));
        assert!(matches!(
            TrialConfig::new(0, 1, SeedPolicy::Explicit(1)),
            Err(Error::ZeroPatients)
        ));
        assert!(matches!(
            TrialConfig::new(4, 0, SeedPolicy::Explicit(1)),
            Err(Error::ZeroGroups)
        ));
    }

    #[test]
    fn thresholds_for_twelve_survivors() {
        let set = compute_thresholds(12).unwrap();
        assert_eq!(set.survivor_count(), 12);
        assert_eq!(set.values()[0], 0.0);
        assert_eq!(set.values()[12], 1.0);
        for (k, &t) in set.values().iter().enumerate() {
            assert!((t - k as f64 / 12.0).abs() < 1e-15);
        }
        // First two bins: 0.0833.., 0.1666..
        assert!((set.values()[1] - 0.0833333333).abs() < 1e-9);
        assert!((set.values()[2] - 0.1666666666).abs() < 1e-9);
    }

    #[test]
    fn thresholds_for_single_survivor() {
        let set = compute_thresholds(1).unwrap();
        assert_eq!(set.values(), &[0.0, 1.0]);
    }

    #[test]
    fn thresholds_for_nine_survivors() {
        let set = compute_thresholds(9).unwrap();
        let expected = [0.111111111, 0.222222222, 0.333333333];
        for (i, want) in expected.iter().enumerate() {
            assert!((set.upper_bounds()[i] - want).abs() < 1e-8);
        }
    }

    #[test]
    fn zero_survivors_is_an_error() {
        assert!(matches!(compute_thresholds(0), Err(Error::ZeroSurvivors)));
    }

    #[test]
    fn threshold_gaps_are_uniform() {
        for n in [1usize, 2, 3, 7, 12, 97, 1000, 9999] {
            let set = compute_thresholds(n).unwrap();
            let inv = 1.0 / n as f64;
            for pair in set.values().windows(2) {
                let gap = pair[1] - pair[0];
                assert!(
                    (gap - inv).abs() <= 2.0 * f64::EPSILON,
                    "gap {gap} != 1/{n}"
                );
            }
        }
    }

    #[test]
    fn select_index_known_cases() {
        assert_eq!(select_index(0.168502561, 12), 3);
        assert_eq!(select_index(0.756609143, 9), 7);
        assert_eq!(select_index(0.0, 12), 1);
        for u in [0.0, 0.25, 0.5, 0.999999] {
            assert_eq!(select_index(u, 1), 1);
        }
    }

    #[test]
    fn select_index_matches_scan_on_sample_grid() {
        for n in 1..=40usize {
            let set = compute_thresholds(n).unwrap();
            for i in 0..400 {
                // Offset keeps the probe points away from the bin edges,
                // where the two float routes may legitimately differ by
                // one ulp-scale rounding.
                let u = (i as f64 + 0.37) / 400.0;
                assert_eq!(
                    select_index(u, n),
                    set.select_by_scan(u),
                    "u = {u}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn draw_next_follows_worked_steps() {
        // Mid-generation step: 9 survivors, draw lands in the 7th bin.
        let mut state = GeneratorState::new(12).unwrap();
        for u in [0.168502561, 0.658033330, 0.093729293] {
            state.draw_next(u).unwrap();
        }
        assert_eq!(state.partial(), &[3, 9, 1]);
        assert_eq!(state.survivors().as_slice(), &[2, 4, 5, 6, 7, 8, 10, 11, 12]);

        let picked = state.draw_next(0.756609143).unwrap();
        assert_eq!(picked, 10);
        assert_eq!(state.partial(), &[3, 9, 1, 10]);
        assert_eq!(state.survivors().as_slice(), &[2, 4, 5, 6, 7, 8, 11, 12]);
    }

    #[test]
    fn last_survivor_is_forced() {
        let mut state = GeneratorState::new(2).unwrap();
        state.draw_next(0.9).unwrap(); // selects 2, leaving {1}
        let last = state.draw_next(0.73).unwrap();
        assert_eq!(last, 1);
        assert!(state.is_complete());
        assert!(matches!(state.draw_next(0.5), Err(Error::EmptySurvivors)));
    }

    #[test]
    fn zero_draw_selects_first_survivor() {
        let mut state = GeneratorState::new(8).unwrap();
        assert_eq!(state.draw_next(0.0).unwrap(), 1);
    }

    #[test]
    fn incomplete_state_refuses_to_finish() {
        let state = GeneratorState::new(3).unwrap();
        assert!(matches!(
            state.into_list(),
            Err(Error::IncompleteList {
                len: 0,
                expected: 3
            })
        ));
    }

    #[test]
    fn single_patient_list() {
        let mut source = make_source(SeedPolicy::Explicit(99));
        let config = TrialConfig::new(1, 1, SeedPolicy::Explicit(99)).unwrap();
        let list = generate_assignment_list(&config, &mut source).unwrap();
        assert_eq!(list.as_slice(), &[1]);
    }

    #[test]
    fn generation_consumes_exactly_n_draws() {
        let mut source = ReplaySource::new(&[0.1, 0.2, 0.3, 0.4, 0.99]).unwrap();
        let config = TrialConfig::new(5, 1, SeedPolicy::Explicit(0)).unwrap();
        let list = generate_assignment_list(&config, &mut source).unwrap();
        assert_eq!(source.consumed(), 5);
        assert!(list.is_permutation_of(5));
    }

    #[test]
    fn replay_exhaustion_propagates() {
        let mut source = ReplaySource::new(&[0.5, 0.5]).unwrap();
        let config = TrialConfig::new(3, 1, SeedPolicy::Explicit(0)).unwrap();
        assert!(matches!(
            generate_assignment_list(&config, &mut source),
            Err(Error::ReplayExhausted { provided: 2 })
        ));
    }

    #[test]
    fn generated_lists_are_permutations() {
        for seed in 0..50u64 {
            let mut source = make_source(SeedPolicy::Explicit(seed));
            let list = generate_permutation(40, &mut source).unwrap();
            assert!(list.is_permutation_of(40));
        }
    }

    #[test]
    fn partial_and_survivors_partition_everything() {
        let mut source = make_source(SeedPolicy::Explicit(5));
        let mut state = GeneratorState::new(30).unwrap();
        while !state.is_complete() {
            let mut all: Vec<usize> = state
                .partial()
                .iter()
                .chain(state.survivors().as_slice())
                .copied()
                .collect();
            all.sort_unstable();
            assert!(all.iter().copied().eq(1..=30));
            assert_eq!(state.step() + state.survivors().len(), 30);
            state.draw_next(source.next_uniform().unwrap()).unwrap();
        }
    }
}
