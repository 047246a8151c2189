//! Variation and parent-selection operators shared by both optimizers:
//! simulated binary crossover, bounded polynomial mutation, binary
//! tournament and uniform initialization, all over the unified `[0,1]^D`
//! space.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::individual::Individual;
use crate::math;
use crate::rng::RunRng;
use crate::space::UnifiedVector;

/// Parents closer than this per variable are copied instead of crossed.
const SBX_EPS: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatorParams {
    /// Crossover probability, applied once per parent pair.
    pub pc: f64,
    /// Per-variable mutation probability.
    pub pm: f64,
    /// Crossover distribution index.
    pub eta_c: f64,
    /// Mutation distribution index.
    pub eta_m: f64,
}

impl OperatorParams {
    /// The reference settings: `pc = 0.9`, `pm = 1/D` over the unified
    /// dimensionality, and distribution indices of 20.
    pub fn for_unified_dim(d: usize) -> Self {
        Self {
            pc: 0.9,
            pm: 1.0 / d as f64,
            eta_c: 20.0,
            eta_m: 20.0,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if !(0.0..=1.0).contains(&self.pc) {
            return Err(ParamError::Probability {
                name: "pc",
                value: self.pc,
            });
        }
        if !(0.0..=1.0).contains(&self.pm) {
            return Err(ParamError::Probability {
                name: "pm",
                value: self.pm,
            });
        }
        if !(self.eta_c > 0.0) {
            return Err(ParamError::DistributionIndex {
                name: "eta_c",
                value: self.eta_c,
            });
        }
        if !(self.eta_m > 0.0) {
            return Err(ParamError::DistributionIndex {
                name: "eta_m",
                value: self.eta_m,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ParamError {
    Probability { name: &'static str, value: f64 },
    DistributionIndex { name: &'static str, value: f64 },
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::Probability { name, value } => {
                write!(f, "{name} = {value} is not a probability")
            }
            ParamError::DistributionIndex { name, value } => {
                write!(f, "{name} = {value} must be positive")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ParamError {}

/// The SBX kernel: children of a variable pair for a given spread
/// factor. Symmetric about the parents' midpoint for every `beta`.
#[inline]
pub fn sbx_children(p1: f64, p2: f64, beta: f64) -> (f64, f64) {
    (
        0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2),
        0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2),
    )
}

fn sbx_beta(u: f64, eta_c: f64) -> f64 {
    if u <= 0.5 {
        math::powf(2.0 * u, 1.0 / (eta_c + 1.0))
    } else {
        math::powf(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta_c + 1.0))
    }
}

/// Simulated binary crossover.
///
/// With probability `pc` the pair is crossed: each variable is crossed
/// with probability 0.5 using a spread factor drawn from the eta_c-indexed
/// density, the low/high children are exchanged between the two offspring
/// with probability 0.5, and values are clamped into `[0, 1]`. With
/// probability `1 - pc` both children copy their parents.
pub fn sbx_crossover(
    p1: &UnifiedVector,
    p2: &UnifiedVector,
    params: &OperatorParams,
    rng: &mut RunRng,
) -> (UnifiedVector, UnifiedVector) {
    assert_eq!(p1.dim(), p2.dim(), "parents must share a dimensionality");
    let mut c1 = p1.clone();
    let mut c2 = p2.clone();
    if rng.next_f64() >= params.pc {
        return (c1, c2);
    }
    let a = c1.as_mut_slice();
    let b = c2.as_mut_slice();
    for i in 0..a.len() {
        if rng.next_f64() >= 0.5 {
            continue;
        }
        let (x, y) = (p1.as_slice()[i], p2.as_slice()[i]);
        if math::abs(x - y) <= SBX_EPS {
            continue;
        }
        let beta = sbx_beta(rng.next_f64(), params.eta_c);
        let (lo, hi) = sbx_children(x.min(y), x.max(y), beta);
        let (lo, hi) = (lo.clamp(0.0, 1.0), hi.clamp(0.0, 1.0));
        if rng.next_f64() < 0.5 {
            a[i] = lo;
            b[i] = hi;
        } else {
            a[i] = hi;
            b[i] = lo;
        }
    }
    (c1, c2)
}

fn polynomial_delta(y: f64, u: f64, eta_m: f64) -> f64 {
    let exponent = 1.0 / (eta_m + 1.0);
    if u < 0.5 {
        let inner = 2.0 * u + (1.0 - 2.0 * u) * math::powf(1.0 - y, eta_m + 1.0);
        math::powf(inner, exponent) - 1.0
    } else {
        let inner = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * math::powf(y, eta_m + 1.0);
        1.0 - math::powf(inner, exponent)
    }
}

pub(crate) fn mutate_in_place(x: &mut UnifiedVector, params: &OperatorParams, rng: &mut RunRng) {
    for v in x.as_mut_slice() {
        if rng.next_f64() < params.pm {
            let u = rng.next_f64();
            *v = (*v + polynomial_delta(*v, u, params.eta_m)).clamp(0.0, 1.0);
        }
    }
}

/// Bounded polynomial mutation over `[0, 1]` with index `eta_m`; each
/// variable is perturbed independently with probability `pm`.
pub fn polynomial_mutation(
    x: &UnifiedVector,
    params: &OperatorParams,
    rng: &mut RunRng,
) -> UnifiedVector {
    let mut out = x.clone();
    mutate_in_place(&mut out, params, rng);
    out
}

/// Binary tournament over indices `0..len`: two uniform draws, the one
/// ranked earlier by `cmp` wins, exact ties are broken by a fair coin.
pub fn binary_tournament(
    len: usize,
    rng: &mut RunRng,
    mut cmp: impl FnMut(usize, usize) -> Ordering,
) -> Result<usize, SelectionError> {
    if len == 0 {
        return Err(SelectionError::EmptyPopulation);
    }
    let i = rng.below(len);
    let j = rng.below(len);
    Ok(match cmp(i, j) {
        Ordering::Less => i,
        Ordering::Greater => j,
        Ordering::Equal => {
            if rng.next_f64() < 0.5 {
                i
            } else {
                j
            }
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelectionError {
    EmptyPopulation,
}

impl fmt::Display for SelectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectionError::EmptyPopulation => write!(f, "cannot select from an empty population"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SelectionError {}

/// `size` individuals with i.i.d. uniform genotypes and no objectives.
pub fn init_population(
    size: usize,
    dim: usize,
    task_count: usize,
    rng: &mut RunRng,
) -> Vec<Individual> {
    (0..size)
        .map(|_| {
            let values = (0..dim).map(|_| rng.next_f64()).collect();
            Individual::new(
                UnifiedVector::new(values).expect("draws lie in [0,1)"),
                task_count,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_stream;
    use alloc::vec;

    fn params(d: usize) -> OperatorParams {
        OperatorParams::for_unified_dim(d)
    }

    #[test]
    fn defaults_match_the_reference_settings() {
        let p = params(50);
        assert_eq!(p.pc, 0.9);
        assert_eq!(p.pm, 0.02);
        assert_eq!(p.eta_c, 20.0);
        assert_eq!(p.eta_m, 20.0);
        assert!(p.validate().is_ok());
    }

    #[test]
    fn unit_beta_reproduces_the_parents() {
        let (c1, c2) = sbx_children(0.3, 0.8, 1.0);
        assert_eq!((c1, c2), (0.3, 0.8));
    }

    #[test]
    fn kernel_preserves_the_midpoint_for_any_beta() {
        let mut rng = rng_stream(2, 0);
        for _ in 0..10_000 {
            let p1 = rng.next_f64();
            let p2 = rng.next_f64();
            let beta = sbx_beta(rng.next_f64(), 20.0);
            let (c1, c2) = sbx_children(p1, p2, beta);
            assert!(
                ((c1 + c2) - (p1 + p2)).abs() <= 1e-12,
                "midpoint drifted: {p1} {p2} beta {beta}"
            );
        }
    }

    #[test]
    fn identical_parents_make_identical_children() {
        let mut rng = rng_stream(3, 0);
        let p = UnifiedVector::new(vec![0.25; 10]).unwrap();
        for _ in 0..100 {
            let (c1, c2) = sbx_crossover(&p, &p, &params(10), &mut rng);
            assert_eq!(c1, p);
            assert_eq!(c2, p);
        }
    }

    #[test]
    fn crossover_children_stay_in_the_unit_box() {
        let mut rng = rng_stream(4, 0);
        let params = params(8);
        for _ in 0..2_000 {
            let a = UnifiedVector::new((0..8).map(|_| rng.next_f64()).collect()).unwrap();
            let b = UnifiedVector::new((0..8).map(|_| rng.next_f64()).collect()).unwrap();
            let (c1, c2) = sbx_crossover(&a, &b, &params, &mut rng);
            for v in c1.as_slice().iter().chain(c2.as_slice()) {
                assert!((0.0..=1.0).contains(v));
            }
        }
    }

    #[test]
    fn zero_mutation_probability_is_identity() {
        let mut rng = rng_stream(5, 0);
        let mut p = params(6);
        p.pm = 0.0;
        let x = UnifiedVector::new(vec![0.1, 0.9, 0.5, 0.3, 0.7, 0.0]).unwrap();
        assert_eq!(polynomial_mutation(&x, &p, &mut rng), x);
    }

    #[test]
    fn mutation_at_the_center_is_symmetric_and_bounded() {
        let mut rng = rng_stream(6, 0);
        let mut p = params(1);
        p.pm = 1.0;
        let x = UnifiedVector::new(vec![0.5]).unwrap();
        let mut sum = 0.0;
        const TRIALS: usize = 100_000;
        for _ in 0..TRIALS {
            let m = polynomial_mutation(&x, &p, &mut rng);
            let v = m.as_slice()[0];
            assert!((0.0..=1.0).contains(&v));
            sum += v - 0.5;
        }
        let mean = sum / TRIALS as f64;
        assert!(mean.abs() <= 0.01, "mean displacement {mean}");
    }

    #[test]
    fn mutation_kernel_attains_both_box_edges() {
        // u = 0 lands exactly on the lower bound; the largest u below 1
        // comes within rounding of the upper bound. Both have positive
        // probability under 53-bit uniform draws.
        for y in [0.1, 0.5, 0.9] {
            let down = polynomial_delta(y, 0.0, 20.0);
            assert!(
                (y + down).abs() <= 1e-12,
                "u=0 from y={y} gave {}",
                y + down
            );
        }
        // The upper edge needs y^(eta+1) to beat the 2^-52 floor of
        // 2(1-u), so it is reachable from the center outward.
        for y in [0.5, 0.9] {
            let up = polynomial_delta(y, 1.0 - f64::EPSILON / 2.0, 20.0);
            assert!(
                y + up > 1.0 - 1e-9,
                "largest u from y={y} gave {}",
                y + up
            );
        }
    }

    #[test]
    fn tournament_on_a_singleton_returns_it() {
        let mut rng = rng_stream(7, 0);
        let winner = binary_tournament(1, &mut rng, |_, _| Ordering::Equal).unwrap();
        assert_eq!(winner, 0);
    }

    #[test]
    fn tournament_prefers_the_better_key() {
        let mut rng = rng_stream(8, 0);
        let keys = [1usize, 0];
        for _ in 0..200 {
            let w = binary_tournament(2, &mut rng, |i, j| keys[i].cmp(&keys[j])).unwrap();
            // Index 1 has the smaller key, so it must win every mixed draw;
            // index 0 can only appear when drawn against itself.
            if w == 0 {
                continue;
            }
            assert_eq!(w, 1);
        }
    }

    #[test]
    fn tournament_is_uniform_on_equal_keys() {
        let mut rng = rng_stream(9, 0);
        let mut counts = [0usize; 4];
        const TRIALS: usize = 40_000;
        for _ in 0..TRIALS {
            counts[binary_tournament(4, &mut rng, |_, _| Ordering::Equal).unwrap()] += 1;
        }
        let expected = TRIALS as f64 / 4.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        // 3 degrees of freedom; 16.27 is the 0.1% critical value.
        assert!(chi2 < 16.27, "chi^2 = {chi2}, counts {counts:?}");
    }

    #[test]
    fn empty_population_is_a_selection_error() {
        let mut rng = rng_stream(10, 0);
        assert_eq!(
            binary_tournament(0, &mut rng, |_, _| Ordering::Equal),
            Err(SelectionError::EmptyPopulation)
        );
    }

    #[test]
    fn init_population_is_uniform_and_reproducible() {
        let a = init_population(100, 50, 1, &mut rng_stream(11, 0));
        let b = init_population(100, 50, 1, &mut rng_stream(11, 0));
        let mut sum = 0.0;
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.genotype, y.genotype);
            assert!(x.objectives[0].is_none());
            sum += x.genotype.as_slice().iter().sum::<f64>();
        }
        let mean = sum / (100.0 * 50.0);
        assert!((0.49..=0.51).contains(&mean), "component mean {mean}");
    }
}
