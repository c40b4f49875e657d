//! Brute-force ground truth over the full 2^N amplitude space, used to
//! validate the point conversions and the symmetric operation action at
//! small N, plus seeded random state and operation generators.
//!
//! Basis convention: amplitude index bit 0 means the qubit is in `|1>`,
//! bit 1 means `|0>`, with qubit 0 on the most significant bit. The
//! number of zeros of a basis string is therefore the popcount of its
//! index.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::majorana::{binomial, points_to_dicke};
use crate::state::{
    DegeneracyConfiguration, DickeVector, LocalOperation, MajoranaDecomposition, SpinorPoint,
};

/// Cap on full-vector qubit counts; 2^14 amplitudes keep every check fast.
pub const MAX_ORACLE_QUBITS: usize = 14;

/// Default condition-number bound for [`random_ilo`].
pub const DEFAULT_MAX_CONDITION: f64 = 100.0;

/// Minimum pairwise chordal separation of sampled points.
pub const SAMPLE_SEPARATION: f64 = 1e-2;

fn check_cap(n: usize) -> Result<()> {
    if n > MAX_ORACLE_QUBITS {
        return Err(Error::TooLarge {
            max: MAX_ORACLE_QUBITS,
            got: n,
        });
    }
    Ok(())
}

fn qubit_count_of(len: usize) -> Result<usize> {
    if len.count_ones() != 1 || len < 2 {
        return Err(Error::InvalidFormat(format!(
            "full vector length {len} is not a power of two"
        )));
    }
    let n = len.trailing_zeros() as usize;
    check_cap(n)?;
    Ok(n)
}

/// Expands Dicke coefficients into the full 2^N amplitude vector: every
/// basis string with k zeros receives `d_k / sqrt(C(N,k))`.
pub fn symmetric_to_full(state: &DickeVector) -> Result<Vec<Complex64>> {
    let n = state.n_qubits();
    check_cap(n)?;
    let mut out = vec![Complex64::ZERO; 1 << n];
    let weights: Vec<Complex64> = (0..=n)
        .map(|k| state.coeff(k) / binomial(n, k).sqrt())
        .collect();
    for (idx, amp) in out.iter_mut().enumerate() {
        *amp = weights[idx.count_ones() as usize];
    }
    Ok(out)
}

/// Applies the same 2x2 operation to every qubit slot of a full vector
/// without materializing the 2^N x 2^N matrix.
pub fn kron_apply(op: &LocalOperation, v: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = qubit_count_of(v.len())?;
    let [[a, b], [c, d]] = op.entries();
    let mut out = v.to_vec();
    for qubit in 0..n {
        let stride = 1usize << (n - 1 - qubit);
        let mut base = 0;
        while base < out.len() {
            for offset in 0..stride {
                let one = out[base + offset]; // qubit in |1>
                let zero = out[base + offset + stride]; // qubit in |0>
                out[base + offset] = a * one + b * zero;
                out[base + offset + stride] = c * one + d * zero;
            }
            base += 2 * stride;
        }
    }
    Ok(out)
}

/// Projects a permutation-symmetric full vector back onto Dicke
/// coefficients, averaging each Hamming-weight class.
///
/// Fails with [`Error::NotSymmetric`] when amplitudes within a class
/// deviate by more than 1e-8 relative to the largest amplitude.
pub fn full_to_symmetric(v: &[Complex64]) -> Result<DickeVector> {
    let n = qubit_count_of(v.len())?;
    let global = v.iter().map(|a| a.norm()).fold(0.0, f64::max);
    if global == 0.0 {
        return Err(Error::ZeroState);
    }
    let mut sums = vec![Complex64::ZERO; n + 1];
    let mut counts = vec![0usize; n + 1];
    for (idx, amp) in v.iter().enumerate() {
        let k = idx.count_ones() as usize;
        sums[k] += amp;
        counts[k] += 1;
    }
    let means: Vec<Complex64> = sums
        .iter()
        .zip(&counts)
        .map(|(s, &c)| s / c as f64)
        .collect();
    let mut worst = 0.0f64;
    for (idx, amp) in v.iter().enumerate() {
        let k = idx.count_ones() as usize;
        worst = worst.max((amp - means[k]).norm() / global);
    }
    if worst > 1e-8 {
        return Err(Error::NotSymmetric(worst));
    }
    let raw: Vec<Complex64> = means
        .iter()
        .enumerate()
        .map(|(k, m)| m * binomial(n, k).sqrt())
        .collect();
    DickeVector::new(n, &raw)
}

/// Projective comparison: `|<v,w>|^2 >= (1 - tol) |v|^2 |w|^2`.
pub fn proportional(v: &[Complex64], w: &[Complex64], tol: f64) -> bool {
    if v.len() != w.len() {
        return false;
    }
    let mut inner = Complex64::ZERO;
    let mut nv = 0.0;
    let mut nw = 0.0;
    for (a, b) in v.iter().zip(w) {
        inner += a.conj() * b;
        nv += a.norm_sqr();
        nw += b.norm_sqr();
    }
    inner.norm_sqr() >= (1.0 - tol) * nv * nw
}

/// Sum of the tensor products of the given points over all N! orderings,
/// as a full unnormalized amplitude vector.
///
/// This is the defining expansion of a point multiset and serves as the
/// independent check of the polynomial-based reconstruction.
pub fn symmetrized_expansion(points: &[SpinorPoint]) -> Result<Vec<Complex64>> {
    let n = points.len();
    check_cap(n)?;
    let mut memo: HashMap<u32, Vec<Complex64>> = HashMap::new();
    Ok(expand_orderings(points, 0, &mut memo))
}

fn expand_orderings(
    points: &[SpinorPoint],
    used: u32,
    memo: &mut HashMap<u32, Vec<Complex64>>,
) -> Vec<Complex64> {
    let n = points.len();
    let remaining = n - used.count_ones() as usize;
    if remaining == 0 {
        return vec![Complex64::ONE];
    }
    if let Some(hit) = memo.get(&used) {
        return hit.clone();
    }
    let half = 1usize << (remaining - 1);
    let mut out = vec![Complex64::ZERO; 2 * half];
    for (j, p) in points.iter().enumerate() {
        if used & (1 << j) != 0 {
            continue;
        }
        let sub = expand_orderings(points, used | (1 << j), memo);
        for (i, s) in sub.iter().enumerate() {
            out[i] += p.alpha() * s;
            out[half + i] += p.beta() * s;
        }
    }
    memo.insert(used, out.clone());
    out
}

fn sample_point(rng: &mut ChaCha8Rng) -> SpinorPoint {
    // uniform on the sphere: uniform cos of the polar angle, uniform azimuth
    let u: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let alpha = Complex64::new(((1.0 + u) / 2.0).sqrt(), 0.0);
    let beta = Complex64::from_polar(((1.0 - u) / 2.0).sqrt(), phi);
    SpinorPoint::new(alpha, beta).expect("sampled spinor is unit")
}

/// Draws distinct well-separated points for the given configuration and
/// assembles the state. Deterministic per seed.
pub fn random_state(config: &DegeneracyConfiguration, seed: u64) -> DickeVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<SpinorPoint> = Vec::with_capacity(config.diversity());
    while points.len() < config.diversity() {
        let candidate = sample_point(&mut rng);
        if points
            .iter()
            .all(|p| p.chordal_distance(&candidate) >= SAMPLE_SEPARATION)
        {
            points.push(candidate);
        }
    }
    let pairs: Vec<(SpinorPoint, usize)> = points
        .into_iter()
        .zip(config.parts().iter().copied())
        .collect();
    let decomp = MajoranaDecomposition::new(config.n(), pairs)
        .expect("sampled points are distinct and sum to n");
    points_to_dicke(&decomp)
}

/// Random invertible operation with bounded condition number,
/// deterministic per seed.
pub fn random_ilo(seed: u64, max_condition: f64) -> LocalOperation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut entry = || Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        let (a, b, c, d) = (entry(), entry(), entry(), entry());
        if let Ok(op) = LocalOperation::new(a, b, c, d) {
            if op.condition_number() <= max_condition {
                return op;
            }
        }
    }
}
