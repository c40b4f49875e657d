//! Family enumeration and labeling: degeneracy configurations, the
//! partition function, canonical representatives for single-class
//! families, and the equally-spaced point set of the GHZ state.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{DegeneracyConfiguration, MajoranaDecomposition, SpinorPoint};

/// The multiplicity partition of a decomposition.
pub fn degeneracy_configuration(decomp: &MajoranaDecomposition) -> DegeneracyConfiguration {
    decomp.configuration()
}

/// Number of distinct points of a configuration.
pub fn diversity_degree(config: &DegeneracyConfiguration) -> usize {
    config.diversity()
}

/// Number of partitions of `n`, via the pentagonal-number recurrence.
pub fn partition_count(n: usize) -> u64 {
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for i in 1..=n {
        let mut acc: i128 = 0;
        let mut k: usize = 1;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let sign: i128 = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * table[i - g1] as i128;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= i {
                acc += sign * table[i - g2] as i128;
            }
            k += 1;
        }
        table[i] = acc as u64;
    }
    table[n]
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn enumerate_configurations(n: usize) -> Vec<DegeneracyConfiguration> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(n, n, &mut current, &mut out);
    out
}

fn descend(
    remaining: usize,
    max_part: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<DegeneracyConfiguration>,
) {
    if remaining == 0 {
        out.push(
            DegeneracyConfiguration::new(current.clone()).expect("partition parts are positive"),
        );
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        descend(remaining - part, part, current, out);
        current.pop();
    }
}

/// Family name and class structure of a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyLabel {
    /// "S", "W_k", or "D_{n1,...,nd}".
    pub label: String,
    /// Number of distinct points.
    pub diversity: usize,
    /// Continuous class parameters within the family: `max(0, d - 3)`.
    pub continuous_params: usize,
    /// True for the all-distinct configuration, which contains the class
    /// of the GHZ state.
    pub ghz_family: bool,
}

impl std::fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.label)?;
        if self.ghz_family {
            write!(f, " (GHZ-family)")?;
        }
        Ok(())
    }
}

/// Labels a configuration: `[N]` is the separable family "S", two-part
/// configurations `[N-k, k]` are the "W_k" families, everything else is
/// spelled out as "D_{n1,...,nd}".
pub fn family_label(config: &DegeneracyConfiguration) -> FamilyLabel {
    let d = config.diversity();
    let parts = config.parts();
    let label = match d {
        1 => "S".to_string(),
        2 => format!("W_{}", parts[1]),
        _ => {
            let joined: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
            format!("D_{{{}}}", joined.join(","))
        }
    };
    FamilyLabel {
        label,
        diversity: d,
        continuous_params: d.saturating_sub(3),
        ghz_family: parts.iter().all(|&p| p == 1),
    }
}

/// A fixed representative point set for a single-class family (d <= 3).
///
/// The anchors are infinity, the origin and the ratio-one point, carrying
/// the parts in decreasing order. Families with d >= 4 have no single
/// representative and return [`Error::ContinuousFamily`].
pub fn canonical_representative(config: &DegeneracyConfiguration) -> Result<MajoranaDecomposition> {
    let parts = config.parts();
    let anchors = [SpinorPoint::infinity(), SpinorPoint::zero(), SpinorPoint::one()];
    if parts.len() > anchors.len() {
        return Err(Error::ContinuousFamily(config.clone()));
    }
    let points = parts
        .iter()
        .zip(anchors.iter())
        .map(|(&m, &p)| (p, m))
        .collect();
    MajoranaDecomposition::new(config.n(), points)
}

/// The N equally-spaced points of the GHZ state `(|1..1> + |0..0>)/sqrt(2)`.
///
/// Point i is `(e^{-i theta} |1> + e^{i theta} |0>)/sqrt(2)` with
/// `theta_i = pi/(2N) [N even] + (i-1) pi/N`, so the ratio coordinates are
/// the N-th roots of -1 for even N and of +1 for odd N.
pub fn ghz_points(n: usize) -> MajoranaDecomposition {
    assert!(n >= 2, "ghz point set needs at least two qubits");
    let offset = if n % 2 == 0 {
        std::f64::consts::PI / (2.0 * n as f64)
    } else {
        0.0
    };
    let points = (0..n)
        .map(|i| {
            let theta = offset + i as f64 * std::f64::consts::PI / n as f64;
            let alpha = Complex64::from_polar(std::f64::consts::FRAC_1_SQRT_2, -theta);
            let beta = Complex64::from_polar(std::f64::consts::FRAC_1_SQRT_2, theta);
            (
                SpinorPoint::new(alpha, beta).expect("unit spinor"),
                1usize,
            )
        })
        .collect();
    MajoranaDecomposition::new(n, points).expect("ghz points are distinct")
}
