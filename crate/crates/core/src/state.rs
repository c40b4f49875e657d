//! Core data types: symmetric states in the Dicke basis, points on the
//! Riemann sphere, point decompositions, degeneracy configurations and
//! invertible local operations.
//!
//! All types are immutable after construction and store a deterministic
//! canonical form (unit norm, fixed global phase), so equality of values
//! means equality of the states they represent.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default tolerance for root clustering and equivalence decisions.
///
/// This is the one knob that changes the discrete classification of a
/// state; the CLI exposes it as `--tol` / `MAJORANA_TOL`.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Below this magnitude an entire coefficient vector counts as zero.
pub const ZERO_EPS: f64 = 1e-14;

/// Magnitude floor used when picking the phase-gauge coefficient and when
/// deciding whether a vector is already unit-normalized.
pub const GAUGE_EPS: f64 = 1e-12;

/// Relative determinant floor below which a 2x2 matrix counts as singular.
pub const INVERTIBILITY_FLOOR: f64 = 1e-10;

fn norm_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

/// Unit-normalize and phase-gauge a coefficient vector in place.
///
/// The gauge: the first coefficient with magnitude above [`GAUGE_EPS`] is
/// made real and non-negative. Rescaling is skipped when the squared norm
/// is already within [`GAUGE_EPS`] of one, which makes the whole operation
/// bit-idempotent.
fn normalize_and_gauge(v: &mut [Complex64]) -> Result<()> {
    let ns = norm_sq(v);
    if !ns.is_finite() || v.iter().all(|c| c.norm() < ZERO_EPS) {
        return Err(Error::ZeroState);
    }
    if (ns - 1.0).abs() > GAUGE_EPS {
        let inv = 1.0 / ns.sqrt();
        for c in v.iter_mut() {
            *c *= inv;
        }
    }
    if let Some(lead) = v.iter().find(|c| c.norm() > GAUGE_EPS) {
        let phase = lead / lead.norm();
        let conj = phase.conj();
        for c in v.iter_mut() {
            *c *= conj;
        }
    }
    Ok(())
}

/// A symmetric N-qubit pure state stored as N+1 Dicke coefficients.
///
/// Coefficient `k` multiplies the Dicke state with `k` zeros. The stored
/// vector is unit-norm with the global phase fixed so that the first
/// coefficient of magnitude above [`GAUGE_EPS`] is real positive.
#[derive(Debug, Clone, PartialEq)]
pub struct DickeVector {
    n: usize,
    coeffs: Vec<Complex64>,
}

impl DickeVector {
    /// Normalizes raw amplitudes into a canonical state.
    ///
    /// Rejects vectors whose length is not `n + 1` and vectors with all
    /// magnitudes below [`ZERO_EPS`].
    pub fn new(n: usize, raw: &[Complex64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadConfiguration("qubit count must be positive".into()));
        }
        if raw.len() != n + 1 {
            return Err(Error::LengthMismatch {
                expected: n + 1,
                got: raw.len(),
            });
        }
        let mut coeffs = raw.to_vec();
        normalize_and_gauge(&mut coeffs)?;
        Ok(Self { n, coeffs })
    }

    /// The Dicke state with `k` zeros, `|D_N^(k)>`.
    pub fn dicke(n: usize, k: usize) -> Self {
        assert!(k <= n, "dicke index k = {k} out of range for n = {n}");
        let mut raw = vec![Complex64::ZERO; n + 1];
        raw[k] = Complex64::ONE;
        Self::new(n, &raw).expect("basis state is valid")
    }

    /// The state `(|1...1> + |0...0>)/sqrt(2)`.
    pub fn ghz(n: usize) -> Self {
        assert!(n >= 1, "ghz needs at least one qubit");
        let mut raw = vec![Complex64::ZERO; n + 1];
        raw[0] = Complex64::ONE;
        raw[n] = Complex64::ONE;
        Self::new(n, &raw).expect("ghz amplitudes are valid")
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs[k]
    }

    /// Largest per-coefficient distance to another state in the same gauge.
    pub fn max_coeff_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Per-coefficient equality in the canonical gauge.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.n == other.n && self.max_coeff_distance(other) <= tol
    }
}

/// A single-qubit state `alpha |1> + beta |0>` as a point on the Riemann
/// sphere, stored unit-normalized and phase-gauged.
///
/// The point at infinity (`|1>`) is represented exactly as `(1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorPoint {
    alpha: Complex64,
    beta: Complex64,
}

impl SpinorPoint {
    /// Builds a point from raw amplitudes, normalizing and fixing the gauge.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let mut v = [alpha, beta];
        normalize_and_gauge(&mut v)?;
        Ok(Self {
            alpha: v[0],
            beta: v[1],
        })
    }

    /// The point at infinity, `|1>` = (1, 0).
    pub const fn infinity() -> Self {
        Self {
            alpha: Complex64::ONE,
            beta: Complex64::ZERO,
        }
    }

    /// The origin of the ratio coordinate, `|0>` = (0, 1).
    pub const fn zero() -> Self {
        Self {
            alpha: Complex64::ZERO,
            beta: Complex64::ONE,
        }
    }

    /// The point with ratio coordinate one, `(|1> + |0>)/sqrt(2)`.
    pub fn one() -> Self {
        Self::from_ratio(Complex64::ONE)
    }

    /// Point with ratio coordinate `z = alpha/beta`.
    pub fn from_ratio(z: Complex64) -> Self {
        let s = (1.0 + z.norm_sqr()).sqrt();
        if !s.is_finite() {
            return Self::infinity();
        }
        Self::new(z / s, Complex64::new(1.0 / s, 0.0)).expect("ratio point has unit norm")
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// True only for the exact infinity representation `(1, 0)`.
    pub fn is_infinity(&self) -> bool {
        self.beta == Complex64::ZERO
    }

    /// Ratio coordinate `alpha/beta`; `None` for the point at infinity.
    pub fn ratio(&self) -> Option<Complex64> {
        if self.is_infinity() {
            None
        } else {
            Some(self.alpha / self.beta)
        }
    }

    /// The antipodal point on the sphere (orthogonal spinor).
    pub fn orthogonal(&self) -> Self {
        Self::new(-self.beta.conj(), self.alpha.conj()).expect("orthogonal of unit spinor")
    }

    /// Chordal distance `|alpha_p beta_q - alpha_q beta_p|`.
    ///
    /// Symmetric, in [0, 1] for unit spinors, and zero exactly when the
    /// points coincide projectively.
    pub fn chordal_distance(&self, other: &Self) -> f64 {
        (self.alpha * other.beta - other.alpha * self.beta).norm()
    }

    /// Sort key (ratio magnitude, ratio phase) with infinity ordered last.
    pub(crate) fn order_key(&self) -> (f64, f64) {
        match self.ratio() {
            None => (f64::INFINITY, 0.0),
            Some(z) => (z.norm(), z.arg()),
        }
    }
}

/// Chordal distance between two sphere points; see
/// [`SpinorPoint::chordal_distance`].
pub fn chordal_distance(p: &SpinorPoint, q: &SpinorPoint) -> f64 {
    p.chordal_distance(q)
}

/// A partition of N: the weakly decreasing list of point multiplicities of
/// a symmetric state. The family label of the state under local operations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegeneracyConfiguration {
    parts: Vec<usize>,
}

impl DegeneracyConfiguration {
    /// Sorts the parts into decreasing order; rejects empty lists and zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::BadConfiguration("empty part list".into()));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::BadConfiguration("parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Total qubit count (sum of the parts).
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of distinct points: the diversity degree.
    pub fn diversity(&self) -> usize {
        self.parts.len()
    }
}

impl std::fmt::Display for DegeneracyConfiguration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl std::str::FromStr for DegeneracyConfiguration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::BadConfiguration(format!("bad part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// A symmetric state as a multiset of distinct sphere points with
/// multiplicities summing to the qubit count.
///
/// Points are stored in a deterministic order: multiplicity descending,
/// then ratio magnitude ascending (infinity last), then ratio phase.
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaDecomposition {
    n: usize,
    points: Vec<(SpinorPoint, usize)>,
}

impl MajoranaDecomposition {
    /// Validates multiplicities and pairwise distinctness, then stores the
    /// points in canonical order.
    pub fn new(n: usize, mut points: Vec<(SpinorPoint, usize)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::BadConfiguration("no points".into()));
        }
        if points.iter().any(|&(_, m)| m == 0) {
            return Err(Error::BadConfiguration("multiplicities must be positive".into()));
        }
        let total: usize = points.iter().map(|&(_, m)| m).sum();
        if total != n {
            return Err(Error::BadConfiguration(format!(
                "multiplicities sum to {total}, expected {n}"
            )));
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i].0.chordal_distance(&points[j].0) == 0.0 {
                    return Err(Error::BadConfiguration(
                        "decomposition contains coincident points".into(),
                    ));
                }
            }
        }
        points.sort_by(|a, b| {
            b.1.cmp(&a.1)
                .then_with(|| a.0.order_key().partial_cmp(&b.0.order_key()).expect("finite keys"))
        });
        Ok(Self { n, points })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// Distinct points with multiplicities, in canonical order.
    pub fn points(&self) -> &[(SpinorPoint, usize)] {
        &self.points
    }

    /// Number of distinct points.
    pub fn diversity(&self) -> usize {
        self.points.len()
    }

    /// The multiplicity partition of this decomposition.
    pub fn configuration(&self) -> DegeneracyConfiguration {
        DegeneracyConfiguration::new(self.points.iter().map(|&(_, m)| m).collect())
            .expect("valid decomposition yields valid configuration")
    }

    /// All N points with repetition, in canonical order.
    pub fn expand(&self) -> Vec<SpinorPoint> {
        let mut out = Vec::with_capacity(self.n);
        for &(p, m) in &self.points {
            out.extend(std::iter::repeat(p).take(m));
        }
        out
    }

    /// Smallest chordal distance between distinct stored points.
    pub fn min_separation(&self) -> f64 {
        let mut min = f64::INFINITY;
        for i in 0..self.points.len() {
            for j in (i + 1)..self.points.len() {
                min = min.min(self.points[i].0.chordal_distance(&self.points[j].0));
            }
        }
        min
    }
}

/// An invertible 2x2 complex matrix applied identically to every qubit.
///
/// Entries are row-major on the basis order `(|1>, |0>)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalOperation {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl LocalOperation {
    /// Validates invertibility: `|det|` must exceed
    /// [`INVERTIBILITY_FLOOR`] times the squared largest entry magnitude.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let op = Self { a, b, c, d };
        let scale = op.max_entry();
        let det = op.det().norm();
        let floor = INVERTIBILITY_FLOOR * scale * scale;
        if !det.is_finite() || scale == 0.0 || det < floor {
            return Err(Error::SingularOperation { det, floor });
        }
        Ok(op)
    }

    pub fn identity() -> Self {
        Self {
            a: Complex64::ONE,
            b: Complex64::ZERO,
            c: Complex64::ZERO,
            d: Complex64::ONE,
        }
    }

    /// Exchanges `|1>` and `|0>`; sends infinity to the origin.
    pub fn swap() -> Self {
        Self {
            a: Complex64::ZERO,
            b: Complex64::ONE,
            c: Complex64::ONE,
            d: Complex64::ZERO,
        }
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn max_entry(&self) -> f64 {
        [self.a, self.b, self.c, self.d]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Matrix inverse; always defined thanks to the construction invariant.
    pub fn inverse(&self) -> Self {
        let inv_det = Complex64::ONE / self.det();
        Self {
            a: self.d * inv_det,
            b: -self.b * inv_det,
            c: -self.c * inv_det,
            d: self.a * inv_det,
        }
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        Self {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    /// Multiplies every entry by a nonzero scalar. Scale-invariant checks
    /// keep the result valid.
    pub fn scaled(&self, s: Complex64) -> Self {
        debug_assert!(s.norm() > 0.0);
        Self {
            a: self.a * s,
            b: self.b * s,
            c: self.c * s,
            d: self.d * s,
        }
    }

    /// Applies the matrix to raw spinor amplitudes without normalizing.
    pub fn apply_raw(&self, alpha: Complex64, beta: Complex64) -> (Complex64, Complex64) {
        (self.a * alpha + self.b * beta, self.c * alpha + self.d * beta)
    }

    /// Condition number (ratio of singular values) via the 2x2 closed form.
    pub fn condition_number(&self) -> f64 {
        let t = self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr();
        let g = self.det().norm_sqr();
        let disc = (t * t - 4.0 * g).max(0.0).sqrt();
        let s_max = ((t + disc) / 2.0).sqrt();
        let s_min = ((t - disc) / 2.0).max(0.0).sqrt();
        if s_min == 0.0 {
            f64::INFINITY
        } else {
            s_max / s_min
        }
    }
}
