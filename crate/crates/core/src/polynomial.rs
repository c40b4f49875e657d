//! Complex polynomials and a simultaneous-iteration root finder.
//!
//! Roots are found with Ehrlich-Aberth sweeps from deterministic initial
//! guesses, polished by Newton steps, and finally passed through a
//! multiplicity collapse: clusters that agree with an exact m-fold root to
//! within coefficient backward error are replaced by m copies of the
//! refined multiple root. Without that step a state whose polynomial is a
//! perfect square would come back with roots split by roughly the square
//! root of the coefficient rounding noise, which is wider than the default
//! point-clustering tolerance.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative magnitude below which a leading coefficient does not count
/// towards the degree. This threshold decides how many points sit at
/// infinity, so it is the discrete side of the classification.
pub const DEGREE_REL_EPS: f64 = 1e-12;

/// Accepted normalized residual `|P(r)| / scale(r)` for returned roots.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;

/// Default sweep cap for the simultaneous iteration.
pub const DEFAULT_MAX_SWEEPS: usize = 1000;

/// Per-sweep movement threshold that counts as converged.
const CONVERGED_STEP: f64 = 5e-14;

/// Relative backward error at which a cluster is accepted as a multiple root.
const COLLAPSE_BACKWARD_EPS: f64 = 1e-12;

/// Initial chordal radius for tentative multiplicity grouping.
const COLLAPSE_RADIUS: f64 = 1e-4;

/// A polynomial with complex coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Index of the highest coefficient above [`DEGREE_REL_EPS`] relative
    /// to the largest coefficient magnitude; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        let max = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            return 0;
        }
        self.coeffs
            .iter()
            .rposition(|c| c.norm() > DEGREE_REL_EPS * max)
            .unwrap_or(0)
    }

    /// Horner evaluation over the significant coefficients.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs[..=self.degree()], z)
    }

    /// Derivative of the significant part.
    pub fn derivative(&self) -> ComplexPolynomial {
        let k = self.degree();
        if k == 0 {
            return ComplexPolynomial::new(vec![Complex64::ZERO]);
        }
        ComplexPolynomial::new(
            self.coeffs[1..=k]
                .iter()
                .enumerate()
                .map(|(i, c)| c * (i + 1) as f64)
                .collect(),
        )
    }

    /// All `degree()` roots with multiplicity.
    ///
    /// Deterministic for identical input. Fails with
    /// [`Error::NoConvergence`] if the sweep cap is exhausted before every
    /// correction falls under the convergence threshold, and with the same
    /// error if a root fails the final residual check.
    pub fn roots(&self, max_sweeps: usize) -> Result<Vec<Complex64>> {
        let k = self.degree();
        let c = &self.coeffs[..=k];
        match k {
            0 => Ok(Vec::new()),
            1 => Ok(vec![-c[0] / c[1]]),
            2 => Ok(quadratic_roots(c[0], c[1], c[2]).to_vec()),
            _ => {
                let mut roots = aberth(c, max_sweeps)?;
                polish(c, &mut roots);
                collapse_multiples(c, &mut roots);
                let worst = roots
                    .iter()
                    .map(|&r| backward_residual(c, r))
                    .fold(0.0, f64::max);
                if worst > ROOT_RESIDUAL_TOL {
                    return Err(Error::NoConvergence { sweeps: max_sweeps });
                }
                Ok(roots)
            }
        }
    }
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::ZERO;
    for &q in c.iter().rev() {
        acc = acc * z + q;
    }
    acc
}

fn derivative_coeffs(c: &[Complex64]) -> Vec<Complex64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, q)| q * i as f64)
        .collect()
}

/// Stable quadratic formula: the larger root by magnitude first, the other
/// via the product of roots.
fn quadratic_roots(c0: Complex64, c1: Complex64, c2: Complex64) -> [Complex64; 2] {
    let disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
    let q = if (c1 + disc).norm() >= (c1 - disc).norm() {
        -(c1 + disc) / 2.0
    } else {
        -(c1 - disc) / 2.0
    };
    if q.norm() == 0.0 {
        return [Complex64::ZERO, Complex64::ZERO];
    }
    [q / c2, c0 / q]
}

/// No-cancellation evaluation scale `sum_k |c_k| max(1,|z|)^k`.
fn eval_scale(c: &[Complex64], z: Complex64) -> f64 {
    let m = z.norm().max(1.0);
    let mut acc = 0.0;
    for &q in c.iter().rev() {
        acc = acc * m + q.norm();
    }
    acc.max(f64::MIN_POSITIVE)
}

/// Relative backward error of `r` as a root of the polynomial `c`.
fn backward_residual(c: &[Complex64], r: Complex64) -> f64 {
    horner(c, r).norm() / eval_scale(c, r)
}

/// Ehrlich-Aberth simultaneous iteration with Gauss-Seidel updates.
///
/// A root freezes once its residual falls under the rounding-error bound
/// of the Horner evaluation; corrections of clustered roots jitter at that
/// noise floor and would otherwise never satisfy a step criterion.
fn aberth(c: &[Complex64], max_sweeps: usize) -> Result<Vec<Complex64>> {
    let k = c.len() - 1;
    let dc = derivative_coeffs(c);
    let mut z = initial_guesses(c);
    let mut frozen = vec![false; k];
    let noise_floor = 8.0 * f64::EPSILON;
    for _ in 0..max_sweeps {
        let mut max_step = 0.0f64;
        for i in 0..k {
            if frozen[i] {
                continue;
            }
            let p = horner(c, z[i]);
            if p.norm() <= noise_floor * eval_scale(c, z[i]) {
                frozen[i] = true;
                continue;
            }
            let dp = horner(&dc, z[i]);
            let w = if dp.norm() > 0.0 {
                p / dp
            } else {
                // derivative vanished at the iterate; nudge off the
                // stationary point deterministically
                Complex64::new(1e-8 * (1.0 + z[i].norm()), 0.0)
            };
            let mut repulsion = Complex64::ZERO;
            for j in 0..k {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        repulsion += diff.inv();
                    } else {
                        // coincident iterates: shove this one off its twin
                        let nudge = 1e-6 * (1.0 + z[i].norm());
                        z[i] += Complex64::new(nudge, 0.0);
                    }
                }
            }
            let denom = Complex64::ONE - w * repulsion;
            let step = if denom.norm() > 1e-12 { w / denom } else { w };
            z[i] -= step;
            max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
        }
        if frozen.iter().all(|&f| f) || max_step < CONVERGED_STEP {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence { sweeps: max_sweeps })
}

/// Deterministic starting points: a circle at the Fujiwara root bound
/// around the root centroid, with an angular offset that avoids symmetric
/// stalls.
fn initial_guesses(c: &[Complex64]) -> Vec<Complex64> {
    let k = c.len() - 1;
    let lead = c[k];
    let centroid = -c[k - 1] / (lead * k as f64);
    let mut bound = 0.0f64;
    for (i, q) in c.iter().enumerate().take(k) {
        let ratio = (q / lead).norm();
        bound = bound.max(ratio.powf(1.0 / (k - i) as f64));
    }
    let radius = (2.0 * bound).max(0.5);
    (0..k)
        .map(|j| {
            let angle = 2.0 * std::f64::consts::PI * j as f64 / k as f64 + 0.43;
            centroid + Complex64::from_polar(radius, angle)
        })
        .collect()
}

/// A few Newton steps per root; near-simple roots gain several digits,
/// members of multiple-root clusters stay put.
fn polish(c: &[Complex64], roots: &mut [Complex64]) {
    let dc = derivative_coeffs(c);
    for r in roots.iter_mut() {
        for _ in 0..4 {
            let p = horner(c, *r);
            let dp = horner(&dc, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() || step.norm() > 0.1 * (1.0 + r.norm()) {
                break;
            }
            *r -= step;
            if step.norm() <= f64::EPSILON * r.norm().max(1.0) {
                break;
            }
        }
    }
}

fn chordal_of_ratios(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / ((1.0 + a.norm_sqr()) * (1.0 + b.norm_sqr())).sqrt()
}

/// Replaces root clusters that pass a backward-error test for an exact
/// m-fold root by m copies of the refined root.
///
/// Grouping is single-link at a radius far above what the iteration can
/// resolve for multiple roots; groups that fail the test are split again
/// at tighter radii, so genuinely distinct roots always survive.
fn collapse_multiples(c: &[Complex64], roots: &mut [Complex64]) {
    // derivative cascade c, c', c'', ...
    let mut cascade = vec![c.to_vec()];
    while cascade.last().expect("nonempty").len() > 1 {
        cascade.push(derivative_coeffs(cascade.last().expect("nonempty")));
    }
    let all: Vec<usize> = (0..roots.len()).collect();
    collapse_groups(&cascade, roots, &all, COLLAPSE_RADIUS);
}

fn collapse_groups(
    cascade: &[Vec<Complex64>],
    roots: &mut [Complex64],
    idx: &[usize],
    radius: f64,
) {
    for group in single_link_groups(roots, idx, radius) {
        let m = group.len();
        if m == 1 {
            continue;
        }
        let centroid = group.iter().map(|&i| roots[i]).sum::<Complex64>() / m as f64;
        if let Some(refined) = refine_multiple(cascade, centroid, m) {
            for &i in &group {
                roots[i] = refined;
            }
        } else if radius > 1e-9 {
            collapse_groups(cascade, roots, &group, radius / 16.0);
        }
    }
}

/// Single-link grouping of the given root indices at a chordal radius.
fn single_link_groups(roots: &[Complex64], idx: &[usize], radius: f64) -> Vec<Vec<usize>> {
    let mut pool: Vec<usize> = idx.to_vec();
    let mut groups = Vec::new();
    while let Some(seed) = pool.pop() {
        let mut group = vec![seed];
        loop {
            let before = pool.len();
            pool.retain(|&q| {
                if group
                    .iter()
                    .any(|&m| chordal_of_ratios(roots[q], roots[m]) <= radius)
                {
                    group.push(q);
                    false
                } else {
                    true
                }
            });
            if pool.len() == before {
                break;
            }
        }
        groups.push(group);
    }
    groups
}

/// Newton-refines an m-fold root candidate on the (m-1)-th derivative,
/// where it is a simple and therefore well-conditioned root, then checks
/// that all lower derivatives vanish to within coefficient backward error.
fn refine_multiple(cascade: &[Vec<Complex64>], start: Complex64, m: usize) -> Option<Complex64> {
    if m >= cascade.len() {
        return None;
    }
    let f = &cascade[m - 1];
    let df = &cascade[m];
    let mut z = start;
    for _ in 0..40 {
        let p = horner(f, z);
        let dp = horner(df, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        if !step.is_finite() || step.norm() > 0.5 * (1.0 + z.norm()) {
            return None;
        }
        z -= step;
        if step.norm() <= f64::EPSILON * z.norm().max(1.0) {
            break;
        }
    }
    let ok = (0..m).all(|j| {
        let pj = horner(&cascade[j], z).norm();
        pj <= COLLAPSE_BACKWARD_EPS * eval_scale(&cascade[j], z)
    });
    ok.then_some(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sort_roots(mut r: Vec<Complex64>) -> Vec<Complex64> {
        r.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        r
    }

    #[test]
    fn degree_uses_relative_threshold() {
        let p = ComplexPolynomial::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(1e-15, 0.0)]);
        assert_eq!(p.degree(), 0);
        let q = ComplexPolynomial::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(1e-9, 0.0)]);
        assert_eq!(q.degree(), 2);
    }

    #[test]
    fn cube_roots_of_unity() {
        // (1 - z^3)/sqrt(2)
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let p = ComplexPolynomial::new(vec![c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-r, 0.0)]);
        let roots = sort_roots(p.roots(DEFAULT_MAX_SWEEPS).unwrap());
        let expect = sort_roots(
            (0..3)
                .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0))
                .collect(),
        );
        for (a, b) in roots.iter().zip(&expect) {
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn monomial_root() {
        let p = ComplexPolynomial::new(vec![c(0.0, 0.0), c(-2.0, 0.0)]);
        let roots = p.roots(DEFAULT_MAX_SWEEPS).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0], Complex64::ZERO);
    }

    #[test]
    fn quartic_roots_of_minus_one() {
        // (1 + z^4)/sqrt(2)
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut coeffs = vec![Complex64::ZERO; 5];
        coeffs[0] = c(r, 0.0);
        coeffs[4] = c(r, 0.0);
        let p = ComplexPolynomial::new(coeffs);
        let roots = sort_roots(p.roots(DEFAULT_MAX_SWEEPS).unwrap());
        let expect = sort_roots(
            (0..4)
                .map(|k| Complex64::from_polar(1.0, std::f64::consts::PI * (2 * k + 1) as f64 / 4.0))
                .collect(),
        );
        for (a, b) in roots.iter().zip(&expect) {
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn double_roots_collapse_exactly() {
        // (z^2 - 1)^2 with a couple of ulps of coefficient noise
        let p = ComplexPolynomial::new(vec![
            c(1.0 + 3e-16, 0.0),
            c(0.0, 0.0),
            c(-2.0 + 2e-16, 0.0),
            c(0.0, 0.0),
            c(1.0, 0.0),
        ]);
        let roots = p.roots(DEFAULT_MAX_SWEEPS).unwrap();
        assert_eq!(roots.len(), 4);
        let mut sorted = sort_roots(roots);
        assert_eq!(sorted[0], sorted[1], "double root must collapse to identical values");
        assert_eq!(sorted[2], sorted[3]);
        assert!((sorted[0] + Complex64::ONE).norm() < 1e-10);
        assert!((sorted.pop().unwrap() - Complex64::ONE).norm() < 1e-10);
    }

    #[test]
    fn close_but_distinct_roots_survive() {
        // (z - 1)(z - 1.001)(z + 2): separated well beyond backward error
        let a = 1.0;
        let b = 1.001;
        let d = -2.0;
        let coeffs = vec![
            c(-a * b * d, 0.0),
            c(a * b + a * d + b * d, 0.0),
            c(-(a + b + d), 0.0),
            c(1.0, 0.0),
        ];
        let p = ComplexPolynomial::new(coeffs);
        let roots = sort_roots(p.roots(DEFAULT_MAX_SWEEPS).unwrap());
        assert!((roots[0] - c(-2.0, 0.0)).norm() < 1e-10);
        assert!((roots[1] - c(1.0, 0.0)).norm() < 1e-9);
        assert!((roots[2] - c(1.001, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn triple_root_collapses() {
        // (z - 0.5)^3 (z + 1) = z^4 - 0.5 z^3 - 0.75 z^2 + 0.625 z - 0.125
        let p = ComplexPolynomial::new(vec![
            c(-0.125, 0.0),
            c(0.625, 0.0),
            c(-0.75, 0.0),
            c(-0.5, 0.0),
            c(1.0, 0.0),
        ]);
        let roots = sort_roots(p.roots(DEFAULT_MAX_SWEEPS).unwrap());
        assert!((roots[0] + Complex64::ONE).norm() < 1e-10);
        assert_eq!(roots[1], roots[2]);
        assert_eq!(roots[2], roots[3]);
        assert!((roots[1] - c(0.5, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn sweep_cap_reports_no_convergence() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let p = ComplexPolynomial::new(vec![c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-r, 0.0)]);
        assert!(matches!(p.roots(0), Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn random_coefficients_have_small_residual(){
        // a fixed awkward polynomial: mixed magnitudes
        let p = ComplexPolynomial::new(vec![
            c(3.0, -1.0),
            c(-0.001, 2.0),
            c(40.0, 0.0),
            c(0.0, -0.02),
            c(1.0, 1.0),
            c(-5.0, 0.3),
        ]);
        let roots = p.roots(DEFAULT_MAX_SWEEPS).unwrap();
        assert_eq!(roots.len(), 5);
        for &r in &roots {
            assert!(backward_residual(&p.coeffs()[..=5], r) < 1e-12);
        }
    }
}
