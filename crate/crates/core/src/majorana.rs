//! Conversion between the Dicke-coefficient form and the point multiset
//! form of a symmetric state.
//!
//! A state with coefficients `d_0..d_N` maps to the polynomial with
//! coefficient `(-1)^k sqrt(C(N,k)) d_k` at degree k. Its K roots are the
//! ratio coordinates of K sphere points; the remaining N-K points sit at
//! infinity. The reverse direction expands the product of the point
//! factors `(beta z - alpha)` and divides the binomial weights back out.

use num_complex::Complex64;

use crate::error::Result;
use crate::polynomial::{ComplexPolynomial, DEFAULT_MAX_SWEEPS};
use crate::state::{DickeVector, MajoranaDecomposition, SpinorPoint};

/// Binomial coefficient as a float; exact integer arithmetic while it fits.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    if n <= 100 {
        let mut acc: u128 = 1;
        for i in 1..=k {
            acc = acc * (n - k + i) as u128 / i as u128;
        }
        acc as f64
    } else {
        let mut acc = 1.0f64;
        for i in 1..=k {
            acc = acc * (n - k + i) as f64 / i as f64;
        }
        acc
    }
}

/// The root polynomial of a state: coefficient k is
/// `(-1)^k sqrt(C(N,k)) d_k`.
pub fn dicke_to_polynomial(state: &DickeVector) -> ComplexPolynomial {
    let n = state.n_qubits();
    let coeffs = state
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, d)| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            d * sign * binomial(n, k).sqrt()
        })
        .collect();
    ComplexPolynomial::new(coeffs)
}

/// All roots of the significant part of the polynomial, with multiplicity.
pub fn polynomial_roots(poly: &ComplexPolynomial) -> Result<Vec<Complex64>> {
    poly.roots(DEFAULT_MAX_SWEEPS)
}

/// Decomposes a state into its sphere points.
///
/// The K polynomial roots become finite points, N-K copies of the
/// infinity point complete the multiset, and points closer than `tol` in
/// chordal distance merge into one point whose multiplicity is the cluster
/// size. A cluster that touches the exact infinity point keeps the exact
/// `(1, 0)` representation; any other cluster is represented by its
/// phase-aligned normalized mean.
pub fn majorana_points(state: &DickeVector, tol: f64) -> Result<MajoranaDecomposition> {
    let n = state.n_qubits();
    let poly = dicke_to_polynomial(state);
    let k = poly.degree();
    let roots = poly.roots(DEFAULT_MAX_SWEEPS)?;
    debug_assert_eq!(roots.len(), k);

    let mut members: Vec<SpinorPoint> = roots.iter().map(|&z| SpinorPoint::from_ratio(z)).collect();
    members.extend(std::iter::repeat(SpinorPoint::infinity()).take(n - k));

    let mut clusters: Vec<(SpinorPoint, usize)> = cluster_points(&members, tol)
        .into_iter()
        .map(|(rep, idxs)| (rep, idxs.len()))
        .collect();
    // re-merge representatives that ended up within tol of each other
    loop {
        let reps: Vec<SpinorPoint> = clusters.iter().map(|c| c.0).collect();
        let regrouped = cluster_points(&reps, tol);
        if regrouped.len() == clusters.len() {
            break;
        }
        clusters = regrouped
            .into_iter()
            .map(|(rep, idxs)| (rep, idxs.iter().map(|&i| clusters[i].1).sum()))
            .collect();
    }

    MajoranaDecomposition::new(n, clusters)
}

/// Single-link clustering of spinor points at chordal radius `tol`;
/// returns each group's representative and member indices.
fn cluster_points(points: &[SpinorPoint], tol: f64) -> Vec<(SpinorPoint, Vec<usize>)> {
    let mut pool: Vec<usize> = (0..points.len()).collect();
    let mut out = Vec::new();
    while let Some(seed) = pool.pop() {
        let mut group = vec![seed];
        loop {
            let before = pool.len();
            pool.retain(|&q| {
                if group
                    .iter()
                    .any(|&m| points[q].chordal_distance(&points[m]) <= tol)
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
        group.sort_unstable();
        let rep = cluster_representative(points, &group);
        out.push((rep, group));
    }
    out
}

fn cluster_representative(points: &[SpinorPoint], group: &[usize]) -> SpinorPoint {
    if group.iter().any(|&i| points[i].is_infinity()) {
        return SpinorPoint::infinity();
    }
    let reference = points[group[0]];
    let mut alpha = Complex64::ZERO;
    let mut beta = Complex64::ZERO;
    for &i in group {
        let p = points[i];
        let overlap = reference.alpha().conj() * p.alpha() + reference.beta().conj() * p.beta();
        let phase = if overlap.norm() > 0.0 {
            overlap.conj() / overlap.norm()
        } else {
            Complex64::ONE
        };
        alpha += p.alpha() * phase;
        beta += p.beta() * phase;
    }
    SpinorPoint::new(alpha, beta).expect("cluster mean of unit spinors is nonzero")
}

/// Rebuilds the Dicke coefficients from a point multiset.
///
/// Multiplies out `prod_i (beta_i z - alpha_i)` over all N points (the
/// infinity point contributes a constant factor, which drops the top
/// degrees automatically), divides out the binomial weights with the
/// alternating sign, and renormalizes.
pub fn points_to_dicke(decomp: &MajoranaDecomposition) -> DickeVector {
    let n = decomp.n_qubits();
    let mut prod: Vec<Complex64> = Vec::with_capacity(n + 1);
    prod.push(Complex64::ONE);
    for &(p, mult) in decomp.points() {
        let neg_alpha = -p.alpha();
        let beta = p.beta();
        for _ in 0..mult {
            let mut next = vec![Complex64::ZERO; prod.len() + 1];
            for (i, &q) in prod.iter().enumerate() {
                next[i] += q * neg_alpha;
                next[i + 1] += q * beta;
            }
            prod = next;
        }
    }
    debug_assert_eq!(prod.len(), n + 1);
    let raw: Vec<Complex64> = prod
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            c * sign / binomial(n, k).sqrt()
        })
        .collect();
    DickeVector::new(n, &raw).expect("point product polynomial cannot vanish")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::DEFAULT_TOL;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ghz3_polynomial() {
        let p = dicke_to_polynomial(&DickeVector::ghz(3));
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let expect = [c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-r, 0.0)];
        for (a, b) in p.coeffs().iter().zip(&expect) {
            assert!((a - b).norm() < 1e-15);
        }
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn dicke41_polynomial_is_minus_two_z() {
        let p = dicke_to_polynomial(&DickeVector::dicke(4, 1));
        assert_eq!(p.degree(), 1);
        assert!((p.coeffs()[1] - c(-2.0, 0.0)).norm() < 1e-15);
        assert!(p.coeffs()[0].norm() < 1e-15);
    }

    #[test]
    fn all_ones_polynomial_is_constant() {
        let p = dicke_to_polynomial(&DickeVector::dicke(5, 0));
        assert_eq!(p.degree(), 0);
        assert!((p.coeffs()[0] - Complex64::ONE).norm() < 1e-15);
    }

    #[test]
    fn dicke_state_points() {
        for (n, k) in [(4usize, 1usize), (6, 3), (5, 2)] {
            let d = majorana_points(&DickeVector::dicke(n, k), DEFAULT_TOL).unwrap();
            assert_eq!(d.diversity(), 2);
            let infinity_mult = d
                .points()
                .iter()
                .find(|(p, _)| p.is_infinity())
                .map(|&(_, m)| m)
                .unwrap();
            assert_eq!(infinity_mult, n - k);
            let zero_mult = d
                .points()
                .iter()
                .find(|(p, _)| p.chordal_distance(&SpinorPoint::zero()) < 1e-12)
                .map(|&(_, m)| m)
                .unwrap();
            assert_eq!(zero_mult, k);
        }
    }

    #[test]
    fn ghz3_points_are_cube_roots_of_unity() {
        let d = majorana_points(&DickeVector::ghz(3), DEFAULT_TOL).unwrap();
        assert_eq!(d.diversity(), 3);
        for &(p, m) in d.points() {
            assert_eq!(m, 1);
            let z = p.ratio().unwrap();
            assert!((z.powi(3) - Complex64::ONE).norm() < 1e-11);
        }
    }

    #[test]
    fn separable_all_ones() {
        let d = majorana_points(&DickeVector::dicke(6, 0), DEFAULT_TOL).unwrap();
        assert_eq!(d.diversity(), 1);
        assert!(d.points()[0].0.is_infinity());
        assert_eq!(d.points()[0].1, 6);
    }

    #[test]
    fn points_to_dicke_recovers_dicke_states() {
        for (n, k) in [(4usize, 1usize), (7, 3), (9, 4)] {
            let decomp = MajoranaDecomposition::new(
                n,
                vec![(SpinorPoint::infinity(), n - k), (SpinorPoint::zero(), k)],
            )
            .unwrap();
            let s = points_to_dicke(&decomp);
            assert!(s.approx_eq(&DickeVector::dicke(n, k), 1e-14));
        }
    }

    #[test]
    fn points_to_dicke_separable() {
        let decomp = MajoranaDecomposition::new(5, vec![(SpinorPoint::infinity(), 5)]).unwrap();
        let s = points_to_dicke(&decomp);
        assert!(s.approx_eq(&DickeVector::dicke(5, 0), 1e-14));
    }

    #[test]
    fn round_trip_ghz() {
        for n in 2..=10 {
            let s = DickeVector::ghz(n);
            let d = majorana_points(&s, DEFAULT_TOL).unwrap();
            assert_eq!(d.diversity(), n);
            let back = points_to_dicke(&d);
            assert!(back.approx_eq(&s, 1e-10), "n = {n}");
        }
    }

    #[test]
    fn infinity_multiplicity_matches_degree_gap() {
        // d_0 only plus a small top coefficient: degree 2 of a 5-qubit state
        let mut raw = vec![Complex64::ZERO; 6];
        raw[0] = c(1.0, 0.0);
        raw[2] = c(0.5, 0.2);
        let s = DickeVector::new(5, &raw).unwrap();
        let poly = dicke_to_polynomial(&s);
        assert_eq!(poly.degree(), 2);
        let d = majorana_points(&s, DEFAULT_TOL).unwrap();
        let inf_mult: usize = d
            .points()
            .iter()
            .filter(|(p, _)| p.is_infinity())
            .map(|&(_, m)| m)
            .sum();
        assert_eq!(inf_mult, 5 - 2);
    }
}
