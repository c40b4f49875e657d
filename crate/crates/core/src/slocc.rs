//! Local-operation action on states and points, construction of the
//! operation from three point correspondences, and the equivalence
//! decision with an explicit witness.
//!
//! Two same-size symmetric states are equivalent under invertible local
//! operations exactly when a single Mobius transformation carries the
//! point multiset of one onto the other. Configurations with at most
//! three distinct points always admit such a map; larger ones are decided
//! by anchoring three points and testing the images of the rest.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::majorana::{majorana_points, points_to_dicke};
use crate::state::{
    DickeVector, LocalOperation, MajoranaDecomposition, SpinorPoint, DEFAULT_TOL,
};

/// Pairwise distinctness floor for point triples fed to the map builder.
pub const TRIPLE_DISTINCT_EPS: f64 = 1e-10;

/// Below this chordal distance cross-ratio inputs count as coincident.
pub const COINCIDENT_EPS: f64 = 1e-12;

/// A positive decision must reproduce the target within this multiple of
/// the decision tolerance.
pub const WITNESS_TOL_FACTOR: f64 = 10.0;

const IMAGE_NORM_EPS: f64 = 1e-14;

/// Outcome of the equivalence decision. A positive decision always
/// carries a verified witness operation.
#[derive(Debug, Clone)]
pub struct Equivalence {
    pub equivalent: bool,
    pub witness: Option<LocalOperation>,
}

impl Equivalence {
    fn no() -> Self {
        Self {
            equivalent: false,
            witness: None,
        }
    }

    fn yes(witness: LocalOperation) -> Self {
        Self {
            equivalent: true,
            witness: Some(witness),
        }
    }
}

/// Projective action of an operation on a sphere point.
///
/// The image of the infinity point `(1, 0)` is the first matrix column.
pub fn mobius_apply(op: &LocalOperation, p: &SpinorPoint) -> Result<SpinorPoint> {
    let (a, b) = op.apply_raw(p.alpha(), p.beta());
    if (a.norm_sqr() + b.norm_sqr()).sqrt() < IMAGE_NORM_EPS {
        return Err(Error::DegenerateImage);
    }
    SpinorPoint::new(a, b)
}

/// Applies `op` to every qubit of a symmetric state by mapping each of
/// its points and rebuilding the coefficients. Uses [`DEFAULT_TOL`] for
/// the decomposition.
pub fn apply_ilo_symmetric(op: &LocalOperation, state: &DickeVector) -> Result<DickeVector> {
    apply_ilo_symmetric_with_tol(op, state, DEFAULT_TOL)
}

/// [`apply_ilo_symmetric`] with an explicit clustering tolerance.
pub fn apply_ilo_symmetric_with_tol(
    op: &LocalOperation,
    state: &DickeVector,
    tol: f64,
) -> Result<DickeVector> {
    let decomp = majorana_points(state, tol)?;
    let mapped = decomp
        .points()
        .iter()
        .map(|&(p, m)| mobius_apply(op, &p).map(|q| (q, m)))
        .collect::<Result<Vec<_>>>()?;
    let out = MajoranaDecomposition::new(state.n_qubits(), mapped)?;
    Ok(points_to_dicke(&out))
}

fn min_pairwise(points: &[SpinorPoint; 3]) -> f64 {
    let mut min = f64::INFINITY;
    for i in 0..3 {
        for j in (i + 1)..3 {
            min = min.min(points[i].chordal_distance(&points[j]));
        }
    }
    min
}

/// 2x2 matrix sending a distinct triple to the reference triple
/// (origin, ratio-one, infinity), built from pair determinants so the
/// infinity point needs no special case.
fn to_reference(t: &[SpinorPoint; 3]) -> LocalOperation {
    let det = |p: &SpinorPoint, q: &SpinorPoint| p.alpha() * q.beta() - q.alpha() * p.beta();
    let d23 = det(&t[1], &t[2]);
    let d21 = det(&t[1], &t[0]);
    let a = t[0].beta() * d23;
    let b = -t[0].alpha() * d23;
    let c = t[2].beta() * d21;
    let d = -t[2].alpha() * d21;
    LocalOperation::new(a, b, c, d).expect("distinct triple gives invertible map")
}

/// Constructs the operation mapping `src[i]` to `dst[i]` projectively.
///
/// When `mults` is supplied, the result is rescaled so that the product
/// of the per-point scale factors raised to the multiplicities is one,
/// which makes the operation carry the unnormalized point-product state
/// exactly onto the target rather than onto a multiple of it.
pub fn mobius_from_pairs(
    src: &[SpinorPoint; 3],
    dst: &[SpinorPoint; 3],
    mults: Option<[usize; 3]>,
) -> Result<LocalOperation> {
    let sep = min_pairwise(src).min(min_pairwise(dst));
    if sep <= TRIPLE_DISTINCT_EPS {
        return Err(Error::DegenerateTriple(sep));
    }
    let ms = to_reference(src);
    let md = to_reference(dst);
    // A = md^{-1} ms, with the inverse taken projectively (adjugate)
    let [[da, db], [dc, dd]] = md.entries();
    let [[sa, sb], [sc, sd]] = ms.entries();
    let a = dd * sa - db * sc;
    let b = dd * sb - db * sd;
    let c = -dc * sa + da * sc;
    let d = -dc * sb + da * sd;
    let scale = [a, b, c, d].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut op = LocalOperation::new(a / scale, b / scale, c / scale, d / scale)?;

    let mut worst = 0.0f64;
    for (s, t) in src.iter().zip(dst) {
        worst = worst.max(mobius_apply(&op, s)?.chordal_distance(t));
    }
    if worst >= TRIPLE_DISTINCT_EPS {
        return Err(Error::DegenerateTriple(worst));
    }

    if let Some(ns) = mults {
        let n: usize = ns.iter().sum();
        let mut product = Complex64::ONE;
        for (i, (s, t)) in src.iter().zip(dst).enumerate() {
            let (va, vb) = op.apply_raw(s.alpha(), s.beta());
            let e = if t.alpha().norm() >= t.beta().norm() {
                va / t.alpha()
            } else {
                vb / t.beta()
            };
            product *= e.powi(ns[i] as i32);
        }
        let correction = product.powf(-1.0 / n as f64);
        op = op.scaled(correction);
    }
    Ok(op)
}

/// Sum of two distinct points, renormalized; always distinct from both.
fn midpoint(p: &SpinorPoint, q: &SpinorPoint) -> SpinorPoint {
    SpinorPoint::new(p.alpha() + q.alpha(), p.beta() + q.beta())
        .expect("sum of distinct projective points is nonzero")
}

fn verify_witness(op: &LocalOperation, s1: &DickeVector, s2: &DickeVector, tol: f64) -> bool {
    match apply_ilo_symmetric_with_tol(op, s1, tol) {
        Ok(image) => image.max_coeff_distance(s2) <= WITNESS_TOL_FACTOR * tol,
        Err(_) => false,
    }
}

/// Multiplicity-respecting greedy matching of two point multisets under
/// chordal distance `tol`. Returns true when the matching is a bijection.
fn multiset_match(
    xs: &[(SpinorPoint, usize)],
    ys: &[(SpinorPoint, usize)],
    tol: f64,
) -> bool {
    if xs.len() != ys.len() {
        return false;
    }
    let mut used = vec![false; ys.len()];
    for &(p, m) in xs {
        let mut best: Option<(usize, f64)> = None;
        for (j, &(q, mq)) in ys.iter().enumerate() {
            if used[j] || mq != m {
                continue;
            }
            let dist = p.chordal_distance(&q);
            if best.map_or(true, |(_, bd)| dist < bd) {
                best = Some((j, dist));
            }
        }
        match best {
            Some((j, dist)) if dist < tol => used[j] = true,
            _ => return false,
        }
    }
    true
}

/// Decides whether two same-size states are connected by an invertible
/// local operation, returning a verified witness on success.
///
/// Different configurations are immediately inequivalent. With at most
/// three distinct points a witness always exists and is built directly;
/// otherwise three anchor points of the first state are mapped to every
/// multiplicity-compatible triple of the second and the remaining point
/// images are compared as multisets.
pub fn slocc_equivalent(s1: &DickeVector, s2: &DickeVector, tol: f64) -> Result<Equivalence> {
    if s1.n_qubits() != s2.n_qubits() {
        return Err(Error::QubitCountMismatch {
            left: s1.n_qubits(),
            right: s2.n_qubits(),
        });
    }
    let m1 = majorana_points(s1, tol)?;
    let m2 = majorana_points(s2, tol)?;
    if m1.configuration() != m2.configuration() {
        return Ok(Equivalence::no());
    }
    if m1.diversity() <= 3 {
        let op = single_class_witness(&m1, &m2, s1, s2, tol)?;
        Ok(Equivalence::yes(op))
    } else {
        anchored_search(&m1, &m2, s1, s2, tol)
    }
}

/// Witness for configurations with at most three distinct points.
///
/// Anchors may only map to points of equal multiplicity; assignments
/// within equal-multiplicity groups are tried until one verifies. Triples
/// with fewer than three real points are completed with synthetic pairs
/// (the antipodal point and the renormalized midpoint), which any valid
/// witness may carry along.
fn single_class_witness(
    m1: &MajoranaDecomposition,
    m2: &MajoranaDecomposition,
    s1: &DickeVector,
    s2: &DickeVector,
    tol: f64,
) -> Result<LocalOperation> {
    let src: Vec<(SpinorPoint, usize)> = m1.points().to_vec();
    let dst: Vec<(SpinorPoint, usize)> = m2.points().to_vec();
    for assignment in multiplicity_assignments(&src, &dst) {
        let (s_triple, d_triple) = complete_triple(&src, &assignment);
        let op = match mobius_from_pairs(&s_triple, &d_triple, None) {
            Ok(op) => op,
            Err(_) => continue,
        };
        if verify_witness(&op, s1, s2, tol) {
            return Ok(op);
        }
    }
    Err(Error::WitnessNotFound)
}

/// All ways to pair source points with equal-multiplicity target points.
fn multiplicity_assignments(
    src: &[(SpinorPoint, usize)],
    dst: &[(SpinorPoint, usize)],
) -> Vec<Vec<SpinorPoint>> {
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(src.len());
    fn recurse(
        src: &[(SpinorPoint, usize)],
        dst: &[(SpinorPoint, usize)],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<SpinorPoint>>,
    ) {
        if chosen.len() == src.len() {
            out.push(chosen.iter().map(|&j| dst[j].0).collect());
            return;
        }
        let i = chosen.len();
        for j in 0..dst.len() {
            if !chosen.contains(&j) && dst[j].1 == src[i].1 {
                chosen.push(j);
                recurse(src, dst, chosen, out);
                chosen.pop();
            }
        }
    }
    recurse(src, dst, &mut chosen, &mut out);
    out
}

/// Extends one- and two-point anchor lists to full triples with
/// deterministic synthetic companions on both sides.
fn complete_triple(
    src: &[(SpinorPoint, usize)],
    dst_points: &[SpinorPoint],
) -> ([SpinorPoint; 3], [SpinorPoint; 3]) {
    match src.len() {
        1 => {
            let p = src[0].0;
            let q = dst_points[0];
            let p2 = p.orthogonal();
            let q2 = q.orthogonal();
            (
                [p, p2, midpoint(&p, &p2)],
                [q, q2, midpoint(&q, &q2)],
            )
        }
        2 => {
            let (pa, pb) = (src[0].0, src[1].0);
            let (qa, qb) = (dst_points[0], dst_points[1]);
            (
                [pa, pb, midpoint(&pa, &pb)],
                [qa, qb, midpoint(&qa, &qb)],
            )
        }
        _ => (
            [src[0].0, src[1].0, src[2].0],
            [dst_points[0], dst_points[1], dst_points[2]],
        ),
    }
}

/// Equivalence search for four or more distinct points: anchor the first
/// three points of `m1`, try every multiplicity-matched ordered triple of
/// `m2`, and accept the first map that carries the remaining points onto
/// the remaining points.
fn anchored_search(
    m1: &MajoranaDecomposition,
    m2: &MajoranaDecomposition,
    s1: &DickeVector,
    s2: &DickeVector,
    tol: f64,
) -> Result<Equivalence> {
    let pts1 = m1.points();
    let pts2 = m2.points();
    let src = [pts1[0].0, pts1[1].0, pts1[2].0];
    let src_mults = [pts1[0].1, pts1[1].1, pts1[2].1];
    let rest1 = &pts1[3..];

    let k = pts2.len();
    for i in 0..k {
        if pts2[i].1 != src_mults[0] {
            continue;
        }
        for j in 0..k {
            if j == i || pts2[j].1 != src_mults[1] {
                continue;
            }
            for l in 0..k {
                if l == i || l == j || pts2[l].1 != src_mults[2] {
                    continue;
                }
                let dst = [pts2[i].0, pts2[j].0, pts2[l].0];
                let op = match mobius_from_pairs(&src, &dst, None) {
                    Ok(op) => op,
                    Err(_) => continue,
                };
                let images = rest1
                    .iter()
                    .map(|&(p, m)| mobius_apply(&op, &p).map(|q| (q, m)))
                    .collect::<Result<Vec<_>>>()?;
                let remaining: Vec<(SpinorPoint, usize)> = pts2
                    .iter()
                    .enumerate()
                    .filter(|&(idx, _)| idx != i && idx != j && idx != l)
                    .map(|(_, &pm)| pm)
                    .collect();
                if multiset_match(&images, &remaining, tol)
                    && verify_witness(&op, s1, s2, tol)
                {
                    return Ok(Equivalence::yes(op));
                }
            }
        }
    }
    Ok(Equivalence::no())
}

/// Normal form of a state with at least three distinct points: the three
/// points of highest multiplicity (ties broken by ratio magnitude, then
/// phase) are sent to infinity, the origin and the ratio-one point. The
/// images of the other points are the continuous class coordinates.
pub fn canonical_form(state: &DickeVector, tol: f64) -> Result<MajoranaDecomposition> {
    let m = majorana_points(state, tol)?;
    if m.diversity() < 3 {
        return Err(Error::TooFewPoints(m.diversity()));
    }
    let pts = m.points();
    let anchors = [pts[0].0, pts[1].0, pts[2].0];
    let reference = [SpinorPoint::infinity(), SpinorPoint::zero(), SpinorPoint::one()];
    let op = mobius_from_pairs(&anchors, &reference, None)?;
    let mut mapped: Vec<(SpinorPoint, usize)> = Vec::with_capacity(pts.len());
    for (idx, &(p, mult)) in pts.iter().enumerate() {
        let image = if idx < 3 {
            reference[idx]
        } else {
            mobius_apply(&op, &p)?
        };
        mapped.push((image, mult));
    }
    MajoranaDecomposition::new(state.n_qubits(), mapped)
}

/// Cross-ratio of four pairwise distinct points in ratio coordinates,
/// `(z1-z3)(z2-z4) / ((z1-z4)(z2-z3))`, evaluated through pair
/// determinants so points at infinity need no limit handling. Invariant
/// under a simultaneous Mobius action on all four points.
pub fn cross_ratio(
    p1: &SpinorPoint,
    p2: &SpinorPoint,
    p3: &SpinorPoint,
    p4: &SpinorPoint,
) -> Result<Complex64> {
    let pts = [p1, p2, p3, p4];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pts[i].chordal_distance(pts[j]) < COINCIDENT_EPS {
                return Err(Error::DegeneratePoints);
            }
        }
    }
    let det = |p: &SpinorPoint, q: &SpinorPoint| p.alpha() * q.beta() - q.alpha() * p.beta();
    Ok((det(p1, p3) * det(p2, p4)) / (det(p1, p4) * det(p2, p3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::DegeneracyConfiguration;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mobius_identity_fixes_points() {
        let p = SpinorPoint::from_ratio(c(0.3, -1.2));
        let q = mobius_apply(&LocalOperation::identity(), &p).unwrap();
        assert!(p.chordal_distance(&q) < 1e-15);
    }

    #[test]
    fn swap_sends_infinity_to_origin() {
        let q = mobius_apply(&LocalOperation::swap(), &SpinorPoint::infinity()).unwrap();
        assert_eq!(q, SpinorPoint::zero());
    }

    #[test]
    fn translation_shifts_ratio() {
        // [[1,1],[0,1]] acts as z -> z + 1 on ratio coordinates
        let op = LocalOperation::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let z = c(0.7, -0.4);
        let image = mobius_apply(&op, &SpinorPoint::from_ratio(z)).unwrap();
        assert!((image.ratio().unwrap() - (z + Complex64::ONE)).norm() < 1e-13);
    }

    #[test]
    fn apply_identity_is_gauge_exact() {
        let s = DickeVector::ghz(4);
        let t = apply_ilo_symmetric(&LocalOperation::identity(), &s).unwrap();
        assert!(t.approx_eq(&s, 1e-12));
    }

    #[test]
    fn pairs_map_identity() {
        let triple = [
            SpinorPoint::infinity(),
            SpinorPoint::zero(),
            SpinorPoint::one(),
        ];
        let op = mobius_from_pairs(&triple, &triple, None).unwrap();
        for p in &triple {
            assert!(mobius_apply(&op, p).unwrap().chordal_distance(p) < 1e-12);
        }
    }

    #[test]
    fn pairs_map_swap() {
        let src = [
            SpinorPoint::infinity(),
            SpinorPoint::zero(),
            SpinorPoint::one(),
        ];
        let dst = [
            SpinorPoint::zero(),
            SpinorPoint::infinity(),
            SpinorPoint::one(),
        ];
        let op = mobius_from_pairs(&src, &dst, None).unwrap();
        // projectively the swap matrix: off-diagonal dominant, diagonal zero
        let e = op.entries();
        let off = e[0][1].norm().min(e[1][0].norm());
        let diag = e[0][0].norm().max(e[1][1].norm());
        assert!(diag < 1e-12 * off);
    }

    #[test]
    fn degenerate_triple_rejected() {
        let p = SpinorPoint::one();
        let src = [SpinorPoint::infinity(), p, p];
        let dst = [
            SpinorPoint::infinity(),
            SpinorPoint::zero(),
            SpinorPoint::one(),
        ];
        assert!(matches!(
            mobius_from_pairs(&src, &dst, None),
            Err(Error::DegenerateTriple(_))
        ));
    }

    #[test]
    fn scalar_constraint_mode() {
        let src = [
            SpinorPoint::from_ratio(c(0.2, 0.1)),
            SpinorPoint::from_ratio(c(-1.0, 0.8)),
            SpinorPoint::from_ratio(c(2.5, -0.3)),
        ];
        let dst = [
            SpinorPoint::infinity(),
            SpinorPoint::zero(),
            SpinorPoint::one(),
        ];
        let mults = [2usize, 1, 1];
        let op = mobius_from_pairs(&src, &dst, Some(mults)).unwrap();
        let mut product = Complex64::ONE;
        for (i, (s, t)) in src.iter().zip(&dst).enumerate() {
            let (va, vb) = op.apply_raw(s.alpha(), s.beta());
            let e = if t.alpha().norm() >= t.beta().norm() {
                va / t.alpha()
            } else {
                vb / t.beta()
            };
            product *= e.powi(mults[i] as i32);
        }
        assert!((product - Complex64::ONE).norm() < 1e-10);
    }

    #[test]
    fn dicke_complement_equivalent() {
        let a = DickeVector::dicke(4, 1);
        let b = DickeVector::dicke(4, 3);
        let r = slocc_equivalent(&a, &b, DEFAULT_TOL).unwrap();
        assert!(r.equivalent);
        let w = r.witness.unwrap();
        assert!(verify_witness(&w, &a, &b, DEFAULT_TOL));
    }

    #[test]
    fn distinct_dicke_inequivalent() {
        let a = DickeVector::dicke(4, 1);
        let b = DickeVector::dicke(4, 2);
        let r = slocc_equivalent(&a, &b, DEFAULT_TOL).unwrap();
        assert!(!r.equivalent);
        assert!(r.witness.is_none());
    }

    #[test]
    fn qubit_count_mismatch() {
        let a = DickeVector::ghz(3);
        let b = DickeVector::ghz(4);
        assert!(matches!(
            slocc_equivalent(&a, &b, DEFAULT_TOL),
            Err(Error::QubitCountMismatch { .. })
        ));
    }

    #[test]
    fn canonical_form_d3() {
        // (|D_4^(0)> + |D_4^(2)>)/sqrt(2) has points {inf, inf, r, -r}
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let raw = [c(r, 0.0), c(0.0, 0.0), c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let s = DickeVector::new(4, &raw).unwrap();
        let canon = canonical_form(&s, DEFAULT_TOL).unwrap();
        assert_eq!(
            canon.configuration(),
            DegeneracyConfiguration::new(vec![2, 1, 1]).unwrap()
        );
        assert!(canon.points()[0].0.is_infinity());
        assert_eq!(canon.points()[0].1, 2);
        assert!(canon.points()[1].0.chordal_distance(&SpinorPoint::zero()) < 1e-12
            || canon.points()[1].0.chordal_distance(&SpinorPoint::one()) < 1e-12);
    }

    #[test]
    fn canonical_form_residual_counts() {
        let ghz4 = canonical_form(&DickeVector::ghz(4), DEFAULT_TOL).unwrap();
        assert_eq!(ghz4.diversity(), 4);
        let ghz5 = canonical_form(&DickeVector::ghz(5), DEFAULT_TOL).unwrap();
        assert_eq!(ghz5.diversity(), 5);
        // three reference anchors plus the residual points
        let refs = [SpinorPoint::infinity(), SpinorPoint::zero(), SpinorPoint::one()];
        for refp in &refs {
            assert!(ghz4
                .points()
                .iter()
                .any(|(p, _)| p.chordal_distance(refp) < 1e-10));
        }
        let err = canonical_form(&DickeVector::dicke(4, 1), DEFAULT_TOL);
        assert!(matches!(err, Err(Error::TooFewPoints(2))));
    }

    #[test]
    fn cross_ratio_normalization() {
        let z = c(0.37, -2.2);
        let cr = cross_ratio(
            &SpinorPoint::infinity(),
            &SpinorPoint::zero(),
            &SpinorPoint::one(),
            &SpinorPoint::from_ratio(z),
        )
        .unwrap();
        assert!((cr - z).norm() < 1e-12);
    }

    #[test]
    fn cross_ratio_rejects_coincident() {
        let p = SpinorPoint::one();
        assert!(matches!(
            cross_ratio(&p, &p, &SpinorPoint::zero(), &SpinorPoint::infinity()),
            Err(Error::DegeneratePoints)
        ));
    }

    #[test]
    fn ghz4_cross_ratio_harmonic() {
        let pts: Vec<SpinorPoint> = crate::classification::ghz_points(4)
            .points()
            .iter()
            .map(|&(p, _)| p)
            .collect();
        let cr = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
        let orbit = [c(-1.0, 0.0), c(2.0, 0.0), c(0.5, 0.0)];
        assert!(
            orbit.iter().any(|v| (cr - v).norm() < 1e-10),
            "cross ratio {cr} not harmonic"
        );
    }
}
