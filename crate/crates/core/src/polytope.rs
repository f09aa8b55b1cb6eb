//! Faces of `BME(n, k)` checked against the full vertex set.
//!
//! A face is given by a linear functional and a bound. It is valid when no
//! vertex violates it; its tight set is the vertices meeting it with
//! equality. A valid functional whose tight set spans an affine space of
//! dimension `dim BME(n, k) - 1` defines a facet.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::enumerate::enumerate_networks;
use crate::error::{Error, Result};
use crate::linalg::{affine_dimension_ints, det_i128, nullspace};
use crate::metric::{metric_from_splits, WeightedSplitSystem};
use crate::network::{Network, SplitSystem};
use crate::rational::{self, Rational};
use crate::split::{CircularOrdering, Split};
use crate::vector::{incidence_ints, network_ints, pair_count, pair_index, pairs, twist_decompose, RationalVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sense {
    Le,
    Ge,
}

impl Sense {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
        }
    }
}

/// `coeffs · x (<= | >=) bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFunctional {
    pub coeffs: RationalVector,
    pub bound: Rational,
    pub sense: Sense,
}

impl LinearFunctional {
    /// Integer coefficients given per pair.
    pub fn from_terms(n: usize, terms: &[((usize, usize), i64)], bound: Rational, sense: Sense) -> LinearFunctional {
        let mut coeffs = RationalVector::zeros(n);
        for &((i, j), c) in terms {
            let cur = coeffs.get(i, j).clone();
            coeffs.set(i, j, cur + rational::int(c));
        }
        LinearFunctional { coeffs, bound, sense }
    }

    pub fn value(&self, x: &[i64]) -> Rational {
        self.coeffs
            .entries()
            .iter()
            .zip(x)
            .filter(|(c, v)| !c.is_zero() && **v != 0)
            .map(|(c, &v)| c * rational::int(v))
            .sum()
    }

    pub fn satisfied_by(&self, x: &[i64]) -> bool {
        let v = self.value(x);
        match self.sense {
            Sense::Le => v <= self.bound,
            Sense::Ge => v >= self.bound,
        }
    }
}

impl fmt::Display for LinearFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.coeffs.n();
        let mut terms = Vec::new();
        for ((i, j), c) in pairs(n).zip(self.coeffs.entries()) {
            if !c.is_zero() {
                terms.push(format!("{}*x{i}_{j}", rational::format(c)));
            }
        }
        write!(f, "{} {} {}", terms.join(" + "), self.sense.as_str(), rational::format(&self.bound))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    Split,
    Lower,
    Excluded,
    Cyclic,
    Caterpillar,
    Cherry,
    Refinement,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Split => "split",
            Family::Lower => "lower",
            Family::Excluded => "excluded",
            Family::Cyclic => "cyclic",
            Family::Caterpillar => "caterpillar",
            Family::Cherry => "cherry",
            Family::Refinement => "refinement",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceReport {
    pub family: Family,
    /// Human-readable name of the face, e.g. the split or pair it comes from.
    pub label: String,
    pub functional: LinearFunctional,
    pub valid: bool,
    pub tight: Vec<Network>,
    pub tight_count: usize,
    /// Affine dimension of the tight set; `None` when it is empty.
    pub tight_dim: Option<usize>,
}

/// All vertices of `BME(n, k)` with their integer vectors, in key order.
#[derive(Clone, Debug)]
pub struct Vertices {
    pub n: usize,
    pub k: usize,
    pub networks: Vec<Network>,
    pub xs: Vec<Vec<i64>>,
}

impl Vertices {
    pub fn new(n: usize, k: usize) -> Result<Vertices> {
        let networks: Vec<Network> = enumerate_networks(n, k)?.collect();
        let xs = networks.iter().map(network_ints).collect();
        Ok(Vertices { n, k, networks, xs })
    }

    pub fn vectors(&self) -> Vec<RationalVector> {
        self.xs.iter().map(|x| RationalVector::from_ints(self.n, x).expect("length matches")).collect()
    }

    pub fn dimension(&self) -> Result<usize> {
        affine_dimension_ints(&self.xs)
    }

    /// Checks `functional` on every vertex.
    pub fn face(&self, family: Family, label: impl Into<String>, functional: LinearFunctional) -> FaceReport {
        let mut valid = true;
        let mut tight = Vec::new();
        let mut tight_xs = Vec::new();
        for (net, x) in self.networks.iter().zip(&self.xs) {
            let v = functional.value(x);
            let ok = match functional.sense {
                Sense::Le => v <= functional.bound,
                Sense::Ge => v >= functional.bound,
            };
            valid &= ok;
            if v == functional.bound {
                tight.push(net.clone());
                tight_xs.push(x.clone());
            }
        }
        let tight_dim = affine_dimension_ints(&tight_xs).ok();
        FaceReport { family, label: label.into(), functional, valid, tight_count: tight.len(), tight, tight_dim }
    }
}

/// Every per-leaf sum of `v` equals `2^(k+1)`.
pub fn check_degree_equalities(v: &RationalVector, n: usize, k: usize) -> bool {
    v.n() == n && (1..=n).all(|j| v.degree(j) == rational::int(1 << (k + 1)))
}

/// `Σ_{i<j in A} x_ij <= (|A| - 1) 2^k` for the smaller side `A`.
pub fn split_functional(n: usize, k: usize, s: &Split) -> Result<LinearFunctional> {
    let (small, _) = s.sizes();
    if small < 2 {
        return Err(Error::TrivialSplit(s.to_string()));
    }
    let side = crate::split::taxa_of(s.smaller_mask());
    let mut terms = Vec::new();
    for (a, &i) in side.iter().enumerate() {
        for &j in &side[a + 1..] {
            terms.push(((i, j), 1));
        }
    }
    Ok(LinearFunctional::from_terms(n, &terms, rational::int(((side.len() - 1) as i64) << k), Sense::Le))
}

pub fn split_face(n: usize, k: usize, s: &Split) -> Result<FaceReport> {
    split_face_on(&Vertices::new(n, k)?, s)
}

pub fn split_face_on(vertices: &Vertices, s: &Split) -> Result<FaceReport> {
    if s.n() != vertices.n {
        return Err(Error::AmbientMismatch(s.n(), vertices.n));
    }
    let f = split_functional(vertices.n, vertices.k, s)?;
    Ok(vertices.face(Family::Split, s.to_string(), f))
}

/// `x_ij >= 0`, or the caterpillar bound `x_ij >= 1` on trees.
pub fn lower_bound_face(n: usize, k: usize, pair: (usize, usize)) -> Result<FaceReport> {
    lower_bound_face_on(&Vertices::new(n, k)?, pair)
}

pub fn lower_bound_face_on(vertices: &Vertices, (i, j): (usize, usize)) -> Result<FaceReport> {
    let (n, k) = (vertices.n, vertices.k);
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::OutOfRange { n, k });
    }
    let tree = k == n - 3;
    let bound = if tree { 1 } else { 0 };
    let f = LinearFunctional::from_terms(n, &[((i, j), 1)], rational::int(bound), Sense::Ge);
    let family = if tree { Family::Caterpillar } else { Family::Lower };
    Ok(vertices.face(family, format!("x{}_{}", i.min(j), i.max(j)), f))
}

/// `x · d_s >= 2^(k+1) W(s)` for `s` with unit weights.
pub fn refinement_face(system: &SplitSystem, k: usize) -> Result<FaceReport> {
    let available = system.bridges().len();
    if k > available {
        return Err(Error::TooManyBridgesRequested { requested: k, available });
    }
    refinement_face_on(&Vertices::new(system.n(), k)?, system)
}

pub fn refinement_face_on(vertices: &Vertices, system: &SplitSystem) -> Result<FaceReport> {
    let available = system.bridges().len();
    if vertices.k > available {
        return Err(Error::TooManyBridgesRequested { requested: vertices.k, available });
    }
    let ws = WeightedSplitSystem::unit(system);
    let d = metric_from_splits(&ws);
    let bound = ws.total_weight() * rational::int(1 << (vertices.k + 1));
    let f = LinearFunctional { coeffs: d.as_vector(), bound, sense: Sense::Ge };
    let label = system.nontrivial().map(|s| s.to_string()).collect::<Vec<_>>().join(" ");
    Ok(vertices.face(Family::Refinement, label, f))
}

/// `x_ab + x_cd - x_ac - x_bd <= 3` on BME(5,1), `a, b, c, d` in cyclic
/// order with `ab` and `cd` the contiguous pairs.
fn excluded_node_functional(a: usize, b: usize, c: usize, d: usize) -> LinearFunctional {
    LinearFunctional::from_terms(
        5,
        &[((a, b), 1), ((c, d), 1), ((a, c), -1), ((b, d), -1)],
        rational::int(3),
        Sense::Le,
    )
}

/// The 62 facets of BME(5,1): 10 split, 10 lower bound, 30 excluded node,
/// 12 cyclic order.
pub fn bme51_facets() -> Result<Vec<FaceReport>> {
    let vertices = Vertices::new(5, 1)?;
    let mut out = Vec::new();
    for s in Split::all(5).filter(|s| !s.is_trivial()) {
        out.push(split_face_on(&vertices, &s)?);
    }
    for (i, j) in pairs(5) {
        out.push(lower_bound_face_on(&vertices, (i, j))?);
    }
    for excluded in 1..=5 {
        let rest: Vec<usize> = (1..=5).filter(|&t| t != excluded).collect();
        for four in CircularOrdering::all(4) {
            let cyc: Vec<usize> = four.as_slice().iter().map(|&p| rest[p - 1]).collect();
            let [a, b, c, d] = [cyc[0], cyc[1], cyc[2], cyc[3]];
            for (w, x, y, z) in [(a, b, c, d), (b, c, d, a)] {
                out.push(vertices.face(
                    Family::Excluded,
                    format!("{w},{x};{y},{z}"),
                    excluded_node_functional(w, x, y, z),
                ));
            }
        }
    }
    for c in CircularOrdering::all(5) {
        let terms: Vec<((usize, usize), i64)> = c.edges().map(|e| (e, 1)).collect();
        let f = LinearFunctional::from_terms(5, &terms, rational::int(8), Sense::Le);
        out.push(vertices.face(Family::Cyclic, c.to_string(), f));
    }
    Ok(out)
}

/// Known facet families of the tree polytope BME(n, n-3): caterpillar,
/// intersecting-cherry, and splits with both parts of size at least three.
pub fn bme_tree_facets(n: usize) -> Result<Vec<FaceReport>> {
    if n < 5 {
        return Err(Error::OutOfRange { n, k: n.saturating_sub(3) });
    }
    let k = n - 3;
    let vertices = Vertices::new(n, k)?;
    let mut out = Vec::new();
    for pair in pairs(n) {
        out.push(lower_bound_face_on(&vertices, pair)?);
    }
    for b in 1..=n {
        let others: Vec<usize> = (1..=n).filter(|&t| t != b).collect();
        for (p, &a) in others.iter().enumerate() {
            for &c in &others[p + 1..] {
                let f = LinearFunctional::from_terms(
                    n,
                    &[((a.min(b), a.max(b)), 1), ((b.min(c), b.max(c)), 1), ((a, c), -1)],
                    rational::int(1 << k),
                    Sense::Le,
                );
                out.push(vertices.face(Family::Cherry, format!("{a},{b};{b},{c}"), f));
            }
        }
    }
    for s in Split::all(n).filter(|s| s.sizes().0 >= 3) {
        out.push(split_face_on(&vertices, &s)?);
    }
    Ok(out)
}

/// Checks that every vertex of BME(n,k) is the midpoint of two vertices of
/// `2 BME(n,k-1)` and the barycenter of its `2^k` scaled tour vectors.
pub fn verify_nesting(n: usize, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::OutOfRange { n, k });
    }
    let upper = Vertices::new(n, k)?;
    let lower: BTreeSet<Network> = enumerate_networks(n, k - 1)?.collect();
    let scale = 1i64 << k;
    for (net, x) in upper.networks.iter().zip(&upper.xs) {
        for bridge in net.bridges() {
            let (a, b) = twist_decompose(net, bridge)?;
            if !lower.contains(&a) || !lower.contains(&b) {
                return Ok(false);
            }
            let (xa, xb) = (network_ints(&a), network_ints(&b));
            if (0..x.len()).any(|p| 2 * x[p] != 2 * xa[p] + 2 * xb[p]) {
                return Ok(false);
            }
        }
        let tours = net.consistent_orderings();
        if tours.len() != 1 << k {
            return Ok(false);
        }
        let mut sum = vec![0i64; pair_count(n)];
        for c in &tours {
            for (s, v) in sum.iter_mut().zip(incidence_ints(c.as_slice())) {
                *s += scale * v;
            }
        }
        if sum.iter().zip(x).any(|(s, v)| *s != scale * v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of enumerating basic solutions of an inequality system.
#[derive(Clone, Debug)]
pub struct BasicSolutions {
    /// Feasible basic solutions, each as `(numerators, common denominator)`.
    pub points: BTreeSet<Vec<Rational>>,
    pub subsets_checked: u64,
}

/// Enumerates the basic feasible solutions of `facets` restricted to the
/// degree-equality hull `Σ_i x_ij = 2^(k+1)`.
pub fn basic_feasible_solutions(n: usize, k: usize, facets: &[LinearFunctional]) -> Result<BasicSolutions> {
    let dim_full = pair_count(n);
    // Degree equalities and the particular solution x_ij = 2^(k+1)/(n-1).
    let eq_rows: Vec<Vec<Rational>> = (1..=n)
        .map(|j| {
            let mut row = vec![Rational::zero(); dim_full];
            for i in (1..=n).filter(|&i| i != j) {
                row[pair_index(n, i.min(j), i.max(j))] = rational::int(1);
            }
            row
        })
        .collect();
    let basis = nullspace(&eq_rows, dim_full);
    let d = basis.len();
    let base = Rational::new(BigInt::from(1i64 << (k + 1)), BigInt::from(n - 1));
    let base_den = base.denom().clone();
    // Scale the base point to integers: x0 = base_num / base_den on every pair.
    let base_num = base.numer().clone();

    // Each facet as `row · t (<=) rhs`, where x = x0 + basis^T t, with the
    // whole system multiplied through by `base_den` and normalized to `<=`.
    let mut rows: Vec<Vec<i128>> = Vec::new();
    let mut rhs: Vec<i128> = Vec::new();
    for f in facets {
        let sign: i64 = if f.sense == Sense::Le { 1 } else { -1 };
        let lcm = f.coeffs.entries().iter().fold(f.bound.denom().clone(), |acc, c| acc.lcm(c.denom()));
        let coeffs: Vec<BigInt> = f.coeffs.entries().iter().map(|c| c.numer() * (&lcm / c.denom()) * sign).collect();
        let bound = f.bound.numer() * (&lcm / f.bound.denom()) * sign;
        let row: Vec<BigInt> =
            (0..d).map(|b| coeffs.iter().zip(&basis[b]).map(|(c, v)| c * v).sum::<BigInt>() * &base_den).collect();
        let at_base: BigInt = coeffs.iter().map(|c| c * &base_num).sum();
        let r = bound * &base_den - at_base;
        let to_i128 = |v: &BigInt| v.to_i128().ok_or_else(|| Error::Malformed("coefficient overflow".into()));
        rows.push(row.iter().map(to_i128).collect::<Result<_>>()?);
        rhs.push(to_i128(&r)?);
    }

    let m = rows.len();
    let mut points = BTreeSet::new();
    let mut checked = 0u64;
    let mut subset: Vec<usize> = (0..d).collect();
    loop {
        checked += 1;
        let a: Vec<Vec<i128>> = subset.iter().map(|&i| rows[i].clone()).collect();
        let det = det_i128(&a).ok_or_else(|| Error::Malformed("determinant overflow".into()))?;
        if det != 0 {
            // Cramer's rule: t_c = det(A with column c replaced by rhs) / det.
            let mut t_num = Vec::with_capacity(d);
            for c in 0..d {
                let mut ac = a.clone();
                for (r, &i) in subset.iter().enumerate() {
                    ac[r][c] = rhs[i];
                }
                t_num.push(det_i128(&ac).ok_or_else(|| Error::Malformed("determinant overflow".into()))?);
            }
            // Feasible iff row · t_num <= rhs · det, with the sign of det.
            let feasible = (0..m).all(|i| {
                let lhs: i128 = rows[i].iter().zip(&t_num).map(|(a, b)| a * b).sum();
                let r = rhs[i] * det;
                if det > 0 {
                    lhs <= r
                } else {
                    lhs >= r
                }
            });
            if feasible {
                let t: Vec<Rational> =
                    t_num.iter().map(|v| Rational::new(BigInt::from(*v), BigInt::from(det))).collect();
                let x: Vec<Rational> = (0..dim_full)
                    .map(|p| {
                        let shift: Rational = (0..d).map(|b| Rational::from_integer(basis[b][p].clone()) * &t[b]).sum();
                        &base + shift / Rational::from_integer(base_den.clone())
                    })
                    .collect();
                points.insert(x);
            }
        }
        // Next d-subset in lexicographic order.
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(BasicSolutions { points, subsets_checked: checked });
            }
            i -= 1;
            if subset[i] < m - d + i {
                subset[i] += 1;
                for j in i + 1..d {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// True iff the 62 facets plus the degree equalities cut out exactly the 30
/// vertices of BME(5,1).
pub fn bme51_h_to_v() -> Result<(bool, BasicSolutions)> {
    let facets: Vec<LinearFunctional> = bme51_facets()?.into_iter().map(|r| r.functional).collect();
    let sols = basic_feasible_solutions(5, 1, &facets)?;
    let vertices: BTreeSet<Vec<Rational>> =
        Vertices::new(5, 1)?.xs.iter().map(|x| x.iter().map(|&v| rational::int(v)).collect()).collect();
    Ok((sols.points == vertices, sols))
}

/// Whether all entries of `x` are nonnegative.
pub fn is_nonnegative(x: &RationalVector) -> bool {
    x.entries().iter().all(|e| !e.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn sp(n: usize, side: &[usize]) -> Split {
        Split::new(n, side).unwrap()
    }

    fn c(seq: &[usize]) -> CircularOrdering {
        CircularOrdering::new(seq).unwrap()
    }

    #[test]
    fn dimensions() {
        let v51 = Vertices::new(5, 1).unwrap();
        assert_eq!(v51.dimension().unwrap(), 5);
        assert_eq!(Vertices::new(5, 0).unwrap().dimension().unwrap(), 5);
        assert_eq!(affine_dimension_ints(&v51.xs[..1]).unwrap(), 0);
    }

    #[test]
    fn degree_equalities() {
        let n1 = Network::new(&c(&[1, 2, 3, 4, 5]), &[sp(5, &[1, 2])]).unwrap();
        let x = crate::vector::network_vector(&n1);
        assert!(check_degree_equalities(&x, 5, 1));
        assert!(!check_degree_equalities(&x, 5, 2));
        let tour = crate::vector::incidence_vector(&c(&[1, 3, 5, 2, 4]));
        assert!(check_degree_equalities(&tour, 5, 0));
    }

    #[test]
    fn split_face_examples() {
        let r = split_face(5, 1, &sp(5, &[1, 2])).unwrap();
        assert!(r.valid);
        assert_eq!(r.tight_count, 9);
        assert_eq!(r.tight_dim, Some(4));
        assert_eq!(r.functional.to_string(), "1*x1_2 <= 2");

        let r = split_face(5, 0, &sp(5, &[1, 2])).unwrap();
        assert!(r.valid);
        assert_eq!(r.tight_count, 6);

        let r = split_face(6, 3, &sp(6, &[1, 2, 3])).unwrap();
        assert!(r.valid);
        assert_eq!(r.tight_count, 9);
        assert!(matches!(split_face(5, 1, &sp(5, &[3])), Err(Error::TrivialSplit(_))));
    }

    #[test]
    fn lower_bound_examples() {
        let r = lower_bound_face(5, 1, (1, 2)).unwrap();
        assert!(r.valid);
        assert_eq!(r.tight_count, 9);
        let r = lower_bound_face(5, 2, (1, 2)).unwrap();
        assert_eq!(r.family, Family::Caterpillar);
        assert!(r.valid);
        assert_eq!(r.tight_count, 6);
        let r = lower_bound_face(5, 0, (1, 2)).unwrap();
        assert!(r.valid);
        assert_eq!(r.tight_count, 6);
    }

    #[test]
    fn refinement_examples() {
        let s = SplitSystem::new(5, [sp(5, &[1, 2])], Some(c(&[1, 2, 3, 4, 5]))).unwrap();
        let r = refinement_face(&s, 1).unwrap();
        assert_eq!(r.functional.bound, int(24));
        assert!(r.valid);
        assert_eq!(r.tight_count, 9);

        let n1 = Network::new(&c(&[1, 2, 3, 4, 5]), &[sp(5, &[1, 2])]).unwrap();
        let r = refinement_face(&n1.sigma_splits(), 1).unwrap();
        assert_eq!(r.functional.bound, int(32));
        assert_eq!(r.tight, vec![n1]);

        let trivial = SplitSystem::new(5, [], None).unwrap();
        let r = refinement_face(&trivial, 0).unwrap();
        assert_eq!(r.functional.bound, int(10));
        assert_eq!(r.tight_count, 12);
        assert!(matches!(refinement_face(&trivial, 1), Err(Error::TooManyBridgesRequested { .. })));
    }

    #[test]
    fn bme51() {
        let reports = bme51_facets().unwrap();
        assert_eq!(reports.len(), 62);
        let count = |f: Family| reports.iter().filter(|r| r.family == f).count();
        assert_eq!(
            (count(Family::Split), count(Family::Lower), count(Family::Excluded), count(Family::Cyclic)),
            (10, 10, 30, 12)
        );
        let ex = reports.iter().find(|r| r.label == "1,2;5,3").unwrap();
        assert_eq!(ex.tight_count, 8);
        let cyc = reports.iter().find(|r| r.label == "(1,2,3,4,5)").unwrap();
        assert_eq!(cyc.tight_count, 5);
        assert!(reports.iter().all(|r| r.valid && r.tight_dim == Some(4)));
    }

    #[test]
    fn tree_facets_n5() {
        let reports = bme_tree_facets(5).unwrap();
        let cherry: Vec<_> = reports.iter().filter(|r| r.family == Family::Cherry).collect();
        assert_eq!(cherry.len(), 10 * 3);
        assert!(cherry.iter().all(|r| r.valid && r.tight_count == 6));
        let cat: Vec<_> = reports.iter().filter(|r| r.family == Family::Caterpillar).collect();
        assert_eq!(cat.len(), 10);
        assert!(cat.iter().all(|r| r.valid && r.tight_count == 6));
        assert!(bme_tree_facets(4).is_err());
    }

    #[test]
    fn nesting() {
        assert!(verify_nesting(5, 1).unwrap());
        assert!(verify_nesting(5, 2).unwrap());
        assert!(matches!(verify_nesting(5, 0), Err(Error::OutOfRange { .. })));
    }
}
