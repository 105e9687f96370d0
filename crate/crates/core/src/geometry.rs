//! Planar primitives: points, squared lengths, six-way cone classification
//! and the max-gap utility.
//!
//! Every length comparison in the crate goes through [`squared_distance`], so
//! the solver and the brute-force oracle compare bit-identical values.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point<F> {
    pub x: F,
    pub y: F,
}

impl<F: Scalar> Point<F> {
    pub const fn new(x: F, y: F) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Hashable key identifying the coordinate pair; `-0.0` and `0.0` map to
    /// the same key, matching `==`.
    pub(crate) fn key(&self) -> (u64, u64) {
        let norm = |v: F| (v.to_f64_lossless() + 0.0).to_bits();
        (norm(self.x), norm(self.y))
    }
}

impl<F: fmt::Display> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A squared Euclidean length. `INFINITY` is only used as the sentinel
/// threshold above every finite edge length.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct SquaredLength<F>(F);

impl<F: Scalar> SquaredLength<F> {
    /// Wraps a squared value. Panics on negative or NaN input.
    pub fn new(value: F) -> Self {
        assert!(value >= F::zero(), "squared length must be non-negative, got {value}");
        SquaredLength(value)
    }

    pub fn zero() -> Self {
        SquaredLength(F::zero())
    }

    pub fn infinity() -> Self {
        SquaredLength(F::infinity())
    }

    /// Squares a (non-negative) length.
    pub fn from_length(length: F) -> Self {
        Self::new(length * length)
    }

    #[inline]
    pub fn value(self) -> F {
        self.0
    }

    /// Square root, for presentation.
    pub fn length(self) -> F {
        self.0.sqrt()
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// Total order; valid because NaN is never constructed.
    #[inline]
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.0.partial_cmp(&other.0).expect("squared lengths are never NaN")
    }
}

impl<F: fmt::Display> fmt::Display for SquaredLength<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// One of the six half-open sectors `[c·π/3, (c+1)·π/3)`, counted
/// counter-clockwise from the positive x-axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConeIndex(u8);

impl ConeIndex {
    pub const COUNT: usize = 6;

    pub fn new(index: u8) -> Option<Self> {
        (usize::from(index) < Self::COUNT).then_some(ConeIndex(index))
    }

    #[inline]
    pub fn get(self) -> usize {
        usize::from(self.0)
    }

    pub fn all() -> impl Iterator<Item = ConeIndex> {
        (0..Self::COUNT as u8).map(ConeIndex)
    }
}

impl fmt::Display for ConeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[inline]
pub fn squared_distance<F: Scalar>(a: Point<F>, b: Point<F>) -> SquaredLength<F> {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    SquaredLength(dx * dx + dy * dy)
}

/// Cone of the direction `target - apex`.
pub fn cone_index<F: Scalar>(apex: Point<F>, target: Point<F>) -> Result<ConeIndex> {
    cone_of_direction(target.x - apex.x, target.y - apex.y).ok_or(Error::DegenerateDirection)
}

/// Classifies a direction vector without trigonometry.
///
/// The 60° boundaries are tested as `dy² < 3·dx²`, which is monotone in
/// `|dx|` and `|dy|` under rounding. The spatial index relies on that to bound
/// the cones met by a rectangle from its corners alone.
#[inline]
pub(crate) fn cone_of_direction<F: Scalar>(dx: F, dy: F) -> Option<ConeIndex> {
    let zero = F::zero();
    if dx == zero && dy == zero {
        return None;
    }
    let three = F::from_u8(3).unwrap();
    let dy2 = dy * dy;
    let dx2_3 = three * (dx * dx);
    let upper = dy > zero || (dy == zero && dx > zero);
    let cone = if upper {
        // [0, π)
        if dx > zero && dy2 < dx2_3 {
            0
        } else if dx < zero && dy2 <= dx2_3 {
            2
        } else {
            1
        }
    } else {
        // [π, 2π)
        if dx < zero && dy2 < dx2_3 {
            3
        } else if dx > zero && dy2 <= dx2_3 {
            5
        } else {
            4
        }
    };
    Some(ConeIndex(cone))
}

/// Largest difference between consecutive values in sorted order.
pub fn max_gap<F: Scalar>(values: &[F]) -> Result<F> {
    if values.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite values"));
    Ok(sorted.windows(2).map(|w| w[1] - w[0]).fold(F::zero(), F::max))
}

/// A validated problem instance: terminals `P` and Steiner candidates `S`.
///
/// Both sets are non-empty, all coordinates are finite, and no coordinate
/// pair occurs in both sets. Duplicates within one set are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<F> {
    terminals: Vec<Point<F>>,
    steiner: Vec<Point<F>>,
}

impl<F: Scalar> Instance<F> {
    pub fn new(terminals: Vec<Point<F>>, steiner: Vec<Point<F>>) -> Result<Self> {
        validate_pair(&terminals, &steiner)?;
        Ok(Instance { terminals, steiner })
    }

    /// The terminal set `P`.
    pub fn terminals(&self) -> &[Point<F>] {
        &self.terminals
    }

    /// The Steiner candidate set `S`.
    pub fn steiner(&self) -> &[Point<F>] {
        &self.steiner
    }

    pub fn n(&self) -> usize {
        self.terminals.len()
    }

    pub fn m(&self) -> usize {
        self.steiner.len()
    }

    pub fn into_parts(self) -> (Vec<Point<F>>, Vec<Point<F>>) {
        (self.terminals, self.steiner)
    }
}

pub(crate) fn validate_pair<F: Scalar>(terminals: &[Point<F>], steiner: &[Point<F>]) -> Result<()> {
    if terminals.is_empty() {
        return Err(Error::EmptySet("P"));
    }
    if steiner.is_empty() {
        return Err(Error::EmptySet("S"));
    }
    check_finite("P", terminals)?;
    check_finite("S", steiner)?;
    check_disjoint(terminals, steiner)
}

pub(crate) fn check_finite<F: Scalar>(set: &'static str, points: &[Point<F>]) -> Result<()> {
    match points.iter().position(|p| !p.is_finite()) {
        Some(index) => Err(Error::NonFinite { set, index }),
        None => Ok(()),
    }
}

pub(crate) fn check_disjoint<F: Scalar>(terminals: &[Point<F>], steiner: &[Point<F>]) -> Result<()> {
    let mut seen = HashMap::with_capacity(steiner.len());
    for (i, s) in steiner.iter().enumerate() {
        seen.entry(s.key()).or_insert(i);
    }
    for (terminal, p) in terminals.iter().enumerate() {
        if let Some(&steiner) = seen.get(&p.key()) {
            return Err(Error::NotDisjoint { terminal, steiner });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(x: f64, y: f64) -> Point<f64> {
        Point::new(x, y)
    }

    #[test]
    fn squared_distance_examples() {
        assert_eq!(squared_distance(p(0., 0.), p(1., 0.)).value(), 1.0);
        assert_eq!(squared_distance(p(0., 0.), p(0., 0.)).value(), 0.0);
        assert_eq!(squared_distance(p(1., 1.), p(4., 5.)).value(), 25.0);
    }

    #[test]
    fn cone_index_examples() {
        let o = p(0., 0.);
        assert_eq!(cone_index(o, p(1., 0.)).unwrap().get(), 0);
        assert_eq!(cone_index(o, p(0., 1.)).unwrap().get(), 1);
        assert_eq!(cone_index(o, p(-1., 0.)).unwrap().get(), 3);
        assert_eq!(cone_index(o, p(0., -1.)).unwrap().get(), 4);
        assert_eq!(cone_index(o, p(1., 0.5)).unwrap().get(), 0);
        assert_eq!(cone_index(o, p(1., -0.5)).unwrap().get(), 5);
        assert_eq!(cone_index(o, o), Err(Error::DegenerateDirection));
    }

    #[test]
    fn cone_index_agrees_with_atan2_away_from_boundaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sector = std::f64::consts::FRAC_PI_3;
        for _ in 0..20_000 {
            let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let frac = (theta / sector).fract();
            if !(1e-9..1.0 - 1e-9).contains(&frac) {
                continue;
            }
            let r: f64 = rng.gen_range(0.1..100.0);
            let apex = p(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
            let target = p(apex.x + r * theta.cos(), apex.y + r * theta.sin());
            if target == apex {
                continue;
            }
            let expected = (theta / sector).floor() as usize;
            assert_eq!(cone_index(apex, target).unwrap().get(), expected, "theta={theta}");

            // Rotating by exactly one sector moves to the next cone.
            let rotated = theta + sector;
            let t2 = p(apex.x + r * rotated.cos(), apex.y + r * rotated.sin());
            assert_eq!(cone_index(apex, t2).unwrap().get(), (expected + 1) % 6);
        }
    }

    #[test]
    fn cone_boundaries_are_half_open() {
        let o = p(0., 0.);
        // Exact axis directions sit on the lower boundary of their cone.
        assert_eq!(cone_index(o, p(5., 0.)).unwrap().get(), 0);
        assert_eq!(cone_index(o, p(-5., 0.)).unwrap().get(), 3);
        // sqrt(3) is not representable, so probe just either side of 60°.
        let s3 = 3f64.sqrt();
        assert_eq!(cone_index(o, p(1.0, s3 * (1.0 - 1e-12))).unwrap().get(), 0);
        assert_eq!(cone_index(o, p(1.0, s3 * (1.0 + 1e-12))).unwrap().get(), 1);
        assert_eq!(cone_index(o, p(-1.0, s3 * (1.0 + 1e-12))).unwrap().get(), 1);
        assert_eq!(cone_index(o, p(-1.0, s3 * (1.0 - 1e-12))).unwrap().get(), 2);
    }

    #[test]
    fn same_cone_points_are_close_to_each_other() {
        // Two targets in one cone with |p s'| <= |p s| satisfy |s s'| <= |p s|.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        while checked < 5_000 {
            let apex = p(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
            let a = p(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
            let b = p(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
            let (Ok(ca), Ok(cb)) = (cone_index(apex, a), cone_index(apex, b)) else {
                continue;
            };
            if ca != cb {
                continue;
            }
            let (near, far) = if squared_distance(apex, a) <= squared_distance(apex, b) {
                (a, b)
            } else {
                (b, a)
            };
            assert!(squared_distance(near, far) <= squared_distance(apex, far));
            checked += 1;
        }
    }

    #[test]
    fn f32_points_classify_the_same() {
        let o = Point::<f32>::new(0.0, 0.0);
        assert_eq!(cone_index(o, Point::new(-1.0, -0.1)).unwrap().get(), 3);
        assert_eq!(squared_distance(o, Point::new(3.0f32, 4.0)).value(), 25.0);
    }

    #[test]
    fn max_gap_examples() {
        assert_eq!(max_gap(&[5.0]).unwrap(), 0.0);
        assert_eq!(max_gap(&[0.0, 1.0, 5.0, 6.0]).unwrap(), 4.0);
        assert_eq!(max_gap(&[6.0, 0.0, 5.0, 1.0]).unwrap(), 4.0);
        assert_eq!(max_gap::<f64>(&[]), Err(Error::EmptySequence));
    }

    #[test]
    fn max_gap_matches_pairwise_scan() {
        // Independent route: a consecutive pair (a, b) has no value strictly
        // between them; take the widest such pair.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let values: Vec<f64> = (0..1000).map(|_| rng.gen_range(0.0..1.0)).collect();
        let mut best = 0.0f64;
        for &a in &values {
            let next = values.iter().copied().filter(|&b| b > a).fold(f64::INFINITY, f64::min);
            if next.is_finite() {
                best = best.max(next - a);
            }
        }
        assert_eq!(max_gap(&values).unwrap(), best);
    }

    #[test]
    fn instance_validation() {
        let ok = Instance::new(vec![p(1., 0.)], vec![p(0., 0.)]).unwrap();
        assert_eq!((ok.n(), ok.m()), (1, 1));
        assert_eq!(
            Instance::new(vec![p(0., 0.)], vec![p(0., 0.)]).unwrap_err(),
            Error::NotDisjoint {
                terminal: 0,
                steiner: 0
            }
        );
        assert_eq!(
            Instance::new(vec![p(-0.0, 0.)], vec![p(1., 1.), p(0.0, 0.0)]).unwrap_err(),
            Error::NotDisjoint {
                terminal: 0,
                steiner: 1
            }
        );
        assert_eq!(
            Instance::<f64>::new(vec![], vec![p(0., 0.)]).unwrap_err(),
            Error::EmptySet("P")
        );
        assert_eq!(
            Instance::new(vec![p(0., 0.)], vec![]).unwrap_err(),
            Error::EmptySet("S")
        );
        assert_eq!(
            Instance::new(vec![p(0., 0.)], vec![p(1., f64::NAN)]).unwrap_err(),
            Error::NonFinite { set: "S", index: 0 }
        );
        // Duplicates within one set are fine.
        assert!(Instance::new(vec![p(1., 1.), p(1., 1.)], vec![p(0., 0.), p(0., 0.)]).is_ok());
    }
}
