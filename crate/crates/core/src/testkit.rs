//! Instance generators with known answers.
//!
//! * Max-gap instances: `S` is a set of reals on the x-axis with terminals
//!   just beyond both extremes. The optimal bottleneck length equals the
//!   largest gap between consecutive values.
//! * Membership instances: `S = {(i, 0)}`, anchor terminals at `(0, 0)` and
//!   `(m + 1, 0)`, plus terminals that should sit on the grid `c_i = (i, 1)`.
//!   The optimal tree attaches each grid terminal straight down, which
//!   [`verify_membership`] checks.
//! * Uniform random instances for fuzzing and benchmarks.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{max_gap, Instance, Point};
use crate::scalar::Scalar;
use crate::solver::FullSteinerTree;

#[derive(Debug, Clone, PartialEq)]
pub struct MaxGapInstance<F> {
    pub values: Vec<F>,
    pub n: usize,
    /// Spread `max - min`.
    pub delta: F,
    /// `delta / (m + 1)`, a lower bound on the largest gap.
    pub g: F,
    pub instance: Instance<F>,
    /// The largest gap, which is the optimal bottleneck length.
    pub expected: F,
}

pub fn gen_maxgap_instance<F: Scalar>(values: &[F], n: usize, seed: u64) -> Result<MaxGapInstance<F>> {
    if values.len() < 2 {
        return Err(Error::TooFewValues {
            need: 2,
            got: values.len(),
        });
    }
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::OddTerminalCount(n));
    }
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { set: "values", index });
    }
    let lo = values.iter().copied().fold(F::infinity(), F::min);
    let hi = values.iter().copied().fold(F::neg_infinity(), F::max);
    let delta = hi - lo;
    if delta <= F::zero() {
        return Err(Error::DegenerateSequence);
    }
    let g = delta / F::from_usize(values.len() + 1).unwrap();
    let half_g = g / F::from_u8(2).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Offsets in (0, g/2]; resample if rounding lands back on the extreme.
    let mut offset_from = |anchor: F, dir: F| loop {
        let u = F::from_f64(1.0 - rng.gen::<f64>()).unwrap();
        let x = anchor + dir * half_g * u;
        if x != anchor {
            return x;
        }
    };
    let mut terminals = Vec::with_capacity(n);
    for _ in 0..n / 2 {
        terminals.push(Point::new(offset_from(lo, -F::one()), F::zero()));
    }
    for _ in 0..n / 2 {
        terminals.push(Point::new(offset_from(hi, F::one()), F::zero()));
    }
    let steiner = values.iter().map(|&v| Point::new(v, F::zero())).collect();
    Ok(MaxGapInstance {
        values: values.to_vec(),
        n,
        delta,
        g,
        instance: Instance::new(terminals, steiner)?,
        expected: max_gap(values)?,
    })
}

/// Moves grid terminal `terminal` (1-based, as in `f`) to `to`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbation<F> {
    pub terminal: usize,
    pub to: Point<F>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipInstance<F> {
    pub m: usize,
    /// `f(1..=n)`, each in `1..=m`.
    pub f: Vec<usize>,
    pub perturbation: Option<Perturbation<F>>,
    /// Terminals are `[p, q, p_1, …, p_n]`; `S[i - 1] = (i, 0)`.
    pub instance: Instance<F>,
}

impl<F: Scalar> MembershipInstance<F> {
    /// Number of grid terminals.
    pub fn n(&self) -> usize {
        self.f.len()
    }

    /// Index in `P` of grid terminal `j` (1-based).
    pub fn terminal_index(j: usize) -> usize {
        j + 1
    }
}

/// The grid point `c_i = (i, 1)`.
pub fn grid_point<F: Scalar>(i: usize) -> Point<F> {
    Point::new(F::from_usize(i).unwrap(), F::one())
}

pub fn gen_membership_instance<F: Scalar>(
    f: &[usize],
    m: usize,
    perturb: Option<Perturbation<F>>,
) -> Result<MembershipInstance<F>> {
    if m == 0 {
        return Err(Error::EmptySet("S"));
    }
    for (index, &value) in f.iter().enumerate() {
        if !(1..=m).contains(&value) {
            return Err(Error::MapOutOfRange {
                index: index + 1,
                value,
                m,
            });
        }
    }
    let mut terminals = Vec::with_capacity(f.len() + 2);
    terminals.push(Point::new(F::zero(), F::zero()));
    terminals.push(Point::new(F::from_usize(m + 1).unwrap(), F::zero()));
    terminals.extend(f.iter().map(|&i| grid_point::<F>(i)));

    if let Some(pert) = perturb {
        if !(1..=f.len()).contains(&pert.terminal) {
            return Err(Error::InvalidPerturbation(format!(
                "terminal {} is outside 1..={}",
                pert.terminal,
                f.len()
            )));
        }
        if (1..=m).any(|i| grid_point::<F>(i) == pert.to) {
            return Err(Error::InvalidPerturbation(format!("{} lies on the grid", pert.to)));
        }
        terminals[MembershipInstance::<F>::terminal_index(pert.terminal)] = pert.to;
    }
    let steiner = (1..=m)
        .map(|i| Point::new(F::from_usize(i).unwrap(), F::zero()))
        .collect();
    Ok(MembershipInstance {
        m,
        f: f.to_vec(),
        perturbation: perturb,
        instance: Instance::new(terminals, steiner)?,
    })
}

/// True iff every grid terminal is attached to `(i, 0)` and equals `c_i`.
pub fn verify_membership<F: Scalar>(tree: &FullSteinerTree<F>, inst: &MembershipInstance<F>) -> Result<bool> {
    let terminals = inst.instance.terminals();
    let steiner = inst.instance.steiner();
    if tree.external_edges.len() != terminals.len() {
        return Err(Error::TreeMismatch(format!(
            "{} external edges for {} terminals",
            tree.external_edges.len(),
            terminals.len()
        )));
    }
    let mut output = true;
    for j in 1..=inst.n() {
        let t = MembershipInstance::<F>::terminal_index(j);
        let s = tree.external_edges[t].steiner;
        if s >= steiner.len() {
            return Err(Error::TreeMismatch(format!("S index {s} out of range")));
        }
        // S[s] = (i, 0), so c_i = (i, 1) is one unit above it.
        let c = Point::new(steiner[s].x, steiner[s].y + F::one());
        if terminals[t] != c {
            output = false;
        }
    }
    Ok(output)
}

/// Uniform points in `[0, extent]²`; terminals that land exactly on a
/// Steiner candidate are redrawn.
pub fn gen_random_instance<F: Scalar>(n: usize, m: usize, extent: F, seed: u64) -> Result<Instance<F>> {
    if n == 0 {
        return Err(Error::EmptySet("P"));
    }
    if m == 0 {
        return Err(Error::EmptySet("S"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        Point::new(
            extent * F::from_f64(rng.gen::<f64>()).unwrap(),
            extent * F::from_f64(rng.gen::<f64>()).unwrap(),
        )
    };
    let steiner: Vec<Point<F>> = (0..m).map(|_| draw(&mut rng)).collect();
    let taken: HashSet<(u64, u64)> = steiner.iter().map(Point::key).collect();
    let terminals = (0..n)
        .map(|_| loop {
            let p = draw(&mut rng);
            if !taken.contains(&p.key()) {
                return p;
            }
        })
        .collect();
    Instance::new(terminals, steiner)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maxgap_examples() {
        let inst = gen_maxgap_instance(&[0.0, 1.0, 5.0, 6.0], 4, 1).unwrap();
        assert_eq!(inst.expected, 4.0);
        assert_eq!(inst.delta, 6.0);
        assert_eq!(inst.g, 1.2);
        let p = inst.instance.terminals();
        assert!(p[..2].iter().all(|q| q.x < 0.0 && q.x >= -0.6 && q.y == 0.0));
        assert!(p[2..].iter().all(|q| q.x > 6.0 && q.x <= 6.6 && q.y == 0.0));
        assert!(inst.expected >= inst.g);

        assert_eq!(gen_maxgap_instance(&[0.0, 1.0], 2, 0).unwrap().expected, 1.0);
    }

    #[test]
    fn maxgap_errors() {
        assert_eq!(
            gen_maxgap_instance(&[2.0, 2.0, 2.0], 2, 0).unwrap_err(),
            Error::DegenerateSequence
        );
        assert_eq!(
            gen_maxgap_instance(&[0.0, 1.0], 3, 0).unwrap_err(),
            Error::OddTerminalCount(3)
        );
        assert_eq!(
            gen_maxgap_instance(&[0.0, 1.0], 0, 0).unwrap_err(),
            Error::OddTerminalCount(0)
        );
        assert!(gen_maxgap_instance(&[0.0], 2, 0).is_err());
    }

    #[test]
    fn maxgap_is_seed_deterministic() {
        let a = gen_maxgap_instance(&[3.0, -1.0, 8.0], 6, 99).unwrap();
        let b = gen_maxgap_instance(&[3.0, -1.0, 8.0], 6, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn membership_examples() {
        let inst = gen_membership_instance::<f64>(&[1, 3], 3, None).unwrap();
        let p: Vec<_> = inst.instance.terminals().iter().map(|q| (q.x, q.y)).collect();
        assert_eq!(p, vec![(0., 0.), (4., 0.), (1., 1.), (3., 1.)]);
        let s: Vec<_> = inst.instance.steiner().iter().map(|q| (q.x, q.y)).collect();
        assert_eq!(s, vec![(1., 0.), (2., 0.), (3., 0.)]);

        let anchors = gen_membership_instance::<f64>(&[], 1, None).unwrap();
        let p: Vec<_> = anchors.instance.terminals().iter().map(|q| (q.x, q.y)).collect();
        assert_eq!(p, vec![(0., 0.), (2., 0.)]);
        assert_eq!(anchors.instance.steiner(), &[Point::new(1.0, 0.0)]);
    }

    #[test]
    fn membership_errors() {
        assert_eq!(
            gen_membership_instance::<f64>(&[1, 4], 3, None).unwrap_err(),
            Error::MapOutOfRange {
                index: 2,
                value: 4,
                m: 3
            }
        );
        assert!(gen_membership_instance::<f64>(&[0], 3, None).is_err());
        let on_grid = Perturbation {
            terminal: 1,
            to: Point::new(2.0, 1.0),
        };
        assert!(gen_membership_instance(&[1, 3], 3, Some(on_grid)).is_err());
        let bad_index = Perturbation {
            terminal: 3,
            to: Point::new(2.5, 1.0),
        };
        assert!(gen_membership_instance(&[1, 3], 3, Some(bad_index)).is_err());
    }

    #[test]
    fn random_instances() {
        let a = gen_random_instance(1, 1, 10.0f64, 42).unwrap();
        assert_eq!((a.n(), a.m()), (1, 1));
        assert_ne!(a.terminals()[0], a.steiner()[0]);
        assert_eq!(a, gen_random_instance(1, 1, 10.0, 42).unwrap());
        let b = gen_random_instance(40, 40, 100.0f64, 7).unwrap();
        assert!(b
            .terminals()
            .iter()
            .chain(b.steiner())
            .all(|q| (0.0..=100.0).contains(&q.x)));
        assert_ne!(b, gen_random_instance(40, 40, 100.0, 8).unwrap());
        assert!(gen_random_instance::<f64>(0, 1, 1.0, 0).is_err());
    }
}
