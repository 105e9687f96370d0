//! Threshold decision: given `λ`, label the components of the MST forest
//! that survives after deleting every edge of length `≥ λ`, then find the
//! components that every terminal reaches by a six-cone edge shorter than
//! `λ`. The resulting set is non-empty exactly when the optimal bottleneck
//! is below `λ`.

use arrayvec::ArrayVec;

use crate::emst::{euclidean_mst, EmstResult};
use crate::error::{Error, Result};
use crate::geometry::{ConeIndex, Instance, Point, SquaredLength};
use crate::scalar::Scalar;
use crate::union_find::UnionFind;
use crate::yao::{yao_indexed, YaoGraph};

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentLabeling<F> {
    pub lambda: SquaredLength<F>,
    /// Component id of every Steiner candidate, contiguous from 0 and
    /// numbered in order of first appearance.
    pub label: Vec<usize>,
    pub component_count: usize,
}

/// At most six component ids, kept in ascending order.
///
/// Every terminal has at most six cone edges, so the first terminal alone
/// bounds the set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CandidateSet(ArrayVec<usize, { ConeIndex::COUNT }>);

impl CandidateSet {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.contains(&j)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Preprocessed instance: the MST of `S` and the six-cone graph.
#[derive(Debug, Clone)]
pub struct SolverContext<F> {
    instance: Instance<F>,
    emst: EmstResult<F>,
    yao: YaoGraph<F>,
}

impl<F: Scalar> SolverContext<F> {
    /// Validates the instance and runs both preprocessing stages.
    pub fn new(terminals: Vec<Point<F>>, steiner: Vec<Point<F>>) -> Result<Self> {
        let instance = Instance::new(terminals, steiner)?;
        Ok(Self::from_instance(instance))
    }

    pub fn from_instance(instance: Instance<F>) -> Self {
        let emst = euclidean_mst(instance.steiner()).expect("validated instance");
        let yao = yao_indexed(instance.terminals(), instance.steiner());
        SolverContext { instance, emst, yao }
    }

    pub fn instance(&self) -> &Instance<F> {
        &self.instance
    }

    pub fn emst(&self) -> &EmstResult<F> {
        &self.emst
    }

    pub fn yao(&self) -> &YaoGraph<F> {
        &self.yao
    }

    /// `k`, the number of distinct positive MST edge lengths.
    pub fn threshold_count(&self) -> usize {
        self.emst.thresholds().len()
    }

    /// The augmented threshold sequence: `λ_0 = 0`, `λ_1..λ_k` from the MST,
    /// `λ_{k+1} = ∞`.
    pub fn threshold(&self, index: usize) -> SquaredLength<F> {
        let k = self.threshold_count();
        match index {
            0 => SquaredLength::zero(),
            i if i <= k => self.emst.thresholds()[i - 1],
            i if i == k + 1 => SquaredLength::infinity(),
            i => panic!("threshold index {i} out of range 0..={}", k + 1),
        }
    }
}

pub fn forest_components<F: Scalar>(emst: &EmstResult<F>, lambda: SquaredLength<F>) -> Result<ComponentLabeling<F>> {
    if lambda.value() <= F::zero() {
        return Err(Error::NonPositiveThreshold);
    }
    let mut uf = UnionFind::new(emst.vertex_count());
    for e in &emst.edges()[..emst.edges_below(lambda)] {
        uf.union(e.u, e.v);
    }
    let (label, component_count) = uf.labels();
    Ok(ComponentLabeling {
        lambda,
        label,
        component_count,
    })
}

pub fn compare_to_optimal<F: Scalar>(ctx: &SolverContext<F>, lambda: SquaredLength<F>) -> Result<CandidateSet> {
    Ok(decide(ctx, lambda)?.1)
}

/// [`compare_to_optimal`] that also hands back the labeling it computed.
pub fn decide<F: Scalar>(
    ctx: &SolverContext<F>,
    lambda: SquaredLength<F>,
) -> Result<(ComponentLabeling<F>, CandidateSet)> {
    let labeling = forest_components(&ctx.emst, lambda)?;
    let candidates = candidates_for(&ctx.yao, &labeling);
    Ok((labeling, candidates))
}

/// Seeds `J` from the first terminal, then intersects with each later one.
pub fn candidates_for<F: Scalar>(yao: &YaoGraph<F>, labeling: &ComponentLabeling<F>) -> CandidateSet {
    let lambda = labeling.lambda;
    let mut set = ArrayVec::<usize, { ConeIndex::COUNT }>::new();
    for e in yao.edges_of(0) {
        let j = labeling.label[e.steiner];
        if e.w < lambda && !set.contains(&j) {
            set.push(j);
        }
    }
    for t in 1..yao.terminal_count() {
        if set.is_empty() {
            break;
        }
        let mut keep = [false; ConeIndex::COUNT];
        for e in yao.edges_of(t) {
            if e.w >= lambda {
                continue;
            }
            let j = labeling.label[e.steiner];
            if let Some(pos) = set.iter().position(|&x| x == j) {
                keep[pos] = true;
            }
        }
        let mut pos = 0;
        set.retain(|_| {
            let k = keep[pos];
            pos += 1;
            k
        });
    }
    set.sort_unstable();
    CandidateSet(set)
}
