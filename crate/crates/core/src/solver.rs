//! End-to-end pipeline: preprocessing, binary search over the MST edge
//! lengths, and assembly of the optimal full Steiner tree.

use std::time::Instant;

use crate::decision::{decide, ComponentLabeling, SolverContext};
use crate::emst::WeightedEdge;
use crate::error::{Error, Result};
use crate::geometry::{squared_distance, Point, SquaredLength};
use crate::scalar::Scalar;
use crate::union_find::UnionFind;

/// A terminal's single edge into the skeleton.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Attachment<F> {
    pub steiner: usize,
    pub w: SquaredLength<F>,
}

/// A tree on `P ∪ S'` in which every terminal is a leaf.
#[derive(Debug, Clone, PartialEq)]
pub struct FullSteinerTree<F> {
    /// `S'`, ascending and non-empty.
    pub steiner_points: Vec<usize>,
    /// Spanning tree of `S'`, ascending by `(u, v)`.
    pub skeleton_edges: Vec<WeightedEdge<F>>,
    /// One entry per terminal, indexed by `P` index.
    pub external_edges: Vec<Attachment<F>>,
    pub bottleneck: SquaredLength<F>,
}

impl<F: Scalar> FullSteinerTree<F> {
    /// Checks every structural invariant against the instance coordinates.
    pub fn validate(&self, terminals: &[Point<F>], steiner: &[Point<F>]) -> std::result::Result<(), String> {
        let sp = &self.steiner_points;
        if sp.is_empty() {
            return Err("S' is empty".into());
        }
        if !sp.windows(2).all(|w| w[0] < w[1]) {
            return Err("S' is not strictly ascending".into());
        }
        if *sp.last().unwrap() >= steiner.len() {
            return Err("S' index out of range".into());
        }
        let in_sp = |s: usize| sp.binary_search(&s).is_ok();

        if self.skeleton_edges.len() != sp.len() - 1 {
            return Err(format!(
                "skeleton has {} edges, expected {}",
                self.skeleton_edges.len(),
                sp.len() - 1
            ));
        }
        let mut uf = UnionFind::new(steiner.len());
        for e in &self.skeleton_edges {
            if !in_sp(e.u) || !in_sp(e.v) {
                return Err(format!("skeleton edge ({}, {}) leaves S'", e.u, e.v));
            }
            if e.w != squared_distance(steiner[e.u], steiner[e.v]) {
                return Err(format!("skeleton edge ({}, {}) has a stale weight", e.u, e.v));
            }
            if !uf.union(e.u, e.v) {
                return Err(format!("skeleton edge ({}, {}) closes a cycle", e.u, e.v));
            }
        }
        // |S'| - 1 acyclic edges inside S' span it.

        if self.external_edges.len() != terminals.len() {
            return Err(format!(
                "{} external edges for {} terminals",
                self.external_edges.len(),
                terminals.len()
            ));
        }
        for (t, a) in self.external_edges.iter().enumerate() {
            if !in_sp(a.steiner) {
                return Err(format!("terminal {t} attaches outside S'"));
            }
            if a.w != squared_distance(terminals[t], steiner[a.steiner]) {
                return Err(format!("terminal {t} has a stale weight"));
            }
        }
        // Each terminal contributes exactly one edge, so it is a leaf and the
        // whole graph stays a tree.

        if self.bottleneck != bottleneck(self) {
            return Err("stored bottleneck differs from the longest edge".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PhaseTimings {
    pub preprocess_ns: u64,
    pub search_ns: u64,
    pub assemble_ns: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport<F> {
    pub tree: FullSteinerTree<F>,
    pub lambda_star: SquaredLength<F>,
    /// `ℓ` with `λ_{ℓ-1} ≤ λ* < λ_ℓ`.
    pub threshold_index: usize,
    pub component: usize,
    pub candidate_count: usize,
    pub timings: PhaseTimings,
}

pub fn preprocess<F: Scalar>(terminals: Vec<Point<F>>, steiner: Vec<Point<F>>) -> Result<SolverContext<F>> {
    SolverContext::new(terminals, steiner)
}

/// Smallest `ℓ ∈ 1..=k+1` whose threshold yields a non-empty candidate set.
pub fn binary_search_threshold<F: Scalar>(ctx: &SolverContext<F>) -> usize {
    // Invariant: the predicate is false at `lo` (λ_0 = 0 is never evaluated)
    // and true at `hi` (λ_{k+1} = ∞ always succeeds).
    let (mut lo, mut hi) = (0, ctx.threshold_count() + 1);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let (_, candidates) = decide(ctx, ctx.threshold(mid)).expect("positive threshold");
        if candidates.is_empty() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

pub fn build_tree_for_component<F: Scalar>(
    ctx: &SolverContext<F>,
    labeling: &ComponentLabeling<F>,
    j: usize,
    lambda: SquaredLength<F>,
) -> Result<FullSteinerTree<F>> {
    let infeasible = Error::ComponentNotFeasible { component: j };
    let label = &labeling.label;
    let yao = ctx.yao();
    let mut external_edges = Vec::with_capacity(yao.terminal_count());
    for t in 0..yao.terminal_count() {
        let chosen = yao
            .edges_of(t)
            .iter()
            .filter(|e| label[e.steiner] == j && e.w < lambda)
            .min_by(|a, b| a.w.total_cmp(&b.w).then(a.steiner.cmp(&b.steiner)))
            .ok_or_else(|| infeasible.clone())?;
        external_edges.push(Attachment {
            steiner: chosen.steiner,
            w: chosen.w,
        });
    }

    let steiner_points: Vec<usize> = (0..label.len()).filter(|&s| label[s] == j).collect();
    let emst = ctx.emst();
    let mut skeleton_edges: Vec<WeightedEdge<F>> = emst.edges()[..emst.edges_below(labeling.lambda)]
        .iter()
        .filter(|e| label[e.u] == j)
        .copied()
        .collect();
    skeleton_edges.sort_unstable_by_key(|e| (e.u, e.v));

    let mut tree = FullSteinerTree {
        steiner_points,
        skeleton_edges,
        external_edges,
        bottleneck: SquaredLength::zero(),
    };
    tree.bottleneck = bottleneck(&tree);
    Ok(tree)
}

/// Longest edge of the tree, as a squared length.
pub fn bottleneck<F: Scalar>(tree: &FullSteinerTree<F>) -> SquaredLength<F> {
    tree.skeleton_edges
        .iter()
        .map(|e| e.w)
        .chain(tree.external_edges.iter().map(|a| a.w))
        .fold(SquaredLength::zero(), |acc, w| if w > acc { w } else { acc })
}

pub fn solve<F: Scalar>(terminals: Vec<Point<F>>, steiner: Vec<Point<F>>) -> Result<SolveReport<F>> {
    let started = Instant::now();
    let ctx = preprocess(terminals, steiner)?;
    let preprocessed = Instant::now();
    let threshold_index = binary_search_threshold(&ctx);
    let searched = Instant::now();
    let mut report = assemble(&ctx, threshold_index)?;
    let done = Instant::now();
    report.timings = PhaseTimings {
        preprocess_ns: nanos(preprocessed - started),
        search_ns: nanos(searched - preprocessed),
        assemble_ns: nanos(done - searched),
    };
    Ok(report)
}

/// Runs the preprocessing-free part of [`solve`] on an existing context.
pub fn solve_context<F: Scalar>(ctx: &SolverContext<F>) -> Result<SolveReport<F>> {
    assemble(ctx, binary_search_threshold(ctx))
}

fn assemble<F: Scalar>(ctx: &SolverContext<F>, threshold_index: usize) -> Result<SolveReport<F>> {
    let lambda = ctx.threshold(threshold_index);
    let (labeling, candidates) = decide(ctx, lambda)?;
    let mut best: Option<(usize, FullSteinerTree<F>)> = None;
    // Candidates are ascending, so strict improvement keeps the smallest j on ties.
    for j in candidates.iter() {
        let tree = build_tree_for_component(ctx, &labeling, j, lambda)?;
        if best.as_ref().is_none_or(|(_, b)| tree.bottleneck < b.bottleneck) {
            best = Some((j, tree));
        }
    }
    let (component, tree) = best.expect("the search ends on a non-empty candidate set");
    Ok(SolveReport {
        lambda_star: tree.bottleneck,
        tree,
        threshold_index,
        component,
        candidate_count: candidates.len(),
        timings: PhaseTimings::default(),
    })
}

fn nanos(d: std::time::Duration) -> u64 {
    u64::try_from(d.as_nanos()).unwrap_or(u64::MAX)
}
