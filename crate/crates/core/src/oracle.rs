//! Brute-force ground truth, built directly from the definition of a full
//! Steiner tree and independent of the MST / cone-graph pipeline.
//!
//! A tree with bottleneck at most `λ` exists iff some connected component
//! `C` of the graph on `S` with edges `|ss'|² ≤ λ` lets every terminal
//! attach to a point of `C` within `λ`.

use crate::emst::WeightedEdge;
use crate::error::Result;
use crate::geometry::{squared_distance, validate_pair, Point, SquaredLength};
use crate::scalar::Scalar;
use crate::solver::{bottleneck, Attachment, FullSteinerTree};
use crate::union_find::UnionFind;

/// Certificate that a bottleneck of at most `lambda` is achievable.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityWitness<F> {
    pub lambda: SquaredLength<F>,
    /// The chosen component of the `≤ λ` threshold graph, as ascending `S` indices.
    pub component: Vec<usize>,
    /// Per terminal, the nearest point of `component` (smallest index on ties).
    pub attachment: Vec<usize>,
    /// A spanning tree of `component` made of `≤ λ` edges.
    pub spanning_edges: Vec<WeightedEdge<F>>,
}

/// `O(m² + nm)` feasibility test at threshold `lambda` (inclusive).
pub fn feasible<F: Scalar>(
    terminals: &[Point<F>],
    steiner: &[Point<F>],
    lambda: SquaredLength<F>,
) -> Option<FeasibilityWitness<F>> {
    let m = steiner.len();
    let mut uf = UnionFind::new(m);
    let mut forest = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let w = squared_distance(steiner[a], steiner[b]);
            if w <= lambda && uf.union(a, b) {
                forest.push(WeightedEdge::new(a, b, w));
            }
        }
    }
    let (label, count) = uf.labels();

    // hits[c] counts terminals with some point of component c within lambda.
    let mut hits = vec![0usize; count];
    let mut last_terminal = vec![usize::MAX; count];
    for (t, &p) in terminals.iter().enumerate() {
        for (s, &q) in steiner.iter().enumerate() {
            let c = label[s];
            if last_terminal[c] != t && squared_distance(p, q) <= lambda {
                last_terminal[c] = t;
                hits[c] += 1;
            }
        }
    }
    // Labels are numbered by first appearance, so the first hit has the
    // smallest member index.
    let chosen = (0..count).find(|&c| hits[c] == terminals.len())?;

    let component: Vec<usize> = (0..m).filter(|&s| label[s] == chosen).collect();
    let attachment = terminals
        .iter()
        .map(|&p| {
            component
                .iter()
                .copied()
                .min_by(|&a, &b| {
                    squared_distance(p, steiner[a])
                        .total_cmp(&squared_distance(p, steiner[b]))
                        .then(a.cmp(&b))
                })
                .expect("component is non-empty")
        })
        .collect();
    let spanning_edges = forest.into_iter().filter(|e| label[e.u] == chosen).collect();
    Some(FeasibilityWitness {
        lambda,
        component,
        attachment,
        spanning_edges,
    })
}

/// Every squared distance that can be a bottleneck, ascending and distinct.
pub fn candidate_values<F: Scalar>(terminals: &[Point<F>], steiner: &[Point<F>]) -> Vec<SquaredLength<F>> {
    let m = steiner.len();
    let mut values = Vec::with_capacity(terminals.len() * m + m * m / 2);
    for &p in terminals {
        for &s in steiner {
            values.push(squared_distance(p, s));
        }
    }
    for a in 0..m {
        for b in a + 1..m {
            values.push(squared_distance(steiner[a], steiner[b]));
        }
    }
    values.sort_unstable_by(SquaredLength::total_cmp);
    values.dedup();
    values
}

/// Optimal bottleneck by an ascending sweep over [`candidate_values`],
/// together with a witness tree.
pub fn brute_force_optimum<F: Scalar>(
    terminals: &[Point<F>],
    steiner: &[Point<F>],
) -> Result<(SquaredLength<F>, FullSteinerTree<F>)> {
    validate_pair(terminals, steiner)?;
    let witness = candidate_values(terminals, steiner)
        .into_iter()
        .find_map(|lambda| feasible(terminals, steiner, lambda))
        .expect("the largest candidate connects everything");
    let tree = witness_tree(terminals, steiner, &witness);
    Ok((tree.bottleneck, tree))
}

fn witness_tree<F: Scalar>(
    terminals: &[Point<F>],
    steiner: &[Point<F>],
    witness: &FeasibilityWitness<F>,
) -> FullSteinerTree<F> {
    let mut skeleton_edges = witness.spanning_edges.clone();
    skeleton_edges.sort_unstable_by_key(|e| (e.u, e.v));
    let external_edges = terminals
        .iter()
        .zip(&witness.attachment)
        .map(|(&p, &s)| Attachment {
            steiner: s,
            w: squared_distance(p, steiner[s]),
        })
        .collect();
    let mut tree = FullSteinerTree {
        steiner_points: witness.component.clone(),
        skeleton_edges,
        external_edges,
        bottleneck: SquaredLength::zero(),
    };
    tree.bottleneck = bottleneck(&tree);
    tree
}
