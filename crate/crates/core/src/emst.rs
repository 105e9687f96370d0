//! Euclidean minimum spanning tree of the Steiner candidates.
//!
//! The production path runs Kruskal over the edges of a Delaunay
//! triangulation (which contains every Euclidean MST), for `O(m log m)`
//! overall. [`mst_prim_reference`] is the dense `O(m²)` check.

use std::cmp::Ordering;

use spade::{DelaunayTriangulation, HasPosition, Point2, Triangulation};

use crate::error::{Error, Result};
use crate::geometry::{check_finite, squared_distance, Point, SquaredLength};
use crate::scalar::Scalar;
use crate::union_find::UnionFind;

/// An MST edge between `S[u]` and `S[v]`, normalized so that `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedEdge<F> {
    pub u: usize,
    pub v: usize,
    pub w: SquaredLength<F>,
}

impl<F: Scalar> WeightedEdge<F> {
    pub fn new(a: usize, b: usize, w: SquaredLength<F>) -> Self {
        debug_assert_ne!(a, b);
        WeightedEdge {
            u: a.min(b),
            v: a.max(b),
            w,
        }
    }

    pub(crate) fn cmp_key(&self, other: &Self) -> Ordering {
        self.w
            .total_cmp(&other.w)
            .then(self.u.cmp(&other.u))
            .then(self.v.cmp(&other.v))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmstResult<F> {
    vertex_count: usize,
    edges: Vec<WeightedEdge<F>>,
    thresholds: Vec<SquaredLength<F>>,
}

impl<F: Scalar> EmstResult<F> {
    fn from_edges(vertex_count: usize, mut edges: Vec<WeightedEdge<F>>) -> Self {
        debug_assert_eq!(edges.len(), vertex_count.saturating_sub(1));
        edges.sort_unstable_by(WeightedEdge::cmp_key);
        let mut thresholds: Vec<SquaredLength<F>> =
            edges.iter().map(|e| e.w).filter(|w| w.value() > F::zero()).collect();
        thresholds.dedup();
        EmstResult {
            vertex_count,
            edges,
            thresholds,
        }
    }

    /// Number of vertices `m` the tree spans.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// The `m - 1` tree edges, ascending by `(w, u, v)`.
    pub fn edges(&self) -> &[WeightedEdge<F>] {
        &self.edges
    }

    /// Distinct positive edge weights `λ_1 < … < λ_k`.
    ///
    /// Zero-length edges between coincident candidates never separate
    /// anything at a positive threshold, so they are not listed.
    pub fn thresholds(&self) -> &[SquaredLength<F>] {
        &self.thresholds
    }

    /// Number of edges with weight strictly below `lambda`; those edges form
    /// a prefix of [`edges`](Self::edges).
    pub fn edges_below(&self, lambda: SquaredLength<F>) -> usize {
        self.edges.partition_point(|e| e.w < lambda)
    }

    pub fn total_weight(&self) -> F {
        self.edges.iter().fold(F::zero(), |acc, e| acc + e.w.value())
    }
}

#[derive(Clone, Copy)]
struct Site {
    position: Point2<f64>,
    index: usize,
}

impl HasPosition for Site {
    type Scalar = f64;

    fn position(&self) -> Point2<f64> {
        self.position
    }
}

pub fn euclidean_mst<F: Scalar>(points: &[Point<F>]) -> Result<EmstResult<F>> {
    if points.is_empty() {
        return Err(Error::EmptySet("S"));
    }
    check_finite("S", points)?;
    let m = points.len();

    // Coincident points: keep the smallest index as representative and tie
    // the others to it with zero-length edges.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_unstable_by(|&a, &b| {
        let (pa, pb) = (points[a], points[b]);
        pa.x.partial_cmp(&pb.x)
            .unwrap()
            .then(pa.y.partial_cmp(&pb.y).unwrap())
            .then(a.cmp(&b))
    });
    let mut candidates = Vec::new();
    let mut unique = Vec::with_capacity(m);
    let mut rep = usize::MAX;
    for &i in &order {
        if rep != usize::MAX && points[rep] == points[i] {
            candidates.push(WeightedEdge::new(rep, i, SquaredLength::zero()));
        } else {
            rep = i;
            unique.push(i);
        }
    }

    if unique.len() > 1 {
        let sites: Vec<Site> = unique
            .iter()
            .map(|&i| Site {
                position: Point2::new(points[i].x.to_f64_lossless(), points[i].y.to_f64_lossless()),
                index: i,
            })
            .collect();
        match DelaunayTriangulation::<Site>::bulk_load(sites) {
            Ok(dt) => {
                candidates.reserve(dt.num_undirected_edges());
                for edge in dt.undirected_edges() {
                    let [a, b] = edge.vertices();
                    let (a, b) = (a.data().index, b.data().index);
                    candidates.push(WeightedEdge::new(a, b, squared_distance(points[a], points[b])));
                }
            }
            // Coordinates outside the triangulator's supported magnitude range.
            Err(_) => {
                let sub: Vec<Point<F>> = unique.iter().map(|&i| points[i]).collect();
                for e in prim_edges(&sub) {
                    candidates.push(WeightedEdge::new(unique[e.u], unique[e.v], e.w));
                }
            }
        }
    }

    candidates.sort_unstable_by(WeightedEdge::cmp_key);
    let mut uf = UnionFind::new(m);
    let mut edges = Vec::with_capacity(m - 1);
    for e in candidates {
        if uf.union(e.u, e.v) {
            edges.push(e);
            if edges.len() == m - 1 {
                break;
            }
        }
    }
    assert_eq!(edges.len(), m - 1, "candidate graph must be connected");
    Ok(EmstResult::from_edges(m, edges))
}

/// Dense Prim over all pairs.
pub fn mst_prim_reference<F: Scalar>(points: &[Point<F>]) -> Result<EmstResult<F>> {
    if points.is_empty() {
        return Err(Error::EmptySet("S"));
    }
    check_finite("S", points)?;
    Ok(EmstResult::from_edges(points.len(), prim_edges(points)))
}

fn prim_edges<F: Scalar>(points: &[Point<F>]) -> Vec<WeightedEdge<F>> {
    let m = points.len();
    let mut in_tree = vec![false; m];
    let mut best = vec![(SquaredLength::<F>::infinity(), usize::MAX); m];
    let mut edges = Vec::with_capacity(m.saturating_sub(1));
    let mut current = 0;
    in_tree[0] = true;
    for _ in 1..m {
        let mut next = usize::MAX;
        for v in 0..m {
            if in_tree[v] {
                continue;
            }
            let w = squared_distance(points[current], points[v]);
            if w < best[v].0 {
                best[v] = (w, current);
            }
            if next == usize::MAX || best[v].0 < best[next].0 {
                next = v;
            }
        }
        in_tree[next] = true;
        edges.push(WeightedEdge::new(best[next].1, next, best[next].0));
        current = next;
    }
    edges
}
