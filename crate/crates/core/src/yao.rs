//! The bipartite six-cone graph: for every terminal `p` and every cone around
//! `p` that contains a Steiner candidate, one edge to a Euclidean-nearest
//! candidate in that cone (ties go to the smallest `S` index).
//!
//! [`yao_bruteforce`] scans all pairs. [`yao_bipartite`] answers the same
//! queries from a kd-tree, pruning subtrees by distance and by the set of
//! cones a bounding box can meet.

use crate::error::Result;
use crate::geometry::{cone_of_direction, squared_distance, validate_pair, ConeIndex, Point, SquaredLength};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YaoEdge<F> {
    pub terminal: usize,
    pub steiner: usize,
    pub cone: ConeIndex,
    pub w: SquaredLength<F>,
}

/// Edges grouped by terminal, each group ordered by cone.
#[derive(Debug, Clone, PartialEq)]
pub struct YaoGraph<F> {
    offsets: Vec<usize>,
    edges: Vec<YaoEdge<F>>,
}

impl<F: Scalar> YaoGraph<F> {
    pub fn terminal_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges_of(&self, terminal: usize) -> &[YaoEdge<F>] {
        &self.edges[self.offsets[terminal]..self.offsets[terminal + 1]]
    }

    pub fn edges(&self) -> &[YaoEdge<F>] {
        &self.edges
    }
}

type Best<F> = [Option<(SquaredLength<F>, usize)>; ConeIndex::COUNT];

#[inline]
fn offer<F: Scalar>(best: &mut Best<F>, cone: ConeIndex, w: SquaredLength<F>, steiner: usize) {
    let slot = &mut best[cone.get()];
    let better = match *slot {
        None => true,
        Some((bw, bs)) => w < bw || (w == bw && steiner < bs),
    };
    if better {
        *slot = Some((w, steiner));
    }
}

struct Builder<F> {
    offsets: Vec<usize>,
    edges: Vec<YaoEdge<F>>,
}

impl<F: Scalar> Builder<F> {
    fn with_capacity(n: usize) -> Self {
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        Builder {
            offsets,
            edges: Vec::with_capacity(n * 3),
        }
    }

    fn push_terminal(&mut self, terminal: usize, best: &Best<F>) {
        for (c, slot) in best.iter().enumerate() {
            if let Some((w, steiner)) = *slot {
                self.edges.push(YaoEdge {
                    terminal,
                    steiner,
                    cone: ConeIndex::new(c as u8).unwrap(),
                    w,
                });
            }
        }
        self.offsets.push(self.edges.len());
    }

    fn finish(self) -> YaoGraph<F> {
        YaoGraph {
            offsets: self.offsets,
            edges: self.edges,
        }
    }
}

/// Reference construction in `O(nm)`.
pub fn yao_bruteforce<F: Scalar>(terminals: &[Point<F>], steiner: &[Point<F>]) -> Result<YaoGraph<F>> {
    validate_pair(terminals, steiner)?;
    let mut out = Builder::with_capacity(terminals.len());
    for (t, &p) in terminals.iter().enumerate() {
        let mut best: Best<F> = [None; ConeIndex::COUNT];
        for (i, &s) in steiner.iter().enumerate() {
            if let Some(cone) = cone_of_direction(s.x - p.x, s.y - p.y) {
                offer(&mut best, cone, squared_distance(p, s), i);
            }
        }
        out.push_terminal(t, &best);
    }
    Ok(out.finish())
}

/// Accelerated construction; same output as [`yao_bruteforce`].
pub fn yao_bipartite<F: Scalar>(terminals: &[Point<F>], steiner: &[Point<F>]) -> Result<YaoGraph<F>> {
    validate_pair(terminals, steiner)?;
    Ok(yao_indexed(terminals, steiner))
}

pub(crate) fn yao_indexed<F: Scalar>(terminals: &[Point<F>], steiner: &[Point<F>]) -> YaoGraph<F> {
    let tree = KdTree::build(steiner);
    // Neighbouring queries share most of their traversal, so answering them
    // in spatial order keeps the tree in cache.
    let mut answers: Vec<Best<F>> = vec![[None; ConeIndex::COUNT]; terminals.len()];
    let mut stack = Vec::with_capacity(64);
    for t in spatial_order(terminals) {
        answers[t] = tree.cone_nearest(terminals[t], &mut stack);
    }
    let mut out = Builder::with_capacity(terminals.len());
    for (t, best) in answers.iter().enumerate() {
        out.push_terminal(t, best);
    }
    out.finish()
}

/// Indices of `points` in the leaf order of a median-split kd-tree.
fn spatial_order<F: Scalar>(points: &[Point<F>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    let mut pending = vec![(0, points.len())];
    while let Some((start, end)) = pending.pop() {
        if end - start <= LEAF_SIZE {
            continue;
        }
        let slice = &mut order[start..end];
        let (mut lo, mut hi) = (points[slice[0]], points[slice[0]]);
        for &i in slice.iter() {
            let q = points[i];
            lo.x = lo.x.min(q.x);
            lo.y = lo.y.min(q.y);
            hi.x = hi.x.max(q.x);
            hi.y = hi.y.max(q.y);
        }
        let split_x = hi.x - lo.x >= hi.y - lo.y;
        let mid = slice.len() / 2;
        slice.select_nth_unstable_by(mid, |&a, &b| {
            let (ka, kb) = if split_x {
                (points[a].x, points[b].x)
            } else {
                (points[a].y, points[b].y)
            };
            ka.partial_cmp(&kb).unwrap()
        });
        pending.push((start + mid, end));
        pending.push((start, start + mid));
    }
    order
}

const LEAF_SIZE: usize = 8;
const NO_CHILD: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Node<F> {
    lo: Point<F>,
    hi: Point<F>,
    start: u32,
    end: u32,
    left: u32,
    right: u32,
}

/// Static kd-tree over the Steiner candidates.
struct KdTree<F> {
    points: Vec<(Point<F>, usize)>,
    nodes: Vec<Node<F>>,
}

impl<F: Scalar> KdTree<F> {
    fn build(steiner: &[Point<F>]) -> Self {
        let mut tree = KdTree {
            points: steiner.iter().copied().enumerate().map(|(i, s)| (s, i)).collect(),
            nodes: Vec::with_capacity(2 * steiner.len() / LEAF_SIZE + 1),
        };
        tree.build_node(0, steiner.len());
        tree
    }

    fn build_node(&mut self, start: usize, end: usize) -> u32 {
        let slice = &mut self.points[start..end];
        let (mut lo, mut hi) = (slice[0].0, slice[0].0);
        for (q, _) in slice.iter() {
            lo.x = lo.x.min(q.x);
            lo.y = lo.y.min(q.y);
            hi.x = hi.x.max(q.x);
            hi.y = hi.y.max(q.y);
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(Node {
            lo,
            hi,
            start: start as u32,
            end: end as u32,
            left: NO_CHILD,
            right: NO_CHILD,
        });
        if end - start <= LEAF_SIZE {
            return id;
        }
        let split_x = hi.x - lo.x >= hi.y - lo.y;
        let mid = (end - start) / 2;
        slice.select_nth_unstable_by(mid, |a, b| {
            let (ka, kb) = if split_x { (a.0.x, b.0.x) } else { (a.0.y, b.0.y) };
            ka.partial_cmp(&kb).unwrap()
        });
        let left = self.build_node(start, start + mid);
        let right = self.build_node(start + mid, end);
        let node = &mut self.nodes[id as usize];
        node.left = left;
        node.right = right;
        id
    }

    fn cone_nearest(&self, p: Point<F>, stack: &mut Vec<u32>) -> Best<F> {
        let mut best: Best<F> = [None; ConeIndex::COUNT];
        stack.clear();
        stack.push(0);
        while let Some(id) = stack.pop() {
            let node = &self.nodes[id as usize];
            if !self.worth_visiting(node, p, &best) {
                continue;
            }
            if node.left == NO_CHILD {
                for &(s, i) in &self.points[node.start as usize..node.end as usize] {
                    if let Some(cone) = cone_of_direction(s.x - p.x, s.y - p.y) {
                        offer(&mut best, cone, squared_distance(p, s), i);
                    }
                }
                continue;
            }
            let (l, r) = (node.left, node.right);
            let dl = box_distance(&self.nodes[l as usize], p);
            let dr = box_distance(&self.nodes[r as usize], p);
            // Nearer child is popped first.
            if dl <= dr {
                stack.push(r);
                stack.push(l);
            } else {
                stack.push(l);
                stack.push(r);
            }
        }
        best
    }

    #[inline]
    fn worth_visiting(&self, node: &Node<F>, p: Point<F>, best: &Best<F>) -> bool {
        let mask = cone_mask(node, p);
        let d = box_distance(node, p);
        (0..ConeIndex::COUNT).any(|c| {
            mask & (1 << c) != 0
                && match best[c] {
                    None => true,
                    Some((w, _)) => d <= w,
                }
        })
    }
}

/// Squared distance from `p` to the box, computed through the same routine
/// as point distances so it never exceeds the distance to any point inside.
#[inline]
fn box_distance<F: Scalar>(node: &Node<F>, p: Point<F>) -> SquaredLength<F> {
    let q = Point::new(p.x.max(node.lo.x).min(node.hi.x), p.y.max(node.lo.y).min(node.hi.y));
    squared_distance(p, q)
}

const ALL_CONES: u8 = 0b11_1111;

/// Bit set of the cones around `p` that points of the box can fall in.
///
/// Outside the box, the box lies in a closed half-plane through `p` bounded
/// by an axis. On that half-plane the cone index, listed in angular order, is
/// monotone in each coordinate of the (rounded) direction separately, so the
/// extreme cones are attained at the corners and everything between them is
/// covered.
#[inline]
fn cone_mask<F: Scalar>(node: &Node<F>, p: Point<F>) -> u8 {
    let zero = F::zero();
    let (dx_lo, dx_hi) = (node.lo.x - p.x, node.hi.x - p.x);
    let (dy_lo, dy_hi) = (node.lo.y - p.y, node.hi.y - p.y);
    let order: &[u8] = if dx_lo > zero {
        &[4, 5, 0, 1]
    } else if dx_hi < zero {
        &[1, 2, 3, 4]
    } else if dy_lo > zero {
        &[0, 1, 2]
    } else if dy_hi < zero {
        &[3, 4, 5]
    } else {
        return ALL_CONES;
    };
    let mut lo_pos = usize::MAX;
    let mut hi_pos = 0;
    for (dx, dy) in [(dx_lo, dy_lo), (dx_lo, dy_hi), (dx_hi, dy_lo), (dx_hi, dy_hi)] {
        let cone = cone_of_direction(dx, dy).expect("corner differs from apex").get() as u8;
        let pos = order
            .iter()
            .position(|&c| c == cone)
            .expect("corner cone lies in half-plane");
        lo_pos = lo_pos.min(pos);
        hi_pos = hi_pos.max(pos);
    }
    order[lo_pos..=hi_pos].iter().fold(0, |acc, &c| acc | (1 << c))
}
