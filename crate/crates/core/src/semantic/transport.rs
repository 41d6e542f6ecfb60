//! Exact discrete optimal transport via successive shortest augmenting paths.
//!
//! The transportation problem is a min-cost flow on the bipartite graph
//! source -> rows -> columns -> sink. Each iteration finds a cheapest
//! source-sink path in the residual graph (Bellman-Ford, since backward arcs
//! carry negative cost) and pushes the bottleneck amount along it. Every push
//! exhausts a supply, a demand or a backward arc, so the loop terminates, and
//! the absence of negative cycles at each step makes the final flow optimal.

use crate::Scalar;

/// Flows between the supports of two distributions and the total cost.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportPlan<F> {
    /// `flows[i][j]` is the mass moved from row `i` to column `j`.
    pub flows: Vec<Vec<F>>,
    pub cost: F,
}

impl<F: Scalar> TransportPlan<F> {
    pub fn row_sums(&self) -> Vec<F> {
        self.flows
            .iter()
            .map(|r| r.iter().fold(F::zero(), |s, &x| s + x))
            .collect()
    }

    pub fn col_sums(&self) -> Vec<F> {
        let n = self.flows.first().map_or(0, Vec::len);
        (0..n)
            .map(|j| self.flows.iter().fold(F::zero(), |s, r| s + r[j]))
            .collect()
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Node {
    Source,
    Row(usize),
    Col(usize),
}

/// Solves `min Σ c_ij x_ij` subject to row sums `supply`, column sums
/// `demand` and `x >= 0`. Both marginals must be nonnegative with equal
/// totals; `cost` is `supply.len() x demand.len()`.
pub fn solve_transport<F: Scalar>(supply: &[F], demand: &[F], cost: &[Vec<F>]) -> TransportPlan<F> {
    let (m, n) = (supply.len(), demand.len());
    assert_eq!(cost.len(), m, "cost rows");
    assert!(cost.iter().all(|r| r.len() == n), "cost columns");
    let total = supply.iter().fold(F::zero(), |s, &x| s + x);
    let eps = F::epsilon() * F::lit(64.0) * total.max(F::one());

    let mut flows = vec![vec![F::zero(); n]; m];
    let mut left = supply.to_vec();
    let mut need = demand.to_vec();

    // Node layout: 0 = source, 1..=m rows, m+1..=m+n columns.
    let idx = |node: Node| match node {
        Node::Source => 0,
        Node::Row(i) => 1 + i,
        Node::Col(j) => 1 + m + j,
    };
    let nodes = 1 + m + n;

    loop {
        let mut dist: Vec<Option<F>> = vec![None; nodes];
        let mut pred: Vec<Option<Node>> = vec![None; nodes];
        dist[0] = Some(F::zero());
        for i in 0..m {
            if left[i] > eps {
                dist[idx(Node::Row(i))] = Some(F::zero());
                pred[idx(Node::Row(i))] = Some(Node::Source);
            }
        }
        // Bellman-Ford over row->col (forward) and col->row (backward) arcs.
        for _ in 0..nodes {
            let mut changed = false;
            for i in 0..m {
                let Some(di) = dist[idx(Node::Row(i))] else { continue };
                for (j, &c) in cost[i].iter().enumerate() {
                    let cand = di + c;
                    let cj = idx(Node::Col(j));
                    if dist[cj].is_none_or(|d| cand < d - eps) {
                        dist[cj] = Some(cand);
                        pred[cj] = Some(Node::Row(i));
                        changed = true;
                    }
                }
            }
            for j in 0..n {
                let Some(dj) = dist[idx(Node::Col(j))] else { continue };
                for i in 0..m {
                    if flows[i][j] <= eps {
                        continue;
                    }
                    let cand = dj - cost[i][j];
                    let ri = idx(Node::Row(i));
                    if dist[ri].is_none_or(|d| cand < d - eps) {
                        dist[ri] = Some(cand);
                        pred[ri] = Some(Node::Col(j));
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }

        // Cheapest reachable column that still has demand.
        let target = (0..n)
            .filter(|&j| need[j] > eps)
            .filter_map(|j| dist[idx(Node::Col(j))].map(|d| (j, d)))
            .min_by(|x, y| x.1.partial_cmp(&y.1).expect("finite costs"));
        let Some((target, _)) = target else { break };

        // Walk back to find the bottleneck.
        let mut path = Vec::new();
        let mut node = Node::Col(target);
        let mut amount = need[target];
        loop {
            let Some(prev) = pred[idx(node)] else {
                unreachable!("path reaches the source")
            };
            match (prev, node) {
                (Node::Source, Node::Row(i)) => {
                    amount = amount.min(left[i]);
                    path.push((prev, node));
                    break;
                }
                (Node::Col(j), Node::Row(i)) => amount = amount.min(flows[i][j]),
                _ => {}
            }
            path.push((prev, node));
            node = prev;
        }

        for &(from, to) in &path {
            match (from, to) {
                (Node::Source, Node::Row(i)) => left[i] = left[i] - amount,
                (Node::Row(i), Node::Col(j)) => flows[i][j] = flows[i][j] + amount,
                (Node::Col(j), Node::Row(i)) => flows[i][j] = flows[i][j] - amount,
                _ => {}
            }
        }
        need[target] = need[target] - amount;
    }

    let cost_total = flows
        .iter()
        .zip(cost)
        .flat_map(|(fr, cr)| fr.iter().zip(cr).map(|(&f, &c)| f * c))
        .fold(F::zero(), |s, x| s + x);
    TransportPlan {
        flows,
        cost: cost_total,
    }
}
