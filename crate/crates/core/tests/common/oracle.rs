//! Brute-force reference implementations.

/// Minimum over the vertices of the transportation polytope. A vertex is a
/// spanning tree of the bipartite row/column graph whose flows, fixed by
/// peeling leaves, are all nonnegative.
pub fn vertex_enumeration(supply: &[f64], demand: &[f64], cost: &[Vec<f64>]) -> f64 {
    let (m, n) = (supply.len(), demand.len());
    let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let k = m + n - 1;
    let mut best = f64::INFINITY;
    let mut pick = vec![0usize; k];
    fn next(pick: &mut [usize], total: usize) -> bool {
        let k = pick.len();
        for i in (0..k).rev() {
            if pick[i] < total - k + i {
                pick[i] += 1;
                for j in i + 1..k {
                    pick[j] = pick[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
    for (i, p) in pick.iter_mut().enumerate() {
        *p = i;
    }
    loop {
        if let Some(flows) = tree_flows(&pick.iter().map(|&c| cells[c]).collect::<Vec<_>>(), supply, demand) {
            let c: f64 = flows.iter().map(|&((i, j), x)| x * cost[i][j]).sum();
            best = best.min(c);
        }
        if !next(&mut pick, cells.len()) {
            return best;
        }
    }
}

fn tree_flows(edges: &[(usize, usize)], supply: &[f64], demand: &[f64]) -> Option<Vec<((usize, usize), f64)>> {
    let mut row_left = supply.to_vec();
    let mut col_left = demand.to_vec();
    let mut open: Vec<(usize, usize)> = edges.to_vec();
    let mut out = Vec::new();
    while !open.is_empty() {
        let row_deg = |i: usize| open.iter().filter(|e| e.0 == i).count();
        let col_deg = |j: usize| open.iter().filter(|e| e.1 == j).count();
        let (pos, from_row) = open.iter().enumerate().find_map(|(p, &(i, j))| {
            if row_deg(i) == 1 {
                Some((p, true))
            } else if col_deg(j) == 1 {
                Some((p, false))
            } else {
                None
            }
        })?;
        let (i, j) = open.remove(pos);
        let x = if from_row { row_left[i] } else { col_left[j] };
        if x < -1e-9 {
            return None;
        }
        row_left[i] -= x;
        col_left[j] -= x;
        out.push(((i, j), x));
    }
    let balanced = row_left.iter().chain(&col_left).all(|r| r.abs() < 1e-9);
    balanced.then_some(out)
}

fn is_subsequence<T: PartialEq>(sub: &[&T], of: &[T]) -> bool {
    let mut it = of.iter();
    sub.iter().all(|c| it.any(|d| d == *c))
}

/// Longest common subsequence by trying every subsequence of `a`.
pub fn exhaustive_lcs<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    assert!(a.len() < 32);
    let mut best = 0;
    for s in 0..(1u32 << a.len()) {
        let sub: Vec<&T> = (0..a.len()).filter(|i| s >> i & 1 == 1).map(|i| &a[i]).collect();
        if sub.len() > best && is_subsequence(&sub, b) {
            best = sub.len();
        }
    }
    best
}
