//! Brute-force simple-cycle counter for small digraphs.
//!
//! Enumerates every vertex subset and every cyclic order of it, counting each
//! cycle once by fixing the smallest vertex first. Exponential; fine to |V|=8.

/// (number of simple cycles, length of the longest one) for an adjacency matrix.
pub fn count_cycles(adj: &Vec<Vec<bool>>) -> (u64, usize) {
    let n = adj.len();
    let mut count = 0u64;
    let mut max_len = 0usize;
    let mut subset: Vec<usize> = Vec::new();

    fn permute(
        adj: &Vec<Vec<bool>>,
        fixed: usize,
        rest: &mut Vec<usize>,
        chosen: &mut Vec<usize>,
        count: &mut u64,
        max_len: &mut usize,
    ) {
        if rest.is_empty() {
            // cycle fixed -> chosen[0] -> ... -> chosen[last] -> fixed
            let mut prev = fixed;
            for &v in chosen.iter() {
                if !adj[prev][v] {
                    return;
                }
                prev = v;
            }
            if adj[prev][fixed] {
                *count += 1;
                *max_len = (*max_len).max(chosen.len() + 1);
            }
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            chosen.push(v);
            permute(adj, fixed, rest, chosen, count, max_len);
            chosen.pop();
            rest.insert(i, v);
        }
    }

    fn subsets(
        adj: &Vec<Vec<bool>>,
        from: usize,
        subset: &mut Vec<usize>,
        count: &mut u64,
        max_len: &mut usize,
    ) {
        let n = adj.len();
        if subset.len() >= 2 {
            let fixed = subset[0];
            let mut rest: Vec<usize> = subset[1..].to_vec();
            let mut chosen = Vec::new();
            permute(adj, fixed, &mut rest, &mut chosen, count, max_len);
        }
        for v in from..n {
            subset.push(v);
            subsets(adj, v + 1, subset, count, max_len);
            subset.pop();
        }
    }

    subsets(adj, 0, &mut subset, &mut count, &mut max_len);
    let _ = n;
    (count, max_len)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adj(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; n]; n];
        for &(u, v) in edges {
            m[u][v] = true;
        }
        m
    }

    #[test]
    fn triangle_has_one_cycle() {
        assert_eq!(count_cycles(&adj(3, &[(0, 1), (1, 2), (2, 0)])), (1, 3));
    }

    #[test]
    fn acyclic_chain_has_none() {
        assert_eq!(count_cycles(&adj(3, &[(0, 1), (1, 2), (0, 2)])), (0, 0));
    }

    #[test]
    fn two_cycles_share_vertices() {
        // A->B->C->A plus C->D->A
        let m = adj(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 0)]);
        assert_eq!(count_cycles(&m), (2, 4));
    }

    #[test]
    fn two_vertex_cycle_counts() {
        assert_eq!(count_cycles(&adj(2, &[(0, 1), (1, 0)])), (1, 2));
    }
}
