//! Brute-force reference computations used to cross-check the closed forms.

use std::collections::{HashMap, VecDeque};

use crate::perm::{ReflectionLabel, SignedPermutation};

/// Coxeter generators `s_0 = u_{1,-1}` and `s_i = u_{i,i+1}` of `B_n`.
pub fn coxeter_generators(n: usize) -> Vec<ReflectionLabel> {
    let mut gens = vec![ReflectionLabel::new(-1, 1).expect("valid label")];
    for i in 1..n as i32 {
        gens.push(ReflectionLabel::new(i, i + 1).expect("valid label"));
    }
    gens
}

/// Word length of every element of `B_n`, found by breadth-first search of
/// the Cayley graph from the identity.
pub fn bfs_word_lengths(n: usize) -> HashMap<SignedPermutation, u32> {
    let gens = coxeter_generators(n);
    let mut dist = HashMap::new();
    let start = SignedPermutation::identity(n);
    dist.insert(start.clone(), 0);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        let d = dist[&p];
        for &g in &gens {
            // Generators are always defined: s_0 is long, s_i joins two
            // positive values.
            let q = p.swap_values(g);
            if !dist.contains_key(&q) {
                dist.insert(q.clone(), d + 1);
                queue.push_back(q);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reaches_whole_group() {
        assert_eq!(bfs_word_lengths(1).len(), 2);
        assert_eq!(bfs_word_lengths(2).len(), 8);
        assert_eq!(bfs_word_lengths(3).len(), 48);
    }

    #[test]
    fn b2_lengths_by_hand() {
        let lengths = bfs_word_lengths(2);
        let at = |v: [i32; 2]| lengths[&SignedPermutation::new(v.to_vec()).unwrap()];
        assert_eq!(at([1, 2]), 0);
        assert_eq!(at([-1, 2]), 1);
        assert_eq!(at([2, 1]), 1);
        assert_eq!(at([-2, -1]), 3);
        assert_eq!(at([-1, -2]), 4);
    }
}
