//! The test corpus: downset frames of every isomorphism class of posets up
//! to a size bound.
//!
//! Posets are enumerated as labeled strict orders and deduplicated by
//! canonical form (lexicographically smallest adjacency matrix over all
//! relabelings). Distinct poset classes give non-isomorphic downset frames,
//! so deduplication at the poset level is deduplication of the corpus.

use plf_core::frame::{FiniteFrame, PosetSpec};
use std::collections::BTreeSet;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct CorpusSpec {
    pub max_poset_size: usize,
    /// Also expose the standard non-distributive cover specs (N5, M3) for
    /// rejection exercises.
    pub include_nondistributive_rejects: bool,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec { max_poset_size: 5, include_nondistributive_rejects: false }
    }
}

/// One corpus entry: the source poset and its downset frame.
#[derive(Clone)]
pub struct CorpusFrame {
    pub name: String,
    pub poset: PosetSpec,
    pub frame: Arc<FiniteFrame>,
}

fn permute_matrix(n: usize, lt: &[bool], perm: &[usize]) -> Vec<bool> {
    let mut out = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = lt[perm[i] * n + perm[j]];
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(acc: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, used: &mut Vec<bool>, n: usize) {
        if cur.len() == n {
            acc.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(acc, cur, used, n);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut acc = Vec::new();
    rec(&mut acc, &mut Vec::new(), &mut vec![false; n], n);
    acc
}

/// All posets on exactly n points, one canonical representative per
/// isomorphism class, as strict-order matrices.
pub fn posets_of_size(n: usize) -> Vec<Vec<bool>> {
    assert!(n <= 5, "canonical-form enumeration is tuned for n ≤ 5");
    if n == 0 {
        return vec![vec![]];
    }
    let perms = permutations(n);
    let pair_count = n * (n - 1);
    // Index the off-diagonal cells.
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .collect();
    let mut canon: BTreeSet<Vec<bool>> = BTreeSet::new();
    for mask in 0u64..(1u64 << pair_count) {
        let mut lt = vec![false; n * n];
        for (k, &(i, j)) in cells.iter().enumerate() {
            if mask & (1 << k) != 0 {
                lt[i * n + j] = true;
            }
        }
        // Strict order: irreflexive (by construction), antisymmetric,
        // transitive.
        let mut ok = true;
        'check: for i in 0..n {
            for j in 0..n {
                if i != j && lt[i * n + j] && lt[j * n + i] {
                    ok = false;
                    break 'check;
                }
                for k in 0..n {
                    if lt[i * n + j] && lt[j * n + k] && !lt[i * n + k] {
                        ok = false;
                        break 'check;
                    }
                }
            }
        }
        if !ok {
            continue;
        }
        let best = perms
            .iter()
            .map(|p| permute_matrix(n, &lt, p))
            .min()
            .expect("at least the identity permutation");
        canon.insert(best);
    }
    canon.into_iter().collect()
}

/// Cover pairs of a strict-order matrix.
fn covers_of(n: usize, lt: &[bool]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if lt[i * n + j] {
                let between = (0..n).any(|k| lt[i * n + k] && lt[k * n + j]);
                if !between {
                    covers.push((i, j));
                }
            }
        }
    }
    covers
}

/// Downset frames of every poset class with size 0..=bound, in a
/// deterministic order.
pub fn generate_corpus(spec: &CorpusSpec) -> Vec<CorpusFrame> {
    let mut out = Vec::new();
    for n in 0..=spec.max_poset_size {
        for (idx, lt) in posets_of_size(n).iter().enumerate() {
            let poset = PosetSpec::new(n, covers_of(n, lt));
            let frame = Arc::new(
                FiniteFrame::downsets(&poset).expect("downsets of a poset form a frame"),
            );
            out.push(CorpusFrame { name: format!("P{n}.{idx}|D{}", frame.size()), poset, frame });
        }
    }
    out
}

/// The standard non-lattice / non-distributive cover specs used by the
/// rejection exercises: the pentagon and the diamond.
pub fn nondistributive_rejects() -> Vec<(&'static str, PosetSpec)> {
    vec![
        ("N5", PosetSpec::new(5, vec![(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])),
        ("M3", PosetSpec::new(5, vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use plf_core::frame::find_isomorphism;

    #[test]
    fn poset_class_counts() {
        // Independent oracle: the number of poset isomorphism classes on
        // 0..=5 points is 1, 1, 2, 5, 16, 63.
        let expected = [1usize, 1, 2, 5, 16, 63];
        for (n, want) in expected.iter().enumerate() {
            assert_eq!(posets_of_size(n).len(), *want, "poset classes on {n} points");
        }
    }

    #[test]
    fn corpus_bounds_and_determinism() {
        let c1 = generate_corpus(&CorpusSpec { max_poset_size: 1, ..Default::default() });
        let sizes: Vec<usize> = c1.iter().map(|c| c.frame.size()).collect();
        assert_eq!(sizes, vec![1, 2]);

        let c2 = generate_corpus(&CorpusSpec { max_poset_size: 2, ..Default::default() });
        assert!(c2.iter().any(|c| c.frame.size() == 3), "C3 from the 2-chain");
        assert!(c2.iter().any(|c| c.frame.size() == 4), "B2 from the antichain");

        let c3 = generate_corpus(&CorpusSpec { max_poset_size: 3, ..Default::default() });
        assert_eq!(c3.len(), 1 + 1 + 2 + 5);

        // Two runs agree exactly.
        let again = generate_corpus(&CorpusSpec { max_poset_size: 3, ..Default::default() });
        for (a, b) in c3.iter().zip(again.iter()) {
            assert_eq!(a.name, b.name);
            assert_eq!(a.poset, b.poset);
        }
    }

    #[test]
    fn corpus_frames_pairwise_nonisomorphic() {
        let corpus = generate_corpus(&CorpusSpec { max_poset_size: 3, ..Default::default() });
        for i in 0..corpus.len() {
            for j in (i + 1)..corpus.len() {
                assert!(
                    find_isomorphism(&corpus[i].frame, &corpus[j].frame).is_none(),
                    "{} vs {}",
                    corpus[i].name,
                    corpus[j].name
                );
            }
        }
    }

    #[test]
    fn rejects_are_rejected() {
        for (name, spec) in nondistributive_rejects() {
            assert!(FiniteFrame::build(&spec).is_err(), "{name} must not validate");
        }
    }

    #[test]
    fn isomorphism_is_an_equivalence_on_the_corpus() {
        let corpus = generate_corpus(&CorpusSpec { max_poset_size: 4, ..Default::default() });
        for c in &corpus {
            assert!(find_isomorphism(&c.frame, &c.frame).is_some(), "reflexive at {}", c.name);
        }
        // Symmetry and distinctness across the corpus; transitivity is
        // vacuous because all classes are singletons here.
        for i in 0..corpus.len() {
            for j in (i + 1)..corpus.len() {
                let fwd = find_isomorphism(&corpus[i].frame, &corpus[j].frame).is_some();
                let bwd = find_isomorphism(&corpus[j].frame, &corpus[i].frame).is_some();
                assert_eq!(fwd, bwd, "{} vs {}", corpus[i].name, corpus[j].name);
                assert!(!fwd, "corpus must be duplicate-free");
            }
        }
    }
}
