//! Independent brute-force engines backing the derived test values and the
//! oracle-equivalence checks. Deliberately simple and slow; cost guards are
//! hard errors, never silent truncation. The environment variable
//! `GROWTHLAB_MAX_ORACLE_N` lowers every guard for constrained CI runs.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("oracle size {requested} exceeds the guard {limit} for {what}")]
    TooLarge {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    #[error("generator {0} is decomposable; sum-closure generators must be indecomposable")]
    DecomposableGenerator(Permutation),
}

fn env_cap() -> Option<usize> {
    std::env::var("GROWTHLAB_MAX_ORACLE_N")
        .ok()
        .and_then(|v| v.parse().ok())
}

fn guard(what: &'static str, requested: usize, default_limit: usize) -> Result<(), OracleError> {
    let limit = env_cap().map_or(default_limit, |c| c.min(default_limit));
    if requested > limit {
        return Err(OracleError::TooLarge {
            what,
            requested,
            limit,
        });
    }
    Ok(())
}

/// All n! permutations of length n in lexicographic order.
pub fn all_permutations(n: usize) -> Result<Vec<Permutation>, OracleError> {
    guard("all_permutations", n, 10)?;
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut values: Vec<u16> = (1..=n as u16).collect();
    loop {
        out.push(Permutation::new(values.clone()).expect("valid by construction"));
        // next permutation in lexicographic order
        let Some(i) = (0..n - 1).rev().find(|&i| values[i] < values[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| values[j] > values[i]).unwrap();
        values.swap(i, j);
        values[i + 1..].reverse();
    }
    Ok(out)
}

/// Counts by length of the sum closure of a generator set, by explicit
/// generation of every direct sum and deduplication.
pub fn brute_subclosure_counts(
    generators: &[Permutation],
    n_max: usize,
) -> Result<Vec<u64>, OracleError> {
    guard("brute_subclosure_counts", n_max, 12)?;
    for g in generators {
        if !g.is_indecomposable() {
            return Err(OracleError::DecomposableGenerator(g.clone()));
        }
    }
    let mut by_len: Vec<BTreeSet<Permutation>> = vec![BTreeSet::new(); n_max + 1];
    for n in 1..=n_max {
        for g in generators {
            let k = g.len();
            if k > n {
                continue;
            }
            if k == n {
                by_len[n].insert(g.clone());
            } else {
                let tails: Vec<Permutation> = by_len[n - k].iter().cloned().collect();
                for t in tails {
                    by_len[n].insert(g.direct_sum(&t));
                }
            }
        }
    }
    Ok((1..=n_max).map(|n| by_len[n].len() as u64).collect())
}

/// All distinct indecomposable subpermutation patterns of σ, by subsequence
/// enumeration.
pub fn brute_indec_subperms(sigma: &Permutation) -> Result<Vec<Permutation>, OracleError> {
    guard("brute_indec_subperms", sigma.len(), 15)?;
    let n = sigma.len();
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    let mut positions: Vec<usize> = Vec::with_capacity(n);
    for mask in 1u32..(1u32 << n) {
        positions.clear();
        for i in 0..n {
            if mask & (1 << i) != 0 {
                positions.push(i);
            }
        }
        let pat = sigma.subsequence_pattern(&positions);
        if pat.is_indecomposable() {
            seen.insert(pat);
        }
    }
    Ok(seen.into_iter().collect())
}

/// All subsets of `ground` that are downward closed within it and contain
/// `required`, by subset enumeration with containment pre-computation.
/// Output downsets are canonically sorted, so repeated runs are identical.
pub fn brute_downsets(
    ground: &[Permutation],
    required: &[Permutation],
) -> Result<Vec<Vec<Permutation>>, OracleError> {
    guard("brute_downsets", ground.len(), 24)?;
    let k = ground.len();
    let mut below = vec![0u32; k];
    for (j, b) in below.iter_mut().enumerate() {
        for i in 0..k {
            if i != j && ground[j].contains(&ground[i]) {
                *b |= 1 << i;
            }
        }
    }
    let mut required_mask = 0u32;
    for r in required {
        match ground.iter().position(|g| g == r) {
            Some(i) => required_mask |= 1 << i,
            None => return Ok(vec![]),
        }
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << k) {
        if mask & required_mask != required_mask {
            continue;
        }
        let mut closed = true;
        for (j, b) in below.iter().enumerate() {
            if mask & (1 << j) != 0 && b & !mask != 0 {
                closed = false;
                break;
            }
        }
        if closed {
            let set: Vec<Permutation> = (0..k)
                .filter(|&j| mask & (1 << j) != 0)
                .map(|j| ground[j].clone())
                .collect();
            out.push(set);
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn all_permutations_basics() {
        assert_eq!(all_permutations(1).unwrap(), vec![p("1")]);
        let p3 = all_permutations(3).unwrap();
        assert_eq!(p3.len(), 6);
        assert_eq!(p3[0], p("123"));
        assert_eq!(p3[5], p("321"));
        assert_eq!(all_permutations(8).unwrap().len(), 40320);
        assert!(all_permutations(11).is_err());
    }

    #[test]
    fn subclosure_counts() {
        let ones = brute_subclosure_counts(&[p("1")], 6).unwrap();
        assert_eq!(ones, vec![1, 1, 1, 1, 1, 1]);
        let fib = brute_subclosure_counts(&[p("1"), p("21")], 8).unwrap();
        assert_eq!(fib, vec![1, 2, 3, 5, 8, 13, 21, 34]);
        assert!(matches!(
            brute_subclosure_counts(&[p("12")], 4),
            Err(OracleError::DecomposableGenerator(_))
        ));
    }

    #[test]
    fn indec_subperms_examples() {
        assert_eq!(brute_indec_subperms(&p("12345")).unwrap(), vec![p("1")]);
        // ψ_7 contains exactly the stars ψ_u for u ≤ 7 among star shapes
        let psi7 = crate::osc::star(7).unwrap();
        let subs = brute_indec_subperms(&psi7).unwrap();
        for u in 2..=7 {
            assert!(subs.contains(&crate::osc::star(u).unwrap()));
        }
        assert!(!subs.iter().any(|q| q.len() > 8));
    }

    #[test]
    fn downsets_oracle() {
        let ground: Vec<Permutation> = vec![p("1"), p("21"), p("231"), p("312")];
        let all = brute_downsets(&ground, &[]).unwrap();
        // downsets of the 4-element poset 1 < 21 < {231, 312}:
        // ∅, {1}, {1,21}, and {1,21} plus any subset of the top antichain
        assert_eq!(all.len(), 6);
        let required = brute_downsets(&ground, &[p("21")]).unwrap();
        assert_eq!(required.len(), 4);
        let whole = brute_downsets(&ground, &ground.clone()).unwrap();
        assert_eq!(whole.len(), 1);
    }
}
