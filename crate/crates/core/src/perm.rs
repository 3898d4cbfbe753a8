//! Permutations in one-line notation, the subpermutation (pattern) order,
//! direct sums, and inversion graphs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("a permutation must have length at least 1")]
    Empty,
    #[error("values are not a bijection on 1..={n}: {values:?}")]
    NotBijection { n: usize, values: Vec<u16> },
    #[error("cannot parse permutation token `{0}`")]
    BadToken(String),
    #[error("invalid ordered graph: {0}")]
    BadGraph(String),
}

/// A permutation of {1, ..., n} in one-line notation.
///
/// Immutable value object; ordering is by length first, then
/// lexicographically, which is the canonical order used for ground sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    values: Vec<u16>,
}

impl Permutation {
    pub fn new(values: Vec<u16>) -> Result<Self, PermError> {
        if values.is_empty() {
            return Err(PermError::Empty);
        }
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(PermError::NotBijection { n, values });
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { values })
    }

    /// The length-1 permutation.
    pub fn one() -> Self {
        Permutation { values: vec![1] }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as u16).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[u16] {
        &self.values
    }

    /// Standardisation: the pattern of an arbitrary sequence of distinct values.
    pub fn pattern_of(values: &[u16]) -> Self {
        let mut sorted: Vec<u16> = values.to_vec();
        sorted.sort_unstable();
        let ranks: Vec<u16> = values
            .iter()
            .map(|v| sorted.binary_search(v).unwrap() as u16 + 1)
            .collect();
        Permutation { values: ranks }
    }

    /// The pattern of the subsequence selected by `positions` (0-based, strictly increasing).
    pub fn subsequence_pattern(&self, positions: &[usize]) -> Self {
        let vals: Vec<u16> = positions.iter().map(|&i| self.values[i]).collect();
        Self::pattern_of(&vals)
    }

    /// Direct sum: `self` followed by a shifted copy of `other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let k = self.len() as u16;
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|&v| v + k));
        Permutation { values }
    }

    /// Subpermutation containment: does `self` have a subsequence
    /// order-isomorphic to `pattern`?
    ///
    /// Depth-first embedding search with prefix pruning; patterns in this
    /// crate are short, so nothing cleverer is needed.
    pub fn contains(&self, pattern: &Self) -> bool {
        let k = pattern.len();
        if k > self.len() {
            return false;
        }
        let mut chosen: Vec<u16> = Vec::with_capacity(k);
        self.embed(&pattern.values, 0, &mut chosen)
    }

    fn embed(&self, patt: &[u16], start: usize, chosen: &mut Vec<u16>) -> bool {
        let j = chosen.len();
        if j == patt.len() {
            return true;
        }
        let remaining = patt.len() - j;
        if start + remaining > self.len() {
            return false;
        }
        for i in start..=self.len() - remaining {
            let v = self.values[i];
            let consistent = chosen
                .iter()
                .zip(patt.iter())
                .all(|(&w, &p)| (p < patt[j]) == (w < v));
            if consistent {
                chosen.push(v);
                if self.embed(patt, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// True iff no proper prefix of length i has maximum value i.
    ///
    /// Equivalent to connectivity of the inversion graph; the graph check is
    /// kept as a test oracle.
    pub fn is_indecomposable(&self) -> bool {
        let mut max = 0u16;
        for (i, &v) in self.values.iter().enumerate() {
            max = max.max(v);
            if max as usize == i + 1 && i + 1 < self.len() {
                return false;
            }
        }
        true
    }

    /// The unique decomposition into indecomposable direct summands.
    pub fn sum_components(&self) -> Vec<Permutation> {
        let mut parts = Vec::new();
        let mut max = 0u16;
        let mut block_start = 0usize;
        for (i, &v) in self.values.iter().enumerate() {
            max = max.max(v);
            if max as usize == i + 1 {
                let offset = block_start as u16;
                let vals: Vec<u16> = self.values[block_start..=i]
                    .iter()
                    .map(|&x| x - offset)
                    .collect();
                parts.push(Permutation { values: vals });
                block_start = i + 1;
            }
        }
        parts
    }

    /// The inversion graph: vertices 1..=n, edge (i,j) for i<j with σ(i)>σ(j).
    pub fn graph(&self) -> OrderedGraph {
        let n = self.len();
        let mut edges = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.values[i] > self.values[j] {
                    edges.insert((i + 1, j + 1));
                }
            }
        }
        OrderedGraph { n, edges }
    }

    /// Compact digit form for n ≤ 9, else space-separated.
    pub fn compact(&self) -> String {
        if self.len() <= 9 {
            self.values.iter().map(|v| v.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), &self.values).cmp(&(other.len(), &other.values))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.compact())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts whitespace- or comma-separated integers, or a single digit
    /// token when n ≤ 9 (e.g. "2413").
    fn from_str(s: &str) -> Result<Self, PermError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PermError::Empty);
        }
        let tokens: Vec<&str> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        let values: Vec<u16> = if tokens.len() == 1 && tokens[0].len() > 1 {
            let t = tokens[0];
            if !t.chars().all(|c| c.is_ascii_digit()) {
                return Err(PermError::BadToken(t.to_string()));
            }
            if t.len() > 9 {
                return Err(PermError::BadToken(t.to_string()));
            }
            t.chars().map(|c| c.to_digit(10).unwrap() as u16).collect()
        } else {
            tokens
                .iter()
                .map(|t| {
                    t.parse::<u16>()
                        .map_err(|_| PermError::BadToken(t.to_string()))
                })
                .collect::<Result<_, _>>()?
        };
        Permutation::new(values)
    }
}

/// An ordered graph: a graph with a linear order on its vertices (1..=n).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderedGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl OrderedGraph {
    pub fn new(n: usize, edges: BTreeSet<(usize, usize)>) -> Result<Self, PermError> {
        for &(i, j) in &edges {
            if i >= j || i < 1 || j > n {
                return Err(PermError::BadGraph(format!(
                    "edge ({i},{j}) out of range for n={n}"
                )));
            }
        }
        Ok(OrderedGraph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(i, j)| i == v || j == v)
            .count()
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(i, j)| {
                if i == v {
                    Some(j)
                } else if j == v {
                    Some(i)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1usize];
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// True iff the graph is a path on all n vertices (n=1: single vertex).
    pub fn is_path(&self) -> bool {
        if self.n == 1 {
            return self.edges.is_empty();
        }
        if self.edges.len() != self.n - 1 || !self.is_connected() {
            return false;
        }
        let mut deg1 = 0;
        for v in 1..=self.n {
            match self.degree(v) {
                1 => deg1 += 1,
                2 => {}
                _ => return false,
            }
        }
        deg1 == 2
    }

    /// The star K_{1,u} test: one centre of degree u = n-1, all others pendant.
    pub fn is_star(&self) -> Option<usize> {
        if self.n < 2 || self.edges.len() != self.n - 1 {
            return None;
        }
        let mut centre = None;
        for v in 1..=self.n {
            let d = self.degree(v);
            if d == self.n - 1 {
                centre = Some(v);
            } else if d != 1 {
                return None;
            }
        }
        centre
    }

    /// Brute-force induced ordered subgraph test (test oracle; exponential).
    pub fn is_induced_ordered_subgraph_of(&self, host: &OrderedGraph) -> bool {
        let k = self.n;
        if k > host.n {
            return false;
        }
        fn rec(pat: &OrderedGraph, host: &OrderedGraph, map: &mut Vec<usize>) -> bool {
            let j = map.len();
            if j == pat.n {
                return true;
            }
            let lo = map.last().map_or(1, |&v| v + 1);
            for cand in lo..=host.n - (pat.n - j - 1) {
                let ok = (0..j).all(|q| {
                    let (a, b) = (q + 1, j + 1);
                    let pat_edge = pat.edges.contains(&(a.min(b), a.max(b)));
                    let (x, y) = (map[q].min(cand), map[q].max(cand));
                    pat_edge == host.edges.contains(&(x, y))
                });
                if ok {
                    map.push(cand);
                    if rec(pat, host, map) {
                        return true;
                    }
                    map.pop();
                }
            }
            false
        }
        rec(self, host, &mut Vec::with_capacity(k))
    }
}
