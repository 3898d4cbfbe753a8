//! Downset machinery over the subpermutation order: the R-cells of doubly
//! inflated oscillations, the families F_n^{r,s} of downsets containing
//! ω_n^{3,2}, generalised-digit enumeration profiles, the Q^{r,s} sets of
//! leftover indecomposables, and the U ⇓_{r,s} L collections of extra sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::digits::GeneralisedDigit;
use crate::growth::EnumSequence;
use crate::osc::{inflated_oscillation, primary_oscillation, secondary_oscillation, star, OscKind};
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PosetError {
    #[error("R-cell parameters need odd n >= 5 and r, s >= 2; got n={n}, r={r}, s={s}")]
    BadRCell { n: usize, r: usize, s: usize },
    #[error("F-family parameters need odd n >= 5, r >= 3, s >= 2; got n={n}, r={r}, s={s}")]
    BadFFamily { n: usize, r: usize, s: usize },
    #[error("Q-set parameters need r >= s >= 2; got r={r}, s={s}")]
    BadQParams { r: usize, s: usize },
    #[error("permutation {0} is not indecomposable")]
    NotIndecomposable(Permutation),
    #[error("required permutation {0} is not a subpermutation of any maximal element")]
    RequiredNotBelow(Permutation),
    #[error("required permutation {source} lies in Q^({r},{s})")]
    RequiredInQ {
        #[source]
        source: NoSource,
        r: usize,
        s: usize,
    },
    #[error("ground element {source} lies in the R-cell omega_{m}^({u},{v}), so the collection is unsuitable")]
    GroundInRCell {
        #[source]
        source: NoSource,
        m: usize,
        u: usize,
        v: usize,
    },
}

// thiserror needs a displayable payload for the offending permutation;
// a tiny struct keeps the error type Clone + PartialEq.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{perm}")]
pub struct NoSource {
    pub perm: Permutation,
}

/// A finite downward closed set of permutations, sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Downset {
    elements: Vec<Permutation>,
}

impl Downset {
    pub fn from_elements(mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        Downset { elements }
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Elements with no other element of the downset above them.
    pub fn maximal_elements(&self) -> Vec<Permutation> {
        self.elements
            .iter()
            .filter(|p| {
                !self
                    .elements
                    .iter()
                    .any(|q| q.len() > p.len() && q.contains(p))
            })
            .cloned()
            .collect()
    }

    /// Downward closure check within an ambient ground set.
    pub fn is_downward_closed_in(&self, ground: &[Permutation]) -> bool {
        ground.iter().all(|tau| {
            self.contains(tau)
                || !self
                    .elements
                    .iter()
                    .any(|sigma| sigma.len() > tau.len() && sigma.contains(tau))
        })
    }
}

/// Counts of a finite set of permutations by length, from the shortest
/// element; the empty set has base_length 0 and no counts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EnumProfile {
    pub base_length: usize,
    pub counts: Vec<u64>,
}

impl EnumProfile {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// The generalised digit recording these counts when attached at
    /// position `position` (c_i counts elements of length position + i).
    pub fn to_digit_at(&self, position: usize) -> GeneralisedDigit {
        if self.counts.is_empty() {
            return GeneralisedDigit::zero();
        }
        assert!(
            self.base_length >= position,
            "profile base length {} below digit position {position}",
            self.base_length
        );
        let offset = self.base_length - position;
        let mut subdigits = vec![0u64; offset];
        subdigits.extend(self.counts.iter().copied());
        GeneralisedDigit::new(subdigits)
    }
}

/// Counts-by-length profile of a downset (or any finite set).
pub fn enum_profile(d: &Downset) -> EnumProfile {
    profile_of(d.elements())
}

pub fn profile_of(elements: &[Permutation]) -> EnumProfile {
    if elements.is_empty() {
        return EnumProfile {
            base_length: 0,
            counts: vec![],
        };
    }
    let base = elements.iter().map(|p| p.len()).min().unwrap();
    let top = elements.iter().map(|p| p.len()).max().unwrap();
    let mut counts = vec![0u64; top - base + 1];
    for p in elements {
        counts[p.len() - base] += 1;
    }
    EnumProfile {
        base_length: base,
        counts,
    }
}

fn check_r_cell(n: usize, r: usize, s: usize) -> Result<(), PosetError> {
    if n < 5 || n.is_multiple_of(2) || r < 2 || s < 2 {
        return Err(PosetError::BadRCell { n, r, s });
    }
    Ok(())
}

/// R_n^{r,s} = {ω_n^{u,v} : 2 <= u <= r, 2 <= v <= s}, sorted canonically.
pub fn r_set(n: usize, r: usize, s: usize) -> Result<Vec<Permutation>, PosetError> {
    check_r_cell(n, r, s)?;
    let mut out = Vec::with_capacity((r - 1) * (s - 1));
    for u in 2..=r {
        for v in 2..=s {
            out.push(
                inflated_oscillation(n, u, v, OscKind::Primary).expect("validated parameters"),
            );
        }
    }
    out.sort();
    Ok(out)
}

/// Monotone staircases of the (r−1)×(s−1) grid: column extents
/// c_2 >= c_3 >= … >= c_r with 0 <= c_u <= s−1; exactly the downsets of the
/// cell under the componentwise order. `require_32` keeps only those
/// containing (3,2), i.e. c_3 >= 1.
fn grid_downsets(r: usize, s: usize, require_32: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut extents = vec![0usize; r - 1];
    fn rec(
        out: &mut Vec<Vec<usize>>,
        extents: &mut Vec<usize>,
        col: usize,
        max_here: usize,
        r: usize,
        require_32: bool,
    ) {
        if col == r - 1 {
            if !require_32 || (extents.len() >= 2 && extents[1] >= 1) {
                out.push(extents.clone());
            }
            return;
        }
        for e in (0..=max_here).rev() {
            extents[col] = e;
            rec(out, extents, col + 1, e, r, require_32);
        }
        extents[col] = 0;
    }
    rec(&mut out, &mut extents, 0, s - 1, r, require_32);
    out
}

fn grid_profile(extents: &[usize]) -> Vec<u64> {
    // counts by u+v−4: cell (u, v) included iff v−1 <= extents[u−2]
    let r = extents.len() + 1;
    let mut counts: Vec<u64> = vec![];
    for (ui, &e) in extents.iter().enumerate() {
        let u = ui + 2;
        for v in 2..=(e + 1) {
            let idx = u + v - 4;
            if counts.len() <= idx {
                counts.resize(idx + 1, 0);
            }
            counts[idx] += 1;
        }
    }
    let _ = r;
    while counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}

/// F_n^{r,s}: all downward closed subsets of R_n^{r,s} containing ω_n^{3,2},
/// materialised as permutation downsets.
pub fn f_family(n: usize, r: usize, s: usize) -> Result<Vec<Downset>, PosetError> {
    if n < 5 || n.is_multiple_of(2) || r < 3 || s < 2 {
        return Err(PosetError::BadFFamily { n, r, s });
    }
    let mut out = Vec::new();
    for extents in grid_downsets(r, s, true) {
        let mut elements = Vec::new();
        for (ui, &e) in extents.iter().enumerate() {
            let u = ui + 2;
            for v in 2..=(e + 1) {
                elements.push(
                    inflated_oscillation(n, u, v, OscKind::Primary).expect("validated parameters"),
                );
            }
        }
        out.push(Downset::from_elements(elements));
    }
    out.sort();
    Ok(out)
}

/// The distinct enumeration digits of F_n^{r,s} (independent of n): each is
/// 1.c_1c_2…, counts by length offset from n+2, sorted canonically.
pub fn f_profile_digits(r: usize, s: usize) -> Result<Vec<GeneralisedDigit>, PosetError> {
    if r < 3 || s < 2 {
        return Err(PosetError::BadFFamily { n: 5, r, s });
    }
    let mut set = BTreeSet::new();
    for extents in grid_downsets(r, s, true) {
        set.insert(GeneralisedDigit::new(
            grid_profile(&extents).into_iter().collect(),
        ));
    }
    Ok(set.into_iter().collect())
}

/// Number of distinct enumerations of F_n^{r,s}, by brute force.
pub fn distinct_profiles(r: usize, s: usize) -> Result<u64, PosetError> {
    Ok(f_profile_digits(r, s)?.len() as u64)
}

/// Closed form Σ_{i=0}^{s-1} (s-i)·C(r-2, i) − 2 (the index-0 variant that
/// matches the instance counts).
pub fn distinct_profiles_closed_form(r: usize, s: usize) -> u64 {
    (0..=s - 1)
        .map(|i| (s - i) as u64 * binom(r - 2, i))
        .sum::<u64>()
        - 2
}

/// The same closed form with the sum started at i=1 instead; kept for
/// report flagging, it does not match the brute-force counts.
pub fn distinct_profiles_from_one_form(r: usize, s: usize) -> u64 {
    (1..=s - 1)
        .map(|i| (s - i) as u64 * binom(r - 2, i))
        .sum::<u64>()
        .saturating_sub(2)
}

pub fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// |F_n^{r,s}| closed form C(r+s−2, r−1) − s.
pub fn f_family_size_closed_form(r: usize, s: usize) -> u64 {
    binom(r + s - 2, r - 1) - s as u64
}

/// Lattice-path counting oracle for |F_n^{r,s}|: paths of northeast and
/// southeast steps across the cell Hasse diagram, counted directly as
/// monotone staircases, minus the s downsets missing (3,2).
pub fn f_family_size_path_oracle(r: usize, s: usize) -> u64 {
    grid_downsets(r, s, false).len() as u64 - s as u64
}

fn check_q_params(r: usize, s: usize) -> Result<(), PosetError> {
    if r < s || s < 2 {
        return Err(PosetError::BadQParams { r, s });
    }
    Ok(())
}

/// The sequence enumerating Q^{r,s}, as the termwise sum of the five
/// constituent families' eventually constant sequences. Symmetric in (r, s);
/// arguments are swapped so that r >= s.
pub fn q_sequence(r: usize, s: usize) -> Result<EnumSequence, PosetError> {
    let (r, s) = if r >= s { (r, s) } else { (s, r) };
    check_q_params(r, s)?;
    let primary = EnumSequence::new(vec![], vec![1]).unwrap();
    let secondary = EnumSequence::new(vec![0, 0], vec![1]).unwrap();
    let mut star_pre = vec![0, 0, 0];
    star_pre.extend(std::iter::repeat_n(1, r - 1));
    let stars = EnumSequence::new(star_pre, vec![0]).unwrap();
    let one_end = |cap: usize| {
        let mut pre = vec![0, 0, 0, 0];
        pre.extend((1..=cap as u64 - 2).collect::<Vec<_>>());
        EnumSequence::new(pre, vec![cap as u64 - 1]).unwrap()
    };
    let lower = one_end(r);
    let upper = one_end(s);
    Ok(primary.add(&secondary).add(&stars).add(&lower).add(&upper))
}

/// Explicit members of Q^{r,s} (r >= s >= 2) up to length `max_len`: primary
/// and secondary oscillations, stars ψ_u (3 <= u <= r+1), lower-end
/// inflations ω_m^{u,1}, and upper-end inflations ω_m^{1,v} (odd m) and
/// ω̄_m^{1,v} (even m).
pub fn q_set(r: usize, s: usize, max_len: usize) -> Result<Vec<Permutation>, PosetError> {
    check_q_params(r, s)?;
    assert!(max_len >= 1);
    let mut out: Vec<Permutation> = Vec::new();
    for m in 1..=max_len {
        out.push(primary_oscillation(m).expect("m >= 1"));
    }
    for m in 3..=max_len {
        out.push(secondary_oscillation(m).expect("m >= 3"));
    }
    for u in 3..=r + 1 {
        if u < max_len {
            out.push(star(u).expect("u >= 2"));
        }
    }
    for m in 4.. {
        if m + 1 > max_len {
            break;
        }
        for u in 2..=r {
            if m + u - 1 <= max_len {
                out.push(inflated_oscillation(m, u, 1, OscKind::Primary).expect("valid"));
            }
        }
        for v in 2..=s {
            if m + v - 1 <= max_len {
                let kind = if m % 2 == 1 {
                    OscKind::Primary
                } else {
                    OscKind::Secondary
                };
                out.push(inflated_oscillation(m, 1, v, kind).expect("valid"));
            }
        }
    }
    let before = out.len();
    out.sort();
    out.dedup();
    debug_assert_eq!(before, out.len(), "Q constituent families must be disjoint");
    Ok(out)
}

/// Structural membership test for Q^{r,s} (r >= s >= 2): matches the five
/// constituent shapes by generate-and-compare, so the infinite Q never needs
/// materialising beyond the candidate's own length.
pub fn is_q_member(p: &Permutation, r: usize, s: usize) -> Result<bool, PosetError> {
    check_q_params(r, s)?;
    let len = p.len();
    if *p == primary_oscillation(len).expect("len >= 1") {
        return Ok(true);
    }
    if len >= 3 && *p == secondary_oscillation(len).expect("len >= 3") {
        return Ok(true);
    }
    if len >= 4 && len <= r + 2 && *p == star(len - 1).expect("len >= 4") {
        return Ok(true);
    }
    for u in 2..=r {
        if len >= u + 3 {
            let m = len + 1 - u;
            if m >= 4 && *p == inflated_oscillation(m, u, 1, OscKind::Primary).expect("valid") {
                return Ok(true);
            }
        }
    }
    for v in 2..=s {
        if len >= v + 3 {
            let m = len + 1 - v;
            if m >= 4 {
                let kind = if m % 2 == 1 {
                    OscKind::Primary
                } else {
                    OscKind::Secondary
                };
                if *p == inflated_oscillation(m, 1, v, kind).expect("valid") {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Does p equal ω_m^{u,v} for some odd m >= 5 and u, v >= 2 (an R-cell
/// element for some parameters)? Returns the witness on success.
pub fn r_cell_witness(p: &Permutation) -> Option<(usize, usize, usize)> {
    let len = p.len();
    // len = m − 2 + u + v with m >= 5 odd, u, v >= 2
    for u in 2..len {
        for v in 2..len {
            if u + v + 3 > len {
                continue;
            }
            let m = len + 2 - u - v;
            if m >= 5
                && !m.is_multiple_of(2)
                && *p == inflated_oscillation(m, u, v, OscKind::Primary).expect("valid")
            {
                return Some((m, u, v));
            }
        }
    }
    None
}

/// All distinct indecomposable subpermutation patterns of p, by subsequence
/// enumeration. Exponential; lengths in this crate stay at most 15.
pub fn indec_subpermutations(p: &Permutation) -> Vec<Permutation> {
    let n = p.len();
    assert!(n <= 20, "subpermutation extraction guard");
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    let mut positions = Vec::with_capacity(n);
    for mask in 1u32..(1u32 << n) {
        positions.clear();
        for i in 0..n {
            if mask & (1 << i) != 0 {
                positions.push(i);
            }
        }
        let pat = p.subsequence_pattern(&positions);
        if pat.is_indecomposable() {
            seen.insert(pat);
        }
    }
    seen.into_iter().collect()
}

/// A U ⇓_{r,s} L collection: the downward closed subsets of ↓U ∖ Q^{r,s}
/// that include L, together with the ground poset.
#[derive(Clone, Debug)]
pub struct DownsetCollection {
    pub r: usize,
    pub s: usize,
    pub maximal: Vec<Permutation>,
    pub required: Vec<Permutation>,
    pub ground: Vec<Permutation>,
    /// order[i][j] = ground[i] <= ground[j]
    order: Vec<Vec<bool>>,
    pub downsets: Vec<Downset>,
}

/// Build U ⇓_{r,s} L. Preconditions are validated and reported with the
/// offending permutation: every element of U and L indecomposable, L ⊆ ↓U,
/// L ∩ Q^{r,s} = ∅; suitability additionally demands the ground set avoid
/// every R-cell.
pub fn downset_collection(
    u_set: &[Permutation],
    l_set: &[Permutation],
    r: usize,
    s: usize,
) -> Result<DownsetCollection, PosetError> {
    check_q_params(r, s)?;
    for p in u_set.iter().chain(l_set.iter()) {
        if !p.is_indecomposable() {
            return Err(PosetError::NotIndecomposable(p.clone()));
        }
    }
    for l in l_set {
        if !u_set.iter().any(|u| u.contains(l)) {
            return Err(PosetError::RequiredNotBelow(l.clone()));
        }
        if is_q_member(l, r, s)? {
            return Err(PosetError::RequiredInQ {
                source: NoSource { perm: l.clone() },
                r,
                s,
            });
        }
    }
    // ground = ↓U ∖ Q, by brute subpermutation extraction
    let mut ground: BTreeSet<Permutation> = BTreeSet::new();
    for u in u_set {
        for tau in indec_subpermutations(u) {
            if !is_q_member(&tau, r, s)? {
                ground.insert(tau);
            }
        }
    }
    let ground: Vec<Permutation> = ground.into_iter().collect();
    let k = ground.len();
    assert!(k <= 62, "ground set too large for mask enumeration");
    let order: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| ground[j].contains(&ground[i])).collect())
        .collect();
    // below_mask[j] = strict predecessors of ground[j]
    let below_mask: Vec<u64> = (0..k)
        .map(|j| {
            let mut m = 0u64;
            for (i, row) in order.iter().enumerate() {
                if i != j && row[j] {
                    m |= 1 << i;
                }
            }
            m
        })
        .collect();
    let mut required_mask = 0u64;
    for l in l_set {
        let idx = ground
            .binary_search(l)
            .expect("required elements are in the ground set");
        required_mask |= 1 << idx;
    }
    // ground is sorted by length, a linear extension of the order
    let mut downsets = Vec::new();
    let mut stack: Vec<(usize, u64)> = vec![(0, 0)];
    while let Some((i, mask)) = stack.pop() {
        if i == k {
            if mask & required_mask == required_mask {
                let elements = (0..k)
                    .filter(|&j| mask & (1 << j) != 0)
                    .map(|j| ground[j].clone())
                    .collect();
                downsets.push(Downset::from_elements(elements));
            }
            continue;
        }
        // include ground[i] when all its predecessors are in
        if below_mask[i] & !mask == 0 {
            stack.push((i + 1, mask | (1 << i)));
        }
        // exclude unless required
        if required_mask & (1 << i) == 0 {
            stack.push((i + 1, mask));
        }
    }
    downsets.sort();
    Ok(DownsetCollection {
        r,
        s,
        maximal: u_set.to_vec(),
        required: l_set.to_vec(),
        ground,
        order,
        downsets,
    })
}

impl DownsetCollection {
    /// Extra-set suitability: a collection used to augment a family must have
    /// its ground set disjoint from every R-cell (it is disjoint from Q by
    /// construction). The plain ⇓ operator itself does not require this —
    /// the F-families are ⇓ collections living entirely inside an R-cell.
    pub fn check_r_cell_disjoint(&self) -> Result<(), PosetError> {
        for tau in &self.ground {
            if let Some((m, u, v)) = r_cell_witness(tau) {
                return Err(PosetError::GroundInRCell {
                    source: NoSource { perm: tau.clone() },
                    m,
                    u,
                    v,
                });
            }
        }
        Ok(())
    }

    /// Distinct enumeration profiles across the collection, sorted.
    pub fn distinct_profiles(&self) -> Vec<EnumProfile> {
        let set: BTreeSet<EnumProfile> = self.downsets.iter().map(enum_profile).collect();
        set.into_iter().collect()
    }

    /// Hasse diagram of the ground poset in DOT form.
    pub fn hasse_dot(&self, title: &str) -> String {
        hasse_dot_generic(&self.ground, &self.order, title)
    }

    /// JSON export: {ground: [...], downsets: [{maximal: [...], profile: [...]}]}.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ground": self.ground.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "downsets": self.downsets.iter().map(|d| {
                let profile = enum_profile(d);
                serde_json::json!({
                    "maximal": d.maximal_elements().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "profile": profile.counts,
                    "base_length": profile.base_length,
                })
            }).collect::<Vec<_>>(),
        })
    }
}

/// Hasse diagram (cover relations only) of an arbitrary set of permutations
/// under the subpermutation order, in DOT form.
pub fn hasse_dot(elements: &[Permutation], title: &str) -> String {
    let k = elements.len();
    let order: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| elements[j].contains(&elements[i])).collect())
        .collect();
    hasse_dot_generic(elements, &order, title)
}

fn hasse_dot_generic(elements: &[Permutation], order: &[Vec<bool>], title: &str) -> String {
    let k = elements.len();
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{title}\" {{");
    let _ = writeln!(s, "  rankdir=BT;");
    let _ = writeln!(s, "  node [shape=plaintext];");
    for (i, p) in elements.iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label=\"{}\"];", p.compact());
    }
    for i in 0..k {
        for j in 0..k {
            if i == j || !order[i][j] || elements[i] == elements[j] {
                continue;
            }
            // cover: no intermediate element strictly between
            let covered = (0..k).any(|m| {
                m != i
                    && m != j
                    && order[i][m]
                    && order[m][j]
                    && elements[m] != elements[i]
                    && elements[m] != elements[j]
            });
            if !covered {
                let _ = writeln!(s, "  n{i} -> n{j};");
            }
        }
    }
    s.push_str("}\n");
    s
}

/// Cover relations of a set of permutations, as index pairs (lower, upper).
pub fn hasse_covers(elements: &[Permutation]) -> Vec<(usize, usize)> {
    let k = elements.len();
    let leq = |i: usize, j: usize| elements[j].contains(&elements[i]);
    let mut covers = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j || elements[i] == elements[j] || !leq(i, j) {
                continue;
            }
            let intermediate = (0..k).any(|m| {
                m != i
                    && m != j
                    && elements[m] != elements[i]
                    && elements[m] != elements[j]
                    && leq(i, m)
                    && leq(m, j)
            });
            if !intermediate {
                covers.push((i, j));
            }
        }
    }
    covers
}

/// Counts by length of a set of permutations, as a map.
pub fn counts_by_length(elements: &[Permutation]) -> BTreeMap<usize, u64> {
    let mut m = BTreeMap::new();
    for p in elements {
        *m.entry(p.len()).or_insert(0u64) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn r_set_examples() {
        let r743 = r_set(7, 4, 3).unwrap();
        assert_eq!(r743.len(), 6);
        assert!(r743.contains(&p("4 1 2 6 3 9 5 7 8")));
        assert!(r743.contains(&p("6 1 2 3 4 8 5 12 7 9 10 11")));
        assert_eq!(r_set(5, 2, 2).unwrap().len(), 1);
        assert_eq!(r_set(9, 5, 4).unwrap().len(), 12);
        assert!(r_set(6, 3, 3).is_err());
        assert!(r_set(7, 1, 2).is_err());
    }

    #[test]
    fn f_family_counts_and_digits() {
        // F_n^{4,3}: seven downsets with digits 1.1, 1.11, 1.2, 1.21 (×2), 1.22, 1.221
        let fam = f_family(7, 4, 3).unwrap();
        assert_eq!(fam.len(), 7);
        assert_eq!(f_family_size_closed_form(4, 3), 7);
        let mut digits: Vec<String> = fam
            .iter()
            .map(|d| enum_profile(d).to_digit_at(9).to_string())
            .collect();
        digits.sort();
        assert_eq!(
            digits,
            vec!["1.1", "1.11", "1.2", "1.21", "1.21", "1.22", "1.221"]
        );
        // F_n^{3,2} is the single downset {ω_n^{3,2}, ω_n^{2,2}}
        let fam32 = f_family(5, 3, 2).unwrap();
        assert_eq!(fam32.len(), 1);
        assert_eq!(fam32[0].len(), 2);
        assert_eq!(f_family_size_closed_form(3, 2), 1);
        // the big Family-C cell, counted without materialising permutations
        assert_eq!(f_family_size_path_oracle(9, 8), 6427);
        assert_eq!(f_family_size_closed_form(9, 8), 6427);
    }

    #[test]
    fn downsets_are_downward_closed() {
        let ground = r_set(7, 4, 3).unwrap();
        for d in f_family(7, 4, 3).unwrap() {
            assert!(d.is_downward_closed_in(&ground));
            assert!(d.contains(&p("5 1 2 3 7 4 10 6 8 9"))); // ω_7^{3,2}
        }
    }

    #[test]
    fn distinct_profile_counts() {
        assert_eq!(distinct_profiles(5, 3).unwrap(), 10);
        assert_eq!(distinct_profiles(5, 5).unwrap(), 26);
        assert_eq!(distinct_profiles(9, 8).unwrap(), 574);
        // closed form (index from 0) agrees; the index-1 variant does not
        for (r, s) in [(5, 3), (5, 5), (9, 8), (4, 3), (6, 4), (7, 6)] {
            assert_eq!(
                distinct_profiles(r, s).unwrap(),
                distinct_profiles_closed_form(r, s),
                "closed form mismatch at ({r},{s})"
            );
        }
        assert_ne!(
            distinct_profiles_from_one_form(5, 3),
            distinct_profiles(5, 3).unwrap()
        );
        // the ten digits of the (5,3) cell, in canonical order
        let digits: Vec<String> = f_profile_digits(5, 3)
            .unwrap()
            .iter()
            .map(|d| d.to_string())
            .collect();
        assert_eq!(
            digits,
            vec![
                "1.1", "1.11", "1.111", "1.2", "1.21", "1.211", "1.22", "1.221", "1.222", "1.2221"
            ]
        );
    }

    #[test]
    fn q_sequence_examples() {
        assert_eq!(
            q_sequence(5, 3).unwrap(),
            EnumSequence::parse("1,1,2,3,5,7;8").unwrap()
        );
        assert_eq!(
            q_sequence(9, 8).unwrap(),
            EnumSequence::parse("1,1,2,3,5,7,9,11,13,15;17").unwrap()
        );
        assert_eq!(
            q_sequence(5, 5).unwrap(),
            EnumSequence::parse("1,1,2,3,5,7,9;10").unwrap()
        );
        assert_eq!(
            q_sequence(4, 3).unwrap(),
            EnumSequence::parse("1,1,2,3,5;7").unwrap()
        );
        // symmetric in (r, s)
        assert_eq!(q_sequence(3, 5).unwrap(), q_sequence(5, 3).unwrap());
        assert!(q_sequence(1, 1).is_err());
    }

    #[test]
    fn q_set_matches_sequence_and_known_members() {
        // the seven elements of Q^{4,3} of size 6
        let q = q_set(4, 3, 6).unwrap();
        let size6: Vec<&Permutation> = q.iter().filter(|x| x.len() == 6).collect();
        let expect = [
            "315264", "241635", "612345", "512364", "412635", "316245", "261345",
        ];
        assert_eq!(size6.len(), 7);
        for e in expect {
            assert!(size6.iter().any(|x| **x == p(e)), "missing {e}");
        }
        // counts by length match the sequence for several cells
        for (r, s) in [(3, 2), (4, 3), (5, 3), (5, 5)] {
            let q = q_set(r, s, 14).unwrap();
            let counts = counts_by_length(&q);
            let qs = q_sequence(r, s).unwrap();
            for len in 1..=14 {
                assert_eq!(
                    counts.get(&len).copied().unwrap_or(0),
                    qs.term(len),
                    "Q^{{{r},{s}}} length {len}"
                );
            }
        }
        // (5,3) small lengths: {1, 21, 231, 312}
        let q3 = q_set(5, 3, 3).unwrap();
        assert_eq!(q3, vec![p("1"), p("21"), p("231"), p("312")]);
    }

    #[test]
    fn q_membership_structural() {
        let q = q_set(5, 3, 12).unwrap();
        for x in &q {
            assert!(is_q_member(x, 5, 3).unwrap(), "{x:?}");
        }
        // R-cell elements are not in Q
        for x in r_set(7, 4, 3).unwrap() {
            assert!(!is_q_member(&x, 5, 3).unwrap());
            assert!(r_cell_witness(&x).is_some());
        }
        // the Family E pieces are outside Q^{5,5}
        for x in ["3412", "2341", "23451", "23514", "251364"] {
            assert!(!is_q_member(&p(x), 5, 5).unwrap(), "{x}");
            assert!(r_cell_witness(&p(x)).is_none());
        }
    }

    #[test]
    fn example_collection_has_nine_downsets_and_seven_profiles() {
        // ℋ = {ω_5^{7,1}} ⇓_{5,3} {ψ_7}
        let u = vec![p("9 1 2 3 4 5 6 7 11 8 10")];
        let l = vec![p("81234567")];
        let coll = downset_collection(&u, &l, 5, 3).unwrap();
        assert_eq!(coll.ground.len(), 6);
        let lens = counts_by_length(&coll.ground);
        assert_eq!(lens.get(&8), Some(&1)); // ψ_7
        assert_eq!(lens.get(&9), Some(&2)); // ψ_8, ω_4^{6,1}
        assert_eq!(lens.get(&10), Some(&2)); // ω_4^{7,1}, ω_5^{6,1}
        assert_eq!(lens.get(&11), Some(&1)); // ω_5^{7,1}
        assert_eq!(coll.downsets.len(), 9);
        let profiles = coll.distinct_profiles();
        assert_eq!(profiles.len(), 7);
        let digits: Vec<String> = profiles
            .iter()
            .map(|pr| pr.to_digit_at(1).to_string())
            .collect();
        // H digits {0.0^6 1, 0.0^6 11, 0.0^6 111, 0.0^6 12,
        //            0.0^6 121, 0.0^6 122, 0.0^6 1221}
        assert_eq!(
            digits,
            vec![
                "0.0000001",
                "0.00000011",
                "0.000000111",
                "0.00000012",
                "0.000000121",
                "0.000000122",
                "0.0000001221"
            ]
        );
        // every member passes the downward-closure check over the ground set
        for d in &coll.downsets {
            assert!(d.is_downward_closed_in(&coll.ground));
        }
    }

    #[test]
    fn downset_collection_reproduces_f_family() {
        // {ω_n^{r,s}} ⇓_{r,s} {ω_n^{3,2}} = F_n^{r,s}
        let u = vec![inflated_oscillation(7, 4, 3, OscKind::Primary).unwrap()];
        let l = vec![inflated_oscillation(7, 3, 2, OscKind::Primary).unwrap()];
        let coll = downset_collection(&u, &l, 4, 3).unwrap();
        let fam = f_family(7, 4, 3).unwrap();
        assert_eq!(coll.downsets, fam);
    }

    #[test]
    fn collection_precondition_errors() {
        let u = vec![p("9 1 2 3 4 5 6 7 11 8 10")];
        // decomposable member rejected
        assert!(matches!(
            downset_collection(&[p("12")], &[], 5, 3),
            Err(PosetError::NotIndecomposable(_))
        ));
        // required element not below any maximal
        assert!(matches!(
            downset_collection(&u, &[p("2341")], 5, 3),
            Err(PosetError::RequiredNotBelow(_))
        ));
        // required element inside Q
        assert!(matches!(
            downset_collection(&u, &[p("21")], 5, 3),
            Err(PosetError::RequiredInQ { .. })
        ));
        // a double-inflated U pulls R-cell elements into the ground set,
        // making the collection unsuitable as a family augmentation
        let bad_u = vec![inflated_oscillation(5, 3, 3, OscKind::Primary).unwrap()];
        let coll = downset_collection(&bad_u, &[], 5, 3).unwrap();
        assert!(matches!(
            coll.check_r_cell_disjoint(),
            Err(PosetError::GroundInRCell { .. })
        ));
    }

    #[test]
    fn example_hasse_diagram_covers() {
        // ψ_7 < ψ_8 < ω_4^{7,1} < ω_5^{7,1}; ψ_7 < ω_4^{6,1} < ω_4^{7,1};
        // ω_4^{6,1} < ω_5^{6,1} < ω_5^{7,1} — seven cover edges
        let u = vec![p("9 1 2 3 4 5 6 7 11 8 10")];
        let l = vec![p("81234567")];
        let coll = downset_collection(&u, &l, 5, 3).unwrap();
        let covers = hasse_covers(&coll.ground);
        let name = |i: usize| coll.ground[i].compact();
        let mut edges: Vec<(String, String)> =
            covers.iter().map(|&(i, j)| (name(i), name(j))).collect();
        edges.sort();
        let psi7 = "81234567".to_string();
        let psi8 = "912345678".to_string();
        let w461 = "812345697".to_string();
        let w471 = p("9 1 2 3 4 5 6 7 10 8").compact();
        let w561 = p("8 1 2 3 4 5 6 10 7 9").compact();
        let w571 = p("9 1 2 3 4 5 6 7 11 8 10").compact();
        let mut expect = vec![
            (psi7.clone(), psi8.clone()),
            (psi7.clone(), w461.clone()),
            (psi8, w471.clone()),
            (w461.clone(), w471.clone()),
            (w461, w561.clone()),
            (w471, w571.clone()),
            (w561, w571),
        ];
        expect.sort();
        assert_eq!(edges, expect);
        let dot = coll.hasse_dot("example");
        assert!(dot.contains("digraph"));
        assert_eq!(dot.matches(" -> ").count(), 7);
    }

    #[test]
    fn r_cell_hasse_is_the_grid() {
        // covers of R_n^{7,6} are exactly the grid steps
        let cell = r_set(7, 7, 6).unwrap();
        let covers = hasse_covers(&cell);
        // (u,v) grid with 2<=u<=7, 2<=v<=6: edges (u,v)-(u+1,v) and (u,v)-(u,v+1)
        let expected = 5 * 5 + 4 * 6; // horizontal + vertical grid steps
        assert_eq!(covers.len(), expected);
    }

    #[test]
    fn profile_digit_positioning() {
        let pr = EnumProfile {
            base_length: 8,
            counts: vec![1, 2, 1],
        };
        assert_eq!(pr.to_digit_at(1).to_string(), "0.000000121");
        assert_eq!(pr.to_digit_at(8).to_string(), "1.21");
        let empty = EnumProfile {
            base_length: 0,
            counts: vec![],
        };
        assert_eq!(empty.to_digit_at(1), GeneralisedDigit::zero());
    }
}
