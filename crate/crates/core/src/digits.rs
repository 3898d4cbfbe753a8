//! Generalised digits and expansions in non-integer bases: per-position digit
//! sets, exact series values, greedy expansion, and gap-inequality
//! certification. All comparisons are exact rational arithmetic at rational
//! base probes; nothing here touches floating point.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{pow_rat, IntPoly, Rat};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DigitError {
    #[error("base must exceed 1, got {0}")]
    BadBase(String),
    #[error("digit set must be non-empty")]
    EmptySet,
    #[error("digit sequence period must be non-empty")]
    EmptyPeriod,
    #[error("cannot parse generalised digit `{0}`")]
    BadDigit(String),
    #[error("target {x} lies outside the representable interval [{lo}, {hi}]")]
    OutOfRange { x: String, lo: String, hi: String },
}

/// A generalised digit c_0.c_1...c_k with value Σ c_i β^{-i}.
///
/// Trailing zero subdigits are preserved: 1.2 and 1.20 are distinct
/// representations with equal value at every base.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneralisedDigit {
    subdigits: Vec<u64>,
}

impl GeneralisedDigit {
    pub fn new(subdigits: Vec<u64>) -> Self {
        assert!(!subdigits.is_empty(), "a digit has at least one subdigit");
        GeneralisedDigit { subdigits }
    }

    pub fn from_int(c: u64) -> Self {
        GeneralisedDigit { subdigits: vec![c] }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    /// Length k+1 of c_0.c_1...c_k.
    pub fn len(&self) -> usize {
        self.subdigits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn subdigits(&self) -> &[u64] {
        &self.subdigits
    }

    pub fn is_zero(&self) -> bool {
        self.subdigits.iter().all(|&c| c == 0)
    }

    /// Exact value Σ c_i β^{-i}; callers validate β > 1 at the boundary.
    pub fn value_at(&self, beta: &Rat) -> Rat {
        debug_assert!(*beta > Rat::one());
        let inv = beta.recip();
        let mut acc = Rat::zero();
        for c in self.subdigits.iter().rev() {
            acc = acc * &inv + Rat::from_integer((*c).into());
        }
        acc
    }

    /// Value as an integer polynomial pair: value = poly(β) / β^scale.
    pub fn value_poly(&self, scale: usize) -> IntPoly {
        assert!(scale + 1 >= self.subdigits.len());
        let mut coeffs = vec![num_bigint::BigInt::zero(); scale + 1];
        for (i, &c) in self.subdigits.iter().enumerate() {
            coeffs[scale - i] = c.into();
        }
        IntPoly::from_coeffs_asc(coeffs)
    }

    /// Componentwise sum (used for q_n + f).
    pub fn add(&self, other: &Self) -> Self {
        let n = self.subdigits.len().max(other.subdigits.len());
        let subdigits = (0..n)
            .map(|i| {
                self.subdigits.get(i).copied().unwrap_or(0)
                    + other.subdigits.get(i).copied().unwrap_or(0)
            })
            .collect();
        GeneralisedDigit { subdigits }
    }

    pub fn add_int(&self, q: u64) -> Self {
        let mut subdigits = self.subdigits.clone();
        subdigits[0] += q;
        GeneralisedDigit { subdigits }
    }
}

impl fmt::Display for GeneralisedDigit {
    /// `c0.c1c2…ck` with single-decimal subdigits, or `c0.[c1,c2,…]` when any
    /// subdigit past c0 is 10 or more.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.subdigits[0])?;
        if self.subdigits.len() == 1 {
            return Ok(());
        }
        let rest = &self.subdigits[1..];
        if rest.iter().any(|&c| c >= 10) {
            write!(f, ".[")?;
            for (i, c) in rest.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")
        } else {
            write!(f, ".")?;
            for c in rest {
                write!(f, "{c}")?;
            }
            Ok(())
        }
    }
}

impl fmt::Debug for GeneralisedDigit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digit({self})")
    }
}

impl FromStr for GeneralisedDigit {
    type Err = DigitError;

    fn from_str(s: &str) -> Result<Self, DigitError> {
        let s = s.trim();
        let bad = || DigitError::BadDigit(s.to_string());
        let (head, tail) = match s.split_once('.') {
            None => (s, None),
            Some((h, t)) => (h, Some(t)),
        };
        let c0: u64 = head.parse().map_err(|_| bad())?;
        let mut subdigits = vec![c0];
        if let Some(t) = tail {
            if let Some(inner) = t.strip_prefix('[') {
                let inner = inner.strip_suffix(']').ok_or_else(bad)?;
                for tok in inner.split(',') {
                    subdigits.push(tok.trim().parse().map_err(|_| bad())?);
                }
            } else {
                if t.is_empty() || !t.chars().all(|c| c.is_ascii_digit()) {
                    return Err(bad());
                }
                for c in t.chars() {
                    subdigits.push(c.to_digit(10).unwrap() as u64);
                }
            }
        }
        Ok(GeneralisedDigit::new(subdigits))
    }
}

fn check_base(beta: &Rat) -> Result<(), DigitError> {
    if *beta <= Rat::one() {
        return Err(DigitError::BadBase(beta.to_string()));
    }
    Ok(())
}

/// Exact value of a generalised digit at base β (> 1).
pub fn digit_value(d: &GeneralisedDigit, beta: &Rat) -> Result<Rat, DigitError> {
    check_base(beta)?;
    Ok(d.value_at(beta))
}

/// Per-set statistics at a fixed base: least and greatest values, spread
/// Δ = u − ℓ, and the largest gap δ between value-consecutive elements
/// (ties collapse to gap 0; δ = 0 for singletons).
#[derive(Clone, Debug, PartialEq)]
pub struct DigitStats {
    pub least: Rat,
    pub greatest: Rat,
    pub spread: Rat,
    pub max_gap: Rat,
}

pub fn digit_stats(set: &[GeneralisedDigit], beta: &Rat) -> Result<DigitStats, DigitError> {
    check_base(beta)?;
    if set.is_empty() {
        return Err(DigitError::EmptySet);
    }
    let mut values: Vec<Rat> = set.iter().map(|d| d.value_at(beta)).collect();
    values.sort();
    let least = values.first().unwrap().clone();
    let greatest = values.last().unwrap().clone();
    let spread = &greatest - &least;
    let mut max_gap = Rat::zero();
    for w in values.windows(2) {
        let gap = &w[1] - &w[0];
        if gap > max_gap {
            max_gap = gap;
        }
    }
    Ok(DigitStats {
        least,
        greatest,
        spread,
        max_gap,
    })
}

/// An eventually periodic sequence of generalised digits (a_n), n >= 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSequence {
    preperiod: Vec<GeneralisedDigit>,
    period: Vec<GeneralisedDigit>,
}

impl DigitSequence {
    pub fn new(
        preperiod: Vec<GeneralisedDigit>,
        period: Vec<GeneralisedDigit>,
    ) -> Result<Self, DigitError> {
        if period.is_empty() {
            return Err(DigitError::EmptyPeriod);
        }
        Ok(DigitSequence { preperiod, period })
    }

    pub fn preperiod(&self) -> &[GeneralisedDigit] {
        &self.preperiod
    }

    pub fn period(&self) -> &[GeneralisedDigit] {
        &self.period
    }

    /// a_n, 1-based.
    pub fn term(&self, n: usize) -> &GeneralisedDigit {
        assert!(n >= 1);
        let m = self.preperiod.len();
        if n <= m {
            &self.preperiod[n - 1]
        } else {
            &self.period[(n - m - 1) % self.period.len()]
        }
    }

    pub fn max_subdigit(&self) -> u64 {
        self.preperiod
            .iter()
            .chain(self.period.iter())
            .flat_map(|d| d.subdigits().iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn max_digit_len(&self) -> usize {
        self.preperiod
            .iter()
            .chain(self.period.iter())
            .map(|d| d.len())
            .max()
            .unwrap_or(1)
    }
}

/// Exact value of Σ a_n β^{-n} via a closed-form geometric tail.
pub fn series_value(seq: &DigitSequence, beta: &Rat) -> Result<Rat, DigitError> {
    check_base(beta)?;
    let m = seq.preperiod.len();
    let p = seq.period.len();
    let mut total = Rat::zero();
    for (i, d) in seq.preperiod.iter().enumerate() {
        total += d.value_at(beta) * pow_rat(beta, -((i + 1) as i64));
    }
    let mut block = Rat::zero();
    for (j, d) in seq.period.iter().enumerate() {
        block += d.value_at(beta) * pow_rat(beta, -((j + 1) as i64));
    }
    let tail_factor = Rat::one() / (Rat::one() - pow_rat(beta, -(p as i64)));
    total += pow_rat(beta, -(m as i64)) * block * tail_factor;
    Ok(total)
}

/// An eventually periodic sequence (D_n) of finite digit sets, n >= 1.
///
/// Sets are kept sorted canonically so identical inputs produce identical
/// outputs everywhere downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSetSequence {
    preperiod: Vec<Vec<GeneralisedDigit>>,
    period: Vec<Vec<GeneralisedDigit>>,
}

impl DigitSetSequence {
    pub fn new(
        mut preperiod: Vec<Vec<GeneralisedDigit>>,
        mut period: Vec<Vec<GeneralisedDigit>>,
    ) -> Result<Self, DigitError> {
        if period.is_empty() {
            return Err(DigitError::EmptyPeriod);
        }
        for set in preperiod.iter_mut().chain(period.iter_mut()) {
            if set.is_empty() {
                return Err(DigitError::EmptySet);
            }
            set.sort();
            set.dedup();
        }
        Ok(DigitSetSequence { preperiod, period })
    }

    /// Integer digit sets, a convenience for the classical examples.
    pub fn from_int_sets(
        preperiod: Vec<Vec<u64>>,
        period: Vec<Vec<u64>>,
    ) -> Result<Self, DigitError> {
        let conv = |sets: Vec<Vec<u64>>| {
            sets.into_iter()
                .map(|s| s.into_iter().map(GeneralisedDigit::from_int).collect())
                .collect()
        };
        Self::new(conv(preperiod), conv(period))
    }

    pub fn preperiod_len(&self) -> usize {
        self.preperiod.len()
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// D_n, 1-based.
    pub fn set_at(&self, n: usize) -> &[GeneralisedDigit] {
        assert!(n >= 1);
        let m = self.preperiod.len();
        if n <= m {
            &self.preperiod[n - 1]
        } else {
            &self.period[(n - m - 1) % self.period.len()]
        }
    }

    /// Positions 1..=m+p cover every distinct (set, tail phase) case.
    pub fn case_count(&self) -> usize {
        self.preperiod.len() + self.period.len()
    }

    pub fn max_digit_len(&self) -> usize {
        self.preperiod
            .iter()
            .chain(self.period.iter())
            .flat_map(|s| s.iter().map(|d| d.len()))
            .max()
            .unwrap_or(1)
    }

    /// The per-position extreme-value digit sequence at a probe base.
    /// `upper` selects maxima, otherwise minima; ties resolve to the
    /// canonically-least digit among the tied values.
    pub fn extreme_sequence(&self, beta: &Rat, upper: bool) -> Result<DigitSequence, DigitError> {
        check_base(beta)?;
        let pick = |set: &[GeneralisedDigit]| -> GeneralisedDigit {
            let mut best = set[0].clone();
            let mut best_v = best.value_at(beta);
            for d in &set[1..] {
                let v = d.value_at(beta);
                let better = if upper { v > best_v } else { v < best_v };
                if better {
                    best = d.clone();
                    best_v = v;
                }
            }
            best
        };
        DigitSequence::new(
            self.preperiod.iter().map(|s| pick(s)).collect(),
            self.period.iter().map(|s| pick(s)).collect(),
        )
    }

    /// Exact endpoints [(ℓ_n)_β, (u_n)_β] of the candidate interval.
    pub fn value_range(&self, beta: &Rat) -> Result<(Rat, Rat), DigitError> {
        let lo = series_value(&self.extreme_sequence(beta, false)?, beta)?;
        let hi = series_value(&self.extreme_sequence(beta, true)?, beta)?;
        Ok((lo, hi))
    }
}

/// One position's gap-inequality check: δ_n vs Σ_{i>=1} Δ_{n+i} β^{-i}.
#[derive(Clone, Debug)]
pub struct GapCheck {
    pub position: usize,
    pub max_gap: Rat,
    pub tail: Rat,
    pub holds: bool,
}

/// Exact per-position gap-inequality report over the finitely many distinct
/// cases (positions 1..=preperiod+period). Tails are evaluated in closed form
/// through the periodic part; no truncation.
pub fn gap_report(d: &DigitSetSequence, beta: &Rat) -> Result<Vec<GapCheck>, DigitError> {
    check_base(beta)?;
    let m = d.preperiod.len();
    let p = d.period.len();
    let stats_pre: Vec<DigitStats> = d
        .preperiod
        .iter()
        .map(|s| digit_stats(s, beta))
        .collect::<Result<_, _>>()?;
    let stats_per: Vec<DigitStats> = d
        .period
        .iter()
        .map(|s| digit_stats(s, beta))
        .collect::<Result<_, _>>()?;

    // tail at a period position with phase φ: positions n+i map to period
    // index (φ+i-1) mod p; one period window summed, then the geometric factor
    let geom = Rat::one() / (Rat::one() - pow_rat(beta, -(p as i64)));
    let tail_per: Vec<Rat> = (0..p)
        .map(|phi| {
            let mut t = Rat::zero();
            for i in 1..=p {
                t += &stats_per[(phi + i - 1) % p].spread * pow_rat(beta, -(i as i64));
            }
            t * &geom
        })
        .collect();

    let mut checks = Vec::with_capacity(m + p);
    // preperiod tails by back-recursion: tail(n) = Δ_{n+1} β^{-1} + β^{-1} tail(n+1)
    let inv = beta.recip();
    let mut tails_pre = vec![Rat::zero(); m + 1];
    if m > 0 {
        tails_pre[m] = tail_per[0].clone();
        for n in (1..m).rev() {
            tails_pre[n] = (&stats_pre[n].spread + &tails_pre[n + 1]) * &inv;
        }
    }
    for n in 1..=m {
        let tail = tails_pre[n].clone();
        let holds = stats_pre[n - 1].max_gap <= tail;
        checks.push(GapCheck {
            position: n,
            max_gap: stats_pre[n - 1].max_gap.clone(),
            tail,
            holds,
        });
    }
    for phi in 0..p {
        // position m + phi + 1; next positions start at phase (phi+1) mod p
        let tail = tail_per[(phi + 1) % p].clone();
        let holds = stats_per[phi].max_gap <= tail;
        checks.push(GapCheck {
            position: m + phi + 1,
            max_gap: stats_per[phi].max_gap.clone(),
            tail,
            holds,
        });
    }
    Ok(checks)
}

/// True iff every position satisfies δ_n <= Σ_{i>=1} Δ_{n+i} β^{-i}, exactly.
pub fn gap_inequalities_hold(d: &DigitSetSequence, beta: &Rat) -> Result<bool, DigitError> {
    Ok(gap_report(d, beta)?.iter().all(|c| c.holds))
}

/// Two-block special case: D_1 at position 1, D_k at every odd position
/// at least k (k >= 3 odd), {0} elsewhere, reduced to its two closed-form
/// conditions (β²−1)δ_k <= Δ_k and (β^{k−1}−β^{k−3})δ_1 <= Δ_k.
pub fn corollary_gap_bounds(
    k: usize,
    d1: &[GeneralisedDigit],
    dk: &[GeneralisedDigit],
    beta: &Rat,
) -> Result<bool, DigitError> {
    assert!(k >= 3 && k % 2 == 1, "the special case requires odd k >= 3");
    let s1 = digit_stats(d1, beta)?;
    let sk = digit_stats(dk, beta)?;
    let beta2m1 = pow_rat(beta, 2) - Rat::one();
    let first = &beta2m1 * &sk.max_gap <= sk.spread;
    let second =
        (pow_rat(beta, k as i64 - 1) - pow_rat(beta, k as i64 - 3)) * &s1.max_gap <= sk.spread;
    Ok(first && second)
}

/// The full digit-set sequence of the two-block special case, for
/// equivalence testing against `gap_inequalities_hold`.
pub fn corollary_sequence(
    k: usize,
    d1: &[GeneralisedDigit],
    dk: &[GeneralisedDigit],
) -> Result<DigitSetSequence, DigitError> {
    assert!(k >= 3 && k % 2 == 1);
    let zero = vec![GeneralisedDigit::zero()];
    let mut pre = vec![d1.to_vec()];
    for _ in 2..k {
        pre.push(zero.clone());
    }
    DigitSetSequence::new(pre, vec![dk.to_vec(), zero])
}

/// Result of a greedy expansion: the first `n_terms` digits, the exact
/// remainder x − S(N), and the certified bound max(δ, Δ)·β^{-N}·β/(β−1) on
/// |series_value(completed expansion) − x| when the gap inequalities hold.
#[derive(Clone, Debug)]
pub struct GreedyExpansion {
    pub digits: Vec<GeneralisedDigit>,
    pub remainder: Rat,
    pub error_bound: Rat,
}

impl GreedyExpansion {
    /// The computed prefix continued with the per-position least digits; this
    /// is the eventually periodic sequence whose series value the error bound
    /// speaks about.
    pub fn completed_sequence(
        &self,
        d: &DigitSetSequence,
        beta: &Rat,
    ) -> Result<DigitSequence, DigitError> {
        let ell = d.extreme_sequence(beta, false)?;
        let n = self.digits.len();
        let m = ell.preperiod().len();
        let p = ell.period().len();
        let mut pre = self.digits.clone();
        if n < m {
            pre.extend(ell.preperiod()[n..].iter().cloned());
            DigitSequence::new(pre, ell.period().to_vec())
        } else {
            let phase = (n - m) % p;
            let mut period = ell.period().to_vec();
            period.rotate_left(phase);
            DigitSequence::new(pre, period)
        }
    }
}

/// Greedy expansion of x over (D_n) at base β: following the shift
/// reduction to ℓ_n = 0, each digit is the greatest element of D_n such that
/// the partial sum plus the forced minimum tail Σ_{m>n} ℓ_m β^{-m} stays at
/// most x. For zero-based digit sets this is exactly "no partial sum exceeds
/// x"; the choice of ℓ_n itself is always admissible, so the expansion never
/// strands.
pub fn greedy_expansion(
    x: &Rat,
    d: &DigitSetSequence,
    beta: &Rat,
    n_terms: usize,
) -> Result<GreedyExpansion, DigitError> {
    check_base(beta)?;
    let ell = d.extreme_sequence(beta, false)?;
    let lo = series_value(&ell, beta)?;
    let hi = series_value(&d.extreme_sequence(beta, true)?, beta)?;
    if x < &lo || x > &hi {
        return Err(DigitError::OutOfRange {
            x: x.to_string(),
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let mut digits = Vec::with_capacity(n_terms);
    let mut partial = Rat::zero();
    // ell_tail = Σ_{m>n} ℓ_m β^{-m}, updated incrementally from the full sum
    let mut ell_tail = lo.clone();
    let mut scale = Rat::one();
    let inv = beta.recip();
    let mut max_gap = Rat::zero();
    let mut max_spread = Rat::zero();
    for n in 1..=n_terms {
        scale *= &inv;
        let set = d.set_at(n);
        let stats = digit_stats(set, beta)?;
        if stats.max_gap > max_gap {
            max_gap = stats.max_gap.clone();
        }
        if stats.spread > max_spread {
            max_spread = stats.spread.clone();
        }
        ell_tail -= ell.term(n).value_at(beta) * &scale;
        let mut best: Option<(Rat, &GeneralisedDigit)> = None;
        for digit in set {
            let v = digit.value_at(beta);
            if &partial + &v * &scale + &ell_tail <= *x {
                let better = match &best {
                    None => true,
                    Some((bv, bd)) => v > *bv || (v == *bv && digit < bd),
                };
                if better {
                    best = Some((v, digit));
                }
            }
        }
        let (v, digit) = best.expect("the least digit is always admissible for in-range x");
        partial += v * &scale;
        digits.push(digit.clone());
    }
    let bound_base = if max_gap > max_spread {
        max_gap
    } else {
        max_spread
    };
    let error_bound = bound_base * &scale * beta / (beta - Rat::one());
    Ok(GreedyExpansion {
        digits,
        remainder: x - partial,
        error_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};
    use num_traits::Signed;

    fn d(s: &str) -> GeneralisedDigit {
        s.parse().unwrap()
    }

    /// The classical alternating example: D_n = {1,4} for odd n, {1,3,5,7,9} for even n.
    fn integer_example() -> DigitSetSequence {
        DigitSetSequence::from_int_sets(vec![], vec![vec![1, 4], vec![1, 3, 5, 7, 9]]).unwrap()
    }

    /// The generalised-digit example: {1.1,1.11,1.12,1.2,1.21,1.22} odd, {0} even.
    fn generalised_example() -> DigitSetSequence {
        let odd = ["1.1", "1.11", "1.12", "1.2", "1.21", "1.22"]
            .iter()
            .map(|s| d(s))
            .collect();
        DigitSetSequence::new(vec![], vec![odd, vec![GeneralisedDigit::zero()]]).unwrap()
    }

    fn footnote_example() -> DigitSetSequence {
        let odd = [
            "0.5", "0.501", "0.502", "0.51", "0.511", "0.512", "0.52", "0.521", "1.3",
        ]
        .iter()
        .map(|s| d(s))
        .collect();
        DigitSetSequence::new(vec![], vec![odd, vec![GeneralisedDigit::zero()]]).unwrap()
    }

    #[test]
    fn digit_text_forms() {
        assert_eq!(d("1.12").subdigits(), &[1, 1, 2]);
        assert_eq!(d("0.0"), GeneralisedDigit::new(vec![0, 0]));
        assert_eq!(d("10.234").subdigits(), &[10, 2, 3, 4]);
        assert_eq!(d("17.[2,11,0]").subdigits(), &[17, 2, 11, 0]);
        assert_eq!(d("1.12").to_string(), "1.12");
        assert_eq!(
            GeneralisedDigit::new(vec![17, 2, 11]).to_string(),
            "17.[2,11]"
        );
        assert_eq!(GeneralisedDigit::from_int(7).to_string(), "7");
        assert!("1.".parse::<GeneralisedDigit>().is_err());
        assert!("x".parse::<GeneralisedDigit>().is_err());
        // representations are distinct even when values agree
        assert_ne!(d("1.2"), d("1.20"));
    }

    #[test]
    fn digit_values() {
        let beta = rat_int(3);
        let v = digit_value(&d("1.12"), &beta).unwrap();
        assert_eq!(v, rat_int(1) + rat(1, 3) + rat(2, 9));
        assert_eq!(digit_value(&d("0"), &beta).unwrap(), Rat::zero());
        // direct evaluation of the defining sum: 1 + 2/2 + 2/4 + 1/8
        assert_eq!(digit_value(&d("1.221"), &rat_int(2)).unwrap(), rat(21, 8));
        assert!(digit_value(&d("1"), &Rat::one()).is_err());
    }

    #[test]
    fn stats_examples() {
        let odd: Vec<GeneralisedDigit> = [1u64, 3, 5, 7, 9]
            .iter()
            .map(|&c| GeneralisedDigit::from_int(c))
            .collect();
        let st = digit_stats(&odd, &rat(7, 2)).unwrap();
        assert_eq!(st.least, rat_int(1));
        assert_eq!(st.greatest, rat_int(9));
        assert_eq!(st.spread, rat_int(8));
        assert_eq!(st.max_gap, rat_int(2));

        let single = vec![GeneralisedDigit::zero()];
        let st = digit_stats(&single, &rat_int(2)).unwrap();
        assert_eq!(st.max_gap, Rat::zero());
        assert_eq!(st.spread, Rat::zero());

        // generalised example at β=3: δ = max(1/9, 1/3 − 2/9) = 1/9, Δ = 1/3 + 2/9
        let set: Vec<GeneralisedDigit> = ["1.1", "1.11", "1.12", "1.2", "1.21", "1.22"]
            .iter()
            .map(|s| d(s))
            .collect();
        let st = digit_stats(&set, &rat_int(3)).unwrap();
        assert_eq!(st.max_gap, rat(1, 9));
        assert_eq!(st.spread, rat(1, 3) + rat(2, 9));
    }

    #[test]
    fn series_values() {
        let ones = DigitSequence::new(vec![], vec![GeneralisedDigit::from_int(1)]).unwrap();
        assert_eq!(series_value(&ones, &rat_int(3)).unwrap(), rat(1, 2));

        let zeros = DigitSequence::new(vec![], vec![GeneralisedDigit::zero()]).unwrap();
        assert_eq!(series_value(&zeros, &rat_int(3)).unwrap(), Rat::zero());

        // alternating example bounds at β=3: [(1,1,…)_3, (4,9,4,9,…)_3] = [1/2, 21/8]
        let (lo, hi) = integer_example().value_range(&rat_int(3)).unwrap();
        assert_eq!(lo, rat(1, 2));
        assert_eq!(hi, rat(21, 8));
    }

    #[test]
    fn gap_examples_integer() {
        let ex = integer_example();
        assert!(gap_inequalities_hold(&ex, &rat_int(3)).unwrap());
        assert!(!gap_inequalities_hold(&ex, &rat(16, 5)).unwrap());
        // the odd-position inequality flips across (4+√34)/3 ≈ 3.27698,
        // the even-position one across (3+√89)/4 ≈ 3.10850
        let report = gap_report(&ex, &rat(315, 100)).unwrap();
        assert!(report[0].holds && !report[1].holds);
    }

    #[test]
    fn gap_examples_generalised() {
        let ex = generalised_example();
        assert!(gap_inequalities_hold(&ex, &rat(23, 10)).unwrap());
        assert!(!gap_inequalities_hold(&ex, &rat(231, 100)).unwrap());
    }

    #[test]
    fn gap_footnote_example_not_an_interval_in_beta() {
        let ex = footnote_example();
        assert!(!gap_inequalities_hold(&ex, &rat(14, 5)).unwrap()); // 2.8: infeasible
        assert!(gap_inequalities_hold(&ex, &rat(29, 10)).unwrap()); // 2.9: feasible again
        assert!(gap_inequalities_hold(&ex, &rat(27, 10)).unwrap()); // 2.7 <= 2.732…
    }

    #[test]
    fn greedy_basics() {
        // x = 1/2 at β = 3 over the integer example picks 1 forever
        let ex = integer_example();
        let g = greedy_expansion(&rat(1, 2), &ex, &rat_int(3), 30).unwrap();
        assert!(g.digits.iter().all(|a| a.subdigits() == [1]));
        // each digit maximal: replacing any a_n by the next element overshoots
        // even before the forced tail is added
        let mut partial = Rat::zero();
        for n in 1..=30usize {
            let v = g.digits[n - 1].value_at(&rat_int(3));
            let next_up = rat_int(if n % 2 == 1 { 4 } else { 3 });
            assert!(&partial + next_up * pow_rat(&rat_int(3), -(n as i64)) > rat(1, 2));
            partial += v * pow_rat(&rat_int(3), -(n as i64));
            assert!(partial <= rat(1, 2));
        }

        // decimal tie-break: 0.5000…, not 0.4999…
        let dec =
            DigitSetSequence::from_int_sets(vec![], vec![(0..=9).collect::<Vec<u64>>()]).unwrap();
        let g = greedy_expansion(&rat(1, 2), &dec, &rat_int(10), 12).unwrap();
        assert_eq!(g.digits[0].subdigits(), &[5]);
        assert!(g.digits[1..].iter().all(|a| a.subdigits() == [0]));
        assert!(g.remainder.is_zero());

        // x = (u_n)_β forces maximal digits everywhere
        let (_, hi) = ex.value_range(&rat_int(3)).unwrap();
        let g = greedy_expansion(&hi, &ex, &rat_int(3), 20).unwrap();
        for (i, digit) in g.digits.iter().enumerate() {
            let expect = if (i + 1) % 2 == 1 { 4 } else { 9 };
            assert_eq!(digit.subdigits(), &[expect]);
        }

        // out of range rejected
        assert!(matches!(
            greedy_expansion(&rat_int(5), &ex, &rat_int(3), 5),
            Err(DigitError::OutOfRange { .. })
        ));
    }

    #[test]
    fn greedy_shift_identity() {
        // expanding x over D_n equals expanding x − (ℓ_n)_β over {a − ℓ_n} shifted back
        let ex = integer_example();
        let beta = rat_int(3);
        let shifted =
            DigitSetSequence::from_int_sets(vec![], vec![vec![0, 3], vec![0, 2, 4, 6, 8]]).unwrap();
        let (lo, _) = ex.value_range(&beta).unwrap();
        let x = rat(7, 5);
        let g1 = greedy_expansion(&x, &ex, &beta, 25).unwrap();
        let g2 = greedy_expansion(&(&x - &lo), &shifted, &beta, 25).unwrap();
        for (a, b) in g1.digits.iter().zip(g2.digits.iter()) {
            assert_eq!(a.subdigits()[0], b.subdigits()[0] + 1);
        }
        // remainders differ exactly by the forced tail Σ_{m>25} 1·β^{-m}
        let ell_tail = pow_rat(&beta, -25) / (&beta - Rat::one());
        assert_eq!(g1.remainder, g2.remainder + ell_tail);
    }

    #[test]
    fn greedy_converges_below_when_gaps_fail() {
        // D_1 = {0, 1}, D_n = {2} afterwards at β = 3: position 1 violates its
        // gap inequality, so some in-range values are unreachable; the greedy
        // walk stays below such an x instead of reaching it.
        let seq = DigitSetSequence::from_int_sets(vec![vec![0, 1]], vec![vec![2]]).unwrap();
        assert!(!gap_inequalities_hold(&seq, &rat_int(3)).unwrap());
        let x = rat(7, 20);
        let g = greedy_expansion(&x, &seq, &rat_int(3), 40).unwrap();
        assert_eq!(g.digits[0].subdigits(), &[0]);
        let completed = g.completed_sequence(&seq, &rat_int(3)).unwrap();
        let reached = series_value(&completed, &rat_int(3)).unwrap();
        // converges to 1/3, strictly short of 7/20
        assert_eq!(reached, rat(1, 3));
        assert!(reached < x);
    }

    #[test]
    fn greedy_round_trip_with_bound() {
        let ex = generalised_example();
        let beta = rat(23, 10);
        for x in [rat(4, 5), rat(9, 10), rat(1, 1), rat(11, 10)] {
            let g = greedy_expansion(&x, &ex, &beta, 40).unwrap();
            let completed = g.completed_sequence(&ex, &beta).unwrap();
            let reached = series_value(&completed, &beta).unwrap();
            let err = (&x - &reached).abs();
            assert!(err <= g.error_bound, "x={x}: {err} > {}", g.error_bound);
        }
    }

    #[test]
    fn corollary_matches_full_sequence() {
        // two-block digit set shape at k=7: the specialised bounds agree with
        // the general predicate on the induced sequence.
        let f_digits: Vec<GeneralisedDigit> = [
            "1.1", "1.11", "1.111", "1.2", "1.21", "1.211", "1.22", "1.221", "1.222", "1.2221",
        ]
        .iter()
        .map(|s| d(s))
        .collect();
        let d1 = vec![GeneralisedDigit::from_int(1)];
        let seq = corollary_sequence(7, &d1, &f_digits).unwrap();
        for beta in [rat(12, 5), rat(247, 100), rat(248, 100), rat(27, 10)] {
            assert_eq!(
                corollary_gap_bounds(7, &d1, &f_digits, &beta).unwrap(),
                gap_inequalities_hold(&seq, &beta).unwrap(),
                "mismatch at β={beta}"
            );
        }
        // boundary: true at 2.47, false at 2.48 (root of x^4−2x^3−x^2−1)
        assert!(corollary_gap_bounds(7, &d1, &f_digits, &rat(247, 100)).unwrap());
        assert!(!corollary_gap_bounds(7, &d1, &f_digits, &rat(248, 100)).unwrap());
        // singleton D_k: both left sides vanish
        let single = vec![d("1.1")];
        assert!(corollary_gap_bounds(5, &d1, &single, &rat_int(100)).unwrap());
    }
}
