//! Families of sum-closed classes built from inflated oscillations: the
//! built-in Families A–E and the worked example, per-family digit-set
//! sequences, bound sequences and growth-rate enclosures, and certified
//! gap-inequality analysis across the resulting interval.

use num_bigint::BigInt;
use num_traits::One;
use serde::Deserialize;
use thiserror::Error;

use crate::digits::{DigitError, DigitSequence, DigitSetSequence, GeneralisedDigit};
use crate::growth::{
    char_polynomial, digit_seq_to_enum, growth_rate, EnumSequence, GrowthError, RootEnclosure,
};
use crate::osc::{inflated_oscillation, star, OscKind};
use crate::perm::{PermError, Permutation};
use crate::poly::{
    isolate_roots_in, nonneg_on_closed, pos_on_closed, rat, rat_int, two_pow_neg, IntPoly, Rat,
};
use crate::poset::{
    distinct_profiles_closed_form, distinct_profiles_from_one_form, downset_collection,
    f_profile_digits, q_sequence, Downset, DownsetCollection, EnumProfile, PosetError,
};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("unknown family `{0}` (expected A, B, C, D, E, Example, or theorem1:<odd k>)")]
    UnknownFamily(String),
    #[error("family parameters need r >= 3, s >= 2, odd k >= 5; got r={r}, s={s}, k={k}")]
    BadParams { r: usize, s: usize, k: usize },
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Growth(#[from] GrowthError),
    #[error(transparent)]
    Digit(#[from] DigitError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("extreme-digit selection did not stabilise across the candidate interval")]
    SelectionUnstable,
    #[error("cannot read family config: {0}")]
    Config(String),
}

/// A Φ_{r,s,k,H} family: the H collection is a union of U ⇓_{r,s} L pieces
/// (empty list for a plain Φ_{r,s,k}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub r: usize,
    pub s: usize,
    pub k: usize,
    pub collections: Vec<(Vec<Permutation>, Vec<Permutation>)>,
}

fn perm(s: &str) -> Permutation {
    s.parse().expect("builtin permutation literal")
}

/// The named permutations the built-in families are defined from.
pub mod pieces {
    use super::*;

    pub fn pi0() -> Permutation {
        inflated_oscillation(5, 7, 1, OscKind::Primary).unwrap()
    }
    pub fn pi1() -> Permutation {
        inflated_oscillation(7, 9, 1, OscKind::Primary).unwrap()
    }
    pub fn pi2() -> Permutation {
        perm("2 9 1 3 4 5 6 7 10 8")
    }
    pub fn pi3() -> Permutation {
        perm("3 1 8 2 4 5 6 10 7 9")
    }
    pub fn pi4() -> Permutation {
        perm("314562")
    }
    pub fn pi5() -> Permutation {
        perm("281345697")
    }
    pub fn pi6() -> Permutation {
        perm("3412")
    }
    pub fn pi7() -> Permutation {
        perm("2613475")
    }
    pub fn pi8() -> Permutation {
        perm("31456827")
    }
    pub fn mu1() -> Permutation {
        star(7).unwrap()
    }
    pub fn mu2() -> Permutation {
        perm("251364")
    }
    pub fn mu3() -> Permutation {
        perm("2341")
    }
    pub fn mu4() -> Permutation {
        perm("23451")
    }
    pub fn mu5() -> Permutation {
        perm("23514")
    }
}

/// Built-in family specs: A–E of the covering construction, the worked
/// Example, and the plain `theorem1:<k>` families.
pub fn builtin_family(name: &str) -> Result<FamilySpec, FamilyError> {
    use pieces::*;
    let spec = match name {
        "A" => FamilySpec {
            name: "A".into(),
            r: 5,
            s: 3,
            k: 7,
            collections: vec![(vec![pi1()], vec![mu1()])],
        },
        "B" => FamilySpec {
            name: "B".into(),
            r: 5,
            s: 3,
            k: 5,
            collections: vec![(vec![pi2()], vec![])],
        },
        "C" => FamilySpec {
            name: "C".into(),
            r: 9,
            s: 8,
            k: 5,
            collections: vec![(vec![pi3()], vec![mu2()])],
        },
        "D" => FamilySpec {
            name: "D".into(),
            r: 5,
            s: 3,
            k: 5,
            collections: vec![(vec![pi4(), pi5()], vec![mu3()])],
        },
        "E" => FamilySpec {
            name: "E".into(),
            r: 5,
            s: 5,
            k: 5,
            collections: vec![
                (vec![pi6(), pi7(), pi8()], vec![pi6(), mu3()]),
                (vec![pi6(), pi7(), pi8()], vec![mu2(), mu4(), mu5()]),
            ],
        },
        "Example" => FamilySpec {
            name: "Example".into(),
            r: 5,
            s: 3,
            k: 5,
            collections: vec![(vec![pi0()], vec![mu1()])],
        },
        other => {
            if let Some(ks) = other.strip_prefix("theorem1:") {
                let k: usize = ks
                    .parse()
                    .map_err(|_| FamilyError::UnknownFamily(other.into()))?;
                if k < 5 || k.is_multiple_of(2) {
                    return Err(FamilyError::BadParams { r: 5, s: 3, k });
                }
                FamilySpec {
                    name: format!("theorem1:{k}"),
                    r: 5,
                    s: 3,
                    k,
                    collections: vec![],
                }
            } else {
                return Err(FamilyError::UnknownFamily(other.into()));
            }
        }
    };
    Ok(spec)
}

#[derive(Deserialize)]
struct FamilyConfig {
    name: String,
    r: usize,
    s: usize,
    k: usize,
    #[serde(default)]
    collections: Vec<CollectionConfig>,
}

#[derive(Deserialize)]
struct CollectionConfig {
    u: Vec<String>,
    #[serde(default)]
    l: Vec<String>,
}

/// Load a family spec from a declarative JSON config
/// (keys: name, r, s, k, collections as lists of permutation strings).
pub fn family_from_config(json: &str) -> Result<FamilySpec, FamilyError> {
    let cfg: FamilyConfig =
        serde_json::from_str(json).map_err(|e| FamilyError::Config(e.to_string()))?;
    let parse_all = |v: &[String]| -> Result<Vec<Permutation>, FamilyError> {
        v.iter()
            .map(|s| s.parse::<Permutation>().map_err(FamilyError::from))
            .collect()
    };
    let mut collections = Vec::new();
    for c in &cfg.collections {
        collections.push((parse_all(&c.u)?, parse_all(&c.l)?));
    }
    Ok(FamilySpec {
        name: cfg.name,
        r: cfg.r,
        s: cfg.s,
        k: cfg.k,
        collections,
    })
}

/// The H data of a family: the merged collection of extra sets and their
/// distinct enumeration profiles.
#[derive(Clone, Debug)]
pub struct HAnalysis {
    pub collections: Vec<DownsetCollection>,
    pub sets: Vec<Downset>,
    pub profiles: Vec<EnumProfile>,
    pub digits: Vec<GeneralisedDigit>,
}

/// Everything derived from a family spec that does not depend on a base.
#[derive(Clone, Debug)]
pub struct FamilyAnalysis {
    pub spec: FamilySpec,
    pub q: EnumSequence,
    pub f_digits: Vec<GeneralisedDigit>,
    pub h: Option<HAnalysis>,
    pub digit_sets: DigitSetSequence,
}

/// Build the per-position digit sets D_n of a family: position 1 carries
/// {q_1 + h : h over the H profiles}, odd positions >= k+2 carry
/// {q_n + f : f over the F^{r,s} profiles}, and every other position the
/// singleton {q_n}. H collections are validated for suitability
/// (disjointness from Q by construction and from every R-cell by check).
pub fn analyze_family(spec: &FamilySpec) -> Result<FamilyAnalysis, FamilyError> {
    if spec.r < 3 || spec.s < 2 || spec.k < 5 || spec.k.is_multiple_of(2) {
        return Err(FamilyError::BadParams {
            r: spec.r,
            s: spec.s,
            k: spec.k,
        });
    }
    let q = q_sequence(spec.r, spec.s)?;
    let f_digits = f_profile_digits(spec.r, spec.s)?;
    let h = if spec.collections.is_empty() {
        None
    } else {
        let mut collections = Vec::new();
        let mut sets: std::collections::BTreeSet<Downset> = std::collections::BTreeSet::new();
        for (u, l) in &spec.collections {
            let coll = downset_collection(u, l, spec.r, spec.s)?;
            coll.check_r_cell_disjoint()?;
            sets.extend(coll.downsets.iter().cloned());
            collections.push(coll);
        }
        let sets: Vec<Downset> = sets.into_iter().collect();
        let mut profiles: std::collections::BTreeSet<EnumProfile> =
            std::collections::BTreeSet::new();
        for d in &sets {
            profiles.insert(crate::poset::enum_profile(d));
        }
        let profiles: Vec<EnumProfile> = profiles.into_iter().collect();
        let digits = profiles.iter().map(|p| p.to_digit_at(1)).collect();
        Some(HAnalysis {
            collections,
            sets,
            profiles,
            digits,
        })
    };

    // preperiod runs to an even M covering both the F start k+2 and the
    // preperiod of (q_n); the period is [odd with F, even plain]
    let q_pre = q.preperiod().len();
    let mut m = spec.k.max(q_pre + 1);
    if m % 2 == 1 {
        m += 1;
    }
    let q_at = |n: usize| q.term(n);
    let singleton = |n: usize| vec![GeneralisedDigit::from_int(q_at(n))];
    let f_set_at = |n: usize| -> Vec<GeneralisedDigit> {
        f_digits.iter().map(|f| f.add_int(q_at(n))).collect()
    };
    let mut pre: Vec<Vec<GeneralisedDigit>> = Vec::with_capacity(m);
    let d1 = match &h {
        Some(h) => h
            .digits
            .iter()
            .map(|hd| hd.add_int(q_at(1)))
            .collect::<Vec<_>>(),
        None => singleton(1),
    };
    pre.push(d1);
    for n in 2..=m {
        if n % 2 == 1 && n >= spec.k + 2 {
            pre.push(f_set_at(n));
        } else {
            pre.push(singleton(n));
        }
    }
    debug_assert_eq!(q_at(m + 1), q_at(m + 3), "q must be constant past M");
    let period = vec![f_set_at(m + 1), singleton(m + 2)];
    let digit_sets = DigitSetSequence::new(pre, period)?;
    Ok(FamilyAnalysis {
        spec: spec.clone(),
        q,
        f_digits,
        h,
        digit_sets,
    })
}

/// Per-position least/greatest digit sequences by value at a probe base,
/// with the corresponding integer enumeration sequences.
pub fn bound_sequences(
    analysis: &FamilyAnalysis,
    probe: &Rat,
) -> Result<(EnumSequence, EnumSequence), FamilyError> {
    let (ell_d, u_d) = bound_digit_sequences(analysis, probe)?;
    Ok((digit_seq_to_enum(&ell_d), digit_seq_to_enum(&u_d)))
}

pub fn bound_digit_sequences(
    analysis: &FamilyAnalysis,
    probe: &Rat,
) -> Result<(DigitSequence, DigitSequence), FamilyError> {
    let ell = analysis.digit_sets.extreme_sequence(probe, false)?;
    let u = analysis.digit_sets.extreme_sequence(probe, true)?;
    Ok((ell, u))
}

// ---------------------------------------------------------------------------
// Laurent-exact constraint machinery
// ---------------------------------------------------------------------------

/// poly(x)·x^{shift}; shift may be negative. Only what the tail algebra needs.
#[derive(Clone, Debug)]
struct Laurent {
    shift: i64,
    poly: IntPoly,
}

impl Laurent {
    fn zero() -> Self {
        Laurent {
            shift: 0,
            poly: IntPoly::zero(),
        }
    }

    fn from_digit(d: &GeneralisedDigit) -> Self {
        let k = d.len() - 1;
        Laurent {
            shift: -(k as i64),
            poly: d.value_poly(k),
        }
    }

    fn mul_xk(&self, k: i64) -> Self {
        Laurent {
            shift: self.shift + k,
            poly: self.poly.clone(),
        }
    }

    fn mul_poly(&self, p: &IntPoly) -> Self {
        Laurent {
            shift: self.shift,
            poly: self.poly.mul(p),
        }
    }

    fn add(&self, other: &Laurent) -> Self {
        if self.poly.is_zero() {
            return other.clone();
        }
        if other.poly.is_zero() {
            return self.clone();
        }
        let shift = self.shift.min(other.shift);
        let a = self.poly.mul_xk((self.shift - shift) as usize);
        let b = other.poly.mul_xk((other.shift - shift) as usize);
        Laurent {
            shift,
            poly: a.add(&b),
        }
    }

    fn sub(&self, other: &Laurent) -> Self {
        self.add(&Laurent {
            shift: other.shift,
            poly: other.poly.neg(),
        })
    }

    /// The sign-equivalent ordinary polynomial on (0, ∞).
    fn cleared(&self) -> IntPoly {
        if self.shift >= 0 {
            self.poly.mul_xk(self.shift as usize)
        } else {
            self.poly.clone()
        }
    }
}

/// A certified boundary of the gap-inequality feasibility region: a
/// sign-change bracket for the predicate together with the binding
/// constraint's polynomial (normalised, trivial factors stripped) and the
/// position at which it binds.
#[derive(Clone, Debug)]
pub struct ConstraintBoundary {
    pub polynomial: IntPoly,
    pub lo: Rat,
    pub hi: Rat,
    pub position: usize,
}

struct GapCertifier<'a> {
    d: &'a DigitSetSequence,
    /// per case (0-based over pre+period): value Laurents of the set
    values: Vec<Vec<Laurent>>,
    /// per case: certified (min_idx, max_idx) once resolve() has run
    extremes: Vec<(usize, usize)>,
}

/// Componentwise subdigit dominance: a >= b termwise implies
/// value(a) >= value(b) at every base > 0.
fn dominates(a: &GeneralisedDigit, b: &GeneralisedDigit) -> bool {
    let n = a.len().max(b.len());
    (0..n).all(|i| {
        a.subdigits().get(i).copied().unwrap_or(0) >= b.subdigits().get(i).copied().unwrap_or(0)
    })
}

/// Dominance with a strict component: value(a) > value(b) at every base > 0.
fn dominates_strictly(a: &GeneralisedDigit, b: &GeneralisedDigit) -> bool {
    let n = a.len().max(b.len());
    let mut strict = false;
    for i in 0..n {
        let x = a.subdigits().get(i).copied().unwrap_or(0);
        let y = b.subdigits().get(i).copied().unwrap_or(0);
        if x < y {
            return false;
        }
        if x > y {
            strict = true;
        }
    }
    strict
}

impl<'a> GapCertifier<'a> {
    fn new(d: &'a DigitSetSequence) -> Self {
        let cases = d.case_count();
        let values = (1..=cases)
            .map(|n| d.set_at(n).iter().map(Laurent::from_digit).collect())
            .collect();
        GapCertifier {
            d,
            values,
            extremes: vec![],
        }
    }

    fn case_set(&self, case: usize) -> &[GeneralisedDigit] {
        self.d.set_at(case + 1)
    }

    /// Resolve and certify the per-position argmin/argmax across [lo, hi].
    fn resolve_extremes(&mut self, probe: &Rat, lo: &Rat, hi: &Rat) -> Result<(), FamilyError> {
        let mut extremes = Vec::with_capacity(self.values.len());
        for (case, vals) in self.values.iter().enumerate() {
            let set = self.case_set(case);
            let mut min_i = 0;
            let mut max_i = 0;
            for i in 1..set.len() {
                if set[i].value_at(probe) < set[min_i].value_at(probe) {
                    min_i = i;
                }
                if set[i].value_at(probe) > set[max_i].value_at(probe) {
                    max_i = i;
                }
            }
            for i in 0..set.len() {
                if i != min_i && !dominates(&set[i], &set[min_i]) {
                    let diff = vals[i].sub(&vals[min_i]).cleared();
                    if !nonneg_on_closed(&diff, lo, hi) {
                        return Err(FamilyError::SelectionUnstable);
                    }
                }
                if i != max_i && !dominates(&set[max_i], &set[i]) {
                    let diff = vals[max_i].sub(&vals[i]).cleared();
                    if !nonneg_on_closed(&diff, lo, hi) {
                        return Err(FamilyError::SelectionUnstable);
                    }
                }
            }
            extremes.push((min_i, max_i));
        }
        self.extremes = extremes;
        Ok(())
    }

    /// Δ_case as a Laurent (zero for singletons); needs resolved extremes.
    fn delta(&self, case: usize) -> Laurent {
        let (min_i, max_i) = self.extremes[case];
        if min_i == max_i {
            return Laurent::zero();
        }
        self.values[case][max_i].sub(&self.values[case][min_i])
    }

    /// Tail(n) = A + B/(x^P − 1) for 1-based position n <= m + P.
    fn tail_parts(&self, n: usize) -> (Laurent, Laurent) {
        let m = self.d.preperiod_len();
        let p = self.d.period_len();
        let delta_case = |pos: usize| -> Laurent {
            // position -> case index
            if pos <= m {
                self.delta(pos - 1)
            } else {
                self.delta(m + (pos - m - 1) % p)
            }
        };
        if n > m {
            // periodic position: B = Σ_{i=1}^{P} Δ_{n+i} x^{P−i}
            let mut b = Laurent::zero();
            for i in 1..=p {
                b = b.add(&delta_case(n + i).mul_xk((p - i) as i64));
            }
            (Laurent::zero(), b)
        } else {
            let mut a = Laurent::zero();
            for i in 1..=(m - n) {
                a = a.add(&delta_case(n + i).mul_xk(-(i as i64)));
            }
            // periodic continuation from position m: phase P−1 window
            let mut b = Laurent::zero();
            for i in 1..=p {
                b = b.add(&delta_case(m + i).mul_xk((p - i) as i64));
            }
            (a, b.mul_xk(-((m - n) as i64)))
        }
    }

    /// The constraint "Tail(n) − (val(hi) − val(lo)) >= 0" as an ordinary
    /// integer polynomial, sign-equivalent on (1, ∞).
    fn constraint_poly(&self, n: usize, lo_idx: usize, hi_idx: usize) -> IntPoly {
        let p = self.d.period_len();
        let case = if n <= self.d.preperiod_len() {
            n - 1
        } else {
            self.d.preperiod_len() + (n - self.d.preperiod_len() - 1) % p
        };
        let gap = self.values[case][hi_idx].sub(&self.values[case][lo_idx]);
        let cyclo = IntPoly::from_desc(
            &std::iter::once(1i64)
                .chain(std::iter::repeat_n(0, p - 1))
                .chain(std::iter::once(-1))
                .collect::<Vec<_>>(),
        ); // x^P − 1
        let (a, b) = self.tail_parts(n);
        a.mul_poly(&cyclo)
            .add(&b)
            .sub(&gap.mul_poly(&cyclo))
            .cleared()
    }

    /// Certify δ_n <= Tail(n) for every position across [lo, hi]: each
    /// non-maximal digit gets a fixed witness digit strictly above it and
    /// within the tail, certified by Sturm sign conditions.
    fn certify_gaps(&self, probe: &Rat, lo: &Rat, hi: &Rat) -> Result<(), (usize, FamilyError)> {
        let cases = self.values.len();
        for case in 0..cases {
            let n = case + 1;
            let set = self.case_set(case);
            if set.len() < 2 {
                continue;
            }
            let (_, max_i) = self.extremes[case];
            // sort indices by value at the probe
            let mut order: Vec<usize> = (0..set.len()).collect();
            order.sort_by(|&a, &b| set[a].value_at(probe).cmp(&set[b].value_at(probe)));
            for w in 0..set.len() {
                let i = order[w];
                if i == max_i {
                    continue;
                }
                // candidate witnesses in ascending value order above i
                let mut ok = false;
                for &j in order.iter().skip(w + 1) {
                    let strictly_above = dominates_strictly(&set[j], &set[i]) || {
                        let above = self.values[case][j].sub(&self.values[case][i]).cleared();
                        pos_on_closed(&above, lo, hi)
                    };
                    if !strictly_above {
                        continue;
                    }
                    let within = self.constraint_poly(n, i, j);
                    if nonneg_on_closed(&within, lo, hi) {
                        ok = true;
                        break;
                    }
                }
                if !ok {
                    return Err((n, FamilyError::SelectionUnstable));
                }
            }
        }
        Ok(())
    }
}

/// The nearest certified constraint boundaries outside [lo, hi]: every
/// value-consecutive pair (order fixed at the interval midpoint) yields the
/// constraint polynomial "tail − gap >= 0"; its roots outside the interval
/// past which the constraint turns negative bound the fixed-order
/// feasibility region. Returns (gamma_min, gamma_max) as certified brackets
/// of the binding roots with the binding polynomials attached.
fn nearest_boundaries(
    cert: &GapCertifier<'_>,
    d: &DigitSetSequence,
    probe: &Rat,
    lo: &Rat,
    hi: &Rat,
    p_bits: u32,
) -> (Option<ConstraintBoundary>, Option<ConstraintBoundary>) {
    let cap_up = hi + rat_int(2);
    let cap_down = Rat::one() + rat(1, 1024);
    let width = two_pow_neg(p_bits.min(34));
    let m = d.preperiod_len();
    let p = d.period_len();
    let mut seen: std::collections::BTreeSet<Vec<num_bigint::BigInt>> =
        std::collections::BTreeSet::new();
    let mut best_up: Option<(Rat, Rat, IntPoly, usize)> = None;
    let mut best_down: Option<(Rat, Rat, IntPoly, usize)> = None;
    for n in 1..=m + p {
        let set = d.set_at(n);
        if set.len() < 2 {
            continue;
        }
        let mut order: Vec<usize> = (0..set.len()).collect();
        order.sort_by(|&a, &b| set[a].value_at(probe).cmp(&set[b].value_at(probe)));
        for w in order.windows(2) {
            let poly = cert.constraint_poly(n, w[0], w[1]);
            if poly.is_zero() || !seen.insert(poly.coeffs_asc().to_vec()) {
                continue;
            }
            // upward: first root above hi after which the constraint fails
            let brackets = isolate_roots_in(&poly, hi, &cap_up, &width);
            for (idx, (blo, bhi)) in brackets.iter().enumerate() {
                let after = match brackets.get(idx + 1) {
                    Some((next_lo, _)) => (bhi + next_lo) / rat_int(2),
                    None => (bhi + &cap_up) / rat_int(2),
                };
                if poly.sign_at(&after) < 0 {
                    if best_up.as_ref().is_none_or(|(l, _, _, _)| blo < l) {
                        best_up = Some((blo.clone(), bhi.clone(), poly.clone(), n));
                    }
                    break;
                }
            }
            // downward: last root below lo before which the constraint fails
            if cap_down < *lo {
                let brackets = isolate_roots_in(&poly, &cap_down, lo, &width);
                for (idx, (blo, bhi)) in brackets.iter().enumerate().rev() {
                    let before = if idx == 0 {
                        (&cap_down + blo) / rat_int(2)
                    } else {
                        (&brackets[idx - 1].1 + blo) / rat_int(2)
                    };
                    if poly.sign_at(&before) < 0 {
                        if best_down.as_ref().is_none_or(|(_, h, _, _)| bhi > h) {
                            best_down = Some((blo.clone(), bhi.clone(), poly.clone(), n));
                        }
                        break;
                    }
                }
            }
        }
    }
    let package = |b: Option<(Rat, Rat, IntPoly, usize)>| {
        b.map(|(blo, bhi, poly, position)| ConstraintBoundary {
            polynomial: poly.strip_trivial_factors(),
            lo: blo,
            hi: bhi,
            position,
        })
    };
    (package(best_down), package(best_up))
}

/// The full certified analysis of one family.
#[derive(Clone, Debug)]
pub struct IntervalReport {
    pub name: String,
    pub r: usize,
    pub s: usize,
    pub k: usize,
    pub q: EnumSequence,
    pub f_digit_count: u64,
    pub f_closed_form: u64,
    pub f_from_one_form: u64,
    pub h_set_count: Option<usize>,
    pub h_profile_count: Option<usize>,
    pub h_profile_min: Option<EnumProfile>,
    pub h_profile_max: Option<EnumProfile>,
    pub h_orders_agree: bool,
    pub ell: EnumSequence,
    pub u: EnumSequence,
    pub ell_poly: IntPoly,
    pub u_poly: IntPoly,
    pub gr_lo: RootEnclosure,
    pub gr_hi: RootEnclosure,
    pub selection_stable: bool,
    pub feasible: bool,
    pub infeasible_position: Option<usize>,
    pub gamma_min: Option<ConstraintBoundary>,
    pub gamma_max: Option<ConstraintBoundary>,
}

impl IntervalReport {
    /// The interval is usable iff the bound growth rates are certified
    /// ordered and every gap inequality is certified across it.
    pub fn certified_nonempty(&self) -> bool {
        self.feasible && self.gr_lo.hi < self.gr_hi.lo
    }
}

/// Analyse a family: bound sequences (with probe iteration until the
/// extreme-digit selection is stable on the resulting interval), growth-rate
/// enclosures at 2^{-p}, gap certification across [gr_lo, gr_hi], and
/// certified feasibility boundaries outside it.
pub fn family_interval(spec: &FamilySpec, p_bits: u32) -> Result<IntervalReport, FamilyError> {
    let analysis = analyze_family(spec)?;
    let d = &analysis.digit_sets;

    // iterate the probe until the selection fixes itself
    let mut probe = rat(12, 5);
    let mut chosen: Option<(DigitSequence, DigitSequence)> = None;
    let mut enclosures: Option<(RootEnclosure, RootEnclosure)> = None;
    for _ in 0..8 {
        let (ell_d, u_d) = bound_digit_sequences(&analysis, &probe)?;
        let ell = digit_seq_to_enum(&ell_d);
        let u = digit_seq_to_enum(&u_d);
        let gl = growth_rate(&ell, p_bits)?;
        let gu = growth_rate(&u, p_bits)?;
        let next = (&gl.lo + &gu.hi) / rat_int(2);
        let stable = {
            let (e2, u2) = bound_digit_sequences(&analysis, &next)?;
            e2 == ell_d && u2 == u_d
        };
        chosen = Some((ell_d, u_d));
        enclosures = Some((gl, gu));
        if stable {
            break;
        }
        probe = next;
    }
    let (ell_d, u_d) = chosen.expect("at least one iteration ran");
    let (gr_lo, gr_hi) = enclosures.expect("at least one iteration ran");
    let ell = digit_seq_to_enum(&ell_d);
    let u = digit_seq_to_enum(&u_d);
    let ell_poly = char_polynomial(&ell)?;
    let u_poly = char_polynomial(&u)?;

    let lo_end = gr_lo.lo.clone();
    let hi_end = gr_hi.hi.clone();
    let mid = (&lo_end + &hi_end) / rat_int(2);

    let mut cert = GapCertifier::new(d);
    let selection_stable = cert.resolve_extremes(&mid, &lo_end, &hi_end).is_ok();
    let (feasible, infeasible_position) = if selection_stable {
        match cert.certify_gaps(&mid, &lo_end, &hi_end) {
            Ok(()) => (true, None),
            Err((pos, _)) => (false, Some(pos)),
        }
    } else {
        (false, None)
    };

    let (gamma_min, gamma_max) = if selection_stable && feasible {
        nearest_boundaries(&cert, d, &mid, &lo_end, &hi_end, p_bits)
    } else {
        (None, None)
    };

    // H profile extremes under both orders
    let (h_set_count, h_profile_count, h_profile_min, h_profile_max, h_orders_agree) =
        match &analysis.h {
            None => (None, None, None, None, true),
            Some(h) => {
                let by_value = |x: &EnumProfile, y: &EnumProfile| {
                    x.to_digit_at(1)
                        .value_at(&mid)
                        .cmp(&y.to_digit_at(1).value_at(&mid))
                };
                let mut profiles = h.profiles.clone();
                profiles.sort_by(|a, b| by_value(a, b));
                let vmin = profiles.first().cloned();
                let vmax = profiles.last().cloned();
                // lexicographic order on counts as zero-padded vectors by
                // length, matching the (0^j, c, …) display convention
                let top = h
                    .profiles
                    .iter()
                    .map(|p| p.base_length + p.counts.len())
                    .max()
                    .unwrap_or(0);
                let lex_key = |p: &EnumProfile| {
                    let mut key = vec![0u64; top];
                    for (i, &c) in p.counts.iter().enumerate() {
                        key[p.base_length + i - 1] = c;
                    }
                    key
                };
                let mut lex = h.profiles.clone();
                lex.sort_by_key(lex_key);
                let agree = lex.first() == vmin.as_ref() && lex.last() == vmax.as_ref();
                (
                    Some(h.sets.len()),
                    Some(h.profiles.len()),
                    vmin,
                    vmax,
                    agree,
                )
            }
        };

    Ok(IntervalReport {
        name: spec.name.clone(),
        r: spec.r,
        s: spec.s,
        k: spec.k,
        q: analysis.q.clone(),
        f_digit_count: analysis.f_digits.len() as u64,
        f_closed_form: distinct_profiles_closed_form(spec.r, spec.s),
        f_from_one_form: distinct_profiles_from_one_form(spec.r, spec.s),
        h_set_count,
        h_profile_count,
        h_profile_min,
        h_profile_max,
        h_orders_agree,
        ell,
        u,
        ell_poly,
        u_poly,
        gr_lo,
        gr_hi,
        selection_stable,
        feasible,
        infeasible_position,
        gamma_min,
        gamma_max,
    })
}

/// One entry of the Theorem 1 sweep.
#[derive(Clone, Debug)]
pub struct Theorem1Entry {
    pub k: usize,
    pub report: IntervalReport,
    pub nonempty: bool,
    pub dist_to_theta: Rat,
    pub agreement_rate_bound: Rat,
    pub within_agreement_rate: bool,
}

#[derive(Clone, Debug)]
pub struct Theorem1Report {
    pub entries: Vec<Theorem1Entry>,
    pub gamma_max_polys_equal: bool,
    pub all_certified: bool,
}

/// Verify the Theorem 1 sweep: for each odd k, a certified nonempty interval
/// with the gap inequalities holding, the feasibility ceiling independent of
/// k, and both endpoints approaching θ_B at the agreement-bound rate.
pub fn verify_theorem1(k_list: &[usize], p_bits: u32) -> Result<Theorem1Report, FamilyError> {
    let theta = growth_rate(&q_sequence(5, 3)?, p_bits)?;
    let mut entries = Vec::new();
    let mut gamma_polys: Vec<IntPoly> = Vec::new();
    for &k in k_list {
        let spec = builtin_family(&format!("theorem1:{k}"))?;
        let report = family_interval(&spec, p_bits)?;
        let nonempty = report.certified_nonempty();
        let dist_lo = report.gr_lo.distance_upper_bound(&theta);
        let dist_hi = report.gr_hi.distance_upper_bound(&theta);
        let dist_to_theta = if dist_lo > dist_hi { dist_lo } else { dist_hi };
        // sequences agree with (q_n) through position k+1; c = 12 bounds both
        let m = (k + 1) as u32;
        let agreement_rate_bound =
            Rat::from_integer(BigInt::from(12 * 13 * 13)) / Rat::from_integer(BigInt::one() << m);
        let within = dist_to_theta <= agreement_rate_bound;
        if let Some(gm) = &report.gamma_max {
            gamma_polys.push(gm.polynomial.clone());
        }
        entries.push(Theorem1Entry {
            k,
            report,
            nonempty,
            dist_to_theta,
            agreement_rate_bound,
            within_agreement_rate: within,
        });
    }
    let gamma_max_polys_equal =
        gamma_polys.len() == entries.len() && gamma_polys.windows(2).all(|w| w[0] == w[1]);
    let all_certified = entries
        .iter()
        .all(|e| e.nonempty && e.within_agreement_rate && e.report.feasible);
    Ok(Theorem1Report {
        entries,
        gamma_max_polys_equal,
        all_certified,
    })
}

#[derive(Clone, Debug)]
pub struct OverlapCheck {
    pub upper_of: String,
    pub lower_of: String,
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct Theorem2Report {
    pub families: Vec<IntervalReport>,
    pub a_lo_is_lambda_b: bool,
    pub overlaps: Vec<OverlapCheck>,
    pub e_hi_exceeds_lambda_a: bool,
    pub all_certified: bool,
}

/// Verify the Theorem 2 chain: A.lo = λ_B (exact polynomial identity),
/// consecutive interval overlaps certified by disjoint enclosures, and
/// E.hi > λ_A.
pub fn verify_theorem2(p_bits: u32) -> Result<Theorem2Report, FamilyError> {
    let names = ["A", "B", "C", "D", "E"];
    let mut families = Vec::new();
    for n in names {
        families.push(family_interval(&builtin_family(n)?, p_bits)?);
    }
    let lambda_b_poly = IntPoly::from_desc(&[1, -2, 0, -1, -1, -2, -2, -1, -1]);
    let a_lo_is_lambda_b = families[0].ell_poly == lambda_b_poly;
    let mut overlaps = Vec::new();
    for i in 0..4 {
        // next.lo strictly below this.hi, certified by disjoint enclosures
        let certified = families[i + 1].gr_lo.certified_below(&families[i].gr_hi);
        overlaps.push(OverlapCheck {
            upper_of: names[i].into(),
            lower_of: names[i + 1].into(),
            certified,
        });
    }
    let lambda_a_poly = IntPoly::from_desc(&[1, -2, 0, -2, -2, -1]);
    let lambda_a = crate::growth::enclose_root_above_one(
        &lambda_a_poly,
        lambda_a_poly.cauchy_bound(),
        p_bits,
    )?;
    let e_hi_exceeds_lambda_a = lambda_a.certified_below(&families[4].gr_hi);
    let all_certified = a_lo_is_lambda_b
        && overlaps.iter().all(|o| o.certified)
        && e_hi_exceeds_lambda_a
        && families.iter().all(|f| f.certified_nonempty());
    Ok(Theorem2Report {
        families,
        a_lo_is_lambda_b,
        overlaps,
        e_hi_exceeds_lambda_a,
        all_certified,
    })
}
