//! Dense integer-coefficient polynomials with exact-rational evaluation,
//! Sturm chains, real root isolation and certified sign conditions on
//! closed intervals. No floating point anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// 2^-p as an exact rational.
pub fn two_pow_neg(p: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << p)
}

/// β^k for integer k (negative allowed), exact.
pub fn pow_rat(beta: &Rat, k: i64) -> Rat {
    if k >= 0 {
        Rat::new(beta.numer().pow(k as u32), beta.denom().pow(k as u32))
    } else {
        Rat::new(beta.denom().pow((-k) as u32), beta.numer().pow((-k) as u32))
    }
}

/// Integer polynomial, coefficients ascending, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn from_coeffs_asc(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// From a dense list, highest degree first (the crate's text form).
    pub fn from_desc(desc: &[i64]) -> Self {
        let coeffs: Vec<BigInt> = desc.iter().rev().map(|&c| BigInt::from(c)).collect();
        Self::from_coeffs_asc(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs_asc(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients highest degree first.
    pub fn coeffs_desc(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    pub fn sign_at(&self, x: &Rat) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPoly::from_coeffs_asc(coeffs)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        IntPoly::from_coeffs_asc(coeffs)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs_asc(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::from_coeffs_asc(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by x^k.
    pub fn mul_xk(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divide by content and make the leading coefficient positive.
    pub fn normalized(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Divide by positive content only (sign-preserving).
    fn primitive_signed(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let g = self.content();
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Exact division by a linear factor (q x - p); None if it does not divide.
    fn div_linear_exact(&self, p: &BigInt, q: &BigInt) -> Option<IntPoly> {
        // root p/q; synthetic division over rationals, exactness checked
        let d = self.coeffs.len();
        if d < 2 {
            return None;
        }
        let root = Rat::new(p.clone(), q.clone());
        let mut quot_rat: Vec<Rat> = vec![Rat::zero(); d - 1];
        let mut acc = Rat::zero();
        for i in (1..d).rev() {
            acc = acc * &root + Rat::from_integer(self.coeffs[i].clone());
            quot_rat[i - 1] = acc.clone();
        }
        let rem = acc * &root + Rat::from_integer(self.coeffs[0].clone());
        if !rem.is_zero() {
            return None;
        }
        // self = (x - p/q) * quot = (q x - p) * quot / q
        let mut coeffs = Vec::with_capacity(d - 1);
        for c in &quot_rat {
            let scaled = c / Rat::from_integer(q.clone());
            if !scaled.denom().is_one() {
                // keep integrality by dividing the monic-style quotient instead
                return self.div_linear_exact_int(p, q);
            }
            coeffs.push(scaled.numer().clone());
        }
        Some(IntPoly::from_coeffs_asc(coeffs))
    }

    fn div_linear_exact_int(&self, p: &BigInt, q: &BigInt) -> Option<IntPoly> {
        // long division by (q x - p) over rationals, then clear content
        let divisor = IntPoly::from_coeffs_asc(vec![-p.clone(), q.clone()]);
        let (quot, rem) = rat_divmod(&to_rat_poly(self), &to_rat_poly(&divisor));
        if !rem.iter().all(|c| c.is_zero()) {
            return None;
        }
        let den_lcm = quot.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs: Vec<BigInt> = quot
            .iter()
            .map(|c| (c * Rat::from_integer(den_lcm.clone())).to_integer())
            .collect();
        if den_lcm.is_one() {
            Some(IntPoly::from_coeffs_asc(coeffs))
        } else {
            None
        }
    }

    /// Strip factors of x and rational-root linear factors with roots <= 1
    /// (small candidates only). These factors are positive multiples on the
    /// region of interest (1, ∞), so removing them preserves the constraint.
    pub fn strip_trivial_factors(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut p = self.normalized();
        // powers of x
        let lead_zeros = p.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            p = IntPoly::from_coeffs_asc(p.coeffs[lead_zeros..].to_vec());
        }
        const CAND: i64 = 16;
        'outer: loop {
            if p.degree() < 1 {
                break;
            }
            for num in -CAND..=1 {
                for den in 1..=CAND {
                    let g = num.gcd(&den);
                    if g != 1 && !(num == 0 && den == 1) {
                        continue;
                    }
                    // root num/den <= 1 by construction of the ranges
                    let pn = BigInt::from(num);
                    let qd = BigInt::from(den);
                    if p.eval(&Rat::new(pn.clone(), qd.clone())).is_zero() {
                        if let Some(q) = p.div_linear_exact(&pn, &qd) {
                            p = q.normalized();
                            continue 'outer;
                        }
                    }
                }
            }
            break;
        }
        p.normalized()
    }

    /// Cauchy bound: all real roots lie in (-B, B).
    pub fn cauchy_bound(&self) -> Rat {
        let lead = self.leading().expect("cauchy bound of zero polynomial");
        let max = self
            .coeffs
            .iter()
            .take(self.coeffs.len() - 1)
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero);
        Rat::one() + Rat::new(max, lead.abs())
    }

    /// Sign-preserving pseudo-remainder: returns c·(self mod g) for some
    /// positive rational c, computed entirely over the integers with content
    /// stripping to keep coefficients small.
    fn prem_abs(&self, g: &IntPoly) -> IntPoly {
        let dg = g.degree();
        assert!(!g.is_zero(), "pseudo-division by zero");
        if dg == 0 {
            return IntPoly::zero();
        }
        let lg = g.leading().unwrap().clone();
        let lg_abs = lg.abs();
        let lg_neg = lg.is_negative();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= dg {
            let dr = r.degree();
            let lr = r.leading().unwrap().clone();
            // r ← |lg|·r − sign(lg)·lr·x^{dr−dg}·g scales by |lg| > 0
            let lr_signed = if lg_neg { -lr } else { lr };
            r = r.scale(&lg_abs).sub(&g.mul_xk(dr - dg).scale(&lr_signed));
            debug_assert!(r.is_zero() || r.degree() < dr);
            r = r.primitive_signed();
        }
        r
    }

    /// Polynomial gcd up to sign/content, by primitive PRS.
    fn gcd_poly(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_signed();
        let mut b = other.primitive_signed();
        while !b.is_zero() {
            if b.degree() == 0 {
                return IntPoly::from_coeffs_asc(vec![BigInt::one()]);
            }
            let r = a.prem_abs(&b).primitive_signed();
            a = b;
            b = r;
        }
        a.normalized()
    }

    /// Square-free part: p / gcd(p, p').
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree() < 1 {
            return self.normalized();
        }
        let g = self.gcd_poly(&self.derivative());
        if g.degree() == 0 {
            return self.normalized();
        }
        let (quot, rem) = rat_divmod(&to_rat_poly(self), &to_rat_poly(&g));
        debug_assert!(rem.iter().all(|c| c.is_zero()));
        from_rat_poly(&quot).normalized()
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() < 1 || self.gcd_poly(&self.derivative()).degree() == 0
    }

    /// Text form: dense integer coefficient list, highest degree first.
    pub fn to_desc_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .rev()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

type RatPoly = Vec<Rat>;

fn to_rat_poly(p: &IntPoly) -> RatPoly {
    p.coeffs
        .iter()
        .map(|c| Rat::from_integer(c.clone()))
        .collect()
}

fn from_rat_poly(p: &RatPoly) -> IntPoly {
    let den_lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    IntPoly::from_coeffs_asc(
        p.iter()
            .map(|c| (c * Rat::from_integer(den_lcm.clone())).to_integer())
            .collect(),
    )
}

fn rat_trim(p: &mut RatPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn rat_divmod(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    let mut rem = a.clone();
    rat_trim(&mut rem);
    let mut div = b.clone();
    rat_trim(&mut div);
    assert!(!div.is_empty(), "division by zero polynomial");
    let db = div.len() - 1;
    let lead = div[db].clone();
    if rem.len() < div.len() {
        return (vec![], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - div.len() + 1];
    while rem.len() >= div.len() && !rem.is_empty() {
        let dr = rem.len() - 1;
        let c = &rem[dr] / &lead;
        let k = dr - db;
        quot[k] = c.clone();
        for i in 0..=db {
            let t = &div[i] * &c;
            rem[k + i] -= t;
        }
        rat_trim(&mut rem);
        if rem.len() <= dr && rem.len() > db && rem.len() - 1 == dr {
            break; // defensive; cancellation always reduces degree
        }
    }
    (quot, rem)
}

/// Sturm chain of the square-free part; counts distinct real roots.
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> SturmChain {
        let sf = p.squarefree_part();
        let mut chain: Vec<IntPoly> = Vec::new();
        if sf.is_zero() || sf.degree() == 0 {
            chain.push(sf);
            return SturmChain { chain };
        }
        chain.push(sf.clone());
        chain.push(sf.derivative().primitive_signed());
        loop {
            let n = chain.len();
            let rem = chain[n - 2].prem_abs(&chain[n - 1]);
            if rem.is_zero() {
                break;
            }
            chain.push(rem.neg().primitive_signed());
            if chain.last().unwrap().degree() == 0 {
                break;
            }
        }
        SturmChain { chain }
    }

    fn variations_at(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last: i8 = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in (a, b]; requires a < b.
    pub fn count_roots_half_open(&self, a: &Rat, b: &Rat) -> usize {
        assert!(a < b);
        let va = self.variations_at(a);
        let vb = self.variations_at(b);
        va.saturating_sub(vb)
    }

    /// Number of distinct real roots in the open interval (a, b).
    pub fn count_roots_open(&self, a: &Rat, b: &Rat) -> usize {
        if a >= b {
            return 0;
        }
        let mut n = self.count_roots_half_open(a, b);
        if self.chain[0].sign_at(b) == 0 {
            n = n.saturating_sub(1);
        }
        n
    }
}

/// Isolate the distinct real roots of `p` inside the closed interval [a, b],
/// refined to brackets of width at most `width`. Brackets are disjoint and
/// sorted; exact rational roots come back as point brackets.
pub fn isolate_roots_in(p: &IntPoly, a: &Rat, b: &Rat, width: &Rat) -> Vec<(Rat, Rat)> {
    assert!(a <= b);
    if p.is_zero() {
        panic!("cannot isolate roots of the zero polynomial");
    }
    let chain = SturmChain::new(p);
    let mut out: Vec<(Rat, Rat)> = Vec::new();
    if p.sign_at(a) == 0 {
        out.push((a.clone(), a.clone()));
    }
    if a < b && p.sign_at(b) == 0 {
        // collected at the end to keep sorted order
    }
    let mut stack: Vec<(Rat, Rat, usize)> = Vec::new();
    if a < b {
        let n = chain.count_roots_open(a, b);
        if n > 0 {
            stack.push((a.clone(), b.clone(), n));
        }
    }
    while let Some((lo, hi, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        let w = &hi - &lo;
        if n == 1 && w <= *width {
            out.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / rat_int(2);
        let m_is_root = p.sign_at(&mid) == 0;
        if m_is_root {
            out.push((mid.clone(), mid.clone()));
        }
        let n_left = chain.count_roots_open(&lo, &mid);
        let n_right = chain.count_roots_open(&mid, &hi);
        debug_assert_eq!(n_left + n_right + usize::from(m_is_root), n);
        if n_left > 0 {
            stack.push((lo, mid.clone(), n_left));
        }
        if n_right > 0 {
            stack.push((mid, hi, n_right));
        }
    }
    if a < b && p.sign_at(b) == 0 {
        out.push((b.clone(), b.clone()));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Certified: p(x) >= 0 for every x in [a, b].
pub fn nonneg_on_closed(p: &IntPoly, a: &Rat, b: &Rat) -> bool {
    assert!(a <= b);
    if p.is_zero() {
        return true;
    }
    if p.sign_at(a) < 0 {
        return false;
    }
    if a == b {
        return true;
    }
    if p.sign_at(b) < 0 {
        return false;
    }
    let width = (b - a) / rat_int(1024);
    let brackets = isolate_roots_in(p, a, b, &width);
    // sign must not become negative across any bracket
    for (lo, hi) in &brackets {
        if p.sign_at(lo) < 0 || p.sign_at(hi) < 0 {
            return false;
        }
    }
    // sample every maximal root-free open subinterval
    let mut samples: Vec<Rat> = Vec::new();
    let mut prev = a.clone();
    for (lo, hi) in &brackets {
        if &prev < lo {
            samples.push((&prev + lo) / rat_int(2));
        }
        if hi > &prev {
            prev = hi.clone();
        }
    }
    if prev < *b {
        samples.push((&prev + b) / rat_int(2));
    }
    samples.iter().all(|x| p.sign_at(x) > 0)
}

/// Certified: p(x) > 0 for every x in [a, b].
pub fn pos_on_closed(p: &IntPoly, a: &Rat, b: &Rat) -> bool {
    assert!(a <= b);
    if p.is_zero() {
        return false;
    }
    if p.sign_at(a) <= 0 {
        return false;
    }
    if a == b {
        return true;
    }
    if p.sign_at(b) <= 0 {
        return false;
    }
    let chain = SturmChain::new(p);
    chain.count_roots_open(a, b) == 0
}

/// Refine a sign-change bracket [lo, hi] (p(lo)·p(hi) < 0) by bisection until
/// hi - lo <= width; returns a point bracket if an exact rational root is hit.
pub fn refine_sign_change(p: &IntPoly, mut lo: Rat, mut hi: Rat, width: &Rat) -> (Rat, Rat) {
    let slo = p.sign_at(&lo);
    let shi = p.sign_at(&hi);
    if slo == 0 {
        return (lo.clone(), lo);
    }
    if shi == 0 {
        return (hi.clone(), hi);
    }
    assert!(slo * shi < 0, "refine_sign_change requires a sign change");
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / rat_int(2);
        let sm = p.sign_at(&mid);
        if sm == 0 {
            return (mid.clone(), mid);
        }
        if sm == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_arith() {
        let p = IntPoly::from_desc(&[1, -1, -1]); // x^2 - x - 1
        assert_eq!(p.eval(&rat_int(2)), rat_int(1));
        assert_eq!(p.sign_at(&rat(3, 2)), -1);
        let q = p.mul(&IntPoly::from_desc(&[1, 1])); // (x^2-x-1)(x+1)
        assert_eq!(q, IntPoly::from_desc(&[1, 0, -2, -1]));
        assert_eq!(q.sub(&q), IntPoly::zero());
    }

    #[test]
    fn sturm_counts() {
        // x^2 - 2: roots ±√2
        let p = IntPoly::from_desc(&[1, 0, -2]);
        let chain = SturmChain::new(&p);
        assert_eq!(chain.count_roots_open(&rat_int(-2), &rat_int(2)), 2);
        assert_eq!(chain.count_roots_open(&rat_int(0), &rat_int(2)), 1);
        assert_eq!(chain.count_roots_open(&rat_int(2), &rat_int(3)), 0);
        // (x-1)^2 (x+3): distinct roots {1, -3}
        let q = IntPoly::from_desc(&[1, 1, -5, 3]);
        let chain = SturmChain::new(&q);
        assert_eq!(chain.count_roots_open(&rat_int(-4), &rat_int(2)), 2);
    }

    #[test]
    fn isolation_finds_golden_ratio() {
        let p = IntPoly::from_desc(&[1, -1, -1]);
        let roots = isolate_roots_in(&p, &rat_int(0), &rat_int(3), &rat(1, 1 << 20));
        assert_eq!(roots.len(), 1);
        let (lo, hi) = &roots[0];
        let phi_lo = rat(1618033, 1000000);
        let phi_hi = rat(1618034, 1000000);
        assert!(lo <= &phi_hi && hi >= &phi_lo);
    }

    #[test]
    fn isolation_handles_exact_and_endpoint_roots() {
        // (x-1)(x-2)
        let p = IntPoly::from_desc(&[1, -3, 2]);
        let roots = isolate_roots_in(&p, &rat_int(1), &rat_int(3), &rat(1, 1024));
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0], (rat_int(1), rat_int(1)));
        assert_eq!(roots[1], (rat_int(2), rat_int(2)));
    }

    #[test]
    fn sign_certificates() {
        // x^2 + 1 > 0 everywhere
        let p = IntPoly::from_desc(&[1, 0, 1]);
        assert!(pos_on_closed(&p, &rat_int(-5), &rat_int(5)));
        // (x-2)^2 >= 0 with a root inside
        let q = IntPoly::from_desc(&[1, -4, 4]);
        assert!(nonneg_on_closed(&q, &rat_int(1), &rat_int(3)));
        assert!(!pos_on_closed(&q, &rat_int(1), &rat_int(3)));
        // x - 2 changes sign on [1, 3]
        let r = IntPoly::from_desc(&[1, -2]);
        assert!(!nonneg_on_closed(&r, &rat_int(1), &rat_int(3)));
        assert!(nonneg_on_closed(&r, &rat_int(2), &rat_int(3)));
    }

    #[test]
    fn strip_factors() {
        // (x+1)(x^4 - 2x^3 - x^2 - 1), the feasibility-ceiling constraint shape
        let core = IntPoly::from_desc(&[1, -2, -1, 0, -1]);
        let p = core.mul(&IntPoly::from_desc(&[1, 1]));
        assert_eq!(p.strip_trivial_factors(), core);
        // x^2 (x - 3/2) style: 2x^3 - 3x^2
        let q = IntPoly::from_desc(&[2, -3, 0, 0]);
        assert_eq!(q.strip_trivial_factors(), IntPoly::from_desc(&[2, -3]));
    }

    #[test]
    fn squarefree() {
        let p = IntPoly::from_desc(&[1, -2, 1]); // (x-1)^2
        assert!(!p.is_squarefree());
        assert_eq!(p.squarefree_part(), IntPoly::from_desc(&[1, -1]));
        assert!(IntPoly::from_desc(&[1, -1, -1]).is_squarefree());
    }

    #[test]
    fn refine_bracket() {
        let p = IntPoly::from_desc(&[1, 0, -2]); // √2
        let (lo, hi) = refine_sign_change(&p, rat_int(1), rat_int(2), &rat(1, 1 << 30));
        assert!(&hi - &lo <= rat(1, 1 << 30));
        assert!(p.sign_at(&lo) < 0 && p.sign_at(&hi) > 0);
    }
}
