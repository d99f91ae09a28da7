//! Univariate polynomials over exact rationals: arithmetic, Sturm-sequence
//! root counting, and replayable sign certification on intervals.
//!
//! Root counting runs on an integer Sturm chain built with pseudo-remainders
//! (sign-corrected, content-reduced) so coefficient growth stays tame; the
//! public API stays purely rational.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::{Certificate, Fact, Step, Verdict};
use crate::interval::Interval;
use crate::rational::{rat_int, sign, Rational};

/// Error from polynomial root counting or sign certification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
}

/// Polynomial with rational coefficients, lowest degree first, no trailing
/// zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    #[serde(with = "crate::rational::serde_rational_vec")]
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Convenience constructor from machine integers, lowest degree first.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with 0 for constants and the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let d: Vec<Rational> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_int(i as i64))
            .collect();
        Self::new(d)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Exact division by (x - r); requires p(r) == 0.
    fn divide_by_linear_root(&self, r: &Rational) -> Self {
        debug_assert!(self.eval(r).is_zero());
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for i in (1..n).rev() {
            carry = &self.coeffs[i] + &carry * r;
            out[i - 1] = carry.clone();
        }
        Self::new(out)
    }
}

/// Integer polynomial, lowest degree first; internal to the Sturm chain.
#[derive(Debug, Clone)]
struct IPoly {
    c: Vec<BigInt>,
}

impl IPoly {
    fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Self { c }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.c.last().expect("lead of zero polynomial")
    }

    /// Divides out the (positive) content.
    fn content_normalized(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
        }
        if g.is_one() {
            return self;
        }
        Self {
            c: self.c.into_iter().map(|x| x / &g).collect(),
        }
    }

    fn negated(self) -> Self {
        Self {
            c: self.c.into_iter().map(|x| -x).collect(),
        }
    }

    /// Sign of the value at x = n/d via the homogenized integer Horner form
    /// (the denominator is positive, so signs are preserved).
    fn eval_sign(&self, x: &Rational) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let n = x.numer();
        let d = x.denom();
        let mut acc = self.c.last().unwrap().clone();
        let mut dp = BigInt::one();
        for c in self.c.iter().rev().skip(1) {
            dp *= d;
            acc = acc * n + c * &dp;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }
}

/// Clears denominators and reduces content, preserving sign.
fn to_primitive_integer(p: &Polynomial) -> IPoly {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.denom());
    }
    let c = p
        .coeffs()
        .iter()
        .map(|q| q.numer() * (&l / q.denom()))
        .collect();
    IPoly::new(c).content_normalized()
}

/// Pseudo-remainder of f by g, rescaled to be a positive multiple of the true
/// remainder, content-reduced.
fn signed_prem(f: &IPoly, g: &IPoly) -> IPoly {
    let dg = g.degree();
    let lg = g.lead().clone();
    let mut r = f.clone();
    let mut mults = 0usize;
    while !r.is_zero() && r.degree() >= dg {
        let dr = r.degree();
        let lr = r.lead().clone();
        let shift = dr - dg;
        let mut next = vec![BigInt::zero(); dr];
        for (i, x) in r.c.iter().enumerate().take(dr) {
            next[i] = x * &lg;
        }
        for (i, x) in g.c.iter().enumerate().take(dg) {
            next[i + shift] -= x * &lr;
        }
        r = IPoly::new(next);
        mults += 1;
    }
    if lg.is_negative() && mults % 2 == 1 {
        r = r.negated();
    }
    r.content_normalized()
}

/// Sturm chain of a nonzero primitive integer polynomial.
fn sturm_chain(p: &IPoly) -> Vec<IPoly> {
    let mut chain = vec![p.clone()];
    if p.degree() == 0 {
        return chain;
    }
    let d: Vec<BigInt> = p
        .c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    chain.push(IPoly::new(d).content_normalized());
    loop {
        let n = chain.len();
        if chain[n - 1].degree() == 0 {
            break;
        }
        let r = signed_prem(&chain[n - 2], &chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.negated());
    }
    chain
}

fn sign_variations(chain: &[IPoly], x: &Rational) -> usize {
    let mut count = 0;
    let mut prev = 0i8;
    for q in chain {
        let s = q.eval_sign(x);
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

/// Number of distinct roots of q in the open interval (lo, hi); requires
/// q(lo) != 0 and q(hi) != 0.
fn open_root_count(chain: &[IPoly], lo: &Rational, hi: &Rational) -> usize {
    let va = sign_variations(chain, lo);
    let vb = sign_variations(chain, hi);
    assert!(va >= vb, "Sturm variation count decreased backwards");
    va - vb
}

/// Deflates roots of p at the two endpoint values; interior roots unchanged.
fn deflate_at_endpoints(p: &Polynomial, lo: &Rational, hi: &Rational) -> Polynomial {
    let mut q = p.clone();
    while !q.is_zero() && q.eval(lo).is_zero() {
        q = q.divide_by_linear_root(lo);
    }
    while !q.is_zero() && q.eval(hi).is_zero() {
        q = q.divide_by_linear_root(hi);
    }
    q
}

/// Counts distinct real roots of p inside iv; endpoint roots are counted
/// exactly when the corresponding endpoint is closed.
pub fn sturm_root_count(p: &Polynomial, iv: &Interval) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if iv.is_point() {
        return Ok(usize::from(p.eval(iv.lo()).is_zero()));
    }
    let lo = iv.lo();
    let hi = iv.hi();
    let lo_root = p.eval(lo).is_zero();
    let hi_root = p.eval(hi).is_zero();
    let q = deflate_at_endpoints(p, lo, hi);
    let interior = if q.degree() == 0 {
        0
    } else {
        let chain = sturm_chain(&to_primitive_integer(&q));
        open_root_count(&chain, lo, hi)
    };
    Ok(interior
        + usize::from(!iv.lo_open() && lo_root)
        + usize::from(!iv.hi_open() && hi_root))
}

/// Pointwise sign condition a polynomial must satisfy on an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignRequirement {
    NonNegative,
    NonPositive,
    Positive,
    Negative,
}

impl SignRequirement {
    pub fn is_strict(self) -> bool {
        matches!(self, Self::Positive | Self::Negative)
    }

    /// Whether a pointwise sign value satisfies the requirement.
    pub fn admits(self, s: i8) -> bool {
        match self {
            Self::NonNegative => s >= 0,
            Self::NonPositive => s <= 0,
            Self::Positive => s > 0,
            Self::Negative => s < 0,
        }
    }

    /// The sign every point off the roots must carry.
    fn strict_sign(self) -> i8 {
        match self {
            Self::NonNegative | Self::Positive => 1,
            Self::NonPositive | Self::Negative => -1,
        }
    }
}

/// First split candidate inside (a, b) that is not a root of q.
fn non_root_split(q: &Polynomial, a: &Rational, b: &Rational) -> Rational {
    let span = b - a;
    let slots = rat_int(q.degree() as i64 + 2);
    for j in 1..=(q.degree() + 1) {
        let c = a + &span * rat_int(j as i64) / &slots;
        if !q.eval(&c).is_zero() {
            return c;
        }
    }
    unreachable!("more roots than the polynomial degree allows");
}

/// Sample points t_0 < ... < t_r interleaving the r distinct roots of q in
/// (lo, hi): one sample inside every maximal root-free zone. Requires
/// q(lo) != 0, q(hi) != 0 and r >= 1.
fn interleaving_samples(q: &Polynomial, lo: &Rational, hi: &Rational, r: usize) -> Vec<Rational> {
    let chain = sturm_chain(&to_primitive_integer(q));
    let count = |a: &Rational, b: &Rational| open_root_count(&chain, a, b);
    let mut work = vec![(lo.clone(), hi.clone(), r)];
    let mut isolated: Vec<(Rational, Rational)> = Vec::new();
    while let Some((a, b, m)) = work.pop() {
        if m == 0 {
            continue;
        }
        if m == 1 {
            isolated.push((a, b));
            continue;
        }
        let c = non_root_split(q, &a, &b);
        let ml = count(&a, &c);
        work.push((a, c.clone(), ml));
        work.push((c, b, m - ml));
    }
    isolated.sort_by(|x, y| x.0.cmp(&y.0));
    let two = rat_int(2);
    // A point strictly between `edge` and the single root inside (a, b),
    // approached from `edge`'s side.
    let squeeze = |edge: &Rational, inner: &Rational| -> Rational {
        let mut t = (edge + inner) / &two;
        loop {
            if !q.eval(&t).is_zero() {
                let zone = if edge < &t { count(edge, &t) } else { count(&t, edge) };
                if zone == 0 {
                    return t;
                }
            }
            t = (edge + &t) / &two;
        }
    };
    let mut out = Vec::with_capacity(r + 1);
    let first = &isolated[0];
    if &first.0 == lo {
        out.push(squeeze(lo, &first.1));
    } else {
        out.push(first.0.clone());
    }
    for pair in isolated.iter().take(r - 1) {
        out.push(pair.1.clone());
    }
    let last = &isolated[r - 1];
    if &last.1 == hi {
        out.push(squeeze(hi, &last.0));
    } else {
        out.push(last.1.clone());
    }
    out
}

pub(crate) const SIGN_CERT_KIND: &str = "sign_on_interval";

#[derive(Serialize, Deserialize)]
struct SignInputs {
    poly: Polynomial,
    interval: Interval,
    required: SignRequirement,
}

/// Certifies that p satisfies the required sign condition at every point of
/// iv. The certificate passes exactly when the condition holds; its steps
/// record sample signs and Sturm root counts that replay verifies.
pub fn certify_sign_on_interval(
    p: &Polynomial,
    iv: &Interval,
    required: SignRequirement,
) -> Result<Certificate, PolyError> {
    let inputs = serde_json::to_value(SignInputs {
        poly: p.clone(),
        interval: iv.clone(),
        required,
    })
    .expect("sign inputs serialize");
    let mut steps: Vec<Step> = Vec::new();
    let push = |steps: &mut Vec<Step>, name: &str, fact: Fact, ok: bool| {
        steps.push(Step {
            name: name.to_string(),
            fact,
            ok,
        });
    };

    if p.is_zero() {
        if required.is_strict() {
            return Err(PolyError::ZeroPolynomial);
        }
        push(
            &mut steps,
            "identically_zero",
            Fact::PolyIsZero { poly: p.clone() },
            true,
        );
        return Ok(Certificate::new(SIGN_CERT_KIND, inputs, steps, Verdict::Pass));
    }

    if iv.is_point() {
        let s = sign(&p.eval(iv.lo()));
        let ok = required.admits(s);
        push(
            &mut steps,
            "point_sample",
            Fact::PolySign {
                poly: p.clone(),
                at: iv.lo().clone(),
                sign: s,
            },
            ok,
        );
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        return Ok(Certificate::new(SIGN_CERT_KIND, inputs, steps, verdict));
    }

    let lo = iv.lo();
    let hi = iv.hi();
    let interior = Interval::open(lo.clone(), hi.clone()).expect("non-point interval");
    let r = sturm_root_count(p, &interior)?;
    let want = required.strict_sign();

    if required.is_strict() || r == 0 {
        push(
            &mut steps,
            "interior_root_count",
            Fact::RootCount {
                poly: p.clone(),
                interval: interior,
                count: r as u64,
            },
            !required.is_strict() || r == 0,
        );
        if r == 0 {
            let mid = iv.midpoint();
            let s = sign(&p.eval(&mid));
            push(
                &mut steps,
                "interior_sample",
                Fact::PolySign {
                    poly: p.clone(),
                    at: mid,
                    sign: s,
                },
                s == want,
            );
        }
    } else {
        // Non-strict requirement with interior roots: one sample per maximal
        // root-free zone; the roots themselves satisfy the requirement.
        push(
            &mut steps,
            "interior_root_count",
            Fact::RootCount {
                poly: p.clone(),
                interval: interior,
                count: r as u64,
            },
            true,
        );
        let q = deflate_at_endpoints(p, lo, hi);
        let samples = interleaving_samples(&q, lo, hi, r);
        let mut fence = vec![lo.clone()];
        fence.extend(samples.iter().cloned());
        fence.push(hi.clone());
        for w in fence.windows(2) {
            let zone = Interval::open(w[0].clone(), w[1].clone()).expect("ordered fence");
            let c = sturm_root_count(p, &zone)?;
            push(
                &mut steps,
                "zone_root_count",
                Fact::RootCount {
                    poly: p.clone(),
                    interval: zone,
                    count: c as u64,
                },
                c <= 1,
            );
        }
        for t in &samples {
            let s = sign(&p.eval(t));
            push(
                &mut steps,
                "zone_sample",
                Fact::PolySign {
                    poly: p.clone(),
                    at: t.clone(),
                    sign: s,
                },
                s == want,
            );
        }
    }

    if !iv.lo_open() {
        let s = sign(&p.eval(lo));
        push(
            &mut steps,
            "lower_endpoint",
            Fact::PolySign {
                poly: p.clone(),
                at: lo.clone(),
                sign: s,
            },
            required.admits(s),
        );
    }
    if !iv.hi_open() {
        let s = sign(&p.eval(hi));
        push(
            &mut steps,
            "upper_endpoint",
            Fact::PolySign {
                poly: p.clone(),
                at: hi.clone(),
                sign: s,
            },
            required.admits(s),
        );
    }

    let verdict = if steps.iter().all(|s| s.ok) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(Certificate::new(SIGN_CERT_KIND, inputs, steps, verdict))
}

/// Deterministic rebuild used by certificate replay.
pub(crate) fn rebuild_sign_certificate(
    inputs: &serde_json::Value,
) -> Result<Certificate, String> {
    let parsed: SignInputs =
        serde_json::from_value(inputs.clone()).map_err(|e| e.to_string())?;
    certify_sign_on_interval(&parsed.poly, &parsed.interval, parsed.required)
        .map_err(|e| e.to_string())
}
