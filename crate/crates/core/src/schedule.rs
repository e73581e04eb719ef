//! The constant schedule of the upper-bound argument, kept symbolically as
//! monomials `2^α t^β`, and an exact checker for the inequalities it must
//! satisfy.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Starting precision (bits of `log₂ t`) for mixed-sign comparisons.
const START_PRECISION: u64 = 64;
/// Precision at which a comparison gives up and reports `Undecided`.
pub const MAX_PRECISION: u64 = 1 << 15;

/// `2^α · t^β` for a fixed integer `t ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LogMonomial {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub t: u64,
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

impl LogMonomial {
    pub fn new(alpha: BigRational, beta: BigRational, t: u64) -> Self {
        assert!(t >= 2, "monomials need t >= 2");
        LogMonomial { alpha, beta, t }
    }

    pub fn from_ints(alpha: i64, beta: i64, t: u64) -> Self {
        Self::new(rat(alpha), rat(beta), t)
    }

    pub fn one(t: u64) -> Self {
        Self::from_ints(0, 0, t)
    }

    pub fn two_pow(alpha: i64, t: u64) -> Self {
        Self::from_ints(alpha, 0, t)
    }

    pub fn t_pow(beta: impl Into<BigInt>, t: u64) -> Self {
        Self::new(BigRational::zero(), rat(beta), t)
    }

    fn same_t(&self, other: &Self) {
        assert_eq!(self.t, other.t, "monomials over different t");
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_t(other);
        LogMonomial::new(&self.alpha + &other.alpha, &self.beta + &other.beta, self.t)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.same_t(other);
        LogMonomial::new(&self.alpha - &other.alpha, &self.beta - &other.beta, self.t)
    }

    pub fn recip(&self) -> Self {
        LogMonomial::new(-&self.alpha, -&self.beta, self.t)
    }

    pub fn pow(&self, e: &BigRational) -> Self {
        LogMonomial::new(&self.alpha * e, &self.beta * e, self.t)
    }

    pub fn pow_int(&self, e: impl Into<BigInt>) -> Self {
        self.pow(&rat(e))
    }

    pub fn sqrt(&self) -> Self {
        self.pow(&BigRational::new(1.into(), 2.into()))
    }

    /// Exact value when both exponents are integers and small enough.
    pub fn to_rational(&self) -> Option<BigRational> {
        if !self.alpha.is_integer() || !self.beta.is_integer() {
            return None;
        }
        let a = self.alpha.to_integer().to_i32()?;
        let b = self.beta.to_integer().to_i32()?;
        if a.unsigned_abs() > 1 << 16 || b.unsigned_abs() > 1 << 12 {
            return None;
        }
        let two = rat(2);
        let t = rat(self.t);
        Some(num_traits::Pow::pow(&two, a) * num_traits::Pow::pow(&t, b))
    }
}

impl fmt::Display for LogMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^({}) * t^({})", self.alpha, self.beta)
    }
}

/// Outcome of comparing two monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    /// The `log₂ t` enclosure hit [`MAX_PRECISION`] without separating.
    Undecided,
}

impl Comparison {
    pub fn ordering(self) -> Option<Ordering> {
        match self {
            Comparison::Less => Some(Ordering::Less),
            Comparison::Equal => Some(Ordering::Equal),
            Comparison::Greater => Some(Ordering::Greater),
            Comparison::Undecided => None,
        }
    }

    fn from_sign(x: &BigRational) -> Self {
        match x.cmp(&BigRational::zero()) {
            Ordering::Less => Comparison::Less,
            Ordering::Equal => Comparison::Equal,
            Ordering::Greater => Comparison::Greater,
        }
    }
}

/// `(lo, hi)` with `lo ≤ log₂ t ≤ hi` and `hi - lo ≤ 2^{2-p}`.
///
/// Squares `t` `p` times while keeping `p + 64`-bit mantissas rounded down
/// (lower chain) and up (upper chain); then `2^p log₂ t` lies between the bit
/// lengths of the two results.
pub fn log2_enclosure(t: &BigUint, p: u64) -> (BigRational, BigRational) {
    let prec = p + 64;
    let (mut lo, mut lo_e) = (t.clone(), BigUint::zero());
    let (mut hi, mut hi_e) = (t.clone(), BigUint::zero());
    for _ in 0..p {
        lo = &lo * &lo;
        lo_e <<= 1;
        let bits = lo.bits();
        if bits > prec {
            let shift = bits - prec;
            lo >>= shift;
            lo_e += shift;
        }
        hi = &hi * &hi;
        hi_e <<= 1;
        let bits = hi.bits();
        if bits > prec {
            let shift = bits - prec;
            let dropped = !(&hi & ((BigUint::one() << shift) - 1u32)).is_zero();
            hi >>= shift;
            if dropped {
                hi += 1u32;
            }
            hi_e += shift;
        }
    }
    let scale = BigInt::one() << p;
    let l = BigRational::new(BigInt::from(lo_e + (lo.bits() - 1)), scale.clone());
    let h = BigRational::new(BigInt::from(hi_e + hi.bits()), scale);
    (l, h)
}

fn power_of_two_exponent(t: u64) -> Option<u32> {
    t.is_power_of_two().then(|| t.trailing_zeros())
}

/// Decides `a` against `b`.
pub fn compare(a: &LogMonomial, b: &LogMonomial) -> Comparison {
    compare_to_precision(a, b, MAX_PRECISION)
}

pub fn compare_to_precision(a: &LogMonomial, b: &LogMonomial, max_precision: u64) -> Comparison {
    a.same_t(b);
    let da = &a.alpha - &b.alpha;
    let db = &a.beta - &b.beta;
    if db.is_zero() {
        return Comparison::from_sign(&da);
    }
    if da.is_zero() {
        // log₂ t > 0
        return Comparison::from_sign(&db);
    }
    if da.is_positive() == db.is_positive() {
        return Comparison::from_sign(&da);
    }
    if let Some(s) = power_of_two_exponent(a.t) {
        return Comparison::from_sign(&(da + db * rat(s)));
    }
    // log₂ t is irrational, so the sign of da + db·log₂ t is never zero
    let t = BigUint::from(a.t);
    let mut p = START_PRECISION;
    while p <= max_precision {
        let (lo, hi) = log2_enclosure(&t, p);
        let (x, y) = (&da + &db * &lo, &da + &db * &hi);
        let (min, max) = if x <= y { (x, y) } else { (y, x) };
        if min.is_positive() {
            return Comparison::Greater;
        }
        if max.is_negative() {
            return Comparison::Less;
        }
        p *= 2;
    }
    Comparison::Undecided
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    General,
    K2Special,
    K3Special,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(Variant::General),
            "k2-special" => Ok(Variant::K2Special),
            "k3-special" => Ok(Variant::K3Special),
            other => Err(Error::InvalidParameter(format!("unknown schedule variant `{other}`"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::General => "general",
            Variant::K2Special => "k2-special",
            Variant::K3Special => "k3-special",
        })
    }
}

/// The constants `c, δ_0, …, δ_{k-1}, m_2, …, m_{k-1}, n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub k: usize,
    pub t: u64,
    pub variant: Variant,
    pub c: LogMonomial,
    /// `delta[j] = δ_j`.
    pub delta: Vec<LogMonomial>,
    /// `m[j] = m_j` for `2 ≤ j ≤ k-1`; lower entries are unused.
    pub m: Vec<Option<LogMonomial>>,
    pub n: LogMonomial,
}

impl Schedule {
    pub fn delta(&self, j: usize) -> &LogMonomial {
        &self.delta[j]
    }

    pub fn m(&self, j: usize) -> &LogMonomial {
        self.m[j].as_ref().expect("m_j is defined for 2 <= j <= k-1")
    }
}

pub fn build_schedule(k: usize, t: u64, variant: Variant) -> Result<Schedule> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("schedules need k >= 2, got {k}")));
    }
    if t < 2 {
        return Err(Error::InvalidParameter(format!("schedules need t >= 2, got {t}")));
    }
    match (variant, k) {
        (Variant::K2Special, k) if k != 2 => {
            return Err(Error::InvalidParameter("k2-special needs k = 2".into()))
        }
        (Variant::K3Special, k) if k != 3 => {
            return Err(Error::InvalidParameter("k3-special needs k = 3".into()))
        }
        _ => {}
    }
    let c = LogMonomial::two_pow(-(2 * k as i64 + 1), t);
    let tb = BigInt::from(t);
    let tk = tb.pow(k as u32);
    let mut m = vec![None; k];
    let (delta, n) = match variant {
        Variant::General => {
            let base = c.div(&LogMonomial::t_pow(k, t));
            let step = BigInt::from(2 * k) * &tk;
            let mut delta = vec![LogMonomial::one(t); k];
            for j in 2..k {
                delta[j] = base.pow_int(step.pow((k - 1 - j) as u32));
                m[j] = Some(delta[j].recip().pow_int(tk.clone()));
            }
            let low = base.pow_int(step.pow((k - 2) as u32));
            delta[0] = low.clone();
            delta[1] = low;
            (delta, LogMonomial::t_pow(tb.pow((k * k) as u32), t))
        }
        Variant::K2Special => {
            let d = LogMonomial::from_ints(-6, -3, t);
            (vec![d.clone(), d], LogMonomial::t_pow(3 * (&tb + 1), t))
        }
        Variant::K3Special => {
            let low = LogMonomial::new(rat(-10), rat(-29 * &tb), t);
            m[2] = Some(LogMonomial::t_pow(7 * &tb, t));
            let top = LogMonomial::from_ints(-7, -3, t);
            (vec![low.clone(), low, top], LogMonomial::t_pow(30 * tb.pow(3), t))
        }
    };
    Ok(Schedule { k, t, variant, c, delta, m, n })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "=",
        }
    }

    fn accepts(self, o: Ordering) -> bool {
        match self {
            Relation::Ge => o != Ordering::Less,
            Relation::Gt => o == Ordering::Greater,
            Relation::Le => o != Ordering::Greater,
            Relation::Lt => o == Ordering::Less,
            Relation::Eq => o == Ordering::Equal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    Undecided,
}

/// One side of a checked relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Monomial(LogMonomial),
    Integer(BigInt),
}

impl Side {
    fn to_json(&self) -> Value {
        match self {
            Side::Monomial(m) => json!({"alpha": m.alpha.to_string(), "beta": m.beta.to_string()}),
            Side::Integer(n) => json!({"integer": n.to_string()}),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Monomial(m) => write!(f, "({}, {})", m.alpha, m.beta),
            Side::Integer(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub name: String,
    pub lhs: Side,
    pub relation: Relation,
    pub rhs: Side,
    pub verdict: Verdict,
}

fn decide(lhs: &Side, relation: Relation, rhs: &Side) -> Verdict {
    let ord = match (lhs, rhs) {
        (Side::Monomial(a), Side::Monomial(b)) => compare(a, b).ordering(),
        (Side::Integer(a), Side::Integer(b)) => Some(a.cmp(b)),
        _ => unreachable!("mixed sides are never built"),
    };
    match ord {
        None => Verdict::Undecided,
        Some(o) if relation.accepts(o) => Verdict::Holds,
        Some(_) => Verdict::Fails,
    }
}

/// Verdicts for every inequality the argument needs, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityReport {
    pub k: usize,
    pub t: u64,
    pub variant: Variant,
    pub entries: Vec<Inequality>,
}

impl InequalityReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.verdict == Verdict::Holds)
    }

    pub fn get(&self, name: &str) -> Option<&Inequality> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Inequality> {
        self.entries.iter().filter(|e| e.verdict != Verdict::Holds)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("phc 1 schedule\nk {} t {} variant {}\n", self.k, self.t, self.variant);
        for e in &self.entries {
            let v = match e.verdict {
                Verdict::Holds => "holds",
                Verdict::Fails => "fails",
                Verdict::Undecided => "undecided",
            };
            out.push_str(&format!("{} {} {} {} : {}\n", e.name, e.lhs, e.relation.symbol(), e.rhs, v));
        }
        out.push_str(&format!("all {}\n", if self.all_hold() { "holds" } else { "fails" }));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "t": self.t,
            "variant": self.variant,
            "all_hold": self.all_hold(),
            "inequalities": self.entries.iter().map(|e| json!({
                "name": e.name,
                "lhs": e.lhs.to_json(),
                "relation": e.relation,
                "rhs": e.rhs.to_json(),
                "verdict": e.verdict,
            })).collect::<Vec<_>>(),
        })
    }
}

struct Checker {
    entries: Vec<Inequality>,
    stop_on_failure: bool,
}

impl Checker {
    /// Records a relation; returns false once a failure should stop the scan.
    fn check(&mut self, name: impl Into<String>, lhs: Side, relation: Relation, rhs: Side) -> bool {
        let verdict = decide(&lhs, relation, &rhs);
        self.entries.push(Inequality { name: name.into(), lhs, relation, rhs, verdict });
        !(self.stop_on_failure && verdict != Verdict::Holds)
    }

    fn mono(&mut self, name: impl Into<String>, lhs: LogMonomial, r: Relation, rhs: LogMonomial) -> bool {
        self.check(name, Side::Monomial(lhs), r, Side::Monomial(rhs))
    }
}

/// Evaluates every inequality for `s`.
///
/// Names: `mono_extraction` (the level-0 counting step), `star1_*` (the
/// level-1 counting steps), `star_j_*[j]` (the counting steps for `j ≥ 2`),
/// `top_level_delta` and `rainbow_box_hypothesis[j]` (the bounded case),
/// `dense_rainbow_*` (the dense sampler at level `j⋆`), and `chain:*` (the
/// ordering of the constants).
pub fn verify_inequalities(s: &Schedule) -> InequalityReport {
    let mut ch = Checker { entries: Vec::new(), stop_on_failure: false };
    run_checks(s, &mut ch);
    InequalityReport { k: s.k, t: s.t, variant: s.variant, entries: ch.entries }
}

fn run_checks(s: &Schedule, ch: &mut Checker) -> bool {
    let (k, t) = (s.k, s.t);
    let mono = |a: i64, b: i64| LogMonomial::from_ints(a, b, t);
    let two_t = mono(1, 1);
    let four_pow = mono(2 * (k as i64 - 1), 0);
    let tb = BigInt::from(t);
    let t_pow = |e: usize| tb.pow(e as u32);
    use Relation::*;

    // ordering chain
    let kk = BigInt::from(k);
    let inv_c = s.c.recip();
    let ok = ch.check("chain:2<=k", Side::Integer(2.into()), Le, Side::Integer(kk.clone()))
        && ch.check("chain:k<1/c", Side::Integer(kk), Lt, Side::Integer(BigInt::one() << (2 * k + 1)))
        && ch.mono("chain:1/c<t", inv_c, Lt, mono(0, 1))
        && ch.mono("chain:t<1/delta_{k-1}", mono(0, 1), Lt, s.delta(k - 1).recip());
    if !ok {
        return false;
    }
    for j in (2..k).rev() {
        if !ch.mono(format!("chain:1/delta_{j}<m_{j}"), s.delta(j).recip(), Lt, s.m(j).clone()) {
            return false;
        }
        let next = s.delta(j - 1).recip();
        if !ch.mono(format!("chain:m_{j}<1/delta_{}", j - 1), s.m(j).clone(), Lt, next) {
            return false;
        }
    }
    let ok = ch.mono("chain:1/delta_1=1/delta_0", s.delta(1).recip(), Eq, s.delta(0).recip())
        && ch.mono("chain:1/delta_0<n", s.delta(0).recip(), Lt, s.n.clone());
    if !ok {
        return false;
    }

    // counting steps
    let e_k1 = t_pow(k - 1);
    let lhs0 = s.delta(0).div(&four_pow).pow_int(e_k1.clone()).mul(&s.n);
    if !ch.mono("mono_extraction", lhs0, Ge, two_t.clone()) {
        return false;
    }
    let d1 = s.delta(1).div(&four_pow);
    let lhs1a = d1.mul(&s.delta(1).mul(&s.n).sqrt());
    let lhs1b = d1.pow_int(e_k1.clone()).mul(&s.n);
    let ok = ch.mono("star1_first_class", lhs1a, Ge, two_t.clone())
        && ch.mono("star1_other_classes", lhs1b, Ge, two_t.clone());
    if !ok {
        return false;
    }
    for j in 2..k {
        let dj = s.delta(j).pow_int(2).div(&mono(1, 0)).div(&four_pow);
        let a = dj.pow_int(t_pow(j - 1)).mul(s.m(j));
        let b = dj.pow_int(e_k1.clone()).mul(&s.n);
        let ok = ch.mono(format!("star_j_rainbow_classes[{j}]"), a, Ge, two_t.clone())
            && ch.mono(format!("star_j_outer_classes[{j}]"), b, Ge, two_t.clone());
        if !ok {
            return false;
        }
    }

    // bounded case
    let top_target = mono(-(2 * k as i64 + 1), -(k as i64));
    if !ch.mono("top_level_delta", s.delta(k - 1).clone(), Eq, top_target) {
        return false;
    }
    for j in 0..=k - 2 {
        let bound = mono(-(3 * k as i64 - j as i64), -(2 * k as i64 - j as i64 - 1));
        let ok = ch.mono(format!("rainbow_box_hypothesis[{j}]:delta_j<=delta_{{k-2}}"), s.delta(j).clone(), Le, s.delta(k - 2).clone())
            && ch.mono(format!("rainbow_box_hypothesis[{j}]:delta_{{k-2}}<=bound"), s.delta(k - 2).clone(), Le, bound);
        if !ok {
            return false;
        }
    }

    // dense sampler at level j⋆
    for js in 2..k {
        let mj = s.m(js);
        if !ch.mono(format!("dense_rainbow_size[{js}]"), s.delta(js).mul(mj), Gt, mono(js as i64 + 3, 0)) {
            return false;
        }
        for j in 0..js {
            let lhs = s.delta(j).div(s.delta(js));
            let rhs = mj.pow_int(2 * js - j).mul(&mono(js as i64 + 1, 0)).recip();
            if !ch.mono(format!("dense_rainbow_delta[{j},{js}]"), lhs, Lt, rhs) {
                return false;
            }
        }
    }
    true
}

/// True iff every inequality holds; stops at the first failure.
pub fn schedule_valid(s: &Schedule) -> bool {
    let mut ch = Checker { entries: Vec::new(), stop_on_failure: true };
    run_checks(s, &mut ch)
}

/// Smallest `t ≤ t_max` whose schedule passes every check.
///
/// The chain needs `t > 2^{2k+1}`, so smaller `t` are skipped.
pub fn minimal_valid_t(k: usize, variant: Variant, t_max: u64) -> Result<Option<u64>> {
    build_schedule(k, 2, variant)?;
    let start = if 2 * k + 1 < 63 { (1u64 << (2 * k + 1)) + 1 } else { return Ok(None) };
    for t in start.max(2)..=t_max {
        if schedule_valid(&build_schedule(k, t, variant)?) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// `m_j = (1/δ_j)^{t^k}` exactly, for the general schedule.
pub fn m_identity_holds(s: &Schedule) -> bool {
    let tk = BigInt::from(s.t).pow(s.k as u32);
    (2..s.k).all(|j| *s.m(j) == s.delta(j).recip().pow_int(tk.clone()))
}

/// `⌈log₂⌉`-style helper used by examples: a readable size of a monomial.
pub fn approx_log2(m: &LogMonomial) -> f64 {
    let a = m.alpha.to_f64().unwrap_or(f64::NAN);
    let b = m.beta.to_f64().unwrap_or(f64::NAN);
    a + b * (m.t as f64).log2()
}
