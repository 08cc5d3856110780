//! Catalog of arithmetic functions with sieved and pointwise evaluation.
//!
//! Each catalog member carries growth metadata `(alpha, theta)` used for
//! error envelopes and series-tail bounds, and, where the function is a
//! Dirichlet convolution `f = 1 * g` with a usefully small `g`, the g-side
//! parameters of `sum_{d<=x} |g(d)|`.
//!
//! One reading note: the catalog's totient entry is `phi(n)/n`, not
//! `phi(n)` itself. The constant `C_f = sum f(n)/(n(n+1))` diverges for
//! `f = phi` (the terms are of size 1/n), while `phi(n)/n` has `alpha = 0`
//! on the g-side and reproduces the classical `O(x^{1/3} log x)` behavior,
//! so the normalized form is the one every downstream module uses.

use crate::error::{Error, Result};
use crate::value::{
    format_rational, rat, CompensatedSum, Rational, RationalAccumulator, Value,
};
use num::{BigInt, One as NumOne, ToPrimitive, Zero};
use std::fmt;
use std::sync::OnceLock;

/// Largest table the sieve will allocate (entries).
pub const TABLE_ENTRY_CAP: u64 = 100_000_000;
/// Largest argument `eval_point` will factor by trial division.
pub const POINT_EVAL_CAP: u64 = 1_000_000_000_000;

/// Identity of a catalog function.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionId {
    /// f(n) = 1
    One,
    /// f(n) = n (catalogued for the divisor-problem connection; rejected by
    /// operations that need alpha < 1)
    Id,
    /// Number-of-divisors function
    Tau,
    /// phi(n)/n
    PhiOverN,
    /// sigma_beta(n)/n^beta for beta in (0, 1]
    SigmaBetaNorm(Rational),
    /// von Mangoldt function
    Lambda,
    /// Indicator of squarefree numbers
    Squarefree,
    /// Indicator of k-free numbers, k >= 2
    KFree(u32),
    /// Moebius function
    Mobius,
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionId::One => write!(f, "one"),
            FunctionId::Id => write!(f, "id"),
            FunctionId::Tau => write!(f, "tau"),
            FunctionId::PhiOverN => write!(f, "phi_over_n"),
            FunctionId::SigmaBetaNorm(b) => write!(f, "sigma_beta({})", format_rational(b)),
            FunctionId::Lambda => write!(f, "lambda"),
            FunctionId::Squarefree => write!(f, "squarefree"),
            FunctionId::KFree(k) => write!(f, "kfree({k})"),
            FunctionId::Mobius => write!(f, "mobius"),
        }
    }
}

/// How values of a function are represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueKind {
    Integer,
    ExactRational,
    Real,
}

/// Parameters of the Dirichlet g-side (`f = 1 * g`): a recorded bound
/// `sum_{d<=x} |g(d)| <= C x^alpha_g (log(x+2))^theta_g`.
#[derive(Debug, Clone, PartialEq)]
pub struct GSide {
    pub alpha_g: Rational,
    pub theta_g: Rational,
    /// Recorded constant C, checked by the invariant suite on a fixed grid.
    pub bound_constant: f64,
}

/// A catalog arithmetic function plus its growth metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct ArithmeticFunction {
    id: FunctionId,
    alpha: Rational,
    theta: Rational,
    /// Recorded constant K in the series-tail bound K N^{alpha-1} (log N)^theta.
    growth_constant: f64,
    value_kind: ValueKind,
    g_side: Option<GSide>,
}

impl fmt::Display for ArithmeticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)
    }
}

impl ArithmeticFunction {
    pub fn one() -> Self {
        ArithmeticFunction {
            id: FunctionId::One,
            alpha: rat(0, 1),
            theta: rat(0, 1),
            growth_constant: 1.0,
            value_kind: ValueKind::Integer,
            g_side: Some(GSide {
                alpha_g: rat(0, 1),
                theta_g: rat(0, 1),
                bound_constant: 1.0,
            }),
        }
    }

    pub fn id_fn() -> Self {
        ArithmeticFunction {
            id: FunctionId::Id,
            alpha: rat(1, 1),
            theta: rat(0, 1),
            growth_constant: 1.0,
            value_kind: ValueKind::Integer,
            g_side: None,
        }
    }

    /// Divisor function. `alpha = 0, theta = 1` are average-order
    /// parameters (the mean of tau up to N is ~ log N); they are what the
    /// tail bound of `compute_cf` and the baseline error envelope use.
    pub fn tau() -> Self {
        ArithmeticFunction {
            id: FunctionId::Tau,
            alpha: rat(0, 1),
            theta: rat(1, 1),
            growth_constant: 2.0,
            value_kind: ValueKind::Integer,
            g_side: None,
        }
    }

    pub fn phi_over_n() -> Self {
        ArithmeticFunction {
            id: FunctionId::PhiOverN,
            alpha: rat(0, 1),
            theta: rat(0, 1),
            growth_constant: 1.0,
            value_kind: ValueKind::ExactRational,
            g_side: Some(GSide {
                // g(d) = mu(d)/d; sum of |g| grows like (6/pi^2) log x.
                alpha_g: rat(0, 1),
                theta_g: rat(1, 1),
                bound_constant: 1.25,
            }),
        }
    }

    /// `sigma_beta(n)/n^beta` for rational `beta` in (0, 1].
    ///
    /// Values are exact rationals only for `beta = 1` (where the function is
    /// `sigma(n)/n`); for other beta the divisor powers `d^{-beta}` are
    /// irrational and the value kind is `Real`.
    pub fn sigma_beta_norm(beta: Rational) -> Result<Self> {
        if beta <= Rational::zero() || beta > Rational::one() {
            return Err(Error::Parameter(format!(
                "sigma_beta requires beta in (0, 1], got {}",
                format_rational(&beta)
            )));
        }
        let beta_f = crate::value::rational_to_f64(&beta);
        let is_unit = beta.is_one();
        let g_side = if is_unit {
            GSide {
                alpha_g: rat(0, 1),
                theta_g: rat(1, 1),
                bound_constant: 1.3,
            }
        } else {
            GSide {
                alpha_g: Rational::one() - beta.clone(),
                theta_g: rat(0, 1),
                bound_constant: 1.0 / (1.0 - beta_f),
            }
        };
        Ok(ArithmeticFunction {
            id: FunctionId::SigmaBetaNorm(beta),
            alpha: rat(0, 1),
            theta: rat(0, 1),
            // mean value is zeta(1 + beta) <= 1/beta + 0.6
            growth_constant: 1.0 + 1.0 / beta_f,
            value_kind: if is_unit {
                ValueKind::ExactRational
            } else {
                ValueKind::Real
            },
            g_side: Some(g_side),
        })
    }

    pub fn lambda() -> Self {
        ArithmeticFunction {
            id: FunctionId::Lambda,
            alpha: rat(0, 1),
            theta: rat(1, 1),
            growth_constant: 2.0,
            value_kind: ValueKind::Real,
            g_side: None,
        }
    }

    pub fn squarefree() -> Self {
        ArithmeticFunction {
            id: FunctionId::Squarefree,
            alpha: rat(0, 1),
            theta: rat(0, 1),
            growth_constant: 1.0,
            value_kind: ValueKind::Integer,
            g_side: Some(GSide {
                // g is supported on squares: sum |g| counts squarefree l <= sqrt(x).
                alpha_g: rat(1, 2),
                theta_g: rat(0, 1),
                bound_constant: 1.0,
            }),
        }
    }

    pub fn k_free(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::Parameter(format!("k-free requires k >= 2, got {k}")));
        }
        Ok(ArithmeticFunction {
            id: FunctionId::KFree(k),
            alpha: rat(0, 1),
            theta: rat(0, 1),
            growth_constant: 1.0,
            value_kind: ValueKind::Integer,
            g_side: Some(GSide {
                alpha_g: rat(1, k as i64),
                theta_g: rat(0, 1),
                bound_constant: 1.0,
            }),
        })
    }

    pub fn mobius() -> Self {
        ArithmeticFunction {
            id: FunctionId::Mobius,
            alpha: rat(0, 1),
            theta: rat(0, 1),
            growth_constant: 1.0,
            value_kind: ValueKind::ExactRational,
            g_side: None,
        }
    }

    /// The full catalog with representative parameter choices for the
    /// parameterized families.
    pub fn catalog() -> Vec<ArithmeticFunction> {
        vec![
            Self::one(),
            Self::id_fn(),
            Self::tau(),
            Self::phi_over_n(),
            Self::sigma_beta_norm(rat(1, 2)).unwrap(),
            Self::sigma_beta_norm(rat(1, 1)).unwrap(),
            Self::lambda(),
            Self::squarefree(),
            Self::k_free(2).unwrap(),
            Self::k_free(3).unwrap(),
            Self::mobius(),
        ]
    }

    /// Catalog members whose values are exact (integer or rational).
    pub fn exact_catalog() -> Vec<ArithmeticFunction> {
        Self::catalog()
            .into_iter()
            .filter(|f| f.value_kind != ValueKind::Real)
            .collect()
    }

    /// Look up by CLI name; `beta`/`k` apply to the parameterized families.
    pub fn from_name(name: &str, beta: Option<Rational>, k: Option<u32>) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "one" => Ok(Self::one()),
            "id" => Ok(Self::id_fn()),
            "tau" => Ok(Self::tau()),
            "phiovern" | "phi_over_n" | "phi-over-n" => Ok(Self::phi_over_n()),
            "sigmabeta" | "sigma_beta" | "sigma-beta" => {
                let beta = beta.ok_or_else(|| {
                    Error::Parameter("sigma_beta requires --beta (rational in (0,1])".into())
                })?;
                Self::sigma_beta_norm(beta)
            }
            "lambda" => Ok(Self::lambda()),
            "squarefree" => Ok(Self::squarefree()),
            "kfree" | "k_free" | "k-free" => {
                let k = k.ok_or_else(|| {
                    Error::Parameter("kfree requires --k (integer >= 2)".into())
                })?;
                Self::k_free(k)
            }
            "mobius" | "mu" => Ok(Self::mobius()),
            other => Err(Error::Parameter(format!("unknown function id {other:?}"))),
        }
    }

    /// Replace the growth parameters, e.g. to study a function under a
    /// different envelope than the catalog default.
    pub fn with_growth(mut self, alpha: Rational, theta: Rational) -> Self {
        self.alpha = alpha;
        self.theta = theta;
        self
    }

    pub fn id(&self) -> &FunctionId {
        &self.id
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn theta(&self) -> &Rational {
        &self.theta
    }

    pub fn growth_constant(&self) -> f64 {
        self.growth_constant
    }

    pub fn value_kind(&self) -> ValueKind {
        self.value_kind
    }

    pub fn has_g_side(&self) -> bool {
        self.g_side.is_some()
    }

    pub fn g_side(&self) -> Option<&GSide> {
        self.g_side.as_ref()
    }
}

// ---------------------------------------------------------------------------
// Factorization plumbing
// ---------------------------------------------------------------------------

fn simple_prime_list(limit: u32) -> Vec<u32> {
    let mut is_comp = vec![false; (limit + 1) as usize];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !is_comp[i as usize] {
            primes.push(i);
            let mut j = (i as u64) * (i as u64);
            while j <= limit as u64 {
                is_comp[j as usize] = true;
                j += i as u64;
            }
        }
    }
    primes
}

/// Primes up to 10^6: enough to trial-divide anything below `POINT_EVAL_CAP`.
pub(crate) fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| simple_prime_list(1_000_000))
}

/// Factor `n <= 10^12` by trial division over the cached prime list.
pub(crate) fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 || n > POINT_EVAL_CAP {
        return Err(Error::Domain(format!(
            "eval_point argument must be in [1, {POINT_EVAL_CAP}], got {n}"
        )));
    }
    let mut m = n;
    let mut out = Vec::new();
    for &p in small_primes() {
        let p = p as u64;
        if p * p > m {
            break;
        }
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if m > 1 {
        // no factor <= sqrt(m) remains, so m is prime
        out.push((m, 1));
    }
    Ok(out)
}

pub(crate) fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r > 0 && r.checked_mul(r).map_or(true, |s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map_or(false, |s| s <= n) {
        r += 1;
    }
    r
}

/// Largest l with l^k <= n.
pub(crate) fn ikroot(n: u64, k: u32) -> u64 {
    if k == 1 {
        return n;
    }
    if k == 2 {
        return isqrt(n);
    }
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    let pow = |b: u64| -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..k {
            acc = acc.checked_mul(b)?;
        }
        Some(acc)
    };
    while r > 0 && pow(r).map_or(true, |v| v > n) {
        r -= 1;
    }
    while pow(r + 1).map_or(false, |v| v <= n) {
        r += 1;
    }
    r
}

// ---------------------------------------------------------------------------
// Pointwise evaluation
// ---------------------------------------------------------------------------

/// Internal compact value used by tables and hot summation loops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum RawValue {
    Int(i64),
    Rat(i64, i64),
    Real(f64),
}

impl RawValue {
    pub(crate) fn to_value(self) -> Value {
        match self {
            RawValue::Int(v) => Value::Int(v as i128),
            RawValue::Rat(n, d) => Value::Rational(rat(n, d)),
            RawValue::Real(v) => Value::Real(v),
        }
    }

    pub(crate) fn to_f64(self) -> f64 {
        match self {
            RawValue::Int(v) => v as f64,
            RawValue::Rat(n, d) => n as f64 / d as f64,
            RawValue::Real(v) => v,
        }
    }

    pub(crate) fn abs(self) -> RawValue {
        match self {
            RawValue::Int(v) => RawValue::Int(v.abs()),
            RawValue::Rat(n, d) => RawValue::Rat(n.abs(), d),
            RawValue::Real(v) => RawValue::Real(v.abs()),
        }
    }
}

fn gcd64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn eval_factored(f: &ArithmeticFunction, n: u64, factors: &[(u64, u32)]) -> RawValue {
    match &f.id {
        FunctionId::One => RawValue::Int(1),
        FunctionId::Id => RawValue::Int(n as i64),
        FunctionId::Tau => {
            let mut t: i64 = 1;
            for &(_, e) in factors {
                t *= (e + 1) as i64;
            }
            RawValue::Int(t)
        }
        FunctionId::PhiOverN => {
            let mut num: u64 = 1;
            let mut den: u64 = 1;
            for &(p, _) in factors {
                num *= p - 1;
                den *= p;
            }
            let g = gcd64(num, den);
            RawValue::Rat((num / g) as i64, (den / g) as i64)
        }
        FunctionId::SigmaBetaNorm(beta) => {
            if beta.is_one() {
                // sigma(n)/n
                let mut sigma: u128 = 1;
                for &(p, e) in factors {
                    let mut pe: u128 = 1;
                    let mut geom: u128 = 1;
                    for _ in 0..e {
                        pe *= p as u128;
                        geom += pe;
                    }
                    sigma *= geom;
                }
                let num = sigma;
                let den = n as u128;
                let g = {
                    let (mut a, mut b) = (num, den);
                    while b != 0 {
                        let t = a % b;
                        a = b;
                        b = t;
                    }
                    a
                };
                RawValue::Rat((num / g) as i64, (den / g) as i64)
            } else {
                let bf = crate::value::rational_to_f64(beta);
                let mut acc = 1.0f64;
                for &(p, e) in factors {
                    let q = (p as f64).powf(-bf);
                    let mut geom = 1.0;
                    let mut qe = 1.0;
                    for _ in 0..e {
                        qe *= q;
                        geom += qe;
                    }
                    acc *= geom;
                }
                RawValue::Real(acc)
            }
        }
        FunctionId::Lambda => {
            if factors.len() == 1 {
                RawValue::Real((factors[0].0 as f64).ln())
            } else {
                RawValue::Real(0.0)
            }
        }
        FunctionId::Squarefree => {
            RawValue::Int(factors.iter().all(|&(_, e)| e < 2) as i64)
        }
        FunctionId::KFree(k) => RawValue::Int(factors.iter().all(|&(_, e)| e < *k) as i64),
        FunctionId::Mobius => {
            if factors.iter().any(|&(_, e)| e >= 2) {
                RawValue::Rat(0, 1)
            } else if factors.len() % 2 == 0 {
                RawValue::Rat(1, 1)
            } else {
                RawValue::Rat(-1, 1)
            }
        }
    }
}

pub(crate) fn eval_point_raw(f: &ArithmeticFunction, n: u64) -> Result<RawValue> {
    let factors = factorize(n)?;
    Ok(eval_factored(f, n, &factors))
}

/// Evaluate `f(n)` for a single argument by trial-division factorization.
///
/// Agrees exactly with `sieve_range` wherever both are defined.
pub fn eval_point(f: &ArithmeticFunction, n: u64) -> Result<Value> {
    Ok(eval_point_raw(f, n)?.to_value())
}

// ---------------------------------------------------------------------------
// Sieved evaluation
// ---------------------------------------------------------------------------

/// Dense table of `f(1..=limit)`.
#[derive(Debug, Clone)]
pub struct FunctionTable {
    f: ArithmeticFunction,
    values: TableValues,
}

#[derive(Debug, Clone)]
enum TableValues {
    Int(Vec<i64>),
    Rat(Vec<(i64, i64)>),
    Real(Vec<f64>),
}

impl FunctionTable {
    pub fn function(&self) -> &ArithmeticFunction {
        &self.f
    }

    pub fn limit(&self) -> u64 {
        match &self.values {
            TableValues::Int(v) => v.len() as u64,
            TableValues::Rat(v) => v.len() as u64,
            TableValues::Real(v) => v.len() as u64,
        }
    }

    pub(crate) fn get(&self, n: u64) -> RawValue {
        debug_assert!(n >= 1 && n <= self.limit());
        let i = (n - 1) as usize;
        match &self.values {
            TableValues::Int(v) => RawValue::Int(v[i]),
            TableValues::Rat(v) => RawValue::Rat(v[i].0, v[i].1),
            TableValues::Real(v) => RawValue::Real(v[i]),
        }
    }

    /// Value of `f(n)` for `1 <= n <= limit`.
    pub fn value(&self, n: u64) -> Value {
        self.get(n).to_value()
    }
}

/// Linear smallest-prime-factor sieve; `spf[p] = p` for primes, `spf[n] = 0`
/// only for n < 2.
pub(crate) fn spf_sieve(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=limit {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        for &p in &primes {
            if p > spf[i] || p as usize > limit / i {
                break;
            }
            spf[i * p as usize] = p;
        }
    }
    spf
}

/// Tabulate `f(1..=limit)` with one smallest-prime-factor sieve pass and a
/// multiplicative walk per entry (no per-point trial division).
pub fn sieve_range(f: &ArithmeticFunction, limit: u64) -> Result<FunctionTable> {
    if limit < 1 {
        return Err(Error::Parameter("sieve_range requires limit >= 1".into()));
    }
    if limit > TABLE_ENTRY_CAP {
        return Err(Error::Resource(format!(
            "sieve_range limit {limit} exceeds the table cap of {TABLE_ENTRY_CAP} entries"
        )));
    }
    let n = limit as usize;
    let spf = spf_sieve(n);
    let mut scratch: Vec<(u64, u32)> = Vec::with_capacity(16);
    let factor_into = |mut m: usize, scratch: &mut Vec<(u64, u32)>| {
        scratch.clear();
        while m > 1 {
            let p = spf[m] as usize;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            scratch.push((p as u64, e));
        }
    };

    let values = match f.value_kind {
        ValueKind::Integer => {
            let mut v = vec![0i64; n];
            for i in 1..=n {
                factor_into(i, &mut scratch);
                match eval_factored(f, i as u64, &scratch) {
                    RawValue::Int(x) => v[i - 1] = x,
                    _ => unreachable!(),
                }
            }
            TableValues::Int(v)
        }
        ValueKind::ExactRational => {
            let mut v = vec![(0i64, 1i64); n];
            for i in 1..=n {
                factor_into(i, &mut scratch);
                match eval_factored(f, i as u64, &scratch) {
                    RawValue::Rat(a, b) => v[i - 1] = (a, b),
                    RawValue::Int(x) => v[i - 1] = (x, 1),
                    _ => unreachable!(),
                }
            }
            TableValues::Rat(v)
        }
        ValueKind::Real => {
            let mut v = vec![0f64; n];
            for i in 1..=n {
                factor_into(i, &mut scratch);
                match eval_factored(f, i as u64, &scratch) {
                    RawValue::Real(x) => v[i - 1] = x,
                    other => v[i - 1] = other.to_f64(),
                }
            }
            TableValues::Real(v)
        }
    };
    Ok(FunctionTable {
        f: f.clone(),
        values,
    })
}

// ---------------------------------------------------------------------------
// Dirichlet g-side
// ---------------------------------------------------------------------------

fn mobius_table(limit: u64) -> Result<Vec<i8>> {
    if limit > TABLE_ENTRY_CAP {
        return Err(Error::Resource(format!(
            "g_partial_sum bound {limit} exceeds the table cap of {TABLE_ENTRY_CAP} entries"
        )));
    }
    let n = limit as usize;
    let spf = spf_sieve(n);
    let mut mu = vec![0i8; n + 1];
    if n >= 1 {
        mu[1] = 1;
    }
    for i in 2..=n {
        let p = spf[i] as usize;
        let m = i / p;
        mu[i] = if m % p == 0 { 0 } else { -mu[m] };
    }
    Ok(mu)
}

/// `sum_{d<=x} g(d)` (or of `|g(d)|`) for functions with a g-side.
pub fn g_partial_sum(f: &ArithmeticFunction, x: u64, absolute: bool) -> Result<Value> {
    if f.g_side.is_none() {
        return Err(Error::Unsupported(format!(
            "{} has no catalogued Dirichlet g-side",
            f.id
        )));
    }
    if x < 1 {
        return Err(Error::Parameter("g_partial_sum requires x >= 1".into()));
    }
    match &f.id {
        FunctionId::One => Ok(Value::Int(1)),
        FunctionId::PhiOverN => {
            let mu = mobius_table(x)?;
            let mut acc = RationalAccumulator::new();
            for d in 1..=x {
                let m = mu[d as usize] as i64;
                if m != 0 {
                    let num = if absolute { m.abs() } else { m };
                    acc.push(rat(num, d as i64));
                }
            }
            Ok(Value::Rational(acc.finish()))
        }
        FunctionId::SigmaBetaNorm(beta) => {
            if beta.is_one() {
                let mut acc = RationalAccumulator::new();
                for d in 1..=x {
                    acc.push(rat(1, d as i64));
                }
                Ok(Value::Rational(acc.finish()))
            } else {
                let bf = crate::value::rational_to_f64(beta);
                let mut acc = CompensatedSum::new();
                for d in 1..=x {
                    acc.add((d as f64).powf(-bf));
                }
                Ok(Value::Real(acc.total()))
            }
        }
        FunctionId::Squarefree | FunctionId::KFree(_) => {
            let k = match f.id {
                FunctionId::KFree(k) => k,
                _ => 2,
            };
            let root = ikroot(x, k);
            let mu = mobius_table(root.max(1))?;
            let mut total: i128 = 0;
            for l in 1..=root {
                let m = mu[l as usize] as i128;
                total += if absolute { m.abs() } else { m };
            }
            Ok(Value::Int(total))
        }
        _ => Err(Error::Unsupported(format!(
            "{} has no catalogued Dirichlet g-side",
            f.id
        ))),
    }
}

fn divisors(n: u64) -> Result<Vec<u64>> {
    let factors = factorize(n)?;
    let mut divs = vec![1u64];
    for (p, e) in factors {
        let prev = divs.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            divs.extend(prev.iter().map(|d| d * pe));
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Reconstruct `f(n) = sum_{d|n} g(d)` by explicit divisor enumeration.
///
/// This is intentionally independent of the multiplicative shortcut in
/// `eval_point`, so equality between the two is a real consistency check.
pub fn dirichlet_reconstruct(f: &ArithmeticFunction, n: u64) -> Result<Value> {
    if f.g_side.is_none() {
        return Err(Error::Unsupported(format!(
            "{} has no catalogued Dirichlet g-side",
            f.id
        )));
    }
    if n < 1 {
        return Err(Error::Parameter("dirichlet_reconstruct requires n >= 1".into()));
    }
    let divs = divisors(n)?;
    match &f.id {
        FunctionId::One => Ok(Value::Int(1)),
        FunctionId::PhiOverN => {
            let mut acc = RationalAccumulator::new();
            for d in divs {
                let mu = match eval_point_raw(&ArithmeticFunction::mobius(), d)? {
                    RawValue::Rat(m, _) => m,
                    _ => unreachable!(),
                };
                if mu != 0 {
                    acc.push(rat(mu, d as i64));
                }
            }
            Ok(Value::Rational(acc.finish()))
        }
        FunctionId::SigmaBetaNorm(beta) => {
            if beta.is_one() {
                let mut acc = RationalAccumulator::new();
                for d in divs {
                    acc.push(rat(1, d as i64));
                }
                Ok(Value::Rational(acc.finish()))
            } else {
                let bf = crate::value::rational_to_f64(beta);
                let mut acc = CompensatedSum::new();
                for d in divs {
                    acc.add((d as f64).powf(-bf));
                }
                Ok(Value::Real(acc.total()))
            }
        }
        FunctionId::Squarefree | FunctionId::KFree(_) => {
            let k = match f.id {
                FunctionId::KFree(k) => k,
                _ => 2,
            };
            let mut total: i128 = 0;
            for d in divs {
                let l = ikroot(d, k);
                let mut pk = 1u64;
                let mut ok = true;
                for _ in 0..k {
                    pk = match pk.checked_mul(l) {
                        Some(v) => v,
                        None => {
                            ok = false;
                            break;
                        }
                    };
                }
                if ok && pk == d {
                    let mu = match eval_point_raw(&ArithmeticFunction::mobius(), l)? {
                        RawValue::Rat(m, _) => m,
                        _ => unreachable!(),
                    };
                    total += mu as i128;
                }
            }
            Ok(Value::Int(total))
        }
        _ => Err(Error::Unsupported(format!(
            "{} has no catalogued Dirichlet g-side",
            f.id
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Divisor-count oracle by bare trial division, independent of the
    /// factorization path.
    fn tau_oracle(n: u64) -> i64 {
        let mut c = 0;
        let mut d = 1;
        while d * d <= n {
            if n % d == 0 {
                c += if d * d == n { 1 } else { 2 };
            }
            d += 1;
        }
        c
    }

    /// Totient oracle by gcd counting.
    fn phi_oracle(n: u64) -> u64 {
        (1..=n).filter(|&m| gcd64(m, n) == 1).count() as u64
    }

    #[test]
    fn sieve_tau_matches_examples_and_oracle() {
        let t = sieve_range(&ArithmeticFunction::tau(), 6).unwrap();
        let got: Vec<i128> = (1..=6)
            .map(|n| match t.value(n) {
                Value::Int(v) => v,
                _ => panic!(),
            })
            .collect();
        assert_eq!(got, vec![1, 2, 2, 3, 2, 4]);

        let t = sieve_range(&ArithmeticFunction::tau(), 2000).unwrap();
        for n in 1..=2000u64 {
            assert_eq!(t.value(n), Value::Int(tau_oracle(n) as i128), "tau({n})");
        }
    }

    #[test]
    fn sieve_one_is_constant() {
        let t = sieve_range(&ArithmeticFunction::one(), 3).unwrap();
        for n in 1..=3 {
            assert_eq!(t.value(n), Value::Int(1));
        }
    }

    #[test]
    fn sieve_phi_over_n_matches_gcd_oracle() {
        let t = sieve_range(&ArithmeticFunction::phi_over_n(), 4).unwrap();
        let expect = [rat(1, 1), rat(1, 2), rat(2, 3), rat(1, 2)];
        for n in 1..=4u64 {
            assert_eq!(t.value(n), Value::Rational(expect[(n - 1) as usize].clone()));
        }
        let t = sieve_range(&ArithmeticFunction::phi_over_n(), 500).unwrap();
        for n in 1..=500u64 {
            let want = rat(phi_oracle(n) as i64, n as i64);
            assert_eq!(t.value(n), Value::Rational(want), "phi({n})/{n}");
        }
    }

    #[test]
    fn eval_point_examples() {
        assert_eq!(
            eval_point(&ArithmeticFunction::tau(), 12).unwrap(),
            Value::Int(6)
        );
        assert_eq!(
            eval_point(&ArithmeticFunction::squarefree(), 12).unwrap(),
            Value::Int(0)
        );
        match eval_point(&ArithmeticFunction::lambda(), 8).unwrap() {
            Value::Real(v) => assert!((v - 2f64.ln()).abs() < 1e-15),
            other => panic!("expected real, got {other:?}"),
        }
        assert!(eval_point(&ArithmeticFunction::tau(), 0).is_err());
        assert!(eval_point(&ArithmeticFunction::tau(), POINT_EVAL_CAP + 1).is_err());
    }

    #[test]
    fn eval_point_matches_sieve_on_shared_range() {
        for f in ArithmeticFunction::catalog() {
            let t = sieve_range(&f, 300).unwrap();
            for n in 1..=300u64 {
                let a = t.value(n);
                let b = eval_point(&f, n).unwrap();
                assert!(a.matches(&b, 1e-12), "{} at {n}: {a} vs {b}", f.id());
            }
        }
    }

    #[test]
    fn eval_point_handles_large_semiprimes() {
        // 999983 * 999979 has both factors just below the prime-list bound.
        let n = 999_983u64 * 999_979u64;
        assert_eq!(eval_point(&ArithmeticFunction::tau(), n).unwrap(), Value::Int(4));
        // prime beyond the list: 10^12 - 11 is prime
        let p = 999_999_999_989u64;
        assert_eq!(eval_point(&ArithmeticFunction::tau(), p).unwrap(), Value::Int(2));
    }

    #[test]
    fn g_partial_sum_examples() {
        assert_eq!(
            g_partial_sum(&ArithmeticFunction::squarefree(), 100, true).unwrap(),
            Value::Int(7)
        );
        assert_eq!(
            g_partial_sum(&ArithmeticFunction::phi_over_n(), 1, true).unwrap(),
            Value::Rational(rat(1, 1))
        );
        let sb = ArithmeticFunction::sigma_beta_norm(rat(1, 2)).unwrap();
        match g_partial_sum(&sb, 4, true).unwrap() {
            Value::Real(v) => {
                let want = 1.0 + 2f64.powf(-0.5) + 3f64.powf(-0.5) + 4f64.powf(-0.5);
                assert!((v - want).abs() < 1e-14);
            }
            other => panic!("expected real, got {other:?}"),
        }
        assert!(g_partial_sum(&ArithmeticFunction::tau(), 10, true).is_err());
    }

    #[test]
    fn dirichlet_reconstruct_examples() {
        assert_eq!(
            dirichlet_reconstruct(&ArithmeticFunction::phi_over_n(), 6).unwrap(),
            Value::Rational(rat(1, 3))
        );
        assert_eq!(
            dirichlet_reconstruct(&ArithmeticFunction::k_free(2).unwrap(), 4).unwrap(),
            Value::Int(0)
        );
        assert_eq!(
            dirichlet_reconstruct(&ArithmeticFunction::one(), 7).unwrap(),
            Value::Int(1)
        );
        assert!(dirichlet_reconstruct(&ArithmeticFunction::lambda(), 5).is_err());
    }

    #[test]
    fn dirichlet_reconstruct_agrees_with_eval_point() {
        for f in ArithmeticFunction::catalog() {
            if !f.has_g_side() {
                continue;
            }
            for n in 1..=400u64 {
                let direct = eval_point(&f, n).unwrap();
                let rebuilt = dirichlet_reconstruct(&f, n).unwrap();
                assert!(
                    direct.matches(&rebuilt, 1e-12),
                    "{} at {n}: {direct} vs {rebuilt}",
                    f.id()
                );
            }
        }
    }

    #[test]
    fn catalog_value_ranges() {
        let sf = sieve_range(&ArithmeticFunction::squarefree(), 1000).unwrap();
        let mu = sieve_range(&ArithmeticFunction::mobius(), 1000).unwrap();
        let ph = sieve_range(&ArithmeticFunction::phi_over_n(), 1000).unwrap();
        let sb = sieve_range(&ArithmeticFunction::sigma_beta_norm(rat(1, 2)).unwrap(), 1000)
            .unwrap();
        for n in 1..=1000u64 {
            match sf.value(n) {
                Value::Int(v) => assert!(v == 0 || v == 1),
                _ => panic!(),
            }
            match mu.value(n) {
                Value::Rational(r) => assert!(r.abs() <= Rational::one()),
                _ => panic!(),
            }
            match ph.value(n) {
                Value::Rational(r) => {
                    assert!(r > Rational::zero() && r <= Rational::one())
                }
                _ => panic!(),
            }
            match sb.value(n) {
                Value::Real(v) => assert!(v >= 1.0),
                _ => panic!(),
            }
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(ArithmeticFunction::sigma_beta_norm(rat(0, 1)).is_err());
        assert!(ArithmeticFunction::sigma_beta_norm(rat(3, 2)).is_err());
        assert!(ArithmeticFunction::k_free(1).is_err());
        assert!(ArithmeticFunction::from_name("nope", None, None).is_err());
        assert!(ArithmeticFunction::from_name("kfree", None, None).is_err());
        assert!(sieve_range(&ArithmeticFunction::one(), TABLE_ENTRY_CAP + 1).is_err());
    }

    #[test]
    fn integer_roots() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
        assert_eq!(isqrt(10u64.pow(12)), 10u64.pow(6));
        assert_eq!(ikroot(26, 3), 2);
        assert_eq!(ikroot(27, 3), 3);
        assert_eq!(ikroot(1, 5), 1);
    }
}
