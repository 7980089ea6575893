//! Integer factorization: trial division by a cached prime table, then
//! Brent's variant of Pollard rho under an iteration budget.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::LazyLock;

use crate::error::{Error, Result};

const TRIAL_LIMIT: u32 = 1_000_000;

static SMALL_PRIMES: LazyLock<Vec<u32>> = LazyLock::new(|| sieve(TRIAL_LIMIT));

fn sieve(limit: u32) -> Vec<u32> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u32);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Limits for [`factor_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial-divide by every prime up to this bound (capped at 10^6).
    pub trial_limit: u32,
    /// Total Pollard-rho iterations across all cofactors and restarts.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_limit: TRIAL_LIMIT,
            rho_iterations: 4_000_000,
        }
    }
}

/// Result of a budgeted factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factorization {
    /// Prime factors with multiplicity, ascending.
    Complete(Vec<BigInt>),
    /// Budget ran out; `primes` times `cofactor` is the input.
    Incomplete { primes: Vec<BigInt>, cofactor: BigInt },
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        matches!(self, Factorization::Complete(_))
    }

    pub fn primes(&self) -> &[BigInt] {
        match self {
            Factorization::Complete(p) => p,
            Factorization::Incomplete { primes, .. } => primes,
        }
    }
}

/// Factor `n >= 1` with the default budget.
pub fn factor(n: &BigInt) -> Result<Factorization> {
    factor_with(n, FactorBudget::default())
}

pub fn factor_with(n: &BigInt, budget: FactorBudget) -> Result<Factorization> {
    let n = match n.to_biguint() {
        Some(u) if !u.is_zero() => u,
        _ => return Err(Error::arg(format!("factor: expected n >= 1, got {n}"))),
    };
    let mut primes: Vec<BigUint> = Vec::new();
    let rest = trial_divide(n, budget.trial_limit.min(TRIAL_LIMIT), &mut primes);

    let mut pending = Vec::new();
    let mut stuck = BigUint::one();
    if !rest.is_one() {
        pending.push(rest);
    }
    let mut remaining = budget.rho_iterations;
    while let Some(m) = pending.pop() {
        if is_prime_u(&m) {
            primes.push(m);
            continue;
        }
        match pollard_brent(&m, &mut remaining) {
            Some(d) => {
                let q = &m / &d;
                pending.push(d);
                pending.push(q);
            }
            None => stuck *= m,
        }
    }

    primes.sort();
    let primes: Vec<BigInt> = primes.into_iter().map(BigInt::from).collect();
    if stuck.is_one() {
        Ok(Factorization::Complete(primes))
    } else {
        Ok(Factorization::Incomplete {
            primes,
            cofactor: BigInt::from(stuck),
        })
    }
}

fn trial_divide(mut n: BigUint, limit: u32, out: &mut Vec<BigUint>) -> BigUint {
    if let Some(mut small) = n.to_u128() {
        for &p in SMALL_PRIMES.iter().take_while(|&&p| p <= limit) {
            let p = p as u128;
            if p * p > small {
                break;
            }
            while small % p == 0 {
                out.push(BigUint::from(p));
                small /= p;
            }
        }
        if small > 1 && small < (limit as u128) * (limit as u128) {
            out.push(BigUint::from(small));
            small = 1;
        }
        return BigUint::from(small);
    }
    for &p in SMALL_PRIMES.iter().take_while(|&&p| p <= limit) {
        if (&n % p).is_zero() {
            while (&n % p).is_zero() {
                out.push(BigUint::from(p));
                n /= p;
            }
            if n.to_u128().is_some() {
                // finish on the fast path; it resumes from the start of the
                // table but every prime below p has already been removed
                return trial_divide(n, limit, out);
            }
        }
    }
    n
}

/// Deterministic below 3.317 * 10^24 (bases: the first thirteen primes);
/// above that the same bases give a strong probable-prime test.
pub fn is_prime(n: &BigInt) -> bool {
    match n.to_biguint() {
        Some(u) => is_prime_u(&u),
        None => false,
    }
}

fn is_prime_u(n: &BigUint) -> bool {
    const BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &p in &BASES {
        if n == &BigUint::from(p) {
            return true;
        }
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Finds a nontrivial factor of composite `n`, spending at most `*budget`
/// iterations.
fn pollard_brent(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    if let Some(r) = exact_sqrt(n) {
        return Some(r);
    }
    const BATCH: u64 = 128;
    let one = BigUint::one();
    for c in 1u32.. {
        if *budget == 0 {
            return None;
        }
        let c = BigUint::from(c);
        let step = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = one.clone();
        let mut q = one.clone();
        let mut r: u64 = 1;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let m = BATCH.min(r - k);
                for _ in 0..m {
                    y = step(&y);
                    q = (q * abs_diff(&x, &y)) % n;
                }
                *budget = budget.saturating_sub(m);
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            if *budget == 0 && g.is_one() {
                return None;
            }
        }
        if &g == n {
            // batch overshot; replay one step at a time
            loop {
                ys = step(&ys);
                g = abs_diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

fn abs_diff(a: &BigUint, b: &BigUint) -> BigUint {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}
