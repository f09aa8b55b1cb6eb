//! Exact minimization of `x · d` over every network with `n` leaves and `k`
//! bridges, by exhaustive evaluation of the vertex set.

use std::cmp::Ordering;
use std::thread;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::enumerate::{network_count_u128, NetworkIter};
use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;
use crate::network::Network;
use crate::rational::Rational;
use crate::vector::network_ints;

pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimizationResult {
    pub minimum: Rational,
    /// Every minimizer, sorted by canonical key.
    pub argmin: Vec<Network>,
    pub evaluated: u128,
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub budget: u128,
    pub jobs: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { budget: DEFAULT_BUDGET, jobs: 1 }
    }
}

/// `d` over a common denominator.
enum Scaled {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

struct Objective {
    scaled: Scaled,
    denom: BigInt,
}

impl Objective {
    fn new(d: &DistanceMatrix) -> Objective {
        let denom = d.entries().iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let nums: Vec<BigInt> = d.entries().iter().map(|e| e.numer() * (&denom / e.denom())).collect();
        // x entries are at most 2^(k+1) <= 2^30 and there are at most 465
        // pairs, so i64-sized numerators cannot overflow an i128 sum.
        let scaled = match nums.iter().map(|v| v.to_i64().map(i128::from)).collect::<Option<Vec<_>>>() {
            Some(small) => Scaled::Small(small),
            None => Scaled::Big(nums),
        };
        Objective { scaled, denom }
    }

    fn eval(&self, x: &[i64]) -> BigInt {
        match &self.scaled {
            Scaled::Small(d) => BigInt::from(x.iter().zip(d).map(|(&a, b)| a as i128 * b).sum::<i128>()),
            Scaled::Big(d) => x.iter().zip(d).filter(|(a, _)| **a != 0).map(|(&a, b)| b * a).sum(),
        }
    }
}

struct Best {
    value: Option<BigInt>,
    argmin: Vec<Network>,
    evaluated: u128,
}

fn search(objective: &Objective, nets: NetworkIter) -> Best {
    let mut best = Best { value: None, argmin: Vec::new(), evaluated: 0 };
    for net in nets {
        best.evaluated += 1;
        let v = objective.eval(&network_ints(&net));
        match best.value.as_ref().map(|b| v.cmp(b)) {
            Some(Ordering::Greater) => {}
            Some(Ordering::Equal) => best.argmin.push(net),
            _ => {
                best.value = Some(v);
                best.argmin = vec![net];
            }
        }
    }
    best
}

fn merge(parts: Vec<Best>) -> Best {
    let mut out = Best { value: None, argmin: Vec::new(), evaluated: 0 };
    for p in parts {
        out.evaluated += p.evaluated;
        let Some(v) = p.value else { continue };
        match out.value.as_ref().map(|b| v.cmp(b)) {
            Some(Ordering::Greater) => {}
            Some(Ordering::Equal) => out.argmin.extend(p.argmin),
            _ => {
                out.value = Some(v);
                out.argmin = p.argmin;
            }
        }
    }
    out.argmin.sort();
    out
}

/// Global minimum of the network length with the default budget, one thread.
pub fn minimize(d: &DistanceMatrix, n: usize, k: usize) -> Result<OptimizationResult> {
    minimize_with(d, n, k, Options::default())
}

pub fn minimize_with(d: &DistanceMatrix, n: usize, k: usize, opts: Options) -> Result<OptimizationResult> {
    if d.n() != n {
        return Err(Error::AmbientMismatch(d.n(), n));
    }
    let needed = network_count_u128(n, k)?;
    if needed > opts.budget {
        return Err(Error::BudgetExceeded { needed, budget: opts.budget });
    }
    let objective = Objective::new(d);
    let jobs = opts.jobs.max(1);
    let best = if jobs == 1 {
        merge(vec![search(&objective, NetworkIter::new(n, k, 0, 1)?)])
    } else {
        let iters = (0..jobs).map(|p| NetworkIter::new(n, k, p, jobs)).collect::<Result<Vec<_>>>()?;
        let parts = thread::scope(|scope| {
            let handles: Vec<_> = iters.into_iter().map(|it| scope.spawn(|| search(&objective, it))).collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect::<Vec<_>>()
        });
        merge(parts)
    };
    let value = best.value.expect("at least one network");
    Ok(OptimizationResult {
        minimum: Rational::new(value, objective.denom.clone()),
        argmin: best.argmin,
        evaluated: best.evaluated,
    })
}

/// The `k = 0` case: symmetric travelling salesman over circular orderings.
pub fn minimize_tsp(d: &DistanceMatrix) -> Result<OptimizationResult> {
    minimize(d, d.n(), 0)
}

/// The `k = n - 3` case: balanced minimum evolution over binary trees.
pub fn minimize_bme_tree(d: &DistanceMatrix) -> Result<OptimizationResult> {
    let n = d.n();
    minimize(d, n, n.saturating_sub(3))
}
