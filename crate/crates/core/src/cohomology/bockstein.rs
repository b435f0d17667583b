//! Characteristic-`P` cochains from the quadratic cocycle by polarizing,
//! raising colors to `P`-power degrees, taking the coboundary and dividing
//! by `P`.
//!
//! Divisibility is tested pointwise, at integer permitted colorings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cocycle4::face_coefficient;
use super::epsilon_is_negative;
use crate::colorings::all_simplex_vectors;
use crate::error::{Error, Result};
use crate::polygon::{Face, ParameterMatrix, PolygonRank};
use crate::scalar::{is_integral, is_prime, Rational};

/// An integer coloring, one value per face in lexicographic order.
pub type IntColoring = Vec<BigInt>;

/// `w_p(x, y) = (1/P) sum_i eps c_{i,p} x_{i,p}^{P^k} y_{i,p}^{P^l} mod P`.
#[derive(Debug, Clone, PartialEq)]
pub struct DividedCochain {
    rank: PolygonRank,
    prime: u64,
    k: u32,
    l: u32,
    /// Primitive integer multiple of the cocycle, per face.
    coefficients: Vec<BigInt>,
}

impl DividedCochain {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// Value on simplex `p` of the coboundary of the powered cochain, in
    /// characteristic zero.
    pub fn powered_coboundary(&self, p: usize, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let l = self.rank.labels();
        let ex = self.prime.pow(self.k) as u32;
        let ey = self.prime.pow(self.l) as u32;
        (1..=l).filter(|&i| i != p).fold(BigInt::zero(), |acc, i| {
            let f = Face::of(i, p).index(l);
            let term = &self.coefficients[f] * x[f].pow(ex) * y[f].pow(ey);
            if epsilon_is_negative(p, i) {
                acc - term
            } else {
                acc + term
            }
        })
    }

    /// `w_p(x, y)`, or `None` when the coboundary value is not divisible.
    pub fn evaluate(&self, p: usize, x: &[BigInt], y: &[BigInt]) -> Option<u64> {
        let v = self.powered_coboundary(p, x, y);
        let prime = BigInt::from(self.prime);
        let (q, r) = v.div_mod_floor(&prime);
        r.is_zero().then(|| residue(&q, self.prime))
    }

    /// `sum_p (-1)^(p-1) w_p(x, y) mod P`.
    pub fn coboundary(&self, x: &[BigInt], y: &[BigInt]) -> Option<u64> {
        let q = self.prime;
        let mut acc = 0u64;
        for p in 1..=self.rank.labels() {
            let w = self.evaluate(p, x, y)?;
            acc = if p % 2 == 1 {
                (acc + w) % q
            } else {
                (acc + q - w) % q
            };
        }
        Some(acc)
    }
}

fn residue(v: &BigInt, q: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(q));
    r.try_into().expect("residue fits")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BocksteinCounterexample {
    pub trial: usize,
    pub simplex: usize,
    pub residue: u64,
    pub x: Vec<String>,
    pub y: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BocksteinOutcome {
    pub prime: u64,
    pub k: u32,
    pub l: u32,
    pub trials: usize,
    /// Every coboundary value was divisible by `P`.
    pub divisible: bool,
    /// The divided cochain's coboundary vanished mod `P` at every point.
    pub divided_is_cocycle: bool,
    /// Some `w_p` was nonzero mod `P`.
    pub nonzero: bool,
    pub counterexample: Option<BocksteinCounterexample>,
    pub cochain: Option<DividedCochain>,
}

/// Primitive integer vector proportional to the cocycle coefficients.
fn integral_coefficients(m: &ParameterMatrix<Rational>) -> Result<Vec<BigInt>> {
    let cs = Face::all(m.rank())
        .into_iter()
        .map(|f| face_coefficient(m, f.lo(), f.hi()))
        .collect::<Result<Vec<_>>>()?;
    let den = cs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = cs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    Ok(ints.into_iter().map(|v| v / &content).collect())
}

/// Runs the lift on `trials` random pairs of integer permitted colorings
/// (integer combinations of simplex vectors with coefficients in
/// `[-coeff_bound, coeff_bound]`).
pub fn bockstein_lift(
    m: &ParameterMatrix<Rational>,
    prime: u64,
    k: u32,
    l: u32,
    trials: usize,
    seed: u64,
    coeff_bound: i64,
) -> Result<BocksteinOutcome> {
    if prime == 2 || !is_prime(prime) {
        return Err(Error::InvalidField(format!("{prime} is not an odd prime")));
    }
    if k == 0 || l == 0 {
        return Err(Error::Config("exponents k and l must be positive".into()));
    }
    if coeff_bound <= 0 {
        return Err(Error::Config("coefficient bound must be positive".into()));
    }
    let entries: Vec<Rational> = m.columns().iter().flatten().cloned().collect();
    if !is_integral(&entries) {
        return Err(Error::Domain(
            "parameter matrix must have integer entries".into(),
        ));
    }
    m.check_generic()?;
    let cochain = DividedCochain {
        rank: m.rank(),
        prime,
        k,
        l,
        coefficients: integral_coefficients(m)?,
    };
    let basis: Vec<IntColoring> = all_simplex_vectors(m)?
        .into_iter()
        .map(|v| v.coloring.values().iter().map(|x| x.to_integer()).collect())
        .collect();
    let faces = m.rank().face_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let combo = |rng: &mut ChaCha8Rng| -> IntColoring {
        let mut out = vec![BigInt::zero(); faces];
        for b in &basis {
            let r = BigInt::from(rng.gen_range(-coeff_bound..=coeff_bound));
            for (o, v) in out.iter_mut().zip(b) {
                *o += &r * v;
            }
        }
        out
    };
    let mut outcome = BocksteinOutcome {
        prime,
        k,
        l,
        trials,
        divisible: true,
        divided_is_cocycle: true,
        nonzero: false,
        counterexample: None,
        cochain: None,
    };
    let prime_big = BigInt::from(prime);
    for trial in 0..trials {
        let (x, y) = (combo(&mut rng), combo(&mut rng));
        for p in 1..=m.rank().labels() {
            let v = cochain.powered_coboundary(p, &x, &y);
            let r = v.mod_floor(&prime_big);
            if !r.is_zero() {
                outcome.divisible = false;
                outcome.divided_is_cocycle = false;
                outcome.counterexample = Some(BocksteinCounterexample {
                    trial,
                    simplex: p,
                    residue: residue(&r, prime),
                    x: x.iter().map(|v| v.to_string()).collect(),
                    y: y.iter().map(|v| v.to_string()).collect(),
                });
                return Ok(outcome);
            }
            if !(v / &prime_big).mod_floor(&prime_big).is_zero() {
                outcome.nonzero = true;
            }
        }
        if cochain.coboundary(&x, &y) != Some(0) {
            outcome.divided_is_cocycle = false;
        }
    }
    outcome.cochain = Some(cochain);
    Ok(outcome)
}
