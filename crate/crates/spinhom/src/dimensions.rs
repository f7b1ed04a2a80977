//! The bar-length formula, `ddeg`, regularisation multiplicities and the
//! search for degree witnesses.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bars::{bar_core, block_members, strict_with_ladder_counts, BlockFilter};
use crate::error::Result;
use crate::ladders::nonzero_residue_nodes;
use crate::partitions::{parity_stats, OddPrime, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    #[serde(with = "crate::decimal")]
    pub dim: BigUint,
    #[serde(with = "crate::decimal")]
    pub g: BigUint,
    pub two_exp: usize,
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `n!/∏λ_r! · ∏_{r<s}(λ_r-λ_s)/(λ_r+λ_s)`, the number of standard shifted
/// tableaux. Panics if the value is not an integer.
pub(crate) fn shifted_count(lambda: &Partition) -> BigUint {
    let parts = lambda.parts();
    let mut num = factorial(lambda.size());
    let mut den = BigUint::one();
    for (r, &a) in parts.iter().enumerate() {
        den *= factorial(a);
        for &b in &parts[r + 1..] {
            num *= BigUint::from(a - b);
            den *= BigUint::from(a + b);
        }
    }
    assert!((&num % &den) == BigUint::ZERO, "bar-length formula is not integral for {lambda}");
    num / den
}

pub fn spin_dim(lambda: &Partition) -> Result<DimensionReport> {
    lambda.require_strict()?;
    let g = shifted_count(lambda);
    let two_exp = (lambda.size() - lambda.len()).div_ceil(2);
    Ok(DimensionReport { dim: &g << two_exp, g, two_exp })
}

/// `dim S^λ / [S^λ : D^{λ^reg}]`.
pub fn ddeg(lambda: &Partition, p: OddPrime) -> Result<BigUint> {
    lambda.require_strict()?;
    let e = (lambda.size() - lambda.len() - lambda.l_p(p)).div_ceil(2);
    Ok(shifted_count(lambda) << e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegnMultiplicities {
    #[serde(with = "crate::decimal")]
    pub s_to_d: BigUint,
    #[serde(with = "crate::decimal")]
    pub p_to_s: BigUint,
    pub x: usize,
    pub y: usize,
}

/// `[S^λ : D^{λ^reg}] = 2^{(l_p+x-y)/2}` and `[P^{λ^reg} : S^λ] = 2^{(l_p+y-x)/2}`,
/// with `x` the spin parity of `λ` and `y` the p-parity of `λ^reg`.
pub fn regn_multiplicity(lambda: &Partition, p: OddPrime) -> Result<RegnMultiplicities> {
    lambda.require_strict()?;
    let x = parity_stats(lambda, p).spin_parity.bit();
    // regularisation keeps every node's residue
    let y = nonzero_residue_nodes(lambda, p) % 2;
    let lp = lambda.l_p(p);
    assert!((lp + x + y) % 2 == 0 && lp + x >= y && lp + y >= x, "parity exponents for {lambda} are not integers");
    Ok(RegnMultiplicities {
        s_to_d: BigUint::one() << ((lp + x - y) / 2),
        p_to_s: BigUint::one() << ((lp + y - x) / 2),
        x,
        y,
    })
}

pub fn ddeg_ratio(lambda: &Partition, mu: &Partition, p: OddPrime) -> Result<BigRational> {
    Ok(BigRational::new(ddeg(lambda, p)?.into(), ddeg(mu, p)?.into()))
}

/// Where degree witnesses are looked for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessScope {
    /// Strict partitions with the same regularisation; a witness proves non-homogeneity.
    Fibre,
    /// Every strict partition in the block; exploratory only.
    Block,
}

/// A strict `μ ≠ λ` in `scope` with `ddeg μ < ddeg λ`: the lexicographically
/// greatest among those of least `ddeg`.
pub fn degree_witness_in(lambda: &Partition, p: OddPrime, scope: WitnessScope) -> Result<Option<Partition>> {
    lambda.require_strict()?;
    let candidates = match scope {
        WitnessScope::Fibre => strict_with_ladder_counts(lambda, p),
        WitnessScope::Block => {
            let c = bar_core(lambda, p)?;
            block_members(&c.core, c.weight, p, BlockFilter::Strict)?
        }
    };
    let own = ddeg(lambda, p)?;
    let scored: Vec<(BigUint, Partition)> = candidates
        .into_par_iter()
        .map(|mu| Ok((ddeg(&mu, p)?, mu)))
        .collect::<Result<_>>()?;
    let mut best: Option<(BigUint, Partition)> = None;
    for (d, mu) in scored {
        if d >= own {
            continue;
        }
        let better = match &best {
            None => true,
            Some((bd, bm)) => d < *bd || (d == *bd && mu > *bm),
        };
        if better {
            best = Some((d, mu));
        }
    }
    Ok(best.map(|(_, mu)| mu))
}

pub fn degree_witness(lambda: &Partition, p: OddPrime) -> Result<Option<Partition>> {
    degree_witness_in(lambda, p, WitnessScope::Fibre)
}

/// Whether a rational is exactly one.
pub fn is_one(r: &BigRational) -> bool {
    r.is_one()
}

/// Small dimensions as machine integers, for display.
pub fn to_u128(x: &BigUint) -> Option<u128> {
    x.to_u128()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladders::regularize;
    use crate::partitions::{strict_partitions, SpinParity};

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    const P: OddPrime = OddPrime::THREE;

    fn dim(s: &str) -> u128 {
        to_u128(&spin_dim(&pt(s)).unwrap().dim).unwrap()
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(dim("3,2,1"), 8);
        assert_eq!(dim("5,1"), 16);
        assert_eq!(dim("4,2"), 20);
        assert_eq!(dim("2,1"), 2);
        for n in 1..12usize {
            assert_eq!(dim(&n.to_string()), 1 << (n - 1).div_ceil(2));
        }
        assert!(spin_dim(&pt("2,2")).is_err());
    }

    #[test]
    fn squares_sum_to_factorial() {
        for n in 1..=10 {
            let mut total = BigUint::ZERO;
            for l in strict_partitions(n) {
                let d = spin_dim(&l).unwrap().dim;
                let sq = &d * &d;
                total += match parity_stats(&l, P).spin_parity {
                    SpinParity::Even => sq,
                    SpinParity::Odd => sq >> 1,
                };
            }
            assert_eq!(total, factorial(n), "n={n}");
        }
    }

    #[test]
    fn ddeg_is_dim_over_multiplicity() {
        for p in [OddPrime::THREE, OddPrime::FIVE] {
            for n in 0..=18 {
                for l in strict_partitions(n) {
                    let m = regn_multiplicity(&l, p).unwrap();
                    assert_eq!(&m.s_to_d * &m.p_to_s, BigUint::one() << l.l_p(p));
                    assert_eq!(ddeg(&l, p).unwrap() * &m.s_to_d, spin_dim(&l).unwrap().dim, "{l}");
                }
            }
        }
    }

    #[test]
    fn multiplicity_examples() {
        let m = regn_multiplicity(&pt("2,1"), P).unwrap();
        assert_eq!((m.x, m.y, to_u128(&m.s_to_d)), (1, 1, Some(1)));
        let m = regn_multiplicity(&pt("3"), P).unwrap();
        assert_eq!((to_u128(&m.s_to_d), to_u128(&m.p_to_s)), (Some(1), Some(2)));
        assert_eq!(ddeg(&pt("3"), P).unwrap(), spin_dim(&pt("3")).unwrap().dim);
        assert_eq!(to_u128(&ddeg(&pt("4,2"), P).unwrap()), Some(20));
        assert_eq!(ddeg(&pt("3,1"), P).unwrap(), ddeg(&pt("4"), P).unwrap());
    }

    #[test]
    fn ratios() {
        assert!(is_one(&ddeg_ratio(&pt("5,3,1"), &pt("5,3,1"), P).unwrap()));
    }

    #[test]
    fn witnesses() {
        let w = degree_witness(&pt("9,6,3"), P).unwrap();
        assert!(w.is_some());
        assert!(ddeg(&pt("8,7,3"), P).unwrap() < ddeg(&pt("9,6,3"), P).unwrap());
        assert_eq!(regularize(&pt("8,7,3"), P).unwrap(), regularize(&pt("9,6,3"), P).unwrap());
        let l = pt("10,6,4,3,1");
        assert!(ddeg(&pt("13,7,4"), P).unwrap() < ddeg(&l, P).unwrap());
        assert_eq!(regularize(&pt("13,7,4"), P).unwrap(), regularize(&l, P).unwrap());
        assert!(degree_witness(&l, P).unwrap().is_some());
        assert_eq!(degree_witness(&pt("4,1"), P).unwrap(), None);
    }

    #[test]
    fn block_scope_contains_fibre_witnesses() {
        for n in 0..=14 {
            for l in strict_partitions(n) {
                if degree_witness(&l, P).unwrap().is_some() {
                    assert!(degree_witness_in(&l, P, WitnessScope::Block).unwrap().is_some());
                }
            }
        }
    }
}
