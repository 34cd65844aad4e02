//! Vertex weights rescaled to a common denominator.
//!
//! Every comparison the algorithms make is homogeneous in the weights, so
//! multiplying all weights by the lcm of their denominators changes no
//! decision. The resulting integers fit in `u128` for all realistic inputs;
//! anything larger falls back to `BigUint`.

use std::fmt::Debug;
use std::ops::{Add, AddAssign};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::rational::Rational;

/// Integer weight type the hot loops are generic over.
pub trait Mass:
    Clone + Ord + Debug + Send + Sync + Zero + Add<Output = Self> + for<'a> AddAssign<&'a Self>
{
    fn to_rational(&self, denom: &BigUint) -> Rational;
}

impl Mass for u128 {
    fn to_rational(&self, denom: &BigUint) -> Rational {
        Rational::from_biguint(BigUint::from(*self), denom.clone())
    }
}

impl Mass for BigUint {
    fn to_rational(&self, denom: &BigUint) -> Rational {
        Rational::from_biguint(self.clone(), denom.clone())
    }
}

#[derive(Clone, Debug)]
pub enum Masses {
    Small(Vec<u128>),
    Big(Vec<BigUint>),
}

/// Weights as integers over one shared denominator.
#[derive(Clone, Debug)]
pub struct ScaledWeights {
    pub denom: BigUint,
    pub masses: Masses,
}

impl ScaledWeights {
    pub fn new(weights: &[Rational]) -> Self {
        let mut denom = BigUint::one();
        for w in weights {
            if !w.is_integer() {
                denom = denom.lcm(&w.denom());
            }
        }
        let big: Vec<BigUint> = weights
            .iter()
            .map(|w| {
                if denom.is_one() {
                    w.numer()
                } else {
                    w.numer() * (&denom / w.denom())
                }
            })
            .collect();
        // Headroom of 4x the total keeps 2·x and 3·x comparisons in range.
        let limit = u128::MAX / 4;
        let mut total: u128 = 0;
        let mut small = Vec::with_capacity(big.len());
        for m in &big {
            match m.to_u128().and_then(|x| total.checked_add(x)) {
                Some(t) if t <= limit => {
                    total = t;
                    small.push(m.to_u128().unwrap());
                }
                _ => {
                    return ScaledWeights {
                        denom,
                        masses: Masses::Big(big),
                    }
                }
            }
        }
        ScaledWeights {
            denom,
            masses: Masses::Small(small),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn common_denominator() {
        let sw = ScaledWeights::new(&[r("7/30"), r("1/20"), r("1/9")]);
        assert_eq!(sw.denom, BigUint::from(180u32));
        match sw.masses {
            Masses::Small(v) => assert_eq!(v, vec![42, 9, 20]),
            Masses::Big(_) => panic!("expected small masses"),
        }
    }

    #[test]
    fn huge_weights_fall_back_to_bigint() {
        let huge = r(&"9".repeat(60));
        let sw = ScaledWeights::new(&[huge.clone(), Rational::one()]);
        match &sw.masses {
            Masses::Big(v) => assert_eq!(v[0].to_rational(&sw.denom), huge),
            Masses::Small(_) => panic!("expected big masses"),
        }
    }
}
