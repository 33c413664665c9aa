//! Faithful affine representation of `BS(1,n) = ⟨a, b | a b a⁻¹ = bⁿ⟩`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::words::Word;

/// `x ↦ scale·x + offset` over exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub scale: BigRational,
    pub offset: BigRational,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            scale: BigRational::one(),
            offset: BigRational::zero(),
        }
    }

    pub fn new(scale: BigRational, offset: BigRational) -> Self {
        assert!(!scale.is_zero(), "affine scale must be nonzero");
        AffineMap { scale, offset }
    }

    pub fn is_identity(&self) -> bool {
        self.scale.is_one() && self.offset.is_zero()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            scale: &self.scale * &other.scale,
            offset: &self.scale * &other.offset + &self.offset,
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = self.scale.recip();
        AffineMap {
            offset: -(&self.offset * &inv),
            scale: inv,
        }
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x ↦ {}·x + {}", self.scale, self.offset)
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `a ↦ (x ↦ n·x)`, `b ↦ (x ↦ x + 1)`, with `eval(uv) = eval(u) ∘ eval(v)`.
pub fn affine_eval_bs1n(w: &Word, n: i64) -> AffineMap {
    assert!(n != 0, "BS(1,0) has no affine representation");
    let a = AffineMap::new(int(n), int(0));
    let b = AffineMap::new(int(1), int(1));
    w.letters().iter().fold(AffineMap::identity(), |acc, l| {
        let m = match l.gen().0 {
            0 => &a,
            1 => &b,
            g => panic!("affine_eval_bs1n: generator {g} outside {{a, b}}"),
        };
        acc.compose(&if l.is_positive() {
            m.clone()
        } else {
            m.inverse()
        })
    })
}
