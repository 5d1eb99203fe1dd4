use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ExactError;

/// Integer coordinates `(a, b)` relative to a two-element basis. For the
/// lattices in this crate the basis is usually `{1, √m}`, so `(a, b)`
/// stands for `a + b√m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector {
    pub a: i64,
    pub b: i64,
}

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        LatticeVector { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl std::ops::Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, o: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.a + o.a, self.b + o.b)
    }
}

impl std::ops::Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, o: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.a - o.a, self.b - o.b)
    }
}

impl std::ops::Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector::new(-self.a, -self.b)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Canonical basis of the integer span of a set of vectors in ℤ².
///
/// Rank 2: `basis = [(h11, 0), (h21, h22)]` with `h11, h22 > 0` and
/// `0 <= h21 < h11` (lower-triangular Hermite normal form).
/// Rank 1: a single primitive generator whose first nonzero coordinate is
/// positive.
///
/// `coords[i]` re-expresses input `i` in the basis; in rank 1 the
/// coefficient sits in `a` and `b` is always zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteBasis<T = i64> {
    pub rank: usize,
    pub basis: Vec<(T, T)>,
    pub coords: Vec<(T, T)>,
}

pub fn lattice_hnf(vectors: &[LatticeVector]) -> Result<HermiteBasis<i64>, ExactError> {
    let big: Vec<(BigInt, BigInt)> =
        vectors.iter().map(|v| (BigInt::from(v.a), BigInt::from(v.b))).collect();
    let h = hnf_big(&big)?;
    let small = |v: &(BigInt, BigInt)| -> Result<(i64, i64), ExactError> {
        Ok((v.0.to_i64().ok_or(ExactError::Overflow)?, v.1.to_i64().ok_or(ExactError::Overflow)?))
    };
    Ok(HermiteBasis {
        rank: h.rank,
        basis: h.basis.iter().map(small).collect::<Result<_, _>>()?,
        coords: h.coords.iter().map(small).collect::<Result<_, _>>()?,
    })
}

/// Hermite normal form over arbitrary-precision integers.
pub fn hnf_big(vectors: &[(BigInt, BigInt)]) -> Result<HermiteBasis<BigInt>, ExactError> {
    if vectors.is_empty() {
        return Err(ExactError::EmptyLattice);
    }

    // Fold every vector into one pivot carrying gcd of the b-coordinates;
    // the unimodular complement of each step has b = 0 and only feeds h11.
    let mut pivot: Option<(BigInt, BigInt)> = None;
    let mut h11 = BigInt::zero();
    for (a, b) in vectors {
        if b.is_zero() {
            h11 = h11.gcd(a);
            continue;
        }
        match pivot.take() {
            None => pivot = Some((a.clone(), b.clone())),
            Some((pa, pb)) => {
                let e = pb.extended_gcd(b);
                let g = e.gcd;
                let new_a = &e.x * &pa + &e.y * a;
                let new_b = &e.x * &pb + &e.y * b;
                debug_assert_eq!(new_b, g);
                let rest_a = (b / &g) * &pa - (&pb / &g) * a;
                h11 = h11.gcd(&rest_a);
                pivot = Some((new_a, new_b));
            }
        }
    }

    let basis = match pivot {
        Some((pa, pb)) => {
            let (pa, pb) = if pb.is_negative() { (-pa, -pb) } else { (pa, pb) };
            if h11.is_zero() {
                let (pa, pb) = if pa.is_negative() { (-pa, -pb) } else { (pa, pb) };
                vec![(pa, pb)]
            } else {
                vec![(h11.clone(), BigInt::zero()), (pa.mod_floor(&h11), pb)]
            }
        }
        None if h11.is_zero() => return Err(ExactError::ZeroLattice),
        None => vec![(h11, BigInt::zero())],
    };

    let coords = vectors
        .iter()
        .map(|(a, b)| express(&basis, a, b))
        .collect();
    Ok(HermiteBasis { rank: basis.len(), basis, coords })
}

fn express(basis: &[(BigInt, BigInt)], a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    match basis {
        [(ua, ub)] => {
            let c = if ua.is_zero() { b / ub } else { a / ua };
            debug_assert!(&c * ua == *a && &c * ub == *b);
            (c, BigInt::zero())
        }
        [(h11, _), (h21, h22)] => {
            let y = b / h22;
            let rem = a - &y * h21;
            let x = &rem / h11;
            debug_assert!(&x * h11 == rem && &y * h22 == *b);
            (x, y)
        }
        _ => unreachable!("basis has rank 1 or 2"),
    }
}
