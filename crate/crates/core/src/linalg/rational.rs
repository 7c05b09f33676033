//! Exact rational elimination with an arithmetic-operation counter.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Counts unit-cost arithmetic operations (add, subtract, multiply,
/// divide, compare).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct OpCount {
    pub arithmetic: u64,
}

impl OpCount {
    #[inline]
    pub fn tick(&mut self, n: u64) {
        self.arithmetic += n;
    }
}

pub(crate) fn to_rational_matrix(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

/// Gauss-Jordan inverse. Returns `None` for a singular matrix.
///
/// The pivot is the first row with a nonzero entry in the current column,
/// so the sequence of operations depends only on the zero pattern met
/// during elimination.
pub fn invert(mut a: Vec<Vec<BigRational>>, ops: &mut OpCount) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let mut pivot = None;
        for r in col..n {
            ops.tick(1);
            if !a[r][col].is_zero() {
                pivot = Some(r);
                break;
            }
        }
        let p = pivot?;
        a.swap(col, p);
        inv.swap(col, p);

        let piv = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &piv;
            inv[col][j] = &inv[col][j] / &piv;
        }
        ops.tick(2 * n as u64);

        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a[r][col].clone();
            ops.tick(1);
            if factor.is_zero() {
                continue;
            }
            for j in 0..n {
                let d = &factor * &a[col][j];
                a[r][j] -= d;
                let d = &factor * &inv[col][j];
                inv[r][j] -= d;
            }
            ops.tick(4 * n as u64);
        }
    }
    Some(inv)
}

pub fn mat_vec(m: &[Vec<BigRational>], v: &[BigRational], ops: &mut OpCount) -> Vec<BigRational> {
    let out = m
        .iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect();
    let n = m.len() as u64;
    ops.tick(2 * n * v.len() as u64);
    out
}
