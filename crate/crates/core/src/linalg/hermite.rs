//! Integer solves through a column-style Hermite normal form.
//!
//! `A U = H` with `U` unimodular and `H` in column echelon form. Then
//! `A g = b` has an integer solution iff `H w = b` does, and `g = U w`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub struct ColumnHermite {
    h: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    // (row, column) of each pivot, columns ascending
    pivots: Vec<(usize, usize)>,
}

impl ColumnHermite {
    pub fn new(a: &[Vec<BigInt>]) -> Self {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut h: Vec<Vec<BigInt>> = a.to_vec();
        let mut u: Vec<Vec<BigInt>> = (0..cols)
            .map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut pc = 0;

        for r in 0..rows {
            if pc == cols {
                break;
            }
            // Fold every column c > pc into column pc via extended gcd.
            for c in pc + 1..cols {
                if h[r][c].is_zero() {
                    continue;
                }
                let a_ = h[r][pc].clone();
                let b_ = h[r][c].clone();
                let ext = a_.extended_gcd(&b_);
                let (g, s, t) = (ext.gcd, ext.x, ext.y);
                let (ag, bg) = (&a_ / &g, &b_ / &g);
                // [col_pc, col_c] <- [s*col_pc + t*col_c, -bg*col_pc + ag*col_c]
                combine_columns(&mut h, pc, c, &s, &t, &bg, &ag);
                combine_columns(&mut u, pc, c, &s, &t, &bg, &ag);
            }
            if h[r][pc].is_zero() {
                continue;
            }
            if h[r][pc].is_negative() {
                negate_column(&mut h, pc);
                negate_column(&mut u, pc);
            }
            // Reduce entries to the left of the pivot.
            for c in 0..pc {
                let q = h[r][c].div_floor(&h[r][pc]);
                if !q.is_zero() {
                    sub_column_multiple(&mut h, c, pc, &q);
                    sub_column_multiple(&mut u, c, pc, &q);
                }
            }
            pivots.push((r, pc));
            pc += 1;
        }
        Self { h, u, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Some integer `g` with `A g = b`, or `None` if there is none.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let rows = self.h.len();
        let cols = self.u.len();
        let mut w = vec![BigInt::zero(); cols];
        let mut next_pivot = 0;
        for r in 0..rows {
            let known: BigInt = (0..next_pivot).map(|c| &self.h[r][c] * &w[c]).sum();
            let rest = &b[r] - known;
            if next_pivot < self.pivots.len() && self.pivots[next_pivot].0 == r {
                let c = self.pivots[next_pivot].1;
                let (q, rem) = rest.div_rem(&self.h[r][c]);
                if !rem.is_zero() {
                    return None;
                }
                w[c] = q;
                next_pivot += 1;
            } else if !rest.is_zero() {
                return None;
            }
        }
        Some(
            (0..cols)
                .map(|i| self.u[i].iter().zip(&w).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }
}

fn combine_columns(
    m: &mut [Vec<BigInt>],
    i: usize,
    j: usize,
    s: &BigInt,
    t: &BigInt,
    bg: &BigInt,
    ag: &BigInt,
) {
    for row in m.iter_mut() {
        let (x, y) = (row[i].clone(), row[j].clone());
        row[i] = s * &x + t * &y;
        row[j] = ag * &y - bg * &x;
    }
}

fn negate_column(m: &mut [Vec<BigInt>], i: usize) {
    for row in m.iter_mut() {
        row[i] = -row[i].clone();
    }
}

fn sub_column_multiple(m: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let d = q * &row[src];
        row[target] -= d;
    }
}
