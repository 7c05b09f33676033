//! Exact integer and rational linear algebra over the Laplacian.
//!
//! Everything here is exact; there is no floating point. Connected
//! Eulerian graphs take a strongly polynomial route (pin vertex 0, invert
//! the reduced Laplacian over the rationals). Other graphs go through an
//! integer Hermite solve followed by sink-period repair.

pub mod hermite;
pub mod rational;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::vector::{sub, ChipDistribution, FiringVector, PeriodVector};

pub use hermite::ColumnHermite;
pub use rational::OpCount;

/// The primitive period vector of the subgraph induced by `component`,
/// embedded into the full vertex set (zero outside the component).
pub fn primitive_period_vector(g: &Digraph, component: &[usize]) -> Result<PeriodVector> {
    let mut comp = component.to_vec();
    comp.sort_unstable();
    comp.dedup();
    if !g.is_strongly_connected_subset(&comp) {
        return Err(Error::InvalidComponent(comp.iter().map(|v| v + 1).collect()));
    }
    let local = local_period(g, &comp);
    let mut full = vec![BigInt::zero(); g.vertex_count()];
    for (i, &v) in comp.iter().enumerate() {
        full[v] = local[i].clone();
    }
    Ok(PeriodVector::from_vec_unchecked(full))
}

// Kernel vector of the induced Laplacian: pin the first vertex to 1, solve
// the remaining rows over the rationals, clear denominators, divide by gcd.
fn local_period(g: &Digraph, comp: &[usize]) -> Vec<BigInt> {
    let m = comp.len();
    if m == 1 {
        return vec![BigInt::one()];
    }
    // Induced Laplacian: diagonal uses out-degree inside the component.
    let lap = |i: usize, j: usize| -> BigInt {
        if i == j {
            -comp
                .iter()
                .map(|&w| g.multiplicity(comp[i], w).clone())
                .sum::<BigInt>()
        } else {
            g.multiplicity(comp[j], comp[i]).clone()
        }
    };
    let reduced: Vec<Vec<BigInt>> = (1..m).map(|i| (1..m).map(|j| lap(i, j)).collect()).collect();
    let rhs: Vec<BigRational> = (1..m).map(|i| BigRational::from_integer(-lap(i, 0))).collect();
    let mut ops = OpCount::default();
    let inv = rational::invert(rational::to_rational_matrix(&reduced), &mut ops)
        .expect("reduced Laplacian of a strongly connected graph is nonsingular");
    let rest = rational::mat_vec(&inv, &rhs, &mut ops);

    let mut q: Vec<BigRational> = Vec::with_capacity(m);
    q.push(BigRational::one());
    q.extend(rest);
    let lcm = q.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = q.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut p: Vec<BigInt> = ints.into_iter().map(|x| x / &gcd).collect();
    if p[0].is_negative() {
        p.iter_mut().for_each(|x| *x = -x.clone());
    }
    p
}

/// Primitive period vectors of the sink components, with component index.
pub fn sink_periods(g: &Digraph) -> &[(usize, PeriodVector)] {
    g.sink_periods_cache().get_or_init(|| {
        let scc = g.scc();
        scc.sinks()
            .map(|c| {
                let p = primitive_period_vector(g, &scc.components()[c])
                    .expect("SCC is strongly connected");
                (c, p)
            })
            .collect()
    })
}

/// Sum of the primitive period entries over every strongly connected
/// component.
pub fn per(g: &Digraph) -> BigInt {
    g.scc()
        .components()
        .iter()
        .map(|c| local_period(g, c).iter().sum::<BigInt>())
        .sum()
}

/// Some integer `z` with `x = y + L z`, if `x` and `y` are linearly
/// equivalent. The returned `z` is canonical: on every sink component it
/// has been shifted by the sink's period so that it dominates no
/// multiple of it and stays nonnegative there.
pub fn linear_equivalent(g: &Digraph, x: &ChipDistribution, y: &ChipDistribution) -> Option<Vec<BigInt>> {
    check_len(g, x.entries()).ok()?;
    check_len(g, y.entries()).ok()?;
    let rhs = sub(x.entries(), y.entries());
    let z = integer_solve(g, &rhs)?;
    Some(reduce_on_sinks(g, z))
}

fn integer_solve(g: &Digraph, rhs: &[BigInt]) -> Option<Vec<BigInt>> {
    let h = g
        .hermite_cache()
        .get_or_init(|| ColumnHermite::new(&g.laplacian().rows()));
    h.solve(rhs)
}

// Shifts by sink-period multiples so that min floor(z/p) = 0 on each sink.
fn reduce_on_sinks(g: &Digraph, mut z: Vec<BigInt>) -> Vec<BigInt> {
    for (c, p) in sink_periods(g) {
        let comp = &g.scc().components()[*c];
        let lambda = comp
            .iter()
            .map(|&v| z[v].div_floor(&p[v]))
            .min()
            .expect("components are nonempty");
        if !lambda.is_zero() {
            for &v in comp {
                z[v] -= &lambda * &p[v];
            }
        }
    }
    z
}

/// The reduced nonnegative `f` with `y = x + L f`, if any nonnegative
/// solution exists.
pub fn solve_nonneg_firing(g: &Digraph, x: &ChipDistribution, y: &ChipDistribution) -> Option<FiringVector> {
    solve_nonneg_firing_counted(g, x, y).0
}

/// [`solve_nonneg_firing`] together with the number of arithmetic
/// operations spent on the Eulerian path (zero on the general path).
pub fn solve_nonneg_firing_counted(
    g: &Digraph,
    x: &ChipDistribution,
    y: &ChipDistribution,
) -> (Option<FiringVector>, OpCount) {
    let mut ops = OpCount::default();
    if check_len(g, x.entries()).is_err() || check_len(g, y.entries()).is_err() {
        return (None, ops);
    }
    let f = if g.is_eulerian() {
        solve_eulerian(g, x, y, &mut ops)
    } else {
        solve_general(g, x, y)
    };
    (f, ops)
}

fn solve_eulerian(g: &Digraph, x: &ChipDistribution, y: &ChipDistribution, ops: &mut OpCount) -> Option<FiringVector> {
    let n = g.vertex_count();
    let sx = x.total();
    let sy = y.total();
    ops.tick(2 * n as u64 + 1);
    if sx != sy {
        return None;
    }
    // Pin vertex 0; invert the Laplacian with row and column 0 removed.
    let lap = g.laplacian();
    let reduced: Vec<Vec<BigInt>> = (1..n).map(|i| (1..n).map(|j| lap.get(i, j).clone()).collect()).collect();
    let inv = rational::invert(rational::to_rational_matrix(&reduced), ops)
        .expect("reduced Laplacian of a connected Eulerian graph is nonsingular");
    let diff: Vec<BigRational> = (1..n)
        .map(|i| BigRational::from_integer(&y[i] - &x[i]))
        .collect();
    ops.tick(n.saturating_sub(1) as u64);
    let rest = rational::mat_vec(&inv, &diff, ops);

    // The control flow below does not branch on values until the end.
    let mut integral = true;
    for r in &rest {
        ops.tick(1);
        integral &= r.is_integer();
    }
    let mut gvec = Vec::with_capacity(n);
    gvec.push(BigInt::zero());
    gvec.extend(rest.iter().map(BigRational::floor).map(|r| r.to_integer()));

    // Shift by min(g) copies of the all-ones period so the minimum is 0.
    let mut min = gvec[0].clone();
    for v in &gvec[1..] {
        ops.tick(1);
        if v < &min {
            min = v.clone();
        }
    }
    let f: Vec<BigInt> = gvec.into_iter().map(|v| v - &min).collect();
    ops.tick(n as u64);
    if !integral {
        return None;
    }
    Some(FiringVector::from_vec_unchecked(f))
}

fn solve_general(g: &Digraph, x: &ChipDistribution, y: &ChipDistribution) -> Option<FiringVector> {
    let rhs = sub(y.entries(), x.entries());
    let z = integer_solve(g, &rhs)?;
    let scc = g.scc();
    for (c, comp) in scc.components().iter().enumerate() {
        if !scc.is_sink(c) && comp.iter().any(|&v| z[v].is_negative()) {
            return None;
        }
    }
    Some(FiringVector::from_vec_unchecked(reduce_on_sinks(g, z)))
}

/// Subtracts the maximal multiple of each sink component's primitive
/// period vector. The result is the unique reduced vector with the same
/// `L f`.
pub fn reduce_firing_vector(g: &Digraph, f: &FiringVector) -> FiringVector {
    FiringVector::from_vec_unchecked(reduce_on_sinks(g, f.entries().to_vec()))
}

/// `true` iff `f` dominates no nonzero period vector.
pub fn is_reduced(g: &Digraph, f: &FiringVector) -> bool {
    sink_periods(g).iter().all(|(c, p)| {
        g.scc().components()[*c].iter().any(|&v| f[v] < p[v])
    })
}

fn check_len(g: &Digraph, v: &[BigInt]) -> Result<()> {
    if v.len() != g.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "vector has {} entries, graph has {} vertices",
            v.len(),
            g.vertex_count()
        )));
    }
    Ok(())
}

pub(crate) fn ensure_len(g: &Digraph, v: &[BigInt]) -> Result<()> {
    check_len(g, v)
}
