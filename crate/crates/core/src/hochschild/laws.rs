//! Chain-level laws checked on enumerated blocks: the boundary commutes with
//! the Hodge projections, and the degree projections commute with both.

use rayon::prelude::*;

use crate::exactq::ExactScalar;
use crate::monomial::{enumerate_chain_basis, ModuleKind, MultiDegree};
use crate::report::{Check, CheckLog};

use super::{bgs_project, boundary, degree_project, truncation_project, ChainVector, HochschildError};

/// `e^(i)` on `c`, taking every idempotent to be zero on chains with no legs.
fn project(i: usize, c: &ChainVector) -> Result<ChainVector, HochschildError> {
    if c.legs() == 0 {
        return Ok(ChainVector::zero(0, c.k(), c.module().clone()));
    }
    bgs_project(i, c)
}

/// `d e_n^(i) x = e_(n-1)^(i) d x` for every basis chain `x` with
/// `1 <= n <= n_max` legs, every `1 <= i <= n` and every degree of total
/// order at most `deg_max`.
pub fn chain_map_law(k: usize, n_max: usize, deg_max: u32, module: &ModuleKind) -> Result<Vec<Check>, HochschildError> {
    module.validate()?;
    let jobs: Vec<(MultiDegree, usize)> = MultiDegree::all_up_to(k, deg_max)
        .into_iter()
        .flat_map(|d| (1..=n_max).map(move |n| (d.clone(), n)))
        .collect();
    let logs: Vec<CheckLog> = jobs
        .par_iter()
        .map(|(degree, n)| {
            let mut log = CheckLog::new();
            for chain in enumerate_chain_basis(*n, degree, module) {
                let x = ChainVector::from_chain(chain.clone(), module.clone());
                let dx = boundary(&x)?;
                for i in 1..=*n {
                    let lhs = boundary(&project(i, &x)?)?;
                    let rhs = project(i, &dx)?;
                    log.record("chain-map-law", lhs == rhs, || format!("i={i} {chain}"));
                }
            }
            Ok(log)
        })
        .collect::<Result<_, HochschildError>>()?;
    Ok(merge(logs))
}

/// A chain with `legs` legs touching every basis chain of total order at
/// most `deg_max`, with pairwise distinct coefficients.
fn mixed_chain(k: usize, legs: usize, deg_max: u32, module: &ModuleKind) -> ChainVector {
    let mut out = ChainVector::zero(legs, k, module.clone());
    let mut c = 1;
    for degree in MultiDegree::all_up_to(k, deg_max) {
        for chain in enumerate_chain_basis(legs, &degree, module) {
            out.add_term(chain, &ExactScalar::from_int(c));
            c += 1;
        }
    }
    out
}

/// `d d = 0`, face maps preserving degree, and `pi^N`, `P^m` commuting with
/// the boundary and with every Hodge projection, on chains with at most
/// `n_max` legs and degrees of total order at most `deg_max`.
pub fn projection_laws(k: usize, n_max: usize, deg_max: u32, module: &ModuleKind) -> Result<Vec<Check>, HochschildError> {
    module.validate()?;
    let degrees = MultiDegree::all_up_to(k, deg_max);
    let jobs: Vec<usize> = (1..=n_max).collect();
    let logs: Vec<CheckLog> = jobs
        .par_iter()
        .map(|&n| {
            let mut log = CheckLog::new();
            for degree in &degrees {
                for chain in enumerate_chain_basis(n, degree, module) {
                    for j in 0..=n {
                        let face = chain.face(j, module)?;
                        let ok = face.as_ref().is_none_or(|f| f.total_degree() == *degree);
                        log.record("face-degree-preservation", ok, || format!("j={j} {chain}"));
                    }
                    if n >= 2 {
                        let x = ChainVector::from_chain(chain.clone(), module.clone());
                        let dd = boundary(&boundary(&x)?)?;
                        log.record("d-squared-zero", dd.is_zero(), || chain.to_string());
                    }
                }
            }
            let x = mixed_chain(k, n, deg_max, module);
            let dx = boundary(&x)?;
            let hodge: Vec<ChainVector> = (1..=n).map(|i| bgs_project(i, &x)).collect::<Result<_, _>>()?;
            for degree in &degrees {
                let px = degree_project(degree, &x);
                let ok = degree_project(degree, &dx) == boundary(&px)?;
                log.record("degree-projection-chain-map", ok, || format!("n={n} N={degree:?}"));
                for (i, hx) in hodge.iter().enumerate() {
                    let ok = degree_project(degree, hx) == bgs_project(i + 1, &px)?;
                    log.record("degree-projection-hodge", ok, || format!("n={n} i={} N={degree:?}", i + 1));
                }
            }
            for m in 0..=deg_max {
                let px = truncation_project(m, &x);
                let ok = truncation_project(m, &dx) == boundary(&px)?;
                log.record("truncation-chain-map", ok, || format!("n={n} m={m}"));
                for (i, hx) in hodge.iter().enumerate() {
                    let ok = truncation_project(m, hx) == bgs_project(i + 1, &px)?;
                    log.record("truncation-hodge", ok, || format!("n={n} i={} m={m}", i + 1));
                }
            }
            Ok(log)
        })
        .collect::<Result<_, HochschildError>>()?;
    Ok(merge(logs))
}

fn merge(logs: Vec<CheckLog>) -> Vec<Check> {
    let mut all = CheckLog::new();
    for l in logs {
        all.merge(l);
    }
    all.into_checks()
}
