//! Hochschild chains of monomial algebras: face and boundary maps, degree
//! blocks, Hodge projections and exact (co)homology dimensions.

mod block;
mod chain;
mod hodge;
mod laws;

pub use block::{boundary_block, boundary_matrix, ChainBlock};
pub use chain::{ChainVector, MonomialChain};
pub use hodge::{
    check_cap, cohomology_dims, hodge_table, homology_dims, DegreeComplex, HodgeCell, HodgePiece, TableOptions,
    DEFAULT_BLOCK_CAP,
};
pub use laws::{chain_map_law, projection_laws};

use std::collections::BTreeMap;

use crate::exactq::{ExactScalar, LinAlgError};
use crate::monomial::{ModuleKind, MonomialError, MultiDegree};
use crate::symgroup::{act_on_chain, cached_eulerian_family, SymGroupError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HochschildError {
    #[error("face index {index} out of range for a chain with {legs} legs")]
    FaceIndex { index: usize, legs: usize },
    #[error("boundary needs at least one leg")]
    NoLegs,
    #[error("Hodge index requires n >= 1 and i >= 1 (got n = {n}, i = {i})")]
    HodgeIndex { n: usize, i: usize },
    #[error("chain {0} is not in the block")]
    OutsideBlock(String),
    #[error("refusing cell {cell}: block dimension {dim} exceeds cap {cap}")]
    CapExceeded { cell: String, dim: u64, cap: u64 },
    #[error("derivation norms are defined for degrees N >= 1")]
    DegreeZero,
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    SymGroup(#[from] SymGroupError),
}

/// `face_map(j, c)`; `None` when the module kills the slot.
pub fn face_map(j: usize, c: &MonomialChain, module: &ModuleKind) -> Result<Option<MonomialChain>, HochschildError> {
    c.face(j, module)
}

/// `d(c) = sum_j (-1)^j face_j(c)` on a single basis chain.
pub(crate) fn boundary_terms(c: &MonomialChain, module: &ModuleKind) -> Vec<(MonomialChain, i64)> {
    let legs = c.legs();
    let mut out: Vec<(MonomialChain, i64)> = Vec::with_capacity(legs + 1);
    for j in 0..=legs {
        if let Some(f) = c.face(j, module).expect("index in range") {
            let s = if j % 2 == 0 { 1 } else { -1 };
            match out.iter_mut().find(|(g, _)| *g == f) {
                Some(entry) => entry.1 += s,
                None => out.push((f, s)),
            }
        }
    }
    out.retain(|(_, s)| *s != 0);
    out
}

/// The Hochschild boundary of a chain vector (one leg fewer).
pub fn boundary(c: &ChainVector) -> Result<ChainVector, HochschildError> {
    if c.legs() == 0 {
        return Err(HochschildError::NoLegs);
    }
    let mut out = ChainVector::zero(c.legs() - 1, c.k(), c.module().clone());
    for (chain, x) in c.terms() {
        for (f, s) in boundary_terms(chain, c.module()) {
            out.add_term(f, &(x * &ExactScalar::from_int(s)));
        }
    }
    Ok(out)
}

/// `(id ⊗ e_n^(i))(c)`; zero for `i > n`.
pub fn bgs_project(i: usize, c: &ChainVector) -> Result<ChainVector, HochschildError> {
    if c.legs() == 0 || i == 0 {
        return Err(HochschildError::HodgeIndex { n: c.legs(), i });
    }
    if i > c.legs() {
        return Ok(ChainVector::zero(c.legs(), c.k(), c.module().clone()));
    }
    Ok(act_on_chain(&cached_eulerian_family(c.legs())[i - 1], c)?)
}

/// Keeps the terms of total degree exactly `degree`.
pub fn degree_project(degree: &MultiDegree, c: &ChainVector) -> ChainVector {
    c.filter(|ch| ch.total_degree() == *degree)
}

/// Keeps the terms of total order at most `m`.
pub fn truncation_project(m: u32, c: &ChainVector) -> ChainVector {
    c.filter(|ch| ch.total_order() <= m)
}

/// `D(z^n)` for the derivation `D(z) = z^p` of `Q[z]`, from the Leibniz
/// expansion `sum_j z^j D(z) z^(n-1-j)`, as exponent -> coefficient.
pub fn derivation_image(p: u32, n: u32) -> BTreeMap<u32, ExactScalar> {
    let mut image: BTreeMap<u32, ExactScalar> = BTreeMap::new();
    for j in 0..n {
        let e = j + p + (n - 1 - j);
        *image.entry(e).or_insert_with(ExactScalar::zero) += ExactScalar::one();
    }
    image.retain(|_, c| !c.is_zero());
    image
}

/// Column norm of that derivation on the degree-`n` block of `Q[z]`.
pub fn derivation_block_norm(p: u32, n: u32) -> Result<ExactScalar, HochschildError> {
    if n == 0 {
        return Err(HochschildError::DegreeZero);
    }
    Ok(derivation_image(p, n).values().map(ExactScalar::abs).sum())
}

#[cfg(test)]
mod tests;
