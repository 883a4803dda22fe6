use std::collections::HashMap;

use crate::exactq::{Basis, BlockMatrix, ExactScalar, SparseVec};
use crate::monomial::{block_dim, enumerate_chain_basis, ModuleKind, MultiDegree};

use super::{boundary_terms, ChainVector, HochschildError, MonomialChain};

/// The basis chains of one degree block, in serialized-label order.
#[derive(Clone, Debug)]
pub struct ChainBlock {
    legs: usize,
    degree: MultiDegree,
    module: ModuleKind,
    chains: Vec<MonomialChain>,
    index: HashMap<MonomialChain, usize>,
    basis: Basis,
}

impl ChainBlock {
    pub fn new(legs: usize, degree: &MultiDegree, module: &ModuleKind) -> Self {
        let chains = enumerate_chain_basis(legs, degree, module);
        let index = chains.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let basis = Basis::new(chains.iter().map(|c| c.to_string()).collect()).expect("distinct chains");
        ChainBlock { legs, degree: degree.clone(), module: module.clone(), chains, index, basis }
    }

    /// As `new`, but refuses blocks larger than `cap`.
    pub fn with_cap(legs: usize, degree: &MultiDegree, module: &ModuleKind, cap: u64, cell: &str) -> Result<Self, HochschildError> {
        let dim = block_dim(legs, degree, module);
        if dim > cap {
            return Err(HochschildError::CapExceeded { cell: cell.to_string(), dim, cap });
        }
        Ok(Self::new(legs, degree, module))
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn degree(&self) -> &MultiDegree {
        &self.degree
    }

    pub fn module(&self) -> &ModuleKind {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn chains(&self) -> &[MonomialChain] {
        &self.chains
    }

    pub fn chain(&self, i: usize) -> &MonomialChain {
        &self.chains[i]
    }

    pub fn index_of(&self, c: &MonomialChain) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// Coordinates of a chain vector supported in this block.
    pub fn coordinates(&self, v: &ChainVector) -> Result<SparseVec, HochschildError> {
        let pairs = v
            .terms()
            .map(|(c, x)| self.index_of(c).map(|i| (i, x.clone())).ok_or_else(|| HochschildError::OutsideBlock(c.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SparseVec::from_pairs(pairs))
    }

    pub fn chain_vector(&self, v: &SparseVec) -> ChainVector {
        let mut out = ChainVector::zero(self.legs, self.degree.k(), self.module.clone());
        for (i, x) in v.iter() {
            out.add_term(self.chains[*i].clone(), x);
        }
        out
    }

    pub fn unit(&self, i: usize) -> ChainVector {
        ChainVector::from_chain(self.chains[i].clone(), self.module.clone())
    }
}

/// The matrix of `d` from `src` (n+1 legs) to `dst` (n legs) of one degree.
pub fn boundary_matrix(src: &ChainBlock, dst: &ChainBlock) -> BlockMatrix {
    assert_eq!(src.legs(), dst.legs() + 1, "boundary lowers the leg count by one");
    let columns = src
        .chains()
        .iter()
        .map(|c| {
            SparseVec::from_pairs(boundary_terms(c, src.module()).into_iter().map(|(f, s)| {
                let i = dst.index_of(&f).expect("faces preserve total degree");
                (i, ExactScalar::from_int(s))
            }))
        })
        .collect();
    BlockMatrix::from_columns(dst.basis().clone(), src.basis().clone(), columns).expect("consistent shapes")
}

/// `d_n` restricted to the degree-`degree` block.
pub fn boundary_block(n: usize, degree: &MultiDegree, module: &ModuleKind) -> BlockMatrix {
    let src = ChainBlock::new(n + 1, degree, module);
    let dst = ChainBlock::new(n, degree, module);
    boundary_matrix(&src, &dst)
}
