use std::collections::BTreeMap;
use std::fmt;

use crate::exactq::ExactScalar;
use crate::monomial::{write_monomial, ModuleKind, Monomial, MonomialError, MultiDegree};
use crate::symgroup::Permutation;

use super::HochschildError;

/// An elementary tensor `m | a_1 | ... | a_n` of monomials, stored as one
/// flat exponent array (slot first, then each leg).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialChain {
    k: u16,
    exps: Box<[u32]>,
}

impl MonomialChain {
    pub(crate) fn from_flat(k: usize, exps: Vec<u32>) -> Self {
        debug_assert!(k == 0 || exps.len().is_multiple_of(k));
        MonomialChain { k: k as u16, exps: exps.into_boxed_slice() }
    }

    pub fn new(slot: &Monomial, legs: &[Monomial]) -> Result<Self, MonomialError> {
        let k = slot.k();
        let mut exps = slot.exponents().to_vec();
        for l in legs {
            if l.k() != k {
                return Err(MonomialError::VariableCount(k, l.k()));
            }
            exps.extend_from_slice(l.exponents());
        }
        Ok(Self::from_flat(k, exps))
    }

    /// Parses `m|a1|...|an` with `z^[...]` monomials.
    pub fn parse(s: &str) -> Result<Self, MonomialError> {
        let parts = s
            .split('|')
            .map(|p| p.parse::<Monomial>())
            .collect::<Result<Vec<_>, _>>()?;
        let (slot, legs) = parts.split_first().ok_or_else(|| MonomialError::Parse(s.to_string()))?;
        Self::new(slot, legs)
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn legs(&self) -> usize {
        if self.k == 0 {
            return 0;
        }
        self.exps.len() / self.k as usize - 1
    }

    pub fn slot_exponents(&self) -> &[u32] {
        &self.exps[..self.k()]
    }

    /// Exponents of leg `j` (one-based).
    pub fn leg_exponents(&self, j: usize) -> &[u32] {
        let k = self.k();
        &self.exps[j * k..(j + 1) * k]
    }

    pub fn slot(&self) -> Monomial {
        Monomial::new(self.slot_exponents().to_vec())
    }

    pub fn leg(&self, j: usize) -> Monomial {
        Monomial::new(self.leg_exponents(j).to_vec())
    }

    pub fn total_degree(&self) -> MultiDegree {
        let k = self.k();
        let mut d = vec![0u32; k];
        for (i, e) in self.exps.iter().enumerate() {
            d[i % k] += e;
        }
        MultiDegree(d)
    }

    pub fn total_order(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Legs permuted by `sigma`: leg `j` moves to position `sigma(j)`.
    pub fn permute_legs(&self, sigma: &Permutation) -> MonomialChain {
        let k = self.k();
        let n = self.legs();
        debug_assert_eq!(sigma.degree(), n);
        let mut exps = self.exps.to_vec();
        for j in 1..=n {
            let to = sigma.apply(j);
            exps[to * k..(to + 1) * k].copy_from_slice(self.leg_exponents(j));
        }
        Self::from_flat(k, exps)
    }

    /// The orbit of this chain under leg permutations is identified by the
    /// slot together with the sorted multiset of legs.
    pub(crate) fn orbit_key(&self) -> MonomialChain {
        let k = self.k();
        let mut legs: Vec<&[u32]> = (1..=self.legs()).map(|j| self.leg_exponents(j)).collect();
        legs.sort();
        let mut exps = self.slot_exponents().to_vec();
        for l in legs {
            exps.extend_from_slice(l);
        }
        Self::from_flat(k, exps)
    }

    /// The j-th face map (`0 <= j <= n+1` for `n+1` legs). `None` when the
    /// coefficient module kills the result.
    pub fn face(&self, j: usize, module: &ModuleKind) -> Result<Option<MonomialChain>, HochschildError> {
        let k = self.k();
        let legs = self.legs();
        if legs == 0 || j > legs {
            return Err(HochschildError::FaceIndex { index: j, legs });
        }
        let mut exps = Vec::with_capacity(self.exps.len() - k);
        if j == 0 || j == legs {
            // Absorb the first (j = 0) or last leg into the slot; the module
            // is symmetric so both act on the same side.
            let absorbed = if j == 0 { 1 } else { legs };
            let slot: Vec<u32> = self
                .slot_exponents()
                .iter()
                .zip(self.leg_exponents(absorbed))
                .map(|(a, b)| a + b)
                .collect();
            if !module.admits_slot(&slot) {
                return Ok(None);
            }
            exps.extend_from_slice(&slot);
            for l in (1..=legs).filter(|&l| l != absorbed) {
                exps.extend_from_slice(self.leg_exponents(l));
            }
        } else {
            exps.extend_from_slice(self.slot_exponents());
            for l in 1..=legs {
                if l == j {
                    let merged = self.leg_exponents(j).iter().zip(self.leg_exponents(j + 1)).map(|(a, b)| a + b);
                    exps.extend(merged);
                } else if l != j + 1 {
                    exps.extend_from_slice(self.leg_exponents(l));
                }
            }
        }
        Ok(Some(Self::from_flat(k, exps)))
    }
}

impl fmt::Display for MonomialChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, self.slot_exponents())?;
        for j in 1..=self.legs() {
            f.write_str("|")?;
            write_monomial(f, self.leg_exponents(j))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MonomialChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite rational combination of monomial chains with a common shape.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainVector {
    legs: usize,
    k: usize,
    module: ModuleKind,
    terms: BTreeMap<MonomialChain, ExactScalar>,
}

impl ChainVector {
    pub fn zero(legs: usize, k: usize, module: ModuleKind) -> Self {
        ChainVector { legs, k, module, terms: BTreeMap::new() }
    }

    pub fn from_chain(chain: MonomialChain, module: ModuleKind) -> Self {
        let mut v = Self::zero(chain.legs(), chain.k(), module);
        v.terms.insert(chain, ExactScalar::one());
        v
    }

    /// From `(chain string, coefficient)` pairs; handy in tests.
    pub fn parse_terms(module: ModuleKind, terms: &[(&str, ExactScalar)]) -> Result<Self, MonomialError> {
        let first = MonomialChain::parse(terms.first().map(|t| t.0).unwrap_or("z^[]"))?;
        let mut v = Self::zero(first.legs(), first.k(), module);
        for (s, c) in terms {
            v.add_term(MonomialChain::parse(s)?, c);
        }
        Ok(v)
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn module(&self) -> &ModuleKind {
        &self.module
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonomialChain, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, chain: &MonomialChain) -> ExactScalar {
        self.terms.get(chain).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn add_term(&mut self, chain: MonomialChain, c: &ExactScalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(chain.legs(), self.legs);
        use std::collections::btree_map::Entry;
        match self.terms.entry(chain) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &ChainVector) -> ChainVector {
        let mut out = self.clone();
        for (c, x) in other.terms() {
            out.add_term(c.clone(), x);
        }
        out
    }

    pub fn sub(&self, other: &ChainVector) -> ChainVector {
        self.add(&other.scale(&-ExactScalar::one()))
    }

    pub fn scale(&self, c: &ExactScalar) -> ChainVector {
        let mut out = Self::zero(self.legs, self.k, self.module.clone());
        if !c.is_zero() {
            for (ch, x) in self.terms() {
                out.terms.insert(ch.clone(), x * c);
            }
        }
        out
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter<F: Fn(&MonomialChain) -> bool>(&self, keep: F) -> ChainVector {
        let mut out = Self::zero(self.legs, self.k, self.module.clone());
        for (ch, x) in self.terms().filter(|(ch, _)| keep(ch)) {
            out.terms.insert(ch.clone(), x.clone());
        }
        out
    }

    /// Sum of absolute coefficients (the l1 norm on monomial chains).
    pub fn l1_norm(&self) -> ExactScalar {
        self.terms.values().map(|x| x.abs()).sum()
    }
}

impl fmt::Display for ChainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut parts: Vec<(String, &ExactScalar)> = self.terms.iter().map(|(c, x)| (c.to_string(), x)).collect();
        parts.sort_by(|a, b| a.0.cmp(&b.0));
        for (i, (c, x)) in parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if x.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({x})*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ChainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
