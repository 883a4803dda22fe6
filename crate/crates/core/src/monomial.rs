//! Graded commutative monomial algebras `R_k = Q[z_1..z_k]` and the symmetric
//! coefficient modules used with them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::hochschild::MonomialChain;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonomialError {
    #[error("monomials have different numbers of variables: {0} vs {1}")]
    VariableCount(usize, usize),
    #[error("monomial {monomial} is not admissible for module {module}")]
    IncompatibleKind { monomial: String, module: String },
    #[error("invalid module kind: {0}")]
    BadModule(String),
    #[error("cannot parse monomial {0:?}")]
    Parse(String),
}

/// An exponent vector `alpha`; also used as the multidegree of a block.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn zero(k: usize) -> Self {
        MultiDegree(vec![0; k])
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn checked_add(&self, other: &MultiDegree) -> Result<MultiDegree, MonomialError> {
        if self.k() != other.k() {
            return Err(MonomialError::VariableCount(self.k(), other.k()));
        }
        Ok(MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// All multidegrees with `k` components and total degree at most `max`,
    /// in lexicographic order.
    pub fn all_up_to(k: usize, max: u32) -> Vec<MultiDegree> {
        fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiDegree>) {
            if cur.len() == k {
                out.push(MultiDegree(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur.push(e);
                rec(k, left - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, max, &mut Vec::with_capacity(k), &mut out);
        out
    }

    /// All multidegrees with the given total degree.
    pub fn with_total(k: usize, total: u32) -> Vec<MultiDegree> {
        Self::all_up_to(k, total).into_iter().filter(|d| d.total() == total).collect()
    }
}

impl fmt::Debug for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// The monomial `z^alpha`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(MultiDegree);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(MultiDegree(exps))
    }

    pub fn one(k: usize) -> Self {
        Monomial(MultiDegree::zero(k))
    }

    /// `z_var^e` in `k` variables (`var` one-based).
    pub fn power(k: usize, var: usize, e: u32) -> Self {
        let mut v = vec![0; k];
        v[var - 1] = e;
        Monomial::new(v)
    }

    pub fn degree(&self) -> &MultiDegree {
        &self.0
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0 .0
    }

    pub fn k(&self) -> usize {
        self.0.k()
    }

    pub fn is_one(&self) -> bool {
        self.0 .0.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, self.exponents())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn write_monomial<W: fmt::Write>(w: &mut W, exps: &[u32]) -> fmt::Result {
    w.write_str("z^[")?;
    for (i, e) in exps.iter().enumerate() {
        if i > 0 {
            w.write_char(',')?;
        }
        write!(w, "{e}")?;
    }
    w.write_char(']')
}

impl FromStr for Monomial {
    type Err = MonomialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || MonomialError::Parse(s.to_string());
        let inner = s.trim().strip_prefix("z^[").and_then(|r| r.strip_suffix(']')).ok_or_else(err)?;
        if inner.is_empty() {
            return Ok(Monomial::new(Vec::new()));
        }
        let exps = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| err()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Monomial::new(exps))
    }
}

/// `z^a z^b`.
pub fn mono_mul(a: &Monomial, b: &Monomial) -> Result<Monomial, MonomialError> {
    Ok(Monomial(a.0.checked_add(&b.0)?))
}

/// The symmetric coefficient module of a Hochschild complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleKind {
    /// The algebra acting on itself.
    Regular,
    /// `R_k` modulo every monomial with some exponent `>= m`.
    QuotientTruncation(u32),
    /// `R_{k_total}` as a module over the one-variable algebra `Q[z_var]`.
    VariableRestriction { var: usize, k_total: usize },
}

impl ModuleKind {
    pub fn validate(&self) -> Result<(), MonomialError> {
        match self {
            ModuleKind::QuotientTruncation(0) => Err(MonomialError::BadModule("truncation cap must be >= 1".into())),
            ModuleKind::VariableRestriction { var, k_total } if *var == 0 || var > k_total => {
                Err(MonomialError::BadModule(format!("variable {var} out of range 1..={k_total}")))
            }
            _ => Ok(()),
        }
    }

    /// Whether `exps` is a nonzero basis element of the module.
    pub fn admits_slot(&self, exps: &[u32]) -> bool {
        match self {
            ModuleKind::QuotientTruncation(cap) => exps.iter().all(|e| e < cap),
            _ => true,
        }
    }

    /// Whether `exps` is a monomial of the acting algebra.
    pub fn admits_leg(&self, exps: &[u32]) -> bool {
        match self {
            ModuleKind::VariableRestriction { var, .. } => {
                exps.iter().enumerate().all(|(j, &e)| j + 1 == *var || e == 0)
            }
            _ => true,
        }
    }

    /// Short machine name: `regular`, `trunc:M`, `var:I`.
    pub fn tag(&self) -> String {
        match self {
            ModuleKind::Regular => "regular".into(),
            ModuleKind::QuotientTruncation(m) => format!("trunc:{m}"),
            ModuleKind::VariableRestriction { var, .. } => format!("var:{var}"),
        }
    }

    /// Parses the command-line form; `var:I` needs the ambient `k`.
    pub fn parse(s: &str, k: usize) -> Result<ModuleKind, MonomialError> {
        let bad = || MonomialError::BadModule(s.to_string());
        let kind = match s.split_once(':') {
            None if s == "regular" => ModuleKind::Regular,
            Some(("trunc", m)) => ModuleKind::QuotientTruncation(m.parse().map_err(|_| bad())?),
            Some(("var", i)) => ModuleKind::VariableRestriction { var: i.parse().map_err(|_| bad())?, k_total: k },
            _ => return Err(bad()),
        };
        kind.validate()?;
        Ok(kind)
    }
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// `a . m` for `a` in the algebra and `m` in the module; `None` is zero.
pub fn module_action(a: &Monomial, m: &Monomial, module: &ModuleKind) -> Result<Option<Monomial>, MonomialError> {
    let incompatible = |x: &Monomial| MonomialError::IncompatibleKind { monomial: x.to_string(), module: module.tag() };
    if !module.admits_leg(a.exponents()) {
        return Err(incompatible(a));
    }
    if !module.admits_slot(m.exponents()) {
        return Err(incompatible(m));
    }
    let p = mono_mul(a, m)?;
    Ok(module.admits_slot(p.exponents()).then_some(p))
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of basis chains with `legs` legs in the block of degree `degree`.
pub fn block_dim(legs: usize, degree: &MultiDegree, module: &ModuleKind) -> u64 {
    let n = legs as u64;
    degree
        .exponents()
        .iter()
        .enumerate()
        .map(|(j, &nj)| {
            let nj = nj as u64;
            let leg_var = match module {
                ModuleKind::VariableRestriction { var, .. } => j + 1 == *var,
                _ => true,
            };
            if !leg_var || legs == 0 {
                // The slot takes the whole exponent.
                return u64::from(module.admits_slot(&[nj as u32]));
            }
            match module {
                ModuleKind::QuotientTruncation(cap) => {
                    let smax = nj.min(*cap as u64 - 1);
                    // slot exponent s, the remaining nj - s spread over n legs
                    (0..=smax).map(|s| binomial(nj - s + n - 1, n - 1)).sum()
                }
                _ => binomial(nj + n, n),
            }
        })
        .product()
}

/// All basis chains `m | a_1 | ... | a_n` of total degree `degree`, sorted by
/// their serialized form.
pub fn enumerate_chain_basis(legs: usize, degree: &MultiDegree, module: &ModuleKind) -> Vec<MonomialChain> {
    let k = degree.k();
    let factors = legs + 1;
    // Per variable: every admissible split of N_j over the factors.
    let per_var: Vec<Vec<Vec<u32>>> = degree
        .exponents()
        .iter()
        .enumerate()
        .map(|(j, &nj)| {
            let mut splits = Vec::new();
            compositions(nj, factors, &mut Vec::with_capacity(factors), &mut splits);
            splits.retain(|s| {
                let slot_ok = match module {
                    ModuleKind::QuotientTruncation(cap) => s[0] < *cap,
                    _ => true,
                };
                let legs_ok = match module {
                    ModuleKind::VariableRestriction { var, .. } if j + 1 != *var => s[1..].iter().all(|&e| e == 0),
                    _ => true,
                };
                slot_ok && legs_ok
            });
            splits
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    if per_var.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let mut exps = vec![0u32; factors * k];
        for (j, &c) in idx.iter().enumerate() {
            for (f, &e) in per_var[j][c].iter().enumerate() {
                exps[f * k + j] = e;
            }
        }
        out.push(MonomialChain::from_flat(k, exps));
        // odometer
        let mut j = k;
        loop {
            if j == 0 {
                let mut keyed: Vec<(String, MonomialChain)> = out.into_iter().map(|c| (c.to_string(), c)).collect();
                keyed.sort_by(|a, b| a.0.cmp(&b.0));
                return keyed.into_iter().map(|(_, c)| c).collect();
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < per_var[j].len() {
                break;
            }
            idx[j] = 0;
        }
        if k == 0 {
            return out;
        }
    }
}

fn compositions(total: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() + 1 == parts {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for e in 0..=total {
        cur.push(e);
        compositions(total - e, parts, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(v: &[u32]) -> MultiDegree {
        MultiDegree(v.to_vec())
    }

    #[test]
    fn multiplication() {
        let a = Monomial::new(vec![1, 0]);
        let b = Monomial::new(vec![0, 2]);
        assert_eq!(mono_mul(&a, &b).unwrap(), Monomial::new(vec![1, 2]));
        assert_eq!(mono_mul(&Monomial::one(2), &a).unwrap(), a);
        assert!(mono_mul(&a, &Monomial::one(3)).is_err());
    }

    #[test]
    fn actions() {
        let z = |e| Monomial::new(vec![e]);
        assert_eq!(module_action(&z(1), &z(2), &ModuleKind::Regular).unwrap(), Some(z(3)));
        assert_eq!(module_action(&z(2), &z(2), &ModuleKind::QuotientTruncation(3)).unwrap(), None);
        let vr = ModuleKind::VariableRestriction { var: 1, k_total: 2 };
        assert_eq!(
            module_action(&Monomial::new(vec![1, 0]), &Monomial::new(vec![0, 5]), &vr).unwrap(),
            Some(Monomial::new(vec![1, 5]))
        );
        assert!(module_action(&Monomial::new(vec![0, 1]), &Monomial::new(vec![0, 5]), &vr).is_err());
        assert!(module_action(&z(0), &z(4), &ModuleKind::QuotientTruncation(3)).is_err());
    }

    #[test]
    fn symmetric_bimodule_law() {
        let kinds = [ModuleKind::Regular, ModuleKind::QuotientTruncation(3)];
        for kind in &kinds {
            for a in 0..4 {
                for b in 0..4 {
                    for m in 0..3 {
                        let (a, b, m) = (Monomial::new(vec![a]), Monomial::new(vec![b]), Monomial::new(vec![m]));
                        let ab = mono_mul(&a, &b).unwrap();
                        let lhs = module_action(&b, &m, kind).unwrap().and_then(|bm| module_action(&a, &bm, kind).unwrap());
                        let rhs = module_action(&ab, &m, kind).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let b = enumerate_chain_basis(1, &md(&[1]), &ModuleKind::Regular);
        let names: Vec<String> = b.iter().map(|c| c.to_string()).collect();
        assert_eq!(names, vec!["z^[0]|z^[1]", "z^[1]|z^[0]"]);
        assert_eq!(enumerate_chain_basis(3, &md(&[4]), &ModuleKind::Regular).len(), 35);
        assert_eq!(enumerate_chain_basis(2, &md(&[1, 1]), &ModuleKind::Regular).len(), 9);
        assert_eq!(block_dim(0, &md(&[0]), &ModuleKind::Regular), 1);
        assert_eq!(block_dim(2, &md(&[2]), &ModuleKind::Regular), 6);
        // only the degree-0 slot survives a cap of 1
        let t1 = enumerate_chain_basis(1, &md(&[2]), &ModuleKind::QuotientTruncation(1));
        assert!(t1.iter().all(|c| c.slot_exponents().iter().all(|&e| e == 0)));
        assert_eq!(t1.len(), 1);
        assert_eq!(block_dim(0, &md(&[2]), &ModuleKind::QuotientTruncation(1)), 0);
    }

    #[test]
    fn enumeration_is_sorted_and_counts_match() {
        let kinds = [
            ModuleKind::Regular,
            ModuleKind::QuotientTruncation(2),
            ModuleKind::QuotientTruncation(3),
            ModuleKind::VariableRestriction { var: 2, k_total: 2 },
        ];
        for kind in &kinds {
            for legs in 0..4 {
                for d in MultiDegree::all_up_to(2, 4) {
                    let basis = enumerate_chain_basis(legs, &d, kind);
                    let names: Vec<String> = basis.iter().map(|c| c.to_string()).collect();
                    assert!(names.windows(2).all(|w| w[0] < w[1]), "{kind} {legs} {d:?}");
                    assert_eq!(basis.len() as u64, block_dim(legs, &d, kind), "{kind} {legs} {d:?}");
                    for c in &basis {
                        assert_eq!(c.total_degree(), d);
                        assert!(kind.admits_slot(c.slot_exponents()));
                        assert!((1..=legs).all(|j| kind.admits_leg(c.leg_exponents(j))));
                    }
                }
            }
        }
    }

    #[test]
    fn one_variable_counts_are_binomial() {
        for n in 0..5u64 {
            for nn in 0..7u32 {
                assert_eq!(block_dim(n as usize, &md(&[nn]), &ModuleKind::Regular), binomial(nn as u64 + n, n));
            }
        }
    }

    #[test]
    fn parse_modules_and_monomials() {
        assert_eq!(ModuleKind::parse("regular", 2).unwrap(), ModuleKind::Regular);
        assert_eq!(ModuleKind::parse("trunc:3", 1).unwrap(), ModuleKind::QuotientTruncation(3));
        assert_eq!(
            ModuleKind::parse("var:2", 2).unwrap(),
            ModuleKind::VariableRestriction { var: 2, k_total: 2 }
        );
        assert!(ModuleKind::parse("var:3", 2).is_err());
        assert!(ModuleKind::parse("trunc:0", 2).is_err());
        assert!(ModuleKind::parse("bogus", 2).is_err());
        let m: Monomial = "z^[1,0,3]".parse().unwrap();
        assert_eq!(m, Monomial::new(vec![1, 0, 3]));
        assert_eq!(m.to_string(), "z^[1,0,3]");
    }
}
