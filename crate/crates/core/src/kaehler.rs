//! Differential forms of monomial algebras: `sigma`, `tau`, the ideal `I`
//! of the product map, `Omega = I / Im(tau)`, its identification with the
//! first Hochschild homology, and the splitting maps for `C = A ⊗ B`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::exactq::{
    image_basis, kernel_basis, rank, subspace_equal, Basis, BlockMatrix, Echelon, ExactScalar, Insert, SparseVec,
    SubspaceBasis,
};
use crate::hochschild::{boundary_matrix, ChainBlock, ChainVector, MonomialChain};
use crate::monomial::{ModuleKind, Monomial, MultiDegree};
use crate::report::Check;

fn sign(s: i64) -> ExactScalar {
    ExactScalar::from_int(s)
}

fn mul(a: &Monomial, b: &Monomial) -> Monomial {
    Monomial::new(a.exponents().iter().zip(b.exponents()).map(|(x, y)| x + y).collect())
}

fn pair(x: &Monomial, y: &Monomial) -> MonomialChain {
    MonomialChain::new(x, std::slice::from_ref(y)).expect("same variable count")
}

/// `sigma(x ⊗ y) = x ⊗ y - xy ⊗ 1`.
pub fn sigma(x: &Monomial, y: &Monomial) -> ChainVector {
    let mut out = ChainVector::zero(1, x.k(), ModuleKind::Regular);
    out.add_term(pair(x, y), &ExactScalar::one());
    out.add_term(pair(&mul(x, y), &Monomial::one(x.k())), &sign(-1));
    out
}

/// `tau(x, y, a) = x ⊗ ya - xy ⊗ a - ax ⊗ y + axy ⊗ 1`.
pub fn tau(x: &Monomial, y: &Monomial, a: &Monomial) -> ChainVector {
    let one = Monomial::one(x.k());
    let mut out = ChainVector::zero(1, x.k(), ModuleKind::Regular);
    out.add_term(pair(x, &mul(y, a)), &sign(1));
    out.add_term(pair(&mul(x, y), a), &sign(-1));
    out.add_term(pair(&mul(a, x), y), &sign(-1));
    out.add_term(pair(&mul(&mul(a, x), y), &one), &sign(1));
    out
}

fn regular_block(legs: usize, degree: &MultiDegree) -> ChainBlock {
    ChainBlock::new(legs, degree, &ModuleKind::Regular)
}

/// The product `A ⊗ A -> A` on the degree block (one row, `z^N`).
pub fn product_block(degree: &MultiDegree) -> BlockMatrix {
    let src = regular_block(1, degree);
    let rows = Basis::new(vec![Monomial::new(degree.exponents().to_vec()).to_string()]).expect("one label");
    let columns = (0..src.len()).map(|_| SparseVec::unit(0)).collect();
    BlockMatrix::from_columns(rows, src.basis().clone(), columns).expect("shapes")
}

/// `sigma` as an endomorphism of the `A ⊗ A` block.
pub fn sigma_block(degree: &MultiDegree) -> BlockMatrix {
    let b = regular_block(1, degree);
    let columns = b
        .chains()
        .iter()
        .map(|c| b.coordinates(&sigma(&c.slot(), &c.leg(1))).expect("same degree"))
        .collect();
    BlockMatrix::from_columns(b.basis().clone(), b.basis().clone(), columns).expect("shapes")
}

/// `tau` from the three-factor block (basis `x | y | a`) to `A ⊗ A`.
pub fn tau_block(degree: &MultiDegree) -> BlockMatrix {
    let src = regular_block(2, degree);
    let dst = regular_block(1, degree);
    let columns = src
        .chains()
        .iter()
        .map(|c| dst.coordinates(&tau(&c.slot(), &c.leg(1), &c.leg(2))).expect("same degree"))
        .collect();
    BlockMatrix::from_columns(dst.basis().clone(), src.basis().clone(), columns).expect("shapes")
}

/// The kernel of the product map on one block.
#[derive(Clone, Debug)]
pub struct IdealBlockBasis {
    pub degree: MultiDegree,
    pub basis: SubspaceBasis,
}

pub fn ideal_block_basis(degree: &MultiDegree) -> IdealBlockBasis {
    IdealBlockBasis { degree: degree.clone(), basis: kernel_basis(&product_block(degree)) }
}

/// `I / Im(tau)` on one block, with representatives of a complement.
#[derive(Clone, Debug)]
pub struct OmegaBlock {
    pub degree: MultiDegree,
    pub dim: usize,
    pub ideal_dim: usize,
    pub tau_rank: usize,
    pub representatives: SubspaceBasis,
}

/// Vectors of `extra` completing the span of `base`, in order.
fn complement(dim: usize, base: &[SparseVec], extra: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::new(dim);
    for v in base {
        ech.insert(v);
    }
    extra.iter().filter(|v| matches!(ech.insert(v), Insert::Independent(_))).cloned().collect()
}

pub fn omega_block(degree: &MultiDegree) -> OmegaBlock {
    let ideal = ideal_block_basis(degree);
    let t = tau_block(degree);
    let im = image_basis(&t);
    let reps = complement(t.nrows(), im.vectors(), ideal.basis.vectors());
    let ideal_dim = ideal.basis.dim();
    let tau_rank = im.dim();
    OmegaBlock {
        degree: degree.clone(),
        dim: ideal_dim - tau_rank,
        ideal_dim,
        tau_rank,
        representatives: SubspaceBasis::new(t.rows().clone(), reps).expect("independent"),
    }
}

fn in_span(ech_base: &[SparseVec], dim: usize, v: &SparseVec) -> bool {
    let mut ech = Echelon::new(dim);
    for b in ech_base {
        ech.insert(b);
    }
    ech.contains(v)
}

/// `sigma d_1 = -tau` on the three-factor block.
pub fn sigma_boundary_check(degree: &MultiDegree) -> Check {
    let name = "sigma-d1-equals-minus-tau";
    let c1 = regular_block(1, degree);
    let c2 = regular_block(2, degree);
    let lhs = sigma_block(degree).mul(&boundary_matrix(&c2, &c1)).expect("composable");
    let rhs = tau_block(degree).scale(&sign(-1));
    match (0..lhs.ncols()).find(|&j| lhs.column(j) != rhs.column(j)) {
        None => Check::pass(name),
        Some(j) => Check::fail(name, c2.basis().label(j)),
    }
}

/// The identification of the first homology block with the Omega block by
/// `sigma` and the inclusion `J` of the ideal, each checked to invert the
/// other modulo the relevant image.
pub fn verify_hh1_iso(degree: &MultiDegree) -> Vec<Check> {
    let c1 = regular_block(1, degree);
    let c2 = regular_block(2, degree);
    let dim = c1.len();
    let d1 = boundary_matrix(&c2, &c1);
    let sig = sigma_block(degree);
    let ideal = ideal_block_basis(degree);
    let omega = omega_block(degree);
    let im_tau = image_basis(&tau_block(degree));
    let boundaries = image_basis(&d1);
    let mut out = Vec::new();

    // sigma J = id on I.
    let bad = ideal.basis.vectors().iter().find(|w| sig.mul_vec(w).expect("shape") != **w);
    out.push(match bad {
        None => Check::pass("hh1-sigma-J-identity"),
        Some(w) => Check::fail("hh1-sigma-J-identity", c1.basis().render(w)),
    });

    // (id - J sigma)(x ⊗ y) = d_1(xy ⊗ 1 ⊗ 1).
    let one = Monomial::one(degree.k());
    let bad = c1.chains().iter().enumerate().find(|(j, c)| {
        let x = SparseVec::unit(*j);
        let lhs = x.sub(&sig.mul_vec(&x).expect("shape"));
        let pre = MonomialChain::new(&mul(&c.slot(), &c.leg(1)), &[one.clone(), one.clone()]).expect("k");
        let e = c2.index_of(&pre).expect("same degree");
        lhs != *d1.column(e)
    });
    out.push(match bad {
        None => Check::pass("hh1-unit-correction"),
        Some((_, c)) => Check::fail("hh1-unit-correction", c.to_string()),
    });

    // sigma~ J~ = id on Omega representatives, modulo Im(tau).
    let bad = omega.representatives.vectors().iter().find(|w| {
        let back = sig.mul_vec(w).expect("shape");
        !in_span(im_tau.vectors(), dim, &back.sub(w))
    });
    out.push(match bad {
        None => Check::pass("hh1-omega-roundtrip"),
        Some(w) => Check::fail("hh1-omega-roundtrip", c1.basis().render(w)),
    });

    // J~ sigma~ = id on homology representatives, modulo boundaries.
    let units: Vec<SparseVec> = (0..dim).map(SparseVec::unit).collect();
    let h_reps = complement(dim, boundaries.vectors(), &units);
    let bad = h_reps.iter().find(|h| {
        let back = sig.mul_vec(h).expect("shape");
        !in_span(boundaries.vectors(), dim, &back.sub(h))
    });
    out.push(match bad {
        None => Check::pass("hh1-homology-roundtrip"),
        Some(h) => Check::fail("hh1-homology-roundtrip", c1.basis().render(h)),
    });

    let ok = h_reps.len() == omega.dim;
    out.push(if ok {
        Check::pass("hh1-dimension")
    } else {
        Check::fail("hh1-dimension", format!("N={degree:?}: H_1 {} vs Omega {}", h_reps.len(), omega.dim))
    });
    out
}

/// `Im(tau) = I^[2]`, the span of products of pairs of ideal elements,
/// together with `tau alpha = mu (sigma ⊗ sigma)` on every four-tuple.
pub fn i_squared_check(degree: &MultiDegree) -> Check {
    let name = "i-squared-equals-image-tau";
    let k = degree.k();
    let dst = regular_block(1, degree);
    let quads = regular_block(3, degree);
    let mut columns = Vec::with_capacity(quads.len());
    for c in quads.chains() {
        let (x1, x2, y1, y2) = (c.slot(), c.leg(1), c.leg(2), c.leg(3));
        // (x1 ⊗ x2 - x1x2 ⊗ 1)(y1 ⊗ y2 - y1y2 ⊗ 1), multiplied factorwise
        let one = Monomial::one(k);
        let left = [(x1.clone(), x2.clone(), 1), (mul(&x1, &x2), one.clone(), -1)];
        let right = [(y1.clone(), y2.clone(), 1), (mul(&y1, &y2), one.clone(), -1)];
        let mut prod = ChainVector::zero(1, k, ModuleKind::Regular);
        for (p, q, s) in &left {
            for (r, t, u) in &right {
                prod.add_term(pair(&mul(p, r), &mul(q, t)), &sign(s * u));
            }
        }
        let alpha = tau(&mul(&x1, &y1), &x2, &y2);
        if alpha != prod {
            return Check::fail(name, c.to_string());
        }
        columns.push(dst.coordinates(&prod).expect("same degree"));
    }
    let products = BlockMatrix::from_columns(dst.basis().clone(), quads.basis().clone(), columns).expect("shapes");
    let a = image_basis(&tau_block(degree));
    let b = image_basis(&products);
    match subspace_equal(&a, &b) {
        Ok(true) => Check::pass(name),
        _ => Check::fail(name, format!("N={degree:?}")),
    }
}

/// Omega dimension of `R_k` at `degree`, computed directly and as the sum
/// over variables of one-variable Omega blocks.
pub fn omega_kunneth_dims(degree: &MultiDegree) -> (usize, usize) {
    let direct = omega_block(degree).dim;
    let summed = degree.exponents().iter().map(|&e| omega_block(&MultiDegree(vec![e])).dim).sum();
    (direct, summed)
}

/// `#{i : N_i >= 1}`.
pub fn omega_expected_dim(degree: &MultiDegree) -> usize {
    degree.exponents().iter().filter(|&&e| e >= 1).count()
}

/// A finite combination of tensors of monomials, one monomial per factor.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Tensor {
    terms: BTreeMap<Vec<Monomial>, ExactScalar>,
}

impl Tensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, factors: Vec<Monomial>, c: &ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&factors) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&factors);
                }
            }
            None => {
                self.terms.insert(factors, c.clone());
            }
        }
    }

    pub fn add(&mut self, other: &Tensor, c: &ExactScalar) {
        for (f, x) in &other.terms {
            self.add_term(f.clone(), &(x * c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &ExactScalar)> {
        self.terms.iter()
    }

    /// Applies a basis map and sums the images.
    pub fn map<F: Fn(&[Monomial]) -> Tensor>(&self, f: F) -> Tensor {
        let mut out = Tensor::zero();
        for (factors, x) in &self.terms {
            out.add(&f(factors), x);
        }
        out
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, x)| format!("({x})*{}", m.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("|")))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn t_sigma(x: &Monomial, y: &Monomial) -> Tensor {
    let mut t = Tensor::zero();
    t.add_term(vec![x.clone(), y.clone()], &sign(1));
    t.add_term(vec![mul(x, y), Monomial::one(x.k())], &sign(-1));
    t
}

fn t_tau(x: &Monomial, y: &Monomial, a: &Monomial) -> Tensor {
    let one = Monomial::one(x.k());
    let mut t = Tensor::zero();
    t.add_term(vec![x.clone(), mul(y, a)], &sign(1));
    t.add_term(vec![mul(x, y), a.clone()], &sign(-1));
    t.add_term(vec![mul(a, x), y.clone()], &sign(-1));
    t.add_term(vec![mul(&mul(a, x), y), one], &sign(1));
    t
}

/// Appends a factor to every term (`t ⊗ m`).
fn append(t: &Tensor, m: &Monomial) -> Tensor {
    t.map(|f| {
        let mut g = f.to_vec();
        g.push(m.clone());
        let mut out = Tensor::zero();
        out.add_term(g, &ExactScalar::one());
        out
    })
}

/// Prepends a factor to every term (`m ⊗ t`).
fn prepend(m: &Monomial, t: &Tensor) -> Tensor {
    t.map(|f| {
        let mut g = vec![m.clone()];
        g.extend_from_slice(f);
        let mut out = Tensor::zero();
        out.add_term(g, &ExactScalar::one());
        out
    })
}

/// An element of `(A ⊗ A) ⊗ B ⊕ A ⊗ (B ⊗ B)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitPair {
    pub a_side: Tensor,
    pub b_side: Tensor,
}

impl SplitPair {
    pub fn is_zero(&self) -> bool {
        self.a_side.is_zero() && self.b_side.is_zero()
    }

    fn add(&mut self, other: &SplitPair, c: &ExactScalar) {
        self.a_side.add(&other.a_side, c);
        self.b_side.add(&other.b_side, c);
    }
}

/// `C = A ⊗ B` presented as `R_{k_a + k_b}`, the first `k_a` variables
/// belonging to `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KunnethSplit {
    pub k_a: usize,
    pub k_b: usize,
}

impl KunnethSplit {
    pub fn new(k_a: usize, k_b: usize) -> Self {
        KunnethSplit { k_a, k_b }
    }

    pub fn split(&self, c: &Monomial) -> (Monomial, Monomial) {
        let e = c.exponents();
        (Monomial::new(e[..self.k_a].to_vec()), Monomial::new(e[self.k_a..].to_vec()))
    }

    pub fn join(&self, a: &Monomial, b: &Monomial) -> Monomial {
        let mut e = a.exponents().to_vec();
        e.extend_from_slice(b.exponents());
        Monomial::new(e)
    }

    fn one_a(&self) -> Monomial {
        Monomial::one(self.k_a)
    }

    fn one_b(&self) -> Monomial {
        Monomial::one(self.k_b)
    }

    /// `preEx(sigma_C(u ⊗ w)) = (sigma_A(a ⊗ x) ⊗ by, ax ⊗ sigma_B(b ⊗ y))`
    /// for `u = ab`, `w = xy`.
    pub fn pre_ex(&self, u: &Monomial, w: &Monomial) -> SplitPair {
        let (a, b) = self.split(u);
        let (x, y) = self.split(w);
        SplitPair { a_side: append(&t_sigma(&a, &x), &mul(&b, &y)), b_side: prepend(&mul(&a, &x), &t_sigma(&b, &y)) }
    }

    /// `preEx` on a `C ⊗ C` combination.
    pub fn pre_ex_tensor(&self, t: &Tensor) -> SplitPair {
        let mut out = SplitPair::default();
        for (f, x) in t.terms() {
            out.add(&self.pre_ex(&f[0], &f[1]), x);
        }
        out
    }

    /// `u ⊗ x ⊗ b -> sigma_C(ub ⊗ x)`.
    pub fn pre_ass_a(&self, u: &Monomial, x: &Monomial, b: &Monomial) -> Tensor {
        t_sigma(&self.join(u, b), &self.join(x, &self.one_b()))
    }

    /// `a ⊗ v ⊗ y -> sigma_C(av ⊗ y)`.
    pub fn pre_ass_b(&self, a: &Monomial, v: &Monomial, y: &Monomial) -> Tensor {
        t_sigma(&self.join(a, v), &self.join(&self.one_a(), y))
    }

    pub fn pre_ass(&self, p: &SplitPair) -> Tensor {
        let mut out = p.a_side.map(|f| self.pre_ass_a(&f[0], &f[1], &f[2]));
        out.add(&p.b_side.map(|f| self.pre_ass_b(&f[0], &f[1], &f[2])), &ExactScalar::one());
        out
    }

    /// `theta((x1 y1) ⊗ (x2 y2) ⊗ (a b))`: `(x1 ⊗ x2 ⊗ a) ⊗ b y1 y2` and
    /// `a x1 x2 ⊗ (y1 ⊗ y2 ⊗ b)`.
    pub fn theta(&self, p: &Monomial, q: &Monomial, r: &Monomial) -> SplitPair {
        let (x1, y1) = self.split(p);
        let (x2, y2) = self.split(q);
        let (a, b) = self.split(r);
        let mut pair = SplitPair::default();
        pair.a_side.add_term(vec![x1.clone(), x2.clone(), a.clone(), mul(&mul(&b, &y1), &y2)], &ExactScalar::one());
        pair.b_side.add_term(vec![mul(&mul(&a, &x1), &x2), y1, y2, b], &ExactScalar::one());
        pair
    }

    /// `(tau_A ⊗ id, id ⊗ tau_B)` on a pair of four-factor tensors.
    pub fn tau_pair(&self, p: &SplitPair) -> SplitPair {
        SplitPair {
            a_side: p.a_side.map(|f| append(&t_tau(&f[0], &f[1], &f[2]), &f[3])),
            b_side: p.b_side.map(|f| prepend(&f[0], &t_tau(&f[1], &f[2], &f[3]))),
        }
    }

    /// `gamma`: `x1 ⊗ x2 ⊗ u ⊗ b -> (x1 b) ⊗ x2 ⊗ u` and
    /// `a ⊗ y1 ⊗ y2 ⊗ v -> (a y1) ⊗ y2 ⊗ v` in `C ⊗ C ⊗ C`.
    pub fn gamma(&self, p: &SplitPair) -> Tensor {
        let (oa, ob) = (self.one_a(), self.one_b());
        let mut out = p.a_side.map(|f| {
            let mut t = Tensor::zero();
            t.add_term(vec![self.join(&f[0], &f[3]), self.join(&f[1], &ob), self.join(&f[2], &ob)], &ExactScalar::one());
            t
        });
        out.add(
            &p.b_side.map(|f| {
                let mut t = Tensor::zero();
                t.add_term(vec![self.join(&f[0], &f[1]), self.join(&oa, &f[2]), self.join(&oa, &f[3])], &ExactScalar::one());
                t
            }),
            &ExactScalar::one(),
        );
        out
    }

    /// `rho(ab ⊗ xy) = -(ab) ⊗ x ⊗ y` in `C ⊗ C ⊗ C`.
    pub fn rho(&self, u: &Monomial, w: &Monomial) -> Tensor {
        let (x, y) = self.split(w);
        let mut t = Tensor::zero();
        t.add_term(vec![u.clone(), self.join(&x, &self.one_b()), self.join(&self.one_a(), &y)], &sign(-1));
        t
    }

    fn tau_c(&self, t: &Tensor) -> Tensor {
        t.map(|f| t_tau(&f[0], &f[1], &f[2]))
    }

    /// `preEx tau_C = (tau_A ⊗ id, id ⊗ tau_B) theta` on every triple of
    /// `C`-monomials of total order at most `deg_max`.
    pub fn verify_claim1(&self, deg_max: u32) -> Check {
        let name = "kunneth-claim1-theta";
        let kc = self.k_a + self.k_b;
        for e in exponent_vectors(3 * kc, deg_max) {
            let m: Vec<Monomial> = e.chunks(kc).map(|c| Monomial::new(c.to_vec())).collect();
            let lhs = self.pre_ex_tensor(&t_tau(&m[0], &m[1], &m[2]));
            let rhs = self.tau_pair(&self.theta(&m[0], &m[1], &m[2]));
            if lhs != rhs {
                return Check::fail(name, witness(&m));
            }
        }
        Check::pass(name)
    }

    /// `preAss (tau_A ⊗ id, id ⊗ tau_B) = tau_C gamma` on every generator of
    /// either side of total order at most `deg_max`.
    pub fn verify_claim2(&self, deg_max: u32) -> Check {
        let name = "kunneth-claim2-gamma";
        let (ka, kb) = (self.k_a, self.k_b);
        for (widths, a_side) in [([ka, ka, ka, kb], true), ([ka, kb, kb, kb], false)] {
            for e in exponent_vectors(widths.iter().sum(), deg_max) {
                let m = chop(&e, &widths);
                let mut p = SplitPair::default();
                let target = if a_side { &mut p.a_side } else { &mut p.b_side };
                target.add_term(m.clone(), &ExactScalar::one());
                let lhs = self.pre_ass(&self.tau_pair(&p));
                let rhs = self.tau_c(&self.gamma(&p));
                if lhs != rhs {
                    return Check::fail(name, witness(&m));
                }
            }
        }
        Check::pass(name)
    }

    /// `preAss preEx sigma_C - sigma_C = tau_C rho` on `C ⊗ C`, and
    /// `preEx preAss = id` on generators `sigma_A(u ⊗ x) ⊗ b` and
    /// `a ⊗ sigma_B(v ⊗ y)`, all of total order at most `deg_max`.
    pub fn verify_step3(&self, deg_max: u32) -> Vec<Check> {
        let kc = self.k_a + self.k_b;
        let mut homotopy = Check::pass("kunneth-step3-rho");
        for e in exponent_vectors(2 * kc, deg_max) {
            let m = chop(&e, &[kc, kc]);
            let mut lhs = self.pre_ass(&self.pre_ex(&m[0], &m[1]));
            lhs.add(&t_sigma(&m[0], &m[1]), &sign(-1));
            if lhs != self.tau_c(&self.rho(&m[0], &m[1])) {
                homotopy = Check::fail("kunneth-step3-rho", witness(&m));
                break;
            }
        }
        let mut inverse = Check::pass("kunneth-preEx-preAss-identity");
        let (ka, kb) = (self.k_a, self.k_b);
        'outer: for (widths, a_side) in [([ka, ka, kb], true), ([ka, kb, kb], false)] {
            for e in exponent_vectors(widths.iter().sum(), deg_max) {
                let m = chop(&e, &widths);
                let mut gen = SplitPair::default();
                if a_side {
                    gen.a_side = append(&t_sigma(&m[0], &m[1]), &m[2]);
                } else {
                    gen.b_side = prepend(&m[0], &t_sigma(&m[1], &m[2]));
                }
                if self.pre_ex_tensor(&self.pre_ass(&gen)) != gen {
                    inverse = Check::fail("kunneth-preEx-preAss-identity", witness(&m));
                    break 'outer;
                }
            }
        }
        vec![homotopy, inverse]
    }

    /// `dim Omega(C) = dim Omega(A) + dim Omega(B)` on the block of `degree`
    /// (monomial blocks of `A` and `B` are one-dimensional).
    pub fn omega_split_dims(&self, degree: &MultiDegree) -> (usize, usize) {
        let e = degree.exponents();
        let a = omega_block(&MultiDegree(e[..self.k_a].to_vec())).dim;
        let b = omega_block(&MultiDegree(e[self.k_a..].to_vec())).dim;
        (omega_block(degree).dim, a + b)
    }
}

fn chop(e: &[u32], widths: &[usize]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(widths.len());
    let mut at = 0;
    for w in widths {
        out.push(Monomial::new(e[at..at + w].to_vec()));
        at += w;
    }
    out
}

fn witness(m: &[Monomial]) -> String {
    m.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("|")
}

/// All exponent vectors of length `len` with entry sum at most `max`.
fn exponent_vectors(len: usize, max: u32) -> Vec<Vec<u32>> {
    fn go(len: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            go(len, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, max, &mut Vec::with_capacity(len), &mut out);
    out
}

/// `sigma d_1 = -tau`, the Omega/H_1 identification and `I^[2] = Im(tau)`
/// over every degree of total order at most `deg_max`, merged by name.
pub fn kaehler_suite(k: usize, deg_max: u32) -> Vec<Check> {
    let per: Vec<Vec<Check>> = MultiDegree::all_up_to(k, deg_max)
        .par_iter()
        .map(|d| {
            let mut v = vec![sigma_boundary_check(d)];
            v.extend(verify_hh1_iso(d));
            v
        })
        .collect();
    let mut log = crate::report::CheckLog::new();
    for c in per.into_iter().flatten() {
        log.push(c);
    }
    log.into_checks()
}

/// Rank of the product map on one block (1 for every degree).
pub fn product_rank(degree: &MultiDegree) -> usize {
    rank(&product_block(degree))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(e: u32) -> Monomial {
        Monomial::new(vec![e])
    }

    #[test]
    fn sigma_and_tau_examples() {
        let s = sigma(&z(1), &z(1));
        let expected =
            ChainVector::parse_terms(ModuleKind::Regular, &[("z^[1]|z^[1]", sign(1)), ("z^[2]|z^[0]", sign(-1))]).unwrap();
        assert_eq!(s, expected);
        assert!(sigma(&z(3), &z(0)).is_zero());
        assert!(tau(&z(1), &z(1), &z(0)).is_zero());
        let t = tau(&z(1), &z(1), &z(1));
        let expected = ChainVector::parse_terms(
            ModuleKind::Regular,
            &[("z^[1]|z^[2]", sign(1)), ("z^[2]|z^[1]", sign(-2)), ("z^[3]|z^[0]", sign(1))],
        )
        .unwrap();
        assert_eq!(t, expected);
    }

    #[test]
    fn ideal_and_omega_dims() {
        assert_eq!(ideal_block_basis(&MultiDegree(vec![0])).basis.dim(), 0);
        assert_eq!(ideal_block_basis(&MultiDegree(vec![1])).basis.dim(), 1);
        assert_eq!(ideal_block_basis(&MultiDegree(vec![2])).basis.dim(), 2);
        assert_eq!(omega_block(&MultiDegree(vec![0])).dim, 0);
        for n in 1..=8 {
            assert_eq!(omega_block(&MultiDegree(vec![n])).dim, 1);
        }
        assert_eq!(omega_block(&MultiDegree(vec![1, 1])).dim, 2);
        assert_eq!(omega_kunneth_dims(&MultiDegree(vec![0, 3])), (1, 1));
        assert_eq!(product_rank(&MultiDegree(vec![2, 1])), 1);
    }

    #[test]
    fn sigma_image_lies_in_the_ideal() {
        let d = MultiDegree(vec![2, 1]);
        let prod = product_block(&d);
        let s = sigma_block(&d);
        assert!(prod.mul(&s).unwrap().is_zero());
        let ideal = ideal_block_basis(&d);
        assert!(subspace_equal(&image_basis(&s), &ideal.basis).unwrap());
    }

    #[test]
    fn small_kaehler_checks() {
        for c in kaehler_suite(2, 4) {
            assert!(c.passed(), "{c:?}");
        }
        for d in MultiDegree::all_up_to(2, 4) {
            assert!(i_squared_check(&d).passed(), "{d:?}");
        }
    }

    #[test]
    fn splitting_maps_on_generators() {
        let s = KunnethSplit::new(1, 1);
        let one = Monomial::one(2);
        assert!(s.pre_ex(&Monomial::new(vec![2, 1]), &one).is_zero());
        let p = s.pre_ex(&one, &Monomial::new(vec![1, 0]));
        let mut expected = SplitPair::default();
        expected.a_side = append(&t_sigma(&z(0), &z(1)), &z(0));
        assert_eq!(p, expected);
        assert!(s.pre_ass_a(&z(2), &z(0), &z(1)).is_zero());
        assert!(s.verify_claim1(3).passed());
        assert!(s.verify_claim2(3).passed());
        for c in s.verify_step3(3) {
            assert!(c.passed(), "{c:?}");
        }
        assert_eq!(s.omega_split_dims(&MultiDegree(vec![1, 1])), (2, 2));
    }

    #[test]
    fn uneven_splits() {
        for (ka, kb) in [(2, 1), (1, 2)] {
            let s = KunnethSplit::new(ka, kb);
            assert!(s.verify_claim1(2).passed());
            assert!(s.verify_claim2(3).passed());
            for c in s.verify_step3(3) {
                assert!(c.passed(), "{c:?}");
            }
            for d in MultiDegree::all_up_to(3, 4) {
                let (whole, parts) = s.omega_split_dims(&d);
                assert_eq!(whole, parts, "{d:?}");
            }
        }
    }
}
