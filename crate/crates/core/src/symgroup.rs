//! Permutations, the rational group algebra QS_n, signed shuffles and the
//! Eulerian idempotents.
//!
//! The idempotents are built as spectral projections of the signed total
//! shuffle element `s_n = sum_p sh_{p,n-p}`, whose eigenvalues on QS_n are
//! `2^i - 2` for `1 <= i <= n`:
//!
//! ```text
//! e_n^(i) = prod_{j != i} (s_n - (2^j - 2)) / ((2^i - 2) - (2^j - 2))
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::exactq::ExactScalar;
use crate::hochschild::{ChainVector, MonomialChain};
use crate::report::{Check, CheckLog};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymGroupError {
    #[error("permutation sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("not a permutation of 1..{n}: {images:?}")]
    NotBijection { n: usize, images: Vec<usize> },
    #[error("group algebra degree {expected} does not match {found} chain legs")]
    LegCountMismatch { expected: usize, found: usize },
}

/// A permutation of `{1..n}` in one-line notation (stored zero-based).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Box<[u8]>);

impl Permutation {
    /// From one-based images, e.g. `[2, 1, 3]` for the transposition (12).
    pub fn from_images(images: &[usize]) -> Result<Self, SymGroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] || n > u8::MAX as usize {
                return Err(SymGroupError::NotBijection { n, images: images.to_vec() });
            }
            seen[x - 1] = true;
            out.push((x - 1) as u8);
        }
        Ok(Permutation(out.into_boxed_slice()))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u8).collect())
    }

    /// The transposition swapping `a` and `b` (one-based).
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<u8> = (0..n as u8).collect();
        v.swap(a - 1, b - 1);
        Permutation(v.into_boxed_slice())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Image of `i` (one-based).
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] as usize + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut v = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x as usize] = i as u8;
        }
        Permutation(v.into_boxed_slice())
    }

    fn compose_unchecked(&self, q: &Permutation) -> Permutation {
        Permutation(q.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    /// Parity by inversion count.
    pub fn sign(&self) -> ExactScalar {
        let v = &self.0;
        let mut inv = 0usize;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    inv += 1;
                }
            }
        }
        if inv.is_multiple_of(2) {
            ExactScalar::one()
        } else {
            -ExactScalar::one()
        }
    }

    /// Moves the item at position `j` to position `self(j)`; this is the
    /// left action `sigma . (a_1, ..., a_n) = (a_{sigma^-1(1)}, ..., a_{sigma^-1(n)})`.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Vec<T> {
        let mut out = items.to_vec();
        for (j, item) in items.iter().enumerate() {
            out[self.0[j] as usize] = item.clone();
        }
        out
    }

    /// All permutations of `{1..n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Permutation(cur.clone().into_boxed_slice()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

/// `(p o q)(i) = p(q(i))`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation, SymGroupError> {
    if p.degree() != q.degree() {
        return Err(SymGroupError::SizeMismatch(p.degree(), q.degree()));
    }
    Ok(p.compose_unchecked(q))
}

pub fn sign(p: &Permutation) -> ExactScalar {
    p.sign()
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// An element of QS_n: a sparse rational combination of permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    degree: usize,
    coeffs: BTreeMap<Permutation, ExactScalar>,
}

impl GroupAlgebraElement {
    pub fn zero(degree: usize) -> Self {
        GroupAlgebraElement { degree, coeffs: BTreeMap::new() }
    }

    pub fn identity(degree: usize) -> Self {
        Self::from_terms(degree, [(Permutation::identity(degree), ExactScalar::one())])
            .expect("identity has the right degree")
    }

    pub fn from_terms<I>(degree: usize, terms: I) -> Result<Self, SymGroupError>
    where
        I: IntoIterator<Item = (Permutation, ExactScalar)>,
    {
        let mut out = Self::zero(degree);
        for (p, c) in terms {
            if p.degree() != degree {
                return Err(SymGroupError::SizeMismatch(degree, p.degree()));
            }
            out.add_term(p, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, p: Permutation, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, p: &Permutation) -> ExactScalar {
        self.coeffs.get(p).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &ExactScalar)> {
        self.coeffs.iter()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zero(self.degree);
        for (p, x) in &self.coeffs {
            out.add_term(p.clone(), x * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, SymGroupError> {
        if self.degree != other.degree {
            return Err(SymGroupError::SizeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (p, x) in &other.coeffs {
            out.add_term(p.clone(), x.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SymGroupError> {
        self.add(&other.scale(&-ExactScalar::one()))
    }

    /// Convolution product `sum a(p) b(q) (p o q)`.
    pub fn mul(&self, other: &Self) -> Result<Self, SymGroupError> {
        if self.degree != other.degree {
            return Err(SymGroupError::SizeMismatch(self.degree, other.degree));
        }
        let mut acc: BTreeMap<Permutation, ExactScalar> = BTreeMap::new();
        for (p, a) in &self.coeffs {
            for (q, b) in &other.coeffs {
                let pq = p.compose_unchecked(q);
                let e = acc.entry(pq).or_insert_with(ExactScalar::zero);
                *e += a * b;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(GroupAlgebraElement { degree: self.degree, coeffs: acc })
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(p, c)| format!("({c}){p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn ga_mul(a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> Result<GroupAlgebraElement, SymGroupError> {
    a.mul(b)
}

/// Sum of `sign(s) s` over all (p,q)-shuffles `s`, i.e. the permutations of
/// `{1..p+q}` increasing on `1..p` and on `p+1..p+q`.
pub fn shuffle_sum(p: usize, q: usize) -> GroupAlgebraElement {
    let n = p + q;
    let mut out = GroupAlgebraElement::zero(n);
    // Choose the image set of the first p letters.
    let mut chosen: Vec<usize> = (0..p).collect();
    loop {
        let mut images = vec![0usize; n];
        let mut rest = (0..n).filter(|x| !chosen.contains(x));
        for (j, img) in images.iter_mut().enumerate() {
            *img = if j < p { chosen[j] } else { rest.next().unwrap() } + 1;
        }
        let s = Permutation::from_images(&images).expect("shuffle is a bijection");
        let sg = s.sign();
        out.add_term(s, sg);
        // next p-subset of 0..n in lexicographic order
        let Some(i) = (0..p).rev().find(|&i| chosen[i] < n - p + i) else {
            break;
        };
        chosen[i] += 1;
        for j in i + 1..p {
            chosen[j] = chosen[j - 1] + 1;
        }
    }
    out
}

/// `s_n = sum_{p=1}^{n-1} shuffle_sum(p, n-p)`; zero for n = 1.
pub fn total_shuffle(n: usize) -> GroupAlgebraElement {
    let mut out = GroupAlgebraElement::zero(n);
    for p in 1..n {
        out = out.add(&shuffle_sum(p, n - p)).expect("same degree");
    }
    out
}

/// The eigenvalue `2^i - 2` of `s_n` on the i-th Hodge summand.
pub fn shuffle_eigenvalue(i: usize) -> ExactScalar {
    ExactScalar::pow2(i as i32) - ExactScalar::from_int(2)
}

/// The Eulerian idempotent `e_n^(i)`; zero when `i > n` or `i == 0`.
pub fn eulerian_idempotent(n: usize, i: usize) -> GroupAlgebraElement {
    if i == 0 || i > n {
        return GroupAlgebraElement::zero(n);
    }
    let s = total_shuffle(n);
    let id = GroupAlgebraElement::identity(n);
    let lam_i = shuffle_eigenvalue(i);
    let mut acc = id.clone();
    for j in (1..=n).filter(|&j| j != i) {
        let lam_j = shuffle_eigenvalue(j);
        let factor = s.sub(&id.scale(&lam_j)).expect("same degree");
        let denom = (&lam_i - &lam_j).recip().expect("distinct eigenvalues");
        acc = acc.mul(&factor).expect("same degree").scale(&denom);
    }
    acc
}

/// All idempotents `e_n^(1..=n)` of one degree, sharing the shuffle element.
pub fn eulerian_family(n: usize) -> Vec<GroupAlgebraElement> {
    (1..=n).map(|i| eulerian_idempotent(n, i)).collect()
}

/// `eulerian_family(n)`, computed once per process.
pub fn cached_eulerian_family(n: usize) -> Arc<Vec<GroupAlgebraElement>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<GroupAlgebraElement>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().expect("cache lock").get(&n) {
        return f.clone();
    }
    let f = Arc::new(eulerian_family(n));
    cache.lock().expect("cache lock").entry(n).or_insert(f).clone()
}

/// `(1/n!) sum sign(s) s`.
pub fn antisymmetrizer(n: usize) -> GroupAlgebraElement {
    let all = Permutation::all(n);
    let inv = ExactScalar::ratio(1, all.len() as i64);
    let mut out = GroupAlgebraElement::zero(n);
    for p in all {
        let c = &p.sign() * &inv;
        out.add_term(p, c);
    }
    out
}

/// `(1/n!) sum s`.
pub fn symmetrizer(n: usize) -> GroupAlgebraElement {
    let all = Permutation::all(n);
    let inv = ExactScalar::ratio(1, all.len() as i64);
    GroupAlgebraElement::from_terms(n, all.into_iter().map(|p| (p, inv.clone()))).expect("same degree")
}

/// Orthogonality, idempotency, partition of unity, vanishing above `n`,
/// `e_n^(n)` equal to the antisymmetrizer and the shuffle eigenvalue law,
/// for every `1 <= n <= n_max`.
pub fn idempotent_checks(n_max: usize) -> Vec<Check> {
    let mut log = CheckLog::new();
    for n in 1..=n_max {
        let family = eulerian_family(n);
        let s = total_shuffle(n);
        let mut sum = GroupAlgebraElement::zero(n);
        for (a, ea) in family.iter().enumerate() {
            for (b, eb) in family.iter().enumerate() {
                let prod = ea.mul(eb).expect("same degree");
                if a == b {
                    log.record("idempotency", prod == *ea, || format!("n={n} i={}", a + 1));
                } else {
                    log.record("orthogonality", prod.is_zero(), || format!("n={n} i={} j={}", a + 1, b + 1));
                }
            }
            let se = s.mul(ea).expect("same degree");
            let ok = se == ea.scale(&shuffle_eigenvalue(a + 1));
            log.record("shuffle-eigenvalue", ok, || format!("n={n} i={}", a + 1));
            sum = sum.add(ea).expect("same degree");
        }
        log.record("partition-of-unity", sum == GroupAlgebraElement::identity(n), || format!("n={n}"));
        let ok = eulerian_idempotent(n, n + 1).is_zero() && eulerian_idempotent(n, n + 2).is_zero();
        log.record("vanishing-above-n", ok, || format!("n={n}"));
        let ok = family[n - 1] == antisymmetrizer(n);
        log.record("top-is-antisymmetrizer", ok, || format!("n={n}"));
    }
    log.into_checks()
}

/// Applies `g` to the legs of every chain; the coefficient slot is fixed.
pub fn act_on_chain(g: &GroupAlgebraElement, c: &ChainVector) -> Result<ChainVector, SymGroupError> {
    if g.degree() != c.legs() {
        return Err(SymGroupError::LegCountMismatch { expected: g.degree(), found: c.legs() });
    }
    let mut out = ChainVector::zero(c.legs(), c.k(), c.module().clone());
    for (chain, x) in c.terms() {
        for (image, y) in act_on_monomial_chain(g, chain) {
            out.add_term(image, &(x * &y));
        }
    }
    Ok(out)
}

/// `g` applied to a single basis chain, as `(chain, coefficient)` pairs.
pub fn act_on_monomial_chain(g: &GroupAlgebraElement, chain: &MonomialChain) -> Vec<(MonomialChain, ExactScalar)> {
    let mut acc: BTreeMap<MonomialChain, ExactScalar> = BTreeMap::new();
    for (p, c) in g.terms() {
        let image = chain.permute_legs(p);
        let e = acc.entry(image).or_insert_with(ExactScalar::zero);
        *e += c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_images(v).unwrap()
    }

    #[test]
    fn compose_and_sign() {
        let p = perm(&[2, 3, 1]);
        assert_eq!(compose(&Permutation::identity(3), &p).unwrap(), p);
        let t = Permutation::transposition(2, 1, 2);
        assert!(compose(&t, &t).unwrap().is_identity());
        // (12) o (23): 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
        let c = compose(&Permutation::transposition(3, 1, 2), &Permutation::transposition(3, 2, 3)).unwrap();
        assert_eq!(c.images(), vec![2, 3, 1]);
        assert_eq!(Permutation::identity(4).sign(), ExactScalar::one());
        assert_eq!(Permutation::transposition(4, 2, 4).sign(), -ExactScalar::one());
        assert_eq!(perm(&[2, 3, 1]).sign(), ExactScalar::one());
        assert!(compose(&p, &Permutation::identity(2)).is_err());
        assert!(Permutation::from_images(&[1, 1]).is_err());
    }

    #[test]
    fn all_permutations_are_sorted_and_complete() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Permutation::all(0).len(), 1);
    }

    #[test]
    fn shuffles() {
        let s11 = shuffle_sum(1, 1);
        let expect = GroupAlgebraElement::identity(2)
            .sub(&GroupAlgebraElement::from_terms(2, [(Permutation::transposition(2, 1, 2), ExactScalar::one())]).unwrap())
            .unwrap();
        assert_eq!(s11, expect);
        assert_eq!(shuffle_sum(1, 2).len(), 3);
        assert_eq!(shuffle_sum(2, 3).len(), 10);
        assert_eq!(shuffle_sum(3, 3).len(), 20);
        assert!(total_shuffle(1).is_zero());
        assert_eq!(total_shuffle(2), expect);
    }

    #[test]
    fn shuffle_eigenvalue_on_antisymmetrizer() {
        let prod = total_shuffle(2).mul(&antisymmetrizer(2)).unwrap();
        assert_eq!(prod, antisymmetrizer(2).scale(&ExactScalar::from_int(2)));
    }

    #[test]
    fn small_idempotents() {
        assert_eq!(eulerian_idempotent(1, 1), GroupAlgebraElement::identity(1));
        let half = ExactScalar::ratio(1, 2);
        let t = Permutation::transposition(2, 1, 2);
        let e22 = eulerian_idempotent(2, 2);
        assert_eq!(e22.coeff(&Permutation::identity(2)), half);
        assert_eq!(e22.coeff(&t), -half.clone());
        let e21 = eulerian_idempotent(2, 1);
        assert_eq!(e21, symmetrizer(2));
        assert_eq!(eulerian_idempotent(3, 3), antisymmetrizer(3));
        assert!(eulerian_idempotent(2, 3).is_zero());
        assert_eq!(e22.mul(&e22).unwrap(), e22);
        assert!(e21.mul(&e22).unwrap().is_zero());
    }

    #[test]
    fn orthogonal_partition_of_unity_up_to_5() {
        for n in 1..=5 {
            let fam = eulerian_family(n);
            let mut sum = GroupAlgebraElement::zero(n);
            for (a, ea) in fam.iter().enumerate() {
                sum = sum.add(ea).unwrap();
                for (b, eb) in fam.iter().enumerate() {
                    let p = ea.mul(eb).unwrap();
                    if a == b {
                        assert_eq!(&p, ea, "idempotent n={n} i={}", a + 1);
                    } else {
                        assert!(p.is_zero(), "orthogonal n={n} {} {}", a + 1, b + 1);
                    }
                }
            }
            assert_eq!(sum, GroupAlgebraElement::identity(n));
            assert_eq!(fam[n - 1], antisymmetrizer(n));
        }
    }

    #[test]
    fn permute_is_a_left_action() {
        let items = ['a', 'b', 'c', 'd'];
        for p in Permutation::all(4).iter().step_by(5) {
            for q in Permutation::all(4).iter().step_by(7) {
                let pq = compose(p, q).unwrap();
                assert_eq!(pq.permute(&items), p.permute(&q.permute(&items)));
            }
        }
        // the transposition (12) swaps the first two legs
        assert_eq!(Permutation::transposition(3, 1, 2).permute(&items[..3]), vec!['b', 'a', 'c']);
        // the 3-cycle 1->2->3->1 moves the first leg into position 2
        assert_eq!(perm(&[2, 3, 1]).permute(&items[..3]), vec!['c', 'a', 'b']);
    }
}
