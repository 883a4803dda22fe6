//! The Harrison summand of one-variable and monomial algebras: the map `q`
//! onto `z^N`, the explicit splitting maps `B`, `S`, `H` of the first
//! boundary, blockwise exactness, contracting homotopies, and the
//! variable-splitting dimension check.

use rayon::prelude::*;

use crate::exactq::{
    kernel_basis, rank, subspace_equal, Basis, BlockMatrix, Echelon, ExactScalar, Factorization, Insert, SparseVec,
    SubspaceBasis,
};
use crate::hochschild::{
    boundary_matrix, ChainBlock, ChainVector, DegreeComplex, HochschildError, HodgeCell, MonomialChain,
    DEFAULT_BLOCK_CAP,
};
use crate::monomial::{ModuleKind, MultiDegree};
use crate::report::Check;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarrisonError {
    #[error("expected a one-variable regular chain with {legs} leg(s), got {found}")]
    Shape { legs: usize, found: String },
    #[error("B is only defined on z^N with N >= 1")]
    DegreeZero,
    #[error("no contracting homotopy: {0}")]
    NoHomotopy(String),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
}

fn q(n: i64) -> ExactScalar {
    ExactScalar::from_int(n)
}

fn one_var(slot: u32, legs: &[u32]) -> MonomialChain {
    let mut exps = vec![slot];
    exps.extend_from_slice(legs);
    MonomialChain::from_flat(1, exps)
}

fn check_shape(c: &ChainVector, legs: usize) -> Result<(), HarrisonError> {
    if c.k() != 1 || c.legs() != legs || *c.module() != ModuleKind::Regular {
        return Err(HarrisonError::Shape { legs, found: format!("{} legs, k = {}, {}", c.legs(), c.k(), c.module()) });
    }
    Ok(())
}

/// `q(z^k | z^l) = l/(k+l) z^(k+l)`, with `q(1|1) = 0`; the result maps
/// each exponent `N >= 1` to the coefficient of `z^N`.
pub fn q_map(c: &ChainVector) -> Result<std::collections::BTreeMap<u32, ExactScalar>, HarrisonError> {
    check_shape(c, 1)?;
    let mut out = std::collections::BTreeMap::new();
    for (chain, x) in c.terms() {
        let (k, l) = (chain.slot_exponents()[0], chain.leg_exponents(1)[0]);
        if l == 0 {
            continue;
        }
        let y = x * &ExactScalar::ratio(l as i64, (k + l) as i64);
        let e = out.entry(k + l).or_insert_with(ExactScalar::zero);
        *e += &y;
    }
    out.retain(|_, v: &mut ExactScalar| !v.is_zero());
    Ok(out)
}

/// `B(z^N) = 1 | z^N`.
pub fn map_b(n: u32) -> Result<ChainVector, HarrisonError> {
    if n == 0 {
        return Err(HarrisonError::DegreeZero);
    }
    Ok(ChainVector::from_chain(one_var(0, &[n]), ModuleKind::Regular))
}

/// Which formula applies at the overlap `j = N/2` of the two branches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Branch {
    /// `0 <= j <= N/2` is used inclusively.
    #[default]
    Lower,
    /// `N/2 <= j <= N` is used inclusively.
    Upper,
}

impl Branch {
    fn lower(self, n: u32, j: u32) -> bool {
        match self {
            Branch::Lower => 2 * j <= n,
            Branch::Upper => 2 * j < n,
        }
    }
}

fn split_terms(c: &ChainVector) -> impl Iterator<Item = (u32, u32, &ExactScalar)> {
    c.terms().map(|(ch, x)| {
        let j = ch.leg_exponents(1)[0];
        (ch.slot_exponents()[0] + j, j, x)
    })
}

/// `S` on one-leg chains, with the given tie convention.
pub fn map_s_with(c: &ChainVector, branch: Branch) -> Result<ChainVector, HarrisonError> {
    check_shape(c, 1)?;
    let mut out = ChainVector::zero(2, 1, ModuleKind::Regular);
    for (n, j, x) in split_terms(c) {
        out.add_term(one_var(0, &[j, n - j]), x);
        if branch.lower(n, j) {
            out.add_term(one_var(j, &[j, n - 2 * j]), x);
        } else {
            out.add_term(one_var(n - j, &[2 * j - n, n - j]), &-x);
        }
    }
    Ok(out)
}

/// `H` on one-leg chains, with the given tie convention.
pub fn map_h_with(c: &ChainVector, branch: Branch) -> Result<ChainVector, HarrisonError> {
    check_shape(c, 1)?;
    let mut out = ChainVector::zero(1, 1, ModuleKind::Regular);
    for (n, j, x) in split_terms(c) {
        out.add_term(one_var(n - j, &[j]), &(x * &q(2)));
        if branch.lower(n, j) {
            out.add_term(one_var(2 * j, &[n - 2 * j]), x);
        } else {
            out.add_term(one_var(2 * n - 2 * j, &[2 * j - n]), &-x);
        }
    }
    Ok(out)
}

pub fn map_s(c: &ChainVector) -> Result<ChainVector, HarrisonError> {
    map_s_with(c, Branch::Lower)
}

pub fn map_h(c: &ChainVector) -> Result<ChainVector, HarrisonError> {
    map_h_with(c, Branch::Lower)
}

fn one_var_block(legs: usize, n: u32) -> ChainBlock {
    ChainBlock::new(legs, &MultiDegree(vec![n]), &ModuleKind::Regular)
}

/// Matrix of a chain map given on basis chains.
fn block_map<F>(src: &ChainBlock, dst: &ChainBlock, f: F) -> Result<BlockMatrix, HarrisonError>
where
    F: Fn(&ChainVector) -> Result<ChainVector, HarrisonError>,
{
    let columns = (0..src.len())
        .map(|j| Ok(dst.coordinates(&f(&src.unit(j))?)?))
        .collect::<Result<Vec<_>, HarrisonError>>()?;
    Ok(BlockMatrix::from_columns(dst.basis().clone(), src.basis().clone(), columns).expect("consistent shapes"))
}

/// Rows indexed by `z^N` (none when `N = 0`).
fn target_basis(n: u32) -> Basis {
    if n == 0 {
        Basis::new(Vec::new()).expect("empty")
    } else {
        Basis::new(vec![format!("z^[{n}]")]).expect("single label")
    }
}

/// The block of `q` from `C_1` in degree `n` to `span{z^n}`.
pub fn q_block(n: u32) -> BlockMatrix {
    let src = one_var_block(1, n);
    let columns = (0..src.len())
        .map(|j| {
            let image = q_map(&src.unit(j)).expect("one-variable chain");
            SparseVec::from_pairs(image.into_values().map(|x| (0, x)))
        })
        .collect();
    BlockMatrix::from_columns(target_basis(n), src.basis().clone(), columns).expect("consistent shapes")
}

/// The block of `B` from `span{z^n}` to `C_1`.
pub fn b_block(n: u32) -> Result<BlockMatrix, HarrisonError> {
    let dst = one_var_block(1, n);
    let image = dst.coordinates(&map_b(n)?)?;
    Ok(BlockMatrix::from_columns(dst.basis().clone(), target_basis(n), vec![image]).expect("consistent shapes"))
}

/// Outcome of the splitting identities on one degree block.
#[derive(Clone, Debug)]
pub struct SplittingReport {
    pub degree: u32,
    pub qb_identity: Check,
    pub homotopy_identity: Check,
    pub norm_bound: Check,
    pub inverse: Check,
    pub neumann: Check,
    pub dsh_inverse: Check,
    /// Max column norm of `2 id - H`.
    pub contraction_norm_bound: ExactScalar,
    /// Column-norm distance from `H^{-1}` to the Neumann partial sums of
    /// order `M = 1..=10`.
    pub neumann_error_at: Vec<ExactScalar>,
}

impl SplittingReport {
    pub fn checks(&self) -> Vec<Check> {
        vec![
            self.qb_identity.clone(),
            self.homotopy_identity.clone(),
            self.norm_bound.clone(),
            self.inverse.clone(),
            self.neumann.clone(),
            self.dsh_inverse.clone(),
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(Check::passed)
    }
}

/// First column where two equally shaped matrices differ, by label.
fn first_difference(a: &BlockMatrix, b: &BlockMatrix) -> Option<String> {
    (0..a.ncols()).find(|&j| a.column(j) != b.column(j)).map(|j| a.cols().label(j).to_string())
}

fn matrix_check(name: &str, a: &BlockMatrix, b: &BlockMatrix) -> Check {
    match first_difference(a, b) {
        None => Check::pass(name),
        Some(w) => Check::fail(name, w),
    }
}

/// The splitting identities on the degree-`n` block with tie convention
/// `branch`; `n >= 1`.
pub fn splitting_report(n: u32, branch: Branch) -> Result<SplittingReport, HarrisonError> {
    if n == 0 {
        return Err(HarrisonError::DegreeZero);
    }
    let c1 = one_var_block(1, n);
    let c2 = one_var_block(2, n);
    let qb = q_block(n);
    let bb = b_block(n)?;
    let d1 = boundary_matrix(&c2, &c1);
    let h = block_map(&c1, &c1, |v| map_h_with(v, branch))?;
    let s = block_map(&c1, &c2, |v| map_s_with(v, branch))?;
    let id1 = BlockMatrix::identity(c1.basis().clone());

    let qb_id = qb.mul(&bb).expect("composable");
    let qb_identity = matrix_check("appendix-qB-identity", &qb_id, &BlockMatrix::identity(target_basis(n)));

    let proj = id1.sub(&bb.mul(&qb).expect("composable")).expect("same shape");
    let lhs = proj.mul(&h).expect("composable");
    let rhs = d1.mul(&s).expect("composable");
    let homotopy_identity = matrix_check("appendix-homotopy-identity", &lhs, &rhs);

    let two_minus_h = id1.scale(&q(2)).sub(&h).expect("same shape");
    let contraction_norm_bound = two_minus_h.max_column_l1_norm();
    let norm_bound = if contraction_norm_bound <= ExactScalar::one() {
        Check::pass("appendix-contraction-norm")
    } else {
        let j = (0..c1.len()).find(|&j| two_minus_h.column(j).l1_norm() > ExactScalar::one()).unwrap_or(0);
        Check::fail("appendix-contraction-norm", c1.basis().label(j))
    };

    let (inverse, h_inv) = match crate::exactq::invert(&h) {
        Ok(inv) => {
            let ok = h.mul(&inv).expect("composable") == id1 && inv.mul(&h).expect("composable") == id1;
            let check = if ok { Check::pass("appendix-H-inverse") } else { Check::fail("appendix-H-inverse", "H H^-1 != id") };
            (check, Some(inv))
        }
        Err(e) => (Check::fail("appendix-H-inverse", e.to_string()), None),
    };

    let mut neumann_error_at = Vec::new();
    let mut neumann = Check::pass("appendix-neumann-error");
    let dsh_inverse = if let Some(inv) = &h_inv {
        let half = ExactScalar::ratio(1, 2);
        let t = two_minus_h.scale(&half);
        let mut power = id1.clone();
        let mut partial = BlockMatrix::zero(c1.basis().clone(), c1.basis().clone());
        for m in 1..=10 {
            partial = partial.add(&power.scale(&half)).expect("same shape");
            power = power.mul(&t).expect("composable");
            let err = inv.sub(&partial).expect("same shape").max_column_l1_norm();
            if err > ExactScalar::pow2(-m) && neumann.passed() {
                neumann = Check::fail("appendix-neumann-error", format!("M={m}: error {err}"));
            }
            neumann_error_at.push(err);
        }
        let dsh = d1.mul(&s).and_then(|x| x.mul(inv)).expect("composable");
        matrix_check("appendix-dSH^-1", &dsh, &proj)
    } else {
        neumann = Check::fail("appendix-neumann-error", "H is singular");
        Check::fail("appendix-dSH^-1", "H is singular")
    };

    Ok(SplittingReport {
        degree: n,
        qb_identity,
        homotopy_identity,
        norm_bound,
        inverse,
        neumann,
        dsh_inverse,
        contraction_norm_bound,
        neumann_error_at,
    })
}

/// Splitting reports for `1 <= N <= n_max` with the default tie convention.
pub fn verify_appendix_splitting(n_max: u32) -> Result<Vec<SplittingReport>, HarrisonError> {
    (1..=n_max).into_par_iter().map(|n| splitting_report(n, Branch::Lower)).collect()
}

/// `ker q = im d_1` on the degree-`n` block, and `q` is onto `span{z^n}`.
pub fn kernel_image_check(n: u32) -> Result<(), String> {
    let c1 = one_var_block(1, n);
    let c2 = one_var_block(2, n);
    let qb = q_block(n);
    let d1 = boundary_matrix(&c2, &c1);
    let ker = kernel_basis(&qb);
    let im = crate::exactq::image_basis(&d1);
    if !subspace_equal(&ker, &im).map_err(|e| e.to_string())? {
        let witness = ker
            .vectors()
            .iter()
            .find(|v| !im.contains(v))
            .or_else(|| im.vectors().iter().find(|v| !ker.contains(v)))
            .map(|v| c1.basis().render(v))
            .unwrap_or_default();
        return Err(witness);
    }
    if rank(&qb) != qb.nrows() {
        return Err(format!("q is not onto z^[{n}]"));
    }
    Ok(())
}

/// A Harrison cell and whether it is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarrisonVerdict {
    pub cell: HodgeCell,
    pub exact: bool,
}

/// Harrison (i = 1) cells for `2 <= n <= n_max` over every degree of
/// total order at most `deg_max`.
pub fn harrison_block_exactness(
    k: usize,
    n_max: usize,
    deg_max: u32,
    module: &ModuleKind,
) -> Result<Vec<HarrisonVerdict>, HochschildError> {
    let per_degree: Vec<Vec<HarrisonVerdict>> = MultiDegree::all_up_to(k, deg_max)
        .par_iter()
        .map(|d| {
            let cx = DegreeComplex::new(d, module, n_max + 1, DEFAULT_BLOCK_CAP)?;
            (2..=n_max)
                .map(|n| {
                    let cell = cx.cell(n, Some(1))?;
                    Ok(HarrisonVerdict { exact: cell.dim_homology == 0, cell })
                })
                .collect::<Result<Vec<_>, HochschildError>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(per_degree.into_iter().flatten().collect())
}

/// Maps `rho_m : C_m -> C_{m+1}` and projections `P_m` on `C_m` with
/// `d rho + rho d + P = id`, for `0 <= m <= top`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub degree: MultiDegree,
    pub rho: Vec<BlockMatrix>,
    pub proj: Vec<BlockMatrix>,
    boundaries: Vec<BlockMatrix>,
}

impl Homotopy {
    /// `rho_n`, the homotopy out of degree `n`.
    pub fn at(&self, n: usize) -> &BlockMatrix {
        &self.rho[n]
    }

    /// Substitutes back: `d_m rho_m + rho_{m-1} d_{m-1} + P_m = id`,
    /// `P_m^2 = P_m`, `d_{m-1} P_m = 0`, `P_m d_m = 0`.
    pub fn verify(&self) -> Result<(), String> {
        for m in 0..self.rho.len() {
            let id = BlockMatrix::identity(self.rho[m].cols().clone());
            let mut sum = self.boundaries[m].mul(&self.rho[m]).expect("composable").add(&self.proj[m]).expect("same");
            if m > 0 {
                let back = self.rho[m - 1].mul(&self.boundaries[m - 1]).expect("composable");
                sum = sum.add(&back).expect("same shape");
                let dp = self.boundaries[m - 1].mul(&self.proj[m]).expect("composable");
                if let Some(j) = (0..dp.ncols()).find(|&j| !dp.column(j).is_zero()) {
                    return Err(format!("d P != 0 at {}", dp.cols().label(j)));
                }
            }
            if let Some(w) = first_difference(&sum, &id) {
                return Err(format!("d rho + rho d + P != id at n={m}, column {w}"));
            }
            let pp = self.proj[m].mul(&self.proj[m]).expect("composable");
            if let Some(w) = first_difference(&pp, &self.proj[m]) {
                return Err(format!("P^2 != P at n={m}, column {w}"));
            }
            let pd = self.proj[m].mul(&self.boundaries[m]).expect("composable");
            if let Some(j) = (0..pd.ncols()).find(|&j| !pd.column(j).is_zero()) {
                return Err(format!("P d != 0 at {}", pd.cols().label(j)));
            }
        }
        Ok(())
    }

    /// Rank of `P_m`, which must equal the homology dimension.
    pub fn projection_rank(&self, m: usize) -> usize {
        rank(&self.proj[m])
    }
}

/// Builds a contracting homotopy on the regular degree block up to `n`,
/// degree by degree: `rho_m` sends the boundary part of
/// `x - rho_{m-1} d x` to a chosen preimage, and `P_m` keeps the part along
/// chosen homology representatives.
pub fn contracting_homotopy(n: usize, degree: &MultiDegree) -> Result<Homotopy, HarrisonError> {
    let cx = DegreeComplex::new(degree, &ModuleKind::Regular, n + 1, DEFAULT_BLOCK_CAP)?;
    let mut rho: Vec<BlockMatrix> = Vec::new();
    let mut proj: Vec<BlockMatrix> = Vec::new();
    let mut boundaries: Vec<BlockMatrix> = Vec::new();
    for m in 0..=n {
        let here = cx.block(m).basis().clone();
        let up = cx.block(m + 1).basis().clone();
        let d_up = cx.boundary(m).clone();
        // Boundaries d e_c over pivot columns c; their preimages are e_c.
        let mut ech = Echelon::new(here.len());
        let mut bvecs = Vec::new();
        let mut preimages = Vec::new();
        for (c, col) in d_up.columns().iter().enumerate() {
            if let Insert::Independent(_) = ech.insert(col) {
                bvecs.push(col.clone());
                preimages.push(c);
            }
        }
        // Homology representatives: cycles completing the boundaries.
        let cycles: SubspaceBasis = if m == 0 {
            SubspaceBasis::new(here.clone(), (0..here.len()).map(SparseVec::unit).collect()).expect("units")
        } else {
            kernel_basis(cx.boundary(m - 1))
        };
        let mut hvecs = Vec::new();
        for z in cycles.vectors() {
            if let Insert::Independent(_) = ech.insert(z) {
                hvecs.push(z.clone());
            }
        }
        let nb = bvecs.len();
        let mut cols = bvecs;
        cols.extend(hvecs.iter().cloned());
        let frame = BlockMatrix::from_columns(here.clone(), Basis::indexed("w", cols.len()), cols).expect("shapes");
        let mut fact = Factorization::new(&frame);
        let mut rho_cols = Vec::with_capacity(here.len());
        let mut proj_cols = Vec::with_capacity(here.len());
        for j in 0..here.len() {
            let x = SparseVec::unit(j);
            let y = match m {
                0 => x,
                _ => {
                    let dx = cx.boundary(m - 1).mul_vec(&x).expect("shape");
                    x.sub(&rho[m - 1].mul_vec(&dx).expect("shape"))
                }
            };
            let coeffs = fact
                .solve(&y)
                .map_err(|e| HarrisonError::NoHomotopy(e.to_string()))?
                .ok_or_else(|| HarrisonError::NoHomotopy(format!("{} is not a cycle mod boundaries", here.label(j))))?;
            let mut r = Vec::new();
            let mut p = SparseVec::new();
            for (w, c) in coeffs.iter() {
                if *w < nb {
                    r.push((preimages[*w], c.clone()));
                } else {
                    p = p.axpy(c, &hvecs[*w - nb]);
                }
            }
            rho_cols.push(SparseVec::from_pairs(r));
            proj_cols.push(p);
        }
        rho.push(BlockMatrix::from_columns(up, here.clone(), rho_cols).expect("shapes"));
        proj.push(BlockMatrix::from_columns(here.clone(), here, proj_cols).expect("shapes"));
        boundaries.push(d_up);
    }
    Ok(Homotopy { degree: degree.clone(), rho, proj, boundaries })
}

/// Harrison `n`-cell of `R_2` at `degree` against the sum over both
/// variables of the Harrison cells of `Q[z_i]` with coefficients `R_2`.
pub fn harrison_kunneth_check(n: usize, degree: &MultiDegree) -> Result<(usize, usize), HochschildError> {
    let k = degree.k();
    let whole = DegreeComplex::new(degree, &ModuleKind::Regular, n + 1, DEFAULT_BLOCK_CAP)?.cell(n, Some(1))?;
    let mut parts = 0;
    for var in 1..=k {
        let module = ModuleKind::VariableRestriction { var, k_total: k };
        parts += DegreeComplex::new(degree, &module, n + 1, DEFAULT_BLOCK_CAP)?.cell(n, Some(1))?.dim_homology;
    }
    Ok((whole.dim_homology, parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(terms: &[(&str, ExactScalar)]) -> ChainVector {
        ChainVector::parse_terms(ModuleKind::Regular, terms).unwrap()
    }

    fn one(s: &str) -> ChainVector {
        cv(&[(s, ExactScalar::one())])
    }

    #[test]
    fn q_examples() {
        let r = q_map(&one("z^[2]|z^[1]")).unwrap();
        assert_eq!(r.get(&3), Some(&ExactScalar::ratio(1, 3)));
        assert!(q_map(&one("z^[0]|z^[0]")).unwrap().is_empty());
        assert!(q_map(&one("z^[3]|z^[0]")).unwrap().is_empty());
        assert!(q_map(&one("z^[0]|z^[1]|z^[1]")).is_err());
    }

    #[test]
    fn b_s_h_examples() {
        assert_eq!(map_b(3).unwrap(), one("z^[0]|z^[3]"));
        assert!(map_b(0).is_err());
        for n in 1..=40 {
            let image = q_map(&map_b(n).unwrap()).unwrap();
            assert_eq!(image.len(), 1);
            assert_eq!(image.get(&n), Some(&ExactScalar::one()));
        }
        let m1 = -ExactScalar::one();
        assert_eq!(
            map_s(&one("z^[2]|z^[1]")).unwrap(),
            cv(&[("z^[0]|z^[1]|z^[2]", ExactScalar::one()), ("z^[1]|z^[1]|z^[1]", ExactScalar::one())])
        );
        assert_eq!(
            map_s(&one("z^[1]|z^[1]")).unwrap(),
            cv(&[("z^[0]|z^[1]|z^[1]", ExactScalar::one()), ("z^[1]|z^[1]|z^[0]", ExactScalar::one())])
        );
        assert_eq!(
            map_s(&one("z^[1]|z^[2]")).unwrap(),
            cv(&[("z^[0]|z^[2]|z^[1]", ExactScalar::one()), ("z^[1]|z^[1]|z^[1]", m1)])
        );
        assert_eq!(
            map_h(&one("z^[1]|z^[1]")).unwrap(),
            cv(&[("z^[1]|z^[1]", ExactScalar::from_int(2)), ("z^[2]|z^[0]", ExactScalar::one())])
        );
        for n in 1..=10 {
            let b = map_b(n).unwrap();
            assert_eq!(map_h(&b).unwrap(), b);
        }
    }

    #[test]
    fn both_tie_conventions_split() {
        for branch in [Branch::Lower, Branch::Upper] {
            for n in 1..=12 {
                let r = splitting_report(n, branch).unwrap();
                assert!(r.passed(), "{branch:?} N={n}: {:?}", r.checks());
                assert!(r.contraction_norm_bound <= ExactScalar::one());
            }
        }
        assert!(splitting_report(0, Branch::Lower).is_err());
    }

    #[test]
    fn mixed_tie_conventions_break_the_identity() {
        let c1 = one_var_block(1, 2);
        let c2 = one_var_block(2, 2);
        let h = block_map(&c1, &c1, |v| map_h_with(v, Branch::Lower)).unwrap();
        let s = block_map(&c1, &c1.clone(), |v| Ok(v.clone())).unwrap();
        let s_up = block_map(&c1, &c2, |v| map_s_with(v, Branch::Upper)).unwrap();
        let d1 = boundary_matrix(&c2, &c1);
        let proj = s.sub(&b_block(2).unwrap().mul(&q_block(2)).unwrap()).unwrap();
        assert_ne!(proj.mul(&h).unwrap(), d1.mul(&s_up).unwrap());
    }

    #[test]
    fn second_degree_identity_by_hand() {
        // (id - Bq) H(z|z) = 2 z|z + z^2|1 - 1|z^2 = d S(z|z)
        let x = one("z^[1]|z^[1]");
        let h = map_h(&x).unwrap();
        let bq = q_map(&h).unwrap();
        let mut lhs = h.clone();
        for (e, c) in bq {
            lhs = lhs.sub(&map_b(e).unwrap().scale(&c));
        }
        let two = ExactScalar::from_int(2);
        let expected = cv(&[("z^[1]|z^[1]", two), ("z^[2]|z^[0]", ExactScalar::one()), ("z^[0]|z^[2]", -ExactScalar::one())]);
        assert_eq!(lhs, expected);
        assert_eq!(crate::hochschild::boundary(&map_s(&x).unwrap()).unwrap(), expected);
    }

    #[test]
    fn first_degree_inverse() {
        let r = splitting_report(1, Branch::Lower).unwrap();
        assert!(r.inverse.passed());
        assert_eq!(r.neumann_error_at.len(), 10);
    }

    #[test]
    fn q_kernel_is_the_boundary_space() {
        for n in 0..=15 {
            assert_eq!(kernel_image_check(n), Ok(()), "N={n}");
        }
    }

    #[test]
    fn homotopy_in_first_degree_is_bq() {
        for n in 1..=6u32 {
            let h = contracting_homotopy(1, &MultiDegree(vec![n])).unwrap();
            h.verify().unwrap();
            let bq = b_block(n).unwrap().mul(&q_block(n)).unwrap();
            assert_eq!(h.proj[1], bq, "N={n}");
            assert_eq!(h.projection_rank(1), 1);
        }
    }

    #[test]
    fn homotopies_in_two_variables() {
        for d in MultiDegree::all_up_to(2, 3) {
            let h = contracting_homotopy(3, &d).unwrap();
            h.verify().unwrap();
            let cx = DegreeComplex::new(&d, &ModuleKind::Regular, 4, DEFAULT_BLOCK_CAP).unwrap();
            for m in 1..=3 {
                assert_eq!(h.projection_rank(m), cx.cell(m, None).unwrap().dim_homology);
            }
        }
    }

    #[test]
    fn kunneth_examples() {
        assert_eq!(harrison_kunneth_check(1, &MultiDegree(vec![1, 1])).unwrap(), (2, 2));
        assert_eq!(harrison_kunneth_check(1, &MultiDegree(vec![0, 2])).unwrap(), (1, 1));
        for a in 0..=3 {
            for b in 0..=3 {
                assert_eq!(harrison_kunneth_check(2, &MultiDegree(vec![a, b])).unwrap(), (0, 0));
            }
        }
    }

    #[test]
    fn small_exactness() {
        let v = harrison_block_exactness(1, 4, 6, &ModuleKind::Regular).unwrap();
        assert!(v.iter().all(|x| x.exact));
        assert_eq!(v.len(), 3 * 7);
    }
}
