use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactq::{rank, Basis, BlockMatrix, Echelon, ExactScalar, Insert, SparseVec};
use crate::monomial::{block_dim, ModuleKind, MultiDegree};
use crate::report::{AlgebraInfo, CheckLog, HodgeReport};
use crate::symgroup::{cached_eulerian_family, Permutation};

use super::{boundary_matrix, ChainBlock, HochschildError, MonomialChain};

/// Largest chain block any cell may touch unless configured otherwise.
pub const DEFAULT_BLOCK_CAP: u64 = 200_000;

/// One cell of the table: homological degree `n`, Hodge index `i` (`None`
/// for the unresolved total) and block degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HodgeCell {
    pub n: usize,
    pub i: Option<usize>,
    pub degree: MultiDegree,
    pub dim_chain: usize,
    pub dim_cycle: usize,
    pub dim_boundary: usize,
    pub dim_homology: usize,
}

impl HodgeCell {
    fn from_ranks(n: usize, i: Option<usize>, degree: &MultiDegree, chain: usize, rank_in: usize, rank_out: usize) -> Self {
        let dim_cycle = chain - rank_in;
        HodgeCell {
            n,
            i,
            degree: degree.clone(),
            dim_chain: chain,
            dim_cycle,
            dim_boundary: rank_out,
            // Cycles contain boundaries; a negative value would be a bug
            // upstream and is reported by the table checks.
            dim_homology: dim_cycle.saturating_sub(rank_out),
        }
    }

    /// A short identifier such as `n=2 i=1 N=[2,1]`.
    pub fn id(&self) -> String {
        cell_id(self.n, self.i, &self.degree)
    }
}

pub(crate) fn cell_id(n: usize, i: Option<usize>, degree: &MultiDegree) -> String {
    let i = i.map_or_else(|| "total".to_string(), |i| i.to_string());
    format!("n={n} i={i} N={degree:?}")
}

/// The image of `e_n^(i)` inside one block: a basis of it, plus a set of
/// coordinates on which restriction of the image is injective.
#[derive(Clone, Debug, Default)]
pub struct HodgePiece {
    pub vectors: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

impl HodgePiece {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Hodge pieces of a block, indexed by `i - 1`. The idempotents preserve
/// the span of every leg-permutation orbit, so each orbit is treated alone.
fn hodge_pieces(block: &ChainBlock) -> Vec<HodgePiece> {
    let n = block.legs();
    assert!(n >= 1, "Hodge pieces need at least one leg");
    let family = cached_eulerian_family(n);
    let perms = Permutation::all(n);
    let coeffs: Vec<Vec<ExactScalar>> = family.iter().map(|e| perms.iter().map(|p| e.coeff(p)).collect()).collect();
    let mut orbits: BTreeMap<MonomialChain, Vec<usize>> = BTreeMap::new();
    for (idx, c) in block.chains().iter().enumerate() {
        orbits.entry(c.orbit_key()).or_default().push(idx);
    }
    let mut pieces = vec![HodgePiece::default(); n];
    for members in orbits.into_values() {
        let local = |global: usize| members.binary_search(&global).expect("orbit is closed");
        let images: Vec<Vec<usize>> = members
            .iter()
            .map(|&g| {
                let c = block.chain(g);
                perms.iter().map(|p| local(block.index_of(&c.permute_legs(p)).expect("same block"))).collect()
            })
            .collect();
        for (i, piece) in pieces.iter_mut().enumerate() {
            let mut ech = Echelon::new(members.len());
            for img in &images {
                let mut acc = vec![ExactScalar::zero(); members.len()];
                for (pos, c) in img.iter().zip(&coeffs[i]) {
                    if !c.is_zero() {
                        acc[*pos] += c;
                    }
                }
                let v = SparseVec::from_dense(&acc);
                if let Insert::Independent(p) = ech.insert(&v) {
                    piece.vectors.push(SparseVec::from_pairs(v.iter().map(|(j, x)| (members[*j], x.clone()))));
                    piece.pivots.push(members[p]);
                }
                if ech.rank() == members.len() {
                    break;
                }
            }
        }
    }
    for piece in &mut pieces {
        piece.pivots.sort_unstable();
    }
    pieces
}

/// All blocks of one degree up to a leg count, with boundary matrices and
/// lazily computed Hodge pieces and ranks.
pub struct DegreeComplex {
    degree: MultiDegree,
    module: ModuleKind,
    blocks: Vec<ChainBlock>,
    d: Vec<BlockMatrix>,
    pieces: RefCell<HashMap<usize, std::rc::Rc<Vec<HodgePiece>>>>,
    ranks: RefCell<HashMap<(usize, Option<usize>, bool), usize>>,
}

impl DegreeComplex {
    /// Blocks with `0..=top_legs` legs; refuses any block above `cap`.
    pub fn new(degree: &MultiDegree, module: &ModuleKind, top_legs: usize, cap: u64) -> Result<Self, HochschildError> {
        module.validate()?;
        let mut blocks = Vec::with_capacity(top_legs + 1);
        for legs in 0..=top_legs {
            let cell = cell_id(legs.saturating_sub(1).max(1), None, degree);
            blocks.push(ChainBlock::with_cap(legs, degree, module, cap, &cell)?);
        }
        let d = (0..top_legs).map(|m| boundary_matrix(&blocks[m + 1], &blocks[m])).collect();
        Ok(DegreeComplex {
            degree: degree.clone(),
            module: module.clone(),
            blocks,
            d,
            pieces: RefCell::new(HashMap::new()),
            ranks: RefCell::new(HashMap::new()),
        })
    }

    pub fn degree(&self) -> &MultiDegree {
        &self.degree
    }

    pub fn module(&self) -> &ModuleKind {
        &self.module
    }

    pub fn top_legs(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn block(&self, legs: usize) -> &ChainBlock {
        &self.blocks[legs]
    }

    /// `d_m`, from `m + 1` legs to `m` legs.
    pub fn boundary(&self, m: usize) -> &BlockMatrix {
        &self.d[m]
    }

    pub fn pieces(&self, legs: usize) -> std::rc::Rc<Vec<HodgePiece>> {
        if let Some(p) = self.pieces.borrow().get(&legs) {
            return p.clone();
        }
        let p = std::rc::Rc::new(hodge_pieces(&self.blocks[legs]));
        self.pieces.borrow_mut().insert(legs, p.clone());
        p
    }

    /// The matrix of `d_m` restricted to the i-th Hodge piece of `C_{m+1}`,
    /// read off on the injective coordinates of the i-th piece of `C_m`
    /// (all of `C_0` when `m = 0`).
    pub fn restricted_boundary(&self, m: usize, i: usize) -> BlockMatrix {
        let src = self.pieces(m + 1);
        let piece = &src[i - 1];
        let (rows, labels): (Vec<Option<usize>>, Vec<String>) = if m == 0 {
            let b = &self.blocks[0];
            ((0..b.len()).map(Some).collect(), b.basis().labels().to_vec())
        } else {
            let tgt = self.pieces(m);
            let mut pos = vec![None; self.blocks[m].len()];
            let labels = match tgt.get(i - 1) {
                Some(t) => t
                    .pivots
                    .iter()
                    .enumerate()
                    .map(|(r, &g)| {
                        pos[g] = Some(r);
                        self.blocks[m].basis().label(g).to_string()
                    })
                    .collect(),
                None => Vec::new(),
            };
            (pos, labels)
        };
        let columns = piece
            .vectors
            .iter()
            .map(|b| {
                let image = self.d[m].mul_vec(b).expect("shapes agree");
                SparseVec::from_pairs(image.iter().filter_map(|(g, x)| rows[*g].map(|r| (r, x.clone()))))
            })
            .collect();
        let rows = Basis::new(labels).expect("distinct labels");
        BlockMatrix::from_columns(rows, Basis::indexed("v", piece.dim()), columns).expect("consistent shapes")
    }

    /// Rank of `d_m`, or of its restriction to the i-th piece; optionally of
    /// the transposed matrix (the cochain side).
    pub fn boundary_rank(&self, m: usize, i: Option<usize>, transposed: bool) -> usize {
        let key = (m, i, transposed);
        if let Some(r) = self.ranks.borrow().get(&key) {
            return *r;
        }
        let mat = match i {
            None => self.d[m].clone(),
            Some(i) => self.restricted_boundary(m, i),
        };
        let r = if transposed { rank(&mat.transpose()) } else { rank(&mat) };
        self.ranks.borrow_mut().insert(key, r);
        r
    }

    fn check_cell_args(&self, n: usize, i: Option<usize>) -> Result<(), HochschildError> {
        if let Some(i) = i {
            if n == 0 || i == 0 {
                return Err(HochschildError::HodgeIndex { n, i });
            }
        }
        assert!(n < self.top_legs(), "cell n = {n} needs blocks up to {} legs", n + 1);
        Ok(())
    }

    fn dim_chain(&self, n: usize, i: Option<usize>) -> usize {
        match i {
            None => self.blocks[n].len(),
            Some(i) => self.pieces(n).get(i - 1).map_or(0, HodgePiece::dim),
        }
    }

    /// Homology cell: cycles are the kernel of `d_{n-1}`, boundaries the
    /// image of `d_n` (both restricted to the i-th piece when `i` is set).
    pub fn cell(&self, n: usize, i: Option<usize>) -> Result<HodgeCell, HochschildError> {
        self.check_cell_args(n, i)?;
        let chain = self.dim_chain(n, i);
        let rank_in = if n == 0 { 0 } else { self.boundary_rank(n - 1, i, false) };
        let rank_out = self.boundary_rank(n, i, false);
        Ok(HodgeCell::from_ranks(n, i, &self.degree, chain, rank_in, rank_out))
    }

    /// Cohomology cell from the transposed blocks: cocycles are the kernel
    /// of `d_n^T`, coboundaries the image of `d_{n-1}^T`.
    pub fn cocell(&self, n: usize, i: Option<usize>) -> Result<HodgeCell, HochschildError> {
        self.check_cell_args(n, i)?;
        let chain = self.dim_chain(n, i);
        let rank_in = self.boundary_rank(n, i, true);
        let rank_out = if n == 0 { 0 } else { self.boundary_rank(n - 1, i, true) };
        Ok(HodgeCell::from_ranks(n, i, &self.degree, chain, rank_in, rank_out))
    }
}

fn single_cell(
    n: usize,
    degree: &MultiDegree,
    module: &ModuleKind,
    i: Option<usize>,
    cohomology: bool,
) -> Result<HodgeCell, HochschildError> {
    if let Some(i) = i {
        if n == 0 || i == 0 {
            return Err(HochschildError::HodgeIndex { n, i });
        }
    }
    let cx = DegreeComplex::new(degree, module, n + 1, DEFAULT_BLOCK_CAP)?;
    if cohomology {
        cx.cocell(n, i)
    } else {
        cx.cell(n, i)
    }
}

/// Homology dimensions of one cell.
pub fn homology_dims(n: usize, degree: &MultiDegree, module: &ModuleKind, i: Option<usize>) -> Result<HodgeCell, HochschildError> {
    single_cell(n, degree, module, i, false)
}

/// Cohomology dimensions of one cell, from transposed blocks.
pub fn cohomology_dims(n: usize, degree: &MultiDegree, module: &ModuleKind, i: Option<usize>) -> Result<HodgeCell, HochschildError> {
    single_cell(n, degree, module, i, true)
}

#[derive(Clone, Debug)]
pub struct TableOptions {
    pub cap: u64,
    /// Also compute every cohomology cell and compare it with homology.
    pub cohomology: bool,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions { cap: DEFAULT_BLOCK_CAP, cohomology: false }
    }
}

/// `#{S ⊆ {1..k} : |S| = n, N_j >= 1 for j in S}`.
fn lie_count(n: usize, degree: &MultiDegree) -> usize {
    let support = degree.exponents().iter().filter(|&&e| e >= 1).count();
    binomial(support, n)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

fn degree_table(
    degree: &MultiDegree,
    n_max: usize,
    module: &ModuleKind,
    opts: &TableOptions,
) -> Result<(Vec<HodgeCell>, CheckLog), HochschildError> {
    let cx = DegreeComplex::new(degree, module, n_max + 1, opts.cap)?;
    let mut log = CheckLog::new();
    let mut cells = Vec::new();
    let one_variable = degree.k() == 1 || matches!(module, ModuleKind::VariableRestriction { .. });

    for m in 1..cx.top_legs() {
        let dd = cx.boundary(m - 1).mul(cx.boundary(m)).expect("composable");
        let witness = || {
            let j = dd.columns().iter().position(|c| !c.is_zero()).unwrap_or(0);
            cx.block(m + 1).basis().label(j).to_string()
        };
        log.record("d-squared-zero", dd.is_zero(), witness);
    }

    for n in 1..=n_max {
        let total = cx.cell(n, None)?;
        let resolved: Vec<HodgeCell> = (1..=n).map(|i| cx.cell(n, Some(i))).collect::<Result<_, _>>()?;
        let sum = |f: fn(&HodgeCell) -> usize| resolved.iter().map(f).sum::<usize>();
        let additive = sum(|c| c.dim_chain) == total.dim_chain
            && sum(|c| c.dim_cycle) == total.dim_cycle
            && sum(|c| c.dim_boundary) == total.dim_boundary
            && sum(|c| c.dim_homology) == total.dim_homology;
        log.record("hodge-additivity", additive, || total.id());
        for c in std::iter::once(&total).chain(&resolved) {
            log.record("boundaries-within-cycles", c.dim_boundary <= c.dim_cycle, || c.id());
        }
        if n >= 2 && (*module == ModuleKind::Regular || one_variable) {
            for c in &resolved[..n - 1] {
                log.record("hodge-vanishing", c.dim_homology == 0, || c.id());
            }
        }
        if n >= 2 && one_variable {
            log.record("one-variable-vanishing", total.dim_homology == 0, || total.id());
        }
        if *module == ModuleKind::Regular {
            let lie = &resolved[n - 1];
            let oracle = total.dim_homology as i64 - resolved[..n - 1].iter().map(|c| c.dim_homology as i64).sum::<i64>();
            let ok = lie.dim_homology as i64 == oracle && lie.dim_homology == lie_count(n, degree);
            log.record("lie-cell-oracle", ok, || lie.id());
        }
        if opts.cohomology {
            let co_total = cx.cocell(n, None)?;
            let mut ok = co_total.dim_homology == total.dim_homology;
            for (i, c) in resolved.iter().enumerate() {
                ok &= cx.cocell(n, Some(i + 1))?.dim_homology == c.dim_homology;
            }
            log.record("cohomology-equals-homology", ok, || total.id());
        }
        cells.push(total);
        cells.extend(resolved);
    }
    Ok((cells, log))
}

/// Refuses, before any work, a cell `n <= n_max` whose blocks with `n - 1`,
/// `n` and `n + 1` legs together exceed `cap`.
pub fn check_cap(degrees: &[MultiDegree], n_max: usize, module: &ModuleKind, cap: u64) -> Result<(), HochschildError> {
    for degree in degrees {
        for n in 1..=n_max {
            let dim: u64 = (n - 1..=n + 1).map(|legs| block_dim(legs, degree, module)).sum();
            if dim > cap {
                return Err(HochschildError::CapExceeded { cell: cell_id(n, None, degree), dim, cap });
            }
        }
    }
    Ok(())
}

/// The full Hodge table for `1 <= n <= n_max` and every block degree of
/// total order at most `deg_max`, with its consistency checks.
pub fn hodge_table(
    k: usize,
    n_max: usize,
    deg_max: u32,
    module: &ModuleKind,
    opts: &TableOptions,
) -> Result<HodgeReport, HochschildError> {
    module.validate()?;
    let degrees = MultiDegree::all_up_to(k, deg_max);
    check_cap(&degrees, n_max, module, opts.cap)?;
    let results: Vec<(Vec<HodgeCell>, CheckLog)> = degrees
        .par_iter()
        .map(|d| degree_table(d, n_max, module, opts))
        .collect::<Result<_, _>>()?;
    let mut cells = Vec::new();
    let mut log = CheckLog::new();
    for (c, l) in results {
        cells.extend(c);
        log.merge(l);
    }
    cells.sort();
    Ok(HodgeReport { algebra: AlgebraInfo { k, module: module.tag() }, cells, checks: log.into_checks() })
}
