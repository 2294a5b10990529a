//! Brute-force linear algebra over `F_p` on full cochain bases.
//!
//! The coboundary matrices here are assembled from the bar formula on group
//! elements and never call into [`ICochain::coboundary`], so they serve as an
//! independent check on it.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cochain::{encode, tuple_count, ICochain, TupleOdometer};
use crate::error::{Error, Result};
use crate::group_ring::{binomial, CoeffRing, GroupContext, GroupElem};

/// Default cap on stored matrix entries.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Sparse vector: `(row, value)` with strictly increasing rows, values in `[1, p)`.
type SparseVec = Vec<(usize, u32)>;

/// `x + c·y` over `F_p`.
fn axpy(p: u32, x: &SparseVec, c: u32, y: &SparseVec) -> SparseVec {
    let p64 = p as u64;
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            out.push((y[j].0, ((c as u64 * y[j].1 as u64) % p64) as u32));
            j += 1;
        } else {
            let v = ((x[i].1 as u64 + c as u64 * y[j].1 as u64) % p64) as u32;
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.retain(|&(_, v)| v != 0);
    out
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// A matrix over `F_p`, stored as sparse columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    columns: Vec<SparseVec>,
}

impl FpMatrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        Self { p, rows, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(p: u32, k: usize) -> Self {
        Self { p, rows: k, columns: (0..k).map(|i| vec![(i, 1)]).collect() }
    }

    /// Builds from dense rows; entries are reduced mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(p, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                let v = v.rem_euclid(p as i64) as u32;
                if v != 0 {
                    m.columns[j].push((i, v));
                }
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.columns[j]
            .binary_search_by_key(&i, |&(r, _)| r)
            .map_or(0, |k| self.columns[j][k].1)
    }

    pub fn column(&self, j: usize) -> &[(usize, u32)] {
        &self.columns[j]
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// `self · v` for a dense vector `v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols());
        let mut out = vec![0u64; self.rows];
        for (col, &c) in self.columns.iter().zip(v) {
            if c != 0 {
                for &(i, a) in col {
                    out[i] = (out[i] + a as u64 * c as u64) % self.p as u64;
                }
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// The product `self · other`.
    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols(), other.rows, "shape mismatch");
        let columns = other
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .fold(Vec::new(), |acc, &(k, c)| axpy(self.p, &acc, c, &self.columns[k]))
            })
            .collect();
        FpMatrix { p: self.p, rows: self.rows, columns }
    }

    pub fn rank(&self) -> usize {
        Echelon::new(self).pivots.len()
    }

    /// A basis of the null space, as dense vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        Echelon::new(self)
            .kernel
            .into_iter()
            .map(|h| {
                let mut v = vec![0u32; self.cols()];
                for (j, c) in h {
                    v[j] = c;
                }
                v
            })
            .collect()
    }

    /// Rank by dense row reduction; a cross-check for [`FpMatrix::rank`].
    pub fn dense_rank(&self) -> usize {
        let p = self.p as u64;
        let mut a = vec![vec![0u64; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                a[i][j] = v as u64;
            }
        }
        let mut rank = 0;
        for j in 0..self.cols() {
            let Some(piv) = (rank..self.rows).find(|&i| a[i][j] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = inv_mod(a[rank][j] as u32, self.p) as u64;
            for x in a[rank].iter_mut() {
                *x = *x * inv % p;
            }
            let pivot_row = a[rank].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != rank && row[j] != 0 {
                    let f = row[j];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + (p - f) * y) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Column echelon form: every pivot column has a distinct leading row.
/// `history` records each reduced column as a combination of original ones.
struct Echelon {
    p: u32,
    pivots: BTreeMap<usize, (SparseVec, SparseVec)>,
    kernel: Vec<SparseVec>,
}

impl Echelon {
    fn new(m: &FpMatrix) -> Self {
        let mut e = Echelon { p: m.p, pivots: BTreeMap::new(), kernel: Vec::new() };
        for (j, col) in m.columns.iter().enumerate() {
            let (v, h) = e.reduce(col.clone(), vec![(j, 1)]);
            match v.first() {
                None => e.kernel.push(h),
                Some(&(lead, c)) => {
                    let inv = inv_mod(c, e.p);
                    let scale = |x: &SparseVec| -> SparseVec {
                        x.iter().map(|&(i, a)| (i, ((a as u64 * inv as u64) % e.p as u64) as u32)).collect()
                    };
                    e.pivots.insert(lead, (scale(&v), scale(&h)));
                }
            }
        }
        e
    }

    /// Eliminates leading entries against the pivots. A nonzero result has
    /// a non-pivot leading row, so it lies outside the column span.
    fn reduce(&self, mut v: SparseVec, mut h: SparseVec) -> (SparseVec, SparseVec) {
        while let Some(&(lead, c)) = v.first() {
            let Some((pv, ph)) = self.pivots.get(&lead) else {
                break;
            };
            let neg = self.p - c;
            v = axpy(self.p, &v, neg, pv);
            h = axpy(self.p, &h, neg, ph);
        }
        (v, h)
    }
}

/// Stored entries needed for `d_n`: at most `3n + 2` per row.
pub fn d_matrix_size(ctx: &GroupContext, n: usize) -> Result<u128> {
    let rows = tuple_count(ctx, n + 1)? as u128;
    Ok(rows * (3 * n as u128 + 2))
}

fn check_budget(ctx: &GroupContext, n: usize, budget: u128) -> Result<()> {
    let required = d_matrix_size(ctx, n)?;
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// The matrix of `d_n : C^n → C^{n+1}` in the tuple bases, rows and columns
/// in key order, assembled from the normalized bar formula.
pub fn d_matrix(ctx: &GroupContext, n: usize, budget: u128) -> Result<FpMatrix> {
    check_budget(ctx, n, budget)?;
    let p = ctx.p();
    let base = (ctx.order() - 1) as u64;
    let nb = base as usize;
    let elems: Vec<GroupElem> = ctx.nonidentity().collect();
    let cols = tuple_count(ctx, n)? as usize;
    let mut m = FpMatrix::zero(p, tuple_count(ctx, n + 1)? as usize, cols);
    let mut odo = TupleOdometer::new(nb, n + 1);
    let mut row = 0usize;
    let mut terms: Vec<(u64, i64)> = Vec::with_capacity(n + 2);
    let mut scratch = Vec::with_capacity(n);
    while let Some(u) = odo.current() {
        terms.clear();
        terms.push((encode(base, &u[1..]), 1));
        for j in 0..n {
            let prod = ctx.mul_elems(&elems[u[j]], &elems[u[j + 1]]);
            if prod.is_identity() {
                continue;
            }
            scratch.clear();
            scratch.extend_from_slice(&u[..j]);
            scratch.push(ctx.index_of(&prod) - 1);
            scratch.extend_from_slice(&u[j + 2..]);
            terms.push((encode(base, &scratch), if j % 2 == 0 { -1 } else { 1 }));
        }
        terms.push((encode(base, &u[..n]), if n % 2 == 0 { -1 } else { 1 }));
        terms.sort_unstable();
        let mut k = 0;
        while k < terms.len() {
            let col = terms[k].0;
            let mut s = 0i64;
            while k < terms.len() && terms[k].0 == col {
                s += terms[k].1;
                k += 1;
            }
            let v = s.rem_euclid(p as i64) as u32;
            if v != 0 {
                m.columns[col as usize].push((row, v));
            }
        }
        row += 1;
        odo.advance();
    }
    Ok(m)
}

/// Dimensions around `H^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CohomologyReport {
    pub p: u32,
    pub r: usize,
    pub n: usize,
    pub dim_cochains: u64,
    pub rank_dn: usize,
    pub dim_ker_dn: usize,
    /// `dim B^n = rank d_{n-1}`.
    pub dim_boundaries: usize,
    pub dim_h: usize,
    /// Number of degree-`n` basis monomials of the target algebra.
    pub expected_dim_h: u64,
}

/// Number of degree-`n` monomial signatures in `r` variables.
pub fn monomial_count(ctx: &GroupContext, n: usize) -> u64 {
    let r = ctx.r() as u64;
    binomial(n as u64 + r - 1, r - 1) as u64
}

pub fn cohomology_dim(ctx: &GroupContext, n: usize, budget: u128) -> Result<CohomologyReport> {
    let dn = d_matrix(ctx, n, budget)?;
    let rank_dn = dn.rank();
    let dim_boundaries = if n == 0 { 0 } else { d_matrix(ctx, n - 1, budget)?.rank() };
    let dim_ker_dn = dn.cols() - rank_dn;
    Ok(CohomologyReport {
        p: ctx.p(),
        r: ctx.r(),
        n,
        dim_cochains: tuple_count(ctx, n)?,
        rank_dn,
        dim_ker_dn,
        dim_boundaries,
        dim_h: dim_ker_dn - dim_boundaries,
        expected_dim_h: monomial_count(ctx, n),
    })
}

fn to_sparse(f: &ICochain) -> SparseVec {
    f.raw_values().iter().map(|(&k, &v)| (k as usize, v as u32)).collect()
}

fn require_mod_p(f: &ICochain) -> Result<()> {
    if f.ring() == CoeffRing::ModP {
        Ok(())
    } else {
        Err(Error::RequiresModP)
    }
}

/// The coboundaries `B^n = im d_{n-1}`, reduced once for repeated queries.
pub struct CoboundarySpace {
    ctx: GroupContext,
    n: usize,
    echelon: Option<Echelon>,
}

impl CoboundarySpace {
    pub fn new(ctx: &GroupContext, n: usize, budget: u128) -> Result<Self> {
        let echelon = if n == 0 { None } else { Some(Echelon::new(&d_matrix(ctx, n - 1, budget)?)) };
        Ok(Self { ctx: *ctx, n, echelon })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.echelon.as_ref().map_or(0, |e| e.pivots.len())
    }

    fn check(&self, f: &ICochain) -> Result<()> {
        self.ctx.check_same(f.ctx())?;
        require_mod_p(f)?;
        if f.degree() != self.n {
            return Err(Error::DegreeMismatch(self.n, f.degree()));
        }
        if !f.is_cocycle() {
            return Err(Error::NotACocycle);
        }
        Ok(())
    }

    /// Some `g` with `d g = f`, if one exists.
    pub fn preimage(&self, f: &ICochain) -> Result<Option<ICochain>> {
        self.check(f)?;
        let Some(e) = &self.echelon else {
            return Ok(f.is_zero().then(|| f.clone()));
        };
        let (v, h) = e.reduce(to_sparse(f), Vec::new());
        if !v.is_empty() {
            return Ok(None);
        }
        let mut g = ICochain::zero(&self.ctx, self.n - 1, CoeffRing::ModP)?;
        for (j, c) in h {
            g.set_key(j as u64, -(c as i64));
        }
        Ok(Some(g))
    }

    pub fn contains(&self, f: &ICochain) -> Result<bool> {
        Ok(self.preimage(f)?.is_some())
    }

    pub fn classes_equal(&self, f: &ICochain, g: &ICochain) -> Result<bool> {
        self.contains(&f.sub(g)?)
    }
}

pub fn is_coboundary(f: &ICochain, budget: u128) -> Result<bool> {
    CoboundarySpace::new(f.ctx(), f.degree(), budget)?.contains(f)
}

pub fn classes_equal(f: &ICochain, g: &ICochain, budget: u128) -> Result<bool> {
    f.ctx().check_same(g.ctx())?;
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch(f.degree(), g.degree()));
    }
    CoboundarySpace::new(f.ctx(), f.degree(), budget)?.classes_equal(f, g)
}

/// Uniform random cochain over `ring`; integer values are drawn from `[-p, p]`.
pub fn random_cochain(ctx: &GroupContext, n: usize, ring: CoeffRing, seed: u64) -> Result<ICochain> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = ctx.p() as i64;
    let mut out = ICochain::zero(ctx, n, ring)?;
    for key in 0..out.dimension() {
        let v = match ring {
            CoeffRing::ModP => rng.gen_range(0..p),
            CoeffRing::Integers => rng.gen_range(-p..=p),
        };
        out.set_key(key, v);
    }
    Ok(out)
}

/// The mod-p cochain whose values in key order are `v`.
pub fn cochain_from_vector(ctx: &GroupContext, n: usize, v: &[u32]) -> Result<ICochain> {
    let mut out = ICochain::zero(ctx, n, CoeffRing::ModP)?;
    if v.len() as u64 != out.dimension() {
        return Err(Error::ArityMismatch { expected: out.dimension() as usize, got: v.len() });
    }
    for (key, &x) in v.iter().enumerate() {
        out.set_key(key as u64, x as i64);
    }
    Ok(out)
}

/// Uniform random element of `ker d_n` over `F_p`.
pub fn random_cocycle(ctx: &GroupContext, n: usize, seed: u64, budget: u128) -> Result<ICochain> {
    let kernel = d_matrix(ctx, n, budget)?.kernel_basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = ctx.p() as u64;
    let mut acc = vec![0u32; tuple_count(ctx, n)? as usize];
    for v in kernel {
        let c = rng.gen_range(0..p);
        for (a, &x) in acc.iter_mut().zip(&v) {
            *a = ((*a as u64 + c * x as u64) % p) as u32;
        }
    }
    cochain_from_vector(ctx, n, &acc)
}

/// Column `j` of `d_matrix` as an I-cochain.
pub fn column_cochain(ctx: &GroupContext, m: &FpMatrix, n: usize, j: usize) -> Result<ICochain> {
    let mut out = ICochain::zero(ctx, n, CoeffRing::ModP)?;
    for &(i, v) in m.column(j) {
        out.set_key(i as u64, v as i64);
    }
    Ok(out)
}
