//! The target algebra `F_2[x_1..x_r]` (p = 2) or `Λ(x_1..x_r) ⊗ F_p[y_1..y_r]`
//! (p > 2), the map `τ` into I-cochains, and explicit formulas for its
//! inverse `θ`.
//!
//! A [`MonomialSig`] `(n_1, ..., n_r)` stands for `x_1^{n_1} ... x_r^{n_r}` when
//! `p = 2` and for `x_1^{(n_1)} ... x_r^{(n_r)}` when `p > 2`, where
//! `x^{(2k)} = y^k` and `x^{(2k+1)} = x y^k`.

use std::collections::BTreeMap;
use std::fmt;

use crate::cochain::{factor_coordinates, ICochain, NormalizedCochain};
use crate::error::{Error, Result};
use crate::generators::{f_im, s_imq, t_im, QSequence};
use crate::group_ring::{binomial, CoeffRing, GroupContext, GroupElem};
use crate::permutation::Permutation;

/// Exponent signature of a basis monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialSig(pub Vec<u32>);

impl MonomialSig {
    pub fn one(r: usize) -> Self {
        Self(vec![0; r])
    }

    /// `x_i`, `i` counted from 1.
    pub fn x(r: usize, i: usize) -> Self {
        let mut v = vec![0; r];
        v[i - 1] = 1;
        Self(v)
    }

    /// `y_i = x_i^{(2)}`.
    pub fn y(r: usize, i: usize) -> Self {
        let mut v = vec![0; r];
        v[i - 1] = 2;
        Self(v)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&n| n as usize).sum()
    }

    /// Number of odd entries.
    pub fn odd_count(&self) -> usize {
        self.0.iter().filter(|&&n| n % 2 == 1).count()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Every signature of total degree `n`, ascending.
    pub fn all_of_degree(r: usize, n: usize) -> Vec<MonomialSig> {
        fn rec(r: usize, left: usize, prefix: &mut Vec<u32>, out: &mut Vec<MonomialSig>) {
            if prefix.len() + 1 == r {
                prefix.push(left as u32);
                out.push(MonomialSig(prefix.clone()));
                prefix.pop();
                return;
            }
            for k in 0..=left {
                prefix.push(k as u32);
                rec(r, left - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(r, n, &mut Vec::with_capacity(r), &mut out);
        out
    }
}

impl fmt::Display for MonomialSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Product of two basis monomials as `(sign, signature)`; sign 0 means the
/// product vanishes.
pub fn monomial_mul(p: u32, a: &MonomialSig, b: &MonomialSig) -> (i64, MonomialSig) {
    assert_eq!(a.0.len(), b.0.len(), "signatures of different rank");
    let sum = MonomialSig(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect());
    if p == 2 {
        return (1, sum);
    }
    if a.0.iter().zip(&b.0).any(|(x, y)| x % 2 == 1 && y % 2 == 1) {
        return (0, sum);
    }
    let mut inversions = 0usize;
    let mut odd_b_before = 0usize;
    for i in 0..a.0.len() {
        if a.0[i] % 2 == 1 {
            inversions += odd_b_before;
        }
        if b.0[i] % 2 == 1 {
            odd_b_before += 1;
        }
    }
    (if inversions % 2 == 0 { 1 } else { -1 }, sum)
}

/// An element of the target algebra with `F_p` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElem {
    ctx: GroupContext,
    terms: BTreeMap<MonomialSig, i64>,
}

impl AlgebraElem {
    pub fn zero(ctx: &GroupContext) -> Self {
        Self { ctx: *ctx, terms: BTreeMap::new() }
    }

    pub fn monomial(ctx: &GroupContext, sig: MonomialSig) -> Result<Self> {
        let mut out = Self::zero(ctx);
        out.add_term(sig, 1)?;
        Ok(out)
    }

    pub fn from_terms(
        ctx: &GroupContext,
        terms: impl IntoIterator<Item = (MonomialSig, i64)>,
    ) -> Result<Self> {
        let mut out = Self::zero(ctx);
        for (sig, c) in terms {
            out.add_term(sig, c)?;
        }
        Ok(out)
    }

    pub fn add_term(&mut self, sig: MonomialSig, c: i64) -> Result<()> {
        if sig.0.len() != self.ctx.r() {
            return Err(Error::ArityMismatch { expected: self.ctx.r(), got: sig.0.len() });
        }
        let p = self.ctx.p() as i64;
        let entry = self.terms.entry(sig).or_insert(0);
        *entry = (*entry + c.rem_euclid(p)) % p;
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
        Ok(())
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<MonomialSig, i64> {
        &self.terms
    }

    pub fn coeff(&self, sig: &MonomialSig) -> i64 {
        self.terms.get(sig).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms; `None` for zero or mixed elements.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(MonomialSig::degree);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = self.clone();
        for (sig, &c) in &other.terms {
            out.add_term(sig.clone(), c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (sig, &v) in &self.terms {
            out.add_term(sig.clone(), v * c.rem_euclid(self.ctx.p() as i64))
                .expect("same rank");
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = Self::zero(&self.ctx);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let (sign, sig) = monomial_mul(self.ctx.p(), a, b);
                if sign != 0 {
                    out.add_term(sig, sign * ca * cb)?;
                }
            }
        }
        Ok(out)
    }
}

/// Permutations of `0..n` that are increasing on each consecutive block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleSet {
    sizes: Vec<usize>,
}

impl ShuffleSet {
    pub fn new(sizes: &[usize]) -> Self {
        Self { sizes: sizes.to_vec() }
    }

    pub fn degree(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// The multinomial coefficient `n! / (n_1! ... n_r!)`.
    pub fn len(&self) -> u128 {
        let mut left = self.degree() as u64;
        let mut acc = 1u128;
        for &s in &self.sizes {
            acc *= binomial(left, s as u64) as u128;
            left -= s as u64;
        }
        acc
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Shuffles in lexicographic order of their images, generated by
    /// choosing the target positions of each block in turn.
    pub fn iter(&self) -> impl Iterator<Item = Permutation> {
        fn rec(
            sizes: &[usize],
            free: &mut Vec<usize>,
            images: &mut Vec<usize>,
            out: &mut Vec<Permutation>,
        ) {
            let Some((&size, rest)) = sizes.split_first() else {
                out.push(Permutation::new(images.clone()).expect("shuffle is a permutation"));
                return;
            };
            // choose `size` of the free positions, ascending
            let mut pick: Vec<usize> = (0..size).collect();
            loop {
                let chosen: Vec<usize> = pick.iter().map(|&k| free[k]).collect();
                let remaining: Vec<usize> = free
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| !pick.contains(k))
                    .map(|(_, &v)| v)
                    .collect();
                images.extend_from_slice(&chosen);
                let saved = std::mem::replace(free, remaining);
                rec(rest, free, images, out);
                *free = saved;
                images.truncate(images.len() - size);

                let m = free.len();
                let Some(j) = (0..size).rev().find(|&j| pick[j] < m - size + j) else {
                    return;
                };
                pick[j] += 1;
                for l in j + 1..size {
                    pick[l] = pick[l - 1] + 1;
                }
            }
        }
        let mut out = Vec::new();
        let mut free: Vec<usize> = (0..self.degree()).collect();
        rec(&self.sizes, &mut free, &mut Vec::new(), &mut out);
        out.into_iter()
    }
}

pub fn shuffles(sizes: &[usize]) -> ShuffleSet {
    ShuffleSet::new(sizes)
}

fn koszul_sign(l: usize) -> i64 {
    if (l * l.saturating_sub(1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `τ` on a basis monomial: `f_{1,n_1} ∪ ... ∪ f_{r,n_r}`.
pub fn tau_monomial(ctx: &GroupContext, sig: &MonomialSig) -> Result<ICochain> {
    if sig.0.len() != ctx.r() {
        return Err(Error::ArityMismatch { expected: ctx.r(), got: sig.0.len() });
    }
    let factors = sig
        .0
        .iter()
        .enumerate()
        .map(|(i, &m)| f_im(ctx, i + 1, m as usize))
        .collect::<Result<Vec<_>>>()?;
    ICochain::cup_many(&factors)
}

/// `τ` extended linearly; the zero element maps to the zero degree-0 cochain.
pub fn tau(e: &AlgebraElem) -> Result<ICochain> {
    if e.is_zero() {
        return ICochain::zero(&e.ctx, 0, CoeffRing::ModP);
    }
    let n = e.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let mut out = ICochain::zero(&e.ctx, n, CoeffRing::ModP)?;
    for (sig, &c) in &e.terms {
        out = out.add(&tau_monomial(&e.ctx, sig)?.scale(c))?;
    }
    Ok(out)
}

fn require_mod_p<K: crate::cochain::CochainKind>(
    f: &crate::cochain::Cochain<K>,
) -> Result<()> {
    if f.ring() == CoeffRing::ModP {
        Ok(())
    } else {
        Err(Error::RequiresModP)
    }
}

/// `θ` on an arbitrary mod-p I-cochain. Linear; inverse to `τ` on classes.
pub fn theta(f: &ICochain) -> Result<AlgebraElem> {
    require_mod_p(f)?;
    if f.ctx().p() == 2 {
        theta_p2(f)
    } else {
        theta_shuffle_form(f)
    }
}

/// `θ` for `p = 2`: `Σ f(t_{i_1} ⊗ ... ⊗ t_{i_n}) x_{i_1} ... x_{i_n}`.
fn theta_p2(f: &ICochain) -> Result<AlgebraElem> {
    let ctx = *f.ctx();
    let n = f.degree();
    let r = ctx.r();
    let mut out = AlgebraElem::zero(&ctx);
    let gens: Vec<GroupElem> = (1..=r).map(|i| ctx.generator(i)).collect::<Result<_>>()?;
    for idx in index_sequences(r, n) {
        let tuple: Vec<GroupElem> = idx.iter().map(|&i| gens[i].clone()).collect();
        let v = f.value(&tuple)?;
        if v != 0 {
            let mut sig = vec![0u32; r];
            idx.iter().for_each(|&i| sig[i] += 1);
            out.add_term(MonomialSig(sig), v)?;
        }
    }
    Ok(out)
}

/// All sequences in `[0, r)^n`, lexicographic.
fn index_sequences(r: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..r).map(move |i| {
                    let mut t = s.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// `θ` via the shuffle sum
/// `c_{n_1..n_r} = (-1)^{l(l-1)/2} Σ_{σ ∈ Sh(n_1..n_r)} (σf)(t_{1,n_1} ⊗ ... ⊗ t_{r,n_r})`.
/// Valid for every `p`; `theta` uses it for `p > 2`.
pub fn theta_shuffle_form(f: &ICochain) -> Result<AlgebraElem> {
    require_mod_p(f)?;
    let ctx = *f.ctx();
    let n = f.degree();
    let mut out = AlgebraElem::zero(&ctx);
    for sig in MonomialSig::all_of_degree(ctx.r(), n) {
        let mut factors = Vec::with_capacity(n);
        for (i, &m) in sig.0.iter().enumerate() {
            factors.extend(t_im(&ctx, i + 1, m as usize)?.factors().iter().cloned());
        }
        let coords = factor_coordinates(&ctx, CoeffRing::ModP, &factors)?;
        let sizes: Vec<usize> = sig.0.iter().map(|&m| m as usize).collect();
        let mut c = 0i64;
        let mut moved = coords.clone();
        for sigma in shuffles(&sizes).iter() {
            // slot σ(k) of f receives factor k
            for (k, cell) in coords.iter().enumerate() {
                moved[sigma.apply(k)].clone_from(cell);
            }
            c += sigma.sign() * f.eval_coordinates(&moved);
        }
        out.add_term(sig.clone(), koszul_sign(sig.odd_count()) * c)?;
    }
    Ok(out)
}

/// `θ` on cocycles only.
pub fn theta_class(f: &ICochain) -> Result<AlgebraElem> {
    require_mod_p(f)?;
    if !f.is_cocycle() {
        return Err(Error::NotACocycle);
    }
    theta(f)
}

/// `θ` computed from the values of a normalized cochain on explicit tuples
/// of group elements.
pub fn theta_normalized(a: &NormalizedCochain) -> Result<AlgebraElem> {
    Ok(theta_normalized_counted(a)?.0)
}

/// As [`theta_normalized`], also returning the number of cochain values read.
pub fn theta_normalized_counted(a: &NormalizedCochain) -> Result<(AlgebraElem, u128)> {
    require_mod_p(a)?;
    if a.ctx().p() == 2 {
        theta_normalized_p2(a)
    } else {
        theta_normalized_shuffle_counted(a)
    }
}

/// `p = 2`: `Σ a(s_{i_1}, ..., s_{i_n}) x_{i_1} ... x_{i_n}`.
fn theta_normalized_p2(a: &NormalizedCochain) -> Result<(AlgebraElem, u128)> {
    let ctx = *a.ctx();
    let r = ctx.r();
    let gens: Vec<GroupElem> = (1..=r).map(|i| ctx.generator(i)).collect::<Result<_>>()?;
    let mut out = AlgebraElem::zero(&ctx);
    let mut reads = 0u128;
    for idx in index_sequences(r, a.degree()) {
        let tuple: Vec<GroupElem> = idx.iter().map(|&i| gens[i].clone()).collect();
        let v = a.value(&tuple)?;
        reads += 1;
        let mut sig = vec![0u32; r];
        idx.iter().for_each(|&i| sig[i] += 1);
        out.add_term(MonomialSig(sig), v)?;
    }
    Ok((out, reads))
}

/// The shuffle form on normalized cochains:
/// `c = (-1)^{l(l-1)/2} Σ_σ Σ_q (σa)(s_{1,n_1,q_1} ‖ ... ‖ s_{r,n_r,q_r})`.
pub fn theta_normalized_shuffle_form(a: &NormalizedCochain) -> Result<AlgebraElem> {
    Ok(theta_normalized_shuffle_counted(a)?.0)
}

fn theta_normalized_shuffle_counted(a: &NormalizedCochain) -> Result<(AlgebraElem, u128)> {
    require_mod_p(a)?;
    let ctx = *a.ctx();
    let n = a.degree();
    let mut out = AlgebraElem::zero(&ctx);
    let mut reads = 0u128;
    for sig in MonomialSig::all_of_degree(ctx.r(), n) {
        let sizes: Vec<usize> = sig.0.iter().map(|&m| m as usize).collect();
        let mut tuples: Vec<Vec<GroupElem>> = vec![Vec::with_capacity(n)];
        for (i, &m) in sizes.iter().enumerate() {
            let mut next = Vec::new();
            for q in QSequence::all(&ctx, m) {
                let block = s_imq(&ctx, i + 1, m, &q)?;
                for t in &tuples {
                    let mut t = t.clone();
                    t.extend(block.iter().cloned());
                    next.push(t);
                }
            }
            tuples = next;
        }
        let shuffle_list: Vec<Permutation> = shuffles(&sizes).iter().collect();
        let mut c = 0i64;
        let mut moved = vec![ctx.identity(); n];
        for tuple in &tuples {
            for sigma in &shuffle_list {
                // slot σ(k) receives entry k
                for (k, u) in tuple.iter().enumerate() {
                    moved[sigma.apply(k)].clone_from(u);
                }
                c += sigma.sign() * a.value(&moved)?;
                reads += 1;
            }
        }
        out.add_term(sig.clone(), koszul_sign(sig.odd_count()) * c)?;
    }
    Ok((out, reads))
}

/// `N_n = Σ_{n_1+...+n_r=n} multinomial · (p-1)^{Σ ⌊n_i/2⌋}`.
pub fn count_terms(ctx: &GroupContext, n: usize) -> u128 {
    let pm1 = (ctx.p() - 1) as u128;
    MonomialSig::all_of_degree(ctx.r(), n)
        .iter()
        .map(|sig| {
            let sizes: Vec<usize> = sig.0.iter().map(|&m| m as usize).collect();
            let halves: u32 = sig.0.iter().map(|m| m / 2).sum();
            shuffles(&sizes).len() * pm1.pow(halves)
        })
        .sum()
}

/// `Σ_k C(r,k) A^{r-k} B^k ((r-2k) √(p-1))^n` with `A, B = (1 ± 1/√(p-1)) / 2`.
pub fn count_terms_closed_form(ctx: &GroupContext, n: usize) -> f64 {
    let root = ((ctx.p() - 1) as f64).sqrt();
    let a = (1.0 + 1.0 / root) / 2.0;
    let b = (1.0 - 1.0 / root) / 2.0;
    let r = ctx.r() as i32;
    (0..=r)
        .map(|k| {
            binomial(r as u64, k as u64) as f64
                * a.powi(r - k)
                * b.powi(k)
                * (((r - 2 * k) as f64) * root).powi(n as i32)
        })
        .sum()
}
