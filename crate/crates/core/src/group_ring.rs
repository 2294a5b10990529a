//! Integral and mod-p group rings of `G = (Z/p)^r`.
//!
//! Elements are stored in the group basis `{s^k}`; the `t`-monomial basis
//! `t^k = (s_1 - 1)^{k_1} ... (s_r - 1)^{k_r}` is available as a derived view
//! through [`RingElem::to_t_basis`] and [`RingElem::from_t_basis`].

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Integer coefficient arithmetic. Overflow is a bug at desk scale, so it
/// panics instead of wrapping.
pub(crate) fn c_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer coefficient overflow")
}

pub(crate) fn c_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer coefficient overflow")
}

/// Exact binomial coefficient, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as i128 / (j + 1) as i128;
    }
    i64::try_from(acc).expect("binomial coefficient overflow")
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Which ring the coefficients live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffRing {
    Integers,
    ModP,
}

/// The ambient group `G = (Z/p)^r` with basis `s_1, ..., s_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupContext {
    p: u32,
    r: usize,
    order: usize,
}

impl GroupContext {
    pub fn new(p: u32, r: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::ZeroRank);
        }
        let order = (p as usize)
            .checked_pow(r as u32)
            .filter(|&o| o <= u32::MAX as usize)
            .ok_or(Error::BudgetExceeded {
                required: (p as u128).saturating_pow(r as u32),
                budget: u32::MAX as u128,
            })?;
        Ok(Self { p, r, order })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `|G| = p^r`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub(crate) fn check_same(&self, other: &GroupContext) -> Result<()> {
        if self.p == other.p && self.r == other.r {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.p, self.r, other.p, other.r))
        }
    }

    /// Reduces `c` into the canonical range for `ring`.
    pub fn normalize(&self, ring: CoeffRing, c: i64) -> i64 {
        match ring {
            CoeffRing::Integers => c,
            CoeffRing::ModP => c.rem_euclid(self.p as i64),
        }
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem(vec![0; self.r])
    }

    /// The basis element `s_i`, with `i` counted from 1.
    pub fn generator(&self, i: usize) -> Result<GroupElem> {
        self.check_index(i)?;
        let mut e = vec![0; self.r];
        e[i - 1] = 1 % self.p;
        Ok(GroupElem(e))
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.r {
            Err(Error::IndexOutOfRange { index: i, rank: self.r })
        } else {
            Ok(())
        }
    }

    /// `s_i^q` with the exponent reduced mod p.
    pub fn generator_power(&self, i: usize, q: u32) -> Result<GroupElem> {
        self.check_index(i)?;
        let mut e = vec![0; self.r];
        e[i - 1] = q % self.p;
        Ok(GroupElem(e))
    }

    pub fn elem(&self, exponents: Vec<u32>) -> Result<GroupElem> {
        if exponents.len() != self.r || exponents.iter().any(|&k| k >= self.p) {
            return Err(Error::InvalidElement { exponents, p: self.p, r: self.r });
        }
        Ok(GroupElem(exponents))
    }

    pub fn mul_elems(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        GroupElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| (x + y) % self.p)
                .collect(),
        )
    }

    /// Position of `u` in the lexicographic enumeration of `G`; the identity is 0.
    pub fn index_of(&self, u: &GroupElem) -> usize {
        u.0.iter().fold(0usize, |acc, &k| acc * self.p as usize + k as usize)
    }

    pub fn elem_at(&self, mut index: usize) -> GroupElem {
        let mut e = vec![0; self.r];
        for slot in e.iter_mut().rev() {
            *slot = (index % self.p as usize) as u32;
            index /= self.p as usize;
        }
        GroupElem(e)
    }

    /// All elements in lexicographic order, identity first.
    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        (0..self.order).map(move |i| self.elem_at(i))
    }

    pub fn nonidentity(&self) -> impl Iterator<Item = GroupElem> + '_ {
        (1..self.order).map(move |i| self.elem_at(i))
    }
}

/// `s^k = s_1^{k_1} ... s_r^{k_r}` with every `k_i` in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem(Vec<u32>);

impl GroupElem {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &k) in self.0.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if k == 1 {
                write!(f, "s{}", i + 1)?;
            } else {
                write!(f, "s{}^{}", i + 1, k)?;
            }
        }
        Ok(())
    }
}

/// Exponent label of a `t`-monomial. Entries may exceed `p - 1`; such
/// monomials are legal and vanish mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(r: usize) -> Self {
        MultiIndex(vec![0; r])
    }

    /// The label of `t_i^k` (1-based `i`).
    pub fn single(r: usize, i: usize, k: u32) -> Self {
        let mut v = vec![0; r];
        v[i - 1] = k;
        MultiIndex(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }
}

/// Element of `Z[G]` or `F_p[G]`, sparse in the group basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElem {
    ctx: GroupContext,
    ring: CoeffRing,
    terms: BTreeMap<GroupElem, i64>,
}

impl RingElem {
    pub fn zero(ctx: &GroupContext, ring: CoeffRing) -> Self {
        Self { ctx: *ctx, ring, terms: BTreeMap::new() }
    }

    pub fn unit(ctx: &GroupContext, ring: CoeffRing) -> Self {
        Self::basis(ctx, ring, ctx.identity())
    }

    /// The group element `u` viewed in the ring.
    pub fn basis(ctx: &GroupContext, ring: CoeffRing, u: GroupElem) -> Self {
        let mut e = Self::zero(ctx, ring);
        e.add_term(u, 1);
        e
    }

    /// `u - 1`.
    pub fn difference(ctx: &GroupContext, ring: CoeffRing, u: &GroupElem) -> Self {
        let mut e = Self::zero(ctx, ring);
        e.add_term(u.clone(), 1);
        e.add_term(ctx.identity(), -1);
        e
    }

    /// `t_i = s_i - 1` over the integers.
    pub fn t(ctx: &GroupContext, i: usize) -> Result<Self> {
        Ok(Self::difference(ctx, CoeffRing::Integers, &ctx.generator(i)?))
    }

    pub fn from_terms(
        ctx: &GroupContext,
        ring: CoeffRing,
        terms: impl IntoIterator<Item = (GroupElem, i64)>,
    ) -> Result<Self> {
        let mut e = Self::zero(ctx, ring);
        for (u, c) in terms {
            if u.0.len() != ctx.r || u.0.iter().any(|&k| k >= ctx.p) {
                return Err(Error::InvalidElement { exponents: u.0, p: ctx.p, r: ctx.r });
            }
            e.add_term(u, c);
        }
        Ok(e)
    }

    pub(crate) fn add_term(&mut self, u: GroupElem, c: i64) {
        let c = self.ctx.normalize(self.ring, c);
        if c == 0 {
            return;
        }
        let ring = self.ring;
        let ctx = self.ctx;
        let entry = self.terms.entry(u);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = ctx.normalize(ring, c_add(*o.get(), c));
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<GroupElem, i64> {
        &self.terms
    }

    pub fn coeff(&self, u: &GroupElem) -> i64 {
        self.terms.get(u).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compatible(&self, other: &RingElem) -> Result<()> {
        self.ctx.check_same(&other.ctx)?;
        if self.ring != other.ring {
            return Err(Error::CoeffRingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElem) -> Result<RingElem> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (u, &c) in &other.terms {
            out.add_term(u.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &RingElem) -> Result<RingElem> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> RingElem {
        let mut out = Self::zero(&self.ctx, self.ring);
        for (u, &v) in &self.terms {
            out.add_term(u.clone(), c_mul(v, c));
        }
        out
    }

    /// Convolution product, `s^k * s^l = s^{(k + l) mod p}`.
    pub fn mul(&self, other: &RingElem) -> Result<RingElem> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.ctx, self.ring);
        for (u, &a) in &self.terms {
            for (v, &b) in &other.terms {
                out.add_term(self.ctx.mul_elems(u, v), c_mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<RingElem> {
        let mut acc = Self::unit(&self.ctx, self.ring);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The sum of the coefficients.
    pub fn augmentation(&self) -> i64 {
        let s = self.terms.values().fold(0i64, |acc, &c| c_add(acc, c));
        self.ctx.normalize(self.ring, s)
    }

    /// Coefficients reduced mod p.
    pub fn reduce_mod_p(&self) -> RingElem {
        let mut out = Self::zero(&self.ctx, CoeffRing::ModP);
        for (u, &c) in &self.terms {
            out.add_term(u.clone(), c);
        }
        out
    }

    pub fn in_augmentation_ideal(&self) -> bool {
        self.augmentation() == 0
    }

    /// Coordinates of `self` in the basis `{u - 1 : u != 1}` of the
    /// augmentation ideal.
    pub fn as_difference_basis(&self) -> Result<BTreeMap<GroupElem, i64>> {
        let aug = self.augmentation();
        if aug != 0 {
            return Err(Error::NotInAugmentationIdeal(aug));
        }
        Ok(self
            .terms
            .iter()
            .filter(|(u, _)| !u.is_identity())
            .map(|(u, &c)| (u.clone(), c))
            .collect())
    }

    /// Expands `s^m = prod (1 + t_i)^{m_i}` binomially.
    pub fn to_t_basis(&self) -> TPolynomial {
        let mut out = TPolynomial::zero(&self.ctx, self.ring);
        for (u, &c) in &self.terms {
            let m = u.exponents();
            let mut k = vec![0u32; self.ctx.r];
            loop {
                let weight = m
                    .iter()
                    .zip(&k)
                    .fold(1i64, |acc, (&mi, &ki)| c_mul(acc, binomial(mi as u64, ki as u64)));
                out.add_term(MultiIndex(k.clone()), c_mul(c, weight));
                // odometer over 0 <= k_i <= m_i
                let mut pos = 0;
                while pos < k.len() {
                    if k[pos] < m[pos] {
                        k[pos] += 1;
                        break;
                    }
                    k[pos] = 0;
                    pos += 1;
                }
                if pos == k.len() {
                    break;
                }
            }
        }
        out
    }

    pub fn from_t_basis(q: &TPolynomial) -> RingElem {
        let mut out = Self::zero(&q.ctx, q.ring);
        for (k, &c) in &q.terms {
            for (u, &v) in &t_monomial(&q.ctx, k).terms {
                out.add_term(u.clone(), c_mul(c, v));
            }
        }
        out
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (u, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{u}")?;
        }
        Ok(())
    }
}

/// `prod_i (s_i - 1)^{k_i}` expanded in the group basis over `Z`.
pub fn t_monomial(ctx: &GroupContext, k: &MultiIndex) -> RingElem {
    assert_eq!(k.0.len(), ctx.r, "multi-index length must equal the rank");
    let mut acc = RingElem::unit(ctx, CoeffRing::Integers);
    for (i, &ki) in k.0.iter().enumerate() {
        if ki == 0 {
            continue;
        }
        let t = RingElem::difference(ctx, CoeffRing::Integers, &ctx.generator(i + 1).unwrap());
        acc = acc.mul(&t.pow(ki).unwrap()).unwrap();
    }
    acc
}

/// Coordinates in the `t`-monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TPolynomial {
    ctx: GroupContext,
    ring: CoeffRing,
    terms: BTreeMap<MultiIndex, i64>,
}

impl TPolynomial {
    pub fn zero(ctx: &GroupContext, ring: CoeffRing) -> Self {
        Self { ctx: *ctx, ring, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, k: MultiIndex, c: i64) {
        let c = self.ctx.normalize(self.ring, c);
        if c == 0 {
            return;
        }
        let s = self.ctx.normalize(self.ring, c_add(self.coeff(&k), c));
        if s == 0 {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, s);
        }
    }

    pub fn coeff(&self, k: &MultiIndex) -> i64 {
        self.terms.get(k).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, i64> {
        &self.terms
    }
}
