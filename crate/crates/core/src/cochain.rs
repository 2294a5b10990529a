//! Normalized cochains, augmentation-ideal cochains, and their operations.
//!
//! Both flavours share one storage layout: a sparse table of values on
//! `n`-tuples of nonidentity group elements. For a [`NormalizedCochain`] the
//! value at `(u_1, ..., u_n)` is `a(u_1, ..., u_n)`; for an [`ICochain`] it is
//! `f((u_1 - 1) ⊗ ... ⊗ (u_n - 1))`, extended multilinearly to all of `T^n(I)`.
//! Passing between the two is therefore a relabeling.
//!
//! Cup products use the convention
//! `(f ∪ g)(α_1 ⊗ ... ⊗ α_{m+n}) = (-1)^{mn} f(α_1 ⊗ ... ⊗ α_m) g(α_{m+1} ⊗ ... ⊗ α_{m+n})`,
//! which carries an extra `(-1)^{mn}` compared to the usual textbook formula.

use std::collections::BTreeMap;
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::group_ring::{c_add, c_mul, CoeffRing, GroupContext, GroupElem, RingElem};
use crate::permutation::Permutation;

/// Largest degree-`n` table that coboundaries expand into a dense lookup array.
const DENSE_LOOKUP_LIMIT: u64 = 1 << 22;

/// Marker for the storage interpretation of a [`Cochain`].
pub trait CochainKind: Clone + std::fmt::Debug + PartialEq + Eq {
    const NAME: &'static str;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Normalized;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IForm;

impl CochainKind for Normalized {
    const NAME: &'static str = "normalized";
}

impl CochainKind for IForm {
    const NAME: &'static str = "icochain";
}

/// A degree-`n` cochain with coefficients in `Z` or `F_p` and trivial action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain<K: CochainKind> {
    ctx: GroupContext,
    degree: usize,
    ring: CoeffRing,
    values: BTreeMap<u64, i64>,
    _kind: PhantomData<K>,
}

pub type NormalizedCochain = Cochain<Normalized>;
pub type ICochain = Cochain<IForm>;

/// Number of nonidentity `n`-tuples, `(p^r - 1)^n`, if it fits in a key.
pub fn tuple_count(ctx: &GroupContext, n: usize) -> Result<u64> {
    let base = (ctx.order() - 1) as u64;
    let exp = u32::try_from(n).unwrap_or(u32::MAX);
    base.checked_pow(exp).ok_or(Error::BudgetExceeded {
        required: (base as u128).saturating_pow(exp),
        budget: u64::MAX as u128,
    })
}

/// Odometer over digit tuples in `[0, base)^n`, last digit fastest, which
/// matches ascending key order.
pub(crate) struct TupleOdometer {
    digits: Vec<usize>,
    base: usize,
    done: bool,
}

impl TupleOdometer {
    pub(crate) fn new(base: usize, n: usize) -> Self {
        Self { digits: vec![0; n], base, done: base == 0 && n > 0 }
    }

    pub(crate) fn current(&self) -> Option<&[usize]> {
        if self.done {
            None
        } else {
            Some(&self.digits)
        }
    }

    pub(crate) fn advance(&mut self) {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.base {
                return;
            }
            *d = 0;
        }
        self.done = true;
    }
}

pub(crate) fn encode(base: u64, digits: &[usize]) -> u64 {
    digits.iter().fold(0u64, |acc, &d| acc * base + d as u64)
}

pub(crate) fn decode(base: u64, n: usize, mut key: u64) -> Vec<usize> {
    let mut digits = vec![0; n];
    for d in digits.iter_mut().rev() {
        *d = (key % base.max(1)) as usize;
        key /= base.max(1);
    }
    digits
}

impl<K: CochainKind> Cochain<K> {
    pub fn zero(ctx: &GroupContext, degree: usize, ring: CoeffRing) -> Result<Self> {
        tuple_count(ctx, degree)?;
        Ok(Self { ctx: *ctx, degree, ring, values: BTreeMap::new(), _kind: PhantomData })
    }

    /// The degree-0 cochain with value `c`.
    pub fn constant(ctx: &GroupContext, ring: CoeffRing, c: i64) -> Self {
        let mut out = Self::zero(ctx, 0, ring).expect("degree 0 always fits");
        out.set_key(0, c);
        out
    }

    /// Builds a cochain from its values on nonidentity tuples. Tuples that
    /// contain the identity must carry value 0.
    pub fn from_values(
        ctx: &GroupContext,
        degree: usize,
        ring: CoeffRing,
        values: impl IntoIterator<Item = (Vec<GroupElem>, i64)>,
    ) -> Result<Self> {
        let mut out = Self::zero(ctx, degree, ring)?;
        for (tuple, c) in values {
            if tuple.len() != degree {
                return Err(Error::ArityMismatch { expected: degree, got: tuple.len() });
            }
            for u in &tuple {
                ctx.elem(u.exponents().to_vec())?;
            }
            if tuple.iter().any(GroupElem::is_identity) {
                if ctx.normalize(ring, c) != 0 {
                    return Err(Error::InvalidElement {
                        exponents: ctx.identity().exponents().to_vec(),
                        p: ctx.p(),
                        r: ctx.r(),
                    });
                }
                continue;
            }
            let key = out.key_of(&tuple);
            out.add_key(key, c);
        }
        Ok(out)
    }

    /// Tabulates `value` over every nonidentity `degree`-tuple.
    pub fn from_fn(
        ctx: &GroupContext,
        degree: usize,
        ring: CoeffRing,
        mut value: impl FnMut(&[GroupElem]) -> i64,
    ) -> Result<Self> {
        let mut out = Self::zero(ctx, degree, ring)?;
        let base = out.base() as usize;
        let mut odo = TupleOdometer::new(base, degree);
        let mut tuple = Vec::with_capacity(degree);
        let mut key = 0u64;
        while let Some(digits) = odo.current() {
            tuple.clear();
            tuple.extend(digits.iter().map(|&d| ctx.elem_at(d + 1)));
            let c = ctx.normalize(ring, value(&tuple));
            if c != 0 {
                out.values.insert(key, c);
            }
            key += 1;
            odo.advance();
        }
        Ok(out)
    }

    /// The `index`-th basis cochain (value 1 on one tuple, in key order).
    pub fn basis(ctx: &GroupContext, degree: usize, ring: CoeffRing, index: u64) -> Result<Self> {
        let mut out = Self::zero(ctx, degree, ring)?;
        assert!(index < out.dimension(), "basis index out of range");
        out.set_key(index, 1);
        Ok(out)
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    /// `(p^r - 1)^n`, the number of free coordinates.
    pub fn dimension(&self) -> u64 {
        tuple_count(&self.ctx, self.degree).expect("checked at construction")
    }

    pub(crate) fn base(&self) -> u64 {
        (self.ctx.order() - 1) as u64
    }

    pub(crate) fn key_of(&self, tuple: &[GroupElem]) -> u64 {
        let base = self.base();
        tuple
            .iter()
            .fold(0u64, |acc, u| acc * base + (self.ctx.index_of(u) - 1) as u64)
    }

    pub(crate) fn tuple_of(&self, key: u64) -> Vec<GroupElem> {
        decode(self.base(), self.degree, key)
            .into_iter()
            .map(|d| self.ctx.elem_at(d + 1))
            .collect()
    }

    pub(crate) fn value_at_key(&self, key: u64) -> i64 {
        self.values.get(&key).copied().unwrap_or(0)
    }

    pub(crate) fn set_key(&mut self, key: u64, c: i64) {
        let c = self.ctx.normalize(self.ring, c);
        if c == 0 {
            self.values.remove(&key);
        } else {
            self.values.insert(key, c);
        }
    }

    pub(crate) fn add_key(&mut self, key: u64, c: i64) {
        let s = c_add(self.value_at_key(key), c);
        self.set_key(key, s);
    }

    pub(crate) fn raw_values(&self) -> &BTreeMap<u64, i64> {
        &self.values
    }

    /// The stored value on a tuple; zero if any entry is the identity.
    pub fn value(&self, tuple: &[GroupElem]) -> Result<i64> {
        if tuple.len() != self.degree {
            return Err(Error::ArityMismatch { expected: self.degree, got: tuple.len() });
        }
        if tuple.iter().any(GroupElem::is_identity) {
            return Ok(0);
        }
        Ok(self.value_at_key(self.key_of(tuple)))
    }

    /// Nonzero entries in ascending tuple order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<GroupElem>, i64)> + '_ {
        self.values.iter().map(|(&k, &v)| (self.tuple_of(k), v))
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.ctx.check_same(&other.ctx)?;
        if self.ring != other.ring {
            return Err(Error::CoeffRingMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&k, &v) in &other.values {
            out.add_key(k, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self { values: BTreeMap::new(), ..self.clone() };
        for (&k, &v) in &self.values {
            out.set_key(k, c_mul(v, c));
        }
        out
    }

    pub fn reduce_mod_p(&self) -> Self {
        let mut out = Self { values: BTreeMap::new(), ring: CoeffRing::ModP, ..self.clone() };
        for (&k, &v) in &self.values {
            out.set_key(k, v);
        }
        out
    }

    /// Dense copy of the value table, when small enough.
    pub(crate) fn dense_lookup(&self) -> Option<Vec<i64>> {
        let len = self.dimension();
        if len > DENSE_LOOKUP_LIMIT {
            return None;
        }
        let mut dense = vec![0i64; len as usize];
        for (&k, &v) in &self.values {
            dense[k as usize] = v;
        }
        Some(dense)
    }

    fn relabel<L: CochainKind>(&self) -> Cochain<L> {
        Cochain {
            ctx: self.ctx,
            degree: self.degree,
            ring: self.ring,
            values: self.values.clone(),
            _kind: PhantomData,
        }
    }

    /// `(σf)(β_1 ⊗ ... ⊗ β_n) = sgn(σ) f(β_{σ⁻¹(1)} ⊗ ... ⊗ β_{σ⁻¹(n)})`.
    ///
    /// As composition `σ(τf) = (τ∘σ)f`, a right action written on the left.
    pub fn sigma_act(&self, perm: &Permutation) -> Result<Self> {
        if perm.len() != self.degree {
            return Err(Error::PermutationSize { perm: perm.len(), degree: self.degree });
        }
        let base = self.base();
        let sign = perm.sign();
        let mut out = Self { values: BTreeMap::new(), ..self.clone() };
        let mut moved = vec![0usize; self.degree];
        for (&k, &v) in &self.values {
            let digits = decode(base, self.degree, k);
            for (slot, m) in moved.iter_mut().enumerate() {
                *m = digits[perm.apply(slot)];
            }
            out.set_key(encode(base, &moved), sign * v);
        }
        Ok(out)
    }
}

/// G-action on the rank-one coefficient module.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Action {
    #[default]
    Trivial,
    /// `u = s^k` acts on `Z` by `(-1)^{Σ w_i k_i}`; only meaningful for `p = 2`.
    Sign(Vec<u32>),
}

impl Action {
    fn validate(&self, ctx: &GroupContext, ring: CoeffRing) -> Result<()> {
        match self {
            Action::Trivial => Ok(()),
            Action::Sign(w) => {
                if ctx.p() == 2 && ring == CoeffRing::Integers && w.len() == ctx.r() {
                    Ok(())
                } else {
                    Err(Error::InvalidAction)
                }
            }
        }
    }

    fn act(&self, u: &GroupElem, m: i64) -> i64 {
        match self {
            Action::Trivial => m,
            Action::Sign(w) => {
                let parity: u32 = w.iter().zip(u.exponents()).map(|(a, b)| a * b).sum();
                if parity % 2 == 0 {
                    m
                } else {
                    -m
                }
            }
        }
    }
}

/// Turns a normalized cochain into the I-cochain with the same values.
pub fn correspond(a: &NormalizedCochain) -> ICochain {
    a.relabel()
}

pub fn correspond_back(f: &ICochain) -> NormalizedCochain {
    f.relabel()
}

/// A pure tensor `α_1 ⊗ ... ⊗ α_n` of augmentation-ideal elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    ctx: GroupContext,
    factors: Vec<RingElem>,
}

impl Tensor {
    pub fn new(ctx: &GroupContext, factors: Vec<RingElem>) -> Result<Self> {
        for a in &factors {
            ctx.check_same(a.ctx())?;
            if !a.in_augmentation_ideal() {
                return Err(Error::NotInAugmentationIdeal(a.augmentation()));
            }
        }
        Ok(Self { ctx: *ctx, factors })
    }

    /// `(u_1 - 1) ⊗ ... ⊗ (u_n - 1)` over `Z`.
    pub fn from_elems(ctx: &GroupContext, elems: &[GroupElem]) -> Self {
        let factors = elems
            .iter()
            .map(|u| RingElem::difference(ctx, CoeffRing::Integers, u))
            .collect();
        Self { ctx: *ctx, factors }
    }

    pub fn factors(&self) -> &[RingElem] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn concat(&self, other: &Tensor) -> Tensor {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Tensor { ctx: self.ctx, factors }
    }
}

/// Coordinates of each tensor factor in the difference basis, as
/// `(digit, coefficient)` lists, reduced into `ring`.
pub(crate) fn factor_coordinates(
    ctx: &GroupContext,
    ring: CoeffRing,
    factors: &[RingElem],
) -> Result<Vec<Vec<(usize, i64)>>> {
    factors
        .iter()
        .map(|a| {
            if ring == CoeffRing::Integers && a.ring() == CoeffRing::ModP {
                return Err(Error::CoeffRingMismatch);
            }
            Ok(a.as_difference_basis()?
                .into_iter()
                .map(|(u, c)| (ctx.index_of(&u) - 1, ctx.normalize(ring, c)))
                .filter(|&(_, c)| c != 0)
                .collect())
        })
        .collect()
}

impl ICochain {
    /// Evaluates on a pure tensor by expanding every factor in the
    /// difference basis.
    pub fn eval(&self, t: &Tensor) -> Result<i64> {
        self.ctx.check_same(&t.ctx)?;
        if t.len() != self.degree {
            return Err(Error::ArityMismatch { expected: self.degree, got: t.len() });
        }
        let coords = factor_coordinates(&self.ctx, self.ring, &t.factors)?;
        Ok(self.eval_coordinates(&coords))
    }

    pub(crate) fn eval_coordinates(&self, coords: &[Vec<(usize, i64)>]) -> i64 {
        fn rec(
            f: &ICochain,
            coords: &[Vec<(usize, i64)>],
            base: u64,
            key: u64,
            weight: i64,
            acc: &mut i64,
        ) {
            match coords.split_first() {
                None => {
                    let v = f.value_at_key(key);
                    if v != 0 {
                        *acc = f.ctx.normalize(f.ring, c_add(*acc, c_mul(weight, v)));
                    }
                }
                Some((first, rest)) => {
                    for &(d, c) in first {
                        let w = f.ctx.normalize(f.ring, c_mul(weight, c));
                        rec(f, rest, base, key * base + d as u64, w, acc);
                    }
                }
            }
        }
        let mut acc = 0;
        rec(self, coords, self.base(), 0, 1, &mut acc);
        acc
    }

    /// Coboundary in I-form with trivial action:
    /// `(df)(α_1 ⊗ ... ⊗ α_{n+1}) = Σ_{i=1}^{n} (-1)^i f(... ⊗ α_i α_{i+1} ⊗ ...)`.
    pub fn coboundary(&self) -> ICochain {
        self.coboundary_with_action(&Action::Trivial)
            .expect("trivial action is always valid")
    }

    /// Coboundary in I-form for a general action, including the
    /// `α_1 f(α_2 ⊗ ... ⊗ α_{n+1})` term.
    pub fn coboundary_with_action(&self, action: &Action) -> Result<ICochain> {
        action.validate(&self.ctx, self.ring)?;
        let ctx = self.ctx;
        let n = self.degree;
        let base = self.base();
        let nb = base as usize;
        let mut out = ICochain::zero(&ctx, n + 1, self.ring)?;

        // (u-1)(v-1) in the difference basis, computed in the group ring.
        let elems: Vec<GroupElem> = ctx.nonidentity().collect();
        let mut products: Vec<Vec<(usize, i64)>> = Vec::with_capacity(nb * nb);
        for u in &elems {
            let du = RingElem::difference(&ctx, CoeffRing::Integers, u);
            for v in &elems {
                let dv = RingElem::difference(&ctx, CoeffRing::Integers, v);
                let prod = du.mul(&dv).expect("same context");
                products.push(
                    prod.as_difference_basis()
                        .expect("I is an ideal")
                        .into_iter()
                        .map(|(w, c)| (ctx.index_of(&w) - 1, c))
                        .collect(),
                );
            }
        }

        let dense = self.dense_lookup();
        let lookup = |key: u64| -> i64 {
            match &dense {
                Some(d) => d[key as usize],
                None => self.value_at_key(key),
            }
        };
        let mut pow = vec![1u64; n + 2];
        for j in 1..pow.len() {
            pow[j] = pow[j - 1].saturating_mul(base);
        }

        let mut odo = TupleOdometer::new(nb, n + 1);
        let mut out_key = 0u64;
        let mut prefix = vec![0u64; n + 2];
        let mut suffix = vec![0u64; n + 3];
        while let Some(w) = odo.current() {
            // prefix[i] = key of w[0..i]; suffix[i] = key of w[i..]
            for i in 0..=n {
                prefix[i + 1] = prefix[i] * base + w[i] as u64;
            }
            suffix[n + 1] = 0;
            for i in (0..=n).rev() {
                suffix[i] = w[i] as u64 * pow[n - i] + suffix[i + 1];
            }
            let mut total = 0i64;
            if let Action::Sign(_) = action {
                // (u_1 - 1)·f(rest)
                let m = lookup(suffix[1]);
                total = c_add(total, action.act(&elems[w[0]], m) - m);
            }
            for i in 0..n {
                let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                let head = prefix[i] * pow[n - i];
                let tail = suffix[i + 2];
                for &(d, c) in &products[w[i] * nb + w[i + 1]] {
                    let key = head + d as u64 * pow[n - i - 1] + tail;
                    let v = lookup(key);
                    if v != 0 {
                        total = c_add(total, c_mul(sign * c, v));
                    }
                }
            }
            let total = ctx.normalize(self.ring, total);
            if total != 0 {
                out.values.insert(out_key, total);
            }
            out_key += 1;
            odo.advance();
        }
        Ok(out)
    }

    /// `f ∪ g`, with the `(-1)^{mn}` sign.
    pub fn cup(&self, other: &ICochain) -> Result<ICochain> {
        self.ctx.check_same(&other.ctx)?;
        if self.ring != other.ring {
            return Err(Error::CoeffRingMismatch);
        }
        let (m, n) = (self.degree, other.degree);
        let sign = if (m * n) % 2 == 0 { 1 } else { -1 };
        let mut out = ICochain::zero(&self.ctx, m + n, self.ring)?;
        let shift = tuple_count(&self.ctx, n)?;
        for (&kf, &vf) in &self.values {
            for (&kg, &vg) in &other.values {
                out.set_key(kf * shift + kg, c_mul(sign, c_mul(vf, vg)));
            }
        }
        Ok(out)
    }

    /// `f_1 ∪ ... ∪ f_k` evaluated directly as
    /// `(-1)^{l(l-1)/2} Π f_i(block_i)`, `l` the number of odd-degree factors.
    pub fn cup_many(fs: &[ICochain]) -> Result<ICochain> {
        let first = fs.first().ok_or(Error::EmptyProduct)?;
        for f in &fs[1..] {
            first.ctx.check_same(&f.ctx)?;
            if f.ring != first.ring {
                return Err(Error::CoeffRingMismatch);
            }
        }
        let odd = fs.iter().filter(|f| f.degree % 2 == 1).count();
        let sign = if (odd * odd.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
        let total: usize = fs.iter().map(|f| f.degree).sum();
        let mut out = ICochain::zero(&first.ctx, total, first.ring)?;

        let mut acc: Vec<(u64, i64)> = vec![(0, sign)];
        for f in fs {
            let shift = tuple_count(&f.ctx, f.degree)?;
            let mut next = Vec::with_capacity(acc.len() * f.values.len());
            for &(k, v) in &acc {
                for (&kf, &vf) in &f.values {
                    let c = f.ctx.normalize(f.ring, c_mul(v, vf));
                    if c != 0 {
                        next.push((k * shift + kf, c));
                    }
                }
            }
            acc = next;
        }
        for (k, v) in acc {
            out.set_key(k, v);
        }
        Ok(out)
    }

    pub fn is_cocycle(&self) -> bool {
        self.coboundary().is_zero()
    }
}

impl NormalizedCochain {
    /// The normalized bar coboundary with trivial action.
    pub fn coboundary(&self) -> NormalizedCochain {
        self.coboundary_with_action(&Action::Trivial)
            .expect("trivial action is always valid")
    }

    /// `b(u_1..u_{n+1}) = u_1·a(u_2..) + Σ_j (-1)^j a(..u_j u_{j+1}..) + (-1)^{n+1} a(u_1..u_n)`.
    pub fn coboundary_with_action(&self, action: &Action) -> Result<NormalizedCochain> {
        action.validate(&self.ctx, self.ring)?;
        let ctx = self.ctx;
        let n = self.degree;
        let nb = self.base() as usize;
        let elems: Vec<GroupElem> = ctx.nonidentity().collect();
        let dense = self.dense_lookup();
        let value = |tuple: &[usize]| -> i64 {
            let key = encode(nb as u64, tuple);
            match &dense {
                Some(d) => d[key as usize],
                None => self.value_at_key(key),
            }
        };
        let mut out = NormalizedCochain::zero(&ctx, n + 1, self.ring)?;
        let mut odo = TupleOdometer::new(nb, n + 1);
        let mut key = 0u64;
        let mut scratch = Vec::with_capacity(n);
        while let Some(u) = odo.current() {
            let mut total = action.act(&elems[u[0]], value(&u[1..]));
            for j in 0..n {
                let prod = ctx.mul_elems(&elems[u[j]], &elems[u[j + 1]]);
                if prod.is_identity() {
                    continue;
                }
                scratch.clear();
                scratch.extend_from_slice(&u[..j]);
                scratch.push(ctx.index_of(&prod) - 1);
                scratch.extend_from_slice(&u[j + 2..]);
                let v = value(&scratch);
                total = if (j + 1) % 2 == 0 { c_add(total, v) } else { c_add(total, -v) };
            }
            let last = value(&u[..n]);
            total = if (n + 1) % 2 == 0 { c_add(total, last) } else { c_add(total, -last) };
            let total = ctx.normalize(self.ring, total);
            if total != 0 {
                out.values.insert(key, total);
            }
            key += 1;
            odo.advance();
        }
        Ok(out)
    }

    pub fn is_cocycle(&self) -> bool {
        self.coboundary().is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::{t_monomial, MultiIndex};

    fn ctx(p: u32, r: usize) -> GroupContext {
        GroupContext::new(p, r).unwrap()
    }

    fn e(c: &GroupContext, k: &[u32]) -> GroupElem {
        c.elem(k.to_vec()).unwrap()
    }

    /// A deterministic "random" cochain without pulling in the oracle module.
    fn scrambled<K: CochainKind>(c: &GroupContext, n: usize, ring: CoeffRing, salt: u64) -> Cochain<K> {
        let mut state = salt.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
        Cochain::from_fn(c, n, ring, |_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 7) as i64 - 3
        })
        .unwrap()
    }

    #[test]
    fn correspondence_is_value_for_value() {
        let c = ctx(3, 2);
        let s1 = c.generator(1).unwrap();
        let a = NormalizedCochain::from_values(&c, 1, CoeffRing::ModP, [(vec![s1.clone()], 1)])
            .unwrap();
        let f = correspond(&a);
        let t = Tensor::from_elems(&c, &[s1]);
        assert_eq!(f.eval(&t).unwrap(), 1);
        assert_eq!(correspond_back(&f), a);
        let zero = NormalizedCochain::zero(&c, 2, CoeffRing::ModP).unwrap();
        assert!(correspond(&zero).is_zero());
    }

    #[test]
    fn identity_tuples_are_zero() {
        let c = ctx(3, 1);
        let a: NormalizedCochain = scrambled(&c, 2, CoeffRing::Integers, 4);
        assert_eq!(a.value(&[c.identity(), e(&c, &[1])]).unwrap(), 0);
        assert!(NormalizedCochain::from_values(
            &c,
            1,
            CoeffRing::Integers,
            [(vec![c.identity()], 5)]
        )
        .is_err());
    }

    #[test]
    fn eval_on_pairs_matches_values() {
        let c = ctx(2, 2);
        let a: NormalizedCochain = scrambled(&c, 2, CoeffRing::ModP, 11);
        let f = correspond(&a);
        for u in c.nonidentity() {
            for v in c.nonidentity() {
                let t = Tensor::from_elems(&c, &[u.clone(), v.clone()]);
                assert_eq!(f.eval(&t).unwrap(), a.value(&[u.clone(), v.clone()]).unwrap());
            }
        }
    }

    #[test]
    fn eval_errors() {
        let c = ctx(3, 1);
        let f: ICochain = scrambled(&c, 2, CoeffRing::ModP, 2);
        let t = Tensor::from_elems(&c, &[e(&c, &[1])]);
        assert_eq!(f.eval(&t), Err(Error::ArityMismatch { expected: 2, got: 1 }));
        let unit = RingElem::unit(&c, CoeffRing::Integers);
        assert!(Tensor::new(&c, vec![unit]).is_err());
    }

    #[test]
    fn eval_with_zero_factor_vanishes() {
        let c = ctx(3, 2);
        let f: ICochain = scrambled(&c, 2, CoeffRing::Integers, 9);
        let zero = RingElem::zero(&c, CoeffRing::Integers);
        let t = Tensor::new(&c, vec![RingElem::t(&c, 1).unwrap(), zero]).unwrap();
        assert_eq!(f.eval(&t).unwrap(), 0);
    }

    #[test]
    fn high_t_powers_vanish_mod_p() {
        for (p, r) in [(2, 1), (3, 2), (5, 1)] {
            let c = ctx(p, r);
            let f: ICochain = scrambled(&c, 2, CoeffRing::ModP, p as u64);
            for k in [p, p + 1] {
                let tk = t_monomial(&c, &MultiIndex::single(r, 1, k));
                let t = Tensor::new(&c, vec![RingElem::t(&c, r).unwrap(), tk]).unwrap();
                assert_eq!(f.eval(&t).unwrap(), 0, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn constant_coboundary_is_zero() {
        let c = ctx(3, 1);
        let a = NormalizedCochain::constant(&c, CoeffRing::Integers, 5);
        assert!(a.coboundary().is_zero());
        assert!(correspond(&a).coboundary().is_zero());
    }

    #[test]
    fn bar_coboundary_of_x1_at_p2() {
        let c = ctx(2, 1);
        let s = e(&c, &[1]);
        let a = NormalizedCochain::from_values(&c, 1, CoeffRing::Integers, [(vec![s.clone()], 1)])
            .unwrap();
        let b = a.coboundary();
        // a(s) - a(s*s) + a(s) = 2
        assert_eq!(b.value(&[s.clone(), s.clone()]).unwrap(), 2);
        assert!(b.reduce_mod_p().is_zero());
    }

    #[test]
    fn coboundary_forms_agree_and_square_to_zero() {
        for (p, r) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)] {
            let c = ctx(p, r);
            for ring in [CoeffRing::Integers, CoeffRing::ModP] {
                for n in 0..3 {
                    let a: NormalizedCochain = scrambled(&c, n, ring, (p as u64) * 31 + n as u64);
                    let da = a.coboundary();
                    let df = correspond(&a).coboundary();
                    assert_eq!(correspond(&da), df, "p={p} r={r} n={n}");
                    assert!(da.coboundary().is_zero());
                    assert!(df.coboundary().is_zero());
                }
            }
        }
    }

    #[test]
    fn sign_action_forms_agree() {
        for r in [1, 2] {
            let c = ctx(2, r);
            let action = Action::Sign(vec![1; r]);
            for n in 0..3 {
                let a: NormalizedCochain = scrambled(&c, n, CoeffRing::Integers, 77 + n as u64);
                let da = a.coboundary_with_action(&action).unwrap();
                let df = correspond(&a).coboundary_with_action(&action).unwrap();
                assert_eq!(correspond(&da), df, "r={r} n={n}");
                assert!(da.coboundary_with_action(&action).unwrap().is_zero());
            }
        }
        // the action term is not the trivial one
        let c = ctx(2, 1);
        let a = NormalizedCochain::constant(&c, CoeffRing::Integers, 1);
        let da = a.coboundary_with_action(&Action::Sign(vec![1])).unwrap();
        assert_eq!(da.value(&[e(&c, &[1])]).unwrap(), -2);
        assert_eq!(
            a.coboundary_with_action(&Action::Sign(vec![1, 0])),
            Err(Error::InvalidAction)
        );
        let c3 = ctx(3, 1);
        let b = NormalizedCochain::constant(&c3, CoeffRing::Integers, 1);
        assert_eq!(b.coboundary_with_action(&Action::Sign(vec![1])), Err(Error::InvalidAction));
    }

    #[test]
    fn cup_signs() {
        let c = ctx(3, 1);
        let s = e(&c, &[1]);
        let s2 = e(&c, &[2]);
        let f = ICochain::from_values(&c, 1, CoeffRing::ModP, [(vec![s.clone()], 1)]).unwrap();
        let g = ICochain::from_values(&c, 1, CoeffRing::ModP, [(vec![s2.clone()], 2)]).unwrap();
        let fg = f.cup(&g).unwrap();
        // -f(α) g(β) = -2 = 1 mod 3
        assert_eq!(fg.value(&[s.clone(), s2.clone()]).unwrap(), 1);

        let c2 = ctx(2, 1);
        let t = e(&c2, &[1]);
        let f2 = ICochain::from_values(&c2, 1, CoeffRing::ModP, [(vec![t.clone()], 1)]).unwrap();
        assert_eq!(f2.cup(&f2).unwrap().value(&[t.clone(), t]).unwrap(), 1);
    }

    #[test]
    fn cup_many_matches_nested_cup() {
        let c = ctx(3, 1);
        let fs: Vec<ICochain> = (0..4)
            .map(|i| scrambled(&c, [1, 2, 1, 1][i], CoeffRing::ModP, 100 + i as u64))
            .collect();
        let nested = fs[1..].iter().fold(fs[0].clone(), |acc, f| acc.cup(f).unwrap());
        assert_eq!(ICochain::cup_many(&fs).unwrap(), nested);
        assert_eq!(ICochain::cup_many(&[]), Err(Error::EmptyProduct));
    }

    #[test]
    fn cup_of_even_cocycles_is_the_product() {
        let c = ctx(3, 1);
        let z = NormalizedCochain::from_fn(&c, 2, CoeffRing::ModP, |t| {
            (t[0].exponents()[0] + t[1].exponents()[0] >= 3) as i64
        })
        .unwrap();
        let h = correspond(&z);
        assert!(h.is_cocycle());
        let hh = h.cup(&h).unwrap();
        assert!(hh.is_cocycle());
        let s = e(&c, &[1]);
        let s2 = e(&c, &[2]);
        let t = Tensor::from_elems(&c, &[s2.clone(), s2.clone(), s.clone(), s2.clone()]);
        assert_eq!(hh.eval(&t).unwrap(), 1);
    }

    #[test]
    fn sigma_act_basics() {
        let c = ctx(3, 1);
        let f: ICochain = scrambled(&c, 2, CoeffRing::ModP, 5);
        assert_eq!(f.sigma_act(&Permutation::identity(2)).unwrap(), f);
        let swapped = f.sigma_act(&Permutation::transposition(2, 0, 1)).unwrap();
        for u in c.nonidentity() {
            for v in c.nonidentity() {
                let lhs = swapped.value(&[u.clone(), v.clone()]).unwrap();
                let rhs = f.value(&[v.clone(), u.clone()]).unwrap();
                assert_eq!(lhs, c.normalize(CoeffRing::ModP, -rhs));
            }
        }
        assert_eq!(
            f.sigma_act(&Permutation::identity(3)),
            Err(Error::PermutationSize { perm: 3, degree: 2 })
        );
    }

    #[test]
    fn sigma_act_composes_as_right_action() {
        let c = ctx(2, 2);
        let f: ICochain = scrambled(&c, 3, CoeffRing::Integers, 8);
        let perms = Permutation::all(3);
        for s in &perms {
            for t in &perms {
                let lhs = f.sigma_act(t).unwrap().sigma_act(s).unwrap();
                assert_eq!(lhs, f.sigma_act(&t.compose(s)).unwrap());
            }
        }
    }
}
