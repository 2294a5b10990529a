//! Explicit cocycles representing the generators `x_i` and `y_i = β(x_i)`,
//! their cup powers, and the test tensors they are evaluated on.
//!
//! Generator indices `i` are 1-based throughout, matching `s_1, ..., s_r`.

use crate::cochain::{correspond, ICochain, NormalizedCochain, Tensor};
use crate::error::{Error, Result};
use crate::group_ring::{binomial, t_monomial, CoeffRing, GroupContext, GroupElem, MultiIndex, RingElem};

/// `C(n, k) mod p` from the base-`p` digits of `n` and `k`.
pub fn binom_mod_p(mut n: u64, mut k: u64, p: u32) -> i64 {
    let p = p as u64;
    let mut acc = 1i64;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * (binomial(nd, kd) % p as i64) % p as i64;
        n /= p;
        k /= p;
    }
    acc
}

/// `f_i`, the degree-1 cocycle with `f_i(u - 1) = x_i(u)`.
pub fn f_gen(ctx: &GroupContext, i: usize) -> Result<ICochain> {
    ctx.check_index(i)?;
    ICochain::from_fn(ctx, 1, CoeffRing::ModP, |t| t[0].exponents()[i - 1] as i64)
}

/// The integral carry cocycle `z̃_i(u, v) = [k_i + l_i >= p]`.
pub fn z_tilde_gen(ctx: &GroupContext, i: usize) -> Result<NormalizedCochain> {
    ctx.check_index(i)?;
    let p = ctx.p();
    NormalizedCochain::from_fn(ctx, 2, CoeffRing::Integers, |t| {
        (t[0].exponents()[i - 1] + t[1].exponents()[i - 1] >= p) as i64
    })
}

/// `z_i`, the mod-p reduction of `z̃_i`; represents `β(x_i)`.
pub fn z_gen(ctx: &GroupContext, i: usize) -> Result<NormalizedCochain> {
    Ok(z_tilde_gen(ctx, i)?.reduce_mod_p())
}

/// `h_i`, the I-cochain corresponding to `z_i`.
pub fn h_gen(ctx: &GroupContext, i: usize) -> Result<ICochain> {
    Ok(correspond(&z_gen(ctx, i)?))
}

/// `h̃_i`, the integral I-cochain corresponding to `z̃_i`.
pub fn h_tilde_gen(ctx: &GroupContext, i: usize) -> Result<ICochain> {
    Ok(correspond(&z_tilde_gen(ctx, i)?))
}

/// `h̃_i(t_i^k ⊗ t_i^l) = Σ_{h=p}^{k+l} (-1)^{k+l-h} C(k+l, h)`, zero when `k + l < p`.
pub fn h_tilde_eval(ctx: &GroupContext, i: usize, k: u32, l: u32) -> Result<i64> {
    ctx.check_index(i)?;
    let p = ctx.p();
    for e in [k, l] {
        if e == 0 || e >= p {
            return Err(Error::ExponentOutOfRange(e));
        }
    }
    let s = (k + l) as u64;
    Ok((p as u64..=s)
        .map(|h| {
            let b = binomial(s, h);
            if (s - h) % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .sum())
}

/// Cocycle representing `x_i^{(m)}`: `h_i^{∪k}` for `m = 2k`, `f_i ∪ h_i^{∪k}` for `m = 2k+1`.
pub fn f_im(ctx: &GroupContext, i: usize, m: usize) -> Result<ICochain> {
    ctx.check_index(i)?;
    if m == 0 {
        return Ok(ICochain::constant(ctx, CoeffRing::ModP, 1));
    }
    let h = h_gen(ctx, i)?;
    let mut factors = Vec::with_capacity(m / 2 + 1);
    if m % 2 == 1 {
        factors.push(f_gen(ctx, i)?);
    }
    factors.extend(std::iter::repeat_n(h, m / 2));
    ICochain::cup_many(&factors)
}

/// `t_{i,m}`: `(t_i^{p-1} ⊗ t_i)^{⊗k}` for `m = 2k`, with a leading `t_i` for `m = 2k+1`.
pub fn t_im(ctx: &GroupContext, i: usize, m: usize) -> Result<Tensor> {
    ctx.check_index(i)?;
    let t = RingElem::t(ctx, i)?;
    let top = t_monomial(ctx, &MultiIndex::single(ctx.r(), i, ctx.p() - 1));
    let mut factors = Vec::with_capacity(m);
    if m % 2 == 1 {
        factors.push(t.clone());
    }
    for _ in 0..m / 2 {
        factors.push(top.clone());
        factors.push(t.clone());
    }
    Tensor::new(ctx, factors)
}

/// The exponents `q_1, ..., q_k`, `k = ⌊m/2⌋`, each in `[1, p-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QSequence {
    q: Vec<u32>,
}

impl QSequence {
    pub fn new(ctx: &GroupContext, m: usize, q: Vec<u32>) -> Result<Self> {
        if q.len() != m / 2 || q.iter().any(|&x| x == 0 || x >= ctx.p()) {
            return Err(Error::MalformedQ { q, m });
        }
        Ok(Self { q })
    }

    /// Every sequence for degree `m`, lexicographic.
    pub fn all(ctx: &GroupContext, m: usize) -> Vec<QSequence> {
        let k = m / 2;
        let top = ctx.p() - 1;
        let mut out = Vec::new();
        let mut q = vec![1u32; k];
        loop {
            out.push(QSequence { q: q.clone() });
            let mut pos = k;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if q[pos] < top {
                    q[pos] += 1;
                    q[pos + 1..].iter_mut().for_each(|x| *x = 1);
                    break;
                }
            }
        }
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.q
    }
}

/// `s_{i,m,q}`: `(s_i^{q_1}, s_i, ..., s_i^{q_k}, s_i)`, with a leading `s_i` when `m` is odd.
pub fn s_imq(ctx: &GroupContext, i: usize, m: usize, q: &QSequence) -> Result<Vec<GroupElem>> {
    ctx.check_index(i)?;
    if q.q.len() != m / 2 {
        return Err(Error::MalformedQ { q: q.q.clone(), m });
    }
    let s = ctx.generator(i)?;
    let mut out = Vec::with_capacity(m);
    if m % 2 == 1 {
        out.push(s.clone());
    }
    for &qj in &q.q {
        out.push(ctx.generator_power(i, qj)?);
        out.push(s.clone());
    }
    Ok(out)
}

/// `t_{i,m,q} = (u_1 - 1) ⊗ ... ⊗ (u_m - 1)` for `(u_j) = s_{i,m,q}`.
pub fn t_imq(ctx: &GroupContext, i: usize, m: usize, q: &QSequence) -> Result<Tensor> {
    Ok(Tensor::from_elems(ctx, &s_imq(ctx, i, m, q)?))
}
