//! The acceptance checks, runnable from the library, the CLI `selftest`
//! command, and the acceptance test target.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::algebra::{
    count_terms, count_terms_closed_form, tau, tau_monomial, theta, theta_normalized_counted,
    AlgebraElem, MonomialSig,
};
use crate::cochain::{correspond, ICochain, NormalizedCochain, Tensor};
use crate::generators::{f_gen, h_gen, h_tilde_eval, t_im, t_imq, QSequence};
use crate::group_ring::{t_monomial, CoeffRing, GroupContext, MultiIndex};
use crate::oracle::{cohomology_dim, random_cochain, CoboundarySpace, DEFAULT_BUDGET};

/// Contexts used throughout: every `(p, r)` small enough for exhaustive work.
pub const DESK_SCALE: [(u32, usize); 7] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)];

/// Triples `(p, r, n_max)` where cochain bases are enumerated exhaustively.
pub const EXHAUSTIVE: [(u32, usize, usize); 3] = [(2, 2, 3), (3, 1, 4), (3, 2, 3)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] criterion {}: {} ({})", self.id, self.name, self.detail)
    }
}

type Check = std::result::Result<String, String>;

fn outcome(id: u32, name: &'static str, check: Check) -> CriterionOutcome {
    match check {
        Ok(detail) => CriterionOutcome { id, name, passed: true, detail },
        Err(detail) => CriterionOutcome { id, name, passed: false, detail },
    }
}

fn ctx(p: u32, r: usize) -> GroupContext {
    GroupContext::new(p, r).expect("desk-scale contexts are valid")
}

fn fail<E: std::fmt::Display>(what: impl std::fmt::Display) -> impl FnOnce(E) -> String {
    move |e| format!("{what}: {e}")
}

/// θ(τ(m)) = m for every basis monomial of degree ≤ 5 (p = 2) or ≤ 4 (p > 2).
pub fn round_trip() -> CriterionOutcome {
    let check = || -> Check {
        let mut count = 0;
        for (p, r) in DESK_SCALE {
            let c = ctx(p, r);
            let top = if p == 2 { 5 } else { 4 };
            for n in 0..=top {
                for sig in MonomialSig::all_of_degree(r, n) {
                    let m = AlgebraElem::monomial(&c, sig.clone()).map_err(fail(&sig))?;
                    let f = tau_monomial(&c, &sig).map_err(fail(&sig))?;
                    let back = theta(&f).map_err(fail(&sig))?;
                    if back != m {
                        return Err(format!("p={p} r={r}: θ(τ{sig}) = {:?}", back.terms()));
                    }
                    count += 1;
                }
            }
        }
        Ok(format!("{count} monomials"))
    };
    outcome(1, "θ∘τ is the identity on basis monomials", check())
}

/// θ(d g) = 0 on exhaustive bases and on seeded random cochains elsewhere.
pub fn theta_kills_coboundaries() -> CriterionOutcome {
    let check = || -> Check {
        let mut count = 0;
        for (p, r, top) in EXHAUSTIVE {
            let c = ctx(p, r);
            for n in 1..=top {
                let dim = crate::cochain::tuple_count(&c, n - 1).map_err(fail("size"))?;
                for j in 0..dim {
                    let g = ICochain::basis(&c, n - 1, CoeffRing::ModP, j).map_err(fail("basis"))?;
                    let t = theta(&g.coboundary()).map_err(fail("theta"))?;
                    if !t.is_zero() {
                        return Err(format!("p={p} r={r} n={n}: θ(d e_{j}) ≠ 0"));
                    }
                    count += 1;
                }
            }
        }
        for (p, r) in DESK_SCALE {
            if EXHAUSTIVE.iter().any(|&(q, s, _)| (q, s) == (p, r)) {
                continue;
            }
            let c = ctx(p, r);
            for n in 1..=3 {
                for seed in 0..100u64 {
                    let g = random_cochain(&c, n - 1, CoeffRing::ModP, seed * 31 + n as u64)
                        .map_err(fail("random"))?;
                    if !theta(&g.coboundary()).map_err(fail("theta"))?.is_zero() {
                        return Err(format!("p={p} r={r} n={n} seed={seed}: θ(d g) ≠ 0"));
                    }
                    count += 1;
                }
            }
        }
        Ok(format!("{count} coboundaries"))
    };
    outcome(2, "θ vanishes on coboundaries", check())
}

/// correspond ∘ bar coboundary = I-coboundary ∘ correspond on full bases.
pub fn coboundary_agreement() -> CriterionOutcome {
    let check = || -> Check {
        let mut count = 0;
        for (p, r, top) in EXHAUSTIVE {
            let c = ctx(p, r);
            for n in 0..=top.min(3) {
                let dim = crate::cochain::tuple_count(&c, n).map_err(fail("size"))?;
                for j in 0..dim {
                    for ring in [CoeffRing::ModP, CoeffRing::Integers] {
                        let a = NormalizedCochain::basis(&c, n, ring, j).map_err(fail("basis"))?;
                        if correspond(&a.coboundary()) != correspond(&a).coboundary() {
                            return Err(format!("p={p} r={r} n={n} basis {j} over {ring:?}"));
                        }
                        count += 1;
                    }
                }
            }
        }
        Ok(format!("{count} basis cochains"))
    };
    outcome(3, "bar and I-form coboundaries agree", check())
}

/// Rank-computed dim H^n against the expected monomial counts.
pub fn dimension_oracle() -> CriterionOutcome {
    let cases: [(u32, usize, &[usize]); 4] = [
        (2, 2, &[1, 2, 3, 4, 5]),
        (2, 3, &[1, 3, 6, 10]),
        (3, 2, &[1, 2, 3, 4]),
        (5, 1, &[1, 1, 1, 1, 1]),
    ];
    let check = || -> Check {
        let mut summary = Vec::new();
        for (p, r, expected) in cases {
            let c = ctx(p, r);
            let mut dims = Vec::new();
            for (n, &want) in expected.iter().enumerate() {
                let rep = cohomology_dim(&c, n, DEFAULT_BUDGET).map_err(fail("oracle"))?;
                if rep.expected_dim_h as usize != want {
                    return Err(format!("p={p} r={r} n={n}: monomial count {}", rep.expected_dim_h));
                }
                dims.push(rep.dim_h);
            }
            if dims != expected {
                return Err(format!("p={p} r={r}: dim H = {dims:?}, expected {expected:?}"));
            }
            summary.push(format!("({p},{r}): {dims:?}"));
        }
        Ok(summary.join(", "))
    };
    outcome(4, "cohomology dimensions match monomial counts", check())
}

/// h_i are cocycles, h̃ reduces to h on t-basis pairs, and β(x) = x ∪ x for p = 2.
pub fn bockstein_identities() -> CriterionOutcome {
    let check = || -> Check {
        let mut pairs = 0;
        for (p, r) in DESK_SCALE {
            let c = ctx(p, r);
            for i in 1..=r {
                let h = h_gen(&c, i).map_err(fail("h"))?;
                if !h.is_cocycle() {
                    return Err(format!("p={p} r={r}: h_{i} is not a cocycle"));
                }
                let ti = |k| t_monomial(&c, &MultiIndex::single(r, i, k));
                for k in 1..p {
                    for l in 1..p {
                        let t = Tensor::new(&c, vec![ti(k), ti(l)]).map_err(fail("tensor"))?;
                        let lhs = h_tilde_eval(&c, i, k, l).map_err(fail("h~"))?.rem_euclid(p as i64);
                        let rhs = h.eval(&t).map_err(fail("eval"))?;
                        let closed = (k + l == p) as i64;
                        if lhs != rhs || rhs != closed {
                            return Err(format!("p={p} r={r} i={i} k={k} l={l}"));
                        }
                        pairs += 1;
                    }
                }
            }
        }
        let mut classes = 0;
        for r in 1..=3 {
            let c = ctx(2, r);
            let space = CoboundarySpace::new(&c, 2, DEFAULT_BUDGET).map_err(fail("oracle"))?;
            for i in 1..=r {
                let f = f_gen(&c, i).map_err(fail("f"))?;
                let sq = f.cup(&f).map_err(fail("cup"))?;
                let h = h_gen(&c, i).map_err(fail("h"))?;
                if !space.classes_equal(&sq, &h).map_err(fail("oracle"))? {
                    return Err(format!("r={r}: [f_{i} ∪ f_{i}] ≠ [h_{i}]"));
                }
                classes += 1;
            }
        }
        Ok(format!("{pairs} exponent pairs, {classes} class identities"))
    };
    outcome(5, "Bockstein representatives", check())
}

/// eval(f, t_{i,m}) = Σ_q eval(f, t_{i,m,q}) on seeded random f.
pub fn t_expansion() -> CriterionOutcome {
    let check = || -> Check {
        let mut count = 0;
        for (p, r) in DESK_SCALE {
            let c = ctx(p, r);
            for m in 0..=4 {
                for i in 1..=r {
                    let t = t_im(&c, i, m).map_err(fail("t_im"))?;
                    let qs = QSequence::all(&c, m);
                    let tq: Vec<Tensor> = qs
                        .iter()
                        .map(|q| t_imq(&c, i, m, q))
                        .collect::<crate::Result<_>>()
                        .map_err(fail("t_imq"))?;
                    for seed in 0..20u64 {
                        let f = random_cochain(&c, m, CoeffRing::ModP, 1000 * seed + 10 * m as u64 + i as u64)
                            .map_err(fail("random"))?;
                        let lhs = f.eval(&t).map_err(fail("eval"))?;
                        let mut rhs = 0;
                        for x in &tq {
                            rhs += f.eval(x).map_err(fail("eval"))?;
                        }
                        if lhs != rhs.rem_euclid(p as i64) {
                            return Err(format!("p={p} r={r} i={i} m={m} seed={seed}"));
                        }
                        count += 1;
                    }
                }
            }
        }
        Ok(format!("{count} random cochains"))
    };
    outcome(6, "t_{i,m} expands into the t_{i,m,q}", check())
}

/// Term counts: instrumented θ on normalized cochains, closed form, spot values.
pub fn term_count() -> CriterionOutcome {
    let check = || -> Check {
        for (p, r, n, want) in [(3, 1, 2, 2u128), (3, 2, 2, 6), (2, 2, 3, 8)] {
            let got = count_terms(&ctx(p, r), n);
            if got != want {
                return Err(format!("N({p},{r},{n}) = {got}, expected {want}"));
            }
        }
        let mut worst = 0f64;
        for (p, r) in DESK_SCALE {
            let c = ctx(p, r);
            for n in 0..=4 {
                let exact = count_terms(&c, n);
                let a = random_cochain(&c, n, CoeffRing::ModP, n as u64)
                    .map_err(fail("random"))?;
                let (_, reads) = theta_normalized_counted(&crate::cochain::correspond_back(&a))
                    .map_err(fail("theta"))?;
                if reads != exact {
                    return Err(format!("p={p} r={r} n={n}: {reads} evaluations, N = {exact}"));
                }
                let closed = count_terms_closed_form(&c, n);
                let rel = ((closed - exact as f64) / exact as f64).abs();
                worst = worst.max(rel);
                if rel > 1e-9 {
                    return Err(format!("p={p} r={r} n={n}: closed form {closed} vs {exact}"));
                }
            }
        }
        Ok(format!("max relative error {worst:.2e}"))
    };
    outcome(7, "term count N_n", check())
}

/// [τ(a·b)] = [τ(a) ∪ τ(b)] for all monomial pairs of total degree ≤ 4.
pub fn ring_map() -> CriterionOutcome {
    let check = || -> Check {
        let mut count = 0;
        for (p, r) in [(2, 2), (3, 1), (3, 2)] {
            let c = ctx(p, r);
            let mut spaces: BTreeMap<usize, CoboundarySpace> = BTreeMap::new();
            for da in 0..=4 {
                for db in 0..=4 - da {
                    for a in MonomialSig::all_of_degree(r, da) {
                        for b in MonomialSig::all_of_degree(r, db) {
                            let ea = AlgebraElem::monomial(&c, a.clone()).map_err(fail("alg"))?;
                            let eb = AlgebraElem::monomial(&c, b.clone()).map_err(fail("alg"))?;
                            let prod = ea.mul(&eb).map_err(fail("mul"))?;
                            let lhs = if prod.is_zero() {
                                ICochain::zero(&c, da + db, CoeffRing::ModP).map_err(fail("zero"))?
                            } else {
                                tau(&prod).map_err(fail("tau"))?
                            };
                            let rhs = tau(&ea)
                                .and_then(|x| x.cup(&tau(&eb)?))
                                .map_err(fail("cup"))?;
                            let space = match spaces.entry(da + db) {
                                Entry::Occupied(e) => e.into_mut(),
                                Entry::Vacant(e) => e.insert(
                                    CoboundarySpace::new(&c, da + db, DEFAULT_BUDGET)
                                        .map_err(fail("oracle"))?,
                                ),
                            };
                            let equal = space
                                .classes_equal(&lhs, &rhs)
                                .map_err(fail("oracle"))?;
                            if !equal {
                                return Err(format!("p={p} r={r}: a={a} b={b}"));
                            }
                            count += 1;
                        }
                    }
                }
            }
        }
        Ok(format!("{count} pairs"))
    };
    outcome(8, "τ is multiplicative on classes", check())
}

/// Criteria 1–8 in order.
pub fn run_library_criteria() -> Vec<CriterionOutcome> {
    vec![
        round_trip(),
        theta_kills_coboundaries(),
        coboundary_agreement(),
        dimension_oracle(),
        bockstein_identities(),
        t_expansion(),
        term_count(),
        ring_map(),
    ]
}

/// Golden `invert` inputs paired with their expected output.
pub const GOLDEN_INVERT: [(&str, &str, &str); 3] = [
    (
        "h1_p3",
        include_str!("../tests/golden/h1_p3.json"),
        include_str!("../tests/golden/h1_p3.expected.json"),
    ),
    (
        "z1_p2",
        include_str!("../tests/golden/z1_p2.json"),
        include_str!("../tests/golden/z1_p2.expected.json"),
    ),
    (
        "zero_p3",
        include_str!("../tests/golden/zero_p3.json"),
        include_str!("../tests/golden/zero_p3.expected.json"),
    ),
];

/// Runs `invert` in-process on the golden inputs and compares bytes.
pub fn golden_invert() -> CriterionOutcome {
    let check = || -> Check {
        for (name, input, expected) in GOLDEN_INVERT {
            for _ in 0..2 {
                let got = crate::cli::invert_text(input, None, false).map_err(fail(name))?;
                if got != expected {
                    return Err(format!("{name}: output differs from golden file"));
                }
            }
        }
        Ok(format!("{} golden files", GOLDEN_INVERT.len()))
    };
    outcome(9, "invert golden files are byte-stable", check())
}
