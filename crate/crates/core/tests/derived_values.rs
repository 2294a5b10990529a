//! Hand-derived values, recomputed here by naive code that shares nothing
//! with the library beyond the public entry points being compared against.

use std::collections::HashMap;

use fp_cohomology::algebra::count_terms;
use fp_cohomology::generators::{binom_mod_p, h_tilde_eval};
use fp_cohomology::group_ring::t_monomial;
use fp_cohomology::oracle::{cohomology_dim, d_matrix, DEFAULT_BUDGET};
use fp_cohomology::{CoeffRing, GroupContext, MultiIndex, RingElem};

mod naive {
    use std::collections::HashMap;

    /// Nonidentity elements of (Z/p)^r as exponent vectors, lexicographic.
    pub fn nonidentity(p: u32, r: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..r {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    (0..p).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        out.retain(|v| v.iter().any(|&k| k != 0));
        out
    }

    pub fn tuples(elems: &[Vec<u32>], n: usize) -> Vec<Vec<Vec<u32>>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t: Vec<Vec<u32>>| {
                    elems.iter().map(move |u| {
                        let mut s = t.clone();
                        s.push(u.clone());
                        s
                    })
                })
                .collect();
        }
        out
    }

    /// Dense matrix of the normalized bar coboundary C^n -> C^{n+1}, mod p.
    pub fn bar_matrix(p: u32, r: usize, n: usize) -> Vec<Vec<i64>> {
        let elems = nonidentity(p, r);
        let cols = tuples(&elems, n);
        let index: HashMap<Vec<Vec<u32>>, usize> =
            cols.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let rows = tuples(&elems, n + 1);
        let mut m = vec![vec![0i64; cols.len()]; rows.len()];
        for (i, u) in rows.iter().enumerate() {
            let mut add = |t: Vec<Vec<u32>>, s: i64| {
                if let Some(&j) = index.get(&t) {
                    m[i][j] = (m[i][j] + s).rem_euclid(p as i64);
                }
            };
            add(u[1..].to_vec(), 1);
            for j in 0..n {
                let prod: Vec<u32> = u[j].iter().zip(&u[j + 1]).map(|(a, b)| (a + b) % p).collect();
                let mut t = u[..j].to_vec();
                t.push(prod);
                t.extend_from_slice(&u[j + 2..]);
                add(t, if j % 2 == 0 { -1 } else { 1 });
            }
            add(u[..n].to_vec(), if n % 2 == 0 { -1 } else { 1 });
        }
        m
    }

    pub fn rank(p: u32, mut a: Vec<Vec<i64>>) -> usize {
        let p = p as i64;
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for j in 0..cols {
            let Some(k) = (rank..a.len()).find(|&i| a[i][j] != 0) else { continue };
            a.swap(rank, k);
            let inv = (1..p).find(|x| x * a[rank][j] % p == 1).unwrap();
            let pivot: Vec<i64> = a[rank].iter().map(|x| x * inv % p).collect();
            for row in a.iter_mut() {
                let f = row[j];
                if f != 0 {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x = (*x - f * y).rem_euclid(p);
                    }
                }
            }
            a[rank] = pivot;
            rank += 1;
        }
        rank
    }

    pub fn dim_h(p: u32, r: usize, n: usize) -> usize {
        let dn = bar_matrix(p, r, n);
        let cols = nonidentity(p, r).len().pow(n as u32);
        let ker = cols - rank(p, dn);
        let im = if n == 0 { 0 } else { rank(p, bar_matrix(p, r, n - 1)) };
        ker - im
    }

    /// All permutations of 0..n.
    pub fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for rest in permutations(n - 1) {
            for pos in 0..=rest.len() {
                let mut s = rest.clone();
                s.insert(pos, n - 1);
                out.push(s);
            }
        }
        out
    }

    /// Σ over weak compositions of n of |shuffles| (by filtering S_n) × (p-1)^{Σ⌊n_i/2⌋}.
    pub fn term_count(p: u32, r: usize, n: usize) -> u128 {
        let perms = permutations(n);
        let mut total = 0u128;
        for comp in compositions(r, n) {
            let shuffles = perms
                .iter()
                .filter(|s| {
                    let mut start = 0;
                    comp.iter().all(|&b| {
                        let ok = (start + 1..start + b).all(|k| s[k - 1] < s[k]);
                        start += b;
                        ok
                    })
                })
                .count() as u128;
            let halves: u32 = comp.iter().map(|&b| (b / 2) as u32).sum();
            total += shuffles * ((p - 1) as u128).pow(halves);
        }
        total
    }

    pub fn compositions(r: usize, n: usize) -> Vec<Vec<usize>> {
        if r == 1 {
            return vec![vec![n]];
        }
        (0..=n)
            .flat_map(|k| {
                compositions(r - 1, n - k).into_iter().map(move |mut c| {
                    c.insert(0, k);
                    c
                })
            })
            .collect()
    }
}

#[test]
fn cohomology_dimensions() {
    let frozen: [(u32, usize, &[usize]); 4] = [
        (2, 2, &[1, 2, 3, 4, 5]),
        (2, 3, &[1, 3, 6, 10]),
        (3, 2, &[1, 2, 3, 4]),
        (5, 1, &[1, 1, 1, 1, 1]),
    ];
    for (p, r, dims) in frozen {
        let c = GroupContext::new(p, r).unwrap();
        for (n, &want) in dims.iter().enumerate() {
            assert_eq!(naive::dim_h(p, r, n), want, "naive p={p} r={r} n={n}");
            assert_eq!(cohomology_dim(&c, n, DEFAULT_BUDGET).unwrap().dim_h, want);
        }
    }
}

#[test]
fn library_d_matrix_matches_naive_rank() {
    for (p, r, top) in [(2, 1, 3), (2, 2, 2), (3, 1, 3), (3, 2, 2), (5, 1, 2)] {
        let c = GroupContext::new(p, r).unwrap();
        for n in 0..=top {
            let m = d_matrix(&c, n, DEFAULT_BUDGET).unwrap();
            let naive = naive::bar_matrix(p, r, n);
            assert_eq!(m.rows(), naive.len());
            for (i, row) in naive.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    assert_eq!(m.get(i, j) as i64, v, "p={p} r={r} n={n} ({i},{j})");
                }
            }
            assert_eq!(m.rank(), naive::rank(p, naive));
        }
    }
    assert_eq!(d_matrix(&GroupContext::new(2, 1).unwrap(), 1, DEFAULT_BUDGET).unwrap().rank(), 0);
}

#[test]
fn term_counts() {
    assert_eq!(naive::term_count(3, 1, 2), 2);
    assert_eq!(naive::term_count(3, 2, 2), 6);
    assert_eq!(naive::term_count(2, 2, 3), 8);
    for (p, r) in [(2, 1), (2, 3), (3, 2), (5, 2), (7, 3)] {
        let c = GroupContext::new(p, r).unwrap();
        for n in 0..=5 {
            assert_eq!(count_terms(&c, n), naive::term_count(p, r, n), "p={p} r={r} n={n}");
        }
    }
}

#[test]
fn small_ring_identities() {
    // (s - 1)^2 = s^2 - 2s + 1 with s^2 = 1 at p = 2
    let c = GroupContext::new(2, 1).unwrap();
    let t = RingElem::t(&c, 1).unwrap();
    let sq = t.mul(&t).unwrap();
    let s = c.generator(1).unwrap();
    assert_eq!(sq.coeff(&c.identity()), 2);
    assert_eq!(sq.coeff(&s), -2);
    assert!(sq.reduce_mod_p().is_zero());

    // t^2 at p = 3: s^2 - 2s + 1 = (s^2 - 1) - 2(s - 1)
    let c3 = GroupContext::new(3, 1).unwrap();
    let t2 = t_monomial(&c3, &MultiIndex(vec![2]));
    let coords: HashMap<u32, i64> = t2
        .as_difference_basis()
        .unwrap()
        .into_iter()
        .map(|(u, c)| (u.exponents()[0], c))
        .collect();
    assert_eq!(coords, HashMap::from([(2, 1), (1, -2)]));
    // mod 3 this is (s - 1) + (s^2 - 1)
    let s2 = c3.generator_power(1, 2).unwrap();
    let rhs = RingElem::t(&c3, 1)
        .unwrap()
        .add(&RingElem::difference(&c3, CoeffRing::Integers, &s2))
        .unwrap();
    assert_eq!(t2.reduce_mod_p(), rhs.reduce_mod_p());
}

#[test]
fn carry_sums_and_binomials() {
    // -C(4,3) + C(4,4)
    assert_eq!(h_tilde_eval(&GroupContext::new(3, 1).unwrap(), 1, 2, 2).unwrap(), -4 + 1);
    // 6 = C(4,2) is even
    assert_eq!(binom_mod_p(4, 2, 2), 0);
    for n in 0..20 {
        assert_eq!(binom_mod_p(n, 0, 5), 1);
    }
}

#[test]
fn bar_coboundary_of_x1_at_p2() {
    use fp_cohomology::NormalizedCochain;
    let c = GroupContext::new(2, 1).unwrap();
    let s = c.generator(1).unwrap();
    let x = NormalizedCochain::from_fn(&c, 1, CoeffRing::Integers, |t| t[0].exponents()[0] as i64)
        .unwrap();
    // x(s) - x(s·s) + x(s) = 1 - 0 + 1
    assert_eq!(x.coboundary().value(&[s.clone(), s]).unwrap(), 2);
    assert!(x.reduce_mod_p().coboundary().is_zero());
}
