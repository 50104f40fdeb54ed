//! Randomized property suite over catalog pairs, random isomorphs, and
//! construction outputs (criterion 7), plus the exhaustive brute-force
//! oracle for class distances at tiny orders.

use groupdist::catalog::catalog;
use groupdist::cayley::{cyclic, CayleyTable};
use groupdist::construct;
use groupdist::iso::is_subgroup;
use groupdist::metrics::{order_mismatch_bound, profile, rstu};
use groupdist::perm::Permutation;
use groupdist::rainbow::{build_gamma_u, is_restricted};
use groupdist::search::{class_distance, SearchConfig};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn random_permutation(rng: &mut StdRng, n: usize, fix_zero: bool) -> Permutation {
    let start = usize::from(fix_zero);
    let mut img: Vec<usize> = (start..n).collect();
    img.shuffle(rng);
    if fix_zero {
        img.insert(0, 0);
    }
    Permutation::from_fn(n, |x| img[x])
}

/// A stream of same-order table pairs mixing catalog entries, random
/// isomorphs, and construction outputs.
fn sample_pairs(rng: &mut StdRng, count: usize) -> Vec<(CayleyTable, CayleyTable)> {
    let mut out = Vec::new();
    let mut construction_pool: Vec<(CayleyTable, CayleyTable)> = Vec::new();
    for k in [3usize, 5, 7] {
        let r = construct::construction1(&cyclic(k)).unwrap();
        construction_pool.push((r.left, r.right));
    }
    for (a, b) in [(3usize, 2usize), (3, 3), (3, 4), (5, 2)] {
        let r = construct::construction2(a, b).unwrap();
        construction_pool.push((r.left, r.right));
    }
    for r in construct::construction3().unwrap() {
        construction_pool.push((r.left, r.right));
    }
    for fx in construct::fixture_examples() {
        construction_pool.push((fx.left, fx.right));
    }
    while out.len() < count {
        match rng.random_range(0..3) {
            0 => {
                // two catalog classes of one order, one relabeled
                let n = rng.random_range(4..=12);
                let cat = catalog(n).unwrap();
                let a = cat[rng.random_range(0..cat.len())].clone();
                let b = cat[rng.random_range(0..cat.len())].clone();
                let fix_zero = rng.random_bool(0.5);
                let f = random_permutation(rng, n, fix_zero);
                out.push((a, b.apply_bijection(&f).unwrap()));
            }
            1 => {
                // a catalog table against a random isomorph of itself
                let n = rng.random_range(4..=16);
                let cat = catalog(n).unwrap();
                let a = cat[rng.random_range(0..cat.len())].clone();
                let f = random_permutation(rng, n, true);
                let b = a.apply_bijection(&f).unwrap();
                out.push((a, b));
            }
            _ => {
                let (a, b) = construction_pool[rng.random_range(0..construction_pool.len())].clone();
                out.push((a, b));
            }
        }
    }
    out
}

#[test]
fn criterion_7_profile_properties() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let pairs = sample_pairs(&mut rng, 700);
    let mut rstu_cases = 0usize;
    for (a, b) in &pairs {
        let n = a.order();
        let p = profile(a, b).unwrap();

        // triple inequality on every difference cell
        for x in 0..n {
            for y in 0..n {
                if a.mul(x, y) != b.mul(x, y) {
                    assert!(
                        p.row_dist[x] + p.row_dist[y] + p.row_dist[a.mul(x, y)] >= n,
                        "triple inequality at ({x},{y})"
                    );
                }
            }
        }

        // H is a subgroup of both tables and row distances are constant on
        // its right cosets
        if p.dist > 0 {
            assert!(is_subgroup(a, &p.h_set));
            assert!(is_subgroup(b, &p.h_set));
            assert_eq!(p.k % p.h, 0);
            for &c in &p.h_set {
                for x in 0..n {
                    assert_eq!(p.row_dist[a.mul(c, x)], p.row_dist[x]);
                }
            }
            // difference cells split cosets
            for x in 0..n {
                for y in 0..n {
                    if a.mul(x, y) != b.mul(x, y) {
                        let cos = |e: usize| {
                            let mut c: Vec<usize> = p.h_set.iter().map(|&s| a.mul(s, e)).collect();
                            c.sort_unstable();
                            c
                        };
                        assert_ne!(cos(y), cos(a.mul(x, y)));
                    }
                }
            }
        }

        // minimum positive row distance
        if let Some(m) = p.m {
            assert!(m >= 2);
            if n % 2 == 1 {
                assert!(m >= 3);
            }
        }

        // order-based lower bound per row
        for x in 0..n {
            if p.row_dist[x] > 0 {
                assert!(order_mismatch_bound(a, b, x) <= p.row_dist[x]);
            }
        }

        // symmetry of the shared statistics
        let q = profile(b, a).unwrap();
        assert_eq!(p.dist, q.dist);
        assert_eq!(p.h_set, q.h_set);
        assert_eq!(p.k_set, q.k_set);
        assert_eq!(p.m, q.m);

        if p.m.map_or(false, |m| m >= 3) {
            rstu_cases += 1;
            let sets = rstu(a, b).unwrap();
            assert!(sets.r() + sets.s() + sets.t() + sets.u() >= 3 * (p.k - p.h));
            for (x, y) in &sets.s_cells {
                let prod_a = a.mul(*x, *y);
                let prod_b = b.mul(*x, *y);
                assert!(3 * p.row_dist[prod_a] >= n);
                assert!(3 * p.row_dist[prod_b] >= n);
            }
            let gu = build_gamma_u(a, b).unwrap();
            assert!(is_restricted(&gu.graph));
            assert!(2 * gu.graph.edge_count() >= gu.u);
        }
    }
    assert!(rstu_cases >= 50, "sampled {rstu_cases} rstu-eligible pairs");
    println!("PASS criterion 7a: profile invariants over {} sampled pairs", pairs.len());
}

#[test]
fn criterion_7_relabeling_invariance() {
    let mut rng = StdRng::seed_from_u64(0xab5e);
    let pairs = sample_pairs(&mut rng, 200);
    for (a, b) in &pairs {
        let n = a.order();
        let g = random_permutation(&mut rng, n, false);
        let (ag, bg) = (a.apply_bijection(&g).unwrap(), b.apply_bijection(&g).unwrap());
        let p = profile(a, b).unwrap();
        let pg = profile(&ag, &bg).unwrap();
        assert_eq!(p.dist, pg.dist);
        for x in 0..n {
            assert_eq!(p.row_dist[x], pg.row_dist[g.apply(x)]);
        }
    }
    println!("PASS criterion 7b: distance invariance under simultaneous relabeling (200 pairs)");
}

#[test]
fn criterion_7_pair_extension_multiplicativity() {
    let mut rng = StdRng::seed_from_u64(0xfeed);
    let pairs = sample_pairs(&mut rng, 100);
    for (a, b) in &pairs {
        let kn = rng.random_range(1..=3);
        let cat = catalog(kn).unwrap();
        let k = &cat[rng.random_range(0..cat.len())];
        let (ea, eb) = construct::pair_extension(a, b, k).unwrap();
        assert_eq!(
            ea.distance(&eb).unwrap(),
            a.distance(b).unwrap() * k.order() * k.order()
        );
    }
    println!("PASS criterion 7c: pair extension multiplies distances by |k|^2 (100 pairs)");
}

/// Independent oracle: minimum positive disagreement count over all `n!`
/// bijections, by direct enumeration.
fn oracle_class_distance(a: &CayleyTable, b: &CayleyTable) -> u32 {
    fn rec(a: &CayleyTable, b: &CayleyTable, phi: &mut Vec<usize>, used: &mut Vec<bool>, best: &mut u32) {
        let n = a.order();
        let pos = phi.len();
        if pos == n {
            let mut d = 0u32;
            for x in 0..n {
                for y in 0..n {
                    if phi[b.mul(x, y)] != a.mul(phi[x], phi[y]) {
                        d += 1;
                    }
                }
            }
            if d > 0 && d < *best {
                *best = d;
            }
            return;
        }
        for c in 0..n {
            if !used[c] {
                used[c] = true;
                phi.push(c);
                rec(a, b, phi, used, best);
                phi.pop();
                used[c] = false;
            }
        }
    }
    let mut best = u32::MAX;
    rec(a, b, &mut Vec::new(), &mut vec![false; a.order()], &mut best);
    best
}

#[test]
fn criterion_7_search_matches_oracle_up_to_order_6() {
    let cfg = SearchConfig::default();
    for n in 2..=6usize {
        let cat = catalog(n).unwrap();
        for i in 0..cat.len() {
            for j in 0..cat.len() {
                let want = oracle_class_distance(&cat[i], &cat[j]);
                let got = class_distance(&cat[i], &cat[j], &cfg).unwrap();
                assert!(got.proven);
                assert_eq!(got.distance, want, "n={n} pair ({i},{j})");
            }
        }
    }
    println!("PASS criterion 7d: search equals the exhaustive oracle for every catalog pair with n <= 6");
}

#[test]
fn criterion_7_search_never_beaten_by_samples() {
    let mut rng = StdRng::seed_from_u64(0xcafe);
    let cfg = SearchConfig::default();
    for _ in 0..20 {
        let n = rng.random_range(5..=8);
        let cat = catalog(n).unwrap();
        let a = cat[rng.random_range(0..cat.len())].clone();
        let b = cat[rng.random_range(0..cat.len())].clone();
        let exact = class_distance(&a, &b, &cfg).unwrap().distance;
        for _ in 0..50 {
            let f = random_permutation(&mut rng, n, false);
            let moved = a.apply_bijection(&f).unwrap();
            let d = moved.distance(&b).unwrap() as u32;
            if d > 0 {
                assert!(exact <= d);
            }
        }
    }
    println!("PASS criterion 7e: sampled bijections never beat the exact class distance");
}
