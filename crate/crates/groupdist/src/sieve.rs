//! Elimination of candidate quadruples `(n, h, k, m)` for `23 <= n <= 50` by
//! certified lower-bound inequalities and the profit pipeline.
//!
//! A quadruple survives a stage iff the stage's distance lower bound stays
//! within `delta0(n)`; everything above that threshold cannot belong to a
//! closest pair.

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Quadruple {
    pub n: u32,
    pub h: u32,
    pub k: u32,
    pub m: u32,
}

impl Quadruple {
    pub fn new(n: u32, h: u32, k: u32, m: u32) -> Self {
        Quadruple { n, h, k, m }
    }
}

/// Group-independent transposition threshold used by the sieve:
/// `6n-18` (odd), `6n-20` (n = 2 mod 4), `6n-24` (n = 0 mod 4).
pub fn delta0_n(n: u32) -> u32 {
    if n % 2 == 1 {
        6 * n - 18
    } else if n % 4 == 2 {
        6 * n - 20
    } else {
        6 * n - 24
    }
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u32
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn q_of(n: u32) -> u32 {
    n.div_ceil(3)
}

/// `ceil(a / b)` for positive `b`.
fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1).div_euclid(b)
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// All quadruples satisfying the structural constraints:
/// `23 <= n <= 50`; `1 <= h < n`, `h | n`; `h <= k <= 3n/4`, `h | k`;
/// `m >= 2` (even `n`) or `m >= 3` (odd `n`); `m < n/3` when `h < k` and
/// `n/3 <= m <= n` when `h = k`.
pub fn enumerate_quadruples() -> Vec<Quadruple> {
    let mut out = Vec::new();
    for n in 23..=50u32 {
        let m_lo = if n % 2 == 0 { 2 } else { 3 };
        for h in 1..n {
            if n % h != 0 {
                continue;
            }
            for k in (h..=n).step_by(h as usize) {
                if 4 * k > 3 * n {
                    continue;
                }
                for m in m_lo..=n {
                    let ok = if h < k { 3 * m < n } else { 3 * m >= n };
                    if ok {
                        out.push(Quadruple::new(n, h, k, m));
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct StageResult {
    pub label: String,
    pub survivors_after: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainResult {
    pub stages: Vec<StageResult>,
    pub survivors: Vec<Quadruple>,
    /// Quadruple -> label of the first stage that eliminated it.
    pub eliminated_by: BTreeMap<Quadruple, String>,
}

fn i4(q: Quadruple) -> i64 {
    let (n, h, k, m) = (q.n as i64, q.h as i64, q.k as i64, q.m as i64);
    (n - k) * q_of(q.n) as i64 + (k - h) * m
}

fn i2(q: Quadruple) -> i64 {
    let (n, h, m) = (q.n as i64, q.h as i64, q.m as i64);
    h * ((n - m + 1) / 2) + (n - 2 * h) * m
}

fn i3(q: Quadruple) -> Option<i64> {
    let (n, h) = (q.n as i64, q.h as i64);
    (2 * h == n).then(|| n * n / 4)
}

fn i5(q: Quadruple) -> Option<i64> {
    let (n, h, k, m) = (q.n as i64, q.h as i64, q.k as i64, q.m as i64);
    (n - k < 2 * h).then(|| h * (n - m) + (n - k - h) * q_of(q.n) as i64 + (k - 2 * h) * m)
}

fn i6(q: Quadruple) -> i64 {
    let (n, h, k, m) = (q.n as i64, q.h as i64, q.k as i64, q.m as i64);
    h * (n - m) + (n - k - 2 * h) * q_of(q.n) as i64 + (k - h) * m
}

fn i7(q: Quadruple) -> Option<i64> {
    if q.m != 2 {
        return None;
    }
    let (h, k) = (q.h as i64, q.k as i64);
    Some(i6(q) + k - h - 2 * euler_phi(q.n / 2) as i64)
}

/// Applies the six inequalities and the `n = 32` removal in order, recording
/// the survivor count after every stage. Stage order is immaterial within a
/// stage (pure per-quadruple predicates).
pub fn apply_inequality_chain(quads: &[Quadruple]) -> ChainResult {
    type StageFn = fn(Quadruple) -> Option<i64>;
    let stages: Vec<(&str, StageFn)> = vec![
        ("I4", (|q| Some(i4(q))) as StageFn),
        ("I2", |q| Some(i2(q))),
        ("I3", i3),
        ("I5", i5),
        ("I6", |q| Some(i6(q))),
        ("I7", i7),
    ];
    let mut alive: Vec<Quadruple> = quads.to_vec();
    let mut out_stages = Vec::new();
    let mut eliminated_by = BTreeMap::new();
    for (label, f) in stages {
        alive.retain(|&q| {
            let keep = f(q).map_or(true, |bound| bound <= delta0_n(q.n) as i64);
            if !keep {
                eliminated_by.insert(q, label.to_string());
            }
            keep
        });
        out_stages.push(StageResult { label: label.into(), survivors_after: alive.len() });
    }
    alive.retain(|&q| {
        if q.n == 32 {
            eliminated_by.insert(q, "N32".into());
            false
        } else {
            true
        }
    });
    out_stages.push(StageResult { label: "N32".into(), survivors_after: alive.len() });
    ChainResult { stages: out_stages, survivors: alive, eliminated_by }
}

/// Smallest distance between a pair with `m = 2`: `n^2/4` for `n = 0 mod 4`,
/// `n^2/4 - 1` for `n = 2 mod 4` (the `m = 2` search result).
pub fn m2_floor(n: u32) -> u32 {
    n * n / 4 - if n % 4 == 2 { 1 } else { 0 }
}

/// Drops `m = 2` quadruples; sound because `m2_floor(n) > delta0(n)` for
/// every even `n > 20`.
pub fn eliminate_m2(quads: &[Quadruple]) -> Vec<Quadruple> {
    quads
        .iter()
        .copied()
        .filter(|q| {
            if q.m != 2 {
                return true;
            }
            debug_assert!(m2_floor(q.n) > delta0_n(q.n));
            false
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IgOutcome {
    pub bound: i64,
    pub eliminated: bool,
}

/// The generator-aware refinement for cyclic-only orders: counts the two
/// heavy cosets, the rest of `G \ K`, the remaining generators at `m'`, and
/// the rest of `G \ H` at `m`.
pub fn apply_ig(q: Quadruple, m_prime_lower_bound: u32) -> IgOutcome {
    let (n, h, k, m) = (q.n as i64, q.h as i64, q.k as i64, q.m as i64);
    let phi = euler_phi(q.n) as i64;
    let mp = m_prime_lower_bound as i64;
    let bound = h * (n - m)
        + (n - k - 2 * h) * q_of(q.n) as i64
        + (phi - (n - k)) * mp
        + (n - phi - h) * m;
    IgOutcome { bound, eliminated: bound > delta0_n(q.n) as i64 }
}

/// Separation of isomorphic from non-isomorphic minimal distances at
/// `n = 2p`, `p >= 11` prime.
#[derive(Clone, Debug, Serialize)]
pub struct TwoPBound {
    pub p: u32,
    /// From the `p - 1` order-mismatched involutions.
    pub mismatched_involutions: u32,
    /// Refinement when the cyclic subgroup has a differing row.
    pub refined_subgroup: u32,
    /// The `h = n/2` branch.
    pub half_h: u32,
    pub delta0: u32,
    /// True when the non-isomorphic distance provably exceeds `delta0`.
    pub separated: bool,
}

impl TwoPBound {
    /// Certified lower bound on the distance between the two classes.
    pub fn noniso_lower_bound(&self) -> u32 {
        if self.p >= 13 {
            self.mismatched_involutions
        } else {
            self.refined_subgroup.min(self.half_h)
        }
    }
}

pub fn lemma_2p_bound(n: u32) -> Result<TwoPBound> {
    if n % 2 != 0 || !is_prime(n / 2) || n / 2 < 11 {
        return Err(Error::UnsupportedOrder(n as usize, "needs n = 2p, p prime >= 11".into()));
    }
    let p = n / 2;
    let delta0 = delta0_n(n);
    let mismatched = (p - 1) * p;
    let refined = (p - 1) * p + 2 * (p - 1);
    let half = 2 * p * p;
    let separated =
        if p >= 13 { mismatched > delta0 } else { refined > delta0 && half > delta0 };
    Ok(TwoPBound {
        p,
        mismatched_involutions: mismatched,
        refined_subgroup: refined,
        half_h: half,
        delta0,
        separated,
    })
}

/// Rainbow-matching thresholds consumed by the bound pipeline,
/// keyed by `(l, v)`.
#[derive(Clone, Debug, Default)]
pub struct MuTable(pub BTreeMap<(usize, usize), usize>);

impl MuTable {
    pub fn get(&self, l: usize, v: usize) -> Option<usize> {
        self.0.get(&(l, v)).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EliminationRule {
    /// A guaranteed rainbow `l`-matching pushes the profit past the target.
    Matching { l: usize },
    /// The forced `u` exceeds `(n-k)(n-k-1)`.
    UCapacity,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundState {
    pub quad: Quadruple,
    pub q: u32,
    pub delta0n: u32,
    pub base_count: u32,
    /// Profit needed to push the distance past `delta0(n)`.
    pub needed_profit: i64,
    pub r_max: u32,
    pub s_max: u32,
    pub t_max: u32,
    pub u_min: u32,
    pub eliminated_by: Option<EliminationRule>,
}

/// Derives upper bounds on `r`, `s`, `t` and the forced lower bound on `u`,
/// then tests the rainbow-matching and `u`-capacity eliminations.
///
/// The diagonal rule is applied with any multiplicity for odd `n` (squaring
/// is injective there) and with multiplicity 2 otherwise; `r >= 4` and the
/// `n = 2p` refinement give the further caps. Row caps for `s` and `t` use
/// the smallest multiplicity whose profit reaches the target; the global cap
/// 6 applies when seven cells already force enough profit.
pub fn bound_pipeline(quad: Quadruple, mu: &MuTable) -> Result<BoundState> {
    let (n, h, k, m) = (quad.n as i64, quad.h as i64, quad.k as i64, quad.m as i64);
    let q = q_of(quad.n) as i64;
    let delta0 = delta0_n(quad.n) as i64;
    let base = (n - k) * q + (k - h) * m;
    let target = delta0 - base + 1;

    let unit = n - 2 * q - m + 1;
    let square_profit = 2 * (n - q - 2 * m);

    let mut r_max = k - h;
    if unit > 0 {
        if quad.n % 2 == 1 {
            let l = ceil_div(target, unit).max(1);
            r_max = r_max.min(l - 1);
        } else if 2 * unit >= target {
            r_max = r_max.min(1);
        }
        if square_profit.min(3 * unit) >= target {
            r_max = r_max.min(3);
        }
        if quad.n % 2 == 0 && is_prime(quad.n / 2) {
            let l = ceil_div(target, unit).max(1);
            r_max = r_max.min(2 * l - 2);
        }
    }
    r_max = r_max.max(0);

    let row_cap = |default: i64| -> i64 {
        let mut cap = default;
        if unit > 0 {
            let l = ceil_div(target - (q - m - 1), unit).max(1);
            cap = cap.min((l - 1) * (k - h));
        }
        if square_profit >= target {
            cap = cap.min(6);
        }
        cap.max(0)
    };
    let s_max = row_cap((k - 1) * (k - h));
    let t_max = row_cap((n - k) * (k - h));

    let u_min = (3 * (k - h) - r_max - s_max - t_max).max(0);

    let mut eliminated_by = None;
    let v = (n - k) as usize;
    for l in (1..=3usize).rev() {
        let mu_lv = mu.get(l, v).ok_or(Error::MissingMu(l, v))? as i64;
        let edges = ceil_div(u_min, 2);
        if edges >= mu_lv && l as i64 * (n - 2 * q - m) >= target {
            eliminated_by = Some(EliminationRule::Matching { l });
            break;
        }
    }
    if eliminated_by.is_none() && u_min > (n - k) * (n - k - 1) {
        eliminated_by = Some(EliminationRule::UCapacity);
    }

    Ok(BoundState {
        quad,
        q: q as u32,
        delta0n: delta0 as u32,
        base_count: base as u32,
        needed_profit: target,
        r_max: r_max as u32,
        s_max: s_max as u32,
        t_max: t_max as u32,
        u_min: u_min as u32,
        eliminated_by,
    })
}

/// Pure evaluations of the late-stage bound formulas, for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct Section10Bounds {
    /// `u <= (n-k)(n-k-1)`.
    pub u_capacity: i64,
    /// `|U \\ (a,b)| >= u - (2n-2k+1)` for a diagonal cell.
    pub surviving_after_r: i64,
    /// `|U \\ (a,b)| >= u - (2n-2k+4)` for a cell of `S` or `T`.
    pub surviving_after_s_or_t: i64,
    /// `|U \\ (a,b)(c,d)| >= u - (4n-4k+8)` for two cells of `S + T`.
    pub surviving_after_two: i64,
    /// `>= u - (4n-4k+5)` when the two `S` cells share three elements.
    pub surviving_after_two_shared: i64,
    /// Profit `2n - 3q - 3m + 1` from three cells of `S` (or of `T`).
    pub triple_cell_profit: i64,
}

pub fn section10_bound_functions(quad: Quadruple, u: u32) -> Section10Bounds {
    let (n, k, m) = (quad.n as i64, quad.k as i64, quad.m as i64);
    let q = q_of(quad.n) as i64;
    let u = u as i64;
    Section10Bounds {
        u_capacity: (n - k) * (n - k - 1),
        surviving_after_r: u - (2 * n - 2 * k + 1),
        surviving_after_s_or_t: u - (2 * n - 2 * k + 4),
        surviving_after_two: u - (4 * n - 4 * k + 8),
        surviving_after_two_shared: u - (4 * n - 4 * k + 5),
        triple_cell_profit: 2 * n - 3 * q - 3 * m + 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta0_parity_cases() {
        assert_eq!(delta0_n(23), 120);
        assert_eq!(delta0_n(24), 120);
        assert_eq!(delta0_n(26), 136);
        assert_eq!(delta0_n(32), 168);
    }

    #[test]
    fn quadruple_divisibility() {
        let all = enumerate_quadruples();
        assert!(all.iter().all(|q| q.n % q.h == 0 && q.k % q.h == 0));
        assert!(!all.iter().any(|q| q.n == 23 && q.h == 2));
        assert!(all.contains(&Quadruple::new(24, 1, 16, 3)));
    }

    #[test]
    fn ig_with_m_equal_reduces_to_i6() {
        for &q in &[Quadruple::new(29, 1, 20, 3), Quadruple::new(24, 2, 16, 3)] {
            let out = apply_ig(q, q.m);
            assert_eq!(out.bound, i6(q));
        }
    }

    #[test]
    fn ig_eliminations_from_supplied_bounds() {
        assert!(apply_ig(Quadruple::new(29, 1, 20, 3), 4).eliminated);
        assert!(apply_ig(Quadruple::new(23, 1, 16, 4), 5).eliminated);
    }

    #[test]
    fn two_p_bounds() {
        let b26 = lemma_2p_bound(26).unwrap();
        assert_eq!(b26.mismatched_involutions, 156);
        assert_eq!(b26.delta0, 136);
        assert!(b26.separated);
        let b22 = lemma_2p_bound(22).unwrap();
        assert_eq!(b22.refined_subgroup, 130);
        assert_eq!(b22.half_h, 242);
        assert_eq!(b22.delta0, 112);
        assert!(b22.separated);
        assert_eq!(b22.noniso_lower_bound(), 130);
        assert!(lemma_2p_bound(20).is_err());
    }

    #[test]
    fn i3_only_fires_on_half_h() {
        let all = enumerate_quadruples();
        let chain = apply_inequality_chain(&all);
        for (q, label) in &chain.eliminated_by {
            if label == "I3" {
                assert_eq!(2 * q.h, q.n);
            }
        }
    }

    #[test]
    fn section10_values() {
        let b = section10_bound_functions(Quadruple::new(25, 1, 17, 3), 34);
        assert_eq!(b.surviving_after_s_or_t, 14);
        let b = section10_bound_functions(Quadruple::new(27, 1, 19, 3), 40);
        assert_eq!(b.surviving_after_s_or_t, 20);
        let b = section10_bound_functions(Quadruple::new(25, 1, 18, 3), 0);
        assert_eq!(b.triple_cell_profit, 15);
    }
}
