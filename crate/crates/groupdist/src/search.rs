//! Exact computation of the class distance `dist([a],[b])` by depth-first
//! search over partially defined bijections.
//!
//! The search enumerates maps `phi` from the labels of `b` to the labels of
//! `a` and counts cells where `phi(x b y) != phi(x) a phi(y)`; the minimum
//! positive count over all bijections is the class distance. The outer loop
//! runs over prime-order subgroups `H` of `b` in descending order (maps whose
//! agreeing rows contain `H`), followed by the trivial stage, which may
//! charge every unmapped row a minimum of 2 (even order) or 3 (odd order)
//! guaranteed differences.

use crate::cayley::CayleyTable;
use crate::catalog::catalog;
use crate::error::{Error, Result};
use crate::iso::{automorphisms, find_isomorphism, prime_order_subgroups};
use crate::perm::Permutation;
use rayon::prelude::*;
use std::sync::atomic::{AtomicBool, AtomicU32, AtomicU64, Ordering};
use std::sync::Mutex;

/// Above this many `(g, l)` automorphism pairs the lex pruning falls back to
/// one-sided transforms.
const PAIR_CAP: usize = 50_000;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// A distance known to be achieved by some qualifying pair; seeds the
    /// incumbent.
    pub initial_upper_bound: Option<u32>,
    /// Automorphism lex-pruning is applied while at most this many coset
    /// extensions are completed.
    pub aut_prune_depth: usize,
    pub parallel: bool,
    /// Node cap; exceeding it returns the incumbent flagged unproven.
    pub budget: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { initial_upper_bound: None, aut_prune_depth: 3, parallel: false, budget: None }
    }
}

#[derive(Clone, Debug)]
pub struct ClassDistance {
    pub distance: u32,
    /// `f` with `dist(apply_bijection(a, f), b) = distance`, when available.
    pub witness: Option<Permutation>,
    /// False when the node budget was exhausted before the search closed.
    pub proven: bool,
    pub nodes: u64,
}

struct Step {
    rep: usize,
    /// Elements `h * rep` of the coset together with the factor `h`.
    coset: Vec<(usize, usize)>,
}

struct StagePlan {
    /// Sorted elements of the prime-order subgroup (empty for the trivial
    /// stage).
    seed: Vec<usize>,
    seed_gen: usize,
    seed_images: Vec<usize>,
    steps: Vec<Step>,
    /// Elements whose images the lex pruning compares, in choice order.
    prefix: Vec<usize>,
    bonus_per_row: u32,
    /// Transform pairs (index into aut_a, index into stab) for lex pruning.
    pairs: Vec<(u32, u32)>,
    stab: Vec<Permutation>,
}

struct Shared<'t> {
    a: &'t CayleyTable,
    b: &'t CayleyTable,
    n: usize,
    /// `fibers[v]` lists the cells `(x, y)` with `x b y = v`.
    fibers: Vec<Vec<(u8, u8)>>,
    aut_a: Vec<Permutation>,
    incumbent: AtomicU32,
    best: Mutex<Option<(u32, Vec<u8>)>>,
    nodes: AtomicU64,
    budget: u64,
    exceeded: AtomicBool,
}

struct Walker<'s> {
    sh: &'s Shared<'s>,
    plan: &'s StagePlan,
    phi: Vec<u8>,
    dom: u64,
    img: u64,
    guaranteed: u32,
    aut_limit: usize,
}

impl<'s> Walker<'s> {
    fn new(sh: &'s Shared<'s>, plan: &'s StagePlan, aut_limit: usize) -> Self {
        Walker {
            sh,
            plan,
            phi: vec![0u8; sh.n],
            dom: 1,
            img: 1,
            guaranteed: 0,
            aut_limit,
        }
    }

    fn seed_prime(&mut self, y: usize) {
        let (a, b) = (self.sh.a, self.sh.b);
        let x = self.plan.seed_gen;
        let p = self.plan.seed.len();
        let (mut xe, mut ye) = (x, y);
        for _ in 1..p {
            self.phi[xe] = ye as u8;
            self.dom |= 1 << xe;
            self.img |= 1 << ye;
            xe = b.mul(xe, x);
            ye = a.mul(ye, y);
        }
        debug_assert_eq!(xe, 0);
        debug_assert_eq!(ye, 0);
    }

    /// Newly decidable differing cells after the elements of `step` were
    /// added; `dom_old` is the domain mask before the step.
    fn count_new(&self, step: &Step, dom_old: u64) -> u32 {
        let (a, b, n) = (self.sh.a, self.sh.b, self.sh.n);
        let mut add = 0u32;
        for &(e, _) in &step.coset {
            let pe = self.phi[e] as usize;
            // x in new, y anywhere in the domain
            let mut m = self.dom;
            while m != 0 {
                let y = m.trailing_zeros() as usize;
                m &= m - 1;
                let prod = b.mul(e, y);
                if self.dom >> prod & 1 == 1 && a.mul(pe, self.phi[y] as usize) != self.phi[prod] as usize
                {
                    add += 1;
                }
            }
            // x in the old domain, y in new
            let mut m = dom_old;
            while m != 0 {
                let xo = m.trailing_zeros() as usize;
                m &= m - 1;
                let prod = b.mul(xo, e);
                if self.dom >> prod & 1 == 1
                    && a.mul(self.phi[xo] as usize, pe) != self.phi[prod] as usize
                {
                    add += 1;
                }
            }
            // both old, product lands in new
            for &(x, y) in &self.sh.fibers[e] {
                let (x, y) = (x as usize, y as usize);
                if dom_old >> x & 1 == 1
                    && dom_old >> y & 1 == 1
                    && a.mul(self.phi[x] as usize, self.phi[y] as usize) != pe
                {
                    add += 1;
                }
            }
        }
        let _ = n;
        add
    }

    /// True if some automorphism transform of the current partial map is
    /// lexicographically smaller on the decided prefix.
    fn aut_prunable(&self, depth: usize) -> bool {
        let plen = depth + self.plan.prefix.len().saturating_sub(self.plan.steps.len());
        let aut_a = &self.sh.aut_a;
        let stab = &self.plan.stab;
        'pairs: for &(gi, li) in &self.plan.pairs {
            let g = &aut_a[gi as usize];
            let l = &stab[li as usize];
            for &e in self.plan.prefix.iter().take(plen) {
                let le = l.apply(e);
                if self.dom >> le & 1 == 0 {
                    continue 'pairs;
                }
                let v = g.apply(self.phi[le] as usize);
                let u = self.phi[e] as usize;
                if v != u {
                    if v < u {
                        return true;
                    }
                    continue 'pairs;
                }
            }
        }
        false
    }

    fn extend(&mut self, depth: usize) {
        let sh = self.sh;
        if sh.nodes.fetch_add(1, Ordering::Relaxed) >= sh.budget {
            sh.exceeded.store(true, Ordering::Relaxed);
            return;
        }
        let unmapped = sh.n as u32 - self.dom.count_ones();
        let bound = self.guaranteed + self.plan.bonus_per_row * unmapped;
        if bound >= sh.incumbent.load(Ordering::Relaxed) {
            return;
        }
        if depth == self.plan.steps.len() {
            if self.guaranteed > 0 {
                self.report_leaf();
            }
            return;
        }
        if depth >= 1 && depth <= self.aut_limit && self.aut_prunable(depth) {
            return;
        }
        let step = &self.plan.steps[depth];
        for c in 0..sh.n {
            if self.img >> c & 1 == 1 {
                continue;
            }
            if let Some(add) = self.try_step(step, c) {
                self.extend(depth + 1);
                self.guaranteed -= add;
                self.retract(step, step.coset.len());
            }
            if sh.exceeded.load(Ordering::Relaxed) {
                return;
            }
        }
    }

    /// Assigns the whole coset of `step` using image `c` for the
    /// representative; returns the guaranteed-distance increment, or `None`
    /// (with cleanup) if images collide.
    fn try_step(&mut self, step: &Step, c: usize) -> Option<u32> {
        let a = self.sh.a;
        let dom_old = self.dom;
        for (placed, &(e, h)) in step.coset.iter().enumerate() {
            let im = a.mul(self.phi[h] as usize, c);
            if self.img >> im & 1 == 1 {
                self.retract(step, placed);
                return None;
            }
            self.phi[e] = im as u8;
            self.dom |= 1 << e;
            self.img |= 1 << im;
        }
        let add = self.count_new(step, dom_old);
        self.guaranteed += add;
        Some(add)
    }

    fn retract(&mut self, step: &Step, placed: usize) {
        for &(e, _) in step.coset.iter().take(placed) {
            self.dom &= !(1 << e);
            self.img &= !(1 << self.phi[e]);
        }
    }

    fn report_leaf(&self) {
        let d = self.guaranteed;
        let sh = self.sh;
        sh.incumbent.fetch_min(d, Ordering::Relaxed);
        let mut best = sh.best.lock().unwrap();
        if best.as_ref().map_or(true, |(bd, _)| d < *bd) {
            *best = Some((d, self.phi.clone()));
        }
    }
}

/// Least element of the Aut(a)-orbit of `y`.
fn orbit_min(aut_a: &[Permutation], y: usize) -> usize {
    aut_a.iter().map(|g| g.apply(y)).min().unwrap_or(y)
}

fn build_plans(
    a: &CayleyTable,
    b: &CayleyTable,
    aut_a: &[Permutation],
    aut_b: &[Permutation],
) -> Vec<StagePlan> {
    let n = b.order();
    let mut plans = Vec::new();
    for sub in prime_order_subgroups(b) {
        let p = sub.len();
        let gen = sub[1];
        let mut seed_images: Vec<usize> = (0..n)
            .filter(|&y| a.element_order(y) == p && orbit_min(aut_a, y) == y)
            .collect();
        seed_images.sort_unstable();
        if seed_images.is_empty() {
            continue;
        }
        let steps = coset_chain(b, &sub);
        let mut prefix = vec![gen];
        prefix.extend(steps.iter().map(|s| s.rep));
        let stab: Vec<Permutation> = aut_b
            .iter()
            .filter(|l| {
                let mut img: Vec<usize> = sub.iter().map(|&x| l.apply(x)).collect();
                img.sort_unstable();
                img == sub
            })
            .cloned()
            .collect();
        let pairs = make_pairs(aut_a.len(), stab.len());
        plans.push(StagePlan {
            seed: sub,
            seed_gen: gen,
            seed_images,
            steps,
            prefix,
            bonus_per_row: 0,
            pairs,
            stab,
        });
    }
    // trivial stage: every row outside the domain will differ in at least
    // 2 (even n) or 3 (odd n) cells, since maps with a larger agreeing
    // subgroup were covered above
    let steps: Vec<Step> = (1..n).map(|e| Step { rep: e, coset: vec![(e, 0)] }).collect();
    let prefix: Vec<usize> = (1..n).collect();
    let pairs = make_pairs(aut_a.len(), aut_b.len());
    plans.push(StagePlan {
        seed: Vec::new(),
        seed_gen: 0,
        seed_images: Vec::new(),
        steps,
        prefix,
        bonus_per_row: if n % 2 == 0 { 2 } else { 3 },
        pairs,
        stab: aut_b.to_vec(),
    });
    plans
}

fn make_pairs(na: usize, nb: usize) -> Vec<(u32, u32)> {
    let mut pairs = Vec::new();
    if na * nb <= PAIR_CAP {
        for g in 0..na {
            for l in 0..nb {
                if g != 0 || l != 0 {
                    pairs.push((g as u32, l as u32));
                }
            }
        }
    } else {
        pairs.extend((1..na).map(|g| (g as u32, 0u32)));
        pairs.extend((1..nb).map(|l| (0u32, l as u32)));
    }
    pairs
}

/// The canonical chain of coset extensions: repeatedly the coset of the
/// least element outside the domain.
fn coset_chain(b: &CayleyTable, sub: &[usize]) -> Vec<Step> {
    let n = b.order();
    let mut dom: u64 = 0;
    for &x in sub {
        dom |= 1 << x;
    }
    let mut steps = Vec::new();
    while dom.count_ones() < n as u32 {
        let rep = (0..n).find(|&x| dom >> x & 1 == 0).unwrap();
        let coset: Vec<(usize, usize)> = sub.iter().map(|&h| (b.mul(h, rep), h)).collect();
        for &(e, _) in &coset {
            dom |= 1 << e;
        }
        steps.push(Step { rep, coset });
    }
    steps
}

#[derive(Clone, Copy)]
enum Task {
    Prime { plan: usize, y: usize },
    Unit { plan: usize, first: usize },
}

fn run_task(sh: &Shared<'_>, plans: &[StagePlan], task: Task, aut_limit: usize) {
    if sh.exceeded.load(Ordering::Relaxed) {
        return;
    }
    match task {
        Task::Prime { plan, y } => {
            let plan = &plans[plan];
            let mut w = Walker::new(sh, plan, aut_limit);
            w.seed_prime(y);
            w.extend(0);
        }
        Task::Unit { plan, first } => {
            let plan = &plans[plan];
            let mut w = Walker::new(sh, plan, aut_limit);
            if let Some(add) = w.try_step(&plan.steps[0], first) {
                w.extend(1);
                w.guaranteed -= add;
                w.retract(&plan.steps[0], 1);
            }
        }
    }
}

/// Minimum distance from any isomorph of `a` (other than `b` itself) to `b`,
/// with a witnessing bijection.
pub fn class_distance(a: &CayleyTable, b: &CayleyTable, cfg: &SearchConfig) -> Result<ClassDistance> {
    let n = a.order();
    if n != b.order() {
        return Err(Error::SizeMismatch(n, b.order()));
    }
    if n < 2 {
        return Err(Error::UnsupportedOrder(n, "class distance needs n >= 2".into()));
    }
    if n < 5 {
        return Ok(brute_force_class_distance(a, b));
    }

    let iso = find_isomorphism(a, b);
    let (mut inc0, mut wit0) = match &iso {
        Some(phi0) => {
            let (d, swap) = transposition_min(b)?;
            (d, Some(swap.compose_after(phi0)))
        }
        None => (a.distance(b)? as u32, Some(Permutation::identity(n))),
    };
    if let Some(ub) = cfg.initial_upper_bound {
        if ub < inc0 {
            inc0 = ub;
            wit0 = None;
        }
    }

    let aut_a = automorphisms(a);
    let aut_b = automorphisms(b);
    let plans = build_plans(a, b, &aut_a, &aut_b);
    let mut fibers: Vec<Vec<(u8, u8)>> = vec![Vec::new(); n];
    for x in 0..n {
        for y in 0..n {
            fibers[b.mul(x, y)].push((x as u8, y as u8));
        }
    }
    let sh = Shared {
        a,
        b,
        n,
        fibers,
        aut_a,
        incumbent: AtomicU32::new(inc0),
        best: Mutex::new(None),
        nodes: AtomicU64::new(0),
        budget: cfg.budget.unwrap_or(u64::MAX),
        exceeded: AtomicBool::new(false),
    };

    let mut tasks = Vec::new();
    for (pi, plan) in plans.iter().enumerate() {
        if plan.seed.is_empty() {
            for first in 1..n {
                if orbit_min(&sh.aut_a, first) == first {
                    tasks.push(Task::Unit { plan: pi, first });
                }
            }
        } else {
            for &y in &plan.seed_images {
                tasks.push(Task::Prime { plan: pi, y });
            }
        }
    }

    if cfg.parallel {
        tasks.par_iter().for_each(|&t| run_task(&sh, &plans, t, cfg.aut_prune_depth));
    } else {
        for &t in &tasks {
            run_task(&sh, &plans, t, cfg.aut_prune_depth);
        }
    }

    let distance = sh.incumbent.load(Ordering::Relaxed);
    let best = sh.best.into_inner().unwrap();
    let witness = match best {
        Some((d, phi)) if d == distance => {
            Some(Permutation::from_images(phi).inverse())
        }
        _ => wit0,
    };
    Ok(ClassDistance {
        distance,
        witness,
        proven: !sh.exceeded.load(Ordering::Relaxed),
        nodes: sh.nodes.load(Ordering::Relaxed),
    })
}

fn brute_force_class_distance(a: &CayleyTable, b: &CayleyTable) -> ClassDistance {
    let n = a.order();
    let mut best: Option<(u32, Vec<usize>)> = None;
    let mut phi: Vec<usize> = vec![0; n];
    let mut used = vec![false; n];
    fn rec(
        a: &CayleyTable,
        b: &CayleyTable,
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        pos: usize,
        best: &mut Option<(u32, Vec<usize>)>,
    ) {
        let n = a.order();
        if pos == n {
            let mut d = 0u32;
            for x in 0..n {
                for y in 0..n {
                    if phi[b.mul(x, y)] != a.mul(phi[x], phi[y]) {
                        d += 1;
                    }
                }
            }
            if d > 0 && best.as_ref().map_or(true, |(bd, _)| d < *bd) {
                *best = Some((d, phi.clone()));
            }
            return;
        }
        for y in 0..n {
            if !used[y] {
                used[y] = true;
                phi[pos] = y;
                rec(a, b, phi, used, pos + 1, best);
                used[y] = false;
            }
        }
    }
    rec(a, b, &mut phi, &mut used, 0, &mut best);
    let (distance, phi) = best.expect("n >= 2 admits a differing bijection");
    let witness = Permutation::from_fn(n, |x| phi[x]).inverse();
    ClassDistance { distance, witness: Some(witness), proven: true, nodes: 0 }
}

/// Minimum distance from `t` to a transposition isomorph of itself, with the
/// achieving transposition. For `n >= 5` this equals `delta0(t)`.
pub fn transposition_min(t: &CayleyTable) -> Result<(u32, Permutation)> {
    let n = t.order();
    if n < 5 {
        return Err(Error::UnsupportedOrder(n, "transposition threshold needs n >= 5".into()));
    }
    let mut best: Option<(u32, Permutation)> = None;
    for i in 0..n {
        for j in (i + 1)..n {
            let swap = Permutation::transposition(n, i, j);
            let d = t.distance(&t.apply_bijection(&swap)?)? as u32;
            if best.as_ref().map_or(true, |(bd, _)| d < *bd) {
                best = Some((d, swap));
            }
        }
    }
    Ok(best.unwrap())
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct MatrixEntry {
    pub distance: u32,
    pub proven: bool,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct NeighborMatrix {
    pub n: usize,
    pub names: Vec<String>,
    pub entries: Vec<Vec<MatrixEntry>>,
}

/// The symmetric matrix of class distances over `catalog(n)`.
pub fn neighbor_matrix(n: usize, cfg: &SearchConfig) -> Result<NeighborMatrix> {
    let cat = catalog(n)?;
    let names: Vec<String> =
        cat.iter().map(|t| t.name().unwrap_or("?").to_string()).collect();
    let k = cat.len();
    let mut entries =
        vec![vec![MatrixEntry { distance: 0, proven: false }; k]; k];
    for i in 0..k {
        for j in i..k {
            let r = class_distance(&cat[i], &cat[j], cfg)?;
            let e = MatrixEntry { distance: r.distance, proven: r.proven };
            entries[i][j] = e.clone();
            entries[j][i] = e;
        }
    }
    Ok(NeighborMatrix { n, names, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{cyclic, direct_product};
    use crate::catalog::catalog;

    #[test]
    fn n4_matrix_matches_brute_force() {
        let cfg = SearchConfig::default();
        let m = neighbor_matrix(4, &cfg).unwrap();
        let d: Vec<Vec<u32>> =
            m.entries.iter().map(|r| r.iter().map(|e| e.distance).collect()).collect();
        assert_eq!(d, vec![vec![7, 4], vec![4, 16]]);
    }

    #[test]
    fn transposition_min_values() {
        assert_eq!(transposition_min(&cyclic(5)).unwrap().0, 12);
        assert_eq!(transposition_min(&cyclic(8)).unwrap().0, 24);
        let d10 = crate::cayley::dihedral(5).unwrap();
        assert_eq!(transposition_min(&d10).unwrap().0, 40);
    }

    #[test]
    fn class_distance_c5() {
        let r = class_distance(&cyclic(5), &cyclic(5), &SearchConfig::default()).unwrap();
        assert_eq!(r.distance, 12);
        assert!(r.proven);
        let f = r.witness.unwrap();
        let moved = cyclic(5).apply_bijection(&f).unwrap();
        assert_eq!(moved.distance(&cyclic(5)).unwrap(), 12);
    }

    #[test]
    fn class_distance_c8_pair() {
        let c8 = cyclic(8);
        let c4xc2 = direct_product(&cyclic(4), &cyclic(2));
        let r = class_distance(&c8, &c4xc2, &SearchConfig::default()).unwrap();
        assert_eq!(r.distance, 16);
        let f = r.witness.unwrap();
        assert_eq!(c8.apply_bijection(&f).unwrap().distance(&c4xc2).unwrap(), 16);
    }

    #[test]
    fn budget_exhaustion_reports_unproven() {
        let c8 = cyclic(8);
        let cfg = SearchConfig { budget: Some(10), ..Default::default() };
        let r = class_distance(&c8, &c8, &cfg).unwrap();
        assert!(!r.proven);
        assert!(r.distance >= 16);
    }

    #[test]
    fn symmetric_on_n6() {
        let cat = catalog(6).unwrap();
        let cfg = SearchConfig::default();
        let ab = class_distance(&cat[0], &cat[1], &cfg).unwrap().distance;
        let ba = class_distance(&cat[1], &cat[0], &cfg).unwrap().distance;
        assert_eq!(ab, ba);
        assert_eq!(ab, 12);
    }
}

