//! The two specialized searches: the `m = 2` structure search against the
//! cyclic group, and the cyclic-generator row-modification search.

use crate::catalog::catalog;
use crate::cayley::{cyclic, CayleyTable};
use crate::error::{Error, Result};
use crate::iso::find_isomorphism;

/// Outcome of the `m = 2` search over groups two cells away from a fixed
/// generator row of `C_n`.
#[derive(Clone, Debug)]
pub struct M2Result {
    pub distance: usize,
    /// Catalog name of the isomorphism class of the nearest group.
    pub class_name: String,
    pub witness: CayleyTable,
    /// Number of `(v, w, alpha, beta)` candidates that defined a group.
    pub group_candidates: usize,
}

/// Finds the group closest to `C_n` among all operations that differ from it
/// in exactly two cells of the fixed generator row `a = 1` and give `a`
/// order `n/2`.
///
/// Swapping columns `v, w` of the row pins the whole operation once the
/// parameters `b.a = a^alpha.b` and `b.b = a^beta` are chosen; candidates
/// failing the group axioms are discarded.
pub fn m2_min_distance(n: usize) -> Result<M2Result> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::UnsupportedOrder(n, "m=2 search needs even n >= 4".into()));
    }
    let base = cyclic(n);
    let half = n / 2;
    let mut best: Option<(usize, CayleyTable)> = None;
    let mut group_candidates = 0usize;

    for v in 1..n {
        for w in (v + 1)..n {
            // modified row of the generator a = 1
            let mut row: Vec<usize> = (0..n).map(|y| (1 + y) % n).collect();
            row.swap(v, w);
            // cycle of 0 under the row map gives the powers of a
            let Some(a_cycle) = cycle_of(&row, 0, half) else { continue };
            let b0 = (0..n).find(|x| !a_cycle.contains(x)).unwrap();
            let Some(b_cycle) = cycle_of(&row, b0, half) else { continue };

            let mut pos = vec![(false, 0usize); n];
            for (i, &e) in a_cycle.iter().enumerate() {
                pos[e] = (false, i);
            }
            for (i, &e) in b_cycle.iter().enumerate() {
                pos[e] = (true, i);
            }

            for alpha in 1..half {
                for beta in 0..half {
                    let t = CayleyTable::from_fn(n, |x, y| {
                        let (xb, i) = pos[x];
                        let (yb, j) = pos[y];
                        match (xb, yb) {
                            (false, false) => a_cycle[(i + j) % half],
                            (false, true) => b_cycle[(i + j) % half],
                            (true, false) => b_cycle[(i + j * alpha) % half],
                            (true, true) => a_cycle[(i + j * alpha + beta) % half],
                        }
                    })?;
                    if !t.is_group() {
                        continue;
                    }
                    group_candidates += 1;
                    let d = t.distance(&base)?;
                    debug_assert!(d >= 2);
                    if best.as_ref().map_or(true, |(bd, _)| d < *bd) {
                        best = Some((d, t));
                    }
                }
            }
        }
    }

    let (distance, witness) =
        best.ok_or_else(|| Error::PreconditionFailed("no m=2 group candidates".into()))?;
    let class_name = classify(&witness, n)?;
    Ok(M2Result { distance, class_name, witness, group_candidates })
}

/// Catalog name of the isomorphism class of `t`.
pub fn classify(t: &CayleyTable, n: usize) -> Result<String> {
    for rep in catalog(n)? {
        if find_isomorphism(&rep, t).is_some() {
            return Ok(rep.name().unwrap_or("?").to_string());
        }
    }
    Ok("?".into())
}

/// The orbit of `start` under the row map if it has exactly `want` elements.
fn cycle_of(row: &[usize], start: usize, want: usize) -> Option<Vec<usize>> {
    let mut cycle = Vec::with_capacity(want);
    let mut x = start;
    loop {
        cycle.push(x);
        x = row[x];
        if x == start {
            break;
        }
        if cycle.len() > want {
            return None;
        }
    }
    (cycle.len() == want).then_some(cycle)
}

/// Outcome of the cyclic-generator row search.
#[derive(Clone, Debug)]
pub struct RowSearchResult {
    /// `None` when no alteration yields a full-order generator.
    pub min_distance: Option<usize>,
    /// Number of cyclic reconstructions examined.
    pub candidates: usize,
    /// Number of reconstructions achieving the minimum.
    pub achievers: usize,
}

/// Over all rows `a` of `base` with `|a| >= n/d`, alters exactly `d` cells of
/// the row (keeping it a permutation, every altered cell actually changed),
/// keeps alterations that give `a` order `n`, and reconstructs the cyclic
/// group generated by the altered row. Returns the minimum distance from
/// `base` over all reconstructions.
pub fn cyclic_row_search(base: &CayleyTable, d: usize) -> Result<RowSearchResult> {
    if d < 3 {
        return Err(Error::PreconditionFailed("row search needs d >= 3".into()));
    }
    let n = base.order();
    let mut best: Option<usize> = None;
    let mut candidates = 0usize;
    let mut achievers = 0usize;

    let mut cols: Vec<usize> = Vec::with_capacity(d);
    for a in 1..n {
        if base.element_order(a) * d < n {
            continue;
        }
        let row: Vec<usize> = (0..n).map(|y| base.mul(a, y)).collect();
        // column 0 is pinned by the identity
        cols.clear();
        enumerate_column_subsets(1, n, d, &mut cols, &mut |chosen| {
            let mut perm: Vec<usize> = (0..d).collect();
            enumerate_derangements(&mut perm, 0, &mut |pi| {
                let mut altered = row.clone();
                for (slot, &src) in pi.iter().enumerate() {
                    altered[chosen[slot]] = row[chosen[src]];
                }
                // |a| = n demands the altered row be an n-cycle through 0
                let mut x = altered[0];
                let mut len = 1usize;
                while x != 0 && len <= n {
                    x = altered[x];
                    len += 1;
                }
                if x != 0 || len != n {
                    return;
                }
                candidates += 1;
                // cyclic reconstruction: element of each exponent of a
                let mut elem_of_exp = vec![0usize; n];
                let mut exp_of_elem = vec![0usize; n];
                let mut x = 0usize;
                for e in 0..n {
                    elem_of_exp[e] = x;
                    exp_of_elem[x] = e;
                    x = altered[x];
                }
                let mut dist = 0usize;
                for u in 0..n {
                    let eu = exp_of_elem[u];
                    for v in 0..n {
                        let w = elem_of_exp[(eu + exp_of_elem[v]) % n];
                        if w != base.mul(u, v) {
                            dist += 1;
                        }
                    }
                }
                match best {
                    Some(bd) if dist > bd => {}
                    Some(bd) if dist == bd => achievers += 1,
                    _ => {
                        best = Some(dist);
                        achievers = 1;
                    }
                }
            });
        });
    }

    Ok(RowSearchResult { min_distance: best, candidates, achievers })
}

fn enumerate_column_subsets(
    from: usize,
    n: usize,
    remaining: usize,
    cols: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        f(cols);
        return;
    }
    for c in from..=(n - remaining) {
        cols.push(c);
        enumerate_column_subsets(c + 1, n, remaining - 1, cols, f);
        cols.pop();
    }
}

/// All fixed-point-free permutations of `0..perm.len()`.
fn enumerate_derangements(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    let d = perm.len();
    if k == d {
        f(perm);
        return;
    }
    for i in k..d {
        perm.swap(k, i);
        if perm[k] != k {
            enumerate_derangements(perm, k + 1, f);
        }
        perm.swap(k, i);
    }
}
