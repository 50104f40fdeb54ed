//! Distance statistics and structured difference sets between two group
//! tables on the same element set.

use crate::cayley::CayleyTable;
use crate::error::{Error, Result};
use crate::iso::{is_subgroup, subgroup_closure};
use crate::perm::Permutation;
use serde::Serialize;

/// All per-pair distance statistics.
///
/// `k_set` uses the strict reading `dist_a < n/3`. `m` is the minimum
/// positive row distance and is absent when the tables are equal. `m_prime`
/// is present only when the first table is cyclic and the tables differ;
/// `omega` only for even `n`.
#[derive(Clone, Debug, Serialize)]
pub struct DistanceProfile {
    pub n: usize,
    pub dist: usize,
    #[serde(rename = "rowDist")]
    pub row_dist: Vec<usize>,
    #[serde(rename = "H")]
    pub h_set: Vec<usize>,
    #[serde(rename = "K")]
    pub k_set: Vec<usize>,
    pub h: usize,
    pub k: usize,
    pub m: Option<usize>,
    #[serde(rename = "mPrime")]
    pub m_prime: Option<usize>,
    pub omega: Option<usize>,
    pub q: usize,
}

pub fn profile(a: &CayleyTable, b: &CayleyTable) -> Result<DistanceProfile> {
    let n = a.order();
    if n != b.order() {
        return Err(Error::SizeMismatch(n, b.order()));
    }
    let row_dist: Vec<usize> = (0..n)
        .map(|x| (0..n).filter(|&y| a.mul(x, y) != b.mul(x, y)).count())
        .collect();
    let dist: usize = row_dist.iter().sum();
    let h_set: Vec<usize> = (0..n).filter(|&x| row_dist[x] == 0).collect();
    // strict dist_a < n/3, compared exactly as 3*dist_a < n
    let k_set: Vec<usize> = (0..n).filter(|&x| 3 * row_dist[x] < n).collect();
    let m = row_dist.iter().copied().filter(|&d| d > 0).min();
    let m_prime = if dist > 0 && a.is_cyclic() {
        (0..n).filter(|&x| a.element_order(x) == n).map(|x| row_dist[x]).min()
    } else {
        None
    };
    let omega = if n % 2 == 0 {
        let count = |t: &CayleyTable, ord: usize| (0..n).filter(|&x| t.element_order(x) == ord).count();
        Some(
            count(a, n).min(count(b, n / 2)) + count(a, n / 2).min(count(b, n)),
        )
    } else {
        None
    };
    Ok(DistanceProfile {
        n,
        dist,
        row_dist,
        h: h_set.len(),
        k: k_set.len(),
        h_set,
        k_set,
        m,
        m_prime,
        omega,
        q: n.div_ceil(3),
    })
}

/// The permutation `(L_row(a))^-1 . L_row(b)`; it moves exactly
/// `rowDist[row]` points.
pub fn beta_permutation(a: &CayleyTable, b: &CayleyTable, row: usize) -> Result<Permutation> {
    let n = a.order();
    if n != b.order() {
        return Err(Error::SizeMismatch(n, b.order()));
    }
    let left_a_inv = {
        let mut inv = vec![0usize; n];
        for y in 0..n {
            inv[a.mul(row, y)] = y;
        }
        inv
    };
    Ok(Permutation::from_fn(n, |y| left_a_inv[b.mul(row, y)]))
}

/// The structured splitting of the difference cells with row index in `K`.
#[derive(Clone, Debug, Serialize)]
pub struct RstuSets {
    #[serde(rename = "R")]
    pub r_cells: Vec<(usize, usize)>,
    #[serde(rename = "S")]
    pub s_cells: Vec<(usize, usize)>,
    #[serde(rename = "T")]
    pub t_cells: Vec<(usize, usize)>,
    #[serde(rename = "U")]
    pub u_cells: Vec<(usize, usize)>,
    #[serde(rename = "UPrime")]
    pub u_prime: Vec<(usize, usize)>,
    /// True when `m < 3`, in which case the `U` selection contract is
    /// vacuous and `U` is left empty.
    pub vacuous: bool,
}

impl RstuSets {
    pub fn r(&self) -> usize {
        self.r_cells.len()
    }
    pub fn s(&self) -> usize {
        self.s_cells.len()
    }
    pub fn t(&self) -> usize {
        self.t_cells.len()
    }
    pub fn u(&self) -> usize {
        self.u_cells.len()
    }
}

/// Splits the difference cells `(x, y)` with `x` in `K` into the diagonal
/// part `R`, the `K x K` part `S`, the part `T` with `x.y` in `K`, and the
/// remainder `U'`. `U` takes, per row of `K \ H`, just enough `U'` cells
/// (ascending column order) to reach three marked cells in that row.
pub fn rstu(a: &CayleyTable, b: &CayleyTable) -> Result<RstuSets> {
    let p = profile(a, b)?;
    let n = p.n;
    let in_k = |x: usize| 3 * p.row_dist[x] < n;
    let mut r_cells = Vec::new();
    let mut s_cells = Vec::new();
    let mut t_cells = Vec::new();
    let mut u_prime = Vec::new();
    for x in 0..n {
        if !in_k(x) || p.row_dist[x] == 0 {
            continue;
        }
        for y in 0..n {
            if a.mul(x, y) == b.mul(x, y) {
                continue;
            }
            if y == x {
                r_cells.push((x, y));
            } else if in_k(y) {
                s_cells.push((x, y));
            } else if in_k(a.mul(x, y)) {
                t_cells.push((x, y));
            } else {
                u_prime.push((x, y));
            }
        }
    }
    let vacuous = p.m.map_or(true, |m| m < 3);
    let mut u_cells = Vec::new();
    if !vacuous {
        for x in 0..n {
            if !in_k(x) || p.row_dist[x] == 0 {
                continue;
            }
            let covered = r_cells.iter().chain(&s_cells).chain(&t_cells).filter(|c| c.0 == x).count();
            let need = 3usize.saturating_sub(covered);
            u_cells.extend(u_prime.iter().filter(|c| c.0 == x).take(need));
        }
    }
    Ok(RstuSets { r_cells, s_cells, t_cells, u_cells, u_prime, vacuous })
}

/// The transposition-isomorph threshold for a specific group: `6n-18` for odd
/// `n`, `6n-20` for generalized dihedral groups of odd abelian groups, and
/// `6n-24` otherwise.
pub fn delta0(t: &CayleyTable) -> Result<usize> {
    let n = t.order();
    if n < 5 {
        return Err(Error::UnsupportedOrder(n, "delta0 needs n >= 5".into()));
    }
    if n % 2 == 1 {
        return Ok(6 * n - 18);
    }
    Ok(if is_generalized_dihedral(t) { 6 * n - 20 } else { 6 * n - 24 })
}

/// `n = 2 mod 4`, the odd-order elements form an abelian index-2 subgroup,
/// and everything outside it is an involution.
pub fn is_generalized_dihedral(t: &CayleyTable) -> bool {
    let n = t.order();
    if n % 4 != 2 || n < 6 {
        return false;
    }
    let odd: Vec<usize> = (0..n).filter(|&x| t.element_order(x) % 2 == 1).collect();
    if odd.len() != n / 2 || !is_subgroup(t, &odd) {
        return false;
    }
    if subgroup_closure(t, &odd) != odd {
        return false;
    }
    let abelian = odd.iter().all(|&x| odd.iter().all(|&y| t.mul(x, y) == t.mul(y, x)));
    abelian && (0..n).all(|x| odd.binary_search(&x).is_ok() || t.element_order(x) == 2)
}

/// Certified lower bound on `rowDist[row]`: `(n/s)*ceil(s/t)` when the orders
/// `s > t` of `row` differ between the tables, `3` when the orders match and
/// the row differs at all, and `0` otherwise.
pub fn order_mismatch_bound(a: &CayleyTable, b: &CayleyTable, row: usize) -> usize {
    let n = a.order();
    let (oa, ob) = (a.element_order(row), b.element_order(row));
    if oa != ob {
        let (s, t) = (oa.max(ob), oa.min(ob));
        return (n / s) * s.div_ceil(t);
    }
    let differs = (0..n).any(|y| a.mul(row, y) != b.mul(row, y));
    if differs {
        3
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{cyclic, dihedral, direct_product};
    use crate::perm::Permutation;

    #[test]
    fn profile_of_equal_tables() {
        let g = dihedral(4).unwrap();
        let p = profile(&g, &g).unwrap();
        assert_eq!(p.dist, 0);
        assert_eq!(p.h, 8);
        assert_eq!(p.k, 8);
        assert_eq!(p.m, None);
        assert_eq!(p.m_prime, None);
        assert_eq!(p.omega, Some(0));
    }

    #[test]
    fn beta_permutation_moves_row_dist_points() {
        let c7 = cyclic(7);
        let f = Permutation::from_cycles(7, &[&[1, 2], &[5, 6]]);
        let moved = c7.apply_bijection(&f).unwrap();
        let p = profile(&c7, &moved).unwrap();
        for row in 0..7 {
            let beta = beta_permutation(&c7, &moved, row).unwrap();
            assert_eq!(beta.moved_points(), p.row_dist[row]);
            if p.row_dist[row] > 0 {
                // odd order: beta is always even
                assert!(beta.is_even());
            }
        }
        assert!(beta_permutation(&c7, &c7, 3).unwrap().is_identity());
    }

    #[test]
    fn delta0_cases() {
        assert_eq!(delta0(&cyclic(9)).unwrap(), 36);
        assert_eq!(delta0(&dihedral(5).unwrap()).unwrap(), 40);
        assert_eq!(delta0(&cyclic(8)).unwrap(), 24);
        assert_eq!(delta0(&cyclic(10)).unwrap(), 36); // C10 is not D(O)
        assert!(delta0(&cyclic(4)).is_err());
    }

    #[test]
    fn generalized_dihedral_detection() {
        use crate::cayley::generalized_dihedral;
        assert!(is_generalized_dihedral(&dihedral(5).unwrap()));
        assert!(is_generalized_dihedral(
            &generalized_dihedral(&direct_product(&cyclic(3), &cyclic(3))).unwrap()
        ));
        assert!(!is_generalized_dihedral(&cyclic(10)));
        assert!(!is_generalized_dihedral(&dihedral(6).unwrap())); // order 12 = 0 mod 4
    }

    #[test]
    fn order_mismatch_bound_cases() {
        // order matched, differing row: bound 3
        let c9 = cyclic(9);
        let f = Permutation::from_cycles(9, &[&[3, 6], &[4, 7], &[5, 8]]);
        let moved = c9.apply_bijection(&f).unwrap();
        let p = profile(&c9, &moved).unwrap();
        for row in 1..9 {
            if p.row_dist[row] > 0 && c9.element_order(row) == moved.element_order(row) {
                assert_eq!(order_mismatch_bound(&c9, &moved, row), 3);
            }
        }
        // sigma = n, tau = n/2  ->  2
        let c8 = cyclic(8);
        let other = direct_product(&cyclic(4), &cyclic(2));
        let row = (0..8).find(|&x| c8.element_order(x) == 8 && other.element_order(x) == 4).unwrap();
        assert_eq!(order_mismatch_bound(&c8, &other, row), 2);
        // n = 2p, sigma = 2p vs tau = 2  ->  p
        let c10 = cyclic(10);
        let d10 = dihedral(5).unwrap();
        if let Some(row) =
            (0..10).find(|&x| c10.element_order(x) == 10 && d10.element_order(x) == 2)
        {
            assert_eq!(order_mismatch_bound(&c10, &d10, row), 5);
        }
    }

    #[test]
    fn rstu_empty_for_equal_tables() {
        let g = cyclic(9);
        let sets = rstu(&g, &g).unwrap();
        assert_eq!(sets.r() + sets.s() + sets.t() + sets.u(), 0);
        assert!(sets.vacuous);
    }
}
