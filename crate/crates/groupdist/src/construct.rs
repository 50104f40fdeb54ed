//! Distance-realizing pairs: the quarter-distance cyclic and dihedral
//! constructions, the three families below the transposition threshold, and
//! the printed example fixtures.

use crate::cayley::{cyclic, direct_product, generalized_dihedral, CayleyTable};
use crate::error::{Error, Result};
use crate::iso::{quotient, Quotient};
use crate::perm::Permutation;

/// The step function used by the quarter-distance constructions: `1` above
/// `m`, `0` on `M = {-m+1, ..., m}`, `-1` below `1-m`.
#[derive(Clone, Copy, Debug)]
pub struct SignFunction {
    pub m: i64,
}

impl SignFunction {
    pub fn eval(&self, i: i64) -> i64 {
        if i > self.m {
            1
        } else if i >= 1 - self.m {
            0
        } else {
            -1
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub left: CayleyTable,
    pub right: CayleyTable,
    pub claimed: usize,
    pub actual: usize,
}

fn finish(left: CayleyTable, right: CayleyTable, claimed: usize) -> Result<ConstructionResult> {
    if !right.is_group() {
        return Err(Error::PreconditionFailed(
            "construction output violates the group axioms".into(),
        ));
    }
    let actual = left.distance(&right)?;
    Ok(ConstructionResult { left, right, claimed, actual })
}

/// Indices `i` in `M` of the `2m` powers of the coset `alpha`; cosets
/// outside `<alpha>` stay unindexed.
fn power_index(q: &Quotient, alpha: usize, m: i64) -> Vec<Option<i64>> {
    let mut idx = vec![None; q.table.order()];
    let mut coset = 0usize;
    for j in 0..2 * m {
        let i = if j <= m { j } else { j - 2 * m };
        idx[coset] = Some(i);
        coset = q.table.mul(coset, alpha);
    }
    idx
}

/// `x * y = x . y . h^sigma(i+j)` over the decomposition of `g` into the
/// cosets `alpha^i`, `i` in `M`, for a normal `s` with `g/s` cyclic of order
/// `2m` and a central `h != 1` in `s`. The result is a group at distance
/// `n^2/4` from `g`.
pub fn cyclic_construction(
    g: &CayleyTable,
    s: &[usize],
    h: usize,
    m: usize,
) -> Result<ConstructionResult> {
    let n = g.order();
    let q = quotient(g, s)?;
    if q.table.order() != 2 * m || m == 0 {
        return Err(Error::PreconditionFailed(format!(
            "quotient has order {}, expected 2m = {}",
            q.table.order(),
            2 * m
        )));
    }
    let alpha = (0..q.table.order())
        .find(|&c| q.table.element_order(c) == 2 * m)
        .ok_or_else(|| Error::PreconditionFailed("quotient is not cyclic".into()))?;
    if h == 0 || !s.contains(&h) {
        return Err(Error::PreconditionFailed("h must be a nonidentity element of s".into()));
    }
    if !g.center().contains(&h) {
        return Err(Error::PreconditionFailed("h must be central".into()));
    }
    let idx = power_index(&q, alpha, m as i64);
    let sigma = SignFunction { m: m as i64 };
    let hinv = g.inv(h);
    let right = CayleyTable::from_fn(n, |x, y| {
        let i = idx[q.coset_of[x]].unwrap();
        let j = idx[q.coset_of[y]].unwrap();
        let base = g.mul(x, y);
        match sigma.eval(i + j) {
            1 => g.mul(base, h),
            -1 => g.mul(base, hinv),
            _ => base,
        }
    })?;
    finish(g.clone(), right, n * n / 4)
}

/// `x * y = x . y . h^((-1)^r sigma(i+j))` for a normal `s` with `g/s`
/// dihedral of order `4m`; see the cyclic variant for the role of `h`.
/// The coset representatives `e`, `f` are the least valid choices.
pub fn dihedral_construction(
    g: &CayleyTable,
    s: &[usize],
    h: usize,
    m: usize,
) -> Result<ConstructionResult> {
    let n = g.order();
    let q = quotient(g, s)?;
    let qt = &q.table;
    if qt.order() != 4 * m || m == 0 {
        return Err(Error::PreconditionFailed(format!(
            "quotient has order {}, expected 4m = {}",
            qt.order(),
            4 * m
        )));
    }
    // least pair of involutions whose product has order 2m
    let invols: Vec<usize> = (0..qt.order()).filter(|&c| qt.element_order(c) == 2).collect();
    let (beta, gamma) = invols
        .iter()
        .flat_map(|&b| invols.iter().map(move |&c| (b, c)))
        .find(|&(b, c)| b != c && qt.element_order(qt.mul(b, c)) == 2 * m)
        .ok_or_else(|| Error::PreconditionFailed("quotient is not dihedral".into()))?;
    let alpha = qt.mul(beta, gamma);

    // powers of alpha, indexed in M
    let idx = power_index(&q, alpha, m as i64);
    let in_g0 = |x: usize| idx[q.coset_of[x]].is_some();
    if h == 0 || !s.contains(&h) {
        return Err(Error::PreconditionFailed("h must be a nonidentity element of s".into()));
    }
    for x in (0..n).filter(|&x| in_g0(x)) {
        if g.mul(h, x) != g.mul(x, h) {
            return Err(Error::PreconditionFailed("h must centralize G0".into()));
        }
    }
    for x in (0..n).filter(|&x| !in_g0(x)) {
        if g.mul(g.mul(h, x), h) != x {
            return Err(Error::PreconditionFailed("h x h = x must hold on G1".into()));
        }
    }
    let e = (0..n)
        .find(|&x| q.coset_of[x] == beta)
        .expect("beta is a coset of g");
    let f = (0..n)
        .find(|&x| q.coset_of[x] == gamma)
        .expect("gamma is a coset of g");

    // row index: x in alpha^i or e.alpha^i; column index: y in alpha^j or
    // alpha^j.f; r records the half of y
    let qe = q.coset_of[e];
    let qf = q.coset_of[f];
    let row_i: Vec<i64> = (0..n)
        .map(|x| {
            let qx = q.coset_of[x];
            match idx[qx] {
                Some(i) => i,
                None => idx[qt.mul(qt.inv(qe), qx)].expect("coset splits over e"),
            }
        })
        .collect();
    let col_j: Vec<i64> = (0..n)
        .map(|y| {
            let qy = q.coset_of[y];
            match idx[qy] {
                Some(j) => j,
                None => idx[qt.mul(qy, qt.inv(qf))].expect("coset splits over f"),
            }
        })
        .collect();

    let sigma = SignFunction { m: m as i64 };
    let hinv = g.inv(h);
    let right = CayleyTable::from_fn(n, |x, y| {
        let r = if in_g0(y) { 0 } else { 1 };
        let sgn = sigma.eval(row_i[x] + col_j[y]) * if r == 0 { 1 } else { -1 };
        let base = g.mul(x, y);
        match sgn {
            1 => g.mul(base, h),
            -1 => g.mul(base, hinv),
            _ => base,
        }
    })?;
    finish(g.clone(), right, n * n / 4)
}

/// The pair `(D(O), O x C2)` on the same set, at distance `n(n-2)/2`.
pub fn construction1(o: &CayleyTable) -> Result<ConstructionResult> {
    if !o.is_abelian() {
        return Err(Error::PreconditionFailed("construction 1 needs an abelian base".into()));
    }
    if o.order() % 2 == 0 || o.order() < 3 {
        return Err(Error::PreconditionFailed("construction 1 needs odd order >= 3".into()));
    }
    let n = 2 * o.order();
    let left = generalized_dihedral(o)?;
    let right = direct_product(o, &cyclic(2));
    let claimed = n * (n - 2) / 2;
    let actual = left.distance(&right)?;
    Ok(ConstructionResult { left, right, claimed, actual })
}

/// Two abelian operations on `C_a x C_b` (`a` odd) at distance
/// `n^2 (1 - a^-2) / 4`: a carry-style copy of `C_ab` against a shifted
/// isomorph of the direct product.
pub fn construction2(a: usize, b: usize) -> Result<ConstructionResult> {
    if a % 2 == 0 || a < 3 {
        return Err(Error::PreconditionFailed("construction 2 needs odd a >= 3".into()));
    }
    if b < 2 {
        return Err(Error::PreconditionFailed("construction 2 needs b >= 2".into()));
    }
    let n = a * b;
    let left = CayleyTable::from_fn(n, |x, y| {
        let (s, t) = (x / b, x % b);
        let (u, v) = (y / b, y % b);
        let carry = usize::from(s + u >= a);
        ((s + u) % a) * b + (t + v + carry) % b
    })?;
    let base = direct_product(&cyclic(a), &cyclic(b));
    let shift = Permutation::from_fn(n, |x| {
        let (s, t) = (x / b, x % b);
        if 2 * s >= a + 1 {
            s * b + (t + 1) % b
        } else {
            x
        }
    });
    let right = base.apply_bijection(&shift.inverse())?;
    let claimed = b * b * (a * a - 1) / 4;
    finish(left, right, claimed)
}

/// The two ad hoc pairs at distance 18 and their order-18 extensions at 72.
pub fn construction3() -> Result<Vec<ConstructionResult>> {
    let mut out = Vec::new();

    let c7 = cyclic(7);
    let f7 = Permutation::from_cycles(7, &[&[1, 2], &[5, 6]]);
    out.push(finish(c7.clone(), c7.apply_bijection(&f7)?, 18)?);

    // swaps the three mod-3 congruence pairs {2,5}, {3,6}, {4,7}
    let c9 = cyclic(9);
    let f9 = Permutation::from_cycles(9, &[&[2, 5], &[3, 6], &[4, 7]]);
    let c9_moved = c9.apply_bijection(&f9)?;
    out.push(finish(c9.clone(), c9_moved.clone(), 18)?);

    // extension realizing the cyclic order-18 diagonal
    let (l18, r18) = pair_extension(&c9, &c9_moved, &cyclic(2))?;
    out.push(finish(l18, r18, 72)?);

    // dihedral-flavored extension realizing the order-18 dihedral diagonal
    let (dl, dr) = dihedral_pair(&c9, &c9_moved)?;
    out.push(finish(dl, dr, 72)?);

    Ok(out)
}

/// `(A x k, B x k)` under the standard pairing; the distance multiplies by
/// `|k|^2`.
pub fn pair_extension(
    a: &CayleyTable,
    b: &CayleyTable,
    k: &CayleyTable,
) -> Result<(CayleyTable, CayleyTable)> {
    if a.order() != b.order() {
        return Err(Error::SizeMismatch(a.order(), b.order()));
    }
    Ok((direct_product(a, k), direct_product(b, k)))
}

/// Generalized dihedral groups of two abelian operations on the same odd
/// set, under the common pairing.
pub fn dihedral_pair(o1: &CayleyTable, o2: &CayleyTable) -> Result<(CayleyTable, CayleyTable)> {
    Ok((generalized_dihedral(o1)?, generalized_dihedral(o2)?))
}

/// A printed example pair with its expected statistics.
pub struct Fixture {
    pub name: &'static str,
    pub left: CayleyTable,
    pub right: CayleyTable,
    pub expected_dist: usize,
    pub expected_h: usize,
    /// Under the strict `dist_a < n/3` reading.
    pub expected_k: usize,
    pub left_class: &'static str,
    pub right_class: &'static str,
}

/// The two hardcoded table pairs from the worked examples: an 8x8 pair at
/// distance 16 (`C4xC2` vs `C8`) and a 9x9 pair at distance 27
/// (`(C3)^2` vs `C9`).
pub fn fixture_examples() -> Vec<Fixture> {
    let parse = |text: &str| crate::io::parse_group(text).expect("fixture is a group");
    let eight_left = parse(
        "8\n\
         0 1 2 3 4 5 6 7\n\
         1 0 3 2 5 4 7 6\n\
         2 3 0 1 7 6 5 4\n\
         3 2 1 0 6 7 4 5\n\
         4 5 7 6 2 3 1 0\n\
         5 4 6 7 3 2 0 1\n\
         6 7 5 4 1 0 2 3\n\
         7 6 4 5 0 1 3 2\n",
    );
    let eight_right = parse(
        "8\n\
         0 1 2 3 4 5 6 7\n\
         1 0 3 2 5 4 7 6\n\
         2 3 1 0 6 7 5 4\n\
         3 2 0 1 7 6 4 5\n\
         4 5 6 7 2 3 1 0\n\
         5 4 7 6 3 2 0 1\n\
         6 7 5 4 1 0 3 2\n\
         7 6 4 5 0 1 2 3\n",
    );
    let nine_left = parse(
        "9\n\
         0 1 2 3 4 5 6 7 8\n\
         1 2 0 4 5 3 7 8 6\n\
         2 0 1 5 3 4 8 6 7\n\
         3 4 5 6 7 8 0 1 2\n\
         4 5 3 7 8 6 1 2 0\n\
         5 3 4 8 6 7 2 0 1\n\
         6 7 8 0 1 2 3 4 5\n\
         7 8 6 1 2 0 4 5 3\n\
         8 6 7 2 0 1 5 3 4\n",
    );
    let nine_right = parse(
        "9\n\
         0 1 2 3 4 5 6 7 8\n\
         1 2 0 4 5 3 7 8 6\n\
         2 0 1 5 3 4 8 6 7\n\
         3 4 5 6 7 8 1 2 0\n\
         4 5 3 7 8 6 2 0 1\n\
         5 3 4 8 6 7 0 1 2\n\
         6 7 8 1 2 0 4 5 3\n\
         7 8 6 2 0 1 5 3 4\n\
         8 6 7 0 1 2 3 4 5\n",
    );
    vec![
        Fixture {
            name: "8x8",
            left: eight_left,
            right: eight_right,
            expected_dist: 16,
            expected_h: 2,
            expected_k: 6,
            left_class: "C4xC2",
            right_class: "C8",
        },
        Fixture {
            name: "9x9",
            left: nine_left,
            right: nine_right,
            expected_dist: 27,
            expected_h: 3,
            expected_k: 3,
            left_class: "(C3)^2",
            right_class: "C9",
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::find_isomorphism;

    #[test]
    fn sign_function_shape() {
        let s = SignFunction { m: 2 };
        assert_eq!(s.eval(3), 1);
        assert_eq!(s.eval(2), 0);
        assert_eq!(s.eval(-1), 0);
        assert_eq!(s.eval(-2), -1);
        // antisymmetry off the plateau
        for i in 3..10 {
            assert_eq!(s.eval(i) + s.eval(-i + 1), 0);
        }
    }

    #[test]
    fn cyclic_construction_c8() {
        let c8 = cyclic(8);
        let r = cyclic_construction(&c8, &[0, 4], 4, 2).unwrap();
        assert_eq!(r.actual, 16);
        assert_eq!(r.claimed, 16);
        let c4xc2 = direct_product(&cyclic(4), &cyclic(2));
        assert!(find_isomorphism(&r.right, &c4xc2).is_some());
    }

    #[test]
    fn cyclic_construction_c4() {
        let r = cyclic_construction(&cyclic(4), &[0, 2], 2, 1).unwrap();
        assert_eq!(r.actual, 4);
        let klein = direct_product(&cyclic(2), &cyclic(2));
        assert!(find_isomorphism(&r.right, &klein).is_some());
    }

    #[test]
    fn dihedral_construction_d8() {
        let d8 = crate::cayley::dihedral(4).unwrap();
        let center = d8.center();
        let h = *center.iter().find(|&&z| z != 0).unwrap();
        let r = dihedral_construction(&d8, &center, h, 1).unwrap();
        assert_eq!(r.actual, 16);
        assert_eq!(r.claimed, 16);
    }

    #[test]
    fn dihedral_construction_rejects_bad_h() {
        let d8 = crate::cayley::dihedral(4).unwrap();
        let center = d8.center();
        assert!(matches!(
            dihedral_construction(&d8, &center, 0, 1),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn construction1_small_cases() {
        let r = construction1(&cyclic(3)).unwrap();
        assert_eq!(r.actual, 12);
        assert_eq!(r.claimed, 12);
        let r = construction1(&cyclic(5)).unwrap();
        assert_eq!(r.actual, 40);
        assert!(construction1(&cyclic(4)).is_err());
        assert!(construction1(&crate::cayley::dihedral(3).unwrap()).is_err());
    }

    #[test]
    fn construction2_small_cases() {
        let r = construction2(3, 3).unwrap();
        assert_eq!(r.actual, 18);
        assert!(find_isomorphism(&r.left, &cyclic(9)).is_some());
        let r = construction2(5, 2).unwrap();
        assert_eq!(r.actual, 24);
        assert!(construction2(4, 2).is_err());
    }

    #[test]
    fn fixtures_verify() {
        for fx in fixture_examples() {
            assert!(fx.left.verify().is_empty());
            assert!(fx.right.verify().is_empty());
            assert_eq!(fx.left.distance(&fx.right).unwrap(), fx.expected_dist);
        }
    }
}
