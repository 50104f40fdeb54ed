//! Finite groups as multiplication tables over `0..n-1` with identity `0`.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use std::collections::BTreeMap;
use std::fmt;

/// A finite group given by its full multiplication table.
///
/// Invariants (checked by [`CayleyTable::verify`]): every row and column is a
/// permutation of `0..n-1`, element `0` is the identity, and the operation is
/// associative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    n: usize,
    cells: Vec<u8>,
    name: Option<String>,
}

/// A single violated table invariant together with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Row `row` is not a permutation; `value` repeats.
    LatinRow { row: usize, value: usize },
    /// Column `col` is not a permutation; `value` repeats.
    LatinColumn { col: usize, value: usize },
    /// `0*x != x` or `x*0 != x` for the witness `x`.
    Identity { x: usize },
    /// `(a*b)*c != a*(b*c)` for the witness triple.
    Associativity { a: usize, b: usize, c: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LatinRow { row, value } => {
                write!(f, "row {row} repeats value {value}")
            }
            Violation::LatinColumn { col, value } => {
                write!(f, "column {col} repeats value {value}")
            }
            Violation::Identity { x } => write!(f, "element 0 is not an identity at {x}"),
            Violation::Associativity { a, b, c } => {
                write!(f, "associativity fails at ({a},{b},{c})")
            }
        }
    }
}

impl CayleyTable {
    /// Builds a table from raw cells without validating the group axioms.
    /// Cells must be row-major with entries `< n`.
    pub fn from_cells(n: usize, cells: Vec<u8>) -> Result<Self> {
        if n == 0 || cells.len() != n * n {
            return Err(Error::InvalidSpec(format!(
                "expected {n}x{n} cells, got {}",
                cells.len()
            )));
        }
        if let Some(&bad) = cells.iter().find(|&&c| (c as usize) >= n) {
            return Err(Error::InvalidSpec(format!("cell value {bad} out of range")));
        }
        Ok(CayleyTable { n, cells, name: None })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut cells = vec![0u8; n * n];
        for x in 0..n {
            for y in 0..n {
                let v = f(x, y);
                if v >= n {
                    return Err(Error::InvalidSpec(format!("cell ({x},{y}) out of range")));
                }
                cells[x * n + y] = v as u8;
            }
        }
        Ok(CayleyTable { n, cells, name: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y] as usize
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    /// The inverse of `x`.
    pub fn inv(&self, x: usize) -> usize {
        (0..self.n).find(|&y| self.mul(x, y) == 0).expect("row is a permutation")
    }

    /// `x^k` for `k >= 0`.
    pub fn pow(&self, x: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Multiplicative order of `x`.
    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut ord = 1;
        while acc != 0 {
            acc = self.mul(acc, x);
            ord += 1;
        }
        ord
    }

    /// Map `order -> number of elements of that order`.
    pub fn order_spectrum(&self) -> BTreeMap<usize, usize> {
        let mut spec = BTreeMap::new();
        for x in 0..self.n {
            *spec.entry(self.element_order(x)).or_insert(0) += 1;
        }
        spec
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|x| (x..self.n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// True if some element generates the whole group.
    pub fn is_cyclic(&self) -> bool {
        (0..self.n).any(|x| self.element_order(x) == self.n)
    }

    /// Elements commuting with every element.
    pub fn center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&z| (0..self.n).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    /// Checks all table invariants and reports every violation found.
    /// An empty list means the table is a group with identity 0.
    pub fn verify(&self) -> Vec<Violation> {
        let n = self.n;
        let mut out = Vec::new();
        for row in 0..n {
            let mut seen = vec![false; n];
            for col in 0..n {
                let v = self.mul(row, col);
                if seen[v] {
                    out.push(Violation::LatinRow { row, value: v });
                    break;
                }
                seen[v] = true;
            }
        }
        for col in 0..n {
            let mut seen = vec![false; n];
            for row in 0..n {
                let v = self.mul(row, col);
                if seen[v] {
                    out.push(Violation::LatinColumn { col, value: v });
                    break;
                }
                seen[v] = true;
            }
        }
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                out.push(Violation::Identity { x });
                break;
            }
        }
        'assoc: for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        out.push(Violation::Associativity { a, b, c });
                        break 'assoc;
                    }
                }
            }
        }
        out
    }

    pub fn is_group(&self) -> bool {
        self.verify().is_empty()
    }

    /// Number of cells on which the two tables disagree.
    pub fn distance(&self, other: &CayleyTable) -> Result<usize> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(self
            .cells
            .iter()
            .zip(other.cells.iter())
            .filter(|(a, b)| a != b)
            .count())
    }

    /// The isomorphic table `*_f` with `x * y = f(f^-1(x) . f^-1(y))`.
    /// `f` is an isomorphism from `self` onto the result.
    pub fn apply_bijection(&self, f: &Permutation) -> Result<CayleyTable> {
        if f.len() != self.n {
            return Err(Error::MapNotTotal);
        }
        if !f.is_bijective() {
            return Err(Error::MapNotBijective);
        }
        let inv = f.inverse();
        let t = CayleyTable::from_fn(self.n, |x, y| {
            f.apply(self.mul(inv.apply(x), inv.apply(y)))
        })?;
        Ok(match &self.name {
            Some(name) => t.with_name(format!("{name}~")),
            None => t,
        })
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CayleyTable(n={}, name={:?})", self.n, self.name)?;
        for x in 0..self.n {
            for y in 0..self.n {
                write!(f, "{:3}", self.mul(x, y))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The cyclic group of order `n` on `0..n-1` under addition.
pub fn cyclic(n: usize) -> CayleyTable {
    CayleyTable::from_fn(n, |x, y| (x + y) % n)
        .expect("cyclic table")
        .with_name(format!("C{n}"))
}

/// Direct product under the row-major pairing `(x, y) -> x*|b| + y`.
pub fn direct_product(a: &CayleyTable, b: &CayleyTable) -> CayleyTable {
    let (na, nb) = (a.order(), b.order());
    CayleyTable::from_fn(na * nb, |x, y| {
        let (xa, xb) = (x / nb, x % nb);
        let (ya, yb) = (y / nb, y % nb);
        a.mul(xa, ya) * nb + b.mul(xb, yb)
    })
    .expect("product table")
}

/// Semidirect product `normal x| acting`: `action[t]` is the automorphism of
/// `normal` by which `t` acts. Pairing `(s, t) -> s*|acting| + t` with the
/// product `(s,t)(u,v) = (s . t(u), t v)`.
pub fn semidirect_product(
    normal: &CayleyTable,
    acting: &CayleyTable,
    action: &[Permutation],
) -> Result<CayleyTable> {
    let (nn, na) = (normal.order(), acting.order());
    if action.len() != na {
        return Err(Error::ActionNotHomomorphism);
    }
    for phi in action {
        if phi.len() != nn || !phi.is_bijective() {
            return Err(Error::ActionNotAutomorphism);
        }
        for x in 0..nn {
            for y in 0..nn {
                if phi.apply(normal.mul(x, y)) != normal.mul(phi.apply(x), phi.apply(y)) {
                    return Err(Error::ActionNotAutomorphism);
                }
            }
        }
    }
    // homomorphism: action[t.v] = action[t] after action[v]
    for t in 0..na {
        for v in 0..na {
            let tv = acting.mul(t, v);
            for x in 0..nn {
                if action[tv].apply(x) != action[t].apply(action[v].apply(x)) {
                    return Err(Error::ActionNotHomomorphism);
                }
            }
        }
    }
    CayleyTable::from_fn(nn * na, |x, y| {
        let (s, t) = (x / na, x % na);
        let (u, v) = (y / na, y % na);
        normal.mul(s, action[t].apply(u)) * na + acting.mul(t, v)
    })
}

/// Dihedral group of order `2m` as `C_m x| C_2` with inversion action.
pub fn dihedral(m: usize) -> Result<CayleyTable> {
    if m == 0 {
        return Err(Error::InvalidSpec("dihedral parameter must be positive".into()));
    }
    let cm = cyclic(m);
    let c2 = cyclic(2);
    let inv = Permutation::from_fn(m, |x| (m - x) % m);
    Ok(semidirect_product(&cm, &c2, &[Permutation::identity(m), inv])?
        .with_name(format!("D{}", 2 * m)))
}

/// Generalized dihedral group `D(O)` on `O x C_2` for an abelian `O` of odd
/// order: `(a,0)(b,h) = (ab,h)` and `(a,1)(b,h) = (a b^-1, 1+h)`.
pub fn generalized_dihedral(o: &CayleyTable) -> Result<CayleyTable> {
    if !o.is_abelian() {
        return Err(Error::InvalidSpec("generalized dihedral base must be abelian".into()));
    }
    if o.order() % 2 == 0 || o.order() < 3 {
        return Err(Error::InvalidSpec(
            "generalized dihedral base must have odd order >= 3".into(),
        ));
    }
    let m = o.order();
    Ok(CayleyTable::from_fn(2 * m, |x, y| {
        let (a, i) = (x / 2, x % 2);
        let (b, h) = (y / 2, y % 2);
        let prod = if i == 0 { o.mul(a, b) } else { o.mul(a, o.inv(b)) };
        prod * 2 + (i + h) % 2
    })?
    .with_name(match o.name() {
        Some(name) => format!("D({name})"),
        None => "D(O)".into(),
    }))
}

/// Dicyclic group of order `4m`: `<a, b | a^{2m} = 1, b^2 = a^m, b a b^-1 = a^-1>`.
/// Element `i < 2m` is `a^i`; element `2m + i` is `a^i b`.
pub fn dicyclic(m: usize) -> Result<CayleyTable> {
    if m == 0 {
        return Err(Error::InvalidSpec("dicyclic parameter must be positive".into()));
    }
    let n2 = 2 * m;
    Ok(CayleyTable::from_fn(4 * m, |x, y| {
        let (i, xb) = if x < n2 { (x, false) } else { (x - n2, true) };
        let (j, yb) = if y < n2 { (y, false) } else { (y - n2, true) };
        match (xb, yb) {
            // a^i a^j
            (false, false) => (i + j) % n2,
            // a^i (a^j b) = a^{i+j} b
            (false, true) => n2 + (i + j) % n2,
            // (a^i b) a^j = a^{i-j} b
            (true, false) => n2 + (i + n2 - j % n2) % n2,
            // (a^i b)(a^j b) = a^{i-j} b^2 = a^{i-j+m}
            (true, true) => (i + n2 - j % n2 + m) % n2,
        }
    })?
    .with_name(format!("Dic{m}")))
}

/// Symbolic description of a named group; realized by [`build_named`].
#[derive(Clone, Debug)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of order `2m`.
    Dihedral(usize),
    /// Dicyclic group of order `4m`.
    Dicyclic(usize),
    GeneralizedDihedral(Box<GroupSpec>),
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    /// `normal x| acting` with one automorphism of the normal factor per
    /// acting element.
    Semidirect {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: Vec<Permutation>,
    },
}

/// Realizes a [`GroupSpec`] as a table with identity 0 and deterministic
/// element numbering (cyclic uses `i -> i`; products pair row-major).
pub fn build_named(spec: &GroupSpec) -> Result<CayleyTable> {
    let table = match spec {
        GroupSpec::Cyclic(k) => {
            if *k == 0 {
                return Err(Error::InvalidSpec("cyclic order must be positive".into()));
            }
            cyclic(*k)
        }
        GroupSpec::Dihedral(m) => dihedral(*m)?,
        GroupSpec::Dicyclic(m) => dicyclic(*m)?,
        GroupSpec::GeneralizedDihedral(base) => generalized_dihedral(&build_named(base)?)?,
        GroupSpec::DirectProduct(a, b) => {
            let (ta, tb) = (build_named(a)?, build_named(b)?);
            direct_product(&ta, &tb)
        }
        GroupSpec::Semidirect { normal, acting, action } => {
            semidirect_product(&build_named(normal)?, &build_named(acting)?, action)?
        }
    };
    debug_assert!(table.is_group());
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_one_is_trivial() {
        let t = build_named(&GroupSpec::Cyclic(1)).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.mul(0, 0), 0);
        assert!(t.verify().is_empty());
    }

    #[test]
    fn valid_c4_verifies_empty() {
        assert!(cyclic(4).verify().is_empty());
    }

    #[test]
    fn swapped_cell_reports_latin_violations() {
        let mut cells = cyclic(4).cells().to_vec();
        // break row 1 by overwriting one cell with a duplicate value
        cells[4 + 2] = cells[4 + 3];
        let t = CayleyTable::from_cells(4, cells).unwrap();
        let vs = t.verify();
        assert!(vs.iter().any(|v| matches!(v, Violation::LatinRow { row: 1, .. })));
        assert!(vs.iter().any(|v| matches!(v, Violation::LatinColumn { .. })));
    }

    #[test]
    fn c8_order_spectrum() {
        // oracle: brute-force powers
        let t = cyclic(8);
        let spec = t.order_spectrum();
        assert_eq!(spec, BTreeMap::from([(1, 1), (2, 1), (4, 2), (8, 4)]));
        assert_eq!(t.element_order(0), 1);
    }

    #[test]
    fn d10_has_five_involutions() {
        let t = dihedral(5).unwrap();
        assert_eq!(t.order_spectrum()[&2], 5);
        let gd = generalized_dihedral(&cyclic(5)).unwrap();
        assert_eq!(gd.order_spectrum()[&2], 5);
    }

    #[test]
    fn dicyclic_three_has_one_involution() {
        let t = build_named(&GroupSpec::Dicyclic(3)).unwrap();
        assert_eq!(t.order(), 12);
        assert_eq!(t.order_spectrum()[&2], 1);
        assert!(t.verify().is_empty());
    }

    #[test]
    fn direct_product_spectra() {
        let t = direct_product(&cyclic(2), &cyclic(2));
        assert_eq!(t.order_spectrum()[&2], 3);
        let c1g = direct_product(&cyclic(1), &cyclic(6));
        assert_eq!(c1g.cells(), cyclic(6).cells());
    }

    #[test]
    fn semidirect_trivial_action_is_direct_product() {
        let c3 = cyclic(3);
        let c2 = cyclic(2);
        let trivial = vec![Permutation::identity(3), Permutation::identity(3)];
        let t = semidirect_product(&c3, &c2, &trivial).unwrap();
        assert_eq!(t.cells(), direct_product(&c3, &c2).cells());
    }

    #[test]
    fn c7_semidirect_c3_is_a_nonabelian_group() {
        let c7 = cyclic(7);
        let c3 = cyclic(3);
        // x -> 2x has order 3 on C7
        let phi = Permutation::from_fn(7, |x| (2 * x) % 7);
        let phi2 = Permutation::from_fn(7, |x| (4 * x) % 7);
        let t = semidirect_product(&c7, &c3, &[Permutation::identity(7), phi, phi2]).unwrap();
        assert_eq!(t.order(), 21);
        assert!(t.verify().is_empty());
        assert!(!t.is_abelian());
    }

    #[test]
    fn bad_action_rejected() {
        let c7 = cyclic(7);
        let c3 = cyclic(3);
        // x -> 3x has order 6 on C7, not a homomorphic C3 action
        let phi = Permutation::from_fn(7, |x| (3 * x) % 7);
        let phi2 = Permutation::from_fn(7, |x| (2 * x) % 7);
        let r = semidirect_product(&c7, &c3, &[Permutation::identity(7), phi, phi2]);
        assert!(matches!(r, Err(Error::ActionNotHomomorphism)));
    }

    #[test]
    fn apply_bijection_identity_and_composition() {
        let t = dihedral(4).unwrap();
        let id = Permutation::identity(8);
        assert_eq!(t.apply_bijection(&id).unwrap().cells(), t.cells());

        let f = Permutation::from_cycles(8, &[&[1, 2]]);
        let g = Permutation::from_cycles(8, &[&[3, 5, 7]]);
        let fg = g.compose_after(&f);
        let lhs = t.apply_bijection(&f).unwrap().apply_bijection(&g).unwrap();
        let rhs = t.apply_bijection(&fg).unwrap();
        assert_eq!(lhs.cells(), rhs.cells());
    }
}
