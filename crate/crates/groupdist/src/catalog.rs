//! One representative table per isomorphism class for orders up to 28.
//!
//! For every order that appears in the distance tables the class ordering
//! matches those row labels (the GAP numbering). For the remaining orders in
//! the supported range (23..=28) the ordering below is fixed and documented
//! here, one line per class.

use crate::cayley::{
    cyclic, dicyclic, dihedral, direct_product, generalized_dihedral, semidirect_product,
    CayleyTable,
};
use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const MAX_ORDER: usize = 28;

/// Number of isomorphism classes for each supported order (index = order).
pub const CLASS_COUNTS: [usize; MAX_ORDER + 1] = [
    0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15, 2, 2, 5, 4,
];

fn named(t: CayleyTable, name: &str) -> CayleyTable {
    t.with_name(name)
}

fn klein() -> CayleyTable {
    direct_product(&cyclic(2), &cyclic(2))
}

fn power_action(n: usize, k: usize, acting_order: usize) -> Vec<Permutation> {
    // acting generator maps x -> k*x on C_n; element t acts by k^t
    (0..acting_order)
        .map(|t| {
            let mut mult = 1usize;
            for _ in 0..t {
                mult = (mult * k) % n;
            }
            Permutation::from_fn(n, move |x| (x * mult) % n)
        })
        .collect()
}

fn a4() -> CayleyTable {
    // (C2)^2 x| C3, the C3 cycling the three involutions
    let sigma = Permutation::from_images(vec![0, 2, 3, 1]);
    let sigma2 = sigma.compose_after(&sigma);
    semidirect_product(&klein(), &cyclic(3), &[Permutation::identity(4), sigma, sigma2])
        .expect("A4 action")
}

fn s4() -> CayleyTable {
    // (C2)^2 x| S3 with S3 permuting the involutions naturally
    let s3 = dihedral(3).unwrap();
    let rho = Permutation::from_images(vec![0, 2, 3, 1]);
    let tau = Permutation::from_images(vec![0, 1, 3, 2]);
    let action: Vec<Permutation> = (0..6)
        .map(|x| {
            let (a, b) = (x / 2, x % 2);
            let mut p = Permutation::identity(4);
            for _ in 0..a {
                p = rho.compose_after(&p);
            }
            if b == 1 {
                p = p.compose_after(&tau);
            }
            p
        })
        .collect();
    semidirect_product(&klein(), &s3, &action).expect("S4 action")
}

fn sl23() -> CayleyTable {
    // Q8 x| C3 cycling i -> j -> k; Q8 = dicyclic(2) with
    // 0..3 = 1,i,-1,-i and 4..7 = j,k,-j,-k
    let q8 = dicyclic(2).unwrap();
    let sigma = Permutation::from_images(vec![0, 4, 2, 6, 5, 1, 7, 3]);
    let sigma2 = sigma.compose_after(&sigma);
    semidirect_product(&q8, &cyclic(3), &[Permutation::identity(8), sigma, sigma2])
        .expect("SL(2,3) action")
}

fn pauli16() -> CayleyTable {
    // central product D8 o C4: elements (phase, p) with phase in Z4 and
    // p in {I, X, Y, Z}; p*q via xor with a phase cocycle
    let gamma = |p: usize, q: usize| -> usize {
        match (p, q) {
            (1, 2) | (2, 3) | (3, 1) => 1,
            (2, 1) | (3, 2) | (1, 3) => 3,
            _ => 0,
        }
    };
    CayleyTable::from_fn(16, |x, y| {
        let (ph1, p1) = (x / 4, x % 4);
        let (ph2, p2) = (y / 4, y % 4);
        ((ph1 + ph2 + gamma(p1, p2)) % 4) * 4 + (p1 ^ p2)
    })
    .expect("pauli table")
}

fn rank2_16() -> CayleyTable {
    // (C4 x C2) x| C2 with the action a -> ab, b -> b
    let base = direct_product(&cyclic(4), &cyclic(2));
    let phi = Permutation::from_fn(8, |x| {
        let (a, b) = (x / 2, x % 2);
        a * 2 + (a + b) % 2
    });
    semidirect_product(&base, &cyclic(2), &[Permutation::identity(8), phi]).expect("16,3 action")
}

fn c4_semi_c4() -> CayleyTable {
    let inv = Permutation::from_fn(4, |x| (4 - x) % 4);
    let action = vec![Permutation::identity(4), inv.clone(), Permutation::identity(4), inv];
    semidirect_product(&cyclic(4), &cyclic(4), &action).expect("C4:C4 action")
}

fn c8_semi_c2(k: usize) -> CayleyTable {
    let phi = Permutation::from_fn(8, move |x| (k * x) % 8);
    semidirect_product(&cyclic(8), &cyclic(2), &[Permutation::identity(8), phi])
        .expect("C8:C2 action")
}

fn c3_semi_c8() -> CayleyTable {
    let inv = Permutation::from_fn(3, |x| (3 - x) % 3);
    let action: Vec<Permutation> =
        (0..8).map(|t| if t % 2 == 0 { Permutation::identity(3) } else { inv.clone() }).collect();
    semidirect_product(&cyclic(3), &cyclic(8), &action).expect("C3:C8 action")
}

fn c3_semi_d8() -> CayleyTable {
    // D8 acts on C3 through the quotient where the rotation inverts
    let d8 = dihedral(4).unwrap();
    let inv = Permutation::from_fn(3, |x| (3 - x) % 3);
    let action: Vec<Permutation> = (0..8)
        .map(|x| if (x / 2) % 2 == 1 { inv.clone() } else { Permutation::identity(3) })
        .collect();
    semidirect_product(&cyclic(3), &d8, &action).expect("C3:D8 action")
}

fn c5_semi_c4() -> CayleyTable {
    semidirect_product(&cyclic(5), &cyclic(4), &power_action(5, 2, 4)).expect("C5:C4 action")
}

fn c7_semi_c3() -> CayleyTable {
    semidirect_product(&cyclic(7), &cyclic(3), &power_action(7, 2, 3)).expect("C7:C3 action")
}

fn c9_semi_c3() -> CayleyTable {
    semidirect_product(&cyclic(9), &cyclic(3), &power_action(9, 4, 3)).expect("C9:C3 action")
}

fn heisenberg27() -> CayleyTable {
    // (C3 x C3) x| C3 with the shear (x, y) -> (x, x + y)
    let base = direct_product(&cyclic(3), &cyclic(3));
    let phi = Permutation::from_fn(9, |v| {
        let (x, y) = (v / 3, v % 3);
        x * 3 + (x + y) % 3
    });
    let phi2 = phi.compose_after(&phi);
    semidirect_product(&base, &cyclic(3), &[Permutation::identity(9), phi, phi2])
        .expect("heisenberg action")
}

/// The ordered list of isomorphism-class representatives for order `n`.
pub fn catalog(n: usize) -> Result<Vec<CayleyTable>> {
    let c = cyclic;
    let d = |m: usize| dihedral(m).unwrap();
    let x = direct_product;
    let entries: Vec<CayleyTable> = match n {
        1 => vec![c(1)],
        2 => vec![c(2)],
        3 => vec![c(3)],
        4 => vec![c(4), named(klein(), "(C2)^2")],
        5 => vec![c(5)],
        6 => vec![named(d(3), "S3"), c(6)],
        7 => vec![c(7)],
        8 => vec![
            c(8),
            named(x(&c(4), &c(2)), "C4xC2"),
            d(4),
            named(dicyclic(2).unwrap(), "Q8"),
            named(x(&klein(), &c(2)), "(C2)^3"),
        ],
        9 => vec![c(9), named(x(&c(3), &c(3)), "(C3)^2")],
        10 => vec![d(5), c(10)],
        11 => vec![c(11)],
        12 => vec![
            named(dicyclic(3).unwrap(), "Dic3"),
            c(12),
            named(a4(), "A4"),
            d(6),
            named(x(&c(6), &c(2)), "C6xC2"),
        ],
        13 => vec![c(13)],
        14 => vec![d(7), c(14)],
        15 => vec![c(15)],
        16 => vec![
            c(16),
            named(x(&c(4), &c(4)), "C4xC4"),
            named(rank2_16(), "rank2(C4xC2):C2"),
            named(c4_semi_c4(), "C4:C4"),
            named(x(&c(8), &c(2)), "C8xC2"),
            named(c8_semi_c2(5), "C8:C2"),
            d(8),
            named(c8_semi_c2(3), "QD16"),
            named(dicyclic(4).unwrap(), "Q16"),
            named(x(&c(4), &klein()), "C4x(C2)^2"),
            named(x(&c(2), &d(4)), "C2xD8"),
            named(x(&c(2), &dicyclic(2).unwrap()), "C2xQ8"),
            named(pauli16(), "rank3(C4xC2):C2"),
            named(x(&klein(), &klein()), "(C2)^4"),
        ],
        17 => vec![c(17)],
        18 => vec![
            d(9),
            c(18),
            named(x(&c(3), &d(3)), "C3xS3"),
            named(generalized_dihedral(&x(&c(3), &c(3))).unwrap(), "(C3)^2:C2"),
            named(x(&c(6), &c(3)), "C6xC3"),
        ],
        19 => vec![c(19)],
        20 => vec![
            named(dicyclic(5).unwrap(), "Dic5"),
            c(20),
            named(c5_semi_c4(), "C5:C4"),
            d(10),
            named(x(&c(10), &c(2)), "C10xC2"),
        ],
        21 => vec![named(c7_semi_c3(), "C7:C3"), c(21)],
        22 => vec![d(11), c(22)],
        23 => vec![c(23)],
        24 => vec![
            named(c3_semi_c8(), "C3:C8"),
            c(24),
            named(sl23(), "SL(2,3)"),
            named(dicyclic(6).unwrap(), "Dic6"),
            named(x(&c(4), &d(3)), "C4xS3"),
            d(12),
            named(x(&c(2), &dicyclic(3).unwrap()), "C2xDic3"),
            named(c3_semi_d8(), "C3:D8"),
            named(x(&c(12), &c(2)), "C12xC2"),
            named(x(&c(3), &d(4)), "C3xD8"),
            named(x(&c(3), &dicyclic(2).unwrap()), "C3xQ8"),
            named(s4(), "S4"),
            named(x(&c(2), &a4()), "C2xA4"),
            named(x(&klein(), &d(3)), "(C2)^2xS3"),
            named(x(&klein(), &c(6)), "(C2)^2xC6"),
        ],
        25 => vec![c(25), named(x(&c(5), &c(5)), "(C5)^2")],
        26 => vec![d(13), c(26)],
        27 => vec![
            c(27),
            named(x(&c(9), &c(3)), "C9xC3"),
            named(heisenberg27(), "(C3)^2:C3"),
            named(c9_semi_c3(), "C9:C3"),
            named(x(&x(&c(3), &c(3)), &c(3)), "(C3)^3"),
        ],
        28 => vec![
            named(dicyclic(7).unwrap(), "Dic7"),
            c(28),
            d(14),
            named(x(&c(14), &c(2)), "C14xC2"),
        ],
        _ => {
            return Err(Error::UnsupportedOrder(
                n,
                format!("catalog covers orders 1..={MAX_ORDER}"),
            ))
        }
    };
    debug_assert_eq!(entries.len(), CLASS_COUNTS[n]);
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::find_isomorphism;

    #[test]
    fn table_row_label_orders() {
        let names4: Vec<_> = catalog(4).unwrap().iter().map(|t| t.name().unwrap().to_string()).collect();
        assert_eq!(names4, ["C4", "(C2)^2"]);
        let names12: Vec<_> =
            catalog(12).unwrap().iter().map(|t| t.name().unwrap().to_string()).collect();
        assert_eq!(names12, ["Dic3", "C12", "A4", "D12", "C6xC2"]);
        assert_eq!(catalog(16).unwrap().len(), 14);
    }

    #[test]
    fn every_entry_is_a_group_with_the_right_order() {
        for n in 1..=MAX_ORDER {
            for t in catalog(n).unwrap() {
                assert_eq!(t.order(), n, "{:?}", t.name());
                assert!(t.verify().is_empty(), "{:?} fails verify", t.name());
            }
        }
    }

    #[test]
    fn class_counts_match_known_values_up_to_22() {
        let expect = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2];
        for (i, &want) in expect.iter().enumerate() {
            assert_eq!(catalog(i + 1).unwrap().len(), want, "n={}", i + 1);
        }
    }

    #[test]
    fn pairwise_non_isomorphic_small_orders() {
        for n in [4, 6, 8, 9, 10, 12, 18, 20, 21] {
            let cat = catalog(n).unwrap();
            for i in 0..cat.len() {
                for j in (i + 1)..cat.len() {
                    assert!(
                        find_isomorphism(&cat[i], &cat[j]).is_none(),
                        "n={n}: {:?} ~ {:?}",
                        cat[i].name(),
                        cat[j].name()
                    );
                }
            }
        }
    }

    #[test]
    fn sixteen_distinguishing_invariants() {
        let cat = catalog(16).unwrap();
        // spectra plus center sizes pin down the GAP numbering we claim
        let spec2: Vec<usize> = cat.iter().map(|t| t.order_spectrum()[&2]).collect();
        assert_eq!(spec2, [1, 3, 7, 3, 3, 3, 9, 5, 1, 7, 11, 3, 7, 15]);
        let centers: Vec<usize> = cat.iter().map(|t| t.center().len()).collect();
        assert_eq!(centers, [16, 16, 4, 4, 16, 4, 2, 2, 2, 16, 4, 4, 4, 16]);
        // rank-2 vs rank-3 split: center C2xC2 vs C4
        assert_eq!(cat[2].center().iter().map(|&z| cat[2].element_order(z)).max(), Some(2));
        assert_eq!(cat[12].center().iter().map(|&z| cat[12].element_order(z)).max(), Some(4));
    }

    #[test]
    fn catalog_30_unsupported() {
        assert!(matches!(catalog(30), Err(Error::UnsupportedOrder(30, _))));
    }
}
