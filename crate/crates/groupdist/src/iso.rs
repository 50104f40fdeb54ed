//! Subgroup enumeration, automorphism groups, and isomorphism search.

use crate::cayley::CayleyTable;
use crate::error::{Error, Result};
use crate::perm::{PartialMap, Permutation};
use std::collections::BTreeSet;

/// Closure of `seed` under the group operation (always contains 0).
pub fn subgroup_closure(t: &CayleyTable, seed: &[usize]) -> Vec<usize> {
    let n = t.order();
    let mut member = vec![false; n];
    member[0] = true;
    let mut elems = vec![0usize];
    for &s in seed {
        if !member[s] {
            member[s] = true;
            elems.push(s);
        }
    }
    loop {
        let mut grew = false;
        for i in 0..elems.len() {
            for j in 0..elems.len() {
                let p = t.mul(elems[i], elems[j]);
                if !member[p] {
                    member[p] = true;
                    elems.push(p);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    elems.sort_unstable();
    elems
}

pub fn is_subgroup(t: &CayleyTable, set: &[usize]) -> bool {
    if !set.contains(&0) {
        return false;
    }
    set.iter().all(|&x| set.iter().all(|&y| set.contains(&t.mul(x, y))))
}

pub fn is_normal(t: &CayleyTable, set: &[usize]) -> bool {
    let n = t.order();
    (0..n).all(|x| {
        let xi = t.inv(x);
        set.iter().all(|&s| set.contains(&t.mul(t.mul(x, s), xi)))
    })
}

/// All subgroups, as sorted element sets, ordered by (size, elements).
pub fn subgroups(t: &CayleyTable) -> Vec<Vec<usize>> {
    let n = t.order();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(vec![0]);
    let mut queue = vec![vec![0usize]];
    while let Some(s) = queue.pop() {
        for g in 1..n {
            if s.binary_search(&g).is_ok() {
                continue;
            }
            let mut seed = s.clone();
            seed.push(g);
            let c = subgroup_closure(t, &seed);
            if found.insert(c.clone()) {
                queue.push(c);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Every cyclic subgroup of prime order, sorted by descending order and then
/// lexicographically.
pub fn prime_order_subgroups(t: &CayleyTable) -> Vec<Vec<usize>> {
    let n = t.order();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for x in 1..n {
        if is_prime(t.element_order(x)) {
            found.insert(subgroup_closure(t, &[x]));
        }
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    out
}

/// Greedy minimal generating sequence: repeatedly adjoin the smallest element
/// outside the generated subgroup.
pub fn generating_sequence(t: &CayleyTable) -> Vec<usize> {
    let n = t.order();
    let mut gens = Vec::new();
    let mut closed = vec![0usize];
    while closed.len() < n {
        let g = (1..n).find(|x| closed.binary_search(x).is_err()).unwrap();
        gens.push(g);
        closed = subgroup_closure(t, &gens);
    }
    gens
}

/// Extends a partial homomorphism `src -> dst` by `x -> y` and closes under
/// products. Returns the rollback checkpoint on success.
fn extend_hom(
    src: &CayleyTable,
    dst: &CayleyTable,
    map: &mut PartialMap,
    domain: &mut Vec<usize>,
    x: usize,
    y: usize,
) -> Option<usize> {
    let checkpoint = domain.len();
    if map.get(x) == Some(y) {
        return Some(checkpoint);
    }
    if !map.set(x, y) {
        return None;
    }
    domain.push(x);
    let mut next = checkpoint;
    while next < domain.len() {
        let e = domain[next];
        next += 1;
        let fe = map.get(e).unwrap();
        for i in 0..domain.len() {
            let d = domain[i];
            let fd = map.get(d).unwrap();
            for (p, q) in [
                (src.mul(e, d), dst.mul(fe, fd)),
                (src.mul(d, e), dst.mul(fd, fe)),
            ] {
                match map.get(p) {
                    Some(v) if v == q => {}
                    Some(_) => {
                        rollback(map, domain, checkpoint);
                        return None;
                    }
                    None => {
                        if map.preimage(q).is_some() || !map.set(p, q) {
                            rollback(map, domain, checkpoint);
                            return None;
                        }
                        domain.push(p);
                    }
                }
            }
        }
    }
    Some(checkpoint)
}

fn rollback(map: &mut PartialMap, domain: &mut Vec<usize>, checkpoint: usize) {
    while domain.len() > checkpoint {
        map.unset(domain.pop().unwrap());
    }
}

/// The full automorphism group of `t` as permutations of `0..n-1`.
///
/// Images of a greedy generating sequence are enumerated with order
/// filtering; each assignment is closed into a partial homomorphism, so the
/// search space stays small even for elementary abelian groups.
pub fn automorphisms(t: &CayleyTable) -> Vec<Permutation> {
    let n = t.order();
    let gens = generating_sequence(t);
    let orders: Vec<usize> = (0..n).map(|x| t.element_order(x)).collect();
    let mut out = Vec::new();
    let mut map = PartialMap::empty(n);
    let mut domain = Vec::new();
    let cp = extend_hom(t, t, &mut map, &mut domain, 0, 0).unwrap();
    search_gen_images(t, t, &gens, 0, &orders, &orders, &mut map, &mut domain, &mut |m| {
        out.push(Permutation::from_images(m.images().to_vec()));
        true
    });
    rollback(&mut map, &mut domain, cp);
    out
}

/// DFS over images of `gens[level..]`; calls `emit` on every completed
/// bijective homomorphism. `emit` returns false to stop the whole search.
#[allow(clippy::too_many_arguments)]
fn search_gen_images(
    src: &CayleyTable,
    dst: &CayleyTable,
    gens: &[usize],
    level: usize,
    src_orders: &[usize],
    dst_orders: &[usize],
    map: &mut PartialMap,
    domain: &mut Vec<usize>,
    emit: &mut impl FnMut(&PartialMap) -> bool,
) -> bool {
    if level == gens.len() {
        debug_assert!(map.is_total());
        return emit(map);
    }
    let g = gens[level];
    if let Some(_y) = map.get(g) {
        return search_gen_images(src, dst, gens, level + 1, src_orders, dst_orders, map, domain, emit);
    }
    for y in 0..dst.order() {
        if dst_orders[y] != src_orders[g] || map.preimage(y).is_some() {
            continue;
        }
        if let Some(cp) = extend_hom(src, dst, map, domain, g, y) {
            let keep_going =
                search_gen_images(src, dst, gens, level + 1, src_orders, dst_orders, map, domain, emit);
            rollback(map, domain, cp);
            if !keep_going {
                return false;
            }
        }
    }
    true
}

/// The lexicographically least isomorphism `f: a -> b` on the image sequence
/// `(f(0), f(1), ...)`, or `None` if the tables are not isomorphic.
pub fn find_isomorphism(a: &CayleyTable, b: &CayleyTable) -> Option<Permutation> {
    if a.order() != b.order() {
        return None;
    }
    if a.order_spectrum() != b.order_spectrum() {
        return None;
    }
    let n = a.order();
    let a_orders: Vec<usize> = (0..n).map(|x| a.element_order(x)).collect();
    let b_orders: Vec<usize> = (0..n).map(|x| b.element_order(x)).collect();
    let mut map = PartialMap::empty(n);
    let mut domain = Vec::new();
    extend_hom(a, b, &mut map, &mut domain, 0, 0)?;
    let mut result = None;
    lex_iso_dfs(a, b, &a_orders, &b_orders, &mut map, &mut domain, &mut result);
    result
}

fn lex_iso_dfs(
    a: &CayleyTable,
    b: &CayleyTable,
    a_orders: &[usize],
    b_orders: &[usize],
    map: &mut PartialMap,
    domain: &mut Vec<usize>,
    result: &mut Option<Permutation>,
) -> bool {
    let n = a.order();
    let x = match (0..n).find(|&x| map.get(x).is_none()) {
        None => {
            *result = Some(Permutation::from_images(map.images().to_vec()));
            return true;
        }
        Some(x) => x,
    };
    for y in 0..n {
        if b_orders[y] != a_orders[x] || map.preimage(y).is_some() {
            continue;
        }
        if let Some(cp) = extend_hom(a, b, map, domain, x, y) {
            let done = lex_iso_dfs(a, b, a_orders, b_orders, map, domain, result);
            rollback(map, domain, cp);
            if done {
                return true;
            }
        }
    }
    false
}

/// Right cosets of a normal subgroup together with the quotient table.
/// Coset 0 is the subgroup itself; cosets are numbered by ascending least
/// element.
pub struct Quotient {
    pub coset_of: Vec<usize>,
    pub cosets: Vec<Vec<usize>>,
    pub table: CayleyTable,
}

pub fn quotient(g: &CayleyTable, s: &[usize]) -> Result<Quotient> {
    if !is_subgroup(g, s) {
        return Err(Error::PreconditionFailed("not a subgroup".into()));
    }
    if !is_normal(g, s) {
        return Err(Error::PreconditionFailed("subgroup is not normal".into()));
    }
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = cosets.len();
        let mut members: Vec<usize> = s.iter().map(|&e| g.mul(e, x)).collect();
        members.sort_unstable();
        for &m in &members {
            coset_of[m] = id;
        }
        cosets.push(members);
    }
    let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let table = CayleyTable::from_fn(cosets.len(), |i, j| coset_of[g.mul(reps[i], reps[j])])?;
    debug_assert!(table.is_group());
    Ok(Quotient { coset_of, cosets, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{cyclic, dihedral, direct_product};

    fn elementary_abelian_8() -> CayleyTable {
        direct_product(&direct_product(&cyclic(2), &cyclic(2)), &cyclic(2))
    }

    #[test]
    fn trivial_group_automorphisms() {
        let auts = automorphisms(&cyclic(1));
        assert_eq!(auts.len(), 1);
        assert!(auts[0].is_identity());
    }

    #[test]
    fn c4_has_two_automorphisms() {
        // oracle: brute force over all bijections fixing 0
        let t = cyclic(4);
        let auts = automorphisms(&t);
        assert_eq!(auts.len(), 2);
        let brute = brute_force_automorphisms(&t);
        assert_eq!(auts.len(), brute);
    }

    #[test]
    fn elementary_abelian_8_has_168_automorphisms() {
        let t = elementary_abelian_8();
        let auts = automorphisms(&t);
        assert_eq!(auts.len(), 168);
        assert_eq!(brute_force_automorphisms(&t), 168);
        // closed under composition, every element fixes 0
        for p in &auts {
            assert_eq!(p.apply(0), 0);
            for q in auts.iter().take(5) {
                let c = p.compose_after(q);
                assert!(auts.contains(&c));
            }
        }
    }

    fn brute_force_automorphisms(t: &CayleyTable) -> usize {
        let n = t.order();
        let mut count = 0;
        let mut perm: Vec<usize> = (0..n).collect();
        permute_all(&mut perm, 1, &mut |p| {
            let ok = (0..n).all(|x| (0..n).all(|y| p[t.mul(x, y)] == t.mul(p[x], p[y])));
            if ok {
                count += 1;
            }
        });
        count
    }

    fn permute_all(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k >= v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute_all(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn prime_order_subgroups_of_c6_and_klein() {
        let subs = prime_order_subgroups(&cyclic(6));
        assert_eq!(subs, vec![vec![0, 2, 4], vec![0, 3]]);
        let klein = direct_product(&cyclic(2), &cyclic(2));
        assert_eq!(prime_order_subgroups(&klein).len(), 3);
        assert!(prime_order_subgroups(&cyclic(1)).is_empty());
    }

    #[test]
    fn isomorphism_c6_vs_c3xc2() {
        let c6 = cyclic(6);
        let p = direct_product(&cyclic(3), &cyclic(2));
        let f = find_isomorphism(&p, &c6).expect("isomorphic");
        let moved = p.apply_bijection(&f).unwrap();
        assert_eq!(moved.cells(), c6.cells());
        // self-isomorphism is lexicographically the identity
        let id = find_isomorphism(&c6, &c6).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn non_isomorphic_detected() {
        assert!(find_isomorphism(&cyclic(4), &direct_product(&cyclic(2), &cyclic(2))).is_none());
        assert!(find_isomorphism(&dihedral(3).unwrap(), &cyclic(6)).is_none());
    }

    #[test]
    fn quotient_of_d8_by_center() {
        let d8 = dihedral(4).unwrap();
        let center = d8.center();
        assert_eq!(center.len(), 2);
        let q = quotient(&d8, &center).unwrap();
        assert_eq!(q.table.order(), 4);
        assert_eq!(q.table.order_spectrum()[&2], 3); // Klein quotient
    }
}
