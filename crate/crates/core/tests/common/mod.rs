#![allow(dead_code)]

use lll_shift::{GroupContext, GroupElement};
use num_bigint::BigInt;
use num_rational::BigRational;

/// `S_n` as a multiplication table over its permutations in lexicographic
/// order; `(a * b)(i) = a(b(i))`.
pub fn symmetric_group(n: usize) -> GroupContext {
    let mut out = Vec::new();
    permutations(&mut (0..n).collect(), 0, &mut out);
    out.sort();
    table_from(&out, |a, b| b.iter().map(|&i| a[i]).collect())
}

fn permutations(p: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if start == p.len() {
        out.push(p.clone());
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permutations(p, start + 1, out);
        p.swap(start, i);
    }
}

/// Dihedral group of order `2n`: pairs `(r, s)` standing for `ρ^r σ^s`.
pub fn dihedral_group(n: usize) -> GroupContext {
    let elems: Vec<(usize, usize)> = (0..2).flat_map(|s| (0..n).map(move |r| (r, s))).collect();
    table_from(&elems, |&(r1, s1), &(r2, s2)| {
        let r = if s1 == 0 { (r1 + r2) % n } else { (r1 + n - r2) % n };
        (r, s1 ^ s2)
    })
}

fn table_from<T: Clone + PartialEq>(elems: &[T], mul: impl Fn(&T, &T) -> T) -> GroupContext {
    let index = |x: &T| elems.iter().position(|y| y == x).expect("closed under multiplication");
    let table: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| elems.iter().map(|b| index(&mul(a, b))).collect())
        .collect();
    GroupContext::table(table, 0).expect("valid table")
}

pub fn int(x: i64) -> GroupElement {
    GroupElement::Vector(vec![x])
}

/// Rational enclosure of `e` from the series `Σ 1/j!`, `j ≤ 24`, with the
/// tail bounded by twice its first term.
pub fn e_enclosure() -> (BigRational, BigRational) {
    let mut sum = BigRational::from_integer(BigInt::from(0));
    let mut term = BigRational::from_integer(BigInt::from(1));
    for j in 0..=24u32 {
        sum += &term;
        term /= BigRational::from_integer(BigInt::from(j + 1));
    }
    let upper = &sum + &term * BigRational::from_integer(BigInt::from(2));
    (sum, upper)
}
