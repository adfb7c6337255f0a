//! The dual Steenrod action on `H_*QX`.
//!
//! On generators it is computed with the Nishida relation
//! `Sq^a_* Q^b = sum_t (b-a choose a-2t) Q^{b-a+t} Sq^t_*`,
//! on products with the Cartan formula. Madsen's action `N` of `Sq^a_*` on
//! operation sequences keeps the terms whose trailing square is `Sq^0_*`.

use std::collections::BTreeSet;

use crate::binom::binom_mod2_i;
use crate::element::{Element, Monomial};
use crate::error::{Error, Result};
use crate::memo::Table;
use crate::normalize::{apply_q_elem, normalize, FormalOpSum};
use crate::space::steenrod_down_gen_unchecked;
use crate::word::{AdmissibleGen, DLWord, Ops};

thread_local! {
    static SQ_GEN: Table<(u32, AdmissibleGen), Element> = Table::new();
}

pub(crate) fn clear_memo() {
    SQ_GEN.with(Table::clear);
}

fn sq_down_gen(a: u32, g: &AdmissibleGen) -> Element {
    if a == 0 {
        return Element::from_gen(g.clone());
    }
    // Sq^a vanishes on cohomology classes of degree < a.
    if 2 * a > g.degree() {
        return Element::zero();
    }
    SQ_GEN.with(|m| {
        m.get_or((a, g.clone()), || match g.inner() {
            None => steenrod_down_gen_unchecked(a, g.gen())
                .map(|h| Element::from_gen(AdmissibleGen::bare(h)))
                .unwrap_or_default(),
            Some(inner) => {
                let b = g.ops()[0] as i64;
                let inner = Element::from_gen(inner);
                let mut out = Element::zero();
                for t in 0..=a / 2 {
                    if binom_mod2_i(b - a as i64, (a - 2 * t) as i64) {
                        let n = b - a as i64 + t as i64;
                        let below = sq_down_elem(t, &inner);
                        if n > 0 && !below.is_zero() {
                            out.add_assign(&apply_q_elem(n as u32, &below));
                        }
                    }
                }
                out
            }
        })
    })
}

fn sq_down_piece(a: u32, g: &AdmissibleGen, j: u32) -> Element {
    if a & ((1 << j) - 1) != 0 {
        return Element::zero();
    }
    sq_down_gen(a >> j, g).frobenius(j)
}

fn cartan(a: u32, pieces: &[(AdmissibleGen, u32)]) -> Element {
    let (g, j) = &pieces[0];
    if pieces.len() == 1 {
        return sq_down_piece(a, g, *j);
    }
    let first_deg = g.degree() << j;
    let mut out = Element::zero();
    for a1 in 0..=a.min(first_deg / 2) {
        let head = sq_down_piece(a1, g, *j);
        if head.is_zero() {
            continue;
        }
        let tail = cartan(a - a1, &pieces[1..]);
        if !tail.is_zero() {
            out.add_assign(&head.mul(&tail));
        }
    }
    out
}

pub(crate) fn sq_down_monomial(a: u32, m: &Monomial) -> Element {
    if m.is_unit() {
        return if a == 0 { Element::one() } else { Element::zero() };
    }
    if 2 * a > m.degree() {
        return Element::zero();
    }
    cartan(a, &m.power_pieces())
}

pub(crate) fn sq_down_elem(a: u32, e: &Element) -> Element {
    let mut out = Element::zero();
    for m in e.terms() {
        out.add_assign(&sq_down_monomial(a, m));
    }
    out
}

/// `Sq^a_* e` for `a >= 1` on a homogeneous element.
pub fn sq_down(a: u32, e: &Element) -> Result<Element> {
    if a == 0 {
        return Err(Error::Domain("Sq^0_* is the identity; a must be positive".into()));
    }
    e.degree()?;
    Ok(sq_down_elem(a, e))
}

/// Whether `Sq^{2^k}_* e = 0` for every `2^k <= deg e`. The dual action
/// reverses composition, so the duals of the algebra generators suffice.
pub fn is_a_annihilated(e: &Element) -> Result<bool> {
    let Some(d) = e.degree()? else {
        return Ok(true);
    };
    Ok(powers_of_two(d).all(|p| sq_down_elem(p, e).is_zero()))
}

pub(crate) fn powers_of_two(d: u32) -> impl Iterator<Item = u32> {
    (0..32).map(|k| 1u32 << k).take_while(move |&p| p <= d)
}

/// The full Nishida expansion `Sq^a_* Q^I = sum Q^K Sq^{a^K}_*` as pairs
/// `(K, a^K)`, before any Adem rewriting. Every `K` has the length of `I`;
/// terms containing `Q^0` are dropped (they vanish on positive-degree classes).
pub fn nishida_expand(a: u32, ops: &[u32]) -> BTreeSet<(Ops, u32)> {
    let mut out = BTreeSet::new();
    let toggle = |set: &mut BTreeSet<(Ops, u32)>, item| {
        if !set.remove(&item) {
            set.insert(item);
        }
    };
    let Some((&b, rest)) = ops.split_first() else {
        out.insert((Ops::new(), a));
        return out;
    };
    for t in 0..=a / 2 {
        if !binom_mod2_i(b as i64 - a as i64, (a - 2 * t) as i64) {
            continue;
        }
        let k = b as i64 - a as i64 + t as i64;
        if k <= 0 {
            continue;
        }
        for (tail, at) in nishida_expand(t, rest) {
            let mut seq = Ops::with_capacity(ops.len());
            seq.push(k as u32);
            seq.extend_from_slice(&tail);
            toggle(&mut out, (seq, at));
        }
    }
    out
}

/// Madsen's action `N(Sq^a_*, Q^I)`, computed by the recursion
/// `N(Sq^a_*, Q^b) = (b-a choose a) Q^{b-a}` and
/// `N(Sq^a_*, Q^I) = sum_t (i_1-a choose a-2t) Q^{i_1-a+t} N(Sq^t_*, Q^{I_2})`.
/// The output is raw; call [`FormalOpSum::normalized`] for admissible form.
pub fn madsen_n(a: u32, ops: &[u32]) -> FormalOpSum {
    if a == 0 {
        return FormalOpSum::single(Ops::from_slice(ops));
    }
    let Some((&b, rest)) = ops.split_first() else {
        return FormalOpSum::zero();
    };
    let diff = b as i64 - a as i64;
    if rest.is_empty() {
        return if diff > 0 && binom_mod2_i(diff, a as i64) {
            FormalOpSum::single(Ops::from_slice(&[diff as u32]))
        } else {
            FormalOpSum::zero()
        };
    }
    let mut out = FormalOpSum::zero();
    for t in 0..=a / 2 {
        let k = diff + t as i64;
        if k <= 0 || !binom_mod2_i(diff, (a - 2 * t) as i64) {
            continue;
        }
        for tail in madsen_n(t, rest).iter() {
            let mut seq = Ops::with_capacity(ops.len());
            seq.push(k as u32);
            seq.extend_from_slice(tail);
            out.toggle(seq);
        }
    }
    out
}

/// Reference route for `Sq^a_*` on a generator: expand with Nishida at the
/// level of words, act on the space generator, then normalize each word.
pub fn sq_down_by_expansion(a: u32, g: &AdmissibleGen) -> Element {
    let mut out = Element::zero();
    for (k, tail) in nishida_expand(a, g.ops()) {
        let x = if tail == 0 { Some(g.gen()) } else { steenrod_down_gen_unchecked(tail, g.gen()) };
        if let Some(x) = x {
            out.add_assign(&normalize(&DLWord { ops: k, gen: x }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{Generator, Space};
    use crate::word::enumerate_admissible;

    fn g1() -> Generator {
        Space::sphere(1).unwrap().generator(1).unwrap()
    }

    fn a(m: u32) -> Generator {
        Space::real_proj().generator(m).unwrap()
    }

    fn gen(ops: &[u32], x: Generator) -> AdmissibleGen {
        AdmissibleGen::new(DLWord::new(Ops::from_slice(ops), x).unwrap()).unwrap()
    }

    fn el(ops: &[u32], x: Generator) -> Element {
        Element::from_gen(gen(ops, x))
    }

    fn seqs(v: &[&[u32]]) -> FormalOpSum {
        v.iter().map(|s| Ops::from_slice(s)).collect()
    }

    #[test]
    fn example_3_1() {
        let x = el(&[9, 5], g1());
        assert_eq!(sq_down(2, &x).unwrap(), el(&[7, 5], g1()));
        assert!(sq_down(4, &x).unwrap().is_zero());
    }

    #[test]
    fn sq1_cancellation() {
        let a1 = AdmissibleGen::bare(a(1));
        let a2 = AdmissibleGen::bare(a(2));
        let e = el(&[2], a(1)).add(&Element::from(Monomial::gen(a1.clone()).mul(&Monomial::gen(a2))));
        assert!(sq_down(1, &e).unwrap().is_zero());
        let a3 = AdmissibleGen::bare(a(3));
        assert_eq!(sq_down(1, &el(&[4], a(3))).unwrap(), Element::from(Monomial::power(a3, 2)));
        assert_eq!(sq_down(1, &el(&[2], a(1))).unwrap(), Element::from(Monomial::power(a1, 2)));
        assert!(sq_down(0, &e).is_err());
    }

    #[test]
    fn madsen_examples() {
        assert_eq!(madsen_n(2, &[9]), seqs(&[&[7]]));
        assert!(madsen_n(1, &[5]).is_zero());
        // Both the t = 0 and the t = 2 branches survive: Q^5 Q^5 + Q^7 Q^3.
        assert_eq!(madsen_n(4, &[9, 5]), seqs(&[&[5, 5], &[7, 3]]));
        assert_eq!(madsen_n(0, &[9, 5]), seqs(&[&[9, 5]]));
    }

    #[test]
    fn madsen_is_the_sq0_part_of_nishida() {
        let all = crate::testutil::all_sequences(24, 3);
        for ops in &all {
            for a in 0..=24 {
                let from_expansion: FormalOpSum =
                    nishida_expand(a, ops).into_iter().filter(|(_, t)| *t == 0).map(|(k, _)| k).collect();
                assert_eq!(madsen_n(a, ops), from_expansion, "{ops:?} a={a}");
                assert!(nishida_expand(a, ops).iter().all(|(k, _)| k.len() == ops.len()));
            }
        }
    }

    #[test]
    fn two_routes_agree() {
        for space in [Space::sphere(1).unwrap(), Space::sphere(2).unwrap(), Space::real_proj(), Space::sigma_cp_plus()] {
            for d in 1..=20 {
                for g in enumerate_admissible(space, d, 3) {
                    for a in 1..=d / 2 {
                        assert_eq!(sq_down_gen(a, &g), sq_down_by_expansion(a, &g), "Sq^{a} {g}");
                    }
                }
            }
        }
    }

    #[test]
    fn annihilation_examples() {
        let a1 = AdmissibleGen::bare(a(1));
        let class: Element = [
            Monomial::gen(gen(&[2], a(1))),
            Monomial::gen(a1.clone()).mul(&Monomial::gen(AdmissibleGen::bare(a(2)))),
            Monomial::power(a1, 3),
            Monomial::gen(AdmissibleGen::bare(a(3))),
        ]
        .into_iter()
        .collect();
        assert!(is_a_annihilated(&class).unwrap());
        assert!(!is_a_annihilated(&el(&[2], a(1))).unwrap());
        assert!(is_a_annihilated(&Element::zero()).unwrap());
    }
}
