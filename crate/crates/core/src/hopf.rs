//! Hopf algebra structure of `H_*QX`: coproduct, primitives, the square root
//! (Verschiebung) and the homology suspension.

use crate::element::{Element, Monomial, TensorElement};
use crate::error::{Error, Result};
use crate::memo::Table;
use crate::normalize::{apply_q_elem, apply_q_monomial, normalize};
use crate::space::{coproduct_gen, root_gen, suspend_space, Space};
use crate::word::{AdmissibleGen, DLWord};

pub use crate::element::height;

thread_local! {
    static PSI_GEN: Table<AdmissibleGen, TensorElement> = Table::new();
}

pub(crate) fn clear_memo() {
    PSI_GEN.with(Table::clear);
}

fn leg(g: Option<crate::space::Generator>) -> Monomial {
    g.map_or_else(Monomial::unit, |h| Monomial::gen(AdmissibleGen::bare(h)))
}

fn coproduct_admissible(g: &AdmissibleGen) -> TensorElement {
    PSI_GEN.with(|m| {
        m.get_or(g.clone(), || match g.inner() {
            None => {
                let mut out = TensorElement::zero();
                for (l, r) in coproduct_gen(g.gen()) {
                    out.toggle((leg(l), leg(r)));
                }
                out
            }
            Some(inner) => {
                // psi Q^n = sum_{i+j=n} Q^i ⊗ Q^j on the legs of psi(inner).
                let n = g.ops()[0];
                let mut out = TensorElement::zero();
                for (l, r) in coproduct_admissible(&inner).terms() {
                    let (dl, dr) = (l.degree(), r.degree());
                    if dl + dr > n {
                        continue;
                    }
                    for i in dl..=n - dr {
                        let a = apply_q_monomial(i, l);
                        if a.is_zero() {
                            continue;
                        }
                        let b = apply_q_monomial(n - i, r);
                        out.add_tensor(&a, &b);
                    }
                }
                out
            }
        })
    })
}

fn coproduct_monomial(m: &Monomial) -> TensorElement {
    let mut out = TensorElement::one();
    for (g, j) in m.power_pieces() {
        out = out.mul(&coproduct_admissible(&g).frobenius(j));
    }
    out
}

/// The coproduct `psi e`.
pub fn coproduct(e: &Element) -> TensorElement {
    let mut out = TensorElement::zero();
    for m in e.terms() {
        out.add_assign(&coproduct_monomial(m));
    }
    out
}

/// `psi e - e ⊗ 1 - 1 ⊗ e` for an element of positive degree.
pub fn reduced_coproduct(e: &Element) -> TensorElement {
    coproduct(e).reduced()
}

/// Whether `psi e = e ⊗ 1 + 1 ⊗ e`.
pub fn is_primitive(e: &Element) -> Result<bool> {
    e.degree()?;
    Ok(coproduct(e) == TensorElement::primitive_image(e))
}

fn root_admissible(g: &AdmissibleGen) -> Element {
    if g.ops().iter().any(|i| i % 2 == 1) {
        return Element::zero();
    }
    let Some(x) = root_gen(g.gen()) else {
        return Element::zero();
    };
    let mut e = Element::from_gen(AdmissibleGen::bare(x));
    for &i in g.ops().iter().rev() {
        e = apply_q_elem(i / 2, &e);
        if e.is_zero() {
            break;
        }
    }
    e
}

fn root_monomial(m: &Monomial) -> Element {
    let mut out = Element::one();
    for (g, j) in m.power_pieces() {
        out = out.mul(&root_admissible(&g).frobenius(j));
        if out.is_zero() {
            break;
        }
    }
    out
}

/// The square root `r`, dual to squaring in cohomology. It is a ring map
/// with `r Q^{2i} x = Q^i r x`, `r Q^{2i+1} x = 0` and `r(e^2) = (r e)^2`.
pub fn square_root(e: &Element) -> Result<Element> {
    e.degree()?;
    let mut out = Element::zero();
    for m in e.terms() {
        out.add_assign(&root_monomial(m));
    }
    Ok(out)
}

/// The homology suspension `sigma_*: H_*QX -> H_{*+1}Q(Sigma X)`. It kills
/// decomposables and sends `Q^I x` to `Q^I (Sigma x)`.
pub fn suspend(e: &Element, target: Space) -> Result<Element> {
    e.degree()?;
    let mut out = Element::zero();
    for m in e.terms() {
        for (g, _) in m.factors() {
            let expected = suspend_space(g.gen().space, 1);
            if expected != target {
                return Err(Error::SpaceMismatch(format!(
                    "{} suspends into {expected}, not {target}",
                    g.gen().space
                )));
            }
        }
        if let Some(g) = m.as_generator() {
            let w = DLWord { ops: g.ops().into(), gen: g.gen().suspend(1) };
            out.add_assign(&normalize(&w));
        }
    }
    Ok(out)
}
