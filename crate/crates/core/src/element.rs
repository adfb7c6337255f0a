//! Elements of the polynomial algebra `H_*QX` and of `H_*QX ⊗ H_*QX`, with
//! GF(2) coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::word::AdmissibleGen;

/// A product of polynomial generators with positive exponents.
///
/// Factors are kept sorted in descending total order, so the derived ordering
/// compares monomials by their largest factor first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    factors: SmallVec<[(AdmissibleGen, u32); 2]>,
}

impl Monomial {
    pub fn unit() -> Monomial {
        Monomial::default()
    }

    pub fn gen(g: AdmissibleGen) -> Monomial {
        Monomial::power(g, 1)
    }

    pub fn power(g: AdmissibleGen, exp: u32) -> Monomial {
        let mut factors = SmallVec::new();
        if exp > 0 {
            factors.push((g, exp));
        }
        Monomial { factors }
    }

    /// Builds a monomial from arbitrary factors, merging repeats.
    pub fn from_factors(factors: impl IntoIterator<Item = (AdmissibleGen, u32)>) -> Monomial {
        factors.into_iter().fold(Monomial::unit(), |m, (g, e)| m.mul(&Monomial::power(g, e)))
    }

    pub fn factors(&self) -> &[(AdmissibleGen, u32)] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(g, e)| g.degree() * e).sum()
    }

    /// `ht(Q^I x) = 2^{l(I)}`, additive over products.
    pub fn height(&self) -> u64 {
        self.factors.iter().map(|(g, e)| g.height() * *e as u64).sum()
    }

    /// A single polynomial generator to the first power.
    pub fn as_generator(&self) -> Option<&AdmissibleGen> {
        match self.factors.as_slice() {
            [(g, 1)] => Some(g),
            _ => None,
        }
    }

    pub fn is_indecomposable(&self) -> bool {
        self.as_generator().is_some()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().cloned());
        Monomial { factors: out }
    }

    /// `m^{2^k}`.
    pub fn frobenius(&self, k: u32) -> Monomial {
        Monomial { factors: self.factors.iter().map(|(g, e)| (g.clone(), e << k)).collect() }
    }

    /// The factors written out as powers `g^{2^j}`, one per set bit of each exponent.
    pub(crate) fn power_pieces(&self) -> Vec<(AdmissibleGen, u32)> {
        let mut out = Vec::new();
        for (g, e) in &self.factors {
            for j in 0..32 {
                if e >> j & 1 == 1 {
                    out.push((g.clone(), j));
                }
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (k, (g, e)) in self.factors.iter().rev().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            match (g.is_bare(), *e) {
                (_, 1) => write!(f, "{g}")?,
                (true, e) => write!(f, "{g}^{e}")?,
                (false, e) => write!(f, "({g})^{e}")?,
            }
        }
        Ok(())
    }
}

/// A GF(2) sum of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Element {
    terms: BTreeSet<Monomial>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn one() -> Element {
        Element::from(Monomial::unit())
    }

    pub fn from_gen(g: AdmissibleGen) -> Element {
        Element::from(Monomial::gen(g))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = &Monomial> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// Adds a single monomial (toggles it, since `m + m = 0`).
    pub fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for m in &other.terms {
            self.toggle(m.clone());
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn mul(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Element {
        self.terms.iter().map(|a| a.mul(m)).collect()
    }

    /// `e^{2^k}`; in characteristic 2 this is additive.
    pub fn frobenius(&self, k: u32) -> Element {
        Element { terms: self.terms.iter().map(|m| m.frobenius(k)).collect() }
    }

    /// The common degree of all terms (`None` for zero).
    pub fn degree(&self) -> Result<Option<u32>> {
        let mut it = self.terms.iter().map(Monomial::degree);
        let Some(first) = it.next() else {
            return Ok(None);
        };
        for d in it {
            if d != first {
                return Err(Error::NonHomogeneous(first, d));
            }
        }
        Ok(Some(first))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree().is_ok()
    }

    /// Single generators to the first power vs everything else.
    pub fn decomposable_split(&self) -> (Element, Element) {
        let (ind, dec): (BTreeSet<_>, BTreeSet<_>) =
            self.terms.iter().cloned().partition(Monomial::is_indecomposable);
        (Element { terms: ind }, Element { terms: dec })
    }

    pub fn indecomposable_part(&self) -> Element {
        self.decomposable_split().0
    }

    pub fn height_split(&self) -> BTreeMap<u64, Element> {
        let mut out: BTreeMap<u64, Element> = BTreeMap::new();
        for m in &self.terms {
            out.entry(m.height()).or_default().toggle(m.clone());
        }
        out
    }

    /// The indecomposable term of maximal total order, if any.
    pub fn leading_generator(&self) -> Option<&AdmissibleGen> {
        self.terms.iter().filter_map(Monomial::as_generator).max()
    }
}

pub fn height(m: &Monomial) -> u64 {
    m.height()
}

impl From<Monomial> for Element {
    fn from(m: Monomial) -> Element {
        Element { terms: BTreeSet::from([m]) }
    }
}

impl FromIterator<Monomial> for Element {
    fn from_iter<T: IntoIterator<Item = Monomial>>(iter: T) -> Element {
        let mut out = Element::zero();
        for m in iter {
            out.toggle(m);
        }
        out
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, m) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// A GF(2) sum of `m ⊗ m'`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeSet<(Monomial, Monomial)>,
}

impl TensorElement {
    pub fn zero() -> TensorElement {
        TensorElement::default()
    }

    pub fn one() -> TensorElement {
        TensorElement::from_pair(Monomial::unit(), Monomial::unit())
    }

    pub fn from_pair(a: Monomial, b: Monomial) -> TensorElement {
        TensorElement { terms: BTreeSet::from([(a, b)]) }
    }

    /// `e ⊗ 1 + 1 ⊗ e`.
    pub fn primitive_image(e: &Element) -> TensorElement {
        let mut out = TensorElement::zero();
        for m in e.terms() {
            out.toggle((m.clone(), Monomial::unit()));
            out.toggle((Monomial::unit(), m.clone()));
        }
        out
    }

    pub fn toggle(&mut self, t: (Monomial, Monomial)) {
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    pub fn add_assign(&mut self, other: &TensorElement) {
        for t in &other.terms {
            self.toggle(t.clone());
        }
    }

    pub fn add_tensor(&mut self, a: &Element, b: &Element) {
        for x in a.terms() {
            for y in b.terms() {
                self.toggle((x.clone(), y.clone()));
            }
        }
    }

    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (a, b) in &self.terms {
            for (c, d) in &other.terms {
                out.toggle((a.mul(c), b.mul(d)));
            }
        }
        out
    }

    pub fn frobenius(&self, k: u32) -> TensorElement {
        TensorElement { terms: self.terms.iter().map(|(a, b)| (a.frobenius(k), b.frobenius(k))).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &(Monomial, Monomial)> {
        self.terms.iter()
    }

    /// Drops the `m ⊗ 1` and `1 ⊗ m` terms.
    pub fn reduced(&self) -> TensorElement {
        TensorElement {
            terms: self.terms.iter().filter(|(a, b)| !a.is_unit() && !b.is_unit()).cloned().collect(),
        }
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (a, b)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{a} ⊗ {b}")?;
        }
        Ok(())
    }
}
