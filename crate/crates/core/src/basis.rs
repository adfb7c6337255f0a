//! Monomial bases of the graded pieces of `H_*QX`.

use std::collections::HashMap;

use crate::element::{Element, Monomial};
use crate::error::{Error, Result};
use crate::space::Space;
use crate::word::{enumerate_admissible, AdmissibleGen};

/// Every polynomial generator of degree `1..=degree` with word length at most
/// `max_length`, in descending total order.
pub fn generators_up_to(space: Space, degree: u32, max_length: usize) -> Vec<AdmissibleGen> {
    let mut out: Vec<AdmissibleGen> =
        (1..=degree).flat_map(|d| enumerate_admissible(space, d, max_length)).collect();
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// All monomials of the given degree whose factors have word length at most
/// `max_length`, in descending canonical order.
pub fn graded_monomial_basis(space: Space, degree: u32, max_length: usize) -> Vec<Monomial> {
    fn grow(
        gens: &[AdmissibleGen],
        from: usize,
        left: u32,
        acc: &mut Vec<(AdmissibleGen, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if left == 0 {
            out.push(Monomial::from_factors(acc.iter().cloned()));
            return;
        }
        for (i, g) in gens.iter().enumerate().skip(from) {
            let d = g.degree();
            if d > left {
                continue;
            }
            for e in 1..=left / d {
                acc.push((g.clone(), e));
                grow(gens, i + 1, left - e * d, acc, out);
                acc.pop();
            }
        }
    }

    if degree == 0 {
        return vec![Monomial::unit()];
    }
    let gens = generators_up_to(space, degree, max_length);
    let mut out = Vec::new();
    grow(&gens, 0, degree, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// A degree-`d` monomial basis with a reverse index.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    pub space: Space,
    pub degree: u32,
    pub max_length: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedBasis {
    pub fn new(space: Space, degree: u32, max_length: usize) -> GradedBasis {
        GradedBasis::from_monomials(space, degree, max_length, graded_monomial_basis(space, degree, max_length))
    }

    pub fn from_monomials(space: Space, degree: u32, max_length: usize, monomials: Vec<Monomial>) -> GradedBasis {
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        GradedBasis { space, degree, max_length, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Sorted coordinates of `e`; fails if a term lies outside the basis.
    pub fn coords(&self, e: &Element) -> Result<Vec<usize>> {
        let mut out = e
            .terms()
            .map(|m| self.position(m).ok_or_else(|| Error::Domain(format!("{m} is not in the basis"))))
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        Ok(out)
    }

    pub fn element(&self, coords: impl IntoIterator<Item = usize>) -> Element {
        coords.into_iter().map(|i| self.monomials[i].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bases() {
        let p = Space::real_proj();
        let b = graded_monomial_basis(p, 3, 3);
        let shown: Vec<String> = b.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["Q^2 a1", "a3", "a1*a2", "a1^3"]);
        let s1 = Space::sphere(1).unwrap();
        assert_eq!(graded_monomial_basis(s1, 1, 3).len(), 1);
        assert_eq!(graded_monomial_basis(s1, 0, 3), vec![Monomial::unit()]);
    }

    #[test]
    fn counts_match_generating_function() {
        // prod_g 1/(1 - t^{deg g}), truncated.
        for space in [Space::sphere(1).unwrap(), Space::real_proj(), Space::sigma_cp_plus()] {
            let top = 14u32;
            let gens = generators_up_to(space, top, 2);
            let mut series = vec![0u64; top as usize + 1];
            series[0] = 1;
            for g in &gens {
                let d = g.degree() as usize;
                for k in d..=top as usize {
                    series[k] += series[k - d];
                }
            }
            for d in 0..=top {
                assert_eq!(graded_monomial_basis(space, d, 2).len() as u64, series[d as usize], "{space} {d}");
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let b = GradedBasis::new(Space::real_proj(), 6, 2);
        let e = b.element([0, 3, 5]);
        assert_eq!(b.coords(&e).unwrap(), vec![0, 3, 5]);
        assert!(b.coords(&Element::one()).is_err());
    }
}
