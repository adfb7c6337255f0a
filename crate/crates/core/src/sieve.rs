//! Graded subspaces of `H_*QX`: `A`-annihilated classes, primitives and their
//! intersection, the upper bound for spherical classes. Also the closed-form
//! annihilation criterion for polynomial generators.

use crate::basis::GradedBasis;
use crate::binom::rho;
use crate::element::{Element, Monomial};
use crate::error::Result;
use crate::hopf::reduced_coproduct;
use crate::linalg::{echelonize, span_members, xor_sorted, SparseKernel};
use crate::space::{gen_basis, is_gen_a_annihilated, Space};
use crate::steenrod::{powers_of_two, sq_down_elem, sq_down_monomial};
use crate::word::AdmissibleGen;

/// The largest word length of a polynomial generator in the given degree.
/// A cap at least this large makes a graded piece exact.
pub fn max_reachable_length(space: Space, degree: u32) -> usize {
    let Some(d_min) = (1..=degree).find(|&d| !gen_basis(space, d).is_empty()) else {
        return 0;
    };
    // The shortest words of length s sit in degree 2^s d_min + 2^s - 1.
    let mut s = 0usize;
    while s < 31 && ((d_min as u64 + 1) << (s + 1)) - 1 <= degree as u64 {
        s += 1;
    }
    s
}

/// A subspace of one graded piece, spanned by reduced echelon vectors in the
/// coordinates of `basis`.
#[derive(Debug, Clone)]
pub struct Subspace {
    pub basis: GradedBasis,
    pub vectors: Vec<Vec<usize>>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn element(&self, coords: &[usize]) -> Element {
        self.basis.element(coords.iter().copied())
    }

    pub fn elements(&self) -> Vec<Element> {
        self.vectors.iter().map(|v| self.element(v)).collect()
    }

    /// The first `limit` nonzero members in the order of [`span_members`].
    pub fn members(&self, limit: usize) -> Vec<Element> {
        span_members(&self.vectors, limit).iter().map(|v| self.element(v)).collect()
    }

    pub fn contains(&self, e: &Element) -> Result<bool> {
        let mut c = self.basis.coords(e)?;
        for v in &self.vectors {
            if c.binary_search(&v[0]).is_ok() {
                c = xor_sorted(&c, v);
            }
        }
        Ok(c.is_empty())
    }
}

fn sq_stack_image(e: &Element, d: u32) -> Vec<(u32, Monomial)> {
    let mut out = Vec::new();
    for p in powers_of_two(d) {
        out.extend(sq_down_elem(p, e).terms().map(|m| (p, m.clone())));
    }
    out
}

fn sq_stack_image_monomial(m: &Monomial, d: u32) -> Vec<(u32, Monomial)> {
    let mut out = Vec::new();
    for p in powers_of_two(d) {
        out.extend(sq_down_monomial(p, m).terms().map(|t| (p, t.clone())));
    }
    out
}

/// Kernel of the stacked maps `Sq^{2^k}_*` on a graded piece.
pub fn annihilated_in(basis: &GradedBasis) -> Vec<Vec<usize>> {
    let mut k = SparseKernel::new();
    for (i, m) in basis.monomials().iter().enumerate() {
        k.push(sq_stack_image_monomial(m, basis.degree), vec![i]);
    }
    k.into_kernel()
}

/// Kernel of the reduced coproduct on a graded piece.
pub fn primitive_in(basis: &GradedBasis) -> Vec<Vec<usize>> {
    let mut k = SparseKernel::new();
    for (i, m) in basis.monomials().iter().enumerate() {
        let image: Vec<(Monomial, Monomial)> =
            reduced_coproduct(&Element::from(m.clone())).terms().cloned().collect();
        k.push(image, vec![i]);
    }
    k.into_kernel()
}

/// `A`-annihilated primitives: the stacked squares restricted to the
/// primitive subspace, which they preserve.
pub fn spherical_in(basis: &GradedBasis) -> Vec<Vec<usize>> {
    let prims = primitive_in(basis);
    let mut k = SparseKernel::new();
    for (i, v) in prims.iter().enumerate() {
        let e = basis.element(v.iter().copied());
        k.push(sq_stack_image(&e, basis.degree), vec![i]);
    }
    let combos = k.into_kernel();
    echelonize(
        combos
            .iter()
            .map(|c| c.iter().fold(Vec::new(), |acc, &i| xor_sorted(&acc, &prims[i])))
            .collect(),
    )
}

fn subspace(space: Space, degree: u32, max_len: usize, f: fn(&GradedBasis) -> Vec<Vec<usize>>) -> Subspace {
    let basis = GradedBasis::new(space, degree, max_len);
    let vectors = f(&basis);
    Subspace { basis, vectors }
}

pub fn annihilated_subspace(space: Space, degree: u32, max_len: usize) -> Subspace {
    subspace(space, degree, max_len, annihilated_in)
}

pub fn primitive_subspace(space: Space, degree: u32, max_len: usize) -> Subspace {
    subspace(space, degree, max_len, primitive_in)
}

pub fn spherical_candidates(space: Space, degree: u32, max_len: usize) -> Subspace {
    subspace(space, degree, max_len, spherical_in)
}

/// The closed-form criterion for `Q^I x` to be `A`-annihilated: `x` is,
/// `ex(Q^I x) < 2^{rho(i_1)}` and `0 <= 2 i_{j+1} - i_j < 2^{rho(i_{j+1})}`.
pub fn theorem1_predicate(g: &AdmissibleGen) -> bool {
    if !is_gen_a_annihilated(g.gen()) {
        return false;
    }
    let ops = g.ops();
    let Some(&i1) = ops.first() else {
        return true;
    };
    let pow = |i: u32| 1i64 << rho(i as u64).expect("positive index");
    if g.excess() >= pow(i1) {
        return false;
    }
    ops.windows(2).all(|w| {
        let gap = 2 * w[1] as i64 - w[0] as i64;
        0 <= gap && gap < pow(w[1])
    })
}
