//! Exhaustive verifiers for the annihilation criterion, the leading-term
//! structure of `A`-annihilated classes, the odd-entry structure of
//! `A`-annihilated primitives and the square root identities.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::basis::GradedBasis;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::hopf::{square_root, suspend};
use crate::linalg::span_members;
use crate::sieve::{annihilated_in, primitive_in, spherical_in, theorem1_predicate};
use crate::space::{suspend_space, Space, SpaceKind};
use crate::steenrod::is_a_annihilated;
use crate::word::{enumerate_admissible, AdmissibleGen, DLWord};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub degrees: Vec<u32>,
    pub max_length: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_vectors: Option<usize>,
}

/// Outcome of a verifier run. It passes iff `failures` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub theorem: String,
    pub space: String,
    pub bounds: Bounds,
    pub checked: u64,
    pub failures: Vec<String>,
    /// Classes outside the hypotheses that violate the conclusion anyway.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub excluded: Vec<String>,
    /// Classes skipped because a hypothesis fails.
    #[serde(default)]
    pub skipped: u64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    pub millis: u64,
}

impl VerifyReport {
    fn new(theorem: &str, space: Space, bounds: Bounds) -> VerifyReport {
        VerifyReport {
            theorem: theorem.into(),
            space: space.to_string(),
            bounds,
            checked: 0,
            failures: Vec::new(),
            excluded: Vec::new(),
            skipped: 0,
            notes: Vec::new(),
            millis: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn finish(mut self, start: Instant) -> VerifyReport {
        self.millis = start.elapsed().as_millis() as u64;
        self
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }
}

fn cap_note(space: Space, degrees: &[u32], max_length: usize) -> Option<String> {
    let short: Vec<u32> = degrees
        .iter()
        .copied()
        .filter(|&d| crate::sieve::max_reachable_length(space, d) > max_length)
        .collect();
    (!short.is_empty()).then(|| {
        format!("word length cap {max_length} is below the reachable length in degrees {short:?}; results there cover the capped subalgebra only")
    })
}

/// The closed-form criterion against a direct computation on every
/// generator, plus the absence of even entries in criterion-true words.
pub fn verify_theorem1(space: Space, max_degree: u32, max_length: usize) -> VerifyReport {
    let start = Instant::now();
    let degrees: Vec<u32> = (1..=max_degree).collect();
    let mut r = VerifyReport::new("1", space, Bounds { degrees: degrees.clone(), max_length, max_vectors: None });
    r.notes.extend(cap_note(space, &degrees, max_length));
    for d in degrees {
        for g in enumerate_admissible(space, d, max_length) {
            r.checked += 1;
            let predicted = theorem1_predicate(&g);
            let actual = is_a_annihilated(&Element::from_gen(g.clone())).expect("homogeneous");
            if predicted != actual {
                r.fail(format!("{g}: criterion says {predicted}, direct computation says {actual}"));
            }
            if predicted && g.ops().iter().any(|i| i % 2 == 0) {
                r.fail(format!("{g}: criterion holds but the word has an even entry"));
            }
        }
    }
    r.finish(start)
}

/// Searches `j <= s + 1` and `n >= 1` with `Q^{I_j} Sigma^n x` an
/// `A`-annihilated generator of positive excess.
pub fn suspension_witness(g: &AdmissibleGen) -> Option<(usize, u32)> {
    let s = g.len();
    for j in 1..=s + 1 {
        let w = g.word().suffix(j);
        let top = if w.ops.is_empty() { 1 } else { (w.excess() - 1).max(0) as u32 };
        for n in 1..=top {
            let lifted = DLWord { ops: w.ops.clone(), gen: w.gen.suspend(n) };
            let Ok(h) = AdmissibleGen::new(lifted) else {
                continue;
            };
            if is_a_annihilated(&Element::from_gen(h)).expect("homogeneous") {
                return Some((j, n));
            }
        }
    }
    None
}

fn check_theorem2_space(space: Space) -> Result<()> {
    let ok = space.shift() == 0
        && matches!(space.kind(), SpaceKind::Sphere(1) | SpaceKind::RealProj | SpaceKind::SigmaCPplus);
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!("the leading-term verifier needs S1, P or SCP, not {space}")))
    }
}

/// For every enumerated `A`-annihilated class with `sigma_* xi != 0`, the
/// leading indecomposable term of each height stratum has a suspension witness.
pub fn verify_theorem2(space: Space, max_degree: u32, max_length: usize, max_vectors: usize) -> Result<VerifyReport> {
    check_theorem2_space(space)?;
    let start = Instant::now();
    let degrees: Vec<u32> = (1..=max_degree).collect();
    let mut r = VerifyReport::new(
        "2",
        space,
        Bounds { degrees: degrees.clone(), max_length, max_vectors: Some(max_vectors) },
    );
    r.notes.extend(cap_note(space, &degrees, max_length));
    r.notes.push("witness search: j <= s+1 (j = s+1 is the bare generator), 1 <= n <= ex(Q^{I_j} x) - 1 for nonempty suffixes, n = 1 otherwise".into());
    r.notes.push("leading terms are taken per height stratum".into());
    let target = suspend_space(space, 1);
    for d in degrees {
        let basis = GradedBasis::new(space, d, max_length);
        let ann = annihilated_in(&basis);
        for v in span_members(&ann, max_vectors) {
            let xi = basis.element(v);
            if suspend(&xi, target)?.is_zero() {
                r.skipped += 1;
                continue;
            }
            r.checked += 1;
            for (h, part) in xi.height_split() {
                let Some(lead) = part.leading_generator() else {
                    continue;
                };
                if suspension_witness(lead).is_none() {
                    r.fail(format!("{xi}: height {h} leading term {lead} has no suspension witness"));
                }
            }
        }
    }
    Ok(r.finish(start))
}

fn all_odd(g: &AdmissibleGen) -> bool {
    g.ops().iter().all(|i| i % 2 == 1)
}

/// Odd-entry structure of `A`-annihilated primitives in the given degrees.
/// Odd-degree classes of a space that is not a suspension lie outside the
/// hypotheses; violations there are listed as exclusions.
pub fn verify_theorem3(space: Space, degrees: &[u32], max_length: usize, max_vectors: usize) -> VerifyReport {
    let start = Instant::now();
    let mut r = VerifyReport::new(
        "3",
        space,
        Bounds { degrees: degrees.to_vec(), max_length, max_vectors: Some(max_vectors) },
    );
    r.notes.extend(cap_note(space, degrees, max_length));
    for &d in degrees {
        let basis = GradedBasis::new(space, d, max_length);
        let cands = spherical_in(&basis);
        for v in span_members(&cands, max_vectors) {
            let xi = basis.element(v);
            r.checked += 1;
            let (ind, dec) = xi.decomposable_split();
            let gens: Vec<&AdmissibleGen> = ind.terms().filter_map(|m| m.as_generator()).collect();
            // Terms of excess >= 2 start with an odd operation.
            for g in &gens {
                if !g.is_bare() && g.excess() >= 2 && g.ops()[0] % 2 == 0 {
                    r.fail(format!("{xi}: term {g} has excess {} and an even first entry", g.excess()));
                }
            }
            let mut problems: Vec<String> =
                gens.iter().filter(|g| !all_odd(g)).map(|g| format!("term {g} has an even entry")).collect();
            if d % 2 == 1 && !dec.is_zero() {
                problems.push(format!("decomposable part {dec} is nonzero in odd degree"));
            }
            if problems.is_empty() {
                continue;
            }
            let msg = format!("{xi}: {}", problems.join("; "));
            if d % 2 == 1 && !space.is_suspension() {
                r.excluded.push(msg);
            } else {
                r.fail(msg);
            }
        }
    }
    r.finish(start)
}

/// Square root identities: the kernel hypothesis on pairs of generators over
/// distinct space classes, odd entries in the kernel, and indecomposable
/// parts of primitives in the kernel.
pub fn verify_square_root(space: Space, max_degree: u32, max_length: usize) -> VerifyReport {
    let start = Instant::now();
    let degrees: Vec<u32> = (1..=max_degree).collect();
    let mut r = VerifyReport::new("root", space, Bounds { degrees: degrees.clone(), max_length, max_vectors: None });
    r.notes.extend(cap_note(space, &degrees, max_length));
    let root = |e: &Element| square_root(e).expect("homogeneous");
    for d in degrees {
        let gens = enumerate_admissible(space, d, max_length);
        let roots: Vec<Element> = gens.iter().map(|g| root(&Element::from_gen(g.clone()))).collect();
        for (i, g) in gens.iter().enumerate() {
            r.checked += 1;
            if !all_even(g) && !roots[i].is_zero() {
                r.fail(format!("{g} has an odd entry but r = {}", roots[i]));
            }
            for (h, rh) in gens.iter().zip(&roots).skip(i + 1) {
                if g.gen() == h.gen() {
                    continue;
                }
                let both = roots[i].is_zero() && rh.is_zero();
                let sum_zero = roots[i].add(rh).is_zero();
                if both != sum_zero {
                    r.fail(format!("{g} + {h}: r of the sum vanishes without both summands vanishing"));
                }
            }
        }
        let basis = GradedBasis::new(space, d, max_length);
        for v in primitive_in(&basis) {
            let e = basis.element(v);
            r.checked += 1;
            let ind = e.indecomposable_part();
            let ri = root(&ind);
            if !ri.is_zero() {
                r.fail(format!("primitive {e}: r of its indecomposable part is {ri}"));
            }
        }
    }
    r.finish(start)
}

fn all_even(g: &AdmissibleGen) -> bool {
    g.ops().iter().all(|i| i % 2 == 0)
}
