//! Dyer-Lashof words `Q^{i_1} ... Q^{i_s} x` on space generators.
//!
//! A word is admissible when `i_j <= 2 i_{j+1}`; admissible words of positive
//! excess are the polynomial generators of `H_*QX`. The lower-index form
//! records the excess of every suffix and drives the total order.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::space::{gen_basis, Generator, Space};

pub type Ops = SmallVec<[u32; 4]>;

/// A raw operation sequence applied to a generator. Not necessarily admissible.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DLWord {
    pub ops: Ops,
    pub gen: Generator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Profile {
    pub excess: i64,
    pub length: usize,
    pub degree: u32,
}

/// Suffix excesses `e_j = ex(Q^{I_j} x)`, so that `Q^I x = Q_E x`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LowerSeq(pub Vec<i64>);

pub fn is_admissible(ops: &[u32]) -> bool {
    ops.windows(2).all(|w| w[0] <= 2 * w[1])
}

/// `i_1 - (i_2 + ... + i_s)`, the excess of a bare operation sequence.
pub fn seq_excess(ops: &[u32]) -> i64 {
    match ops.split_first() {
        None => 0,
        Some((first, rest)) => *first as i64 - rest.iter().map(|&i| i as i64).sum::<i64>(),
    }
}

impl DLWord {
    pub fn new(ops: impl Into<Ops>, gen: Generator) -> Result<DLWord> {
        let ops = ops.into();
        if ops.contains(&0) {
            return Err(Error::Domain("operation indices must be positive".into()));
        }
        Ok(DLWord { ops, gen })
    }

    pub fn bare(gen: Generator) -> DLWord {
        DLWord { ops: Ops::new(), gen }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.ops.iter().sum::<u32>() + self.gen.degree()
    }

    pub fn excess(&self) -> i64 {
        match self.ops.split_first() {
            None => self.gen.degree() as i64,
            Some((first, rest)) => {
                *first as i64 - rest.iter().map(|&i| i as i64).sum::<i64>() - self.gen.degree() as i64
            }
        }
    }

    pub fn profile(&self) -> Profile {
        Profile { excess: self.excess(), length: self.len(), degree: self.degree() }
    }

    pub fn is_admissible(&self) -> bool {
        is_admissible(&self.ops)
    }

    pub fn to_lower(&self) -> LowerSeq {
        let mut below = self.gen.degree() as i64;
        let mut e = vec![0; self.ops.len()];
        for (j, &i) in self.ops.iter().enumerate().rev() {
            e[j] = i as i64 - below;
            below += i as i64;
        }
        LowerSeq(e)
    }

    pub fn from_lower(lower: &LowerSeq, gen: Generator) -> Result<DLWord> {
        let mut below = gen.degree() as i64;
        let mut ops = Ops::from_elem(0, lower.0.len());
        for (j, &e) in lower.0.iter().enumerate().rev() {
            let i = e + below;
            if i <= 0 || i > u32::MAX as i64 {
                return Err(Error::Domain(format!("lower sequence {lower} gives index {i}")));
            }
            ops[j] = i as u32;
            below += i;
        }
        Ok(DLWord { ops, gen })
    }

    /// The suffix `Q^{I_j} x` (1-based `j`; `j = s + 1` gives the bare generator).
    pub fn suffix(&self, j: usize) -> DLWord {
        DLWord { ops: self.ops[j - 1..].into(), gen: self.gen }
    }

    /// `Q_E x` printed as `Q_[e1,...,es] x`.
    pub fn lower_string(&self) -> String {
        format!("Q_{} {}", self.to_lower(), self.gen)
    }
}

pub fn profile(w: &DLWord) -> Profile {
    w.profile()
}

/// Length first, then lexicographic on the lower sequence, then generator data.
pub fn total_order_cmp(u: &DLWord, v: &DLWord) -> Ordering {
    u.len()
        .cmp(&v.len())
        .then_with(|| u.to_lower().cmp(&v.to_lower()))
        .then_with(|| u.gen.degree().cmp(&v.gen.degree()))
        .then_with(|| u.gen.index.cmp(&v.gen.index))
        .then_with(|| u.gen.space.cmp(&v.gen.space))
}

impl Ord for DLWord {
    fn cmp(&self, other: &Self) -> Ordering {
        total_order_cmp(self, other)
    }
}

impl PartialOrd for DLWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DLWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.ops {
            write!(f, "Q^{i} ")?;
        }
        write!(f, "{}", self.gen)
    }
}

impl fmt::Display for LowerSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

/// A polynomial generator `Q^I x` of `H_*QX`: admissible with positive excess.
/// The empty word stands for the bare space generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AdmissibleGen(DLWord);

impl AdmissibleGen {
    pub fn new(word: DLWord) -> Result<AdmissibleGen> {
        if !word.is_admissible() {
            return Err(Error::Domain(format!("{word} is not admissible")));
        }
        if word.excess() <= 0 {
            return Err(Error::Domain(format!("{word} has excess {} <= 0", word.excess())));
        }
        Ok(AdmissibleGen(word))
    }

    pub fn bare(gen: Generator) -> AdmissibleGen {
        AdmissibleGen(DLWord::bare(gen))
    }

    pub(crate) fn new_unchecked(word: DLWord) -> AdmissibleGen {
        debug_assert!(word.is_admissible() && word.excess() > 0, "{word}");
        AdmissibleGen(word)
    }

    pub fn word(&self) -> &DLWord {
        &self.0
    }

    pub fn ops(&self) -> &[u32] {
        &self.0.ops
    }

    pub fn gen(&self) -> Generator {
        self.0.gen
    }

    /// Word length; the bare generator has length 0 and is never "empty".
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_bare(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.degree()
    }

    pub fn excess(&self) -> i64 {
        self.0.excess()
    }

    /// `2^{l(I)}`.
    pub fn height(&self) -> u64 {
        1 << self.len()
    }

    /// The generator `Q^{I_2} x` obtained by dropping the outermost operation.
    pub fn inner(&self) -> Option<AdmissibleGen> {
        (!self.is_bare()).then(|| AdmissibleGen(self.0.suffix(2)))
    }
}

impl fmt::Display for AdmissibleGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// All polynomial generators of the given degree with word length at most
/// `max_length`, in descending total order.
pub fn enumerate_admissible(space: Space, degree: u32, max_length: usize) -> Vec<AdmissibleGen> {
    // deg(Q_E x) = 2^s dim x + sum_j 2^{j-1} e_j with 1 <= e_1 <= ... <= e_s.
    fn grow(
        x: Generator,
        lower: &mut Vec<i64>,
        deg: u32,
        target: u32,
        max_length: usize,
        out: &mut Vec<AdmissibleGen>,
    ) {
        if deg == target {
            let w = DLWord::from_lower(&LowerSeq(lower.clone()), x).expect("positive excess");
            out.push(AdmissibleGen(w));
        }
        if lower.len() == max_length {
            return;
        }
        let cap = lower.first().copied().unwrap_or(i64::MAX);
        let mut e = 1i64;
        while e <= cap {
            let next = 2 * deg as u64 + e as u64;
            if next > target as u64 {
                break;
            }
            lower.insert(0, e);
            grow(x, lower, next as u32, target, max_length, out);
            lower.remove(0);
            e += 1;
        }
    }

    let mut out = Vec::new();
    for d in 1..=degree {
        for x in gen_basis(space, d) {
            grow(x, &mut Vec::new(), d, degree, max_length, &mut out);
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}
