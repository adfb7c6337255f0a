//! Models of the base space `X`: spheres, `RP^∞` and `ΣCP^∞_+`, together with
//! their iterated suspensions.
//!
//! Each model has at most one reduced homology generator per degree. A
//! generator carries the dual Steenrod action, its coproduct and the square
//! root map (dual to cup squaring).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::binom::binom_mod2;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SpaceKind {
    /// `S^n`, `n >= 1`.
    Sphere(u32),
    /// Infinite real projective space.
    RealProj,
    /// `ΣCP^∞_+ = S^1 ∨ ΣCP^∞`.
    SigmaCPplus,
}

/// A base space together with a number of extra suspensions.
///
/// Spheres are kept normalized: `Σ^k S^n` is stored as `S^{n+k}` with shift 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Space {
    kind: SpaceKind,
    shift: u32,
}

impl Space {
    pub fn sphere(n: u32) -> Result<Space> {
        if n == 0 {
            return Err(Error::Domain("S^0 is not connected".into()));
        }
        Ok(Space { kind: SpaceKind::Sphere(n), shift: 0 })
    }

    pub fn real_proj() -> Space {
        Space { kind: SpaceKind::RealProj, shift: 0 }
    }

    pub fn sigma_cp_plus() -> Space {
        Space { kind: SpaceKind::SigmaCPplus, shift: 0 }
    }

    pub fn new(kind: SpaceKind, shift: u32) -> Result<Space> {
        match kind {
            SpaceKind::Sphere(n) => Space::sphere(n + shift),
            _ => Ok(Space { kind, shift }),
        }
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    /// True when the space is (visibly) a suspension, so that its reduced
    /// coproduct and cup products vanish. Spheres count: `S^n = ΣS^{n-1}`.
    pub fn is_suspension(&self) -> bool {
        match self.kind {
            SpaceKind::Sphere(_) => true,
            // ΣCP_+ is ΣY with Y = CP_+.
            SpaceKind::SigmaCPplus => true,
            SpaceKind::RealProj => self.shift > 0,
        }
    }

    pub fn generator(&self, index: u32) -> Result<Generator> {
        let ok = match self.kind {
            SpaceKind::Sphere(n) => index == n,
            SpaceKind::RealProj => index >= 1,
            SpaceKind::SigmaCPplus => true,
        };
        if ok {
            Ok(Generator { space: *self, index })
        } else {
            Err(Error::UnknownGenerator { name: format!("index {index}"), space: self.to_string() })
        }
    }
}

pub fn suspend_space(space: Space, k: u32) -> Space {
    match space.kind {
        SpaceKind::Sphere(n) => Space { kind: SpaceKind::Sphere(n + k), shift: 0 },
        kind => Space { kind, shift: space.shift + k },
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SpaceKind::Sphere(n) => write!(f, "S{n}"),
            SpaceKind::RealProj => f.write_str("P"),
            SpaceKind::SigmaCPplus => f.write_str("SCP"),
        }?;
        if self.shift > 0 {
            write!(f, "^s{}", self.shift)?;
        }
        Ok(())
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Space> {
        let bad = || Error::Domain(format!("unknown space `{s}` (expected S<n>, P or SCP, optionally ^s<k>)"));
        let (base, shift) = match s.split_once("^s") {
            Some((b, k)) => (b, k.parse::<u32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let kind = match base {
            "P" => SpaceKind::RealProj,
            "SCP" => SpaceKind::SigmaCPplus,
            _ => {
                let n = base.strip_prefix('S').and_then(|n| n.parse::<u32>().ok()).ok_or_else(bad)?;
                SpaceKind::Sphere(n)
            }
        };
        Space::new(kind, shift)
    }
}

/// A basis element of the reduced homology of a space model.
///
/// `index` is the sphere dimension for `S^n`, `m` for `Σ^k a_m` in `RP^∞`, and
/// `m` for `Σ^{k+1} b_m` in `ΣCP_+` (with `b_0` the point class).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub space: Space,
    pub index: u32,
}

impl Generator {
    pub fn degree(&self) -> u32 {
        match self.space.kind {
            SpaceKind::Sphere(n) => n,
            SpaceKind::RealProj => self.index + self.space.shift,
            SpaceKind::SigmaCPplus => 2 * self.index + 1 + self.space.shift,
        }
    }

    /// The image of this generator under `H̃_*X ≅ H̃_{*+k}Σ^kX`.
    pub fn suspend(&self, k: u32) -> Generator {
        let space = suspend_space(self.space, k);
        let index = match self.space.kind {
            SpaceKind::Sphere(n) => n + k,
            _ => self.index,
        };
        Generator { space, index }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.space.kind {
            SpaceKind::Sphere(n) => write!(f, "g{n}"),
            SpaceKind::RealProj => write!(f, "a{}", self.index),
            SpaceKind::SigmaCPplus => write!(f, "c{}", 2 * self.index + 1),
        }?;
        if self.space.shift > 0 {
            write!(f, "^s{}", self.space.shift)?;
        }
        Ok(())
    }
}

/// The additive basis of `H̃_degree X`, in increasing index order.
pub fn gen_basis(space: Space, degree: u32) -> Vec<Generator> {
    let index = match space.kind {
        SpaceKind::Sphere(n) => (degree == n).then_some(n),
        SpaceKind::RealProj => degree.checked_sub(space.shift).filter(|&m| m >= 1),
        SpaceKind::SigmaCPplus => degree
            .checked_sub(space.shift + 1)
            .filter(|d| d % 2 == 0)
            .map(|d| d / 2),
    };
    index.map(|index| Generator { space, index }).into_iter().collect()
}

/// `Sq^r_* g`, dual to `Sq^r` on cohomology. Returns `None` for zero.
pub fn steenrod_down_gen(r: u32, g: Generator) -> Result<Option<Generator>> {
    if r == 0 {
        return Err(Error::Domain("Sq^0_* is the identity; r must be positive".into()));
    }
    Ok(steenrod_down_gen_unchecked(r, g))
}

pub(crate) fn steenrod_down_gen_unchecked(r: u32, g: Generator) -> Option<Generator> {
    let m = g.index as i64;
    let r = r as i64;
    let target = match g.space.kind {
        SpaceKind::Sphere(_) => None,
        // Sq^r t^k = (k choose r) t^{k+r}
        SpaceKind::RealProj => {
            let j = m - r;
            (j >= 1 && binom_mod2(j as u64, r as u64)).then_some(j)
        }
        // Sq^{2s} y^k = (k choose s) y^{k+s}; odd squares vanish on CP.
        SpaceKind::SigmaCPplus => {
            if r % 2 == 1 {
                None
            } else {
                let s = r / 2;
                let j = m - s;
                (j >= 0 && binom_mod2(j as u64, s as u64)).then_some(j)
            }
        }
    };
    target.map(|j| Generator { space: g.space, index: j as u32 })
}

/// Coproduct of a generator as pairs of legs, `None` standing for the unit.
pub fn coproduct_gen(g: Generator) -> Vec<(Option<Generator>, Option<Generator>)> {
    match g.space.kind {
        SpaceKind::RealProj if g.space.shift == 0 => (0..=g.index)
            .map(|i| {
                let leg = |j: u32| (j > 0).then_some(Generator { space: g.space, index: j });
                (leg(i), leg(g.index - i))
            })
            .collect(),
        _ => vec![(Some(g), None), (None, Some(g))],
    }
}

/// The square root map, dual to `x ↦ x^2` on cohomology.
pub fn root_gen(g: Generator) -> Option<Generator> {
    match g.space.kind {
        SpaceKind::RealProj if g.space.shift == 0 && g.index.is_multiple_of(2) => {
            Some(Generator { space: g.space, index: g.index / 2 })
        }
        _ => None,
    }
}

/// Whether every positive dual Steenrod square kills `g`. The duals of the
/// algebra generators `Sq^{2^k}` suffice.
pub fn is_gen_a_annihilated(g: Generator) -> bool {
    let d = g.degree();
    (0..32)
        .map(|k| 1u32 << k)
        .take_while(|&p| p <= d)
        .all(|p| steenrod_down_gen_unchecked(p, g).is_none())
}
