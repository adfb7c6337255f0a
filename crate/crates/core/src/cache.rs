//! On-disk cache of graded monomial bases.
//!
//! Layout (little endian): magic `QHK1`, `u16` version, space descriptor
//! (`u8` kind, `u32` sphere dimension, `u32` shift), `u32` degree, `u32` cap,
//! `u32` count, then `count` length-prefixed monomials, then the SHA-256 of
//! everything before it. A monomial is a `u16` factor count followed by
//! `u8` word length, the operations as `u32`, the generator index and the
//! exponent, each `u32`.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::basis::GradedBasis;
use crate::element::Monomial;
use crate::error::{Error, Result};
use crate::space::{Space, SpaceKind};
use crate::word::{AdmissibleGen, DLWord};

pub const MAGIC: &[u8; 4] = b"QHK1";
pub const VERSION: u16 = 1;
const DIGEST_LEN: usize = 32;

fn space_code(space: Space) -> (u8, u32) {
    match space.kind() {
        SpaceKind::Sphere(n) => (0, n),
        SpaceKind::RealProj => (1, 0),
        SpaceKind::SigmaCPplus => (2, 0),
    }
}

fn space_from_code(kind: u8, n: u32, shift: u32) -> Result<Space> {
    let kind = match kind {
        0 => SpaceKind::Sphere(n),
        1 => SpaceKind::RealProj,
        2 => SpaceKind::SigmaCPplus,
        k => return Err(Error::Cache(format!("unknown space kind {k}"))),
    };
    Space::new(kind, shift)
}

fn encode_monomial(m: &Monomial, out: &mut Vec<u8>) {
    out.extend_from_slice(&(m.factors().len() as u16).to_le_bytes());
    for (g, e) in m.factors() {
        out.push(g.ops().len() as u8);
        for i in g.ops() {
            out.extend_from_slice(&i.to_le_bytes());
        }
        out.extend_from_slice(&g.gen().index.to_le_bytes());
        out.extend_from_slice(&e.to_le_bytes());
    }
}

pub fn encode_basis(basis: &GradedBasis) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    let (kind, n) = space_code(basis.space);
    out.push(kind);
    out.extend_from_slice(&n.to_le_bytes());
    out.extend_from_slice(&basis.space.shift().to_le_bytes());
    out.extend_from_slice(&basis.degree.to_le_bytes());
    out.extend_from_slice(&(basis.max_length as u32).to_le_bytes());
    out.extend_from_slice(&(basis.len() as u32).to_le_bytes());
    let mut buf = Vec::new();
    for m in basis.monomials() {
        buf.clear();
        encode_monomial(m, &mut buf);
        out.extend_from_slice(&(buf.len() as u32).to_le_bytes());
        out.extend_from_slice(&buf);
    }
    let digest = Sha256::digest(&out);
    out.extend_from_slice(digest.as_slice());
    out
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.data.len());
        let end = end.ok_or_else(|| Error::Cache("truncated file".into()))?;
        let s = &self.data[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().expect("2 bytes")))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }
}

fn decode_monomial(bytes: &[u8], space: Space) -> Result<Monomial> {
    let mut r = Reader { data: bytes, pos: 0 };
    let mut factors = Vec::new();
    for _ in 0..r.u16()? {
        let len = r.u8()? as usize;
        let ops = (0..len).map(|_| r.u32()).collect::<Result<Vec<u32>>>()?;
        let x = space.generator(r.u32()?)?;
        let g = AdmissibleGen::new(DLWord::new(ops, x)?)?;
        factors.push((g, r.u32()?));
    }
    if r.pos != bytes.len() {
        return Err(Error::Cache("trailing bytes in a monomial record".into()));
    }
    Ok(Monomial::from_factors(factors))
}

pub fn decode_basis(data: &[u8]) -> Result<GradedBasis> {
    if data.len() < MAGIC.len() + 2 + DIGEST_LEN || &data[..4] != MAGIC {
        return Err(Error::Cache("not a basis cache file".into()));
    }
    let mut r = Reader { data, pos: 4 };
    let version = r.u16()?;
    if version != VERSION {
        return Err(Error::Cache(format!("unsupported version {version}")));
    }
    let (body, digest) = data.split_at(data.len() - DIGEST_LEN);
    if Sha256::digest(body).as_slice() != digest {
        return Err(Error::Cache("checksum mismatch".into()));
    }
    let mut r = Reader { data: body, pos: r.pos };
    let (kind, n, shift) = (r.u8()?, r.u32()?, r.u32()?);
    let space = space_from_code(kind, n, shift)?;
    let degree = r.u32()?;
    let cap = r.u32()? as usize;
    let count = r.u32()?;
    let mut monomials = Vec::new();
    for _ in 0..count {
        let len = r.u32()? as usize;
        monomials.push(decode_monomial(r.take(len)?, space)?);
    }
    if r.pos != body.len() {
        return Err(Error::Cache("trailing bytes".into()));
    }
    Ok(GradedBasis::from_monomials(space, degree, cap, monomials))
}

/// The cache file for one graded piece inside `dir`.
pub fn cache_path(dir: &Path, space: Space, degree: u32, cap: usize) -> PathBuf {
    let name = space.to_string().replace('^', "_");
    dir.join(format!("{name}-d{degree}-l{cap}.qhk"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    /// The file was unusable and has been replaced; the message says why.
    Rebuilt(String),
}

/// Loads the basis from `dir` or computes and stores it.
pub fn load_or_compute(dir: &Path, space: Space, degree: u32, cap: usize) -> Result<(GradedBasis, CacheStatus)> {
    let path = cache_path(dir, space, degree, cap);
    let status = match fs::read(&path) {
        Err(_) => CacheStatus::Miss,
        Ok(bytes) => match decode_basis(&bytes) {
            Ok(b) if b.space == space && b.degree == degree && b.max_length == cap => return Ok((b, CacheStatus::Hit)),
            Ok(_) => CacheStatus::Rebuilt("header does not match the request".into()),
            Err(e) => CacheStatus::Rebuilt(e.to_string()),
        },
    };
    let basis = GradedBasis::new(space, degree, cap);
    fs::create_dir_all(dir).map_err(|e| Error::Cache(e.to_string()))?;
    fs::write(&path, encode_basis(&basis)).map_err(|e| Error::Cache(e.to_string()))?;
    Ok((basis, status))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for space in [Space::sphere(1).unwrap(), Space::real_proj(), "SCP^s2".parse().unwrap()] {
            let b = GradedBasis::new(space, 10, 3);
            let bytes = encode_basis(&b);
            let back = decode_basis(&bytes).unwrap();
            assert_eq!(back.monomials(), b.monomials());
            assert_eq!((back.space, back.degree, back.max_length), (space, 10, 3));
            assert_eq!(encode_basis(&back), bytes);
        }
    }

    #[test]
    fn corrupt_files_are_rejected() {
        let b = GradedBasis::new(Space::real_proj(), 6, 2);
        let bytes = encode_basis(&b);
        let mut bad_version = bytes.clone();
        bad_version[4] = 9;
        assert!(matches!(decode_basis(&bad_version), Err(Error::Cache(m)) if m.contains("version")));
        let mut flipped = bytes.clone();
        let mid = bytes.len() / 2;
        flipped[mid] ^= 1;
        assert!(matches!(decode_basis(&flipped), Err(Error::Cache(m)) if m.contains("checksum")));
        assert!(decode_basis(b"nope").is_err());
    }

    #[test]
    fn directory_cache() {
        let dir = tempfile::tempdir().unwrap();
        let s1 = Space::sphere(1).unwrap();
        let (b1, st1) = load_or_compute(dir.path(), s1, 10, 3).unwrap();
        assert_eq!(st1, CacheStatus::Miss);
        let (b2, st2) = load_or_compute(dir.path(), s1, 10, 3).unwrap();
        assert_eq!(st2, CacheStatus::Hit);
        assert_eq!(b1.monomials(), b2.monomials());
        let path = cache_path(dir.path(), s1, 10, 3);
        let mut bytes = fs::read(&path).unwrap();
        let last = bytes.len() - 1;
        bytes[last] ^= 0xff;
        fs::write(&path, bytes).unwrap();
        let (b3, st3) = load_or_compute(dir.path(), s1, 10, 3).unwrap();
        assert!(matches!(st3, CacheStatus::Rebuilt(_)));
        assert_eq!(b3.monomials(), b1.monomials());
    }
}
