//! JSON interchange documents for cochains and algebra elements.
//!
//! Cochain keys are lists of exponent vectors (group elements), never
//! `t`-monomials. Emitted documents list entries in ascending key order.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElem, MonomialSig};
use crate::cochain::{correspond_back, Cochain, CochainKind, ICochain, NormalizedCochain};
use crate::error::{Error, Result};
use crate::group_ring::{CoeffRing, GroupContext};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindTag {
    Normalized,
    Icochain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingTag {
    Z,
    Fp,
}

impl From<CoeffRing> for RingTag {
    fn from(r: CoeffRing) -> Self {
        match r {
            CoeffRing::Integers => RingTag::Z,
            CoeffRing::ModP => RingTag::Fp,
        }
    }
}

impl From<RingTag> for CoeffRing {
    fn from(r: RingTag) -> Self {
        match r {
            RingTag::Z => CoeffRing::Integers,
            RingTag::Fp => CoeffRing::ModP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainEntry {
    pub key: Vec<Vec<u32>>,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainDocument {
    pub schema_version: String,
    pub p: u32,
    pub r: usize,
    pub n: usize,
    pub kind: KindTag,
    pub coeff_ring: RingTag,
    pub entries: Vec<CochainEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraEntry {
    pub signature: Vec<u32>,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub schema_version: String,
    pub p: u32,
    pub r: usize,
    pub entries: Vec<AlgebraEntry>,
}

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

fn check_version(v: &str) -> Result<()> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(doc_err(format!("unsupported schema_version {v:?}, expected {SCHEMA_VERSION:?}")))
    }
}

fn context(p: u32, r: usize) -> Result<GroupContext> {
    GroupContext::new(p, r).map_err(|e| doc_err(e.to_string()))
}

fn to_pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

impl CochainDocument {
    pub fn from_cochain<K: CochainKind>(f: &Cochain<K>) -> Self {
        let kind = if K::NAME == "normalized" { KindTag::Normalized } else { KindTag::Icochain };
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            p: f.ctx().p(),
            r: f.ctx().r(),
            n: f.degree(),
            kind,
            coeff_ring: f.ring().into(),
            entries: f
                .entries()
                .map(|(tuple, value)| CochainEntry {
                    key: tuple.iter().map(|u| u.exponents().to_vec()).collect(),
                    value,
                })
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| doc_err(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        to_pretty(self)
    }

    /// Validates every entry and returns the values as an I-cochain; the
    /// document's `kind` is left for the caller to interpret.
    pub fn to_icochain(&self) -> Result<ICochain> {
        check_version(&self.schema_version)?;
        let ctx = context(self.p, self.r)?;
        let ring: CoeffRing = self.coeff_ring.into();
        let mut seen = BTreeSet::new();
        let mut values = Vec::with_capacity(self.entries.len());
        for (idx, e) in self.entries.iter().enumerate() {
            let bad = |msg: String| doc_err(format!("entry {idx}: {msg}"));
            if e.key.len() != self.n {
                return Err(bad(format!("key has {} elements, expected {}", e.key.len(), self.n)));
            }
            let mut tuple = Vec::with_capacity(self.n);
            for v in &e.key {
                let u = ctx.elem(v.clone()).map_err(|err| bad(err.to_string()))?;
                if u.is_identity() {
                    return Err(bad("key contains the identity element".into()));
                }
                tuple.push(u);
            }
            if !seen.insert(e.key.clone()) {
                return Err(bad("duplicate key".into()));
            }
            if e.value == 0 {
                return Err(bad("zero value".into()));
            }
            if ring == CoeffRing::ModP && !(0..self.p as i64).contains(&e.value) {
                return Err(bad(format!("value {} not reduced into [0, {})", e.value, self.p)));
            }
            values.push((tuple, e.value));
        }
        ICochain::from_values(&ctx, self.n, ring, values)
            .map_err(|e| doc_err(e.to_string()))
    }

    pub fn to_normalized(&self) -> Result<NormalizedCochain> {
        Ok(correspond_back(&self.to_icochain()?))
    }
}

/// Emits `f` as a document of the given kind.
pub fn cochain_document(f: &ICochain, kind: KindTag) -> CochainDocument {
    match kind {
        KindTag::Icochain => CochainDocument::from_cochain(f),
        KindTag::Normalized => CochainDocument::from_cochain(&correspond_back(f)),
    }
}

impl AlgebraDocument {
    pub fn from_algebra(e: &AlgebraElem) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            p: e.ctx().p(),
            r: e.ctx().r(),
            entries: e
                .terms()
                .iter()
                .map(|(sig, &coeff)| AlgebraEntry { signature: sig.0.clone(), coeff })
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| doc_err(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        to_pretty(self)
    }

    pub fn to_algebra(&self) -> Result<AlgebraElem> {
        check_version(&self.schema_version)?;
        let ctx = context(self.p, self.r)?;
        let mut seen = BTreeSet::new();
        let mut out = AlgebraElem::zero(&ctx);
        for (idx, e) in self.entries.iter().enumerate() {
            let bad = |msg: String| doc_err(format!("entry {idx}: {msg}"));
            if e.signature.len() != self.r {
                return Err(bad(format!(
                    "signature has {} entries, expected {}",
                    e.signature.len(),
                    self.r
                )));
            }
            if !(1..self.p as i64).contains(&e.coeff) {
                return Err(bad(format!("coeff {} not in [1, {})", e.coeff, self.p)));
            }
            if !seen.insert(e.signature.clone()) {
                return Err(bad("duplicate signature".into()));
            }
            out.add_term(MonomialSig(e.signature.clone()), e.coeff)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{h_gen, z_gen, z_tilde_gen};

    #[test]
    fn cochain_round_trip() {
        let ctx = GroupContext::new(3, 2).unwrap();
        let h = h_gen(&ctx, 2).unwrap();
        let doc = CochainDocument::from_cochain(&h);
        assert_eq!(doc.kind, KindTag::Icochain);
        let text = doc.to_json();
        let back = CochainDocument::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_icochain().unwrap(), h);
        assert_eq!(back.to_json(), text);

        let zt = z_tilde_gen(&ctx, 1).unwrap();
        let doc = CochainDocument::from_cochain(&zt);
        assert_eq!((doc.kind, doc.coeff_ring), (KindTag::Normalized, RingTag::Z));
        assert_eq!(doc.to_normalized().unwrap(), zt);
    }

    #[test]
    fn validation_names_the_entry() {
        let ctx = GroupContext::new(2, 1).unwrap();
        let mut doc = CochainDocument::from_cochain(&z_gen(&ctx, 1).unwrap());
        doc.entries.push(CochainEntry { key: vec![vec![0], vec![1]], value: 1 });
        let err = doc.to_icochain().unwrap_err().to_string();
        assert!(err.contains("entry 1") && err.contains("identity"), "{err}");

        doc.entries[1] = CochainEntry { key: vec![vec![1], vec![1]], value: 1 };
        assert!(doc.to_icochain().unwrap_err().to_string().contains("duplicate"));
        doc.entries[1] = CochainEntry { key: vec![vec![2], vec![1]], value: 1 };
        assert!(doc.to_icochain().unwrap_err().to_string().contains("entry 1"));
        doc.entries.truncate(1);
        doc.entries[0].value = 3;
        assert!(doc.to_icochain().unwrap_err().to_string().contains("not reduced"));
        doc.entries[0].value = 0;
        assert!(doc.to_icochain().unwrap_err().to_string().contains("zero value"));
        doc.entries[0] = CochainEntry { key: vec![vec![1]], value: 1 };
        assert!(doc.to_icochain().unwrap_err().to_string().contains("expected 2"));
        doc.schema_version = "2".into();
        assert!(doc.to_icochain().is_err());
        assert!(CochainDocument::parse("{\"p\": 2}").is_err());
    }

    #[test]
    fn algebra_round_trip_and_validation() {
        let ctx = GroupContext::new(5, 2).unwrap();
        let e = AlgebraElem::from_terms(
            &ctx,
            [(MonomialSig(vec![2, 1]), 3), (MonomialSig(vec![0, 3]), 4)],
        )
        .unwrap();
        let doc = AlgebraDocument::from_algebra(&e);
        let back = AlgebraDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(back.to_algebra().unwrap(), e);
        let mut bad = doc.clone();
        bad.entries[1].coeff = 5;
        assert!(bad.to_algebra().unwrap_err().to_string().contains("entry 1"));
        let mut dup = doc;
        dup.entries[1].signature = dup.entries[0].signature.clone();
        assert!(dup.to_algebra().unwrap_err().to_string().contains("duplicate"));
    }
}
