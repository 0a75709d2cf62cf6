//! JSON manifold records.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::CliError;
use crate::lattice::IntegerLattice;
use crate::ringcalc::CupTable;
use crate::topology::{CatalogEntry, FourManifold, SWDatum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicClassRecord {
    #[serde(rename = "K")]
    pub k: Vec<i64>,
    #[serde(default)]
    pub sw: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
}

/// `γ_i ⌣ γ_j` for `i < j`, as a vector in the basis of `H²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CupRecord {
    pub i: usize,
    pub j: usize,
    pub class: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: String,
    pub params: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifoldRecord {
    pub name: String,
    pub b1: u32,
    pub b2plus: u32,
    pub b2minus: u32,
    pub parity: Parity,
    pub spin: bool,
    pub simply_connected: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basic_classes: Option<Vec<BasicClassRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spherical_pairings: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cup_products: Option<Vec<CupRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

/// Hex SHA-256 of a value's canonical (sorted-key, compact) JSON.
pub fn digest_value(v: &Value) -> String {
    hex::encode(Sha256::digest(v.to_string().as_bytes()))
}

impl ManifoldRecord {
    pub fn digest(&self) -> String {
        digest_value(&serde_json::to_value(self).expect("records serialize"))
    }

    /// Accepts a bare record or a report whose results carry one.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let v: Value = serde_json::from_str(text)?;
        let inner = v
            .get("results")
            .and_then(|r| r.get("record"))
            .cloned()
            .unwrap_or(v);
        Ok(serde_json::from_value(inner)?)
    }

    pub fn from_entry(entry: &CatalogEntry, provenance: Option<Provenance>) -> Self {
        let x = &entry.manifold;
        ManifoldRecord {
            name: x.name.clone(),
            b1: x.b1,
            b2plus: x.b2plus,
            b2minus: x.b2minus,
            parity: if x.odd_form { Parity::Odd } else { Parity::Even },
            spin: x.spin,
            simply_connected: x.simply_connected,
            gram: x.gram().map(|q| q.gram().to_vec()),
            basic_classes: Some(
                entry
                    .generators
                    .iter()
                    .map(|d| BasicClassRecord {
                        k: d.basic_class.0.clone(),
                        sw: d.sw_value,
                        convention: d.convention.clone(),
                    })
                    .collect(),
            ),
            spherical_pairings: x.spherical_pairings().map(|p| p.to_vec()),
            cup_products: None,
            provenance,
        }
    }

    /// Validates and builds the manifold with its basic classes. A blow-up
    /// record whose provenance embeds its parent gets that parent attached.
    pub fn to_entry(&self) -> Result<CatalogEntry, CliError> {
        let mut x = FourManifold::new(
            self.name.clone(),
            self.b1,
            self.b2plus,
            self.b2minus,
            self.parity == Parity::Odd,
            self.spin,
            self.simply_connected,
        )?;
        if let Some(g) = &self.gram {
            x = x.with_gram(IntegerLattice::new(g.clone())?)?;
        }
        if let Some(p) = &self.spherical_pairings {
            x = x.with_spherical_pairings(p.clone())?;
        }
        if let Some(parent) = self.embedded_parent()? {
            x = x.with_blowup_parent(parent.to_entry()?.manifold);
        }
        let generators = self
            .basic_classes
            .iter()
            .flatten()
            .map(|b| SWDatum {
                basic_class: b.k.clone().into(),
                sw_value: b.sw,
                convention: b.convention.clone(),
            })
            .collect();
        Ok(CatalogEntry {
            manifold: x,
            generators,
        })
    }

    fn embedded_parent(&self) -> Result<Option<ManifoldRecord>, CliError> {
        let Some(p) = &self.provenance else {
            return Ok(None);
        };
        if p.family != "blowup" {
            return Ok(None);
        }
        let Some(parent) = p.params.get("parent") else {
            return Ok(None);
        };
        let parent: ManifoldRecord = serde_json::from_value(parent.clone())?;
        let stated = p.params.get("parent_digest").and_then(Value::as_str);
        if stated != Some(parent.digest().as_str()) {
            return Err(CliError::Validation(vec![format!(
                "parent digest mismatch for {}",
                self.name
            )]));
        }
        Ok(Some(parent))
    }

    pub fn cup_table(&self) -> CupTable {
        self.cup_products
            .iter()
            .flatten()
            .map(|c| ((c.i, c.j), c.class.clone()))
            .collect()
    }

    /// Basic classes that carry a value.
    pub fn sw_data(&self) -> Vec<SWDatum> {
        self.basic_classes
            .iter()
            .flatten()
            .filter_map(|b| b.sw.map(|v| SWDatum::new(b.k.clone(), v)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{blow_up, surface_catalog, SurfaceFamily};

    #[test]
    fn round_trip_through_json() {
        let k3 = surface_catalog(&SurfaceFamily::Elliptic { n: 2, p: 1, q: 1 }).unwrap();
        let rec = ManifoldRecord::from_entry(&k3, None);
        let text = serde_json::to_string(&rec).unwrap();
        let back = ManifoldRecord::from_json(&text).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.to_entry().unwrap(), k3);
    }

    #[test]
    fn blowup_parent_survives_ingestion() {
        let k3 = surface_catalog(&SurfaceFamily::Elliptic { n: 2, p: 1, q: 1 }).unwrap();
        let parent = ManifoldRecord::from_entry(&k3, None);
        let child = blow_up(&k3).unwrap();
        let params = serde_json::json!({
            "parent": parent,
            "parent_digest": parent.digest(),
        });
        let mut rec = ManifoldRecord::from_entry(
            &child,
            Some(Provenance {
                family: "blowup".into(),
                params,
            }),
        );
        let entry = rec.to_entry().unwrap();
        assert_eq!(entry.manifold.blowup_parent(), Some(&k3.manifold));

        rec.provenance.as_mut().unwrap().params["parent_digest"] = "00".into();
        assert!(matches!(rec.to_entry(), Err(CliError::Validation(_))));
    }
}
