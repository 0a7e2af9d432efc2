//! Corpus manifest: one JSON line per sample record.

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Background painted behind the face.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackgroundKind {
    White,
    /// Constant RGB fill.
    Solid([f32; 3]),
    /// Per-pixel uniform noise from the given seed.
    Noise(u64),
}

/// One rendering condition. The NORMAL condition is the all-neutral
/// point: frontal, unlit, white background, neutral mouth, no
/// sunglasses, no blur.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariationSpec {
    pub yaw_deg: f32,
    pub illum_angle_deg: f32,
    pub illum_strength: f32,
    pub background_kind: BackgroundKind,
    /// Mouth curvature in `[-1, 1]`; 0 is neutral.
    pub expression: f32,
    pub sunglasses: bool,
    pub blur_sigma: f32,
}

impl VariationSpec {
    pub const NORMAL: VariationSpec = VariationSpec {
        yaw_deg: 0.0,
        illum_angle_deg: 0.0,
        illum_strength: 0.0,
        background_kind: BackgroundKind::White,
        expression: 0.0,
        sunglasses: false,
        blur_sigma: 0.0,
    };

    pub fn is_normal(&self) -> bool {
        *self == Self::NORMAL
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    Train,
    Test,
}

/// One corpus entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub image_path: String,
    pub identity_id: u32,
    pub is_normal: bool,
    pub variation: VariationSpec,
    pub split: Split,
}

/// Ordered collection of sample records plus the directory its relative
/// image paths resolve against.
#[derive(Debug, Clone)]
pub struct Manifest {
    pub records: Vec<SampleRecord>,
    pub root: PathBuf,
}

impl Manifest {
    pub fn new(records: Vec<SampleRecord>, root: impl Into<PathBuf>) -> Self {
        Self {
            records,
            root: root.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Absolute path of a record's image.
    pub fn image_path(&self, record: &SampleRecord) -> PathBuf {
        self.root.join(&record.image_path)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
        let mut file =
            std::io::BufWriter::new(std::fs::File::create(path).map_err(|e| Error::io(path, e))?);
        for rec in &self.records {
            let line = serde_json::to_string(rec)?;
            writeln!(file, "{line}").map_err(|e| Error::io(path, e))?;
        }
        Ok(())
    }

    /// Load a JSON-lines manifest; image paths resolve relative to the
    /// manifest's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let reader = std::io::BufReader::new(file);
        let mut records = Vec::new();
        for line in reader.lines() {
            let line = line.map_err(|e| Error::io(path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            records.push(serde_json::from_str(&line)?);
        }
        let root = path.parent().unwrap_or_else(|| Path::new(".")).to_path_buf();
        Ok(Self { records, root })
    }

    /// Subset with only normal records.
    pub fn normal_only(&self) -> Manifest {
        Manifest {
            records: self
                .records
                .iter()
                .filter(|r| r.is_normal)
                .cloned()
                .collect(),
            root: self.root.clone(),
        }
    }

    /// Subset with only non-normal records.
    pub fn non_normal_only(&self) -> Manifest {
        Manifest {
            records: self
                .records
                .iter()
                .filter(|r| !r.is_normal)
                .cloned()
                .collect(),
            root: self.root.clone(),
        }
    }

    pub fn split(&self, split: Split) -> Manifest {
        Manifest {
            records: self
                .records
                .iter()
                .filter(|r| r.split == split)
                .cloned()
                .collect(),
            root: self.root.clone(),
        }
    }

    /// Every record claims is_normal iff its variation is the NORMAL one.
    pub fn validate(&self) -> Result<()> {
        for (i, rec) in self.records.iter().enumerate() {
            if rec.is_normal != rec.variation.is_normal() {
                return Err(Error::validation(format!(
                    "record {i} (identity {}): is_normal={} disagrees with variation",
                    rec.identity_id, rec.is_normal
                )));
            }
        }
        Ok(())
    }

    /// Reject any non-normal record; used for the normal training stream.
    pub fn validate_normal_only(&self) -> Result<()> {
        self.validate()?;
        if let Some(rec) = self.records.iter().find(|r| !r.is_normal) {
            return Err(Error::validation(format!(
                "normal manifest contains a non-normal record (identity {})",
                rec.identity_id
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: u32, normal: bool) -> SampleRecord {
        SampleRecord {
            image_path: format!("{id}/0.png"),
            identity_id: id,
            is_normal: normal,
            variation: if normal {
                VariationSpec::NORMAL
            } else {
                VariationSpec {
                    yaw_deg: 30.0,
                    ..VariationSpec::NORMAL
                }
            },
            split: Split::Train,
        }
    }

    #[test]
    fn json_lines_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("manifest.jsonl");
        let m = Manifest::new(vec![record(0, true), record(0, false), record(1, true)], dir.path());
        m.save(&path).unwrap();
        let back = Manifest::load(&path).unwrap();
        assert_eq!(back.records, m.records);
        assert_eq!(back.root, dir.path());
    }

    #[test]
    fn normal_flag_must_match_variation() {
        let mut bad = record(0, true);
        bad.variation.yaw_deg = 10.0;
        let m = Manifest::new(vec![bad], ".");
        assert!(m.validate().is_err());
    }

    #[test]
    fn normal_only_validation_rejects_mixed() {
        let m = Manifest::new(vec![record(0, true), record(1, false)], ".");
        assert!(m.validate_normal_only().is_err());
        assert!(m.normal_only().validate_normal_only().is_ok());
    }

    #[test]
    fn serialized_field_names_are_stable() {
        let line = serde_json::to_string(&record(3, true)).unwrap();
        for key in ["image_path", "identity_id", "is_normal", "variation", "split"] {
            assert!(line.contains(key), "missing {key} in {line}");
        }
        assert!(line.contains("yaw_deg") && line.contains("background_kind"));
    }
}
