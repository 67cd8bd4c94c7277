//! Serialized forms of an atlas.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{Atlas, Contour};
use crate::specfun::gamma;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourRecord {
    pub anchor: f64,
    pub trimmed: bool,
    pub samples: Vec<[f64; 2]>,
    pub image: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtlasDocument {
    pub branch: i64,
    pub anchors: Vec<f64>,
    pub contours: Vec<ContourRecord>,
}

fn pairs<'a>(pts: impl IntoIterator<Item = &'a num_complex::Complex64>) -> Vec<[f64; 2]> {
    pts.into_iter().map(|p| [p.re, p.im]).collect()
}

impl From<&Atlas> for AtlasDocument {
    fn from(a: &Atlas) -> Self {
        AtlasDocument {
            branch: a.branch.get(),
            anchors: a.anchors.clone(),
            contours: a
                .contours
                .iter()
                .map(|m| ContourRecord {
                    anchor: m.source.anchor,
                    trimmed: m.source.trimmed,
                    samples: pairs(&m.source.samples),
                    image: pairs(&m.image),
                })
                .collect(),
        }
    }
}

impl AtlasDocument {
    /// Document for a set of free curves, mapping each through Gamma.
    pub fn from_contours(branch: i64, contours: &[Contour]) -> Result<AtlasDocument> {
        let contours = contours
            .iter()
            .map(|c| {
                let image = c
                    .samples
                    .iter()
                    .map(|&w| gamma(w))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ContourRecord {
                    anchor: c.anchor,
                    trimmed: c.trimmed,
                    samples: pairs(&c.samples),
                    image: pairs(&image),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AtlasDocument {
            branch,
            anchors: Vec::new(),
            contours,
        })
    }
}

/// One row per sample: `contour_id,point_index,src_re,src_im,img_re,img_im`.
pub fn write_csv<W: Write>(doc: &AtlasDocument, mut out: W) -> std::io::Result<()> {
    writeln!(out, "contour_id,point_index,src_re,src_im,img_re,img_im")?;
    for (id, c) in doc.contours.iter().enumerate() {
        for (j, (s, z)) in c.samples.iter().zip(&c.image).enumerate() {
            writeln!(out, "{id},{j},{},{},{},{}", s[0], s[1], z[0], z[1])?;
        }
    }
    Ok(())
}
