use serde::{Deserialize, Serialize};

use crate::classify::{DecidedBy, GradingRecord, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KJson {
    pub label: String,
    pub dim: usize,
    pub rank: usize,
    pub center: usize,
}

/// Piece dimensions; `gs` is fixed by sigma and negated by tau.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceDims {
    pub g1: usize,
    pub gs: usize,
    pub gt: usize,
    pub gst: usize,
}

/// External JSON form of a grading record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingJson {
    pub algebra: String,
    #[serde(rename = "type")]
    pub type_name: String,
    pub triple: [String; 3],
    pub k: KJson,
    pub dims: PieceDims,
    pub witness: Witness,
    pub decided_by: DecidedBy,
}

impl From<&GradingRecord> for GradingJson {
    fn from(r: &GradingRecord) -> Self {
        Self {
            algebra: r.algebra.clone(),
            type_name: r.type_name.clone(),
            triple: r.triple.clone(),
            k: KJson {
                label: r.k.compact_name(),
                dim: r.k.dim(),
                rank: r.k.rank(),
                center: r.k.torus_rank(),
            },
            dims: PieceDims {
                g1: r.dims[0],
                gs: r.dims[1],
                gt: r.dims[2],
                gst: r.dims[3],
            },
            witness: r.witness.clone(),
            decided_by: r.decided_by,
        }
    }
}
