use serde::Serialize;

use crate::catalog::{display_tuple, Catalog};

use super::{ClassifyError, GradingRecord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum ExclusionReason {
    /// An odd number of outer classes: the product of two inner
    /// automorphisms is inner.
    Parity { outer: usize },
    /// No `k` of the right dimension is symmetric in all three fixed algebras.
    EmptyShortlist,
    /// Every shortlisted `k` is refuted by a containment fact.
    Refuted { facts: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExclusionRecord {
    pub algebra: String,
    pub triple: [String; 3],
    pub type_name: String,
    #[serde(flatten)]
    pub reason: ExclusionReason,
}

/// Every class triple of `algebra` without a record, with the reason it
/// cannot occur. A triple that is neither realized nor excluded is an error.
pub fn nonexistence_report(algebra: &str, realized: &[GradingRecord]) -> Result<Vec<ExclusionRecord>, ClassifyError> {
    let cat = Catalog::builtin();
    let mut out = Vec::new();
    let mut open = Vec::new();
    for t in cat.triples(algebra) {
        if realized.iter().any(|r| r.algebra == algebra && r.triple == t) {
            continue;
        }
        let mut outer = 0;
        for c in &t {
            if cat.pair(algebra, c)?.outer {
                outer += 1;
            }
        }
        let reason = if outer % 2 == 1 {
            ExclusionReason::Parity { outer }
        } else {
            let ks = cat.triple_candidates(algebra, &t)?;
            if ks.is_empty() {
                ExclusionReason::EmptyShortlist
            } else {
                let hs: Vec<_> = t.iter().map(|c| cat.pair(algebra, c).map(|p| p.h.clone())).collect::<Result<_, _>>()?;
                let facts: Option<Vec<String>> = ks
                    .iter()
                    .map(|k| {
                        hs.iter()
                            .find_map(|h| cat.refutation(k, h))
                            .map(|f| format!("{} not in {}: {}", f.k.compact_name(), f.h.compact_name(), f.justification))
                    })
                    .collect();
                match facts {
                    Some(facts) => ExclusionReason::Refuted { facts },
                    None => {
                        open.push(display_tuple(&t));
                        continue;
                    }
                }
            }
        };
        out.push(ExclusionRecord {
            algebra: algebra.to_string(),
            type_name: display_tuple(&t),
            triple: t,
            reason,
        });
    }
    if open.is_empty() {
        Ok(out)
    } else {
        Err(ClassifyError::Incomplete(open))
    }
}
