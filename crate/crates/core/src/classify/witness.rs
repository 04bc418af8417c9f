use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chevalley::{algebra_with, Convention, LieAlgebra};
use crate::involutions::{
    chevalley_involution, diagram_lift, from_character, weyl_lift, Automorphism, Character, InvolutionError,
};
use crate::rootsys::SimpleType;

/// How to rebuild one involution.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum Recipe {
    /// `-1` on the simple roots whose bits are set.
    Character { bits: u64 },
    Chevalley,
    DiagramLift { perm: Vec<usize>, twist: u64 },
    WeylLift { word: Vec<usize>, twist: u64 },
}

impl Recipe {
    pub fn build(&self, alg: &Arc<LieAlgebra>) -> Result<Automorphism, InvolutionError> {
        let r = alg.rank();
        match self {
            Recipe::Character { bits } => from_character(alg, &Character::from_bits(r, *bits)),
            Recipe::Chevalley => Ok(chevalley_involution(alg)),
            Recipe::DiagramLift { perm, twist } => diagram_lift(alg, perm, &Character::from_bits(r, *twist)),
            Recipe::WeylLift { word, twist } => weyl_lift(alg, word, &Character::from_bits(r, *twist)),
        }
    }

    pub fn describe(&self, rank: usize) -> String {
        match self {
            Recipe::Character { bits } => format!("character {}", Character::from_bits(rank, *bits)),
            Recipe::Chevalley => "Chevalley involution".into(),
            Recipe::DiagramLift { perm, twist } => {
                format!("diagram lift {perm:?} twisted by {}", Character::from_bits(rank, *twist))
            }
            Recipe::WeylLift { word, twist } => format!(
                "Weyl lift of a word of length {} twisted by {}",
                word.len(),
                Character::from_bits(rank, *twist)
            ),
        }
    }
}

/// A replayable pair of commuting involutions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub algebra: SimpleType,
    #[serde(default, skip_serializing_if = "is_standard")]
    pub convention: Convention,
    pub sigma: Recipe,
    pub tau: Recipe,
}

impl Witness {
    pub fn replay(&self) -> Result<(Automorphism, Automorphism), InvolutionError> {
        let alg = algebra_with(self.algebra, self.convention);
        Ok((self.sigma.build(&alg)?, self.tau.build(&alg)?))
    }

    pub fn describe(&self) -> String {
        let r = self.algebra.rank;
        format!("sigma = {}; tau = {}", self.sigma.describe(r), self.tau.describe(r))
    }
}

fn is_standard(c: &Convention) -> bool {
    *c == Convention::Standard
}
