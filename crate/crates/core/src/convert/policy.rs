use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::conllu::MorphToken;
use crate::tagsets::UposTag;

use super::ConvertError;

/// Ordered tiers of UPOS categories that may not carry an eojeol's NE tag.
/// Tier 0 is tried first; each later tier excludes strictly less and the
/// last one excludes nothing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionPolicy {
    tiers: Vec<BTreeSet<UposTag>>,
}

impl Default for ExclusionPolicy {
    fn default() -> Self {
        use UposTag::*;
        let tiers = vec![
            vec![Adp, Punct, Part, Det, Verb],
            vec![Adp, Punct, Part, Det],
            vec![Adp, Punct],
            vec![],
        ];
        ExclusionPolicy::new(tiers).expect("default ladder is well formed")
    }
}

impl ExclusionPolicy {
    pub fn new<T: IntoIterator<Item = UposTag>>(
        tiers: impl IntoIterator<Item = T>,
    ) -> Result<Self, ConvertError> {
        let tiers: Vec<BTreeSet<UposTag>> =
            tiers.into_iter().map(|t| t.into_iter().collect()).collect();
        let bad = |message: &str| Err(ConvertError::Policy(message.to_owned()));
        match tiers.last() {
            None => return bad("at least one tier is required"),
            Some(last) if !last.is_empty() => return bad("the last tier must exclude nothing"),
            _ => {}
        }
        for w in tiers.windows(2) {
            if !(w[1].is_subset(&w[0]) && w[1].len() < w[0].len()) {
                return bad("each tier must exclude a strict subset of the previous one");
            }
        }
        Ok(ExclusionPolicy { tiers })
    }

    pub fn tiers(&self) -> &[BTreeSet<UposTag>] {
        &self.tiers
    }

    pub fn excludes(&self, tier: usize, token: &MorphToken) -> bool {
        category(token).is_some_and(|c| self.tiers[tier].contains(&c))
    }
}

/// The UPOS category used for exclusion. A J* XPOS (case marker or other
/// postposition) counts as ADP whatever its UPOS says; without a UPOS the
/// category is guessed from the Sejong XPOS.
pub fn category(token: &MorphToken) -> Option<UposTag> {
    let xpos = token.xpos.as_ref().map(|x| x.as_str());
    if token.xpos.as_ref().is_some_and(|x| x.is_postposition()) {
        return Some(UposTag::Adp);
    }
    if let Some(upos) = token.upos {
        return Some(upos);
    }
    let x = xpos?;
    Some(match x {
        "SF" | "SP" | "SS" | "SE" | "SO" => UposTag::Punct,
        "SW" => UposTag::Sym,
        "MM" => UposTag::Det,
        "VV" | "VX" | "VCP" | "VCN" | "XSV" => UposTag::Verb,
        "VA" | "XSA" => UposTag::Adj,
        "NNP" => UposTag::Propn,
        "NP" => UposTag::Pron,
        "NR" | "SN" => UposTag::Num,
        "MAG" => UposTag::Adv,
        "MAJ" => UposTag::Cconj,
        "IC" => UposTag::Intj,
        _ if x.starts_with('E') || x == "XSN" || x == "XPN" => UposTag::Part,
        _ if x.starts_with('N') || x == "XR" => UposTag::Noun,
        _ => UposTag::X,
    })
}
