//! Claim-check outcomes and their canonical JSON form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimId {
    #[serde(rename = "theorem_1_1")]
    Theorem,
    /// The individual links of the determinant evaluation for `T_q`.
    #[serde(rename = "theorem_1_1_assembly")]
    TheoremAssembly,
    #[serde(rename = "corollary_1_1")]
    Corollary,
    #[serde(rename = "lemma_2_1")]
    ReducedPower,
    #[serde(rename = "lemma_2_2")]
    CauchyLikeDet,
    #[serde(rename = "lemma_2_3")]
    LerchSign,
    #[serde(rename = "lemma_2_4")]
    InversionSign,
    SunSp,
    SunAp,
    CarlitzCharpoly,
    RemarkRational,
}

impl ClaimId {
    pub const ALL: [ClaimId; 11] = [
        ClaimId::Theorem,
        ClaimId::TheoremAssembly,
        ClaimId::Corollary,
        ClaimId::ReducedPower,
        ClaimId::CauchyLikeDet,
        ClaimId::LerchSign,
        ClaimId::InversionSign,
        ClaimId::SunSp,
        ClaimId::SunAp,
        ClaimId::CarlitzCharpoly,
        ClaimId::RemarkRational,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ClaimId::Theorem => "theorem_1_1",
            ClaimId::TheoremAssembly => "theorem_1_1_assembly",
            ClaimId::Corollary => "corollary_1_1",
            ClaimId::ReducedPower => "lemma_2_1",
            ClaimId::CauchyLikeDet => "lemma_2_2",
            ClaimId::LerchSign => "lemma_2_3",
            ClaimId::InversionSign => "lemma_2_4",
            ClaimId::SunSp => "sun_sp",
            ClaimId::SunAp => "sun_ap",
            ClaimId::CarlitzCharpoly => "carlitz_charpoly",
            ClaimId::RemarkRational => "remark_rational",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ClaimId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| format!("unknown claim tag {s:?}"))
    }
}

/// One claim check. `matched` is true exactly when `computed == predicted`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: ClaimId,
    pub params: BTreeMap<String, i64>,
    pub computed: String,
    pub predicted: String,
    pub matched: bool,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(
        claim: ClaimId,
        params: &[(&str, i64)],
        computed: impl Into<String>,
        predicted: impl Into<String>,
    ) -> Self {
        let computed = computed.into();
        let predicted = predicted.into();
        Self {
            claim,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            matched: computed == predicted,
            computed,
            predicted,
            elapsed_ms: 0,
        }
    }

    /// A failed report for parameters outside the claim's hypothesis.
    pub fn precondition_failed(
        claim: ClaimId,
        params: &[(&str, i64)],
        reason: impl fmt::Display,
        hypothesis: &str,
    ) -> Self {
        Self::new(
            claim,
            params,
            format!("precondition failed: {reason}"),
            hypothesis,
        )
    }

    pub fn with_elapsed(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }

    pub fn param(&self, key: &str) -> Option<i64> {
        self.params.get(key).copied()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Ordering used for emitted streams: claim tag, then the leading
    /// parameter (q, p, m or n) ascending, then the remaining parameters.
    pub fn sort_key(&self) -> (&'static str, i64, String) {
        let lead = ["q", "p", "m", "n"]
            .iter()
            .find_map(|k| self.param(k))
            .unwrap_or(0);
        let rest = serde_json::to_string(&self.params).expect("params serialize");
        (self.claim.tag(), lead, rest)
    }
}

pub fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}
