//! Structured verification outcomes with a stable JSON shape.

use serde::{Deserialize, Serialize};

/// How two series are compared: exact coefficient equality, or congruence of
/// every coefficient modulo 2^e.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CheckMode {
    Exact,
    Mod2 { e: u32 },
}

impl std::fmt::Display for CheckMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckMode::Exact => write!(f, "exact"),
            CheckMode::Mod2 { e } => write!(f, "mod 2^{e}"),
        }
    }
}

/// Outcome of one identity or lemma check.
///
/// `order` is the range the check covered: a truncation order for series
/// identities, a row or parameter bound for table lemmas. On failure,
/// `first_fail_index` locates the earliest offending coefficient (or table
/// entry) and the two coefficient fields carry its value on each side, as
/// decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tag: String,
    pub order: usize,
    pub mode: CheckMode,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_fail_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lhs_coeff: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rhs_coeff: Option<String>,
}

impl Report {
    pub fn pass(tag: impl Into<String>, order: usize, mode: CheckMode) -> Self {
        Report {
            tag: tag.into(),
            order,
            mode,
            pass: true,
            first_fail_index: None,
            lhs_coeff: None,
            rhs_coeff: None,
        }
    }

    pub fn fail(
        tag: impl Into<String>,
        order: usize,
        mode: CheckMode,
        index: usize,
        lhs: impl ToString,
        rhs: impl ToString,
    ) -> Self {
        Report {
            tag: tag.into(),
            order,
            mode,
            pass: false,
            first_fail_index: Some(index),
            lhs_coeff: Some(lhs.to_string()),
            rhs_coeff: Some(rhs.to_string()),
        }
    }
}
