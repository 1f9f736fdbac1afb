//! Reference values for the limits of the catalog series.
//!
//! Constants live in a plain-text data file, one per line:
//!
//! ```text
//! <name> <decimal digits> <provenance-note>
//! ```
//!
//! Digits are truncated, so the stored value `v` satisfies
//! `0 <= L - v < 10^-digits` for the true constant `L`.

use std::path::Path;
use std::sync::OnceLock;

use num_bigint::BigInt;

use super::ExactRational;
use crate::error::{Error, Result};

const BUILTIN: &str = include_str!("../../data/constants.txt");

/// Lowest number of certified digits a constant must carry.
pub const MIN_DIGITS: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceConstant {
    pub name: String,
    pub value: ExactRational,
    pub abs_error_bound: ExactRational,
    pub digits: usize,
    pub provenance: String,
}

impl ReferenceConstant {
    /// Closed interval certified to contain the true constant.
    pub fn enclosure(&self) -> (ExactRational, ExactRational) {
        (
            &self.value - &self.abs_error_bound,
            &self.value + &self.abs_error_bound,
        )
    }

    /// True iff the whole enclosure lies strictly inside `(lo, hi)`.
    pub fn certainly_inside(&self, lo: &ExactRational, hi: &ExactRational) -> bool {
        let (a, b) = self.enclosure();
        lo < &a && &b < hi
    }

    /// True iff the whole enclosure lies inside `[lo, hi]`.
    pub fn certainly_within(&self, lo: &ExactRational, hi: &ExactRational) -> bool {
        let (a, b) = self.enclosure();
        lo <= &a && &b <= hi
    }
}

#[derive(Debug, Clone, Default)]
pub struct ConstantTable {
    entries: Vec<ReferenceConstant>,
}

impl ConstantTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: &str| Error::ConstantsData {
                line: idx + 1,
                message: message.to_string(),
            };
            let mut parts = line.splitn(3, char::is_whitespace);
            let name = parts.next().ok_or_else(|| bad("missing name"))?;
            let digits_text = parts.next().ok_or_else(|| bad("missing digits"))?;
            let provenance = parts.next().map(str::trim).unwrap_or_default();
            if provenance.is_empty() {
                return Err(bad("missing provenance note"));
            }
            let (int_part, frac_part) = digits_text
                .split_once('.')
                .ok_or_else(|| bad("digits must be a decimal literal"))?;
            if int_part.is_empty()
                || !int_part
                    .bytes()
                    .chain(frac_part.bytes())
                    .all(|b| b.is_ascii_digit())
            {
                return Err(bad("digits must be an unsigned decimal literal"));
            }
            let digits = frac_part.len();
            if digits < MIN_DIGITS {
                return Err(bad("fewer than 50 certified digits"));
            }
            let value: ExactRational = digits_text.parse().map_err(|_| bad("unparsable digits"))?;
            let abs_error_bound = ExactRational::new(1, num_traits::pow(BigInt::from(10), digits))?;
            entries.push(ReferenceConstant {
                name: name.to_string(),
                value,
                abs_error_bound,
                digits,
                provenance: provenance.to_string(),
            });
        }
        Ok(Self { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::ConstantsData {
            line: 0,
            message: format!("{}: {e}", path.display()),
        })?;
        Self::parse(&text)
    }

    /// The table compiled into the crate.
    pub fn builtin() -> &'static ConstantTable {
        static TABLE: OnceLock<ConstantTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            ConstantTable::parse(BUILTIN).expect("builtin constants data is well formed")
        })
    }

    pub fn get(&self, name: &str) -> Result<&ReferenceConstant> {
        self.entries
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::UnknownConstant(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|c| c.name.as_str())
    }
}

/// Looks up a builtin constant (`pi_over_4`, `ln2`).
pub fn reference_value(name: &str) -> Result<ReferenceConstant> {
    ConstantTable::builtin().get(name).cloned()
}
