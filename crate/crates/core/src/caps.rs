use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Resource limits shared by every enumeration in the crate.
///
/// Exceeding any of them yields [`Error::ResourceBound`]; no operation ever
/// truncates silently.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Longest word accepted by the word engine.
    pub word_length: usize,
    /// Largest braid closure explored while reducing a word.
    pub closure: usize,
    /// Largest generating set for subset enumerations.
    pub generators: usize,
    /// Largest finite special subgroup that will be enumerated.
    pub order: usize,
    /// Entries kept in the reduced-word memo.
    pub memo: usize,
    /// Largest number of subgroups enumerated for one finite group.
    pub subgroups: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            word_length: 64,
            closure: 200_000,
            generators: 16,
            order: 1024,
            memo: 1_000_000,
            subgroups: 100_000,
        }
    }
}

impl Caps {
    /// Applies `key=value` overrides separated by commas, e.g.
    /// `order=512,closure=10000`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidCaps(format!("expected key=value, got {item:?}")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidCaps(format!("{key}: not a number")))?;
            if value == 0 {
                return Err(Error::InvalidCaps(format!("{key} must be positive")));
            }
            let slot = match key.trim() {
                "length" | "word_length" => &mut self.word_length,
                "closure" => &mut self.closure,
                "generators" => &mut self.generators,
                "order" => &mut self.order,
                "memo" => &mut self.memo,
                "subgroups" => &mut self.subgroups,
                other => return Err(Error::InvalidCaps(format!("unknown cap {other:?}"))),
            };
            *slot = value;
        }
        Ok(self)
    }
}

impl FromStr for Caps {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Caps::default().with_overrides(s)
    }
}
