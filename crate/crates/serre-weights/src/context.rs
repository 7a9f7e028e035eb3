//! Context construction and validation for the command line.

use algebra_core::ArithCtx;
use serde::{Deserialize, Serialize};

/// Default size guards keeping every enumeration desk-scale. Lifted by the
/// `--allow-large` flag.
pub const MAX_F: usize = 6;
pub const MAX_E: usize = 12;
pub const MAX_M: usize = 12;

/// On-disk context description. `m` defaults to `2f`, the smallest
/// coefficient-field degree the quadratic character encoding accepts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContextFile {
    pub p: u64,
    pub f: usize,
    pub e: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Series truncation order override (default `p(p+e) + e + 1`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Default PRNG seed for the sampling subcommands.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ContextFile {
    pub fn from_path(path: &std::path::Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|err| format!("cannot read context file {}: {err}", path.display()))?;
        serde_json::from_str(&text)
            .map_err(|err| format!("invalid context file {}: {err}", path.display()))
    }

    /// Validated arithmetic context. `p = 2` is rejected up front: the
    /// whole construction assumes an odd residue characteristic, p >= 3.
    pub fn build(&self, allow_large: bool) -> Result<ArithCtx, String> {
        if self.p < 3 {
            return Err(format!(
                "unsupported residue characteristic p = {}: the construction requires p >= 3",
                self.p
            ));
        }
        let m = self.m.unwrap_or(2 * self.f);
        if !allow_large {
            if self.f > MAX_F {
                return Err(format!(
                    "f = {} exceeds the default guard f <= {MAX_F}; pass --allow-large to override",
                    self.f
                ));
            }
            if self.e > MAX_E {
                return Err(format!(
                    "e = {} exceeds the default guard e <= {MAX_E}; pass --allow-large to override",
                    self.e
                ));
            }
            if m > MAX_M {
                return Err(format!(
                    "m = {m} exceeds the default guard m <= {MAX_M}; pass --allow-large to override"
                ));
            }
        }
        let built = match self.n {
            Some(n) => ArithCtx::with_truncation(self.p, self.f, self.e, m, n),
            None => ArithCtx::new(self.p, self.f, self.e, m),
        };
        built.map_err(|err| format!("invalid context: {err}"))
    }
}
