use std::path::PathBuf;

use crate::error::{CliError, Result};

pub const DEFAULT_DIGITS: u32 = 50;
pub const DEFAULT_TERMS: usize = 400;
pub const DEFAULT_SEED: u64 = 20_240_501;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Text,
    Json,
}

/// Settings shared by every command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub digits: u32,
    /// `None` lets each command pick its own length; the sequence
    /// commands use [`DEFAULT_TERMS`].
    pub terms: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub output: Output,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            digits: DEFAULT_DIGITS,
            terms: None,
            cache_dir: None,
            output: Output::Text,
            seed: DEFAULT_SEED,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.digits < 10 {
            return Err(CliError::Input(format!(
                "--digits must be at least 10, got {}",
                self.digits
            )));
        }
        if let Some(t) = self.terms {
            if t < 10 {
                return Err(CliError::Input(format!(
                    "--terms must be at least 10, got {t}"
                )));
            }
        }
        Ok(())
    }

    pub fn terms_or(&self, default: usize) -> usize {
        self.terms.unwrap_or(default)
    }

    pub fn json(&self) -> bool {
        self.output == Output::Json
    }
}
