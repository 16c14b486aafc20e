//! Guard against the exponential growth of tensor powers.

use crate::error::CliError;

pub const DEFAULT_MAX_AMBIENT: usize = 4096;
pub const ENV_VAR: &str = "HBL_MAX_AMBIENT";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_ambient: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_ambient: DEFAULT_MAX_AMBIENT,
        }
    }
}

impl Budget {
    /// The environment variable wins over the flag, which wins over the default.
    pub fn resolve(flag: Option<usize>, env: Option<&str>) -> Result<Self, CliError> {
        if let Some(text) = env {
            let max_ambient = text.trim().parse().map_err(|_| {
                CliError::Usage(format!("{ENV_VAR} must be a natural number, got `{text}`"))
            })?;
            return Ok(Budget { max_ambient });
        }
        Ok(Budget {
            max_ambient: flag.unwrap_or(DEFAULT_MAX_AMBIENT),
        })
    }

    pub fn from_env(flag: Option<usize>) -> Result<Self, CliError> {
        Self::resolve(flag, std::env::var(ENV_VAR).ok().as_deref())
    }

    /// `base^exp` when it fits the budget.
    pub fn allows(&self, base: usize, exp: usize) -> bool {
        power(base, exp).is_some_and(|x| x <= self.max_ambient)
    }

    pub fn require(&self, what: &str, base: usize, exp: usize) -> Result<(), CliError> {
        if self.allows(base, exp) {
            return Ok(());
        }
        Err(CliError::Budget {
            what: what.to_string(),
            needed: power(base, exp).map_or_else(|| format!("{base}^{exp}"), |x| x.to_string()),
            limit: self.max_ambient,
        })
    }
}

fn power(base: usize, exp: usize) -> Option<usize> {
    base.checked_pow(u32::try_from(exp).ok()?)
}
