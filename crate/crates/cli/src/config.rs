use serde::Serialize;
use tsmult_core::oracles::McConfig;
use tsmult_core::{Error, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Config {
    /// Upper end of the `[0, window)` range for microlocal chains.
    pub window: Rat,
    /// Box `[0, box_bound]^d` for brute-force membership checks in `verify`.
    pub box_bound: u32,
    pub mc: McConfig,
    pub output: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config { window: Rat::int(2), box_bound: 10, mc: McConfig::default(), output: OutputFormat::Text }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), Error> {
        if !self.window.is_positive() {
            return Err(Error::Domain(format!("window must be positive, got {}", self.window)));
        }
        if self.box_bound == 0 || self.mc.shells == 0 || self.mc.samples == 0 {
            return Err(Error::Domain("bounds, shell count and sample count must be positive".into()));
        }
        Ok(())
    }
}
