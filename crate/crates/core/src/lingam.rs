//! The full estimation pipeline: causal order, then direct effects, then
//! total effects.

use serde::{Deserialize, Serialize};

use crate::effects::{estimate_direct, estimate_total, DirectEffects, TotalEffects};
use crate::error::Result;
use crate::linalg::{Dataset, RidgeConfig};
use crate::ordering::{estimate_order, CausalOrder};
use crate::sparse::PathConfig;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct LingamConfig {
    pub ridge: RidgeConfig,
    pub path: PathConfig,
}

impl LingamConfig {
    pub fn validate(&self) -> Result<()> {
        RidgeConfig::new(self.ridge.tau)?;
        self.path.validate()
    }
}

#[derive(Debug, Clone)]
pub struct LingamFit {
    pub order: CausalOrder,
    pub direct: DirectEffects,
    pub total: TotalEffects,
}

pub fn fit(data: &Dataset, cfg: &LingamConfig) -> Result<LingamFit> {
    cfg.validate()?;
    let order = estimate_order(data, &cfg.ridge)?;
    let direct = estimate_direct(data, &order, &cfg.ridge, &cfg.path)?;
    let total = estimate_total(data, &direct, &cfg.ridge, &cfg.path)?;
    Ok(LingamFit {
        order,
        direct,
        total,
    })
}
