use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::swap::SWAP_ORDER;
use super::{ghz_eigen_table, ghz_state, identity_axes, product_eigenstate, AnalyzerOutcome, GhzIndex};
use crate::qcore::{DensityMatrix, PauliAxis};
use crate::verifier::{noisy_psi, NoiseParams, REMOTE_PARTNERS, TRIPLES};
use crate::{Error, Result, Sign};

/// Probabilities below this are rounding residue of exact zeros.
const ZERO_WEIGHT: f64 = 1e-15;

/// Which term of `O` is measured on each shot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SettingPolicy {
    /// Shot `i` measures term `i mod 4 + 1`.
    RoundRobin,
    /// Every shot measures the given term (1..=4).
    Fixed(usize),
}

impl SettingPolicy {
    pub fn setting_for(self, shot: u64) -> usize {
        match self {
            SettingPolicy::RoundRobin => (shot % 4) as usize + 1,
            SettingPolicy::Fixed(s) => s,
        }
    }

    fn settings(self) -> Vec<usize> {
        match self {
            SettingPolicy::RoundRobin => vec![1, 2, 3, 4],
            SettingPolicy::Fixed(s) => vec![s],
        }
    }
}

impl FromStr for SettingPolicy {
    type Err = Error;

    /// `round-robin`, `fixed` (term 1) or `fixed:N`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadPolicy(s.to_string());
        match s {
            "round-robin" => Ok(SettingPolicy::RoundRobin),
            "fixed" => Ok(SettingPolicy::Fixed(1)),
            _ => {
                let n: usize = s.strip_prefix("fixed:").ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if (1..=4).contains(&n) {
                    Ok(SettingPolicy::Fixed(n))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl fmt::Display for SettingPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SettingPolicy::RoundRobin => f.write_str("round-robin"),
            SettingPolicy::Fixed(s) => write!(f, "fixed:{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotResult {
    pub setting: usize,
    pub ghz_outcome: GhzIndex,
    pub debbie_outcome: AnalyzerOutcome,
    /// Alice's, Bob's and Charlie's outcomes; sampled only on acceptance.
    pub local_values: Option<[Sign; 3]>,
    pub accepted: bool,
    /// Triple eigenvalue times the three local values; only on acceptance.
    pub product: Option<Sign>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SettingStats {
    pub setting: usize,
    pub accepted: u64,
    pub mean: f64,
    pub variance: f64,
}

#[derive(Debug, Clone)]
pub struct SampleSummary {
    pub shots_requested: u64,
    pub estimate: f64,
    pub std_error: f64,
    pub accepted: u64,
    pub per_setting: Vec<SettingStats>,
    pub shots: Vec<ShotResult>,
}

impl SampleSummary {
    pub fn acceptance_fraction(&self) -> f64 {
        self.accepted as f64 / self.shots_requested as f64
    }
}

/// Born-rule model of one experimental run, precomputed once per fidelity.
struct ShotModel {
    ghz_weights: WeightedIndex<f64>,
    /// `[accepted outcome][setting - 1]`: distribution over the 8 local outcomes.
    local: [[Option<WeightedIndex<f64>>; 4]; 2],
    /// `[accepted outcome][setting - 1]`: triple eigenvalue read from the table.
    triple: [[Sign; 4]; 2],
}

fn weighted(probs: &[f64]) -> Option<WeightedIndex<f64>> {
    let w: Vec<f64> = probs.iter().map(|&p| if p < ZERO_WEIGHT { 0.0 } else { p }).collect();
    WeightedIndex::new(w).ok()
}

fn remote_axes(setting: usize) -> [PauliAxis; 3] {
    REMOTE_PARTNERS[setting - 1].map(|l| PauliAxis::from_char(l.chars().next().expect("nonempty")).expect("x or y"))
}

fn local_signs(outcome: usize) -> [Sign; 3] {
    [0, 1, 2].map(|q| Sign::from_bit(outcome >> (2 - q) & 1 == 1))
}

impl ShotModel {
    fn new(fidelity: NoiseParams) -> Result<Self> {
        let rho = noisy_psi(fidelity).permute_qubits(&SWAP_ORDER)?;
        let table = ghz_eigen_table()?;
        let mut ghz_probs = [0.0; 8];
        let mut conditionals: [Option<DensityMatrix>; 2] = [None, None];
        for g in GhzIndex::ALL {
            match rho.condition_leading(&ghz_state(g)) {
                Ok((p, cond)) => {
                    ghz_probs[g.position()] = p;
                    if g.is_identifiable() {
                        conditionals[g.position()] = Some(cond);
                    }
                }
                Err(Error::NoSupport { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        let ghz_weights =
            weighted(&ghz_probs).ok_or_else(|| Error::PhysicsViolation("GHZ outcome weights are degenerate".into()))?;

        let mut local: [[Option<WeightedIndex<f64>>; 4]; 2] = Default::default();
        let mut triple = [[Sign::Plus; 4]; 2];
        for (a, g) in [GhzIndex::PHI0_PLUS, GhzIndex::PHI0_MINUS].into_iter().enumerate() {
            for setting in 1..=4 {
                triple[a][setting - 1] = table.value(g, TRIPLES[setting - 1]).expect("column");
                let Some(cond) = &conditionals[a] else { continue };
                let axes = remote_axes(setting);
                let probs = (0..8)
                    .map(|o| cond.population(&product_eigenstate(axes, local_signs(o))?))
                    .collect::<Result<Vec<f64>>>()?;
                local[a][setting - 1] = weighted(&probs);
            }
        }
        Ok(Self {
            ghz_weights,
            local,
            triple,
        })
    }

    fn shot(&self, seed: u64, index: u64, setting: usize) -> ShotResult {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let g = GhzIndex::from_position(self.ghz_weights.sample(&mut rng)).expect("8 outcomes");
        let debbie_outcome = AnalyzerOutcome::from_ghz(g);
        let mut shot = ShotResult {
            setting,
            ghz_outcome: g,
            debbie_outcome,
            local_values: None,
            accepted: false,
            product: None,
        };
        if debbie_outcome.is_accepted() {
            let a = g.position();
            let dist = self.local[a][setting - 1]
                .as_ref()
                .expect("accepted outcome has a conditional state");
            let values = local_signs(dist.sample(&mut rng));
            shot.local_values = Some(values);
            shot.accepted = true;
            shot.product = Some(self.triple[a][setting - 1] * Sign::product(values));
        }
        shot
    }
}

/// Simulate `n` runs of the four-party experiment on three noisy singlets.
///
/// Each shot draws Debbie's GHZ outcome, keeps it only if the analyzer can
/// identify it, then draws the remote X/Y outcomes for the shot's setting
/// from the post-measurement state. `⟨O⟩` is estimated as four times the
/// mean over settings of the per-setting mean product. Shot `i` uses its own
/// random stream derived from `(seed, i)`, so results do not depend on
/// scheduling.
pub fn sample_shots(n: u64, seed: u64, fidelity: NoiseParams, policy: SettingPolicy) -> Result<SampleSummary> {
    if let SettingPolicy::Fixed(s) = policy {
        identity_axes(s).map_err(|_| Error::BadPolicy(policy.to_string()))?;
    }
    let model = ShotModel::new(fidelity)?;
    let shots: Vec<ShotResult> = (0..n)
        .into_par_iter()
        .map(|i| model.shot(seed, i, policy.setting_for(i)))
        .collect();

    let settings = policy.settings();
    let mut per_setting = Vec::with_capacity(settings.len());
    for &setting in &settings {
        let products: Vec<f64> = shots
            .iter()
            .filter(|s| s.setting == setting)
            .filter_map(|s| s.product.map(Sign::as_f64))
            .collect();
        if products.is_empty() {
            return Err(Error::InsufficientStatistics { setting });
        }
        let m = products.len() as f64;
        let mean = products.iter().sum::<f64>() / m;
        let variance = if products.len() > 1 {
            products.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / (m - 1.0)
        } else {
            0.0
        };
        per_setting.push(SettingStats {
            setting,
            accepted: products.len() as u64,
            mean,
            variance,
        });
    }
    let scale = 4.0 / settings.len() as f64;
    let estimate = scale * per_setting.iter().map(|s| s.mean).sum::<f64>();
    let std_error = scale
        * per_setting
            .iter()
            .map(|s| s.variance / s.accepted as f64)
            .sum::<f64>()
            .sqrt();
    Ok(SampleSummary {
        shots_requested: n,
        estimate,
        std_error,
        accepted: shots.iter().filter(|s| s.accepted).count() as u64,
        per_setting,
        shots,
    })
}
