//! Bandit environments: ground-truth arm means and seeded reward sampling.
//!
//! A [`BanditInstance`] holds the true mean vector and the sub-Gaussian scale
//! of the reward noise. Rewards are drawn per arm from `Normal(mean, sigma)`;
//! the distribution kind is an enumeration so bounded-support variants can be
//! added without touching callers.
//!
//! Randomness is counter-based: a [`RngStream`] is the pair
//! `(master_seed, stream_id)` and expands to an independent ChaCha stream, so
//! trials replay bit-identically in any execution order.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// A 1-based arm index. All user-facing I/O uses 1-based indices; the
/// conversion to vector offsets lives here and nowhere else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arm(usize);

impl Arm {
    /// Builds an arm from its 1-based label. Returns `None` for 0.
    pub fn new(one_based: usize) -> Option<Arm> {
        (one_based >= 1).then_some(Arm(one_based))
    }

    /// Builds an arm from a 0-based vector offset.
    pub fn from_index(index: usize) -> Arm {
        Arm(index + 1)
    }

    /// The 1-based label.
    pub fn get(self) -> usize {
        self.0
    }

    /// The 0-based vector offset.
    pub fn index(self) -> usize {
        self.0 - 1
    }
}

impl std::fmt::Display for Arm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Reward distribution family. Only Gaussian noise is shipped; the scale is
/// interpreted as the standard deviation (which is also the sub-Gaussian
/// scale for a Gaussian).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistributionKind {
    #[default]
    Gaussian,
}

impl std::fmt::Display for DistributionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DistributionKind::Gaussian => write!(f, "gaussian"),
        }
    }
}

/// Ground-truth environment: `K >= 2` arms, their true means, and the
/// common noise scale. Immutable after construction and freely shareable
/// across trial workers.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditInstance {
    means: Vec<f64>,
    sigma: f64,
    kind: DistributionKind,
}

impl BanditInstance {
    pub fn new(means: Vec<f64>, sigma: f64, kind: DistributionKind) -> Result<Self> {
        if means.len() < 2 {
            return Err(Error::InvalidInstance(format!(
                "need at least 2 arms, got {}",
                means.len()
            )));
        }
        if means.iter().any(|m| !m.is_finite()) {
            return Err(Error::InvalidInstance("non-finite arm mean".into()));
        }
        if sigma <= 0.0 || !sigma.is_finite() {
            return Err(Error::InvalidInstance(format!(
                "sigma must be a positive real, got {sigma}"
            )));
        }
        Ok(BanditInstance { means, sigma, kind })
    }

    /// Gaussian instance (the only shipped distribution).
    pub fn gaussian(means: Vec<f64>, sigma: f64) -> Result<Self> {
        Self::new(means, sigma, DistributionKind::Gaussian)
    }

    pub fn arm_count(&self) -> usize {
        self.means.len()
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn distribution_kind(&self) -> DistributionKind {
        self.kind
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    fn check_arm(&self, arm: Arm) -> Result<usize> {
        if arm.get() > self.means.len() {
            return Err(Error::ArmOutOfRange {
                arm: arm.get(),
                arm_count: self.means.len(),
            });
        }
        Ok(arm.index())
    }

    /// True mean of `arm`.
    pub fn mean(&self, arm: Arm) -> Result<f64> {
        Ok(self.means[self.check_arm(arm)?])
    }

    /// Mean difference `mean(i) - mean(j)`.
    pub fn gap(&self, i: Arm, j: Arm) -> Result<f64> {
        Ok(self.means[self.check_arm(i)?] - self.means[self.check_arm(j)?])
    }

    /// Arm with the highest true mean, ties broken by lowest index.
    pub fn best_arm(&self) -> Arm {
        let mut best = 0;
        for (i, &m) in self.means.iter().enumerate() {
            if m > self.means[best] {
                best = i;
            }
        }
        Arm::from_index(best)
    }

    /// Arm with the lowest true mean, ties broken by lowest index.
    pub fn worst_arm(&self) -> Arm {
        let mut worst = 0;
        for (i, &m) in self.means.iter().enumerate() {
            if m < self.means[worst] {
                worst = i;
            }
        }
        Arm::from_index(worst)
    }

    /// One reward draw for `arm`, advancing `rng`.
    pub fn sample_reward<R: Rng + ?Sized>(&self, arm: Arm, rng: &mut R) -> Result<f64> {
        let idx = self.check_arm(arm)?;
        match self.kind {
            DistributionKind::Gaussian => {
                let z: f64 = rng.sample(StandardNormal);
                Ok(self.means[idx] + self.sigma * z)
            }
        }
    }
}

/// Identity of one trial's random stream. Equal pairs replay identical
/// reward sequences; distinct `stream_id`s give independent streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        RngStream {
            master_seed,
            stream_id,
        }
    }

    /// Expands the stream identity into a concrete generator.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }
}
