//! Default limits and the seed used by every sampled check.

/// Seed for all sampled checks unless overridden.
pub const DEFAULT_SEED: u64 = 3_405_691_582;
/// Environment variable that overrides [`DEFAULT_SEED`].
pub const SEED_ENV: &str = "OMLOQ_SEED";
/// Largest number of candidate maps `enumerate_lin` will examine.
pub const DEFAULT_LIN_CAP: u64 = 2_000_000;
/// Largest test monoid that will be generated.
pub const DEFAULT_MONOID_CAP: usize = 100_000;
/// Lattices up to this size get exhaustive subset quantifiers.
pub const DEFAULT_EXHAUSTIVE_THRESHOLD: usize = 12;
/// Seeded random subsets added to the structured sample.
pub const DEFAULT_SAMPLES: usize = 200;

/// Limits shared by the verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub seed: u64,
    pub lin_cap: u64,
    pub monoid_cap: usize,
    pub exhaustive_threshold: usize,
    pub samples: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            seed: DEFAULT_SEED,
            lin_cap: DEFAULT_LIN_CAP,
            monoid_cap: DEFAULT_MONOID_CAP,
            exhaustive_threshold: DEFAULT_EXHAUSTIVE_THRESHOLD,
            samples: DEFAULT_SAMPLES,
        }
    }
}

impl Limits {
    /// Defaults with the seed taken from `OMLOQ_SEED` when it parses.
    pub fn from_env() -> Self {
        Limits {
            seed: seed_from_env(),
            ..Limits::default()
        }
    }
}

pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}
