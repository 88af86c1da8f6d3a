//! Spin-1/2 configurations on the two-leg ladder, sector bases, and
//! elementary bond-operator actions.
//!
//! Bit layout: a ladder with `N` rungs has `2N` sites. Site `(j, A)` maps to
//! bit `j` and site `(j, B)` to bit `N + j`, so a full-space index factorizes
//! as `idx = b·2^N + a` with `a` the leg-A bits and `b` the leg-B bits. The
//! partial trace over leg B is then plain index arithmetic. Bit value 1 means
//! spin up (`S^z = +1/2`).

use crate::error::{Error, Result};

/// Ladder leg label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Leg {
    A,
    B,
}

/// A site of the ladder, addressed by rung index and leg.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SiteIndex {
    pub rung: usize,
    pub leg: Leg,
}

impl SiteIndex {
    pub fn new(rung: usize, leg: Leg) -> Self {
        Self { rung, leg }
    }

    /// Flat bit position of this site for a ladder with `num_rungs` rungs.
    pub fn bit(self, num_rungs: usize) -> usize {
        debug_assert!(self.rung < num_rungs);
        match self.leg {
            Leg::A => self.rung,
            Leg::B => num_rungs + self.rung,
        }
    }

    /// Inverse of [`SiteIndex::bit`].
    pub fn from_bit(bit: usize, num_rungs: usize) -> Self {
        debug_assert!(bit < 2 * num_rungs);
        if bit < num_rungs {
            Self { rung: bit, leg: Leg::A }
        } else {
            Self { rung: bit - num_rungs, leg: Leg::B }
        }
    }
}

/// A spin configuration stored as a bit string; bit = 1 is spin up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinConfig(pub u64);

impl SpinConfig {
    pub fn is_up(self, bit: usize) -> bool {
        self.0 >> bit & 1 == 1
    }

    pub fn flip(self, bit: usize) -> Self {
        Self(self.0 ^ (1 << bit))
    }

    /// Number of up spins.
    pub fn up_count(self) -> u32 {
        self.0.count_ones()
    }

    /// `S^z` value (±1/2) at a bit position.
    pub fn sz_at(self, bit: usize) -> f64 {
        if self.is_up(bit) {
            0.5
        } else {
            -0.5
        }
    }
}

/// Two-site bond operators entering the XXZ ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BondOp {
    /// `S⁺_{site1} S⁻_{site2}`
    PlusMinus,
    /// `S⁻_{site1} S⁺_{site2}`
    MinusPlus,
    /// `S^z_{site1} S^z_{site2}`
    ZZ,
}

/// Apply a bond operator to a configuration; bits address the two sites.
///
/// Returns `None` when the operator annihilates the state. `PlusMinus`
/// requires bit1 down and bit2 up and flips both with amplitude 1;
/// `MinusPlus` is the transpose action; `ZZ` is diagonal with amplitude
/// ±1/4.
pub fn apply_bond(config: SpinConfig, op: BondOp, bit1: usize, bit2: usize) -> Option<(SpinConfig, f64)> {
    debug_assert_ne!(bit1, bit2);
    match op {
        BondOp::PlusMinus => {
            if !config.is_up(bit1) && config.is_up(bit2) {
                Some((config.flip(bit1).flip(bit2), 1.0))
            } else {
                None
            }
        }
        BondOp::MinusPlus => {
            if config.is_up(bit1) && !config.is_up(bit2) {
                Some((config.flip(bit1).flip(bit2), 1.0))
            } else {
                None
            }
        }
        BondOp::ZZ => Some((config, config.sz_at(bit1) * config.sz_at(bit2))),
    }
}

/// Ordered basis of all spin configurations with fixed total `S^z` on a set
/// of `num_sites` spin-1/2 sites.
///
/// `sz_twice` stores `2·S^z_total` so that half-integer sectors of
/// odd-length chains stay exact. States are sorted ascending by bits.
#[derive(Debug, Clone)]
pub struct SectorBasis {
    num_sites: usize,
    sz_twice: i32,
    states: Vec<SpinConfig>,
}

impl SectorBasis {
    /// Enumerate the `S^z` sector of the full ladder with `num_rungs` rungs.
    ///
    /// `sz_twice = 2·S^z_total`; for the 2N-site ladder the total `S^z` is
    /// integral, so `sz_twice` must be even.
    pub fn ladder(num_rungs: usize, sz_twice: i32) -> Result<Self> {
        if num_rungs < 2 {
            return Err(Error::InvalidParams(format!(
                "ladder needs at least 2 rungs, got {num_rungs}"
            )));
        }
        if sz_twice % 2 != 0 {
            return Err(Error::InvalidParams(format!(
                "total S^z of a {}-site ladder is integral; got 2·S^z = {sz_twice}",
                2 * num_rungs
            )));
        }
        Self::enumerate(2 * num_rungs, sz_twice)
    }

    /// Enumerate the `S^z` sector of a single chain of `num_sites` spins.
    pub fn chain(num_sites: usize, sz_twice: i32) -> Result<Self> {
        if num_sites == 0 {
            return Err(Error::InvalidParams("chain needs at least 1 site".into()));
        }
        Self::enumerate(num_sites, sz_twice)
    }

    fn enumerate(num_sites: usize, sz_twice: i32) -> Result<Self> {
        assert!(num_sites <= 32, "bit layout limited to 32 sites");
        // n_up - n_down = 2·S^z and n_up + n_down = num_sites.
        let doubled_up = num_sites as i32 + sz_twice;
        if doubled_up < 0 || doubled_up % 2 != 0 || doubled_up > 2 * num_sites as i32 {
            return Err(Error::InvalidParams(format!(
                "sector 2·S^z = {sz_twice} is not representable on {num_sites} sites"
            )));
        }
        let n_up = (doubled_up / 2) as u32;
        let states: Vec<SpinConfig> = (0u64..1 << num_sites)
            .filter(|bits| bits.count_ones() == n_up)
            .map(SpinConfig)
            .collect();
        Ok(Self { num_sites, sz_twice, states })
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    /// `2·S^z_total` of the sector.
    pub fn sz_twice(&self) -> i32 {
        self.sz_twice
    }

    /// Number of rungs when this basis spans a full ladder.
    pub fn num_rungs(&self) -> usize {
        self.num_sites / 2
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, index: usize) -> SpinConfig {
        self.states[index]
    }

    pub fn states(&self) -> &[SpinConfig] {
        &self.states
    }

    /// Index of a configuration within the sector, if it belongs to it.
    pub fn position(&self, config: SpinConfig) -> Option<usize> {
        self.states.binary_search(&config).ok()
    }
}

/// All `2·S^z` values carried by sectors of the `num_rungs`-rung ladder,
/// ascending.
pub fn ladder_sector_szs(num_rungs: usize) -> Vec<i32> {
    let n = num_rungs as i32;
    (-n..=n).map(|sz| 2 * sz).collect()
}
