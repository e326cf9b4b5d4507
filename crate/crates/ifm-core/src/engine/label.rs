//! Basis labels: photon mode ⊗ atom spin boxes.

use std::fmt;

/// Where the photon is: source, interferometer arms `u`/`v`, output ports
/// `c`/`d`, transferred into an atom's absorption channel, or stopped by the
/// obstacle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PhotonMode {
    Source,
    U,
    V,
    C,
    D,
    /// Absorbed by atom `j` (1-based).
    Absorbed(usize),
    Blocked,
}

impl fmt::Display for PhotonMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhotonMode::Source => write!(f, "source"),
            PhotonMode::U => write!(f, "u"),
            PhotonMode::V => write!(f, "v"),
            PhotonMode::C => write!(f, "c"),
            PhotonMode::D => write!(f, "d"),
            PhotonMode::Absorbed(j) => write!(f, "absorbed({j})"),
            PhotonMode::Blocked => write!(f, "blocked"),
        }
    }
}

/// One atom's spin box in the computational (position) basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Spin {
    ZPlus,
    ZMinus,
}

/// Spin boxes of all atoms, packed one bit per atom (bit set ⇔ `Z+`).
/// The atom count lives on the owning state; configurations are only
/// meaningful together with it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SpinConfig(u32);

impl SpinConfig {
    pub const MAX_ATOMS: usize = 24;

    pub fn from_bits(bits: u32) -> Self {
        SpinConfig(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Spin of atom `atom` (1-based).
    pub fn get(self, atom: usize) -> Spin {
        if self.0 >> (atom - 1) & 1 == 1 {
            Spin::ZPlus
        } else {
            Spin::ZMinus
        }
    }

    pub fn with(self, atom: usize, spin: Spin) -> Self {
        let bit = 1u32 << (atom - 1);
        match spin {
            Spin::ZPlus => SpinConfig(self.0 | bit),
            Spin::ZMinus => SpinConfig(self.0 & !bit),
        }
    }

    pub fn count_plus(self, n_atoms: usize) -> u32 {
        (self.0 & mask(n_atoms)).count_ones()
    }

    /// `+-+` rendering, atom 1 first.
    pub fn render(self, n_atoms: usize) -> String {
        (1..=n_atoms)
            .map(|a| match self.get(a) {
                Spin::ZPlus => '+',
                Spin::ZMinus => '-',
            })
            .collect()
    }
}

pub(crate) fn mask(n_atoms: usize) -> u32 {
    if n_atoms == 0 {
        0
    } else {
        u32::MAX >> (32 - n_atoms)
    }
}

/// A full tensor-product basis label: photon mode plus every atom's spin box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel {
    pub mode: PhotonMode,
    pub spins: SpinConfig,
}

impl BasisLabel {
    pub fn new(mode: PhotonMode, spins: SpinConfig) -> Self {
        BasisLabel { mode, spins }
    }

    pub fn render(&self, n_atoms: usize) -> String {
        format!("photon={} spins={}", self.mode, self.spins.render(n_atoms))
    }
}
