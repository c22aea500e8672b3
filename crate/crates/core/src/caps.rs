use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size limits for table-backed structures and exhaustive searches.
///
/// Overridable through `USMOD_CAPS`, e.g. `USMOD_CAPS="ring=64,module=128,homs=1000000"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_ring: usize,
    pub max_module: usize,
    pub max_homs: u128,
    pub max_lattice: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_ring: 64,
            max_module: 128,
            max_homs: 1 << 20,
            max_lattice: 1 << 14,
        }
    }
}

static GLOBAL: OnceLock<Caps> = OnceLock::new();

impl Caps {
    pub fn parse(spec: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected key=value, got `{part}`")))?;
            let value: u128 = value
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad number in `{part}`")))?;
            match key.trim() {
                "ring" => caps.max_ring = value as usize,
                "module" => caps.max_module = value as usize,
                "homs" => caps.max_homs = value,
                "lattice" => caps.max_lattice = value as usize,
                other => return Err(Error::Config(format!("unknown cap `{other}`"))),
            }
        }
        Ok(caps)
    }

    pub fn from_env() -> Result<Caps> {
        match std::env::var("USMOD_CAPS") {
            Ok(s) => Caps::parse(&s),
            Err(_) => Ok(Caps::default()),
        }
    }

    /// Process-wide caps, read once from the environment. A malformed
    /// `USMOD_CAPS` falls back to the defaults; the CLI validates it eagerly.
    pub fn global() -> &'static Caps {
        GLOBAL.get_or_init(|| Caps::from_env().unwrap_or_default())
    }

    pub fn install_global(caps: Caps) -> bool {
        GLOBAL.set(caps).is_ok()
    }
}
