use serde::{Deserialize, Serialize};

/// Size limits for the exhaustive parts of the crate.
///
/// Everything here is a desk-scale guard: the algorithms are exact and the
/// caps only decide when to give up with `CapExceeded` instead of grinding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    /// Maximum number of elements a closure enumeration may produce.
    pub closure: usize,
    /// Maximum number of products enumerated when forming a set `H * K`.
    pub product: usize,
    /// Maximum number of elements in a materialized geometry.
    pub geometry: usize,
    /// Maximum rank of a coset system before subset sweeps are refused.
    pub rank_guard: usize,
    /// Maximum group order for whole-group element enumeration
    /// (transversals, automorphism tables, involution sweeps).
    pub enumeration: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            closure: 2_000_000,
            product: 2_000_000,
            geometry: 20_000,
            rank_guard: 12,
            enumeration: 2_000_000,
        }
    }
}

impl Caps {
    /// Parse overrides in the `GEOFORGE_CAPS` format:
    /// comma-separated `key=value` pairs, keys among
    /// `closure`, `product`, `geometry`, `rank`, `enumeration`.
    pub fn parse_overrides(&self, text: &str) -> Result<Caps, String> {
        let mut caps = *self;
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got {part:?}"))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|e| format!("bad value in {part:?}: {e}"))?;
            match key.trim() {
                "closure" => caps.closure = value,
                "product" => caps.product = value,
                "geometry" => caps.geometry = value,
                "rank" | "rank_guard" => caps.rank_guard = value,
                "enumeration" => caps.enumeration = value,
                other => return Err(format!("unknown cap {other:?}")),
            }
        }
        Ok(caps)
    }

    /// Caps with the environment override `GEOFORGE_CAPS` applied, if set.
    pub fn from_env() -> Caps {
        let caps = Caps::default();
        match std::env::var("GEOFORGE_CAPS") {
            Ok(text) => caps.parse_overrides(&text).unwrap_or(caps),
            Err(_) => caps,
        }
    }

    /// Process-wide caps: the environment override, read once.
    pub fn global() -> Caps {
        static GLOBAL: std::sync::OnceLock<Caps> = std::sync::OnceLock::new();
        *GLOBAL.get_or_init(Caps::from_env)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn override_parsing() {
        let caps = Caps::default();
        let caps = caps.parse_overrides("closure=100, geometry=7").unwrap();
        assert_eq!(caps.closure, 100);
        assert_eq!(caps.geometry, 7);
        assert_eq!(caps.rank_guard, Caps::default().rank_guard);
        assert!(caps.parse_overrides("bogus=1").is_err());
        assert!(caps.parse_overrides("closure=x").is_err());
    }
}
