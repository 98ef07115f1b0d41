//! Lattice inputs: a JSON file, or `@kind[:p1:p2...]` for a built-in fixture.

use std::fs;

use latlab_core::fixtures::gen_fixture;
use latlab_core::{FiniteLattice, LatticeFile};

pub struct Loaded {
    pub lattice: FiniteLattice,
    /// Bytes the report digest is computed from.
    pub raw: Vec<u8>,
}

pub fn load_lattice(arg: &str) -> Result<Loaded, String> {
    if let Some(spec) = arg.strip_prefix('@') {
        let mut parts = spec.split(':');
        let kind = parts.next().unwrap_or_default();
        let params = parts
            .map(|p| p.parse::<u64>().map_err(|_| format!("bad fixture parameter {p:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        let kind = match kind {
            "m5" => "diamond_m5",
            "n5" => "pentagon_n5",
            "ladder" => "ladder_truncation",
            k => k,
        };
        let lattice = gen_fixture(kind, &params).map_err(|e| e.to_string())?;
        return Ok(Loaded { raw: lattice.to_file().to_json().into_bytes(), lattice });
    }
    let raw = fs::read(arg).map_err(|e| format!("{arg}: {e}"))?;
    let text = String::from_utf8(raw.clone()).map_err(|_| format!("{arg}: not UTF-8"))?;
    let file = LatticeFile::from_json(&text).map_err(|e| format!("{arg}: {e}"))?;
    let lattice = file.build().map_err(|e| format!("{arg}: {e}"))?;
    Ok(Loaded { lattice, raw })
}

pub fn read_text(arg: &str) -> Result<(String, Vec<u8>), String> {
    let raw = fs::read(arg).map_err(|e| format!("{arg}: {e}"))?;
    let text = String::from_utf8(raw.clone()).map_err(|_| format!("{arg}: not UTF-8"))?;
    Ok((text, raw))
}
