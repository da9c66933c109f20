//! Expected-value tables shipped as data files.
//!
//! The JSON files under `data/` hold the reference dimensions that the
//! engine is checked against: the homology of the blocks G_A(a,b), the
//! placement of singular vectors across the A/B/C families, the slice
//! profiles of the quadrant complexes, and the G_{A°} table.  They are
//! regenerated by `scripts/gen_tables.py`, a deliberately separate
//! transcription of the same case lists.

use std::collections::BTreeMap;
use std::sync::LazyLock;

use serde::Deserialize;

#[derive(Deserialize)]
struct GaTableFile {
    blocks: Vec<GaBlock>,
}

#[derive(Deserialize)]
struct GaBlock {
    a: i64,
    b: i64,
    entries: Vec<GaEntry>,
}

#[derive(Deserialize)]
struct GaEntry {
    n1: u32,
    n2: u32,
    dim: usize,
}

#[derive(Deserialize)]
struct SingularFile {
    rows: Vec<SingularRow>,
}

#[derive(Deserialize)]
struct SingularRow {
    family: String,
    m: u32,
    n: u32,
    degrees: Vec<u32>,
}

#[derive(Deserialize)]
struct VermaFile {
    rows: Vec<VermaRow>,
}

#[derive(Deserialize)]
struct VermaRow {
    quadrant: String,
    m: u32,
    n: u32,
    profile: Vec<usize>,
}

#[derive(Deserialize)]
struct GacircFile {
    rows: Vec<GacircRow>,
}

#[derive(Deserialize)]
struct GacircRow {
    n1: u32,
    n2: u32,
    dim: usize,
}

/// Expected dim H^{n₁,n₂}(G_A(a,b)) keyed by ((a,b),(n₁,n₂)).
pub static GA_TABLE: LazyLock<BTreeMap<(i64, i64), BTreeMap<(u32, u32), usize>>> =
    LazyLock::new(|| {
        let file: GaTableFile =
            serde_json::from_str(include_str!("../data/ga_table.json")).unwrap();
        file.blocks
            .into_iter()
            .map(|b| {
                let entries =
                    b.entries.into_iter().map(|e| ((e.n1, e.n2), e.dim)).collect();
                ((b.a, b.b), entries)
            })
            .collect()
    });

/// Expected singular-vector degrees (within 1..=5) keyed by (family, m, n).
pub static SINGULAR_PLACEMENTS: LazyLock<BTreeMap<(char, u32, u32), Vec<u32>>> =
    LazyLock::new(|| {
        let file: SingularFile =
            serde_json::from_str(include_str!("../data/singular_placements.json")).unwrap();
        file.rows
            .into_iter()
            .map(|r| ((r.family.chars().next().unwrap(), r.m, r.n), r.degrees))
            .collect()
    });

/// Expected slice profiles (degrees 0..=8) keyed by (quadrant, m, n).
pub static VERMA_HOMOLOGY: LazyLock<BTreeMap<(char, u32, u32), Vec<usize>>> =
    LazyLock::new(|| {
        let file: VermaFile =
            serde_json::from_str(include_str!("../data/verma_homology_expected.json")).unwrap();
        file.rows
            .into_iter()
            .map(|r| ((r.quadrant.chars().next().unwrap(), r.m, r.n), r.profile))
            .collect()
    });

/// Expected dim H^{n₁,n₂}(G_{A°}) on the tested grid.
pub static GACIRC: LazyLock<BTreeMap<(u32, u32), usize>> = LazyLock::new(|| {
    let file: GacircFile =
        serde_json::from_str(include_str!("../data/gacirc_expected.json")).unwrap();
    file.rows.into_iter().map(|r| ((r.n1, r.n2), r.dim)).collect()
});
