//! Timing probes (ignored by default): run with `-- --ignored --nocapture`.

use std::time::Instant;

use ck6::spectral::{converges_to_total_homology, spectral_pages, zigzag_pages, Filtration};
use ck6::{ga, tables};

#[test]
#[ignore]
fn probe_spectral_blocks() {
    for &(a, b) in tables::GA_TABLE.keys() {
        let t = Instant::now();
        let k = ga::block_bicomplex(a, b);
        let build = t.elapsed();
        let total: usize = k.cells().values().sum();
        let t = Instant::now();
        let conv = converges_to_total_homology(&k);
        let tc = t.elapsed();
        let t = Instant::now();
        let pages = spectral_pages(&k, Filtration::First, 3);
        let tp = t.elapsed();
        let t = Instant::now();
        let zz = zigzag_pages(&k);
        let tz = t.elapsed();
        eprintln!(
            "({a},{b}): dim {total}, cells {}, build {build:.2?}, conv {tc:.2?} ({conv}), pages {tp:.2?} ({}), zigzag {tz:.2?} ({})",
            k.cells().len(),
            pages[3].values().sum::<usize>(),
            zz.e3.values().sum::<usize>(),
        );
    }
}

#[test]
#[ignore]
fn probe_compositions() {
    let t = Instant::now();
    let checks = ck6::suite::composition_laws();
    eprintln!("composition_laws total: {:.2?} ({} checks)", t.elapsed(), checks.len());
}
