//! Verification sweeps shared by the command-line driver and the acceptance
//! tests.
//!
//! Each sweep returns a list of named pass/fail results; nothing here panics
//! on a mathematical mismatch, so callers can render complete reports.  The
//! sweeps deliberately recompute their expectations from the shipped data
//! tables ([`crate::tables`]) or independent oracles (the Weyl dimension
//! formula, the generic spectral-page formula) rather than trusting the
//! engine under test.

use rayon::prelude::*;

use crate::contact::{bracket, ContactElement, BASIS};
use crate::ga;
use crate::homology::{self, image_is_theta_saturated, position, Quadrant};
use crate::linalg::Subspace;
use crate::morphism::{
    nabla_3, nabla_5, nabla_a, nabla_b, nabla_c, nabla_tilde_3, singular_m1a, singular_m3b,
    singular_m5c, Morphism,
};
use crate::scalar::Scalar;
use crate::spectral::{converges_to_total_homology, spectral_pages, zigzag_pages, Filtration};
use crate::tables;
use crate::verma::{act, find_singular_vectors, Slice};
use crate::weights::{find_primitive, weyl_dim, WeightModule};

/// One named verification result.
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

/// True when every check in the list passed.
pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// Super skew-symmetry and super Jacobi for the contact bracket on all
/// monomials with t-exponent ≤ 2.
pub fn bracket_laws() -> Vec<Check> {
    let monos: Vec<ContactElement> = (0..=2u32)
        .flat_map(|m| (0u8..64).map(move |mask| ContactElement::monomial(m, mask)))
        .collect();
    let bad_pairs: usize = monos
        .par_iter()
        .map(|a| {
            let pa = a.parity().unwrap();
            monos
                .iter()
                .filter(|b| {
                    let pb = b.parity().unwrap();
                    let lhs = bracket(a, b);
                    let mut rhs = bracket(b, a);
                    if pa * pb == 1 {
                        rhs = rhs.scaled(&s(-1));
                    }
                    !(&lhs + &rhs).is_zero()
                })
                .count()
        })
        .sum();
    let pairs = Check::new(
        format!("super skew-symmetry on {} monomial pairs", monos.len() * monos.len()),
        bad_pairs == 0,
        format!("{bad_pairs} violations"),
    );

    // All mask triples, over every split of total t-exponent ≤ 2.
    let t_splits = [
        (0, 0, 0),
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (2, 0, 0),
        (0, 2, 0),
        (0, 0, 2),
        (1, 1, 0),
        (1, 0, 1),
        (0, 1, 1),
    ];
    let bad_triples: usize = (0u8..64)
        .into_par_iter()
        .map(|ma| {
            let mut bad = 0;
            for mb in 0u8..64 {
                for mc in 0u8..64 {
                    for (ta, tb, tc) in t_splits {
                        let a = ContactElement::monomial(ta, ma);
                        let b = ContactElement::monomial(tb, mb);
                        let c = ContactElement::monomial(tc, mc);
                        let pa = i64::from(ma.count_ones() % 2);
                        let pb = i64::from(mb.count_ones() % 2);
                        let lhs = bracket(&a, &bracket(&b, &c));
                        let r1 = bracket(&bracket(&a, &b), &c);
                        let mut r2 = bracket(&b, &bracket(&a, &c));
                        if pa * pb == 1 {
                            r2 = r2.scaled(&s(-1));
                        }
                        if !(&lhs - &(&r1 + &r2)).is_zero() {
                            bad += 1;
                        }
                    }
                }
            }
            bad
        })
        .sum();
    let triples = Check::new(
        format!("super Jacobi on {} monomial triples", 64usize * 64 * 64 * t_splits.len()),
        bad_triples == 0,
        format!("{bad_triples} violations"),
    );
    vec![pairs, triples]
}

/// The w-bracket table and the square of the odd generators.
pub fn structure_constants() -> Vec<Check> {
    let b = &*BASIS;
    let theta = ContactElement::theta();
    let mut bad = Vec::new();
    for i in 0..6 {
        for j in 0..6 {
            let br = bracket(&b.w[i], &b.w[j]);
            let expected = match (i.min(j), i.max(j)) {
                (0, 5) => theta.scaled(&s(-4)),
                (1, 4) => theta.scaled(&s(4)),
                (2, 3) => theta.scaled(&s(-4)),
                _ => ContactElement::zero(),
            };
            if !(&br - &expected).is_zero() {
                bad.push(format!("[w{i},w{j}]"));
            }
        }
    }
    let w_check = Check::new(
        "w-bracket structure constants ±4Θ on complementary pairs",
        bad.is_empty(),
        bad.join(", "),
    );
    let mut eta_bad = Vec::new();
    for i in 1..=6u8 {
        // [ξᵢ,ξᵢ] = 2Θ encodes ηᵢ² = Θ in the enveloping algebra.
        let br = bracket(&ContactElement::xi(i), &ContactElement::xi(i));
        if !(&br - &theta.scaled(&s(2))).is_zero() {
            eta_bad.push(format!("ξ{i}"));
        }
    }
    let eta_check =
        Check::new("odd generators square to Θ", eta_bad.is_empty(), eta_bad.join(", "));
    vec![w_check, eta_check]
}

/// Module dimensions against the Weyl dimension formula, label sums ≤ 4.
pub fn dimension_oracle() -> Vec<Check> {
    let mut out = Vec::new();
    for family in ['A', 'B', 'C'] {
        let mut bad = Vec::new();
        for m in 0..=4u32 {
            for n in 0..=(4 - m) {
                let module = homology::module(family, m, n);
                let expected = match family {
                    'A' => weyl_dim(m.into(), n.into(), 0),
                    'B' => weyl_dim(m.into(), 0, n.into()),
                    _ => weyl_dim(0, m.into(), n.into()),
                };
                if module.dim() as u64 != expected {
                    bad.push(format!("({m},{n}): {} ≠ {expected}", module.dim()));
                }
            }
        }
        out.push(Check::new(
            format!("family {family} dimensions match the Weyl formula, label sums ≤ 4"),
            bad.is_empty(),
            bad.join("; "),
        ));
    }
    out
}

/// True when the five raising/supplementary operators all kill the vector.
fn annihilated(v: &crate::verma::VermaElement, module: &WeightModule) -> bool {
    let b = &*BASIS;
    [&b.e[0], &b.e[1], &b.e[2], &b.v1, &b.v2]
        .into_iter()
        .all(|op| act(op, v, module).is_zero())
}

/// The explicit singular vectors, plus the degree-5 solver cross-check.
pub fn singular_vectors() -> Vec<Check> {
    let mut out = Vec::new();

    let bad: Vec<String> = (0..=3u32)
        .flat_map(|n1| (0..=3u32).map(move |n2| (n1, n2)))
        .par_bridge()
        .filter_map(|(n1, n2)| {
            let module = homology::module('A', n1, n2);
            let v = singular_m1a(&module);
            (!annihilated(&v, &module)).then(|| format!("({n1},{n2})"))
        })
        .collect();
    out.push(Check::new(
        "degree-1 vectors of the A family are singular (labels ≤ 3)",
        bad.is_empty(),
        bad.join(", "),
    ));

    let bad: Vec<String> = (0..=3u32)
        .into_par_iter()
        .filter_map(|n1| {
            let module = homology::module('B', n1, 0);
            let v = singular_m3b(&module);
            (!annihilated(&v, &module)).then(|| format!("({n1},0)"))
        })
        .collect();
    out.push(Check::new(
        "degree-3 vectors of the B family edge are singular (n₁ ≤ 3)",
        bad.is_empty(),
        bad.join(", "),
    ));

    let module = homology::module('C', 0, 1);
    let m5 = singular_m5c();
    out.push(Check::new(
        "the degree-5 vector of M_C^{0,1} is singular",
        annihilated(&m5, &module),
        "",
    ));

    let solutions = find_singular_vectors(&module, 5);
    let slice = Slice::new(&module, 5);
    let span = Subspace::from_vectors(
        slice.dim(),
        solutions.iter().map(|v| slice.coords(v)).collect(),
    );
    let contains = span.express(&slice.coords(&m5)).is_some();
    out.push(Check::new(
        "the degree-5 solver on M_C^{0,1} finds exactly the known line",
        solutions.len() == 1 && contains,
        format!("solution space dimension {}, containment {contains}", solutions.len()),
    ));
    out
}

/// Singular-vector placement across the families against the shipped table.
pub fn classification_sweep() -> Vec<Check> {
    tables::SINGULAR_PLACEMENTS
        .iter()
        .map(|(&(family, m, n), degrees)| {
            let module = homology::module(family, m, n);
            let mut bad = Vec::new();
            for d in 1..=5u32 {
                let found = find_singular_vectors(&module, d).len();
                let expected = usize::from(degrees.contains(&d));
                if found != expected {
                    bad.push(format!("degree {d}: found {found}, expected {expected}"));
                }
            }
            Check::new(
                format!("singular vectors of the {family} module ({m},{n}) sit at {degrees:?}"),
                bad.is_empty(),
                bad.join("; "),
            )
        })
        .collect()
}

/// The composition chains that must vanish, with labels small enough to
/// check exhaustively.
fn composition_chains() -> Vec<(String, Morphism, Morphism)> {
    let am = |m, n| homology::module('A', m, n);
    let bm = |m, n| homology::module('B', m, n);
    let cm = |m, n| homology::module('C', m, n);
    let mut chains = Vec::new();
    for n1 in 0..=2 {
        chains.push((
            format!("∇_A∘∇_A from A({n1},2)"),
            nabla_a(am(n1, 2), am(n1, 1)),
            nabla_a(am(n1, 1), am(n1, 0)),
        ));
    }
    chains.push((
        "∇₃∘∇_A from A(2,1)".into(),
        nabla_a(am(2, 1), am(2, 0)),
        nabla_3(am(2, 0), bm(0, 0)),
    ));
    chains.push((
        "∇₅∘∇_A from A(1,1)".into(),
        nabla_a(am(1, 1), am(1, 0)),
        nabla_5(am(1, 0), cm(0, 1)),
    ));
    chains.push((
        "∇_C∘∇₅ from A(1,0)".into(),
        nabla_5(am(1, 0), cm(0, 1)),
        nabla_c(cm(0, 1), cm(1, 1)),
    ));
    for n3 in 0..=2 {
        chains.push((
            format!("∇_C∘∇_C from C(0,{n3})"),
            nabla_c(cm(0, n3), cm(1, n3)),
            nabla_c(cm(1, n3), cm(2, n3)),
        ));
        chains.push((
            format!("∇_B∘∇_B from B(2,{n3})"),
            nabla_b(bm(2, n3), bm(1, n3 + 1)),
            nabla_b(bm(1, n3 + 1), bm(0, n3 + 2)),
        ));
        chains.push((
            format!("∇̃₃∘∇_B from B(1,{n3})"),
            nabla_b(bm(1, n3), bm(0, n3 + 1)),
            nabla_tilde_3(bm(0, n3 + 1), cm(0, n3 + 3)),
        ));
        chains.push((
            format!("∇_C∘∇̃₃ from B(0,{n3})"),
            nabla_tilde_3(bm(0, n3), cm(0, n3 + 2)),
            nabla_c(cm(0, n3 + 2), cm(1, n3 + 2)),
        ));
    }
    chains
}

/// Vanishing of all composable morphism pairs: on generators for every
/// chain (basis-free, so it covers all slices at once), and additionally as
/// literal matrix products on slices ≤ 6 for the chains whose modules all
/// have labels ≤ 2.
pub fn composition_laws() -> Vec<Check> {
    composition_chains()
        .into_par_iter()
        .map(|(name, inner, outer)| {
            let on_generators = outer.composes_to_zero_with(&inner);
            let small = [&inner.source, &inner.target, &outer.target]
                .into_iter()
                .all(|m| m.labels.iter().all(|&l| l <= 2));
            let bad_slice = if small {
                (0..=6u32).find(|&d| {
                    let prod =
                        outer.slice_matrix(d + inner.degree).matmul(&inner.slice_matrix(d));
                    !prod.is_zero()
                })
            } else {
                None
            };
            Check::new(
                format!(
                    "{name} vanishes ({})",
                    if small { "generators and slice matrices" } else { "generators" }
                ),
                on_generators && bad_slice.is_none(),
                match bad_slice {
                    Some(d) => format!("nonzero on slice {d}"),
                    None if !on_generators => "nonzero on a generator".into(),
                    None => String::new(),
                },
            )
        })
        .collect()
}

/// Homology of every tabulated G_A(a,b) block against the shipped table.
pub fn ga_table_sweep() -> Vec<Check> {
    tables::GA_TABLE
        .iter()
        .map(|(&(a, b), entries)| {
            let bad: Vec<String> = entries
                .iter()
                .filter_map(|(&(n1, n2), &want)| {
                    let got = ga::ga_block_homology(a, b, n1, n2);
                    (got != want).then(|| format!("H^{{{n1},{n2}}}: {got} ≠ {want}"))
                })
                .collect();
            Check::new(format!("G_A({a},{b}) homology table"), bad.is_empty(), bad.join("; "))
        })
        .collect()
}

/// Homology of the kernel subcomplex against the shipped table.
pub fn gacirc_sweep() -> Vec<Check> {
    tables::GACIRC
        .iter()
        .map(|(&(n1, n2), &want)| {
            let got = ga::gacirc_homology(n1, n2);
            Check::new(
                format!("G_A° homology at ({n1},{n2})"),
                got == want,
                format!("{got} ≠ {want}"),
            )
        })
        .collect()
}

/// Spectral convergence and the zig-zag/generic page agreement on every
/// tabulated block.
pub fn spectral_sweep() -> Vec<Check> {
    tables::GA_TABLE
        .keys()
        .map(|&(a, b)| {
            let k = ga::block_bicomplex(a, b);
            let mut bad = Vec::new();
            if !converges_to_total_homology(&k) {
                bad.push("E^∞ does not converge to the total homology".to_string());
            }
            let pages = spectral_pages(&k, Filtration::First, 3);
            let zz = zigzag_pages(&k);
            for (&cell, _) in k.cells() {
                if zz.e1[&cell] != pages[1][&cell]
                    || zz.e2[&cell].dim() != pages[2][&cell]
                    || zz.e3[&cell] != pages[3][&cell]
                {
                    bad.push(format!("zig-zag disagrees at cell {cell:?}"));
                }
            }
            Check::new(format!("spectral sequence of G_A({a},{b})"), bad.is_empty(), bad.join("; "))
        })
        .collect()
}

/// Slice profiles of the quadrant complexes against the shipped table.
pub fn quadrant_sweep() -> Vec<Check> {
    tables::VERMA_HOMOLOGY
        .iter()
        .map(|(&(q, m, n), profile)| {
            let quadrant = if q == 'A' { Quadrant::A } else { Quadrant::C };
            let got = position(quadrant, m, n).homology_profile((profile.len() - 1) as u32);
            Check::new(
                format!("quadrant {q} homology profile at ({m},{n})"),
                got == *profile,
                format!("{got:?} ≠ {profile:?}"),
            )
        })
        .collect()
}

/// Θ-saturation of the degree-3 and degree-5 images.
pub fn torsion_sweep() -> Vec<Check> {
    let mut out: Vec<Check> = (0..=3u32)
        .into_par_iter()
        .map(|n1| {
            let m = nabla_3(homology::module('A', n1 + 2, 0), homology::module('B', n1, 0));
            Check::new(
                format!("image of the degree-3 map into B({n1},0) has no Θ-torsion"),
                image_is_theta_saturated(&m, 8),
                "",
            )
        })
        .collect();
    let m = nabla_5(homology::module('A', 1, 0), homology::module('C', 0, 1));
    out.push(Check::new(
        "image of the degree-5 map into C(0,1) has no Θ-torsion",
        image_is_theta_saturated(&m, 8),
        "",
    ));
    out
}

/// Primitive solvability for every basis element of the small A modules.
pub fn primitive_sweep() -> Vec<Check> {
    let grid: Vec<(u32, u32)> =
        (0..=3u32).flat_map(|n1| (0..=(3 - n1)).map(move |n2| (n1, n2))).collect();
    grid.into_par_iter()
        .map(|(n1, n2)| {
            let module = homology::module('A', n1, n2);
            let mut bad = Vec::new();
            let mut avoided = 0usize;
            for (j, p) in module.basis.iter().enumerate() {
                for sv in 1..=3usize {
                    if find_primitive(p, sv, None).is_err() {
                        bad.push(format!("basis {j}, s={sv}"));
                    }
                    for a in 1..=3usize {
                        let va = [6, 8, 9][a - 1];
                        if a == sv || p.iter().any(|(m, _)| m.0[va] != 0) {
                            continue;
                        }
                        avoided += 1;
                        if find_primitive(p, sv, Some(a)).is_err() {
                            bad.push(format!("basis {j}, s={sv}, avoiding {a}"));
                        }
                    }
                }
            }
            Check::new(
                format!("primitives exist across V_A({n1},{n2}), {avoided} avoided-variable cases"),
                bad.is_empty(),
                bad.join("; "),
            )
        })
        .collect()
}
