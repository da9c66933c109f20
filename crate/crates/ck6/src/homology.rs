//! Slice-by-slice homology of the quadrant complexes of finite Verma modules.
//!
//! The degenerate modules of the A and C families sit in infinite complexes
//! whose maps are the morphisms of [`crate::morphism`].  At a position of
//! quadrant A the incoming map is always ∇_A; the outgoing map is ∇_A while
//! n₂ ≥ 1 and, along the bottom row, ∇₃ (n₁ ≥ 2), ∇₅ (n₁ = 1) or zero
//! (n₁ = 0).  At a position of quadrant C the outgoing map is always ∇_C;
//! the incoming map is ∇_C while n₂ ≥ 1 and, along the left column, ∇̃₃
//! (n₃ ≥ 2), ∇₅ (n₃ = 1) or zero (n₃ = 0).
//!
//! Because every morphism here raises the PBW degree by a fixed amount and
//! the modules are graded by finitely many slices, homology is computed one
//! slice at a time: dim H_d = dim Ker(out at slice d) − rank(in landing in
//! slice d), after checking that the two matrices compose to zero.

use std::collections::BTreeMap;
use std::sync::{Arc, LazyLock, Mutex};

use crate::linalg::{ExactMatrix, Subspace};
use crate::morphism::{nabla_3, nabla_5, nabla_a, nabla_c, nabla_tilde_3, Morphism};
use crate::verma::{PbwMonomial, Slice, VermaElement};
use crate::weights::{module_a, module_b, module_c, WeightModule};

/// Which quadrant complex a position belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Quadrant {
    A,
    C,
}

static MODULE_CACHE: LazyLock<Mutex<BTreeMap<(char, u32, u32), Arc<WeightModule>>>> =
    LazyLock::new(|| Mutex::new(BTreeMap::new()));

/// Shared construction of the family modules, memoized per label pair.
pub fn module(family: char, m: u32, n: u32) -> Arc<WeightModule> {
    let mut cache = MODULE_CACHE.lock().unwrap();
    cache
        .entry((family, m, n))
        .or_insert_with(|| {
            Arc::new(match family {
                'A' => module_a(m, n),
                'B' => module_b(m, n),
                'C' => module_c(m, n),
                _ => panic!("unknown family {family}"),
            })
        })
        .clone()
}

/// One position of a quadrant complex with its incoming and outgoing maps.
pub struct Position {
    pub module: Arc<WeightModule>,
    pub incoming: Option<Morphism>,
    pub outgoing: Option<Morphism>,
}

/// Builds the maps around the (m,n) position of the given quadrant.
pub fn position(quadrant: Quadrant, m: u32, n: u32) -> Position {
    match quadrant {
        Quadrant::A => {
            let (n1, n2) = (m, n);
            let here = module('A', n1, n2);
            let incoming = Some(nabla_a(module('A', n1, n2 + 1), here.clone()));
            let outgoing = if n2 >= 1 {
                Some(nabla_a(here.clone(), module('A', n1, n2 - 1)))
            } else if n1 >= 2 {
                Some(nabla_3(here.clone(), module('B', n1 - 2, 0)))
            } else if n1 == 1 {
                Some(nabla_5(here.clone(), module('C', 0, 1)))
            } else {
                None
            };
            Position { module: here, incoming, outgoing }
        }
        Quadrant::C => {
            let (n2, n3) = (m, n);
            let here = module('C', n2, n3);
            let outgoing = Some(nabla_c(here.clone(), module('C', n2 + 1, n3)));
            let incoming = if n2 >= 1 {
                Some(nabla_c(module('C', n2 - 1, n3), here.clone()))
            } else if n3 >= 2 {
                Some(nabla_tilde_3(module('B', 0, n3 - 2), here.clone()))
            } else if n3 == 1 {
                Some(nabla_5(module('A', 1, 0), here.clone()))
            } else {
                None
            };
            Position { module: here, incoming, outgoing }
        }
    }
}

impl Position {
    /// The matrix landing in slice d from the incoming map, if any part does.
    fn incoming_matrix(&self, d: u32) -> Option<ExactMatrix> {
        let m = self.incoming.as_ref()?;
        let src = d.checked_sub(m.degree)?;
        Some(m.slice_matrix(src))
    }

    /// dim H at slice degree d of this position.
    pub fn homology_dim(&self, d: u32) -> usize {
        let dim = Slice::new(&self.module, d).dim();
        let out = self.outgoing.as_ref().map(|m| m.slice_matrix(d));
        let inc = self.incoming_matrix(d);
        if let (Some(o), Some(i)) = (&out, &inc) {
            assert!(o.matmul(i).is_zero(), "complex maps do not compose to zero");
        }
        let out_rank = self.outgoing.as_ref().map_or(0, |m| slice_rank(m, d, out.unwrap()));
        let inc_rank = match (&self.incoming, inc) {
            (Some(m), Some(i)) => slice_rank(m, d - m.degree, i),
            _ => 0,
        };
        dim - out_rank - inc_rank
    }

    /// dim H for every slice degree 0..=d_max.
    pub fn homology_profile(&self, d_max: u32) -> Vec<usize> {
        (0..=d_max).map(|d| self.homology_dim(d)).collect()
    }
}

/// Rank of a morphism on the source slice of degree d.  The maps commute
/// with the sl(4) action, so the matrix is block-diagonal over weights and
/// the rank is a sum of small per-weight ranks.
fn slice_rank(m: &Morphism, d: u32, matrix: ExactMatrix) -> usize {
    let row_keys = Slice::new(&m.target, d + m.degree).weights();
    let col_keys = Slice::new(&m.source, d).weights();
    matrix.rank_blocked(&row_keys, &col_keys)
}

/// Matrix of multiplication by Θ from slice d to slice d+2 of a module:
/// Θ·(Θ^k w_S ⊗ f) = Θ^{k+1} w_S ⊗ f.
pub fn theta_slice_matrix(module: &WeightModule, d: u32) -> ExactMatrix {
    let src = Slice::new(module, d);
    let tgt = Slice::new(module, d + 2);
    let mut trips = Vec::new();
    for col in 0..src.dim() {
        let (m, j) = src.label(col);
        let up = VermaElement::term(
            PbwMonomial { k: m.k + 1, mask: m.mask },
            module.basis[j].clone(),
        );
        for (row, c) in tgt.coords(&up) {
            trips.push((row, col, c));
        }
    }
    ExactMatrix::from_triplets(tgt.dim(), src.dim(), trips)
}

/// Image of the morphism inside the target's slice d.
fn image_in_slice(m: &Morphism, d: u32) -> Subspace {
    match d.checked_sub(m.degree) {
        Some(src) => m.slice_matrix(src).column_space(),
        None => Subspace::zero(Slice::new(&m.target, d).dim()),
    }
}

/// The associated-graded slice matrix of a morphism under the Θ-length
/// filtration: only the entries that preserve the Θ-exponent survive.
pub fn gr_slice_matrix(m: &Morphism, d: u32) -> ExactMatrix {
    let src = Slice::new(&m.source, d);
    let tgt = Slice::new(&m.target, d + m.degree);
    let full = m.slice_matrix(d);
    let mut trips = Vec::new();
    for r in 0..full.rows() {
        let tk = tgt.label(r).0.k;
        for (c, v) in full.row(r) {
            if src.label(*c).0.k == tk {
                trips.push((r, *c, v.clone()));
            }
        }
    }
    ExactMatrix::from_triplets(full.rows(), full.cols(), trips)
}

/// Checks that the image of the morphism is saturated with respect to Θ up
/// to slice d_max: whenever Θ·v lies in the image (in slices ≤ d_max), so
/// does v.
pub fn image_is_theta_saturated(m: &Morphism, d_max: u32) -> bool {
    (0..=d_max.saturating_sub(2)).all(|d| {
        let im = image_in_slice(m, d);
        let im_up = image_in_slice(m, d + 2);
        let pre = theta_slice_matrix(&m.target, d).preimage(&im_up);
        im.contains(&pre)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrant_a_origin_has_a_unit_in_degree_zero() {
        let p = position(Quadrant::A, 0, 0);
        assert_eq!(p.homology_dim(0), 1);
        for d in 1..=4 {
            assert_eq!(p.homology_dim(d), 0, "degree {d}");
        }
    }

    #[test]
    fn quadrant_a_vanishes_off_the_origin_in_low_slices() {
        for &(n1, n2) in &[(1u32, 0u32), (0, 1), (1, 1), (2, 0)] {
            let p = position(Quadrant::A, n1, n2);
            for d in 0..=4 {
                assert_eq!(p.homology_dim(d), 0, "position ({n1},{n2}), degree {d}");
            }
        }
    }

    #[test]
    fn quadrant_c_unit_sits_at_one_zero() {
        let p = position(Quadrant::C, 1, 0);
        let profile = p.homology_profile(6);
        assert_eq!(profile, vec![0, 0, 0, 0, 0, 1, 0]);
    }

    #[test]
    fn quadrant_c_vanishes_at_the_corner_and_above() {
        for &(n2, n3) in &[(0u32, 0u32), (0, 1), (1, 1)] {
            let p = position(Quadrant::C, n2, n3);
            for d in 0..=5 {
                assert_eq!(p.homology_dim(d), 0, "position ({n2},{n3}), degree {d}");
            }
        }
    }

    #[test]
    fn graded_complex_homology_factors_through_the_exterior_one() {
        // H(Gr M_A) ≅ S(g₋₂) ⊗ H(G_A) slice by slice: the Θ-power carries
        // degree two, the exterior class its wedge degree.
        for &(n1, n2) in &[(0u32, 0u32), (0, 1), (1, 1)] {
            let by_degree = crate::ga::ga_homology_by_degree(n1, n2);
            let inc = nabla_a(module('A', n1, n2 + 1), module('A', n1, n2));
            let out =
                (n2 > 0).then(|| nabla_a(module('A', n1, n2), module('A', n1, n2 - 1)));
            for d in 0..=4u32 {
                let dim = Slice::new(&module('A', n1, n2), d).dim();
                let in_m = (d >= 1).then(|| gr_slice_matrix(&inc, d - 1));
                let out_m = out.as_ref().map(|m| gr_slice_matrix(m, d));
                if let (Some(o), Some(i)) = (&out_m, &in_m) {
                    assert!(o.matmul(i).is_zero());
                }
                let gr_dim = dim
                    - out_m.map_or(0, |m| m.rank())
                    - in_m.map_or(0, |m| m.rank());
                let expected: usize = (0..=d / 2)
                    .filter_map(|k| by_degree.get((d - 2 * k) as usize))
                    .sum();
                assert_eq!(gr_dim, expected, "position ({n1},{n2}), degree {d}");
            }
        }
    }

    #[test]
    fn theta_multiplication_is_injective_on_slices() {
        let m = module('B', 1, 0);
        for d in 0..=4 {
            let t = theta_slice_matrix(&m, d);
            assert_eq!(t.rank(), t.cols());
        }
    }

    #[test]
    fn degree_three_image_has_no_theta_torsion() {
        let m = nabla_3(module('A', 2, 0), module('B', 0, 0));
        assert!(image_is_theta_saturated(&m, 6));
    }

    #[test]
    fn degree_five_image_has_no_theta_torsion() {
        let m = nabla_5(module('A', 1, 0), module('C', 0, 1));
        assert!(image_is_theta_saturated(&m, 6));
    }
}
