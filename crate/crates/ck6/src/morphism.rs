//! Morphisms between finite Verma modules: the general construction from a
//! singular vector, the explicit degree-1 and degree-3 differentials, the
//! degree-5 exceptional map, and their slice matrices.

use crate::contact::BASIS;
use crate::linalg::{ExactMatrix, SRow};
use crate::poly::PolyVector;
use crate::scalar::Scalar;
use crate::verma::{
    act, pbw_mul, pbw_mul_monomials, u_add_term, u_monomial, u_mul_verma, PbwMonomial, Slice,
    UElement, VermaElement,
};
use crate::weights::WeightModule;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

fn u_scaled(u: &UElement, c: &Scalar) -> UElement {
    if c.is_zero() {
        return UElement::new();
    }
    u.iter().map(|(m, s)| (*m, s * c)).collect()
}

fn u_sum(terms: &[(UElement, Scalar)]) -> UElement {
    let mut out = UElement::new();
    for (u, c) in terms {
        for (m, s) in u {
            u_add_term(&mut out, *m, s * c);
        }
    }
    out
}

/// Product w_{b₀}·w_{b₁}·… of w-letters, left to right.
fn u_word(bits: &[u8]) -> UElement {
    let mut out = u_monomial(0, 0);
    for b in bits {
        out = pbw_mul(&out, &u_monomial(0, 1 << b));
    }
    out
}

/// A morphism of induced modules, determined by the images of 1⊗basis[j];
/// it acts by Φ(u⊗f_j) = u·Φ(1⊗f_j).
pub struct Morphism {
    pub source: Arc<WeightModule>,
    pub target: Arc<WeightModule>,
    /// Common PBW degree of the images.
    pub degree: u32,
    images: Vec<VermaElement>,
    /// Images with polynomial parts expressed in the target basis, built on
    /// first use; slice matrices then need only PBW straightening per column.
    expressed: OnceLock<Vec<Vec<(PbwMonomial, SRow)>>>,
}

impl Morphism {
    /// The morphism sending the source highest weight vector to the given
    /// singular vector of the target; all other images follow by lowering.
    pub fn from_singular(
        source: Arc<WeightModule>,
        target: Arc<WeightModule>,
        singular: &VermaElement,
    ) -> Self {
        let degree = singular.pbw_degree().expect("singular vector must be homogeneous");
        let hw_weight = source.hw().sl4_weight().expect("highest weight vector");
        assert_eq!(
            singular.sl4_weight(),
            Some(hw_weight),
            "singular vector weight must match the source highest weight"
        );
        let expect_t = &target.t_scalar - &Scalar::from_int(degree as i64);
        assert_eq!(source.t_scalar, expect_t, "central characters do not match");
        let mut index: BTreeMap<&[usize], usize> = BTreeMap::new();
        let mut images: Vec<VermaElement> = vec![singular.clone()];
        index.insert(&source.words[0], 0);
        for j in 1..source.basis.len() {
            let word = &source.words[j];
            let parent = index[&word[..word.len() - 1]];
            let fi = word[word.len() - 1];
            images.push(act(&BASIS.f[fi - 1], &images[parent], &target));
            index.insert(word, j);
        }
        Morphism { source, target, degree, images, expressed: OnceLock::new() }
    }

    /// The morphism Σᵢ uᵢ⊗Dᵢ where each Dᵢ is a product of coordinate
    /// derivatives: Φ(u⊗f) = Σᵢ u·uᵢ ⊗ Dᵢf.
    pub fn from_operator(
        source: Arc<WeightModule>,
        target: Arc<WeightModule>,
        terms: &[(UElement, Vec<usize>)],
    ) -> Self {
        let images: Vec<VermaElement> = source
            .basis
            .iter()
            .map(|f| {
                let mut img = VermaElement::zero();
                for (u, vars) in terms {
                    let mut d = f.clone();
                    for v in vars {
                        d = d.partial(*v);
                    }
                    if d.is_zero() {
                        continue;
                    }
                    for (m, c) in u {
                        img.add_term(*m, d.scaled(c));
                    }
                }
                img
            })
            .collect();
        let degree = terms[0]
            .0
            .keys()
            .next()
            .expect("operator terms must be nonzero")
            .degree();
        Morphism { source, target, degree, images, expressed: OnceLock::new() }
    }

    /// Image of 1⊗basis[j].
    pub fn image(&self, j: usize) -> &VermaElement {
        &self.images[j]
    }

    pub fn apply(&self, v: &VermaElement) -> VermaElement {
        let mut out = VermaElement::zero();
        for (m, f) in v.iter() {
            let coords = self
                .source
                .express(f)
                .expect("element does not lie in the source module");
            let u = u_monomial(m.k, m.mask);
            for (j, c) in coords.into_iter().enumerate() {
                if c.is_zero() || self.images[j].is_zero() {
                    continue;
                }
                out = &out + &u_mul_verma(&u, &self.images[j]).scaled(&c);
            }
        }
        out
    }

    /// The images with every polynomial part expressed in the target basis,
    /// computed once per morphism.
    fn expressed_images(&self) -> &Vec<Vec<(PbwMonomial, SRow)>> {
        self.expressed.get_or_init(|| {
            self.images
                .par_iter()
                .map(|img| {
                    img.iter()
                        .map(|(m, f)| {
                            let coords = self
                                .target
                                .express(f)
                                .expect("image escapes the target module");
                            let srow: SRow = coords
                                .into_iter()
                                .enumerate()
                                .filter(|(_, c)| !c.is_zero())
                                .collect();
                            (*m, srow)
                        })
                        .collect()
                })
                .collect()
        })
    }

    /// Matrix of the morphism from source slice d to target slice d+degree,
    /// with columns indexed by the source slice coordinates.
    pub fn slice_matrix(&self, d: u32) -> ExactMatrix {
        let src = Slice::new(&self.source, d);
        let tgt = Slice::new(&self.target, d + self.degree);
        let tdim = self.target.dim();
        let expressed = self.expressed_images();
        let cols: Vec<SRow> = (0..src.dim())
            .into_par_iter()
            .map(|col| {
                let (m, j) = src.label(col);
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (mi, srow) in &expressed[j] {
                    for (mp, c) in pbw_mul_monomials(m, *mi) {
                        let o = tgt.offset[&mp] * tdim;
                        for (jt, cj) in srow {
                            let entry = acc.entry(o + jt).or_insert_with(Scalar::zero);
                            *entry = &*entry + &(&c * cj);
                        }
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            })
            .collect();
        let mut triplets = Vec::new();
        for (col, rows) in cols.into_iter().enumerate() {
            for (r, c) in rows {
                triplets.push((r, col, c));
            }
        }
        ExactMatrix::from_triplets(tgt.dim(), src.dim(), triplets)
    }

    /// True when the composition self∘inner vanishes identically.
    pub fn composes_to_zero_with(&self, inner: &Morphism) -> bool {
        (0..inner.images.len())
            .into_par_iter()
            .all(|j| self.apply(&inner.images[j]).is_zero())
    }
}

/// The degree-1 singular vector w₁₂ ⊗ x₁^{n₁}x₁₂^{n₂} of a first-quadrant module.
pub fn singular_m1a(module: &WeightModule) -> VermaElement {
    VermaElement::term(PbwMonomial { k: 0, mask: 0b1 }, module.hw().clone())
}

/// The degree-3 singular vector w₁₂w₁₃w₁₄ ⊗ x₁^{n₁} of a second-quadrant
/// module with n₃ = 0.
pub fn singular_m3b(module: &WeightModule) -> VermaElement {
    assert_eq!(module.labels[1], 0);
    assert_eq!(module.labels[2], 0);
    VermaElement::term(PbwMonomial { k: 0, mask: 0b111 }, module.hw().clone())
}

/// The degree-5 singular vector of the third-quadrant module with labels (0,1).
pub fn singular_m5c() -> VermaElement {
    let s = Scalar::from_int;
    let th = |mask: u8| u_monomial(1, mask);
    let xstar = |a: usize| PolyVector::variable(9 + a);
    let quarter = Scalar::ratio(1, 4);
    let sixteenth = Scalar::ratio(1, 16);

    let mut parts: Vec<(UElement, PolyVector)> = Vec::new();
    parts.push((u_monomial(2, 0b001), xstar(2)));
    parts.push((u_monomial(2, 0b010), xstar(3)));
    parts.push((u_monomial(2, 0b100), xstar(4)));
    parts.push((pbw_mul(&th(0), &u_word(&[0, 1, 2])), xstar(1)));

    // (Θw₁₂/4)(w₂₃w₁₄ − w₁₄w₂₃ + w₁₃w₂₄ − w₂₄w₁₃) ⊗ x₂*
    let inner = u_sum(&[
        (u_word(&[3, 2]), s(1)),
        (u_word(&[2, 3]), s(-1)),
        (u_word(&[1, 4]), s(1)),
        (u_word(&[4, 1]), s(-1)),
    ]);
    parts.push((u_scaled(&pbw_mul(&th(0b001), &inner), &quarter), xstar(2)));

    // (Θw₁₃/4)(w₂₃w₁₄ − w₁₄w₂₃ − w₁₂w₃₄ + w₃₄w₁₂) ⊗ x₃*
    let inner = u_sum(&[
        (u_word(&[3, 2]), s(1)),
        (u_word(&[2, 3]), s(-1)),
        (u_word(&[0, 5]), s(-1)),
        (u_word(&[5, 0]), s(1)),
    ]);
    parts.push((u_scaled(&pbw_mul(&th(0b010), &inner), &quarter), xstar(3)));

    // (Θw₁₄/4)(w₁₃w₂₄ − w₂₄w₁₃ − w₁₂w₃₄ + w₃₄w₁₂) ⊗ x₄*
    let inner = u_sum(&[
        (u_word(&[1, 4]), s(1)),
        (u_word(&[4, 1]), s(-1)),
        (u_word(&[0, 5]), s(-1)),
        (u_word(&[5, 0]), s(1)),
    ]);
    parts.push((u_scaled(&pbw_mul(&th(0b100), &inner), &quarter), xstar(4)));

    // (w₁₂/16)(w₁₃w₂₄ − w₂₄w₁₃)(w₂₃w₁₄ − w₁₄w₂₃) ⊗ x₂*
    let p = u_sum(&[(u_word(&[1, 4]), s(1)), (u_word(&[4, 1]), s(-1))]);
    let q = u_sum(&[(u_word(&[3, 2]), s(1)), (u_word(&[2, 3]), s(-1))]);
    let u = pbw_mul(&u_monomial(0, 0b001), &pbw_mul(&p, &q));
    parts.push((u_scaled(&u, &sixteenth), xstar(2)));

    // (w₁₃/16)(w₃₄w₁₂ − w₁₂w₃₄)(w₂₃w₁₄ − w₁₄w₂₃) ⊗ x₃*
    let p = u_sum(&[(u_word(&[5, 0]), s(1)), (u_word(&[0, 5]), s(-1))]);
    let q = u_sum(&[(u_word(&[3, 2]), s(1)), (u_word(&[2, 3]), s(-1))]);
    let u = pbw_mul(&u_monomial(0, 0b010), &pbw_mul(&p, &q));
    parts.push((u_scaled(&u, &sixteenth), xstar(3)));

    // (w₁₄/16)(w₃₄w₁₂ − w₁₂w₃₄)(w₁₃w₂₄ − w₂₄w₁₃) ⊗ x₄*
    let p = u_sum(&[(u_word(&[5, 0]), s(1)), (u_word(&[0, 5]), s(-1))]);
    let q = u_sum(&[(u_word(&[1, 4]), s(1)), (u_word(&[4, 1]), s(-1))]);
    let u = pbw_mul(&u_monomial(0, 0b100), &pbw_mul(&p, &q));
    parts.push((u_scaled(&u, &sixteenth), xstar(4)));

    let mut out = VermaElement::zero();
    for (u, f) in parts {
        for (m, c) in &u {
            out.add_term(*m, f.scaled(c));
        }
    }
    out
}

/// The explicit degree-1 differential Σ w_{ab} ⊗ ∂_{ab} on the first quadrant:
/// source (n₁,n₂), target (n₁,n₂−1).
pub fn nabla_a(source: Arc<WeightModule>, target: Arc<WeightModule>) -> Morphism {
    assert_eq!(source.labels[0], target.labels[0]);
    assert_eq!(source.labels[1], target.labels[1] + 1);
    let terms: Vec<(UElement, Vec<usize>)> =
        (0..6).map(|b| (u_monomial(0, 1 << b), vec![4 + b as usize])).collect();
    Morphism::from_operator(source, target, &terms)
}

/// The explicit degree-3 differential from the first to the second quadrant:
/// source (n₁,0) with n₁ ≥ 2, target the second-quadrant module (n₁−2,0).
pub fn nabla_3(source: Arc<WeightModule>, target: Arc<WeightModule>) -> Morphism {
    assert_eq!(source.labels[1], 0);
    assert_eq!(source.labels[0], target.labels[0] + 2);
    assert_eq!(target.labels[2], 0);
    Morphism::from_operator(source, target, &nabla_3_terms())
}

/// Term list of the degree-3 differential, as pairs (enveloping factor,
/// second-derivative variable labels).
pub(crate) fn nabla_3_terms() -> Vec<(UElement, Vec<usize>)> {
    let s = Scalar::from_int;
    let half = Scalar::ratio(1, 2);
    let mut terms: Vec<(UElement, Vec<usize>)> = vec![
        (u_word(&[0, 1, 2]), vec![0, 0]),
        (u_scaled(&u_word(&[0, 4, 3]), &s(-1)), vec![1, 1]),
        (u_scaled(&u_word(&[1, 5, 3]), &s(-1)), vec![2, 2]),
        (u_scaled(&u_word(&[5, 4, 2]), &s(-1)), vec![3, 3]),
    ];
    // −(w₁₂/2)(w₁₄w₂₃ − w₂₃w₁₄ + w₂₄w₁₃ − w₁₃w₂₄) ⊗ ∂₁∂₂
    let inner = u_sum(&[
        (u_word(&[2, 3]), s(1)),
        (u_word(&[3, 2]), s(-1)),
        (u_word(&[4, 1]), s(1)),
        (u_word(&[1, 4]), s(-1)),
    ]);
    terms.push((u_scaled(&pbw_mul(&u_word(&[0]), &inner), &-&half), vec![0, 1]));
    // −(w₁₃/2)(w₁₄w₂₃ − w₂₃w₁₄ − w₃₄w₁₂ + w₁₂w₃₄) ⊗ ∂₁∂₃
    let inner = u_sum(&[
        (u_word(&[2, 3]), s(1)),
        (u_word(&[3, 2]), s(-1)),
        (u_word(&[5, 0]), s(-1)),
        (u_word(&[0, 5]), s(1)),
    ]);
    terms.push((u_scaled(&pbw_mul(&u_word(&[1]), &inner), &-&half), vec![0, 2]));
    // −(w₁₄/2)(w₂₄w₁₃ − w₁₃w₂₄ + w₁₂w₃₄ − w₃₄w₁₂) ⊗ ∂₁∂₄
    let inner = u_sum(&[
        (u_word(&[4, 1]), s(1)),
        (u_word(&[1, 4]), s(-1)),
        (u_word(&[0, 5]), s(1)),
        (u_word(&[5, 0]), s(-1)),
    ]);
    terms.push((u_scaled(&pbw_mul(&u_word(&[2]), &inner), &-&half), vec![0, 3]));
    // +(w₂₃/2)(−w₁₃w₂₄ + w₂₄w₁₃ − w₁₂w₃₄ + w₃₄w₁₂) ⊗ ∂₂∂₃
    let inner = u_sum(&[
        (u_word(&[1, 4]), s(-1)),
        (u_word(&[4, 1]), s(1)),
        (u_word(&[0, 5]), s(-1)),
        (u_word(&[5, 0]), s(1)),
    ]);
    terms.push((u_scaled(&pbw_mul(&u_word(&[3]), &inner), &half), vec![1, 2]));
    // +(w₂₄/2)(w₃₄w₁₂ − w₁₂w₃₄ + w₁₄w₂₃ − w₂₃w₁₄) ⊗ ∂₂∂₄
    let inner = u_sum(&[
        (u_word(&[5, 0]), s(1)),
        (u_word(&[0, 5]), s(-1)),
        (u_word(&[2, 3]), s(1)),
        (u_word(&[3, 2]), s(-1)),
    ]);
    terms.push((u_scaled(&pbw_mul(&u_word(&[4]), &inner), &half), vec![1, 3]));
    // −(w₃₄/2)(w₂₄w₁₃ − w₁₃w₂₄ − w₁₄w₂₃ + w₂₃w₁₄) ⊗ ∂₃∂₄
    let inner = u_sum(&[
        (u_word(&[4, 1]), s(1)),
        (u_word(&[1, 4]), s(-1)),
        (u_word(&[2, 3]), s(-1)),
        (u_word(&[3, 2]), s(1)),
    ]);
    terms.push((u_scaled(&pbw_mul(&u_word(&[5]), &inner), &-&half), vec![2, 3]));
    terms
}

/// The unique singular vector of the given degree, also asserting uniqueness.
pub fn unique_singular_vector(module: &WeightModule, d: u32) -> VermaElement {
    let found = crate::verma::find_singular_vectors(module, d);
    assert_eq!(
        found.len(),
        1,
        "expected a unique degree-{d} singular vector, found {}",
        found.len()
    );
    found.into_iter().next().unwrap()
}

/// Degree-1 morphism inside the second quadrant: (n₁,n₃) → (n₁−1,n₃+1).
pub fn nabla_b(source: Arc<WeightModule>, target: Arc<WeightModule>) -> Morphism {
    assert_eq!(source.labels[0], target.labels[0] + 1);
    assert_eq!(source.labels[2] + 1, target.labels[2]);
    let sing = unique_singular_vector(&target, 1);
    Morphism::from_singular(source, target, &sing)
}

/// Degree-1 morphism inside the third quadrant: (n₂,n₃) → (n₂+1,n₃).
pub fn nabla_c(source: Arc<WeightModule>, target: Arc<WeightModule>) -> Morphism {
    assert_eq!(source.labels[1] + 1, target.labels[1]);
    assert_eq!(source.labels[2], target.labels[2]);
    let sing = unique_singular_vector(&target, 1);
    Morphism::from_singular(source, target, &sing)
}

/// The degree-5 morphism from the first-quadrant module (1,0) to the
/// third-quadrant module (0,1).
pub fn nabla_5(source: Arc<WeightModule>, target: Arc<WeightModule>) -> Morphism {
    assert_eq!(source.labels, [1, 0, 0]);
    assert_eq!(target.labels, [0, 0, 1]);
    Morphism::from_singular(source, target, &singular_m5c())
}

/// The degree-3 morphism from the second to the third quadrant:
/// (0,n₃) → (0,n₃+2).
pub fn nabla_tilde_3(source: Arc<WeightModule>, target: Arc<WeightModule>) -> Morphism {
    assert_eq!(source.labels[0], 0);
    assert_eq!(source.labels[1], 0);
    assert_eq!(target.labels[1], 0);
    assert_eq!(source.labels[2] + 2, target.labels[2]);
    let sing = unique_singular_vector(&target, 3);
    Morphism::from_singular(source, target, &sing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::ContactElement;
    use crate::weights::{module_a, module_b, module_c};

    fn arc_a(n1: u32, n2: u32) -> Arc<WeightModule> {
        Arc::new(module_a(n1, n2))
    }
    fn arc_b(n1: u32, n3: u32) -> Arc<WeightModule> {
        Arc::new(module_b(n1, n3))
    }
    fn arc_c(n2: u32, n3: u32) -> Arc<WeightModule> {
        Arc::new(module_c(n2, n3))
    }

    fn is_annihilated_by_raising(m: &VermaElement, module: &WeightModule) -> bool {
        let b = &*BASIS;
        [&b.e[0], &b.e[1], &b.e[2], &b.v1, &b.v2]
            .iter()
            .all(|op| act(op, m, module).is_zero())
    }

    #[test]
    fn explicit_degree_one_map_hits_the_singular_vector() {
        let src = arc_a(1, 2);
        let tgt = arc_a(1, 1);
        let phi = nabla_a(src.clone(), tgt.clone());
        let hw_img = phi.image(0);
        let expect = singular_m1a(&tgt).scaled(&Scalar::from_int(2));
        assert_eq!(*hw_img, expect);
        assert!(is_annihilated_by_raising(hw_img, &tgt));
    }

    #[test]
    fn explicit_degree_one_map_is_equivariant() {
        let src = arc_a(1, 1);
        let tgt = arc_a(1, 0);
        let phi = nabla_a(src.clone(), tgt.clone());
        let b = &*BASIS;
        let gens: Vec<&ContactElement> =
            vec![&b.theta, &b.w[2], &b.t, &b.e[1], &b.f[0], &b.v1, &b.v2];
        for d in 0..=2u32 {
            let slice = Slice::new(&src, d);
            for pos in [0, slice.dim() - 1] {
                let (m, j) = slice.label(pos);
                let v = VermaElement::term(m, src.basis[j].clone());
                for a in &gens {
                    let lhs = phi.apply(&act(a, &v, &src));
                    let rhs = act(a, &phi.apply(&v), &tgt);
                    assert_eq!(lhs, rhs, "equivariance for degree-1 map");
                }
            }
        }
    }

    #[test]
    fn explicit_map_agrees_with_singular_vector_construction() {
        let src = arc_a(1, 1);
        let tgt = arc_a(1, 0);
        let phi = nabla_a(src.clone(), tgt.clone());
        let psi = Morphism::from_singular(src.clone(), tgt.clone(), &singular_m1a(&tgt));
        for j in 0..src.dim() {
            assert_eq!(phi.image(j), psi.image(j));
        }
    }

    #[test]
    fn degree_three_map_hits_the_singular_vector() {
        let src = arc_a(3, 0);
        let tgt = arc_b(1, 0);
        let phi = nabla_3(src.clone(), tgt.clone());
        let expect = singular_m3b(&tgt).scaled(&Scalar::from_int(6));
        assert_eq!(*phi.image(0), expect);
        assert!(is_annihilated_by_raising(&singular_m3b(&tgt), &tgt));
    }

    #[test]
    fn degree_three_map_is_equivariant() {
        let src = arc_a(2, 0);
        let tgt = arc_b(0, 0);
        let phi = nabla_3(src.clone(), tgt.clone());
        let b = &*BASIS;
        let gens: Vec<&ContactElement> = vec![&b.theta, &b.w[0], &b.w[5], &b.e[0], &b.f[2], &b.h[0], &b.v1, &b.v2];
        for d in 0..=2u32 {
            let slice = Slice::new(&src, d);
            for pos in [0, slice.dim() / 3, slice.dim() - 1] {
                let (m, j) = slice.label(pos);
                let v = VermaElement::term(m, src.basis[j].clone());
                for a in &gens {
                    let lhs = phi.apply(&act(a, &v, &src));
                    let rhs = act(a, &phi.apply(&v), &tgt);
                    assert_eq!(lhs, rhs, "equivariance for degree-3 map");
                }
            }
        }
    }

    #[test]
    fn degree_five_singular_vector_is_singular() {
        let c01 = module_c(0, 1);
        let m5 = singular_m5c();
        assert_eq!(m5.pbw_degree(), Some(5));
        assert_eq!(m5.sl4_weight(), Some([1, 0, 0]));
        assert!(is_annihilated_by_raising(&m5, &c01));
    }

    #[test]
    fn solver_confirms_the_exceptional_degree_five_vector() {
        let c01 = module_c(0, 1);
        let found = crate::verma::find_singular_vectors(&c01, 5);
        assert_eq!(found.len(), 1);
        // The solver output is normalized; m₅c must be proportional to it.
        let m5 = singular_m5c();
        let slice = Slice::new(&c01, 5);
        let a = slice.coords(&m5);
        let b = slice.coords(&found[0]);
        assert_eq!(a.len(), b.len());
        let ratio = &a[0].1 / &b[0].1;
        for ((i, ca), (j, cb)) in a.iter().zip(b.iter()) {
            assert_eq!(i, j);
            assert_eq!(*ca, &ratio * cb);
        }
    }

    #[test]
    fn solver_derived_morphisms_exist_and_compose_to_zero() {
        // ∇_B² = 0 through (2,0) → (1,1) → (0,2).
        let b20 = arc_b(2, 0);
        let b11 = arc_b(1, 1);
        let b02 = arc_b(0, 2);
        let nb1 = nabla_b(b20.clone(), b11.clone());
        let nb2 = nabla_b(b11.clone(), b02.clone());
        assert!(nb2.composes_to_zero_with(&nb1));

        // ∇_C² = 0 through (0,1) → (1,1) → (2,1).
        let c01 = arc_c(0, 1);
        let c11 = arc_c(1, 1);
        let c21 = arc_c(2, 1);
        let nc1 = nabla_c(c01.clone(), c11.clone());
        let nc2 = nabla_c(c11.clone(), c21.clone());
        assert!(nc2.composes_to_zero_with(&nc1));
    }

    #[test]
    fn degree_one_compositions_vanish() {
        // ∇_A² = 0 through (1,2) → (1,1) → (1,0).
        let a12 = arc_a(1, 2);
        let a11 = arc_a(1, 1);
        let a10 = arc_a(1, 0);
        let n1 = nabla_a(a12.clone(), a11.clone());
        let n2 = nabla_a(a11.clone(), a10.clone());
        assert!(n2.composes_to_zero_with(&n1));
    }

    #[test]
    fn boundary_compositions_vanish() {
        // ∇₃∇_A = 0 through (2,1) → (2,0) → B(0,0).
        let a21 = arc_a(2, 1);
        let a20 = arc_a(2, 0);
        let b00 = arc_b(0, 0);
        let na = nabla_a(a21.clone(), a20.clone());
        let n3 = nabla_3(a20.clone(), b00.clone());
        assert!(n3.composes_to_zero_with(&na));

        // ∇₅∇_A = 0 and ∇_C∇₅ = 0 through (1,1) → (1,0) → C(0,1) → C(1,1).
        let a11 = arc_a(1, 1);
        let a10 = arc_a(1, 0);
        let c01 = arc_c(0, 1);
        let c11 = arc_c(1, 1);
        let na = nabla_a(a11.clone(), a10.clone());
        let n5 = nabla_5(a10.clone(), c01.clone());
        let nc = nabla_c(c01.clone(), c11.clone());
        assert!(n5.composes_to_zero_with(&na));
        assert!(nc.composes_to_zero_with(&n5));

        // ∇̃₃∇_B = 0 and ∇_C∇̃₃ = 0 through B(1,0) → B(0,1) → C(0,3), B(0,0) → C(0,2) → C(1,2).
        let b10 = arc_b(1, 0);
        let b01 = arc_b(0, 1);
        let c03 = arc_c(0, 3);
        let nb = nabla_b(b10.clone(), b01.clone());
        let nt3 = nabla_tilde_3(b01.clone(), c03.clone());
        assert!(nt3.composes_to_zero_with(&nb));

        let b00 = arc_b(0, 0);
        let c02 = arc_c(0, 2);
        let c12 = arc_c(1, 2);
        let nt = nabla_tilde_3(b00.clone(), c02.clone());
        let nc2 = nabla_c(c02.clone(), c12.clone());
        assert!(nc2.composes_to_zero_with(&nt));
    }

    #[test]
    fn slice_matrices_compose_like_the_maps() {
        let a12 = arc_a(1, 2);
        let a11 = arc_a(1, 1);
        let a10 = arc_a(1, 0);
        let n1 = nabla_a(a12.clone(), a11.clone());
        let n2 = nabla_a(a11.clone(), a10.clone());
        for d in 0..=2u32 {
            let m1 = n1.slice_matrix(d);
            let m2 = n2.slice_matrix(d + 1);
            let prod = m2.matmul(&m1);
            assert_eq!(prod.rank(), 0, "matrix composition at slice {d}");
        }
    }
}
