//! The finite-dimensional sl(4)-modules that seed the Verma construction:
//! cyclic-lowering realizations of the quadrant-A/B/C highest weights and the
//! general F(n₁,n₂,n₃), the kernel realization of the A family through the
//! operators D, D₁..D₄, the Weyl dimension oracle, t-eigenvalues, the
//! degenerate-weight classification data, and zero-constant primitives.

use crate::contact::Mat4;
use crate::linalg::{BasisExpressor, ExactMatrix, SRow, SpanTracker, Subspace};
use crate::poly::{
    act_elementary, act_matrix, monomials_with_profile, op_d, op_d_i, Monomial, PolyVector,
};
use crate::scalar::Scalar;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

/// The three families of degenerate highest weights.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    A,
    B,
    C,
}

/// A finite-dimensional sl(4)-module realized inside the polynomial algebra,
/// with its lowering words and t-eigenvalue.
pub struct WeightModule {
    /// Highest-weight labels (n₁, n₂, n₃).
    pub labels: [u32; 3],
    /// Eigenvalue of the central element t on the induced module's top.
    pub t_scalar: Scalar,
    /// Ambient monomials of the realization's profile, sorted.
    pub ambient: Vec<Monomial>,
    /// Monomial → ambient position.
    pub index: BTreeMap<Monomial, usize>,
    /// Basis vectors in discovery order; entry 0 is the highest-weight vector.
    pub basis: Vec<PolyVector>,
    /// basis[j] = f_{words[j][k−1]}·…·f_{words[j][0]}·basis[0]; entries are the
    /// 1-based lowering labels, applied left to right.
    pub words: Vec<Vec<usize>>,
    expressor: BasisExpressor,
    /// Memoized expressions: the same polynomial parts recur across every
    /// PBW monomial of a slice, and the echelon reduction dominates.
    express_cache: Mutex<HashMap<SRow, Option<Vec<Scalar>>>>,
}

/// f_i = E_{i+1,i} acting on polynomials (i ∈ {1,2,3}).
pub fn lower(i: usize, p: &PolyVector) -> PolyVector {
    act_elementary(i + 1, i, p)
}

/// e_i = E_{i,i+1} acting on polynomials (i ∈ {1,2,3}).
pub fn raise(i: usize, p: &PolyVector) -> PolyVector {
    act_elementary(i, i + 1, p)
}

fn close_under_lowering(
    hw: PolyVector,
    profile: (u32, u32, u32, u32),
) -> (Vec<Monomial>, BTreeMap<Monomial, usize>, Vec<PolyVector>, Vec<Vec<usize>>) {
    let ambient = monomials_with_profile(profile.0, profile.1, profile.2, profile.3);
    let index: BTreeMap<Monomial, usize> =
        ambient.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut tracker = SpanTracker::new(ambient.len());
    assert!(tracker.try_insert(&hw.coords(&index)), "zero highest-weight vector");
    let mut basis = vec![hw];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut head = 0;
    while head < basis.len() {
        for fi in 1..=3usize {
            let img = lower(fi, &basis[head]);
            if img.is_zero() {
                continue;
            }
            if tracker.try_insert(&img.coords(&index)) {
                let mut w = words[head].clone();
                w.push(fi);
                basis.push(img);
                words.push(w);
            }
        }
        head += 1;
    }
    (ambient, index, basis, words)
}

impl WeightModule {
    fn build(labels: [u32; 3], t_scalar: Scalar, hw: PolyVector, profile: (u32, u32, u32, u32)) -> Self {
        let (ambient, index, basis, words) = close_under_lowering(hw, profile);
        let rows: Vec<_> = basis.iter().map(|b| b.coords(&index)).collect();
        let expressor = BasisExpressor::new(&rows);
        let express_cache = Mutex::new(HashMap::new());
        WeightModule { labels, t_scalar, ambient, index, basis, words, expressor, express_cache }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn hw(&self) -> &PolyVector {
        &self.basis[0]
    }

    /// Coordinates over the module basis; `None` outside the module.
    pub fn express(&self, v: &PolyVector) -> Option<Vec<Scalar>> {
        if v.is_zero() {
            return Some(vec![Scalar::zero(); self.dim()]);
        }
        let key = v.coords(&self.index);
        if let Some(hit) = self.express_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let result = self.expressor.express(&key);
        self.express_cache.lock().unwrap().insert(key, result.clone());
        result
    }

    pub fn contains(&self, v: &PolyVector) -> bool {
        self.express(v).is_some()
    }

    /// The matrix of a gl(4) element on the module basis (columns = inputs).
    pub fn operator_matrix(&self, m: &Mat4) -> ExactMatrix {
        let mut triplets = Vec::new();
        for (j, b) in self.basis.iter().enumerate() {
            let img = act_matrix(m, b);
            let coords = self
                .express(&img)
                .expect("module is not closed under the operator");
            for (i, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    triplets.push((i, j, c));
                }
            }
        }
        ExactMatrix::from_triplets(self.dim(), self.dim(), triplets)
    }

    /// The span of the module inside its ambient coordinate space.
    pub fn span(&self) -> Subspace {
        let rows = self.basis.iter().map(|b| b.coords(&self.index)).collect();
        Subspace::from_vectors(self.ambient.len(), rows)
    }
}

/// V_A^{n₁,n₂}: highest weight x₁^{n₁}x₁₂^{n₂}, t-eigenvalue −n₂−n₁/2.
pub fn module_a(n1: u32, n2: u32) -> WeightModule {
    let hw = PolyVector::variable(0).pow(n1).mul(&PolyVector::variable(4).pow(n2));
    let t = Scalar::ratio(-((2 * n2 + n1) as i64), 2);
    WeightModule::build([n1, n2, 0], t, hw, (n1, n2, 0, 0))
}

/// V_B^{n₁,n₃}: highest weight x₁^{n₁}(x₄*)^{n₃}, t-eigenvalue n₃/2−n₁/2+2.
pub fn module_b(n1: u32, n3: u32) -> WeightModule {
    let hw = PolyVector::variable(0).pow(n1).mul(&PolyVector::variable(13).pow(n3));
    let t = Scalar::ratio(n3 as i64 - n1 as i64 + 4, 2);
    WeightModule::build([n1, 0, n3], t, hw, (n1, 0, n3, 0))
}

/// V_C^{n₂,n₃}: highest weight (x₃₄*)^{n₂}(x₄*)^{n₃}, t-eigenvalue n₂+n₃/2+4.
pub fn module_c(n2: u32, n3: u32) -> WeightModule {
    let hw = PolyVector::variable(19).pow(n2).mul(&PolyVector::variable(13).pow(n3));
    let t = Scalar::ratio((2 * n2 + n3) as i64 + 8, 2);
    WeightModule::build([0, n2, n3], t, hw, (0, 0, n3, n2))
}

/// F(n₁,n₂,n₃) with a chosen t-eigenvalue: highest weight x₁^{n₁}x₁₂^{n₂}(x₄*)^{n₃}.
pub fn module_general(n1: u32, n2: u32, n3: u32, t_scalar: Scalar) -> WeightModule {
    let hw = PolyVector::variable(0)
        .pow(n1)
        .mul(&PolyVector::variable(4).pow(n2))
        .mul(&PolyVector::variable(13).pow(n3));
    WeightModule::build([n1, n2, n3], t_scalar, hw, (n1, n2, n3, 0))
}

/// dim F(a,b,c) by the Weyl dimension formula for A₃.
pub fn weyl_dim(a: u64, b: u64, c: u64) -> u64 {
    (a + 1) * (b + 1) * (c + 1) * (a + b + 2) * (b + c + 2) * (a + b + c + 3) / 12
}

/// V_A^{n₁,n₂} as the joint kernel of D, D₁..D₄ in its bihomogeneous profile.
pub fn kernel_realization_a(n1: u32, n2: u32) -> Subspace {
    let domain = monomials_with_profile(n1, n2, 0, 0);
    let index: BTreeMap<Monomial, usize> =
        domain.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let ops: [&dyn Fn(&PolyVector) -> PolyVector; 5] = [
        &|p| op_d(p),
        &|p| op_d_i(1, p),
        &|p| op_d_i(2, p),
        &|p| op_d_i(3, p),
        &|p| op_d_i(4, p),
    ];
    let mut triplets = Vec::new();
    let mut row_base = 0;
    for op in ops {
        let mut target_index: BTreeMap<Monomial, usize> = BTreeMap::new();
        for (j, m) in domain.iter().enumerate() {
            let img = op(&PolyVector::monomial(*m));
            for (mono, c) in img.iter() {
                let next = target_index.len();
                let r = *target_index.entry(*mono).or_insert(next);
                triplets.push((row_base + r, j, c.clone()));
            }
        }
        row_base += target_index.len();
    }
    let _ = index;
    let m = ExactMatrix::from_triplets(row_base, domain.len(), triplets);
    m.kernel_basis()
}

/// The (n₁,n₂,n₃,n₀) of the m-th degenerate weight in a family: quadrant A
/// takes (m,n) = (n₁,n₂), B takes (n₁,n₃), C takes (n₂,n₃) with (n₂,n₃) ≠ (0,0).
pub fn degenerate_weight(family: Family, m: u32, n: u32) -> (u32, u32, u32, Scalar) {
    match family {
        Family::A => (m, n, 0, Scalar::ratio(-((2 * n + m) as i64), 2)),
        Family::B => (m, 0, n, Scalar::ratio(n as i64 - m as i64 + 4, 2)),
        Family::C => {
            assert!((m, n) != (0, 0), "quadrant C starts past the origin");
            (0, m, n, Scalar::ratio((2 * m + n) as i64 + 8, 2))
        }
    }
}

/// Weight of the conformal dual: (n₁,n₂,n₃,n₀) ↦ (n₃,n₂,n₁,−n₀+4).
pub fn dual_weight(w: (u32, u32, u32, Scalar)) -> (u32, u32, u32, Scalar) {
    (w.2, w.1, w.0, &Scalar::from_int(4) - &w.3)
}

/// Index of the wedge variable x_{s4} for s ∈ {1,2,3}.
fn var_s4(s: usize) -> usize {
    [6, 8, 9][s - 1]
}

/// A zero-constant primitive: q with ∂_{x_{s4}} q = p, annihilated by all five
/// D-operators, optionally independent of x_{avoid·4}. Fails loudly when the
/// linear system is infeasible, since feasibility is itself a theorem.
pub fn find_primitive(
    p: &PolyVector,
    s: usize,
    avoid: Option<usize>,
) -> Result<PolyVector, String> {
    assert!((1..=3).contains(&s));
    if p.is_zero() {
        return Ok(PolyVector::zero());
    }
    let mut profile = None;
    for (m, _) in p.iter() {
        let pr = m.profile();
        assert!(pr.2 == 0 && pr.3 == 0, "primitives live in the quadrant-A variables");
        match profile {
            None => profile = Some(pr),
            Some(prev) if prev != pr => panic!("input is not bihomogeneous"),
            _ => {}
        }
    }
    let (n1, n2, _, _) = profile.unwrap();
    let mut domain = monomials_with_profile(n1, n2 + 1, 0, 0);
    if let Some(a) = avoid {
        assert!((1..=3).contains(&a));
        let va = var_s4(a);
        assert!(
            p.iter().all(|(m, _)| m.0[va] == 0),
            "input depends on the avoided variable"
        );
        domain.retain(|m| m.0[va] == 0);
    }
    let target = monomials_with_profile(n1, n2, 0, 0);
    let target_index: BTreeMap<Monomial, usize> =
        target.iter().enumerate().map(|(i, m)| (*m, i)).collect();

    let mut triplets = Vec::new();
    let mut rhs = Vec::new();
    // ∂_{s4} q = p.
    for (j, m) in domain.iter().enumerate() {
        let img = PolyVector::monomial(*m).partial(var_s4(s));
        for (mono, c) in img.iter() {
            triplets.push((target_index[mono], j, c.clone()));
        }
    }
    let mut coords = vec![Scalar::zero(); target.len()];
    for (mono, c) in p.iter() {
        coords[target_index[mono]] = c.clone();
    }
    rhs.extend(coords);
    let mut row_base = target.len();
    // D q = 0, Dᵢ q = 0.
    let ops: [&dyn Fn(&PolyVector) -> PolyVector; 5] = [
        &|v| op_d(v),
        &|v| op_d_i(1, v),
        &|v| op_d_i(2, v),
        &|v| op_d_i(3, v),
        &|v| op_d_i(4, v),
    ];
    for op in ops {
        let mut t_index: BTreeMap<Monomial, usize> = BTreeMap::new();
        for (j, m) in domain.iter().enumerate() {
            let img = op(&PolyVector::monomial(*m));
            for (mono, c) in img.iter() {
                let next = t_index.len();
                let r = *t_index.entry(*mono).or_insert(next);
                triplets.push((row_base + r, j, c.clone()));
            }
        }
        rhs.extend(std::iter::repeat_with(Scalar::zero).take(t_index.len()));
        row_base += t_index.len();
    }
    let m = ExactMatrix::from_triplets(row_base, domain.len(), triplets);
    let sol = m
        .solve(&rhs)
        .ok_or_else(|| format!("no primitive for s={s}, avoid={avoid:?} in profile ({n1},{},0,0)", n2 + 1))?;
    let mut q = PolyVector::zero();
    for (j, c) in sol.into_iter().enumerate() {
        q.add_term(domain[j], c);
    }
    Ok(q)
}
