//! The superalgebra Λ(1,6)₊ = ℂ[t]⊗Λ(ξ₁,…,ξ₆) over ℚ(i) with its contact
//! bracket, the modified Hodge dual, the operator A whose deformation
//! Id − iA cuts out E(1,6), and the distinguished elements used everywhere
//! else: the Chevalley triples of the sl(4) part of E(1,6)₀, the grading
//! element t, Θ, the lowest vectors v₁, v₂ of E(1,6)₁, and the w-basis of
//! E(1,6)₋₁.

use crate::linalg::{ExactMatrix, SRow, Subspace};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::sync::LazyLock;

/// Number of odd indeterminates.
pub const N_XI: u8 = 6;

/// Parity of the number of inversions between two disjoint ascending index
/// sets: the sign of sorting the concatenation (I, J).
fn interleave_sign(i_mask: u8, j_mask: u8) -> i64 {
    let mut inversions = 0u32;
    for b in 0..N_XI {
        if j_mask & (1 << b) != 0 {
            inversions += (i_mask >> (b + 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// An element of Λ(1,6)₊: finitely many monomials t^m ξ_I, indexed by the
/// t-exponent and the bitmask of I (bit k set means ξ_{k+1} occurs).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ContactElement {
    terms: BTreeMap<(u32, u8), Scalar>,
}

impl ContactElement {
    pub fn zero() -> Self {
        ContactElement::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 0)
    }

    /// Θ = −1/2 ∈ E(1,6)₋₂.
    pub fn theta() -> Self {
        Self::monomial(0, 0).scaled(&-Scalar::ratio(1, 2))
    }

    /// ξ_i for 1 ≤ i ≤ 6.
    pub fn xi(i: u8) -> Self {
        assert!((1..=N_XI).contains(&i));
        Self::monomial(0, 1 << (i - 1))
    }

    /// t^m ξ_I with coefficient 1, I given as a bitmask.
    pub fn monomial(m: u32, mask: u8) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((m, mask), Scalar::one());
        ContactElement { terms }
    }

    /// c · t^m ξ_{i₁}···ξ_{i_r} for an arbitrary index sequence; adjacent
    /// transpositions contribute signs, repeated indices give zero.
    pub fn from_indices(m: u32, indices: &[u8], coeff: Scalar) -> Self {
        let mut mask = 0u8;
        let mut sign = 1i64;
        for (pos, &i) in indices.iter().enumerate() {
            assert!((1..=N_XI).contains(&i));
            let bit = 1u8 << (i - 1);
            if mask & bit != 0 {
                return Self::zero();
            }
            // Moving ξ_i left past the earlier factors that exceed it.
            for &j in &indices[..pos] {
                if j > i {
                    sign = -sign;
                }
            }
            mask |= bit;
        }
        let c = coeff * &Scalar::from_int(sign);
        let mut out = Self::zero();
        out.add_term(m, mask, c);
        out
    }

    pub fn add_term(&mut self, m: u32, mask: u8, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((m, mask)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: u32, mask: u8) -> Scalar {
        self.terms.get(&(m, mask)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u8), &Scalar)> {
        self.terms.iter()
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(k, v)| (*k, v * c)).collect();
        ContactElement { terms }
    }

    /// degr(t^m ξ_I) = 2m + |I| − 2; `None` for 0 or inhomogeneous elements.
    pub fn degree(&self) -> Option<i32> {
        let mut deg = None;
        for (m, mask) in self.terms.keys() {
            let d = 2 * (*m as i32) + mask.count_ones() as i32 - 2;
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Parity |I| mod 2; `None` for 0 or mixed-parity elements.
    pub fn parity(&self) -> Option<u8> {
        let mut parity = None;
        for (_, mask) in self.terms.keys() {
            let p = (mask.count_ones() % 2) as u8;
            match parity {
                None => parity = Some(p),
                Some(prev) if prev != p => return None,
                _ => {}
            }
        }
        parity
    }

    /// Superalgebra product.
    pub fn mul(&self, other: &ContactElement) -> ContactElement {
        let mut out = ContactElement::zero();
        for ((m, i_mask), a) in &self.terms {
            for ((n, j_mask), b) in &other.terms {
                if i_mask & j_mask != 0 {
                    continue;
                }
                let sign = interleave_sign(*i_mask, *j_mask);
                let c = &(a * b) * &Scalar::from_int(sign);
                out.add_term(m + n, i_mask | j_mask, c);
            }
        }
        out
    }

    /// ∂/∂t.
    pub fn partial_t(&self) -> ContactElement {
        let mut out = ContactElement::zero();
        for ((m, mask), c) in &self.terms {
            if *m > 0 {
                out.add_term(m - 1, *mask, c * &Scalar::from_int(*m as i64));
            }
        }
        out
    }

    /// Left derivative ∂/∂ξ_i: removing ξ_i from position k costs (−1)^{k−1}.
    pub fn partial_xi(&self, i: u8) -> ContactElement {
        assert!((1..=N_XI).contains(&i));
        let bit = 1u8 << (i - 1);
        let mut out = ContactElement::zero();
        for ((m, mask), c) in &self.terms {
            if mask & bit == 0 {
                continue;
            }
            let below = (mask & (bit - 1)).count_ones();
            let sign = if below % 2 == 0 { 1 } else { -1 };
            out.add_term(*m, mask & !bit, c * &Scalar::from_int(sign));
        }
        out
    }

    /// Modified Hodge dual: ξ_I* is the unique monomial with ξ_I ξ_I* = ξ₁…ξ₆,
    /// applied termwise (t-part untouched).
    pub fn hodge_dual(&self) -> ContactElement {
        let full = (1u8 << N_XI) - 1;
        let mut out = ContactElement::zero();
        for ((m, mask), c) in &self.terms {
            let comp = full & !mask;
            let sign = interleave_sign(*mask, comp);
            out.add_term(*m, comp, c * &Scalar::from_int(sign));
        }
        out
    }

    /// A(f) = (−1)^{d(d+1)/2} (d/dt)^{3−d} f* on monomials with d odd factors;
    /// negative powers of d/dt integrate in t without constants.
    pub fn a_operator(&self) -> ContactElement {
        let full = (1u8 << N_XI) - 1;
        let mut out = ContactElement::zero();
        for ((m, mask), c) in &self.terms {
            let d = mask.count_ones() as i32;
            let comp = full & !mask;
            let mut coeff = c * &Scalar::from_int(interleave_sign(*mask, comp));
            if (d * (d + 1) / 2) % 2 == 1 {
                coeff = -&coeff;
            }
            let power = 3 - d;
            let m = *m as i64;
            if power >= 0 {
                if m < power as i64 {
                    continue;
                }
                for k in 0..power as i64 {
                    coeff = &coeff * &Scalar::from_int(m - k);
                }
                out.add_term((m - power as i64) as u32, comp, coeff);
            } else {
                for k in 1..=(-power) as i64 {
                    coeff = &coeff / &Scalar::from_int(m + k);
                }
                out.add_term((m + (-power) as i64) as u32, comp, coeff);
            }
        }
        out
    }
}

impl std::ops::Add for &ContactElement {
    type Output = ContactElement;
    fn add(self, rhs: &ContactElement) -> ContactElement {
        let mut out = self.clone();
        for ((m, mask), c) in &rhs.terms {
            out.add_term(*m, *mask, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &ContactElement {
    type Output = ContactElement;
    fn sub(self, rhs: &ContactElement) -> ContactElement {
        let mut out = self.clone();
        for ((m, mask), c) in &rhs.terms {
            out.add_term(*m, *mask, -c);
        }
        out
    }
}

impl std::ops::Neg for &ContactElement {
    type Output = ContactElement;
    fn neg(self) -> ContactElement {
        self.scaled(&-Scalar::one())
    }
}

impl std::fmt::Debug for ContactElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

impl std::fmt::Display for ContactElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ((m, mask), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mut mono = String::new();
            if *m == 1 {
                mono.push('t');
            } else if *m > 1 {
                mono.push_str(&format!("t^{m}"));
            }
            if *mask != 0 {
                if !mono.is_empty() {
                    mono.push(' ');
                }
                mono.push_str("xi");
                for b in 0..N_XI {
                    if mask & (1 << b) != 0 {
                        mono.push_str(&(b + 1).to_string());
                    }
                }
            }
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

/// The contact bracket on Λ(1,6)₊:
/// [f,g] = (2f−Σξᵢ∂ᵢf)(∂ₜg) − (∂ₜf)(2g−Σξᵢ∂ᵢg) + (−1)^{p(f)} Σ(∂ᵢf)(∂ᵢg).
pub fn bracket(f: &ContactElement, g: &ContactElement) -> ContactElement {
    let mut out = ContactElement::zero();
    for ((m, i_mask), a) in f.terms.iter() {
        let di = i_mask.count_ones() as i64;
        for ((n, j_mask), b) in g.terms.iter() {
            let dj = j_mask.count_ones() as i64;
            let c = a * b;
            // (2−|I|)·t^m ξ_I·∂ₜ(t^n ξ_J)
            if *n > 0 && i_mask & j_mask == 0 {
                let k = Scalar::from_int((2 - di) * *n as i64 * interleave_sign(*i_mask, *j_mask));
                out.add_term(m + n - 1, i_mask | j_mask, &c * &k);
            }
            // −∂ₜ(t^m ξ_I)·(2−|J|)·t^n ξ_J
            if *m > 0 && i_mask & j_mask == 0 {
                let k = Scalar::from_int(-(*m as i64) * (2 - dj) * interleave_sign(*i_mask, *j_mask));
                out.add_term(m + n - 1, i_mask | j_mask, &c * &k);
            }
            // (−1)^{|I|} Σᵢ ∂ᵢ(t^m ξ_I)·∂ᵢ(t^n ξ_J)
            let lead = if di % 2 == 0 { 1 } else { -1 };
            let both = i_mask & j_mask;
            for bidx in 0..N_XI {
                let bit = 1u8 << bidx;
                if both & bit == 0 {
                    continue;
                }
                let si = if (i_mask & (bit - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
                let sj = if (j_mask & (bit - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
                let (ri, rj) = (i_mask & !bit, j_mask & !bit);
                if ri & rj != 0 {
                    continue;
                }
                let k = Scalar::from_int(lead * si * sj * interleave_sign(ri, rj));
                out.add_term(m + n, ri | rj, &c * &k);
            }
        }
    }
    out
}

/// Generator t^m ξ_I − iA(t^m ξ_I) of E(1,6), defined for |I| ≤ 3.
pub fn e16_generator(m: u32, mask: u8) -> ContactElement {
    assert!(mask.count_ones() <= 3, "generators take |I| <= 3");
    let f = ContactElement::monomial(m, mask);
    &f - &f.a_operator().scaled(&Scalar::i())
}

/// All monomial keys (m, mask) of degree d in Λ(1,6)₊.
pub fn slice_monomials(d: i32) -> Vec<(u32, u8)> {
    let mut out = Vec::new();
    for s in 0..=N_XI as i32 {
        let twom = d + 2 - s;
        if twom >= 0 && twom % 2 == 0 {
            let m = (twom / 2) as u32;
            for mask in 0u8..64 {
                if mask.count_ones() as i32 == s {
                    out.push((m, mask));
                }
            }
        }
    }
    out.sort();
    out
}

/// Coordinates of a (homogeneous, degree-d) element in the monomial list.
pub fn slice_coords(v: &ContactElement, monomials: &[(u32, u8)]) -> SRow {
    let index: BTreeMap<(u32, u8), usize> =
        monomials.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut row: SRow = Vec::new();
    for (k, c) in v.iter() {
        let i = *index.get(k).unwrap_or_else(|| panic!("monomial outside slice: {k:?}"));
        row.push((i, c.clone()));
    }
    row.sort_by_key(|(i, _)| *i);
    row
}

/// The degree-d component of E(1,6) as a subspace of the degree-d slice of
/// Λ(1,6)₊ (in the coordinates of [`slice_monomials`]).
pub fn e16_slice(d: i32) -> (Vec<(u32, u8)>, Subspace) {
    let monomials = slice_monomials(d);
    let mut vecs = Vec::new();
    for s in 0..=3i32 {
        let twom = d + 2 - s;
        if twom >= 0 && twom % 2 == 0 {
            let m = (twom / 2) as u32;
            for mask in 0u8..64 {
                if mask.count_ones() as i32 == s {
                    vecs.push(slice_coords(&e16_generator(m, mask), &monomials));
                }
            }
        }
    }
    let dim = monomials.len();
    (monomials, Subspace::from_vectors(dim, vecs))
}

/// 4×4 matrix over ℚ(i); the sl(4) part of E(1,6)₀ is identified with
/// traceless ones via eᵢ ↔ E_{i,i+1}, fᵢ ↔ E_{i+1,i}, hᵢ ↔ E_{ii}−E_{i+1,i+1}.
pub type Mat4 = [[Scalar; 4]; 4];

pub fn mat4_zero() -> Mat4 {
    std::array::from_fn(|_| std::array::from_fn(|_| Scalar::zero()))
}

/// Elementary matrix E_{ab} (1-based).
pub fn mat4_unit(a: usize, b: usize) -> Mat4 {
    let mut m = mat4_zero();
    m[a - 1][b - 1] = Scalar::one();
    m
}

pub fn mat4_add(x: &Mat4, y: &Mat4) -> Mat4 {
    std::array::from_fn(|r| std::array::from_fn(|c| &x[r][c] + &y[r][c]))
}

pub fn mat4_scale(x: &Mat4, c: &Scalar) -> Mat4 {
    std::array::from_fn(|r| std::array::from_fn(|k| &x[r][k] * c))
}

pub fn mat4_mul(x: &Mat4, y: &Mat4) -> Mat4 {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            let mut s = Scalar::zero();
            for k in 0..4 {
                s += &(&x[r][k] * &y[k][c]);
            }
            s
        })
    })
}

pub fn mat4_commutator(x: &Mat4, y: &Mat4) -> Mat4 {
    let xy = mat4_mul(x, y);
    let yx = mat4_mul(y, x);
    std::array::from_fn(|r| std::array::from_fn(|c| &xy[r][c] - &yx[r][c]))
}

pub fn mat4_is_zero(x: &Mat4) -> bool {
    x.iter().all(|row| row.iter().all(|v| v.is_zero()))
}

/// Pair labels of the w-basis of E(1,6)₋₁ in storage order.
pub const W_LABELS: [(u8, u8); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

/// The distinguished elements of E(1,6).
pub struct E16Basis {
    pub h: [ContactElement; 3],
    pub e: [ContactElement; 3],
    pub f: [ContactElement; 3],
    pub theta: ContactElement,
    pub t: ContactElement,
    pub v1: ContactElement,
    pub v2: ContactElement,
    /// w₁₂, w₁₃, w₁₄, w₂₃, w₂₄, w₃₄ (order matches [`W_LABELS`]).
    pub w: [ContactElement; 6],
    /// Contact realizations of the fifteen sl(4) basis matrices, in the order
    /// of [`sl4_basis_matrix`].
    pub sl4: [ContactElement; 15],
}

/// The i-th sl(4) basis matrix: h₁,h₂,h₃, E₁₂,E₂₃,E₃₄,E₁₃,E₂₄,E₁₄,
/// E₂₁,E₃₂,E₄₃,E₃₁,E₄₂,E₄₁.
pub fn sl4_basis_matrix(i: usize) -> Mat4 {
    let diff = |a: usize, b: usize| {
        let mut m = mat4_unit(a, a);
        m[b - 1][b - 1] = -Scalar::one();
        m
    };
    match i {
        0 => diff(1, 2),
        1 => diff(2, 3),
        2 => diff(3, 4),
        3 => mat4_unit(1, 2),
        4 => mat4_unit(2, 3),
        5 => mat4_unit(3, 4),
        6 => mat4_unit(1, 3),
        7 => mat4_unit(2, 4),
        8 => mat4_unit(1, 4),
        9 => mat4_unit(2, 1),
        10 => mat4_unit(3, 2),
        11 => mat4_unit(4, 3),
        12 => mat4_unit(3, 1),
        13 => mat4_unit(4, 2),
        14 => mat4_unit(4, 1),
        _ => panic!("sl4 basis index out of range"),
    }
}

fn xi2(i: u8, j: u8, re: i64, im: i64, den: i64) -> ContactElement {
    ContactElement::from_indices(0, &[i, j], Scalar::gauss(re, im, den))
}

impl E16Basis {
    fn build() -> Self {
        let h1 = &xi2(3, 4, 0, -1, 1) + &xi2(5, 6, 0, -1, 1);
        let h2 = &xi2(1, 2, 0, -1, 1) + &xi2(3, 4, 0, 1, 1);
        let h3 = &xi2(3, 4, 0, -1, 1) + &xi2(5, 6, 0, 1, 1);
        let e1 = &(&xi2(3, 5, -1, 0, 2) + &xi2(4, 6, 1, 0, 2))
            + &(&xi2(3, 6, 0, 1, 2) + &xi2(4, 5, 0, 1, 2));
        let e2 = &(&xi2(1, 3, -1, 0, 2) + &xi2(2, 4, -1, 0, 2))
            + &(&xi2(1, 4, 0, -1, 2) + &xi2(2, 3, 0, 1, 2));
        let e3 = &(&xi2(3, 5, -1, 0, 2) + &xi2(4, 6, -1, 0, 2))
            + &(&xi2(3, 6, 0, -1, 2) + &xi2(4, 5, 0, 1, 2));
        let f1 = &(&xi2(3, 5, 1, 0, 2) + &xi2(4, 6, -1, 0, 2))
            + &(&xi2(3, 6, 0, 1, 2) + &xi2(4, 5, 0, 1, 2));
        let f2 = &(&xi2(1, 3, 1, 0, 2) + &xi2(2, 4, 1, 0, 2))
            + &(&xi2(1, 4, 0, -1, 2) + &xi2(2, 3, 0, 1, 2));
        let f3 = &(&xi2(3, 5, 1, 0, 2) + &xi2(4, 6, 1, 0, 2))
            + &(&xi2(3, 6, 0, -1, 2) + &xi2(4, 5, 0, 1, 2));
        let h = [h1, h2, h3];
        let e = [e1, e2, e3];
        let f = [f1, f2, f3];

        // Transcription guard: Chevalley relations for the A₃ Cartan matrix.
        let cartan = |i: usize, j: usize| -> i64 {
            if i == j {
                2
            } else if i.abs_diff(j) == 1 {
                -1
            } else {
                0
            }
        };
        for i in 0..3 {
            for j in 0..3 {
                let he = bracket(&h[i], &e[j]);
                let expect = e[j].scaled(&Scalar::from_int(cartan(i, j)));
                assert!(
                    (&he - &expect).is_zero(),
                    "[h{},e{}] violates the Cartan matrix",
                    i + 1,
                    j + 1
                );
                let hf = bracket(&h[i], &f[j]);
                let expect = f[j].scaled(&Scalar::from_int(-cartan(i, j)));
                assert!((&hf - &expect).is_zero(), "[h{},f{}] violates the Cartan matrix", i + 1, j + 1);
                let ef = bracket(&e[i], &f[j]);
                let expect = if i == j { h[i].clone() } else { ContactElement::zero() };
                assert!((&ef - &expect).is_zero(), "[e{},f{}] is not delta*h", i + 1, j + 1);
                assert!(bracket(&h[i], &h[j]).is_zero(), "h's do not commute");
            }
        }

        let v1 = &ContactElement::from_indices(1, &[1], Scalar::one())
            + &ContactElement::from_indices(1, &[2], Scalar::i());
        let xi3 = |a: u8, b: u8, c: u8, re: i64, im: i64| {
            ContactElement::from_indices(0, &[a, b, c], Scalar::gauss(re, im, 1))
        };
        let mut v2 = ContactElement::zero();
        for part in [
            xi3(1, 3, 5, -1, 0),
            xi3(2, 4, 6, 0, -1),
            xi3(2, 4, 5, 1, 0),
            xi3(1, 3, 6, 0, 1),
            xi3(1, 4, 6, -1, 0),
            xi3(2, 3, 5, 0, -1),
            xi3(2, 3, 6, -1, 0),
            xi3(1, 4, 5, 0, -1),
        ] {
            v2 = &v2 + &part;
        }

        let lin = |i: u8, j: u8, si: i64| {
            // ξ_j ± iξ_i combinations defining the w's.
            &ContactElement::from_indices(0, &[j], Scalar::from_int(si))
                + &ContactElement::from_indices(0, &[i], Scalar::i())
        };
        let w = [
            lin(1, 2, 1),  // w12 = ξ2 + iξ1
            lin(3, 4, 1),  // w13 = ξ4 + iξ3
            lin(5, 6, 1),  // w14 = ξ6 + iξ5
            lin(5, 6, -1), // w23 = −ξ6 + iξ5
            {
                // w24 = ξ4 − iξ3
                &ContactElement::from_indices(0, &[4], Scalar::one())
                    - &ContactElement::from_indices(0, &[3], Scalar::i())
            },
            lin(1, 2, -1), // w34 = −ξ2 + iξ1
        ];

        // sl(4) basis images: Chevalley generators and iterated brackets.
        let e13 = bracket(&e[0], &e[1]);
        let e24 = bracket(&e[1], &e[2]);
        let e14 = bracket(&e[0], &e24);
        let e31 = bracket(&f[1], &f[0]);
        let e42 = bracket(&f[2], &f[1]);
        let e41 = bracket(&f[2], &e31);
        let sl4 = [
            h[0].clone(),
            h[1].clone(),
            h[2].clone(),
            e[0].clone(),
            e[1].clone(),
            e[2].clone(),
            e13,
            e24,
            e14,
            f[0].clone(),
            f[1].clone(),
            f[2].clone(),
            e31,
            e42,
            e41,
        ];

        E16Basis {
            h,
            e,
            f,
            theta: ContactElement::theta(),
            t: ContactElement::t(),
            v1,
            v2,
            w,
            sl4,
        }
    }
}

pub static BASIS: LazyLock<E16Basis> = LazyLock::new(E16Basis::build);

/// Masks of the fifteen ξᵢξⱼ monomials, ascending.
fn xi2_masks() -> Vec<u8> {
    (0u8..64).filter(|m| m.count_ones() == 2).collect()
}

/// Columns of the 15×15 change of basis from sl(4) basis elements to ξξ
/// monomial coordinates, inverted once.
static SL4_SOLVER: LazyLock<ExactMatrix> = LazyLock::new(|| {
    let masks = xi2_masks();
    let pos: BTreeMap<u8, usize> = masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut triplets = Vec::new();
    for (col, elem) in BASIS.sl4.iter().enumerate() {
        for ((m, mask), c) in elem.iter() {
            assert_eq!(*m, 0);
            triplets.push((pos[mask], col, c.clone()));
        }
    }
    let fwd = ExactMatrix::from_triplets(15, 15, triplets);
    // Invert by solving against the identity column by column.
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(15);
    for j in 0..15 {
        let mut rhs = vec![Scalar::zero(); 15];
        rhs[j] = Scalar::one();
        cols.push(fwd.solve(&rhs).expect("sl4 basis must be invertible"));
    }
    let mut triplets = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            if !v.is_zero() {
                triplets.push((i, j, v.clone()));
            }
        }
    }
    ExactMatrix::from_triplets(15, 15, triplets)
});

/// Split a degree-0 element of E(1,6)₀ as c·t plus an sl(4) matrix.
/// Panics when the element is not in ⟨t⟩ ⊕ ⟨ξᵢξⱼ⟩.
pub fn decompose_degree0(g: &ContactElement) -> (Scalar, Mat4) {
    let masks = xi2_masks();
    let pos: BTreeMap<u8, usize> = masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut ct = Scalar::zero();
    let mut rhs = vec![Scalar::zero(); 15];
    for ((m, mask), c) in g.iter() {
        if (*m, *mask) == (1, 0) {
            ct = c.clone();
        } else if *m == 0 && mask.count_ones() == 2 {
            rhs[pos[mask]] = c.clone();
        } else {
            panic!("element is not in E(1,6)_0: stray monomial t^{m} mask {mask:#08b}");
        }
    }
    let coords = SL4_SOLVER.apply(&rhs);
    let mut mat = mat4_zero();
    for (i, c) in coords.iter().enumerate() {
        if !c.is_zero() {
            mat = mat4_add(&mat, &mat4_scale(&sl4_basis_matrix(i), c));
        }
    }
    (ct, mat)
}

/// Coordinates of a degree-(−1) element in the w-basis.
pub fn w_coords(g: &ContactElement) -> [Scalar; 6] {
    let mut c = [const { None }; 6];
    let mut cs: Vec<Scalar> = (1..=6).map(|i| g.coeff(0, 1 << (i - 1))).collect();
    for ((m, mask), _) in g.iter() {
        assert!(*m == 0 && mask.count_ones() == 1, "element is not in E(1,6)_-1");
    }
    let half = Scalar::ratio(1, 2);
    let mihalf = -&(&Scalar::i() * &half);
    // ξ₁ = −(i/2)(w₁₂+w₃₄), ξ₂ = (w₁₂−w₃₄)/2, ξ₃ = −(i/2)(w₁₃−w₂₄),
    // ξ₄ = (w₁₃+w₂₄)/2, ξ₅ = −(i/2)(w₁₄+w₂₃), ξ₆ = (w₁₄−w₂₃)/2.
    let c1 = cs.remove(0);
    let c2 = cs.remove(0);
    let c3 = cs.remove(0);
    let c4 = cs.remove(0);
    let c5 = cs.remove(0);
    let c6 = cs.remove(0);
    c[0] = Some(&(&c1 * &mihalf) + &(&c2 * &half)); // w12
    c[5] = Some(&(&c1 * &mihalf) - &(&c2 * &half)); // w34
    c[1] = Some(&(&c3 * &mihalf) + &(&c4 * &half)); // w13
    c[4] = Some(&(&(-&c3) * &mihalf) + &(&c4 * &half)); // w24
    c[2] = Some(&(&c5 * &mihalf) + &(&c6 * &half)); // w14
    c[3] = Some(&(&c5 * &mihalf) - &(&c6 * &half)); // w23
    c.map(Option::unwrap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rayon::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn products_and_signs() {
        let x1 = ContactElement::xi(1);
        let x2 = ContactElement::xi(2);
        assert!(x1.mul(&x1).is_zero());
        assert_eq!(x1.mul(&x2), ContactElement::monomial(0, 0b11));
        assert_eq!(x2.mul(&x1), ContactElement::monomial(0, 0b11).scaled(&s(-1)));
        // ξ₂ξ₁ written via index list normalizes with a sign.
        assert_eq!(
            ContactElement::from_indices(0, &[2, 1], Scalar::one()),
            ContactElement::monomial(0, 0b11).scaled(&s(-1))
        );
        assert!(ContactElement::from_indices(0, &[3, 3], Scalar::one()).is_zero());
    }

    #[test]
    fn grading_and_derivatives() {
        assert_eq!(ContactElement::t().degree(), Some(0));
        assert_eq!(ContactElement::one().degree(), Some(-2));
        assert_eq!(ContactElement::xi(4).degree(), Some(-1));
        assert_eq!(ContactElement::from_indices(2, &[1, 3, 5], Scalar::one()).degree(), Some(5));
        let f = ContactElement::from_indices(3, &[2, 5], Scalar::one());
        assert_eq!(f.partial_t(), ContactElement::from_indices(2, &[2, 5], s(3)));
        // Left derivative: ∂₅(ξ₂ξ₅) = −ξ₂.
        assert_eq!(f.partial_xi(5), ContactElement::from_indices(3, &[2], s(-1)));
        assert_eq!(f.partial_xi(2), ContactElement::from_indices(3, &[5], s(1)));
        assert!(f.partial_xi(1).is_zero());
    }

    #[test]
    fn bracket_basics() {
        // [ξᵢ,ξᵢ] = −1, [ξᵢ,ξⱼ] = 0 for i ≠ j.
        for i in 1..=6 {
            for j in 1..=6 {
                let b = bracket(&ContactElement::xi(i), &ContactElement::xi(j));
                if i == j {
                    assert_eq!(b, ContactElement::one().scaled(&s(-1)));
                } else {
                    assert!(b.is_zero());
                }
            }
        }
        // [t, b] = degr(b)·b on monomials.
        for (m, mask) in [(0u32, 0b111u8), (1, 0b1), (2, 0), (1, 0b110101)] {
            let b = ContactElement::monomial(m, mask);
            let expect = b.scaled(&s(b.degree().unwrap() as i64));
            assert_eq!(bracket(&ContactElement::t(), &b), expect);
        }
        // [Θ, ·] = −∂ₜ.
        let f = ContactElement::from_indices(2, &[1, 4], Scalar::gauss(1, 2, 3));
        assert_eq!(bracket(&ContactElement::theta(), &f), -&f.partial_t());
    }

    #[test]
    fn hodge_and_a_operator() {
        // ξ₁₃₅* = −ξ₂₄₆ and ξ_I ξ_I* = ξ₁…ξ₆ on a few cases.
        let dual = ContactElement::from_indices(0, &[1, 3, 5], Scalar::one()).hodge_dual();
        assert_eq!(dual, ContactElement::from_indices(0, &[2, 4, 6], s(-1)));
        for mask in [0u8, 0b1, 0b101, 0b110, 0b10101, 0b111111] {
            let f = ContactElement::monomial(0, mask);
            assert_eq!(f.mul(&f.hodge_dual()), ContactElement::monomial(0, 0b111111));
        }
        // A(t) = 0, A(ξ₁₂₃) = ξ₄₅₆.
        assert!(ContactElement::t().a_operator().is_zero());
        assert_eq!(
            ContactElement::monomial(0, 0b111).a_operator(),
            ContactElement::monomial(0, 0b111000)
        );
        // Generators: gen(1,∅) = t, gen(0,{1}) = ξ₁, gen(0,{1,3,5}) = ξ₁₃₅+iξ₂₄₆.
        assert_eq!(e16_generator(1, 0), ContactElement::t());
        assert_eq!(e16_generator(0, 0b1), ContactElement::xi(1));
        let g = e16_generator(0, 0b10101);
        let expect = &ContactElement::monomial(0, 0b10101)
            + &ContactElement::monomial(0, 0b101010).scaled(&Scalar::i());
        assert_eq!(g, expect);
    }

    #[test]
    fn e16_graded_dimensions() {
        assert_eq!(e16_slice(-2).1.dim(), 1);
        assert_eq!(e16_slice(-1).1.dim(), 6);
        let (monomials, slice0) = e16_slice(0);
        assert_eq!(slice0.dim(), 16);
        // Degree 0 is ⟨t⟩ plus the full ξξ span.
        let mut vecs = vec![slice_coords(&ContactElement::t(), &monomials)];
        for mask in xi2_masks() {
            vecs.push(slice_coords(&ContactElement::monomial(0, mask), &monomials));
        }
        assert_eq!(slice0, Subspace::from_vectors(monomials.len(), vecs));
    }

    #[test]
    fn lowering_generators_by_theta() {
        // gen(m,I) = −1/(m+1)·[Θ, gen(m+1,I)].
        for mask in [0u8, 0b1, 0b11, 0b111, 0b100110] {
            if mask.count_ones() > 3 {
                continue;
            }
            for m in 0..3u32 {
                let lhs = e16_generator(m, mask);
                let br = bracket(&ContactElement::theta(), &e16_generator(m + 1, mask));
                let rhs = br.scaled(&-Scalar::ratio(1, (m as i64) + 1));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn bracket_closure_on_generators() {
        // Brackets of generators of degree ≤ 3 land back in E(1,6).
        let mut gens = Vec::new();
        for d in -2..=3i32 {
            for s in 0..=3i32 {
                let twom = d + 2 - s;
                if twom >= 0 && twom % 2 == 0 {
                    for mask in 0u8..64 {
                        if mask.count_ones() as i32 == s {
                            gens.push(e16_generator((twom / 2) as u32, mask));
                        }
                    }
                }
            }
        }
        let mut slices: BTreeMap<i32, (Vec<(u32, u8)>, Subspace)> = BTreeMap::new();
        for a in &gens {
            for b in &gens {
                let br = bracket(a, b);
                if br.is_zero() {
                    continue;
                }
                let d = br.degree().expect("bracket of homogeneous is homogeneous");
                let (monomials, space) = slices.entry(d).or_insert_with(|| e16_slice(d));
                assert!(
                    space.contains_vec(&slice_coords(&br, monomials)),
                    "bracket left E(1,6) in degree {d}"
                );
            }
        }
    }

    #[test]
    fn chevalley_elements_verify() {
        // Construction alone runs the Cartan checks, including [h₃,e₃] = 2e₃.
        let b = &*BASIS;
        assert_eq!(bracket(&b.h[2], &b.e[2]), b.e[2].scaled(&s(2)));
        // v₁, v₂ are weight vectors killed by the lowering triple.
        for v in [&b.v1, &b.v2] {
            for i in 0..3 {
                assert!(bracket(&b.f[i], &bracket(&b.f[i], &bracket(&b.f[i], v))).is_zero());
            }
        }
        assert_eq!(b.v1.degree(), Some(1));
        assert_eq!(b.v2.degree(), Some(1));
    }

    #[test]
    fn sl4_identification_is_a_homomorphism() {
        let b = &*BASIS;
        for i in 0..15 {
            for j in 0..15 {
                let br = bracket(&b.sl4[i], &b.sl4[j]);
                let (ct, m) = if br.is_zero() {
                    (Scalar::zero(), mat4_zero())
                } else {
                    decompose_degree0(&br)
                };
                assert!(ct.is_zero());
                let expect = mat4_commutator(&sl4_basis_matrix(i), &sl4_basis_matrix(j));
                let diff = mat4_add(&m, &mat4_scale(&expect, &s(-1)));
                assert!(mat4_is_zero(&diff), "sl4 bracket mismatch at ({i},{j})");
            }
        }
    }

    #[test]
    fn degree0_decomposition_round_trip() {
        let b = &*BASIS;
        let g = &b.t.scaled(&Scalar::gauss(2, -1, 3))
            + &(&b.e[0].scaled(&Scalar::i()) + &b.f[2].scaled(&Scalar::ratio(5, 2)));
        let (ct, m) = decompose_degree0(&g);
        assert_eq!(ct, Scalar::gauss(2, -1, 3));
        let mut expect = mat4_scale(&mat4_unit(1, 2), &Scalar::i());
        expect = mat4_add(&expect, &mat4_scale(&mat4_unit(4, 3), &Scalar::ratio(5, 2)));
        let diff = mat4_add(&m, &mat4_scale(&expect, &s(-1)));
        assert!(mat4_is_zero(&diff));
    }

    #[test]
    fn w_basis_brackets() {
        let b = &*BASIS;
        let theta = ContactElement::theta();
        for (i, wi) in b.w.iter().enumerate() {
            for (j, wj) in b.w.iter().enumerate() {
                let br = bracket(wi, wj);
                let expect = match (W_LABELS[i], W_LABELS[j]) {
                    ((1, 2), (3, 4)) | ((3, 4), (1, 2)) => theta.scaled(&s(-4)),
                    ((1, 3), (2, 4)) | ((2, 4), (1, 3)) => theta.scaled(&s(4)),
                    ((1, 4), (2, 3)) | ((2, 3), (1, 4)) => theta.scaled(&s(-4)),
                    _ => ContactElement::zero(),
                };
                assert_eq!(br, expect, "[w{:?}, w{:?}]", W_LABELS[i], W_LABELS[j]);
            }
        }
        // [ξᵢ,ξᵢ] = −1 = 2Θ underlies ηᵢ² = Θ in the enveloping algebra.
        for i in 1..=6 {
            let br = bracket(&ContactElement::xi(i), &ContactElement::xi(i));
            assert_eq!(br, theta.scaled(&s(2)));
        }
    }

    #[test]
    fn w_coordinates_round_trip() {
        let b = &*BASIS;
        let g = &(&b.w[0].scaled(&Scalar::gauss(1, 1, 2)) + &b.w[3].scaled(&s(-3)))
            + &b.w[5].scaled(&Scalar::i());
        let coords = w_coords(&g);
        let mut back = ContactElement::zero();
        for (k, c) in coords.iter().enumerate() {
            back = &back + &b.w[k].scaled(c);
        }
        assert_eq!(back, g);
        assert_eq!(coords[0], Scalar::gauss(1, 1, 2));
        assert_eq!(coords[3], s(-3));
        assert_eq!(coords[5], Scalar::i());
    }

    #[test]
    fn g1_is_generated_from_lowest_vectors() {
        // Raising v₁, v₂ by the eᵢ's spans the whole degree-1 component.
        let b = &*BASIS;
        let (monomials, slice1) = e16_slice(1);
        let mut frontier = vec![b.v1.clone(), b.v2.clone()];
        let mut vecs: Vec<SRow> = frontier.iter().map(|v| slice_coords(v, &monomials)).collect();
        for _ in 0..8 {
            let mut next = Vec::new();
            for g in &frontier {
                for ei in &b.e[..] {
                    let r = bracket(ei, g);
                    if !r.is_zero() {
                        vecs.push(slice_coords(&r, &monomials));
                        next.push(r);
                    }
                }
            }
            frontier = next;
        }
        let span = Subspace::from_vectors(monomials.len(), vecs);
        assert_eq!(span, slice1, "lowest vectors generate E(1,6)_1");
        assert_eq!(span.dim(), 16);
    }

    #[test]
    fn super_skew_symmetry_and_jacobi() {
        // Monomial pairs with t-exponent ≤ 2 each: skew-symmetry.
        let mut monos = Vec::new();
        for m in 0..=2u32 {
            for mask in 0u8..64 {
                monos.push(ContactElement::monomial(m, mask));
            }
        }
        for a in &monos {
            for bm in &monos {
                let (pa, pb) = (a.parity().unwrap(), bm.parity().unwrap());
                // [a,b] = −(−1)^{p(a)p(b)} [b,a].
                let lhs = bracket(a, bm);
                let mut rhs = bracket(bm, a);
                if pa * pb == 1 {
                    rhs = rhs.scaled(&s(-1));
                }
                assert!((&lhs + &rhs).is_zero(), "skew symmetry failed");
            }
        }
        // Degree additivity on a sample.
        let x = ContactElement::from_indices(1, &[2, 3], Scalar::one());
        let y = ContactElement::from_indices(0, &[1, 4, 5], Scalar::one());
        let br = bracket(&x, &y);
        assert_eq!(br.degree(), Some(x.degree().unwrap() + y.degree().unwrap()));

        // Super Jacobi on all triples of monomials with total t-exponent ≤ 2.
        let masks: Vec<u8> = (0u8..64).collect();
        let failures: usize = masks
            .par_iter()
            .map(|&ma| {
                let mut bad = 0;
                for mb in 0u8..64 {
                    for mc in 0u8..64 {
                        for (ta, tb, tc) in
                            [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)]
                        {
                            let a = ContactElement::monomial(ta, ma);
                            let b = ContactElement::monomial(tb, mb);
                            let c = ContactElement::monomial(tc, mc);
                            let pa = (ma.count_ones() % 2) as i64;
                            let pb = (mb.count_ones() % 2) as i64;
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
        assert_eq!(failures, 0, "super Jacobi identity failed");
    }
}
