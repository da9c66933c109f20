//! Finite Verma modules over E(1,6): PBW normal form in U(g₋) on the letters
//! Θ, w₁₂,…,w₃₄, the action of homogeneous algebra elements, graded slices,
//! and the singular-vector solver.

use crate::contact::{bracket, decompose_degree0, w_coords, ContactElement, BASIS};
use crate::linalg::{ExactMatrix, SRow};
use crate::poly::{act_matrix, PolyVector};
use crate::scalar::Scalar;
use crate::weights::WeightModule;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Θ^k·w_S in PBW normal order (w-factors ascending); bit b of `mask` is the
/// b-th w-letter in the order w₁₂ < w₁₃ < w₁₄ < w₂₃ < w₂₄ < w₃₄.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct PbwMonomial {
    pub k: u32,
    pub mask: u8,
}

impl PbwMonomial {
    pub fn one() -> Self {
        PbwMonomial { k: 0, mask: 0 }
    }

    /// 2k + |S|.
    pub fn degree(&self) -> u32 {
        2 * self.k + self.mask.count_ones()
    }

    /// Parity |S| mod 2.
    pub fn parity(&self) -> u8 {
        (self.mask.count_ones() % 2) as u8
    }

    /// gl(4) weight of w_S (Θ is weight-free).
    pub fn gl4_weight(&self) -> [i64; 4] {
        let mut w = [0i64; 4];
        for b in 0..6 {
            if self.mask & (1 << b) != 0 {
                let (k, l) = crate::contact::W_LABELS[b];
                w[k as usize - 1] += 1;
                w[l as usize - 1] += 1;
            }
        }
        w
    }

    pub fn sl4_weight(&self) -> [i64; 3] {
        let w = self.gl4_weight();
        [w[0] - w[1], w[1] - w[2], w[2] - w[3]]
    }
}

impl std::fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        if self.k == 1 {
            write!(f, "O")?;
            first = false;
        } else if self.k > 1 {
            write!(f, "O^{}", self.k)?;
            first = false;
        }
        for b in 0..6 {
            if self.mask & (1 << b) != 0 {
                if !first {
                    write!(f, " ")?;
                }
                let (k, l) = crate::contact::W_LABELS[b];
                write!(f, "w{k}{l}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// An element of U(g₋) in normal form.
pub type UElement = BTreeMap<PbwMonomial, Scalar>;

/// Add c·m into a normal form, dropping cancelled monomials.
pub fn u_add_term(u: &mut UElement, m: PbwMonomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match u.entry(m) {
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

pub fn u_one() -> UElement {
    let mut u = UElement::new();
    u.insert(PbwMonomial::one(), Scalar::one());
    u
}

pub fn u_monomial(k: u32, mask: u8) -> UElement {
    let mut u = UElement::new();
    u.insert(PbwMonomial { k, mask }, Scalar::one());
    u
}

/// {w_a, w_b} = c·Θ for the three complementary letter pairs.
fn anticommutator_constant(a: u8, b: u8) -> i64 {
    match (a.min(b), a.max(b)) {
        (0, 5) => -4,
        (1, 4) => 4,
        (2, 3) => -4,
        _ => 0,
    }
}

/// Normal-ordered w_x·(w-monomial): list of (extra Θ-power, mask, coefficient).
fn left_mul_bit(x: u8, mask: u8) -> Vec<(u32, u8, i64)> {
    if mask == 0 {
        return vec![(0, 1 << x, 1)];
    }
    let f = mask.trailing_zeros() as u8;
    let rest = mask & !(1 << f);
    if x == f {
        return Vec::new();
    }
    if x < f {
        return vec![(0, (1 << x) | mask, 1)];
    }
    let mut out: Vec<(u32, u8, i64)> = left_mul_bit(x, rest)
        .into_iter()
        .map(|(k, m, c)| (k, m | (1 << f), -c))
        .collect();
    let cc = anticommutator_constant(x, f);
    if cc != 0 {
        out.push((1, rest, cc));
    }
    out
}

/// Product of two normal-form monomials.
pub fn pbw_mul_monomials(a: PbwMonomial, b: PbwMonomial) -> Vec<(PbwMonomial, Scalar)> {
    let mut acc: Vec<(u32, u8, Scalar)> = vec![(a.k + b.k, b.mask, Scalar::one())];
    let mut bits: Vec<u8> = (0..6).filter(|b| a.mask & (1 << b) != 0).collect();
    bits.reverse();
    for x in bits {
        let mut next = Vec::new();
        for (k, mask, c) in acc {
            for (dk, m2, c2) in left_mul_bit(x, mask) {
                next.push((k + dk, m2, &c * &Scalar::from_int(c2)));
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(k, mask, c)| (PbwMonomial { k, mask }, c)).collect()
}

/// Product in U(g₋).
pub fn pbw_mul(a: &UElement, b: &UElement) -> UElement {
    let mut out = UElement::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            for (m, c) in pbw_mul_monomials(*ma, *mb) {
                u_add_term(&mut out, m, &c * &(ca * cb));
            }
        }
    }
    out
}

/// An element of the finite Verma module U(g₋)⊗F.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct VermaElement {
    terms: BTreeMap<PbwMonomial, PolyVector>,
}

impl VermaElement {
    pub fn zero() -> Self {
        VermaElement::default()
    }

    /// 1 ⊗ f.
    pub fn from_f(f: PolyVector) -> Self {
        let mut v = VermaElement::zero();
        v.add_term(PbwMonomial::one(), f);
        v
    }

    pub fn term(m: PbwMonomial, f: PolyVector) -> Self {
        let mut v = VermaElement::zero();
        v.add_term(m, f);
        v
    }

    pub fn add_term(&mut self, m: PbwMonomial, f: PolyVector) {
        if f.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(f);
            }
            Entry::Occupied(mut e) => {
                let sum = &*e.get() + &f;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PbwMonomial, &PolyVector)> {
        self.terms.iter()
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(m, f)| (*m, f.scaled(c))).collect();
        VermaElement { terms }
    }

    /// Common PBW degree of all terms; `None` for 0 or mixed degrees.
    pub fn pbw_degree(&self) -> Option<u32> {
        let mut deg = None;
        for m in self.terms.keys() {
            match deg {
                None => deg = Some(m.degree()),
                Some(prev) if prev != m.degree() => return None,
                _ => {}
            }
        }
        deg
    }

    /// Common sl(4) weight (w-part plus polynomial part); `None` if mixed.
    pub fn sl4_weight(&self) -> Option<[i64; 3]> {
        let mut wt = None;
        for (m, f) in &self.terms {
            let fw = f.sl4_weight()?;
            let mw = m.sl4_weight();
            let w = [fw[0] + mw[0], fw[1] + mw[1], fw[2] + mw[2]];
            match wt {
                None => wt = Some(w),
                Some(prev) if prev != w => return None,
                _ => {}
            }
        }
        wt
    }
}

impl std::ops::Add for &VermaElement {
    type Output = VermaElement;
    fn add(self, rhs: &VermaElement) -> VermaElement {
        let mut out = self.clone();
        for (m, f) in &rhs.terms {
            out.add_term(*m, f.clone());
        }
        out
    }
}

impl std::ops::Sub for &VermaElement {
    type Output = VermaElement;
    fn sub(self, rhs: &VermaElement) -> VermaElement {
        let mut out = self.clone();
        for (m, f) in &rhs.terms {
            out.add_term(*m, -f);
        }
        out
    }
}

impl std::fmt::Display for VermaElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, p)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m} (x) ({p})")?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for VermaElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// Left multiplication by an element of U(g₋).
pub fn u_mul_verma(u: &UElement, v: &VermaElement) -> VermaElement {
    let mut out = VermaElement::zero();
    for (mu, cu) in u {
        for (mv, f) in v.iter() {
            for (m, c) in pbw_mul_monomials(*mu, *mv) {
                out.add_term(m, f.scaled(&(&c * cu)));
            }
        }
    }
    out
}

/// Action of a homogeneous element of E(1,6) ⊂ K(1,6) on a Verma element.
pub fn act(a: &ContactElement, v: &VermaElement, module: &WeightModule) -> VermaElement {
    if a.is_zero() || v.is_zero() {
        return VermaElement::zero();
    }
    let parity = a.parity().expect("act needs parity-homogeneous input");
    let degree = a.degree().expect("act needs degree-homogeneous input");
    let mut out = VermaElement::zero();
    for (m, f) in v.iter() {
        out = &out + &act_on_term(a, parity, degree, *m, f, module);
    }
    out
}

fn act_on_term(
    a: &ContactElement,
    parity: u8,
    degree: i32,
    m: PbwMonomial,
    f: &PolyVector,
    module: &WeightModule,
) -> VermaElement {
    if m.k > 0 {
        // a·Θu = Θ·(a·u) + [a,Θ]·u.
        let rest = PbwMonomial { k: m.k - 1, mask: m.mask };
        let inner = act_on_term(a, parity, degree, rest, f, module);
        let mut out = u_mul_verma(&u_monomial(1, 0), &inner);
        let br = bracket(a, &ContactElement::theta());
        if !br.is_zero() {
            out = &out + &act_on_term(&br, parity, degree - 2, rest, f, module);
        }
        return out;
    }
    if m.mask != 0 {
        // a·w_b u = (−1)^{p(a)}·w_b·(a·u) + [a,w_b]·u.
        let b = m.mask.trailing_zeros() as u8;
        let rest = PbwMonomial { k: 0, mask: m.mask & !(1 << b) };
        let inner = act_on_term(a, parity, degree, rest, f, module);
        let mut out = u_mul_verma(&u_monomial(0, 1 << b), &inner);
        if parity == 1 {
            out = out.scaled(&-Scalar::one());
        }
        let br = bracket(a, &BASIS.w[b as usize]);
        if !br.is_zero() {
            out = &out + &act_on_term(&br, (parity + 1) % 2, degree - 1, rest, f, module);
        }
        return out;
    }
    // Base case: a·(1⊗f), by the degree of a.
    match degree {
        d if d >= 1 => VermaElement::zero(),
        0 => {
            let (ct, mat) = decompose_degree0(a);
            let mut g = act_matrix(&mat, f);
            if !ct.is_zero() {
                g = &g + &f.scaled(&(&ct * &module.t_scalar));
            }
            VermaElement::from_f(g)
        }
        -1 => {
            let coords = w_coords(a);
            let mut out = VermaElement::zero();
            for (b, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    out.add_term(PbwMonomial { k: 0, mask: 1 << b }, f.scaled(c));
                }
            }
            out
        }
        -2 => {
            // a = c·1 = (−2c)·Θ.
            let c = a.coeff(0, 0);
            VermaElement::term(PbwMonomial { k: 1, mask: 0 }, f.scaled(&-&(&c + &c)))
        }
        d => panic!("unexpected degree {d} in the action"),
    }
}

/// PBW monomials of w-degree d, ascending.
pub fn pbw_monomials_of_degree(d: u32) -> Vec<PbwMonomial> {
    let mut out = Vec::new();
    for k in 0..=(d / 2) {
        let s = d - 2 * k;
        if s > 6 {
            continue;
        }
        for mask in 0u8..64 {
            if mask.count_ones() == s {
                out.push(PbwMonomial { k, mask });
            }
        }
    }
    out.sort();
    out
}

/// The basis layout of a graded slice: (PBW monomial, module basis index),
/// PBW-major in (k, mask) order.
pub struct Slice<'a> {
    pub module: &'a WeightModule,
    pub degree: u32,
    pub pbw: Vec<PbwMonomial>,
    pub offset: BTreeMap<PbwMonomial, usize>,
}

impl<'a> Slice<'a> {
    pub fn new(module: &'a WeightModule, degree: u32) -> Self {
        let pbw = pbw_monomials_of_degree(degree);
        let offset = pbw.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Slice { module, degree, pbw, offset }
    }

    pub fn dim(&self) -> usize {
        self.pbw.len() * self.module.dim()
    }

    /// The (PBW monomial, basis index) pair at a coordinate position.
    pub fn label(&self, pos: usize) -> (PbwMonomial, usize) {
        (self.pbw[pos / self.module.dim()], pos % self.module.dim())
    }

    /// Coordinates of a degree-d element; panics on stray degrees or
    /// polynomial parts outside the module.
    pub fn coords(&self, v: &VermaElement) -> SRow {
        let dim = self.module.dim();
        let mut row: SRow = Vec::new();
        for (m, f) in v.iter() {
            let o = *self
                .offset
                .get(m)
                .unwrap_or_else(|| panic!("monomial {m} is not of degree {}", self.degree));
            let coords = self
                .module
                .express(f)
                .expect("polynomial part escaped the weight module");
            for (j, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    row.push((o * dim + j, c));
                }
            }
        }
        row.sort_by_key(|(i, _)| *i);
        row
    }

    /// The element with the given coordinates.
    pub fn element(&self, row: &SRow) -> VermaElement {
        let mut out = VermaElement::zero();
        for (pos, c) in row {
            let (m, j) = self.label(*pos);
            out.add_term(m, self.module.basis[j].scaled(c));
        }
        out
    }

    /// sl(4) weights of every coordinate position.
    pub fn weights(&self) -> Vec<[i64; 3]> {
        let fw: Vec<[i64; 3]> = self
            .module
            .basis
            .iter()
            .map(|b| b.sl4_weight().expect("module basis vectors are weight vectors"))
            .collect();
        let mut out = Vec::with_capacity(self.dim());
        for m in &self.pbw {
            let mw = m.sl4_weight();
            for w in &fw {
                out.push([w[0] + mw[0], w[1] + mw[1], w[2] + mw[2]]);
            }
        }
        out
    }
}

/// All singular vectors of PBW degree d: weight vectors annihilated by
/// e₁, e₂, e₃ and (for d ≥ 1) by the lowest vectors v₁, v₂ of g₁. Each output
/// is normalized so its least nonzero slice coordinate is 1.
pub fn find_singular_vectors(module: &WeightModule, d: u32) -> Vec<VermaElement> {
    let slice = Slice::new(module, d);
    let below = (d >= 1).then(|| Slice::new(module, d - 1));
    let weights = slice.weights();

    // Group slice positions by weight.
    let mut blocks: BTreeMap<[i64; 3], Vec<usize>> = BTreeMap::new();
    for (pos, w) in weights.iter().enumerate() {
        blocks.entry(*w).or_default().push(pos);
    }
    // Apply the five operators to every slice basis vector once.
    let b = &*BASIS;
    let mut ops: Vec<(&ContactElement, bool)> = vec![(&b.e[0], false), (&b.e[1], false), (&b.e[2], false)];
    if below.is_some() {
        ops.push((&b.v1, true));
        ops.push((&b.v2, true));
    }
    let dim = slice.dim();
    let images: Vec<Vec<SRow>> = (0..dim)
        .into_par_iter()
        .map(|pos| {
            let (m, j) = slice.label(pos);
            let v = VermaElement::term(m, module.basis[j].clone());
            ops.iter()
                .map(|(op, lowers)| {
                    let img = act(op, &v, module);
                    if *lowers {
                        below.as_ref().unwrap().coords(&img)
                    } else {
                        slice.coords(&img)
                    }
                })
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    for positions in blocks.values() {
        // Row space: the union of target positions reached from this block.
        let mut row_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut triplets = Vec::new();
        for (col, &pos) in positions.iter().enumerate() {
            for (op_idx, img) in images[pos].iter().enumerate() {
                for (tpos, c) in img {
                    let next = row_of.len();
                    let r = *row_of.entry((op_idx, *tpos)).or_insert(next);
                    triplets.push((r, col, c.clone()));
                }
            }
        }
        let m = ExactMatrix::from_triplets(row_of.len(), positions.len(), triplets);
        let kernel = m.kernel_basis();
        for kv in kernel.basis() {
            // Lift block coordinates back to slice coordinates.
            let full: SRow = kv.iter().map(|(c, s)| (positions[*c], s.clone())).collect();
            out.push(slice.element(&full));
        }
    }
    out
}
