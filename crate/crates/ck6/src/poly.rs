//! Polynomials in the twenty variables
//! x₁..x₄, x₁₂..x₃₄, x₁*..x₄*, x₁₂*..x₃₄* realizing sl(4)-modules as spaces
//! of polynomial vectors, together with the gl(4) action by derivations, the
//! degeneracy operators D, D₁..D₄, and the weight/bigrading bookkeeping.

use crate::contact::Mat4;
use crate::linalg::SRow;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Number of polynomial variables.
pub const N_VARS: usize = 20;

/// Pair labels of wedge variables in storage order (matches the w-basis).
pub const WEDGE_LABELS: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

/// Variable index of x_a for 1 ≤ a ≤ 4.
pub fn var_x(a: usize) -> usize {
    debug_assert!((1..=4).contains(&a));
    a - 1
}

/// Variable index of x_a* for 1 ≤ a ≤ 4.
pub fn var_x_dual(a: usize) -> usize {
    debug_assert!((1..=4).contains(&a));
    10 + a - 1
}

fn wedge_pos(a: usize, b: usize) -> usize {
    WEDGE_LABELS
        .iter()
        .position(|&(c, d)| (c, d) == (a, b))
        .expect("ordered wedge pair")
}

/// x_{ab} with arbitrary index order: the variable index and the sign of
/// sorting, `None` for a = b.
pub fn var_wedge(a: usize, b: usize) -> Option<(usize, i64)> {
    match a.cmp(&b) {
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Less => Some((4 + wedge_pos(a, b), 1)),
        std::cmp::Ordering::Greater => Some((4 + wedge_pos(b, a), -1)),
    }
}

/// x_{ab}* with arbitrary index order, as in [`var_wedge`].
pub fn var_wedge_dual(a: usize, b: usize) -> Option<(usize, i64)> {
    var_wedge(a, b).map(|(v, s)| (v + 10, s))
}

/// Human-readable variable names in storage order.
pub fn var_name(v: usize) -> String {
    match v {
        0..=3 => format!("x{}", v + 1),
        4..=9 => {
            let (a, b) = WEDGE_LABELS[v - 4];
            format!("x{a}{b}")
        }
        10..=13 => format!("x*{}", v - 10 + 1),
        14..=19 => {
            let (a, b) = WEDGE_LABELS[v - 14];
            format!("x*{a}{b}")
        }
        _ => panic!("variable index out of range"),
    }
}

/// A commutative monomial: exponent vector over the twenty variables,
/// ordered by total degree then lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u8; N_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; N_VARS])
    }

    pub fn var(v: usize) -> Self {
        let mut e = [0; N_VARS];
        e[v] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Degrees within the four variable groups (plain, wedge, dual, dual wedge).
    pub fn profile(&self) -> (u32, u32, u32, u32) {
        let block = |r: std::ops::Range<usize>| self.0[r].iter().map(|&e| e as u32).sum();
        (block(0..4), block(4..10), block(10..14), block(14..20))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for v in 0..N_VARS {
            e[v] += other.0[v];
        }
        Monomial(e)
    }

    /// gl(4) weight: the coefficient vector on ε₁..ε₄.
    pub fn gl4_weight(&self) -> [i64; 4] {
        let mut w = [0i64; 4];
        for v in 0..N_VARS {
            let e = self.0[v] as i64;
            if e == 0 {
                continue;
            }
            match v {
                0..=3 => w[v] += e,
                4..=9 => {
                    let (a, b) = WEDGE_LABELS[v - 4];
                    w[a - 1] += e;
                    w[b - 1] += e;
                }
                10..=13 => w[v - 10] -= e,
                _ => {
                    let (a, b) = WEDGE_LABELS[v - 14];
                    w[a - 1] -= e;
                    w[b - 1] -= e;
                }
            }
        }
        w
    }

    /// sl(4) weight: values on h₁, h₂, h₃.
    pub fn sl4_weight(&self) -> [i64; 3] {
        let w = self.gl4_weight();
        [w[0] - w[1], w[1] - w[2], w[2] - w[3]]
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.total_degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for v in 0..N_VARS {
            let e = self.0[v];
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", var_name(v))?;
            } else {
                write!(f, "{}^{}", var_name(v), e)?;
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// A polynomial vector: the basic currency of the weight-module layer.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyVector {
    terms: BTreeMap<Monomial, Scalar>,
}

impl PolyVector {
    pub fn zero() -> Self {
        PolyVector::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one())
    }

    pub fn variable(v: usize) -> Self {
        Self::monomial(Monomial::var(v))
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, Scalar::one());
        PolyVector { terms }
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next()
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(m, v)| (*m, v * c)).collect();
        PolyVector { terms }
    }

    pub fn mul(&self, other: &PolyVector) -> PolyVector {
        let mut out = PolyVector::zero();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> PolyVector {
        let mut out = PolyVector::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// ∂/∂x_v.
    pub fn partial(&self, v: usize) -> PolyVector {
        let mut out = PolyVector::zero();
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut n = *m;
            n.0[v] -= 1;
            out.add_term(n, c * &Scalar::from_int(e as i64));
        }
        out
    }

    /// Common sl(4) weight of all terms; `None` for 0 or mixed weights.
    pub fn sl4_weight(&self) -> Option<[i64; 3]> {
        let mut wt = None;
        for m in self.terms.keys() {
            let w = m.sl4_weight();
            match wt {
                None => wt = Some(w),
                Some(prev) if prev != w => return None,
                _ => {}
            }
        }
        wt
    }

    /// Coordinates with respect to an indexed monomial basis.
    pub fn coords(&self, index: &BTreeMap<Monomial, usize>) -> SRow {
        let mut row: SRow = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let i = *index.get(m).unwrap_or_else(|| panic!("monomial outside basis: {m}"));
            row.push((i, c.clone()));
        }
        row.sort_by_key(|(i, _)| *i);
        row
    }
}

impl std::ops::Add for &PolyVector {
    type Output = PolyVector;
    fn add(self, rhs: &PolyVector) -> PolyVector {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &PolyVector {
    type Output = PolyVector;
    fn sub(self, rhs: &PolyVector) -> PolyVector {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl std::ops::Neg for &PolyVector {
    type Output = PolyVector;
    fn neg(self) -> PolyVector {
        self.scaled(&-Scalar::one())
    }
}

impl std::fmt::Display for PolyVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if m.total_degree() == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for PolyVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// E_ab · x_v as a list of (variable, integer coefficient).
fn elementary_on_var(a: usize, b: usize, v: usize) -> Vec<(usize, i64)> {
    match v {
        0..=3 => {
            if b == v + 1 {
                vec![(var_x(a), 1)]
            } else {
                vec![]
            }
        }
        4..=9 => {
            let (c, d) = WEDGE_LABELS[v - 4];
            let mut out = Vec::new();
            if b == c {
                if let Some((w, s)) = var_wedge(a, d) {
                    out.push((w, s));
                }
            }
            if b == d {
                if let Some((w, s)) = var_wedge(c, a) {
                    out.push((w, s));
                }
            }
            out
        }
        10..=13 => {
            if a == v - 10 + 1 {
                vec![(var_x_dual(b), -1)]
            } else {
                vec![]
            }
        }
        14..=19 => {
            let (c, d) = WEDGE_LABELS[v - 14];
            let mut out = Vec::new();
            if a == c {
                if let Some((w, s)) = var_wedge_dual(b, d) {
                    out.push((w, -s));
                }
            }
            if a == d {
                if let Some((w, s)) = var_wedge_dual(c, b) {
                    out.push((w, -s));
                }
            }
            out
        }
        _ => panic!("variable index out of range"),
    }
}

/// E_ab acting as a derivation (1-based matrix indices).
pub fn act_elementary(a: usize, b: usize, p: &PolyVector) -> PolyVector {
    let mut out = PolyVector::zero();
    for (m, c) in p.iter() {
        for v in 0..N_VARS {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            for (w, s) in elementary_on_var(a, b, v) {
                let mut n = *m;
                n.0[v] -= 1;
                n.0[w] += 1;
                out.add_term(n, c * &Scalar::from_int(e as i64 * s));
            }
        }
    }
    out
}

/// A gl(4) matrix acting as Σ m_ab E_ab.
pub fn act_matrix(m: &Mat4, p: &PolyVector) -> PolyVector {
    let mut out = PolyVector::zero();
    for a in 1..=4 {
        for b in 1..=4 {
            let c = &m[a - 1][b - 1];
            if c.is_zero() {
                continue;
            }
            out = &out + &act_elementary(a, b, p).scaled(c);
        }
    }
    out
}

/// Sum of signed products of two partial derivatives.
fn second_order(p: &PolyVector, pairs: &[(usize, usize, i64)]) -> PolyVector {
    let mut out = PolyVector::zero();
    for &(u, v, s) in pairs {
        out = &out + &p.partial(u).partial(v).scaled(&Scalar::from_int(s));
    }
    out
}

/// D = ∂₁₂∂₃₄ − ∂₁₃∂₂₄ + ∂₁₄∂₂₃.
pub fn op_d(p: &PolyVector) -> PolyVector {
    second_order(p, &[(4, 9, 1), (5, 8, -1), (6, 7, 1)])
}

/// D₁ = ∂₂₃∂₄ − ∂₂₄∂₃ + ∂₃₄∂₂, and its cyclic companions D₂, D₃, D₄.
pub fn op_d_i(i: usize, p: &PolyVector) -> PolyVector {
    let pairs: [&[(usize, usize, i64)]; 4] = [
        &[(7, 3, 1), (8, 2, -1), (9, 1, 1)],
        &[(5, 3, 1), (6, 2, -1), (9, 0, 1)],
        &[(4, 3, 1), (6, 1, -1), (8, 0, 1)],
        &[(4, 2, 1), (5, 1, -1), (7, 0, 1)],
    ];
    second_order(p, pairs[i - 1])
}

/// All monomials with the given profile (degrees per variable group).
pub fn monomials_with_profile(n_x: u32, n_w: u32, n_xd: u32, n_wd: u32) -> Vec<Monomial> {
    fn spread(slots: std::ops::Range<usize>, total: u32, base: Monomial, out: &mut Vec<Monomial>, next: &dyn Fn(Monomial, &mut Vec<Monomial>)) {
        fn rec(
            slots: &std::ops::Range<usize>,
            at: usize,
            left: u32,
            mut cur: Monomial,
            out: &mut Vec<Monomial>,
            next: &dyn Fn(Monomial, &mut Vec<Monomial>),
        ) {
            if at == slots.end - 1 {
                cur.0[at] = left as u8;
                next(cur, out);
                return;
            }
            for e in 0..=left {
                cur.0[at] = e as u8;
                rec(slots, at + 1, left - e, cur, out, next);
            }
        }
        rec(&slots, slots.start, total, base, out, next);
    }
    let mut out = Vec::new();
    spread(0..4, n_x, Monomial::one(), &mut out, &move |m1, out| {
        spread(4..10, n_w, m1, out, &move |m2, out| {
            spread(10..14, n_xd, m2, out, &move |m3, out| {
                spread(14..20, n_wd, m3, out, &|m4, out| out.push(m4));
            });
        });
    });
    out.sort();
    out
}

/// The [p,q] bigrading of the quadrant-A polynomial variables.
pub fn pq_weight(m: &Monomial) -> (i64, i64) {
    let mut p = 0i64;
    let mut q = 0i64;
    for v in 0..N_VARS {
        let e = m.0[v] as i64;
        if e == 0 {
            continue;
        }
        let (pv, qv) = match v {
            0..=2 => (1, 0),         // x₁, x₂, x₃
            3 => (-1, 2),            // x₄
            4 | 5 | 7 => (2, 0),     // x₁₂, x₁₃, x₂₃
            6 | 8 | 9 => (0, 2),     // x₁₄, x₂₄, x₃₄
            _ => panic!("pq grading is defined on the quadrant-A variables only"),
        };
        p += e * pv;
        q += e * qv;
    }
    (p, q)
}
