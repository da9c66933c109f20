//! The conformal superalgebra K₆ = ℂ[∂]⊗Λ(ξ₁,…,ξ₆): λ-bracket, n-products,
//! and the bracket of the annihilation algebra, which the contact bracket on
//! Λ(1,6)₊ realizes via t^m ξ_I ↔ ξ_I y^m.
//!
//! Elements of K₆ reuse [`ContactElement`] storage with the t-exponent slot
//! holding the formal power of ∂.

use crate::contact::{ContactElement, N_XI};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// A polynomial in λ with coefficients in K₆.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct LambdaPolynomial {
    coeffs: BTreeMap<u32, ContactElement>,
}

fn binom(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    let mut r = 1i64;
    for j in 0..k as i64 {
        r = r * (n as i64 - j) / (j + 1);
    }
    r
}

fn falling(k: u32, s: u32) -> i64 {
    if s > k {
        return 0;
    }
    (0..s as i64).map(|j| k as i64 - j).product()
}

impl LambdaPolynomial {
    pub fn zero() -> Self {
        LambdaPolynomial::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, j: u32, elem: ContactElement) {
        if elem.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(j) {
            Entry::Vacant(e) => {
                e.insert(elem);
            }
            Entry::Occupied(mut e) => {
                let sum = &*e.get() + &elem;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Coefficient of λ^j.
    pub fn coeff(&self, j: u32) -> ContactElement {
        self.coeffs.get(&j).cloned().unwrap_or_else(ContactElement::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &ContactElement)> {
        self.coeffs.iter()
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (j, elem) in &self.coeffs {
            out.add_term(*j, elem.scaled(c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (j, elem) in &other.coeffs {
            out.add_term(*j, elem.clone());
        }
        out
    }

    /// Multiplication by λ.
    pub fn mul_lambda(&self) -> Self {
        let mut out = Self::zero();
        for (j, elem) in &self.coeffs {
            out.add_term(j + 1, elem.clone());
        }
        out
    }

    /// Formal multiplication by ∂ (raising every ∂-power by one).
    pub fn mul_partial(&self) -> Self {
        let mut out = Self::zero();
        for (j, elem) in &self.coeffs {
            out.add_term(*j, mul_partial(elem));
        }
        out
    }
}

/// ∂·f in K₆.
pub fn mul_partial(f: &ContactElement) -> ContactElement {
    let mut out = ContactElement::zero();
    for ((s, mask), c) in f.iter() {
        out.add_term(s + 1, *mask, c.clone());
    }
    out
}

/// [f_λ g] on ∂-free monomials with r and s odd factors:
/// (r−2)∂(fg) + (−1)^r Σᵢ(∂ᵢf)(∂ᵢg) + λ(r+s−4)fg.
fn pure_bracket(f_mask: u8, g_mask: u8) -> LambdaPolynomial {
    let r = f_mask.count_ones() as i64;
    let s = g_mask.count_ones() as i64;
    let f = ContactElement::monomial(0, f_mask);
    let g = ContactElement::monomial(0, g_mask);
    let fg = f.mul(&g);
    let mut out = LambdaPolynomial::zero();
    out.add_term(0, mul_partial(&fg).scaled(&Scalar::from_int(r - 2)));
    let sign = Scalar::from_int(if r % 2 == 0 { 1 } else { -1 });
    let mut cross = ContactElement::zero();
    for i in 1..=N_XI {
        cross = &cross + &f.partial_xi(i).mul(&g.partial_xi(i));
    }
    out.add_term(0, cross.scaled(&sign));
    out.add_term(1, fg.scaled(&Scalar::from_int(r + s - 4)));
    out
}

/// The λ-bracket of K₆, extended to arbitrary ∂-powers by sesquilinearity:
/// [∂^a f_λ ∂^b g] = (−λ)^a (λ+∂)^b [f_λ g].
pub fn lambda_bracket(f: &ContactElement, g: &ContactElement) -> LambdaPolynomial {
    let mut out = LambdaPolynomial::zero();
    for ((a, f_mask), cf) in f.iter() {
        for ((b, g_mask), cg) in g.iter() {
            let base = pure_bracket(*f_mask, *g_mask);
            // (λ+∂)^b, then (−λ)^a, then the scalar coefficients.
            let mut shifted = LambdaPolynomial::zero();
            for (j, elem) in base.iter() {
                for k in 0..=*b {
                    let mut e = elem.clone();
                    for _ in 0..(b - k) {
                        e = mul_partial(&e);
                    }
                    shifted.add_term(j + k, e.scaled(&Scalar::from_int(binom(*b, k))));
                }
            }
            let sign = if a % 2 == 0 { 1 } else { -1 };
            let c = &(cf * cg) * &Scalar::from_int(sign);
            for (j, elem) in shifted.iter() {
                out.add_term(j + a, elem.scaled(&c));
            }
        }
    }
    out
}

/// The n-product (f₍ₙ₎g) = n!·(coefficient of λⁿ in [f_λ g]).
pub fn n_product(f: &ContactElement, g: &ContactElement, n: u32) -> ContactElement {
    let fact: i64 = (1..=n as i64).product::<i64>().max(1);
    lambda_bracket(f, g).coeff(n).scaled(&Scalar::from_int(fact))
}

/// Realize c·y^k in K(1,6): each ∂^s ξ_I ↦ (−1)^s k(k−1)…(k−s+1) t^{k−s} ξ_I.
fn substitute_y(c: &ContactElement, k: u32) -> ContactElement {
    let mut out = ContactElement::zero();
    for ((s, mask), coeff) in c.iter() {
        if *s > k {
            continue;
        }
        let sign = if s % 2 == 0 { 1 } else { -1 };
        let factor = Scalar::from_int(sign * falling(k, *s));
        out.add_term(k - s, *mask, coeff * &factor);
    }
    out
}

/// The annihilation-algebra bracket [ξ_I y^m, ξ_J y^n] = Σⱼ C(m,j)(ξ_I₍ⱼ₎ξ_J)y^{m+n−j},
/// expressed back in Λ(1,6)₊.
pub fn annihilation_bracket(m: u32, i_mask: u8, n: u32, j_mask: u8) -> ContactElement {
    let f = ContactElement::monomial(0, i_mask);
    let g = ContactElement::monomial(0, j_mask);
    let mut out = ContactElement::zero();
    for j in 0..=m {
        let prod = n_product(&f, &g, j);
        if prod.is_zero() {
            continue;
        }
        let scaled = prod.scaled(&Scalar::from_int(binom(m, j)));
        out = &out + &substitute_y(&scaled, m + n - j);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::bracket;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn structure_constants() {
        // [ξ₁ λ ξ₁] = −1.
        let x1 = ContactElement::xi(1);
        let br = lambda_bracket(&x1, &x1);
        assert_eq!(br.coeff(0), ContactElement::one().scaled(&s(-1)));
        assert!(br.coeff(1).is_zero());
        // [1 λ 1] = −2∂ − 4λ.
        let one = ContactElement::one();
        let br = lambda_bracket(&one, &one);
        assert_eq!(br.coeff(0), ContactElement::monomial(1, 0).scaled(&s(-2)));
        assert_eq!(br.coeff(1), ContactElement::one().scaled(&s(-4)));
        assert_eq!(n_product(&one, &one, 1), ContactElement::one().scaled(&s(-4)));
    }

    #[test]
    fn sesquilinearity() {
        for (fm, gm) in [(0b1u8, 0b10u8), (0b101, 0b1), (0, 0b111), (0b11, 0b1100)] {
            let f = ContactElement::monomial(0, fm);
            let g = ContactElement::monomial(0, gm);
            let base = lambda_bracket(&f, &g);
            // [∂f_λ g] = −λ[f_λ g].
            let lhs = lambda_bracket(&mul_partial(&f), &g);
            let rhs = base.mul_lambda().scaled(&s(-1));
            assert_eq!(lhs, rhs);
            // [f_λ ∂g] = (λ+∂)[f_λ g].
            let lhs = lambda_bracket(&f, &mul_partial(&g));
            let rhs = base.mul_lambda().add(&base.mul_partial());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn conformal_skew_symmetry() {
        // [a_λ b] = −(−1)^{p(a)p(b)} [b_{−λ−∂} a] on all ∂-free monomials.
        for a_mask in 0u8..64 {
            for b_mask in 0u8..64 {
                let a = ContactElement::monomial(0, a_mask);
                let b = ContactElement::monomial(0, b_mask);
                let lhs = lambda_bracket(&a, &b);
                let ba = lambda_bracket(&b, &a);
                // Substitute λ → −λ−∂.
                let mut rhs = LambdaPolynomial::zero();
                for (j, elem) in ba.iter() {
                    for k in 0..=*j {
                        let mut e = elem.clone();
                        for _ in 0..(j - k) {
                            e = mul_partial(&e);
                        }
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        rhs.add_term(k, e.scaled(&s(sign * binom(*j, k))));
                    }
                }
                let sign = if (a_mask.count_ones() * b_mask.count_ones()) % 2 == 1 {
                    1
                } else {
                    -1
                };
                assert_eq!(lhs, rhs.scaled(&s(sign)), "skew failed at {a_mask:#b},{b_mask:#b}");
            }
        }
    }

    #[test]
    fn annihilation_algebra_matches_contact_bracket() {
        // [t^m ξ_I, t^n ξ_J] agrees with Σⱼ C(m,j)(ξ_I₍ⱼ₎ξ_J) y^{m+n−j}.
        for i_mask in 0u8..64 {
            for j_mask in 0u8..64 {
                for m in 0..=2u32 {
                    for n in 0..=2u32 {
                        let direct = bracket(
                            &ContactElement::monomial(m, i_mask),
                            &ContactElement::monomial(n, j_mask),
                        );
                        let via_lambda = annihilation_bracket(m, i_mask, n, j_mask);
                        assert_eq!(
                            direct, via_lambda,
                            "mismatch at t^{m} {i_mask:#b}, t^{n} {j_mask:#b}"
                        );
                    }
                }
            }
        }
    }
}
