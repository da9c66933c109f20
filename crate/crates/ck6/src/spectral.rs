//! Bicomplexes and the spectral sequences of their filtered total complexes.
//!
//! A bicomplex is a finite grid of spaces K_{p,q} with anticommuting
//! differentials d₁: (p,q) → (p−1,q) and d₂: (p,q) → (p,q−1).  The total
//! complex T_n = ⊕_{p+q=n} K_{p,q} carries D = d₁ + d₂ and the column
//! filtration F_p T = ⊕_{h≤p} K_{h,·}.  Pages are computed two ways: the
//! generic subspace formula Z^r_{p,q} = F_p ∩ D⁻¹(F_{p−r}) with
//! E^r = Z^r / (Z^{r−1}_{p−1,q+1} + D Z^{r−1}_{p+r−1,q−r+2}), and — for the
//! second page — an independent zig-zag construction that realizes
//! d⁽²⁾[[x]] = [[d₁ y]] where d₂ y = d₁ x, with explicit representatives.

use std::collections::BTreeMap;

use crate::linalg::{ExactMatrix, SRow, SubQuotient, Subspace};
use crate::scalar::Scalar;

type Cell = (i64, i64);

/// A finite bicomplex with anticommuting differentials.
pub struct Bicomplex {
    dims: BTreeMap<Cell, usize>,
    d1: BTreeMap<Cell, ExactMatrix>,
    d2: BTreeMap<Cell, ExactMatrix>,
}

impl Bicomplex {
    /// Builds the bicomplex and checks shapes, d₁² = d₂² = 0, and
    /// anticommutativity d₁d₂ + d₂d₁ = 0.
    pub fn new(
        dims: BTreeMap<Cell, usize>,
        d1: BTreeMap<Cell, ExactMatrix>,
        d2: BTreeMap<Cell, ExactMatrix>,
    ) -> Bicomplex {
        let k = Bicomplex { dims, d1, d2 };
        for (&(p, q), &n) in &k.dims {
            assert!(n > 0, "empty cells must be omitted");
            let m1 = k.d1_at((p, q));
            let m2 = k.d2_at((p, q));
            assert_eq!((m1.rows(), m1.cols()), (k.dim((p - 1, q)), n));
            assert_eq!((m2.rows(), m2.cols()), (k.dim((p, q - 1)), n));
            assert!(k.d1_at((p - 1, q)).matmul(&m1).is_zero(), "d1 does not square to zero");
            assert!(k.d2_at((p, q - 1)).matmul(&m2).is_zero(), "d2 does not square to zero");
            let mixed = k
                .d2_at((p - 1, q))
                .matmul(&m1)
                .add(&k.d1_at((p, q - 1)).matmul(&m2));
            assert!(mixed.is_zero(), "d1 and d2 do not anticommute");
        }
        k
    }

    pub fn cells(&self) -> &BTreeMap<Cell, usize> {
        &self.dims
    }

    pub fn dim(&self, cell: Cell) -> usize {
        self.dims.get(&cell).copied().unwrap_or(0)
    }

    /// The horizontal differential out of a cell (zero matrix if absent).
    pub fn d1_at(&self, cell: Cell) -> ExactMatrix {
        self.d1
            .get(&cell)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zero(self.dim((cell.0 - 1, cell.1)), self.dim(cell)))
    }

    /// The vertical differential out of a cell (zero matrix if absent).
    pub fn d2_at(&self, cell: Cell) -> ExactMatrix {
        self.d2
            .get(&cell)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zero(self.dim((cell.0, cell.1 - 1)), self.dim(cell)))
    }

    /// The transposed bicomplex: rows and columns exchanged.
    pub fn transpose(&self) -> Bicomplex {
        let flip = |m: &BTreeMap<Cell, ExactMatrix>| {
            m.iter().map(|(&(p, q), v)| ((q, p), v.clone())).collect()
        };
        Bicomplex::new(
            self.dims.iter().map(|(&(p, q), &n)| ((q, p), n)).collect(),
            flip(&self.d2),
            flip(&self.d1),
        )
    }

    fn total_range(&self) -> Option<(i64, i64)> {
        let ns: Vec<i64> = self.dims.keys().map(|&(p, q)| p + q).collect();
        Some((*ns.iter().min()?, *ns.iter().max()?))
    }

    fn p_range(&self) -> Option<(i64, i64)> {
        let ps: Vec<i64> = self.dims.keys().map(|&(p, _)| p).collect();
        Some((*ps.iter().min()?, *ps.iter().max()?))
    }

    /// Cells on the antidiagonal p+q = n, sorted by p, with offsets.
    fn layout(&self, n: i64) -> Vec<(Cell, usize, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for (&(p, q), &d) in &self.dims {
            if p + q == n {
                out.push(((p, q), off, d));
                off += d;
            }
        }
        out
    }

    fn total_dim(&self, n: i64) -> usize {
        self.layout(n).iter().map(|&(_, _, d)| d).sum()
    }

    /// The total differential T_n → T_{n−1} in the antidiagonal layout.
    pub fn total_matrix(&self, n: i64) -> ExactMatrix {
        let src = self.layout(n);
        let tgt = self.layout(n - 1);
        let tgt_off: BTreeMap<Cell, usize> =
            tgt.iter().map(|&(c, off, _)| (c, off)).collect();
        let rows: usize = tgt.iter().map(|&(_, _, d)| d).sum();
        let cols: usize = src.iter().map(|&(_, _, d)| d).sum();
        let mut trips = Vec::new();
        for &((p, q), off, _) in &src {
            for (m, tcell) in [(self.d1_at((p, q)), (p - 1, q)), (self.d2_at((p, q)), (p, q - 1))]
            {
                let Some(&toff) = tgt_off.get(&tcell) else { continue };
                for r in 0..m.rows() {
                    for (c, v) in m.row(r) {
                        trips.push((toff + r, off + *c, v.clone()));
                    }
                }
            }
        }
        ExactMatrix::from_triplets(rows, cols, trips)
    }

    /// dim H_n of the total complex under D = d₁ + d₂.
    pub fn total_homology(&self, n: i64) -> usize {
        let out = self.total_matrix(n);
        let inc = self.total_matrix(n + 1);
        assert!(out.matmul(&inc).is_zero());
        self.total_dim(n) - out.rank() - inc.rank()
    }
}

/// Which of the two canonical filtrations of the total complex to use.
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Filtration {
    /// By columns: E⁰ is (K, d₂).
    First,
    /// By rows: E⁰ is (K, d₁); page indices come out transposed.
    Second,
}

/// The subspace Z^r_{p,·} = F_p T_n ∩ D⁻¹(F_{p−r} T_{n−1}).
fn cycle_space(k: &Bicomplex, n: i64, p: i64, r: i64) -> Subspace {
    let src = k.layout(n);
    let total = k.total_dim(n);
    let cut: usize = src.iter().filter(|&&((cp, _), _, _)| cp <= p).map(|&(_, _, d)| d).sum();
    let d = k.total_matrix(n);
    let tgt = k.layout(n - 1);
    let mut constraint_rows = Vec::new();
    for &((tp, _), off, dim) in &tgt {
        if tp > p - r {
            for row in off..off + dim {
                let filtered: SRow =
                    d.row(row).iter().filter(|(c, _)| *c < cut).cloned().collect();
                if !filtered.is_empty() {
                    constraint_rows.push(filtered);
                }
            }
        }
    }
    let m = ExactMatrix::from_rows(cut, constraint_rows);
    let ker = m.kernel_basis();
    Subspace::from_vectors(total, ker.basis().to_vec())
}

/// Page dimensions at r = 0..=r_max by the generic filtered-complex formula.
pub fn spectral_pages(
    k: &Bicomplex,
    filtration: Filtration,
    r_max: usize,
) -> Vec<BTreeMap<Cell, usize>> {
    if filtration == Filtration::Second {
        return spectral_pages(&k.transpose(), Filtration::First, r_max);
    }
    let mut pages = Vec::new();
    for r in 0..=(r_max as i64) {
        let mut page = BTreeMap::new();
        for (&(p, q), _) in k.cells() {
            let n = p + q;
            let z = cycle_space(k, n, p, r);
            let stay = cycle_space(k, n, p - 1, r - 1);
            let entering = cycle_space(k, n + 1, p + r - 1, r - 1);
            let dmat = k.total_matrix(n + 1);
            let image: Vec<SRow> =
                entering.basis().iter().map(|v| dmat.apply_sparse(v)).collect();
            let boundary =
                stay.sum(&Subspace::from_vectors(k.total_dim(n), image));
            assert!(z.contains(&boundary), "boundary escapes the cycle space");
            page.insert((p, q), z.dim() - boundary.dim());
        }
        pages.push(page);
    }
    pages
}

/// The page index from which nothing can move any further.
pub fn stable_page_index(k: &Bicomplex) -> usize {
    match k.p_range() {
        Some((lo, hi)) => (hi - lo + 2) as usize,
        None => 2,
    }
}

/// E^∞ cell dimensions (first filtration).
pub fn e_infinity(k: &Bicomplex) -> BTreeMap<Cell, usize> {
    let r = stable_page_index(k);
    spectral_pages(k, Filtration::First, r).pop().unwrap()
}

/// Checks Σ_{p+q=n} dim E^∞_{p,q} = dim H_n(Tot) for every antidiagonal.
pub fn converges_to_total_homology(k: &Bicomplex) -> bool {
    let einf = e_infinity(k);
    let Some((lo, hi)) = k.total_range() else { return true };
    (lo..=hi).all(|n| {
        let sum: usize =
            einf.iter().filter(|(&(p, q), _)| p + q == n).map(|(_, &d)| d).sum();
        sum == k.total_homology(n)
    })
}

/// First pages with explicit representatives: E¹ and E² as subquotients of
/// the cells, E³ dimensions obtained from the zig-zag d⁽²⁾.
pub struct ZigzagData {
    pub e1: BTreeMap<Cell, usize>,
    pub e2: BTreeMap<Cell, SubQuotient>,
    pub e3: BTreeMap<Cell, usize>,
}

impl ZigzagData {
    pub fn e2_dims(&self) -> BTreeMap<Cell, usize> {
        self.e2.iter().map(|(&c, s)| (c, s.dim())).collect()
    }
}

/// Runs the zig-zag construction: vertical homology, then horizontal
/// homology with lifted representatives, then d⁽²⁾[[x]] = [[d₁ y]] where
/// d₂ y = d₁ x.
pub fn zigzag_pages(k: &Bicomplex) -> ZigzagData {
    // E¹ per cell: Ker d₂ / Im d₂, inside the cell's own coordinates.
    let mut e1: BTreeMap<Cell, SubQuotient> = BTreeMap::new();
    for (&(p, q), _) in k.cells() {
        let cycles = k.d2_at((p, q)).kernel_basis();
        let boundaries = k.d2_at((p, q + 1)).column_space();
        e1.insert((p, q), SubQuotient::new(&cycles, boundaries));
    }
    let e1_dim = |cell: Cell| e1.get(&cell).map_or(0, |s| s.dim());

    // The induced horizontal map on E¹ classes.
    let d1_bar = |cell: Cell| -> ExactMatrix {
        let (p, q) = cell;
        let rows = e1_dim((p - 1, q));
        let Some(src) = e1.get(&cell) else {
            return ExactMatrix::zero(rows, 0);
        };
        let m = k.d1_at(cell);
        let mut trips = Vec::new();
        for (j, rep) in src.reps().iter().enumerate() {
            let image = m.apply_sparse(rep);
            if image.is_empty() {
                continue;
            }
            let coords = e1
                .get(&(p - 1, q))
                .and_then(|t| t.class_coords(&image))
                .expect("induced map escapes the vertical homology");
            for (i, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    trips.push((i, j, c));
                }
            }
        }
        ExactMatrix::from_triplets(rows, src.dim(), trips)
    };

    // E² per cell: Ker d̄₁ / Im d̄₁ with representatives lifted back to the
    // cell coordinates (modulo the E¹ boundaries).
    let mut e2: BTreeMap<Cell, SubQuotient> = BTreeMap::new();
    for (&(p, q), _) in k.cells() {
        let quot = &e1[&(p, q)];
        let lift = |coords: &SRow| -> SRow {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (i, c) in coords {
                for (col, v) in &quot.reps()[*i] {
                    let e = acc.entry(*col).or_insert_with(Scalar::zero);
                    *e = &*e + &(v * c);
                }
            }
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        };
        let vertical_boundaries = k.d2_at((p, q + 1)).column_space();
        let cycles2 = d1_bar((p, q)).kernel_basis();
        let boundaries2 = d1_bar((p + 1, q)).column_space();
        let lifted = |s: &Subspace| -> Vec<SRow> { s.basis().iter().map(&lift).collect() };
        let ambient = k.dim((p, q));
        let cyc = Subspace::from_vectors(ambient, lifted(&cycles2)).sum(&vertical_boundaries);
        let bnd = Subspace::from_vectors(ambient, lifted(&boundaries2)).sum(&vertical_boundaries);
        e2.insert((p, q), SubQuotient::new(&cyc, bnd));
    }

    // d⁽²⁾ on E² representatives, then its homology.
    let d2_page = |cell: Cell| -> ExactMatrix {
        let (p, q) = cell;
        let tgt_dim = e2.get(&(p - 2, q + 1)).map_or(0, |s| s.dim());
        let Some(src) = e2.get(&cell) else {
            return ExactMatrix::zero(tgt_dim, 0);
        };
        let mut trips = Vec::new();
        for (j, x) in src.reps().iter().enumerate() {
            let dx = k.d1_at(cell).apply_sparse(x);
            if dx.is_empty() {
                continue;
            }
            let solve_in = k.d2_at((p - 1, q + 1));
            let mut dense = vec![Scalar::zero(); k.dim((p - 1, q))];
            for (c, v) in &dx {
                dense[*c] = v.clone();
            }
            let y = solve_in.solve(&dense).expect("zig-zag lift does not exist");
            let z = k.d1_at((p - 1, q + 1)).apply(&y);
            let zrow: SRow =
                z.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
            if zrow.is_empty() {
                continue;
            }
            let coords = e2
                .get(&(p - 2, q + 1))
                .and_then(|t| t.class_coords(&zrow))
                .expect("zig-zag image escapes the second page");
            for (i, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    trips.push((i, j, c));
                }
            }
        }
        ExactMatrix::from_triplets(tgt_dim, src.dim(), trips)
    };

    let mut e3 = BTreeMap::new();
    for (&(p, q), _) in k.cells() {
        let out = d2_page((p, q));
        let inc = d2_page((p + 2, q - 1));
        assert!(out.matmul(&inc).is_zero(), "d2 page maps do not compose to zero");
        e3.insert((p, q), e2[&(p, q)].dim() - out.rank() - inc.rank());
    }

    let e1_dims = e1.iter().map(|(&c, s)| (c, s.dim())).collect();
    ZigzagData { e1: e1_dims, e2, e3 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> ExactMatrix {
        let trips = entries
            .iter()
            .map(|&(r, c, v)| (r, c, Scalar::from_int(v)))
            .collect::<Vec<_>>();
        ExactMatrix::from_triplets(rows, cols, trips)
    }

    /// The exterior square on two letters: d₁ = ∂/∂e₁, d₂ = ∂/∂e₂ with the
    /// Koszul sign.  Everything cancels on the first page.
    fn koszul_square() -> Bicomplex {
        let dims = [((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)].into();
        let d1 = [((1, 0), mat(1, 1, &[(0, 0, 1)])), ((1, 1), mat(1, 1, &[(0, 0, 1)]))].into();
        let d2 = [((0, 1), mat(1, 1, &[(0, 0, 1)])), ((1, 1), mat(1, 1, &[(0, 0, -1)]))].into();
        Bicomplex::new(dims, d1, d2)
    }

    /// A four-cell staircase whose only interesting differential is d⁽²⁾.
    fn staircase() -> Bicomplex {
        let dims = [((2, 0), 1), ((1, 0), 1), ((1, 1), 1), ((0, 1), 1)].into();
        let d1 = [((2, 0), mat(1, 1, &[(0, 0, 1)])), ((1, 1), mat(1, 1, &[(0, 0, 1)]))].into();
        let d2 = [((1, 1), mat(1, 1, &[(0, 0, 1)]))].into();
        Bicomplex::new(dims, d1, d2)
    }

    #[test]
    fn koszul_square_collapses_on_the_first_page() {
        let k = koszul_square();
        let pages = spectral_pages(&k, Filtration::First, 2);
        assert!(pages[1].values().all(|&d| d == 0));
        assert!(converges_to_total_homology(&k));
        assert!(converges_to_total_homology(&k.transpose()));
        let zz = zigzag_pages(&k);
        assert!(zz.e1.values().all(|&d| d == 0));
    }

    #[test]
    fn staircase_needs_the_second_differential() {
        let k = staircase();
        let pages = spectral_pages(&k, Filtration::First, 3);
        // The second page has two surviving lines connected by d⁽²⁾.
        assert_eq!(pages[2].get(&(2, 0)), Some(&1));
        assert_eq!(pages[2].get(&(0, 1)), Some(&1));
        assert!(pages[3].values().all(|&d| d == 0));
        let zz = zigzag_pages(&k);
        assert_eq!(zz.e2_dims(), pages[2]);
        assert_eq!(zz.e3, pages[3]);
        assert!(converges_to_total_homology(&k));
    }

    #[test]
    fn zigzag_agrees_with_the_generic_formula_on_the_square() {
        let k = koszul_square();
        let pages = spectral_pages(&k, Filtration::First, 3);
        let zz = zigzag_pages(&k);
        assert_eq!(zz.e1, pages[1]);
        assert_eq!(zz.e2_dims(), pages[2]);
        assert_eq!(zz.e3, pages[3]);
    }
}
