//! Sparse exact linear algebra over ℚ(i): rank, kernels, solving, and the
//! subspace lattice (sum, intersection, membership, quotient dimensions).
//!
//! Elimination is division-deferred (cross-multiplication during the forward
//! pass, one normalization sweep at the end) with a deterministic pivot rule:
//! first nonzero column, smallest row index. Two equal subspaces therefore
//! always store bit-identical reduced-echelon bases.

use crate::scalar::Scalar;

/// Sparse row: strictly increasing column indices, no zero entries.
pub type SRow = Vec<(usize, Scalar)>;

/// `dst + c·src`, merging sorted sparse rows.
pub fn row_add_scaled(dst: &SRow, src: &SRow, c: &Scalar) -> SRow {
    if c.is_zero() {
        return dst.clone();
    }
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        match (dst.get(i), src.get(j)) {
            (Some((ci, vi)), Some((cj, vj))) if ci == cj => {
                let v = vi + &(c * vj);
                if !v.is_zero() {
                    out.push((*ci, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ci, vi)), Some((cj, _))) if ci < cj => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (Some(_), Some((cj, vj))) => {
                let v = c * vj;
                if !v.is_zero() {
                    out.push((*cj, v));
                }
                j += 1;
            }
            (Some((ci, vi)), None) => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (None, Some((cj, vj))) => {
                let v = c * vj;
                if !v.is_zero() {
                    out.push((*cj, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// `a·dst + b·src` (used by the division-deferred forward pass).
fn row_combine(a: &Scalar, dst: &SRow, b: &Scalar, src: &SRow) -> SRow {
    let scaled: SRow = dst
        .iter()
        .filter_map(|(c, v)| {
            let w = a * v;
            (!w.is_zero()).then_some((*c, w))
        })
        .collect();
    row_add_scaled(&scaled, src, b)
}

pub fn row_scale(row: &SRow, c: &Scalar) -> SRow {
    if c.is_zero() {
        return Vec::new();
    }
    row.iter().map(|(col, v)| (*col, c * v)).collect()
}

pub fn row_get<'a>(row: &'a SRow, col: usize) -> Option<&'a Scalar> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|k| &row[k].1)
}

pub fn row_from_dense(v: &[Scalar]) -> SRow {
    v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(c, s)| (c, s.clone())).collect()
}

/// Reduced echelon data produced by [`eliminate`].
struct Echelon {
    /// RREF rows, pivot columns strictly increasing, pivot entries 1.
    rows: Vec<SRow>,
    pivots: Vec<usize>,
}

/// Deterministic RREF: first-nonzero-column, smallest-row pivot selection,
/// division-deferred elimination, final normalization/back-substitution pass.
fn eliminate(mut work: Vec<SRow>) -> Echelon {
    let mut pivot_rows: Vec<SRow> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    work.retain(|r| !r.is_empty());
    while !work.is_empty() {
        // Smallest leading column present; among its rows, the earliest one.
        let col = work.iter().map(|r| r[0].0).min().unwrap();
        let at = work.iter().position(|r| r[0].0 == col).unwrap();
        let piv = work.remove(at);
        let lead = piv[0].1.clone();
        for r in work.iter_mut() {
            if r[0].0 == col {
                let c = r[0].1.clone();
                *r = row_combine(&lead, r, &(-&c), &piv);
            }
        }
        work.retain(|r| !r.is_empty());
        pivot_rows.push(piv);
        pivots.push(col);
    }
    // Normalize pivots to 1, then clear pivot columns upward.
    for r in pivot_rows.iter_mut() {
        let inv = r[0].1.inv();
        *r = row_scale(r, &inv);
    }
    for i in (0..pivot_rows.len()).rev() {
        let (col, piv) = (pivots[i], pivot_rows[i].clone());
        for j in 0..i {
            if let Some(c) = row_get(&pivot_rows[j], col) {
                let c = c.clone();
                pivot_rows[j] = row_add_scaled(&pivot_rows[j], &piv, &(-&c));
            }
        }
    }
    Echelon { rows: pivot_rows, pivots }
}

/// Immutable sparse matrix over ℚ(i).
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SRow>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, Scalar::one())]).collect();
        ExactMatrix { rows: n, cols: n, data }
    }

    /// Build from (row, col, value) triplets; duplicate positions accumulate.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut acc: Vec<std::collections::BTreeMap<usize, Scalar>> = vec![Default::default(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) out of {rows}x{cols}");
            let e = acc[r].entry(c).or_insert_with(Scalar::zero);
            *e += &v;
        }
        let data = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(cols: usize, data: Vec<SRow>) -> Self {
        for r in &data {
            debug_assert!(r.windows(2).all(|w| w[0].0 < w[1].0));
            debug_assert!(r.iter().all(|(c, v)| *c < cols && !v.is_zero()));
        }
        ExactMatrix { rows: data.len(), cols, data }
    }

    pub fn from_dense(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let data: Vec<SRow> = rows
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), cols);
                row_from_dense(&r)
            })
            .collect();
        ExactMatrix { rows: data.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SRow {
        &self.data[i]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &SRow> {
        self.data.iter()
    }

    pub fn entry(&self, r: usize, c: usize) -> Scalar {
        row_get(&self.data[r], c).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut data: Vec<SRow> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        ExactMatrix { rows: self.cols, cols: self.rows, data }
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: SRow = Vec::new();
                for (k, v) in row {
                    acc = row_add_scaled(&acc, &other.data[*k], v);
                }
                acc
            })
            .collect();
        ExactMatrix { rows: self.rows, cols: other.cols, data }
    }

    /// `self · x` for a dense column vector.
    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut s = Scalar::zero();
                for (c, v) in row {
                    s += &(v * &x[*c]);
                }
                s
            })
            .collect()
    }

    /// `self · x` for a sparse column vector (as an SRow over row indices).
    pub fn apply_sparse(&self, x: &SRow) -> SRow {
        // Work through the transpose-free definition: accumulate rows.
        let mut out: Vec<Scalar> = vec![Scalar::zero(); self.rows];
        for (r, row) in self.data.iter().enumerate() {
            let (mut i, mut j) = (0, 0);
            while i < row.len() && j < x.len() {
                match row[i].0.cmp(&x[j].0) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        out[r] += &(&row[i].1 * &x[j].1);
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        row_from_dense(&out)
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let one = Scalar::one();
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| row_add_scaled(a, b, &one))
            .collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> ExactMatrix {
        let data = self.data.iter().map(|r| row_scale(r, c)).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Stack `a` on top of `b` (same column count).
    pub fn stack(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
        assert_eq!(a.cols, b.cols);
        let mut data = a.data.clone();
        data.extend(b.data.iter().cloned());
        ExactMatrix { rows: a.rows + b.rows, cols: a.cols, data }
    }

    /// Rank over ℚ(i); deterministic.
    pub fn rank(&self) -> usize {
        eliminate(self.data.clone()).pivots.len()
    }

    /// Rank of a matrix that is block-diagonal with respect to a labelling of
    /// its rows and columns: every entry must connect a row and a column with
    /// equal keys.  Summing the per-block ranks avoids the fill-in of a
    /// global elimination.
    pub fn rank_blocked<K: Ord + Copy>(&self, row_keys: &[K], col_keys: &[K]) -> usize {
        assert_eq!(row_keys.len(), self.rows);
        assert_eq!(col_keys.len(), self.cols);
        let mut blocks: std::collections::BTreeMap<K, Vec<SRow>> = std::collections::BTreeMap::new();
        for (i, row) in self.data.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let key = row_keys[i];
            let packed: SRow = row
                .iter()
                .map(|(c, v)| {
                    assert!(col_keys[*c] == key, "entry crosses a block boundary");
                    (*c, v.clone())
                })
                .collect();
            blocks.entry(key).or_default().push(packed);
        }
        blocks.into_values().map(|rows| eliminate(rows).pivots.len()).sum()
    }

    /// Canonical echelon basis of the right null space `{x : self·x = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let ech = eliminate(self.data.clone());
        let pivot_set: std::collections::BTreeSet<usize> = ech.pivots.iter().copied().collect();
        let mut basis: Vec<SRow> = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v: SRow = vec![(free, Scalar::one())];
            for (i, p) in ech.pivots.iter().enumerate() {
                if let Some(c) = row_get(&ech.rows[i], free) {
                    v.push((*p, -c));
                }
            }
            v.sort_by_key(|(c, _)| *c);
            basis.push(v);
        }
        Subspace::from_vectors(self.cols, basis)
    }

    /// One solution of `self·x = rhs` (free variables zero), if consistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows);
        let aug = self.cols; // augmented column index
        let rows: Vec<SRow> = self
            .data
            .iter()
            .zip(rhs)
            .map(|(row, b)| {
                let mut r = row.clone();
                if !b.is_zero() {
                    r.push((aug, b.clone()));
                }
                r
            })
            .collect();
        let ech = eliminate(rows);
        if ech.pivots.contains(&aug) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (i, p) in ech.pivots.iter().enumerate() {
            if let Some(b) = row_get(&ech.rows[i], aug) {
                x[*p] = b.clone();
            }
        }
        Some(x)
    }

    /// Column span as a subspace of the target space.
    pub fn column_space(&self) -> Subspace {
        let t = self.transpose();
        Subspace::from_vectors(self.rows, t.data)
    }

    /// `{x : self·x ∈ w}` as a subspace of the domain.
    pub fn preimage(&self, w: &Subspace) -> Subspace {
        assert_eq!(w.ambient(), self.rows, "preimage ambient mismatch");
        // The condition "self·x ∈ w" is "R(self·x) = 0" where R reduces by
        // w's echelon basis; apply R columnwise on the transpose.
        let mut tr = self.transpose().data; // tr[c] = column c over row indices
        for (bi, p) in w.basis().iter().zip(w.pivots()) {
            for col in tr.iter_mut() {
                if let Some(c) = row_get(col, *p).cloned() {
                    *col = row_add_scaled(col, bi, &(-&c));
                }
            }
        }
        let mut reduced: Vec<SRow> = vec![Vec::new(); self.rows];
        for (c, col) in tr.iter().enumerate() {
            for (r, v) in col {
                reduced[*r].push((c, v.clone()));
            }
        }
        for r in reduced.iter_mut() {
            r.sort_by_key(|(c, _)| *c);
        }
        ExactMatrix { rows: self.rows, cols: self.cols, data: reduced }.kernel_basis()
    }
}

impl std::fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

/// A subspace of ℚ(i)^n stored as a canonical reduced-echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SRow>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| vec![(i, Scalar::one())]).collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn from_vectors(ambient: usize, vecs: Vec<SRow>) -> Self {
        for v in &vecs {
            debug_assert!(v.iter().all(|(c, s)| *c < ambient && !s.is_zero()));
        }
        let ech = eliminate(vecs);
        Subspace { ambient, basis: ech.rows, pivots: ech.pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SRow] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Subspace::from_vectors(self.ambient, vecs)
    }

    /// Intersection via the kernel of the stacked coefficient system.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Subspace::zero(self.ambient);
        }
        // Columns: α (da) then β (db); rows: ambient coordinates of Σαa − Σβb.
        let mut triplets = Vec::new();
        for (j, a) in self.basis.iter().enumerate() {
            for (r, v) in a {
                triplets.push((*r, j, v.clone()));
            }
        }
        for (j, b) in other.basis.iter().enumerate() {
            for (r, v) in b {
                triplets.push((*r, da + j, -v));
            }
        }
        let m = ExactMatrix::from_triplets(self.ambient, da + db, triplets);
        let ker = m.kernel_basis();
        let vecs = ker
            .basis()
            .iter()
            .map(|gamma| {
                let mut acc: SRow = Vec::new();
                for (c, v) in gamma {
                    if *c < da {
                        acc = row_add_scaled(&acc, &self.basis[*c], v);
                    }
                }
                acc
            })
            .filter(|v| !v.is_empty())
            .collect();
        Subspace::from_vectors(self.ambient, vecs)
    }

    /// Remainder of `v` after reduction by the echelon basis.
    pub fn reduce(&self, v: &SRow) -> SRow {
        let mut r = v.clone();
        for (b, p) in self.basis.iter().zip(&self.pivots) {
            if let Some(c) = row_get(&r, *p).cloned() {
                r = row_add_scaled(&r, b, &(-&c));
            }
        }
        r
    }

    pub fn contains_vec(&self, v: &SRow) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains_vec(v))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn express(&self, v: &SRow) -> Option<Vec<Scalar>> {
        let mut coords = Vec::with_capacity(self.dim());
        let mut r = v.clone();
        for (b, p) in self.basis.iter().zip(&self.pivots) {
            let c = row_get(&r, *p).cloned().unwrap_or_else(Scalar::zero);
            if !c.is_zero() {
                r = row_add_scaled(&r, b, &(-&c));
            }
            coords.push(c);
        }
        r.is_empty().then_some(coords)
    }

    /// dim(self) − dim(sub); panics unless `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> usize {
        assert!(self.contains(sub), "quotient_dim: argument is not a subspace");
        self.dim() - sub.dim()
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of {})", self.dim(), self.ambient)
    }
}

/// A subquotient cycles/boundaries of a coordinate space, with canonical
/// representatives obtained by reducing the cycle basis modulo the boundaries.
pub struct SubQuotient {
    boundaries: Subspace,
    reps: Subspace,
}

impl SubQuotient {
    /// Builds the quotient; panics unless `boundaries ⊆ cycles`.
    pub fn new(cycles: &Subspace, boundaries: Subspace) -> Self {
        assert!(cycles.contains(&boundaries), "SubQuotient: boundaries escape the cycles");
        let reduced: Vec<SRow> = cycles
            .basis()
            .iter()
            .map(|v| boundaries.reduce(v))
            .filter(|r| !r.is_empty())
            .collect();
        let reps = Subspace::from_vectors(cycles.ambient(), reduced);
        debug_assert_eq!(reps.dim(), cycles.dim() - boundaries.dim());
        SubQuotient { boundaries, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    /// Representative vectors, one per quotient basis class.
    pub fn reps(&self) -> &[SRow] {
        self.reps.basis()
    }

    /// Coordinates of the class of `v`, if `v` lies in the cycles.
    pub fn class_coords(&self, v: &SRow) -> Option<Vec<Scalar>> {
        self.reps.express(&self.boundaries.reduce(v))
    }
}

/// Growing span with cheap independence tests, for breadth-first basis
/// construction. Rows are kept in echelon form with unit leading entries.
pub struct SpanTracker {
    ambient: usize,
    rows: Vec<SRow>,
    pivot_row: std::collections::BTreeMap<usize, usize>,
}

impl SpanTracker {
    pub fn new(ambient: usize) -> Self {
        SpanTracker { ambient, rows: Vec::new(), pivot_row: Default::default() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &SRow) -> SRow {
        let mut r = v.clone();
        while let Some((lead, c)) = r.first().cloned() {
            match self.pivot_row.get(&lead) {
                Some(&i) => r = row_add_scaled(&r, &self.rows[i], &(-&c)),
                None => break,
            }
        }
        r
    }

    /// Extends the span by `v` if independent; reports whether it grew.
    pub fn try_insert(&mut self, v: &SRow) -> bool {
        debug_assert!(v.iter().all(|(c, _)| *c < self.ambient));
        let r = self.reduce(v);
        match r.first() {
            None => false,
            Some((lead, c)) => {
                let lead = *lead;
                let normalized = row_scale(&r, &c.inv());
                self.pivot_row.insert(lead, self.rows.len());
                self.rows.push(normalized);
                true
            }
        }
    }
}

/// Coordinates with respect to a fixed independent (not necessarily echelon)
/// basis, via a once-computed elimination with a tracked transform.
pub struct BasisExpressor {
    n: usize,
    rows: Vec<SRow>,
    transform: Vec<SRow>,
    pivot_row: std::collections::BTreeMap<usize, usize>,
}

impl BasisExpressor {
    pub fn new(basis: &[SRow]) -> Self {
        let mut ex = BasisExpressor {
            n: basis.len(),
            rows: Vec::new(),
            transform: Vec::new(),
            pivot_row: Default::default(),
        };
        for (j, b) in basis.iter().enumerate() {
            let mut r = b.clone();
            let mut t: SRow = vec![(j, Scalar::one())];
            while let Some((lead, c)) = r.first().cloned() {
                match ex.pivot_row.get(&lead) {
                    Some(&i) => {
                        let neg = -&c;
                        r = row_add_scaled(&r, &ex.rows[i], &neg);
                        t = row_add_scaled(&t, &ex.transform[i], &neg);
                    }
                    None => break,
                }
            }
            let (lead, c) = r.first().cloned().expect("expressor basis must be independent");
            let inv = c.inv();
            ex.pivot_row.insert(lead, ex.rows.len());
            ex.rows.push(row_scale(&r, &inv));
            ex.transform.push(row_scale(&t, &inv));
        }
        ex
    }

    /// Dense coordinates of `v` over the basis, `None` if `v` is outside.
    pub fn express(&self, v: &SRow) -> Option<Vec<Scalar>> {
        let mut out: SRow = Vec::new();
        let mut r = v.clone();
        while let Some((lead, c)) = r.first().cloned() {
            match self.pivot_row.get(&lead) {
                Some(&i) => {
                    let neg = -&c;
                    r = row_add_scaled(&r, &self.rows[i], &neg);
                    out = row_add_scaled(&out, &self.transform[i], &c);
                }
                None => return None,
            }
        }
        let mut dense = vec![Scalar::zero(); self.n];
        for (j, c) in out {
            dense[j] = c;
        }
        Some(dense)
    }
}
