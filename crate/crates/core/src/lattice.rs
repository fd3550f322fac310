//! Integer second-cohomology lattices of the reduced spaces.
//!
//! The reduced spaces that occur here are `P^2`, `S^2 x S^2`, the nontrivial
//! `S^2`-bundle over `S^2` (denoted `ES2`), and their iterated one-point
//! blow-ups. Each is modelled by an ordered basis, an integer intersection
//! matrix, and its first Chern class. Basis order is fixed as
//! `(x, y, E1, E2, ...)` for ruled models and `(u, E1, ...)` for `P^2`-models
//! so emitted classes compare deterministically against tabulated data.
//!
//! All coefficients in this problem stay below ~10 in absolute value, so the
//! lattice operations use machine integers with checked arithmetic and fail
//! loudly on overflow.

use crate::error::{Error, Result};
use std::fmt;

/// Machine integer used for all lattice coefficients.
pub type Int = i64;

/// A label for one basis vector of `H^2` of a reduced space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    /// Hyperplane class of `P^2`.
    U,
    /// Dual of the fiber sphere of a ruled surface.
    X,
    /// Dual of the base (section) sphere of a ruled surface.
    Y,
    /// Dual of the `i`-th exceptional sphere, indices starting at 1.
    E(u8),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::U => write!(f, "u"),
            BasisLabel::X => write!(f, "x"),
            BasisLabel::Y => write!(f, "y"),
            BasisLabel::E(i) => write!(f, "E{i}"),
        }
    }
}

/// The minimal model underlying a reduced space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseSurface {
    /// The projective plane.
    P2,
    /// The trivial sphere bundle `S^2 x S^2`.
    S2xS2,
    /// The nontrivial sphere bundle over `S^2` (Hirzebruch surface).
    Hirzebruch,
}

impl BaseSurface {
    /// Rank of `H^2` before blow-ups.
    pub fn rank(self) -> usize {
        match self {
            BaseSurface::P2 => 1,
            BaseSurface::S2xS2 | BaseSurface::Hirzebruch => 2,
        }
    }
}

impl fmt::Display for BaseSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseSurface::P2 => write!(f, "P2"),
            BaseSurface::S2xS2 => write!(f, "S2xS2"),
            BaseSurface::Hirzebruch => write!(f, "ES2"),
        }
    }
}

/// An integer cohomology class, as a coefficient vector in the owning
/// model's ordered basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CohClass {
    coeffs: Vec<Int>,
}

impl CohClass {
    pub fn new(coeffs: Vec<Int>) -> Self {
        CohClass { coeffs }
    }

    pub fn zero(rank: usize) -> Self {
        CohClass {
            coeffs: vec![0; rank],
        }
    }

    /// Basis vector `i` of a rank-`rank` lattice.
    pub fn basis_vector(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        CohClass { coeffs }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn checked_add(&self, other: &CohClass) -> Result<CohClass> {
        self.zip_with(other, |a, b| a.checked_add(b), "class addition")
    }

    pub fn checked_sub(&self, other: &CohClass) -> Result<CohClass> {
        self.zip_with(other, |a, b| a.checked_sub(b), "class subtraction")
    }

    pub fn checked_scale(&self, s: Int) -> Result<CohClass> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| c.checked_mul(s).ok_or(Error::Overflow("class scaling")))
            .collect::<Result<Vec<_>>>()?;
        Ok(CohClass { coeffs })
    }

    pub fn negated(&self) -> CohClass {
        CohClass {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    /// Sum of a list of classes of equal rank.
    pub fn sum(rank: usize, classes: &[CohClass]) -> Result<CohClass> {
        let mut acc = CohClass::zero(rank);
        for c in classes {
            acc = acc.checked_add(c)?;
        }
        Ok(acc)
    }

    fn zip_with(
        &self,
        other: &CohClass,
        op: impl Fn(Int, Int) -> Option<Int>,
        what: &'static str,
    ) -> Result<CohClass> {
        if self.rank() != other.rank() {
            return Err(Error::InvalidClass {
                expected: self.rank(),
                got: other.rank(),
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| op(a, b).ok_or(Error::Overflow(what)))
            .collect::<Result<Vec<_>>>()?;
        Ok(CohClass { coeffs })
    }
}

/// A del Pezzo / Hirzebruch reduced space: ordered basis, intersection
/// pairing, and first Chern class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    base: BaseSurface,
    blowups: usize,
    basis: Vec<BasisLabel>,
    gram: Vec<Vec<Int>>,
    c1: CohClass,
}

impl SurfaceModel {
    /// `P^2` with basis `(u)`, `u^2 = 1`, `c1 = 3u`.
    pub fn p2() -> Self {
        SurfaceModel {
            base: BaseSurface::P2,
            blowups: 0,
            basis: vec![BasisLabel::U],
            gram: vec![vec![1]],
            c1: CohClass::new(vec![3]),
        }
    }

    /// `S^2 x S^2` with basis `(x, y)`, `x.y = 1`, `x^2 = y^2 = 0`,
    /// `c1 = 2x + 2y`.
    pub fn s2xs2() -> Self {
        SurfaceModel {
            base: BaseSurface::S2xS2,
            blowups: 0,
            basis: vec![BasisLabel::X, BasisLabel::Y],
            gram: vec![vec![0, 1], vec![1, 0]],
            c1: CohClass::new(vec![2, 2]),
        }
    }

    /// The nontrivial `S^2`-bundle over `S^2` with basis `(x, y)`,
    /// `x.y = 1`, `x^2 = 0`, `y^2 = -1`, `c1 = 3x + 2y`.
    pub fn hirzebruch() -> Self {
        SurfaceModel {
            base: BaseSurface::Hirzebruch,
            blowups: 0,
            basis: vec![BasisLabel::X, BasisLabel::Y],
            gram: vec![vec![0, 1], vec![1, -1]],
            c1: CohClass::new(vec![3, 2]),
        }
    }

    /// The ruled model fixed by the parity of an extremal normal Chern
    /// number: even `b` gives `S^2 x S^2`, odd gives the Hirzebruch surface.
    pub fn ruled_for_parity(b: Int) -> Self {
        if b.rem_euclid(2) == 0 {
            SurfaceModel::s2xs2()
        } else {
            SurfaceModel::hirzebruch()
        }
    }

    pub fn base(&self) -> BaseSurface {
        self.base
    }

    pub fn blowups(&self) -> usize {
        self.blowups
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisLabel] {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<Int>] {
        &self.gram
    }

    pub fn c1(&self) -> &CohClass {
        &self.c1
    }

    /// Whether the intersection lattice is even (`S^2 x S^2` stack) rather
    /// than odd (`P^2` or Hirzebruch stack).
    pub fn is_even_lattice(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, row)| row[i] % 2 == 0)
    }

    /// Human-readable name, e.g. `ES2#2P2bar`.
    pub fn name(&self) -> String {
        if self.blowups == 0 {
            self.base.to_string()
        } else {
            format!("{}#{}P2bar", self.base, self.blowups)
        }
    }

    /// Index of a basis label, if present.
    pub fn index_of(&self, label: BasisLabel) -> Option<usize> {
        self.basis.iter().position(|&l| l == label)
    }

    /// The class of one basis label.
    pub fn class_of(&self, label: BasisLabel) -> Option<CohClass> {
        self.index_of(label)
            .map(|i| CohClass::basis_vector(self.rank(), i))
    }

    /// Build a class from `(label, coefficient)` pairs; unspecified labels
    /// get coefficient zero.
    pub fn class_from_pairs(&self, pairs: &[(BasisLabel, Int)]) -> Result<CohClass> {
        let mut coeffs = vec![0; self.rank()];
        for &(label, c) in pairs {
            let i = self.index_of(label).ok_or_else(|| {
                Error::UnsupportedModel(format!("no basis label {label} in {}", self.name()))
            })?;
            coeffs[i] = c;
        }
        Ok(CohClass::new(coeffs))
    }

    /// Intersection pairing `<a.b, [M]>` = `a^T G b` with `G` the Gram matrix.
    pub fn pair(&self, a: &CohClass, b: &CohClass) -> Result<Int> {
        if a.rank() != self.rank() {
            return Err(Error::InvalidClass {
                expected: self.rank(),
                got: a.rank(),
            });
        }
        if b.rank() != self.rank() {
            return Err(Error::InvalidClass {
                expected: self.rank(),
                got: b.rank(),
            });
        }
        let mut total: Int = 0;
        for (i, &ai) in a.coeffs().iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs().iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let term = ai
                    .checked_mul(self.gram[i][j])
                    .and_then(|t| t.checked_mul(bj))
                    .ok_or(Error::Overflow("intersection pairing"))?;
                total = total
                    .checked_add(term)
                    .ok_or(Error::Overflow("intersection pairing"))?;
            }
        }
        Ok(total)
    }

    /// Self-intersection `<z^2, [M]>`.
    pub fn square(&self, z: &CohClass) -> Result<Int> {
        self.pair(z, z)
    }

    /// Symplectic area `<omega, z>` of the class `z`.
    pub fn symplectic_area(&self, omega: &CohClass, z: &CohClass) -> Result<Int> {
        self.pair(omega, z)
    }

    /// One-point blow-up: appends a new exceptional label `E_{k+1}` with
    /// self-intersection `-1`, orthogonal to the old basis, and subtracts it
    /// from `c1`. Pre-existing classes keep their pairings (isometric
    /// embedding by extending coefficient vectors with zero).
    pub fn blow_up(&self) -> SurfaceModel {
        let n = self.rank();
        let mut basis = self.basis.clone();
        let next_index = self.blowups as u8 + 1;
        basis.push(BasisLabel::E(next_index));
        let mut gram = Vec::with_capacity(n + 1);
        for row in &self.gram {
            let mut new_row = row.clone();
            new_row.push(0);
            gram.push(new_row);
        }
        let mut last = vec![0; n + 1];
        last[n] = -1;
        gram.push(last);
        let mut c1 = self.c1.coeffs().to_vec();
        c1.push(-1);
        SurfaceModel {
            base: self.base,
            blowups: self.blowups + 1,
            basis,
            gram,
            c1: CohClass::new(c1),
        }
    }

    /// Blow up `m` times.
    pub fn blow_up_times(&self, m: usize) -> SurfaceModel {
        let mut model = self.clone();
        for _ in 0..m {
            model = model.blow_up();
        }
        model
    }

    /// Extend a class of this model by zeros into a blow-up of it.
    pub fn lift_to(&self, z: &CohClass, target: &SurfaceModel) -> Result<CohClass> {
        if z.rank() != self.rank() || target.rank() < self.rank() {
            return Err(Error::InvalidClass {
                expected: self.rank(),
                got: z.rank(),
            });
        }
        let mut coeffs = z.coeffs().to_vec();
        coeffs.resize(target.rank(), 0);
        Ok(CohClass::new(coeffs))
    }

    /// Render a class as a string in this model's basis, e.g. `3x+2y-E1`.
    pub fn format_class(&self, z: &CohClass) -> String {
        if z.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, &c) in z.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c > 0 && !out.is_empty() {
                out.push('+');
            }
            if c == -1 {
                out.push('-');
            } else if c != 1 {
                out.push_str(&c.to_string());
            }
            out.push_str(&self.basis[i].to_string());
        }
        out
    }
}

/// Determinant of a symmetric integer matrix by fraction-free (Bareiss)
/// elimination over `i128`.
pub fn determinant(gram: &[Vec<Int>]) -> i128 {
    let n = gram.len();
    let mut m: Vec<Vec<i128>> = gram
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign: i128 = 1;
    let mut prev: i128 = 1;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    if n == 0 {
        return 1;
    }
    sign * m[n - 1][n - 1]
}

/// Signature `(positive, negative, zero)` of a symmetric integer matrix via
/// exact congruence diagonalization. Each elimination step replaces
/// `row_i := p * row_i - f * row_k` together with the same column operation,
/// which scales the i-th diagonal slot by `p^2 > 0` and so preserves the
/// inertia. Entries stay well within `i128` at the ranks that occur here.
#[allow(clippy::needless_range_loop)]
pub fn signature(gram: &[Vec<Int>]) -> (usize, usize, usize) {
    let n = gram.len();
    let mut m: Vec<Vec<i128>> = gram
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&j| m[k][j] != 0) {
                None => {
                    zero += 1;
                    continue;
                }
                Some(j) => {
                    // Pivot repair: fold row/column j into slot k. The new
                    // diagonal entry is 2*m[k][j] + m[j][j]; if that still
                    // vanishes, folding with the opposite sign cannot.
                    let sign: i128 = if 2 * m[k][j] + m[j][j] != 0 { 1 } else { -1 };
                    for col in 0..n {
                        m[k][col] += sign * m[j][col];
                    }
                    for row in 0..n {
                        m[row][k] += sign * m[row][j];
                    }
                }
            }
        }
        let p = m[k][k];
        if p > 0 {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            let f = m[i][k];
            if f == 0 {
                continue;
            }
            for col in 0..n {
                m[i][col] = p * m[i][col] - f * m[k][col];
            }
            for row in 0..n {
                m[row][i] = p * m[row][i] - f * m[row][k];
            }
        }
    }
    (pos, neg, zero)
}

/// Check that a model's intersection form is unimodular of signature
/// `(1, rank - 1)`.
pub fn check_unimodular_lorentzian(model: &SurfaceModel) -> Result<()> {
    let det = determinant(model.gram());
    if det != 1 && det != -1 {
        return Err(Error::Inconsistency(format!(
            "{}: intersection form has determinant {det}, expected +-1",
            model.name()
        )));
    }
    let (pos, neg, zero) = signature(model.gram());
    if pos != 1 || zero != 0 || neg != model.rank() - 1 {
        return Err(Error::Inconsistency(format!(
            "{}: intersection form has signature ({pos}, {neg}, {zero}), expected (1, {}, 0)",
            model.name(),
            model.rank() - 1
        )));
    }
    Ok(())
}
