//! Equivariant localization in closed form.
//!
//! Every fixed component contributes a closed-form residue to the
//! equivariant integrals of `1`, `c1`, and `c1^3`. The degree-0 and
//! degree-2 integrals vanish on a closed manifold and yield the linear
//! constraints that drive the case analysis; the degree-6 integral is the
//! Chern number `c1^3`. A small Laurent-polynomial engine reproduces the
//! same residues symbolically as an independent route.

use crate::error::{Error, Result};
use crate::lattice::{CohClass, Int};
use std::collections::BTreeMap;

/// The interior critical-value pattern of a balanced moment map together
/// with fixed-point counts: `m` isolated points of index two at level -1
/// (and equally many of index four at +1), and the number of fixed surfaces
/// at level 0. Extremal levels are always -2 and +2 here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalProfile {
    pub m: usize,
    pub z0_components: usize,
}

impl CriticalProfile {
    pub fn new(m: usize, z0_components: usize) -> Self {
        CriticalProfile { m, z0_components }
    }

    /// Interior critical levels, a subset of {-1, 0, 1}.
    pub fn interior_levels(&self) -> Vec<Int> {
        let mut levels = Vec::new();
        if self.m > 0 {
            levels.push(-1);
        }
        if self.z0_components > 0 {
            levels.push(0);
        }
        if self.m > 0 {
            levels.push(1);
        }
        levels
    }

    /// Case label I/II/III/IV from the interior pattern.
    pub fn case_name(&self) -> &'static str {
        match (self.m > 0, self.z0_components > 0) {
            (false, false) => "I",
            (false, true) => "II",
            (true, false) => "III",
            (true, true) => "IV",
        }
    }
}

/// Homeomorphism type of one fixed component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentShape {
    Sphere,
    Point,
    Torus,
}

/// One fixed component with the data the topological fixed point data
/// records about it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedComponent {
    pub level: Int,
    pub shape: ComponentShape,
    /// Genus, for two-dimensional components.
    pub genus: Option<Int>,
    /// Dual class in the reduced space, recorded at level 0 (extremal
    /// reduced spaces are the spheres themselves).
    pub pd_class: Option<CohClass>,
    /// Symplectic area, for two-dimensional components.
    pub area: Option<Int>,
    /// Chern numbers of the negative/positive normal line bundles of a
    /// level-0 surface; never pinned down by the constraints used here.
    pub normal_chern: Option<(Int, Int)>,
}

impl FixedComponent {
    pub fn sphere(level: Int, area: Int, pd_class: Option<CohClass>) -> Self {
        FixedComponent {
            level,
            shape: ComponentShape::Sphere,
            genus: Some(0),
            pd_class,
            area: Some(area),
            normal_chern: None,
        }
    }

    pub fn point(level: Int) -> Self {
        FixedComponent {
            level,
            shape: ComponentShape::Point,
            genus: None,
            pd_class: None,
            area: None,
            normal_chern: None,
        }
    }
}

/// Contribution of one fixed component to the localization of `c1^3`.
///
/// Extremal spheres contribute `24 + 4b` where `b = area - 2` is the normal
/// Chern number; each isolated point contributes `-1` (its residue is
/// `+-lambda^3 / (-+lambda^3)`); level-0 surfaces contribute `0` because the
/// restricted equivariant class has trivial cube.
pub fn contribution_c13(f: &FixedComponent) -> Result<Int> {
    match (f.level, f.shape) {
        (-2 | 2, ComponentShape::Sphere) => {
            let area = f.area.ok_or_else(|| {
                Error::Inconsistency("extremal sphere without recorded area".into())
            })?;
            Ok(24 + 4 * (area - 2))
        }
        (-1 | 1, ComponentShape::Point) => Ok(-1),
        (0, _) => Ok(0),
        _ => Err(Error::Inconsistency(format!(
            "no closed-form contribution for shape {:?} at level {}",
            f.shape, f.level
        ))),
    }
}

/// Chern number of the six-manifold from the profile and the extremal
/// normal Chern numbers: `48 + 4(b_min + b_max) - 2m`.
pub fn chern_number(profile: &CriticalProfile, b_min: Int, b_max: Int) -> Int {
    48 + 4 * (b_min + b_max) - 2 * profile.m as Int
}

/// Localization of `1`: vanishing of the degree `-3` residue sum forces
/// `b_max = b_min` when there are no level-0 surfaces.
pub fn identity_int_one(b_min: Int, b_max: Int) -> bool {
    b_max == b_min
}

/// Localization of `c1`: the degree `-2` residue sum vanishes iff
/// `b_min + b_max + 2m + Vol(Z_0) = 4`.
pub fn identity_int_c1(profile: &CriticalProfile, b_min: Int, b_max: Int, vol_z0: Int) -> bool {
    b_min + b_max + 2 * profile.m as Int + vol_z0 == 4
}

/// Second Betti number of the six-manifold: one cell from the minimum, one
/// per interior index-2 point, one per level-0 surface (perfect Morse-Bott
/// count).
pub fn betti2(profile: &CriticalProfile) -> Int {
    1 + profile.m as Int + profile.z0_components as Int
}

/// One solution of the interior-wall constraint system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileSolution {
    pub m: usize,
    pub vol_z0: Int,
    pub b_min: Int,
    pub b_max: Int,
}

/// All `(m, Vol(Z_0), b_min, b_max)` with `m` in {1, 2}, `Vol >= 1`, both
/// `b >= -1`, satisfying the degree-2 localization identity. There are 13,
/// reducing to 8 under the orientation normalization `b_min <= b_max`.
pub fn enumerate_profile_solutions() -> Vec<ProfileSolution> {
    let mut out = Vec::new();
    for m in 1..=2usize {
        for vol in 1..=8 {
            for b_min in -1..=6 {
                for b_max in -1..=6 {
                    let profile = CriticalProfile::new(m, 1);
                    if identity_int_c1(&profile, b_min, b_max, vol) {
                        out.push(ProfileSolution {
                            m,
                            vol_z0: vol,
                            b_min,
                            b_max,
                        });
                    }
                }
            }
        }
    }
    out
}

/// The profile solutions surviving `b_min <= b_max`.
pub fn normalized_profile_solutions() -> Vec<ProfileSolution> {
    enumerate_profile_solutions()
        .into_iter()
        .filter(|s| s.b_min <= s.b_max)
        .collect()
}

/// Case III closure: the only `(b_min, m)` with `m >= 1`, `b >= -1`
/// satisfying both localization identities (with no level-0 surfaces),
/// searched over the stated brute-force box.
pub fn case_iii_solutions() -> Vec<(Int, usize)> {
    let mut out = Vec::new();
    for b in -1..=6 {
        for m in 1..=8usize {
            let profile = CriticalProfile::new(m, 0);
            if identity_int_one(b, b) && identity_int_c1(&profile, b, b, 0) {
                out.push((b, m));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Laurent-series verification route.
//
// Elements of H^*_{S^1}(Z) for Z a sphere or point are written as
// p(lambda) + q(lambda) u with u^2 = 0 and <u, [Z]> = 1. The residues the
// closed forms above summarize are recomputed here by exact division.
// ---------------------------------------------------------------------------

/// Laurent polynomial in the equivariant generator with integer
/// coefficients, exponents possibly negative.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<i32, Int>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn term(coeff: Int, power: i32) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(power, coeff);
        }
        Laurent { terms }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut terms = self.terms.clone();
        for (&p, &c) in &other.terms {
            let entry = terms.entry(p).or_insert(0);
            *entry += c;
            if *entry == 0 {
                terms.remove(&p);
            }
        }
        Laurent { terms }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut terms: BTreeMap<i32, Int> = BTreeMap::new();
        for (&p1, &c1) in &self.terms {
            for (&p2, &c2) in &other.terms {
                let entry = terms.entry(p1 + p2).or_insert(0);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| *c != 0);
        Laurent { terms }
    }

    pub fn scale(&self, s: Int) -> Laurent {
        if s == 0 {
            return Laurent::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(&p, &c)| (p, c * s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant coefficient, if the element is a single constant term.
    pub fn as_constant(&self) -> Option<Int> {
        if self.terms.is_empty() {
            return Some(0);
        }
        if self.terms.len() == 1 {
            if let Some(&c) = self.terms.get(&0) {
                return Some(c);
            }
        }
        None
    }
}

/// `p(lambda) + q(lambda) u` with `u^2 = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantElement {
    pub scalar: Laurent,
    pub u_part: Laurent,
}

impl EquivariantElement {
    pub fn new(scalar: Laurent, u_part: Laurent) -> Self {
        EquivariantElement { scalar, u_part }
    }

    pub fn mul(&self, other: &EquivariantElement) -> EquivariantElement {
        EquivariantElement {
            scalar: self.scalar.mul(&other.scalar),
            u_part: self
                .scalar
                .mul(&other.u_part)
                .add(&self.u_part.mul(&other.scalar)),
        }
    }

    pub fn pow3(&self) -> EquivariantElement {
        self.mul(self).mul(self)
    }

    /// Division by `c * lambda^k + q(lambda) u` where the scalar part is a
    /// single monomial with coefficient +-1: the inverse is
    /// `c^-1 lambda^-k - c^-2 lambda^-2k q u`.
    pub fn div_by_monomial_plus_u(&self, denom: &EquivariantElement) -> Result<EquivariantElement> {
        let (power, coeff) = match denom.scalar.terms.iter().next() {
            Some((&p, &c)) if denom.scalar.terms.len() == 1 && (c == 1 || c == -1) => (p, c),
            _ => {
                return Err(Error::Inconsistency(
                    "equivariant Euler class does not have unit monomial scalar part".into(),
                ))
            }
        };
        let inv_scalar = Laurent::term(coeff, -power); // c^-1 = c for c = +-1
        let inv_u = denom.u_part.mul(&Laurent::term(-1, -2 * power)); // -c^-2 q lambda^-2k
        let inverse = EquivariantElement::new(inv_scalar, inv_u);
        Ok(self.mul(&inverse))
    }

    /// Integration over the component: a sphere picks out the `u`
    /// coefficient, a point restricts to the scalar part.
    pub fn integrate_sphere(&self) -> Laurent {
        self.u_part.clone()
    }
}

/// Extremal-sphere residue of `c1^3` via the Laurent route: numerator
/// `((2+b)u +- 2 lambda)^3`, denominator `+-b u lambda + lambda^2`.
pub fn extremal_c13_residue(b: Int, is_min: bool) -> Result<Laurent> {
    let sign = if is_min { 1 } else { -1 };
    let restricted = EquivariantElement::new(Laurent::term(2 * sign, 1), Laurent::term(2 + b, 0));
    let euler = EquivariantElement::new(Laurent::term(1, 2), Laurent::term(sign * b, 1));
    Ok(restricted
        .pow3()
        .div_by_monomial_plus_u(&euler)?
        .integrate_sphere())
}

/// Isolated-point residue of `c1^3`: numerator `(+-lambda)^3`, denominator
/// `-+lambda^3` (weights `(-1,1,1)` at index two, `(-1,-1,1)` at index
/// four).
pub fn point_c13_residue(index_two: bool) -> Result<Laurent> {
    let sign = if index_two { 1 } else { -1 };
    let restricted = EquivariantElement::new(Laurent::term(sign, 1), Laurent::zero());
    let euler = EquivariantElement::new(Laurent::term(-sign, 3), Laurent::zero());
    // A point has no u-direction; the quotient is a pure Laurent scalar.
    let quotient = restricted.pow3().div_by_monomial_plus_u(&euler)?;
    if !quotient.u_part.is_zero() {
        return Err(Error::Inconsistency(
            "point residue acquired a u part".into(),
        ));
    }
    Ok(quotient.scalar)
}

/// Sum the Laurent-route residues of `c1^3` over a full component list and
/// extract the integer total, checking that every non-constant power
/// cancels.
pub fn laurent_c13_total(components: &[FixedComponent]) -> Result<Int> {
    let mut total = Laurent::zero();
    for f in components {
        let residue = match (f.level, f.shape) {
            (-2, ComponentShape::Sphere) => extremal_c13_residue(f.area.unwrap_or(0) - 2, true)?,
            (2, ComponentShape::Sphere) => extremal_c13_residue(f.area.unwrap_or(0) - 2, false)?,
            (-1, ComponentShape::Point) => point_c13_residue(true)?,
            (1, ComponentShape::Point) => point_c13_residue(false)?,
            (0, _) => Laurent::zero(),
            _ => {
                return Err(Error::Inconsistency(format!(
                    "unexpected component at level {}",
                    f.level
                )))
            }
        };
        total = total.add(&residue);
    }
    total
        .as_constant()
        .ok_or_else(|| Error::Inconsistency(format!("Laurent residues did not cancel: {total:?}")))
}
