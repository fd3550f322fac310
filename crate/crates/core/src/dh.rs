//! Duistermaat-Heckman evolution of the reduced symplectic class and the
//! level-set Euler class across the walls of the balanced moment map.
//!
//! On an interval of regular values `[omega_r] - [omega_s] = (s - r) e`, so
//! each regular stretch is a `Slice`: a model, an affine class `omega(t)`,
//! and the Euler class driving it. Interior walls occur in the fixed order
//! -1 (simultaneous blow-ups at index-2 points), 0 (codimension-four fixed
//! surfaces, same model, Euler class jumps by their duals), +1
//! (simultaneous blow-downs along vanishing cycles). The normalization is
//! pinned at level zero, where the reduced space is monotone:
//! `[omega_0] = c1(M_0)`.

use crate::error::{Error, Result};
use crate::exceptional;
use crate::lattice::{BaseSurface, BasisLabel, CohClass, Int, SurfaceModel};

/// Which end of the moment interval an extremal sphere sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Min,
    Max,
}

/// Extremal fixed-sphere data: the first Chern number of its normal bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalData {
    pub b: Int,
    pub side: Side,
}

/// Euler class of the level set just inside an extremum: `kx - y` at the
/// minimum and `-kx + y` at the maximum, where `b = 2k` on `S^2 x S^2` and
/// `b = 2k + 1` on the Hirzebruch surface. Satisfies `<e^2> = -b`.
pub fn extremal_euler(d: ExtremalData, model: &SurfaceModel) -> Result<CohClass> {
    if model.blowups() != 0 {
        return Err(Error::UnsupportedModel(format!(
            "extremal reduced space must be a minimal ruled surface, got {}",
            model.name()
        )));
    }
    let k = match model.base() {
        BaseSurface::S2xS2 if d.b.rem_euclid(2) == 0 => d.b / 2,
        BaseSurface::Hirzebruch if d.b.rem_euclid(2) == 1 => (d.b - 1) / 2,
        BaseSurface::P2 => return Err(Error::UnsupportedModel("P2 is not a sphere bundle".into())),
        _ => {
            return Err(Error::InconsistentExtremum {
                b: d.b,
                model: model.name(),
            });
        }
    };
    let e = match d.side {
        Side::Min => model.class_from_pairs(&[(BasisLabel::X, k), (BasisLabel::Y, -1)])?,
        Side::Max => model.class_from_pairs(&[(BasisLabel::X, -k), (BasisLabel::Y, 1)])?,
    };
    debug_assert_eq!(model.square(&e).unwrap(), -d.b);
    Ok(e)
}

/// One regular stretch of the moment interval.
///
/// `omega(t) = omega_lo - (t - lo) * euler` for `t` in `[lo, hi]`; the
/// Euler class is `e(P_lo^+) = e(P_hi^-)`.
#[derive(Debug, Clone)]
pub struct Slice {
    pub model: SurfaceModel,
    pub lo: Int,
    pub hi: Int,
    pub omega_lo: CohClass,
    pub euler: CohClass,
}

impl Slice {
    pub fn new(model: SurfaceModel, lo: Int, hi: Int, omega_lo: CohClass, euler: CohClass) -> Self {
        Slice {
            model,
            lo,
            hi,
            omega_lo,
            euler,
        }
    }

    /// The class `[omega_t]` at an integer level.
    pub fn omega_at(&self, t: Int) -> Result<CohClass> {
        self.omega_lo
            .checked_sub(&self.euler.checked_scale(t - self.lo)?)
    }

    /// Coefficients `(A, B, C)` of the quadratic `<omega_t^2> = At^2+Bt+C`.
    pub fn volume_quadratic(&self) -> Result<(Int, Int, Int)> {
        let p = self.model.square(&self.omega_lo)?;
        let q = self.model.pair(&self.omega_lo, &self.euler)?;
        let r = self.model.square(&self.euler)?;
        let t0 = self.lo;
        // P - 2Q(t - t0) + R(t - t0)^2
        Ok((r, -2 * q - 2 * r * t0, p + 2 * q * t0 + r * t0 * t0))
    }

    /// Strict positivity of `<omega_t^2>` on the open interval `(lo, hi)`.
    pub fn volume_positive_inside(&self) -> Result<bool> {
        let (a, b, c) = self.volume_quadratic()?;
        let exact = quadratic_positive_on_open(a, b, c, self.lo, self.hi);
        debug_assert!(
            !exact || half_grid_positive(a, b, c, self.lo, self.hi),
            "exact positivity must imply positivity on the half-integer grid"
        );
        Ok(exact)
    }
}

/// Exact test for `q(t) = At^2 + Bt + C > 0` on the open interval
/// `(lo, hi)` with integer endpoints.
pub fn quadratic_positive_on_open(a: Int, b: Int, c: Int, lo: Int, hi: Int) -> bool {
    debug_assert!(lo < hi);
    let q = |t: Int| a * t * t + b * t + c;
    if q(lo) < 0 || q(hi) < 0 {
        return false;
    }
    if a == 0 {
        if b == 0 {
            return c > 0;
        }
        return true; // linear with both ends >= 0 is positive strictly inside
    }
    if a < 0 {
        return true; // concave with both ends >= 0
    }
    // Convex: check the vertex when it lies strictly inside.
    let vertex_inside = 2 * a * lo < -b && -b < 2 * a * hi;
    if vertex_inside {
        b * b - 4 * a * c < 0
    } else {
        // Monotone over the interval; interior values exceed the lower end.
        q(lo) > 0 || q(hi) > 0
    }
}

/// Fast pre-filter: `q > 0` at every interior half-integer `t = p/2`.
fn half_grid_positive(a: Int, b: Int, c: Int, lo: Int, hi: Int) -> bool {
    let mut p = 2 * lo + 1;
    while p < 2 * hi {
        if a * p * p + 2 * b * p + 4 * c <= 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Does the slice end in total volume collapse at level 2: `<omega^2>`
/// tends to zero at the top while staying strictly positive inside?
pub fn check_volume_collapse(slice: &Slice) -> Result<bool> {
    if slice.hi != 2 {
        return Err(Error::NotAWall(format!(
            "slice ends at {}, not at level 2",
            slice.hi
        )));
    }
    let top = slice.omega_at(2)?;
    Ok(slice.model.square(&top)? == 0 && slice.volume_positive_inside()?)
}

/// Same at the bottom, level -2.
pub fn check_volume_collapse_min(slice: &Slice) -> Result<bool> {
    if slice.lo != -2 {
        return Err(Error::NotAWall(format!(
            "slice starts at {}, not at level -2",
            slice.lo
        )));
    }
    Ok(slice.model.square(&slice.omega_lo)? == 0 && slice.volume_positive_inside()?)
}

/// Cross a level-zero wall of codimension-four fixed surfaces going up:
/// same model, continuous omega, `e^+ = e^- + sum PD(Z_0^i)`.
pub fn cross_surface_wall(slice: &Slice, z_classes: &[CohClass], next_hi: Int) -> Result<Slice> {
    let wall = slice.hi;
    let omega_wall = slice.omega_at(wall)?;
    let mut euler = slice.euler.clone();
    for z in z_classes {
        euler = euler.checked_add(z)?;
    }
    Ok(Slice::new(
        slice.model.clone(),
        wall,
        next_hi,
        omega_wall,
        euler,
    ))
}

/// Cross a level `-1` wall of `m` index-two points going up: the model blows
/// up `m` times, `e^+ = phi^*(e^-) + sum E_new`, and omega pulls back
/// continuously (each newborn exceptional sphere has zero area at the wall).
pub fn cross_blowup_wall(slice: &Slice, m: usize, next_hi: Int) -> Result<Slice> {
    let wall = slice.hi;
    let model = slice.model.blow_up_times(m);
    let omega_wall = slice.model.lift_to(&slice.omega_at(wall)?, &model)?;
    let mut euler = slice.model.lift_to(&slice.euler, &model)?;
    for i in slice.model.blowups() + 1..=slice.model.blowups() + m {
        euler = euler.checked_add(&model.class_of(BasisLabel::E(i as u8)).expect("new label"))?;
    }
    Ok(Slice::new(model, wall, next_hi, omega_wall, euler))
}

/// Result of a simultaneous blow-down: the new slice downstairs plus the
/// isometry data used to push classes forward.
#[derive(Debug, Clone)]
pub struct BlowdownCrossing {
    pub slice: Slice,
    /// Images of the downstairs basis `(x, y)` upstairs (the columns of
    /// `phi^*`), recorded for isometry checks.
    pub lift_x: CohClass,
    pub lift_y: CohClass,
}

/// Cross a level `+1` wall going up by blowing down the given vanishing
/// cycles. Each cycle must be exceptional with zero symplectic area at the
/// wall, and the cycles must be pairwise orthogonal. Classes are pushed
/// forward by lattice projection onto the orthogonal complement; the
/// downstairs model is recognized from the complement's parity and the
/// basis is normalized against the pushed Euler class.
pub fn cross_blowdown_wall(
    slice: &Slice,
    cycles: &[CohClass],
    next_hi: Int,
) -> Result<BlowdownCrossing> {
    let model = &slice.model;
    let wall = slice.hi;
    let omega_wall = slice.omega_at(wall)?;
    if cycles.is_empty() {
        return Ok(BlowdownCrossing {
            slice: Slice::new(
                model.clone(),
                wall,
                next_hi,
                omega_wall,
                slice.euler.clone(),
            ),
            lift_x: CohClass::basis_vector(model.rank(), 0),
            lift_y: CohClass::basis_vector(model.rank(), 1),
        });
    }
    for c in cycles {
        if model.square(c)? != -1 || model.pair(model.c1(), c)? != 1 {
            return Err(Error::NotAWall(format!(
                "cycle {} is not an exceptional class",
                model.format_class(c)
            )));
        }
        let area = model.symplectic_area(&omega_wall, c)?;
        if area != 0 {
            return Err(Error::NotAWall(format!(
                "cycle {} has nonzero area {area} at the wall",
                model.format_class(c)
            )));
        }
    }
    for (i, a) in cycles.iter().enumerate() {
        for b in &cycles[i + 1..] {
            if a == b {
                return Err(Error::BlowdownInconsistent(
                    "repeated vanishing cycle".into(),
                ));
            }
            if model.pair(a, b)? != 0 {
                return Err(Error::BlowdownInconsistent(format!(
                    "cycles {} and {} intersect",
                    model.format_class(a),
                    model.format_class(b)
                )));
            }
        }
    }
    // Blow-downs happen along every exceptional sphere whose area vanishes
    // at the wall; a zero-area exceptional class outside the declared set
    // means the declared wall is inconsistent.
    for e in exceptional::exceptional_classes(model)? {
        let vanishes = model.symplectic_area(&omega_wall, &e)? == 0;
        if vanishes && !cycles.contains(&e) {
            return Err(Error::BlowdownInconsistent(format!(
                "class {} also vanishes at the wall",
                model.format_class(&e)
            )));
        }
    }
    // The incoming Euler class restricts to the tautological class on each
    // collapsing sphere.
    for c in cycles {
        let met = model.pair(&slice.euler, c)?;
        if met != 1 {
            return Err(Error::BlowdownInconsistent(format!(
                "Euler class meets vanishing cycle {} with multiplicity {met} (expected 1)",
                model.format_class(c)
            )));
        }
    }
    if model.rank() != cycles.len() + 2 {
        return Err(Error::UnsupportedModel(format!(
            "blow-down from rank {} along {} cycles does not land on a minimal ruled surface",
            model.rank(),
            cycles.len()
        )));
    }

    // e(P_1^-) = phi^*(e(P_1^+)) - sum C, so the pushed Euler class upstairs
    // is e^- + sum C; it is orthogonal to every cycle.
    let mut euler_up = slice.euler.clone();
    for c in cycles {
        euler_up = euler_up.checked_add(c)?;
    }
    let b_max = -model.square(&euler_up)?;

    // Orthogonal complement of the cycles, via the integer projection
    // v -> v + sum <v, C_j> C_j (each C_j has square -1).
    let project = |v: &CohClass| -> Result<CohClass> {
        let mut out = v.clone();
        for c in cycles {
            let coeff = model.pair(v, c)?;
            out = out.checked_add(&c.checked_scale(coeff)?)?;
        }
        Ok(out)
    };
    debug_assert!(cycles
        .iter()
        .all(|c| model.pair(&euler_up, c).unwrap() == 0));

    // Find a primitive isotropic class f in the complement with
    // <euler_up, f> = +1 and positive area at the wall: the fiber class
    // downstairs (its area is 2 - t, so it is strictly positive here).
    let generators: Vec<CohClass> = (0..model.rank())
        .map(|i| project(&CohClass::basis_vector(model.rank(), i)))
        .collect::<Result<Vec<_>>>()?;
    let mut fiber: Option<CohClass> = None;
    'outer: for i in -6i64..=6 {
        for j in -6i64..=6 {
            for gi in 0..generators.len() {
                for gj in gi + 1..generators.len() {
                    let cand = generators[gi]
                        .checked_scale(i)?
                        .checked_add(&generators[gj].checked_scale(j)?)?;
                    if cand.is_zero() || !is_primitive(&cand) {
                        continue;
                    }
                    if model.square(&cand)? == 0
                        && model.pair(&euler_up, &cand)? == 1
                        && model.symplectic_area(&omega_wall, &cand)? > 0
                    {
                        fiber = Some(cand);
                        break 'outer;
                    }
                }
            }
        }
    }
    let fiber = fiber.ok_or_else(|| {
        Error::Inconsistency("no isotropic fiber class in the blow-down complement".into())
    })?;

    // Base class: y' = euler_up + k f with y'^2 in {0, -1} by parity.
    let (target, want_sq) = if b_max.rem_euclid(2) == 0 {
        (SurfaceModel::s2xs2(), 0)
    } else {
        (SurfaceModel::hirzebruch(), -1)
    };
    // y'^2 = -b_max + 2k
    let k = (want_sq + b_max) / 2;
    debug_assert_eq!(-b_max + 2 * k, want_sq);
    let base = euler_up.checked_add(&fiber.checked_scale(k)?)?;
    debug_assert_eq!(model.square(&base)?, want_sq);
    debug_assert_eq!(model.pair(&fiber, &base)?, 1);

    // Push a complement class to downstairs coordinates (B, A) where
    // v = A f + B y': B = <v, f>, A = <v, y'> - B y'^2.
    let push = |v: &CohClass| -> Result<CohClass> {
        for c in cycles {
            if model.pair(v, c)? != 0 {
                return Err(Error::Inconsistency(format!(
                    "cannot push {}: not orthogonal to the vanishing cycles",
                    model.format_class(v)
                )));
            }
        }
        let b_coef = model.pair(v, &fiber)?;
        let a_coef = model.pair(v, &base)? - b_coef * want_sq;
        Ok(CohClass::new(vec![a_coef, b_coef]))
    };

    // Consistency: c1 upstairs plus the cycle duals pushes to c1 downstairs.
    let mut c1_up = model.c1().clone();
    for c in cycles {
        c1_up = c1_up.checked_add(c)?;
    }
    let c1_down = push(&c1_up)?;
    if &c1_down != target.c1() {
        return Err(Error::Inconsistency(format!(
            "blow-down pushed c1 to {}, expected {}",
            target.format_class(&c1_down),
            target.format_class(target.c1())
        )));
    }

    let omega_down = push(&omega_wall)?;
    let euler_down = push(&euler_up)?;
    debug_assert_eq!(target.square(&euler_down)?, -b_max);

    Ok(BlowdownCrossing {
        slice: Slice::new(target, wall, next_hi, omega_down, euler_down),
        lift_x: fiber,
        lift_y: base,
    })
}

fn is_primitive(v: &CohClass) -> bool {
    let mut g: Int = 0;
    for &c in v.coeffs() {
        g = gcd(g, c.abs());
    }
    g == 1
}

fn gcd(a: Int, b: Int) -> Int {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Input of a full engine run, everything in the level-zero model's basis.
#[derive(Debug, Clone)]
pub struct EngineInput {
    pub b_min: Int,
    pub m: usize,
    pub z0_parts: Vec<CohClass>,
    pub cycles: Vec<CohClass>,
}

/// A fully assembled and checked slice sequence.
#[derive(Debug, Clone)]
pub struct EngineRun {
    pub model_min: SurfaceModel,
    pub model0: SurfaceModel,
    pub model_max: SurfaceModel,
    pub omega0: CohClass,
    /// `e(P_{-2}^+)` in the minimal model's basis.
    pub euler_min: CohClass,
    /// `e(P_0^-)` and `e(P_0^+)` in the level-zero basis.
    pub euler_zero_minus: CohClass,
    pub euler_zero_plus: CohClass,
    /// `e(P_2^-)` in the recognized top model's basis.
    pub euler_max: CohClass,
    pub b_max: Int,
    pub slices: Vec<Slice>,
}

/// Assemble the slice sequence for one classification branch and run every
/// consistency check along the way. The normalization anchor is
/// `[omega_0] = c1(M_0)`; walls absent from the data are skipped.
pub fn run_engine(input: &EngineInput) -> Result<EngineRun> {
    if 2 + input.b_min < 1 {
        return Err(Error::InconsistentExtremum {
            b: input.b_min,
            model: "minimal sphere has nonpositive area".into(),
        });
    }
    let model_min = SurfaceModel::ruled_for_parity(input.b_min);
    let euler_min = extremal_euler(
        ExtremalData {
            b: input.b_min,
            side: Side::Min,
        },
        &model_min,
    )?;
    let model0 = model_min.blow_up_times(input.m);
    let omega0 = model0.c1().clone();

    // e(P_{-1}^+) = e(P_0^-) = lift(e_min) + sum of newborn exceptional duals.
    let mut euler_zero_minus = model_min.lift_to(&euler_min, &model0)?;
    for i in 1..=input.m {
        euler_zero_minus = euler_zero_minus
            .checked_add(&model0.class_of(BasisLabel::E(i as u8)).expect("new label"))?;
    }

    let mut slices: Vec<Slice> = Vec::new();

    // Downward leg: [-1, 0] on M_0 (or [-2, 0] when there is no -1 wall).
    let lower_wall = if input.m > 0 { -1 } else { -2 };
    let below_zero = Slice::new(
        model0.clone(),
        lower_wall,
        0,
        {
            // omega at the lower wall from omega(t) = omega_0 - t e.
            omega0.checked_sub(&euler_zero_minus.checked_scale(lower_wall)?)?
        },
        euler_zero_minus.clone(),
    );
    if input.m > 0 {
        // Newborn spheres collapse at their birth wall.
        let omega_wall = below_zero.omega_at(-1)?;
        for i in 1..=input.m {
            let e_i = model0.class_of(BasisLabel::E(i as u8)).expect("label");
            let area = model0.symplectic_area(&omega_wall, &e_i)?;
            if area != 0 {
                return Err(Error::Inconsistency(format!(
                    "exceptional sphere E{i} has area {area} at its birth wall"
                )));
            }
        }
        // Bottom stretch [-2, -1] on the minimal model: drop the E-coordinates.
        let omega_wall_down = CohClass::new(omega_wall.coeffs()[..model_min.rank()].to_vec());
        let bottom = Slice::new(
            model_min.clone(),
            -2,
            -1,
            {
                // omega_lo at -2: omega(-2) = omega(-1) + e_min
                omega_wall_down.checked_add(&euler_min)?
            },
            euler_min.clone(),
        );
        if !check_volume_collapse_min(&bottom)? {
            return Err(Error::Inconsistency(
                "no volume collapse at the minimum".into(),
            ));
        }
        slices.push(bottom);
    } else if !check_volume_collapse_min(&below_zero)? {
        return Err(Error::Inconsistency(
            "no volume collapse at the minimum".into(),
        ));
    }
    if !below_zero.volume_positive_inside()? {
        return Err(Error::Inconsistency(
            "reduced volume vanishes below level 0".into(),
        ));
    }
    slices.push(below_zero.clone());

    // Level-0 wall.
    let euler_zero_plus = {
        let mut e = euler_zero_minus.clone();
        for z in &input.z0_parts {
            e = e.checked_add(z)?;
        }
        e
    };

    // Upward leg: [0, +1] (or [0, 2] when there is no +1 wall).
    let upper_wall = if input.m > 0 { 1 } else { 2 };
    let above_zero = Slice::new(
        model0.clone(),
        0,
        upper_wall,
        omega0.clone(),
        euler_zero_plus.clone(),
    );
    if !above_zero.volume_positive_inside()? {
        return Err(Error::Inconsistency(
            "reduced volume vanishes above level 0".into(),
        ));
    }

    if input.m == 0 {
        if !check_volume_collapse(&above_zero)? {
            return Err(Error::Inconsistency(
                "no volume collapse at the maximum".into(),
            ));
        }
        let b_max = -model0.square(&euler_zero_plus)?;
        // The top model is the same reduced space; parity must agree.
        if (b_max.rem_euclid(2) == 0) != model0.is_even_lattice() {
            return Err(Error::InconsistentExtremum {
                b: b_max,
                model: model0.name(),
            });
        }
        slices.push(above_zero.clone());
        return Ok(EngineRun {
            model_min,
            model_max: model0.clone(),
            model0,
            omega0,
            euler_min,
            euler_zero_minus,
            euler_zero_plus: euler_zero_plus.clone(),
            euler_max: euler_zero_plus,
            b_max,
            slices,
        });
    }

    // The +1 wall: one vanishing cycle per index-four point; the crossing
    // itself validates exceptionality, zero areas, orthogonality, and that
    // no further class vanishes.
    if input.cycles.len() != input.m {
        return Err(Error::NotAWall(format!(
            "{} vanishing cycles for {} index-four points",
            input.cycles.len(),
            input.m
        )));
    }
    slices.push(above_zero.clone());

    let crossing = cross_blowdown_wall(&above_zero, &input.cycles, 2)?;
    let top = crossing.slice;
    if !check_volume_collapse(&top)? {
        return Err(Error::Inconsistency(
            "no volume collapse at the maximum".into(),
        ));
    }
    let b_max = -top.model.square(&top.euler)?;
    let euler_max = top.euler.clone();
    let model_max = top.model.clone();
    slices.push(top);

    Ok(EngineRun {
        model_min,
        model0,
        model_max,
        omega0,
        euler_min,
        euler_zero_minus,
        euler_zero_plus,
        euler_max,
        b_max,
        slices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2xs2() -> SurfaceModel {
        SurfaceModel::s2xs2()
    }

    #[test]
    fn extremal_euler_values() {
        let m = s2xs2();
        let e = extremal_euler(
            ExtremalData {
                b: 2,
                side: Side::Min,
            },
            &m,
        )
        .unwrap();
        assert_eq!(e.coeffs(), &[1, -1]);
        let e = extremal_euler(
            ExtremalData {
                b: 0,
                side: Side::Min,
            },
            &m,
        )
        .unwrap();
        assert_eq!(e.coeffs(), &[0, -1]);
        let h = SurfaceModel::hirzebruch();
        let e = extremal_euler(
            ExtremalData {
                b: -1,
                side: Side::Min,
            },
            &h,
        )
        .unwrap();
        assert_eq!(e.coeffs(), &[-1, -1]);
        let e = extremal_euler(
            ExtremalData {
                b: 1,
                side: Side::Max,
            },
            &h,
        )
        .unwrap();
        assert_eq!(e.coeffs(), &[0, 1]);
    }

    #[test]
    fn extremal_euler_parity_mismatch() {
        let m = s2xs2();
        assert!(matches!(
            extremal_euler(
                ExtremalData {
                    b: 1,
                    side: Side::Min
                },
                &m
            ),
            Err(Error::InconsistentExtremum { .. })
        ));
    }

    #[test]
    fn volume_collapse_examples() {
        // omega_t = (2-t)x + (2+t)y on S2xS2: collapses at both ends.
        let m = s2xs2();
        let euler = CohClass::new(vec![1, -1]);
        let slice = Slice::new(m.clone(), -2, 2, CohClass::new(vec![4, 0]), euler);
        assert!(check_volume_collapse(&slice).unwrap());
        assert!(check_volume_collapse_min(&slice).unwrap());

        // k = 0 variant omega_t = 2x + (2+t)y: no collapse at the top.
        let slice = Slice::new(
            m.clone(),
            -2,
            2,
            CohClass::new(vec![2, 0]),
            CohClass::new(vec![0, -1]),
        );
        assert!(!check_volume_collapse(&slice).unwrap());

        // omega constant zero: fails interior positivity.
        let slice = Slice::new(m, -2, 2, CohClass::zero(2), CohClass::zero(2));
        assert!(!check_volume_collapse(&slice).unwrap());
    }

    #[test]
    fn surface_wall_examples() {
        // euler -y, surfaces {x+y}: e+ = x (the connected case-II branch).
        let m = s2xs2();
        let slice = Slice::new(
            m.clone(),
            -2,
            0,
            CohClass::new(vec![2, 0]),
            CohClass::new(vec![0, -1]),
        );
        let z = vec![CohClass::new(vec![1, 1])];
        let up = cross_surface_wall(&slice, &z, 2).unwrap();
        assert_eq!(up.euler.coeffs(), &[1, 0]);
        assert_eq!(up.omega_lo, slice.omega_at(0).unwrap());

        // Empty surface list leaves the Euler class unchanged.
        let same = cross_surface_wall(&slice, &[], 2).unwrap();
        assert_eq!(same.euler, slice.euler);
    }

    #[test]
    fn blowup_wall_examples() {
        // m = 1 over ES2 with e- = -x-y.
        let h = SurfaceModel::hirzebruch();
        let slice = Slice::new(
            h.clone(),
            -2,
            -1,
            CohClass::new(vec![1, 0]), // omega(-2) = x for the II-2 shape
            CohClass::new(vec![-1, -1]),
        );
        let up = cross_blowup_wall(&slice, 1, 0).unwrap();
        assert_eq!(up.model.rank(), 3);
        assert_eq!(up.euler.coeffs(), &[-1, -1, 1]);

        // m = 0 is the identity.
        let same = cross_blowup_wall(&slice, 0, 0).unwrap();
        assert_eq!(same.euler, slice.euler);
        assert_eq!(same.model.rank(), 2);

        // m = 2: e+ = -x-y+E1+E2.
        let up = cross_blowup_wall(&slice, 2, 0).unwrap();
        assert_eq!(up.euler.coeffs(), &[-1, -1, 1, 1]);
    }

    #[test]
    fn blowdown_rejects_nonzero_area() {
        // On ES2#P2bar with omega = 2x+2y-E1 (area of E1 is 1), blowing
        // down E1 is not a wall.
        let m = SurfaceModel::hirzebruch().blow_up();
        let omega = CohClass::new(vec![2, 2, -1]);
        let slice = Slice::new(m.clone(), 0, 1, omega.clone(), CohClass::zero(3));
        let e1 = m.class_of(BasisLabel::E(1)).unwrap();
        // omega at hi=1 equals omega_lo - euler = omega: area(E1) = 1 != 0.
        assert!(matches!(
            cross_blowdown_wall(&slice, &[e1], 2),
            Err(Error::NotAWall(_))
        ));
    }

    #[test]
    fn blowdown_with_no_cycles_is_the_identity() {
        let m = SurfaceModel::hirzebruch();
        let slice = Slice::new(m.clone(), 0, 1, m.c1().clone(), CohClass::new(vec![0, -1]));
        let crossing = cross_blowdown_wall(&slice, &[], 2).unwrap();
        assert_eq!(crossing.slice.model, m);
        assert_eq!(crossing.slice.euler, slice.euler);
        assert_eq!(crossing.slice.omega_lo, slice.omega_at(1).unwrap());
    }

    #[test]
    fn blowdown_rejects_extra_vanishing_class() {
        // With omega_1 = 2x+2y on ES2#P2bar, blowing down E1 alone is
        // inconsistent: the class y also has zero area at the wall.
        let m = SurfaceModel::hirzebruch().blow_up();
        let omega1 = CohClass::new(vec![2, 2, 0]);
        let euler = m
            .class_from_pairs(&[(BasisLabel::X, 1), (BasisLabel::Y, 0)])
            .unwrap();
        let slice = Slice::new(m.clone(), 0, 1, omega1.checked_add(&euler).unwrap(), euler);
        let e1 = m.class_of(BasisLabel::E(1)).unwrap();
        assert_eq!(
            m.symplectic_area(&slice.omega_at(1).unwrap(), &e1).unwrap(),
            0
        );
        match cross_blowdown_wall(&slice, &[e1], 2) {
            Err(Error::BlowdownInconsistent(msg)) => assert!(msg.contains('y'), "{msg}"),
            other => panic!("expected a blow-down inconsistency, got {other:?}"),
        }
    }

    #[test]
    fn blowdown_rank_three_to_hirzebruch() {
        // Replay the interval [1, 2] of the one-point-blow-up branch with
        // b = 1: cycles {y} on ES2#P2bar.
        let m = SurfaceModel::hirzebruch().blow_up();
        let euler = CohClass::new(vec![0, -1, 1]); // -y + E1
        let omega0 = m.c1().clone(); // 3x+2y-E1
        let slice = Slice::new(m.clone(), 0, 1, omega0, euler);
        let y = m.class_of(BasisLabel::Y).unwrap();
        let crossing = cross_blowdown_wall(&slice, &[y], 2).unwrap();
        let top = crossing.slice;
        assert_eq!(top.model.base(), BaseSurface::Hirzebruch);
        assert_eq!(top.model.rank(), 2);
        assert_eq!(top.model.square(&top.euler).unwrap(), -1); // b_max = 1
        assert!(check_volume_collapse(&top).unwrap());
    }

    #[test]
    fn blowdown_x3_type_along_two_cycles() {
        // ES2#2P2bar, cycles {E1, y}: target is Hirzebruch-type of rank 2.
        let m = SurfaceModel::hirzebruch().blow_up_times(2);
        // Case IV-1-1.1 upper slice: e(P_0^+) = x - E1, omega_0 = c1.
        let euler = m
            .class_from_pairs(&[(BasisLabel::X, 1), (BasisLabel::E(1), -1)])
            .unwrap();
        let slice = Slice::new(m.clone(), 0, 1, m.c1().clone(), euler);
        let omega1 = slice.omega_at(1).unwrap();
        let e1 = m.class_of(BasisLabel::E(1)).unwrap();
        let y = m.class_of(BasisLabel::Y).unwrap();
        assert_eq!(m.symplectic_area(&omega1, &e1).unwrap(), 0);
        assert_eq!(m.symplectic_area(&omega1, &y).unwrap(), 0);
        let crossing = cross_blowdown_wall(&slice, &[e1, y], 2).unwrap();
        assert_eq!(crossing.slice.model.rank(), 2);
        assert_eq!(crossing.slice.model.base(), BaseSurface::Hirzebruch);
        // b_max = -1 on this branch.
        assert_eq!(
            crossing.slice.model.square(&crossing.slice.euler).unwrap(),
            1
        );
        // The recorded lifts realize the downstairs gram matrix upstairs.
        assert_eq!(m.square(&crossing.lift_x).unwrap(), 0);
        assert_eq!(m.square(&crossing.lift_y).unwrap(), -1);
        assert_eq!(m.pair(&crossing.lift_x, &crossing.lift_y).unwrap(), 1);
    }

    #[test]
    fn engine_case_i_shape() {
        let run = run_engine(&EngineInput {
            b_min: 2,
            m: 0,
            z0_parts: vec![],
            cycles: vec![],
        })
        .unwrap();
        assert_eq!(run.b_max, 2);
        assert_eq!(run.omega0.coeffs(), &[2, 2]);
        assert_eq!(run.euler_min.coeffs(), &[1, -1]);
        assert_eq!(run.slices.len(), 2);
    }

    #[test]
    fn engine_case_iii_triple_point() {
        // b = -1, m = 3: the X4-type reduced space at level zero.
        let run = run_engine(&EngineInput {
            b_min: -1,
            m: 3,
            z0_parts: vec![],
            cycles: {
                let m0 = SurfaceModel::hirzebruch().blow_up_times(3);
                vec![
                    m0.class_from_pairs(&[
                        (BasisLabel::X, 1),
                        (BasisLabel::Y, 1),
                        (BasisLabel::E(1), -1),
                        (BasisLabel::E(2), -1),
                    ])
                    .unwrap(),
                    m0.class_from_pairs(&[
                        (BasisLabel::X, 1),
                        (BasisLabel::Y, 1),
                        (BasisLabel::E(1), -1),
                        (BasisLabel::E(3), -1),
                    ])
                    .unwrap(),
                    m0.class_from_pairs(&[
                        (BasisLabel::X, 1),
                        (BasisLabel::Y, 1),
                        (BasisLabel::E(2), -1),
                        (BasisLabel::E(3), -1),
                    ])
                    .unwrap(),
                ]
            },
        })
        .unwrap();
        assert_eq!(run.model0.rank(), 5);
        assert_eq!(run.b_max, -1);
        assert_eq!(run.model_max.base(), BaseSurface::Hirzebruch);
    }
}
