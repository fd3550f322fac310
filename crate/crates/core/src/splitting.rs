//! Decompositions of a level-zero fixed class into connected embedded
//! symplectic components.
//!
//! Given the total dual class of the level-zero fixed set, every way of
//! writing it as a disjoint union of connected components must satisfy,
//! per part: positive integer area, the adjunction formula
//! `z^2 + 2 - 2g = <c1, z>` with genus `g >= 0`, and pairwise intersection
//! number zero between distinct parts. Enumeration is bounded: each part
//! has area at least 1, so there are at most `vol` parts, and part
//! coefficients are confined to a box around the total class.

use crate::error::{Error, Result};
use crate::lattice::{CohClass, Int, SurfaceModel};

/// One connected component of the level-zero fixed set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SplitPart {
    pub area: Int,
    pub class: CohClass,
    pub genus: Int,
}

/// A decomposition of the total level-zero class into components, stored in
/// canonical order (area, then coefficient vector).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Splitting {
    pub parts: Vec<SplitPart>,
}

impl Splitting {
    pub fn total(&self, rank: usize) -> Result<CohClass> {
        CohClass::sum(
            rank,
            &self
                .parts
                .iter()
                .map(|p| p.class.clone())
                .collect::<Vec<_>>(),
        )
    }

    pub fn is_all_spheres(&self) -> bool {
        self.parts.iter().all(|p| p.genus == 0)
    }
}

/// Genus forced on a part by adjunction, if it is a nonnegative integer:
/// `g = (z^2 - <c1, z> + 2) / 2`.
pub fn adjunction_genus(model: &SurfaceModel, z: &CohClass) -> Result<Option<Int>> {
    let self_int = model.square(z)?;
    let degree = model.pair(model.c1(), z)?;
    let twice_genus = self_int - degree + 2;
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Ok(None);
    }
    Ok(Some(twice_genus / 2))
}

/// All splittings of `total` into components, canonically ordered.
///
/// The coefficient box is `|z_i| <= |total_i| + 3` per coordinate; the slack
/// is validated empirically against the unpruned oracle on every
/// classification instance (see the test suite).
pub fn enumerate_splittings(
    model: &SurfaceModel,
    omega: &CohClass,
    total: &CohClass,
    vol: Int,
) -> Result<Vec<Splitting>> {
    if vol <= 0 {
        return Err(Error::EmptyInput(vol));
    }
    let declared = model.symplectic_area(omega, total)?;
    if declared != vol {
        return Err(Error::Inconsistency(format!(
            "total class has area {declared}, caller declared {vol}"
        )));
    }
    let candidates = part_candidates(model, omega, total, vol)?;
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    extend(
        model,
        total,
        vol,
        &candidates,
        0,
        &mut chosen,
        &mut CohClass::zero(model.rank()),
        0,
        &mut out,
    )?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// True iff no splitting exists, i.e. the branch is pruned by adjunction.
pub fn reject_if_no_splitting(
    model: &SurfaceModel,
    omega: &CohClass,
    total: &CohClass,
    vol: Int,
) -> Result<bool> {
    Ok(enumerate_splittings(model, omega, total, vol)?.is_empty())
}

fn part_candidates(
    model: &SurfaceModel,
    omega: &CohClass,
    total: &CohClass,
    vol: Int,
) -> Result<Vec<SplitPart>> {
    let rank = model.rank();
    let bounds: Vec<Int> = total.coeffs().iter().map(|c| c.abs() + 3).collect();
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; rank];
    enumerate_box(&bounds, 0, &mut coeffs, &mut |v| {
        let z = CohClass::new(v.to_vec());
        if z.is_zero() {
            return Ok(());
        }
        let area = model.symplectic_area(omega, &z)?;
        if area < 1 || area > vol {
            return Ok(());
        }
        if let Some(genus) = adjunction_genus(model, &z)? {
            out.push(SplitPart {
                area,
                class: z,
                genus,
            });
        }
        Ok(())
    })?;
    out.sort();
    Ok(out)
}

fn enumerate_box(
    bounds: &[Int],
    i: usize,
    coeffs: &mut Vec<Int>,
    visit: &mut impl FnMut(&[Int]) -> Result<()>,
) -> Result<()> {
    if i == bounds.len() {
        return visit(coeffs);
    }
    for v in -bounds[i]..=bounds[i] {
        coeffs[i] = v;
        enumerate_box(bounds, i + 1, coeffs, visit)?;
    }
    coeffs[i] = 0;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn extend(
    model: &SurfaceModel,
    total: &CohClass,
    vol: Int,
    candidates: &[SplitPart],
    min_index: usize,
    chosen: &mut Vec<usize>,
    partial_sum: &mut CohClass,
    partial_area: Int,
    out: &mut Vec<Splitting>,
) -> Result<()> {
    if partial_area == vol {
        if partial_sum == total {
            out.push(Splitting {
                parts: chosen.iter().map(|&i| candidates[i].clone()).collect(),
            });
        }
        return Ok(());
    }
    for i in min_index..candidates.len() {
        let cand = &candidates[i];
        if partial_area + cand.area > vol {
            continue;
        }
        // Disjointness: zero pairing with every part already chosen.
        let mut ok = true;
        for &j in chosen.iter() {
            if model.pair(&candidates[j].class, &cand.class)? != 0 {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        chosen.push(i);
        let mut next_sum = partial_sum.checked_add(&cand.class)?;
        extend(
            model,
            total,
            vol,
            candidates,
            i, // non-decreasing indices: repeated parts allowed, orderings not
            chosen,
            &mut next_sum,
            partial_area + cand.area,
            out,
        )?;
        chosen.pop();
    }
    Ok(())
}

/// Unpruned oracle: enumerate splittings by brute force over all integer
/// part vectors with coefficients in `[-4, 4]`, independent of the adaptive
/// coefficient box used by [`enumerate_splittings`]. Not used by the
/// classifier; it exists to validate the hot path on every classification
/// instance (volume at most 6, rank at most 4 there, but any input works).
pub fn enumerate_splittings_oracle(
    model: &SurfaceModel,
    omega: &CohClass,
    total: &CohClass,
    vol: Int,
) -> Result<Vec<Splitting>> {
    if vol <= 0 {
        return Err(Error::EmptyInput(vol));
    }
    let rank = model.rank();
    // Plain odometer over [-4, 4]^rank.
    let mut candidates: Vec<SplitPart> = Vec::new();
    let mut v = vec![-4i64; rank];
    loop {
        let z = CohClass::new(v.clone());
        if !z.is_zero() {
            let area = model.symplectic_area(omega, &z)?;
            if (1..=vol).contains(&area) {
                if let Some(genus) = adjunction_genus(model, &z)? {
                    candidates.push(SplitPart {
                        area,
                        class: z,
                        genus,
                    });
                }
            }
        }
        let mut i = 0;
        loop {
            if i == rank {
                break;
            }
            v[i] += 1;
            if v[i] <= 4 {
                break;
            }
            v[i] = -4;
            i += 1;
        }
        if i == rank {
            break;
        }
    }
    candidates.sort();

    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn search(
        model: &SurfaceModel,
        candidates: &[SplitPart],
        total: &CohClass,
        vol: Int,
        start: usize,
        area_so_far: Int,
        stack: &mut Vec<usize>,
        out: &mut Vec<Splitting>,
    ) -> Result<()> {
        if area_so_far == vol {
            let sum = CohClass::sum(
                total.rank(),
                &stack
                    .iter()
                    .map(|&i| candidates[i].class.clone())
                    .collect::<Vec<_>>(),
            )?;
            if &sum == total {
                out.push(Splitting {
                    parts: stack.iter().map(|&i| candidates[i].clone()).collect(),
                });
            }
            return Ok(());
        }
        for i in start..candidates.len() {
            if area_so_far + candidates[i].area > vol {
                continue;
            }
            if stack.iter().any(|&j| {
                model
                    .pair(&candidates[j].class, &candidates[i].class)
                    .unwrap_or(1)
                    != 0
            }) {
                continue;
            }
            stack.push(i);
            search(
                model,
                candidates,
                total,
                vol,
                i,
                area_so_far + candidates[i].area,
                stack,
                out,
            )?;
            stack.pop();
        }
        Ok(())
    }
    search(model, &candidates, total, vol, 0, 0, &mut stack, &mut out)?;
    out.sort();
    out.dedup();
    Ok(out)
}
