//! Exceptional classes and basis changes between the `P^2`-blow-up and the
//! ruled coordinates.
//!
//! An exceptional class is a degree-2 class `E` with `E^2 = -1` and
//! `c1.E = 1`; these are the only candidates for vanishing cycles at
//! blow-down walls. On `X_k` (the `k`-point blow-up of `P^2`) with `k <= 8`
//! the list is finite and is enumerated here by bounded brute force, with
//! the coefficient bound coming from Cauchy-Schwarz against the definite
//! part of the lattice rather than from the classical list.

use crate::error::{Error, Result};
use crate::lattice::{BaseSurface, BasisLabel, CohClass, Int, SurfaceModel};

/// An isometry between two surface models, written as a matrix whose column
/// `j` holds the image of the `j`-th source basis vector in target
/// coordinates.
#[derive(Debug, Clone)]
pub struct BasisChange {
    source: SurfaceModel,
    target: SurfaceModel,
    columns: Vec<CohClass>,
}

impl BasisChange {
    pub fn new(source: SurfaceModel, target: SurfaceModel, columns: Vec<CohClass>) -> Result<Self> {
        let change = BasisChange {
            source,
            target,
            columns,
        };
        change.verify()?;
        Ok(change)
    }

    /// The identity change on a model.
    pub fn identity(model: &SurfaceModel) -> Self {
        let columns = (0..model.rank())
            .map(|i| CohClass::basis_vector(model.rank(), i))
            .collect();
        BasisChange {
            source: model.clone(),
            target: model.clone(),
            columns,
        }
    }

    pub fn source(&self) -> &SurfaceModel {
        &self.source
    }

    pub fn target(&self) -> &SurfaceModel {
        &self.target
    }

    pub fn columns(&self) -> &[CohClass] {
        &self.columns
    }

    /// Map a source class to target coordinates.
    pub fn apply(&self, z: &CohClass) -> Result<CohClass> {
        if z.rank() != self.source.rank() {
            return Err(Error::InvalidClass {
                expected: self.source.rank(),
                got: z.rank(),
            });
        }
        let mut out = CohClass::zero(self.target.rank());
        for (j, &c) in z.coeffs().iter().enumerate() {
            if c != 0 {
                out = out.checked_add(&self.columns[j].checked_scale(c)?)?;
            }
        }
        Ok(out)
    }

    /// Check the two defining properties mechanically: the map intertwines
    /// the Gram matrices and sends `c1` to `c1`.
    pub fn verify(&self) -> Result<()> {
        let n = self.source.rank();
        if self.columns.len() != n || self.target.rank() != n {
            return Err(Error::Inconsistency("basis change is not square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let src = self.source.gram()[i][j];
                let img = self.target.pair(&self.columns[i], &self.columns[j])?;
                if src != img {
                    return Err(Error::Inconsistency(format!(
                        "basis change does not intertwine pairings at ({i}, {j}): {src} vs {img}"
                    )));
                }
            }
        }
        let c1_img = self.apply(self.source.c1())?;
        if &c1_img != self.target.c1() {
            return Err(Error::Inconsistency(
                "basis change does not map c1 to c1".into(),
            ));
        }
        Ok(())
    }
}

/// All exceptional classes of `model`.
///
/// For a `P^2`-stack model this is the direct enumeration on `X_k`. For a
/// ruled model it enumerates on the isometric `X_{k+1}` and rewrites through
/// [`identify_ruled_basis`], which is how the case analyses consume it.
pub fn exceptional_classes(model: &SurfaceModel) -> Result<Vec<CohClass>> {
    match model.base() {
        BaseSurface::P2 => exceptional_classes_on_xk(model),
        BaseSurface::S2xS2 | BaseSurface::Hirzebruch => {
            let change = identify_ruled_basis(model)?;
            let mut out = Vec::new();
            for e in exceptional_classes_on_xk(change.source())? {
                out.push(change.apply(&e)?);
            }
            out.sort();
            Ok(out)
        }
    }
}

/// Exceptional classes of `X_k` in the `(u, E_1, ..., E_k)` basis.
///
/// A class `d*u + sum a_i E_i` is exceptional iff `d^2 - sum a_i^2 = -1`
/// and `3d + sum a_i = 1`. Cauchy-Schwarz gives `(1 - 3d)^2 <= k (d^2 + 1)`,
/// which for `k <= 8` confines `d` to `[-1, 7]`; the per-coordinate bound
/// `|a_i| <= 3` follows from `a_i^2 <= d^2 + 1 <= 50` refined by the search
/// itself (the recursion prunes on the exact residual square sum).
pub fn exceptional_classes_on_xk(model: &SurfaceModel) -> Result<Vec<CohClass>> {
    if model.base() != BaseSurface::P2 {
        return Err(Error::UnsupportedModel(format!(
            "exceptional enumeration needs a P2-stack model, got {}",
            model.name()
        )));
    }
    let k = model.blowups();
    if k > 8 {
        return Err(Error::UnsupportedRank(k));
    }
    let mut out = Vec::new();
    for d in -1..=7i64 {
        let square_budget = d * d + 1; // sum of a_i^2
        let linear_target = 1 - 3 * d; // sum of a_i
        let mut coeffs = vec![0i64; k];
        search_tail(k, 0, square_budget, linear_target, &mut coeffs, d, &mut out);
    }
    out.sort();
    debug_assert!(out
        .iter()
        .all(|e| { model.square(e).unwrap() == -1 && model.pair(model.c1(), e).unwrap() == 1 }));
    Ok(out)
}

fn search_tail(
    k: usize,
    i: usize,
    square_left: Int,
    linear_left: Int,
    coeffs: &mut Vec<Int>,
    d: Int,
    out: &mut Vec<CohClass>,
) {
    if i == k {
        if square_left == 0 && linear_left == 0 {
            let mut v = vec![d];
            v.extend_from_slice(coeffs);
            out.push(CohClass::new(v));
        }
        return;
    }
    // |linear_left| <= remaining * max|a| and linear_left^2 <= remaining * square_left
    let remaining = (k - i) as Int;
    if linear_left * linear_left > remaining * square_left {
        return;
    }
    for a in -3..=3 {
        if a * a > square_left {
            continue;
        }
        coeffs[i] = a;
        search_tail(
            k,
            i + 1,
            square_left - a * a,
            linear_left - a,
            coeffs,
            d,
            out,
        );
    }
    coeffs[i] = 0;
}

/// The seven families of the classical exceptional-class list on del Pezzo
/// surfaces, given as `(d, multiset of positive
/// multiplicities)`: a class `d*u - sum m_i E_i` with the `m_i` matching one
/// pattern (up to index permutation) is on the list.
const LEMMA_FAMILIES: &[(Int, &[Int])] = &[
    (0, &[-1]), // E_i itself: d = 0, single coefficient -1 on the E side
    (1, &[1, 1]),
    (2, &[1, 1, 1, 1, 1]),
    (3, &[2, 1, 1, 1, 1, 1, 1]),
    (4, &[2, 2, 2, 1, 1, 1, 1, 1]),
    (5, &[2, 2, 2, 2, 2, 2, 1, 1]),
    (6, &[3, 2, 2, 2, 2, 2, 2, 2]),
];

/// Whether an `X_k` class (in `(u, E_*)` coordinates) belongs to the
/// classical list modulo permutation of the exceptional indices.
pub fn is_on_classical_list(class: &CohClass) -> bool {
    let coeffs = class.coeffs();
    if coeffs.is_empty() {
        return false;
    }
    let d = coeffs[0];
    // multiplicities m_i with class = d*u - sum m_i E_i
    let mut ms: Vec<Int> = coeffs[1..]
        .iter()
        .filter(|&&a| a != 0)
        .map(|&a| -a)
        .collect();
    ms.sort_unstable_by(|p, q| q.cmp(p));
    if d == 0 {
        return ms == [-1];
    }
    LEMMA_FAMILIES.iter().any(|&(fd, pattern)| {
        let mut sorted = pattern.to_vec();
        sorted.sort_unstable_by(|p, q| q.cmp(p));
        fd == d && ms == sorted
    })
}

/// The identification of a ruled blow-up model with `X_{k+1}`.
///
/// Hirzebruch stack (`ES2 # k P2bar`): `u -> x + y`, `E_1 -> y`,
/// `E_{i+1} -> E_i`. `S^2 x S^2` stack (`(S^2 x S^2) # k P2bar`, `k >= 1`):
/// `u -> x + y - E_1`, `E_1 -> x - E_1`, `E_2 -> y - E_1`,
/// `E_{j+2} -> E_{j+1}`. Both are validated mechanically by the
/// gram- and c1-intertwining checks rather than trusted.
pub fn identify_ruled_basis(model: &SurfaceModel) -> Result<BasisChange> {
    let k = model.blowups();
    match model.base() {
        BaseSurface::P2 => Ok(BasisChange::identity(model)),
        BaseSurface::Hirzebruch => {
            let source = SurfaceModel::p2().blow_up_times(k + 1);
            let mut columns = Vec::with_capacity(k + 2);
            columns.push(model.class_from_pairs(&[(BasisLabel::X, 1), (BasisLabel::Y, 1)])?);
            columns.push(model.class_of(BasisLabel::Y).expect("ruled model has y"));
            for i in 1..=k {
                columns.push(
                    model
                        .class_of(BasisLabel::E(i as u8))
                        .expect("blow-up class present"),
                );
            }
            BasisChange::new(source, model.clone(), columns)
        }
        BaseSurface::S2xS2 => {
            if k == 0 {
                return Err(Error::UnsupportedModel(
                    "S2xS2 itself is not a blow-up of P2".into(),
                ));
            }
            let source = SurfaceModel::p2().blow_up_times(k + 1);
            let e1 = model
                .class_of(BasisLabel::E(1))
                .expect("blow-up class present");
            let x = model.class_of(BasisLabel::X).expect("ruled model has x");
            let y = model.class_of(BasisLabel::Y).expect("ruled model has y");
            let mut columns = Vec::with_capacity(k + 2);
            columns.push(x.checked_add(&y)?.checked_sub(&e1)?);
            columns.push(x.checked_sub(&e1)?);
            columns.push(y.checked_sub(&e1)?);
            for i in 2..=k {
                columns.push(
                    model
                        .class_of(BasisLabel::E(i as u8))
                        .expect("blow-up class present"),
                );
            }
            BasisChange::new(source, model.clone(), columns)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xk(k: usize) -> SurfaceModel {
        SurfaceModel::p2().blow_up_times(k)
    }

    #[test]
    fn counts_on_small_xk() {
        // 1, 3, 6, 10 for X_1 .. X_4 (and X_0 has none).
        assert_eq!(exceptional_classes_on_xk(&xk(0)).unwrap().len(), 0);
        assert_eq!(exceptional_classes_on_xk(&xk(1)).unwrap().len(), 1);
        assert_eq!(exceptional_classes_on_xk(&xk(2)).unwrap().len(), 3);
        assert_eq!(exceptional_classes_on_xk(&xk(3)).unwrap().len(), 6);
        assert_eq!(exceptional_classes_on_xk(&xk(4)).unwrap().len(), 10);
    }

    #[test]
    fn counts_on_large_xk() {
        // Classical del Pezzo counts.
        assert_eq!(exceptional_classes_on_xk(&xk(5)).unwrap().len(), 16);
        assert_eq!(exceptional_classes_on_xk(&xk(6)).unwrap().len(), 27);
        assert_eq!(exceptional_classes_on_xk(&xk(7)).unwrap().len(), 56);
        assert_eq!(exceptional_classes_on_xk(&xk(8)).unwrap().len(), 240);
    }

    #[test]
    fn rank_cap() {
        assert!(matches!(
            exceptional_classes_on_xk(&xk(9)),
            Err(Error::UnsupportedRank(9))
        ));
    }

    #[test]
    fn x2_explicit_list() {
        let m = xk(2);
        let got = exceptional_classes_on_xk(&m).unwrap();
        let expect = vec![
            CohClass::new(vec![0, 0, 1]),
            CohClass::new(vec![0, 1, 0]),
            CohClass::new(vec![1, -1, -1]),
        ];
        let mut expect = expect;
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn every_class_is_on_the_printed_list() {
        for k in 0..=8 {
            for e in exceptional_classes_on_xk(&xk(k)).unwrap() {
                assert!(
                    is_on_classical_list(&e),
                    "class {:?} not on the classical list",
                    e.coeffs()
                );
            }
        }
    }

    #[test]
    fn hirzebruch_identification_images() {
        // On ES2#P2bar (isometric to X_2) the three exceptional classes
        // rewrite to {y, E1, x-E1}.
        let m = SurfaceModel::hirzebruch().blow_up();
        let mut got = exceptional_classes(&m).unwrap();
        got.sort();
        let mut expect = vec![
            m.class_of(BasisLabel::Y).unwrap(),
            m.class_of(BasisLabel::E(1)).unwrap(),
            m.class_from_pairs(&[(BasisLabel::X, 1), (BasisLabel::E(1), -1)])
                .unwrap(),
        ];
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn s2xs2_identification_images() {
        // On (S2xS2)#P2bar the images are {E1, x-E1, y-E1}.
        let m = SurfaceModel::s2xs2().blow_up();
        let mut got = exceptional_classes(&m).unwrap();
        got.sort();
        let mut expect = vec![
            m.class_of(BasisLabel::E(1)).unwrap(),
            m.class_from_pairs(&[(BasisLabel::X, 1), (BasisLabel::E(1), -1)])
                .unwrap(),
            m.class_from_pairs(&[(BasisLabel::Y, 1), (BasisLabel::E(1), -1)])
                .unwrap(),
        ];
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn identity_change_is_identity() {
        let m = xk(2);
        let change = BasisChange::identity(&m);
        let c = CohClass::new(vec![2, -1, 1]);
        assert_eq!(change.apply(&c).unwrap(), c);
    }

    #[test]
    fn exceptional_defining_equations_hold_after_rewrite() {
        for m in [
            SurfaceModel::hirzebruch().blow_up_times(2),
            SurfaceModel::s2xs2().blow_up_times(2),
        ] {
            for e in exceptional_classes(&m).unwrap() {
                assert_eq!(m.square(&e).unwrap(), -1);
                assert_eq!(m.pair(m.c1(), &e).unwrap(), 1);
            }
        }
    }
}
