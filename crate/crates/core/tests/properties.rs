//! Property tests for the lattice, splitting, and engine invariants.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tfd_core::classifier::classify_all;
use tfd_core::dh::quadratic_positive_on_open;
use tfd_core::exceptional::identify_ruled_basis;
use tfd_core::lattice::{check_unimodular_lorentzian, CohClass, Int, SurfaceModel};
use tfd_core::splitting::{adjunction_genus, enumerate_splittings};

fn arb_model() -> impl Strategy<Value = SurfaceModel> {
    (0usize..3, 0usize..=3).prop_map(|(base, blowups)| {
        let m = match base {
            0 => SurfaceModel::p2(),
            1 => SurfaceModel::s2xs2(),
            _ => SurfaceModel::hirzebruch(),
        };
        m.blow_up_times(blowups)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairing_is_symmetric_and_bilinear(model in arb_model(), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let rank = model.rank();
        let rand = |rng: &mut StdRng| {
            CohClass::new((0..rank).map(|_| rng.gen_range(-5i64..=5)).collect())
        };
        let a = rand(&mut rng);
        let b = rand(&mut rng);
        let c = rand(&mut rng);
        prop_assert_eq!(model.pair(&a, &b).unwrap(), model.pair(&b, &a).unwrap());
        let ab = a.checked_add(&b).unwrap();
        prop_assert_eq!(
            model.pair(&ab, &c).unwrap(),
            model.pair(&a, &c).unwrap() + model.pair(&b, &c).unwrap()
        );
    }

    #[test]
    fn blow_up_embeds_isometrically(model in arb_model(), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let rank = model.rank();
        let up = model.blow_up();
        let rand = |rng: &mut StdRng| {
            CohClass::new((0..rank).map(|_| rng.gen_range(-5i64..=5)).collect())
        };
        let a = rand(&mut rng);
        let b = rand(&mut rng);
        let la = model.lift_to(&a, &up).unwrap();
        let lb = model.lift_to(&b, &up).unwrap();
        prop_assert_eq!(model.pair(&a, &b).unwrap(), up.pair(&la, &lb).unwrap());
        prop_assert_eq!(up.pair(up.c1(), up.c1()).unwrap(),
                        model.pair(model.c1(), model.c1()).unwrap() - 1);
    }

    #[test]
    fn constructed_models_are_unimodular_lorentzian(model in arb_model()) {
        prop_assert!(check_unimodular_lorentzian(&model).is_ok());
    }

    #[test]
    fn quadratic_positivity_implies_sample_positivity(
        a in -6i64..=6, b in -12i64..=12, c in -24i64..=24,
        lo in -2i64..=0, width in 1i64..=4
    ) {
        let hi = lo + width;
        if quadratic_positive_on_open(a, b, c, lo, hi) {
            // Sample on eighths of the interval.
            for p in (8 * lo + 1)..(8 * hi) {
                // q(p/8) * 64 = a p^2 + 8 b p + 64 c
                prop_assert!(a * p * p + 8 * b * p + 64 * c > 0,
                    "q({p}/8) <= 0 though the exact test passed ({a}, {b}, {c}) on ({lo}, {hi})");
            }
        }
    }

    #[test]
    fn splitting_parts_satisfy_their_contracts(
        coeffs in proptest::collection::vec(-2i64..=2, 2),
    ) {
        let model = SurfaceModel::hirzebruch();
        let omega = model.c1().clone();
        let total = CohClass::new(coeffs);
        let vol = model.symplectic_area(&omega, &total).unwrap();
        if (1..=6).contains(&vol) {
            for s in enumerate_splittings(&model, &omega, &total, vol).unwrap() {
                let sum = s.total(model.rank()).unwrap();
                prop_assert_eq!(&sum, &total);
                let mut area_sum = 0;
                for p in &s.parts {
                    prop_assert!(p.genus >= 0);
                    prop_assert!(p.area >= 1);
                    prop_assert_eq!(adjunction_genus(&model, &p.class).unwrap(), Some(p.genus));
                    area_sum += p.area;
                }
                prop_assert_eq!(area_sum, vol);
            }
        }
    }
}

/// The ruled-basis identification preserves pairings on 1000 random pairs.
#[test]
fn basis_change_isometry_on_random_pairs() {
    let mut rng = StdRng::seed_from_u64(7);
    let models = [
        SurfaceModel::hirzebruch(),
        SurfaceModel::hirzebruch().blow_up(),
        SurfaceModel::hirzebruch().blow_up_times(2),
        SurfaceModel::hirzebruch().blow_up_times(3),
        SurfaceModel::s2xs2().blow_up(),
        SurfaceModel::s2xs2().blow_up_times(2),
    ];
    let mut pairs_checked = 0;
    while pairs_checked < 1000 {
        for model in &models {
            let change = identify_ruled_basis(model).unwrap();
            let rank = change.source().rank();
            let rand = |rng: &mut StdRng| {
                CohClass::new((0..rank).map(|_| rng.gen_range(-6i64..=6)).collect())
            };
            let a = rand(&mut rng);
            let b = rand(&mut rng);
            let lhs = change.source().pair(&a, &b).unwrap();
            let rhs = change
                .target()
                .pair(&change.apply(&a).unwrap(), &change.apply(&b).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
            pairs_checked += 1;
        }
    }
}

/// Running the engine on the reversed action produces the mirror slice
/// sequence: the reversed record's volume function is V(-t). Checked for
/// every wall-free record (reversal across interior walls changes basis
/// data that the closed-form reversal does not track; those profiles are
/// covered by the orientation normalization tests instead).
#[test]
fn reversed_action_mirrors_the_volume_function() {
    let classification = classify_all().unwrap();
    let volume_at = |run: &tfd_core::dh::EngineRun, p: Int| -> Int {
        // Value of 4 * <omega_t^2> at t = p/2.
        for s in &run.slices {
            if 2 * s.lo <= p && p <= 2 * s.hi {
                let (a, b, c) = s.volume_quadratic().unwrap();
                return a * p * p + 2 * b * p + 4 * c;
            }
        }
        panic!("level {p}/2 not covered by any slice");
    };
    let mut reversed_checked = 0;
    for r in classification.records.iter().filter(|r| r.profile.m == 0) {
        let forward = r.replay().unwrap();
        let reversed = tfd_core::classifier::reverse_record(r).unwrap();
        let backward = reversed.replay().unwrap();
        for p in -4..=4 {
            assert_eq!(
                volume_at(&backward, p),
                volume_at(&forward, -p),
                "{}: reversed volume at t = {p}/2 does not mirror the original",
                r.case_id
            );
        }
        reversed_checked += 1;
    }
    assert_eq!(
        reversed_checked, 6,
        "all case I and II records get reversed"
    );
}

/// Every slice in every record keeps positive reduced volume strictly
/// inside its interval, and the class at level 0 is c1.
#[test]
fn slice_sequences_are_positive_and_anchored() {
    let classification = classify_all().unwrap();
    for r in &classification.records {
        let run = r.replay().unwrap();
        for s in &run.slices {
            assert!(
                s.volume_positive_inside().unwrap(),
                "{}: slice [{}, {}]",
                r.case_id,
                s.lo,
                s.hi
            );
            if s.lo <= 0 && 0 <= s.hi && s.model.rank() == r.model0.rank() {
                assert_eq!(&s.omega_at(0).unwrap(), r.model0.c1(), "{}", r.case_id);
            }
        }
    }
}

/// Lattice lengths add under subdivision of a segment (sanity of the
/// edge-length routine used for symplectic areas).
#[test]
fn lattice_length_is_additive() {
    let length = |v: &[Int], w: &[Int]| -> Int {
        let mut g: Int = 0;
        for (a, b) in v.iter().zip(w) {
            g = gcd(g, (a - b).abs());
        }
        g
    };
    fn gcd(a: Int, b: Int) -> Int {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let v = [0, 0, 0];
    let w = [6, 0, 6];
    let mid = [3, 0, 3];
    assert_eq!(length(&v, &w), 6);
    assert_eq!(length(&v, &mid) + length(&mid, &w), 6);
}
