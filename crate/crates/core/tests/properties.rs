use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use tropgon::format::{read_tower_file, Meta, TowerFile};
use tropgon::graph::genus;
use tropgon::iso::towers_isomorphic;
use tropgon::jacprym::{prym, symmetric_basis};
use tropgon::linalg::{snf, IntMatrix};
use tropgon::metric::{ExtLength, MetricGraph};
use tropgon::morphism::dilation_data;
use tropgon::ngonal::{bigonal, trigonal, BigonalType};
use tropgon::random::{random_connected_cover, random_tower, TowerParams};

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c)
            .prop_map(move |xs| IntMatrix::from_fn(r, c, |i, j| BigInt::from(xs[i * c + j])))
    })
}

fn bigonal_params(size: usize) -> TowerParams {
    TowerParams {
        n: 2,
        tree_size: size,
        ..TowerParams::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn snf_is_a_valid_factorization(m in small_matrix()) {
        let s = snf(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.s.clone());
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        for k in 0..s.rank {
            prop_assert!(!s.s.get(k, k).is_zero());
            if k + 1 < s.rank {
                prop_assert!((s.s.get(k + 1, k + 1) % s.s.get(k, k)).is_zero());
            }
        }
        prop_assert_eq!(snf(&m.transpose()).invariants(), s.invariants());
    }

    #[test]
    fn symmetric_basis_verifies(seed in 0u64..10_000, nv in 2usize..6, extra in 1usize..4) {
        let c = random_connected_cover(seed, nv, extra, 0.3, 1000).unwrap();
        symmetric_basis(&c).unwrap().verify(&c).unwrap();
    }

    #[test]
    fn polarization_type_law(seed in 0u64..10_000, nv in 2usize..6, extra in 1usize..4, l in 1i64..7) {
        let c = random_connected_cover(seed, nv, extra, 0.35, 1000).unwrap();
        let lengths = (0..c.target().num_edges())
            .map(|e| ExtLength::integer(1 + (e as i64 * l) % 5))
            .collect();
        let m = MetricGraph::new(c.target().clone(), lengths).unwrap();
        let d = dilation_data(&c).unwrap();
        let p = prym(&c, &m).unwrap();
        let ones = p.polarization_type.iter().filter(|x| **x == BigInt::from(1)).count();
        let twos = p.polarization_type.iter().filter(|x| **x == BigInt::from(2)).count();
        prop_assert_eq!((ones as i64, twos as i64), (d.b, d.a));
        prop_assert_eq!(p.polarization_type.len(), ones + twos);
    }

    #[test]
    fn tower_files_round_trip(seed in 0u64..10_000, n in 2u64..5, size in 2usize..5) {
        let p = TowerParams { n, tree_size: size, generic: n != 4, ..TowerParams::default() };
        let r = random_tower(seed, &p).unwrap();
        let text = TowerFile::from_tower(&r.tower, &r.base, Meta::default()).to_json();
        prop_assert_eq!(TowerFile::parse(&text).unwrap().to_json(), text.clone());
        let back = read_tower_file(&text).unwrap();
        prop_assert_eq!(&back.base, &r.base);
        prop_assert!(towers_isomorphic(&back.tower().unwrap(), &r.tower).unwrap().is_some());
    }

    #[test]
    fn bigonal_is_an_involution(seed in 0u64..10_000, size in 2usize..5) {
        let r = random_tower(seed, &bigonal_params(size)).unwrap();
        let once = bigonal(&r.tower).unwrap();
        for (a, b) in once.input_types.iter().zip(&once.output_types) {
            let swapped = match a {
                BigonalType::II => BigonalType::III,
                BigonalType::III => BigonalType::II,
                other => *other,
            };
            prop_assert_eq!(*b, swapped);
        }
        let twice = bigonal(&once.tower).unwrap();
        prop_assert!(towers_isomorphic(&r.tower, &twice.tower).unwrap().is_some());
    }

    #[test]
    fn trigonal_genus_drops_by_one(seed in 0u64..10_000, size in 2usize..5) {
        let p = TowerParams { n: 3, tree_size: size, dilation: 0.0, ..TowerParams::default() };
        let r = random_tower(seed, &p).unwrap();
        let t = trigonal(&r.tower).unwrap();
        prop_assert!(t.map.source().is_connected());
        prop_assert_eq!(genus(t.map.source()).unwrap() + 1, genus(r.tower.middle()).unwrap());
    }
}
