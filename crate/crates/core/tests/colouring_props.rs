use std::collections::HashMap;

use chroma::{ColourLattice, IntVector};
use num_bigint::BigInt;
use proptest::prelude::*;

fn vector(xs: &[i64]) -> IntVector {
    IntVector::new(xs.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
}

fn point_and_lattice() -> impl Strategy<Value = (Vec<i64>, u64)> {
    (1usize..=6).prop_flat_map(|d| (proptest::collection::vec(-1000i64..=1000, d), 1u64..=20))
}

proptest! {
    #[test]
    fn translation_shifts_colour_by_one((m, n) in point_and_lattice()) {
        let lat = ColourLattice::new(m.len(), n).unwrap();
        let base = lat.colour_of(&vector(&m)).unwrap();
        for i in 0..m.len() {
            let mut shifted = m.clone();
            shifted[i] += 1;
            prop_assert_eq!(lat.colour_of(&vector(&shifted)).unwrap(), (base + 1) % n);
        }
    }

    #[test]
    fn classes_partition_the_lattice((m, n) in point_and_lattice()) {
        let lat = ColourLattice::new(m.len(), n).unwrap();
        let v = vector(&m);
        let hits = (0..n).filter(|&q| lat.in_sublattice(q, &v).unwrap()).count();
        prop_assert_eq!(hits, 1);
        prop_assert!(lat.colour_of(&v).unwrap() < n);
    }
}

/// Every point of `[−M, M]^d`, lexicographic.
fn box_points(dim: usize, half: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| (-half..=half).map(move |x| {
                let mut q = p.clone();
                q.push(x);
                q
            }))
            .collect();
    }
    out
}

#[test]
fn equal_fractions_on_divisible_boxes() {
    for (dim, n, half) in [(2usize, 3u64, 4i64), (2, 5, 2), (3, 3, 1), (3, 7, 3), (4, 3, 1), (2, 1, 3)] {
        assert_eq!((2 * half + 1) as u64 % n, 0);
        let lat = ColourLattice::new(dim, n).unwrap();
        let mut counts: HashMap<u64, usize> = HashMap::new();
        let points = box_points(dim, half);
        for p in &points {
            *counts.entry(lat.colour_of(&vector(p)).unwrap()).or_default() += 1;
        }
        assert_eq!(counts.len() as u64, n);
        let share = points.len() / n as usize;
        assert!(counts.values().all(|&c| c == share), "d={dim} n={n}: {counts:?}");
    }
}
