#![allow(dead_code)]

use seqcs::complexity::{cs_complexity_at, sequential_witness, WitnessCertificate};
use seqcs::phi::{phi_witness, PhiDescriptor};
use seqcs::{LinearSystem, Prime};

pub const GOLDEN: &[(&str, &str)] = &[
    ("phi_5_3_1", include_str!("../../../../data/phi_5_3_1.json")),
    ("phi_5_4_1", include_str!("../../../../data/phi_5_4_1.json")),
    ("phi_7_4_1", include_str!("../../../../data/phi_7_4_1.json")),
    ("phi_3_4_2", include_str!("../../../../data/phi_3_4_2.json")),
    ("phi_5_6_2", include_str!("../../../../data/phi_5_6_2.json")),
    ("six_points_p7", include_str!("../../../../data/six_points_p7.json")),
    ("no_three_collinear_p23", include_str!("../../../../data/no_three_collinear_p23.json")),
    ("corners_p5", include_str!("../../../../data/corners_p5.json")),
    ("square_p3", include_str!("../../../../data/square_p3.json")),
];

pub fn golden(name: &str) -> LinearSystem {
    let (_, text) = GOLDEN
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no golden system {name}"));
    LinearSystem::from_json(text).unwrap()
}

pub fn all_golden() -> Vec<(&'static str, LinearSystem)> {
    GOLDEN
        .iter()
        .map(|(n, t)| (*n, LinearSystem::from_json(t).unwrap()))
        .collect()
}

/// For every index with finite CS-complexity `s > 0`, the shortest witness of
/// length at most 3 at the smallest `k < s` that admits one. For `Φ_{k,M}`
/// files the construction's certificates of length 2 and 3 are added.
pub fn golden_witnesses(name: &str, sys: &LinearSystem) -> Vec<WitnessCertificate> {
    let mut out = Vec::new();
    if let Some(desc) = phi_descriptor(name) {
        let w = phi_witness(desc.p, desc.k, desc.m).unwrap();
        for len in 2..=w.sequence.len().min(3) {
            out.push(w.certificate(Some(len)).unwrap());
        }
    }
    for i in 0..sys.num_forms() {
        let Some(s) = cs_complexity_at(sys, i).unwrap().value() else {
            continue;
        };
        for k in 0..s {
            if let Some(w) = sequential_witness(sys, i, k, 3).unwrap() {
                out.push(w);
                break;
            }
        }
    }
    out
}

/// Parameters of a golden file named `phi_{p}_{k}_{M}`.
pub fn phi_descriptor(name: &str) -> Option<PhiDescriptor> {
    let rest = name.strip_prefix("phi_")?;
    let v: Vec<u64> = rest.split('_').map(|s| s.parse().unwrap()).collect();
    PhiDescriptor::new(Prime::new(v[0]).unwrap(), v[1] as usize, v[2] as usize).ok()
}
