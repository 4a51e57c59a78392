use std::sync::Arc;

use super::*;
use crate::affweyl::AffineElement;
use crate::hecke::{HeckeAlgebra, Normalization};
use crate::rootdata::{build_root_system, parse_descriptor};

fn cw(c: &[i32]) -> Coweight {
    Coweight::new(c)
}

fn thin(s: &str, r: usize) -> (ThinBuilding, Spherical) {
    let (k, n) = parse_descriptor(s).unwrap();
    let rs = Arc::new(build_root_system(k, n).unwrap());
    let sph = Spherical::new(rs.clone()).unwrap();
    (ThinBuilding::new(Arc::new(AffineWeyl::new(rs).unwrap()), r), sph)
}

fn bc1() -> Spherical {
    Spherical::new(Arc::new(build_root_system(crate::rootdata::RootType::BC, 1).unwrap())).unwrap()
}

#[test]
fn tree_valencies() {
    let t = TreeBuilding::new(2, 2, 3).unwrap();
    assert_eq!(t.neighbors(0).len(), 3);
    for v in t.neighbors(0) {
        assert_eq!(t.neighbors(v).len(), 3);
    }
    let t = TreeBuilding::new(1, 1, 5).unwrap();
    assert_eq!(t.num_vertices(), 1 + 2 * 5);
}

#[test]
fn tree_distance_words() {
    let t = TreeBuilding::new(2, 3, 4).unwrap();
    let aw = t.affine();
    let a = t.base_chamber();
    assert_eq!(t.w_distance(a, a).unwrap(), aw.identity());
    // Edge 1 runs from the root (type 0) to a type-1 vertex.
    let (_, v1) = t.endpoints(a);
    let through_type1: Vec<u32> = t.neighbors(v1).into_iter().filter(|&w| w != 0).collect();
    let b = through_type1[0];
    assert_eq!(t.w_distance(a, b).unwrap(), aw.generator(0));
    let sibling = t.neighbors(0)[1];
    assert_eq!(t.w_distance(a, sibling).unwrap(), aw.generator(1));
    // Through v1, then through the far type-0 vertex.
    let c = t.neighbors(b).into_iter().find(|&w| t.depth(w) == 3).unwrap();
    assert_eq!(t.w_distance(a, c).unwrap(), aw.from_word(&[0, 1]));
    assert_eq!(t.w_distance(c, a).unwrap(), aw.from_word(&[1, 0]));
}

#[test]
fn tree_panels_have_q_elements() {
    let t = TreeBuilding::new(2, 3, 5).unwrap();
    let aw = t.affine_arc().clone();
    for a in t.chambers().filter(|&e| t.depth(e) < 5) {
        assert_eq!(t.sphere_size(&aw.generator(0), a).unwrap(), 2);
        assert_eq!(t.sphere_size(&aw.generator(1), a).unwrap(), 3);
    }
}

#[test]
fn tree_chamber_counts_match_hecke() {
    let t = TreeBuilding::new(3, 2, 7).unwrap();
    let aw = t.affine_arc().clone();
    let h = HeckeAlgebra::new(aw.clone(), ClassMode::W, Normalization::T);
    let q = parameter_vector(&aw, ClassMode::W, &t.parameters()).unwrap();
    let words: Vec<AffineElement> =
        [&[][..], &[0], &[1], &[0, 1], &[1, 0], &[0, 1, 0], &[1, 0, 1]].iter().map(|w| aw.from_word(w)).collect();
    let a = t.base_chamber();
    let cs: Vec<u32> = t.chambers().filter(|&e| t.depth(e) <= 4).collect();
    for w1 in &words {
        for w2 in &words {
            let prod = h.mul_basis(w1, w2).unwrap();
            for &c in &cs {
                let w3 = t.w_distance(a, c).unwrap();
                let d = prod.coeff(&w3).map(|x| x.eval_q(&q).unwrap()).unwrap_or_else(Rational::zero);
                let f = &(&aw.q_w(w1, ClassMode::W) * &aw.q_w(w2, ClassMode::W)).eval_q(&q).unwrap()
                    / &aw.q_w(&w3, ClassMode::W).eval_q(&q).unwrap();
                let n = t.chamber_count(w1, w2, a, c).unwrap();
                assert_eq!(Rational::from_int(n as i64), &f * &d, "{} {} {}", aw.format(w1), aw.format(w2), c);
            }
        }
    }
}

#[test]
fn tree_vertex_sets_match_n() {
    let sph = bc1();
    for (q0, q1) in [(1, 1), (2, 2), (2, 3), (3, 2)] {
        let t = TreeBuilding::new(q0, q1, 8).unwrap();
        for k in 0..=3 {
            let lam = cw(&[k]);
            let got = t.vertex_set(&0, &lam).unwrap().len() as i64;
            let want = if k == 0 { 1 } else { ((1 + q1) * q0) as i64 * ((q0 * q1) as i64).pow(k as u32 - 1) };
            assert_eq!(got, want);
            assert_eq!(Rational::from_int(got), n_value(&t, &sph, &lam).unwrap());
        }
    }
    // Homogeneous case at even distance 2k: (q+1)q^{2k-1}.
    let t = TreeBuilding::new(2, 2, 8).unwrap();
    assert_eq!(t.vertex_set(&0, &cw(&[2])).unwrap().len(), 3 * 8);
    assert!(matches!(t.vertex_set(&0, &cw(&[5])), Err(BuildingError::Margin(_))));
}

#[test]
fn tree_vertex_checks() {
    let sph = bc1();
    let t = TreeBuilding::new(2, 3, 6).unwrap();
    let r = vertex_checks(&t, &sph, 2).unwrap();
    assert!(r.violations.is_empty(), "{:?}", r.violations);
    assert!(r.pairs > 0);
    let r = strong_vertex_regularity(&t, &[cw(&[0]), cw(&[1])], 30, 7).unwrap();
    assert!(r.violations.is_empty(), "{:?}", r.violations);
}

#[test]
fn tree_empirical_constants_match_c() {
    let sph = bc1();
    let t = TreeBuilding::new(2, 3, 8).unwrap();
    let q = parameter_vector(t.affine(), ClassMode::Extended, &t.parameters()).unwrap();
    for (l, m) in [(1, 1), (1, 2), (2, 2)] {
        let (lam, mu) = (cw(&[l]), cw(&[m]));
        let c = sph.c_via_symmetric(&lam, &mu).unwrap();
        for k in 0..=(l + m) {
            let nu = cw(&[k]);
            let e = empirical_constant(&t, &sph, &lam, &mu, &nu, 8).unwrap();
            let want = c.get(&nu).map(|f| f.eval_q(&q).unwrap()).unwrap_or_else(Rational::zero);
            assert_eq!(e.value, want, "{} {} {}", lam, mu, nu);
        }
    }
}

/// Coefficients of W₀(t)/∏(1 − t^{e_i}) up to degree r.
fn growth_series(w0: &[i64], exps: &[usize], r: usize) -> Vec<i64> {
    let mut s = vec![0i64; r + 1];
    for (i, c) in w0.iter().enumerate().take(r + 1) {
        s[i] = *c;
    }
    for &e in exps {
        for k in e..=r {
            s[k] += s[k - e];
        }
    }
    s
}

#[test]
fn thin_growth_series() {
    let (b, _) = thin("A2", 5);
    let mut by_len = vec![0i64; 6];
    for a in b.chambers() {
        by_len[b.affine().length(&a)] += 1;
    }
    // W₀(t) = (1 + t)(1 + t + t²), exponents 1 and 2.
    assert_eq!(by_len, growth_series(&[1, 2, 2, 1], &[1, 2], 5));
    let (b, _) = thin("C2", 4);
    let mut by_len = vec![0i64; 5];
    for a in b.chambers() {
        by_len[b.affine().length(&a)] += 1;
    }
    // W₀(t) = (1 + t)(1 + t + t² + t³), exponents 1 and 3.
    assert_eq!(by_len, growth_series(&[1, 2, 2, 2, 1], &[1, 3], 4));
}

#[test]
fn thin_chamber_counts_are_d_at_one() {
    let (b, _) = thin("C2", 6);
    let aw = b.affine();
    let arc = Arc::new(AffineWeyl::new(aw.root_system_arc().clone()).unwrap());
    let h = HeckeAlgebra::new(arc, ClassMode::W, Normalization::T);
    let ones = vec![Rational::one(); aw.vars(ClassMode::W).len()];
    let small: Vec<AffineElement> = b.chambers().into_iter().filter(|a| aw.length(a) <= 2).collect();
    for w1 in &small {
        for w2 in &small {
            let prod = h.mul_basis(w1, w2).unwrap();
            for c in &small {
                let n = b.chamber_count(w1, w2, &aw.identity(), c).unwrap();
                let d = prod.coeff(c).map(|x| x.eval_q(&ones).unwrap()).unwrap_or_else(Rational::zero);
                assert_eq!(Rational::from_int(n as i64), d);
            }
        }
    }
}

#[test]
fn thin_vertex_sets() {
    let (b, sph) = thin("A2", 8);
    assert_eq!(b.vertex_set(&cw(&[0, 0]), &cw(&[1, 0])).unwrap().len(), 3);
    assert_eq!(b.vertex_set(&cw(&[0, 0]), &cw(&[0, 0])).unwrap(), vec![cw(&[0, 0])]);
    let r = vertex_checks(&b, &sph, 3).unwrap();
    assert!(r.violations.is_empty(), "{:?}", r.violations);
    assert!(r.pairs > 0);
    let (b, sph) = thin("C2", 8);
    let r = vertex_checks(&b, &sph, 3).unwrap();
    assert!(r.violations.is_empty(), "{:?}", r.violations);
}

#[test]
fn thin_empirical_constants_match_c() {
    let (b, sph) = thin("C2", 14);
    let ones = vec![Rational::one(); sph.vars().len()];
    for (lam, mu) in [(cw(&[1, 0]), cw(&[0, 1])), (cw(&[0, 1]), cw(&[0, 1]))] {
        let c = sph.c_via_symmetric(&lam, &mu).unwrap();
        for nu in b.root_system().dominant_below(&lam.add(&mu)) {
            let e = empirical_constant(&b, &sph, &lam, &mu, &nu, 4).unwrap();
            let want = c.get(&nu).map(|f| f.eval_q(&ones).unwrap()).unwrap_or_else(Rational::zero);
            assert_eq!(e.value, want, "{} {} {}", lam, mu, nu);
        }
    }
}
