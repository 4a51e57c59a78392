use std::sync::Arc;

use super::*;
use crate::coeff::ShiftedPoly;
use crate::rootdata::{build_root_system, parse_descriptor};

pub(crate) fn sph(s: &str) -> Spherical {
    let (k, n) = parse_descriptor(s).unwrap();
    Spherical::new(Arc::new(build_root_system(k, n).unwrap())).unwrap()
}

fn cw(c: &[i32]) -> Coweight {
    Coweight::new(c)
}

fn all_q(s: &Spherical, q: i64) -> Vec<Rational> {
    vec![Rational::from_int(q); s.vars().len()]
}

#[test]
fn satake_identity() {
    for (t, lams) in [
        ("A1", vec![cw(&[1]), cw(&[2])]),
        ("BC1", vec![cw(&[1]), cw(&[2])]),
        ("A2", vec![cw(&[1, 0]), cw(&[1, 1])]),
        ("C2", vec![cw(&[1, 0]), cw(&[0, 1])]),
        ("BC2", vec![cw(&[0, 1])]),
        ("G2", vec![cw(&[1, 0])]),
    ] {
        let s = sph(t);
        let h = s.hecke();
        let e0 = h.idempotent(0).unwrap().num;
        for lam in lams {
            let sat = h.satake_product(&lam).unwrap().num;
            let q = LaurentPoly::monomial(s.vars(), s.q_half(&lam), Rational::one());
            let lhs = sat.scale(&q);
            let p = s.ptilde(&lam).unwrap();
            let x = h.from_group_algebra(p.iter()).unwrap();
            let rhs = h.mul(&x, &e0).unwrap();
            assert!(lhs.sub(&rhs).is_zero(), "{} {}", t, lam);
        }
    }
}

#[test]
fn p_at_q_one_is_scaled_orbit_sum() {
    for (t, lam) in [("A2", cw(&[2, 1])), ("C2", cw(&[1, 1])), ("BC2", cw(&[1, 1])), ("G2", cw(&[0, 1]))] {
        let s = sph(t);
        let a = s.a_coeffs(&lam).unwrap();
        let stab = s.root_system().stabilizer_subgroup(&lam).unwrap().0.len() as i64;
        let order = s.root_system().weyl().unwrap().order() as i64;
        for (mu, c) in a {
            let v = c.eval_q(&all_q(&s, 1)).unwrap();
            let want = if mu == lam { Rational::new(stab, order) } else { Rational::zero() };
            assert_eq!(v, want, "{} {} {}", t, lam, mu);
        }
    }
}

#[test]
fn bc1_square_of_fundamental() {
    // λ₁ is a distance-two step in the tree: A₂² = A₄ + (q−1)A₂ + q(q+1)A₀.
    let s = sph("BC1");
    let l = cw(&[1]);
    let c = s.c_via_symmetric(&l, &l).unwrap();
    let at3 = |nu: i32| c.get(&cw(&[nu])).unwrap().eval_q(&all_q(&s, 3)).unwrap();
    assert_eq!(at3(0), Rational::new(1, 12));
    assert_eq!(at3(1), Rational::new(2, 12));
    assert_eq!(at3(2), Rational::new(3, 4));
}

#[test]
fn a1_pieri() {
    // P_1 P_k = q/(q+1) P_{k+1} + 1/(q+1) P_{k−1}.
    let s = sph("A1");
    let v = s.vars().clone();
    let q = LaurentPoly::q(&v, 0, 1);
    let one = LaurentPoly::one(&v);
    for k in 1..4 {
        let c = s.c_via_symmetric(&cw(&[1]), &cw(&[k])).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[&cw(&[k + 1])], Frac::new(q.clone(), &q + &one));
        assert_eq!(c[&cw(&[k - 1])], Frac::new(one.clone(), &q + &one));
    }
}

fn routes_agree(t: &str, pairs: &[(Coweight, Coweight)]) {
    let s = sph(t);
    for (lam, mu) in pairs {
        let sym = s.c_via_symmetric(lam, mu).unwrap();
        for nu in s.root_system().dominant_below(&lam.add(mu)) {
            let h = s.c_via_hecke(lam, mu, &nu).unwrap();
            let y = sym.get(&nu).cloned().unwrap_or_else(|| Frac::zero(s.vars()));
            assert_eq!(h, y, "{} c_{{{},{};{}}}", t, lam, mu, nu);
        }
    }
}

#[test]
fn routes_agree_rank_one() {
    routes_agree("A1", &[(cw(&[1]), cw(&[1])), (cw(&[2]), cw(&[1])), (cw(&[1]), cw(&[2]))]);
    routes_agree("BC1", &[(cw(&[1]), cw(&[1])), (cw(&[2]), cw(&[1]))]);
}

#[test]
fn routes_agree_rank_two() {
    routes_agree("A2", &[(cw(&[1, 0]), cw(&[1, 0])), (cw(&[1, 0]), cw(&[0, 1])), (cw(&[1, 1]), cw(&[1, 0]))]);
    routes_agree("C2", &[(cw(&[1, 0]), cw(&[1, 0])), (cw(&[0, 1]), cw(&[1, 0])), (cw(&[0, 1]), cw(&[0, 1]))]);
    routes_agree("BC2", &[(cw(&[1, 0]), cw(&[0, 1])), (cw(&[0, 1]), cw(&[0, 1]))]);
    routes_agree("G2", &[(cw(&[1, 0]), cw(&[1, 0]))]);
}

#[test]
fn literal_double_sum_matches_factorized_product() {
    for (t, lam, mu) in [
        ("A2", cw(&[1, 0]), cw(&[1, 0])),
        ("C2", cw(&[0, 1]), cw(&[1, 0])),
        ("BC1", cw(&[1]), cw(&[1])),
    ] {
        let s = sph(t);
        let aw = s.affine();
        let l = aw.w_lambda(&lam).unwrap().l;
        let wl_poly = aw.poincare_polynomial(&aw.parabolic(&aw.cotype(l)).unwrap(), ClassMode::Extended);
        for nu in s.root_system().dominant_below(&lam.add(&mu)) {
            let lit = s.hecke_double_sum(&lam, &mu, &nu).unwrap();
            let cp = s.c_prime_raw(&lam, &mu, &nu).unwrap();
            let want = &(&cp * &wl_poly) * &s.q_w_lambda(&nu).unwrap();
            assert_eq!(lit, want, "{} {} {} {}", t, lam, mu, nu);
        }
    }
}

#[test]
fn c_prime_positive() {
    for (t, lam, mu) in [
        ("A2", cw(&[1, 1]), cw(&[1, 1])),
        ("C2", cw(&[1, 1]), cw(&[0, 1])),
        ("BC2", cw(&[1, 0]), cw(&[1, 1])),
        ("G2", cw(&[1, 0]), cw(&[0, 1])),
    ] {
        let s = sph(t);
        for nu in s.root_system().dominant_below(&lam.add(&mu)) {
            let p: ShiftedPoly = s.c_prime(&lam, &mu, &nu).unwrap();
            assert!(p.assert_nonneg_integer_coeffs());
        }
    }
}

#[test]
fn n_lambda_counts_double_coset() {
    for (t, lam) in [("A2", cw(&[1, 1])), ("C2", cw(&[0, 1])), ("BC1", cw(&[2])), ("G2", cw(&[1, 0]))] {
        let s = sph(t);
        let aw = s.affine();
        let fin: Vec<usize> = (1..=aw.rank()).collect();
        let (set, _) = aw.double_coset(&fin, &aw.translation(&lam), &fin).unwrap();
        let total = aw.poincare_polynomial(&set, ClassMode::Extended);
        assert_eq!(total, &s.n_lambda(&lam).unwrap() * s.w0_poly(), "{} {}", t, lam);
    }
}

#[test]
fn generation_recomposes() {
    for (t, lam) in [("A2", cw(&[1, 1])), ("A2", cw(&[2, 0])), ("C2", cw(&[1, 1])), ("BC2", cw(&[0, 2]))] {
        let s = sph(t);
        let g = s.generation(&lam).unwrap();
        assert!(g.residual_zero, "{} {}", t, lam);
        assert!(g.coefficients.contains_key(&lam));
        assert!(g.coefficients.keys().all(|k| s.root_system().dominance_leq(k, &lam)));
    }
}
