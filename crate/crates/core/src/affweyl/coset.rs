use std::collections::{HashSet, VecDeque};

use super::{longest_in, AffError, AffineElement, AffineWeyl};
use crate::rootdata::{Coweight, RootError};

/// Data attached to a dominant coweight λ with l = τ(λ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WLambda {
    pub l: usize,
    pub g_l: AffineElement,
    /// t′_λ = t_λ g_l⁻¹ ∈ W.
    pub t_prime: AffineElement,
    /// Minimal element of W₀ t′_λ W_l.
    pub w: AffineElement,
}

impl AffineWeyl {
    fn check_proper(&self, j: &[usize]) -> Result<(), AffError> {
        if let Some(&bad) = j.iter().find(|&&i| i > self.rank()) {
            return Err(AffError::BadGenerator(bad));
        }
        let mut s: Vec<usize> = j.to_vec();
        s.sort();
        s.dedup();
        if s.len() == self.rank() + 1 {
            return Err(AffError::InfiniteCoset(s));
        }
        Ok(())
    }

    /// I minus one index: the type set of W_i.
    pub fn cotype(&self, i: usize) -> Vec<usize> {
        (0..=self.rank()).filter(|&k| k != i).collect()
    }

    /// W_J w W_K, sorted by (length, element), plus its minimal element.
    pub fn double_coset(
        &self,
        left: &[usize],
        a: &AffineElement,
        right: &[usize],
    ) -> Result<(Vec<AffineElement>, AffineElement), AffError> {
        self.check_proper(left)?;
        self.check_proper(right)?;
        let mut seen: HashSet<AffineElement> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(*a);
        queue.push_back(*a);
        while let Some(x) = queue.pop_front() {
            for &j in left {
                let y = self.compose(&self.generator(j), &x);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
            for &k in right {
                let y = self.compose(&x, &self.generator(k));
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<(usize, AffineElement)> = seen.into_iter().map(|x| (self.length(&x), x)).collect();
        out.sort();
        let min = out[0].1;
        Ok((out.into_iter().map(|(_, x)| x).collect(), min))
    }

    /// The standard parabolic subgroup W_J.
    pub fn parabolic(&self, j: &[usize]) -> Result<Vec<AffineElement>, AffError> {
        Ok(self.double_coset(j, &self.identity(), &[])?.0)
    }

    /// Elements of `set` with no left descent in J.
    pub fn min_left_reps(&self, set: &[AffineElement], j: &[usize]) -> Vec<AffineElement> {
        set.iter().filter(|x| j.iter().all(|&i| !self.is_left_descent(x, i))).cloned().collect()
    }

    /// Elements of `set` with no right descent in K.
    pub fn min_right_reps(&self, set: &[AffineElement], k: &[usize]) -> Vec<AffineElement> {
        set.iter().filter(|x| k.iter().all(|&i| !self.is_right_descent(x, i))).cloned().collect()
    }

    pub fn w_lambda(&self, lam: &Coweight) -> Result<WLambda, AffError> {
        let rs = self.root_system();
        rs.check_rank(lam)?;
        if !lam.is_dominant() {
            return Err(RootError::NotDominant(lam.to_string()).into());
        }
        let w = self.weyl();
        let l = rs.type_of(lam);
        let g_l = self.g(l);
        let ginv = self.inverse(&g_l);
        let w0l = longest_in(w, &rs.stabilizer_subgroup(lam)?.0);
        let t = self.translation(lam);
        let t_prime = self.compose(&t, &ginv);
        let fin = self.finite(w.mul(w0l, w.longest()));
        let wl = self.compose(&self.compose(&t, &fin), &ginv);
        Ok(WLambda { l, g_l, t_prime, w: wl })
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::aw;
    use super::super::ClassMode;
    use super::*;

    #[test]
    fn bc1_double_coset() {
        let a = aw("BC1");
        let lam = Coweight::new(&[1]);
        let (set, min) = a.double_coset(&[1], &a.translation(&lam), &[1]).unwrap();
        assert_eq!(set.len(), 4);
        assert_eq!(min, a.generator(0));
        let wl = a.w_lambda(&lam).unwrap();
        assert_eq!(wl.w, a.generator(0));
        assert_eq!(a.q_w(&wl.w, ClassMode::Extended).to_string(), "q0");
    }

    #[test]
    fn infinite_coset_refused() {
        let a = aw("BC1");
        assert!(matches!(a.parabolic(&[0, 1]), Err(AffError::InfiniteCoset(_))));
    }

    #[test]
    fn w_lambda_is_unique_minimum() {
        let a = aw("C2");
        for lam in a.root_system().dominant_grid(3) {
            let wl = a.w_lambda(&lam).unwrap();
            let (set, min) = a.double_coset(&[1, 2], &wl.t_prime, &a.cotype(wl.l)).unwrap();
            assert_eq!(min, wl.w, "{}", lam);
            let lmin = a.length(&min);
            assert_eq!(set.iter().filter(|x| a.length(x) == lmin).count(), 1);
        }
    }

    #[test]
    fn a2_strictly_dominant_length_drop() {
        let a = aw("A2");
        let lam = Coweight::new(&[1, 2]);
        let wl = a.w_lambda(&lam).unwrap();
        assert_eq!(a.length(&wl.w), a.length(&a.translation(&lam)) - 3);
    }
}
