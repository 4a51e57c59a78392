use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use super::{BuildingError, VertexScheme};
use crate::affweyl::{AffineElement, AffineWeyl};
use crate::rootdata::Coweight;

/// The Coxeter complex of W, truncated to chambers of length ≤ radius.
/// Chambers are elements of W; the base chamber is the identity.
pub struct ThinBuilding {
    aw: Arc<AffineWeyl>,
    radius: usize,
}

impl ThinBuilding {
    pub fn new(aw: Arc<AffineWeyl>, radius: usize) -> ThinBuilding {
        ThinBuilding { aw, radius }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn in_ball(&self, a: &AffineElement) -> bool {
        self.aw.in_w(a) && self.aw.length(a) <= self.radius
    }

    fn check(&self, a: &AffineElement) -> Result<(), BuildingError> {
        if self.in_ball(a) {
            Ok(())
        } else {
            Err(BuildingError::OutOfBall(self.aw.format(a)))
        }
    }

    /// All chambers of the ball, by breadth-first search from the base.
    pub fn chambers(&self) -> Vec<AffineElement> {
        let mut seen: HashSet<AffineElement> = HashSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        let id = self.aw.identity();
        seen.insert(id);
        queue.push_back((id, 0usize));
        while let Some((a, d)) = queue.pop_front() {
            order.push(a);
            if d == self.radius {
                continue;
            }
            for i in 0..=self.aw.rank() {
                let b = self.aw.compose(&a, &self.aw.generator(i));
                if self.aw.length(&b) == d + 1 && seen.insert(b) {
                    queue.push_back((b, d + 1));
                }
            }
        }
        order
    }

    pub fn w_distance(&self, a: &AffineElement, b: &AffineElement) -> Result<AffineElement, BuildingError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.aw.compose(&self.aw.inverse(a), b))
    }

    /// |C_{w₁}(a) ∩ C_{w₂⁻¹}(c)|; here C_w(a) = {aw}.
    pub fn chamber_count(
        &self,
        w1: &AffineElement,
        w2: &AffineElement,
        a: &AffineElement,
        c: &AffineElement,
    ) -> Result<u64, BuildingError> {
        self.check(a)?;
        self.check(c)?;
        let b = self.aw.compose(a, w1);
        if !self.in_ball(&b) {
            return Err(BuildingError::Margin(format!("{}·{} leaves the ball", self.aw.format(a), self.aw.format(w1))));
        }
        Ok(u64::from(self.w_distance(&b, c)? == *w2))
    }

    /// The type-i vertex a(λ_i) of chamber a, for a good type i.
    pub fn vertex_point(&self, a: &AffineElement, i: usize) -> Coweight {
        let n = self.aw.rank();
        let base = if i == 0 { Coweight::zero(n) } else { Coweight::fundamental(n, i) };
        self.aw.act(a, &base)
    }

    /// The chamber nearest the base among those containing the good vertex x.
    pub fn chamber_at(&self, x: &Coweight) -> Result<AffineElement, BuildingError> {
        let rs = self.aw.root_system();
        rs.check_rank(x)?;
        let i = rs.type_of(x);
        let a = self.aw.translation(&x.sub(&self.vertex_point(&self.aw.identity(), i)));
        Ok(self.aw.double_coset(&[], &a, &self.aw.cotype(i))?.1)
    }

    /// Minimal representatives of W_i σ_i(w_λ) W_j / W_j, with j the type of V_λ(x).
    fn key_reps(&self, i: usize, lam: &Coweight) -> Result<(usize, Vec<AffineElement>), BuildingError> {
        let aw = &self.aw;
        let wl = aw.w_lambda(lam)?;
        let j = aw.sigma(i)[wl.l];
        let (set, _) = aw.double_coset(&aw.cotype(i), &aw.sigma_apply(i, &wl.w), &aw.cotype(j))?;
        Ok((j, aw.min_right_reps(&set, &aw.cotype(j))))
    }
}

impl VertexScheme for ThinBuilding {
    type Vertex = Coweight;

    fn affine(&self) -> &AffineWeyl {
        &self.aw
    }

    fn parameters(&self) -> Vec<i64> {
        vec![1; self.aw.rank() + 1]
    }

    fn base_vertex(&self) -> Coweight {
        Coweight::zero(self.aw.rank())
    }

    fn relation(&self, x: &Coweight, y: &Coweight) -> Result<Coweight, BuildingError> {
        Ok(self.aw.root_system().dominant(&y.sub(x)))
    }

    fn vertex_set(&self, x: &Coweight, lam: &Coweight) -> Result<Vec<Coweight>, BuildingError> {
        let a = self.chamber_at(x)?;
        self.check(&a)?;
        let i = self.aw.root_system().type_of(x);
        let (j, reps) = self.key_reps(i, lam)?;
        let mut out = BTreeSet::new();
        for w in reps {
            let c = self.aw.compose(&a, &w);
            if !self.in_ball(&c) {
                return Err(BuildingError::Margin(format!("V_{}({}) needs chamber {}", lam, x, self.aw.format(&c))));
            }
            out.insert(self.vertex_point(&c, j));
        }
        Ok(out.into_iter().collect())
    }

    fn interior_vertices(&self, reach: usize) -> Vec<Coweight> {
        if reach > self.radius {
            return Vec::new();
        }
        let good = self.aw.root_system().good_types().to_vec();
        let mut out = BTreeSet::new();
        for a in self.chambers() {
            for &i in &good {
                let x = self.vertex_point(&a, i);
                if let Ok(c) = self.chamber_at(&x) {
                    if self.aw.length(&c) + reach <= self.radius {
                        out.insert(x);
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    fn reach(&self, lam: &Coweight) -> Result<usize, BuildingError> {
        let mut r = 0;
        for &i in self.aw.root_system().good_types() {
            for w in self.key_reps(i, lam)?.1 {
                r = r.max(self.aw.length(&w));
            }
        }
        Ok(r)
    }
}
