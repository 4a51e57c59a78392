use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use super::{BuildingError, VertexScheme};
use crate::affweyl::{AffineElement, AffineWeyl};
use crate::rootdata::{build_root_system, Coweight, RootType};

const MAX_VERTICES: usize = 5_000_000;

/// Ball of radius r around a type-0 root vertex in the tree where type-0
/// vertices have valency 1 + q₁ and type-1 vertices valency 1 + q₀.
///
/// Vertices are numbered breadth first; a chamber (edge) is named by its
/// endpoint farther from the root.
pub struct TreeBuilding {
    aw: Arc<AffineWeyl>,
    q0: u32,
    q1: u32,
    radius: u32,
    parent: Vec<u32>,
    depth: Vec<u32>,
    first_child: Vec<u32>,
    child_count: Vec<u32>,
}

impl TreeBuilding {
    pub fn new(q0: u32, q1: u32, radius: u32) -> Result<TreeBuilding, BuildingError> {
        if q0 == 0 || q1 == 0 {
            return Err(BuildingError::BadParams("q₀ and q₁ must be positive".into()));
        }
        if radius < 2 {
            return Err(BuildingError::BadParams("radius must be at least 2".into()));
        }
        let rs = build_root_system(RootType::BC, 1)?;
        let aw = Arc::new(AffineWeyl::new(Arc::new(rs))?);
        let mut t = TreeBuilding {
            aw,
            q0,
            q1,
            radius,
            parent: vec![0],
            depth: vec![0],
            first_child: Vec::new(),
            child_count: Vec::new(),
        };
        let mut v = 0;
        while v < t.parent.len() {
            let d = t.depth[v];
            let k = if d == radius {
                0
            } else if v == 0 {
                1 + q1
            } else if d.is_multiple_of(2) {
                q1
            } else {
                q0
            };
            t.first_child.push(t.parent.len() as u32);
            t.child_count.push(k);
            if t.parent.len() + k as usize > MAX_VERTICES {
                return Err(BuildingError::BadParams(format!("ball exceeds {} vertices", MAX_VERTICES)));
            }
            for _ in 0..k {
                t.parent.push(v as u32);
                t.depth.push(d + 1);
            }
            v += 1;
        }
        Ok(t)
    }

    pub fn affine_arc(&self) -> &Arc<AffineWeyl> {
        &self.aw
    }

    pub fn q(&self) -> (u32, u32) {
        (self.q0, self.q1)
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn num_vertices(&self) -> usize {
        self.parent.len()
    }

    pub fn vertex_type(&self, v: u32) -> u8 {
        (self.depth[v as usize] % 2) as u8
    }

    pub fn depth(&self, v: u32) -> u32 {
        self.depth[v as usize]
    }

    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        let mut out = Vec::new();
        if v != 0 {
            out.push(self.parent[v as usize]);
        }
        let f = self.first_child[v as usize];
        out.extend(f..f + self.child_count[v as usize]);
        out
    }

    pub fn chambers(&self) -> impl Iterator<Item = u32> {
        1..self.parent.len() as u32
    }

    pub fn base_chamber(&self) -> u32 {
        1
    }

    fn check_chamber(&self, e: u32) -> Result<(), BuildingError> {
        if e == 0 || e as usize >= self.parent.len() {
            return Err(BuildingError::OutOfBall(format!("edge {}", e)));
        }
        Ok(())
    }

    /// The two endpoints of an edge, type-0 vertex first.
    pub fn endpoints(&self, e: u32) -> (u32, u32) {
        let p = self.parent[e as usize];
        if self.vertex_type(e) == 0 {
            (e, p)
        } else {
            (p, e)
        }
    }

    /// Vertex path from u to v.
    pub fn path(&self, u: u32, v: u32) -> Vec<u32> {
        let (mut a, mut b) = (u, v);
        let mut left = vec![a];
        let mut right = vec![b];
        while self.depth[a as usize] > self.depth[b as usize] {
            a = self.parent[a as usize];
            left.push(a);
        }
        while self.depth[b as usize] > self.depth[a as usize] {
            b = self.parent[b as usize];
            right.push(b);
        }
        while a != b {
            a = self.parent[a as usize];
            b = self.parent[b as usize];
            left.push(a);
            right.push(b);
        }
        right.pop();
        left.extend(right.into_iter().rev());
        left
    }

    pub fn distance(&self, u: u32, v: u32) -> u32 {
        self.path(u, v).len() as u32 - 1
    }

    /// δ(a, b): read the types of the vertices shared along the unique
    /// minimal gallery. A shared type-0 vertex is an s₁ step.
    pub fn w_distance(&self, a: u32, b: u32) -> Result<AffineElement, BuildingError> {
        self.check_chamber(a)?;
        self.check_chamber(b)?;
        if a == b {
            return Ok(self.aw.identity());
        }
        let (a0, a1) = self.endpoints(a);
        let (b0, b1) = self.endpoints(b);
        let path = [(a0, b0), (a0, b1), (a1, b0), (a1, b1)]
            .into_iter()
            .map(|(x, y)| self.path(x, y))
            .min_by_key(|p| p.len())
            .unwrap();
        let word: Vec<u8> = path.iter().map(|&v| 1 - self.vertex_type(v)).collect();
        Ok(self.aw.from_word(&word))
    }

    /// Chambers at gallery distance ≤ k from a.
    pub fn chambers_within(&self, a: u32, k: usize) -> Vec<u32> {
        let mut seen: HashSet<u32> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(a);
        queue.push_back((a, 0));
        let mut out = Vec::new();
        while let Some((e, d)) = queue.pop_front() {
            out.push(e);
            if d == k {
                continue;
            }
            let (x, y) = (e, self.parent[e as usize]);
            for v in [x, y] {
                for w in self.neighbors(v) {
                    let f = if self.parent[w as usize] == v && w != 0 { w } else { v };
                    if f != 0 && seen.insert(f) {
                        queue.push_back((f, d + 1));
                    }
                }
            }
        }
        out
    }

    /// |C_{w₁}(a) ∩ C_{w₂⁻¹}(c)| by enumeration around a.
    pub fn chamber_count(&self, w1: &AffineElement, w2: &AffineElement, a: u32, c: u32) -> Result<u64, BuildingError> {
        self.check_chamber(a)?;
        self.check_chamber(c)?;
        let l = self.aw.length(w1);
        if self.depth[a as usize] as usize + l > self.radius as usize {
            return Err(BuildingError::Margin(format!("edge {} at depth {} with ℓ(w₁) = {}", a, self.depth[a as usize], l)));
        }
        let mut n = 0;
        for b in self.chambers_within(a, l) {
            if self.w_distance(a, b)? == *w1 && self.w_distance(b, c)? == *w2 {
                n += 1;
            }
        }
        Ok(n)
    }

    /// |C_w(a)|.
    pub fn sphere_size(&self, w: &AffineElement, a: u32) -> Result<u64, BuildingError> {
        let l = self.aw.length(w);
        if self.depth[a as usize] as usize + l > self.radius as usize {
            return Err(BuildingError::Margin(format!("edge {} with ℓ(w) = {}", a, l)));
        }
        let mut n = 0;
        for b in self.chambers_within(a, l) {
            if self.w_distance(a, b)? == *w {
                n += 1;
            }
        }
        Ok(n)
    }

    fn coord(&self, lam: &Coweight) -> Result<u32, BuildingError> {
        self.aw.root_system().check_rank(lam)?;
        let k = lam.get(0);
        if k < 0 {
            return Err(crate::rootdata::RootError::NotDominant(lam.to_string()).into());
        }
        Ok(k as u32)
    }
}

impl VertexScheme for TreeBuilding {
    type Vertex = u32;

    fn affine(&self) -> &AffineWeyl {
        &self.aw
    }

    fn parameters(&self) -> Vec<i64> {
        vec![self.q0 as i64, self.q1 as i64]
    }

    fn base_vertex(&self) -> u32 {
        0
    }

    fn relation(&self, x: &u32, y: &u32) -> Result<Coweight, BuildingError> {
        if self.vertex_type(*x) != 0 || self.vertex_type(*y) != 0 {
            return Err(BuildingError::BadParams("only type-0 vertices are good".into()));
        }
        Ok(Coweight::new(&[(self.distance(*x, *y) / 2) as i32]))
    }

    /// Type-0 vertices of the chambers b with δ(a, b) ∈ W₀ w_λ W₀, a ∋ x.
    fn vertex_set(&self, x: &u32, lam: &Coweight) -> Result<Vec<u32>, BuildingError> {
        let k = self.coord(lam)?;
        if self.vertex_type(*x) != 0 {
            return Err(BuildingError::BadParams(format!("vertex {} is not good", x)));
        }
        if self.depth[*x as usize] + 2 * k > self.radius {
            return Err(BuildingError::Margin(format!("V_{}({}) reaches depth {}", lam, x, self.depth[*x as usize] + 2 * k)));
        }
        let aw = &self.aw;
        let a = if *x == 0 { self.first_child[0] } else { *x };
        let wl = aw.w_lambda(lam)?;
        let (set, _) = aw.double_coset(&aw.cotype(0), &wl.w, &aw.cotype(0))?;
        let maxlen = set.iter().map(|w| aw.length(w)).max().unwrap_or(0);
        let set: HashSet<AffineElement> = set.into_iter().collect();
        let mut out = BTreeSet::new();
        for b in self.chambers_within(a, maxlen) {
            if set.contains(&self.w_distance(a, b)?) {
                out.insert(self.endpoints(b).0);
            }
        }
        Ok(out.into_iter().collect())
    }

    fn interior_vertices(&self, reach: usize) -> Vec<u32> {
        (0..self.parent.len() as u32)
            .filter(|&v| self.vertex_type(v) == 0 && self.depth[v as usize] as usize + reach <= self.radius as usize)
            .collect()
    }

    fn reach(&self, lam: &Coweight) -> Result<usize, BuildingError> {
        Ok(2 * self.coord(lam)? as usize)
    }
}
