//! Irreducible root systems, reduced and of type BC.
//!
//! Roots are stored by their coordinates in the basis of simple roots and
//! coweights by their coordinates in the basis of fundamental coweights, so
//! the pairing of a coweight with a root is an integer dot product.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::coeff::Rational;

pub const MAX_RANK: usize = 8;

/// Largest finite Weyl group we enumerate eagerly.
pub const WEYL_LIMIT: u64 = 1152;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("unsupported root system {0}; supported: A1-A8, B3-B8, C2-C8, D4-D8, E6-E8, F4, G2, BC1-BC8")]
    Unsupported(String),
    #[error("Weyl group of {0} has order {1}, above the enumeration limit {WEYL_LIMIT}")]
    WeylTooLarge(String, u64),
    #[error("coweight {0} is not dominant")]
    NotDominant(String),
    #[error("rank mismatch: expected {0}, got {1}")]
    RankMismatch(usize, usize),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

/// Element of the coweight lattice P, in the basis of fundamental coweights.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coweight {
    rank: u8,
    c: [i32; MAX_RANK],
}

impl Coweight {
    pub fn zero(rank: usize) -> Coweight {
        Coweight { rank: rank as u8, c: [0; MAX_RANK] }
    }

    pub fn new(coords: &[i32]) -> Coweight {
        assert!(coords.len() <= MAX_RANK);
        let mut c = [0; MAX_RANK];
        c[..coords.len()].copy_from_slice(coords);
        Coweight { rank: coords.len() as u8, c }
    }

    /// The fundamental coweight λ_i (1-based, as in the literature).
    pub fn fundamental(rank: usize, i: usize) -> Coweight {
        let mut w = Coweight::zero(rank);
        w.c[i - 1] = 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn coords(&self) -> &[i32] {
        &self.c[..self.rank as usize]
    }

    pub fn get(&self, i: usize) -> i32 {
        self.c[i]
    }

    pub fn set(&mut self, i: usize, v: i32) {
        self.c[i] = v;
    }

    pub fn add(&self, o: &Coweight) -> Coweight {
        let mut r = *self;
        for i in 0..MAX_RANK {
            r.c[i] += o.c[i];
        }
        r
    }

    pub fn sub(&self, o: &Coweight) -> Coweight {
        let mut r = *self;
        for i in 0..MAX_RANK {
            r.c[i] -= o.c[i];
        }
        r
    }

    pub fn neg(&self) -> Coweight {
        let mut r = *self;
        for x in r.c.iter_mut() {
            *x = -*x;
        }
        r
    }

    pub fn scale(&self, k: i32) -> Coweight {
        let mut r = *self;
        for x in r.c.iter_mut() {
            *x *= k;
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| *x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.coords().iter().all(|x| *x >= 0)
    }

    /// Pairing with a root given in simple-root coordinates.
    pub fn pair(&self, root: &[i32; MAX_RANK]) -> i32 {
        let mut s = 0;
        for i in 0..self.rank as usize {
            s += self.c[i] * root[i];
        }
        s
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Coweight {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        if t.trim().is_empty() {
            return Err("empty coweight".into());
        }
        let v: Result<Vec<i32>, _> = t.split(',').map(|x| x.trim().parse::<i32>()).collect();
        let v = v.map_err(|_| format!("bad coweight '{}'", s))?;
        if v.len() > MAX_RANK {
            return Err("too many coordinates".into());
        }
        Ok(Coweight::new(&v))
    }
}

/// Finite Weyl group element: index into the enumerated group.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement(pub u32);

pub struct WeylElem {
    pub word: Vec<u8>,
    pub len: u16,
    /// Action on coweight coordinates, row-major `rank x rank`.
    pub mat: Vec<i32>,
    /// Permutation of the indexed root list.
    pub perm: Vec<u16>,
    pub inv: u32,
}

/// Enumerated finite Weyl group with multiplication tables.
pub struct WeylGroup {
    rank: usize,
    pub elems: Vec<WeylElem>,
    index: HashMap<Vec<i32>, u32>,
    left: Vec<Vec<u32>>,
    right: Vec<Vec<u32>>,
    /// table[u * order + v] = uv.
    table: Vec<u16>,
    longest: u32,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement(0)
    }

    pub fn longest(&self) -> WeylElement {
        WeylElement(self.longest)
    }

    pub fn elem(&self, w: WeylElement) -> &WeylElem {
        &self.elems[w.0 as usize]
    }

    pub fn len(&self, w: WeylElement) -> usize {
        self.elems[w.0 as usize].len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn all(&self) -> impl Iterator<Item = WeylElement> {
        (0..self.elems.len() as u32).map(WeylElement)
    }

    pub fn simple(&self, i: usize) -> WeylElement {
        WeylElement(self.left[i][0])
    }

    /// s_i · w (i is 0-based here).
    pub fn left_mul(&self, i: usize, w: WeylElement) -> WeylElement {
        WeylElement(self.left[i][w.0 as usize])
    }

    /// w · s_i (i is 0-based here).
    pub fn right_mul(&self, w: WeylElement, i: usize) -> WeylElement {
        WeylElement(self.right[i][w.0 as usize])
    }

    pub fn mul(&self, u: WeylElement, v: WeylElement) -> WeylElement {
        WeylElement(self.table[u.0 as usize * self.elems.len() + v.0 as usize] as u32)
    }

    pub fn inverse(&self, w: WeylElement) -> WeylElement {
        WeylElement(self.elems[w.0 as usize].inv)
    }

    pub fn act(&self, w: WeylElement, lam: &Coweight) -> Coweight {
        let m = &self.elems[w.0 as usize].mat;
        let n = self.rank;
        let mut out = Coweight::zero(n);
        for r in 0..n {
            let mut s = 0;
            for k in 0..n {
                s += m[r * n + k] * lam.c[k];
            }
            out.c[r] = s;
        }
        out
    }

    pub fn act_root(&self, w: WeylElement, root: usize) -> usize {
        self.elems[w.0 as usize].perm[root] as usize
    }

    /// Element sending the strictly dominant test vector to `image`.
    pub fn lookup(&self, image: &Coweight) -> Option<WeylElement> {
        self.index.get(image.coords()).map(|&i| WeylElement(i))
    }

    pub fn word(&self, w: WeylElement) -> &[u8] {
        &self.elems[w.0 as usize].word
    }

    pub fn from_word(&self, word: &[usize]) -> WeylElement {
        let mut r = WeylElement(0);
        for &i in word.iter().rev() {
            r = self.left_mul(i, r);
        }
        r
    }
}

pub struct RootSystem {
    pub kind: RootType,
    pub rank: usize,
    pub dim: usize,
    simple_ambient: Vec<Vec<Rational>>,
    gram: Vec<Vec<Rational>>,
    /// Roots in simple-root coordinates: positives sorted by height, then negatives in the same order.
    roots: Vec<[i32; MAX_RANK]>,
    root_index: HashMap<[i32; MAX_RANK], usize>,
    npos: usize,
    /// Coroots in fundamental-coweight coordinates.
    coroots: Vec<Coweight>,
    /// cartan[i][j] = <α_i^∨, α_j>.
    cartan: Vec<Vec<i32>>,
    coweights_ambient: Vec<Vec<Rational>>,
    highest: usize,
    marks: Vec<i32>,
    good_types: Vec<usize>,
    /// (2α ∈ R, α/2 ∈ R) for each root.
    divisibility: Vec<(bool, bool)>,
    /// Inverse of the matrix whose rows are the simple coroots of R^∨.
    dom_inv: Vec<Vec<Rational>>,
    weyl: OnceLock<Result<WeylGroup, RootError>>,
}

fn rat(n: i64) -> Rational {
    Rational::from_int(n)
}

fn half() -> Rational {
    Rational::new(1, 2)
}

fn unit_vec(dim: usize, entries: &[(usize, Rational)]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    for (i, x) in entries {
        v[*i] = x.clone();
    }
    v
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Gauss-Jordan inverse over the rationals.
fn invert(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { rat(1) } else { rat(0) }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular matrix");
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn simple_roots(kind: RootType, n: usize) -> Result<(usize, Vec<Vec<Rational>>), RootError> {
    let label = format!("{:?}{}", kind, n);
    let unsupported = || RootError::Unsupported(label.clone());
    if n == 0 || n > MAX_RANK {
        return Err(unsupported());
    }
    let e = |dim: usize, i: usize, j: usize| unit_vec(dim, &[(i, rat(1)), (j, rat(-1))]);
    let out = match kind {
        RootType::A => {
            let dim = n + 1;
            (dim, (0..n).map(|i| e(dim, i, i + 1)).collect())
        }
        RootType::B | RootType::BC => {
            if kind == RootType::B && n < 3 {
                return Err(unsupported());
            }
            let mut v: Vec<Vec<Rational>> = (0..n - 1).map(|i| e(n, i, i + 1)).collect();
            v.push(unit_vec(n, &[(n - 1, rat(1))]));
            (n, v)
        }
        RootType::C => {
            if n < 2 {
                return Err(unsupported());
            }
            let mut v: Vec<Vec<Rational>> = (0..n - 1).map(|i| e(n, i, i + 1)).collect();
            v.push(unit_vec(n, &[(n - 1, rat(2))]));
            (n, v)
        }
        RootType::D => {
            if n < 4 {
                return Err(unsupported());
            }
            let mut v: Vec<Vec<Rational>> = (0..n - 1).map(|i| e(n, i, i + 1)).collect();
            v.push(unit_vec(n, &[(n - 2, rat(1)), (n - 1, rat(1))]));
            (n, v)
        }
        RootType::G => {
            if n != 2 {
                return Err(unsupported());
            }
            (3, vec![e(3, 0, 1), unit_vec(3, &[(0, rat(-2)), (1, rat(1)), (2, rat(1))])])
        }
        RootType::F => {
            if n != 4 {
                return Err(unsupported());
            }
            let h = half();
            (
                4,
                vec![
                    e(4, 1, 2),
                    e(4, 2, 3),
                    unit_vec(4, &[(3, rat(1))]),
                    unit_vec(4, &[(0, h.clone()), (1, -&h), (2, -&h), (3, -&h)]),
                ],
            )
        }
        RootType::E => {
            if !(6..=8).contains(&n) {
                return Err(unsupported());
            }
            let h = half();
            let mut a1 = vec![-&h; 8];
            a1[0] = h.clone();
            a1[7] = h.clone();
            let mut v = vec![a1, unit_vec(8, &[(0, rat(1)), (1, rat(1))]), e(8, 1, 0)];
            for i in 2..7 {
                v.push(e(8, i, i - 1));
            }
            v.truncate(n);
            (8, v)
        }
    };
    Ok(out)
}

pub fn weyl_order(kind: RootType, n: usize) -> u64 {
    let fact = |k: usize| (1..=k as u64).product::<u64>();
    match kind {
        RootType::A => fact(n + 1),
        RootType::B | RootType::C | RootType::BC => (1u64 << n) * fact(n),
        RootType::D => (1u64 << (n - 1)) * fact(n),
        RootType::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        RootType::F => 1152,
        RootType::G => 12,
    }
}

impl RootSystem {
    pub fn new(kind: RootType, rank: usize) -> Result<RootSystem, RootError> {
        let (dim, simple) = simple_roots(kind, rank)?;
        let n = rank;
        let gram: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| dot(&simple[i], &simple[j])).collect()).collect();
        let cartan: Vec<Vec<i32>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = rat(2) * &gram[i][j] / &gram[i][i];
                        v.to_i64().expect("integral Cartan entry") as i32
                    })
                    .collect()
            })
            .collect();

        // Close the simple roots (plus 2α_n for BC) under simple reflections.
        let mut seeds: Vec<[i32; MAX_RANK]> = (0..n)
            .map(|i| {
                let mut r = [0; MAX_RANK];
                r[i] = 1;
                r
            })
            .collect();
        if kind == RootType::BC {
            let mut r = [0; MAX_RANK];
            r[n - 1] = 2;
            seeds.push(r);
        }
        let reflect = |b: &[i32; MAX_RANK], i: usize| {
            let mut p = 0;
            for (j, bj) in b.iter().enumerate().take(n) {
                p += bj * cartan[i][j];
            }
            let mut r = *b;
            r[i] -= p;
            r
        };
        let mut seen: HashMap<[i32; MAX_RANK], ()> = HashMap::new();
        let mut queue: VecDeque<[i32; MAX_RANK]> = VecDeque::new();
        for s in seeds {
            if seen.insert(s, ()).is_none() {
                queue.push_back(s);
            }
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..n {
                let r = reflect(&b, i);
                if seen.insert(r, ()).is_none() {
                    queue.push_back(r);
                }
            }
        }
        let mut pos: Vec<[i32; MAX_RANK]> = seen.keys().filter(|r| r.iter().all(|x| *x >= 0)).cloned().collect();
        pos.sort_by_key(|r| (r.iter().sum::<i32>(), r.map(|x| -x)));
        let npos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.map(|x| -x)));
        assert_eq!(roots.len(), seen.len(), "every root is positive or negative");
        let root_index: HashMap<[i32; MAX_RANK], usize> = roots.iter().enumerate().map(|(i, r)| (*r, i)).collect();

        let coroots: Vec<Coweight> = roots
            .iter()
            .map(|r| {
                let mut norm = rat(0);
                let mut pairs = vec![rat(0); n];
                for k in 0..n {
                    for (j, p) in pairs.iter_mut().enumerate() {
                        *p = &*p + &(rat(r[k] as i64) * &gram[k][j]);
                    }
                }
                for (k, p) in pairs.iter().enumerate() {
                    norm = norm + rat(r[k] as i64) * p;
                }
                let mut c = Coweight::zero(n);
                for (j, p) in pairs.iter().enumerate() {
                    c.c[j] = (rat(2) * p / &norm).to_i64().expect("integral coroot") as i32;
                }
                c
            })
            .collect();

        let ginv = invert(&gram);
        let coweights_ambient: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut v = vec![rat(0); dim];
                for (k, g) in ginv[i].iter().enumerate() {
                    for (d, x) in v.iter_mut().enumerate() {
                        *x = &*x + &(g * &simple[k][d]);
                    }
                }
                v
            })
            .collect();

        let highest = (0..npos).max_by_key(|&i| roots[i].iter().sum::<i32>()).unwrap();
        let mut marks = vec![1];
        marks.extend(roots[highest][..n].iter().cloned());
        let good_types: Vec<usize> = (0..=n).filter(|&i| marks[i] == 1).collect();

        let divisibility: Vec<(bool, bool)> = roots
            .iter()
            .map(|r| {
                let double = root_index.contains_key(&r.map(|x| 2 * x));
                let halvable = r.iter().all(|x| x % 2 == 0) && root_index.contains_key(&r.map(|x| x / 2));
                (double, halvable)
            })
            .collect();

        // Simple coroots of R^∨: from the base of R_1 = {α : 2α ∉ R}.
        let dom_rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut r = [0; MAX_RANK];
                r[i] = 1;
                let idx = root_index[&r];
                let b = if divisibility[idx].0 { root_index[&r.map(|x| 2 * x)] } else { idx };
                coroots[b].coords().iter().map(|&x| rat(x as i64)).collect()
            })
            .collect();
        // μ = Σ c_i β_i^∨ means μ = B^T c.
        let bt: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| dom_rows[j][i].clone()).collect()).collect();
        let dom_inv = invert(&bt);

        Ok(RootSystem {
            kind,
            rank: n,
            dim,
            simple_ambient: simple,
            gram,
            roots,
            root_index,
            npos,
            coroots,
            cartan,
            coweights_ambient,
            highest,
            marks,
            good_types,
            divisibility,
            dom_inv,
            weyl: OnceLock::new(),
        })
    }

    pub fn label(&self) -> String {
        format!("{:?}{}", self.kind, self.rank)
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn root(&self, i: usize) -> &[i32; MAX_RANK] {
        &self.roots[i]
    }

    pub fn roots(&self) -> &[[i32; MAX_RANK]] {
        &self.roots
    }

    pub fn root_index(&self, r: &[i32; MAX_RANK]) -> Option<usize> {
        self.root_index.get(r).copied()
    }

    pub fn neg_root(&self, i: usize) -> usize {
        (i + self.npos) % (2 * self.npos)
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.npos
    }

    pub fn simple_root_index(&self, i: usize) -> usize {
        let mut r = [0; MAX_RANK];
        r[i] = 1;
        self.root_index[&r]
    }

    pub fn coroot(&self, i: usize) -> &Coweight {
        &self.coroots[i]
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn highest_root(&self) -> usize {
        self.highest
    }

    /// m_0 = 1, m_i = coefficient of α_i in the highest root.
    pub fn marks(&self) -> &[i32] {
        &self.marks
    }

    pub fn good_types(&self) -> &[usize] {
        &self.good_types
    }

    pub fn height(&self, i: usize) -> i32 {
        self.roots[i].iter().sum()
    }

    /// 2α ∈ R.
    pub fn has_double(&self, i: usize) -> bool {
        self.divisibility[i].0
    }

    /// α/2 ∈ R.
    pub fn has_half(&self, i: usize) -> bool {
        self.divisibility[i].1
    }

    pub fn in_r1(&self, i: usize) -> bool {
        !self.has_double(i)
    }

    pub fn in_r2(&self, i: usize) -> bool {
        !self.has_half(i)
    }

    pub fn in_r3(&self, i: usize) -> bool {
        self.in_r1(i) && self.in_r2(i)
    }

    pub fn is_reduced(&self) -> bool {
        self.kind != RootType::BC
    }

    pub fn simple_ambient(&self) -> &[Vec<Rational>] {
        &self.simple_ambient
    }

    pub fn root_ambient(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![rat(0); self.dim];
        for k in 0..self.rank {
            let c = rat(self.roots[i][k] as i64);
            for (d, x) in v.iter_mut().enumerate() {
                *x = &*x + &(&c * &self.simple_ambient[k][d]);
            }
        }
        v
    }

    pub fn coweight_ambient(&self, lam: &Coweight) -> Vec<Rational> {
        let mut v = vec![rat(0); self.dim];
        for k in 0..self.rank {
            let c = rat(lam.c[k] as i64);
            for (d, x) in v.iter_mut().enumerate() {
                *x = &*x + &(&c * &self.coweights_ambient[k][d]);
            }
        }
        v
    }

    pub fn check_rank(&self, lam: &Coweight) -> Result<(), RootError> {
        if lam.rank() == self.rank {
            Ok(())
        } else {
            Err(RootError::RankMismatch(self.rank, lam.rank()))
        }
    }

    /// s_α(λ) = λ − <λ,α> α^∨.
    pub fn reflect_coweight(&self, lam: &Coweight, root: usize) -> Coweight {
        let p = lam.pair(&self.roots[root]);
        lam.sub(&self.coroots[root].scale(p))
    }

    pub fn reflect_simple(&self, lam: &Coweight, i: usize) -> Coweight {
        let p = lam.c[i];
        let mut out = *lam;
        for j in 0..self.rank {
            out.c[j] -= p * self.cartan[i][j];
        }
        out
    }

    /// Coordinates of μ in the basis of simple coroots of R^∨.
    pub fn coroot_coords(&self, mu: &Coweight) -> Vec<Rational> {
        self.dom_inv
            .iter()
            .map(|row| row.iter().enumerate().fold(rat(0), |acc, (k, x)| acc + x * &rat(mu.c[k] as i64)))
            .collect()
    }

    /// μ ∈ Q, the coroot lattice.
    pub fn in_coroot_lattice(&self, mu: &Coweight) -> bool {
        self.coroot_coords(mu).iter().all(|c| c.is_integer())
    }

    /// μ ⪯ λ: λ − μ is a nonnegative integer combination of simple coroots.
    pub fn dominance_leq(&self, mu: &Coweight, lam: &Coweight) -> bool {
        self.coroot_coords(&lam.sub(mu)).iter().all(|c| c.is_integer() && !c.is_negative())
    }

    /// The good type τ(λ) of a point of P: the k ∈ I_P with λ − λ_k ∈ Q.
    pub fn type_of(&self, lam: &Coweight) -> usize {
        for &k in &self.good_types {
            let base = if k == 0 { Coweight::zero(self.rank) } else { Coweight::fundamental(self.rank, k) };
            if self.in_coroot_lattice(&lam.sub(&base)) {
                return k;
            }
        }
        unreachable!("P/Q is represented by the good fundamental coweights")
    }

    /// Dominant element of the W₀-orbit of μ and a word (0-based letters,
    /// applied right to left) of minimal length carrying μ to it.
    pub fn dominant_rep_word(&self, mu: &Coweight) -> (Coweight, Vec<u8>) {
        let mut cur = *mu;
        let mut applied: Vec<u8> = Vec::new();
        while let Some(i) = (0..self.rank).find(|&i| cur.c[i] < 0) {
            cur = self.reflect_simple(&cur, i);
            applied.push(i as u8);
        }
        applied.reverse();
        (cur, applied)
    }

    pub fn dominant_rep(&self, mu: &Coweight) -> Result<(Coweight, WeylElement), RootError> {
        let (lam, word) = self.dominant_rep_word(mu);
        let w = self.weyl()?;
        let word: Vec<usize> = word.iter().map(|&i| i as usize).collect();
        Ok((lam, w.from_word(&word)))
    }

    pub fn dominant(&self, mu: &Coweight) -> Coweight {
        self.dominant_rep_word(mu).0
    }

    pub fn longest_act(&self, lam: &Coweight) -> Coweight {
        // w₀ sends the dominant chamber to its negative.
        self.dominant(&lam.neg()).neg()
    }

    /// λ* = w₀(−λ).
    pub fn star(&self, lam: &Coweight) -> Result<Coweight, RootError> {
        if !lam.is_dominant() {
            return Err(RootError::NotDominant(lam.to_string()));
        }
        Ok(self.dominant(&lam.neg()))
    }

    pub fn weyl(&self) -> Result<&WeylGroup, RootError> {
        self.weyl
            .get_or_init(|| {
                let order = weyl_order(self.kind, self.rank);
                if order > WEYL_LIMIT {
                    Err(RootError::WeylTooLarge(self.label(), order))
                } else {
                    Ok(self.enumerate_weyl())
                }
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    fn enumerate_weyl(&self) -> WeylGroup {
        let n = self.rank;
        let nroots = self.roots.len();
        let rho = Coweight::new(&vec![1; n]);
        let gen_mat: Vec<Vec<i32>> = (0..n)
            .map(|i| {
                let mut m = vec![0; n * n];
                for j in 0..n {
                    for k in 0..n {
                        let id = if j == k { 1 } else { 0 };
                        m[j * n + k] = id - if i == k { self.cartan[i][j] } else { 0 };
                    }
                }
                m
            })
            .collect();
        let gen_perm: Vec<Vec<u16>> = (0..n)
            .map(|i| {
                (0..nroots)
                    .map(|b| {
                        let r = &self.roots[b];
                        let mut p = 0;
                        for (j, rj) in r.iter().enumerate().take(n) {
                            p += rj * self.cartan[i][j];
                        }
                        let mut img = *r;
                        img[i] -= p;
                        self.root_index[&img] as u16
                    })
                    .collect()
            })
            .collect();
        let matmul = |a: &[i32], b: &[i32]| {
            let mut c = vec![0; n * n];
            for r in 0..n {
                for k in 0..n {
                    let x = a[r * n + k];
                    if x != 0 {
                        for col in 0..n {
                            c[r * n + col] += x * b[k * n + col];
                        }
                    }
                }
            }
            c
        };
        let apply = |m: &[i32], v: &Coweight| {
            let mut out = Coweight::zero(n);
            for r in 0..n {
                out.c[r] = (0..n).map(|k| m[r * n + k] * v.c[k]).sum();
            }
            out
        };
        let mut id = vec![0; n * n];
        for i in 0..n {
            id[i * n + i] = 1;
        }
        let mut elems = vec![WeylElem { word: vec![], len: 0, mat: id, perm: (0..nroots as u16).collect(), inv: 0 }];
        let mut index: HashMap<Vec<i32>, u32> = HashMap::new();
        index.insert(rho.coords().to_vec(), 0);
        let mut left: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut head = 0;
        while head < elems.len() {
            for i in 0..n {
                let mat = matmul(&gen_mat[i], &elems[head].mat);
                let key = apply(&mat, &rho).coords().to_vec();
                let idx = match index.get(&key) {
                    Some(&k) => k,
                    None => {
                        let k = elems.len() as u32;
                        let mut word = vec![i as u8];
                        word.extend_from_slice(&elems[head].word);
                        let perm = elems[head].perm.iter().map(|&b| gen_perm[i][b as usize]).collect();
                        let len = elems[head].len + 1;
                        elems.push(WeylElem { word, len, mat, perm, inv: 0 });
                        index.insert(key, k);
                        k
                    }
                };
                left[i].push(idx);
            }
            head += 1;
        }
        let right: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let srho = self.reflect_simple(&rho, i);
                elems.iter().map(|e| index[apply(&e.mat, &srho).coords()]).collect()
            })
            .collect();
        // Row of s_i·w is row of w pushed through the left table of s_i.
        let order = elems.len();
        let mut table = vec![0u16; order * order];
        for v in 0..order {
            table[v] = v as u16;
        }
        for k in 1..order {
            let i = elems[k].word[0] as usize;
            let rest = {
                let mut r = 0u32;
                for &j in elems[k].word[1..].iter().rev() {
                    r = left[j as usize][r as usize];
                }
                r as usize
            };
            for v in 0..order {
                table[k * order + v] = left[i][table[rest * order + v] as usize] as u16;
            }
        }
        let mut group = WeylGroup { rank: n, elems, index, left, right, table, longest: 0 };
        for k in 0..group.elems.len() {
            let mut r = WeylElement(0);
            for &i in group.elems[k].word.iter() {
                r = group.left_mul(i as usize, r);
            }
            group.elems[k].inv = r.0;
        }
        group.longest = (0..group.elems.len()).max_by_key(|&k| group.elems[k].len).unwrap() as u32;
        group
    }

    /// W_{0λ} by brute-force scan, and the generating set {i : s_iλ = λ} (1-based).
    pub fn stabilizer_subgroup(&self, lam: &Coweight) -> Result<(Vec<WeylElement>, Vec<usize>), RootError> {
        if !lam.is_dominant() {
            return Err(RootError::NotDominant(lam.to_string()));
        }
        let w = self.weyl()?;
        let elems = w.all().filter(|&x| w.act(x, lam) == *lam).collect();
        let gens = (0..self.rank).filter(|&i| lam.c[i] == 0).map(|i| i + 1).collect();
        Ok((elems, gens))
    }

    /// Elements of the standard parabolic subgroup generated by `gens` (0-based).
    pub fn parabolic(&self, gens: &[usize]) -> Result<Vec<WeylElement>, RootError> {
        let w = self.weyl()?;
        Ok(w.all().filter(|&x| w.word(x).iter().all(|i| gens.contains(&(*i as usize)))).collect())
    }

    pub fn orbit(&self, lam: &Coweight) -> Vec<Coweight> {
        let mut seen = vec![*lam];
        let mut head = 0;
        while head < seen.len() {
            let cur = seen[head];
            for i in 0..self.rank {
                let r = self.reflect_simple(&cur, i);
                if !seen.contains(&r) {
                    seen.push(r);
                }
            }
            head += 1;
        }
        seen.sort();
        seen
    }

    /// Dominant coweights with coordinates in `0..=bound`.
    pub fn dominant_grid(&self, bound: i32) -> Vec<Coweight> {
        let n = self.rank;
        let mut out = Vec::new();
        let total = (bound as usize + 1).pow(n as u32);
        for k in 0..total {
            let mut c = vec![0; n];
            let mut x = k;
            for slot in c.iter_mut() {
                *slot = (x % (bound as usize + 1)) as i32;
                x /= bound as usize + 1;
            }
            out.push(Coweight::new(&c));
        }
        out.sort_by_key(|c| (c.coords().iter().sum::<i32>(), *c));
        out
    }

    /// Dominant ν with ν ⪯ λ.
    pub fn dominant_below(&self, lam: &Coweight) -> Vec<Coweight> {
        let n = self.rank;
        let top = self.coroot_coords(lam);
        let bounds: Vec<i64> = top
            .iter()
            .map(|c| {
                let f = c.to_f64().floor() as i64;
                f.max(0)
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![0i64; n];
        loop {
            // ν = λ − Σ c_i β_i^∨
            let mut nu = *lam;
            for (i, &ci) in cur.iter().enumerate() {
                let b = self.dom_coroot(i);
                nu = nu.sub(&b.scale(ci as i32));
            }
            if nu.is_dominant() {
                out.push(nu);
            }
            let mut k = 0;
            while k < n {
                cur[k] += 1;
                if cur[k] <= bounds[k] {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        out.sort_by_key(|c| (std::cmp::Reverse(c.coords().iter().sum::<i32>()), *c));
        out
    }

    /// i-th simple coroot of R^∨ (0-based), as a coweight.
    pub fn dom_coroot(&self, i: usize) -> Coweight {
        let mut r = [0; MAX_RANK];
        r[i] = 1;
        let idx = self.root_index[&r];
        let b = if self.has_double(idx) { self.root_index[&r.map(|x| 2 * x)] } else { idx };
        self.coroots[b]
    }

    pub fn dump(&self) -> RootDataDump {
        let fmt_vec = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        RootDataDump {
            system: self.label(),
            rank: self.rank,
            ambient_dimension: self.dim,
            simple_roots: self.simple_ambient.iter().map(|v| fmt_vec(v)).collect(),
            positive_roots: (0..self.npos)
                .map(|i| PositiveRootDump {
                    simple_coords: self.roots[i][..self.rank].to_vec(),
                    ambient: fmt_vec(&self.root_ambient(i)),
                    coroot: self.coroots[i].coords().to_vec(),
                    class: if self.in_r3(i) {
                        "R3"
                    } else if self.in_r1(i) {
                        "R1-R3"
                    } else {
                        "R2-R3"
                    }
                    .to_string(),
                })
                .collect(),
            fundamental_coweights: self.coweights_ambient.iter().map(|v| fmt_vec(v)).collect(),
            highest_root: self.roots[self.highest][..self.rank].to_vec(),
            marks: self.marks.clone(),
            good_types: self.good_types.clone(),
            weyl_order: weyl_order(self.kind, self.rank),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PositiveRootDump {
    pub simple_coords: Vec<i32>,
    pub ambient: Vec<String>,
    pub coroot: Vec<i32>,
    pub class: String,
}

/// JSON shape of `show rootdata`.
#[derive(Debug, Clone, Serialize)]
pub struct RootDataDump {
    pub system: String,
    pub rank: usize,
    pub ambient_dimension: usize,
    pub simple_roots: Vec<Vec<String>>,
    pub positive_roots: Vec<PositiveRootDump>,
    pub fundamental_coweights: Vec<Vec<String>>,
    pub highest_root: Vec<i32>,
    pub marks: Vec<i32>,
    pub good_types: Vec<usize>,
    pub weyl_order: u64,
}

/// Parse "C2", "BC3", "A1"; a '~' marking the affine diagram is accepted.
pub fn parse_descriptor(s: &str) -> Result<(RootType, usize), RootError> {
    let t: String = s.trim().chars().filter(|c| *c != '~').collect::<String>().to_ascii_uppercase();
    let split = t.find(|c: char| c.is_ascii_digit()).ok_or_else(|| RootError::Unsupported(s.to_string()))?;
    let (name, num) = t.split_at(split);
    let rank: usize = num.parse().map_err(|_| RootError::Unsupported(s.to_string()))?;
    let kind = match name {
        "A" => RootType::A,
        "B" => RootType::B,
        "C" => RootType::C,
        "D" => RootType::D,
        "E" => RootType::E,
        "F" => RootType::F,
        "G" => RootType::G,
        "BC" => RootType::BC,
        _ => return Err(RootError::Unsupported(s.to_string())),
    };
    Ok((kind, rank))
}

pub fn build_root_system(kind: RootType, rank: usize) -> Result<RootSystem, RootError> {
    RootSystem::new(kind, rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        let (k, n) = parse_descriptor(s).unwrap();
        RootSystem::new(k, n).unwrap()
    }

    fn pos_roots(r: &RootSystem) -> Vec<Vec<i32>> {
        let mut v: Vec<Vec<i32>> = (0..r.num_positive()).map(|i| r.root(i)[..r.rank].to_vec()).collect();
        v.sort();
        v
    }

    #[test]
    fn c2_positive_roots() {
        let r = rs("C2");
        assert_eq!(pos_roots(&r), vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 1]]);
        assert_eq!(r.good_types(), &[0, 2]);
    }

    #[test]
    fn bc2_positive_roots() {
        let r = rs("BC2");
        assert_eq!(
            pos_roots(&r),
            vec![vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2], vec![2, 2]]
        );
        assert_eq!(r.good_types(), &[0]);
    }

    #[test]
    fn bc1_lattices() {
        let r = rs("BC1");
        assert_eq!(r.num_roots(), 4);
        // P = Q: λ₁ = e₁ is the coroot of 2e₁.
        assert!(r.in_coroot_lattice(&Coweight::new(&[1])));
        assert_eq!(r.marks(), &[1, 2]);
    }

    #[test]
    fn a2_marks_and_dominance() {
        let r = rs("A2");
        assert_eq!(r.good_types(), &[0, 1, 2]);
        let z = Coweight::zero(2);
        assert!(r.dominance_leq(&z, &Coweight::new(&[1, 1])));
        assert!(!r.dominance_leq(&z, &Coweight::new(&[1, 0])));
        assert_eq!(r.dominant(&Coweight::new(&[-1, 0])), Coweight::new(&[0, 1]));
        assert_eq!(r.star(&Coweight::new(&[1, 0])).unwrap(), Coweight::new(&[0, 1]));
    }

    #[test]
    fn bc1_dominant_rep_is_s1() {
        let r = rs("BC1");
        let (lam, w) = r.dominant_rep(&Coweight::new(&[-1])).unwrap();
        assert_eq!(lam, Coweight::new(&[1]));
        assert_eq!(r.weyl().unwrap().word(w), &[0]);
    }

    #[test]
    fn pairing_is_kronecker() {
        for s in ["A3", "B3", "C3", "BC3", "D4", "G2", "F4", "E6", "E7", "E8"] {
            let r = rs(s);
            for i in 0..r.rank {
                let amb = r.coweight_ambient(&Coweight::fundamental(r.rank, i + 1));
                for j in 0..r.rank {
                    let p = dot(&amb, &r.simple_ambient()[j]);
                    assert_eq!(p, rat(if i == j { 1 } else { 0 }), "{} {} {}", s, i, j);
                }
            }
        }
    }

    #[test]
    fn weyl_orders() {
        for (s, n) in [("A2", 6), ("C2", 8), ("G2", 12), ("A3", 24), ("B3", 48), ("C3", 48), ("BC3", 48), ("F4", 1152)] {
            assert_eq!(rs(s).weyl().unwrap().order(), n, "{}", s);
        }
        assert!(matches!(rs("E6").weyl(), Err(RootError::WeylTooLarge(_, _))));
    }

    #[test]
    fn root_counts() {
        for (s, n) in [("E6", 36), ("E7", 63), ("E8", 120), ("F4", 24), ("G2", 6), ("BC2", 6), ("D4", 12)] {
            assert_eq!(rs(s).num_positive(), n, "{}", s);
        }
    }

    #[test]
    fn a2_stabilizer_of_lambda1() {
        let r = rs("A2");
        let (elems, gens) = r.stabilizer_subgroup(&Coweight::new(&[1, 0])).unwrap();
        assert_eq!(elems.len(), 2);
        assert_eq!(gens, vec![2]);
    }

    #[test]
    fn unsupported_rejected() {
        assert!(RootSystem::new(RootType::B, 2).is_err());
        assert!(RootSystem::new(RootType::G, 3).is_err());
        assert!(parse_descriptor("X3").is_err());
    }
}
