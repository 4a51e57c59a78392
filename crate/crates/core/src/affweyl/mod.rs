//! Affine and extended affine Weyl groups.
//!
//! An element `t_λ·u` acts on the ambient space by `x ↦ u(x) + λ`. Generator
//! indices run over `0..=n`; index 0 is the affine reflection `s_{α̃;1}` and
//! index `i ≥ 1` is the finite simple reflection `s_i`.

mod coset;
mod parse;

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::coeff::{LaurentPoly, Mono, Vars, MAX_VARS};
use crate::rootdata::{Coweight, RootError, RootSystem, WeylElement, WeylGroup};

pub use coset::WLambda;
pub use parse::{format_word, parse_element, parse_word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AffError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("{0} is not in the affine Weyl group W (nontrivial length-zero part)")]
    NotInW(String),
    #[error("parabolic subset {0:?} generates an infinite group")]
    InfiniteCoset(Vec<usize>),
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// `t_trans · fin`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElement {
    pub trans: Coweight,
    pub fin: WeylElement,
}

impl fmt::Debug for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}*w{}", self.trans, self.fin.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClassMode {
    /// Conjugacy in W: odd Coxeter bonds.
    W,
    /// Conjugacy in the extended group: odd bonds plus type-rotating automorphisms.
    Extended,
}

pub struct AffineWeyl {
    rs: Arc<RootSystem>,
    n: usize,
    scale: i64,
    /// scale · <b₀, β> for each root β, b₀ the barycenter of C₀.
    bpair: Vec<i64>,
    /// Indivisible positive roots with the wall spacing along them.
    dirs: Vec<(usize, i64)>,
    gens: Vec<AffineElement>,
    coxeter: Vec<Vec<u32>>,
    /// (good type, g_i, σ_i).
    length_zero: Vec<(usize, AffineElement, Vec<usize>)>,
    sigma_star: Vec<usize>,
    class_w: Vec<usize>,
    class_ext: Vec<usize>,
    vars_w: Vars,
    vars_ext: Vars,
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn union_find_root(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let next = p[y];
        p[y] = r;
        y = next;
    }
    r
}

fn union(p: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (union_find_root(p, a), union_find_root(p, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        p[hi] = lo;
    }
}

fn class_labels(parent: &mut [usize]) -> Vec<usize> {
    let n = parent.len();
    let mut out = vec![0; n];
    for (i, slot) in out.iter_mut().enumerate() {
        // Roots are always the least member since unions attach to the smaller index.
        *slot = union_find_root(parent, i);
    }
    debug_assert!((0..n).all(|i| out[i] <= i));
    out
}

fn vars_for(classes: &[usize]) -> Vars {
    let mut reps: Vec<usize> = classes.to_vec();
    reps.sort();
    reps.dedup();
    Vars::new(reps.iter().map(|r| r.to_string()))
}

impl AffineWeyl {
    pub fn new(rs: Arc<RootSystem>) -> Result<AffineWeyl, AffError> {
        let n = rs.rank;
        let w = rs.weyl()?;
        let marks = rs.marks().to_vec();
        let mut lcm: i64 = 1;
        for &m in &marks {
            lcm = lcm / gcd(lcm, m as i64) * m as i64;
        }
        let scale = 2 * (n as i64 + 1) * lcm;
        // b₀ = (1/(n+1)) Σ λ_i/m_i, so scale·<b₀,β> = 2 Σ β_i lcm/m_i.
        let bpair: Vec<i64> = rs
            .roots()
            .iter()
            .map(|r| (0..n).map(|i| 2 * r[i] as i64 * (lcm / marks[i + 1] as i64)).sum())
            .collect();
        let dirs: Vec<(usize, i64)> = (0..rs.num_positive())
            .filter(|&i| rs.in_r2(i))
            .map(|i| (i, if rs.has_double(i) { scale / 2 } else { scale }))
            .collect();

        let highest = rs.highest_root();
        let rho = Coweight::new(&vec![1; n]);
        let s_highest = w.lookup(&rs.reflect_coweight(&rho, highest)).expect("reflection in W₀");
        let mut gens = vec![AffineElement { trans: *rs.coroot(highest), fin: s_highest }];
        for i in 0..n {
            gens.push(AffineElement { trans: Coweight::zero(n), fin: w.simple(i) });
        }

        // <α_i^∨, α_j> with α₀ = −α̃.
        let root_of = |i: usize| if i == 0 { rs.neg_root(highest) } else { rs.simple_root_index(i - 1) };
        let coxeter: Vec<Vec<u32>> = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| {
                        if i == j {
                            return 1;
                        }
                        let (a, b) = (root_of(i), root_of(j));
                        let prod = rs.coroot(a).pair(rs.root(b)) * rs.coroot(b).pair(rs.root(a));
                        match prod {
                            0 => 2,
                            1 => 3,
                            2 => 4,
                            3 => 6,
                            _ => 0,
                        }
                    })
                    .collect()
            })
            .collect();

        let mut aw = AffineWeyl {
            rs: rs.clone(),
            n,
            scale,
            bpair,
            dirs,
            gens,
            coxeter,
            length_zero: Vec::new(),
            sigma_star: Vec::new(),
            class_w: Vec::new(),
            class_ext: Vec::new(),
            vars_w: Vars::new(Vec::<String>::new()),
            vars_ext: Vars::new(Vec::<String>::new()),
        };

        let w0 = w.longest();
        for &k in rs.good_types() {
            let g = if k == 0 {
                aw.identity()
            } else {
                let lam = Coweight::fundamental(n, k);
                let w0l = longest_in(w, &rs.stabilizer_subgroup(&lam)?.0);
                AffineElement { trans: lam, fin: w.mul(w0l, w0) }
            };
            let ginv = aw.inverse(&g);
            let sigma: Vec<usize> = (0..=n)
                .map(|j| {
                    let c = aw.compose(&aw.compose(&g, &aw.gens[j]), &ginv);
                    aw.gens.iter().position(|x| *x == c).expect("conjugate of a generator is a generator")
                })
                .collect();
            aw.length_zero.push((k, g, sigma));
        }

        let mut star = vec![0];
        for j in 0..n {
            let img = w.act_root(w0, rs.simple_root_index(j));
            let neg = rs.neg_root(img);
            let k = (0..n).find(|&k| rs.simple_root_index(k) == neg).expect("−w₀ permutes the base");
            star.push(k + 1);
        }
        aw.sigma_star = star;

        let mut parent: Vec<usize> = (0..=n).collect();
        for i in 0..=n {
            for j in 0..=n {
                let m = aw.coxeter[i][j];
                if i != j && m != 0 && m % 2 == 1 {
                    union(&mut parent, i, j);
                }
            }
        }
        aw.class_w = class_labels(&mut parent.clone());
        for (_, _, sigma) in &aw.length_zero {
            for (j, &sj) in sigma.iter().enumerate() {
                union(&mut parent, j, sj);
            }
        }
        aw.class_ext = class_labels(&mut parent);
        assert!(aw.class_ext.iter().collect::<std::collections::BTreeSet<_>>().len() <= MAX_VARS);
        aw.vars_w = vars_for(&aw.class_w);
        aw.vars_ext = vars_for(&aw.class_ext);
        Ok(aw)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn weyl(&self) -> &WeylGroup {
        self.rs.weyl().expect("enumerated at construction")
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> AffineElement {
        AffineElement { trans: Coweight::zero(self.n), fin: WeylElement(0) }
    }

    pub fn translation(&self, lam: &Coweight) -> AffineElement {
        AffineElement { trans: *lam, fin: WeylElement(0) }
    }

    pub fn finite(&self, u: WeylElement) -> AffineElement {
        AffineElement { trans: Coweight::zero(self.n), fin: u }
    }

    pub fn generator(&self, i: usize) -> AffineElement {
        self.gens[i]
    }

    pub fn generators(&self) -> &[AffineElement] {
        &self.gens
    }

    /// (t_λu)(t_μv) = t_{λ+uμ}(uv).
    pub fn compose(&self, a: &AffineElement, b: &AffineElement) -> AffineElement {
        let w = self.weyl();
        AffineElement { trans: a.trans.add(&w.act(a.fin, &b.trans)), fin: w.mul(a.fin, b.fin) }
    }

    pub fn inverse(&self, a: &AffineElement) -> AffineElement {
        let w = self.weyl();
        let ui = w.inverse(a.fin);
        AffineElement { trans: w.act(ui, &a.trans).neg(), fin: ui }
    }

    /// Image of a coweight (as a point of the ambient space) under the affine map.
    pub fn act(&self, a: &AffineElement, x: &Coweight) -> Coweight {
        self.weyl().act(a.fin, x).add(&a.trans)
    }

    pub fn from_word(&self, word: &[u8]) -> AffineElement {
        let mut r = self.identity();
        for &i in word {
            r = self.compose(&r, &self.gens[i as usize]);
        }
        r
    }

    /// scale · <w⁻¹b₀, β>.
    fn moved_pair(&self, a: &AffineElement, beta: usize) -> i64 {
        let ub = self.weyl().act_root(a.fin, beta);
        self.bpair[ub] - self.scale * a.trans.pair(self.rs.root(ub)) as i64
    }

    /// Number of walls separating C₀ from w⁻¹C₀.
    pub fn length(&self, a: &AffineElement) -> usize {
        let mut total = 0;
        for &(beta, step) in &self.dirs {
            let p0 = self.bpair[beta];
            let p1 = self.moved_pair(a, beta);
            total += (floor_div(p1, step) - floor_div(p0, step)).unsigned_abs() as usize;
        }
        total
    }

    /// ℓ(a·s_i) < ℓ(a).
    pub fn is_right_descent(&self, a: &AffineElement, i: usize) -> bool {
        if i == 0 {
            self.moved_pair(a, self.rs.highest_root()) > self.scale
        } else {
            self.moved_pair(a, self.rs.simple_root_index(i - 1)) < 0
        }
    }

    /// ℓ(s_i·a) < ℓ(a).
    pub fn is_left_descent(&self, a: &AffineElement, i: usize) -> bool {
        self.is_right_descent(&self.inverse(a), i)
    }

    /// a = s_{i_1} ⋯ s_{i_k} · g with k = ℓ(a) and ℓ(g) = 0; the smallest
    /// left descent is peeled first.
    pub fn decompose(&self, a: &AffineElement) -> (Vec<u8>, AffineElement) {
        let mut cur = *a;
        let mut word = Vec::new();
        'outer: loop {
            let inv = self.inverse(&cur);
            for i in 0..=self.n {
                if self.is_right_descent(&inv, i) {
                    word.push(i as u8);
                    cur = self.compose(&self.gens[i], &cur);
                    continue 'outer;
                }
            }
            return (word, cur);
        }
    }

    /// As `decompose`, choosing uniformly among left descents at each step.
    pub fn decompose_random<R: Rng>(&self, a: &AffineElement, rng: &mut R) -> (Vec<u8>, AffineElement) {
        let mut cur = *a;
        let mut word = Vec::new();
        loop {
            let inv = self.inverse(&cur);
            let desc: Vec<usize> = (0..=self.n).filter(|&i| self.is_right_descent(&inv, i)).collect();
            if desc.is_empty() {
                return (word, cur);
            }
            let i = desc[rng.gen_range(0..desc.len())];
            word.push(i as u8);
            cur = self.compose(&self.gens[i], &cur);
        }
    }

    pub fn reduced_word(&self, a: &AffineElement) -> Result<Vec<u8>, AffError> {
        let (word, g) = self.decompose(a);
        if g != self.identity() {
            return Err(AffError::NotInW(self.format(a)));
        }
        Ok(word)
    }

    /// a ∈ W = W₀ ⋉ Q.
    pub fn in_w(&self, a: &AffineElement) -> bool {
        self.rs.in_coroot_lattice(&a.trans)
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter
    }

    /// (good type i, g_i, σ_i) for i ∈ I_P.
    pub fn length_zero_group(&self) -> &[(usize, AffineElement, Vec<usize>)] {
        &self.length_zero
    }

    pub fn g(&self, i: usize) -> AffineElement {
        self.length_zero.iter().find(|e| e.0 == i).map(|e| e.1).expect("good type")
    }

    pub fn sigma(&self, i: usize) -> &[usize] {
        &self.length_zero.iter().find(|e| e.0 == i).expect("good type").2
    }

    pub fn sigma_star(&self) -> &[usize] {
        &self.sigma_star
    }

    /// σ_l(w) = g_l w g_l⁻¹.
    pub fn sigma_apply(&self, l: usize, a: &AffineElement) -> AffineElement {
        let g = self.g(l);
        self.compose(&self.compose(&g, a), &self.inverse(&g))
    }

    /// The g_k with a ∈ W·g_k.
    pub fn length_zero_part(&self, a: &AffineElement) -> AffineElement {
        self.g(self.rs.type_of(&a.trans))
    }

    pub fn class_of(&self, i: usize, mode: ClassMode) -> usize {
        match mode {
            ClassMode::W => self.class_w[i],
            ClassMode::Extended => self.class_ext[i],
        }
    }

    pub fn parameter_classes(&self, mode: ClassMode) -> Vec<Vec<usize>> {
        let labels = match mode {
            ClassMode::W => &self.class_w,
            ClassMode::Extended => &self.class_ext,
        };
        let mut reps: Vec<usize> = labels.clone();
        reps.sort();
        reps.dedup();
        reps.iter().map(|r| (0..=self.n).filter(|&i| labels[i] == *r).collect()).collect()
    }

    pub fn vars(&self, mode: ClassMode) -> &Vars {
        match mode {
            ClassMode::W => &self.vars_w,
            ClassMode::Extended => &self.vars_ext,
        }
    }

    /// Variable slot of generator i.
    pub fn var_index(&self, i: usize, mode: ClassMode) -> usize {
        let c = self.class_of(i, mode);
        self.vars(mode).index_of(&c.to_string()).expect("class variable")
    }

    /// Exponent vector of q_w in the u-variables.
    pub fn q_mono_of_word(&self, word: &[u8], mode: ClassMode) -> Mono {
        let mut m = Mono::ONE;
        for &i in word {
            m.0[self.var_index(i as usize, mode)] += 2;
        }
        m
    }

    pub fn q_mono(&self, a: &AffineElement, mode: ClassMode) -> Mono {
        self.q_mono_of_word(&self.decompose(a).0, mode)
    }

    pub fn q_w(&self, a: &AffineElement, mode: ClassMode) -> LaurentPoly {
        LaurentPoly::monomial(self.vars(mode), self.q_mono(a, mode), 1.into())
    }

    /// Σ_{w∈U} q_w.
    pub fn poincare_polynomial(&self, set: &[AffineElement], mode: ClassMode) -> LaurentPoly {
        let vars = self.vars(mode);
        let mut acc = LaurentPoly::zero(vars);
        for a in set {
            acc = &acc + &LaurentPoly::monomial(vars, self.q_mono(a, mode), 1.into());
        }
        acc
    }

    pub fn format(&self, a: &AffineElement) -> String {
        let mut parts = Vec::new();
        if !a.trans.is_zero() {
            parts.push(format!("t{}", a.trans));
        }
        for &i in self.weyl().word(a.fin) {
            parts.push(format!("s{}", i + 1));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

pub(crate) fn longest_in(w: &WeylGroup, elems: &[WeylElement]) -> WeylElement {
    *elems.iter().max_by_key(|&&x| w.len(x)).expect("nonempty subgroup")
}
