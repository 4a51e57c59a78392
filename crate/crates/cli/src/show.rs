use std::sync::Arc;

use serde::Serialize;

use hecke_core::affweyl::{AffineWeyl, ClassMode};
use hecke_core::coeff::Frac;
use hecke_core::spherical::Spherical;

use crate::job::root_system;
use crate::CliError;

#[derive(Serialize)]
pub struct Classes {
    pub system: String,
    pub mode: String,
    pub classes: Vec<Vec<usize>>,
}

pub fn classes(system: &str, mode: ClassMode) -> Result<Classes, CliError> {
    let rs = root_system(system)?;
    let aw = AffineWeyl::new(rs.clone()).map_err(|e| CliError::Compute(e.to_string()))?;
    Ok(Classes {
        system: rs.label(),
        mode: match mode {
            ClassMode::W => "W",
            ClassMode::Extended => "extended",
        }
        .into(),
        classes: aw.parameter_classes(mode),
    })
}

pub fn classes_pretty(c: &Classes) -> String {
    let parts: Vec<String> = c
        .classes
        .iter()
        .map(|cl| format!("{{{}}}", cl.iter().map(|i| format!("q{}", i)).collect::<Vec<_>>().join(",")))
        .collect();
    format!("{} parameter classes ({} mode): {}\n", c.system, c.mode, parts.join(","))
}

pub fn rootdata_pretty(d: &hecke_core::rootdata::RootDataDump) -> String {
    let v = |x: &[String]| format!("({})", x.join(", "));
    let mut s = format!("{}: rank {}, ambient dimension {}, |W0| = {}\n", d.system, d.rank, d.ambient_dimension, d.weyl_order);
    for (i, a) in d.simple_roots.iter().enumerate() {
        s += &format!("  alpha{} = {}\n", i + 1, v(a));
    }
    s += &format!("  {} positive roots (simple coordinates, ambient, coroot, class):\n", d.positive_roots.len());
    for r in &d.positive_roots {
        s += &format!("    {:?}  {}  {:?}  {}\n", r.simple_coords, v(&r.ambient), r.coroot, r.class);
    }
    for (i, w) in d.fundamental_coweights.iter().enumerate() {
        s += &format!("  lambda{} = {}\n", i + 1, v(w));
    }
    s += &format!("  highest root {:?}, marks {:?}, good vertex types {:?}\n", d.highest_root, d.marks, d.good_types);
    s
}

#[derive(Serialize)]
pub struct Expansion {
    pub lambda: Vec<i32>,
    /// Coefficient of x^μ in P_λ.
    pub terms: Vec<(Vec<i32>, String)>,
}

#[derive(Serialize)]
pub struct SphericalDump {
    pub system: String,
    pub w0: String,
    pub functions: Vec<Expansion>,
}

pub fn spherical(system: &str, grid: i32) -> Result<SphericalDump, CliError> {
    let sph = Spherical::new(root_system(system)?)?;
    let mut functions = Vec::new();
    for lam in sph.root_system().dominant_grid(grid) {
        let (num, den) = sph.macdonald_p(&lam)?;
        let terms = num
            .sorted()
            .into_iter()
            .map(|(mu, c)| (mu.coords().to_vec(), Frac::new(c, den.clone()).to_string()))
            .collect();
        functions.push(Expansion { lambda: lam.coords().to_vec(), terms });
    }
    Ok(SphericalDump { system: sph.root_system().label(), w0: sph.w0_poly().to_string(), functions })
}

pub fn spherical_pretty(d: &SphericalDump) -> String {
    let mut s = format!("{}: W0(q) = {}\n", d.system, d.w0);
    for f in &d.functions {
        s += &format!("P{:?} =\n", f.lambda);
        for (mu, c) in &f.terms {
            s += &format!("    x^{:?} * {}\n", mu, c);
        }
    }
    s
}

pub fn affine(system: &str) -> Result<Arc<AffineWeyl>, CliError> {
    Ok(Arc::new(AffineWeyl::new(root_system(system)?).map_err(|e| CliError::Compute(e.to_string()))?))
}
