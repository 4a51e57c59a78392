use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use hecke_core::coeff::Rational;
use hecke_core::rootdata::Coweight;
use hecke_core::spherical::Spherical;

use crate::CliError;

pub const TABLE_SCHEMA: &str = "hecke-table/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Entry {
    pub lambda: Vec<i32>,
    pub mu: Vec<i32>,
    pub nu: Vec<i32>,
    pub c_symmetric: String,
    pub c_hecke: String,
    /// c′ in the shifted variables t = q − 1.
    pub c_prime: String,
    pub routes_agree: bool,
    /// c at the requested parameters.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table {
    pub schema: String,
    pub system: String,
    pub grid: i32,
    pub variables: Vec<String>,
    /// Class variable → value; empty when symbolic.
    pub parameters: BTreeMap<String, String>,
    pub routes_agree: bool,
    pub entries: Vec<Entry>,
}

fn cells(sph: &Spherical, lam: &Coweight, mu: &Coweight, q: Option<&[Rational]>) -> Result<Vec<Entry>, CliError> {
    let sym = sph.c_via_symmetric(lam, mu)?;
    let mut out = Vec::new();
    for nu in sph.root_system().dominant_below(&lam.add(mu)) {
        let hecke = sph.c_via_hecke(lam, mu, &nu)?;
        let c = sym.get(&nu).cloned().unwrap_or_else(|| hecke_core::coeff::Frac::zero(sph.vars()));
        if c.is_zero() && hecke.is_zero() {
            continue;
        }
        let c_prime = match sph.c_prime(lam, mu, &nu) {
            Ok(p) => p.to_string(),
            Err(_) => format!("not a nonnegative polynomial: {}", sph.c_prime_raw(lam, mu, &nu)?),
        };
        let value = q.map(|q| c.eval_q(q)).transpose()?.map(|v| v.to_string());
        out.push(Entry {
            lambda: lam.coords().to_vec(),
            mu: mu.coords().to_vec(),
            nu: nu.coords().to_vec(),
            c_symmetric: c.to_string(),
            c_hecke: hecke.to_string(),
            c_prime,
            routes_agree: c == hecke,
            value,
        });
    }
    Ok(out)
}

/// Both routes for c_{λ,μ;ν}, every pair of dominant λ, μ with coordinates ≤ grid.
pub fn build(sph: &Spherical, grid: i32, q: Option<&[Rational]>) -> Result<Table, CliError> {
    let rs = sph.root_system();
    let lams = rs.dominant_grid(grid);
    let pairs: Vec<(Coweight, Coweight)> = lams.iter().flat_map(|l| lams.iter().map(move |m| (*l, *m))).collect();
    let rows: Vec<Vec<Entry>> = pairs.par_iter().map(|(l, m)| cells(sph, l, m, q)).collect::<Result<_, _>>()?;
    let entries: Vec<Entry> = rows.into_iter().flatten().collect();
    let labels = sph.vars().labels();
    let parameters = match q {
        Some(q) => labels.iter().zip(q).map(|(l, v)| (format!("q{}", l), v.to_string())).collect(),
        None => BTreeMap::new(),
    };
    Ok(Table {
        schema: TABLE_SCHEMA.to_string(),
        system: rs.label(),
        grid,
        variables: labels.iter().map(|l| format!("q{}", l)).collect(),
        parameters,
        routes_agree: entries.iter().all(|e| e.routes_agree),
        entries,
    })
}

fn coords(c: &[i32]) -> String {
    format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

pub fn write_csv<W: std::io::Write>(t: &Table, w: W) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    let csv_err = |e: csv::Error| CliError::Usage(e.to_string());
    out.write_record(["lambda", "mu", "nu", "c_symmetric", "c_hecke", "c_prime", "routes_agree", "value"])
        .map_err(csv_err)?;
    for e in &t.entries {
        out.write_record([
            coords(&e.lambda),
            coords(&e.mu),
            coords(&e.nu),
            e.c_symmetric.clone(),
            e.c_hecke.clone(),
            e.c_prime.clone(),
            e.routes_agree.to_string(),
            e.value.clone().unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    out.flush().map_err(|e| CliError::Usage(e.to_string()))
}

pub fn pretty(t: &Table) -> String {
    let mut s = format!("{} structure constants, dominant coordinates ≤ {}\n", t.system, t.grid);
    if !t.parameters.is_empty() {
        let ps: Vec<String> = t.parameters.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
        s += &format!("at {}\n", ps.join(", "));
    }
    for e in &t.entries {
        let v = e.value.as_ref().map(|v| format!(" = {}", v)).unwrap_or_default();
        let flag = if e.routes_agree { "" } else { "   [routes differ]" };
        s += &format!(
            "c[{} {}; {}] = {}{}   c' = {}{}\n",
            coords(&e.lambda),
            coords(&e.mu),
            coords(&e.nu),
            e.c_symmetric,
            v,
            e.c_prime,
            flag
        );
    }
    s += &format!("{} entries, routes agree: {}\n", t.entries.len(), t.routes_agree);
    s
}
