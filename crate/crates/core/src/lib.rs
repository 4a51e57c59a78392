pub mod coeff;
pub mod rootdata;
pub mod affweyl;
pub mod hecke;
pub mod spherical;
pub mod building;
