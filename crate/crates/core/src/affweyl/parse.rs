//! Word and element descriptors: words are "0,1,2,1"; elements are
//! products such as "t[1,0]*s1*s0", where `t[..]` is a translation, `s<i>`
//! a generator and `g<i>` a length-zero element.

use super::{AffError, AffineElement, AffineWeyl};
use crate::rootdata::Coweight;

pub fn parse_word(s: &str) -> Result<Vec<u8>, AffError> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| x.trim().parse::<u8>().map_err(|_| AffError::Parse(format!("bad generator '{}'", x))))
        .collect()
}

pub fn format_word(w: &[u8]) -> String {
    w.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_element(aw: &AffineWeyl, s: &str) -> Result<AffineElement, AffError> {
    let mut acc = aw.identity();
    let t = s.trim();
    if t == "1" || t.is_empty() {
        return Ok(acc);
    }
    for factor in t.split('*') {
        let f = factor.trim();
        let e = if let Some(rest) = f.strip_prefix('t') {
            let lam: Coweight = rest.parse().map_err(AffError::Parse)?;
            aw.root_system().check_rank(&lam)?;
            aw.translation(&lam)
        } else if let Some(rest) = f.strip_prefix('s') {
            let i: usize = rest.parse().map_err(|_| AffError::Parse(format!("bad factor '{}'", f)))?;
            if i > aw.rank() {
                return Err(AffError::BadGenerator(i));
            }
            aw.generator(i)
        } else if let Some(rest) = f.strip_prefix('g') {
            let i: usize = rest.parse().map_err(|_| AffError::Parse(format!("bad factor '{}'", f)))?;
            if !aw.root_system().good_types().contains(&i) {
                return Err(AffError::Parse(format!("{} is not a good type", i)));
            }
            aw.g(i)
        } else if f == "1" {
            aw.identity()
        } else {
            return Err(AffError::Parse(format!("bad factor '{}'", f)));
        };
        acc = aw.compose(&acc, &e);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::super::tests::aw;
    use super::*;

    #[test]
    fn element_round_trip() {
        let a = aw("C2");
        for s in ["1", "t[1,0]*s1", "s0*s1*s2", "g2*s1", "t[-1,2]*s2*s1"] {
            let e = parse_element(&a, s).unwrap();
            assert_eq!(parse_element(&a, &a.format(&e)).unwrap(), e, "{}", s);
        }
        assert!(parse_element(&a, "s7").is_err());
        assert!(parse_element(&a, "g1").is_err());
        assert_eq!(parse_word("0,1,2,1").unwrap(), vec![0, 1, 2, 1]);
        assert_eq!(format_word(&[0, 1]), "0,1");
    }
}
