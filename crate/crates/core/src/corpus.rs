//! The bundled calibration symbols: inner maps, boundary-touching non-inner maps, and
//! strictly contractive maps.

use num_complex::Complex64;

use crate::symbol::SchurMap;

#[derive(Debug, Clone)]
pub struct NamedSymbol {
    pub name: &'static str,
    pub map: SchurMap,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity() -> SchurMap {
    SchurMap::identity()
}

pub fn square() -> SchurMap {
    SchurMap::polynomial_real(&[0.0, 0.0, 1.0]).unwrap()
}

pub fn cube() -> SchurMap {
    SchurMap::polynomial_real(&[0.0, 0.0, 0.0, 1.0]).unwrap()
}

/// `z / 2`
pub fn half() -> SchurMap {
    SchurMap::polynomial_real(&[0.0, 0.5]).unwrap()
}

/// `(1 + z) / 2`
pub fn lens() -> SchurMap {
    SchurMap::polynomial_real(&[0.5, 0.5]).unwrap()
}

/// `(z + z²) / 2`
pub fn mixed() -> SchurMap {
    SchurMap::polynomial_real(&[0.0, 0.5, 0.5]).unwrap()
}

/// `(0.5 - z) / (1 - 0.5 z)`
pub fn moebius() -> SchurMap {
    SchurMap::involution(c(0.5, 0.0)).unwrap()
}

/// Blaschke product with zeros `0.3` and `-0.5i`.
pub fn blaschke() -> SchurMap {
    SchurMap::blaschke(vec![c(0.3, 0.0), c(0.0, -0.5)], 0.0).unwrap()
}

/// `blaschke() ∘ moebius()`
pub fn blaschke_after_moebius() -> SchurMap {
    SchurMap::compose(blaschke(), moebius()).unwrap()
}

/// All nine calibration symbols in a fixed order.
pub fn standard() -> Vec<NamedSymbol> {
    vec![
        NamedSymbol { name: "identity", map: identity() },
        NamedSymbol { name: "square", map: square() },
        NamedSymbol { name: "cube", map: cube() },
        NamedSymbol { name: "half", map: half() },
        NamedSymbol { name: "lens", map: lens() },
        NamedSymbol { name: "mixed", map: mixed() },
        NamedSymbol { name: "moebius", map: moebius() },
        NamedSymbol { name: "blaschke", map: blaschke() },
        NamedSymbol { name: "blaschke_moebius", map: blaschke_after_moebius() },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::TOL_SELFMAP;

    #[test]
    fn every_symbol_is_a_certified_self_map() {
        for s in standard() {
            let report = s.map.validate_self_map(4096, TOL_SELFMAP);
            assert!(report.pass, "{} failed: {report:?}", s.name);
        }
    }

    #[test]
    fn json_round_trip() {
        for s in standard() {
            let json = s.map.to_spec().to_json();
            let back = SchurMap::load_json(&json).unwrap();
            assert_eq!(back, s.map, "{}", s.name);
        }
    }
}
