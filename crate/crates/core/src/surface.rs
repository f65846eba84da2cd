//! Surface invariants of a glueing: vertices, Euler characteristic, genus.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// Validated `(n, k)`: `n` edges on `n / k` polygons, `n / 2` edges after
/// identification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceParams {
    pub n: usize,
    pub k: usize,
    pub faces: usize,
    pub edges_after: usize,
    /// `2·lcm(2, k)` divides `n`; then `αβ` is always an even permutation.
    pub gamburd_regime: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub vertices: usize,
    pub euler_characteristic: i64,
    pub genus: u64,
}

pub fn validate_params(n: usize, k: usize) -> Result<SurfaceParams> {
    if k < 3 {
        return Err(Error::invalid(format!("polygon size k = {k} must be >= 3")));
    }
    let l = 2usize.lcm(&k);
    if n == 0 || !n.is_multiple_of(l) {
        return Err(Error::invalid(format!(
            "n = {n} must be a positive multiple of lcm(2, {k}) = {l}"
        )));
    }
    Ok(SurfaceParams {
        n,
        k,
        faces: n / k,
        edges_after: n / 2,
        gamburd_regime: n.is_multiple_of(2 * l),
    })
}

impl SurfaceParams {
    /// Euler characteristic for `v` vertices, without consistency checks.
    pub fn euler_characteristic(&self, v: usize) -> i64 {
        v as i64 - self.edges_after as i64 + self.faces as i64
    }

    /// Parity forced on `n - v` by `sign(αβ) = sign(α)·sign(β)`.
    pub fn cycle_parity(&self) -> usize {
        (self.n / 2 + (self.k - 1) * self.faces) % 2
    }
}

/// Surface invariants for a glueing with `v` vertices.
///
/// Fails if `v` is zero or the resulting `χ` is odd or exceeds 2, since no
/// connected orientable glueing of these polygons has such a vertex count.
pub fn invariants_from_cycles(params: &SurfaceParams, v: usize) -> Result<SurfaceInvariants> {
    if v == 0 {
        return Err(Error::InconsistentInvariants(
            "a glued surface has at least one vertex".into(),
        ));
    }
    let chi = params.euler_characteristic(v);
    if chi > 2 || chi.rem_euclid(2) != 0 {
        return Err(Error::InconsistentInvariants(format!(
            "v = {v} gives Euler characteristic {chi} for n = {}, k = {}",
            params.n, params.k
        )));
    }
    Ok(SurfaceInvariants {
        vertices: v,
        euler_characteristic: chi,
        genus: ((2 - chi) / 2) as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        let p = validate_params(6, 3).unwrap();
        assert!(!p.gamburd_regime);
        assert_eq!((p.faces, p.edges_after), (2, 3));
        assert!(validate_params(12, 3).unwrap().gamburd_regime);
        assert!(validate_params(8, 4).unwrap().gamburd_regime);
        assert!(!validate_params(4, 4).unwrap().gamburd_regime);
        let err = validate_params(8, 3).unwrap_err();
        assert!(err.to_string().contains("lcm(2, 3) = 6"), "{err}");
        assert!(validate_params(6, 2).is_err());
        assert!(validate_params(0, 3).is_err());
    }

    #[test]
    fn invariants_examples() {
        let p = validate_params(6, 3).unwrap();
        let sphere = invariants_from_cycles(&p, 3).unwrap();
        assert_eq!((sphere.euler_characteristic, sphere.genus), (2, 0));
        let torus = invariants_from_cycles(&p, 1).unwrap();
        assert_eq!((torus.euler_characteristic, torus.genus), (0, 1));
        let p12 = validate_params(12, 3).unwrap();
        let t = invariants_from_cycles(&p12, 2).unwrap();
        assert_eq!((t.euler_characteristic, t.genus), (0, 1));
    }

    #[test]
    fn impossible_vertex_counts() {
        let p = validate_params(6, 3).unwrap();
        assert!(matches!(
            invariants_from_cycles(&p, 2),
            Err(Error::InconsistentInvariants(_))
        ));
        assert!(invariants_from_cycles(&p, 5).is_err());
        assert!(invariants_from_cycles(&p, 0).is_err());
    }
}
