//! Invariants of the closed oriented surface obtained by thickening the
//! Brauer graph of a biserial quiver and capping every boundary component.
//!
//! Ribbon vertices are the `g`-orbits, ribbon edges the quiver vertices and
//! the capped faces the `f`-orbits. Other triangulated surfaces may realize
//! the same quiver; these numbers describe the ribbon surface only.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::BiserialQuiver;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub n_g_orbits: usize,
    pub n_quiver_vertices: usize,
    pub n_f_orbits: usize,
    pub euler_characteristic: i64,
    pub genus: Option<u64>,
    pub n_border_loops: usize,
    pub n_triangle_faces: usize,
}

pub fn surface_report(bq: &BiserialQuiver) -> Result<SurfaceReport> {
    if bq.is_single_vertex() {
        return Err(Error::TooSmall);
    }
    let n_g_orbits = bq.g_orbits().len();
    let n_quiver_vertices = bq.vertex_count();
    let n_f_orbits = bq.f_orbits().len();
    let chi = n_g_orbits as i64 - n_quiver_vertices as i64 + n_f_orbits as i64;
    let genus = (chi % 2 == 0 && chi <= 2).then(|| ((2 - chi) / 2) as u64);
    Ok(SurfaceReport {
        n_g_orbits,
        n_quiver_vertices,
        n_f_orbits,
        euler_characteristic: chi,
        genus,
        n_border_loops: bq.border_loops().len(),
        n_triangle_faces: bq.f_orbits().orbits().iter().filter(|o| o.len() == 3).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::random_biserial_quiver;

    #[test]
    fn markov_quiver_is_a_torus() {
        let bq = BiserialQuiver::from_cycles(
            &[("a1", "1", "2"), ("b1", "1", "2"), ("a2", "2", "3"), ("b2", "2", "3"), ("a3", "3", "1"), ("b3", "3", "1")],
            &[&["a1", "a2", "a3"], &["b1", "b2", "b3"]],
        )
        .unwrap();
        let r = surface_report(&bq).unwrap();
        assert_eq!((r.euler_characteristic, r.genus), (0, Some(1)));
        assert_eq!(r.n_triangle_faces, 2);
    }

    #[test]
    fn single_vertex_is_refused() {
        let bq = random_biserial_quiver(1, 0).unwrap();
        assert_eq!(surface_report(&bq).unwrap_err(), Error::TooSmall);
    }

    #[test]
    fn euler_characteristic_is_always_even() {
        for seed in 0..200 {
            let bq = random_biserial_quiver(2 + (seed % 7) as usize, seed).unwrap();
            let r = surface_report(&bq).unwrap();
            assert_eq!(r.euler_characteristic % 2, 0);
            assert!(r.genus.is_some());
        }
    }
}
