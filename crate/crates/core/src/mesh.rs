//! Grid meshing of a parametric surface and the plain-text export formats.
//!
//! Samples falling inside the excluded band around u = 0 are dropped, not
//! shifted, and no face may touch a dropped sample. Vertices are emitted in
//! u-major order and every quad splits into two triangles wound in +u, +v
//! order, so face orientation is uniform across the file.

use std::fmt::Write as _;

use thiserror::Error;

use crate::curvature::point_geometry;
use crate::error::GeomError;
use crate::minkowski::LVec3;
use crate::surface::{ParametricSurface, DEFAULT_U_EXCLUDE};

/// Rectangular sampling grid, closed on both parameter ranges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub u_min: f64,
    pub u_max: f64,
    pub nu: usize,
    pub v_min: f64,
    pub v_max: f64,
    pub nv: usize,
    /// Half-width of the dropped band around u = 0.
    pub u_exclude: f64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("{axis} needs at least 2 points, got {n}")]
    TooFewPoints { axis: &'static str, n: usize },
    #[error("{axis} range is empty or reversed")]
    EmptyRange { axis: &'static str },
    #[error("{what} must be finite")]
    NonFinite { what: &'static str },
}

impl GridSpec {
    pub fn new(
        u_min: f64,
        u_max: f64,
        nu: usize,
        v_min: f64,
        v_max: f64,
        nv: usize,
    ) -> Result<Self, GridError> {
        if ![u_min, u_max].iter().all(|x| x.is_finite()) {
            return Err(GridError::NonFinite { what: "u range" });
        }
        if ![v_min, v_max].iter().all(|x| x.is_finite()) {
            return Err(GridError::NonFinite { what: "v range" });
        }
        if nu < 2 {
            return Err(GridError::TooFewPoints { axis: "u", n: nu });
        }
        if nv < 2 {
            return Err(GridError::TooFewPoints { axis: "v", n: nv });
        }
        if !(u_min < u_max) {
            return Err(GridError::EmptyRange { axis: "u" });
        }
        if !(v_min < v_max) {
            return Err(GridError::EmptyRange { axis: "v" });
        }
        Ok(GridSpec {
            u_min,
            u_max,
            nu,
            v_min,
            v_max,
            nv,
            u_exclude: DEFAULT_U_EXCLUDE,
        })
    }

    pub fn with_u_exclude(mut self, band: f64) -> Self {
        assert!(band.is_finite() && band >= 0.0, "band half-width {band}");
        self.u_exclude = band;
        self
    }

    fn u_at(&self, i: usize) -> f64 {
        self.u_min + (self.u_max - self.u_min) * i as f64 / (self.nu - 1) as f64
    }

    fn v_at(&self, j: usize) -> f64 {
        self.v_min + (self.v_max - self.v_min) * j as f64 / (self.nv - 1) as f64
    }
}

/// Scalar channels attached to one vertex, in CSV column order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexAttrs {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub det_i: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub det_ii: f64,
    pub h: f64,
    pub k: f64,
}

/// One mesh vertex: chart parameters, embedded position, optional channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vertex {
    pub u: f64,
    pub v: f64,
    pub position: LVec3,
    pub attrs: Option<VertexAttrs>,
}

/// Triangulated sampling of a surface patch.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshFile {
    pub vertices: Vec<Vertex>,
    /// Zero-based vertex indices.
    pub triangles: Vec<[usize; 3]>,
}

impl MeshFile {
    pub fn has_attrs(&self) -> bool {
        self.vertices.first().is_some_and(|v| v.attrs.is_some())
    }
}

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("every grid sample fell inside the excluded band")]
    AllExcluded,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Samples the surface over the grid. `with_attrs` additionally evaluates the
/// full invariant bundle per vertex, which needs the jet pipeline; samples
/// where that pipeline reports a degenerate metric are dropped exactly like
/// band-excluded ones.
pub fn build_mesh(
    surface: &ParametricSurface,
    grid: &GridSpec,
    with_attrs: bool,
) -> Result<MeshFile, MeshError> {
    let surface = surface.clone().with_u_exclude(grid.u_exclude);
    let mut vertices = Vec::new();
    // vertex_ids[i * nv + j] is the emitted index of grid node (i, j).
    let mut vertex_ids: Vec<Option<usize>> = vec![None; grid.nu * grid.nv];
    for i in 0..grid.nu {
        let u = grid.u_at(i);
        if !surface.admissible(u) {
            continue;
        }
        for j in 0..grid.nv {
            let v = grid.v_at(j);
            let position = surface.eval(u, v)?;
            let attrs = if with_attrs {
                match point_geometry(&surface, u, v) {
                    Ok(pg) => Some(VertexAttrs {
                        e: pg.e,
                        f: pg.f,
                        g: pg.g,
                        det_i: pg.det_i,
                        l: pg.l,
                        m: pg.m,
                        n: pg.n,
                        det_ii: pg.det_ii,
                        h: pg.h,
                        k: pg.k,
                    }),
                    Err(GeomError::DegenerateMetric { .. }) => continue,
                    Err(e) => return Err(e.into()),
                }
            } else {
                None
            };
            vertex_ids[i * grid.nv + j] = Some(vertices.len());
            vertices.push(Vertex {
                u,
                v,
                position,
                attrs,
            });
        }
    }
    if vertices.is_empty() {
        return Err(MeshError::AllExcluded);
    }
    let mut triangles = Vec::new();
    for i in 0..grid.nu - 1 {
        for j in 0..grid.nv - 1 {
            let corners = [
                vertex_ids[i * grid.nv + j],
                vertex_ids[(i + 1) * grid.nv + j],
                vertex_ids[(i + 1) * grid.nv + j + 1],
                vertex_ids[i * grid.nv + j + 1],
            ];
            if let [Some(v00), Some(v10), Some(v11), Some(v01)] = corners {
                triangles.push([v00, v10, v11]);
                triangles.push([v00, v11, v01]);
            }
        }
    }
    Ok(MeshFile {
        vertices,
        triangles,
    })
}

/// ASCII OBJ: `v` lines then 1-based `f` lines.
pub fn write_obj(mesh: &MeshFile) -> String {
    let mut out = String::new();
    for vert in &mesh.vertices {
        let p = vert.position;
        writeln!(out, "v {} {} {}", p.x1, p.x2, p.x3).expect("string write");
    }
    for t in &mesh.triangles {
        writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1).expect("string write");
    }
    out
}

/// CSV with a mandatory header row. Floats are written with 17 significant
/// digits, enough to round-trip any 64-bit value exactly.
pub fn write_csv(mesh: &MeshFile) -> String {
    let mut out = String::new();
    out.push_str("u,v,x,y,z");
    if mesh.has_attrs() {
        out.push_str(",E,F,G,detI,L,M,N,detII,H,K");
    }
    out.push('\n');
    for vert in &mesh.vertices {
        let p = vert.position;
        write!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            vert.u, vert.v, p.x1, p.x2, p.x3
        )
        .expect("string write");
        if let Some(a) = vert.attrs {
            write!(
                out,
                ",{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                a.e, a.f, a.g, a.det_i, a.l, a.m, a.n, a.det_ii, a.h, a.k
            )
            .expect("string write");
        }
        out.push('\n');
    }
    out
}
