//! Geometry of any generated cell, dispatched on its label.

use crate::chart::Chart;
use crate::cp2_chart::{cp2_cell_chart, cp2_vertex_point};
use crate::curve::{cp1_chart, cp1_vertex_point, curve_chart, curve_vertex_point};
use crate::error::{Error, Result};
use crate::label::CellLabel;
use crate::projective::ProjectivePoint;
use crate::surface::{surface_cell_chart, surface_vertex_point};

pub fn vertex_point(label: &CellLabel, n: u32) -> Result<ProjectivePoint> {
    match label {
        CellLabel::Cp1(l) => cp1_vertex_point(l, n),
        CellLabel::Curve(l) => curve_vertex_point(l, n),
        CellLabel::Cp2(l) => cp2_vertex_point(l, n),
        CellLabel::Surface(l) => surface_vertex_point(l, n),
        CellLabel::Named(_) => Err(Error::UnknownLabel(label.to_string())),
    }
}

pub fn cell_chart(label: &CellLabel, n: u32) -> Result<Chart> {
    match label {
        CellLabel::Cp1(l) => cp1_chart(l, n),
        CellLabel::Curve(l) => curve_chart(l, n),
        CellLabel::Cp2(l) => cp2_cell_chart(l, n),
        CellLabel::Surface(l) => surface_cell_chart(l, n),
        CellLabel::Named(_) => Err(Error::ChartUnavailable(label.to_string())),
    }
}

/// Ambient dimension `N` of `CP^N` for a space.
pub fn ambient_dim(space: crate::chain::SpaceTag) -> usize {
    use crate::chain::SpaceTag::*;
    match space {
        Cp1 => 1,
        Curve | Cp2 => 2,
        Surface => 3,
    }
}
