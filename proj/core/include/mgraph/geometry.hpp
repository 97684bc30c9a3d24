#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mgraph/grid.hpp"

namespace mgraph {

struct Polyline {
    std::vector<Point2> vertices;
    bool closed{false};  // the last vertex connects back to the first
};

struct LevelSet {
    std::vector<Polyline> polylines;
    double total_length{0.0};
    double min_gradient{0.0};          // transversality margin of the source field
    std::size_t perturbed_corners{0};  // exact zeros nudged before extraction
};

struct ExtractOptions {
    /// Vertices with |x| > clip_radius are dropped and their chains split.
    double clip_radius{1.0};
};

/// Marching squares over lattice cells whose four corners are active nodes.
/// Crossings are linearly interpolated along cell edges, saddle cells are resolved
/// by the mean of the four corners, and chains are stitched through shared edge
/// crossings in row-major cell order. Exact zeros are replaced by 1e-14 max|u|
/// (counted in perturbed_corners). Throws DegenerateLevelSet when u vanishes on
/// all four corners of a cell.
LevelSet extract_zero_set(const ScalarField& u, const ExtractOptions& options = {});

double polyline_length(const Polyline& line);
double polyline_length(const LevelSet& ls);

/// Builds a level set from raw polylines, filling in total_length.
LevelSet make_level_set(std::vector<Polyline> polylines);

/// Points along every segment with spacing at most `step`, vertices included.
std::vector<Point2> densify(const LevelSet& ls, double step);

/// Distance from p to the nearest segment (or isolated vertex) of ls.
double distance_to(const LevelSet& ls, Point2 p);

/// Symmetric Hausdorff distance, measured from densified samples of each set
/// (spacing `step`) to the segments of the other. Brute force, O(N M).
double hausdorff_distance(const LevelSet& a, const LevelSet& b, double step);

/// The part of `ls` inside the tube of the given radius around `reference`.
/// Segments that leave the tube are cut where they cross its boundary (found by
/// bisection), and chains split there. Points whose nearest reference point is an
/// open end they lie beyond count as outside, so the tube has flat ends.
LevelSet restrict_to_neighborhood(const LevelSet& ls, const LevelSet& reference, double radius);

/// Bilinear interpolation of the finite-difference gradient of u.
Point2 interpolate_gradient(const VectorField& grad, Point2 p);

/// Smallest |grad u| over densified samples of ls (spacing `step`, default h/2).
double transversality_margin(const ScalarField& u, const LevelSet& ls, double step = 0.0);

/// Integral of sqrt(1 + |grad u|^2) over the unit disk: midpoint rule per lattice
/// cell, each cell weighted by the exact area of its intersection with the disk.
double graph_area(const ScalarField& u);

/// Exact area of [x0, x1] x [y0, y1] intersected with the closed unit disk.
double rectangle_disk_area(double x0, double x1, double y0, double y1);

}  // namespace mgraph
