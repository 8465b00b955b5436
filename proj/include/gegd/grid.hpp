#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "gegd/support.hpp"

namespace gegd {

// Full-grid scalar field, row-major flattening (index = r * cols + c).
using Field = Eigen::VectorXd;

enum class Symmetry { None, D1Rows, D1Cols };

// Pixel grid shared by every stage of the pipeline. Immutable after
// construction and safe to share across threads.
//
// D1Cols mirrors column c onto cols-1-c (the independent half is the first
// ceil(cols/2) columns); D1Rows mirrors rows likewise. For even splits there
// is no fixed axis line, so independent_count() is the orbit count of the
// mirror map, not any externally quoted parameter count.
struct DesignGrid {
  int rows = 0;
  int cols = 0;
  double pixel_pitch = 1.0;
  Symmetry symmetry = Symmetry::None;
  int min_feature = 1;

  DesignGrid() = default;
  DesignGrid(int rows_, int cols_, Symmetry sym = Symmetry::None, int min_feature_ = 1,
             double pitch = 1.0);

  int pixel_count() const { return rows * cols; }
  int independent_count() const;

  int index(int r, int c) const { return r * cols + c; }
  std::pair<int, int> coords(int i) const { return {i / cols, i % cols}; }
  // Physical pixel coordinate (row, col) in pixel units.
  Eigen::Vector2d pixel_coord(int i) const {
    return Eigen::Vector2d(static_cast<double>(i / cols), static_cast<double>(i % cols));
  }

  // Index of the mirror image of pixel i (i itself when unsymmetric or on axis).
  int mirror_index(int i) const;

  // Half-field dimensions (rows x cols of the independent block, row-major).
  int half_rows() const;
  int half_cols() const;
};

// Symmetry orbit of a pixel: {pos} or {pos, mirror(pos)}.
std::vector<int> mirror_positions(int pos, const DesignGrid& grid);

// Expands an independent half-field to the full grid.
Field expand_symmetric(const Eigen::VectorXd& half, const DesignGrid& grid);

// Restriction onto the independent half; right inverse of expand_symmetric.
Eigen::VectorXd restrict_to_half(const Field& full, const DesignGrid& grid);

// Adjoint of expand_symmetric: sums gradients over each orbit.
Eigen::VectorXd reduce_over_orbits(const Field& grad_full, const DesignGrid& grid);

bool is_symmetric(const Field& full, const DesignGrid& grid, double tol = 1e-12);

// Discretized circular brush. Odd diameters center the disk on a pixel, even
// diameters on a pixel corner so the mask keeps its rotation/flip symmetry.
struct Brush {
  int diameter = 1;
  std::vector<std::pair<int, int>> mask;  // (dy, dx) offsets from the anchor pixel

  static Brush disk(int diameter);
};

}  // namespace gegd
