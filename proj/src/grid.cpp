#include "gegd/grid.hpp"

#include <algorithm>
#include <cmath>

namespace gegd {

DesignGrid::DesignGrid(int rows_, int cols_, Symmetry sym, int min_feature_, double pitch)
    : rows(rows_), cols(cols_), pixel_pitch(pitch), symmetry(sym), min_feature(min_feature_) {
  if (rows < 1 || cols < 1) throw ParameterError("grid dimensions must be positive");
  if (min_feature < 1) throw ParameterError("min_feature must be >= 1");
  if (rows < min_feature || cols < min_feature)
    throw ParameterError("grid must be at least min_feature pixels in each dimension");
  if (pixel_pitch <= 0.0) throw ParameterError("pixel_pitch must be positive");
}

int DesignGrid::half_rows() const {
  return symmetry == Symmetry::D1Rows ? (rows + 1) / 2 : rows;
}

int DesignGrid::half_cols() const {
  return symmetry == Symmetry::D1Cols ? (cols + 1) / 2 : cols;
}

int DesignGrid::independent_count() const { return half_rows() * half_cols(); }

int DesignGrid::mirror_index(int i) const {
  const int r = i / cols, c = i % cols;
  switch (symmetry) {
    case Symmetry::None: return i;
    case Symmetry::D1Rows: return index(rows - 1 - r, c);
    case Symmetry::D1Cols: return index(r, cols - 1 - c);
  }
  return i;
}

std::vector<int> mirror_positions(int pos, const DesignGrid& grid) {
  if (pos < 0 || pos >= grid.pixel_count()) throw ParameterError("pixel index out of range");
  const int m = grid.mirror_index(pos);
  if (m == pos) return {pos};
  return {pos, m};
}

Field expand_symmetric(const Eigen::VectorXd& half, const DesignGrid& grid) {
  if (half.size() != grid.independent_count())
    throw DimensionError("half-field length does not match independent parameter count");
  Field full(grid.pixel_count());
  const int hr = grid.half_rows(), hc = grid.half_cols();
  for (int r = 0; r < grid.rows; ++r) {
    const int sr = std::min(r, (grid.symmetry == Symmetry::D1Rows) ? grid.rows - 1 - r : r);
    for (int c = 0; c < grid.cols; ++c) {
      const int sc = std::min(c, (grid.symmetry == Symmetry::D1Cols) ? grid.cols - 1 - c : c);
      full[grid.index(r, c)] = half[sr * hc + sc];
    }
  }
  (void)hr;
  return full;
}

Eigen::VectorXd restrict_to_half(const Field& full, const DesignGrid& grid) {
  if (full.size() != grid.pixel_count())
    throw DimensionError("field length does not match grid");
  const int hr = grid.half_rows(), hc = grid.half_cols();
  Eigen::VectorXd half(hr * hc);
  for (int r = 0; r < hr; ++r)
    for (int c = 0; c < hc; ++c) half[r * hc + c] = full[grid.index(r, c)];
  return half;
}

Eigen::VectorXd reduce_over_orbits(const Field& grad_full, const DesignGrid& grid) {
  if (grad_full.size() != grid.pixel_count())
    throw DimensionError("field length does not match grid");
  const int hr = grid.half_rows(), hc = grid.half_cols();
  Eigen::VectorXd half = Eigen::VectorXd::Zero(hr * hc);
  for (int r = 0; r < grid.rows; ++r) {
    const int sr = std::min(r, (grid.symmetry == Symmetry::D1Rows) ? grid.rows - 1 - r : r);
    for (int c = 0; c < grid.cols; ++c) {
      const int sc = std::min(c, (grid.symmetry == Symmetry::D1Cols) ? grid.cols - 1 - c : c);
      half[sr * hc + sc] += grad_full[grid.index(r, c)];
    }
  }
  return half;
}

bool is_symmetric(const Field& full, const DesignGrid& grid, double tol) {
  if (full.size() != grid.pixel_count())
    throw DimensionError("field length does not match grid");
  if (grid.symmetry == Symmetry::None) return true;
  for (int i = 0; i < grid.pixel_count(); ++i) {
    const int m = grid.mirror_index(i);
    if (m <= i) continue;
    const double a = full[i], b = full[m];
    if (std::abs(a - b) > tol * std::max({1.0, std::abs(a), std::abs(b)})) return false;
  }
  return true;
}

Brush Brush::disk(int diameter) {
  if (diameter < 1) throw ParameterError("brush diameter must be positive");
  Brush b;
  b.diameter = diameter;
  const double r2 = 0.25 * diameter * diameter;
  if (diameter % 2 == 1) {
    const int h = (diameter - 1) / 2;
    for (int dy = -h; dy <= h; ++dy)
      for (int dx = -h; dx <= h; ++dx)
        if (dy * dy + dx * dx <= r2) b.mask.emplace_back(dy, dx);
  } else {
    // Disk centered on the corner shared by the four pixels around the anchor.
    const int h = diameter / 2;
    for (int dy = -h; dy <= h - 1; ++dy)
      for (int dx = -h; dx <= h - 1; ++dx) {
        const double cy = dy + 0.5, cx = dx + 0.5;
        if (cy * cy + cx * cx <= r2) b.mask.emplace_back(dy, dx);
      }
  }
  return b;
}

}  // namespace gegd
