#include <doctest.h>

#include <algorithm>
#include <set>

#include "gegd/grid.hpp"

using namespace gegd;

TEST_CASE("expand_symmetric mirrors the half field") {
  DesignGrid grid(2, 4, Symmetry::D1Cols, 2);
  Eigen::VectorXd half(4);
  half << 1.0, 2.0, 3.0, 4.0;  // [[a,b],[c,d]]
  const Field full = expand_symmetric(half, grid);
  Eigen::VectorXd expected(8);
  expected << 1, 2, 2, 1, 3, 4, 4, 3;
  CHECK(full.isApprox(expected));
}

TEST_CASE("symmetry None is the identity map") {
  DesignGrid grid(3, 3);
  Eigen::VectorXd half = Eigen::VectorXd::LinSpaced(9, 0.0, 8.0);
  CHECK(expand_symmetric(half, grid).isApprox(half));
}

TEST_CASE("expand/restrict round trips") {
  for (Symmetry sym : {Symmetry::D1Cols, Symmetry::D1Rows}) {
    DesignGrid grid(5, 7, sym, 2);
    Eigen::VectorXd half = Eigen::VectorXd::Random(grid.independent_count());
    const Field full = expand_symmetric(half, grid);
    CHECK(restrict_to_half(full, grid).isApprox(half));
    CHECK(is_symmetric(full, grid));
    // restrict o expand = identity on symmetric fulls
    CHECK(expand_symmetric(restrict_to_half(full, grid), grid).isApprox(full));
  }
}

TEST_CASE("expand_symmetric rejects wrong lengths") {
  DesignGrid grid(2, 4, Symmetry::D1Cols, 2);
  CHECK_THROWS_AS(expand_symmetric(Eigen::VectorXd::Zero(5), grid), DimensionError);
}

TEST_CASE("independent count is the orbit count of the mirror map") {
  // Brute-force orbit counting for several grids, including the 35x70 case
  // (orbit count 35*35 = 1225 under the column-mirror convention).
  struct Case { int rows, cols; Symmetry sym; };
  for (const auto& c : {Case{35, 70, Symmetry::D1Cols}, Case{5, 5, Symmetry::D1Cols},
                        Case{6, 4, Symmetry::D1Rows}, Case{3, 3, Symmetry::None}}) {
    DesignGrid grid(c.rows, c.cols, c.sym, 1);
    std::set<int> orbits;
    for (int i = 0; i < grid.pixel_count(); ++i)
      orbits.insert(std::min(i, grid.mirror_index(i)));
    CHECK(grid.independent_count() == int(orbits.size()));
  }
  CHECK(DesignGrid(35, 70, Symmetry::D1Cols, 7).independent_count() == 1225);
}

TEST_CASE("mirror_positions returns the symmetry orbit") {
  DesignGrid grid(1, 4, Symmetry::D1Cols, 1);
  CHECK(mirror_positions(0, grid) == std::vector<int>{0, 3});
  DesignGrid plain(1, 4, Symmetry::None, 1);
  CHECK(mirror_positions(2, plain) == std::vector<int>{2});
  DesignGrid odd(1, 5, Symmetry::D1Cols, 1);
  CHECK(mirror_positions(2, odd) == std::vector<int>{2});  // axis fixed point
  CHECK_THROWS_AS(mirror_positions(99, grid), ParameterError);
}

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(DesignGrid(3, 3, Symmetry::None, 4), ParameterError);
  CHECK_THROWS_AS(DesignGrid(0, 3), ParameterError);
}

TEST_CASE("brush masks are centered disks") {
  CHECK(Brush::disk(1).mask == std::vector<std::pair<int, int>>{{0, 0}});

  // Monotone in diameter, symmetric under flips and 90-degree rotation of the
  // centered coordinates.
  size_t prev = 0;
  for (int d = 1; d <= 9; ++d) {
    const Brush b = Brush::disk(d);
    CHECK(b.mask.size() >= prev);
    prev = b.mask.size();

    const double off = d % 2 == 0 ? 0.5 : 0.0;
    std::set<std::pair<double, double>> centered;
    for (auto [dy, dx] : b.mask) centered.insert({dy + off, dx + off});
    for (auto [y, x] : centered) {
      CHECK(centered.count({-y, x}) == 1);
      CHECK(centered.count({y, -x}) == 1);
      CHECK(centered.count({x, -y}) == 1);  // 90-degree rotation
    }
  }
  CHECK(Brush::disk(3).mask.size() == 9);
  CHECK(Brush::disk(4).mask.size() == 12);
  CHECK(Brush::disk(5).mask.size() == 21);
}
