#include <doctest.h>

#include <algorithm>

#include "gegd/fdg.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace gegd;

namespace {

bool all_equal(const FeasibleDesign& d, uint8_t v) {
  return std::all_of(d.cells.begin(), d.cells.end(), [&](uint8_t c) { return c == v; });
}

}  // namespace

TEST_CASE("uniform rewards give uniform designs") {
  DesignGrid grid(8, 8, Symmetry::None, 3);
  const Brush brush = Brush::disk(3);
  CHECK(all_equal(generate(Field::Constant(64, 0.5), grid, brush), 1));
  CHECK(all_equal(generate(Field::Constant(64, -0.5), grid, brush), 0));
}

TEST_CASE("generate validates its contract") {
  DesignGrid grid(6, 6, Symmetry::D1Cols, 3);
  const Brush brush = Brush::disk(3);
  CHECK_THROWS_AS(generate(Field::Zero(10), grid, brush), DimensionError);
  CHECK_THROWS_AS(generate(Field::Zero(36), grid, Brush::disk(2)), ContractError);
  Field asym = Field::Zero(36);
  asym[0] = 1.0;
  CHECK_THROWS_AS(generate(asym, grid, brush), ContractError);
  GenerateOptions relaxed;
  relaxed.check_symmetric_input = false;
  CHECK_NOTHROW(generate(asym, grid, brush, relaxed));
}

TEST_CASE("check_feasibility spot checks") {
  // All-solid is feasible.
  FeasibleDesign solid{4, 4, std::vector<uint8_t>(16, 1)};
  CHECK(check_feasibility(solid, Brush::disk(2)));

  // One isolated solid pixel cannot be covered by a diameter-3 disk.
  FeasibleDesign lone{5, 5, std::vector<uint8_t>(25, 0)};
  lone.cells[12] = 1;
  CHECK_FALSE(check_feasibility(lone, Brush::disk(3)));

  // Checkerboard has no monochrome 2x2 placement.
  FeasibleDesign checker{4, 4, {}};
  checker.cells.resize(16);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) checker.cells[r * 4 + c] = uint8_t((r + c) % 2);
  CHECK_FALSE(check_feasibility(checker, Brush::disk(2)));

  // Brush 1 accepts anything.
  CHECK(check_feasibility(checker, Brush::disk(1)));
}

TEST_CASE("feasibility property over random rewards, grids, and brushes") {
  for (int diameter = 2; diameter <= 6; ++diameter) {
    for (uint32_t tag = 0; tag < 20; ++tag) {
      const int rows = diameter + 1 + int(tag % 7);
      const int cols = diameter + int((tag * 3) % 9);
      DesignGrid grid(rows, cols, Symmetry::None, diameter);
      const Brush brush = Brush::disk(diameter);
      const Field reward =
          testutil::random_field(grid, 1000 + diameter, tag);
      const FeasibleDesign d = generate(reward, grid, brush);
      CHECK(check_feasibility(d, brush));
    }
  }
}

TEST_CASE("feasibility holds for adversarial discrete rewards") {
  DesignGrid grid(9, 9, Symmetry::None, 3);
  const Brush brush = Brush::disk(3);
  for (uint32_t tag = 0; tag < 50; ++tag) {
    Field reward = testutil::random_field(grid, 4242, tag);
    // Quantize to +/-1 to force massive score ties.
    for (int i = 0; i < reward.size(); ++i) reward[i] = reward[i] >= 0.0 ? 1.0 : -1.0;
    const FeasibleDesign d = generate(reward, grid, brush);
    CHECK(check_feasibility(d, brush));
  }
}

TEST_CASE("determinism: identical inputs give identical designs") {
  DesignGrid grid(12, 10, Symmetry::None, 4);
  const Brush brush = Brush::disk(4);
  const Field reward = testutil::random_field(grid, 77);
  CHECK(generate(reward, grid, brush) == generate(reward, grid, brush));
}

TEST_CASE("positive scaling leaves the design unchanged") {
  DesignGrid grid(10, 10, Symmetry::None, 3);
  const Brush brush = Brush::disk(3);
  for (uint32_t tag = 0; tag < 10; ++tag) {
    const Field reward = testutil::random_field(grid, 5150, tag);
    const FeasibleDesign base = generate(reward, grid, brush);
    for (double c : {0.5, 2.0, 10.0})
      CHECK(scale_probe(reward, c, grid, brush) == base);
  }
  CHECK_THROWS_AS(scale_probe(testutil::random_field(grid, 1), -1.0, grid, brush),
                  ParameterError);
}

TEST_CASE("symmetric reward gives a symmetric design") {
  for (int diameter : {3, 4}) {  // odd and even brush parity
    for (Symmetry sym : {Symmetry::D1Cols, Symmetry::D1Rows}) {
      DesignGrid grid(8, 10, sym, diameter);
      const Brush brush = Brush::disk(diameter);
      for (uint32_t tag = 0; tag < 10; ++tag) {
        const Field reward = testutil::random_symmetric_field(grid, 31 + diameter, tag);
        const FeasibleDesign d = generate(reward, grid, brush);
        CHECK(check_feasibility(d, brush));
        for (int i = 0; i < grid.pixel_count(); ++i)
          CHECK(d.cells[i] == d.cells[grid.mirror_index(i)]);
      }
    }
  }
}

TEST_CASE("asymmetric rewards with mirrored touches still give symmetric feasible designs") {
  DesignGrid grid(8, 10, Symmetry::D1Cols, 4);
  const Brush brush = Brush::disk(4);
  GenerateOptions relaxed;
  relaxed.check_symmetric_input = false;
  for (uint32_t tag = 0; tag < 10; ++tag) {
    const Field reward = testutil::random_field(grid, 808, tag);
    const FeasibleDesign d = generate(reward, grid, brush, relaxed);
    CHECK(check_feasibility(d, brush));
    for (int i = 0; i < grid.pixel_count(); ++i)
      CHECK(d.cells[i] == d.cells[grid.mirror_index(i)]);
  }
}

TEST_CASE("sign antisymmetry without ties") {
  DesignGrid grid(9, 7, Symmetry::None, 3);
  const Brush brush = Brush::disk(3);
  for (uint32_t tag = 0; tag < 10; ++tag) {
    const Field reward = testutil::random_field(grid, 99, tag);
    const FeasibleDesign pos = generate(reward, grid, brush);
    const FeasibleDesign neg = generate(Field(-reward), grid, brush);
    for (int i = 0; i < grid.pixel_count(); ++i)
      CHECK(int(pos.cells[i]) + int(neg.cells[i]) == 1);
  }
}

TEST_CASE("brute-force enumeration agrees with generate on tiny grids") {
  const Brush b1 = Brush::disk(1);
  CHECK(oracles::brute_feasible_enumerate(1, 1, b1).size() == 2);

  const Brush b2 = Brush::disk(2);
  CHECK(oracles::brute_feasible_enumerate(2, 2, b2).size() == 2);  // all-0 and all-1

  DesignGrid grid(3, 3, Symmetry::None, 2);
  const auto feasible_set = oracles::brute_feasible_enumerate(3, 3, b2);
  for (uint32_t tag = 0; tag < 100; ++tag) {
    const FeasibleDesign d = generate(testutil::random_field(grid, 313, tag), grid, b2);
    CHECK(std::find(feasible_set.begin(), feasible_set.end(), d) != feasible_set.end());
  }
}
