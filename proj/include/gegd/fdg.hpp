#pragma once

#include <cstdint>
#include <vector>

#include "gegd/grid.hpp"

namespace gegd {

// Binary design on the full grid. Feasible means: every solid pixel lies in
// some brush-disk placement that is entirely solid, and every void pixel in
// one that is entirely void (disks are clipped at the grid boundary, centers
// anywhere on the grid).
struct FeasibleDesign {
  int rows = 0;
  int cols = 0;
  std::vector<uint8_t> cells;  // row-major, 0 = void, 1 = solid

  int pixel_count() const { return rows * cols; }
  bool operator==(const FeasibleDesign&) const = default;
};

struct GenerateOptions {
  // The mean reward is symmetric by construction, but sampled perturbations
  // are not; the ensemble path disables this check and relies on mirrored
  // touches to keep the output symmetric.
  bool check_symmetric_input = true;
};

// Greedy touch-based generator. Repeatedly applies the highest-scoring valid
// solid/void touch (score = signed reward sum over the still-unassigned disk
// pixels), applying each touch at all mirror positions of its center. Pixels
// that become unreachable by one phase are force-assigned to the other.
// Deterministic: ties break on lower center index, then solid before void.
FeasibleDesign generate(const Field& reward, const DesignGrid& grid, const Brush& brush,
                        const GenerateOptions& opts = {});

// Independent morphological coverage test of the feasibility invariant.
bool check_feasibility(const FeasibleDesign& design, const Brush& brush);

// generate(c * reward); the greedy depends only on score ordering, so the
// result is identical to generate(reward) for any c > 0.
FeasibleDesign scale_probe(const Field& reward, double c, const DesignGrid& grid,
                           const Brush& brush, const GenerateOptions& opts = {});

}  // namespace gegd
