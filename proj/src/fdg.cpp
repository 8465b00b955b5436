#include "gegd/fdg.hpp"

#include <algorithm>
#include <deque>
#include <queue>

namespace gegd {

namespace {

enum : int8_t { kUnassigned = 0, kSolid = 1, kVoid = 2 };

// Placement anchors: odd diameters sit on every grid pixel with the disk
// clipped at the boundary; even diameters sit on interior pixel corners (the
// corner up-left of the anchor pixel), so anchors start at row/col 1. A 2x2
// grid with brush 2 therefore admits exactly one placement.
inline int anchor_lo(const Brush& brush) { return brush.diameter % 2 == 0 ? 1 : 0; }

struct HeapEntry {
  double score;
  int center;
  uint8_t phase;  // 0 solid, 1 void
};

// Max score first; ties prefer the lower center index, then solid.
struct EntryLess {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.score != b.score) return a.score < b.score;
    if (a.center != b.center) return a.center > b.center;
    return a.phase > b.phase;
  }
};

// Incremental state of one greedy generation. Scores, touch validity, and
// per-pixel cover counts are maintained exactly; the heap is lazy (stale
// entries are skipped when popped).
struct TouchEngine {
  const DesignGrid& grid;
  const Brush& brush;
  const Field& reward;
  int n;
  int alo;

  // CSR adjacency: pixels of each anchor's clipped disk, and anchors whose
  // disk covers each pixel. Anchors are indexed by their pixel index; illegal
  // anchor slots stay empty.
  std::vector<int> disk_off, disk_px;
  std::vector<int> cover_off, cover_ctr;
  std::vector<uint8_t> legal;

  std::vector<int8_t> state;
  std::vector<uint8_t> valid_solid, valid_void;
  std::vector<int> unassigned_in_disk;
  std::vector<double> disk_sum;  // reward sum over unassigned disk pixels
  std::vector<int> cover_solid, cover_void;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, EntryLess> heap;
  std::deque<int> forced;
  int assigned = 0;

  TouchEngine(const Field& reward_, const DesignGrid& grid_, const Brush& brush_)
      : grid(grid_), brush(brush_), reward(reward_), n(grid_.pixel_count()),
        alo(anchor_lo(brush_)) {
    build_adjacency();
    state.assign(n, kUnassigned);
    valid_solid = legal;
    valid_void = legal;
    unassigned_in_disk.assign(n, 0);
    disk_sum.assign(n, 0.0);
    cover_solid.assign(n, 0);
    cover_void.assign(n, 0);
    for (int c = 0; c < n; ++c) {
      double s = 0.0;
      for (int k = disk_off[c]; k < disk_off[c + 1]; ++k) s += reward[disk_px[k]];
      disk_sum[c] = s;
      unassigned_in_disk[c] = disk_off[c + 1] - disk_off[c];
    }
    for (int p = 0; p < n; ++p) {
      const int deg = cover_off[p + 1] - cover_off[p];
      cover_solid[p] = deg;
      cover_void[p] = deg;
      if (deg == 0) forced.push_back(p);  // cannot happen for disk brushes
    }
    for (int c = 0; c < n; ++c)
      if (legal[c]) {
        heap.push({disk_sum[c], c, 0});
        heap.push({-disk_sum[c], c, 1});
      }
  }

  void build_adjacency() {
    const int R = grid.rows, C = grid.cols;
    legal.assign(n, 0);
    disk_off.assign(n + 1, 0);
    std::vector<int> cover_deg(n, 0);
    for (int r = alo; r < R; ++r)
      for (int c = alo; c < C; ++c) {
        legal[r * C + c] = 1;
        int cnt = 0;
        for (auto [dy, dx] : brush.mask) {
          const int rr = r + dy, cc = c + dx;
          if (rr >= 0 && rr < R && cc >= 0 && cc < C) {
            ++cnt;
            ++cover_deg[rr * C + cc];
          }
        }
        disk_off[r * C + c + 1] = cnt;
      }
    for (int i = 0; i < n; ++i) disk_off[i + 1] += disk_off[i];
    disk_px.resize(disk_off[n]);
    cover_off.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) cover_off[i + 1] = cover_off[i] + cover_deg[i];
    cover_ctr.resize(cover_off[n]);
    std::vector<int> fill(n, 0);
    for (int r = alo; r < R; ++r)
      for (int c = alo; c < C; ++c) {
        const int ctr = r * C + c;
        int k = disk_off[ctr];
        for (auto [dy, dx] : brush.mask) {
          const int rr = r + dy, cc = c + dx;
          if (rr >= 0 && rr < R && cc >= 0 && cc < C) {
            const int p = rr * C + cc;
            disk_px[k++] = p;
            cover_ctr[cover_off[p] + fill[p]++] = ctr;
          }
        }
      }
  }

  // Anchor whose disk is the mirror image of this anchor's disk. For even
  // diameters the corner-centered disk mirrors onto the anchor at
  // cols - a_c (rows - a_r), which stays inside the legal anchor range.
  int touch_twin(int anchor) const {
    const int r = anchor / grid.cols, c = anchor % grid.cols;
    const bool even = brush.diameter % 2 == 0;
    switch (grid.symmetry) {
      case Symmetry::None: return anchor;
      case Symmetry::D1Rows: return (even ? grid.rows - r : grid.rows - 1 - r) * grid.cols + c;
      case Symmetry::D1Cols: return r * grid.cols + (even ? grid.cols - c : grid.cols - 1 - c);
    }
    return anchor;
  }

  double current_score(int center, uint8_t phase) const {
    return phase == 0 ? disk_sum[center] : -disk_sum[center];
  }

  bool phase_valid(int center, uint8_t phase) const {
    return phase == 0 ? valid_solid[center] : valid_void[center];
  }

  void push_center(int c) {
    if (unassigned_in_disk[c] == 0) return;
    if (valid_solid[c]) heap.push({disk_sum[c], c, 0});
    if (valid_void[c]) heap.push({-disk_sum[c], c, 1});
  }

  void invalidate(int c, uint8_t phase) {
    if (phase == 0) {
      if (!valid_solid[c]) return;
      valid_solid[c] = 0;
      for (int k = disk_off[c]; k < disk_off[c + 1]; ++k) {
        const int q = disk_px[k];
        if (--cover_solid[q] == 0 && state[q] == kUnassigned) forced.push_back(q);
      }
    } else {
      if (!valid_void[c]) return;
      valid_void[c] = 0;
      for (int k = disk_off[c]; k < disk_off[c + 1]; ++k) {
        const int q = disk_px[k];
        if (--cover_void[q] == 0 && state[q] == kUnassigned) forced.push_back(q);
      }
    }
  }

  void assign_pixel(int p, int8_t phase) {
    state[p] = phase;
    ++assigned;
    const double rp = reward[p];
    for (int k = cover_off[p]; k < cover_off[p + 1]; ++k) {
      const int c = cover_ctr[k];
      disk_sum[c] -= rp;
      --unassigned_in_disk[c];
      push_center(c);
    }
    // A solid pixel kills void touches covering it, and vice versa.
    const uint8_t dead = (phase == kSolid) ? 1 : 0;
    for (int k = cover_off[p]; k < cover_off[p + 1]; ++k) invalidate(cover_ctr[k], dead);
  }

  // Assigns the whole symmetry orbit so the pixel state stays mirror
  // symmetric even when the reward is not.
  void assign_orbit(int p, int8_t phase) {
    if (state[p] == kUnassigned) assign_pixel(p, phase);
    const int m = grid.mirror_index(p);
    if (m != p && state[m] == kUnassigned) assign_pixel(m, phase);
  }

  double orbit_reward(int p) const {
    const int m = grid.mirror_index(p);
    return m == p ? reward[p] : reward[p] + reward[m];
  }

  // A pixel that can no longer be reached by one phase must take the other.
  // Setting just the pixel would leave it without a covering monochrome disk,
  // so the forced phase is applied as an actual touch: the best-scoring valid
  // touch of that phase whose disk contains the pixel. Only a pixel reachable
  // by neither phase falls back to a bare orbit assignment by reward sign.
  void process_forced() {
    while (!forced.empty()) {
      const int p = forced.front();
      forced.pop_front();
      if (state[p] != kUnassigned) continue;
      const bool no_solid = cover_solid[p] == 0;
      const bool no_void = cover_void[p] == 0;
      if (!no_solid && !no_void) continue;
      if (no_solid && no_void) {
        assign_orbit(p, orbit_reward(p) > 0.0 ? kSolid : kVoid);
        continue;
      }
      const uint8_t phase = no_solid ? 1 : 0;
      int best = -1;
      double best_score = 0.0;
      for (int k = cover_off[p]; k < cover_off[p + 1]; ++k) {
        const int c = cover_ctr[k];
        if (!phase_valid(c, phase)) continue;
        const double s = current_score(c, phase);
        if (best < 0 || s > best_score) {
          best = c;
          best_score = s;
        }
      }
      apply_touch(best, phase);
    }
  }

  void apply_touch(int center, uint8_t phase) {
    const int8_t ph = (phase == 0) ? kSolid : kVoid;
    const int twin = touch_twin(center);
    const int ctrs[2] = {center, twin};
    const int nctr = (twin == center) ? 1 : 2;
    for (int ci = 0; ci < nctr; ++ci) {
      const int ctr = ctrs[ci];
      for (int k = disk_off[ctr]; k < disk_off[ctr + 1]; ++k) {
        const int q = disk_px[k];
        if (state[q] == kUnassigned) assign_pixel(q, ph);
      }
    }
  }

  FeasibleDesign run() {
    while (assigned < n) {
      process_forced();
      if (assigned >= n) break;
      bool applied = false;
      while (!heap.empty()) {
        const HeapEntry e = heap.top();
        heap.pop();
        if (!phase_valid(e.center, e.phase) || unassigned_in_disk[e.center] == 0 ||
            e.score != current_score(e.center, e.phase))
          continue;  // stale
        apply_touch(e.center, e.phase);
        applied = true;
        break;
      }
      if (!applied && forced.empty() && assigned < n)
        throw NumericalError("feasible design generator stalled");  // unreachable by construction
    }
    FeasibleDesign d;
    d.rows = grid.rows;
    d.cols = grid.cols;
    d.cells.resize(n);
    for (int i = 0; i < n; ++i) d.cells[i] = (state[i] == kSolid) ? 1 : 0;
    return d;
  }
};

}  // namespace

FeasibleDesign generate(const Field& reward, const DesignGrid& grid, const Brush& brush,
                        const GenerateOptions& opts) {
  if (reward.size() != grid.pixel_count())
    throw DimensionError("reward length does not match grid");
  if (brush.diameter != grid.min_feature)
    throw ContractError("brush diameter must equal the grid's minimum feature size");
  if (opts.check_symmetric_input && grid.symmetry != Symmetry::None &&
      !is_symmetric(reward, grid))
    throw ContractError("reward field is not symmetric under the grid symmetry");
  TouchEngine engine(reward, grid, brush);
  return engine.run();
}

bool check_feasibility(const FeasibleDesign& design, const Brush& brush) {
  const int R = design.rows, C = design.cols, n = R * C;
  const int lo = anchor_lo(brush);
  std::vector<uint8_t> covered(n);
  for (uint8_t phase = 0; phase <= 1; ++phase) {
    std::fill(covered.begin(), covered.end(), uint8_t{0});
    for (int r = lo; r < R; ++r)
      for (int c = lo; c < C; ++c) {
        bool mono = true;
        for (auto [dy, dx] : brush.mask) {
          const int rr = r + dy, cc = c + dx;
          if (rr < 0 || rr >= R || cc < 0 || cc >= C) continue;
          if (design.cells[rr * C + cc] != phase) {
            mono = false;
            break;
          }
        }
        if (!mono) continue;
        for (auto [dy, dx] : brush.mask) {
          const int rr = r + dy, cc = c + dx;
          if (rr >= 0 && rr < R && cc >= 0 && cc < C) covered[rr * C + cc] = 1;
        }
      }
    for (int i = 0; i < n; ++i)
      if (design.cells[i] == phase && !covered[i]) return false;
  }
  return true;
}

FeasibleDesign scale_probe(const Field& reward, double c, const DesignGrid& grid,
                           const Brush& brush, const GenerateOptions& opts) {
  if (c <= 0.0) throw ParameterError("scale factor must be positive");
  return generate(Field(c * reward), grid, brush, opts);
}

}  // namespace gegd
