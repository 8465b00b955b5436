#include "gegd/dispatch.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "gegd/support.hpp"

namespace gegd {

namespace {

class InProcessDispatcher final : public CostDispatcher {
 public:
  InProcessDispatcher(const Problem& problem, int workers)
      : problem_(problem), workers_(std::max(1, workers)) {}

  std::vector<double> evaluate(const std::vector<CostRequest>& batch) override {
    std::vector<double> results(batch.size(),
                                std::numeric_limits<double>::quiet_NaN());
    if (batch.empty()) return results;
    const int nthreads = std::min<int>(workers_, int(batch.size()));
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= batch.size()) return;
        results[i] = eval_one(batch[i]);
      }
    };
    if (nthreads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(nthreads);
      for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    return results;
  }

 private:
  double eval_one(const CostRequest& req) const {
    for (int attempt = 0; attempt < 2; ++attempt) {
      try {
        const double v = problem_.cost(*req.design, req.fidelity);
        if (std::isfinite(v)) return v;
      } catch (const std::exception& e) {
        if (attempt == 1) warn(std::string("cost evaluation failed twice: ") + e.what());
      }
    }
    return std::numeric_limits<double>::quiet_NaN();
  }

  const Problem& problem_;
  int workers_;
};

}  // namespace

std::unique_ptr<CostDispatcher> make_inprocess_dispatcher(const Problem& problem,
                                                          int workers) {
  return std::make_unique<InProcessDispatcher>(problem, workers);
}

}  // namespace gegd
