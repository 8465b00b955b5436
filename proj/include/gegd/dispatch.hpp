#pragma once

#include <memory>
#include <vector>

#include "gegd/problem.hpp"

namespace gegd {

struct CostRequest {
  const FeasibleDesign* design = nullptr;
  Fidelity fidelity = Fidelity::High;
};

// Fans a batch of cost evaluations out to workers and joins the results in
// request order, so downstream reductions are identical for any worker count.
// A request that fails is retried once; a second failure yields NaN in its
// slot (callers drop the member). Backend-level death is a BackendError.
class CostDispatcher {
 public:
  virtual ~CostDispatcher() = default;
  virtual std::vector<double> evaluate(const std::vector<CostRequest>& batch) = 0;
};

// Evaluates through Problem::cost on an internal thread pool.
std::unique_ptr<CostDispatcher> make_inprocess_dispatcher(const Problem& problem,
                                                          int workers);

}  // namespace gegd
