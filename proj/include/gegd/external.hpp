#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gegd/dispatch.hpp"

namespace gegd {

// External cost backend: one child process speaking line-delimited JSON on
// stdin/stdout. Requests:
//   {"id":N,"fidelity":"hi"|"lo","design":"0101...","rows":R,"cols":C}
// Responses (any order): {"id":N,"cost":X} or {"id":N,"error":"..."}.
// On child death the process is restarted once and outstanding requests are
// replayed; a second death aborts the run.
std::unique_ptr<CostDispatcher> make_external_dispatcher(std::vector<std::string> command);

// A Problem view over an external dispatcher, for baselines that take single
// costs (no gradient capabilities).
class ExternalProblem final : public Problem {
 public:
  ExternalProblem(CostDispatcher& dispatcher, bool lowfi)
      : dispatcher_(dispatcher), lowfi_(lowfi) {}
  double cost(const FeasibleDesign& design, Fidelity fidelity) const override;
  bool has_lowfi() const override { return lowfi_; }

 private:
  CostDispatcher& dispatcher_;
  bool lowfi_;
};

}  // namespace gegd
