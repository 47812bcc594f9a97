#include "pscale/error.hpp"

namespace pscale {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_model: return "InvalidModel";
    case Errc::pole_at_theta: return "PoleAtTheta";
    case Errc::convergence_failure: return "ConvergenceFailure";
    case Errc::degenerate_roots: return "DegenerateRoots";
    case Errc::domain_error: return "DomainError";
    case Errc::q_zero: return "QZero";
    case Errc::unsupported_penalty: return "UnsupportedPenalty";
    case Errc::nonpositive_drift: return "NonpositiveDrift";
    case Errc::no_solution: return "NoSolution";
    case Errc::retention_out_of_range: return "RetentionOutOfRange";
    case Errc::not_cheap: return "NotCheap";
    case Errc::sigma_unsupported: return "SigmaUnsupported";
    case Errc::horizon_required: return "HorizonRequired";
    case Errc::barrier_search: return "BarrierSearch";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void raise(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace pscale
