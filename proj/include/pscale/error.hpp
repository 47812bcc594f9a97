#pragma once

#include <stdexcept>
#include <string>

namespace pscale {

enum class Errc {
  invalid_model,
  pole_at_theta,
  convergence_failure,
  degenerate_roots,
  domain_error,
  q_zero,
  unsupported_penalty,
  nonpositive_drift,
  no_solution,
  retention_out_of_range,
  not_cheap,
  sigma_unsupported,
  horizon_required,
  barrier_search,
};

const char* to_string(Errc code) noexcept;

/// Single exception type for the library; `code()` tells callers which
/// contract was violated.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& message);

}  // namespace pscale
