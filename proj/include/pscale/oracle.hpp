#pragma once

#include <string>
#include <vector>

#include "pscale/levy_model.hpp"
#include "pscale/mc.hpp"

namespace pscale {

/// Pairs a closed-form law with the simulation that estimates it.
struct OracleQuery {
  std::string name;
  double q = 0.0;
  double x = 0.0;
  double a = 0.0;  // lower level for two_sided; the process is shifted by -a
  double b = 1.0;
  double theta = 0.0;
  double vartheta = 0.0;
  double k = 0.0;
  double r = 0.0;      // Parisian observation rate
  double r_red = 0.0;  // time_in_red rate; b is then the level where the path is stopped
};

struct OracleCase {
  PathConfig config;
  Functional functional;
  double analytic = 0.0;
};

/// Names accepted by make_oracle_case.
const std::vector<std::string>& oracle_names();

/// Throws DomainError for unknown names (listing the valid ones).
OracleCase make_oracle_case(const LevyModel& model, const OracleQuery& query);

}  // namespace pscale
