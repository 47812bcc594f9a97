#pragma once

#include <string>

#include "pscale/levy_model.hpp"
#include "pscale/network.hpp"

namespace pscale {

/// Model JSON: {"c": c, "sigma2": sigma^2, "lambda": lambda,
///              "phases": [{"weight": p, "rate": mu}, ...]}.
/// Missing "sigma2"/"lambda"/"phases" default to 0/0/[]. Errors are InvalidModel.
LevyModel parse_model(const std::string& json_text);
LevyModel load_model(const std::string& path);
std::string model_to_json(const LevyModel& model);

/// Network JSON:
///   {"q": q, "cb": {"c": c0, "lambda": l0, "phases": [...]},
///    "subsidiaries": [{"c": ci, "lambda": li, "phases": [...], "alpha": ai}, ...]}
NetworkSpec parse_network(const std::string& json_text);
NetworkSpec load_network(const std::string& path);

}  // namespace pscale
