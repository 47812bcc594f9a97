#include "pscale/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pscale/error.hpp"

namespace pscale {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::invalid_model, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    raise(Errc::invalid_model, std::string("malformed JSON: ") + e.what());
  }
}

double number(const json& obj, const char* key, double fallback, bool required) {
  if (!obj.contains(key)) {
    if (required) raise(Errc::invalid_model, std::string("missing field '") + key + "'");
    return fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_number()) raise(Errc::invalid_model, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::vector<ClaimPhase> phases_of(const json& obj) {
  std::vector<ClaimPhase> phases;
  if (!obj.contains("phases")) return phases;
  const json& arr = obj.at("phases");
  if (!arr.is_array()) raise(Errc::invalid_model, "'phases' must be an array");
  for (const auto& ph : arr) {
    if (!ph.is_object()) raise(Errc::invalid_model, "each phase must be an object");
    phases.push_back({number(ph, "weight", 0.0, true), number(ph, "rate", 0.0, true)});
  }
  return phases;
}

LevyModel model_of(const json& obj) {
  if (!obj.is_object()) raise(Errc::invalid_model, "model must be a JSON object");
  return LevyModel(number(obj, "c", 0.0, true), number(obj, "sigma2", 0.0, false), number(obj, "lambda", 0.0, false),
                   phases_of(obj));
}

}  // namespace

LevyModel parse_model(const std::string& json_text) { return model_of(parse_text(json_text)); }

LevyModel load_model(const std::string& path) { return parse_model(read_file(path)); }

std::string model_to_json(const LevyModel& model) {
  json phases = json::array();
  for (const auto& ph : model.phases()) phases.push_back({{"weight", ph.weight}, {"rate", ph.rate}});
  json obj = {{"c", model.premium()},
              {"sigma2", model.sigma2()},
              {"lambda", model.intensity()},
              {"phases", phases}};
  return obj.dump();
}

NetworkSpec parse_network(const std::string& json_text) {
  const json obj = parse_text(json_text);
  if (!obj.is_object()) raise(Errc::invalid_model, "network spec must be a JSON object");
  NetworkSpec spec;
  spec.q = number(obj, "q", 0.0, true);
  if (!obj.contains("cb") || !obj.at("cb").is_object()) raise(Errc::invalid_model, "missing object 'cb'");
  const json& cb = obj.at("cb");
  spec.cb_premium = number(cb, "c", 0.0, true);
  spec.cb_intensity = number(cb, "lambda", 0.0, false);
  spec.cb_phases = phases_of(cb);
  if (!obj.contains("subsidiaries") || !obj.at("subsidiaries").is_array())
    raise(Errc::invalid_model, "missing array 'subsidiaries'");
  for (const auto& s : obj.at("subsidiaries")) {
    if (!s.is_object()) raise(Errc::invalid_model, "each subsidiary must be an object");
    spec.subsidiaries.push_back({model_of(s), number(s, "alpha", 0.0, true)});
  }
  return spec;
}

NetworkSpec load_network(const std::string& path) { return parse_network(read_file(path)); }

}  // namespace pscale
