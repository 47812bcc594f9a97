#include "pscale/oracle.hpp"

#include <functional>

#include "pscale/control.hpp"
#include "pscale/error.hpp"
#include "pscale/passage_laws.hpp"

namespace pscale {

namespace {

using Builder = std::function<OracleCase(const LevyModel&, const OracleQuery&)>;

struct Entry {
  const char* name;
  Builder build;
};

OracleCase make(const LevyModel& m, const OracleQuery& q, UpperMode up, LowerMode low, FunctionalKind kind,
                double analytic) {
  OracleCase c{PathConfig{m, q.x, up, q.b, low, q.r, q.q, std::nullopt, 0.0, false}, Functional{}, analytic};
  c.functional.kind = kind;
  c.functional.theta = q.theta;
  c.functional.vartheta = q.vartheta;
  c.functional.k = q.k;
  c.functional.r_red = q.r_red;
  return c;
}

const std::vector<Entry>& table() {
  using U = UpperMode;
  using L = LowerMode;
  using F = FunctionalKind;
  static const std::vector<Entry> entries = {
      {"two_sided",
       [](const LevyModel& m, const OracleQuery& q) {
         OracleQuery s = q;  // shift so that the lower level sits at 0
         s.x = q.x - q.a;
         s.b = q.b - q.a;
         s.theta = 0.0;
         return make(m, s, U::absorb, L::classical_absorb, F::up_exit,
                     two_sided_exit(ScaleContext(m, q.q), q.x, q.a, q.b));
       }},
      {"severity_absorbed",
       [](const LevyModel& m, const OracleQuery& q) {
         return make(m, q, U::absorb, L::classical_absorb, F::severity,
                     severity_absorbed(ScaleContext(m, q.q), q.x, q.b, q.theta));
       }},
      {"severity_reflected",
       [](const LevyModel& m, const OracleQuery& q) {
         return make(m, q, U::reflect, L::classical_absorb, F::severity,
                     severity_reflected(ScaleContext(m, q.q), q.x, q.b, q.theta));
       }},
      {"ruin_transform",
       [](const LevyModel& m, const OracleQuery& q) {
         return make(m, q, U::none, L::classical_absorb, F::severity,
                     severity_infinite(ScaleContext(m, q.q), q.x, q.theta, InfiniteHorizonMode::ruin));
       }},
      {"bailouts_to_level",
       [](const LevyModel& m, const OracleQuery& q) {
         return make(m, q, U::absorb, L::classical_reflect, F::up_exit,
                     bailouts_to_level(ScaleContext(m, q.q), q.x, q.b, q.theta));
       }},
      {"dividends_penalty",
       [](const LevyModel& m, const OracleQuery& q) {
         return make(m, q, U::reflect, L::classical_absorb, F::joint,
                     dividends_penalty_classic(ScaleContext(m, q.q), q.x, q.b, q.theta, q.vartheta));
       }},
      {"time_in_red",
       [](const LevyModel& m, const OracleQuery& q) {
         OracleQuery s = q;
         s.q = 0.0;
         return make(m, s, U::absorb, L::none, F::time_in_red, time_in_red(ScaleContext(m, 0.0), q.x, q.r_red));
       }},
      {"vf_dividends",
       [](const LevyModel& m, const OracleQuery& q) {
         return make(m, q, U::reflect, L::classical_absorb, F::dividends,
                     vf_dividends_classic(ScaleContext(m, q.q), q.x, q.b));
       }},
      {"slg_classic",
       [](const LevyModel& m, const OracleQuery& q) {
         return make(m, q, U::reflect, L::classical_reflect, F::slg_value,
                     value_slg_classic(ScaleContext(m, q.q), q.x, q.b, q.k));
       }},
      {"parisian_up_exit",
       [](const LevyModel& m, const OracleQuery& q) {
         return make(m, q, U::absorb, L::parisian_reflect, F::up_exit,
                     parisian_up_exit(ParisianContext(m, q.q, q.r), q.x, q.b, q.theta));
       }},
      {"parisian_severity",
       [](const LevyModel& m, const OracleQuery& q) {
         return make(m, q, U::absorb, L::parisian_absorb, F::severity,
                     parisian_severity(ParisianContext(m, q.q, q.r), q.x, q.b, q.theta));
       }},
      {"parisian_dividends_penalty",
       [](const LevyModel& m, const OracleQuery& q) {
         return make(m, q, U::reflect, L::parisian_absorb, F::joint,
                     parisian_dividends_penalty(ParisianContext(m, q.q, q.r), q.x, q.b, q.theta, q.vartheta));
       }},
      {"parisian_vf_div",
       [](const LevyModel& m, const OracleQuery& q) {
         return make(m, q, U::reflect, L::parisian_absorb, F::dividends,
                     value_parisian(ParisianContext(m, q.q, q.r), q.x, q.b, ParisianPart::vf_div));
       }},
      {"parisian_vf_bail",
       [](const LevyModel& m, const OracleQuery& q) {
         return make(m, q, U::absorb, L::parisian_reflect, F::bailouts,
                     value_parisian(ParisianContext(m, q.q, q.r), q.x, q.b, ParisianPart::vf_bail));
       }},
      {"parisian_vs_div",
       [](const LevyModel& m, const OracleQuery& q) {
         return make(m, q, U::reflect, L::parisian_reflect, F::dividends,
                     value_parisian(ParisianContext(m, q.q, q.r), q.x, q.b, ParisianPart::vs_div));
       }},
      {"parisian_vs_div_theta",
       [](const LevyModel& m, const OracleQuery& q) {
         return make(m, q, U::reflect, L::parisian_reflect, F::dividends_killed,
                     value_parisian(ParisianContext(m, q.q, q.r), q.x, q.b, ParisianPart::vs_div_theta, q.theta));
       }},
      {"parisian_vs_bail",
       [](const LevyModel& m, const OracleQuery& q) {
         return make(m, q, U::reflect, L::parisian_reflect, F::bailouts,
                     value_parisian(ParisianContext(m, q.q, q.r), q.x, q.b, ParisianPart::vs_bail));
       }},
      {"slg_parisian",
       [](const LevyModel& m, const OracleQuery& q) {
         return make(m, q, U::reflect, L::parisian_reflect, F::slg_value,
                     slg_parisian_value(ParisianContext(m, q.q, q.r), q.x, q.b, q.k));
       }},
  };
  return entries;
}

}  // namespace

const std::vector<std::string>& oracle_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : table()) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

OracleCase make_oracle_case(const LevyModel& model, const OracleQuery& query) {
  for (const auto& e : table())
    if (query.name == e.name) return e.build(model, query);
  std::string msg = "unknown check '" + query.name + "'; valid checks:";
  for (const auto& n : oracle_names()) msg += " " + n;
  raise(Errc::domain_error, msg);
}

}  // namespace pscale
