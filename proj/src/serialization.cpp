#include "gptlab/serialization.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "gptlab/errors.hpp"
#include "gptlab/model_zoo.hpp"

namespace gptlab::io {

namespace {

Json vector_to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vector vector_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw DomainError(std::string(what) + ": expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw DomainError(std::string(what) + ": expected an array of numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string convention_name(EffectConvention c) {
  return c == EffectConvention::normalized ? "normalized" : "restricted";
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vector_to_json(m.row(r).transpose()));
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw DomainError("matrix: expected a non-empty array of rows");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Vector row = vector_from_json(j[r], "matrix row");
    if (static_cast<std::size_t>(row.size()) != cols) throw DimensionError("matrix: ragged rows");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

Json theory_to_json(const TheorySpec& t) {
  Json j;
  j["name"] = t.name;
  j["d"] = t.d;
  j["convention"] = convention_name(t.convention);
  Json states;
  if (t.states.is_polytope()) {
    states["kind"] = "polytope";
    Json verts = Json::array();
    for (const auto& v : t.states.as_polytope().vertices) verts.push_back(vector_to_json(v.entries()));
    states["vertices"] = verts;
  } else {
    states["kind"] = "ball";
    states["ball"] = {{"d", t.states.as_ball().d}};
  }
  j["states"] = states;
  Json effects;
  if (t.effects.is_polytope_hull()) {
    effects["kind"] = "polytope_hull";
    Json gens = Json::array();
    for (const auto& g : t.effects.as_polytope_hull().generators) gens.push_back(vector_to_json(g.entries()));
    effects["generators"] = gens;
  } else {
    effects["kind"] = "ball_dual";
    effects["ball"] = {{"d", t.effects.dimension()}};
  }
  j["effects"] = effects;
  Json revs = Json::array();
  for (const auto& r : t.reversibles) revs.push_back(matrix_to_json(r.matrix()));
  j["reversibles"] = revs;
  return j;
}

TheorySpec theory_from_json(const Json& j) {
  TheorySpec t;
  t.name = field(j, "name").get<std::string>();
  t.d = field(j, "d").get<int>();
  if (j.contains("convention")) {
    const auto c = j.at("convention").get<std::string>();
    if (c == "normalized") t.convention = EffectConvention::normalized;
    else if (c == "restricted") t.convention = EffectConvention::restricted;
    else throw DomainError("unknown effect convention '" + c + "'");
  }
  const Json& states = field(j, "states");
  const auto skind = field(states, "kind").get<std::string>();
  if (skind == "polytope") {
    std::vector<GptVector> verts;
    for (const auto& v : field(states, "vertices")) verts.push_back(GptVector::state(vector_from_json(v, "vertex")));
    t.states = ConvexSet::polytope(std::move(verts));
  } else if (skind == "ball") {
    t.states = ConvexSet::ball(field(field(states, "ball"), "d").get<int>());
  } else {
    throw DomainError("unknown state space kind '" + skind + "'");
  }
  const Json& effects = field(j, "effects");
  const auto ekind = field(effects, "kind").get<std::string>();
  if (ekind == "polytope_hull") {
    std::vector<GptVector> gens;
    for (const auto& g : field(effects, "generators")) gens.push_back(GptVector::effect(vector_from_json(g, "generator")));
    t.effects = EffectSpace::polytope_hull(std::move(gens));
  } else if (ekind == "ball_dual") {
    t.effects = EffectSpace::ball_dual(field(field(effects, "ball"), "d").get<int>());
  } else {
    throw DomainError("unknown effect space kind '" + ekind + "'");
  }
  if (j.contains("reversibles"))
    for (const auto& m : j.at("reversibles")) t.reversibles.emplace_back(matrix_from_json(m));
  validate_theory(t);
  return t;
}

std::string export_theory(const std::string& name) { return theory_to_json(zoo::by_name(name)).dump(2) + "\n"; }

Json transform_to_json(const spacetime::PoincareTransform& p) {
  return {{"a", vector_to_json(p.a.entries())}, {"lambda", matrix_to_json(p.lambda.matrix())}};
}

Json transform_log(const std::vector<spacetime::PoincareTransform>& log) {
  Json a = Json::array();
  for (const auto& p : log) a.push_back(transform_to_json(p));
  return a;
}

Json report_to_json(const CheckReport& r) {
  return {{"check", r.check},
          {"anchor", r.anchor},
          {"samples", r.samples},
          {"worst_deviation", number_or_null(r.worst_deviation)},
          {"tolerance", r.tolerance},
          {"pass", r.pass}};
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header) : out_(out), width_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != width_) throw InternalError("csv: row width differs from header");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") == std::string::npos) {
      out_ << f;
      continue;
    }
    out_ << '"';
    for (char c : f) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  }
  out_ << '\n';
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw InternalError("format_double: buffer too small");
  return {buf.data(), ptr};
}

ChshScenarioSpec scenario_from_json(const Json& j) {
  ChshScenarioSpec s;
  s.id = j.value("id", std::string("scenario"));
  const Json& locals = field(j, "locals");
  if (locals.is_string()) {
    s.local_a = s.local_b = locals.get<std::string>();
  } else if (locals.is_array() && locals.size() == 2) {
    s.local_a = locals[0].get<std::string>();
    s.local_b = locals[1].get<std::string>();
  } else {
    throw DomainError("scenario '" + s.id + "': locals must be a name or a pair of names");
  }
  auto read_measurements = [&](const char* side) {
    std::vector<std::pair<int, int>> out;
    if (!j.contains("measurements") || !j.at("measurements").contains(side)) return out;
    for (const auto& m : j.at("measurements").at(side)) {
      if (m.is_number_integer()) {
        out.emplace_back(m.get<int>(), -1);
      } else if (m.is_array() && m.size() == 2) {
        out.emplace_back(m[0].get<int>(), m[1].get<int>());
      } else {
        throw DomainError("scenario '" + s.id + "': a measurement is an index or a [plus, minus] pair");
      }
    }
    return out;
  };
  s.measurements_a = read_measurements("a");
  s.measurements_b = read_measurements("b");
  if (j.contains("joint")) s.joint = j.at("joint").get<std::vector<double>>();
  s.arithmetic = j.value("arithmetic", std::string("auto"));
  if (s.arithmetic != "auto" && s.arithmetic != "exact" && s.arithmetic != "floating")
    throw DomainError("scenario '" + s.id + "': arithmetic must be auto, exact or floating");
  s.ball_resolution = j.value("ball_resolution", 0);
  return s;
}

std::vector<ChshScenarioSpec> scenarios_from_json(const Json& j) {
  std::vector<ChshScenarioSpec> out;
  if (j.is_object() && j.contains("scenarios")) {
    for (const auto& s : j.at("scenarios")) out.push_back(scenario_from_json(s));
  } else {
    out.push_back(scenario_from_json(j));
  }
  return out;
}

namespace {

std::vector<BinaryMeasurement> measurements_from_indices(const TheorySpec& t, const std::vector<std::pair<int, int>>& idx,
                                                         const std::string& id) {
  const auto ext = t.effects.extremal();
  auto at = [&](int i) -> const GptVector& {
    if (i < 0 || static_cast<std::size_t>(i) >= ext.size())
      throw DomainError("scenario '" + id + "': effect index " + std::to_string(i) + " out of range for '" + t.name + "'");
    return ext[static_cast<std::size_t>(i)];
  };
  std::vector<BinaryMeasurement> out;
  for (const auto& [plus, minus] : idx) {
    if (minus < 0) out.push_back(BinaryMeasurement::from_effect(at(plus)));
    else out.push_back({at(plus), at(minus)});
  }
  return out;
}

}  // namespace

ChshScenarioResult run_scenario(const ChshScenarioSpec& spec) {
  const TheoryRef a = share(zoo::by_name(spec.local_a));
  const TheoryRef b = share(zoo::by_name(spec.local_b));
  ChshOptions opts;
  if (spec.ball_resolution > 0) opts.ball_resolution = spec.ball_resolution;
  const bool rational = exact::has_rational_realization(a->name) && exact::has_rational_realization(b->name);
  const bool exact = spec.arithmetic == "exact" || (spec.arithmetic == "auto" && rational);
  opts.arithmetic = exact ? lp::Arithmetic::exact : lp::Arithmetic::floating;

  ChshScenarioResult res;
  res.id = spec.id;
  res.local_a = spec.local_a;
  res.local_b = spec.local_b;

  const bool explicit_families = !spec.measurements_a.empty() || !spec.measurements_b.empty();
  const auto fa = spec.measurements_a.empty() ? default_measurements(*a, opts.ball_family)
                                              : measurements_from_indices(*a, spec.measurements_a, spec.id);
  const auto fb = spec.measurements_b.empty() ? default_measurements(*b, opts.ball_family)
                                              : measurements_from_indices(*b, spec.measurements_b, spec.id);

  JointState phi;
  std::optional<ChshScenario> scenario;
  exact::RationalVector exact_phi;
  if (spec.joint) {
    const auto& v = *spec.joint;
    phi = JointState::unchecked(Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())), a, b);
    // Best pair of measurements per side for the given state.
    bool have = false;
    for (const auto& a0 : fa)
      for (const auto& a1 : fa)
        for (const auto& b0 : fb)
          for (const auto& b1 : fb) {
            ChshScenario sc{a0, a1, b0, b1, phi};
            const double s = chsh_value(sc);
            if (!have || s > res.chsh) {
              res.chsh = s;
              scenario = sc;
              have = true;
            }
          }
  } else {
    const auto opt = explicit_families ? maximize_chsh(a, b, fa, fb, opts) : maximize_chsh(a, b, opts);
    phi = opt.witness;
    res.chsh = opt.value;
    res.chsh_exact = opt.exact_value;
    res.lp_count = opt.lp_count;
    scenario = opt.scenario();
    exact_phi = opt.exact_witness;
  }

  res.in_max_tensor = in_max_tensor(phi);
  res.no_signalling = no_signalling_check(phi);
  if (!exact_phi.empty()) {
    const auto sep = is_separable_exact(exact_phi, exact::rational_realization(a->name),
                                        exact::rational_realization(b->name));
    res.verdict = sep.kind == Separability::entangled && !sep.certificate_verified ? "inconclusive"
                                                                                    : to_string(sep.kind);
  } else if (!res.in_max_tensor) {
    res.verdict = "invalid";
  } else {
    SeparabilityOptions so;
    if (spec.ball_resolution > 0) so.ball_resolution = spec.ball_resolution;
    res.verdict = to_string(certify_entanglement(phi, scenario, so).kind);
  }
  return res;
}

std::vector<std::string> chsh_csv_header() {
  return {"scenario", "local_a", "local_b", "chsh", "chsh_exact", "verdict", "in_max_tensor", "no_signalling", "lp_count"};
}

std::vector<std::string> chsh_csv_row(const ChshScenarioResult& r) {
  return {r.id,
          r.local_a,
          r.local_b,
          format_double(r.chsh),
          r.chsh_exact,
          r.verdict,
          r.in_max_tensor ? "true" : "false",
          r.no_signalling ? "true" : "false",
          std::to_string(r.lp_count)};
}

Json chsh_result_to_json(const ChshScenarioResult& r) {
  return {{"scenario", r.id},
          {"local_a", r.local_a},
          {"local_b", r.local_b},
          {"chsh", r.chsh},
          {"chsh_exact", r.chsh_exact},
          {"verdict", r.verdict},
          {"in_max_tensor", r.in_max_tensor},
          {"no_signalling", r.no_signalling},
          {"lp_count", r.lp_count}};
}

}  // namespace gptlab::io
