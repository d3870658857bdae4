#include "foliate/document.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "foliate/error.hpp"

namespace foliate {
namespace {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& r) { return r.to_string(); }

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(rational_json(r));
  return out;
}

Json epsilon_json(const MetricFrame& frame) {
  Json out = Json::array();
  for (std::size_t i = 0; i < frame.dim(); ++i) out.push_back(frame.epsilon(i));
  return out;
}

Json params_json(const std::map<std::string, Rational>& params) {
  Json out = Json::object();
  for (const auto& [name, value] : params) out[name] = rational_json(value);
  return out;
}

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ParseError(field + ": " + message);
}

std::size_t read_index(const Json& node, const std::string& field, std::size_t dim) {
  if (!node.is_number_integer()) fail(field, "expected an integer index");
  const auto value = node.get<std::int64_t>();
  if (value < 0 || static_cast<std::uint64_t>(value) >= dim) {
    fail(field, "index " + std::to_string(value) + " out of range [0, " + std::to_string(dim) + ")");
  }
  return static_cast<std::size_t>(value);
}

Rational read_rational(const Json& node, const std::string& field) {
  if (node.is_number_integer()) {
    if (node.is_number_unsigned() && node.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      fail(field, "integer out of range; write it as a string");
    }
    return Rational(node.get<std::int64_t>());
  }
  if (node.is_number_float()) fail(field, "floating-point value; write exact rationals as \"p/q\" strings");
  if (!node.is_string()) fail(field, "expected a rational string \"p/q\"");
  try {
    return Rational::parse(node.get<std::string>());
  } catch (const std::exception& e) {
    fail(field, e.what());
  }
}

const Json& require(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) fail(key, "missing required field");
  return *it;
}

std::string syntax_error_location(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

Json case_json(const CaseRecord& c) {
  Json out;
  out["draw"] = c.draw;
  out["epsilon"] = epsilon_json(c.spec.signature());
  out["params"] = params_json(c.spec.params());
  out["geometric"] = {{"conformal", c.conformal},
                      {"semiRiemannian", c.semi_riemannian},
                      {"minimal", c.minimal},
                      {"totallyGeodesic", c.totally_geodesic}};
  out["closedForm"] = {{"semiRiemannian", c.expected_semi_riemannian},
                       {"minimal", c.expected_minimal},
                       {"totallyGeodesic", c.expected_totally_geodesic}};
  out["notes"] = c.notes;
  return out;
}

}  // namespace

std::string format_combination(const Vector& v, const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    const bool negative = v[i].sign() < 0;
    const Rational magnitude = v[i].abs();
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (magnitude != Rational(1)) out += magnitude.to_string() + " ";
    out += i < labels.size() ? labels[i] : "e" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::string serialize_setup(const FoliationSetup& setup, const std::optional<FamilySpec>& spec) {
  const std::size_t n = setup.dim();
  Json doc;
  doc["dim"] = n;
  doc["epsilon"] = epsilon_json(setup.frame());
  Json brackets = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (setup.tensor().terms(i, j).empty()) continue;
      brackets.push_back({{"i", i}, {"j", j}, {"coeffs", vector_json(setup.tensor().bracket_basis(i, j))}});
    }
  }
  doc["brackets"] = std::move(brackets);
  doc["vertical"] = setup.vertical();
  doc["horizontal"] = setup.horizontal();

  Json meta;
  meta["basis"] = setup.labels();
  if (spec) {
    meta["family"] = family_name(spec->id());
    meta["params"] = params_json(spec->params());
    const auto theta = closed_form_theta(*spec);
    const auto vertical = family_vertical(spec->id());
    const auto [x, y] = family_horizontal(spec->id());
    Json annotated = Json::array();
    for (std::size_t k = 0; k < theta.size() && k < vertical.size(); ++k) {
      annotated.push_back({{"name", "theta" + std::to_string(k + 1)},
                           {"along", setup.label(vertical[k])},
                           {"value", rational_json(theta[k])}});
    }
    meta["theta"] = std::move(annotated);
    meta["xyBracket"] = "[" + setup.label(x) + "," + setup.label(y) + "] = " +
                        format_combination(setup.tensor().bracket_basis(x, y), setup.labels());
  }
  doc["meta"] = std::move(meta);
  return doc.dump(2) + "\n";
}

FoliationSetup parse_setup(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("syntax error at " + syntax_error_location(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                     e.what());
  }
  if (!doc.is_object()) fail("document", "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "dim" && key != "epsilon" && key != "brackets" && key != "vertical" && key != "horizontal" &&
        key != "meta") {
      fail(key, "unknown field");
    }
  }

  const Json& dim_node = require(doc, "dim");
  if (!dim_node.is_number_integer() || dim_node.get<std::int64_t>() < 3 || dim_node.get<std::int64_t>() > 64) {
    fail("dim", "expected an integer between 3 and 64");
  }
  const auto n = static_cast<std::size_t>(dim_node.get<std::int64_t>());

  const Json& eps_node = require(doc, "epsilon");
  if (!eps_node.is_array() || eps_node.size() != n) fail("epsilon", "expected an array of " + std::to_string(n) + " entries");
  std::vector<int> eps;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = eps_node[i];
    if (!e.is_number_integer() || (e.get<std::int64_t>() != 1 && e.get<std::int64_t>() != -1)) {
      fail(index_path("epsilon", i), "expected +1 or -1");
    }
    eps.push_back(static_cast<int>(e.get<std::int64_t>()));
  }

  const Json& brackets_node = require(doc, "brackets");
  if (!brackets_node.is_array()) fail("brackets", "expected an array");
  StructureTensorBuilder builder(n);
  std::vector<bool> seen(n * n, false);
  for (std::size_t b = 0; b < brackets_node.size(); ++b) {
    const std::string path = index_path("brackets", b);
    const auto& entry = brackets_node[b];
    if (!entry.is_object()) fail(path, "expected an object with i, j, coeffs");
    for (const auto& [key, value] : entry.items()) {
      if (key != "i" && key != "j" && key != "coeffs") fail(path + "." + key, "unknown field");
    }
    if (!entry.contains("i")) fail(path + ".i", "missing required field");
    if (!entry.contains("j")) fail(path + ".j", "missing required field");
    if (!entry.contains("coeffs")) fail(path + ".coeffs", "missing required field");
    const auto i = read_index(entry["i"], path + ".i", n);
    const auto j = read_index(entry["j"], path + ".j", n);
    if (i >= j) fail(path, "pairs must satisfy i < j");
    if (seen[i * n + j]) fail(path, "pair (" + std::to_string(i) + ", " + std::to_string(j) + ") listed twice");
    seen[i * n + j] = true;
    const auto& coeffs = entry["coeffs"];
    if (!coeffs.is_array() || coeffs.size() != n) {
      fail(path + ".coeffs", "expected an array of " + std::to_string(n) + " rationals");
    }
    Vector value(n);
    for (std::size_t k = 0; k < n; ++k) value[k] = read_rational(coeffs[k], index_path(path + ".coeffs", k));
    builder.set(i, j, value);
  }

  const Json& vertical_node = require(doc, "vertical");
  if (!vertical_node.is_array()) fail("vertical", "expected an index array");
  std::vector<std::size_t> vertical;
  for (std::size_t v = 0; v < vertical_node.size(); ++v) {
    vertical.push_back(read_index(vertical_node[v], index_path("vertical", v), n));
  }

  const Json& horizontal_node = require(doc, "horizontal");
  if (!horizontal_node.is_array() || horizontal_node.size() != 2) fail("horizontal", "expected an index pair");
  const std::array<std::size_t, 2> horizontal{read_index(horizontal_node[0], "horizontal[0]", n),
                                              read_index(horizontal_node[1], "horizontal[1]", n)};

  std::vector<std::string> labels;
  if (auto meta = doc.find("meta"); meta != doc.end() && meta->is_object()) {
    // Labels are display-only; anything malformed falls back to e0, e1, ...
    auto basis = meta->find("basis");
    if (basis != meta->end() && basis->is_array() && basis->size() == n &&
        std::all_of(basis->begin(), basis->end(), [](const Json& l) { return l.is_string(); })) {
      for (const auto& l : *basis) labels.push_back(l.get<std::string>());
    }
  }

  try {
    return FoliationSetup(builder.build(), MetricFrame(std::move(eps)), std::move(vertical), horizontal,
                          std::move(labels));
  } catch (const InputError& e) {
    fail("document", e.what());
  }
}

FoliationSetup load_setup(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_setup(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string sweep_report_to_json(const SweepReport& report) {
  const auto& cfg = report.config;
  Json config;
  config["family"] = family_name(cfg.family);
  config["samples"] = cfg.samples;
  config["seed"] = cfg.seed;
  config["range"] = cfg.range;
  config["signatures"] = signature_mode_name(cfg.signatures);
  if (cfg.signatures == SignatureMode::kFixed) {
    Json fixed = Json::array();
    for (const auto& s : cfg.fixed_signatures) fixed.push_back(epsilon_json(s));
    config["fixedSignatures"] = std::move(fixed);
  }
  config["pinned"] = params_json(cfg.pinned);
  config["crossCheck"] = cfg.cross_check;

  Json out;
  out["config"] = std::move(config);
  out["totalCases"] = report.total_cases;
  out["agreements"] = report.agreements;
  out["rejectedDraws"] = report.rejected_draws;
  out["counts"] = {{"conformal", report.conformal_count},
                   {"semiRiemannian", report.semi_riemannian_count},
                   {"minimal", report.minimal_count},
                   {"totallyGeodesic", report.totally_geodesic_count},
                   {"oracleChecks", report.oracle_checks}};
  Json disagreements = Json::array();
  for (const auto& c : report.disagreements) disagreements.push_back(case_json(c));
  out["disagreements"] = std::move(disagreements);
  out["conjectureCounterexampleCount"] = report.conjecture_counterexample_count;
  Json conjecture = Json::array();
  for (const auto& c : report.conjecture_counterexamples) conjecture.push_back(case_json(c));
  out["conjectureCounterexamples"] = std::move(conjecture);
  out["minimalityCounterexampleCount"] = report.minimality_counterexample_count;
  Json minimality = Json::array();
  for (const auto& c : report.minimality_counterexamples) minimality.push_back(case_json(c));
  out["minimalityCounterexamples"] = std::move(minimality);
  return out.dump(2) + "\n";
}

std::string counterexamples_to_json(FamilyId family, const std::vector<Counterexample>& list) {
  const auto labels = family_labels(family);
  Json out = Json::array();
  for (const auto& ce : list) {
    Json violated = Json::array();
    for (const auto& c : ce.violated) violated.push_back({{"condition", c.label}, {"value", rational_json(c.value)}});
    out.push_back({{"family", family_name(family)},
                   {"epsilon", epsilon_json(ce.spec.signature())},
                   {"params", params_json(ce.spec.params())},
                   {"compactType", ce.compact_type},
                   {"violated", std::move(violated)},
                   {"witness",
                    {{"pair", labels[ce.witness.first] + "," + labels[ce.witness.second]},
                     {"value", format_combination(ce.witness_value, labels)}}}});
  }
  return out.dump(2) + "\n";
}

}  // namespace foliate
