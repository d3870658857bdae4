#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "foliate/document.hpp"
#include "foliate/error.hpp"
#include "foliate/families.hpp"
#include "foliate/geometry.hpp"
#include "foliate/verifier.hpp"

namespace foliate::cli {
namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string signature_string(const MetricFrame& frame) {
  std::string out;
  for (std::size_t i = 0; i < frame.dim(); ++i) out += frame.epsilon(i) > 0 ? '+' : '-';
  return out;
}

// "++-++" or "1,1,-1,1,1".
MetricFrame parse_epsilon(const std::string& text) {
  std::vector<int> eps;
  if (!text.empty() && text.find_first_not_of("+-") == std::string::npos) {
    for (char c : text) eps.push_back(c == '+' ? 1 : -1);
  } else {
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item == "1" || item == "+1" || item == "+") {
        eps.push_back(1);
      } else if (item == "-1" || item == "-") {
        eps.push_back(-1);
      } else {
        throw InputError("bad epsilon entry '" + item + "' in '" + text + "'; use +1/-1 or a string like ++-++");
      }
    }
  }
  return MetricFrame(std::move(eps));
}

std::map<std::string, Rational> parse_assignments(const std::vector<std::string>& items) {
  std::map<std::string, Rational> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("expected name=value, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    if (out.count(name)) throw InputError("parameter " + name + " given twice");
    out.emplace(name, Rational::parse(item.substr(eq + 1)));
  }
  return out;
}

FamilyId require_family(const std::string& name) {
  auto id = parse_family(name);
  if (!id) {
    std::string known;
    for (auto f : kAllFamilies) known += (known.empty() ? "" : ", ") + std::string(family_name(f));
    throw InputError("unknown family '" + name + "' (known: " + known + ")");
  }
  return *id;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path);
  file << text;
  if (!file) throw InputError("write failed for " + path);
}

std::string params_string(const std::map<std::string, Rational>& params) {
  std::string out;
  for (const auto& [name, value] : params) {
    if (!out.empty()) out += " ";
    out += name + "=" + value.to_string();
  }
  return out;
}

void print_report(const FoliationSetup& setup, const FoliationReport& report, std::ostream& out) {
  const auto& labels = setup.labels();
  const auto [x, y] = setup.horizontal();
  out << "conformal: " << yes_no(report.conformal) << ", semi-riemannian: " << yes_no(report.semi_riemannian)
      << ", minimal: " << yes_no(report.minimal) << ", totally geodesic: " << yes_no(report.totally_geodesic)
      << "\n";
  out << "B^H(" << labels[x] << "," << labels[x] << ") = " << format_combination(report.b_h.xx, labels) << "\n";
  out << "B^H(" << labels[x] << "," << labels[y] << ") = " << format_combination(report.b_h.xy, labels) << "\n";
  out << "B^H(" << labels[y] << "," << labels[y] << ") = " << format_combination(report.b_h.yy, labels) << "\n";
  out << "conformal vector: " << format_combination(report.conformal_vector, labels)
      << (report.conformal ? "" : " (diagnostic only)") << "\n";
  out << "mean curvature: " << format_combination(report.mean_curvature, labels) << "\n";
  if (report.geodesic_witnesses.empty()) {
    out << "B^V witnesses: none\n";
  } else {
    out << "B^V witnesses:\n";
    for (const auto& pair : report.geodesic_witnesses) {
      out << "  B^V(" << labels[pair.first] << "," << labels[pair.second]
          << ") = " << format_combination(report.b_v.at(pair), labels) << "\n";
    }
  }
}

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
  const FoliationSetup setup = load_setup(path);
  const auto residual = jacobi_residual(setup.tensor());
  if (!residual.is_zero()) {
    out << "jacobi: fails\n";
    const auto& labels = setup.labels();
    std::size_t failing = 0;
    for (const auto& t : residual.triples) {
      if (is_zero(t.residual)) continue;
      ++failing;
      out << "  (" << labels[t.indices[0]] << ", " << labels[t.indices[1]] << ", " << labels[t.indices[2]]
          << "): " << format_combination(t.residual, labels) << "\n";
    }
    err << "error: Jacobi identity fails on " << failing << " basis triple(s)\n";
    return kJacobiFailure;
  }
  out << "jacobi: ok\n";
  print_report(setup, classify(setup), out);
  return kOk;
}

struct FamilyArgs {
  std::string family;
  std::vector<std::string> params;
  std::string epsilon;
  std::string out_path;
  std::string variant = "consistent";
  bool allow_nonconformal = false;
};

int cmd_family(const FamilyArgs& args, std::ostream& out) {
  const FamilyId id = require_family(args.family);
  const std::size_t n = family_dimension(id);
  MetricFrame signature = args.epsilon.empty() ? MetricFrame::riemannian(n) : parse_epsilon(args.epsilon);
  if (signature.dim() != n) {
    throw InputError("family " + args.family + " needs " + std::to_string(n) + " epsilon entries, got " +
                     std::to_string(signature.dim()));
  }
  BuildOptions options;
  if (args.variant == "as-printed") {
    options.variant = TableVariant::kAsPrinted;
  } else if (args.variant != "consistent") {
    throw InputError("unknown table variant '" + args.variant + "' (consistent, as-printed)");
  }
  options.enforce_conformality = !args.allow_nonconformal;

  const FamilySpec spec(id, parse_assignments(args.params), signature);
  const FoliationSetup setup = build_family(spec, options);
  const std::string doc = serialize_setup(setup, spec);
  if (args.out_path.empty()) {
    out << doc;
  } else {
    write_file(args.out_path, doc);
    out << "wrote " << args.out_path << " (" << family_name(id) << ", epsilon " << signature_string(signature)
        << ")\n";
  }
  return kOk;
}

struct SweepArgs {
  std::string family;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::string signatures = "all";
  std::vector<std::string> epsilons;
  std::int64_t range = 6;
  std::string json_path;
  unsigned threads = 0;
  std::vector<std::string> pins;
  bool cross_check = false;
  std::size_t max_listed = 100;
};

std::size_t count_notes(const SweepReport& report, std::string_view needle) {
  return static_cast<std::size_t>(std::count_if(report.disagreements.begin(), report.disagreements.end(), [&](const CaseRecord& c) {
    return std::any_of(c.notes.begin(), c.notes.end(), [&](const std::string& n) { return n.find(needle) != std::string::npos; });
  }));
}

int cmd_sweep(const SweepArgs& args, std::ostream& out) {
  SweepConfig config;
  config.family = require_family(args.family);
  config.samples = args.samples;
  config.seed = args.seed;
  config.range = args.range;
  auto mode = parse_signature_mode(args.signatures);
  if (!mode) throw InputError("unknown signature mode '" + args.signatures + "' (all, riemannian-only, fixed)");
  config.signatures = *mode;
  for (const auto& e : args.epsilons) config.fixed_signatures.push_back(parse_epsilon(e));
  if (!config.fixed_signatures.empty() && config.signatures != SignatureMode::kFixed) {
    throw InputError("--epsilon requires --signatures fixed");
  }
  config.pinned = parse_assignments(args.pins);
  config.cross_check = args.cross_check;
  config.max_listed = args.max_listed;
  config.threads = args.threads;

  const SweepReport report = run_sweep(config);
  const std::size_t per_draw = config.signature_list().size();
  const auto& total = report.total_cases;

  out << "family: " << family_name(config.family) << "\n";
  out << "cases: " << total << " (" << config.samples << " draws x " << per_draw << " signatures, seed "
      << config.seed << ")\n";
  if (report.rejected_draws) out << "rejected draws: " << report.rejected_draws << "\n";
  out << "agreements: " << report.agreements << "\n";
  out << "disagreements: " << report.disagreements.size() << "\n";
  out << "conformal: yes " << report.conformal_count << ", no " << total - report.conformal_count << "\n";
  out << "semi-riemannian: yes " << report.semi_riemannian_count << ", no " << total - report.semi_riemannian_count
      << "\n";
  out << "minimal: yes " << report.minimal_count << ", no " << total - report.minimal_count << "\n";
  out << "totally geodesic: yes " << report.totally_geodesic_count << ", no " << total - report.totally_geodesic_count
      << "\n";
  if (config.cross_check) out << "theta oracle checks: " << report.oracle_checks << "\n";

  const std::size_t minimal_bad = count_notes(report, "minimal flag");
  const std::size_t geodesic_bad = count_notes(report, "totally geodesic flag");
  const auto verdict = [](std::size_t bad) { return bad == 0 ? std::string("confirmed") : "refuted in " + std::to_string(bad) + " case(s)"; };
  if (is_so2_family(config.family)) {
    out << "minimal iff t14=t24=0: " << verdict(minimal_bad) << "\n";
  } else {
    out << "conformal, semi-riemannian and minimal throughout: "
        << verdict(count_notes(report, "not conformal") + count_notes(report, "semi-Riemannian flag") + minimal_bad)
        << "\n";
  }
  out << "totally geodesic iff closed-form conditions: " << verdict(geodesic_bad) << "\n";
  if (has_semisimple_vertical(config.family)) {
    out << "conjecture counterexamples (semisimple"
        << (has_compact_vertical(config.family) ? " compact" : "") << " vertical, not totally geodesic): "
        << report.conjecture_counterexample_count << "\n";
    out << "minimality counterexamples: " << report.minimality_counterexample_count << "\n";
  }

  for (std::size_t i = 0; i < report.disagreements.size() && i < 10; ++i) {
    const auto& c = report.disagreements[i];
    out << "disagreement: draw " << c.draw << ", epsilon " << signature_string(c.spec.signature()) << ", "
        << params_string(c.spec.params()) << "\n";
    for (const auto& note : c.notes) out << "  " << note << "\n";
  }

  if (!args.json_path.empty()) write_file(args.json_path, sweep_report_to_json(report));
  return report.disagreements.empty() ? kOk : kDisagreement;
}

struct CounterexampleArgs {
  std::string family;
  std::uint64_t seed = 0;
  bool riemannian = false;
  std::size_t samples = 200;
  std::size_t limit = 5;
  std::string json_path;
};

int cmd_counterexample(const CounterexampleArgs& args, std::ostream& out) {
  SweepConfig config;
  config.family = require_family(args.family);
  if (!has_semisimple_vertical(config.family)) {
    throw InputError("family " + args.family +
                     " has a non-semisimple vertical subalgebra; the conjecture premise requires K semisimple");
  }
  config.seed = args.seed;
  config.samples = args.samples;
  config.max_listed = args.limit;
  config.signatures = args.riemannian ? SignatureMode::kRiemannianOnly : SignatureMode::kAll;

  const auto list = find_conjecture_counterexamples(config);
  if (!args.json_path.empty()) write_file(args.json_path, counterexamples_to_json(config.family, list));
  if (list.empty()) {
    if (args.riemannian) {
      out << "none (the compact-semisimple totally-geodesic conjecture holds in Riemannian signature for this family)\n";
    } else {
      out << "none found in " << config.samples << " draws\n";
    }
    return kOk;
  }
  const auto labels = family_labels(config.family);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& ce = list[i];
    out << "counterexample " << i + 1 << "\n";
    out << "  family: " << family_name(config.family) << "\n";
    out << "  epsilon: " << signature_string(ce.spec.signature()) << "  (";
    for (std::size_t k = 0; k < labels.size(); ++k) {
      out << (k ? " " : "") << labels[k] << (ce.spec.eps(k) > 0 ? "+" : "-");
    }
    out << ")\n";
    out << "  params: " << params_string(ce.spec.params()) << "\n";
    out << "  vertical: semisimple" << (ce.compact_type ? ", compact type (Killing form negative definite)" : ", not compact type")
        << "\n";
    out << "  conformal: yes, totally geodesic: no\n";
    for (const auto& c : ce.violated) out << "  violated: " << c.label << " = " << c.value.to_string() << "\n";
    out << "  witness: B^V(" << labels[ce.witness.first] << "," << labels[ce.witness.second]
        << ") = " << format_combination(ce.witness_value, labels) << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact classification of Lie subalgebra foliations of codimension two"};
  app.name("foliate");
  app.require_subcommand(1);

  std::string check_path;
  auto* check = app.add_subcommand("check", "Classify a setup document");
  check->add_option("path", check_path, "Setup document (JSON)")->required();

  FamilyArgs family_args;
  auto* family = app.add_subcommand("family", "Emit the setup document of a family instance");
  family->add_option("id", family_args.family, "su2, sl2r, su2xsu2, su2xsl2r, su2xso2, sl2rxso2")->required();
  family->add_option("--param", family_args.params, "Coefficients as name=value (rational)");
  family->add_option("--epsilon", family_args.epsilon, "Signature, e.g. ++-++ or 1,1,-1,1,1 (default all +)");
  family->add_option("--out", family_args.out_path, "Write the document here instead of standard output");
  family->add_option("--table-variant", family_args.variant, "consistent (default) or as-printed");
  family->add_flag("--allow-nonconformal", family_args.allow_nonconformal,
                   "SO(2) products: skip the conformality relations");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Randomized comparison of geometry and closed forms");
  sweep->add_option("id", sweep_args.family, "Family id")->required();
  sweep->add_option("--samples", sweep_args.samples, "Parameter draws")->capture_default_str();
  sweep->add_option("--seed", sweep_args.seed, "Random seed")->capture_default_str();
  sweep->add_option("--signatures", sweep_args.signatures, "all, riemannian-only or fixed")->capture_default_str();
  sweep->add_option("--epsilon", sweep_args.epsilons, "Signature for --signatures fixed (repeatable)");
  sweep->add_option("--range", sweep_args.range, "Numerator/denominator bound")->capture_default_str();
  sweep->add_option("--json", sweep_args.json_path, "Write the full report as JSON");
  sweep->add_option("--threads", sweep_args.threads, "Worker threads (0 = all cores)")->capture_default_str();
  sweep->add_option("--pin", sweep_args.pins, "Fix parameters after drawing, name=value");
  sweep->add_flag("--cross-check", sweep_args.cross_check, "Also run the independent oracles on every case");
  sweep->add_option("--max-listed", sweep_args.max_listed, "Cap on listed counterexamples")->capture_default_str();

  CounterexampleArgs ce_args;
  auto* counterexample = app.add_subcommand("counterexample", "Search for conformal, non totally geodesic instances");
  counterexample->add_option("id", ce_args.family, "Family with semisimple vertical subalgebra")->required();
  counterexample->add_option("--seed", ce_args.seed, "Random seed")->capture_default_str();
  counterexample->add_flag("--riemannian", ce_args.riemannian, "Only the all-positive signature");
  counterexample->add_option("--samples", ce_args.samples, "Parameter draws")->capture_default_str();
  counterexample->add_option("--limit", ce_args.limit, "Maximum number printed")->capture_default_str();
  counterexample->add_option("--json", ce_args.json_path, "Write the list as JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadInput;
  }

  try {
    if (*check) return cmd_check(check_path, out, err);
    if (*family) return cmd_family(family_args, out);
    if (*sweep) return cmd_sweep(sweep_args, out);
    if (*counterexample) return cmd_counterexample(ce_args, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kBadInput;
  } catch (const ConstraintError& e) {
    err << "error: constraint violated: " << e.relation() << "\n  " << e.what() << "\n";
    return kConstraintViolation;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InvalidAlgebraError& e) {
    err << "error: " << e.what() << "\n";
    return kJacobiFailure;
  }
  return kBadInput;
}

}  // namespace foliate::cli
