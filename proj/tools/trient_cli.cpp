// Command-line surface for the trient library: per-state measure bundles,
// pure-state classification, criterion and bound sweeps, and the numerical
// convex-roof estimator. Output is CSV or JSON with full double precision.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "trient/trient.hpp"

namespace {

using namespace trient;

struct RunConfig {
  std::string command;
  std::optional<std::string> state_path;
  double a = 1.0 / std::numbers::sqrt2;
  double b = 1.0 / std::numbers::sqrt2;
  double c = 1.0 / std::sqrt(3.0);
  double d = 1.0 / std::sqrt(3.0);
  double f = 1.0 / std::sqrt(3.0);
  double p = 1.0;
  double phi = 0.0;
  int case_id = 1;
  int n_points = 2;
  std::uint64_t seed = 42;
  double tol = 1e-7;
  int budget = 2000;
  std::string measure = "cfill";
  std::optional<std::string> out_path;
  std::string format = "csv";
};

PureState3 resolve_state(const RunConfig& cfg) {
  if (cfg.state_path) return load_state_file(*cfg.state_path);
  const RankTwoFamily fam{{cfg.a, cfg.b}, {cfg.c, cfg.d, cfg.f}, cfg.p, cfg.phi};
  return make_eigenstate(fam);
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path) {
    std::ofstream out(*cfg.out_path, std::ios::binary);
    if (!out)
      throw std::invalid_argument("cannot open output file: " + *cfg.out_path);
    out << text;
  } else {
    std::cout << text;
  }
}

std::string render_measures(const RunConfig& cfg) {
  const PureState3 psi = resolve_state(cfg);
  const MeasureBundle m = bundle(psi);
  const double s_a = m.c_a_bc * m.c_a_bc;
  const double s_b = m.c_b_ac * m.c_b_ac;
  const double s_c = m.c_c_ab * m.c_c_ab;
  const double q = 0.5 * (s_a + s_b + s_c);

  const std::vector<std::pair<std::string, double>> fields = {
      {"c_ab", m.c_ab},         {"c_ac", m.c_ac},     {"c_bc", m.c_bc},
      {"c_a_bc", m.c_a_bc},     {"c_b_ac", m.c_b_ac}, {"c_c_ab", m.c_c_ab},
      {"tangle", m.tangle},     {"tau_ab", m.tau_ab}, {"tau_ac", m.tau_ac},
      {"tau_bc", m.tau_bc},     {"c_fill", m.c_fill}, {"c2_a_bc", s_a},
      {"c2_b_ac", s_b},         {"c2_c_ab", s_c},     {"q", q}};

  if (cfg.format == "json") {
    std::vector<std::pair<std::string, std::string>> obj;
    for (const auto& [name, value] : fields)
      obj.emplace_back(name, jsonout::number(value));
    return jsonout::object(obj) + "\n";
  }
  std::string header, row;
  for (const auto& [name, value] : fields) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += name;
    row += format_double(value);
  }
  CsvWriter csv(header);
  csv.raw_row(row);
  return csv.str();
}

std::string render_classify(const RunConfig& cfg) {
  const PureState3 psi = resolve_state(cfg);
  const ClassLabel label = classify_pure(psi, cfg.tol);
  const auto reports = w_class_criterion_all_pairs(psi);

  if (cfg.format == "json") {
    std::vector<std::string> items;
    for (const auto& r : reports)
      items.push_back(jsonout::object({{"pair", jsonout::string(to_string(r.pair))},
                                       {"lhs", jsonout::number(r.lhs)},
                                       {"k", jsonout::number(r.k)},
                                       {"rhs", jsonout::number(r.rhs)},
                                       {"violated", jsonout::boolean(r.violated)}}));
    return jsonout::object({{"label", jsonout::string(to_string(label))},
                            {"tol", jsonout::number(cfg.tol)},
                            {"criteria", jsonout::array(items)}}) +
           "\n";
  }
  CsvWriter csv("label,pair,lhs,k,rhs,violated");
  for (const auto& r : reports) {
    csv.raw_row(std::string(to_string(label)) + "," + to_string(r.pair) + "," +
                format_double(r.lhs) + "," + format_double(r.k) + "," +
                format_double(r.rhs) + "," + (r.violated ? "true" : "false"));
  }
  return csv.str();
}

std::string render_sweep_example1(const RunConfig& cfg) {
  const auto rows = sweep_example1(cfg.case_id, cfg.n_points);
  if (cfg.format == "json") {
    std::vector<std::string> items;
    for (const auto& r : rows)
      items.push_back(jsonout::object({{"d", jsonout::number(r.d)},
                                       {"lhs", jsonout::number(r.lhs)},
                                       {"rhs", jsonout::number(r.rhs)}}));
    return jsonout::array(items) + "\n";
  }
  CsvWriter csv("d,lhs,rhs");
  for (const auto& r : rows) csv.row({r.d, r.lhs, r.rhs});
  return csv.str();
}

std::string render_sweep_eigenstate(const RunConfig& cfg) {
  const auto rows = sweep_eigenstate({cfg.a, cfg.b}, {cfg.c, cfg.d, cfg.f},
                                     cfg.phi, cfg.n_points);
  if (cfg.format == "json") {
    std::vector<std::string> items;
    for (const auto& r : rows)
      items.push_back(jsonout::object({{"p", jsonout::number(r.p)},
                                       {"cf_closed", jsonout::number(r.cf_closed)},
                                       {"cf_direct", jsonout::number(r.cf_direct)},
                                       {"tangle", jsonout::number(r.tangle)}}));
    return jsonout::array(items) + "\n";
  }
  CsvWriter csv("p,cf_closed,cf_direct,tangle");
  for (const auto& r : rows) csv.row({r.p, r.cf_closed, r.cf_direct, r.tangle});
  return csv.str();
}

std::string render_mixture_bound(const RunConfig& cfg) {
  RoofOptions options;
  options.seed = cfg.seed;
  options.budget = cfg.budget;
  const auto rows = sweep_mixture_bound({cfg.a, cfg.b}, {cfg.c, cfg.d, cfg.f},
                                        cfg.n_points, options);
  if (cfg.format == "json") {
    std::vector<std::string> items;
    for (const auto& r : rows)
      items.push_back(jsonout::object(
          {{"p", jsonout::number(r.p)},
           {"cf_upper_printed", jsonout::number(r.cf_upper_printed)},
           {"cf_upper_variant", jsonout::number(r.cf_upper_variant)},
           {"cf_roof_estimate", jsonout::number(r.cf_roof_estimate)}}));
    return jsonout::array(items) + "\n";
  }
  CsvWriter csv("p,cf_upper_printed,cf_upper_variant,cf_roof_estimate");
  for (const auto& r : rows)
    csv.row({r.p, r.cf_upper_printed, r.cf_upper_variant, r.cf_roof_estimate});
  return csv.str();
}

std::string render_convex_roof(const RunConfig& cfg) {
  if (cfg.measure != "cfill" && cfg.measure != "tangle")
    throw std::invalid_argument("measure must be cfill or tangle");
  const RankTwoFamily fam{{cfg.a, cfg.b}, {cfg.c, cfg.d, cfg.f}, cfg.p, cfg.phi};
  RoofOptions options;
  options.seed = cfg.seed;
  options.budget = cfg.budget;
  const RoofEstimate est = convex_roof_estimate(
      make_rank2_mixture(fam),
      cfg.measure == "cfill" ? RoofMeasure::ConcurrenceFill : RoofMeasure::Tangle,
      options);
  if (cfg.format == "json")
    return jsonout::object(
               {{"value", jsonout::number(est.value)},
                {"decomposition_size",
                 jsonout::number(static_cast<double>(est.decomposition_size))}}) +
           "\n";
  CsvWriter csv("value,decomposition_size");
  csv.raw_row(format_double(est.value) + "," +
              std::to_string(est.decomposition_size));
  return csv.str();
}

int run(const RunConfig& cfg) {
  std::string text;
  if (cfg.command == "measures")
    text = render_measures(cfg);
  else if (cfg.command == "classify")
    text = render_classify(cfg);
  else if (cfg.command == "sweep-example1")
    text = render_sweep_example1(cfg);
  else if (cfg.command == "sweep-eigenstate")
    text = render_sweep_eigenstate(cfg);
  else if (cfg.command == "mixture-bound")
    text = render_mixture_bound(cfg);
  else if (cfg.command == "convex-roof")
    text = render_convex_roof(cfg);
  else
    throw std::invalid_argument("unknown command: " + cfg.command);
  emit(cfg, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"three-qubit entanglement measures, classification and rank-2 "
               "mixture analysis"};
  app.add_option("--command", cfg.command,
                 "measures | classify | sweep-example1 | sweep-eigenstate | "
                 "mixture-bound | convex-roof")
      ->required();
  app.add_option("--state", cfg.state_path,
                 "state file: JSON array of 8 [re, im] pairs");
  app.add_option("--a", cfg.a, "gGHZ amplitude a (default 1/sqrt(2))");
  app.add_option("--b", cfg.b, "gGHZ amplitude b (default 1/sqrt(2))");
  app.add_option("--c", cfg.c, "gW amplitude c (default 1/sqrt(3))");
  app.add_option("--d", cfg.d, "gW amplitude d (default 1/sqrt(3))");
  app.add_option("--f", cfg.f, "gW amplitude f (default 1/sqrt(3))");
  app.add_option("--p", cfg.p, "mixing weight (default 1)");
  app.add_option("--phi", cfg.phi, "superposition phase (default 0)");
  app.add_option("--case", cfg.case_id, "sweep-example1 case, 1 or 2");
  app.add_option("--n-points", cfg.n_points, "sweep sample count (>= 2)");
  app.add_option("--seed", cfg.seed, "random seed (default 42)");
  app.add_option("--tol", cfg.tol, "classification tolerance (default 1e-7)");
  app.add_option("--budget", cfg.budget, "convex-roof sample budget");
  app.add_option("--measure", cfg.measure, "convex-roof measure: cfill | tangle");
  app.add_option("--out", cfg.out_path, "output path (default stdout)");
  app.add_option("--format", cfg.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    return run(cfg);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
