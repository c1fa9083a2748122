// Command-line surface: `verify` runs the library self-check suites,
// `sweep` drives the multiplier operator-norm experiments from a JSON
// config, `norm` prints a norm table for one field. Outputs are
// deterministic for a fixed (config, seed) regardless of worker count.

#include "lpw/multiplier.hpp"
#include "lpw/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double json_exponent(const json& v, const char* what) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return kInf;
    throw std::invalid_argument(std::string("config: bad ") + what +
                                " (use a number or \"inf\")");
  }
  return v.get<double>();
}

lpw::FieldKind parse_kind(const std::string& s) {
  if (s == "gaussian") return lpw::FieldKind::gaussian;
  if (s == "modulated_gaussian") return lpw::FieldKind::modulated_gaussian;
  if (s == "random_bandlimited") return lpw::FieldKind::random_bandlimited;
  if (s == "indicator_halfspace") return lpw::FieldKind::indicator_halfspace;
  if (s == "smooth_cutoff") return lpw::FieldKind::smooth_cutoff;
  if (s == "concentrated_near_hyperplane")
    return lpw::FieldKind::concentrated_near_hyperplane;
  throw std::invalid_argument("config: unknown field kind '" + s + "'");
}

lpw::SpaceKind parse_space_kind(const std::string& s) {
  if (s == "Lp") return lpw::SpaceKind::Lp;
  if (s == "B" || s == "Besov") return lpw::SpaceKind::Besov;
  if (s == "F" || s == "TL") return lpw::SpaceKind::TriebelLizorkin;
  if (s == "H" || s == "Bessel") return lpw::SpaceKind::Bessel;
  if (s == "W" || s == "Sobolev") return lpw::SpaceKind::Sobolev;
  if (s == "LpLr" || s == "Mixed") return lpw::SpaceKind::MixedLp;
  throw std::invalid_argument("config: unknown space kind '" + s + "'");
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  return json::parse(in); // parse errors carry line/column context
}

int run_verify(const std::string& suite) {
  std::vector<lpw::CheckResult> results;
  try {
    results = lpw::verify_suite(suite);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s %-34s value=%.6g bound=%.6g%s%s\n", r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.value, r.bound, r.detail.empty() ? "" : "  # ",
                r.detail.c_str());
    failed += !r.pass;
  }
  std::printf("%d/%zu checks passed\n", int(results.size()) - failed,
              results.size());
  return failed == 0 ? 0 : 1;
}

lpw::SweepConfig sweep_config_from_json(const json& j) {
  lpw::SweepConfig c;
  c.dim = j.value("dim", 1);
  c.half_width = j.value("half_width", 16.0);
  if (j.contains("n_list")) c.n_list = j["n_list"].get<std::vector<int>>();
  if (j.contains("s_list")) c.s_list = j["s_list"].get<std::vector<double>>();
  if (j.contains("p_list")) c.p_list = j["p_list"].get<std::vector<double>>();
  if (j.contains("gamma_list"))
    c.gamma_list = j["gamma_list"].get<std::vector<double>>();
  c.spaces.clear();
  for (const auto& s : j.value("spaces", std::vector<std::string>{"H"}))
    c.spaces.push_back(lpw::parse_space_id(s));
  c.ladder_j_min = j.value("ladder_j_min", 0);
  c.ladder_j_max = j.value("ladder_j_max", 8);
  c.seed = j.value("seed", std::uint64_t{7});
  c.workers = j.value("workers", 1);
  return c;
}

int run_sweep(const std::string& config_path, const std::string& out_path,
              const std::string& format, std::optional<int> workers,
              std::optional<std::uint64_t> seed) {
  json j = load_config(config_path);
  lpw::SweepConfig cfg = sweep_config_from_json(j);
  if (workers) cfg.workers = *workers;
  if (seed) cfg.seed = *seed;
  if (format != "csv" && format != "json")
    throw std::invalid_argument("format must be csv or json");

  lpw::SweepReport rep = lpw::operator_norm_sweep(cfg);
  std::string payload = format == "csv" ? rep.to_csv() : rep.to_json();
  if (out_path.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write output file '" + out_path + "'");
  out << payload;
  return 0;
}

lpw::FamilyParams params_from_json(const json& f) {
  lpw::FamilyParams p;
  if (f.contains("center")) {
    auto c = f["center"].get<std::vector<double>>();
    if (c.size() != size_t(1) && c.size() != size_t(2))
      throw std::invalid_argument("config: center must have 1 or 2 entries");
    p.center[0] = c[0];
    p.center[1] = c.size() == 2 ? c[1] : 0.0;
  }
  p.width = f.value("width", 1.0);
  p.freq = f.value("freq", 0.0);
  p.k_lo = f.value("k_lo", 0.0);
  p.k_hi = f.value("k_hi", 0.0);
  p.scale = f.value("scale", 1.0);
  p.components = f.value("components", 1);
  p.r_value = f.contains("r_value") ? json_exponent(f["r_value"], "r_value") : 2.0;
  return p;
}

int run_norm(const std::string& config_path) {
  json j = load_config(config_path);
  int dim = j.value("dim", 1);
  double half_width = j.value("half_width", 16.0);
  int n = j.value("n", 512);
  lpw::GridSpec grid = lpw::make_grid(dim, half_width, n);
  lpw::DyadicFamily fam = lpw::build_family(grid, lpw::max_levels(grid));

  if (!j.contains("field"))
    throw std::invalid_argument("config: missing \"field\" section");
  const json& jf = j["field"];
  lpw::SampledField f = lpw::sample_family(
      parse_kind(jf.value("kind", std::string{"gaussian"})), params_from_json(jf),
      grid, jf.value("seed", std::uint64_t{0}));

  if (!j.contains("spaces") || j["spaces"].empty())
    throw std::invalid_argument("config: missing \"spaces\" list");
  for (const json& js : j["spaces"]) {
    lpw::SpaceSpec spec;
    spec.kind = parse_space_kind(js.value("kind", std::string{"Lp"}));
    spec.s = js.value("s", 0.0);
    spec.p = js.contains("p") ? json_exponent(js["p"], "p") : 2.0;
    spec.q = js.contains("q") ? json_exponent(js["q"], "q") : 2.0;
    spec.gamma = js.value("gamma", 0.0);
    spec.m = js.value("m", 0);
    spec.r = js.contains("r") ? json_exponent(js["r"], "r") : 2.0;
    double v = lpw::space_norm(f, fam, spec);
    std::printf("%-32s %.12g\n", spec.label().c_str(), v);
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"harmonic-analysis toolkit: verification suites, multiplier "
               "sweeps and norm tables"};
  app.require_subcommand(1);

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run a library self-check suite");
  verify
      ->add_option("suite", suite,
                   "grid|dyadic|norms|paraproduct|maximal|embeddings|all")
      ->capture_default_str();

  std::string config_path, out_path, format = "csv";
  int workers_flag = 0;
  std::uint64_t seed_flag = 0;
  bool workers_set = false, seed_set = false;

  auto* sweep = app.add_subcommand("sweep", "operator-norm sweep from a config");
  sweep->add_option("--config", config_path, "JSON config path")->required();
  sweep->add_option("--out", out_path, "output path (stdout if omitted)");
  sweep->add_option("--format", format, "csv|json")->capture_default_str();
  sweep->add_option("--workers", workers_flag, "worker thread count")
      ->each([&](const std::string&) { workers_set = true; });
  sweep->add_option("--seed", seed_flag, "test-function seed")
      ->each([&](const std::string&) { seed_set = true; });

  std::string norm_config;
  auto* norm = app.add_subcommand("norm", "print a norm table for one field");
  norm->add_option("--config", norm_config, "JSON config path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return run_verify(suite);
    if (sweep->parsed())
      return run_sweep(config_path, out_path, format,
                       workers_set ? std::optional<int>(workers_flag) : std::nullopt,
                       seed_set ? std::optional<std::uint64_t>(seed_flag)
                                : std::nullopt);
    if (norm->parsed()) return run_norm(norm_config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
