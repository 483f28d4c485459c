// cdlab: command-line front end for the chord-diagram homology toolkit.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdlab/analytic.hpp"
#include "cdlab/chain_complex.hpp"
#include "cdlab/chain_complex_json.hpp"
#include "cdlab/chord_diagram.hpp"
#include "cdlab/degeneracy_scan.hpp"
#include "cdlab/report.hpp"
#include "cdlab/rng.hpp"
#include "cdlab/simplicial.hpp"

namespace {

using namespace cdlab;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_input = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) { return detail::fmt(x); }

std::uint64_t default_seed() {
  const char* env = std::getenv("CDLAB_SEED");
  if (!env || !*env) return 1;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (env[used] != '\0') throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("CDLAB_SEED is not an unsigned integer: ") + env);
  }
}

TrigPolynomial parse_trig(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("trig polynomial '" + text + "': " + e.what());
  }
  if (!j.is_object()) throw InputError("trig polynomial must be a JSON object: " + text);
  auto coeffs = [&](const char* key) {
    std::vector<double> out;
    if (!j.contains(key)) return out;
    if (!j[key].is_array()) throw InputError(std::string("'") + key + "' must be an array");
    for (const auto& v : j[key]) {
      if (!v.is_number()) throw InputError(std::string("'") + key + "' must hold numbers");
      out.push_back(v.get<double>());
    }
    return out;
  };
  double a0 = 0.0;
  if (j.contains("a0")) {
    if (!j["a0"].is_number()) throw InputError("'a0' must be a number");
    a0 = j["a0"].get<double>();
  }
  auto c = coeffs("cos"), s = coeffs("sin");
  const std::size_t n = std::max(c.size(), s.size());
  c.resize(n, 0.0);
  s.resize(n, 0.0);
  try {
    return TrigPolynomial(a0, std::move(c), std::move(s));
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

int cmd_homology(const std::string& path) {
  ChainComplex c;
  try {
    c = load_complex(path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_input;
  }
  std::printf("complex: %s\n", c.name().c_str());
  const auto report = validate(c);
  if (!report.ok()) {
    std::printf("validate: invalid\n");
    for (const auto& v : report.violations) std::printf("  %s: %s\n", v.cell.c_str(), v.message.c_str());
    return exit_input;
  }
  std::printf("validate: ok\n");
  std::printf("cells:");
  for (int d = 0; d <= c.top_dim(); ++d) std::printf(" %zu", c.cells(d).size());
  std::printf("\nbetti:");
  for (auto b : betti(c)) std::printf(" %zu", b);
  std::printf("\neuler characteristic: %ld\n", euler_characteristic(c));
  return exit_ok;
}

int cmd_verify(std::uint64_t seed, bool list, bool json, bool quick) {
  if (list) {
    for (const auto& item : report_registry()) std::printf("%s\t%s\n", item.statement_id, item.statement);
    return exit_ok;
  }
  ReportOptions opt;
  opt.seed = seed;
  if (quick) {
    opt.bu_pairs = 100;
    opt.crossing_pairs = 100;
    opt.diagrams = 100;
    opt.scans = 2;
    opt.scan_grid = 12;
  }
  const auto report = verify_report(opt);
  if (json) {
    nlohmann::json out;
    out["seed"] = seed;
    out["entries"] = nlohmann::json::array();
    for (const auto& e : report)
      out["entries"].push_back({{"statement_id", e.statement_id}, {"status", to_string(e.status)}, {"detail", e.detail}});
    out["all_pass"] = all_pass(report);
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    std::printf("seed: %llu\n", static_cast<unsigned long long>(seed));
    for (const auto& e : report)
      std::printf("%-10s %-24s %s\n", to_string(e.status), e.statement_id.c_str(), e.detail.c_str());
    std::printf("overall: %s\n", all_pass(report) ? "pass" : "fail");
  }
  return all_pass(report) ? exit_ok : exit_failed;
}

struct BuCounts {
  std::size_t odd = 0, even = 0, degenerate = 0;
};

void print_pair(std::size_t index, const TrigPolynomial& f, const TrigPolynomial& g, BuCounts& counts) {
  const std::size_t samples = std::max<std::size_t>(1024, 8 * (f.degree() + g.degree()));
  const auto r = bu_roots(f, g, samples);
  const Parity p = r.degenerate ? Parity::degenerate : (r.roots.size() % 2 ? Parity::odd : Parity::even);
  switch (p) {
    case Parity::odd: ++counts.odd; break;
    case Parity::even: ++counts.even; break;
    case Parity::degenerate: ++counts.degenerate; break;
  }
  std::printf("pair %zu: %s, roots: %zu\n", index, to_string(p), r.roots.size());
  if (r.degenerate) std::printf("  reason: %s\n", r.reason.c_str());
  for (const auto& root : r.roots)
    std::printf("  phi %s  direction (%s : %s)\n", num(root.phi).c_str(), num(root.direction.lambda).c_str(),
                num(root.direction.mu).c_str());
}

int cmd_bu(const std::vector<std::string>& polys, std::optional<std::size_t> random, std::size_t degree,
           std::uint64_t seed) {
  BuCounts counts;
  std::size_t pairs = 0;
  if (random) {
    if (!polys.empty()) throw InputError("give either two trig polynomials or --random, not both");
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < *random; ++i) {
      const auto f = random_trig_polynomial(rng, degree);
      const auto g = random_trig_polynomial(rng, degree);
      print_pair(i, f, g, counts);
    }
    pairs = *random;
  } else {
    if (polys.size() != 2) throw InputError("bu needs two trig polynomials f g, or --random n");
    print_pair(0, parse_trig(polys[0]), parse_trig(polys[1]), counts);
    pairs = 1;
  }
  std::printf("summary: %zu pairs, Odd %zu, Even %zu, Degenerate %zu\n", pairs, counts.odd, counts.even,
              counts.degenerate);
  return counts.even == 0 ? exit_ok : exit_failed;
}

int cmd_rank(const std::string& text) {
  ChordDiagram d;
  try {
    d = parse_diagram(text);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  std::printf("rank: %zu\n", rank(d));
  std::printf("partition:");
  for (const auto& block : partition(d).blocks) {
    std::printf(" {");
    for (std::size_t i = 0; i < block.size(); ++i) std::printf("%s%s", i ? " " : "", num(block[i].angle()).c_str());
    std::printf("}");
  }
  std::printf("\n");
  return exit_ok;
}

void print_scan(const ScanResult& r) {
  std::printf("grid: %d\n", r.grid);
  std::printf("tol: %s\n", num(r.tol).c_str());
  std::printf("cells scanned: %zu\n", r.cells_scanned);
  std::printf("cells refined: %zu\n", r.cells_refined);
  std::printf("flagged cells: %zu\n", r.flagged.size());
  std::printf("components: %zu\n", r.components.size());
  for (std::size_t i = 0; i < r.components.size() && i < 5; ++i) {
    const auto& c = r.components[i];
    std::printf("  size %zu, extent %d %d %d %d, parameters spanning >= 2 steps: %d\n", c.size, c.extent[0],
                c.extent[1], c.extent[2], c.extent[3], c.box_dimension);
  }
  std::printf("local solution dimension at landings:");
  if (r.landing_dimensions.empty()) std::printf(" none");
  for (const auto& [d, n] : r.landing_dimensions) std::printf(" %d (%zu)", d, n);
  std::printf("\n");
}

int cmd_scan(std::uint64_t seed, int grid, double tol, std::optional<int> refine) {
  if (grid < 12) throw InputError("--grid must be at least 12");
  if (!(tol >= 0.0)) throw InputError("--tol must be nonnegative");
  if (refine && (*refine < grid || *refine % grid != 0)) throw InputError("--refine must be a multiple of --grid");
  SplitMix64 rng(seed);
  const auto space = random_subspace(rng);
  ScanOptions opt;
  opt.grid = grid;
  opt.tol = tol;
  const auto r = degeneracy_scan(space, opt);
  std::printf("seed: %llu\n", static_cast<unsigned long long>(seed));
  print_scan(r);
  if (refine) {
    ScanOptions fine_opt = opt;
    fine_opt.grid = *refine;
    const auto fine = degeneracy_scan(space, fine_opt);
    std::printf("refined grid %d: flagged cells %zu, containment of coarse set %s\n", *refine, fine.flagged.size(),
                num(refinement_containment(r, fine)).c_str());
  }
  std::printf("nonempty: %s\n", r.nonempty() ? "pass" : "fail");
  std::printf("two-parameter extent: %s (grid-extent proxy for dimension >= 2)\n",
              r.two_parameter_extent() ? "yes" : "no");
  return r.nonempty() ? exit_ok : exit_failed;
}

int cmd_klein() {
  const auto k = klein_bottle();
  const auto& c = k.complex;
  std::printf("Klein bottle: %zu vertices, %zu edges, %zu triangles\n", c.count(0), c.count(1), c.count(2));
  std::printf("betti:");
  for (auto b : betti(to_chain_complex(c, "klein"))) std::printf(" %zu", b);
  std::printf("\n");
  const auto w = restricted_W(k);
  std::printf("W on fiber loop u: %d, on section loop v: %d\n", pairing(w, k.loop_u) ? 1 : 0,
              pairing(w, k.loop_v) ? 1 : 0);
  const bool sq = cup_square_pairing(k, w);
  std::printf("cup square on Klein bottle: %d\n", sq ? 1 : 0);
  const auto t = torus();
  const auto basis = cohomology_basis(t.complex, 1);
  bool all_zero = true;
  for (std::size_t mask = 1; mask < (std::size_t{1} << basis.size()); ++mask) {
    Cochain x = Cochain::zero(t.complex, 1);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (mask >> i & 1u) x = x + basis[i];
    all_zero = all_zero && !cup_square_pairing(t, x);
  }
  std::printf("cup squares on torus: %s\n", all_zero ? "all 0" : "not all 0");
  return sq && all_zero ? exit_ok : exit_failed;
}

int cmd_monodromy(std::size_t steps) {
  if (steps < 8) throw InputError("--steps must be at least 8");
  const int a = monodromy_sign(FrameLoop::cd1_diameters, steps, 1);
  const int b = monodromy_sign(FrameLoop::gamma_inf_frame, steps, 1);
  const int a2 = monodromy_sign(FrameLoop::cd1_diameters, steps, 2);
  const int b2 = monodromy_sign(FrameLoop::gamma_inf_frame, steps, 2);
  std::printf("steps: %zu\n", steps);
  std::printf("diameter frame: %d\n", a);
  std::printf("two-point frame: %d\n", b);
  std::printf("doubled loops: %d %d\n", a2, b2);
  return a == -1 && b == -1 && a2 == 1 && b2 == 1 ? exit_ok : exit_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mod-2 homology and analytic checks for chord-diagram spaces"};
  app.require_subcommand(1);

  std::string complex_path;
  auto* homology = app.add_subcommand("homology", "validate a chain-complex JSON file and print its Betti numbers");
  homology->add_option("path", complex_path, "chain-complex JSON file")->required();

  std::optional<std::uint64_t> seed;
  bool list = false, json = false, quick = false;
  auto* verify = app.add_subcommand("verify", "run the verification report");
  verify->add_option("--seed", seed, "RNG seed (default: $CDLAB_SEED or 1)");
  verify->add_flag("--list", list, "list statement ids without running");
  verify->add_flag("--json", json, "machine-readable output");
  verify->add_flag("--quick", quick, "reduced sample sizes");

  std::vector<std::string> polys;
  std::optional<std::size_t> random;
  std::size_t degree = 4;
  auto* bu = app.add_subcommand("bu", "antipodal derivative roots and parity for pairs of trig polynomials");
  bu->add_option("polys", polys, "two trig polynomials as {\"a0\":x,\"cos\":[...],\"sin\":[...]}");
  bu->add_option("--random", random, "number of random pairs");
  bu->add_option("--degree", degree, "degree of random polynomials")->capture_default_str();
  bu->add_option("--seed", seed, "RNG seed (default: $CDLAB_SEED or 1)");

  std::string diagram;
  auto* rank_cmd = app.add_subcommand("rank", "rank and endpoint partition of a chord diagram");
  rank_cmd->add_option("diagram", diagram, "chords as \"x-y,x-y\" in radians")->required();

  int grid = 24;
  double tol = 1e-6;
  std::optional<int> refine;
  auto* scan = app.add_subcommand("scan-f7", "degeneracy scan of a random 7-dimensional map space");
  scan->add_option("--seed", seed, "RNG seed (default: $CDLAB_SEED or 1)");
  scan->add_option("--grid", grid, "grid points per circle (>= 12)")->capture_default_str();
  scan->add_option("--tol", tol, "relative singular value threshold")->capture_default_str();
  scan->add_option("--refine", refine, "also scan this finer grid and report containment");

  app.add_subcommand("klein", "cup square of the restricted class on the Klein bottle");

  std::size_t steps = 64;
  auto* mono = app.add_subcommand("monodromy", "orientation behaviour of canonical frames around diameters");
  mono->add_option("--steps", steps, "transport steps")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_input;
  }

  try {
    const auto get_seed = [&] { return seed ? *seed : default_seed(); };
    if (app.got_subcommand(homology)) return cmd_homology(complex_path);
    if (app.got_subcommand(verify)) return cmd_verify(get_seed(), list, json, quick);
    if (app.got_subcommand(bu)) return cmd_bu(polys, random, degree, get_seed());
    if (app.got_subcommand(rank_cmd)) return cmd_rank(diagram);
    if (app.got_subcommand(scan)) return cmd_scan(get_seed(), grid, tol, refine);
    if (app.got_subcommand("klein")) return cmd_klein();
    if (app.got_subcommand(mono)) return cmd_monodromy(steps);
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_input;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_input;
  }
  return exit_input;
}
