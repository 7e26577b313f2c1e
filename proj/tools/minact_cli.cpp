// minact: command-line front end for minimal abelian actions on circles.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "minact/json_io.hpp"

namespace {

using namespace minact;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitResource = 2;
constexpr int kExitAmbiguous = 3;
constexpr int kExitParse = 64;
constexpr int kExitNonAbelian = 65;

struct RunConfig {
  std::string group;
  std::string catalog;
  std::vector<Int> primes;
  Int circles = 1;
  bool non_effective = false;
  std::string input;  // certificate, action file or PL bundle path
  std::string preset;
  double epsilon = 1e-2;
  std::size_t budget = 500;
  std::size_t grid = 64;
  std::uint64_t seed = 1;
  std::string out;
  std::size_t trials = 1000;
};

void emit(const RunConfig& cfg, const std::string& name, const json& doc) {
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!cfg.out.empty()) {
    std::filesystem::create_directories(cfg.out);
    io::write_file_atomic((std::filesystem::path(cfg.out) / name).string(), text);
  }
}

json decision_json(const FgAbelianGroup& G, Int circles, bool non_effective, const BasisPtr& basis) {
  json doc = {{"group", io::group_to_json(G)}, {"circles", circles}, {"effective", !non_effective}};
  if (non_effective) {
    auto q = decide_non_effective(G, circles, basis);
    doc["decision"] = q ? "yes" : "no";
    if (q) {
      doc["kernel_generators"] = io::matrix_to_json(q->kernel.generators.transpose());
      doc["quotient"] = io::group_to_json(q->quotient);
      doc["projection"] = io::matrix_to_json(q->projection);
      doc["certificate"] = io::certificate_to_json(q->effective);
    } else {
      doc["reason"] = "G is finite, so no quotient of G embeds densely in a finite extension of the circle group";
    }
    return doc;
  }
  auto c = decide_effective(G, circles, basis);
  doc["decision"] = c ? "yes" : "no";
  if (c) {
    doc["certificate"] = io::certificate_to_json(*c);
  } else if (G.is_finite()) {
    doc["reason"] = "G is finite, so it has no subgroup isomorphic to a dense subgroup of the circle";
  } else {
    doc["reason"] = "no subgroup of index " + std::to_string(circles) +
                    " is infinite with cyclic torsion, so none embeds densely in the circle";
  }
  return doc;
}

int run_decide(const RunConfig& cfg) {
  const BasisPtr basis = io::basis_from_environment();
  if (!cfg.catalog.empty()) {
    const auto d = decide_catalog(io::parse_catalog(cfg.catalog, cfg.primes), cfg.circles);
    json doc = {{"catalog", cfg.catalog},
                {"primes", cfg.primes},
                {"circles", cfg.circles},
                {"decision", d.admits_minimal_action ? "yes" : "no"},
                {"reason", d.explanation}};
    if (!d.factor_primes.empty()) doc["factor_primes"] = d.factor_primes;
    emit(cfg, "decision.json", doc);
    return kExitOk;
  }
  if (cfg.group.empty()) throw io::ParseError("decide needs --group or --catalog");
  emit(cfg, "decision.json", decision_json(io::parse_group_spec(cfg.group), cfg.circles, cfg.non_effective, basis));
  return kExitOk;
}

int run_construct(const RunConfig& cfg) {
  const BasisPtr basis = io::basis_from_environment();
  std::optional<ConstructedAction> action;
  if (!cfg.input.empty()) {
    json doc = io::read_json_file(cfg.input);
    if (doc.contains("decision")) {
      if (doc.at("decision") != "yes" || !doc.contains("certificate"))
        throw io::ParseError("decision file carries no certificate");
      doc = doc.at("certificate");
    }
    action = build_action(io::certificate_from_json(doc, basis));
  } else {
    if (cfg.group.empty()) throw io::ParseError("construct needs --input or --group");
    const FgAbelianGroup G = io::parse_group_spec(cfg.group);
    if (cfg.non_effective) {
      auto q = decide_non_effective(G, cfg.circles, basis);
      if (!q) throw io::ParseError("no minimal action exists for this group and number of circles");
      action = build_action(*q);
    } else {
      auto c = decide_effective(G, cfg.circles, basis);
      if (!c) throw io::ParseError("no effective minimal action exists for this group and number of circles");
      action = build_action(*c);
    }
  }
  const auto free = freeness_check(*action);
  if (!free.free) throw std::logic_error("constructed action is not free");
  emit(cfg, "action.json", io::action_to_json(*action));
  return kExitOk;
}

std::vector<PLMap> preset_maps(const std::string& preset) {
  const BasisPtr basis = io::basis_from_environment();
  auto colon = preset.find(':');
  const std::string kind = preset.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : preset.substr(colon + 1);
  if (kind == "rotation") {
    double a;
    if (basis->index_of(arg)) {
      a = RotationNumber::symbol(basis, arg).to_double();
    } else {
      a = RotationNumber(io::parse_rational(arg)).to_double();
    }
    return {PLMap::rotation(a)};
  }
  if (kind == "denjoy") {
    const std::size_t stages = arg.empty() ? 8 : std::stoul(arg);
    return {denjoy_stage(RotationNumber::symbol(basis, (*basis)[0].name).to_double(), stages)};
  }
  throw io::ParseError("unknown preset: " + preset);
}

int run_classify(const RunConfig& cfg) {
  const BasisPtr basis = io::basis_from_environment();
  std::vector<PLMap> gens;
  if (!cfg.preset.empty()) {
    gens = preset_maps(cfg.preset);
  } else if (!cfg.input.empty()) {
    json doc = io::read_json_file(cfg.input);
    gens = doc.contains("space") ? io::pl_bundle_from_json(doc) : to_pl_maps(io::action_from_json(doc, basis));
  } else {
    throw io::ParseError("classify needs --input or --preset");
  }
  MinimalSetBudget budget;
  budget.max_word_length = std::max<std::size_t>(cfg.budget, 2);
  std::mt19937_64 rng(cfg.seed);
  const auto& space = gens.front().space();
  std::uniform_int_distribution<std::size_t> comp(0, space.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const PLPoint start{comp(rng), io::round12(unit(rng))};
  const auto ms = approximate_minimal_set(gens, cfg.epsilon, budget, start);
  // J: the component of the first point of M, as a free interval.
  FreeInterval J{ms.points.front().component, 0.0, 1.0};
  const auto report = classify_trichotomy(ms.points, space, J, cfg.epsilon, gens);
  json doc = io::report_to_json(report, cfg.epsilon);
  doc["start"] = {start.component, start.x};
  doc["invariance_defect"] = io::round12(ms.invariance_defect);
  doc["restarts"] = ms.restarts;
  doc["budget_exhausted"] = ms.budget_exhausted;
  if (gens.size() == 1 && space.size() == 1 && space.is_circle(0) && gens[0].is_homeomorphism() &&
      gens[0].degree(0) == 1)
    doc["rotation_number_estimate"] = io::round12(rotation_number_estimate(gens[0], 10000));
  emit(cfg, "report.json", doc);
  if (!cfg.out.empty())
    io::write_file_atomic((std::filesystem::path(cfg.out) / "cloud.csv").string(), io::cloud_csv(report.points));
  return kExitOk;
}

int run_verify(const RunConfig& cfg) {
  const BasisPtr basis = io::basis_from_environment();
  if (cfg.input.empty()) throw io::ParseError("verify needs --input");
  const ConstructedAction action = io::action_from_json(io::read_json_file(cfg.input), basis);
  bool ok = true;
  json doc;
  const auto cc = validate_cocycle(action.extension().cocycle());
  doc["cocycle"] = {{"ok", cc.ok}};
  if (!cc.ok) {
    ok = false;
    doc["cocycle"]["failure"] = cc.failure;
    doc["cocycle"]["where"] = *cc.where;
  }
  const auto fr = freeness_check(action);
  doc["freeness"] = {{"ok", fr.free}, {"trace", fr.trace}};
  ok = ok && fr.free;
  std::mt19937_64 rng(cfg.seed);
  const auto gl = check_group_law(action, rng, cfg.trials);
  doc["group_law"] = {{"ok", gl.ok}, {"trials", gl.trials}};
  if (!gl.ok) doc["group_law"]["failure"] = gl.failure;
  ok = ok && gl.ok;
  const bool trans = action.component_transitive();
  doc["component_transitive"] = {{"ok", trans}};
  ok = ok && trans;
  const auto mc = minimality_certificate(action, cfg.epsilon, static_cast<Int>(cfg.budget), static_cast<Int>(cfg.grid));
  doc["minimality"] = {{"ok", mc.status == MinimalityStatus::Certified},
                       {"status", to_string(mc.status)},
                       {"worst_gap", io::round12(mc.worst_gap)},
                       {"reason", mc.reason}};
  ok = ok && mc.status == MinimalityStatus::Certified;
  doc["ok"] = ok;
  emit(cfg, "verify.json", doc);
  return ok ? kExitOk : kExitVerifyFailed;
}

void check_config(const RunConfig& cfg) {
  if (cfg.circles < 1) throw io::ParseError("--circles must be positive");
  if (!(cfg.epsilon > 0)) throw io::ParseError("--epsilon must be positive");
  if (cfg.budget < 1 || cfg.grid < 1 || cfg.trials < 1) throw io::ParseError("budgets must be positive");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal actions of abelian groups and semigroups on finitely many circles"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--seed", cfg.seed, "Seed for all random sampling");
    s->add_option("--out", cfg.out, "Output directory");
  };
  auto* decide = app.add_subcommand("decide", "Decide whether a minimal action on the given circles exists");
  decide->add_option("--group", cfg.group, "Group: Z, Z^2, Z+Z2, ... or a JSON file");
  decide->add_option("--catalog", cfg.catalog, "torsion_circle | prime_sum | rationals | prufer");
  decide->add_option("--primes", cfg.primes, "Primes for prime_sum / prufer")->delimiter(',');
  decide->add_option("--circles", cfg.circles, "Number of circles");
  decide->add_flag("--non-effective", cfg.non_effective, "Allow a non-effective action");
  add_common(decide);

  auto* construct = app.add_subcommand("construct", "Build the action from a certificate");
  construct->add_option("--input", cfg.input, "Certificate or decision JSON");
  construct->add_option("--group", cfg.group, "Group, decided on the fly");
  construct->add_option("--circles", cfg.circles, "Number of circles");
  construct->add_flag("--non-effective", cfg.non_effective, "Allow a non-effective action");
  add_common(construct);

  auto* classify = app.add_subcommand("classify", "Approximate and classify a minimal set");
  classify->add_option("--input", cfg.input, "PL bundle or action JSON");
  classify->add_option("--preset", cfg.preset, "rotation:<p/q or symbol> | denjoy:<stages>");
  classify->add_option("--epsilon", cfg.epsilon, "Resolution");
  classify->add_option("--budget", cfg.budget, "Maximum word length");
  add_common(classify);

  auto* verify = app.add_subcommand("verify", "Run the property suite on an action file");
  verify->add_option("--input", cfg.input, "Action JSON");
  verify->add_option("--epsilon", cfg.epsilon, "Minimality resolution");
  verify->add_option("--budget", cfg.budget, "Maximum word length");
  verify->add_option("--grid", cfg.grid, "Start points per circle");
  verify->add_option("--trials", cfg.trials, "Random group-law triples");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    check_config(cfg);
    if (decide->parsed()) return run_decide(cfg);
    if (construct->parsed()) return run_construct(cfg);
    if (classify->parsed()) return run_classify(cfg);
    if (verify->parsed()) return run_verify(cfg);
  } catch (const ResourceLimitExceeded& e) {
    std::cerr << "resource bound: " << e.what() << "\n";
    return kExitResource;
  } catch (const NonCommutingError& e) {
    std::cerr << "non-abelian generators: " << e.what() << "\n";
    return kExitNonAbelian;
  } catch (const AmbiguousVerdict& e) {
    std::cerr << "ambiguous: " << e.what() << "\n";
    return kExitAmbiguous;
  } catch (const MinimalityRejected& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return kExitAmbiguous;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  return kExitParse;
}
