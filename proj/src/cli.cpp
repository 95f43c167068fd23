#include "afrel/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "afrel/cocycle.hpp"
#include "afrel/diagram.hpp"
#include "afrel/error.hpp"
#include "afrel/harmonic.hpp"
#include "afrel/io.hpp"
#include "afrel/markov.hpp"
#include "afrel/normalize.hpp"
#include "afrel/shift.hpp"
#include "afrel/suites.hpp"
#include "afrel/transfer.hpp"

namespace afrel::cli {

using io::Json;

std::string status_name(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::InvalidInput: return "invalid-input";
    case Status::NoConvergence: return "no-convergence";
    case Status::Refused: return "refused";
  }
  return "invalid-input";
}

int CommandResult::exit_code() const noexcept {
  switch (status) {
    case Status::Ok: return 0;
    case Status::NoConvergence: return 2;
    default: return 1;
  }
}

std::string CommandResult::render() const {
  if (payload.is_null()) return {};
  return payload.dump() + "\n";
}

const std::vector<Coverage>& operation_coverage() {
  static const std::vector<Coverage> table{
      {"diagram", "validate_diagram", "validate"},
      {"diagram", "stationary_from_matrix", "stationary"},
      {"diagram", "enumerate_paths", "paths"},
      {"diagram", "tail_pairs", "paths"},
      {"cocycle", "eval_quasi_product", "cocycle"},
      {"cocycle", "apply_coboundary", "cocycle"},
      {"cocycle", "check_cocycle_identity", "cocycle"},
      {"markov", "measure_cylinder", "measure"},
      {"markov", "radon_nikodym", "rn"},
      {"markov", "quasi_invariance_check", "rn"},
      {"markov", "recover_harmonic", "rn"},
      {"harmonic", "solve_stationary", "harmonic"},
      {"harmonic", "is_primitive", "harmonic"},
      {"harmonic", "solve_truncated", "harmonic"},
      {"harmonic", "uniqueness_probe", "harmonic"},
      {"harmonic", "markov_measure_from_harmonic", "measure"},
      {"transfer", "build_transfer_matrix", "pressure"},
      {"transfer", "pressure", "pressure"},
      {"transfer", "leading_eigen", "pressure"},
      {"transfer", "eigenmeasure_cylinder", "eigenmeasure"},
      {"transfer", "jacobian_check", "eigenmeasure"},
      {"transfer", "kms_beta", "kms"},
      {"shift", "c_phi_eval", "cphi"},
      {"shift", "restrict_to_tail", "cphi"},
      {"shift", "stationarity_check", "stationarity"},
      {"normalize", "build_tower", "normalize"},
      {"normalize", "tower_to_diagram", "normalize"},
      {"normalize", "refine_for_cocycle", "normalize"},
      {"normalize", "verify_normalization", "normalize"},
  };
  return table;
}

std::vector<std::string> subcommands() {
  return {"validate", "stationary", "paths", "cocycle", "harmonic", "measure", "rn",
          "pressure", "eigenmeasure", "kms", "cphi", "stationarity", "normalize", "check"};
}

namespace {

// Option storage for every subcommand; CLI11 binds into it.
struct Options {
  std::string file;
  std::string diagram, matrix, phi, labelling, measure, psi, weights, terminal = "uniform";
  std::string sft, potential, chain, bprime;
  std::string a, b, c, stub, extension, cylinder, word, suite;
  int depth = -1;
  int levels = -1;
  int jacobian = -1;
  int check_depth = -1;
  std::size_t probe = 0;
  double tol = -1.0;
  std::uint64_t seed = 0;
  bool pairs = false, emit = false, recover = false, eigen = false, matrix_out = false, normalize = false,
       tail = false;
};

double tol_or(const Options& o, double fallback) { return o.tol > 0.0 ? o.tol : fallback; }

Json json_of(const std::vector<std::string>& xs) { return Json(xs); }

BratteliDiagram load_diagram(const std::string& path) { return io::diagram_from_json(io::read_file(path)); }

Labelling load_phi(const Options& o, const BratteliDiagram& d) {
  if (o.phi.empty()) return Labelling::from_edge_labels(d);
  return io::labelling_from_json(io::read_file(o.phi));
}

void require_tail_pair(const BratteliDiagram& d, const TailPair& pair) {
  if (!d.is_tail_pair(pair)) invalid_input("paths do not form a tail pair of the diagram");
}

CommandResult ok(Json payload) { return CommandResult{Status::Ok, std::move(payload), {}}; }

CommandResult cmd_validate(const Options& o) {
  const ValidationReport rep = validate_diagram(load_diagram(o.file));
  CommandResult r = ok(Json{{"ok", rep.ok}, {"violations", json_of(rep.violations)}});
  if (!rep.ok) {
    r.status = Status::InvalidInput;
    r.diagnostics = rep.violations;
  }
  return r;
}

CommandResult cmd_stationary(const Options& o) {
  return ok(io::to_json(stationary_from_matrix(io::matrix_from_json(io::read_file(o.matrix)), o.levels)));
}

CommandResult cmd_paths(const Options& o) {
  const BratteliDiagram d = load_diagram(o.diagram);
  if (o.pairs) {
    Json list = Json::array();
    for (const auto& p : tail_pairs(d, o.depth)) list.push_back(Json{io::to_json(p.a), io::to_json(p.b)});
    return ok(Json{{"count", list.size()}, {"pairs", list}});
  }
  Json list = Json::array();
  for (const auto& p : enumerate_paths(d, o.depth)) list.push_back(io::to_json(p));
  return ok(Json{{"count", list.size()}, {"paths", list}});
}

CommandResult cmd_cocycle(const Options& o) {
  const BratteliDiagram d = load_diagram(o.diagram);
  const Labelling f = io::labelling_from_json(io::read_file(o.labelling));
  if (auto missing = f.first_missing(d))
    invalid_input("missing edge label for edge " + std::to_string(missing->second) + " at level " +
                  std::to_string(missing->first));
  const TailPair pair{io::parse_path(o.a), io::parse_path(o.b)};
  require_tail_pair(d, pair);
  Json out{{"value", io::to_json(eval_quasi_product(f, pair))}};
  if (!o.psi.empty())
    out["coboundary_value"] = io::to_json(apply_coboundary(f, io::coboundary_from_json(io::read_file(o.psi)), pair));
  if (!o.c.empty()) {
    const FinitePath c = io::parse_path(o.c);
    out["identity"] = check_cocycle_identity(f, d, pair.a, pair.b, c, tol_or(o, 1e-12));
  }
  return ok(out);
}

std::map<int, double> load_terminal(const Options& o) {
  if (o.terminal == "uniform") return {};
  return io::vertex_map_from_json(io::read_file(o.terminal));
}

CommandResult cmd_harmonic(const Options& o) {
  if (!o.matrix.empty()) {
    const Matrix a = io::matrix_from_json(io::read_file(o.matrix));
    const bool primitive = is_primitive(a);
    if (!primitive) refuse("matrix is not primitive: power iteration has no unique Perron limit to converge to");
    const PerronResult p = solve_stationary(a, tol_or(o, 1e-12));
    return ok(Json{{"primitive", primitive},
                   {"lambda", p.lambda},
                   {"rho0", p.vector},
                   {"iterations", p.iterations},
                   {"residual", p.residual}});
  }
  if (o.diagram.empty()) invalid_input("harmonic needs --matrix or --diagram");
  const BratteliDiagram d = load_diagram(o.diagram);
  const Labelling phi = load_phi(o, d);
  const int depth = o.depth >= 0 ? o.depth : d.levels();
  if (o.probe > 0) {
    const UniquenessReport rep = uniqueness_probe(d, phi, depth, o.probe, tol_or(o, 1e-8), o.seed);
    return ok(Json{{"trials", rep.trials},
                   {"max_deviation", rep.max_deviation},
                   {"possibly_non_unique", rep.possibly_non_unique}});
  }
  const HarmonicVector rho = solve_truncated(d, phi, depth, load_terminal(o));
  Json out = io::to_json(rho);
  out["residual"] = harmonic_residual(d, phi, rho);
  return ok(out);
}

CommandResult cmd_measure(const Options& o) {
  const BratteliDiagram d = load_diagram(o.diagram);
  std::optional<MarkovMeasure> m;
  if (!o.measure.empty()) {
    m.emplace(io::markov_from_json(d, io::read_file(o.measure)));
  } else {
    const Labelling phi = load_phi(o, d);
    const int depth = o.depth >= 0 ? o.depth : d.levels();
    m.emplace(markov_measure_from_harmonic(d, phi, solve_truncated(d, phi, depth, load_terminal(o))));
  }
  Json out = Json::object();
  if (!o.cylinder.empty()) {
    const FinitePath path = io::parse_path(o.cylinder);
    if (!m->diagram().is_path(path)) invalid_input("cylinder is not a path of the measure's diagram");
    const double lm = measure_cylinder(*m, path);
    out["log_measure"] = lm;
    out["measure"] = std::exp(lm);
  }
  if (o.emit || o.cylinder.empty()) out["markov"] = io::to_json(*m);
  return ok(out);
}

CommandResult cmd_rn(const Options& o) {
  const BratteliDiagram d = load_diagram(o.diagram);
  const MarkovMeasure m = io::markov_from_json(d, io::read_file(o.measure));
  Json out = Json::object();
  if (!o.a.empty() || !o.b.empty()) {
    const TailPair pair{io::parse_path(o.a), io::parse_path(o.b)};
    require_tail_pair(d, pair);
    const double lr = radon_nikodym(m, pair);
    out["log_rn"] = lr;
    out["rn"] = std::exp(lr);
  }
  if (o.check_depth >= 0 || o.recover) {
    if (o.phi.empty()) invalid_input("--check and --recover need --phi");
    const Labelling phi = io::labelling_from_json(io::read_file(o.phi));
    if (o.check_depth >= 0) {
      std::map<int, double> log_w;
      if (!o.weights.empty())
        for (const auto& [v, w] : io::vertex_map_from_json(io::read_file(o.weights))) {
          if (!(w > 0.0)) invalid_input("initial-vertex weights must be positive");
          log_w[v] = std::log(w);
        }
      const auto rep = quasi_invariance_check(m, phi.log(), log_w, o.check_depth, tol_or(o, 1e-10));
      Json failures = Json::array();
      for (const auto& f : rep.failures)
        failures.push_back(Json{{"a", io::to_json(f.pair.a)},
                                {"b", io::to_json(f.pair.b)},
                                {"extension", f.extension},
                                {"deviation", f.deviation}});
      out["quasi_invariance"] = Json{{"ok", rep.ok()},
                                     {"checked", rep.checked},
                                     {"failure_count", rep.failure_count},
                                     {"max_deviation", rep.max_deviation},
                                     {"failures", failures}};
    }
    if (o.recover) {
      const HarmonicRecovery rec = recover_harmonic(m, phi);
      Json j{{"consistent", rec.consistent},
             {"max_log_spread", rec.max_log_spread},
             {"inconsistencies", json_of(rec.inconsistencies)}};
      if (rec.rho) j["rho"] = io::to_json(*rec.rho)["rho"];
      out["recovery"] = j;
    }
  }
  if (out.empty()) invalid_input("rn needs --a/--b, --check or --recover");
  return ok(out);
}

struct ShiftInput {
  Sft sft;
  Potential phi;
};

ShiftInput load_shift(const Options& o) {
  Sft s = io::sft_from_json(io::read_file(o.sft));
  Potential phi = io::potential_from_json(io::read_file(o.potential), s.alphabet());
  phi.require_total(s);
  return {std::move(s), std::move(phi)};
}

Json words_json(const std::vector<Word>& ws, int alphabet) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(format_word(w, alphabet));
  return out;
}

CommandResult cmd_pressure(const Options& o) {
  const auto [s, phi] = load_shift(o);
  const double tol = tol_or(o, kTransferTol);
  Json out{{"pressure", pressure(s, phi, tol)}};
  if (o.eigen) {
    const TransferResult r = leading_eigen(s, phi, tol);
    out["lambda"] = r.lambda;
    out["index"] = words_json(r.index, s.alphabet());
    out["h"] = r.h;
    out["nu"] = r.nu;
    out["residual_h"] = r.residual_h;
    out["residual_nu"] = r.residual_nu;
    out["iterations_h"] = r.iterations_h;
    out["iterations_nu"] = r.iterations_nu;
  }
  if (o.matrix_out) {
    const TransferMatrix tm = build_transfer_matrix(s, phi);
    out["transfer_matrix"] = Json{{"index", words_json(tm.index, s.alphabet())}, {"matrix", tm.matrix.to_rows()}};
  }
  return ok(out);
}

CommandResult cmd_eigenmeasure(const Options& o) {
  auto [s, phi] = load_shift(o);
  Json out = Json::object();
  if (o.normalize) {
    const double p = pressure(s, phi);
    phi = phi.shifted(-p);
    out["subtracted_pressure"] = p;
  }
  const TransferResult r = leading_eigen(s, phi);
  if (!o.word.empty()) {
    const double lm = eigenmeasure_cylinder(s, phi, r, parse_word(o.word, s.alphabet()));
    out["log_measure"] = std::isfinite(lm) ? Json(lm) : Json(nullptr);
    out["measure"] = std::isfinite(lm) ? std::exp(lm) : 0.0;
  }
  if (o.jacobian >= 0) {
    const JacobianReport rep = jacobian_check(s, phi, r, o.jacobian, tol_or(o, 1e-9));
    Json failures = Json::array();
    for (const auto& [w, dev] : rep.failures)
      failures.push_back(Json{{"word", format_word(w, s.alphabet())}, {"deviation", dev}});
    out["jacobian"] = Json{{"ok", rep.ok()},
                           {"checked", rep.checked},
                           {"failure_count", rep.failure_count},
                           {"max_deviation", rep.max_deviation},
                           {"failures", failures}};
  }
  if (out.empty() || (o.word.empty() && o.jacobian < 0)) invalid_input("eigenmeasure needs --word or --jacobian");
  return ok(out);
}

CommandResult cmd_kms(const Options& o) {
  const auto [s, phi] = load_shift(o);
  return ok(Json{{"beta", kms_beta(s, phi, tol_or(o, kTransferTol))}});
}

CommandResult cmd_cphi(const Options& o) {
  const auto [s, phi] = load_shift(o);
  if (o.tail) {
    const TailPair pair{io::parse_path(o.a), io::parse_path(o.b)};
    const Word ext = o.extension.empty() ? Word{} : parse_word(o.extension, s.alphabet());
    return ok(Json{{"c_phi", restrict_to_tail(s, phi, pair, ext)}, {"lag", 0}});
  }
  const LagElement g{parse_word(o.a, s.alphabet()), parse_word(o.b, s.alphabet()),
                     o.stub.empty() ? Word{} : parse_word(o.stub, s.alphabet())};
  return ok(Json{{"c_phi", c_phi_eval(s, phi, g)}, {"lag", g.lag()}});
}

CommandResult cmd_stationarity(const Options& o) {
  const auto [s, phi] = load_shift(o);
  const Labelling c = o.labelling.empty() ? canonical_labelling(s, phi, o.depth)
                                          : io::labelling_from_json(io::read_file(o.labelling));
  const StationarityReport rep = stationarity_check(s, c, phi, o.depth, tol_or(o, 1e-12));
  return ok(Json{{"ok", rep.ok()},
                 {"checked", rep.checked},
                 {"skipped", rep.skipped},
                 {"failure_count", rep.failure_count},
                 {"max_deviation", rep.max_deviation},
                 {"failures", json_of(rep.failures)}});
}

CommandResult cmd_normalize(const Options& o) {
  const Json j = io::read_file(o.chain);
  const QuotientChain chain = io::chain_from_json(j);
  std::optional<FinitelyValuedCocycleData> data;
  if (!o.bprime.empty()) {
    data = io::cocycle_data_from_json(io::read_file(o.bprime));
  } else if (io::has_cocycle_data(j)) {
    data = io::cocycle_data_from_json(j);
  }
  if (!data) {
    const Tower t = build_tower(chain);
    const BratteliDiagram d = tower_to_diagram(chain, t);
    return ok(Json{{"tower", io::to_json(t)}, {"diagram", io::to_json(d)}, {"valid", validate_diagram(d).ok}});
  }
  const Normalization norm = refine_for_cocycle(chain, *data);
  const int depth = o.depth >= 0 ? o.depth : chain.length();
  const NormalizationReport rep = verify_normalization(chain, norm.tower, norm.labelling, *data, depth);
  return ok(Json{{"tower", io::to_json(norm.tower)},
                 {"diagram", io::to_json(norm.diagram)},
                 {"labelling", io::to_json(norm.labelling)},
                 {"valid", validate_diagram(norm.diagram).ok},
                 {"verification", Json{{"ok", rep.ok()},
                                       {"depth", depth},
                                       {"pairs_checked", rep.pairs_checked},
                                       {"failures", json_of(rep.failures)}}}});
}

CommandResult cmd_check(const Options& o) {
  const SuiteResult r = run_suite(o.suite, o.seed);
  CommandResult out = ok(Json{{"suite", r.name},
                              {"seed", o.seed},
                              {"ok", r.ok()},
                              {"cases", r.cases},
                              {"failure_count", r.failure_count},
                              {"failures", json_of(r.failures)},
                              {"metrics", r.metrics}});
  if (!r.ok()) {
    out.status = Status::InvalidInput;
    out.diagnostics.push_back("suite " + r.name + " failed " + std::to_string(r.failure_count) + " cases");
  }
  return out;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"AF equivalence relations, Radon-Nikodym problems and transfer operators", "afrel"};
  app.require_subcommand(1);
  std::map<CLI::App*, std::function<CommandResult(const Options&)>> dispatch;

  auto sub = [&](const std::string& name, const std::string& help, std::function<CommandResult(const Options&)> fn) {
    CLI::App* s = app.add_subcommand(name, help);
    dispatch[s] = std::move(fn);
    return s;
  };
  auto add_shift = [&](CLI::App* s) {
    s->add_option("--sft", o.sft, "SFT JSON {d, matrix}")->required();
    s->add_option("--potential", o.potential, "potential JSON {range, values} or {constant}")->required();
  };

  auto* validate = sub("validate", "check the diagram invariants", cmd_validate);
  validate->add_option("diagram", o.file, "diagram JSON")->required();

  auto* stationary = sub("stationary", "stationary diagram of a nonnegative matrix", cmd_stationary);
  stationary->add_option("--matrix", o.matrix, "matrix JSON {d, matrix}")->required();
  stationary->add_option("--levels", o.levels, "truncation depth L")->required();

  auto* paths = sub("paths", "enumerate depth-n paths or tail pairs", cmd_paths);
  paths->add_option("--diagram", o.diagram)->required();
  paths->add_option("--depth", o.depth)->required();
  paths->add_flag("--pairs", o.pairs, "list tail pairs instead of paths");

  auto* cocycle = sub("cocycle", "quasi-product cocycle on a tail pair", cmd_cocycle);
  cocycle->add_option("--diagram", o.diagram)->required();
  cocycle->add_option("--labelling", o.labelling)->required();
  cocycle->add_option("--a", o.a, "edge ids, e.g. 0,3")->required();
  cocycle->add_option("--b", o.b, "edge ids")->required();
  cocycle->add_option("--psi", o.psi, "coboundary JSON {range, values}");
  cocycle->add_option("--c", o.c, "third path: check the cocycle identity");
  cocycle->add_option("--tol", o.tol);

  auto* harmonic = sub("harmonic", "Phi-harmonic functions", cmd_harmonic);
  harmonic->add_option("--matrix", o.matrix, "stationary case: Perron data");
  harmonic->add_option("--diagram", o.diagram, "general case: truncated backward recursion");
  harmonic->add_option("--phi", o.phi, "positive labelling JSON (default: edge labels)");
  harmonic->add_option("--depth", o.depth);
  harmonic->add_option("--terminal", o.terminal, "uniform or a vertex-map JSON");
  harmonic->add_option("--probe", o.probe, "run a uniqueness probe with this many trials");
  harmonic->add_option("--tol", o.tol);
  harmonic->add_option("--seed", o.seed);

  auto* measure = sub("measure", "Markov measure from Phi (or a file) and cylinder values", cmd_measure);
  measure->add_option("--diagram", o.diagram)->required();
  measure->add_option("--phi", o.phi);
  measure->add_option("--measure", o.measure, "Markov measure JSON instead of Phi");
  measure->add_option("--depth", o.depth);
  measure->add_option("--terminal", o.terminal);
  measure->add_option("--cylinder", o.cylinder, "edge ids, e.g. 1,2,1");
  measure->add_flag("--emit", o.emit, "print the measure as JSON");

  auto* rn = sub("rn", "Radon-Nikodym derivative, quasi-invariance and harmonic recovery", cmd_rn);
  rn->add_option("--diagram", o.diagram)->required();
  rn->add_option("--measure", o.measure)->required();
  rn->add_option("--a", o.a);
  rn->add_option("--b", o.b);
  rn->add_option("--phi", o.phi, "positive labelling JSON");
  rn->add_option("--check", o.check_depth, "quasi-invariance depth");
  rn->add_option("--weights", o.weights, "initial-vertex weights JSON");
  rn->add_flag("--recover", o.recover, "recover rho from the measure");
  rn->add_option("--tol", o.tol);

  auto* pressure_cmd = sub("pressure", "topological pressure via the transfer operator", cmd_pressure);
  add_shift(pressure_cmd);
  pressure_cmd->add_flag("--eigen", o.eigen, "include eigenfunction and eigenmeasure");
  pressure_cmd->add_flag("--matrix-out", o.matrix_out, "include the transfer matrix");
  pressure_cmd->add_option("--tol", o.tol);

  auto* eigenmeasure = sub("eigenmeasure", "eigenmeasure cylinders and the Jacobian check", cmd_eigenmeasure);
  add_shift(eigenmeasure);
  eigenmeasure->add_option("--word", o.word, "word, e.g. 121");
  eigenmeasure->add_option("--jacobian", o.jacobian, "Jacobian check depth");
  eigenmeasure->add_flag("--normalize", o.normalize, "use phi - p(phi)");
  eigenmeasure->add_option("--tol", o.tol);

  auto* kms = sub("kms", "inverse temperature: root of p(-beta phi)", cmd_kms);
  add_shift(kms);
  kms->add_option("--tol", o.tol);

  auto* cphi = sub("cphi", "c_phi on G(X,T) or its restriction to the tail relation", cmd_cphi);
  add_shift(cphi);
  cphi->add_option("--a", o.a, "word (edge ids with --tail)")->required();
  cphi->add_option("--b", o.b, "word (edge ids with --tail)")->required();
  cphi->add_option("--stub", o.stub, "tail stub word");
  cphi->add_flag("--tail", o.tail, "a, b are paths of the stationary diagram");
  cphi->add_option("--extension", o.extension, "extra tail symbols for --tail");

  auto* stationarity = sub("stationarity", "test c(x,y) - c(Tx,Ty) = phi(x) - phi(y)", cmd_stationarity);
  add_shift(stationarity);
  stationarity->add_option("--labelling", o.labelling, "labelling JSON (default: the canonical one)");
  stationarity->add_option("--depth", o.depth)->required();
  stationarity->add_option("--tol", o.tol);

  auto* normalize = sub("normalize", "tower construction and cocycle normalization", cmd_normalize);
  normalize->add_option("--chain", o.chain)->required();
  normalize->add_option("--bprime", o.bprime, "cocycle data JSON {bprime}");
  normalize->add_option("--depth", o.depth, "verification depth (default N)");

  auto* check = sub("check", "run a seeded invariant suite", cmd_check);
  check->add_option("--suite", o.suite)->required();
  check->add_option("--seed", o.seed);

  if (!args.empty() && !args.front().empty() && args.front().front() != '-') {
    const auto names = subcommands();
    if (std::find(names.begin(), names.end(), args.front()) == names.end())
      return CommandResult{Status::InvalidInput, nullptr, {"unknown subcommand \"" + args.front() + "\""}};
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return CommandResult{Status::Ok, nullptr, {app.help()}};
  } catch (const CLI::ParseError& e) {
    return CommandResult{Status::InvalidInput, nullptr, {e.what()}};
  }

  try {
    for (const auto& [s, fn] : dispatch)
      if (s->parsed()) return fn(o);
    return CommandResult{Status::InvalidInput, nullptr, {"no subcommand"}};
  } catch (const Error& e) {
    Status s = Status::InvalidInput;
    if (e.kind() == ErrorKind::Refused) s = Status::Refused;
    if (e.kind() == ErrorKind::NoConvergence) s = Status::NoConvergence;
    return CommandResult{s, nullptr, {e.what()}};
  } catch (const std::exception& e) {
    return CommandResult{Status::InvalidInput, nullptr, {e.what()}};
  }
}

}  // namespace afrel::cli
