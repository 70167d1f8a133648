#pragma once

// The lcc command line: every subcommand maps argv to a JSON payload so tests
// can drive it in-process.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lcc/burckhardt.hpp"
#include "lcc/clocks.hpp"
#include "lcc/enumerate.hpp"
#include "lcc/glossary.hpp"
#include "lcc/lcct.hpp"
#include "lcc/merge.hpp"
#include "lcc/ratchet.hpp"
#include "lcc/readability.hpp"
#include "lcc/scars.hpp"
#include "lcc/sim.hpp"

namespace lcc::cli {

inline constexpr const char* kSchema = "lcc.v1";

struct CommandResult {
  int exitCode = 0;
  Json payload;
  std::vector<std::string> artifacts;
  std::string table;  // human summary, printed with --pretty
  std::string help;
  bool pretty = false;
};

namespace detail {

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("LCC_SEED")) {
    try {
      std::size_t used = 0;
      auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("LCC_SEED must be a non-negative integer");
  }
  return 1;
}

inline std::string id_of(const CausalDag& dag, MessageIndex m) { return dag.id(m).value; }

inline Json ids(const CausalDag& dag, const std::vector<MessageIndex>& ms) {
  Json out = Json::array();
  for (auto m : ms) out.push_back(dag.id(m).value);
  return out;
}

inline Json class_json(const EquivClass& k) {
  Json members = Json::array();
  for (const auto& [c, o] : k.members) members.push_back(to_string(make_config(c, o)));
  return {{"name", k.name()}, {"closure", to_string(k.eff)}, {"order", to_string(k.o)},
          {"members", members}, {"internal", k.internal}};
}

inline Json witness_json(const ReadabilityWitness& w) {
  Json trace = to_json(Trace{w.dag, {}, {}, {}});
  trace.erase("deliveries");
  trace.erase("orders");
  trace.erase("observers");
  return {{"dag", trace}, {"order", ids(w.dag, w.order)}, {"cut", ids(w.dag, w.cut.members())},
          {"reason", w.reason}};
}

inline std::vector<std::string> split_hops(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& r : raw)
    for (const auto& h : lcc::detail::split(r, ';')) {
      auto t = lcc::detail::trim(h);
      if (t.empty()) throw ParseError("empty hop in '" + r + "'");
      out.push_back(t);
    }
  return out;
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

}  // namespace detail

inline CommandResult cmd_lattice(const std::string& regimeText, const std::string& dotPath) {
  CommandResult r;
  Regime regime = parse_regime(regimeText);
  auto d = lattice_covers(regime);
  Json classes = Json::array();
  for (const auto& k : d.classes) classes.push_back(detail::class_json(k));
  Json covers = Json::array();
  for (auto [x, y] : d.covers) covers.push_back({d.classes[x].name(), d.classes[y].name()});
  std::string dot = to_dot(d);
  r.payload = {{"regime", to_string(regime)}, {"classes", classes}, {"covers", covers}};
  if (dotPath.empty()) {
    r.payload["dot"] = dot;
  } else {
    write_text(dotPath, dot);
    r.artifacts.push_back(dotPath);
  }
  std::ostringstream t;
  for (const auto& k : d.classes) t << std::left << std::setw(28) << k.name() << member_list(k) << "\n";
  r.table = t.str();
  return r;
}

inline CommandResult cmd_readable(const std::string& a, const std::string& b, const std::string& regimeText) {
  CommandResult r;
  auto ca = parse_configuration(a);
  auto cb = parse_configuration(b);
  auto v = readable(ca, cb, parse_regime(regimeText));
  r.payload = {{"a", to_string(ca)}, {"b", to_string(cb)}, {"regime", to_string(v.regime)},
               {"readable", v.readable}};
  if (v.witness) r.payload["witness"] = detail::witness_json(*v.witness);
  r.table = std::string(v.readable ? "readable" : "not readable") + "\n";
  return r;
}

inline CommandResult cmd_merge(const std::string& va, const std::string& vb, const std::string& target,
                               const std::string& onConflict) {
  CommandResult r;
  auto cfg = parse_configuration(target);
  auto pair = views_from_traces(read_trace(va), read_trace(vb));
  const auto& dag = pair.dag;
  auto out = mergeable(pair.a, pair.b, cfg, dag);
  Json p{{"target", to_string(cfg)}, {"outcome", to_string(out.kind)},
         {"frontier", to_string(frontier_classify(cfg))}};
  if (out.kind == MergeOutcome::Kind::Merged) {
    p["merged"] = detail::ids(dag, out.merged);
    Json per = Json::object();
    for (const auto& [k, ord] : out.perClass) per[k] = detail::ids(dag, ord);
    p["perClass"] = per;
  }
  if (out.conflict)
    p["conflict"] = {{"first", dag.id(out.conflict->first).value},
                     {"second", dag.id(out.conflict->second).value},
                     {"orderClass", out.conflict->orderClass}};
  if (out.kind == MergeOutcome::Kind::ClosureFailure) {
    p["failingView"] = out.failingView;
    Json vs = Json::array();
    for (const auto& v : out.closureViolations)
      vs.push_back({{"message", dag.id(v.message).value}, {"missingParent", dag.id(v.missingParent).value}});
    p["closureViolations"] = vs;
  }
  if (out.kind == MergeOutcome::Kind::Conflict && !onConflict.empty()) {
    PartitionPolicy policy;
    if (onConflict == "decline") policy = PartitionPolicy::Decline;
    else if (onConflict == "weaken-o") policy = PartitionPolicy::WeakenO;
    else throw ParseError("--on-conflict takes decline or weaken-o");
    auto res = partition_decision(out, policy, pair.a, pair.b, cfg, dag);
    Json pr{{"policy", onConflict}, {"available", res.available}};
    if (res.mergedAt) pr["mergedAt"] = to_string(*res.mergedAt);
    if (res.outcome) pr["merged"] = detail::ids(dag, res.outcome->merged);
    p["partition"] = pr;
  }
  r.payload = p;
  r.table = to_string(out.kind) + "\n";
  return r;
}

inline CommandResult cmd_migrate(const std::string& source, const std::vector<std::string>& rawHops) {
  CommandResult r;
  auto src = parse_configuration(source);
  std::vector<Configuration> hops;
  Json hopNames = Json::array();
  for (const auto& h : detail::split_hops(rawHops)) {
    hops.push_back(parse_configuration(h));
    hopNames.push_back(class_of(hops.back()).name());
  }
  auto level = pipeline_level(src, hops);
  auto srcClass = class_of(src);
  r.payload = {{"source", srcClass.name()}, {"hops", hopNames}, {"level", level.name()},
               {"internal", level.internal}, {"lossless", level == srcClass}};
  r.table = srcClass.name() + " -> " + level.name() + "\n";
  return r;
}

inline CommandResult cmd_scars(const std::string& path, const std::string& observer, bool partial) {
  CommandResult r;
  auto t = read_trace(path);
  auto it = t.orders.find(ObserverId{observer});
  if (it == t.orders.end()) throw Error("observer has an order", "no order for observer '" + observer + "'");
  const auto& dag = t.dag;
  auto scars = partial ? scar_scan_partial(dag, it->second) : scar_scan(dag, it->second);
  Json list = Json::array();
  for (const auto& s : scars)
    list.push_back({{"ancestor", dag.id(s.ancestor).value}, {"descendant", dag.id(s.descendant).value}});
  r.payload = {{"observer", observer}, {"partial", partial}, {"clean", scars.empty()}, {"scars", list},
               {"cleanOrder", detail::ids(dag, clean_order(dag))}};
  r.table = std::to_string(scars.size()) + " scars\n";
  return r;
}

inline CommandResult cmd_frozen(const std::string& path) {
  CommandResult r;
  auto cycle = frozen_cycle_detect(commits_from_json(read_json(path)));
  r.payload = {{"frozen", cycle.has_value()}, {"cycle", nullptr}};
  if (cycle) {
    Json c = Json::array();
    for (const auto& e : *cycle) c.push_back(e.value);
    r.payload["cycle"] = c;
  }
  r.table = cycle ? "frozen cycle\n" : "acyclic\n";
  return r;
}

// Left panel: per-edge inversion chance against rho = d / 2 eps, closed forms
// and Monte Carlo. Right panel: whole-execution honesty against 2 eps / dMin.
inline CommandResult cmd_clocks(const std::string& curve, const std::string& csvPath, std::uint64_t trials,
                                std::uint64_t seed, double eps) {
  CommandResult r;
  if (!(eps > 0.0)) throw Error("eps > 0", "clock error bound must be positive");
  if (trials == 0) throw Error("trials >= 1", "no trials requested");
  std::ostringstream csv;
  std::size_t rows = 0;
  // Gaussian scale with the same variance as uniform on [-eps, eps].
  const double sigma = eps / std::sqrt(3.0);
  if (curve == "uniform" || curve == "gauss") {
    csv << "rho,p_uniform,p_gauss,p_empirical,stderr\n";
    for (int i = 0; i <= 30; ++i) {
      double rho = 0.05 * i;
      double d = rho * 2.0 * eps;
      auto model = curve == "uniform" ? ErrorModel::uniform(eps) : ErrorModel::gaussian(sigma);
      auto mc = monte_carlo_inversion(single_edge(d), model, trials, seed + static_cast<std::uint64_t>(i));
      csv << detail::fmt(rho) << "," << detail::fmt(inversion_probability_uniform(d, eps)) << ","
          << detail::fmt(inversion_probability_gaussian(d, sigma)) << "," << detail::fmt(mc[0].rate) << ","
          << detail::fmt(mc[0].standardError) << "\n";
      ++rows;
    }
  } else if (curve == "honesty") {
    const double sizes[] = {1e2, 1e4, 1e6};
    csv << "ratio,honesty_E100,honesty_E10000,honesty_E1000000\n";
    for (int i = 0; i <= 30; ++i) {
      double ratio = 0.1 * i;  // 2 eps / dMin
      double p = ratio == 0.0 ? 0.0 : inversion_probability_uniform(2.0 * eps / ratio, eps);
      csv << detail::fmt(ratio);
      for (double e : sizes) csv << "," << detail::fmt(execution_honesty(e, p));
      csv << "\n";
      ++rows;
    }
  } else {
    throw ParseError("--curve takes uniform, gauss or honesty");
  }
  r.payload = {{"curve", curve}, {"rows", rows}, {"epsilon", eps}, {"trials", trials}, {"seed", seed},
               {"sigma", sigma}, {"note", "gaussian sigma = eps/sqrt(3), equal variance to uniform"}};
  if (csvPath.empty()) {
    r.payload["csv"] = csv.str();
  } else {
    write_text(csvPath, csv.str());
    r.artifacts.push_back(csvPath);
    r.payload["csvPath"] = csvPath;
  }
  r.table = csv.str();
  return r;
}

inline CommandResult cmd_wait(double eps, double dMin) {
  CommandResult r;
  auto v = kappa_clean_threshold(ClockParams{eps, dMin});
  r.payload = {{"epsilon", eps}, {"dMin", dMin}, {"wait", commit_wait(eps, dMin)}, {"clean", v.clean},
               {"margin", v.margin}};
  r.table = "wait " + detail::fmt(commit_wait(eps, dMin)) + "\n";
  return r;
}

inline CommandResult cmd_simulate(const std::string& paramsPath, const std::string& out,
                                  std::optional<std::uint64_t> seed) {
  CommandResult r;
  Json raw = read_json(paramsPath);
  auto p = params_from_json(raw);
  if (seed) p.seed = *seed;
  else if (!raw.contains("seed")) p.seed = detail::default_seed();
  auto t = generate_execution(p);
  write_trace(out, t);
  r.artifacts.push_back(out);
  r.payload = {{"out", out}, {"params", to_json(p)}, {"messages", t.dag.size()},
               {"edges", t.dag.edges().size()}, {"deliveries", t.deliveries.size()},
               {"axiomViolations", validate_axioms(t).size()},
               {"note", "writes are Bernoulli per observer per tick; partitions drop in-flight copies"}};
  r.table = std::to_string(t.dag.size()) + " messages -> " + out + "\n";
  return r;
}

// Sizes 1..maxN, every labelled DAG over 2 objects x 2 sessions, with parents
// delivered to each creator on its creation tick.
inline CommandResult cmd_enumerate(std::size_t maxN, const std::string& dir) {
  CommandResult r;
  if (maxN == 0 || maxN > 4) throw Error("1 <= max-n <= 4", "enumeration bound exceeded");
  std::filesystem::create_directories(dir);
  Json counts = Json::object();
  Json files = Json::array();
  for (std::size_t n = 1; n <= maxN; ++n) {
    std::size_t k = 0;
    for_each_labeled_dag(n, 2, 2, [&](const CausalDag& dag) {
      Trace t;
      t.dag = dag;
      for (MessageIndex m = 0; m < dag.size(); ++m) {
        t.add_observer(dag.meta(m).creator);
        for (auto p : dag.parents(m)) t.deliveries.push_back({dag.meta(m).createIndex, dag.meta(m).creator, p, false});
      }
      std::ostringstream name;
      name << "n" << n << "_" << std::setw(5) << std::setfill('0') << k++ << ".lcct";
      auto path = (std::filesystem::path(dir) / name.str()).string();
      write_trace(path, t);
      files.push_back(name.str());
    });
    counts[std::to_string(n)] = k;
  }
  Json manifest{{"schema", kSchema}, {"maxN", maxN}, {"objects", 2}, {"sessions", 2}, {"counts", counts},
                {"files", files}};
  auto mpath = (std::filesystem::path(dir) / "manifest.json").string();
  write_text(mpath, manifest.dump(2) + "\n");
  r.artifacts.push_back(mpath);
  r.payload = {{"dir", dir}, {"maxN", maxN}, {"counts", counts}, {"files", files.size()}, {"manifest", mpath}};
  r.table = std::to_string(files.size()) + " traces in " + dir + "\n";
  return r;
}

inline Json row_json(const GlossaryRow& row) {
  return {{"row", row.index},     {"c", to_string(row.c)},    {"o", to_string(row.o)},
          {"r", to_string(row.r)}, {"name", row.name},        {"vvModel", row.vvModel},
          {"example", row.example}};
}

inline CommandResult cmd_glossary(const std::string& cfgText) {
  CommandResult r;
  auto cfg = parse_configuration(cfgText);
  const auto& row = name_lookup(cfg);
  r.payload = row_json(row);
  r.payload["config"] = to_string(cfg);
  r.table = std::to_string(row.index) + "  " + row.name + "\n";
  return r;
}

inline CommandResult cmd_burckhardt(const std::string& pred) {
  CommandResult r;
  auto p = parse_predicate(pred);
  auto tr = phi(p);
  r.payload = {{"predicate", pred}, {"rejected", tr.rejected()}, {"verdict", tr.verdict}};
  if (tr.config) {
    r.payload["config"] = to_string(*tr.config);
    r.payload["note"] = "R=inf assumed: safety predicates carry no liveness bound";
    if (is_user_closure(tr.config->c)) r.payload["glossary"] = row_json(name_lookup(*tr.config));
    r.table = to_string(*tr.config) + "\n";
  } else {
    r.table = "rejected: " + tr.verdict + "\n";
  }
  return r;
}

inline CommandResult cmd_probe(const std::string& path, const std::string& cfgText) {
  CommandResult r;
  auto cfg = parse_configuration(cfgText);
  auto t = read_trace(path);
  auto rep = incompleteness_probe(t, cfg);
  Json obs = Json::array();
  std::ostringstream table;
  for (const auto& o : rep.observers) {
    Json flags = Json::array();
    for (const auto& f : o.flags)
      flags.push_back({{"held", t.dag.id(f.held).value}, {"missingParent", t.dag.id(f.missingParent).value},
                       {"since", f.since}, {"permanent", f.permanent}});
    obs.push_back({{"observer", o.observer.value}, {"outcome", to_string(o.outcome)}, {"flags", flags}});
    table << o.observer.value << "  " << to_string(o.outcome) << "\n";
  }
  r.payload = {{"config", to_string(cfg)}, {"unsatisfiable", rep.unsatisfiable}, {"observers", obs}};
  r.table = table.str();
  return r;
}

// argv without the program name.
inline CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"lcc: configuration algebra, readability and merge checks over causal traces", "lcc"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "human-readable output");

  std::string regime = "causal", dot, a, b, va, vb, target, onConflict, source, trace, observer, commits;
  std::string curve, csv, params, out, dir, cfg, pred;
  std::vector<std::string> hops;
  bool partial = false;
  std::uint64_t trials = 100000, seedValue = 0;
  double eps = 1.0, dMin = 0.0;
  std::size_t maxN = 0;

  auto* lattice = app.add_subcommand("lattice", "readability classes and covers");
  lattice->add_option("--regime", regime, "causal or free");
  lattice->add_option("--dot", dot, "write the Hasse diagram here");

  auto* read = app.add_subcommand("readable", "can B-data be read from an A-state");
  read->add_option("A", a)->required();
  read->add_option("B", b)->required();
  read->add_option("--regime", regime, "causal or free");

  auto* merge = app.add_subcommand("merge", "merge two views under a target configuration");
  merge->add_option("VIEW_A", va)->required();
  merge->add_option("VIEW_B", vb)->required();
  merge->add_option("--target", target)->required();
  merge->add_option("--on-conflict", onConflict, "decline or weaken-o");

  auto* migrate = app.add_subcommand("migrate", "level of a datum after a pipeline of readers");
  migrate->add_option("--source", source)->required();
  migrate->add_option("--hops", hops, "configurations separated by ';' or repeated")->required();

  auto* scars = app.add_subcommand("scars", "committed pairs that invert causality");
  scars->add_option("TRACE", trace)->required();
  scars->add_option("--order", observer, "observer whose order is scanned")->required();
  scars->add_flag("--partial", partial, "order may list a subset");

  auto* frozen = app.add_subcommand("frozen", "cycle in the union of committed orders");
  frozen->add_option("COMMITS", commits)->required();

  auto* clocks = app.add_subcommand("clocks", "inversion and honesty curves as CSV");
  clocks->add_option("--curve", curve)->required()->check(CLI::IsMember({"uniform", "gauss", "honesty"}));
  clocks->add_option("--csv", csv);
  clocks->add_option("--trials", trials);
  auto* clockSeed = clocks->add_option("--seed", seedValue);
  clocks->add_option("--eps", eps);

  auto* wait = app.add_subcommand("wait", "commit wait for a clock bound and gap");
  wait->add_option("--eps", eps)->required();
  wait->add_option("--dmin", dMin)->required();

  auto* sim = app.add_subcommand("simulate", "generate a trace from scenario parameters");
  sim->add_option("PARAMS", params)->required();
  sim->add_option("--out", out)->required();
  auto* simSeed = sim->add_option("--seed", seedValue);

  auto* en = app.add_subcommand("enumerate", "write every small labelled DAG as a trace");
  en->add_option("--max-n", maxN)->required();
  en->add_option("--out", dir)->required();

  auto* gl = app.add_subcommand("glossary", "named model of a configuration");
  gl->add_option("CFG", cfg)->required();

  auto* bk = app.add_subcommand("burckhardt", "translate an axiom predicate");
  bk->add_option("PRED", pred)->required();

  auto* probe = app.add_subcommand("probe", "incompleteness outcome per observer");
  probe->add_option("TRACE", trace)->required();
  probe->add_option("--config", cfg)->required();

  CommandResult result;
  auto fail = [&](int code, const std::string& kind, const std::string& pre, const std::string& msg) {
    result = CommandResult{};
    result.exitCode = code;
    result.payload = {{"error", {{"kind", kind}, {"precondition", pre}, {"message", msg}}}};
    result.table = msg + "\n";
  };
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (lattice->parsed()) result = cmd_lattice(regime, dot);
    else if (read->parsed()) result = cmd_readable(a, b, regime);
    else if (merge->parsed()) result = cmd_merge(va, vb, target, onConflict);
    else if (migrate->parsed()) result = cmd_migrate(source, hops);
    else if (scars->parsed()) result = cmd_scars(trace, observer, partial);
    else if (frozen->parsed()) result = cmd_frozen(commits);
    else if (clocks->parsed())
      result = cmd_clocks(curve, csv, trials, clockSeed->count() ? seedValue : detail::default_seed(), eps);
    else if (wait->parsed()) result = cmd_wait(eps, dMin);
    else if (sim->parsed())
      result = cmd_simulate(params, out, simSeed->count() ? std::optional<std::uint64_t>(seedValue) : std::nullopt);
    else if (en->parsed()) result = cmd_enumerate(maxN, dir);
    else if (gl->parsed()) result = cmd_glossary(cfg);
    else if (bk->parsed()) result = cmd_burckhardt(pred);
    else if (probe->parsed()) result = cmd_probe(trace, cfg);
  } catch (const CLI::CallForHelp&) {
    result = CommandResult{};
    result.help = app.help();
    result.payload = Json::object();
    return result;
  } catch (const CLI::ParseError& e) {
    fail(2, "grammar", "grammar", e.what());
  } catch (const ParseError& e) {
    fail(2, "grammar", e.precondition(), e.what());
  } catch (const Error& e) {
    fail(1, "domain", e.precondition(), e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    fail(1, "domain", "writable output path", e.what());
  }
  Json payload{{"schema", kSchema}};
  for (auto& [k, v] : result.payload.items()) payload[k] = v;
  result.payload = payload;
  result.pretty = pretty;
  return result;
}

}  // namespace lcc::cli
