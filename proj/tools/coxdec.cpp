// coxdec: command-line front end.
//
// Exit codes: 0 success, 2 parse/validation error, 3 budget exceeded,
// 4 internal consistency failure, 1 anything else.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "coxdec/coxeter/classify.hpp"
#include "coxdec/coxeter/reflection_group.hpp"
#include "coxdec/coxeter/system.hpp"
#include "coxdec/decomp/decompose.hpp"
#include "coxdec/errors.hpp"
#include "coxdec/group/kn.hpp"
#include "coxdec/group/lattice.hpp"
#include "coxdec/group/remak.hpp"
#include "coxdec/io/json.hpp"
#include "coxdec/io/text.hpp"
#include "coxdec/lie/decompose.hpp"
#include "coxdec/lie/structure.hpp"

namespace {

using coxdec::io::Json;

enum class Format { Json, Text, Dot };

struct RunConfig {
  Format format = Format::Json;
  std::size_t closure_budget = coxdec::coxeter::kDefaultClosureBudget;
  unsigned precision_bits = coxdec::exact::kDefaultPrecisionBudget;
  std::size_t order_bound = coxdec::group::kDefaultOrderBound;
  double time_limit = 0;  // seconds; 0 = none
  unsigned jobs = 1;
};

struct Output {
  Json json;
  std::string text;
};

struct JobResult {
  Output out;
  int exit_code = 0;
  std::string error;
};

template <class T>
void env_override(const char* name, T& value) {
  const char* v = std::getenv(name);
  if (!v || !*v) return;
  std::istringstream in(v);
  T parsed{};
  if (!(in >> parsed) || parsed <= T{}) throw coxdec::ValidationError(std::string("invalid value for ") + name);
  value = parsed;
}

bool looks_like_json(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '{';
}

Json parse_json(const std::string& text, const std::string& path) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw coxdec::ValidationError(path + ": invalid JSON: " + e.what());
  }
}

coxdec::coxeter::CoxeterSystem load_coxeter(const std::string& path) {
  const std::string text = coxdec::io::read_file(path);
  if (looks_like_json(text)) return coxdec::io::coxeter_from_json(parse_json(text, path));
  return coxdec::io::parse_coxeter_text(text);
}

coxdec::group::CayleyGroup load_cayley(const std::string& path, const RunConfig& cfg) {
  auto g = coxdec::io::parse_cayley_text(coxdec::io::read_file(path));
  if (g.order() > cfg.order_bound)
    throw coxdec::BudgetExceeded("group order " + std::to_string(g.order()) + " exceeds the order bound " +
                                     std::to_string(cfg.order_bound),
                                 g.order());
  return g;
}

std::string signature_text(const coxdec::exact::Signature& s) { return coxdec::exact::to_string(s); }

// ---- subcommands --------------------------------------------------------

Output cmd_signature(const std::string& path, const RunConfig& cfg, bool show_form) {
  const auto cs = load_coxeter(path);
  const auto form = coxdec::coxeter::tits_form(cs);
  const auto sig = coxdec::exact::signature(form, cfg.precision_bits);
  Json j{{"rank", cs.rank()},
         {"conductor", form.conductor()},
         {"signature", coxdec::io::to_json(sig)},
         {"form_rank", sig.p + sig.q}};
  if (show_form) j["tits_form"] = coxdec::io::to_json(form);
  return {j, signature_text(sig)};
}

Output cmd_classify(const std::string& path, const RunConfig& cfg) {
  const auto cs = load_coxeter(path);
  const auto c = coxdec::coxeter::classify(cs, cfg.precision_bits);
  const auto facts = coxdec::coxeter::signature_facts_check(cs, cfg.precision_bits);
  Json j = coxdec::io::to_json(c);
  j["facts"] = coxdec::io::to_json(facts);
  if (!facts.all()) throw coxdec::InternalError("a signature fact fails on " + path);
  std::string text = coxdec::coxeter::to_string(c.kind) + " " + signature_text(c.signature);
  if (c.type) text += " " + c.type->name();
  return {j, text};
}

Output cmd_components(const std::string& path, const RunConfig&) {
  const auto cs = load_coxeter(path);
  Json comps = Json::array();
  std::string text;
  for (const auto& c : coxdec::coxeter::components(cs)) {
    const auto name = coxdec::coxeter::canonical_name(c.system);
    comps.push_back(Json{{"indices", coxdec::io::indices_json(c.indices)},
                         {"name", name},
                         {"system", coxdec::io::to_json(c.system)}});
    std::string idx;
    for (auto i : c.indices) idx += (idx.empty() ? "" : ",") + std::to_string(i);
    text += "{" + idx + "} " + name + "\n";
  }
  if (!text.empty()) text.pop_back();
  return {Json{{"rank", cs.rank()}, {"components", std::move(comps)}}, text};
}

std::string factorization_text(const coxdec::decomp::CoxeterFactorization& f) {
  std::string text;
  for (const auto& x : f.factors) {
    text += x.label + " [order " + (x.order ? x.order->get_str() : std::string("infinite"));
    if (x.central) text += ", central";
    text += ", " + coxdec::decomp::to_string(x.provenance) + "]\n";
  }
  if (!text.empty()) text.pop_back();
  return text;
}

Output cmd_decompose(const std::string& path, const RunConfig& cfg) {
  const auto cs = load_coxeter(path);
  const auto f = coxdec::decomp::decompose(cs, cfg.order_bound, cfg.precision_bits);
  return {coxdec::io::to_json(f), factorization_text(f)};
}

Output cmd_cross_validate(const std::string& path, const RunConfig& cfg) {
  const auto cs = load_coxeter(path);
  const auto r = coxdec::decomp::cross_validate(cs, {cfg.closure_budget, cfg.order_bound});
  if (!r.passed) throw coxdec::InternalError(path + ": " + r.message);
  std::string text = "ok";
  for (const auto& m : r.matches)
    text += "\n" + m.rule_label + " <-> " + m.oracle_label + " [order " + std::to_string(m.order) + "]";
  return {coxdec::io::to_json(r), text};
}

Output cmd_build_group(const std::string& path, const RunConfig& cfg, bool table) {
  const auto cs = load_coxeter(path);
  const auto w = coxdec::coxeter::build_group(cs, cfg.closure_budget);
  Json j{{"rank", w.rank()}, {"conductor", w.conductor()}, {"order", w.order()}};
  std::string text = std::to_string(w.order());
  if (table) {
    const auto g = w.to_cayley(cfg.order_bound);
    Json rows = Json::array();
    for (coxdec::group::Element a = 0; a < g.order(); ++a) {
      Json row = Json::array();
      for (coxdec::group::Element b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
      rows.push_back(std::move(row));
    }
    j["table"] = std::move(rows);
    text = coxdec::io::to_text(g);
    text.pop_back();
  }
  return {j, text};
}

Output cmd_remak(const std::string& path, const RunConfig& cfg, std::optional<std::uint64_t> seed) {
  const auto g = load_cayley(path, cfg);
  coxdec::group::RemakOptions opt;
  opt.order_bound = cfg.order_bound;
  opt.shuffle_seed = seed;
  const auto d = coxdec::group::remak_decompose(g, opt);
  Json j = coxdec::io::to_json(g, d);
  std::string text;
  for (const auto& l : j["multiset"]) text += (text.empty() ? "" : " x ") + l.get<std::string>();
  return {j, text.empty() ? "1" : text};
}

Output subgroup_output(const coxdec::group::Subgroup& s) {
  std::string members;
  for (auto m : s.members) members += (members.empty() ? "" : " ") + std::to_string(m);
  return {coxdec::io::to_json(s), "order " + std::to_string(s.order()) + ": " + members};
}

Output cmd_center(const std::string& path, const RunConfig& cfg) {
  return subgroup_output(coxdec::group::center(load_cayley(path, cfg)));
}

Output cmd_hypercenter(const std::string& path, const RunConfig& cfg) {
  const auto g = load_cayley(path, cfg);
  const auto series = coxdec::group::upper_central_series(g);
  Output o = subgroup_output(series.back());
  Json orders = Json::array();
  for (const auto& s : series) orders.push_back(s.order());
  o.json["series_orders"] = std::move(orders);
  return o;
}

Output cmd_kn(const std::string& path, const RunConfig& cfg, std::size_t n) {
  const auto g = load_cayley(path, cfg);
  const auto r = coxdec::group::kn(g, n, cfg.order_bound);
  return {Json{{"n", n}, {"k", r.index}, {"kernel", coxdec::io::to_json(r.kernel)}}, std::to_string(r.index)};
}

Output cmd_qm_bound(const std::string& path, const RunConfig& cfg, std::size_t subgroup_bound) {
  const auto g = load_cayley(path, cfg);
  if (g.order() > subgroup_bound)
    throw coxdec::BudgetExceeded("qm-bound needs |G| <= " + std::to_string(subgroup_bound), g.order());
  const auto b = coxdec::group::qm_bound(g, subgroup_bound);
  return {Json{{"order", g.order()}, {"qm_bound", b}}, std::to_string(b)};
}

std::string lie_text(const coxdec::lie::LieAlgebra& l) {
  std::string text = "dim " + std::to_string(l.dim());
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = i + 1; j < l.dim(); ++j)
      for (const auto& [k, v] : l.basis_bracket(i, j))
        text += "\n[" + std::to_string(i) + "," + std::to_string(j) + "] " + std::to_string(k) + " " +
                coxdec::io::rational_string(v);
  return text;
}

Output cmd_lie_decompose(const coxdec::lie::LieAlgebra& l) {
  const auto d = coxdec::lie::decompose_ideals(l);
  Json j{{"dim", l.dim()},
         {"perfect", coxdec::lie::is_perfect(l)},
         {"solvable", coxdec::lie::is_solvable(l)}};
  const Json decomposition = coxdec::io::to_json(d);
  for (const auto& [k, v] : decomposition.items()) j[k] = v;
  std::string dims;
  for (auto x : d.dimensions()) dims += (dims.empty() ? "" : " + ") + std::to_string(x);
  return {j, coxdec::lie::to_string(d.verdict) + " " + dims};
}

Output cmd_graph(const std::string& path, const RunConfig& cfg) {
  const auto cs = load_coxeter(path);
  Json edges = Json::array();
  for (std::size_t i = 0; i < cs.rank(); ++i)
    for (std::size_t j = i + 1; j < cs.rank(); ++j)
      if (cs.label(i, j).is_edge()) edges.push_back(Json::array({i, j, coxdec::io::to_json(cs.label(i, j))}));
  std::string dot = coxdec::coxeter::to_dot(cs);
  if (!dot.empty() && dot.back() == '\n') dot.pop_back();
  (void)cfg;
  return {Json{{"rank", cs.rank()}, {"edges", std::move(edges)}}, dot};
}

// ---- driver -------------------------------------------------------------

JobResult guarded(const std::function<Output()>& job) {
  JobResult r;
  try {
    r.out = job();
  } catch (const coxdec::Error& e) {
    r.exit_code = e.exit_code();
    r.error = e.what();
  } catch (const std::bad_alloc&) {
    r.exit_code = 3;
    r.error = "out of memory";
  } catch (const std::exception& e) {
    r.exit_code = 1;
    r.error = e.what();
  }
  return r;
}

const char* error_kind(int code) {
  switch (code) {
    case 2: return "validation";
    case 3: return "budget";
    case 4: return "internal";
    default: return "error";
  }
}

/// Runs one job per input with up to cfg.jobs threads; output follows input
/// order. Returns the largest exit code.
int run_inputs(const std::vector<std::string>& inputs, const RunConfig& cfg,
               const std::function<Output(const std::string&)>& job) {
  std::vector<JobResult> results(inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < inputs.size(); i = next++) results[i] = guarded([&] { return job(inputs[i]); });
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(inputs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = 0;
  const bool many = inputs.size() > 1;
  Json all = Json::array();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto& r = results[i];
    code = std::max(code, r.exit_code);
    if (r.exit_code != 0) std::cerr << "coxdec: " << inputs[i] << ": " << r.error << "\n";
    if (cfg.format == Format::Json) {
      Json item = r.exit_code ? coxdec::io::error_json(error_kind(r.exit_code), r.error, r.exit_code) : r.out.json;
      if (many) {
        Json wrapped{{"input", inputs[i]}};
        for (auto& [k, v] : item.items()) wrapped[k] = v;
        all.push_back(std::move(wrapped));
      } else if (r.exit_code == 0) {
        std::cout << item.dump(2) << "\n";
      }
    } else if (r.exit_code == 0) {
      if (many) std::cout << "== " << inputs[i] << "\n";
      std::cout << r.out.text << "\n";
    }
  }
  if (many && cfg.format == Format::Json) std::cout << all.dump(2) << "\n";
  return code;
}

int run_single(const RunConfig& cfg, const std::function<Output()>& job) {
  return run_inputs({"-"}, cfg, [&](const std::string&) { return job(); });
}

void start_watchdog(double seconds) {
  if (seconds <= 0) return;
  std::thread([seconds] {
    std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
    std::cerr << "coxdec: wall-time limit of " << seconds << " s exceeded\n";
    std::fflush(stderr);
    std::_Exit(3);
  }).detach();
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  try {
    env_override("COXDEC_CLOSURE_BUDGET", cfg.closure_budget);
    env_override("COXDEC_PRECISION_BITS", cfg.precision_bits);
    env_override("COXDEC_ORDER_BOUND", cfg.order_bound);
    env_override("COXDEC_TIME_LIMIT", cfg.time_limit);
    env_override("COXDEC_JOBS", cfg.jobs);
  } catch (const coxdec::Error& e) {
    std::cerr << "coxdec: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Direct-product decompositions of Coxeter groups, with brute-force verification"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Output format: json, text or dot")
      ->check(CLI::IsMember({"json", "text", "dot"}));
  app.add_option("--closure-budget", cfg.closure_budget, "Maximum group elements enumerated (COXDEC_CLOSURE_BUDGET)")
      ->check(CLI::PositiveNumber);
  app.add_option("--precision-bits", cfg.precision_bits, "Sign-evaluation precision budget (COXDEC_PRECISION_BITS)")
      ->check(CLI::Range(64u, 1u << 24));
  app.add_option("--order-bound", cfg.order_bound, "Largest group order for table algorithms (COXDEC_ORDER_BOUND)")
      ->check(CLI::PositiveNumber);
  app.add_option("--time-limit", cfg.time_limit, "Wall-time limit in seconds (COXDEC_TIME_LIMIT)")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs,-j", cfg.jobs, "Parallel jobs over multiple inputs (COXDEC_JOBS)")->check(CLI::PositiveNumber);

  std::vector<std::string> files;
  bool show_form = false, table = false;
  std::size_t n = 2, g = 2, p = 0, q = 0, r = 0, subgroup_bound = coxdec::group::kDefaultSubgroupOrderBound;
  std::optional<std::uint64_t> seed;
  std::uint64_t seed_value = 0;

  auto with_files = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("files", files, "Input files")->required();
    return sub;
  };
  auto* sig = with_files("signature", "Signature (p,q,r) of the Tits form");
  sig->add_flag("--show-form", show_form, "Include the exact Tits form");
  with_files("classify", "Finite / affine / indefinite classification of a connected system");
  with_files("components", "Connected components of the Coxeter graph");
  with_files("decompose", "Factorization into indecomposable direct factors");
  with_files("cross-validate", "Check the factorization against brute-force Remak decomposition");
  auto* bg = with_files("build-group", "Enumerate a finite Coxeter group");
  bg->add_flag("--table", table, "Emit the Cayley table (text format is a valid Cayley file)");
  auto* remak = with_files("remak", "Remak decomposition of a group given by its Cayley table");
  remak->add_option("--seed", seed_value, "Shuffle candidate factors with this seed");
  with_files("center", "Centre of a group");
  with_files("hypercenter", "Hypercentre (limit of the upper central series)");
  auto* kn = with_files("kn", "K_n and k_n of a group");
  kn->add_option("--n", n, "Index bound")->required()->check(CLI::PositiveNumber);
  auto* knf = app.add_subcommand("kn-free", "k_n of the free group F_g (g <= 3, n <= 8)");
  knf->add_option("--g", g, "Rank of the free group")->required()->check(CLI::Range(1, 3));
  knf->add_option("--n", n, "Index bound")->required()->check(CLI::Range(2, 8));
  auto* qm = with_files("qm-bound", "Least n such that the group is n-QM");
  qm->add_option("--subgroup-bound", subgroup_bound, "Largest order for full subgroup enumeration");
  auto* lof = app.add_subcommand("lie-of", "Structure constants of of(p,q,r)");
  for (auto* s : {lof}) {
    s->add_option("--p", p)->required();
    s->add_option("--q", q)->required();
    s->add_option("--r", r)->required();
  }
  auto* ldec = app.add_subcommand("lie-decompose", "Direct-sum decomposition into ideals");
  ldec->add_option("files", files, "Structure-constant JSON files");
  std::optional<std::size_t> lp, lq, lr;
  ldec->add_option("--p", lp);
  ldec->add_option("--q", lq);
  ldec->add_option("--r", lr);
  with_files("graph", "Coxeter graph (use --format dot for Graphviz)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.format = format == "text" ? Format::Text : format == "dot" ? Format::Dot : Format::Json;
  if (remak->parsed() && remak->count("--seed")) seed = seed_value;
  start_watchdog(cfg.time_limit);

  auto* sub = app.get_subcommands().front();
  const std::string cmd = sub->get_name();
  if (cfg.format == Format::Dot && cmd != "graph") {
    std::cerr << "coxdec: --format dot is only valid for graph\n";
    return 2;
  }
  if (cmd == "graph" && cfg.format == Format::Dot) cfg.format = Format::Text;

  if (cmd == "signature") return run_inputs(files, cfg, [&](auto& f) { return cmd_signature(f, cfg, show_form); });
  if (cmd == "classify") return run_inputs(files, cfg, [&](auto& f) { return cmd_classify(f, cfg); });
  if (cmd == "components") return run_inputs(files, cfg, [&](auto& f) { return cmd_components(f, cfg); });
  if (cmd == "decompose") return run_inputs(files, cfg, [&](auto& f) { return cmd_decompose(f, cfg); });
  if (cmd == "cross-validate") return run_inputs(files, cfg, [&](auto& f) { return cmd_cross_validate(f, cfg); });
  if (cmd == "build-group") return run_inputs(files, cfg, [&](auto& f) { return cmd_build_group(f, cfg, table); });
  if (cmd == "remak") return run_inputs(files, cfg, [&](auto& f) { return cmd_remak(f, cfg, seed); });
  if (cmd == "center") return run_inputs(files, cfg, [&](auto& f) { return cmd_center(f, cfg); });
  if (cmd == "hypercenter") return run_inputs(files, cfg, [&](auto& f) { return cmd_hypercenter(f, cfg); });
  if (cmd == "kn") return run_inputs(files, cfg, [&](auto& f) { return cmd_kn(f, cfg, n); });
  if (cmd == "qm-bound")
    return run_inputs(files, cfg, [&](auto& f) { return cmd_qm_bound(f, cfg, subgroup_bound); });
  if (cmd == "graph") return run_inputs(files, cfg, [&](auto& f) { return cmd_graph(f, cfg); });
  if (cmd == "kn-free")
    return run_single(cfg, [&] {
      const auto k = coxdec::group::kn_free({g, n}, cfg.closure_budget);
      return Output{Json{{"g", g}, {"n", n}, {"k", k}}, std::to_string(k)};
    });
  if (cmd == "lie-of")
    return run_single(cfg, [&] {
      const auto l = coxdec::lie::of_algebra({p, q, r});
      return Output{coxdec::io::to_json(l), lie_text(l)};
    });
  if (cmd == "lie-decompose") {
    const bool by_signature = lp || lq || lr;
    if (by_signature == !files.empty()) {
      std::cerr << "coxdec: lie-decompose takes either files or --p/--q/--r\n";
      return 2;
    }
    if (by_signature)
      return run_single(cfg, [&] { return cmd_lie_decompose(coxdec::lie::of_algebra({lp.value_or(0), lq.value_or(0), lr.value_or(0)})); });
    return run_inputs(files, cfg, [&](auto& f) {
      return cmd_lie_decompose(
          coxdec::io::lie_from_json(parse_json(coxdec::io::read_file(f), f)));
    });
  }
  std::cerr << "coxdec: unknown command " << cmd << "\n";
  return 2;
}
