#ifndef TRIGRAPH_CLI_HPP
#define TRIGRAPH_CLI_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trigraph/engines.hpp"
#include "trigraph/graph.hpp"
#include "trigraph/io.hpp"
#include "trigraph/sequential.hpp"
#include "trigraph/sparsify.hpp"
#include "trigraph/stats.hpp"

namespace trigraph::cli {

using nlohmann::json;

struct RunConfig {
  std::string input;
  std::string gen;  // "gnp" or "pa"
  std::size_t n = 0;
  double d = 0;
  std::uint64_t seed = 0;
  std::string engine = "aop";
  std::size_t ranks = 1;
  std::string balance = "DPD";
  std::string ordering = "degree";
  double q = 0.1;
  std::size_t runs = 25;
  std::string out;
  bool pretty = false;
  bool sorted = false;
};

namespace detail {

inline EngineKind parse_engine(const std::string& s) {
  if (s == "seq") return EngineKind::Sequential;
  if (s == "aop") return EngineKind::Aop;
  if (s == "anop-direct") return EngineKind::AnopDirect;
  if (s == "anop-surrogate") return EngineKind::AnopSurrogate;
  throw CLI::ValidationError("--engine", "unknown engine '" + s + "'");
}

inline CostKind parse_cost(const std::string& s) {
  if (s == "N") return CostKind::N;
  if (s == "D") return CostKind::D;
  if (s == "DH") return CostKind::Dh;
  if (s == "DDH") return CostKind::Ddh;
  if (s == "DH2") return CostKind::Dh2;
  if (s == "DPD") return CostKind::Dpd;
  if (s == "NOV") return CostKind::Nov;
  throw CLI::ValidationError("--balance", "unknown cost kind '" + s + "'");
}

inline OrderKind parse_ordering(const std::string& s, std::uint64_t seed) {
  if (s == "id") return OrderKind::by_id();
  if (s == "degree") return OrderKind::by_degree();
  if (s == "random") return OrderKind::by_random(seed);
  if (s == "coreness") return OrderKind::by_coreness();
  throw CLI::ValidationError("--ordering", "unknown ordering '" + s + "'");
}

inline runtime::ExecMode mode_from_env() {
  const char* v = std::getenv("TRIGRAPH_MODE");
  if (v && std::string(v) == "concurrent") return runtime::ExecMode::Concurrent;
  return runtime::ExecMode::Interleaved;
}

inline Graph load_graph(const RunConfig& cfg) {
  if (!cfg.input.empty()) {
    std::ifstream in(cfg.input);
    if (!in) throw std::runtime_error("cannot open input file: " + cfg.input);
    std::stringstream ss;
    ss << in.rdbuf();
    return build_graph(parse_edge_list(ss.str()));
  }
  if (cfg.gen == "gnp") return gen_gnp(cfg.n, cfg.d, cfg.seed);
  if (cfg.gen == "pa") return gen_pa(cfg.n, static_cast<std::size_t>(cfg.d), cfg.seed);
  throw CLI::ValidationError("--input", "pass --input FILE or --gen {gnp,pa}");
}

inline EngineConfig engine_config(const RunConfig& cfg) {
  EngineConfig ec;
  ec.engine = parse_engine(cfg.engine);
  ec.ranks = cfg.ranks;
  ec.cost = parse_cost(cfg.balance);
  ec.order = parse_ordering(cfg.ordering, cfg.seed);
  ec.mode = mode_from_env();
  return ec;
}

inline json report_json(const RunReport& report) {
  json per_rank = json::array();
  for (const auto& rs : report.per_rank)
    per_rank.push_back({{"T", rs.triangles},
                        {"dataSent", rs.data_sent},
                        {"dataRecv", rs.data_recv},
                        {"realizedCost", rs.realized_cost}});
  return {{"engine", to_string(report.engine)},
          {"p", report.ranks},
          {"costKind", to_string(report.cost)},
          {"total", report.total},
          {"perRank", per_rank},
          {"boundaries", report.boundaries}};
}

inline void emit(const RunConfig& cfg, const json& j, std::ostream& out) {
  std::string text = cfg.pretty ? j.dump(2) : j.dump();
  text += '\n';
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) throw std::runtime_error("cannot open output file: " + cfg.out);
    f << text;
  }
}

inline void emit_text(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) throw std::runtime_error("cannot open output file: " + cfg.out);
    f << text;
  }
}

inline void add_input_opts(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--input", cfg.input, "edge-list file (two IDs per line, '#' comments)");
  sub->add_option("--gen", cfg.gen, "generator: gnp or pa")
      ->check(CLI::IsMember({"gnp", "pa"}));
  sub->add_option("--n", cfg.n, "generator node count");
  sub->add_option("--d", cfg.d, "generator average degree");
  sub->add_option("--seed", cfg.seed, "seed for generators / random ordering");
}

inline void add_engine_opts(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--engine", cfg.engine, "seq, aop, anop-direct, anop-surrogate")
      ->check(CLI::IsMember({"seq", "aop", "anop-direct", "anop-surrogate"}));
  sub->add_option("--ranks", cfg.ranks, "number of ranks")->check(CLI::PositiveNumber);
  sub->add_option("--balance", cfg.balance, "cost kind: N, D, DH, DDH, DH2, DPD, NOV")
      ->check(CLI::IsMember({"N", "D", "DH", "DDH", "DH2", "DPD", "NOV"}));
  sub->add_option("--ordering", cfg.ordering, "id, degree, random, coreness")
      ->check(CLI::IsMember({"id", "degree", "random", "coreness"}));
}

inline void add_output_opts(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.out, "write output to file instead of stdout");
  sub->add_flag("--pretty", cfg.pretty, "indent JSON output");
}

}  // namespace detail

/// Runs the command line. Exit codes: 0 success, 2 usage error, 1
/// runtime failure.
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"triangle counting, listing, clustering and sparsification"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* count = app.add_subcommand("count", "count triangles");
  detail::add_input_opts(count, cfg);
  detail::add_engine_opts(count, cfg);
  detail::add_output_opts(count, cfg);

  auto* list = app.add_subcommand("list", "list triangles, one 'u v w' line each");
  detail::add_input_opts(list, cfg);
  detail::add_engine_opts(list, cfg);
  detail::add_output_opts(list, cfg);
  list->add_flag("--sorted", cfg.sorted, "sort output lines");

  auto* cc = app.add_subcommand("cc", "per-node clustering coefficients");
  detail::add_input_opts(cc, cfg);
  detail::add_engine_opts(cc, cfg);
  detail::add_output_opts(cc, cfg);

  auto* approx = app.add_subcommand("approx", "sparsified triangle estimate");
  detail::add_input_opts(approx, cfg);
  detail::add_engine_opts(approx, cfg);
  detail::add_output_opts(approx, cfg);
  approx->add_option("--q", cfg.q, "edge retention probability in (0,1]");
  approx->add_option("--runs", cfg.runs, "number of independent estimates")
      ->check(CLI::PositiveNumber);

  auto* stats = app.add_subcommand("stats", "graph statistics (n, m, T, NTC, k)");
  detail::add_input_opts(stats, cfg);
  detail::add_output_opts(stats, cfg);

  auto* popt = app.add_subcommand("popt", "estimate optimal rank count");
  double t_n = 0, t_d = 0, b_n = 0, b_d = 0, b_p = 0;
  popt->add_option("--n", t_n, "target node count")->required();
  popt->add_option("--d", t_d, "target average degree")->required();
  popt->add_option("--base-n", b_n, "base network node count")->required();
  popt->add_option("--base-d", b_d, "base network average degree")->required();
  popt->add_option("--base-p", b_p, "base network optimal rank count")->required();
  detail::add_output_opts(popt, cfg);

  // CLI11 parses argv-style (reversed) vectors.
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (count->parsed()) {
      auto g = detail::load_graph(cfg);
      auto report = run_engine(g, detail::engine_config(cfg));
      detail::emit(cfg, detail::report_json(report), out);
    } else if (list->parsed()) {
      auto g = detail::load_graph(cfg);
      auto ec = detail::engine_config(cfg);
      ec.collect_triangles = true;
      auto report = run_engine(g, ec);
      auto triangles = report.triangles_list;
      if (cfg.sorted) std::sort(triangles.begin(), triangles.end());
      std::string text;
      for (const auto& t : triangles) {
        text += std::to_string(t[0]);
        text += ' ';
        text += std::to_string(t[1]);
        text += ' ';
        text += std::to_string(t[2]);
        text += '\n';
      }
      detail::emit_text(cfg, text, out);
    } else if (cc->parsed()) {
      auto g = detail::load_graph(cfg);
      auto result = clustering_coefficients(g, detail::engine_config(cfg));
      std::ostringstream text;
      double sum_cc = 0.0;
      std::uint64_t sum_tv = 0;
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        text << v << ' ' << result.triangles_per_node[v] << ' '
             << result.coefficient[v] << '\n';
        sum_cc += result.coefficient[v];
        sum_tv += result.triangles_per_node[v];
      }
      detail::emit_text(cfg, text.str(), out);
      json summary = {
          {"totalTriangles", sum_tv / 3},
          {"meanCC", g.num_nodes() ? sum_cc / static_cast<double>(g.num_nodes()) : 0.0}};
      if (!cfg.out.empty()) out << summary.dump() << "\n";
    } else if (approx->parsed()) {
      if (!(cfg.q > 0.0 && cfg.q <= 1.0))
        throw CLI::ValidationError("--q", "q must be in (0, 1]");
      auto g = detail::load_graph(cfg);
      auto ec = detail::engine_config(cfg);
      auto exact_cfg = ec;
      exact_cfg.sparsify.reset();
      auto exact = run_engine(g, exact_cfg).total;

      std::vector<double> estimates;
      estimates.reserve(cfg.runs);
      for (std::size_t r = 0; r < cfg.runs; ++r)
        estimates.push_back(approx_count(g, ec.ranks, ec.engine, cfg.q,
                                         cfg.seed + r, ec.mode, {}, ec.cost));
      double mean = std::accumulate(estimates.begin(), estimates.end(), 0.0) /
                    static_cast<double>(estimates.size());
      double var = 0.0;
      for (double e : estimates) var += (e - mean) * (e - mean);
      if (estimates.size() > 1) var /= static_cast<double>(estimates.size() - 1);
      double avg_err = 0.0, max_err = 0.0;
      for (double e : estimates) {
        double rel = exact ? 100.0 * std::abs(e - static_cast<double>(exact)) /
                                 static_cast<double>(exact)
                           : 0.0;
        avg_err += rel;
        max_err = std::max(max_err, rel);
      }
      avg_err /= static_cast<double>(estimates.size());

      auto plan = compute_boundaries(
          node_costs(g, effective_adjacency(g, compute_order(g, OrderKind::by_degree())),
                     detail::parse_cost(cfg.balance)),
          ec.engine == EngineKind::Sequential ? 1 : ec.ranks);
      auto vr = variance_report(g, plan, cfg.q);

      detail::emit(cfg,
                   json{{"estimates", estimates},
                        {"mean", mean},
                        {"sampleVariance", var},
                        {"analyticVar", vr.var},
                        {"analyticVarPrime", vr.var_prime},
                        {"k", vr.k},
                        {"kPrime", vr.k_prime},
                        {"exact", exact},
                        {"avgErrorPct", avg_err},
                        {"maxErrorPct", max_err}},
                   out);
    } else if (stats->parsed()) {
      auto g = detail::load_graph(cfg);
      auto order = compute_order(g, OrderKind::by_degree());
      auto eff = effective_adjacency(g, order);
      auto total = count_node_iterator_n(eff);
      auto te = per_edge_triangle_counts(g, eff);
      std::uint64_t k = 0;
      for (const auto& [edge, c] : te) k += c * (c - 1) / 2;
      std::size_t dmin = g.num_nodes() ? g.degree(0) : 0, dmax = 0;
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        dmin = std::min(dmin, g.degree(v));
        dmax = std::max(dmax, g.degree(v));
      }
      double dmean = g.num_nodes() ? 2.0 * static_cast<double>(g.num_edges()) /
                                         static_cast<double>(g.num_nodes())
                                   : 0.0;
      detail::emit(cfg,
                   json{{"n", g.num_nodes()},
                        {"m", g.num_edges()},
                        {"triangles", total},
                        {"ntc", normalized_triangle_count(total, g.num_nodes())},
                        {"k", k},
                        {"degree", {{"min", dmin}, {"max", dmax}, {"mean", dmean}}}},
                   out);
    } else if (popt->parsed()) {
      detail::emit(cfg, json{{"pOpt", estimate_p_opt(t_n, t_d, b_n, b_d, b_p)}}, out);
    }
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace trigraph::cli

#endif  // TRIGRAPH_CLI_HPP
