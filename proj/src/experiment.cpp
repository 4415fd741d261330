#include "gensample/experiment.hpp"

#include <algorithm>
#include <cmath>

#include "gensample/error.hpp"
#include "gensample/io.hpp"
#include "gensample/stats.hpp"
#include "gensample/verify.hpp"

namespace gensample {
namespace {

KeislerBackend load_backend(const ExperimentConfig& c) {
  if (c.model.is_null()) throw ModelError("mode '" + c.mode + "' needs a model");
  if (!c.backend.empty() && !c.model.contains("backend"))
    return backend_from_json(json{{"backend", c.backend}, {"model", c.model}});
  auto b = backend_from_json(c.model);
  if (!c.backend.empty() && b.kind() != c.backend)
    throw ModelError("model file describes a " + b.kind() + ", not a " + c.backend);
  return b;
}

ParamContext load_context(const ExperimentConfig& c, int k) {
  return c.context.is_null() ? ParamContext{k, {}, {}, {}} : context_from_json(c.context, k);
}

LabeledHypergraph graph_from_bits(int k, int n, const std::vector<char>& bits) {
  std::vector<std::vector<int>> edges;
  const auto subsets = k_subsets(n, k);
  for (std::size_t i = 0; i < subsets.size(); ++i)
    if (bits[i]) edges.push_back(subsets[i]);
  return LabeledHypergraph(k, n, std::move(edges));
}

std::vector<char> draw_edges(const KeislerBackend& b, int n, Rng& rng) {
  if (const auto* nu = std::get_if<MixtureMeasure>(&b.model)) return albert_sample_edges(*nu, n, rng);
  if (const auto* g = std::get_if<StepGraphon>(&b.model)) return sample_graph_edges(*g, n, rng);
  return sample_hypergraph_edges(std::get<StepHypergraphon>(b.model), n, rng);
}

json estimate_json(const Estimate& e) {
  return {{"estimate", e.estimate}, {"std_error", e.std_error}, {"hits", e.hits}, {"samples", e.samples}};
}

void run_density(const ExperimentConfig& c, bool mc, ExperimentResult& out) {
  const auto b = load_backend(c);
  if (!c.graph.is_null()) {
    const auto h = hypergraph_from_json(c.graph);
    if (h.k != b.arity()) throw ModelError("graph arity differs from the model's");
    out.report["graph"] = to_json(h);
    out.csv = "quantity,value\n";
    if (!mc) {
      double v;
      if (const auto* g = std::get_if<StepGraphon>(&b.model)) v = density_exact(*g, h);
      else if (const auto* hw = std::get_if<StepHypergraphon>(&b.model)) v = hyper_density_exact(*hw, h);
      else v = morley_power(b, graph_formula(h));
      out.report["density"] = v;
      out.csv += "density," + format_double(v) + "\n";
      return;
    }
    Estimate e;
    if (const auto* g = std::get_if<StepGraphon>(&b.model)) e = density_mc(*g, h, c.samples, c.seed, c.threads);
    else if (const auto* hw = std::get_if<StepHypergraphon>(&b.model))
      e = hyper_density_mc(*hw, h, c.samples, c.seed, c.threads);
    else throw ModelError("Monte Carlo density of a single graph needs a kernel model; use n instead");
    out.report["density"] = estimate_json(e);
    out.csv += "estimate," + format_double(e.estimate) + "\nstd_error," + format_double(e.std_error) + "\n";
    return;
  }
  if (c.n < 1) throw ModelError("density needs a graph or n");
  const auto table = pushforward_distribution(b, c.n);
  if (!mc) {
    out.report["table"] = to_json(table);
    out.report["total"] = table.total();
    out.passed = std::abs(table.total() - 1.0) <= c.tolerance;
    out.csv = to_csv(table);
    return;
  }
  const auto counts = sample_counts(b, c.n, c.samples, c.seed, c.threads);
  const auto cmp = compare_distributions(table, counts);
  out.report["comparison"] = {{"tv", cmp.tv},       {"chi_square", cmp.chi_square}, {"dof", cmp.dof},
                              {"p_value", cmp.p_value}, {"samples", cmp.samples},      {"bins", cmp.bins}};
  out.csv = "mask,exact,empirical\n";
  for (std::size_t m = 0; m < table.probs.size(); ++m)
    out.csv += std::to_string(m) + "," + format_double(table.probs[m]) + "," +
               format_double(static_cast<double>(counts.counts[m]) / static_cast<double>(cmp.samples)) + "\n";
}

void run_sample(const ExperimentConfig& c, ExperimentResult& out) {
  const auto b = load_backend(c);
  std::vector<LabeledHypergraph> graphs(c.samples);
  for_each_replica(c.samples, c.threads, [&](std::uint64_t i) {
    Rng rng = replica_stream(c.seed, i);
    graphs[i] = graph_from_bits(b.arity(), c.n, draw_edges(b, c.n, rng));
  });
  for (std::uint64_t i = 0; i < c.samples; ++i)
    out.jsonl.push_back(json{{"index", i}, {"graph", to_json(graphs[i])}}.dump());
  out.report["count"] = c.samples;
  out.report["n"] = c.n;
  out.report["edges_per_graph"] = json::array();
  for (const auto& g : graphs) out.report["edges_per_graph"].push_back(g.edges.size());
}

void run_morley(const ExperimentConfig& c, ExperimentResult& out) {
  const auto b = load_backend(c);
  const auto phi = parse_formula(c.formula, b.arity());
  const auto ctx = load_context(c, b.arity());
  EliminationOrder ord = c.order.empty() ? EliminationOrder::canonical(phi) : EliminationOrder{c.order};
  const double v = morley_power(b, phi, ctx, ord);
  out.report["formula"] = render(phi);
  out.report["order"] = ord.order;
  out.report["value"] = v;
  out.csv = "formula,order,value\n\"" + render(phi) + "\",\"";
  for (std::size_t i = 0; i < ord.order.size(); ++i) out.csv += (i ? " " : "") + std::to_string(ord.order[i]);
  out.csv += "\"," + format_double(v) + "\n";
}

void run_verify_mode(const ExperimentConfig& c, ExperimentResult& out) {
  std::vector<std::string> suites;
  if (c.suite == "all") suites = verify_suites();
  else suites.push_back(c.suite);
  json reports = json::array();
  out.csv = "suite,passed,checks,max_residual\n";
  for (const auto& s : suites) {
    const auto rep = run_verify(s, c.tolerance, c.seed);
    out.passed = out.passed && rep.passed;
    reports.push_back(rep.to_json());
    out.csv += s + "," + (rep.passed ? "true" : "false") + "," + std::to_string(rep.checks) + "," +
               format_double(rep.max_residual) + "\n";
  }
  out.report["suites"] = reports;
}

void run_demo(const ExperimentConfig& c, ExperimentResult& out) {
  out.report["demo"] = c.demo;
  if (c.demo == "noninvariance") {
    const auto psi = parse_formula("R(x1,x2)&R(x1,mb)&!R(x2,mc)", 2);
    const KeislerBackend leb{MixtureMeasure::lebesgue()};
    const double yx = morley_power(leb, psi, {}, {{2, 1}});
    const double xy = morley_power(leb, psi, {}, {{1, 2}});
    out.report["measure"] = "lebesgue";
    out.report["formula"] = render(psi);
    out.report["order_2_1"] = yx;
    out.report["order_1_2"] = xy;
    out.report["expected"] = {{"order_2_1", 1.0 / 6.0}, {"order_1_2", 1.0 / 12.0}};
    out.passed = std::abs(yx - 1.0 / 6.0) <= 1e-12 && std::abs(xy - 1.0 / 12.0) <= 1e-12;
    out.csv = "order,value\n2 1," + format_double(yx) + "\n1 2," + format_double(xy) + "\n";
    return;
  }
  if (c.demo == "threshold" || c.demo == "rado") {
    const auto rep = run_verify(c.demo, c.tolerance, c.seed);
    out.passed = rep.passed;
    out.report["result"] = rep.to_json();
    out.csv = "key,value\n";
    for (const auto& [k, v] : rep.details.items())
      if (v.is_number()) out.csv += k + "," + v.dump() + "\n";
    return;
  }
  throw ModelError("unknown demo '" + c.demo + "'");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  c.mode = j.value("mode", c.mode);
  if (j.contains("model")) c.model = j.at("model");
  else if (j.contains("model_file")) c.model = read_json_file(j.at("model_file").get<std::string>());
  c.backend = j.value("backend", "");
  if (j.contains("graph")) c.graph = j.at("graph");
  c.formula = j.value("formula", "");
  c.order = j.value("order", std::vector<int>{});
  if (j.contains("context")) c.context = j.at("context");
  c.n = j.value("n", 0);
  c.samples = j.value("samples", std::uint64_t{0});
  c.seed = j.value("seed", c.seed);
  c.tolerance = j.value("tolerance", c.tolerance);
  c.threads = j.value("threads", c.threads);
  c.suite = j.value("suite", "");
  c.demo = j.value("demo", "");
  c.json_out = j.value("json_out", "");
  c.csv_out = j.value("csv_out", "");
  c.jsonl_out = j.value("jsonl_out", "");
  c.validate();
  return c;
}

void ExperimentConfig::validate() const {
  static const std::vector<std::string> modes{"exact", "mc", "sample", "morley", "verify", "demo"};
  if (std::find(modes.begin(), modes.end(), mode) == modes.end()) throw ModelError("unknown mode '" + mode + "'");
  if (!(tolerance > 0)) throw ModelError("tolerance must be positive");
  if ((mode == "mc" || mode == "sample") && samples < 1) throw ModelError("mode '" + mode + "' needs samples >= 1");
  if (mode == "sample" && n < 1) throw ModelError("sample mode needs n >= 1");
  if (mode == "morley" && formula.empty()) throw ModelError("morley mode needs a formula");
  if (mode == "verify" && suite.empty()) throw ModelError("verify mode needs a suite");
  if (mode == "demo" && demo.empty()) throw ModelError("demo mode needs a demo name");
  if (threads < 1) throw ModelError("threads must be >= 1");
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult out;
  out.report = {{"mode", config.mode}, {"seed", config.seed}, {"tolerance", config.tolerance}};
  if (config.mode == "exact" || config.mode == "mc") run_density(config, config.mode == "mc", out);
  else if (config.mode == "sample") run_sample(config, out);
  else if (config.mode == "morley") run_morley(config, out);
  else if (config.mode == "verify") run_verify_mode(config, out);
  else run_demo(config, out);
  out.report["passed"] = out.passed;

  if (!config.json_out.empty()) write_text_file(config.json_out, out.report.dump(2) + "\n");
  if (!config.csv_out.empty()) write_text_file(config.csv_out, out.csv);
  if (!config.jsonl_out.empty()) {
    std::string text;
    for (const auto& line : out.jsonl) text += line + "\n";
    write_text_file(config.jsonl_out, text);
  }
  return out;
}

}  // namespace gensample
