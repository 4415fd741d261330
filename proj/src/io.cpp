#include "gensample/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "gensample/error.hpp"

namespace gensample {
namespace {

Eigen::VectorXd vector_from(const json& j) {
  if (!j.is_array()) throw ModelError("expected a numeric array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

std::vector<int> parse_index_list(const std::string& key) {
  std::vector<int> out;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(std::stoi(part));
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

Term term_from_token(const std::string& tok) {
  if (tok.size() < 2) throw ModelError("bad term token '" + tok + "'");
  if (tok[0] == 'c') return Term::ctx(tok);
  if (tok[0] == 'x') return Term::var(std::stoi(tok.substr(1)));
  throw ModelError("context keys must name c-parameters or realized x-variables, got '" + tok + "'");
}

TermSet term_key(const std::string& key) {
  std::vector<Term> ts;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) ts.push_back(term_from_token(part));
  auto s = make_term_set(ts);
  if (s.size() != ts.size()) throw ModelError("repeated term in context key '" + key + "'");
  return s;
}

}  // namespace

StepGraphon graphon_from_json(const json& j) {
  if (j.value("k", 2) != 2) throw ModelError("graphon JSON must have k = 2");
  const auto w = vector_from(j.at("weights"));
  const auto& rows = j.at("values");
  Eigen::MatrixXd v(rows.size(), rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) throw ModelError("graphon values must be square");
    for (std::size_t c = 0; c < rows.size(); ++c) v(r, c) = rows[r][c].get<double>();
  }
  return StepGraphon(w, v);
}

json to_json(const StepGraphon& w) {
  json values = json::array();
  for (int i = 0; i < w.cells(); ++i) {
    json row = json::array();
    for (int c = 0; c < w.cells(); ++c) row.push_back(w(i, c));
    values.push_back(row);
  }
  return {{"k", 2}, {"weights", std::vector<double>(w.weights().data(), w.weights().data() + w.cells())},
          {"values", values}};
}

StepHypergraphon hypergraphon_from_json(const json& j) {
  const int k = j.at("k").get<int>();
  std::vector<Eigen::VectorXd> weights;
  for (const auto& w : j.at("weights")) weights.push_back(vector_from(w));
  if (j.contains("cells")) {
    const auto& cells = j.at("cells");
    if (cells.size() != weights.size()) throw ModelError("cells and weights disagree in length");
    for (std::size_t t = 0; t < cells.size(); ++t)
      if (cells[t].get<long>() != weights[t].size()) throw ModelError("cell count disagrees with weights");
  }
  const auto local = small_subsets(k, k - 1);
  std::vector<StepHypergraphon::Entry> entries;
  for (const auto& e : j.at("table")) {
    StepHypergraphon::Assignment a(local.size(), -1);
    for (const auto& [key, cell] : e.at("assign").items()) {
      auto idx = parse_index_list(key);
      std::sort(idx.begin(), idx.end());
      auto it = std::find(local.begin(), local.end(), idx);
      if (it == local.end()) throw ModelError("assign key '" + key + "' is not a subset of [k] of size < k");
      a[it - local.begin()] = cell.get<int>();
    }
    if (std::find(a.begin(), a.end(), -1) != a.end()) throw ModelError("table entry with incomplete assignment");
    entries.emplace_back(std::move(a), e.at("value").get<double>());
  }
  return StepHypergraphon(k, std::move(weights), entries);
}

json to_json(const StepHypergraphon& w) {
  const int k = w.arity();
  json cells = json::array(), weights = json::array(), table = json::array();
  for (int t = 1; t <= k - 1; ++t) {
    cells.push_back(w.cells(t));
    weights.push_back(std::vector<double>(w.weights(t).data(), w.weights(t).data() + w.cells(t)));
  }
  for (std::size_t i = 0; i < w.table_size(); ++i) {
    const auto a = w.decode(i);
    json assign = json::object();
    for (std::size_t s = 0; s < a.size(); ++s) assign[join_ints(w.local_subsets()[s])] = a[s];
    table.push_back({{"assign", assign}, {"value", w.value_at(i)}});
  }
  return {{"k", k}, {"cells", cells}, {"weights", weights}, {"table", table}};
}

MixtureMeasure mixture_from_json(const json& j) {
  std::vector<Atom> atoms;
  std::vector<BetaComponent> betas;
  const json atomList = j.value("atoms", json::array());
  const json betaList = j.value("betas", json::array());
  for (const auto& a : atomList) atoms.push_back({a.at("t").get<double>(), a.at("w").get<double>()});
  for (const auto& b : betaList)
    betas.push_back({b.at("alpha").get<double>(), b.at("beta").get<double>(), b.at("w").get<double>()});
  return MixtureMeasure(std::move(atoms), std::move(betas));
}

json to_json(const MixtureMeasure& nu) {
  json atoms = json::array(), betas = json::array();
  for (const auto& a : nu.atoms()) atoms.push_back({{"t", a.t}, {"w", a.w}});
  for (const auto& b : nu.betas()) betas.push_back({{"alpha", b.alpha}, {"beta", b.beta}, {"w", b.w}});
  return {{"atoms", atoms}, {"betas", betas}};
}

KeislerBackend backend_from_json(const json& j) {
  if (j.contains("backend")) {
    const auto kind = j.at("backend").get<std::string>();
    const auto& m = j.at("model");
    if (kind == "albert") return {mixture_from_json(m)};
    if (kind == "graphon") return {graphon_from_json(m)};
    if (kind == "hypergraphon") return {hypergraphon_from_json(m)};
    throw ModelError("unknown backend '" + kind + "'");
  }
  if (j.contains("atoms") || j.contains("betas")) return {mixture_from_json(j)};
  if (j.contains("table")) return {hypergraphon_from_json(j)};
  if (j.contains("values")) return {graphon_from_json(j)};
  throw ModelError("cannot tell which model this JSON describes");
}

json to_json(const KeislerBackend& b) {
  json model = std::visit([](const auto& m) { return to_json(m); }, b.model);
  return {{"backend", b.kind()}, {"model", model}};
}

LabeledHypergraph hypergraph_from_json(const json& j) {
  return LabeledHypergraph(j.at("k").get<int>(), j.at("n").get<int>(),
                           j.at("edges").get<std::vector<std::vector<int>>>());
}

json to_json(const LabeledHypergraph& h) { return {{"k", h.k}, {"n", h.n}, {"edges", h.edges}}; }

ParamContext context_from_json(const json& j, int k) {
  ParamContext ctx;
  ctx.k = k;
  const json params = j.value("params", json::array());
  const json flat = j.value("flat", json::object());
  const json adj = j.value("adj", json::object());
  for (const auto& p : params) ctx.params.push_back(term_from_token(p.get<std::string>()));
  ctx.params = make_term_set(ctx.params);
  for (const auto& [key, cell] : flat.items()) ctx.flat[term_key(key)] = cell.get<int>();
  for (const auto& [key, a] : adj.items()) {
    auto s = term_key(key);
    if (static_cast<int>(s.size()) != k) throw ModelError("adjacency key '" + key + "' is not a k-set");
    ctx.adj[s] = a.get<bool>();
  }
  return ctx;
}

json to_json(const ParamContext& ctx) {
  json params = json::array(), flat = json::object(), adj = json::object();
  for (const auto& p : ctx.params) params.push_back(p.str());
  for (const auto& [s, c] : ctx.flat) flat[join_terms(s)] = c;
  for (const auto& [s, a] : ctx.adj) adj[join_terms(s)] = a;
  return {{"params", params}, {"flat", flat}, {"adj", adj}};
}

json to_json(const DistributionTable& t) {
  json entries = json::array();
  for (std::uint64_t m = 0; m < t.probs.size(); ++m)
    entries.push_back({{"mask", m}, {"edges", t.graph(m).edges}, {"p", t.probs[m]}});
  return {{"k", t.k}, {"n", t.n}, {"entries", entries}};
}

std::string to_csv(const DistributionTable& t) {
  std::string out = "mask,probability\n";
  for (std::uint64_t m = 0; m < t.probs.size(); ++m) out += std::to_string(m) + "," + format_double(t.probs[m]) + "\n";
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ModelError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

}  // namespace gensample
