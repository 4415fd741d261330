#include <algorithm>
#include <numeric>

#include "gensample/core.hpp"
#include "gensample/error.hpp"

namespace gensample {
namespace {

CanonicalForm image(const LabeledHypergraph& h, const std::vector<int>& label) {
  CanonicalForm out;
  out.reserve(h.edges.size());
  for (const auto& e : h.edges) {
    std::vector<int> img;
    img.reserve(e.size());
    for (int v : e) img.push_back(label[v - 1]);
    std::sort(img.begin(), img.end());
    out.push_back(std::move(img));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Refiner {
  const LabeledHypergraph& h;
  std::vector<std::vector<int>> incident;  // vertex (0-based) -> edge indices
  std::vector<std::vector<char>> twin;
  CanonicalForm best;
  bool have = false;

  explicit Refiner(const LabeledHypergraph& g) : h(g), incident(g.n) {
    for (std::size_t i = 0; i < h.edges.size(); ++i)
      for (int v : h.edges[i]) incident[v - 1].push_back(static_cast<int>(i));
    twin.assign(h.n, std::vector<char>(h.n, 0));
    for (int u = 0; u < h.n; ++u)
      for (int v = u + 1; v < h.n; ++v) twin[u][v] = twin[v][u] = swap_is_automorphism(u, v);
  }

  bool swap_is_automorphism(int u, int v) const {
    for (int w : {u, v}) {
      for (int ei : incident[w]) {
        std::vector<int> img = h.edges[ei];
        for (int& x : img) {
          if (x == u + 1) x = v + 1;
          else if (x == v + 1) x = u + 1;
        }
        if (!h.has_edge(img)) return false;
      }
    }
    return true;
  }

  static int rerank(std::vector<int>& col, const std::vector<std::vector<int>>& sig) {
    std::vector<int> order(col.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
    int c = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i == 0 || sig[order[i]] != sig[order[i - 1]]) ++c;
      col[order[i]] = c;
    }
    return c + 1;
  }

  int refine(std::vector<int>& col) const {
    int classes = 1 + *std::max_element(col.begin(), col.end());
    while (true) {
      std::vector<std::vector<int>> sig(h.n);
      for (int v = 0; v < h.n; ++v) {
        std::vector<std::vector<int>> nb;
        for (int ei : incident[v]) {
          std::vector<int> cs;
          for (int w : h.edges[ei])
            if (w - 1 != v) cs.push_back(col[w - 1]);
          std::sort(cs.begin(), cs.end());
          nb.push_back(std::move(cs));
        }
        std::sort(nb.begin(), nb.end());
        sig[v].push_back(col[v]);
        for (const auto& cs : nb) {
          sig[v].push_back(-1);
          sig[v].insert(sig[v].end(), cs.begin(), cs.end());
        }
      }
      int next = rerank(col, sig);
      if (next == classes) return classes;
      classes = next;
    }
  }

  void search(std::vector<int> col) {
    const int classes = refine(col);
    if (classes == h.n) {
      std::vector<int> label(h.n);
      for (int v = 0; v < h.n; ++v) label[v] = col[v] + 1;
      auto form = image(h, label);
      if (!have || form < best) {
        best = std::move(form);
        have = true;
      }
      return;
    }
    std::vector<int> count(classes, 0);
    for (int c : col) ++count[c];
    int target = 0;
    while (count[target] == 1) ++target;
    std::vector<int> tried;
    for (int v = 0; v < h.n; ++v) {
      if (col[v] != target) continue;
      if (std::any_of(tried.begin(), tried.end(), [&](int u) { return twin[u][v]; })) continue;
      tried.push_back(v);
      std::vector<int> next(h.n);
      for (int u = 0; u < h.n; ++u) next[u] = 2 * col[u] + ((col[u] == target && u != v) ? 1 : 0);
      search(std::move(next));
    }
  }
};

}  // namespace

CanonicalForm canonical_form(const LabeledHypergraph& h) {
  if (h.n > 8) throw OverflowError("canonical_form brute force needs n <= 8, got " + std::to_string(h.n));
  std::vector<int> label(h.n);
  std::iota(label.begin(), label.end(), 1);
  CanonicalForm best = image(h, label);
  while (std::next_permutation(label.begin(), label.end())) {
    auto form = image(h, label);
    if (form < best) best = std::move(form);
  }
  return best;
}

CanonicalForm canonical_form_refined(const LabeledHypergraph& h) {
  if (h.n == 0) return {};
  Refiner r(h);
  r.search(std::vector<int>(h.n, 0));
  return r.best;
}

}  // namespace gensample
