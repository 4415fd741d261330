#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <tuple>
#include <numeric>
#include <set>

#include "gensample/core.hpp"
#include "gensample/error.hpp"

using namespace gensample;

namespace {

// brute-force isomorphism class key, independent of canonical.cpp
std::vector<std::uint64_t> orbit_masks(const LabeledHypergraph& h) {
  std::vector<int> p(h.n);
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::uint64_t> out;
  do out.push_back(h.relabel(p).mask());
  while (std::next_permutation(p.begin(), p.end()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Parse, AcceptsWhitespaceAndNegation) {
  const auto phi = parse_formula(" R(x1, x2) & !R( x2 ,mb ) ", 2);
  ASSERT_EQ(phi.literals().size(), 2u);
  EXPECT_EQ(phi.free_vars(), (std::vector<int>{1, 2}));
  EXPECT_EQ(render(phi), render(parse_formula(render(phi), 2)));
}

TEST(Parse, ParameterNamesKeepPrefix) {
  const auto phi = parse_formula("R(x1,c_left,mB2)", 3);
  const auto ps = phi.params();
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_TRUE(std::any_of(ps.begin(), ps.end(), [](const Term& t) { return t.is_ctx() && t.name == "c_left"; }));
  EXPECT_TRUE(std::any_of(ps.begin(), ps.end(), [](const Term& t) { return t.is_elem() && t.name == "mB2"; }));
}

TEST(Parse, ErrorsCarryPositions) {
  try {
    parse_formula("R(x1,x2)&R(x1", 2);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 13u);
  }
  EXPECT_THROW(parse_formula("R(x1,x2,x3)", 2), ParseError);
  EXPECT_THROW(parse_formula("R(x1,x1)", 2), ParseError);
  EXPECT_THROW(parse_formula("R(x0,x1)", 2), ParseError);
  EXPECT_THROW(parse_formula("R(y1,x1)", 2), ParseError);
  EXPECT_THROW(parse_formula("", 2), ParseError);
}

TEST(Conjunction, DedupsAndFlagsContradictions) {
  const auto a = parse_formula("R(x1,x2)&R(x2,x1)", 2);
  EXPECT_EQ(a.literals().size(), 1u);
  EXPECT_FALSE(a.inconsistent());
  EXPECT_TRUE(parse_formula("R(x1,x2)&!R(x2,x1)", 2).inconsistent());
}

TEST(Completions, KeyCountsMatchBinomials) {
  const auto B = make_term_set({Term::elem("m1"), Term::elem("m2")});
  const auto C = make_term_set({Term::ctx("c1"), Term::ctx("c2")});
  EXPECT_EQ(completion_keys(B, C, 3).size(), binomial(4, 2));
  EXPECT_EQ(completion_keys(B, C, 2).size(), 4u);
  EXPECT_EQ(enumerate_completions(1, B, C, 3).size(), 64u);
  for (const auto& xi : enumerate_completions(1, B, {}, 3)) EXPECT_EQ(xi.to_conjunction().literals().size(), 1u);
}

TEST(Hypergraph, MaskRoundTrip) {
  for (std::uint64_t m = 0; m < 64; ++m) EXPECT_EQ(LabeledHypergraph::from_mask(2, 4, m).mask(), m);
  for (std::uint64_t m = 0; m < 16; ++m) EXPECT_EQ(LabeledHypergraph::from_mask(3, 4, m).mask(), m);
  EXPECT_THROW(LabeledHypergraph(2, 3, {{1, 4}}), ModelError);
  EXPECT_THROW(LabeledHypergraph(2, 3, {{1, 1}}), ModelError);
}

TEST(Hypergraph, RelabelMovesEdges) {
  const LabeledHypergraph p(2, 3, {{1, 2}});
  const std::vector<int> sigma{3, 1, 2};
  EXPECT_EQ(p.relabel(sigma).edges, (std::vector<std::vector<int>>{{1, 3}}));
}

TEST(Subsets, Ordering) {
  EXPECT_EQ(k_subsets(4, 2), (std::vector<std::vector<int>>{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}));
  EXPECT_EQ(small_subsets(3, 2), (std::vector<std::vector<int>>{{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(binomial(10, 3), 120u);
}

TEST(Canonical, ClassCountsSmallGraphs) {
  // unlabeled graphs on 4 and 5 vertices: 11 and 34; 3-graphs on 4 vertices: 5
  for (auto [k, n, want] : std::vector<std::tuple<int, int, std::size_t>>{{2, 4, 11}, {2, 5, 34}, {3, 4, 5}}) {
    std::set<CanonicalForm> brute, refined;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << binomial(n, k)); ++m) {
      const auto h = LabeledHypergraph::from_mask(k, n, m);
      brute.insert(canonical_form(h));
      refined.insert(canonical_form_refined(h));
    }
    EXPECT_EQ(brute.size(), want);
    EXPECT_EQ(refined.size(), want);
  }
}

TEST(Canonical, RefinedAgreesWithOrbits) {
  // same refined form iff same orbit under Sym(5)
  std::map<std::vector<std::uint64_t>, CanonicalForm> seen;
  std::set<CanonicalForm> forms;
  for (std::uint64_t m = 0; m < 1024; ++m) {
    const auto h = LabeledHypergraph::from_mask(2, 5, m);
    const auto f = canonical_form_refined(h);
    const auto key = orbit_masks(h);
    auto [it, fresh] = seen.emplace(key, f);
    EXPECT_EQ(it->second, f);
    if (fresh) EXPECT_TRUE(forms.insert(f).second);
  }
}

TEST(Canonical, RefinedHandlesLargeSymmetricGraphs) {
  std::vector<std::vector<int>> edges;
  for (int i = 1; i <= 12; ++i)
    for (int j = i + 1; j <= 12; ++j)
      if ((i <= 6) != (j <= 6)) edges.push_back({i, j});
  const LabeledHypergraph kb(2, 12, edges);
  std::vector<int> sigma{12, 1, 11, 2, 10, 3, 9, 4, 8, 5, 7, 6};
  EXPECT_EQ(canonical_form_refined(kb), canonical_form_refined(kb.relabel(sigma)));
}

TEST(Context, MissingDataThrows) {
  ParamContext ctx;
  ctx.k = 2;
  EXPECT_THROW(ctx.flat_cell({Term::ctx("c1")}), ContextError);
  EXPECT_THROW(ctx.adjacent(make_term_set({Term::ctx("c1"), Term::ctx("c2")})), ContextError);
}
