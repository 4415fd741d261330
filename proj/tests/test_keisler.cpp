#include <gtest/gtest.h>

#include <cmath>

#include "gensample/error.hpp"
#include "gensample/keisler.hpp"
#include "gensample/morley.hpp"
#include "gensample/verify.hpp"

using namespace gensample;

namespace {

TermSet ts(std::vector<Term> v) { return make_term_set(std::move(v)); }

ParamContext graph_ctx(std::map<std::string, int> cells) {
  ParamContext ctx;
  ctx.k = 2;
  for (const auto& [name, c] : cells) {
    const Term t = name[0] == 'x' ? Term::var(std::stoi(name.substr(1))) : Term::ctx(name);
    ctx.params.push_back(t);
    ctx.flat[{t}] = c;
  }
  ctx.params = make_term_set(ctx.params);
  return ctx;
}

}  // namespace

TEST(MuW, BasicMatchesClosedForm) {
  Rng rng = replica_stream(21, 0);
  const auto w = random_step_graphon(3, rng);
  const auto ctx = graph_ctx({{"c1", 0}, {"c2", 2}});
  const auto A = ts({Term::elem("m1")});
  const auto C = ts({Term::ctx("c1")});
  const auto D = ts({Term::ctx("c2")});
  double want = 0.0;
  for (int i = 0; i < 3; ++i) want += w.weights()[i] * w(i, 0) * (1 - w(i, 2));
  EXPECT_NEAR(mu_w_basic(w, A, {}, C, D, ctx), want / 2, 1e-15);
  EXPECT_EQ(mu_w_basic(w, A, A, {}, {}, ctx), 0.0);
  EXPECT_THROW(mu_w_basic(w, {}, {}, ts({Term::ctx("c9")}), {}, ctx), ContextError);
}

TEST(MuW, CompleteMatchesDirectSum) {
  Rng rng = replica_stream(22, 0);
  const auto w = random_step_hypergraphon(3, {2, 2}, rng);
  const Term c1 = Term::ctx("c1"), c2 = Term::ctx("c2");
  ParamContext ctx;
  ctx.k = 3;
  ctx.params = ts({c1, c2});
  ctx.flat[{c1}] = 1;
  ctx.flat[{c2}] = 0;
  ctx.flat[ts({c1, c2})] = 1;
  CompleteFormula xi{3, 1, {}, ctx.params, {{{{}, ctx.params}, true}}};
  double want = 0.0;
  for (int p = 0; p < 2; ++p)
    for (int q1 = 0; q1 < 2; ++q1)
      for (int q2 = 0; q2 < 2; ++q2)
        want += w.weights(1)[p] * w.weights(2)[q1] * w.weights(2)[q2] *
                w.value(std::vector<int>{p, 1, 0, q1, q2, 1});
  EXPECT_NEAR(mu_w_complete(w, xi, ctx), want, 1e-15);
}

TEST(MuW, CompletionsPartitionUnity) {
  Rng rng = replica_stream(23, 0);
  const auto w = random_step_hypergraphon(3, {2, 2}, rng);
  const auto B = ts({Term::elem("m1")});
  const auto C = ts({Term::ctx("c1"), Term::ctx("c2")});
  const auto ctx = random_context(3, C, {2, 2}, rng);
  double total = 0.0;
  for (const auto& xi : enumerate_completions(1, B, C, 3)) total += mu_w_complete(w, xi, ctx);
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Fiber, GraphonRealizedVariable) {
  Rng rng = replica_stream(24, 0);
  const auto w = random_step_graphon(2, rng);
  const auto phi = parse_formula("R(x1,x2)&!R(x1,c1)&R(x1,mb)", 2);
  const auto data = graph_ctx({{"x2", 1}, {"c1", 0}});
  double want = 0.0;
  for (int i = 0; i < 2; ++i) want += w.weights()[i] * w(i, 1) * (1 - w(i, 0));
  EXPECT_NEAR(fiber_eval(KeislerBackend{w}, phi, 1, data), want / 2, 1e-15);
}

TEST(Fiber, HypergraphClosedFormMatchesCompletions) {
  Rng rng = replica_stream(25, 0);
  for (int t = 0; t < 20; ++t) {
    const auto w = random_step_hypergraphon(3, {2, 2}, rng);
    FormulaShape shape{3, 1, 1, 2, 1, 0, 0, 5};
    const auto phi = random_formula(shape, rng);
    const auto ctx = random_context(3, ts({Term::ctx("c1"), Term::ctx("c2")}), {2, 2}, rng);
    EXPECT_NEAR(fiber_eval(KeislerBackend{w}, phi, 1, ctx), fiber_eval_by_completions(w, phi, 1, ctx), 1e-12);
  }
}

TEST(Fiber, HypergraphonOfGraphonAgrees) {
  Rng rng = replica_stream(26, 0);
  const auto w = random_step_graphon(3, rng);
  const auto h = as_hypergraphon(w);
  const auto phi = parse_formula("R(x1,c1)&!R(x1,c2)&R(x1,m1)", 2);
  const auto ctx = graph_ctx({{"c1", 2}, {"c2", 0}});
  EXPECT_NEAR(fiber_eval(KeislerBackend{h}, phi, 1, ctx), fiber_eval(KeislerBackend{w}, phi, 1, ctx), 1e-15);
}

TEST(Fiber, OneVariableMorleyEqualsFiber) {
  Rng rng = replica_stream(27, 0);
  for (int t = 0; t < 10; ++t) {
    const int k = 2 + t % 2;
    const auto b = random_kernel_backend(k, 2, rng);
    FormulaShape shape{k, 1, 1, 2, 1, 0, 0, 4};
    const auto phi = random_formula(shape, rng);
    const auto ctx = random_context(k, ts({Term::ctx("c1"), Term::ctx("c2")}), cell_counts(b), rng);
    EXPECT_NEAR(morley_power(b, phi, ctx, EliminationOrder::canonical(phi)), fiber_eval(b, phi, 1, ctx), 1e-14);
  }
}

TEST(Key, ConstantFunctionGivesOne) {
  Rng rng = replica_stream(28, 0);
  const auto w = random_step_graphon(3, rng);
  const auto ctx = graph_ctx({{"c1", 1}, {"c2", 2}});
  const auto [lhs, rhs] = check_key(w, 2, [](const KeyPoint&) { return 1.0; }, ctx);
  EXPECT_NEAR(lhs, 1.0, 1e-14);
  EXPECT_NEAR(rhs, 1.0, 1e-14);
}

TEST(Key, AdjacencyIndicator) {
  Rng rng = replica_stream(29, 0);
  const auto w = random_step_graphon(2, rng);
  const auto ctx = graph_ctx({{"c1", 1}});
  const auto [lhs, rhs] = check_key(w, 0, [](const KeyPoint& p) { return p.adj[0] ? 1.0 : 0.0; }, ctx);
  const double want = w.weights()[0] * w(0, 1) + w.weights()[1] * w(1, 1);
  EXPECT_NEAR(lhs, want, 1e-15);
  EXPECT_NEAR(rhs, want, 1e-15);
}

TEST(Key3, ConstantFunctionGivesOne) {
  Rng rng = replica_stream(30, 0);
  const auto w = random_step_hypergraphon(3, {2, 2}, rng);
  const auto B = ts({Term::elem("m1")});
  const auto C = ts({Term::ctx("c1"), Term::ctx("c2")});
  const auto ctx = random_context(3, C, {2, 2}, rng);
  const auto [lhs, rhs] = check_key3(w, B, C, [](const Key3Point&) { return 1.0; }, ctx);
  EXPECT_NEAR(lhs, 1.0, 1e-12);
  EXPECT_NEAR(rhs, 1.0, 1e-12);
}

TEST(Additivity, FreshMixedLiteral) {
  Rng rng = replica_stream(31, 0);
  const auto w = random_step_hypergraphon(3, {2, 2}, rng);
  const auto B = ts({Term::elem("m1")});
  const auto C = ts({Term::ctx("c1")});
  CompleteFormula xi{3, 1, B, C, {{{B, C}, true}}};
  const auto gamma = make_literal(false, {Term::var(1), Term::elem("m2"), Term::ctx("c2")}, 3);
  const auto ctx = random_context(3, ts({Term::ctx("c1"), Term::ctx("c2")}), {2, 2}, rng);
  const auto [sum, parent] = check_additivity(w, xi, gamma, ctx);
  EXPECT_NEAR(sum, parent, 1e-12);
  EXPECT_GT(parent, 0.0);
}

TEST(Sumprod, Identity) {
  EXPECT_NEAR(sumprod_identity(std::vector<double>{0.2, 0.7, 0.1}), 1.0, 1e-15);
  EXPECT_NEAR(sumprod_identity(std::vector<double>{0.0, 1.0}), 1.0, 1e-15);
  EXPECT_NEAR(sumprod_identity(std::vector<double>{}), 1.0, 1e-15);
}
