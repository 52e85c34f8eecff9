#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "speedscale/adversary.hpp"
#include "speedscale/policies.hpp"
#include "speedscale/random_instances.hpp"

using namespace speedscale;

namespace {

PolicyView view(std::vector<double> v) { return make_view(1, v); }

const CostModel kSquare = CostModel::power_law(2.0);

std::vector<double> random_sorted(std::mt19937_64& rng, std::size_t n, double hi) {
  std::uniform_real_distribution<double> u(0.0, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

// The view handed to policies carries no deadline anywhere.
template <typename T>
concept HasDeadline = requires(T t) { t.deadline; };
template <typename T>
concept HasArrival = requires(T t) { t.arrival; };
static_assert(!HasDeadline<Candidate> && !HasDeadline<PolicyView>);
static_assert(!HasArrival<Candidate> && !HasArrival<PolicyView>);
static_assert(HasDeadline<Job>);

TEST(ComputeM, Examples) {
  EXPECT_EQ(compute_m(view({10, 6, 3}), kSquare), 2u);
  EXPECT_EQ(compute_m(view({0.5}), kSquare), 0u);
  EXPECT_EQ(compute_m(view({100, 100, 100, 100, 100}), kSquare), 5u);
  EXPECT_EQ(compute_m(view({}), kSquare), 0u);
  // strict: exactly zero marginal profit is excluded
  EXPECT_EQ(compute_m(view({1.0}), kSquare), 0u);
  EXPECT_EQ(compute_m(view({5, 3}), kSquare), 1u);
}

TEST(InnerGreedy, Examples) {
  const std::vector<double> a{6, 3}, b{}, c{3};
  EXPECT_DOUBLE_EQ(inner_greedy_profit(a, kSquare), 5.0);
  EXPECT_DOUBLE_EQ(inner_greedy_profit(b, kSquare), 0.0);
  EXPECT_DOUBLE_EQ(inner_greedy_profit(c, kSquare), 2.0);
}

TEST(LcrBreakdown, FrozenValues) {
  const auto v = view({10, 6, 3});
  const auto b1 = lcr_breakdown(v, kSquare, 1);
  EXPECT_DOUBLE_EQ(b1.M, 9.0);
  EXPECT_DOUBLE_EQ(b1.P, 9.0);
  EXPECT_DOUBLE_EQ(b1.c_greedy, 5.0);
  EXPECT_NEAR(b1.lcr, 14.0 / 9.0, 1e-15);
  const auto b2 = lcr_breakdown(v, kSquare, 2);
  EXPECT_DOUBLE_EQ(b2.M, 14.0);
  EXPECT_DOUBLE_EQ(b2.P, 12.0);
  EXPECT_DOUBLE_EQ(b2.c_greedy, 2.0);
  EXPECT_NEAR(b2.lcr, 4.0 / 3.0, 1e-15);
  const auto single = lcr_breakdown(view({10}), kSquare, 1);
  EXPECT_DOUBLE_EQ(single.lcr, 1.0);
  EXPECT_THROW(lcr_breakdown(v, kSquare, 3), DomainError);
  EXPECT_THROW(lcr_breakdown(v, kSquare, 0), DomainError);
}

TEST(LcrBreakdown, MatchesSubsetOracleOnRandomPools) {
  std::mt19937_64 rng(11);
  for (double a : {2.0, 2.5, 3.0}) {
    const auto cost = CostModel::power_law(a);
    for (int rep = 0; rep < 300; ++rep) {
      const auto v = random_sorted(rng, 1 + rep % 12, 4.0 * std::pow(3.0, a));
      const std::size_t m = compute_m(std::span<const double>(v), cost);
      ASSERT_EQ(m, oracle::m_of(v, a));
      const auto ledger = lcr_ledger(v, cost, m);
      ASSERT_EQ(ledger.size(), m);
      for (std::size_t i = 1; i <= m; ++i) {
        EXPECT_GT(ledger[i - 1].P, 0.0);
        EXPECT_NEAR(ledger[i - 1].lcr, oracle::lcr(v, a, i), 1e-9);
        EXPECT_NEAR(ledger[i - 1].lcr, lcr_breakdown(v, cost, i, m).lcr, 1e-12);
      }
    }
  }
}

TEST(MinLcr, Examples) {
  const auto c = min_lcr_decide(view({10, 6, 3}), kSquare);
  EXPECT_EQ(c.count, 2u);
  EXPECT_EQ(c.ledger.size(), 2u);
  EXPECT_EQ(min_lcr_decide(view({0.5}), kSquare).count, 0u);
  EXPECT_TRUE(min_lcr_decide(view({0.5}), kSquare).ledger.empty());
  EXPECT_EQ(min_lcr_decide(view({10}), kSquare).count, 1u);
}

TEST(MinLcr, ArgminWithSmallestIndexOnTies) {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 500; ++rep) {
    const auto v = random_sorted(rng, 1 + rep % 10, 20.0);
    const auto c = min_lcr_decide(make_view(1, v), kSquare);
    for (const auto& b : c.ledger) {
      EXPECT_LE(c.ledger[c.count - 1].lcr, b.lcr + 1e-12);
      if (b.i < c.count) {
        EXPECT_GT(b.lcr, c.ledger[c.count - 1].lcr - 1e-12);
      }
    }
  }
  // equal values, symmetric ledger: [4, 4] at alpha = 2 gives LCR 2 vs 1.5
  EXPECT_EQ(min_lcr_decide(view({4, 4}), kSquare).count, 2u);
}

TEST(BetaRoot, FrozenValues) {
  EXPECT_NEAR(beta_root(2.0), (std::sqrt(5.0) - 1.0) / 2.0, 1e-9);
  EXPECT_NEAR(beta_root(3.0), 0.7548776662, 1e-9);
  const double b10 = beta_root(10.0);
  EXPECT_GT(b10, 0.0);
  EXPECT_LT(b10, 1.0);
  EXPECT_LT(std::abs(std::pow(b10, 10.0) + std::pow(b10, 9.0) - 1.0), 1e-10);
  EXPECT_THROW(beta_root(1.0), DomainError);
  EXPECT_EQ(beta_root(3.0), beta_root(3.0));
}

TEST(SimLcr, Examples) {
  EXPECT_EQ(sim_lcr_decide(view({10, 6, 3}), kSquare).count, 2u);
  EXPECT_EQ(sim_lcr_decide(view({10}), kSquare).count, 1u);
  EXPECT_EQ(sim_lcr_decide(view({0.5}), kSquare).count, 0u);
  EXPECT_THROW(sim_lcr_decide(view({10}), CostModel::tabulated({0, 1, 3})), UnsupportedModelError);
}

TEST(SimLcr, EvaluatesOnlyTheTwoBetaCounts) {
  // 20 jobs of value 20 at alpha = 2: m = 10, beta m = 6.18
  const auto c = sim_lcr_decide(view(std::vector<double>(20, 20.0)), kSquare);
  ASSERT_EQ(c.ledger.size(), 2u);
  EXPECT_EQ(c.ledger[0].i, 6u);
  EXPECT_EQ(c.ledger[1].i, 7u);
}

TEST(Greedy, Examples) {
  EXPECT_EQ(greedy_decide(view({10, 6, 3}), kSquare).count, 2u);
  EXPECT_EQ(greedy_decide(view({0.5}), kSquare).count, 0u);
  EXPECT_EQ(greedy_decide(view({100, 100, 100, 100, 100}), kSquare).count, 5u);
}

TEST(PolicyNames, RoundTrip) {
  for (const auto& n : policy_names()) {
    const auto k = parse_policy(n);
    ASSERT_TRUE(k.has_value());
    EXPECT_EQ(to_string(*k), n);
  }
  EXPECT_FALSE(parse_policy("foo").has_value());
}

TEST(RunPolicy, Examples) {
  const Instance expiring({{0, 1, 4.0, Deadline::slots(1)}, {1, 1, 4.0, Deadline::slots(1)}});
  const auto t1 = run_policy(expiring, PolicyKind::kMinLcr, kSquare);
  ASSERT_EQ(t1.decisions.size(), 1u);
  EXPECT_EQ(t1.decisions[0].processed.size(), 2u);
  EXPECT_DOUBLE_EQ(t1.total_profit, 4.0);

  EXPECT_TRUE(run_policy(Instance{}, PolicyKind::kMinLcr, kSquare).decisions.empty());
  EXPECT_DOUBLE_EQ(run_policy(Instance{}, PolicyKind::kGreedy, kSquare).total_profit, 0.0);

  const Instance staggered({{0, 1, 10.0, Deadline::infinite()}, {1, 2, 10.0, Deadline::infinite()}});
  EXPECT_DOUBLE_EQ(run_policy(staggered, PolicyKind::kGreedy, kSquare).total_profit, 18.0);
}

TEST(RunPolicy, TerminatesWithUnprofitableInfiniteJobs) {
  const Instance inst({{0, 1, 0.5, Deadline::infinite()}, {1, 5, 0.25, Deadline::infinite()}});
  const auto tr = run_policy(inst, PolicyKind::kMinLcr, kSquare);
  EXPECT_DOUBLE_EQ(tr.total_profit, 0.0);
  EXPECT_LE(tr.decisions.size(), 2u);
}

TEST(RunPolicy, TraceProfitMatchesIndependentEvaluation) {
  for (int rep = 0; rep < 100; ++rep) {
    const auto inst = random_instance({}, kSquare, mix_seed(21, rep));
    for (auto k : {PolicyKind::kMinLcr, PolicyKind::kSimLcr, PolicyKind::kGreedy}) {
      const auto tr = run_policy(inst, k, kSquare);
      EXPECT_NEAR(tr.total_profit, evaluate_trace(inst, tr, kSquare), 1e-9);
    }
  }
}

TEST(InformationHiding, SameDecisionsUntilAvailabilityDiverges) {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 300; ++rep) {
    auto a = random_instance({}, kSquare, mix_seed(32, rep));
    std::vector<Job> jobs = a.jobs();
    std::uniform_int_distribution<int> dl(1, 6);
    for (auto& j : jobs)
      if (rng() % 3 == 0) j.deadline = rng() % 2 ? Deadline::infinite() : Deadline::slots(dl(rng));
    const Instance b(jobs);
    for (auto kind : {PolicyKind::kMinLcr, PolicyKind::kSimLcr, PolicyKind::kGreedy}) {
      const auto ta = run_policy(a, kind, kSquare), tb = run_policy(b, kind, kSquare);
      std::map<Slot, std::vector<JobId>> da, db;
      for (const auto& d : ta.decisions) da[d.slot] = d.processed;
      for (const auto& d : tb.decisions) db[d.slot] = d.processed;
      std::set<JobId> done_a, done_b;
      for (Slot t = 1; t <= 200; ++t) {
        std::vector<JobId> pa, pb;
        for (const auto& j : available_jobs(a, t, done_a)) pa.push_back(j.id);
        for (const auto& j : available_jobs(b, t, done_b)) pb.push_back(j.id);
        if (pa != pb) break;
        ASSERT_EQ(da.count(t) ? da[t] : std::vector<JobId>{}, db.count(t) ? db[t] : std::vector<JobId>{})
            << "rep " << rep << " slot " << t;
        if (da.count(t)) done_a.insert(da[t].begin(), da[t].end());
        if (db.count(t)) done_b.insert(db[t].begin(), db[t].end());
      }
    }
  }
}

// Any leftover subset's greedy profit is at most V(m) - g(m) of the full pool.
TEST(Properties, LeftoverGreedyBoundedByFullPrefix) {
  std::mt19937_64 rng(41);
  for (double a : {2.0, 2.5, 3.0, 4.0}) {
    const auto cost = CostModel::power_law(a);
    for (int rep = 0; rep < 400; ++rep) {
      const auto v = random_sorted(rng, 1 + rep % 12, 3.0 * std::pow(4.0, a));
      const std::size_t m = compute_m(std::span<const double>(v), cost);
      if (m == 0) continue;
      double vm = 0.0;
      for (std::size_t j = 0; j < m; ++j) vm += v[j];
      const double cap = vm - cost.g(static_cast<std::int64_t>(m));
      for (int s = 0; s < 20; ++s) {
        std::vector<double> sub;
        for (double x : v)
          if (rng() % 2) sub.push_back(x);
        EXPECT_LE(inner_greedy_profit(sub, cost), cap + 1e-9);
      }
    }
  }
}

TEST(Properties, SimLcrAndGreedySlotBounds) {
  const double phi1 = golden_ratio_plus_one();
  std::mt19937_64 rng(51);
  for (double a : {2.0, 2.5, 2.75, 3.0, 3.5, 4.0}) {
    const auto cost = CostModel::power_law(a);
    for (int rep = 0; rep < 300; ++rep) {
      const auto inst = random_instance({}, cost, mix_seed(52, rep, static_cast<std::uint64_t>(a * 100)));
      for (const auto& d : run_policy(inst, PolicyKind::kSimLcr, cost).decisions)
        if (d.chosen_lcr) {
          EXPECT_LE(*d.chosen_lcr, phi1 + 1e-9) << "alpha=" << a;
        }
      for (const auto& d : run_policy(inst, PolicyKind::kGreedy, cost).decisions)
        if (d.chosen_lcr) {
          EXPECT_LE(*d.chosen_lcr, 3.0 + 1e-9) << "alpha=" << a;
        }
    }
  }
}
