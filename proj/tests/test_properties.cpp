#include <gtest/gtest.h>

#include <sstream>

#include "oracle.hpp"

using namespace bent;

TEST(Properties, Parseval) {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 100000; ++i) {
        const int n = 1 + static_cast<int>(rng() % 8);
        auto w = walsh_transform(oracle::random_table(n, rng));
        long long sum = 0;
        for (auto v : w.coeffs) sum += v * v;
        ASSERT_EQ(sum, 1LL << (2 * n)) << "n=" << n;
    }
}

TEST(Properties, FastTransformMatchesDirectSum) {
    std::mt19937_64 rng(202);
    const std::vector<std::pair<int, int>> plan{{4, 6000}, {6, 3000}, {8, 1500}};
    for (auto [n, count] : plan)
        for (int i = 0; i < count; ++i) {
            auto t = oracle::random_table(n, rng);
            ASSERT_EQ(walsh_transform(t).coeffs, oracle::direct_wht(oracle::bits_of(t)));
        }
}

TEST(Properties, BentIffNonlinearityIsMaximal) {
    for (int n : {2, 4}) {
        const std::size_t N = std::size_t{1} << n;
        const long long top = (1LL << (n - 1)) - (1LL << (n / 2 - 1));
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << N); ++code) {
            TruthTable t(n);
            for (std::size_t x = 0; x < N; ++x) t.set(x, static_cast<int>((code >> x) & 1));
            ASSERT_EQ(is_bent(t), nonlinearity(t) == top);
            ASSERT_LE(nonlinearity(t), top);
        }
    }
}

TEST(Properties, BentSetClosedUnderComplementAndTranslation) {
    auto all = enumerate_bent(4);
    std::set<TruthTable> set(all.begin(), all.end());
    for (auto& t : all) {
        TruthTable c(4);
        for (std::size_t x = 0; x < 16; ++x) c.set(x, !t[x]);
        ASSERT_TRUE(set.count(c));
        for (std::size_t u = 1; u < 16; ++u) {
            TruthTable s(4);
            for (std::size_t x = 0; x < 16; ++x) s.set(x, t[x ^ u]);
            ASSERT_TRUE(set.count(s));
        }
    }
}

TEST(Properties, GlobalFlipOfModel) {
    std::mt19937_64 rng(303);
    auto m = build_full_model(4);
    for (int i = 0; i < 2000; ++i) {
        SpinAssignment s, f;
        for (auto id : m.spins()) {
            int v = rng() & 1 ? 1 : -1;
            s.set(id, v);
            f.set(id, -v);
        }
        ASSERT_EQ(energy(m, s), energy(m, f));
    }
}

TEST(Properties, SeedDeterminismIsByteIdentical) {
    RunOptions opt;
    opt.mode = SolveMode::anneal;
    opt.schedule.sweeps = 500;
    opt.schedule.restarts = 20;
    opt.schedule.seed = 77;
    for (const char* c : {"A:1111", "B:0110"}) {
        std::ostringstream a, b;
        write_catalog(a, run_condition(4, ConditionVector::parse(c), opt).catalog);
        write_catalog(b, run_condition(4, ConditionVector::parse(c), opt).catalog);
        ASSERT_EQ(a.str(), b.str());
    }
    auto m = build_full_model(4);
    AnnealSchedule s;
    s.sweeps = 300;
    s.restarts = 8;
    s.seed = 5;
    auto x = solve_anneal(m, s), y = solve_anneal(m, s);
    ASSERT_EQ(x.samples.size(), y.samples.size());
    for (std::size_t i = 0; i < x.samples.size(); ++i) {
        EXPECT_EQ(x.samples[i].state, y.samples[i].state);
        EXPECT_EQ(x.samples[i].energy, y.samples[i].energy);
    }
    s.seed = 6;
    auto z = solve_anneal(m, s);
    bool differs = z.samples.size() != x.samples.size();
    for (std::size_t i = 0; !differs && i < x.samples.size(); ++i) differs = !(z.samples[i].state == x.samples[i].state);
    EXPECT_TRUE(differs);
}

TEST(Properties, RestartSeedsAreDistinct) {
    std::set<std::uint64_t> seen;
    for (long long r = 0; r < 1000; ++r) seen.insert(restart_seed(default_seed, r));
    EXPECT_EQ(seen.size(), 1000u);
}

TEST(Properties, AnnealNeverBelowBoundOnFullModel) {
    AnnealSchedule s;
    s.sweeps = 200;
    s.restarts = 50;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        s.seed = seed;
        for (auto& smp : solve_anneal(build_full_model(4), s).samples) ASSERT_GE(smp.energy, -64);
    }
}
