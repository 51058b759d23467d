#include <gtest/gtest.h>

#include <sstream>

#include "oracle.hpp"

using namespace bent;

namespace {

SpinAssignment full_assignment(const std::vector<int>& p, const std::vector<int>& c) {
    SpinAssignment s;
    const int N = static_cast<int>(p.size());
    for (int x = 0; x < N; ++x) s.set(SpinId::p(x + 1), p[x]);
    for (int a = 0; a < N; ++a) s.set(SpinId::c(N + a + 1), c[a]);
    return s;
}

}  // namespace

TEST(SpinId, NamesRoundTrip) {
    EXPECT_EQ(SpinId::p(5).str(), "p5");
    EXPECT_EQ(SpinId::parse("c17"), SpinId::c(17));
    EXPECT_EQ(SpinId::parse("q3"), SpinId::q(3));
    EXPECT_THROW(SpinId::parse("x1"), std::invalid_argument);
    EXPECT_THROW(SpinId::parse("p"), std::invalid_argument);
    EXPECT_THROW(SpinId::parse("p1a"), std::invalid_argument);
}

TEST(FullModel, ShapeForTwoVariables) {
    auto m = build_full_model(2);
    EXPECT_EQ(m.spins().size(), 8u);
    EXPECT_EQ(m.couplings().size(), 16u);
    EXPECT_TRUE(m.fields().empty());
    EXPECT_EQ(m.offset(), 0);
    for (auto& [pr, v] : m.couplings()) EXPECT_TRUE(v == 1 || v == -1);
    // sigma6 multiplies (s1 - s2 + s3 - s4)
    EXPECT_EQ(m.coupling(SpinId::c(6), SpinId::p(2)), -1);
    EXPECT_EQ(m.coupling(SpinId::c(8), SpinId::p(4)), 1);
    EXPECT_EQ(m.coupling(SpinId::c(7), SpinId::p(3)), -1);
}

TEST(FullModel, CouplingCountIsFourToTheN) {
    for (int n : {2, 4, 6}) {
        auto m = build_full_model(n);
        EXPECT_EQ(m.couplings().size(), std::size_t{1} << (2 * n));
        EXPECT_EQ(m.spins().size(), std::size_t{2} << n);
    }
    EXPECT_THROW(build_full_model(3), std::invalid_argument);
    EXPECT_THROW(build_full_model(10), std::invalid_argument);
}

TEST(Energy, Examples) {
    auto m = build_full_model(2);
    EXPECT_EQ(energy(m, full_assignment({1, -1, 1, 1}, {-1, -1, 1, -1})), -8);
    EXPECT_EQ(energy(m, full_assignment({1, 1, 1, 1}, {1, 1, 1, 1})), 4);
    IsingModel single;
    single.add_field(SpinId::p(1), -1);
    SpinAssignment up;
    up.set(SpinId::p(1), 1);
    EXPECT_EQ(energy(single, up), -1);
}

TEST(Energy, MissingSpinIsNamed) {
    auto m = build_full_model(2);
    SpinAssignment s;
    s.set(SpinId::p(1), 1);
    try {
        energy(m, s);
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("p2"), std::string::npos);
    }
}

TEST(Energy, MatchesDirectFormulaAndSymmetries) {
    std::mt19937_64 rng(11);
    for (int n : {2, 4}) {
        auto m = build_full_model(n);
        const int N = 1 << n;
        for (int it = 0; it < 200; ++it) {
            std::vector<int> p(N), c(N);
            for (auto& v : p) v = rng() & 1 ? 1 : -1;
            for (auto& v : c) v = rng() & 1 ? 1 : -1;
            long long e = energy(m, full_assignment(p, c));
            ASSERT_EQ(e, oracle::full_energy(p, c));
            auto cn = c, pn = p;
            for (auto& v : cn) v = -v;
            for (auto& v : pn) v = -v;
            ASSERT_EQ(energy(m, full_assignment(p, cn)), -e);
            ASSERT_EQ(energy(m, full_assignment(pn, cn)), e);
        }
    }
}

TEST(FullModel, TwoVariableGroundStatesAreTheBentFunctions) {
    auto [e, gs] = oracle::brute_ground(build_full_model(2));
    EXPECT_EQ(e, -8);
    // one minimizer per bent function: no Walsh coefficient is zero, so the controls are forced
    EXPECT_EQ(gs.size(), 8u);
    std::set<TruthTable> decoded;
    for (auto& s : gs) decoded.insert(decode_problem(s, 2));
    auto all = enumerate_bent(2);
    EXPECT_EQ(decoded, std::set<TruthTable>(all.begin(), all.end()));
}

TEST(FullModel, AffineProblemStatesStayAboveMinusFour) {
    auto m = build_full_model(2);
    for (std::uint64_t a = 0; a < 4; ++a)
        for (int k = 0; k < 2; ++k)
            for (int cc = 0; cc < 16; ++cc) {
                std::vector<int> p(4), c(4);
                for (std::uint64_t x = 0; x < 4; ++x) p[x] = (oracle::dot(a, x) ^ k) ? -1 : 1;
                for (int i = 0; i < 4; ++i) c[i] = (cc >> i) & 1 ? -1 : 1;
                EXPECT_GE(energy(m, full_assignment(p, c)), -4);
            }
}

TEST(FullModel, BentAssignmentReachesBound) {
    for (int n : {2, 4, 6}) {
        auto m = build_full_model(n);
        // x0 x1 + x2 x3 + ... is bent
        TruthTable t(n);
        for (std::size_t x = 0; x < t.size(); ++x) {
            int v = 0;
            for (int i = 0; i < n; i += 2) v ^= ((x >> i) & 1) & ((x >> (i + 1)) & 1);
            t.set(x, v);
        }
        ASSERT_TRUE(is_bent(t));
        EXPECT_EQ(energy(m, full_model_assignment(t)), -(1LL << (3 * n / 2)));
    }
}

TEST(ModelIo, RoundTrip) {
    IsingModel m;
    m.add_coupling(SpinId::c(5), SpinId::p(1), 2);
    m.add_coupling(SpinId::c(5), SpinId::p(2), -2);
    m.add_field(SpinId::p(3), 1);
    m.add_offset(-4);
    std::ostringstream out;
    write_model(out, m);
    std::istringstream in(out.str());
    EXPECT_EQ(read_model(in), m);
    auto full = build_full_model(4);
    std::ostringstream o2;
    write_model(o2, full);
    std::istringstream i2(o2.str());
    EXPECT_EQ(read_model(i2), full);
}

TEST(ModelIo, Errors) {
    auto line_of = [](const std::string& text) {
        std::istringstream in(text);
        try {
            read_model(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("J p1 c5 1\n"), 1);
    EXPECT_EQ(line_of("spins: p1 c5\nJ p1 c6 1\n"), 2);
    EXPECT_EQ(line_of("spins: p1 c5\nJ p1 c5 1\nJ c5 p1 1\n"), 3);
    EXPECT_EQ(line_of("spins: p1 c5\nh p1\n"), 2);
    EXPECT_EQ(line_of("spins: p1\nzz 1\n"), 2);
    std::istringstream empty("");
    EXPECT_THROW(read_model(empty), ParseError);
}

TEST(Model, CouplingsAccumulateAndCancel) {
    IsingModel m;
    m.add_coupling(SpinId::p(1), SpinId::c(5), 1);
    m.add_coupling(SpinId::c(5), SpinId::p(1), 1);
    EXPECT_EQ(m.coupling(SpinId::p(1), SpinId::c(5)), 2);
    m.add_coupling(SpinId::p(1), SpinId::c(5), -2);
    EXPECT_TRUE(m.couplings().empty());
    EXPECT_THROW(m.add_coupling(SpinId::p(1), SpinId::p(1), 1), std::invalid_argument);
}
