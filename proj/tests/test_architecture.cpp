#include <gtest/gtest.h>

#include <sstream>

#include "oracle.hpp"

using namespace bent;

namespace {

ReductionPlan plan4(const char* cond) { return reduce_recursive(split(build_full_model(4), ConditionVector::parse(cond))); }

SpinAssignment all_up(const TreeArchitecture& a) {
    SpinAssignment s;
    for (auto& v : a.nodes) s.set(SpinId::q(v.id), 1);
    return s;
}

}  // namespace

TEST(Tree, TwoVariableParts) {
    auto a = build_tree(2);
    EXPECT_EQ(a.parts, 2);
    for (int p : {0, 1}) {
        EXPECT_EQ(a.node_count(p), 3u);
        EXPECT_EQ(a.edge_count(p), 2u);
        EXPECT_TRUE(a.is_tree(p));
    }
    EXPECT_TRUE(a.embeddable);
    EXPECT_TRUE(a.validate_structure().empty());
}

TEST(Tree, FourVariableCounts) {
    auto a = build_tree(4);
    EXPECT_EQ(a.parts, 1);
    EXPECT_EQ(a.nodes.size(), 24u);
    EXPECT_EQ(a.edges.size(), 28u);
    EXPECT_EQ(a.edge_count(EdgeKind::problem_coupling), 16u);
    EXPECT_EQ(a.edge_count(EdgeKind::chain_equality), 12u);
    EXPECT_EQ(a.edge_count(EdgeKind::control_link), 0u);
    EXPECT_LE(a.max_degree(), 3);
    EXPECT_TRUE(a.validate_structure().empty());
    std::size_t c = 0;
    for (auto& v : a.nodes) c += v.region == Region::C;
    EXPECT_EQ(c, 16u);
}

TEST(Tree, EightVariablePartsAreTrees) {
    auto a = build_tree(8);
    EXPECT_EQ(a.parts, 4);
    EXPECT_FALSE(a.embeddable);
    for (int p = 0; p < 4; ++p) {
        EXPECT_EQ(a.node_count(p), 127u);
        EXPECT_EQ(a.edge_count(p), 126u);
        EXPECT_TRUE(a.is_tree(p));
    }
    EXPECT_LE(a.max_degree(), 3);
    EXPECT_TRUE(a.validate_structure().empty());
    EXPECT_THROW(build_tree(6), std::invalid_argument);
}

TEST(Tree, ReadoutOnlyFromRegionC) {
    for (int n : {2, 4, 8}) {
        auto a = build_tree(n);
        for (auto& v : a.nodes) {
            EXPECT_EQ(v.readout, v.region == Region::C);
            if (v.region == Region::C) {
                EXPECT_LE(a.degree(v.id), 2);
            }
        }
    }
}

TEST(Tree, ValidateStructureReportsViolations) {
    auto a = build_tree(4);
    auto hub = a.nodes.front().id;
    for (int i = 0; i < 3; ++i) a.edges.push_back({hub, a.nodes[static_cast<std::size_t>(10 + i)].id, EdgeKind::control_link});
    EXPECT_FALSE(a.validate_structure().empty());
}

TEST(Chains, Validation) {
    auto a = build_tree(4);
    auto s = all_up(a);
    EXPECT_TRUE(validate_chains(a, s));
    auto chain = a.chains();
    auto big = std::find_if(chain.begin(), chain.end(), [](auto& c) { return c.size() > 1; });
    ASSERT_NE(big, chain.end());
    s.set(SpinId::q(big->back()), -1);
    EXPECT_FALSE(validate_chains(a, s));
    SpinAssignment partial;
    partial.set(SpinId::q(1), 1);
    EXPECT_THROW(validate_chains(a, partial), std::invalid_argument);
}

TEST(Embed, TwoVariableMatchesLogicalLeaves) {
    auto plan = reduce_recursive(split(build_full_model(2), ConditionVector::parse("A:0")));
    auto a = build_tree(plan);
    auto m = embed(plan, a);
    EXPECT_EQ(m.spins().size(), 6u);
    EXPECT_EQ(m.couplings().size(), 4u);
    auto logical = plan.models();
    long long logical_min = 0;
    for (auto& lm : logical) logical_min += solve_exact(lm).ground_energy;
    auto r = solve_exact(m);
    EXPECT_EQ(r.ground_energy, logical_min);
    std::set<TruthTable> decoded;
    for (auto& g : r.ground_states)
        for (auto& t : decode_embedded(plan, a, g, case_translations(plan))) decoded.insert(t);
    auto want = run_condition(2, ConditionVector::parse("A:0")).catalog.tables();
    EXPECT_EQ(decoded, std::set<TruthTable>(want.begin(), want.end()));
}

TEST(Embed, FourVariableDecodesToLogicalPipeline) {
    auto plan = plan4("A:1111");
    auto a = build_tree(plan);
    auto m = embed(plan, a);
    EXPECT_EQ(m.spins().size(), 24u);
    auto tr = case_translations(plan);
    ASSERT_EQ(tr.size(), 2u);
    for (auto& t : tr) EXPECT_EQ(t.u, 4u);
    auto r = solve_exact(m);
    std::set<TruthTable> decoded;
    for (auto& g : r.ground_states) {
        ASSERT_TRUE(validate_chains(a, g));
        for (auto& t : decode_embedded(plan, a, g, tr)) decoded.insert(t);
    }
    auto want = oracle::condition_solutions(4, ConditionVector::parse("A:1111"));
    EXPECT_EQ(decoded.size(), 64u);
    EXPECT_EQ(decoded, want);
}

TEST(Embed, ZeroChainStrengthBreaksChains) {
    auto plan = plan4("A:1111");
    auto a = build_tree(plan);
    auto r = solve_exact(embed(plan, a, 0));
    std::size_t broken = 0;
    for (auto& g : r.ground_states) broken += !validate_chains(a, g);
    EXPECT_GT(broken, 0u);
    EXPECT_THROW(decode_embedded(plan, a, *std::find_if(r.ground_states.begin(), r.ground_states.end(),
                                                        [&](auto& g) { return !validate_chains(a, g); }),
                                 case_translations(plan)),
                 std::invalid_argument);
}

TEST(Embed, DefaultChainStrength) {
    auto plan = plan4("A:1111");
    auto a = build_tree(plan);
    auto m = embed(plan, a);
    long long chain = 0;
    for (auto& e : a.edges)
        if (e.kind == EdgeKind::chain_equality) chain = m.coupling(SpinId::q(e.a), SpinId::q(e.b));
    EXPECT_EQ(chain, -16);
}

TEST(Embed, RefusesMismatches) {
    auto a4 = build_tree(4);
    EXPECT_THROW(embed(plan4("B:0011"), a4), std::invalid_argument);
    EXPECT_THROW(embed(reduce_recursive(split(build_full_model(2), ConditionVector::parse("A:0"))), a4), std::invalid_argument);
    auto a8 = build_tree(8);
    EXPECT_THROW(embed(detail::reference_plan(8), a8), std::invalid_argument);
}

TEST(Resources, PublishedRowsAndGeneratedRows) {
    auto rows = resource_table();
    auto find = [&](int n, const std::string& scheme, const std::string& src) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](auto& r) { return r.n == n && r.scheme == scheme && r.source == src; });
        EXPECT_NE(it, rows.end()) << n << ' ' << scheme << ' ' << src;
        return *it;
    };
    auto c4 = find(4, "chimera", "published");
    EXPECT_EQ(c4.qubits, 16);
    EXPECT_EQ(*c4.couplers, 36);
    auto c8 = find(8, "chimera", "published");
    EXPECT_EQ(c8.qubits, 512);
    EXPECT_EQ(*c8.couplers, 1456);
    auto c2 = find(2, "chimera", "published");
    EXPECT_EQ(c2.qubits, 8);
    EXPECT_EQ(*c2.couplers, 32);
    auto t4 = find(4, "tree", "generated");
    EXPECT_EQ(t4.qubits, 24);
    EXPECT_EQ(*t4.couplers, 28);
    auto t8 = find(8, "tree", "generated");
    EXPECT_EQ(t8.qubits, 127);
    EXPECT_EQ(*t8.couplers, 126);
    EXPECT_EQ(t8.parts, 4);
    auto l8 = find(8, "logical", "generated");
    EXPECT_EQ(l8.qubits, 80);
    EXPECT_EQ(*l8.couplers, 1024);
    EXPECT_TRUE(std::is_sorted(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.n < b.n; }));
}

TEST(Resources, GraphAndCsvOutput) {
    std::ostringstream g;
    write_graph(g, build_tree(2));
    std::string first;
    std::istringstream gi(g.str());
    std::getline(gi, first);
    EXPECT_EQ(first.rfind("node 1 role=", 0), 0u);
    EXPECT_NE(g.str().find(" kind=problem-coupling\n"), std::string::npos);
    std::size_t lines = 0;
    for (char ch : g.str()) lines += ch == '\n';
    EXPECT_EQ(lines, 6u + 4u);
    std::ostringstream csv;
    write_resource_csv(csv, {{4, "tree", 24, 28, 1, "published", "a, \"b\""}, {2, "logical", 8, std::nullopt, 1, "generated", "x"}});
    EXPECT_EQ(csv.str(), "n,scheme,qubits,couplers,parts,source,note\n4,tree,24,28,1,published,\"a, \"\"b\"\"\"\n2,logical,8,,1,generated,x\n");
    std::ostringstream tab;
    write_resource_table(tab, resource_table());
    EXPECT_EQ(tab.str().rfind("n  scheme", 0), 0u);
}
