#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "condition.hpp"
#include "ising.hpp"
#include "reduction.hpp"
#include "solver.hpp"
#include "truth_table.hpp"

namespace bent {

enum class NodeRole { problem, controlling, chain_copy };
enum class Region { A, B, C };
enum class EdgeKind { problem_coupling, chain_equality, control_link };

inline std::string role_name(NodeRole r) {
    switch (r) {
        case NodeRole::problem: return "problem";
        case NodeRole::controlling: return "controlling";
        default: return "chain-copy";
    }
}
inline std::string region_name(Region r) { return r == Region::A ? "A" : r == Region::B ? "B" : "C"; }
inline std::string kind_name(EdgeKind k) {
    switch (k) {
        case EdgeKind::problem_coupling: return "problem-coupling";
        case EdgeKind::chain_equality: return "chain-equality";
        default: return "control-link";
    }
}

// Physical qubit. Region C nodes hold gauge * p(problem_index).
struct ArchNode {
    int id = 0;
    NodeRole role = NodeRole::problem;
    Region region = Region::C;
    std::string logical;
    int part = 0;
    int control_index = 0;  // controlling / chain-copy nodes
    int problem_index = 0;  // region C nodes
    int gauge = 1;
    bool readout = false;

    friend bool operator==(const ArchNode&, const ArchNode&) = default;
};

struct ArchEdge {
    int a = 0;
    int b = 0;
    EdgeKind kind = EdgeKind::problem_coupling;

    friend bool operator==(const ArchEdge&, const ArchEdge&) = default;
};

struct TreeArchitecture {
    int n = 0;
    int parts = 0;
    std::string condition;  // reduction path the wiring follows
    bool embeddable = false;
    std::vector<ArchNode> nodes;  // nodes[i].id == i + 1
    std::vector<ArchEdge> edges;

    const ArchNode& node(int id) const { return nodes.at(static_cast<std::size_t>(id - 1)); }

    std::vector<int> degrees() const {
        std::vector<int> d(nodes.size() + 1, 0);
        for (auto& e : edges) ++d[e.a], ++d[e.b];
        return d;
    }
    int degree(int id) const { return degrees().at(static_cast<std::size_t>(id)); }
    int max_degree() const {
        auto d = degrees();
        return *std::max_element(d.begin(), d.end());
    }

    std::size_t node_count(int part) const {
        return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [&](auto& v) { return v.part == part; }));
    }
    std::size_t edge_count(int part) const {
        return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [&](auto& e) { return node(e.a).part == part; }));
    }
    std::size_t edge_count(EdgeKind k) const {
        return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [&](auto& e) { return e.kind == k; }));
    }

    // Connected components over the edges accepted by `use`, as sorted id lists.
    template <class Pred>
    std::vector<std::vector<int>> components(Pred use) const {
        std::vector<int> parent(nodes.size() + 1);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            return x;
        };
        for (auto& e : edges)
            if (use(e)) parent[static_cast<std::size_t>(find(e.a))] = find(e.b);
        std::map<int, std::vector<int>> comp;
        for (auto& v : nodes) comp[find(v.id)].push_back(v.id);
        std::vector<std::vector<int>> out;
        for (auto& [r, ids] : comp) out.push_back(ids);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<std::vector<int>> chains() const {
        return components([](const ArchEdge& e) { return e.kind == EdgeKind::chain_equality; });
    }

    bool is_tree(int part) const {
        const auto nv = node_count(part), ne = edge_count(part);
        if (nv == 0 || ne + 1 != nv) return false;
        std::size_t touching = 0;
        for (auto& c : components([](const ArchEdge&) { return true; }))
            if (node(c.front()).part == part) ++touching;
        return touching == 1;
    }

    // Empty when the degree bound, chain and readout rules all hold.
    std::vector<std::string> validate_structure() const {
        std::vector<std::string> bad;
        auto d = degrees();
        for (auto& v : nodes) {
            if (d[static_cast<std::size_t>(v.id)] > 3) bad.push_back("node " + std::to_string(v.id) + " has degree " + std::to_string(d[static_cast<std::size_t>(v.id)]));
            if (v.region == Region::C && (d[static_cast<std::size_t>(v.id)] > 2 || !v.readout))
                bad.push_back("region C node " + std::to_string(v.id) + " breaks the readout rule");
        }
        for (auto& c : chains()) {
            std::set<std::string> logical;
            for (int id : c) logical.insert(node(id).logical);
            if (logical.size() != 1) bad.push_back("chain at node " + std::to_string(c.front()) + " spans several logical ids");
        }
        for (auto& e : edges)
            if (node(e.a).part != node(e.b).part) bad.push_back("edge " + std::to_string(e.a) + "-" + std::to_string(e.b) + " crosses parts");
        return bad;
    }
};

namespace detail {

struct Star {
    const PlanNode* node = nullptr;
    std::vector<std::vector<int>> pairs;  // rows grouped by the parent's row structure, gauge applied separately
    std::map<int, int> gauge;             // row -> sign relative to its pair's first row
};

// Follows the first case of every node down to the stars.
inline void collect_stars(const PlanNode& node, const PlanNode* parent, std::vector<Star>& out) {
    if (node.is_star()) {
        Star s{&node, {}, {}};
        if (parent) {
            std::set<int> mine(node.block.rows.begin(), node.block.rows.end());
            for (auto& g : row_groups(parent->block)) {
                std::vector<int> members;
                for (std::size_t i = 0; i < g.members.size(); ++i) {
                    int row = parent->block.rows[g.members[i]];
                    if (!mine.count(row)) continue;
                    members.push_back(row);
                    s.gauge[row] = g.signs[i];
                }
                if (!members.empty()) s.pairs.push_back(members);
            }
        } else {
            for (int r : node.block.rows) {
                s.pairs.push_back({r});
                s.gauge[r] = 1;
            }
        }
        out.push_back(std::move(s));
        return;
    }
    if (node.terminal()) throw std::invalid_argument("node " + node.path + " is neither a star nor split further");
    for (auto& p : node.cases.front().parts) collect_stars(p, &node, out);
}

struct Builder {
    TreeArchitecture arch;

    int add(NodeRole role, Region region, std::string logical, int part) {
        ArchNode v;
        v.id = static_cast<int>(arch.nodes.size()) + 1;
        v.role = role;
        v.region = region;
        v.logical = std::move(logical);
        v.part = part;
        v.readout = region == Region::C;
        arch.nodes.push_back(v);
        return v.id;
    }
    int control(int c, Region region, NodeRole role, int part) {
        int id = add(role, region, "c" + std::to_string(c), part);
        arch.nodes.back().control_index = c;
        return id;
    }
    int leaf(int row, int gauge, const std::string& logical, int part) {
        int id = add(NodeRole::problem, Region::C, logical, part);
        arch.nodes.back().problem_index = row;
        arch.nodes.back().gauge = gauge;
        return id;
    }
    void link(int a, int b, EdgeKind k) { arch.edges.push_back({a, b, k}); }
};

inline void wire_star(Builder& bld, const Star& s, int part, int& block_id) {
    const int c = s.node->block.cols.front();
    const auto& rows = s.node->block.rows;
    if (rows.size() <= 2) {
        // basic component: one controlling node, one qubit per row
        int k = bld.control(c, Region::A, NodeRole::controlling, part);
        for (int r : rows) bld.link(k, bld.leaf(r, 1, "p" + std::to_string(r), part), EdgeKind::problem_coupling);
        return;
    }
    if (rows.size() != 4 || s.pairs.size() != 2 || s.pairs[0].size() != 2 || s.pairs[1].size() != 2)
        throw std::invalid_argument("star " + s.node->path + " does not have two row pairs");
    // control chain k - k', each pair spread over both halves of the chain
    int k = bld.control(c, Region::A, NodeRole::controlling, part);
    int k2 = bld.control(c, Region::B, NodeRole::chain_copy, part);
    bld.link(k, k2, EdgeKind::chain_equality);
    std::vector<int> first, second;
    for (auto& pr : s.pairs) {
        const std::string logical = "b" + std::to_string(++block_id);
        int a = bld.leaf(pr[0], s.gauge.at(pr[0]), logical, part);
        int b = bld.leaf(pr[1], s.gauge.at(pr[1]), logical, part);
        bld.link(a, b, EdgeKind::chain_equality);
        first.push_back(a);
        second.push_back(b);
    }
    for (int a : first) bld.link(k, a, EdgeKind::problem_coupling);
    for (int b : second) bld.link(k2, b, EdgeKind::problem_coupling);
}

inline ReductionPlan reference_plan(int n) {
    std::vector<ConditionVector> levels;
    if (n == 2) levels = {ConditionVector::parse("A:0")};
    else if (n == 4) levels = {ConditionVector::parse("A:1111")};
    else levels = {ConditionVector{Family::A, std::string(64, '1')}, ConditionVector{Family::A, std::string(16, '1')}};
    return reduce_recursive(split(build_full_model(n), levels));
}

// Counts-only part for n=8: relation tree over the part's controls, two chain copies per
// control, and the j-th row group (four rows) as leaves under control j.
inline void wire_relation_tree(Builder& bld, const PlanNode& part_node, int part) {
    const auto& blk = part_node.block;
    auto groups = row_groups(blk);
    if (blk.cols.size() != 16 || groups.size() != 16) throw std::logic_error("unexpected shape of part " + part_node.path);
    std::vector<int> rel;
    for (int i = 0; i < 15; ++i) rel.push_back(bld.add(NodeRole::controlling, Region::A, "rel" + std::to_string(part) + "." + std::to_string(i + 1), part));
    for (int i = 1; i < 15; ++i) bld.link(rel[static_cast<std::size_t>((i - 1) / 2)], rel[static_cast<std::size_t>(i)], EdgeKind::control_link);
    for (std::size_t j = 0; j < blk.cols.size(); ++j) {
        const auto& g = groups[j];
        if (g.members.size() != 4) throw std::logic_error("row group of part " + part_node.path + " does not have 4 rows");
        const int c = blk.cols[j];
        int k = bld.control(c, Region::A, NodeRole::controlling, part);
        bld.link(rel[7 + j / 2], k, EdgeKind::control_link);
        for (std::size_t half = 0; half < 2; ++half) {
            int copy = bld.control(c, Region::B, NodeRole::chain_copy, part);
            bld.link(k, copy, EdgeKind::chain_equality);
            for (std::size_t t = 0; t < 2; ++t) {
                const std::size_t m = 2 * half + t;
                const int r = blk.rows[g.members[m]];
                bld.link(copy, bld.leaf(r, g.signs[m], "p" + std::to_string(r), part), EdgeKind::problem_coupling);
            }
        }
    }
}

}  // namespace detail

// Wiring for an n=2 or n=4 plan: one component per star of the first-case descent.
inline TreeArchitecture build_tree(const ReductionPlan& plan) {
    if (plan.n != 2 && plan.n != 4) throw std::invalid_argument("embeddable trees exist for n in {2, 4}, got n=" + std::to_string(plan.n));
    detail::Builder bld;
    bld.arch.n = plan.n;
    bld.arch.condition = condition_path_str(plan.levels);
    bld.arch.embeddable = true;
    int block_id = 0;
    for (std::size_t i = 0; i < plan.sub_models.size(); ++i) {
        std::vector<detail::Star> stars;
        detail::collect_stars(plan.sub_models[i], nullptr, stars);
        const int part = plan.n == 2 ? static_cast<int>(i) : 0;
        for (auto& s : stars) detail::wire_star(bld, s, part, block_id);
    }
    bld.arch.parts = plan.n == 2 ? static_cast<int>(plan.sub_models.size()) : 1;
    return bld.arch;
}

inline TreeArchitecture build_tree(int n) {
    if (n != 2 && n != 4 && n != 8) throw std::invalid_argument("build_tree supports n in {2, 4, 8}, got n=" + std::to_string(n));
    auto plan = detail::reference_plan(n);
    if (n != 8) return build_tree(plan);
    detail::Builder bld;
    bld.arch.n = 8;
    bld.arch.condition = condition_path_str(plan.levels);
    int part = 0;
    for (auto& top : plan.sub_models)
        for (auto& p : top.cases.front().parts) detail::wire_relation_tree(bld, p, part++);
    bld.arch.parts = part;
    return bld.arch;
}

// Every chain-equality component must be spin-uniform.
inline bool validate_chains(const TreeArchitecture& arch, const SpinAssignment& s) {
    for (auto& v : arch.nodes) s.at(SpinId::q(v.id));
    for (auto& c : arch.chains())
        for (int id : c)
            if (s.at(SpinId::q(id)) != s.at(SpinId::q(c.front()))) return false;
    return true;
}

inline long long leaf_coefficient(const ReductionPlan& plan, int control, int row) {
    std::function<std::optional<long long>(const PlanNode&)> look = [&](const PlanNode& node) -> std::optional<long long> {
        if (node.is_star()) {
            if (node.block.cols.front() != control) return std::nullopt;
            for (std::size_t i = 0; i < node.block.rows.size(); ++i)
                if (node.block.rows[i] == row) return node.block.at(i, 0);
            return std::nullopt;
        }
        if (node.terminal()) return std::nullopt;
        for (auto& p : node.cases.front().parts)
            if (auto v = look(p)) return v;
        return std::nullopt;
    };
    for (auto& s : plan.sub_models)
        if (auto v = look(s)) return *v;
    throw std::invalid_argument("plan has no leaf coupling c" + std::to_string(control) + "-p" + std::to_string(row));
}

// -2 * max |collapsed logical coupling| over all chains; 0 when there are no chains.
inline long long default_chain_strength(const TreeArchitecture& arch, const std::map<std::pair<int, int>, long long>& phys) {
    std::map<int, int> chain_of;
    auto chains = arch.chains();
    for (std::size_t i = 0; i < chains.size(); ++i)
        for (int id : chains[i]) chain_of[id] = static_cast<int>(i);
    std::map<std::pair<int, int>, long long> collapsed;
    for (auto& [e, v] : phys) {
        int a = chain_of[e.first], b = chain_of[e.second];
        collapsed[{std::min(a, b), std::max(a, b)}] += v;
    }
    long long m = 0;
    for (auto& [pr, v] : collapsed)
        if (chains[static_cast<std::size_t>(pr.first)].size() > 1 || chains[static_cast<std::size_t>(pr.second)].size() > 1)
            m = std::max(m, v < 0 ? -v : v);
    return -2 * m;
}

// Physical model over q(id): leaf couplings on problem edges, ferromagnetic chains.
inline IsingModel embed(const ReductionPlan& plan, const TreeArchitecture& arch, std::optional<long long> chain_strength = std::nullopt) {
    if (!arch.embeddable) throw std::invalid_argument("architecture for n=" + std::to_string(arch.n) + " carries resource counts only");
    if (plan.n != arch.n) throw std::invalid_argument("plan n=" + std::to_string(plan.n) + " does not match architecture n=" + std::to_string(arch.n));
    auto expected = build_tree(plan);
    if (expected.nodes != arch.nodes || expected.edges != arch.edges)
        throw std::invalid_argument("architecture was not generated for plan " + condition_path_str(plan.levels));
    std::map<std::pair<int, int>, long long> phys;
    for (auto& e : arch.edges) {
        if (e.kind != EdgeKind::problem_coupling) continue;
        auto& ctl = arch.node(e.a).region == Region::C ? arch.node(e.b) : arch.node(e.a);
        auto& leaf = arch.node(e.a).region == Region::C ? arch.node(e.a) : arch.node(e.b);
        phys[{e.a, e.b}] = leaf_coefficient(plan, ctl.control_index, leaf.problem_index) * leaf.gauge;
    }
    const long long S = chain_strength ? *chain_strength : default_chain_strength(arch, phys);
    IsingModel m;
    for (auto& v : arch.nodes) m.add_spin(SpinId::q(v.id));
    for (auto& [e, v] : phys) m.add_coupling(SpinId::q(e.first), SpinId::q(e.second), v);
    for (auto& e : arch.edges)
        if (e.kind == EdgeKind::chain_equality && S != 0) m.add_coupling(SpinId::q(e.a), SpinId::q(e.b), S);
    return m;
}

// Translation x -> x ^ u carrying the first case's solutions onto case j of a node.
struct CaseTranslation {
    std::string node;
    std::string label;
    std::uint32_t u = 0;
};

inline std::vector<CaseTranslation> case_translations(const ReductionPlan& plan) {
    std::vector<CaseTranslation> out;
    const std::uint32_t N = 1u << plan.n;
    for (auto& top : plan.sub_models) {
        if (top.terminal() || top.cases.size() < 2) continue;
        const auto& rows = top.block.rows;
        std::map<int, std::size_t> pos;
        for (std::size_t i = 0; i < rows.size(); ++i) pos[rows[i]] = i;
        auto base = node_solutions(top, 0);
        for (std::size_t j = 1; j < top.cases.size(); ++j) {
            auto target = node_solutions(top, j);
            std::optional<std::uint32_t> found;
            for (std::uint32_t u = 1; u < N && !found; ++u) {
                bool closed = std::all_of(rows.begin(), rows.end(), [&](int r) { return pos.count(static_cast<int>((static_cast<std::uint32_t>(r - 1) ^ u) + 1)); });
                if (!closed || base.size() != target.size()) continue;
                bool ok = true;
                for (auto& v : base) {
                    std::vector<std::int8_t> w(v.size());
                    for (std::size_t i = 0; i < rows.size(); ++i)
                        w[i] = v[pos[static_cast<int>((static_cast<std::uint32_t>(rows[i] - 1) ^ u) + 1)]];
                    if (!target.count(w)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) found = u;
            }
            if (!found) throw std::logic_error("no translation relates the cases of " + top.path);
            out.push_back({top.path, top.cases[j].cond.str(), *found});
        }
    }
    return out;
}

// Chain check, readout of region C, then the sibling-case translations of every part.
inline std::vector<TruthTable> decode_embedded(const ReductionPlan& plan, const TreeArchitecture& arch, const SpinAssignment& s,
                                               const std::vector<CaseTranslation>& translations) {
    if (!validate_chains(arch, s)) throw std::invalid_argument("broken chain in physical assignment");
    const std::size_t N = std::size_t{1} << plan.n;
    std::vector<std::int8_t> spins(N, 0);
    for (auto& v : arch.nodes)
        if (v.region == Region::C) spins[static_cast<std::size_t>(v.problem_index - 1)] = static_cast<std::int8_t>(s.at(SpinId::q(v.id)) * v.gauge);
    for (std::size_t x = 0; x < N; ++x)
        if (!spins[x]) throw std::invalid_argument("architecture does not read out p" + std::to_string(x + 1));
    std::vector<std::vector<std::int8_t>> acc{spins};
    for (auto& top : plan.sub_models) {
        std::vector<std::uint32_t> shifts{0};
        for (auto& t : translations)
            if (t.node == top.path) shifts.push_back(t.u);
        std::vector<std::vector<std::int8_t>> next;
        for (auto& v : acc)
            for (auto u : shifts) {
                auto w = v;
                for (int r : top.block.rows) {
                    auto x = static_cast<std::size_t>(r - 1);
                    w[x] = v[x ^ u];
                }
                next.push_back(std::move(w));
            }
        acc = std::move(next);
    }
    std::set<TruthTable> out;
    for (auto& v : acc) out.insert(table_from_spins(v, plan.n));
    return {out.begin(), out.end()};
}

struct ResourceRow {
    int n = 0;
    std::string scheme;  // tree, chimera, logical
    long long qubits = 0;
    std::optional<long long> couplers;
    int parts = 1;
    std::string source;  // published, generated
    std::string note;
};

// Stored constants alongside counts from build_tree. Qubits/couplers are per part.
inline std::vector<ResourceRow> resource_table() {
    std::vector<ResourceRow> rows{
        {2, "chimera", 8, 32, 1, "published", "original model on D-Wave"},
        {2, "tree", 3, 2, 2, "published", "3 qubits and 2 couplers per sub-case"},
        {4, "tree", 24, 28, 1, "published", "24 physical qubits and 28 couplers"},
        {4, "chimera", 16, 36, 1, "published", "D-Wave Chimera embedding"},
        {8, "tree", 127, 126, 4, "published", "127/126 per part; 126 qubits/127 couplers also quoted"},
        {8, "chimera", 512, 1456, 4, "published", "D-Wave per part"},
        {8, "logical", 80, std::nullopt, 4, "published", "16 controlling + 64 problem"},
    };
    for (int n : {2, 4, 8}) {
        auto a = build_tree(n);
        rows.push_back({n, "tree", static_cast<long long>(a.node_count(0)), static_cast<long long>(a.edge_count(0)), a.parts, "generated",
                        "max degree " + std::to_string(a.max_degree())});
    }
    auto plan = detail::reference_plan(8);
    const auto& part = plan.sub_models.front().cases.front().parts.front();
    const long long q = static_cast<long long>(part.block.rows.size() + part.block.cols.size());
    long long J = 0;
    for (auto v : part.block.coef) J += v != 0;
    rows.push_back({8, "logical", q, J, 4, "generated", std::to_string(part.block.cols.size()) + " controlling + " + std::to_string(part.block.rows.size()) + " problem"});
    std::stable_sort(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.n < b.n; });
    return rows;
}

inline void write_graph(std::ostream& out, const TreeArchitecture& arch) {
    for (auto& v : arch.nodes)
        out << "node " << v.id << " role=" << role_name(v.role) << " region=" << region_name(v.region) << " logical=" << v.logical << '\n';
    for (auto& e : arch.edges) out << "edge " << e.a << ' ' << e.b << " kind=" << kind_name(e.kind) << '\n';
}

inline void write_resource_table(std::ostream& out, const std::vector<ResourceRow>& rows) {
    std::vector<std::vector<std::string>> cells{{"n", "scheme", "qubits", "couplers", "parts", "source", "note"}};
    for (auto& r : rows)
        cells.push_back({std::to_string(r.n), r.scheme, std::to_string(r.qubits), r.couplers ? std::to_string(*r.couplers) : "-",
                         std::to_string(r.parts), r.source, r.note});
    std::vector<std::size_t> width(cells.front().size(), 0);
    for (auto& row : cells)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    for (auto& row : cells) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) line += "  ";
            line += row[i];
            if (i + 1 < row.size()) line += std::string(width[i] - row[i].size(), ' ');
        }
        out << line << '\n';
    }
}

inline void write_resource_csv(std::ostream& out, const std::vector<ResourceRow>& rows) {
    out << "n,scheme,qubits,couplers,parts,source,note\n";
    for (auto& r : rows) {
        std::string note = r.note;
        if (note.find(',') != std::string::npos || note.find('"') != std::string::npos) {
            std::string q = "\"";
            for (char ch : note) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            note = q + "\"";
        }
        out << r.n << ',' << r.scheme << ',' << r.qubits << ',' << (r.couplers ? std::to_string(*r.couplers) : "") << ',' << r.parts << ','
            << r.source << ',' << note << '\n';
    }
}

}  // namespace bent
