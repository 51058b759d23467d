#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "condition.hpp"
#include "ising.hpp"
#include "truth_table.hpp"

namespace bent {

// Dense control x problem coefficient block. rows/cols hold 1-based spin indices.
struct Block {
    std::vector<int> rows;
    std::vector<int> cols;
    std::vector<long long> coef;  // row-major, rows.size() x cols.size()

    long long at(std::size_t r, std::size_t c) const { return coef[r * cols.size() + c]; }
    long long& at(std::size_t r, std::size_t c) { return coef[r * cols.size() + c]; }

    friend bool operator==(const Block&, const Block&) = default;
};

inline Block block_from_model(const IsingModel& m) {
    if (!m.fields().empty() || m.offset() != 0)
        throw std::invalid_argument("model is not a pure control-problem bilinear form");
    Block b;
    for (auto s : m.spins()) {
        if (s.role == SpinRole::problem) b.rows.push_back(s.index);
        else if (s.role == SpinRole::control) b.cols.push_back(s.index);
        else throw std::invalid_argument("physical spin " + s.str() + " in a logical model");
    }
    b.coef.assign(b.rows.size() * b.cols.size(), 0);
    std::map<int, std::size_t> ri, ci;
    for (std::size_t i = 0; i < b.rows.size(); ++i) ri[b.rows[i]] = i;
    for (std::size_t i = 0; i < b.cols.size(); ++i) ci[b.cols[i]] = i;
    for (auto& [pr, v] : m.couplings()) {
        auto [a, c] = pr;
        if (a.role == c.role) throw std::invalid_argument("coupling " + a.str() + "-" + c.str() + " is not control-problem");
        if (a.role == SpinRole::control) std::swap(a, c);
        b.at(ri[a.index], ci[c.index]) = v;
    }
    return b;
}

inline IsingModel block_to_model(const Block& b) {
    IsingModel m;
    for (int r : b.rows) m.add_spin(SpinId::p(r));
    for (int c : b.cols) m.add_spin(SpinId::c(c));
    for (std::size_t i = 0; i < b.rows.size(); ++i)
        for (std::size_t j = 0; j < b.cols.size(); ++j)
            if (b.at(i, j)) m.add_coupling(SpinId::c(b.cols[j]), SpinId::p(b.rows[i]), b.at(i, j));
    return m;
}

// eliminated = sign * survivor
struct Relation {
    int eliminated = 0;
    int survivor = 0;
    int sign = 1;

    std::string str() const {
        return "c" + std::to_string(eliminated) + (sign > 0 ? "=+c" : "=-c") + std::to_string(survivor);
    }
    friend bool operator==(const Relation&, const Relation&) = default;
};

struct SplitResult {
    std::vector<Relation> relations;
    std::vector<Block> parts;
};

// Pairs inside each group of four: stride 2 gives (k0,k2),(k1,k3); stride 1 gives (k0,k1),(k2,k3).
inline SplitResult split_block(const Block& b, const ConditionVector& cond, int stride) {
    const std::size_t k = b.cols.size();
    if (k % 4 != 0 || cond.groups() != k / 4)
        throw std::invalid_argument("condition " + cond.str() + " has length " + std::to_string(cond.groups()) +
                                    " but the model has " + std::to_string(k) + " controls (needs " +
                                    std::to_string(k / 4) + " groups of four)");
    if (stride != 1 && stride != 2) throw std::invalid_argument("pair stride must be 1 or 2");
    const std::size_t R = b.rows.size();
    SplitResult out;
    std::vector<int> surv_cols;
    std::vector<std::vector<long long>> surv_vals;
    for (std::size_t g = 0; g < k / 4; ++g) {
        auto [s1, s2] = cond.pair_signs(g);
        std::size_t base = 4 * g;
        std::pair<std::size_t, std::size_t> pairs[2] = {
            stride == 2 ? std::pair{base, base + 2} : std::pair{base, base + 1},
            stride == 2 ? std::pair{base + 1, base + 3} : std::pair{base + 2, base + 3}};
        int signs[2] = {s1, s2};
        for (int t = 0; t < 2; ++t) {
            auto [p, q] = pairs[t];
            out.relations.push_back({b.cols[q], b.cols[p], signs[t]});
            std::vector<long long> col(R);
            for (std::size_t r = 0; r < R; ++r) col[r] = b.at(r, p) + signs[t] * b.at(r, q);
            surv_cols.push_back(b.cols[p]);
            surv_vals.push_back(std::move(col));
        }
    }

    // connected components of the survivor bipartite graph
    const std::size_t S = surv_cols.size();
    std::vector<std::size_t> parent(R + S);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t r = 0; r < R; ++r)
            if (surv_vals[s][r]) parent[find(R + s)] = find(r);

    std::map<std::size_t, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> comps;
    for (std::size_t r = 0; r < R; ++r) comps[find(r)].first.push_back(r);
    for (std::size_t s = 0; s < S; ++s) comps[find(R + s)].second.push_back(s);

    for (auto& [root, members] : comps) {
        auto& [rs, ss] = members;
        std::sort(ss.begin(), ss.end(), [&](std::size_t a, std::size_t c) { return surv_cols[a] < surv_cols[c]; });
        Block part;
        for (auto r : rs) part.rows.push_back(b.rows[r]);
        for (auto s : ss) part.cols.push_back(surv_cols[s]);
        part.coef.assign(rs.size() * ss.size(), 0);
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < ss.size(); ++j) part.at(i, j) = surv_vals[ss[j]][rs[i]];
        out.parts.push_back(std::move(part));
    }
    std::stable_sort(out.parts.begin(), out.parts.end(), [](const Block& a, const Block& c) {
        if (a.rows.empty() != c.rows.empty()) return !a.rows.empty();
        if (a.rows.empty()) return a.cols.front() < c.cols.front();
        return a.rows.front() < c.rows.front();
    });
    return out;
}

// Row groups whose coefficient rows agree up to sign; sign is relative to the group's first row.
struct RowGroup {
    std::vector<std::size_t> members;
    std::vector<int> signs;
};

inline std::vector<RowGroup> row_groups(const Block& b) {
    std::vector<RowGroup> out;
    std::map<std::vector<long long>, std::size_t> seen;
    const std::size_t k = b.cols.size();
    for (std::size_t r = 0; r < b.rows.size(); ++r) {
        std::vector<long long> row(b.coef.begin() + r * k, b.coef.begin() + (r + 1) * k);
        int sign = 1;
        for (auto v : row)
            if (v) {
                sign = v > 0 ? 1 : -1;
                break;
            }
        for (auto& v : row) v *= sign;
        auto [it, fresh] = seen.emplace(row, out.size());
        if (fresh) out.push_back({});
        out[it->second].members.push_back(r);
        out[it->second].signs.push_back(sign);
    }
    for (auto& g : out) {
        int s0 = g.signs.front();
        for (auto& s : g.signs) s *= s0;
    }
    return out;
}

inline bool is_power_of_four(std::size_t k) { return k && (k & (k - 1)) == 0 && (std::countr_zero(k) % 2 == 0); }

// Rows fall into k equal groups of identical-up-to-sign rows whose representatives form a
// k x k orthogonal sign matrix, with k a power of four.
inline bool hadamard_block(const Block& b) {
    const std::size_t k = b.cols.size(), R = b.rows.size();
    if (k == 0 || R == 0 || !is_power_of_four(k) || R % k != 0) return false;
    const long long mag = b.coef.front() < 0 ? -b.coef.front() : b.coef.front();
    if (mag == 0) return false;
    for (auto v : b.coef)
        if (v != mag && v != -mag) return false;
    auto groups = row_groups(b);
    if (groups.size() != k) return false;
    for (auto& g : groups)
        if (g.members.size() != R / k) return false;
    for (std::size_t c1 = 0; c1 < k; ++c1)
        for (std::size_t c2 = c1 + 1; c2 < k; ++c2) {
            long long dot = 0;
            for (auto& g : groups) dot += b.at(g.members[0], c1) * b.at(g.members[0], c2);
            if (dot != 0) return false;
        }
    return true;
}

struct PlanNode {
    struct Case {
        ConditionVector cond;
        std::vector<Relation> relations;
        std::vector<PlanNode> parts;
    };

    std::string path;
    Block block;
    std::vector<Case> cases;

    bool is_star() const { return block.cols.size() == 1 && !block.rows.empty(); }
    bool terminal() const { return cases.empty(); }
};

struct ReductionPlan {
    int n = 0;
    std::vector<ConditionVector> levels;  // levels[0] applies to the full model
    std::vector<Relation> relations;
    std::vector<PlanNode> sub_models;

    std::vector<IsingModel> models() const {
        std::vector<IsingModel> out;
        for (auto& s : sub_models) out.push_back(block_to_model(s.block));
        return out;
    }
};

inline int model_vars(const IsingModel& m) {
    auto probs = m.spins_with_role(SpinRole::problem);
    int n = 0;
    while ((std::size_t{1} << n) < probs.size()) ++n;
    return n;
}

inline ReductionPlan split(const Block& full, int n, const std::vector<ConditionVector>& levels) {
    if (levels.empty()) throw std::invalid_argument("split needs a condition");
    if (full.cols.size() % 4 != 0 || levels[0].groups() != full.cols.size() / 4)
        throw std::invalid_argument("condition " + levels[0].str() + " has length " + std::to_string(levels[0].groups()) +
                                    ", expected " + std::to_string(full.cols.size() / 4));
    ReductionPlan plan;
    plan.n = n;
    plan.levels = levels;
    auto res = split_block(full, levels[0], 2);
    plan.relations = std::move(res.relations);
    for (std::size_t i = 0; i < res.parts.size(); ++i)
        plan.sub_models.push_back({"s" + std::to_string(i), std::move(res.parts[i]), {}});
    return plan;
}

inline ReductionPlan split(const IsingModel& model, const std::vector<ConditionVector>& levels) {
    return split(block_from_model(model), model_vars(model), levels);
}

inline ReductionPlan split(const IsingModel& model, const ConditionVector& cond) {
    return split(model, std::vector<ConditionVector>{cond});
}

// Candidate sub-level conditions are enumerated up to this many groups; deeper levels need an explicit vector.
inline constexpr std::size_t max_enumerated_groups = 4;

namespace detail {

inline bool expand(PlanNode& node, const std::vector<ConditionVector>& levels, std::size_t depth,
                   std::vector<std::string>* failures) {
    auto fail = [&](const std::string& why) {
        if (failures) failures->push_back(node.path + ": " + why);
        return false;
    };
    node.cases.clear();
    if (!hadamard_block(node.block)) return fail("no symmetric row/column structure");
    const std::size_t k = node.block.cols.size();
    if (k == 1) return true;
    std::vector<ConditionVector> cands;
    if (depth < levels.size()) {
        cands.push_back(levels[depth]);
    } else if (k / 4 <= max_enumerated_groups) {
        for (auto f : {Family::A, Family::B})
            for (auto& c : ConditionVector::all(f, k / 4)) cands.push_back(c);
    } else {
        return fail("level with " + std::to_string(k) + " controls needs an explicit condition");
    }
    for (auto& cand : cands) {
        if (cand.groups() * 4 != k) return fail("condition " + cand.str() + " does not fit " + std::to_string(k) + " controls");
        auto res = split_block(node.block, cand, 1);
        PlanNode::Case cs{cand, std::move(res.relations), {}};
        bool ok = true;
        for (std::size_t i = 0; i < res.parts.size() && ok; ++i) {
            PlanNode child{node.path + "/" + cand.str() + "." + std::to_string(i), std::move(res.parts[i]), {}};
            ok = expand(child, levels, depth + 1, nullptr);
            cs.parts.push_back(std::move(child));
        }
        if (ok) node.cases.push_back(std::move(cs));
    }
    if (node.cases.empty()) return fail("no symmetric sub-case split");
    return true;
}

}  // namespace detail

class ReductionError : public std::runtime_error {
public:
    explicit ReductionError(std::vector<std::string> failures)
        : std::runtime_error(join(failures)), failures_(std::move(failures)) {}
    const std::vector<std::string>& failures() const { return failures_; }

private:
    static std::string join(const std::vector<std::string>& f) {
        std::string s = "no symmetric split for";
        for (auto& x : f) s += " [" + x + "]";
        return s;
    }
    std::vector<std::string> failures_;
};

inline ReductionPlan reduce_recursive(const ReductionPlan& plan) {
    ReductionPlan out = plan;
    std::vector<std::string> failures;
    for (auto& node : out.sub_models) detail::expand(node, out.levels, 1, &failures);
    if (!failures.empty()) throw ReductionError(failures);
    return out;
}

inline bool check_symmetric_structure(const ReductionPlan& plan) {
    for (auto node : plan.sub_models)
        if (!detail::expand(node, plan.levels, 1, nullptr)) return false;
    return !plan.sub_models.empty();
}

inline std::vector<ConditionVector> valid_conditions(int n, Family f) {
    if (n % 2 != 0 || n < 2) throw std::invalid_argument("valid_conditions needs even n >= 2, got n=" + std::to_string(n));
    auto lit = [](std::initializer_list<const char*> l) {
        std::vector<ConditionVector> v;
        for (auto s : l) v.push_back(ConditionVector::parse(s));
        return v;
    };
    if (n == 2) return f == Family::A ? lit({"A:0", "A:1"}) : std::vector<ConditionVector>{};
    if (n == 4)
        return f == Family::A ? lit({"A:0000", "A:0011", "A:0101", "A:0110", "A:1001", "A:1010", "A:1100", "A:1111"})
                              : lit({"B:0011", "B:0101", "B:0110", "B:1001", "B:1010", "B:1100"});
    if (n == 6) {
        auto full = block_from_model(build_full_model(6));
        std::vector<ConditionVector> out;
        for (auto& c : ConditionVector::all(f, condition_length(6)))
            if (check_symmetric_structure(split(full, 6, {c}))) out.push_back(c);
        return out;
    }
    throw std::invalid_argument("valid_conditions: n=" + std::to_string(n) + " would need 2^" +
                                std::to_string(condition_length(n)) + " candidates; pass explicit conditions instead");
}

struct SymmetryMap {
    std::vector<std::pair<int, int>> pairs;  // 1-based problem indices
    ConditionVector source;
    ConditionVector target;

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(pairs[i].first) + "-" + std::to_string(pairs[i].second);
        }
        return s;
    }

    static std::vector<std::pair<int, int>> parse_pairs(const std::string& s) {
        std::vector<std::pair<int, int>> out;
        std::size_t start = 0;
        while (start < s.size()) {
            auto comma = s.find(',', start);
            auto item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            auto dash = item.find('-');
            if (dash == std::string::npos) throw std::invalid_argument("bad pair '" + item + "' (expected i-j)");
            try {
                out.push_back({std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1))});
            } catch (const std::exception&) {
                throw std::invalid_argument("bad pair '" + item + "' (expected i-j)");
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return out;
    }
};

inline TruthTable symmetry_map(const TruthTable& tt, const SymmetryMap& map) {
    std::set<int> used;
    TruthTable out = tt;
    for (auto [i, j] : map.pairs) {
        for (int v : {i, j})
            if (v < 1 || static_cast<std::size_t>(v) > tt.size())
                throw std::out_of_range("symmetry pair index " + std::to_string(v) + " outside [1, " + std::to_string(tt.size()) + "]");
        if (i == j || !used.insert(i).second || !used.insert(j).second)
            throw std::invalid_argument("symmetry pairs must be disjoint");
        out.set(i - 1, tt[j - 1]);
        out.set(j - 1, tt[i - 1]);
    }
    return out;
}

// Involution x -> x ^ (parity(l & x) ? u : 0); l == 0 means a plain translation by u.
inline std::vector<std::pair<int, int>> affine_swap_pairs(int n, std::uint32_t l, std::uint32_t u) {
    std::vector<std::pair<int, int>> out;
    const std::uint32_t N = 1u << n;
    for (std::uint32_t x = 0; x < N; ++x) {
        std::uint32_t y = (l == 0 || parity(l & x)) ? x ^ u : x;
        if (y > x) out.push_back({static_cast<int>(x + 1), static_cast<int>(y + 1)});
    }
    return out;
}

namespace detail {

inline void write_node(std::ostream& out, const PlanNode& node, int indent) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    out << pad << "node " << node.path << " rows=";
    for (std::size_t i = 0; i < node.block.rows.size(); ++i) out << (i ? "," : "") << "p" << node.block.rows[i];
    out << " controls=";
    for (std::size_t i = 0; i < node.block.cols.size(); ++i) out << (i ? "," : "") << "c" << node.block.cols[i];
    out << '\n';
    if (node.terminal()) {
        std::ostringstream ms;
        write_model(ms, block_to_model(node.block));
        std::istringstream ls(ms.str());
        std::string line;
        while (std::getline(ls, line)) out << pad << "  " << line << '\n';
        return;
    }
    for (auto& cs : node.cases) {
        out << pad << "  case " << cs.cond.str();
        for (auto& r : cs.relations) out << ' ' << r.str();
        out << '\n';
        for (auto& p : cs.parts) write_node(out, p, indent + 4);
    }
}

}  // namespace detail

inline void write_plan(std::ostream& out, const ReductionPlan& plan) {
    out << "plan n=" << plan.n << " condition=" << condition_path_str(plan.levels) << " parts=" << plan.sub_models.size() << '\n';
    out << "relations";
    for (auto& r : plan.relations) out << ' ' << r.str();
    out << '\n';
    for (auto& node : plan.sub_models) detail::write_node(out, node, 0);
}

}  // namespace bent
