#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "condition.hpp"
#include "ising.hpp"
#include "reduction.hpp"
#include "truth_table.hpp"

namespace bent {

inline constexpr int exact_spin_limit = 28;
inline constexpr std::uint64_t default_seed = 20190923;
inline constexpr const char* rng_name = "mt19937_64 seeded via splitmix64";

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

class SolverRefusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adjacency form of an IsingModel; spin i is the i-th SpinId in model order.
struct CompiledModel {
    std::vector<SpinId> ids;
    std::vector<long long> h;
    std::vector<std::size_t> start;
    std::vector<std::size_t> nbr;
    std::vector<long long> w;
    long long offset = 0;

    explicit CompiledModel(const IsingModel& m) : ids(m.spins().begin(), m.spins().end()), offset(m.offset()) {
        std::map<SpinId, std::size_t> index;
        for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
        h.assign(ids.size(), 0);
        for (auto& [id, v] : m.fields()) h[index[id]] = v;
        std::vector<std::vector<std::pair<std::size_t, long long>>> adj(ids.size());
        for (auto& [pr, v] : m.couplings()) {
            auto a = index[pr.first], b = index[pr.second];
            adj[a].push_back({b, v});
            adj[b].push_back({a, v});
        }
        start.push_back(0);
        for (auto& row : adj) {
            for (auto [j, v] : row) {
                nbr.push_back(j);
                w.push_back(v);
            }
            start.push_back(nbr.size());
        }
    }

    std::size_t size() const { return ids.size(); }

    long long local(const std::vector<std::int8_t>& s, std::size_t i) const {
        long long f = h[i];
        for (auto e = start[i]; e < start[i + 1]; ++e) f += w[e] * s[nbr[e]];
        return f;
    }

    long long energy(const std::vector<std::int8_t>& s) const {
        long long e = offset;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            e += h[i] * s[i];
            for (auto k = start[i]; k < start[i + 1]; ++k)
                if (nbr[k] > i) e += w[k] * s[i] * s[nbr[k]];
        }
        return e;
    }

    SpinAssignment assignment(const std::vector<std::int8_t>& s) const {
        SpinAssignment a;
        for (std::size_t i = 0; i < ids.size(); ++i) a.values[ids[i]] = s[i];
        return a;
    }
};

struct AnnealSchedule {
    long long sweeps = 10000;
    double beta_start = 0.1;
    double beta_end = 5.0;
    long long restarts = 100;
    std::uint64_t seed = default_seed;

    void validate() const {
        if (sweeps < 1 || restarts < 1) throw std::invalid_argument("sweeps and restarts must be >= 1");
        if (!(beta_start > 0) || !(beta_end > 0) || !(beta_start < beta_end))
            throw std::invalid_argument("need 0 < beta_start < beta_end");
    }

    std::string str() const {
        std::ostringstream s;
        s << "sweeps=" << sweeps << " beta_start=" << beta_start << " beta_end=" << beta_end << " restarts=" << restarts
          << " seed=" << seed;
        return s.str();
    }
};

struct Sample {
    SpinAssignment state;
    long long energy = 0;
    long long hits = 0;
};

struct SolveResult {
    std::string mode;
    long long ground_energy = 0;
    std::vector<SpinAssignment> ground_states;  // canonical order
    std::vector<Sample> samples;                // anneal mode: every distinct best-of-restart state
    bool truncated = false;
    std::optional<AnnealSchedule> schedule;
};

// Gray-code scan over all 2^N states; keeps at most max_states minimizers.
inline SolveResult solve_exact(const IsingModel& model, std::size_t max_states = std::size_t{1} << 20) {
    CompiledModel cm(model);
    const std::size_t N = cm.size();
    if (N > static_cast<std::size_t>(exact_spin_limit))
        throw SolverRefusal("exact solver refuses " + std::to_string(N) + " spins (limit is " +
                            std::to_string(exact_spin_limit) + ")");
    std::vector<std::int8_t> s(N, 1);
    std::vector<long long> local(N);
    for (std::size_t i = 0; i < N; ++i) local[i] = cm.local(s, i);
    long long e = cm.energy(s), best = e;
    std::uint32_t mask = 0;
    std::vector<std::uint32_t> found{0};
    bool truncated = false;
    const std::uint64_t total = std::uint64_t{1} << N;
    for (std::uint64_t step = 1; step < total; ++step) {
        auto j = static_cast<std::size_t>(std::countr_zero(step));
        e -= 2 * s[j] * local[j];
        s[j] = static_cast<std::int8_t>(-s[j]);
        mask ^= 1u << j;
        for (auto k = cm.start[j]; k < cm.start[j + 1]; ++k) local[cm.nbr[k]] += 2 * cm.w[k] * s[j];
        if (e < best) {
            best = e;
            found.clear();
            found.push_back(mask);
            truncated = false;
        } else if (e == best) {
            if (found.size() < max_states) found.push_back(mask);
            else truncated = true;
        }
    }
    SolveResult r;
    r.mode = "exact";
    r.ground_energy = best;
    r.truncated = truncated;
    for (auto m : found) {
        std::vector<std::int8_t> st(N);
        for (std::size_t i = 0; i < N; ++i) st[i] = (m >> i) & 1 ? -1 : 1;
        r.ground_states.push_back(cm.assignment(st));
    }
    std::sort(r.ground_states.begin(), r.ground_states.end());
    return r;
}

inline std::uint64_t restart_seed(std::uint64_t master, long long r) {
    return splitmix64(master + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(r + 1));
}

// Single-spin Metropolis, beta ramped linearly per sweep; each restart keeps its best-seen state.
inline SolveResult solve_anneal(const IsingModel& model, const AnnealSchedule& sched) {
    sched.validate();
    CompiledModel cm(model);
    const std::size_t N = cm.size();
    long long max_local = 0;
    for (std::size_t i = 0; i < N; ++i) {
        long long m = std::abs(cm.h[i]);
        for (auto k = cm.start[i]; k < cm.start[i + 1]; ++k) m += std::abs(cm.w[k]);
        max_local = std::max(max_local, m);
    }
    // Acceptance thresholds per uphill step, advanced multiplicatively from sweep to sweep.
    const bool use_table = max_local <= (1 << 20);
    const double dbeta = sched.sweeps == 1 ? 0.0 : (sched.beta_end - sched.beta_start) / static_cast<double>(sched.sweeps - 1);
    std::vector<double> prob(use_table ? static_cast<std::size_t>(max_local) + 1 : 0);
    std::vector<double> ratio(prob.size(), -1.0);
    std::vector<std::uint64_t> thresh(prob.size());
    std::vector<long long> stamp(prob.size(), -2);

    std::map<std::vector<std::int8_t>, std::pair<long long, long long>> pool;
    std::vector<std::int8_t> s(N), best_s(N);
    std::vector<long long> local(N);
    for (long long r = 0; r < sched.restarts; ++r) {
        std::mt19937_64 rng(restart_seed(sched.seed, r));
        for (auto& v : s) v = (rng() >> 63) ? 1 : -1;
        for (std::size_t i = 0; i < N; ++i) local[i] = cm.local(s, i);
        long long e = cm.energy(s), best = e;
        best_s = s;
        const long long stamp_base = r * sched.sweeps;
        for (long long sw = 0; sw < sched.sweeps; ++sw) {
            const double beta = sched.sweeps == 1 ? sched.beta_end
                                                  : sched.beta_start + (sched.beta_end - sched.beta_start) *
                                                                           static_cast<double>(sw) / static_cast<double>(sched.sweeps - 1);
            for (std::size_t i = 0; i < N; ++i) {
                const long long half = -s[i] * local[i];  // delta E = 2 * half
                bool accept = half <= 0;
                if (!accept) {
                    if (use_table) {
                        auto idx = static_cast<std::size_t>(half);
                        if (stamp[idx] != stamp_base + sw) {
                            if (stamp[idx] == stamp_base + sw - 1 && sw > 0) {
                                if (ratio[idx] < 0) ratio[idx] = std::exp(-dbeta * 2.0 * static_cast<double>(half));
                                prob[idx] *= ratio[idx];
                            } else {
                                prob[idx] = std::exp(-beta * 2.0 * static_cast<double>(half));
                            }
                            stamp[idx] = stamp_base + sw;
                            const double scaled = std::ldexp(prob[idx], 64);
                            thresh[idx] = scaled >= 18446744073709551615.0 ? ~std::uint64_t{0} : static_cast<std::uint64_t>(scaled);
                        }
                        accept = rng() < thresh[idx];
                    } else {
                        double u = std::ldexp(static_cast<double>(rng() >> 11), -53);
                        accept = u < std::exp(-beta * 2.0 * static_cast<double>(half));
                    }
                }
                if (accept) {
                    e += 2 * half;
                    s[i] = static_cast<std::int8_t>(-s[i]);
                    for (auto k = cm.start[i]; k < cm.start[i + 1]; ++k) local[cm.nbr[k]] += 2 * cm.w[k] * s[i];
                    if (e < best) {
                        best = e;
                        best_s = s;
                    }
                }
            }
        }
        auto [it, fresh] = pool.try_emplace(best_s, best, 0);
        ++it->second.second;
    }
    SolveResult res;
    res.mode = "anneal";
    res.schedule = sched;
    res.ground_energy = pool.empty() ? cm.offset : pool.begin()->second.first;
    for (auto& [st, eh] : pool) res.ground_energy = std::min(res.ground_energy, eh.first);
    for (auto& [st, eh] : pool) {
        res.samples.push_back({cm.assignment(st), eh.first, eh.second});
        if (eh.first == res.ground_energy) res.ground_states.push_back(cm.assignment(st));
    }
    std::sort(res.ground_states.begin(), res.ground_states.end());
    std::sort(res.samples.begin(), res.samples.end(), [](const Sample& a, const Sample& b) {
        return a.energy != b.energy ? a.energy < b.energy : a.state < b.state;
    });
    return res;
}

inline TruthTable decode_problem(const SpinAssignment& s, int n) {
    TruthTable tt(n);
    for (std::size_t x = 0; x < tt.size(); ++x) tt.set(x, s.at(SpinId::p(static_cast<int>(x + 1))) < 0);
    return tt;
}

inline TruthTable decode(const SpinAssignment& s, const ReductionPlan& plan) {
    for (auto& node : plan.sub_models)
        for (int r : node.block.rows) s.at(SpinId::p(r));
    return decode_problem(s, plan.n);
}

struct CatalogEntry {
    WalshSpectrum spectrum;
    std::vector<std::string> provenance;
};

struct BentCatalog {
    int n = 0;
    std::map<TruthTable, CatalogEntry> entries;

    std::size_t size() const { return entries.size(); }
    bool contains(const TruthTable& t) const { return entries.count(t) != 0; }

    // Only bent functions are admitted.
    bool insert(const TruthTable& t, const std::string& provenance) {
        if (t.n() != n) throw std::invalid_argument("catalog for n=" + std::to_string(n) + " given a table with n=" + std::to_string(t.n()));
        auto it = entries.find(t);
        if (it != entries.end()) {
            auto& p = it->second.provenance;
            if (std::find(p.begin(), p.end(), provenance) == p.end()) p.push_back(provenance);
            return false;
        }
        auto w = walsh_transform(t);
        if (!is_bent_spectrum(w)) throw std::invalid_argument("refusing to catalog non-bent function " + t.str());
        entries.emplace(t, CatalogEntry{std::move(w), {provenance}});
        return true;
    }

    std::vector<TruthTable> tables() const {
        std::vector<TruthTable> out;
        for (auto& [t, e] : entries) out.push_back(t);
        return out;
    }
};

inline BentCatalog merge(const std::vector<BentCatalog>& catalogs) {
    if (catalogs.empty()) throw std::invalid_argument("merge needs at least one catalog");
    BentCatalog out{catalogs.front().n, {}};
    for (auto& c : catalogs) {
        if (c.n != out.n) throw std::invalid_argument("cannot merge catalogs with n=" + std::to_string(out.n) + " and n=" + std::to_string(c.n));
        for (auto& [t, e] : c.entries) {
            auto [it, fresh] = out.entries.try_emplace(t, e);
            if (!fresh)
                for (auto& p : e.provenance) it->second.provenance.push_back(p);
        }
    }
    for (auto& [t, e] : out.entries) {
        std::sort(e.provenance.begin(), e.provenance.end());
        e.provenance.erase(std::unique(e.provenance.begin(), e.provenance.end()), e.provenance.end());
    }
    return out;
}

// Condition part of a provenance string ("A:1111@s0:A:1,s1:A:0" -> "A:1111").
inline std::string provenance_condition(const std::string& p) { return p.substr(0, p.find('@')); }

inline void write_catalog(std::ostream& out, const BentCatalog& c) {
    out << "n=" << c.n << " count=" << c.size() << '\n';
    for (auto& [t, e] : c.entries) {
        std::set<std::string> conds;
        for (auto& p : e.provenance) conds.insert(provenance_condition(p));
        std::string cs;
        for (auto& x : conds) cs += (cs.empty() ? "" : ",") + x;
        out << t.str() << ' ' << (cs.empty() ? "-" : cs) << ' ' << e.spectrum.min() << ' ' << e.spectrum.max() << '\n';
    }
}

inline BentCatalog read_catalog(std::istream& in) {
    BentCatalog c;
    std::string raw;
    int line = 0;
    bool header = false;
    std::size_t count = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto sv = trim(raw);
        if (sv.empty() || sv.front() == '#') continue;
        std::istringstream ls{std::string(sv)};
        if (!header) {
            std::string a, b;
            if (!(ls >> a >> b) || a.rfind("n=", 0) != 0 || b.rfind("count=", 0) != 0)
                throw ParseError(line, "expected 'n=<k> count=<m>' header");
            try {
                c.n = std::stoi(a.substr(2));
                count = std::stoul(b.substr(6));
            } catch (const std::exception&) {
                throw ParseError(line, "bad catalog header");
            }
            header = true;
            continue;
        }
        std::string bits, conds;
        long long lo = 0, hi = 0;
        if (!(ls >> bits >> conds >> lo >> hi)) throw ParseError(line, "expected '<bits> <condition> <min> <max>'");
        try {
            auto t = TruthTable::from_string(bits);
            std::size_t start = 0;
            bool first = true;
            while (start <= conds.size()) {
                auto comma = conds.find(',', start);
                auto one = conds.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
                if (first || !one.empty()) c.insert(t, one == "-" ? "" : one);
                first = false;
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            auto& e = c.entries.at(t);
            if (e.spectrum.min() != lo || e.spectrum.max() != hi) throw std::invalid_argument("spectrum bounds disagree with the table");
        } catch (const std::invalid_argument& e) {
            throw ParseError(line, e.what());
        }
    }
    if (!header) throw ParseError(line, "missing catalog header");
    if (count != c.size()) throw ParseError(line, "header count " + std::to_string(count) + " but " + std::to_string(c.size()) + " entries");
    return c;
}

enum class SolveMode { exact, anneal };

inline std::string mode_name(SolveMode m) { return m == SolveMode::exact ? "exact" : "anneal"; }

inline SolveMode parse_mode(const std::string& s) {
    if (s == "exact") return SolveMode::exact;
    if (s == "anneal") return SolveMode::anneal;
    throw std::invalid_argument("unknown mode '" + s + "' (expected exact or anneal)");
}

struct RunOptions {
    SolveMode mode = SolveMode::exact;
    AnnealSchedule schedule;
    std::uint64_t limit = 0;  // 0 = stream every product
};

using u128 = unsigned __int128;

inline std::string u128_str(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return s;
}

struct RunStats {
    std::size_t leaves = 0;
    u128 products = 0;         // size of the full recombination
    std::uint64_t streamed = 0;
    std::uint64_t rejected = 0;  // decoded tables removed by the Walsh filter
    long long ground_energy = 0;
    long long bound = 0;         // -2^(3n/2)
    bool limited = false;
};

struct ConditionRun {
    ReductionPlan plan;
    BentCatalog catalog;
    RunStats stats;
};

// Solved form of a plan node: leaf states, or the minimum-energy cases.
struct SolvedNode {
    const PlanNode* node = nullptr;
    long long min_energy = 0;
    std::vector<std::vector<std::int8_t>> states;  // leaf: problem spins in row order
    std::vector<std::pair<std::string, std::vector<SolvedNode>>> cases;

    u128 count() const {
        if (node->terminal()) return states.size();
        u128 total = 0;
        for (auto& [label, parts] : cases) {
            u128 p = 1;
            for (auto& s : parts) p *= s.count();
            total += p;
        }
        return total;
    }
};

inline SolvedNode solve_node(const PlanNode& node, const RunOptions& opt, const std::string& salt, std::size_t& leaves) {
    SolvedNode sn;
    sn.node = &node;
    if (node.terminal()) {
        ++leaves;
        auto model = block_to_model(node.block);
        SolveResult r;
        if (opt.mode == SolveMode::exact) {
            r = solve_exact(model);
        } else {
            auto sched = opt.schedule;
            sched.seed = splitmix64(opt.schedule.seed ^ fnv1a(salt + "|" + node.path));
            r = solve_anneal(model, sched);
        }
        sn.min_energy = r.ground_energy;
        std::set<std::vector<std::int8_t>> uniq;
        for (auto& g : r.ground_states) {
            std::vector<std::int8_t> v;
            for (int row : node.block.rows) v.push_back(static_cast<std::int8_t>(g.at(SpinId::p(row))));
            uniq.insert(v);
        }
        sn.states.assign(uniq.begin(), uniq.end());
        return sn;
    }
    bool first = true;
    for (auto& cs : node.cases) {
        std::vector<SolvedNode> parts;
        long long e = 0;
        for (auto& p : cs.parts) {
            parts.push_back(solve_node(p, opt, salt, leaves));
            e += parts.back().min_energy;
        }
        if (first || e < sn.min_energy) {
            sn.cases.clear();
            sn.min_energy = e;
            first = false;
        }
        if (e == sn.min_energy) sn.cases.push_back({node.path + ":" + cs.cond.str(), std::move(parts)});
    }
    return sn;
}

namespace detail {

using Cont = std::function<bool()>;

inline bool visit_node(const SolvedNode& sn, std::vector<std::int8_t>& spins, std::vector<std::string>& labels, const Cont& k);

inline bool visit_list(const std::vector<SolvedNode>& list, std::size_t i, std::vector<std::int8_t>& spins,
                       std::vector<std::string>& labels, const Cont& k) {
    if (i == list.size()) return k();
    return visit_node(list[i], spins, labels, [&] { return visit_list(list, i + 1, spins, labels, k); });
}

inline bool visit_node(const SolvedNode& sn, std::vector<std::int8_t>& spins, std::vector<std::string>& labels, const Cont& k) {
    if (sn.node->terminal()) {
        const auto& rows = sn.node->block.rows;
        for (auto& st : sn.states) {
            for (std::size_t i = 0; i < rows.size(); ++i) spins[static_cast<std::size_t>(rows[i] - 1)] = st[i];
            if (!k()) return false;
        }
        return true;
    }
    for (auto& [label, parts] : sn.cases) {
        labels.push_back(label);
        bool go = visit_list(parts, 0, spins, labels, k);
        labels.pop_back();
        if (!go) return false;
    }
    return true;
}

}  // namespace detail

// Streams every recombined problem-spin vector (index x holds the spin of p(x+1)); stop by returning false.
inline void for_each_solution(const std::vector<SolvedNode>& top, int n,
                              const std::function<bool(const std::vector<std::int8_t>&, const std::vector<std::string>&)>& fn) {
    std::vector<std::int8_t> spins(std::size_t{1} << n, 1);
    std::vector<std::string> labels;
    detail::visit_list(top, 0, spins, labels, [&] { return fn(spins, labels); });
}

inline TruthTable table_from_spins(const std::vector<std::int8_t>& spins, int n) {
    TruthTable t(n);
    for (std::size_t x = 0; x < spins.size(); ++x) t.set(x, spins[x] < 0);
    return t;
}

inline ConditionRun run_condition(int n, const std::vector<ConditionVector>& levels, const RunOptions& opt = {}) {
    if (opt.mode == SolveMode::anneal) opt.schedule.validate();
    ConditionRun run;
    run.plan = reduce_recursive(split(build_full_model(n), levels));
    run.catalog.n = n;
    const std::string cond = condition_path_str(levels);
    std::vector<SolvedNode> top;
    for (auto& node : run.plan.sub_models) top.push_back(solve_node(node, opt, cond, run.stats.leaves));
    run.stats.products = 1;
    for (auto& t : top) {
        run.stats.products *= t.count();
        run.stats.ground_energy += t.min_energy;
    }
    run.stats.bound = -(1LL << (3 * n / 2));
    for_each_solution(top, n, [&](const std::vector<std::int8_t>& spins, const std::vector<std::string>& labels) {
        ++run.stats.streamed;
        auto t = table_from_spins(spins, n);
        if (!is_bent(t)) {
            ++run.stats.rejected;
            return true;
        }
        std::string prov = cond;
        if (!labels.empty()) {
            prov += '@';
            for (std::size_t i = 0; i < labels.size(); ++i) prov += (i ? "," : "") + labels[i];
        }
        run.catalog.insert(t, prov);
        if (opt.limit && run.catalog.size() >= opt.limit) {
            run.stats.limited = run.stats.streamed < run.stats.products;
            return false;
        }
        return true;
    });
    return run;
}

inline ConditionRun run_condition(int n, const ConditionVector& cond, const RunOptions& opt = {}) {
    return run_condition(n, std::vector<ConditionVector>{cond}, opt);
}

// Problem-spin solution set of one node (or of one of its cases), rows in node order.
inline std::set<std::vector<std::int8_t>> node_solutions(const PlanNode& node, std::optional<std::size_t> case_index = std::nullopt) {
    PlanNode copy = node;
    if (case_index) {
        auto keep = copy.cases.at(*case_index);
        copy.cases = {keep};
    }
    std::size_t leaves = 0;
    auto sn = solve_node(copy, RunOptions{}, "", leaves);
    std::map<int, std::size_t> pos;
    for (std::size_t i = 0; i < copy.block.rows.size(); ++i) pos[copy.block.rows[i]] = i;
    const int maxrow = copy.block.rows.empty() ? 0 : copy.block.rows.back();
    std::set<std::vector<std::int8_t>> out;
    std::vector<std::int8_t> spins(static_cast<std::size_t>(maxrow), 1);
    std::vector<std::string> labels;
    detail::visit_node(sn, spins, labels, [&] {
        std::vector<std::int8_t> v;
        for (int r : copy.block.rows) v.push_back(spins[static_cast<std::size_t>(r - 1)]);
        out.insert(v);
        return true;
    });
    return out;
}

// Searches translations, then transvections x -> x ^ (l.x) u, for a swap map carrying the
// exact solution set of `source` onto that of `target`.
inline std::optional<SymmetryMap> find_symmetry_map(int n, const ConditionVector& source, const ConditionVector& target) {
    if (n != 2 && n != 4) throw std::invalid_argument("find_symmetry_map supports n in {2, 4}");
    auto a = run_condition(n, source).catalog.tables();
    auto b = run_condition(n, target).catalog.tables();
    if (a.size() != b.size()) return std::nullopt;
    std::set<TruthTable> bs(b.begin(), b.end());
    const std::uint32_t N = 1u << n;
    auto try_map = [&](std::uint32_t l, std::uint32_t u) -> std::optional<SymmetryMap> {
        SymmetryMap m{affine_swap_pairs(n, l, u), source, target};
        for (auto& t : a)
            if (!bs.count(symmetry_map(t, m))) return std::nullopt;
        return m;
    };
    if (source == target) return SymmetryMap{{}, source, target};
    for (std::uint32_t u = 1; u < N; ++u)
        if (auto m = try_map(0, u)) return m;
    for (std::uint32_t l = 1; l < N; ++l)
        for (std::uint32_t u = 1; u < N; ++u)
            if (!parity(l & u))
                if (auto m = try_map(l, u)) return m;
    return std::nullopt;
}

}  // namespace bent
