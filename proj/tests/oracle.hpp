#pragma once

// Slow reference implementations used only by the tests.

#include <bent/bent.hpp>

#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace oracle {

inline int dot(std::uint64_t a, std::uint64_t x) { return __builtin_popcountll(a & x) & 1; }

// W(a) = sum_x (-1)^(f(x) + a.x), summed term by term.
inline std::vector<long long> direct_wht(const std::vector<int>& f) {
    const std::size_t N = f.size();
    std::vector<long long> w(N, 0);
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t x = 0; x < N; ++x) w[a] += ((f[x] ^ dot(a, x)) ? -1 : 1);
    return w;
}

inline std::vector<int> bits_of(const bent::TruthTable& t) {
    std::vector<int> f(t.size());
    for (std::size_t x = 0; x < t.size(); ++x) f[x] = t[x];
    return f;
}

// Minimum Hamming distance to the 2^(n+1) affine functions.
inline long long affine_distance(const std::vector<int>& f) {
    const std::size_t N = f.size();
    long long best = static_cast<long long>(N);
    for (std::size_t a = 0; a < N; ++a)
        for (int c = 0; c < 2; ++c) {
            long long d = 0;
            for (std::size_t x = 0; x < N; ++x) d += f[x] != (dot(a, x) ^ c);
            best = std::min(best, d);
        }
    return best;
}

inline bool flat(const std::vector<long long>& w, int n) {
    for (auto v : w)
        if (v != (1LL << (n / 2)) && v != -(1LL << (n / 2))) return false;
    return true;
}

// H = sum_a c_a sum_x (-1)^(a.x) p_x, written out from the definition.
inline long long full_energy(const std::vector<int>& p, const std::vector<int>& c) {
    long long e = 0;
    for (std::size_t a = 0; a < c.size(); ++a)
        for (std::size_t x = 0; x < p.size(); ++x) e += c[a] * (dot(a, x) ? -1 : 1) * p[x];
    return e;
}

// Control a sits at index a (0-based). Relation signs of the two pairs of group g, read
// straight from the bit meanings: A '0' (opposite, equal), A '1' (equal, opposite),
// B '0' (equal, equal), B '1' (opposite, opposite).
inline bool controls_satisfy(const bent::ConditionVector& cond, const std::vector<int>& c) {
    for (std::size_t g = 0; g < cond.groups(); ++g) {
        const bool one = cond.bits[g] == '1';
        int s1, s2;
        if (cond.family == bent::Family::A) {
            s1 = one ? 1 : -1;
            s2 = one ? -1 : 1;
        } else {
            s1 = s2 = one ? -1 : 1;
        }
        const std::size_t i = 4 * g;
        if (c[i + 2] != s1 * c[i] || c[i + 3] != s2 * c[i + 1]) return false;
    }
    return true;
}

// Bent functions whose optimal controls -sign W(a) obey the condition.
inline std::set<bent::TruthTable> condition_solutions(int n, const bent::ConditionVector& cond) {
    std::set<bent::TruthTable> out;
    for (auto& t : bent::enumerate_bent(n)) {
        auto w = direct_wht(bits_of(t));
        std::vector<int> c(w.size());
        for (std::size_t a = 0; a < w.size(); ++a) c[a] = w[a] > 0 ? -1 : 1;
        if (controls_satisfy(cond, c)) out.insert(t);
    }
    return out;
}

// Every assignment of a small model, checked one by one.
inline std::pair<long long, std::vector<bent::SpinAssignment>> brute_ground(const bent::IsingModel& m) {
    std::vector<bent::SpinId> ids(m.spins().begin(), m.spins().end());
    long long best = 0;
    std::vector<bent::SpinAssignment> gs;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << ids.size()); ++code) {
        bent::SpinAssignment s;
        for (std::size_t i = 0; i < ids.size(); ++i) s.set(ids[i], (code >> i) & 1 ? -1 : 1);
        long long e = bent::energy(m, s);
        if (gs.empty() || e < best) {
            best = e;
            gs.clear();
        }
        if (e == best) gs.push_back(s);
    }
    return {best, gs};
}

inline bent::TruthTable random_table(int n, std::mt19937_64& rng) {
    bent::TruthTable t(n);
    for (std::size_t x = 0; x < t.size(); ++x) t.set(x, static_cast<int>(rng() & 1));
    return t;
}

}  // namespace oracle
