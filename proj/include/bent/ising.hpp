#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "truth_table.hpp"

namespace bent {

enum class SpinRole { problem, control, physical };

struct SpinId {
    SpinRole role = SpinRole::problem;
    int index = 0;

    static SpinId p(int i) { return {SpinRole::problem, i}; }
    static SpinId c(int i) { return {SpinRole::control, i}; }
    static SpinId q(int i) { return {SpinRole::physical, i}; }

    std::string str() const {
        const char* pre = role == SpinRole::problem ? "p" : role == SpinRole::control ? "c" : "q";
        return pre + std::to_string(index);
    }

    static SpinId parse(const std::string& s) {
        if (s.size() < 2) throw std::invalid_argument("bad spin name '" + s + "'");
        SpinRole r;
        switch (s[0]) {
            case 'p': r = SpinRole::problem; break;
            case 'c': r = SpinRole::control; break;
            case 'q': r = SpinRole::physical; break;
            default: throw std::invalid_argument("bad spin name '" + s + "'");
        }
        std::size_t pos = 0;
        int idx = 0;
        try {
            idx = std::stoi(s.substr(1), &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad spin name '" + s + "'");
        }
        if (pos != s.size() - 1 || idx < 0) throw std::invalid_argument("bad spin name '" + s + "'");
        return {r, idx};
    }

    friend auto operator<=>(const SpinId&, const SpinId&) = default;
};

using SpinPair = std::pair<SpinId, SpinId>;

inline SpinPair ordered(SpinId a, SpinId b) { return a < b ? SpinPair{a, b} : SpinPair{b, a}; }

struct SpinAssignment {
    std::map<SpinId, int> values;

    int at(SpinId id) const {
        auto it = values.find(id);
        if (it == values.end()) throw std::invalid_argument("assignment is missing spin " + id.str());
        return it->second;
    }
    void set(SpinId id, int v) {
        if (v != 1 && v != -1) throw std::invalid_argument("spin values must be +1 or -1");
        values[id] = v;
    }
    friend bool operator==(const SpinAssignment&, const SpinAssignment&) = default;
    friend auto operator<=>(const SpinAssignment& a, const SpinAssignment& b) { return a.values <=> b.values; }
};

class IsingModel {
public:
    void add_spin(SpinId id) { spins_.insert(id); }

    void add_field(SpinId id, long long v) {
        add_spin(id);
        if ((h_[id] += v) == 0) h_.erase(id);
    }

    void add_coupling(SpinId a, SpinId b, long long v) {
        if (a == b) throw std::invalid_argument("self-coupling on " + a.str());
        add_spin(a);
        add_spin(b);
        auto key = ordered(a, b);
        if ((J_[key] += v) == 0) J_.erase(key);
    }

    void add_offset(long long v) { offset_ += v; }

    const std::set<SpinId>& spins() const { return spins_; }
    const std::map<SpinId, long long>& fields() const { return h_; }
    const std::map<SpinPair, long long>& couplings() const { return J_; }
    long long offset() const { return offset_; }

    long long field(SpinId id) const {
        auto it = h_.find(id);
        return it == h_.end() ? 0 : it->second;
    }
    long long coupling(SpinId a, SpinId b) const {
        auto it = J_.find(ordered(a, b));
        return it == J_.end() ? 0 : it->second;
    }
    bool has_spin(SpinId id) const { return spins_.count(id) != 0; }

    std::vector<SpinId> spins_with_role(SpinRole r) const {
        std::vector<SpinId> out;
        for (auto s : spins_)
            if (s.role == r) out.push_back(s);
        return out;
    }

    friend bool operator==(const IsingModel&, const IsingModel&) = default;

private:
    std::set<SpinId> spins_;
    std::map<SpinId, long long> h_;
    std::map<SpinPair, long long> J_;
    long long offset_ = 0;
};

inline long long energy(const IsingModel& m, const SpinAssignment& s) {
    long long e = m.offset();
    for (auto id : m.spins()) s.at(id);
    for (auto& [id, v] : m.fields()) e += v * s.at(id);
    for (auto& [pr, v] : m.couplings()) e += v * s.at(pr.first) * s.at(pr.second);
    return e;
}

inline int parity(std::uint64_t v) { return std::popcount(v) & 1; }

inline int walsh_sign(std::uint64_t a, std::uint64_t x) { return parity(a & x) ? -1 : 1; }

// Problem spin p(x+1) carries f(x); control c(2^n+a+1) selects the sign of W(a).
inline IsingModel build_full_model(int n) {
    if (n < 2 || n > 8 || n % 2 != 0)
        throw std::invalid_argument("build_full_model needs even n in [2, 8], got n=" + std::to_string(n));
    const int N = 1 << n;
    IsingModel m;
    for (int x = 0; x < N; ++x) m.add_spin(SpinId::p(x + 1));
    for (int a = 0; a < N; ++a) m.add_spin(SpinId::c(N + a + 1));
    for (int a = 0; a < N; ++a)
        for (int x = 0; x < N; ++x) m.add_coupling(SpinId::c(N + a + 1), SpinId::p(x + 1), walsh_sign(a, x));
    return m;
}

// The problem spins of a minimizer are the function; controls are -sign(W(a)).
inline SpinAssignment full_model_assignment(const TruthTable& tt) {
    const int N = static_cast<int>(tt.size());
    auto w = walsh_transform(tt);
    SpinAssignment s;
    for (int x = 0; x < N; ++x) s.set(SpinId::p(x + 1), tt.spin(x));
    for (int a = 0; a < N; ++a) s.set(SpinId::c(N + a + 1), w.coeffs[a] > 0 ? -1 : 1);
    return s;
}

inline void write_model(std::ostream& out, const IsingModel& m) {
    out << "spins:";
    for (auto s : m.spins()) out << ' ' << s.str();
    out << '\n';
    for (auto& [id, v] : m.fields()) out << "h " << id.str() << ' ' << v << '\n';
    for (auto& [pr, v] : m.couplings()) out << "J " << pr.first.str() << ' ' << pr.second.str() << ' ' << v << '\n';
    if (m.offset() != 0) out << "offset " << m.offset() << '\n';
}

inline IsingModel read_model(std::istream& in) {
    IsingModel m;
    std::string raw;
    int line = 0;
    bool header = false;
    while (std::getline(in, raw)) {
        ++line;
        auto sv = trim(raw);
        if (sv.empty() || sv.front() == '#') continue;
        std::istringstream ls{std::string(sv)};
        std::string tag;
        ls >> tag;
        try {
            if (tag == "spins:") {
                if (header) throw std::invalid_argument("duplicate spins header");
                header = true;
                std::string name;
                while (ls >> name) m.add_spin(SpinId::parse(name));
                continue;
            }
            if (!header) throw std::invalid_argument("expected 'spins:' header first");
            std::string a, b;
            long long v = 0;
            if (tag == "h") {
                if (!(ls >> a >> v)) throw std::invalid_argument("expected 'h <spin> <int>'");
                auto id = SpinId::parse(a);
                if (!m.has_spin(id)) throw std::invalid_argument("spin " + a + " not declared");
                m.add_field(id, v);
            } else if (tag == "J") {
                if (!(ls >> a >> b >> v)) throw std::invalid_argument("expected 'J <spin> <spin> <int>'");
                auto ia = SpinId::parse(a), ib = SpinId::parse(b);
                if (!m.has_spin(ia) || !m.has_spin(ib)) throw std::invalid_argument("coupling uses undeclared spin");
                if (m.coupling(ia, ib) != 0) throw std::invalid_argument("duplicate coupling " + a + " " + b);
                m.add_coupling(ia, ib, v);
            } else if (tag == "offset") {
                if (!(ls >> v)) throw std::invalid_argument("expected 'offset <int>'");
                m.add_offset(v);
            } else {
                throw std::invalid_argument("unknown record '" + tag + "'");
            }
            std::string extra;
            if (ls >> extra) throw std::invalid_argument("trailing text '" + extra + "'");
        } catch (const std::invalid_argument& e) {
            throw ParseError(line, e.what());
        }
    }
    if (!header) throw ParseError(line, "missing 'spins:' header");
    return m;
}

}  // namespace bent
