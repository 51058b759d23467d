#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bent {

enum class Family { A, B };

// Per group of four controls: A '0' first pair opposite, second equal; A '1' the reverse.
// B '0' both pairs equal; B '1' both opposite.
struct ConditionVector {
    Family family = Family::A;
    std::string bits;

    std::size_t groups() const { return bits.size(); }

    // relation signs (+1 equal, -1 opposite) of the two pairs of group g
    std::pair<int, int> pair_signs(std::size_t g) const {
        const bool one = bits.at(g) == '1';
        if (family == Family::A) return one ? std::pair{1, -1} : std::pair{-1, 1};
        return one ? std::pair{-1, -1} : std::pair{1, 1};
    }

    std::string str() const { return std::string(family == Family::A ? "A:" : "B:") + bits; }

    static ConditionVector parse(std::string_view s) {
        auto bad = [&] { return std::invalid_argument("bad condition literal '" + std::string(s) + "' (expected e.g. A:1111)"); };
        if (s.size() < 3 || s[1] != ':') throw bad();
        ConditionVector c;
        if (s[0] == 'A' || s[0] == 'a') c.family = Family::A;
        else if (s[0] == 'B' || s[0] == 'b') c.family = Family::B;
        else throw bad();
        c.bits = std::string(s.substr(2));
        for (char ch : c.bits)
            if (ch != '0' && ch != '1') throw bad();
        return c;
    }

    static std::vector<ConditionVector> all(Family f, std::size_t groups) {
        std::vector<ConditionVector> out;
        for (std::size_t code = 0; code < (std::size_t{1} << groups); ++code) {
            ConditionVector c{f, std::string(groups, '0')};
            for (std::size_t i = 0; i < groups; ++i)
                if ((code >> (groups - 1 - i)) & 1) c.bits[i] = '1';
            out.push_back(c);
        }
        return out;
    }

    friend bool operator==(const ConditionVector&, const ConditionVector&) = default;
    friend auto operator<=>(const ConditionVector&, const ConditionVector&) = default;
};

// "A:1111" or "A:1111/A:1" : top-level vector, then one vector per deeper level.
inline std::vector<ConditionVector> parse_condition_path(std::string_view s) {
    std::vector<ConditionVector> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find('/', start);
        out.push_back(ConditionVector::parse(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::string condition_path_str(const std::vector<ConditionVector>& levels) {
    std::string s;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (i) s += '/';
        s += levels[i].str();
    }
    return s;
}

inline std::size_t condition_length(int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("condition vectors need even n >= 2, got n=" + std::to_string(n));
    return std::size_t{1} << (n - 2);
}

}  // namespace bent
