#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bent {

inline constexpr int max_vars = 12;

// Boolean function of n variables. Entry x is f(x), x read most-significant-variable first.
class TruthTable {
public:
    TruthTable() = default;

    explicit TruthTable(int n) : n_(checked_vars(n)), bits_(std::size_t{1} << n, 0) {}

    TruthTable(int n, std::vector<std::uint8_t> bits) : n_(checked_vars(n)), bits_(std::move(bits)) {
        if (bits_.size() != (std::size_t{1} << n_))
            throw std::invalid_argument("truth table length " + std::to_string(bits_.size()) +
                                        " does not equal 2^" + std::to_string(n_));
        for (auto& b : bits_)
            if (b > 1) throw std::invalid_argument("truth table entries must be 0 or 1");
    }

    static TruthTable from_string(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("empty truth table");
        int n = 0;
        while ((std::size_t{1} << n) < s.size()) ++n;
        if ((std::size_t{1} << n) != s.size() || n < 1)
            throw std::invalid_argument("truth table length " + std::to_string(s.size()) +
                                        " is not a power of two >= 2");
        std::vector<std::uint8_t> bits(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] != '0' && s[i] != '1')
                throw std::invalid_argument(std::string("invalid character '") + s[i] + "' in truth table");
            bits[i] = static_cast<std::uint8_t>(s[i] - '0');
        }
        return TruthTable(n, std::move(bits));
    }

    int n() const { return n_; }
    std::size_t size() const { return bits_.size(); }
    int operator[](std::size_t x) const { return bits_[x]; }
    int bit(std::size_t x) const { return bits_.at(x); }
    void set(std::size_t x, int v) { bits_.at(x) = static_cast<std::uint8_t>(v != 0); }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    // spin +1 <-> bit 0
    int spin(std::size_t x) const { return bits_[x] ? -1 : 1; }

    TruthTable complement() const {
        TruthTable t = *this;
        for (auto& b : t.bits_) b ^= 1;
        return t;
    }

    std::string str() const {
        std::string s(bits_.size(), '0');
        for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
        return s;
    }

    friend bool operator==(const TruthTable&, const TruthTable&) = default;
    friend std::strong_ordering operator<=>(const TruthTable& a, const TruthTable& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.bits_ <=> b.bits_;
    }

private:
    static int checked_vars(int n) {
        if (n < 1 || n > max_vars)
            throw std::invalid_argument("variable count " + std::to_string(n) + " outside [1, " +
                                        std::to_string(max_vars) + "]");
        return n;
    }

    int n_ = 0;
    std::vector<std::uint8_t> bits_;
};

struct WalshSpectrum {
    int n = 0;
    std::vector<long long> coeffs;

    long long min() const { return *std::min_element(coeffs.begin(), coeffs.end()); }
    long long max() const { return *std::max_element(coeffs.begin(), coeffs.end()); }
    long long max_abs() const {
        long long m = 0;
        for (auto c : coeffs) m = std::max(m, c < 0 ? -c : c);
        return m;
    }
    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(coeffs[i]);
        }
        return s + "]";
    }
    friend bool operator==(const WalshSpectrum&, const WalshSpectrum&) = default;
};

// In-place butterfly on a +-1 vector.
inline void fwht_inplace(std::vector<long long>& v) {
    for (std::size_t h = 1; h < v.size(); h <<= 1)
        for (std::size_t i = 0; i < v.size(); i += h << 1)
            for (std::size_t j = i; j < i + h; ++j) {
                long long a = v[j], b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
}

inline WalshSpectrum walsh_transform(const TruthTable& tt) {
    WalshSpectrum w{tt.n(), std::vector<long long>(tt.size())};
    for (std::size_t x = 0; x < tt.size(); ++x) w.coeffs[x] = tt.spin(x);
    fwht_inplace(w.coeffs);
    return w;
}

inline bool is_bent_spectrum(const WalshSpectrum& w) {
    if (w.n % 2 != 0) throw std::invalid_argument("bentness requires an even variable count, got n=" + std::to_string(w.n));
    const long long flat = 1LL << (w.n / 2);
    return std::all_of(w.coeffs.begin(), w.coeffs.end(), [&](long long c) { return c == flat || c == -flat; });
}

inline bool is_bent(const TruthTable& tt) {
    if (tt.n() % 2 != 0) throw std::invalid_argument("bentness requires an even variable count, got n=" + std::to_string(tt.n()));
    return is_bent_spectrum(walsh_transform(tt));
}

inline long long nonlinearity(const TruthTable& tt) {
    return (1LL << (tt.n() - 1)) - walsh_transform(tt).max_abs() / 2;
}

// Full scan of all 2^(2^n) functions; sorted lexicographically.
inline std::vector<TruthTable> enumerate_bent(int n) {
    if (n != 2 && n != 4)
        throw std::invalid_argument("enumerate_bent supports n in {2, 4}, got n=" + std::to_string(n));
    const std::size_t len = std::size_t{1} << n;
    const long long flat = 1LL << (n / 2);
    std::vector<TruthTable> out;
    std::vector<long long> v(len);
    std::vector<std::uint8_t> bits(len);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << len); ++code) {
        // bit x of the table is bit (len-1-x) of code, so codes ascend lexicographically
        for (std::size_t x = 0; x < len; ++x) v[x] = ((code >> (len - 1 - x)) & 1) ? -1 : 1;
        fwht_inplace(v);
        if (!std::all_of(v.begin(), v.end(), [&](long long c) { return c == flat || c == -flat; })) continue;
        for (std::size_t x = 0; x < len; ++x) bits[x] = static_cast<std::uint8_t>((code >> (len - 1 - x)) & 1);
        out.emplace_back(n, bits);
    }
    return out;
}

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// One table per line; optional "n=<k>" header; blank lines and '#' comments skipped.
inline std::vector<TruthTable> read_truth_tables(std::istream& in) {
    std::vector<TruthTable> out;
    int expected = 0;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto s = trim(raw);
        if (s.empty() || s.front() == '#') continue;
        if (s.rfind("n=", 0) == 0) {
            if (!out.empty() || expected) throw ParseError(line, "header must precede all tables");
            char* end = nullptr;
            std::string num(s.substr(2));
            long v = std::strtol(num.c_str(), &end, 10);
            if (num.empty() || *end != '\0' || v < 1 || v > max_vars) throw ParseError(line, "bad header '" + std::string(s) + "'");
            expected = static_cast<int>(v);
            continue;
        }
        try {
            auto tt = TruthTable::from_string(s);
            if (expected && tt.n() != expected)
                throw std::invalid_argument("table has n=" + std::to_string(tt.n()) + " but header says n=" + std::to_string(expected));
            out.push_back(std::move(tt));
        } catch (const std::invalid_argument& e) {
            throw ParseError(line, e.what());
        }
    }
    return out;
}

inline void write_truth_tables(std::ostream& out, const std::vector<TruthTable>& tables) {
    if (!tables.empty()) out << "n=" << tables.front().n() << '\n';
    for (const auto& t : tables) out << t.str() << '\n';
}

}  // namespace bent
