#include "zm/common.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace zm {

const NumOpts& default_opts() {
    static const NumOpts opts{};
    return opts;
}

HalfInt HalfInt::from_double(double v) {
    const double k = v - 0.5;
    if (!std::isfinite(v) || k != std::floor(k) || std::fabs(k) > 1e15)
        throw DomainError("not a half-integer: " + std::to_string(v));
    return HalfInt(static_cast<std::int64_t>(k));
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_int(const std::string& s, std::int64_t& out) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') i = 1;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    try {
        out = std::stoll(s);
    } catch (...) {
        return false;
    }
    return true;
}

}  // namespace

HalfInt HalfInt::parse(const std::string& raw) {
    const std::string s = trim(raw);
    const std::string bad = "expected p/2 with odd p or k+1/2, got '" + raw + "'";
    if (s.size() > 4 && s.compare(s.size() - 4, 4, "+1/2") == 0) {
        std::int64_t k;
        if (!parse_int(s.substr(0, s.size() - 4), k)) throw DomainError(bad);
        return HalfInt(k);
    }
    if (s.size() > 2 && s.compare(s.size() - 2, 2, "/2") == 0) {
        std::int64_t p;
        if (!parse_int(s.substr(0, s.size() - 2), p) || (p & 1) == 0) throw DomainError(bad);
        return HalfInt((p - 1) / 2);  // p - 1 is even, division is exact
    }
    throw DomainError(bad);
}

std::string HalfInt::str() const { return std::to_string(2 * k + 1) + "/2"; }

}  // namespace zm
