#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zm/common.hpp"

namespace zm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumeric = 3;

struct Config {
    NumOpts num;
    int oracle_cutoff = 40;
    double tolerance = 1e-6;  // corr --both, meixner cross checks
    int meixner_x_max = 60;
    int threads = 1;
};

// key = value lines, '#' comments; throws DomainError on unknown keys
void apply_config_text(const std::string& text, Config& c);
Config load_config(const std::string& path);
std::string dump_config(const Config& c);

// "1.5+0.5i", "-2", "0.5i", "1.5-i"
cplx parse_complex(const std::string& s);
std::vector<HalfInt> parse_points(const std::string& s);
// "a:b" with half-integer ends, inclusive
std::vector<HalfInt> parse_range(const std::string& s);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zm::cli
