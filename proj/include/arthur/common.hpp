/*
 * arthur-kit: combinatorial skeleton of Arthur packets for classical and
 * similitude groups over a p-adic field.
 *
 * Distributed under the MIT license; see LICENSE at the repository root.
 */

/** Shared error type and exact rational arithmetic helpers. */

#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace arthur {

// Exact rational scalar used everywhere half-integers appear.  No floating
// point is used anywhere in the library.
using Rat = boost::rational<long long>;

inline Rat rat(long long n, long long d = 1) { return Rat(n, d); }

inline bool is_integer(const Rat &x) { return x.denominator() == 1; }

// Largest integer <= x.
inline long long rat_floor(const Rat &x) {
    long long q = x.numerator() / x.denominator();
    if (x.numerator() % x.denominator() != 0 && x.numerator() < 0)
        --q;
    return q;
}

inline std::string rat_str(const Rat &x) {
    std::ostringstream os;
    os << x.numerator();
    if (x.denominator() != 1)
        os << '/' << x.denominator();
    return os.str();
}

// Parse "3", "-5/2".  Throws std::invalid_argument on malformed input.
inline Rat rat_parse(const std::string &s) {
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Rat(std::stoll(s));
    return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

// All domain-level failures are reported through this exception.  `code` is a
// stable machine-readable identifier (e.g. "ZetaConflict",
// "DimensionMismatch"); `what()` adds human-readable context.
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string &detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
    const std::string &code() const { return code_; }

  private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string &code, const std::string &detail) {
    throw Error(code, detail);
}

inline void require(bool cond, const std::string &code, const std::string &detail) {
    if (!cond)
        fail(code, detail);
}

} // namespace arthur
