#pragma once

#include <gmpxx.h>

#include <string>

namespace coha {

// All coefficient arithmetic is exact; GMP rationals throughout.
using Rational = mpq_class;

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational rational_from_string(const std::string& s) {
    Rational r(s);
    r.canonicalize();
    return r;
}

}  // namespace coha
