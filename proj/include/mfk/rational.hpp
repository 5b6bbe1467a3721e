#pragma once

#include <gmpxx.h>

#include <string>

namespace mfk {

// Exact rational scalar. GMP canonicalizes results of arithmetic, so two
// equal rationals always compare equal.
using Rat = mpq_class;

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

inline std::string to_string(const Rat& q) { return q.get_str(); }

}  // namespace mfk
