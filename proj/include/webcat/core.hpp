#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace webcat {

/// Arbitrary-precision integer. All combinatorial coefficients use this type;
/// there is no silent overflow anywhere in the engine.
using Int = mpz_class;

/// Exact rational scalar, always kept in canonical reduced form by GMP.
using Rat = mpq_class;

/// Coefficient ring selector. Integers are the default; a handful of
/// operations (averaged-balloon dot definition, rational twist parameters)
/// require rationals and must be called with Ring::Q.
enum class Ring { Z, Q };

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

struct ring_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct composition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct invalid_input : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an internal consistency guard trips (termination measure,
/// singular oracle system, non-integral result in Z mode). These indicate
/// a bug, never a bad user input.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace webcat
