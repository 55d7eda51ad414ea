#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hlpn {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed model structure: unknown identifiers, mismatched bag universes,
// ill-formed nets. Distinct from a False guard verdict, which is a value.
struct structural_error : error {
  using error::error;
};

// Token-game contract violations: firing a transition that is not enabled,
// or firing a binding whose gef verdict is False.
struct semantics_error : error {
  using error::error;
};

// A bag subtraction went negative; occupancy bookkeeping is inconsistent.
struct underflow_error : error {
  using error::error;
};

// Problems reading or writing model files.
struct io_error : error {
  using error::error;
};

// A configured search or compilation bound was exceeded.
struct bound_error : error {
  using error::error;
};

// Formula or guard text could not be parsed. `position` is a byte offset
// into the input text.
struct parse_error : error {
  parse_error(const std::string& what, std::size_t pos)
      : error(what), position(pos) {}
  std::size_t position = 0;
};

}  // namespace hlpn
