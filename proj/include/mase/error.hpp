#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mase {

enum class ErrorKind {
  Domain,           // non-finite or otherwise invalid numeric input
  GridMismatch,     // operands live on different grids
  InvalidArgument,  // parameter outside its admissible set
  Singularity,      // evaluation on/near the singular line of the profile ODE
  Nonexistence,     // no orbit of the requested type at this level
  EnergyMismatch,   // composite segments on different level sets
  UndefinedAxis,    // symmetry axis of a constant field
  Support,          // test function support leaves the sampled window
  IntegrationFailure,
  Io,
  Config,
};

std::string_view to_string(ErrorKind kind);

/// Library-wide exception. what() is a single line of the form
/// "<kind>: <detail>" so the CLI can forward it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace mase
