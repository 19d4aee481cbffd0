#include "mase/error.hpp"

namespace mase {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain_error";
    case ErrorKind::GridMismatch: return "grid_mismatch";
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::Nonexistence: return "nonexistence";
    case ErrorKind::EnergyMismatch: return "energy_mismatch";
    case ErrorKind::UndefinedAxis: return "undefined_axis";
    case ErrorKind::Support: return "support_error";
    case ErrorKind::IntegrationFailure: return "integration_failure";
    case ErrorKind::Io: return "io_error";
    case ErrorKind::Config: return "config_error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      detail_(detail) {}

}  // namespace mase
