#include "uavnet/error.hpp"

namespace uavnet {

std::string_view category_name(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::invalid_argument: return "invalid-argument";
    case ErrorCategory::config: return "config-invalid";
    case ErrorCategory::io: return "io-error";
    case ErrorCategory::ledger: return "ledger-rejected";
  }
  return "unknown";
}

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::invalid_argument: return 2;
    case ErrorCategory::config: return 3;
    case ErrorCategory::io: return 4;
    case ErrorCategory::ledger: return 5;
  }
  return 1;
}

}  // namespace uavnet
