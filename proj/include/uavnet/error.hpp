#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uavnet {

/// Machine-readable failure categories surfaced by the CLI.
enum class ErrorCategory {
  invalid_argument,
  config,
  io,
  ledger,
};

std::string_view category_name(ErrorCategory category);
int exit_code(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

}  // namespace uavnet
