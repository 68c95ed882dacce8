#pragma once

// Error taxonomy.  Every throw carries a stable machine-readable type
// name so the CLI can emit {"error": {"type", "message"}} records.

#include <stdexcept>
#include <string>

namespace globalctl {

class Error : public std::runtime_error {
 public:
  Error(std::string type, const std::string& message)
      : std::runtime_error(message), type_(std::move(type)) {}
  const std::string& type() const { return type_; }

 private:
  std::string type_;
};

#define GLOBALCTL_DEFINE_ERROR(Name)                          \
  class Name : public Error {                                 \
   public:                                                    \
    explicit Name(const std::string& message)                 \
        : Error(#Name, message) {}                            \
  }

GLOBALCTL_DEFINE_ERROR(LengthMismatch);
GLOBALCTL_DEFINE_ERROR(InsufficientLength);
GLOBALCTL_DEFINE_ERROR(InsufficientMargins);
GLOBALCTL_DEFINE_ERROR(OutOfMargins);
GLOBALCTL_DEFINE_ERROR(MultipleCusActive);
GLOBALCTL_DEFINE_ERROR(NoCuFound);
GLOBALCTL_DEFINE_ERROR(QuantumControlledReset);
GLOBALCTL_DEFINE_ERROR(FingerprintMismatch);
GLOBALCTL_DEFINE_ERROR(ConvergenceFailure);
GLOBALCTL_DEFINE_ERROR(UnknownMacro);
GLOBALCTL_DEFINE_ERROR(BadConfig);

#undef GLOBALCTL_DEFINE_ERROR

}  // namespace globalctl
