#pragma once

#include <stdexcept>
#include <string>

namespace renas {

enum class ErrorCode {
  kDegenerateName,
  kNotFound,
  kAmbiguous,
  kInvalidArgument,
  kIo,
  kFormat,
  kVersionMismatch,
  kNotApplicable,
  kSchema,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace renas
