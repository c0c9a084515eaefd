#include "renas/error.hpp"

namespace renas {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegenerateName: return "degenerate-name";
    case ErrorCode::kNotFound: return "not-found";
    case ErrorCode::kAmbiguous: return "ambiguous";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kVersionMismatch: return "version-mismatch";
    case ErrorCode::kNotApplicable: return "not-applicable";
    case ErrorCode::kSchema: return "schema";
  }
  return "unknown";
}

}  // namespace renas
