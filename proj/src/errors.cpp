#include "smoothnum/errors.hpp"

namespace smoothnum {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Range: return "range";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace smoothnum
