#include "gint/error.hpp"

namespace gint {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::pole: return "pole";
    case ErrorCode::precision: return "precision";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::convergence: return "convergence";
    case ErrorCode::inconsistency: return "inconsistency";
    case ErrorCode::ill_conditioned: return "ill_conditioned";
    case ErrorCode::redirect: return "redirect";
    case ErrorCode::singularity: return "singularity";
    case ErrorCode::resonance: return "resonance";
    case ErrorCode::unsupported: return "unsupported";
  }
  return "unknown";
}

}  // namespace gint
