#include "cqt/config.hpp"

#include <cstdlib>
#include <string>

#include "cqt/error.hpp"

namespace cqt {

void ToleranceConfig::validate() const {
  if (!(tol_symbol > 0) || !(tol_corr > 0) || !(tol_stop > 0)) {
    throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
  }
  if (max_terms < 1 || max_finite_section < 1 || max_levels < 1 || annulus_samples < 1) {
    throw Error(ErrorKind::InvalidArgument, "iteration caps must be >= 1");
  }
}

ToleranceConfig ToleranceConfig::from_environment() {
  ToleranceConfig cfg;
  if (const char* s = std::getenv("CQT_MAX_SECTION"); s != nullptr && *s != '\0') {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0' || v < 1) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string("CQT_MAX_SECTION must be a positive integer, got '") + s + "'");
    }
    cfg.max_finite_section = static_cast<int>(v);
  }
  return cfg;
}

}  // namespace cqt
