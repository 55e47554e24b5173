#include "iwpp/lanes.hpp"

#include <stdexcept>

namespace iwpp::lanes {

bool hardware_available() {
#if defined(IWPP_HAVE_AVX512)
  static const bool available = __builtin_cpu_supports("avx512f");
  return available;
#else
  return false;
#endif
}

Backend resolve(Backend requested) {
  switch (requested) {
    case Backend::kAuto:
      return hardware_available() ? Backend::kHardware : Backend::kScalar;
    case Backend::kHardware:
      if (!hardware_available()) {
        throw std::runtime_error("hardware lane backend requested but not available");
      }
      return Backend::kHardware;
    case Backend::kScalar:
      break;
  }
  return Backend::kScalar;
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::kAuto: return "auto";
    case Backend::kScalar: return ScalarBackend::kName;
    case Backend::kHardware: return HardwareBackend::kName;
  }
  return "?";
}

}  // namespace iwpp::lanes
