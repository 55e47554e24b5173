#pragma once

#include <stdexcept>

namespace iwpp {

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace iwpp

#define IWPP_EXPECTS(cond, msg)                       \
  do {                                                \
    if (!(cond)) throw ::iwpp::ContractViolation(msg); \
  } while (0)

// Hot-path checks (per-lane prefix consistency, gather bounds) compile away
// unless IWPP_CONTRACT_CHECKS is set.
#if defined(IWPP_CONTRACT_CHECKS) && IWPP_CONTRACT_CHECKS
#define IWPP_DEBUG_EXPECTS(cond, msg) IWPP_EXPECTS(cond, msg)
#else
#define IWPP_DEBUG_EXPECTS(cond, msg) ((void)0)
#endif
