#ifndef PHISUM_TYPES_H_
#define PHISUM_TYPES_H_

#include <cstdint>

namespace phisum {

using StateId = int32_t;
using Label = int32_t;

inline constexpr StateId kNoState = -1;

}  // namespace phisum

#endif  // PHISUM_TYPES_H_
