#include "moebius/errors.hpp"

namespace moebius {

InsufficientLevels::InsufficientLevels(int needed, int available)
    : std::runtime_error("check needs simplicial level " + std::to_string(needed) +
                         " but the truncation stops at level " + std::to_string(available)),
      needed_(needed),
      available_(available) {}

}  // namespace moebius
