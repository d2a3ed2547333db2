#include "henon/errors.hpp"

namespace henon {

void require(bool condition, const std::string& message) {
  if (!condition) throw InputError(message);
}

}  // namespace henon
