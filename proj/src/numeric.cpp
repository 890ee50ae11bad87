#include "gcdsum/numeric.hpp"

#include <charconv>

namespace gcdsum {

std::string shortest_repr(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace gcdsum
