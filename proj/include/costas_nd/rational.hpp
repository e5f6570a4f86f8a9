#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace costas_nd {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace costas_nd
