#include "smoothnum/philox.hpp"

#include <cmath>

#include "smoothnum/types.hpp"

namespace smoothnum {

namespace {

TurnTable make_turn_table() {
  TurnTable t;
  for (int i = 0; i < (1 << TurnTable::kBits); ++i) {
    long double a = 6.283185307179586476925286766559L * i / (1 << TurnTable::kBits);
    t.cos_v[i] = double(std::cos(a));
    t.sin_v[i] = double(std::sin(a));
  }
  return t;
}

}  // namespace

const TurnTable& turn_table() {
  static const TurnTable table = make_turn_table();
  return table;
}

}  // namespace smoothnum
