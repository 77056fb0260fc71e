#include "fixtures.hpp"

namespace fixtures {

const shankslab::ZeroTable& table_1000() {
  static const shankslab::ZeroTable table = shankslab::find_zeros(1000);
  return table;
}

const shankslab::ZeroTable& table_10k() {
  static const shankslab::ZeroTable table = shankslab::find_zeros(10000);
  return table;
}

}  // namespace fixtures
