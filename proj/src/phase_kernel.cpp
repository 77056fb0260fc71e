#include "phase_kernel.hpp"

#include <cmath>
#include <vector>

namespace shankslab::detail {

namespace {

struct LogTableStorage {
  std::vector<double> hi;
  std::vector<double> lo;
  std::vector<double> rsqrt;

  LogTableStorage()
      : hi(LogTable::kCapacity), lo(LogTable::kCapacity), rsqrt(LogTable::kCapacity) {
    hi[0] = lo[0] = rsqrt[0] = 0.0;
    for (std::size_t m = 1; m < LogTable::kCapacity; ++m) {
      log_dd(m, hi[m], lo[m]);
      rsqrt[m] = 1.0 / std::sqrt(static_cast<double>(m));
    }
  }
};

}  // namespace

void log_dd(std::size_t m, double& hi, double& lo) {
  const long double l = std::log(static_cast<long double>(m));
  hi = static_cast<double>(l);
  lo = static_cast<double>(l - static_cast<long double>(hi));
}

const LogTable& log_table() {
  static const LogTableStorage storage;
  static const LogTable table{storage.hi.data(), storage.lo.data(), storage.rsqrt.data()};
  return table;
}

void fill_logs(std::size_t first, std::size_t len, double* hi, double* lo) {
  const LogTable& table = log_table();
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t m = first + i;
    if (m < LogTable::kCapacity) {
      hi[i] = table.hi[m];
      lo[i] = table.lo[m];
    } else {
      log_dd(m, hi[i], lo[i]);
    }
  }
}

}  // namespace shankslab::detail
