#include "glv/reduce.hpp"

namespace glv {
namespace detail {

[[gnu::noinline]] double chunk_buffer_sum(double* buf, std::size_t m) {
  if (m == 0) return 0.0;
  while (m > 1) {
    const std::size_t half = m / 2;
    for (std::size_t j = 0; j < half; ++j) buf[j] = buf[2 * j] + buf[2 * j + 1];
    if (m & 1) {
      buf[half] = buf[m - 1];
      m = half + 1;
    } else {
      m = half;
    }
  }
  return buf[0];
}

double combine_partials(std::vector<double>& partial) {
  return chunk_buffer_sum(partial.data(), partial.size());
}

} // namespace detail

double det_sum(const double* x, std::size_t n, Exec exec) {
  return det_sum_terms(n, [x](std::size_t i) { return x[i]; }, exec);
}

} // namespace glv
