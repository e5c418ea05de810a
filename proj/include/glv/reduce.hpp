#pragma once

#include <cstddef>
#include <vector>

namespace glv {

enum class Exec { Serial, Parallel };

namespace detail {

inline constexpr std::size_t kChunk = 2048;

// In-place pairwise reduction of buf[0..m); fixed tree, no FMA surprises.
double chunk_buffer_sum(double* buf, std::size_t m);

double combine_partials(std::vector<double>& partial);

template <class F>
[[gnu::noinline]] double sum_one_chunk(const F& term, std::size_t i0, std::size_t i1) {
  double buf[kChunk];
  const std::size_t m = i1 - i0;
  for (std::size_t j = 0; j < m; ++j) buf[j] = term(i0 + j);
  return chunk_buffer_sum(buf, m);
}

} // namespace detail

// Sum of term(i), i in [0, n). The sum is chunked with a fixed pairwise combine
// tree and the chunk kernel is shared by both execution paths, so the result is
// bit-identical for Serial and Parallel at any OpenMP thread count.
template <class F>
double det_sum_terms(std::size_t n, const F& term, Exec exec = Exec::Parallel) {
  if (n == 0) return 0.0;
  const std::size_t nchunks = (n + detail::kChunk - 1) / detail::kChunk;
  std::vector<double> partial(nchunks);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < (long long)nchunks; ++c) {
      const std::size_t i0 = (std::size_t)c * detail::kChunk;
      const std::size_t i1 = i0 + detail::kChunk < n ? i0 + detail::kChunk : n;
      partial[c] = detail::sum_one_chunk(term, i0, i1);
    }
  } else {
    for (std::size_t c = 0; c < nchunks; ++c) {
      const std::size_t i0 = c * detail::kChunk;
      const std::size_t i1 = i0 + detail::kChunk < n ? i0 + detail::kChunk : n;
      partial[c] = detail::sum_one_chunk(term, i0, i1);
    }
  }
  return detail::combine_partials(partial);
}

double det_sum(const double* x, std::size_t n, Exec exec = Exec::Parallel);

} // namespace glv
