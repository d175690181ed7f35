#pragma once

// Deterministic chunked parallelism: the trial index space is cut into fixed
// chunks, chunk c always draws from substream c, and partial results are
// combined by a fixed pairwise tree. The output is identical for any thread count.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace qdisc {

inline constexpr std::uint64_t kDefaultChunkSize = 4096;

struct Chunk {
  std::uint64_t index;
  std::uint64_t begin;
  std::uint64_t end;
};

inline std::vector<Chunk> make_chunks(std::uint64_t trials, std::uint64_t chunk_size = kDefaultChunkSize) {
  std::vector<Chunk> chunks;
  for (std::uint64_t b = 0, i = 0; b < trials; b += chunk_size, ++i) {
    chunks.push_back({i, b, std::min(trials, b + chunk_size)});
  }
  return chunks;
}

/// Runs `work(chunk)` for every chunk on up to `threads` workers and returns
/// the results in chunk order.
template <typename T>
std::vector<T> run_chunks(const std::vector<Chunk>& chunks, unsigned threads, const std::function<T(const Chunk&)>& work) {
  std::vector<T> results(chunks.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < chunks.size(); ++i) results[i] = work(chunks[i]);
    return results;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < chunks.size(); i += threads) results[i] = work(chunks[i]);
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

/// ((a0+a1)+(a2+a3))+... in a fixed tree shape.
template <typename T, typename Add>
T pairwise_reduce(std::vector<T> values, Add add) {
  if (values.empty()) return T{};
  while (values.size() > 1) {
    std::vector<T> next;
    next.reserve((values.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < values.size(); i += 2) next.push_back(add(values[i], values[i + 1]));
    if (values.size() % 2) next.push_back(std::move(values.back()));
    values = std::move(next);
  }
  return std::move(values.front());
}

}  // namespace qdisc
