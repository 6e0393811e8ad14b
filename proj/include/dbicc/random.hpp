#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace dbicc {

using Rng = std::mt19937_64;

/// Returns an engine for the stream addressed by `path` under `seed`.
///
/// Streams are derived through std::seed_seq, so the same (seed, path) gives
/// the same sequence on every platform and independent of which worker
/// happens to run it. Experiments address streams as e.g.
/// {replicate, m_index, individual}.
Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path = {});

}  // namespace dbicc
