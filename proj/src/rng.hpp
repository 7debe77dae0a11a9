#pragma once

#include <cstdint>
#include <random>

namespace sqz::detail {

// Independent generator for (seed, stream, block). Blocks are fixed-size
// slices of the work, so the draw sequence does not depend on threading.
inline std::mt19937_64 block_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(block),
                      static_cast<std::uint32_t>(block >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace sqz::detail
