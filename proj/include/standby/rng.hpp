#pragma once

#include <cstdint>

namespace standby {

/**
 * @brief Counter-based random stream (Philox2x64, 10 rounds).
 *
 * Output block b of stream (seed, stream_id) is a pure function of the
 * triple, so any trial's stream can be generated independently of all
 * others and in any order; this is what makes simulation results
 * independent of the execution thread count. Constants follow Salmon,
 * Moraes, Dror and Shaw, "Parallel random numbers: as easy as 1, 2, 3".
 */
class CounterStream {
public:
    CounterStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
        : key_(seed), stream_(stream_id) {}

    std::uint64_t next_u64() noexcept;

    /// Uniform double in the open interval (0, 1): midpoints of the
    /// 2^53-cell grid, can produce neither 0 nor 1.
    double next_open01() noexcept;

    /// Inverse-transform exponential sample, -ln(U)/rate.
    double next_exponential(double rate) noexcept;

    /// Standard normal via Box-Muller (cosine branch only).
    double next_normal() noexcept;

    /// Gamma(shape, rate) by Marsaglia-Tsang; requires shape >= 1.
    double next_gamma(double shape, double rate) noexcept;

    /// Poisson(mean); Knuth product method below mean 10, Hormann's PTRS
    /// transformed rejection above. Returns a double because the counts
    /// used here can exceed 2^53 only in regimes we never sample.
    double next_poisson(double mean) noexcept;

    /// Number of Bernoulli(p) trials up to and including the first
    /// success (support {1, 2, ...}).
    double next_geometric(double p) noexcept;

private:
    void refill() noexcept;

    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::uint64_t out_[2] = {0, 0};
    int avail_ = 0;
};

namespace detail {
/// One Philox2x64-10 block: returns the two output words for
/// counter = (block, stream) under the given key.
void philox2x64(std::uint64_t key, std::uint64_t block, std::uint64_t stream,
                std::uint64_t out[2]) noexcept;
}  // namespace detail

}  // namespace standby
