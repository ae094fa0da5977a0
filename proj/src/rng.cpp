#include "standby/rng.hpp"

#include <cmath>

namespace standby {

namespace detail {

namespace {
constexpr std::uint64_t kPhiloxMultiplier = 0xD2B74407B1CE6E93ULL;
constexpr std::uint64_t kPhiloxWeyl = 0x9E3779B97F4A7C15ULL;

inline void philox_round(std::uint64_t& c0, std::uint64_t& c1,
                         std::uint64_t key) noexcept {
    const unsigned __int128 product =
        static_cast<unsigned __int128>(kPhiloxMultiplier) * c0;
    const std::uint64_t hi = static_cast<std::uint64_t>(product >> 64);
    const std::uint64_t lo = static_cast<std::uint64_t>(product);
    c0 = hi ^ key ^ c1;
    c1 = lo;
}
}  // namespace

void philox2x64(std::uint64_t key, std::uint64_t block, std::uint64_t stream,
                std::uint64_t out[2]) noexcept {
    std::uint64_t c0 = block;
    std::uint64_t c1 = stream;
    for (int round = 0; round < 10; ++round) {
        philox_round(c0, c1, key);
        key += kPhiloxWeyl;
    }
    out[0] = c0;
    out[1] = c1;
}

}  // namespace detail

void CounterStream::refill() noexcept {
    detail::philox2x64(key_, block_, stream_, out_);
    ++block_;
    avail_ = 2;
}

std::uint64_t CounterStream::next_u64() noexcept {
    if (avail_ == 0) refill();
    return out_[2 - avail_--];
}

double CounterStream::next_open01() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterStream::next_exponential(double rate) noexcept {
    return -std::log(next_open01()) / rate;
}

double CounterStream::next_normal() noexcept {
    const double u1 = next_open01();
    const double u2 = next_open01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

double CounterStream::next_gamma(double shape, double rate) noexcept {
    // Marsaglia & Tsang (2000); valid for shape >= 1.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = next_open01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
}

double CounterStream::next_poisson(double mean) noexcept {
    if (mean <= 0.0) return 0.0;
    if (mean < 10.0) {
        // Knuth's product method.
        const double limit = std::exp(-mean);
        double product = 1.0;
        double count = -1.0;
        do {
            product *= next_open01();
            count += 1.0;
        } while (product > limit);
        return count;
    }
    // Hormann's PTRS transformed rejection; exact for all means >= 10.
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    for (;;) {
        const double u = next_open01() - 0.5;
        const double v = next_open01();
        const double us = 0.5 - std::abs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return k;
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            k * log_mean - mean - std::lgamma(k + 1.0)) {
            return k;
        }
    }
}

double CounterStream::next_geometric(double p) noexcept {
    if (p >= 1.0) return 1.0;
    const double u = next_open01();
    return std::floor(std::log(u) / std::log1p(-p)) + 1.0;
}

}  // namespace standby
