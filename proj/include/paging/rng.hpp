#pragma once

// Counter-based 64-bit generator. Output i of a stream is
//   splitmix64_finalize(key + i * 0x9E3779B97F4A7C15)
// so a stream is fully described by (key, counter). Keys are derived from a
// user seed and a component name, which keeps trace generation, error
// injection and learner sampling on disjoint streams regardless of the order
// in which components run. Bounded integers use Lemire's multiply-and-reject
// method and reals take the top 53 bits, so results do not depend on the
// standard library's distribution implementations.

#include <cstdint>
#include <limits>
#include <string_view>

namespace paging {

inline constexpr std::uint64_t splitmix64_finalize(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t fnv1a64(std::string_view s)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

class CounterRng {
public:
    using result_type = std::uint64_t;

    constexpr CounterRng(std::uint64_t seed, std::string_view component)
        : key_(splitmix64_finalize(seed ^ splitmix64_finalize(fnv1a64(component))))
    {
    }

    // Sub-stream for an indexed sub-component (e.g. predictor j).
    constexpr CounterRng split(std::uint64_t index) const
    {
        CounterRng child = *this;
        child.key_ = splitmix64_finalize(key_ + splitmix64_finalize(index + 0x632BE59BD9B4E019ULL));
        child.counter_ = 0;
        return child;
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()()
    {
        ++counter_;
        return splitmix64_finalize(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
    }

    // Uniform in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound)
    {
        auto x = (*this)();
        auto m = static_cast<unsigned __int128>(x) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                x = (*this)();
                m = static_cast<unsigned __int128>(x) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform integer in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi)
    {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // Uniform in [0, 1).
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

} // namespace paging
