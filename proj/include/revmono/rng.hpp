#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace revmono {

// mt19937_64 with hand-rolled reductions so streams are identical across
// standard-library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, bound) by rejection; bound > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform in [lo, hi] inclusive.
    std::int64_t next_in(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next_below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool next_bool() { return (eng_() >> 63) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Child generator with a decorrelated seed; lets subtasks draw
    // independently of enumeration order.
    Rng fork(std::uint64_t salt) {
        std::uint64_t s = next_u64() ^ (salt * 0x9E3779B97F4A7C15ULL + 0x2545F4914F6CDD1DULL);
        return Rng(s);
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace revmono
