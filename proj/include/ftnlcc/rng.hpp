#pragma once

#include <cstdint>
#include <random>

namespace ftnlcc {

/// Seedable random stream with portable output: the engine is the fully
/// specified std::mt19937_64 and the uniform/Gaussian transforms are done
/// by hand, so a given seed produces the same values on every platform
/// (std::normal_distribution would not guarantee that).
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : eng_(seed) {}

    /// Independent substream derived from a master seed and stream indices.
    static RngStream substream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform on (0,1), never exactly 0 or 1.
    double uniform01() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; pairs are cached.
    double gaussian();

    /// Equiprobable +-1 symbol.
    int symbol() { return (eng_() >> 63) ? 1 : -1; }

    /// Equiprobable bit.
    std::uint8_t bit() { return static_cast<std::uint8_t>(eng_() >> 63); }

  private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// splitmix64 mixing step, used to derive substream seeds.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace ftnlcc
