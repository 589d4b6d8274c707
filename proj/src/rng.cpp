#include "ftnlcc/rng.hpp"

#include <cmath>
#include <numbers>

namespace ftnlcc {

std::uint64_t mix_seed(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream RngStream::substream(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return RngStream(mix_seed(mix_seed(master ^ mix_seed(a)) ^ mix_seed(~b)));
}

double RngStream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
}

}  // namespace ftnlcc
