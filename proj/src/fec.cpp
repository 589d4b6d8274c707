#include "ftnlcc/fec.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace ftnlcc {

namespace {

inline std::uint8_t parity(unsigned x) { return static_cast<std::uint8_t>(std::popcount(x) & 1); }

}  // namespace

void ConvCode::validate() const {
    if (constraint_length < 2 || constraint_length > 16) {
        throw std::invalid_argument("ConvCode: constraint_length must be in [2, 16]");
    }
    const unsigned cap = 1u << constraint_length;
    if (g0 == 0 || g1 == 0 || g0 >= cap || g1 >= cap) {
        throw std::invalid_argument("ConvCode: generator masks must fit the constraint length");
    }
    if (!terminated) {
        throw std::invalid_argument("ConvCode: only the terminated trellis is supported");
    }
}

BitVector conv_encode(const BitVector& info, const ConvCode& code) {
    code.validate();
    if (info.empty()) throw std::invalid_argument("conv_encode: info must be non-empty");
    const int m = code.memory();
    BitVector out;
    out.reserve(2 * (info.size() + static_cast<size_t>(m)));
    unsigned state = 0;  // bit m-1 holds the most recent past bit
    const size_t total = info.size() + static_cast<size_t>(m);
    for (size_t t = 0; t < total; ++t) {
        const unsigned b = t < info.size() ? (info[t] & 1u) : 0u;  // flush with zeros
        const unsigned reg = (b << m) | state;                     // MSB = current bit
        out.push_back(parity(reg & code.g0));
        out.push_back(parity(reg & code.g1));
        state = (state >> 1) | (b << (m - 1));
    }
    return out;
}

BitVector viterbi_decode(const std::vector<double>& llrs, const ConvCode& code) {
    code.validate();
    if (llrs.size() % 2 != 0) throw std::invalid_argument("viterbi_decode: llr count must be even");
    const int m = code.memory();
    const size_t steps = llrs.size() / 2;
    if (steps <= static_cast<size_t>(m)) {
        throw std::invalid_argument("viterbi_decode: block too short for the terminated trellis");
    }
    const size_t info_len = steps - static_cast<size_t>(m);
    const int n_states = code.num_states();
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();

    std::vector<double> metric(static_cast<size_t>(n_states), kNegInf);
    std::vector<double> next_metric(static_cast<size_t>(n_states));
    metric[0] = 0.0;  // trellis pinned to state 0 at both ends
    std::vector<std::uint8_t> decisions(steps * static_cast<size_t>(n_states));

    for (size_t t = 0; t < steps; ++t) {
        const double l0 = llrs[2 * t];
        const double l1 = llrs[2 * t + 1];
        const bool tail = t >= info_len;
        for (int n = 0; n < n_states; ++n) {
            const unsigned b = static_cast<unsigned>(n) >> (m - 1);
            if (tail && b != 0) {
                next_metric[static_cast<size_t>(n)] = kNegInf;
                continue;
            }
            const unsigned base = (static_cast<unsigned>(n) << 1) & (static_cast<unsigned>(n_states) - 1u);
            double best = kNegInf;
            std::uint8_t best_z = 0;
            for (unsigned z = 0; z < 2; ++z) {  // z = oldest bit of the predecessor
                const unsigned pred = base | z;
                const double pm = metric[pred];
                if (pm == kNegInf) continue;
                const unsigned reg = (b << m) | pred;
                const double bm = (parity(reg & code.g0) ? l0 : -l0) * 0.5 +
                                  (parity(reg & code.g1) ? l1 : -l1) * 0.5;
                const double cand = pm + bm;
                // strict > keeps the lower predecessor index on ties
                if (cand > best) {
                    best = cand;
                    best_z = static_cast<std::uint8_t>(z);
                }
            }
            next_metric[static_cast<size_t>(n)] = best;
            decisions[t * static_cast<size_t>(n_states) + static_cast<size_t>(n)] = best_z;
        }
        metric.swap(next_metric);
    }

    BitVector out(info_len);
    unsigned state = 0;
    for (size_t t = steps; t-- > 0;) {
        const unsigned b = state >> (m - 1);
        const std::uint8_t z = decisions[t * static_cast<size_t>(n_states) + state];
        if (t < info_len) out[t] = static_cast<std::uint8_t>(b);
        state = ((state << 1) & (static_cast<unsigned>(n_states) - 1u)) | z;
    }
    return out;
}

}  // namespace ftnlcc
