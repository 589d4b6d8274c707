#pragma once

#include <cstdint>
#include <vector>

namespace ftnlcc {

using BitVector = std::vector<std::uint8_t>;

/// Rate-1/2 convolutional code, default (7, [171 133]). Generators are
/// octal masks read MSB-first as [current bit, delayed bits...]. Terminated:
/// K-1 flush zeros are appended so the trellis ends in state 0.
struct ConvCode {
    int constraint_length = 7;
    unsigned g0 = 0171;
    unsigned g1 = 0133;
    bool terminated = true;

    int memory() const { return constraint_length - 1; }
    int num_states() const { return 1 << memory(); }
    void validate() const;
};

/// Encodes info bits; output holds the g0 bit then the g1 bit per input bit,
/// length 2*(len + memory) with termination.
BitVector conv_encode(const BitVector& info, const ConvCode& code = {});

/// Soft-decision Viterbi over per-coded-bit LLRs (bit 1 contributes +llr/2
/// to a branch, bit 0 contributes -llr/2). Terminated trellis pinned to
/// state 0 at both ends, full-block traceback, tail bits stripped. Ties in
/// add-compare-select prefer the lower predecessor state.
BitVector viterbi_decode(const std::vector<double>& llrs, const ConvCode& code = {});

}  // namespace ftnlcc
