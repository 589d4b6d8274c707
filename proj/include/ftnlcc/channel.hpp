#pragma once

#include <cstdint>
#include <vector>

#include "ftnlcc/pulse_shaping.hpp"
#include "ftnlcc/rng.hpp"

namespace ftnlcc {

/// One block of BPSK data symbols, every entry exactly -1 or +1.
struct SymbolBlock {
    std::vector<std::int8_t> symbols;

    int size() const { return static_cast<int>(symbols.size()); }
    void validate() const;
};

/// Matched-filter output samples of one block plus the noise level that
/// produced them (0 for noiseless).
struct ReceivedBlock {
    std::vector<double> samples;
    double noise_sigma = 0.0;

    int size() const { return static_cast<int>(samples.size()); }
};

/// The block channel matrix H of y = Ha + w, materialized lazily:
/// row j is [h_{-j}, ..., h_0, ..., h_{N-j-1}], i.e. H[j][k] = h_{k-j}.
struct ChannelMatrixView {
    TapSet taps;
    int block_len = 0;

    double at(int row, int col) const { return taps.at(col - row); }
    std::vector<double> multiply(const SymbolBlock& a) const;
};

/// Noiseless FTN convolution b_n = sum_l a_{n-l} h_l with symbols outside
/// [0, N) treated as zero (the Eq.-style matrix truncates at block edges).
std::vector<double> transmit_noiseless(const SymbolBlock& a, const TapSet& taps);

/// Adds i.i.d. Gaussian(0, sigma^2) noise; deterministic given the stream.
ReceivedBlock add_awgn(const std::vector<double>& clean, double sigma, RngStream& rng);

/// Per-sample noise standard deviation for a target Eb/N0 in dB with BPSK
/// symbol energy 1: sigma = sqrt(1 / (2 * code_rate * 10^(ebn0/10))).
double sigma_from_ebn0(double ebn0_db, double code_rate);

}  // namespace ftnlcc
