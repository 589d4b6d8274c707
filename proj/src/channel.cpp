#include "ftnlcc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ftnlcc {

void SymbolBlock::validate() const {
    if (symbols.empty()) throw std::invalid_argument("SymbolBlock: block must be non-empty");
    for (auto s : symbols) {
        if (s != 1 && s != -1) throw std::invalid_argument("SymbolBlock: entries must be +-1");
    }
}

std::vector<double> ChannelMatrixView::multiply(const SymbolBlock& a) const {
    std::vector<double> y(static_cast<size_t>(block_len), 0.0);
    for (int r = 0; r < block_len; ++r) {
        double acc = 0.0;
        for (int c = 0; c < block_len; ++c) acc += at(r, c) * a.symbols[static_cast<size_t>(c)];
        y[static_cast<size_t>(r)] = acc;
    }
    return y;
}

std::vector<double> transmit_noiseless(const SymbolBlock& a, const TapSet& taps) {
    a.validate();
    taps.validate();
    const int n_sym = a.size();
    const int half = taps.half_span();
    std::vector<double> out(static_cast<size_t>(n_sym), 0.0);
    for (int n = 0; n < n_sym; ++n) {
        double acc = 0.0;
        const int lo = std::max(-half, n - (n_sym - 1));
        const int hi = std::min(half, n);
        for (int l = lo; l <= hi; ++l) {
            acc += taps.at(l) * a.symbols[static_cast<size_t>(n - l)];
        }
        out[static_cast<size_t>(n)] = acc;
    }
    return out;
}

ReceivedBlock add_awgn(const std::vector<double>& clean, double sigma, RngStream& rng) {
    if (sigma < 0.0) throw std::invalid_argument("add_awgn: sigma must be >= 0");
    ReceivedBlock y;
    y.noise_sigma = sigma;
    y.samples.resize(clean.size());
    for (size_t i = 0; i < clean.size(); ++i) {
        y.samples[i] = clean[i] + sigma * rng.gaussian();
    }
    return y;
}

double sigma_from_ebn0(double ebn0_db, double code_rate) {
    if (!(code_rate > 0.0 && code_rate <= 1.0)) {
        throw std::invalid_argument("sigma_from_ebn0: code_rate must be in (0, 1]");
    }
    const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    return std::sqrt(1.0 / (2.0 * code_rate * ebn0));
}

}  // namespace ftnlcc
