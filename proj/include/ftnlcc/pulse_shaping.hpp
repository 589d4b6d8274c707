#pragma once

#include <vector>

namespace ftnlcc {

/// Root-raised-cosine pulse parameters. symbol_period is T; span is the
/// one-sided tap support, in tau*T steps, used when sampling the pulse.
struct RrcParams {
    double rolloff = 0.35;
    double symbol_period = 1.0;
    int span = 40;

    void validate() const;
};

/// Discrete ISI coefficients h_n of the equivalent FTN model, indexed
/// n = -L..L around center_index. RRC-derived sets are even-symmetric with
/// h_0 the dominant tap and approximately unit energy.
struct TapSet {
    std::vector<double> taps;
    double tau = 1.0;
    int center_index = 0;

    /// Wraps an odd-length, center-aligned coefficient vector.
    static TapSet from_centered(std::vector<double> coeffs, double tau = 1.0);

    int half_span() const { return center_index; }
    int size() const { return static_cast<int>(taps.size()); }
    /// h_n for n in [-half_span, half_span]; 0 outside.
    double at(int n) const {
        const int k = center_index + n;
        return (k < 0 || k >= size()) ? 0.0 : taps[static_cast<size_t>(k)];
    }
    double energy() const;
    bool is_symmetric(double tol = 1e-12) const;

    void validate() const;
};

/// Unit-energy RRC pulse h(t). The removable singularities at t = 0 and
/// t = +-T/(4*rolloff) use their closed-form limits.
double rrc_pulse(const RrcParams& params, double t);

/// Equivalent-model taps h_n = sqrt(tau*T) * h(n*tau*T), n = -span..span.
/// Requires tau < 1/(1+rolloff) or the equivalent model does not hold.
TapSet sample_taps(const RrcParams& params, double tau, int span);
TapSet sample_taps(const RrcParams& params, double tau);

/// Keeps the nt taps centered on h_0 and drops the rest. No renormalization:
/// truncation models a receiver-side approximation, the channel keeps the
/// full set. nt must be odd and within the available support.
TapSet truncate_taps(const TapSet& full, int nt);

}  // namespace ftnlcc
