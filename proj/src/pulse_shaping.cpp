#include "ftnlcc/pulse_shaping.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace ftnlcc {

namespace {
constexpr double kPi = std::numbers::pi;
}

void RrcParams::validate() const {
    if (!(rolloff >= 0.0 && rolloff <= 1.0)) {
        throw std::invalid_argument("RrcParams: rolloff must be in [0, 1]");
    }
    if (!(symbol_period > 0.0)) {
        throw std::invalid_argument("RrcParams: symbol_period must be > 0");
    }
    if (span < 1) {
        throw std::invalid_argument("RrcParams: span must be >= 1");
    }
}

TapSet TapSet::from_centered(std::vector<double> coeffs, double tau) {
    TapSet t;
    t.taps = std::move(coeffs);
    t.tau = tau;
    t.center_index = t.size() / 2;
    t.validate();
    return t;
}

double TapSet::energy() const {
    double e = 0.0;
    for (double h : taps) e += h * h;
    return e;
}

bool TapSet::is_symmetric(double tol) const {
    for (int n = 1; n <= half_span(); ++n) {
        if (std::abs(at(n) - at(-n)) > tol) return false;
    }
    return true;
}

void TapSet::validate() const {
    if (taps.empty() || taps.size() % 2 == 0) {
        throw std::invalid_argument("TapSet: tap vector must have odd length");
    }
    if (center_index != size() / 2) {
        throw std::invalid_argument("TapSet: center_index must sit mid-vector");
    }
    if (!(tau > 0.0 && tau <= 1.0)) {
        throw std::invalid_argument("TapSet: tau must be in (0, 1]");
    }
    for (double h : taps) {
        if (!std::isfinite(h)) throw std::invalid_argument("TapSet: taps must be finite");
    }
}

double rrc_pulse(const RrcParams& params, double t) {
    params.validate();
    const double T = params.symbol_period;
    const double b = params.rolloff;
    const double x = t / T;  // time in symbol periods
    const double root_t = std::sqrt(T);

    if (std::abs(x) < 1e-10) {
        return (1.0 - b + 4.0 * b / kPi) / root_t;
    }
    if (b > 0.0 && std::abs(std::abs(x) - 1.0 / (4.0 * b)) < 1e-9) {
        const double arg = kPi / (4.0 * b);
        return (b / (root_t * std::sqrt(2.0))) *
               ((1.0 + 2.0 / kPi) * std::sin(arg) + (1.0 - 2.0 / kPi) * std::cos(arg));
    }
    const double num = std::sin(kPi * x * (1.0 - b)) + 4.0 * b * x * std::cos(kPi * x * (1.0 + b));
    const double den = kPi * x * (1.0 - 16.0 * b * b * x * x);
    return num / (den * root_t);
}

TapSet sample_taps(const RrcParams& params, double tau, int span) {
    params.validate();
    const double tau_max = 1.0 / (1.0 + params.rolloff);
    if (!(tau > 0.0) || tau >= tau_max) {
        throw std::invalid_argument(
            "sample_taps: tau must satisfy 0 < tau < 1/(1+rolloff) for the equivalent model");
    }
    if (span < 1) throw std::invalid_argument("sample_taps: span must be >= 1");

    const double T = params.symbol_period;
    const double scale = std::sqrt(tau * T);
    TapSet out;
    out.tau = tau;
    out.center_index = span;
    out.taps.resize(static_cast<size_t>(2 * span + 1));
    for (int n = -span; n <= span; ++n) {
        out.taps[static_cast<size_t>(n + span)] = scale * rrc_pulse(params, n * tau * T);
    }
    return out;
}

TapSet sample_taps(const RrcParams& params, double tau) {
    return sample_taps(params, tau, params.span);
}

TapSet truncate_taps(const TapSet& full, int nt) {
    full.validate();
    if (nt < 1 || nt % 2 == 0) {
        throw std::invalid_argument("truncate_taps: nt must be a positive odd integer");
    }
    if (nt > full.size()) {
        throw std::invalid_argument("truncate_taps: nt exceeds available tap support");
    }
    const int k = (nt - 1) / 2;
    TapSet out;
    out.tau = full.tau;
    out.center_index = k;
    out.taps.assign(full.taps.begin() + (full.center_index - k),
                    full.taps.begin() + (full.center_index + k + 1));
    return out;
}

}  // namespace ftnlcc
