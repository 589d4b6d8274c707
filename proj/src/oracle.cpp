#include "ftnlcc/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ftnlcc {

namespace {

constexpr int kMaxEnumeration = 20;

// Streaming log-sum-exp accumulator.
struct OnlineLse {
    double max_term = -std::numeric_limits<double>::infinity();
    double sum = 0.0;

    void add(double x) {
        if (x > max_term) {
            sum = sum * std::exp(max_term - x) + 1.0;
            max_term = x;
        } else {
            sum += std::exp(x - max_term);
        }
    }
    double value() const { return max_term + std::log(sum); }
};

double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

// Candidate index -> symbols, MSB-first (bit N-1-k set <=> a_k = +1).
void decode_candidate(std::uint64_t idx, int n, std::int8_t* a) {
    for (int k = 0; k < n; ++k) a[k] = ((idx >> (n - 1 - k)) & 1u) ? 1 : -1;
}

double squared_residual(const std::vector<double>& y, const TapSet& taps, const std::int8_t* a) {
    const int n = static_cast<int>(y.size());
    const int half = taps.half_span();
    double acc = 0.0;
    for (int r = 0; r < n; ++r) {
        double mean = 0.0;
        const int lo = std::max(-half, r - (n - 1));
        const int hi = std::min(half, r);
        for (int l = lo; l <= hi; ++l) mean += taps.at(l) * a[r - l];
        const double d = y[static_cast<size_t>(r)] - mean;
        acc += d * d;
    }
    return acc;
}

}  // namespace

ExactLlrResult exact_llr(const ReceivedBlock& y, const TapSet& taps, double sigma,
                         const std::vector<double>& priors) {
    taps.validate();
    const int n = y.size();
    if (n < 1) throw std::invalid_argument("exact_llr: empty block");
    if (n > kMaxEnumeration) throw std::invalid_argument("exact_llr: N exceeds the 2^20 enumeration cap");
    if (!(sigma > 0.0)) throw std::invalid_argument("exact_llr: sigma must be > 0");
    if (!priors.empty() && static_cast<int>(priors.size()) != n) {
        throw std::invalid_argument("exact_llr: priors must be absent or length N");
    }

    const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);
    std::vector<OnlineLse> pos(static_cast<size_t>(n)), neg(static_cast<size_t>(n));
    OnlineLse evidence;
    std::vector<std::int8_t> a(static_cast<size_t>(n));

    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        decode_candidate(idx, n, a.data());
        double ll = -squared_residual(y.samples, taps, a.data()) * inv_two_sigma2;
        if (!priors.empty()) {
            for (int k = 0; k < n; ++k) {
                if (a[static_cast<size_t>(k)] > 0) ll += priors[static_cast<size_t>(k)];
            }
        }
        for (int k = 0; k < n; ++k) {
            (a[static_cast<size_t>(k)] > 0 ? pos : neg)[static_cast<size_t>(k)].add(ll);
        }
        evidence.add(ll);
    }

    ExactLlrResult out;
    out.llrs.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        out.llrs[static_cast<size_t>(k)] =
            pos[static_cast<size_t>(k)].value() - neg[static_cast<size_t>(k)].value();
    }
    // ln sum_x p(y|x) P(x), with the literal (2 pi sigma^2)^N likelihood
    // normalizer and P(x) from the priors (uniform when absent).
    double log_prior_norm = 0.0;
    for (int k = 0; k < n; ++k) {
        log_prior_norm += priors.empty() ? std::numbers::ln2 : softplus(priors[static_cast<size_t>(k)]);
    }
    out.log_evidence =
        evidence.value() - n * std::log(2.0 * std::numbers::pi * sigma * sigma) - log_prior_norm;
    return out;
}

SymbolBlock exact_ml_sequence(const ReceivedBlock& y, const TapSet& taps) {
    taps.validate();
    const int n = y.size();
    if (n < 1) throw std::invalid_argument("exact_ml_sequence: empty block");
    if (n > kMaxEnumeration) {
        throw std::invalid_argument("exact_ml_sequence: N exceeds the 2^20 enumeration cap");
    }
    std::vector<std::int8_t> a(static_cast<size_t>(n));
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t best_idx = 0;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        decode_candidate(idx, n, a.data());
        const double d2 = squared_residual(y.samples, taps, a.data());
        if (d2 < best) {  // ascending scan: lowest binary index wins ties
            best = d2;
            best_idx = idx;
        }
    }
    SymbolBlock out;
    out.symbols.resize(static_cast<size_t>(n));
    decode_candidate(best_idx, n, out.symbols.data());
    return out;
}

}  // namespace ftnlcc
