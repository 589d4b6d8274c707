#pragma once

#include <vector>

#include "ftnlcc/channel.hpp"

namespace ftnlcc {

/// Exact per-bit APP LLRs from full 2^N enumeration, plus the log evidence
/// ln sum_x p(y|x) P(x) as a cross-check diagnostic.
struct ExactLlrResult {
    std::vector<double> llrs;
    double log_evidence = 0.0;
};

/// Brute-force APP LLRs over every symbol vector, using the full tap matrix
/// H and Gaussian likelihood exp(-||y - Ha||^2 / (2 sigma^2)); log-sum-exp
/// stabilized. N is capped at 20. Priors are per-bit L_A values (default 0).
ExactLlrResult exact_llr(const ReceivedBlock& y, const TapSet& taps, double sigma,
                         const std::vector<double>& priors = {});

/// Brute-force ML sequence: argmin over all 2^N of ||y - Ha||^2, ties to the
/// lowest binary index (symbol -1 -> bit 0, MSB first). N capped at 20.
SymbolBlock exact_ml_sequence(const ReceivedBlock& y, const TapSet& taps);

}  // namespace ftnlcc
