#pragma once

#include <cstdint>
#include <vector>

#include "ftnlcc/channel.hpp"
#include "ftnlcc/codebook.hpp"

namespace ftnlcc {

/// The np received samples centered on index i, out-of-range entries 0.
/// values[j] = y[i + j - (np-1)/2]; an even np extends the window one extra
/// sample toward upcoming symbols, matching the codebook alignment.
struct ObservationWindow {
    std::vector<double> values;
    int center_index = 0;
};

/// Per-symbol approximate LLRs, natural-log units, saturated at +-clamp.
/// Bit convention: x_i = 1 <=> a_i = +1.
struct LlrBlock {
    std::vector<double> llrs;
    double clamp = 30.0;
};

/// Online-classification settings. n_l is the number of nearest lattice
/// points kept for the soft output; priors are optional per-symbol L_A
/// values (length N), absent meaning all zero.
struct DetectorConfig {
    int n_l = 8;
    double clamp = 30.0;
    std::vector<double> priors;

    void validate(const Codebook& cb, int block_len) const;
};

/// Work counters for the complexity accounting: one query per symbol, and
/// every query visits all codebook rows.
struct DetectorCounters {
    std::uint64_t queries = 0;
    std::uint64_t rows_scanned = 0;
};

ObservationWindow extract_window(const ReceivedBlock& y, int i, int np);

/// Hard detection: per symbol, the label of the nearest class sample.
SymbolBlock detect_hard(const ReceivedBlock& y, const Codebook& cb, const DetectorConfig& cfg,
                        DetectorCounters* counters = nullptr);

/// Soft detection: per symbol, log-sum-exp of -||o - s'||^2/(2 sigma^2) over
/// the n_l nearest rows of each class (if one class is absent among the n_l,
/// its single nearest row is appended so the ratio stays finite), plus prior
/// terms, clamped to +-cfg.clamp.
LlrBlock detect_soft(const ReceivedBlock& y, const Codebook& cb, const DetectorConfig& cfg,
                     double sigma, DetectorCounters* counters = nullptr);

/// Truncation error eps of the windowed model at symbol i: the full-tap
/// noiseless y_i minus the np-window center term with the same taps, i.e.
/// the ISI contributed by taps outside the window. Diagnostics/tests only.
double window_truncation_error(const SymbolBlock& a, const TapSet& full_taps, int np, int i);

}  // namespace ftnlcc
