#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ftnlcc/codebook.hpp"
#include "ftnlcc/detector.hpp"

namespace ftnlcc {

/// Full experiment configuration. Defaults are the desk-scale test profile
/// (np=7, nt=3, N=200); the paper-scale profile is np=13/15, nt=5/7, N=1000.
struct SimConfig {
    double tau = 0.6;
    double rolloff_h = 0.35;
    double rolloff_v = 0.12;  // receive-basis roll-off, recorded as metadata only
    int block_len = 200;
    int np = 7;
    int nt = 3;
    int n_l = 8;
    std::vector<double> ebn0_db_list = {0, 2, 4, 6, 8};
    bool coded = false;
    std::uint64_t master_seed = 1;
    std::uint64_t max_blocks = 10000;
    std::uint64_t min_bit_errors = 100;
    bool edge_exclusion = true;
    double llr_clamp = 30.0;
    int span = 40;
    int threads = 0;  // 0 = hardware concurrency
    std::string cache_dir;  // empty = no codebook cache

    void validate() const;
    /// Full-span channel taps for this config.
    TapSet channel_taps() const;
    /// Receiver codebook parameters (truncated taps).
    CodebookParams codebook_params() const;
};

/// One (Eb/N0, BER, FER, counters) result row.
struct BerPoint {
    double ebn0_db = 0.0;
    std::uint64_t bit_errors = 0;
    std::uint64_t bits_counted = 0;
    std::uint64_t block_errors = 0;
    std::uint64_t blocks = 0;
    double ber = 0.0;
    double fer = 0.0;
    std::uint64_t distance_scans = 0;
    double wall_time = 0.0;
};

/// Uncoded Monte Carlo sweep: random +-1 blocks, full-tap transmission, AWGN
/// at rate-1 Eb/N0 calibration, LCC hard detection. Stops each point at
/// min(max_blocks, min_bit_errors reached at a 16-block chunk boundary).
/// Deterministic for a fixed master_seed regardless of thread count.
std::vector<BerPoint> run_uncoded_sweep(const SimConfig& cfg);
std::vector<BerPoint> run_uncoded_sweep(const SimConfig& cfg, const Codebook& cb);

/// Coded sweep: N/2 - 6 info bits -> (7,[171 133]) encoder -> BPSK -> FTN ->
/// AWGN at rate-1/2 calibration -> LCC soft output -> Viterbi; info-bit
/// errors are counted.
std::vector<BerPoint> run_coded_sweep(const SimConfig& cfg);
std::vector<BerPoint> run_coded_sweep(const SimConfig& cfg, const Codebook& cb);

/// Minimum class distance as a function of np at fixed nt.
std::vector<std::pair<int, double>> distance_profile(const SimConfig& cfg,
                                                     const std::vector<int>& np_range);

/// Builds the receiver codebook, or loads/saves it via cfg.cache_dir when
/// set (key: tau, rolloff_h, np, nt, span).
Codebook obtain_codebook(const SimConfig& cfg);
std::string codebook_cache_path(const SimConfig& cfg);

/// Plot-ready CSV with the configuration echoed as '#' comment lines.
/// Byte-stable for a fixed config and seed except the wall_time column.
std::string sweep_csv(const SimConfig& cfg, const std::vector<BerPoint>& points);
std::string distance_csv(const SimConfig& cfg, const std::vector<std::pair<int, double>>& profile);

/// Applies "key=value" settings (the CSV echo keys); throws on unknown keys
/// or malformed values.
void apply_key_value(SimConfig& cfg, const std::string& key, const std::string& value);
void apply_config_file(SimConfig& cfg, const std::string& path);

}  // namespace ftnlcc
