#include "ftnlcc/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ftnlcc {

void DetectorConfig::validate(const Codebook& cb, int block_len) const {
    if (n_l < 1 || static_cast<std::uint64_t>(n_l) > cb.size()) {
        throw std::invalid_argument("DetectorConfig: n_l must be in [1, codebook size]");
    }
    if (!(clamp > 0.0)) throw std::invalid_argument("DetectorConfig: clamp must be > 0");
    if (!priors.empty() && static_cast<int>(priors.size()) != block_len) {
        throw std::invalid_argument("DetectorConfig: priors must be absent or length N");
    }
}

ObservationWindow extract_window(const ReceivedBlock& y, int i, int np) {
    const int n = y.size();
    if (i < 0 || i >= n) throw std::invalid_argument("extract_window: index out of range");
    if (np < 1) throw std::invalid_argument("extract_window: np must be >= 1");
    ObservationWindow w;
    w.center_index = i;
    w.values.assign(static_cast<size_t>(np), 0.0);
    const int c = (np - 1) / 2;
    for (int j = 0; j < np; ++j) {
        const int k = i + j - c;
        if (k >= 0 && k < n) w.values[static_cast<size_t>(j)] = y.samples[static_cast<size_t>(k)];
    }
    return w;
}

namespace {

// Fills the np-sample window centered on i into buf (zero edge fill).
void fill_window(const ReceivedBlock& y, int i, int np, double* buf) {
    const int n = y.size();
    const int c = (np - 1) / 2;
    for (int j = 0; j < np; ++j) {
        const int k = i + j - c;
        buf[j] = (k >= 0 && k < n) ? y.samples[static_cast<size_t>(k)] : 0.0;
    }
}

struct Candidate {
    double d2;
    std::uint64_t index;
};

bool candidate_closer(const Candidate& a, const Candidate& b) {
    return a.d2 < b.d2 || (a.d2 == b.d2 && a.index < b.index);
}

// One scan collecting the n_l nearest rows plus the nearest row of each
// class, so a class missing from the n_l set can be patched in without a
// second pass.
struct SoftScan {
    std::vector<Candidate> heap;  // max-heap via candidate_closer
    Candidate best_pos{std::numeric_limits<double>::infinity(), 0};
    Candidate best_neg{std::numeric_limits<double>::infinity(), 0};
};

void soft_scan(const Codebook& cb, const double* q, int n_l, SoftScan& out) {
    const int np = cb.params.np;
    const std::uint64_t rows = cb.size();
    out.heap.clear();
    out.best_pos = {std::numeric_limits<double>::infinity(), 0};
    out.best_neg = {std::numeric_limits<double>::infinity(), 0};
    const double* s = cb.samples.data();
    for (std::uint64_t r = 0; r < rows; ++r, s += np) {
        const bool full = out.heap.size() == static_cast<size_t>(n_l);
        double limit = full ? out.heap.front().d2 : std::numeric_limits<double>::infinity();
        const Candidate& class_best = cb.label(r) > 0 ? out.best_pos : out.best_neg;
        limit = std::max(limit, class_best.d2);
        double acc = 0.0;
        int j = 0;
        for (; j < np; ++j) {
            const double d = q[j] - s[j];
            acc += d * d;
            if (acc > limit) break;
        }
        if (j < np) continue;
        const Candidate cand{acc, r};
        if (cb.label(r) > 0) {
            if (candidate_closer(cand, out.best_pos)) out.best_pos = cand;
        } else {
            if (candidate_closer(cand, out.best_neg)) out.best_neg = cand;
        }
        if (!full) {
            out.heap.push_back(cand);
            std::push_heap(out.heap.begin(), out.heap.end(), candidate_closer);
        } else if (candidate_closer(cand, out.heap.front())) {
            std::pop_heap(out.heap.begin(), out.heap.end(), candidate_closer);
            out.heap.back() = cand;
            std::push_heap(out.heap.begin(), out.heap.end(), candidate_closer);
        }
    }
}

// Joint prior weight of a candidate window: sum of L_A over the window
// positions whose bit is 1, mapped to absolute symbol indices. Reduces to
// the Eq.-form prior sum and vanishes for zero priors.
double prior_weight(const Codebook& cb, const std::vector<double>& priors, int i,
                    std::uint64_t row) {
    if (priors.empty()) return 0.0;
    const int w_len = cb.params.window_len();
    const int label_pos = cb.params.label_pos();
    const int n = static_cast<int>(priors.size());
    double acc = 0.0;
    for (int pos = 0; pos < w_len; ++pos) {
        if (cb.window_symbol(row, pos) < 0) continue;
        const int abs_idx = i + pos - label_pos;
        if (abs_idx >= 0 && abs_idx < n) acc += priors[static_cast<size_t>(abs_idx)];
    }
    return acc;
}

}  // namespace

SymbolBlock detect_hard(const ReceivedBlock& y, const Codebook& cb, const DetectorConfig& cfg,
                        DetectorCounters* counters) {
    cfg.validate(cb, y.size());
    if (y.size() < 1) throw std::invalid_argument("detect_hard: empty block");
    const int n = y.size();
    const int np = cb.params.np;
    SymbolBlock out;
    out.symbols.resize(static_cast<size_t>(n));
    std::vector<double> window(static_cast<size_t>(np));
    for (int i = 0; i < n; ++i) {
        fill_window(y, i, np, window.data());
        std::uint64_t* scans = counters != nullptr ? &counters->rows_scanned : nullptr;
        const NnResult nn = nearest_neighbor(cb, window, scans);
        out.symbols[static_cast<size_t>(i)] = static_cast<std::int8_t>(nn.label);
        if (counters != nullptr) ++counters->queries;
    }
    return out;
}

LlrBlock detect_soft(const ReceivedBlock& y, const Codebook& cb, const DetectorConfig& cfg,
                     double sigma, DetectorCounters* counters) {
    cfg.validate(cb, y.size());
    if (!(sigma > 0.0)) throw std::invalid_argument("detect_soft: sigma must be > 0");
    const int n = y.size();
    const int np = cb.params.np;
    const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);

    LlrBlock out;
    out.clamp = cfg.clamp;
    out.llrs.resize(static_cast<size_t>(n));

    std::vector<double> window(static_cast<size_t>(np));
    SoftScan scan;
    scan.heap.reserve(static_cast<size_t>(cfg.n_l));
    std::vector<Candidate> cands;
    cands.reserve(static_cast<size_t>(cfg.n_l) + 1);

    for (int i = 0; i < n; ++i) {
        fill_window(y, i, np, window.data());
        soft_scan(cb, window.data(), cfg.n_l, scan);
        if (counters != nullptr) {
            ++counters->queries;
            counters->rows_scanned += cb.size();
        }

        cands.assign(scan.heap.begin(), scan.heap.end());
        bool has_pos = false, has_neg = false;
        for (const auto& c : cands) (cb.label(c.index) > 0 ? has_pos : has_neg) = true;
        // Eq.-style ratio needs at least one candidate per class.
        if (!has_pos) cands.push_back(scan.best_pos);
        if (!has_neg) cands.push_back(scan.best_neg);

        double max_pos = -std::numeric_limits<double>::infinity();
        double max_neg = -std::numeric_limits<double>::infinity();
        for (const auto& c : cands) {
            const double w = -c.d2 * inv_two_sigma2 + prior_weight(cb, cfg.priors, i, c.index);
            (cb.label(c.index) > 0 ? max_pos : max_neg) = std::max(
                cb.label(c.index) > 0 ? max_pos : max_neg, w);
        }
        double sum_pos = 0.0, sum_neg = 0.0;
        for (const auto& c : cands) {
            const double w = -c.d2 * inv_two_sigma2 + prior_weight(cb, cfg.priors, i, c.index);
            if (cb.label(c.index) > 0) {
                sum_pos += std::exp(w - max_pos);
            } else {
                sum_neg += std::exp(w - max_neg);
            }
        }
        const double llr = (max_pos + std::log(sum_pos)) - (max_neg + std::log(sum_neg));
        out.llrs[static_cast<size_t>(i)] = std::clamp(llr, -cfg.clamp, cfg.clamp);
    }
    return out;
}

double window_truncation_error(const SymbolBlock& a, const TapSet& full_taps, int np, int i) {
    a.validate();
    full_taps.validate();
    if (np < 1) throw std::invalid_argument("window_truncation_error: np must be >= 1");
    if (i < 0 || i >= a.size()) throw std::invalid_argument("window_truncation_error: index out of range");
    const int half_window = (np - 1) / 2;
    const int n = a.size();
    double eps = 0.0;
    for (int l = -full_taps.half_span(); l <= full_taps.half_span(); ++l) {
        if (std::abs(l) <= half_window) continue;  // inside the window model
        const int k = i - l;
        if (k >= 0 && k < n) eps += full_taps.at(l) * a.symbols[static_cast<size_t>(k)];
    }
    return eps;
}

}  // namespace ftnlcc
