#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ftnlcc/pulse_shaping.hpp"

namespace ftnlcc {

/// Parameters of the offline pre-classification stage: observation window
/// length np, dominant tap count nt (odd), and the truncated taps used to
/// generate class samples. np may be even for distance diagnostics (the
/// window then extends one extra sample toward upcoming symbols); online
/// detection requires odd np.
struct CodebookParams {
    int np = 7;
    int nt = 3;
    TapSet taps;
    int max_window_bits = 26;  // enumeration cap on np+nt-1

    int window_len() const { return np + nt - 1; }
    std::uint64_t rows() const { return std::uint64_t{1} << window_len(); }
    /// Window position of the symbol a class sample is labeled with.
    int label_pos() const { return (np - 1) / 2 + (nt - 1) / 2; }
    void validate() const;
};

/// One nearest-neighbor answer: codebook row, its class label, Euclidean
/// distance to the query.
struct NnResult {
    std::uint64_t index = 0;
    int label = 0;
    double distance = 0.0;
};

/// The labeled class-sample set: all 2^(np+nt-1) symbol windows (stored as
/// their row index bit pattern, -1 -> 0, +1 -> 1, window read MSB-first) and
/// their np-dimensional noiseless outputs under the truncated taps. Rows are
/// in ascending bit-pattern order, so the layout is canonical and cacheable.
/// Immutable after build; concurrent read-only queries are safe.
class Codebook {
  public:
    CodebookParams params;
    std::vector<double> samples;      // row-major, rows() x np
    std::vector<std::int8_t> labels;  // center-symbol label of each row

    std::uint64_t size() const { return labels.size(); }
    const double* row(std::uint64_t r) const { return samples.data() + r * static_cast<std::uint64_t>(params.np); }
    int label(std::uint64_t r) const { return labels[r]; }
    /// Symbol (+-1) at window position pos of row r's generating window.
    int window_symbol(std::uint64_t r, int pos) const {
        const int bit = params.window_len() - 1 - pos;
        return ((r >> bit) & 1u) ? 1 : -1;
    }
};

/// Exhaustive enumeration of all windows in canonical order.
Codebook build_codebook(const CodebookParams& params);

/// Exact exhaustive scan; ties broken toward the lowest row index. If
/// rows_scanned is given it is incremented by the number of rows visited.
NnResult nearest_neighbor(const Codebook& cb, std::span<const double> query,
                          std::uint64_t* rows_scanned = nullptr);

/// The k smallest-distance rows in non-decreasing (distance, index) order.
std::vector<NnResult> k_nearest(const Codebook& cb, std::span<const double> query, int k,
                                std::uint64_t* rows_scanned = nullptr);

/// Minimum Euclidean distance between samples of opposite label. Computed
/// exactly by a dynamic program over symbol-difference patterns (the class
/// geometry is a lattice, so the bichromatic closest pair reduces to
/// 2 * min over v in {-1,0,1}^W, v[label_pos]=+1, of ||conv(v)||).
double min_interclass_distance(const Codebook& cb);

/// Literal all-pairs scan of the same quantity; O(rows^2), verification use.
double min_interclass_distance_scan(const Codebook& cb);

/// Binary cache: magic "FTNLCC", u16 version, u32 np, u32 nt, u32 tap count,
/// taps as little-endian f64, then row-major samples. Labels are implicit in
/// the row index. The tau of the generating TapSet is not part of the format;
/// loaded codebooks carry tau=1.0.
void save_codebook(const Codebook& cb, const std::string& path);
Codebook load_codebook(const std::string& path);

}  // namespace ftnlcc
