#include "ftnlcc/codebook.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace ftnlcc {

void CodebookParams::validate() const {
    if (np < 1) throw std::invalid_argument("CodebookParams: np must be >= 1");
    if (nt < 1 || nt % 2 == 0) throw std::invalid_argument("CodebookParams: nt must be odd and >= 1");
    taps.validate();
    if (taps.size() != nt) {
        throw std::invalid_argument("CodebookParams: taps must be truncated to exactly nt coefficients");
    }
    if (window_len() > max_window_bits) {
        throw std::invalid_argument("CodebookParams: 2^(np+nt-1) rows exceed the enumeration cap");
    }
}

Codebook build_codebook(const CodebookParams& params) {
    params.validate();
    const int np = params.np;
    const int nt = params.nt;
    const int w_len = params.window_len();
    const std::uint64_t rows = params.rows();
    const int label_pos = params.label_pos();
    const int label_bit = w_len - 1 - label_pos;

    // Coefficients applied to the window slice [jj, jj+nt): position jj+t
    // sits at tap offset (nt-1)/2 - t from the sample's own symbol.
    std::vector<double> g(static_cast<size_t>(nt));
    for (int t = 0; t < nt; ++t) g[static_cast<size_t>(t)] = params.taps.at((nt - 1) / 2 - t);

    Codebook cb;
    cb.params = params;
    cb.samples.resize(rows * static_cast<std::uint64_t>(np));
    cb.labels.resize(rows);

    std::vector<double> w(static_cast<size_t>(w_len));
    for (std::uint64_t r = 0; r < rows; ++r) {
        for (int pos = 0; pos < w_len; ++pos) {
            w[static_cast<size_t>(pos)] = ((r >> (w_len - 1 - pos)) & 1u) ? 1.0 : -1.0;
        }
        double* out = cb.samples.data() + r * static_cast<std::uint64_t>(np);
        for (int jj = 0; jj < np; ++jj) {
            double acc = 0.0;
            for (int t = 0; t < nt; ++t) acc += g[static_cast<size_t>(t)] * w[static_cast<size_t>(jj + t)];
            out[jj] = acc;
        }
        cb.labels[r] = ((r >> label_bit) & 1u) ? 1 : -1;
    }
    return cb;
}

NnResult nearest_neighbor(const Codebook& cb, std::span<const double> query,
                          std::uint64_t* rows_scanned) {
    const int np = cb.params.np;
    if (static_cast<int>(query.size()) != np) {
        throw std::invalid_argument("nearest_neighbor: query length must equal np");
    }
    const std::uint64_t rows = cb.size();
    double best_d2 = std::numeric_limits<double>::infinity();
    std::uint64_t best = 0;
    const double* s = cb.samples.data();
    for (std::uint64_t r = 0; r < rows; ++r, s += np) {
        double acc = 0.0;
        int j = 0;
        for (; j < np; ++j) {
            const double d = query[static_cast<size_t>(j)] - s[j];
            acc += d * d;
            if (acc > best_d2) break;  // cannot beat or tie the incumbent
        }
        if (j == np && acc < best_d2) {  // ascending scan keeps the lowest index on ties
            best_d2 = acc;
            best = r;
        }
    }
    if (rows_scanned != nullptr) *rows_scanned += rows;
    return {best, cb.label(best), std::sqrt(std::max(0.0, best_d2))};
}

namespace {

struct HeapEntry {
    double d2;
    std::uint64_t index;
};

// "worse" ordering: larger distance first, larger index first on ties.
bool heap_before(const HeapEntry& a, const HeapEntry& b) {
    return a.d2 < b.d2 || (a.d2 == b.d2 && a.index < b.index);
}

}  // namespace

std::vector<NnResult> k_nearest(const Codebook& cb, std::span<const double> query, int k,
                                std::uint64_t* rows_scanned) {
    const int np = cb.params.np;
    if (static_cast<int>(query.size()) != np) {
        throw std::invalid_argument("k_nearest: query length must equal np");
    }
    if (k < 1 || static_cast<std::uint64_t>(k) > cb.size()) {
        throw std::invalid_argument("k_nearest: k out of range");
    }
    const std::uint64_t rows = cb.size();
    std::vector<HeapEntry> heap;
    heap.reserve(static_cast<size_t>(k));
    const double* s = cb.samples.data();
    for (std::uint64_t r = 0; r < rows; ++r, s += np) {
        const bool full = heap.size() == static_cast<size_t>(k);
        const double limit = full ? heap.front().d2 : std::numeric_limits<double>::infinity();
        double acc = 0.0;
        int j = 0;
        for (; j < np; ++j) {
            const double d = query[static_cast<size_t>(j)] - s[j];
            acc += d * d;
            if (acc > limit) break;
        }
        if (j < np) continue;
        const HeapEntry cand{acc, r};
        if (!full) {
            heap.push_back(cand);
            std::push_heap(heap.begin(), heap.end(), heap_before);
        } else if (heap_before(cand, heap.front())) {
            std::pop_heap(heap.begin(), heap.end(), heap_before);
            heap.back() = cand;
            std::push_heap(heap.begin(), heap.end(), heap_before);
        }
    }
    std::sort(heap.begin(), heap.end(), heap_before);
    std::vector<NnResult> out;
    out.reserve(heap.size());
    for (const auto& e : heap) {
        out.push_back({e.index, cb.label(e.index), std::sqrt(std::max(0.0, e.d2))});
    }
    if (rows_scanned != nullptr) *rows_scanned += rows;
    return out;
}

double min_interclass_distance(const Codebook& cb) {
    const CodebookParams& p = cb.params;
    p.validate();
    const int nt = p.nt;
    const int w_len = p.window_len();
    const int label_pos = p.label_pos();
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> g(static_cast<size_t>(nt));
    for (int t = 0; t < nt; ++t) g[static_cast<size_t>(t)] = p.taps.at((nt - 1) / 2 - t);

    // Any pair of opposite-label windows differs by a pattern 2v with
    // v in {-1,0,+1}^W, v[label_pos] = +1, and every such v is realized by
    // some pair. The pair distance is 2*||conv(v)||, so minimizing the sum
    // of squared window dot products over v gives the exact class distance.
    // DP state: the last nt-1 symbols, ternary-coded, most recent digit
    // first; a window's cost is added when its last symbol is placed.
    std::size_t n_states = 1;
    for (int i = 0; i < nt - 1; ++i) n_states *= 3;
    const std::size_t keep = n_states >= 3 ? n_states / 3 : 1;

    // Partial dot product of g with the nt-1 state symbols, oldest aligned
    // to the window start; valid once nt-1 real symbols are in the state.
    std::vector<double> partial(n_states, 0.0);
    for (std::size_t st = 0; st < n_states; ++st) {
        double acc = 0.0;
        std::size_t code = st;
        for (int m = 0; m < nt - 1; ++m) {  // digit m = symbol placed m+1 steps ago
            const int sym = static_cast<int>(code % 3) - 1;
            code /= 3;
            acc += g[static_cast<size_t>(nt - 2 - m)] * sym;
        }
        partial[st] = acc;
    }

    std::vector<double> dp(n_states, inf), next(n_states, inf);
    {
        const bool fixed = (0 == label_pos);
        for (int v = -1; v <= 1; ++v) {
            if (fixed && v != 1) continue;
            const std::size_t st = nt > 1 ? static_cast<std::size_t>(v + 1) : 0;
            const double cost = nt == 1 ? (g[0] * v) * (g[0] * v) : 0.0;
            dp[st] = std::min(dp[st], cost);
        }
    }
    for (int pos = 1; pos < w_len; ++pos) {
        std::fill(next.begin(), next.end(), inf);
        const bool fixed = (pos == label_pos);
        for (std::size_t st = 0; st < n_states; ++st) {
            const double base = dp[st];
            if (base == inf) continue;
            for (int v = -1; v <= 1; ++v) {
                if (fixed && v != 1) continue;
                double add = 0.0;
                if (pos >= nt - 1) {
                    const double dot = (nt > 1 ? partial[st] : 0.0) + g[static_cast<size_t>(nt - 1)] * v;
                    add = dot * dot;
                }
                const std::size_t nst =
                    nt > 1 ? static_cast<std::size_t>(v + 1) + 3 * (st % keep) : 0;
                const double cand = base + add;
                if (cand < next[nst]) next[nst] = cand;
            }
        }
        dp.swap(next);
    }
    const double best = *std::min_element(dp.begin(), dp.end());
    return 2.0 * std::sqrt(best);
}

double min_interclass_distance_scan(const Codebook& cb) {
    const std::uint64_t rows = cb.size();
    if (rows == 0) throw std::invalid_argument("min_interclass_distance_scan: empty codebook");
    if (cb.params.window_len() > 13) {
        throw std::invalid_argument("min_interclass_distance_scan: instance too large for the pair scan");
    }
    const int np = cb.params.np;
    bool has_pos = false, has_neg = false;
    for (std::uint64_t r = 0; r < rows; ++r) {
        (cb.label(r) > 0 ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) {
        throw std::invalid_argument("min_interclass_distance_scan: both classes must be present");
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < rows; ++i) {
        if (cb.label(i) <= 0) continue;
        const double* si = cb.row(i);
        for (std::uint64_t j = 0; j < rows; ++j) {
            if (cb.label(j) > 0) continue;
            const double* sj = cb.row(j);
            double acc = 0.0;
            for (int c = 0; c < np; ++c) {
                const double d = si[c] - sj[c];
                acc += d * d;
                if (acc >= best) break;
            }
            best = std::min(best, acc);
        }
    }
    return std::sqrt(best);
}

namespace {

constexpr char kMagic[6] = {'F', 'T', 'N', 'L', 'C', 'C'};
constexpr std::uint16_t kVersion = 1;

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, sizeof bits);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

class Reader {
  public:
    Reader(const char* data, size_t n) : p_(data), end_(data + n) {}
    std::uint16_t u16() { return static_cast<std::uint16_t>(byte() | (byte() << 8)); }
    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(byte()) << (8 * i);
        return v;
    }
    double f64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(byte()) << (8 * i);
        double d;
        std::memcpy(&d, &v, sizeof d);
        return d;
    }
    void raw(char* dst, size_t n) {
        if (static_cast<size_t>(end_ - p_) < n) throw std::runtime_error("codebook cache: truncated file");
        std::memcpy(dst, p_, n);
        p_ += n;
    }
    bool exhausted() const { return p_ == end_; }

  private:
    unsigned byte() {
        if (p_ == end_) throw std::runtime_error("codebook cache: truncated file");
        return static_cast<unsigned char>(*p_++);
    }
    const char* p_;
    const char* end_;
};

}  // namespace

void save_codebook(const Codebook& cb, const std::string& path) {
    std::string buf;
    buf.reserve(32 + cb.samples.size() * 8 + static_cast<size_t>(cb.params.nt) * 8);
    buf.append(kMagic, sizeof kMagic);
    put_u16(buf, kVersion);
    put_u32(buf, static_cast<std::uint32_t>(cb.params.np));
    put_u32(buf, static_cast<std::uint32_t>(cb.params.nt));
    put_u32(buf, static_cast<std::uint32_t>(cb.params.taps.size()));
    for (double h : cb.params.taps.taps) put_f64(buf, h);
    for (double s : cb.samples) put_f64(buf, s);

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("save_codebook: cannot open " + path);
    f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!f) throw std::runtime_error("save_codebook: write failed for " + path);
}

Codebook load_codebook(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("load_codebook: cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    Reader r(buf.data(), buf.size());

    char magic[6];
    r.raw(magic, sizeof magic);
    if (std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
        throw std::runtime_error("load_codebook: bad magic in " + path);
    }
    if (r.u16() != kVersion) throw std::runtime_error("load_codebook: unsupported format version");

    CodebookParams p;
    p.np = static_cast<int>(r.u32());
    p.nt = static_cast<int>(r.u32());
    const std::uint32_t n_taps = r.u32();
    std::vector<double> taps(n_taps);
    for (auto& h : taps) h = r.f64();
    p.taps = TapSet::from_centered(std::move(taps));
    p.validate();

    Codebook cb;
    cb.params = p;
    const std::uint64_t rows = p.rows();
    cb.samples.resize(rows * static_cast<std::uint64_t>(p.np));
    for (auto& s : cb.samples) s = r.f64();
    if (!r.exhausted()) throw std::runtime_error("load_codebook: trailing bytes in " + path);

    const int label_bit = p.window_len() - 1 - p.label_pos();
    cb.labels.resize(rows);
    for (std::uint64_t i = 0; i < rows; ++i) cb.labels[i] = ((i >> label_bit) & 1u) ? 1 : -1;
    return cb;
}

}  // namespace ftnlcc
