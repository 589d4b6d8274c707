#include "ftnlcc/sim.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ftnlcc/fec.hpp"
#include "ftnlcc/rng.hpp"

namespace ftnlcc {

namespace {

// Stop rules are evaluated at fixed chunk boundaries so results do not
// depend on the worker count.
constexpr std::uint64_t kChunkBlocks = 16;

struct BlockTally {
    std::uint64_t bit_errors = 0;
    std::uint64_t bits = 0;
    bool block_error = false;
    std::uint64_t scans = 0;
};

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

template <typename SimulateBlock>
BerPoint run_point(const SimConfig& cfg, double ebn0_db, const SimulateBlock& simulate) {
    const auto start = std::chrono::steady_clock::now();
    const int n_threads = resolve_threads(cfg.threads);

    BerPoint pt;
    pt.ebn0_db = ebn0_db;
    std::vector<BlockTally> chunk(kChunkBlocks);
    while (pt.blocks < cfg.max_blocks && pt.bit_errors < cfg.min_bit_errors) {
        const std::uint64_t todo = std::min<std::uint64_t>(kChunkBlocks, cfg.max_blocks - pt.blocks);
        const std::uint64_t base = pt.blocks;
        if (n_threads == 1 || todo == 1) {
            for (std::uint64_t j = 0; j < todo; ++j) chunk[j] = simulate(base + j);
        } else {
            std::vector<std::thread> workers;
            const int used = static_cast<int>(std::min<std::uint64_t>(n_threads, todo));
            workers.reserve(static_cast<size_t>(used));
            for (int w = 0; w < used; ++w) {
                workers.emplace_back([&, w] {
                    for (std::uint64_t j = static_cast<std::uint64_t>(w); j < todo;
                         j += static_cast<std::uint64_t>(used)) {
                        chunk[j] = simulate(base + j);
                    }
                });
            }
            for (auto& t : workers) t.join();
        }
        for (std::uint64_t j = 0; j < todo; ++j) {
            pt.bit_errors += chunk[j].bit_errors;
            pt.bits_counted += chunk[j].bits;
            pt.block_errors += chunk[j].block_error ? 1 : 0;
            pt.distance_scans += chunk[j].scans;
            ++pt.blocks;
        }
    }
    pt.ber = pt.bits_counted > 0 ? static_cast<double>(pt.bit_errors) / static_cast<double>(pt.bits_counted) : 0.0;
    pt.fer = pt.blocks > 0 ? static_cast<double>(pt.block_errors) / static_cast<double>(pt.blocks) : 0.0;
    pt.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return pt;
}

}  // namespace

void SimConfig::validate() const {
    if (!(rolloff_h >= 0.0 && rolloff_h <= 1.0) || !(rolloff_v >= 0.0 && rolloff_v <= 1.0)) {
        throw std::invalid_argument("SimConfig: roll-offs must be in [0, 1]");
    }
    if (!(tau > 0.0) || tau >= 1.0 / (1.0 + rolloff_h)) {
        throw std::invalid_argument("SimConfig: tau must satisfy 0 < tau < 1/(1+rolloff_h)");
    }
    if (block_len < 1) throw std::invalid_argument("SimConfig: block_len must be >= 1");
    if (np < 1 || np % 2 == 0) throw std::invalid_argument("SimConfig: np must be odd and >= 1");
    if (nt < 1 || nt % 2 == 0) throw std::invalid_argument("SimConfig: nt must be odd and >= 1");
    if (n_l < 1) throw std::invalid_argument("SimConfig: n_l must be >= 1");
    if (ebn0_db_list.empty()) throw std::invalid_argument("SimConfig: ebn0_db_list must be non-empty");
    if (max_blocks < 1 || min_bit_errors < 1) {
        throw std::invalid_argument("SimConfig: stop rules must be positive");
    }
    if (!(llr_clamp > 0.0)) throw std::invalid_argument("SimConfig: llr_clamp must be > 0");
    if (span < 1) throw std::invalid_argument("SimConfig: span must be >= 1");
    if (threads < 0) throw std::invalid_argument("SimConfig: threads must be >= 0");
    if (coded) {
        const ConvCode code;
        if (block_len % 2 != 0 || block_len / 2 <= code.memory()) {
            throw std::invalid_argument("SimConfig: coded runs need an even block_len > 2*(K-1)");
        }
    }
}

TapSet SimConfig::channel_taps() const {
    RrcParams p;
    p.rolloff = rolloff_h;
    p.symbol_period = 1.0;
    p.span = span;
    return sample_taps(p, tau, span);
}

CodebookParams SimConfig::codebook_params() const {
    CodebookParams p;
    p.np = np;
    p.nt = nt;
    p.taps = truncate_taps(channel_taps(), nt);
    return p;
}

std::string codebook_cache_path(const SimConfig& cfg) {
    char key[160];
    std::snprintf(key, sizeof key, "tau=%.17g rolloff=%.17g np=%d nt=%d span=%d", cfg.tau,
                  cfg.rolloff_h, cfg.np, cfg.nt, cfg.span);
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (const char* p = key; *p != '\0'; ++p) {
        h ^= static_cast<unsigned char>(*p);
        h *= 1099511628211ULL;
    }
    char name[64];
    std::snprintf(name, sizeof name, "ftnlcc_%016llx.cbk", static_cast<unsigned long long>(h));
    return (std::filesystem::path(cfg.cache_dir) / name).string();
}

Codebook obtain_codebook(const SimConfig& cfg) {
    cfg.validate();
    if (cfg.cache_dir.empty()) return build_codebook(cfg.codebook_params());
    const std::string path = codebook_cache_path(cfg);
    if (std::filesystem::exists(path)) {
        try {
            return load_codebook(path);
        } catch (const std::exception&) {
            // stale or corrupt cache entry: fall through and rebuild
        }
    }
    Codebook cb = build_codebook(cfg.codebook_params());
    std::filesystem::create_directories(cfg.cache_dir);
    save_codebook(cb, path);
    return cb;
}

std::vector<BerPoint> run_uncoded_sweep(const SimConfig& cfg, const Codebook& cb) {
    cfg.validate();
    const TapSet full = cfg.channel_taps();
    const int n = cfg.block_len;
    const int excl = cfg.edge_exclusion ? (cfg.np - 1) / 2 : 0;
    if (n - 2 * excl < 1) throw std::invalid_argument("run_uncoded_sweep: edge exclusion leaves no symbols");
    DetectorConfig det;
    det.n_l = cfg.n_l;
    det.clamp = cfg.llr_clamp;

    std::vector<BerPoint> out;
    out.reserve(cfg.ebn0_db_list.size());
    for (size_t pt_idx = 0; pt_idx < cfg.ebn0_db_list.size(); ++pt_idx) {
        const double ebn0 = cfg.ebn0_db_list[pt_idx];
        const double sigma = sigma_from_ebn0(ebn0, 1.0);
        auto simulate = [&, pt_idx, sigma](std::uint64_t block_idx) {
            RngStream rng = RngStream::substream(cfg.master_seed, pt_idx, block_idx);
            SymbolBlock a;
            a.symbols.resize(static_cast<size_t>(n));
            for (auto& s : a.symbols) s = static_cast<std::int8_t>(rng.symbol());
            const ReceivedBlock y = add_awgn(transmit_noiseless(a, full), sigma, rng);
            DetectorCounters counters;
            const SymbolBlock hat = detect_hard(y, cb, det, &counters);
            BlockTally tally;
            tally.scans = counters.rows_scanned;
            for (int i = excl; i < n - excl; ++i) {
                ++tally.bits;
                if (hat.symbols[static_cast<size_t>(i)] != a.symbols[static_cast<size_t>(i)]) {
                    ++tally.bit_errors;
                }
            }
            tally.block_error = tally.bit_errors > 0;
            return tally;
        };
        out.push_back(run_point(cfg, ebn0, simulate));
    }
    return out;
}

std::vector<BerPoint> run_uncoded_sweep(const SimConfig& cfg) {
    return run_uncoded_sweep(cfg, obtain_codebook(cfg));
}

std::vector<BerPoint> run_coded_sweep(const SimConfig& cfg, const Codebook& cb) {
    cfg.validate();
    if (!cfg.coded) throw std::invalid_argument("run_coded_sweep: cfg.coded must be set");
    const TapSet full = cfg.channel_taps();
    const ConvCode code;
    const int n = cfg.block_len;
    const size_t info_len = static_cast<size_t>(n) / 2 - static_cast<size_t>(code.memory());
    DetectorConfig det;
    det.n_l = cfg.n_l;
    det.clamp = cfg.llr_clamp;

    std::vector<BerPoint> out;
    out.reserve(cfg.ebn0_db_list.size());
    for (size_t pt_idx = 0; pt_idx < cfg.ebn0_db_list.size(); ++pt_idx) {
        const double ebn0 = cfg.ebn0_db_list[pt_idx];
        const double sigma = sigma_from_ebn0(ebn0, 0.5);
        auto simulate = [&, pt_idx, sigma](std::uint64_t block_idx) {
            RngStream rng = RngStream::substream(cfg.master_seed, pt_idx, block_idx);
            BitVector info(info_len);
            for (auto& b : info) b = rng.bit();
            const BitVector coded_bits = conv_encode(info, code);
            SymbolBlock a;
            a.symbols.resize(coded_bits.size());
            for (size_t i = 0; i < coded_bits.size(); ++i) {
                a.symbols[i] = coded_bits[i] ? 1 : -1;  // bit 1 <-> +1
            }
            const ReceivedBlock y = add_awgn(transmit_noiseless(a, full), sigma, rng);
            DetectorCounters counters;
            const LlrBlock llrs = detect_soft(y, cb, det, sigma, &counters);
            const BitVector decoded = viterbi_decode(llrs.llrs, code);
            BlockTally tally;
            tally.scans = counters.rows_scanned;
            tally.bits = info_len;
            for (size_t i = 0; i < info_len; ++i) {
                if (decoded[i] != info[i]) ++tally.bit_errors;
            }
            tally.block_error = tally.bit_errors > 0;
            return tally;
        };
        out.push_back(run_point(cfg, ebn0, simulate));
    }
    return out;
}

std::vector<BerPoint> run_coded_sweep(const SimConfig& cfg) {
    return run_coded_sweep(cfg, obtain_codebook(cfg));
}

std::vector<std::pair<int, double>> distance_profile(const SimConfig& cfg,
                                                     const std::vector<int>& np_range) {
    if (np_range.empty()) throw std::invalid_argument("distance_profile: empty np range");
    const TapSet truncated = truncate_taps(cfg.channel_taps(), cfg.nt);
    std::vector<std::pair<int, double>> out;
    out.reserve(np_range.size());
    for (int np : np_range) {
        CodebookParams p;
        p.np = np;
        p.nt = cfg.nt;
        p.taps = truncated;
        const Codebook cb = build_codebook(p);
        out.emplace_back(np, min_interclass_distance(cb));
    }
    return out;
}

namespace {

void append_config_echo(std::string& s, const SimConfig& cfg) {
    char line[512];
    std::snprintf(line, sizeof line,
                  "# tau=%.6g rolloff_h=%.6g rolloff_v=%.6g block_len=%d np=%d nt=%d n_l=%d coded=%d\n",
                  cfg.tau, cfg.rolloff_h, cfg.rolloff_v, cfg.block_len, cfg.np, cfg.nt, cfg.n_l,
                  cfg.coded ? 1 : 0);
    s += line;
    std::snprintf(line, sizeof line,
                  "# master_seed=%llu max_blocks=%llu min_bit_errors=%llu edge_exclusion=%d "
                  "llr_clamp=%.6g span=%d\n",
                  static_cast<unsigned long long>(cfg.master_seed),
                  static_cast<unsigned long long>(cfg.max_blocks),
                  static_cast<unsigned long long>(cfg.min_bit_errors), cfg.edge_exclusion ? 1 : 0,
                  cfg.llr_clamp, cfg.span);
    s += line;
    s += "# energy convention: Es=1 per FTN symbol, Eb=Es/code_rate (no 1/tau folding)\n";
}

}  // namespace

std::string sweep_csv(const SimConfig& cfg, const std::vector<BerPoint>& points) {
    std::string s = "# ftnlcc sweep\n";
    append_config_echo(s, cfg);
    s += "ebn0_db,bit_errors,bits_counted,block_errors,blocks,ber,fer,distance_scans,wall_time\n";
    char line[512];
    for (const auto& p : points) {
        std::snprintf(line, sizeof line, "%.6g,%llu,%llu,%llu,%llu,%.9e,%.9e,%llu,%.3f\n", p.ebn0_db,
                      static_cast<unsigned long long>(p.bit_errors),
                      static_cast<unsigned long long>(p.bits_counted),
                      static_cast<unsigned long long>(p.block_errors),
                      static_cast<unsigned long long>(p.blocks), p.ber, p.fer,
                      static_cast<unsigned long long>(p.distance_scans), p.wall_time);
        s += line;
    }
    return s;
}

std::string distance_csv(const SimConfig& cfg,
                         const std::vector<std::pair<int, double>>& profile) {
    std::string s = "# ftnlcc distance profile\n";
    append_config_echo(s, cfg);
    s += "np,min_interclass_distance\n";
    char line[128];
    for (const auto& [np, d] : profile) {
        std::snprintf(line, sizeof line, "%d,%.9e\n", np, d);
        s += line;
    }
    return s;
}

namespace {

bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw std::invalid_argument("expected a boolean, got '" + v + "'");
}

std::vector<double> parse_double_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

}  // namespace

void apply_key_value(SimConfig& cfg, const std::string& key, const std::string& value) {
    try {
        if (key == "tau") {
            cfg.tau = std::stod(value);
        } else if (key == "rolloff_h") {
            cfg.rolloff_h = std::stod(value);
        } else if (key == "rolloff_v") {
            cfg.rolloff_v = std::stod(value);
        } else if (key == "block_len") {
            cfg.block_len = std::stoi(value);
        } else if (key == "np") {
            cfg.np = std::stoi(value);
        } else if (key == "nt") {
            cfg.nt = std::stoi(value);
        } else if (key == "n_l") {
            cfg.n_l = std::stoi(value);
        } else if (key == "ebn0_db_list") {
            cfg.ebn0_db_list = parse_double_list(value);
        } else if (key == "coded") {
            cfg.coded = parse_bool(value);
        } else if (key == "master_seed") {
            cfg.master_seed = std::stoull(value);
        } else if (key == "max_blocks") {
            cfg.max_blocks = std::stoull(value);
        } else if (key == "min_bit_errors") {
            cfg.min_bit_errors = std::stoull(value);
        } else if (key == "edge_exclusion") {
            cfg.edge_exclusion = parse_bool(value);
        } else if (key == "llr_clamp") {
            cfg.llr_clamp = std::stod(value);
        } else if (key == "span") {
            cfg.span = std::stoi(value);
        } else if (key == "threads") {
            cfg.threads = std::stoi(value);
        } else if (key == "cache_dir") {
            cfg.cache_dir = value;
        } else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad value '" + value + "' for config key '" + key + "'");
    }
}

void apply_config_file(SimConfig& cfg, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config file not readable: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": expected key=value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        apply_key_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

}  // namespace ftnlcc
