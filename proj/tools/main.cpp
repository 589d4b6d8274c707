// ftnlcc command line: Monte Carlo sweeps, class-distance profiles, codebook
// cache management, and a quick self test.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ftnlcc/detector.hpp"
#include "ftnlcc/fec.hpp"
#include "ftnlcc/oracle.hpp"
#include "ftnlcc/sim.hpp"

using namespace ftnlcc;

namespace {

// Accepts "1,3,5" or "start:step:stop" (inclusive).
std::vector<int> parse_int_range(const std::string& text) {
    std::vector<int> out;
    if (text.find(':') != std::string::npos) {
        int start = 0, step = 0, stop = 0;
        char c1 = 0, c2 = 0;
        std::stringstream ss(text);
        if (!(ss >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' || step <= 0) {
            throw CLI::ValidationError("--np-range", "expected start:step:stop with step > 0");
        }
        for (int v = start; v <= stop; v += step) out.push_back(v);
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) out.push_back(std::stoi(item));
        }
    }
    if (out.empty()) throw CLI::ValidationError("--np-range", "empty range");
    return out;
}

std::vector<double> parse_double_list_cli(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

void write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << content;
}

// Binds the SimConfig-mirroring flags to a subcommand. Values are applied
// on top of an optional --config file, so flags always win.
struct ConfigCli {
    std::string config_file;
    double tau = 0, rolloff_h = 0, rolloff_v = 0, llr_clamp = 0;
    int block_len = 0, np = 0, nt = 0, n_l = 0, span = 0, threads = 0;
    std::string ebn0;
    bool coded = false;
    bool uncoded = false;
    std::uint64_t master_seed = 0, max_blocks = 0, min_bit_errors = 0;
    bool edge_exclusion = false, no_edge_exclusion = false;
    std::string cache_dir;

    CLI::Option* o_tau = nullptr;
    CLI::Option* o_rolloff_h = nullptr;
    CLI::Option* o_rolloff_v = nullptr;
    CLI::Option* o_block_len = nullptr;
    CLI::Option* o_np = nullptr;
    CLI::Option* o_nt = nullptr;
    CLI::Option* o_n_l = nullptr;
    CLI::Option* o_ebn0 = nullptr;
    CLI::Option* o_coded = nullptr;
    CLI::Option* o_uncoded = nullptr;
    CLI::Option* o_seed = nullptr;
    CLI::Option* o_max_blocks = nullptr;
    CLI::Option* o_min_errors = nullptr;
    CLI::Option* o_edge = nullptr;
    CLI::Option* o_no_edge = nullptr;
    CLI::Option* o_clamp = nullptr;
    CLI::Option* o_span = nullptr;
    CLI::Option* o_threads = nullptr;
    CLI::Option* o_cache = nullptr;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_file, "key=value config file (flags override it)");
        o_tau = cmd->add_option("--tau", tau, "acceleration parameter tau");
        o_rolloff_h = cmd->add_option("--rolloff", rolloff_h, "transmit RRC roll-off");
        o_rolloff_v = cmd->add_option("--rolloff-v", rolloff_v, "receive-basis roll-off (metadata)");
        o_block_len = cmd->add_option("--block-len,-N", block_len, "symbols per block");
        o_np = cmd->add_option("--np", np, "observation window length");
        o_nt = cmd->add_option("--nt", nt, "dominant tap count");
        o_n_l = cmd->add_option("--nl", n_l, "nearest lattice points for soft output");
        o_ebn0 = cmd->add_option("--ebn0", ebn0, "comma-separated Eb/N0 list in dB");
        o_coded = cmd->add_flag("--coded", coded, "convolutionally coded run");
        o_uncoded = cmd->add_flag("--uncoded", uncoded, "uncoded run");
        o_seed = cmd->add_option("--seed", master_seed, "master seed");
        o_max_blocks = cmd->add_option("--max-blocks", max_blocks, "block cap per point");
        o_min_errors = cmd->add_option("--min-bit-errors", min_bit_errors, "bit-error stop rule");
        o_edge = cmd->add_flag("--edge-exclusion", edge_exclusion, "exclude (np-1)/2 edge symbols");
        o_no_edge = cmd->add_flag("--no-edge-exclusion", no_edge_exclusion, "count edge symbols");
        o_clamp = cmd->add_option("--llr-clamp", llr_clamp, "LLR saturation magnitude");
        o_span = cmd->add_option("--span", span, "one-sided tap generation span");
        o_threads = cmd->add_option("--threads", threads, "worker threads (0 = auto)");
        o_cache = cmd->add_option("--cache-dir", cache_dir, "codebook cache directory");
    }

    SimConfig build() const {
        SimConfig cfg;
        if (!config_file.empty()) apply_config_file(cfg, config_file);
        if (o_tau->count()) cfg.tau = tau;
        if (o_rolloff_h->count()) cfg.rolloff_h = rolloff_h;
        if (o_rolloff_v->count()) cfg.rolloff_v = rolloff_v;
        if (o_block_len->count()) cfg.block_len = block_len;
        if (o_np->count()) cfg.np = np;
        if (o_nt->count()) cfg.nt = nt;
        if (o_n_l->count()) cfg.n_l = n_l;
        if (o_ebn0->count()) cfg.ebn0_db_list = parse_double_list_cli(ebn0);
        if (o_coded->count()) cfg.coded = true;
        if (o_uncoded->count()) cfg.coded = false;
        if (o_seed->count()) cfg.master_seed = master_seed;
        if (o_max_blocks->count()) cfg.max_blocks = max_blocks;
        if (o_min_errors->count()) cfg.min_bit_errors = min_bit_errors;
        if (o_edge->count()) cfg.edge_exclusion = true;
        if (o_no_edge->count()) cfg.edge_exclusion = false;
        if (o_clamp->count()) cfg.llr_clamp = llr_clamp;
        if (o_span->count()) cfg.span = span;
        if (o_threads->count()) cfg.threads = threads;
        if (o_cache->count()) cfg.cache_dir = cache_dir;
        return cfg;
    }
};

int run_selftest() {
    int failures = 0;
    auto check = [&failures](bool ok, const char* what) {
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what);
        if (!ok) ++failures;
    };

    const TapSet toy = TapSet::from_centered({0.3, 0.8, 0.3});
    CodebookParams p;
    p.np = 1;
    p.nt = 3;
    p.taps = toy;
    const Codebook cb = build_codebook(p);
    check(std::abs(min_interclass_distance(cb) - 0.4) < 1e-9, "toy class distance d = 0.4");
    check(std::abs(min_interclass_distance(cb) - min_interclass_distance_scan(cb)) < 1e-12,
          "distance DP equals the pair scan");

    std::vector<double> samples(cb.samples);
    std::sort(samples.begin(), samples.end());
    check(std::abs(samples.front() + 1.4) < 1e-12 && std::abs(samples.back() - 1.4) < 1e-12,
          "Example-1 extreme samples +-1.4");

    RrcParams rp;
    const TapSet rrc = sample_taps(rp, 0.6, 40);
    check(rrc.energy() > 0.99 && rrc.energy() < 1.01, "RRC tap set has unit energy");
    check(rrc.is_symmetric(), "RRC tap set is even-symmetric");

    RngStream rng(5150);
    BitVector info(64);
    for (auto& b : info) b = rng.bit();
    const BitVector coded = conv_encode(info);
    std::vector<double> llrs(coded.size());
    for (size_t i = 0; i < coded.size(); ++i) llrs[i] = coded[i] ? 3.0 : -3.0;
    check(viterbi_decode(llrs) == info, "Viterbi round trip");

    const TapSet unit = TapSet::from_centered({1.0});
    ReceivedBlock y;
    y.samples = {0.5};
    y.noise_sigma = 1.0;
    const ExactLlrResult ex = exact_llr(y, unit, 1.0);
    check(std::abs(ex.llrs[0] - 1.0) < 1e-12, "exact_llr closed form 2y/sigma^2");

    RngStream a(7), b(7);
    const auto na = add_awgn(std::vector<double>(100, 0.0), 1.0, a);
    const auto nb = add_awgn(std::vector<double>(100, 0.0), 1.0, b);
    check(na.samples == nb.samples, "seeded noise is reproducible");

    std::printf(failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"faster-than-Nyquist link simulator with low-complexity classifier detection"};
    app.require_subcommand(1);

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "run a Monte Carlo BER/FER sweep, emit CSV");
    ConfigCli sweep_cfg;
    sweep_cfg.attach(sweep);
    std::string sweep_out;
    sweep->add_option("--out", sweep_out, "output CSV path (default: stdout)");

    // ---- distance ----
    auto* dist = app.add_subcommand("distance", "class-distance profile over np, emit CSV");
    ConfigCli dist_cfg;
    dist_cfg.attach(dist);
    std::string dist_out, np_range_text = "1:2:15", custom_taps;
    dist->add_option("--np-range", np_range_text, "np values: list '1,3,5' or 'start:step:stop'");
    dist->add_option("--taps", custom_taps,
                     "comma-separated custom taps (odd count) instead of RRC-derived ones");
    dist->add_option("--out", dist_out, "output CSV path (default: stdout)");

    // ---- codebook ----
    auto* cbcmd = app.add_subcommand("codebook", "build, cache, or inspect a codebook");
    ConfigCli cb_cfg;
    cb_cfg.attach(cbcmd);
    std::string cb_save, cb_load;
    bool cb_info = false;
    cbcmd->add_option("--save", cb_save, "write the codebook to this file");
    cbcmd->add_option("--load", cb_load, "read a codebook file instead of building");
    cbcmd->add_flag("--info", cb_info, "print codebook facts");

    // ---- selftest ----
    auto* self = app.add_subcommand("selftest", "run the built-in oracle checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            const SimConfig cfg = sweep_cfg.build();
            const auto points = cfg.coded ? run_coded_sweep(cfg) : run_uncoded_sweep(cfg);
            write_output(sweep_csv(cfg, points), sweep_out);
        } else if (dist->parsed()) {
            SimConfig cfg = dist_cfg.build();
            const auto np_range = parse_int_range(np_range_text);
            std::vector<std::pair<int, double>> prof;
            if (custom_taps.empty()) {
                prof = distance_profile(cfg, np_range);
            } else {
                const auto vals = parse_double_list_cli(custom_taps);
                const TapSet taps = TapSet::from_centered(vals);
                for (int np : np_range) {
                    CodebookParams p;
                    p.np = np;
                    p.nt = taps.size();
                    p.taps = taps;
                    prof.emplace_back(np, min_interclass_distance(build_codebook(p)));
                }
                cfg.nt = taps.size();
            }
            write_output(distance_csv(cfg, prof), dist_out);
        } else if (cbcmd->parsed()) {
            const SimConfig cfg = cb_cfg.build();
            Codebook cb;
            if (!cb_load.empty()) {
                cb = load_codebook(cb_load);
            } else {
                cb = obtain_codebook(cfg);
            }
            if (!cb_save.empty()) save_codebook(cb, cb_save);
            if (cb_info || (cb_save.empty() && cb_load.empty())) {
                std::printf("rows=%llu np=%d nt=%d window_len=%d\n",
                            static_cast<unsigned long long>(cb.size()), cb.params.np, cb.params.nt,
                            cb.params.window_len());
                std::printf("min_interclass_distance=%.9g\n", min_interclass_distance(cb));
                std::printf("tap_energy=%.9g\n", cb.params.taps.energy());
            }
        } else if (self->parsed()) {
            return run_selftest();
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
