// pybind11 surface: the pulse/channel/codebook/detector/fec/oracle operations
// and the Monte Carlo harness, mirroring the C++ API one to one.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ftnlcc/detector.hpp"
#include "ftnlcc/fec.hpp"
#include "ftnlcc/oracle.hpp"
#include "ftnlcc/sim.hpp"

namespace py = pybind11;
using namespace ftnlcc;

PYBIND11_MODULE(_ftnlcc, m) {
    m.doc() = "faster-than-Nyquist link simulation with low-complexity classifier detection";

    // ---- pulse shaping ----
    py::class_<RrcParams>(m, "RrcParams")
        .def(py::init<>())
        .def(py::init([](double rolloff, double symbol_period, int span) {
                 return RrcParams{rolloff, symbol_period, span};
             }),
             py::arg("rolloff"), py::arg("symbol_period") = 1.0, py::arg("span") = 40)
        .def_readwrite("rolloff", &RrcParams::rolloff)
        .def_readwrite("symbol_period", &RrcParams::symbol_period)
        .def_readwrite("span", &RrcParams::span);

    py::class_<TapSet>(m, "TapSet")
        .def(py::init<>())
        .def_static("from_centered", &TapSet::from_centered, py::arg("coeffs"), py::arg("tau") = 1.0)
        .def_readonly("taps", &TapSet::taps)
        .def_readonly("tau", &TapSet::tau)
        .def_readonly("center_index", &TapSet::center_index)
        .def("half_span", &TapSet::half_span)
        .def("at", &TapSet::at, py::arg("n"))
        .def("energy", &TapSet::energy)
        .def("is_symmetric", &TapSet::is_symmetric, py::arg("tol") = 1e-12)
        .def("__len__", [](const TapSet& t) { return t.taps.size(); });

    m.def("rrc_pulse", &rrc_pulse, py::arg("params"), py::arg("t"));
    m.def("sample_taps", py::overload_cast<const RrcParams&, double, int>(&sample_taps),
          py::arg("params"), py::arg("tau"), py::arg("span"));
    m.def("sample_taps", py::overload_cast<const RrcParams&, double>(&sample_taps),
          py::arg("params"), py::arg("tau"));
    m.def("truncate_taps", &truncate_taps, py::arg("full"), py::arg("nt"));

    // ---- rng / channel ----
    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def_static("substream", &RngStream::substream, py::arg("master"), py::arg("a"),
                    py::arg("b") = 0)
        .def("uniform01", &RngStream::uniform01)
        .def("gaussian", &RngStream::gaussian)
        .def("symbol", &RngStream::symbol)
        .def("bit", &RngStream::bit);

    py::class_<SymbolBlock>(m, "SymbolBlock")
        .def(py::init<>())
        .def(py::init([](const std::vector<int>& syms) {
                 SymbolBlock b;
                 b.symbols.assign(syms.begin(), syms.end());
                 b.validate();
                 return b;
             }),
             py::arg("symbols"))
        .def_property_readonly("symbols",
                               [](const SymbolBlock& b) {
                                   return std::vector<int>(b.symbols.begin(), b.symbols.end());
                               })
        .def("__len__", &SymbolBlock::size);

    py::class_<ReceivedBlock>(m, "ReceivedBlock")
        .def(py::init<>())
        .def(py::init([](std::vector<double> samples, double noise_sigma) {
                 ReceivedBlock y;
                 y.samples = std::move(samples);
                 y.noise_sigma = noise_sigma;
                 return y;
             }),
             py::arg("samples"), py::arg("noise_sigma") = 0.0)
        .def_readwrite("samples", &ReceivedBlock::samples)
        .def_readwrite("noise_sigma", &ReceivedBlock::noise_sigma)
        .def("__len__", &ReceivedBlock::size);

    m.def("transmit_noiseless", &transmit_noiseless, py::arg("block"), py::arg("taps"));
    m.def("add_awgn", &add_awgn, py::arg("clean"), py::arg("sigma"), py::arg("rng"));
    m.def("sigma_from_ebn0", &sigma_from_ebn0, py::arg("ebn0_db"), py::arg("code_rate"));

    // ---- codebook ----
    py::class_<CodebookParams>(m, "CodebookParams")
        .def(py::init<>())
        .def(py::init([](int np, int nt, TapSet taps) {
                 CodebookParams p;
                 p.np = np;
                 p.nt = nt;
                 p.taps = std::move(taps);
                 return p;
             }),
             py::arg("np"), py::arg("nt"), py::arg("taps"))
        .def_readwrite("np", &CodebookParams::np)
        .def_readwrite("nt", &CodebookParams::nt)
        .def_readwrite("taps", &CodebookParams::taps)
        .def_readwrite("max_window_bits", &CodebookParams::max_window_bits)
        .def("window_len", &CodebookParams::window_len)
        .def("rows", &CodebookParams::rows)
        .def("label_pos", &CodebookParams::label_pos);

    py::class_<NnResult>(m, "NnResult")
        .def_readonly("index", &NnResult::index)
        .def_readonly("label", &NnResult::label)
        .def_readonly("distance", &NnResult::distance);

    py::class_<Codebook>(m, "Codebook")
        .def_readonly("params", &Codebook::params)
        .def("__len__", &Codebook::size)
        .def("label", &Codebook::label, py::arg("row"))
        .def("window_symbol", &Codebook::window_symbol, py::arg("row"), py::arg("pos"))
        .def("row",
             [](const Codebook& cb, std::uint64_t r) {
                 if (r >= cb.size()) throw py::index_error("row out of range");
                 return std::vector<double>(cb.row(r), cb.row(r) + cb.params.np);
             },
             py::arg("row"))
        .def_property_readonly("samples", [](const Codebook& cb) { return cb.samples; });

    m.def("build_codebook", &build_codebook, py::arg("params"),
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "nearest_neighbor",
        [](const Codebook& cb, const std::vector<double>& q) { return nearest_neighbor(cb, q); },
        py::arg("codebook"), py::arg("query"));
    m.def(
        "k_nearest",
        [](const Codebook& cb, const std::vector<double>& q, int k) { return k_nearest(cb, q, k); },
        py::arg("codebook"), py::arg("query"), py::arg("k"));
    m.def("min_interclass_distance", &min_interclass_distance, py::arg("codebook"));
    m.def("min_interclass_distance_scan", &min_interclass_distance_scan, py::arg("codebook"));
    m.def("save_codebook", &save_codebook, py::arg("codebook"), py::arg("path"));
    m.def("load_codebook", &load_codebook, py::arg("path"));

    // ---- detector ----
    py::class_<ObservationWindow>(m, "ObservationWindow")
        .def_readonly("values", &ObservationWindow::values)
        .def_readonly("center_index", &ObservationWindow::center_index);

    py::class_<LlrBlock>(m, "LlrBlock")
        .def_readonly("llrs", &LlrBlock::llrs)
        .def_readonly("clamp", &LlrBlock::clamp)
        .def("__len__", [](const LlrBlock& b) { return b.llrs.size(); });

    py::class_<DetectorConfig>(m, "DetectorConfig")
        .def(py::init<>())
        .def_readwrite("n_l", &DetectorConfig::n_l)
        .def_readwrite("clamp", &DetectorConfig::clamp)
        .def_readwrite("priors", &DetectorConfig::priors);

    py::class_<DetectorCounters>(m, "DetectorCounters")
        .def(py::init<>())
        .def_readwrite("queries", &DetectorCounters::queries)
        .def_readwrite("rows_scanned", &DetectorCounters::rows_scanned);

    m.def("extract_window", &extract_window, py::arg("y"), py::arg("i"), py::arg("np"));
    m.def(
        "detect_hard",
        [](const ReceivedBlock& y, const Codebook& cb, const DetectorConfig& cfg) {
            return detect_hard(y, cb, cfg);
        },
        py::arg("y"), py::arg("codebook"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "detect_soft",
        [](const ReceivedBlock& y, const Codebook& cb, const DetectorConfig& cfg, double sigma) {
            return detect_soft(y, cb, cfg, sigma);
        },
        py::arg("y"), py::arg("codebook"), py::arg("config"), py::arg("sigma"),
        py::call_guard<py::gil_scoped_release>());
    m.def("window_truncation_error", &window_truncation_error, py::arg("block"),
          py::arg("full_taps"), py::arg("np"), py::arg("i"));

    // ---- fec ----
    py::class_<ConvCode>(m, "ConvCode")
        .def(py::init<>())
        .def_readwrite("constraint_length", &ConvCode::constraint_length)
        .def_readwrite("g0", &ConvCode::g0)
        .def_readwrite("g1", &ConvCode::g1)
        .def_readwrite("terminated", &ConvCode::terminated);

    m.def(
        "conv_encode",
        [](const std::vector<int>& info, const ConvCode& code) {
            BitVector bits(info.begin(), info.end());
            const BitVector out = conv_encode(bits, code);
            return std::vector<int>(out.begin(), out.end());
        },
        py::arg("info"), py::arg("code") = ConvCode{});
    m.def(
        "viterbi_decode",
        [](const std::vector<double>& llrs, const ConvCode& code) {
            const BitVector out = viterbi_decode(llrs, code);
            return std::vector<int>(out.begin(), out.end());
        },
        py::arg("llrs"), py::arg("code") = ConvCode{});

    // ---- reference oracle ----
    py::class_<ExactLlrResult>(m, "ExactLlrResult")
        .def_readonly("llrs", &ExactLlrResult::llrs)
        .def_readonly("log_evidence", &ExactLlrResult::log_evidence);

    m.def("exact_llr", &exact_llr, py::arg("y"), py::arg("taps"), py::arg("sigma"),
          py::arg("priors") = std::vector<double>{}, py::call_guard<py::gil_scoped_release>());
    m.def("exact_ml_sequence", &exact_ml_sequence, py::arg("y"), py::arg("taps"),
          py::call_guard<py::gil_scoped_release>());

    // ---- harness ----
    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("tau", &SimConfig::tau)
        .def_readwrite("rolloff_h", &SimConfig::rolloff_h)
        .def_readwrite("rolloff_v", &SimConfig::rolloff_v)
        .def_readwrite("block_len", &SimConfig::block_len)
        .def_readwrite("np", &SimConfig::np)
        .def_readwrite("nt", &SimConfig::nt)
        .def_readwrite("n_l", &SimConfig::n_l)
        .def_readwrite("ebn0_db_list", &SimConfig::ebn0_db_list)
        .def_readwrite("coded", &SimConfig::coded)
        .def_readwrite("master_seed", &SimConfig::master_seed)
        .def_readwrite("max_blocks", &SimConfig::max_blocks)
        .def_readwrite("min_bit_errors", &SimConfig::min_bit_errors)
        .def_readwrite("edge_exclusion", &SimConfig::edge_exclusion)
        .def_readwrite("llr_clamp", &SimConfig::llr_clamp)
        .def_readwrite("span", &SimConfig::span)
        .def_readwrite("threads", &SimConfig::threads)
        .def_readwrite("cache_dir", &SimConfig::cache_dir)
        .def("channel_taps", &SimConfig::channel_taps)
        .def("codebook_params", &SimConfig::codebook_params);

    py::class_<BerPoint>(m, "BerPoint")
        .def_readonly("ebn0_db", &BerPoint::ebn0_db)
        .def_readonly("bit_errors", &BerPoint::bit_errors)
        .def_readonly("bits_counted", &BerPoint::bits_counted)
        .def_readonly("block_errors", &BerPoint::block_errors)
        .def_readonly("blocks", &BerPoint::blocks)
        .def_readonly("ber", &BerPoint::ber)
        .def_readonly("fer", &BerPoint::fer)
        .def_readonly("distance_scans", &BerPoint::distance_scans)
        .def_readonly("wall_time", &BerPoint::wall_time)
        .def("__repr__", [](const BerPoint& p) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "BerPoint(ebn0_db=%g, ber=%.3e, fer=%.3e, blocks=%llu)",
                          p.ebn0_db, p.ber, p.fer, static_cast<unsigned long long>(p.blocks));
            return std::string(buf);
        });

    m.def("run_uncoded_sweep", py::overload_cast<const SimConfig&>(&run_uncoded_sweep),
          py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("run_coded_sweep", py::overload_cast<const SimConfig&>(&run_coded_sweep),
          py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("distance_profile", &distance_profile, py::arg("config"), py::arg("np_range"),
          py::call_guard<py::gil_scoped_release>());
    m.def("obtain_codebook", &obtain_codebook, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("codebook_cache_path", &codebook_cache_path, py::arg("config"));
    m.def("sweep_csv", &sweep_csv, py::arg("config"), py::arg("points"));
    m.def("distance_csv", &distance_csv, py::arg("config"), py::arg("profile"));
    m.def("apply_key_value", &apply_key_value, py::arg("config"), py::arg("key"), py::arg("value"));
    m.def("apply_config_file", &apply_config_file, py::arg("config"), py::arg("path"));

#ifdef FTNLCC_VERSION
    m.attr("__version__") = FTNLCC_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
