#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "ragc/bench.hpp"
#include "ragc/constructors.hpp"
#include "ragc/container.hpp"
#include "ragc/error.hpp"

namespace py = pybind11;
using namespace ragc;

namespace {

std::span<const std::uint8_t> view(const py::bytes& b) {
    std::string_view s = b;
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

py::bytes to_bytes(const std::vector<std::uint8_t>& v) {
    return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

py::dict stats_dict(const GrammarStats& s) {
    py::dict d;
    d["sigma"] = s.sigma;
    d["d"] = s.d;
    d["rhs_total"] = s.rhs_total;
    d["tau_length"] = s.tau_length;
    d["run_rules"] = s.run_rules;
    d["size"] = s.size;
    return d;
}

}  // namespace

PYBIND11_MODULE(_ragc, m) {
    m.doc() = "RePair, MR-RePair and RL-MR-RePair grammar compression";

    static py::exception<CorruptError> corrupt(m, "CorruptError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const CorruptError& e) {
            corrupt(e.what());
        } catch (const UsageError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const IoError& e) {
            PyErr_SetString(PyExc_OSError, e.what());
        }
    });

    m.def(
        "compress",
        [](const py::bytes& data, const std::string& algo, const std::string& encoding,
           std::optional<unsigned> epsilon) {
            auto choice = parse_encoding(encoding);
            std::optional<std::uint8_t> eps = choice.epsilon;
            if (epsilon) {
                if (*epsilon < 1 || *epsilon > 255) throw UsageError("epsilon must be between 1 and 255");
                eps = static_cast<std::uint8_t>(*epsilon);
            }
            std::vector<std::uint8_t> out;
            {
                auto in = view(data);
                py::gil_scoped_release release;
                out = compress(in, parse_algorithm(algo), choice.encoding, eps);
            }
            return to_bytes(out);
        },
        py::arg("data"), py::arg("algo") = "rlmr", py::arg("encoding") = "poppt-pge",
        py::arg("epsilon") = py::none(), "Compress bytes into a RAGC container.");

    m.def(
        "decompress",
        [](const py::bytes& file) {
            std::vector<std::uint8_t> out;
            {
                auto in = view(file);
                py::gil_scoped_release release;
                out = decompress(in);
            }
            return to_bytes(out);
        },
        py::arg("file"), "Restore the bytes of a RAGC container.");

    m.def(
        "stats",
        [](const py::bytes& file) {
            auto r = stats(view(file));
            py::dict d = stats_dict(r.grammar);
            d["algo"] = std::string(algorithm_name(r.algo));
            d["encoding"] = std::string(encoding_name(r.encoding));
            d["epsilon"] = r.epsilon;
            d["n"] = r.n;
            d["file_bytes"] = r.file_bytes;
            d["file_bits"] = r.file_bits;
            d["ratio_percent"] = r.ratio_percent;
            return d;
        },
        py::arg("file"), "Grammar and size statistics of a RAGC container.");

    m.def(
        "grammar_stats",
        [](const py::bytes& data, const std::string& algo) {
            auto in = view(data);
            return stats_dict(grammar_stats(construct(parse_algorithm(algo), in)));
        },
        py::arg("data"), py::arg("algo") = "rlmr", "Construct a grammar and return its statistics.");

    m.def(
        "bench_json",
        [](const std::string& corpus, const std::vector<std::string>& algos, const std::vector<std::string>& encodings,
           unsigned reps, bool external) {
            BenchOptions opt;
            opt.files = corpus_files(corpus);
            opt.algos.clear();
            for (const auto& a : algos) opt.algos.push_back(parse_algorithm(a));
            for (const auto& e : encodings) opt.encodings.push_back(parse_encoding(e));
            opt.reps = reps;
            opt.external = external;
            BenchReport report;
            {
                py::gil_scoped_release release;
                report = run_bench(opt);
            }
            return bench_json(report);
        },
        py::arg("corpus"), py::arg("algos") = std::vector<std::string>{"repair", "mr", "rlmr"},
        py::arg("encodings") = std::vector<std::string>{}, py::arg("reps") = 1, py::arg("external") = false,
        "Run the bench over a file or directory and return the JSON report text.");

    m.attr("ALGORITHMS") = py::make_tuple("repair", "mr", "rlmr");
    m.attr("ENCODINGS") = py::make_tuple("32bit", "fble", "huffman", "pge", "pairpge", "poppt-ible", "poppt-pge");
}
