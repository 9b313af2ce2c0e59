// ragc: grammar compressor command line.
//
// Exit status: 0 ok, 1 usage, 2 I/O, 3 corrupt input, 4 internal failure.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ragc/bench.hpp"
#include "ragc/constructors.hpp"
#include "ragc/container.hpp"
#include "ragc/corpus_io.hpp"
#include "ragc/error.hpp"

using namespace ragc;

namespace {

enum Exit { kOk = 0, kUsage = 1, kIo = 2, kCorrupt = 3, kInternal = 4 };

std::string stats_line(const StatsReport& r) {
    std::ostringstream s;
    s << algorithm_name(r.algo) << "/" << encoding_name(r.encoding);
    if (r.epsilon) s << " eps=" << int(r.epsilon);
    s << "  n=" << r.n << " sigma=" << r.grammar.sigma << " d=" << r.grammar.d << " rhs=" << r.grammar.rhs_total
      << " tau=" << r.grammar.tau_length << " runs=" << r.grammar.run_rules << " size=" << r.grammar.size
      << "  " << r.file_bytes << " bytes (" << r.file_bits << " bits), ratio " << r.ratio_percent << "%";
    return s.str();
}

nlohmann::json stats_json(const StatsReport& r) {
    nlohmann::json j{{"algo", algorithm_name(r.algo)},
                     {"encoding", encoding_name(r.encoding)},
                     {"n", r.n},
                     {"sigma", r.grammar.sigma},
                     {"d", r.grammar.d},
                     {"rhs_total", r.grammar.rhs_total},
                     {"tau_length", r.grammar.tau_length},
                     {"run_rules", r.grammar.run_rules},
                     {"size", r.grammar.size},
                     {"file_bytes", r.file_bytes},
                     {"file_bits", r.file_bits},
                     {"ratio_percent", r.ratio_percent}};
    if (r.epsilon) j["epsilon"] = r.epsilon;
    return j;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

std::string default_decompressed_name(const std::string& in) {
    const std::string ext = ".ragc";
    if (in.size() > ext.size() && in.compare(in.size() - ext.size(), ext.size(), ext) == 0)
        return in.substr(0, in.size() - ext.size());
    return in + ".out";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ragc: RePair / MR-RePair / RL-MR-RePair grammar compression"};
    app.require_subcommand(1);

    std::string input, output, algo_name = "rlmr", encoding_name_arg = "poppt-pge";
    std::optional<unsigned> epsilon;
    auto* compress_cmd = app.add_subcommand("compress", "compress a file ('-' for standard input)");
    compress_cmd->add_option("input", input, "input path")->required();
    compress_cmd->add_option("--algo", algo_name, "repair | mr | rlmr")->capture_default_str();
    compress_cmd->add_option("--encoding", encoding_name_arg,
                             "32bit | fble | huffman | pge | pairpge | poppt-ible | poppt-pge")
        ->capture_default_str();
    compress_cmd->add_option("--epsilon", epsilon, "PGE block length (default 8)")->check(CLI::Range(1, 255));
    compress_cmd->add_option("-o,--output", output, "output path (default: input.ragc, '-' for standard output)");

    auto* decompress_cmd = app.add_subcommand("decompress", "restore the original bytes");
    decompress_cmd->add_option("input", input, "container path")->required();
    decompress_cmd->add_option("-o,--output", output, "output path (default: input without .ragc)");

    bool as_json = false;
    auto* stats_cmd = app.add_subcommand("stats", "grammar and size statistics of a container");
    stats_cmd->add_option("input", input, "container path")->required();
    stats_cmd->add_flag("--json", as_json, "print JSON");

    std::string corpus, algos = "repair,mr,rlmr", encodings, report_path;
    unsigned reps = 1, threads = 0;
    bool no_external = false;
    auto* bench_cmd = app.add_subcommand("bench", "measure every algorithm x encoding cell over a corpus");
    bench_cmd->add_option("--corpus", corpus, "directory of files, or one file")->required();
    bench_cmd->add_option("--algos", algos, "comma-separated algorithms")->capture_default_str();
    bench_cmd->add_option("--encodings", encodings, "comma-separated encodings (default: all)");
    bench_cmd->add_option("--reps", reps, "repetitions; timings are medians")->check(CLI::Range(1, 1000));
    bench_cmd->add_option("--report", report_path, "write the JSON report here");
    bench_cmd->add_option("--threads", threads, "worker cap (default: RAGC_THREADS or all cores)");
    bench_cmd->add_flag("--no-external", no_external, "skip gzip / bzip2 comparison");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*compress_cmd) {
            const Algorithm algo = parse_algorithm(algo_name);
            const EncodingChoice choice = parse_encoding(encoding_name_arg);
            if (epsilon && !uses_epsilon(choice.encoding))
                throw UsageError("--epsilon applies only to pge, pairpge and poppt-pge");
            if (epsilon && choice.epsilon && *epsilon != *choice.epsilon)
                throw UsageError("--epsilon disagrees with the encoding name");
            if (auto why = incompatibility(algo, choice.encoding)) throw UsageError(*why);
            std::optional<std::uint8_t> eps = choice.epsilon;
            if (epsilon) eps = static_cast<std::uint8_t>(*epsilon);

            auto data = read_input(input);
            auto file = compress(data, algo, choice.encoding, eps);
            if (output.empty()) output = input == "-" ? "-" : input + ".ragc";
            write_output(output, file);
            (output == "-" ? std::cerr : std::cout) << stats_line(stats(file)) << "\n";
        } else if (*decompress_cmd) {
            auto file = read_input(input);
            auto data = decompress(file);
            if (output.empty()) output = input == "-" ? "-" : default_decompressed_name(input);
            write_output(output, data);
        } else if (*stats_cmd) {
            auto r = stats(read_input(input));
            if (as_json) std::cout << stats_json(r).dump(2) << "\n";
            else std::cout << stats_line(r) << "\n";
        } else if (*bench_cmd) {
            BenchOptions opt;
            opt.files = corpus_files(corpus);
            opt.algos.clear();
            for (const auto& a : split_list(algos)) opt.algos.push_back(parse_algorithm(a));
            for (const auto& e : split_list(encodings)) opt.encodings.push_back(parse_encoding(e));
            opt.reps = reps;
            opt.threads = threads;
            opt.external = !no_external;
            if (opt.algos.empty()) throw UsageError("--algos is empty");

            auto report = run_bench(opt);
            std::cout << bench_table(report);
            if (!report_path.empty()) {
                const auto json = bench_json(report);
                write_file(report_path, std::span(reinterpret_cast<const std::uint8_t*>(json.data()), json.size()));
            }
            bool unreadable = false, unverified = false;
            for (const auto& f : report.files) {
                unreadable |= !f.error.empty();
                for (const auto& c : f.cells) unverified |= !c.verified;
            }
            if (unverified) return kInternal;
            if (unreadable) return kIo;
        }
    } catch (const UsageError& e) {
        std::cerr << "ragc: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "ragc: " << e.what() << "\n";
        return kIo;
    } catch (const CorruptError& e) {
        std::cerr << "ragc: corrupt input: " << e.what() << "\n";
        return kCorrupt;
    } catch (const std::bad_alloc&) {
        std::cerr << "ragc: out of memory\n";
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "ragc: internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kOk;
}
