#include "ragc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ragc/corpus_io.hpp"
#include "ragc/error.hpp"

namespace ragc {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

template <class F>
double timed(F&& f) {
    auto t0 = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

unsigned worker_count(unsigned requested, std::size_t files) {
    unsigned n = requested;
    if (n == 0) {
        if (const char* env = std::getenv("RAGC_THREADS")) n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
        if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    }
    return static_cast<unsigned>(std::clamp<std::size_t>(files, 1, n));
}

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    return out + "'";
}

std::optional<std::uint64_t> external_size(const std::string& tool, const std::string& path) {
    if (std::system(("command -v " + tool + " >/dev/null 2>&1").c_str()) != 0) return std::nullopt;
    FILE* p = popen((tool + " -9 -c " + shell_quote(path) + " 2>/dev/null").c_str(), "r");
    if (!p) return std::nullopt;
    std::uint64_t total = 0;
    char buf[1 << 16];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, p)) total += got;
    if (pclose(p) != 0) return std::nullopt;
    return total;
}

BenchFile bench_file(const std::filesystem::path& path, const BenchOptions& opt,
                     const std::vector<EncodingChoice>& encodings) {
    BenchFile f;
    f.path = path.string();
    std::vector<std::uint8_t> data;
    try {
        data = read_file(path);
    } catch (const std::exception& e) {
        f.error = e.what();
        return f;
    }
    f.input_bytes = data.size();
    const unsigned reps = std::max(1u, opt.reps);

    for (Algorithm algo : opt.algos) {
        Grammar g;
        std::vector<double> construct_times;
        std::string construct_error;
        try {
            auto in = ingest_bytes(data);
            for (unsigned r = 0; r < reps; ++r)
                construct_times.push_back(timed([&] { g = construct(algo, in.symbols, in.alphabet); }));
        } catch (const std::exception& e) {
            construct_error = e.what();
        }
        const GrammarStats st = construct_error.empty() ? grammar_stats(g) : GrammarStats{};

        for (const auto& choice : encodings) {
            if (incompatibility(algo, choice.encoding)) continue;
            BenchCell c;
            c.algo = algo;
            c.encoding = choice.encoding;
            c.epsilon = uses_epsilon(choice.encoding) ? choice.epsilon.value_or(kDefaultEpsilon) : 0;
            c.grammar = st;
            c.construct_seconds = construct_times.empty() ? 0 : median(construct_times);
            if (!construct_error.empty()) {
                c.error = construct_error;
                f.cells.push_back(std::move(c));
                continue;
            }
            try {
                std::vector<std::uint8_t> file;
                std::vector<double> encode_times;
                for (unsigned r = 0; r < reps; ++r)
                    encode_times.push_back(
                        timed([&] { file = encode_container(g, algo, choice.encoding, c.epsilon, data.size()); }));
                c.encode_seconds = median(encode_times);
                if (decompress(file) != data) throw InternalError("round trip produced different bytes");
                c.verified = true;
                c.encoded_bytes = file.size();
                c.ratio_percent = data.empty() ? 0.0 : 100.0 * static_cast<double>(file.size()) / static_cast<double>(data.size());
            } catch (const std::exception& e) {
                c.error = e.what();
            }
            f.cells.push_back(std::move(c));
        }
    }
    if (opt.external)
        for (std::string tool : {"gzip", "bzip2"})
            if (auto n = external_size(tool, f.path)) f.external.push_back({tool, *n});
    return f;
}

}  // namespace

std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& where) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(where, ec)) return {where};
    if (!std::filesystem::is_directory(where, ec)) throw IoError("no such corpus: " + where.string());
    std::vector<std::filesystem::path> out;
    for (const auto& entry : std::filesystem::directory_iterator(where))
        if (entry.is_regular_file()) out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

BenchReport run_bench(const BenchOptions& options) {
    std::vector<EncodingChoice> encodings = options.encodings;
    if (encodings.empty())
        for (std::uint8_t e = 0; e <= 6; ++e) encodings.push_back({static_cast<Encoding>(e), std::nullopt});

    BenchReport report;
    report.reps = std::max(1u, options.reps);
    report.threads = worker_count(options.threads, options.files.size());
    report.files.resize(options.files.size());

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < options.files.size();)
            report.files[i] = bench_file(options.files[i], options, encodings);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < report.threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return report;
}

std::string bench_json(const BenchReport& report) {
    using nlohmann::json;
    json files = json::array();
    for (const auto& f : report.files) {
        json cells = json::array();
        for (const auto& c : f.cells) {
            json cell{{"algo", algorithm_name(c.algo)},
                      {"encoding", encoding_name(c.encoding)},
                      {"verified", c.verified},
                      {"grammar",
                       {{"sigma", c.grammar.sigma},
                        {"d", c.grammar.d},
                        {"rhs_total", c.grammar.rhs_total},
                        {"tau_length", c.grammar.tau_length},
                        {"run_rules", c.grammar.run_rules},
                        {"size", c.grammar.size}}},
                      {"construct_seconds", c.construct_seconds}};
            if (c.epsilon) cell["epsilon"] = c.epsilon;
            if (c.verified) {
                cell["encoded_bytes"] = c.encoded_bytes;
                cell["ratio_percent"] = c.ratio_percent;
                cell["encode_seconds"] = c.encode_seconds;
            } else {
                cell["error"] = c.error;
            }
            cells.push_back(std::move(cell));
        }
        json entry{{"path", f.path}, {"input_bytes", f.input_bytes}, {"cells", std::move(cells)}};
        if (!f.error.empty()) entry["error"] = f.error;
        json ext = json::object();
        for (const auto& e : f.external)
            ext[e.tool] = {{"bytes", e.bytes},
                           {"ratio_percent", f.input_bytes ? 100.0 * static_cast<double>(e.bytes) / static_cast<double>(f.input_bytes) : 0.0}};
        entry["external"] = std::move(ext);
        files.push_back(std::move(entry));
    }
    json root{{"reps", report.reps},
              {"threads", report.threads},
              {"timing", "median wall-clock seconds over reps"},
              {"ratio", "container bytes / input bytes * 100, container header included"},
              {"files", std::move(files)}};
    return root.dump(2) + "\n";
}

std::string bench_table(const BenchReport& report) {
    std::ostringstream out;
    out << std::fixed;
    for (const auto& f : report.files) {
        out << f.path << "  (" << f.input_bytes << " bytes)\n";
        if (!f.error.empty()) {
            out << "  error: " << f.error << "\n\n";
            continue;
        }
        out << "  " << std::left << std::setw(8) << "algo" << std::right << std::setw(10) << "d" << std::setw(12)
            << "rhs" << std::setw(10) << "|tau|" << std::setw(12) << "size" << std::setw(12) << "build s" << "\n";
        for (Algorithm a : {Algorithm::RePair, Algorithm::MrRePair, Algorithm::RlMrRePair}) {
            auto it = std::find_if(f.cells.begin(), f.cells.end(), [&](const BenchCell& c) { return c.algo == a; });
            if (it == f.cells.end()) continue;
            out << "  " << std::left << std::setw(8) << algorithm_name(a) << std::right << std::setw(10) << it->grammar.d
                << std::setw(12) << it->grammar.rhs_total << std::setw(10) << it->grammar.tau_length << std::setw(12)
                << it->grammar.size << std::setw(12) << std::setprecision(3) << it->construct_seconds << "\n";
        }
        out << "  " << std::left << std::setw(8) << "algo" << std::setw(14) << "encoding" << std::right
            << std::setw(12) << "bytes" << std::setw(10) << "ratio %" << std::setw(12) << "encode s" << "\n";
        for (const auto& c : f.cells) {
            std::string enc(encoding_name(c.encoding));
            if (c.epsilon) enc += std::to_string(c.epsilon);
            out << "  " << std::left << std::setw(8) << algorithm_name(c.algo) << std::setw(14) << enc << std::right;
            if (c.verified)
                out << std::setw(12) << c.encoded_bytes << std::setw(10) << std::setprecision(2) << c.ratio_percent
                    << std::setw(12) << std::setprecision(4) << c.encode_seconds << "\n";
            else
                out << "  FAILED: " << c.error << "\n";
        }
        for (const auto& e : f.external)
            out << "  " << std::left << std::setw(22) << e.tool + " -9" << std::right << std::setw(12) << e.bytes
                << std::setw(10) << std::setprecision(2)
                << (f.input_bytes ? 100.0 * static_cast<double>(e.bytes) / static_cast<double>(f.input_bytes) : 0.0)
                << "\n";
        out << "\n";
    }
    out << "sizes include the container header; times are medians of " << report.reps << " run(s)\n";
    return out.str();
}

}  // namespace ragc
