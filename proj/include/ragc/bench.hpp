#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ragc/constructors.hpp"
#include "ragc/container.hpp"
#include "ragc/grammar.hpp"

namespace ragc {

struct BenchOptions {
    std::vector<std::filesystem::path> files;
    std::vector<Algorithm> algos{Algorithm::RePair, Algorithm::MrRePair, Algorithm::RlMrRePair};
    std::vector<EncodingChoice> encodings;  // empty: all seven
    unsigned reps = 1;
    unsigned threads = 0;    // 0: RAGC_THREADS, else hardware concurrency
    bool external = true;    // gzip / bzip2 when installed
};

/// One (file, algorithm, encoding) measurement. Sizes are only reported once
/// the container has decompressed back to the input.
struct BenchCell {
    Algorithm algo = Algorithm::RePair;
    Encoding encoding = Encoding::Fble;
    std::uint8_t epsilon = 0;
    GrammarStats grammar;
    std::uint64_t encoded_bytes = 0;
    double ratio_percent = 0;
    double construct_seconds = 0;
    double encode_seconds = 0;
    bool verified = false;
    std::string error;
};

struct ExternalSize {
    std::string tool;
    std::uint64_t bytes = 0;
};

struct BenchFile {
    std::string path;
    std::uint64_t input_bytes = 0;
    std::vector<BenchCell> cells;
    std::vector<ExternalSize> external;
    std::string error;  // set when the file could not be read
};

struct BenchReport {
    unsigned reps = 1;
    unsigned threads = 1;
    std::vector<BenchFile> files;
};

/// Regular files of a directory (sorted), or the path itself when it is a file.
std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& where);

BenchReport run_bench(const BenchOptions& options);

std::string bench_json(const BenchReport& report);
/// Aligned table: d, rhs, |tau|, size per algorithm, then ratios and times.
std::string bench_table(const BenchReport& report);

}  // namespace ragc
