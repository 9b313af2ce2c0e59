#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include "ragc/corpus_io.hpp"

using namespace ragc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("ragc_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
    int status = std::system((std::string(RAGC_CLI) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("compress and decompress through the command line") {
    TempDir d;
    std::vector<std::uint8_t> data;
    for (int i = 0; i < 200; ++i)
        for (char c : std::string("grammar compression test line\n")) data.push_back(static_cast<std::uint8_t>(c));
    write_file(d / "in", data);
    for (std::string algo : {"repair", "mr", "rlmr"})
        for (std::string enc : {"32bit", "fble", "huffman", "pge", "poppt-ible", "poppt-pge"}) {
            CAPTURE(algo);
            CAPTURE(enc);
            REQUIRE(run("compress " + d / "in" + " --algo " + algo + " --encoding " + enc + " -o " + d / "c") == 0);
            REQUIRE(run("decompress " + d / "c" + " -o " + d / "out") == 0);
            CHECK(read_file(d / "out") == data);
        }
    CHECK(run("compress " + d / "in" + " --algo rlmr --encoding poppt-pge --epsilon 8 -o " + d / "f.ragc") == 0);
    CHECK(run("decompress " + d / "f.ragc") == 0);
    CHECK(read_file(d / "f") == data);
    CHECK(run("stats " + d / "f.ragc") == 0);
    CHECK(run("stats --json " + d / "f.ragc") == 0);
}

TEST_CASE("command line exit codes") {
    TempDir d;
    write_file(d / "in", std::vector<std::uint8_t>{'a', 'b', 'a', 'b'});
    write_file(d / "empty", {});
    CHECK(run("compress " + d / "in" + " --algo mr --encoding pairpge -o " + d / "x") == 1);
    CHECK(run("compress " + d / "in" + " --algo nope -o " + d / "x") == 1);
    CHECK(run("compress " + d / "in" + " --encoding fble --epsilon 4 -o " + d / "x") == 1);
    CHECK(run("frobnicate") == 1);
    CHECK(run("decompress " + d / "missing") == 2);

    CHECK(run("compress " + d / "empty" + " --algo repair --encoding fble -o " + d / "e.ragc") == 0);
    CHECK(fs::file_size(d / "e.ragc") == 9);
    CHECK(run("decompress " + d / "e.ragc" + " -o " + d / "e.out") == 0);
    CHECK(fs::file_size(d / "e.out") == 0);

    CHECK(run("compress " + d / "in" + " -o " + d / "c") == 0);
    auto file = read_file(d / "c");
    file[0] ^= 0xff;
    write_file(d / "bad", file);
    CHECK(run("decompress " + d / "bad" + " -o " + d / "x") == 3);
    file[0] ^= 0xff;
    file.resize(file.size() - 1);
    write_file(d / "short", file);
    CHECK(run("decompress " + d / "short" + " -o " + d / "x") == 3);
}

TEST_CASE("bench command writes a report") {
    TempDir d;
    fs::create_directories(d.path / "corpus");
    write_file(d.path / "corpus" / "f", std::vector<std::uint8_t>(5000, 'z'));
    CHECK(run("bench --corpus " + (d.path / "corpus").string() + " --reps 2 --no-external --report " + d / "r.json") == 0);
    CHECK(fs::file_size(d / "r.json") > 0);
    CHECK(run("bench --corpus " + d / "nowhere") == 2);
    CHECK(run("bench --corpus " + (d.path / "corpus").string() + " --algos bogus") == 1);
}
