#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "subapprox/cli.hpp"

using namespace subapprox::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "subapprox_test_cli";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::size_t data_rows(const std::string& csv) {
    std::size_t rows = 0;
    std::istringstream ss(csv);
    std::string line;
    bool header = false;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            continue;
        }
        ++rows;
    }
    return rows;
}

}  // namespace

TEST_CASE("plucker command") {
    auto r = call({"plucker", "--basis", "(1,0,2,0),(0,1,0,3)"});
    CHECK(r.code == kSuccess);
    CHECK(r.out.rfind("plucker 1 0 3 -2 0 6\nheight_sq 50\n", 0) == 0);
    r = call({"plucker", "--basis", "(1,2),(2,4)"});
    CHECK(r.code == kValidation);
    CHECK(r.err.find("error") != std::string::npos);
    CHECK(call({"plucker", "--basis", "(1,x,0)"}).code == kValidation);
    CHECK(call({"plucker"}).code == kValidation);
    CHECK(call({"plucker", "--basis", "(1,0),(0,1"}).code == kValidation);
}

TEST_CASE("real basis targets accept nested expressions") {
    const auto r = call({"frontier", "--target", "basis", "--basis", "(1,sqrt(2),0),(0,1,sqrt(3))", "--e", "1", "--hmax", "5",
                         "--format", "table"});
    CHECK(r.code == kSuccess);
    CHECK(r.out.rfind("frontier (n,d,e,j) = (3,2,1,1)\n", 0) == 0);
}

TEST_CASE("bounds command") {
    auto r = call({"bounds", "4", "2", "2", "1"});
    CHECK(r.code == kSuccess);
    CHECK(r.out.rfind("3 3\n", 0) == 0);
    CHECK(call({"bounds", "4", "4", "2", "1"}).code == kValidation);
    CHECK(call({"bounds", "--bogus"}).code == kValidation);
    r = call({"bounds", "--table", "4", "--format", "csv"});
    CHECK(r.code == kSuccess);
    CHECK(r.out.rfind("# subapprox ", 0) == 0);
}

TEST_CASE("enumerate command") {
    auto r = call({"enumerate", "--n", "2", "--e", "1", "--hmax", "2.3"});
    CHECK(r.code == kSuccess);
    CHECK(data_rows(r.out) == 8);
    CHECK(call({"enumerate", "--n", "2", "--e", "1"}).code == kValidation);
    r = call({"enumerate", "--n", "4", "--e", "2", "--hmax", "8", "--work-limit", "20000"});
    CHECK(r.code == kInternal);
    CHECK(r.out.find("# partial: true") != std::string::npos);
}

TEST_CASE("fit command recovers a planted slope") {
    const auto path = scratch("fit.csv");
    {
        std::ofstream f(path);
        f.precision(17);
        f << "# synthetic\nheight,psi\n";
        for (double h : {2.0, 3.0, 7.0, 20.0, 55.0}) f << h << ',' << 0.5 * std::pow(h, -2.0) << '\n';
    }
    const auto r = call({"fit", "--in", path.string(), "--format", "csv"});
    REQUIRE(r.code == kSuccess);
    std::istringstream ss(r.out);
    std::string line;
    std::getline(ss, line);
    std::getline(ss, line);
    std::getline(ss, line);
    CHECK(std::strtod(line.c_str(), nullptr) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("descriptor hash ignores outputs and tracks parameters") {
    Descriptor a;
    a.command = "frontier";
    a.parameters = {{"e", "2"}, {"target", "r4"}};
    a.hmax = "50";
    Descriptor b = a;
    b.outputs = {"x.csv"};
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().size() == 16);
    b.seed = 2;
    CHECK(a.hash() != b.hash());
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("frontier output is reproducible and honours environment overrides") {
    const auto p1 = scratch("f1.csv");
    const auto p2 = scratch("f2.csv");
    CHECK(call({"frontier", "--hmax", "20", "--workers", "1", "--out", p1.string()}).code == kSuccess);
    CHECK(call({"frontier", "--hmax", "20", "--workers", "3", "--out", p2.string()}).code == kSuccess);
    const auto first = slurp(p1);
    CHECK(first == slurp(p2));
    CHECK(first.find("# subapprox ") == 0);
    CHECK_FALSE(std::filesystem::exists(p1.string() + ".tmp"));

    ::setenv("SUBAPPROX_HMAX", "20", 1);
    ::setenv("SUBAPPROX_FORMAT", "json", 1);
    const auto r = call({"frontier"});
    ::unsetenv("SUBAPPROX_HMAX");
    ::unsetenv("SUBAPPROX_FORMAT");
    CHECK(r.code == kSuccess);
    CHECK(r.out.find("\"records\"") != std::string::npos);
    CHECK(call({"frontier"}).code == kValidation);
}

TEST_CASE("write_atomic replaces the whole file") {
    const auto p = scratch("atomic.txt");
    write_atomic(p.string(), "first version\n");
    write_atomic(p.string(), "second\n");
    CHECK(slurp(p) == "second\n");
    CHECK_THROWS(write_atomic((scratch("missing") / "dir" / "x").string(), "x"));
}
