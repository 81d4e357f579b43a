#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sckn/assembly.hpp"
#include "sckn/cli.hpp"
#include "sckn/regions.hpp"
#include "sckn/spectral.hpp"
#include "sckn/sweep.hpp"

using namespace sckn;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args, std::string* captured = nullptr) {
    args.insert(args.begin(), "sckn");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (captured) *captured = out.str();
    return code;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
    std::ifstream in(path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("matrix dump survives a round trip and re-solves identically") {
    const auto pt = validate(0.3, 8.0);
    const auto m = assembly::assemble(pt, 24);
    const auto dir = fs::temp_directory_path() / "sckn_integration";
    fs::create_directories(dir);
    const auto path = dir / "m.bin";
    {
        std::ofstream out(path, std::ios::binary);
        assembly::write_binary(m, out);
    }
    CHECK(fs::file_size(path) == 32 + 8 * 48 * 48);
    std::ifstream in(path, std::ios::binary);
    const auto dump = assembly::read_binary(in);
    CHECK(dump.N == 24);
    CHECK(dump.alpha == 0.3);
    CHECK(dump.p == 8.0);
    CHECK(dump.data == m.data);
    CHECK(spectral::smallest_eigenvalue(dump.data) == spectral::smallest_eigenvalue(m.data));
}

TEST_CASE("CLI sweep file matches the library rows") {
    const auto dir = fs::temp_directory_path() / "sckn_integration";
    fs::create_directories(dir);
    const auto path = dir / "sweep.csv";
    REQUIRE(run({"sweep", "--n-alpha", "8", "--n-p", "9", "--N", "24", "--out", path.string()}) == cli::kOk);

    sweep::GridSpec g;
    g.n_alpha = 8;
    g.n_p = 9;
    g.N = 24;
    const auto rows = sweep::sign_map(g);
    const auto csv = read_csv(path);
    REQUIRE(csv.size() == rows.size() + 1);
    CHECK(csv[0].size() == 7);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& c = csv[i + 1];
        REQUIRE(c.size() == 7);
        CHECK(std::stod(c[0]) == rows[i].alpha);
        CHECK(std::stod(c[1]) == rows[i].p);
        CHECK(std::stoi(c[2]) == rows[i].N);
        CHECK(std::stod(c[3]) == rows[i].lambda_min);
        CHECK(c[4] == regions::to_string(rows[i].analytic_label.tag));
        CHECK(c[5] == sweep::to_string(rows[i].numeric_sign));
        CHECK(c[6] == (rows[i].converged ? "true" : "false"));
        // analytic labels never contradict the numerics
        if (rows[i].analytic_label.tag == regions::Region::ProvenSymmetry) {
            CHECK(rows[i].numeric_sign != sweep::NumericSign::Negative);
        }
        if (rows[i].analytic_label.tag == regions::Region::ProvenBreaking) {
            CHECK(rows[i].numeric_sign == sweep::NumericSign::Negative);
        }
    }
}

TEST_CASE("classify, eigen and boundary tell one story along p = 8") {
    std::string text;
    const auto br = sweep::boundary_bisect(8.0, 40, 1e-4);
    REQUIRE(run({"boundary", "--p", "8", "--tol", "1e-4"}, &text) == cli::kOk);
    CHECK(text.find(sweep::format_double(br.lo)) != std::string::npos);

    // just below the boundary: analytic test silent or symmetric, numerics stable
    const double below = br.lo - 0.01;
    REQUIRE(run({"eigen", "--alpha", sweep::format_double(below), "--p", "8", "--N", "40"}, &text) == cli::kOk);
    CHECK(text.find("lambda_min=-") == std::string::npos);
    CHECK(regions::classify(validate(below, 8.0)).tag != regions::Region::ProvenBreaking);

    // above the blue envelope: breaking both ways
    const double above = regions::alpha_on_blue_envelope(8.0) + 0.01;
    REQUIRE(run({"classify", "--alpha", sweep::format_double(above), "--p", "8"}, &text) == cli::kOk);
    CHECK(text.find("ProvenBreaking") != std::string::npos);
    REQUIRE(run({"eigen", "--alpha", sweep::format_double(above), "--p", "8"}, &text) == cli::kOk);
    CHECK(text.find("lambda_min=-") != std::string::npos);
}

TEST_CASE("eigvec output is the library profile") {
    std::string text;
    REQUIRE(run({"eigvec", "--alpha", "0.25", "--p", "9", "--N", "30", "--s-min", "-4", "--s-max", "4",
                 "--s-points", "9"},
                &text) == cli::kOk);
    const auto pt = validate(0.25, 9.0);
    const auto r = spectral::solve(assembly::assemble(pt, 30));
    std::vector<double> s;
    for (int i = 0; i < 9; ++i) s.push_back(-4.0 + i);
    const auto prof = spectral::eigenvector_to_s_profile(r, pt, s);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    for (int i = 0; i < 9; ++i) {
        std::getline(in, line);
        CHECK(line == sweep::format_double(s[i]) + "," + sweep::format_double(prof.upper[i]) + "," +
                          sweep::format_double(prof.lower[i]));
    }
}
