#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI with stderr dropped, capturing stdout and the exit code.
RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(AXB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("evolve subcommand emits the exact law as JSON") {
    auto r = run_cli("evolve --mu 0:1/2,1:1/2 --p 5 --a 2 --n 2");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["config"]["p"] == 5);
    REQUIRE(j["results"]["probs"].size() == 5);
    CHECK(j["results"]["probs"][0].get<double>() == doctest::Approx(0.25));
    CHECK(j["results"]["probs"][4].get<double>() == doctest::Approx(0.0));
    CHECK(j["results"]["tv"].get<double>() == doctest::Approx(0.2));
    CHECK(j["failures"].empty());
}

TEST_CASE("exit code 2 on malformed command lines") {
    CHECK(run_cli("evolve --p 5 --a 2 --n 2 --bogus-flag 1").exit_code == 2);
    CHECK(run_cli("no-such-subcommand").exit_code == 2);
    CHECK(run_cli("evolve --a 2 --n 2").exit_code == 2);  // missing required --p
    CHECK(run_cli("cutoff-sweep --p 101").exit_code == 2);  // no --a / --a-sample
    CHECK(run_cli("verify --level bogus").exit_code == 2);
}

TEST_CASE("exit code 3 on a malformed step law") {
    CHECK(run_cli("evolve --mu garbage --p 5 --a 2 --n 2").exit_code == 3);
    CHECK(run_cli("evolve --mu 0:0.5,1:0.4 --p 5 --a 2 --n 2").exit_code == 3);
    CHECK(run_cli("mixing-time --mu 0:1 --p 101 --a 3").exit_code == 3);
}

TEST_CASE("exit code 4 when the work budget is exceeded") {
    CHECK(run_cli("evolve --p 10007 --a 2 --n 3 --budget-p 100").exit_code == 4);
    CHECK(run_cli("evolve --p 31 --a 2 --n 50 --budget-n 10").exit_code == 4);
    CHECK(run_cli("identity-check --p 10007 --n 50").exit_code == 4);
}

TEST_CASE("mixing-time subcommand") {
    auto r = run_cli("mixing-time --mu 0:1/2,1:1/2 --p 101 --a 3 --q 1 --delta 0.25");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["converged"] == true);
    CHECK(j["results"]["distance_at_t"].get<double>() <= 0.25);
    CHECK(j["results"]["t_mix"].get<int>() >= 1);
}

TEST_CASE("cutoff-sweep writes the CSV schema and is seed-deterministic") {
    std::string out1 = "/tmp/axb_test_sweep1.csv", out2 = "/tmp/axb_test_sweep2.csv";
    std::string args = "cutoff-sweep --mu 0:1/2,1:1/2 --p 101 --a-sample 3 "
                       "--n-grid 0.5,1,2 --seed 7 --workers 2 --out ";
    auto r1 = run_cli(args + out1);
    auto r2 = run_cli(args + out2);
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);

    json j = json::parse(r1.out);  // JSON summary on stdout when --out is used
    CHECK(j.contains("config"));
    CHECK(j.contains("results"));
    CHECK(j.contains("failures"));
    CHECK(j["results"]["failed_cells"] == 0);

    std::string csv1 = slurp(out1), csv2 = slurp(out2);
    CHECK(csv1 == csv2);
    REQUIRE(!csv1.empty());
    std::istringstream ss(csv1);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "p,a,n,order_a,admissible,tv,p_l2sq,entb_n,entb_bound,l2_lb");
    std::string line;
    std::size_t rows = 0;
    while (std::getline(ss, line))
        if (!line.empty()) {
            ++rows;
            CHECK(std::count(line.begin(), line.end(), ',') == 9);
            CHECK(line.rfind("101,", 0) == 0);
        }
    CHECK(rows >= 9);  // 3 multipliers x 3 grid points
    std::remove(out1.c_str());
    std::remove(out2.c_str());
}

TEST_CASE("support subcommand") {
    auto r = run_cli("support --mu -1:1/3,0:1/3,1:1/3 --p 31 --a 2 --n 20");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["reached_full"] == true);
    CHECK(j["results"]["sizes"][0] == 1);
    CHECK(j["results"]["sizes"][1] == 3);
    CHECK(j["results"]["diameter"].get<int>() >= 1);
}

TEST_CASE("konyagin subcommand") {
    auto r = run_cli("konyagin --p 5 --a 2 --n 3");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["energy"].get<double>() == doctest::Approx(0.4));
    CHECK(j["results"]["order_a"] == 4);
}

TEST_CASE("root-count subcommand") {
    auto r = run_cli("root-count --poly 1,0,1 --p 5 --n 1");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["Np"] == 2);
    CHECK(j["results"]["vanishing_reduction"] == false);
    CHECK(j["results"].contains("admissible"));
}

TEST_CASE("prime-average subcommand with CSV artifact") {
    std::string out = "/tmp/axb_test_pavg.csv";
    auto r = run_cli("prime-average --poly 1,0,1 --prime-lo 3 --prime-hi 200 --out " + out);
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["prime_count"].get<int>() > 0);
    std::string csv = slurp(out);
    std::istringstream ss(csv);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "p,logp,Np,excluded");
    std::remove(out.c_str());
}

TEST_CASE("identity-check subcommand") {
    auto r = run_cli("identity-check --mu 0:1/2,1:1/2 --p 7 --n 3");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["within_tolerance"] == true);
    CHECK(j["results"]["method"] == "exact-enumeration");

    auto rmc = run_cli("identity-check --mu 0:1/2,1:1/2 --p 101 --n 6 --samples 2000 --seed 3");
    REQUIRE(rmc.exit_code == 0);
    json jmc = json::parse(rmc.out);
    CHECK(jmc["results"]["method"] == "monte-carlo");
    CHECK(jmc["results"]["within_tolerance"] == true);
}

TEST_CASE("mahler and strip subcommands") {
    auto r = run_cli("mahler --poly -1,-1,1");
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out)["results"]["measure"].get<double>() ==
          doctest::Approx(1.618033988749895).epsilon(1e-9));

    auto s = run_cli("strip --poly 0,1,1,1,1,1");  // x * Phi_5
    REQUIRE(s.exit_code == 0);
    json js = json::parse(s.out);
    CHECK(js["results"]["monomial_power"] == 1);
    CHECK(js["results"]["reduced"] == "1");
    CHECK(js["results"]["cyclotomic_indices"][0]["k"] == 5);
}

TEST_CASE("verify quick level passes end to end") {
    auto r = run_cli("verify --level quick --seed 12345");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("verify: all checks passed") != std::string::npos);
}
