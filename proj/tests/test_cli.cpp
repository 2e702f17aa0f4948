#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef DLM_CLI_PATH
#define DLM_CLI_PATH "./dlm"
#endif

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(DLM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("cli basic subcommands succeed") {
    CHECK(run("chars --q 12 --format csv --out /tmp/dlm_chars.csv --verify") == 0);
    auto text = slurp("/tmp/dlm_chars.csv");
    CHECK(text.rfind("index,conductor,primitive,parity", 0) == 0);
    CHECK(run("gauss --q 5 --format json --out /tmp/dlm_gauss.json") == 0);
    auto doc = nlohmann::json::parse(slurp("/tmp/dlm_gauss.json"));
    CHECK(doc["rows"].size() == 3);  // phi*(5) = 3
    CHECK(run("kloosterman --k 2 --v 1 --q 3 --format text") == 0);
    CHECK(run("lvalue --q 4 --index 1 --s 1,0") == 0);
    CHECK(run("prime-sums --kind reciprocal --x 1000") == 0);
    CHECK(run("schedule --q 1000000 --delta 0.5 --a 1,1") == 0);
    CHECK(run("moment --q 6 --t 0 --a 1") == 0);  // zero moment, reported not an error
    CHECK(run("powerest --q 5 --x 2 --k 1") == 0);
}

TEST_CASE("cli exit codes: domain, resource, check failure") {
    CHECK(run("kloosterman --k 2 --v 2 --q 4") == 1);            // gcd(v, q) > 1
    CHECK(run("kloosterman --k 9 --v 1 --q 101") == 2);          // cost cap
    CHECK(run("schedule --q 100 --delta 0.5 --a 1,1") == 1);     // q below schedule domain
    CHECK(run("moment --q 20000 --t 0 --a 1") == 2);             // cost cap
    CHECK(run("sweep --moduli prime:101..103 --t 0,0 --a 1,1 --unknown-flag 3") != 0);
    CHECK(run("afe-check --q 5 --t 0 --X 1 --tol 1e-30") == 3);  // unreachable tolerance
}

TEST_CASE("cli afe and fe checks pass at documented tolerances") {
    CHECK(run("afe-check --q 13 --t 0,1 --X 0.5,1,2 --format json --out /tmp/dlm_afe.json") == 0);
    auto doc = nlohmann::json::parse(slurp("/tmp/dlm_afe.json"));
    for (auto& row : doc["rows"]) CHECK(std::stod(row["rel_dev"].get<std::string>()) < 1e-6);
    CHECK(run("fe-check --q 5 --s 0.5,2") == 0);
}

TEST_CASE("cli sweep determinism: byte-identical CSV") {
    std::string args = "sweep --moduli prime:101..199 --t 0,0 --a 1,1 --format csv";
    CHECK(run(args + " --threads 4 --out /tmp/dlm_sweep1.csv") == 0);
    CHECK(run(args + " --threads 1 --out /tmp/dlm_sweep2.csv") == 0);
    auto a = slurp("/tmp/dlm_sweep1.csv");
    auto b = slurp("/tmp/dlm_sweep2.csv");
    CHECK(!a.empty());
    CHECK(a == b);
    CHECK(a.rfind("q,phi,phi_star,moment,main_term,ratio", 0) == 0);
}

TEST_CASE("cli proof-split and surrogate") {
    CHECK(run("proof-split --q 101 --t 0,1 --a 1,1 --delta 0.5") == 0);
    CHECK(run("surrogate --q 13 --t 0 --a 1 --variant nonquadratic") == 0);
    CHECK(run("mollifier-check --q 1000003 --delta 0.5 --t 0,1 --a 1,1 --length 2000") == 0);
}
