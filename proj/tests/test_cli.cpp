#include "doctest.h"

#include <sstream>

#include "json.hpp"
#include "reference_formulas.hpp"
#include "subcubes/cli.hpp"

using namespace subcubes;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("central moment in plain text") {
    auto r = run({"central", "--r", "1", "--k", "3", "--format", "plain"});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "3*n^3*2^n/64\n");
}

TEST_CASE("global flags before or after the subcommand") {
    CHECK(run({"--format", "json", "mean", "--r", "1"}).out == run({"mean", "--r", "1", "--format", "json"}).out);
}

TEST_CASE("json output wraps the query") {
    auto r = run({"moment", "--rs", "1,1,1", "--format", "json"});
    REQUIRE(r.code == exit_ok);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["query"]["command"] == "moment");
    CHECK(j["query"]["rs"] == nlohmann::json::array({1, 1, 1}));
    CHECK(BiPoly::from_json(j["result"].dump()) == reference::moms_111());
}

TEST_CASE("worked subset counts") {
    const char* expected[] = {"6\n", "6\n", "1\n", "0\n"};
    for (int r = 0; r <= 3; ++r) {
        auto res = run({"count", "--s", "000,001,010,011,100,111", "--r", std::to_string(r)});
        CHECK(res.code == exit_ok);
        CHECK(res.out == expected[r]);
        CHECK(run({"count", "--s", "000,001,010,011,100,111", "--r", std::to_string(r), "--method", "naive"}).out ==
              expected[r]);
    }
}

TEST_CASE("verify against both oracles") {
    auto r = run({"verify", "--n", "2", "--rs", "1,1", "--oracle", "subsets"});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "9/4 = 9/4\n");
    r = run({"verify", "--n", "2", "--rs", "1", "--oracle", "tuples", "--p", "1/3"});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "4/9 = 4/9\n");
    r = run({"verify", "--n", "2", "--rs", "1", "--oracle", "subsets", "--p", "1/3"});
    CHECK(r.code == exit_usage);
}

TEST_CASE("closed forms and engine through the CLI") {
    CHECK(run({"variance", "--r", "2", "--closed-form"}).out == run({"variance", "--r", "2"}).out);
    CHECK(run({"second-moment", "--r", "1", "--closed-form"}).out == run({"second-moment", "--r", "1"}).out);
    CHECK(run({"mean", "--r", "1"}).out == "n*2^n/8\n");
    CHECK(run({"mean", "--r", "1", "--p", "1/3"}).out == "n*2^n/18\n");
    CHECK(run({"moment", "--rs", "1,1", "--mode", "exhaustive"}).out == run({"moment", "--rs", "1,1"}).out);
}

TEST_CASE("limits and cumulants") {
    auto r = run({"limits", "--r", "1", "--kmax", "4"});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "k=1 limit=0 normal=0 match\nk=2 limit=1 normal=1 match\nk=3 limit=0 normal=0 match\n"
                   "k=4 limit=3 normal=3 match\n");
    r = run({"cumulants", "--r", "1", "--kmax", "3", "--format", "json"});
    CHECK(r.code == exit_ok);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"][0]["deg_q"] == 1);
    CHECK(j["result"][0]["deg_n"] == 3);
    CHECK(j["result"][0]["pass"] == true);
}

TEST_CASE("dependency graph and ratio") {
    auto r = run({"depgraph", "--n", "3", "--r", "1", "--format", "json"});
    REQUIRE(r.code == exit_ok);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["vertices"] == 12);
    CHECK(j["result"]["max_degree"] == 4);
    CHECK(j["result"]["is_regular"] == true);
    r = run({"ratio", "--r", "0", "--m", "3", "--n-range", "6:6"});
    CHECK(r.code == exit_ok);
    CHECK(r.out == "n M source ratio ratio_with_bound\n6 1 graph 1 1\n");
    CHECK(run({"ratio", "--r", "1", "--n-range", "9:3"}).code == exit_usage);
}

TEST_CASE("Monte Carlo output is reproducible and thread independent") {
    auto a = run({"mc", "--n", "8", "--r", "1", "--k", "2", "--samples", "3000", "--seed", "42"});
    auto b = run({"mc", "--n", "8", "--r", "1", "--k", "2", "--samples", "3000", "--seed", "42", "--threads", "2"});
    CHECK(a.code == exit_ok);
    CHECK(a.out == b.out);
    CHECK(a.out.find("seed=42") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == exit_usage);
    CHECK(run({"frobnicate"}).code == exit_usage);
    CHECK(run({"central", "--r", "1"}).code == exit_usage);
    CHECK(run({"mean", "--r", "1", "--p", "1"}).code == exit_usage);
    CHECK(run({"mean", "--r", "1", "--p", "0/1"}).code == exit_usage);
    CHECK(run({"mean", "--r", "1", "--p", "0.5"}).code == exit_usage);
    CHECK(run({"mean", "--r", "1", "--format", "xml"}).code == exit_usage);
    auto r = run({"moment", "--rs", "1,1,1,1", "--budget-kernels", "5"});
    CHECK(r.code == exit_resource_abort);
    CHECK(r.err.find("budget") != std::string::npos);
    CHECK(run({"verify", "--n", "5", "--rs", "1", "--oracle", "subsets"}).code == exit_usage);
    CHECK(run({"verify", "--n", "9", "--rs", "1,1,1", "--oracle", "tuples", "--tuple-budget", "10"}).code ==
          exit_resource_abort);
    CHECK(run({"--help"}).code == exit_ok);
}
