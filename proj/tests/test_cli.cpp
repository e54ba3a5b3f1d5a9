#include <doctest.h>

#include <sstream>

#include "twistrank/cli.hpp"
#include "twistrank/record.hpp"

using namespace twistrank;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"bogus"}).code == cli::kUsage);
    CHECK(run({"--help"}).code == cli::kSuccess);
    CHECK(run({"omega", "20"}).code == cli::kDomain);
    CHECK(run({"omega", "abc"}).code == cli::kUsage);
    CHECK(run({"omega", "5"}).code == cli::kSuccess);
    CHECK(run({"search", "--max", "60000"}).code == cli::kUsage);
    CHECK(run({"predict", "--n", "635318657", "--p", "41"}).code == cli::kDomain);
    CHECK(run({"jacobi", "3", "8"}).code == cli::kDomain);
    CHECK(run({"classify", "12"}).code == cli::kDomain);
    CHECK(run({"factor", "0"}).code == cli::kDomain);
}

TEST_CASE("search formats") {
    auto text = run({"search", "--max", "200"});
    CHECK(text.code == 0);
    CHECK(text.out.find("635318657") != std::string::npos);
    auto csv = run({"search", "--max", "200", "--format", "csv"});
    CHECK(csv.out == "n,u,v,r,s\n635318657,59,158,133,134\n");
    auto json = run({"search", "--max", "200", "--format", "json"});
    auto rec = OutputRecord::from_json_line(json.out.substr(0, json.out.find('\n')));
    CHECK(rec.command == "search");
    CHECK(rec.result.at("n") == "635318657");
}

TEST_CASE("table csv and skipped rows") {
    auto t = run({"table", "--n", "635318657", "--pmax", "50", "--format", "csv"});
    CHECK(t.code == 0);
    CHECK(t.out.rfind("p,p_mod_8,omega,predicted_parity,theorem_case,consistent\n", 0) == 0);
    CHECK(t.out.find("3,3,1,Even,3.1(ii)b,true") != std::string::npos);
    CHECK(t.err.find("41") != std::string::npos);
    auto j = run({"table", "--n", "635318657", "--pmax", "50", "--format", "json"});
    CHECK(j.out.find("\"status\":\"error\"") != std::string::npos);
}

TEST_CASE("single-value commands") {
    CHECK(run({"omega", "886117685355977"}).out.find("-1") != std::string::npos);
    CHECK(run({"jacobi", "3", "7"}).out == "(3/7) = -1\n");
    CHECK(run({"factor", "635318657"}).out == "635318657 = 41 * 113 * 241 * 569\n");
    CHECK(run({"euler", "--a", "2", "--b", "1"}).out.find("158") != std::string::npos);
    CHECK(run({"classify", "3"}).out.find("RankZero") != std::string::npos);
    CHECK(run({"verify-choudhry"}).code == 0);
    auto kp = run({"known-points", "--u", "59", "--v", "158", "--r", "133", "--s", "134"});
    CHECK(kp.code == 0);
    CHECK(kp.out.find("(-17689, 2388148)") != std::string::npos);
    auto pts = run({"points", "--a", "-25", "--b", "0", "--bound", "50"});
    CHECK(pts.out.find("(-4, 6)") != std::string::npos);
    auto d = run({"descend", "--", "-25"});
    CHECK(d.code == 0);
    CHECK(d.out.find("lower=1 upper=1") != std::string::npos);
}

TEST_CASE("output does not depend on worker count") {
    auto s1 = run({"search", "--max", "700", "--workers", "1"});
    CHECK(run({"search", "--max", "700", "--workers", "2"}).out == s1.out);
    CHECK(run({"search", "--max", "700", "--workers", "8"}).out == s1.out);
    auto d1 = run({"descend", "--workers", "1", "--format", "json", "--", "-1225"});
    CHECK(run({"descend", "--workers", "8", "--format", "json", "--", "-1225"}).out == d1.out);
    auto t1 = run({"table", "--n", "635318657", "--pmax", "500", "--workers", "1"});
    CHECK(run({"table", "--n", "635318657", "--pmax", "500", "--workers", "8"}).out == t1.out);
}
