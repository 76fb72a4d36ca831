#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "artifact/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "artifact_cli");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = artifact::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli: partition exact") {
    Run r = run({"partition", "exact", "100"});
    CHECK(r.code == 0);
    CHECK(r.out == "190569292\n");
}

TEST_CASE("cli: usage errors exit 2 with usage text") {
    Run r = run({"partition", "exact", "100", "--bogus"});
    CHECK(r.code == 2);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(run({}).code == 2);
    CHECK(run({"special", "xi", "--x", "1", "--s-im", "0", "--route", "sideways"}).code == 2);
    CHECK(run({"special", "bessel", "1", "--prec", "32"}).code == 2);
    CHECK(run({"partition", "hrr", "1000", "--terms", "3"}).code == 2);
    CHECK(run({"padic", "verify", "--p", "4", "--m", "2"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli: hrr reports a certified match") {
    Run r = run({"partition", "hrr", "500", "--prec", "200"});
    CHECK(r.code == 0);
    CHECK(r.out.find("value=2300165032574323995027\n") != std::string::npos);
    CHECK(r.out.find("oracle=match") != std::string::npos);
}

TEST_CASE("cli: Kloosterman tables") {
    Run a = run({"kloosterman", "A", "7", "5"});
    CHECK(a.code == 0);
    CHECK(a.out.rfind("c,n,A_mid,A_rad,route\n", 0) == 0);
    CHECK(a.out.find(",definition\n") != std::string::npos);
    CHECK(a.out.find(",closed_form\n") != std::string::npos);

    Run p = run({"kloosterman", "partial-sum", "1", "4"});
    CHECK(p.code == 0);
    CHECK(p.out.rfind("X,re_mid,im_mid,rad\n", 0) == 0);
    CHECK(std::count(p.out.begin(), p.out.end(), '\n') == 5);
}

TEST_CASE("cli: failed verification exits 1") {
    Run r = run({"special", "xi", "--x", "0.5", "--s-im", "20"});
    CHECK(r.code == 1);
    CHECK(r.err.find("verification failed") != std::string::npos);
}

TEST_CASE("cli: xi rows and bessel") {
    Run r = run({"special", "xi", "--x", "-1", "--s-im", "0.4"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("x,s_im,route,re_mid,im_mid,rad\n", 0) == 0);
    CHECK(r.out.find(",closed,") != std::string::npos);
    CHECK(r.out.find(",quad,") != std::string::npos);
    Run b = run({"special", "bessel", "2"});
    CHECK(b.code == 0);
    CHECK(b.out.find("value=1.0994731886331096755") != std::string::npos);
}

TEST_CASE("cli: config file merges under flags, output is deterministic") {
    const std::string cfg = "cli_test_config.ini", o1 = "cli_test_1.json", o2 = "cli_test_2.json";
    {
        std::ofstream f(cfg);
        f << "seed=4\nprec=256\n[padic.verify]\np=2\nm=3\nsuite=adjoint\n";
    }
    Run r1 = run({"--config", cfg, "padic", "verify", "--out", o1});
    Run r2 = run({"--config", cfg, "padic", "verify", "--out", o2});
    CHECK(r1.code == 0);
    CHECK(r1.out.find("suite=adjoint") != std::string::npos);
    CHECK(slurp(o1) == slurp(o2));
    CHECK(slurp(o1).find("\"suite\": \"adjoint\"") != std::string::npos);

    Run low = run({"--config", cfg, "special", "bessel", "2", "--prec", "80"});
    Run high = run({"--config", cfg, "special", "bessel", "2"});
    CHECK(low.out != high.out);
    Run flag = run({"special", "bessel", "2", "--prec", "256"});
    CHECK(flag.out == high.out);
    std::remove(cfg.c_str());
    std::remove(o1.c_str());
    std::remove(o2.c_str());
}
