#include "cli.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = sumsets::cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, SumsetText) {
    auto r = run({"sumset", "-p", "5", "-k", "2", "-l", "0", "-B", "0,1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0,1,2\n0x07\n");
    auto h = run({"sumset", "-p", "7", "-k", "1", "-l", "1", "-B", "0x03"});
    EXPECT_EQ(h.out, "0,1,6\n0x43\n");
}

TEST(Cli, SumsetJson) {
    auto r = run({"--seed", "4", "sumset", "-p", "5", "-B", "0,1", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    auto j = json_of(r);
    EXPECT_EQ(j["sumset"]["list"], "0,1,2");
    EXPECT_EQ(j["seed"], 4);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run({"sumset", "-p", "5", "-B", "0,9"}).code, 2);
    EXPECT_EQ(run({"sumset", "-p", "6", "-B", "0"}).code, 2);
    EXPECT_EQ(run({"sumset", "-p", "5"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
    EXPECT_EQ(run({"census", "-p", "31", "-k", "2", "-l", "0"}).code, 2);
    EXPECT_EQ(run({"census", "-p", "7", "-k", "1", "-l", "0"}).code, 2);
    EXPECT_EQ(run({"lowerbound", "-p", "13", "-k", "2", "-l", "0"}).code, 2);
    EXPECT_EQ(run({"granularize", "-p", "101", "-A", ""}).code, 2);
    EXPECT_EQ(run({"granularize", "-p", "101", "-A", "1,2", "--eps1", "0"}).code, 2);
    EXPECT_EQ(run({"granularize", "-p", "101"}).code, 2);
    auto e = run({"sumset", "-p", "5", "-B", "0,9"});
    EXPECT_NE(e.err.find("InvalidResidue"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
    auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("census"), std::string::npos);
    EXPECT_EQ(run({"census", "--help"}).code, 0);
}

TEST(Cli, CensusJsonAndCsv) {
    auto j = json_of(run({"census", "-p", "5", "-k", "2", "-l", "0"}));
    EXPECT_EQ(j["total_distinct"], 17);
    EXPECT_EQ(j["method"], "direct");
    EXPECT_TRUE(j["elapsed_ms"].is_null());
    EXPECT_TRUE(j.contains("seed"));
    EXPECT_FALSE(j.contains("members"));
    auto m = json_of(run({"census", "-p", "5", "-k", "1", "-l", "1", "--members", "--method", "symmetric"}));
    EXPECT_EQ(m["members"].size(), 5U);
    EXPECT_EQ(m["members"][2]["hex"], "0x0d");
    auto csv = run({"census", "-p", "3", "-k", "1", "-l", "1", "--format", "csv"});
    EXPECT_EQ(csv.out, "p,k,l,total,ss_prime,ss_double_prime,lb,ub,elapsed_ms\n3,1,1,3,1,2,2,2,\n");
    auto both = run({"census", "-p", "7", "-k", "2", "-l", "1", "--method", "both", "--exclude-empty"});
    EXPECT_EQ(both.code, 0);
    EXPECT_EQ(json_of(both)["total_distinct"], 29);
    auto timed = json_of(run({"census", "-p", "5", "-k", "2", "-l", "0", "--timing"}));
    EXPECT_TRUE(timed["elapsed_ms"].is_number());
}

TEST(Cli, CensusWorkersByteIdentical) {
    auto a = run({"--workers", "1", "census", "-p", "13", "-k", "2", "-l", "0", "--members"});
    auto b = run({"--workers", "8", "census", "-p", "13", "-k", "2", "-l", "0", "--members"});
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, VerifySuites) {
    auto r = run({"verify", "--suite", "lemma6", "-r", "2"});
    ASSERT_EQ(r.code, 0);
    auto j = json_of(r);
    EXPECT_EQ(j["reports"][0]["values"]["s(r=2)"], 6.0);
    EXPECT_EQ(run({"verify", "--suite", "cd", "-p", "5", "-m", "3"}).code, 0);
    auto rand = run({"--seed", "3", "verify", "--suite", "cd", "-p", "97", "--mode", "random", "--samples", "200"});
    EXPECT_EQ(rand.code, 0);
    EXPECT_EQ(json_of(rand)["reports"][0]["instances_checked"], 200);
    EXPECT_EQ(rand.out, run({"--seed", "3", "verify", "--suite", "cd", "-p", "97", "--mode", "random", "--samples", "200"}).out);
    EXPECT_EQ(run({"verify", "--suite", "lemma7", "-p", "5"}).code, 0);
}

TEST(Cli, VerifyReportsViolationsWithExitFour) {
    // the stated granular-family bound fails at p = 7, L = 5
    auto r = run({"verify", "--suite", "lemma7", "-p", "7"});
    EXPECT_EQ(r.code, 4);
    EXPECT_EQ(json_of(r)["ok"], false);
}

TEST(Cli, Granularize) {
    auto r = run({"--seed", "9", "granularize", "-p", "101", "--random", "30", "-L", "10"});
    ASSERT_EQ(r.code, 0);
    auto j = json_of(r);
    EXPECT_EQ(j["A"]["size"], 30);
    EXPECT_EQ(j["params"]["L"], 10);
    EXPECT_EQ(j["seed"], 9);
    EXPECT_EQ(r.out, run({"--seed", "9", "granularize", "-p", "101", "--random", "30", "-L", "10"}).out);
    auto d = json_of(run({"granularize", "-p", "31", "-A", "0,1,2,3,4,5"}));
    EXPECT_EQ(d["params"]["L"], 6);  // 1 + floor(1/0.2)
}

TEST(Cli, LowerboundDeterministic) {
    auto a = run({"--seed", "11", "lowerbound", "-p", "101", "-k", "2", "-l", "0", "--samples", "300"});
    auto b = run({"--seed", "11", "--workers", "3", "lowerbound", "-p", "101", "-k", "2", "-l", "0", "--samples", "300"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto j = json_of(a);
    EXPECT_EQ(j["stats"]["seed"], 11);
    EXPECT_EQ(j["config"]["L"], 32);
    auto ex = json_of(run({"lowerbound", "-p", "101", "-k", "2", "-l", "0", "--exhaustive"}));
    EXPECT_EQ(ex["stats"]["samples"], 32);
    EXPECT_EQ(ex["stats"]["mode"], "exhaustive");
    auto csv = run({"lowerbound", "-p", "89", "-k", "2", "-l", "0", "--exhaustive", "--format", "csv"});
    EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "p,k,l,L,N,free,prob,distinct_good,bound");
    EXPECT_EQ(run({"lowerbound", "-p", "13", "-k", "2", "-l", "0", "--allow-degenerate", "--exhaustive"}).code, 0);
}

TEST(Cli, OutputFile) {
    const std::string path = ::testing::TempDir() + "sumsets_cli_out.txt";
    auto r = run({"-o", path, "sumset", "-p", "5", "-B", "0,1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), "0,1,2\n0x07\n");
    std::remove(path.c_str());
}
