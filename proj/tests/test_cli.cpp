#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "padyn/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
    json parsed() const { return json::parse(out); }
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = padyn::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST(Cli, FixedPoints) {
    const Result r = call({"fixed-points", "--p", "13", "--a", "14/1", "--b", "14/1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = r.parsed();
    EXPECT_EQ(j.at("x0_kind"), "Attracting");
    EXPECT_EQ(j.at("x1_kind"), "Repelling");
    EXPECT_EQ(j.at("x2_kind"), "Repelling");
    EXPECT_EQ(j.at("x0").at("p"), 13);
    EXPECT_EQ(j.at("delta").at("digits")[0], 9);
}

TEST(Cli, GlobalFlagsBeforeSubcommand) {
    const Result r = call({"--p", "7", "fixed-points", "--a", "50", "--b", "8"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.parsed().at("x1").is_null());
}

TEST(Cli, DomainErrorsExitOne) {
    EXPECT_EQ(call({"periodic", "--p", "13", "--a", "170/1?", "--b", "14", "--word", "12"}).code, 1);
    EXPECT_EQ(call({"periodic", "--p", "13", "--a", "2", "--b", "14", "--word", "12"}).code, 1);
    EXPECT_EQ(call({"periodic", "--p", "7", "--a", "50", "--b", "8", "--word", "12"}).code, 1);
    EXPECT_EQ(call({"fixed-points", "--p", "4", "--a", "5", "--b", "9"}).code, 1);
    EXPECT_EQ(call({"classify", "--p", "13", "--a", "170", "--b", "14", "--x", "2"}).code, 1);
    const Result r = call({"itinerary", "--p", "13", "--a", "170", "--b", "14", "--x", "1"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.parsed().at("error"), "EscapeError");
}

TEST(Cli, UsageErrors) {
    EXPECT_NE(call({}).code, 0);
    EXPECT_NE(call({"bogus"}).code, 0);
    EXPECT_NE(call({"fixed-points", "--p", "13"}).code, 0);
    EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Cli, PrecisionErrorsExitTwo) {
    const Result r = call({"gibbs", "solve", "--p", "5", "--precision", "12", "--guard", "11", "--J", "5", "--J1", "5"});
    EXPECT_EQ(r.code, 2) << r.out;
}

TEST(Cli, GibbsVerifyUnitField) {
    const Result r = call({"gibbs", "verify", "--p", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.parsed().at("compatibility").at("worst_residual"), "0");
    EXPECT_TRUE(r.parsed().at("compatibility").at("compatible"));
}

TEST(Cli, GibbsVerifyFailureExitsThree) {
    const Result r = call({"gibbs", "verify", "--p", "5", "--J", "5", "--J1", "5"});
    EXPECT_EQ(r.code, 3);
    EXPECT_FALSE(r.parsed().at("compatibility").at("compatible"));
}

TEST(Cli, GibbsSolveAndPeriodic) {
    const Result s = call({"gibbs", "solve", "--p", "5", "--J", "5", "--J1", "5", "--entries"});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_EQ(s.parsed().at("compatibility").at("entries").size(), 8u);
    const Result per = call({"gibbs", "periodic", "--p", "5", "--J", "25", "--J1", "5", "--word", "12"});
    ASSERT_EQ(per.code, 0) << per.err;
    EXPECT_EQ(per.parsed().at("period"), 2);
    const Result none = call({"gibbs", "periodic", "--p", "5", "--J", "25", "--J1", "5", "--k", "3"});
    EXPECT_EQ(none.code, 3);
}

TEST(Cli, GibbsJobFile) {
    const std::string path = ::testing::TempDir() + "padyn_job.json";
    {
        std::ofstream f(path);
        f << R"({"p": 5, "precision": 40, "k": 2, "n": 2, "J": "25", "J1": "5", "J0": "0", "field": "orbit:12"})";
    }
    const Result r = call({"gibbs", "verify", "--job", path});
    ASSERT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_EQ(r.parsed().at("field").at("placement"), "conjugate-square");
    EXPECT_EQ(r.parsed().at("classes")[0].at("++").at("digits").size(), 40u);
    std::remove(path.c_str());
    EXPECT_EQ(call({"gibbs", "verify", "--job", path}).code, 1);
}

TEST(Cli, OrbitBasinCylindersLemmas) {
    const Result o = call({"orbit", "--p", "13", "--a", "170", "--b", "14", "--x", "1", "--steps", "3"});
    ASSERT_EQ(o.code, 0);
    EXPECT_EQ(o.parsed().at("iterates").size(), 4u);
    const Result b = call({"basin", "--p", "13", "--a", "170", "--b", "14", "--x", "1"});
    EXPECT_EQ(b.parsed().at("outcome"), "InBasin");
    const Result c = call({"cylinders", "--p", "13", "--a", "170", "--b", "14", "--depth", "2"});
    EXPECT_EQ(c.parsed().at("cylinders").size(), 4u);
    const Result l = call({"lemmas", "--p", "13", "--a", "170", "--b", "14"});
    EXPECT_TRUE(l.parsed().at("fixed_point_clauses").at("all_hold"));
    EXPECT_TRUE(l.parsed().at("expansion").at("holds"));
    const Result l7 = call({"lemmas", "--p", "7", "--a", "50", "--b", "8"});
    EXPECT_TRUE(l7.parsed().at("expansion").is_null());
}

TEST(Cli, DeterministicOutput) {
    const std::vector<std::string> args{"periodic", "--p", "13", "--a", "170", "--b", "14", "--word", "1,2,2"};
    const Result a = call(args), b = call(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.parsed().at("itinerary"), "122");
}
