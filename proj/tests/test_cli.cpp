#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "cli_runner.hpp"

TEST(Cli, Encode) {
    EXPECT_EQ(run_cli("encode g 011").out, "3/2^3\n");
    EXPECT_EQ(run_cli("encode sum 01 10").out, "0110\n");
    EXPECT_EQ(run_cli("encode interval 10").out, "[1/2^1, 3/2^2]\n");
    EXPECT_EQ(run_cli("encode proj1 0110").out, "10\n");
    EXPECT_EQ(run_cli("encode decode 3/8 3").out, "011\n");
    EXPECT_EQ(run_cli("--json encode g 011").out, "\"3/2^3\"\n");
    EXPECT_EQ(run_cli("encode grid 1").out, "0/2^0 1/2^1 1/2^0\n");
    EXPECT_NE(run_cli("encode decode 1 3").code, 0);
    EXPECT_NE(run_cli("encode frob 1").code, 0);
}

TEST(Cli, Tree) {
    auto one = write_temp("one.json", R"({"type":"explicit","words":["","1"]})");
    EXPECT_EQ(run_cli("tree longest " + one + " --depth 3").out, "{\"word\":\"100\",\"status\":{\"longest\":1}}\n");
    auto full = write_temp("full.json", R"({"type":"full","depth":3})");
    EXPECT_EQ(run_cli("tree longest " + full + " --depth 3").out, "{\"word\":\"000\",\"status\":\"full_depth\"}\n");
    auto r = run_cli("tree longest " + one + " --depth 3 --check-lpp");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"lpp_check\":\"ok\""), std::string::npos);

    auto bad = write_temp("bad.json", R"({"type":"explicit","words":["","01"]})");
    auto e = run_cli("tree longest " + bad + " --depth 3");
    EXPECT_NE(e.code, 0);
    EXPECT_NE(e.err.find("prefix-closure violated at \"01\""), std::string::npos);
}

TEST(Cli, Witness) {
    auto r = run_cli("witness --expr \"x\" --eps 1/2^2 --delta 1/2^1 --max-depth 8");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("{\"outcome\":\"found\",\"x\":\"0/2^0\",\"y\":\"3/2^3\",\"flip_level\":3,", 0), 0u);
    auto none = run_cli("witness --expr \"0\" --eps 1/2^2 --delta 1/2^1");
    EXPECT_EQ(none.code, 2);
    EXPECT_EQ(none.out, "{\"outcome\":\"none_up_to\",\"depth\":8}\n");
}

TEST(Cli, ModulusAndVerify) {
    auto m = run_cli("modulus --expr \"abs(x-1/2)\" --eps 1/2^3");
    EXPECT_EQ(m.code, 0);
    EXPECT_NE(m.out.find("\"certified\":true"), std::string::npos);
    auto pos = m.out.find("\"delta_exp\":");
    ASSERT_NE(pos, std::string::npos);
    EXPECT_GE(std::stoi(m.out.substr(pos + 12)), 3);

    auto v = run_cli("verify --expr \"x\" --eps 1/2^2 --delta 1/2^1");
    EXPECT_EQ(v.code, 2);
    EXPECT_NE(v.out.find("\"x\":\"0/2^0\",\"y\":\"3/2^3\""), std::string::npos);

    EXPECT_EQ(run_cli("verify --expr \"x\" --eps 1/2^2 --delta 1/2^3").code, 0);
}

TEST(Cli, ConfigErrors) {
    EXPECT_EQ(run_cli("witness --expr \"x +\" --eps 1/4 --delta 1/2").code, 1);
    EXPECT_EQ(run_cli("witness --expr \"x\" --eps 1/3 --delta 1/2").code, 1);
    EXPECT_EQ(run_cli("witness --expr \"x\" --eps -1/4 --delta 1/2").code, 1);
    EXPECT_EQ(run_cli("--bogus encode g 1").code, 1);
    EXPECT_EQ(run_cli("modulus --expr \"x\" --eps 1/4 --strategy sideways").code, 1);
    EXPECT_EQ(run_cli("").code, 1);
}

TEST(Cli, DepthExhaustedExitCode) {
    EXPECT_EQ(run_cli("verify --expr \"x\" --eps 1/2^4 --delta 1/2^40").code, 3);
}
