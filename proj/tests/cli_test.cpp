#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "qexplain/cli.hpp"

namespace {

const std::string kData = QEXPLAIN_TEST_DATA;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "qexplain");
    std::ostringstream out;
    std::ostringstream err;
    const int code = qexplain::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

std::string golden(const std::string& name)
{
    std::ifstream in(data("golden/" + name), std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void expect_golden(const std::vector<std::string>& args, const std::string& name)
{
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, golden(name)) << name;
}

} // namespace

TEST(CliGolden, SignedSupports)
{
    expect_golden({"supports", "--db", data("recipe.facts"), "--query", data("q_fish.query")}, "supports_signed.txt");
}

TEST(CliGolden, PositiveSupportsJson)
{
    expect_golden({"supports", "--db", data("recipe.facts"), "--query", data("q_fish.query"), "--kind", "positive",
                   "--format", "json"},
                  "supports_positive.json");
}

TEST(CliGolden, TriangleScores)
{
    expect_golden({"score", "--db", data("triangle.facts"), "--query", data("triangle.query")}, "score_triangle.txt");
    expect_golden({"score", "--db", data("triangle.facts"), "--query", data("triangle.query"), "--format", "json"},
                  "score_triangle.json");
}

TEST(CliGolden, DrasticSingleFact)
{
    expect_golden({"score", "--db", data("recipe.facts"), "--query", data("q2.query"), "--measure", "drastic",
                   "--fact", "I(mp,wine)", "--method", "permutation"},
                  "score_drastic_q2.txt");
}

TEST(CliGolden, Relevance)
{
    expect_golden({"relevance", "--db", data("recipe.facts"), "--query", data("q_fish.query")}, "relevance_fish.txt");
}

TEST(CliGolden, Analyze)
{
    expect_golden({"analyze", "--query", data("q_fish.query"), "--format", "json"}, "analyze_fish.json");
}

TEST(CliGolden, Compare)
{
    expect_golden({"compare", "--db", data("recipe.facts"), "--query", data("q2.query"), "--format", "json"},
                  "compare_q2.json");
    expect_golden({"compare", "--db", data("empty.facts"), "--query", data("q2.query"), "--format", "json"},
                  "compare_empty.json");
}

TEST(Cli, ParallelOutputIsIdentical)
{
    for (const std::string cmd : {"score", "compare"}) {
        const std::vector<std::string> base{cmd, "--db", data("triangle.facts"), "--query", data("triangle.query"),
                                            "--format", "json"};
        auto parallel = base;
        parallel.insert(parallel.end(), {"--parallel", "4"});
        const auto a = run(base);
        const auto b = run(parallel);
        EXPECT_EQ(a.code, 0);
        EXPECT_EQ(a.out, b.out) << cmd;
    }
}

TEST(Cli, MethodsAgree)
{
    auto values = [](const std::string& method) {
        return run({"score", "--db", data("recipe.facts"), "--query", data("q2.query"), "--measure", "mps",
                    "--method", method})
            .out;
    };
    const auto closed = values("closed-form");
    EXPECT_EQ(closed, values("subset"));
    // Permutation output carries extra ordering columns; compare the score column only.
    const auto perm = values("permutation");
    std::istringstream a(closed);
    std::istringstream b(perm);
    std::string la;
    std::string lb;
    while (std::getline(a, la) && std::getline(b, lb)) {
        std::istringstream ta(la);
        std::istringstream tb(lb);
        std::string fa, va, fb, vb;
        ta >> fa >> va;
        tb >> fb >> vb;
        EXPECT_EQ(fa, fb);
        EXPECT_EQ(va, vb);
    }
}

TEST(Cli, ConstantWeight)
{
    const auto r = run({"score", "--db", data("triangle.facts"), "--query", data("triangle.query"), "--weight",
                        "constant", "--fact", "+E(b,c)"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("+E(b,c)  2"), std::string::npos) << r.out;
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({"score", "--db", data("recipe.facts"), "--query", data("malformed.query")}).code, 1);
    EXPECT_EQ(run({"score", "--db", data("missing.facts"), "--query", data("q2.query")}).code, 1);
    EXPECT_EQ(run({"score", "--query", data("q2.query")}).code, 1);
    EXPECT_EQ(run({"score", "--db", data("recipe.facts"), "--query", data("q2.query"), "--measure", "drastic",
                   "--weight", "constant"})
                  .code,
              1);
    EXPECT_EQ(run({"score", "--db", data("recipe.facts"), "--query", data("q2.query"), "--measure", "drastic",
                   "--method", "closed-form"})
                  .code,
              1);
    EXPECT_EQ(run({"analyze", "--query", data("unsafe.query")}).code, 2);
    EXPECT_EQ(run({"score", "--db", data("recipe.facts"), "--query", data("q2.query"), "--fact", "I(zz,wine)"}).code,
              2);
    EXPECT_EQ(run({"supports", "--db", data("recipe.facts"), "--query", data("q_fish.query"), "--cap-signed", "5"})
                  .code,
              3);
    const auto capped = run({"score", "--db", data("recipe.facts"), "--query", data("q2.query"), "--measure",
                             "drastic", "--method", "permutation", "--cap-perm", "3"});
    EXPECT_EQ(capped.code, 3);
    EXPECT_NE(capped.out.find("cap is 3"), std::string::npos);
}

TEST(Cli, BinaryRoundTrip)
{
    const std::string cmd = std::string(QEXPLAIN_BIN) + " score --db " + data("triangle.facts") + " --query " +
                            data("triangle.query") + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::string out;
    std::array<char, 256> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe))
        out += buf.data();
    const int status = pclose(pipe);
    EXPECT_EQ(WEXITSTATUS(status), 0);
    EXPECT_EQ(out, golden("score_triangle.txt"));

    FILE* bad = popen((std::string(QEXPLAIN_BIN) + " analyze --query " + data("unsafe.query") + " 2>/dev/null").c_str(),
                      "r");
    ASSERT_NE(bad, nullptr);
    while (std::fgets(buf.data(), buf.size(), bad)) {
    }
    EXPECT_EQ(WEXITSTATUS(pclose(bad)), 2);
}
