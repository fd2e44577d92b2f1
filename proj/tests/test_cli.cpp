#include "hjc_cli.hpp"

#include <hjc/dpll.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace
{
    struct Result
    {
        int code;
        std::string out;
        std::string err;
    };

    Result run(std::vector<std::string> args)
    {
        std::ostringstream out, err;
        const int code = hjc::cli::run(args, out, err);
        return {code, out.str(), err.str()};
    }

    std::filesystem::path temp_file(const std::string & name)
    {
        auto dir = std::filesystem::temp_directory_path() / "hjc_cli_test";
        std::filesystem::create_directories(dir);
        return dir / name;
    }

    std::string first_line(const std::string & s) { return s.substr(0, s.find('\n')); }
}

TEST(Cli, LineCount)
{
    auto r = run({"lines", "--t", "3", "--n", "2", "--kind", "geometric", "--count"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "8\n");
    EXPECT_EQ(run({"lines", "--t", "2", "--n", "2", "--kind", "combinatorial", "--count"}).out, "5\n");
}

TEST(Cli, LineListing)
{
    auto r = run({"lines", "--t", "3", "--n", "2"});
    EXPECT_EQ(r.out, "=0,F\n=1,F\n=2,F\nF,=0\nF,=1\nF,=2\nF,F\nF,B\n");
}

TEST(Cli, LineHypergraph)
{
    auto r = run({"lines", "--t", "3", "--n", "1", "--hypergraph"});
    EXPECT_EQ(r.out, "3 1\n3 0 1 2\n");
}

TEST(Cli, LineJson)
{
    auto r = run({"lines", "--t", "4", "--n", "2", "--count", "--json"});
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["count"], 10);
}

// Golden tables.

TEST(Cli, HalvingSixByOne)
{
    auto r = run({"color", "--construction", "halving", "--t", "6", "--n", "1", "--grid"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0 0 1 1 2 2\n");
}

TEST(Cli, HalvingSixBySix)
{
    auto r = run({"color", "--construction", "halving", "--t", "6", "--n", "2", "--grid"});
    EXPECT_EQ(r.out, "0 0 3 3 6 6\n"
                     "0 0 3 3 6 6\n"
                     "1 1 4 4 7 7\n"
                     "1 1 4 4 7 7\n"
                     "2 2 5 5 8 8\n"
                     "2 2 5 5 8 8\n");
}

TEST(Cli, AntiLatinBase)
{
    auto r = run({"color", "--construction", "anti-latin", "--t", "4", "--grid"});
    EXPECT_EQ(r.out, "0 0 2 2\n0 0 2 2\n1 1 3 3\n1 1 3 3\n");
}

TEST(Cli, C33Classes)
{
    auto r = run({"color", "--construction", "c33", "--classes"});
    EXPECT_EQ(r.out, "C_0 = 000 001 002 020 022 200 202 220 222\n"
                     "C_1 = 010 011 012 021 101 111 201 210 221\n"
                     "C_2 = 100 102 110 112 120 121 122 211 212\n");
}

TEST(Cli, ColorJson)
{
    auto r = run({"--json", "color", "--construction", "halving", "--t", "4", "--n", "1"});
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["k"], 2);
    EXPECT_EQ(j["colors"], nlohmann::json::parse("[0,0,1,1]"));
}

TEST(Cli, ColorErrors)
{
    EXPECT_EQ(run({"color", "--construction", "halving", "--t", "5", "--n", "2"}).code, 2);
    EXPECT_EQ(run({"color", "--construction", "lift", "--t", "3", "--n", "2"}).code, 2);
    EXPECT_EQ(run({"color", "--construction", "bogus"}).code, 2);
    EXPECT_EQ(run({"color", "--construction", "halving", "--t", "4"}).code, 2);
    const auto r = run({"color", "--construction", "halving", "--t", "4", "--n", "2", "--frobnicate"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("--frobnicate"), std::string::npos);
}

TEST(Cli, VerifyConstructedColorings)
{
    for (std::vector<std::string> args : {std::vector<std::string>{"halving", "6", "2"},
                                          {"lift", "5", "3"},
                                          {"lift", "3", "4"},
                                          {"anti-latin", "7", ""},
                                          {"c33", "", ""}}) {
        const auto path = temp_file(args[0] + args[1] + ".col").string();
        std::vector<std::string> color{"color", "--construction", args[0], "-o", path};
        if (!args[1].empty())
            color.insert(color.end(), {"--t", args[1]});
        if (!args[2].empty())
            color.insert(color.end(), {"--n", args[2]});
        ASSERT_EQ(run(color).code, 0);
        auto r = run({"verify", path, "--expect-balanced", "--expect-rainbow-free"});
        EXPECT_EQ(r.code, 0) << r.out << r.err;
        EXPECT_NE(r.out.find("rainbow_count: 0"), std::string::npos);
        EXPECT_NE(r.out.find("balanced: true"), std::string::npos);
    }
}

TEST(Cli, VerifyDetectsRainbow)
{
    const auto path = temp_file("identity.col");
    {
        std::ofstream f(path);
        f << "3 2 9\n0 1 2\n3 4 5\n6 7 8\n";
    }
    auto r = run({"verify", path.string(), "--expect-rainbow-free"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("rainbow_count: 8"), std::string::npos);
    EXPECT_NE(r.out.find("witness: #0 =0,F [0 1 2]"), std::string::npos);
    EXPECT_EQ(run({"verify", path.string()}).code, 0);

    auto j = nlohmann::json::parse(run({"verify", path.string(), "--json", "--threads", "3"}).out);
    EXPECT_EQ(j["rainbow_count"], 8);
    EXPECT_EQ(j["balanced"], true);
    EXPECT_EQ(j["witness"]["vertices"], nlohmann::json::parse("[0,1,2]"));
}

TEST(Cli, VerifyInputErrors)
{
    EXPECT_EQ(run({"verify", "/nonexistent/file"}).code, 2);
    const auto path = temp_file("short.col");
    {
        std::ofstream f(path);
        f << "3 2 3\n0 1 2 0 1 2 0 1\n";
    }
    auto r = run({"verify", path.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("expected 9"), std::string::npos);
}

TEST(Cli, VerifyAgainstHypergraph)
{
    const auto graph = temp_file("ap9.hg");
    const auto col = temp_file("ap9.col");
    {
        std::ofstream g(graph);
        hjc::write_hypergraph(g, hjc::ap_hypergraph(9, 3));
        std::ofstream c(col);
        c << "9 0 3\n0 0 0 1 1 1 2 2 2\n";
    }
    auto r = run({"verify", col.string(), "--hypergraph", graph.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("lines: 16"), std::string::npos);
    EXPECT_EQ(run({"verify", col.string()}).code, 2); // no cube shape, no hypergraph
}

TEST(Cli, Search)
{
    auto r = run({"search", "--cube", "3", "2", "--kind", "geometric", "--k", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(first_line(r.out), "exhausted_no_witness");

    const auto witness = temp_file("w42.col");
    r = run({"search", "--cube", "4", "2", "--k", "4", "--witness-out", witness.string()});
    EXPECT_EQ(first_line(r.out), "witness_found");
    EXPECT_EQ(run({"verify", witness.string(), "--expect-balanced", "--expect-rainbow-free"}).code, 0);

    auto j = nlohmann::json::parse(run({"--json", "search", "--ap", "9", "3", "--k", "3"}).out);
    EXPECT_TRUE(j.contains("status"));
    EXPECT_TRUE(j.contains("nodes_explored"));

    EXPECT_EQ(run({"search", "--cube", "3", "2", "--k", "2"}).code, 2);
    EXPECT_EQ(run({"search", "--k", "2"}).code, 2);
    EXPECT_EQ(run({"search", "--cube", "3", "2", "--ap", "9", "3", "--k", "3"}).code, 2);
}

TEST(Cli, SearchNodeLimit)
{
    auto r = run({"search", "--ap", "12", "3", "--k", "3", "--node-limit", "5"});
    EXPECT_EQ(first_line(r.out), "node_limit_reached");
    EXPECT_NE(r.out.find("nodes_explored: 5"), std::string::npos);
}

TEST(Cli, ChiB)
{
    auto r = run({"chi-b", "--cube", "4", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(first_line(r.out), "2");
    auto j = nlohmann::json::parse(run({"--json", "chi-b", "--ap", "9", "3"}).out);
    EXPECT_EQ(j["certified"], true);
    EXPECT_TRUE(j["attempts"].is_array());
}

TEST(Cli, MapAp)
{
    EXPECT_EQ(run({"map-ap", "--t", "3", "--n", "2", "--point", "00"}).out, "1\n");
    EXPECT_EQ(run({"map-ap", "--t", "3", "--n", "2", "--line", "F,F"}).out, "1 5 9\ndifference 4\n");
    EXPECT_EQ(run({"map-ap", "--t", "3", "--n", "2", "--line", "F,B"}).out, "3 5 7\ndifference 2\n");
    EXPECT_EQ(run({"map-ap", "--t", "3", "--n", "2", "--line", "=0,=1"}).code, 2);

    const auto path = temp_file("c33.col");
    ASSERT_EQ(run({"color", "--construction", "c33", "-o", path.string()}).code, 0);
    const auto r = run({"map-ap", "--coloring", path.string()});
    EXPECT_EQ(r.out.substr(0, 7), "27 0 3\n");
}

TEST(Cli, ExportCnf)
{
    auto r = run({"export-cnf", "--cube", "3", "2", "--k", "3"});
    EXPECT_EQ(r.code, 0);
    std::istringstream in(r.out);
    const auto cnf = hjc::read_dimacs(in);
    EXPECT_NE(r.out.find("p cnf " + std::to_string(cnf.num_vars) + " " + std::to_string(cnf.clauses.size()) + "\n"),
              std::string::npos);

    const auto path = temp_file("c42.cnf");
    r = run({"export-cnf", "--cube", "4", "2", "--k", "4", "-o", path.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, 6), "p cnf ");
    EXPECT_EQ(run({"export-cnf", "--cube", "3", "2", "--k", "1"}).code, 2);
}

TEST(Cli, Usage)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"lines", "--t", "3"}).code, 2);
    EXPECT_EQ(run({"lines", "--t", "1", "--n", "2", "--count"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}
