#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "test_support.hpp"

using namespace wmp;
using wmp::testing::fixture_path;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "wmpinv");
    std::ostringstream out, err;
    Outcome o;
    o.code = cli::run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = std::filesystem::temp_directory_path() /
               ("wmpinv_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text)
    {
        const auto p = dir_ / name;
        std::ofstream(p, std::ios::binary) << text;
        return p.string();
    }

    std::filesystem::path dir_;
};

const char* kA = "matrix 3 4 field=rational\n1 2 3 4\n2 4 6 8\n1 0 1 0\n";
const char* kM = "matrix 3 3 field=rational\n2 1 0\n1 2 0\n0 0 1\n";
const char* kN = "matrix 4 4 field=rational\n3 1 0 0\n1 2 0 0\n0 0 1 0\n0 0 0 1\n";

} // namespace

TEST_F(CliTest, InvertMatchesLibraryByteForByte)
{
    const auto a = write("a.txt", kA), m = write("m.txt", kM), n = write("n.txt", kN);
    const auto expected = serialize_matrix(wmp_wang(convert_to<Rational>(parse_matrix(kA)),
                                                    convert_to<Rational>(parse_matrix(kM)),
                                                    convert_to<Rational>(parse_matrix(kN))));
    for (const char* alg : {"wang", "udwadia", "both"}) {
        const Outcome o = run_cli({"invert", "--matrix", a, "--left-weight", m, "--right-weight", n, "--algorithm", alg});
        EXPECT_EQ(o.code, 0) << o.err;
        EXPECT_EQ(o.out, expected) << alg;
    }
    const Outcome both = run_cli({"invert", "--matrix", a, "--left-weight", m, "--right-weight", n});
    EXPECT_NE(both.err.find("equivalent: exact"), std::string::npos);
}

TEST_F(CliTest, InvertWritesOutputFileAndVerifyAccepts)
{
    const auto a = write("a.txt", kA), m = write("m.txt", kM), n = write("n.txt", kN);
    const auto x = (dir_ / "x.txt").string();
    const Outcome inv = run_cli({"invert", "--matrix", a, "--left-weight", m, "--right-weight", n, "--output", x});
    ASSERT_EQ(inv.code, 0) << inv.err;
    EXPECT_TRUE(inv.out.empty());
    const Outcome ver = run_cli({"verify", "--matrix", a, "--inverse", x, "--left-weight", m, "--right-weight", n});
    EXPECT_EQ(ver.code, 0);
    EXPECT_EQ(ver.out, "(1) AXA=A: PASS\n(2) XAX=X: PASS\n(3M) (MAX)*=MAX: PASS\n(4N) (NXA)*=NXA: PASS\n");

    // Without the weights the same X fails the symmetry conditions.
    const Outcome unweighted = run_cli({"verify", "--matrix", a, "--inverse", x});
    EXPECT_EQ(unweighted.code, cli::kCheckFailed);
    EXPECT_NE(unweighted.out.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, VerifyFloatReportsResiduals)
{
    const auto a = write("a.txt", "matrix 2 2 field=float\n2 0\n0 4\n");
    const auto x = write("x.txt", "matrix 2 2 field=float\n0.5 0\n0 0.25\n");
    const Outcome o = run_cli({"verify", "--matrix", a, "--inverse", x});
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("residual="), std::string::npos);
}

TEST_F(CliTest, FloatAndRationalWeightsMix)
{
    const auto a = write("a.txt", "matrix 2 2 field=float\n1 2\n2 4\n");
    const auto m = write("m.txt", "matrix 2 2 field=rational\n2 1\n1 2\n");
    const Outcome o = run_cli({"invert", "--matrix", a, "--left-weight", m});
    EXPECT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out.rfind("matrix 2 2 field=float\n", 0), 0u);
}

TEST_F(CliTest, ExitCodes)
{
    const auto a = write("a.txt", kA);
    EXPECT_EQ(run_cli({"invert", "--matrix", write("bad.txt", "matrix 1 1 field=rational\n1/0\n")}).code, cli::kInput);
    EXPECT_EQ(run_cli({"invert", "--matrix", (dir_ / "missing.txt").string()}).code, cli::kInput);
    EXPECT_EQ(run_cli({"invert", "--matrix", a, "--left-weight", write("n.txt", kN)}).code, cli::kDimension);
    const auto indefinite = write("ind.txt", "matrix 3 3 field=rational\n1 2 0\n2 1 0\n0 0 1\n");
    const Outcome spd = run_cli({"invert", "--matrix", a, "--left-weight", indefinite});
    EXPECT_EQ(spd.code, cli::kNotSpd);
    EXPECT_NE(spd.err.find("WeightNotSPD"), std::string::npos);
    EXPECT_TRUE(spd.out.empty());

    const auto row = write("row.txt", "matrix 1 2 field=rational\n1 1\n");
    const auto ones = write("ones.txt", "matrix 2 2 field=rational\n1 1\n1 1\n");
    EXPECT_EQ(run_cli({"invert", "--matrix", row, "--right-weight", ones, "--no-validate"}).code, cli::kDegenerate);

    const auto ratfun = write("r.txt", "matrix 1 1 field=ratfun\nx\n");
    const auto flt = write("f.txt", "matrix 1 1 field=float\n1\n");
    EXPECT_EQ(run_cli({"verify", "--matrix", ratfun, "--inverse", flt}).code, cli::kInput);
    EXPECT_EQ(run_cli({"invert"}).code, cli::kInput);
    EXPECT_EQ(run_cli({}).code, cli::kInput);
    EXPECT_EQ(run_cli({"invert", "--matrix", a, "--algorithm", "greville"}).code, cli::kInput);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST_F(CliTest, GenMatchesLibrary)
{
    GenSpec spec;
    spec.rows = 3;
    spec.cols = 4;
    spec.degree = 2;
    spec.prob1 = 0.5;
    spec.seed = 99;
    const Outcome o = run_cli({"gen", "--rows", "3", "--cols", "4", "--degree", "2", "--prob1", "0.5", "--seed", "99"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out, serialize_matrix(random_matrix<RatFun>(spec)));

    const Outcome spd = run_cli({"gen", "--rows", "4", "--spd", "--seed", "3"});
    EXPECT_EQ(spd.out, serialize_matrix(random_spd<Rational>(4, 3)));
    EXPECT_TRUE(is_spd(convert_to<Rational>(parse_matrix(spd.out))).ok);
}

TEST_F(CliTest, GenRejectsInvalidCombinations)
{
    EXPECT_EQ(run_cli({"gen", "--rows", "2", "--cols", "2", "--degree", "1", "--field", "float", "--seed", "1"}).code,
              cli::kInput);
    EXPECT_EQ(run_cli({"gen", "--rows", "2", "--cols", "2", "--prob1", "2", "--seed", "1"}).code, cli::kInput);
    EXPECT_EQ(run_cli({"gen", "--rows", "2", "--seed", "1"}).code, cli::kInput);
    EXPECT_EQ(run_cli({"gen", "--rows", "0", "--cols", "2", "--seed", "1"}).code, cli::kInput);
}

TEST_F(CliTest, BenchRowsReproducibleAndGated)
{
    const std::vector<std::string> args{"bench", "--sizes", "3x4,4x3", "--degrees", "0,1", "--trials", "2", "--seed", "7"};
    const Outcome a = run_cli(args);
    const Outcome b = run_cli(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_NE(a.err.find("not reproduced"), std::string::npos);
    EXPECT_NE(a.err.find("equivalence gate passed"), std::string::npos);

    auto content = [](const std::string& tsv) {
        // Drop the two timing columns.
        std::istringstream in(tsv);
        std::string line, out;
        while (std::getline(in, line)) {
            std::istringstream fields(line);
            std::string f;
            int col = 0;
            while (std::getline(fields, f, '\t')) {
                if (col != 6 && col != 7) out += f + "|";
                ++col;
            }
            out += "\n";
        }
        return out;
    };
    EXPECT_EQ(content(a.out), content(b.out));
    EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "rows\tcols\tdegree\tfield\talgorithm\ttrials\tmedian_s\tmean_s\tseed");
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 9);
    EXPECT_NE(a.out.find("3\t4\t1\tratfun\tudwadia\t2\t"), std::string::npos);
}

TEST_F(CliTest, BenchCsvAndErrors)
{
    const Outcome csv = run_cli({"bench", "--sizes", "2x2", "--degrees", "0", "--trials", "1", "--format", "csv"});
    EXPECT_EQ(csv.code, 0);
    EXPECT_EQ(csv.out.rfind("rows,cols,degree,field,algorithm,trials,median_s,mean_s,seed\n", 0), 0u);
    EXPECT_EQ(run_cli({"bench", "--sizes", "3y4"}).code, cli::kInput);
    EXPECT_EQ(run_cli({"bench", "--sizes", "3x4", "--degrees", "2", "--field", "rational"}).code, cli::kInput);
    EXPECT_EQ(run_cli({"bench"}).code, cli::kInput);
    EXPECT_EQ(run_cli({"bench", "--sizes", "3x4", "--trials", "0"}).code, cli::kInput);
}

TEST_F(CliTest, ExampleFixtureRoundTrip)
{
    const Outcome o = run_cli({"invert", "--matrix", fixture_path("example2_A.txt"), "--algorithm", "both"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(parse_matrix(o.out), parse_matrix(wmp::testing::read_fixture("example2_published.txt")));
}
