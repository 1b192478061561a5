#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/documents.hpp"
#include "cli/expression.hpp"
#include "perfro/eigen.hpp"
#include "support/oracles.hpp"

using namespace perfro;
using namespace perfro::cli;
namespace fs = std::filesystem;
namespace pt = perfro::testing;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("perfro_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }

  int run_cli(std::vector<std::string> args) {
    out_.str({});
    err_.str({});
    args.insert(args.begin(), "perfro");
    return run(args, out_, err_);
  }

  std::string out() const { return out_.str(); }
  std::string err() const { return err_.str(); }
  fs::path dir() const { return dir_; }

 private:
  fs::path dir_;
  std::ostringstream out_, err_;
};

const char* kB = R"({"name": "B", "rows": [[2, 1], [2, -1]]})";
const char* kBSpec = R"({
  "name": "B",
  "real_blocks": [{"lambda": 2.5615528128088303, "size": 1},
                  {"lambda": -1.5615528128088303, "size": 1}],
  "complex_blocks": [],
  "transform": [[1, 1], [0.5615528128088303, -3.5615528128088303]]
})";

}  // namespace

TEST(ParseFunction, Atoms) {
  EXPECT_EQ(parse_function("exp").to_string(), "exp");
  EXPECT_EQ(parse_function("abs").to_string(), "abs");
  EXPECT_EQ(parse_function(" pow:4 ").to_string(), "pow:4");
  EXPECT_EQ(parse_function("root:3").to_string(), "root:3");
  EXPECT_EQ(parse_function("poly:1,-2.5,3e-1").to_string(), "poly:1,-2.5,0.3");
}

TEST(ParseFunction, WeightedSums) {
  const auto f = parse_function("0.5*exp + poly:1,2");
  EXPECT_EQ(f.to_string(), "0.5*exp + poly:1,2");
  EXPECT_NEAR(std::abs(f.eval(1.0) - (0.5 * std::exp(1.0) + 3.0)), 0.0, 1e-15);
  EXPECT_EQ(parse_function("-1*pow:1").eval(2.0), Complex(-2.0));
  EXPECT_EQ(parse_function("−1*pow:1").eval(2.0), Complex(-2.0));
}

TEST(ParseFunction, Errors) {
  for (const char* bad : {"", "   ", "sin", "pow:", "pow:0", "root:1", "pow:2.5", "poly:",
                          "poly:1,", "2*", "exp +", "exp exp", "*exp", "1e999*exp", "pow:-3",
                          "poly:1,,2", "exp+"}) {
    EXPECT_THROW(parse_function(bad), ParseError) << '"' << bad << '"';
  }
}

TEST(ParseFunction, RoundTripsThroughToString) {
  pt::Rng rng(157);
  const char* atoms[] = {"exp", "abs", "pow:3", "root:2", "poly:0.1,2,-3"};
  for (int t = 0; t < 200; ++t) {
    std::string text;
    const int terms = pt::uniform_int(rng, 1, 4);
    for (int k = 0; k < terms; ++k) {
      if (k) text += " + ";
      if (pt::uniform_int(rng, 0, 1)) {
        std::ostringstream w;
        w << pt::uniform(rng, -5, 5) << "*";
        text += w.str();
      }
      text += atoms[pt::uniform_int(rng, 0, 4)];
    }
    const auto f = parse_function(text);
    const auto g = parse_function(f.to_string());
    EXPECT_EQ(g.to_string(), f.to_string()) << text;
    if (!f.domain().contains(1.5)) continue;
    EXPECT_EQ(g.eval(1.5), f.eval(1.5)) << text;
  }
}

TEST(Documents, MatrixRoundTrip) {
  pt::Rng rng(163);
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<std::size_t>(pt::uniform_int(rng, 1, 7));
    MatR m = pt::random_matrix(rng, n, n, -1e3, 1e3);
    m(0, 0) = t % 3 == 0 ? 1e-300 : 0.1;
    const std::string text = write_matrix_document({"m" + std::to_string(t), m});
    const MatrixDocument back = parse_matrix_document(text);
    EXPECT_EQ(back.matrix, m);
    EXPECT_EQ(back.name, "m" + std::to_string(t));
    EXPECT_EQ(write_matrix_document(back), text);
  }
}

TEST(Documents, SpecRoundTrip) {
  pt::Rng rng(167);
  for (int t = 0; t < 50; ++t) {
    const auto planted = pt::plant_dominant_root(rng);
    SpecDocument doc{"s", planted.spec, std::nullopt};
    if (t % 2) doc.transform = random_orthogonal_transform(planted.spec, static_cast<std::uint64_t>(t));
    const std::string text = write_spec_document(doc);
    const SpecDocument back = parse_spec_document(text);
    EXPECT_EQ(back.spec, doc.spec);
    EXPECT_EQ(back.transform, doc.transform);
    EXPECT_EQ(write_spec_document(back), text);
  }
}

TEST(Documents, SyntaxErrorsCarryPosition) {
  try {
    parse_matrix_document("{\"rows\": [[1, 2],\n  [3, 4]\n  oops]}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  try {
    parse_matrix_document("");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 1, column 1"), std::string::npos) << e.what();
  }
}

TEST(Documents, StructuralErrorsNameTheField) {
  auto message = [](auto&& fn) {
    try {
      fn();
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("<no error>");
  };
  EXPECT_NE(message([] { parse_matrix_document(R"({"rows": [[1, 2], [3]]})"); }).find("rows[1]"),
            std::string::npos);
  EXPECT_NE(message([] { parse_matrix_document(R"({"rows": [[1, "x"]]})"); }).find("rows[0][1]"),
            std::string::npos);
  EXPECT_NE(message([] {
              parse_spec_document(R"({"complex_blocks": [{"re": 1, "im": -1, "size": 1}]})");
            }).find("complex_blocks[0]"),
            std::string::npos);
  EXPECT_NE(message([] {
              parse_spec_document(R"({"real_blocks": [{"lambda": 1, "size": 0}]})");
            }).find("real_blocks[0]"),
            std::string::npos);
  EXPECT_THROW(parse_input_document(R"({"name": "x"})"), ParseError);
  EXPECT_TRUE(std::holds_alternative<SpecDocument>(
      parse_input_document(R"({"real_blocks": [{"lambda": 1, "size": 1}]})")));
}

TEST_F(CliTest, CheckPfGolden) {
  EXPECT_EQ(run_cli({"check-pf", write("b.json", kB)}), kHolds);
  EXPECT_NE(out().find("2.5615528"), std::string::npos) << out();
}

TEST_F(CliTest, CheckPfSwapNamesDominance) {
  const auto path = write("swap.json", R"({"rows": [[0, 1], [1, 0]]})");
  EXPECT_EQ(run_cli({"check-pf", path}), kFails);
  EXPECT_NE(out().find("dominant"), std::string::npos) << out();
  EXPECT_EQ(run_cli({"--format", "json", "check-pf", path}), kFails);
  EXPECT_NE(out().find("\"strictly_dominant\""), std::string::npos) << out();
}

TEST_F(CliTest, CheckPfEmptyFile) {
  EXPECT_EQ(run_cli({"check-pf", write("empty.json", "")}), kUsageError);
  EXPECT_NE(err().find("line 1"), std::string::npos) << err();
  EXPECT_EQ(run_cli({"check-pf", (dir() / "missing.json").string()}), kUsageError);
}

TEST_F(CliTest, CheckEvpos) {
  EXPECT_EQ(run_cli({"check-evpos", write("b.json", kB)}), kHolds);
  EXPECT_NE(out().find("power threshold: 4 "), std::string::npos) << out();
  EXPECT_EQ(out().find("DEFECT"), std::string::npos);

  EXPECT_EQ(run_cli({"check-evpos", write("id.json", R"({"rows": [[1, 0], [0, 1]]})")}), kFails);
  EXPECT_NE(out().find("none <= 64"), std::string::npos) << out();

  EXPECT_EQ(run_cli({"check-evpos", write("ones.json", R"({"rows": [[1, 1], [1, 1]]})")}), kHolds);
  EXPECT_NE(out().find("power threshold: 1 "), std::string::npos) << out();

  EXPECT_EQ(run_cli({"--kmax", "0", "check-evpos", write("b2.json", kB)}), kUsageError);
}

TEST_F(CliTest, CheckEvposFlagsRouteDisagreement) {
  // Eventually positive, but B^k > 0 only from k = 4 on: a horizon of 3 makes
  // the two routes disagree.
  EXPECT_EQ(run_cli({"--kmax", "3", "check-evpos", write("b.json", kB)}), kHolds);
  EXPECT_NE(out().find("DEFECT"), std::string::npos) << out();
  EXPECT_NE(err().find("defect"), std::string::npos);
}

TEST_F(CliTest, ApplyFourthPower) {
  EXPECT_EQ(run_cli({"apply", write("b.json", kB), "--fn", "pow:4"}), kHolds);
  const MatrixDocument doc = parse_matrix_document(out());
  EXPECT_LT(max_abs_diff(doc.matrix, MatR{{38, 9}, {18, 11}}), 1e-9);
}

TEST_F(CliTest, ApplyIdentityReturnsInput) {
  pt::Rng rng(173);
  for (int t = 0; t < 10; ++t) {
    const MatR a = pt::random_matrix(rng, 4, 4);
    const auto path = write("a" + std::to_string(t) + ".json", write_matrix_document({"a", a}));
    ASSERT_EQ(run_cli({"apply", path, "--fn", "pow:1"}), kHolds) << err();
    EXPECT_LT(max_abs_diff(parse_matrix_document(out()).matrix, a), 1e-9);
  }
}

TEST_F(CliTest, ApplyExpOracle) {
  EXPECT_EQ(run_cli({"apply", write("b.json", kB), "--fn", "exp", "--oracle"}), kHolds);
  const auto at = err().find("deviation ");
  ASSERT_NE(at, std::string::npos) << err();
  EXPECT_LT(std::stod(err().substr(at + 10)), 1e-8);
  EXPECT_EQ(run_cli({"apply", write("b2.json", kB), "--fn", "root:3", "--oracle"}), kUsageError);
}

TEST_F(CliTest, ApplyErrors) {
  const auto b = write("b.json", kB);
  EXPECT_EQ(run_cli({"apply", b}), kUsageError);
  EXPECT_EQ(run_cli({"apply", b, "--fn", "sin"}), kUsageError);
  EXPECT_EQ(run_cli({"apply", b, "--fn", "root:2"}), kUsageError);
  EXPECT_NE(err().find("not defined"), std::string::npos) << err();
  EXPECT_EQ(run_cli({"apply", write("nil.json", R"({"rows": [[0, 1], [0, 0]]})"), "--fn", "exp"}),
            kUsageError);
  EXPECT_NE(err().find("spec document"), std::string::npos) << err();
}

TEST_F(CliTest, ApplyOnDefectiveSpec) {
  const auto spec = write("s.json", R"({"real_blocks": [{"lambda": 2, "size": 2}],
                                        "transform": [[1, 0], [0, 1]]})");
  EXPECT_EQ(run_cli({"apply", spec, "--fn", "pow:2"}), kHolds) << err();
  EXPECT_EQ(parse_matrix_document(out()).matrix, (MatR{{4, 4}, {0, 4}}));
  EXPECT_EQ(run_cli({"apply", spec, "--fn", "abs"}), kUsageError);
}

TEST_F(CliTest, VerifyExamples) {
  const auto spec = write("b_spec.json", kBSpec);
  EXPECT_EQ(run_cli({"verify", spec, "--fn", "exp"}), kHolds);
  EXPECT_NE(out().find("consistent"), std::string::npos) << out();
  EXPECT_EQ(run_cli({"--format", "json", "verify", spec, "--fn", "-1*pow:1"}), kHolds);
  EXPECT_NE(out().find("\"theorem_consistent\": true"), std::string::npos) << out();
  EXPECT_NE(out().find("\"f_is_frobenius\": false"), std::string::npos) << out();

  const auto neg = write("neg.json", R"({"real_blocks": [{"lambda": 3, "size": 1},
                                                          {"lambda": -1, "size": 1}],
                                         "complex_blocks": [{"re": 0.5, "im": 1, "size": 1}]})");
  EXPECT_EQ(run_cli({"verify", neg, "--fn", "root:2"}), kUsageError);
  EXPECT_NE(err().find("not defined on the spectrum"), std::string::npos) << err();
  EXPECT_EQ(run_cli({"verify", neg, "--fn", "root:3"}), kHolds) << err();
}

TEST_F(CliTest, VerifyRejectsNonPerronInput) {
  const auto swap = write("swap.json", R"({"rows": [[0, 1], [1, 0]]})");
  EXPECT_EQ(run_cli({"verify", swap, "--fn", "exp"}), kUsageError);
  EXPECT_NE(err().find("verify needs"), std::string::npos) << err();
}

TEST_F(CliTest, SynthesizeExamples) {
  const auto two = write("two.json", R"({"real_blocks": [{"lambda": 2, "size": 1},
                                                          {"lambda": -1, "size": 1}]})");
  EXPECT_EQ(run_cli({"--seed", "7", "synthesize", two}), kHolds);
  const std::string first = out();
  const MatR a = parse_matrix_document(first).matrix;
  EXPECT_LT(pt::multiset_distance(eigen_decompose(a).values, {2.0, -1.0}), 1e-7);
  EXPECT_NE(err().find("condition estimate"), std::string::npos);
  // Deterministic for a fixed seed, different for another.
  EXPECT_EQ(run_cli({"--seed", "7", "synthesize", two}), kHolds);
  EXPECT_EQ(out(), first);
  EXPECT_EQ(run_cli({"--seed", "8", "synthesize", two}), kHolds);
  EXPECT_NE(out(), first);

  EXPECT_EQ(run_cli({"synthesize", write("one.json", R"({"real_blocks": [{"lambda": 3, "size": 1}]})")}),
            kHolds);
  EXPECT_EQ(parse_matrix_document(out()).matrix, (MatR{{3}}));

  EXPECT_EQ(run_cli({"synthesize", write("bad.json", R"({"complex_blocks": [{"re": 1, "im": 0, "size": 1}]})")}),
            kUsageError);
  EXPECT_EQ(run_cli({"synthesize",
                     write("ill.json", R"({"real_blocks": [{"lambda": 1, "size": 1}, {"lambda": 2, "size": 1}],
                                          "transform": [[1, 1], [1, 1.00000001]]})")}),
            kUsageError);
}

TEST_F(CliTest, OutFlagWritesReparseableDocuments) {
  const auto spec = write("s.json", R"({"real_blocks": [{"lambda": 1.7, "size": 1}, {"lambda": -0.3, "size": 1}],
                                        "complex_blocks": [{"re": 0.1, "im": 0.9, "size": 1}]})");
  const std::string path = (dir() / "out.json").string();
  ASSERT_EQ(run_cli({"--seed", "3", "--out", path, "synthesize", spec}), kHolds);
  std::ifstream in(path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const MatrixDocument doc = parse_matrix_document(text);
  EXPECT_EQ(write_matrix_document(doc), text);

  const std::string applied = (dir() / "applied.json").string();
  ASSERT_EQ(run_cli({"--out", applied, "apply", path, "--fn", "exp", "--oracle"}), kHolds) << err();
  EXPECT_NE(out().find("oracle:"), std::string::npos);
  std::ifstream in2(applied);
  const std::string text2((std::istreambuf_iterator<char>(in2)), std::istreambuf_iterator<char>());
  EXPECT_EQ(write_matrix_document(parse_matrix_document(text2)), text2);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({}), kUsageError);
  EXPECT_EQ(run_cli({"frobnicate"}), kUsageError);
  EXPECT_EQ(run_cli({"check-pf"}), kUsageError);
  EXPECT_EQ(run_cli({"--tol", "-1", "check-pf", write("b.json", kB)}), kUsageError);
  EXPECT_EQ(run_cli({"--format", "xml", "check-pf", write("b2.json", kB)}), kUsageError);
  EXPECT_EQ(run_cli({"--help"}), kHolds);
  EXPECT_NE(out().find("check-evpos"), std::string::npos);
}

TEST_F(CliTest, NeverCrashesOnMalformedInput) {
  pt::Rng rng(179);
  const std::string alphabet = "{}[]\",:0123456789.-eE \nrowsnamelambdasizeimre_blockstransform";
  const std::string seeds[] = {kB, kBSpec, R"({"rows": []})", R"({"rows": [[1e400]]})",
                               R"({"rows": [[1, 2]]})", R"([1, 2])", "null", "\xff\xfe"};
  const char* commands[] = {"check-pf", "check-evpos", "apply", "verify", "synthesize"};
  for (int t = 0; t < 300; ++t) {
    std::string text = seeds[static_cast<std::size_t>(t) % std::size(seeds)];
    const int edits = pt::uniform_int(rng, 0, 6);
    for (int e = 0; e < edits && !text.empty(); ++e) {
      const auto at = static_cast<std::size_t>(pt::uniform_int(rng, 0, static_cast<int>(text.size()) - 1));
      if (pt::uniform_int(rng, 0, 1)) {
        text[at] = alphabet[static_cast<std::size_t>(pt::uniform_int(rng, 0, static_cast<int>(alphabet.size()) - 1))];
      } else {
        text.erase(at, 1);
      }
    }
    const auto path = write("fuzz.json", text);
    const char* cmd = commands[static_cast<std::size_t>(t) % std::size(commands)];
    const int code = run_cli({cmd, path, "--fn", "exp"});
    EXPECT_TRUE(code == kHolds || code == kFails || code == kUsageError) << text;
  }
}
