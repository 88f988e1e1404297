// Copyright 2026 The laprmt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>

#include "config.hpp"
#include "experiments.hpp"
#include "laprmt/laprmt.hpp"

namespace laprmt {
namespace {

TEST(MatrixIo, LaplacianRoundTripIsBitExact) {
  const auto h = sample_laplacian_type(EnsembleSpec::from_exponent(50, 0.35), 77);
  std::stringstream buf;
  write_laplacian(buf, h);
  const auto back = read_laplacian(buf);
  EXPECT_EQ(back.h, h.h);
  EXPECT_EQ(back.seed, 77u);
  EXPECT_EQ(back.law, h.law);
  EXPECT_EQ(back.degenerate, h.degenerate);
}

TEST(MatrixIo, DegenerateFlagSurvives) {
  EnsembleSpec s;
  s.n = 9;
  s.q = 3.0;
  const auto h = sample_laplacian_type(s, 1);
  std::stringstream buf;
  write_laplacian(buf, h);
  EXPECT_TRUE(read_laplacian(buf).degenerate);
}

TEST(MatrixIo, SymmetricAndEigenvectorPayloads) {
  const Matrix g = sample_goe(12, 3);
  std::stringstream a;
  write_symmetric(a, g, 5);
  ContainerHeader hdr;
  EXPECT_EQ(read_symmetric(a, &hdr), g);
  EXPECT_EQ(hdr.kind, PayloadKind::kSymmetricLower);
  EXPECT_EQ(hdr.size, 12u);
  EXPECT_EQ(hdr.seed, 5u);
  const Matrix v = symmetric_eigen(g).vectors.leftCols(4);
  std::stringstream b;
  write_eigenvectors(b, v, 6);
  EXPECT_EQ(read_eigenvectors(b), v);
}

TEST(MatrixIo, RejectsBadInput) {
  std::stringstream junk("NOTAMATRIX0000000000000000000000");
  EXPECT_THROW(read_symmetric(junk), FormatError);
  const Matrix g = sample_goe(6, 3);
  std::stringstream buf;
  write_symmetric(buf, g, 1);
  std::string bytes = buf.str();
  std::stringstream truncated(bytes.substr(0, bytes.size() - 5));
  EXPECT_THROW(read_symmetric(truncated), FormatError);
  std::stringstream wrong(bytes);
  EXPECT_THROW(read_laplacian(wrong), FormatError);
  std::stringstream out;
  EXPECT_THROW(write_symmetric(out, Matrix::Zero(2, 3), 0), DimensionMismatch);
}

TEST(MatrixIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "laprmt_io_test.bin";
  const auto h = sample_laplacian_type(EnsembleSpec::from_exponent(20, 0.35), 2);
  save_laplacian(path.string(), h);
  EXPECT_EQ(load_laplacian(path.string()).h, h.h);
  std::filesystem::remove(path);
  EXPECT_THROW(load_laplacian(path.string()), Error);
}

TEST(MatrixIo, CsvUsesFullPrecision) {
  Matrix m(1, 2);
  m << 0.1, -1.0 / 3.0;
  std::ostringstream out;
  write_matrix_csv(out, m);
  std::istringstream in(out.str());
  std::string a, b;
  std::getline(in, a, ',');
  std::getline(in, b);
  EXPECT_EQ(std::stod(a), 0.1);
  EXPECT_EQ(std::stod(b), -1.0 / 3.0);
}

namespace cli = laprmt::cli;

std::string issues_text(const cli::ConfigError& e) {
  std::string s;
  for (const auto& i : e.issues()) s += i.to_string() + "\n";
  return s;
}

TEST(Config, MissingSeedNamesTheField) {
  try {
    cli::validate_config("{\n  \"experiment\": \"density\"\n}\n");
    FAIL() << "expected a config error";
  } catch (const cli::ConfigError& e) {
    EXPECT_NE(issues_text(e).find("seed"), std::string::npos);
    EXPECT_NE(issues_text(e).find("missing"), std::string::npos);
  }
}

TEST(Config, SparsityExponentAboveOneHalf) {
  try {
    cli::validate_config("{\"experiment\": \"rigidity\",\n\"seed\": 1,\n\"q_exp\": 0.6}");
    FAIL() << "expected a config error";
  } catch (const cli::ConfigError& e) {
    ASSERT_EQ(e.issues().size(), 1u);
    EXPECT_EQ(e.issues()[0].key, "q_exp");
    EXPECT_EQ(e.issues()[0].line, 3);
    EXPECT_NE(e.issues()[0].message.find("q <= N^{1/2}"), std::string::npos);
  }
}

TEST(Config, UnknownKeysAndSyntaxErrors) {
  try {
    cli::validate_config("{\"experiment\": \"gaps\", \"seed\": 1,\n\"bogus\": 2}");
    FAIL();
  } catch (const cli::ConfigError& e) {
    EXPECT_EQ(e.issues()[0].key, "bogus");
    EXPECT_EQ(e.issues()[0].line, 2);
  }
  try {
    cli::validate_config("{\"experiment\": \"gaps\",\n\"seed\": }");
    FAIL();
  } catch (const cli::ConfigError& e) {
    EXPECT_EQ(e.issues()[0].line, 2);
  }
  EXPECT_THROW(cli::validate_config("{\"experiment\": \"gaps\", \"seed\": 1, \"n\": {\"a\": 1}}"),
               cli::ConfigError);
}

TEST(Config, MinimalConfigEchoesCanonicalForm) {
  const auto c = cli::validate_config("{\"experiment\": \"density\", \"seed\": 3}");
  const Json j = cli::canonical_json(c);
  EXPECT_EQ(j["experiment"], "density");
  EXPECT_EQ(j["seed"], 3);
  EXPECT_FALSE(j.contains("threads"));
  EXPECT_FALSE(j.contains("output_dir"));
  const auto again = cli::validate_config(j.dump());
  EXPECT_EQ(cli::canonical_json(again).dump(), j.dump());
  EXPECT_EQ(cli::config_hash(again), cli::config_hash(c));
  EXPECT_EQ(cli::config_hash(c).size(), 16u);
}

TEST(Config, HashIgnoresThreadsButNotSeed) {
  auto a = cli::validate_config("{\"experiment\": \"flow\", \"seed\": 3, \"threads\": 8}");
  auto b = cli::validate_config("{\"experiment\": \"flow\", \"seed\": 3, \"threads\": \"auto\"}");
  auto c = cli::validate_config("{\"experiment\": \"flow\", \"seed\": 4}");
  EXPECT_EQ(cli::config_hash(a), cli::config_hash(b));
  EXPECT_NE(cli::config_hash(a), cli::config_hash(c));
  EXPECT_EQ(a.threads, 8);
}

TEST(Config, ExperimentDefaults) {
  const auto id = cli::validate_config("{\"experiment\": \"identities\", \"seed\": 1}");
  EXPECT_EQ(id.n, 200);
  EXPECT_EQ(id.trials, 50);
  const auto rep = cli::validate_config("{\"experiment\": \"repulsion\", \"seed\": 1}");
  EXPECT_EQ(rep.n, 500);
  EXPECT_EQ(rep.trials, 2000);
  EXPECT_DOUBLE_EQ(rep.q_exp, 0.4);
  EXPECT_EQ(cli::validate_config("{\"experiment\": \"locallaw\", \"seed\": 1, \"q_exp\": 0.5}")
                .resolved_law(),
            EntryLaw::kGaussian);
}

TEST(Config, ExperimentNames) {
  EXPECT_EQ(cli::experiment_names().size(), 11u);
  for (const auto& name : cli::experiment_names()) {
    const auto e = cli::parse_experiment(name);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(cli::experiment_name(*e), name);
  }
  EXPECT_FALSE(cli::parse_experiment("nope").has_value());
}

TEST(Config, Fnv1aReferenceValues) {
  EXPECT_EQ(cli::fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(cli::fnv1a64("a"), 0xaf63dc4c8601ec8cull);
}

TEST(Experiments, IdentitiesSummaryIsThreadIndependent) {
  auto c = cli::validate_config(
      "{\"experiment\": \"identities\", \"seed\": 5, \"n\": 40, \"trials\": 4}");
  const auto one = cli::run_experiment(c, 1);
  const auto four = cli::run_experiment(c, 4);
  EXPECT_TRUE(one.report.passed());
  EXPECT_EQ(cli::summary_json(c, one).dump(2), cli::summary_json(c, four).dump(2));
  EXPECT_EQ(cli::summary_json(c, one)["schema"], "laprmt.summary/1");
  EXPECT_FALSE(one.detail.to_csv().empty());
}

TEST(Experiments, DensityWritesOutputs) {
  auto c = cli::validate_config("{\"experiment\": \"density\", \"seed\": 1}");
  const auto dir = std::filesystem::temp_directory_path() / "laprmt_cli_test";
  std::filesystem::create_directories(dir);
  c.output_dir = dir.string();
  const auto outcome = cli::run_experiment(c, 1);
  EXPECT_TRUE(outcome.report.passed()) << cli::format_checks(outcome);
  const auto paths = cli::write_outputs(c, outcome);
  ASSERT_EQ(paths.size(), 2u);
  for (const auto& p : paths) EXPECT_TRUE(std::filesystem::exists(p));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace laprmt
