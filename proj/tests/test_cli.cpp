#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "commutant/cli.hpp"
#include "commutant/io.hpp"
#include "commutant/random.hpp"

using namespace commutant;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("commutant_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, GenKmatGolden) {
  const Outcome r = run({"gen-kmat", "2", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, io::read_file(std::string(COMMUTANT_GOLDEN_DIR) + "/kmat_2_3.txt"));
}

TEST(Cli, GenKmatBinaryMatchesGolden) {
  FILE* pipe = popen((std::string(COMMUTANT_CLI_PATH) + " gen-kmat 2 3").c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string out;
  char buf[256];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  EXPECT_EQ(WEXITSTATUS(pclose(pipe)), 0);
  EXPECT_EQ(out, io::read_file(std::string(COMMUTANT_GOLDEN_DIR) + "/kmat_2_3.txt"));
}

TEST(Cli, GenKmatTrivialAndJson) {
  EXPECT_EQ(run({"gen-kmat", "1", "1"}).out, "1\n");
  const Outcome r = run({"gen-kmat", "3", "2", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, io::commutation_to_json(build_commutation(3, 2)) + "\n");
  EXPECT_EQ(run({"--format", "json", "gen-kmat", "3", "2"}).out, r.out);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"gen-kmat", "0", "3"}).code, 2);
  EXPECT_EQ(run({"gen-kmat", "2"}).code, 2);
  EXPECT_EQ(run({"gen-kmat", "a", "3"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"gen-kmat", "2", "3", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
  EXPECT_EQ(run({"verify", "--sizes", "2by3"}).code, 2);
  EXPECT_EQ(run({"gen-gct", "2", "1,1"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, GenKtensor) {
  const Outcome r = run({"gen-ktensor", "3", "2"});
  EXPECT_EQ(r.code, 0);
  const Tensor T = io::tensor_from_json(r.out);
  EXPECT_EQ(T, build_ctensor(3, 2).backing());
  EXPECT_EQ((T.values().array() != 0).count(), 6);
  EXPECT_EQ(io::tensor_to_json(T) + "\n", r.out);
  EXPECT_EQ(run({"gen-ktensor", "1", "1"}).out, "{\"shape\":[1,1,1,1],\"values\":[1]}\n");
}

TEST(Cli, GenGct) {
  const Outcome r = run({"gen-gct", "2", "2,3,1"});
  EXPECT_EQ(r.code, 0);
  const auto G = io::gct_from_json(r.out);
  EXPECT_EQ(G.dense(), permutation_gct(Permutation::from_one_based({2, 3, 1}), 2).dense());
  const Outcome d = run({"gen-gct", "2", "2,1", "--dense"});
  const Tensor D = io::tensor_from_json(d.out);
  EXPECT_EQ(D.values().sum(), 4.0);
  EXPECT_EQ(D.at({0, 0, 1, 1}), 1.0);
  EXPECT_EQ(D.at({1, 0, 0, 1}), 1.0);
}

TEST(Cli, VerifyPasses) {
  const Outcome a = run({"verify", "--suite", "vec-identity", "--sizes", "2x3,3x4", "--seed", "7"});
  EXPECT_EQ(a.code, 0) << a.out;
  const Outcome b = run({"verify", "--suite", "group-axioms", "--sizes", "2x3"});
  EXPECT_EQ(b.code, 0);
  EXPECT_NE(b.out.find("PASS"), std::string::npos);
  EXPECT_EQ(run({"verify"}).code, 0);
}

TEST(Cli, VerifyFaultIsLocalized) {
  const Outcome r = run({"verify", "--suite", "powers", "--sizes", "5x2", "--inject-fault"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("5x2"), std::string::npos);
  const Outcome j = run({"verify", "--suite", "powers", "--sizes", "5x2", "--inject-fault",
                     "--format", "json"});
  EXPECT_NE(j.out.find("\"ok\":false"), std::string::npos);
}

TEST(Cli, VerifyIsDeterministicAndSeedSensitive) {
  const std::vector<std::string> args{"verify", "--suite", "preserver-suite", "--sizes", "3x2",
                                      "--format", "json", "--seed", "9"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, SeedFromEnvironment) {
  ::setenv("COMMUTANT_SEED", "12", 1);
  EXPECT_EQ(run({"verify", "--suite", "swap-law", "--sizes", "2x2"}).code, 0);
  ::setenv("COMMUTANT_SEED", "twelve", 1);
  EXPECT_EQ(run({"verify", "--suite", "swap-law", "--sizes", "2x2"}).code, 2);
  ::unsetenv("COMMUTANT_SEED");
}

TEST(Cli, ApplyIdentityAndSwap) {
  const std::string id = write_temp(
      "id.json", "{\"m\":2,\"n\":2,\"tau\":[1,2],\"matrices\":[[[1,0],[0,1]],[[1,0],[0,1]]]}");
  const std::string swap = write_temp(
      "swap.json", "{\"m\":2,\"n\":2,\"tau\":[2,1],\"matrices\":[[[1,0],[0,1]],[[1,0],[0,1]]]}");
  const std::string mat = write_temp("mat.txt", "1 2\n3 4\n");
  const Outcome a = run({"apply", id, mat});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(io::tensor_from_json(a.out).to_matrix(), io::matrix_from_text("1 2\n3 4\n"));
  const Outcome b = run({"apply", swap, mat});
  EXPECT_EQ(io::tensor_from_json(b.out).to_matrix(), io::matrix_from_text("1 3\n2 4\n"));
}

TEST(Cli, ApplyMatchesLibraryByteForByte) {
  Rng rng(3);
  const RankPreserver<double> phi({rng.invertible(3), rng.invertible(3), rng.invertible(3)},
                                  Permutation::rotation(3));
  const Tensor A = rng.tensor(Shape::cubical(3, 3));
  const std::string pf = write_temp("phi.json", io::preserver_to_json(phi));
  const std::string tf = write_temp("a.json", io::tensor_to_json(A));
  const Outcome r = run({"apply", pf, tf});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, io::tensor_to_json(apply_rank_preserver(phi, A)) + "\n");
}

TEST(Cli, ApplyMatrixPreserver) {
  const std::string pf =
      write_temp("mp.json", "{\"P\":[[2,0],[0,1]],\"Q\":[[1,0],[0,1]],\"transposed\":true}");
  const std::string mat = write_temp("mat2.txt", "1 2\n3 4\n");
  EXPECT_EQ(io::tensor_from_json(run({"apply", pf, mat}).out).to_matrix(),
            io::matrix_from_text("2 6\n2 4\n"));
}

TEST(Cli, ApplyErrors) {
  const std::string id = write_temp(
      "id3.json", "{\"m\":2,\"n\":2,\"tau\":[1,2],\"matrices\":[[[1,0],[0,1]],[[1,0],[0,1]]]}");
  const std::string big = write_temp("big.txt", "1 2 3\n4 5 6\n7 8 9\n");
  const std::string junk = write_temp("junk.json", "{not json");
  EXPECT_EQ(run({"apply", id, big}).code, 3);
  EXPECT_EQ(run({"apply", junk, big}).code, 2);
  EXPECT_EQ(run({"apply", id, "/nonexistent"}).code, 2);
  const std::string singular = write_temp(
      "sing.json", "{\"m\":2,\"n\":2,\"tau\":[1,2],\"matrices\":[[[1,1],[1,1]],[[1,0],[0,1]]]}");
  EXPECT_EQ(run({"apply", singular, big}).code, 3);
}

TEST(Cli, Unfold) {
  const std::string tf = write_temp("k22.json", io::tensor_to_json(build_ctensor(2, 2).backing()));
  const Outcome r = run({"unfold", tf});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(io::matrix_from_text(r.out), build_commutation(2, 2).dense());
  const std::string odd = write_temp("odd.json", io::tensor_to_json(Tensor::zeros(Shape::cubical(3, 2))));
  EXPECT_EQ(run({"unfold", odd}).code, 3);
  EXPECT_EQ(run({"unfold", odd, "--mode", "2"}).code, 0);
  EXPECT_EQ(run({"unfold", odd, "--mode", "4"}).code, 3);
}
