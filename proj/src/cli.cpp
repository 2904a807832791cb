#include "commutant/cli.hpp"

#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "commutant/commutation_matrix.hpp"
#include "commutant/commutation_tensor.hpp"
#include "commutant/cp_rank.hpp"
#include "commutant/io.hpp"
#include "commutant/preserver.hpp"
#include "commutant/verify.hpp"

namespace commutant::cli {

namespace {

struct Options {
  std::string format = "text";
  double tol = 1e-12;
  std::uint64_t seed = 0;
  Index trials = 20;

  Index a = 0;
  Index b = 0;
  std::string perm;
  bool dense = false;

  std::vector<std::string> suites;
  std::string sizes;
  bool inject_fault = false;

  std::string preserver_file;
  std::string tensor_file;
  Index mode = 0;
};

std::vector<std::pair<Index, Index>> parse_sizes(const std::string& text) {
  std::vector<std::pair<Index, Index>> out;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    const auto x = item.find('x');
    std::size_t used_a = 0, used_b = 0;
    long long a = 0, b = 0;
    try {
      if (x == std::string::npos) throw std::invalid_argument(item);
      a = std::stoll(item.substr(0, x), &used_a);
      b = std::stoll(item.substr(x + 1), &used_b);
    } catch (const std::exception&) {
      throw ParseError("bad size \"" + item + "\", expected AxB");
    }
    if (used_a != x || used_b != item.size() - x - 1)
      throw ParseError("bad size \"" + item + "\", expected AxB");
    out.emplace_back(a, b);
  }
  if (out.empty()) throw ParseError("--sizes is empty");
  return out;
}

std::vector<Index> parse_perm(const std::string& text) {
  std::vector<Index> out;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stoll(item, &used));
    } catch (const std::exception&) {
      throw ParseError("bad permutation entry \"" + item + "\"");
    }
    if (used != item.size()) throw ParseError("bad permutation entry \"" + item + "\"");
  }
  return out;
}

std::vector<std::pair<Index, Index>> default_sizes(const std::string& suite) {
  if (suite == "vec-identity" || suite == "swap-law") {
    std::vector<std::pair<Index, Index>> all;
    for (Index p = 1; p <= 5; ++p)
      for (Index q = 1; q <= 5; ++q) all.emplace_back(p, q);
    return all;
  }
  static const std::map<std::string, std::vector<std::pair<Index, Index>>> table = {
      {"kron-conjugation", {{2, 2}, {2, 3}, {3, 4}}},
      {"powers", {{6, 2}, {6, 3}}},
      {"group-axioms", {{2, 3}}},
      {"mode-perm-lemma", {{3, 2}, {2, 3}}},
      {"preserver-suite", {{2, 2}, {2, 3}, {3, 2}, {3, 3}}},
  };
  return table.at(suite);
}

bool json_out(const Options& o) { return o.format == "json"; }

int gen_kmat(const Options& o, std::ostream& out) {
  const auto K = build_commutation(o.a, o.b);
  if (json_out(o))
    out << io::commutation_to_json(K) << '\n';
  else
    out << io::matrix_to_text(K.dense());
  return kOk;
}

int gen_ktensor(const Options& o, std::ostream& out) {
  out << io::tensor_to_json(build_ctensor(o.a, o.b).backing()) << '\n';
  return kOk;
}

int gen_gct(const Options& o, std::ostream& out) {
  if (o.a < 1) throw ArgumentError("gen-gct needs m >= 1");
  Permutation pi;
  try {
    pi = Permutation::from_one_based(parse_perm(o.perm));
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
  const auto G = permutation_gct(pi, o.a);
  out << (o.dense ? io::tensor_to_json(G.dense()) : io::gct_to_json(G)) << '\n';
  return kOk;
}

int verify_cmd(const Options& o, std::ostream& out) {
  const auto suites = o.suites.empty() ? verify::suite_names() : o.suites;
  for (const auto& s : suites)
    if (!verify::is_suite(s)) throw ParseError("unknown suite \"" + s + "\"");

  bool all_ok = true;
  std::vector<verify::SuiteResult> results;
  for (const auto& s : suites) {
    verify::RunConfig cfg;
    cfg.sizes = o.sizes.empty() ? default_sizes(s) : parse_sizes(o.sizes);
    cfg.seed = o.seed;
    cfg.trials = o.trials;
    cfg.tol = o.tol;
    cfg.inject_fault = o.inject_fault;
    results.push_back(verify::run_suite(s, cfg));
    all_ok = all_ok && results.back().ok();
  }

  if (json_out(o)) {
    out << "{\"ok\":" << (all_ok ? "true" : "false") << ",\"suites\":[";
    for (std::size_t i = 0; i < results.size(); ++i)
      out << (i ? "," : "") << verify::result_to_json(results[i]);
    out << "]}\n";
  } else {
    for (const auto& r : results) {
      out << r.name << ": " << (r.ok() ? "PASS" : "FAIL") << ' ' << r.passed << '/' << r.checks
          << '\n';
      for (const auto& f : r.failures) out << "  " << f << '\n';
    }
  }
  return all_ok ? kOk : kVerifyFailed;
}

int apply_cmd(const Options& o, std::ostream& out) {
  const auto phi = io::preserver_from_json(io::read_file(o.preserver_file));
  const Tensor A = io::tensor_from_any(io::read_file(o.tensor_file));
  Tensor image;
  if (const auto* rp = std::get_if<RankPreserver<double>>(&phi)) {
    image = apply_rank_preserver(*rp, A);
  } else {
    const auto& mp = std::get<MatrixPreserver<double>>(phi);
    if (A.order() != 2)
      throw DimensionError("a matrix preserver needs an order-2 tensor, got shape " +
                           A.shape().to_string());
    image = Tensor::from_matrix(apply_matrix_preserver(mp, A.to_matrix()));
  }
  out << io::tensor_to_json(image) << '\n';
  return kOk;
}

int unfold_cmd(const Options& o, std::ostream& out) {
  const Tensor A = io::tensor_from_any(io::read_file(o.tensor_file));
  const MatrixXd M = o.mode > 0 ? mode_unfold(A, o.mode - 1) : balance_unfold(A);
  if (json_out(o))
    out << io::tensor_to_json(Tensor::from_matrix(M)) << '\n';
  else
    out << io::matrix_to_text(M);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Commutation matrices, commutation tensors and rank preservers", "commutant"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--tol", o.tol, "Comparison tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Random seed (COMMUTANT_SEED overrides)")->capture_default_str();
  app.add_option("--trials", o.trials, "Random draws per configuration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* kmat = app.add_subcommand("gen-kmat", "Emit the commutation matrix K_{p,q}");
  kmat->add_option("p", o.a)->required()->check(CLI::Range(Index{1}, Index{1} << 40));
  kmat->add_option("q", o.b)->required()->check(CLI::Range(Index{1}, Index{1} << 40));

  auto* ktensor = app.add_subcommand("gen-ktensor", "Emit the commutation tensor (shape n,m,m,n)");
  ktensor->add_option("m", o.a)->required()->check(CLI::Range(Index{1}, Index{1} << 40));
  ktensor->add_option("n", o.b)->required()->check(CLI::Range(Index{1}, Index{1} << 40));

  auto* gct = app.add_subcommand("gen-gct", "Emit K^pi of order 2m for a 1-based permutation");
  gct->add_option("m", o.a)->required()->check(CLI::Range(Index{1}, Index{1} << 40));
  gct->add_option("perm", o.perm, "Comma-separated images, e.g. 2,3,1")->required();
  gct->add_flag("--dense", o.dense, "Emit the dense tensor instead of the generators");

  auto* ver = app.add_subcommand("verify", "Run identity suites");
  ver->add_option("--suite", o.suites, "Suite name (repeatable); all suites by default");
  ver->add_option("--sizes", o.sizes, "Comma-separated AxB pairs, e.g. 2x3,3x4");
  ver->add_flag("--inject-fault", o.inject_fault, "Corrupt the first comparison of each suite");

  auto* apply = app.add_subcommand("apply", "Apply a preserver file to a tensor file");
  apply->add_option("preserver", o.preserver_file)->required();
  apply->add_option("tensor", o.tensor_file)->required();

  auto* unfold = app.add_subcommand("unfold", "Balance unfolding, or mode-k unfolding with --mode");
  unfold->add_option("tensor", o.tensor_file)->required();
  unfold->add_option("--mode", o.mode, "1-based mode")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsage;
  }

  try {
    if (const char* env = std::getenv("COMMUTANT_SEED")) {
      try {
        std::size_t used = 0;
        o.seed = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
      } catch (const std::exception&) {
        throw ParseError(std::string("COMMUTANT_SEED is not an unsigned integer: ") + env);
      }
    }

    if (kmat->parsed()) return gen_kmat(o, out);
    if (ktensor->parsed()) return gen_ktensor(o, out);
    if (gct->parsed()) return gen_gct(o, out);
    if (ver->parsed()) return verify_cmd(o, out);
    if (apply->parsed()) return apply_cmd(o, out);
    return unfold_cmd(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  }
}

}  // namespace commutant::cli
