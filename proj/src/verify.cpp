#include "commutant/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include <json.hpp>

#include "commutant/commutation_matrix.hpp"
#include "commutant/commutation_tensor.hpp"
#include "commutant/preserver.hpp"
#include "commutant/random.hpp"
#include "commutant/vec_kron.hpp"

namespace commutant::verify {

namespace {

std::string size_label(std::pair<Index, Index> s) {
  return std::to_string(s.first) + "x" + std::to_string(s.second);
}

double rel_gap(const VectorXd& got, const VectorXd& want) {
  const double scale = std::max(1.0, want.cwiseAbs().maxCoeff());
  return (got - want).cwiseAbs().maxCoeff() / scale;
}

/// Records checks; corrupts the first compared value when a fault is requested.
class Checker {
 public:
  Checker(SuiteResult& result, bool inject_fault) : result_(result), fault_(inject_fault) {}

  VectorXd taint(VectorXd v) {
    if (fault_ && v.size() > 0) {
      v(0) += 1.0;
      fault_ = false;
    }
    return v;
  }
  MatrixXd taint(MatrixXd M) {
    if (fault_ && M.size() > 0) {
      M(0, 0) += 1.0;
      fault_ = false;
    }
    return M;
  }
  Tensor taint(const Tensor& T) { return Tensor(T.shape(), taint(VectorXd(T.values()))); }

  void expect(bool ok, const std::string& where) {
    ++result_.checks;
    if (ok)
      ++result_.passed;
    else
      result_.failures.push_back(where);
  }

 private:
  SuiteResult& result_;
  bool fault_;
};

using SuiteFn = std::function<void(Checker&, std::pair<Index, Index>, Index size_index,
                                   Index suite_index, const RunConfig&)>;

Rng stream(const RunConfig& cfg, Index suite, Index size_index, Index trial) {
  return Rng(cfg.seed, static_cast<std::uint64_t>(suite),
             static_cast<std::uint64_t>(size_index * 1000003 + trial));
}

void require_positive(std::pair<Index, Index> s) {
  if (s.first < 1 || s.second < 1)
    throw ArgumentError("suite sizes must be positive, got " + size_label(s));
}

void vec_identity(Checker& c, std::pair<Index, Index> s, Index si, Index suite,
                  const RunConfig& cfg) {
  const auto [p, q] = s;
  const auto K = build_commutation(p, q);
  for (Index t = 0; t < cfg.trials; ++t) {
    Rng rng = stream(cfg, suite, si, t);
    const MatrixXd X = rng.matrix(p, q);
    const VectorXd got = c.taint(K.apply(vec(X)));
    c.expect(got == vec(MatrixXd(X.transpose())),
             size_label(s) + " trial " + std::to_string(t) + ": K vec(X) != vec(X^T)");
  }
  MatrixXd rebuilt(p * q, p * q);
  for (Index col = 0; col < p * q; ++col) {
    const MatrixXd E = unvec(VectorXd::Unit(p * q, col), p, q);
    rebuilt.col(col) = vec(MatrixXd(E.transpose()));
  }
  c.expect(rebuilt == K.dense(), size_label(s) + ": basis reconstruction differs from K");
}

void swap_law(Checker& c, std::pair<Index, Index> s, Index si, Index suite,
              const RunConfig& cfg) {
  const auto [p, q] = s;
  const auto K = build_commutation(p, q);
  for (Index t = 0; t < cfg.trials; ++t) {
    Rng rng = stream(cfg, suite, si, t);
    const VectorXd x = rng.vector(q);
    const VectorXd y = rng.vector(p);
    const VectorXd got = c.taint(K.apply(kron(x, y)));
    c.expect(got == VectorXd(kron(y, x)),
             size_label(s) + " trial " + std::to_string(t) + ": K (x kron y) != y kron x");
  }
  MatrixXd rebuilt = MatrixXd::Zero(p * q, p * q);
  for (Index j = 0; j < q; ++j)
    for (Index i = 0; i < p; ++i)
      rebuilt.col(j * p + i) = kron(VectorXd::Unit(p, i), VectorXd::Unit(q, j));
  c.expect(rebuilt == K.dense(), size_label(s) + ": swap-action reconstruction differs from K");
}

void kron_conjugation(Checker& c, std::pair<Index, Index> s, Index si, Index suite,
                      const RunConfig& cfg) {
  const auto [p, q] = s;
  for (Index t = 0; t < cfg.trials; ++t) {
    Rng rng = stream(cfg, suite, si, t);
    const MatrixXd A = rng.matrix(p, p);
    const MatrixXd B = rng.matrix(q, q);
    const MatrixXd got = c.taint(conjugate_kron(A, B));
    c.expect((got - kron(A, B)).cwiseAbs().maxCoeff() <= cfg.tol,
             size_label(s) + " trial " + std::to_string(t) +
                 ": K_{p,q}(B kron A)K_{q,p} != A kron B");
  }
}

void powers(Checker& c, std::pair<Index, Index> s, Index, Index, const RunConfig&) {
  const auto [kmax, n] = s;
  const Tensor K = build_ctensor(n, n).backing();
  const Tensor K2 = identity_gct(2, n).dense();
  c.expect(c.taint(mul_2m(K, K)) == K2, size_label(s) + ": K^2 is not K^{id}");
  for (Index k = 1; k <= kmax; ++k) {
    const Tensor got = ctensor_power(k, n);
    c.expect(got == (k % 2 == 1 ? K : K2),
             size_label(s) + ": K^" + std::to_string(k) + " != " + (k % 2 ? "K" : "K^2"));
  }
}

void group_axioms(Checker& c, std::pair<Index, Index> s, Index, Index, const RunConfig&) {
  const auto [m, n] = s;
  const auto perms = all_permutations(n);
  const Tensor id = identity_gct(m, n).dense();
  std::vector<Tensor> dense;
  for (const auto& pi : perms) dense.push_back(permutation_gct(pi, m).dense());

  for (std::size_t a = 0; a < perms.size(); ++a) {
    const auto Ga = permutation_gct(perms[a], m);
    for (std::size_t b = 0; b < perms.size(); ++b) {
      const auto prod = gct_multiply(Ga, permutation_gct(perms[b], m));
      const bool closed = is_permutation_matrix(prod.generator(0)) &&
                          prod.generators() ==
                              permutation_gct(perms[b] * perms[a], m).generators();
      const bool agrees = c.taint(prod.dense()) == mul_2m(dense[a], dense[b]);
      c.expect(closed && agrees, size_label(s) + ": product " + std::to_string(a) + "*" +
                                     std::to_string(b) + " not closed or disagrees with mul_2m");
    }
    c.expect(mul_2m(dense[a], id) == dense[a] && mul_2m(id, dense[a]) == dense[a],
             size_label(s) + ": K^{id} is not an identity for element " + std::to_string(a));
    const Tensor inv = permutation_gct(perms[a].inverse(), m).dense();
    c.expect(mul_2m(dense[a], inv) == id && mul_2m(inv, dense[a]) == id,
             size_label(s) + ": K^{pi^-1} is not a two-sided inverse for element " +
                 std::to_string(a));
  }
}

void mode_perm_lemma(Checker& c, std::pair<Index, Index> s, Index si, Index suite,
                     const RunConfig& cfg) {
  const auto [m, n] = s;
  const auto perms = all_permutations(m);
  for (std::size_t k = 0; k < perms.size(); ++k) {
    const Tensor Ktau = build_mode_perm_tensor(perms[k], n).dense();
    for (Index t = 0; t < cfg.trials; ++t) {
      Rng rng = stream(cfg, suite, si, static_cast<Index>(k) * 1000 + t);
      const Tensor A = rng.tensor(Shape::cubical(m, n));
      const Tensor got = c.taint(permute_modes(A, perms[k]));
      c.expect(max_abs_diff(got, mul_2m_on_m(Ktau, A)) <= cfg.tol,
               size_label(s) + " tau#" + std::to_string(k) + " trial " + std::to_string(t) +
                   ": index shuffle != contraction with K^tau");
    }
  }
}

void preserver_suite(Checker& c, std::pair<Index, Index> s, Index si, Index suite,
                     const RunConfig& cfg) {
  const auto [m, n] = s;
  const auto perms = all_permutations(m);
  for (std::size_t k = 0; k < perms.size(); ++k) {
    Rng rng = stream(cfg, suite, si, static_cast<Index>(k));
    std::vector<MatrixXd> mats;
    for (Index j = 0; j < m; ++j) mats.push_back(rng.invertible(n));
    const RankPreserver<double> phi(mats, perms[k]);
    const auto report = verify_rank_preservation(phi, cfg.trials, rng.next());
    c.expect(report.passed == report.trials,
             size_label(s) + " tau#" + std::to_string(k) + ": " +
                 std::to_string(report.trials - report.passed) + " rank-1 images not certified");

    const Tensor A = rng.tensor(Shape::cubical(m, n));
    const Tensor structured = c.taint(apply_rank_preserver(phi, A));
    const Tensor dense = mul_2m_on_m(
        phi.tensor().dense(), mul_m_by_2m(A, build_mode_perm_tensor(perms[k], n).dense()));
    c.expect(rel_gap(structured.values(), dense.values()) <= 1e-9,
             size_label(s) + " tau#" + std::to_string(k) + ": structured and dense paths differ");

    if (m == 2) {
      const MatrixPreserver<double> T(mats[0], mats[1].transpose(), !perms[k].is_identity());
      const MatrixXd X = A.to_matrix();
      c.expect(rel_gap(vec(apply_matrix_preserver(T, X)), structured.values()) <= 1e-12,
               size_label(s) + " tau#" + std::to_string(k) +
                   ": m=2 reduction differs from P A Q / P A^T Q");
    }
  }
}

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> suites = {
      {"vec-identity", vec_identity},       {"swap-law", swap_law},
      {"kron-conjugation", kron_conjugation}, {"powers", powers},
      {"group-axioms", group_axioms},       {"mode-perm-lemma", mode_perm_lemma},
      {"preserver-suite", preserver_suite},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "vec-identity", "swap-law",        "kron-conjugation", "powers",
      "group-axioms", "mode-perm-lemma", "preserver-suite",
  };
  return names;
}

bool is_suite(const std::string& name) {
  return std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

SuiteResult run_suite(const std::string& name, const RunConfig& config) {
  if (!is_suite(name)) throw ArgumentError("unknown suite \"" + name + "\"");
  if (config.sizes.empty()) throw ArgumentError("no sizes given");
  if (config.trials < 1) throw ArgumentError("trials must be >= 1");
  if (!(config.tol > 0)) throw ArgumentError("tolerance must be positive");
  const auto suite_index = static_cast<Index>(
      std::find(suite_names().begin(), suite_names().end(), name) - suite_names().begin());

  SuiteResult result;
  result.name = name;
  Checker checker(result, config.inject_fault);
  const auto& fn = registry().at(name);
  for (std::size_t si = 0; si < config.sizes.size(); ++si) {
    require_positive(config.sizes[si]);
    fn(checker, config.sizes[si], static_cast<Index>(si), suite_index, config);
  }
  return result;
}

std::string result_to_json(const SuiteResult& result) {
  std::string out = "{\"name\":" + nlohmann::json(result.name).dump() + ",\"checks\":" +
                    std::to_string(result.checks) + ",\"passed\":" +
                    std::to_string(result.passed) + ",\"failures\":[";
  for (std::size_t i = 0; i < result.failures.size(); ++i) {
    if (i) out += ',';
    out += nlohmann::json(result.failures[i]).dump();
  }
  out += "]}";
  return out;
}

}  // namespace commutant::verify
