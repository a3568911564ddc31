// Acceptance checks: one PASS/FAIL line per criterion. Arithmetic is exact,
// so every comparison is equality. Usage: acceptance <supercalc> <fixtures dir>

#include "generators.hpp"
#include "supercalc/cartan.hpp"
#include "supercalc/coordchange.hpp"
#include "supercalc/halfdensity.hpp"
#include "supercalc/problem.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace testgen;
using SF = SuperFunction;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Tensor2 lower_form(const Chart& c, std::vector<std::array<int, 3>> entries) {
  Tensor2 t(c, Variance::Lower, Parity::Even);
  for (auto [a, b, v] : entries) t.set(a, b, SF(c, Rational(v)));
  return t;
}

// Criterion 2 battery, shared with criteria 3 and 6.
struct Case {
  Tensor2 e;
  SF u;
  bool jacobi;
};

std::vector<Case> battery() {
  Rng rng(20261015);
  const Chart c11 = make_chart({"x"}, {"t"});
  const Chart c22 = make_chart({"x", "y"}, {"a", "b"});
  std::vector<Case> out;
  for (int i = 0; i < 120; ++i) {
    const Chart& c = i < 50 ? c11 : c22;
    const double density = i < 50 ? 0.7 : (i % 2 ? 0.25 : 0.4);
    Tensor2 e = random_odd_symmetric(c, density, 2, rng);
    SF u = chance(rng, 0.8) ? random_function(c, Parity::Odd, 2, 2, rng) : SF(c);
    const bool jacobi = jacobiator(e).empty();
    out.push_back({std::move(e), std::move(u), jacobi});
  }
  return out;
}

Outcome bracket_table() {
  Outcome r;
  const Chart c = make_chart({"x1", "x2"}, {"th1", "th2"});
  const Tensor2 s = darboux_tensor(c);
  int checked = 0;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      const SF xi = SF::coordinate(c, i), xk = SF::coordinate(c, k);
      const SF ti = SF::coordinate(c, 2 + i), tk = SF::coordinate(c, 2 + k);
      r.require(bracket(xi, tk, s) == SF(c, Rational(i == k ? 1 : 0)), "{x^i, theta_j} != delta");
      r.require(bracket(xi, xk, s).is_zero(), "{x^i, x^k} != 0");
      r.require(bracket(ti, tk, s).is_zero(), "{theta_i, theta_k} != 0");
      checked += 3;
    }
  if (r.pass) r.detail = std::to_string(checked) + " coordinate brackets on R^{2|2}";
  return r;
}

Outcome dichotomy(const std::vector<Case>& cases) {
  Outcome r;
  int jacobi = 0;
  for (const Case& k : cases) {
    const DiffOperator d = build_delta(k.e, k.u);
    const DiffOperator sq = compose(d, d);
    const std::optional<int> order = sq.is_zero() ? std::nullopt : sq.order();
    r.require(!order || *order != 2, "order(Delta^2) = 2");
    const bool low = !order || *order <= 1;
    r.require(low == k.jacobi, "order(Delta^2) <= 1 disagrees with the jacobiator");
    jacobi += k.jacobi;
  }
  r.require(jacobi > 0 && jacobi < static_cast<int>(cases.size()), "battery lacks one of the two classes");
  if (r.pass)
    r.detail = std::to_string(cases.size()) + " tensors on R^{1|1} and R^{2|2}, " + std::to_string(jacobi) +
               " satisfy Jacobi";
  return r;
}

Outcome modular_identity(const std::vector<Case>& cases) {
  Outcome r;
  Rng rng(7);
  int identities = 0, shifts = 0;
  for (const Case& k : cases) {
    if (!k.jacobi) continue;
    const DiffOperator d = build_delta(k.e, k.u);
    r.require(compose(d, d) == lie_derivative_halfdensity(modular_vf(k.e, k.u)), "Delta^2 != L_X");
    ++identities;
    if (shifts < 30) {
      // Delta + F has potential U + 2F; the field moves by -{F, .}.
      const SF f = random_function(k.e.chart(), Parity::Odd, 2, 3, rng);
      r.require(modular_vf(k.e, k.u + f * Rational(2)) - modular_vf(k.e, k.u) == -hamiltonian_vf(f, k.e),
                "shift law fails");
      ++shifts;
    }
  }
  r.require(shifts >= 20, "fewer than 20 shift checks");
  if (r.pass)
    r.detail = std::to_string(identities) + " operator identities, " + std::to_string(shifts) +
               " shifts X_{U+2F} - X_U = -D_F";
  return r;
}

Outcome canonical_potentials() {
  Outcome r;
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::string> ev, od;
    for (int i = 0; i < n; ++i) {
      ev.push_back("x" + std::to_string(i));
      od.push_back("t" + std::to_string(i));
    }
    r.require(canonical_potential(darboux_tensor(make_chart(ev, od))).is_zero(), "Darboux potential nonzero");
  }
  Rng rng(11);
  const std::array<Chart, 3> charts{make_chart({"x"}, {"t"}), make_chart({"x", "y"}, {"a", "b"}),
                                    make_chart({"x", "y", "z"}, {"a", "b", "c"})};
  int count = 0;
  for (int i = 0; i < 24; ++i) {
    const Chart& c = charts[static_cast<std::size_t>(i % 3 == 2 ? 2 : (i % 3 == 1 ? 1 : 0))];
    const Tensor2 s = darboux_tensor(c);
    const SuperDiffeo phi = random_diffeo(c, rng, c->n_even() == 3 ? 1 : 2);
    const Tensor2 e = pushforward_tensor(s, phi);
    const SF canon = canonical_potential(e);
    r.require(canon == transform_potential(SF(c), s, phi), "canonical potential != transformed zero potential");
    r.require(modular_vf(e, canon).is_zero(), "modular field of the canonical operator is nonzero");
    ++count;
  }
  if (r.pass) r.detail = "Darboux n = 1, 2, 3 and " + std::to_string(count) + " pushed-forward structures";
  return r;
}

Outcome canonical_operator() {
  Outcome r;
  Rng rng(13);
  const std::array<Chart, 3> charts{make_chart({"x"}, {"t"}), make_chart({"x", "y"}, {"a", "b"}),
                                    make_chart({"x", "y", "z"}, {"a", "b", "c"})};
  int count = 0;
  // nonlinear Darboux changes with affine body need n >= 3, so most draws use R^{3|3}
  for (int i = 0; i < 15; ++i) {
    const Chart& c = charts[static_cast<std::size_t>(i < 3 ? 0 : (i < 7 ? 1 : 2))];
    const Tensor2 s = darboux_tensor(c);
    const SuperDiffeo phi = random_symplectomorphism(c, rng);
    r.require(pushforward_tensor(s, phi) == s, "generated change is not Darboux-to-Darboux");
    const DiffOperator canon = build_delta(s, SF(c));
    const DiffOperator moved = conjugate_operator(canon, phi);
    r.require(moved == canon, "conjugated operator differs from sum d_x d_theta");
    r.require(compose(moved, moved).is_zero(), "Delta^2 != 0");
    ++count;
  }
  if (r.pass) r.detail = std::to_string(count) + " symplectomorphisms on R^{n|n}, n = 1, 2, 3";
  return r;
}

Outcome self_adjointness(const std::vector<Case>& cases) {
  Outcome r;
  for (const Case& k : cases) {
    const DiffOperator d = build_delta(k.e, k.u);
    r.require(formal_adjoint(d) == d, "Delta is not self-adjoint");
    const DiffOperator sq = compose(d, d);
    r.require(formal_adjoint(sq) == -sq, "Delta^2 is not anti-self-adjoint");
  }
  if (r.pass) r.detail = std::to_string(cases.size()) + " operators and their squares";
  return r;
}

Outcome rigidity() {
  Outcome r;
  for (int n = 2; n <= 5; ++n)
    r.require(prolongation(orthogonal_algebra(n), 1).dimension == 0, "so(" + std::to_string(n) + ")_1 != 0");
  r.require(prolongation(symplectic_algebra(2), 1).dimension == 4, "sp(2)_1 != 4");
  for (int n : {2, 4})
    for (int k : {1, 2}) {
      const std::string name = "sp(" + std::to_string(n) + ")_" + std::to_string(k);
      const LinearLieAlgebra g = symplectic_algebra(n);
      const int dim = prolongation(g, k).dimension;
      r.require(dim == binomial(n + k + 1, k + 2), name + " != C(n+k+1, k+2)");
      // brute force: symmetric tensors raised by the form, checked slice by slice
      const std::vector<ProlongationTensor> w = symplectic_prolongation_witnesses(n, k);
      const std::vector<int> par(static_cast<std::size_t>(n), 0);
      RationalMatrix flat;
      for (const ProlongationTensor& t : w) {
        std::vector<Rational> row;
        for (const std::vector<int>& lower : index_sets(par, k + 1))
          for (int i = 0; i < n; ++i) row.push_back(prolongation_entry(t, i, lower, par));
        flat.push_back(row);
        for (const std::vector<int>& frozen : index_sets(par, k)) {
          RationalMatrix slice(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
              std::vector<int> lower{j};
              lower.insert(lower.end(), frozen.begin(), frozen.end());
              slice[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = prolongation_entry(t, i, lower, par);
            }
          r.require(g.contains(slice), name + " witness leaves g");
        }
      }
      r.require(static_cast<int>(rank(flat)) == dim, name + " differs from the brute-force count");
    }
  const Chart c11 = make_chart({"x"}, {"t"}), c22 = make_chart({"x", "y"}, {"a", "b"});
  for (const Chart& c : {c11, c22}) {
    const std::string dim = std::to_string(c->n_even()) + "|" + std::to_string(c->n_odd());
    r.require(prolongation(LinearLieAlgebra::stabilizer(invert(odd_riemannian_tensor(c))), 1).dimension == 0,
              "odd Riemannian prolongation on R^{" + dim + "} != 0");
    r.require(prolongation(LinearLieAlgebra::stabilizer(invert(darboux_tensor(c))), 1).dimension > 0,
              "odd symplectic prolongation on R^{" + dim + "} = 0");
  }
  if (r.pass) r.detail = "so(2..5)_1 = 0, sp(2|4)_{1,2} match C(n+k+1,k+2), odd Riemannian 0, odd symplectic > 0";
  return r;
}

Outcome killing() {
  Outcome r;
  const Chart plane = make_chart({"x", "y"}, {});
  const KillingResult euclid = killing_fields(lower_form(plane, {{0, 0, 1}, {1, 1, 1}}), 3);
  r.require(euclid.dimension == 3 && euclid.max_degree == 1, "Euclidean Killing space is not 3-dim of degree 1");
  const Tensor2 omega = lower_form(plane, {{0, 1, 1}, {1, 0, -1}});
  int previous = -1;
  std::string dims;
  for (int d = 1; d <= 3; ++d) {
    const int dim = killing_fields(omega, d).dimension;
    r.require(dim > previous, "symplectic dimensions do not increase");
    r.require(dim == binomial(d + 3, 2) - 1, "symplectic dimension != Hamiltonian polynomial count");
    previous = dim;
    dims += (d > 1 ? ", " : "") + std::to_string(dim);
  }
  if (r.pass) r.detail = "Euclidean d=3 gives 3 of degree 1; symplectic d=1..3 gives " + dims;
  return r;
}

Outcome symmetry_calculus() {
  Outcome r;
  Rng rng(17);
  const std::array<Chart, 3> charts{make_chart({"x"}, {"t"}), make_chart({"x", "y"}, {"a", "b"}),
                                    make_chart({"x", "y"}, {"a", "b", "c"})};
  int count = 0, tries = 0;
  while (count < 60 && tries < 2000) {
    ++tries;
    const Chart& c = charts[static_cast<std::size_t>(tries % 3)];
    const Tensor2 t = random_odd_symmetric(c, 0.6, 2, rng);
    Tensor2 inv;
    try {
      inv = invert(t);
    } catch (const SingularBody&) {
      continue;
    }
    r.require(shifted_symmetry_type(inv) == SymmetryType::GradedSymmetric, "inverse breaks the shifted symmetry law");
    r.require(symmetry_type(t) == SymmetryType::GradedSymmetric, "generator produced a non-symmetric tensor");
    r.require(shifted_symmetry_type(parity_shift(t)) == SymmetryType::GradedAntisymmetric,
              "parity shift does not flip the symmetry class");
    r.require(parity_shift(parity_shift(t)) == t, "parity shift is not an involution");
    ++count;
  }
  r.require(count >= 50, "fewer than 50 invertible tensors");
  if (r.pass) r.detail = std::to_string(count) + " invertible tensors";
  return r;
}

// Random expression text over the chart: sums of products of atoms, powers,
// parenthesised groups and quotients by polynomials with nonzero body.
std::string random_text(const Chart& c, Rng& rng, int depth) {
  const int kind = depth <= 0 ? uniform(rng, 0, 1) : uniform(rng, 0, 6);
  const auto coord = [&] { return c->name(uniform(rng, 0, c->size() - 1)); };
  switch (kind) {
    case 0:
      return std::to_string(uniform(rng, 0, 9));
    case 1:
      return coord();
    case 2:
      return random_text(c, rng, depth - 1) + " + " + random_text(c, rng, depth - 1);
    case 3:
      return random_text(c, rng, depth - 1) + "*" + random_text(c, rng, depth - 1);
    case 4:
      return "(" + random_text(c, rng, depth - 1) + ")^" + std::to_string(uniform(rng, 0, 3));
    case 5:
      return "-(" + random_text(c, rng, depth - 1) + " - " + random_text(c, rng, depth - 1) + ")";
    default:
      return "(" + random_text(c, rng, depth - 1) + ")/(" + std::to_string(uniform(rng, 1, 4)) + " + " +
             c->name(uniform(rng, 0, c->n_even() - 1)) + "^2)";
  }
}

std::string run_cli(const std::string& cli, const std::string& dir, const std::vector<std::string>& args) {
  std::string cmd = "cd '" + dir + "' && '" + cli + "'";
  for (const std::string& a : args) cmd += " '" + a + "'";
  std::string out;
  if (FILE* p = popen(cmd.c_str(), "r")) {
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    pclose(p);
  }
  return out;
}

Outcome determinism(const std::string& cli, const std::string& fixtures) {
  Outcome r;
  std::ifstream manifest(fixtures + "/golden/manifest.txt");
  r.require(static_cast<bool>(manifest), "missing golden manifest");
  int reports = 0;
  std::string line;
  while (std::getline(manifest, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream words(line);
    std::string file, w;
    words >> file;
    std::vector<std::string> args;
    while (words >> w) args.push_back(w);
    std::ifstream golden(fixtures + "/golden/" + file, std::ios::binary);
    std::stringstream expected;
    expected << golden.rdbuf();
    r.require(golden && run_cli(cli, fixtures, args) == expected.str(), file + " differs from its golden report");
    ++reports;
  }

  Rng rng(19);
  const std::array<Chart, 3> charts{make_chart({"x"}, {"t"}), make_chart({"x", "y"}, {"a", "b"}),
                                    make_chart({"u", "v", "w"}, {"p", "q", "r"})};
  int trips = 0;
  for (int i = 0; i < 1200; ++i) {
    const Chart& c = charts[static_cast<std::size_t>(i % 3)];
    const SF f = i % 2 ? parse_expression(random_text(c, rng, 4), c)
                       : random_function(c, static_cast<Parity>(i / 2 % 2), 3, uniform(rng, 0, 5), rng);
    const std::string printed = f.to_string();
    const SF back = parse_expression(printed, c);
    r.require(back == f && back.to_string() == printed, "round trip fails for " + printed);
    ++trips;
  }
  if (r.pass)
    r.detail = std::to_string(reports) + " golden reports byte-identical, " + std::to_string(trips) + " round trips";
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <supercalc> <fixtures dir>\n";
    return 1;
  }
  const std::vector<Case> cases = battery();
  const std::vector<std::function<Outcome()>> criteria{
      bracket_table,
      [&] { return dichotomy(cases); },
      [&] { return modular_identity(cases); },
      canonical_potentials,
      canonical_operator,
      [&] { return self_adjointness(cases); },
      rigidity,
      killing,
      symmetry_calculus,
      [&] { return determinism(std::filesystem::absolute(argv[1]).string(), argv[2]); },
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, " (%.2fs)", secs);
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << timing << "\n";
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
