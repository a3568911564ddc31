#include "supercalc/cartan.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace supercalc {

namespace {

/// Incremental reduced row echelon form over Q.
class Echelon {
 public:
  /// Reduces the row against the current pivots; returns false if it vanishes.
  bool insert(SparseRow row) {
    for (const auto& [pivot, r] : rows_) {
      auto it = row.find(pivot);
      if (it == row.end()) continue;
      const Rational f = it->second;
      axpy(row, r, -f);
    }
    if (row.empty()) return false;
    const std::size_t pivot = row.begin()->first;
    const Rational inv = Rational(1) / row.begin()->second;
    for (auto& [c, v] : row) v *= inv;
    for (auto& [p, r] : rows_) {
      auto it = r.find(pivot);
      if (it == r.end()) continue;
      const Rational f = it->second;
      axpy(r, row, -f);
    }
    rows_.emplace(pivot, std::move(row));
    return true;
  }

  const std::map<std::size_t, SparseRow>& rows() const { return rows_; }

 private:
  static void axpy(SparseRow& y, const SparseRow& x, const Rational& a) {
    for (const auto& [c, v] : x) {
      auto [it, inserted] = y.try_emplace(c, a * v);
      if (!inserted) {
        it->second += a * v;
        if (it->second == 0) y.erase(it);
      }
    }
  }

  std::map<std::size_t, SparseRow> rows_;
};

SparseRow to_sparse(const std::vector<Rational>& v) {
  SparseRow row;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) row.emplace(i, v[i]);
  return row;
}

std::vector<Rational> flatten(const RationalMatrix& m) {
  std::vector<Rational> out;
  for (const auto& r : m) out.insert(out.end(), r.begin(), r.end());
  return out;
}

Chart chart_for(const std::vector<int>& parities) {
  std::vector<std::string> even, odd;
  for (std::size_t i = 0; i < parities.size(); ++i)
    (parities[i] ? odd : even).push_back((parities[i] ? "t" : "x") + std::to_string((parities[i] ? odd : even).size() + 1));
  return make_chart(std::move(even), std::move(odd));
}

/// Collects the coefficients of a superfunction into (key -> value) rows,
/// keyed by tensor slot, Grassmann monomial and even monomial.
using FlatKey = std::tuple<int, int, GrassmannMask, std::uint64_t>;

void flatten_into(std::map<FlatKey, SparseRow>& rows, int a, int b, const SuperFunction& f, std::size_t column) {
  for (const auto& [mask, coeff] : f.terms()) {
    if (!coeff.is_polynomial()) throw SupercalcError("flat structure expected polynomial defects");
    for (const auto& [mono, c] : coeff.num().terms()) rows[{a, b, mask, mono.key()}][column] += c;
  }
}

std::vector<SparseRow> collect(std::map<FlatKey, SparseRow>& rows) {
  std::vector<SparseRow> out;
  for (auto& [key, row] : rows) {
    std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
    if (!row.empty()) out.push_back(std::move(row));
  }
  return out;
}

/// Sign of sorting a tuple under the Koszul rule; 0 if an odd index repeats.
int koszul_sort(std::vector<int>& tuple, const std::vector<int>& parities) {
  int inversions = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i)
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      const int a = tuple[i], b = tuple[j];
      const bool odd = parities[static_cast<std::size_t>(a)] && parities[static_cast<std::size_t>(b)];
      if (odd && a == b) return 0;
      if (odd && a > b) ++inversions;
    }
  std::sort(tuple.begin(), tuple.end());
  return sign_of(inversions);
}

}  // namespace

/// Sorted multisets of the given size; odd indices appear at most once.
std::vector<IndexSet> index_sets(const std::vector<int>& parities, int size) {
  std::vector<IndexSet> out;
  IndexSet current;
  const int n = static_cast<int>(parities.size());
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(current.size()) == size) {
      out.push_back(current);
      return;
    }
    for (int i = start; i < n; ++i) {
      current.push_back(i);
      rec(parities[static_cast<std::size_t>(i)] ? i + 1 : i);
      current.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<std::vector<Rational>> nullspace(std::vector<SparseRow> rows, std::size_t ncols) {
  Echelon ech;
  for (auto& r : rows) ech.insert(std::move(r));
  std::vector<bool> is_pivot(ncols, false);
  for (const auto& [p, r] : ech.rows()) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(ncols, Rational(0));
    v[free] = 1;
    for (const auto& [p, r] : ech.rows()) {
      auto it = r.find(free);
      if (it != r.end()) v[p] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const RationalMatrix& m) {
  Echelon ech;
  std::size_t r = 0;
  for (const auto& row : m)
    if (ech.insert(to_sparse(row))) ++r;
  return r;
}

LinearLieAlgebra::LinearLieAlgebra(std::vector<int> parities, std::vector<RationalMatrix> generators)
    : parities_(std::move(parities)) {
  const std::size_t n = parities_.size();
  Echelon ech;
  for (const auto& g : generators) {
    if (g.size() != n) throw SupercalcError("generator has the wrong size");
    for (const auto& row : g)
      if (row.size() != n) throw SupercalcError("generator has the wrong size");
    ech.insert(to_sparse(flatten(g)));
  }
  std::vector<SparseRow> rows;
  for (const auto& [p, r] : ech.rows()) {
    RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
    for (const auto& [c, v] : r) m[c / n][c % n] = v;
    basis_.push_back(std::move(m));
    rows.push_back(r);
  }
  annihilator_ = nullspace(std::move(rows), n * n);
}

LinearLieAlgebra LinearLieAlgebra::stabilizer(const Tensor2& form) {
  if (!form.is_constant()) throw SupercalcError("stabilizer needs a constant tensor");
  const Chart& chart = form.chart();
  const int n = chart->size();
  std::vector<int> parities;
  for (int a = 0; a < n; ++a) parities.push_back(chart->p(a));
  std::map<FlatKey, SparseRow> table;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // elementary generator A = E_ij, the field z^j d_i
      VectorField y(chart);
      y[i] = SuperFunction::coordinate(chart, j);
      const Tensor2 defect = lie_derivative(y, form);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) flatten_into(table, a, b, defect(a, b), static_cast<std::size_t>(i * n + j));
    }
  std::vector<RationalMatrix> gens;
  for (const auto& v : nullspace(collect(table), static_cast<std::size_t>(n * n))) {
    RationalMatrix m(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
    for (std::size_t c = 0; c < v.size(); ++c) m[c / static_cast<std::size_t>(n)][c % static_cast<std::size_t>(n)] = v[c];
    gens.push_back(std::move(m));
  }
  return LinearLieAlgebra(std::move(parities), std::move(gens));
}

bool LinearLieAlgebra::contains(const RationalMatrix& a) const {
  const std::vector<Rational> flat = flatten(a);
  for (const auto& phi : annihilator_) {
    Rational s = 0;
    for (std::size_t i = 0; i < flat.size(); ++i) s += phi[i] * flat[i];
    if (s != 0) return false;
  }
  return true;
}

LinearLieAlgebra orthogonal_algebra(int n) {
  Chart chart = chart_for(std::vector<int>(static_cast<std::size_t>(n), 0));
  Tensor2 metric(chart, Variance::Lower, Parity::Even);
  for (int i = 0; i < n; ++i) metric.set(i, i, SuperFunction(chart, Rational(1)));
  return LinearLieAlgebra::stabilizer(metric);
}

LinearLieAlgebra symplectic_algebra(int n) {
  if (n % 2) throw SupercalcError("symplectic algebra needs an even dimension");
  Chart chart = chart_for(std::vector<int>(static_cast<std::size_t>(n), 0));
  Tensor2 omega(chart, Variance::Lower, Parity::Even);
  const int h = n / 2;
  for (int i = 0; i < h; ++i) {
    omega.set(i, i + h, SuperFunction(chart, Rational(1)));
    omega.set(i + h, i, SuperFunction(chart, Rational(-1)));
  }
  return LinearLieAlgebra::stabilizer(omega);
}

Rational prolongation_entry(const ProlongationTensor& t, int i, const std::vector<int>& lower,
                            const std::vector<int>& parities) {
  std::vector<int> sorted = lower;
  const int sign = koszul_sort(sorted, parities);
  if (sign == 0) return 0;
  auto it = t.entries.find({i, sorted});
  return it == t.entries.end() ? Rational(0) : it->second * sign;
}

ProlongationResult prolongation(const LinearLieAlgebra& g, int k) {
  if (k < 0) throw SupercalcError("prolongation index must be non-negative");
  const std::vector<int>& par = g.parities();
  const int n = g.dim_space();
  ProlongationResult result;
  result.k = k;
  result.lower_sets = index_sets(par, k + 1);
  std::map<IndexSet, std::size_t> set_index;
  for (std::size_t s = 0; s < result.lower_sets.size(); ++s) set_index.emplace(result.lower_sets[s], s);
  const std::size_t nsets = result.lower_sets.size();
  auto column = [&](int i, std::size_t s) { return static_cast<std::size_t>(i) * nsets + s; };

  std::vector<SparseRow> rows;
  for (const IndexSet& frozen : index_sets(par, k)) {
    // slice A^i_j = T^i_{j m_1 .. m_k}
    std::vector<std::pair<int, std::size_t>> slot(static_cast<std::size_t>(n));
    std::vector<int> sign(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      std::vector<int> tuple{j};
      tuple.insert(tuple.end(), frozen.begin(), frozen.end());
      sign[static_cast<std::size_t>(j)] = koszul_sort(tuple, par);
      if (sign[static_cast<std::size_t>(j)]) slot[static_cast<std::size_t>(j)] = {j, set_index.at(tuple)};
    }
    for (const auto& phi : g.annihilator()) {
      SparseRow row;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const Rational& w = phi[static_cast<std::size_t>(i * n + j)];
          if (w == 0 || sign[static_cast<std::size_t>(j)] == 0) continue;
          row[column(i, slot[static_cast<std::size_t>(j)].second)] += w * sign[static_cast<std::size_t>(j)];
        }
      std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
      if (!row.empty()) rows.push_back(std::move(row));
    }
  }
  for (const auto& v : nullspace(std::move(rows), static_cast<std::size_t>(n) * nsets)) {
    ProlongationTensor t;
    for (int i = 0; i < n; ++i)
      for (std::size_t s = 0; s < nsets; ++s)
        if (v[column(i, s)] != 0) t.entries.emplace(std::make_pair(i, result.lower_sets[s]), v[column(i, s)]);
    result.basis.push_back(std::move(t));
  }
  result.dimension = static_cast<int>(result.basis.size());
  return result;
}

KillingResult killing_fields(const Tensor2& structure, int degree_bound) {
  if (!structure.is_constant()) throw SupercalcError("Killing fields are computed for constant structures only");
  if (degree_bound < 0) throw SupercalcError("degree bound must be non-negative");
  const Chart& chart = structure.chart();
  const int n = chart->size();
  const int nv = chart->n_even();
  std::vector<int> parities;
  for (int a = 0; a < n; ++a) parities.push_back(chart->p(a));

  // unknowns: component A times a monomial z^S with |S| <= d
  struct Unknown {
    int component;
    IndexSet monomial;
  };
  std::vector<Unknown> unknowns;
  for (int deg = 0; deg <= degree_bound; ++deg)
    for (const IndexSet& s : index_sets(parities, deg))
      for (int a = 0; a < n; ++a) unknowns.push_back({a, s});

  auto monomial_function = [&](const IndexSet& s) {
    Monomial even;
    GrassmannMask odd = 0;
    for (int idx : s) {
      if (idx < nv) even = even * Monomial::var(idx);
      else odd |= GrassmannMask{1} << (idx - nv);
    }
    return SuperFunction::monomial(chart, RatFunc(Polynomial::from_terms(nv, {{even, Rational(1)}})), odd);
  };

  std::map<FlatKey, SparseRow> table;
  std::vector<VectorField> fields;
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    VectorField x(chart);
    x[unknowns[u].component] = monomial_function(unknowns[u].monomial);
    const Tensor2 defect = lie_derivative(x, structure);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) flatten_into(table, a, b, defect(a, b), u);
    fields.push_back(std::move(x));
  }
  KillingResult result;
  result.degree_bound = degree_bound;
  result.max_degree = -1;
  for (const auto& v : nullspace(collect(table), unknowns.size())) {
    VectorField x(chart);
    for (std::size_t u = 0; u < v.size(); ++u) {
      if (v[u] == 0) continue;
      x = x + fields[u] * v[u];
      result.max_degree = std::max(result.max_degree, static_cast<int>(unknowns[u].monomial.size()));
    }
    result.basis.push_back(std::move(x));
  }
  result.dimension = static_cast<int>(result.basis.size());
  return result;
}

std::vector<ProlongationTensor> symplectic_prolongation_witnesses(int n, int k) {
  const int h = n / 2;
  const std::vector<int> parities(static_cast<std::size_t>(n), 0);
  // inverse of omega = [[0, I], [-I, 0]] is [[0, -I], [I, 0]]
  auto omega_inv = [&](int i, int l) -> int {
    if (i < h && l == i + h) return -1;
    if (i >= h && l == i - h) return 1;
    return 0;
  };
  std::vector<ProlongationTensor> out;
  for (const IndexSet& sym : index_sets(parities, k + 2)) {
    ProlongationTensor t;
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        const int w = omega_inv(i, l);
        if (w == 0) continue;
        // T^i_S = w L_{l S}, nonzero when l together with S is the chosen multiset
        auto pos = std::find(sym.begin(), sym.end(), l);
        if (pos == sym.end()) continue;
        IndexSet rest = sym;
        rest.erase(rest.begin() + (pos - sym.begin()));
        t.entries[{i, rest}] += Rational(w);
      }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace supercalc
