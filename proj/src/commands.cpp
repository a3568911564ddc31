#include "supercalc/commands.hpp"

#include "supercalc/halfdensity.hpp"
#include "supercalc/oddpoisson.hpp"

#include <json.hpp>

#include <functional>

namespace supercalc {

namespace {

using Json = nlohmann::ordered_json;

const std::string& option(const CommandRequest& r, const std::string& key) {
  static const std::string empty;
  auto it = r.options.find(key);
  return it == r.options.end() ? empty : it->second;
}

bool flag(const CommandRequest& r, const std::string& key) {
  auto it = r.options.find(key);
  return it != r.options.end() && it->second != "0" && it->second != "false";
}

int int_argument(const std::string& text, const char* what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size()) throw SupercalcError(std::string(what) + " must be an integer, got '" + text + "'");
  return v;
}

const ProblemFile& need(const ProblemFile* p, const std::string& command) {
  if (!p) throw SupercalcError(command + " needs a problem file");
  return *p;
}

std::string variance_name(Variance v) { return v == Variance::Upper ? "upper" : "lower"; }
std::string parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Json components(const Tensor2& t) {
  Json out = Json::array();
  const Chart& c = t.chart();
  for (int a = 0; a < c->size(); ++a)
    for (int b = 0; b < c->size(); ++b)
      if (!t(a, b).is_zero()) out.push_back({{"index", c->name(a) + "," + c->name(b)}, {"value", t(a, b).to_string()}});
  return out;
}

Json field_json(const VectorField& x) {
  Json out = Json::array();
  const Chart& c = x.chart();
  for (int a = 0; a < c->size(); ++a)
    if (!x[a].is_zero()) out.push_back({{"coordinate", c->name(a)}, {"component", x[a].to_string()}});
  return out;
}

Json order_json(const DiffOperator& d) {
  const auto o = d.order();
  return o ? Json(*o) : Json(nullptr);
}

Json tensor_header(const ProblemFile& p, const std::string& name, const Tensor2& t) {
  return {{"name", name.empty() ? p.tensors.front().first : name},
          {"variance", variance_name(t.variance())},
          {"parity", parity_name(t.intrinsic_parity())}};
}

/// Upper odd graded-symmetric tensor for the operator commands.
const Tensor2& odd_structure(const ProblemFile& p, const CommandRequest& r) {
  const Tensor2& e = p.tensor(option(r, "tensor"));
  if (e.variance() != Variance::Upper || e.intrinsic_parity() != Parity::Odd)
    throw SupercalcError("operator commands need an upper odd tensor");
  if (symmetry_type(e) != SymmetryType::GradedSymmetric) throw SupercalcError("tensor is not graded symmetric");
  return e;
}

Json witnesses_json(const std::vector<JacobiWitness>& ws, const Chart& c) {
  Json out = Json::array();
  for (const auto& w : ws)
    out.push_back({{"a", c->name(w.a)}, {"b", c->name(w.b)}, {"c", c->name(w.c)}, {"value", w.value.to_string()}});
  return out;
}

std::string lower_set_name(const IndexSet& s) {
  std::string out;
  for (int i : s) out += (out.empty() ? "" : ",") + std::to_string(i);
  return out;
}

using Handler = std::function<int(const CommandRequest&, const ProblemFile*, Json&)>;

int cmd_classify(const CommandRequest& r, const ProblemFile* pp, Json& j) {
  const ProblemFile& p = need(pp, r.command);
  const Tensor2& t = p.tensor(option(r, "tensor"));
  j["tensor"] = tensor_header(p, option(r, "tensor"), t);
  j["symmetry"] = to_string(symmetry_type(t));
  j["shifted_symmetry"] = to_string(shifted_symmetry_type(t));
  const int rank = t.components().body_rank();
  j["body_rank"] = rank;
  j["nondegenerate"] = rank == t.size();
  j["darboux"] = t.variance() == Variance::Upper && is_darboux(t);
  j["components"] = components(t);
  return 0;
}

int cmd_bracket(const CommandRequest& r, const ProblemFile* pp, Json& j) {
  const ProblemFile& p = need(pp, r.command);
  if (r.args.size() != 2) throw SupercalcError("bracket takes two expressions");
  const Tensor2& e = odd_structure(p, r);
  const SuperFunction f = parse_expression(r.args[0], p.chart);
  const SuperFunction g = parse_expression(r.args[1], p.chart);
  j["f"] = f.to_string();
  j["g"] = g.to_string();
  j["value"] = bracket(f, g, e).to_string();
  return 0;
}

int cmd_jacobi(const CommandRequest& r, const ProblemFile* pp, Json& j) {
  const ProblemFile& p = need(pp, r.command);
  const Tensor2& e = odd_structure(p, r);
  const std::vector<JacobiWitness> ws = jacobiator(e);
  const DiffOperator delta = build_delta(e, p.potential_or_zero());
  const DiffOperator sq = compose(delta, delta);
  const bool holds = ws.empty();
  const bool low_order = sq.is_zero() || *sq.order() <= 1;
  j["jacobi"] = holds ? "holds" : "fails";
  j["witnesses"] = witnesses_json(ws, p.chart);
  j["delta2_order"] = order_json(sq);
  j["delta2_zero"] = sq.is_zero();
  j["operator_criterion_agrees"] = holds == low_order;
  return !holds && flag(r, "expect-jacobi") ? 2 : 0;
}

int cmd_delta(const CommandRequest& r, const ProblemFile* pp, Json& j) {
  const ProblemFile& p = need(pp, r.command);
  const DiffOperator d = build_delta(odd_structure(p, r), p.potential_or_zero());
  j["potential"] = p.potential_or_zero().to_string();
  j["operator"] = d.to_string();
  j["order"] = order_json(d);
  j["self_adjoint"] = formal_adjoint(d) == d;
  return 0;
}

int cmd_delta2(const CommandRequest& r, const ProblemFile* pp, Json& j) {
  const ProblemFile& p = need(pp, r.command);
  const DiffOperator d = build_delta(odd_structure(p, r), p.potential_or_zero());
  const DiffOperator sq = compose(d, d);
  j["potential"] = p.potential_or_zero().to_string();
  j["operator"] = sq.to_string();
  j["order"] = order_json(sq);
  j["zero"] = sq.is_zero();
  j["anti_self_adjoint"] = formal_adjoint(sq) == -sq;
  return 0;
}

int cmd_modular(const CommandRequest& r, const ProblemFile* pp, Json& j) {
  const ProblemFile& p = need(pp, r.command);
  const Tensor2& e = odd_structure(p, r);
  const SuperFunction u = p.potential_or_zero();
  j["potential"] = u.to_string();
  VectorField x;
  try {
    x = modular_vf(e, u);
  } catch (const JacobiFails&) {
    j["jacobi"] = "fails";
    return 2;
  }
  const DiffOperator d = build_delta(e, u);
  j["jacobi"] = "holds";
  j["field"] = field_json(x);
  j["zero"] = x.is_zero();
  j["delta2_equals_lie_derivative"] = compose(d, d) == lie_derivative_halfdensity(x);
  return 0;
}

int cmd_potential(const CommandRequest& r, const ProblemFile* pp, Json& j) {
  const ProblemFile& p = need(pp, r.command);
  const Tensor2& e = odd_structure(p, r);
  SuperFunction u;
  try {
    u = canonical_potential(e);
  } catch (const JacobiFails&) {
    j["jacobi"] = "fails";
    return 2;
  }
  j["jacobi"] = "holds";
  j["canonical_potential"] = u.to_string();
  j["modular_field_vanishes"] = modular_vf(e, u).is_zero();
  return 0;
}

int cmd_transform(const CommandRequest& r, const ProblemFile* pp, Json& j) {
  const ProblemFile& p = need(pp, r.command);
  const Tensor2& e = odd_structure(p, r);
  const SuperDiffeo& phi = p.diffeo(option(r, "diffeo"));
  const SuperFunction u = p.potential_or_zero();
  const Tensor2 moved = pushforward_tensor(e, phi);
  const SuperFunction u2 = transform_potential(u, e, phi);
  j["potential"] = u.to_string();
  j["jacobian_berezinian"] = ber_jacobian(phi).to_string();
  j["pushforward"] = components(moved);
  j["transformed_potential"] = u2.to_string();
  if (jacobiator(e).empty()) {
    const SuperFunction canonical = canonical_potential(moved);
    j["canonical_potential_of_pushforward"] = canonical.to_string();
    j["matches_canonical"] = canonical == transform_potential(canonical_potential(e), e, phi);
  }
  return 0;
}

int cmd_conjugate(const CommandRequest& r, const ProblemFile* pp, Json& j) {
  const ProblemFile& p = need(pp, r.command);
  const Tensor2& e = odd_structure(p, r);
  const SuperDiffeo& phi = p.diffeo(option(r, "diffeo"));
  const SuperFunction u = p.potential_or_zero();
  const DiffOperator d = conjugate_operator(build_delta(e, u), phi);
  const SuperFunction u2 = d.coefficient(DerivKey{}) * Rational(2);
  j["potential"] = u.to_string();
  j["operator"] = d.to_string();
  j["potential_after"] = u2.to_string();
  j["equals_transported_delta"] = d == build_delta(pushforward_tensor(e, phi), u2);
  return 0;
}

int cmd_prolong(const CommandRequest& r, const ProblemFile* pp, Json& j) {
  const int k = option(r, "k").empty() ? 1 : int_argument(option(r, "k"), "--k");
  std::string label;
  std::optional<LinearLieAlgebra> g;
  if (!r.args.empty() && (r.args[0] == "so" || r.args[0] == "sp")) {
    if (r.args.size() != 2) throw SupercalcError("prolong " + r.args[0] + " takes a dimension");
    const int n = int_argument(r.args[1], "dimension");
    if (n < 1 || n > 12) throw SupercalcError("dimension must be between 1 and 12");
    g = r.args[0] == "so" ? orthogonal_algebra(n) : symplectic_algebra(n);
    label = r.args[0] + "(" + std::to_string(n) + ")";
  } else {
    const ProblemFile& p = need(pp, r.command);
    if (!r.args.empty()) throw SupercalcError("prolong takes 'so n', 'sp n' or a problem file");
    g = p.algebra(option(r, "algebra"));
    label = option(r, "algebra").empty() ? p.algebras.front().first : option(r, "algebra");
  }
  const ProlongationResult res = prolongation(*g, k);
  j["algebra"] = label;
  j["parities"] = g->parities();
  j["algebra_dimension"] = g->dimension();
  j["k"] = k;
  j["dimension"] = res.dimension;
  if (flag(r, "basis")) {
    Json basis = Json::array();
    for (const ProlongationTensor& t : res.basis) {
      Json entries = Json::array();
      for (const auto& [key, v] : t.entries)
        entries.push_back({{"upper", key.first}, {"lower", lower_set_name(key.second)}, {"value", v.get_str()}});
      basis.push_back(std::move(entries));
    }
    j["basis"] = std::move(basis);
  }
  return 0;
}

int cmd_killing(const CommandRequest& r, const ProblemFile* pp, Json& j) {
  const ProblemFile& p = need(pp, r.command);
  std::string degree = option(r, "degree");
  if (degree.empty() && r.args.size() == 1) degree = r.args[0];
  if (degree.empty()) throw SupercalcError("killing needs a degree bound");
  const int d = int_argument(degree, "degree");
  if (d < 0 || d > 8) throw SupercalcError("degree bound must be between 0 and 8");
  const Tensor2& t = p.tensor(option(r, "tensor"));
  const KillingResult res = killing_fields(t, d);
  j["tensor"] = tensor_header(p, option(r, "tensor"), t);
  j["degree_bound"] = d;
  j["dimension"] = res.dimension;
  j["max_degree"] = res.max_degree;
  Json basis = Json::array();
  for (const VectorField& x : res.basis) basis.push_back(x.to_string());
  j["basis"] = std::move(basis);
  return 0;
}

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> table{
      {"classify", cmd_classify}, {"bracket", cmd_bracket},     {"jacobi", cmd_jacobi},       {"delta", cmd_delta},
      {"delta2", cmd_delta2},     {"modular", cmd_modular},     {"potential", cmd_potential}, {"transform", cmd_transform},
      {"conjugate", cmd_conjugate}, {"prolong", cmd_prolong},   {"killing", cmd_killing},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, h] : handlers()) out.push_back(n);
    return out;
  }();
  return names;
}

CommandResult run_command(const CommandRequest& request, const ProblemFile* problem) {
  for (const auto& [name, handler] : handlers()) {
    if (name != request.command) continue;
    Json j;
    j["command"] = request.command;
    j["source"] = request.source;
    Json args = Json::array();
    for (const auto& a : request.args) args.push_back(a);
    j["args"] = std::move(args);
    Json results = Json::object();
    const int status = handler(request, problem, results);
    j["results"] = std::move(results);
    j["status"] = status == 0 ? "verified" : "violated";
    j["exact"] = true;
    return {j.dump(request.pretty ? 2 : -1) + "\n", status};
  }
  throw SupercalcError("unknown command '" + request.command + "'");
}

}  // namespace supercalc
