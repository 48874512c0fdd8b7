#include "plreach/csp/csp.hpp"

#include <utility>

#include "plreach/core/errors.hpp"

namespace plreach::csp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string var_name(Var v) { return "v" + std::to_string(v); }

}  // namespace

Rational apply(const Function& f, const Rational& x) {
  return std::visit(overloaded{
                        [&](const Activation& a) { return a.apply(x); },
                        [&](const PolyFn& p) {
                          // Horner
                          Rational acc;
                          for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
                            acc = acc * x + *it;
                          }
                          return acc;
                        },
                    },
                    f);
}

std::string describe(const Constraint& c) {
  return std::visit(
      overloaded{
          [](const Leq& k) { return var_name(k.u) + " <= " + var_name(k.v); },
          [](const Plus& k) {
            return var_name(k.u) + " + " + var_name(k.v) + " = " + var_name(k.w);
          },
          [](const One& k) { return var_name(k.u) + " = 1"; },
          [](const Const& k) { return var_name(k.u) + " = " + k.value.str(); },
          [](const Mul& k) {
            return var_name(k.u) + " * " + var_name(k.v) + " = " + var_name(k.w);
          },
          [](const FnGraph& k) {
            const std::string name =
                std::holds_alternative<Activation>(k.f)
                    ? std::string(std::get<Activation>(k.f).name())
                    : std::string("poly");
            return var_name(k.v) + " = " + name + "(" + var_name(k.u) + ")";
          },
      },
      c);
}

std::vector<Var> variables(const Constraint& c) {
  return std::visit(overloaded{
                        [](const Leq& k) { return std::vector<Var>{k.u, k.v}; },
                        [](const Plus& k) { return std::vector<Var>{k.u, k.v, k.w}; },
                        [](const One& k) { return std::vector<Var>{k.u}; },
                        [](const Const& k) { return std::vector<Var>{k.u}; },
                        [](const Mul& k) { return std::vector<Var>{k.u, k.v, k.w}; },
                        [](const FnGraph& k) { return std::vector<Var>{k.u, k.v}; },
                    },
                    c);
}

CspInstance::CspInstance(std::size_t num_vars, std::vector<Constraint> constraints)
    : num_vars_(num_vars) {
  constraints_.reserve(constraints.size());
  for (auto& c : constraints) add(std::move(c));
}

void CspInstance::add(Constraint c) {
  for (Var v : variables(c)) {
    if (v >= num_vars_) {
      throw InputError("constraint '" + describe(c) + "' mentions an unknown variable (" +
                       std::to_string(num_vars_) + " declared)");
    }
  }
  constraints_.push_back(std::move(c));
}

void CspInstance::append(const std::vector<Constraint>& cs) {
  for (const auto& c : cs) add(c);
}

bool holds(const Constraint& c, std::span<const Rational> a) {
  return std::visit(overloaded{
                        [&](const Leq& k) { return a[k.u] <= a[k.v]; },
                        [&](const Plus& k) { return a[k.u] + a[k.v] == a[k.w]; },
                        [&](const One& k) { return a[k.u] == 1; },
                        [&](const Const& k) { return a[k.u] == k.value; },
                        [&](const Mul& k) { return a[k.u] * a[k.v] == a[k.w]; },
                        [&](const FnGraph& k) { return csp::apply(k.f, a[k.u]) == a[k.v]; },
                    },
                    c);
}

bool satisfied(const CspInstance& csp, std::span<const Rational> assignment) {
  if (assignment.size() != csp.num_vars()) {
    throw InputError("assignment has " + std::to_string(assignment.size()) +
                     " values, instance has " + std::to_string(csp.num_vars()) +
                     " variables");
  }
  for (const auto& c : csp.constraints()) {
    if (!holds(c, assignment)) return false;
  }
  return true;
}

namespace {

/// Values pinned down by the linear part (Plus, One, Const) once the known
/// values are substituted: exact Gauss-Jordan elimination over the unknowns,
/// keeping every variable whose pivot row has no other free entry.
bool solve_linear(const CspInstance& csp, Partial& known) {
  std::vector<Var> unknown_ids;
  std::vector<std::size_t> column(csp.num_vars(), static_cast<std::size_t>(-1));
  for (Var v = 0; v < csp.num_vars(); ++v) {
    if (!known[v]) {
      column[v] = unknown_ids.size();
      unknown_ids.push_back(v);
    }
  }
  if (unknown_ids.empty()) return false;
  const std::size_t n = unknown_ids.size();
  std::vector<Vector> rows;  // n coefficients, then the right-hand side
  auto add_row = [&](const std::vector<std::pair<Var, Rational>>& terms, Rational rhs) {
    Vector row(n + 1);
    bool any = false;
    for (const auto& [v, c] : terms) {
      if (known[v]) {
        rhs -= c * *known[v];
      } else {
        row[column[v]] += c;
        any = true;
      }
    }
    if (!any) return;
    row[n] = rhs;
    rows.push_back(std::move(row));
  };
  for (const auto& c : csp.constraints()) {
    if (const auto* k = std::get_if<Plus>(&c)) {
      add_row({{k->u, 1}, {k->v, 1}, {k->w, -1}}, 0);
    } else if (const auto* k = std::get_if<One>(&c)) {
      add_row({{k->u, 1}}, 1);
    } else if (const auto* k = std::get_if<Const>(&c)) {
      add_row({{k->u, 1}}, k->value);
    }
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][col].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = rows[r][col].inverse();
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      const Rational f = rows[i][col];
      for (std::size_t k = col; k <= n; ++k) {
        if (!rows[r][k].is_zero()) rows[i][k] -= f * rows[r][k];
      }
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i) {
    if (!rows[i][n].is_zero()) throw InputError("linear constraints are inconsistent");
  }
  bool changed = false;
  for (std::size_t i = 0; i < r; ++i) {
    bool alone = true;
    for (std::size_t k = pivot_col[i] + 1; k < n && alone; ++k) {
      alone = rows[i][k].is_zero();
    }
    if (alone) {
      known[unknown_ids[pivot_col[i]]] = rows[i][n];
      changed = true;
    }
  }
  return changed;
}

}  // namespace

Partial propagate(const CspInstance& csp, Partial known) {
  if (known.size() != csp.num_vars()) known.resize(csp.num_vars());
  bool changed = true;
  auto set = [&](Var v, const Rational& value, const Constraint& why) {
    if (known[v]) {
      if (*known[v] != value) {
        throw InputError("conflicting values for " + var_name(v) + " from '" +
                         describe(why) + "'");
      }
      return;
    }
    known[v] = value;
    changed = true;
  };
  for (;;) {
    while (changed) {
      changed = false;
      for (const auto& c : csp.constraints()) {
        std::visit(overloaded{
                       [&](const Leq&) {},
                       [&](const Plus& k) {
                         const auto &u = known[k.u], &v = known[k.v], &w = known[k.w];
                         if (u && v) set(k.w, *u + *v, c);
                         else if (u && w) set(k.v, *w - *u, c);
                         else if (v && w) set(k.u, *w - *v, c);
                       },
                       [&](const One& k) { set(k.u, 1, c); },
                       [&](const Const& k) { set(k.u, k.value, c); },
                       [&](const Mul& k) {
                         const auto &u = known[k.u], &v = known[k.v], &w = known[k.w];
                         if (u && v) set(k.w, *u * *v, c);
                         else if (u && w && !u->is_zero()) set(k.v, *w / *u, c);
                         else if (v && w && !v->is_zero()) set(k.u, *w / *v, c);
                       },
                       [&](const FnGraph& k) {
                         if (known[k.u]) set(k.v, csp::apply(k.f, *known[k.u]), c);
                       },
                   },
                   c);
      }
    }
    if (!solve_linear(csp, known)) break;
    changed = true;
  }
  return known;
}

io::Json to_json(const CspInstance& csp) {
  io::Json rows = io::Json::array();
  for (const auto& c : csp.constraints()) {
    io::Json row;
    std::visit(overloaded{
                   [&](const Leq&) { row["kind"] = "leq"; },
                   [&](const Plus&) { row["kind"] = "plus"; },
                   [&](const One&) { row["kind"] = "one"; },
                   [&](const Const&) { row["kind"] = "const"; },
                   [&](const Mul&) { row["kind"] = "mul"; },
                   [&](const FnGraph&) { row["kind"] = "fn"; },
               },
               c);
    row["args"] = variables(c);
    if (const auto* k = std::get_if<Const>(&c)) row["value"] = io::to_json(k->value);
    if (const auto* k = std::get_if<FnGraph>(&c)) {
      if (const auto* a = std::get_if<Activation>(&k->f)) {
        row["activation"] = io::to_json(*a);
      } else {
        io::Json coeffs = io::Json::array();
        for (const auto& x : std::get<PolyFn>(k->f).coeffs) coeffs.push_back(io::to_json(x));
        row["poly"] = std::move(coeffs);
      }
    }
    rows.push_back(std::move(row));
  }
  return io::Json{{"vars", csp.num_vars()}, {"constraints", std::move(rows)}};
}

namespace {

[[noreturn]] void schema_error(const std::string& at, const std::string& msg) {
  throw FormatError((at.empty() ? std::string("/") : at) + ": " + msg);
}

const io::Json& field(const io::Json& j, const char* key, const std::string& at) {
  if (!j.is_object()) schema_error(at, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(at, std::string("missing field '") + key + "'");
  return *it;
}

std::vector<Var> args_from_json(const io::Json& j, std::size_t arity, const std::string& at) {
  if (!j.is_array() || j.size() != arity) {
    schema_error(at, "expected " + std::to_string(arity) + " variable indices");
  }
  std::vector<Var> out;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() && !(x.is_number_integer() && x.get<long long>() >= 0)) {
      schema_error(at, "variable indices must be non-negative integers");
    }
    out.push_back(x.get<Var>());
  }
  return out;
}

}  // namespace

CspInstance csp_from_json(const io::Json& j, const std::string& at) {
  const io::Json& vj = field(j, "vars", at);
  if (!vj.is_number_unsigned() && !(vj.is_number_integer() && vj.get<long long>() >= 0)) {
    schema_error(at + "/vars", "expected a non-negative integer");
  }
  const io::Json& rows = field(j, "constraints", at);
  if (!rows.is_array()) schema_error(at + "/constraints", "expected an array");
  std::vector<Constraint> out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::string cat = at + "/constraints/" + std::to_string(k);
    const io::Json& kind_j = field(rows[k], "kind", cat);
    if (!kind_j.is_string()) schema_error(cat + "/kind", "expected a string");
    const std::string kind = kind_j.get<std::string>();
    const io::Json& args = field(rows[k], "args", cat);
    const std::string aat = cat + "/args";
    if (kind == "leq") {
      const auto a = args_from_json(args, 2, aat);
      out.push_back(Leq{a[0], a[1]});
    } else if (kind == "plus") {
      const auto a = args_from_json(args, 3, aat);
      out.push_back(Plus{a[0], a[1], a[2]});
    } else if (kind == "one") {
      out.push_back(One{args_from_json(args, 1, aat)[0]});
    } else if (kind == "const") {
      out.push_back(Const{args_from_json(args, 1, aat)[0],
                          io::rational_from_json(field(rows[k], "value", cat), cat + "/value")});
    } else if (kind == "mul") {
      const auto a = args_from_json(args, 3, aat);
      out.push_back(Mul{a[0], a[1], a[2]});
    } else if (kind == "fn") {
      const auto a = args_from_json(args, 2, aat);
      if (rows[k].contains("poly")) {
        const io::Json& pj = rows[k]["poly"];
        if (!pj.is_array()) schema_error(cat + "/poly", "expected an array");
        PolyFn p;
        for (std::size_t i = 0; i < pj.size(); ++i) {
          p.coeffs.push_back(io::rational_from_json(pj[i], cat + "/poly/" + std::to_string(i)));
        }
        out.push_back(FnGraph{std::move(p), a[0], a[1]});
      } else {
        out.push_back(FnGraph{
            io::activation_from_json(field(rows[k], "activation", cat), cat + "/activation"),
            a[0], a[1]});
      }
    } else {
      schema_error(cat + "/kind", "unknown constraint kind '" + kind + "'");
    }
  }
  try {
    return CspInstance(vj.get<std::size_t>(), std::move(out));
  } catch (const FormatError&) {
    throw;
  } catch (const InputError& e) {
    schema_error(at, e.what());
  }
}

}  // namespace plreach::csp
