#include "plreach/core/io.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <utility>

#include "plreach/core/errors.hpp"

namespace plreach::io {

namespace {

[[noreturn]] void schema_error(const std::string& at, const std::string& msg) {
  throw FormatError((at.empty() ? std::string("/") : at) + ": " + msg);
}

const Json& field(const Json& j, const char* key, const std::string& at) {
  if (!j.is_object()) schema_error(at, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(at, std::string("missing field '") + key + "'");
  return *it;
}

std::size_t count_from_json(const Json& j, const std::string& at) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    schema_error(at, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

bool flag_from_json(const Json& j, const std::string& at) {
  if (!j.is_boolean()) schema_error(at, "expected true or false");
  return j.get<bool>();
}

const Json& array_at(const Json& j, const std::string& at) {
  if (!j.is_array()) schema_error(at, "expected an array");
  return j;
}

Vector vector_from_json(const Json& j, const std::string& at) {
  array_at(j, at);
  Vector v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v.push_back(rational_from_json(j[i], at + "/" + std::to_string(i)));
  }
  return v;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

// Activations the exact engine recognises by name but cannot decide.
constexpr std::array kTranscendental = {
    "sigmoid", "tanh",     "exp",  "arctan", "atan", "gaussian", "elu",
    "softplus", "silu",    "swish", "gelu",  "cos",  "sin",      "log",
    "square",  "softsign", "algebraic_sigmoid"};

std::optional<Rational> bound_from_json(const Json& j, const std::string& at) {
  if (j.is_null()) return std::nullopt;
  return rational_from_json(j, at);
}

Json bound_to_json(const std::optional<Rational>& b) {
  return b ? to_json(*b) : Json(nullptr);
}

}  // namespace

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is the 1-based index of the byte where parsing stopped.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = e.byte == 0 ? 0 : e.byte - 1;
    for (std::size_t i = 0; i < stop && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw FormatError("parse error at line " + std::to_string(line) +
                          ", column " + std::to_string(column) + ": " +
                          e.what(),
                      line, column);
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_document(const std::filesystem::path& path) {
  return parse_document(read_text(path));
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j, const std::string& at) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const InputError& e) {
      schema_error(at, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_unsigned()) return Rational(j.get<unsigned long long>());
  schema_error(at, "expected a rational string \"p/q\" (floats are not exact)");
}

Json to_json(const Activation& act) {
  switch (act.kind()) {
    case ActivationKind::LeakyRelu:
    case ActivationKind::HardSigmoid:
      return Json{{"name", std::string(act.name())},
                  {"params", vector_to_json(act.params())}};
    case ActivationKind::Custom: {
      Json pieces = Json::array();
      for (const auto& p : act.pieces()) {
        pieces.push_back(Json{{"lo", bound_to_json(p.lo)},
                              {"lo_closed", p.lo_closed},
                              {"hi", bound_to_json(p.hi)},
                              {"hi_closed", p.hi_closed},
                              {"slope", to_json(p.slope)},
                              {"intercept", to_json(p.intercept)}});
      }
      return Json{{"name", "custom"}, {"pieces", std::move(pieces)}};
    }
    default:
      return std::string(act.name());
  }
}

Activation activation_from_json(const Json& j, const std::string& at) {
  std::string name;
  if (j.is_string()) {
    name = j.get<std::string>();
  } else if (j.is_object()) {
    const Json& n = field(j, "name", at);
    if (!n.is_string()) schema_error(at + "/name", "expected a string");
    name = n.get<std::string>();
  } else {
    schema_error(at, "expected an activation name or object");
  }

  for (const char* t : kTranscendental) {
    if (name == t) {
      throw UnsupportedError(at + ": activation '" + name +
                             "' is not piecewise linear");
    }
  }

  auto param = [&](std::size_t i) {
    if (!j.is_object()) schema_error(at, "activation '" + name + "' needs params");
    const Vector params = vector_from_json(field(j, "params", at), at + "/params");
    if (params.size() <= i) schema_error(at + "/params", "missing parameter");
    return params[i];
  };

  try {
    if (name == "id" || name == "identity") return Activation::id();
    if (name == "relu") return Activation::relu();
    if (name == "heaviside") return Activation::heaviside();
    if (name == "sign") return Activation::sign();
    if (name == "abs") return Activation::abs();
    if (name == "leaky_relu") return Activation::leaky_relu(param(0));
    if (name == "hard_sigmoid") return Activation::hard_sigmoid(param(0));
    if (name == "custom") {
      const Json& pieces = array_at(field(j, "pieces", at), at + "/pieces");
      std::vector<Piece> out;
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        const std::string pat = at + "/pieces/" + std::to_string(i);
        const Json& p = pieces[i];
        out.push_back(Piece{
            bound_from_json(field(p, "lo", pat), pat + "/lo"),
            flag_from_json(field(p, "lo_closed", pat), pat + "/lo_closed"),
            bound_from_json(field(p, "hi", pat), pat + "/hi"),
            flag_from_json(field(p, "hi_closed", pat), pat + "/hi_closed"),
            rational_from_json(field(p, "slope", pat), pat + "/slope"),
            rational_from_json(field(p, "intercept", pat), pat + "/intercept"),
        });
      }
      return Activation::custom(std::move(out));
    }
  } catch (const FormatError&) {
    throw;
  } catch (const InputError& e) {
    schema_error(at, e.what());
  }
  schema_error(at, "unknown activation '" + name + "'");
}

Json to_json(const Network& net) {
  Json layers = Json::array();
  for (const auto& layer : net.layers()) {
    Json weights = Json::array();
    for (std::size_t r = 0; r < layer.weights.rows(); ++r) {
      Json row = Json::array();
      for (const auto& w : layer.weights.row(r)) row.push_back(to_json(w));
      weights.push_back(std::move(row));
    }
    Json acts = Json::array();
    for (const auto& a : layer.activations) acts.push_back(to_json(a));
    layers.push_back(Json{{"weights", std::move(weights)},
                          {"biases", vector_to_json(layer.bias)},
                          {"activations", std::move(acts)}});
  }
  return Json{{"inputs", net.input_dim()}, {"layers", std::move(layers)}};
}

Network network_from_json(const Json& j, const std::string& at) {
  const std::size_t inputs = count_from_json(field(j, "inputs", at), at + "/inputs");
  const Json& layers = array_at(field(j, "layers", at), at + "/layers");
  std::vector<Layer> out;
  std::size_t prev = inputs;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::string lat = at + "/layers/" + std::to_string(l);
    const Json& lj = layers[l];
    const Json& wj = array_at(field(lj, "weights", lat), lat + "/weights");
    std::vector<Vector> rows;
    for (std::size_t r = 0; r < wj.size(); ++r) {
      rows.push_back(vector_from_json(wj[r], lat + "/weights/" + std::to_string(r)));
    }
    Layer layer;
    try {
      layer.weights = Matrix::from_rows(rows, prev);
    } catch (const InputError& e) {
      schema_error(lat + "/weights", e.what());
    }
    layer.bias = vector_from_json(field(lj, "biases", lat), lat + "/biases");
    const Json& aj = array_at(field(lj, "activations", lat), lat + "/activations");
    for (std::size_t i = 0; i < aj.size(); ++i) {
      layer.activations.push_back(
          activation_from_json(aj[i], lat + "/activations/" + std::to_string(i)));
    }
    prev = layer.bias.size();
    out.push_back(std::move(layer));
  }
  try {
    return Network(inputs, std::move(out));
  } catch (const InputError& e) {
    schema_error(at, e.what());
  }
}

Json to_json(const LinearSpec& spec) {
  Json rows = Json::array();
  for (const auto& c : spec.constraints()) {
    rows.push_back(Json{{"coeffs", vector_to_json(c.coeffs)},
                        {"cmp", std::string(to_string(c.cmp))},
                        {"rhs", to_json(c.rhs)}});
  }
  return Json{{"vars", spec.num_vars()}, {"constraints", std::move(rows)}};
}

LinearSpec spec_from_json(const Json& j, const std::string& at) {
  const std::size_t vars = count_from_json(field(j, "vars", at), at + "/vars");
  const Json& rows = array_at(field(j, "constraints", at), at + "/constraints");
  std::vector<LinearConstraint> out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::string cat = at + "/constraints/" + std::to_string(k);
    Vector coeffs = vector_from_json(field(rows[k], "coeffs", cat), cat + "/coeffs");
    const Json& cj = field(rows[k], "cmp", cat);
    if (!cj.is_string()) schema_error(cat + "/cmp", "expected a comparator string");
    const std::string cmp = cj.get<std::string>();
    Rational rhs = rational_from_json(field(rows[k], "rhs", cat), cat + "/rhs");
    if (cmp == "<=" || cmp == "≤") {
      out.push_back({std::move(coeffs), Comparator::Le, std::move(rhs)});
    } else if (cmp == "<") {
      out.push_back({std::move(coeffs), Comparator::Lt, std::move(rhs)});
    } else if (cmp == "=" || cmp == "==") {
      out.push_back({std::move(coeffs), Comparator::Eq, std::move(rhs)});
    } else if (cmp == ">=" || cmp == "≥") {
      out.push_back(LinearConstraint::ge(std::move(coeffs), rhs));
    } else if (cmp == ">") {
      out.push_back(LinearConstraint::gt(std::move(coeffs), rhs));
    } else {
      schema_error(cat + "/cmp", "unknown comparator '" + cmp + "'");
    }
  }
  try {
    return LinearSpec(vars, std::move(out));
  } catch (const InputError& e) {
    schema_error(at, e.what());
  }
}

Json to_json(const ReachInstance& inst) {
  return Json{{"network", to_json(inst.network)},
              {"input_spec", to_json(inst.input_spec)},
              {"output_spec", to_json(inst.output_spec)}};
}

ReachInstance instance_from_json(const Json& j, const std::string& at) {
  Network net = network_from_json(field(j, "network", at), at + "/network");
  LinearSpec in = spec_from_json(field(j, "input_spec", at), at + "/input_spec");
  LinearSpec out = spec_from_json(field(j, "output_spec", at), at + "/output_spec");
  try {
    return {std::move(net), std::move(in), std::move(out)};
  } catch (const InputError& e) {
    schema_error(at, e.what());
  }
}

Json to_json(const NetworkPair& pair) {
  return Json{{"first", to_json(pair.first)}, {"second", to_json(pair.second)}};
}

NetworkPair pair_from_json(const Json& j, const std::string& at) {
  return {network_from_json(field(j, "first", at), at + "/first"),
          network_from_json(field(j, "second", at), at + "/second")};
}

}  // namespace plreach::io
