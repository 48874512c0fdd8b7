#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "plreach/core/errors.hpp"
#include "plreach/core/io.hpp"
#include "plreach/csp/csp.hpp"
#include "plreach/gadgets/encode.hpp"
#include "plreach/gadgets/interpretation.hpp"
#include "plreach/gadgets/numeric.hpp"
#include "plreach/gadgets/polynomial.hpp"
#include "plreach/gen/generator.hpp"
#include "plreach/reach/solver.hpp"
#include "plreach/reductions/csp_bridge.hpp"
#include "plreach/reductions/eliminate_id.hpp"
#include "plreach/reductions/equivalence.hpp"
#include "plreach/reductions/interval.hpp"
#include "plreach/reductions/receipt.hpp"

namespace plreach::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

/// Exits with a verdict-dependent code after the output is written.
struct Outcome {
  Json doc;
  int code = kAccept;
};

struct SolveFlags {
  std::string instance, net, in_spec, out_spec, first, second, pair;
  std::optional<std::uint64_t> budget;
  std::optional<unsigned> threads;
};

unsigned resolve_threads(const std::optional<unsigned>& flag) {
  if (flag) {
    if (*flag == 0) throw InputError("--threads must be at least 1");
    return *flag;
  }
  if (const char* env = std::getenv("PLREACH_THREADS"); env && *env) {
    char* end = nullptr;
    const unsigned long n = std::strtoul(env, &end, 10);
    if (*end != '\0' || n == 0) {
      throw InputError(std::string("PLREACH_THREADS must be a positive integer, got '") + env +
                       "'");
    }
    return static_cast<unsigned>(n);
  }
  return 1;
}

reach::SolverOptions solver_options(const SolveFlags& f) {
  return {f.budget, resolve_threads(f.threads)};
}

Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(io::to_json(x));
  return a;
}

Json stats_json(const reach::SearchStats& s) {
  return {{"lp_calls", s.lp_calls}, {"nodes_expanded", s.nodes_expanded}};
}

ReachInstance load_instance(const SolveFlags& f) {
  if (!f.instance.empty()) {
    if (!f.net.empty()) throw InputError("give either --instance or --net, not both");
    return io::instance_from_json(io::read_document(f.instance));
  }
  if (f.net.empty()) throw InputError("an instance needs --instance or --net");
  Network net = io::network_from_json(io::read_document(f.net));
  LinearSpec in = f.in_spec.empty() ? LinearSpec(net.input_dim())
                                    : io::spec_from_json(io::read_document(f.in_spec));
  LinearSpec out = f.out_spec.empty() ? LinearSpec(net.output_dim())
                                      : io::spec_from_json(io::read_document(f.out_spec));
  return {std::move(net), std::move(in), std::move(out)};
}

NetworkPair load_pair(const SolveFlags& f) {
  if (!f.pair.empty()) return io::pair_from_json(io::read_document(f.pair));
  if (f.first.empty() || f.second.empty()) {
    throw InputError("equivalence needs --pair or both --first and --second");
  }
  return {io::network_from_json(io::read_document(f.first)),
          io::network_from_json(io::read_document(f.second))};
}

void add_instance_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--instance", f.instance, "Instance file (network and both specs)");
  cmd->add_option("--net", f.net, "Network file");
  cmd->add_option("--in", f.in_spec, "Input specification file");
  cmd->add_option("--out-spec", f.out_spec, "Output specification file");
}

void add_solver_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--budget", f.budget, "Cap on search-node expansions");
  cmd->add_option("--threads", f.threads, "Worker threads (default: PLREACH_THREADS or 1)");
}

Outcome do_reach(const SolveFlags& f) {
  const ReachInstance inst = load_instance(f);
  const reach::Verdict v = reach::solve_reach(inst, solver_options(f));
  Outcome o;
  o.doc["problem"] = "reach";
  switch (v.status) {
    case reach::Status::Sat:
      o.doc["status"] = "sat";
      o.doc["witness"] = vector_json(*v.witness);
      o.doc["output"] = vector_json(evaluate(inst.network, *v.witness));
      break;
    case reach::Status::Unsat:
      o.doc["status"] = "unsat";
      o.code = kReject;
      break;
    case reach::Status::BudgetExhausted:
      o.doc["status"] = "budget_exhausted";
      o.code = kBudget;
      break;
  }
  o.doc["stats"] = stats_json(v.stats);
  return o;
}

Outcome do_vip(const SolveFlags& f) {
  const ReachInstance inst = load_instance(f);
  const reach::VipVerdict v = reach::solve_vip(inst, solver_options(f));
  Outcome o;
  o.doc["problem"] = "vip";
  switch (v.status) {
    case reach::VipStatus::Holds:
      o.doc["status"] = "holds";
      break;
    case reach::VipStatus::Violated:
      o.doc["status"] = "violated";
      o.doc["counterexample"] = vector_json(*v.counterexample);
      o.doc["output"] = vector_json(evaluate(inst.network, *v.counterexample));
      o.code = kReject;
      break;
    case reach::VipStatus::BudgetExhausted:
      o.doc["status"] = "budget_exhausted";
      o.code = kBudget;
      break;
  }
  o.doc["stats"] = stats_json(v.stats);
  return o;
}

Outcome do_ne(const SolveFlags& f) {
  const NetworkPair p = load_pair(f);
  const reach::NeVerdict v = reach::solve_ne(p.first, p.second, solver_options(f));
  Outcome o;
  o.doc["problem"] = "ne";
  switch (v.status) {
    case reach::NeStatus::Equivalent:
      o.doc["status"] = "equivalent";
      break;
    case reach::NeStatus::Distinct:
      o.doc["status"] = "distinct";
      o.doc["distinguisher"] = vector_json(*v.distinguisher);
      o.doc["first_output"] = vector_json(evaluate(p.first, *v.distinguisher));
      o.doc["second_output"] = vector_json(evaluate(p.second, *v.distinguisher));
      o.code = kReject;
      break;
    case reach::NeStatus::BudgetExhausted:
      o.doc["status"] = "budget_exhausted";
      o.code = kBudget;
      break;
  }
  o.doc["stats"] = stats_json(v.stats);
  return o;
}

// ---------------------------------------------------------------- reduce

struct ReduceFlags {
  std::string from, to, in, out, receipt, variant = "sign";
};

reductions::CovipVariant parse_variant(const std::string& s) {
  if (s == "heaviside") return reductions::CovipVariant::Heaviside;
  if (s == "sign") return reductions::CovipVariant::Sign;
  if (s == "relu") return reductions::CovipVariant::Relu;
  throw InputError("unknown --variant '" + s + "' (heaviside, sign, relu)");
}

/// The documents a reduction produced plus one receipt per document.
struct Reduced {
  std::vector<Json> docs;
  std::vector<reductions::ReductionReceipt> receipts;
};

Reduced reduce(const ReduceFlags& f) {
  using namespace reductions;
  const Json input = io::read_document(f.in);
  Reduced r;
  auto one = [&](Reduction red, std::size_t in_size, Json doc, std::size_t out_size) {
    r.docs.push_back(std::move(doc));
    r.receipts.push_back(make_receipt(red, in_size, out_size));
  };
  const std::string key = f.from + "->" + f.to;
  if (key == "nnr->csp") {
    const ReachInstance inst = io::instance_from_json(input);
    const NnrCsp c = nnr_to_csp(inst);
    one(Reduction::NnrToCsp, size_of(inst), csp::to_json(c.csp), size_of(c.csp));
  } else if (key == "csp->nnr") {
    const csp::CspInstance c = csp::csp_from_json(input);
    const ReachInstance inst = csp_to_nnr(c);
    one(Reduction::CspToNnr, size_of(c), io::to_json(inst), size_of(inst));
  } else if (key == "nnr->relu") {
    const ReachInstance inst = io::instance_from_json(input);
    const ReachInstance out = eliminate_id(inst);
    one(Reduction::EliminateId, size_of(inst), io::to_json(out), size_of(out));
  } else if (key == "ne->nnr") {
    const NetworkPair p = io::pair_from_json(input);
    const ReachInstance out = ne_to_connr(p.first, p.second);
    one(Reduction::NeToConnr, size_of(p), io::to_json(out), size_of(out));
  } else if (key == "nnr->ne") {
    const ReachInstance inst = io::instance_from_json(input);
    const NetworkPair out = nnr_to_cone(inst);
    one(Reduction::NnrToCone, size_of(inst), io::to_json(out), size_of(out));
  } else if (key == "vip->nnr") {
    const ReachInstance inst = io::instance_from_json(input);
    for (const auto& out : vip_to_connr(inst)) {
      one(Reduction::VipToConnr, size_of(inst), io::to_json(out), size_of(out));
    }
  } else if (key == "nnr->vip") {
    const ReachInstance inst = io::instance_from_json(input);
    const ReachInstance out = nnr_to_covip(inst, parse_variant(f.variant));
    one(Reduction::NnrToCovip, size_of(inst), io::to_json(out), size_of(out));
  } else if (key == "ne->vip") {
    const NetworkPair p = io::pair_from_json(input);
    const ReachInstance out = ne_to_vip(p.first, p.second, parse_variant(f.variant));
    one(Reduction::NeToVip, size_of(p), io::to_json(out), size_of(out));
  } else if (key == "vip->ne") {
    const ReachInstance inst = io::instance_from_json(input);
    const NetworkPair out = vip_to_ne(inst);
    one(Reduction::VipToNe, size_of(inst), io::to_json(out), size_of(out));
  } else if (key == "ne->ne-single") {
    const NetworkPair p = io::pair_from_json(input);
    for (const auto& out : to_single_output(p)) {
      one(Reduction::ToSingleOutput, size_of(p), io::to_json(out), size_of(out));
    }
  } else if (key == "vip->vip-single") {
    const ReachInstance inst = io::instance_from_json(input);
    for (const auto& out : to_single_output(inst)) {
      one(Reduction::ToSingleOutput, size_of(inst), io::to_json(out), size_of(out));
    }
  } else {
    throw InputError("no reduction from '" + f.from + "' to '" + f.to +
                     "'; known: nnr->csp, csp->nnr, nnr->relu, ne->nnr, nnr->ne, vip->nnr, "
                     "nnr->vip, ne->vip, vip->ne, ne->ne-single, vip->vip-single");
  }
  return r;
}

/// x.json -> x.<k>.json
fs::path numbered(const fs::path& base, std::size_t k) {
  fs::path p = base;
  p.replace_filename(base.stem().string() + "." + std::to_string(k) + base.extension().string());
  return p;
}

int do_reduce(const ReduceFlags& f, std::ostream& out, std::ostream& err) {
  const Reduced r = reduce(f);
  Json receipts = Json::array();
  bool within = true;
  for (const auto& rc : r.receipts) {
    receipts.push_back(rc.to_json());
    within = within && rc.within_bound();
  }
  Json receipt_doc = r.receipts.size() == 1 ? receipts[0] : Json{{"parts", receipts}};
  const bool list = (f.from == "vip" && f.to == "nnr") || f.to.ends_with("-single");
  if (f.out.empty()) {
    if (list) {
      Json a = Json::array();
      for (const auto& d : r.docs) a.push_back(d);
      out << io::dump(a);
    } else {
      out << io::dump(r.docs.front());
    }
  } else if (list) {
    for (std::size_t k = 0; k < r.docs.size(); ++k) {
      io::write_text(numbered(f.out, k), io::dump(r.docs[k]));
    }
  } else {
    io::write_text(f.out, io::dump(r.docs.front()));
  }
  const std::string receipt_path =
      !f.receipt.empty() ? f.receipt : (f.out.empty() ? "" : f.out + ".receipt");
  if (receipt_path.empty()) {
    err << "receipt: " << receipt_doc.dump() << "\n";
  } else {
    io::write_text(receipt_path, io::dump(receipt_doc));
  }
  if (!within) {
    err << "size bound exceeded\n";
    return kReject;
  }
  return kAccept;
}

// ---------------------------------------------------------------- gadget

struct GadgetFlags {
  std::string kind, n = "1", q = "1", poly, in, fn, a = "0", b = "4", c, d, at = "1/2";
  std::size_t depth = 6;
};

Vector parse_vector(const std::string& text) {
  Vector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(Rational::parse(item));
  if (v.empty()) throw InputError("expected a comma-separated list of rationals");
  return v;
}

BigInt parse_integer(const std::string& text) {
  const Rational r = Rational::parse(text);
  if (!r.is_integer()) throw InputError("expected an integer, got '" + text + "'");
  return r.num();
}

std::string real_str(const gadgets::Real& x) { return x.str(20, std::ios_base::scientific); }

Outcome do_gadget(const GadgetFlags& f) {
  Outcome o;
  o.doc["gadget"] = f.kind;
  if (f.kind == "encode-integer") {
    const BigInt n = parse_integer(f.n);
    csp::CspInstance c(1);
    const auto cs = gadgets::encode_integer(c, n, 0);
    const auto solved = csp::propagate(c, csp::Partial(c.num_vars()));
    o.doc["constraints"] = cs.size();
    o.doc["bound"] = 2 * (mpz_sizeinbase(n.get_mpz_t(), 2) - 1) + 2;
    o.doc["value"] = solved[0] ? io::to_json(*solved[0]) : Json();
    o.doc["csp"] = csp::to_json(c);
  } else if (f.kind == "encode-rational") {
    csp::CspInstance c(2);
    const csp::Var zero = gadgets::make_zero(c);
    gadgets::encode_rational_coefficient(c, Rational::parse(f.q), 0, 1, zero);
    o.doc["note"] = "variable 1 equals q times variable 0";
    o.doc["csp"] = csp::to_json(c);
  } else if (f.kind == "poly-to-square") {
    const gadgets::Polynomial p(parse_vector(f.poly));
    const auto combo = gadgets::poly_to_square(p);
    Json terms = Json::array();
    for (const auto& t : combo.terms) {
      terms.push_back({{"shift", t.shift.get_str()}, {"scale", io::to_json(t.scale)}});
    }
    o.doc["polynomial"] = p.str();
    o.doc["terms"] = terms;
    o.doc["linear"] = io::to_json(combo.linear);
    o.doc["constant"] = io::to_json(combo.constant);
    o.doc["expands_to"] = combo.expand(p).str();
  } else if (f.kind == "define-square") {
    const gadgets::Polynomial p(parse_vector(f.poly));
    csp::CspInstance c(2);
    gadgets::define_square(c, p, 0, 1);
    o.doc["note"] = "variable 1 equals the square of variable 0";
    o.doc["csp"] = csp::to_json(c);
  } else if (f.kind == "interpret-positive" || f.kind == "interpret-unit") {
    const csp::CspInstance src = csp::csp_from_json(io::read_document(f.in));
    const gadgets::Interpreted r =
        f.kind == "interpret-positive"
            ? gadgets::interpret_positive(src)
            : gadgets::interpret_unit_interval(src, parse_integer(f.n)).reciprocal;
    Json coords = Json::array();
    for (const auto& t : r.coords) coords.push_back(t);
    o.doc["coords"] = coords;
    o.doc["csp"] = csp::to_json(r.csp);
  } else if (f.kind == "midpoint" || f.kind == "fbar") {
    const auto fn = gadgets::NumericFn::by_name(f.fn);
    const Rational a = Rational::parse(f.a), b = Rational::parse(f.b);
    const auto w = gadgets::midpoint_witness(fn, a, b, f.depth);
    o.doc["function"] = fn.name;
    if (!w) {
      o.doc["witness"] = nullptr;
      o.code = kReject;
      return o;
    }
    o.doc["witness"] = {{"c", io::to_json(w->c)}, {"d", io::to_json(w->d)},
                        {"gap", real_str(w->gap)}};
    if (f.kind == "fbar") {
      const auto fbar = gadgets::build_fbar(fn, w->c, w->d);
      const Rational at = Rational::parse(f.at);
      o.doc["fbar"] = {{"at", io::to_json(at)},
                       {"value", real_str(fbar(gadgets::to_real(at)))},
                       {"at_0", real_str(fbar(0))},
                       {"at_1", real_str(fbar(1))}};
    }
  } else {
    throw InputError("unknown gadget '" + f.kind +
                     "' (encode-integer, encode-rational, poly-to-square, define-square, "
                     "interpret-positive, interpret-unit, midpoint, fbar)");
  }
  return o;
}

// ---------------------------------------------------------------- others

Outcome do_verify(const std::string& tag, std::size_t samples, double tol, std::uint64_t seed) {
  const auto report = gadgets::verify_identity(gadgets::identity_from_name(tag), samples, tol, seed);
  return {io::parse_document(report.str()), report.pass ? kAccept : kReject};
}

struct GenFlags {
  gen::GenConfig cfg;
  std::string acts = "relu";
};

Activation parse_activation(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return io::activation_from_json(Json(spec), "--acts");
  Json j{{"name", spec.substr(0, colon)}, {"params", Json::array({spec.substr(colon + 1)})}};
  return io::activation_from_json(j, "--acts");
}

Outcome do_gen(GenFlags f) {
  f.cfg.activations.clear();
  std::stringstream ss(f.acts);
  std::string item;
  while (std::getline(ss, item, ',')) f.cfg.activations.push_back(parse_activation(item));
  if (f.cfg.activations.empty()) throw InputError("--acts needs at least one activation");
  return {io::to_json(gen::generate(f.cfg)), kAccept};
}

Outcome do_fmt(const std::string& in, std::string kind) {
  const Json j = io::read_document(in);
  if (kind == "auto") {
    if (!j.is_object()) throw FormatError("expected a JSON object at the top level");
    if (j.contains("network")) kind = "instance";
    else if (j.contains("first")) kind = "pair";
    else if (j.contains("layers")) kind = "network";
    else if (j.contains("constraints") && !j["constraints"].empty() &&
             j["constraints"][0].contains("kind")) kind = "csp";
    else kind = "spec";
  }
  if (kind == "instance") return {io::to_json(io::instance_from_json(j))};
  if (kind == "pair") return {io::to_json(io::pair_from_json(j))};
  if (kind == "network") return {io::to_json(io::network_from_json(j))};
  if (kind == "spec") return {io::to_json(io::spec_from_json(j))};
  if (kind == "csp") return {csp::to_json(csp::csp_from_json(j))};
  throw InputError("unknown --kind '" + kind + "' (auto, instance, pair, network, spec, csp)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact reachability, interval-property and equivalence checking for "
               "piecewise-linear networks"};
  app.name(args.empty() ? "plreach" : args[0]);
  app.require_subcommand(1);

  std::string out_path;
  SolveFlags solve;
  auto* reach_cmd = app.add_subcommand("reach", "Is some admissible input mapped into the output region?");
  auto* vip_cmd = app.add_subcommand("vip", "Is every admissible input mapped into the output region?");
  auto* ne_cmd = app.add_subcommand("ne", "Do two networks compute the same function?");
  for (auto* cmd : {reach_cmd, vip_cmd}) add_instance_flags(cmd, solve);
  ne_cmd->add_option("--pair", solve.pair, "File holding both networks");
  ne_cmd->add_option("--first", solve.first, "First network file");
  ne_cmd->add_option("--second", solve.second, "Second network file");
  for (auto* cmd : {reach_cmd, vip_cmd, ne_cmd}) {
    add_solver_flags(cmd, solve);
    cmd->add_option("--out", out_path, "Write the verdict here instead of stdout");
  }

  ReduceFlags red;
  auto* reduce_cmd = app.add_subcommand("reduce", "Transform an instance between problems");
  reduce_cmd->add_option("--from", red.from, "nnr, vip, ne or csp")->required();
  reduce_cmd->add_option("--to", red.to, "csp, nnr, relu, ne, vip, ne-single or vip-single")
      ->required();
  reduce_cmd->add_option("--in", red.in, "Source instance file")->required();
  reduce_cmd->add_option("--out", red.out,
                         "Target file (numbered x.0.json, x.1.json, ... for lists)");
  reduce_cmd->add_option("--receipt", red.receipt, "Receipt file (default: <out>.receipt)");
  reduce_cmd->add_option("--variant", red.variant, "heaviside, sign or relu for -> vip");

  GadgetFlags gad;
  auto* gadget_cmd = app.add_subcommand("gadget", "Run one of the constraint gadgets");
  gadget_cmd->add_option("--kind", gad.kind, "Which gadget")->required();
  gadget_cmd->add_option("--n", gad.n, "Integer argument");
  gadget_cmd->add_option("--q", gad.q, "Rational coefficient");
  gadget_cmd->add_option("--poly", gad.poly, "Coefficients by degree, e.g. 0,0,0,1 for x^3");
  gadget_cmd->add_option("--in", gad.in, "Constraint instance file");
  gadget_cmd->add_option("--fn", gad.fn, "Function name (sigmoid, tanh, square, ...)");
  gadget_cmd->add_option("--a", gad.a, "Left end of the search interval");
  gadget_cmd->add_option("--b", gad.b, "Right end of the search interval");
  gadget_cmd->add_option("--depth", gad.depth, "Dyadic search depth");
  gadget_cmd->add_option("--at", gad.at, "Point at which to evaluate fbar");
  gadget_cmd->add_option("--out", out_path, "Write the result here instead of stdout");

  std::string tag;
  std::size_t samples = 1000;
  double tol = 1e-9;
  std::uint64_t seed = 1;
  auto* verify_cmd = app.add_subcommand("verify-identity", "Check an identity numerically");
  verify_cmd->add_option("--tag", tag, "exp_mul, gaussian_pow4, arctan_cubic or cosine_quad")
      ->required();
  verify_cmd->add_option("--samples", samples, "Number of sample points");
  verify_cmd->add_option("--tol", tol, "Relative tolerance");
  verify_cmd->add_option("--seed", seed, "Sampling seed");
  verify_cmd->add_option("--out", out_path, "Write the report here instead of stdout");

  GenFlags gf;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--seed", gf.cfg.seed, "Seed; fully determines the output");
  gen_cmd->add_option("--inputs", gf.cfg.input_dim, "Input dimension");
  gen_cmd->add_option("--depth", gf.cfg.depth, "Layers, output layer included");
  gen_cmd->add_option("--width", gf.cfg.width, "Hidden layer width");
  gen_cmd->add_option("--outputs", gf.cfg.output_dim, "Output dimension");
  gen_cmd->add_option("--acts", gf.acts, "Comma list, e.g. relu,id,leaky_relu:1/2");
  gen_cmd->add_option("--max-num", gf.cfg.max_numerator, "Largest numerator magnitude");
  gen_cmd->add_option("--max-den", gf.cfg.max_denominator, "Largest denominator");
  gen_cmd->add_option("--in-rows", gf.cfg.input_constraints, "Input specification rows");
  gen_cmd->add_option("--out-rows", gf.cfg.output_constraints, "Output specification rows");
  gen_cmd->add_flag("--planted", gf.cfg.planted, "Build the specs around a drawn input");
  gen_cmd->add_option("--out", out_path, "Write the instance here instead of stdout");

  std::string fmt_in, fmt_kind = "auto";
  auto* fmt_cmd = app.add_subcommand("fmt", "Parse a file and print it canonically");
  fmt_cmd->add_option("--in", fmt_in, "File to format")->required();
  fmt_cmd->add_option("--kind", fmt_kind, "auto, instance, pair, network, spec or csp");
  fmt_cmd->add_option("--out", out_path, "Write here instead of stdout");

  try {
    std::vector<std::string> rest(args.rbegin(), args.rend());
    if (!rest.empty()) rest.pop_back();
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kAccept : kUsage;
  }

  try {
    if (reduce_cmd->parsed()) return do_reduce(red, out, err);
    Outcome o;
    if (reach_cmd->parsed()) o = do_reach(solve);
    else if (vip_cmd->parsed()) o = do_vip(solve);
    else if (ne_cmd->parsed()) o = do_ne(solve);
    else if (gadget_cmd->parsed()) o = do_gadget(gad);
    else if (verify_cmd->parsed()) o = do_verify(tag, samples, tol, seed);
    else if (gen_cmd->parsed()) o = do_gen(gf);
    else o = do_fmt(fmt_in, fmt_kind);
    if (out_path.empty()) out << io::dump(o.doc);
    else io::write_text(out_path, io::dump(o.doc));
    return o.code;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace plreach::cli
