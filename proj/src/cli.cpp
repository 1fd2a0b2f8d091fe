#include "tdw/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tdw/brillnoether.hpp"
#include "tdw/dsl.hpp"
#include "tdw/errors.hpp"
#include "tdw/hyperelliptic.hpp"
#include "tdw/rank.hpp"
#include "tdw/reduction.hpp"

namespace tdw {

namespace {

using nlohmann::json;

struct Options {
  std::string file;
  std::vector<std::string> divisors;
  std::string base;
  std::string kind;  // check subcommand kind
  int r = -1;
  long long d = -1;
  long long refine = 2;
  bool emit_json = false;
  unsigned long long seed = kDefaultSeed;
};

int thread_cap() {
  // The engine is sequential; the cap is honored trivially and reported.
  const char* env = std::getenv("TDW_THREADS");
  if (!env) return 1;
  long v = std::strtol(env, nullptr, 10);
  return v >= 1 ? static_cast<int>(std::min(v, 64L)) : 1;
}

ComplexDocument load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

json divisor_json(const ComplexDocument& doc, const Divisor& d) {
  json arr = json::array();
  for (const auto& [p, c] : d.coeffs())
    arr.push_back({{"coeff", c}, {"at", location_str(doc, p)}});
  return arr;
}

json points_json(const ComplexDocument& doc, const std::vector<Point>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back(location_str(doc, p));
  return arr;
}

std::string divisor_text(const ComplexDocument& doc, const Divisor& d) {
  if (d.empty()) return "0";
  std::string out;
  for (const auto& [p, c] : d.coeffs()) {
    if (!out.empty()) out += " + ";
    if (c != 1) out += std::to_string(c) + "*";
    out += location_str(doc, p);
  }
  return out;
}

const Divisor& named_divisor(const ComplexDocument& doc, const Options& opt, std::size_t i = 0) {
  if (opt.divisors.size() <= i) throw InputError("missing --divisor NAME");
  return doc.divisor(opt.divisors[i]);
}

struct Emitter {
  const Options& opt;
  std::ostream& out;
  json report;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  Emitter(const Options& o, std::ostream& os, const std::string& command) : opt(o), out(os) {
    report["command"] = command;
    report["inputs"] = json::object();
    report["inputs"]["file"] = opt.file;
    report["result"] = json::object();
    report["certificate"] = json::object();
    report["threads"] = thread_cap();
  }

  void finish(const std::string& human) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    report["timings"] = {{"total_ms", ms}};
    if (opt.emit_json)
      out << report.dump(2) << "\n";
    else
      out << human << "\n";
  }
};

int cmd_rank(const Options& opt, std::ostream& out) {
  ComplexDocument doc = load(opt.file);
  Emitter em(opt, out, "rank");
  const Divisor& d = named_divisor(doc, opt);
  em.report["inputs"]["divisor"] = opt.divisors[0];
  RankCertificate cert = rank(doc.complex, d);
  em.report["result"]["rank"] = cert.rank;
  em.report["result"]["degree"] = d.degree();
  em.report["certificate"]["failing_multiset"] = points_json(doc, cert.failing_multiset);
  em.report["certificate"]["witness"] = divisor_json(doc, cert.witness);
  em.finish("rank = " + std::to_string(cert.rank));
  return 0;
}

int cmd_reduce(const Options& opt, std::ostream& out) {
  ComplexDocument doc = load(opt.file);
  Emitter em(opt, out, "reduce");
  const Divisor& d = named_divisor(doc, opt);
  if (opt.base.empty()) throw InputError("reduce needs --base LOC");
  Point q = doc.location(opt.base);
  em.report["inputs"]["divisor"] = opt.divisors[0];
  em.report["inputs"]["base"] = opt.base;
  Divisor red = reduce_at(doc.complex, d, q);
  em.report["result"]["reduced"] = divisor_json(doc, red);
  em.report["result"]["effective"] = red.effective();
  em.finish("reduced: " + divisor_text(doc, red));
  return 0;
}

int cmd_equiv(const Options& opt, std::ostream& out) {
  ComplexDocument doc = load(opt.file);
  Emitter em(opt, out, "equiv");
  const Divisor& a = named_divisor(doc, opt, 0);
  const Divisor& b = named_divisor(doc, opt, 1);
  em.report["inputs"]["divisors"] = {opt.divisors[0], opt.divisors[1]};
  bool eq = is_equivalent(doc.complex, a, b);
  em.report["result"]["equivalent"] = eq;
  em.finish(eq ? "equivalent" : "not equivalent");
  return eq ? 0 : 1;
}

int cmd_rigid(const Options& opt, std::ostream& out) {
  ComplexDocument doc = load(opt.file);
  Emitter em(opt, out, "rigid");
  const Divisor& d = named_divisor(doc, opt);
  em.report["inputs"]["divisor"] = opt.divisors[0];
  bool rig = is_rigid(doc.complex, d);
  em.report["result"]["rigid"] = rig;
  em.finish(rig ? "rigid" : "not rigid");
  return rig ? 0 : 1;
}

int cmd_canonical(const Options& opt, std::ostream& out) {
  ComplexDocument doc = load(opt.file);
  Emitter em(opt, out, "canonical");
  Divisor k = canonical_divisor(doc.complex);
  em.report["result"]["canonical"] = divisor_json(doc, k);
  em.report["result"]["degree"] = k.degree();
  em.report["result"]["genus"] = doc.complex.genus();
  em.finish("K = " + divisor_text(doc, k) + "  (degree " + std::to_string(k.degree()) +
            ", genus " + std::to_string(doc.complex.genus()) + ")");
  return 0;
}

int cmd_hyperelliptic(const Options& opt, std::ostream& out) {
  ComplexDocument doc = load(opt.file);
  Emitter em(opt, out, "hyperelliptic");
  StructureReport rep = structure_check(doc.complex);
  em.report["result"]["hyperelliptic"] = rep.pass;
  em.report["result"]["graph_is_tree"] = rep.graph_is_tree;
  em.report["certificate"]["candidates"] = rep.candidates;
  em.report["certificate"]["detail"] = rep.detail;
  if (rep.pass && rep.g12_rep)
    em.report["certificate"]["g12"] = divisor_json(doc, *rep.g12_rep);
  em.finish(rep.pass ? "hyperelliptic" : "not hyperelliptic");
  return rep.pass ? 0 : 1;
}

int cmd_witness(const Options& opt, std::ostream& out) {
  ComplexDocument doc = load(opt.file);
  Emitter em(opt, out, "witness");
  const Divisor& delta = named_divisor(doc, opt);
  if (opt.r < 0) throw InputError("witness needs --r INT");
  em.report["inputs"]["divisor"] = opt.divisors[0];
  em.report["inputs"]["r"] = opt.r;
  em.report["inputs"]["seed"] = opt.seed;
  WitnessResult res = clifford_witness(doc.complex, delta, opt.r, opt.seed);
  em.report["result"]["witness"] = divisor_json(doc, res.witness_rep);
  em.report["result"]["rank"] = 1;
  em.report["certificate"]["p"] = divisor_json(doc, res.ctx.p_divisor);
  em.report["certificate"]["q"] = divisor_json(doc, res.ctx.q_divisor);
  em.report["certificate"]["p_points"] = points_json(doc, res.ctx.p_points);
  em.report["certificate"]["q_points"] = points_json(doc, res.ctx.q_points);
  em.report["certificate"]["rank_determining_set"] = points_json(doc, res.extended_rds);
  em.finish("degree-2 rank-1 witness: " + divisor_text(doc, res.witness_rep));
  return 0;
}

int cmd_decompose(const Options& opt, std::ostream& out) {
  ComplexDocument doc = load(opt.file);
  Emitter em(opt, out, "decompose");
  const Divisor& d = named_divisor(doc, opt);
  em.report["inputs"]["divisor"] = opt.divisors[0];
  Decomposition dec = decompose(doc.complex, d);
  em.report["result"]["r"] = dec.rank;
  em.report["result"]["residual"] = divisor_json(doc, dec.residual);
  em.report["certificate"]["fixed_point"] = location_str(doc, dec.fixed_point);
  em.report["certificate"]["reduced"] = divisor_json(doc, dec.reduced);
  em.finish("D ~ " + std::to_string(dec.rank) + "*g12 + " + divisor_text(doc, dec.residual));
  return 0;
}

int cmd_bn(const Options& opt, std::ostream& out) {
  ComplexDocument doc = load(opt.file);
  Emitter em(opt, out, "bn");
  if (opt.d < 0 || opt.r < 0) throw InputError("bn needs --d INT and --r INT");
  em.report["inputs"]["d"] = opt.d;
  em.report["inputs"]["r"] = opt.r;
  em.report["inputs"]["refine"] = opt.refine;
  BnResult res = bn_rank(doc.complex, opt.d, opt.r, opt.refine);
  em.report["result"]["rho"] = res.rho;
  em.report["result"]["exact"] = res.exact;
  em.report["result"]["floored"] = res.floored;
  em.report["certificate"]["refine_level"] = res.refine_level;
  json fails = json::array();
  for (const auto& f : res.failures) fails.push_back(divisor_json(doc, f));
  em.report["certificate"]["failures"] = fails;
  em.finish("rho = " + std::to_string(res.rho) + (res.exact ? " (exact)" : " (lattice estimate)"));
  return 0;
}

int cmd_check(const Options& opt, std::ostream& out) {
  ComplexDocument doc = load(opt.file);
  Emitter em(opt, out, "check " + opt.kind);
  em.report["inputs"]["kind"] = opt.kind;
  if (opt.kind == "rr") {
    const Divisor& d = named_divisor(doc, opt);
    em.report["inputs"]["divisor"] = opt.divisors[0];
    RiemannRochReport rep = verify_riemann_roch(doc.complex, d);
    em.report["result"]["holds"] = rep.holds;
    em.report["result"]["lhs"] = rep.lhs;
    em.report["result"]["rhs"] = rep.rhs;
    em.report["certificate"]["rank"] = rep.rank_d;
    em.report["certificate"]["rank_residual"] = rep.rank_residual;
    em.finish(rep.holds ? "riemann-roch holds" : "riemann-roch FAILED");
    return rep.holds ? 0 : 1;
  }
  if (opt.kind == "clifford") {
    const Divisor& d = named_divisor(doc, opt);
    em.report["inputs"]["divisor"] = opt.divisors[0];
    CliffordReport rep = verify_clifford(doc.complex, d);
    em.report["result"]["holds"] = rep.holds;
    em.report["result"]["special"] = rep.special;
    em.report["certificate"]["rank"] = rep.rank_d;
    em.report["certificate"]["degree"] = rep.degree;
    em.finish(rep.holds ? (rep.special ? "clifford holds (special divisor)"
                                       : "clifford holds vacuously (not special)")
                        : "clifford FAILED");
    return rep.holds ? 0 : 1;
  }
  if (opt.kind == "structure") {
    StructureReport rep = structure_check(doc.complex);
    em.report["result"]["pass"] = rep.pass;
    em.report["certificate"]["candidates"] = rep.candidates;
    em.finish(rep.pass ? "structure check passed" : "structure check failed");
    return rep.pass ? 0 : 1;
  }
  if (opt.kind == "martens") {
    if (opt.d < 0 || opt.r < 0) throw InputError("check martens needs --d INT and --r INT");
    em.report["inputs"]["d"] = opt.d;
    em.report["inputs"]["r"] = opt.r;
    MartensReport rep = martens_check(doc.complex, opt.d, opt.r, opt.refine);
    em.report["result"]["rho"] = rep.bn.rho;
    em.report["result"]["bound"] = rep.bound;
    em.report["result"]["bound_ok"] = rep.bound_ok;
    em.report["result"]["hyperelliptic"] = rep.hyperelliptic;
    em.report["result"]["equality"] = rep.equality;
    em.report["result"]["conjecture_instance"] = rep.conjecture_instance;
    bool ok = rep.bound_ok && rep.hyperelliptic_equality_ok;
    em.finish(ok ? "martens bound holds" : "martens bound FAILED");
    return ok ? 0 : 1;
  }
  throw InputError("unknown check kind '" + opt.kind + "' (rr, clifford, structure, martens)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"divisor theory on metrized complexes"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool with_file = true) {
    if (with_file) sub->add_option("file", opt.file, "input .tdc document")->required();
    sub->add_option("--divisor", opt.divisors, "named divisor from the document");
    sub->add_option("--base", opt.base, "base location (vertex, edge(off), vertex[coord])");
    sub->add_option("--r", opt.r, "rank parameter");
    sub->add_option("--d", opt.d, "degree parameter");
    sub->add_option("--refine", opt.refine, "lattice refinement level");
    sub->add_option("--seed", opt.seed, "seed for randomized searches");
    sub->add_flag("--json", opt.emit_json, "emit a JSON report");
  };

  std::map<std::string, int (*)(const Options&, std::ostream&)> handlers = {
      {"rank", cmd_rank},         {"reduce", cmd_reduce},
      {"equiv", cmd_equiv},       {"rigid", cmd_rigid},
      {"canonical", cmd_canonical},
      {"hyperelliptic", cmd_hyperelliptic},
      {"witness", cmd_witness},   {"decompose", cmd_decompose},
      {"bn", cmd_bn},
  };
  for (auto& [name, fn] : handlers) add_common(app.add_subcommand(name));
  CLI::App* check = app.add_subcommand("check");
  check->add_option("kind", opt.kind, "rr | clifford | structure | martens")->required();
  add_common(check);

  try {
    std::vector<std::string> argv_vec = args;
    std::vector<const char*> argv;
    argv.push_back("tdw");
    for (const auto& a : argv_vec) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    if (ex.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "usage error: " << ex.what() << "\n";
    return 2;
  }

  try {
    for (auto& [name, fn] : handlers)
      if (app.got_subcommand(name)) return fn(opt, out);
    if (app.got_subcommand("check")) return cmd_check(opt, out);
    err << "no command given\n";
    return 2;
  } catch (const InputError& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  } catch (const MathError& ex) {
    err << "failed: " << ex.what() << "\n";
    return 1;
  } catch (const std::exception& ex) {
    err << "internal error: " << ex.what() << "\n";
    return 1;
  }
}

}  // namespace tdw
