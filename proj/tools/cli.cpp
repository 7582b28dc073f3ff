#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "soergel/hecke.hpp"
#include "soergel/homsolve.hpp"
#include "soergel/relations.hpp"

namespace soergel {

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Config {
  int n = 5;
  bool quotient = false;
  std::uint64_t seed = 20240601;
  std::string degrees = "-3..6";
  std::string out;
};

// Reports go to stdout; artifacts go to --out when given.
void emit_artifact(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw std::runtime_error("cannot write " + cfg.out);
  f << text;
  out << "wrote " << cfg.out << "\n";
}

std::pair<int, int> parse_range(const std::string& text) {
  static const std::regex re(R"(\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw std::invalid_argument("degrees must look like a..b, got '" + text + "'");
  int lo = std::stoi(m[1]), hi = std::stoi(m[2]);
  if (hi < lo) throw std::invalid_argument("empty degree range " + text);
  return {lo, hi};
}

void append(SuiteReport& into, const SuiteReport& from) { into.lines.insert(into.lines.end(), from.lines.begin(), from.lines.end()); }

// Random diagrams must evaluate to homogeneous bimodule maps of their degree.
SuiteReport functor_checks(int n, std::uint64_t seed, bool quotient) {
  SuiteReport rep;
  std::mt19937_64 rng(seed);
  Ring ring{n, quotient};
  for (int k = 0; k < 20; ++k) {
    Diagram d = random_diagram(n, rng);
    MorphismMatrix m = evaluate(d, ring);
    bool ok = m.is_homogeneous() && m.degree() == d.degree() && check_bimodule(m, ring);
    rep.lines.push_back({ok, "functor.randomDiagram", "seed=" + std::to_string(seed) + " k=" + std::to_string(k),
                         ok ? "" : "  diagram " + d.str() + "\n"});
  }
  return rep;
}

int cmd_check_relations(const Config& cfg, bool json, std::ostream& out, std::ostream& err) {
  if (cfg.n < 5) err << "warning: n = " << cfg.n << " < 5, some families have no admissible colors\n";
  SuiteReport rep = verify_suite(cfg.n, cfg.quotient, Exec::Parallel);
  for (int i = 2; i + 1 <= cfg.n; ++i) append(rep, verify_triple_overlap_generators(cfg.n, i));
  append(rep, verify_identities(idempotent_identities(Ring{cfg.n, cfg.quotient})));
  append(rep, functor_checks(cfg.n, cfg.seed, cfg.quotient));
  for (const auto& l : rep.lines) {
    out << l.str() << "\n";
    if (!l.pass) out << l.detail;
  }
  for (const auto& s : rep.skipped) out << "SKIP " << s.name << ": " << s.reason << "\n";
  out << rep.summary() << "\n";
  if (json) emit_artifact(cfg, rep.to_json() + "\n", out);
  return rep.ok() ? 0 : kExitFailure;
}

int cmd_eval(const Config& cfg, const std::string& text, std::ostream& out) {
  Diagram d = Diagram::parse(text);
  for (const auto& slice : d.slices())
    for (const auto& tok : slice) tok.validate(cfg.n);
  MorphismMatrix m = evaluate(d, Ring{cfg.n, cfg.quotient});
  std::ostringstream os;
  os << "source: " << m.source().str() << "\n"
     << "target: " << m.target().str() << "\n"
     << "degree: " << d.degree() << "\n"
     << m.dump();
  emit_artifact(cfg, os.str(), out);
  return 0;
}

int cmd_pairing(const Config& cfg, const std::string& a, const std::string& b, std::ostream& out) {
  auto check = [&](const std::vector<int>& s) {
    for (int c : s)
      if (c > cfg.n) throw std::invalid_argument("color " + std::to_string(c) + " exceeds n = " + std::to_string(cfg.n));
  };
  auto x = parse_seq(a), y = parse_seq(b);
  check(x);
  check(y);
  out << pairing(b_monomial(x, cfg.n), b_monomial(y, cfg.n)).str() << "\n";
  return 0;
}

int cmd_homdim(const Config& cfg, const std::string& a, const std::string& b, std::ostream& out) {
  if (cfg.quotient) throw std::invalid_argument("homdim works over the polynomial ring; drop --quotient");
  auto [lo, hi] = parse_range(cfg.degrees);
  auto lines = compare(parse_seq(a), parse_seq(b), lo, hi, cfg.n, Exec::Parallel);
  bool ok = true;
  for (const auto& l : lines) {
    out << l.str() << "\n";
    ok = ok && l.ok();
  }
  return ok ? 0 : kExitFailure;
}

OneColorGraph graph_argument(const std::string& text) {
  static const std::regex polygon(R"(polygon:(\d+))");
  std::smatch m;
  if (text == "circle") return circle_graph();
  if (std::regex_match(text, m, polygon)) return polygon_graph(std::stoi(m[1]));
  return OneColorGraph::parse(text);
}

int cmd_reduce(const Config& cfg, const std::string& text, bool tree, std::ostream& out) {
  OneColorGraph g = graph_argument(text);
  g.validate();
  std::vector<ReductionStep> trace;
  OneColorGraph r = tree ? reduce_to_simple_tree(g, &trace) : reduce_to_simple_forest(g, &trace);
  std::ostringstream os;
  for (const auto& step : trace) os << "move: " << move_name(step.site.move) << "\n";
  os << "result: " << r.str() << "\n";
  emit_artifact(cfg, os.str(), out);
  return 0;
}

int cmd_render(const Config& cfg, const std::string& text, std::ostream& out) {
  emit_artifact(cfg, render_svg(Diagram::parse(text)), out);
  return 0;
}

int cmd_hecke_mul(const Config& cfg, const std::vector<std::string>& factors, std::ostream& out) {
  HeckeElt prod = HeckeElt::one(cfg.n);
  for (const auto& f : factors) prod = prod * HeckeElt::parse(f, cfg.n);
  out << prod.str() << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with Soergel bimodules and their diagrammatic category", "soergel"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--n", cfg.n, "rank: colors 1..n, variables x1..x(n+1)")->check(CLI::Range(1, 11));
  app.add_flag("--quotient", cfg.quotient, "work modulo x1 + ... + x(n+1)");
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  app.add_option("--degrees", cfg.degrees, "degree range a..b for homdim")->allow_extra_args(false);
  app.add_option("--out", cfg.out, "write the artifact to this file");

  bool json = false, tree = false;
  std::string text, a, b;
  std::vector<std::string> factors;

  auto* check = app.add_subcommand("check-relations", "verify every relation instance and identity");
  check->add_flag("--json", json, "also emit the JSON report (to --out if given)");

  auto* eval = app.add_subcommand("eval", "evaluate a diagram and dump its matrix");
  eval->add_option("diagram", text, "diagram text, e.g. \"dot_s:1 ; dot_e:1\"")->required();

  auto* pair = app.add_subcommand("pairing", "pairing of two b-monomials, e.g. 1,2,3 (the second defaults to the empty one)");
  pair->add_option("first", a, "color sequence, '-' for empty")->required();
  pair->add_option("second", b, "color sequence, '-' for empty");

  auto* homdim = app.add_subcommand("homdim", "hom dimensions against the pairing prediction");
  homdim->add_option("source", a, "color sequence, '' or '-' for empty")->required();
  homdim->add_option("target", b, "color sequence")->required();

  auto* reduce = app.add_subcommand("reduce", "reduce a one-color graph to a simple forest");
  reduce->add_option("graph", text, "graph text, 'circle' or 'polygon:k'")->required();
  reduce->add_flag("--tree", tree, "continue to a simple tree with connecting moves");

  auto* render = app.add_subcommand("render", "render a diagram as SVG");
  render->add_option("diagram", text, "diagram text")->required();

  auto* hecke = app.add_subcommand("hecke-mul", "multiply Hecke algebra elements, e.g. b(1) T[2,1,3]");
  hecke->add_option("factors", factors, "factors in the b(...)/T[...] notation")->required();

  // CLI11 takes the arguments in reverse order. A value such as "-3..6"
  // would be read as a flag, so it is glued to --degrees first.
  std::vector<std::string> argv;
  for (size_t k = 1; k < args.size(); ++k) {
    if (args[k] == "--degrees" && k + 1 < args.size()) {
      argv.push_back("--degrees=" + args[++k]);
    } else {
      argv.push_back(args[k]);
    }
  }
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*check) return cmd_check_relations(cfg, json, out, err);
    if (*eval) return cmd_eval(cfg, text, out);
    if (*pair) return cmd_pairing(cfg, a, b, out);
    if (*homdim) return cmd_homdim(cfg, a, b, out);
    if (*reduce) return cmd_reduce(cfg, text, tree, out);
    if (*render) return cmd_render(cfg, text, out);
    if (*hecke) return cmd_hecke_mul(cfg, factors, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace soergel
