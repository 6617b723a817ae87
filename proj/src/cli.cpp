#include "shareq/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "shareq/bench.hpp"
#include "shareq/graph_json.hpp"
#include "shareq/oracle.hpp"
#include "shareq/surface.hpp"
#include "shareq/term.hpp"

namespace shareq {

namespace {

constexpr int kExitEqual = 0;
constexpr int kExitNotEqual = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitLimit = 3;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_json_path(const std::string& path) { return path.size() >= 5 && path.ends_with(".json"); }

LamGraph load_graph(const std::string& path, bool validate) {
  const std::string text = read_file(path);
  if (is_json_path(path)) return parse_graph_json(text, validate);
  GraphBuilder b;
  const NodeId root = compile_into(b, parse_surface(text));
  b.label_root("main", root);
  return std::move(b).build(validate);
}

std::string_view backend_name(Backend b) { return b == Backend::Queue ? "queue" : "recursive"; }

struct CheckOptions {
  std::vector<std::string> inputs;
  Backend backend = Backend::Queue;
  bool stats = false;
  bool skip_validation = false;
};

int report_verdict(const LamGraph& g, const Query& q, const SharingResult& r, const CheckOptions& opt,
                   std::ostream& out) {
  if (r.ok()) {
    out << "EQUAL: " << r.partition.class_count() << " classes, " << r.stats.transitions << " transitions\n";
  } else {
    out << "NOT EQUAL: " << reason_name(r.failure->reason) << " at node " << r.failure->node.value << "\n";
  }
  if (opt.stats) {
    nlohmann::json s{{"nodes", g.size()},
                     {"edges", g.edge_count()},
                     {"query", q.size()},
                     {"transitions", r.stats.transitions},
                     {"max_query_edges", r.stats.max_query_edges},
                     {"backend", backend_name(opt.backend)},
                     {"verdict", r.ok() ? "EQUAL" : "NOT EQUAL"}};
    if (r.ok()) {
      s["classes"] = r.partition.class_count();
    } else {
      s["reason"] = reason_name(r.failure->reason);
      s["node"] = r.failure->node.value;
    }
    out << s.dump() << "\n";
  }
  return r.ok() ? kExitEqual : kExitNotEqual;
}

int cmd_check(const CheckOptions& opt, std::ostream& out) {
  const bool validate = !opt.skip_validation;
  if (is_json_path(opt.inputs[0])) {
    const LamGraph g = parse_graph_json(read_file(opt.inputs[0]), validate);
    const Query q = parse_query_json(read_file(opt.inputs[1]), g);
    return report_verdict(g, q, sharing_check(g, q, opt.backend), opt, out);
  }
  // Two surface files share one arena and one atom table, so free names
  // unify across files.
  const SurfaceAst a = parse_surface(read_file(opt.inputs[0]));
  const SurfaceAst b = parse_surface(read_file(opt.inputs[1]));
  GraphBuilder builder;
  const NodeId ra = compile_into(builder, a);
  const NodeId rb = compile_into(builder, b);
  const LamGraph g = std::move(builder).build(validate);
  if (!g.is_root(ra) || !g.is_root(rb)) {
    // A term that is a bare free variable also occurring in the other term
    // has no root of its own. Its readback is that variable.
    SharingResult r;
    if (ra == rb) {
      r.partition = NodePartition(g.size());
      r.stats.transitions = 1;
    } else {
      const NodeId fv = g.is_root(ra) ? rb : ra;
      const NodeId other = fv == ra ? rb : ra;
      r.blind_failed = g.node(other).label() != Label::FreeVar;
      r.failure = Failure{r.blind_failed ? FailureReason::NotHomogeneous : FailureReason::FreeVarsDistinct, fv, other};
    }
    return report_verdict(g, Query{{ra, rb}}, r, opt, out);
  }
  const Query q{{ra, rb}};
  return report_verdict(g, q, sharing_check(g, q, opt.backend), opt, out);
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* s = std::getenv("SHAREQ_SEED"); s && *s) {
    char* end = nullptr;
    const auto v = std::strtoull(s, &end, 10);
    if (*end == '\0') return v;
    throw InputError("SHAREQ_SEED must be an unsigned integer");
  }
  return fallback;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sharing equality of λ-terms represented as DAGs"};
  app.name("shareq");
  app.require_subcommand(1);

  CheckOptions check_opt;
  const std::map<std::string, Backend> backends{{"queue", Backend::Queue}, {"recursive", Backend::Recursive}};
  auto* check = app.add_subcommand("check", "Decide sharing equality (a.lam b.lam, or graph.json query.json)");
  check->add_option("inputs", check_opt.inputs, "Two surface files, or a graph and a query")->required()->expected(2);
  check->add_option("--backend", check_opt.backend, "queue or recursive")
      ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case));
  check->add_flag("--stats", check_opt.stats, "Also print sizes and transition count as JSON");
  check->add_flag("--skip-validation", check_opt.skip_validation, "Trust the input to be acyclic and dominated");

  std::string validate_input;
  auto* validate = app.add_subcommand("validate", "Validate a graph (.json) or surface term");
  validate->add_option("input", validate_input)->required();

  std::string unfold_input;
  std::size_t unfold_limit = 100000;
  bool unfold_named = false;
  std::string unfold_root;
  auto* unfold = app.add_subcommand("unfold", "Print the readback of every root");
  unfold->add_option("input", unfold_input)->required();
  unfold->add_option("--limit", unfold_limit, "Maximum constructors per term")->capture_default_str();
  unfold->add_flag("--named", unfold_named, "Print with named binders instead of indices");
  unfold->add_option("--root", unfold_root, "Only this root (id or label)");

  std::vector<std::string> quotient_inputs;
  std::string quotient_output;
  Backend quotient_backend = Backend::Queue;
  auto* quot = app.add_subcommand("quotient", "Write the quotient graph of graph.json by query.json");
  quot->add_option("inputs", quotient_inputs)->required()->expected(2);
  quot->add_option("-o,--output", quotient_output, "Output file (default stdout)");
  quot->add_option("--backend", quotient_backend)->transform(CLI::CheckedTransformer(backends, CLI::ignore_case));

  std::string bench_family = "shared-power";
  std::string bench_sizes = "2^10..2^20";
  Backend bench_backend = Backend::Queue;
  bool bench_as_json = false;
  double bench_min_time = 0.05;
  std::uint64_t bench_seed = 1;
  auto* bench = app.add_subcommand("bench", "Measure transitions and time against input size");
  bench->add_option("--family", bench_family, "shared-power or random-sharing")
      ->check(CLI::IsMember({"shared-power", "random-sharing"}))
      ->capture_default_str();
  bench->add_option("--sizes", bench_sizes, "e.g. 2^10..2^20 or 8,16,32")->capture_default_str();
  bench->add_option("--backend", bench_backend)->transform(CLI::CheckedTransformer(backends, CLI::ignore_case));
  bench->add_flag("--json", bench_as_json, "Print the report as JSON");
  bench->add_option("--min-time", bench_min_time, "Seconds to repeat each size for")->capture_default_str();
  bench->add_option("--seed", bench_seed, "Seed for random families (SHAREQ_SEED overrides)")->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*check) return cmd_check(check_opt, out);

    if (*validate) {
      try {
        const LamGraph g = load_graph(validate_input, true);
        out << "OK: " << g.size() << " nodes, " << g.roots().size() << " roots\n";
        return kExitEqual;
      } catch (const GraphError& e) {
        out << e.what() << "\n";
        return kExitInvalid;
      }
    }

    if (*unfold) {
      const LamGraph g = load_graph(unfold_input, true);
      std::vector<NodeId> roots(g.roots().begin(), g.roots().end());
      if (!unfold_root.empty()) {
        if (auto r = g.find_root_label(unfold_root)) {
          roots = {*r};
        } else if (unfold_root.size() < 10 && unfold_root.find_first_not_of("0123456789") == std::string::npos) {
          const NodeId r{static_cast<std::uint32_t>(std::stoul(unfold_root))};
          check_query(g, {{r, r}});
          roots = {r};
        } else {
          throw InputError("unknown root '" + unfold_root + "'");
        }
      }
      try {
        for (NodeId r : roots) {
          const Term t = readback(g, r, unfold_limit);
          if (roots.size() > 1) out << r.value << ": ";
          out << (unfold_named ? t.to_named_string(g.atoms()) : t.to_string(g.atoms())) << "\n";
        }
      } catch (const LimitExceeded& e) {
        out << e.what() << "\n";
        return kExitLimit;
      }
      return kExitEqual;
    }

    if (*quot) {
      const LamGraph g = parse_graph_json(read_file(quotient_inputs[0]), true);
      const Query q = parse_query_json(read_file(quotient_inputs[1]), g);
      const SharingResult r = sharing_check(g, q, quotient_backend);
      if (!r.ok()) {
        out << "NOT EQUAL: " << reason_name(r.failure->reason) << " at node " << r.failure->node.value << "\n";
        return kExitNotEqual;
      }
      const std::string text = graph_to_json(quotient(g, r.partition).graph);
      if (quotient_output.empty()) {
        out << text;
      } else {
        std::ofstream f(quotient_output, std::ios::binary);
        if (!(f << text)) throw InputError("cannot write " + quotient_output);
      }
      return kExitEqual;
    }

    if (*bench) {
      const auto sizes = parse_sizes(bench_sizes);
      const BenchFamily family =
          bench_family == "shared-power" ? BenchFamily::SharedPower : BenchFamily::RandomSharing;
      const BenchReport report = run_bench(family, sizes, bench_backend, seed_from_env(bench_seed), bench_min_time);
      out << (bench_as_json ? bench_json(report) : bench_text(report));
      return kExitEqual;
    }
  } catch (const ParseError& e) {
    err << "ParseError: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    // GraphError, FormatError, QueryError, ScopeError, InputError, bad sizes.
    err << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace shareq
