// nodalsg: command-line front end for Weierstrass semigroups of nodal curves.
// Exit codes: 0 success, 1 domain or usage error, 2 budget exhausted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "commands.hpp"

namespace {

std::vector<std::size_t> parse_keep(const std::string& s) {
  std::vector<std::size_t> keep;
  if (s == "none" || s.empty()) return keep;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t pos = 0;
      const long v = std::stol(item, &pos);
      if (pos != item.size() || v < 0) throw std::invalid_argument(item);
      keep.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw wsg::Error(wsg::ErrorKind::ParseError, "bad node index '" + item + "' in --keep");
    }
  }
  return keep;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace wsg;
  CLI::App app{"Weierstrass semigroups of nodal plane curves of type (p,q)"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  unsigned bits = 128;
  double tol_sing = 0.0;
  std::string format = "text";
  std::string output;
  app.add_option("--precision-bits", bits, "MPFR working precision")->check(CLI::Range(64u, 4096u));
  app.add_option("--seed", cfg.seed, "seed for every random choice");
  app.add_option("--tol-sing", tol_sing, "singular residual tolerance (0 = 2^-(bits-24))");
  app.add_option("--tol-node", cfg.tol.tol_node, "relative Hessian threshold for a node");
  app.add_option("--tol-rank", cfg.tol.tol_rank, "numeric rank threshold");
  app.add_option("--gb-timeout-secs", cfg.tol.groebner.timeout_secs, "Groebner basis time limit");
  app.add_option("--format", format, "report format")
      ->transform(CLI::IsMember({"text", "json"}, CLI::ignore_case));
  app.add_flag("--timings", cfg.timings, "include wall-clock timings in the report");
  app.add_option("--output", output, "write the report to a file instead of stdout");

  int p = 0, q = 0;
  auto add_type = [&](CLI::App* sub, bool required) {
    auto* op = sub->add_option("--p", p, "first generator");
    auto* oq = sub->add_option("--q", q, "second generator");
    if (required) {
      op->required();
      oq->required();
    }
    return std::pair{op, oq};
  };

  std::string semigroup, curve_path, curve2_path, curve_out, keep;
  int l = -1, samples = 25;
  bool with_delta = false, print_delta = false;

  auto* sg = app.add_subcommand("sg", "semigroup data for a type and/or a semigroup literal");
  auto [sg_p, sg_q] = add_type(sg, false);
  sg->add_option("--semigroup", semigroup, "e.g. N, <3,4,5>, gaps{1,2,5}, <3,5>+{7}");

  auto* generic = app.add_subcommand("generic", "generic relation matrix and Delta");
  add_type(generic, true);
  generic->add_flag("--delta", with_delta, "expand Delta and report its weighted degree");
  generic->add_flag("--print-delta", print_delta, "include the expanded Delta");

  auto* analyze = app.add_subcommand("analyze", "singular points and semigroup of a curve file");
  analyze->add_option("curve", curve_path, "curve JSON file")->required()->check(CLI::ExistingFile);

  auto* liss = app.add_subcommand("lissajous", "Lissajous curve with d nodes");
  add_type(liss, true);
  liss->add_option("--curve-out", curve_out, "write the curve as JSON");

  auto* simp = app.add_subcommand("simplify", "deform a nodal curve keeping a subset of nodes");
  simp->add_option("--curve", curve_path, "curve JSON file")->required()->check(CLI::ExistingFile);
  simp->add_option("--keep", keep, "comma-separated node indices, or none")->required();
  simp->add_option("--eps", cfg.simplify.eps, "target distance");
  simp->add_option("--delta", cfg.simplify.delta, "allowed drift of kept nodes");
  simp->add_option("--curve-out", curve_out, "write the deformed curve as JSON");

  auto* pipe = app.add_subcommand("pipeline", "Lissajous, node selection and simplification");
  add_type(pipe, true);
  auto* pl = pipe->add_option("--l", l, "number of nodes kept; targets the greatest-gaps closure");
  auto* ps = pipe->add_option("--semigroup", semigroup, "explicit target semigroup");
  pl->excludes(ps);
  pipe->add_option("--eps", cfg.simplify.eps, "target distance");
  pipe->add_option("--delta", cfg.simplify.delta, "allowed drift of kept nodes");
  pipe->add_option("--curve-out", curve_out, "write the resulting curve as JSON");

  auto* dec = app.add_subcommand("decide", "decide whether a semigroup is Weierstrass for the type");
  add_type(dec, true);
  dec->add_option("--semigroup", semigroup, "target semigroup")->required();
  dec->add_option("--max-l", cfg.membership.max_l, "largest number of nodes attempted");
  dec->add_option("--max-variables", cfg.membership.max_variables, "largest n + 2l attempted");
  dec->add_option("--max-minors", cfg.membership.max_minors, "minors tested before giving up");

  auto* line = app.add_subcommand("line-check", "Delta and semigroups along the line through two curves");
  line->add_option("--curve1", curve_path, "first curve JSON file")->required()->check(CLI::ExistingFile);
  line->add_option("--curve2", curve2_path, "second curve JSON file")->required()->check(CLI::ExistingFile);
  line->add_option("--samples", samples, "number of sample points")->check(CLI::Range(1, 10000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    cfg.tol.precision_bits = bits;
    cfg.tol.tol_sing = tol_sing;
    cfg.format = format == "json" ? ReportFormat::Json : ReportFormat::Text;
    cfg.sync();
    const cli::OptPath out = curve_out.empty() ? cli::OptPath{} : cli::OptPath{curve_out};

    Json report;
    if (*sg) {
      if ((sg_p->count() > 0) != (sg_q->count() > 0)) throw Error(ErrorKind::BadType, "give both --p and --q");
      if (sg_p->count() == 0 && semigroup.empty()) throw Error(ErrorKind::ParseError, "give a type or --semigroup");
      std::optional<TypePQ> t;
      if (sg_p->count()) t.emplace(p, q);
      report = cli::run_sg(cfg, t, semigroup.empty() ? std::nullopt : std::optional{semigroup});
    } else if (*generic) {
      report = cli::run_generic(cfg, TypePQ(p, q), with_delta, print_delta);
    } else if (*analyze) {
      report = cli::run_analyze(cfg, read_curve_file(curve_path));
    } else if (*liss) {
      report = cli::run_lissajous(cfg, TypePQ(p, q), out);
    } else if (*simp) {
      report = cli::run_simplify(cfg, read_curve_file(curve_path), parse_keep(keep), out);
    } else if (*pipe) {
      if (pl->count() == 0 && ps->count() == 0) throw Error(ErrorKind::ParseError, "give --l or --semigroup");
      report = cli::run_pipeline(cfg, TypePQ(p, q), pl->count() ? std::optional{l} : std::nullopt,
                                 ps->count() ? std::optional{semigroup} : std::nullopt, out);
    } else if (*dec) {
      report = cli::run_decide(cfg, TypePQ(p, q), semigroup);
    } else if (*line) {
      report = cli::run_line_check(cfg, read_curve_file(curve_path), read_curve_file(curve2_path), samples);
    }

    const std::string text = render(report, cfg.format);
    if (output.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(output, std::ios::binary);
      if (!f) throw Error(ErrorKind::ParseError, "cannot write " + output);
      f << text;
    }
    return cli::exit_code_for(report);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ResourceBudgetExceeded ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
