// slcrigid: symmetric slider-pinning rigidity from the command line.
//
// Exit status: 0 ok, 1 negative verdict, 2 input error. Diagnostics go to
// stderr; stdout only ever carries the requested document.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slcrigid/slcrigid.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

struct CliError {
  std::string code;
  std::string message;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{"io", "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{"io", "cannot write '" + path + "'"};
  out << text;
}

std::string dump(const slc::json& j) { return j.dump(2) + "\n"; }

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SLCRIGID_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CliError{"schema", "SLCRIGID_SEED must be a non-negative integer"};
    }
  }
  return kDefaultSeed;
}

slc::BaseSpec parse_base(const std::string& name, const slc::GroupSpec& G) {
  const int n = G.order;
  if (G.kind != slc::GroupKind::cyclic) throw CliError{"precondition", "base graphs exist for cyclic groups only"};
  slc::BaseSpec b;
  if (name == "lc")
    b = {slc::BaseKind::looped_cycle, n, 1};
  else if (name == "pn" || name == "p")
    b = {slc::BaseKind::pinned_orbit, n, 1};
  else if (name == "p1phi0")
    b = {slc::BaseKind::pinned_fixed, n, 1};
  else if (name == "p1phi1")
    b = {slc::BaseKind::pinned_swapped, n, 1};
  else
    throw CliError{"schema", "unknown base '" + name + "' (lc, pn, p1phi0, p1phi1)"};
  return b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric slider-pinning rigidity toolkit"};
  app.require_subcommand(1);

  std::string file, out_path, trace_path;
  int trials = slc::kDefaultTrials;
  double tol = slc::kDefaultTolerance;
  bool exact = false, sample = false, with_trace = false, auto_place = false, inject = false;
  std::uint64_t seed = 0;
  std::vector<std::string> moves;
  std::string group_name, base_name, groups_csv = "c1,c2,c3,c5", dump_dir;
  int steps = 0, size = 400, samples = 20, max_steps = 6, jobs = 1;

  auto* check = app.add_subcommand("check", "gamma-tightness report");
  check->add_option("file", file, "GraphDocument, - for stdin")->required();

  auto* rank = app.add_subcommand("rank", "rigidity matrix rank");
  rank->add_option("file", file, "GraphDocument, - for stdin")->required();
  rank->add_option("--trials", trials, "random placements")->check(CLI::PositiveNumber);
  rank->add_option("--tol", tol, "relative singular value tolerance")->check(CLI::PositiveNumber);
  rank->add_flag("--exact", exact, "exact rational elimination");
  rank->add_flag("--sample", sample, "ignore the document placement");
  auto* rank_seed = rank->add_option("--seed", seed, "placement seed");

  auto* verdict = app.add_subcommand("verdict", "combined verdict");
  verdict->add_option("file", file, "GraphDocument, - for stdin")->required();
  verdict->add_option("--trials", trials, "random placements")->check(CLI::PositiveNumber);
  verdict->add_option("--tol", tol, "relative singular value tolerance")->check(CLI::PositiveNumber);
  verdict->add_flag("--trace", with_trace, "attach a construction trace");
  auto* verdict_seed = verdict->add_option("--seed", seed, "placement seed");

  auto* reduce = app.add_subcommand("reduce", "reduce to base graphs");
  reduce->add_option("file", file, "GraphDocument, - for stdin")->required();
  reduce->add_option("--trace", trace_path, "write the construction trace here");
  reduce->add_option("-o,--output", out_path, "base graph document");

  auto* extend = app.add_subcommand("extend", "apply extension moves");
  extend->add_option("file", file, "GraphDocument, - for stdin")->required();
  extend->add_option("--move", moves, "zero2:v1,v2 | zeroloop:v1 | split:x0,y0,z0 | loopsplit:loop,y0")
      ->required();
  extend->add_option("-o,--output", out_path, "resulting document");

  auto* generate = app.add_subcommand("generate", "random gamma-tight graph");
  generate->add_option("--group", group_name, "c1, c2, c3, ...")->required();
  generate->add_option("--base", base_name, "lc, pn, p1phi0, p1phi1")->required();
  generate->add_option("--steps", steps, "number of moves")->check(CLI::NonNegativeNumber);
  auto* generate_seed = generate->add_option("--seed", seed, "generator seed");
  generate->add_option("--trace", trace_path, "write the construction trace here");
  generate->add_option("-o,--output", out_path, "resulting document");

  auto* svg = app.add_subcommand("svg", "draw a framework");
  svg->add_option("file", file, "GraphDocument, - for stdin")->required();
  svg->add_option("-o,--output", out_path, "SVG file");
  svg->add_option("--size", size, "canvas size in px")->check(CLI::Range(16, 10000));
  svg->add_flag("--auto", auto_place, "sample a symmetric placement");
  auto* svg_seed = svg->add_option("--seed", seed, "placement seed");

  auto* selftest = app.add_subcommand("selftest", "cross-validation harness");
  selftest->add_option("--groups", groups_csv, "comma separated, e.g. c1,c2,c3,c5");
  selftest->add_option("--samples", samples, "graphs per group")->check(CLI::NonNegativeNumber);
  selftest->add_option("--max-steps", max_steps, "moves per graph")->check(CLI::NonNegativeNumber);
  auto* selftest_seed = selftest->add_option("--seed", seed, "corpus seed");
  selftest->add_option("--dump-dir", dump_dir, "write failing graphs below this directory");
  selftest->add_flag("--inject-broken", inject, "add a known non-isostatic graph");
  selftest->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto seed_or_default = [&](CLI::Option* opt) { return opt->count() ? seed : default_seed(); };
    auto load = [&] { return slc::parse_document(read_file(file)); };

    if (*check) {
      const slc::Document doc = load();
      const slc::GammaTightReport r = slc::is_gamma_tight(doc.graph, true);
      std::cout << dump(slc::to_json(r));
      return r.gamma_tight ? 0 : 1;
    }
    if (*rank) {
      const slc::Document doc = load();
      const slc::Backend backend = exact ? slc::Backend::exact : slc::Backend::float64;
      slc::RankReport r;
      if (doc.framework && !sample) {
        if (exact) slc::require_exact_backend(doc.graph.group());
        r = slc::rank(slc::build_rigidity_matrix(*doc.framework), backend, tol);
      } else {
        r = slc::classify(doc.graph, trials, seed_or_default(rank_seed), tol, backend);
      }
      std::cout << dump(slc::to_json(r));
      return r.isostatic() ? 0 : 1;
    }
    if (*verdict) {
      const slc::Document doc = load();
      const slc::RankReport r = slc::classify(doc.graph, trials, seed_or_default(verdict_seed), tol);
      const slc::VerdictDocument v = slc::make_verdict(doc.graph, r, with_trace);
      std::cout << dump(slc::to_json(v));
      return v.positive() ? 0 : 1;
    }
    if (*reduce) {
      const slc::Document doc = load();
      const slc::ConstructionTrace t = slc::decompose(doc.graph);
      slc::SymmetricGraph bases(t.group, 0, {}, {});
      for (const auto& b : t.bases) bases = slc::disjoint_union(bases, slc::make_base(b));
      if (!trace_path.empty()) write_output(trace_path, dump(slc::to_json(t)));
      write_output(out_path, slc::serialize_document(bases));
      return 0;
    }
    if (*extend) {
      slc::SymmetricGraph g = load().graph;
      for (const auto& spec : moves) g = slc::apply_extension(g, slc::parse_move_spec(spec));
      write_output(out_path, slc::serialize_document(g));
      return 0;
    }
    if (*generate) {
      const slc::GroupSpec G = slc::parse_group_name(group_name);
      const slc::Generated gen = slc::generate_random(parse_base(base_name, G), steps, seed_or_default(generate_seed));
      if (!trace_path.empty()) write_output(trace_path, dump(slc::to_json(gen.trace)));
      write_output(out_path, slc::serialize_document(gen.graph));
      return 0;
    }
    if (*svg) {
      const slc::Document doc = load();
      if (!doc.framework && !auto_place)
        throw CliError{"precondition", "document has no placement; pass --auto to sample one"};
      const slc::Framework fw = doc.framework && !auto_place
                                    ? *doc.framework
                                    : slc::sample_symmetric_placement(doc.graph, seed_or_default(svg_seed));
      write_output(out_path, slc::render_svg(fw, size));
      return 0;
    }
    if (*selftest) {
      slc::SelftestOptions opt;
      opt.groups.clear();
      std::stringstream ss(groups_csv);
      for (std::string name; std::getline(ss, name, ',');)
        if (!name.empty()) opt.groups.push_back(slc::parse_group_name(name));
      opt.samples = samples;
      opt.max_steps = max_steps;
      opt.seed = seed_or_default(selftest_seed);
      if (!dump_dir.empty()) opt.dump_dir = dump_dir;
      opt.inject_broken = inject;
      opt.jobs = jobs;
      return slc::run_selftest(opt, std::cout, std::cerr).ok() ? 0 : 1;
    }
  } catch (const CliError& e) {
    std::cerr << "error[" << e.code << "]: " << e.message << "\n";
    return 2;
  } catch (const slc::InputError& e) {
    std::cerr << "error[" << slc::to_string(e.code()) << "]: " << e.what() << "\n";
    return 2;
  } catch (const slc::DecomposeFailure& e) {
    std::cerr << "error[decompose]: " << e.what() << "\n" << slc::serialize_document(e.stuck());
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
