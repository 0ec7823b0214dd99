#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "slcrigid/catalog.hpp"
#include "slcrigid/henneberg.hpp"
#include "slcrigid/io.hpp"
#include "slcrigid/realize.hpp"
#include "slcrigid/sparsity.hpp"
#include "slcrigid/symcheck.hpp"

namespace slc {

struct SelftestOptions {
  std::vector<GroupSpec> groups{GroupSpec::cyclic(1), GroupSpec::cyclic(2), GroupSpec::cyclic(3),
                                GroupSpec::cyclic(5)};
  int samples = 20;
  int max_steps = 6;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> dump_dir;
  bool inject_broken = false;
  int jobs = 1;
};

struct SampleResult {
  std::string label;
  std::vector<std::string> failures;
  std::optional<SymmetricGraph> graph;
};

struct SelftestSummary {
  int passed = 0;
  int failed = 0;
  int skipped_groups = 0;
  bool ok() const { return failed == 0; }
};

namespace detail {

inline constexpr int kAuditLimit = 18;

/// Cross-validates one generated graph: combinatorial checks against each
/// other, then against the rigidity matrix.
inline SampleResult run_sample(const GroupSpec& G, const BaseSpec& base, int steps,
                               std::uint64_t seed) {
  SampleResult r;
  const Generated gen = generate_random(base, steps, seed);
  const SymmetricGraph& g = gen.graph;
  r.label = base_name(base) + " steps=" + std::to_string(steps) + " V=" + std::to_string(g.num_vertices());
  const bool proved = characterisation_proved(G);

  const GammaTightReport tight = is_gamma_tight(g, true);
  if (!tight.gamma_tight) r.failures.push_back("generated graph is not gamma-tight");
  if (tight.characters && !tight.characters->equal) r.failures.push_back("character mismatch");
  if (g.num_vertices() <= kAuditLimit &&
      subset_audit(g.underlying()).verdict != tight.sparsity.verdict)
    r.failures.push_back("pebble game disagrees with subset audit");

  const RankReport rank = classify(g, kDefaultTrials, seed);
  if (proved && !rank.isostatic())
    r.failures.push_back("not numerically isostatic (rank " + std::to_string(rank.rank) + "/" +
                         std::to_string(rank.rows) + ")");
  if (proved) {
    try {
      const ConstructionTrace t = decompose(g);
      if (static_cast<int>(t.moves.size()) != steps)
        r.failures.push_back("trace has " + std::to_string(t.moves.size()) + " moves, generated with " +
                             std::to_string(steps));
      if (!isomorphic_under(replay(t), g, t.vertex_labels)) r.failures.push_back("replay mismatch");
    } catch (const DecomposeFailure&) {
      r.failures.push_back("decompose found no reduction");
    }
  }

  // Necessity: one more loop orbit makes the rows dependent.
  if (g.num_vertices() > 0) {
    GraphDraft d = GraphDraft::from(g);
    const ActionTables T = action_tables(g);
    const Orbits o = orbits(g);
    int v = -1;
    for (const auto& orbit : o.vertex)
      if (static_cast<int>(orbit.size()) == G.size()) {
        v = orbit.front();
        break;
      }
    if (v >= 0) {
      std::vector<int> at;
      for (int i = 0; i < G.size(); ++i) at.push_back(T.vertex[i][v]);
      d.add_free_loop_orbit(at);
      const SymmetricGraph over = std::move(d).build();
      if (is_gamma_tight(over, false).gamma_tight) r.failures.push_back("overbraced graph passes checks");
      if (classify(over, kDefaultTrials, seed).independent())
        r.failures.push_back("overbraced graph has independent rows");
    }
  }
  if (!r.failures.empty()) r.graph = g;
  return r;
}

}  // namespace detail

inline SelftestSummary run_selftest(const SelftestOptions& opt, std::ostream& out, std::ostream& err) {
  SelftestSummary summary;
  for (const GroupSpec& G : opt.groups) {
    const std::string gname = [&] {
      std::string s = G.name();
      for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      return s;
    }();
    const std::vector<BaseSpec> bases = bases_for(G);
    if (bases.empty()) {
      err << "warning: " << gname << ": no base graphs for this group; skipped\n";
      ++summary.skipped_groups;
      continue;
    }
    if (!characterisation_proved(G))
      err << "warning: " << gname
          << ": sufficiency unproven; isostaticity and decomposition tests skipped\n";

    std::vector<SampleResult> results(opt.samples);
    std::vector<int> steps(opt.samples);
    std::vector<std::uint64_t> seeds(opt.samples);
    for (int i = 0; i < opt.samples; ++i) {
      seeds[i] = detail::mix_seed(opt.seed, static_cast<std::uint64_t>(i));
      std::mt19937_64 rng(seeds[i]);
      steps[i] = std::uniform_int_distribution<int>(0, std::max(0, opt.max_steps))(rng);
    }
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int i = next++; i < opt.samples; i = next++) {
        try {
          results[i] = detail::run_sample(G, bases[i % bases.size()], steps[i], seeds[i]);
        } catch (const std::exception& e) {
          results[i].label = base_name(bases[i % bases.size()]);
          results[i].failures.push_back(std::string("exception: ") + e.what());
        }
      }
    };
    const int jobs = std::clamp(opt.jobs, 1, 64);
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int group_failed = 0;
    for (int i = 0; i < opt.samples; ++i) {
      const SampleResult& r = results[i];
      out << gname << " #" << i << " " << r.label << " ";
      if (r.failures.empty()) {
        out << "ok\n";
        ++summary.passed;
        continue;
      }
      ++summary.failed;
      ++group_failed;
      out << "FAIL";
      for (const auto& f : r.failures) out << "; " << f;
      out << "\n";
      if (opt.dump_dir && r.graph) {
        const auto dir = *opt.dump_dir / gname;
        std::filesystem::create_directories(dir);
        const auto file = dir / (std::to_string(opt.seed) + "-" + std::to_string(i) + ".json");
        std::ofstream(file) << serialize_document(*r.graph);
        out << "  dumped " << file.string() << "\n";
      }
    }
    if (opt.inject_broken && G.kind == GroupKind::cyclic && G.order == 2) {
      const SymmetricGraph broken = half_turn_fixed_edge();
      const bool rejected = !is_gamma_tight(broken, false).gamma_tight &&
                            !classify(broken, kDefaultTrials, opt.seed).isostatic();
      out << gname << " injected fixed-edge graph " << (rejected ? "expected-negative ok" : "FAIL") << "\n";
      ++(rejected ? summary.passed : summary.failed);
    }
    out << gname << ": " << opt.samples - group_failed << "/" << opt.samples << " samples passed\n";
  }
  out << "summary: " << summary.passed << " passed, " << summary.failed << " failed\n";
  return summary;
}

}  // namespace slc
