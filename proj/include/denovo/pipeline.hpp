#ifndef DENOVO_PIPELINE_HPP
#define DENOVO_PIPELINE_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "denovo/graph.hpp"
#include "denovo/mass.hpp"
#include "denovo/modfinder.hpp"
#include "denovo/report.hpp"
#include "denovo/scorer.hpp"
#include "denovo/solver.hpp"
#include "denovo/spectrum.hpp"

namespace denovo {

enum class Mode { exact, scored };

struct SequencingOptions {
  Mode mode = Mode::scored;
  double delta = 0.01;
  double max_gap = 400.0;    // h, daltons
  double tolerance = 0.5;    // tau, daltons
  PreprocessOptions preprocess;
  bool water_edges = true;   // scored mode only
  bool all_solutions = false;
  std::size_t limit = 100;
  ScoreOptions score;
};

// Spectrum -> report. Holds the discretized alphabet and the mass array so a
// batch of spectra shares them.
class Sequencer {
 public:
  Sequencer(const ResidueTable& table, SequencingOptions opts)
      : opts_(opts), alphabet_(table, opts.delta), masses_(alphabet_, discretize(opts.max_gap, opts.delta)) {
    if (!(opts.tolerance >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");
  }

  const SequencingOptions& options() const { return opts_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const MassArray& masses() const { return masses_; }
  MassUnit tolerance() const { return discretize(opts_.tolerance, opts_.delta); }

  Spectrum prepare(const Spectrum& s) const { return preprocess(s, opts_.preprocess, opts_.delta); }

  NCSpectrumGraph graph(const Spectrum& prepared, bool water) const {
    return build_graph(prepared, alphabet_, masses_, {tolerance(), water});
  }

  Report sequence(const Spectrum& s) const {
    const auto prepared = prepare(s);
    Report report;
    report.title = s.title;
    if (opts_.mode == Mode::exact) {
      const auto g = graph(prepared, false);
      const auto ld = compute_lce_dia(g);
      std::vector<FeasiblePath> paths;
      if (opts_.all_solutions) {
        paths = enumerate_solutions(g, ld, opts_.limit);
      } else if (auto p = extract_solution(g, ld)) {
        paths.push_back(std::move(*p));
      }
      for (const auto& p : paths) add_candidate(report, g, p, std::nullopt);
      return report;
    }
    const auto g = graph(prepared, opts_.water_edges);
    const auto sf = default_score(prepared, opts_.score);
    const auto q = opts_.water_edges ? compute_q_water(g, sf) : compute_q(g, sf);
    if (auto best = best_scored_path(g, q, sf)) add_candidate(report, g, best->path, best->score);
    return report;
  }

  /// Exact solutions if any, plus every single missing edge that would
  /// complete a solution.
  Report modifications(const Spectrum& s) const {
    const auto prepared = prepare(s);
    const auto g = graph(prepared, false);
    const auto m = compute_m(g);
    const auto n = compute_n(g);
    Report report;
    report.title = s.title;
    report.with_modifications = true;
    if (auto p = extract_solution(g, m)) add_candidate(report, g, *p, std::nullopt);
    for (const auto& r : find_modifications(g, m, n, alphabet_, masses_.h()))
      report.modifications.push_back(make_modification(r, alphabet_));
    return report;
  }

 private:
  void add_candidate(Report& report, const NCSpectrumGraph& g, const FeasiblePath& p,
                     std::optional<double> score) const {
    auto c = make_candidate(g, p, alphabet_, tolerance(), opts_.limit, score);
    c.rank = report.candidates.size() + 1;
    report.candidates.push_back(std::move(c));
  }

  SequencingOptions opts_;
  Alphabet alphabet_;
  MassArray masses_;
};

}  // namespace denovo

#endif  // DENOVO_PIPELINE_HPP
