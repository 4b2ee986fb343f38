#ifndef DENOVO_REPORT_HPP
#define DENOVO_REPORT_HPP

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "denovo/modfinder.hpp"
#include "denovo/solver.hpp"

namespace denovo {

struct EdgeReport {
  double gap = 0.0;
  std::vector<std::string> decompositions;
};

struct CandidateResult {
  std::size_t rank = 0;
  std::optional<double> score;
  std::vector<double> path;  // node coordinates, daltons
  std::vector<EdgeReport> edges;
  std::vector<std::string> sequences;
};

struct ModificationEntry {
  double left = 0.0, right = 0.0, gap = 0.0;
  std::vector<ModificationCandidate> candidates;
  bool low_priority = false;
};

struct Report {
  std::optional<std::string> title;
  std::vector<CandidateResult> candidates;
  std::vector<ModificationEntry> modifications;
  bool with_modifications = false;  // modification search reports always carry the array
};

enum class ReportFormat { text, json };

// Label of one edge decomposition: residues, with the water term spelled out
// on water-typed edges.
inline std::string decomposition_label(const std::string& residues, EdgeKind kind) {
  switch (kind) {
    case EdgeKind::plus_water: return residues.empty() ? "H2O" : residues + "+H2O";
    case EdgeKind::minus_water: return residues + "-H2O";
    default: return residues;
  }
}

inline CandidateResult make_candidate(const NCSpectrumGraph& g, const FeasiblePath& p, const Alphabet& alphabet,
                                      MassUnit tol, std::size_t limit, std::optional<double> score) {
  CandidateResult c;
  c.score = score;
  for (auto pos : p.nodes) c.path.push_back(alphabet.to_daltons(g.coordinate(pos)));
  for (const auto& e : p.edges) {
    EdgeReport er{alphabet.to_daltons(e.gap), {}};
    for (const auto& d : edge_decompositions(e, alphabet, tol, limit))
      er.decompositions.push_back(decomposition_label(d, e.kind));
    c.edges.push_back(std::move(er));
  }
  c.sequences = expand_sequences(p, alphabet, tol, limit);
  return c;
}

inline ModificationEntry make_modification(const ModificationReport& r, const Alphabet& alphabet) {
  return {alphabet.to_daltons(r.left), alphabet.to_daltons(r.right), alphabet.to_daltons(r.gap), r.candidates,
          r.low_priority};
}

inline nlohmann::ordered_json to_json(const Report& report) {
  using json = nlohmann::ordered_json;
  json cands = json::array();
  for (const auto& c : report.candidates) {
    json edges = json::array();
    for (const auto& e : c.edges) edges.push_back(json{{"gap", e.gap}, {"decompositions", e.decompositions}});
    cands.push_back(json{{"rank", c.rank},
                         {"score", c.score ? json(*c.score) : json(nullptr)},
                         {"path", c.path},
                         {"edges", std::move(edges)},
                         {"sequences", c.sequences}});
  }
  json mods = json::array();
  for (const auto& m : report.modifications) {
    json mc = json::array();
    for (const auto& c : m.candidates) mc.push_back(json{{"residue", std::string(1, c.residue)}, {"delta", c.delta}});
    mods.push_back(json{{"left", m.left}, {"right", m.right}, {"gap", m.gap}, {"candidates", std::move(mc)}});
  }
  json out{{"candidates", std::move(cands)}};
  if (report.with_modifications || !report.modifications.empty()) out["modifications"] = std::move(mods);
  return out;
}

/// JSON: one compact object per report. Text: a "# title" line, then one
/// tab-separated rank/score/sequence line per candidate and one line per
/// modification.
inline void emit_report(std::ostream& out, const Report& report, ReportFormat format) {
  if (format == ReportFormat::json) {
    out << to_json(report).dump() << '\n';
    return;
  }
  out << "# " << report.title.value_or("untitled") << '\n';
  for (const auto& c : report.candidates) {
    out << c.rank << '\t';
    if (c.score) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4f", *c.score);
      out << buf;
    } else {
      out << "NA";
    }
    out << '\t' << (c.sequences.empty() ? std::string("-") : c.sequences.front()) << '\n';
  }
  for (const auto& m : report.modifications) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "mod\t%.4f\t%.4f\t%.4f\t", m.left, m.right, m.gap);
    out << buf;
    for (std::size_t t = 0; t < m.candidates.size(); ++t) {
      std::snprintf(buf, sizeof buf, "%s%c:%+.4f", t ? "," : "", m.candidates[t].residue, m.candidates[t].delta);
      out << buf;
    }
    out << (m.low_priority ? "\tlow-priority" : "") << '\n';
  }
}

}  // namespace denovo

#endif  // DENOVO_REPORT_HPP
