// denovo: de novo peptide sequencing from singly charged MS/MS peak lists.
//
//   denovo sequence  [options] [input.mgf]   ranked candidate sequences
//   denovo modsearch [options] [input.mgf]   single-modification search
//   denovo simulate  --peptide SEQ [options] synthetic MGF
//   denovo graph     [options] [input.mgf]   debug dump of the graph
//
// Exit status: 0 ok, 1 input or usage error, 2 some spectrum had no candidate.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "denovo/denovo.hpp"
#include "denovo/testkit.hpp"

namespace {

using namespace denovo;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string input = "-";
  std::string residues = "monoisotopic";
  double delta = 0.01;
  double max_gap = 400.0;
  double tol = 0.5;
  double min_rel = 5.0;
  bool merge = true;
  double isotope_window = 1.5;
  std::string isotope_strategy = "lowest";
  std::string format = "text";
};

ResidueTable load_residues(const std::string& source) {
  if (source == "monoisotopic") return ResidueTable::monoisotopic();
  if (source == "nominal") return ResidueTable::nominal();
  std::ifstream in(source);
  if (!in) throw InputError("cannot open residue table '" + source + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return ResidueTable::parse(ss.str());
  } catch (const ResidueTableError& e) {
    throw InputError(source + ":" + std::to_string(e.line()) + ": " + e.what());
  }
}

std::vector<Spectrum> load_spectra(const std::string& path) {
  try {
    if (path == "-") return parse_mgf(std::cin);
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input '" + path + "'");
    return parse_mgf(in);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("input", c.input, "MGF file, '-' for stdin")->capture_default_str();
  app->add_option("--residues", c.residues, "residue table file, or 'monoisotopic' / 'nominal'")
      ->capture_default_str();
  app->add_option("--delta", c.delta, "mass precision (Da)")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--max-gap", c.max_gap, "longest edge h (Da)")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--tol", c.tol, "match tolerance (Da)")->capture_default_str()->check(CLI::NonNegativeNumber);
  app->add_option("--min-rel-intensity", c.min_rel, "intensity threshold, percent of the maximum")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 100.0));
  app->add_flag("--merge-isotopes,!--no-merge-isotopes", c.merge, "merge isotope clusters")->capture_default_str();
  app->add_option("--isotope-window", c.isotope_window, "isotope merge window (Da)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_option("--isotope-strategy", c.isotope_strategy, "merged peak mass")
      ->capture_default_str()
      ->check(CLI::IsMember({"lowest", "highest"}));
  app->add_option("--format", c.format, "report format")->capture_default_str()->check(CLI::IsMember({"text", "json"}));
}

SequencingOptions to_options(const Common& c) {
  SequencingOptions o;
  o.delta = c.delta;
  o.max_gap = c.max_gap;
  o.tolerance = c.tol;
  o.preprocess.min_rel_intensity = c.min_rel;
  o.preprocess.merge_isotopes = c.merge;
  o.preprocess.isotope_window = c.isotope_window;
  o.preprocess.isotope_strategy =
      c.isotope_strategy == "highest" ? IsotopeStrategy::keep_highest_intensity : IsotopeStrategy::keep_lowest_mass;
  return o;
}

ReportFormat format_of(const Common& c) { return c.format == "json" ? ReportFormat::json : ReportFormat::text; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"De novo peptide sequencing from MS/MS spectra"};
  app.require_subcommand(1);

  Common seq_opts;
  std::string mode = "scored";
  bool water = true;
  bool all = false;
  std::size_t limit = 100;
  auto* sequence = app.add_subcommand("sequence", "report candidate sequences per spectrum");
  add_common(sequence, seq_opts);
  sequence->add_option("--mode", mode, "exact or scored search")->capture_default_str()->check(
      CLI::IsMember({"exact", "scored"}));
  auto* water_flag =
      sequence->add_flag("--water-edges,!--no-water-edges", water, "water-typed edges (scored mode only)");
  sequence->add_flag("--all-solutions", all, "every exact solution instead of the first");
  sequence->add_option("--limit", limit, "cap on solutions and sequences per candidate")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  Common mod_opts;
  auto* modsearch = app.add_subcommand("modsearch", "find single modified residues");
  add_common(modsearch, mod_opts);

  Common graph_opts;
  bool graph_water = false;
  auto* graph = app.add_subcommand("graph", "dump the spectrum graph");
  add_common(graph, graph_opts);
  graph->add_flag("--water-edges", graph_water, "include water-typed edges");

  std::string peptide, sim_residues = "monoisotopic", title;
  std::vector<std::size_t> drop, water_loss;
  double drop_fraction = 0.0;
  std::size_t noise = 0;
  bool isotopes = false, no_b = false, no_y = false;
  std::size_t mod_position = 0;
  double mod_delta = 0.0;
  std::uint64_t seed = 0;
  auto* simulate = app.add_subcommand("simulate", "write the b/y spectrum of a peptide as MGF");
  simulate->add_option("--peptide", peptide, "residue sequence")->required();
  simulate->add_option("--residues", sim_residues, "residue table file, or 'monoisotopic' / 'nominal'")
      ->capture_default_str();
  simulate->add_option("--drop", drop, "ion indices to drop: b1..b(n-1) = 0..n-2, then y1..y(n-1)");
  simulate->add_option("--drop-fraction", drop_fraction, "fraction of ions dropped at random")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--noise", noise, "uniform noise peaks");
  simulate->add_flag("--isotopes", isotopes, "add +1/+2 isotope peaks");
  simulate->add_option("--water-loss", water_loss, "b-ion indices observed only after water loss");
  simulate->add_flag("--no-b", no_b, "omit b ions");
  simulate->add_flag("--no-y", no_y, "omit y ions");
  auto* mod_pos_opt = simulate->add_option("--mod-position", mod_position, "modified residue, 0-based");
  simulate->add_option("--mod-delta", mod_delta, "modification mass shift (Da)")->needs(mod_pos_opt);
  simulate->add_option("--seed", seed, "random seed")->capture_default_str();
  simulate->add_option("--title", title, "TITLE line (default: the peptide)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*simulate) {
      testkit::SynthesisOptions o;
      o.b_ions = !no_b;
      o.y_ions = !no_y;
      o.drop_indices = drop;
      o.drop_fraction = drop_fraction;
      o.noise_peaks = noise;
      o.isotope_envelope = isotopes;
      o.water_losses = water_loss;
      if (mod_pos_opt->count()) o.modification = testkit::Modification{mod_position, mod_delta};
      o.seed = seed;
      auto s = testkit::synthesize_spectrum(peptide, load_residues(sim_residues), o);
      if (!title.empty()) s.title = title;
      write_mgf(std::cout, s);
      return 0;
    }

    if (*graph) {
      const Sequencer seq(load_residues(graph_opts.residues), to_options(graph_opts));
      for (const auto& s : load_spectra(graph_opts.input)) {
        const auto g = seq.graph(seq.prepare(s), graph_water);
        std::cout << "# " << s.title.value_or("untitled") << '\n';
        for (const auto& w : g.warnings()) std::cerr << "warning: " << w << '\n';
        dump_graph(std::cout, g);
      }
      return 0;
    }

    if (*sequence) {
      auto o = to_options(seq_opts);
      o.mode = mode == "exact" ? Mode::exact : Mode::scored;
      if (o.mode == Mode::exact && water_flag->count() && water) {
        std::cerr << "error: --water-edges applies to scored mode only\n";
        return 1;
      }
      o.water_edges = o.mode == Mode::scored && water;
      o.all_solutions = all;
      o.limit = limit;
      const Sequencer seq(load_residues(seq_opts.residues), o);
      const auto spectra = load_spectra(seq_opts.input);
      if (spectra.empty()) emit_report(std::cout, Report{}, format_of(seq_opts));
      bool missing = false;
      for (const auto& s : spectra) {
        const auto report = seq.sequence(s);
        missing |= report.candidates.empty();
        emit_report(std::cout, report, format_of(seq_opts));
      }
      return missing ? 2 : 0;
    }

    if (*modsearch) {
      auto o = to_options(mod_opts);
      o.mode = Mode::exact;
      o.water_edges = false;
      const Sequencer seq(load_residues(mod_opts.residues), o);
      const auto spectra = load_spectra(mod_opts.input);
      if (spectra.empty()) {
        Report empty;
        empty.with_modifications = true;
        emit_report(std::cout, empty, format_of(mod_opts));
      }
      for (const auto& s : spectra) emit_report(std::cout, seq.modifications(s), format_of(mod_opts));
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
