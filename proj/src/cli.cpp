#include "arbor/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "arbor/bounds.hpp"
#include "arbor/graph.hpp"
#include "arbor/report.hpp"
#include "arbor/strip.hpp"
#include "arbor/transfer.hpp"
#include "arbor/tutte.hpp"

namespace arbor {

namespace {

constexpr int kUsageError = 2;
constexpr int kResourceError = 3;

Multigraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file '" + path + "'");
  return read_edge_list(in);
}

TutteOptions tutte_options() {
  TutteOptions options;
  options.node_budget = node_budget_from_env(options.node_budget);
  return options;
}

struct StripArgs {
  std::string lattice = "sq";
  std::size_t width = 2;
  std::size_t length = 1;
  std::string bc_t = "free";
  std::string bc_l = "free";

  StripSpec spec() const {
    return {parse_lattice(lattice), width, length, parse_boundary(bc_t), parse_boundary(bc_l)};
  }
};

void add_strip_options(CLI::App* cmd, StripArgs& args, bool with_length) {
  cmd->add_option("--lattice", args.lattice, "sq, tri, hc, kag, t48, t3342, t32434 or a polygon string like 4.8.8")->required();
  cmd->add_option("--width", args.width, "Transverse cell count")->required();
  cmd->add_option("--bc-t", args.bc_t, "Transverse boundary: free or periodic");
  if (with_length) {
    cmd->add_option("--length", args.length, "Longitudinal cell count")->required();
    cmd->add_option("--bc-l", args.bc_l, "Longitudinal boundary: free or periodic");
  }
}

void print_bounds(std::ostream& out, double delta, bool json) {
  const BoundReport r = bound_report(delta);
  if (json) {
    nlohmann::ordered_json doc;
    doc["delta"] = r.delta;
    doc["ssg"] = r.ssg;
    doc["bcl1"] = r.bcl1;
    doc["eta"] = r.eta;
    doc["bcl2"] = r.bcl2;
    doc["bcl34"] = r.bcl34 ? nlohmann::ordered_json(*r.bcl34) : nlohmann::ordered_json(nullptr);
    doc["best"] = r.best;
    out << doc.dump(2) << '\n';
    return;
  }
  out << "delta   = " << format_significant(r.delta, 6) << '\n'
      << "2^(D/2) = " << format_significant(r.ssg, 6) << '\n'
      << "BCL1    = " << format_significant(r.bcl1, 6) << '\n'
      << "eta     = " << format_significant(r.eta, 8) << '\n'
      << "BCL2    = " << format_significant(r.bcl2, 8) << '\n'
      << "BCL3/4  = " << (r.bcl34 ? format_significant(*r.bcl34, 5) : std::string("-")) << '\n'
      << "best    = " << format_significant(r.best, 6) << '\n';
}

void print_phi(std::ostream& out, const StripSpec& spec, const GrowthEstimate& est, bool json) {
  if (json) {
    nlohmann::ordered_json doc;
    doc["lattice"] = std::string(lattice_info(spec.lattice).mnemonic);
    doc["width"] = spec.width;
    doc["bc_t"] = std::string(to_string(spec.bc_t));
    doc["nu"] = est.nu;
    nlohmann::ordered_json counts = nlohmann::ordered_json::array();
    for (const auto& c : est.counts) counts.push_back(c.str());
    doc["counts"] = counts;
    doc["ratios"] = est.ratios;
    doc["eigenvalue"] = est.eigenvalue;
    doc["phi"] = est.phi;
    doc["bracket"] = {est.phi_lower, est.phi_upper};
    doc["err"] = est.err;
    out << doc.dump(2) << '\n';
    return;
  }
  out << "lattice " << lattice_info(spec.lattice).display << ", width " << spec.width << ", bc_t " << to_string(spec.bc_t)
      << ", nu " << est.nu << '\n';
  for (std::size_t m = 0; m < est.counts.size(); ++m) {
    out << "m=" << m + 1 << "  N_SF=" << est.counts[m];
    if (m > 0) out << "  ratio=" << format_significant(est.ratios[m - 1], 12);
    out << '\n';
  }
  out << "eigenvalue = " << format_significant(est.eigenvalue, 15) << '\n'
      << "phi = " << format_significant(est.phi, 15) << "  bracket [" << format_significant(est.phi_lower, 15) << ", "
      << format_significant(est.phi_upper, 15) << "]  err " << format_significant(est.err, 3) << '\n';
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spanning-forest counts, lattice-strip growth constants and upper bounds", "arbor"};
  app.require_subcommand(1);

  std::string graph_path;
  bool brute = false;
  auto* count = app.add_subcommand("count", "Count spanning forests and connected spanning subgraphs");
  count->add_option("--graph", graph_path, "Edge-list file")->required();
  count->add_flag("--brute", brute, "Also count by direct enumeration");

  bool json = false;
  auto* tutte_cmd = app.add_subcommand("tutte", "Tutte polynomial of a graph");
  tutte_cmd->add_option("--graph", graph_path, "Edge-list file")->required();
  tutte_cmd->add_flag("--json", json, "JSON output");

  StripArgs strip_args;
  std::string out_path;
  bool verify = false;
  auto* strip = app.add_subcommand("strip", "Generate an Archimedean lattice strip");
  add_strip_options(strip, strip_args, true);
  strip->add_option("--out", out_path, "Output edge-list file (default stdout)");
  strip->add_flag("--verify", verify, "Report lattice checks on stderr");

  StripArgs phi_args;
  std::size_t m_max = 40;
  auto* phi = app.add_subcommand("phi", "Growth constant of a strip via its transfer matrix");
  add_strip_options(phi, phi_args, false);
  phi->add_option("--m-max", m_max, "Largest strip length counted exactly");
  phi->add_flag("--json", json, "JSON output");

  std::optional<double> delta;
  bool crossover = false;
  auto* bounds = app.add_subcommand("bounds", "Evaluate every upper-bound family at one degree");
  bounds->add_option("--delta", delta, "Vertex degree (real values allowed)");
  bounds->add_flag("--crossover", crossover, "Degree where 2^(D/2) = D + 1");
  bounds->add_flag("--json", json, "JSON output");

  std::string format = "text";
  auto* table1 = app.add_subcommand("table1", "Growth constants, upper bounds and their ratio per lattice");
  table1->add_option("--format", format, "text, csv, json or markdown");
  auto* table2 = app.add_subcommand("table2", "Upper bounds per lattice");
  table2->add_option("--format", format, "text, csv, json or markdown");

  std::optional<int> compare_delta;
  auto* compare = app.add_subcommand("compare", "Rank phi_u against every bound");
  compare->add_option("--delta", compare_delta, "Restrict to one degree");
  compare->add_option("--format", format, "text, csv, json or markdown");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (count->parsed()) {
      const Multigraph g = load_graph(graph_path);
      const TutteOptions options = tutte_options();
      const TutteCoeffs t = TutteEngine(options).tutte(g);
      out << "N_SF = " << numerator(evaluate(t, 2, 1)) << '\n';
      if (count_components(g) == 1) {
        out << "N_CSSG = " << numerator(evaluate(t, 1, 2)) << '\n';
      } else {
        err << "warning: graph is disconnected, N_CSSG is 0\n";
        out << "N_CSSG = 0\n";
      }
      if (brute) {
        out << "N_SF (brute force) = " << brute_count_forests(g) << '\n';
        out << "N_CSSG (brute force) = " << brute_count_cssg(g) << '\n';
      }
    } else if (tutte_cmd->parsed()) {
      const TutteCoeffs t = TutteEngine(tutte_options()).tutte(load_graph(graph_path));
      out << (json ? to_json(t) : to_string(t)) << '\n';
    } else if (strip->parsed()) {
      const StripSpec spec = strip_args.spec();
      const Multigraph g = build_strip(spec);
      if (out_path.empty()) {
        write_edge_list(out, g);
      } else {
        std::ofstream file(out_path);
        if (!file) throw std::invalid_argument("cannot write '" + out_path + "'");
        write_edge_list(file, g);
      }
      if (verify) {
        const LatticeCheck check = verify_lattice(spec, g);
        err << (check.ok() ? "lattice checks passed" : "lattice checks failed") << '\n';
        for (const auto& f : check.failures) err << "  " << f << '\n';
      }
    } else if (phi->parsed()) {
      const StripSpec spec = phi_args.spec();
      print_phi(out, spec, phi_estimate(spec, m_max), json);
    } else if (bounds->parsed()) {
      if (crossover) {
        const double d = crossover_delta();
        if (json) {
          out << nlohmann::ordered_json{{"crossover", d}}.dump() << '\n';
        } else {
          out << "crossover delta = " << format_fixed(d, 4) << " (" << format_significant(d, 12) << ")\n";
        }
      } else if (delta) {
        print_bounds(out, *delta, json);
      } else {
        err << "error: bounds needs --delta or --crossover\n";
        return kUsageError;
      }
    } else if (table1->parsed()) {
      out << render(emit_table1(), parse_format(format));
    } else if (table2->parsed()) {
      out << render(emit_table2(), parse_format(format));
    } else if (compare->parsed()) {
      const Format f = parse_format(format);
      const Table t = compare_bounds(compare_delta);
      if (f == Format::kText) {
        for (const auto& row : t.rows) out << row[0].text << ": " << row.back().text << "  [most stringent: " << row[7].text << "]\n";
      } else {
        out << render(t, f);
      }
    }
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kResourceError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace arbor
