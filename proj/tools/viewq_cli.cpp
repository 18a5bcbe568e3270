// viewq: command-line front end for window view quality scoring.
//
//   viewq evaluate <file> [--csv DIR] [--quiet] [--threads N]
//   viewq grid <file> [--csv DIR] [--threads N]
//   viewq vci --of F --tv F
//   viewq comply <file> --standard S [--csv DIR] [--quiet]
//   viewq schedule <file> [--csv DIR] [--quiet]
//
// Exit codes: 0 success, 1 invalid input, 2 internal error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "viewq/viewq.hpp"

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& dir, const std::string& name, const std::string& contents) {
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  out << contents;
}

struct Loaded {
  std::string bytes;
  viewq::ProjectFile project;
};

Loaded load(const std::string& path) {
  Loaded l;
  l.bytes = viewq::read_file(path);
  l.project = viewq::parse_project_text(l.bytes, fs::path(path).parent_path());
  return l;
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"Window view quality scoring"};
  app.require_subcommand(1);

  std::string file;
  std::string csv_dir;
  bool quiet = false;
  unsigned threads = 1;
  std::string standard;
  std::string of_text;
  std::string tv_text;

  auto* evaluate = app.add_subcommand("evaluate", "Full report for every observer/window pair");
  evaluate->add_option("file", file, "Project document (JSON)")->required();
  evaluate->add_option("--csv", csv_dir, "Directory for machine-readable CSV outputs");
  evaluate->add_flag("--quiet", quiet, "Suppress the human-readable report");
  evaluate->add_option("--threads", threads, "Worker threads for grid evaluation")->check(CLI::PositiveNumber);

  auto* grid = app.add_subcommand("grid", "Spatial assessment heatmap as CSV");
  grid->add_option("file", file, "Project document (JSON)")->required();
  grid->add_option("--csv", csv_dir, "Write grid.csv and grid_summary.csv here instead of stdout");
  grid->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* vci = app.add_subcommand("vci", "Evaluate the view clarity index of a shade fabric");
  vci->add_option("--of", of_text, "Openness factor, fraction or percent (e.g. 0.05 or 5%)")->required();
  vci->add_option("--tv", tv_text, "Visible transmittance, fraction or percent")->required();

  auto* comply = app.add_subcommand("comply", "Standards and certification checks");
  comply->add_option("file", file, "Project document (JSON)")->required();
  comply->add_option("--standard", standard, "Standard filter, e.g. leed, breeam, en17037, all")->required();
  comply->add_option("--csv", csv_dir, "Directory for compliance.csv");
  comply->add_flag("--quiet", quiet, "Suppress the human-readable listing");

  auto* schedule = app.add_subcommand("schedule", "Temporal clarity over shade schedules");
  schedule->add_option("file", file, "Project document (JSON)")->required();
  schedule->add_option("--csv", csv_dir, "Directory for per-schedule series CSVs");
  schedule->add_flag("--quiet", quiet, "Suppress the summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (*vci) {
    const auto of = viewq::parse_fraction(of_text);
    const auto tv = viewq::parse_fraction(tv_text);
    if (!of || !tv) throw viewq::ValidationError("--of/--tv: malformed number");
    viewq::ShadeMaterial material{"cli", *of, *tv};
    std::cout << viewq::num6(viewq::vci(material)) << '\n';
    return 0;
  }

  const Loaded loaded = load(file);

  if (*evaluate) {
    const auto report = viewq::evaluate(loaded.project, loaded.bytes, threads);
    if (!quiet) std::cout << viewq::format_report_text(report);
    if (!csv_dir.empty()) {
      write_file(csv_dir, "scores.csv", viewq::emit_scores_csv(report));
      write_file(csv_dir, "compliance.csv", viewq::emit_compliance_csv(viewq::all_compliance_rows(report)));
      if (report.spatial) {
        write_file(csv_dir, "grid.csv", viewq::emit_grid_csv(*report.spatial));
        write_file(csv_dir, "grid_summary.csv", viewq::emit_grid_summary_csv(*report.spatial));
      }
      for (const auto& s : report.schedules)
        write_file(csv_dir, "series_" + sanitize(s.id) + ".csv", viewq::emit_series_csv(s.clarity));
    }
    return 0;
  }

  if (*grid) {
    const auto assessment = viewq::spatial_assessment(loaded.project.floor_plan(),
                                                      loaded.project.thresholds.spatial_qualifier,
                                                      viewq::kSeatedEyeHeight, threads);
    if (csv_dir.empty()) {
      std::cout << viewq::emit_grid_csv(assessment);
    } else {
      write_file(csv_dir, "grid.csv", viewq::emit_grid_csv(assessment));
      write_file(csv_dir, "grid_summary.csv", viewq::emit_grid_summary_csv(assessment));
    }
    return 0;
  }

  if (*comply) {
    const auto report = viewq::evaluate(loaded.project, loaded.bytes, threads);
    std::vector<viewq::ComplianceResult> rows;
    for (const auto& row : viewq::all_compliance_rows(report))
      if (viewq::standard_matches(row.standard, standard)) rows.push_back(row);
    if (!quiet) std::cout << viewq::emit_compliance_csv(rows);
    if (!csv_dir.empty()) write_file(csv_dir, "compliance.csv", viewq::emit_compliance_csv(rows));
    return 0;
  }

  if (*schedule) {
    const auto report = viewq::evaluate(loaded.project, loaded.bytes, threads);
    for (const auto& s : report.schedules) {
      if (!quiet)
        std::cout << "# schedule " << s.id << " window " << s.window << " fraction_above_min "
                  << viewq::num6(s.clarity.fraction_above_min) << " mean_v_clarity "
                  << viewq::num6(s.clarity.mean_v_clarity) << '\n'
                  << viewq::emit_series_csv(s.clarity);
      if (!csv_dir.empty()) write_file(csv_dir, "series_" + sanitize(s.id) + ".csv", viewq::emit_series_csv(s.clarity));
    }
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const viewq::ValidationError& e) {
    for (const auto& p : e.problems()) std::cerr << "error: " << p << '\n';
    return 1;
  } catch (const viewq::ConfigurationRequiredError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const viewq::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const viewq::DegenerateGeometryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}
