#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmoat/qmoat.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitCeiling = 3;

using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string command_line(int argc, char** argv) {
  std::string s = "qmoat";
  for (int k = 1; k < argc; ++k) {
    s += ' ';
    s += argv[k];
  }
  return s;
}

qmoat::QuadField field_from(std::int64_t d) {
  try {
    return qmoat::QuadField(d);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

std::string fixed(double x, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::unique_ptr<qmoat::RationalPrimes> sieve_for(std::uint64_t limit) {
  if (limit <= qmoat::default_rational_primes().limit()) return nullptr;
  return std::make_unique<qmoat::RationalPrimes>(limit);
}

const qmoat::RationalPrimes& pick(const std::unique_ptr<qmoat::RationalPrimes>& own) {
  return own ? *own : qmoat::default_rational_primes();
}

// primes ---------------------------------------------------------------------

struct PrimesConfig {
  std::int64_t d = -1;
  std::int64_t boundary = 0;
  std::int64_t pad = 0;
  std::string format = "csv";
  std::string output;
  std::string svg;
  std::string edges;
  std::string mst_svg;
};

int run_primes(const PrimesConfig& cfg, const std::string& provenance) {
  const qmoat::QuadField f = field_from(cfg.d);
  if (cfg.boundary < 0) throw ConfigError("--boundary must be non-negative");
  if (cfg.pad < 0) throw ConfigError("--pad must be non-negative");
  if (cfg.boundary > (1 << 16)) throw ConfigError("--boundary above 65536 is not supported");

  qmoat::SectorPrimes primes;
  if (cfg.boundary > 0) {
    const std::int64_t reach = cfg.boundary + cfg.pad;
    const auto own = sieve_for(static_cast<std::uint64_t>(2 * (reach + 1) * (reach + 1)));
    primes = qmoat::generate_sector_primes(qmoat::Sector(f, cfg.boundary, cfg.pad * cfg.pad),
                                           qmoat::InertClassifier(f, pick(own)));
  }

  std::ostringstream out;
  if (cfg.format == "json") {
    json arr = json::array();
    for (std::size_t k = 0; k < primes.size(); ++k) {
      const auto& e = primes.elements[k];
      arr.push_back({{"d", cfg.d}, {"a", e.a}, {"b", e.b}, {"norm", primes.norms[k]}});
    }
    out << arr.dump(2) << '\n';
  } else if (cfg.boundary > 0) {
    out << "# " << provenance << '\n' << "d,a,b,norm\n";
    for (std::size_t k = 0; k < primes.size(); ++k) {
      const auto& e = primes.elements[k];
      out << cfg.d << ',' << e.a << ',' << e.b << ',' << primes.norms[k] << '\n';
    }
  }
  write_text(cfg.output, out.str());

  if (!cfg.svg.empty()) write_text(cfg.svg, qmoat::svg::prime_scatter(primes.points, provenance));
  if (!cfg.edges.empty() || !cfg.mst_svg.empty()) {
    const qmoat::Triangulation tri = qmoat::triangulate(primes.points);
    if (!cfg.edges.empty()) {
      std::ostringstream e;
      e << "# " << provenance << '\n' << "i,j,squared_length\n";
      for (const auto& edge : tri.edges) e << edge.i << ',' << edge.j << ',' << edge.w << '\n';
      write_text(cfg.edges, e.str());
    }
    if (!cfg.mst_svg.empty()) {
      const auto tree = qmoat::kruskal_mst(primes.size(), tri.edges);
      write_text(cfg.mst_svg, qmoat::svg::triangulation_overlay(primes.points, tri.edges, tree, provenance));
    }
  }
  return 0;
}

// moats ----------------------------------------------------------------------

struct MoatsConfig {
  std::int64_t d = -1;
  std::string k_max;
  std::int64_t initial_boundary = 64;
  std::int64_t max_boundary = 1 << 14;
  std::string format = "table";
  std::string output;
  std::string svg;
};

std::int64_t k_squared_from(const std::string& text) {
  try {
    return qmoat::parse_k_squared(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("--k-max: ") + e.what());
  }
}

void check_boundaries(std::int64_t initial, std::int64_t ceiling) {
  if (initial < 2) throw ConfigError("--initial-boundary must be at least 2");
  if (ceiling > (1 << 16)) throw ConfigError("--max-boundary above 65536 is not supported");
  if (initial > ceiling) throw ConfigError("--initial-boundary must not exceed --max-boundary");
}

qmoat::MoatSearchResult search(const qmoat::QuadField& f, std::int64_t k2, std::int64_t initial,
                               std::int64_t ceiling) {
  // same doubling as find_moats_up_to, with a sieve sized to each sector
  const std::int64_t pad = static_cast<std::int64_t>(qmoat::isqrt(static_cast<std::uint64_t>(k2))) + 1;
  for (std::int64_t c = initial;; c *= 2) {
    const auto own = sieve_for(static_cast<std::uint64_t>(2 * (c + pad) * (c + pad)));
    auto res = qmoat::search_moats_at(f, k2, c, qmoat::InertClassifier(f, pick(own)));
    if (res.complete || 2 * c > ceiling) return res;
  }
}

json record_json(const qmoat::QuadField& f, const qmoat::MoatRecord& r) {
  return {{"k_squared", r.k_squared},
          {"k", r.k()},
          {"farthest", {{"a", r.farthest_prime.a}, {"b", r.farthest_prime.b}, {"display", display(f, r.farthest_prime)}}},
          {"distance", r.distance()},
          {"component_size", r.component_size},
          {"validated", r.validated},
          {"C_used", r.boundary_used}};
}

int run_moats(const MoatsConfig& cfg, const std::string& provenance) {
  const qmoat::QuadField f = field_from(cfg.d);
  const std::int64_t k2 = k_squared_from(cfg.k_max);
  check_boundaries(cfg.initial_boundary, cfg.max_boundary);
  const auto res = search(f, k2, cfg.initial_boundary, cfg.max_boundary);
  const std::string marker = "INCOMPLETE: boundary ceiling " + std::to_string(cfg.max_boundary) +
                             " reached before k_max was certified";

  std::ostringstream out;
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : res.records) arr.push_back(record_json(f, r));
    out << arr.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    out << "# " << provenance << '\n';
    out << "k_squared,k,a,b,farthest,distance,component_size,validated,C_used\n";
    for (const auto& r : res.records) {
      out << r.k_squared << ',' << qmoat::format_k(r.k_squared) << ',' << r.farthest_prime.a << ','
          << r.farthest_prime.b << ',' << display(f, r.farthest_prime) << ',' << fixed(r.distance(), 6) << ','
          << r.component_size << ',' << (r.validated ? "true" : "false") << ',' << r.boundary_used << '\n';
    }
    if (!res.complete) out << "# " << marker << '\n';
  } else {
    out << "# " << provenance << '\n';
    out << pad_right("k", 12) << pad_right("farthest prime", 24) << "distance\n";
    for (const auto& r : res.records) {
      out << pad_right(qmoat::format_k(r.k_squared), 12) << pad_right(display(f, r.farthest_prime), 24)
          << fixed(r.distance(), 3) << (r.validated ? "" : "  (unvalidated)") << '\n';
    }
    if (!res.complete) out << "# " << marker << '\n';
  }
  write_text(cfg.output, out.str());

  if (!cfg.svg.empty()) {
    qmoat::svg::Series s{"d=" + std::to_string(cfg.d), "blue", {}};
    for (const auto& r : res.records) s.points.emplace_back(r.k(), r.distance());
    write_text(cfg.svg, qmoat::svg::moat_plot(std::span(&s, 1), provenance));
  }
  if (!res.complete) {
    std::cerr << "qmoat: " << marker << '\n';
    return kExitCeiling;
  }
  return 0;
}

// plot -----------------------------------------------------------------------

struct PlotConfig {
  std::vector<std::int64_t> ds = {-1, -2, -3, -7};
  std::string k_max;
  std::int64_t initial_boundary = 64;
  std::int64_t max_boundary = 1 << 14;
  std::string output;
};

std::int64_t default_plot_k_squared(std::int64_t d) {
  switch (d) {
    case -1: return 10;
    case -2: return 18;
    case -3: return 7;
    default: return 8;
  }
}

int run_plot(const PlotConfig& cfg, const std::string& provenance) {
  static const char* colors[] = {"blue", "red", "orange", "green", "purple", "brown", "teal", "magenta", "gray"};
  check_boundaries(cfg.initial_boundary, cfg.max_boundary);
  if (cfg.ds.empty()) throw ConfigError("--d needs at least one value");
  std::vector<qmoat::QuadField> fields;
  for (auto d : cfg.ds) fields.push_back(field_from(d));
  const std::optional<std::int64_t> k2 =
      cfg.k_max.empty() ? std::nullopt : std::optional<std::int64_t>(k_squared_from(cfg.k_max));

  std::vector<qmoat::svg::Series> series;
  bool complete = true;
  for (std::size_t n = 0; n < fields.size(); ++n) {
    const auto& f = fields[n];
    const auto res = search(f, k2.value_or(default_plot_k_squared(f.d())), cfg.initial_boundary, cfg.max_boundary);
    complete = complete && res.complete;
    qmoat::svg::Series s{"d=" + std::to_string(f.d()), colors[n % std::size(colors)], {}};
    for (const auto& r : res.records) s.points.emplace_back(r.k(), r.distance());
    series.push_back(std::move(s));
  }
  std::string title = provenance;
  if (!complete) title += " [INCOMPLETE: boundary ceiling reached]";
  write_text(cfg.output, qmoat::svg::moat_plot(series, title));
  if (!complete) {
    std::cerr << "qmoat: INCOMPLETE: boundary ceiling reached for at least one d\n";
    return kExitCeiling;
  }
  return 0;
}

// density --------------------------------------------------------------------

struct DensityConfig {
  std::int64_t d = -1;
  double radius = 0;
  std::string format = "table";
  std::string output;
  bool classes = false;
};

int run_density(const DensityConfig& cfg, const std::string& provenance) {
  const qmoat::QuadField f = field_from(cfg.d);
  if (!(cfg.radius >= 10)) throw ConfigError("--radius must be at least 10");
  if (cfg.radius > 1.0e5) throw ConfigError("--radius above 100000 is not supported");
  const std::int64_t bound = qmoat::norm_bound_for(cfg.radius);
  const auto own = sieve_for(static_cast<std::uint64_t>(bound));
  const qmoat::InertClassifier classifier(f, pick(own));
  const qmoat::DensityReport r = qmoat::density_report(f, cfg.radius, classifier);
  const double pi_ln_r = 3.14159265358979323846 * std::log(cfg.radius);

  std::vector<std::int64_t> counts;
  std::uint64_t phi = 0;
  if (cfg.classes) {
    counts = qmoat::residue_class_counts(classifier.rational_primes(), static_cast<std::uint64_t>(bound),
                                         static_cast<std::uint64_t>(classifier.modulus()));
    phi = qmoat::euler_phi(static_cast<std::uint64_t>(classifier.modulus()));
  }
  const auto inert_classes = classifier.nonresidues();

  std::ostringstream out;
  if (cfg.format == "json") {
    json j = {{"d", r.d},
              {"R", r.R},
              {"norm_bound", r.norm_bound},
              {"fold", r.fold},
              {"total_count", r.total_count},
              {"split_count", r.split_count},
              {"inert_count", r.inert_count},
              {"quadrant_count", r.quadrant_count},
              {"empirical_count", r.empirical_count},
              {"asymptotic_count", r.asymptotic_count},
              {"sector_area", r.sector_area},
              {"empirical_density", r.empirical_density},
              {"asymptotic_density", r.asymptotic_density},
              {"relative_error", r.relative_error},
              {"asymptotic_density_times_pi_ln_R", r.asymptotic_density * pi_ln_r}};
    if (cfg.classes) {
      json cls = json::array();
      for (std::size_t m = 0; m < counts.size(); ++m) {
        cls.push_back({{"residue", m},
                       {"count", counts[m]},
                       {"inert", std::find(inert_classes.begin(), inert_classes.end(),
                                           static_cast<std::int64_t>(m)) != inert_classes.end()}});
      }
      j["classes"] = {{"modulus", classifier.modulus()}, {"phi", phi}, {"x", bound}, {"counts", cls}};
    }
    out << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    out << "# " << provenance << '\n';
    out << "d,R,norm_bound,fold,total_count,split_count,inert_count,quadrant_count,empirical_count,"
           "asymptotic_count,sector_area,empirical_density,asymptotic_density,relative_error\n";
    out << r.d << ',' << fixed(r.R, 6) << ',' << r.norm_bound << ',' << r.fold << ',' << r.total_count << ','
        << r.split_count << ',' << r.inert_count << ',' << r.quadrant_count << ',' << fixed(r.empirical_count, 3)
        << ',' << fixed(r.asymptotic_count, 3) << ',' << fixed(r.sector_area, 3) << ','
        << fixed(r.empirical_density, 9) << ',' << fixed(r.asymptotic_density, 9) << ','
        << fixed(r.relative_error, 6) << '\n';
    if (cfg.classes) {
      out << "# classes mod " << classifier.modulus() << " (phi " << phi << ") of rational primes <= " << bound
          << '\n';
      for (std::size_t m = 0; m < counts.size(); ++m) {
        if (counts[m] != 0) out << "# class," << m << ',' << counts[m] << '\n';
      }
    }
  } else {
    out << "# " << provenance << '\n';
    auto row = [&](const std::string& key, const std::string& value) { out << pad_right(key, 34) << value << '\n'; };
    row("d", std::to_string(r.d));
    row("R", fixed(r.R, 3));
    row("norm bound", std::to_string(r.norm_bound));
    row("primes, all associates", std::to_string(r.total_count));
    row("  norm a rational prime", std::to_string(r.split_count));
    row("  inert rational primes", std::to_string(r.inert_count));
    row("primes with a > 0, b >= 0", std::to_string(r.quadrant_count));
    row("symmetry fold", std::to_string(r.fold));
    row("primes per sector", fixed(r.empirical_count, 1));
    row("R^2 / (4 ln R)", fixed(r.asymptotic_count, 1));
    row("relative error", fixed(r.relative_error, 6));
    row("sector area", fixed(r.sector_area, 3));
    row("empirical density", fixed(r.empirical_density, 9));
    row("asymptotic density", fixed(r.asymptotic_density, 9));
    row("asymptotic density * pi ln R", fixed(r.asymptotic_density * pi_ln_r, 5));
    if (cfg.classes) {
      out << "rational primes <= " << bound << " by class mod " << classifier.modulus() << " (phi " << phi
          << "):\n";
      for (std::size_t m = 0; m < counts.size(); ++m) {
        if (counts[m] == 0) continue;
        const bool inert =
            std::find(inert_classes.begin(), inert_classes.end(), static_cast<std::int64_t>(m)) != inert_classes.end();
        out << "  " << pad_right(std::to_string(m), 6) << pad_right(std::to_string(counts[m]), 12)
            << (inert ? "inert" : "") << '\n';
      }
    }
  }
  write_text(cfg.output, out.str());
  return 0;
}

// bench ----------------------------------------------------------------------

struct BenchConfig {
  std::int64_t d = -1;
  std::vector<std::int64_t> boundaries = {96, 128, 180, 448, 640, 900, 1280, 1440};
  std::size_t baseline_max = 4000;
  std::size_t slope_min = 10000;
  int repeats = 3;
  std::string output;
};

int run_bench(const BenchConfig& cfg, const std::string& provenance) {
  const qmoat::QuadField f = field_from(cfg.d);
  if (cfg.boundaries.empty()) throw ConfigError("--boundaries needs at least one value");
  for (auto c : cfg.boundaries) {
    if (c < 1 || c > 4096) throw ConfigError("--boundaries values must lie in [1, 4096]");
  }
  if (cfg.repeats < 1) throw ConfigError("--repeats must be positive");
  const std::int64_t c_max = *std::max_element(cfg.boundaries.begin(), cfg.boundaries.end());
  const auto own = sieve_for(static_cast<std::uint64_t>(c_max * c_max * std::max<std::int64_t>(2, f.abs_d())));
  const auto rows = qmoat::run_bench(f, cfg.boundaries, cfg.baseline_max, cfg.repeats,
                                     qmoat::InertClassifier(f, pick(own)));

  std::ostringstream out;
  out << "# " << provenance << '\n' << "boundary,points,t_delaunay,t_complete,mst_match\n";
  std::vector<qmoat::BenchRow> fit;
  const qmoat::BenchRow* largest_corun = nullptr;
  for (const auto& r : rows) {
    out << r.boundary << ',' << r.points << ',' << fixed(r.t_delaunay, 6) << ','
        << (r.t_complete ? fixed(*r.t_complete, 6) : "") << ','
        << (r.mst_match ? (*r.mst_match ? "true" : "false") : "") << '\n';
    if (r.points >= cfg.slope_min) fit.push_back(r);
    if (r.t_complete && (!largest_corun || r.points > largest_corun->points)) largest_corun = &r;
  }
  if (fit.size() >= 2) {
    out << "# loglog_slope(points >= " << cfg.slope_min << ")," << fixed(qmoat::loglog_slope(fit), 4) << '\n';
  } else {
    out << "# loglog_slope,unavailable (fewer than two sizes with points >= " << cfg.slope_min << ")\n";
  }
  if (largest_corun) {
    out << "# mst_identical_at_largest_corun," << largest_corun->points << ','
        << (*largest_corun->mst_match ? "true" : "false") << '\n';
  }
  write_text(cfg.output, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prime moats in imaginary quadratic fields of class number one"};
  app.require_subcommand(1);

  PrimesConfig primes_cfg;
  auto* primes = app.add_subcommand("primes", "List the primes of the symmetry sector");
  primes->add_option("--d", primes_cfg.d, "Field parameter (-1, -2, -3, -7, -11, -19, -43, -67, -163)")->required();
  primes->add_option("--boundary", primes_cfg.boundary, "Sector boundary C")->required();
  primes->add_option("--pad", primes_cfg.pad, "Widen the sector's angular sides by this distance");
  primes->add_option("--format", primes_cfg.format)->check(CLI::IsMember({"csv", "json"}));
  primes->add_option("-o,--output", primes_cfg.output, "Output file (default stdout)");
  primes->add_option("--svg", primes_cfg.svg, "Write a scatter plot");
  primes->add_option("--edges", primes_cfg.edges, "Write the Delaunay edges as CSV");
  primes->add_option("--mst-svg", primes_cfg.mst_svg, "Write the triangulation with its spanning tree");

  MoatsConfig moats_cfg;
  auto* moats = app.add_subcommand("moats", "Every moat of the start prime up to k_max");
  moats->add_option("--d", moats_cfg.d, "Field parameter")->required();
  moats->add_option("--k-max", moats_cfg.k_max, "Largest step: sqrt:N or a decimal")->required();
  moats->add_option("--initial-boundary", moats_cfg.initial_boundary, "First sector boundary C0");
  moats->add_option("--max-boundary", moats_cfg.max_boundary, "Ceiling for the doubled boundary");
  moats->add_option("--format", moats_cfg.format)->check(CLI::IsMember({"table", "csv", "json"}));
  moats->add_option("-o,--output", moats_cfg.output, "Output file (default stdout)");
  moats->add_option("--svg", moats_cfg.svg, "Write k against farthest distance");

  PlotConfig plot_cfg;
  auto* plot = app.add_subcommand("plot", "SVG of step bound against farthest distance, one series per d");
  plot->add_option("--d", plot_cfg.ds, "Field parameters")->delimiter(',');
  plot->add_option("--k-max", plot_cfg.k_max, "Largest step for every series (default depends on d)");
  plot->add_option("--initial-boundary", plot_cfg.initial_boundary, "First sector boundary C0");
  plot->add_option("--max-boundary", plot_cfg.max_boundary, "Ceiling for the doubled boundary");
  plot->add_option("-o,--output", plot_cfg.output, "Output file (default stdout)");

  DensityConfig density_cfg;
  auto* density = app.add_subcommand("density", "Count primes of norm <= R^2 and compare with R^2/(4 ln R)");
  density->add_option("--d", density_cfg.d, "Field parameter")->required();
  density->add_option("--radius", density_cfg.radius, "R")->required();
  density->add_option("--format", density_cfg.format)->check(CLI::IsMember({"table", "csv", "json"}));
  density->add_option("-o,--output", density_cfg.output, "Output file (default stdout)");
  density->add_flag("--classes", density_cfg.classes, "Count rational primes per residue class");

  BenchConfig bench_cfg;
  auto* bench = app.add_subcommand("bench", "Time Delaunay + Kruskal against Kruskal on the complete graph");
  bench->add_option("--d", bench_cfg.d, "Field parameter");
  bench->add_option("--boundaries", bench_cfg.boundaries, "Sector boundaries to time")->delimiter(',');
  bench->add_option("--baseline-max", bench_cfg.baseline_max, "Largest prime count for the complete graph");
  bench->add_option("--slope-min", bench_cfg.slope_min, "Smallest prime count in the slope fit");
  bench->add_option("--repeats", bench_cfg.repeats, "Timed runs per size (median reported)");
  bench->add_option("-o,--output", bench_cfg.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  const std::string provenance = command_line(argc, argv);
  try {
    if (*primes) return run_primes(primes_cfg, provenance);
    if (*moats) return run_moats(moats_cfg, provenance);
    if (*plot) return run_plot(plot_cfg, provenance);
    if (*density) return run_density(density_cfg, provenance);
    if (*bench) return run_bench(bench_cfg, provenance);
  } catch (const ConfigError& e) {
    std::cerr << "qmoat: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "qmoat: " << e.what() << '\n';
    return 1;
  }
  return kExitInvalid;
}
