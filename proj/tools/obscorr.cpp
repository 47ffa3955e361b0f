// obscorr: command-line front end.
//
//   obscorr ingest LOG.csv --out-dir DIR [--n-valid N] [--sub-block S]
//                          [--internal-cidrs LIST] [--key-file KEY]
//   obscorr quantities CAPTURE...
//   obscorr distribution CAPTURE... [--quantity NAME]
//   obscorr correlate CAPTURE... --outposts DIR [--bins I,J] [--capture-time T]
//   obscorr synth --out-dir DIR [--seed N] [...]
//   obscorr plotdata REPORT.json [--bin I]
//
// CAPTURE is an ingest output directory or one or more .hstm files.
// Exit codes: 0 ok, 1 usage, 2 data quality, 3 I/O.

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "obscorr/address.hpp"
#include "obscorr/anonymize.hpp"
#include "obscorr/correlation.hpp"
#include "obscorr/distributions.hpp"
#include "obscorr/error.hpp"
#include "obscorr/hypersparse_io.hpp"
#include "obscorr/ingest.hpp"
#include "obscorr/json_io.hpp"
#include "obscorr/month.hpp"
#include "obscorr/quantities.hpp"
#include "obscorr/synth.hpp"

namespace fs = std::filesystem;
using namespace obscorr;

namespace {

constexpr const char* kManifestName = "ingest.json";

std::optional<AnonymizationKey> resolve_key(const std::string& key_file) {
  if (!key_file.empty()) return load_key_file(key_file);
  if (const char* env = std::getenv(kKeyFileEnv); env && *env) return load_key_file(env);
  return std::nullopt;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataQualityError(path.string() + ": " + e.what());
  }
}

// Report goes to DIR/name when --out-dir is given, stdout otherwise.
void emit(const std::string& out_dir, const std::string& name, const std::string& text) {
  if (out_dir.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(out_dir);
  write_text(fs::path(out_dir) / name, text);
}

struct Capture {
  std::vector<std::string> files;
  std::vector<TrafficMatrix> windows;
  std::string id_space = kRawIdSpace;
  std::string capture_time;  // empty when unknown
};

Capture load_capture(const std::vector<std::string>& inputs) {
  Capture c;
  bool have_manifest = false;
  for (const auto& input : inputs) {
    if (!fs::is_directory(input)) {
      c.files.push_back(input);
      continue;
    }
    const auto manifest = read_json(fs::path(input) / kManifestName);
    const auto id_space = manifest.value("id_space", std::string(kRawIdSpace));
    if (have_manifest && id_space != c.id_space) {
      throw UsageError("captures use different identifier spaces: " + c.id_space + " vs " + id_space);
    }
    have_manifest = true;
    c.id_space = id_space;
    if (c.capture_time.empty()) c.capture_time = manifest.value("capture_time", std::string());
    for (const auto& w : manifest.at("windows")) {
      c.files.push_back((fs::path(input) / w.at("file").get<std::string>()).string());
    }
  }
  for (const auto& f : c.files) c.windows.push_back(load_binary(f));
  return c;
}

TrafficMatrix combined(const Capture& c) {
  if (c.windows.empty()) throw DataQualityError("capture contains no complete window");
  return hierarchical_sum(c.windows);
}

DegreeVector degree_view(const TrafficMatrix& a, const std::string& quantity) {
  if (quantity == "source_packets") return source_packets(a);
  if (quantity == "source_fanout") return source_fanout(a);
  if (quantity == "destination_packets") return destination_packets(a);
  if (quantity == "destination_fanin") return destination_fanin(a);
  throw UsageError("unknown quantity '" + quantity + "'");
}

std::uint32_t parse_source_id(const std::string& text) {
  if (text.find('.') != std::string::npos) return ip_to_index(text);
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) throw ParseError("bad source id", text);
  return v;
}

std::vector<OutpostWindow> load_outposts(const fs::path& dir, const std::optional<AnonymizationKey>& key) {
  if (!fs::is_directory(dir)) throw IoError("outpost directory not found: " + dir.string());
  static const std::regex kMonthFile(R"(\d{4}-\d{2}\.txt)");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && std::regex_match(e.path().filename().string(), kMonthFile)) {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::optional<Anonymizer> anon;
  if (key) anon.emplace(*key);
  const std::string id_space = key ? key->id_space() : kRawIdSpace;

  std::vector<OutpostWindow> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw IoError("cannot read " + f.string());
    std::vector<std::uint32_t> ids;
    std::string line;
    while (std::getline(in, line)) {
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#') continue;
      const auto e = line.find_last_not_of(" \t\r");
      const auto id = parse_source_id(line.substr(b, e - b + 1));
      ids.push_back(anon ? (*anon)(id) : id);
    }
    out.push_back(OutpostWindow::from_ids(f.stem().string(), std::move(ids), id_space));
  }
  if (out.empty()) throw UsageError("no YYYY-MM.txt files in " + dir.string());
  return out;
}

std::vector<int> parse_bins(const std::string& list) {
  std::vector<int> bins;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      bins.push_back(std::stoi(item, &used));
      if (used != item.size() || bins.back() < 0) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("bad bin list '" + list + "'");
    }
  }
  return bins;
}

// ---------------------------------------------------------------------------

struct IngestArgs {
  std::string log;
  std::string out_dir;
  std::uint64_t n_valid = std::uint64_t{1} << 20;
  std::uint64_t sub_block = std::uint64_t{1} << 10;
  std::string internal_cidrs;
  std::string key_file;
};

int run_ingest(const IngestArgs& a) {
  const WindowSpec spec{a.n_valid, a.sub_block};
  spec.validate();
  const auto filter = QuadrantFilter::parse(a.internal_cidrs);
  const auto key = resolve_key(a.key_file);
  const auto log = parse_packet_log(fs::path(a.log));
  for (auto n : log.malformed_lines) std::cerr << "obscorr: malformed line " << n << '\n';

  const auto built = window_and_build(log.records, spec, filter, key);
  fs::create_directories(a.out_dir);
  Json windows = Json::array();
  for (std::size_t k = 0; k < built.windows.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "window_%05zu.hstm", k);
    save_binary(fs::path(a.out_dir) / name, built.windows[k]);
    windows.push_back({{"file", name},
                       {"total_packets", built.windows[k].total_packets()},
                       {"nnz", built.windows[k].nnz()}});
  }
  Json m;
  m["source"] = fs::path(a.log).filename().string();
  m["id_space"] = key ? key->id_space() : std::string(kRawIdSpace);
  m["capture_time"] = log.records.empty() ? std::string() : utc_label(log.records.front().timestamp_us);
  m["n_valid"] = a.n_valid;
  m["sub_block"] = a.sub_block;
  m["data_lines"] = log.data_lines;
  m["malformed"] = log.malformed;
  m["discarded"] = built.discarded;
  m["valid_packets"] = built.valid_packets;
  m["remainder"] = built.remainder;
  m["windows"] = std::move(windows);
  write_text(fs::path(a.out_dir) / kManifestName, m.dump(2) + "\n");
  std::cerr << "obscorr: " << built.windows.size() << " window(s), " << built.remainder
            << " packet(s) in trailing partial window\n";
  return 0;
}

int run_quantities(const std::vector<std::string>& inputs, const std::string& out_dir) {
  const auto c = load_capture(inputs);
  Json windows = Json::array();
  for (std::size_t k = 0; k < c.windows.size(); ++k) {
    Json w;
    w["file"] = fs::path(c.files[k]).filename().string();
    w.update(to_json(aggregate(c.windows[k])));
    windows.push_back(std::move(w));
  }
  Json j;
  j["id_space"] = c.id_space;
  j["windows"] = std::move(windows);
  j["combined"] = to_json(aggregate(combined(c)));
  emit(out_dir, "quantities.json", j.dump(2) + "\n");
  return 0;
}

int run_distribution(const std::vector<std::string>& inputs, const std::string& quantity,
                     const std::string& out_dir) {
  const auto c = load_capture(inputs);
  const auto b = bin_degrees(degree_view(combined(c), quantity));
  Json j;
  j["quantity"] = quantity;
  j.update(distribution_report(b, fit_zipf_mandelbrot(b)));
  emit(out_dir, "distribution.json", j.dump(2) + "\n");
  return 0;
}

struct CorrelateArgs {
  std::vector<std::string> inputs;
  std::string outposts;
  std::string bins;
  std::string capture_time;
  std::string key_file;
  std::string out_dir;
};

int run_correlate(const CorrelateArgs& a) {
  const auto c = load_capture(a.inputs);
  const std::string capture_time = a.capture_time.empty() ? c.capture_time : a.capture_time;
  if (capture_time.empty()) throw UsageError("capture time unknown; pass --capture-time");

  SourceSet telescope{capture_time, c.id_space, source_packets(combined(c))};
  const auto outposts = load_outposts(a.outposts, resolve_key(a.key_file));

  std::vector<int> bins;
  const bool explicit_bins = !a.bins.empty();
  if (explicit_bins) {
    bins = parse_bins(a.bins);
  } else {
    const auto b = bin_degrees(telescope.sources);
    for (std::size_t i = 0; i < b.num_bins(); ++i) {
      if (b.counts()[i] > 0) bins.push_back(static_cast<int>(i));
    }
  }

  Json curves = Json::array();
  for (int bin : bins) {
    auto curve = temporal_curve(telescope, bin, outposts);
    curve.reference_time = month_coordinate(capture_time);
    try {
      curves.push_back(correlation_report(curve, fit_all(curve)));
    } catch (const DegenerateFitError&) {
      if (explicit_bins) throw;
      auto j = to_json(curve);
      j["fits"] = nullptr;
      curves.push_back(std::move(j));
    }
  }
  Json j;
  j["id_space"] = c.id_space;
  j["capture_time"] = capture_time;
  j["t0"] = month_coordinate(capture_time);
  j["telescope_sources"] = telescope.sources.size();
  j["telescope_packets"] = telescope.sources.sum();
  j["outpost_months"] = outposts.size();
  j["curves"] = std::move(curves);
  emit(a.out_dir, "correlation.json", j.dump(2) + "\n");
  return 0;
}

int run_synth(SynthConfig cfg, const std::string& share_law, const std::string& out_dir) {
  cfg.share_law = parse_share_law(share_law);
  const auto data = synth_two_site(cfg);
  const fs::path dir(out_dir);
  fs::create_directories(dir / "outposts");
  {
    std::ofstream log(dir / "packets.csv", std::ios::binary);
    if (!log) throw IoError("cannot write " + (dir / "packets.csv").string());
    write_packet_log(log, data);
    if (!log) throw IoError("write failed: " + (dir / "packets.csv").string());
  }
  for (const auto& o : data.outposts) {
    std::string text;
    for (auto id : o.sources) text += index_to_ip(id) + "\n";
    write_text(dir / "outposts" / (o.label + ".txt"), text);
  }
  write_text(dir / "ground_truth.json", ground_truth(data).dump(2) + "\n");
  return 0;
}

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run_plotdata(const std::string& report, int bin, const std::string& out_dir) {
  const auto j = read_json(report);
  std::string csv;
  if (j.contains("bins")) {
    csv = "degree_lower,count,p,P,D,model_p\n";
    for (const auto& b : j.at("bins")) {
      csv += std::to_string(b.at("degree_lower").get<std::uint64_t>()) + "," +
             std::to_string(b.at("count").get<std::uint64_t>()) + "," +
             csv_number(b.at("p").get<double>()) + "," + csv_number(b.at("P").get<double>()) + "," +
             csv_number(b.at("D").get<double>()) + "," + csv_number(b.at("model_p").get<double>()) + "\n";
    }
  } else if (j.contains("curves")) {
    const Json* curve = nullptr;
    for (const auto& c : j.at("curves")) {
      if (bin < 0 || c.at("brightness_exponent").get<int>() == bin) {
        curve = &c;
        break;
      }
    }
    if (!curve) throw UsageError("report has no curve for bin " + std::to_string(bin));
    const double t0 = curve->at("reference_time").get<double>();
    const auto& fits = curve->at("fits");
    csv = "t,fraction,modified_cauchy,cauchy,gaussian\n";
    for (const auto& p : curve->at("points")) {
      const double t = p.at("t").get<double>();
      csv += csv_number(t) + "," + csv_number(p.at("fraction").get<double>());
      if (fits.is_null()) {
        csv += ",,,\n";
        continue;
      }
      const auto& mc = fits.at("modified_cauchy");
      const auto& ca = fits.at("cauchy");
      const auto& ga = fits.at("gaussian");
      csv += "," + csv_number(mc.at("peak").get<double>() *
                              modified_cauchy(t, t0, mc.at("alpha").get<double>(), mc.at("beta").get<double>()));
      csv += "," + csv_number(ca.at("peak").get<double>() * cauchy_model(t, t0, ca.at("gamma").get<double>()));
      csv += "," + csv_number(ga.at("peak").get<double>() * gaussian_model(t, t0, ga.at("sigma").get<double>()));
      csv += "\n";
    }
  } else {
    throw DataQualityError(report + ": not a distribution or correlation report");
  }
  emit(out_dir, "plot.csv", csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traffic-matrix statistics and cross-site source correlation"};
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* ing = app.add_subcommand("ingest", "Window a packet log into traffic matrices");
  ing->add_option("log", ingest.log, "CSV packet log (timestamp,src,dst)")->required();
  ing->add_option("--out-dir", ingest.out_dir, "Output directory")->required();
  ing->add_option("--n-valid", ingest.n_valid, "Valid packets per window (power of two)");
  ing->add_option("--sub-block", ingest.sub_block, "Packets per leaf matrix (power of two)");
  ing->add_option("--internal-cidrs", ingest.internal_cidrs, "Comma-separated internal prefixes");
  ing->add_option("--key-file", ingest.key_file,
                  std::string("Anonymization key (default: $") + kKeyFileEnv + ")");

  std::vector<std::string> inputs;
  std::string out_dir;

  auto* qty = app.add_subcommand("quantities", "Aggregate network quantities as JSON");
  qty->add_option("capture", inputs, "Ingest directory or .hstm files")->required();
  qty->add_option("--out-dir", out_dir, "Write quantities.json here instead of stdout");

  std::string quantity = "source_packets";
  auto* dist = app.add_subcommand("distribution", "Binned degree distribution and Zipf-Mandelbrot fit");
  dist->add_option("capture", inputs, "Ingest directory or .hstm files")->required();
  dist->add_option("--quantity", quantity, "source_packets, source_fanout, destination_packets or destination_fanin");
  dist->add_option("--out-dir", out_dir, "Write distribution.json here instead of stdout");

  CorrelateArgs corr;
  auto* cor = app.add_subcommand("correlate", "Telescope/outpost overlap curves and fits");
  cor->add_option("capture", corr.inputs, "Ingest directory or .hstm files")->required();
  cor->add_option("--outposts", corr.outposts, "Directory of YYYY-MM.txt source lists")->required();
  cor->add_option("--bins", corr.bins, "Comma-separated brightness bins (default: all)");
  cor->add_option("--capture-time", corr.capture_time, "Capture time, YYYY-MM-DD[THH:MM:SS]");
  cor->add_option("--key-file", corr.key_file,
                  std::string("Key applied to outpost ids (default: $") + kKeyFileEnv + ")");
  cor->add_option("--out-dir", corr.out_dir, "Write correlation.json here instead of stdout");

  SynthConfig cfg;
  std::string share_law = "brightness";
  auto* syn = app.add_subcommand("synth", "Generate a synthetic telescope/outpost dataset");
  syn->add_option("--out-dir", out_dir, "Output directory")->required();
  syn->add_option("--seed", cfg.seed, "Random seed");
  syn->add_option("--sources", cfg.n_sources, "Telescope sources");
  syn->add_option("--zm-alpha", cfg.zm_alpha, "Brightness Zipf-Mandelbrot alpha");
  syn->add_option("--zm-delta", cfg.zm_delta, "Brightness Zipf-Mandelbrot delta");
  syn->add_option("--support-max", cfg.support_max, "Largest brightness");
  syn->add_option("--n-valid", cfg.n_valid, "Window size for the brightness share law");
  syn->add_option("--months", cfg.months, "Outpost months");
  syn->add_option("--drift-alpha", cfg.drift_alpha, "Temporal decay exponent");
  syn->add_option("--drift-beta", cfg.drift_beta, "Temporal decay scale");
  syn->add_option("--share-law", share_law, "brightness or constant");
  syn->add_option("--base-rate", cfg.base_rate, "Share probability under the constant law");
  syn->add_option("--background", cfg.outpost_background, "Outpost-only sources per month");
  syn->add_option("--capture-date", cfg.capture_date, "Telescope capture date YYYY-MM-DD");
  syn->add_option("--internal-cidr", cfg.internal_cidr, "Telescope darkspace prefix");

  std::string report;
  int bin = -1;
  auto* plot = app.add_subcommand("plotdata", "CSV series from a distribution or correlation report");
  plot->add_option("report", report, "distribution.json or correlation.json")->required();
  plot->add_option("--bin", bin, "Brightness bin of the curve (default: first)");
  plot->add_option("--out-dir", out_dir, "Write plot.csv here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ErrorKind::usage);
  }

  try {
    if (*ing) return run_ingest(ingest);
    if (*qty) return run_quantities(inputs, out_dir);
    if (*dist) return run_distribution(inputs, quantity, out_dir);
    if (*cor) return run_correlate(corr);
    if (*syn) return run_synth(cfg, share_law, out_dir);
    if (*plot) return run_plotdata(report, bin, out_dir);
  } catch (const Error& e) {
    std::cerr << "obscorr: " << e.what() << '\n';
    return e.exit_code();
  } catch (const fs::filesystem_error& e) {
    std::cerr << "obscorr: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::io);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "obscorr: malformed report: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::data_quality);
  }
  return static_cast<int>(ErrorKind::usage);
}
