#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "redraw/context.hpp"
#include "redraw/errors.hpp"
#include "redraw/freese.hpp"
#include "redraw/io.hpp"
#include "redraw/layout.hpp"
#include "redraw/metrics.hpp"

namespace redraw::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

/// Raised when a result fails the hard checks that the engines guarantee.
class InvariantFailure : public Error {
 public:
  using Error::Error;
};

/// Input-side failure that is not a parse error (missing file, bad flag combination).
class InputError : public Error {
 public:
  using Error::Error;
};

enum class Format { kAuto, kEdges, kCxt, kJson, kSvg, kTikz };

const std::map<std::string, Format> kInputFormats{
    {"auto", Format::kAuto}, {"edges", Format::kEdges}, {"cxt", Format::kCxt}, {"json", Format::kJson}};
const std::map<std::string, Format> kOutputFormats{{"auto", Format::kAuto}, {"edges", Format::kEdges},
                                                   {"cxt", Format::kCxt},   {"json", Format::kJson},
                                                   {"svg", Format::kSvg},   {"tikz", Format::kTikz}};

Format format_from_extension(const fs::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".cxt") return Format::kCxt;
  if (ext == ".json") return Format::kJson;
  if (ext == ".svg") return Format::kSvg;
  if (ext == ".tikz" || ext == ".tex") return Format::kTikz;
  if (ext == ".edges" || ext == ".tsv" || ext == ".txt") return Format::kEdges;
  throw InputError("cannot infer the format of '" + path.string() + "'; pass it explicitly");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content, std::ostream& out) {
  if (path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << content;
}

struct Input {
  OrderedSet order;
  std::optional<DiagramDocument> document;
  std::optional<FormalContext> context;
};

Input load_input(const std::string& path, Format format) {
  if (format == Format::kAuto) format = format_from_extension(path);
  const std::string text = read_file(path);
  Input input;
  switch (format) {
    case Format::kEdges: input.order = parse_cover_edges(text); break;
    case Format::kCxt:
      input.context = parse_cxt(text);
      input.order = concept_lattice(*input.context);
      break;
    case Format::kJson:
      input.document = read_json(text);
      input.order = input.document->order;
      break;
    default: throw InputError("unsupported input format for '" + path + "'");
  }
  return input;
}

struct Options {
  LayoutParams redraw;
  FreeseParams freese;
  std::string seed = std::to_string(kDefaultSeed);
};

std::uint64_t resolve_seed(const std::string& text) {
  if (text == "random") {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError("--seed expects an unsigned integer or 'random'");
  }
  return value;
}

void add_layout_flags(CLI::App* cmd, Options& opt) {
  auto& p = opt.redraw;
  cmd->add_option("--K", p.max_iterations, "Maximal iterations per node/line step")->capture_default_str();
  cmd->add_option("--epsilon", p.epsilon, "Stop when the maximal force is at most this")->capture_default_str();
  cmd->add_option("--delta", p.damping, "Damping factor")->capture_default_str();
  cmd->add_option("--c-vert", p.c_vert, "Vertical force constant (optimal vertical distance)")->capture_default_str();
  cmd->add_option("--c-hor", p.c_hor, "Horizontal force constant")->capture_default_str();
  cmd->add_option("--c-par", p.c_par, "Parallel-line threshold")->capture_default_str();
  cmd->add_option("--c-ang", p.c_ang, "Small-angle threshold")->capture_default_str();
  cmd->add_option("--c-dist", p.c_dist, "Node-line distance threshold")->capture_default_str();
  cmd->add_option("--dim", p.initial_dim, "Initial dimension")->capture_default_str();
  cmd->add_option("--scale", p.horizontal_scale, "Final horizontal scaling factor")->capture_default_str();
  cmd->add_option("--cache-interval", p.cache_interval, "Recompute line-step sets every k-th iteration")
      ->capture_default_str();
  cmd->add_option("--c-attr", opt.freese.c_attr, "Freese attraction constant")->capture_default_str();
  cmd->add_option("--c-rep", opt.freese.c_rep, "Freese repulsion constant")->capture_default_str();
  cmd->add_option("--seed", opt.seed, "RNG seed, or 'random'")->capture_default_str();
}

void finalize_options(Options& opt) {
  const std::uint64_t seed = resolve_seed(opt.seed);
  opt.redraw.seed = seed;
  opt.freese.seed = seed;
  opt.freese.max_iterations = opt.redraw.max_iterations;
  opt.freese.epsilon = opt.redraw.epsilon;
  opt.freese.damping = opt.redraw.damping;
  try {
    opt.redraw.validate();
    opt.freese.validate();
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

/// Throttled progress display on the diagnostic stream.
class ProgressPrinter {
 public:
  explicit ProgressPrinter(std::ostream& err) : err_(err) {}

  void operator()(const ProgressEvent& e) {
    const auto now = Clock::now();
    if (now - last_ < std::chrono::milliseconds(100)) return;
    last_ = now;
    char buf[160];
    std::snprintf(buf, sizeof buf, "\rcycle %zu  dim %zu  %-9s iteration %5zu  max force %.6g   ", e.cycle + 1,
                  e.dim, to_string(e.step), e.iteration + 1, e.max_force);
    err_ << buf << std::flush;
    printed_ = true;
  }

  ~ProgressPrinter() {
    if (printed_) err_ << "\n";
  }

 private:
  std::ostream& err_;
  Clock::time_point last_{};
  bool printed_ = false;
};

struct RunOutput {
  DiagramDocument document;
  std::size_t cycles = 0;
  double seconds = 0.0;
};

RunOutput run_layout(const OrderedSet& order, const std::string& algo, const Options& opt,
                     const ProgressHook& hook) {
  const auto start = Clock::now();
  RunOutput result;
  result.document.order = order;
  DocumentMetadata& meta = result.document.metadata;
  meta.algorithm = algo;
  if (algo == "redraw") {
    const auto& p = opt.redraw;
    meta.seed = p.seed;
    meta.params = {{"K", static_cast<double>(p.max_iterations)},
                   {"epsilon", p.epsilon},
                   {"delta", p.damping},
                   {"c_vert", p.c_vert},
                   {"c_hor", p.c_hor},
                   {"c_par", p.c_par},
                   {"c_ang", p.c_ang},
                   {"c_dist", p.c_dist},
                   {"initial_dim", static_cast<double>(p.initial_dim)},
                   {"horizontal_scale", p.horizontal_scale},
                   {"cache_interval", static_cast<double>(p.cache_interval)}};
    auto layout = redraw_layout(order, p, RunOptions{hook});
    result.document.drawing = std::move(layout.drawing);
    result.cycles = layout.cycles;
  } else if (algo == "freese") {
    const auto& p = opt.freese;
    meta.seed = p.seed;
    meta.params = {{"K", static_cast<double>(p.max_iterations)},
                   {"epsilon", p.epsilon},
                   {"delta", p.damping},
                   {"c_attr", p.c_attr},
                   {"c_rep", p.c_rep}};
    Rng rng(p.seed);
    result.document.drawing = freese_layout(order, p, rng, StepOptions{hook});
    result.cycles = 1;
  } else {
    throw InputError("unknown algorithm '" + algo + "'");
  }
  result.seconds = std::chrono::duration<double>(Clock::now() - start).count();

  for (const auto& v : validate_drawing(order, result.document.drawing)) {
    if (v.kind == ViolationKind::kVertical) throw InvariantFailure("layout violates the vertical constraint: " + v.describe(order));
  }
  return result;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::size_t thread_cap() {
  std::size_t threads = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("REDRAW_THREADS")) {
    const long value = std::strtol(env, nullptr, 10);
    if (value >= 1) threads = std::min<std::size_t>(threads, static_cast<std::size_t>(value));
  }
  return threads;
}

int cmd_layout(const std::string& in, const std::string& format, const std::string& algo, Options& opt,
               const std::string& out_json, const std::string& out_svg, const std::string& out_tikz,
               bool progress, std::ostream& out, std::ostream& err) {
  finalize_options(opt);
  const Input input = load_input(in, kInputFormats.at(format));
  std::optional<ProgressPrinter> printer;
  ProgressHook hook;
  if (progress) {
    printer.emplace(err);
    hook = [&printer](const ProgressEvent& e) { (*printer)(e); };
  }
  const RunOutput result = run_layout(input.order, algo, opt, hook);
  printer.reset();

  const bool json_to_stdout = out_json == "-" || (out_json.empty() && out_svg.empty() && out_tikz.empty());
  if (json_to_stdout) {
    out << write_json(result.document);
  } else if (!out_json.empty()) {
    write_file(out_json, write_json(result.document), out);
  }
  if (!out_svg.empty()) write_file(out_svg, write_svg(result.document), out);
  if (!out_tikz.empty()) write_file(out_tikz, write_tikz(result.document), out);

  char buf[200];
  std::snprintf(buf, sizeof buf, "layout: algorithm=%s elements=%zu edges=%zu cycles=%zu time=%.3fs\n", algo.c_str(),
                input.order.size(), input.order.covers().pairs.size(), result.cycles, result.seconds);
  (json_to_stdout ? err : out) << buf;
  return kExitOk;
}

int cmd_metrics(const std::string& in, bool as_json, std::ostream& out) {
  const DiagramDocument doc = read_json(read_file(in));
  const MetricsReport report = compute_metrics(doc.order, doc.drawing);
  out << (as_json ? metrics_to_json(report) : to_key_value(report));
  return kExitOk;
}

int cmd_convert(const std::string& in, const std::string& from, const std::string& out_path, const std::string& to,
                std::ostream& out) {
  const Input input = load_input(in, kInputFormats.at(from));
  Format target = kOutputFormats.at(to);
  if (target == Format::kAuto) {
    if (out_path == "-") throw InputError("--to is required when writing to standard output");
    target = format_from_extension(out_path);
  }
  std::string content;
  switch (target) {
    case Format::kEdges: content = write_cover_edges(input.order); break;
    case Format::kCxt:
      if (!input.context) throw InputError("cxt output requires a cxt input");
      content = write_cxt(*input.context);
      break;
    case Format::kJson:
    case Format::kSvg:
    case Format::kTikz: {
      if (!input.document) throw InputError("json, svg and tikz output need coordinates; run 'layout' first");
      if (!satisfies_vertical_constraint(input.document->order, input.document->drawing)) {
        throw InputError("input drawing violates the vertical constraint");
      }
      content = target == Format::kJson  ? write_json(*input.document)
                : target == Format::kSvg ? write_svg(*input.document)
                                         : write_tikz(*input.document);
      break;
    }
    default: throw InputError("unsupported output format");
  }
  write_file(out_path, content, out);
  return kExitOk;
}

struct CorpusJob {
  fs::path path;
  std::string algo;
};

struct CorpusRow {
  std::string order;
  std::string algo;
  MetricsReport metrics;
  double seconds = 0.0;
  std::string error;
  int exit_code = kExitOk;
};

int cmd_corpus(const std::string& dir, std::vector<std::string> algos, Options& opt, const std::string& out_csv,
               const std::string& out_dir, std::ostream& out, std::ostream& err) {
  finalize_options(opt);
  if (algos.empty()) algos = {"redraw", "freese"};
  if (!fs::is_directory(dir)) throw InputError("'" + dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = entry.path().extension().string();
    if (ext == ".edges" || ext == ".tsv" || ext == ".cxt" || ext == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (!out_dir.empty()) fs::create_directories(out_dir);

  std::vector<CorpusJob> jobs;
  for (const auto& f : files) {
    for (const auto& a : algos) jobs.push_back({f, a});
  }
  std::vector<CorpusRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      CorpusRow& row = rows[i];
      row.order = jobs[i].path.filename().string();
      row.algo = jobs[i].algo;
      try {
        const Input input = load_input(jobs[i].path.string(), Format::kAuto);
        const RunOutput result = run_layout(input.order, jobs[i].algo, opt, {});
        row.metrics = compute_metrics(result.document.order, result.document.drawing);
        row.seconds = result.seconds;
        if (!out_dir.empty()) {
          const fs::path target = fs::path(out_dir) / (jobs[i].path.stem().string() + "." + jobs[i].algo + ".json");
          write_file(target.string(), write_json(result.document), out);
        }
      } catch (const InvariantFailure& e) {
        row.error = e.what();
        row.exit_code = kExitInternalError;
      } catch (const Error& e) {
        row.error = e.what();
        row.exit_code = kExitInputError;
      }
    }
  };
  const std::size_t n_threads = std::min(thread_cap(), std::max<std::size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "order,algorithm,elements,edges,crossings,min_node_line_distance,distinct_edge_directions,"
         "coincident_nodes,violations,vertical_ok,rtd,seconds\n";
  int exit_code = kExitOk;
  std::map<std::string, std::pair<double, std::size_t>> crossing_totals;
  for (const auto& row : rows) {
    if (row.exit_code != kExitOk) {
      err << "corpus: " << row.order << " (" << row.algo << "): " << row.error << "\n";
      exit_code = std::max(exit_code, row.exit_code);
      continue;
    }
    const auto& m = row.metrics;
    csv << csv_field(row.order) << ',' << row.algo << ',' << m.elements << ',' << m.edges << ',' << m.crossings << ','
        << (m.min_node_line_distance ? format_number(*m.min_node_line_distance) : "") << ','
        << m.distinct_edge_directions << ',' << m.coincident_nodes << ',' << m.violations << ','
        << (m.vertical_ok ? "true" : "false") << ',' << (m.rtd ? format_number(*m.rtd) : "") << ','
        << format_number(row.seconds) << '\n';
    auto& [sum, count] = crossing_totals[row.algo];
    sum += static_cast<double>(m.crossings);
    ++count;
  }
  write_file(out_csv.empty() ? "-" : out_csv, csv.str(), out);
  for (const auto& algo : algos) {
    const auto it = crossing_totals.find(algo);
    if (it == crossing_totals.end() || it->second.second == 0) continue;
    err << "corpus: " << algo << " mean crossings " << format_number(it->second.first / static_cast<double>(it->second.second))
        << " over " << it->second.second << " orders\n";
  }
  return exit_code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Force-directed drawing of order diagrams", "redraw"};
  app.require_subcommand(1);

  Options layout_opt;
  std::string in, format = "auto", algo = "redraw", out_json, out_svg, out_tikz;
  bool progress = false;
  auto* layout = app.add_subcommand("layout", "Compute a drawing of an ordered set");
  layout->add_option("--in", in, "Input file (.edges, .cxt or .json)")->required();
  layout->add_option("--format", format, "Input format")
      ->check(CLI::IsMember({"auto", "edges", "cxt", "json"}))
      ->capture_default_str();
  layout->add_option("--algo", algo, "Layout algorithm")
      ->check(CLI::IsMember({"redraw", "freese"}))
      ->capture_default_str();
  layout->add_option("--out-json", out_json, "Write the drawing as JSON ('-' for stdout)");
  layout->add_option("--out-svg", out_svg, "Write the drawing as SVG");
  layout->add_option("--out-tikz", out_tikz, "Write the drawing as a TikZ picture");
  layout->add_flag("--progress", progress, "Show progress on stderr");
  add_layout_flags(layout, layout_opt);

  std::string metrics_in;
  bool metrics_json = false;
  auto* metrics = app.add_subcommand("metrics", "Report readability metrics of a JSON drawing");
  metrics->add_option("--in", metrics_in, "Drawing in JSON format")->required();
  metrics->add_flag("--json", metrics_json, "Print the report as JSON");

  std::string conv_in, conv_from = "auto", conv_out, conv_to = "auto";
  auto* convert = app.add_subcommand("convert", "Transcode between file formats");
  convert->add_option("--in", conv_in, "Input file")->required();
  convert->add_option("--from", conv_from, "Input format")
      ->check(CLI::IsMember({"auto", "edges", "cxt", "json"}))
      ->capture_default_str();
  convert->add_option("--out", conv_out, "Output file ('-' for stdout)")->required();
  convert->add_option("--to", conv_to, "Output format")
      ->check(CLI::IsMember({"auto", "edges", "cxt", "json", "svg", "tikz"}))
      ->capture_default_str();

  Options corpus_opt;
  std::string corpus_dir, corpus_csv, corpus_out_dir;
  std::vector<std::string> corpus_algos;
  auto* corpus = app.add_subcommand("corpus", "Lay out every order in a directory and summarise metrics as CSV");
  corpus->add_option("--dir", corpus_dir, "Directory with .edges, .cxt or .json files")->required();
  corpus->add_option("--algo", corpus_algos, "Algorithm(s); repeat the flag for several (default: both)")
      ->check(CLI::IsMember({"redraw", "freese"}));
  corpus->add_option("--out-csv", corpus_csv, "CSV output file (default: stdout)");
  corpus->add_option("--out-dir", corpus_out_dir, "Also write every drawing as JSON into this directory");
  add_layout_flags(corpus, corpus_opt);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*layout) return cmd_layout(in, format, algo, layout_opt, out_json, out_svg, out_tikz, progress, out, err);
    if (*metrics) return cmd_metrics(metrics_in, metrics_json, out);
    if (*convert) return cmd_convert(conv_in, conv_from, conv_out, conv_to, out);
    if (*corpus) return cmd_corpus(corpus_dir, corpus_algos, corpus_opt, corpus_csv, corpus_out_dir, out, err);
  } catch (const InvariantFailure& e) {
    err << "redraw: internal error: " << e.what() << "\n";
    return kExitInternalError;
  } catch (const InfeasibleClamp& e) {
    err << "redraw: internal error: " << e.what() << "\n";
    return kExitInternalError;
  } catch (const DegenerateGeometry& e) {
    err << "redraw: internal error: " << e.what() << "\n";
    return kExitInternalError;
  } catch (const Error& e) {
    err << "redraw: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "redraw: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace redraw::cli
