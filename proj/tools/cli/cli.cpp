#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "../verify/checks.hpp"
#include "poisonlab/errors.hpp"

namespace poisonlab::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& key, const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError(key, "empty list entry in '" + value + "'");
    out.push_back(item);
  }
  if (out.empty()) throw ConfigError(key, "empty list");
  return out;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  int base = 10;
  std::string_view digits = text;
  if (digits.starts_with("0x") || digits.starts_with("0X")) {
    base = 16;
    digits.remove_prefix(2);
  }
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v, base);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
    throw ConfigError(key, "'" + text + "' is not a nonnegative integer");
  return v;
}

double parse_real(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key, "'" + text + "' is not a real number");
  }
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(key, "'" + text + "' is not true/false");
}

template <class T, class F>
std::string join(const std::vector<T>& items, F&& fmt) {
  std::string out;
  for (std::size_t j = 0; j < items.size(); ++j) out += (j ? "," : "") + fmt(items[j]);
  return out;
}

bool known_learner(const std::string& id) {
  if (id.starts_with("public-")) return known_learner(id.substr(7));
  for (const std::string& k : learner_ids())
    if (k == id) return true;
  return false;
}

bool known_adversary(const std::string& id) {
  if (id == "oblivious") return true;
  for (const std::string& k : adversary_ids())
    if (k == id) return true;
  return false;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string opt_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

std::string meta(const ExcessEstimate& e, const std::string& key) {
  const auto it = e.metadata.find(key);
  return it == e.metadata.end() ? std::string() : it->second;
}

std::size_t sample_size_for(const RunConfig& cfg, const Fraction& eta) {
  if (!cfg.sizes.empty()) return cfg.sizes.front();
  return static_cast<std::size_t>(
      std::ceil(cfg.size_factor * static_cast<double>(eta.den()) / static_cast<double>(eta.num()) - 1e-9));
}

SweepGrid grid_of(const RunConfig& cfg) {
  SweepGrid g;
  g.etas = cfg.etas;
  g.dims = cfg.dims;
  g.sizes = cfg.sizes;
  g.size_factor = cfg.size_factor;
  g.learners = cfg.learners;
  g.adversaries = cfg.adversaries;
  g.biases = cfg.biases;
  g.trials = cfg.trials;
  g.seed = cfg.seed;
  return g;
}

ResultRow row_of(const SweepRow& s, const RunConfig& cfg) {
  ResultRow r;
  r.command = to_string(cfg.command);
  r.estimate = s.excess;
  if (s.error.empty()) {
    r.loss = s.loss;
    r.bayes = s.bayes;
  }
  r.bound_name = s.bound_name;
  r.bound_value = s.bound;
  r.pass = s.pass;
  r.error = s.error;
  r.config_hash = config_hash(cfg);
  return r;
}

std::vector<ResultRow> rows_of(const std::vector<SweepRow>& rows, const RunConfig& cfg) {
  std::vector<ResultRow> out;
  for (const SweepRow& s : rows) out.push_back(row_of(s, cfg));
  return out;
}

RunConfig first_cell(const RunConfig& cfg) {
  RunConfig one = cfg;
  one.etas = {cfg.etas.front()};
  one.dims = {cfg.dims.front()};
  one.sizes = cfg.sizes.empty() ? std::vector<std::size_t>{} : std::vector<std::size_t>{cfg.sizes.front()};
  one.learners = {cfg.learners.front()};
  one.adversaries = {cfg.adversaries.front()};
  one.biases = {cfg.biases.front()};
  return one;
}

std::vector<ResultRow> run_lower_bound(const RunConfig& cfg) {
  const Fraction eta = cfg.etas.front();
  const std::size_t d = cfg.dims.front();
  const std::size_t n = sample_size_for(cfg, eta);
  ResultRow r;
  r.command = to_string(cfg.command);
  r.config_hash = config_hash(cfg);
  r.bound_name = "lower";
  const std::string description = "lower|eta=" + eta.to_string() + "|d=" + std::to_string(d) + "|n=" + std::to_string(n);
  try {
    const auto learner = make_learner_by_id(cfg.learners.front(), d, eta);
    const auto rep =
        lower_bound_experiment(*learner, eta, d, n, 0, cfg.trials, RandomSource(cfg.seed, stable_hash(description)),
                               cfg.threads);
    r.estimate = rep.estimate;
    r.bound_value = rep.threshold;
    r.pass = rep.pass;
  } catch (const std::exception& e) {
    r.error = e.what();
    r.pass = false;
    r.estimate.seed = cfg.seed;
  }
  r.estimate.metadata = {{"d", std::to_string(d)},      {"eta", eta.to_string()},
                         {"n", std::to_string(n)},      {"learner", cfg.learners.front()},
                         {"adversary", "oblivious"},    {"bias", "hard"}};
  return {r};
}

std::vector<ResultRow> run_curve(const RunConfig& cfg, std::ostream& err) {
  const Fraction eta = cfg.etas.front();
  const std::size_t d = cfg.dims.front();
  if (!(eta * static_cast<std::int64_t>(d) < Fraction(1, 1))) throw ConfigError("eta", "curve needs d * eta < 1");
  std::vector<std::size_t> sizes = cfg.sizes;
  if (sizes.empty()) sizes = {128, 256, 512, 1024, 2048, 4096};
  const auto learner = make_learner_by_id(cfg.learners.front(), d, eta);
  const PoisoningSchemeD scheme = lift_scheme(build_scheme_1d(eta * static_cast<std::int64_t>(d)).scheme, d);

  std::vector<ResultRow> rows;
  double best_floor = -std::numeric_limits<double>::infinity();
  std::string best_u;
  for (const auto& [u, w] : hard_support(scheme)) {
    std::string label;
    for (std::size_t i = 0; i < u.dim(); ++i) label += (i ? ";" : "") + format_real(u[i]);
    const auto rep = learning_curve_experiment(*learner, u, scheme, sizes, cfg.trials,
                                               RandomSource(cfg.seed, stable_hash("curve|" + eta.to_string())),
                                               cfg.threads);
    double floor = std::numeric_limits<double>::infinity();
    for (const auto& point : rep.curve) {
      ResultRow r;
      r.command = to_string(cfg.command);
      r.config_hash = config_hash(cfg);
      r.estimate = point.excess;
      r.estimate.metadata["bias"] = label;
      r.estimate.metadata["eta"] = eta.to_string();
      r.bound_name = "curve";
      r.bound_value = rep.threshold;
      r.pass = point.excess.mean >= rep.threshold;
      floor = std::min(floor, point.excess.mean);
      rows.push_back(std::move(r));
    }
    if (floor > best_floor) {
      best_floor = floor;
      best_u = label;
    }
  }
  err << "curve: best bias " << best_u << " keeps excess >= " << format_real(best_floor) << " at every n\n";
  return rows;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Verify: return "verify";
    case Command::Run: return "run";
    case Command::Sweep: return "sweep";
    case Command::AttackEval: return "attack-eval";
    case Command::Curve: return "curve";
  }
  return "verify";
}

Command command_from_string(const std::string& text) {
  for (Command c : {Command::Verify, Command::Run, Command::Sweep, Command::AttackEval, Command::Curve})
    if (to_string(c) == text) return c;
  throw ConfigError("command", "unknown command '" + text + "'");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{"adversary", "bias", "command", "d",     "eta",  "format", "inject_fault",
                                             "learner",   "n",    "out",     "seed",  "size_factor", "threads", "trials"};
  return keys;
}

RunConfig config_from_pairs(const std::map<std::string, std::string>& pairs) {
  RunConfig cfg;
  for (const auto& [key, value] : pairs) {
    if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end())
      throw ConfigError(key, "unknown key");
    if (key == "command") {
      cfg.command = command_from_string(value);
    } else if (key == "eta") {
      cfg.etas.clear();
      for (const std::string& item : split_list(key, value)) {
        Fraction f;
        try {
          f = Fraction::parse(item);
        } catch (const std::exception& e) {
          throw ConfigError(key, "'" + item + "' is not a fraction or decimal");
        }
        if (!(f > Fraction(0, 1) && f < Fraction(1, 1))) throw ConfigError(key, item + " is outside (0, 1)");
        cfg.etas.push_back(f);
      }
    } else if (key == "d") {
      cfg.dims.clear();
      for (const std::string& item : split_list(key, value)) {
        const auto d = parse_unsigned(key, item);
        if (d < 1 || d > 20) throw ConfigError(key, "dimension must be in [1, 20]");
        cfg.dims.push_back(d);
      }
    } else if (key == "n") {
      cfg.sizes.clear();
      for (const std::string& item : split_list(key, value)) {
        const auto n = parse_unsigned(key, item);
        if (n < 1) throw ConfigError(key, "sample size must be >= 1");
        cfg.sizes.push_back(n);
      }
    } else if (key == "size_factor") {
      cfg.size_factor = parse_real(key, value);
      if (!(cfg.size_factor > 0.0)) throw ConfigError(key, "must be positive");
    } else if (key == "trials") {
      cfg.trials = parse_unsigned(key, value);
      if (cfg.trials < 1) throw ConfigError(key, "must be >= 1");
    } else if (key == "seed") {
      cfg.seed = parse_unsigned(key, value);
    } else if (key == "learner") {
      cfg.learners = split_list(key, value);
      for (const std::string& id : cfg.learners)
        if (!known_learner(id)) throw ConfigError(key, "unknown learner '" + id + "'");
    } else if (key == "adversary") {
      cfg.adversaries = split_list(key, value);
      for (const std::string& id : cfg.adversaries)
        if (!known_adversary(id)) throw ConfigError(key, "unknown adversary '" + id + "'");
    } else if (key == "bias") {
      cfg.biases.clear();
      for (const std::string& item : split_list(key, value)) {
        const double v = parse_real(key, item);
        if (!(v >= -0.5 && v <= 0.5)) throw ConfigError(key, item + " is outside [-1/2, 1/2]");
        cfg.biases.push_back(v);
      }
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "format") {
      if (value != "csv" && value != "json") throw ConfigError(key, "format must be csv or json");
      cfg.format = value;
    } else if (key == "threads") {
      cfg.threads = parse_unsigned(key, value);
    } else if (key == "inject_fault") {
      cfg.inject_fault = parse_bool(key, value);
    }
  }
  return cfg;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> pairs;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number), "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end())
      throw ConfigError(key, "unknown key");
    pairs[key] = trim(std::string_view(line).substr(eq + 1));
  }
  return pairs;
}

namespace {

std::map<std::string, std::string> canonical_pairs(const RunConfig& cfg) {
  std::map<std::string, std::string> p;
  p["command"] = to_string(cfg.command);
  p["eta"] = join(cfg.etas, [](const Fraction& f) { return f.to_string(); });
  p["d"] = join(cfg.dims, [](std::size_t v) { return std::to_string(v); });
  if (!cfg.sizes.empty()) p["n"] = join(cfg.sizes, [](std::size_t v) { return std::to_string(v); });
  p["size_factor"] = format_real(cfg.size_factor);
  p["trials"] = std::to_string(cfg.trials);
  p["seed"] = std::to_string(cfg.seed);
  p["learner"] = join(cfg.learners, [](const std::string& s) { return s; });
  p["adversary"] = join(cfg.adversaries, [](const std::string& s) { return s; });
  p["bias"] = join(cfg.biases, [](double v) { return format_real(v); });
  if (!cfg.out.empty()) p["out"] = cfg.out;
  p["format"] = cfg.format;
  p["threads"] = std::to_string(cfg.threads);
  p["inject_fault"] = cfg.inject_fault ? "true" : "false";
  return p;
}

}  // namespace

std::string serialize_config(const RunConfig& cfg) {
  std::string text;
  for (const auto& [k, v] : canonical_pairs(cfg)) text += k + " = " + v + "\n";
  return text;
}

std::string config_hash(const RunConfig& cfg) {
  std::string text;
  for (const auto& [k, v] : canonical_pairs(cfg))
    if (k != "out" && k != "format" && k != "threads") text += k + "=" + v + "\n";
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(stable_hash(text)));
  return buf;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Instance-targeted poisoning simulator"};
  app.require_subcommand(1);
  std::map<std::string, std::string> flags;
  std::map<std::string, CLI::Option*> options;
  std::map<std::string, std::string> config_paths;
  std::map<std::string, bool> fault;

  struct FlagDef {
    const char* flag;
    const char* key;
    const char* help;
  };
  static const FlagDef flag_defs[] = {
      {"--eta", "eta", "poisoning budget(s), e.g. 1/64 or 1/64,1/256"},
      {"--d", "d", "dimension(s)"},
      {"--n", "n", "sample size(s); default ceil(size_factor / eta)"},
      {"--trials", "trials", "trials per cell"},
      {"--seed", "seed", "base seed"},
      {"--learner", "learner", "learner id(s)"},
      {"--adversary", "adversary", "adversary id(s)"},
      {"--bias", "bias", "bias value(s) v, u_i = v (-1)^i"},
      {"--size-factor", "size_factor", "c in n = ceil(c / eta)"},
      {"--out", "out", "output path (default stdout)"},
      {"--format", "format", "csv or json"},
      {"--threads", "threads", "worker threads (0 = all)"},
  };
  const char* commands[][2] = {{"verify", "run the invariant suite"},
                               {"run", "one experiment cell"},
                               {"sweep", "every cell of the grid"},
                               {"attack-eval", "one cell against every shipped adversary"},
                               {"curve", "learning curves over the hard support"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    const std::string prefix = std::string(name) + ":";
    for (const FlagDef& s : flag_defs) options[prefix + s.key] = sub->add_option(s.flag, flags[prefix + s.key], s.help);
    sub->add_option("--config", config_paths[name], "key = value file");
    options[prefix + "inject_fault"] = sub->add_flag("--inject-fault", fault[name], "sabotage the ratio-stability check");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app.parse(reversed);

  const std::string name = app.get_subcommands().front()->get_name();
  std::map<std::string, std::string> pairs;
  if (!config_paths[name].empty()) {
    std::ifstream file(config_paths[name]);
    if (!file) throw ConfigError("config", "cannot read '" + config_paths[name] + "'");
    std::stringstream buf;
    buf << file.rdbuf();
    pairs = parse_config_text(buf.str());
  }
  const std::string prefix = name + ":";
  for (const FlagDef& s : flag_defs)
    if (options[prefix + s.key]->count() > 0) pairs[s.key] = flags[prefix + s.key];
  if (options[prefix + "inject_fault"]->count() > 0) pairs["inject_fault"] = "true";
  pairs["command"] = name;
  return config_from_pairs(pairs);
}

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> cols{
      "command", "learner",  "adversary",  "d",           "eta",  "n",     "bias",
      "trials",  "seed",     "mean",       "ci_low",      "ci_high", "std_error", "loss",
      "bayes",   "bound_name", "bound_value", "pass",     "error", "artifact_version", "config_hash"};
  return cols;
}

std::vector<std::string> row_fields(const ResultRow& r) {
  const ExcessEstimate& e = r.estimate;
  return {r.command,
          meta(e, "learner"),
          meta(e, "adversary"),
          meta(e, "d"),
          meta(e, "eta"),
          meta(e, "n"),
          meta(e, "bias"),
          std::to_string(e.trials),
          std::to_string(e.seed),
          format_real(e.mean),
          format_real(e.ci_low),
          format_real(e.ci_high),
          format_real(e.std_error),
          opt_real(r.loss),
          opt_real(r.bayes),
          r.bound_name,
          opt_real(r.bound_value),
          r.pass ? "true" : "false",
          r.error,
          r.artifact_version,
          r.config_hash};
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  const auto& cols = result_columns();
  for (std::size_t j = 0; j < cols.size(); ++j) out << (j ? "," : "") << cols[j];
  out << '\n';
  for (const ResultRow& r : rows) {
    const auto fields = row_fields(r);
    for (std::size_t j = 0; j < fields.size(); ++j) out << (j ? "," : "") << csv_escape(fields[j]);
    out << '\n';
  }
}

void write_json(const std::vector<ResultRow>& rows, std::ostream& out) {
  using nlohmann::json;
  json arr = json::array();
  const auto& cols = result_columns();
  for (const ResultRow& r : rows) {
    const auto fields = row_fields(r);
    json obj = json::object();
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const std::string& c = cols[j];
      const std::string& v = fields[j];
      if (c == "trials" || c == "seed" || ((c == "d" || c == "n") && !v.empty())) {
        obj[c] = std::stoull(v);
      } else if (c == "mean" || c == "ci_low" || c == "ci_high" || c == "std_error" || c == "loss" || c == "bayes" ||
                 c == "bound_value") {
        if (v.empty())
          obj[c] = nullptr;
        else
          obj[c] = std::stod(v);
      } else if (c == "pass") {
        obj[c] = r.pass;
      } else {
        obj[c] = v;
      }
    }
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

void emit_results(const std::vector<ResultRow>& rows, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (rows.empty()) err << "warning: no result rows\n";
  auto write = [&](std::ostream& os) {
    if (cfg.format == "json")
      write_json(rows, os);
    else
      write_csv(rows, os);
  };
  if (cfg.out.empty() || cfg.out == "-") {
    write(out);
    out.flush();
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write '" + cfg.out + "'");
  write(file);
  if (!file) throw std::runtime_error("write to '" + cfg.out + "' failed");
}

std::vector<std::map<std::string, std::string>> read_csv(std::istream& in) {
  auto parse_line = [](const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t j = 0; j < line.size(); ++j) {
      const char c = line[j];
      if (quoted) {
        if (c == '"' && j + 1 < line.size() && line[j + 1] == '"') {
          cur += '"';
          ++j;
        } else if (c == '"') {
          quoted = false;
        } else {
          cur += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    fields.push_back(cur);
    return fields;
  };
  std::vector<std::map<std::string, std::string>> rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  const auto header = parse_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = parse_line(line);
    std::map<std::string, std::string> row;
    for (std::size_t j = 0; j < header.size() && j < fields.size(); ++j) row[header[j]] = fields[j];
    rows.push_back(std::move(row));
  }
  return rows;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.command) {
    case Command::Verify: {
      verify::Options options;
      options.seed = cfg.seed;
      options.flip_ratio_sign = cfg.inject_fault;
      options.threads = cfg.threads;
      const auto results = verify::run_invariant_suite(options);
      std::size_t failed = 0;
      for (const auto& r : results) {
        out << verify::format_result(r) << '\n';
        failed += !r.pass;
      }
      out << results.size() << " checks, " << failed << " failed\n";
      return failed == 0 ? 0 : 1;
    }
    case Command::Run: {
      const RunConfig one = first_cell(cfg);
      if (one.adversaries.front() == "oblivious") {
        emit_results(run_lower_bound(one), cfg, out, err);
      } else {
        emit_results(rows_of(run_sweep(grid_of(one), cfg.threads), cfg), cfg, out, err);
      }
      return 0;
    }
    case Command::Sweep: {
      for (const std::string& a : cfg.adversaries)
        if (a == "oblivious") throw ConfigError("adversary", "the oblivious scheme is only available to run and curve");
      emit_results(rows_of(run_sweep(grid_of(cfg), cfg.threads), cfg), cfg, out, err);
      return 0;
    }
    case Command::AttackEval: {
      RunConfig one = first_cell(cfg);
      one.adversaries = adversary_ids();
      emit_results(rows_of(run_sweep(grid_of(one), cfg.threads), cfg), cfg, out, err);
      return 0;
    }
    case Command::Curve: {
      emit_results(run_curve(cfg, err), cfg, out, err);
      return 0;
    }
  }
  return 1;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int j = 1; j < argc; ++j) args.emplace_back(argv[j]);
  RunConfig cfg;
  try {
    cfg = parse_config(args);
  } catch (const CLI::CallForHelp&) {
    CLI::App help{"Instance-targeted poisoning simulator"};
    out << "usage: poisonlab {verify|run|sweep|attack-eval|curve} [--eta E] [--d D] [--n N] [--trials T]\n"
           "                 [--seed S] [--learner ID] [--adversary ID] [--bias V] [--size-factor C]\n"
           "                 [--out PATH] [--format csv|json] [--threads K] [--config FILE] [--inject-fault]\n"
           "learners: exp coupled vc majority constant+ constant- bayes public-<id>\n"
           "adversaries: identity greedy brute-force (run also accepts oblivious)\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  try {
    return execute(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace poisonlab::cli
