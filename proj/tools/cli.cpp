#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "wavn/canonical.hpp"
#include "wavn/error.hpp"
#include "wavn/ledger.hpp"

namespace wavn::cli {

namespace {

using nlohmann::json;

// Config-struct field names mapped back to the flag a user typed.
const std::map<std::string, std::string>& flag_for_field() {
  static const std::map<std::string, std::string> kMap = {
      {"width", "width"},
      {"height", "height"},
      {"n_robots", "robots"},
      {"n_landmarks", "landmarks"},
      {"loops", "loops"},
      {"sensing_radius", "radius"},
      {"step_size", "step"},
      {"block_size", "block-size"},
      {"seed", "seed"},
      {"generator_reward", "reward"},
      {"initial_stake", "initial-stake"},
      {"degrade_pair", "degrade-pair"},
      {"degrade_loops", "degrade-loops"},
      {"degrade_factor", "degrade-factor"},
  };
  return kMap;
}

struct RawOptions {
  std::optional<std::size_t> robots, landmarks, loops, block_size;
  std::optional<double> width, height, radius, step, reward, initial_stake, degrade_factor;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> degrade_pair, degrade_loops;
  std::optional<std::string> config_file, out, verify;
};

std::pair<std::size_t, std::size_t> parse_two(const std::string& text, const std::string& flag) {
  const auto comma = text.find(',');
  auto parse_one = [&](std::string_view part) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) {
      throw UsageError("--" + flag + ": expected two comma-separated integers, got '" + text +
                       "'");
    }
    return value;
  };
  if (comma == std::string::npos) {
    throw UsageError("--" + flag + ": expected two comma-separated integers, got '" + text + "'");
  }
  const std::string_view view(text);
  return {parse_one(view.substr(0, comma)), parse_one(view.substr(comma + 1))};
}

std::uint64_t json_unsigned(const json& v, const std::string& key) {
  if (!v.is_number_unsigned()) throw UsageError("config key '" + key + "': expected an unsigned integer");
  return v.get<std::uint64_t>();
}

double json_real(const json& v, const std::string& key) {
  if (!v.is_number()) throw UsageError("config key '" + key + "': expected a number");
  return v.get<double>();
}

std::pair<std::size_t, std::size_t> json_two(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 2) {
    throw UsageError("config key '" + key + "': expected an array of two unsigned integers");
  }
  return {json_unsigned(v[0], key), json_unsigned(v[1], key)};
}

struct ScenarioParts {
  std::optional<std::pair<std::size_t, std::size_t>> pair, loops;
  std::optional<double> factor;
};

void apply_config_file(const std::string& path, WorldConfig& config, ScenarioParts& scenario) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("--config: '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw UsageError("--config: top level must be an object");

  for (const auto& [key, value] : doc.items()) {
    if (key == "robots") config.n_robots = json_unsigned(value, key);
    else if (key == "landmarks") config.n_landmarks = json_unsigned(value, key);
    else if (key == "loops") config.loops = json_unsigned(value, key);
    else if (key == "block-size") config.block_size = json_unsigned(value, key);
    else if (key == "seed") config.seed = json_unsigned(value, key);
    else if (key == "width") config.width = json_real(value, key);
    else if (key == "height") config.height = json_real(value, key);
    else if (key == "radius") config.sensing_radius = json_real(value, key);
    else if (key == "step") config.step_size = json_real(value, key);
    else if (key == "reward") config.generator_reward = json_real(value, key);
    else if (key == "initial-stake") config.initial_stake = json_real(value, key);
    else if (key == "degrade-pair") scenario.pair = json_two(value, key);
    else if (key == "degrade-loops") scenario.loops = json_two(value, key);
    else if (key == "degrade-factor") scenario.factor = json_real(value, key);
    else throw UsageError("config key '" + key + "' is not recognized");
  }
}

template <typename T, typename U>
void override_with(const std::optional<T>& flag, U& target) {
  if (flag) target = static_cast<U>(*flag);
}

}  // namespace

Options parse_config(const std::vector<std::string>& args) {
  RawOptions raw;
  CLI::App app{"Proof-of-Stake navigability simulator for a multi-robot landmark team", "wavn_sim"};
  app.add_option("--config", raw.config_file, "JSON file keyed by long flag names");
  app.add_option("--robots", raw.robots, "Number of robots (default 10)");
  app.add_option("--landmarks", raw.landmarks, "Number of landmarks (default 20)");
  app.add_option("--width", raw.width, "World width (default 200)");
  app.add_option("--height", raw.height, "World height (default 200)");
  app.add_option("--loops", raw.loops, "Simulation loops (default 10)");
  app.add_option("--radius", raw.radius, "Landmark sensing radius (default 85)");
  app.add_option("--step", raw.step, "Maximum per-axis step per loop (default 15)");
  app.add_option("--block-size", raw.block_size, "Observations per block (default 10)");
  app.add_option("--seed", raw.seed, "Root random seed (default 0)");
  app.add_option("--reward", raw.reward, "Stake credited to each block generator (default 0.1)");
  app.add_option("--initial-stake", raw.initial_stake, "Starting stake of every robot (default 1)");
  app.add_option("--degrade-pair", raw.degrade_pair, "Scenario pair as i,j");
  app.add_option("--degrade-loops", raw.degrade_loops, "Scenario loop window as a,b (1-based, inclusive)");
  app.add_option("--degrade-factor", raw.degrade_factor, "Scenario quality multiplier in [0,1) (default 0.1)");
  app.add_option("--out", raw.out, "Directory for ledger, trajectories, time series and summary");
  app.add_option("--verify", raw.verify, "Re-verify a ledger dump and exit");

  Options options;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    options.help = true;
    options.help_text = app.help();
    return options;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  WorldConfig& config = options.config;
  ScenarioParts scenario;
  if (raw.config_file) apply_config_file(*raw.config_file, config, scenario);

  override_with(raw.robots, config.n_robots);
  override_with(raw.landmarks, config.n_landmarks);
  override_with(raw.loops, config.loops);
  override_with(raw.block_size, config.block_size);
  override_with(raw.seed, config.seed);
  override_with(raw.width, config.width);
  override_with(raw.height, config.height);
  override_with(raw.radius, config.sensing_radius);
  override_with(raw.step, config.step_size);
  override_with(raw.reward, config.generator_reward);
  override_with(raw.initial_stake, config.initial_stake);
  if (raw.degrade_pair) scenario.pair = parse_two(*raw.degrade_pair, "degrade-pair");
  if (raw.degrade_loops) scenario.loops = parse_two(*raw.degrade_loops, "degrade-loops");
  if (raw.degrade_factor) scenario.factor = raw.degrade_factor;

  try {
    config.validate();
    if (scenario.pair || scenario.loops || scenario.factor) {
      if (!scenario.pair) throw ConfigError("degrade_pair", "required when a scenario is given");
      if (!scenario.loops) throw ConfigError("degrade_loops", "required when a scenario is given");
      if (scenario.pair->first == scenario.pair->second) {
        throw ConfigError("degrade_pair", "must name two distinct robots");
      }
      DegradationScenario s;
      s.pair = RobotPair::of(scenario.pair->first, scenario.pair->second);
      s.start_loop = scenario.loops->first;
      s.end_loop = scenario.loops->second;
      s.factor = scenario.factor.value_or(0.1);
      s.validate(config);
      options.scenario = s;
    }
  } catch (const ConfigError& e) {
    const auto it = flag_for_field().find(e.field());
    const std::string flag = it == flag_for_field().end() ? e.field() : it->second;
    throw UsageError("invalid --" + flag + ": " + e.what());
  }

  if (raw.out) options.out_dir = *raw.out;
  if (raw.verify) options.verify_file = *raw.verify;
  return options;
}

RunSummary summarize(const ExperimentState& state, double wall_clock_seconds) {
  RunSummary s;
  s.total_blocks = state.chain.size();
  s.total_transactions = state.chain.transaction_count();
  for (const Block& block : state.chain.blocks()) {
    s.pair_observations += static_cast<std::uint64_t>(
        std::count_if(block.transactions.begin(), block.transactions.end(),
                      [](const Transaction& tx) { return tx.kind == TxKind::pair_observation; }));
  }
  s.max_common_landmarks = state.common_stats.max_count;
  s.min_common_landmarks = state.common_stats.min_count;
  s.generator_histogram = state.chain.generator_histogram();
  for (const RobotState& r : state.world.robots) s.final_stakes.push_back(r.stake);
  s.wall_clock_seconds = wall_clock_seconds;
  return s;
}

std::string summary_json(const RunSummary& summary) {
  json doc;
  doc["total_blocks"] = summary.total_blocks;
  doc["total_transactions"] = summary.total_transactions;
  doc["pair_observations"] = summary.pair_observations;
  doc["reward_transactions"] = summary.total_transactions - summary.pair_observations;
  doc["max_common_landmarks"] =
      summary.max_common_landmarks ? json(*summary.max_common_landmarks) : json(nullptr);
  doc["min_common_landmarks"] =
      summary.min_common_landmarks ? json(*summary.min_common_landmarks) : json(nullptr);
  doc["generator_histogram"] = summary.generator_histogram;
  doc["final_stakes"] = summary.final_stakes;
  return doc.dump(2) + "\n";
}

void print_summary(std::ostream& out, const RunSummary& summary) {
  auto opt = [](const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string("n/a");
  };
  out << "blocks:               " << summary.total_blocks << '\n'
      << "transactions:         " << summary.total_transactions << " ("
      << summary.pair_observations << " pair observations)\n"
      << "common landmarks:     max " << opt(summary.max_common_landmarks) << ", min "
      << opt(summary.min_common_landmarks) << '\n'
      << "generator histogram: ";
  for (std::size_t i = 0; i < summary.generator_histogram.size(); ++i) {
    out << " P" << i << '=' << summary.generator_histogram[i];
  }
  out << "\nfinal stakes:        ";
  for (double s : summary.final_stakes) out << ' ' << format_number(s);
  out << "\nwall clock:           " << summary.wall_clock_seconds << " s\n";
}

void write_trajectories_csv(std::ostream& out, const ExperimentState& state) {
  out << "loop,robot_id,x,y\n";
  for (std::size_t loop = 0; loop < state.trajectory.size(); ++loop) {
    const auto& row = state.trajectory[loop];
    for (std::size_t r = 0; r < row.size(); ++r) {
      out << loop << ',' << r << ',' << format_number(row[r].x) << ','
          << format_number(row[r].y) << '\n';
    }
  }
}

void write_timeseries_csv(std::ostream& out, const ExperimentState& state) {
  out << "block_index,tx_id_range,avg_navigability,generator\n";
  for (const Block& block : state.chain.blocks()) {
    const std::uint64_t first = block.transactions.front().tx_id;
    const std::uint64_t last = block.transactions.back().tx_id;
    out << block.index << ',' << first << '-' << last << ','
        << format_number(block.avg_navigability) << ',' << block.generator << '\n';
  }
}

namespace {

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  writer(out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

RunSummary run_and_export(const WorldConfig& config,
                          const std::optional<DegradationScenario>& scenario,
                          const std::optional<std::filesystem::path>& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentState state = run_experiment(config, scenario);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  RunSummary summary = summarize(state, elapsed.count());

  if (out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*out_dir, ec);
    if (ec) throw std::runtime_error("cannot create '" + out_dir->string() + "': " + ec.message());
    write_file(*out_dir / kLedgerFile,
               [&](std::ostream& out) { write_ledger(out, state.chain.blocks()); });
    write_file(*out_dir / kTrajectoriesFile,
               [&](std::ostream& out) { write_trajectories_csv(out, state); });
    write_file(*out_dir / kTimeseriesFile,
               [&](std::ostream& out) { write_timeseries_csv(out, state); });
    write_file(*out_dir / kSummaryFile, [&](std::ostream& out) { out << summary_json(summary); });
  }
  return summary;
}

VerifyOutcome verify_ledger_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  VerifyOutcome outcome;
  std::vector<Block> blocks;
  try {
    blocks = read_ledger(in);
  } catch (const LedgerError& e) {
    outcome.error = e.what();
    return outcome;
  }
  outcome.blocks = blocks.size();
  outcome.first_invalid = verify_chain(blocks);
  outcome.valid = !outcome.first_invalid.has_value();
  return outcome;
}

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options options;
  try {
    options = parse_config(args);
  } catch (const UsageError& e) {
    err << "wavn_sim: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "wavn_sim: " << e.what() << '\n';
    return kUsage;
  }
  if (options.help) {
    out << options.help_text;
    return kSuccess;
  }

  try {
    if (options.verify_file) {
      const VerifyOutcome outcome = verify_ledger_file(*options.verify_file);
      if (!outcome.error.empty()) {
        err << "wavn_sim: " << outcome.error << '\n';
        return kVerifyFailed;
      }
      if (!outcome.valid) {
        out << "ledger INVALID: first bad block " << *outcome.first_invalid << " of "
            << outcome.blocks << '\n';
        return kVerifyFailed;
      }
      out << "ledger valid: " << outcome.blocks << " blocks\n";
      return kSuccess;
    }

    const RunSummary summary = run_and_export(options.config, options.scenario, options.out_dir);
    print_summary(out, summary);
    return kSuccess;
  } catch (const std::exception& e) {
    err << "wavn_sim: " << e.what() << '\n';
    return kRuntime;
  }
}

}  // namespace wavn::cli
