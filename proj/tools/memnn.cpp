#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "memnn/blocks.hpp"
#include "memnn/bridge.hpp"
#include "memnn/device.hpp"
#include "memnn/image.hpp"
#include "memnn/network.hpp"
#include "memnn/profile.hpp"
#include "memnn/signal.hpp"
#include "memnn/vision.hpp"

namespace {

constexpr const char* tool_version = "0.1.0";

struct RunContext {
  std::string command_line;
  std::string profile_name;
  std::optional<long> seed;
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

struct ProfileChoice {
  std::string name;
  memnn::DeviceParams device;
  double programming_amplitude = 1.0;
};

ProfileChoice resolve_profile(std::string value) {
  if (value.empty()) {
    if (const char* env = std::getenv("MEMNN_PROFILE")) value = env;
  }
  if (value.empty()) value = "linear";

  ProfileChoice choice;
  choice.name = value;
  if (std::filesystem::exists(value)) {
    const memnn::ParameterProfile profile = memnn::read_profile_file(value);
    choice.device = memnn::device_from_profile(profile);
    choice.programming_amplitude = profile.number_or("programming_amplitude", 1.0);
    return choice;
  }
  try {
    choice.device = memnn::builtin_device_profile(value);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("profile '" + value +
                                "' is neither a file nor a built-in name "
                                "(linear, nonlinear, team, team-exp)");
  }
  return choice;
}

void write_metadata(const RunContext& ctx, const std::string& subcommand,
                    const std::string& meta_flag) {
  std::string path = meta_flag;
  if (path.empty())
    path = ctx.outputs.empty() ? subcommand + ".meta.json" : ctx.outputs.front() + ".meta.json";

  nlohmann::json meta;
  meta["command"] = ctx.command_line;
  meta["profile"] = ctx.profile_name.empty() ? "linear" : ctx.profile_name;
  if (ctx.seed)
    meta["seed"] = *ctx.seed;
  else
    meta["seed"] = nullptr;
  meta["versions"] = {
      {"memnn", tool_version},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                    std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)}};
  meta["elapsed_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count();
  meta["outputs"] = ctx.outputs;

  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write metadata file: " + path);
  out << meta.dump(2) << '\n';
}

std::ofstream open_output(const std::string& path, RunContext& ctx) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  ctx.outputs.push_back(path);
  return out;
}

void write_curve_csv(const std::string& path,
                     const std::vector<std::pair<double, double>>& rows, RunContext& ctx) {
  std::ofstream out = open_output(path, ctx);
  out << "input,output\n";
  for (const auto& [x, y] : rows)
    out << memnn::format_double(x) << ',' << memnn::format_double(y) << '\n';
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string field =
        text.substr(start, comma == std::string::npos ? comma : comma - start);
    values.push_back(memnn::parse_double(field));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

memnn::SignalTrace sine_wave(double amplitude, double frequency, int cycles, double dt) {
  if (!(frequency > 0.0)) throw std::invalid_argument("frequency must be positive");
  if (cycles < 1) throw std::invalid_argument("cycles must be at least 1");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const double span = static_cast<double>(cycles) / frequency;
  const long n = std::lround(span / dt);
  if (n < 1) throw std::invalid_argument("dt longer than the waveform");
  memnn::SignalTrace wave;
  wave.unit = "V";
  wave.points.reserve(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * dt;
    wave.points.push_back({t, amplitude * std::sin(2.0 * M_PI * frequency * t)});
  }
  return wave;
}

memnn::SignalTrace pulse_train(double amplitude, double width, double period, int count) {
  if (!(width > 0.0) || !(period > width))
    throw std::invalid_argument("need 0 < width < period");
  if (count < 1) throw std::invalid_argument("count must be at least 1");
  const double edge = width / 100.0;
  memnn::SignalTrace wave;
  wave.unit = "V";
  wave.points.push_back({0.0, 0.0});
  for (int k = 0; k < count; ++k) {
    const double t0 = static_cast<double>(k) * period;
    if (k > 0) wave.points.push_back({t0, 0.0});
    wave.points.push_back({t0 + edge, amplitude});
    wave.points.push_back({t0 + width - edge, amplitude});
    wave.points.push_back({t0 + width, 0.0});
  }
  wave.points.push_back({static_cast<double>(count) * period, 0.0});
  return wave;
}

void print_confusion_line(std::ostream& out, const char* split, double acc,
                          const std::array<std::array<int, 2>, 2>& counts) {
  out << split << " accuracy=" << memnn::format_double(acc) << " confusion=" << counts[0][0]
      << ',' << counts[0][1] << ',' << counts[1][0] << ',' << counts[1][1] << '\n';
}

void require_dataset(const std::string& path) {
  if (std::filesystem::exists(path)) return;
  throw std::runtime_error(
      "dataset not found: " + path +
      "\nfetch the UCI file with:\n"
      "  curl -o " + path +
      " https://archive.ics.uci.edu/ml/machine-learning-databases/"
      "breast-cancer-wisconsin/breast-cancer-wisconsin.data\n"
      "or point --data at the bundled stand-in "
      "data/breast-cancer-wisconsin.synthetic.data");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"memristor device, synapse, and pipeline toolkit"};
  app.require_subcommand(1);

  std::string profile_flag;
  app.add_option("--profile", profile_flag,
                 "device profile: built-in name or path to a .conf file "
                 "(falls back to $MEMNN_PROFILE, then 'linear')");

  // device-sweep
  auto* sweep = app.add_subcommand("device-sweep", "integrate a voltage drive, write t,v,i,m CSV");
  std::string sweep_wave = "sine", sweep_in, sweep_out, sweep_meta;
  double sweep_amplitude = 1.0, sweep_frequency = 1.0, sweep_width = 1e-3, sweep_period = 2e-3;
  double sweep_dt = memnn::default_time_step;
  std::optional<double> sweep_x0;
  int sweep_cycles = 1, sweep_count = 10;
  sweep->add_option("--wave", sweep_wave, "sine|pulse|pwl")
      ->check(CLI::IsMember({"sine", "pulse", "pwl"}));
  sweep->add_option("--amplitude", sweep_amplitude, "drive amplitude, volts");
  sweep->add_option("--frequency", sweep_frequency, "sine frequency, hertz");
  sweep->add_option("--cycles", sweep_cycles, "sine cycles");
  sweep->add_option("--width", sweep_width, "pulse width, seconds");
  sweep->add_option("--period", sweep_period, "pulse period, seconds");
  sweep->add_option("--count", sweep_count, "pulse count");
  sweep->add_option("--in", sweep_in, "PWL drive file (--wave pwl)");
  sweep->add_option("--dt", sweep_dt, "integration step, seconds");
  sweep->add_option("--x0", sweep_x0, "initial state (defaults to the range midpoint)");
  sweep->add_option("--out", sweep_out, "output CSV path")->required();
  sweep->add_option("--meta", sweep_meta, "metadata path override");

  // bridge program|read
  auto* bridge = app.add_subcommand("bridge", "four-memristor synapse programming");
  bridge->require_subcommand(1);
  auto* bridge_program = bridge->add_subcommand("program", "find the pulse for a target weight");
  double bp_target = 0.0;
  std::optional<double> bp_amplitude;
  std::string bp_out, bp_meta;
  bridge_program->add_option("--target", bp_target, "target weight")->required();
  bridge_program->add_option("--amplitude", bp_amplitude, "pulse level, volts");
  bridge_program->add_option("--out", bp_out, "CSV report path");
  bridge_program->add_option("--meta", bp_meta, "metadata path override");
  auto* bridge_read = bridge->add_subcommand("read", "apply one pulse, report the weight");
  double br_pulse = 0.0;
  std::optional<double> br_amplitude;
  std::string br_out, br_meta;
  bridge_read->add_option("--pulse", br_pulse, "signed pulse width, seconds")->required();
  bridge_read->add_option("--amplitude", br_amplitude, "pulse level, volts");
  bridge_read->add_option("--out", br_out, "CSV report path");
  bridge_read->add_option("--meta", br_meta, "metadata path override");

  // kernel
  auto* kernel_cmd = app.add_subcommand("kernel", "run a 3x3 kernel over a PGM image");
  std::string k_in, k_out, k_name, k_weights, k_mode = "ideal", k_meta;
  double k_vfull = 1.5;
  kernel_cmd->add_option("--in", k_in, "input PGM")->required();
  kernel_cmd->add_option("--out", k_out, "output PGM")->required();
  kernel_cmd->add_option("--kernel", k_name, "blur|edge|identity");
  kernel_cmd->add_option("--weights", k_weights, "nine comma-separated taps, row-major");
  kernel_cmd->add_option("--mode", k_mode, "ideal|bridge")
      ->check(CLI::IsMember({"ideal", "bridge"}));
  kernel_cmd->add_option("--v-full", k_vfull, "full-scale pixel voltage");
  kernel_cmd->add_option("--meta", k_meta, "metadata path override");

  // ann train|eval
  auto* ann = app.add_subcommand("ann", "tumor classifier training and evaluation");
  ann->require_subcommand(1);
  auto* ann_train = ann->add_subcommand("train", "train the float network, save the model");
  std::string at_data, at_out, at_split_out, at_hidden = "relu", at_meta;
  long at_seed = 1;
  int at_epochs = 150;
  double at_lr = 0.05;
  ann_train->add_option("--data", at_data, "dataset CSV path")->required();
  ann_train->add_option("--out", at_out, "model file path")->required();
  ann_train->add_option("--split-out", at_split_out, "split index CSV (default <out>.split.csv)");
  ann_train->add_option("--seed", at_seed, "split/init/shuffle seed");
  ann_train->add_option("--epochs", at_epochs, "training epochs");
  ann_train->add_option("--lr", at_lr, "learning rate");
  ann_train->add_option("--hidden", at_hidden, "relu|tanh")
      ->check(CLI::IsMember({"relu", "tanh"}));
  ann_train->add_option("--meta", at_meta, "metadata path override");
  auto* ann_eval = ann->add_subcommand("eval", "per-split accuracy and confusion counts");
  std::string ae_data, ae_model, ae_mode = "model", ae_out, ae_meta;
  long ae_seed = 1;
  std::optional<double> ae_amplitude;
  ann_eval->add_option("--data", ae_data, "dataset CSV path")->required();
  ann_eval->add_option("--model", ae_model, "model file path")->required();
  ann_eval->add_option("--seed", ae_seed, "seed used to rebuild the split");
  ann_eval->add_option("--mode", ae_mode, "model|float|bridge")
      ->check(CLI::IsMember({"model", "float", "bridge"}));
  ann_eval->add_option("--amplitude", ae_amplitude, "programming pulse level for --mode bridge");
  ann_eval->add_option("--out", ae_out, "also write the report here");
  ann_eval->add_option("--meta", ae_meta, "metadata path override");

  // activation
  auto* act = app.add_subcommand("activation", "sweep an analog block, write input,output CSV");
  std::string act_block, act_out, act_meta;
  std::optional<double> act_start, act_stop, act_step, act_m, act_c, act_ceiling;
  double act_unit = memnn::default_reference_current, act_second = 1e-4;
  bool act_nonideal = false, act_calibrate = false;
  act->add_option("--block", act_block, "relu|squarer|divider|multiplier|tanh|tanh-structural")
      ->required()
      ->check(CLI::IsMember(
          {"relu", "squarer", "divider", "multiplier", "tanh", "tanh-structural"}));
  act->add_option("--start", act_start, "sweep start, amperes");
  act->add_option("--stop", act_stop, "sweep stop, amperes");
  act->add_option("--step", act_step, "sweep increment, amperes");
  act->add_option("--unit", act_unit, "reference current, amperes");
  act->add_option("--second", act_second, "fixed second input for the multiplier");
  act->add_option("--m", act_m, "tanh numerator gain override");
  act->add_option("--c", act_c, "tanh denominator offset override");
  act->add_option("--ceiling", act_ceiling, "clip level for relu");
  act->add_flag("--nonideal", act_nonideal, "apply the documented operating-range limits");
  act->add_flag("--calibrate", act_calibrate, "fit m and c to the reference curve first");
  act->add_option("--out", act_out, "output CSV path")->required();
  act->add_option("--meta", act_meta, "metadata path override");

  // pool
  auto* pool = app.add_subcommand("pool", "max-pool DC transfer curve CSV");
  std::string pool_others = "0.7,0.7", pool_out, pool_meta;
  double pool_start = 0.0, pool_stop = 2.0, pool_step = 0.01, pool_threshold = 0.0;
  pool->add_option("--start", pool_start, "swept input start, volts");
  pool->add_option("--stop", pool_stop, "swept input stop, volts");
  pool->add_option("--step", pool_step, "sweep increment, volts");
  pool->add_option("--others", pool_others, "comma-separated fixed inputs, volts");
  pool->add_option("--threshold", pool_threshold, "diode threshold, volts");
  pool->add_option("--out", pool_out, "output CSV path")->required();
  pool->add_option("--meta", pool_meta, "metadata path override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  RunContext ctx;
  {
    std::ostringstream joined;
    for (int i = 0; i < argc; ++i) joined << (i ? " " : "") << argv[i];
    ctx.command_line = joined.str();
  }

  try {
    const ProfileChoice profile = resolve_profile(profile_flag);
    ctx.profile_name = profile.name;
    std::string meta_flag;
    std::string subcommand_label;

    if (sweep->parsed()) {
      subcommand_label = "device-sweep";
      meta_flag = sweep_meta;
      memnn::SignalTrace drive;
      if (sweep_wave == "sine")
        drive = sine_wave(sweep_amplitude, sweep_frequency, sweep_cycles, sweep_dt);
      else if (sweep_wave == "pulse")
        drive = pulse_train(sweep_amplitude, sweep_width, sweep_period, sweep_count);
      else {
        if (sweep_in.empty()) throw std::invalid_argument("--wave pwl needs --in");
        drive = memnn::read_pwl_file(sweep_in);
      }
      const double x0 = sweep_x0 ? *sweep_x0
                                 : 0.5 * (memnn::state_lower_bound(profile.device) +
                                          memnn::state_upper_bound(profile.device));
      const memnn::SimTrace trace =
          memnn::simulate_drive(profile.device, x0, drive, sweep_dt);
      std::ofstream out = open_output(sweep_out, ctx);
      out << "t,v,i,m\n";
      for (const auto& s : trace.samples)
        out << memnn::format_double(s.t) << ',' << memnn::format_double(s.v) << ','
            << memnn::format_double(s.i) << ',' << memnn::format_double(s.memristance)
            << '\n';
    } else if (bridge_program->parsed()) {
      subcommand_label = "bridge-program";
      meta_flag = bp_meta;
      const double amplitude = bp_amplitude.value_or(profile.programming_amplitude);
      memnn::BridgeSynapse synapse = memnn::make_balanced_bridge(profile.device, amplitude);
      const double width = memnn::program_to_weight(synapse, bp_target, amplitude);
      const double achieved = memnn::bridge_weight(synapse);
      std::cout << "target " << memnn::format_double(bp_target) << '\n'
                << "achieved " << memnn::format_double(achieved) << '\n'
                << "width " << memnn::format_double(width) << '\n';
      if (!bp_out.empty()) {
        std::ofstream out = open_output(bp_out, ctx);
        out << "target,achieved,width_seconds\n"
            << memnn::format_double(bp_target) << ',' << memnn::format_double(achieved)
            << ',' << memnn::format_double(width) << '\n';
      }
    } else if (bridge_read->parsed()) {
      subcommand_label = "bridge-read";
      meta_flag = br_meta;
      const double amplitude = br_amplitude.value_or(profile.programming_amplitude);
      memnn::BridgeSynapse synapse = memnn::make_balanced_bridge(profile.device, amplitude);
      if (br_pulse != 0.0)
        memnn::program_bridge(synapse, std::abs(br_pulse),
                              br_pulse < 0.0 ? -amplitude : amplitude);
      const double weight = memnn::bridge_weight(synapse);
      std::cout << "pulse " << memnn::format_double(br_pulse) << '\n'
                << "weight " << memnn::format_double(weight) << '\n';
      if (!br_out.empty()) {
        std::ofstream out = open_output(br_out, ctx);
        out << "pulse_seconds,amplitude,weight\n"
            << memnn::format_double(br_pulse) << ',' << memnn::format_double(amplitude)
            << ',' << memnn::format_double(weight) << '\n';
      }
    } else if (kernel_cmd->parsed()) {
      subcommand_label = "kernel";
      meta_flag = k_meta;
      if (k_name.empty() == k_weights.empty())
        throw std::invalid_argument("give exactly one of --kernel or --weights");
      memnn::KernelSpec kernel;
      if (!k_name.empty()) {
        kernel = memnn::named_kernel(k_name);
      } else {
        const std::vector<double> taps = parse_number_list(k_weights);
        if (taps.size() != 9)
          throw std::invalid_argument("--weights needs exactly nine values");
        for (int i = 0; i < 9; ++i) kernel.weights(i / 3, i % 3) = taps[static_cast<std::size_t>(i)];
      }
      kernel.realization = k_mode == "bridge" ? memnn::KernelRealization::BridgeQuantized
                                              : memnn::KernelRealization::Ideal;
      const memnn::ImageGrid img = memnn::read_pgm_file(k_in);
      const memnn::PixelVoltageMap map{k_vfull};
      const memnn::ImageGrid result = memnn::run_kernel(img, kernel, map, profile.device);
      memnn::write_pgm_file(k_out, result);
      ctx.outputs.push_back(k_out);
    } else if (ann_train->parsed()) {
      subcommand_label = "ann-train";
      meta_flag = at_meta;
      ctx.seed = at_seed;
      require_dataset(at_data);
      memnn::Dataset data = memnn::read_dataset_file(at_data);
      memnn::split_dataset(data, static_cast<unsigned>(at_seed));
      const memnn::Activation hidden = at_hidden == "relu" ? memnn::Activation::Relu
                                                           : memnn::Activation::TanhPade;
      const memnn::NetworkSpec fresh =
          memnn::make_network({9, 2, 2}, hidden, static_cast<unsigned>(at_seed));
      memnn::TrainTrace trace;
      const memnn::NetworkSpec trained = memnn::train_network(
          fresh, data, at_epochs, at_lr, static_cast<unsigned>(at_seed), &trace);
      memnn::write_network_file(trained, at_out);
      ctx.outputs.push_back(at_out);
      const std::string split_path = at_split_out.empty() ? at_out + ".split.csv" : at_split_out;
      {
        std::ofstream out = open_output(split_path, ctx);
        out << "index,split\n";
        for (int idx : data.train) out << idx << ",train\n";
        for (int idx : data.validation) out << idx << ",validation\n";
        for (int idx : data.test) out << idx << ",test\n";
      }
      std::cout << "samples " << data.features.rows() << " (dropped " << data.dropped_rows
                << " incomplete rows)\n"
                << "best epoch " << trace.best_epoch << '\n';
      print_confusion_line(std::cout, "train", memnn::accuracy(trained, data, data.train),
                           memnn::confusion(trained, data, data.train));
      print_confusion_line(std::cout, "validation",
                           memnn::accuracy(trained, data, data.validation),
                           memnn::confusion(trained, data, data.validation));
      print_confusion_line(std::cout, "test", memnn::accuracy(trained, data, data.test),
                           memnn::confusion(trained, data, data.test));
    } else if (ann_eval->parsed()) {
      subcommand_label = "ann-eval";
      meta_flag = ae_meta;
      ctx.seed = ae_seed;
      require_dataset(ae_data);
      memnn::Dataset data = memnn::read_dataset_file(ae_data);
      memnn::split_dataset(data, static_cast<unsigned>(ae_seed));
      memnn::NetworkSpec net = memnn::read_network_file(ae_model);
      if (ae_mode == "bridge" && net.mode == memnn::ForwardMode::Float) {
        net = memnn::quantize_to_bridge(
            net, profile.device, ae_amplitude.value_or(profile.programming_amplitude));
      } else if (ae_mode == "float") {
        net.mode = memnn::ForwardMode::Float;
      }
      std::ostringstream report;
      print_confusion_line(report, "train", memnn::accuracy(net, data, data.train),
                           memnn::confusion(net, data, data.train));
      print_confusion_line(report, "validation", memnn::accuracy(net, data, data.validation),
                           memnn::confusion(net, data, data.validation));
      print_confusion_line(report, "test", memnn::accuracy(net, data, data.test),
                           memnn::confusion(net, data, data.test));
      std::cout << report.str();
      if (!ae_out.empty()) {
        std::ofstream out = open_output(ae_out, ctx);
        out << report.str();
      }
    } else if (act->parsed()) {
      subcommand_label = "activation";
      meta_flag = act_meta;
      memnn::BlockNonideality limits;
      if (act_nonideal) limits.mode = memnn::BlockMode::Nonideal;

      double start = act_start.value_or(act_block == "relu" ? -1e-3 : 1e-5);
      double stop = act_stop.value_or(
          act_block == "tanh" || act_block == "tanh-structural" ? 2e-3 : 1e-3);
      double step = act_step.value_or(1e-5);
      if (!(step > 0.0) || stop < start) throw std::invalid_argument("bad sweep range");

      double m = 3.0 * act_unit, c = 3.0 * act_unit * act_unit;
      if (act_calibrate) {
        const memnn::TanhCalibration fit = memnn::calibrate_tanh(act_unit);
        m = fit.m;
        c = fit.c;
      }
      if (act_m) m = *act_m;
      if (act_c) c = *act_c;

      const long n = std::lround((stop - start) / step);
      std::vector<std::pair<double, double>> rows;
      rows.reserve(static_cast<std::size_t>(n) + 1);
      for (long k = 0; k <= n; ++k) {
        const double x = start + static_cast<double>(k) * step;
        double y;
        if (act_block == "relu")
          y = memnn::relu(x, act_ceiling);
        else if (act_block == "squarer")
          y = memnn::squarer(x, act_unit, limits);
        else if (act_block == "divider")
          y = memnn::divider(x, act_unit, limits);
        else if (act_block == "multiplier")
          y = memnn::multiplier(x, act_second, act_unit, limits);
        else if (act_block == "tanh")
          y = memnn::tanh_block(x, m, c);
        else
          y = memnn::tanh_block_structural(x, m, c, act_unit, limits);
        rows.emplace_back(x, y);
      }
      write_curve_csv(act_out, rows, ctx);
    } else if (pool->parsed()) {
      subcommand_label = "pool";
      meta_flag = pool_meta;
      if (!(pool_step > 0.0) || pool_stop < pool_start)
        throw std::invalid_argument("bad sweep range");
      const std::vector<double> others = parse_number_list(pool_others);
      const long n = std::lround((pool_stop - pool_start) / pool_step);
      std::vector<std::pair<double, double>> rows;
      rows.reserve(static_cast<std::size_t>(n) + 1);
      std::vector<double> inputs(others.size() + 1);
      std::copy(others.begin(), others.end(), inputs.begin() + 1);
      for (long k = 0; k <= n; ++k) {
        inputs[0] = pool_start + static_cast<double>(k) * pool_step;
        rows.emplace_back(inputs[0], memnn::max_pool_block(inputs, pool_threshold));
      }
      write_curve_csv(pool_out, rows, ctx);
    }

    write_metadata(ctx, subcommand_label, meta_flag);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
