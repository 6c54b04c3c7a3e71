#include "memnn/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "memnn/blocks.hpp"
#include "memnn/bridge.hpp"
#include "memnn/signal.hpp"

namespace memnn {

namespace {

// Projection bound applied by the trainer; leaves margin below the
// 0.9756 synapse ceiling so quantization is a small perturbation.
constexpr double trained_weight_limit = 0.95;

double activation_value(Activation act, double z) {
  if (act == Activation::Relu) return z < 0.0 ? 0.0 : z;
  return 3.0 * z / (z * z + 3.0);
}

double activation_slope(Activation act, double z) {
  if (act == Activation::Relu) return z > 0.0 ? 1.0 : 0.0;
  const double d = z * z + 3.0;
  return 3.0 * (3.0 - z * z) / (d * d);
}

// Circuit path: signed contributions split onto the two summing rails.
double summed_node(const Eigen::MatrixXd& w, const Eigen::VectorXd& bias,
                   const Eigen::VectorXd& a, Eigen::Index row) {
  std::vector<double> plus;
  std::vector<double> minus;
  plus.reserve(static_cast<std::size_t>(a.size()) + 1);
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    const double p = w(row, j) * a(j);
    (p >= 0.0 ? plus : minus).push_back(std::abs(p));
  }
  const double b = bias(row) * 1.0;  // bias as a synapse driven by a unit input
  (b >= 0.0 ? plus : minus).push_back(std::abs(b));
  return summing(plus, minus);
}

double uniform_signed(std::mt19937& rng) {
  return static_cast<double>(rng()) / 4294967296.0 - 0.5;
}

void shuffle_indices(std::vector<int>& v, std::mt19937& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng() % i]);
}

void check_sample_indices(const Dataset& data, const std::vector<int>& indices) {
  const int n = static_cast<int>(data.features.rows());
  for (int idx : indices)
    if (idx < 0 || idx >= n) throw std::out_of_range("sample index outside the dataset");
}

}  // namespace

void validate(const NetworkSpec& net) {
  if (net.layer_sizes.size() < 2)
    throw std::invalid_argument("network needs at least input and output layers");
  for (int s : net.layer_sizes)
    if (s < 1) throw std::invalid_argument("layer sizes must be positive");
  const std::size_t layers = net.layer_sizes.size() - 1;
  if (net.weights.size() != layers || net.biases.size() != layers)
    throw std::invalid_argument("weight/bias count does not match layer_sizes");
  for (std::size_t l = 0; l < layers; ++l) {
    if (net.weights[l].rows() != net.layer_sizes[l + 1] ||
        net.weights[l].cols() != net.layer_sizes[l])
      throw std::invalid_argument("weight matrix shape does not match layer_sizes");
    if (net.biases[l].size() != net.layer_sizes[l + 1])
      throw std::invalid_argument("bias vector shape does not match layer_sizes");
    if (net.mode == ForwardMode::BridgeQuantized) {
      if (net.weights[l].cwiseAbs().maxCoeff() >= 1.0 ||
          net.biases[l].cwiseAbs().maxCoeff() >= 1.0)
        throw std::invalid_argument("quantized weights exceed the synapse range");
    }
  }
}

NetworkSpec make_network(const std::vector<int>& layer_sizes,
                         Activation hidden_activation, unsigned seed) {
  NetworkSpec net;
  net.layer_sizes = layer_sizes;
  net.hidden_activation = hidden_activation;
  if (layer_sizes.size() < 2)
    throw std::invalid_argument("network needs at least input and output layers");
  for (int s : layer_sizes)
    if (s < 1) throw std::invalid_argument("layer sizes must be positive");
  std::mt19937 rng(seed);
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    Eigen::MatrixXd w(layer_sizes[l + 1], layer_sizes[l]);
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = uniform_signed(rng);
    net.weights.push_back(std::move(w));
    net.biases.push_back(Eigen::VectorXd::Zero(layer_sizes[l + 1]));
  }
  return net;
}

Eigen::VectorXd softmax(const Eigen::VectorXd& z) {
  if (z.size() == 0) throw std::invalid_argument("softmax of an empty vector");
  if (!z.allFinite()) throw std::invalid_argument("softmax input must be finite");
  Eigen::VectorXd e = (z.array() - z.maxCoeff()).exp();
  return e / e.sum();
}

ForwardResult forward(const NetworkSpec& net, const Eigen::VectorXd& features) {
  validate(net);
  if (features.size() != net.layer_sizes.front())
    throw std::invalid_argument("feature count does not match the input layer");
  if (!features.allFinite()) throw std::invalid_argument("features must be finite");

  Eigen::VectorXd a = features;
  const std::size_t layers = net.weights.size();
  for (std::size_t l = 0; l < layers; ++l) {
    Eigen::VectorXd z(net.weights[l].rows());
    if (net.mode == ForwardMode::Float) {
      z = net.weights[l] * a + net.biases[l];
    } else {
      for (Eigen::Index r = 0; r < z.size(); ++r)
        z(r) = summed_node(net.weights[l], net.biases[l], a, r);
    }
    if (l + 1 < layers) {
      if (net.mode == ForwardMode::Float) {
        for (Eigen::Index r = 0; r < z.size(); ++r)
          z(r) = activation_value(net.hidden_activation, z(r));
      } else {
        for (Eigen::Index r = 0; r < z.size(); ++r)
          z(r) = net.hidden_activation == Activation::Relu
                     ? relu(z(r))
                     : tanh_block(z(r), 3.0, 3.0);
      }
    }
    a = std::move(z);
  }

  ForwardResult out;
  out.probabilities = softmax(a);
  Eigen::Index best = 0;
  out.probabilities.maxCoeff(&best);
  out.prediction = static_cast<int>(best);
  return out;
}

Dataset read_dataset(std::istream& in) {
  std::vector<std::array<double, 9>> rows;
  std::vector<int> labels;
  long dropped = 0;

  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    const std::string where = " at line " + std::to_string(line_no);
    if (fields.size() != 11)
      throw std::invalid_argument("expected 11 comma-separated fields" + where);

    parse_double(fields[0]);  // sample id: numeric, otherwise unused

    bool missing = false;
    std::array<double, 9> attrs{};
    for (int k = 0; k < 9; ++k) {
      const std::string& f = fields[static_cast<std::size_t>(k) + 1];
      if (f == "?") {
        missing = true;
        continue;
      }
      double v;
      try {
        v = parse_double(f);
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad attribute value '" + f + "'" + where);
      }
      if (v < 1.0 || v > 10.0)
        throw std::invalid_argument("attribute outside 1..10" + where);
      attrs[static_cast<std::size_t>(k)] = (v - 5.5) / 4.5;
    }

    const std::string& cls = fields[10];
    int label;
    if (cls == "2")
      label = 0;
    else if (cls == "4")
      label = 1;
    else
      throw std::invalid_argument("class must be 2 or 4" + where);

    if (missing) {
      ++dropped;
      continue;
    }
    rows.push_back(attrs);
    labels.push_back(label);
  }

  Dataset data;
  data.dropped_rows = dropped;
  data.features.resize(static_cast<Eigen::Index>(rows.size()), 9);
  data.labels.resize(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int k = 0; k < 9; ++k)
      data.features(static_cast<Eigen::Index>(i), k) = rows[i][static_cast<std::size_t>(k)];
    data.labels(static_cast<Eigen::Index>(i)) = labels[i];
  }
  return data;
}

Dataset read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open dataset file: " + path);
  try {
    return read_dataset(in);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void split_dataset(Dataset& data, unsigned seed) {
  const int n = static_cast<int>(data.features.rows());
  if (n < 1) throw std::invalid_argument("cannot split an empty dataset");
  if (data.labels.size() != n)
    throw std::invalid_argument("feature/label count mismatch");

  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::mt19937 rng(seed);
  shuffle_indices(order, rng);

  const int n_train = 70 * n / 100;
  const int n_val = 15 * n / 100;
  data.train.assign(order.begin(), order.begin() + n_train);
  data.validation.assign(order.begin() + n_train, order.begin() + n_train + n_val);
  data.test.assign(order.begin() + n_train + n_val, order.end());
  std::sort(data.train.begin(), data.train.end());
  std::sort(data.validation.begin(), data.validation.end());
  std::sort(data.test.begin(), data.test.end());
}

namespace {

struct LayerCache {
  std::vector<Eigen::VectorXd> pre;   // z per trained layer
  std::vector<Eigen::VectorXd> post;  // input, then activations per layer
};

LayerCache float_forward_cached(const NetworkSpec& net, const Eigen::VectorXd& x) {
  LayerCache cache;
  cache.post.push_back(x);
  Eigen::VectorXd a = x;
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    Eigen::VectorXd z = net.weights[l] * a + net.biases[l];
    cache.pre.push_back(z);
    if (l + 1 < net.weights.size())
      for (Eigen::Index r = 0; r < z.size(); ++r)
        z(r) = activation_value(net.hidden_activation, z(r));
    cache.post.push_back(z);
    a = cache.post.back();
  }
  return cache;
}

double mean_loss(const NetworkSpec& net, const Dataset& data,
                 const std::vector<int>& indices) {
  double total = 0.0;
  for (int idx : indices) {
    const LayerCache cache = float_forward_cached(net, data.features.row(idx).transpose());
    const Eigen::VectorXd p = softmax(cache.post.back());
    total += -std::log(std::max(p(data.labels(idx)), 1e-300));
  }
  return total / static_cast<double>(indices.size());
}

void clip_in_place(NetworkSpec& net, double limit) {
  for (auto& w : net.weights) w = w.cwiseMax(-limit).cwiseMin(limit);
  for (auto& b : net.biases) b = b.cwiseMax(-limit).cwiseMin(limit);
}

}  // namespace

NetworkSpec train_network(const NetworkSpec& net, const Dataset& data, int epochs,
                          double lr, unsigned seed, TrainTrace* trace) {
  validate(net);
  if (net.mode != ForwardMode::Float)
    throw std::invalid_argument("training requires float mode");
  if (epochs < 0) throw std::invalid_argument("epochs must be non-negative");
  if (!(lr > 0.0) || !std::isfinite(lr))
    throw std::invalid_argument("learning rate must be positive and finite");
  if (data.train.empty() || data.validation.empty())
    throw std::invalid_argument("dataset has no train/validation split");
  if (data.features.cols() != net.layer_sizes.front())
    throw std::invalid_argument("dataset width does not match the input layer");
  check_sample_indices(data, data.train);
  check_sample_indices(data, data.validation);
  const int classes = net.layer_sizes.back();
  for (int idx : data.train)
    if (data.labels(idx) < 0 || data.labels(idx) >= classes)
      throw std::invalid_argument("label outside the output layer range");

  constexpr int batch_size = 32;
  NetworkSpec current = net;
  NetworkSpec best = net;
  double best_acc = accuracy(current, data, data.validation);
  int best_epoch = 0;
  if (trace) {
    trace->loss.assign(1, mean_loss(current, data, data.train));
    trace->validation_accuracy.assign(1, best_acc);
    trace->best_epoch = 0;
  }

  std::mt19937 rng(seed);
  std::vector<int> order = data.train;
  const std::size_t layers = current.weights.size();

  for (int epoch = 1; epoch <= epochs; ++epoch) {
    shuffle_indices(order, rng);
    for (std::size_t begin = 0; begin < order.size(); begin += batch_size) {
      const std::size_t end = std::min(order.size(), begin + batch_size);
      std::vector<Eigen::MatrixXd> gw;
      std::vector<Eigen::VectorXd> gb;
      for (std::size_t l = 0; l < layers; ++l) {
        gw.push_back(Eigen::MatrixXd::Zero(current.weights[l].rows(),
                                           current.weights[l].cols()));
        gb.push_back(Eigen::VectorXd::Zero(current.biases[l].size()));
      }
      for (std::size_t k = begin; k < end; ++k) {
        const int idx = order[k];
        const LayerCache cache =
            float_forward_cached(current, data.features.row(idx).transpose());
        Eigen::VectorXd delta = softmax(cache.post.back());
        delta(data.labels(idx)) -= 1.0;
        for (std::size_t l = layers; l-- > 0;) {
          gw[l] += delta * cache.post[l].transpose();
          gb[l] += delta;
          if (l == 0) break;
          Eigen::VectorXd upstream = current.weights[l].transpose() * delta;
          delta.resize(upstream.size());
          for (Eigen::Index r = 0; r < upstream.size(); ++r)
            delta(r) = upstream(r) * activation_slope(current.hidden_activation,
                                                      cache.pre[l - 1](r));
        }
      }
      const double scale = lr / static_cast<double>(end - begin);
      for (std::size_t l = 0; l < layers; ++l) {
        current.weights[l] -= scale * gw[l];
        current.biases[l] -= scale * gb[l];
      }
      clip_in_place(current, trained_weight_limit);
    }

    const double val_acc = accuracy(current, data, data.validation);
    if (val_acc > best_acc) {
      best_acc = val_acc;
      best = current;
      best_epoch = epoch;
    }
    if (trace) {
      trace->loss.push_back(mean_loss(current, data, data.train));
      trace->validation_accuracy.push_back(val_acc);
    }
  }

  if (trace) trace->best_epoch = best_epoch;
  return best;
}

NetworkSpec quantize_to_bridge(const NetworkSpec& net, const DeviceParams& device,
                               double amplitude, double weight_limit,
                               QuantizeReport* report) {
  validate(net);
  validate(device);
  const double w_max = max_bridge_weight(device);
  if (!(weight_limit > 0.0) || weight_limit >= w_max)
    throw std::invalid_argument("weight limit must sit inside the synapse range");
  if (!(std::abs(amplitude) > 0.0))
    throw std::invalid_argument("programming amplitude must be nonzero");

  QuantizeReport stats;
  std::map<double, double> cache;
  const auto realize = [&](double requested) {
    double target = std::clamp(requested, -weight_limit, weight_limit);
    if (target != requested) ++stats.clamped;
    const auto hit = cache.find(target);
    double realized;
    if (hit != cache.end()) {
      ++stats.reused;
      realized = hit->second;
    } else {
      BridgeSynapse synapse = make_balanced_bridge(device, std::abs(amplitude));
      program_to_weight(synapse, target, std::abs(amplitude));
      realized = bridge_weight(synapse);
      cache.emplace(target, realized);
      ++stats.programmed;
    }
    stats.max_shift = std::max(stats.max_shift, std::abs(realized - requested));
    return realized;
  };

  NetworkSpec out = net;
  for (auto& w : out.weights)
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = realize(w(r, c));
  for (auto& b : out.biases)
    for (Eigen::Index r = 0; r < b.size(); ++r) b(r) = realize(b(r));
  out.mode = ForwardMode::BridgeQuantized;
  if (report) *report = stats;
  return out;
}

double accuracy(const NetworkSpec& net, const Dataset& data,
                const std::vector<int>& indices) {
  if (indices.empty()) throw std::invalid_argument("accuracy over an empty index set");
  check_sample_indices(data, indices);
  int hits = 0;
  for (int idx : indices) {
    const ForwardResult r = forward(net, data.features.row(idx).transpose());
    if (r.prediction == data.labels(idx)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(indices.size());
}

std::array<std::array<int, 2>, 2> confusion(const NetworkSpec& net, const Dataset& data,
                                            const std::vector<int>& indices) {
  if (net.layer_sizes.back() != 2)
    throw std::invalid_argument("confusion counts need a two-node output layer");
  check_sample_indices(data, indices);
  std::array<std::array<int, 2>, 2> counts{};
  for (int idx : indices) {
    const ForwardResult r = forward(net, data.features.row(idx).transpose());
    counts[static_cast<std::size_t>(data.labels(idx))]
          [static_cast<std::size_t>(r.prediction)]++;
  }
  return counts;
}

namespace {

const char* activation_token(Activation a) {
  return a == Activation::Relu ? "relu" : "tanh";
}

const char* mode_token(ForwardMode m) {
  return m == ForwardMode::Float ? "float" : "bridge";
}

}  // namespace

void write_network(const NetworkSpec& net, std::ostream& out) {
  validate(net);
  for (std::size_t i = 0; i < net.layer_sizes.size(); ++i)
    out << (i ? " " : "") << net.layer_sizes[i];
  out << ' ' << activation_token(net.hidden_activation) << ' '
      << mode_token(net.mode) << '\n';
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    const Eigen::MatrixXd& w = net.weights[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c)
        out << (c ? " " : "") << format_double(w(r, c));
      out << '\n';
    }
    const Eigen::VectorXd& b = net.biases[l];
    for (Eigen::Index r = 0; r < b.size(); ++r)
      out << (r ? " " : "") << format_double(b(r));
    out << '\n';
  }
  if (!out) throw std::runtime_error("model write failed");
}

void write_network_file(const NetworkSpec& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open model file for writing: " + path);
  write_network(net, out);
}

NetworkSpec read_network(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("empty model file");
  if (!header.empty() && header.back() == '\r') header.pop_back();

  std::istringstream hs(header);
  std::vector<std::string> tokens;
  for (std::string tok; hs >> tok;) tokens.push_back(tok);
  if (tokens.size() < 4)
    throw std::invalid_argument("model header needs sizes, activation, and mode");

  NetworkSpec net;
  net.layer_sizes.clear();
  for (std::size_t i = 0; i + 2 < tokens.size(); ++i) {
    std::size_t used = 0;
    int size = 0;
    try {
      size = std::stoi(tokens[i], &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad layer size in model header: " + tokens[i]);
    }
    if (used != tokens[i].size() || size < 1)
      throw std::invalid_argument("bad layer size in model header: " + tokens[i]);
    net.layer_sizes.push_back(size);
  }

  const std::string& act = tokens[tokens.size() - 2];
  if (act == "relu")
    net.hidden_activation = Activation::Relu;
  else if (act == "tanh")
    net.hidden_activation = Activation::TanhPade;
  else
    throw std::invalid_argument("unknown activation in model header: " + act);

  const std::string& mode = tokens.back();
  if (mode == "float")
    net.mode = ForwardMode::Float;
  else if (mode == "bridge")
    net.mode = ForwardMode::BridgeQuantized;
  else
    throw std::invalid_argument("unknown mode in model header: " + mode);

  const auto next_number = [&in]() {
    std::string tok;
    if (!(in >> tok)) throw std::invalid_argument("model file ends before all parameters");
    return parse_double(tok);
  };

  for (std::size_t l = 0; l + 1 < net.layer_sizes.size(); ++l) {
    Eigen::MatrixXd w(net.layer_sizes[l + 1], net.layer_sizes[l]);
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = next_number();
    Eigen::VectorXd b(net.layer_sizes[l + 1]);
    for (Eigen::Index r = 0; r < b.size(); ++r) b(r) = next_number();
    net.weights.push_back(std::move(w));
    net.biases.push_back(std::move(b));
  }

  std::string extra;
  if (in >> extra) throw std::invalid_argument("trailing data after model parameters");
  validate(net);
  return net;
}

NetworkSpec read_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file: " + path);
  try {
    return read_network(in);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace memnn
