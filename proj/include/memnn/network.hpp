#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "memnn/device.hpp"

namespace memnn {

enum class Activation { Relu, TanhPade };
enum class ForwardMode { Float, BridgeQuantized };

/* Feedforward classifier. weights[l] maps layer l to layer l+1, one row
 * per destination node; biases[l] has one entry per destination node.
 * In BridgeQuantized mode every weight and bias has been replaced by a
 * synapse-realizable value and the forward pass routes through the
 * behavioral circuit blocks. */
struct NetworkSpec {
  std::vector<int> layer_sizes{9, 2, 2};
  Activation hidden_activation = Activation::Relu;
  ForwardMode mode = ForwardMode::Float;
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

/* Shape consistency with layer_sizes; in BridgeQuantized mode also the
 * realizability bound |w| < 1. Throws std::invalid_argument. */
void validate(const NetworkSpec& net);

/* Fresh float-mode network: weights uniform in [-0.5, 0.5), zero biases,
 * reproducible for a given seed. */
NetworkSpec make_network(const std::vector<int>& layer_sizes,
                         Activation hidden_activation, unsigned seed);

/* Shift-invariant, strictly positive, sums to one. */
Eigen::VectorXd softmax(const Eigen::VectorXd& z);

struct ForwardResult {
  Eigen::VectorXd probabilities;
  int prediction;  // argmax class index, lowest index on ties
};

ForwardResult forward(const NetworkSpec& net, const Eigen::VectorXd& features);

/* Tumor samples, one per row, each attribute scaled from its 1..10 raw
 * range to [-1, 1]. Labels: 0 = benign, 1 = malignant. Rows with a
 * missing attribute are dropped at ingestion and counted. */
struct Dataset {
  Eigen::MatrixXd features;
  Eigen::VectorXi labels;
  std::vector<int> train, validation, test;
  long dropped_rows = 0;
};

/* Comma-separated rows: id, nine attributes in 1..10 ('?' = missing),
 * class 2 (benign) or 4 (malignant). */
Dataset read_dataset(std::istream& in);
Dataset read_dataset_file(const std::string& path);

/* Seeded shuffle into 70/15/15 train/validation/test index sets. */
void split_dataset(Dataset& data, unsigned seed);

struct TrainTrace {
  std::vector<double> loss;                 // mean train cross-entropy; [0] is pre-training
  std::vector<double> validation_accuracy;  // same indexing
  int best_epoch = 0;
};

/* Mini-batch gradient descent with cross-entropy loss, deterministic for
 * a given seed. Weights and biases are projected onto [-0.95, 0.95]
 * after every update so the result stays inside the synapse range with
 * margin. Returns the snapshot with the best validation accuracy. */
NetworkSpec train_network(const NetworkSpec& net, const Dataset& data, int epochs,
                          double lr, unsigned seed, TrainTrace* trace = nullptr);

struct QuantizeReport {
  int programmed = 0;     // distinct targets run through a programming cycle
  int reused = 0;         // repeated targets served from the cache
  int clamped = 0;        // targets pulled inside the weight limit
  double max_shift = 0.0; // largest |realized - requested| over all entries
};

/* Replaces every weight and bias with the value a freshly programmed
 * synapse actually settles at, and switches the network to
 * BridgeQuantized mode. Targets are clamped to [-weight_limit,
 * weight_limit], which must sit inside the device's weight range. */
NetworkSpec quantize_to_bridge(const NetworkSpec& net, const DeviceParams& device,
                               double amplitude = 1.0, double weight_limit = 0.95,
                               QuantizeReport* report = nullptr);

double accuracy(const NetworkSpec& net, const Dataset& data,
                const std::vector<int>& indices);

/* counts[actual][predicted]; requires a two-node output layer. */
std::array<std::array<int, 2>, 2> confusion(const NetworkSpec& net, const Dataset& data,
                                            const std::vector<int>& indices);

/* Plain text: one header line (layer sizes, activation, mode), then each
 * layer's weight matrix row-major followed by its bias vector. Numbers
 * use the shortest representation that parses back bit-exactly. */
void write_network(const NetworkSpec& net, std::ostream& out);
void write_network_file(const NetworkSpec& net, const std::string& path);
NetworkSpec read_network(std::istream& in);
NetworkSpec read_network_file(const std::string& path);

}  // namespace memnn
