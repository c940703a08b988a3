#pragma once

#include <Eigen/Core>

#include "tempo/detection.hpp"

namespace tempo {

// Detector-chain imperfections applied on top of a base detection matrix.
struct ChannelModel {
  DetectionMatrix base;
  double loss = 0.0;       // combined channel + detector loss, [0, 1]
  double dark_rate = 0.0;  // [1/s]
  double gate_window = 0.0;  // [s]
  Eigen::VectorXd prior;   // input distribution; empty means uniform
};

struct ErsResult {
  double ers = 0.0;  // mean over inputs of 1 - p_kk / (row sum)
  Eigen::VectorXd per_input_error;
  double mean_detection_efficiency = 0.0;  // mean row sum
};

// Error-rate score of a detection matrix. Rows with zero total probability
// carry no information and count as the chance error 1 - 1/d.
ErsResult ers(const DetectionMatrix& m);

// p' = (1 - loss) * p + dark_rate * gate_window, clamped to [0, 1].
DetectionMatrix degrade(const DetectionMatrix& m, const ChannelModel& model);

struct MiResult {
  double bits_per_symbol = 0.0;
  double output_entropy = 0.0;       // H(Y), bits
  double conditional_entropy = 0.0;  // H(Y|X), bits
  double erasure_probability = 0.0;  // prior-weighted no-click probability
};

// Mutual information of the channel with d click outcomes plus a no-click
// erasure outcome per input. An empty prior means uniform. Rows whose sum
// exceeds 1 by roundoff are renormalized before use.
MiResult mutual_information(const DetectionMatrix& m, const Eigen::VectorXd& prior);

}  // namespace tempo
