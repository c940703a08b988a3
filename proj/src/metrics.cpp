#include "tempo/metrics.hpp"

#include <cmath>
#include <string>

#include "tempo/errors.hpp"

namespace tempo {

namespace {

double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

Eigen::VectorXd resolve_prior(const Eigen::VectorXd& prior, int d) {
  if (prior.size() == 0) return Eigen::VectorXd::Constant(d, 1.0 / d);
  if (prior.size() != d) {
    throw ConfigError("prior has " + std::to_string(prior.size()) + " entries for d = " +
                      std::to_string(d));
  }
  if (prior.minCoeff() < 0.0) throw ConfigError("prior probabilities must be non-negative");
  const double total = prior.sum();
  if (!(total > 0.0)) throw ConfigError("prior must have positive total mass");
  return prior / total;
}

}  // namespace

ErsResult ers(const DetectionMatrix& m) {
  validate_probabilities(m);
  if (!(m.p.sum() > 0.0)) {
    throw ConfigError("detection matrix is all-zero; no detections to score");
  }
  ErsResult out;
  out.per_input_error.resize(m.d);
  double eff = 0.0;
  for (Eigen::Index k = 0; k < m.d; ++k) {
    const double row = m.p.row(k).sum();
    eff += row;
    out.per_input_error[k] = row > 0.0 ? 1.0 - m.p(k, k) / row : 1.0 - 1.0 / m.d;
  }
  out.ers = out.per_input_error.mean();
  out.mean_detection_efficiency = eff / m.d;
  return out;
}

DetectionMatrix degrade(const DetectionMatrix& m, const ChannelModel& model) {
  validate_probabilities(m);
  if (model.loss < 0.0 || model.loss >= 1.0) throw ConfigError("loss must lie in [0, 1)");
  if (model.dark_rate < 0.0) throw ConfigError("dark rate must be non-negative");
  if (model.gate_window < 0.0) throw ConfigError("gate window must be non-negative");
  const double dark = model.dark_rate * model.gate_window;
  if (dark >= 1.0) {
    throw ConfigError("dark counts saturate the gate (probability " + std::to_string(dark) + ")");
  }
  DetectionMatrix out;
  out.d = m.d;
  out.p = (((1.0 - model.loss) * m.p).array() + dark).cwiseMax(0.0).cwiseMin(1.0).matrix();
  return out;
}

MiResult mutual_information(const DetectionMatrix& m, const Eigen::VectorXd& prior) {
  validate_probabilities(m);
  const Eigen::VectorXd pi = resolve_prior(prior, m.d);

  // Outcome distribution per input: d click outcomes plus erasure (no click).
  Eigen::MatrixXd q(m.d, m.d + 1);
  for (Eigen::Index k = 0; k < m.d; ++k) {
    const double row = m.p.row(k).sum();
    if (row > 1.0) {
      q.row(k).head(m.d) = m.p.row(k) / row;
      q(k, m.d) = 0.0;
    } else {
      q.row(k).head(m.d) = m.p.row(k);
      q(k, m.d) = 1.0 - row;
    }
  }

  MiResult out;
  const Eigen::VectorXd marginal = q.transpose() * pi;
  for (Eigen::Index y = 0; y < marginal.size(); ++y) {
    out.output_entropy += entropy_term(marginal[y]);
  }
  for (Eigen::Index k = 0; k < m.d; ++k) {
    double h = 0.0;
    for (Eigen::Index y = 0; y <= m.d; ++y) h += entropy_term(q(k, y));
    out.conditional_entropy += pi[k] * h;
  }
  out.bits_per_symbol = out.output_entropy - out.conditional_entropy;
  if (out.bits_per_symbol < 0.0 && out.bits_per_symbol > -1e-12) out.bits_per_symbol = 0.0;
  out.erasure_probability = pi.dot(q.col(m.d));
  return out;
}

}  // namespace tempo
