#include "tempo/walsh.hpp"

#include <algorithm>
#include <string>

#include "tempo/errors.hpp"

namespace tempo {

WalshMatrix walsh_matrix(int n) {
  if (n < 4 || (n & (n - 1)) != 0) {
    throw ConfigError("Walsh order must be a power of two >= 4, got " + std::to_string(n));
  }
  WalshMatrix w(1, 1);
  w(0, 0) = 1;
  while (w.rows() < n) {
    const auto m = w.rows();
    WalshMatrix next(2 * m, 2 * m);
    next.topLeftCorner(m, m) = w;
    next.topRightCorner(m, m) = w;
    next.bottomLeftCorner(m, m) = w;
    next.bottomRightCorner(m, m) = -w;
    w.swap(next);
  }
  return w;
}

int sign_changes(const Eigen::VectorXi& row) {
  int flips = 0;
  for (Eigen::Index i = 1; i < row.size(); ++i) {
    if (row[i] != row[i - 1]) ++flips;
  }
  return flips;
}

namespace {

// Sign-change counts of all pairwise element-wise row products.
Eigen::MatrixXi pair_flip_table(const WalshMatrix& w) {
  const auto n = w.rows();
  Eigen::MatrixXi flips = Eigen::MatrixXi::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      const Eigen::VectorXi prod = w.row(a).cwiseProduct(w.row(b)).transpose();
      flips(a, b) = flips(b, a) = sign_changes(prod);
    }
  }
  return flips;
}

}  // namespace

std::vector<int> greedy_max_flip_rows(const WalshMatrix& w, int d) {
  const int n = static_cast<int>(w.rows());
  if (d < 2) throw ConfigError("selection needs d >= 2, got " + std::to_string(d));
  if (d > n) {
    throw ConfigError("cannot select " + std::to_string(d) + " rows from order " +
                      std::to_string(n));
  }
  const Eigen::MatrixXi flips = pair_flip_table(w);

  // Seed: the pair with the most flips; lexicographically first on ties.
  int best_a = 0;
  int best_b = 1;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (flips(a, b) > flips(best_a, best_b)) {
        best_a = a;
        best_b = b;
      }
    }
  }
  std::vector<int> picked{best_a, best_b};
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  used[static_cast<std::size_t>(best_a)] = used[static_cast<std::size_t>(best_b)] = 1;

  while (static_cast<int>(picked.size()) < d) {
    int best_row = -1;
    long best_gain = -1;
    for (int c = 0; c < n; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      long gain = 0;
      for (int p : picked) gain += flips(p, c);
      if (gain > best_gain) {
        best_gain = gain;
        best_row = c;
      }
    }
    picked.push_back(best_row);
    used[static_cast<std::size_t>(best_row)] = 1;
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace tempo
