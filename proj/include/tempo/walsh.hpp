#pragma once

#include <Eigen/Core>
#include <vector>

namespace tempo {

// Rows are Walsh codes in Hadamard (Sylvester) order, entries in {-1, +1}.
using WalshMatrix = Eigen::MatrixXi;

// Sylvester construction; n must be a power of two, n >= 4.
WalshMatrix walsh_matrix(int n);

// Number of adjacent sign flips in a +/-1 sequence.
int sign_changes(const Eigen::VectorXi& row);

// Greedily picks d rows maximizing the average pairwise sign-change count of
// element-wise row products: seeded with the best pair, then extended one row
// at a time. Ties resolve to the lowest row index, so the result is
// deterministic. Returns the selection sorted ascending.
std::vector<int> greedy_max_flip_rows(const WalshMatrix& w, int d);

}  // namespace tempo
