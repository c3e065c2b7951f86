#pragma once

#include <Eigen/Dense>
#include <optional>

#include "sllm/liouvillian.hpp"

namespace sllm::detail {

struct TridiagonalEigen {
  ComplexVector values;   // algebraically largest real part first
  ComplexMatrix vectors;  // right eigenvectors of the original block, unit 2-norm
};

// Eigenpairs of a sector block through its real symmetric similarity
// transform. Applies when every lower(i) * upper(i) > 0 and the imaginary part
// of the diagonal is constant; otherwise returns nullopt. With max_pairs > 0
// only the pairs with the largest real parts are returned.
[[nodiscard]] std::optional<TridiagonalEigen> symmetrized_eigen(const SectorBlock& block,
                                                                int max_pairs, bool want_vectors);

}  // namespace sllm::detail
