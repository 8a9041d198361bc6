#pragma once

#include "trilinpa/types.hpp"

namespace trilinpa {

// exp(-i * scale * H) for hermitian H, by eigendecomposition. Exactly unitary
// up to the eigensolver's accuracy, which is what the squeeze construction
// and the small-dimension propagator need. Throws NonHermitian when H is not
// hermitian within tol.
DenseMatrix hermitian_phase_exp(const DenseMatrix& h, double scale,
                                double tol = 1e-12);

}  // namespace trilinpa
