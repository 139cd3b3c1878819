#pragma once

#include "sslab/types.hpp"

namespace sslab {

// Hermitian eigensolver (zheevd). `a` is overwritten by the eigenvectors when
// vectors is true. Eigenvalues come back ascending.
RVector hermitian_eig(CMatrix& a, bool vectors);

// Singular values (zgesdd, no vectors), descending. Input is copied.
RVector singular_values(const CMatrix& a);

}  // namespace sslab
