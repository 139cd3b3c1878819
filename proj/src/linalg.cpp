#include "sslab/linalg.hpp"

#include <algorithm>
#include <string>

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace sslab {

RVector hermitian_eig(CMatrix& a, bool vectors) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  if (a.cols() != a.rows()) throw ConfigError("matrix", "eigensolver needs a square matrix");
  RVector w(n);
  if (n == 0) return w;
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'U', n, a.data(), n, w.data());
  if (info != 0) throw LabError("zheevd failed with info " + std::to_string(info));
  return w;
}

RVector singular_values(const CMatrix& a) {
  CMatrix work = a;
  const lapack_int m = static_cast<lapack_int>(a.rows()), n = static_cast<lapack_int>(a.cols());
  RVector s(std::min(m, n));
  if (s.size() == 0) return s;
  const lapack_int info =
      LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m, s.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw LabError("zgesdd failed with info " + std::to_string(info));
  return s;
}

}  // namespace sslab
