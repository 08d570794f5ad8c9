#ifndef ILLDIST_INTLINALG_HPP
#define ILLDIST_INTLINALG_HPP

#include <gmpxx.h>

#include <vector>

namespace illdist {

using MpzRow = std::vector<mpz_class>;
using MpzMatrix = std::vector<MpzRow>;  // row-major

// Basis of the saturated right kernel {v in Z^n : A v = 0} of an m x n
// integer matrix, one basis vector per row of the result. Intersects the
// standard basis of Z^n with one constraint row at a time via a unimodular
// Euclidean descent, so the result spans the kernel lattice exactly (not
// merely a finite-index sublattice).
MpzMatrix integer_kernel_basis(const MpzMatrix& A);

// In-place LLL reduction (delta = 3/4) of a linearly independent basis,
// all-integer variant operating on Gram data, so no rational arithmetic
// appears anywhere. Exact but slow in high dimension.
void lll_reduce(MpzMatrix& basis);

// Schnorr-Euchner LLL with double-precision Gram-Schmidt and exact integer
// row operations. Entries must stay below ~2^480 so the Gram fits in
// doubles. Returns false when the iteration cap or a precision breakdown is
// hit, in which case the basis still spans the same lattice and the exact
// variant can finish the job. Callers that need guarantees must verify
// outputs independently; this routine only promises lattice equality.
bool lll_reduce_fp(MpzMatrix& basis);

mpz_class dot(const MpzRow& a, const MpzRow& b);

}  // namespace illdist

#endif
