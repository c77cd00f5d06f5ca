#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "encalc/errors.hpp"

namespace encalc::linalg {

using Int = mpz_class;
using Rat = mpq_class;

// gmpxx has no long long overloads; LP64 long carries the graph data exactly.
inline Int make_int(long long v) {
    static_assert(sizeof(long) == 8, "64-bit long required");
    return Int(static_cast<long>(v));
}

// Square matrix of arbitrary-precision integers, row-major.
// Dimension 0 is allowed; its determinant is 1 (empty product).
class IntMatrix {
  public:
    IntMatrix() : n_(0) {}
    explicit IntMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

    int dim() const { return n_; }
    Int& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    static IntMatrix identity(int n) {
        IntMatrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

  private:
    int n_;
    std::vector<Int> a_;
};

// Exact determinant via fraction-free (Bareiss) elimination with row pivoting.
// det of the 0x0 matrix is 1.
Int det(const IntMatrix& m);

// True iff m is negative definite: leading principal minors m_k satisfy
// (-1)^k m_k > 0 for all k. Single Bareiss pass, no pivoting (a zero pivot
// means a zero minor, hence not definite).
bool negative_definite(const IntMatrix& m);

// Exact solution of a*x = b. Throws SingularMatrix when det(a) = 0.
// Components are returned in lowest terms with positive denominators.
std::vector<Rat> solve_exact(const IntMatrix& a, const std::vector<Int>& b);

// "p/q" in lowest terms, "p" when the denominator is 1.
std::string rat_str(const Rat& r);

} // namespace encalc::linalg
