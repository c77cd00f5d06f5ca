#include "encalc/linalg.hpp"

#include <utility>

namespace encalc::linalg {

/*
 * Bareiss fraction-free elimination: after step k every entry equals a
 * (k+1)x(k+1) minor of the original matrix, and the division by the previous
 * pivot is exact. No rounding can occur at any point.
 */
Int det(const IntMatrix& m) {
    const int n = m.dim();
    if (n == 0) return 1;
    if (n == 1) return m.at(0, 0);
    if (n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);

    IntMatrix w = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i) {
                if (w.at(i, k) != 0) {
                    p = i;
                    break;
                }
            }
            if (p < 0) return 0;
            for (int j = k; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                mpz_divexact(w.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            w.at(i, k) = 0;
        }
        prev = w.at(k, k);
    }
    return sign < 0 ? Int(-w.at(n - 1, n - 1)) : w.at(n - 1, n - 1);
}

bool negative_definite(const IntMatrix& m) {
    const int n = m.dim();
    if (n == 0) return true;
    IntMatrix w = m;
    Int prev = 1;
    for (int k = 0; k < n; ++k) {
        // w.at(k,k) is the k+1-st leading principal minor; its sign must be (-1)^(k+1).
        const int want = (k % 2 == 0) ? -1 : 1;
        if (sgn(w.at(k, k)) != want) return false;
        if (k == n - 1) break;
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                mpz_divexact(w.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            w.at(i, k) = 0;
        }
        prev = w.at(k, k);
    }
    return true;
}

std::vector<Rat> solve_exact(const IntMatrix& a, const std::vector<Int>& b) {
    const int n = a.dim();
    if (static_cast<int>(b.size()) != n) throw Error("solve_exact: size mismatch");
    if (n == 0) return {};

    // Fraction-free forward elimination on [a | b], then rational back substitution.
    std::vector<std::vector<Int>> w(n, std::vector<Int>(n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w[i][j] = a.at(i, j);
        w[i][n] = b[i];
    }
    Int prev = 1;
    for (int k = 0; k < n; ++k) {
        if (w[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i) {
                if (w[i][k] != 0) {
                    p = i;
                    break;
                }
            }
            if (p < 0) throw SingularMatrix("solve_exact: matrix is singular");
            std::swap(w[k], w[p]);
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j <= n; ++j) {
                Int t = w[i][j] * w[k][k] - w[i][k] * w[k][j];
                mpz_divexact(w[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            w[i][k] = 0;
        }
        prev = w[k][k];
    }

    std::vector<Rat> x(n);
    for (int i = n - 1; i >= 0; --i) {
        Rat s(w[i][n]);
        for (int j = i + 1; j < n; ++j) s -= Rat(w[i][j]) * x[j];
        x[i] = s / Rat(w[i][i]);
        x[i].canonicalize();
    }
    for (auto& r : x) r.canonicalize();
    return x;
}

std::string rat_str(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    return c.get_str();
}

} // namespace encalc::linalg
