#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "encalc/linalg.hpp"

using namespace encalc;
using linalg::Int;
using linalg::IntMatrix;
using linalg::Rat;

namespace {

// Independent oracle: plain cofactor expansion along the first row.
Int cofactor_det(const IntMatrix& m) {
    const int n = m.dim();
    if (n == 0) return 1;
    if (n == 1) return m.at(0, 0);
    Int acc = 0;
    for (int j = 0; j < n; ++j) {
        if (m.at(0, j) == 0) continue;
        IntMatrix sub(n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                sub.at(r - 1, cc++) = m.at(r, c);
            }
        }
        Int term = m.at(0, j) * cofactor_det(sub);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

IntMatrix random_matrix(std::mt19937_64& rng, int n, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    IntMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = dist(rng);
    return m;
}

} // namespace

TEST_CASE("det: small fixed cases") {
    IntMatrix one(1);
    one.at(0, 0) = -2;
    CHECK(linalg::det(one) == -2);

    CHECK(linalg::det(IntMatrix()) == 1); // empty product convention

    // subgraph {E1,E2,E3} of the five-vertex example, rows (E1,E2,E3)
    IntMatrix m(3);
    long long rows[3][3] = {{-3, 0, 1}, {0, -2, 1}, {1, 1, -3}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = linalg::make_int(rows[i][j]);
    CHECK(linalg::det(m) == -13);
}

TEST_CASE("det agrees with cofactor expansion up to dim 6") {
    std::mt19937_64 rng(7);
    for (int n = 0; n <= 6; ++n)
        for (int rep = 0; rep < 40; ++rep) {
            auto m = random_matrix(rng, n, -5, 5);
            CHECK(linalg::det(m) == cofactor_det(m));
        }
}

TEST_CASE("det is multiplicative on block-diagonal matrices") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 30; ++rep) {
        std::uniform_int_distribution<int> size(1, 4);
        int a = size(rng), b = size(rng);
        auto ma = random_matrix(rng, a, -4, 4);
        auto mb = random_matrix(rng, b, -4, 4);
        IntMatrix blk(a + b);
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < a; ++j) blk.at(i, j) = ma.at(i, j);
        for (int i = 0; i < b; ++i)
            for (int j = 0; j < b; ++j) blk.at(a + i, a + j) = mb.at(i, j);
        CHECK(linalg::det(blk) == linalg::det(ma) * linalg::det(mb));
    }
}

TEST_CASE("solve_exact: fixed cases") {
    IntMatrix a(1);
    a.at(0, 0) = -1;
    auto x = linalg::solve_exact(a, {Int(26)});
    REQUIRE(x.size() == 1);
    CHECK(x[0] == Rat(-26));

    auto id = IntMatrix::identity(3);
    auto y = linalg::solve_exact(id, {Int(1), Int(2), Int(3)});
    CHECK(y[0] == 1);
    CHECK(y[1] == 2);
    CHECK(y[2] == 3);
}

TEST_CASE("solve_exact substitutes back exactly") {
    std::mt19937_64 rng(13);
    int solved = 0;
    while (solved < 25) {
        std::uniform_int_distribution<int> size(1, 6);
        int n = size(rng);
        auto a = random_matrix(rng, n, -6, 6);
        if (linalg::det(a) == 0) continue;
        std::vector<Int> b;
        std::uniform_int_distribution<int> coef(-9, 9);
        for (int i = 0; i < n; ++i) b.push_back(coef(rng));
        auto x = linalg::solve_exact(a, b);
        for (int i = 0; i < n; ++i) {
            Rat acc(0);
            for (int j = 0; j < n; ++j) acc += Rat(a.at(i, j)) * x[j];
            CHECK(acc == Rat(b[i]));
        }
        ++solved;
    }
}

TEST_CASE("solve_exact rejects singular matrices") {
    IntMatrix z(2); // zero matrix
    CHECK_THROWS_AS(linalg::solve_exact(z, {Int(1), Int(1)}), SingularMatrix);
    IntMatrix s(2); // rank one
    s.at(0, 0) = 1;
    s.at(0, 1) = 2;
    s.at(1, 0) = 2;
    s.at(1, 1) = 4;
    CHECK_THROWS_AS(linalg::solve_exact(s, {Int(1), Int(1)}), SingularMatrix);
}

TEST_CASE("negative_definite on leading-minor sign patterns") {
    IntMatrix m(2);
    m.at(0, 0) = -2;
    m.at(0, 1) = 1;
    m.at(1, 0) = 1;
    m.at(1, 1) = -1;
    CHECK(linalg::negative_definite(m));

    m.at(1, 1) = 1;
    CHECK_FALSE(linalg::negative_definite(m));

    IntMatrix z(1);
    z.at(0, 0) = 0;
    CHECK_FALSE(linalg::negative_definite(z));
}

TEST_CASE("negative_definite matches the leading-minor oracle on random symmetric input") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 60; ++rep) {
        std::uniform_int_distribution<int> size(1, 6);
        int n = size(rng);
        auto m = random_matrix(rng, n, -4, 2);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) m.at(j, i) = m.at(i, j);
        bool oracle = true;
        for (int k = 1; k <= n && oracle; ++k) {
            IntMatrix lead(k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) lead.at(i, j) = m.at(i, j);
            Int mk = cofactor_det(lead);
            if ((k % 2 == 1 && mk >= 0) || (k % 2 == 0 && mk <= 0)) oracle = false;
        }
        CHECK(linalg::negative_definite(m) == oracle);
    }
}

TEST_CASE("rat_str prints lowest terms, integers without denominator") {
    Rat r(10, 24);
    r.canonicalize();
    CHECK(linalg::rat_str(r) == "5/12");
    CHECK(linalg::rat_str(Rat(1)) == "1");
    CHECK(linalg::rat_str(Rat(-7, 1)) == "-7");
}
