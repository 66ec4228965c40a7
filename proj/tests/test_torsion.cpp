#include <doctest.h>

#include <random>

#include "equizeta/errors.hpp"
#include "equizeta/torsion.hpp"
#include "equizeta/zmat.hpp"
#include "oracles.hpp"

using namespace equizeta;

namespace {

TorsionVector tv(std::vector<std::pair<long, long>> coords) {
    std::vector<mpq_class> c;
    for (auto [num, den] : coords) {
        mpq_class q(num, den);
        q.canonicalize();
        c.push_back(q);
    }
    return TorsionVector(std::move(c));
}

ZMat zmat(std::vector<std::vector<long>> rows) {
    ZMat m(static_cast<long>(rows.size()), rows.empty() ? 0 : static_cast<long>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            m.at(static_cast<long>(i), static_cast<long>(j)) = rows[i][j];
    return m;
}

bool is_unimodular(const ZMat& m) {
    mpz_class d = zmat_det(m);
    return d == 1 || d == -1;
}

} // namespace

TEST_SUITE("torsion") {

TEST_CASE("smith normal form of diag(2,3,5)") {
    ZMat m = zmat({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}});
    SnfResult s = smith_normal_form(m);
    CHECK(s.rank == 3);
    CHECK(zmat_mul(zmat_mul(s.u, m), s.v) == s.d);
    CHECK(is_unimodular(s.u));
    CHECK(is_unimodular(s.v));
    CHECK(s.d.at(0, 0) == 1);
    CHECK(s.d.at(1, 1) == 1);
    CHECK(s.d.at(2, 2) == 30);
}

TEST_CASE("smith normal form trivial cases") {
    SnfResult id = smith_normal_form(ZMat::identity(4));
    CHECK(id.rank == 4);
    CHECK(id.d == ZMat::identity(4));
    SnfResult zero = smith_normal_form(ZMat(3, 2));
    CHECK(zero.rank == 0);
    CHECK(zero.d == ZMat(3, 2));
}

TEST_CASE("smith normal form divisibility chain on random matrices") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> dist(-6, 6);
    for (int trial = 0; trial < 40; ++trial) {
        long rows = 1 + static_cast<long>(rng() % 5);
        long cols = 1 + static_cast<long>(rng() % 5);
        ZMat m(rows, cols);
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
        SnfResult s = smith_normal_form(m);
        CHECK(zmat_mul(zmat_mul(s.u, m), s.v) == s.d);
        CHECK(is_unimodular(s.u));
        CHECK(is_unimodular(s.v));
        long lim = std::min(rows, cols);
        for (long i = 0; i + 1 < lim; ++i) {
            if (s.d.at(i + 1, i + 1) != 0) {
                CHECK(s.d.at(i, i) >= 0);
                if (s.d.at(i, i) != 0) CHECK(s.d.at(i + 1, i + 1) % s.d.at(i, i) == 0);
            }
        }
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j)
                if (i != j) CHECK(s.d.at(i, j) == 0);
    }
}

TEST_CASE("canonicalize basic examples") {
    auto g = FiniteDiagonalGroup::canonicalize(3, {tv({{1, 2}, {1, 3}, {1, 5}})});
    CHECK(g.order() == 30);
    CHECK(g.exponent() == 30);
    CHECK(g.is_cyclic());

    auto trivial = FiniteDiagonalGroup::canonicalize(3, {});
    CHECK(trivial.order() == 1);
    CHECK(trivial.exponent() == 1);

    auto a = FiniteDiagonalGroup::canonicalize(
        2, {tv({{1, 2}, {0, 1}}), tv({{0, 1}, {1, 2}}), tv({{1, 2}, {1, 2}})});
    auto b = FiniteDiagonalGroup::canonicalize(2, {tv({{1, 2}, {0, 1}}), tv({{0, 1}, {1, 2}})});
    CHECK(a == b);
    CHECK(a.order() == 4);
}

TEST_CASE("canonical form is independent of the generating set") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        long n = 1 + static_cast<long>(rng() % 4);
        auto g = testing::random_subgroup(rng, n, 60);
        auto elems = g.elements();
        // Random selection of elements generating a subgroup; augment until
        // it generates the whole group, then compare canonical forms.
        std::vector<TorsionVector> gens;
        std::shuffle(elems.begin(), elems.end(), rng);
        for (const auto& e : elems) {
            gens.push_back(e);
            auto sub = FiniteDiagonalGroup::canonicalize(n, gens);
            if (sub == g) break;
        }
        auto regen = FiniteDiagonalGroup::canonicalize(n, gens);
        std::shuffle(gens.begin(), gens.end(), rng);
        gens.push_back(gens.front() + gens.back()); // redundant generator
        auto regen2 = FiniteDiagonalGroup::canonicalize(n, gens);
        CHECK(regen == regen2);
        CHECK(regen.exponent() == regen2.exponent());
        CHECK(regen.basis() == regen2.basis());
    }
}

TEST_CASE("exponent really is the group exponent") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        long n = 1 + static_cast<long>(rng() % 3);
        auto g = testing::random_subgroup(rng, n, 24);
        mpz_class expo = 1;
        bool attained = false;
        for (const auto& e : g.elements()) {
            CHECK(g.exponent() % e.order() == 0);
            expo = lcm_positive(expo, e.order());
        }
        attained = (expo == g.exponent());
        CHECK(attained);
    }
}

TEST_CASE("kernel_mod_1 examples") {
    auto diag = FiniteDiagonalGroup::kernel_mod_1(zmat({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}));
    CHECK(diag.order() == 30);

    auto loop = FiniteDiagonalGroup::kernel_mod_1(zmat({{3, 1}, {1, 3}}));
    CHECK(loop.order() == 8);
    // Enumerated solutions with denominator dividing 8.
    long count = 0;
    for (long a = 0; a < 8; ++a)
        for (long b = 0; b < 8; ++b) {
            bool in = (3 * a + b) % 8 == 0 && (a + 3 * b) % 8 == 0;
            TorsionVector x = tv({{a, 8}, {b, 8}});
            CHECK(loop.member(x) == in);
            if (in) ++count;
        }
    CHECK(count == 8);

    auto trivial = FiniteDiagonalGroup::kernel_mod_1(zmat({{1, 0}, {0, 1}}));
    CHECK(trivial.order() == 1);

    CHECK_THROWS_AS(FiniteDiagonalGroup::kernel_mod_1(zmat({{1, 1}})), InfiniteKernel);
}

TEST_CASE("kernel order equals the determinant for square systems") {
    std::mt19937 rng(61);
    std::uniform_int_distribution<int> dist(-4, 4);
    int done = 0;
    while (done < 25) {
        long n = 1 + static_cast<long>(rng() % 3);
        ZMat e(n, n);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) e.at(i, j) = dist(rng);
        mpz_class det = zmat_det(e);
        if (det == 0) continue;
        auto g = FiniteDiagonalGroup::kernel_mod_1(e);
        CHECK(g.order() == abs(det));
        ++done;
    }
}

TEST_CASE("membership matches brute-force enumeration") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        long n = 1 + static_cast<long>(rng() % 3);
        auto g = testing::random_subgroup(rng, n, 18);
        if (g.order() > 1000) continue;
        for (const auto& e : g.elements()) CHECK(g.member(e));
        // Points just outside: random vectors with compatible denominators.
        std::uniform_int_distribution<long> num(0, 35);
        for (int k = 0; k < 30; ++k) {
            std::vector<mpq_class> c;
            for (long j = 0; j < n; ++j) {
                mpq_class q(num(rng), 36);
                q.canonicalize();
                c.push_back(q);
            }
            TorsionVector x{c};
            CHECK(g.member(x) == testing::member_brute(g, x));
        }
    }
}

TEST_CASE("intersections and joins satisfy Lagrange bookkeeping") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        long n = 1 + static_cast<long>(rng() % 3);
        auto a = testing::random_subgroup(rng, n, 12);
        auto b = testing::random_subgroup(rng, n, 12);
        auto meet = a.intersect(b);
        auto join = a.join(b);
        CHECK(a.order() % meet.order() == 0);
        CHECK(b.order() % meet.order() == 0);
        CHECK(join.order() * meet.order() == a.order() * b.order());
        CHECK(a.contains(meet));
        CHECK(b.contains(meet));
        CHECK(join.contains(a));
        CHECK(join.contains(b));
        CHECK(a.intersect(a) == a);
        CHECK(FiniteDiagonalGroup::trivial(n).join(b) == b);
    }
}

TEST_CASE("coordinate kernel of Z6 inside (Q/Z)^2") {
    auto g = FiniteDiagonalGroup::canonicalize(2, {tv({{1, 2}, {1, 3}})});
    CHECK(g.order() == 6);
    auto fixed_first = g.coordinate_kernel({0});
    CHECK(fixed_first.order() == 3);
    // Cross-check against enumeration.
    long count = 0;
    for (const auto& e : g.elements())
        if (e.coord(0) == 0) {
            ++count;
            CHECK(fixed_first.member(e));
        }
    CHECK(count == 3);
}

TEST_CASE("hnf convention: lower triangular with reduced entries") {
    std::mt19937 rng(43);
    std::uniform_int_distribution<int> dist(-9, 9);
    for (int trial = 0; trial < 30; ++trial) {
        long n = 2 + static_cast<long>(rng() % 3);
        ZMat m(n + 1, n);
        for (long i = 0; i < n + 1; ++i)
            for (long j = 0; j < n; ++j) m.at(i, j) = dist(rng);
        for (long j = 0; j < n; ++j) m.at(j, j) = m.at(j, j) * 2 + 11; // make full rank likely
        ZMat h = hnf_lower(m);
        for (long i = 0; i < h.rows(); ++i) {
            long pivot = -1;
            for (long j = h.cols() - 1; j >= 0; --j)
                if (h.at(i, j) != 0) { pivot = j; break; }
            REQUIRE(pivot >= 0);
            CHECK(h.at(i, pivot) > 0);
            // Entries in the pivot column below this row are reduced.
            for (long i2 = i + 1; i2 < h.rows(); ++i2) {
                CHECK(h.at(i2, pivot) >= 0);
                CHECK(h.at(i2, pivot) < h.at(i, pivot));
            }
        }
    }
}

TEST_CASE("element coordinates reconstruct elements") {
    std::mt19937 rng(59);
    for (int trial = 0; trial < 20; ++trial) {
        long n = 1 + static_cast<long>(rng() % 3);
        auto g = testing::random_subgroup(rng, n, 16);
        const auto& gens = g.snf_generators();
        const auto& orders = g.invariant_factors();
        mpz_class product = 1;
        for (const auto& d : orders) product *= d;
        CHECK(product == g.order());
        for (size_t i = 0; i + 1 < orders.size(); ++i)
            CHECK(orders[i + 1] % orders[i] == 0);
        for (const auto& e : g.elements()) {
            auto coords = g.element_coords(e);
            TorsionVector rebuilt = TorsionVector::zero(n);
            for (size_t i = 0; i < gens.size(); ++i)
                rebuilt = rebuilt + gens[i].scaled(mpq_class(coords[i]));
            CHECK(rebuilt == e);
        }
    }
}

} // TEST_SUITE
