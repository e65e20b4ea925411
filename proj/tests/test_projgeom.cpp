#include <catch2/catch_amalgamated.hpp>

#include "segre/fields.hpp"
#include "segre/projective.hpp"

using namespace segre;

namespace {

template <class F>
std::vector<typename F::Elem> ints(const F& f, std::initializer_list<long long> vs) {
    std::vector<typename F::Elem> out;
    for (auto v : vs) out.push_back(f.from_int(v));
    return out;
}

}  // namespace

TEST_CASE("matrix kernel, inverse, solve") {
    PrimeField F(101);
    auto m = Matrix<PrimeField>::from_rows(F, {ints(F, {1, 2, 3}), ints(F, {0, 1, 4})});
    auto k = m.kernel();
    REQUIRE(k.rows() == 1);
    for (std::size_t i = 0; i < m.rows(); ++i)
        REQUIRE(dot(F, m.row(i), k.row(0)) == F.zero());

    auto sq = Matrix<PrimeField>::from_rows(F, {ints(F, {2, 1}), ints(F, {1, 1})});
    auto inv = sq.inverse();
    REQUIRE(sq.mul(inv) == Matrix<PrimeField>::identity(F, 2));

    auto sing = Matrix<PrimeField>::from_rows(F, {ints(F, {1, 2}), ints(F, {2, 4})});
    REQUIRE_THROWS_AS(sing.inverse(), Error);

    auto sol = sq.solve(ints(F, {3, 2}));
    REQUIRE(sol.has_value());
    REQUIRE(sq.apply(*sol) == ints(F, {3, 2}));
}

TEST_CASE("kron respects last-factor-fastest flattening") {
    PrimeField F(101);
    auto a = Matrix<PrimeField>::from_rows(F, {ints(F, {1, 2}), ints(F, {3, 4})});
    auto b = Matrix<PrimeField>::from_rows(F, {ints(F, {5, 6}), ints(F, {7, 8})});
    auto k = a.kron(b);
    REQUIRE(k.rows() == 4);
    // entry ((i1,i2),(j1,j2)) with second index fastest
    REQUIRE(k.at(0 * 2 + 1, 1 * 2 + 0) == F.from_int(2 * 7));
    REQUIRE(k.at(1 * 2 + 0, 0 * 2 + 1) == F.from_int(3 * 6));
    // kron of vectors equals coordinate products in flatten order
    Rng rng = Rng::stream(5, 0);
    auto u = random_point(F, 2, rng).coords;
    auto v = random_point(F, 2, rng).coords;
    auto au = a.apply(u);
    auto bv = b.apply(v);
    std::vector<FpElem> uv{u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]};
    auto kuv = k.apply(uv);
    std::vector<FpElem> expect{au[0] * bv[0], au[0] * bv[1], au[1] * bv[0], au[1] * bv[1]};
    REQUIRE(kuv == expect);
}

TEST_CASE("normalize examples and idempotence") {
    PrimeField F(7);
    auto p = ProjPoint<PrimeField>::make(F, ints(F, {0, 2, 4}));
    REQUIRE(p.coords == ints(F, {0, 1, 2}));
    REQUIRE_THROWS_AS(ProjPoint<PrimeField>::make(F, ints(F, {0, 0, 0})), Error);

    RationalField Q;
    Rng rng = Rng::stream(17, 0);
    for (int i = 0; i < 1000; ++i) {
        auto x = random_point(Q, 4, rng);
        auto y = ProjPoint<RationalField>::make(Q, x.coords);
        REQUIRE(x == y);
        // first nonzero coordinate is exactly 1
        std::size_t j = 0;
        while (x.coords[j].is_zero()) ++j;
        REQUIRE(x.coords[j] == Q.one());
    }
}

TEST_CASE("span dimension matches rank oracle") {
    PrimeField F(101);
    Rng rng = Rng::stream(23, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t ambient = 2 + rng.bounded(5);
        const std::size_t npts = 1 + rng.bounded(6);
        std::vector<std::vector<FpElem>> gens;
        for (std::size_t i = 0; i < npts; ++i) gens.push_back(random_point(F, ambient, rng).coords);
        auto s = Subspace<PrimeField>::from_generators(F, ambient, gens);
        REQUIRE(s.cone_dim() == Matrix<PrimeField>::from_rows(F, gens).rank());
        // canonical representative: shuffled generators give the same basis
        std::vector<std::vector<FpElem>> rev(gens.rbegin(), gens.rend());
        rev.push_back(gens[rng.bounded(gens.size())]);
        auto s2 = Subspace<PrimeField>::from_generators(F, ambient, rev);
        REQUIRE(s == s2);
    }
}

TEST_CASE("intersection via kernel duality") {
    PrimeField F(101);
    Rng rng = Rng::stream(29, 0);

    // two distinct hyperplanes of P^3 meet in a line (projective dim 1)
    for (int trial = 0; trial < 100; ++trial) {
        auto h1 = random_form(F, 4, rng);
        auto h2 = random_form(F, 4, rng);
        auto u = Subspace<PrimeField>::from_matrix_rows(
            Matrix<PrimeField>::from_rows(F, {h1}).kernel());
        auto v = Subspace<PrimeField>::from_matrix_rows(
            Matrix<PrimeField>::from_rows(F, {h2}).kernel());
        auto w = intersect(u, v);
        REQUIRE(intersect(u, u) == u);
        if (u != v) {
            REQUIRE(w.dim() == 1);
        }
        // dim(U cap V) >= dim U + dim V - ambient projective dim
        long long lower = u.dim() + v.dim() - 3;
        REQUIRE(w.dim() >= lower);
        // membership: intersection vectors lie in both
        for (std::size_t r = 0; r < w.basis().rows(); ++r) {
            REQUIRE(u.contains(w.basis().row(r)));
            REQUIRE(v.contains(w.basis().row(r)));
        }
    }

    // random small subspaces over Q
    RationalField Q;
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::vector<Rat>> g1, g2;
        for (int i = 0; i < 2; ++i) g1.push_back(random_point(Q, 5, rng).coords);
        for (int i = 0; i < 3; ++i) g2.push_back(random_point(Q, 5, rng).coords);
        auto u = Subspace<RationalField>::from_generators(Q, 5, g1);
        auto v = Subspace<RationalField>::from_generators(Q, 5, g2);
        auto w = intersect(u, v);
        REQUIRE(w.dim() >= u.dim() + v.dim() - 4);
        REQUIRE(intersect(v, v) == v);
    }
}

TEST_CASE("projection from a center") {
    PrimeField F(101);
    // L = {[0:0:0:1]}: drop the last coordinate
    auto L = Subspace<PrimeField>::from_generators(F, 4, {ints(F, {0, 0, 0, 1})});
    auto y = project_from_center(L, ints(F, {1, 3, 2, 6}));
    REQUIRE(y.coords == ints(F, {1, 3, 2}));

    REQUIRE_THROWS_AS(project_from_center(L, ints(F, {0, 0, 0, 5})), Error);

    // empty center: projection is the identity on normalized points
    Subspace<PrimeField> empty(F, 4);
    Rng rng = Rng::stream(31, 0);
    for (int i = 0; i < 50; ++i) {
        auto x = random_point(F, 4, rng);
        REQUIRE(project_from_center(empty, x) == x);
    }

    // projection is constant along spans with the center
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::vector<FpElem>> gens;
        for (int i = 0; i < 2; ++i) gens.push_back(random_point(F, 6, rng).coords);
        auto C = Subspace<PrimeField>::from_generators(F, 6, gens);
        auto x = random_point(F, 6, rng);
        if (C.contains(x)) continue;
        auto base = project_from_center(C, x);
        for (int j = 0; j < 5; ++j) {
            auto lam = F.sample(rng);
            auto mu = F.sample(rng);
            std::vector<FpElem> shifted = x.coords;
            for (std::size_t c = 0; c < 6; ++c)
                shifted[c] = shifted[c] + lam * C.basis().at(0, c) + mu * C.basis().at(1, c);
            if (is_zero_vector<PrimeField>(shifted) || C.contains(shifted)) continue;
            REQUIRE(project_from_center(C, shifted) == base);
        }
    }
}

TEST_CASE("projection fibers are cut by joint spans") {
    PrimeField F(101);
    Rng rng = Rng::stream(37, 0);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::vector<FpElem>> gens;
        for (int i = 0; i < 2; ++i) gens.push_back(random_point(F, 5, rng).coords);
        auto L = Subspace<PrimeField>::from_generators(F, 5, gens);
        auto x = random_point(F, 5, rng);
        auto y = random_point(F, 5, rng);
        if (L.contains(x) || L.contains(y)) continue;
        auto px = project_from_center(L, x);
        auto py = project_from_center(L, y);

        std::vector<std::vector<FpElem>> with_x = gens;
        with_x.push_back(x.coords);
        std::vector<std::vector<FpElem>> with_both = with_x;
        with_both.push_back(y.coords);
        auto sx = Subspace<PrimeField>::from_generators(F, 5, with_x);
        auto sboth = Subspace<PrimeField>::from_generators(F, 5, with_both);
        REQUIRE((px == py) == (sx.cone_dim() == sboth.cone_dim()));
        ++checked;
    }
    REQUIRE(checked > 150);
}
