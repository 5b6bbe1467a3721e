#include <doctest.h>

#include "mfk/groebner.hpp"
#include "test_support.hpp"

using namespace mfk;
using mfk_test::Rng;

namespace {

MatrixFactorization node() { return mf_xy(1, 0); }

}  // namespace

TEST_CASE("verify accepts the node and rejects the unit factor") {
    CHECK(verify(node()).valid());

    auto v = make_vars({"x", "y"});
    Polynomial w = parse_polynomial("x*y", v);
    MatrixFactorization bad{PolyMatrix::scalar(1, Polynomial::constant(v, 1)),
                            PolyMatrix::scalar(1, w), w};
    VerifyReport rep = verify(bad);
    CHECK(!rep.valid());
    bool saw_origin = false;
    for (const auto& viol : rep.violations)
        if (viol.identity == "phi(0)") saw_origin = true;
    CHECK(saw_origin);

    auto v1 = make_vars({"x"});
    Polynomial x = Polynomial::variable(v1, 0);
    MatrixFactorization sq{PolyMatrix::scalar(1, x), PolyMatrix::scalar(1, x), x * x};
    CHECK(verify(sq).valid());
}

TEST_CASE("shift examples and involution") {
    MatrixFactorization m = node();
    MatrixFactorization s = shift(m);
    auto v = m.vars();
    CHECK(s.phi.at(0, 0) == parse_polynomial("-y", v));
    CHECK(s.psi.at(0, 0) == parse_polynomial("-x", v));

    Rng rng(6001);
    auto vars = make_vars({"x", "y", "z"});
    for (int i = 0; i < 10; ++i) {
        MatrixFactorization r = mfk_test::random_small_mf(rng, vars);
        MatrixFactorization ss = shift(shift(r));
        CHECK(ss.phi == r.phi);
        CHECK(ss.psi == r.psi);
    }
}

TEST_CASE("shift of mf_xy(p,q) is gauge equivalent to mf_xy(q,p)") {
    for (auto [p, q] : std::vector<std::pair<std::size_t, std::size_t>>{
             {1, 0}, {1, 1}, {2, 1}, {2, 2}}) {
        MatrixFactorization lhs = shift(mf_xy(p, q));
        MatrixFactorization rhs = mf_xy(q, p);
        const std::size_t r = p + q;
        // Witness: S = J, T = -J with J the block swap.
        QMat j(r, r);
        for (std::size_t i = 0; i < q; ++i) j.at(i, p + i) = 1;
        for (std::size_t i = 0; i < p; ++i) j.at(q + i, i) = 1;
        GaugePair g{PolyMatrix::from_constant(j, lhs.vars()),
                    -PolyMatrix::from_constant(j, lhs.vars())};
        GaugeResult res = gauge(lhs, g, 2);
        CHECK(res.exact);
        CHECK(res.mf.phi == rhs.phi);
        CHECK(res.mf.psi == rhs.psi);
        CHECK(verify(res.mf).valid());
    }
}

TEST_CASE("duality identities") {
    auto v = make_vars({"x", "y"});
    MatrixFactorization m = node();
    CHECK(transpose_dual(m).phi.at(0, 0) == parse_polynomial("y", v));
    CHECK(transpose_dual(m).psi.at(0, 0) == parse_polynomial("x", v));

    Rng rng(6002);
    auto vars = make_vars({"x", "y", "z"});
    for (int i = 0; i < 20; ++i) {
        MatrixFactorization r = mfk_test::random_small_mf(rng, vars);
        MatrixFactorization d = dual(r);
        MatrixFactorization t = transpose_dual(r);
        // dual = shift . transpose_dual = transpose_dual . shift
        CHECK(d.phi == shift(t).phi);
        CHECK(d.psi == shift(t).psi);
        CHECK(d.phi == transpose_dual(shift(r)).phi);
        CHECK(d.psi == transpose_dual(shift(r)).psi);
        // involutions
        CHECK(dual(d).phi == r.phi);
        CHECK(transpose_dual(t).psi == r.psi);
        CHECK(verify(d).valid());
        CHECK(verify(t).valid());
    }
}

TEST_CASE("tensor dual compatibility at the invariant level") {
    Rng rng(6003);
    auto vars = make_vars({"x", "y", "z"});
    for (int i = 0; i < 5; ++i) {
        MatrixFactorization a = mfk_test::random_rank1(rng, vars);
        MatrixFactorization b = mfk_test::random_rank1(rng, vars);
        MatrixFactorization lhs = transpose_dual(tensor(a, b));
        MatrixFactorization rhs = tensor(transpose_dual(a), transpose_dual(b));
        CHECK(lhs.rank() == rhs.rank());
        CHECK(lhs.potential == rhs.potential);
        CHECK(verify(lhs).valid());
        CHECK(verify(rhs).valid());
    }
}

TEST_CASE("direct sum block structure") {
    MatrixFactorization s = direct_sum(mf_xy(1, 0), mf_xy(0, 1));
    MatrixFactorization m11 = mf_xy(1, 1);
    CHECK(s.phi == m11.phi);
    CHECK(s.psi == m11.psi);

    MatrixFactorization dbl = direct_sum(m11, m11);
    CHECK(dbl.rank() == 4);
    CHECK(verify(dbl).valid());

    auto v1 = make_vars({"x"});
    Polynomial x = Polynomial::variable(v1, 0);
    MatrixFactorization other{PolyMatrix::scalar(1, x), PolyMatrix::scalar(1, x), x * x};
    CHECK_THROWS_AS(direct_sum(mf_xy(1, 0), other), VarMismatchError);
}

TEST_CASE("tensor realizes the rank-two factorizations of Brieskorn sums") {
    MatrixFactorization m = mf_brieskorn({{1, 3}, {1, 2}});
    CHECK(m.rank() == 2);
    CHECK(m.potential == parse_polynomial("x1^3 + x2^2", m.vars()));
    CHECK(verify(m).valid());

    Rng rng(6004);
    auto vars = make_vars({"x", "y", "z"});
    for (int i = 0; i < 10; ++i) {
        MatrixFactorization a = mfk_test::random_small_mf(rng, vars);
        MatrixFactorization b = mfk_test::random_small_mf(rng, vars);
        MatrixFactorization t = tensor(a, b);
        CHECK(t.rank() == 2 * a.rank() * b.rank());
        CHECK(t.potential == a.potential + b.potential);
        CHECK(verify(t).valid());
    }
}

TEST_CASE("tensor merges distinct variable lists") {
    auto vz = make_vars({"z"});
    Polynomial z = Polynomial::variable(vz, 0);
    MatrixFactorization a{PolyMatrix::scalar(1, z), PolyMatrix::scalar(1, z * z), z.pow(3)};
    MatrixFactorization t = tensor(a, mf_xy(1, 0));
    CHECK(t.vars()->names() == std::vector<std::string>{"z", "x", "y"});
    CHECK(t.potential == parse_polynomial("z^3 + x*y", t.vars()));
    CHECK(verify(t).valid());
}

TEST_CASE("gauge action preserves validity and potential") {
    Rng rng(6005);
    auto vars = make_vars({"x", "y", "z"});
    for (int i = 0; i < 10; ++i) {
        MatrixFactorization m = mfk_test::random_small_mf(rng, vars);
        GaugePair g = mfk_test::random_constant_gauge(rng, m.rank(), vars);
        GaugeResult res = gauge(m, g, 4);
        CHECK(res.exact);
        CHECK(res.mf.potential == m.potential);
        CHECK(verify(res.mf).valid());
    }

    // identity gauge
    MatrixFactorization m = mf_xy(1, 1);
    GaugePair id{PolyMatrix::identity(2, m.vars()), PolyMatrix::identity(2, m.vars())};
    GaugeResult res = gauge(m, id, 2);
    CHECK(res.mf.phi == m.phi);
    CHECK(res.mf.psi == m.psi);

    // sign gauge (1, -1) negates both blocks
    GaugePair sign{PolyMatrix::identity(2, m.vars()), -PolyMatrix::identity(2, m.vars())};
    GaugeResult neg = gauge(m, sign, 2);
    CHECK(neg.mf.phi == -m.phi);
    CHECK(neg.mf.psi == -m.psi);
    CHECK(verify(neg.mf).valid());
}

TEST_CASE("unimodular polynomial gauges act exactly") {
    Rng rng(6006);
    MatrixFactorization m = mf_xy(1, 1);
    for (int i = 0; i < 5; ++i) {
        GaugePair g{mfk_test::random_unimodular_poly(rng, 2, m.vars()),
                    mfk_test::random_unimodular_poly(rng, 2, m.vars())};
        GaugeResult res = gauge(m, g, 8);
        CHECK(res.exact);
        CHECK(verify(res.mf).valid());
    }
}

TEST_CASE("series gauges carry a truncation marker") {
    MatrixFactorization m = mf_xy(1, 0);
    auto v = m.vars();
    // 1 + x is invertible at the origin but has no polynomial inverse.
    GaugePair g{PolyMatrix::scalar(1, parse_polynomial("1 + x", v)),
                PolyMatrix::identity(1, v)};
    GaugeResult res = gauge(m, g, 6);
    CHECK(!res.exact);
    CHECK(res.truncation_degree == 6);
    // Identities hold modulo terms above the truncation degree.
    Polynomial err = res.mf.phi.at(0, 0) * res.mf.psi.at(0, 0) - res.mf.potential;
    for (const auto& [mon, c] : err.truncated(5).terms()) CHECK(is_zero(c));

    GaugePair bad{PolyMatrix::scalar(1, parse_polynomial("x", v)), PolyMatrix::identity(1, v)};
    CHECK_THROWS_AS(gauge(m, bad, 4), InvalidArgumentError);
}

TEST_CASE("cokernel presentations of the documented examples") {
    CokPresentation c1 = cok_presentation(mf_xy(1, 0), 4);
    REQUIRE(c1.hilbert.size() == 5);
    for (std::size_t e = 0; e <= 4; ++e) CHECK(c1.hilbert[e] == 1);

    CokPresentation c2 = cok_presentation(mfk_test::cusp_mf(), 4);
    CHECK(c2.hilbert[0] == 1);
    for (std::size_t e = 1; e <= 4; ++e) CHECK(c2.hilbert[e] == 0);

    // cok of the shift presents the syzygy module: the presentation matrix
    // is -psi reduced mod (w).
    MatrixFactorization m = mf_xy(1, 1);
    CokPresentation cs = cok_presentation(shift(m), 3);
    Ideal iw;
    iw.generators.push_back(m.potential);
    QuotientRing qw = make_quotient(std::move(iw));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(cs.presentation.at(i, j) == normal_form(-m.psi.at(i, j), qw));
}

TEST_CASE("constructor families verify and reject bad parameters") {
    for (std::size_t p = 0; p <= 4; ++p)
        for (std::size_t q = 0; q <= 4; ++q) {
            if (p + q == 0) continue;
            CHECK(verify(mf_xy(p, q)).valid());
        }
    CHECK_THROWS_AS(mf_xy(0, 0), InvalidArgumentError);
    CHECK_THROWS_AS(mf_brieskorn({{2, 2}}), InvalidArgumentError);
    CHECK_THROWS_AS(mf_brieskorn({{0, 3}}), InvalidArgumentError);
    CHECK(mf_brieskorn({{1, 3}}).rank() == 1);
    CHECK(mf_brieskorn({{1, 3}, {1, 3}, {1, 3}}).rank() == 4);
}

TEST_CASE("morphism composition preserves closedness") {
    Rng rng(6007);
    MatrixFactorization m = mf_xy(1, 1);
    MorphismPair id = identity_morphism(m);
    MorphismPair c = compose(id, id);
    CHECK(c.s == id.s);
    CHECK(c.t == id.t);
}
