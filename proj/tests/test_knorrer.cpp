#include <doctest.h>

#include "mfk/knorrer.hpp"
#include "test_support.hpp"

using namespace mfk;
using mfk_test::Rng;

namespace {

MatrixFactorization cusp_z() {
    auto v = make_vars({"z"});
    Polynomial z = Polynomial::variable(v, 0);
    return {PolyMatrix::scalar(1, z), PolyMatrix::scalar(1, z.pow(2)), z.pow(3)};
}

}  // namespace

TEST_CASE("theta blocks, potential and rank") {
    MatrixFactorization m = cusp_z();
    KnorrerOutput out = theta(m, "x", "y");
    CHECK(out.result.rank() == 2);
    CHECK(out.result.potential ==
          parse_polynomial("x*y - z^3", out.result.vars()));
    CHECK(verify(out.result).valid());
    auto v = out.result.vars();
    CHECK(out.result.phi.at(0, 0) == parse_polynomial("x", v));
    CHECK(out.result.phi.at(0, 1) == parse_polynomial("z", v));
    CHECK(out.result.phi.at(1, 0) == parse_polynomial("z^2", v));
    CHECK(out.result.phi.at(1, 1) == parse_polynomial("y", v));

    CHECK_THROWS_AS(theta(m, "z", "y"), InvalidArgumentError);

    Rng rng(11001);
    auto vars = make_vars({"a", "b"});
    for (int i = 0; i < 6; ++i) {
        MatrixFactorization r = mfk_test::random_small_mf(rng, vars);
        KnorrerOutput o = theta(r, "u", "v");
        CHECK(o.result.rank() == 2 * r.rank());
        CHECK(verify(o.result).valid());
    }
}

TEST_CASE("theta is the signed tensor with the node, up to an explicit gauge") {
    MatrixFactorization m = cusp_z();
    // (Q, -P) tensor (x, y) per the definition.
    auto vxy = make_vars({"x", "y"});
    MatrixFactorization node = mf_xy(1, 0, vxy);
    MatrixFactorization pair{m.psi, -m.phi, -m.potential};
    MatrixFactorization tens = tensor(pair, node);
    KnorrerOutput out = theta(m, "x", "y");
    REQUIRE(tens.vars()->names() == out.result.vars()->names());
    // Gauge witness (S, T) = (diag(1,-1), 1).
    QMat s(2, 2);
    s.at(0, 0) = 1;
    s.at(1, 1) = -1;
    GaugePair g{PolyMatrix::from_constant(s, tens.vars()),
                PolyMatrix::identity(2, tens.vars())};
    GaugeResult res = gauge(tens, g, 2);
    CHECK(res.exact);
    CHECK(res.mf.phi == out.result.phi);
    CHECK(res.mf.psi == out.result.psi);
}

TEST_CASE("theta commutes with gauge via the block-extended witness") {
    Rng rng(11002);
    MatrixFactorization m = mf_xy(1, 1);
    GaugePair g = mfk_test::random_constant_gauge(rng, 2, m.vars());
    GaugeResult gm = gauge(m, g, 2);
    REQUIRE(gm.exact);
    KnorrerOutput lhs = theta(gm.mf, "u", "v");
    KnorrerOutput rhs = theta(m, "u", "v");
    // Extended gauge diag(T, S) on both sides.
    auto vars = rhs.result.vars();
    PolyMatrix ext_block =
        PolyMatrix::block_diag(g.t.lifted(vars), g.s.lifted(vars));
    GaugeResult moved = gauge(rhs.result, GaugePair{ext_block, ext_block}, 2);
    CHECK(moved.exact);
    CHECK(moved.mf.phi == lhs.result.phi);
    CHECK(moved.mf.psi == lhs.result.psi);
}

TEST_CASE("theta transports structures with the documented kind and sign") {
    MatrixFactorization m = cusp_z();
    BilinearStructure b = mfk_test::quadratic_on_rank1(m);

    KnorrerOutput out = theta(m, b, "x", "y");
    REQUIRE(out.structure.has_value());
    CHECK(out.structure->kind == StructureKind::Twisted);
    CHECK(out.structure->sign == -1);
    CHECK(verify_structure(*out.structure).valid());

    // Twisted input comes back untwisted with the same sign.
    KnorrerOutput out2 = theta(out.result, *out.structure, "u", "v");
    REQUIRE(out2.structure.has_value());
    CHECK(out2.structure->kind == StructureKind::Untwisted);
    CHECK(out2.structure->sign == -1);
    CHECK(verify_structure(*out2.structure).valid());
}

TEST_CASE("theta preserves Ext dimensions on the bundled pairs") {
    auto v = make_vars({"x"});
    Polynomial x = Polynomial::variable(v, 0);
    MatrixFactorization a{PolyMatrix::scalar(1, x), PolyMatrix::scalar(1, x.pow(2)), x.pow(3)};
    MatrixFactorization b{PolyMatrix::scalar(1, x.pow(2)), PolyMatrix::scalar(1, x), x.pow(3)};
    for (const auto& [s, t] : std::vector<std::pair<MatrixFactorization, MatrixFactorization>>{
             {a, a}, {a, b}, {b, a}, {b, b}}) {
        ExtResult base = ext(s, t);
        KnorrerOutput ts = theta(s, "u", "v");
        KnorrerOutput tt = theta(t, "u", "v");
        ExtResult lifted = ext(ts.result, tt.result);
        CHECK(base.stabilized);
        CHECK(lifted.stabilized);
        CHECK(base.dims == lifted.dims);
    }
}

TEST_CASE("theta squared lands on x y + u v - pi with the flipped sign") {
    MatrixFactorization m = cusp_z();
    KnorrerOutput plain = theta_squared(m, "x", "y", "u", "v");
    CHECK(plain.result.rank() == 4);
    CHECK(plain.result.potential ==
          parse_polynomial("x*y + u*v - z^3", plain.result.vars()));
    CHECK(verify(plain.result).valid());

    BilinearStructure b = mfk_test::quadratic_on_rank1(m);
    KnorrerOutput structured = theta_squared(m, b, "x", "y", "u", "v");
    REQUIRE(structured.structure.has_value());
    CHECK(structured.structure->kind == StructureKind::Untwisted);
    CHECK(structured.structure->sign == -1);
    CHECK(verify_structure(*structured.structure).valid());
    CHECK(structured.provenance.find("u -> -u") != std::string::npos);

    ExtResult base = ext(m, m);
    ExtResult doubled = ext(structured.result, structured.result);
    CHECK(base.dims == doubled.dims);
}

TEST_CASE("versal families and their certificates") {
    VersalFamily f1 = versal_family(1, VersalMode::Plain);
    CHECK(f1.certificate_ok);
    CHECK(f1.base_tangent_dim == 2);
    REQUIRE(f1.t_eliminated.has_value());
    CHECK(*f1.t_eliminated == parse_polynomial("p11*q11", f1.family.vars()));
    CHECK(f1.family.rank() == 2);
    for (const auto& [label, nf] : f1.certificate) CHECK(nf.is_zero());

    VersalFamily fo = versal_family(1, VersalMode::Orthogonal);
    CHECK(fo.certificate_ok);
    CHECK(fo.base_tangent_dim == 1);
    CHECK(fo.base_vars == std::vector<std::string>{"t", "p11"});

    VersalFamily fs = versal_family(1, VersalMode::Symplectic);
    CHECK(fs.certificate_ok);

    VersalFamily f2 = versal_family(2, VersalMode::Plain);
    CHECK(f2.certificate_ok);
    CHECK(f2.base_vars.size() == 9);
    CHECK(f2.relations.size() == 8);
    CHECK(f2.family.rank() == 4);

    CHECK_THROWS_AS(versal_family(3, VersalMode::Plain), InvalidArgumentError);
}

TEST_CASE("the rank-one versal base matches the node tangent dimensions") {
    VersalFamily f1 = versal_family(1, VersalMode::Plain);
    ExtResult e = ext(mf_xy(1, 1), mf_xy(1, 1));
    CHECK(f1.base_tangent_dim == e.dims[1]);  // both are 2
}
