#include <gtest/gtest.h>

#include "polyfrac/ffinversion.hpp"
#include "test_support.hpp"

using namespace polyfrac;
using polyfrac::testing::P;

namespace {

RingPtr ring1() {
    static RingPtr r = make_ring({"x"});
    return r;
}

RingPtr ring2() {
    static RingPtr r = make_ring({"x", "y"});
    return r;
}

PolyMatrix from_rows(const RingPtr& r, std::initializer_list<std::initializer_list<const char*>> rows) {
    PolyMatrix m(r, rows.size());
    std::size_t i = 0;
    for (auto row : rows) {
        std::size_t j = 0;
        for (auto t : row) m(i, j++) = P(t, r);
        ++i;
    }
    return m;
}

void expect_inverse_contract(const PolyMatrix& a, const Poly& d1, const FFResult& res) {
    PolyMatrix dd = (d1 * res.det) * PolyMatrix::identity(a.ring(), a.size());
    EXPECT_EQ(mul_naive(a, res.adj_scaled), dd);
    EXPECT_EQ(mul_naive(res.adj_scaled, a), dd);
    EXPECT_EQ(res.det, bareiss_det(a));
}

constexpr CancelPolicy kPolicies[] = {CancelPolicy::None, CancelPolicy::Theorem, CancelPolicy::Gcd,
                                      CancelPolicy::Hybrid};

} // namespace

TEST(SchurDelta, IdentityGivesIdentity) {
    auto I4 = PolyMatrix::identity(ring1(), 4);
    auto I2 = PolyMatrix::identity(ring1(), 2);
    EXPECT_EQ(schur_delta(I4, I2, Poly::constant(ring1(), 1)), I2);
}

TEST(SchurDelta, GenericDegreeAndRationalIdentity) {
    Rng rng(21);
    for (int s = 0; s < 5; ++s) {
        PolyMatrix a = polyfrac::testing::random_dense_matrix(ring2(), 4, 1, rng);
        auto q = quadrants(a);
        PolyMatrix adj = cofactor_adjugate(q.a11);
        Poly det = cofactor_det(q.a11);
        PolyMatrix delta = schur_delta(a, adj, det);
        EXPECT_EQ(delta.max_degree(), Degree(3));
        // Delta = a11_det * (A22 - A21 A11^{-1} A12) checked at a point with rationals
        auto pt = polyfrac::testing::random_point(2, rng);
        mpq_class dv = det.evaluate(pt);
        ASSERT_NE(dv, 0);
        auto ev = [&](const PolyMatrix& m, std::size_t i, std::size_t j) { return mpq_class(m(i, j).evaluate(pt)); };
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                mpq_class s2 = ev(q.a22, i, j);
                for (std::size_t k = 0; k < 2; ++k)
                    for (std::size_t l = 0; l < 2; ++l) s2 -= ev(q.a21, i, k) * ev(adj, k, l) / dv * ev(q.a12, l, j);
                EXPECT_EQ(mpq_class(delta(i, j).evaluate(pt)), dv * s2);
            }
    }
}

TEST(SchurDelta, OddSizeRejected) {
    auto I3 = PolyMatrix::identity(ring1(), 3);
    EXPECT_THROW(schur_delta(I3, PolyMatrix::identity(ring1(), 1), Poly::constant(ring1(), 1)), OddSize);
}

TEST(InvertV2, TwoByTwoExample) {
    auto a = from_rows(ring2(), {{"x", "y"}, {"1", "x"}});
    auto res = ff_invert_v2(a, Poly::constant(ring2(), 1));
    EXPECT_EQ(res.adj_scaled, from_rows(ring2(), {{"x", "-y"}, {"-1", "x"}}));
    EXPECT_EQ(res.det, P("x^2 - y", ring2()));
}

TEST(InvertV2, ScalarDiagonal) {
    Poly c = P("x+1", ring1());
    auto a = c * PolyMatrix::identity(ring1(), 4);
    for (auto pol : kPolicies) {
        auto res = ff_invert_v2(a, Poly::constant(ring1(), 1), pol);
        EXPECT_EQ(res.det, c.pow(4));
        EXPECT_EQ(res.adj_scaled, c.pow(3) * PolyMatrix::identity(ring1(), 4));
    }
}

TEST(InvertV2, OneByOne) {
    auto a = from_rows(ring1(), {{"x^2+3"}});
    auto res = ff_invert_v2(a, P("x", ring1()));
    EXPECT_EQ(res.adj_scaled, from_rows(ring1(), {{"x"}}));
    EXPECT_EQ(res.det, P("x^2+3", ring1()));
}

TEST(InvertV2, CofactorOracleRandom4) {
    Rng rng(8);
    for (int s = 0; s < 5; ++s) {
        PolyMatrix a = polyfrac::testing::random_dense_matrix(ring2(), 4, 1, rng);
        for (auto pol : kPolicies) {
            auto res = ff_invert_v2(a, Poly::constant(ring2(), 1), pol);
            EXPECT_EQ(res.adj_scaled, cofactor_adjugate(a)) << policy_name(pol);
            EXPECT_EQ(res.det, cofactor_det(a));
        }
    }
}

TEST(InvertV2, BareissOracleRandom8) {
    Rng rng(3);
    PolyMatrix a = polyfrac::testing::random_dense_matrix(ring1(), 8, 1, rng);
    auto res = ff_invert_v2(a, Poly::constant(ring1(), 1));
    expect_inverse_contract(a, Poly::constant(ring1(), 1), res);
}

TEST(InvertV2, NontrivialD1AndAllPoliciesAgree) {
    Rng rng(44);
    Poly d1 = P("x - 2*y + 1", ring2());
    for (std::size_t n : {2u, 4u, 8u}) {
        PolyMatrix a = polyfrac::testing::random_dense_matrix(ring2(), n, 1, rng, 5);
        auto ref = ff_invert_v2(a, d1, CancelPolicy::None);
        expect_inverse_contract(a, d1, ref);
        for (auto pol : kPolicies) {
            auto res = ff_invert_v2(a, d1, pol);
            EXPECT_EQ(res.adj_scaled, ref.adj_scaled) << policy_name(pol) << " n=" << n;
            EXPECT_EQ(res.det, ref.det);
        }
    }
}

TEST(InvertV2, ScalingLaw) {
    Rng rng(90);
    Poly c = P("x+1", ring1());
    for (int s = 0; s < 3; ++s) {
        PolyMatrix a = polyfrac::testing::random_dense_matrix(ring1(), 4, 1, rng);
        auto base = ff_invert_v2(a, Poly::constant(ring1(), 1));
        auto scaled = ff_invert_v2(c * a, Poly::constant(ring1(), 1));
        EXPECT_EQ(scaled.det, c.pow(4) * base.det);
        EXPECT_EQ(scaled.adj_scaled, c.pow(3) * base.adj_scaled);
    }
}

TEST(InvertV2, PaddingBothModes) {
    Rng rng(12);
    for (int s = 0; s < 3; ++s) {
        PolyMatrix a = polyfrac::testing::random_dense_matrix(ring1(), 5, 1, rng);
        InversionOptions up, low;
        low.pad = PadMode::LowerRight;
        auto r1 = ff_invert_v2(a, Poly::constant(ring1(), 1), up);
        auto r2 = ff_invert_v2(a, Poly::constant(ring1(), 1), low);
        EXPECT_EQ(r1.adj_scaled, r2.adj_scaled);
        EXPECT_EQ(r1.det, r2.det);
        EXPECT_EQ(r1.adj_scaled.size(), 5u);
        expect_inverse_contract(a, Poly::constant(ring1(), 1), r1);
        EXPECT_EQ(r1.profile.root_n, 8u);
        EXPECT_EQ(r1.profile.original_n, 5u);
    }
}

TEST(InvertV2, SingularPivotCarriesPath) {
    // leading 2x2 block singular
    auto a = from_rows(ring1(), {{"1", "1", "0", "0"}, {"1", "1", "0", "1"}, {"0", "1", "x", "0"}, {"1", "0", "0", "x"}});
    try {
        ff_invert_v2(a, Poly::constant(ring1(), 1));
        FAIL() << "expected SingularPivot";
    } catch (const SingularPivot& e) {
        EXPECT_EQ(e.path, (OpPath{Op::A11}));
    }
    // whole matrix singular: the Schur complement is
    auto b = from_rows(ring1(), {{"x", "0"}, {"0", "0"}});
    EXPECT_THROW(ff_invert_v2(b, Poly::constant(ring1(), 1)), SingularPivot);
    auto c = from_rows(ring1(), {{"1", "0", "1", "0"}, {"0", "1", "0", "1"}, {"1", "0", "1", "0"}, {"0", "1", "0", "1"}});
    try {
        ff_invert_v2(c, Poly::constant(ring1(), 1));
        FAIL() << "expected SingularPivot";
    } catch (const SingularPivot& e) {
        EXPECT_EQ(e.path, (OpPath{Op::Delta}));
    }
}

TEST(InvertV2, RejectsBadArguments) {
    auto a = PolyMatrix::identity(ring1(), 2);
    EXPECT_THROW(ff_invert_v2(a, Poly(ring1())), DomainError);
    EXPECT_THROW(ff_invert_v2(a, Poly::constant(ring2(), 1)), RingMismatch);
}

TEST(InvertV1, Examples) {
    auto a = from_rows(ring1(), {{"x^2+3"}});
    auto res = ff_invert_v1(a, P("x", ring1()));
    EXPECT_EQ(res.adj_scaled, from_rows(ring1(), {{"x"}}));
    EXPECT_EQ(res.det, P("x^2+3", ring1()));
    auto I2 = PolyMatrix::identity(ring1(), 2);
    auto r2 = ff_invert_v1(I2, Poly::constant(ring1(), 1));
    EXPECT_EQ(r2.adj_scaled, I2);
    EXPECT_EQ(r2.det, Poly::constant(ring1(), 1));
}

TEST(InvertV1, MatchesOracleAndV2) {
    Rng rng(61);
    for (int s = 0; s < 4; ++s) {
        for (std::size_t n : {2u, 4u}) {
            PolyMatrix a = polyfrac::testing::random_dense_matrix(ring2(), n, 1, rng);
            Poly d1 = s % 2 ? P("y + 3", ring2()) : Poly::constant(ring2(), 1);
            auto v1 = ff_invert_v1(a, d1);
            auto v2 = ff_invert_v2(a, d1);
            EXPECT_EQ(v1.adj_scaled, d1 * cofactor_adjugate(a));
            EXPECT_EQ(v1.det, cofactor_det(a));
            EXPECT_EQ(v1.adj_scaled, v2.adj_scaled);
            EXPECT_EQ(v1.det, v2.det);
        }
    }
}

TEST(InvertV1, Size8) {
    Rng rng(62);
    PolyMatrix a = polyfrac::testing::random_dense_matrix(ring1(), 8, 1, rng);
    auto v1 = ff_invert_v1(a, Poly::constant(ring1(), 1));
    expect_inverse_contract(a, Poly::constant(ring1(), 1), v1);
}

TEST(DetOnly, Examples) {
    EXPECT_TRUE(det_only(PolyMatrix::identity(ring1(), 8)).is_one());
    auto a = from_rows(ring2(), {{"x", "y"}, {"1", "x"}});
    EXPECT_EQ(det_only(a), P("x^2 - y", ring2()));
    Rng rng(5);
    for (int s = 0; s < 3; ++s) {
        PolyMatrix b = polyfrac::testing::random_dense_matrix(ring2(), 4, 1, rng);
        EXPECT_EQ(det_only(b), cofactor_det(b));
        for (auto pol : kPolicies) {
            InversionOptions o;
            o.cancel = pol;
            EXPECT_EQ(det_only(b, o), cofactor_det(b));
        }
    }
    PolyMatrix c = polyfrac::testing::random_dense_matrix(ring1(), 6, 1, rng);
    EXPECT_EQ(det_only(c), bareiss_det(c));
}

TEST(InvertV2, NaiveMultiplicationSameResult) {
    Rng rng(77);
    PolyMatrix a = polyfrac::testing::random_dense_matrix(ring1(), 8, 1, rng);
    InversionOptions naive;
    naive.mul.variant = MulVariant::NaiveOnly;
    InversionOptions sw;
    sw.mul.cutoff = 1;
    auto r1 = ff_invert_v2(a, Poly::constant(ring1(), 1), naive);
    auto r2 = ff_invert_v2(a, Poly::constant(ring1(), 1), sw);
    EXPECT_EQ(r1.adj_scaled, r2.adj_scaled);
    EXPECT_EQ(r1.det, r2.det);
}
