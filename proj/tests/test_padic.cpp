#include <doctest.h>

#include <cmath>
#include <random>

#include <json.hpp>

#include "artifact/padic.hpp"

using namespace artifact::padic;

namespace {

mpq_class random_rational(std::mt19937_64& rng, long p) {
    std::uniform_int_distribution<long> unit(1, 60), val(-3, 3);
    long u = unit(rng), w = unit(rng);
    while (u % p == 0) ++u;
    while (w % p == 0) ++w;
    mpq_class x(u, w);
    x.canonicalize();
    if (rng() % 2) x = -x;
    return x * ppow(p, static_cast<int>(val(rng)));
}

const FiniteModel& model_2_3() {
    static const FiniteModel m(2, 3);
    return m;
}

const FiniteModel& model_3_2() {
    static const FiniteModel m(3, 2);
    return m;
}

}  // namespace

TEST_CASE("valuations") {
    CHECK(vp(mpz_class(48), 2) == 4);
    CHECK(vp(mpq_class(9, 250), 5) == -3);
    CHECK(vp(mpq_class(9, 250), 3) == 2);
    CHECK(vp(mpz_class(0), 3) == kInfiniteValuation);
}

TEST_CASE("Iwasawa decomposition examples") {
    QMat g{2, 1, 3, 5};
    Iwasawa d = iwasawa_decompose(g, 5);
    CHECK(d.b == identity());
    CHECK(d.k == g);

    QMat t = a_mat(ppow(3, -1));
    Iwasawa e = iwasawa_decompose(t, 3);
    CHECK(e.b == t);
    CHECK(e.k == identity());

    QMat h = n_lower(1) * a_mat(ppow(3, -1));
    Iwasawa f = iwasawa_decompose(h, 3);
    CHECK(f.b * f.k == h);
    CHECK(f.b.c == 0);
    CHECK(in_gl2_zp(f.k, 3));
    CHECK_THROWS_AS(iwasawa_decompose(QMat{1, 2, 2, 4}, 3), std::invalid_argument);
}

TEST_CASE("Iwasawa round trip on random rational matrices") {
    std::mt19937_64 rng(3);
    int done = 0;
    for (long p : {2L, 3L, 5L})
        while (done < 600 * (p == 2 ? 1 : p == 3 ? 2 : 3)) {
            QMat g{random_rational(rng, p), random_rational(rng, p), random_rational(rng, p), random_rational(rng, p)};
            if (g.det() == 0) continue;
            Iwasawa d = iwasawa_decompose(g, p);
            CHECK(d.b * d.k == g);
            CHECK(d.b.c == 0);
            CHECK(in_gl2_zp(d.k, p));
            ++done;
        }
}

TEST_CASE("finite model structure") {
    const FiniteModel& M = model_2_3();
    CHECK(static_cast<long>(M.size()) == FiniteModel::expected_order(2, 3));
    CHECK(M.reps().size() == 8 + 4);
    for (int j = 0; j <= 3; ++j)
        CHECK(static_cast<long>(M.k0(j).size()) * FiniteModel::k0_index(2, j) == static_cast<long>(M.size()));
    CHECK_THROWS_AS(M.k0(4), LevelError);
    for (size_t i = 0; i < M.size(); i += 7) {
        const Elem& g = M.element(i);
        auto d = M.decompose(g);
        // g = b r with b upper triangular: compare the lower row and the determinant
        Elem r = M.reps()[d.rep];
        long M_ = M.M();
        auto mod = [M_](long x) { return ((x % M_) + M_) % M_; };
        CHECK(mod(d.b22 * r.c - g.c) == 0);
        CHECK(mod(d.b22 * r.d - g.d) == 0);
        CHECK(mod(d.b11 * d.b22 * (r.a * r.d - r.b * r.c) - (g.a * g.d - g.b * g.c)) == 0);
    }
    CHECK_THROWS_AS(FiniteModel(4, 2), std::invalid_argument);
}

TEST_CASE("local characters") {
    for (long p : {3L, 5L})
        for (int c : {1, 2}) {
            auto ch = LocalCharacter::ramified(p, c, 1.0);
            CHECK(ch.is_multiplicative(1e-12));
            CHECK(ch.is_primitive(1e-12));
        }
    auto ch2 = LocalCharacter::ramified(2, 2, 1.0);
    CHECK(ch2.is_multiplicative(1e-12));
    CHECK(ch2.is_primitive(1e-12));
    CHECK_THROWS_AS(LocalCharacter::ramified(2, 1, 1.0), std::invalid_argument);
    auto un = LocalCharacter::unramified(3, {0.0, 1.0});
    CHECK(std::abs(un(mpq_class(1, 9)) + 1.0) < 1e-15);
    CHECK(un.unitary());
}

TEST_CASE("induced model: Haar pairing, equivariance, spherical data") {
    const FiniteModel& M = model_3_2();
    double theta = 0.7;
    InducedRep R(M, LocalCharacter::unramified(3, std::polar(1.0, theta)),
                 LocalCharacter::unramified(3, std::polar(1.0, -0.2)));
    double w = 0.0;
    for (size_t i = 0; i < M.size(); ++i) w += M.haar_weight();
    CHECK(w == doctest::Approx(1.0).epsilon(1e-12));

    std::mt19937_64 rng(9);
    for (int i = 0; i < 10; ++i) {
        InducedVector f = R.random(rng);
        CHECK(R.inner(f, f).real() > 0.0);
        CHECK(std::abs(R.inner(f, f).imag()) < 1e-14);
        CHECK(R.equivariance_defect(f, rng, 50) < 1e-12);
    }
    CHECK(R.inner(R.zero(), R.zero()) == 0.0);

    InducedVector e0 = R.spherical_vector();
    CHECK(std::abs(R.inner(e0, e0) - 1.0) < 1e-12);
    cd g01 = R.inner(R.D(0), R.D(1));
    CHECK(std::abs(g01 - 0.5) < 1e-12);
    CHECK(R.k_span_dimension(e0) == 1);
    CHECK_THROWS_AS(R.D(3), LevelError);
    CHECK_THROWS_AS(R.hecke_T0(3, e0), LevelError);
}

TEST_CASE("Hecke cosets and eigenvalues") {
    for (long p : {2L, 3L})
        for (int n = 0; n <= 3; ++n) {
            long expect = n == 0 ? 1 : (p + 1) * static_cast<long>(std::pow(p, n - 1));
            CHECK(static_cast<long>(hecke_cosets(p, n).size()) == expect);
        }
    CHECK(std::abs(lambda0(5, 0.0, 1.0) - 1.0) < 1e-15);
    CHECK(std::abs(lambda0_tilde(5, 0.0, 1.0) - 1.0) < 1e-15);
    auto a = hecke_power_coefficients(2, 3, 1.0);
    CHECK(a.size() == 2);
    CHECK(std::abs(a[0] - 0.75) < 1e-15);
    CHECK(std::abs(a[1] - 0.25) < 1e-15);
    CHECK(spherical_whittaker(0.3, 0.5, 3, -1) == 0.0);
    CHECK(std::abs(spherical_whittaker(1.0, 1.0, 4, 2) - 3.0 / 4.0) < 1e-15);
}

TEST_CASE("identity suites on GL2(Z/8)") {
    auto reports = run_suites(model_2_3(), "all", 17);
    CHECK(reports.size() == 6);
    for (const auto& r : reports) {
        CHECK_MESSAGE(r.pass(), r.suite);
        auto j = nlohmann::json::parse(r.to_json());
        CHECK(j["suite"] == r.suite);
        CHECK(j["identities"].size() == r.identities.size());
    }
    CHECK_THROWS_AS(run_suites(model_2_3(), "nope", 1), std::invalid_argument);
}

TEST_CASE("suites are deterministic in the seed") {
    auto a = run_suites(model_2_3(), "adjoint", 5);
    auto b = run_suites(model_2_3(), "adjoint", 5);
    CHECK(a[0].to_json() == b[0].to_json());
}
