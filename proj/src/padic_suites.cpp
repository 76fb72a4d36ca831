#include "artifact/padic.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

#include <json.hpp>

namespace artifact::padic {

using json = nlohmann::json;

void Report::check(const std::string& name, double residual, double tol) {
    bool ok = std::isfinite(residual) && residual < tol;
    for (auto& r : identities)
        if (r.name == name) {
            r.max_residual = std::isfinite(residual) ? std::max(r.max_residual, residual) : residual;
            r.pass = r.pass && ok;
            return;
        }
    identities.push_back({name, residual, ok});
}

void Report::check_exact(const std::string& name, long expected, long got) {
    identities.push_back({name, std::fabs(static_cast<double>(expected - got)), expected == got});
}

void Report::check_true(const std::string& name, bool ok) { identities.push_back({name, ok ? 0.0 : 1.0, ok}); }

bool Report::pass() const {
    return std::all_of(identities.begin(), identities.end(), [](const IdentityResult& r) { return r.pass; });
}

std::string Report::to_json() const {
    json j;
    j["suite"] = suite;
    j["p"] = p;
    j["m"] = m;
    j["case_params"] = case_params.empty() ? json::object() : json::parse(case_params);
    j["identities"] = json::array();
    for (const auto& r : identities) {
        json row{{"name", r.name}, {"pass", r.pass}};
        if (std::isfinite(r.max_residual))
            row["max_residual"] = r.max_residual;
        else
            row["max_residual"] = nullptr;
        j["identities"].push_back(row);
    }
    return j.dump(2);
}

namespace {

long lpow(long p, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

double sup(const InducedVector& a, const InducedVector& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) s = std::max(s, std::abs(a.values[i] - b.values[i]));
    return s;
}

InducedVector combo(const InducedRep& R, const std::vector<std::pair<cd, const InducedVector*>>& terms) {
    InducedVector out = R.zero();
    for (const auto& [c, v] : terms)
        for (size_t i = 0; i < out.values.size(); ++i) out.values[i] += c * v->values[i];
    return out;
}

std::vector<InducedVector> gram_schmidt(const InducedRep& R, const std::vector<InducedVector>& vs) {
    std::vector<InducedVector> es;
    for (const auto& v : vs) {
        InducedVector w = v;
        for (const auto& e : es) w -= R.inner(w, e) * e;
        double n = std::sqrt(R.inner(w, w).real());
        es.push_back((1.0 / n) * w);
    }
    return es;
}

double gram_defect(const InducedRep& R, const std::vector<InducedVector>& vs) {
    double d = 0.0;
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = 0; j < vs.size(); ++j)
            d = std::max(d, std::abs(R.inner(vs[i], vs[j]) - (i == j ? 1.0 : 0.0)));
    return d;
}

cd phase(cd z) { return z / std::abs(z); }
cd unit(double t) { return std::polar(1.0, t); }

// S_k(a1, a2) = (a1^{k+1} - a2^{k+1}) / (a1 - a2); 0 for k < 0.
cd schur(cd a1, cd a2, int k) {
    if (k < 0) return 0.0;
    return (std::pow(a1, k + 1) - std::pow(a2, k + 1)) / (a1 - a2);
}

// Ramified data the model can host: c = 1 (c = 2 at p = 2) and translates up to m - c.
struct Capacity {
    int n_spherical;
    int c_ramified;
    int n_ramified;  // negative if no ramified case fits
};

Capacity capacity(const FiniteModel& model) {
    int c = model.p() == 2 ? 2 : 1;
    return {model.m(), c, model.m() - c};
}

InducedRep spherical_rep(const FiniteModel& model, cd a1, cd a2) {
    return InducedRep(model, LocalCharacter::unramified(model.p(), a1), LocalCharacter::unramified(model.p(), a2));
}

json cplx(cd z) { return json::array({z.real(), z.imag()}); }

std::string fmt(const std::string& base, int n) { return base + " n=" + std::to_string(n); }

}  // namespace

Report verify_hecke_recurrence(const FiniteModel& model, uint64_t seed) {
    const long p = model.p();
    const int m = model.m();
    const double q = static_cast<double>(p);
    std::mt19937_64 rng(seed ^ 0x4845434bULL);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    Report rep{"hecke", p, m, "", {}};

    // Coset structure, exact.
    for (int n = 1; n <= m; ++n) {
        auto cs = hecke_cosets(p, n);
        rep.check_exact(fmt("coset count of K a(p^n) K / K", n), lpow(p, n) + lpow(p, n - 1), static_cast<long>(cs.size()));
        bool inside = true, distinct = true;
        for (const auto& h : cs) {
            int vmin = std::min({vp(h.a, p), vp(h.b, p), vp(h.c, p), vp(h.d, p)});
            inside = inside && vmin == 0 && vp(h.det(), p) == n;
        }
        for (size_t i = 0; i < cs.size() && distinct; ++i)
            for (size_t j = i + 1; j < cs.size(); ++j)
                if (in_gl2_zp(cs[i].inverse() * cs[j], p)) {
                    distinct = false;
                    break;
                }
        rep.check_true(fmt("cosets lie in K a(p^n) K and are pairwise distinct", n), inside && distinct);

        // K_0[p^n] \ K: classes by bottom row, unipotent [[1,0],[x,1]] and Weyl [[0,1],[1,y]], y in pZ.
        const long pn = lpow(p, n);
        std::vector<long> cls(static_cast<size_t>(pn + pn / p), 0);
        bool member = true;
        for (const auto& k : model.elements()) {
            long idx;
            if (k.d % p != 0) {
                long x = k.c * model.inv_mod(k.d) % model.M() % pn;
                member = member && (k.c - k.d * x) % pn == 0;
                idx = x;
            } else {
                long y = k.d * model.inv_mod(k.c) % model.M() % pn;
                member = member && (k.d - k.c * y) % pn == 0;
                idx = pn + y / p;
            }
            ++cls[idx];
        }
        long unip = 0, weyl = 0;
        bool equal = true;
        const long expected_size = static_cast<long>(model.k0(n).size());
        for (size_t i = 0; i < cls.size(); ++i) {
            if (cls[i] == 0) continue;
            (static_cast<long>(i) < pn ? unip : weyl) += 1;
            equal = equal && cls[i] == expected_size;
        }
        rep.check_exact(fmt("K_0[p^n]\\K unipotent cosets", n), pn, unip);
        rep.check_exact(fmt("K_0[p^n]\\K Weyl cosets", n), pn / p, weyl);
        rep.check_true(fmt("K_0[p^n]\\K classes are K_0[p^n]-cosets of equal size", n), member && equal);
        rep.check_exact(fmt("[K : K_0[p^n]] against enumeration", n), FiniteModel::k0_index(p, n),
                        static_cast<long>(model.size()) / expected_size);
    }
    rep.check_exact("|GL2(Z/p^m)| against enumeration", FiniteModel::expected_order(p, m), static_cast<long>(model.size()));

    json cases = json::array();
    for (int which = 0; which < 2; ++which) {
        cd a1 = unit(ang(rng));
        cd a2 = which == 0 ? unit(ang(rng)) : std::conj(a1);
        InducedRep R = spherical_rep(model, a1, a2);
        const cd a0 = R.alpha0();
        cases.push_back({{"alpha1", cplx(a1)}, {"alpha2", cplx(a2)}, {"alpha0", cplx(a0)}});
        const std::string tag = which == 0 ? " [generic]" : " [alpha0=1]";

        InducedVector e = R.spherical_vector();
        rep.check("T(0) fixes the spherical vector" + tag, sup(R.hecke_T0(0, e), e));
        for (int t = 0; t < 5; ++t) {
            InducedVector f = R.random(rng);
            std::vector<InducedVector> T;
            for (int n = 0; n <= m; ++n) T.push_back(R.hecke_T0(n, f));
            rep.check("T(0)T(1) = T(1)" + tag, sup(R.hecke_T0(0, T[1]), T[1]));
            for (int n = 1; n + 1 <= m; ++n) {
                InducedVector lhs = R.hecke_T0(n, T[1]);
                InducedVector rhs = combo(R, {{q / (1.0 + q), &T[n + 1]}, {1.0 / a0 / (1.0 + q), &T[n - 1]}});
                rep.check(fmt("T(n)T(1) recurrence", n) + tag, sup(lhs, rhs));
            }
            for (int n = 1; n <= m; ++n) {
                InducedVector direct = R.project_K0(R.translate_a(R.project_K0(f, 0), -n, 0), 0);
                rep.check(fmt("coset average equals P_K R(a(p^n)) P_K", n) + tag, sup(T[n], direct));
            }
            InducedVector pw = f;
            for (int n = 1; n <= m; ++n) {
                pw = R.hecke_T0(1, pw);
                auto a = hecke_power_coefficients(n, p, a0);
                InducedVector rhs = R.zero();
                for (size_t j = 0; j < a.size(); ++j) rhs += a[j] * T[n - 2 * static_cast<int>(j)];
                rep.check(fmt("T(1)^n expansion in T(n-2j)", n) + tag, sup(pw, rhs));
            }
            rep.check("T(1) output is equivariant" + tag, R.equivariance_defect(T[1], rng, 200), 1e-12);
        }
        for (int n = 1; n <= 8; ++n) {
            auto a = hecke_power_coefficients(n, p, a0);
            rep.check(fmt("a_0^(n) = (q/(1+q))^(n-1)", n) + tag, std::abs(a[0] - std::pow(q / (1.0 + q), n - 1)));
            double s = 0.0;
            for (auto c : a) s += std::abs(c);
            rep.check_true(fmt("sum_j |a_j^(n)| <= 1", n) + tag, s <= 1.0 + 1e-12);
        }
    }
    rep.case_params = json{{"seed", seed}, {"cases", cases}}.dump();
    return rep;
}

Report verify_adjoint(const FiniteModel& model, uint64_t seed) {
    const long p = model.p();
    const int m = model.m();
    std::mt19937_64 rng(seed ^ 0x41444aULL);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    Report rep{"adjoint", p, m, "", {}};
    json cases = json::array();
    const std::vector<std::pair<std::string, cd>> central{
        {"alpha0=1", 1.0}, {"alpha0=i", cd(0.0, 1.0)}, {"alpha0 random", unit(ang(rng))}};
    for (const auto& [label, a0] : central) {
        cd a1 = unit(ang(rng));
        cd a2 = 1.0 / (a0 * a1);
        InducedRep R = spherical_rep(model, a1, a2);
        InducedRep Rt(model, R.chi1().inverse(), R.chi2().inverse());
        cases.push_back({{"label", label}, {"alpha1", cplx(a1)}, {"alpha2", cplx(a2)}});
        const std::string tag = " [" + label + "]";
        for (int n = 0; n <= m; ++n) {
            for (int t = 0; t < 5; ++t) {
                InducedVector f1 = R.random(rng), f2 = R.random(rng), g = Rt.random(rng);
                InducedVector Tf1 = R.hecke_T0(n, f1), Tf2 = R.hecke_T0(n, f2), Tg = Rt.hecke_T0(n, g);
                cd lhs = R.inner(f1, Tf2);
                cd rhs = std::pow(a0, n) * R.inner(Tf1, f2);
                rep.check(fmt("hermitian adjoint T(n)^* = alpha0^n T(n)", n) + tag, std::abs(lhs - rhs));
                cd dl = R.pairing(Tf1, g);
                cd dr = std::pow(a0, -n) * R.pairing(f1, Tg);
                rep.check(fmt("dual T(n)^v = alpha0^{-n} T(n)", n) + tag, std::abs(dl - dr));
                if (label == "alpha0=1")
                    rep.check(fmt("self-adjoint for trivial central character", n) + tag, std::abs(lhs - R.inner(Tf1, f2)),
                              1e-12);
                if (label == "alpha0=i" && n == 2)
                    rep.check("alpha0=i, n=2: <f, T f'> = -<T f, f'>", std::abs(lhs + R.inner(Tf1, f2)));
            }
        }
    }
    rep.case_params = json{{"seed", seed}, {"cases", cases}}.dump();
    return rep;
}

namespace {

// Orthonormality of Kirillov translates for the Steinberg and L = 1 tables.
void kirillov_checks(Report& rep, long p, std::mt19937_64& rng) {
    const double q = static_cast<double>(p);
    const int K = 120, nmax = 4;
    using Vec = std::vector<cd>;  // index k = valuation, 0..K + nmax
    auto dot = [](const Vec& a, const Vec& b) {
        cd s = 0.0;
        for (size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
        return s;
    };
    auto translates = [&](auto W) {
        std::vector<Vec> f;
        for (int n = 0; n <= nmax; ++n) {
            Vec v(K + nmax + 1, 0.0);
            for (int k = n; k <= K + nmax; ++k) v[k] = W(k - n);
            f.push_back(v);
        }
        return f;
    };
    auto gs = [&](const std::vector<Vec>& vs) {
        std::vector<Vec> es;
        for (auto w : vs) {
            for (const auto& e : es) {
                cd c = dot(w, e);
                for (size_t i = 0; i < w.size(); ++i) w[i] -= c * e[i];
            }
            double n = std::sqrt(dot(w, w).real());
            for (auto& x : w) x /= n;
            es.push_back(w);
        }
        return es;
    };
    auto dist = [](const Vec& a, const Vec& b) {
        double s = 0.0;
        for (size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
        return s;
    };

    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    const std::vector<std::pair<std::string, cd>> twists{{"chi=+1", 1.0}, {"chi=-1", -1.0}, {"chi complex", unit(ang(rng))}};
    for (const auto& [label, chi] : twists) {
        const double norm = std::sqrt(1.0 - 1.0 / (q * q));
        auto W = [&](int k) { return k < 0 ? cd(0.0) : norm * std::pow(chi / q, k); };
        auto f = translates(W);
        // Tail beyond K is q^{-2K}, far below double resolution.
        rep.check("Steinberg new vector has unit norm [" + label + "]", std::abs(dot(f[0], f[0]) - 1.0));
        auto es = gs(f);
        cd coef = std::conj(chi) / q;
        for (int n = 1; n <= nmax; ++n) {
            Vec v(f[n].size());
            for (size_t i = 0; i < v.size(); ++i) v[i] = (f[n][i] - coef * f[n - 1][i]) / norm;
            rep.check(fmt("Steinberg e_n = (1-q^-2)^{-1/2}(f_n - conj(chi) q^-1 f_{n-1})", n) + " [" + label + "]",
                      dist(v, es[n]));
            if (chi.imag() == 0.0) {
                Vec w(f[n].size());
                for (size_t i = 0; i < w.size(); ++i) w[i] = (f[n][i] - chi / q * f[n - 1][i]) / norm;
                rep.check(fmt("Steinberg e_n with chi q^-1 (real chi)", n) + " [" + label + "]", dist(w, es[n]));
            }
        }
    }
    auto f = translates([](int k) { return k == 0 ? cd(1.0) : cd(0.0); });
    auto es = gs(f);
    for (int n = 0; n <= nmax; ++n) rep.check("L = 1: basis 1 equals basis 2", dist(f[n], es[n]));
}

}  // namespace

Report verify_basis_relations(const FiniteModel& model, uint64_t seed) {
    const long p = model.p();
    const int m = model.m();
    const double q = static_cast<double>(p);
    const Capacity cap = capacity(model);
    std::mt19937_64 rng(seed ^ 0x42415349ULL);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> comp(1e-3, 7.0 / 64.0);
    Report rep{"basis", p, m, "", {}};
    json params{{"seed", seed}};

    // Unitary spherical principal series.
    {
        cd a1 = unit(ang(rng)), a2 = unit(ang(rng));
        params["spherical"] = {{"alpha1", cplx(a1)}, {"alpha2", cplx(a2)}};
        InducedRep R = spherical_rep(model, a1, a2);
        const cd A1 = std::conj(a1), A2 = std::conj(a2);
        const int N = cap.n_spherical;
        InducedVector e0 = R.spherical_vector();
        std::vector<InducedVector> f{e0};
        for (int n = 1; n <= N; ++n) f.push_back(R.translate_a(e0, n, 0));
        auto es = gram_schmidt(R, f);

        for (int n = 1; n <= N; ++n) {
            std::mt19937_64 noise(seed + static_cast<uint64_t>(n));
            rep.check("translate is independent of the integer lift",
                      sup(f[n], R.translate(e0, a_mat(ppow(p, -n)), &noise)), 1e-12);
            rep.check("translates stay equivariant", R.equivariance_defect(f[n], rng, 300), 1e-12);
        }
        rep.check("translate by a(1) is the identity", sup(R.translate_a(e0, 0, 0), e0), 1e-14);

        const double s12 = std::norm(a1 + a2);
        const double c1 = 1.0 - s12 / q / std::pow(1.0 + 1.0 / q, 2);
        const double c = 1.0 - 1.0 / (q * q) - (1.0 / q - 1.0 / (q * q)) / (1.0 + 1.0 / q) * s12;
        const cd sig1 = (A1 + A2) / std::sqrt(q), sig2 = A1 * A2 / q;
        std::vector<InducedVector> closed{e0};
        if (N >= 1) {
            InducedVector e1p = combo(R, {{1.0, &f[1]}, {-sig1 / (1.0 + 1.0 / q), &f[0]}});
            InducedVector proj = f[1] - R.inner(f[1], e0) * e0;
            rep.check("c_1 equals |a(p^-1)e_0 - projection|^2", std::abs(R.inner(proj, proj).real() - c1));
            closed.push_back((1.0 / std::sqrt(c1)) * e1p);
        }
        for (int n = 2; n <= N; ++n) {
            InducedVector en = combo(R, {{1.0, &f[n]}, {-sig1, &f[n - 1]}, {sig2, &f[n - 2]}});
            rep.check(fmt("c equals |e_n'|^2", n), std::abs(R.inner(en, en).real() - c));
            closed.push_back((1.0 / std::sqrt(c)) * en);
        }
        rep.check("basis 2 closed forms are orthonormal", gram_defect(R, closed));
        for (int n = 0; n <= N; ++n) rep.check(fmt("basis 2 closed form equals Gram-Schmidt", n), sup(closed[n], es[n]));

        // Inverse relation, basis 1 in terms of basis 2.
        auto Sb = [&](int k) { return schur(A1, A2, k); };
        if (N >= 1) {
            InducedVector rhs = combo(R, {{std::sqrt(c1), &es[1]}, {sig1 / (1.0 + 1.0 / q), &es[0]}});
            rep.check(fmt("basis 1 from basis 2", 1), sup(f[1], rhs));
        }
        for (int n = 2; n <= N; ++n) {
            InducedVector rhs = R.zero();
            for (int k = 0; k <= n - 2; ++k) rhs += (std::pow(q, -0.5 * k) * Sb(k) * std::sqrt(c)) * es[n - k];
            rhs += (std::pow(q, -0.5 * (n - 1)) * Sb(n - 1) * std::sqrt(c1)) * es[1];
            rhs += (std::pow(q, -0.5 * n) * (Sb(n) - (A1 + A2) / (q + 1.0) * Sb(n - 1))) * es[0];
            rep.check(fmt("basis 1 from basis 2", n), sup(f[n], rhs));
        }

        std::vector<InducedVector> D;
        for (int k = 0; k <= N; ++k) D.push_back(R.D(k));
        rep.check("D_0 is the spherical vector", sup(D[0], e0));
        for (int a = 0; a <= N; ++a)
            for (int b = 0; b <= N; ++b) {
                double expect = std::sqrt(FiniteModel::k0_volume(p, std::max(a, b)) / FiniteModel::k0_volume(p, std::min(a, b)));
                rep.check("<D_a, D_b> volume ratio", std::abs(R.inner(D[a], D[b]) - expect));
            }
        if (N >= 1) rep.check("<D_0, D_1> = (q+1)^{-1/2}", std::abs(R.inner(D[0], D[1]) - 1.0 / std::sqrt(q + 1.0)));

        const cd kappa = 1.0 - a1 / a2 / q;
        for (int n = 1; n <= N; ++n) {
            InducedVector rhs = (std::pow(a2, -n) * std::pow(q, -0.5 * n)) * D[0];
            for (int k = 1; k <= n; ++k)
                rhs += (kappa / std::sqrt(1.0 + 1.0 / q) * std::pow(a1, -k) * std::pow(a2, k - n) * std::pow(q, -0.5 * (n - k))) * D[k];
            rep.check(fmt("basis 1 from basis 3", n), sup(f[n], rhs));
            InducedVector dn = combo(R, {{1.0, &f[n]}, {-1.0 / a2 / std::sqrt(q), &f[n - 1]}});
            dn *= std::pow(a1, n) * std::sqrt(1.0 + 1.0 / q) / kappa;
            rep.check(fmt("basis 3 from basis 1", n), sup(D[n], dn));
        }

        std::vector<InducedVector> eD{D[0]};
        if (N >= 1) eD.push_back(std::sqrt(1.0 + 1.0 / q) * combo(R, {{1.0, &D[1]}, {-1.0 / std::sqrt(q + 1.0), &D[0]}}));
        for (int n = 2; n <= N; ++n)
            eD.push_back((1.0 / std::sqrt(1.0 - 1.0 / q)) * combo(R, {{1.0, &D[n]}, {-1.0 / std::sqrt(q), &D[n - 1]}}));
        rep.check("basis 2 from basis 3 is orthonormal", gram_defect(R, eD));
        for (int n = 1; n <= N; ++n) {
            cd u = phase(std::pow(a1, -n) * kappa);
            rep.check(fmt("Gram-Schmidt e_n = u_n (basis 2 from basis 3)", n), sup(es[n], u * eD[n]));
            InducedVector rhs = R.zero();
            for (int k = 0; k <= n - 2; ++k) rhs += (std::sqrt(1.0 - 1.0 / q) * std::pow(q, -0.5 * k)) * eD[n - k];
            rhs += (std::pow(q, -0.5 * (n - 1)) / std::sqrt(1.0 + 1.0 / q)) * eD[1];
            rhs += (std::pow(q, -0.5 * (n - 1)) / std::sqrt(q + 1.0)) * eD[0];
            rep.check(fmt("basis 3 from basis 2", n), sup(D[n], rhs));
        }

        for (int n = 0; n <= N; ++n) {
            long expect = n == 0 ? 1 : n == 1 ? p : lpow(p, n) - lpow(p, n - 2);
            rep.check_exact(fmt("dimension d_n of the K-span of e_n (spherical)", n), expect, R.k_span_dimension(es[n]));
        }
    }

    // Complementary series: relations that involve no inner product.
    {
        double a = comp(rng), th = ang(rng);
        cd a1 = std::pow(q, -a) * unit(th), a2 = std::pow(q, a) * unit(th);
        params["complementary"] = {{"alpha1", cplx(a1)}, {"alpha2", cplx(a2)}};
        InducedRep R = spherical_rep(model, a1, a2);
        const int N = cap.n_spherical;
        InducedVector e0 = R.spherical_vector();
        std::vector<InducedVector> f{e0}, D{R.D(0)};
        for (int n = 1; n <= N; ++n) {
            f.push_back(R.translate_a(e0, n, 0));
            D.push_back(R.D(n));
        }
        const cd kappa = 1.0 - a1 / a2 / q;
        for (int n = 1; n <= N; ++n) {
            InducedVector rhs = (std::pow(a2, -n) * std::pow(q, -0.5 * n)) * D[0];
            for (int k = 1; k <= n; ++k)
                rhs += (kappa / std::sqrt(1.0 + 1.0 / q) * std::pow(a1, -k) * std::pow(a2, k - n) * std::pow(q, -0.5 * (n - k))) * D[k];
            rep.check(fmt("basis 1 from basis 3 [complementary]", n), sup(f[n], rhs));
            InducedVector dn = combo(R, {{1.0, &f[n]}, {-1.0 / a2 / std::sqrt(q), &f[n - 1]}});
            dn *= std::pow(a1, n) * std::sqrt(1.0 + 1.0 / q) / kappa;
            rep.check(fmt("basis 3 from basis 1 [complementary]", n), sup(D[n], dn));
        }
    }

    // pi(1, omega) with omega ramified.
    if (cap.n_ramified >= 0) {
        const int c = cap.c_ramified, N = cap.n_ramified;
        cd w = unit(ang(rng));
        params["ramified"] = {{"conductor", c}, {"omega_at_p", cplx(w)}};
        InducedRep R(model, LocalCharacter::unramified(p, 1.0), LocalCharacter::ramified(p, c, w));
        rep.check_true("omega is multiplicative and primitive", R.chi2().is_multiplicative(1e-12) && R.chi2().is_primitive(1e-12));
        std::vector<InducedVector> D;
        for (int k = 0; k <= N; ++k) D.push_back(R.D(k));
        InducedVector e0 = R.new_vector();
        rep.check("new vector has unit norm [ramified]", std::abs(R.inner(e0, e0) - 1.0));
        std::vector<InducedVector> f{e0};
        for (int n = 1; n <= N; ++n) f.push_back(R.translate_a(e0, n, c));
        for (int n = 0; n <= N; ++n) rep.check(fmt("basis 1 equals basis 3 [ramified]", n), sup(f[n], D[n]));
        auto es = gram_schmidt(R, f);
        for (int n = 1; n <= N; ++n) {
            InducedVector v = (1.0 / std::sqrt(1.0 - 1.0 / q)) * combo(R, {{1.0, &D[n]}, {-1.0 / std::sqrt(q), &D[n - 1]}});
            rep.check(fmt("e_n = (1-q^-1)^{-1/2}(D_n - q^{-1/2} D_{n-1}) [ramified]", n), sup(es[n], v));
            InducedVector rhs = std::pow(q, -0.5 * n) * es[0];
            for (int k = 0; k < n; ++k) rhs += (std::sqrt(1.0 - 1.0 / q) * std::pow(q, -0.5 * k)) * es[n - k];
            rep.check(fmt("D_n from basis 2 [ramified]", n), sup(D[n], rhs));
        }
        for (int n = 0; n <= N; ++n) {
            long expect = n == 0 ? lpow(p, c) + lpow(p, c - 1) : lpow(p, n + c) - lpow(p, n + c - 2);
            rep.check_exact(fmt("dimension d_n of the K-span of e_n (ramified)", n), expect, R.k_span_dimension(es[n]));
        }
    }

    kirillov_checks(rep, p, rng);
    rep.case_params = params.dump();
    return rep;
}

namespace {

// Rank of the column space of a rep-coordinate matrix.
int column_rank(const std::vector<RepCoords>& P, double tol) {
    const size_t R = P.size();
    std::vector<RepCoords> basis;
    for (size_t t = 0; t < R; ++t) {
        RepCoords w(R);
        for (size_t r = 0; r < R; ++r) w[r] = P[r][t];
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& e : basis) {
                cd s = 0.0;
                for (size_t i = 0; i < R; ++i) s += w[i] * std::conj(e[i]);
                for (size_t i = 0; i < R; ++i) w[i] -= s * e[i];
            }
        double n = 0.0;
        for (const auto& x : w) n += std::norm(x);
        n = std::sqrt(n);
        if (n <= tol) continue;
        for (auto& x : w) x /= n;
        basis.push_back(std::move(w));
    }
    return static_cast<int>(basis.size());
}

// dim of K_0[p^j]-invariants: j + 1 when spherical; 0 when the central
// character is ramified, since K_0[p^j] contains the unit scalars.
void projector_laws(Report& rep, const InducedRep& R, std::mt19937_64& rng, const std::string& tag) {
    const int m = R.model().m();
    for (int j = 0; j <= m; ++j) {
        const auto& P = R.projector_matrix(j);
        cd tr = 0.0;
        for (size_t i = 0; i < P.size(); ++i) tr += P[i][i];
        long expect = R.spherical() ? j + 1 : 0;
        long rounded = std::lround(tr.real());
        rep.check(fmt("trace of P_j is an integer", j) + tag, std::abs(tr - static_cast<double>(rounded)), 1e-9);
        rep.check_exact(fmt("dim im P_j from trace", j) + tag, expect, rounded);
        rep.check_exact(fmt("dim im P_j from column rank", j) + tag, expect, column_rank(P, 1e-9));
    }
    for (int t = 0; t < 3; ++t) {
        InducedVector f = R.random(rng), g = R.random(rng);
        std::vector<InducedVector> Pf;
        for (int j = 0; j <= m; ++j) Pf.push_back(R.project_K0(f, j));
        for (int j = 0; j <= m; ++j) {
            rep.check("P_j is idempotent" + tag, sup(R.project_K0(Pf[j], j), Pf[j]));
            rep.check("P_j is self-adjoint" + tag, std::abs(R.inner(Pf[j], g) - R.inner(f, R.project_K0(g, j))));
            rep.check("P_j output is equivariant" + tag, R.equivariance_defect(Pf[j], rng, 200), 1e-12);
            for (int k = 0; k <= m; ++k)
                rep.check("P_j P_k = P_min(j,k)" + tag, sup(R.project_K0(Pf[k], j), Pf[std::min(j, k)]));
        }
    }
}

void ladder(Report& rep, const InducedRep& R, const std::string& tag) {
    const long p = R.model().p();
    const double q = static_cast<double>(p);
    const int N = R.model().m();
    const cd A1 = std::conj(R.alpha1()), A2 = std::conj(R.alpha2());
    InducedVector e0 = R.spherical_vector();
    std::vector<InducedVector> f{e0};
    for (int n = 1; n <= N; ++n) f.push_back(R.translate_a(e0, n, 0));
    auto S = [&](int k) { return schur(A1, A2, k); };
    for (int n = 1; n <= N; ++n) {
        for (int k = 0; k < n; ++k) {
            InducedVector lhs = R.project_K0(f[n], n - k);
            InducedVector rhs = (std::pow(q, -0.5 * k) * S(k)) * f[n - k];
            rhs -= (std::pow(q, -0.5 * (k + 1)) * A1 * A2 * S(k - 1)) * f[n - k - 1];
            rep.check("P_{n-k} a(p^-n) e_0 ladder" + tag, sup(lhs, rhs));
        }
        InducedVector rhs = (std::pow(q, -0.5 * n) * (S(n) - (A1 + A2) / (q + 1.0) * S(n - 1))) * e0;
        rep.check(fmt("P_0 a(p^-n) e_0", n) + tag, sup(R.project_K0(f[n], 0), rhs));
    }
    rep.check("P_0 a(p^-1) e_0 = q^{1/2}(conj a1 + conj a2)/(q+1) e_0" + tag,
              sup(R.project_K0(f[1], 0), (std::sqrt(q) * (A1 + A2) / (q + 1.0)) * e0));
}

}  // namespace

Report verify_projection_formulas(const FiniteModel& model, uint64_t seed) {
    const long p = model.p();
    const int m = model.m();
    const double q = static_cast<double>(p);
    const Capacity cap = capacity(model);
    std::mt19937_64 rng(seed ^ 0x50524f4aULL);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> comp(1e-3, 7.0 / 64.0);
    Report rep{"projection", p, m, "", {}};
    json params{{"seed", seed}};

    cd a1 = unit(ang(rng)), a2 = unit(ang(rng));
    params["spherical"] = {{"alpha1", cplx(a1)}, {"alpha2", cplx(a2)}};
    InducedRep R = spherical_rep(model, a1, a2);
    projector_laws(rep, R, rng, " [spherical]");
    ladder(rep, R, " [spherical]");

    double a = comp(rng), th = ang(rng);
    cd b1 = std::pow(q, -a) * unit(th), b2 = std::pow(q, a) * unit(th);
    params["complementary"] = {{"alpha1", cplx(b1)}, {"alpha2", cplx(b2)}};
    ladder(rep, spherical_rep(model, b1, b2), " [complementary]");

    if (cap.c_ramified <= m) {
        cd w = unit(ang(rng));
        params["ramified"] = {{"conductor", cap.c_ramified}, {"omega_at_p", cplx(w)}};
        InducedRep Rr(model, LocalCharacter::unramified(p, 1.0), LocalCharacter::ramified(p, cap.c_ramified, w));
        projector_laws(rep, Rr, rng, " [ramified]");
    }
    rep.case_params = params.dump();
    return rep;
}

namespace {

// Sum of term(k) for k >= k0 with |term(k)| <= bound(k), bound eventually
// geometric. Stops when the geometric tail estimate is below 1e-17 relative.
template <class T, class B>
cd certified_sum(T term, B bound, int k0, double& tail) {
    cd acc = 0.0;
    for (int k = k0; k < k0 + 5000; ++k) {
        acc += term(k);
        double b1 = bound(k + 1), b2 = bound(k + 2);
        double r = b1 > 0 ? b2 / b1 : 0.0;
        if (k > k0 + 8 && r < 1.0) {
            double t = b1 / (1.0 - r);
            if (t < 1e-17 * std::max(1.0, std::abs(acc))) {
                tail = t;
                return acc;
            }
        }
    }
    tail = std::numeric_limits<double>::infinity();
    return acc;
}

}  // namespace

Report verify_local_integrals(long q_, uint64_t seed) {
    const double q = static_cast<double>(q_);
    std::mt19937_64 rng(seed ^ 0x4c4f43ULL);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> sdist(0.0, 1.0);
    std::uniform_real_distribution<double> comp(1e-3, 7.0 / 64.0);
    Report rep{"integrals", q_, 0, "", {}};
    json params{{"seed", seed}, {"q", q_}};

    rep.check_true("spherical Whittaker vanishes for k < 0",
                   spherical_whittaker(0.3, 0.7, q_, -1) == 0.0 && spherical_whittaker(1.0, 1.0, q_, -3) == 0.0);
    {
        cd a = unit(ang(rng));
        double worst = 0.0;
        for (int k = 0; k <= 10; ++k)
            worst = std::max(worst, std::abs(spherical_whittaker(a, a, q_, k) - spherical_whittaker(a, a * unit(1e-8), q_, k)));
        rep.check("equal Satake parameters match nearby evaluation", worst, 1e-6);
    }

    // Satake parameter pairs for the MacDonald checks.
    json alphas = json::array();
    for (int t = 0; t < 4; ++t) {
        cd a1, a2;
        if (t < 3) {
            a1 = unit(ang(rng));
            a2 = unit(ang(rng));
        } else {
            double a = comp(rng), th = ang(rng);
            a1 = std::pow(q, -a) * unit(th);
            a2 = std::pow(q, a) * unit(th);
        }
        alphas.push_back({cplx(a1), cplx(a2)});
        double worst = 0.0;
        for (int k = 0; k <= 12; ++k) {
            cd lhs = (a1 + a2) * std::pow(q, 0.5 * k) * spherical_whittaker(a1, a2, q_, k);
            cd rhs = std::pow(q, 0.5 * (k + 1)) * spherical_whittaker(a1, a2, q_, k + 1) +
                     a1 * a2 * std::pow(q, 0.5 * (k - 1)) * spherical_whittaker(a1, a2, q_, k - 1);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        rep.check("MacDonald three-term recursion", worst);
        double amax = std::max(std::abs(a1), std::abs(a2));
        double tail = 0.0;
        cd norm = certified_sum([&](int k) { return cd(std::norm(spherical_whittaker(a1, a2, q_, k))); },
                                [&](int k) { return std::pow(k + 1.0, 2) * std::pow(amax * amax / q, k); }, 0, tail);
        cd closed = (1.0 - std::norm(a1 * a2) / (q * q)) /
                    ((1.0 - a1 * std::conj(a1) / q) * (1.0 - a1 * std::conj(a2) / q) * (1.0 - a2 * std::conj(a1) / q) *
                     (1.0 - a2 * std::conj(a2) / q));
        rep.check("MacDonald norm sum_k |W(a(p^k))|^2", std::abs(norm - closed) + tail);
    }
    params["satake_pairs"] = alphas;

    // Series with S_k(alpha) = (alpha^{k+1} - alpha^{-(k+1)}) / (alpha - alpha^{-1}).
    json l32 = json::array();
    for (int t = 0; t < 4; ++t) {
        cd al = t < 3 ? unit(ang(rng)) : cd(std::pow(q, comp(rng)));
        l32.push_back(cplx(al));
        auto S = [&](int k) { return schur(al, 1.0 / al, k); };
        cd L = 1.0 / ((1.0 - al / std::sqrt(q)) * (1.0 - 1.0 / (al * std::sqrt(q))));
        double amax = std::max(std::abs(al), 1.0 / std::abs(al));
        for (int n = 0; n <= 5; ++n) {
            double tail = 0.0;
            cd lhs = certified_sum([&](int k) { return std::pow(q, -0.5 * (k - n)) * S(k); },
                                   [&](int k) { return (k + 1.0) * std::pow(amax, k) * std::pow(q, -0.5 * (k - n)); }, n, tail);
            cd rhs = L * (S(n) - S(n - 1) / std::sqrt(q));
            rep.check("spherical-ramified local integral closed form", std::abs(lhs - rhs) + tail);
        }
    }
    params["series_alpha"] = l32;

    // Normalized sums q^{l/2} sum_k a(p^-l)W(a(p^k)) conj(W'(a(p^k))) q^{-ks}.
    json svals = json::array();
    for (int t = 0; t < 4; ++t) {
        const double s = sdist(rng);
        const cd al = unit(ang(rng));
        svals.push_back({{"s", s}, {"alpha", cplx(al)}});
        const double X = std::pow(q, -(1.0 + s));
        auto gen = [&](int l, cd x) {
            double tail = 0.0;
            double ax = std::abs(x);
            cd v = certified_sum([&](int j) { return (j + 1.0) * (j + l + 1.0) * std::pow(x, j); },
                                 [&](int j) { return (j + 1.0) * (j + l + 1.0) * std::pow(ax, j); }, 0, tail);
            return std::pair<cd, double>{v, tail};
        };
        for (int l = 0; l <= 6; ++l) {
            auto [g, tail] = gen(l, X);
            cd closed = (1.0 + X) / std::pow(1.0 - X, 3) + static_cast<double>(l) / std::pow(1.0 - X, 2);
            rep.check("generating sum (1+X)/(1-X)^3 + l/(1-X)^2", std::abs(g - closed) + tail);

            auto [g0, tail0] = gen(0, X);
            cd A = std::pow(q, -l * s) * g / g0;
            cd Acl = std::pow(q, -l * s) * (1.0 + l * (1.0 - X) / (1.0 + X));
            rep.check("A_l(s) from normalized sums", std::abs(A - Acl) + 4.0 * (tail + tail0));
            if (l == 0) rep.check("A_0(s) = 1", std::abs(Acl - 1.0) + std::abs(A - 1.0));

            auto [h, th] = gen(l, al * X);
            auto [h0, th0] = gen(0, al * X);
            cd Ap = std::pow(al, l) * std::pow(q, -l * s) * h / h0;
            cd Apcl = std::pow(al, l) * std::pow(q, -l * s) * (1.0 + static_cast<double>(l) * (1.0 - al * X) / (1.0 + al * X));
            rep.check("A_l'(s) from normalized sums", std::abs(Ap - Apcl) + 4.0 * (th + th0));

            auto Wa = [&](int k) { return k < 0 ? cd(0.0) : std::pow(q, -0.5 * k) * (1.0 - std::pow(al, k + 1)) / (1.0 - al); };
            auto sum_l = [&](int ll) {
                double tl = 0.0;
                cd v = certified_sum([&](int k) { return std::pow(q, 0.5 * ll) * Wa(k - ll) * std::conj(Wa(k)) * std::pow(q, -k * s); },
                                     [&](int k) {
                                         double b = 4.0 / std::pow(std::abs(1.0 - al), 2);
                                         return b * std::pow(q, 0.5 * ll) * std::pow(q, -0.5 * (k - ll)) * std::pow(q, -0.5 * k) *
                                                std::pow(q, -k * s);
                                     },
                                     ll, tl);
                return std::pair<cd, double>{v, tl};
            };
            auto [u, tu] = sum_l(l);
            auto [u0, tu0] = sum_l(0);
            cd Ab = std::conj(al);
            cd App = std::pow(q, -l * s) * (1.0 + Ab * (1.0 - std::pow(Ab, l)) / (1.0 - Ab) * (1.0 - al * X) / (1.0 + X));
            rep.check("A_l''(s) from normalized sums", std::abs(u / u0 - App) + 4.0 * (tu + tu0) / std::abs(u0));
        }
    }
    params["s_alpha"] = svals;
    rep.case_params = params.dump();
    return rep;
}

Report verify_eigenvalues(const FiniteModel& model, uint64_t seed) {
    const long p = model.p();
    const int m = model.m();
    const double q = static_cast<double>(p);
    std::mt19937_64 rng(seed ^ 0x454947ULL);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    Report rep{"eigen", p, m, "", {}};
    json cases = json::array();
    const std::vector<cd> svals{0.0, 0.3, cd(0.0, 0.7)};
    for (cd a0 : {cd(1.0), unit(ang(rng))}) {
        for (cd s : svals) {
            for (int tilde = 0; tilde < 2; ++tilde) {
                cd x1 = std::pow(q, -(0.5 + s)), x2 = std::pow(q, 0.5 + s);
                cd c1 = tilde ? x1 / a0 : x1, c2 = tilde ? x2 : x2 / a0;
                InducedRep R = spherical_rep(model, c1, c2);
                cd expect = tilde ? lambda0_tilde(p, s, a0) : lambda0(p, s, a0);
                const std::string tag = std::string(tilde ? " [tilde lambda_0]" : " [lambda_0]");
                cases.push_back({{"alpha0", cplx(a0)}, {"s", cplx(s)}, {"tilde", tilde == 1}});
                cd lc = R.hecke_eigen_cosets(1);
                cd lb = R.hecke_eigen_bruteforce(1);
                double scale = std::max(1.0, std::abs(expect));
                rep.check("T(1) eigenvalue from cosets" + tag, std::abs(lc - expect) / scale);
                rep.check("T(1) eigenvalue from full average over K" + tag, std::abs(lb - expect) / scale);
                InducedVector e = R.spherical_vector();
                rep.check("T(1) e = lambda e" + tag, sup(R.hecke_T0(1, e), expect * e) / scale);
                std::vector<cd> lam{1.0, lc};
                for (int n = 2; n <= m; ++n)
                    lam.push_back((1.0 + q) / q * (lam[1] * lam[n - 1] - lam[n - 2] / (R.alpha0() * (1.0 + q))));
                for (int n = 2; n <= m; ++n) {
                    double sc = std::max(1.0, std::abs(lam[n]));
                    rep.check(fmt("T(n) eigenvalue: cosets vs recurrence", n) + tag, std::abs(R.hecke_eigen_cosets(n) - lam[n]) / sc);
                    rep.check(fmt("T(n) eigenvalue: full average vs recurrence", n) + tag,
                              std::abs(R.hecke_eigen_bruteforce(n) - lam[n]) / sc);
                }
                if (a0 == 1.0 && s == 0.0 && !tilde)
                    rep.check("alpha0 = 1, s = 0 gives eigenvalue 1", std::abs(lc - 1.0));
            }
        }
    }
    rep.case_params = json{{"seed", seed}, {"cases", cases}}.dump();
    return rep;
}

std::vector<Report> run_suites(const FiniteModel& model, const std::string& suite, uint64_t seed) {
    using Fn = Report (*)(const FiniteModel&, uint64_t);
    const std::vector<std::pair<std::string, Fn>> table{
        {"hecke", verify_hecke_recurrence}, {"adjoint", verify_adjoint},     {"basis", verify_basis_relations},
        {"projection", verify_projection_formulas}, {"eigen", verify_eigenvalues}};
    std::vector<std::future<Report>> jobs;
    bool matched = false;
    for (const auto& [name, fn] : table) {
        if (suite != "all" && suite != name) continue;
        matched = true;
        jobs.push_back(std::async(std::launch::async, fn, std::cref(model), seed));
    }
    if (suite == "all" || suite == "integrals") {
        matched = true;
        jobs.push_back(std::async(std::launch::async, [&model, seed] {
            Report r = verify_local_integrals(model.p(), seed);
            r.m = model.m();
            return r;
        }));
    }
    if (!matched) throw std::invalid_argument("run_suites: unknown suite '" + suite + "'");
    std::vector<Report> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

}  // namespace artifact::padic
