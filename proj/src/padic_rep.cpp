#include "artifact/padic.hpp"

#include <algorithm>
#include <cmath>

namespace artifact::padic {

InducedVector& InducedVector::operator+=(const InducedVector& o) {
    for (size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}

InducedVector& InducedVector::operator-=(const InducedVector& o) {
    for (size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
}

InducedVector& InducedVector::operator*=(cd s) {
    for (auto& v : values) v *= s;
    return *this;
}

InducedRep::InducedRep(const FiniteModel& model, LocalCharacter chi1, LocalCharacter chi2)
    : model_(&model), chi1_(std::move(chi1)), chi2_(std::move(chi2)) {
    if (chi1_.p != model.p() || chi2_.p != model.p())
        throw std::invalid_argument("InducedRep: character prime differs from the model");
    int need = std::max(chi1_.conductor, chi2_.conductor);
    if (need > model.m()) throw LevelError("InducedRep: conductor exceeds model level", need);
    factor_cache_.reserve(model.size());
    for (size_t i = 0; i < model.size(); ++i) factor_cache_.push_back(factor(model.decomposition(i)));
}

cd InducedRep::factor(const FiniteModel::Decomp& d) const { return chi1_.on_unit(d.b11) * chi2_.on_unit(d.b22); }

InducedVector InducedRep::zero() const { return {this, std::vector<cd>(model_->size(), 0.0)}; }

InducedVector InducedRep::extend(const RepCoords& at_reps) const {
    if (at_reps.size() != model_->reps().size()) throw std::invalid_argument("InducedRep::extend: wrong coordinate count");
    InducedVector f{this, std::vector<cd>(model_->size())};
    for (size_t i = 0; i < f.values.size(); ++i) f.values[i] = factor_cache_[i] * at_reps[model_->decomposition(i).rep];
    return f;
}

RepCoords InducedRep::coords(const InducedVector& f) const {
    RepCoords out;
    out.reserve(model_->reps().size());
    for (const auto& r : model_->reps()) out.push_back(f.values[model_->index(r)]);
    return out;
}

InducedVector InducedRep::random(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RepCoords rc(model_->reps().size());
    for (auto& v : rc) {
        double re = u(rng);
        v = cd(re, u(rng));
    }
    return extend(rc);
}

InducedVector InducedRep::spherical_vector() const {
    if (!spherical()) throw std::invalid_argument("spherical_vector: representation is ramified");
    return extend(RepCoords(model_->reps().size(), 1.0));
}

InducedVector InducedRep::D(int k) const {
    if (chi1_.conductor != 0) throw std::invalid_argument("D_k: first character must be unramified");
    if (k < 0) throw std::invalid_argument("D_k: k must be nonnegative");
    int j = chi2_.conductor + k;
    if (j > model_->m()) throw LevelError("D_k: support level too fine", j);
    if (j == 0) return spherical_vector();
    const long M = model_->M();
    long pj = 1;
    for (int i = 0; i < j; ++i) pj *= model_->p();
    double value = std::sqrt(static_cast<double>(FiniteModel::k0_index(model_->p(), j)));
    RepCoords rc(model_->reps().size(), 0.0);
    for (long x = 0; x < M; ++x)
        if (x % pj == 0) rc[x] = value;
    return extend(rc);
}

InducedVector InducedRep::new_vector() const { return spherical() ? spherical_vector() : D(0); }

cd InducedRep::eval(const InducedVector& f, const QMat& g) const {
    const long p = model_->p();
    Iwasawa iw = iwasawa_decompose(g, p);
    int v11 = vp(iw.b.a, p), v22 = vp(iw.b.d, p);
    double modulus = std::pow(static_cast<double>(p), -0.5 * (v11 - v22));
    long idx = model_->index(model_->reduce(iw.k));
    return chi1_(iw.b.a) * chi2_(iw.b.d) * modulus * f.values[idx];
}

InducedVector InducedRep::translate(const InducedVector& f, const QMat& g, std::mt19937_64* noise) const {
    const auto& reps = model_->reps();
    RepCoords rc(reps.size());
    std::uniform_int_distribution<long> shift(-2, 2);
    const long M = model_->M();
    for (size_t i = 0; i < reps.size(); ++i) {
        QMat r = model_->lift(reps[i]);
        if (noise) {
            r.a += M * shift(*noise);
            r.b += M * shift(*noise);
            r.c += M * shift(*noise);
            r.d += M * shift(*noise);
        }
        rc[i] = eval(f, r * g);
    }
    return extend(rc);
}

InducedVector InducedRep::translate_a(const InducedVector& f, int n, int level) const {
    int need = std::abs(n) + level;
    if (need > model_->m()) throw LevelError("translate_a: model too coarse for a(p^" + std::to_string(-n) + ")", need);
    return translate(f, a_mat(ppow(model_->p(), -n)));
}

InducedVector InducedRep::act(const InducedVector& f, long elem) const {
    InducedVector out{this, std::vector<cd>(f.values.size())};
    for (size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = f.values[model_->mul_index(static_cast<long>(i), elem)];
    return out;
}

cd InducedRep::inner(const InducedVector& f, const InducedVector& g) const {
    cd acc = 0.0;
    for (size_t i = 0; i < f.values.size(); ++i) acc += f.values[i] * std::conj(g.values[i]);
    return acc * model_->haar_weight();
}

cd InducedRep::pairing(const InducedVector& f, const InducedVector& g) const {
    cd acc = 0.0;
    for (size_t i = 0; i < f.values.size(); ++i) acc += f.values[i] * g.values[i];
    return acc * model_->haar_weight();
}

const std::vector<RepCoords>& InducedRep::projector_matrix(int j) const {
    const auto& H = model_->k0(j);
    std::lock_guard lock(cache_mutex_);
    auto it = proj_cache_.find(j);
    if (it != proj_cache_.end()) return it->second;
    const auto& reps = model_->reps();
    std::vector<RepCoords> P(reps.size(), RepCoords(reps.size(), 0.0));
    const double w = 1.0 / static_cast<double>(H.size());
    for (size_t r = 0; r < reps.size(); ++r) {
        long ri = model_->index(reps[r]);
        for (long h : H) {
            long e = model_->mul_index(ri, h);
            const auto& d = model_->decomposition(static_cast<size_t>(e));
            P[r][d.rep] += factor_cache_[e] * w;
        }
    }
    return proj_cache_.emplace(j, std::move(P)).first->second;
}

InducedVector InducedRep::project_K0(const InducedVector& f, int j) const {
    const auto& P = projector_matrix(j);
    RepCoords c = coords(f), out(c.size(), 0.0);
    for (size_t r = 0; r < c.size(); ++r)
        for (size_t t = 0; t < c.size(); ++t) out[r] += P[r][t] * c[t];
    return extend(out);
}

InducedVector InducedRep::hecke_T0(int n, const InducedVector& f) const {
    if (n < 0) throw std::invalid_argument("hecke_T0: n must be nonnegative");
    if (n > model_->m()) throw LevelError("hecke_T0: model too coarse", n);
    if (!spherical()) return zero();
    InducedVector e = spherical_vector();
    cd mean = inner(f, e);
    auto cosets = hecke_cosets(model_->p(), n);
    const auto& reps = model_->reps();
    RepCoords rc(reps.size());
    for (size_t i = 0; i < reps.size(); ++i) {
        QMat r = model_->lift(reps[i]);
        cd acc = 0.0;
        for (const auto& h : cosets) acc += eval(e, r * h);
        rc[i] = mean * acc / static_cast<double>(cosets.size());
    }
    return extend(rc);
}

cd InducedRep::hecke_eigen_cosets(int n) const {
    InducedVector e = spherical_vector();
    auto cosets = hecke_cosets(model_->p(), n);
    cd acc = 0.0;
    for (const auto& h : cosets) acc += eval(e, h);
    return acc / static_cast<double>(cosets.size());
}

cd InducedRep::hecke_eigen_bruteforce(int n) const {
    if (!spherical()) throw std::invalid_argument("hecke_eigen_bruteforce: representation is ramified");
    if (n < 0 || n > model_->m()) throw LevelError("hecke_eigen_bruteforce: model too coarse", n);
    // k a(p^n) has bottom row (c p^n, d); its Iwasawa factor has
    // v(b22) = min(n + v(c), v(d)) and v(b11) = n - v(b22).
    const long p = model_->p();
    const double q = static_cast<double>(p);
    std::vector<cd> by_v(static_cast<size_t>(n) + 1);
    for (int v = 0; v <= n; ++v) {
        int v11 = n - v;
        by_v[v] = std::pow(alpha1(), v11) * std::pow(alpha2(), v) * std::pow(q, -0.5 * (v11 - v));
    }
    auto val = [p](long x) {
        if (x == 0) return kInfiniteValuation;
        int v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return v;
    };
    std::vector<long> count(static_cast<size_t>(n) + 1, 0);
    for (const auto& k : model_->elements()) {
        int vc = val(k.c);
        int v = std::min(vc == kInfiniteValuation ? kInfiniteValuation : n + vc, val(k.d));
        ++count[std::min(v, n)];
    }
    cd acc = 0.0;
    for (int v = 0; v <= n; ++v) acc += static_cast<double>(count[v]) * by_v[v];
    return acc * model_->haar_weight();
}

double InducedRep::equivariance_defect(const InducedVector& f, std::mt19937_64& rng, int samples) const {
    const long M = model_->M(), p = model_->p();
    std::uniform_int_distribution<long> any(0, M - 1);
    std::uniform_int_distribution<long> pick(0, static_cast<long>(model_->size()) - 1);
    auto unit = [&] {
        long u;
        do u = any(rng); while (u % p == 0);
        return u;
    };
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        long a = unit(), d = unit(), x = any(rng);
        long k = pick(rng);
        Elem b{a, x, 0, d};
        long g = model_->index(model_->mul(b, model_->element(static_cast<size_t>(k))));
        cd expect = chi1_.on_unit(a) * chi2_.on_unit(d) * f.values[k];
        worst = std::max(worst, std::abs(f.values[g] - expect));
    }
    return worst;
}

namespace {

std::vector<long> unit_group_generators(long p, long M) {
    if (p == 2) {
        if (M == 2) return {};
        if (M == 4) return {3};
        return {M - 1, 5};
    }
    long phi = M / p * (p - 1);
    for (long g = 2; g < M; ++g) {
        if (g % p == 0) continue;
        long x = 1, order = 0;
        do {
            x = x * g % M;
            ++order;
        } while (x != 1);
        if (order == phi) return {g};
    }
    return {};
}

}  // namespace

int InducedRep::k_span_dimension(const InducedVector& f, double tol) const {
    const long M = model_->M();
    std::vector<Elem> gens{{1, 1, 0, 1}, {1, 0, 1, 1}};
    for (long u : unit_group_generators(model_->p(), M)) gens.push_back({u, 0, 0, 1});

    const auto& reps = model_->reps();
    const size_t R = reps.size();
    // Action of each generator in rep coordinates: (k.v)(r) = factor * v(rep(r k)).
    struct Step {
        cd factor;
        int target;
    };
    std::vector<std::vector<Step>> action;
    for (const auto& g : gens) {
        std::vector<Step> st;
        for (const auto& r : reps) {
            long e = model_->index(model_->mul(r, g));
            st.push_back({factor_cache_[e], model_->decomposition(static_cast<size_t>(e)).rep});
        }
        action.push_back(std::move(st));
    }

    auto norm = [](const RepCoords& v) {
        double s = 0.0;
        for (const auto& x : v) s += std::norm(x);
        return std::sqrt(s / static_cast<double>(v.size()));
    };
    auto dot = [](const RepCoords& a, const RepCoords& b) {
        cd s = 0.0;
        for (size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
        return s / static_cast<double>(a.size());
    };

    std::vector<RepCoords> basis;
    auto absorb = [&](RepCoords w) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& e : basis) {
                cd c = dot(w, e);
                for (size_t i = 0; i < R; ++i) w[i] -= c * e[i];
            }
        double nw = norm(w);
        if (nw <= tol) return false;
        for (auto& x : w) x /= nw;
        basis.push_back(std::move(w));
        return true;
    };

    RepCoords start = coords(f);
    double n0 = norm(start);
    if (n0 <= tol) return 0;
    for (auto& x : start) x /= n0;
    absorb(std::move(start));
    for (size_t next = 0; next < basis.size(); ++next) {
        for (const auto& st : action) {
            RepCoords w(R);
            for (size_t r = 0; r < R; ++r) w[r] = st[r].factor * basis[next][st[r].target];
            absorb(std::move(w));
        }
    }
    return static_cast<int>(basis.size());
}

std::vector<QMat> hecke_cosets(long p, int n) {
    if (n < 0) throw std::invalid_argument("hecke_cosets: n must be nonnegative");
    std::vector<QMat> out;
    for (int i = 0; i <= n; ++i) {
        long pi = 1;
        for (int t = 0; t < i; ++t) pi *= p;
        for (long x = 0; x < pi; ++x) {
            if (i > 0 && i < n && x % p == 0) continue;
            out.push_back(QMat{ppow(p, i), x, 0, ppow(p, n - i)});
        }
    }
    return out;
}

std::vector<cd> hecke_power_coefficients(int n, long q, cd alpha0) {
    if (n < 0) throw std::invalid_argument("hecke_power_coefficients: n must be nonnegative");
    const double qd = static_cast<double>(q);
    std::vector<cd> t(static_cast<size_t>(n) + 1, 0.0);  // coefficient of T(k)
    t[0] = 1.0;
    for (int step = 0; step < n; ++step) {
        std::vector<cd> u(t.size(), 0.0);
        for (size_t k = 0; k < t.size(); ++k) {
            if (t[k] == 0.0) continue;
            if (k == 0) {
                u[1] += t[0];
                continue;
            }
            if (k + 1 < u.size()) u[k + 1] += t[k] * qd / (1.0 + qd);
            u[k - 1] += t[k] / alpha0 / (1.0 + qd);
        }
        t = std::move(u);
    }
    std::vector<cd> out;
    for (int j = 0; 2 * j <= n; ++j) out.push_back(t[n - 2 * j]);
    return out;
}

cd lambda0(long q, cd s, cd alpha0) {
    const double qd = static_cast<double>(q);
    return std::pow(qd, -0.5) / (1.0 + 1.0 / qd) * (std::pow(qd, -(0.5 + s)) + std::pow(qd, 0.5 + s) / alpha0);
}

cd lambda0_tilde(long q, cd s, cd alpha0) {
    const double qd = static_cast<double>(q);
    return std::pow(qd, -0.5) / (1.0 + 1.0 / qd) * (std::pow(qd, -(0.5 + s)) / alpha0 + std::pow(qd, 0.5 + s));
}

cd spherical_whittaker(cd a1, cd a2, long q, int k) {
    if (k < 0) return 0.0;
    const double scale = std::pow(static_cast<double>(q), -0.5 * k);
    if (a1 == a2) return static_cast<double>(k + 1) * std::pow(a1, k) * scale;
    return (std::pow(a1, k + 1) - std::pow(a2, k + 1)) / (a1 - a2) * scale;
}

}  // namespace artifact::padic
