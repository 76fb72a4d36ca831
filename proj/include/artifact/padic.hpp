#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace artifact::padic {

using cd = std::complex<double>;

inline constexpr int kInfiniteValuation = 1 << 28;

// p-adic valuation; kInfiniteValuation for 0.
int vp(const mpz_class& x, long p);
int vp(const mpq_class& x, long p);

// 2x2 matrix over Q.
struct QMat {
    mpq_class a, b, c, d;
    mpq_class det() const;
    QMat operator*(const QMat& o) const;
    bool operator==(const QMat& o) const;
    QMat inverse() const;
    std::string str() const;
};

QMat identity();
QMat a_mat(const mpq_class& y);   // diag(y, 1)
QMat z_mat(const mpq_class& y);   // diag(y, y)
QMat n_upper(const mpq_class& x); // [[1, x], [0, 1]]
QMat n_lower(const mpq_class& x); // [[1, 0], [x, 1]]
QMat weyl();                      // [[0, 1], [1, 0]]
mpq_class ppow(long p, int e);    // p^e, e may be negative

// All entries p-integral and determinant a p-adic unit.
bool in_gl2_zp(const QMat& g, long p);

struct Iwasawa {
    QMat b;  // upper triangular
    QMat k;  // in GL2(Z_p)
};

// g = b k exactly. g in GL2(Z_p) gives (1, g). Otherwise: if v(c) >= v(d),
// k = n_-(c/d); else k = [[0,1],[1,d/c]]. Throws std::invalid_argument if det g = 0.
Iwasawa iwasawa_decompose(const QMat& g, long p);

struct Elem {
    long a, b, c, d;
    bool operator==(const Elem& o) const = default;
};

// Raised when a model's level m cannot host a requested computation.
class LevelError : public std::invalid_argument {
public:
    LevelError(const std::string& what, int required_m)
        : std::invalid_argument(what + " (requires m >= " + std::to_string(required_m) + ")"),
          required_m(required_m) {}
    int required_m;
};

// GL2(Z/p^m) with coset data. Immutable after construction apart from
// lazily filled caches, which are guarded.
class FiniteModel {
public:
    FiniteModel(long p, int m);

    long p() const { return p_; }
    int m() const { return m_; }
    long M() const { return M_; }
    size_t size() const { return elems_.size(); }
    double haar_weight() const { return 1.0 / static_cast<double>(elems_.size()); }

    const std::vector<Elem>& elements() const { return elems_; }
    const Elem& element(size_t i) const { return elems_[i]; }
    // -1 if g is not invertible mod p.
    long index(const Elem& g) const;
    Elem mul(const Elem& g, const Elem& h) const;
    long mul_index(long i, long j) const { return index(mul(elems_[i], elems_[j])); }
    long inv_mod(long u) const { return inv_[((u % M_) + M_) % M_]; }

    // Representatives r of B \ G: [[1,0],[x,1]] for x mod M, then
    // [[0,-1],[1,y]] for y in pZ/M.
    const std::vector<Elem>& reps() const { return reps_; }

    struct Decomp {
        long b11, b22;  // units mod M
        int rep;
    };
    // g = b r with b upper triangular in G.
    Decomp decompose(const Elem& g) const;
    const Decomp& decomposition(size_t i) const { return decomp_[i]; }

    // Indices of the elements of K_0[p^j] (lower-left entry divisible by p^j).
    const std::vector<long>& k0(int j) const;
    static long k0_index(long p, int j);  // (p+1) p^{j-1}, 1 for j = 0
    static double k0_volume(long p, int j) { return 1.0 / static_cast<double>(k0_index(p, j)); }

    long reduce(const mpq_class& x) const;  // p-integral rational mod M
    Elem reduce(const QMat& g) const;
    QMat lift(const Elem& g) const;

    // Expected |GL2(Z/p^m)| = p^{4m}(1 - 1/p)(1 - 1/p^2).
    static long expected_order(long p, int m);

private:
    long p_;
    int m_;
    long M_;
    std::vector<Elem> elems_;
    std::vector<int32_t> index_;
    std::vector<long> inv_;
    std::vector<Elem> reps_;
    std::vector<Decomp> decomp_;
    mutable std::mutex cache_mutex_;
    mutable std::map<int, std::vector<long>> k0_cache_;
};

// Character of Q_p^x: value at p, and a table on (Z/p^c)^x.
struct LocalCharacter {
    long p = 2;
    cd value_at_uniformizer = 1.0;
    int conductor = 0;
    std::vector<cd> unit_table;  // indexed by residue mod p^conductor; 0 at non-units

    static LocalCharacter unramified(long p, cd z);
    // A character of exact conductor c >= 1 that is faithful on (Z/p^c)^x;
    // 'twist' selects e(twist / order) on the chosen generator(s).
    static LocalCharacter ramified(long p, int c, cd z, int twist = 1);

    cd on_unit(long u) const;  // u an integer prime to p
    cd operator()(const mpq_class& x) const;
    LocalCharacter inverse() const;
    bool is_multiplicative(double tol) const;
    bool is_primitive(double tol) const;
    bool unitary(double tol = 1e-12) const;
};

class InducedRep;

// Function on G with f(b k) = chi1(a) chi2(d) f(k) for b = [[a, *], [0, d]].
struct InducedVector {
    const InducedRep* rep = nullptr;
    std::vector<cd> values;  // one per element of the model

    InducedVector& operator+=(const InducedVector& o);
    InducedVector& operator-=(const InducedVector& o);
    InducedVector& operator*=(cd s);
    friend InducedVector operator+(InducedVector a, const InducedVector& b) { return a += b; }
    friend InducedVector operator-(InducedVector a, const InducedVector& b) { return a -= b; }
    friend InducedVector operator*(cd s, InducedVector a) { return a *= s; }
};

// Values at the representatives, in the order of FiniteModel::reps().
using RepCoords = std::vector<cd>;

// pi(chi1, chi2) realized on functions on GL2(Z/p^m).
class InducedRep {
public:
    InducedRep(const FiniteModel& model, LocalCharacter chi1, LocalCharacter chi2);

    const FiniteModel& model() const { return *model_; }
    const LocalCharacter& chi1() const { return chi1_; }
    const LocalCharacter& chi2() const { return chi2_; }
    cd alpha1() const { return chi1_.value_at_uniformizer; }
    cd alpha2() const { return chi2_.value_at_uniformizer; }
    // alpha_0^{-1} = chi1 chi2 (p), the central character at the uniformizer.
    cd alpha0() const { return 1.0 / (alpha1() * alpha2()); }
    int conductor() const { return chi1_.conductor + chi2_.conductor; }
    bool spherical() const { return conductor() == 0; }

    cd factor(const FiniteModel::Decomp& d) const;

    InducedVector zero() const;
    InducedVector extend(const RepCoords& at_reps) const;
    RepCoords coords(const InducedVector& f) const;
    InducedVector random(std::mt19937_64& rng) const;

    // Spherical vector, 1 on K. Throws if ramified.
    InducedVector spherical_vector() const;
    // D_k for pi(chi1, chi2) with chi1 unramified: supported on K_0[p^{c+k}],
    // value Vol(K_0[p^{c+k}])^{-1/2} at 1. Throws LevelError if c + k > m.
    InducedVector D(int k) const;
    // Unitary new vector: spherical vector, or D_0 when chi2 is ramified.
    InducedVector new_vector() const;

    // f(g) for g in GL2(Q) via the Iwasawa decomposition.
    cd eval(const InducedVector& f, const QMat& g) const;
    // Right translation by g in GL2(Q); values at reps use the canonical
    // integer lift, or lift + M * noise when noise is supplied.
    InducedVector translate(const InducedVector& f, const QMat& g, std::mt19937_64* noise = nullptr) const;
    // a(p^{-n}).f for f of level 'level' (right-invariant under K_1[p^level]).
    // Throws LevelError unless m >= |n| + level.
    InducedVector translate_a(const InducedVector& f, int n, int level) const;
    // Right translation by a model element.
    InducedVector act(const InducedVector& f, long elem) const;

    // Haar-weighted sum of f conj(g) over the model.
    cd inner(const InducedVector& f, const InducedVector& g) const;
    // Bilinear pairing with a vector of the contragredient pi(chi1^-1, chi2^-1).
    cd pairing(const InducedVector& f, const InducedVector& g) const;

    // Orthogonal projection onto K_0[p^j]-invariants: average over K_0[p^j].
    InducedVector project_K0(const InducedVector& f, int j) const;
    // Matrix of project_K0 in rep coordinates (row = output rep).
    const std::vector<RepCoords>& projector_matrix(int j) const;

    // T_0(n) = P_K R(a(p^n)) P_K, applied through the coset decomposition of
    // K a(p^n) K / K. Throws LevelError unless m >= n.
    InducedVector hecke_T0(int n, const InducedVector& f) const;
    // Eigenvalue of T_0(n) on the spherical vector from the coset sum.
    cd hecke_eigen_cosets(int n) const;
    // The same eigenvalue as an average of e(k a(p^n)) over all k in the model.
    cd hecke_eigen_bruteforce(int n) const;

    // Largest |f(b k) - chi(b) f(k)| over 'samples' random pairs.
    double equivariance_defect(const InducedVector& f, std::mt19937_64& rng, int samples) const;

    // Dimension of the span of {k.f : k in K}, by closure under generators.
    int k_span_dimension(const InducedVector& f, double tol = 1e-9) const;

private:
    const FiniteModel* model_;
    LocalCharacter chi1_, chi2_;
    std::vector<cd> factor_cache_;  // per element
    mutable std::mutex cache_mutex_;
    mutable std::map<int, std::vector<RepCoords>> proj_cache_;
};

// Upper-triangular coset representatives of K a(p^n) K / K:
// [[p^i, x], [0, p^{n-i}]], x mod p^i, x a unit when 0 < i < n.
std::vector<QMat> hecke_cosets(long p, int n);

// Coefficients a_j^(n), j = 0..floor(n/2), with T(1)^n = sum_j a_j T(n - 2j),
// from T(1)T(k) = q/(1+q) T(k+1) + alpha0^{-1}/(1+q) T(k-1), T(1)T(0) = T(1).
std::vector<cd> hecke_power_coefficients(int n, long q, cd alpha0);

// lambda_0(s), tilde lambda_0(s).
cd lambda0(long q, cd s, cd alpha0);
cd lambda0_tilde(long q, cd s, cd alpha0);

// W(a(p^k)) = q^{-k/2} (a1^{k+1} - a2^{k+1}) / (a1 - a2), (k+1) a^k q^{-k/2}
// when a1 = a2, 0 for k < 0.
cd spherical_whittaker(cd a1, cd a2, long q, int k);

struct IdentityResult {
    std::string name;
    double max_residual;
    bool pass;
};

struct Report {
    std::string suite;
    long p = 0;
    int m = 0;
    std::string case_params;  // JSON object text
    std::vector<IdentityResult> identities;

    void check(const std::string& name, double residual, double tol = 1e-10);
    void check_exact(const std::string& name, long expected, long got);
    void check_true(const std::string& name, bool ok);
    bool pass() const;
    std::string to_json() const;
};

Report verify_hecke_recurrence(const FiniteModel& model, uint64_t seed);
Report verify_adjoint(const FiniteModel& model, uint64_t seed);
Report verify_basis_relations(const FiniteModel& model, uint64_t seed);
Report verify_projection_formulas(const FiniteModel& model, uint64_t seed);
Report verify_local_integrals(long q, uint64_t seed);
// lambda_0 / tilde lambda_0 at s in {0, 0.3, 0.7i} against the finite model.
Report verify_eigenvalues(const FiniteModel& model, uint64_t seed);

// suite: hecke | adjoint | basis | projection | integrals | eigen | all
std::vector<Report> run_suites(const FiniteModel& model, const std::string& suite, uint64_t seed);

}  // namespace artifact::padic
