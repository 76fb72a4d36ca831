#include "artifact/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "artifact/kloosterman.hpp"
#include "artifact/padic.hpp"
#include "artifact/partition.hpp"
#include "artifact/special.hpp"

namespace artifact {

std::optional<long> env_precision() {
    static const std::optional<long> value = []() -> std::optional<long> {
        const char* s = std::getenv(kPrecisionEnv);
        if (s == nullptr || *s == '\0') return std::nullopt;
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (*end != '\0' || v < 64)
            throw std::invalid_argument(std::string(kPrecisionEnv) + " must be an integer >= 64");
        return v;
    }();
    return value;
}

namespace {

// Verification failure: reported with exit code 1.
struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double x, const char* f = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string rad(double x) { return num(x, "%.6e"); }

struct RunConfig {
    long prec = 0;  // 0: module default
    double alpha = 1.0;
    std::string out;
    uint64_t seed = 1;
};

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(int argc, const char* const* argv);

private:
    mpfr_prec_t precision(mpfr_prec_t fallback) const {
        if (cfg_.prec != 0) return cfg_.prec;
        if (auto e = env_precision()) return *e;
        return fallback;
    }

    // Writes text to --out, or to stdout when no path is set.
    void emit(const std::string& text) {
        if (cfg_.out.empty() || cfg_.out == "-") {
            out_ << text;
            return;
        }
        std::ofstream f(cfg_.out, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open output file " + cfg_.out);
        f << text;
        if (!f) throw std::runtime_error("write failed: " + cfg_.out);
    }

    void partition_exact();
    void partition_hrr();
    void partition_scan();
    void kloosterman_A();
    void kloosterman_sweep();
    void kloosterman_partial();
    void special_xi();
    void special_bessel();
    void padic_verify();

    std::ostream& out_;
    std::ostream& err_;
    RunConfig cfg_;

    long n_ = 0, c_ = 0, X_ = 0;
    std::optional<long> terms_;
    long scan_min_ = 0, scan_max_ = 0, scan_step_ = 1;
    bool geometric_ = false;
    long cmax_ = 0, nmax_ = 0;
    double x_ = 0.0, s_im_ = 0.0;
    std::string route_ = "both";
    long p_ = 0;
    int m_ = 0;
    std::string suite_ = "all";
};

void Runner::partition_exact() { out_ << partition_oracle(n_).get_str() << "\n"; }

void Runner::partition_hrr() {
    std::optional<mpfr_prec_t> prec;
    if (cfg_.prec != 0 || env_precision()) prec = precision(0);
    HrrResult r = hrr_exact(n_, terms_, prec);
    std::string oracle = "unavailable";
    bool ok = true;
    if (n_ <= kOracleCapacity) {
        ok = partition_oracle(n_) == r.value;
        oracle = ok ? "match" : "mismatch";
    }
    out_ << "n=" << n_ << "\nN=" << r.N << "\nprec_bits=" << r.prec << "\nvalue=" << r.value.get_str()
         << "\npartial_mid=" << r.partial.mid_str(30) << "\npartial_rad=" << rad(r.partial.rad_d())
         << "\ntail=" << rad(r.tail) << "\noracle=" << oracle << "\n";
    if (!ok) throw VerificationFailure("HRR value disagrees with the pentagonal oracle");
}

void Runner::partition_scan() {
    if (scan_min_ < 1 || scan_max_ < scan_min_) throw std::invalid_argument("scan: need 1 <= --min <= --max");
    std::vector<long> ns;
    if (geometric_) {
        for (long n = scan_min_; n <= scan_max_; n *= 2) ns.push_back(n);
    } else {
        if (scan_step_ < 1) throw std::invalid_argument("scan: --step must be positive");
        for (long n = scan_min_; n <= scan_max_; n += scan_step_) ns.push_back(n);
    }
    ScanResult r = error_exponent_scan(ns, cfg_.alpha);
    emit(scan_csv(r, cfg_.alpha));
    std::ostream& summary = cfg_.out.empty() || cfg_.out == "-" ? err_ : out_;
    summary << "slope=" << num(r.slope) << "\nintercept=" << num(r.intercept) << "\n";
    for (long n : r.excluded) summary << "excluded n=" << n << " (remainder not separated from 0)\n";
}

namespace {

struct ARow {
    long c, n;
    Ball values[3];
    bool imag_ok = true;
    std::string note;
};

const char* const kRoutes[3] = {"definition", "dedekind", "closed_form"};

ARow a_row(long c, long n, mpfr_prec_t prec) {
    ARow row{c, n, {Ball(prec), Ball(prec), Ball(prec)}, true, {}};
    try {
        row.values[0] = rademacher_A(c, n, prec);
    } catch (const std::logic_error& e) {
        row.imag_ok = false;
        row.note = e.what();
    }
    row.values[1] = dedekind_form_A(c, n, prec);
    row.values[2] = selberg_whiteman_A(c, n, prec);
    return row;
}

bool a_agree(const ARow& r) {
    if (!r.imag_ok) return false;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!(std::fabs(r.values[i].mid_d() - r.values[j].mid_d()) < 1e-9)) return false;
    return true;
}

void a_csv(std::ostream& os, const ARow& r) {
    for (int i = 0; i < 3; ++i) {
        if (i == 0 && !r.imag_ok) continue;
        os << r.c << ',' << r.n << ',' << num(r.values[i].mid_d()) << ',' << rad(r.values[i].rad_d()) << ','
           << kRoutes[i] << '\n';
    }
}

}  // namespace

void Runner::kloosterman_A() {
    if (c_ < 1) throw std::invalid_argument("kloosterman A: c must be positive");
    ARow r = a_row(c_, n_, precision(128));
    std::ostringstream os;
    os << "c,n,A_mid,A_rad,route\n";
    a_csv(os, r);
    emit(os.str());
    if (!a_agree(r)) throw VerificationFailure("A_c(n) routes disagree" + (r.note.empty() ? "" : ": " + r.note));
}

void Runner::kloosterman_sweep() {
    if (cmax_ < 1 || nmax_ < 0) throw std::invalid_argument("sweep: need --cmax >= 1 and --nmax >= 0");
    const mpfr_prec_t prec = precision(128);
    std::vector<std::future<std::vector<ARow>>> jobs;
    for (long c = 1; c <= cmax_; ++c)
        jobs.push_back(std::async(std::launch::async, [c, prec, this] {
            std::vector<ARow> rows;
            for (long n = -nmax_; n <= nmax_; ++n) rows.push_back(a_row(c, n, prec));
            return rows;
        }));
    std::ostringstream os;
    os << "c,n,A_mid,A_rad,route\n";
    long bad = 0;
    for (auto& j : jobs)
        for (const ARow& r : j.get()) {
            a_csv(os, r);
            if (!a_agree(r)) ++bad;
        }
    emit(os.str());
    if (bad > 0) throw VerificationFailure(std::to_string(bad) + " (c, n) pairs with disagreeing routes");
}

void Runner::kloosterman_partial() {
    if (X_ < 1) throw std::invalid_argument("partial-sum: X must be positive");
    std::vector<PartialSumRow> rows;
    kloosterman_partial_sum(n_, X_, &rows);
    std::ostringstream os;
    os << "X,re_mid,im_mid,rad\n";
    for (const auto& r : rows)
        os << r.X << ',' << num(r.value.mid.real()) << ',' << num(r.value.mid.imag()) << ',' << rad(r.value.rad)
           << '\n';
    emit(os.str());
}

void Runner::special_xi() {
    int prec = static_cast<int>(precision(64));
    XiQuery q{x_, s_im_, prec};
    std::ostringstream os;
    os << "x,s_im,route,re_mid,im_mid,rad\n";
    auto row = [&](const char* route, const CDValue& v) {
        os << num(x_) << ',' << num(s_im_) << ',' << route << ',' << num(v.mid.real()) << ',' << num(v.mid.imag())
           << ',' << rad(v.rad) << '\n';
    };
    std::optional<CDValue> closed, quad;
    if (route_ == "closed" || route_ == "both") row("closed", *(closed = xi_closed_form(q)));
    if (route_ == "quad" || route_ == "both") row("quad", *(quad = xi_quadrature(q).value));
    emit(os.str());
    if (quad && !quad->converged) throw VerificationFailure("regulated quadrature did not converge");
    if (closed && quad) {
        double rel = std::abs(closed->mid - quad->mid) / std::abs(closed->mid);
        if (!(rel < 1e-3)) throw VerificationFailure("closed form and quadrature differ, relative error " + rad(rel));
    }
}

void Runner::special_bessel() {
    Ball v = bessel_I_3_2(x_, precision(128));
    out_ << "x=" << num(x_) << "\nvalue=" << v.mid_str(30) << "\nrad=" << rad(v.rad_d()) << "\n";
}

void Runner::padic_verify() {
    padic::FiniteModel model(p_, m_);
    std::vector<padic::Report> reports = padic::run_suites(model, suite_, cfg_.seed);
    nlohmann::json all = nlohmann::json::array();
    bool ok = true;
    for (const auto& r : reports) {
        all.push_back(nlohmann::json::parse(r.to_json()));
        double worst = 0.0;
        for (const auto& id : r.identities) worst = std::max(worst, id.max_residual);
        out_ << "suite=" << r.suite << " identities=" << r.identities.size() << " max_residual=" << rad(worst)
             << (r.pass() ? " pass" : " FAIL") << "\n";
        for (const auto& id : r.identities)
            if (!id.pass) out_ << "  failed: " << id.name << " residual=" << rad(id.max_residual) << "\n";
        ok = ok && r.pass();
    }
    if (!cfg_.out.empty() && cfg_.out != "-") emit(all.dump(2) + "\n");
    if (!ok) throw VerificationFailure("p-adic identity suite failed");
}

int Runner::run(int argc, const char* const* argv) {
    CLI::App app{"Partition, Kloosterman, special-function and p-adic experiments"};
    app.name("artifact_cli");
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key=value file; explicit flags take precedence");
    app.add_option("--prec", cfg_.prec, "Working precision in bits (>= 64)")->check(CLI::Range(64L, 1L << 24));
    app.add_option("--seed", cfg_.seed, "Seed for randomized verification vectors");
    app.add_option("--alpha", cfg_.alpha, "Scan truncation N = ceil(alpha sqrt n)")->check(CLI::PositiveNumber);
    app.add_option("--out", cfg_.out, "Output file (CSV or JSON); stdout when omitted");

    auto* part = app.add_subcommand("partition", "Partition function p(n)");
    part->require_subcommand(1);
    auto* exact = part->add_subcommand("exact", "p(n) from the pentagonal recurrence");
    exact->add_option("n", n_)->required();
    auto* hrr = part->add_subcommand("hrr", "Certified p(n) from the Rademacher series");
    hrr->add_option("n", n_)->required();
    hrr->add_option("--terms", terms_, "Number of series terms N");
    auto* scan = part->add_subcommand("scan", "Truncation error R(n, alpha sqrt n) against n");
    scan->add_option("--min", scan_min_)->required();
    scan->add_option("--max", scan_max_)->required();
    scan->add_flag("--geometric", geometric_, "n = min, 2 min, 4 min, ...");
    scan->add_option("--step", scan_step_, "Step for the arithmetic progression");

    auto* kl = app.add_subcommand("kloosterman", "Kloosterman sums and A_c(n)");
    kl->require_subcommand(1);
    auto* ka = kl->add_subcommand("A", "A_c(n) by three routes");
    ka->add_option("c", c_)->required();
    ka->add_option("n", n_)->required()->allow_extra_args(false);
    auto* sweep = kl->add_subcommand("sweep", "A_c(n) table for c <= cmax, |n| <= nmax");
    sweep->add_option("--cmax", cmax_)->required();
    sweep->add_option("--nmax", nmax_)->required();
    auto* ps = kl->add_subcommand("partial-sum", "Running sums of S(1, n, c) / c");
    ps->add_option("n", n_)->required();
    ps->add_option("X", X_)->required();

    auto* sp = app.add_subcommand("special", "Archimedean special functions");
    sp->require_subcommand(1);
    auto* xi = sp->add_subcommand("xi", "xi at s = i s_im");
    xi->add_option("--x", x_)->required();
    xi->add_option("--s-im", s_im_)->required();
    xi->add_option("--route", route_)->check(CLI::IsMember({"closed", "quad", "both"}));
    auto* bes = sp->add_subcommand("bessel", "I_{3/2}(x)");
    bes->add_option("x", x_)->required()->check(CLI::PositiveNumber);

    auto* pa = app.add_subcommand("padic", "Finite-model identity suites");
    pa->require_subcommand(1);
    auto* ver = pa->add_subcommand("verify", "Run identity suites on GL2(Z/p^m)");
    ver->add_option("--p", p_)->required();
    ver->add_option("--m", m_)->required();
    ver->add_option("--suite", suite_)->check(
        CLI::IsMember({"hecke", "adjoint", "basis", "projection", "integrals", "eigen", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out_, err_);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
        err_ << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        env_precision();
        if (exact->parsed()) partition_exact();
        else if (hrr->parsed()) partition_hrr();
        else if (scan->parsed()) partition_scan();
        else if (ka->parsed()) kloosterman_A();
        else if (sweep->parsed()) kloosterman_sweep();
        else if (ps->parsed()) kloosterman_partial();
        else if (xi->parsed()) special_xi();
        else if (bes->parsed()) special_bessel();
        else if (ver->parsed()) padic_verify();
    } catch (const VerificationFailure& e) {
        err_ << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err_ << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        err_ << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err_ << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err_ << "verification failed: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Runner r(out, err);
    return r.run(argc, argv);
}

}  // namespace artifact
