// orthomat: command-line front end. Every subcommand writes one JSON (or CSV)
// document. Exit codes: 0 ok, 1 input error, 2 precondition failure,
// 3 verification failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orthomat/connect.hpp"
#include "orthomat/io.hpp"
#include "orthomat/linearize.hpp"
#include "orthomat/polysys.hpp"
#include "orthomat/qkernel.hpp"
#include "orthomat/recurrence.hpp"

using namespace orthomat;
using io::Json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_precondition = 2;
constexpr int exit_verification = 3;

struct RunConfig {
    std::string mode = "float";
    double tol = 1e-10;
    std::string format = "json";
    std::uint64_t seed = 0;
    std::string out;
};

struct DecomposeArgs {
    std::string source;
    std::size_t n = 0;
    bool diagnostics = false;
    bool carleman = false;
    std::vector<double> points{0.0, 0.5};
    double diag_tol = 1e-8;
};

struct RecurrenceArgs {
    std::string source;
    std::optional<std::size_t> moments;
    std::optional<std::size_t> eta;
    std::optional<std::size_t> tau;
    std::optional<std::size_t> verify;
    std::size_t draws = 50;
};

struct ConnectArgs {
    std::string alpha;
    std::string delta;
    std::size_t n = 0;
    std::string basis = "orthonormal";
    std::optional<std::size_t> rn;
    std::optional<std::size_t> ribbon;
    std::optional<double> integral;
    bool builtin_pair = false;
};

struct LinearizeArgs {
    std::string source;
    std::size_t n = 0;
    std::size_t m = 0;
    std::string basis = "orthonormal";
    bool closed_forms = false;
};

struct PmArgs {
    std::string q;
    std::string rho;
    std::string grid;
    double tol = 1e-12;
    double max_error = 1e-8;
};

void emit(const Json& doc, const RunConfig& cfg)
{
    const std::string text = cfg.format == "csv" ? io::to_csv(doc) : doc.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        io::write_text(cfg.out, text);
    }
}

double parse_real(const std::string& s, const char* what)
{
    return io::parse_scalar<double>(Json(s), what);
}

std::vector<double> parse_grid(const std::string& spec)
{
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(item, "grid"));
    if (out.empty()) throw InputError("empty grid");
    return out;
}

Json diagnostic_lines(const std::vector<DiagnosticLine>& lines)
{
    Json arr = Json::array();
    for (const auto& l : lines) {
        Json j;
        j["name"] = l.name;
        j["lhs"] = l.lhs;
        j["rhs"] = l.rhs;
        j["pass"] = l.pass;
        j["informative"] = l.informative;
        arr.push_back(std::move(j));
    }
    return arr;
}

template <class K>
MomentSequence<K> require_moments(const std::string& source, std::size_t count)
{
    MomentSequence<K> m = io::load_moments<K>(source, count);
    if (m.size() < count) {
        throw PreconditionError(source + ": " + std::to_string(count) + " moments needed, " +
                                std::to_string(m.size()) + " available");
    }
    return m;
}

template <class K>
int run_decompose(const RunConfig& cfg, const DecomposeArgs& args)
{
    const auto m = require_moments<K>(args.source, 2 * args.n + 1);
    const auto sys = build_system(m, args.n);

    std::vector<Root<K>> a;
    for (std::size_t i = 0; i <= args.n; ++i) a.push_back(sys.rec.a(i));

    Json doc;
    doc["L"] = io::encode(sys.L);
    doc["Pi"] = io::encode(sys.Pi);
    doc["Lambda"] = io::encode(sys.Lambda);
    doc["Delta"] = io::encode(sys.hankel.deltas);
    doc["a"] = io::encode(a);
    doc["b"] = io::encode(sys.rec.b_values());

    int code = exit_ok;
    if (args.carleman) {
        const CarlemanReport c = carleman_diagnostic(m);
        doc["carleman"] = {{"partial_sums", c.partial_sums}, {"caveat", c.caveat}};
    }
    if (args.diagnostics) {
        const auto d = diagnostics(sys, args.points, args.diag_tol);
        doc["diagnostics"] = {{"eigenvalues", d.eigenvalues},
                              {"eigen_residual", d.eigen_residual},
                              {"lines", diagnostic_lines(d.lines)},
                              {"pass", d.ok()}};
        if (!d.ok()) code = exit_verification;
    }
    emit(doc, cfg);
    return code;
}

template <class K>
RecurrenceCoefficients<K> random_recurrence(std::mt19937_64& rng, std::size_t count)
{
    std::uniform_int_distribution<int> num_pos(1, 20);
    std::uniform_int_distribution<int> num_any(-20, 20);
    std::uniform_int_distribution<int> den(1, 12);
    std::vector<K> a2;
    std::vector<K> b;
    for (std::size_t i = 0; i < count; ++i) {
        Rational x(num_pos(rng), den(rng));
        x.canonicalize();
        a2.push_back(FieldTraits<K>::from_rational(x));
        Rational y(num_any(rng), den(rng));
        y.canonicalize();
        b.push_back(FieldTraits<K>::from_rational(y));
    }
    return RecurrenceCoefficients<K>(std::move(a2), std::move(b));
}

template <class K>
int run_verify_closed_forms(const RunConfig& cfg, const RecurrenceArgs& args, std::size_t n)
{
    std::vector<RecurrenceCoefficients<K>> draws;
    if (!args.source.empty()) {
        draws.push_back(io::load_recurrence<K>(args.source, 2 * n + 4));
    } else {
        std::mt19937_64 rng(cfg.seed);
        for (std::size_t d = 0; d < args.draws; ++d) draws.push_back(random_recurrence<K>(rng, 2 * n + 4));
    }

    std::vector<IdentityCheck> merged;
    for (std::size_t d = 0; d < draws.size(); ++d) {
        const ClosedFormReport rep = verify_closed_forms(draws[d], n, cfg.tol);
        if (merged.empty()) {
            merged = rep.checks;
            for (auto& c : merged) {
                if (!c.pass) c.first_mismatch = "draw 0: " + c.first_mismatch;
            }
            continue;
        }
        for (std::size_t i = 0; i < merged.size(); ++i) {
            const IdentityCheck& c = rep.checks[i];
            merged[i].entries_checked += c.entries_checked;
            if (merged[i].pass && !c.pass) {
                merged[i].pass = false;
                merged[i].first_mismatch = "draw " + std::to_string(d) + ": " + c.first_mismatch;
            }
        }
    }

    bool ok = true;
    Json checks = Json::array();
    for (const auto& c : merged) {
        if (c.required && !c.pass) ok = false;
        Json j;
        j["name"] = c.name;
        j["status"] = c.pass ? "PASS" : "FAIL";
        j["required"] = c.required;
        j["entries_checked"] = c.entries_checked;
        if (!c.pass) j["first_mismatch"] = c.first_mismatch;
        checks.push_back(std::move(j));
    }
    Json doc;
    doc["n"] = n;
    doc["source"] = args.source.empty() ? "random" : args.source;
    if (args.source.empty()) doc["seed"] = cfg.seed;
    doc["draws"] = draws.size();
    doc["checks"] = std::move(checks);
    doc["ok"] = ok;
    emit(doc, cfg);
    return ok ? exit_ok : exit_verification;
}

template <class K>
int run_recurrence(const RunConfig& cfg, const RecurrenceArgs& args)
{
    if (args.verify) return run_verify_closed_forms<K>(cfg, args, *args.verify);
    if (args.source.empty()) throw InputError("recurrence: a rec file or builtin spec is required");

    Json doc;
    if (args.moments) {
        const std::size_t k = *args.moments;
        const auto rec = io::load_recurrence<K>(args.source, k + 1);
        doc["moments"] = io::encode(moments_from_recurrence(rec, k).values());
    } else if (args.eta) {
        const auto rec = io::load_recurrence<K>(args.source, *args.eta + 1);
        doc["eta"] = io::encode(eta_table(rec, *args.eta));
    } else {
        const auto rec = io::load_recurrence<K>(args.source, *args.tau + 1);
        doc["tau"] = io::encode(tau_table(rec, *args.tau));
    }
    emit(doc, cfg);
    return exit_ok;
}

template <class K>
int run_connect(const RunConfig& cfg, ConnectArgs args)
{
    const Basis basis = parse_basis(args.basis);
    const std::size_t n = args.n;
    const std::size_t big = std::max(n, args.rn.value_or(0));

    std::optional<MomentSequence<K>> alpha;
    std::optional<MomentSequence<K>> delta;
    if (args.builtin_pair) {
        if (!args.alpha.empty() || !args.delta.empty()) {
            throw InputError("connect: --builtin-pair replaces the two moment sources");
        }
        RibbonPair<K> pair = builtin_ribbon_pair<K>(big);
        alpha = pair.alpha;
        delta = pair.delta;
        if (!args.ribbon) args.ribbon = pair.r;
    } else {
        if (args.alpha.empty() || args.delta.empty()) {
            throw InputError("connect: two moment sources (alpha, delta) are required");
        }
        alpha = require_moments<K>(args.alpha, std::max(2 * n + 1, args.rn.value_or(0) + 1));
        delta = require_moments<K>(args.delta, 2 * big + 1);
    }

    const auto alpha_sys = build_system(*alpha, n);
    const auto delta_sys = build_system(*delta, big);

    Json doc;
    doc["alpha"] = alpha->label();
    doc["delta"] = delta->label();
    doc["basis"] = to_string(basis);
    doc["n"] = n;
    if (basis == Basis::Orthonormal) {
        doc["gamma"] = io::encode(connection_table(delta_sys, alpha_sys, n).gamma);
    } else {
        doc["gamma"] = io::encode(monic_connection_table(delta_sys, alpha_sys, n).gamma);
    }

    if (args.rn) {
        const std::size_t N = *args.rn;
        if (alpha->size() < N + 1) {
            throw PreconditionError("connect --rn " + std::to_string(N) + ": alpha needs m_0..m_" +
                                    std::to_string(N));
        }
        const RNExpansion<K> rn = rn_expansion(*alpha, delta_sys, N, args.integral);
        Json r;
        r["N"] = N;
        r["omega"] = io::encode(rn.omega);
        r["parseval"] = io::encode(rn.parseval);
        r["log_weighted_sum"] = rn.log_weighted_sum;
        if (rn.integral) {
            r["integral"] = *rn.integral;
            r["bessel_residual"] = *rn.bessel_residual;
        }
        doc["rn"] = std::move(r);
    }

    if (args.ribbon) {
        const RibbonReport<K> rep = ribbon_check(alpha_sys, *delta, *args.ribbon, n, cfg.tol);
        doc["ribbon"] = rep.ribbon;
        doc["ribbon_width"] = *args.ribbon;
        doc["max_off_ribbon"] = rep.max_off_ribbon;
        if (rep.max_off_ribbon > 0.0) doc["max_off_ribbon_at"] = {rep.worst_row, rep.worst_col};
    }
    emit(doc, cfg);
    return exit_ok;
}

template <class K>
int run_linearize(const RunConfig& cfg, const LinearizeArgs& args)
{
    const Basis basis = parse_basis(args.basis);
    const std::size_t order = args.n + args.m;
    const auto m = require_moments<K>(args.source, 2 * order + 1);
    const auto sys = build_system(m, order);

    Json doc;
    doc["n"] = args.n;
    doc["m"] = args.m;
    doc["basis"] = to_string(basis);
    if (basis == Basis::Orthonormal) {
        doc["c"] = io::encode(linearization_table(sys, args.n, args.m).c);
    } else {
        doc["c"] = io::encode(monic_linearization_table(sys, args.n, args.m).c);
    }

    if (args.closed_forms && args.n >= 1 && args.m >= 1) {
        const auto monic = monic_linearization_table(sys, args.n, args.m);
        Json forms = Json::array();
        for (std::size_t gap = 1; gap <= 2; ++gap) {
            const std::size_t s = order - gap;
            for (const auto form : {LinearizationForm::Statement, LinearizationForm::ProofExpansion}) {
                const K value = closed_form_linearization(sys.rec, args.n, args.m, s, form);
                const bool pass = is_exact_v<K> ? value == monic.c[s] : approx_equal(value, monic.c[s], cfg.tol);
                Json j;
                j["s"] = s;
                j["form"] = form == LinearizationForm::Statement ? "statement" : "proof-expansion";
                j["closed_form"] = io::encode(value);
                j["table"] = io::encode(monic.c[s]);
                j["status"] = pass ? "PASS" : "FAIL";
                forms.push_back(std::move(j));
            }
        }
        doc["closed_forms"] = std::move(forms);
    }
    emit(doc, cfg);
    return exit_ok;
}

int run_verify_pm(const RunConfig& cfg, const PmArgs& args)
{
    QParams p;
    p.q = parse_real(args.q, "q");
    p.rho = parse_real(args.rho, "rho");
    p.validate();
    if (!(args.tol > 0.0)) throw InputError("verify-pm: --tol must be positive");
    const std::vector<double> grid = args.grid.empty() ? default_pm_grid(p.q) : parse_grid(args.grid);
    const std::vector<PMPoint> pts = pm_compare(p, grid, args.tol);

    double worst = 0.0;
    Json arr = Json::array();
    for (const auto& pt : pts) {
        worst = std::max(worst, pt.error);
        Json j;
        j["x"] = pt.x;
        j["y"] = pt.y;
        j["product"] = pt.product.value;
        j["series"] = pt.series.value;
        j["error"] = pt.error;
        j["product_terms"] = pt.product.terms;
        j["series_terms"] = pt.series.terms;
        arr.push_back(std::move(j));
    }
    const bool pass = worst <= args.max_error;
    Json doc;
    doc["q"] = p.q;
    doc["rho"] = p.rho;
    doc["tol"] = args.tol;
    doc["points"] = std::move(arr);
    doc["max_error"] = worst;
    doc["threshold"] = args.max_error;
    doc["pass"] = pass;
    emit(doc, cfg);
    return pass ? exit_ok : exit_verification;
}

template <template <class> class Fn, class... Args>
int dispatch(const std::string& mode, Args&&... args)
{
    switch (io::parse_mode(mode)) {
    case io::Mode::Float: return Fn<double>::run(std::forward<Args>(args)...);
    case io::Mode::Wide: return Fn<Wide>::run(std::forward<Args>(args)...);
    case io::Mode::Rational: return Fn<Rational>::run(std::forward<Args>(args)...);
    }
    return exit_input;
}

template <class K>
struct Decompose {
    static int run(const RunConfig& c, const DecomposeArgs& a) { return run_decompose<K>(c, a); }
};
template <class K>
struct Recurrence {
    static int run(const RunConfig& c, const RecurrenceArgs& a) { return run_recurrence<K>(c, a); }
};
template <class K>
struct Connect {
    static int run(const RunConfig& c, const ConnectArgs& a) { return run_connect<K>(c, a); }
};
template <class K>
struct Linearize {
    static int run(const RunConfig& c, const LinearizeArgs& a) { return run_linearize<K>(c, a); }
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Orthogonal polynomial systems from moment sequences"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--mode", cfg.mode, "Arithmetic: float, wide (100 digits) or rational")
        ->check(CLI::IsMember({"float", "wide", "rational"}))
        ->capture_default_str();
    app.add_option("--tol", cfg.tol, "Comparison tolerance for float results")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for randomized verification")->capture_default_str();
    app.add_option("--out", cfg.out, "Write output to this file instead of stdout");

    DecomposeArgs dec;
    auto* dec_cmd = app.add_subcommand("decompose", "Cholesky factor, Pi, Lambda, minors and recurrence coefficients");
    dec_cmd->add_option("moments", dec.source, "Moment file or builtin:<family>[:q]")->required();
    dec_cmd->add_option("-n,--order", dec.n, "System order")->required();
    dec_cmd->add_flag("--diagnostics", dec.diagnostics, "Add spectral and kernel identities");
    dec_cmd->add_option("--points", dec.points, "Kernel evaluation points for --diagnostics")->delimiter(',');
    dec_cmd->add_option("--diag-tol", dec.diag_tol, "Tolerance of float diagnostics")->capture_default_str();
    dec_cmd->add_flag("--carleman", dec.carleman, "Add Carleman partial sums");

    RecurrenceArgs rec;
    auto* rec_cmd = app.add_subcommand("recurrence", "Tables and closed forms driven by recurrence coefficients");
    rec_cmd->add_option("rec", rec.source, "Recurrence file or builtin:<family>[:q]");
    auto* what = rec_cmd->add_option_group("output");
    what->add_option("--moments", rec.moments, "Moments m_0..m_{k-1}");
    what->add_option("--eta", rec.eta, "Monic coefficient table up to order n");
    what->add_option("--tau", rec.tau, "Inverse monic table up to order n");
    what->add_option("--verify-closed-forms", rec.verify, "Compare closed forms with recursions up to order n");
    what->require_option(1);
    rec_cmd->add_option("--draws", rec.draws, "Random draws when no rec file is given")->capture_default_str();

    ConnectArgs con;
    auto* con_cmd = app.add_subcommand("connect", "Connection coefficients of delta's polynomials in alpha's basis");
    con_cmd->add_option("alpha", con.alpha, "Moment file or builtin spec of alpha");
    con_cmd->add_option("delta", con.delta, "Moment file or builtin spec of delta");
    con_cmd->add_option("-n,--order", con.n, "Table order")->required();
    con_cmd->add_option("--basis", con.basis, "orthonormal or monic")->capture_default_str();
    con_cmd->add_option("--rn", con.rn, "Expand d alpha / d delta up to degree N");
    con_cmd->add_option("--integral", con.integral, "Known value of the integral of (d alpha/d delta)^2 d delta");
    con_cmd->add_option("--ribbon", con.ribbon, "Check the ribbon width of Pi(alpha) M(delta) Pi(alpha)^T");
    con_cmd->add_flag("--builtin-pair", con.builtin_pair, "Use the uniform / (1+x^2)-weighted pair");

    LinearizeArgs lin;
    auto* lin_cmd = app.add_subcommand("linearize", "Coefficients of p_n p_m in the same basis");
    lin_cmd->add_option("moments", lin.source, "Moment file or builtin:<family>[:q]")->required();
    lin_cmd->add_option("-n", lin.n, "First degree")->required();
    lin_cmd->add_option("-m", lin.m, "Second degree")->required();
    lin_cmd->add_option("--basis", lin.basis, "orthonormal or monic")->capture_default_str();
    lin_cmd->add_flag("--closed-forms", lin.closed_forms, "Compare the top two monic coefficients with closed forms");

    PmArgs pm;
    auto* pm_cmd = app.add_subcommand("verify-pm", "Compare both sides of the Poisson-Mehler formula on a grid");
    pm_cmd->add_option("--q", pm.q, "q in (-1,1), decimal or p/q")->required();
    pm_cmd->add_option("--rho", pm.rho, "rho in (-1,1), decimal or p/q")->required();
    pm_cmd->add_option("--grid", pm.grid, "Comma-separated points (default 0,+-1,+-1.9/sqrt(1-q))");
    pm_cmd->add_option("--tol", pm.tol, "Truncation tolerance of product and series")->capture_default_str();
    pm_cmd->add_option("--max-error", pm.max_error, "Largest accepted |product - series|")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*dec_cmd) return dispatch<Decompose>(cfg.mode, cfg, dec);
        if (*rec_cmd) return dispatch<Recurrence>(cfg.mode, cfg, rec);
        if (*con_cmd) return dispatch<Connect>(cfg.mode, cfg, con);
        if (*lin_cmd) return dispatch<Linearize>(cfg.mode, cfg, lin);
        if (*pm_cmd) return run_verify_pm(cfg, pm);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_precondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}
