#include "sharpgrad/cli.hpp"

#include "sharpgrad/cap.hpp"
#include "sharpgrad/constants.hpp"
#include "sharpgrad/errors.hpp"
#include "sharpgrad/geometry.hpp"
#include "sharpgrad/mobius.hpp"
#include "sharpgrad/poisson.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace sharpgrad::cli {

using nlohmann::ordered_json;
using constants::BoundKind;
using sharpgrad::detail::require;

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string number(double v)
{
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit(const ordered_json& j, int indent, int depth, std::string& out)
{
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
    case ordered_json::value_t::number_float:
        out += number(j.get<double>());
        return;
    case ordered_json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += '[';
        bool first = true;
        for (const auto& e : j) {
            if (!first) out += ',';
            first = false;
            newline(depth + 1);
            emit(e, indent, depth + 1, out);
        }
        newline(depth);
        out += ']';
        return;
    }
    case ordered_json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ',';
            first = false;
            newline(depth + 1);
            out += ordered_json(it.key()).dump();
            out += indent < 0 ? ":" : ": ";
            emit(it.value(), indent, depth + 1, out);
        }
        newline(depth);
        out += '}';
        return;
    }
    default:
        out += j.dump();
    }
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

ordered_json point_json(std::span<const double> p) { return ordered_json(std::vector<double>(p.begin(), p.end())); }

} // namespace

std::string dump_json(const ordered_json& j, int indent)
{
    std::string out;
    emit(j, indent, 0, out);
    return out;
}

ordered_json report_json(const verify::VerificationReport& r)
{
    ordered_json j;
    j["theorem_id"] = r.theorem_id;
    j["n"] = r.n;
    j["grid"] = r.grid;
    j["worst_margin"] = r.worst_margin;
    j["tolerance"] = r.tolerance;
    j["witnesses"] = ordered_json::array();
    for (const auto& w : r.witnesses)
        j["witnesses"].push_back({{"input", w.input}, {"lhs", w.lhs}, {"rhs", w.rhs}, {"margin", w.margin}});
    j["checks"] = ordered_json::array();
    for (const auto& c : r.checks)
        j["checks"].push_back({{"name", c.name},
                               {"value", c.value},
                               {"target", c.target},
                               {"tolerance", c.tolerance},
                               {"passed", c.passed}});
    j["passed"] = r.passed;
    j["runtime_ms"] = r.runtime_ms;
    j["informational"] = r.informational;
    return j;
}

std::string report_csv(const std::vector<verify::VerificationReport>& reports)
{
    std::string out = "theorem_id,n,type,label,lhs,rhs,margin,passed\n";
    for (const auto& r : reports) {
        const std::string head = csv_field(r.theorem_id) + ',' + std::to_string(r.n) + ',';
        for (const auto& w : r.witnesses)
            out += head + "witness," + csv_field(w.input) + ',' + number(w.lhs) + ',' + number(w.rhs) + ',' +
                   number(w.margin) + ',' + (w.margin >= -r.tolerance ? "true" : "false") + '\n';
        for (const auto& c : r.checks)
            out += head + "check," + csv_field(c.name) + ',' + number(c.value) + ',' + number(c.target) + ",," +
                   (c.passed ? "true" : "false") + '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Battery

namespace {

struct TheoremOptions {
    verify::SweepOptions sweep;
    std::size_t grid = 1001;
    std::optional<BoundKind> kind; ///< unset: every preset that applies
    std::vector<int> m_list;       ///< empty: {2, 3} capped at n
    std::optional<double> gamma;
    std::size_t candidates = 5;
    std::size_t mc_samples = 1'000'000;
    std::size_t pde_points = 100;
    std::size_t pairs = 100;
};

std::vector<BoundKind> kinds_of(const TheoremOptions& o)
{
    if (o.kind) return {*o.kind};
    return {BoundKind::harmonic, BoundKind::hyperbolic_harmonic};
}

std::vector<int> m_values(int n, const TheoremOptions& o)
{
    std::vector<int> ms = o.m_list.empty() ? std::vector<int>{2, 3} : o.m_list;
    std::erase_if(ms, [n](int m) { return m > n || m > 3; });
    require(!ms.empty(), "vector: no component count m in [1, min(n, 3)] requested");
    return ms;
}

/// All reports that make up one theorem id, in a fixed order.
std::vector<verify::VerificationReport> theorem_reports(const std::string& id, int n, const TheoremOptions& o)
{
    const auto& s = o.sweep;
    std::vector<verify::VerificationReport> out;
    if (id == "inq1") {
        out.push_back(verify::verify_inq1(n, o.grid));
    } else if (id == "aux3") {
        out.push_back(verify::verify_section3_auxiliaries(n, o.grid));
    } else if (id == "counterexample") {
        out.push_back(verify::counterexample_report(verify::counterexample(n, o.gamma, 0.01, s.quadrature)));
    } else if (id == "pointwise") {
        const auto points = verify::sample_points(n, s.points, s.radius, s.seed);
        for (BoundKind k : kinds_of(o)) {
            const auto fields = verify::default_fields(n, k, s.seed, s.quadrature);
            out.push_back(verify::verify_pointwise(n, k, fields, points, s));
        }
    } else if (id == "thyp3") {
        require(n == 3, "thyp3: defined on B^3 only");
        const auto points = verify::sample_points(3, s.points, s.radius, s.seed);
        out.push_back(verify::verify_thyp3(verify::default_fields(3, BoundKind::harmonic, s.seed, s.quadrature), points, s));
    } else if (id == "vector") {
        const auto points = verify::sample_points(n, s.points, s.radius, s.seed);
        for (BoundKind k : kinds_of(o))
            for (int m : m_values(n, o)) {
                auto r = verify::verify_vector(n, k, verify::default_vector_data(n, m, k, s.seed, s.quadrature), points, s);
                r.theorem_id += "-m" + std::to_string(m);
                out.push_back(std::move(r));
            }
    } else if (id == "contraction") {
        const auto pairs = verify::sample_pairs(n, o.pairs, s.radius, s.seed);
        for (BoundKind k : kinds_of(o)) {
            if (k == BoundKind::harmonic && n != 3) {
                if (o.kind) require(false, "contraction: the harmonic preset is covered on B^3 only");
                continue;
            }
            out.push_back(verify::verify_contraction(n, k, verify::default_fields(n, k, s.seed, s.quadrature), pairs, s));
        }
    } else if (id == "question") {
        out.push_back(verify::explore_question(n, o.candidates, s.seed, s));
    } else if (id == "sharpness") {
        out.push_back(verify::verify_sharpness(n, s, o.mc_samples));
    } else if (id == "pde") {
        out.push_back(verify::verify_pde(n, o.pde_points, s));
    } else if (id == "mobius") {
        out.push_back(verify::verify_mobius(n, s));
    } else if (id == "phi") {
        out.push_back(verify::verify_phi(n));
    } else if (id == "constants") {
        out.push_back(verify::verify_constants(n));
    } else {
        throw DomainError("unknown theorem id: " + id);
    }
    return out;
}

/// Folds several reports into one under `id`. Single reports pass through.
verify::VerificationReport combine(const std::string& id, int n, std::vector<verify::VerificationReport> parts)
{
    if (parts.size() == 1) return std::move(parts.front());
    double tol = 0.0;
    std::string grid;
    std::int64_t runtime = 0;
    for (const auto& p : parts) {
        tol = std::max(tol, p.tolerance);
        grid += (grid.empty() ? "" : "; ") + p.theorem_id + ": " + p.grid;
        runtime += p.runtime_ms;
    }
    verify::ReportBuilder b(id, n, tol);
    b.set_grid(grid);
    for (const auto& p : parts) b.merge(p);
    auto r = b.finish();
    r.runtime_ms = runtime;
    return r;
}

const std::vector<std::string> kTheoremIds = {"inq1",     "aux3",   "counterexample", "pointwise", "thyp3",
                                              "vector",   "contraction", "question",   "sharpness", "pde",
                                              "mobius",   "phi",    "constants"};

} // namespace

std::vector<verify::VerificationReport> report_all(const BatteryOptions& opt)
{
    TheoremOptions o;
    o.sweep = opt.sweep;
    o.mc_samples = opt.mc_samples;
    o.pde_points = opt.pde_points;
    o.pairs = opt.pairs;
    o.candidates = opt.question_candidates;
    std::vector<verify::VerificationReport> out;
    auto add = [&](const std::string& id, int n) {
        for (auto& r : theorem_reports(id, n, o)) out.push_back(std::move(r));
    };
    for (int n : opt.n_list) {
        require(n >= 2, "report-all: dimensions must be >= 2");
        add("constants", n);
        add("inq1", n);
        if (n >= 4) {
            add("aux3", n);
            add("counterexample", n);
        }
        add("sharpness", n);
        add("pde", n);
        add("mobius", n);
        if (n >= 3) {
            add("phi", n);
            add("pointwise", n);
            if (n == 3) add("thyp3", n);
            add("vector", n);
            add("contraction", n);
            add("question", n);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

struct Global {
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out_path;
    std::string format = "json";
    bool csv = false;
    bool no_timestamp = false;
    numerics::QuadratureConfig quadrature{};
};

std::string utc_timestamp()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json config_json(const std::string& command, const std::vector<std::string>& args, const Global& g)
{
    ordered_json c;
    c["tool"] = "sharpgrad";
    c["version"] = kVersion;
    c["command"] = command;
    c["args"] = args;
    c["seed"] = g.seed;
    c["threads"] = g.threads;
    c["format"] = g.csv ? "csv" : g.format;
    c["quadrature"] = {{"nodes_1d", g.quadrature.nodes_1d},
                       {"abs_tol", g.quadrature.abs_tol},
                       {"rel_tol", g.quadrature.rel_tol},
                       {"max_depth", g.quadrature.max_depth}};
    if (!g.no_timestamp) c["timestamp"] = utc_timestamp();
    return c;
}

std::string csv_header(const std::vector<std::string>& args)
{
    std::string h = "# sharpgrad " + std::string(kVersion);
    for (const auto& a : args) h += ' ' + a;
    return h + '\n';
}

std::string pretty(const std::vector<verify::VerificationReport>& reports)
{
    std::string out;
    char buf[256];
    for (const auto& r : reports) {
        const auto ok = std::count_if(r.checks.begin(), r.checks.end(), [](const verify::Check& c) { return c.passed; });
        std::snprintf(buf, sizeof buf, "%-5s %-24s n=%-3d worst_margin=%-12.4g checks=%zu/%zu%s\n",
                      r.informational ? "INFO" : (r.passed ? "PASS" : "FAIL"), r.theorem_id.c_str(), r.n,
                      r.worst_margin, static_cast<std::size_t>(ok), r.checks.size(), (r.passed || r.informational) ? "" : "  <--");
        out += buf;
    }
    return out;
}

void zero_runtimes(std::vector<verify::VerificationReport>& reports, const Global& g)
{
    if (g.no_timestamp)
        for (auto& r : reports) r.runtime_ms = 0;
}

bool gating_failure(const std::vector<verify::VerificationReport>& reports)
{
    return std::any_of(reports.begin(), reports.end(),
                       [](const verify::VerificationReport& r) { return !r.passed && !r.informational; });
}

Point parse_point(const std::string& text)
{
    Point p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw DomainError("cannot parse coordinate '" + item + "'");
        }
        require(used == item.size() || item.find_first_not_of(" ", used) == std::string::npos,
                "cannot parse coordinate '" + item + "'");
        p.push_back(v);
    }
    require(!p.empty(), "empty point");
    return p;
}

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    for (double v : parse_point(text)) {
        require(v == std::floor(v), "expected integers in list: " + text);
        out.push_back(static_cast<int>(v));
    }
    return out;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Sharp Schwarz-Pick gradient constants on the unit ball: constants, extremal Poisson transforms "
                 "and inequality verification.",
                 "sharpgrad"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);

    Global g;
    app.add_option("--seed", g.seed, "Seed for random sample sets")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (0 = available cores)")->capture_default_str();
    app.add_option("--out", g.out_path, "Write output to this file instead of stdout");
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "pretty"}))
        ->capture_default_str();
    app.add_flag("--csv", g.csv, "Shorthand for --format csv");
    app.add_flag("--no-timestamp", g.no_timestamp, "Omit the timestamp and zero runtimes (byte-stable output)");
    app.add_option("--nodes", g.quadrature.nodes_1d, "Gauss-Legendre nodes per panel")->capture_default_str();
    app.add_option("--abs-tol", g.quadrature.abs_tol, "Quadrature absolute tolerance")->capture_default_str();
    app.add_option("--rel-tol", g.quadrature.rel_tol, "Quadrature relative tolerance")->capture_default_str();
    app.add_option("--max-depth", g.quadrature.max_depth, "Quadrature bisection depth")->capture_default_str();

    int n = 3;
    auto add_n = [&n](CLI::App* sub) { sub->add_option("--n", n, "Dimension of the ball")->required(); };

    auto* c_constants = app.add_subcommand("constants", "Named ball constants as JSON");
    add_n(c_constants);

    double a = 0.0;
    auto* c_cap = app.add_subcommand("cap-angle", "Cap angle gamma_a with A(gamma_a) = (1+a)/2, and both cap-angle inequalities");
    add_n(c_cap);
    c_cap->add_option("--a", a, "Target value in [-1, 1]")->required();

    std::optional<double> alpha, beta;
    std::string kind_name;
    double gamma = 0.0;
    std::string point_text;
    auto* c_eval = app.add_subcommand("extremal-eval", "Value, gradient and radial derivative of the extremal cap transform");
    add_n(c_eval);
    c_eval->add_option("--alpha", alpha, "Kernel exponent alpha (default from --kind)");
    c_eval->add_option("--beta", beta, "Kernel exponent beta (default from --kind)");
    c_eval->add_option("--kind", kind_name, "Kernel preset: harmonic or hyperbolic")->default_str("harmonic");
    c_eval->add_option("--gamma", gamma, "Cap angle in (0, pi)")->required();
    c_eval->add_option("--point", point_text, "Interior point x1,...,xn")->required();

    std::size_t grid = 101;
    auto* c_phi = app.add_subcommand("khavinson-phi",
                                     "Khavinson's Phi_n on a uniform grid of [0, 1] as CSV.\n"
                                     "Columns: r,phi,bound  (bound = (n-1) omega_star Phi_n(r) / (1-r^2); empty at r = 1)");
    add_n(c_phi);
    c_phi->add_option("--grid", grid, "Number of grid points")->capture_default_str();

    std::string theorem;
    TheoremOptions topt;
    std::string m_text;
    std::size_t points = 50;
    auto* c_verify = app.add_subcommand("verify",
                                        "Run one verification and emit its report.\n"
                                        "CSV columns: theorem_id,n,type,label,lhs,rhs,margin,passed");
    add_n(c_verify);
    c_verify->add_option("--theorem", theorem, "Which check to run")->required()->check(CLI::IsMember(kTheoremIds));
    c_verify->add_option("--grid", topt.grid, "Grid size for inq1 and aux3")->capture_default_str();
    c_verify->add_option("--points", points, "Random interior points per sweep (plus the origin)")->capture_default_str();
    c_verify->add_option("--kind", kind_name, "Restrict to one kernel preset: harmonic or hyperbolic");
    c_verify->add_option("--m", m_text, "Component counts for vector checks, e.g. 2,3");
    c_verify->add_option("--gamma", topt.gamma, "Cap angle for the counterexample (default: scan from pi/2)");
    c_verify->add_option("--candidates", topt.candidates, "Candidate fields per family for question")->capture_default_str();
    c_verify->add_option("--mc-samples", topt.mc_samples, "Monte Carlo samples for sharpness")->capture_default_str();
    c_verify->add_option("--pde-points", topt.pde_points, "Points for pde")->capture_default_str();
    c_verify->add_option("--pairs", topt.pairs, "Point pairs for contraction")->capture_default_str();

    std::string x_text, y_text;
    auto* c_mobius = app.add_subcommand("mobius", "Mobius map phi_x(y) and hyperbolic distance");
    c_mobius->add_option("--x", x_text, "Center x1,...,xn with |x| < 1")->required();
    c_mobius->add_option("--y", y_text, "Point y1,...,yn with |y| <= 1")->required();

    std::string n_list_text = "3,4,5";
    BatteryOptions battery;
    auto* c_all = app.add_subcommand("report-all",
                                     "Run the full verification battery and emit one summary.\n"
                                     "CSV columns: theorem_id,n,type,label,lhs,rhs,margin,passed");
    c_all->add_option("--n-list", n_list_text, "Comma-separated dimensions")->capture_default_str();
    c_all->add_option("--points", battery.sweep.points, "Random interior points per sweep")->capture_default_str();
    c_all->add_option("--mc-samples", battery.mc_samples, "Monte Carlo samples for sharpness")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        g.quadrature.validate();
        if (g.csv) g.format = "csv";
        const std::string command = app.get_subcommands().front()->get_name();
        const ordered_json config = config_json(command, args, g);
        std::ostringstream buffer;
        int code = kExitOk;

        auto emit_json = [&](ordered_json payload) {
            ordered_json doc;
            doc["config"] = config;
            for (auto it = payload.begin(); it != payload.end(); ++it) doc[it.key()] = it.value();
            buffer << dump_json(doc) << '\n';
        };
        auto emit_reports = [&](std::vector<verify::VerificationReport> reports, ordered_json extra, bool single) {
            zero_runtimes(reports, g);
            if (g.format == "csv") {
                buffer << csv_header(args) << report_csv(reports);
            } else if (g.format == "pretty") {
                buffer << pretty(reports);
            } else {
                ordered_json payload = std::move(extra);
                if (single) {
                    payload["report"] = report_json(reports.front());
                } else {
                    payload["reports"] = ordered_json::array();
                    for (const auto& r : reports) payload["reports"].push_back(report_json(r));
                }
                emit_json(std::move(payload));
            }
        };

        if (command == "constants") {
            require(n >= 2, "constants: dimension must be >= 2");
            const auto bc = geometry::ball_constants(n);
            ordered_json j;
            j["n"] = n;
            j["omega_n"] = bc.omega_n;
            j["sigma_n"] = bc.sigma_n;
            j["omega_star"] = bc.omega_star;
            j["sigma_star"] = bc.sigma_star;
            j["liu_constant"] = constants::liu_constant(n);
            j["liu_sharp_constant"] = constants::liu_sharp_constant(n);
            j["grad0_harmonic"] = constants::grad0_coefficient(n, BoundKind::harmonic);
            j["grad0_hyperbolic"] = constants::grad0_coefficient(n, BoundKind::hyperbolic_harmonic);
            if (n >= 3) {
                j["khavinson_c_n"] = (n - 1.0) * bc.omega_star;
                j["khavinson_phi_0"] = constants::khavinson_phi(n, 0.0);
            }
            const auto bor = geometry::ratio_bounds(n, geometry::RatioBound::borgwardt);
            const auto alz = geometry::ratio_bounds(n, geometry::RatioBound::alzer);
            j["borgwardt_bounds"] = {bor.lo, bor.hi};
            j["alzer_bounds"] = {alz.lo, alz.hi};
            if (n >= 4)
                j["sigma_star_bounds"] = {{"lower", std::sqrt((n - 1.0) / 8.0)},
                                          {"upper", (n - 1.0) / 4.0},
                                          {"holds", geometry::sigma_star_bounds_check(n)}};
            emit_json({{"constants", j}});
        } else if (command == "cap-angle") {
            require(n >= 2, "cap-angle: dimension must be >= 2");
            const double g_a = cap::cap_angle(n, a);
            const double s = std::pow(std::sin(g_a), n - 1);
            const double base = 1.0 - a * a;
            const double upper = (n - 1.0) * base / (4.0 * geometry::sigma_star(n));
            ordered_json j;
            j["n"] = n;
            j["a"] = a;
            j["gamma"] = g_a;
            j["sin_pow"] = s;
            j["cap_area"] = cap::cap_area(n, g_a);
            j["target_area"] = 0.5 * (1.0 + a);
            if (std::abs(a) < 1.0) j["gamma_derivative"] = cap::cap_angle_derivative(n, a);
            ordered_json q;
            q["mode"] = n >= 4 ? "inequalities" : (n == 3 ? "identity" : "reversed");
            q["one_minus_a2"] = base;
            q["upper_bound"] = upper;
            if (n >= 4) {
                q["lower_holds"] = s >= base - 1e-10;
                q["upper_holds"] = s <= upper + 1e-10;
            } else if (n == 3) {
                q["identity_error"] = std::abs(s - base);
            } else {
                q["reversed_holds"] = s <= base + 1e-10;
            }
            j["inequalities"] = q;
            emit_json({{"cap_angle", j}});
        } else if (command == "extremal-eval") {
            const BoundKind kind = constants::parse_bound_kind(kind_name.empty() ? "harmonic" : kind_name);
            auto params = constants::preset_params(n, kind);
            if (alpha) params.alpha = *alpha;
            if (beta) params.beta = *beta;
            const Point x = parse_point(point_text);
            require(static_cast<int>(x.size()) == n, "extremal-eval: --point must have n coordinates");
            const auto field = poisson::extremal_field(n, params, gamma, g.quadrature);
            const auto ev = field.evaluate(x);
            ordered_json j;
            j["n"] = n;
            j["alpha"] = params.alpha;
            j["beta"] = params.beta;
            j["gamma"] = gamma;
            j["point"] = point_json(x);
            j["value"] = ev.value;
            j["gradient"] = point_json(ev.gradient);
            j["gradient_norm"] = norm(ev.gradient);
            j["radial_derivative"] = norm(x) > 0.0 ? ordered_json(poisson::radial_derivative(field, x)) : ordered_json();
            if (norm(x) == 0.0) j["closed_form_gradient_norm"] = constants::d_n(n, gamma, params.beta);
            emit_json({{"extremal", j}});
        } else if (command == "khavinson-phi") {
            require(n >= 3, "khavinson-phi: dimension must be >= 3");
            require(grid >= 2, "khavinson-phi: --grid must be >= 2");
            buffer << csv_header(args) << "r,phi,bound\n";
            for (std::size_t i = 0; i < grid; ++i) {
                const double r = i + 1 == grid ? 1.0 : static_cast<double>(i) / static_cast<double>(grid - 1);
                const double phi = constants::khavinson_phi(n, r);
                buffer << number(r) << ',' << number(phi) << ','
                       << (r < 1.0 ? number(constants::khavinson_gradient_bound(n, r)) : std::string()) << '\n';
            }
        } else if (command == "verify") {
            topt.sweep.seed = numerics::RandomSeed{g.seed};
            topt.sweep.threads = g.threads;
            topt.sweep.points = points;
            topt.sweep.quadrature = g.quadrature;
            if (!kind_name.empty()) topt.kind = constants::parse_bound_kind(kind_name);
            if (!m_text.empty()) topt.m_list = parse_int_list(m_text);
            auto report = combine(theorem, n, theorem_reports(theorem, n, topt));
            ordered_json extra = ordered_json::object();
            if (theorem == "counterexample") {
                const auto c = verify::counterexample(n, topt.gamma, 0.01, g.quadrature);
                extra["certificate"] = {{"n", c.n},
                                        {"gamma", c.gamma},
                                        {"a", c.a},
                                        {"grad_norm", c.grad_norm},
                                        {"liu_rhs", c.liu_rhs},
                                        {"violation_ratio", c.violation_ratio},
                                        {"closed_form", c.closed_form},
                                        {"relative_agreement", c.relative_agreement}};
            }
            // For the counterexample a passing report means the violation was found.
            code = (report.passed || report.informational) ? kExitOk : kExitViolation;
            emit_reports({std::move(report)}, std::move(extra), true);
        } else if (command == "mobius") {
            const Point x = parse_point(x_text);
            const Point y = parse_point(y_text);
            require(x.size() == y.size() && x.size() >= 2, "mobius: --x and --y need the same dimension >= 2");
            require(norm(y) <= 1.0, "mobius: |y| must be <= 1");
            const mobius::MobiusMap phi(x);
            const Point image = phi(y);
            ordered_json j;
            j["x"] = point_json(x);
            j["y"] = point_json(y);
            j["phi_x_y"] = point_json(image);
            j["phi_x_y_norm"] = norm(image);
            j["involution_error"] = norm(phi(image) - y);
            if (norm(y) < 1.0) {
                j["hyperbolic_distance"] = mobius::hyperbolic_distance(x, y);
                j["hyperbolic_distance_arccosh"] = mobius::hyperbolic_distance_arccosh(x, y);
            }
            emit_json({{"mobius", j}});
        } else if (command == "report-all") {
            battery.n_list = parse_int_list(n_list_text);
            battery.sweep.seed = numerics::RandomSeed{g.seed};
            battery.sweep.threads = g.threads;
            battery.sweep.quadrature = g.quadrature;
            auto reports = report_all(battery);
            ordered_json summary;
            summary["passed"] = !gating_failure(reports);
            summary["reports"] = reports.size();
            summary["failed"] = ordered_json::array();
            summary["informational"] = ordered_json::array();
            for (const auto& r : reports) {
                const std::string tag = r.theorem_id + " n=" + std::to_string(r.n);
                if (r.informational)
                    summary["informational"].push_back(tag);
                else if (!r.passed)
                    summary["failed"].push_back(tag);
            }
            code = gating_failure(reports) ? kExitViolation : kExitOk;
            emit_reports(std::move(reports), {{"summary", summary}}, false);
        }

        if (g.out_path.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(g.out_path, std::ios::binary);
            if (!file) throw DomainError("cannot open output file " + g.out_path);
            file << buffer.str();
        }
        return code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace sharpgrad::cli
