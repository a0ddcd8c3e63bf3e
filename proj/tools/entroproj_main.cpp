// Command-line front end. Reads a single JSON run configuration, drives the
// library, prints a short human report and writes all numbers to CSV/JSON
// files in the output directory.
//
// Exit codes: 0 ok, 1 usage or config error, 2 validation verdict INVALID,
// 3 infeasible constraint, 4 no accepted trials in the sampler.

#include "entroproj/dual_solver.hpp"
#include "entroproj/gibbs.hpp"
#include "entroproj/orlicz.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

using nlohmann::json;
using namespace entroproj;

namespace {

// config or usage problems; everything mapped to exit code 1
struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[noreturn]] void fail(const std::string& msg) { throw CliError(msg); }

// ---------------------------------------------------------------- formatting

std::string fmt(double v, const char* spec = "%.12g") {
    if (v != v) return "nan";
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// JSON has no inf; non-finite values are emitted as null
json jnum(double v) { return is_finite(v) ? json(v) : json(nullptr); }

json jvec(const Vec& v) {
    json a = json::array();
    for (double x : v) a.push_back(jnum(x));
    return a;
}

// ------------------------------------------------------------ config access

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail("config is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) fail("config root must be a JSON object");
    return j;
}

double req_num(const json& j, const char* key, const char* ctx) {
    if (!j.contains(key)) fail(std::string(ctx) + ": missing \"" + key + "\"");
    if (!j.at(key).is_number()) fail(std::string(ctx) + ": \"" + key + "\" must be a number");
    return j.at(key).get<double>();
}

double opt_num(const json& j, const char* key, double dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number()) fail(std::string("\"") + key + "\" must be a number");
    return j.at(key).get<double>();
}

int opt_int(const json& j, const char* key, int dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number_integer()) fail(std::string("\"") + key + "\" must be an integer");
    return j.at(key).get<int>();
}

bool opt_bool(const json& j, const char* key, bool dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_boolean()) fail(std::string("\"") + key + "\" must be a boolean");
    return j.at(key).get<bool>();
}

std::string opt_str(const json& j, const char* key, const std::string& dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_string()) fail(std::string("\"") + key + "\" must be a string");
    return j.at(key).get<std::string>();
}

std::vector<double> num_list(const json& a, const char* what) {
    if (!a.is_array()) fail(std::string(what) + " must be an array of numbers");
    std::vector<double> v;
    for (const auto& e : a) {
        if (!e.is_number()) fail(std::string(what) + " entries must be numbers");
        double x = e.get<double>();
        if (!is_finite(x)) fail(std::string(what) + " entries must be finite");
        v.push_back(x);
    }
    return v;
}

// like num_list but the strings "inf"/"-inf" are legal (box constraint edges)
std::vector<double> bound_list(const json& a, const char* what) {
    if (!a.is_array()) fail(std::string(what) + " must be an array");
    std::vector<double> v;
    for (const auto& e : a) {
        if (e.is_number()) {
            v.push_back(e.get<double>());
        } else if (e.is_string()) {
            std::string s = e.get<std::string>();
            if (s == "inf") v.push_back(kInf);
            else if (s == "-inf") v.push_back(-kInf);
            else fail(std::string(what) + ": unknown bound \"" + s + "\"");
        } else {
            fail(std::string(what) + " entries must be numbers or \"inf\"/\"-inf\"");
        }
    }
    return v;
}

// ----------------------------------------------------------------- CSV input

double parse_field(const std::string& s, const std::string& path, int line) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = b + s.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || p != e)
        fail(path + ":" + std::to_string(line) + ": cannot parse number \"" + s + "\"");
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r' && ch != ' ' && ch != '\t') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

bool numeric_token(const std::string& s) {
    double v;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && p == s.data() + s.size();
}

// strict two-column z,weight table; one optional header line
std::pair<Vec, Vec> read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open points file: " + path);
    Vec zs, ws;
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (ln == 1 && !f.empty() && !numeric_token(f[0])) continue; // header
        if (f.size() != 2) fail(path + ":" + std::to_string(ln) + ": expected two columns z,weight");
        double z = parse_field(f[0], path, ln);
        double w = parse_field(f[1], path, ln);
        if (!is_finite(z)) fail(path + ":" + std::to_string(ln) + ": point must be finite");
        if (!is_finite(w) || w < 0.0) fail(path + ":" + std::to_string(ln) + ": weight must be finite and nonnegative");
        zs.push_back(z);
        ws.push_back(w);
    }
    if (zs.empty()) fail(path + ": no data rows");
    return {zs, ws};
}

// one value per row, optional header
Vec read_values_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open values file: " + path);
    Vec vs;
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (ln == 1 && !numeric_token(f[0])) continue;
        if (f.size() != 1) fail(path + ":" + std::to_string(ln) + ": expected one column");
        double v = parse_field(f[0], path, ln);
        if (!is_finite(v)) fail(path + ":" + std::to_string(ln) + ": value must be finite");
        vs.push_back(v);
    }
    if (vs.empty()) fail(path + ": no data rows");
    return vs;
}

// ------------------------------------------------------- custom problem spec

Measure parse_measure(const json& m) {
    if (!m.is_object()) fail("custom.measure must be an object");
    if (m.contains("points") || m.contains("points_csv")) {
        Vec zs, ws;
        if (m.contains("points_csv")) {
            auto [z, w] = read_points_csv(m.at("points_csv").get<std::string>());
            zs = z;
            ws = w;
        } else {
            zs = num_list(m.at("points"), "custom.measure.points");
            if (m.contains("weights")) ws = num_list(m.at("weights"), "custom.measure.weights");
            else ws.assign(zs.size(), 1.0);
            for (double w : ws)
                if (w < 0.0) fail("custom.measure.weights must be nonnegative");
        }
        if (zs.size() != ws.size()) fail("custom.measure: points and weights must have equal length");
        double tot = 0.0;
        for (double w : ws) tot += w;
        if (tot <= 0.0) fail("custom.measure: total weight must be positive");
        return Measure(DiscreteMeasure(std::move(zs), std::move(ws)));
    }
    std::string fam = opt_str(m, "family", "");
    if (fam == "exponential") return Measure(Density1D::exponential(opt_num(m, "rate", 1.0)));
    if (fam == "exp_poly") return Measure(Density1D::exp_poly(opt_num(m, "a", 1.0), opt_num(m, "b", 3.0)));
    if (fam == "gaussian") return Measure(Density1D::gaussian(opt_num(m, "mu", 0.0), opt_num(m, "sigma", 1.0)));
    if (fam == "uniform") return Measure(Density1D::uniform(opt_num(m, "lo", 0.0), opt_num(m, "hi", 1.0)));
    fail("custom.measure: give a family (exponential|exp_poly|gaussian|uniform) or points/points_csv");
}

Entropy parse_entropy(const json& e) {
    if (e.is_null()) return Entropy::relative();
    if (!e.is_object()) fail("custom.entropy must be an object");
    std::string kind = opt_str(e, "kind", "relative");
    if (kind == "relative") return Entropy::relative();
    if (kind == "reverse_relative") return Entropy::reverse_relative();
    if (kind == "fermi_dirac") return Entropy::fermi_dirac();
    if (kind == "lp_norm") return Entropy::lp_norm(req_num(e, "p", "custom.entropy"));
    if (kind == "lp_entropy") return Entropy::lp_entropy(req_num(e, "p", "custom.entropy"));
    fail("custom.entropy.kind: unknown kind \"" + kind + "\"");
}

TestFunction parse_theta_one(const json& t, const Measure& R) {
    if (!t.is_object()) fail("custom.theta entries must be objects");
    std::string kind = opt_str(t, "kind", "identity");
    if (kind == "identity") return TestFunction::identity();
    if (kind == "power") return TestFunction::power(opt_int(t, "k", 2));
    if (kind == "affine") return TestFunction::affine(opt_num(t, "a", 1.0), opt_num(t, "b", 0.0));
    if (kind == "constant") return TestFunction::constant(req_num(t, "b", "custom.theta constant"));
    if (kind == "grid") {
        if (!R.is_discrete()) fail("grid test functions require a discrete measure");
        Vec vals = t.contains("values_csv")
                       ? read_values_csv(t.at("values_csv").get<std::string>())
                       : num_list(t.at("values"), "custom.theta.values");
        if (vals.size() != R.discrete().size())
            fail("grid test function length must match the atom count");
        return TestFunction::grid_values(std::move(vals));
    }
    fail("custom.theta.kind: unknown kind \"" + kind + "\"");
}

std::vector<TestFunction> parse_thetas(const json& t, const Measure& R) {
    if (!t.is_array() || t.empty()) fail("custom.theta must be a non-empty array");
    std::vector<TestFunction> out;
    for (const auto& e : t) out.push_back(parse_theta_one(e, R));
    return out;
}

ConstraintSet parse_constraint(const json& c, std::size_t K) {
    if (!c.is_object()) fail("custom.constraint must be an object");
    std::string kind = opt_str(c, "kind", "equality");
    ConstraintSet con = ConstraintSet::equality(Vec(K, 0.0));
    if (kind == "equality") {
        con = ConstraintSet::equality(num_list(c.at("x"), "custom.constraint.x"));
    } else if (kind == "lower_bounds") {
        con = ConstraintSet::lower_bounds(num_list(c.at("c"), "custom.constraint.c"));
    } else if (kind == "box") {
        con = ConstraintSet::box(bound_list(c.at("lo"), "custom.constraint.lo"),
                                 bound_list(c.at("hi"), "custom.constraint.hi"));
    } else {
        fail("custom.constraint.kind: unknown kind \"" + kind + "\"");
    }
    if (con.dim() != K) fail("custom.constraint dimension must match the number of test functions");
    return con;
}

// ------------------------------------------------------------------- context

struct Ctx {
    json cfg;
    std::string scenario; // builtin_exponential | builtin_exp_poly | custom
    std::optional<Scenario> scen;
    std::optional<MomentProblem> prob;
    double c = 0.0;
    bool has_c = false;
    std::filesystem::path out;
    std::uint64_t seed = 1;
    bool quiet = false;

    void say(const std::string& line) const {
        if (!quiet) std::printf("%s\n", line.c_str());
    }
};

Ctx make_context(const std::string& config_path, const std::string& out_flag,
                 long long seed_flag, bool quiet) {
    Ctx ctx;
    ctx.cfg = load_config(config_path);
    ctx.quiet = quiet;

    ctx.scenario = opt_str(ctx.cfg, "scenario", "");
    if (ctx.scenario == "builtin_exponential") {
        ctx.scen = exponential_scenario(opt_num(ctx.cfg, "rate", 1.0));
    } else if (ctx.scenario == "builtin_exp_poly") {
        ctx.scen = exp_poly_scenario();
    } else if (ctx.scenario == "custom") {
        if (!ctx.cfg.contains("custom") || !ctx.cfg.at("custom").is_object())
            fail("scenario \"custom\" needs a \"custom\" object");
        const json& cu = ctx.cfg.at("custom");
        Measure R = parse_measure(cu.contains("measure") ? cu.at("measure") : json());
        Entropy spec = parse_entropy(cu.contains("entropy") ? cu.at("entropy") : json());
        auto thetas = parse_thetas(cu.contains("theta") ? cu.at("theta") : json(), R);
        ConstraintSet con = parse_constraint(
            cu.contains("constraint") ? cu.at("constraint") : json(), thetas.size());
        ctx.prob.emplace(std::move(R), spec, std::move(thetas), con);
    } else if (ctx.scenario.empty()) {
        fail("config needs \"scenario\": builtin_exponential | builtin_exp_poly | custom");
    } else {
        fail("unknown scenario \"" + ctx.scenario + "\"");
    }

    if (ctx.cfg.contains("c")) {
        ctx.c = req_num(ctx.cfg, "c", "config");
        ctx.has_c = true;
    }

    std::string out = !out_flag.empty() ? out_flag : opt_str(ctx.cfg, "out", "out");
    ctx.out = out;
    std::filesystem::create_directories(ctx.out);

    double s = opt_num(ctx.cfg, "seed", 1.0);
    if (ctx.cfg.contains("gibbs")) s = opt_num(ctx.cfg.at("gibbs"), "seed", s);
    if (seed_flag >= 0) s = static_cast<double>(seed_flag);
    ctx.seed = static_cast<std::uint64_t>(s);
    return ctx;
}

double require_c(const Ctx& ctx) {
    if (!ctx.has_c) fail("builtin scenarios need a constraint level \"c\" in the config");
    return ctx.c;
}

// the validation problem: custom as given, builtins as the one-dimensional
// moment bound they solve
MomentProblem validation_problem(const Ctx& ctx) {
    if (ctx.prob) return *ctx.prob;
    double c = ctx.has_c ? ctx.c : 2.0;
    return MomentProblem(ctx.scen->R, Entropy::relative(), {ctx.scen->th},
                         ConstraintSet::lower_bounds({c}));
}

void write_text(const std::filesystem::path& p, const std::string& body) {
    std::ofstream out(p);
    if (!out) fail("cannot write " + p.string());
    out << body;
}

void write_json(const std::filesystem::path& p, const json& j) {
    write_text(p, j.dump(2) + "\n");
}

// --------------------------------------------------------------- cmd_validate

int cmd_validate(const Ctx& ctx) {
    MomentProblem prob = validation_problem(ctx);
    std::string verdict = "GOOD";
    std::vector<std::string> notes;
    json classes = json::array();

    ctx.say("validate: scenario " + ctx.scenario);

    double mass = prob.R.mass();
    bool mass_ok = is_finite(mass) && mass > 0.0;
    ctx.say("  reference mass        " + fmt(mass) + (mass_ok ? " (finite)" : " (NOT finite)"));
    if (!mass_ok) {
        verdict = "INVALID";
        notes.push_back("reference measure mass is not finite and positive");
    }

    if (verdict != "INVALID") {
        try {
            validate_problem(prob);
            ctx.say("  constraint directions " + std::to_string(prob.K()) + ", linearly independent");
        } catch (const std::invalid_argument& e) {
            verdict = "INVALID";
            notes.push_back(e.what());
            ctx.say(std::string("  constraint directions FAILED: ") + e.what());
        }
    }

    if (verdict != "INVALID") {
        // each component doubles as a basis direction of the dual space, so
        // this covers both readings of the integrability requirement
        bool critical = false;
        for (std::size_t k = 0; k < prob.K(); ++k) {
            IntegrabilityClass cls = integrability_class(prob.theta[k], prob.spec, prob.R);
            classes.push_back(std::string(to_string(cls)));
            std::string line = "  theta[" + std::to_string(k) + "]              ";
            if (cls == IntegrabilityClass::outside) {
                verdict = "INVALID";
                notes.push_back("theta[" + std::to_string(k) +
                                "] lies outside the integrability ladder for this entropy");
                line += "outside the integrability ladder";
            } else if (cls == IntegrabilityClass::orlicz_only) {
                critical = true;
                line += "integrable only for small multiples (critical constraint)";
            } else {
                line += "every multiple integrable (good constraint)";
            }
            ctx.say(line);
        }
        if (verdict == "GOOD" && critical) verdict = "CRITICAL";
    }

    if (verdict == "CRITICAL")
        notes.push_back("dual optimum may pin to the domain boundary; a generalized "
                        "projection with an escaping moment part is possible");

    json rep{{"scenario", ctx.scenario},
             {"verdict", verdict},
             {"mass", jnum(mass)},
             {"components", classes},
             {"notes", notes}};
    write_json(ctx.out / "validate.json", rep);

    std::string tail;
    for (const auto& n : notes) tail += "\n  " + n;
    ctx.say("verdict: " + verdict + tail);
    return verdict == "INVALID" ? 2 : 0;
}

// ------------------------------------------------------------------ cmd_solve

std::vector<double> density_grid(const Measure& R) {
    const Density1D& d = R.density();
    Interval sup = d.support();
    const int N = 2001;
    std::vector<double> z(N);
    bool heavy = d.family() == DensityFamily::exp_poly;
    if (is_finite(sup.lo) && !is_finite(sup.hi)) {
        // geometric spacing resolves the bulk near the left edge and still
        // reaches far enough for the round-trip entropy integral to close;
        // the polynomial tail needs a much larger horizon than the
        // integrator's own truncation point
        double T = heavy ? 1e6 : d.quad().truncation;
        double zmin = T * 1e-8;
        z[0] = sup.lo;
        for (int i = 1; i < N; ++i)
            z[i] = sup.lo + zmin * std::pow(T / zmin, double(i - 1) / double(N - 2));
    } else {
        double lo = is_finite(sup.lo) ? sup.lo : -d.quad().truncation;
        double hi = is_finite(sup.hi) ? sup.hi : d.quad().truncation;
        for (int i = 0; i < N; ++i)
            z[i] = lo + (hi - lo) * double(i) / double(N - 1);
    }
    return z;
}

void write_density_csv(const std::filesystem::path& p, const std::vector<double>& z,
                       const std::function<double(double)>& f,
                       const std::function<double(double)>& log_f) {
    std::string body = "z,density,log_density\n";
    for (double zi : z) {
        // the ratio itself can overflow along an unbounded tilt; the log
        // column stays representable and carries the round-trip
        body += fmt(zi, "%.12g");
        body += ",";
        body += fmt(f(zi), "%.12g");
        body += ",";
        body += fmt(log_f(zi), "%.12g");
        body += "\n";
    }
    write_text(p, body);
}

int solve_builtin(const Ctx& ctx) {
    double c = require_c(ctx);
    const Scenario& scen = *ctx.scen;
    std::optional<ScenarioSolve> ss;
    try {
        ss.emplace(solve_scenario(scen, c));
    } catch (const std::invalid_argument& e) {
        ctx.say(std::string("solve: infeasible: ") + e.what());
        return 3;
    }
    const ProjectionReport& pr = ss->proj;

    const char* kind = pr.kind == ProjectionKind::reference ? "R-itself"
                       : pr.kind == ProjectionKind::projection ? "projection"
                                                               : "generalized";

    // residuals of the density part: unit mass, moment consistency and the
    // dual equality value = y x - Lambda(y)
    double mass_int = scen.R.integrate_weighted([](double) { return 1.0; }, pr.log_density);
    double mom_int = scen.R.integrate_weighted([](double zz) { return zz; }, pr.log_density);
    double flogf = scen.R.integrate_weighted(pr.log_density, pr.log_density);
    double density_entropy = flogf - mass_int + scen.R.mass();
    double fenchel_gap = std::abs(density_entropy - (pr.y * pr.x_hat - pr.lambda_y));

    auto z = density_grid(scen.R);
    write_density_csv(ctx.out / "density.csv", z, pr.density, pr.log_density);

    json sol{{"scenario", ctx.scenario},
             {"c", c},
             {"kind", kind},
             {"dual", json::array({jnum(pr.y)})},
             {"lambda_at_dual", jnum(pr.lambda_y)},
             {"entropy_value", jnum(pr.entropy_value)},
             {"density_entropy", jnum(density_entropy)},
             {"x_hat", jnum(pr.x_hat)},
             {"x_s", jnum(pr.x_s)},
             {"dominating", ss->dominating},
             {"residuals",
              {{"mass", jnum(std::abs(mass_int - 1.0))},
               {"moment", jnum(std::abs(mom_int - pr.x_hat))},
               {"fenchel_gap", jnum(fenchel_gap)}}},
             {"grid", {{"points", (int)z.size()}, {"z_max", z.back()}}}};
    write_json(ctx.out / "solution.json", sol);

    ctx.say("solve: " + ctx.scenario + "  c = " + fmt(c));
    ctx.say("  kind        " + std::string(kind));
    ctx.say("  dual        y = " + fmt(pr.y));
    ctx.say("  entropy     " + fmt(pr.entropy_value));
    if (pr.kind == ProjectionKind::generalized)
        ctx.say("  density part " + fmt(density_entropy) + " (escaping moment " + fmt(pr.x_s) + ")");
    ctx.say("  residuals   mass " + fmt(std::abs(mass_int - 1.0), "%.3g") + "  moment " +
            fmt(std::abs(mom_int - pr.x_hat), "%.3g") + "  fenchel " + fmt(fenchel_gap, "%.3g"));
    ctx.say("  wrote solution.json, density.csv (" + std::to_string(z.size()) + " rows)");
    return 0;
}

int solve_custom(const Ctx& ctx) {
    const MomentProblem& prob = *ctx.prob;
    DualSolution sol = solve_dual(prob);
    if (sol.status == SolveStatus::infeasible) {
        ctx.say("solve: infeasible constraint set");
        return 3;
    }
    if (sol.status == SolveStatus::max_iter)
        fail("dual ascent did not converge; check the problem scaling");

    PrimalDensity fhat = reconstruct_primal(prob, sol);
    double entropy = primal_entropy(prob, fhat);
    FenchelResiduals res = fenchel_residuals(prob, sol, fhat);
    Vec x_hat = tilted_moment(prob, sol.y);

    const char* kind = sol.status == SolveStatus::boundary_optimum ? "generalized"
                       : norm2(sol.y) <= 1e-10 * (1.0 + norm2(x_hat)) ? "R-itself"
                                                                      : "projection";

    if (prob.R.is_discrete()) {
        const auto& d = prob.R.discrete();
        std::string body = "z,density,log_density\n";
        for (std::size_t j = 0; j < d.size(); ++j) {
            double f = fhat.atom_values[j];
            body += fmt(d.point(j), "%.12g") + "," + fmt(f, "%.12g") + "," +
                    fmt(f > 0.0 ? std::log(f) : -kInf, "%.12g") + "\n";
        }
        write_text(ctx.out / "density.csv", body);
    } else {
        auto z = density_grid(prob.R);
        write_density_csv(ctx.out / "density.csv", z, fhat.f, fhat.log_f);
    }

    json out{{"scenario", "custom"},
             {"kind", kind},
             {"dual", jvec(sol.y)},
             {"entropy_value", jnum(sol.dual_value)},
             {"density_entropy", jnum(entropy)},
             {"x_hat", jvec(x_hat)},
             {"status", to_string(sol.status)},
             {"iterations", sol.iterations},
             {"grad_norm", jnum(sol.grad_norm)},
             {"residuals",
              {{"dual_equality_gap", jnum(res.dual_equality_gap)},
               {"d3_gap", jnum(res.d3_gap)}}}};
    write_json(ctx.out / "solution.json", out);

    ctx.say("solve: custom");
    ctx.say("  kind        " + std::string(kind));
    std::string ys;
    for (double y : sol.y) ys += (ys.empty() ? "" : ", ") + fmt(y);
    ctx.say("  dual        y = [" + ys + "]");
    ctx.say("  entropy     " + fmt(sol.dual_value));
    ctx.say("  residuals   dual gap " + fmt(res.dual_equality_gap, "%.3g") + "  identity gap " +
            fmt(res.d3_gap, "%.3g"));
    ctx.say("  wrote solution.json, density.csv");
    return 0;
}

int cmd_solve(const Ctx& ctx) {
    return ctx.scen ? solve_builtin(ctx) : solve_custom(ctx);
}

// ---------------------------------------------------------------- cmd_analyze

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * double(i) / double(n - 1);
    return v;
}

int cmd_analyze(const Ctx& ctx) {
    Measure R = ctx.scen ? ctx.scen->R : ctx.prob->R;
    TestFunction th = TestFunction::identity();
    if (ctx.scen) {
        th = ctx.scen->th;
    } else {
        if (ctx.prob->K() != 1 || ctx.prob->theta[0].is_grid())
            fail("analyze needs a single closed-form test function");
        th = ctx.prob->theta[0];
    }

    LaplaceReport up = steepness_probe(R, th, +1.0);
    json an = ctx.cfg.contains("analyze") ? ctx.cfg.at("analyze") : json::object();

    // default y-grid: stop at the domain edge; a steep edge diverges so pull
    // slightly inside, a non-steep edge is itself finite and worth plotting
    double y_hi_dflt = 2.0;
    if (is_finite(up.y_max)) y_hi_dflt = up.steep ? up.y_max - 1e-3 * (1.0 + std::abs(up.y_max)) : up.y_max;
    double y_lo = opt_num(an, "y_min", -2.0);
    double y_hi = opt_num(an, "y_max", y_hi_dflt);
    int y_n = opt_int(an, "y_count", 61);
    if (!(y_hi > y_lo) || y_n < 2) fail("analyze: need y_min < y_max and y_count >= 2");
    auto ys = linspace(y_lo, y_hi, y_n);
    bool has_zero = false;
    for (double y : ys) has_zero = has_zero || y == 0.0;
    if (!has_zero && y_lo < 0.0 && y_hi > 0.0) {
        ys.push_back(0.0);
        std::sort(ys.begin(), ys.end());
    }

    Interval tr = th.range(R.support().lo, R.support().hi);
    double x_lo_dflt = is_finite(tr.lo) ? tr.lo + 0.05 * (1.0 + std::abs(tr.lo)) : -4.0;
    double x_hi_dflt = is_finite(tr.hi) ? tr.hi - 0.05 * (1.0 + std::abs(tr.hi)) : 4.0;
    if (is_finite(tr.lo) && !is_finite(tr.hi)) {
        x_lo_dflt = tr.lo + 0.1;
        x_hi_dflt = tr.lo + 4.0;
    }
    double x_lo = opt_num(an, "x_min", x_lo_dflt);
    double x_hi = opt_num(an, "x_max", x_hi_dflt);
    int x_n = opt_int(an, "x_count", 79);
    if (!(x_hi > x_lo) || x_n < 2) fail("analyze: need x_min < x_max and x_count >= 2");
    auto xs = linspace(x_lo, x_hi, x_n);

    auto lc = lambda_curve(R, th, ys);
    auto xc = xi_curve(R, th, xs);

    std::string body = "y,lambda\n";
    for (const auto& p : lc) body += fmt(p.arg, "%.9g") + "," + fmt(p.val, "%.9g") + "\n";
    write_text(ctx.out / "lambda_curve.csv", body);

    body = "x,xi\n";
    for (const auto& p : xc) body += fmt(p.arg, "%.9g") + "," + fmt(p.val, "%.9g") + "\n";
    write_text(ctx.out / "xi_curve.csv", body);

    json rec{{"x_star", jnum(up.x_star)},
             {"steep", up.steep},
             {"y_max", jnum(up.y_max)},
             {"lambda_at_y_max", jnum(up.lambda_at_y_max)},
             // past the last reachable mean the transform continues affinely
             // with this slope; a steep scenario has no such tail
             {"affine_tail_slope", up.steep ? json(nullptr) : jnum(up.y_max)}};
    write_json(ctx.out / "recession.json", rec);

    ctx.say("analyze: scenario " + ctx.scenario);
    ctx.say("  lambda grid  [" + fmt(ys.front()) + ", " + fmt(ys.back()) + "] x " +
            std::to_string(ys.size()));
    ctx.say("  xi grid      [" + fmt(xs.front()) + ", " + fmt(xs.back()) + "] x " +
            std::to_string(xs.size()));
    ctx.say("  x_star       " + fmt(up.x_star) + (up.steep ? " (steep)" : " (non-steep)"));
    ctx.say("  wrote lambda_curve.csv, xi_curve.csv, recession.json");
    return 0;
}

// ------------------------------------------------------------------ cmd_gibbs

SimConfig parse_sim_config(const Ctx& ctx) {
    json g = ctx.cfg.contains("gibbs") ? ctx.cfg.at("gibbs") : json::object();
    SimConfig cfg;

    std::string mode = opt_str(g, "mode", "conditional");
    if (mode == "conditional" || mode == "iid") cfg.mode = SimMode::iid_empirical;
    else if (mode == "weighted") cfg.mode = SimMode::weighted_empirical;
    else fail("gibbs.mode: unknown mode \"" + mode + "\"");

    cfg.n = opt_int(g, "n", 100);
    cfg.delta = opt_num(g, "delta", 0.05);
    cfg.trials = opt_int(g, "trials", 100);
    if (cfg.n < 1 || cfg.trials < 1 || cfg.delta <= 0.0)
        fail("gibbs: need n >= 1, trials >= 1, delta > 0");
    cfg.seed = ctx.seed;

    std::string prop = opt_str(g, "proposal", "plain");
    if (prop == "plain") cfg.proposal = ProposalKind::plain_rejection;
    else if (prop == "tilt") cfg.proposal = ProposalKind::exponential_tilt;
    else if (prop == "mixture") cfg.proposal = ProposalKind::boundary_mixture;
    else fail("gibbs.proposal: unknown proposal \"" + prop + "\"");

    cfg.tilt_y = opt_num(g, "tilt_y", 0.0);

    std::string law = opt_str(g, "weight_law", "poisson1");
    if (law == "poisson1") cfg.weight_law = WeightLaw::poisson1;
    else if (law == "exponential1") cfg.weight_law = WeightLaw::exponential1;
    else if (law == "two_point") cfg.weight_law = WeightLaw::two_point;
    else if (law == "normal01") cfg.weight_law = WeightLaw::normal01;
    else fail("gibbs.weight_law: unknown law \"" + law + "\"");

    if (g.contains("bins")) {
        cfg.bins = num_list(g.at("bins"), "gibbs.bins");
        for (std::size_t i = 1; i < cfg.bins.size(); ++i)
            if (cfg.bins[i] <= cfg.bins[i - 1]) fail("gibbs.bins must be strictly increasing");
    }
    cfg.top_k = opt_int(g, "top_k", 1);
    cfg.band = opt_bool(g, "band", false);
    cfg.mixture_beta = opt_num(g, "mixture_beta", 0.5);
    if (cfg.mixture_beta < 0.0 || cfg.mixture_beta > 1.0) fail("gibbs.mixture_beta must be in [0,1]");
    return cfg;
}

int cmd_gibbs(const Ctx& ctx) {
    if (!ctx.scen) fail("gibbs requires a builtin scenario (sampling needs a catalog density)");
    double c = require_c(ctx);
    const Scenario& scen = *ctx.scen;
    SimConfig cfg = parse_sim_config(ctx);
    json g = ctx.cfg.contains("gibbs") ? ctx.cfg.at("gibbs") : json::object();

    json out{{"scenario", ctx.scenario},
             {"c", c},
             {"config",
              {{"mode", cfg.mode == SimMode::iid_empirical ? "conditional" : "weighted"},
               {"n", cfg.n},
               {"delta", cfg.delta},
               {"trials", cfg.trials},
               {"seed", cfg.seed},
               {"proposal", cfg.proposal == ProposalKind::plain_rejection ? "plain"
                            : cfg.proposal == ProposalKind::exponential_tilt ? "tilt"
                                                                             : "mixture"},
               {"tilt_y", cfg.tilt_y},
               {"top_k", cfg.top_k},
               {"band", cfg.band},
               {"mixture_beta", cfg.mixture_beta}}},
             {"xi_reference", jnum(cramer_transform(scen.R, scen.th, c))}};

    try {
        SimResult r = run_conditional_sim(scen, cfg, c);

        std::string body = "bin_lo,bin_hi,mass,target_mass\n";
        for (std::size_t i = 0; i < r.bin_lo.size(); ++i)
            body += fmt(r.bin_lo[i], "%.9g") + "," + fmt(r.bin_hi[i], "%.9g") + "," +
                    fmt(r.conditioned_hist[i], "%.9g") + "," + fmt(r.target_hist[i], "%.9g") + "\n";
        write_text(ctx.out / "histogram.csv", body);

        out["result"] = {{"accepted", r.accepted},
                         {"trials", r.trials},
                         {"acceptance_rate", jnum(r.acceptance_rate)},
                         {"distance_to_target", jnum(r.distance_to_target)},
                         {"bulk_distance_to_target", jnum(r.bulk_distance_to_target)},
                         {"top_particle_over_n", jnum(r.top_particle_over_n)},
                         {"top_particle_stderr", jnum(r.top_particle_stderr)},
                         {"bulk_mean", jnum(r.bulk_mean)},
                         {"bulk_mean_stderr", jnum(r.bulk_mean_stderr)},
                         {"p_hat", jnum(r.p_hat)},
                         {"p_stderr", jnum(r.p_stderr)},
                         {"rate_estimate", jnum(r.rate_estimate)},
                         {"rate_stderr", jnum(r.rate_stderr)},
                         {"ess", jnum(r.ess)},
                         {"bin_lo", jvec(r.bin_lo)},
                         {"bin_hi", jvec(r.bin_hi)},
                         {"conditioned_hist", jvec(r.conditioned_hist)},
                         {"bulk_hist", jvec(r.bulk_hist)},
                         {"target_hist", jvec(r.target_hist)}};

        ctx.say("gibbs: " + ctx.scenario + "  c = " + fmt(c));
        ctx.say("  accepted     " + std::to_string(r.accepted) + " / " + std::to_string(r.trials) +
                " (ess " + fmt(r.ess, "%.4g") + ")");
        ctx.say("  binned TV    " + fmt(r.distance_to_target, "%.4g") + " (bulk " +
                fmt(r.bulk_distance_to_target, "%.4g") + ")");
        ctx.say("  top/n        " + fmt(r.top_particle_over_n, "%.4g") + "  bulk mean " +
                fmt(r.bulk_mean, "%.4g"));
        ctx.say("  rate         " + fmt(r.rate_estimate, "%.6g") + " +- " + fmt(r.rate_stderr, "%.2g"));

        if (opt_bool(g, "singular", false)) {
            SingularDiagnostic sd = singular_diagnostic(scen, cfg, c);
            out["singular"] = {{"topk_ratio_mean", jnum(sd.topk_ratio_mean)},
                               {"topk_ratio_stderr", jnum(sd.topk_ratio_stderr)},
                               {"bulk_mean", jnum(sd.bulk_mean)},
                               {"bulk_mean_stderr", jnum(sd.bulk_mean_stderr)},
                               {"smallest_adequate_k", sd.smallest_adequate_k},
                               {"k_over_n", jnum(sd.k_over_n)}};
            ctx.say("  singular     top-" + std::to_string(cfg.top_k) + "/n " +
                    fmt(sd.topk_ratio_mean, "%.4g") + "  adequate k " +
                    std::to_string(sd.smallest_adequate_k));
        }

        if (g.contains("ladder")) {
            std::vector<int> ns;
            for (const auto& e : g.at("ladder")) {
                if (!e.is_number_integer() || e.get<int>() < 1)
                    fail("gibbs.ladder entries must be positive integers");
                ns.push_back(e.get<int>());
            }
            auto rungs = rate_estimate(scen, cfg, c, ns);
            std::string lad = "n,rate,stderr,accepted,ok\n";
            json jl = json::array();
            for (const auto& ru : rungs) {
                lad += std::to_string(ru.n) + "," + fmt(ru.rate, "%.9g") + "," +
                       fmt(ru.stderr_est, "%.9g") + "," + std::to_string(ru.accepted) + "," +
                       (ru.ok ? "1" : "0") + "\n";
                jl.push_back({{"n", ru.n},
                              {"rate", jnum(ru.rate)},
                              {"stderr", jnum(ru.stderr_est)},
                              {"accepted", ru.accepted},
                              {"ok", ru.ok}});
            }
            write_text(ctx.out / "rate_ladder.csv", lad);
            out["ladder"] = jl;
            ctx.say("  ladder       " + std::to_string(rungs.size()) + " rungs, final rate " +
                    fmt(rungs.back().rate, "%.6g"));
        }
    } catch (const NoAcceptedTrials& e) {
        ctx.say(std::string("gibbs: no accepted trials: ") + e.what());
        return 4;
    }

    write_json(ctx.out / "sim_result.json", out);
    ctx.say("  wrote sim_result.json, histogram.csv");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy projection toolkit: validate assumptions, solve "
                 "moment-constrained projections, sweep transform curves, run "
                 "conditioned-sample experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    long long seed_flag = -1;
    bool quiet = false;

    const char* names[] = {"validate", "solve", "analyze", "gibbs"};
    const char* descs[] = {"check the model assumptions and grade the constraints",
                           "solve the constrained projection and write the density",
                           "sweep the log-integral transform and its conjugate",
                           "conditioned empirical-measure simulation"};
    for (int i = 0; i < 4; ++i) {
        auto* sub = app.add_subcommand(names[i], descs[i]);
        sub->add_option("--config", config_path, "path to the JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory (default: config \"out\" or ./out)");
        sub->add_option("--seed", seed_flag, "override the RNG seed from the config");
        sub->add_flag("--quiet", quiet, "suppress the human report on stdout");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        Ctx ctx = make_context(config_path, out_dir, seed_flag, quiet);
        if (app.got_subcommand("validate")) return cmd_validate(ctx);
        if (app.got_subcommand("solve")) return cmd_solve(ctx);
        if (app.got_subcommand("analyze")) return cmd_analyze(ctx);
        return cmd_gibbs(ctx);
    } catch (const CliError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
