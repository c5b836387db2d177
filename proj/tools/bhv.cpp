// bhv: derivation, certification, case checks and simulation from the command line.
//
// Exit status: 0 all checks pass, 1 verification failure, 2 usage or configuration error.

#include "bhv/cases.hpp"
#include "bhv/constraints.hpp"
#include "bhv/fixtures.hpp"
#include "bhv/groebner.hpp"
#include "bhv/io.hpp"
#include "bhv/numeric.hpp"
#include "bhv/series.hpp"

#include "CLI11.hpp"

#include <openssl/evp.h>
#include <sys/resource.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using bhv::json;

namespace {

constexpr const char *kToolVersion = "1.0.0";
enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string &bytes)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

std::string read_file(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) throw UsageError("cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct ResourceCaps {
    std::size_t max_reductions = bhv::GroebnerOptions{}.max_reductions;
    std::size_t memory_hint_mb = 0;
};

std::size_t env_size(const char *name, std::size_t fallback)
{
    const char *v = std::getenv(name);
    if (!v || !*v) return fallback;
    char *end = nullptr;
    const unsigned long long n = std::strtoull(v, &end, 10);
    if (*end || n == 0) throw UsageError(std::string(name) + " must be a positive integer");
    return static_cast<std::size_t>(n);
}

ResourceCaps read_caps()
{
    ResourceCaps c;
    c.max_reductions = env_size("BHV_MAX_REDUCTIONS", c.max_reductions);
    c.memory_hint_mb = env_size("BHV_MEMORY_HINT_MB", 0);
    if (c.memory_hint_mb) {
        const rlim_t bytes = static_cast<rlim_t>(c.memory_hint_mb) << 20;
        rlimit lim{bytes, bytes};
        setrlimit(RLIMIT_AS, &lim);
    }
    return c;
}

/// Artifacts embed the manifest; timing and output digests go to a separate run log.
class Run {
public:
    Run(std::string subcommand, json parameters, fs::path out_dir)
        : subcommand_(std::move(subcommand)), parameters_(std::move(parameters)), out_(std::move(out_dir)),
          start_(std::chrono::steady_clock::now())
    {
        std::error_code ec;
        fs::create_directories(out_, ec);
        if (ec) throw UsageError("cannot create output directory " + out_.string());
    }

    void input(const std::string &name, const std::string &bytes) { inputs_[name] = sha256_hex(bytes); }

    json manifest() const
    {
        return json{{"subcommand", subcommand_},
                    {"parameters", parameters_},
                    {"tool_version", kToolVersion},
                    {"random_seeds", json::array()},
                    {"inputs", inputs_}};
    }

    fs::path write(const std::string &name, const std::string &content)
    {
        const fs::path p = out_ / name;
        std::ofstream os(p, std::ios::binary);
        os << content;
        if (!os) throw std::runtime_error("cannot write " + p.string());
        outputs_[name] = sha256_hex(content);
        return p;
    }

    fs::path write_json(const std::string &name, json payload)
    {
        const json doc{{"manifest", manifest()}, {"payload", std::move(payload)}};
        return write(name, doc.dump(2) + "\n");
    }

    int finish(int status)
    {
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        json log{{"manifest", manifest()},
                 {"outputs", outputs_},
                 {"exit_status", status},
                 {"timing", {{"wall_seconds", seconds}}}};
        std::ofstream(out_ / (subcommand_ + ".run.json")) << log.dump(2) << "\n";
        return status;
    }

private:
    std::string subcommand_;
    json parameters_;
    fs::path out_;
    std::chrono::steady_clock::time_point start_;
    json inputs_ = json::object();
    json outputs_ = json::object();
};

struct Globals {
    std::string output = "bhv-out";
    std::vector<std::string> perturb;
};

/// NAME=TEXT replacements for the fixture set; a test hook for negative controls.
bhv::FixtureSet fixtures_with(const std::vector<std::string> &perturb)
{
    bhv::FixtureSet fx = bhv::default_fixtures();
    for (const auto &p : perturb) {
        const auto eq = p.find('=');
        if (eq == std::string::npos) throw UsageError("--perturb-fixture expects NAME=TEXT");
        try {
            fx.set(p.substr(0, eq), p.substr(eq + 1));
        } catch (const std::out_of_range &e) {
            throw UsageError(e.what());
        }
    }
    return fx;
}

struct FixtureDiff {
    json rows = json::array();
    std::size_t mismatches = 0;

    void add(const std::string &name, const bhv::Polynomial &derived, const bhv::Polynomial &expected,
             bool up_to_scale = false)
    {
        const bool ok = up_to_scale ? bhv::is_scalar_multiple(derived, expected) : derived == expected;
        if (!ok) ++mismatches;
        rows.push_back({{"fixture", name},
                        {"status", ok ? "match" : "mismatch"},
                        {"derived", bhv::to_string(derived)},
                        {"expected", bhv::to_string(expected)}});
    }
};

int cmd_derive(const Globals &g, unsigned order, const std::string &case_name)
{
    if (order < 8) throw UsageError("--order must be at least 8");
    bhv::CaseTag tag;
    try {
        tag = bhv::parse_case_tag(case_name);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    const bhv::FixtureSet fx = fixtures_with(g.perturb);
    Run run("derive", {{"order", order}, {"case", case_name}, {"perturb_fixture", g.perturb}}, g.output);

    const bhv::ProfileIVP ivp = tag == bhv::CaseTag::VII  ? bhv::ivp::generic(order)
                                : tag == bhv::CaseTag::VI ? bhv::ivp::parallel(order)
                                                          : bhv::ivp::constant_q(order);
    const bhv::ProfileSeries s = bhv::solve_profile_ivp(ivp);
    const bhv::ConstraintSystem sys = bhv::extract_system(s, tag, 6);
    const bhv::VariableSet &R = s.r.variables();
    const bhv::VariableSet &T = sys.target;

    FixtureDiff diff;
    for (unsigned n = 2; n <= 7; ++n) {
        const std::string k = "r" + std::to_string(n);
        diff.add(k, s.r[n], fx.polynomial(k, R));
    }
    if (tag == bhv::CaseTag::VII) {
        for (unsigned n = 2; n <= 6; ++n) {
            const std::string k = "x" + std::to_string(n);
            diff.add(k, s.x[n], fx.polynomial(k, R));
        }
        for (unsigned n = 2; n <= 7; ++n) {
            const std::string k = "y" + std::to_string(n);
            diff.add(k, s.y[n], fx.polynomial(k, R));
        }
        for (const char *e : {"E0", "E2", "E3", "E4", "E5", "E6"}) diff.add(e, sys.at(e).equation, fx.polynomial(e, T));
    } else if (tag == bhv::CaseTag::VI) {
        const bhv::TruncatedSeries comp = bhv::compatibility_series(s);
        const bhv::VariableSet cr{"c0", "c1", "r2", "r3"};
        const std::map<std::string, bhv::Rational> r1zero{{"r1", bhv::Rational(0)}};
        const bhv::Polynomial shape = fx.polynomial("VI.comp2", cr).substitute(
            {{"r2", s.r[2].substitute(r1zero)}, {"r3", s.r[3].substitute(r1zero)}}, R);
        diff.add("VI.comp2", comp[2].substitute(r1zero) / bhv::Rational(2), shape);
        diff.add("VI.comp2.r1zero", comp[2].substitute(r1zero) / bhv::Rational(2), fx.polynomial("VI.comp2.r1zero", R));
    }

    const json payload{{"series", bhv::profile_series_to_json(s)},
                       {"system", bhv::system_to_json(sys)},
                       {"fixture_diff", diff.rows}};
    const std::string stem = "derive_" + case_name;
    run.write_json(stem + ".json", payload);

    std::ostringstream txt;
    txt << "derive case " << case_name << " order " << order << ": " << diff.rows.size() - diff.mismatches << "/"
        << diff.rows.size() << " fixtures match\n";
    for (const auto &e : sys.equations) txt << "  " << e.label << " (" << e.origin << "): " << bhv::to_string(e.equation) << "\n";
    for (const auto &r : diff.rows)
        if (r["status"] == "mismatch")
            txt << "  MISMATCH " << r["fixture"].get<std::string>() << "\n    derived:  " << r["derived"].get<std::string>()
                << "\n    expected: " << r["expected"].get<std::string>() << "\n";
    run.write(stem + ".txt", txt.str());
    std::cout << txt.str();
    return run.finish(diff.mismatches ? kFailure : kOk);
}

bhv::MembershipCertificate load_certificate(const std::string &path)
{
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error &e) {
        throw UsageError(path + ": " + e.what());
    }
    try {
        if (j.contains("payload")) j = j["payload"];
        if (j.contains("certificate")) j = j["certificate"];
        return bhv::certificate_from_json(j);
    } catch (const std::exception &e) {
        throw UsageError(path + ": " + e.what());
    }
}

int verify_only(const std::string &path)
{
    const bhv::MembershipCertificate c = load_certificate(path);
    const bool member = c.is_member();
    const bool identity = c.verify();
    std::cout << "certificate " << path << "\n"
              << "  target: " << bhv::to_string(c.target) << "\n"
              << "  generators: " << c.generators.size() << "\n"
              << "  remainder zero: " << (member ? "yes" : "no") << "\n"
              << "  identity re-expands: " << (identity ? "yes" : "no") << "\n";
    return member && identity ? kOk : kFailure;
}

int cmd_certify(const Globals &g, const ResourceCaps &caps, const std::string &target_text, const std::string &verify_path)
{
    if (!verify_path.empty()) return verify_only(verify_path);

    Run run("certify", {{"target", target_text}, {"max_reductions", caps.max_reductions}}, g.output);
    const bhv::ConstraintSystem sys =
        bhv::extract_system(bhv::solve_profile_ivp(bhv::ivp::generic(10)), bhv::CaseTag::VII, 6);
    const bhv::VariableSet &T = sys.target;
    bhv::Polynomial target;
    try {
        target = bhv::parse_polynomial(target_text, T);
    } catch (const std::exception &e) {
        throw UsageError(std::string("--target: ") + e.what());
    }

    bhv::IdealPresentation lex{{}, bhv::OrderKind::lex};
    for (const char *e : {"E0", "E2", "E3", "E4", "E5", "E6"}) lex.generators.push_back(sys.at(e).equation);
    bhv::GroebnerOptions opts;
    opts.max_reductions = caps.max_reductions;
    opts.track_provenance = false;
    const bhv::GroebnerBasis basis = bhv::buchberger(lex, opts);
    const bhv::Polynomial rem = bhv::reduce(target.with_order(bhv::OrderKind::lex), basis.elements).remainder;
    const bool reduced = bhv::is_reduced(basis.elements) && bhv::is_groebner_basis(basis.elements);
    run.write_json("basis_lex.json", bhv::basis_to_json(basis));

    std::cout << "lex basis (A > B > u > p > t): " << basis.elements.size() << " elements, "
              << basis.stats.reductions << " reductions, reduced " << (reduced ? "yes" : "no") << "\n";
    std::cout << "normal form of " << bhv::to_string(target) << ": "
              << (rem.is_zero() ? std::string("0") : bhv::to_string(rem)) << "\n";
    if (!target.is_zero())
        std::cout << "target is a basis element: "
                  << (basis.contains_element(target.with_order(bhv::OrderKind::lex)) ? "yes" : "no") << "\n";
    if (!reduced) return run.finish(kFailure);
    if (!rem.is_zero()) {
        if (target.is_constant())
            std::cout << "note: the basis lacks the unit, so the ideal is proper and contains no nonzero constant\n";
        else
            std::cout << "note: the target is not in the ideal\n";
        return run.finish(kFailure);
    }

    bhv::IdealPresentation grevlex{lex.generators, bhv::OrderKind::grevlex};
    bhv::GroebnerOptions copts;
    copts.max_reductions = caps.max_reductions;
    const bhv::MembershipCertificate cert = bhv::certify_membership(grevlex, target, copts);
    const fs::path cpath = run.write_json("certificate.json", {{"certificate", bhv::certificate_to_json(cert)}});
    const bhv::MembershipCertificate back = load_certificate(cpath.string());
    const bool ok = cert.is_member() && back.verify();
    std::size_t terms = 0;
    for (const auto &k : cert.cofactors) terms += k.size();
    std::cout << "certificate: " << terms << " cofactor terms, identity re-expands " << (ok ? "yes" : "no")
              << "; written to " << cpath.string() << "\n";
    return run.finish(ok ? kOk : kFailure);
}

int cmd_check_cases(const Globals &g, const std::vector<std::string> &selection)
{
    static const std::vector<std::string> all_ids{"I", "II", "III", "IV", "V", "VI", "VII"};
    std::vector<std::string> ids;
    for (const auto &s : selection) {
        if (s == "all") {
            ids = all_ids;
            break;
        }
        if (std::find(all_ids.begin(), all_ids.end(), s) == all_ids.end()) throw UsageError("unknown case '" + s + "'");
        if (std::find(ids.begin(), ids.end(), s) == ids.end()) ids.push_back(s);
    }
    if (ids.empty()) ids = all_ids;
    const bhv::FixtureSet fx = fixtures_with(g.perturb);
    Run run("check-cases", {{"selection", ids}, {"perturb_fixture", g.perturb}}, g.output);

    std::vector<bhv::CaseReport> reports;
    if (ids == all_ids) reports = bhv::check_all_cases(fx);
    else
        for (const auto &id : ids) reports.push_back(bhv::check_case(id, fx));

    json arr = json::array();
    std::string summary;
    std::size_t verified = 0;
    for (const auto &r : reports) {
        arr.push_back(bhv::report_to_json(r));
        summary += bhv::report_summary(r);
        verified += r.verified();
    }
    summary += std::to_string(verified) + "/" + std::to_string(reports.size()) + " cases contradiction-verified\n";
    run.write_json("cases.json", arr);
    run.write("cases.txt", summary);
    std::cout << summary;
    for (const auto &r : reports)
        if (const bhv::CaseStep *f = r.first_failure())
            std::cerr << "case " << r.case_id << " failed at: " << f->description << " (" << f->detail << ")\n";
    return run.finish(verified == reports.size() ? kOk : kFailure);
}

struct SimOptions {
    std::string preset;
    std::string sweep;
    double step = 1e-3;
    double window = 2;
    double threshold = 1e-6;
};

int cmd_simulate(const Globals &g, const SimOptions &o)
{
    if (o.preset.empty() == o.sweep.empty()) throw UsageError("give exactly one of --preset or --sweep");
    if (!(o.step > 0) || !(o.window > 0) || !(o.threshold > 0))
        throw UsageError("--step, --window and --threshold must be positive");
    if (!o.sweep.empty() && o.sweep != "default") throw UsageError("--sweep accepts only 'default'");
    if (!o.preset.empty() && o.preset != "catenoid" && o.preset != "cylinder")
        throw UsageError("--preset must be catenoid or cylinder");
    Run run("simulate",
            {{"preset", o.preset}, {"sweep", o.sweep}, {"step", o.step}, {"window", o.window}, {"threshold", o.threshold}},
            g.output);

    if (!o.sweep.empty()) {
        const auto rows = bhv::sweep_nonminimal(bhv::default_sweep_grid(), {o.window, o.step, o.threshold});
        std::ostringstream csv;
        csv << "r0,r1,c0,c1,alpha,beta,x1,y1,x1_from,violated,tau_violation,max_arc,max_comp,truncated\n";
        csv.precision(10);
        std::size_t violated = 0, truncated = 0;
        for (const auto &r : rows) {
            const auto &p = r.point;
            csv << p.r0 << ',' << p.r1 << ',' << p.c0 << ',' << p.c1 << ',' << p.alpha << ',' << p.beta << ',' << r.x1
                << ',' << r.y1 << ',' << r.x1_from << ',' << r.violated << ',' << r.tau_violation << ',' << r.max_arc
                << ',' << r.max_comp << ',' << r.truncated << '\n';
            violated += r.violated;
            truncated += r.truncated;
        }
        run.write_json("sweep.json", bhv::sweep_to_json(rows));
        run.write("sweep.csv", csv.str());
        std::cout << "sweep: " << rows.size() << " points, " << violated << " violate a constraint within |tau| <= "
                  << o.window << ", " << truncated << " truncated\n";
        return run.finish(kOk);
    }

    const bool cat = o.preset == "catenoid";
    const bhv::ProfileState init = cat ? bhv::catenoid_initial() : bhv::cylinder_initial();
    const bhv::ProfileParams par = cat ? bhv::ProfileParams{} : bhv::cylinder_params();
    const bhv::Trajectory t = bhv::integrate_window(init, par, o.window, o.step);
    if (t.truncated) {
        std::cerr << "integration stopped: " << t.reason << "\n";
        return run.finish(kFailure);
    }
    bhv::ResidualReport res = bhv::biharmonic_residual(t);
    const bhv::SurfaceProfile prof = cat ? bhv::catenoid_profile() : bhv::cylinder_profile();
    const double coarse = bhv::surface_laplacian_gap(prof, 40, 32);
    const double fine = bhv::surface_laplacian_gap(prof, 80, 64);
    res.surface_laplacian_gap = fine;

    std::ostringstream csv;
    bhv::write_trajectory_csv(csv, t);
    run.write(o.preset + "_trajectory.csv", csv.str());

    bool ok;
    json checks = json::object();
    if (cat) {
        ok = res.biharmonic < o.threshold && res.arc_defect < o.threshold;
        checks = {{"biharmonic_below_threshold", res.biharmonic < o.threshold},
                  {"arc_defect_below_threshold", res.arc_defect < o.threshold},
                  {"laplacian_gap_ratio", coarse / fine}};
    } else {
        ok = std::abs(res.c_equation - 1) < o.threshold;
        checks = {{"c_equation_near_one", ok}, {"laplacian_gap", fine}};
    }
    run.write_json(o.preset + "_residuals.json", {{"residuals", bhv::residuals_to_json(res)},
                                                  {"laplacian_gap_coarse", coarse},
                                                  {"laplacian_gap_fine", fine},
                                                  {"checks", checks}});
    std::cout << std::setprecision(3) << o.preset << ": " << t.states.size() << " states, arc defect "
              << res.arc_defect << ", biharmonic residual " << res.biharmonic << ", c-equation " << res.c_equation
              << ", Laplacian gap " << coarse << " -> " << fine << "\n";
    return run.finish(ok ? kOk : kFailure);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact derivation, certificates and numeric checks for rotational biharmonic surfaces"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--output", g.output, "Directory for artifacts")->capture_default_str();

    unsigned order = 10;
    std::string case_name = "VII";
    auto *derive = app.add_subcommand("derive", "Solve the profile series and extract a constraint system");
    derive->add_option("--order", order, "Series order (at least 8)")->capture_default_str();
    derive->add_option("--case", case_name, "V, VI or VII")->capture_default_str();
    derive->add_option("--perturb-fixture", g.perturb, "Test hook: NAME=TEXT replaces a fixture");

    std::string target = "p*t^4", verify_path;
    auto *certify = app.add_subcommand("certify", "Groebner basis and ideal-membership certificate");
    certify->add_option("--target", target, "Polynomial over [A, B, u, p, t]")->capture_default_str();
    certify->add_option("--verify-only", verify_path, "Re-check a stored certificate without recomputation");

    std::vector<std::string> selection;
    auto *cases = app.add_subcommand("check-cases", "Run the case verifiers");
    cases->add_option("selection", selection, "all, or case ids I .. VII");
    cases->add_option("--case", selection, "Case id; may repeat");
    cases->add_option("--perturb-fixture", g.perturb, "Test hook: NAME=TEXT replaces a fixture");

    SimOptions sim;
    auto *simulate = app.add_subcommand("simulate", "Integrate the profile system numerically");
    simulate->add_option("--preset", sim.preset, "catenoid or cylinder");
    simulate->add_option("--sweep", sim.sweep, "default");
    simulate->add_option("--step", sim.step, "Integration step")->capture_default_str();
    simulate->add_option("--window", sim.window, "Half-width of the tau window")->capture_default_str();
    simulate->add_option("--threshold", sim.threshold, "Residual threshold")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        const ResourceCaps caps = read_caps();
        if (*derive) return cmd_derive(g, order, case_name);
        if (*certify) return cmd_certify(g, caps, target, verify_path);
        if (*cases) return cmd_check_cases(g, selection);
        if (*simulate) return cmd_simulate(g, sim);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const bhv::ResourceLimitExceeded &e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kFailure;
    } catch (const std::bad_alloc &) {
        std::cerr << "out of memory\n";
        return kFailure;
    } catch (const std::exception &e) {
        std::cerr << "failure: " << e.what() << "\n";
        return kFailure;
    }
    return kUsage;
}
