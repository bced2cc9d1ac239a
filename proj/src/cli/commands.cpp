#include "hfinsler/commands.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "hfinsler/curvature.hpp"
#include "hfinsler/errors.hpp"
#include "hfinsler/rigidity.hpp"
#include "hfinsler/space_file.hpp"

namespace hfinsler::cli {

using nlohmann::json;

namespace {

constexpr double kNonnegativeSlack = 1e-12;

std::string fmt(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".en") == std::string::npos) s += ".0";
    return s;
}

std::string fmt(const Eigen::VectorXd& v) {
    std::string s = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v(i));
    return s + ")";
}

json to_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

json to_json(const std::vector<std::complex<double>>& ev) {
    json a = json::array();
    for (const auto& z : ev) a.push_back({z.real(), z.imag()});
    return a;
}

struct Styler {
    bool color;
    std::string ok(const std::string& s) const { return color ? "\033[32m" + s + "\033[0m" : s; }
    std::string bad(const std::string& s) const { return color ? "\033[31m" + s + "\033[0m" : s; }
    std::string verdict(bool pass) const { return pass ? ok("PASS") : bad("FAIL"); }
};

json base_record(const CommandOptions& o, const std::string& space_name) {
    return json{{"command", o.command},
                {"space", space_name},
                {"verdict", nullptr},
                {"value", nullptr},
                {"residuals", json::object()},
                {"tolerances", {{"tol", o.tol}}},
                {"seed", o.seed}};
}

Eigen::VectorXd vector_arg(const std::string& csv, const char* flag, const LieAlgebra& alg) {
    if (csv.empty()) throw InvalidInput(std::string("missing required option ") + flag);
    Eigen::VectorXd v = parse_vector(csv);
    if (v.size() != alg.dim()) {
        throw InvalidInput(std::string(flag) + " has " + std::to_string(v.size()) + " coefficients, basis has " +
                           std::to_string(alg.dim()));
    }
    return v;
}

SampleOptions sample_options(const CommandOptions& o) { return {o.samples, o.seed, SampleMode::low_discrepancy}; }

CommandOutcome cmd_validate(const CommandOptions& o, const Space& s, const Styler& st) {
    CommandOutcome out;
    out.record = base_record(o, s.name);
    const JacobiReport jac = validate_jacobi(*s.algebra, kDefaultLieTol);
    const ClosureReport closure = ReductiveDecomposition::check_closure(
        *s.algebra, s.decomposition->h_indices(), s.decomposition->m_indices(), kDefaultLieTol);
    const AdmissibilityReport adm = check_admissible(*s.norm, sample_options(o));
    const InvarianceReport inv = check_adH_invariance(*s.norm, *s.decomposition, sample_options(o), o.tol);

    const bool pass = jac.pass && closure.pass && adm.pass && inv.pass;
    out.exit_code = pass ? kExitOk : kExitFail;
    out.record["verdict"] = pass ? "pass" : "fail";
    out.record["residuals"] = {{"jacobi", jac.max_residual},
                               {"closure_hh", closure.hh_residual},
                               {"closure_hm", closure.hm_residual},
                               {"adH_invariance", inv.max_residual}};
    out.record["tolerances"]["lie"] = kDefaultLieTol;
    out.record["norm"] = {{"family", to_string(s.norm->family())},
                          {"admissible", adm.pass},
                          {"sampled", adm.sampled},
                          {"min_eigenvalue", adm.min_eigenvalue},
                          {"detail", adm.detail}};
    out.record["dim_g"] = s.algebra->dim();
    out.record["dim_h"] = s.decomposition->dim_h();
    out.record["dim_m"] = s.decomposition->dim_m();

    std::ostringstream os;
    os << "space " << s.name << ": dim g = " << s.algebra->dim() << ", dim h = " << s.decomposition->dim_h()
       << ", dim m = " << s.decomposition->dim_m() << ", norm " << to_string(s.norm->family()) << "\n";
    os << "  Jacobi residual        " << fmt(jac.max_residual) << "  " << st.verdict(jac.pass) << "\n";
    os << "  closure residual       " << fmt(std::max(closure.hh_residual, closure.hm_residual)) << "  "
       << st.verdict(closure.pass) << "\n";
    os << "  norm admissible        " << adm.detail << "  " << st.verdict(adm.pass) << "\n";
    os << "  Ad(H)-invariance       " << fmt(inv.max_residual) << "  " << st.verdict(inv.pass) << "\n";
    out.text = os.str();
    return out;
}

json verdict_json(const ClassificationVerdict& v) {
    json j{{"admits_negative_metric", v.admits_negative_metric},
           {"dim_g", v.dim_g},
           {"dim_derived", v.dim_derived},
           {"failure_reason", to_string(v.failure_reason)},
           {"sign_flipped", v.sign_flipped},
           {"borderline", v.borderline}};
    if (v.chosen_u.size() > 0) j["chosen_u"] = to_json(v.chosen_u);
    if (v.spectrum) {
        j["eigenvalues"] = to_json(v.spectrum->eigenvalues);
        j["operator_norm"] = v.spectrum->operator_norm;
    }
    return j;
}

CommandOutcome cmd_classify(const CommandOptions& o, const Space& s) {
    CommandOutcome out;
    out.record = base_record(o, s.name);
    const ClassificationVerdict v = classify_solvable_negative(*s.algebra, kDefaultLieTol);
    out.exit_code = v.admits_negative_metric ? kExitOk : kExitFail;
    out.record["verdict"] = v.admits_negative_metric ? "admits" : "does-not-admit";
    out.record["value"] = verdict_json(v);
    out.record["tolerances"]["lie"] = kDefaultLieTol;
    out.text = v.summary() + "\n";
    return out;
}

CommandOutcome cmd_flag(const CommandOptions& o, const Space& s) {
    CommandOutcome out;
    out.record = base_record(o, s.name);
    const Eigen::VectorXd u = vector_arg(o.u, "--u", *s.algebra);
    const Eigen::VectorXd v = vector_arg(o.v, "--v", *s.algebra);
    try {
        const FlagCurvatureResult r = flag_curvature_go(*s.decomposition, *s.norm, u, v, o.tol);
        out.record["verdict"] = "applicable";
        out.record["value"] = r.curvature;
        out.record["residuals"] = {{"commutator", r.commutator_residual},
                                   {"anchor_condition", r.anchor_residual},
                                   {"critical_point", r.critical_residual},
                                   {"independence", r.independence}};
        out.record["u_vector"] = to_json(r.u_vector);
        out.record["numerator"] = r.numerator;
        out.record["denominator"] = r.denominator;
        std::ostringstream os;
        os << "K = " << fmt(r.curvature) << "\n"
           << "  U(u,v) = " << fmt(r.u_vector) << "\n"
           << "  numerator " << fmt(r.numerator) << ", denominator " << fmt(r.denominator) << "\n"
           << "  anchor condition residual " << fmt(r.anchor_residual) << ", critical-point residual "
           << fmt(r.critical_residual) << "\n";
        out.text = os.str();
    } catch (const Inapplicable& e) {
        out.exit_code = kExitInapplicable;
        out.record["verdict"] = "inapplicable";
        out.record["condition"] = e.condition();
        out.record["residuals"] = {{e.condition(), e.residual()}};
        out.record["tolerances"]["threshold"] = e.threshold();
        out.text = "formula inapplicable: " + e.condition() + " residual " + fmt(e.residual()) + " (threshold " +
                   fmt(e.threshold()) + ")\n";
    }
    return out;
}

CommandOutcome cmd_sectional(const CommandOptions& o, const Space& s) {
    CommandOutcome out;
    out.record = base_record(o, s.name);
    const Eigen::VectorXd x = vector_arg(o.x, "--x", *s.algebra);
    const Eigen::VectorXd y = vector_arg(o.y, "--y", *s.algebra);
    const double k = riemannian_sectional(*s.decomposition, *s.norm, x, y, o.tol);
    out.record["verdict"] = "computed";
    out.record["value"] = k;
    out.text = "sectional curvature = " + fmt(k) + "\n";
    return out;
}

CommandOutcome cmd_ricci(const CommandOptions& o, const Space& s) {
    CommandOutcome out;
    out.record = base_record(o, s.name);
    const Eigen::VectorXd y = vector_arg(o.y, "--y", *s.algebra);
    RicciBackend backend;
    if (o.backend == "go") {
        backend = RicciBackend::go_formula;
    } else if (o.backend == "riemannian") {
        backend = RicciBackend::riemannian;
    } else {
        throw InvalidInput("--backend must be 'go' or 'riemannian'");
    }
    out.record["backend"] = o.backend;
    try {
        const RicciResult r = ricci_scalar(*s.decomposition, *s.norm, y, backend, o.tol);
        out.record["verdict"] = r.complete() ? "complete" : "partial";
        out.record["value"] = r.value;
        out.record["covered"] = r.covered;
        out.record["uncovered"] = r.uncovered;
        json flags = json::array();
        std::ostringstream os;
        os << "Ricci scalar = " << fmt(r.value) << (r.complete() ? "" : " (partial)") << "\n"
           << "  flags covered " << r.covered << " of " << (r.covered + r.uncovered) << "\n";
        for (const auto& f : r.flags) {
            json jf{{"direction", to_json(f.direction)}, {"covered", f.covered}};
            if (f.covered) {
                jf["curvature"] = f.curvature;
                os << "  e = " << fmt(f.direction) << ": K = " << fmt(f.curvature) << "\n";
            } else {
                jf["reason"] = f.reason;
                os << "  e = " << fmt(f.direction) << ": uncovered (" << f.reason << ")\n";
            }
            flags.push_back(jf);
        }
        out.record["flags"] = flags;
        out.text = os.str();
    } catch (const Inapplicable& e) {
        out.exit_code = kExitInapplicable;
        out.record["verdict"] = "inapplicable";
        out.record["condition"] = e.condition();
        out.text = std::string("Ricci scalar unavailable: ") + e.what() + "\n";
    }
    return out;
}

CommandOutcome cmd_go_check(const CommandOptions& o, const Space& s, const Styler& st) {
    CommandOutcome out;
    out.record = base_record(o, s.name);
    const GOReport r = is_geodesic_orbit(*s.decomposition, *s.norm, sample_options(o), o.tol);
    out.exit_code = r.pass ? kExitOk : kExitFail;
    out.record["verdict"] = r.pass ? "pass" : "fail";
    out.record["value"] = r.max_residual;
    out.record["residuals"] = {{"max", r.max_residual}};
    out.record["tolerances"]["threshold"] = r.tolerance;
    out.record["samples"] = r.sample_count;
    out.record["probes"] = r.probe_count;
    out.record["failure_count"] = r.failures.size();
    if (r.worst_sample.size() > 0) out.record["worst_sample"] = to_json(r.worst_sample);
    json fails = json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(r.failures.size(), 20); ++i) {
        fails.push_back({{"index", r.failures[i].index},
                         {"sample", to_json(r.failures[i].sample)},
                         {"residual", r.failures[i].residual}});
    }
    out.record["failures"] = fails;
    std::ostringstream os;
    os << "geodesic orbit check (" << r.probe_count << " basis probes + " << r.sample_count << " samples, seed "
       << r.seed << "): " << st.verdict(r.pass) << "\n"
       << "  worst residual " << fmt(r.max_residual);
    if (r.worst_sample.size() > 0) os << " at " << fmt(r.worst_sample);
    os << "\n  failing directions " << r.failures.size() << "\n";
    out.text = os.str();
    return out;
}

CommandOutcome cmd_scan(const CommandOptions& o, const Space& s, const Styler& st) {
    CommandOutcome out;
    out.record = base_record(o, s.name);
    std::ostringstream os;

    // curvature of flags inside an abelian ideal (reported whenever one sits in m)
    if (auto ideal = find_abelian_ideal(*s.algebra, kDefaultLieTol)) {
        bool in_m = true;
        for (int i = 0; i < ideal->dim(); ++i) in_m = in_m && s.decomposition->h_leakage(ideal->vector(i)) <= 1e-9;
        if (in_m) {
            const auto rep = abelian_ideal_flag_scan(*s.decomposition, *s.norm, *ideal, sample_options(o), o.tol);
            out.record["ideal_scan"] = {{"dim", ideal->dim()},
                                        {"applicable", rep.applicable},
                                        {"skipped", rep.skipped},
                                        {"min_curvature", rep.applicable ? json(rep.min_curvature) : json(nullptr)}};
            os << "abelian ideal (dim " << ideal->dim() << ") flags: " << rep.applicable << " applicable, "
               << rep.skipped << " skipped";
            if (rep.applicable) os << ", min K = " << fmt(rep.min_curvature);
            os << "\n";
        }
    }

    ImplicationReport rep;
    try {
        rep = positivity_implies_spectrum(*s.decomposition, *s.norm, sample_options(o), o.tol);
    } catch (const InvalidInput& e) {
        out.exit_code = kExitInapplicable;
        out.record["verdict"] = "inapplicable";
        out.record["condition"] = e.what();
        os << "bracket positivity scan inapplicable: " << e.what() << "\n";
        out.text = os.str();
        return out;
    }
    const bool positive = rep.scan_plus.pass || rep.scan_minus.pass;
    const bool pass = positive && rep.consistent;
    out.exit_code = pass ? kExitOk : kExitFail;
    out.record["verdict"] = pass ? "pass" : "fail";
    out.record["value"] = std::max(rep.scan_plus.min_value, rep.scan_minus.min_value);
    out.record["residuals"] = {{"min_plus", rep.scan_plus.min_value}, {"min_minus", rep.scan_minus.min_value}};
    out.record["consistent"] = rep.consistent;
    out.record["classification"] = verdict_json(rep.verdict);
    out.record["samples"] = o.samples;
    if (!rep.consistent) out.record["counterexample"] = rep.counterexample;

    os << "bracket positivity g_u(u,[u',u]) on [g,g] with u' = " << fmt(rep.verdict.chosen_u) << "\n"
       << "  +u': min " << fmt(rep.scan_plus.min_value) << " " << st.verdict(rep.scan_plus.pass) << "\n"
       << "  -u': min " << fmt(rep.scan_minus.min_value) << " " << st.verdict(rep.scan_minus.pass) << "\n"
       << "  classifier: " << rep.verdict.summary() << "\n"
       << "  positivity => spectrum: " << (rep.consistent ? st.ok("consistent") : st.bad(rep.counterexample)) << "\n";
    out.text = os.str();
    return out;
}

CommandOutcome dispatch(const CommandOptions& o, const Space& s, const Styler& st) {
    if (o.command == "validate") return cmd_validate(o, s, st);
    if (o.command == "classify") return cmd_classify(o, s);
    if (o.command == "flag") return cmd_flag(o, s);
    if (o.command == "sectional") return cmd_sectional(o, s);
    if (o.command == "ricci") return cmd_ricci(o, s);
    if (o.command == "go-check") return cmd_go_check(o, s, st);
    if (o.command == "scan") return cmd_scan(o, s, st);
    if (o.command == "all") {
        CommandOutcome all;
        all.record = base_record(o, s.name);
        json results = json::object();
        int code = kExitOk;
        for (const char* sub : {"validate", "classify", "go-check", "scan"}) {
            CommandOptions so = o;
            so.command = sub;
            CommandOutcome r = dispatch(so, s, st);
            code = std::max(code, r.exit_code);
            results[sub] = r.record;
            all.text += std::string("== ") + sub + "\n" + r.text;
        }
        all.exit_code = code;
        all.record["verdict"] = code == kExitOk ? "pass" : "fail";
        all.record["results"] = results;
        return all;
    }
    throw InvalidInput("unknown command '" + o.command + "'");
}

} // namespace

Eigen::VectorXd parse_vector(const std::string& csv) {
    std::vector<double> vals;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t end = std::min(csv.find(',', start), csv.size());
        std::string tok = csv.substr(start, end - start);
        tok.erase(0, tok.find_first_not_of(" \t"));
        tok.erase(tok.find_last_not_of(" \t") + 1);
        double v = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
            throw InvalidInput("malformed vector '" + csv + "': expected comma-separated numbers");
        }
        vals.push_back(v);
        start = end + 1;
    }
    return Eigen::Map<const Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

CommandOutcome run_command(const CommandOptions& o) {
    const Styler st{o.color};
    auto invalid = [&](const std::string& name, const std::string& msg, const std::vector<std::string>& all) {
        CommandOutcome out;
        out.exit_code = kExitInvalid;
        out.record = base_record(o, name);
        out.record["verdict"] = "invalid-input";
        out.record["errors"] = all;
        out.text = "invalid input: " + msg + "\n";
        return out;
    };

    Space space;
    try {
        space = load_space(o.space_path);
    } catch (const ValidationError& e) {
        return invalid(o.space_path, e.what(), e.violations());
    } catch (const InvalidInput& e) {
        return invalid(o.space_path, e.what(), {e.what()});
    }
    try {
        return dispatch(o, space, st);
    } catch (const InvalidInput& e) {
        return invalid(space.name, e.what(), {e.what()});
    } catch (const Inapplicable& e) {
        CommandOutcome out;
        out.exit_code = kExitInapplicable;
        out.record = base_record(o, space.name);
        out.record["verdict"] = "inapplicable";
        out.record["condition"] = e.condition();
        out.text = std::string("inapplicable: ") + e.what() + "\n";
        return out;
    } catch (const std::exception& e) {
        return invalid(space.name, e.what(), {e.what()});
    }
}

} // namespace hfinsler::cli
