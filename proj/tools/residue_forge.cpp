#include "rforge/cech.hpp"
#include "rforge/errors.hpp"
#include "rforge/milnor.hpp"
#include "rforge/pairing.hpp"
#include "rforge/parse.hpp"
#include "rforge/residue.hpp"
#include "rforge/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>
#include <regex>
#include <set>
#include <sstream>

using namespace rforge;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "residue-forge/1";

enum Exit { kOk = 0, kValidation = 1, kParse = 2, kCounterexample = 3, kInternal = 4 };

struct Job {
    std::string command;
    std::string f;
    std::string vars;
    std::string h = "1";
    std::string g = "1";
    std::string etas;
    std::string convention = "hres";
    std::string suite = "all";
    std::string twist = "plus";
    std::string format = "json";
    int order = 4;
    int trials = 25;
    std::uint64_t seed = 7;
    unsigned jobs = 1;
    bool pair_given = false;
    bool check_certificates = false;
};

/// Identifiers of f in sorted order, for jobs without --vars.
std::vector<std::string> infer_vars(const std::string& text) {
    static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
    std::set<std::string> names;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), ident); it != std::sregex_iterator(); ++it)
        names.insert(it->str());
    return {names.begin(), names.end()};
}

std::string series_text(const ShiftedSeries& s, int order) {
    std::string out;
    for (int k = 0; k <= order; ++k) {
        const Rational c = s.coeffs[k];
        if (c == 0) continue;
        if (!out.empty()) out += " + ";
        out += to_string(c) + " u^" + std::to_string(k + s.shift);
    }
    return out.empty() ? "0" : out;
}

Json series_json(const ShiftedSeries& s, int order) {
    Json coeffs = Json::array();
    for (int k = 0; k <= order; ++k) coeffs.push_back(to_string(s.coeffs[k]));
    return Json{{"shift", s.shift}, {"coeffs", coeffs}};
}

Json strings(const std::vector<MultiPoly>& ps) {
    Json a = Json::array();
    for (const auto& p : ps) a.push_back(p.str());
    return a;
}

Json report_json(const VerifyReport& r) {
    const auto failure = [](const VerifyFailure& f) {
        return Json{{"fingerprint", f.fingerprint}, {"check", f.check}, {"input", f.input},
                    {"expected", f.expected},       {"got", f.got}};
    };
    Json failures = Json::array();
    for (const auto& f : r.failures) failures.push_back(failure(f));
    Json j{{"suite", r.suite},   {"f", r.f},         {"seed", r.seed},         {"trials", r.trials},
           {"order", r.order},   {"instances", r.instances}, {"passed", r.passed()}, {"failures", failures}};
    j["smallest_failure"] = r.smallest() ? failure(*r.smallest()) : Json(nullptr);
    j["notes"] = r.notes;
    return j;
}

class Runner {
public:
    explicit Runner(const Job& job) : job_(job) {}

    int run(Json& out, std::ostream& text) {
        if (job_.order < 0) throw UsageError("--order must be non-negative");
        if (job_.f.empty()) throw UsageError("--f is required");
        const std::vector<std::string> names = job_.vars.empty() ? infer_vars(job_.f) : split_list(job_.vars);
        if (names.empty()) throw UsageError("no variables: pass --vars");
        vars_ = VarSet::make(names);
        f_ = parse_poly(job_.f, vars_);
        if (job_.pair_given) {
            h_ = parse_poly(job_.h, vars_);
            g_ = parse_poly(job_.g, vars_);
        }
        std::vector<MultiPoly> etas;
        if (!job_.etas.empty())
            for (const auto& e : split_list(job_.etas)) etas.push_back(parse_poly(e, vars_));
        residue_engine().set_check_raised_certificates(job_.check_certificates);

        out["schema"] = kSchema;
        out["command"] = job_.command;
        out["f"] = f_.str();
        out["vars"] = names;

        const std::string& c = job_.command;
        if (c == "chern") return chern(out, text);
        const MilnorAlgebra alg = milnor_data(f_);
        if (c == "milnor") return milnor(alg, out, text);
        if (c == "residue") return residue(out, text);
        if (c == "pairing" || c == "saito") return pairing(alg, out, text);
        if (c == "cech-omega") return cech(out, text);
        if (c == "verify") return verify(alg, etas, out, text);
        throw UsageError("unknown command '" + c + "'");
    }

private:
    int milnor(const MilnorAlgebra& alg, Json& out, std::ostream& text) {
        out["n"] = alg.n();
        out["mu"] = alg.mu;
        out["basis"] = strings(alg.basis);
        out["jacobian"] = strings(alg.jacobian);
        text << "f = " << f_.str() << "\nmu = " << alg.mu << "\nbasis:";
        for (const auto& b : alg.basis) text << " " << b.str();
        text << "\n";
        return kOk;
    }

    int residue(Json& out, std::ostream& text) {
        // Res^G[h g dx / (f_1, ..., f_n)]
        const MultiPoly num = job_.pair_given ? h_ * g_ : MultiPoly::constant(vars_, 1);
        const FamilyPtr fam = jacobian_family(f_);
        const Rational r =
            residue_engine().residue_value(LocalizedRational(fam, num, std::vector<int>(fam->size(), 1)));
        out["numerator"] = num.str();
        out["value"] = to_string(r);
        text << "Res[(" << num.str() << ") dx / (df)] = " << to_string(r) << "\n";
        return kOk;
    }

    int pairing(const MilnorAlgebra& alg, Json& out, std::ostream& text) {
        const Convention conv = job_.command == "saito" ? Convention::Saito : parse_convention(job_.convention);
        out["convention"] = convention_name(conv);
        out["order"] = job_.order;
        if (job_.pair_given) {
            const ShiftedSeries s = pairing_series(alg, TwistedClass::of(f_, h_, job_.order),
                                                   TwistedClass::of(f_, g_, job_.order), job_.order, conv);
            out["h"] = h_.str();
            out["g"] = g_.str();
            out["series"] = series_json(s, job_.order);
            text << "K(" << h_.str() << ", " << g_.str() << ") = " << series_text(s, job_.order) << "\n";
            return kOk;
        }
        const PairingMatrix m = pairing_matrix(alg, job_.order, conv, job_.jobs);
        Json rows = Json::array();
        for (const auto& row : m.entries) {
            Json r = Json::array();
            for (const auto& e : row) r.push_back(series_json(e, job_.order));
            rows.push_back(r);
        }
        out["labels"] = m.labels;
        out["matrix"] = rows;
        for (std::size_t a = 0; a < m.labels.size(); ++a)
            for (std::size_t b = 0; b < m.labels.size(); ++b)
                text << "[" << m.labels[a] << ", " << m.labels[b] << "] " << series_text(m.entries[a][b], job_.order)
                     << "\n";
        return kOk;
    }

    int chern(Json& out, std::ostream& text) {
        const DiagonalKernel k = chern_delta(f_);
        out["kernel_vars"] = k.delta.vars()->names();
        out["delta"] = k.delta.str();
        text << "delta = " << k.delta.str() << "\n";
        return kOk;
    }

    int cech(Json& out, std::ostream& text) {
        Twist tw;
        if (job_.twist == "plus") tw = Twist::Plus;
        else if (job_.twist == "minus") tw = Twist::Minus;
        else throw UsageError("--twist must be plus or minus");
        const FamilyPtr fam = jacobian_family(f_);
        const MultiPoly h = job_.pair_given ? h_ : MultiPoly::constant(vars_, 1);
        const CechElement w = omega_rep(fam, h, job_.order, tw);
        const auto indices = [&](IndexSet s) {
            std::vector<std::size_t> v;
            for (std::size_t i = 0; i < fam->size(); ++i)
                if (s & (1u << i)) v.push_back(i + 1);
            return v;
        };
        Json comps = Json::array();
        for (const auto& [key, series] : w.components()) {
            Json coeffs = Json::array();
            for (int k = 0; k <= job_.order; ++k) coeffs.push_back(series[k].str());
            comps.push_back(Json{{"alpha", indices(key.first)}, {"dx", indices(key.second)}, {"coeffs", coeffs}});
            text << "alpha" << Json(indices(key.first)).dump() << " dx" << Json(indices(key.second)).dump() << ":";
            for (int k = 0; k <= job_.order; ++k)
                if (!series[k].is_zero()) text << " [u^" << k << "] " << series[k].str();
            text << "\n";
        }
        out["h"] = h.str();
        out["twist"] = job_.twist;
        out["order"] = job_.order;
        out["denominators"] = strings(fam->members());
        out["components"] = comps;
        out["closed"] = cech_differential(w, tw).is_zero();
        return kOk;
    }

    int verify(const MilnorAlgebra& alg, const std::vector<MultiPoly>& etas, Json& out, std::ostream& text) {
        VerifyOptions o;
        o.order = job_.order;
        o.trials = job_.trials;
        o.seed = job_.seed;
        o.jobs = job_.jobs;
        const auto reports = run_suite(job_.suite, alg, etas, o);
        Json rs = Json::array();
        bool ok = true;
        for (const auto& r : reports) {
            rs.push_back(report_json(r));
            ok = ok && r.passed();
            text << r.suite << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.instances << " checks, "
                 << r.failures.size() << " failures)\n";
            if (const VerifyFailure* w = r.smallest())
                text << "  smallest: " << w->check << " | " << w->input << "\n    expected " << w->expected
                     << "\n    got      " << w->got << "\n";
            for (const auto& n : r.notes) text << "  note: " << n << "\n";
        }
        out["suite"] = job_.suite;
        out["passed"] = ok;
        out["reports"] = rs;
        return ok ? kOk : kCounterexample;
    }

    const Job& job_;
    VarSetPtr vars_;
    MultiPoly f_, h_, g_;
};

void add_common(CLI::App* sub, Job& job) {
    sub->set_help_flag("--help", "print help");
    sub->add_option("--f", job.f, "polynomial f")->required();
    sub->add_option("--vars", job.vars, "comma-separated variables (default: identifiers of f, sorted)");
    sub->add_option("--format", job.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--jobs", job.jobs, "worker threads inside the engine")->check(CLI::PositiveNumber);
    sub->add_flag("--check-certificates", job.check_certificates,
                  "repeat every residue with all certificate exponents raised by one");
}

void add_pair(CLI::App* sub, Job& job, bool with_g) {
    sub->add_option("--h", job.h, "first form h dx");
    if (with_g) sub->add_option("--g", job.g, "second form g dx");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact higher residue pairings, Grothendieck residues and their verifiers"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);
    Job job;

    auto* milnor = app.add_subcommand("milnor", "Milnor number and standard monomial basis");
    add_common(milnor, job);

    auto* residue = app.add_subcommand("residue", "Res[h g dx / (f_1, ..., f_n)]");
    add_common(residue, job);
    add_pair(residue, job, true);

    auto* pairing = app.add_subcommand("pairing", "higher residue pairing matrix or a single pairing");
    add_common(pairing, job);
    add_pair(pairing, job, true);
    pairing->add_option("--order", job.order, "truncation order in u");
    pairing->add_option("--convention", job.convention, "hres, saito or canonical")
        ->check(CLI::IsMember({"hres", "saito", "canonical"}));

    auto* saito = app.add_subcommand("saito", "pairing with the saito convention");
    add_common(saito, job);
    add_pair(saito, job, true);
    saito->add_option("--order", job.order, "truncation order in u");

    auto* chern = app.add_subcommand("chern", "diagonal kernel delta(x, x')");
    add_common(chern, job);

    auto* cech = app.add_subcommand("cech-omega", "Cech representative of h dx");
    add_common(cech, job);
    add_pair(cech, job, false);
    cech->add_option("--order", job.order, "truncation order in u");
    cech->add_option("--twist", job.twist, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));

    auto* verify = app.add_subcommand("verify", "run verifier suites");
    add_common(verify, job);
    verify->add_option("--suite", job.suite, "all, closedness, flatness-u, flatness-z, char-eq or symmetry")
        ->check(CLI::IsMember({"all", "closedness", "flatness-u", "flatness-z", "char-eq", "symmetry"}));
    verify->add_option("--order", job.order, "truncation order / kmax");
    verify->add_option("--trials", job.trials, "random trials per suite")->check(CLI::NonNegativeNumber);
    verify->add_option("--seed", job.seed, "seed");
    verify->add_option("--etas", job.etas, "comma-separated deformation directions (default: Milnor basis)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidation;
    }
    for (auto* sub : app.get_subcommands()) job.command = sub->get_name();
    for (const char* name : {"--h", "--g"})
        for (auto* sub : app.get_subcommands())
            if (auto* opt = sub->get_option_no_throw(name); opt && opt->count() > 0) job.pair_given = true;

    Json out;
    std::ostringstream text;
    int code = kOk;
    std::string kind, message;
    try {
        code = Runner(job).run(out, text);
    } catch (const ParseError& e) {
        code = kParse, kind = "parse", message = e.what();
    } catch (const ValidationError& e) {
        code = kValidation, kind = "validation", message = e.what();
    } catch (const UsageError& e) {
        code = kValidation, kind = "usage", message = e.what();
    } catch (const InvariantViolation& e) {
        code = kInternal, kind = "invariant", message = e.what();
    } catch (const std::exception& e) {
        code = kInternal, kind = "internal", message = e.what();
    }
    if (!kind.empty()) {
        std::cerr << "error (" << kind << "): " << message << "\n";
        out = Json{{"schema", kSchema}, {"command", job.command}, {"error", {{"kind", kind}, {"message", message}}}};
        if (job.format == "json") std::cout << out.dump(2) << "\n";
        return code;
    }
    if (job.format == "json") std::cout << out.dump(2) << "\n";
    else std::cout << text.str();
    return code;
}
