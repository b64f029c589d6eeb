#include "rforge/verify.hpp"

#include "rforge/cech.hpp"
#include "rforge/errors.hpp"
#include "rforge/pairing.hpp"
#include "rforge/parallel.hpp"
#include "rforge/polyops.hpp"
#include "rforge/random.hpp"
#include "rforge/residue.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <mutex>

namespace rforge {

namespace {

std::string fingerprint(const std::string& suite, const std::string& check, const std::string& input) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const std::string* s : {&suite, &check, &input}) {
        for (unsigned char c : *s) h = (h ^ c) * 0x100000001b3ull;
        h = (h ^ 0xff) * 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Per-trial accumulator; merged into the report under a lock.
struct Trial {
    std::string suite;
    std::uint64_t instances = 0;
    std::vector<VerifyFailure> failures;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& check, const std::string& input, const std::string& expected,
                const std::string& got) {
        ++instances;
        if (!ok) failures.push_back({fingerprint(suite, check, input), check, input, expected, got});
    }
    void expect(const LocalizedRational& lhs, const LocalizedRational& rhs, const std::string& check,
                const std::string& input) {
        const bool ok = lhs.equals(rhs);
        expect(ok, check, input, ok ? "" : rhs.str(), ok ? "" : lhs.str());
    }
    void expect(const Rational& lhs, const Rational& rhs, const std::string& check, const std::string& input) {
        expect(lhs == rhs, check, input, to_string(rhs), to_string(lhs));
    }
};

class Runner {
public:
    Runner(std::string suite, const MultiPoly& f, const VerifyOptions& o) : options_(o) {
        if (o.order < 0) throw UsageError("truncation order must be non-negative");
        if (o.trials < 0) throw UsageError("trial count must be non-negative");
        report_.suite = std::move(suite);
        report_.f = f.str();
        report_.seed = o.seed;
        report_.trials = o.trials;
        report_.order = o.order;
    }

    /// body(trial, rng) for every trial index; exceptions from the engine
    /// become failures of that trial.
    void trials(const std::function<void(Trial&, RandomPolys&)>& body) {
        parallel_for(static_cast<std::size_t>(options_.trials), options_.jobs, [&](std::size_t t) {
            RandomPolys rnd(trial_seed(options_.seed, t));
            run("trial " + std::to_string(t), [&](Trial& tr) { body(tr, rnd); });
        });
    }

    void once(const std::string& label, const std::function<void(Trial&)>& body) { run(label, body); }

    VerifyReport finish() {
        auto& fs = report_.failures;
        std::sort(fs.begin(), fs.end(), [](const VerifyFailure& a, const VerifyFailure& b) {
            return std::tie(a.fingerprint, a.check, a.input) < std::tie(b.fingerprint, b.check, b.input);
        });
        auto& ns = report_.notes;
        std::sort(ns.begin(), ns.end());
        ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
        return std::move(report_);
    }

private:
    void run(const std::string& label, const std::function<void(Trial&)>& body) {
        Trial tr;
        tr.suite = report_.suite;
        try {
            body(tr);
        } catch (const InvariantViolation& e) {
            tr.expect(false, "invariant", label, "no violation", e.what());
        }
        std::lock_guard lock(mutex_);
        report_.instances += tr.instances;
        for (auto& f : tr.failures) report_.failures.push_back(std::move(f));
        for (auto& n : tr.notes) report_.notes.push_back(std::move(n));
    }

    VerifyOptions options_;
    VerifyReport report_;
    std::mutex mutex_;
};

MultiPoly random_poly(RandomPolys& rnd, const VarSetPtr& v) { return rnd.poly(v, v->num_active()); }

std::string in(std::initializer_list<std::pair<const char*, std::string>> parts) {
    std::string s;
    for (const auto& [k, val] : parts) {
        if (!s.empty()) s += "; ";
        s += std::string(k) + "=" + val;
    }
    return s;
}

TwistedClass random_class(RandomPolys& rnd, const MultiPoly& f, int order) {
    const auto& v = f.vars();
    PolySeries s(MultiPoly(v), order);
    for (int k = 0; k <= order; ++k)
        if (rnd.uniform(0, 2) > 0) s.set(k, rnd.poly(v, v->num_active(), 3, 3));
    return TwistedClass{f, s};
}

std::string class_str(const TwistedClass& w) {
    std::string s = "[";
    for (int k = 0; k <= w.order(); ++k) s += (k ? ", " : "") + w.coeffs[k].str();
    return s + "]";
}

ShiftedSeries star(const ShiftedSeries& s) {
    ShiftedSeries r = s;
    if (s.shift % 2 != 0) r.coeffs = -r.coeffs;
    r.coeffs = r.coeffs.star();
    return r;
}

} // namespace

const VerifyFailure* VerifyReport::smallest() const {
    const VerifyFailure* best = nullptr;
    for (const auto& f : failures)
        if (!best || f.input.size() < best->input.size() ||
            (f.input.size() == best->input.size() && f.fingerprint < best->fingerprint))
            best = &f;
    return best;
}

VerifyReport check_flatness_u(const MilnorAlgebra& milnor, const VerifyOptions& options) {
    Runner runner("flatness-u", milnor.f, options);
    const MultiPoly& f = milnor.f;
    const int n = static_cast<int>(milnor.n());
    const int K = options.order;
    const FamilyPtr family = jacobian_family(f);
    runner.trials([&](Trial& tr, RandomPolys& rnd) {
        const MultiPoly h = random_poly(rnd, f.vars());
        const MultiPoly g = random_poly(rnd, f.vars());
        const auto bh = b_coeffs(family, h, K + 1, Twist::Plus);
        const auto bfh = b_coeffs(family, f * h, K + 1, Twist::Plus);
        const auto bg = b_coeffs(family, g, K + 1, Twist::Minus);
        const auto bfg = b_coeffs(family, f * g, K + 1, Twist::Minus);
        const RatSeries h_fh_g = hres_series(milnor, f * h, g, K + 1);
        const RatSeries h_h_fg = hres_series(milnor, h, f * g, K + 1);
        const RatSeries h_h_g = hres_series(milnor, h, g, K);
        tr.expect(h_fh_g[0], h_h_fg[0], "H^0(f h, g) = H^0(h, f g)", in({{"h", h.str()}, {"g", g.str()}}));
        for (int k = 0; k <= K; ++k) {
            const Rational kn(k + n);
            const auto id = [&](const MultiPoly& p) {
                return in({{"k", std::to_string(k)}, {"h", p.str()}});
            };
            tr.expect(bfh[k + 1] - bh[k + 1] * f, bh[k] * kn, "b_{k+1,f}(f h) - f b_{k+1,f}(h) = (k+n) b_{k,f}(h)",
                      id(h));
            tr.expect(bg[k + 1] * f - bfg[k + 1], bg[k] * kn,
                      "f b_{k+1,-f}(g) - b_{k+1,-f}(f g) = (k+n) b_{k,-f}(g)", id(g));
            tr.expect(h_fh_g[k + 1] - h_h_fg[k + 1], kn * h_h_g[k], "H^{k+1}(f h, g) - H^{k+1}(h, f g) = (k+n) H^k(h, g)",
                      in({{"k", std::to_string(k)}, {"h", h.str()}, {"g", g.str()}}));
        }
    });
    return runner.finish();
}

VerifyReport check_flatness_z(const MilnorAlgebra& milnor, const std::vector<MultiPoly>& etas_in,
                              const VerifyOptions& options) {
    Runner runner("flatness-z", milnor.f, options);
    const MultiPoly& f = milnor.f;
    const std::vector<MultiPoly>& etas = etas_in.empty() ? milnor.basis : etas_in;
    const std::size_t n = milnor.n();
    const int K = options.order;

    // x-variables followed by fresh deformation parameters z1, z2, ...
    const VarSetPtr& v = f.vars();
    std::vector<std::string> params;
    for (std::size_t i = 0; i < etas.size(); ++i) {
        std::string name = "z" + std::to_string(i + 1);
        while (v->find(name) || std::find(params.begin(), params.end(), name) != params.end()) name = "_" + name;
        params.push_back(name);
    }
    const VarSetPtr ext = VarSet::make(v->active_names(), params);
    MultiPoly F = f.embed(ext);
    std::vector<MultiPoly> ext_etas;
    for (std::size_t i = 0; i < etas.size(); ++i) {
        if (etas[i].has_parameters()) throw UsageError("deformation directions must be polynomials in the x-variables");
        ext_etas.push_back(etas[i].embed(ext));
        F += MultiPoly::variable(ext, n + i) * ext_etas.back();
    }
    const FamilyPtr family = jacobian_family(F);

    runner.trials([&](Trial& tr, RandomPolys& rnd) {
        const MultiPoly h = random_poly(rnd, ext);
        const MultiPoly g = random_poly(rnd, ext);
        for (const Twist tw : {Twist::Plus, Twist::Minus}) {
            const MultiPoly& p = tw == Twist::Plus ? h : g;
            const int s = sign_of(tw);
            const auto bp = b_coeffs(family, p, K + 1, tw);
            for (std::size_t i = 0; i < ext_etas.size(); ++i) {
                const MultiPoly& eta = ext_etas[i];
                const auto bep = b_coeffs(family, eta * p, K + 1, tw);
                for (int k = 0; k <= K; ++k) {
                    // -b_{k+1,F}(eta h) + eta b_{k+1,F}(h), negated for -F
                    LocalizedRational rhs = (bp[k + 1] * eta - bep[k + 1]) * Rational(s);
                    tr.expect(bp[k].derivative(n + i), rhs,
                              tw == Twist::Plus ? "d/dz b_{k,F}(h) = -b_{k+1,F}(eta h) + eta b_{k+1,F}(h)"
                                                : "d/dz b_{k,-F}(g) = b_{k+1,-F}(eta g) - eta b_{k+1,-F}(g)",
                              in({{"k", std::to_string(k)}, {"eta", etas[i].str()}, {"h", p.str()}}));
                }
            }
        }
    });
    return runner.finish();
}

VerifyReport check_characteristic_equation(const MilnorAlgebra& milnor, const VerifyOptions& options) {
    VerifyOptions o = options;
    o.trials = 0;
    Runner runner("char-eq", milnor.f, o);
    const MultiPoly& f = milnor.f;
    const VarSetPtr& v = f.vars();
    const std::size_t n = milnor.n();
    const int N = options.order;
    const DiagonalKernel kernel = chern_delta(f);
    const VarSetPtr ext = kernel.delta.vars();
    std::vector<MultiPoly> members;
    for (const auto& fj : milnor.jacobian) members.push_back(fj.embed(ext));
    const FamilyPtr family = std::make_shared<const DenominatorFamily>(members);
    const MultiPoly delta = kernel.delta * Rational(n % 2 ? -1 : 1);

    // residue in x of a numerator over the copies, renamed back to x
    const auto to_x = [&](const MultiPoly& r) {
        MultiPoly out(v);
        for (const auto& [m, c] : r.terms()) {
            std::vector<int> e(v->size(), 0);
            for (std::size_t i = 0; i < n; ++i) e[i] = m[kernel.copies[i]];
            out.add_term(Monomial(e), c);
        }
        return out;
    };

    std::vector<std::function<void(Trial&)>> jobs;
    for (const MultiPoly& eta : milnor.basis)
        jobs.push_back([&, eta](Trial& tr) {
            const auto b = b_coeffs(family, eta.embed(ext), N);
            PolySeries P(MultiPoly(v), N);
            bool slabs_in_j = true;
            for (int k = 0; k <= N; ++k) {
                const MultiPoly pk = to_x(residue_engine().residue(b[k] * delta));
                P.set(k, pk);
                if (milnor.reduce(pk) != (k == 0 ? eta : MultiPoly(v))) slabs_in_j = false;
            }
            const TwistedClass red = twisted_normal_form(milnor, TwistedClass{f, P});
            for (int k = 0; k <= N; ++k) {
                const MultiPoly want = k == 0 ? eta : MultiPoly(v);
                tr.expect(red.coeffs[k] == want, k == 0 ? "order-0 slab recovers eta" : "higher slab vanishes",
                          in({{"eta", eta.str()}, {"k", std::to_string(k)}}), want.str(), red.coeffs[k].str());
            }
            if (!slabs_in_j)
                tr.notes.push_back("eta=" + eta.str() +
                                   ": some slab differs from its target modulo the Jacobian ideal; the class agrees "
                                   "only after carrying through the twisted differential");
        });
    for (std::size_t i = 0; i < jobs.size(); ++i) runner.once("eta " + milnor.basis[i].str(), jobs[i]);
    return runner.finish();
}

VerifyReport check_closedness(const MilnorAlgebra& milnor, const VerifyOptions& options) {
    Runner runner("closedness", milnor.f, options);
    const MultiPoly& f = milnor.f;
    const int N = options.order;
    const int n = static_cast<int>(milnor.n());
    const FamilyPtr family = jacobian_family(f);
    runner.trials([&](Trial& tr, RandomPolys& rnd) {
        const MultiPoly h = random_poly(rnd, f.vars());
        const MultiPoly g = random_poly(rnd, f.vars());
        for (const Twist tw : {Twist::Plus, Twist::Minus}) {
            const CechElement d = cech_differential(omega_rep(family, h, N, tw), tw);
            tr.expect(d.is_zero(), tw == Twist::Plus ? "omega_f(h) closed" : "omega_{-f}(h) closed",
                      in({{"h", h.str()}}), "0", d.is_zero() ? "0" : "nonzero");
        }
        // wedge_top_reduction asserts its own boundary identities
        const WedgeReduction w = wedge_top_reduction(f, h, g, N);
        LocalizedRational lead = LocalizedRational(family, h * g, std::vector<int>(static_cast<std::size_t>(n), 1)) *
                                 Rational(n % 2 ? -1 : 1);
        tr.expect(w.reduced[0], lead, "reduced wedge leads with (-1)^n h g / prod f_i",
                  in({{"h", h.str()}, {"g", g.str()}}));
    });
    return runner.finish();
}

VerifyReport check_symmetries(const MilnorAlgebra& milnor, const VerifyOptions& options) {
    Runner runner("symmetry", milnor.f, options);
    const MultiPoly& f = milnor.f;
    const int N = options.order;
    const int n = static_cast<int>(milnor.n());
    const FamilyPtr family = jacobian_family(f);
    runner.trials([&](Trial& tr, RandomPolys& rnd) {
        const MultiPoly h = random_poly(rnd, f.vars());
        const MultiPoly g = random_poly(rnd, f.vars());
        const auto bp = b_coeffs(family, h, N, Twist::Plus);
        const auto bm = b_coeffs(family, h, N, Twist::Minus);
        for (int i = 0; i <= N; ++i)
            tr.expect(bm[i], bp[i] * Rational((n + i) % 2 ? -1 : 1), "b_{i,-f}(h) = (-1)^{n+i} b_{i,f}(h)",
                      in({{"i", std::to_string(i)}, {"h", h.str()}}));

        const RatSeries hg = hres_series(milnor, h, g, N);
        const RatSeries gh = hres_series(milnor, g, h, N);
        for (int i = 0; i <= N; ++i)
            tr.expect(hg[i], i % 2 ? -gh[i] : gh[i], "H^i(h, g) = (-1)^i H^i(g, h)",
                      in({{"i", std::to_string(i)}, {"h", h.str()}, {"g", g.str()}}));

        const TwistedClass w1 = random_class(rnd, f, N);
        const TwistedClass w2 = random_class(rnd, f, N);
        const std::string id = in({{"w1", class_str(w1)}, {"w2", class_str(w2)}});
        const ShiftedSeries k12 = pairing_series(milnor, w1, w2, N, Convention::Saito);
        const ShiftedSeries k21 = pairing_series(milnor, w2, w1, N, Convention::Saito);
        const ShiftedSeries ku1 =
            pairing_series(milnor, TwistedClass{f, w1.coeffs.shifted(1)}, w2, N, Convention::Saito);
        const ShiftedSeries ku2 =
            pairing_series(milnor, w1, TwistedClass{f, w2.coeffs.shifted(1)}, N, Convention::Saito);
        const ShiftedSeries s21 = star(k21);
        for (int p = 0; p <= N + n; ++p) {
            const std::string at = id + "; power=" + std::to_string(p);
            tr.expect(ku1.at(p), k12.at(p - 1), "K(u w1, w2) = u K(w1, w2)", at);
            tr.expect(ku2.at(p), -k12.at(p - 1), "K(w1, u w2) = -u K(w1, w2)", at);
            tr.expect(k12.at(p), n % 2 ? -s21.at(p) : s21.at(p), "K(w1, w2) = (-1)^n K(w2, w1)^*", at);
        }
        tr.expect(k12.shift == n, "K takes values in C[[u]] u^n", id, std::to_string(n), std::to_string(k12.shift));
        tr.expect(k12.at(n), res_pairing(f, w1.coeffs[0], w2.coeffs[0]), "leading coefficient is Res_f", id);

        const ShiftedSeries kr = pairing_series(milnor, twisted_normal_form(milnor, w1), w2, N);
        const ShiftedSeries k = pairing_series(milnor, w1, w2, N);
        for (int p = 0; p <= N; ++p)
            tr.expect(kr.at(p), k.at(p), "pairing depends only on classes", id + "; power=" + std::to_string(p));
    });

    if (quasi_homogeneous_weights(f)) {
        runner.once("quasi-homogeneous battery", [&](Trial& tr) {
            const int top = 6;
            const PairingMatrix m = pairing_matrix(milnor, top, Convention::Hres, options.jobs);
            for (std::size_t a = 0; a < milnor.mu; ++a)
                for (std::size_t b = 0; b < milnor.mu; ++b)
                    for (int i = 1; i <= top; ++i)
                        tr.expect(m.entries[a][b].at(i), Rational(0), "H^i vanishes on the basis (quasi-homogeneous)",
                                  in({{"a", m.labels[a]}, {"b", m.labels[b]}, {"i", std::to_string(i)}}));
        });
    }
    return runner.finish();
}

std::vector<std::string> suite_names() { return {"closedness", "flatness-u", "flatness-z", "char-eq", "symmetry"}; }

std::vector<VerifyReport> run_suite(const std::string& name, const MilnorAlgebra& milnor,
                                    const std::vector<MultiPoly>& etas, const VerifyOptions& options) {
    std::vector<VerifyReport> out;
    const auto one = [&](const std::string& s) {
        if (s == "closedness") out.push_back(check_closedness(milnor, options));
        else if (s == "flatness-u") out.push_back(check_flatness_u(milnor, options));
        else if (s == "flatness-z") out.push_back(check_flatness_z(milnor, etas, options));
        else if (s == "char-eq") out.push_back(check_characteristic_equation(milnor, options));
        else if (s == "symmetry") out.push_back(check_symmetries(milnor, options));
        else throw UsageError("unknown suite '" + s + "'");
    };
    if (name == "all")
        for (const auto& s : suite_names()) one(s);
    else
        one(name);
    return out;
}

std::optional<std::vector<Rational>> quasi_homogeneous_weights(const MultiPoly& f) {
    const VarSetPtr& v = f.vars();
    const std::size_t n = v->num_active();
    if (f.has_parameters() || f.is_zero() || n == 0) return std::nullopt;
    // rows e . w = 1, Gauss-Jordan over Q
    std::vector<std::vector<Rational>> rows;
    for (const auto& [m, c] : f.terms()) {
        std::vector<Rational> r(n + 1);
        for (std::size_t i = 0; i < n; ++i) r[i] = m[i];
        r[n] = 1;
        rows.push_back(std::move(r));
    }
    std::vector<std::ptrdiff_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        const Rational inv = 1 / rows[rank][c];
        for (auto& x : rows[rank]) x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && rows[r][c] != 0) {
                const Rational s = rows[r][c];
                for (std::size_t k = 0; k <= n; ++k) rows[r][k] -= s * rows[rank][k];
            }
        pivot_col.push_back(static_cast<std::ptrdiff_t>(c));
        ++rank;
    }
    for (std::size_t r = rank; r < rows.size(); ++r)
        if (rows[r][n] != 0) return std::nullopt;
    // free weights: try 1/d for small d
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    const int dmax = std::max(2, f.total_degree()) * 4;
    for (int d = 2; d <= dmax; ++d) {
        std::vector<Rational> w(n, Rational(0));
        for (std::size_t c = 0; c < n; ++c)
            if (!is_pivot[c]) w[c] = Rational(1, d);
        bool ok = true;
        for (std::size_t r = 0; r < rank && ok; ++r) {
            const auto c = static_cast<std::size_t>(pivot_col[r]);
            Rational val = rows[r][n];
            for (std::size_t k = 0; k < n; ++k)
                if (!is_pivot[k]) val -= rows[r][k] * w[k];
            w[c] = val;
        }
        for (const auto& x : w) ok = ok && x > 0;
        if (ok) return w;
        if (rank == n) break;
    }
    return std::nullopt;
}

} // namespace rforge
