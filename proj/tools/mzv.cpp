#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mzvlab/identities.hpp"
#include "mzvlab/posets.hpp"
#include "mzvlab/values.hpp"

using json = nlohmann::json;
using namespace mzv;

namespace {

long default_prec() {
    if (const char* env = std::getenv("MZVLAB_PREC")) {
        long p = std::atol(env);
        if (p >= 32 && p <= 4096) return p;
    }
    return 128;
}

json scalar_json(const Scalar& s) {
    json j;
    if (s.is_exact()) {
        j["mode"] = "exact";
        j["value"] = rat_to_string(s.rat());
    } else {
        j["mode"] = "float";
        j["value"] = s.str();
        j["err"] = s.err().str(3);
    }
    return j;
}

json report_json(const ResidualReport& r) {
    json j;
    j["id"] = r.kase.id;
    json params;
    for (const auto& [k, v] : r.kase.params) params[k] = param_to_string(v);
    j["params"] = params;
    j["mode"] = r.kase.mode == VerifyMode::Exact ? "exact" : "float";
    j["precision_bits"] = r.kase.prec;
    switch (r.status) {
        case VerifyStatus::Pass:
            j["status"] = "pass";
            break;
        case VerifyStatus::Fail:
            j["status"] = "fail";
            break;
        case VerifyStatus::Skipped:
            j["status"] = "skipped";
            break;
    }
    if (r.status != VerifyStatus::Skipped) {
        j["lhs"] = scalar_json(r.lhs);
        j["rhs"] = scalar_json(r.rhs);
        if (r.kase.mode == VerifyMode::Exact) {
            j["residual"] = rat_to_string(r.residual.rat());
        } else {
            j["residual"] = r.abs_residual.str(3);
            j["budget"] = bnd::add(r.budget, r.slack).str(3);
        }
    }
    if (!r.reason.empty()) j["reason"] = r.reason;
    return j;
}

FuzzBounds parse_bounds(const std::string& s) {
    FuzzBounds b;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        std::string key = tok.substr(0, eq);
        int v = std::stoi(tok.substr(eq + 1));
        if (key == "w" || key == "weight") b.max_weight = v;
        else if (key == "d" || key == "depth") b.max_depth = v;
        else if (key == "n") b.max_n = v;
        else if (key == "l") b.max_l = v;
    }
    return b;
}

struct VerifyFlags {
    std::string k, m, l, x, labels, eps, sigma, a, poset_file;
    long n = -1, lval = -1, j = -1, r = -1, p = -1, l1 = -1, l2 = -1;
    long eta1 = 0, eta2 = 0, eta_i = 0, eps_i = 0;
    long rel_a = -1, rel_b = -1;
    bool any() const {
        return !k.empty() || !m.empty() || !l.empty() || !x.empty() || !labels.empty() ||
               !eps.empty() || !sigma.empty() || !a.empty() || !poset_file.empty() || n >= 0 ||
               lval >= 0 || j >= 0 || r >= 0 || p >= 0 || l1 >= 0;
    }
};

LabelVector parse_label_arg(const std::string& s) {
    if (s.find_first_of("+-") != std::string::npos &&
        s.find_first_not_of("+-0 \t") == std::string::npos)
        return LabelVector::parse_signs(s);
    return LabelVector::parse_disk(s);
}

// Maps the generic CLI flags onto the per-identity parameter schema.
ParamMap build_params(const std::string& id, const VerifyFlags& f) {
    ParamMap P;
    auto comp = [&](const std::string& s) { return Composition::parse(s); };
    auto needl = [&](const std::string& s, const char* what) {
        if (s.empty()) throw std::invalid_argument(std::string("missing --") + what);
        return s;
    };
    if (id == "SS2016-LEMMA" || id == "PMHNS" || id == "PMPLS1" || id == "PMPLS2" ||
        id == "NPMPLS1" || id == "NPMPLS2" || id == "PMPLS3") {
        P["k"] = comp(needl(f.k, "k"));
        P["x"] = parse_label_arg(needl(f.x, "x"));
        if (id != "PMPLS3") P["n"] = f.n;
        if (id == "PMPLS1" || id == "PMPLS2" || id == "NPMPLS1" || id == "NPMPLS2")
            P["l"] = f.lval;
        if (id == "PMHNS" || id == "NPMPLS1" || id == "NPMPLS2" || id == "PMPLS3")
            P["a"] = rat_from_string(needl(f.a, "a"));
    } else if (id == "ITLI1J") {
        P["j"] = f.j;
        P["x"] = coef_from_string(needl(f.x, "x"));
    } else if (id == "MPL-RS") {
        P["k"] = f.j >= 0 ? f.j : std::stol(needl(f.k, "k"));
        P["r"] = f.r;
        P["x"] = coef_from_string(needl(f.x, "x"));
    } else if (id == "FII1" || id == "FIIt1" || id == "IMP-2") {
        P["m"] = comp(needl(f.m, "m"));
        P["n"] = f.n;
        P["x"] = coef_from_string(needl(f.x, "x"));
    } else if (id == "FII2") {
        P["m"] = comp(needl(f.m, "m"));
        P["n"] = f.n;
        P["x"] = coef_from_string(needl(f.x, "x"));
        P["sigma"] = parse_label_arg(needl(f.sigma, "sigma"));
    } else if (id == "INT-G") {
        P["m"] = needl(f.m, "m");
        P["n"] = f.n;
        P["a"] = parse_label_arg(needl(f.a, "a"));
    } else if (id == "KYMZV1") {
        P["k"] = comp(needl(f.k, "k"));
        P["m"] = comp(needl(f.m, "m"));
        P["x"] = coef_from_string(needl(f.x, "x"));
        P["eps"] = parse_label_arg(needl(f.eps, "eps"));
        P["sigma"] = parse_label_arg(needl(f.sigma, "sigma"));
    } else if (id == "KYMZV2" || id == "T-KYMZVX") {
        P["k"] = comp(needl(f.k, "k"));
        P["m"] = comp(needl(f.m, "m"));
        P["x"] = coef_from_string(needl(f.x, "x"));
    } else if (id == "T-KYMZVXX") {
        P["k"] = comp(needl(f.k, "k"));
        P["m"] = comp(needl(f.m, "m"));
    } else if (id == "KYMZV3") {
        P["m"] = needl(f.m, "m");
        P["k"] = f.j >= 0 ? f.j : std::stol(needl(f.k, "k"));
        P["r"] = f.r;
        P["x"] = coef_from_string(needl(f.x, "x"));
    } else if (id == "MPL-R2") {
        P["p"] = f.p;
        P["r"] = f.r;
        P["k"] = std::stol(needl(f.k, "k"));
        P["x"] = coef_from_string(needl(f.x, "x"));
    } else if (id == "MPL-R3") {
        P["m"] = std::stol(needl(f.m, "m"));
        P["k"] = std::stol(needl(f.k, "k"));
        P["r"] = f.r;
        P["x"] = coef_from_string(needl(f.x, "x"));
    } else if (id == "INTX-MMVS") {
        P["m"] = comp(needl(f.m, "m"));
        P["eps"] = parse_label_arg(needl(f.eps, "eps"));
        P["n"] = f.n;
        P["x"] = coef_from_string(needl(f.x, "x"));
    } else if (id == "INTX-KYMMVS" || id == "INTX-KYMMVS-COR") {
        P["k"] = comp(needl(f.k, "k"));
        P["m"] = comp(needl(f.m, "m"));
        P["eta"] = parse_label_arg(needl(f.labels, "labels"));
        P["eps"] = parse_label_arg(needl(f.eps, "eps"));
        if (id == "INTX-KYMMVS") P["x"] = coef_from_string(needl(f.x, "x"));
    } else if (id == "F2-MPLS" || id == "F2-MMVS") {
        P["l"] = comp(needl(f.l, "l"));
        P["eps"] = parse_label_arg(needl(f.eps, "eps"));
        P["n"] = f.n;
    } else if (id == "INT-SER-AMPLS" || id == "INT-SER-MMVS") {
        P["k"] = comp(needl(f.k, "k"));
        P["l"] = comp(needl(f.l, "l"));
        P["eta"] = parse_label_arg(needl(f.labels, "labels"));
        P["eps"] = parse_label_arg(needl(f.eps, "eps"));
    } else if (id == "INT-SER-MMVS2") {
        P["k"] = comp(needl(f.k, "k"));
        P["eta"] = parse_label_arg(needl(f.labels, "labels"));
        P["l1"] = f.l1;
        P["l2"] = f.l2;
        P["eps"] = f.eps_i;
    } else if (id == "MMV-EXAMPLE") {
        P["eta"] = f.eta_i;
        P["eps"] = f.eps_i;
    } else if (id == "AMZV-EXAMPLE") {
        P["eta1"] = f.eta1;
        P["eta2"] = f.eta2;
    } else if (id == "POSET-SHUFFLE") {
        std::ifstream in(needl(f.poset_file, "poset-file"));
        if (!in) throw std::invalid_argument("cannot open " + f.poset_file);
        std::stringstream ss;
        ss << in.rdbuf();
        P["poset"] = ss.str();
        P["a"] = f.rel_a;
        P["b"] = f.rel_b;
    } else {
        throw std::invalid_argument("unknown identity id: " + id);
    }
    return P;
}

void emit(const json& j, const std::string& format, const std::string& text_form) {
    if (format == "text")
        std::cout << text_form << "\n";
    else
        std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mzv: multiple zeta value variants, identities, and poset integrals"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));

    // ---- eval
    auto* eval = app.add_subcommand("eval", "evaluate a value");
    std::string family = "mzv", index, labels, eps_s, xs, as, ls;
    long prec = default_prec();
    eval->add_option("--family", family,
                     "mzv|mzsv|mpl|mpl-star|t|t-star|ti|m|conv-zeta|conv-t|conv-m|pmpl|pmpl-star");
    eval->add_option("--index", index, "composition, e.g. 2,1")->required();
    eval->add_option("--l", ls, "second composition (conv families)");
    eval->add_option("--labels", labels, "sign string for M-values / conv-m eta, e.g. +-");
    eval->add_option("--eps", eps_s, "conv-m epsilon sign string (0 allowed first)");
    eval->add_option("--x", xs, "variable(s): rational/decimal list");
    eval->add_option("--a", as, "parameter for parametric families");
    eval->add_option("--prec", prec, "working precision in bits");

    // ---- dual
    auto* dual = app.add_subcommand("dual", "Hoffman dual of a composition");
    std::string dual_comp;
    dual->add_option("composition", dual_comp, "e.g. 1,1,2,1")->required();

    // ---- verify
    auto* ver = app.add_subcommand("verify", "verify one identity instance");
    std::string vid, vmode = "float";
    long vseed = 0;
    VerifyFlags vf;
    ver->add_option("--id", vid, "registry id")->required();
    ver->add_option("--mode", vmode, "exact|float")->check(CLI::IsMember({"exact", "float"}));
    ver->add_option("--prec", prec, "precision bits");
    ver->add_option("--seed", vseed, "generate parameters from this seed if none given");
    ver->add_option("--k", vf.k, "composition k");
    ver->add_option("--m", vf.m, "composition m (or padded list)");
    ver->add_option("--l", vf.l, "composition l");
    ver->add_option("--x", vf.x, "labels / variable");
    ver->add_option("--labels", vf.labels, "eta sign string");
    ver->add_option("--eps", vf.eps, "eps signs/labels");
    ver->add_option("--sigma", vf.sigma, "sigma labels");
    ver->add_option("--a", vf.a, "parameter a (rational) or label list for INT-G");
    ver->add_option("--n", vf.n, "upper limit n");
    ver->add_option("--lint", vf.lval, "shift l");
    ver->add_option("--j", vf.j, "index j / k");
    ver->add_option("--r", vf.r, "index r");
    ver->add_option("--p", vf.p, "index p");
    ver->add_option("--l1", vf.l1, "l1");
    ver->add_option("--l2", vf.l2, "l2");
    ver->add_option("--eta1", vf.eta1, "sign eta1");
    ver->add_option("--eta2", vf.eta2, "sign eta2");
    ver->add_option("--etai", vf.eta_i, "sign eta");
    ver->add_option("--epsi", vf.eps_i, "sign eps");
    ver->add_option("--poset-file", vf.poset_file, "poset description file");
    ver->add_option("--rel-a", vf.rel_a, "poset element a");
    ver->add_option("--rel-b", vf.rel_b, "poset element b");

    // ---- fuzz
    auto* fz = app.add_subcommand("fuzz", "fuzz one identity");
    std::string fid, fmode = "float", bounds_s;
    long fseed = 1, fbudget = 25;
    fz->add_option("--id", fid, "registry id")->required();
    fz->add_option("--budget", fbudget, "number of cases");
    fz->add_option("--seed", fseed, "random seed");
    fz->add_option("--bounds", bounds_s, "e.g. w=5,d=3,n=6,l=6");
    fz->add_option("--mode", fmode, "exact|float")->check(CLI::IsMember({"exact", "float"}));
    fz->add_option("--prec", prec, "precision bits");

    // ---- poset
    auto* ps = app.add_subcommand("poset", "evaluate a labeled poset from a file");
    std::string poset_file;
    ps->add_option("--poset-file", poset_file, "poset description file")->required();
    ps->add_option("--prec", prec, "precision bits");

    // ---- list
    auto* ls_cmd = app.add_subcommand("list", "list the identity registry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    EvalCtx ctx(prec);
    try {
        if (eval->parsed()) {
            ValueSpec spec;
            spec.k = Composition::parse(index);
            if (!ls.empty()) spec.l = Composition::parse(ls);
            if (family == "mzv" || family == "mzsv") {
                spec.family = family == "mzv" ? ValueFamily::Mpl : ValueFamily::MplStar;
                std::vector<Coef> ones(static_cast<size_t>(spec.k.depth()), Coef(1L));
                spec.x = LabelVector::disk(ones);
            } else if (family == "mpl" || family == "mpl-star") {
                spec.family = family == "mpl" ? ValueFamily::Mpl : ValueFamily::MplStar;
                spec.x = LabelVector::parse_disk(xs);
            } else if (family == "t" || family == "t-star" || family == "ti") {
                spec.family = family == "t-star" ? ValueFamily::TPolyStar : ValueFamily::TPoly;
                spec.x = xs.empty() ? LabelVector::disk({Coef(1L)}) : LabelVector::parse_disk(xs);
            } else if (family == "m") {
                spec.family = ValueFamily::MPoly;
                spec.eta = LabelVector::parse_signs(labels);
                spec.x = xs.empty() ? LabelVector::disk({Coef(1L)}) : LabelVector::parse_disk(xs);
            } else if (family == "conv-zeta" || family == "conv-t") {
                spec.family = family == "conv-zeta" ? ValueFamily::ConvZeta : ValueFamily::ConvT;
            } else if (family == "conv-m") {
                spec.family = ValueFamily::ConvM;
                spec.eta = LabelVector::parse_signs(labels);
                spec.eps = LabelVector::parse_signs(eps_s);
            } else if (family == "pmpl" || family == "pmpl-star") {
                spec.family =
                    family == "pmpl" ? ValueFamily::ParametricMpl : ValueFamily::ParametricMplStar;
                spec.x = LabelVector::parse_disk(xs);
                spec.a = Scalar::float_of(rat_from_string(as.empty() ? "0" : as), prec);
            } else {
                std::cerr << "unknown family: " << family << "\n";
                return 2;
            }
            Scalar v = eval_value(spec, ctx);
            json j = scalar_json(v);
            j["family"] = family;
            j["index"] = index;
            j["prec_bits"] = prec;
            emit(j, format, v.str());
            return 0;
        }
        if (dual->parsed()) {
            Composition d = hoffman_dual(Composition::parse(dual_comp));
            json j;
            j["dual"] = d.str();
            emit(j, format == "json" && app.count("--format") ? "json" : "text", d.str());
            return 0;
        }
        if (ver->parsed()) {
            IdentityCase c;
            c.id = vid;
            c.mode = vmode == "exact" ? VerifyMode::Exact : VerifyMode::Float;
            c.prec = prec;
            if (vf.any()) {
                c.params = build_params(vid, vf);
            } else {
                FuzzBounds b;
                c = generate_case(vid, static_cast<uint64_t>(vseed), 0, b, c.mode, prec);
            }
            ResidualReport rep = verify(c, ctx);
            json j = report_json(rep);
            std::string text = j["status"].get<std::string>();
            emit(j, format, text);
            if (rep.status == VerifyStatus::Pass) return 0;
            if (rep.status == VerifyStatus::Fail) return 1;
            return 3;
        }
        if (fz->parsed()) {
            FuzzBounds b = bounds_s.empty() ? FuzzBounds{} : parse_bounds(bounds_s);
            FuzzSummary s = fuzz(fid, static_cast<int>(fbudget), static_cast<uint64_t>(fseed), b,
                                 ctx, fmode == "exact" ? VerifyMode::Exact : VerifyMode::Float);
            json j;
            j["id"] = s.id;
            j["pass"] = s.pass;
            j["fail"] = s.fail;
            j["skip"] = s.skip;
            j["worst_ratio"] = s.worst_ratio;
            j["seed"] = s.seed;
            if (!s.failures.empty()) j["failures"] = s.failures;
            std::ostringstream text;
            text << s.id << ": pass=" << s.pass << " fail=" << s.fail << " skip=" << s.skip
                 << " worst_ratio=" << s.worst_ratio;
            emit(j, format, text.str());
            return s.fail > 0 ? 1 : 0;
        }
        if (ps->parsed()) {
            std::ifstream in(poset_file);
            if (!in) {
                std::cerr << "cannot open " << poset_file << "\n";
                return 2;
            }
            std::stringstream ss;
            ss << in.rdbuf();
            LabeledPoset X = LabeledPoset::from_text(ss.str());
            json j;
            j["elements"] = X.size();
            j["extensions"] = X.extension_count();
            if (auto w = X.admissibility_witness()) {
                j["admissible"] = false;
                j["witness"] = *w;
                emit(j, format, "inadmissible (element " + std::to_string(*w) + ")");
                return 3;
            }
            j["admissible"] = true;
            Scalar v = eval_poset(X, ctx, 12);
            j.update(scalar_json(v));
            emit(j, format, v.str());
            return 0;
        }
        if (ls_cmd->parsed()) {
            json arr = json::array();
            std::ostringstream text;
            for (const IdentityInfo& e : registry()) {
                json j;
                j["id"] = e.id;
                j["exact_eligible"] = e.exact_eligible;
                j["params"] = e.params_doc;
                arr.push_back(j);
                text << e.id << (e.exact_eligible ? "  [exact+float]  " : "  [float]  ")
                     << e.params_doc << "\n";
            }
            emit(arr, format, text.str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
