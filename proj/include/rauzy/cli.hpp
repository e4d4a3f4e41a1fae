#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rauzy/json_io.hpp"
#include "rauzy/verify.hpp"

namespace rauzy::cli {

/// Named quadratic length presets; the n=2 golden instance is the
/// ((1+sqrt5)/2, 1) IET used throughout the docs.
inline std::vector<Scalar> preset_lambda(const std::string& name, int n) {
    std::vector<Scalar> lam;
    if (name == "golden") {
        if (n == 2) {
            lam.push_back(Scalar(Rational(1, 2), Rational(1, 2), 5));  // (1+sqrt5)/2
            lam.push_back(Scalar(1));
            return lam;
        }
        // lambda_i = 1 + i*(phi-1), phi-1 = (-1+sqrt5)/2: positive, increasing,
        // with irrational pairwise ratios.
        for (int i = 1; i <= n; ++i)
            lam.push_back(Scalar(Rational(2 - i, 2), Rational(i, 2), 5));
        return lam;
    }
    if (name == "silver") {
        // lambda_i = 1 + i*(sqrt2-1)
        for (int i = 1; i <= n; ++i) lam.push_back(Scalar(Rational(1 - i), Rational(i), 2));
        return lam;
    }
    throw Error("unknown lambda preset: " + name);
}

inline std::vector<Scalar> parse_lambda(const std::string& arg, int n) {
    if (arg == "golden" || arg == "silver") return preset_lambda(arg, n);
    Json j = Json::parse(arg);
    auto lam = lambda_from_json(j);
    if ((int)lam.size() != n) throw Error("lambda length does not match permutation size");
    return lam;
}

inline Permutation parse_pi(const std::string& arg) {
    return permutation_from_json(Json::parse(arg));
}

inline std::pair<Scalar, Scalar> parse_interval(const std::string& arg) {
    if (!arg.empty() && arg.front() == '[') {
        Json j = Json::parse(arg);
        if (j.size() != 2) throw Error("interval must have two endpoints");
        return {scalar_from_json(j[0]), scalar_from_json(j[1])};
    }
    auto comma = arg.find(',');
    if (comma == std::string::npos) throw Error("interval must be \"a,b\" or a JSON pair");
    return {Scalar(rational_from_string(arg.substr(0, comma))),
            Scalar(rational_from_string(arg.substr(comma + 1)))};
}

inline std::vector<Side> parse_policy(const std::string& policy, int steps) {
    if (policy == "right") return policy_sides(DrivePolicy::AlwaysRight, steps);
    if (policy == "left") return policy_sides(DrivePolicy::AlwaysLeft, steps);
    if (policy == "alternate") return policy_sides(DrivePolicy::Alternate, steps);
    // Explicit side list, e.g. "RLRR".
    std::vector<Side> sides;
    for (char c : policy) {
        if (c == 'R' || c == 'r') sides.push_back(Side::Right);
        else if (c == 'L' || c == 'l') sides.push_back(Side::Left);
        else throw Error("policy must be right|left|alternate or a string of R/L");
    }
    if (steps > 0 && (int)sides.size() != steps)
        throw Error("explicit policy length does not match --steps");
    return sides;
}

inline std::string error_code(const std::exception& e) {
    if (dynamic_cast<const TieError*>(&e)) return "tie";
    if (dynamic_cast<const ReturnOverflow*>(&e)) return "return_overflow";
    if (dynamic_cast<const InvalidProduct*>(&e)) return "invalid_product";
    if (dynamic_cast<const DomainError*>(&e)) return "domain";
    if (dynamic_cast<const NotUnimodular*>(&e)) return "not_unimodular";
    if (dynamic_cast<const ContextError*>(&e)) return "context";
    if (dynamic_cast<const ContractViolation*>(&e)) return "internal";
    if (std::string(e.what()).find("reducible") != std::string::npos) return "reducible";
    return "error";
}

// --- verify suite runners ---------------------------------------------------

inline Json run_suite_sigma(int n) {
    long checked = 0, violations = 0;
    for (int k = 2; k <= n; ++k) {
        for (const auto& pi : irreducible_permutations(k)) {
            auto part = sigma_partition(pi);
            IntMat l = l_matrix(pi);
            int dim = k - rank(l);
            bool ok = (int)part.blocks.size() == dim + 1;
            auto basis = nullspace_basis_from_sigma(pi);
            ok = ok && (int)basis.size() == dim;
            for (const auto& b : basis)
                ok = ok && l.apply(b) == std::vector<std::int64_t>(k, 0);
            ++checked;
            if (!ok) ++violations;
        }
    }
    Json j;
    j["suite"] = "sigma";
    j["n"] = n;
    j["checked"] = checked;
    j["violations"] = violations;
    return j;
}

inline Json run_suite_cycles(int n, int max_len, SideSet sides) {
    long cycles = 0, violations = 0;
    long max_period = 0;
    for (const auto& pi : irreducible_permutations(n)) {
        auto en = enumerate_cycles(pi, max_len, sides);
        for (const auto& path : en.cycles) {
            ++cycles;
            try {
                auto act = cycle_b_action(pi, path);
                max_period = std::max(max_period, act.period);
            } catch (const ContractViolation&) {
                ++violations;
            }
        }
    }
    Json j;
    j["suite"] = "cycles";
    j["n"] = n;
    j["max_len"] = max_len;
    j["cycles"] = cycles;
    j["violations"] = violations;
    j["max_period"] = max_period;
    return j;
}

inline Json run_suite_mainlemma(int n, int max_len) {
    auto rep = main_lemma_check(n, max_len);
    Json j;
    j["suite"] = "mainlemma";
    j["n"] = rep.n;
    j["max_len"] = rep.max_len;
    j["positive_cycles"] = rep.cycles_examined;
    j["distinct_products"] = rep.distinct_products;
    j["violations"] = rep.violations;
    return j;
}

inline Json run_suite_signrows(int n, int samples, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-12, 12), den(1, 12);
    std::vector<Rational> grid{Rational(-3), Rational(0), Rational(1, 2), Rational(1),
                               Rational(2)};
    long checked = 0, violations = 0;
    auto perms = irreducible_permutations(n);
    for (const auto& pi : perms)
        for (const auto& pi2 : perms) {
            if (pi == pi2) continue;
            std::vector<Rational> cs = grid;
            for (int s = 0; s < samples; ++s) cs.push_back(Rational(num(rng), den(rng)));
            for (const auto& c : cs) {
                ++checked;
                try {
                    sign_definite_row(pi, pi2, c);
                } catch (const ContractViolation&) {
                    ++violations;
                }
            }
        }
    Json j;
    j["suite"] = "signrows";
    j["n"] = n;
    j["samples"] = samples;
    j["seed"] = seed;
    j["checked"] = checked;
    j["violations"] = violations;
    return j;
}

inline Json run_suite_exclusion(int n, int samples, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(1, 20), den(1, 20);
    long checked = 0, violations = 0;
    auto perms = irreducible_permutations(n);
    for (const auto& pi : perms)
        for (const auto& pi2 : perms) {
            if (pi == pi2) continue;
            for (int s = 0; s < samples; ++s) {
                RatVec v;
                for (int i = 0; i < n; ++i) v.push_back(Rational(num(rng), den(rng)));
                ++checked;
                if (!positive_vector_exclusion(pi, pi2, v)) ++violations;
            }
        }
    Json j;
    j["suite"] = "exclusion";
    j["n"] = n;
    j["samples"] = samples;
    j["seed"] = seed;
    j["checked"] = checked;
    j["violations"] = violations;
    return j;
}

inline Json run_suite_pf(int n, int max_len, int samples, double tol) {
    long passed = 0, failed = 0, skipped = 0, seen = 0;
    std::set<std::vector<std::int64_t>> dedupe;
    for (const auto& pi : irreducible_permutations(n)) {
        auto en = enumerate_cycles(pi, max_len, SideSet::Extended);
        for (const auto& path : en.cycles) {
            if (seen >= samples) break;
            IntMat b = path_product(pi, path);
            if (!b.is_positive() || !dedupe.insert(b.data()).second) continue;
            ++seen;
            auto rep = pf_pairing_check(b, pi, tol);
            if (rep.status == PairingStatus::Pass) ++passed;
            else if (rep.status == PairingStatus::Fail) ++failed;
            else ++skipped;
        }
        if (seen >= samples) break;
    }
    Json j;
    j["suite"] = "pf";
    j["n"] = n;
    j["max_len"] = max_len;
    j["samples"] = seen;
    j["passed"] = passed;
    j["failed"] = failed;
    j["skipped"] = skipped;
    j["tol"] = tol;
    return j;
}

// --- dispatch ----------------------------------------------------------------

inline int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact interval exchange induction laboratory"};
    app.require_subcommand(1);

    std::string pi_arg, lambda_arg = "golden", policy = "right", interval_arg;
    std::string in_file, suite, sides_arg = "extended", mode_arg = "strict", cuts_arg;
    int steps = 0, n = 3, max_len = 6, samples = 20, jobs = 1;
    unsigned seed = 12345;
    double tol = 1e-8;

    auto* induce = app.add_subcommand("induce", "run extended Rauzy induction");
    induce->add_option("--pi", pi_arg, "permutation, e.g. [2,1]")->required();
    induce->add_option("--lambda", lambda_arg, "golden|silver|JSON scalar array");
    induce->add_option("--steps", steps, "number of induction steps")->required();
    induce->add_option("--policy", policy, "right|left|alternate|R/L string");
    induce->add_option("--cuts", cuts_arg, "grouping cuts, e.g. 2,3 (adds products)");

    auto* decompose = app.add_subcommand("decompose", "natural decomposition of a sub-interval");
    decompose->add_option("--pi", pi_arg)->required();
    decompose->add_option("--lambda", lambda_arg);
    decompose->add_option("--interval", interval_arg, "a,b or JSON scalar pair")->required();

    auto* realize = app.add_subcommand("realize", "realize a sub-interval as a Rauzy path");
    realize->add_option("--pi", pi_arg)->required();
    realize->add_option("--lambda", lambda_arg);
    realize->add_option("--interval", interval_arg)->required();

    auto* recover = app.add_subcommand("recover", "recover the initial permutation");
    recover->add_option("--n", n, "matrix size")->required();
    recover->add_option("--mode", mode_arg, "weak|strict");
    recover->add_option("--in", in_file, "input JSON file (- for stdin)")->required();

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "sigma|cycles|mainlemma|signrows|exclusion|pf")
        ->required();
    verify->add_option("--n", n);
    verify->add_option("--max-len", max_len);
    verify->add_option("--samples", samples);
    verify->add_option("--seed", seed);
    verify->add_option("--tol", tol);
    verify->add_option("--jobs", jobs, "worker count (semantics unchanged)");

    auto* enumerate = app.add_subcommand("enumerate", "enumerate extended Rauzy cycles");
    enumerate->add_option("--pi", pi_arg)->required();
    enumerate->add_option("--max-len", max_len);
    enumerate->add_option("--sides", sides_arg, "right|extended");

    std::vector<const char*> argv;
    argv.push_back("rauzy_lab");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 1;
    }

    try {
        Json result;
        if (induce->parsed()) {
            Permutation pi = parse_pi(pi_arg);
            auto lam = parse_lambda(lambda_arg, pi.n());
            auto sides = parse_policy(policy, steps);
            if (steps < 1) throw Error("induce: --steps must be >= 1");
            auto trace = drive(make_iet(pi, lam), sides);
            result = trace_to_json(trace);
            if (!cuts_arg.empty()) {
                std::vector<int> cuts;
                std::stringstream ss(cuts_arg);
                std::string tok;
                while (std::getline(ss, tok, ',')) cuts.push_back(std::stoi(tok));
                auto grouped = group_products(trace, cuts);
                Json prods = Json::array();
                for (const auto& b : grouped.products) prods.push_back(matrix_to_json(b));
                result["cuts"] = grouped.cuts;
                result["products"] = std::move(prods);
            }
        } else if (decompose->parsed() || realize->parsed()) {
            Permutation pi = parse_pi(pi_arg);
            auto lam = parse_lambda(lambda_arg, pi.n());
            IET t = make_iet(pi, lam);
            auto [a, b] = parse_interval(interval_arg);
            SubInterval j{a, b};
            if (decompose->parsed()) {
                result = decomposition_to_json(t, natural_decomposition(t, j));
            } else {
                auto path = realize_interval(t, j);
                if (path) {
                    result["realizable"] = true;
                    Json pj = path_to_json(*path);
                    for (auto& [k, v] : pj.items()) result[k] = v;
                } else {
                    result["realizable"] = false;
                }
            }
        } else if (recover->parsed()) {
            Json input;
            if (in_file == "-") {
                input = Json::parse(std::cin);
            } else {
                std::ifstream f(in_file);
                if (!f) throw Error("cannot open " + in_file);
                input = Json::parse(f);
            }
            RecoveryInput rin = recovery_input_from_json(input);
            // The command-line --mode wins over the file's mode field.
            RecoveryMode mode = rin.mode;
            if (recover->count("--mode"))
                mode = mode_arg == "weak" ? RecoveryMode::Weak : RecoveryMode::Strict;
            auto rep = mode == RecoveryMode::Weak ? recover_weak(rin.products, rin.n)
                                                  : recover_strict(rin.products, rin.n);
            result = recovery_report_to_json(rep);
        } else if (verify->parsed()) {
            if (suite == "sigma") result = run_suite_sigma(n);
            else if (suite == "cycles")
                result = run_suite_cycles(n, max_len,
                                          sides_arg == "right" ? SideSet::RightOnly
                                                               : SideSet::Extended);
            else if (suite == "mainlemma") result = run_suite_mainlemma(n, max_len);
            else if (suite == "signrows") result = run_suite_signrows(n, samples, seed);
            else if (suite == "exclusion") result = run_suite_exclusion(n, samples, seed);
            else if (suite == "pf") result = run_suite_pf(n, max_len, samples, tol);
            else throw Error("unknown suite: " + suite);
        } else if (enumerate->parsed()) {
            Permutation pi = parse_pi(pi_arg);
            auto en = enumerate_cycles(
                pi, max_len, sides_arg == "right" ? SideSet::RightOnly : SideSet::Extended);
            result["base"] = pi.image();
            result["max_len"] = en.max_len;
            Json cycles = Json::array();
            for (const auto& path : en.cycles) {
                Json steps_j = Json::array();
                for (const auto& k : path) steps_j.push_back(k.str());
                cycles.push_back(std::move(steps_j));
            }
            result["count"] = en.cycles.size();
            result["cycles"] = std::move(cycles);
        }
        out << result.dump() << "\n";
        return 0;
    } catch (const std::exception& e) {
        Json ej;
        ej["error"] = error_code(e);
        ej["detail"] = e.what();
        out << ej.dump() << "\n";
        return 2;
    }
}

}  // namespace rauzy::cli
