#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "rauzy/errors.hpp"
#include "rauzy/induced.hpp"
#include "rauzy/rauzy.hpp"
#include "rauzy/recover.hpp"

namespace rauzy {

// Canonical wire format: keys in fixed insertion order, scalars reduced.
using Json = nlohmann::ordered_json;

inline Json scalar_to_json(const Scalar& s) {
    if (s.is_rational()) return rational_to_string(s.a());
    Json j;
    j["a"] = rational_to_string(s.a());
    j["b"] = rational_to_string(s.b());
    j["D"] = s.d();
    return j;
}

inline Scalar scalar_from_json(const Json& j) {
    if (j.is_string()) return Scalar(rational_from_string(j.get<std::string>()));
    if (j.is_number_integer()) return Scalar(Rational(j.get<long>()));
    if (j.is_object())
        return Scalar(rational_from_string(j.at("a").get<std::string>()),
                      rational_from_string(j.at("b").get<std::string>()), j.at("D").get<long>());
    throw Error("scalar JSON must be a \"p/q\" string or {a,b,D} object");
}

inline Json matrix_to_json(const IntMat& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c)
            row.push_back(scalar_to_json(Scalar(Rational((long)m(i, c)))));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

inline IntMat int_matrix_from_json(const Json& j) {
    int rows, cols;
    const Json* entries_p;
    if (j.is_array()) {  // bare 2D array shorthand
        rows = (int)j.size();
        if (rows == 0 || !j[0].is_array()) throw Error("matrix JSON: expected rows");
        cols = (int)j[0].size();
        entries_p = &j;
    } else {
        rows = j.at("rows").get<int>();
        cols = j.at("cols").get<int>();
        entries_p = &j.at("entries");
    }
    const Json& entries = *entries_p;
    if ((int)entries.size() != rows) throw Error("matrix JSON: row count mismatch");
    IntMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if ((int)entries[i].size() != cols) throw Error("matrix JSON: column count mismatch");
        for (int c = 0; c < cols; ++c) {
            Scalar s = scalar_from_json(entries[i][c]);
            if (!s.is_integer()) throw Error("matrix JSON: non-integer entry");
            if (!s.a().get_num().fits_slong_p()) throw Error("matrix JSON: entry overflow");
            m(i, c) = s.a().get_num().get_si();
        }
    }
    return m;
}

inline Json permutation_to_json(const Permutation& p) {
    Json j;
    j["n"] = p.n();
    j["image"] = p.image();
    return j;
}

inline Permutation permutation_from_json(const Json& j) {
    if (j.is_array()) return Permutation(j.get<std::vector<int>>());
    return Permutation(j.at("image").get<std::vector<int>>());
}

inline Json lambda_to_json(const std::vector<Scalar>& lambda) {
    Json arr = Json::array();
    for (const auto& s : lambda) arr.push_back(scalar_to_json(s));
    return arr;
}

inline std::vector<Scalar> lambda_from_json(const Json& j) {
    std::vector<Scalar> out;
    for (const auto& e : j) out.push_back(scalar_from_json(e));
    return out;
}

inline Json trace_to_json(const InductionTrace& trace) {
    Json j;
    j["pi0"] = trace.initial.pi.image();
    j["lambda0"] = lambda_to_json(trace.initial.lambda);
    Json steps = Json::array();
    for (size_t k = 0; k < trace.steps.size(); ++k) {
        const auto& s = trace.steps[k];
        Json step;
        step["side"] = s.kind.side == Side::Right ? "R" : "L";
        step["type"] = s.kind.type;
        step["A"] = matrix_to_json(s.matrix);
        step["pi"] = s.post_perm.image();
        steps.push_back(std::move(step));
    }
    j["steps"] = std::move(steps);
    return j;
}

inline Json decomposition_to_json(const IET& t, const NaturalDecomposition& dec) {
    Json j;
    Json pieces = Json::array();
    for (const auto& p : dec.pieces) {
        Json piece;
        piece["a"] = scalar_to_json(p.interval.a);
        piece["b"] = scalar_to_json(p.interval.b);
        piece["r"] = p.return_time;
        piece["word"] = p.word;
        pieces.push_back(std::move(piece));
    }
    j["pieces"] = std::move(pieces);
    bool adm = is_admissible(dec, t.n());
    j["admissible"] = adm;
    if (adm) j["A"] = matrix_to_json(visitation_from_decomposition(t, dec));
    return j;
}

inline Json path_to_json(const RealizationPath& path) {
    Json j;
    j["base"] = path.base.image();
    Json kinds = Json::array();
    for (const auto& k : path.kinds) kinds.push_back(k.str());
    j["steps"] = std::move(kinds);
    j["end"] = path.end.image();
    return j;
}

inline Json recovery_report_to_json(const RecoveryReport& rep) {
    Json j;
    Json cands = Json::array();
    for (const auto& c : rep.candidates) {
        Json cand;
        cand["pi"] = c.pi.image();
        Json chain = Json::array();
        for (const auto& p : c.chain) chain.push_back(p.image());
        cand["chain"] = std::move(chain);
        if (rep.mode == RecoveryMode::Strict) {
            Json paths = Json::array();
            for (const auto& path : c.paths) {
                Json steps = Json::array();
                for (const auto& k : path) steps.push_back(k.str());
                paths.push_back(std::move(steps));
            }
            cand["paths"] = std::move(paths);
        }
        cands.push_back(std::move(cand));
    }
    j["candidates"] = std::move(cands);
    return j;
}

struct RecoveryInput {
    int n = 0;
    std::vector<IntMat> products;
    RecoveryMode mode = RecoveryMode::Strict;
};

inline RecoveryInput recovery_input_from_json(const Json& j) {
    RecoveryInput in;
    in.n = j.at("n").get<int>();
    for (const auto& m : j.at("products")) in.products.push_back(int_matrix_from_json(m));
    if (j.contains("mode")) {
        std::string mode = j.at("mode").get<std::string>();
        if (mode == "weak") in.mode = RecoveryMode::Weak;
        else if (mode == "strict") in.mode = RecoveryMode::Strict;
        else throw Error("recovery input: mode must be \"weak\" or \"strict\"");
    }
    return in;
}

}  // namespace rauzy
