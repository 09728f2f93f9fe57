#include "tracehull/io.hpp"

#include <fstream>

#include "tracehull/errors.hpp"

namespace tracehull::io {

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const char* what) {
    if (!j.is_object()) throw input_error(std::string(what) + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const char* k : allowed) ok = ok || key == k;
        if (!ok) throw input_error(std::string(what) + ": unknown field \"" + key + "\"");
    }
}

Rational rational_from_json_value(const json& v, const char* what) {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw input_error(std::string(what) + ": expected an exact number string");
}

std::string bigreal_string(const BigReal& v) {
    return v.to_string(30);
}

}  // namespace

std::string rational_string(const Rational& q) {
    return q.has_terminating_decimal() ? q.to_exact_decimal_string() : q.to_fraction_string();
}

json poly_to_json(const Poly2& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms())
        terms.push_back({{"dx", m.dx}, {"dy", m.dy}, {"coeff", rational_string(c)}});
    return {{"terms", terms}};
}

Poly2 poly_from_json(const json& j) {
    reject_unknown(j, {"terms"}, "polynomial");
    if (!j.contains("terms") || !j["terms"].is_array()) throw input_error("polynomial: missing terms array");
    Poly2 p;
    for (const auto& t : j["terms"]) {
        reject_unknown(t, {"dx", "dy", "coeff"}, "polynomial term");
        if (!t.contains("dx") || !t.contains("dy") || !t.contains("coeff"))
            throw input_error("polynomial term: needs dx, dy, coeff");
        int dx = t["dx"].get<int>(), dy = t["dy"].get<int>();
        if (dx < 0 || dy < 0) throw input_error("polynomial term: negative exponent");
        p.add_term({dx, dy}, rational_from_json_value(t["coeff"], "polynomial coefficient"));
    }
    return p;
}

json region_to_json(const Region& r) {
    json out;
    json axis = json::array({rational_string(r.lo), rational_string(r.hi)});
    out["box"] = json::array({axis, axis});
    if (!r.constraint) {
        out["constraint"] = nullptr;
    } else {
        out["constraint"] = {
            {"form", r.constraint->form == ConstraintForm::Sum ? "sum" : "product"},
            {"dir", r.constraint->dir == ConstraintDir::Geq ? "geq" : "leq"},
            {"bound", rational_string(r.constraint->bound)},
        };
    }
    return out;
}

Region region_from_json(const json& j) {
    reject_unknown(j, {"box", "constraint"}, "region");
    Region r;
    if (j.contains("box")) {
        const auto& b = j["box"];
        if (!b.is_array() || b.size() != 2 || !b[0].is_array() || b[0].size() != 2)
            throw input_error("region: box must be [[lo,hi],[lo,hi]]");
        Rational lo0 = rational_from_json_value(b[0][0], "box bound");
        Rational hi0 = rational_from_json_value(b[0][1], "box bound");
        Rational lo1 = rational_from_json_value(b[1][0], "box bound");
        Rational hi1 = rational_from_json_value(b[1][1], "box bound");
        if (lo0 != lo1 || hi0 != hi1) throw input_error("region: box must be a square");
        if (lo0 >= hi0) throw input_error("region: box is empty");
        r.lo = lo0;
        r.hi = hi0;
    }
    if (j.contains("constraint") && !j["constraint"].is_null()) {
        const auto& c = j["constraint"];
        reject_unknown(c, {"form", "dir", "bound"}, "region constraint");
        std::string form = c.value("form", "");
        std::string dir = c.value("dir", "");
        if (!c.contains("bound")) throw input_error("region constraint: missing bound");
        Constraint con;
        if (form == "sum") con.form = ConstraintForm::Sum;
        else if (form == "product") con.form = ConstraintForm::Product;
        else throw input_error("region constraint: form must be sum or product");
        if (dir == "geq") con.dir = ConstraintDir::Geq;
        else if (dir == "leq") con.dir = ConstraintDir::Leq;
        else throw input_error("region constraint: dir must be geq or leq");
        con.bound = rational_from_json_value(c["bound"], "region bound");
        r.constraint = con;
    }
    return r;
}

Region region_from_inline(const std::string& s) {
    auto strip = [](std::string t) {
        t.erase(0, t.find_first_not_of(" \t"));
        t.erase(t.find_last_not_of(" \t") + 1);
        return t;
    };
    size_t op_pos = s.find(">=");
    ConstraintDir dir = ConstraintDir::Geq;
    if (op_pos == std::string::npos) {
        op_pos = s.find("<=");
        dir = ConstraintDir::Leq;
    }
    if (op_pos == std::string::npos) throw input_error("region: expected sum>=<bound> or product<=<bound>");
    std::string lhs = strip(s.substr(0, op_pos));
    std::string rhs = strip(s.substr(op_pos + 2));
    ConstraintForm form;
    if (lhs == "sum" || lhs == "x+y") form = ConstraintForm::Sum;
    else if (lhs == "product" || lhs == "x*y" || lhs == "xy") form = ConstraintForm::Product;
    else throw input_error("region: left side must be sum or product");
    return Region::with(form, dir, Rational::parse(rhs));
}

json atoms_to_json(const AtomsData& a) {
    json arr = json::array();
    if (a.symmetric) {
        for (const auto& s : a.sym)
            arr.push_back({{"e1", rational_string(s.e1)}, {"e2", rational_string(s.e2)}});
    } else {
        for (const auto& [x, y] : a.xy)
            arr.push_back({{"x", rational_string(x)}, {"y", rational_string(y)}});
    }
    return {{"atoms", arr}};
}

AtomsData atoms_from_json(const json& j) {
    reject_unknown(j, {"atoms"}, "atoms file");
    if (!j.contains("atoms") || !j["atoms"].is_array() || j["atoms"].empty())
        throw input_error("atoms file: needs a nonempty atoms array");
    AtomsData out;
    const auto& first = j["atoms"][0];
    out.symmetric = first.contains("e1");
    for (const auto& a : j["atoms"]) {
        if (out.symmetric) {
            reject_unknown(a, {"e1", "e2"}, "atom");
            if (!a.contains("e1") || !a.contains("e2")) throw input_error("atom: needs e1 and e2");
            out.sym.push_back({rational_from_json_value(a["e1"], "atom e1"),
                               rational_from_json_value(a["e2"], "atom e2")});
        } else {
            reject_unknown(a, {"x", "y"}, "atom");
            if (!a.contains("x") || !a.contains("y")) throw input_error("atom: needs x and y");
            out.xy.push_back({rational_from_json_value(a["x"], "atom x"),
                              rational_from_json_value(a["y"], "atom y")});
        }
    }
    return out;
}

json weights_to_json(const std::vector<Rational>& w) {
    json arr = json::array();
    for (const auto& v : w) arr.push_back(v.to_fraction_string());
    return {{"weights", arr}};
}

std::vector<Rational> weights_from_json(const json& j) {
    reject_unknown(j, {"weights"}, "weights file");
    if (!j.contains("weights") || !j["weights"].is_array())
        throw input_error("weights file: needs a weights array");
    std::vector<Rational> out;
    for (const auto& w : j["weights"]) out.push_back(rational_from_json_value(w, "weight"));
    return out;
}

json to_json(const MinResult& m) {
    return {
        {"x", bigreal_string(m.x)},
        {"y", bigreal_string(m.y)},
        {"value", bigreal_string(m.value)},
        {"kkt_residual", bigreal_string(m.kkt_residual)},
        {"active_set", m.active_set},
        {"converged", m.converged},
    };
}

json to_json(const BoundResult& b) {
    return {
        {"bound", bigreal_string(b.bound)},
        {"achieved_gap", b.achieved_gap},
        {"converged", b.converged},
        {"cells", b.cells},
    };
}

json to_json(const HyperplaneReport& r) {
    return {
        {"expectation", r.expectation.to_fraction_string()},
        {"expectation_decimal", r.expectation.to_decimal_string(20)},
        {"minimum", to_json(r.min_result)},
        {"certified_bound", to_json(r.bound)},
        {"margin", bigreal_string(r.margin)},
        {"verdict", verdict_name(r.verdict)},
        {"conclusion", r.conclusion},
    };
}

namespace {

template <typename S>
json measure_json_impl(const MeasureReport<S>& r) {
    json atoms = json::array();
    for (size_t i = 0; i < r.atom_inside.size(); ++i)
        atoms.push_back({{"inside", static_cast<bool>(r.atom_inside[i])},
                         {"slack", rational_string(r.atom_slack[i])}});
    json weights = json::array();
    for (const auto& w : r.weights) {
        if constexpr (std::is_same_v<S, Rational>) weights.push_back(w.to_fraction_string());
        else weights.push_back(bigreal_string(w));
    }
    json residual = json::array();
    for (const auto& v : r.residual) {
        if constexpr (std::is_same_v<S, Rational>) residual.push_back(v.to_fraction_string());
        else residual.push_back(bigreal_string(v));
    }
    std::string rinf;
    if constexpr (std::is_same_v<S, Rational>) rinf = r.residual_inf.to_fraction_string();
    else rinf = bigreal_string(r.residual_inf);
    return {
        {"verdict", verdict_name(r.verdict)},
        {"weights_source", r.weights_given ? "given" : "solved"},
        {"atoms", atoms},
        {"weights", weights},
        {"residual", residual},
        {"residual_inf", rinf},
        {"note", r.note},
    };
}

}  // namespace

json to_json(const MeasureReport<Rational>& r) { return measure_json_impl(r); }
json to_json(const MeasureReport<BigReal>& r) { return measure_json_impl(r); }

json to_json(const IdentityReport& r) {
    json items = json::array();
    for (const auto& i : r.items)
        items.push_back({{"name", i.name}, {"pass", i.pass}, {"mismatch", i.mismatch}});
    return {{"all_pass", r.all_pass}, {"items", items}};
}

json to_json(const WitnessMeasure& w) {
    AtomsData a;
    a.symmetric = w.case_id == CaseId::A;
    a.sym = w.sym_atoms;
    a.xy = w.xy_atoms;
    json out = atoms_to_json(a);
    out["weights"] = weights_to_json(w.weights)["weights"];
    return out;
}

json to_json(const ThresholdResult& r) {
    json trace = json::array();
    for (const auto& [u, k] : r.trace)
        trace.push_back({{"bound", rational_string(u)}, {"verdict", k > 0 ? "feasible" : "infeasible"}});
    return {
        {"u_feasible", rational_string(r.u_feasible)},
        {"u_infeasible", rational_string(r.u_infeasible)},
        {"witness", to_json(r.witness)},
        {"separator", poly_to_json(r.separator)},
        {"iterations", r.iterations},
        {"seconds", r.seconds},
        {"trace", trace},
        {"witness_verdict", verdict_name(r.witness_verdict)},
        {"separator_verdict", verdict_name(r.separator_verdict)},
    };
}

json to_json(const std::vector<oracle::OracleReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports)
        arr.push_back({{"quantity", r.quantity},
                       {"oracle", r.oracle_value},
                       {"main", r.main_value},
                       {"discrepancy", r.discrepancy},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass}});
    return {{"oracle_reports", arr}};
}

std::string verdict_from_json_roundtrip(const json& j) {
    if (!j.contains("verdict")) throw input_error("report: missing verdict");
    return j["verdict"].get<std::string>();
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw input_error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    out << text;
}

}  // namespace tracehull::io
