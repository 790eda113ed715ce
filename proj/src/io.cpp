#include "jforge/io.hpp"

#include <fstream>
#include <sstream>

namespace jforge::io {

namespace {

using poly::Chart;
using poly::ChartPtr;
using poly::Multivector;
using poly::Polynomial;
using poly::VarRole;

[[noreturn]] void fail(const std::string& what) { throw ParseError("schema error: " + what); }

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail(std::string("missing field '") + key + "'");
    return *it;
}

std::string role_name(VarRole r) {
    switch (r) {
        case VarRole::Base: return "base";
        case VarRole::Fiber: return "fiber";
        default: return "extra";
    }
}

VarRole role_of(const std::string& s) {
    if (s == "base") return VarRole::Base;
    if (s == "fiber") return VarRole::Fiber;
    if (s == "extra") return VarRole::Extra;
    fail("unknown variable role '" + s + "'");
}

Scalar parse_scalar_fields(const json& term) {
    Integer num(field(term, "num").get<std::string>());
    Integer den(field(term, "den").get<std::string>());
    if (den <= 0) fail("denominator must be positive");
    return Scalar(num, den);
}

}  // namespace

json chart_to_json(const Chart& c) {
    json vars = json::array();
    for (const auto& v : c.vars()) {
        json jv;
        jv["name"] = v.name;
        if (v.laurent) jv["laurent"] = true;
        if (c.has_split()) jv["role"] = role_name(v.role);
        vars.push_back(jv);
    }
    json out;
    out["vars"] = vars;
    out["split"] = c.has_split();
    return out;
}

ChartPtr chart_from_json(const json& j) {
    bool split = field(j, "split").get<bool>();
    std::vector<Chart::Var> vars;
    for (const auto& jv : field(j, "vars")) {
        Chart::Var v;
        v.name = field(jv, "name").get<std::string>();
        v.laurent = jv.value("laurent", false);
        v.role = split ? role_of(field(jv, "role").get<std::string>()) : VarRole::Base;
        vars.push_back(std::move(v));
    }
    try {
        return poly::share(Chart(std::move(vars), split));
    } catch (const Error& e) {
        fail(e.what());
    }
}

json polynomial_to_json(const Polynomial& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
        json t;
        t["exponents"] = e;
        t["num"] = num_string(c);
        t["den"] = den_string(c);
        terms.push_back(t);
    }
    return terms;
}

Polynomial polynomial_from_json(const json& j, const ChartPtr& chart) {
    Polynomial p(chart);
    if (!j.is_array()) fail("polynomial payload must be an array of terms");
    for (const auto& t : j) {
        std::vector<int> e = field(t, "exponents").get<std::vector<int>>();
        try {
            p.add_term(e, parse_scalar_fields(t));
        } catch (const Error& err) {
            fail(err.what());
        }
    }
    return p;
}

json multivector_payload(const Multivector& m) {
    json comps = json::array();
    for (const auto& [idx, c] : m.components()) {
        json t;
        t["indices"] = idx;
        t["poly"] = polynomial_to_json(c);
        comps.push_back(t);
    }
    json out;
    out["degree"] = m.degree();
    out["components"] = comps;
    return out;
}

Multivector multivector_from_payload(const json& j, const ChartPtr& chart) {
    int degree = field(j, "degree").get<int>();
    Multivector m(chart, degree);
    for (const auto& t : field(j, "components")) {
        std::vector<int> idx = field(t, "indices").get<std::vector<int>>();
        for (size_t i = 1; i < idx.size(); ++i)
            if (idx[i - 1] >= idx[i]) fail("component indices must be strictly increasing");
        try {
            m.add_term(idx, polynomial_from_json(field(t, "poly"), chart));
        } catch (const Error& err) {
            fail(err.what());
        }
    }
    return m;
}

json structure_to_json(const jacobi::JacobiStructure& s) {
    json out;
    out["format_version"] = kFormatVersion;
    out["kind"] = "jacobi";
    out["chart"] = chart_to_json(*s.chart());
    out["lambda"] = multivector_payload(s.lambda);
    out["e"] = multivector_payload(s.e);
    return out;
}

namespace {

json algebroid_body(const algebroid::AlgebroidData& a) {
    json out;
    out["base_chart"] = chart_to_json(*a.base_chart());
    out["rank"] = a.rank();
    out["section_names"] = a.section_names();
    if (a.distinguished)
        out["distinguished"] = *a.distinguished;
    else
        out["distinguished"] = nullptr;
    json c = json::array();
    for (const auto& [key, p] : a.c_table()) {
        json t;
        t["lower"] = std::vector<int>{key[0], key[1]};
        t["upper"] = key[2];
        t["poly"] = polynomial_to_json(p);
        c.push_back(t);
    }
    out["c"] = c;
    json rho = json::array();
    for (const auto& [key, p] : a.anchor_table()) {
        json t;
        t["section"] = key[0];
        t["var"] = key[1];
        t["poly"] = polynomial_to_json(p);
        rho.push_back(t);
    }
    out["anchor"] = rho;
    return out;
}

algebroid::AlgebroidData algebroid_from_body(const json& j) {
    ChartPtr base = chart_from_json(field(j, "base_chart"));
    int rank = field(j, "rank").get<int>();
    std::vector<std::string> names;
    if (j.contains("section_names")) names = j["section_names"].get<std::vector<std::string>>();
    algebroid::AlgebroidData a(base, rank, names);
    const auto& dj = field(j, "distinguished");
    if (!dj.is_null()) a.distinguished = dj.get<int>();
    for (const auto& t : field(j, "c")) {
        auto lower = field(t, "lower").get<std::vector<int>>();
        if (lower.size() != 2) fail("'lower' must hold two indices");
        try {
            a.set_c(lower[0], lower[1], field(t, "upper").get<int>(),
                    polynomial_from_json(field(t, "poly"), base));
        } catch (const Error& err) {
            fail(err.what());
        }
    }
    for (const auto& t : field(j, "anchor")) {
        try {
            a.set_anchor(field(t, "section").get<int>(), field(t, "var").get<int>(),
                         polynomial_from_json(field(t, "poly"), base));
        } catch (const Error& err) {
            fail(err.what());
        }
    }
    return a;
}

json form_payload(const algebroid::AlgebroidForm& f) {
    json comps = json::array();
    for (const auto& [idx, c] : f.components()) {
        json t;
        t["indices"] = idx;
        t["poly"] = polynomial_to_json(c);
        comps.push_back(t);
    }
    return comps;
}

algebroid::AlgebroidForm form_from_payload(const json& j, const ChartPtr& base, int range,
                                           int degree) {
    algebroid::AlgebroidForm f(base, range, degree);
    for (const auto& t : j) {
        try {
            f.add_term(field(t, "indices").get<std::vector<int>>(),
                       polynomial_from_json(field(t, "poly"), base));
        } catch (const Error& err) {
            fail(err.what());
        }
    }
    return f;
}

}  // namespace

json structure_to_json(const algebroid::AlgebroidData& a) {
    json out = algebroid_body(a);
    out["format_version"] = kFormatVersion;
    out["kind"] = "algebroid";
    return out;
}

json structure_to_json(const correspond::TripleData& t) {
    json out;
    out["format_version"] = kFormatVersion;
    out["kind"] = "triple";
    out["star"] = algebroid_body(t.star);
    out["x0"] = form_payload(t.x0);
    out["p0"] = form_payload(t.p0);
    return out;
}

json structure_to_json(const poly::Multivector& m) {
    json out;
    out["format_version"] = kFormatVersion;
    out["kind"] = "multivector";
    out["chart"] = chart_to_json(*m.chart());
    out["payload"] = multivector_payload(m);
    return out;
}

json structure_to_json(const jacobi::FirstOrderOp& op) {
    json out;
    out["format_version"] = kFormatVersion;
    out["kind"] = "op";
    out["chart"] = chart_to_json(*op.chart());
    out["p"] = multivector_payload(op.p);
    out["q"] = op.q ? multivector_payload(*op.q) : json(nullptr);
    return out;
}

Structure parse_structure(const json& j) {
    if (field(j, "format_version").get<std::string>() != kFormatVersion)
        fail("unsupported format_version");
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "jacobi") {
        ChartPtr chart = chart_from_json(field(j, "chart"));
        Multivector lambda = multivector_from_payload(field(j, "lambda"), chart);
        Multivector e = multivector_from_payload(field(j, "e"), chart);
        if (lambda.degree() != 2 || e.degree() != 1)
            fail("jacobi payload needs degrees 2 and 1");
        return jacobi::JacobiStructure(std::move(lambda), std::move(e));
    }
    if (kind == "algebroid") return algebroid_from_body(j);
    if (kind == "triple") {
        algebroid::AlgebroidData star = algebroid_from_body(field(j, "star"));
        auto x0 = form_from_payload(field(j, "x0"), star.base_chart(), star.rank(), 1);
        auto p0 = form_from_payload(field(j, "p0"), star.base_chart(), star.rank(), 2);
        return correspond::TripleData(std::move(star), std::move(x0), std::move(p0));
    }
    if (kind == "multivector") {
        ChartPtr chart = chart_from_json(field(j, "chart"));
        return multivector_from_payload(field(j, "payload"), chart);
    }
    if (kind == "op") {
        ChartPtr chart = chart_from_json(field(j, "chart"));
        Multivector p = multivector_from_payload(field(j, "p"), chart);
        const auto& qj = field(j, "q");
        if (qj.is_null()) {
            if (p.degree() != 0) fail("op with absent Q needs degree 0");
            return jacobi::FirstOrderOp(std::move(p));
        }
        return jacobi::FirstOrderOp(std::move(p), multivector_from_payload(qj, chart));
    }
    fail("unknown kind '" + kind + "'");
}

Structure load_structure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return parse_structure(j);
}

void save_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file '" + path + "'");
    out << canonical_dump(j) << "\n";
}

std::string canonical_dump(const json& j) { return j.dump(2); }

std::string digest(const json& j) {
    std::string s = j.dump();
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << "fnv1a:" << std::hex << h;
    return os.str();
}

json certificate_to_json(const Certificate& c) {
    json out;
    out["certificate"] = {
        {"operation", c.operation},   {"input_digest", c.input_digest},
        {"verdict", c.verdict},       {"detail", c.detail},
        {"wall_time_ms", c.wall_time_ms}, {"mode", c.mode},
        {"tolerance", c.tolerance ? json(*c.tolerance) : json(nullptr)},
    };
    return out;
}

Scalar scalar_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Scalar(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
        return Scalar(num, den);
    } catch (const std::exception&) {
        throw ParseError("cannot parse rational '" + s + "'");
    }
}

std::vector<Scalar> parse_point_exact(const std::string& csv) {
    std::vector<Scalar> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(scalar_from_string(item));
    return out;
}

std::vector<double> parse_point_float(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            if (item.find('/') != std::string::npos)
                out.push_back(to_double(scalar_from_string(item)));
            else
                out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ParseError("cannot parse coordinate '" + item + "'");
        }
    }
    return out;
}

}  // namespace jforge::io
