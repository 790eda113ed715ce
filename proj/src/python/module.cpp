#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jforge/foliation.hpp"
#include "jforge/io.hpp"

namespace py = pybind11;
using namespace jforge;
using io::json;

namespace {

json parse_str(const std::string& s) {
    try {
        return json::parse(s);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

template <typename T>
T load_as(const std::string& s, const char* what) {
    auto st = io::parse_structure(parse_str(s));
    if (auto* p = std::get_if<T>(&st)) return std::move(*p);
    throw ParseError(std::string("input is not a ") + what + " file");
}

std::string check(const std::string& s) {
    auto st = io::parse_structure(parse_str(s));
    json out;
    if (auto* j = std::get_if<jacobi::JacobiStructure>(&st)) {
        auto rep = jacobi::check_master(*j);
        out["pass"] = rep.pass;
        out["residual_lambda"] = io::multivector_payload(rep.residual_lambda);
        out["residual_e"] = io::multivector_payload(rep.residual_e);
    } else if (auto* a = std::get_if<algebroid::AlgebroidData>(&st)) {
        auto rep = algebroid::check_axioms(*a);
        out["pass"] = rep.pass;
        if (rep.jacobi_witness) out["jacobi_witness"] = *rep.jacobi_witness;
        if (rep.anchor_witness) out["anchor_witness"] = *rep.anchor_witness;
    } else if (auto* t = std::get_if<correspond::TripleData>(&st)) {
        auto rep = foliation::cocycle_check(*t);
        out["pass"] = rep.pass;
        out["star_axioms_ok"] = rep.star_axioms_ok;
    } else {
        throw ParseError("check applies to jacobi, algebroid, or triple files");
    }
    return out.dump();
}

std::string classify(const std::string& s) {
    auto j = load_as<jacobi::JacobiStructure>(s, "jacobi");
    auto rep = jacobi::classify(j);
    auto name = [](jacobi::Flag f) {
        return f == jacobi::Flag::True ? "true"
               : f == jacobi::Flag::False ? "false" : "not-applicable";
    };
    json out;
    out["poisson"] = name(rep.is_poisson);
    out["linear"] = name(rep.is_linear);
    out["affine"] = name(rep.is_affine);
    out["homogeneous"] = name(rep.is_homogeneous);
    out["affine_homogeneous"] = name(rep.is_affine_homogeneous);
    out["strongly_affine"] = name(rep.is_strongly_affine);
    out["rank_zero"] = rep.rank_zero;
    json wit = json::object();
    for (const auto& [flag, pair] : rep.witnesses)
        wit[flag] = json::array({pair.first, pair.second});
    out["witnesses"] = wit;
    return out.dump();
}

std::string to_algebroid(const std::string& s) {
    return io::structure_to_json(
               correspond::algebroid_from_jacobi(load_as<jacobi::JacobiStructure>(s, "jacobi")))
        .dump(2);
}

std::string to_jacobi(const std::string& s) {
    return io::structure_to_json(
               correspond::jacobi_from_algebroid(load_as<algebroid::AlgebroidData>(s, "algebroid")))
        .dump(2);
}

std::string from_triple(const std::string& s) {
    return io::structure_to_json(
               correspond::jacobi_from_triple(load_as<correspond::TripleData>(s, "triple")))
        .dump(2);
}

std::string extract_triple(const std::string& s) {
    return io::structure_to_json(
               correspond::extract_triple(load_as<jacobi::JacobiStructure>(s, "jacobi")))
        .dump(2);
}

std::string poissonize(const std::string& s, bool rank0) {
    auto j = load_as<jacobi::JacobiStructure>(s, "jacobi");
    return io::structure_to_json(rank0 ? correspond::poissonize_rank0(j)
                                       : correspond::poissonize(j))
        .dump(2);
}

std::string tangent_lift(const std::string& s) {
    return io::structure_to_json(
               correspond::tangent_jacobi_lift(load_as<jacobi::JacobiStructure>(s, "jacobi")))
        .dump(2);
}

std::string sn_bracket(const std::string& a, const std::string& b) {
    auto p = load_as<poly::Multivector>(a, "multivector");
    auto q = load_as<poly::Multivector>(b, "multivector");
    return io::structure_to_json(schouten_nijenhuis(p, q)).dump(2);
}

std::string sj_bracket(const std::string& a, const std::string& b) {
    auto p = load_as<jacobi::FirstOrderOp>(a, "op");
    auto q = load_as<jacobi::FirstOrderOp>(b, "op");
    return io::structure_to_json(jacobi::schouten_jacobi(p, q)).dump(2);
}

std::string jacobi_bracket_fn(const std::string& js, const std::string& fs,
                              const std::string& gs) {
    auto j = load_as<jacobi::JacobiStructure>(js, "jacobi");
    auto f = load_as<poly::Multivector>(fs, "multivector");
    auto g = load_as<poly::Multivector>(gs, "multivector");
    if (f.degree() != 0 || g.degree() != 0)
        throw ParseError("jacobi bracket arguments must be degree-0 multivectors");
    return io::structure_to_json(
               poly::Multivector::scalar(jacobi::jacobi_bracket(j, f.scalar_part(), g.scalar_part())))
        .dump(2);
}

py::dict orbit(const std::string& s, const std::vector<double>& point, int steps, unsigned seed,
               int word_length, double tolerance, const std::vector<std::string>& invariants) {
    auto t = load_as<correspond::TripleData>(s, "triple");
    foliation::OrbitOptions opt;
    opt.step_budget = steps;
    opt.seed = seed;
    opt.word_length = word_length;
    opt.rank_tol = tolerance;
    auto j = correspond::jacobi_from_triple(t, false);
    for (const auto& inv_s : invariants) {
        auto inv = load_as<poly::Multivector>(inv_s, "multivector");
        std::vector<int> idmap(static_cast<size_t>(inv.chart()->dim()));
        for (size_t i = 0; i < idmap.size(); ++i) idmap[i] = static_cast<int>(i);
        opt.invariants.push_back(inv.scalar_part().remap(j.chart(), idmap));
    }
    auto orbit = foliation::orbit_sample(t, point, opt);
    py::dict out;
    py::list points;
    py::list words;
    for (const auto& [w, p] : orbit.points) {
        points.append(py::cast(p));
        words.append(w);
    }
    out["points"] = points;
    out["words"] = words;
    out["rank_constant"] = orbit.rank_constant;
    out["base_rank"] = orbit.base_rank.rank;
    out["e_in_image"] = orbit.base_rank.e_in_image;
    py::list invlog;
    for (const auto& log : orbit.invariant_log) invlog.append(py::cast(log));
    out["invariants"] = invlog;
    return out;
}

std::string leaf(const std::string& s, const std::vector<std::string>& point) {
    auto t = load_as<correspond::TripleData>(s, "triple");
    std::vector<Scalar> y;
    for (const auto& p : point) y.push_back(io::scalar_from_string(p));
    auto geom = foliation::leaf_geometry(t, y);
    json out;
    switch (geom.classification) {
        case foliation::LeafClass::Contact: {
            out["classification"] = "contact";
            json eta = json::array();
            for (const auto& v : geom.eta) eta.push_back(v.str());
            out["eta"] = eta;
            break;
        }
        case foliation::LeafClass::LCS: {
            out["classification"] = "lcs";
            json om2 = json::array();
            for (const auto& row : geom.omega2) {
                json r = json::array();
                for (const auto& v : row) r.push_back(v.str());
                om2.push_back(r);
            }
            out["Omega"] = om2;
            json om1 = json::array();
            for (const auto& v : geom.omega1) om1.push_back(v.str());
            out["omega"] = om1;
            break;
        }
        default:
            out["classification"] = "zero-dim";
    }
    return out.dump();
}

py::tuple char_rank_py(const std::string& s, const std::vector<double>& point, double tol) {
    auto j = load_as<jacobi::JacobiStructure>(s, "jacobi");
    auto r = foliation::char_rank(j, point, tol);
    return py::make_tuple(r.rank, r.odd, r.e_in_image);
}

}  // namespace

PYBIND11_MODULE(_jforge, m) {
    m.doc() = "Exact calculus for affine Jacobi structures and Lie algebroids";
    // translators run newest-first, so the base class goes first
    py::register_exception<Error>(m, "JforgeError");
    py::register_exception<ParseError>(m, "JforgeParseError");
    py::register_exception<PreconditionError>(m, "JforgePreconditionError");

    m.def("format_version", [] { return std::string(io::kFormatVersion); });
    m.def("check", &check, py::arg("structure_json"),
          "Master equations / algebroid axioms / triple cocycles, by kind");
    m.def("classify", &classify, py::arg("jacobi_json"));
    m.def("to_algebroid", &to_algebroid, py::arg("jacobi_json"));
    m.def("to_jacobi", &to_jacobi, py::arg("algebroid_json"));
    m.def("from_triple", &from_triple, py::arg("triple_json"));
    m.def("extract_triple", &extract_triple, py::arg("jacobi_json"));
    m.def("poissonize", &poissonize, py::arg("jacobi_json"), py::arg("rank0") = false);
    m.def("tangent_lift", &tangent_lift, py::arg("jacobi_json"));
    m.def("sn_bracket", &sn_bracket, py::arg("a_json"), py::arg("b_json"));
    m.def("sj_bracket", &sj_bracket, py::arg("a_json"), py::arg("b_json"));
    m.def("jacobi_bracket", &jacobi_bracket_fn, py::arg("jacobi_json"), py::arg("f_json"),
          py::arg("g_json"));
    m.def("orbit", &orbit, py::arg("triple_json"), py::arg("point"), py::arg("steps") = 200,
          py::arg("seed") = 1, py::arg("word_length") = 4, py::arg("tolerance") = 1e-9,
          py::arg("invariants") = std::vector<std::string>{});
    m.def("leaf", &leaf, py::arg("triple_json"), py::arg("point"));
    m.def("char_rank", &char_rank_py, py::arg("jacobi_json"), py::arg("point"),
          py::arg("tolerance") = 1e-10);
}
