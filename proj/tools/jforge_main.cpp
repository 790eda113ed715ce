#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "jforge/foliation.hpp"
#include "jforge/io.hpp"

using namespace jforge;
using io::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

double default_tolerance() {
    if (const char* env = std::getenv("JFORGE_TOLERANCE")) {
        try {
            return std::stod(env);
        } catch (...) {
        }
    }
    return 1e-9;
}

void emit(const json& j, const std::string& output) {
    if (output.empty())
        std::cout << io::canonical_dump(j) << "\n";
    else
        io::save_json(j, output);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return j;
}

template <typename T>
T expect_kind(io::Structure&& s, const char* what) {
    if (auto* p = std::get_if<T>(&s)) return std::move(*p);
    throw ParseError(std::string("input is not a ") + what + " file");
}

int cmd_check(const std::string& input, const std::string& output) {
    Timer timer;
    json in = load_json_file(input);
    io::Structure s = io::parse_structure(in);
    io::Certificate cert;
    cert.input_digest = io::digest(in);
    bool pass = false;

    if (auto* j = std::get_if<jacobi::JacobiStructure>(&s)) {
        cert.operation = "check-master";
        auto rep = jacobi::check_master(*j);
        pass = rep.pass;
        cert.detail["residual_lambda"] = io::multivector_payload(rep.residual_lambda);
        cert.detail["residual_e"] = io::multivector_payload(rep.residual_e);
    } else if (auto* a = std::get_if<algebroid::AlgebroidData>(&s)) {
        cert.operation = "check-axioms";
        auto rep = algebroid::check_axioms(*a);
        pass = rep.pass;
        if (rep.jacobi_witness) {
            cert.detail["jacobi_witness"] = *rep.jacobi_witness;
        }
        if (rep.anchor_witness) cert.detail["anchor_witness"] = *rep.anchor_witness;
    } else if (auto* t = std::get_if<correspond::TripleData>(&s)) {
        cert.operation = "check-cocycles";
        auto rep = foliation::cocycle_check(*t);
        pass = rep.pass;
        cert.detail["star_axioms_ok"] = rep.star_axioms_ok;
        if (rep.residual_x0) {
            json comps = json::array();
            for (const auto& [idx, c] : rep.residual_x0->components())
                comps.push_back({{"indices", idx}, {"poly", io::polynomial_to_json(c)}});
            cert.detail["residual_x0"] = comps;
        }
        if (rep.residual_p0) {
            json comps = json::array();
            for (const auto& [idx, c] : rep.residual_p0->components())
                comps.push_back({{"indices", idx}, {"poly", io::polynomial_to_json(c)}});
            cert.detail["residual_p0"] = comps;
        }
    } else {
        throw ParseError("check applies to jacobi, algebroid, or triple files");
    }
    cert.verdict = pass ? "pass" : "fail";
    cert.wall_time_ms = timer.ms();
    emit(io::certificate_to_json(cert), output);
    return pass ? kExitPass : kExitFail;
}

const char* flag_name(jacobi::Flag f) {
    switch (f) {
        case jacobi::Flag::True: return "true";
        case jacobi::Flag::False: return "false";
        default: return "not-applicable";
    }
}

int cmd_classify(const std::string& input, const std::string& output) {
    Timer timer;
    json in = load_json_file(input);
    auto j = expect_kind<jacobi::JacobiStructure>(io::parse_structure(in), "jacobi");
    auto rep = jacobi::classify(j);
    io::Certificate cert;
    cert.operation = "classify";
    cert.input_digest = io::digest(in);
    cert.verdict = "pass";
    json flags;
    flags["poisson"] = flag_name(rep.is_poisson);
    flags["linear"] = flag_name(rep.is_linear);
    flags["affine"] = flag_name(rep.is_affine);
    flags["homogeneous"] = flag_name(rep.is_homogeneous);
    flags["affine_homogeneous"] = flag_name(rep.is_affine_homogeneous);
    flags["strongly_affine"] = flag_name(rep.is_strongly_affine);
    cert.detail["flags"] = flags;
    cert.detail["rank_zero"] = rep.rank_zero;
    json wit = json::object();
    for (const auto& [name, pair] : rep.witnesses)
        wit[name] = json::array({pair.first, pair.second});
    cert.detail["witnesses"] = wit;
    cert.wall_time_ms = timer.ms();
    emit(io::certificate_to_json(cert), output);
    return kExitPass;
}

int transform_jacobi(const std::string& input, const std::string& output,
                     const std::function<json(const jacobi::JacobiStructure&)>& op) {
    auto j = expect_kind<jacobi::JacobiStructure>(io::load_structure(input), "jacobi");
    emit(op(j), output);
    return kExitPass;
}

int cmd_orbit(const std::string& input, const std::string& output, const std::string& point,
              unsigned seed, int steps, int word_length, double tolerance,
              const std::vector<std::string>& invariant_paths) {
    auto t = expect_kind<correspond::TripleData>(io::load_structure(input), "triple");
    foliation::OrbitOptions opt;
    opt.seed = seed;
    opt.step_budget = steps;
    opt.word_length = word_length;
    opt.rank_tol = tolerance;
    auto j = correspond::jacobi_from_triple(t, false);
    for (const auto& path : invariant_paths) {
        auto inv = expect_kind<poly::Multivector>(io::load_structure(path), "multivector");
        if (inv.degree() != 0) throw ParseError("invariants must be degree-0 multivector files");
        std::vector<int> idmap(static_cast<size_t>(inv.chart()->dim()));
        for (size_t i = 0; i < idmap.size(); ++i) idmap[i] = static_cast<int>(i);
        opt.invariants.push_back(inv.scalar_part().remap(j.chart(), idmap));
    }
    auto x0 = io::parse_point_float(point);
    if (static_cast<int>(x0.size()) != t.rank()) throw ParseError("point dimension mismatch");
    auto orbit = foliation::orbit_sample(t, x0, opt);

    std::ostringstream os;
    os << "# jforge orbit\n";
    os << "# seed " << seed << " steps " << steps << " word_length " << word_length
       << " tolerance " << tolerance << "\n";
    os << "# base_rank " << orbit.base_rank.rank << " e_in_image "
       << (orbit.base_rank.e_in_image ? 1 : 0) << " rank_constant "
       << (orbit.rank_constant ? 1 : 0) << "\n";
    os << "# columns: step";
    for (int i = 0; i < t.rank(); ++i) os << "\tx" << (i + 1);
    for (size_t k = 0; k < opt.invariants.size(); ++k) os << "\tinv" << (k + 1);
    os << "\tword\n";
    os.precision(17);
    for (size_t s = 0; s < orbit.points.size(); ++s) {
        os << s;
        for (double v : orbit.points[s].second) os << "\t" << v;
        for (size_t k = 0; k < orbit.invariant_log.size(); ++k)
            os << "\t" << orbit.invariant_log[k][s];
        os << "\t" << orbit.points[s].first << "\n";
    }
    if (output.empty())
        std::cout << os.str();
    else {
        std::ofstream f(output);
        if (!f) throw Error("cannot open output file '" + output + "'");
        f << os.str();
    }
    return orbit.rank_constant ? kExitPass : kExitFail;
}

int cmd_leaf(const std::string& input, const std::string& output, const std::string& point,
             const std::string& mode, double tolerance) {
    Timer timer;
    json in = load_json_file(input);
    auto t = expect_kind<correspond::TripleData>(io::parse_structure(in), "triple");
    std::vector<Scalar> y;
    if (mode == "exact") {
        y = io::parse_point_exact(point);
    } else {
        for (double v : io::parse_point_float(point)) y.push_back(Scalar(v));
    }
    if (static_cast<int>(y.size()) != t.rank()) throw ParseError("point dimension mismatch");
    auto geom = foliation::leaf_geometry(t, y);

    io::Certificate cert;
    cert.operation = "leaf";
    cert.input_digest = io::digest(in);
    cert.verdict = "pass";
    cert.mode = mode;
    if (mode != "exact") cert.tolerance = tolerance;
    auto scalar_str = [](const Scalar& s) { return s.str(); };
    switch (geom.classification) {
        case foliation::LeafClass::Contact: {
            cert.detail["classification"] = "contact";
            json eta = json::array();
            for (const auto& v : geom.eta) eta.push_back(scalar_str(v));
            cert.detail["eta"] = eta;
            break;
        }
        case foliation::LeafClass::LCS: {
            cert.detail["classification"] = "lcs";
            json om2 = json::array();
            for (const auto& row : geom.omega2) {
                json r = json::array();
                for (const auto& v : row) r.push_back(scalar_str(v));
                om2.push_back(r);
            }
            json om1 = json::array();
            for (const auto& v : geom.omega1) om1.push_back(scalar_str(v));
            cert.detail["Omega"] = om2;
            cert.detail["omega"] = om1;
            break;
        }
        default:
            cert.detail["classification"] = "zero-dim";
    }
    cert.wall_time_ms = timer.ms();
    emit(io::certificate_to_json(cert), output);
    return kExitPass;
}

int cmd_bracket(const std::string& kind, const std::vector<std::string>& inputs,
                const std::string& output) {
    if (kind == "sn") {
        if (inputs.size() != 2) throw ParseError("bracket --kind sn needs two multivector files");
        auto a = expect_kind<poly::Multivector>(io::load_structure(inputs[0]), "multivector");
        auto b = expect_kind<poly::Multivector>(io::load_structure(inputs[1]), "multivector");
        emit(io::structure_to_json(schouten_nijenhuis(a, b)), output);
        return kExitPass;
    }
    if (kind == "sj") {
        if (inputs.size() != 2) throw ParseError("bracket --kind sj needs two op files");
        auto a = expect_kind<jacobi::FirstOrderOp>(io::load_structure(inputs[0]), "op");
        auto b = expect_kind<jacobi::FirstOrderOp>(io::load_structure(inputs[1]), "op");
        emit(io::structure_to_json(jacobi::schouten_jacobi(a, b)), output);
        return kExitPass;
    }
    if (kind == "jacobi") {
        if (inputs.size() != 3)
            throw ParseError("bracket --kind jacobi needs a jacobi file and two functions");
        auto j = expect_kind<jacobi::JacobiStructure>(io::load_structure(inputs[0]), "jacobi");
        auto f = expect_kind<poly::Multivector>(io::load_structure(inputs[1]), "multivector");
        auto g = expect_kind<poly::Multivector>(io::load_structure(inputs[2]), "multivector");
        if (f.degree() != 0 || g.degree() != 0)
            throw ParseError("jacobi bracket arguments must be degree-0 multivector files");
        auto out = poly::Multivector::scalar(
            jacobi::jacobi_bracket(j, f.scalar_part(), g.scalar_part()));
        emit(io::structure_to_json(out), output);
        return kExitPass;
    }
    throw ParseError("unknown bracket kind '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"jforge: exact calculus for affine Jacobi structures, Lie algebroids on the\n"
                 "affine dual, strongly-affine triples, and their characteristic foliations"};
    app.require_subcommand(1);

    std::string input, output, point, mode = "exact", kind = "sn", lift_mode, section;
    std::vector<std::string> bracket_inputs, invariants;
    bool rank0 = false, tangent = false;
    unsigned seed = 1;
    int steps = 200, word_length = 4;
    double tolerance = default_tolerance();

    auto add_io = [&](CLI::App* cmd, bool need_output_only = false) {
        if (!need_output_only) cmd->add_option("--input", input, "input structure file")->required();
        cmd->add_option("--output", output, "output path (stdout when omitted)");
    };

    auto* c_check = app.add_subcommand("check", "verify master equations / axioms / cocycles");
    add_io(c_check);
    auto* c_classify = app.add_subcommand("classify", "classification report of a Jacobi file");
    add_io(c_classify);
    auto* c_toalg = app.add_subcommand("to-algebroid", "affine Jacobi -> Lie algebroid on A+");
    add_io(c_toalg);
    auto* c_tojac = app.add_subcommand("to-jacobi", "Lie algebroid on A+ -> affine Jacobi");
    add_io(c_tojac);
    auto* c_fromtriple = app.add_subcommand("from-triple", "strongly-affine triple -> Jacobi");
    add_io(c_fromtriple);
    auto* c_extract = app.add_subcommand("extract-triple", "strongly-affine Jacobi -> triple");
    add_io(c_extract);
    auto* c_poisson = app.add_subcommand("poissonize", "affine Jacobi -> hull linear Poisson");
    add_io(c_poisson);
    c_poisson->add_flag("--rank0", rank0, "rank-0 route: Laurent 1/t Poissonization");
    auto* c_lift = app.add_subcommand("lift", "tangent Jacobi lift / algebroid lifts");
    add_io(c_lift);
    c_lift->add_flag("--tangent", tangent, "tangent Jacobi lift of a jacobi file");
    c_lift->add_option("--mode", lift_mode, "complete|vertical (algebroid lift of --section)");
    c_lift->add_option("--section", section, "multisection as a vertical multivector file");
    auto* c_bracket = app.add_subcommand("bracket", "SN / Schouten-Jacobi / Jacobi bracket");
    c_bracket->add_option("--kind", kind, "sn|sj|jacobi")->required();
    c_bracket->add_option("--input", bracket_inputs, "input files (repeat)")->required();
    c_bracket->add_option("--output", output, "output path");
    auto* c_orbit = app.add_subcommand("orbit", "sample the characteristic-leaf orbit");
    add_io(c_orbit);
    c_orbit->add_option("--point", point, "base point, comma separated")->required();
    c_orbit->add_option("--seed", seed, "RNG seed");
    c_orbit->add_option("--steps", steps, "flow-step budget");
    c_orbit->add_option("--word-length", word_length, "group word length");
    c_orbit->add_option("--tolerance", tolerance, "rank tolerance");
    c_orbit->add_option("--invariant", invariants, "conserved polynomial file (repeat)");
    auto* c_leaf = app.add_subcommand("leaf", "leaf classification and form values at a point");
    add_io(c_leaf);
    c_leaf->add_option("--point", point, "point, comma separated (rationals in exact mode)")
        ->required();
    c_leaf->add_option("--mode", mode, "exact|float");
    c_leaf->add_option("--tolerance", tolerance, "float-mode tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_check->parsed()) return cmd_check(input, output);
        if (c_classify->parsed()) return cmd_classify(input, output);
        if (c_toalg->parsed())
            return transform_jacobi(input, output, [](const jacobi::JacobiStructure& j) {
                return io::structure_to_json(correspond::algebroid_from_jacobi(j));
            });
        if (c_tojac->parsed()) {
            auto a = expect_kind<algebroid::AlgebroidData>(io::load_structure(input), "algebroid");
            emit(io::structure_to_json(correspond::jacobi_from_algebroid(a)), output);
            return kExitPass;
        }
        if (c_fromtriple->parsed()) {
            auto t = expect_kind<correspond::TripleData>(io::load_structure(input), "triple");
            emit(io::structure_to_json(correspond::jacobi_from_triple(t)), output);
            return kExitPass;
        }
        if (c_extract->parsed())
            return transform_jacobi(input, output, [](const jacobi::JacobiStructure& j) {
                return io::structure_to_json(correspond::extract_triple(j));
            });
        if (c_poisson->parsed())
            return transform_jacobi(input, output, [&](const jacobi::JacobiStructure& j) {
                return io::structure_to_json(rank0 ? correspond::poissonize_rank0(j)
                                                   : correspond::poissonize(j));
            });
        if (c_lift->parsed()) {
            if (tangent)
                return transform_jacobi(input, output, [](const jacobi::JacobiStructure& j) {
                    return io::structure_to_json(correspond::tangent_jacobi_lift(j));
                });
            if (lift_mode != "complete" && lift_mode != "vertical")
                throw ParseError("lift needs --tangent or --mode complete|vertical");
            if (section.empty()) throw ParseError("lift --mode needs --section");
            auto a = expect_kind<algebroid::AlgebroidData>(io::load_structure(input), "algebroid");
            auto mv = expect_kind<poly::Multivector>(io::load_structure(section), "multivector");
            // read the multisection off its vertical-lift encoding: pure
            // fiber components with basic coefficients on the total chart
            auto total = algebroid::total_chart(a);
            const int m = a.base_dim();
            poly::require_same_chart(total, mv.chart());
            algebroid::Multisection x(a.base_chart(), a.rank(), mv.degree());
            std::vector<int> down(static_cast<size_t>(total->dim()), -1);
            for (int l = 0; l < m; ++l) down[static_cast<size_t>(l)] = l;
            for (const auto& [idx, c] : mv.components()) {
                std::vector<int> sec;
                for (int i : idx) {
                    if (i < m) throw ParseError("--section must be a vertical multivector");
                    sec.push_back(i - m);
                }
                x.add_term(sec, c.remap(a.base_chart(), down));
            }
            auto l = algebroid::lift(a, x,
                                     lift_mode == "complete" ? algebroid::LiftMode::Complete
                                                             : algebroid::LiftMode::Vertical,
                                     total);
            emit(io::structure_to_json(l), output);
            return kExitPass;
        }
        if (c_bracket->parsed()) return cmd_bracket(kind, bracket_inputs, output);
        if (c_orbit->parsed())
            return cmd_orbit(input, output, point, seed, steps, word_length, tolerance, invariants);
        if (c_leaf->parsed()) return cmd_leaf(input, output, point, mode, tolerance);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what();
        if (!e.witness().empty()) std::cerr << " [witness " << e.witness() << "]";
        std::cerr << "\n";
        return kExitPrecondition;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitPass;
}
