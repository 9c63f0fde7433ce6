#pragma once

#include <json.hpp>

#include "kosgeo/areas.hpp"
#include "kosgeo/assembly.hpp"
#include "kosgeo/moduli.hpp"
#include "kosgeo/realhyp.hpp"
#include "kosgeo/selftest.hpp"
#include "kosgeo/triangles.hpp"

namespace kosgeo::cli {

using nlohmann::json;

// Exit codes: 0 computed/feasible, 1 computed/infeasible (gate verbs),
// 2 invalid input, 3 internal numerical disagreement.
struct RunResult {
    json output;
    int exit_code = 0;
};

struct JobSpec {
    std::string verb;
    std::string sub;
    json input = json::object();
    Tolerance tol = default_tol();
    std::uint64_t seed = 20240901;
    bool signed_area = false;
};

namespace detail {

inline cdouble parse_complex(const json& j) {
    if (j.is_number()) return cdouble(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cdouble(j[0].get<double>(), j[1].get<double>());
    throw std::invalid_argument("expected a complex scalar as [re, im]");
}

inline json dump_complex(cdouble z) { return json::array({z.real(), z.imag()}); }

inline BallPoint parse_point(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a point array");
    cvector v;
    for (const auto& c : j) v.push_back(parse_complex(c));
    return BallPoint(std::move(v));
}

inline PointConfig parse_points(const json& j, const Tolerance& tol) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected an array of points");
    std::vector<BallPoint> pts;
    for (const auto& p : j) pts.push_back(parse_point(p));
    return PointConfig(std::move(pts), tol);
}

inline json dump_points(const PointConfig& c) {
    json out = json::array();
    for (const auto& p : c.points()) {
        json pt = json::array();
        for (const auto& z : p.coords()) pt.push_back(dump_complex(z));
        out.push_back(pt);
    }
    return out;
}

inline HermitianMatrix parse_matrix(const json& j, const Tolerance& tol) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a matrix");
    const std::size_t n = j.size();
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n)
            throw std::invalid_argument("matrix rows must all have the matrix dimension");
        for (std::size_t k = 0; k < n; ++k) m(i, k) = parse_complex(j[i][k]);
    }
    return HermitianMatrix(std::move(m), tol);
}

inline json dump_matrix(const HermitianMatrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.size(); ++k) row.push_back(dump_complex(m(i, k)));
        out.push_back(row);
    }
    return out;
}

inline json dump_minors(const std::vector<std::pair<std::vector<std::size_t>, double>>& minors) {
    json out = json::array();
    for (const auto& [idx, value] : minors) out.push_back({{"indices", idx}, {"value", value}});
    return out;
}

inline json dump_verdict(const AssemblyVerdict& v) {
    json out;
    out["feasible"] = v.feasible;
    out["boundary"] = v.boundary;
    if (!v.note.empty()) out["note"] = v.note;
    if (v.witness) out["witness_points"] = dump_points(*v.witness);
    if (v.witness_gram) out["witness_gram"] = dump_matrix(v.witness_gram->matrix());
    if (!v.minors.empty()) out["minors"] = dump_minors(v.minors);
    if (v.free_parameters) {
        out["region"] = {{"center3", dump_complex(v.free_parameters->center3)},
                         {"radius3", v.free_parameters->radius3},
                         {"center4", dump_complex(v.free_parameters->center4)},
                         {"radius4", v.free_parameters->radius4},
                         {"witness_z", dump_complex(v.free_parameters->witness_z)}};
    }
    return out;
}

inline TriangleSPrime parse_sprime(const json& j) {
    return {j.at("d12").get<double>(), j.at("d13").get<double>(), j.at("d23").get<double>(),
            j.at("alpha").get<double>()};
}

inline TriangleSDoublePrime parse_sdp(const json& j) {
    return {j.at("d12").get<double>(), j.at("d13").get<double>(), parse_complex(j.at("kos"))};
}

inline json dump_sprime(const TriangleSPrime& s) {
    return {{"d12", s.d12}, {"d13", s.d13}, {"d23", s.d23}, {"alpha", s.alpha123}};
}

inline json dump_sdp(const TriangleSDoublePrime& s) {
    return {{"d12", s.d12}, {"d13", s.d13}, {"kos", dump_complex(s.kos123)}};
}

inline LabelledGram parse_labelled(const json& j, const Tolerance& tol) {
    auto labels = j.at("labels").get<std::vector<int>>();
    if (j.contains("points"))
        return LabelledGram::of_config(std::move(labels), parse_points(j.at("points"), tol), tol);
    if (j.contains("gram"))
        return {std::move(labels), GramSpec(parse_matrix(j.at("gram"), tol), tol)};
    throw std::invalid_argument("facet: need points or gram");
}

inline AngleTriple parse_angles(const json& j) {
    if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected three angles");
    return AngleTriple(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

inline const char* cayley_name(CayleyClass c) {
    switch (c) {
        case CayleyClass::interior: return "interior";
        case CayleyClass::smooth_boundary: return "smooth_boundary";
        case CayleyClass::singular: return "singular";
        case CayleyClass::exterior: return "exterior";
        case CayleyClass::out_of_box: return "out_of_box";
    }
    return "unknown";
}

inline RunResult dispatch(const JobSpec& job) {
    const Tolerance& tol = job.tol;
    const json& in = job.input;
    json out;
    int code = 0;

    if (job.verb == "invariants") {
        const PointConfig x = parse_points(in.at("points"), tol);
        const GramSpec g = gram_of_config(x, tol);
        const std::size_t n = x.size();
        json delta = json::array();
        for (std::size_t i = 0; i < n; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < n; ++j)
                row.push_back(i == j ? 0.0 : delta_h(g, i, j));
            delta.push_back(row);
        }
        out["delta"] = delta;
        out["gram"] = dump_matrix(g.matrix());
        if (n >= 3) {
            out["kos"] = dump_matrix(kos_matrix(g, 0, tol).m);
            json alphas = json::array();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    for (std::size_t k = j + 1; k < n; ++k)
                        alphas.push_back({{"indices", {i, j, k}}, {"value", alpha(g, i, j, k)}});
            out["alpha"] = alphas;
            out["general_position"] = general_position(x, tol);
            out["real"] = is_real_gram(g, tol);
        }
    } else if (job.verb == "moduli-encode") {
        const PointConfig x = parse_points(in.at("points"), tol);
        const ModuliPoint m = encode(x, 0, tol);
        out["rho"] = m.rho();
        out["m"] = dump_matrix(m.m());
    } else if (job.verb == "moduli-decode") {
        std::vector<double> rho = in.at("rho").get<std::vector<double>>();
        const HermitianMatrix m = parse_matrix(in.at("m"), tol);
        const std::size_t dim = in.value("dimension", 0);
        out["points"] = dump_points(decode(ModuliPoint(rho, m, tol), dim, tol));
    } else if (job.verb == "congruent") {
        const PointConfig x = parse_points(in.at("x"), tol);
        const PointConfig y = parse_points(in.at("y"), tol);
        const bool c = congruent(x, y, tol);
        out["congruent"] = c;
        code = c ? 0 : 1;
    } else if (job.verb == "triangle") {
        if (job.sub == "convert") {
            if (in.contains("s_prime")) {
                const auto sp = parse_sprime(in.at("s_prime"));
                out["s_prime"] = dump_sprime(sp);
                out["s_double_prime"] = dump_sdp(sprime_to_sdp(sp, tol));
            } else if (in.contains("s_double_prime")) {
                const auto sdp = parse_sdp(in.at("s_double_prime"));
                out["s_double_prime"] = dump_sdp(sdp);
                out["s_prime"] = dump_sprime(sdp_to_sprime(sdp, tol));
            } else {
                throw std::invalid_argument("triangle convert: need s_prime or s_double_prime");
            }
        } else if (job.sub == "realize") {
            bool ok;
            if (in.contains("s_prime")) {
                ok = realizable_sprime(parse_sprime(in.at("s_prime")), tol);
            } else if (in.contains("s_double_prime")) {
                const auto sdp = parse_sdp(in.at("s_double_prime"));
                ok = realizable_sdp(sdp, tol);
                out["in_complex_geodesic"] = ok && in_complex_geodesic(sdp, tol);
            } else {
                throw std::invalid_argument("triangle realize: need s_prime or s_double_prime");
            }
            out["realizable"] = ok;
            code = ok ? 0 : 1;
        } else if (job.sub == "model") {
            const auto sdp = parse_sdp(in.at("s_double_prime"));
            out["points"] = dump_points(build_model_triangle(sdp, tol));
        } else {
            throw std::invalid_argument("triangle: unknown subcommand (convert|realize|model)");
        }
    } else if (job.verb == "tetra-gate") {
        const cdouble k23 = parse_complex(in.at("k23"));
        const cdouble k24 = parse_complex(in.at("k24"));
        const cdouble k34 = parse_complex(in.at("k34"));
        std::array<double, 3> rho{0.5, 0.5, 0.5};
        if (in.contains("rho")) {
            const auto r = in.at("rho").get<std::vector<double>>();
            if (r.size() != 3) throw std::invalid_argument("tetra-gate: rho needs 3 entries");
            std::copy(r.begin(), r.end(), rho.begin());
        }
        const auto v = tetra_gate(k23, k24, k34, rho, tol);
        out = dump_verdict(v);
        code = v.feasible ? 0 : 1;
    } else if (job.verb == "assemble") {
        AssemblyVerdict v;
        if (job.sub == "v1") {
            std::vector<LabelledTriangle> pieces;
            for (const auto& t : in.at("triangles"))
                pieces.push_back({t.at("label_a").get<int>(), t.at("label_b").get<int>(),
                                  t.at("len_a").get<double>(), t.at("len_b").get<double>(),
                                  parse_complex(t.at("kos"))});
            v = assemble_v1(pieces, tol);
        } else if (job.sub == "v2") {
            std::vector<LabelledGram> facets;
            for (const auto& f : in.at("facets")) facets.push_back(parse_labelled(f, tol));
            v = assemble_v2(facets, tol);
        } else if (job.sub == "v3") {
            v = assemble_v3(parse_labelled(in.at("y_a"), tol),
                            parse_labelled(in.at("y_b"), tol), tol);
        } else {
            throw std::invalid_argument("assemble: unknown subcommand (v1|v2|v3)");
        }
        out = dump_verdict(v);
        code = v.feasible ? 0 : 1;
    } else if (job.verb == "q2-gate") {
        const GramSpec j2(parse_matrix(in.at("j2"), tol), tol);
        const GramSpec j3(parse_matrix(in.at("j3"), tol), tol);
        const GramSpec j4(parse_matrix(in.at("j4"), tol), tol);
        const auto v = q2_gate(j2, j3, j4, tol);
        out = dump_verdict(v);
        code = v.feasible ? 0 : 1;
    } else if (job.verb == "cpp-certify") {
        const GramSpec g(parse_matrix(in.at("gram"), tol), tol);
        const auto c = cpp_certify(g, tol);
        out["is_cpp"] = c.is_cpp;
        out["min_eigenvalue"] = c.min_eigenvalue;
        if (c.witness)
            out["witness"] = {{"indices", c.witness->first}, {"value", c.witness->second}};
        code = c.is_cpp ? 0 : 1;
    } else if (job.verb == "quiggin") {
        const double x = in.at("x").get<double>();
        const auto r = quiggin_report(x, tol);
        out["x"] = r.x;
        out["gram"] = dump_matrix(quiggin_gram(x, tol).matrix());
        out["leading_minors"] = r.leading_minors;
        out["leading_minors_formula"] = r.leading_minors_formula;
        out["det_j"] = r.det_j;
        out["det_j_formula"] = r.det_j_formula;
        out["det_mq"] = r.det_mq;
        out["det_mq_formula"] = r.det_mq_formula;
        out["subspace_cpp"] = r.subspace_cpp;
        out["cpp"] = r.full_cpp;
    } else if (job.verb == "real-angles") {
        if (job.sub == "vertex") {
            const PointConfig x = parse_points(in.at("points"), tol);
            const auto va = vertex_angles(x, tol);
            out["cos_va"] = va.cosines;
            out["va"] = {std::acos(va.cosines[0]), std::acos(va.cosines[1]),
                         std::acos(va.cosines[2])};
        } else if (job.sub == "dihedral") {
            if (in.contains("va")) {
                const auto cda = dihedral_from_vertex(parse_angles(in.at("va")));
                out["cos_da"] = cda;
                json angles = json::array();
                for (double c : cda)
                    angles.push_back(std::abs(c) <= 1.0 ? json(std::acos(c)) : json());
                out["da"] = angles;
            } else if (in.contains("da")) {
                const auto cva = vertex_from_dihedral(parse_angles(in.at("da")));
                out["cos_va"] = cva;
                json angles = json::array();
                for (double c : cva)
                    angles.push_back(std::abs(c) <= 1.0 ? json(std::acos(c)) : json());
                out["va"] = angles;
            } else {
                throw std::invalid_argument("real-angles dihedral: need va or da");
            }
        } else if (job.sub == "gva" || job.sub == "gda") {
            const AngleTriple g = parse_angles(in.at("angles"));
            const bool ok = (job.sub == "gva") ? gva_check(g, tol) : gda_check(g, tol);
            out[job.sub] = ok;
            code = ok ? 0 : 1;
        } else if (job.sub == "dual") {
            const AngleTriple d = dual(parse_angles(in.at("angles")));
            out["dual"] = d.values();
        } else if (job.sub == "gate") {
            DihedralAngleMatrix l{};
            if (in.contains("da")) {
                l = DihedralAngleMatrix::from_angles(parse_angles(in.at("da")));
            } else if (in.contains("neg_cos")) {
                const auto v = in.at("neg_cos").get<std::vector<double>>();
                if (v.size() != 3) throw std::invalid_argument("neg_cos needs 3 entries");
                l = DihedralAngleMatrix{{v[0], v[1], v[2]}};
            } else {
                throw std::invalid_argument("real-angles gate: need da or neg_cos");
            }
            const auto r = dihedral_gate(l, tol);
            out["feasible"] = r.feasible;
            out["boundary"] = r.boundary;
            out["det"] = r.det;
            code = r.feasible ? 0 : 1;
        } else {
            throw std::invalid_argument(
                "real-angles: unknown subcommand (vertex|dihedral|gva|gda|dual|gate)");
        }
    } else if (job.verb == "cayley") {
        const auto p = in.at("point").get<std::vector<double>>();
        if (p.size() != 3) throw std::invalid_argument("cayley: point needs 3 coordinates");
        const CayleyPoint cp{p[0], p[1], p[2]};
        out["p"] = cayley_p(cp);
        out["class"] = cayley_name(cayley_classify(cp, tol));
    } else if (job.verb == "area") {
        const PointConfig pts = parse_points(in.at("points"), tol);
        if (job.sub == "ch1") {
            const auto a = area_ch1(pts, tol);
            out["area"] = a.area;
            if (job.signed_area) out["signed_area"] = a.signed_area;
        } else if (job.sub == "polygon") {
            const auto a = polygon_area_ch1(pts, tol);
            out["area"] = a.area;
            if (job.signed_area) out["signed_area"] = a.signed_area;
        } else if (job.sub == "bk2") {
            out["area"] = area_bk2(pts, tol);
        } else {
            throw std::invalid_argument("area: unknown subcommand (ch1|polygon|bk2)");
        }
    } else if (job.verb == "selftest") {
        const auto checks = selftest(job.seed, tol);
        json arr = json::array();
        bool healthy = true;
        for (const auto& c : checks) {
            arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
            healthy = healthy && c.pass;
        }
        out["checks"] = arr;
        out["healthy"] = healthy;
        out["seed"] = job.seed;
        code = healthy ? 0 : 3;
    } else {
        throw std::invalid_argument("unknown verb: " + job.verb);
    }

    out["schema"] = "1";
    out["tolerances"] = {{"eq", tol.eq_tol}, {"psd", tol.psd_tol}};
    return {out, code};
}

}  // namespace detail

/// Runs one job; never throws. Invalid input maps to exit 2, internal
/// numerical disagreement to exit 3.
inline RunResult run(const JobSpec& job) {
    try {
        return detail::dispatch(job);
    } catch (const internal_error& e) {
        return {{{"schema", "1"}, {"error", e.what()}, {"kind", "internal_disagreement"}}, 3};
    } catch (const json::exception& e) {
        return {{{"schema", "1"}, {"error", e.what()}, {"kind", "invalid_input"}}, 2};
    } catch (const std::invalid_argument& e) {
        return {{{"schema", "1"}, {"error", e.what()}, {"kind", "invalid_input"}}, 2};
    } catch (const std::exception& e) {
        return {{{"schema", "1"}, {"error", e.what()}, {"kind", "error"}}, 2};
    }
}

/// Batch mode: the input document is an array of inputs for one verb; the
/// output is the array of per-item outputs in order. Exit code is the worst
/// per-item code.
inline RunResult run_batch(const JobSpec& job) {
    if (!job.input.is_array())
        return {{{"schema", "1"}, {"error", "--batch expects a JSON array"},
                 {"kind", "invalid_input"}}, 2};
    json arr = json::array();
    int code = 0;
    for (const auto& item : job.input) {
        JobSpec one = job;
        one.input = item;
        const RunResult r = run(one);
        arr.push_back(r.output);
        code = std::max(code, r.exit_code);
    }
    return {arr, code};
}

}  // namespace kosgeo::cli
