// Python bindings for the exact Kronecker gap toolkit. Arbitrary-precision
// values cross the boundary as Python ints / "p/q" strings; structured
// results (tuples, sweep tables, check reports) cross as plain dicts with
// the same schema as the CLI's JSON files.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "kron/construction.hpp"
#include "kron/sweep.hpp"
#include "kron/verify.hpp"

namespace py = pybind11;
using namespace kron;
using nlohmann::json;

namespace {

py::object json_to_py(const json& j) {
    auto loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

json py_to_json(const py::object& obj) {
    auto dumps = py::module_::import("json").attr("dumps");
    return json::parse(dumps(obj).cast<std::string>());
}

py::int_ int_to_py(const Int& v) {
    return py::cast<py::int_>(py::module_::import("builtins").attr("int")(v.str()));
}

std::vector<MetricSpec> metrics_from(const std::vector<std::string>& names) {
    std::vector<MetricSpec> out;
    for (const auto& n : names) out.push_back(MetricSpec::parse(n));
    if (out.empty()) throw DomainError("no metrics given");
    return out;
}

std::vector<CoefficientStream> streams_from(const std::vector<std::string>& texts) {
    std::vector<CoefficientStream> out;
    for (const auto& t : texts) out.push_back(CoefficientStream::parse(t));
    if (out.empty()) throw DomainError("no streams given");
    return out;
}

DepthPolicy policy_from(const py::object& depth) {
    DepthPolicy p;
    if (!depth.is_none()) p.fixed = depth.cast<std::size_t>();
    return p;
}

ConstructionSchedule schedule_from(const py::dict& d) {
    return ConstructionSchedule::from_json(py_to_json(d));
}

ConstructedTuple tuple_from(const py::dict& d) {
    return ConstructedTuple::from_json(py_to_json(d));
}

PointSet pointset_from(const std::vector<std::string>& stream_texts, std::size_t n,
                       int index_base, const py::object& depth) {
    auto streams = streams_from(stream_texts);
    Realized real = realize_streams(streams, n, policy_from(depth));
    return PointSet(real.alpha, n, index_base);
}

}  // namespace

PYBIND11_MODULE(kronpy, m) {
    m.doc() = "exact nearest-neighbor gap analysis of Kronecker sequences";

    py::register_exception<StabilityError>(m, "StabilityError", PyExc_RuntimeError);
    py::register_exception<ConstructionError>(m, "ConstructionError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    m.def("parse_stream", [](const std::string& text) {
        return CoefficientStream::parse(text).str();  // canonical text form
    });
    m.def("coefficient", [](const std::string& text, std::size_t i) {
        return int_to_py(CoefficientStream::parse(text).at(i));
    });
    m.def("convergents", [](const std::string& text, std::size_t depth) {
        auto cs = convergents(CoefficientStream::parse(text), depth);
        py::list out;
        for (const auto& c : cs) out.append(py::make_tuple(c.n, int_to_py(c.p), int_to_py(c.q)));
        return out;
    });
    m.def("value_of", [](const std::string& text, std::size_t depth) {
        return to_string(value_of(CoefficientStream::parse(text), depth));
    });
    m.def("rational_to_cf", [](const std::string& rational) {
        return rational_to_cf(parse_rational(rational)).str();
    });
    m.def("complement", [](const std::string& text) {
        return complement(CoefficientStream::parse(text)).str();
    });

    m.def(
        "simple_pair",
        [](const std::string& alpha1, std::size_t ledger_depth) {
            return json_to_py(simple_pair(CoefficientStream::parse(alpha1), ledger_depth)
                                  .to_json());
        },
        py::arg("alpha1"), py::arg("ledger_depth") = 24);
    m.def("general_construct", [](const std::string& alpha1_free, const py::dict& schedule) {
        return json_to_py(
            general_construct(CoefficientStream::parse(alpha1_free), schedule_from(schedule))
                .to_json());
    });
    m.def("extended_construct", [](const std::string& alpha1_free, const py::dict& schedule) {
        return json_to_py(
            extended_construct(CoefficientStream::parse(alpha1_free), schedule_from(schedule))
                .to_json());
    });
    m.def("construct_3d", [](const std::string& alpha1_free, const py::dict& schedule) {
        return json_to_py(
            construct_3d(CoefficientStream::parse(alpha1_free), schedule_from(schedule))
                .to_json());
    });
    m.def("lemma_cond_holds", [](const py::int_& q_kl, const py::int_& q_km2,
                                 const py::int_& q_km3, const py::int_& a_km1) {
        auto cvt = [](const py::int_& v) { return parse_int(py::str(v).cast<std::string>()); };
        return lemma_cond_holds(cvt(q_kl), cvt(q_km2), cvt(q_km3), cvt(a_km1));
    });
    m.def("solve_congruence",
          [](long long q_m1, long long q_m2, long long modulus, long long rhs, long long min_a) {
              return int_to_py(
                  solve_congruence(Int(q_m1), Int(q_m2), Int(modulus), Int(rhs), Int(min_a)));
          });

    m.def(
        "gaps_1d",
        [](const std::string& alpha, std::size_t n, int base, const py::object& depth) {
            auto stream = CoefficientStream::parse(alpha);
            DepthPolicy pol = policy_from(depth);
            std::size_t k = pol.fixed ? stream.max_depth(*pol.fixed)
                                      : depth_for_floor(stream, Int(n) * Int(n));
            auto gaps = circle_gaps(value_of(stream, k), n, base);
            json items = json::array();
            for (const auto& g : gaps) items.push_back(to_string(g));
            json j = {{"alpha", alpha},
                      {"n", n},
                      {"base", base},
                      {"distinct", distinct_count(gaps)},
                      {"gaps", items}};
            return json_to_py(j);
        },
        py::arg("alpha"), py::arg("n"), py::arg("base") = 0, py::arg("depth") = py::none());

    m.def(
        "nn_graph",
        [](const std::vector<std::string>& streams, std::size_t n, const std::string& metric,
           int base, const py::object& depth) {
            PointSet ps = pointset_from(streams, n, base, depth);
            auto graph = nn_graph(ps, MetricSpec::parse(metric));
            json rows = json::array();
            for (const auto& r : graph)
                rows.push_back({{"i", r.i}, {"j", r.j}, {"h", r.h}, {"key", to_string(r.key.value)}});
            return json_to_py(rows);
        },
        py::arg("streams"), py::arg("n"), py::arg("metric") = "2", py::arg("base") = 1,
        py::arg("depth") = py::none());

    m.def(
        "gap_spectrum",
        [](const std::vector<std::string>& streams, std::size_t n, const std::string& metric,
           int base, const py::object& depth) {
            PointSet ps = pointset_from(streams, n, base, depth);
            auto spec = gap_spectrum(ps, MetricSpec::parse(metric));
            json entries = json::array();
            for (const auto& [key, count] : spec.entries)
                entries.push_back({{"key", to_string(key.value)}, {"count", count}});
            return json_to_py(json{{"g", spec.g()}, {"entries", entries}});
        },
        py::arg("streams"), py::arg("n"), py::arg("metric") = "2", py::arg("base") = 1,
        py::arg("depth") = py::none());

    m.def(
        "h_profile",
        [](const std::vector<std::string>& streams, std::size_t n, const std::string& metric,
           int base, const py::object& depth) {
            PointSet ps = pointset_from(streams, n, base, depth);
            return h_profile(ps, MetricSpec::parse(metric));
        },
        py::arg("streams"), py::arg("n"), py::arg("metric") = "2", py::arg("base") = 1,
        py::arg("depth") = py::none());

    m.def(
        "sweep",
        [](const py::object& tuple_or_streams, std::size_t n_max,
           const std::vector<std::string>& metrics, int base, const py::object& depth,
           bool stability) {
            std::vector<CoefficientStream> streams;
            std::vector<Int> qs;
            if (py::isinstance<py::dict>(tuple_or_streams)) {
                auto t = tuple_from(tuple_or_streams.cast<py::dict>());
                streams = t.streams;
                for (const auto& e : t.ledger) qs.push_back(e.q);
            } else {
                streams = streams_from(tuple_or_streams.cast<std::vector<std::string>>());
            }
            auto table = sweep(streams, qs, n_max, metrics_from(metrics), base,
                               policy_from(depth), stability);
            return json_to_py(table.to_json());
        },
        py::arg("tuple_or_streams"), py::arg("n_max"),
        py::arg("metrics") = std::vector<std::string>{"1", "2", "inf"}, py::arg("base") = 1,
        py::arg("depth") = py::none(), py::arg("stability") = true);

    m.def(
        "stability_check",
        [](const std::vector<std::string>& streams, std::size_t n_max,
           const std::vector<std::string>& metrics, std::size_t depth) {
            return stability_check(streams_from(streams), n_max, metrics_from(metrics), depth);
        },
        py::arg("streams"), py::arg("n_max"), py::arg("metrics"), py::arg("depth"));

    m.def(
        "check_three_gap",
        [](const std::string& alpha, std::size_t n_max) {
            return json_to_py(
                check_three_gap(CoefficientStream::parse(alpha), n_max).to_json());
        },
        py::arg("alpha"), py::arg("n_max") = 300);
    m.def(
        "check_lemma1",
        [](const std::vector<std::string>& streams, std::size_t n_max,
           const std::string& metric) {
            return json_to_py(
                check_lemma_part1(streams_from(streams), n_max, MetricSpec::parse(metric))
                    .to_json());
        },
        py::arg("streams"), py::arg("n_max") = 200, py::arg("metric") = "2");
    m.def(
        "check_lemma2",
        [](const py::dict& tuple, const std::vector<std::string>& metrics,
           const std::string& q_cap) {
            return json_to_py(
                check_lemma_part2(tuple_from(tuple), metrics_from(metrics), parse_int(q_cap))
                    .to_json());
        },
        py::arg("tuple"), py::arg("metrics") = std::vector<std::string>{"1", "2", "inf"},
        py::arg("q_cap") = "10000");
    m.def(
        "check_theorem1",
        [](const std::string& alpha1, std::size_t n_max,
           const std::vector<std::string>& metrics) {
            return json_to_py(
                check_theorem1(CoefficientStream::parse(alpha1), n_max, metrics_from(metrics))
                    .to_json());
        },
        py::arg("alpha1"), py::arg("n_max") = 300,
        py::arg("metrics") = std::vector<std::string>{"1", "2", "inf"});
    m.def(
        "check_asmallest",
        [](const std::string& alpha, std::size_t i_max, std::size_t n_cap) {
            return json_to_py(
                check_asmallest(CoefficientStream::parse(alpha), i_max, n_cap).to_json());
        },
        py::arg("alpha"), py::arg("i_max") = 8, py::arg("n_cap") = 200000);
    m.def("check_upper_bounds", [](const py::list& tables) {
        std::vector<SweepTable> logs;
        for (const auto& t : tables)
            logs.push_back(SweepTable::from_json(py_to_json(t.cast<py::object>())));
        return json_to_py(check_upper_bounds(logs).to_json());
    });
}
