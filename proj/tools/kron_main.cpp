// Command-line front end: construct coincidence tuples, sweep nearest
// neighbor statistics, run the verification battery, list 1D circle gaps.
// Outputs are deterministic for a fixed invocation; data files never carry
// timestamps or timings.

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kron/construction.hpp"
#include "kron/parallel.hpp"
#include "kron/sweep.hpp"
#include "kron/verify.hpp"

namespace {

using namespace kron;
using nlohmann::json;

std::vector<MetricSpec> parse_metrics(const std::string& text) {
    std::vector<MetricSpec> out;
    std::string item;
    for (char c : text + ",") {
        if (c == ',') {
            if (!item.empty()) out.push_back(MetricSpec::parse(item));
            item.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            item += c;
        }
    }
    if (out.empty()) throw DomainError("no metrics given");
    return out;
}

json load_json_arg(const std::string& arg) {
    // inline JSON (starts with '{') or a file path
    if (!arg.empty() && arg.front() == '{') return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw DomainError("cannot open file: " + arg);
    json j;
    in >> j;
    return j;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write file: " + path);
    out << content;
}

DepthPolicy depth_policy(const std::string& depth_arg) {
    DepthPolicy p;
    if (depth_arg.empty() || depth_arg == "auto") return p;
    p.fixed = std::stoul(depth_arg);
    return p;
}

struct TupleInput {
    std::string tuple_path;
    std::vector<std::string> stream_texts;
    std::string alpha1;
    std::size_t ledger_depth = 24;

    ConstructedTuple resolve() const {
        if (!tuple_path.empty()) return ConstructedTuple::from_json(load_json_arg(tuple_path));
        if (!alpha1.empty()) return simple_pair(CoefficientStream::parse(alpha1), ledger_depth);
        if (!stream_texts.empty()) {
            ConstructedTuple t;
            t.kind = "adhoc";
            t.dimension = static_cast<int>(stream_texts.size());
            for (const auto& s : stream_texts) t.streams.push_back(CoefficientStream::parse(s));
            return t;
        }
        throw DomainError("give --tuple, --alpha1, or --stream");
    }
};

int report_and_exit(const CheckReport& rep, const std::string& out_path) {
    std::cout << rep.name << ": " << rep.verdict_str() << " (" << rep.instances << " instances, "
              << static_cast<long>(rep.runtime_ms) << " ms)\n";
    if (!rep.passed()) std::cout << "counterexample: " << rep.counterexample.dump() << "\n";
    if (!out_path.empty()) write_output(out_path, rep.to_json().dump(2));
    return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Kronecker-sequence gap analysis"};
    app.require_subcommand(1);

    // ---- construct -------------------------------------------------------
    auto* construct = app.add_subcommand("construct", "build a coincidence tuple");
    construct->require_subcommand(1);
    std::string c_alpha1, c_schedule, c_out;
    std::size_t c_depth = 24;

    auto* c_simple = construct->add_subcommand("simple", "pair (alpha, 1-alpha)");
    c_simple->add_option("--alpha1", c_alpha1, "stream for alpha_1, a_1 = 1")->required();
    c_simple->add_option("--depth", c_depth, "ledger depth");
    c_simple->add_option("-o,--output", c_out, "output file (default stdout)");

    auto* c_general = construct->add_subcommand("general", "congruence-based pair");
    c_general->add_option("--alpha1", c_alpha1, "free part a_1..a_{k_1}")->required();
    c_general->add_option("--schedule", c_schedule, "schedule JSON (inline or path)")->required();
    c_general->add_option("-o,--output", c_out, "output file");

    auto* c_3d = construct->add_subcommand("3d", "triple (alpha_1, alpha_2, 1-alpha_1)");
    c_3d->add_option("--alpha1", c_alpha1, "free part, a_1 = 1")->required();
    c_3d->add_option("--schedule", c_schedule, "schedule JSON")->required();
    c_3d->add_option("-o,--output", c_out, "output file");

    auto* c_ext = construct->add_subcommand("extended", "pair with b*q right-hand side");
    c_ext->add_option("--alpha1", c_alpha1, "free part a_1..a_{k_1}")->required();
    c_ext->add_option("--schedule", c_schedule, "schedule JSON with \"b\"")->required();
    c_ext->add_option("-o,--output", c_out, "output file");

    // ---- analyze ---------------------------------------------------------
    auto* analyze = app.add_subcommand("analyze", "sweep g_N, h_1 and window membership");
    TupleInput a_in;
    std::size_t a_nmax = 500;
    std::string a_metrics = "1,2,inf", a_depth = "auto", a_format = "csv", a_out;
    int a_base = 1;
    bool a_no_stability = false;
    analyze->add_option("--tuple", a_in.tuple_path, "tuple JSON (from construct)");
    analyze->add_option("--stream", a_in.stream_texts, "coordinate stream (repeatable)");
    analyze->add_option("--alpha1", a_in.alpha1, "build the simple pair of this stream");
    analyze->add_option("--nmax", a_nmax, "largest N")->required();
    analyze->add_option("--metrics", a_metrics, "comma list, e.g. 1,2,inf");
    analyze->add_option("--base", a_base, "index base 0 or 1");
    analyze->add_option("--depth", a_depth, "auto or a fixed truncation depth");
    analyze->add_option("--format", a_format, "csv or json");
    analyze->add_option("-o,--output", a_out, "output file (default stdout)");
    analyze->add_flag("--no-stability", a_no_stability, "skip the K vs K+2 re-run");
    std::string a_graph_out, a_spectrum_out;
    analyze->add_option("--graph-out", a_graph_out,
                        "write the NN graph at N_max as \"i j p/q\" lines (first metric)");
    analyze->add_option("--spectrum-out", a_spectrum_out,
                        "write the distinct NN keys at N_max as a JSON array of \"p/q\"");

    // ---- gaps-1d ---------------------------------------------------------
    auto* gaps = app.add_subcommand("gaps-1d", "adjacent circle gaps of a 1D rotation");
    std::string g_alpha, g_format = "text", g_out, g_depth = "auto";
    std::size_t g_n = 6;
    int g_base = 0;
    gaps->add_option("--alpha", g_alpha, "rotation stream, e.g. \"0;2,(1)\"")->required();
    gaps->add_option("--n", g_n, "number of rotation steps")->required();
    gaps->add_option("--base", g_base, "0: include the start point; 1: z_1..z_N");
    gaps->add_option("--depth", g_depth, "auto or a fixed truncation depth");
    gaps->add_option("--format", g_format, "text, json or csv");
    gaps->add_option("-o,--output", g_out, "output file");

    // ---- verify ----------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run executable checks");
    verify->require_subcommand(1);
    std::string v_alpha, v_alpha1, v_metrics = "1,2,inf", v_out;
    std::string v_metric = "2";
    TupleInput v_in;
    std::size_t v_nmax = 300, v_imax = 8, v_ncap = 200000;
    std::string v_qcap = "10000";
    std::vector<std::string> v_logs;

    auto* v_three = verify->add_subcommand("three-gap", "distinct adjacent gaps <= 3");
    v_three->add_option("--alpha", v_alpha, "1D stream")->required();
    v_three->add_option("--nmax", v_nmax, "largest N");
    v_three->add_option("-o,--output", v_out, "report JSON file");

    auto* v_l1 = verify->add_subcommand("lemma1", "counting-metric shift covariance");
    v_l1->add_option("--tuple", v_in.tuple_path, "tuple JSON");
    v_l1->add_option("--stream", v_in.stream_texts, "coordinate stream (repeatable)");
    v_l1->add_option("--alpha1", v_in.alpha1, "simple pair of this stream");
    v_l1->add_option("--nmax", v_nmax, "largest N");
    v_l1->add_option("--metric", v_metric, "single metric");
    v_l1->add_option("-o,--output", v_out, "report JSON file");

    auto* v_l2 = verify->add_subcommand("lemma2", "h_1(q+1) = q at ledger denominators");
    v_l2->add_option("--tuple", v_in.tuple_path, "tuple JSON");
    v_l2->add_option("--alpha1", v_in.alpha1, "simple pair of this stream");
    v_l2->add_option("--qcap", v_qcap, "check ledger q up to this bound");
    v_l2->add_option("--metrics", v_metrics, "comma list");
    v_l2->add_option("-o,--output", v_out, "report JSON file");

    auto* v_t1 = verify->add_subcommand("theorem1", "pair window structure");
    v_t1->add_option("--alpha1", v_alpha1, "stream with a_1 = 1")->required();
    v_t1->add_option("--nmax", v_nmax, "largest N");
    v_t1->add_option("--metrics", v_metrics, "comma list");
    v_t1->add_option("-o,--output", v_out, "report JSON file");

    auto* v_as = verify->add_subcommand("asmallest", "closest-points chain per level");
    v_as->add_option("--alpha", v_alpha, "1D stream")->required();
    v_as->add_option("--imax", v_imax, "highest convergent level");
    v_as->add_option("--ncap", v_ncap, "brute-force range cap");
    v_as->add_option("-o,--output", v_out, "report JSON file");

    auto* v_b = verify->add_subcommand("bounds", "Euclidean kissing-number bound");
    v_b->add_option("--log", v_logs, "sweep JSON file (repeatable)")->required();
    v_b->add_option("-o,--output", v_out, "report JSON file");

    auto* v_all = verify->add_subcommand("all", "the whole battery on a simple pair");
    unsigned v_jobs = 1;
    v_all->add_option("--alpha1", v_alpha1, "stream with a_1 = 1")->required();
    v_all->add_option("--nmax", v_nmax, "largest N");
    v_all->add_option("--metrics", v_metrics, "comma list");
    v_all->add_option("--qcap", v_qcap, "ledger cap for the jump check");
    v_all->add_option("--imax", v_imax, "levels for the chain check");
    v_all->add_option("--jobs", v_jobs, "run the independent checks concurrently");

    CLI11_PARSE(app, argc, argv);

    try {
        // construct
        if (construct->parsed()) {
            ConstructedTuple t;
            if (c_simple->parsed()) {
                t = simple_pair(CoefficientStream::parse(c_alpha1), c_depth);
            } else {
                auto sched = ConstructionSchedule::from_json(load_json_arg(c_schedule));
                auto free_part = CoefficientStream::parse(c_alpha1);
                if (c_general->parsed()) t = general_construct(free_part, sched);
                if (c_3d->parsed()) t = construct_3d(free_part, sched);
                if (c_ext->parsed()) t = extended_construct(free_part, sched);
            }
            write_output(c_out, t.to_json().dump(2));
            std::cerr << "ledger:";
            for (const auto& e : t.ledger) std::cerr << ' ' << e.q.str();
            std::cerr << '\n';
            return 0;
        }

        // analyze
        if (analyze->parsed()) {
            ConstructedTuple t = a_in.resolve();
            std::vector<Int> qs;
            for (const auto& e : t.ledger) qs.push_back(e.q);
            auto metrics = parse_metrics(a_metrics);
            auto table = sweep(t.streams, qs, a_nmax, metrics, a_base, depth_policy(a_depth),
                               !a_no_stability);
            write_output(a_out, a_format == "json" ? table.to_json().dump(2) : table.csv());
            if (!a_graph_out.empty() || !a_spectrum_out.empty()) {
                Realized real = realize_streams(t.streams, a_nmax, depth_policy(a_depth));
                PointSet ps(real.alpha, a_nmax, a_base);
                NNSweep engine(ps, {metrics.front()});
                while (!engine.done()) engine.step();
                if (!a_graph_out.empty()) {
                    std::string text;
                    for (const auto& r : nn_records(engine, 0))
                        text += std::to_string(r.i) + " " + std::to_string(r.j) + " " +
                                to_string(r.key.value) + "\n";
                    write_output(a_graph_out, text);
                }
                if (!a_spectrum_out.empty()) {
                    json keys = json::array();
                    for (const auto& [key, count] : engine.spectrum(0))
                        keys.push_back(to_string(key_from_scaled(ps, key, metrics.front()).value));
                    write_output(a_spectrum_out, keys.dump(2));
                }
            }
            return 0;
        }

        // gaps-1d
        if (gaps->parsed()) {
            auto stream = CoefficientStream::parse(g_alpha);
            DepthPolicy pol = depth_policy(g_depth);
            std::size_t depth = pol.fixed ? stream.max_depth(*pol.fixed)
                                          : depth_for_floor(stream, Int(g_n) * Int(g_n));
            Rat alpha = value_of(stream, depth);
            auto gap_list = circle_gaps(alpha, g_n, g_base);
            std::size_t distinct = distinct_count(gap_list);

            json j = {{"alpha", g_alpha}, {"n", g_n}, {"base", g_base}, {"distinct", distinct}};
            json items = json::array();
            for (const auto& g : gap_list) items.push_back(to_string(g));
            j["gaps"] = items;

            if (g_format == "text") {
                std::cout << distinct << " distinct gaps\n";
                Rat prev(-1);
                std::size_t count = 0;
                for (std::size_t i = 0; i <= gap_list.size(); ++i) {
                    if (i < gap_list.size() && gap_list[i] == prev) {
                        ++count;
                        continue;
                    }
                    if (count) std::cout << "  " << to_string(prev) << " x" << count << "\n";
                    if (i < gap_list.size()) {
                        prev = gap_list[i];
                        count = 1;
                    }
                }
                if (!g_out.empty()) write_output(g_out, j.dump(2));
            } else if (g_format == "json") {
                write_output(g_out, j.dump(2));
            } else {
                std::string csv = "gap\n";
                for (const auto& g : gap_list) csv += to_string(g) + "\n";
                write_output(g_out, csv);
            }
            return 0;
        }

        // verify
        if (v_three->parsed())
            return report_and_exit(check_three_gap(CoefficientStream::parse(v_alpha), v_nmax),
                                   v_out);
        if (v_l1->parsed()) {
            ConstructedTuple t = v_in.resolve();
            return report_and_exit(
                check_lemma_part1(t.streams, v_nmax, MetricSpec::parse(v_metric)), v_out);
        }
        if (v_l2->parsed()) {
            ConstructedTuple t = v_in.resolve();
            return report_and_exit(
                check_lemma_part2(t, parse_metrics(v_metrics), parse_int(v_qcap)), v_out);
        }
        if (v_t1->parsed()) {
            auto wr = check_theorem1(CoefficientStream::parse(v_alpha1), v_nmax,
                                     parse_metrics(v_metrics));
            std::cout << wr.summary.name << ": " << wr.summary.verdict_str() << " ("
                      << wr.summary.instances << " instances)\n";
            if (!wr.summary.passed())
                std::cout << "counterexample: " << wr.summary.counterexample.dump() << "\n";
            if (!v_out.empty()) write_output(v_out, wr.to_json().dump(2));
            return wr.summary.passed() ? 0 : 1;
        }
        if (v_as->parsed())
            return report_and_exit(
                check_asmallest(CoefficientStream::parse(v_alpha), v_imax, v_ncap), v_out);
        if (v_b->parsed()) {
            std::vector<SweepTable> tables;
            for (const auto& p : v_logs) tables.push_back(SweepTable::from_json(load_json_arg(p)));
            return report_and_exit(check_upper_bounds(tables), v_out);
        }
        if (v_all->parsed()) {
            auto alpha1 = CoefficientStream::parse(v_alpha1);
            auto metrics = parse_metrics(v_metrics);
            auto pair = simple_pair(alpha1, 48);
            // independent checks; the bound check consumes the window sweep
            std::vector<CheckReport> reports(5);
            WindowReport wr;
            std::vector<std::function<void()>> tasks{
                [&] { reports[0] = check_three_gap(alpha1, v_nmax); },
                [&] {
                    reports[1] = check_lemma_part1(
                        pair.streams, std::min<std::size_t>(v_nmax, 300), metrics.front());
                },
                [&] { reports[2] = check_lemma_part2(pair, metrics, parse_int(v_qcap)); },
                [&] {
                    wr = check_theorem1(alpha1, v_nmax, metrics);
                    reports[3] = wr.summary;
                },
                [&] { reports[4] = check_asmallest(alpha1, v_imax, v_ncap); },
            };
            parallel_for(tasks.size(), v_jobs, [&](std::size_t i) { tasks[i](); });
            reports.push_back(check_upper_bounds({wr.table}));
            int failures = 0;
            for (const auto& rep : reports) {
                std::cout << rep.name << ": " << rep.verdict_str() << " (" << rep.instances
                          << " instances)\n";
                if (!rep.passed()) {
                    std::cout << "  counterexample: " << rep.counterexample.dump() << "\n";
                    ++failures;
                }
            }
            return failures == 0 ? 0 : 1;
        }
    } catch (const StabilityError& e) {
        std::cerr << "stability error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
