#include "scalefn/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "scalefn/invariants.hpp"
#include "scalefn/map_io.hpp"
#include "scalefn/parallel.hpp"
#include "scalefn/partition.hpp"
#include "scalefn/scaling.hpp"
#include "scalefn/symbolic.hpp"

namespace scalefn {

namespace {

using nlohmann::ordered_json;

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + path + "'");
    out << text;
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

// deterministic completion block for a cylinder-class suffix: the
// lexicographically first short block that repeats and attaches to the left
Word completion_block(const MarkovMap& map, int attach) {
    const int m = map.branch_count();
    for (int len = 1; len <= std::max(3, m); ++len) {
        std::vector<int> idx(static_cast<size_t>(len), 0);
        while (true) {
            bool ok = true;
            for (int i = 0; i + 1 < len && ok; ++i)
                ok = map.admissible(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(i + 1)]);
            ok = ok && map.admissible(idx[static_cast<size_t>(len - 1)], idx[0]);
            ok = ok && map.admissible(idx[static_cast<size_t>(len - 1)], attach);
            if (ok) return map.word_from_branches(idx);
            int pos = len - 1;
            while (pos >= 0 && idx[static_cast<size_t>(pos)] == m - 1)
                idx[static_cast<size_t>(pos--)] = 0;
            if (pos < 0) break;
            ++idx[static_cast<size_t>(pos)];
        }
    }
    throw Error("no completion block exists for the suffix class");
}

// all admissible suffix words of the given length, ordered so classes agree
// with reading the rightmost symbol first
std::vector<Word> cylinder_suffixes(const MarkovMap& map, int len) {
    std::vector<std::vector<int>> suffixes{{}};
    for (int pos = 0; pos < len; ++pos) {
        std::vector<std::vector<int>> next;
        for (const auto& s : suffixes) {
            for (int b = 0; b < map.branch_count(); ++b) {
                // s holds symbols right-to-left; prepending must be admissible
                if (!s.empty() && !map.admissible(b, s.back())) continue;
                auto t = s;
                t.push_back(b);
                next.push_back(std::move(t));
            }
        }
        suffixes = std::move(next);
    }
    std::vector<Word> out;
    for (const auto& s : suffixes) {
        std::vector<int> word_order(s.rbegin(), s.rend());
        out.push_back(map.word_from_branches(word_order));
    }
    return out;
}

int cmd_validate(const std::string& path, const std::string& format, const std::string& out_path) {
    const MarkovMap map = load_map(path);
    std::ostringstream os;
    if (format == "json") {
        ordered_json j;
        j["branches"] = map.branch_count();
        j["incidence"] = map.incidence();
        j["boundary_into_itself"] = map.boundary_into_itself();
        ordered_json crit = ordered_json::array();
        for (const CriticalPoint& cp : map.critical_points())
            crit.push_back({{"c", cp.c},
                            {"gamma", cp.gamma},
                            {"a_left", cp.a_left},
                            {"b_right", cp.b_right}});
        j["critical_points"] = crit;
        os << j.dump(2) << "\n";
    } else {
        os << "branches: " << map.branch_count() << "\n";
        os << "incidence:\n";
        for (const auto& row : map.incidence()) {
            for (size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
            os << "\n";
        }
        if (!map.critical_points().empty()) {
            os << "critical points:\n";
            for (const CriticalPoint& cp : map.critical_points())
                os << "  c=" << fmt17(cp.c) << " gamma=" << fmt17(cp.gamma)
                   << " tau=" << fmt17(cp.a_left / cp.b_right) << "\n";
        }
    }
    write_output(out_path, os.str());
    return 0;
}

int cmd_orbit(const std::string& path, int max_iter, const std::string& format,
              const std::string& out_path) {
    const MarkovMap map = load_map(path);
    const auto orbits = map.critical_orbit(max_iter);
    std::ostringstream os;
    if (format == "json") {
        ordered_json j = ordered_json::array();
        for (const CriticalOrbit& o : orbits)
            j.push_back({{"c", o.c},
                         {"points", o.points},
                         {"cycle_start", o.cycle_start},
                         {"period", o.period}});
        os << j.dump(2) << "\n";
    } else {
        os << "c,index,point,in_cycle\n";
        for (const CriticalOrbit& o : orbits)
            for (size_t i = 0; i < o.points.size(); ++i)
                os << fmt17(o.c) << "," << i << "," << fmt17(o.points[i]) << ","
                   << (static_cast<int>(i) >= o.cycle_start ? 1 : 0) << "\n";
    }
    write_output(out_path, os.str());
    return 0;
}

int cmd_partition_stats(const std::string& path, int depth, const std::string& out_path) {
    const MarkovMap map = load_map(path);
    std::ostringstream os;
    os << "n,count,lambda_n,sum_lengths\n";
    std::vector<long long> counts(static_cast<size_t>(depth), 0);
    std::vector<double> lambdas(static_cast<size_t>(depth), 0.0);
    std::vector<double> sums(static_cast<size_t>(depth), 0.0);
    for_each_word(map, depth, [&](const Word& w, const SizedInterval& iv) {
        const size_t n = w.size() - 1;
        counts[n] += 1;
        lambdas[n] = std::max(lambdas[n], iv.len);
        sums[n] += iv.len;
    });
    for (int n = 1; n <= depth; ++n)
        os << n << "," << counts[static_cast<size_t>(n - 1)] << ","
           << fmt17(lambdas[static_cast<size_t>(n - 1)]) << ","
           << fmt17(sums[static_cast<size_t>(n - 1)]) << "\n";
    write_output(out_path, os.str());
    return 0;
}

int cmd_scaling_table(const std::string& path, std::vector<std::string> address_lits, int classes,
                      double tol, int depth, const std::string& out_path) {
    const MarkovMap map = load_map(path);
    std::vector<DualAddress> addresses;
    if (address_lits.empty()) {
        for (const Word& suffix : cylinder_suffixes(map, classes))
            addresses.emplace_back(suffix, completion_block(map, suffix.front().branch));
    } else {
        for (const std::string& lit : address_lits) {
            DualAddress a = DualAddress::parse(lit);
            a.require_admissible(map);
            addresses.push_back(std::move(a));
        }
    }
    std::vector<ScalingEstimate> estimates(addresses.size());
    parallel_for(addresses.size(),
                 [&](size_t i) { estimates[i] = scaling_function(map, addresses[i], tol, depth); });
    std::ostringstream os;
    os << "address,depth,value,error_bound,converged\n";
    bool all_converged = true;
    for (size_t i = 0; i < addresses.size(); ++i) {
        const ScalingEstimate& e = estimates[i];
        all_converged = all_converged && e.converged;
        os << csv_quote(addresses[i].format()) << "," << e.depth << "," << fmt17(e.value) << ","
           << fmt17(e.error_bound) << "," << (e.converged ? "true" : "false") << "\n";
    }
    write_output(out_path, os.str());
    return all_converged ? 0 : 2;
}

int cmd_eigen(const std::string& path, const std::string& address_lit, double tol,
              const std::string& out_path) {
    const MarkovMap map = load_map(path);
    DualAddress a = DualAddress::parse(address_lit);
    a.require_admissible(map);
    const EigenvalueRecord rec = eigenvalue_record(map, a, tol);
    ordered_json j;
    j["address"] = a.format();
    j["p"] = rec.p;
    j["period"] = rec.period;
    j["direct"] = rec.direct;
    j["via_scaling"] = rec.via_scaling;
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_exponent(const std::string& path, double point, bool have_point, int index, int depth,
                 const std::string& side_name, const std::string& out_path) {
    const MarkovMap map = load_map(path);
    if (map.critical_points().empty()) throw ChainUnresolved("map has no critical points");
    double c = 0.0;
    if (have_point) c = point;
    else {
        if (index < 0 || index >= static_cast<int>(map.critical_points().size()))
            throw Error("critical index out of range");
        c = map.critical_points()[static_cast<size_t>(index)].c;
    }
    const Side side = side_name == "right" ? Side::Right : Side::Left;
    const ExponentEstimate est = exponent_via_scaling(map, c, depth, side);
    ordered_json j;
    j["c"] = est.c;
    j["gamma"] = est.gamma;
    j["side"] = side_name == "right" ? "right" : "left";
    j["depth"] = est.depth;
    j["steps_to_target"] = est.steps_to_target;
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

ordered_json report_json(const InvariantReport& rep) {
    ordered_json j;
    ordered_json scaling = ordered_json::array();
    for (const ScalingSample& s : rep.scaling)
        scaling.push_back({{"address", s.address.format()},
                           {"value", s.estimate.value},
                           {"depth", s.estimate.depth},
                           {"error_bound", s.estimate.error_bound},
                           {"converged", s.estimate.converged}});
    j["scaling"] = scaling;
    ordered_json asym = ordered_json::array();
    for (const AsymmetryRecord& a : rep.asymmetries)
        asym.push_back({{"c", a.c}, {"gamma", a.gamma}, {"tau", a.tau}});
    j["asymmetries"] = asym;
    ordered_json eig = ordered_json::array();
    for (const EigenvalueRecord& e : rep.eigenvalues)
        eig.push_back({{"address", e.address.format()},
                       {"p", e.p},
                       {"period", e.period},
                       {"direct", e.direct},
                       {"via_scaling", e.via_scaling}});
    j["eigenvalues"] = eig;
    return j;
}

int cmd_compare(const std::string& path_a, const std::string& path_b, double tol, bool eigen,
                int n_random, int max_period, const std::string& out_path) {
    const MarkovMap f = load_map(path_a);
    const MarkovMap g = load_map(path_b);
    ComparisonOptions opts;
    opts.tol = tol;
    opts.check_eigenvalues = eigen;
    const auto addresses = default_address_sample(f, max_period, n_random);
    const ComparisonResult res = compare_invariants(f, g, addresses, opts);
    ordered_json j;
    j["verdict"] = res.verdict;
    j["scaling"] = report_json(res.first)["scaling"];
    j["asymmetries"] = report_json(res.first)["asymmetries"];
    j["eigenvalues"] = report_json(res.first)["eigenvalues"];
    j["second"] = report_json(res.second);
    j["disagreements"] = res.disagreements;
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_probe(const std::string& path, const std::string& a0_lit, const std::string& deviation_lit,
              int k_min, int k_max, double tol, const std::string& out_path) {
    const MarkovMap map = load_map(path);
    DualAddress a0 = DualAddress::parse(a0_lit);
    a0.require_admissible(map);
    ProbeResult res;
    if (map.critical_points().empty()) {
        res = discontinuity_probe(map, a0, {}, tol);
    } else {
        const Word deviation = parse_word(deviation_lit);
        const auto family = probe_family(map, a0, deviation, k_min, k_max);
        res = discontinuity_probe(map, a0, family, tol);
    }
    ordered_json j;
    j["jump_ratio"] = res.jump_ratio;
    j["base_value"] = res.base_value;
    j["member_values"] = res.member_values;
    j["agreement"] = res.agreement;
    j["base_in_discontinuity_class"] = res.base_in_discontinuity_class;
    j["note"] = res.note;
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"signed scaling functions and smooth invariants of Markov interval maps"};
    app.require_subcommand(1);

    std::string out_path;
    app.add_option("--output", out_path, "write the result to a file instead of stdout");

    // validate
    auto* validate = app.add_subcommand("validate", "check a map description and print incidence");
    std::string v_path, v_format = "text";
    validate->add_option("map", v_path, "map description (JSON)")->required();
    validate->add_option("--format", v_format, "text|json")->check(CLI::IsMember({"text", "json"}));

    // orbit
    auto* orbit = app.add_subcommand("orbit", "forward orbits of the critical points");
    std::string o_path, o_format = "json";
    int o_max_iter = 64;
    orbit->add_option("map", o_path)->required();
    orbit->add_option("--max-iter", o_max_iter);
    orbit->add_option("--format", o_format)->check(CLI::IsMember({"csv", "json"}));

    // partition-stats
    auto* pstats = app.add_subcommand("partition-stats", "partition counts and diameters as CSV");
    std::string p_path;
    int p_depth = 8;
    pstats->add_option("map", p_path)->required();
    pstats->add_option("--depth", p_depth, "deepest generation");

    // scaling-table
    auto* stable = app.add_subcommand("scaling-table", "scaling values over cylinder classes");
    std::string s_path;
    std::vector<std::string> s_addresses;
    int s_classes = 2, s_depth = 8;
    double s_tol = 1e-9;
    stable->add_option("map", s_path)->required();
    stable->add_option("--address", s_addresses, "dual address literal(s) tail|block");
    stable->add_option("--classes", s_classes, "suffix length for the default class table");
    stable->add_option("--depth", s_depth, "estimator depth cap");
    stable->add_option("--tol", s_tol);

    // eigen
    auto* eigen = app.add_subcommand("eigen", "eigenvalue at a periodic dual address");
    std::string e_path, e_address;
    double e_tol = 1e-9;
    eigen->add_option("map", e_path)->required();
    eigen->add_option("--address", e_address, "purely periodic address, e.g. \"|-1\"")->required();
    eigen->add_option("--tol", e_tol);

    // exponent
    auto* exponent = app.add_subcommand("exponent", "critical exponent through scaling values");
    std::string x_path, x_side = "left";
    double x_point = 0.0;
    int x_index = 0, x_depth = 18;
    exponent->add_option("map", x_path)->required();
    auto* x_point_opt = exponent->add_option("--point", x_point, "critical point coordinate");
    exponent->add_option("--critical", x_index, "critical point index");
    exponent->add_option("--depth", x_depth);
    exponent->add_option("--side", x_side)->check(CLI::IsMember({"left", "right"}));

    // compare
    auto* compare = app.add_subcommand("compare", "compare invariants of two maps");
    std::string c_path_a, c_path_b;
    double c_tol = 1e-6;
    bool c_eigen = false;
    int c_random = 20, c_period = 3;
    compare->add_option("first", c_path_a)->required();
    compare->add_option("second", c_path_b)->required();
    compare->add_option("--tol", c_tol);
    compare->add_flag("--eigen", c_eigen, "also compare eigenvalues at periodic addresses");
    compare->add_option("--samples", c_random, "number of random sampled addresses");
    compare->add_option("--max-period", c_period);

    // probe-discontinuity
    auto* probe = app.add_subcommand("probe-discontinuity", "jump ratio along an address family");
    std::string d_path, d_a0, d_deviation;
    int d_kmin = 6, d_kmax = 14;
    double d_tol = 1e-9;
    probe->add_option("map", d_path)->required();
    probe->add_option("--a0", d_a0, "base dual address")->required();
    probe->add_option("--deviation", d_deviation, "deviation block word, e.g. \"-1\"");
    probe->add_option("--kmin", d_kmin);
    probe->add_option("--kmax", d_kmax);
    probe->add_option("--tol", d_tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and --version print to stdout
            return app.exit(e);
        }
        std::ostringstream os;
        const int code = app.exit(e, os, os);
        std::cerr << os.str();
        return code == 0 ? 0 : 1;
    }

    try {
        if (validate->parsed()) return cmd_validate(v_path, v_format, out_path);
        if (orbit->parsed()) return cmd_orbit(o_path, o_max_iter, o_format, out_path);
        if (pstats->parsed()) return cmd_partition_stats(p_path, p_depth, out_path);
        if (stable->parsed())
            return cmd_scaling_table(s_path, s_addresses, s_classes, s_tol, s_depth, out_path);
        if (eigen->parsed()) return cmd_eigen(e_path, e_address, e_tol, out_path);
        if (exponent->parsed())
            return cmd_exponent(x_path, x_point, x_point_opt->count() > 0, x_index, x_depth, x_side,
                                out_path);
        if (compare->parsed())
            return cmd_compare(c_path_a, c_path_b, c_tol, c_eigen, c_random, c_period, out_path);
        if (probe->parsed())
            return cmd_probe(d_path, d_a0, d_deviation, d_kmin, d_kmax, d_tol, out_path);
    } catch (const NotConverged& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NoConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace scalefn
