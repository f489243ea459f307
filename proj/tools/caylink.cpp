#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "caylink/fixture.hpp"
#include "caylink/http.hpp"
#include "caylink/io.hpp"
#include "caylink/service.hpp"

using namespace caylink;

namespace {

// "7.2:+-+" or "@file.json" holding {"points": {...}} or {"lf", "sigma"}.
json endpoint_arg(const std::string& s) {
    if (!s.empty() && s[0] == '@') {
        std::ifstream in(s.substr(1));
        if (!in) throw Error(ErrorKind::ParseError, s.substr(1) + ": cannot open file");
        try {
            return json::parse(in);
        } catch (const json::parse_error& e) {
            throw Error(ErrorKind::ParseError, s.substr(1) + ": malformed JSON");
        }
    }
    auto colon = s.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "'" + s + "' is not LF:SIGMA or @file");
    double lf = 0;
    try {
        lf = std::stod(s.substr(0, colon));
    } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "'" + s.substr(0, colon) + "' is not a number");
    }
    return {{"lf", lf}, {"sigma", s.substr(colon + 1)}};
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::DomainError, path + ": cannot write");
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cayley configuration spaces of 1-dof tree-decomposable linkages"};
    app.require_subcommand(1);

    std::string file;
    bool as_json = false;

    auto* check = app.add_subcommand("check", "graph-class report for a linkage file");
    check->add_option("file", file, "linkage document")->required();
    check->add_flag("--json", as_json, "JSON output");

    SpaceRequest sreq;
    std::string sigma_s, minimal_s;
    bool all_types = false, as_csv = false;
    auto* space = app.add_subcommand("space", "Cayley configuration space over the base non-edge");
    space->add_option("file", file, "linkage document")->required();
    space->add_option("--algo", sreq.algo, "elr or qim")->check(CLI::IsMember({"elr", "qim"}));
    auto* sig_opt = space->add_option("--sigma", sigma_s, "forward type, e.g. +-+");
    auto* min_opt = space->add_option("--minimal-type", minimal_s, "forward/reverse signs, e.g. +-+/-+");
    auto* all_opt = space->add_flag("--all-types", all_types, "union over all forward types");
    sig_opt->excludes(min_opt);
    all_opt->excludes(sig_opt)->excludes(min_opt);
    space->add_flag("--compare", sreq.compare, "also run the other algorithm and diff the unions");
    space->add_flag("--json", as_json, "JSON output");
    space->add_flag("--csv", as_csv, "CSV output");

    std::string from_s, to_s;
    int animate = 0;
    auto* motion = app.add_subcommand("motion", "continuous motion paths between two realizations");
    motion->add_option("file", file, "linkage document")->required();
    motion->add_option("--from", from_s, "LF:SIGMA or @realization.json")->required();
    motion->add_option("--to", to_s, "LF:SIGMA or @realization.json")->required();
    motion->add_option("--animate", animate, "frames per leg to include");

    int resolution = 100;
    std::string out_path;
    auto* curve = app.add_subcommand("curve", "sample the canonical Cayley curve");
    curve->add_option("file", file, "linkage document")->required();
    curve->add_option("--resolution", resolution, "samples per oriented interval");
    curve->add_option("--out", out_path, "output file; .csv for CSV, JSON otherwise");

    int port = 8080;
    std::string host = "127.0.0.1", static_dir;
    auto* serve = app.add_subcommand("serve", "HTTP JSON service");
    serve->add_option("--port", port, "listen port");
    serve->add_option("--host", host, "listen address");
    serve->add_option("--static", static_dir, "directory of UI assets to serve at /");

    std::string family = "nested-quads";
    NestedQuadOptions nq;
    std::vector<double> q1;
    auto* fixture = app.add_subcommand("fixture", "generate a linkage document");
    fixture->add_option("--family", family, "fixture family")->check(CLI::IsMember({"nested-quads"}));
    fixture->add_option("--k", nq.k, "last construction step of the nested quadrilaterals");
    fixture->add_option("--eps", nq.eps, "relative margin of each new quadrilateral");
    fixture->add_option("--q1", q1, "four side lengths of the first quadrilateral")->expected(4)->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        if (*check) {
            auto r = check_report(load_document(file));
            std::cout << (as_json ? r.dump(2) + "\n" : check_text(r));
        } else if (*space) {
            Session s(load_document(file));
            if (!sigma_s.empty()) sreq.sigma = detail::sigma_from(sigma_s, "--sigma");
            if (!minimal_s.empty()) sreq.minimal = minimal_s;
            if (sreq.algo == "qim" && all_types && !last_level_and_paths(s.instance().plan).one_path)
                throw Error(ErrorKind::NotOnePath, "qim --all-types needs a 1-path graph");
            auto r = space_report(s, sreq);
            if (as_csv) std::cout << space_csv(r);
            else if (as_json) std::cout << r.dump(2) << "\n";
            else {
                for (const auto& t : r["types"]) {
                    std::cout << t["sigma"].get<std::string>() << ":";
                    for (const auto& iv : t["intervals"]) std::cout << " [" << format_double(iv[0]) << ", " << format_double(iv[1]) << "]";
                    std::cout << "\n";
                }
                std::cout << "union (" << r["union"].size() << " intervals):";
                for (const auto& iv : r["union"]) std::cout << " [" << format_double(iv[0]) << ", " << format_double(iv[1]) << "]";
                std::cout << "\n";
                if (r["diagnostics"].contains("compare")) std::cout << "compare: " << r["diagnostics"]["compare"].dump() << "\n";
            }
        } else if (*motion) {
            Session s(load_document(file));
            auto from = motion_state_from(s, endpoint_arg(from_s), "from");
            auto to = motion_state_from(s, endpoint_arg(to_s), "to");
            std::cout << motion_report(s, from, to, animate).dump(2) << "\n";
        } else if (*curve) {
            auto c = compute_curve(load_document(file), resolution);
            bool csv = out_path.size() >= 4 && out_path.substr(out_path.size() - 4) == ".csv";
            write_out(out_path, csv ? curve_csv(c.F, c.points) : to_json(c).dump(2) + "\n");
            std::cerr << "vector:";
            for (const Edge& e : c.F.entries) std::cerr << " " << to_string(e);
            std::cerr << "  globally rigid: " << (c.certified ? "yes" : "no")
                      << "  injectivity probe: " << (c.injectivity.pass ? "pass" : "FAIL") << "\n";
        } else if (*serve) {
            SessionCache cache;
            httplib::Server srv;
            mount_routes(srv, cache);
            if (!static_dir.empty() && !srv.set_mount_point("/", static_dir))
                throw Error(ErrorKind::DomainError, static_dir + ": not a directory");
            std::cerr << "listening on " << host << ":" << port << "\n";
            if (!srv.listen(host, port)) throw Error(ErrorKind::DomainError, "cannot listen on " + host + ":" + std::to_string(port));
        } else if (*fixture) {
            if (!q1.empty()) std::copy(q1.begin(), q1.end(), nq.q1);
            if (nq.eps <= 0) std::cerr << "warning: eps = 0 makes neighbouring extremes touch; the space is degenerate\n";
            auto fx = nested_quad_fixture<hp_real>(nq);
            std::cout << serialize(make_document(fx.linkage, fx.f));
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code(e.kind());
    }
    return 0;
}
