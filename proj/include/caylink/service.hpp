#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>

#include "cayley_vector.hpp"
#include "elr.hpp"
#include "io.hpp"
#include "motion.hpp"
#include "qim.hpp"

namespace caylink {

// Exit status for the CLI and HTTP status for the service, per error kind.
inline int exit_code(ErrorKind k) { return k == ErrorKind::ParseError ? 3 : 2; }

inline int http_status(ErrorKind k) {
    switch (k) {
    case ErrorKind::TriangleViolation:
    case ErrorKind::DegenerateBase:
    case ErrorKind::Unrealizable:
    case ErrorKind::DomainError:
        return 422;
    default:
        return 400;
    }
}

inline json error_json(const Error& e) {
    json j{{"error", std::string(to_string(e.kind()))}, {"message", e.message()}};
    if (e.step()) j["step"] = *e.step();
    return j;
}

// One uploaded document with its derived structures. Spaces are computed on
// first use and then shared read-only.
class Session {
public:
    explicit Session(LinkageDocument doc)
        : doc_(std::move(doc)), inst_(make_instance(doc_.linkage, doc_.f, Tolerances::from_env())) {}

    const LinkageDocument& doc() const { return doc_; }
    const Instance& instance() const { return inst_; }

    const CayleySpace& elr_space() const {
        std::call_once(elr_once_, [&] { elr_ = std::make_unique<CayleySpace>(elr_full(inst_)); });
        return *elr_;
    }

private:
    LinkageDocument doc_;
    Instance inst_;
    mutable std::once_flag elr_once_;
    mutable std::unique_ptr<CayleySpace> elr_;
};

inline std::string document_hash(const LinkageDocument& doc) {
    std::ostringstream os;
    os << std::hex << std::hash<std::string>{}(to_json(doc).dump());
    return os.str();
}

// ---- check --------------------------------------------------------------

inline json check_report(const LinkageDocument& doc) {
    json j;
    Graph gf = doc.linkage.graph.with_edge(doc.f);
    j["treeDecomposable"] = is_tree_decomposable(gf);
    ConstructionPlan plan = construction_plan(doc.linkage.graph, doc.f);
    json steps = json::array();
    for (const auto& s : plan.steps) {
        auto spec = extreme_graph(plan, s.index);
        steps.push_back({{"step", s.index},
                         {"vertex", s.vertex},
                         {"base", {s.u, s.w}},
                         {"extremeTreeDecomposable", spec.tree_decomposable && spec.reverse_plan.has_value()},
                         {"extremeMinimallyRigid", spec.minimally_rigid}});
    }
    j["steps"] = steps;
    auto low = has_low_cayley_complexity(plan);
    j["lowCayleyComplexity"] = low.low;
    if (low.failing_step) j["failingStep"] = *low.failing_step;
    auto pd = last_level_and_paths(plan);
    j["onePath"] = pd.one_path;
    j["lastLevel"] = pd.last_level;
    j["paths"] = pd.paths.size();
    j["warnings"] = check_genericity(doc.linkage).warnings;
    return j;
}

inline std::string check_text(const json& r) {
    std::ostringstream os;
    os << "tree-decomposable with f: " << (r["treeDecomposable"].get<bool>() ? "yes" : "no") << "\n";
    for (const auto& s : r["steps"])
        os << "step " << s["step"] << ": v" << s["vertex"] << " <| (" << s["base"][0] << "," << s["base"][1]
           << ")  extreme graph " << (s["extremeTreeDecomposable"].get<bool>() ? "tree-decomposable" : "NOT tree-decomposable")
           << "\n";
    os << "low Cayley complexity: " << (r["lowCayleyComplexity"].get<bool>() ? "yes" : "no");
    if (r.contains("failingStep")) os << ", failing step " << r["failingStep"];
    os << "; 1-path: " << (r["onePath"].get<bool>() ? "yes" : "no") << "\n";
    os << "last level:";
    for (const auto& v : r["lastLevel"]) os << " " << v;
    os << "\n";
    for (const auto& w : r["warnings"]) os << "warning: " << w.get<std::string>() << "\n";
    return os.str();
}

// ---- space ----------------------------------------------------------------

struct SpaceRequest {
    std::string algo = "elr";
    std::optional<ForwardType> sigma;
    std::optional<std::string> minimal;  // "sigma/reverse", reverse over the QIM chain's reverse triples
    bool compare = false;
};

namespace detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline json oriented_json(const OrientedCayleySpace& os) {
    json eps = json::array();
    for (const auto& e : os.endpoints) eps.push_back({{"value", e.value}, {"step", e.step}, {"extreme", to_string(e.which)}});
    return {{"sigma", type_to_string(os.sigma)}, {"intervals", to_json(os.set)}, {"endpoints", eps}};
}

inline QimMode minimal_mode(const Instance& inst, const std::string& spec) {
    auto slash = spec.find('/');
    ForwardType sigma = sigma_from(spec.substr(0, slash), "--minimal-type");
    if (sigma.size() != inst.steps()) throw Error(ErrorKind::DomainError, "forward type length does not match the plan");
    auto keys = build_qim_chain<double>(inst).reverse_keys(inst.plan);
    std::string rev = slash == std::string::npos ? "" : spec.substr(slash + 1);
    if (rev.size() != keys.size())
        throw Error(ErrorKind::DomainError, "reverse part needs " + std::to_string(keys.size()) + " signs");
    SignMap fixed;
    for (std::size_t i = 0; i < keys.size(); ++i) fixed[keys[i]] = rev[i] == '+' ? 1 : rev[i] == '-' ? -1 : 0;
    return QimMode::minimal_type(sigma, fixed);
}

inline json links_json(const Instance& inst) {
    json out = json::array();
    auto ch = build_qim_chain<double>(inst);
    for (const auto& l : ch.links)
        out.push_back({{"kind", to_string(l.kind)}, {"from", {l.from.a, l.from.b}}, {"to", {l.to.a, l.to.b}}});
    return out;
}

inline IntervalSet run_qim(const Instance& inst, const QimMode& mode) {
    if (last_level_and_paths(inst.plan).one_path || mode.kind == QimMode::AllTypes)
        return to_double_set(qim<hp_real>(inst, mode));
    return to_double_set(qim_multipath<hp_real>(inst, mode));
}

} // namespace detail

inline json space_report(const Session& s, const SpaceRequest& req) {
    const Instance& inst = s.instance();
    json j;
    j["algorithm"] = req.algo;
    auto t0 = std::chrono::steady_clock::now();
    json types = json::array();
    IntervalSet all;
    json diag;
    if (req.algo == "elr") {
        if (req.minimal) throw Error(ErrorKind::NotSupported, "ELR takes forward types only; use --algo qim for a minimal type");
        if (req.sigma) {
            auto os = elr(inst, *req.sigma);
            types.push_back(detail::oriented_json(os));
            all = os.set;
            diag["deadEnds"] = os.dead_ends.size();
        } else {
            const auto& cs = s.elr_space();
            std::size_t dead = 0;
            for (const auto& [sigma, os] : cs.by_type) {
                types.push_back(detail::oriented_json(os));
                dead += os.dead_ends.size();
            }
            all = cs.all;
            diag["deadEnds"] = dead;
        }
    } else if (req.algo == "qim") {
        QimMode mode = QimMode::all_types();
        if (req.minimal) mode = detail::minimal_mode(inst, *req.minimal);
        else if (req.sigma) mode = QimMode::full_type(*req.sigma);
        all = detail::run_qim(inst, mode);
        if (mode.kind != QimMode::AllTypes) {
            json t{{"sigma", type_to_string(mode.sigma)}, {"intervals", to_json(all)}};
            if (req.minimal) t["minimalType"] = *req.minimal;
            types.push_back(t);
        }
        diag["links"] = detail::links_json(inst);
        // The order in which a minimal type lists its reverse signs.
        json rev = json::array();
        for (const auto& k : build_qim_chain<double>(inst).reverse_keys(inst.plan)) rev.push_back(k);
        diag["reverseTriples"] = rev;
    } else {
        throw Error(ErrorKind::DomainError, "unknown algorithm '" + req.algo + "'");
    }
    j["types"] = types;
    j["union"] = to_json(all);
    j["elapsedMs"] = detail::elapsed_ms(t0);
    if (req.compare) {
        IntervalSet other;
        if (req.algo == "elr") other = detail::run_qim(inst, req.sigma ? QimMode::full_type(*req.sigma) : QimMode::all_types());
        else other = req.sigma ? elr(inst, *req.sigma).set : s.elr_space().all;
        double worst = 0;
        bool same = other.size() == all.size();
        for (std::size_t i = 0; same && i < all.size(); ++i)
            worst = std::max({worst, std::abs(all[i].lo - other[i].lo), std::abs(all[i].hi - other[i].hi)});
        diag["compare"] = {{"union", to_json(other)}, {"sameCount", same}, {"maxEndpointGap", same ? json(worst) : json()}};
    }
    j["diagnostics"] = diag;
    return j;
}

inline std::string space_csv(const json& report) {
    std::string out = "sigma,lo,hi\n";
    if (report["types"].empty())
        for (const auto& iv : report["union"])
            out += "*," + format_double(iv[0].get<double>()) + "," + format_double(iv[1].get<double>()) + "\n";
    for (const auto& t : report["types"])
        for (const auto& iv : t["intervals"])
            out += t["sigma"].get<std::string>() + "," + format_double(iv[0].get<double>()) + "," +
                   format_double(iv[1].get<double>()) + "\n";
    return out;
}

// ---- realize --------------------------------------------------------------

// A request a hair outside the space (a rounded endpoint such as 7 for
// 7.000000004) is realized at the endpoint it names.
inline json realize_report(const Session& s, double lf, const ForwardType& sigma) {
    const Instance& inst = s.instance();
    if (!try_realize(inst, lf, sigma)) {
        if (auto it = s.elr_space().by_type.find(sigma); it != s.elr_space().by_type.end()) {
            double tol = space_tolerance(inst);
            for (const auto& iv : it->second.set)
                for (double x : {iv.lo, iv.hi})
                    if (std::abs(x - lf) <= tol) return to_json(realize(inst, x, sigma), inst);
        }
    }
    return to_json(realize(inst, lf, sigma), inst);
}

// ---- motion ---------------------------------------------------------------

// A motion endpoint is either {"lf", "sigma"} or {"points": {...}}.
inline MotionState motion_state_from(const Session& s, const json& j, const std::string& where) {
    const Instance& inst = s.instance();
    if (j.is_object() && j.contains("points")) {
        Realization r;
        r.points = detail::points_from(j["points"], where + ".points");
        for (Vertex v : inst.linkage.graph.vertices())
            if (!r.points.count(v)) detail::parse_fail(where, "no coordinates for vertex " + std::to_string(v));
        double scale = 1;
        for (auto& [e, l] : inst.linkage.lengths) scale = std::max(scale, l);
        if (max_edge_residual(inst.linkage, r) > 1e-6 * scale)
            throw Error(ErrorKind::DomainError, where + ": coordinates do not respect the bar lengths");
        return state_of(inst, r);
    }
    MotionState st;
    st.lf = detail::field<double>(j, "lf", where);
    st.sigma = detail::sigma_from(detail::field<std::string>(j, "sigma", where), where + ".sigma");
    if (st.sigma.size() != inst.steps()) throw Error(ErrorKind::DomainError, where + ": forward type length does not match the plan");
    return st;
}

inline json motion_report(const Session& s, const MotionState& from, const MotionState& to, int animate = 0) {
    const auto& cs = s.elr_space();
    const Instance& inst = s.instance();
    double tol = space_tolerance(inst);
    for (const auto* st : {&from, &to})
        if (!try_realize(inst, st->lf, st->sigma) && detail::locate_state(cs, *st, tol) < 0)
            throw Error(ErrorKind::TriangleViolation, "l_f = " + format_double(st->lf) + " is not realizable with type " +
                                                          type_to_string(st->sigma));
    auto paths = find_paths(cs, from, to, tol);
    json j;
    json ps = json::array();
    for (const auto& p : paths) {
        json pj = to_json(p);
        if (animate > 0) {
            json frames = json::array();
            for (const auto& r : sample_motion(inst, p, animate)) frames.push_back(detail::points_json(r.points));
            pj["frames"] = frames;
        }
        ps.push_back(pj);
    }
    j["paths"] = ps;
    j["case"] = motion_case(from, to, detail::locate_state(cs, from, tol), detail::locate_state(cs, to, tol), paths);
    return j;
}

// ---- curve ----------------------------------------------------------------

struct CurveResult {
    CompleteCayleyVector F;
    std::vector<CayleyCurvePoint> points;
    InjectivityReport injectivity;
    std::size_t last_level = 0;
    bool certified = false;
};

// Works on the cluster-normalized linkage, where the bijectivity results hold.
inline CurveResult compute_curve(const LinkageDocument& doc, int resolution) {
    Instance inst = make_instance(normalize_clusters(doc.linkage, doc.f), doc.f, Tolerances::from_env());
    auto low = has_low_cayley_complexity(inst.plan);
    if (!low.low)
        throw Error(ErrorKind::NotSupported, "extreme graph of step " + std::to_string(*low.failing_step) +
                                                 " is not tree-decomposable", low.failing_step);
    auto pd = last_level_and_paths(inst.plan);
    CurveResult out;
    out.F = pd.one_path ? minimum_ccv_1path(inst.plan) : minimal_ccv_general(inst.plan);
    out.certified = certifies_global_rigidity(inst.plan, out.F);
    out.last_level = pd.paths.size();
    auto cs = elr_full(inst);
    out.points = sample_cayley_curve(inst, cs, out.F, resolution);
    out.injectivity = injectivity_probe(inst, cs, out.F, resolution);
    return out;
}

inline json to_json(const CurveResult& c) {
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back(to_json(p));
    return {{"vector", to_json(c.F)},
            {"dimension", c.F.size()},
            {"lastLevelVertices", c.last_level},
            {"globallyRigid", c.certified},
            {"injective", c.injectivity.pass},
            {"injectivityCollisions", c.injectivity.collisions},
            {"points", pts}};
}

// ---- session cache --------------------------------------------------------

class SessionCache {
public:
    std::pair<std::string, std::shared_ptr<const Session>> put(LinkageDocument doc) {
        std::string id = document_hash(doc);
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (auto it = map_.find(id); it != map_.end()) return {id, it->second};
        }
        auto s = std::make_shared<const Session>(std::move(doc));
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = map_.emplace(id, s);
        return {id, it->second};
    }

    std::shared_ptr<const Session> get(const std::string& id) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find(id);
        if (it == map_.end()) throw Error(ErrorKind::DomainError, "unknown document id '" + id + "'");
        return it->second;
    }

private:
    mutable std::mutex mu_;
    std::map<std::string, std::shared_ptr<const Session>> map_;
};

} // namespace caylink
