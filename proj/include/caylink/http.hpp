#pragma once

#include <string>

#include <httplib.h>

#include "service.hpp"

namespace caylink {

namespace detail {

template <class F>
void respond(httplib::Response& res, F&& body) {
    try {
        res.set_content(body().dump(), "application/json");
    } catch (const Error& e) {
        res.status = http_status(e.kind());
        res.set_content(error_json(e).dump(), "application/json");
    } catch (const json::exception& e) {
        res.status = 400;
        res.set_content(json{{"error", "ParseError"}, {"message", e.what()}}.dump(), "application/json");
    } catch (const std::exception& e) {
        res.status = 500;
        res.set_content(json{{"error", "Internal"}, {"message", e.what()}}.dump(), "application/json");
    }
}

inline std::string param(const httplib::Request& req, const char* key) {
    if (!req.has_param(key)) throw Error(ErrorKind::ParseError, std::string("missing query parameter '") + key + "'");
    return req.get_param_value(key);
}

inline double number_param(const httplib::Request& req, const char* key) {
    std::string s = param(req, key);
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::ParseError, std::string("query parameter '") + key + "' is not a number");
}

} // namespace detail

inline void mount_routes(httplib::Server& srv, SessionCache& cache) {
    srv.Post("/linkage", [&](const httplib::Request& req, httplib::Response& res) {
        detail::respond(res, [&] {
            auto doc = parse_document(req.body);
            json check = check_report(doc);
            auto [id, s] = cache.put(std::move(doc));
            return json{{"id", id}, {"check", check}};
        });
    });

    srv.Get("/space", [&](const httplib::Request& req, httplib::Response& res) {
        detail::respond(res, [&] {
            auto s = cache.get(detail::param(req, "id"));
            SpaceRequest r;
            if (req.has_param("algo")) r.algo = req.get_param_value("algo");
            if (req.has_param("type")) {
                auto t = req.get_param_value("type");
                if (t.find('/') != std::string::npos) r.minimal = t;
                else if (t != "all") r.sigma = detail::sigma_from(t, "type");
            }
            r.compare = req.has_param("compare");
            return space_report(*s, r);
        });
    });

    srv.Get("/realize", [&](const httplib::Request& req, httplib::Response& res) {
        detail::respond(res, [&] {
            auto s = cache.get(detail::param(req, "id"));
            double lf = detail::number_param(req, "lf");
            auto sigma = detail::sigma_from(detail::param(req, "sigma"), "sigma");
            return realize_report(*s, lf, sigma);
        });
    });

    srv.Post("/motion", [&](const httplib::Request& req, httplib::Response& res) {
        detail::respond(res, [&] {
            json body = json::parse(req.body);
            auto s = cache.get(detail::field<std::string>(body, "id", "request"));
            auto from = motion_state_from(*s, detail::field<json>(body, "from", "request"), "from");
            auto to = motion_state_from(*s, detail::field<json>(body, "to", "request"), "to");
            int animate = body.value("animate", 0);
            return motion_report(*s, from, to, animate);
        });
    });

    srv.Get("/curve", [&](const httplib::Request& req, httplib::Response& res) {
        detail::respond(res, [&] {
            auto s = cache.get(detail::param(req, "id"));
            int resolution = req.has_param("resolution") ? static_cast<int>(detail::number_param(req, "resolution")) : 100;
            return to_json(compute_curve(s->doc(), resolution));
        });
    });
}

} // namespace caylink
