#pragma once

#include <json.hpp>

#include "scat/diagram.hpp"
#include "scat/invariants.hpp"

namespace scat {

using Json = nlohmann::ordered_json;

// Rationals are serialized as [numerator, denominator] decimal strings:
// exact for any magnitude, and byte-stable because the representation is
// canonical (gcd 1, positive denominator).
inline Json rat_to_json(const Rat& r) {
    auto [n, d] = rat_pair(r);
    return Json::array({n, d});
}

inline Rat rat_from_json(const Json& j) {
    Rat r(Int(j.at(0).get<std::string>()), Int(j.at(1).get<std::string>()));
    r.canonicalize();
    return r;
}

// Laurent polynomial in q^{1/2}: ascending [half_exponent, coefficient].
inline Json laurent_to_json(const HalfLaurent& p) {
    Json a = Json::array();
    for (auto& [e, c] : p.terms())
        a.push_back(Json::array({e, rat_to_json(c)}));
    return a;
}

inline HalfLaurent laurent_from_json(const Json& j) {
    HalfLaurent p;
    for (auto& t : j)
        p += HalfLaurent::monomial(t.at(0).get<long>(),
                                   rat_from_json(t.at(1)));
    return p;
}

inline Json ratfunc_to_json(const RatFuncQ& f) {
    return Json{{"num", laurent_to_json(f.num())},
                {"den", laurent_to_json(f.den())}};
}

inline RatFuncQ ratfunc_from_json(const Json& j) {
    return RatFuncQ(laurent_from_json(j.at("num")),
                    laurent_from_json(j.at("den")));
}

inline Json point_to_json(const PointQ& p) {
    return Json::array({rat_to_json(p.x), rat_to_json(p.y)});
}

inline PointQ point_from_json(const Json& j) {
    return {rat_from_json(j.at(0)), rat_from_json(j.at(1))};
}

inline Json class_to_json(LatticeClass m) {
    return Json::array({m.a, m.b});
}

inline LatticeClass class_from_json(const Json& j) {
    return {j.at(0).get<long>(), j.at(1).get<long>()};
}

inline Json diagram_to_json(const Diagram<RatFuncQ>& d) {
    Json j;
    j["region"] = Json{{"xmin", rat_to_json(d.region.xmin)},
                       {"xmax", rat_to_json(d.region.xmax)},
                       {"smax", rat_to_json(d.region.smax)}};
    j["order_cap"] = rat_to_json(d.order_cap);
    Json rays = Json::array();
    for (auto& r : d.rays) {
        Json jr;
        jr["init"] = point_to_json(r.init);
        jr["class"] = class_to_json(r.cls);
        if (r.bounded)
            jr["T"] = rat_to_json(r.T);
        else
            jr["T"] = "inf";
        jr["function"] = ratfunc_to_json(r.fn);
        rays.push_back(std::move(jr));
    }
    j["rays"] = std::move(rays);
    Json verts = Json::array(); // processing order
    for (auto& v : d.vertex_log) {
        Json jv;
        jv["p"] = point_to_json(v.p);
        auto side = [](const std::vector<LocalRay<RatFuncQ>>& rs) {
            Json a = Json::array();
            for (auto& lr : rs)
                a.push_back(Json{{"class", class_to_json(lr.cls)},
                                 {"function", ratfunc_to_json(lr.coef)}});
            return a;
        };
        jv["ingoing"] = side(v.ingoing);
        jv["outgoing"] = side(v.outgoing);
        verts.push_back(std::move(jv));
    }
    j["vertex_log"] = std::move(verts);
    return j;
}

inline Diagram<RatFuncQ> diagram_from_json(const Json& j) {
    Diagram<RatFuncQ> d;
    d.region = {rat_from_json(j.at("region").at("xmin")),
                rat_from_json(j.at("region").at("xmax")),
                rat_from_json(j.at("region").at("smax"))};
    d.order_cap = rat_from_json(j.at("order_cap"));
    for (auto& jr : j.at("rays")) {
        Ray<RatFuncQ> r;
        r.init = point_from_json(jr.at("init"));
        r.cls = class_from_json(jr.at("class"));
        if (jr.at("T").is_string()) {
            r.bounded = false;
        } else {
            r.bounded = true;
            r.T = rat_from_json(jr.at("T"));
        }
        r.fn = ratfunc_from_json(jr.at("function"));
        d.rays.push_back(std::move(r));
    }
    for (auto& jv : j.at("vertex_log")) {
        VertexRecord<RatFuncQ> v;
        v.p = point_from_json(jv.at("p"));
        auto side = [](const Json& a) {
            std::vector<LocalRay<RatFuncQ>> rs;
            for (auto& e : a)
                rs.push_back({class_from_json(e.at("class")),
                              ratfunc_from_json(e.at("function"))});
            return rs;
        };
        v.ingoing = side(jv.at("ingoing"));
        v.outgoing = side(jv.at("outgoing"));
        d.vertex_log.push_back(std::move(v));
    }
    return d;
}

// Invariants report. Poincare coefficients are plain integers (theorems
// guarantee integrality); everything exact elsewhere stays [num, den].
inline Json betti_report(const BettiPolynomial& b, const PointQ& probe,
                         const Rat& order_cap, const TreeReport* trees) {
    Json j;
    j["gamma"] = Json::array({b.gamma.r, b.gamma.d, b.gamma.chi});
    j["dim"] = b.dim;
    Json pc = Json::array();
    for (auto& c : b.coefficients()) pc.push_back(c.get_str());
    j["poincare"] = std::move(pc);
    Json hodge = Json::object();
    for (auto& [pq, c] : hodge_table(b))
        hodge[std::to_string(pq.first) + "," + std::to_string(pq.second)] =
            c.get_str();
    j["hodge"] = std::move(hodge);
    EulerNumbers e = euler_numbers(b);
    j["euler"] = Json{{"plus", e.plus.get_str()},
                      {"minus", e.minus.get_str()},
                      {"real", e.real.get_str()},
                      {"real_is_geometric", !e.primitive_only_flag}};
    if (trees) {
        Json ts = Json::array();
        for (auto& [leaves, poly] : trees->pieces) {
            Json leaf = Json::object();
            for (auto& [n, mult] : leaves)
                leaf[std::to_string(n)] = mult;
            Json cs = Json::array();
            long base = poly.is_zero() ? 0 : poly.min_exp();
            for (long x = base; !poly.is_zero() && x <= poly.max_exp();
                 x += 2)
                cs.push_back(poly.coeff(x).get_str());
            ts.push_back(Json{{"leaves", std::move(leaf)},
                              {"min_half_exp", base},
                              {"poly", std::move(cs)}});
        }
        j["trees"] = std::move(ts);
    }
    j["stabilized"] = true;
    j["probe"] = Json{{"x", rat_to_json(probe.x)},
                      {"y", rat_to_json(probe.y)}};
    j["order_cap"] = rat_to_json(order_cap);
    return j;
}

} // namespace scat
