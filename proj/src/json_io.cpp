#include "bcmk/json_io.hpp"

namespace bcmk {

Json to_json(const BC& z) {
    return Json{{"x", z.x()}, {"y", z.y()}, {"v", z.v()}, {"t", z.t()}};
}

Json to_json(const BCQ& z) {
    Json j = to_json(to_double(z));
    j["literal"] = to_literal(z);
    return j;
}

Json to_json(const WeightReport& rep) {
    Json j;
    if (rep.feasible) {
        j["radial"] = Json{{"t", rep.W.t}, {"a", rep.W.a}};
        j["polar"] = Json{{"p", rep.W.p}, {"c", rep.W.c}};
        j["complex_polar"] = Json{{"u", rep.W.u}, {"d", rep.W.d}, {"dprime", rep.W.dprime}};
    } else {
        j["radial"] = nullptr;
        j["polar"] = nullptr;
        j["complex_polar"] = nullptr;
    }
    j["feasible"] = rep.feasible;
    Json diags = Json::array();
    for (const auto& d : rep.diagnostics) diags.push_back(d);
    for (const auto& u : rep.unconstrained) diags.push_back(u);
    j["diagnostics"] = diags;
    return j;
}

Json to_json(const BCMatrixD& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(to_literal(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace bcmk
