#include "permoment/json_io.hpp"

namespace permoment {

json integer_to_json(const Integer& v) {
    if (v.fits_slong_p()) {
        return (long)v.get_si();
    }
    return v.get_str();
}

json rational_to_json(const Rational& v) {
    return to_string(v);
}

json pattern_to_json(const Pattern& pat) {
    return json{{"perm", pat.perm().one_line()},
                {"C", pat.adjacency_positions()},
                {"D", pat.adjacency_values()}};
}

Pattern pattern_from_json(const json& j) {
    if (j.is_string()) {
        return parse_pattern(j.get<std::string>());
    }
    if (!j.is_object() || !j.contains("perm")) {
        throw ParseError("pattern JSON must be a string or an object with 'perm'");
    }
    std::vector<int> perm = j.at("perm").get<std::vector<int>>();
    std::vector<int> c, d;
    if (j.contains("C")) {
        c = j.at("C").get<std::vector<int>>();
    }
    if (j.contains("D")) {
        d = j.at("D").get<std::vector<int>>();
    }
    try {
        return Pattern(Permutation(std::move(perm)), c, d);
    } catch (const DomainError& e) {
        throw ParseError(std::string("invalid pattern JSON: ") + e.what());
    }
}

json statistic_to_json(const Statistic& stat) {
    json terms = json::array();
    for (const auto& [coef, s] : stat.terms()) {
        terms.push_back(json{{"coef", to_string(coef)},
                             {"pattern", pattern_to_json(s.pattern)},
                             {"Q1", format_poly(s.q1)},
                             {"Q2", format_poly(s.q2)}});
    }
    return json{{"terms", std::move(terms)}};
}

Statistic statistic_from_json(const json& j) {
    if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array() ||
        j.at("terms").empty()) {
        throw ParseError("statistic JSON needs a nonempty 'terms' array");
    }
    std::vector<std::pair<Rational, SimpleStatistic>> terms;
    int idx = 0;
    for (const auto& t : j.at("terms")) {
        try {
            if (!t.is_object()) {
                throw ParseError("term is not an object");
            }
            Rational coef(1);
            if (t.contains("coef")) {
                coef = parse_rational(t.at("coef").get<std::string>());
            }
            Pattern pat = pattern_from_json(t.at("pattern"));
            int k = pat.length();
            ValuationPoly q1 = t.contains("Q1")
                                   ? parse_poly(t.at("Q1").get<std::string>(), k)
                                   : ValuationPoly::constant(k, Rational(1));
            ValuationPoly q2 = t.contains("Q2")
                                   ? parse_poly(t.at("Q2").get<std::string>(), k)
                                   : ValuationPoly::constant(k, Rational(1));
            terms.push_back({coef, {std::move(pat), std::move(q1), std::move(q2)}});
        } catch (const json::exception& e) {
            throw ParseError("statistic term " + std::to_string(idx) + ": " +
                             e.what());
        } catch (const Error& e) {
            throw ParseError("statistic term " + std::to_string(idx) + ": " +
                             e.what());
        }
        ++idx;
    }
    return Statistic(std::move(terms));
}

json combination_to_json(const FactorialCombination& fc) {
    json coeffs = json::object();
    for (const auto& [off, cf] : fc.coeffs) {
        coeffs[std::to_string(off)] = to_string(cf);
    }
    return json{{"coeffs", std::move(coeffs)}, {"validFrom", fc.valid_from}};
}

FactorialCombination combination_from_json(const json& j) {
    FactorialCombination fc;
    if (!j.is_object() || !j.contains("coeffs")) {
        throw ParseError("combination JSON needs a 'coeffs' object");
    }
    for (const auto& [key, val] : j.at("coeffs").items()) {
        int off = 0;
        try {
            off = std::stoi(key);
        } catch (const std::exception&) {
            throw ParseError("combination offset '" + key + "' is not an integer");
        }
        Rational cf = parse_rational(val.get<std::string>());
        if (cf != 0) {
            fc.coeffs[off] = cf;
        }
    }
    if (j.contains("validFrom")) {
        fc.valid_from = j.at("validFrom").get<long>();
    }
    return fc;
}

json census_to_json(const MergeCensus& census) {
    json rows = json::array();
    for (const auto& [shape, count] : census.by_shape) {
        auto [k, c, d] = shape;
        rows.push_back(json{{"k", k},
                            {"c", c},
                            {"d", d},
                            {"blocks", k - c},
                            {"count", integer_to_json(count)}});
    }
    return json{{"r", census.r},
                {"copyLength", census.copy_length},
                {"total", integer_to_json(census.total)},
                {"rows", std::move(rows)}};
}

json occurrence_to_json(const Occurrence& occ) {
    return json{{"values", occ.values}, {"positions", occ.positions}};
}

json burstein_to_json(const BursteinReport& rep) {
    return json{{"k", rep.k},
                {"a", integer_to_json(rep.a)},
                {"bound", integer_to_json(rep.bound)},
                {"holds", rep.holds}};
}

json variance_coefficients_to_json(const VarianceCoefficients& rep) {
    return json{{"blocks", rep.blocks},
                {"coefTop", rational_to_json(rep.coef_top)},
                {"coefNext", rational_to_json(rep.coef_next)}};
}

json vincular_inequality_to_json(const VincularInequalityReport& rep) {
    json terms = json::array();
    for (const auto& [l, t] : rep.terms) {
        terms.push_back(json{{"l", l}, {"term", integer_to_json(t)}});
    }
    return json{{"k", rep.k},
                {"blocks", rep.blocks},
                {"maxBlock", rep.max_block},
                {"lhs", integer_to_json(rep.lhs)},
                {"rhs", integer_to_json(rep.rhs)},
                {"holds", rep.holds},
                {"terms", std::move(terms)}};
}

json configuration_census_to_json(const ConfigurationCensusReport& rep) {
    json rows = json::array();
    for (const auto& row : rep.rows) {
        rows.push_back(json{{"overlap", row.overlap},
                            {"configurations", row.configurations},
                            {"mergesStrict", integer_to_json(row.merges_strict)},
                            {"mergesLoose", integer_to_json(row.merges_loose)},
                            {"threshold", rational_to_json(row.threshold)},
                            {"holdsStrict", row.holds_strict},
                            {"holdsLoose", row.holds_loose}});
    }
    return json{{"k", rep.k},
                {"blocks", rep.blocks},
                {"totalConfigurations", rep.total_configurations},
                {"rows", std::move(rows)}};
}

json poisson_to_json(const PoissonReport& rep) {
    json points = json::array();
    for (const auto& pt : rep.points) {
        points.push_back(json{{"n", pt.n},
                              {"value", rational_to_json(pt.value)},
                              {"gap", rational_to_json(pt.gap)}});
    }
    return json{{"r", rep.r},
                {"bell", integer_to_json(rep.bell_number)},
                {"points", std::move(points)},
                {"gapsNonincreasing", rep.gaps_nonincreasing},
                {"tolerance", rational_to_json(rep.tolerance)},
                {"withinTolerance", rep.within_tolerance}};
}

} // namespace permoment
