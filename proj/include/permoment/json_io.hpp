#pragma once

#include <json.hpp>

#include "permoment/aggregate.hpp"
#include "permoment/clt.hpp"
#include "permoment/factorial_basis.hpp"
#include "permoment/merge.hpp"
#include "permoment/pattern.hpp"
#include "permoment/statistic.hpp"

namespace permoment {

using nlohmann::json;

/// Integers render as JSON numbers when they fit in 64 bits, as decimal
/// strings otherwise; rationals always render as "p/q" / "p" strings.
json integer_to_json(const Integer& v);
json rational_to_json(const Rational& v);

json pattern_to_json(const Pattern& pat);
Pattern pattern_from_json(const json& j);

json statistic_to_json(const Statistic& stat);
/// Accepts {"terms":[{"coef":..,"pattern":..,"Q1":..,"Q2":..}]}; pattern
/// entries may be objects or pattern text. Schema errors name the term.
Statistic statistic_from_json(const json& j);

json combination_to_json(const FactorialCombination& fc);
FactorialCombination combination_from_json(const json& j);

json census_to_json(const MergeCensus& census);

json occurrence_to_json(const Occurrence& occ);

json burstein_to_json(const BursteinReport& rep);
json variance_coefficients_to_json(const VarianceCoefficients& rep);
json vincular_inequality_to_json(const VincularInequalityReport& rep);
json configuration_census_to_json(const ConfigurationCensusReport& rep);
json poisson_to_json(const PoissonReport& rep);

} // namespace permoment
