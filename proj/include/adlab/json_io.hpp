#pragma once

#include <json.hpp>

#include "adlab/analyst.hpp"
#include "adlab/distribution.hpp"
#include "adlab/mechanism.hpp"
#include "adlab/query.hpp"

namespace adlab {

struct ExperimentConfig;

nlohmann::json query_to_json(const Query& q);
Query query_from_json(const nlohmann::json& j);

nlohmann::json distribution_to_json(const Distribution& dist);
Distribution distribution_from_json(const nlohmann::json& j);

nlohmann::json dataset_to_json(const Dataset& ds);
Dataset dataset_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json schedule_to_json(const StepSchedule& s);
StepSchedule schedule_from_json(const nlohmann::json& j);

nlohmann::json mechanism_spec_to_json(const MechanismSpec& m);
MechanismSpec mechanism_spec_from_json(const nlohmann::json& j);

nlohmann::json analyst_spec_to_json(const AnalystSpec& a);
AnalystSpec analyst_spec_from_json(const nlohmann::json& j);

nlohmann::json experiment_config_to_json(const ExperimentConfig& c);
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

}  // namespace adlab
