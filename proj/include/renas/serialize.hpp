#pragma once

#include <json.hpp>

#include "renas/lexical/normalize.hpp"
#include "renas/rename_ops.hpp"
#include "renas/scoring.hpp"
#include "renas/source_model.hpp"

// JSON conversions for the library's value types (nlohmann ADL hooks).

namespace renas::lexical {

void to_json(nlohmann::json& j, const WordToken& t);
void from_json(const nlohmann::json& j, WordToken& t);
void to_json(nlohmann::json& j, const NormalizedName& n);
void from_json(const nlohmann::json& j, NormalizedName& n);

}  // namespace renas::lexical

namespace renas {

void to_json(nlohmann::json& j, const Location& l);
void from_json(const nlohmann::json& j, Location& l);
void to_json(nlohmann::json& j, const Entity& e);
void from_json(const nlohmann::json& j, Entity& e);
void to_json(nlohmann::json& j, const SourceModel& m);
void from_json(const nlohmann::json& j, SourceModel& m);
void to_json(nlohmann::json& j, const RenameOperation& op);
void from_json(const nlohmann::json& j, RenameOperation& op);
void to_json(nlohmann::json& j, const Recommendation& r);
void from_json(const nlohmann::json& j, Recommendation& r);

}  // namespace renas
