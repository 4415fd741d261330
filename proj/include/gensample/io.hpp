#pragma once

#include <json.hpp>
#include <string>

#include "gensample/albert.hpp"
#include "gensample/core.hpp"
#include "gensample/graphon.hpp"
#include "gensample/hypergraphon.hpp"
#include "gensample/keisler.hpp"
#include "gensample/morley.hpp"

namespace gensample {

using json = nlohmann::json;

StepGraphon graphon_from_json(const json& j);
json to_json(const StepGraphon& w);

StepHypergraphon hypergraphon_from_json(const json& j);
json to_json(const StepHypergraphon& w);

MixtureMeasure mixture_from_json(const json& j);
json to_json(const MixtureMeasure& nu);

/// {"backend": kind, "model": {...}}, or a bare model recognized by its keys.
KeislerBackend backend_from_json(const json& j);
json to_json(const KeislerBackend& b);

LabeledHypergraph hypergraph_from_json(const json& j);
json to_json(const LabeledHypergraph& h);

/// Keys are comma-joined term tokens ("c1,c2"); "x3" names a realized variable.
ParamContext context_from_json(const json& j, int k);
json to_json(const ParamContext& ctx);

json to_json(const DistributionTable& t);
/// "mask,probability" rows in mask order.
std::string to_csv(const DistributionTable& t);

std::string format_double(double v);
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gensample
