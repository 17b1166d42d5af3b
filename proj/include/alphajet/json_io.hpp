#pragma once

// JSON mirrors of the public value types.
//
//   AlgebraSpec     {"n": int, "k": int, "relations": [[int,...],...]}
//   AlgebraElement  {"spec": AlgebraSpec, "terms": [{"exp": [int,...], "coef": float},...]}
//   AlgebraMorphism {"source": AlgebraSpec, "target": AlgebraSpec, "images": [AlgebraElement,...]}
//   SmoothExpr      {"op": ..., "args": [...]}; on input also an infix string or a number
//   SmoothMap       {"arity": int, "components": [SmoothExpr,...]}
//   MapJet          {"x": [...], "k": int, "components": [AlgebraElement,...]}
//   AlphaJet        {"algebra": AlgebraSpec, "x": [...], "p": [...], "images": [AlgebraElement,...]}
//   Family          {"algebra": AlgebraSpec, "base_arity": int,
//                    "images": [[{"exp": [...], "coef": SmoothExpr},...],...]}
//   ChartTransition {"base_map": SmoothMap, "fiber_map": SmoothMap, "family": Family}
//
// Terms are written in graded-lex order, so serialisation is canonical.
// Malformed input throws InvalidArgument with a JSON-pointer location.

#include "alphajet/alpha_jet.hpp"
#include "alphajet/bundle_charts.hpp"
#include "alphajet/map_jet.hpp"
#include "alphajet/smooth_expr.hpp"
#include "alphajet/weil_algebra.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace alphajet::io {

using json = nlohmann::ordered_json;

json to_json(const AlgebraSpec& spec);
json to_json(const AlgebraElement& a);
json to_json(const AlgebraMorphism& kappa);
json to_json(const SmoothExpr& f);
json to_json(const SmoothMap& phi);
json to_json(const MapJet& j);
json to_json(const AlphaJet& u);
json to_json(const AutomorphismFamily& family);
json to_json(const ChartTransition& t);
/// Non-finite deviations are written as null.
json to_json(const CheckReport& report);

AlgebraSpec spec_from_json(const json& j, const std::string& path = "");
AlgebraElement element_from_json(const json& j, const std::string& path = "");
AlgebraMorphism morphism_from_json(const json& j, const std::string& path = "");
SmoothExpr expr_from_json(const json& j, const std::string& path = "");
/// "arity" may be omitted; it then defaults to the largest variable used (at least 1).
SmoothMap map_from_json(const json& j, const std::string& path = "");
MapJet map_jet_from_json(const json& j, const std::string& path = "");
AlphaJet alpha_jet_from_json(const json& j, const std::string& path = "");
AutomorphismFamily family_from_json(const json& j, const std::string& path = "");
ChartTransition transition_from_json(const json& j, const std::string& path = "");

std::vector<double> point_from_json(const json& j, const std::string& path = "");

/// Parses text, throwing ParseError (location "byte N") on bad JSON.
json parse_json(const std::string& text);

} // namespace alphajet::io
