#pragma once

#include "yupana/arithmetic.hpp"
#include "yupana/engine.hpp"
#include "yupana/verification.hpp"

#include <json.hpp>

namespace yupana::codec {

using nlohmann::json;

// Integers travel as decimal strings so they survive any client's number type.
json square(SquareAddr addr);
SquareAddr parse_square(const json& j);

// rows, cells (non-empty squares), snapshot, value, is_simple, decoded
json board(const BoardState& state);
json match(const Match& m, const std::string& id = {});
json trace_step(const TraceStep& step);
json trace(const MoveTrace& trace);
json rule(const Rule& r);
json catalog();
json operation(const OperationResult& result);
json property(const verify::PropertyReport& report);
json exploration(const ExploreReport& report);

// Accepts a number or a decimal string.
Integer parse_integer_field(const json& j);

}  // namespace yupana::codec
