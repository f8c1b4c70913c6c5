// Copyright 2026 The strandtol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <random>

#include "strandtol/json_io.hpp"
#include "strandtol/procedures.hpp"
#include "strandtol/strand.hpp"

using namespace strandtol;

namespace {

std::string record_strings(const RunResult &r) {
    std::string s;
    for (const auto &rec : r.records) s += rec.label + (rec.counted ? "*" : "") + "=" + canonical_string(rec.p_L) + ";";
    for (const auto &rec : r.outputs) s += rec.label + "=" + canonical_string(rec.p_L) + ";";
    return s;
}

}  // namespace

TEST(JsonPoly, RoundTrip) {
    for (const char *text : {"0", "1", "pM + 2 pAY - 3/4 pM^2", "p2XZ + p2XI + 1/3 p1X*p1Z", "-p1Y^2"}) {
        Poly p = parse_poly(text);
        json j = poly_to_json(p);
        Poly back = poly_from_json(json::parse(j.dump()));
        EXPECT_EQ(canonical_string(back), canonical_string(p)) << text;
    }
    EXPECT_EQ(poly_to_json(parse_poly("3/2")).dump(), R"({"1":"3/2"})");
}

TEST(JsonExpr, RoundTrip) {
    for (const char *text : {"p1X", "pM + max(p1X, 2 p1Z)", "min(p1X + p1Y, max(p1Z, pM))"}) {
        Expr e = parse_expr(text);
        Expr back = expr_from_json(json::parse(expr_to_json(e).dump()));
        EXPECT_EQ(canonical_string(back), canonical_string(e)) << text;
    }
}

TEST(JsonCircuit, AllProceduresRoundTrip) {
    for (auto p : all_procedures()) {
        for (auto g : all_gates()) {
            StrandCircuit c = build(p, g);
            json j = circuit_to_json(c);
            StrandCircuit back = circuit_from_json(json::parse(j.dump()));
            EXPECT_EQ(circuit_to_json(back).dump(), j.dump()) << c.name;
            EXPECT_EQ(record_strings(run(back)), record_strings(run(c))) << c.name;
        }
    }
}

TEST(JsonChannel, RoundTrip) {
    KrausChannel c = depolarizing_channel(0.01);
    json j = channel_to_json(c);
    KrausChannel back = channel_from_json(json::parse(j.dump()));
    ASSERT_EQ(back.ops.size(), c.ops.size());
    for (size_t k = 0; k < c.ops.size(); k++) {
        for (size_t i = 0; i < 4; i++) EXPECT_EQ(back.ops[k][i], c.ops[k][i]);
    }
    json seq = {{"channels", json::array({channel_to_json(bit_flip(0.1)), channel_to_json(rotation(PauliOp::Z, 0.2))})}};
    EXPECT_EQ(channels_from_json(seq).size(), 2u);
    EXPECT_EQ(channels_from_json(j).size(), 1u);
    json literal = json::parse(R"([[[[1,0],[0,0]],[[0,0],[1,0]]]])");
    EXPECT_TRUE(validate(channel_from_json(literal)).ok);
}

TEST(JsonErrors, MalformedDocuments) {
    EXPECT_THROW(poly_from_json(json::parse("[1]")), JsonFormatError);
    EXPECT_THROW(poly_from_json(json::parse(R"({"pQ":"1"})")), JsonFormatError);
    EXPECT_THROW(poly_from_json(json::parse(R"({"p1X":2})")), JsonFormatError);
    EXPECT_THROW(expr_from_json(json::parse(R"({"avg":[]})")), JsonFormatError);
    EXPECT_THROW(expr_from_json(json::parse(R"({"max":{}})")), JsonFormatError);
    EXPECT_THROW(circuit_from_json(json::parse(R"({"name":"x"})")), JsonFormatError);
    EXPECT_THROW(circuit_from_json(json::parse(R"({"locations":[{"type":"teleport"}]})")), JsonFormatError);
    EXPECT_THROW(channel_from_json(json::parse("[]")), JsonFormatError);
    EXPECT_THROW(channel_from_json(json::parse("[[[1,0]]]")), JsonFormatError);
    EXPECT_THROW(channel_from_json(json::parse(R"([[["a",0],[0,1]]])")), JsonFormatError);
}
