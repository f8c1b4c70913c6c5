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

#include <json.hpp>
#include <memory>
#include <string>

#include "strandtol/strandtol.h"

namespace {

using json = nlohmann::ordered_json;

struct StringFree {
    void operator()(char *s) const { st_free_string(s); }
};
struct ModelFree {
    void operator()(st_model *m) const { st_model_free(m); }
};
struct CircuitFree {
    void operator()(st_circuit *c) const { st_circuit_free(c); }
};
using Model = std::unique_ptr<st_model, ModelFree>;
using Circuit = std::unique_ptr<st_circuit, CircuitFree>;

// Takes ownership of a returned string, checks it re-serializes verbatim, and
// parses it.
json take(char *raw) {
    std::unique_ptr<char, StringFree> owned(raw);
    EXPECT_NE(raw, nullptr);
    std::string text(raw);
    json j = json::parse(text);
    EXPECT_EQ(j.dump(2), text);
    return j;
}

Model model(int id) {
    st_model *m = nullptr;
    EXPECT_EQ(st_model_builtin(id, &m), ST_OK);
    return Model(m);
}

Circuit circuit(const char *proc, const char *gate) {
    st_circuit *c = nullptr;
    EXPECT_EQ(st_circuit_build(proc, gate, &c), ST_OK) << st_last_error();
    return Circuit(c);
}

}  // namespace

TEST(CApi, VersionAndErrorReset) {
    EXPECT_STREQ(st_version(), "1.0.0");
    st_model *m = nullptr;
    EXPECT_EQ(st_model_builtin(9, &m), ST_ERR_MODEL);
    EXPECT_EQ(m, nullptr);
    EXPECT_STRNE(st_last_error(), "");
    Model ok = model(1);
    EXPECT_STREQ(st_last_error(), "");
}

TEST(CApi, StatusCodes) {
    char *out = nullptr;
    EXPECT_EQ(st_analyze("nope", "idle", 2, &out), ST_ERR_ARGUMENT);
    EXPECT_EQ(st_analyze("knill", "idle", 2, nullptr), ST_ERR_ARGUMENT);
    st_circuit *c = nullptr;
    EXPECT_EQ(st_circuit_from_json("{not json", &c), ST_ERR_PARSE);
    EXPECT_EQ(st_circuit_from_json(R"({"locations": 3})", &c), ST_ERR_PARSE);
    EXPECT_EQ(st_channel_associate("[]", 0, &out), ST_ERR_PARSE);

    ASSERT_EQ(st_circuit_from_json(R"({"name":"bad","inputs":[],"locations":[)"
                                   R"({"type":"gate1","gate":"H","qubit":4,"error":{}}]})",
                                   &c),
              ST_OK)
        << st_last_error();
    Circuit bad(c);
    EXPECT_EQ(st_circuit_analyze(bad.get(), 2, 0, &out), ST_ERR_CIRCUIT);
    EXPECT_STRNE(st_last_error(), "");

    st_model *m = nullptr;
    EXPECT_EQ(st_model_parse("pM: -1", &m), ST_ERR_MODEL);
    EXPECT_EQ(st_model_depolarizing("1/2", "1/0", "0", &m), ST_ERR_ARGUMENT);
    double v = 0;
    EXPECT_EQ(st_e_pass(0.1, 5, 7, &v), ST_ERR_ARGUMENT);
    EXPECT_EQ(st_channel_discrepancy_rotation(0.1, 13, &out), ST_ERR_ARGUMENT);
}

TEST(CApi, Models) {
    Model m = model(1);
    char *text = nullptr;
    ASSERT_EQ(st_model_to_text(m.get(), &text), ST_OK);
    st_model *back = nullptr;
    ASSERT_EQ(st_model_parse(text, &back), ST_OK);
    Model owned_back(back);
    char *t2 = nullptr;
    ASSERT_EQ(st_model_to_text(back, &t2), ST_OK);
    // Only the leading name comment differs.
    std::string a(text), b(t2);
    EXPECT_EQ(a.substr(a.find('\n')), b.substr(b.find('\n')));
    st_free_string(text);
    st_free_string(t2);

    char *j = nullptr;
    ASSERT_EQ(st_model_to_json(m.get(), &j), ST_OK);
    EXPECT_TRUE(take(j).is_object());

    st_model *d = nullptr;
    ASSERT_EQ(st_model_depolarizing("1", "1", "1", &d), ST_OK);
    Model owned_d(d);
    st_model *l = nullptr;
    ASSERT_EQ(st_model_load("3", &l), ST_OK);
    Model owned_l(l);
}

TEST(CApi, ListAndAnalyze) {
    char *out = nullptr;
    ASSERT_EQ(st_list_procedures(&out), ST_OK);
    json list = take(out);
    ASSERT_EQ(list.size(), 3u);
    size_t gates = 0;
    for (const auto &p : list) gates += p["gates"].size();
    EXPECT_EQ(gates, 15u);

    ASSERT_EQ(st_analyze("knill", "h", 2, &out), ST_OK);
    json a = take(out);
    EXPECT_EQ(a["combinator"], "min");
    EXPECT_NE(a["first_order"].get<std::string>().find("min("), std::string::npos);
    EXPECT_FALSE(a["checkpoints"].empty());

    Circuit c = circuit("steane-double", "cx");
    ASSERT_EQ(st_circuit_to_json(c.get(), &out), ST_OK);
    json cj = take(out);
    st_circuit *back = nullptr;
    ASSERT_EQ(st_circuit_from_json(cj.dump().c_str(), &back), ST_OK);
    Circuit owned(back);
    char *a1 = nullptr, *a2 = nullptr;
    ASSERT_EQ(st_circuit_analyze(c.get(), 2, 0, &a1), ST_OK);
    ASSERT_EQ(st_circuit_analyze(back, 2, 0, &a2), ST_OK);
    EXPECT_EQ(take(a1)["expression"], take(a2)["expression"]);
}

TEST(CApi, Thresholds) {
    Model m = model(1);
    char *out = nullptr;
    ASSERT_EQ(st_threshold_infinite("knill", m.get(), 0.11, 0, &out), ST_OK);
    json j = take(out);
    ASSERT_TRUE(j["found"].get<bool>());
    EXPECT_NEAR(j["p_th"].get<double>(), 0.0385, 0.0005);

    ASSERT_EQ(st_threshold_finite("steane-double", m.get(), 49, 4, 0, &out), ST_OK);
    json f = take(out);
    ASSERT_TRUE(f["found"].get<bool>());
    EXPECT_NEAR(f["lower"].get<double>(), 0.0023, 0.0002);
    EXPECT_NEAR(f["upper"].get<double>(), 0.0034, 0.0002);
    EXPECT_EQ(f["gates"].size(), 5u);

    ASSERT_EQ(st_checkpoint_list("steane-double", "idle", m.get(), &out), ST_OK);
    EXPECT_FALSE(take(out)["checkpoints"].empty());

    double pass = 0, fail = 0;
    ASSERT_EQ(st_e_pass(0.05, 49, 4, &pass), ST_OK);
    ASSERT_EQ(st_e_fail(0.05, 49, 4, &fail), ST_OK);
    EXPECT_NEAR(pass + fail, 1.0, 1e-12);
    double fo = 0, b = 0, r = 1;
    ASSERT_EQ(st_second_order_bound(13, 27, 0.018, &fo, &b, &r), ST_OK);
    EXPECT_LT(r, 0.02);
}

TEST(CApi, Channels) {
    char *out = nullptr;
    const char *flip = R"([[[[0.9486832980505138,0],[0,0]],[[0,0],[0.9486832980505138,0]]],)"
                       R"([[[0,0],[0.31622776601683794,0]],[[0.31622776601683794,0],[0,0]]]])";
    ASSERT_EQ(st_channel_associate(flip, 0, &out), ST_OK);
    json a = take(out);
    EXPECT_TRUE(a["channels"][0]["trace_preserving"].get<bool>());
    EXPECT_NEAR(a["channels"][0]["associated"]["X"].get<double>(), 0.1, 1e-15);
    ASSERT_EQ(st_channel_associate(flip, 1, &out), ST_OK);
    EXPECT_NEAR(take(out)["channels"][0]["associated"]["X"].get<double>(), 0.4, 1e-15);

    std::string seq = std::string(R"({"channels":[)") + flip + "," + flip + "]}";
    ASSERT_EQ(st_channel_associate(seq.c_str(), 0, &out), ST_OK);
    EXPECT_NEAR(take(out)["composed"]["X"].get<double>(), 2 * 0.1 * 0.9, 1e-14);
    ASSERT_EQ(st_channel_discrepancy_json(seq.c_str(), &out), ST_OK);
    EXPECT_EQ(take(out)["leading_term"]["X"].get<double>(), 0.0);

    ASSERT_EQ(st_channel_discrepancy_rotation(1e-3, 8, &out), ST_OK);
    json d = take(out);
    EXPECT_NEAR(d["exact_minus_stochastic"]["X"].get<double>(), d["closed_form_X"].get<double>(), 1e-15);

    char *r1 = nullptr, *r2 = nullptr;
    ASSERT_EQ(st_channel_random_signs(1e-2, 8, 1000, 7, &r1), ST_OK);
    ASSERT_EQ(st_channel_random_signs(1e-2, 8, 1000, 7, &r2), ST_OK);
    EXPECT_EQ(take(r1), take(r2));
}

TEST(CApi, MonteCarloDeterministic) {
    Circuit c = circuit("knill", "idle");
    Model m = model(1);
    char *a = nullptr, *b = nullptr;
    ASSERT_EQ(st_circuit_mc(c.get(), m.get(), 0.005, 20000, 17, &a), ST_OK);
    ASSERT_EQ(st_circuit_mc(c.get(), m.get(), 0.005, 20000, 17, &b), ST_OK);
    json ja = take(a), jb = take(b);
    EXPECT_EQ(ja, jb);
    EXPECT_EQ(ja["trials"], 20000);
    EXPECT_FALSE(ja["checkpoints"].empty());
    char *out = nullptr;
    EXPECT_EQ(st_circuit_mc(c.get(), m.get(), 1.5, 10, 1, &out), ST_ERR_ARGUMENT);
    EXPECT_EQ(st_circuit_mc(nullptr, m.get(), 0.1, 10, 1, &out), ST_ERR_ARGUMENT);
}
