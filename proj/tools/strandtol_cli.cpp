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

// strandtol-cli: command-line front end over the strandtol C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "strandtol/strandtol.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

struct ApiError : std::runtime_error {
    st_status status;
    ApiError(st_status s, const std::string &what) : std::runtime_error(what), status(s) {}
};

void check(st_status s) {
    if (s != ST_OK) {
        throw ApiError(s, st_last_error());
    }
}

json take_json(char *raw) {
    std::unique_ptr<char, decltype(&st_free_string)> owned(raw, &st_free_string);
    return json::parse(owned.get());
}

template <typename F>
json call_json(F &&f) {
    char *out = nullptr;
    check(f(&out));
    return take_json(out);
}

struct ModelDeleter {
    void operator()(st_model *m) const { st_model_free(m); }
};
struct CircuitDeleter {
    void operator()(st_circuit *c) const { st_circuit_free(c); }
};
using ModelPtr = std::unique_ptr<st_model, ModelDeleter>;
using CircuitPtr = std::unique_ptr<st_circuit, CircuitDeleter>;

ModelPtr load_model(const std::string &spec) {
    st_model *m = nullptr;
    check(st_model_load(spec.c_str(), &m));
    return ModelPtr(m);
}

std::string model_name(const st_model *m) {
    return call_json([&](char **o) { return st_model_to_json(m, o); })["name"].get<std::string>();
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ApiError(ST_ERR_IO, "cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CircuitPtr load_circuit(const std::string &file, const std::string &proc, const std::string &gate) {
    st_circuit *c = nullptr;
    if (!file.empty()) {
        check(st_circuit_from_json(read_file(file).c_str(), &c));
    } else {
        check(st_circuit_build(proc.c_str(), gate.c_str(), &c));
    }
    return CircuitPtr(c);
}

std::string sig4(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

std::string fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string r = "\"";
    for (char c : s) {
        r += c;
        if (c == '"') {
            r += '"';
        }
    }
    return r + "\"";
}

std::string csv_row(const std::vector<std::string> &cells) {
    std::string r;
    for (size_t i = 0; i < cells.size(); i++) {
        r += (i ? "," : "") + csv_field(cells[i]);
    }
    return r + "\n";
}

// A rendered report: structured data plus its text and CSV bodies.
struct Report {
    json metadata = json::object();
    json data;
    std::string text;
    std::string csv;
    bool raw = false;
};

std::string render(const Report &r, const std::string &format) {
    if (r.raw) {
        return r.data.dump(2) + "\n";
    }
    if (format == "json") {
        json j{{"metadata", r.metadata}, {"result", r.data}};
        return j.dump(2) + "\n";
    }
    std::string header;
    for (const auto &[k, v] : r.metadata.items()) {
        header += "# " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
    return header + (format == "csv" ? r.csv : r.text);
}

json base_metadata(const std::string &command) {
    return json{{"command", command}, {"library", st_version()}};
}

// Subcommand options.
struct Options {
    std::string proc;
    std::string gate;
    std::string circuit;
    std::string model = "1";
    std::vector<std::string> models{"1", "2", "3", "4"};
    std::string combinator = "max";
    std::string file;
    int maxdegree = 2;
    bool full = false;
    bool second_order = false;
    bool raw_trace = false;
    double tau = 1.0;
    int n = 49;
    int t = 4;
    double p = 0.001;
    uint64_t trials = 1000000;
    uint64_t seed = 1;
    double theta = 0;
    int count = 1;
    uint64_t random_signs = 0;
};

Report cmd_list_procedures() {
    Report r;
    r.metadata = base_metadata("list-procedures");
    r.data = call_json([](char **o) { return st_list_procedures(o); });
    r.csv = csv_row({"procedure", "gate", "combinator", "locations"});
    for (const auto &p : r.data) {
        r.text += p["procedure"].get<std::string>() + ":";
        for (const auto &g : p["gates"]) {
            r.text += " " + g["gate"].get<std::string>() + "(" + g["combinator"].get<std::string>() + ")";
            r.csv += csv_row({p["procedure"], g["gate"], g["combinator"], g["locations"].dump()});
        }
        r.text += "\n";
    }
    return r;
}

Report cmd_dump_circuit(const Options &o) {
    CircuitPtr c = load_circuit(o.circuit, o.proc, o.gate);
    Report r;
    r.raw = true;
    r.data = call_json([&](char **out) { return st_circuit_to_json(c.get(), out); });
    return r;
}

Report cmd_analyze(const Options &o) {
    Report r;
    r.metadata = base_metadata("analyze");
    r.metadata["maxdegree"] = o.maxdegree;
    if (o.circuit.empty()) {
        r.metadata["procedure"] = o.proc;
        r.metadata["gate"] = o.gate;
        r.data = call_json([&](char **out) { return st_analyze(o.proc.c_str(), o.gate.c_str(), o.maxdegree, out); });
    } else {
        if (o.combinator != "max" && o.combinator != "min") {
            throw ApiError(ST_ERR_ARGUMENT, "--combinator must be max or min");
        }
        r.metadata["circuit"] = o.circuit;
        CircuitPtr c = load_circuit(o.circuit, "", "");
        r.data = call_json(
            [&](char **out) { return st_circuit_analyze(c.get(), o.maxdegree, o.combinator == "min", out); });
    }
    const char *field = o.full ? "expression" : "first_order";
    r.metadata["order"] = o.full ? "full" : "first";
    r.text = r.data[field].get<std::string>() + "\n";
    r.csv = csv_row({"kind", "label", "counted", "p_L"});
    auto rows = [&](const json &list, const char *kind) {
        for (const auto &c : list) {
            r.csv += csv_row({kind, c["label"], c["counted"].dump(), c[o.full ? "p_L" : "first_order"]});
        }
    };
    rows(r.data["checkpoints"], "measure");
    rows(r.data["outputs"], "output");
    r.csv += csv_row({"expression", "", "", r.data[field]});
    return r;
}

Report cmd_threshold(const Options &o) {
    ModelPtr m = load_model(o.model);
    Report r;
    r.metadata = base_metadata("threshold");
    r.metadata["model"] = model_name(m.get());
    r.metadata["tau"] = o.tau;
    r.metadata["maxdegree"] = 2;
    r.metadata["order"] = o.second_order ? 2 : 1;
    r.data = call_json(
        [&](char **out) { return st_threshold_infinite(o.proc.c_str(), m.get(), o.tau, o.second_order, out); });
    r.csv = csv_row({"procedure", "found", "p_th", "p_th_over_tau", "binding_gate", "binding_checkpoint"});
    if (r.data["found"].get<bool>()) {
        double pth = r.data["p_th"];
        double ratio = r.data["p_th_over_tau"];
        r.text = "p_th=" + sig4(pth) + " p_th/tau=" + sig4(ratio) + " binding=" +
                 r.data["binding_gate"].get<std::string>() + " checkpoint=" +
                 r.data["binding_checkpoint"].get<std::string>() + "\n";
        r.csv += csv_row({r.data["procedure"], "true", sig4(pth), sig4(ratio), r.data["binding_gate"],
                          r.data["binding_checkpoint"]});
    } else {
        r.text = "no threshold: " + r.data.value("note", std::string("no root")) + "\n";
        r.csv += csv_row({r.data["procedure"], "false", "", "", "", ""});
    }
    return r;
}

std::string maybe(const json &v, int digits, bool sig) {
    if (v.is_null()) {
        return "none";
    }
    return sig ? sig4(v.get<double>()) : fixed(v.get<double>(), digits);
}

Report cmd_finite(const Options &o) {
    ModelPtr m = load_model(o.model);
    Report r;
    r.metadata = base_metadata("finite");
    r.metadata["model"] = model_name(m.get());
    r.metadata["n"] = o.n;
    r.metadata["t"] = o.t;
    r.metadata["maxdegree"] = 2;
    r.metadata["order"] = o.second_order ? 2 : 1;
    r.data = call_json(
        [&](char **out) { return st_threshold_finite(o.proc.c_str(), m.get(), o.n, o.t, o.second_order, out); });
    if (r.data["found"].get<bool>()) {
        r.text = "lower=" + fixed(r.data["lower"], 4) + " upper=" + fixed(r.data["upper"], 4) + "\n";
    } else {
        r.text = "no bound: " + r.data.value("note", std::string("no root")) + "\n";
    }
    r.csv = csv_row({"gate", "lower", "upper"});
    for (const auto &g : r.data["gates"]) {
        r.text += "  " + g["gate"].get<std::string>() + ": lower=" + maybe(g["lower"], 0, true) +
                  " upper=" + maybe(g["upper"], 0, true) + "\n";
        r.csv += csv_row({g["gate"], maybe(g["lower"], 0, true), maybe(g["upper"], 0, true)});
    }
    if (r.data["found"].get<bool>()) {
        r.csv += csv_row({"all", sig4(r.data["lower"]), sig4(r.data["upper"])});
    }
    return r;
}

const std::vector<std::string> kProcedures{"steane-single", "steane-double", "knill"};
const std::vector<std::string> kGates{"idle", "h", "cx", "p", "t"};

Report cmd_table2(const Options &o) {
    Report r;
    r.metadata = base_metadata("table2");
    r.metadata["maxdegree"] = o.maxdegree;
    r.metadata["order"] = "first";
    r.data = json::array();
    r.csv = csv_row({"procedure", "gate", "combinator", "expression"});
    for (const auto &p : kProcedures) {
        for (const auto &g : kGates) {
            json a = call_json([&](char **out) { return st_analyze(p.c_str(), g.c_str(), o.maxdegree, out); });
            std::string e = a["first_order"];
            r.data.push_back(json{{"procedure", p}, {"gate", g}, {"combinator", a["combinator"]}, {"expression", e}});
            r.text += p + " " + g + ": " + e + "\n";
            r.csv += csv_row({p, g, a["combinator"], e});
        }
    }
    return r;
}

Report cmd_table3(const Options &o) {
    std::vector<ModelPtr> models;
    std::vector<std::string> names;
    for (const auto &spec : o.models) {
        models.push_back(load_model(spec));
        names.push_back(model_name(models.back().get()));
    }
    Report r;
    r.metadata = base_metadata("table3");
    r.metadata["models"] = names;
    r.metadata["tau"] = o.tau;
    r.metadata["maxdegree"] = 2;
    r.metadata["order"] = o.second_order ? 2 : 1;
    r.data = json::array();
    std::vector<std::string> head{"procedure"};
    head.insert(head.end(), names.begin(), names.end());
    r.csv = csv_row(head);
    r.text = "p_th/tau";
    for (const auto &n : names) {
        r.text += "\t" + n;
    }
    r.text += "\n";
    for (const auto &p : kProcedures) {
        std::vector<std::string> row{p};
        json cells = json::array();
        r.text += p;
        for (size_t i = 0; i < models.size(); i++) {
            json t = call_json([&](char **out) {
                return st_threshold_infinite(p.c_str(), models[i].get(), o.tau, o.second_order, out);
            });
            std::string cell = t["found"].get<bool>() ? sig4(t["p_th_over_tau"]) : "none";
            row.push_back(cell);
            r.text += "\t" + cell;
            cells.push_back(json{{"model", names[i]},
                                 {"p_th_over_tau", t["found"].get<bool>() ? t["p_th_over_tau"] : json(nullptr)},
                                 {"binding_gate", t.value("binding_gate", std::string())}});
        }
        r.text += "\n";
        r.csv += csv_row(row);
        r.data.push_back(json{{"procedure", p}, {"cells", cells}});
    }
    return r;
}

std::string pauli_triplet(const json &s) {
    return "X=" + sig4(s["X"]) + " Y=" + sig4(s["Y"]) + " Z=" + sig4(s["Z"]);
}

Report cmd_channel_associate(const Options &o) {
    std::string text = read_file(o.file);
    Report r;
    r.metadata = base_metadata("channel associate");
    r.metadata["file"] = o.file;
    r.metadata["normalization"] = o.raw_trace ? "raw trace" : "trace / 2";
    r.data = call_json([&](char **out) { return st_channel_associate(text.c_str(), o.raw_trace, out); });
    r.csv = csv_row({"channel", "trace_preserving", "pX", "pY", "pZ"});
    size_t i = 0;
    for (const auto &c : r.data["channels"]) {
        const json &a = c["associated"];
        r.text += "channel " + std::to_string(i) + ": " + pauli_triplet(a) +
                  (c["trace_preserving"].get<bool>() ? "" : " (not trace preserving)") + "\n";
        r.csv += csv_row({std::to_string(i), c["trace_preserving"].dump(), sig4(a["X"]), sig4(a["Y"]), sig4(a["Z"])});
        i++;
    }
    if (r.data.contains("composed")) {
        r.text += "composed: " + pauli_triplet(r.data["composed"]) + "\n";
        const json &a = r.data["composed"];
        r.csv += csv_row({"composed", "", sig4(a["X"]), sig4(a["Y"]), sig4(a["Z"])});
    }
    return r;
}

Report cmd_channel_discrepancy(const Options &o) {
    Report r;
    r.metadata = base_metadata("channel discrepancy");
    if (!o.file.empty()) {
        std::string text = read_file(o.file);
        r.metadata["file"] = o.file;
        r.data = call_json([&](char **out) { return st_channel_discrepancy_json(text.c_str(), out); });
    } else if (o.random_signs > 0) {
        r.metadata["theta"] = o.theta;
        r.metadata["count"] = o.count;
        r.metadata["seed"] = o.seed;
        r.data = call_json(
            [&](char **out) { return st_channel_random_signs(o.theta, o.count, o.random_signs, o.seed, out); });
        r.text = "mean=" + sig4(r.data["mean"]) + " stderr=" + sig4(r.data["standard_error"]) +
                 " z=" + sig4(r.data["z"]) + " sequences=" + r.data["sequences"].dump() + "\n";
        r.csv = csv_row({"sequences", "mean", "variance", "standard_error", "z"});
        r.csv += csv_row({r.data["sequences"].dump(), sig4(r.data["mean"]), sig4(r.data["variance"]),
                          sig4(r.data["standard_error"]), sig4(r.data["z"])});
        return r;
    } else {
        r.metadata["theta"] = o.theta;
        r.metadata["count"] = o.count;
        r.data = call_json([&](char **out) { return st_channel_discrepancy_rotation(o.theta, o.count, out); });
    }
    r.text = "exact: " + pauli_triplet(r.data["exact"]) + "\n" + "stochastic: " +
             pauli_triplet(r.data["stochastic"]) + "\n" + "difference: " +
             pauli_triplet(r.data["exact_minus_stochastic"]) + "\n" + "leading: " +
             pauli_triplet(r.data["leading_term"]) + "\n";
    r.csv = csv_row({"quantity", "X", "Y", "Z"});
    for (const char *k : {"exact", "stochastic", "exact_minus_stochastic", "leading_term"}) {
        const json &s = r.data[k];
        r.csv += csv_row({k, sig4(s["X"]), sig4(s["Y"]), sig4(s["Z"])});
    }
    return r;
}

Report cmd_mc(const Options &o) {
    ModelPtr m = load_model(o.model);
    CircuitPtr c = load_circuit(o.circuit, o.proc, o.gate);
    Report r;
    r.metadata = base_metadata("mc");
    r.metadata["model"] = model_name(m.get());
    r.metadata["p"] = o.p;
    r.metadata["trials"] = o.trials;
    r.metadata["seed"] = o.seed;
    r.metadata["maxdegree"] = 2;
    r.data = call_json([&](char **out) { return st_circuit_mc(c.get(), m.get(), o.p, o.trials, o.seed, out); });
    r.csv = csv_row({"kind", "label", "symbolic", "empirical", "stderr", "z", "agree"});
    for (const auto &row : r.data["checkpoints"]) {
        r.text += row["kind"].get<std::string>() + " " + row["label"].get<std::string>() +
                  ": symbolic=" + sig4(row["symbolic"]) + " empirical=" + sig4(row["empirical"]) +
                  " z=" + fixed(row["z"], 2) + (row["agree"].get<bool>() ? "" : " DISAGREE") + "\n";
        r.csv += csv_row({row["kind"], row["label"], sig4(row["symbolic"]), sig4(row["empirical"]),
                          sig4(row["stderr"]), fixed(row["z"], 2), row["agree"].dump()});
    }
    r.text += std::string("all agree: ") + (r.data["all_agree"].get<bool>() ? "yes" : "no") + "\n";
    return r;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Strand-based fault-tolerance threshold analysis"};
    app.require_subcommand(1);
    // Global options may follow the subcommand.
    app.fallthrough();
    std::string format = "text";
    std::string output;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--output,-o", output, "Write the report to this file");

    Options o;
    auto add_proc = [&](CLI::App *c, bool required) {
        auto *opt = c->add_option("--proc", o.proc, "Procedure: steane-single, steane-double or knill");
        if (required) {
            opt->required();
        }
    };
    auto add_model = [&](CLI::App *c) { c->add_option("--model", o.model, "Error model 1-4 or a model file"); };

    auto *list = app.add_subcommand("list-procedures", "List procedures and encoded gates");

    auto *dump = app.add_subcommand("dump-circuit", "Print a built strand circuit as JSON");
    add_proc(dump, true);
    dump->add_option("--gate", o.gate, "Encoded gate: idle, h, cx, p or t")->required();

    auto *analyze = app.add_subcommand("analyze", "Maximal strand-error expression of one gadget");
    add_proc(analyze, false);
    analyze->add_option("--gate", o.gate, "Encoded gate: idle, h, cx, p or t");
    analyze->add_option("--circuit", o.circuit, "Strand circuit JSON file");
    analyze->add_option("--combinator", o.combinator, "max or min, for --circuit");
    analyze->add_option("--maxdegree", o.maxdegree, "Truncation degree")->check(CLI::Range(1, 8));
    analyze->add_flag("--full", o.full, "Print the untruncated-to-first-order expression");

    auto *threshold = app.add_subcommand("threshold", "Infinite-code threshold");
    add_proc(threshold, true);
    add_model(threshold);
    threshold->add_option("--tau", o.tau, "Tolerable strand error")->required();
    threshold->add_flag("--second-order", o.second_order, "Keep second-order terms");

    auto *finite = app.add_subcommand("finite", "Finite-code threshold bounds");
    add_proc(finite, true);
    add_model(finite);
    finite->add_option("--n", o.n, "Block length")->required()->check(CLI::PositiveNumber);
    finite->add_option("--t", o.t, "Correctable errors")->required()->check(CLI::NonNegativeNumber);
    finite->add_flag("--second-order", o.second_order, "Keep second-order terms");

    auto *table2 = app.add_subcommand("table2", "First-order strand-error expressions for every gadget");
    table2->add_option("--maxdegree", o.maxdegree, "Truncation degree")->check(CLI::Range(1, 8));

    auto *table3 = app.add_subcommand("table3", "Grid of p_th / tau for every procedure and model");
    table3->add_option("--tau", o.tau, "Tolerable strand error");
    table3->add_option("--model", o.models, "Models to tabulate");
    table3->add_flag("--second-order", o.second_order, "Keep second-order terms");

    auto *channel = app.add_subcommand("channel", "Kraus channel approximation analysis");
    channel->require_subcommand(1);
    auto *assoc = channel->add_subcommand("associate", "Associated stochastic Pauli channels");
    assoc->add_option("--file", o.file, "Kraus JSON file")->required();
    assoc->add_flag("--raw-trace", o.raw_trace, "Drop the 1/2 trace normalization");
    auto *disc = channel->add_subcommand("discrepancy", "Exact versus stochastic composition");
    disc->add_option("--file", o.file, "Kraus JSON file with the channel sequence");
    disc->add_option("--rotation", o.theta, "Rotation angle about X");
    disc->add_option("--count", o.count, "Number of rotations")->check(CLI::PositiveNumber);
    disc->add_option("--random-signs", o.random_signs, "Number of random-sign sequences");
    disc->add_option("--seed", o.seed, "Random seed");

    auto *mc = app.add_subcommand("mc", "Monte-Carlo cross-check of the symbolic strand errors");
    add_proc(mc, false);
    mc->add_option("--gate", o.gate, "Encoded gate: idle, h, cx, p or t");
    mc->add_option("--circuit", o.circuit, "Strand circuit JSON file");
    add_model(mc);
    mc->add_option("--p", o.p, "Scale parameter")->check(CLI::Range(0.0, 1.0));
    mc->add_option("--trials", o.trials, "Number of trials");
    mc->add_option("--seed", o.seed, "Random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    auto need_target = [&](CLI::App *c) {
        if (o.circuit.empty() && (o.proc.empty() || o.gate.empty())) {
            std::cerr << c->get_name() << ": give --circuit FILE or both --proc and --gate\n" << c->help();
            return false;
        }
        return true;
    };

    try {
        Report r;
        if (*list) {
            r = cmd_list_procedures();
        } else if (*dump) {
            r = cmd_dump_circuit(o);
        } else if (*analyze) {
            if (!need_target(analyze)) {
                return kExitUsage;
            }
            r = cmd_analyze(o);
        } else if (*threshold) {
            r = cmd_threshold(o);
        } else if (*finite) {
            r = cmd_finite(o);
        } else if (*table2) {
            r = cmd_table2(o);
        } else if (*table3) {
            r = cmd_table3(o);
        } else if (*assoc) {
            r = cmd_channel_associate(o);
        } else if (*disc) {
            if (o.file.empty() && disc->count("--rotation") == 0) {
                std::cerr << "channel discrepancy: give --file FILE or --rotation THETA\n" << disc->help();
                return kExitUsage;
            }
            r = cmd_channel_discrepancy(o);
        } else if (*mc) {
            if (!need_target(mc)) {
                return kExitUsage;
            }
            r = cmd_mc(o);
        }
        std::string body = render(r, format);
        if (output.empty()) {
            std::cout << body;
        } else {
            std::ofstream out(output, std::ios::binary);
            if (!(out << body)) {
                std::cerr << "error: cannot write " << output << "\n";
                return kExitFailure;
            }
        }
        return 0;
    } catch (const ApiError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.status == ST_ERR_ARGUMENT ? kExitUsage : kExitFailure;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}
