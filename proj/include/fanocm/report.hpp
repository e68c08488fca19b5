#pragma once

// Run reports: one structured record per CLI invocation. Every rational is
// serialized as "p/q" or an integer string; only fields suffixed _approx
// hold floating point. JSON output uses a fixed key order so identical
// inputs produce byte-identical reports modulo the wall-time field.

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fanocm/numeric.hpp"

namespace fanocm {

class RunReport {
  public:
    explicit RunReport(std::string command) : command_(std::move(command)) {}

    void input(const std::string& key, const std::string& value) { inputs_.emplace_back(key, value); }
    void input(const std::string& key, const Rational& value) { input(key, rational_to_string(value)); }
    void input(const std::string& key, long value) { input(key, std::to_string(value)); }

    void output(const std::string& key, const std::string& value) { outputs_.emplace_back(key, value); }
    void output(const std::string& key, const Rational& value) { output(key, rational_to_string(value)); }
    void output(const std::string& key, const Integer& value) { output(key, value.get_str()); }
    void output_approx(const std::string& key, double value) {
        outputs_.emplace_back(key + "_approx", std::to_string(value));
    }

    void metadata(const std::string& key, const std::string& value) { metadata_.emplace_back(key, value); }

    void set_wall_time(std::chrono::duration<double, std::milli> t) { wall_ms_ = t.count(); }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["command"] = command_;
        j["inputs"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : inputs_) j["inputs"][k] = v;
        j["outputs"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : outputs_) j["outputs"][k] = v;
        j["metadata"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : metadata_) j["metadata"][k] = v;
        j["wall_time_ms_approx"] = wall_ms_;
        return j;
    }

    std::string to_table() const {
        std::string out = "== " + command_ + " ==\n";
        if (!inputs_.empty()) {
            out += "inputs:\n";
            for (const auto& [k, v] : inputs_) out += "  " + k + " = " + v + "\n";
        }
        out += "outputs:\n";
        for (const auto& [k, v] : outputs_) out += "  " + k + " = " + v + "\n";
        for (const auto& [k, v] : metadata_) out += "  # " + k + ": " + v + "\n";
        return out;
    }

    std::string to_csv() const {
        std::string out = "key,value\n";
        for (const auto& [k, v] : outputs_) out += k + "," + v + "\n";
        return out;
    }

    const std::vector<std::pair<std::string, std::string>>& outputs() const { return outputs_; }

  private:
    std::string command_;
    std::vector<std::pair<std::string, std::string>> inputs_;
    std::vector<std::pair<std::string, std::string>> outputs_;
    std::vector<std::pair<std::string, std::string>> metadata_;
    double wall_ms_ = 0.0;
};

}  // namespace fanocm
