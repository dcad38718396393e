// Uniform result envelope for the command-line tool. Every command produces
// one RunReport; the machine rendering is canonical JSON with a fixed key
// set, the table rendering is fixed-width text assembled from the same data.
#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace oraclesim::cli {

struct RunReport {
    std::string mode;  // simulate | analyze | solve
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::uint64_t seed = 0;
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    nlohmann::ordered_json audits = nlohmann::ordered_json::object();
};

// Machine format: one JSON document, keys mode/config/seed/results/audits.
// Byte-identical for identical inputs.
std::string report_to_machine_text(const RunReport& report);

// Human format: fixed-width sections over the same payload.
std::string report_to_table_text(const RunReport& report);

}  // namespace oraclesim::cli
